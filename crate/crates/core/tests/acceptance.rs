//! Acceptance criteria 1-10, one line each. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::time::Instant;

use hv_verma::algebra::bracket_gen;
use hv_verma::checks::{self, random_homogeneous_vector, random_order, CheckConfig, Suite};
use hv_verma::orders::{det2, Order, Z2};
use hv_verma::rational::{q, Q};
use hv_verma::reduction::{reduce_to_highest, verify_certificate};
use hv_verma::submodules::{eval_ab, h_minus_poly, prop37_generate, Target};
use hv_verma::{Charge, Generator, Vector, Verma};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn suite(s: Suite, trials: usize, window: i64, maxlen: usize) -> Outcome {
    let r = checks::run(s, &CheckConfig { trials, seed: 42, window, maxlen });
    match r.failures.first() {
        None => Ok(format!("{trials}/{trials} trials")),
        Some(f) => Err(format!("{} failures, first at seed {}: {}", r.failures.len(), f.seed, f.detail)),
    }
}

fn certificates(order: Order, charge: [i64; 4], seed: u64) -> Outcome {
    let m = Verma::new(order, Charge::from_ints(charge));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut longest = 0;
    for k in 0..100 {
        let v = random_homogeneous_vector(&mut rng, m.order(), 4, 4);
        let cert = reduce_to_highest(&m, &v).map_err(|e| format!("vector {k} ({v}): {e}"))?;
        if cert.scalar.is_zero() || !verify_certificate(&m, &v, &cert).map_err(|e| e.to_string())? {
            return Err(format!("vector {k} ({v}): certificate does not replay"));
        }
        longest = longest.max(cert.word.len());
    }
    Ok(format!("100/100 certified, longest word {longest}"))
}

/// Every positive word of length <= 3 over positive_window(4), sharing prefixes.
fn positive_words_miss_vacuum(m: &Verma, v: &Vector) -> bool {
    let letters: Vec<Generator> =
        m.order().positive_window(4).into_iter().flat_map(|a| [Generator::T(a), Generator::E(a)]).collect();
    let mut stack = vec![(v.clone(), 0)];
    while let Some((u, depth)) = stack.pop() {
        if !u.vacuum_coeff().is_zero() {
            return false;
        }
        if depth == 3 {
            continue;
        }
        for g in &letters {
            let w = m.act(*g, &u);
            if !w.is_zero() {
                stack.push((w, depth + 1));
            }
        }
    }
    true
}

fn sharpness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    for dense in [true, false] {
        let order = random_order(&mut rng, dense);
        let (c3, c4) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let charge = match order.epsilon() {
            Err(_) => [0, 0, c3, c4],
            Ok(eps) => {
                let k = rng.gen_range(1..=3);
                [-k * eps.y, k * eps.x, c3, c4]
            }
        };
        let m = Verma::new(order.clone(), Charge::from_ints(charge));
        for _ in 0..10 {
            // off the line Zε, E(α) t^{-α} v = h(α) v is nonzero, so discrete
            // samples stay on the line where h vanishes
            let alpha = match order.epsilon() {
                Err(_) => *order.positive_window(4).choose(&mut rng).expect("nonempty"),
                Ok(eps) => rng.gen_range(1..=4) * eps,
            };
            let v = m.monomial(&[alpha], &[]).map_err(|e| e.to_string())?;
            if !positive_words_miss_vacuum(&m, &v) {
                return Err(format!("{order:?}, c = {charge:?}: t^-{alpha} v reaches v"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} vectors, all words of length <= 3 miss v"))
}

fn order_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut orders = vec![Order::sqrt2(), Order::lex()];
    orders.extend((0..4).map(|k| random_order(&mut rng, k % 2 == 0)));
    let mut n_mu = 0;
    for o in &orders {
        for a in o.positive_window(20) {
            let got = o.mu(a).map_err(|e| e.to_string())?;
            if got != checks::mu_brute_force(o, a) {
                return Err(format!("mu({a}) = {got} under {o:?}"));
            }
            n_mu += 1;
        }
    }
    for k in 0..500 {
        let o = random_order(&mut rng, true);
        let a = checks::random_z2(&mut rng, 10);
        let b = checks::random_z2(&mut rng, 10);
        let (lo, hi) = if o.lt(a, b) { (a, b) } else { (b, a) };
        let lo = if k % 5 == 0 || !o.is_positive(lo) { Z2::ZERO } else { lo };
        if !o.lt(lo, hi) {
            continue;
        }
        let g = o.choose_between(lo, hi).map_err(|e| e.to_string())?;
        if !checks::choose_between_ok(&o, lo, hi, g) {
            return Err(format!("choose_between({lo}, {hi}) = {g}"));
        }
    }
    let mut gaps = 0;
    while gaps < 500 {
        let o = random_order(&mut rng, false);
        let a = checks::random_z2(&mut rng, 10);
        let a = if rng.gen_bool(0.1) {
            Z2::ZERO
        } else if o.is_positive(a) {
            a
        } else {
            -a
        };
        let d = checks::random_z2(&mut rng, 10);
        let b = a + if o.is_positive(d) { d } else { -d };
        if let Some(ok) = checks::discrete_gap_holds(&o, a, b) {
            if !ok {
                return Err(format!("gap property fails for {a} ≺ {b} under {o:?}"));
            }
            gaps += 1;
        }
    }
    Ok(format!("mu on {n_mu} elements, 500 choose_between, 500 gap pairs"))
}

fn generation() -> Outcome {
    let m = Verma::new(Order::sqrt2(), Charge::from_ints([0; 4]));
    let gamma = Z2::new(1, 1);
    let start = m.monomial(&[], &[gamma]).map_err(|e| e.to_string())?;
    let pos = m.order().positive_window(4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut n_t, mut n_e) = (0, 0);
    for _ in 0..10 {
        let a = *pos.choose(&mut rng).expect("nonempty");
        let (target, want) = if rng.gen_bool(0.5) {
            n_t += 1;
            (Target::T(a), m.monomial(&[a], &[]))
        } else {
            n_e += 1;
            (Target::E(a), m.monomial(&[], &[a]))
        };
        let comb = prop37_generate(&m, gamma, target, 64).map_err(|e| format!("{target:?}: {e}"))?;
        if comb.apply(&m, &start) != want.map_err(|e| e.to_string())? {
            return Err(format!("{target:?}: replay differs"));
        }
    }
    Ok(format!("{n_t} t-targets and {n_e} E-targets replayed"))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Var {
    T(i64),
    E(i64),
}

type Poly = BTreeMap<Vec<Var>, Q>;

fn add(p: &mut Poly, m: Vec<Var>, c: Q) {
    let slot = p.entry(m.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&m);
    }
}

/// Multivariate division by the generators `x - value(x)`, each with leading
/// term `x`; returns quotients and remainder.
fn divide(p: &Poly, value: &dyn Fn(Var) -> Q) -> (BTreeMap<Var, Poly>, Poly) {
    let mut rest = p.clone();
    let mut quot: BTreeMap<Var, Poly> = BTreeMap::new();
    let mut rem = Poly::new();
    while let Some((m, c)) = rest.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        rest.remove(&m);
        let Some(&x) = m.first() else {
            add(&mut rem, m, c);
            continue;
        };
        let cofactor = m[1..].to_vec();
        add(quot.entry(x).or_default(), cofactor.clone(), c.clone());
        // m - cofactor·(x - v) = v·cofactor
        add(&mut rest, cofactor, c * value(x));
    }
    (quot, rem)
}

fn mul_linear(q: &Poly, x: Var, v: &Q) -> Poly {
    let mut out = Poly::new();
    for (m, c) in q {
        let mut mx = m.clone();
        mx.push(x);
        mx.sort();
        add(&mut out, mx, c.clone());
        add(&mut out, m.clone(), -(c * v));
    }
    out
}

fn ideal_arithmetic() -> Outcome {
    let vars: Vec<Var> = (1..=4).flat_map(|i| [Var::T(i), Var::E(i)]).collect();
    // all sorted variable multisets of size <= 3
    let mut monos: Vec<Vec<Var>> = vec![vec![]];
    let mut frontier = monos.clone();
    for _ in 0..3 {
        frontier = frontier
            .iter()
            .flat_map(|m| {
                vars.iter().filter(|x| m.last().is_none_or(|l| l <= *x)).map(|x| {
                    let mut m2 = m.clone();
                    m2.push(*x);
                    m2
                })
            })
            .collect();
        monos.extend(frontier.iter().cloned());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut compared = 0;
    for o in [Order::lex(), random_order(&mut rng, false)] {
        let eps = o.epsilon().map_err(|e| e.to_string())?;
        let m = Verma::new(o.clone(), Charge::from_ints([0; 4]));
        for _ in 0..4 {
            let seq = |rng: &mut ChaCha8Rng| -> BTreeMap<u32, Q> {
                (1..=4u32).map(|i| (i, q(rng.gen_range(-2..=2)))).collect()
            };
            let (a, b) = (seq(&mut rng), seq(&mut rng));
            let value = |x: Var| match x {
                Var::T(i) => a[&(i as u32)].clone(),
                Var::E(i) => b[&(i as u32)].clone(),
            };
            for mono in &monos {
                let t: Vec<Z2> =
                    mono.iter().filter_map(|x| if let Var::T(i) = x { Some(*i * eps) } else { None }).collect();
                let e: Vec<Z2> =
                    mono.iter().filter_map(|x| if let Var::E(i) = x { Some(*i * eps) } else { None }).collect();
                let base = m.monomial(&t, &e).map_err(|e| e.to_string())?;
                let p: Poly = [(mono.clone(), Q::one())].into_iter().collect();
                // the monomial itself, and its shift into the ideal
                let shift = mono.iter().fold(Q::one(), |acc, x| acc * value(*x));
                for (vector, poly) in [
                    (base.clone(), p.clone()),
                    (base.sub(&Vector::vacuum().scale(&shift)), {
                        let mut p2 = p.clone();
                        add(&mut p2, vec![], -shift.clone());
                        p2
                    }),
                ] {
                    let hp = h_minus_poly(&o, &vector).map_err(|e| e.to_string())?;
                    let by_eval = eval_ab(&hp, &a, &b).is_zero();
                    let (quot, rem) = divide(&poly, &value);
                    let mut recon = rem.clone();
                    for (x, qx) in &quot {
                        for (mm, c) in mul_linear(qx, *x, &value(*x)) {
                            add(&mut recon, mm, c);
                        }
                    }
                    if recon != poly {
                        return Err(format!("division identity fails for {mono:?}"));
                    }
                    if by_eval != rem.is_empty() {
                        return Err(format!("{mono:?}: evaluation says {by_eval}, division remainder {rem:?}"));
                    }
                    compared += 1;
                }
            }
        }
        for i in 1..=6i64 {
            for j in 1..=6i64 {
                let (ti, ei, ej) = (Generator::T(-i * eps), Generator::E(-i * eps), Generator::E(-j * eps));
                if !bracket_gen(ti, ej).is_zero() || !bracket_gen(ei, ej).is_zero() {
                    return Err(format!("H₋ brackets do not vanish at i = {i}, j = {j}"));
                }
                if det2(i * eps, j * eps) != 0 {
                    return Err("collinear determinant is nonzero".into());
                }
            }
        }
    }
    Ok(format!("{} monomials, {compared} comparisons; H₋ commutes for i, j <= 6", monos.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Jacobi identity", Box::new(|| suite(Suite::Jacobi, 1000, 10, 4))),
        ("representation identity", Box::new(|| suite(Suite::Rep, 400, 6, 4))),
        ("grading", Box::new(|| suite(Suite::Grading, 400, 6, 4))),
        ("confluence", Box::new(|| suite(Suite::Confluence, 100, 6, 5))),
        ("dense certificates", Box::new(|| certificates(Order::sqrt2(), [1, 1, 0, 0], 5))),
        ("discrete certificates", Box::new(|| certificates(Order::lex(), [1, 0, 0, 0], 6))),
        ("criterion sharpness", Box::new(sharpness)),
        ("order oracles", Box::new(order_oracles)),
        ("generation from E(-γ)v", Box::new(generation)),
        ("ideal arithmetic", Box::new(ideal_arithmetic)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
