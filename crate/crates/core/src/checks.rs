//! Seeded randomized property suites.
//!
//! Trial `k` of a run with seed `s` draws everything from
//! `ChaCha8Rng::seed_from_u64(s ^ k)`, so any failure can be replayed on its
//! own from the reported seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{bracket, Generator, LieElement};
use crate::error::{Error, Result};
use crate::orders::{det2, Order, Theta, Unimodular, Z2};
use crate::rational::{q, q_frac, Q};
use crate::rewrite::normalize_random;
use crate::submodules::{prop37_member, prop38_member, Variant, WhittakerParams};
use crate::verma::{Charge, Monomial, Vector, Verma};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Jacobi,
    Rep,
    Grading,
    Confluence,
    Mu,
    Orders,
    Prop37,
    Prop38,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Jacobi,
        Suite::Rep,
        Suite::Grading,
        Suite::Confluence,
        Suite::Mu,
        Suite::Orders,
        Suite::Prop37,
        Suite::Prop38,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Rep => "rep",
            Suite::Grading => "grading",
            Suite::Confluence => "confluence",
            Suite::Mu => "mu",
            Suite::Orders => "orders",
            Suite::Prop37 => "prop37",
            Suite::Prop38 => "prop38",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub trials: usize,
    pub seed: u64,
    /// Coordinate bound for random exponents.
    pub window: i64,
    /// Bound on the number of factors in random monomials.
    pub maxlen: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { trials: 100, seed: 0, window: 6, maxlen: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial as u64)
}

pub fn run(suite: Suite, cfg: &CheckConfig) -> Report {
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let seed = cfg.seed ^ trial as u64;
        let mut rng = trial_rng(cfg.seed, trial);
        if let Err(detail) = run_trial(suite, cfg, trial, &mut rng) {
            failures.push(Failure { trial, seed, detail });
        }
    }
    Report { suite: suite.to_string(), trials: cfg.trials, seed: cfg.seed, passed: failures.is_empty(), failures }
}

/// One trial; the trial index only picks the order family (even dense, odd discrete).
pub fn run_trial(
    suite: Suite,
    cfg: &CheckConfig,
    trial: usize,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let dense = trial.is_multiple_of(2);
    match suite {
        Suite::Jacobi => jacobi(rng),
        Suite::Rep => rep(&RepCase::draw(rng, dense, cfg)),
        Suite::Grading => grading(&RepCase::draw(rng, dense, cfg)),
        Suite::Confluence => confluence(rng, dense, cfg),
        Suite::Mu => mu(rng, dense, cfg.window),
        Suite::Orders => orders(rng, dense, cfg.window),
        Suite::Prop37 => prop37(rng, cfg),
        Suite::Prop38 => prop38(rng, cfg),
    }
}

// random inputs

pub fn random_order<R: Rng>(rng: &mut R, dense: bool) -> Order {
    if dense {
        let d = *[2u64, 3, 5, 6, 7].choose(rng).expect("nonempty");
        let u = q_frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let mut v = 0;
        while v == 0 {
            v = rng.gen_range(-3..=3);
        }
        let v = q_frac(v, rng.gen_range(1..=2));
        Order::Dense(Theta::new(u, v, d).expect("d is not a square"))
    } else {
        let mut m = [[1i64, 0], [0, 1]];
        for _ in 0..rng.gen_range(0..=3) {
            let k = rng.gen_range(-2..=2);
            let (i, j) = if rng.gen_bool(0.5) { (0, 1) } else { (1, 0) };
            m[i] = [m[i][0] + k * m[j][0], m[i][1] + k * m[j][1]];
        }
        if rng.gen_bool(0.25) {
            m.swap(0, 1);
        }
        if rng.gen_bool(0.25) {
            m[1] = [-m[1][0], -m[1][1]];
        }
        Order::Discrete(Unimodular::new(m).expect("elementary products are unimodular"))
    }
}

pub fn random_charge<R: Rng>(rng: &mut R) -> Charge {
    let mut c = || q(rng.gen_range(-4..=4));
    Charge::new(c(), c(), c(), c())
}

pub fn random_z2<R: Rng>(rng: &mut R, w: i64) -> Z2 {
    loop {
        let a = Z2::new(rng.gen_range(-w..=w), rng.gen_range(-w..=w));
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_generator<R: Rng>(rng: &mut R, w: i64) -> Generator {
    match rng.gen_range(0..10) {
        0 => Generator::K(rng.gen_range(1..=4)),
        1..=4 => Generator::T(random_z2(rng, w)),
        _ => Generator::E(random_z2(rng, w)),
    }
}

/// A random normal monomial with at most `maxlen` factors, exponents drawn
/// from `positive_window(window)`.
pub fn random_monomial<R: Rng>(rng: &mut R, order: &Order, window: i64, maxlen: usize) -> Monomial {
    let pos = order.positive_window(window);
    let n = rng.gen_range(0..=maxlen);
    let (mut t, mut e) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let a = *pos.choose(rng).expect("windows are nonempty");
        if rng.gen_bool(0.5) {
            t.push(a);
        } else {
            e.push(a);
        }
    }
    Monomial::new(order, t, e).expect("window exponents are positive")
}

/// A random nonzero homogeneous vector: a random monomial plus up to three
/// more monomials of the same degree, with random nonzero coefficients.
pub fn random_homogeneous_vector<R: Rng>(rng: &mut R, order: &Order, window: i64, maxlen: usize) -> Vector {
    let lead = random_monomial(rng, order, window, maxlen);
    let mut v = Vector::term(random_coeff(rng), lead.clone());
    let others = crate::verma::enumerate_basis(order, lead.degree(), window, maxlen).unwrap_or_default();
    for _ in 0..rng.gen_range(0..=3) {
        if let Some(m) = others.choose(rng) {
            v.add_term(random_coeff(rng), m.clone());
        }
    }
    if v.is_zero() {
        Vector::from_monomial(lead)
    } else {
        v
    }
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> Q {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-5..=5);
    }
    q_frac(n, rng.gen_range(1..=3))
}

// suites

fn jacobi<R: Rng>(rng: &mut R) -> std::result::Result<(), String> {
    let [x, y, z] = [0; 3].map(|_| LieElement::from(random_generator(rng, 10)));
    let j = bracket(&x, &bracket(&y, &z)).add(&bracket(&y, &bracket(&z, &x))).add(&bracket(&z, &bracket(&x, &y)));
    if !j.is_zero() {
        return Err(format!("Jacobi fails for {x}, {y}, {z}: {j}"));
    }
    if !bracket(&x, &y).add(&bracket(&y, &x)).is_zero() {
        return Err(format!("antisymmetry fails for {x}, {y}"));
    }
    Ok(())
}

/// A random `(x, y, v)` in a random module.
pub struct RepCase {
    pub module: Verma,
    pub x: Generator,
    pub y: Generator,
    pub v: Vector,
}

impl RepCase {
    pub fn draw<R: Rng>(rng: &mut R, dense: bool, cfg: &CheckConfig) -> Self {
        let order = random_order(rng, dense);
        let charge = random_charge(rng);
        let x = random_generator(rng, cfg.window);
        let y = random_generator(rng, cfg.window);
        let v = Vector::from_monomial(random_monomial(rng, &order, cfg.window, cfg.maxlen));
        RepCase { module: Verma::new(order, charge), x, y, v }
    }
}

fn rep(c: &RepCase) -> std::result::Result<(), String> {
    let m = &c.module;
    let lhs = m.act(c.x, &m.act(c.y, &c.v)).sub(&m.act(c.y, &m.act(c.x, &c.v)));
    let rhs = m.act_elem(&bracket(&c.x.into(), &c.y.into()), &c.v);
    if lhs != rhs {
        return Err(format!("[{}, {}] on {}: {} vs {}", c.x, c.y, c.v, lhs, rhs));
    }
    Ok(())
}

fn grading(c: &RepCase) -> std::result::Result<(), String> {
    let m = &c.module;
    let d = c.v.homogeneous_degree().expect("monomial");
    let check = |w: &Vector, want: Z2, what: &str| {
        if w.is_zero() || w.homogeneous_degree() == Some(want) {
            Ok(())
        } else {
            Err(format!("{what} is not homogeneous of degree {want}: {w}"))
        }
    };
    let yv = m.act(c.y, &c.v);
    check(&yv, d + c.y.degree(), "y·v")?;
    let xyv = m.act(c.x, &yv);
    check(&xyv, d + c.x.degree() + c.y.degree(), "x·y·v")?;
    let br = m.act_elem(&bracket(&c.x.into(), &c.y.into()), &c.v);
    check(&br, d + c.x.degree() + c.y.degree(), "[x,y]·v")
}

fn confluence<R: Rng>(rng: &mut R, dense: bool, cfg: &CheckConfig) -> std::result::Result<(), String> {
    let order = random_order(rng, dense);
    let charge = random_charge(rng);
    let pos = order.positive_window(cfg.window.min(4));
    let len = rng.gen_range(1..=cfg.maxlen.clamp(1, 5));
    let word: Vec<Generator> = (0..len)
        .map(|_| {
            let a = -*pos.choose(rng).expect("nonempty");
            if rng.gen_bool(0.5) {
                Generator::T(a)
            } else {
                Generator::E(a)
            }
        })
        .collect();
    let m = Verma::new(order.clone(), charge.clone());
    let want = m.normal_order(&word);
    for schedule in 0..5 {
        let mut srng = ChaCha8Rng::seed_from_u64(rng.gen());
        let got = normalize_random(&order, &charge, &word, &mut srng);
        if got != want {
            return Err(format!("schedule {schedule} of {word:?}: {got} vs {want}"));
        }
    }
    Ok(())
}

/// The ⪯-least `β` with `kβ = a` for some divisor `k` of `gcd(a)`.
pub fn mu_brute_force(order: &Order, a: Z2) -> Z2 {
    let g = a.gcd();
    let candidates = (1..=g).filter(|k| g % k == 0).map(|k| Z2::new(a.x / k, a.y / k));
    order.min_of(candidates).expect("k = 1 always divides")
}

fn mu<R: Rng>(rng: &mut R, dense: bool, w: i64) -> std::result::Result<(), String> {
    let order = random_order(rng, dense);
    let a = random_z2(rng, w.max(1) * 3);
    let a = if order.is_positive(a) { a } else { -a };
    let got = order.mu(a).map_err(|e| e.to_string())?;
    let want = mu_brute_force(&order, a);
    if got != want {
        return Err(format!("mu({a}) = {got}, brute force {want}"));
    }
    Ok(())
}

/// `a ≺ γ ≺ b` and `det2(b, γ) ≠ 0`.
pub fn choose_between_ok(order: &Order, a: Z2, b: Z2, g: Z2) -> bool {
    order.lt(a, g) && order.lt(g, b) && det2(b, g) != 0
}

/// For `0 ⪯ a ≺ b` with `b - a` off Zε: `b ≻ a + nε` for `n = 1..=10`.
pub fn discrete_gap_holds(order: &Order, a: Z2, b: Z2) -> Option<bool> {
    let eps = order.epsilon().ok()?;
    let applies = order.le(Z2::ZERO, a) && order.lt(a, b) && !order.on_epsilon_line(b - a);
    applies.then(|| (1..=10).all(|n| order.lt(a + n * eps, b)))
}

fn orders<R: Rng>(rng: &mut R, dense: bool, w: i64) -> std::result::Result<(), String> {
    let order = random_order(rng, dense);
    let (a, b, c) = (random_z2(rng, w), random_z2(rng, w), random_z2(rng, w));
    if order.cmp(a, b) != order.cmp(b, a).reverse() {
        return Err(format!("antisymmetry fails at {a}, {b}"));
    }
    if order.cmp(a, b) != order.cmp(a + c, b + c) {
        return Err(format!("translation invariance fails at {a}, {b}, {c}"));
    }
    if det2(a, b) != -det2(b, a) {
        return Err("det2 is not alternating".into());
    }
    let (lo, hi) = if order.lt(a, b) { (a, b) } else { (b, a) };
    if dense {
        let lo = if order.is_positive(lo) { lo } else { Z2::ZERO };
        if order.lt(lo, hi) {
            let g = order.choose_between(lo, hi).map_err(|e| e.to_string())?;
            if !choose_between_ok(&order, lo, hi, g) {
                return Err(format!("choose_between({lo}, {hi}) = {g}"));
            }
        }
    } else {
        let eps = order.epsilon().expect("discrete");
        if let Some(p) = order.positive_window(w).into_iter().find(|p| order.lt(*p, eps)) {
            return Err(format!("{p} is below ε = {eps}"));
        }
        let lo = if order.is_positive(lo) { lo } else { -lo };
        let hi = lo + if order.is_positive(c) { c } else { -c };
        if discrete_gap_holds(&order, lo, hi) == Some(false) {
            return Err(format!("gap property fails for {lo} ≺ {hi}"));
        }
    }
    Ok(())
}

fn prop37<R: Rng>(rng: &mut R, cfg: &CheckConfig) -> std::result::Result<(), String> {
    let order = random_order(rng, true);
    let (variant, charge) = if rng.gen_bool(0.5) {
        (Variant::Prop37_1, Charge::from_ints([0; 4]))
    } else {
        let mut c = [0, 0, rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        if c[2] == 0 && c[3] == 0 {
            c[2] = 1;
        }
        (Variant::Prop37_2, Charge::from_ints(c))
    };
    let m = Verma::new(order.clone(), charge);
    let w = cfg.window.min(4);
    let maxlen = cfg.maxlen.clamp(1, 4);
    let mut v = Vector::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mono = random_monomial(rng, &order, w, maxlen);
        let keep = match variant {
            Variant::Prop37_1 => !mono.is_vacuum(),
            _ => !mono.t_part().is_empty(),
        };
        if keep {
            v.add_term(random_coeff(rng), mono);
        }
    }
    let g = random_generator(rng, w);
    let is_member = |u: &Vector| prop37_member(&m, u, variant).map_err(|e| e.to_string());
    if !is_member(&v)? {
        return Err(format!("{variant}: sample {v} is not a member"));
    }
    let out = m.act(g, &v);
    if !is_member(&out)? {
        return Err(format!("{variant}: {g} maps member {v} to non-member {out}"));
    }
    Ok(())
}

fn prop38<R: Rng>(rng: &mut R, cfg: &CheckConfig) -> std::result::Result<(), String> {
    let order = random_order(rng, false);
    let eps = order.epsilon().expect("discrete");
    let perp = Z2::new(-eps.y, eps.x);
    let (k1, k2) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    let ab = rng.gen_bool(0.5);
    let k2 = if ab || k2 != 0 { k2 } else { 1 };
    // h(ε) = 0 always; f(ε) = 0 exactly for the ab family
    let c34 = if ab { k2 * perp } else { k2 * perp + eps };
    let charge = Charge::from_ints([k1 * perp.x, k1 * perp.y, c34.x, c34.y]);
    let m = Verma::new(order.clone(), charge);
    let mut params = WhittakerParams::new(if ab { Variant::Prop38Ab } else { Variant::Prop38Xi });
    for i in 1..=3u32 {
        params.a.insert(i, q(rng.gen_range(-2..=2)));
        params.b.insert(i, q(rng.gen_range(-2..=2)));
        params.xi.insert(i, q(rng.gen_range(-2..=2)));
    }
    // (t_i - value_i) · (random line monomial) · v has height 0 and is a member
    let i = rng.gen_range(1..=3i64);
    let value = if ab { params.a[&(i as u32)].clone() } else { params.xi[&(i as u32)].clone() };
    let line = |rng: &mut R| -> Vec<Z2> { (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(1..=3) * eps).collect() };
    let (t, e) = (line(rng), line(rng));
    let base = m.monomial(&t, &e).map_err(|e| e.to_string())?;
    let u = m.act(Generator::T(-i * eps), &base).sub(&base.scale(&value));
    let window = cfg.window.clamp(1, 2);
    let member = |v: &Vector, h: u32| prop38_member(&m, v, &params, h, window).map_err(|e| e.to_string());
    if !member(&u, 0)? {
        return Err(format!("{}: sample {u} is not a member", params.variant));
    }
    let k = rng.gen_range(-3..=3i64);
    let hgen = if rng.gen_bool(0.5) { Generator::T(k * eps) } else { Generator::E(k * eps) };
    if k != 0 {
        let hu = m.act(hgen, &u);
        if !member(&hu, 0)? {
            return Err(format!("{}: {hgen} maps {u} out", params.variant));
        }
    }
    let epsp = order.epsilon_prime().expect("discrete");
    let h = rng.gen_range(1..=2i64);
    let alpha = h * epsp + rng.gen_range(-3..=3) * eps;
    let x = if rng.gen_bool(0.5) { Generator::T(-alpha) } else { Generator::E(-alpha) };
    let xu = m.act(x, &u);
    if !member(&xu, h as u32)? {
        return Err(format!("{}: {x} maps {u} out", params.variant));
    }
    Ok(())
}
