//! Maximal graded submodules in the reducible cases.
//!
//! Dense orders with `(c1, c2) = (0, 0)`:
//!
//! * `prop37_1` (`c = 0`): the submodule is everything of degree `≺ 0`, and it
//!   is generated by any `E(-γ) v`;
//! * `prop37_2` (`(c3, c4) ≠ 0`): the span of monomials with at least one
//!   t-factor.
//!
//! Discrete orders with `h(ε) v = 0` (`prop38_ab` when also `f(ε) v = 0`,
//! `prop38_xi` otherwise): a vector `u` of ε′-height `h` is a member when
//! every product `X(ε′ + i₁ε) ⋯ X(ε′ + i_hε) u` lands in a fixed ideal of the
//! commutative algebra generated by `t_i = t^{-iε}` and `e_i = E(-iε)`. The
//! universal quantifier over `i₁, …, i_h ∈ Z` is cut down to a window, so the
//! answer means "member within window".

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::io::{parse_sequence, WhittakerWire};
use crate::orders::{det2, Order, Z2};
use crate::rational::{format_q, Q};
use crate::verma::{Charge, Vector, Verma};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Prop37_1,
    Prop37_2,
    Prop38Ab,
    Prop38Xi,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Prop37_1, Variant::Prop37_2, Variant::Prop38Ab, Variant::Prop38Xi];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Prop37_1 => "prop37_1",
            Variant::Prop37_2 => "prop37_2",
            Variant::Prop38Ab => "prop38_ab",
            Variant::Prop38Xi => "prop38_xi",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL.into_iter().find(|v| v.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown variant {s:?}")))
    }
}

/// Parameters of the discrete-order families. Sequences are finitely
/// supported; missing indices are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerParams {
    pub variant: Variant,
    pub a: BTreeMap<u32, Q>,
    pub b: BTreeMap<u32, Q>,
    pub xi: BTreeMap<u32, Q>,
    pub window: Option<i64>,
}

impl WhittakerParams {
    pub fn new(variant: Variant) -> Self {
        WhittakerParams { variant, a: BTreeMap::new(), b: BTreeMap::new(), xi: BTreeMap::new(), window: None }
    }

    pub fn from_wire(w: &WhittakerWire) -> Result<Self> {
        Ok(WhittakerParams {
            variant: w.variant.parse()?,
            a: parse_sequence(&w.a)?,
            b: parse_sequence(&w.b)?,
            xi: parse_sequence(&w.xi)?,
            window: w.window,
        })
    }

    pub fn to_wire(&self) -> WhittakerWire {
        let seq = |m: &BTreeMap<u32, Q>| m.iter().map(|(k, v)| (k.to_string(), format_q(v))).collect();
        WhittakerWire {
            variant: self.variant.to_string(),
            a: seq(&self.a),
            b: seq(&self.b),
            xi: seq(&self.xi),
            window: self.window,
        }
    }
}

fn at(seq: &BTreeMap<u32, Q>, i: i64) -> Q {
    u32::try_from(i).ok().and_then(|i| seq.get(&i).cloned()).unwrap_or_else(Q::zero)
}

/// Which maximal submodule describes the reducible module `M(c, ⪯)`.
pub fn criterion_secondary(order: &Order, charge: &Charge) -> Result<Variant> {
    if crate::reduction::irreducible(order, charge) {
        return Err(Error::Precondition("the module is irreducible".into()));
    }
    Ok(match order.epsilon() {
        Ok(eps) if charge.f(eps).is_zero() => Variant::Prop38Ab,
        Ok(_) => Variant::Prop38Xi,
        Err(_) if charge.0[2].is_zero() && charge.0[3].is_zero() => Variant::Prop37_1,
        Err(_) => Variant::Prop37_2,
    })
}

fn check_variant(m: &Verma, variant: Variant) -> Result<()> {
    let found = criterion_secondary(m.order(), m.charge())?;
    if found != variant {
        return Err(Error::Precondition(format!("{variant} does not apply here; the module falls under {found}")));
    }
    Ok(())
}

/// Membership in the dense-order maximal submodules.
pub fn prop37_member(m: &Verma, v: &Vector, variant: Variant) -> Result<bool> {
    if !matches!(variant, Variant::Prop37_1 | Variant::Prop37_2) {
        return Err(Error::Invalid(format!("prop37_member does not handle {variant}")));
    }
    check_variant(m, variant)?;
    Ok(match variant {
        Variant::Prop37_1 => v.vacuum_coeff().is_zero(),
        _ => v.monomials().all(|mono| !mono.t_part().is_empty()),
    })
}

/// A target of [`prop37_generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `E(-β) v` for `β ≻ 0`.
    E(Z2),
    /// `t^{-δ} v` for `δ ≻ 0`.
    T(Z2),
}

/// An element of `U(L)` written as a combination of words; each word is
/// applied left to right, as in [`Verma::apply_sequence`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination {
    pub words: Vec<(Q, Vec<Generator>)>,
}

impl Combination {
    fn word(c: Q, w: Vec<Generator>) -> Self {
        Combination { words: vec![(c, w)] }
    }

    /// Then acts by `g` on the result.
    fn then(&self, g: Generator) -> Self {
        let words = self
            .words
            .iter()
            .map(|(c, w)| {
                let mut w = w.clone();
                w.push(g);
                (c.clone(), w)
            })
            .collect();
        Combination { words }
    }

    fn plus_scaled(mut self, other: &Combination, s: &Q) -> Self {
        self.words.extend(other.words.iter().map(|(c, w)| (c * s, w.clone())));
        self
    }

    fn scale(&self, s: &Q) -> Self {
        Combination { words: self.words.iter().map(|(c, w)| (c * s, w.clone())).collect() }
    }

    pub fn apply(&self, m: &Verma, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (c, w) in &self.words {
            out.add_scaled(&m.apply_sequence(w, v), c);
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }
}

fn ratio(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

/// Expresses a target vector as `P · E(-γ) v` with `P ∈ U(L)`, for the module
/// with `c = 0` over a dense order.
///
/// With `γ′` the first admissible element below `γ`:
///
/// * `E(-β) v = det2(γ, β)⁻¹ E(γ - β) E(-γ) v` when `β ≺ γ`;
/// * `E(-(γ′ + (n+1)γ)) v = det2(γ′, γ)⁻¹ [E(-γ), E(-(γ′ + nγ))] v`,
///   which reaches a `ρ = γ′ + nγ ≻ β` and then `β` by the first identity;
/// * `t^{-δ} v = det2(-δ, α)⁻¹ t^α E(-(δ + α)) v`.
///
/// The result is exactly the target (not a multiple); `maxsteps` bounds the
/// length of the commutator chain.
pub fn prop37_generate(m: &Verma, gamma: Z2, target: Target, maxsteps: usize) -> Result<Combination> {
    check_variant(m, Variant::Prop37_1)?;
    let order = m.order();
    let need_pos = |a: Z2| {
        if order.is_positive(a) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{a} must be positive")))
        }
    };
    need_pos(gamma)?;
    match target {
        Target::E(beta) => {
            need_pos(beta)?;
            reach_e(order, gamma, beta, maxsteps)
        }
        Target::T(delta) => {
            need_pos(delta)?;
            let alpha = order.choose_between(delta, delta + delta)?;
            let pre = reach_e(order, gamma, delta + alpha, maxsteps)?;
            Ok(pre.then(Generator::T(alpha)).scale(&ratio(1, det2(-delta, alpha))))
        }
    }
}

fn reach_e(order: &Order, gamma: Z2, beta: Z2, maxsteps: usize) -> Result<Combination> {
    if beta == gamma {
        return Ok(Combination::word(Q::one(), vec![]));
    }
    let down = |from: &Combination, rho: Z2| from.then(Generator::E(rho - beta)).scale(&ratio(1, det2(rho, beta)));
    if order.lt(beta, gamma) && det2(gamma, beta) != 0 {
        return Ok(down(&Combination::word(Q::one(), vec![]), gamma));
    }
    let gp = order.choose_small_where(gamma, |g| det2(gamma, g) != 0)?;
    // chain[n] maps E(-γ) v to E(-(γ′ + nγ)) v
    let mut cur = Combination::word(ratio(1, det2(gamma, gp)), vec![Generator::E(gamma - gp)]);
    let mut rho = gp;
    for _ in 0..maxsteps {
        if rho == beta {
            return Ok(cur);
        }
        if order.lt(beta, rho) && det2(rho, beta) != 0 {
            return Ok(down(&cur, rho));
        }
        let s = ratio(1, det2(gp, gamma));
        let next = cur
            .then(Generator::E(-gamma))
            .scale(&s)
            .plus_scaled(&Combination::word(Q::one(), vec![Generator::E(-rho)]), &-s);
        cur = next;
        rho += gamma;
    }
    Err(Error::Budget(maxsteps))
}

/// A polynomial in `t_i = t^{-iε}` and `e_i = E(-iε)`, keyed by the sorted
/// index lists of its t- and e-factors.
pub type HPoly = BTreeMap<(Vec<i64>, Vec<i64>), Q>;

/// Reads a vector whose exponents all lie on Zε as an element of the
/// commutative algebra `U(H₋) v`.
pub fn h_minus_poly(order: &Order, v: &Vector) -> Result<HPoly> {
    let index = |a: &Z2| -> Result<i64> {
        match order.basis_coords(*a)? {
            (i, 0) => Ok(i),
            _ => Err(Error::Precondition(format!("exponent {a} is off the line Zε"))),
        }
    };
    let mut out = HPoly::new();
    for (mono, c) in v.terms() {
        let mut t = mono.t_part().iter().map(index).collect::<Result<Vec<_>>>()?;
        let mut e = mono.e_part().iter().map(index).collect::<Result<Vec<_>>>()?;
        t.sort_unstable();
        e.sort_unstable();
        *out.entry((t, e)).or_insert_with(Q::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn product(seq: &BTreeMap<u32, Q>, idx: &[i64]) -> Q {
    idx.iter().fold(Q::one(), |acc, i| acc * at(seq, *i))
}

/// Value at `t_i = a_i`, `e_i = b_i`.
pub fn eval_ab(p: &HPoly, a: &BTreeMap<u32, Q>, b: &BTreeMap<u32, Q>) -> Q {
    p.iter().map(|((t, e), c)| c * product(a, t) * product(b, e)).sum()
}

/// Substitutes `t_i = ξ_i`, leaving a polynomial in the `e_i` alone.
pub fn eval_xi(p: &HPoly, xi: &BTreeMap<u32, Q>) -> BTreeMap<Vec<i64>, Q> {
    let mut out = BTreeMap::new();
    for ((t, e), c) in p {
        *out.entry(e.clone()).or_insert_with(Q::zero) += c * product(xi, t);
    }
    out.retain(|_, c: &mut Q| !c.is_zero());
    out
}

/// ε′-height: the common value of `Σ a[2]` over the exponents of every
/// monomial, or an error when monomials disagree.
pub fn height(order: &Order, v: &Vector) -> Result<Option<i64>> {
    let mut h = None;
    for mono in v.monomials() {
        let mut s = 0;
        for a in mono.t_part().iter().chain(mono.e_part()) {
            s += order.basis_coords(*a)?.1;
        }
        match h {
            None => h = Some(s),
            Some(h0) if h0 != s => {
                return Err(Error::Precondition(format!("vector mixes heights {h0} and {s}")));
            }
            _ => {}
        }
    }
    Ok(h)
}

fn in_ideal(m: &Verma, params: &WhittakerParams, u: &Vector) -> Result<bool> {
    let p = h_minus_poly(m.order(), u)?;
    Ok(match params.variant {
        Variant::Prop38Ab => eval_ab(&p, &params.a, &params.b).is_zero(),
        _ => eval_xi(&p, &params.xi).is_empty(),
    })
}

/// Membership in `M_ab(h)` or `M_ξ(h)`, within the index window `[-window, window]`.
pub fn prop38_member(m: &Verma, v: &Vector, params: &WhittakerParams, h: u32, window: i64) -> Result<bool> {
    if !matches!(params.variant, Variant::Prop38Ab | Variant::Prop38Xi) {
        return Err(Error::Invalid(format!("prop38_member does not handle {}", params.variant)));
    }
    check_variant(m, params.variant)?;
    if window < 0 {
        return Err(Error::Invalid("window must be nonnegative".into()));
    }
    match height(m.order(), v)? {
        Some(k) if k != i64::from(h) => {
            return Err(Error::Precondition(format!("vector has height {k}, not {h}")));
        }
        _ => {}
    }
    let order = m.order();
    let (eps, epsp) = (order.epsilon()?, order.epsilon_prime()?);
    let letters: Vec<Generator> = (-window..=window)
        .flat_map(|i| {
            let a = epsp + i * eps;
            [Generator::T(a), Generator::E(a)]
        })
        .collect();
    // depth-first over all letter sequences, sharing prefixes; the letter
    // chosen at depth k is the k-th from the right, so it acts k-th
    let mut stack = vec![(v.clone(), 0u32)];
    while let Some((u, depth)) = stack.pop() {
        if u.is_zero() {
            continue;
        }
        if depth == h {
            if !in_ideal(m, params, &u)? {
                return Ok(false);
            }
            continue;
        }
        for g in letters.iter().rev() {
            stack.push((m.act(*g, &u), depth + 1));
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn z(x: i64, y: i64) -> Z2 {
        Z2::new(x, y)
    }

    #[test]
    fn secondary_examples() {
        let s = |o: &Order, c| criterion_secondary(o, &Charge::from_ints(c));
        assert_eq!(s(&Order::sqrt2(), [0, 0, 0, 0]).unwrap(), Variant::Prop37_1);
        assert_eq!(s(&Order::sqrt2(), [0, 0, 1, 0]).unwrap(), Variant::Prop37_2);
        assert_eq!(s(&Order::lex(), [0, 1, 0, 1]).unwrap(), Variant::Prop38Ab);
        assert_eq!(s(&Order::lex(), [0, 1, 1, 0]).unwrap(), Variant::Prop38Xi);
        assert!(s(&Order::lex(), [1, 0, 0, 0]).is_err());
        assert!(s(&Order::sqrt2(), [0, 1, 0, 0]).is_err());
    }

    #[test]
    fn prop37_member_examples() {
        let m = Verma::new(Order::sqrt2(), Charge::from_ints([0; 4]));
        assert!(!prop37_member(&m, &Vector::vacuum(), Variant::Prop37_1).unwrap());
        let v = m.monomial(&[], &[z(1, 1)]).unwrap();
        assert!(prop37_member(&m, &v, Variant::Prop37_1).unwrap());
        assert!(prop37_member(&m, &v, Variant::Prop37_2).is_err());

        let m = Verma::new(Order::sqrt2(), Charge::from_ints([0, 0, 1, 0]));
        let t = m.monomial(&[z(1, 1)], &[]).unwrap();
        assert!(!prop37_member(&m, &Vector::vacuum().add(&t), Variant::Prop37_2).unwrap());
        let te = m.monomial(&[z(1, 1)], &[z(0, 1)]).unwrap();
        assert!(prop37_member(&m, &te, Variant::Prop37_2).unwrap());
    }

    fn replay(m: &Verma, gamma: Z2, target: Target) -> (Combination, Vector) {
        let comb = prop37_generate(m, gamma, target, 64).unwrap();
        let start = m.monomial(&[], &[gamma]).unwrap();
        (comb.clone(), comb.apply(m, &start))
    }

    #[test]
    fn generate_examples() {
        let m = Verma::new(Order::sqrt2(), Charge::from_ints([0; 4]));
        let gamma = z(1, 1);
        let gp = m.order().choose_small_where(gamma, |g| det2(gamma, g) != 0).unwrap();

        let (comb, out) = replay(&m, gamma, Target::E(gp));
        assert_eq!(comb.words.len(), 1);
        assert_eq!(comb.max_len(), 1);
        assert_eq!(out, m.monomial(&[], &[gp]).unwrap());

        let (comb, out) = replay(&m, gamma, Target::E(gp + gamma));
        assert_eq!(comb.words.len(), 2);
        assert_eq!(comb.max_len(), 2);
        assert_eq!(out, m.monomial(&[], &[gp + gamma]).unwrap());

        let (comb, out) = replay(&m, gamma, Target::T(z(1, 1)));
        assert!(comb.words.iter().all(|(_, w)| matches!(w.last(), Some(Generator::T(_)))));
        assert_eq!(out, m.monomial(&[z(1, 1)], &[]).unwrap());
    }

    #[test]
    fn generate_far_targets() {
        let m = Verma::new(Order::sqrt2(), Charge::from_ints([0; 4]));
        for beta in [z(4, 4), z(3, -2), z(-1, 4), z(2, 2)] {
            let (_, out) = replay(&m, z(1, 1), Target::E(beta));
            assert_eq!(out, m.monomial(&[], &[beta]).unwrap(), "target E(-{beta})");
        }
        assert!(matches!(prop37_generate(&m, z(1, 1), Target::E(z(9, 9)), 1), Err(Error::Budget(1))));
    }

    #[test]
    fn prop38_member_examples() {
        let m = Verma::new(Order::lex(), Charge::from_ints([0, 0, 0, 0]));
        let eps = z(1, 0);
        let mut p = WhittakerParams::new(Variant::Prop38Ab);
        p.a.insert(1, q(2));
        let gen = m.monomial(&[eps], &[]).unwrap().sub(&Vector::vacuum().scale(&q(2)));
        assert!(prop38_member(&m, &gen, &p, 0, 3).unwrap());
        let sq = m.monomial(&[eps, eps], &[]).unwrap();
        assert!(!prop38_member(&m, &sq, &p, 0, 3).unwrap());

        let zero = WhittakerParams::new(Variant::Prop38Ab);
        let v = m.monomial(&[z(0, 1)], &[]).unwrap();
        assert!(prop38_member(&m, &v, &zero, 1, 2).unwrap());
        assert!(prop38_member(&m, &v, &zero, 0, 2).is_err());
        // the constant 1 never lies in a proper ideal
        assert!(!prop38_member(&m, &Vector::vacuum(), &zero, 0, 2).unwrap());
    }

    #[test]
    fn prop38_xi_keeps_e_variables() {
        let m = Verma::new(Order::lex(), Charge::from_ints([0, 0, 1, 0]));
        let mut p = WhittakerParams::new(Variant::Prop38Xi);
        p.xi.insert(1, q(3));
        let eps = z(1, 0);
        let u = m.monomial(&[eps], &[eps]).unwrap().sub(&m.monomial(&[], &[eps]).unwrap().scale(&q(3)));
        assert!(prop38_member(&m, &u, &p, 0, 1).unwrap());
        assert!(!prop38_member(&m, &m.monomial(&[], &[eps]).unwrap(), &p, 0, 1).unwrap());
    }

    #[test]
    fn whittaker_wire_round_trip() {
        let w: WhittakerWire =
            crate::io::from_json(r#"{"variant":"prop38_ab","a":{"1":"0","2":"1/2"},"b":{},"window":3}"#).unwrap();
        let p = WhittakerParams::from_wire(&w).unwrap();
        assert_eq!(p.a.get(&2), Some(&Q::new(1.into(), 2.into())));
        assert_eq!(p.window, Some(3));
        assert_eq!(p.to_wire(), w);
        assert!("prop39".parse::<Variant>().is_err());
    }
}
