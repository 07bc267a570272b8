//! Irreducibility criteria and cyclicity certificates.
//!
//! `M(c, ⪯)` is irreducible exactly when `(c1, c2) ≠ (0, 0)` (dense orders)
//! or `ε.x c1 + ε.y c2 ≠ 0` (discrete orders). In those cases every nonzero
//! vector generates the module, and [`reduce_to_highest`] produces a word of
//! generators that carries the vector to a nonzero multiple of `v`.
//!
//! The reduction runs in stages, each a single-purpose step that can be
//! called on its own:
//!
//! * dense: [`dense_reduce_r`] until at most one E-factor per monomial,
//!   [`dense_reduce_to_t`] to clear the last E-factor, [`dense_finish`];
//! * discrete: [`discrete_reduce_l`] until every E-exponent lies on Zε,
//!   [`discrete_reduce_eeps`] to clear those, [`discrete_finish`].
//!
//! All existential choices are made by deterministic window scans, so the
//! same input always yields the same certificate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::io::digest;
use crate::orders::{det2, Order, Z2};
use crate::rational::Q;
use crate::verma::{insert_e, Charge, Vector, Verma};

/// Reduction measures of a nonzero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorStats {
    /// Every t-exponent that occurs.
    pub j: BTreeSet<Z2>,
    /// Largest number of E-factors in a monomial.
    pub r: usize,
    /// E-exponent sequences of the monomials with `r` E-factors.
    pub i: BTreeSet<Vec<Z2>>,
    /// Discrete orders: largest number of E-exponents off the line Zε.
    pub l: Option<usize>,
    /// Discrete orders: largest number of t-exponents off Zε among monomials
    /// whose E-exponents all lie on Zε.
    pub l_prime: Option<usize>,
}

pub fn stats(m: &Verma, v: &Vector) -> Result<VectorStats> {
    if v.is_zero() {
        return Err(Error::Precondition("stats of the zero vector".into()));
    }
    let order = m.order();
    let j = v.monomials().flat_map(|mono| mono.t_part().iter().copied()).collect();
    let r = v.monomials().map(|mono| mono.e_part().len()).max().unwrap_or(0);
    let i = v.monomials().filter(|mono| mono.e_part().len() == r).map(|mono| mono.e_part().to_vec()).collect();
    let (l, l_prime) = if order.is_dense() {
        (None, None)
    } else {
        let off = |xs: &[Z2]| xs.iter().filter(|a| !order.on_epsilon_line(**a)).count();
        let l = v.monomials().map(|mono| off(mono.e_part())).max().unwrap_or(0);
        let lp = v.monomials().filter(|mono| off(mono.e_part()) == 0).map(|mono| off(mono.t_part())).max().unwrap_or(0);
        (Some(l), Some(lp))
    };
    Ok(VectorStats { j, r, i, l, l_prime })
}

/// A word that maps a given vector to `scalar · v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Applied left to right: `word[0]` acts first.
    pub word: Vec<Generator>,
    pub scalar: Q,
    pub input_digest: String,
}

/// `h(α)` evaluated on `v`.
fn chi(c: &Charge, a: Z2) -> Q {
    c.h(a)
}

/// The irreducibility criterion for `M(c, ⪯)`.
pub fn irreducible(order: &Order, charge: &Charge) -> bool {
    match order.epsilon() {
        Ok(eps) => !chi(charge, eps).is_zero(),
        Err(_) => !(charge.0[0].is_zero() && charge.0[1].is_zero()),
    }
}

fn require_nonzero(v: &Vector) -> Result<()> {
    if v.is_zero() {
        Err(Error::Precondition("the zero vector generates nothing".into()))
    } else {
        Ok(())
    }
}

fn require_dense(m: &Verma) -> Result<()> {
    if m.order().is_dense() {
        Ok(())
    } else {
        Err(Error::Precondition("this step needs a dense order".into()))
    }
}

fn max_sequence<'a, I: IntoIterator<Item = &'a [Z2]>>(order: &Order, seqs: I) -> Option<&'a [Z2]> {
    seqs.into_iter().reduce(|a, b| if order.compare_sequences(a, b) == Ordering::Less { b } else { a })
}

/// One step lowering `r` by exactly one: acts by `t^γ′` with
/// `0 ≺ γ′ ≺ min(γ, μ(β₁₁))` and `β₁₁ - γ′` not a t-exponent of the top part.
///
/// `γ` is the least E-exponent among the monomials with `r` E-factors and
/// `β₁₁` the first entry of their largest E-sequence.
pub fn dense_reduce_r(m: &Verma, v: &Vector) -> Result<(Generator, Vector)> {
    require_dense(m)?;
    let s = stats(m, v)?;
    if s.r < 2 {
        return Err(Error::Precondition(format!("dense_reduce_r needs r ≥ 2, got {}", s.r)));
    }
    let order = m.order();
    let top: Vec<_> = v.monomials().filter(|mono| mono.e_part().len() == s.r).collect();
    let lead = max_sequence(order, top.iter().map(|mono| mono.e_part())).expect("top part is nonempty");
    let b11 = lead[0];
    let gamma = order.min_of(top.iter().map(|mono| mono.e_part()[0])).expect("nonempty");
    let j_top: BTreeSet<Z2> = top.iter().flat_map(|mono| mono.t_part().iter().copied()).collect();
    let bound = order.min(gamma, order.mu(b11)?);
    let forbidden: Vec<Z2> = j_top.iter().map(|j| b11 - *j).collect();
    let g = Generator::T(order.choose_small(bound, &forbidden)?);
    let out = m.act(g, v);
    if out.is_zero() || stats(m, &out)?.r != s.r - 1 {
        return Err(Error::Internal(format!("{g} did not lower r from {}", s.r)));
    }
    Ok((g, out))
}

/// Clears the single E-factor: acts by `t^α` with `β₂ ≺ α ≺ β₁` and
/// `det2(β₁, α) ≠ 0`, where `β₁ ≻ β₂` are the two largest E-exponents
/// present (`β₂ = 0` when only one occurs).
pub fn dense_reduce_to_t(m: &Verma, v: &Vector) -> Result<(Generator, Vector)> {
    require_dense(m)?;
    let s = stats(m, v)?;
    if s.r != 1 {
        return Err(Error::Precondition(format!("dense_reduce_to_t needs r = 1, got {}", s.r)));
    }
    let order = m.order();
    let mut betas: Vec<Z2> = v.monomials().filter_map(|mono| mono.e_part().first().copied()).collect();
    order.sort(&mut betas);
    betas.dedup();
    let b1 = *betas.last().expect("r = 1");
    let b2 = if betas.len() > 1 { betas[betas.len() - 2] } else { Z2::ZERO };
    let g = Generator::T(order.choose_between(b2, b1)?);
    let out = m.act(g, v);
    if out.is_zero() || stats(m, &out)?.r != 0 {
        return Err(Error::Internal(format!("{g} did not clear the E-factor")));
    }
    Ok((g, out))
}

/// Maps a nonzero vector of `U(L^t_-) v` to a nonzero multiple of `v`.
///
/// Exponents `α` with `h(α) v = 0` are "bad". While bad exponents occur, the
/// largest exponent `α*` (with multiplicity `b` in the leading monomial) is
/// removed by `E(α*)^b` if it is good, or traded for a good small exponent
/// `η` by `E(α* - η)^b` if it is bad. Once every exponent is good the leading
/// monomial is peeled off factor by factor, largest first.
///
/// Returns the applied word and the final vector `λ v`.
pub fn dense_finish(m: &Verma, v: &Vector) -> Result<(Vec<Generator>, Vector)> {
    require_dense(m)?;
    require_nonzero(v)?;
    let c = m.charge();
    if c.0[0].is_zero() && c.0[1].is_zero() {
        return Err(Error::Criterion("dense_finish needs (c1, c2) ≠ (0, 0)".into()));
    }
    if v.monomials().any(|mono| !mono.e_part().is_empty()) {
        return Err(Error::Precondition("dense_finish needs a vector without E-factors".into()));
    }
    let order = m.order();
    let good = |a: Z2| !chi(c, a).is_zero();
    let mut word = Vec::new();
    let mut cur = v.clone();
    for _ in 0..MAX_PASSES {
        let lead = max_sequence(order, cur.monomials().map(|mono| mono.t_part())).expect("nonzero").to_vec();
        let j: BTreeSet<Z2> = cur.monomials().flat_map(|mono| mono.t_part().iter().copied()).collect();
        let step: Vec<Generator> = if j.iter().all(|a| good(*a)) {
            lead.iter().rev().map(|a| Generator::E(*a)).collect()
        } else {
            let top = *lead.last().expect("a bad exponent exists, so lead is nonempty");
            let b = lead.iter().filter(|a| **a == top).count();
            let g = if good(top) {
                Generator::E(top)
            } else {
                let a0 = order
                    .min_of(j.iter().flat_map(|a| [*a, top - *a]).filter(|a| order.is_positive(*a)))
                    .expect("top itself is positive");
                let delta = order.choose_small_where(top, |d| d + d != top)?;
                let bound = order.min(a0, order.min(delta, top - delta));
                let eta = order.choose_small_where(bound, good)?;
                Generator::E(top - eta)
            };
            vec![g; b]
        };
        let next = m.apply_sequence(&step, &cur);
        if next.is_zero() {
            return Err(Error::Internal(format!("finishing step {step:?} annihilated the vector")));
        }
        word.extend(step);
        cur = next;
        if cur.as_vacuum_multiple().is_some() {
            return Ok((word, cur));
        }
    }
    Err(Error::Budget(MAX_PASSES))
}

const MAX_PASSES: usize = 10_000;

/// E-block re-expressed with exponents off Zε first, then those on Zε.
type SplitForm = BTreeMap<(Vec<Z2>, Vec<Z2>, Vec<Z2>), Q>;

/// Rewrites each monomial `t^A E(B) v` in the PBW order where E-exponents
/// off the line Zε precede those on it. Only the E-block changes.
pub fn split_form(m: &Verma, v: &Vector) -> Result<SplitForm> {
    let order = m.order();
    order.epsilon()?;
    let key = |a: Z2| order.on_epsilon_line(a);
    let le = |x: Z2, y: Z2| match (key(x), key(y)) {
        (false, true) => true,
        (true, false) => false,
        _ => order.le(x, y),
    };
    let mut out: SplitForm = BTreeMap::new();
    for (mono, c) in v.terms() {
        let mut lists: BTreeMap<Vec<Z2>, Q> = BTreeMap::new();
        lists.insert(vec![], Q::from_integer(1.into()));
        for b in mono.e_part().iter().rev() {
            let mut next: BTreeMap<Vec<Z2>, Q> = BTreeMap::new();
            for (l, x) in &lists {
                for (l2, y) in insert_e(&le, *b, l) {
                    *next.entry(l2).or_insert_with(Q::zero) += x * y;
                }
            }
            next.retain(|_, x| !x.is_zero());
            lists = next;
        }
        for (l, x) in lists {
            let split = l.iter().position(|a| key(*a)).unwrap_or(l.len());
            let k = (mono.t_part().to_vec(), l[..split].to_vec(), l[split..].to_vec());
            *out.entry(k).or_insert_with(Q::zero) += c * x;
        }
    }
    out.retain(|_, x| !x.is_zero());
    Ok(out)
}

fn require_discrete(m: &Verma) -> Result<Z2> {
    m.order().epsilon().map_err(|_| Error::Precondition("this step needs a discrete order".into()))
}

/// One step lowering `l` by one: acts by `t^{α - nε}`.
///
/// `α` and `α₁₁` are read from the split PBW form (off-line E-factors first):
/// `α` is the least leading off-line exponent among monomials with `l` such
/// factors and `α₁₁` the first entry of their largest off-line sequence. `n`
/// is the least positive integer with `det2(α₁₁, α - nε) ≠ 0` and
/// `α₁₁ - α + nε` not a t-exponent of `v`.
pub fn discrete_reduce_l(m: &Verma, v: &Vector) -> Result<(Generator, Vector)> {
    let eps = require_discrete(m)?;
    let s = stats(m, v)?;
    let l = s.l.expect("discrete");
    if l == 0 {
        return Err(Error::Precondition("discrete_reduce_l needs l ≥ 1".into()));
    }
    let order = m.order();
    let split = split_form(m, v)?;
    let top: Vec<&Vec<Z2>> = split.keys().map(|(_, off, _)| off).filter(|off| off.len() == l).collect();
    let alpha = order.min_of(top.iter().map(|off| off[0])).expect("l ≥ 1");
    let a11 = max_sequence(order, top.iter().map(|off| off.as_slice())).expect("nonempty")[0];
    let n = (1..)
        .find(|n| {
            let g = alpha - *n * eps;
            det2(a11, g) != 0 && !s.j.contains(&(a11 - g))
        })
        .expect("only finitely many n are excluded");
    let g = Generator::T(alpha - n * eps);
    let out = m.act(g, v);
    if out.is_zero() || stats(m, &out)?.l != Some(l - 1) {
        return Err(Error::Internal(format!("{g} did not lower l from {l}")));
    }
    Ok((g, out))
}

/// Clears E-factors on Zε: acts by `t^{kε}` for each `kε` of the largest
/// E-ladder. Needs `l(v) = 0` and `h(ε) v ≠ 0`.
pub fn discrete_reduce_eeps(m: &Verma, v: &Vector) -> Result<(Vec<Generator>, Vector)> {
    let eps = require_discrete(m)?;
    if chi(m.charge(), eps).is_zero() {
        return Err(Error::Criterion("discrete_reduce_eeps needs ε.x c1 + ε.y c2 ≠ 0".into()));
    }
    if stats(m, v)?.l != Some(0) {
        return Err(Error::Precondition("discrete_reduce_eeps needs l = 0".into()));
    }
    let ladder = max_sequence(m.order(), v.monomials().map(|mono| mono.e_part())).expect("nonzero");
    let word: Vec<Generator> = ladder.iter().map(|a| Generator::T(*a)).collect();
    let out = m.apply_sequence(&word, v);
    if out.is_zero() || out.monomials().any(|mono| !mono.e_part().is_empty()) {
        return Err(Error::Internal("ladder step did not land in U(L^t_-) v".into()));
    }
    Ok((word, out))
}

/// Maps a nonzero vector of `U(L^t_-) v` to a nonzero multiple of `v`
/// (discrete orders, `h(ε) v ≠ 0`).
///
/// While some t-exponent lies off Zε, acts by `E(α* - nε)` where `α*` is the
/// largest exponent and `n` the least positive integer with `nε` not already
/// a t-exponent; this trades one off-line factor for `t^{-nε}`. Then the
/// largest t-ladder is removed by the matching `E(kε)`.
pub fn discrete_finish(m: &Verma, v: &Vector) -> Result<(Vec<Generator>, Vector)> {
    let eps = require_discrete(m)?;
    require_nonzero(v)?;
    if chi(m.charge(), eps).is_zero() {
        return Err(Error::Criterion("discrete_finish needs ε.x c1 + ε.y c2 ≠ 0".into()));
    }
    if v.monomials().any(|mono| !mono.e_part().is_empty()) {
        return Err(Error::Precondition("discrete_finish needs a vector without E-factors".into()));
    }
    let order = m.order();
    let off_line = |v: &Vector| {
        v.monomials()
            .map(|mono| mono.t_part().iter().filter(|a| !order.on_epsilon_line(**a)).count())
            .max()
            .unwrap_or(0)
    };
    let mut word = Vec::new();
    let mut cur = v.clone();
    let mut lp = off_line(&cur);
    while lp > 0 {
        let j: BTreeSet<Z2> = cur.monomials().flat_map(|mono| mono.t_part().iter().copied()).collect();
        let top = order.max_of(j.iter().copied()).expect("lp > 0");
        let n = (1..).find(|n| !j.contains(&(*n * eps))).expect("J is finite");
        let g = Generator::E(top - n * eps);
        let next = m.act(g, &cur);
        let lp2 = if next.is_zero() { usize::MAX } else { off_line(&next) };
        if lp2 >= lp {
            return Err(Error::Internal(format!("{g} did not lower l′ from {lp}")));
        }
        word.push(g);
        cur = next;
        lp = lp2;
    }
    let ladder = max_sequence(order, cur.monomials().map(|mono| mono.t_part())).expect("nonzero").to_vec();
    let tail: Vec<Generator> = ladder.iter().rev().map(|a| Generator::E(*a)).collect();
    let out = m.apply_sequence(&tail, &cur);
    match out.as_vacuum_multiple() {
        Some(l) if !l.is_zero() => {}
        _ => return Err(Error::Internal("ladder removal did not reach C·v".into())),
    }
    word.extend(tail);
    Ok((word, out))
}

/// Produces a certificate that `v` generates the whole module.
///
/// Refuses (rather than searching) when the module is reducible.
pub fn reduce_to_highest(m: &Verma, v: &Vector) -> Result<Certificate> {
    require_nonzero(v)?;
    if !irreducible(m.order(), m.charge()) {
        return Err(Error::Criterion("the module is reducible".into()));
    }
    let mut word = Vec::new();
    let mut cur = v.clone();
    if m.order().is_dense() {
        while stats(m, &cur)?.r > 1 {
            let (g, next) = dense_reduce_r(m, &cur)?;
            word.push(g);
            cur = next;
        }
        if stats(m, &cur)?.r == 1 {
            let (g, next) = dense_reduce_to_t(m, &cur)?;
            word.push(g);
            cur = next;
        }
        let (tail, next) = dense_finish(m, &cur)?;
        word.extend(tail);
        cur = next;
    } else {
        while stats(m, &cur)?.l.expect("discrete") > 0 {
            let (g, next) = discrete_reduce_l(m, &cur)?;
            word.push(g);
            cur = next;
        }
        if cur.monomials().any(|mono| !mono.e_part().is_empty()) {
            let (w, next) = discrete_reduce_eeps(m, &cur)?;
            word.extend(w);
            cur = next;
        }
        let (tail, next) = discrete_finish(m, &cur)?;
        word.extend(tail);
        cur = next;
    }
    let scalar = match cur.as_vacuum_multiple() {
        Some(l) if !l.is_zero() => l,
        _ => return Err(Error::Internal("reduction did not end at a multiple of v".into())),
    };
    Ok(Certificate { word, scalar, input_digest: digest(m, v) })
}

/// Replays the certificate word on `v` and compares with `scalar · v`.
pub fn verify_certificate(m: &Verma, v: &Vector, cert: &Certificate) -> Result<bool> {
    if cert.input_digest != digest(m, v) {
        return Err(Error::DigestMismatch);
    }
    let out = m.apply_sequence(&cert.word, v);
    Ok(out == Vector::vacuum().scale(&cert.scalar) && !cert.scalar.is_zero())
}
