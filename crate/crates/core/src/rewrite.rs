//! A word-rewriting normalizer, independent of [`Verma::act`].
//!
//! Words of generators acting on `v` are rewritten by three rules until none
//! applies:
//!
//! * a central letter `K_i` anywhere becomes the scalar `c_i`;
//! * a word ending in a positive letter is zero;
//! * an adjacent out-of-order pair `X Y` becomes `Y X + [X, Y]`.
//!
//! The target order places negative `t`'s (sorted) before negative `E`'s
//! (sorted) before positive letters. Which redex fires next is chosen by a
//! caller-supplied RNG, so different seeds give different schedules; the
//! result must not depend on the schedule.
//!
//! [`Verma::act`]: crate::verma::Verma::act

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{bracket_gen, Generator};
use crate::orders::Order;
use crate::rational::Q;
use crate::verma::{Charge, Monomial, Vector};

type Words = BTreeMap<Vec<Generator>, Q>;

fn class(order: &Order, g: Generator) -> u8 {
    match g {
        Generator::K(_) => 3,
        _ if g.is_positive(order) => 2,
        Generator::T(_) => 0,
        Generator::E(_) => 1,
    }
}

fn out_of_order(order: &Order, x: Generator, y: Generator) -> bool {
    let (cx, cy) = (class(order, x), class(order, y));
    match cx.cmp(&cy) {
        Ordering::Greater => cx != 3 && cy != 3,
        Ordering::Less => false,
        // exponents are -degree; compare them ascending
        Ordering::Equal if cx < 2 => order.cmp(-x.degree(), -y.degree()) == Ordering::Greater,
        Ordering::Equal => false,
    }
}

#[derive(Debug, Clone, Copy)]
enum Redex {
    Central(usize),
    TrailingPositive,
    Swap(usize),
}

fn redexes(order: &Order, w: &[Generator]) -> Vec<Redex> {
    let mut out = Vec::new();
    for (i, g) in w.iter().enumerate() {
        if g.is_central() {
            out.push(Redex::Central(i));
        }
    }
    if let Some(last) = w.last() {
        if last.is_positive(order) {
            out.push(Redex::TrailingPositive);
        }
    }
    for i in 0..w.len().saturating_sub(1) {
        if out_of_order(order, w[i], w[i + 1]) {
            out.push(Redex::Swap(i));
        }
    }
    out
}

fn add(words: &mut Words, w: Vec<Generator>, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = words.entry(w.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        words.remove(&w);
    }
}

/// Normalizes `word · v` by random single-redex rewriting steps.
pub fn normalize_random<R: Rng>(order: &Order, charge: &Charge, word: &[Generator], rng: &mut R) -> Vector {
    let mut words: Words = BTreeMap::new();
    words.insert(word.to_vec(), Q::from_integer(1.into()));
    loop {
        let pending: Vec<(Vec<Generator>, Vec<Redex>)> =
            words.keys().map(|w| (w.clone(), redexes(order, w))).filter(|(_, r)| !r.is_empty()).collect();
        if pending.is_empty() {
            break;
        }
        let (w, rs) = &pending[rng.gen_range(0..pending.len())];
        let redex = rs[rng.gen_range(0..rs.len())];
        let c = words.remove(w).expect("pending word present");
        match redex {
            Redex::Central(i) => {
                let Generator::K(k) = w[i] else { unreachable!() };
                let mut w2 = w.clone();
                w2.remove(i);
                add(&mut words, w2, c * charge.get(k));
            }
            Redex::TrailingPositive => {}
            Redex::Swap(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                add(&mut words, swapped, c.clone());
                for (g, cg) in bracket_gen(w[i], w[i + 1]).terms() {
                    let mut w2 = w[..i].to_vec();
                    w2.push(*g);
                    w2.extend_from_slice(&w[i + 2..]);
                    add(&mut words, w2, &c * cg);
                }
            }
        }
    }
    words
        .into_iter()
        .map(|(w, c)| {
            let t = w.iter().filter(|g| matches!(g, Generator::T(_))).map(|g| -g.degree()).collect();
            let e = w.iter().filter(|g| matches!(g, Generator::E(_))).map(|g| -g.degree()).collect();
            (Monomial::from_sorted(t, e), c)
        })
        .collect()
}
