//! Verma modules `M(c, ⪯)` in PBW normal form.
//!
//! A vector is a finite combination of monomials
//! `t^{-α_1} ⋯ t^{-α_m} E(-β_1) ⋯ E(-β_n) v` with `0 ≺ α_1 ⪯ ⋯ ⪯ α_m` and
//! `0 ≺ β_1 ⪯ ⋯ ⪯ β_n`. Only the positive exponents are stored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{bracket_gen, Generator, LieElement};
use crate::error::{Error, Result};
use crate::orders::{det2, Order, Z2};
use crate::rational::{format_q, q, Q};

/// Central charge `c = (c1, c2, c3, c4)`: `K_i` acts on `v` by `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge(pub [Q; 4]);

impl Charge {
    pub fn new(c1: Q, c2: Q, c3: Q, c4: Q) -> Self {
        Charge([c1, c2, c3, c4])
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Charge(c.map(q))
    }

    pub fn get(&self, i: u8) -> &Q {
        &self.0[(i - 1) as usize]
    }

    /// Eigenvalue of `h(α) = α.x K1 + α.y K2` on `v`.
    pub fn h(&self, a: Z2) -> Q {
        q(a.x) * &self.0[0] + q(a.y) * &self.0[1]
    }

    /// Eigenvalue of `f(α) = α.x K3 + α.y K4` on `v`.
    pub fn f(&self, a: Z2) -> Q {
        q(a.x) * &self.0[2] + q(a.y) * &self.0[3]
    }
}

/// A normal-ordered PBW monomial applied to `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    t: Vec<Z2>,
    e: Vec<Z2>,
}

impl Monomial {
    /// The highest weight vector itself.
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Sorts both blocks; all exponents must be positive.
    pub fn new(order: &Order, mut t: Vec<Z2>, mut e: Vec<Z2>) -> Result<Self> {
        if let Some(bad) = t.iter().chain(&e).find(|a| !order.is_positive(**a)) {
            return Err(Error::Invalid(format!("monomial exponent {bad} is not positive")));
        }
        order.sort(&mut t);
        order.sort(&mut e);
        Ok(Monomial { t, e })
    }

    pub(crate) fn from_sorted(t: Vec<Z2>, e: Vec<Z2>) -> Self {
        Monomial { t, e }
    }

    pub fn t_part(&self) -> &[Z2] {
        &self.t
    }

    pub fn e_part(&self) -> &[Z2] {
        &self.e
    }

    pub fn is_vacuum(&self) -> bool {
        self.t.is_empty() && self.e.is_empty()
    }

    pub fn len(&self) -> usize {
        self.t.len() + self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> Z2 {
        let mut s = Z2::ZERO;
        for a in self.t.iter().chain(&self.e) {
            s += *a;
        }
        -s
    }

    /// The monomial as a word of negative generators, left to right.
    pub fn word(&self) -> Vec<Generator> {
        self.t.iter().map(|a| Generator::T(-*a)).chain(self.e.iter().map(|b| Generator::E(-*b))).collect()
    }

    fn split_first(&self) -> Option<(Generator, Monomial)> {
        if let Some((a, rest)) = self.t.split_first() {
            Some((Generator::T(-*a), Monomial { t: rest.to_vec(), e: self.e.clone() }))
        } else {
            self.e.split_first().map(|(b, rest)| (Generator::E(-*b), Monomial { t: vec![], e: rest.to_vec() }))
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.t {
            write!(f, "t^-{a} ")?;
        }
        for b in &self.e {
            write!(f, "E-{b} ")?;
        }
        write!(f, "v")
    }
}

/// A finite combination of monomials, without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    terms: BTreeMap<Monomial, Q>,
}

impl Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::from_monomial(Monomial::vacuum())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(Q::one(), m)
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut v = Self::zero();
        v.add_term(c, m);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of `v` itself.
    pub fn vacuum_coeff(&self) -> Q {
        self.coeff(&Monomial::vacuum())
    }

    /// `Some(λ)` when the vector equals `λ v` (including λ = 0).
    pub fn as_vacuum_multiple(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::vacuum()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, c: Q, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(x * c, m.clone());
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(self, c);
        out
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<Z2> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn grade(&self) -> BTreeMap<Z2, Vector> {
        let mut out: BTreeMap<Z2, Vector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(c.clone(), m.clone());
        }
        out
    }
}

impl FromIterator<(Monomial, Q)> for Vector {
    fn from_iter<I: IntoIterator<Item = (Monomial, Q)>>(iter: I) -> Self {
        let mut v = Vector::zero();
        for (m, c) in iter {
            v.add_term(c, m);
        }
        v
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({}) {}", format_q(c), m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The module `M(c, ⪯)`: an order and a central charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verma {
    order: Order,
    charge: Charge,
}

impl Verma {
    pub fn new(order: Order, charge: Charge) -> Self {
        Verma { order, charge }
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn charge(&self) -> &Charge {
        &self.charge
    }

    /// Builds the vector of a single monomial from unsorted exponents.
    pub fn monomial(&self, t: &[Z2], e: &[Z2]) -> Result<Vector> {
        Ok(Vector::from_monomial(Monomial::new(&self.order, t.to_vec(), e.to_vec())?))
    }

    /// Left action of a generator.
    pub fn act(&self, g: Generator, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.act_mono(g, m), c);
        }
        out
    }

    /// Left action of a Lie element.
    pub fn act_elem(&self, x: &LieElement, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.act(*g, v), c);
        }
        out
    }

    /// Applies `word[0]` first, then `word[1]`, and so on.
    pub fn apply_sequence(&self, word: &[Generator], v: &Vector) -> Vector {
        let mut cur = v.clone();
        for g in word {
            if cur.is_zero() {
                break;
            }
            cur = self.act(*g, &cur);
        }
        cur
    }

    /// `word · v` for an arbitrary word, read as an operator product
    /// (the rightmost letter acts first).
    pub fn normal_order(&self, word: &[Generator]) -> Vector {
        let mut cur = Vector::vacuum();
        for g in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.act(*g, &cur);
        }
        cur
    }

    pub fn act_mono(&self, g: Generator, m: &Monomial) -> Vector {
        if let Generator::K(i) = g {
            return Vector::term(self.charge.get(i).clone(), m.clone());
        }
        let d = g.degree();
        if self.order.is_positive(-d) {
            return self.mul_negative(g, m);
        }
        // positive: g X R = X (g R) + [g, X] R, and g v = 0
        let Some((x, rest)) = m.split_first() else {
            return Vector::zero();
        };
        let mut out = Vector::zero();
        let inner = self.act_mono(g, &rest);
        for (m2, c) in inner.terms() {
            out.add_scaled(&self.mul_negative(x, m2), c);
        }
        for (b, c) in bracket_gen(g, x).terms() {
            out.add_scaled(&self.act_mono(*b, &rest), c);
        }
        out
    }

    // Left multiplication by a negative generator.
    fn mul_negative(&self, g: Generator, m: &Monomial) -> Vector {
        match g {
            Generator::T(a) => {
                let mut t = m.t.clone();
                insert_sorted(&self.order, &mut t, -a);
                Vector::from_monomial(Monomial { t, e: m.e.clone() })
            }
            Generator::E(b) => {
                let beta = -b;
                let mut out = Vector::zero();
                // E(-β) t^{-α} = t^{-α} E(-β) - det2(β, α) t^{-(α+β)}
                for (i, a) in m.t.iter().enumerate() {
                    let c = det2(beta, *a);
                    if c == 0 {
                        continue;
                    }
                    let mut t = m.t.clone();
                    t.remove(i);
                    insert_sorted(&self.order, &mut t, *a + beta);
                    out.add_term(q(-c), Monomial { t, e: m.e.clone() });
                }
                let le = |x: Z2, y: Z2| self.order.le(x, y);
                for (e, c) in insert_e(&le, beta, &m.e) {
                    out.add_term(c, Monomial { t: m.t.clone(), e });
                }
                out
            }
            Generator::K(_) => unreachable!("central generators are handled by act_mono"),
        }
    }

    /// Truncated basis of the graded piece of the given degree: every normal
    /// monomial with exponents in `positive_window(window)` and at most
    /// `maxlen` factors.
    pub fn enumerate_basis(&self, degree: Z2, window: i64, maxlen: usize) -> Result<Vec<Monomial>> {
        enumerate_basis(&self.order, degree, window, maxlen)
    }
}

fn insert_sorted(order: &Order, v: &mut Vec<Z2>, a: Z2) {
    let pos = v.partition_point(|x| order.le(*x, a));
    v.insert(pos, a);
}

/// Normal-orders `E(-x) E(-l_0) E(-l_1) ⋯` for a sorted list `l` under the
/// total order `le`, returning E-lists sorted under `le`.
///
/// Negative E's close among themselves, so no t-factors or central terms arise.
pub(crate) fn insert_e<F: Fn(Z2, Z2) -> bool>(le: &F, x: Z2, list: &[Z2]) -> BTreeMap<Vec<Z2>, Q> {
    let mut out = BTreeMap::new();
    insert_e_into(le, x, list, &Q::one(), &mut out);
    out
}

fn insert_e_into<F: Fn(Z2, Z2) -> bool>(le: &F, x: Z2, list: &[Z2], coeff: &Q, out: &mut BTreeMap<Vec<Z2>, Q>) {
    if list.is_empty() || le(x, list[0]) {
        let mut v = Vec::with_capacity(list.len() + 1);
        v.push(x);
        v.extend_from_slice(list);
        add_to(out, v, coeff.clone());
        return;
    }
    let head = list[0];
    let rest = &list[1..];
    // E(-x) E(-h) = E(-h) E(-x) + det2(h, x) E(-(x+h))
    let mut inner = BTreeMap::new();
    insert_e_into(le, x, rest, &Q::one(), &mut inner);
    for (l, c) in inner {
        insert_e_into(le, head, &l, &(coeff * c), out);
    }
    let d = det2(head, x);
    if d != 0 {
        insert_e_into(le, x + head, rest, &(coeff * q(d)), out);
    }
}

fn add_to(out: &mut BTreeMap<Vec<Z2>, Q>, key: Vec<Z2>, c: Q) {
    use std::collections::btree_map::Entry;
    match out.entry(key) {
        Entry::Vacant(slot) => {
            if !c.is_zero() {
                slot.insert(c);
            }
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// See [`Verma::enumerate_basis`].
pub fn enumerate_basis(order: &Order, degree: Z2, window: i64, maxlen: usize) -> Result<Vec<Monomial>> {
    if order.is_positive(degree) {
        return Err(Error::Precondition(format!("degree {degree} is positive")));
    }
    let items = order.positive_window(window);
    let mut out = Vec::new();
    let mut walker = Walker { order, items: &items, window, out: &mut out, t: vec![], e: vec![] };
    walker.t_phase(0, -degree, maxlen);
    Ok(out)
}

struct Walker<'a> {
    order: &'a Order,
    items: &'a [Z2],
    window: i64,
    out: &'a mut Vec<Monomial>,
    t: Vec<Z2>,
    e: Vec<Z2>,
}

impl Walker<'_> {
    fn feasible(&self, r: Z2, slots: usize) -> bool {
        r.is_zero() || (slots > 0 && self.order.is_positive(r) && r.norm_inf() <= slots as i64 * self.window)
    }

    fn t_phase(&mut self, start: usize, r: Z2, slots: usize) {
        if r.is_zero() {
            self.out.push(Monomial { t: self.t.clone(), e: self.e.clone() });
            return;
        }
        if !self.feasible(r, slots) {
            return;
        }
        self.e_phase(0, r, slots);
        for i in start..self.items.len() {
            let p = self.items[i];
            if self.order.lt(r, p) {
                break;
            }
            if !self.feasible(r - p, slots - 1) {
                continue;
            }
            self.t.push(p);
            self.t_phase(i, r - p, slots - 1);
            self.t.pop();
        }
    }

    fn e_phase(&mut self, start: usize, r: Z2, slots: usize) {
        if r.is_zero() {
            self.out.push(Monomial { t: self.t.clone(), e: self.e.clone() });
            return;
        }
        for i in start..self.items.len() {
            let p = self.items[i];
            if self.order.lt(r, p) {
                break;
            }
            if !self.feasible(r - p, slots - 1) {
                continue;
            }
            self.e.push(p);
            self.e_phase(i, r - p, slots - 1);
            self.e.pop();
        }
    }
}
