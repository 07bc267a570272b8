//! Compatible total orders on the lattice Z².
//!
//! Two families are supported. A *dense* order compares `a` and `b` by the
//! sign of `(a - b).x + θ (a - b).y` for an irrational quadratic
//! `θ = u + v√d`; a *discrete* order maps `a - b` through a unimodular matrix
//! and compares the image lexicographically, second coordinate first.
//! Everything is decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// A point of the grading lattice Z².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Z2 {
    pub x: i64,
    pub y: i64,
}

impl Z2 {
    pub const ZERO: Z2 = Z2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Z2 { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Largest absolute coordinate.
    pub fn norm_inf(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn gcd(self) -> i64 {
        self.x.gcd(&self.y)
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for Z2 {
    type Output = Z2;
    fn add(self, o: Z2) -> Z2 {
        Z2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Z2 {
    fn add_assign(&mut self, o: Z2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Z2 {
    type Output = Z2;
    fn sub(self, o: Z2) -> Z2 {
        Z2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Z2 {
    type Output = Z2;
    fn neg(self) -> Z2 {
        Z2::new(-self.x, -self.y)
    }
}

impl Mul<Z2> for i64 {
    type Output = Z2;
    fn mul(self, a: Z2) -> Z2 {
        Z2::new(self * a.x, self * a.y)
    }
}

/// `a.x * b.y - b.x * a.y`, the determinant with `a` in the upper slot.
///
/// This is the structure constant of the algebra: `[t^α, E(β)]` carries
/// `det2(β, α)`.
pub fn det2(a: Z2, b: Z2) -> i64 {
    a.x * b.y - b.x * a.y
}

/// The irrational slope `u + v√d` of a dense order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta {
    u: Q,
    v: Q,
    d: u64,
    // x + θy has the sign of x*scale + y*lin + y*irr*√d
    scale: BigInt,
    lin: BigInt,
    irr: BigInt,
    small: Option<(i128, i128, i128)>,
}

impl Theta {
    pub fn new(u: Q, v: Q, d: u64) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::Invalid("theta must be irrational (v = 0)".into()));
        }
        if d == 0 || is_square(d) {
            return Err(Error::Invalid(format!("theta must be irrational (d = {d} is a perfect square)")));
        }
        let scale = u.denom() * v.denom();
        let lin = u.numer() * v.denom();
        let irr = v.numer() * u.denom();
        let small = match (scale.to_i128(), lin.to_i128(), irr.to_i128()) {
            (Some(a), Some(b), Some(c)) if a.abs() < 1 << 40 && b.abs() < 1 << 40 && c.abs() < 1 << 40 => {
                Some((a, b, c))
            }
            _ => None,
        };
        Ok(Theta { u, v, d, scale, lin, irr, small })
    }

    /// θ = √2.
    pub fn sqrt2() -> Self {
        Theta::new(Q::zero(), crate::rational::one(), 2).expect("√2 is irrational")
    }

    pub fn u(&self) -> &Q {
        &self.u
    }
    pub fn v(&self) -> &Q {
        &self.v
    }
    pub fn d(&self) -> u64 {
        self.d
    }

    /// Sign of `a.x + θ a.y`; never zero for nonzero `a`.
    fn sign(&self, a: Z2) -> Ordering {
        if let Some((s, l, i)) = self.small {
            let (x, y) = (a.x as i128, a.y as i128);
            if x.abs() < 1 << 40 && y.abs() < 1 << 40 {
                let r = x * s + y * l;
                let t = y * i;
                if let Some(o) = sign_surd_i128(r, t, self.d as i128) {
                    return o;
                }
            }
        }
        let r = BigInt::from(a.x) * &self.scale + BigInt::from(a.y) * &self.lin;
        let t = BigInt::from(a.y) * &self.irr;
        sign_surd_big(&r, &t, self.d)
    }
}

fn is_square(d: u64) -> bool {
    let r = (d as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|k| k * k == d)
}

// Sign of r + t√d: same-sign shortcut, otherwise compare r² with d·t².
fn sign_surd_i128(r: i128, t: i128, d: i128) -> Option<Ordering> {
    let (sr, st) = (r.signum(), t.signum());
    if st == 0 {
        return Some(r.cmp(&0));
    }
    if sr == 0 || sr == st {
        return Some(if st > 0 { Ordering::Greater } else { Ordering::Less });
    }
    let r2 = r.checked_mul(r)?;
    let dt2 = t.checked_mul(t)?.checked_mul(d)?;
    // r and t have opposite signs: the larger magnitude wins
    Some(match r2.cmp(&dt2) {
        Ordering::Greater => r.cmp(&0),
        Ordering::Less => t.cmp(&0),
        Ordering::Equal => Ordering::Equal,
    })
}

fn sign_surd_big(r: &BigInt, t: &BigInt, d: u64) -> Ordering {
    let zero = BigInt::zero();
    if t.is_zero() {
        return r.cmp(&zero);
    }
    if r.is_zero() || r.is_positive() == t.is_positive() {
        return t.cmp(&zero);
    }
    let r2 = r * r;
    let dt2 = t * t * BigInt::from(d);
    match r2.cmp(&dt2) {
        Ordering::Greater => r.cmp(&zero),
        Ordering::Less => t.cmp(&zero),
        Ordering::Equal => Ordering::Equal,
    }
}

/// A 2×2 integer matrix of determinant ±1 together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unimodular {
    m: [[i64; 2]; 2],
    inv: [[i64; 2]; 2],
}

impl Unimodular {
    pub fn new(m: [[i64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det != 1 && det != -1 {
            return Err(Error::Invalid(format!("matrix determinant must be ±1, got {det}")));
        }
        let inv = [[det * m[1][1], -det * m[0][1]], [-det * m[1][0], det * m[0][0]]];
        Ok(Unimodular { m, inv })
    }

    pub fn identity() -> Self {
        Unimodular::new([[1, 0], [0, 1]]).unwrap()
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.m
    }

    fn apply(&self, a: Z2) -> Z2 {
        Z2::new(self.m[0][0] * a.x + self.m[0][1] * a.y, self.m[1][0] * a.x + self.m[1][1] * a.y)
    }

    fn apply_inv(&self, a: Z2) -> Z2 {
        Z2::new(self.inv[0][0] * a.x + self.inv[0][1] * a.y, self.inv[1][0] * a.x + self.inv[1][1] * a.y)
    }
}

/// A compatible total order on Z².
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // orders are built once and passed by reference
pub enum Order {
    Dense(Theta),
    Discrete(Unimodular),
}

impl Order {
    /// Dense order with θ = √2.
    pub fn sqrt2() -> Self {
        Order::Dense(Theta::sqrt2())
    }

    /// Discrete order with the identity matrix: ε = (1,0), ε′ = (0,1).
    pub fn lex() -> Self {
        Order::Discrete(Unimodular::identity())
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, Order::Dense(_))
    }

    /// Position of `a` relative to 0.
    pub fn sign(&self, a: Z2) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        match self {
            Order::Dense(theta) => theta.sign(a),
            Order::Discrete(m) => {
                let c = m.apply(a);
                (c.y, c.x).cmp(&(0, 0))
            }
        }
    }

    pub fn cmp(&self, a: Z2, b: Z2) -> Ordering {
        if a == b {
            Ordering::Equal
        } else {
            self.sign(a - b)
        }
    }

    pub fn is_positive(&self, a: Z2) -> bool {
        self.sign(a) == Ordering::Greater
    }

    pub fn lt(&self, a: Z2, b: Z2) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    pub fn le(&self, a: Z2, b: Z2) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }

    pub fn min(&self, a: Z2, b: Z2) -> Z2 {
        if self.le(a, b) {
            a
        } else {
            b
        }
    }

    pub fn max(&self, a: Z2, b: Z2) -> Z2 {
        if self.le(a, b) {
            b
        } else {
            a
        }
    }

    /// ⪯-minimum of a nonempty iterator.
    pub fn min_of<I: IntoIterator<Item = Z2>>(&self, it: I) -> Option<Z2> {
        it.into_iter().reduce(|a, b| self.min(a, b))
    }

    pub fn max_of<I: IntoIterator<Item = Z2>>(&self, it: I) -> Option<Z2> {
        it.into_iter().reduce(|a, b| self.max(a, b))
    }

    pub fn sort(&self, v: &mut [Z2]) {
        v.sort_by(|a, b| self.cmp(*a, *b));
    }

    fn unimodular(&self, what: &str) -> Result<&Unimodular> {
        match self {
            Order::Discrete(m) => Ok(m),
            Order::Dense(_) => Err(Error::Precondition(format!("{what} requires a discrete order"))),
        }
    }

    fn require_dense(&self, what: &str) -> Result<()> {
        if self.is_dense() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} requires a dense order")))
        }
    }

    /// The smallest positive element ε of a discrete order.
    pub fn epsilon(&self) -> Result<Z2> {
        Ok(self.unimodular("epsilon")?.apply_inv(Z2::new(1, 0)))
    }

    /// The positive element ε′ completing ε to a basis of Z².
    pub fn epsilon_prime(&self) -> Result<Z2> {
        Ok(self.unimodular("epsilon_prime")?.apply_inv(Z2::new(0, 1)))
    }

    /// Coordinates `(a[1], a[2])` with `a = a[1]ε + a[2]ε′`.
    pub fn basis_coords(&self, a: Z2) -> Result<(i64, i64)> {
        let c = self.unimodular("basis_coords")?.apply(a);
        Ok((c.x, c.y))
    }

    /// True when `a` lies on the line Zε. Always false for dense orders.
    pub fn on_epsilon_line(&self, a: Z2) -> bool {
        match self {
            Order::Discrete(m) => m.apply(a).y == 0,
            Order::Dense(_) => false,
        }
    }

    /// μ(a): the ⪯-least positive β with some positive multiple equal to `a`.
    pub fn mu(&self, a: Z2) -> Result<Z2> {
        if !self.is_positive(a) {
            return Err(Error::Precondition(format!("mu needs a positive element, got {a}")));
        }
        let g = a.gcd();
        Ok(Z2::new(a.x / g, a.y / g))
    }

    /// All positive γ with `max(|γ.x|, |γ.y|) <= w`, ascending.
    pub fn positive_window(&self, w: i64) -> Vec<Z2> {
        let mut out = Vec::with_capacity((2 * w as usize + 1).pow(2) / 2);
        for x in -w..=w {
            for y in -w..=w {
                let g = Z2::new(x, y);
                if self.is_positive(g) {
                    out.push(g);
                }
            }
        }
        self.sort(&mut out);
        out
    }

    /// Least `n >= 1` with `n·a ≻ b`.
    pub fn archimedean_n(&self, a: Z2, b: Z2) -> Result<i64> {
        self.require_dense("archimedean_n")?;
        if !self.is_positive(a) || !self.is_positive(b) {
            return Err(Error::Precondition("archimedean_n needs a ≻ 0 and b ≻ 0".into()));
        }
        let mut n = 1;
        let mut na = a;
        while !self.lt(b, na) {
            n += 1;
            na += a;
        }
        Ok(n)
    }

    /// Deterministic window scan: the ⪯-first positive element satisfying
    /// `pred` in the smallest window that contains one.
    ///
    /// Only the newly added ring is inspected at each radius, which gives the
    /// same answer as rescanning the full window.
    pub fn scan_positive<F: FnMut(Z2) -> bool>(&self, mut pred: F) -> Result<Z2> {
        for w in 1..=MAX_SCAN_WINDOW {
            let mut best: Option<Z2> = None;
            for g in ring(w) {
                if self.is_positive(g) && pred(g) {
                    best = Some(match best {
                        Some(b) => self.min(b, g),
                        None => g,
                    });
                }
            }
            if let Some(b) = best {
                return Ok(b);
            }
        }
        Err(Error::Budget(MAX_SCAN_WINDOW as usize))
    }

    /// γ with `a ≺ γ ≺ b` and `det2(b, γ) != 0`, found by window scan.
    ///
    /// `a` may be 0, in which case the interval is `(0, b)`.
    pub fn choose_between(&self, a: Z2, b: Z2) -> Result<Z2> {
        self.require_dense("choose_between")?;
        if self.sign(a) == Ordering::Less || !self.lt(a, b) {
            return Err(Error::Precondition(format!("choose_between needs 0 ⪯ {a} ≺ {b}")));
        }
        self.scan_positive(|g| self.lt(a, g) && self.lt(g, b) && det2(b, g) != 0)
    }

    /// γ with `0 ≺ γ ≺ bound` and `γ ∉ forbidden`, found by window scan.
    pub fn choose_small(&self, bound: Z2, forbidden: &[Z2]) -> Result<Z2> {
        self.choose_small_where(bound, |g| !forbidden.contains(&g))
    }

    /// Like [`Order::choose_small`] with an arbitrary admissibility test.
    pub fn choose_small_where<F: FnMut(Z2) -> bool>(&self, bound: Z2, mut ok: F) -> Result<Z2> {
        self.require_dense("choose_small")?;
        if !self.is_positive(bound) {
            return Err(Error::Precondition(format!("choose_small needs bound ≻ 0, got {bound}")));
        }
        self.scan_positive(|g| self.lt(g, bound) && ok(g))
    }

    /// Compares sequences right to left after padding the shorter one on the
    /// left with zeros.
    pub fn compare_sequences(&self, s: &[Z2], t: &[Z2]) -> Ordering {
        let n = s.len().max(t.len());
        for k in 0..n {
            let a = if k < s.len() { s[s.len() - 1 - k] } else { Z2::ZERO };
            let b = if k < t.len() { t[t.len() - 1 - k] } else { Z2::ZERO };
            match self.cmp(a, b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

const MAX_SCAN_WINDOW: i64 = 1 << 14;

/// Points with `max(|x|, |y|) == w`.
fn ring(w: i64) -> impl Iterator<Item = Z2> {
    (-w..=w).flat_map(move |x| {
        let edge = x == -w || x == w;
        let ys: Vec<i64> = if edge { (-w..=w).collect() } else { vec![-w, w] };
        ys.into_iter().map(move |y| Z2::new(x, y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use Ordering::*;

    fn z(x: i64, y: i64) -> Z2 {
        Z2::new(x, y)
    }

    #[test]
    fn dense_sign_rule() {
        let o = Order::sqrt2();
        assert_eq!(o.cmp(z(1, -1), Z2::ZERO), Less);
        assert_eq!(o.cmp(z(3, 2), z(3, 2)), Equal);
        // 3 - 2√2 > 0
        assert_eq!(o.sign(z(3, -2)), Greater);
        assert_eq!(o.sign(z(-3, 2)), Less);
        // 99 - 70√2 > 0, 99² = 9801 vs 2·70² = 9800
        assert_eq!(o.sign(z(99, -70)), Greater);
    }

    #[test]
    fn dense_with_rational_offset() {
        // θ = 1/2 + (1/3)√5 ≈ 1.245
        let o = Order::Dense(Theta::new(q_frac(1, 2), q_frac(1, 3), 5).unwrap());
        assert_eq!(o.sign(z(-1, 1)), Greater);
        assert_eq!(o.sign(z(-5, 4)), Less);
        assert_eq!(o.sign(z(-6, 5)), Greater);
    }

    #[test]
    fn theta_validation() {
        assert!(Theta::new(q(1), q(0), 2).is_err());
        assert!(Theta::new(q(0), q(1), 9).is_err());
        assert!(Theta::new(q(0), q(1), 0).is_err());
        assert!(Theta::new(q(0), q(1), 12).is_ok());
    }

    #[test]
    fn discrete_lex_rule() {
        let o = Order::lex();
        assert_eq!(o.cmp(z(0, 1), z(1, 0)), Greater);
        assert_eq!(o.cmp(z(5, 0), z(-7, 1)), Less);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(Order::lex().epsilon().unwrap(), z(1, 0));
        let swap = Order::Discrete(Unimodular::new([[0, 1], [1, 0]]).unwrap());
        assert_eq!(swap.epsilon().unwrap(), z(0, 1));
        assert_eq!(swap.epsilon_prime().unwrap(), z(1, 0));
        assert!(Order::sqrt2().is_dense());
        assert!(Order::sqrt2().epsilon().is_err());
        assert!(Unimodular::new([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn basis_coords_reconstruct() {
        let o = Order::Discrete(Unimodular::new([[2, 1], [1, 1]]).unwrap());
        let (e, ep) = (o.epsilon().unwrap(), o.epsilon_prime().unwrap());
        for a in [z(3, -4), z(0, 7), z(-2, 2)] {
            let (c1, c2) = o.basis_coords(a).unwrap();
            assert_eq!(c1 * e + c2 * ep, a);
        }
        assert!(o.is_positive(ep));
    }

    #[test]
    fn det2_examples() {
        assert_eq!(det2(z(-1, 0), z(1, 0)), 0);
        assert_eq!(det2(z(0, 1), z(1, 0)), -1);
        assert_eq!(det2(z(4, -3), z(4, -3)), 0);
    }

    #[test]
    fn mu_examples() {
        let o = Order::lex();
        assert_eq!(o.mu(z(4, 6)).unwrap(), z(2, 3));
        assert_eq!(o.mu(z(1, 0)).unwrap(), z(1, 0));
        assert_eq!(o.mu(z(3, 0)).unwrap(), z(1, 0));
        assert!(o.mu(z(-3, 0)).is_err());
        assert!(o.mu(Z2::ZERO).is_err());
    }

    #[test]
    fn window_examples() {
        let lex = Order::lex();
        assert_eq!(lex.positive_window(1), vec![z(1, 0), z(-1, 1), z(0, 1), z(1, 1)]);
        assert!(lex.positive_window(0).is_empty());
        // 1 - √2 < 0 drops (1,-1); ascending: √2-1 < 1 < √2 < 1+√2
        assert_eq!(Order::sqrt2().positive_window(1), vec![z(-1, 1), z(1, 0), z(0, 1), z(1, 1)]);
    }

    #[test]
    fn archimedean_examples() {
        let o = Order::sqrt2();
        assert_eq!(o.archimedean_n(z(0, 1), z(1, 0)).unwrap(), 1);
        assert_eq!(o.archimedean_n(z(2, 1), z(2, 1)).unwrap(), 2);
        assert_eq!(o.archimedean_n(z(-1, 1), z(3, 0)).unwrap(), 8);
        assert!(Order::lex().archimedean_n(z(1, 0), z(0, 1)).is_err());
    }

    #[test]
    fn choose_between_examples() {
        let o = Order::sqrt2();
        for (a, b) in [(z(1, 0), z(0, 1)), (z(1, 1), z(3, 3)), (Z2::ZERO, z(1, 0))] {
            let g = o.choose_between(a, b).unwrap();
            assert_eq!(o.cmp(g, a), Greater);
            assert_eq!(o.cmp(b, g), Greater);
            assert_ne!(det2(b, g), 0);
            if a == z(1, 1) {
                assert_ne!(g, z(2, 2));
            }
        }
        assert!(o.choose_between(z(0, 1), z(1, 0)).is_err());
        assert!(Order::lex().choose_between(z(1, 0), z(0, 1)).is_err());
    }

    #[test]
    fn choose_small_respects_forbidden() {
        let o = Order::sqrt2();
        let first = o.choose_small(z(1, 0), &[]).unwrap();
        assert!(o.is_positive(first) && o.lt(first, z(1, 0)));
        let second = o.choose_small(z(1, 0), &[first]).unwrap();
        assert_ne!(first, second);
        assert!(o.is_positive(second) && o.lt(second, z(1, 0)));
    }

    #[test]
    fn sequence_examples() {
        let o = Order::lex();
        assert_eq!(o.compare_sequences(&[z(1, 0)], &[z(1, 0)]), Equal);
        assert_eq!(o.compare_sequences(&[z(1, 0), z(0, 1)], &[z(0, 1), z(0, 1)]), Less);
        assert_eq!(o.compare_sequences(&[z(0, 1)], &[z(1, 0), z(0, 1)]), Less);
        assert_eq!(o.compare_sequences(&[], &[]), Equal);
    }

    #[test]
    fn ring_counts() {
        assert_eq!(ring(1).count(), 8);
        assert_eq!(ring(3).count(), 24);
        assert!(ring(2).all(|g| g.norm_inf() == 2));
    }
}
