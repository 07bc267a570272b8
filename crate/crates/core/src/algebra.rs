//! The rank two Heisenberg-Virasoro algebra.
//!
//! Basis: `t^α`, `E(α)` for nonzero `α ∈ Z²`, and central `K1..K4`, with
//!
//! ```text
//! [t^α, t^β]  = 0
//! [t^α, E(β)] = det2(β, α) t^{α+β} + δ_{α+β,0} (α.x K1 + α.y K2)
//! [E(α), E(β)] = det2(β, α) E(α+β) + δ_{α+β,0} (α.x K3 + α.y K4)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::orders::{det2, Order, Z2};
use crate::rational::{format_q, q, Q};

/// A basis element of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    T(Z2),
    E(Z2),
    K(u8),
}

impl Generator {
    /// Checked constructor for `t^α`.
    pub fn t(alpha: Z2) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::Invalid("t^0 is not a generator".into()));
        }
        Ok(Generator::T(alpha))
    }

    /// Checked constructor for `E(α)`.
    pub fn e(alpha: Z2) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::Invalid("E(0) is not a generator".into()));
        }
        Ok(Generator::E(alpha))
    }

    pub fn k(i: u8) -> Result<Self> {
        if !(1..=4).contains(&i) {
            return Err(Error::Invalid(format!("central index must be 1..4, got {i}")));
        }
        Ok(Generator::K(i))
    }

    pub fn degree(self) -> Z2 {
        match self {
            Generator::T(a) | Generator::E(a) => a,
            Generator::K(_) => Z2::ZERO,
        }
    }

    pub fn is_central(self) -> bool {
        matches!(self, Generator::K(_))
    }

    /// In `L₊` for the given order.
    pub fn is_positive(self, order: &Order) -> bool {
        !self.is_central() && order.is_positive(self.degree())
    }

    /// In `L₋` for the given order.
    pub fn is_negative(self, order: &Order) -> bool {
        !self.is_central() && order.is_positive(-self.degree())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T(a) => write!(f, "t^{a}"),
            Generator::E(a) => write!(f, "E{a}"),
            Generator::K(i) => write!(f, "K{i}"),
        }
    }
}

/// A finite rational combination of generators, with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Q>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_gen(g: Generator) -> Self {
        Self::term(Q::one(), g)
    }

    pub fn term(c: Q, g: Generator) -> Self {
        let mut x = Self::zero();
        x.add_term(c, g);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: Generator) -> Q {
        self.terms.get(&g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, c: Q, g: Generator) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(c.clone(), *g);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LieElement { terms: self.terms.iter().map(|(g, x)| (*g, x * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// True when every term lies in the span of `{E(α), K3, K4}`.
    pub fn in_virasoro_like(&self) -> bool {
        self.terms.keys().all(|g| matches!(g, Generator::E(_) | Generator::K(3) | Generator::K(4)))
    }
}

impl From<Generator> for LieElement {
    fn from(g: Generator) -> Self {
        LieElement::from_gen(g)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{}·{}", format_q(c), g)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `h(α) = α.x K1 + α.y K2`.
pub fn h_of(alpha: Z2) -> LieElement {
    let mut out = LieElement::zero();
    out.add_term(q(alpha.x), Generator::K(1));
    out.add_term(q(alpha.y), Generator::K(2));
    out
}

/// `f(α) = α.x K3 + α.y K4`.
pub fn f_of(alpha: Z2) -> LieElement {
    let mut out = LieElement::zero();
    out.add_term(q(alpha.x), Generator::K(3));
    out.add_term(q(alpha.y), Generator::K(4));
    out
}

/// Bracket of two basis elements.
pub fn bracket_gen(a: Generator, b: Generator) -> LieElement {
    use Generator::*;
    match (a, b) {
        (K(_), _) | (_, K(_)) | (T(_), T(_)) => LieElement::zero(),
        (T(al), E(be)) => mixed(al, be),
        (E(al), T(be)) => mixed(be, al).neg(),
        (E(al), E(be)) => {
            let s = al + be;
            if s.is_zero() {
                debug_assert_eq!(det2(be, al), 0);
                f_of(al)
            } else {
                LieElement::term(q(det2(be, al)), E(s))
            }
        }
    }
}

// [t^α, E(β)]
fn mixed(al: Z2, be: Z2) -> LieElement {
    let s = al + be;
    if s.is_zero() {
        debug_assert_eq!(det2(be, al), 0);
        h_of(al)
    } else {
        LieElement::term(q(det2(be, al)), Generator::T(s))
    }
}

/// Bilinear extension of [`bracket_gen`].
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let c = ca * cb;
            for (g, cg) in bracket_gen(*a, *b).terms() {
                out.add_term(&c * cg, *g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn z(x: i64, y: i64) -> Z2 {
        Z2::new(x, y)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_gen(T(z(1, 0)), E(z(-1, 0))), LieElement::from_gen(K(1)));
        assert!(bracket_gen(T(z(1, 0)), T(z(2, 3))).is_zero());
        assert_eq!(bracket_gen(E(z(1, 2)), E(z(3, 4))), LieElement::term(q(2), E(z(4, 6))));
    }

    #[test]
    fn central_terms() {
        // [E(α), E(-α)] = f(α), [E(α), t^{-α}] = -h(-α) = h(α)
        assert_eq!(bracket_gen(E(z(2, -3)), E(z(-2, 3))), f_of(z(2, -3)));
        assert_eq!(bracket_gen(E(z(2, -3)), T(z(-2, 3))), h_of(z(2, -3)));
        assert!(bracket_gen(K(2), E(z(1, 1))).is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(E(z(2, -1)).degree(), z(2, -1));
        assert_eq!(K(3).degree(), Z2::ZERO);
        assert_eq!(T(z(0, 5)).degree(), z(0, 5));
    }

    #[test]
    fn constructors_reject_zero() {
        assert!(Generator::t(Z2::ZERO).is_err());
        assert!(Generator::e(Z2::ZERO).is_err());
        assert!(Generator::k(5).is_err());
        assert!(Generator::k(0).is_err());
    }

    #[test]
    fn sign_classes() {
        let o = Order::lex();
        assert!(T(z(1, 0)).is_positive(&o));
        assert!(E(z(0, -1)).is_negative(&o));
        assert!(!K(1).is_positive(&o) && !K(1).is_negative(&o));
    }
}
