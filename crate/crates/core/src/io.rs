//! JSON wire formats.
//!
//! Output is always canonical: object keys sorted, rationals as `"p/q"` in
//! lowest terms (or `"p"`), vector terms in a fixed monomial order. Re-reading
//! and re-writing any file produced here is byte-identical.
//!
//! The certificate digest is `"sha256:"` followed by the lowercase hex SHA-256
//! of the canonical vector JSON (order, charge and terms).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Generator, LieElement};
use crate::error::{Error, Result};
use crate::orders::{Order, Theta, Unimodular, Z2};
use crate::rational::{format_q, parse_q, Q};
use crate::reduction::Certificate;
use crate::verma::{Charge, Monomial, Vector, Verma};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum OrderWire {
    Dense { theta: ThetaWire },
    Discrete { matrix: [[i64; 2]; 2] },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ThetaWire {
    pub u: String,
    pub v: String,
    pub d: u64,
}

impl OrderWire {
    pub fn to_order(&self) -> Result<Order> {
        match self {
            OrderWire::Dense { theta } => {
                Ok(Order::Dense(Theta::new(parse_q(&theta.u)?, parse_q(&theta.v)?, theta.d)?))
            }
            OrderWire::Discrete { matrix } => Ok(Order::Discrete(Unimodular::new(*matrix)?)),
        }
    }

    pub fn from_order(o: &Order) -> Self {
        match o {
            Order::Dense(t) => {
                OrderWire::Dense { theta: ThetaWire { u: format_q(t.u()), v: format_q(t.v()), d: t.d() } }
            }
            Order::Discrete(m) => OrderWire::Discrete { matrix: m.matrix() },
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GenWire {
    #[serde(rename = "t")]
    T { alpha: [i64; 2] },
    #[serde(rename = "E")]
    E { alpha: [i64; 2] },
    #[serde(rename = "K")]
    K { i: u8 },
}

impl GenWire {
    pub fn to_gen(self) -> Result<Generator> {
        match self {
            GenWire::T { alpha } => Generator::t(z(alpha)),
            GenWire::E { alpha } => Generator::e(z(alpha)),
            GenWire::K { i } => Generator::k(i),
        }
    }

    pub fn from_gen(g: Generator) -> Self {
        match g {
            Generator::T(a) => GenWire::T { alpha: [a.x, a.y] },
            Generator::E(a) => GenWire::E { alpha: [a.x, a.y] },
            Generator::K(i) => GenWire::K { i },
        }
    }
}

fn z(a: [i64; 2]) -> Z2 {
    Z2::new(a[0], a[1])
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LieTermWire {
    pub coeff: String,
    pub gen: GenWire,
}

pub fn lie_from_wire(terms: &[LieTermWire]) -> Result<LieElement> {
    let mut x = LieElement::zero();
    for t in terms {
        x.add_term(parse_q(&t.coeff)?, t.gen.to_gen()?);
    }
    Ok(x)
}

pub fn lie_to_wire(x: &LieElement) -> Vec<LieTermWire> {
    x.terms().map(|(g, c)| LieTermWire { coeff: format_q(c), gen: GenWire::from_gen(*g) }).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MonoTermWire {
    pub coeff: String,
    #[serde(default)]
    pub t: Vec<[i64; 2]>,
    #[serde(default)]
    pub e: Vec<[i64; 2]>,
}

/// A module vector together with the module it lives in.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub order: OrderWire,
    pub charge: [String; 4],
    pub terms: Vec<MonoTermWire>,
}

pub fn charge_to_wire(c: &Charge) -> [String; 4] {
    c.0.clone().map(|x| format_q(&x))
}

pub fn charge_from_wire(c: &[String; 4]) -> Result<Charge> {
    Ok(Charge::new(parse_q(&c[0])?, parse_q(&c[1])?, parse_q(&c[2])?, parse_q(&c[3])?))
}

impl VectorFile {
    pub fn new(m: &Verma, v: &Vector) -> Self {
        let pair = |a: &Z2| [a.x, a.y];
        VectorFile {
            order: OrderWire::from_order(m.order()),
            charge: charge_to_wire(m.charge()),
            terms: v
                .terms()
                .map(|(mono, c)| MonoTermWire {
                    coeff: format_q(c),
                    t: mono.t_part().iter().map(pair).collect(),
                    e: mono.e_part().iter().map(pair).collect(),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<(Verma, Vector)> {
        let order = self.order.to_order()?;
        let charge = charge_from_wire(&self.charge)?;
        let mut v = Vector::zero();
        for t in &self.terms {
            let mono =
                Monomial::new(&order, t.t.iter().copied().map(z).collect(), t.e.iter().copied().map(z).collect())?;
            v.add_term(parse_q(&t.coeff)?, mono);
        }
        Ok((Verma::new(order, charge), v))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CertificateWire {
    pub word: Vec<GenWire>,
    pub scalar: String,
    pub input_digest: String,
}

impl CertificateWire {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateWire {
            word: c.word.iter().map(|g| GenWire::from_gen(*g)).collect(),
            scalar: format_q(&c.scalar),
            input_digest: c.input_digest.clone(),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        Ok(Certificate {
            word: self.word.iter().map(|g| g.to_gen()).collect::<Result<_>>()?,
            scalar: parse_q(&self.scalar)?,
            input_digest: self.input_digest.clone(),
        })
    }
}

/// Parameters for the discrete-order submodule tests.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WhittakerWire {
    pub variant: String,
    #[serde(default)]
    pub a: BTreeMap<String, String>,
    #[serde(default)]
    pub b: BTreeMap<String, String>,
    #[serde(default)]
    pub xi: BTreeMap<String, String>,
    #[serde(default)]
    pub window: Option<i64>,
}

/// Parses an index-keyed rational sequence like `{"1":"0","2":"1/2"}`.
pub fn parse_sequence(m: &BTreeMap<String, String>) -> Result<BTreeMap<u32, Q>> {
    m.iter()
        .map(|(k, v)| {
            let i: u32 = k.parse().map_err(|_| Error::Parse(format!("bad index {k:?}")))?;
            if i == 0 {
                return Err(Error::Parse("sequence indices start at 1".into()));
            }
            Ok((i, parse_q(v)?))
        })
        .collect()
}

/// Serializes through `serde_json::Value`, whose maps keep keys sorted.
pub fn to_canonical_json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("wire types always serialize");
    serde_json::to_string(&v).expect("values always serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Digest identifying a vector in a specific module.
pub fn digest(m: &Verma, v: &Vector) -> String {
    let bytes = to_canonical_json(&VectorFile::new(m, v));
    let hash = Sha256::digest(bytes.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
