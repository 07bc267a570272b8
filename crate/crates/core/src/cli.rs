//! The `vermactl` command set.
//!
//! Exit codes: 0 success, 1 verification or suite failure, 2 invalid input,
//! 3 refused operation (criterion or precondition).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::checks::{self, CheckConfig, Suite};
use crate::error::{Error, Result};
use crate::io::{
    from_json, lie_from_wire, to_canonical_json, CertificateWire, LieTermWire, OrderWire, VectorFile, WhittakerWire,
};
use crate::orders::{Order, Z2};
use crate::rational::parse_q;
use crate::reduction::{irreducible, reduce_to_highest, verify_certificate};
use crate::submodules::{height, prop37_member, prop38_member, Variant, WhittakerParams};
use crate::verma::{Charge, Vector, Verma};

#[derive(Debug, Parser)]
#[command(name = "vermactl", version, about = "Rank two Heisenberg-Virasoro Verma modules")]
pub struct Cli {
    /// Order as inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Central charge as c1,c2,c3,c4 (rationals p or p/q).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub charge: Option<String>,
    #[arg(long, global = true, default_value_t = 6)]
    pub window: i64,
    #[arg(long, global = true, default_value_t = 5)]
    pub maxlen: usize,
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input vector file.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide irreducibility of M(c, order).
    Criterion,
    /// Apply a Lie element to the input vector.
    Act {
        /// Lie element as inline JSON or a path.
        #[arg(long)]
        elem: String,
    },
    /// Produce a cyclicity certificate for the input vector.
    Certify,
    /// Replay a certificate against the input vector.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run a seeded property suite.
    Check { suite: String },
    /// List the truncated basis of one graded piece.
    Enumerate {
        /// Degree as a,b.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Test membership in a maximal graded submodule.
    Member {
        variant: String,
        /// Sequence parameters (discrete variants), inline JSON or a path.
        #[arg(long)]
        params: Option<String>,
    },
}

/// What a command produced: JSON text and the exit code.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Invalid(_) => 2,
        Error::Precondition(_) | Error::Criterion(_) => 3,
        Error::DigestMismatch | Error::Internal(_) | Error::Budget(_) => 1,
    }
}

fn inline_or_file(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(s.to_string())
    } else {
        read(Path::new(s))
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))
}

fn parse_order(cli: &Cli) -> Result<Order> {
    let s = cli.order.as_deref().ok_or_else(|| Error::Invalid("--order is required".into()))?;
    from_json::<OrderWire>(&inline_or_file(s)?)?.to_order()
}

fn parse_charge(cli: &Cli) -> Result<Charge> {
    let Some(s) = cli.charge.as_deref() else {
        return Ok(Charge::from_ints([0; 4]));
    };
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("--charge needs four values, got {s:?}")));
    }
    Ok(Charge::new(parse_q(parts[0])?, parse_q(parts[1])?, parse_q(parts[2])?, parse_q(parts[3])?))
}

fn parse_z2(s: &str) -> Result<Z2> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let n = |x: &str| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?}")));
    match parts.as_slice() {
        [a, b] => Ok(Z2::new(n(a)?, n(b)?)),
        _ => Err(Error::Parse(format!("expected a,b, got {s:?}"))),
    }
}

fn read_vector(cli: &Cli) -> Result<(Verma, Vector)> {
    let p = cli.input.as_deref().ok_or_else(|| Error::Invalid("--in is required".into()))?;
    from_json::<VectorFile>(&read(p)?)?.decode()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Criterion => {
            let order = parse_order(cli)?;
            let charge = parse_charge(cli)?;
            let mut out = json!({
                "irreducible": irreducible(&order, &charge),
                "case": if order.is_dense() { "dense" } else { "discrete" },
            });
            if let Ok(e) = order.epsilon() {
                out["epsilon"] = json!([e.x, e.y]);
            }
            Ok(Outcome::ok(to_canonical_json(&out)))
        }
        Command::Act { elem } => {
            let x = lie_from_wire(&from_json::<Vec<LieTermWire>>(&inline_or_file(elem)?)?)?;
            let (m, v) = read_vector(cli)?;
            Ok(Outcome::ok(to_canonical_json(&VectorFile::new(&m, &m.act_elem(&x, &v)))))
        }
        Command::Certify => {
            let (m, v) = read_vector(cli)?;
            let cert = reduce_to_highest(&m, &v)?;
            Ok(Outcome::ok(to_canonical_json(&CertificateWire::from_certificate(&cert))))
        }
        Command::Verify { cert } => {
            let (m, v) = read_vector(cli)?;
            let cert = from_json::<CertificateWire>(&read(cert)?)?.to_certificate()?;
            let valid = match verify_certificate(&m, &v, &cert) {
                Ok(b) => b,
                Err(Error::DigestMismatch) => false,
                Err(e) => return Err(e),
            };
            Ok(Outcome { output: to_canonical_json(&json!({ "valid": valid })), code: if valid { 0 } else { 1 } })
        }
        Command::Check { suite } => {
            let suite: Suite = suite.parse()?;
            let cfg = CheckConfig { trials: cli.trials, seed: cli.seed, window: cli.window, maxlen: cli.maxlen };
            let report = checks::run(suite, &cfg);
            let code = if report.passed { 0 } else { 1 };
            Ok(Outcome { output: to_canonical_json(&report), code })
        }
        Command::Enumerate { degree } => {
            let order = parse_order(cli)?;
            let d = parse_z2(degree)?;
            let basis = crate::verma::enumerate_basis(&order, d, cli.window, cli.maxlen)?;
            let pair = |a: &Z2| [a.x, a.y];
            let monos: Vec<_> = basis
                .iter()
                .map(|m| {
                    json!({
                        "t": m.t_part().iter().map(pair).collect::<Vec<_>>(),
                        "e": m.e_part().iter().map(pair).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let out = json!({
                "count": basis.len(),
                "degree": [d.x, d.y],
                "window": cli.window,
                "maxlen": cli.maxlen,
                "monomials": monos,
            });
            Ok(Outcome::ok(to_canonical_json(&out)))
        }
        Command::Member { variant, params } => {
            let variant: Variant = variant.parse()?;
            let (m, v) = read_vector(cli)?;
            let out = match variant {
                Variant::Prop37_1 | Variant::Prop37_2 => {
                    json!({ "variant": variant.as_str(), "member": prop37_member(&m, &v, variant)? })
                }
                Variant::Prop38Ab | Variant::Prop38Xi => {
                    let mut p = match params {
                        Some(s) => WhittakerParams::from_wire(&from_json::<WhittakerWire>(&inline_or_file(s)?)?)?,
                        None => WhittakerParams::new(variant),
                    };
                    if p.variant != variant {
                        return Err(Error::Invalid(format!("params are for {}, not {variant}", p.variant)));
                    }
                    let window = *p.window.get_or_insert(cli.window);
                    let h = height(m.order(), &v)?.unwrap_or(0);
                    let h = u32::try_from(h).map_err(|_| Error::Precondition("negative height".into()))?;
                    json!({
                        "variant": variant.as_str(),
                        "member": prop38_member(&m, &v, &p, h, window)?,
                        "h": h,
                        "window": window,
                    })
                }
            };
            Ok(Outcome::ok(to_canonical_json(&out)))
        }
    }
}

/// Runs a command and writes its output, returning the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(o) => {
            let text = o.output + "\n";
            match &cli.out {
                Some(p) => {
                    if let Err(e) = fs::write(p, text) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
