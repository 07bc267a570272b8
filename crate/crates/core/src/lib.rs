//! Exact symbolic computation for the rank two Heisenberg-Virasoro algebra
//! and its Z²-graded Verma modules.
//!
//! * [`orders`]: compatible total orders on Z² (dense and discrete families).
//! * [`algebra`]: generators and the Lie bracket.
//! * [`verma`]: PBW normal form and the module action.
//! * [`rewrite`]: an independent word-rewriting normalizer with random schedules.
//! * [`reduction`]: irreducibility criteria and cyclicity certificates.
//! * [`submodules`]: membership in the maximal graded submodules.
//! * [`io`]: JSON wire formats.
//! * [`checks`]: seeded randomized property suites.
//! * [`cli`]: the `vermactl` command set.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod io;
pub mod orders;
pub mod rational;
pub mod reduction;
pub mod rewrite;
pub mod submodules;
pub mod verma;

pub use algebra::{bracket, bracket_gen, Generator, LieElement};
pub use error::{Error, Result};
pub use orders::{det2, Order, Theta, Unimodular, Z2};
pub use rational::Q;
pub use verma::{Charge, Monomial, Vector, Verma};
