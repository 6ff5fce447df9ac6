//! Counting normal, fair proofs of propositional formulas.

pub mod enumerator;
pub mod extnat;
pub mod formula;
pub mod lambda_mu;
pub mod mode;
pub mod poly;
pub mod pse_gen;
pub mod pse_text;
pub mod reverse;
pub mod solve;
mod universe;

pub use enumerator::{count_by_size, enumerate, SizeProfile};
pub use extnat::ExtNat;
pub use formula::Formula;
pub use mode::{Logic, Mode};
pub use poly::{Monomial, Polynomial, Pse, VarId};
pub use pse_gen::{build, count, decide, Generated};
pub use reverse::{formulae_of, ReverseOutput};
