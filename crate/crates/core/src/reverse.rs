//! From a polynomial system with finite coefficients to implicational
//! formulas whose η-long proof counts are its least solution.
//!
//! Each variable `p` gets a fresh atom `Op`. A monomial `x₁^α₁ ⋯ xₙ^αₙ` of
//! the equation for `q` becomes the premise `O₁ → ⋯ (α₁ times) → Oₙ → ⋯ →
//! Oq`, repeated once per unit of its coefficient. Every formula `A_p`
//! assumes all premises of all equations and concludes `Op`, so a proof of
//! `Op` picks a premise for a monomial of `p` and proves its arguments from
//! the same premises.

use crate::extnat::ExtNat;
use crate::formula::Formula;
use crate::poly::Pse;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReverseOutput {
    /// `O1 … On`, one per variable.
    pub atoms: Vec<String>,
    /// One formula per variable, in variable order.
    pub formulas: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReverseError {
    #[error("equation for `{0}` has an infinite coefficient")]
    InfiniteCoefficient(String),
    #[error("equation for `{0}` has a coefficient too large to expand: {1}")]
    CoefficientTooLarge(String, ExtNat),
}

/// Largest coefficient expanded into copies of a premise.
const MAX_COPIES: u64 = 1 << 16;

pub fn formulae_of(s: &Pse) -> Result<ReverseOutput, ReverseError> {
    let atoms: Vec<String> = (1..=s.len()).map(|i| format!("O{i}")).collect();
    let atom = |x: usize| Formula::atom(&atoms[x]);
    let mut premises = Vec::new();
    for (q, p) in s.equations().iter().enumerate() {
        for (c, m) in p.terms() {
            let copies = match c {
                ExtNat::Omega => return Err(ReverseError::InfiniteCoefficient(s.name(q).to_string())),
                c => c
                    .to_u64()
                    .filter(|&n| n <= MAX_COPIES)
                    .ok_or_else(|| ReverseError::CoefficientTooLarge(s.name(q).to_string(), c.clone()))?,
            };
            let args: Vec<Formula> = m
                .powers()
                .iter()
                .flat_map(|&(x, e)| std::iter::repeat(atom(x)).take(e as usize))
                .collect();
            let t = Formula::curried(args, atom(q));
            premises.extend(std::iter::repeat_n(t, copies as usize));
        }
    }
    let formulas = (0..s.len())
        .map(|p| Formula::curried(premises.iter().cloned(), atom(p)))
        .collect();
    Ok(ReverseOutput { atoms, formulas })
}
