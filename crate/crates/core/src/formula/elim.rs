//! The lists of subgoals obtained by eliminating a hypothesis `A` down to a
//! conclusion `B`.
//!
//! [`elim_paths`] keeps the full elimination path (which projections were
//! taken), which the term enumerator needs to build spines. [`elim`] forgets
//! the projections and returns only the formulae still to be proved.

use super::Formula;

/// One eliminator applied to the head of a spine.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElimStep {
    /// Modus ponens: the argument must prove this formula.
    Arg(Formula),
    /// Projection on the first (`1`) or second (`2`) conjunct.
    Proj(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElimTail {
    /// The spine ends exactly on the conclusion.
    Star,
    /// The spine ends on a disjunction that must be split by cases.
    Disj(Formula, Formula),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElimPath {
    pub steps: Vec<ElimStep>,
    pub tail: ElimTail,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElimList {
    pub prefix: Vec<Formula>,
    pub tail: ElimTail,
}

impl ElimPath {
    pub fn to_list(&self) -> ElimList {
        ElimList {
            prefix: self
                .steps
                .iter()
                .filter_map(|s| match s {
                    ElimStep::Arg(f) => Some(f.clone()),
                    ElimStep::Proj(_) => None,
                })
                .collect(),
            tail: self.tail.clone(),
        }
    }

    pub fn has_projection(&self) -> bool {
        self.steps.iter().any(|s| matches!(s, ElimStep::Proj(_)))
    }
}

/// All elimination paths from `a` to `b`, in the order: the `a = b` clause,
/// then left conjunct before right conjunct. Duplicates reached through
/// different projections are kept.
pub fn elim_paths(a: &Formula, b: &Formula) -> Vec<ElimPath> {
    let mut out = Vec::new();
    let mut steps = Vec::new();
    walk(a, b, &mut steps, &mut out);
    out
}

fn walk(a: &Formula, b: &Formula, steps: &mut Vec<ElimStep>, out: &mut Vec<ElimPath>) {
    if a == b {
        out.push(ElimPath {
            steps: steps.clone(),
            tail: ElimTail::Star,
        });
        return;
    }
    match a {
        Formula::Atom(_) | Formula::Bottom => {}
        Formula::Implies(c, d) => {
            steps.push(ElimStep::Arg((**c).clone()));
            walk(d, b, steps, out);
            steps.pop();
        }
        Formula::And(a1, a2) => {
            for (i, part) in [(1u8, a1), (2u8, a2)] {
                steps.push(ElimStep::Proj(i));
                walk(part, b, steps, out);
                steps.pop();
            }
        }
        Formula::Or(d1, d2) => out.push(ElimPath {
            steps: steps.clone(),
            tail: ElimTail::Disj((**d1).clone(), (**d2).clone()),
        }),
    }
}

/// `Elim(a, b)` as a sequence of lists (prefix of formulae to prove, tail).
pub fn elim(a: &Formula, b: &Formula) -> Vec<ElimList> {
    elim_paths(a, b).iter().map(ElimPath::to_list).collect()
}
