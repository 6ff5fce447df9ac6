//! Hash-consed formulas and goals shared by the equation generator and the
//! enumerator.

use std::collections::HashMap;
use std::rc::Rc;

use crate::formula::{elim_paths, ElimStep, ElimTail, Formula};
use crate::lambda_mu::Goal;

pub(crate) type FId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Shape {
    Atom,
    Bottom,
    Implies(FId, FId),
    And(FId, FId),
    Or(FId, FId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Step {
    Arg(FId),
    Proj(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Tail {
    Star,
    Disj(FId, FId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Path {
    pub steps: Vec<Step>,
    pub tail: Tail,
}

#[derive(Default)]
pub(crate) struct Universe {
    formulas: Vec<Formula>,
    shapes: Vec<Shape>,
    index: HashMap<Formula, FId>,
    elims: HashMap<(FId, FId), Rc<[Path]>>,
}

impl Universe {
    pub fn new() -> Self {
        Universe::default()
    }

    pub fn intern(&mut self, f: &Formula) -> FId {
        if let Some(&id) = self.index.get(f) {
            return id;
        }
        let shape = match f {
            Formula::Atom(_) => Shape::Atom,
            Formula::Bottom => Shape::Bottom,
            Formula::Implies(a, b) => Shape::Implies(self.intern(a), self.intern(b)),
            Formula::And(a, b) => Shape::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Shape::Or(self.intern(a), self.intern(b)),
        };
        let id = self.formulas.len() as FId;
        self.formulas.push(f.clone());
        self.shapes.push(shape);
        self.index.insert(f.clone(), id);
        id
    }

    pub fn formula(&self, id: FId) -> &Formula {
        &self.formulas[id as usize]
    }

    pub fn shape(&self, id: FId) -> Shape {
        self.shapes[id as usize]
    }

    pub fn bottom(&mut self) -> FId {
        self.intern(&Formula::Bottom)
    }

    pub fn is_bottom(&self, id: FId) -> bool {
        self.shape(id) == Shape::Bottom
    }

    /// `C → ⊥`.
    pub fn is_negation(&self, id: FId) -> bool {
        matches!(self.shape(id), Shape::Implies(_, c) if self.is_bottom(c))
    }

    /// Main connective is `→` or `∧`.
    pub fn is_invertible(&self, id: FId) -> bool {
        matches!(self.shape(id), Shape::Implies(..) | Shape::And(..))
    }

    pub fn elim(&mut self, a: FId, b: FId) -> Rc<[Path]> {
        if let Some(p) = self.elims.get(&(a, b)) {
            return p.clone();
        }
        let paths = elim_paths(&self.formula(a).clone(), &self.formula(b).clone());
        let out: Rc<[Path]> = paths
            .into_iter()
            .map(|p| Path {
                steps: p
                    .steps
                    .iter()
                    .map(|s| match s {
                        ElimStep::Arg(c) => Step::Arg(self.intern(c)),
                        ElimStep::Proj(i) => Step::Proj(*i),
                    })
                    .collect(),
                tail: match &p.tail {
                    ElimTail::Star => Tail::Star,
                    ElimTail::Disj(d1, d2) => Tail::Disj(self.intern(d1), self.intern(d2)),
                },
            })
            .collect();
        self.elims.insert((a, b), out.clone());
        out
    }
}

/// A goal over interned formulas. `mus` holds `A` for each μ-name `α:¬A`.
/// Both contexts keep insertion order and multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct IGoal {
    pub concl: FId,
    pub lams: Vec<FId>,
    pub mus: Vec<FId>,
}

fn sorted(v: &[FId], dedup: bool) -> Vec<FId> {
    let mut s = v.to_vec();
    s.sort_unstable();
    if dedup {
        s.dedup();
    }
    s
}

/// Goal identity up to hypothesis order (`exact`) or also multiplicity
/// (`class`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct GoalKey {
    concl: FId,
    lams: Vec<FId>,
    mus: Vec<FId>,
}

impl IGoal {
    pub fn from_goal(u: &mut Universe, g: &Goal) -> IGoal {
        IGoal {
            concl: u.intern(&g.conclusion),
            lams: g.lambda_ctx.iter().map(|(_, f)| u.intern(f)).collect(),
            mus: g.mu_ctx.iter().map(|(_, f)| u.intern(f)).collect(),
        }
    }

    pub fn to_goal(&self, u: &Universe) -> Goal {
        Goal::with_hypotheses(
            self.lams.iter().map(|&f| u.formula(f).clone()),
            self.mus.iter().map(|&f| u.formula(f).clone()),
            u.formula(self.concl).clone(),
        )
    }

    pub fn class(&self) -> GoalKey {
        GoalKey { concl: self.concl, lams: sorted(&self.lams, true), mus: sorted(&self.mus, true) }
    }

    pub fn exact(&self) -> GoalKey {
        GoalKey { concl: self.concl, lams: sorted(&self.lams, false), mus: sorted(&self.mus, false) }
    }

    pub fn with_concl(&self, concl: FId) -> IGoal {
        IGoal { concl, lams: self.lams.clone(), mus: self.mus.clone() }
    }

    pub fn with_lam(&self, hyp: FId, concl: FId) -> IGoal {
        let mut lams = self.lams.clone();
        lams.push(hyp);
        IGoal { concl, lams, mus: self.mus.clone() }
    }

    pub fn with_mu(&self, hyp: FId, concl: FId) -> IGoal {
        let mut mus = self.mus.clone();
        mus.push(hyp);
        IGoal { concl, lams: self.lams.clone(), mus }
    }

    /// Drops the λ-hypothesis at position `i`, adds `hyp` and changes the
    /// conclusion: the branch goal of a case split on hypothesis `i`.
    pub fn case_branch(&self, i: usize, hyp: FId) -> IGoal {
        let mut lams = self.lams.clone();
        lams.remove(i);
        lams.push(hyp);
        IGoal { concl: self.concl, lams, mus: self.mus.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn interning_is_structural() {
        let mut u = Universe::new();
        let a = u.intern(&parse("a -> b").unwrap());
        let b = u.intern(&parse("(a -> b)").unwrap());
        assert_eq!(a, b);
        let Shape::Implies(x, y) = u.shape(a) else { panic!() };
        assert_eq!(u.formula(x), &parse("a").unwrap());
        assert_eq!(u.formula(y), &parse("b").unwrap());
        let n = u.intern(&parse("~a").unwrap());
        assert!(u.is_negation(n));
        assert!(u.is_invertible(n));
    }

    #[test]
    fn keys_erase_order_and_multiplicity() {
        let mut u = Universe::new();
        let g1 = IGoal::from_goal(&mut u, &Goal::with_hypotheses([parse("a").unwrap(), parse("a").unwrap(), parse("b").unwrap()], [], parse("c").unwrap()));
        let g2 = IGoal::from_goal(&mut u, &Goal::with_hypotheses([parse("b").unwrap(), parse("a").unwrap()], [], parse("c").unwrap()));
        assert_eq!(g1.class(), g2.class());
        assert_ne!(g1.exact(), g2.exact());
        let g3 = IGoal::from_goal(&mut u, &Goal::with_hypotheses([], [parse("a").unwrap(), parse("b").unwrap()], parse("c").unwrap()));
        assert_ne!(g2.class(), g3.class());
    }
}
