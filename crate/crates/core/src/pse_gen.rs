//! Building the polynomial system whose least solution counts the normal,
//! fair proofs of a goal.
//!
//! Each variable stands for a goal. Its equation sums three polynomials:
//! proofs ending in an introduction rule, proofs by contradiction, and
//! proofs that eliminate a hypothesis. Subgoals are named by existing
//! variables when an equivalent goal lies below the current one, which
//! keeps the system finite.

use std::collections::HashMap;
use std::fmt;

use crate::extnat::ExtNat;
use crate::formula::Formula;
use crate::lambda_mu::Goal;
use crate::mode::{Logic, Mode};
use crate::poly::{Polynomial, Pse, VarId};
use crate::solve::{solve_bool, solve_min};
use crate::universe::{GoalKey, IGoal, Shape, Step, Tail, Universe};

/// Which earlier variables a subgoal may be named by.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Reuse {
    /// Any variable on the path from the root to the current variable,
    /// the current one included. Identical subgoals requested while
    /// processing one variable share a single fresh variable.
    #[default]
    Reflexive,
    /// Only variables strictly below the current one; every other request
    /// allocates a fresh variable.
    Strict,
}

/// Goal equivalence: same conclusion, and the same sets of λ-declared and
/// of μ-declared formulas, ignoring order and multiplicity.
pub fn equivalent(g: &Goal, h: &Goal) -> bool {
    let mut u = Universe::new();
    IGoal::from_goal(&mut u, g).class() == IGoal::from_goal(&mut u, h).class()
}

/// A generated system. Variable `0` is the root goal.
#[derive(Debug, Clone)]
pub struct Generated {
    pub pse: Pse,
    pub goals: Vec<Goal>,
    /// The variable whose equation first requested each variable.
    pub parents: Vec<Option<VarId>>,
}

impl Generated {
    pub fn root(&self) -> VarId {
        0
    }

    pub fn solve(&self) -> Vec<ExtNat> {
        solve_min(&self.pse)
    }

    /// Variables from the root down to `x`.
    pub fn chain(&self, x: VarId) -> Vec<VarId> {
        let mut out = vec![x];
        let mut cur = x;
        while let Some(p) = self.parents[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }
}

impl fmt::Display for Generated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, g) in self.goals.iter().enumerate() {
            writeln!(f, "{} : {}", self.pse.name(x), g)?;
        }
        write!(f, "{}", self.pse)
    }
}

struct VarInfo {
    goal: IGoal,
    /// Interned equivalence class of `goal`.
    class: u32,
    parent: Option<VarId>,
}

struct Gen<'u> {
    u: &'u mut Universe,
    mode: Mode,
    reuse: Reuse,
    vars: Vec<VarInfo>,
    classes: HashMap<GoalKey, u32>,
    step_cache: HashMap<GoalKey, VarId>,
}

impl Gen<'_> {
    fn class_of(&mut self, goal: &IGoal) -> u32 {
        let next = self.classes.len() as u32;
        *self.classes.entry(goal.class()).or_insert(next)
    }

    fn fresh(&mut self, goal: IGoal, parent: Option<VarId>) -> VarId {
        let class = self.class_of(&goal);
        self.vars.push(VarInfo { goal, class, parent });
        self.vars.len() - 1
    }

    fn variable_for(&mut self, current: VarId, h: IGoal) -> VarId {
        let class = self.class_of(&h);
        let mut cur = match self.reuse {
            Reuse::Reflexive => Some(current),
            Reuse::Strict => self.vars[current].parent,
        };
        let mut found = None;
        while let Some(v) = cur {
            if self.vars[v].class == class {
                found = Some(v);
            }
            cur = self.vars[v].parent;
        }
        if let Some(v) = found {
            return v;
        }
        if self.reuse == Reuse::Strict {
            return self.fresh(h, Some(current));
        }
        let exact = h.exact();
        if let Some(&v) = self.step_cache.get(&exact) {
            return v;
        }
        let v = self.fresh(h, Some(current));
        self.step_cache.insert(exact, v);
        v
    }

    fn var(&mut self, current: VarId, h: IGoal) -> Polynomial {
        Polynomial::var(self.variable_for(current, h))
    }

    fn intro(&mut self, current: VarId) -> Polynomial {
        let g = self.vars[current].goal.clone();
        match self.u.shape(g.concl) {
            Shape::Atom | Shape::Bottom => Polynomial::zero(),
            Shape::Implies(c, d) => self.var(current, g.with_lam(c, d)),
            Shape::And(b1, b2) => {
                let p1 = self.var(current, g.with_concl(b1));
                let p2 = self.var(current, g.with_concl(b2));
                p1.mul(&p2)
            }
            Shape::Or(b1, b2) => {
                let p1 = self.var(current, g.with_concl(b1));
                let p2 = self.var(current, g.with_concl(b2));
                p1.add(&p2)
            }
        }
    }

    fn contra(&mut self, current: VarId) -> Polynomial {
        let g = self.vars[current].goal.clone();
        let b = g.concl;
        if self.mode.eta_long && self.u.is_invertible(b) {
            return Polynomial::zero();
        }
        let bottom = self.u.bottom();
        match self.mode.logic {
            Logic::Minimal => Polynomial::zero(),
            Logic::Classical => {
                if self.u.is_bottom(b) || self.u.is_negation(b) || g.mus.contains(&b) {
                    Polynomial::zero()
                } else {
                    self.var(current, g.with_mu(b, bottom))
                }
            }
            Logic::Intuitionistic => {
                if self.u.is_bottom(b) {
                    Polynomial::zero()
                } else {
                    self.var(current, g.with_concl(bottom))
                }
            }
        }
    }

    fn elim(&mut self, current: VarId) -> Polynomial {
        let g = self.vars[current].goal.clone();
        let b = g.concl;
        if self.mode.eta_long && self.u.is_invertible(b) {
            return Polynomial::zero();
        }
        let mut total = Polynomial::zero();
        for (i, &a) in g.lams.iter().enumerate() {
            for path in self.u.elim(a, b).iter() {
                let mut r = Polynomial::one();
                for step in &path.steps {
                    if let Step::Arg(c) = *step {
                        r = r.mul(&self.var(current, g.with_concl(c)));
                    }
                }
                if let Tail::Disj(d1, d2) = path.tail {
                    r = r.mul(&self.var(current, g.case_branch(i, d1)));
                    r = r.mul(&self.var(current, g.case_branch(i, d2)));
                }
                total = total.add(&r);
            }
        }
        if self.u.is_bottom(b) {
            for &a in &g.mus {
                total = total.add(&self.var(current, g.with_concl(a)));
            }
        }
        total
    }

    fn equation(&mut self, current: VarId) -> Polynomial {
        self.step_cache.clear();
        let p = self.intro(current);
        let q = self.contra(current);
        let r = self.elim(current);
        p.add(&q).add(&r)
    }
}

/// The system would need more variables than allowed. Systems are trees
/// that only share goals along a root path, so their size can grow
/// exponentially with the number of disjunctions and negations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("the equation system needs more than {limit} variables")]
pub struct TooLarge {
    pub limit: usize,
}

/// Builds the system for `g` with the default reuse policy.
pub fn build(g: &Goal, mode: Mode) -> Generated {
    build_with(g, mode, Reuse::default())
}

pub fn build_with(g: &Goal, mode: Mode, reuse: Reuse) -> Generated {
    build_within(g, mode, reuse, usize::MAX).expect("no limit")
}

/// Like [`build_with`], but gives up once the system has more than `limit`
/// variables.
pub fn build_within(g: &Goal, mode: Mode, reuse: Reuse, limit: usize) -> Result<Generated, TooLarge> {
    let mut u = Universe::new();
    let root = IGoal::from_goal(&mut u, g);
    let (igoals, eqs, parents) = generate(&mut u, root, mode, reuse, limit)?;
    let names = (0..eqs.len()).map(|i| format!("n{i}")).collect();
    Ok(Generated {
        pse: Pse::new(names, eqs).expect("generated systems are closed"),
        goals: igoals.iter().map(|h| h.to_goal(&u)).collect(),
        parents,
    })
}

type Raw = (Vec<IGoal>, Vec<Polynomial>, Vec<Option<VarId>>);

fn generate(u: &mut Universe, root: IGoal, mode: Mode, reuse: Reuse, limit: usize) -> Result<Raw, TooLarge> {
    let mut gen = Gen { u, mode, reuse, vars: Vec::new(), classes: HashMap::new(), step_cache: HashMap::new() };
    gen.fresh(root, None);
    let mut eqs = Vec::new();
    while eqs.len() < gen.vars.len() {
        if gen.vars.len() > limit {
            return Err(TooLarge { limit });
        }
        let p = gen.equation(eqs.len());
        eqs.push(p);
    }
    let parents = gen.vars.iter().map(|v| v.parent).collect();
    Ok((gen.vars.into_iter().map(|v| v.goal).collect(), eqs, parents))
}


/// The number of normal, fair proofs of `g` in `mode`.
pub fn count_goal(g: &Goal, mode: Mode) -> ExtNat {
    build(g, mode).solve().swap_remove(0)
}

/// The number of normal, fair proofs of `⊢ f` in `mode`.
/// [`count_goal`] on a system of at most `limit` variables.
pub fn count_within(g: &Goal, mode: Mode, limit: usize) -> Result<ExtNat, TooLarge> {
    let sys = build_within(g, mode, Reuse::default(), limit)?;
    Ok(sys.solve()[sys.root()].clone())
}

pub fn count(f: &Formula, mode: Mode) -> ExtNat {
    count_goal(&Goal::closed(f.clone()), mode)
}

/// Provability of `g` in `mode`, from the Boolean reading of the system.
pub fn decide_goal(g: &Goal, mode: Mode) -> bool {
    solve_bool(&build(g, mode).pse)[0]
}

pub fn decide(f: &Formula, mode: Mode) -> bool {
    decide_goal(&Goal::closed(f.clone()), mode)
}
