//! Size, fairness, η-long form and head-form classification of proofs.

use super::typing::{annotate, TypeError, TypedElim, TypedNode, TypedTerm};
use super::{reduce::is_normal, ElimArg, Goal, Term, Var};
use crate::formula::{elim_paths, ElimPath, ElimStep, ElimTail, Formula};
use crate::mode::Logic;

/// Size of a proof: variables have size 1, every constructor adds 1 to the
/// largest of its immediate subproofs. In a spine `(x e1 … en)` the
/// eliminators are the subproofs; a projection counts as 1 and a case
/// counts as its larger branch.
pub fn size(t: &Term) -> usize {
    match t {
        Term::Var(_) => 1,
        Term::Lam(_, b) | Term::Mu(_, b) | Term::Inj(_, b) | Term::Named(_, b) => size(b) + 1,
        Term::Pair(a, b) => size(a).max(size(b)) + 1,
        Term::App(..) => {
            let (head, args) = t.spine();
            let head_size = match head {
                Term::Var(_) => 0,
                // Only reachable for non-normal terms.
                other => size(other),
            };
            let arg_max = args
                .iter()
                .map(|e| match e {
                    ElimArg::Term(a) => size(a),
                    ElimArg::Proj(_) => 1,
                    ElimArg::Case(_, b1, _, b2) => size(b1).max(size(b2)),
                })
                .max()
                .unwrap_or(0);
            head_size.max(arg_max) + 1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FairnessViolation {
    #[error("term does not prove the goal: {0}")]
    IllTyped(#[from] TypeError),
    #[error("case split on x{} keeps that hypothesis inside a branch", .0 .0)]
    CaseKeepsHypothesis(Var),
    #[error("proof of bot by contradiction")]
    ContradictionOnBottom,
    #[error("proof of the negation `{0}` by contradiction")]
    ContradictionOnNegation(Formula),
    #[error("`{0}` proved by contradiction while already assuming its negation")]
    RepeatedContradiction(Formula),
}

/// Fairness of `t` as a proof of `g` under the rules of `logic`.
///
/// All logics require that a case split on a hypothesis `x` removes `x`
/// from both branches. Classically, no μ may prove `⊥` or `¬C`, and no μ may
/// prove `B` inside the scope of a μ-name declared for `¬B`. In
/// intuitionistic logic μ stands for ex falso and may not prove `⊥`.
pub fn check_fair(g: &Goal, t: &Term, logic: Logic) -> Result<(), FairnessViolation> {
    let typed = annotate(g, t)?;
    let mut scope: Vec<Formula> = g.mu_ctx.iter().map(|(_, f)| f.clone()).collect();
    fair_walk(&typed, logic, &mut scope)
}

/// Classical fairness.
pub fn is_fair(g: &Goal, t: &Term) -> bool {
    check_fair(g, t, Logic::Classical).is_ok()
}

pub fn is_fair_in(g: &Goal, t: &Term, logic: Logic) -> bool {
    check_fair(g, t, logic).is_ok()
}

fn spine_head(t: &TypedTerm) -> &TypedTerm {
    match &t.node {
        TypedNode::App(h, _) => spine_head(h),
        _ => t,
    }
}

fn fair_walk(t: &TypedTerm, logic: Logic, scope: &mut Vec<Formula>) -> Result<(), FairnessViolation> {
    match &t.node {
        TypedNode::Var(_) => Ok(()),
        TypedNode::Lam(_, _, b) | TypedNode::Inj(_, b) | TypedNode::Named(_, b) => {
            fair_walk(b, logic, scope)
        }
        TypedNode::Pair(a, b) => {
            fair_walk(a, logic, scope)?;
            fair_walk(b, logic, scope)
        }
        TypedNode::Mu(_, b) => {
            if t.ty == Formula::Bottom {
                return Err(FairnessViolation::ContradictionOnBottom);
            }
            if logic == Logic::Classical {
                if t.ty.negated().is_some() {
                    return Err(FairnessViolation::ContradictionOnNegation(t.ty.clone()));
                }
                if scope.contains(&t.ty) {
                    return Err(FairnessViolation::RepeatedContradiction(t.ty.clone()));
                }
            }
            scope.push(t.ty.clone());
            let r = fair_walk(b, logic, scope);
            scope.pop();
            r
        }
        TypedNode::App(h, e) => {
            fair_walk(h, logic, scope)?;
            match e {
                TypedElim::Term(a) => fair_walk(a, logic, scope),
                TypedElim::Proj(_) => Ok(()),
                TypedElim::Case(x1, _, b1, x2, _, b2) => {
                    if let TypedNode::Var(x) = spine_head(h).node {
                        let kept = (*x1 != x && b1.has_free_var(x)) || (*x2 != x && b2.has_free_var(x));
                        if kept {
                            return Err(FairnessViolation::CaseKeepsHypothesis(x));
                        }
                    }
                    fair_walk(b1, logic, scope)?;
                    fair_walk(b2, logic, scope)
                }
            }
        }
    }
}

/// Whether `t` only uses rules of `logic`: minimal proofs contain no μ and
/// no naming; intuitionistic proofs contain no naming, so every μ is a
/// vacuous ex falso.
pub fn respects_logic(g: &Goal, t: &Term, logic: Logic) -> bool {
    fn uses(t: &Term, mu: &mut bool, named: &mut bool) {
        match t {
            Term::Var(_) => {}
            Term::Mu(_, b) => {
                *mu = true;
                uses(b, mu, named);
            }
            Term::Named(_, b) => {
                *named = true;
                uses(b, mu, named);
            }
            Term::Lam(_, b) | Term::Inj(_, b) => uses(b, mu, named),
            Term::Pair(a, b) => {
                uses(a, mu, named);
                uses(b, mu, named);
            }
            Term::App(h, e) => {
                uses(h, mu, named);
                match &**e {
                    ElimArg::Term(a) => uses(a, mu, named),
                    ElimArg::Proj(_) => {}
                    ElimArg::Case(_, b1, _, b2) => {
                        uses(b1, mu, named);
                        uses(b2, mu, named);
                    }
                }
            }
        }
    }
    let (mut mu, mut named) = (false, false);
    uses(t, &mut mu, &mut named);
    match logic {
        Logic::Classical => true,
        Logic::Intuitionistic => !named && g.mu_ctx.is_empty(),
        Logic::Minimal => !mu && !named && g.mu_ctx.is_empty(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Applied {
    No,
    ToTerm,
    ToProj,
    ToCase,
}

/// η-long form: every subterm of arrow type is an abstraction or is applied
/// to a term, and every subterm of conjunctive type is a pair or is
/// projected. Ill-typed or non-normal terms are not η-long.
pub fn is_eta_long(g: &Goal, t: &Term) -> bool {
    if !is_normal(t) {
        return false;
    }
    match annotate(g, t) {
        Ok(typed) => eta_walk(&typed, Applied::No),
        Err(_) => false,
    }
}

fn eta_walk(t: &TypedTerm, applied: Applied) -> bool {
    let here = match (&t.ty, &t.node) {
        (Formula::Implies(..), TypedNode::Lam(..)) => true,
        (Formula::Implies(..), _) => applied == Applied::ToTerm,
        (Formula::And(..), TypedNode::Pair(..)) => true,
        (Formula::And(..), _) => applied == Applied::ToProj,
        _ => true,
    };
    here && match &t.node {
        TypedNode::Var(_) => true,
        TypedNode::Lam(_, _, b) | TypedNode::Inj(_, b) | TypedNode::Mu(_, b) | TypedNode::Named(_, b) => {
            eta_walk(b, Applied::No)
        }
        TypedNode::Pair(a, b) => eta_walk(a, Applied::No) && eta_walk(b, Applied::No),
        TypedNode::App(h, e) => {
            let how = match e {
                TypedElim::Term(_) => Applied::ToTerm,
                TypedElim::Proj(_) => Applied::ToProj,
                TypedElim::Case(..) => Applied::ToCase,
            };
            eta_walk(h, how)
                && match e {
                    TypedElim::Term(a) => eta_walk(a, Applied::No),
                    TypedElim::Proj(_) => true,
                    TypedElim::Case(_, _, b1, _, _, b2) => eta_walk(b1, Applied::No) && eta_walk(b2, Applied::No),
                }
        }
    }
}

/// The three shapes a normal proof can take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeadForm {
    /// `λx.t`, `μα.t`, `⟨t, u⟩` or `wᵢ t`.
    Intro,
    /// `(α t)` with the conclusion `⊥`.
    Named,
    /// `(x t₁ … tₙ)` following one elimination path of the head's type.
    Spine { head: Var, path: ElimPath },
}

/// Classifies a normal proof of `g` by its head form; `None` if it is
/// ill-typed or matches none of the forms.
pub fn classify(g: &Goal, t: &Term) -> Option<HeadForm> {
    let typed = annotate(g, t).ok()?;
    match &typed.node {
        TypedNode::Lam(..) | TypedNode::Mu(..) | TypedNode::Pair(..) | TypedNode::Inj(..) => {
            Some(HeadForm::Intro)
        }
        TypedNode::Named(..) => (typed.ty == Formula::Bottom).then_some(HeadForm::Named),
        TypedNode::Var(_) | TypedNode::App(..) => {
            let mut elims = Vec::new();
            let mut cur = &typed;
            while let TypedNode::App(h, e) = &cur.node {
                elims.push(e);
                cur = h;
            }
            elims.reverse();
            let TypedNode::Var(x) = cur.node else {
                return None;
            };
            let head_ty = &cur.ty;
            let mut steps = Vec::new();
            let mut tail = ElimTail::Star;
            for (i, e) in elims.iter().enumerate() {
                match e {
                    TypedElim::Term(a) => steps.push(ElimStep::Arg(a.ty.clone())),
                    TypedElim::Proj(k) => steps.push(ElimStep::Proj(*k)),
                    TypedElim::Case(_, d1, _, _, d2, _) => {
                        if i + 1 != elims.len() {
                            return None;
                        }
                        tail = ElimTail::Disj(d1.clone(), d2.clone());
                    }
                }
            }
            let path = ElimPath { steps, tail };
            elim_paths(head_ty, &typed.ty)
                .contains(&path)
                .then_some(HeadForm::Spine { head: x, path })
        }
    }
}
