//! λμ proof terms for propositional logic with `→`, `∧`, `∨` and `⊥`.
//!
//! λ-variables and μ-names live in disjoint namespaces ([`Var`] and
//! [`MuName`]). Both are plain numeric identifiers; the concrete syntax
//! prints them as `x<n>` and `a<n>`.

mod checks;
mod reduce;
mod syntax;
mod typing;

use std::collections::HashMap;
use std::fmt;

use crate::formula::Formula;

pub use checks::{
    check_fair, classify, is_eta_long, is_fair, is_fair_in, respects_logic, size,
    FairnessViolation, HeadForm,
};
pub use reduce::{is_normal, normalize, reduce_step};
pub use syntax::{parse_term, TermEnv, TermParseError};
pub use typing::{annotate, typecheck, TypeError, TypedElim, TypedNode, TypedTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MuName(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Lam(Var, Box<Term>),
    App(Box<Term>, Box<ElimArg>),
    Pair(Box<Term>, Box<Term>),
    /// `w1 t` / `w2 t`; the index is 1 or 2.
    Inj(u8, Box<Term>),
    Mu(MuName, Box<Term>),
    /// `(α t)`
    Named(MuName, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElimArg {
    Term(Term),
    /// `pi1` / `pi2`
    Proj(u8),
    /// `[x.t, y.u]`
    Case(Var, Term, Var, Term),
}

impl Term {
    pub fn var(v: u32) -> Term {
        Term::Var(Var(v))
    }

    pub fn lam(v: u32, body: Term) -> Term {
        Term::Lam(Var(v), Box::new(body))
    }

    pub fn app(head: Term, arg: Term) -> Term {
        Term::App(Box::new(head), Box::new(ElimArg::Term(arg)))
    }

    pub fn elim(head: Term, e: ElimArg) -> Term {
        Term::App(Box::new(head), Box::new(e))
    }

    pub fn proj(head: Term, i: u8) -> Term {
        Term::App(Box::new(head), Box::new(ElimArg::Proj(i)))
    }

    pub fn case(head: Term, x1: u32, b1: Term, x2: u32, b2: Term) -> Term {
        Term::App(
            Box::new(head),
            Box::new(ElimArg::Case(Var(x1), b1, Var(x2), b2)),
        )
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(i: u8, body: Term) -> Term {
        Term::Inj(i, Box::new(body))
    }

    pub fn mu(a: u32, body: Term) -> Term {
        Term::Mu(MuName(a), Box::new(body))
    }

    pub fn named(a: u32, body: Term) -> Term {
        Term::Named(MuName(a), Box::new(body))
    }

    /// Splits `(h e1 … en)` into the head and its eliminators.
    pub fn spine(&self) -> (&Term, Vec<&ElimArg>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(h, e) = cur {
            args.push(&**e);
            cur = h;
        }
        args.reverse();
        (cur, args)
    }

    /// Largest identifier used anywhere (bound or free, either namespace).
    pub fn max_ident(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        let mut bump = |n: u32| best = Some(best.map_or(n, |b| b.max(n)));
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Var(v) => bump(v.0),
                Term::Lam(v, b) => {
                    bump(v.0);
                    stack.push(b);
                }
                Term::Mu(a, b) | Term::Named(a, b) => {
                    bump(a.0);
                    stack.push(b);
                }
                Term::Inj(_, b) => stack.push(b),
                Term::Pair(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                Term::App(h, e) => {
                    stack.push(h);
                    match &**e {
                        ElimArg::Term(t) => stack.push(t),
                        ElimArg::Proj(_) => {}
                        ElimArg::Case(x1, b1, x2, b2) => {
                            bump(x1.0);
                            bump(x2.0);
                            stack.push(b1);
                            stack.push(b2);
                        }
                    }
                }
            }
        }
        best
    }

    pub fn has_free_var(&self, x: Var) -> bool {
        match self {
            Term::Var(v) => *v == x,
            Term::Lam(v, b) => *v != x && b.has_free_var(x),
            Term::Mu(_, b) | Term::Named(_, b) | Term::Inj(_, b) => b.has_free_var(x),
            Term::Pair(a, b) => a.has_free_var(x) || b.has_free_var(x),
            Term::App(h, e) => h.has_free_var(x) || e.has_free_var(x),
        }
    }

    pub fn has_free_mu(&self, a: MuName) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Mu(b, body) => *b != a && body.has_free_mu(a),
            Term::Named(b, body) => *b == a || body.has_free_mu(a),
            Term::Lam(_, b) | Term::Inj(_, b) => b.has_free_mu(a),
            Term::Pair(l, r) => l.has_free_mu(a) || r.has_free_mu(a),
            Term::App(h, e) => h.has_free_mu(a) || e.has_free_mu(a),
        }
    }

    /// Canonical representative of the α-equivalence class: bound names are
    /// renumbered in binding order, free names are kept.
    pub fn canonical(&self) -> Term {
        let mut c = Canon {
            vars: HashMap::new(),
            mus: HashMap::new(),
            next: BOUND_BASE,
        };
        c.term(self)
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        self.canonical() == other.canonical()
    }
}

impl ElimArg {
    pub fn has_free_var(&self, x: Var) -> bool {
        match self {
            ElimArg::Term(t) => t.has_free_var(x),
            ElimArg::Proj(_) => false,
            ElimArg::Case(x1, b1, x2, b2) => {
                (*x1 != x && b1.has_free_var(x)) || (*x2 != x && b2.has_free_var(x))
            }
        }
    }

    pub fn has_free_mu(&self, a: MuName) -> bool {
        match self {
            ElimArg::Term(t) => t.has_free_mu(a),
            ElimArg::Proj(_) => false,
            ElimArg::Case(_, b1, _, b2) => b1.has_free_mu(a) || b2.has_free_mu(a),
        }
    }
}

// Canonical bound names start high so they never collide with free names.
const BOUND_BASE: u32 = 1 << 30;

struct Canon {
    vars: HashMap<Var, Vec<Var>>,
    mus: HashMap<MuName, Vec<MuName>>,
    next: u32,
}

impl Canon {
    fn bind_var(&mut self, v: Var) -> Var {
        let fresh = Var(self.next);
        self.next += 1;
        self.vars.entry(v).or_default().push(fresh);
        fresh
    }

    fn unbind_var(&mut self, v: Var) {
        if let Some(s) = self.vars.get_mut(&v) {
            s.pop();
        }
    }

    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(v) => Term::Var(
                self.vars
                    .get(v)
                    .and_then(|s| s.last().copied())
                    .unwrap_or(*v),
            ),
            Term::Lam(v, b) => {
                let nv = self.bind_var(*v);
                let nb = self.term(b);
                self.unbind_var(*v);
                Term::Lam(nv, Box::new(nb))
            }
            Term::Mu(a, b) => {
                let na = MuName(self.next);
                self.next += 1;
                self.mus.entry(*a).or_default().push(na);
                let nb = self.term(b);
                if let Some(s) = self.mus.get_mut(a) {
                    s.pop();
                }
                Term::Mu(na, Box::new(nb))
            }
            Term::Named(a, b) => {
                let na = self
                    .mus
                    .get(a)
                    .and_then(|s| s.last().copied())
                    .unwrap_or(*a);
                Term::Named(na, Box::new(self.term(b)))
            }
            Term::Inj(i, b) => Term::Inj(*i, Box::new(self.term(b))),
            Term::Pair(a, b) => {
                let na = self.term(a);
                Term::Pair(Box::new(na), Box::new(self.term(b)))
            }
            Term::App(h, e) => {
                let nh = self.term(h);
                let ne = match &**e {
                    ElimArg::Term(t) => ElimArg::Term(self.term(t)),
                    ElimArg::Proj(i) => ElimArg::Proj(*i),
                    ElimArg::Case(x1, b1, x2, b2) => {
                        let n1 = self.bind_var(*x1);
                        let c1 = self.term(b1);
                        self.unbind_var(*x1);
                        let n2 = self.bind_var(*x2);
                        let c2 = self.term(b2);
                        self.unbind_var(*x2);
                        ElimArg::Case(n1, c1, n2, c2)
                    }
                };
                Term::App(Box::new(nh), Box::new(ne))
            }
        }
    }
}

/// A goal `Γ ⊢ A`. A μ-context entry `(α, A)` declares `α : ¬A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Goal {
    pub conclusion: Formula,
    pub lambda_ctx: Vec<(Var, Formula)>,
    pub mu_ctx: Vec<(MuName, Formula)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("identifier {0} is declared more than once in the goal context")]
pub struct DuplicateDeclaration(pub u32);

impl Goal {
    /// `⊢ f` with an empty context.
    pub fn closed(conclusion: Formula) -> Goal {
        Goal {
            conclusion,
            lambda_ctx: Vec::new(),
            mu_ctx: Vec::new(),
        }
    }

    /// Builds a goal whose λ-hypotheses are numbered `0..n` and μ-names
    /// `n..n+m`.
    pub fn with_hypotheses(
        lambdas: impl IntoIterator<Item = Formula>,
        mus: impl IntoIterator<Item = Formula>,
        conclusion: Formula,
    ) -> Goal {
        let lambda_ctx: Vec<_> = lambdas
            .into_iter()
            .enumerate()
            .map(|(i, f)| (Var(i as u32), f))
            .collect();
        let base = lambda_ctx.len() as u32;
        let mu_ctx = mus
            .into_iter()
            .enumerate()
            .map(|(i, f)| (MuName(base + i as u32), f))
            .collect();
        Goal {
            conclusion,
            lambda_ctx,
            mu_ctx,
        }
    }

    /// Each identifier may be declared at most once across both contexts.
    pub fn validate(&self) -> Result<(), DuplicateDeclaration> {
        let mut seen = std::collections::HashSet::new();
        let ids = self
            .lambda_ctx
            .iter()
            .map(|(v, _)| v.0)
            .chain(self.mu_ctx.iter().map(|(a, _)| a.0));
        for id in ids {
            if !seen.insert(id) {
                return Err(DuplicateDeclaration(id));
            }
        }
        Ok(())
    }

    pub fn lambda_type(&self, x: Var) -> Option<&Formula> {
        self.lambda_ctx.iter().rev().find(|(v, _)| *v == x).map(|(_, f)| f)
    }

    /// Smallest identifier not declared in either context.
    pub fn next_ident(&self) -> u32 {
        self.lambda_ctx
            .iter()
            .map(|(v, _)| v.0 + 1)
            .chain(self.mu_ctx.iter().map(|(a, _)| a.0 + 1))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, a) in &self.lambda_ctx {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "x{}: {}", v.0, a)?;
        }
        for (m, a) in &self.mu_ctx {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "a{}: ~({})", m.0, a)?;
        }
        if first {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, " |- {}", self.conclusion)
        }
    }
}
