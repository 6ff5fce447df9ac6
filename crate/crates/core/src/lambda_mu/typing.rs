//! Type assignment for λμ terms.
//!
//! Binders carry no type annotations, so a redex such as `(λx.M N)` does not
//! determine the type of `x` locally. Types are therefore inferred by
//! first-order unification and the result is checked against the goal.
//! Contexts are additive: every hypothesis is available in every premise.
//! For normal terms the resulting derivation is the unique one; for terms
//! with unconstrained positions (e.g. the unused side of an injection in a
//! redex) the remaining unknowns are instantiated with fresh atoms `?n`.


use super::{ElimArg, Goal, MuName, Term, Var};
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ill-typed at `{subterm}`: {message}")]
pub struct TypeError {
    pub subterm: String,
    pub message: String,
}

/// A term together with the formula assigned to each of its subterms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedTerm {
    pub ty: Formula,
    pub node: TypedNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypedNode {
    Var(Var),
    /// Binder, the type given to it, and the body.
    Lam(Var, Formula, Box<TypedTerm>),
    App(Box<TypedTerm>, TypedElim),
    Pair(Box<TypedTerm>, Box<TypedTerm>),
    Inj(u8, Box<TypedTerm>),
    /// `μα.t`; the declaration is `α : ¬ty` where `ty` is this node's type.
    Mu(MuName, Box<TypedTerm>),
    Named(MuName, Box<TypedTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypedElim {
    Term(Box<TypedTerm>),
    Proj(u8),
    Case(Var, Formula, Box<TypedTerm>, Var, Formula, Box<TypedTerm>),
}

impl TypedTerm {
    /// Every formula occurring in the derivation: node types and the types
    /// given to bound variables (μ-declarations contribute `¬A`).
    pub fn formulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Formula>) {
        out.push(self.ty.clone());
        match &self.node {
            TypedNode::Var(_) => {}
            TypedNode::Lam(_, a, b) => {
                out.push(a.clone());
                b.collect(out);
            }
            TypedNode::App(h, e) => {
                h.collect(out);
                match e {
                    TypedElim::Term(t) => t.collect(out),
                    TypedElim::Proj(_) => {}
                    TypedElim::Case(_, a1, b1, _, a2, b2) => {
                        out.push(a1.clone());
                        out.push(a2.clone());
                        b1.collect(out);
                        b2.collect(out);
                    }
                }
            }
            TypedNode::Pair(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            TypedNode::Inj(_, b) | TypedNode::Named(_, b) => b.collect(out),
            TypedNode::Mu(_, b) => {
                out.push(Formula::not(self.ty.clone()));
                b.collect(out);
            }
        }
    }

    /// Whether `x` occurs free.
    pub fn has_free_var(&self, x: Var) -> bool {
        match &self.node {
            TypedNode::Var(v) => *v == x,
            TypedNode::Lam(v, _, b) => *v != x && b.has_free_var(x),
            TypedNode::App(h, e) => {
                h.has_free_var(x)
                    || match e {
                        TypedElim::Term(t) => t.has_free_var(x),
                        TypedElim::Proj(_) => false,
                        TypedElim::Case(x1, _, b1, x2, _, b2) => {
                            (*x1 != x && b1.has_free_var(x)) || (*x2 != x && b2.has_free_var(x))
                        }
                    }
            }
            TypedNode::Pair(a, b) => a.has_free_var(x) || b.has_free_var(x),
            TypedNode::Inj(_, b) | TypedNode::Mu(_, b) | TypedNode::Named(_, b) => {
                b.has_free_var(x)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Ty {
    Meta(u32),
    Atom(String),
    Bot,
    Imp(Box<Ty>, Box<Ty>),
    And(Box<Ty>, Box<Ty>),
    Or(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn from_formula(f: &Formula) -> Ty {
        match f {
            Formula::Atom(a) => Ty::Atom(a.clone()),
            Formula::Bottom => Ty::Bot,
            Formula::Implies(a, b) => Ty::Imp(Box::new(Ty::from_formula(a)), Box::new(Ty::from_formula(b))),
            Formula::And(a, b) => Ty::And(Box::new(Ty::from_formula(a)), Box::new(Ty::from_formula(b))),
            Formula::Or(a, b) => Ty::Or(Box::new(Ty::from_formula(a)), Box::new(Ty::from_formula(b))),
        }
    }
}

// Typed tree with unresolved types, zonked into `TypedTerm` at the end.
struct Pre {
    ty: Ty,
    node: PreNode,
}

enum PreNode {
    Var(Var),
    Lam(Var, Ty, Box<Pre>),
    App(Box<Pre>, PreElim),
    Pair(Box<Pre>, Box<Pre>),
    Inj(u8, Box<Pre>),
    Mu(MuName, Box<Pre>),
    Named(MuName, Box<Pre>),
}

enum PreElim {
    Term(Box<Pre>),
    Proj(u8),
    Case(Var, Ty, Box<Pre>, Var, Ty, Box<Pre>),
}

struct Infer {
    subst: Vec<Option<Ty>>,
    vars: Vec<(Var, Ty)>,
    mus: Vec<(MuName, Ty)>,
}

impl Infer {
    fn fresh(&mut self) -> Ty {
        self.subst.push(None);
        Ty::Meta(self.subst.len() as u32 - 1)
    }

    fn shallow(&self, t: &Ty) -> Ty {
        let mut cur = t.clone();
        while let Ty::Meta(m) = cur {
            match &self.subst[m as usize] {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, m: u32, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Meta(n) => n == m,
            Ty::Atom(_) | Ty::Bot => false,
            Ty::Imp(a, b) | Ty::And(a, b) | Ty::Or(a, b) => self.occurs(m, &a) || self.occurs(m, &b),
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> Result<(), String> {
        let (a, b) = (self.shallow(a), self.shallow(b));
        match (&a, &b) {
            (Ty::Meta(m), Ty::Meta(n)) if m == n => Ok(()),
            (Ty::Meta(m), other) | (other, Ty::Meta(m)) => {
                if self.occurs(*m, other) {
                    return Err("cyclic type".into());
                }
                self.subst[*m as usize] = Some(other.clone());
                Ok(())
            }
            (Ty::Atom(x), Ty::Atom(y)) if x == y => Ok(()),
            (Ty::Bot, Ty::Bot) => Ok(()),
            (Ty::Imp(a1, a2), Ty::Imp(b1, b2))
            | (Ty::And(a1, a2), Ty::And(b1, b2))
            | (Ty::Or(a1, a2), Ty::Or(b1, b2)) => {
                self.unify(a1, b1)?;
                self.unify(a2, b2)
            }
            _ => Err(format!(
                "expected `{}`, found `{}`",
                self.zonk(&b),
                self.zonk(&a)
            )),
        }
    }

    fn zonk(&self, t: &Ty) -> Formula {
        match self.shallow(t) {
            Ty::Meta(m) => Formula::Atom(format!("?{m}")),
            Ty::Atom(a) => Formula::Atom(a),
            Ty::Bot => Formula::Bottom,
            Ty::Imp(a, b) => Formula::implies(self.zonk(&a), self.zonk(&b)),
            Ty::And(a, b) => Formula::and(self.zonk(&a), self.zonk(&b)),
            Ty::Or(a, b) => Formula::or(self.zonk(&a), self.zonk(&b)),
        }
    }

    fn fail<T>(t: &Term, message: String) -> Result<T, TypeError> {
        Err(TypeError {
            subterm: t.to_string(),
            message,
        })
    }

    fn unify_at(&mut self, t: &Term, a: &Ty, b: &Ty) -> Result<(), TypeError> {
        self.unify(a, b).or_else(|m| Self::fail(t, m))
    }

    fn infer(&mut self, t: &Term) -> Result<Pre, TypeError> {
        match t {
            Term::Var(x) => match self.vars.iter().rev().find(|(v, _)| v == x) {
                Some((_, ty)) => Ok(Pre {
                    ty: ty.clone(),
                    node: PreNode::Var(*x),
                }),
                None => Self::fail(t, "unbound variable".into()),
            },
            Term::Lam(x, body) => {
                let dom = self.fresh();
                self.vars.push((*x, dom.clone()));
                let b = self.infer(body);
                self.vars.pop();
                let b = b?;
                Ok(Pre {
                    ty: Ty::Imp(Box::new(dom.clone()), Box::new(b.ty.clone())),
                    node: PreNode::Lam(*x, dom, Box::new(b)),
                })
            }
            Term::Pair(l, r) => {
                let l = self.infer(l)?;
                let r = self.infer(r)?;
                Ok(Pre {
                    ty: Ty::And(Box::new(l.ty.clone()), Box::new(r.ty.clone())),
                    node: PreNode::Pair(Box::new(l), Box::new(r)),
                })
            }
            Term::Inj(i, body) => {
                let b = self.infer(body)?;
                let other = self.fresh();
                let ty = match i {
                    1 => Ty::Or(Box::new(b.ty.clone()), Box::new(other)),
                    2 => Ty::Or(Box::new(other), Box::new(b.ty.clone())),
                    _ => return Self::fail(t, format!("invalid injection index {i}")),
                };
                Ok(Pre {
                    ty,
                    node: PreNode::Inj(*i, Box::new(b)),
                })
            }
            Term::Mu(a, body) => {
                let res = self.fresh();
                self.mus.push((*a, res.clone()));
                let b = self.infer(body);
                self.mus.pop();
                let b = b?;
                self.unify_at(body, &b.ty, &Ty::Bot)?;
                Ok(Pre {
                    ty: res,
                    node: PreNode::Mu(*a, Box::new(b)),
                })
            }
            Term::Named(a, body) => {
                let declared = match self.mus.iter().rev().find(|(m, _)| m == a) {
                    Some((_, ty)) => ty.clone(),
                    None => return Self::fail(t, "unbound μ-name".into()),
                };
                let b = self.infer(body)?;
                self.unify_at(body, &b.ty, &declared)?;
                Ok(Pre {
                    ty: Ty::Bot,
                    node: PreNode::Named(*a, Box::new(b)),
                })
            }
            Term::App(head, e) => {
                let h = self.infer(head)?;
                match &**e {
                    ElimArg::Term(arg) => {
                        let a = self.infer(arg)?;
                        let res = self.fresh();
                        let want = Ty::Imp(Box::new(a.ty.clone()), Box::new(res.clone()));
                        self.unify_at(t, &h.ty, &want)?;
                        Ok(Pre {
                            ty: res,
                            node: PreNode::App(Box::new(h), PreElim::Term(Box::new(a))),
                        })
                    }
                    ElimArg::Proj(i) => {
                        let (l, r) = (self.fresh(), self.fresh());
                        let want = Ty::And(Box::new(l.clone()), Box::new(r.clone()));
                        self.unify_at(t, &h.ty, &want)?;
                        let ty = match i {
                            1 => l,
                            2 => r,
                            _ => return Self::fail(t, format!("invalid projection index {i}")),
                        };
                        Ok(Pre {
                            ty,
                            node: PreNode::App(Box::new(h), PreElim::Proj(*i)),
                        })
                    }
                    ElimArg::Case(x1, b1, x2, b2) => {
                        let (l, r) = (self.fresh(), self.fresh());
                        let want = Ty::Or(Box::new(l.clone()), Box::new(r.clone()));
                        self.unify_at(t, &h.ty, &want)?;
                        self.vars.push((*x1, l.clone()));
                        let n1 = self.infer(b1);
                        self.vars.pop();
                        let n1 = n1?;
                        self.vars.push((*x2, r.clone()));
                        let n2 = self.infer(b2);
                        self.vars.pop();
                        let n2 = n2?;
                        self.unify_at(t, &n2.ty, &n1.ty)?;
                        Ok(Pre {
                            ty: n1.ty.clone(),
                            node: PreNode::App(
                                Box::new(h),
                                PreElim::Case(*x1, l, Box::new(n1), *x2, r, Box::new(n2)),
                            ),
                        })
                    }
                }
            }
        }
    }

    fn finish(&self, p: Pre) -> TypedTerm {
        let ty = self.zonk(&p.ty);
        let node = match p.node {
            PreNode::Var(v) => TypedNode::Var(v),
            PreNode::Lam(v, a, b) => TypedNode::Lam(v, self.zonk(&a), Box::new(self.finish(*b))),
            PreNode::Pair(a, b) => {
                TypedNode::Pair(Box::new(self.finish(*a)), Box::new(self.finish(*b)))
            }
            PreNode::Inj(i, b) => TypedNode::Inj(i, Box::new(self.finish(*b))),
            PreNode::Mu(a, b) => TypedNode::Mu(a, Box::new(self.finish(*b))),
            PreNode::Named(a, b) => TypedNode::Named(a, Box::new(self.finish(*b))),
            PreNode::App(h, e) => {
                let e = match e {
                    PreElim::Term(t) => TypedElim::Term(Box::new(self.finish(*t))),
                    PreElim::Proj(i) => TypedElim::Proj(i),
                    PreElim::Case(x1, a1, b1, x2, a2, b2) => TypedElim::Case(
                        x1,
                        self.zonk(&a1),
                        Box::new(self.finish(*b1)),
                        x2,
                        self.zonk(&a2),
                        Box::new(self.finish(*b2)),
                    ),
                };
                TypedNode::App(Box::new(self.finish(*h)), e)
            }
        };
        TypedTerm { ty, node }
    }
}

/// Computes the typing derivation of `t` for goal `g`, or the first
/// subterm at which typing fails.
pub fn annotate(g: &Goal, t: &Term) -> Result<TypedTerm, TypeError> {
    let mut inf = Infer {
        subst: Vec::new(),
        vars: g
            .lambda_ctx
            .iter()
            .map(|(v, f)| (*v, Ty::from_formula(f)))
            .collect(),
        mus: g
            .mu_ctx
            .iter()
            .map(|(a, f)| (*a, Ty::from_formula(f)))
            .collect(),
    };
    let pre = inf.infer(t)?;
    let goal = Ty::from_formula(&g.conclusion);
    inf.unify_at(t, &pre.ty, &goal)?;
    Ok(inf.finish(pre))
}

/// Whether `Γ ⊢ t : A` is derivable.
pub fn typecheck(g: &Goal, t: &Term) -> bool {
    annotate(g, t).is_ok()
}
