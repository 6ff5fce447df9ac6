//! The five reduction rules: β, pair projection, injection/case,
//! permutative conversion, and the classical μ rule
//! `(μα.M ε) ▷ μα.M[(α L) := (α (L ε))]`.

use super::{ElimArg, MuName, Term, Var};

/// True iff no subterm is a redex.
pub fn is_normal(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Lam(_, b) | Term::Mu(_, b) | Term::Named(_, b) | Term::Inj(_, b) => is_normal(b),
        Term::Pair(a, b) => is_normal(a) && is_normal(b),
        Term::App(h, e) => {
            !is_redex(h, e)
                && is_normal(h)
                && match &**e {
                    ElimArg::Term(a) => is_normal(a),
                    ElimArg::Proj(_) => true,
                    ElimArg::Case(_, b1, _, b2) => is_normal(b1) && is_normal(b2),
                }
        }
    }
}

fn is_redex(head: &Term, e: &ElimArg) -> bool {
    match (head, e) {
        (Term::Lam(..), ElimArg::Term(_)) => true,
        (Term::Pair(..), ElimArg::Proj(_)) => true,
        (Term::Inj(..), ElimArg::Case(..)) => true,
        (Term::App(_, inner), _) if matches!(**inner, ElimArg::Case(..)) => true,
        (Term::Mu(..), _) => true,
        _ => false,
    }
}

/// Contracts the leftmost-outermost redex, if any.
pub fn reduce_step(t: &Term) -> Option<Term> {
    let mut fresh = Fresh(t.max_ident().map_or(0, |m| m + 1));
    step(t, &mut fresh)
}

/// Reduces to normal form, giving up after `fuel` steps.
pub fn normalize(t: &Term, fuel: usize) -> Option<Term> {
    let mut cur = t.clone();
    for _ in 0..=fuel {
        match reduce_step(&cur) {
            Some(next) => cur = next,
            None => return Some(cur),
        }
    }
    None
}

struct Fresh(u32);

impl Fresh {
    fn next(&mut self) -> u32 {
        let n = self.0;
        self.0 += 1;
        n
    }
}

fn step(t: &Term, fresh: &mut Fresh) -> Option<Term> {
    match t {
        Term::Var(_) => None,
        Term::Lam(v, b) => step(b, fresh).map(|b| Term::Lam(*v, Box::new(b))),
        Term::Mu(a, b) => step(b, fresh).map(|b| Term::Mu(*a, Box::new(b))),
        Term::Named(a, b) => step(b, fresh).map(|b| Term::Named(*a, Box::new(b))),
        Term::Inj(i, b) => step(b, fresh).map(|b| Term::Inj(*i, Box::new(b))),
        Term::Pair(a, b) => {
            if let Some(a2) = step(a, fresh) {
                return Some(Term::Pair(Box::new(a2), b.clone()));
            }
            step(b, fresh).map(|b2| Term::Pair(a.clone(), Box::new(b2)))
        }
        Term::App(h, e) => {
            if let Some(r) = contract(h, e, fresh) {
                return Some(r);
            }
            if let Some(h2) = step(h, fresh) {
                return Some(Term::App(Box::new(h2), e.clone()));
            }
            let e2 = match &**e {
                ElimArg::Term(a) => ElimArg::Term(step(a, fresh)?),
                ElimArg::Proj(_) => return None,
                ElimArg::Case(x1, b1, x2, b2) => {
                    if let Some(n1) = step(b1, fresh) {
                        ElimArg::Case(*x1, n1, *x2, b2.clone())
                    } else {
                        ElimArg::Case(*x1, b1.clone(), *x2, step(b2, fresh)?)
                    }
                }
            };
            Some(Term::App(h.clone(), Box::new(e2)))
        }
    }
}

fn contract(head: &Term, e: &ElimArg, fresh: &mut Fresh) -> Option<Term> {
    match (head, e) {
        (Term::Lam(x, m), ElimArg::Term(n)) => Some(subst(m, *x, n, fresh)),
        (Term::Pair(m1, m2), ElimArg::Proj(i)) => Some(if *i == 1 { (**m1).clone() } else { (**m2).clone() }),
        (Term::Inj(i, m), ElimArg::Case(x1, n1, x2, n2)) => Some(if *i == 1 {
            subst(n1, *x1, m, fresh)
        } else {
            subst(n2, *x2, m, fresh)
        }),
        (Term::App(m, inner), eps) => match &**inner {
            ElimArg::Case(x1, n1, x2, n2) => {
                let (x1, n1) = avoid_capture(*x1, n1, eps, fresh);
                let (x2, n2) = avoid_capture(*x2, n2, eps, fresh);
                Some(Term::App(
                    m.clone(),
                    Box::new(ElimArg::Case(
                        x1,
                        Term::App(Box::new(n1), Box::new(eps.clone())),
                        x2,
                        Term::App(Box::new(n2), Box::new(eps.clone())),
                    )),
                ))
            }
            _ => None,
        },
        (Term::Mu(a, m), eps) => {
            // ε lands under the binder, so the binder must not capture it.
            let (a, m) = rename_mu_if(*a, m, |a| eps.has_free_mu(a), fresh);
            Some(Term::Mu(a, Box::new(mu_subst(&m, a, eps, fresh))))
        }
        _ => None,
    }
}

// Renames case binder `x` in `body` when it would capture a free variable
// of `eps`.
fn avoid_capture(x: Var, body: &Term, eps: &ElimArg, fresh: &mut Fresh) -> (Var, Term) {
    if eps.has_free_var(x) {
        let y = Var(fresh.next());
        (y, subst(body, x, &Term::Var(y), fresh))
    } else {
        (x, body.clone())
    }
}

/// Capture-avoiding `t[x := n]`.
fn subst(t: &Term, x: Var, n: &Term, fresh: &mut Fresh) -> Term {
    match t {
        Term::Var(v) => {
            if *v == x {
                n.clone()
            } else {
                t.clone()
            }
        }
        Term::Lam(v, b) => {
            if *v == x {
                return t.clone();
            }
            let (v, b) = rename_var_if(*v, b, n, fresh);
            Term::Lam(v, Box::new(subst(&b, x, n, fresh)))
        }
        Term::Mu(a, b) => {
            let (a, b) = rename_mu_if(*a, b, |a| n.has_free_mu(a), fresh);
            Term::Mu(a, Box::new(subst(&b, x, n, fresh)))
        }
        Term::Named(a, b) => Term::Named(*a, Box::new(subst(b, x, n, fresh))),
        Term::Inj(i, b) => Term::Inj(*i, Box::new(subst(b, x, n, fresh))),
        Term::Pair(a, b) => Term::Pair(Box::new(subst(a, x, n, fresh)), Box::new(subst(b, x, n, fresh))),
        Term::App(h, e) => {
            let h = subst(h, x, n, fresh);
            let e = match &**e {
                ElimArg::Term(a) => ElimArg::Term(subst(a, x, n, fresh)),
                ElimArg::Proj(i) => ElimArg::Proj(*i),
                ElimArg::Case(x1, b1, x2, b2) => {
                    let (x1, b1) = subst_under(*x1, b1, x, n, fresh);
                    let (x2, b2) = subst_under(*x2, b2, x, n, fresh);
                    ElimArg::Case(x1, b1, x2, b2)
                }
            };
            Term::App(Box::new(h), Box::new(e))
        }
    }
}

fn subst_under(binder: Var, body: &Term, x: Var, n: &Term, fresh: &mut Fresh) -> (Var, Term) {
    if binder == x {
        return (binder, body.clone());
    }
    let (binder, body) = rename_var_if(binder, body, n, fresh);
    let body = subst(&body, x, n, fresh);
    (binder, body)
}

fn rename_var_if(v: Var, body: &Term, n: &Term, fresh: &mut Fresh) -> (Var, Term) {
    if n.has_free_var(v) {
        let w = Var(fresh.next());
        (w, subst(body, v, &Term::Var(w), fresh))
    } else {
        (v, body.clone())
    }
}

fn rename_mu_if(a: MuName, body: &Term, clash: impl Fn(MuName) -> bool, fresh: &mut Fresh) -> (MuName, Term) {
    if clash(a) {
        let b = MuName(fresh.next());
        (b, rename_mu(body, a, b))
    } else {
        (a, body.clone())
    }
}

fn rename_mu(t: &Term, from: MuName, to: MuName) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Mu(a, _) if *a == from => t.clone(),
        Term::Mu(a, b) => Term::Mu(*a, Box::new(rename_mu(b, from, to))),
        Term::Named(a, b) => {
            let a = if *a == from { to } else { *a };
            Term::Named(a, Box::new(rename_mu(b, from, to)))
        }
        Term::Lam(v, b) => Term::Lam(*v, Box::new(rename_mu(b, from, to))),
        Term::Inj(i, b) => Term::Inj(*i, Box::new(rename_mu(b, from, to))),
        Term::Pair(a, b) => Term::Pair(Box::new(rename_mu(a, from, to)), Box::new(rename_mu(b, from, to))),
        Term::App(h, e) => {
            let e = match &**e {
                ElimArg::Term(a) => ElimArg::Term(rename_mu(a, from, to)),
                ElimArg::Proj(i) => ElimArg::Proj(*i),
                ElimArg::Case(x1, b1, x2, b2) => {
                    ElimArg::Case(*x1, rename_mu(b1, from, to), *x2, rename_mu(b2, from, to))
                }
            };
            Term::App(Box::new(rename_mu(h, from, to)), Box::new(e))
        }
    }
}

/// `t[(α L) := (α (L ε))]`, renaming binders of `t` that would capture free
/// names of `eps`.
fn mu_subst(t: &Term, alpha: MuName, eps: &ElimArg, fresh: &mut Fresh) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Named(a, l) => {
            let l = mu_subst(l, alpha, eps, fresh);
            if *a == alpha {
                Term::Named(*a, Box::new(Term::App(Box::new(l), Box::new(eps.clone()))))
            } else {
                Term::Named(*a, Box::new(l))
            }
        }
        Term::Mu(a, _) if *a == alpha => t.clone(),
        Term::Mu(a, b) => {
            let (a, b) = rename_mu_if(*a, b, |a| eps.has_free_mu(a), fresh);
            Term::Mu(a, Box::new(mu_subst(&b, alpha, eps, fresh)))
        }
        Term::Lam(v, b) => {
            let (v, b) = if eps.has_free_var(*v) {
                let w = Var(fresh.next());
                (w, subst(b, *v, &Term::Var(w), fresh))
            } else {
                (*v, (**b).clone())
            };
            Term::Lam(v, Box::new(mu_subst(&b, alpha, eps, fresh)))
        }
        Term::Inj(i, b) => Term::Inj(*i, Box::new(mu_subst(b, alpha, eps, fresh))),
        Term::Pair(a, b) => Term::Pair(
            Box::new(mu_subst(a, alpha, eps, fresh)),
            Box::new(mu_subst(b, alpha, eps, fresh)),
        ),
        Term::App(h, e) => {
            let h = mu_subst(h, alpha, eps, fresh);
            let e = match &**e {
                ElimArg::Term(a) => ElimArg::Term(mu_subst(a, alpha, eps, fresh)),
                ElimArg::Proj(i) => ElimArg::Proj(*i),
                ElimArg::Case(x1, b1, x2, b2) => {
                    let (x1, b1) = avoid_capture(*x1, b1, eps, fresh);
                    let (x2, b2) = avoid_capture(*x2, b2, eps, fresh);
                    ElimArg::Case(
                        x1,
                        mu_subst(&b1, alpha, eps, fresh),
                        x2,
                        mu_subst(&b2, alpha, eps, fresh),
                    )
                }
            };
            Term::App(Box::new(h), Box::new(e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda_mu::{parse_term, TermEnv};

    fn env() -> TermEnv {
        TermEnv {
            vars: vec![("y".into(), Var(100)), ("u".into(), Var(101)), ("v".into(), Var(102))],
            mus: vec![],
        }
    }

    fn t(s: &str) -> Term {
        parse_term(s, &env()).unwrap()
    }

    #[test]
    fn beta() {
        let r = t("((\\x. x) y)");
        assert!(!is_normal(&r));
        assert_eq!(reduce_step(&r), Some(Term::Var(Var(100))));
    }

    #[test]
    fn pair_projection() {
        let r = t("(<u, v> pi2)");
        assert!(!is_normal(&r));
        assert_eq!(reduce_step(&r), Some(Term::Var(Var(102))));
    }

    #[test]
    fn injection_case() {
        let r = t("(w2 u [a. a, b. <b, b>])");
        assert_eq!(reduce_step(&r), Some(Term::pair(Term::Var(Var(101)), Term::Var(Var(101)))));
    }

    #[test]
    fn normal_terms_do_not_step() {
        let id = t("\\x. x");
        assert!(is_normal(&id));
        assert_eq!(reduce_step(&id), None);
    }

    #[test]
    fn permutative_conversion() {
        let r = t("(y [a. a, b. b] u)");
        assert!(!is_normal(&r));
        let out = reduce_step(&r).unwrap();
        let expected = t("(y [a. (a u), b. (b u)])");
        assert!(out.alpha_eq(&expected), "{out}");
    }

    #[test]
    fn classical_cut() {
        let r = t("(mu k. (k (\\x. x)) u)");
        assert!(!is_normal(&r));
        let out = reduce_step(&r).unwrap();
        let expected = t("mu k. (k ((\\x. x) u))");
        assert!(out.alpha_eq(&expected), "{out}");
        let done = normalize(&r, 10).unwrap();
        assert!(done.alpha_eq(&t("mu k. (k u)")), "{done}");
    }

    #[test]
    fn substitution_avoids_capture() {
        // (λx.λy'.x) y' with the argument's free name equal to the binder.
        let e = TermEnv {
            vars: vec![("z".into(), Var(1))],
            mus: vec![],
        };
        let r = Term::app(Term::lam(0, Term::lam(1, Term::var(0))), Term::var(1));
        let out = reduce_step(&r).unwrap();
        let expected = parse_term("\\w. z", &e).unwrap();
        assert!(out.alpha_eq(&expected), "{out}");
    }

    #[test]
    fn structural_step_avoids_name_capture() {
        // (μa.[a]x) (μb.[a]y): the argument's free a must stay free.
        let arg = Term::mu(2, Term::named(0, Term::var(3)));
        let r = Term::app(Term::mu(0, Term::named(0, Term::var(1))), arg);
        let out = reduce_step(&r).unwrap();
        assert!(out.has_free_mu(MuName(0)), "{out}");
        let Term::Mu(b, _) = &out else { panic!("{out}") };
        assert_ne!(*b, MuName(0));
    }

    #[test]
    fn leftmost_outermost_order() {
        let r = t("<((\\x. x) u), ((\\x. x) v)>");
        let out = reduce_step(&r).unwrap();
        assert!(out.alpha_eq(&t("<u, ((\\x. x) v)>")));
    }
}
