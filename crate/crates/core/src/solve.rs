//! Least solutions of polynomial systems over ℕ∪{ω} and over the Boolean
//! semiring.

use std::collections::BTreeSet;

use crate::extnat::ExtNat;
use crate::poly::{Polynomial, Pse, VarId};

/// Least solution of `x = f(x, y⃗)` as a polynomial in `y⃗`.
///
/// Writing `f = f₀ + Σ fᵢ·xⁱ`, the least solution is `f₀ + f₀·h·ω` with
/// `h = Σ fᵢ`: it is `f₀` when `h` vanishes, `0` when `f₀` vanishes, and `ω`
/// otherwise.
pub fn min_univariate(f: &Polynomial, x: VarId) -> Polynomial {
    let mut f0 = Polynomial::zero();
    let mut h = Polynomial::zero();
    for (c, m) in f.terms() {
        let (rest, e) = m.split_off(x);
        if e == 0 {
            f0.add_term(c.clone(), rest);
        } else {
            h.add_term(c.clone(), rest);
        }
    }
    f0.add(&f0.mul(&h).scale(&ExtNat::Omega))
}

/// The least solution of `s`, eliminating variables from the last one
/// created to the first.
pub fn solve_min(s: &Pse) -> Vec<ExtNat> {
    let order: Vec<VarId> = (0..s.len()).rev().collect();
    solve_min_in_order(s, &order)
}

/// The least solution of `s`, eliminating variables in the given order.
///
/// # Panics
///
/// If `order` is not a permutation of the variables of `s`.
pub fn solve_min_in_order(s: &Pse, order: &[VarId]) -> Vec<ExtNat> {
    let n = s.len();
    let mut seen = vec![false; n];
    assert_eq!(order.len(), n, "elimination order must list every variable");
    for &x in order {
        assert!(!std::mem::replace(&mut seen[x], true), "variable #{x} listed twice");
    }

    let mut eqs: Vec<Option<Polynomial>> = s.equations().iter().map(|p| Some(p.simplify_omega())).collect();
    // users[y]: equations that may mention y.
    let mut users: Vec<BTreeSet<VarId>> = vec![BTreeSet::new(); n];
    for (x, p) in eqs.iter().enumerate() {
        for y in p.iter().flat_map(Polynomial::variables) {
            users[y].insert(x);
        }
    }
    let mut solved: Vec<(VarId, Polynomial)> = Vec::with_capacity(n);
    for &x in order {
        let f = eqs[x].take().expect("each variable is eliminated once");
        let g = min_univariate(&f, x).simplify_omega();
        let introduced: Vec<VarId> = g.variables().collect();
        for u in std::mem::take(&mut users[x]) {
            let Some(p) = eqs[u].as_mut() else { continue };
            if p.mentions(x) {
                *p = p.subst(x, &g).simplify_omega();
                for &y in &introduced {
                    users[y].insert(u);
                }
            }
        }
        solved.push((x, g));
    }

    // Each g only mentions variables eliminated after it.
    let mut value: Vec<ExtNat> = vec![ExtNat::zero(); n];
    for (x, g) in solved.iter().rev() {
        value[*x] = g.eval(&value).expect("closed system");
    }
    value
}

/// `Fᵏ(0⃗)`.
pub fn kleene(s: &Pse, k: usize) -> Vec<ExtNat> {
    let mut v = vec![ExtNat::zero(); s.len()];
    for _ in 0..k {
        v = s.apply(&v);
    }
    v
}

/// The least solution over the Boolean semiring, where `1 + 1 = 1`:
/// component `i` is true iff the least solution over ℕ∪{ω} is nonzero.
pub fn solve_bool(s: &Pse) -> Vec<bool> {
    let mut v = vec![false; s.len()];
    loop {
        let next: Vec<bool> = s.equations().iter().map(|p| p.eval_bool(&v)).collect();
        if next == v {
            return v;
        }
        v = next;
    }
}

/// Whether `v` is a fixpoint of `s`.
pub fn is_fixpoint(s: &Pse, v: &[ExtNat]) -> bool {
    s.apply(v) == v
}
