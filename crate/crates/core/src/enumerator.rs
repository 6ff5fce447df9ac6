//! Direct enumeration of normal, fair proofs by size.
//!
//! Proofs are built top-down in the three head forms of normal terms:
//! introductions (including proofs by contradiction), naming a μ-variable
//! when the conclusion is `⊥`, and spines `(x e₁ … eₙ)` that follow an
//! elimination path of the head's type. Fairness is enforced while
//! building: a case split removes the split hypothesis from both branches,
//! and a μ never proves `⊥`, a negation, or a formula whose negation is
//! already assumed.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::extnat::ExtNat;
use crate::lambda_mu::{size, ElimArg, Goal, MuName, Term, Var};
use crate::mode::{Logic, Mode};
use crate::pse_gen::build;
use crate::universe::{FId, GoalKey, IGoal, Shape, Step, Tail, Universe};

/// Proof counts of one goal by exact size; index `k` holds the number of
/// proofs of size `k`, so index 0 is always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeProfile {
    pub exact: Vec<BigUint>,
}

impl SizeProfile {
    pub fn max_size(&self) -> usize {
        self.exact.len().saturating_sub(1)
    }

    /// Number of proofs of size at most `k`.
    pub fn up_to(&self, k: usize) -> BigUint {
        self.exact.iter().take(k + 1).sum()
    }

    pub fn cumulative(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.exact
            .iter()
            .map(|d| {
                acc += d;
                acc.clone()
            })
            .collect()
    }
}

/// Counts proofs of bounded size. Counts are cached across goals, so one
/// counter can profile every goal of a system cheaply.
pub struct Counter {
    u: Universe,
    mode: Mode,
    memo: HashMap<(GoalKey, usize), BigUint>,
}

impl Counter {
    pub fn new(mode: Mode) -> Counter {
        Counter { u: Universe::new(), mode, memo: HashMap::new() }
    }

    /// Number of proofs of `g` of size at most `k`.
    pub fn up_to(&mut self, g: &Goal, k: usize) -> BigUint {
        let ig = IGoal::from_goal(&mut self.u, g);
        self.cum(&ig, k)
    }

    pub fn profile(&mut self, g: &Goal, k_max: usize) -> SizeProfile {
        let ig = IGoal::from_goal(&mut self.u, g);
        let cum: Vec<BigUint> = (0..=k_max).map(|k| self.cum(&ig, k)).collect();
        let exact = (0..=k_max)
            .map(|k| if k == 0 { cum[0].clone() } else { &cum[k] - &cum[k - 1] })
            .collect();
        SizeProfile { exact }
    }

    fn cum(&mut self, g: &IGoal, k: usize) -> BigUint {
        if k == 0 {
            return BigUint::zero();
        }
        let key = (g.exact(), k);
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let total = self.intro(g, k) + self.contra(g, k) + self.elim(g, k);
        self.memo.insert(key, total.clone());
        total
    }

    fn intro(&mut self, g: &IGoal, k: usize) -> BigUint {
        match self.u.shape(g.concl) {
            Shape::Atom | Shape::Bottom => BigUint::zero(),
            Shape::Implies(c, d) => self.cum(&g.with_lam(c, d), k - 1),
            Shape::And(b1, b2) => self.cum(&g.with_concl(b1), k - 1) * self.cum(&g.with_concl(b2), k - 1),
            Shape::Or(b1, b2) => self.cum(&g.with_concl(b1), k - 1) + self.cum(&g.with_concl(b2), k - 1),
        }
    }

    fn contra(&mut self, g: &IGoal, k: usize) -> BigUint {
        let b = g.concl;
        if self.mode.eta_long && self.u.is_invertible(b) {
            return BigUint::zero();
        }
        let bottom = self.u.bottom();
        match self.mode.logic {
            Logic::Minimal => BigUint::zero(),
            Logic::Intuitionistic if b == bottom => BigUint::zero(),
            Logic::Intuitionistic => self.cum(&g.with_concl(bottom), k - 1),
            Logic::Classical => {
                let mut total = BigUint::zero();
                if b == bottom {
                    for &a in &g.mus {
                        total += self.cum(&g.with_concl(a), k - 1);
                    }
                } else if !self.u.is_negation(b) && !g.mus.contains(&b) {
                    total += self.cum(&g.with_mu(b, bottom), k - 1);
                }
                total
            }
        }
    }

    fn elim(&mut self, g: &IGoal, k: usize) -> BigUint {
        let b = g.concl;
        if self.mode.eta_long && self.u.is_invertible(b) {
            return BigUint::zero();
        }
        let mut total = BigUint::zero();
        for (i, &a) in g.lams.iter().enumerate() {
            for path in self.u.elim(a, b).iter() {
                if path.steps.is_empty() && path.tail == Tail::Star {
                    total += 1u32;
                    continue;
                }
                if k < 2 {
                    continue;
                }
                let mut r = BigUint::one();
                for step in &path.steps {
                    if let Step::Arg(c) = *step {
                        r *= self.cum(&g.with_concl(c), k - 1);
                    }
                }
                if let Tail::Disj(d1, d2) = path.tail {
                    r *= self.cum(&g.case_branch(i, d1), k - 1);
                    r *= self.cum(&g.case_branch(i, d2), k - 1);
                }
                total += r;
            }
        }
        total
    }
}

/// Exact-size proof counts of `g` for sizes `0..=k_max`.
pub fn count_by_size(g: &Goal, mode: Mode, k_max: usize) -> SizeProfile {
    Counter::new(mode).profile(g, k_max)
}

/// A goal with concrete identifiers, for listing terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct LGoal {
    concl: FId,
    lams: Vec<(u32, FId)>,
    mus: Vec<(u32, FId)>,
}

impl LGoal {
    fn next_id(&self) -> u32 {
        self.lams.iter().chain(&self.mus).map(|&(x, _)| x + 1).max().unwrap_or(0)
    }

    fn with_concl(&self, concl: FId) -> LGoal {
        LGoal { concl, ..self.clone() }
    }
}

struct Lister {
    u: Universe,
    mode: Mode,
    memo: HashMap<(LGoal, usize), Rc<Vec<Term>>>,
}

/// All ways to pick one element from each list.
fn product(lists: &[Rc<Vec<Term>>]) -> Vec<Vec<Term>> {
    let mut out: Vec<Vec<Term>> = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for t in l.iter() {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl Lister {
    fn list(&mut self, g: &LGoal, k: usize) -> Rc<Vec<Term>> {
        if k == 0 {
            return Rc::new(Vec::new());
        }
        let key = (g.clone(), k);
        if let Some(ts) = self.memo.get(&key) {
            return ts.clone();
        }
        let mut out = Vec::new();
        self.intro(g, k, &mut out);
        self.contra(g, k, &mut out);
        self.elim(g, k, &mut out);
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    fn intro(&mut self, g: &LGoal, k: usize, out: &mut Vec<Term>) {
        match self.u.shape(g.concl) {
            Shape::Atom | Shape::Bottom => {}
            Shape::Implies(c, d) => {
                let y = g.next_id();
                let mut h = g.with_concl(d);
                h.lams.push((y, c));
                out.extend(self.list(&h, k - 1).iter().map(|t| Term::lam(y, t.clone())));
            }
            Shape::And(b1, b2) => {
                let l1 = self.list(&g.with_concl(b1), k - 1);
                let l2 = self.list(&g.with_concl(b2), k - 1);
                for p in product(&[l1, l2]) {
                    let [t1, t2]: [Term; 2] = p.try_into().expect("two components");
                    out.push(Term::pair(t1, t2));
                }
            }
            Shape::Or(b1, b2) => {
                for (i, bi) in [(1, b1), (2, b2)] {
                    out.extend(self.list(&g.with_concl(bi), k - 1).iter().map(|t| Term::inj(i, t.clone())));
                }
            }
        }
    }

    fn contra(&mut self, g: &LGoal, k: usize, out: &mut Vec<Term>) {
        let b = g.concl;
        if self.mode.eta_long && self.u.is_invertible(b) {
            return;
        }
        let bottom = self.u.bottom();
        match self.mode.logic {
            Logic::Minimal => {}
            Logic::Intuitionistic => {
                if b != bottom {
                    // Ex falso, written as a μ whose name is never used.
                    let a = g.next_id();
                    out.extend(self.list(&g.with_concl(bottom), k - 1).iter().map(|t| Term::mu(a, t.clone())));
                }
            }
            Logic::Classical => {
                if b == bottom {
                    for &(a, f) in &g.mus.clone() {
                        out.extend(self.list(&g.with_concl(f), k - 1).iter().map(|t| Term::named(a, t.clone())));
                    }
                } else if !self.u.is_negation(b) && !g.mus.iter().any(|&(_, f)| f == b) {
                    let a = g.next_id();
                    let mut h = g.with_concl(bottom);
                    h.mus.push((a, b));
                    out.extend(self.list(&h, k - 1).iter().map(|t| Term::mu(a, t.clone())));
                }
            }
        }
    }

    fn elim(&mut self, g: &LGoal, k: usize, out: &mut Vec<Term>) {
        let b = g.concl;
        if self.mode.eta_long && self.u.is_invertible(b) {
            return;
        }
        for (i, &(x, a)) in g.lams.iter().enumerate() {
            for path in self.u.elim(a, b).iter() {
                if path.steps.is_empty() && path.tail == Tail::Star {
                    out.push(Term::var(x));
                    continue;
                }
                if k < 2 {
                    continue;
                }
                let mut lists = Vec::new();
                for step in &path.steps {
                    if let Step::Arg(c) = *step {
                        lists.push(self.list(&g.with_concl(c), k - 1));
                    }
                }
                let mut binders = None;
                if let Tail::Disj(d1, d2) = path.tail {
                    let y = g.next_id();
                    for d in [d1, d2] {
                        let mut h = g.clone();
                        h.lams.remove(i);
                        h.lams.push((y, d));
                        lists.push(self.list(&h, k - 1));
                    }
                    binders = Some(y);
                }
                for picks in product(&lists) {
                    let mut picks = picks.into_iter();
                    let mut t = Term::var(x);
                    for step in &path.steps {
                        t = match *step {
                            Step::Arg(_) => Term::app(t, picks.next().expect("argument")),
                            Step::Proj(j) => Term::proj(t, j),
                        };
                    }
                    if let Some(y) = binders {
                        let b1 = picks.next().expect("left branch");
                        let b2 = picks.next().expect("right branch");
                        t = Term::elim(t, ElimArg::Case(Var(y), b1, Var(y), b2));
                    }
                    out.push(t);
                }
            }
        }
    }
}

/// Every normal, fair proof of `g` in `mode` of size at most `max_size`,
/// ordered by size and then by canonical form.
pub fn enumerate(g: &Goal, mode: Mode, max_size: usize) -> Vec<Term> {
    let mut u = Universe::new();
    let lg = LGoal {
        concl: u.intern(&g.conclusion),
        lams: g.lambda_ctx.iter().map(|(Var(x), f)| (*x, u.intern(f))).collect(),
        mus: g.mu_ctx.iter().map(|(MuName(a), f)| (*a, u.intern(f))).collect(),
    };
    let mut lister = Lister { u, mode, memo: HashMap::new() };
    let terms = lister.list(&lg, max_size);
    let mut keyed: Vec<(usize, Term, Term)> = terms.iter().map(|t| (size(t), t.canonical(), t.clone())).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|(_, _, t)| t).collect()
}

/// The largest size whose cumulative count stays within `limit`, at most
/// `max_size`; `None` if even the smallest proofs exceed it.
pub fn size_within(g: &Goal, mode: Mode, max_size: usize, limit: u64) -> Option<usize> {
    let mut c = Counter::new(mode);
    let limit = BigUint::from(limit);
    (1..=max_size).rev().find(|&k| c.up_to(g, k) <= limit)
}

/// The equations of `g` evaluated at the cumulative counts up to `k`,
/// alongside the cumulative counts up to `k + 1`, for every variable of the
/// generated system.
pub fn recurrence_check(g: &Goal, mode: Mode, k: usize) -> Vec<(BigUint, ExtNat)> {
    let sys = build(g, mode);
    let mut c = Counter::new(mode);
    let at_k: Vec<ExtNat> = sys.goals.iter().map(|h| ExtNat::from(c.up_to(h, k))).collect();
    let applied = sys.pse.apply(&at_k);
    sys.goals
        .iter()
        .zip(applied)
        .map(|(h, p)| (c.up_to(h, k + 1), p))
        .collect()
}
