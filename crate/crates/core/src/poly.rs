//! Sparse multivariate polynomials with coefficients in ℕ∪{ω}, and systems
//! of polynomial equations `x⃗ = F(x⃗)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::extnat::ExtNat;

/// Index of a variable in its [`Pse`].
pub type VarId = usize;

/// A power product: variables with positive exponents, sorted by variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: VarId) -> Self {
        Monomial(vec![(x, 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order;
    /// repeated variables add up and zero exponents vanish.
    pub fn from_powers(powers: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut m: BTreeMap<VarId, u32> = BTreeMap::new();
        for (x, e) in powers {
            *m.entry(x).or_default() += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, x: VarId) -> u32 {
        self.0.iter().find(|&&(y, _)| y == x).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|&(x, _)| x)
    }

    fn supports_superset_of(&self, other: &Monomial) -> bool {
        other.support().all(|x| self.exponent(x) > 0)
    }

    /// The monomial with `x` removed, and the exponent it had.
    pub fn split_off(&self, x: VarId) -> (Monomial, u32) {
        let e = self.exponent(x);
        (Monomial(self.0.iter().copied().filter(|&(y, _)| y != x).collect()), e)
    }

    fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(x, _)| (x, 1)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn eval(&self, at: &[ExtNat]) -> Result<ExtNat, MissingVariable> {
        let mut v = ExtNat::one();
        for &(x, e) in &self.0 {
            v *= &at.get(x).ok_or(MissingVariable(x))?.pow(e);
        }
        Ok(v)
    }
}

/// Graded order: total degree first, then lexicographic with lower
/// variable ids ranking higher (`x0 > x1 > …`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                let o = b.0.cmp(&a.0).then(a.1.cmp(&b.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no value for variable #{0}")]
pub struct MissingVariable(pub VarId);

/// A polynomial in canonical form: like monomials merged, no zero
/// coefficients. The zero polynomial has no terms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, ExtNat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: ExtNat) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Polynomial::constant(ExtNat::one())
    }

    pub fn omega() -> Self {
        Polynomial::constant(ExtNat::Omega)
    }

    pub fn var(x: VarId) -> Self {
        Polynomial::term(ExtNat::one(), Monomial::var(x))
    }

    pub fn term(c: ExtNat, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(c, m);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExtNat, &Monomial)> {
        self.terms.iter().rev().map(|(m, c)| (c, m))
    }

    pub fn constant_term(&self) -> ExtNat {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    pub fn variables(&self) -> impl Iterator<Item = VarId> + '_ {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.support()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.into_iter()
    }

    pub fn mentions(&self, x: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(x) > 0)
    }

    pub fn add_term(&mut self, c: ExtNat, m: Monomial) {
        if c.is_zero() {
            return;
        }
        *self.terms.entry(m).or_default() += &c;
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }

    pub fn scale(&self, c: &ExtNat) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, k) in &self.terms {
            out.add_term(k * c, m.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn sum<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        ps.into_iter().fold(Polynomial::zero(), |acc, p| acc.add(p))
    }

    pub fn product<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        ps.into_iter().fold(Polynomial::one(), |acc, p| acc.mul(p))
    }

    /// Replaces `x` by `q`.
    pub fn subst(&self, x: VarId, q: &Polynomial) -> Polynomial {
        if !self.mentions(x) {
            return self.clone();
        }
        let mut powers: Vec<Polynomial> = vec![Polynomial::one()];
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(x);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(q);
                powers.push(next);
            }
            out = out.add(&powers[e as usize].mul(&Polynomial::term(c.clone(), rest)));
        }
        out
    }

    pub fn eval(&self, at: &[ExtNat]) -> Result<ExtNat, MissingVariable> {
        let mut v = ExtNat::zero();
        for (m, c) in &self.terms {
            v += &(c * &m.eval(at)?);
        }
        Ok(v)
    }

    /// Evaluation over the Boolean semiring (`1 + 1 = 1`).
    pub fn eval_bool(&self, at: &[bool]) -> bool {
        self.terms
            .keys()
            .any(|m| m.support().all(|x| at.get(x).copied().unwrap_or(false)))
    }

    /// Rewrites into a simpler polynomial computing the same function on
    /// ℕ∪{ω}: an ω-term only depends on which of its variables are
    /// nonzero, so its exponents drop to 1, and it absorbs every term
    /// whose variables include its own.
    pub fn simplify_omega(&self) -> Polynomial {
        let omegas: Vec<Monomial> = {
            let mut v: Vec<Monomial> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_omega())
                .map(|(m, _)| m.radical())
                .collect();
            v.sort_by_key(|m| m.0.len());
            let mut minimal: Vec<Monomial> = Vec::new();
            for m in v {
                if !minimal.iter().any(|k| m.supports_superset_of(k)) {
                    minimal.push(m);
                }
            }
            minimal
        };
        if omegas.is_empty() {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if !omegas.iter().any(|k| m.supports_superset_of(k)) {
                out.add_term(c.clone(), m.clone());
            }
        }
        for k in omegas {
            out.add_term(ExtNat::Omega, k);
        }
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayPoly { p: self, names }
    }
}

struct DisplayPoly<'a> {
    p: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, m)) in self.p.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || *c != ExtNat::one() {
                factors.push(c.to_string());
            }
            for &(x, e) in m.powers() {
                let name = self.names.get(x).cloned().unwrap_or_else(|| format!("#{x}"));
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// A polynomial system `x_i = F_i(x⃗)`, one equation per variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pse {
    names: Vec<String>,
    equations: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PseError {
    #[error("variable `{0}` is declared twice")]
    Duplicate(String),
    #[error("equation for `{0}` mentions an undeclared variable #{1}")]
    Undeclared(String, VarId),
}

impl Pse {
    pub fn new(names: Vec<String>, equations: Vec<Polynomial>) -> Result<Pse, PseError> {
        assert_eq!(names.len(), equations.len(), "one equation per variable");
        let mut seen = std::collections::HashSet::with_capacity(names.len());
        if let Some(n) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(PseError::Duplicate(n.clone()));
        }
        for (n, p) in names.iter().zip(&equations) {
            if let Some(x) = p.variables().find(|&x| x >= names.len()) {
                return Err(PseError::Undeclared(n.clone(), x));
            }
        }
        Ok(Pse { names, equations })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: VarId) -> &str {
        &self.names[x]
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn equation(&self, x: VarId) -> &Polynomial {
        &self.equations[x]
    }

    /// One application of `F`.
    pub fn apply(&self, at: &[ExtNat]) -> Vec<ExtNat> {
        self.equations
            .iter()
            .map(|p| p.eval(at).expect("system is closed"))
            .collect()
    }

    pub fn has_finite_coefficients(&self) -> bool {
        self.equations
            .iter()
            .all(|p| p.terms().all(|(c, _)| !c.is_omega()))
    }
}

impl fmt::Display for Pse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, p) in self.names.iter().zip(&self.equations) {
            writeln!(f, "{n} = {}", p.display(&self.names))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(k: u64) -> ExtNat {
        ExtNat::from(k)
    }

    fn names(k: usize) -> Vec<String> {
        ["x", "y", "z", "u"][..k].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn canonical_form() {
        let x = Polynomial::var(0);
        let p = x.add(&x).add(&Polynomial::zero().scale(&ExtNat::Omega));
        assert_eq!(p, Polynomial::term(n(2), Monomial::var(0)));
        assert!(x.scale(&n(0)).is_zero());
        let q = x.mul(&Polynomial::var(1)).add(&Polynomial::var(2).pow(2)).add(&Polynomial::constant(n(2)));
        assert_eq!(q.display(&names(3)).to_string(), "x*y + z^2 + 2");
        assert_eq!(Polynomial::zero().display(&names(1)).to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let x = Polynomial::var(0);
        let p = x.pow(2).add(&Polynomial::constant(n(2)));
        assert_eq!(p.eval(&[n(3)]).unwrap(), n(11));
        assert_eq!(x.scale(&n(0)).eval(&[ExtNat::Omega]).unwrap(), n(0));
        assert_eq!(x.add(&Polynomial::one()).eval(&[ExtNat::Omega]).unwrap(), ExtNat::Omega);
        assert_eq!(Polynomial::var(3).eval(&[n(1)]), Err(MissingVariable(3)));
    }

    #[test]
    fn omega_simplification_examples() {
        // ω·x² + 3·x·y + y  →  ω·x + y
        let p = Polynomial::term(ExtNat::Omega, Monomial::from_powers([(0, 2)]))
            .add(&Polynomial::term(n(3), Monomial::from_powers([(0, 1), (1, 1)])))
            .add(&Polynomial::var(1));
        let s = p.simplify_omega();
        assert_eq!(s.display(&names(2)).to_string(), "omega*x + y");
        assert_eq!(Polynomial::omega().add(&p).simplify_omega(), Polynomial::omega());
    }

    pub(crate) fn arb_poly(vars: usize, max_coeff: u64, max_deg: u32) -> impl Strategy<Value = Polynomial> {
        let mono = proptest::collection::vec((0..vars, 1..=max_deg), 0..=max_deg as usize)
            .prop_map(Monomial::from_powers)
            .prop_filter("degree bound", move |m| m.degree() <= max_deg);
        proptest::collection::vec((0..=max_coeff, mono), 0..4).prop_map(|ts| {
            let mut p = Polynomial::zero();
            for (c, m) in ts {
                p.add_term(n(c), m);
            }
            p
        })
    }

    fn arb_point(vars: usize) -> impl Strategy<Value = Vec<ExtNat>> {
        proptest::collection::vec(
            prop_oneof![3 => (0u64..4).prop_map(ExtNat::from), 1 => Just(ExtNat::Omega)],
            vars,
        )
    }

    proptest! {
        #[test]
        fn subst_commutes_with_eval(p in arb_poly(3, 3, 3), q in arb_poly(3, 3, 2), at in arb_point(3)) {
            let lhs = p.subst(1, &q).eval(&at).unwrap();
            let mut at2 = at.clone();
            at2[1] = q.eval(&at).unwrap();
            prop_assert_eq!(lhs, p.eval(&at2).unwrap());
        }

        #[test]
        fn arithmetic_commutes_with_eval(p in arb_poly(3, 3, 2), q in arb_poly(3, 3, 2), at in arb_point(3)) {
            let (a, b) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
            prop_assert_eq!(p.add(&q).eval(&at).unwrap(), &a + &b);
            prop_assert_eq!(p.mul(&q).eval(&at).unwrap(), &a * &b);
        }

        #[test]
        fn omega_simplification_preserves_values(
            p in arb_poly(3, 2, 3),
            w in arb_poly(3, 1, 2),
            at in arb_point(3),
        ) {
            let p = p.add(&w.scale(&ExtNat::Omega));
            prop_assert_eq!(p.simplify_omega().eval(&at).unwrap(), p.eval(&at).unwrap());
        }
    }
}
