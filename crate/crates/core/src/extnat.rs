//! Natural numbers extended with ω, where `0·ω = 0`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(BigUint),
    Omega,
}

impl ExtNat {
    pub fn zero() -> Self {
        ExtNat::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        ExtNat::Finite(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtNat::Finite(n) if n.is_zero())
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, ExtNat::Omega)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Omega => None,
        }
    }

    /// The value as a `u64`, if it is finite and fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|n| u64::try_from(n).ok())
    }

    pub fn pow(&self, e: u32) -> Self {
        match self {
            _ if e == 0 => ExtNat::one(),
            ExtNat::Finite(n) => ExtNat::Finite(n.pow(e)),
            ExtNat::Omega => ExtNat::Omega,
        }
    }
}

impl Default for ExtNat {
    fn default() -> Self {
        ExtNat::zero()
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n.into())
    }
}

impl From<BigUint> for ExtNat {
    fn from(n: BigUint) -> Self {
        ExtNat::Finite(n)
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Omega) => Less,
            (ExtNat::Omega, ExtNat::Finite(_)) => Greater,
            (ExtNat::Omega, ExtNat::Omega) => Equal,
        }
    }
}

impl Add<&ExtNat> for &ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: &ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b),
            _ => ExtNat::Omega,
        }
    }
}

impl Mul<&ExtNat> for &ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: &ExtNat) -> ExtNat {
        if self.is_zero() || rhs.is_zero() {
            return ExtNat::zero();
        }
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a * b),
            _ => ExtNat::Omega,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        &self + &rhs
    }
}

impl Mul for ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: ExtNat) -> ExtNat {
        &self * &rhs
    }
}

impl AddAssign<&ExtNat> for ExtNat {
    fn add_assign(&mut self, rhs: &ExtNat) {
        match (&mut *self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => *a += b,
            _ => *self = ExtNat::Omega,
        }
    }
}

impl MulAssign<&ExtNat> for ExtNat {
    fn mul_assign(&mut self, rhs: &ExtNat) {
        *self = &*self * rhs;
    }
}

impl Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> Self {
        iter.fold(ExtNat::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for ExtNat {
    fn product<I: Iterator<Item = ExtNat>>(iter: I) -> Self {
        iter.fold(ExtNat::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Omega => f.write_str("omega"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an extended natural: `{0}`")]
pub struct ParseExtNatError(pub String);

impl FromStr for ExtNat {
    type Err = ParseExtNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "omega" | "w" | "ω" => Ok(ExtNat::Omega),
            t => t
                .parse::<BigUint>()
                .map(ExtNat::Finite)
                .map_err(|_| ParseExtNatError(s.to_string())),
        }
    }
}
