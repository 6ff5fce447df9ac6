//! Logic selection and the optional η-long restriction.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Logic {
    /// Proof by contradiction through μ-abstraction.
    #[default]
    Classical,
    /// Ex falso only: from `Γ ⊢ ⊥` conclude any other formula.
    Intuitionistic,
    /// No rule for `⊥`; it behaves as an ordinary atom.
    Minimal,
}

impl Logic {
    pub const ALL: [Logic; 3] = [Logic::Classical, Logic::Intuitionistic, Logic::Minimal];

    pub fn name(self) -> &'static str {
        match self {
            Logic::Classical => "classical",
            Logic::Intuitionistic => "intuitionistic",
            Logic::Minimal => "minimal",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown logic `{0}` (expected classical, intuitionistic or minimal)")]
pub struct UnknownLogic(pub String);

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "classical" | "c" => Ok(Logic::Classical),
            "intuitionistic" | "i" => Ok(Logic::Intuitionistic),
            "minimal" | "m" => Ok(Logic::Minimal),
            _ => Err(UnknownLogic(s.to_string())),
        }
    }
}

/// Which proofs are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mode {
    pub logic: Logic,
    /// Only count proofs in η-long normal form.
    pub eta_long: bool,
}

impl Mode {
    pub const fn new(logic: Logic, eta_long: bool) -> Mode {
        Mode { logic, eta_long }
    }

    pub const fn classical() -> Mode {
        Mode::new(Logic::Classical, false)
    }

    pub const fn intuitionistic() -> Mode {
        Mode::new(Logic::Intuitionistic, false)
    }

    pub const fn minimal() -> Mode {
        Mode::new(Logic::Minimal, false)
    }

    pub const fn eta(self) -> Mode {
        Mode::new(self.logic, true)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eta_long {
            write!(f, "{}+eta-long", self.logic)
        } else {
            write!(f, "{}", self.logic)
        }
    }
}
