//! Three-valued answers for fuel-bounded checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Budget for bounded evaluation: VM steps per run and how many inputs
/// (or tuple entries) are examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fuel {
    pub steps: u64,
    pub inputs: u64,
}

impl Fuel {
    pub fn new(steps: u64, inputs: u64) -> Result<Self> {
        if steps == 0 || inputs == 0 {
            return Err(Error::repr("fuel components must be positive"));
        }
        Ok(Fuel { steps, inputs })
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel {
            steps: 100_000,
            inputs: 64,
        }
    }
}

impl fmt::Display for Fuel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.steps, self.inputs)
    }
}

/// Kleene-style truth value. `Unknown` keeps the fuel that ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum Tri {
    Verified,
    Refuted,
    Unknown { fuel: Fuel },
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Verified
        } else {
            Tri::Refuted
        }
    }

    pub fn is_verified(self) -> bool {
        self == Tri::Verified
    }

    pub fn is_refuted(self) -> bool {
        self == Tri::Refuted
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, Tri::Unknown { .. })
    }

    pub fn and(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::Refuted, _) | (_, Tri::Refuted) => Tri::Refuted,
            (Tri::Verified, Tri::Verified) => Tri::Verified,
            (u @ Tri::Unknown { .. }, _) | (_, u @ Tri::Unknown { .. }) => u,
        }
    }

    pub fn or(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::Verified, _) | (_, Tri::Verified) => Tri::Verified,
            (Tri::Refuted, Tri::Refuted) => Tri::Refuted,
            (u @ Tri::Unknown { .. }, _) | (_, u @ Tri::Unknown { .. }) => u,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Tri {
        match self {
            Tri::Verified => Tri::Refuted,
            Tri::Refuted => Tri::Verified,
            u => u,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Tri::Verified => "verified",
            Tri::Refuted => "refuted",
            Tri::Unknown { .. } => "unknown",
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tri::Unknown { fuel } => write!(f, "unknown (fuel {fuel})"),
            t => f.write_str(t.label()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const U: Tri = Tri::Unknown {
        fuel: Fuel {
            steps: 1,
            inputs: 1,
        },
    };

    #[test]
    fn kleene_tables() {
        use Tri::*;
        assert_eq!(Refuted.and(U), Refuted);
        assert_eq!(Verified.and(U), U);
        assert_eq!(Verified.or(U), Verified);
        assert_eq!(Refuted.or(U), U);
        assert_eq!(U.not(), U);
        assert_eq!(Verified.and(Verified), Verified);
        assert_eq!(Refuted.or(Refuted), Refuted);
    }

    #[test]
    fn fuel_must_be_positive() {
        assert!(Fuel::new(0, 3).is_err());
        assert!(Fuel::new(3, 0).is_err());
        assert!(Fuel::new(1, 1).is_ok());
    }
}
