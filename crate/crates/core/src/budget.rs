use std::fmt;

use crate::error::{Error, Result};

/// Environment variable consulted by the CLI when `--budget` is absent.
pub const BUDGET_ENV: &str = "SL_ORBITS_BUDGET";

/// Upper bound on the number of candidates any exhaustive enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Domain("budget must be at least 1".into()));
        }
        Ok(Self(limit))
    }

    pub fn limit(self) -> u64 {
        self.0
    }

    /// Admits a search over `base^exp` candidates, or refuses naming the budget.
    pub fn admit(self, base: u64, exp: u32) -> Result<u64> {
        match base.checked_pow(exp) {
            Some(count) if count <= self.0 => Ok(count),
            _ => Err(Error::BudgetExceeded {
                required: format!("{base}^{exp}"),
                budget: self.0,
            }),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admits_and_refuses() {
        let b = Budget::new(1000).unwrap();
        assert_eq!(b.admit(10, 3).unwrap(), 1000);
        let err = b.admit(10, 4).unwrap_err();
        assert_eq!(
            err.to_string(),
            "refusing to enumerate 10^4 candidates: budget is 1000"
        );
        assert!(Budget::DEFAULT.admit(1 << 20, 4).is_err());
        assert!(Budget::new(0).is_err());
    }
}
