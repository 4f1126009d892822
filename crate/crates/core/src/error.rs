use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside an operation's domain (bad shapes, non-projective input, level out of range).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exhaustive enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {what} needs {needed} items, budget is {budget}")]
    BudgetExceeded { what: String, needed: String, budget: u64 },
    /// An internal consistency check failed. Always a bug.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn inconsistent<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Inconsistency(msg.into()))
}

/// Checks that `base^exp` enumeration items fit in `budget`.
pub(crate) fn check_budget(what: &str, base: u64, exp: usize, budget: u64) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..exp {
        total = match total.checked_mul(base) {
            Some(t) if t <= budget => t,
            _ => {
                return Err(Error::BudgetExceeded {
                    what: what.to_string(),
                    needed: format!("{base}^{exp}"),
                    budget,
                })
            }
        };
    }
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed: format!("{base}^{exp}"),
            budget,
        });
    }
    Ok(total)
}
