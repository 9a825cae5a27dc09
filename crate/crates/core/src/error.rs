use thiserror::Error;

use crate::quiver::QuiverIssue;

/// Errors raised by the library.
///
/// `Input` and `Precondition` map to CLI exit code 2, `BudgetExceeded` to 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {}", join_issues(.0))]
    InvalidQuiver(Vec<QuiverIssue>),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exceeded: estimated {estimate} points, budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
}

fn join_issues(issues: &[QuiverIssue]) -> String {
    issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
