use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
///
/// Failure of a randomized property is *not* an error; suites report those as
/// data. Errors are reserved for violated preconditions, malformed input and
/// exceeded iteration caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division of rationals by zero.
    DivisionByZero,
    /// A value that was required to be dyadic (denominator a power of two).
    NotDyadic(String),
    /// An evaluation point outside `[0,1]` or outside a map's domain.
    OutOfDomain(String),
    /// A breakpoint sequence violating monotonicity, endpoints or
    /// canonicality; `index` names the first offending entry.
    BadBreakpoint { index: usize, reason: String },
    /// An operation required `g(I) = J` (or `g(I) = I`) and it did not hold.
    IntervalNotMapped(String),
    /// The element is not a member of the group the operation needs.
    NotAMember(String),
    /// An orbit or search loop exceeded its cap; the input is not in the
    /// operation's domain or is pathological.
    IterationCap(&'static str),
    /// A stated precondition does not hold.
    Precondition(String),
    /// A construction verified its own postcondition at runtime and failed.
    Postcondition(String),
    /// A named edge of the conjugation diagram in the word identity failed.
    DiagramEdge(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotDyadic(v) => write!(f, "value {v} is not dyadic"),
            Error::OutOfDomain(v) => write!(f, "point {v} is out of domain"),
            Error::BadBreakpoint { index, reason } => {
                write!(f, "bad breakpoint at index {index}: {reason}")
            }
            Error::IntervalNotMapped(d) => write!(f, "interval not mapped as required: {d}"),
            Error::NotAMember(d) => write!(f, "not a member: {d}"),
            Error::IterationCap(op) => write!(f, "iteration cap exceeded in {op}"),
            Error::Precondition(d) => write!(f, "precondition violated: {d}"),
            Error::Postcondition(d) => write!(f, "postcondition check failed: {d}"),
            Error::DiagramEdge(d) => write!(f, "diagram edge failed: {d}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
