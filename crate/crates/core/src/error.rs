use thiserror::Error;

use crate::circuit::Diagnostic;

/// Errors raised by circuit construction, analysis and transformation passes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid circuit: {}", format_diagnostics(.0))]
    InvalidCircuit(Vec<Diagnostic>),
    #[error("assignment has {got} values but the circuit has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("circuit contains constant nodes")]
    HasConstants,
    #[error("circuit contains negated literals")]
    NonMonotone,
    #[error("expected a {expected} circuit, found {found}")]
    WrongSemiring {
        expected: &'static str,
        found: &'static str,
    },
    #[error("circuit has {0} outputs where exactly one is required")]
    MultipleOutputs(usize),
    #[error("set size cap of {0} vectors exceeded")]
    CapExceeded(usize),
    #[error("degree overflow while producing exponent vectors")]
    DegreeOverflow,
    #[error("run budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("arity {n} exceeds the truth-table cap {cap}")]
    ArityTooLarge { n: usize, cap: usize },
    #[error("the circuit does not compute the given function")]
    NotComputingF,
    #[error("function is constant")]
    ConstantFunction,
    #[error("circuit is not a read-{0} circuit for the given function")]
    NotReadK(u64),
    #[error("produced exponent set differs from the lowest ones of the function")]
    ExponentSetNotLowF,
    #[error("produced polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {0} is below 3")]
    DegreeTooSmall(u64),
    #[error("circuit does not approximate the problem within the requested factor")]
    NotApproximating,
    #[error("constant {0} is not a positive integer")]
    NonIntegralConstant(String),
    #[error("set is empty")]
    EmptySet,
    #[error("invalid line family: {0}")]
    InvalidFamily(String),
    #[error("{k} does not divide {m}")]
    Divisibility { m: usize, k: usize },
    #[error("size overflow: {0}")]
    SizeOverflow(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn format_diagnostics(d: &[Diagnostic]) -> String {
    d.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
