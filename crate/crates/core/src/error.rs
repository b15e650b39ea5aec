use alloc::string::String;
use thiserror::Error;

/// Errors raised while building, parsing or enumerating polynomials.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HuboError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(
        "line {line}, column {column}: coefficient `{token}` is not an integer \
         (scale rational coefficients to integers before compiling)"
    )]
    NonInteger { line: usize, column: usize, token: String },
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("assignment has {found} bits, polynomial has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{vars} variables exceed the enumeration bound of {limit}")]
    EnumerationBound { vars: usize, limit: usize },
    #[error("triangle ({0}, {1}, {2}) repeats a vertex")]
    DegenerateTriangle(String, String, String),
    #[error("clamp refers to undeclared bit {0}")]
    UndeclaredClamp(String),
    #[error("invalid factorization instance: {0}")]
    InvalidFactorization(&'static str),
}

/// Errors raised by gadget construction and profile enumeration.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("hyperedge of order {0} is not supported (need at least 2)")]
    InvalidOrder(usize),
    #[error("gadget weight must be at least 1, got {0}")]
    InvalidWeight(i64),
    #[error("gadget ports must be distinct")]
    DuplicatePort,
    #[error("clamp has {found} bits, fragment has {expected} ports")]
    ClampLength { expected: usize, found: usize },
    #[error("clamped ports {0} and {1} are adjacent")]
    ClampViolatesBlockade(usize, usize),
    #[error("fragments expose {0} and {1} ports")]
    PortMismatch(usize, usize),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Errors raised by the exact independent-set solver.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("branch-and-bound node budget of {0} exhausted")]
    NodeBudget(u64),
    #[error("{found} data variables exceed the projection limit of {limit}")]
    TooManyDataAtoms { found: usize, limit: usize },
    #[error("{vars} data variables exceed the clamp enumeration bound of {limit}")]
    EnumerationBound { vars: usize, limit: usize },
    #[error("clamped data atoms {0} and {1} are adjacent")]
    AdjacentData(usize, usize),
}

/// Errors raised while lowering polynomials to atom graphs.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CompileError {
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Expansion(#[from] ExpandError),
    #[error("polynomial variables do not match the compiled graph")]
    VariableMismatch,
    #[error(transparent)]
    Hubo(#[from] HuboError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Errors raised by superatom expansion.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExpandError {
    #[error("cannot reach a maximum clique of {requested}; smallest achievable is {achievable}")]
    CliqueBound { requested: usize, achievable: usize },
    #[error("only hyperedge gadgets can be expanded")]
    NotHyperedge,
    #[error("expansion failed certification at clamp {clamp:#b}")]
    Uncertified { clamp: u64 },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

/// Errors raised by the quantum simulator.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum SimError {
    #[error("{atoms} atoms exceed the simulation cap of {cap}")]
    AtomCap { atoms: usize, cap: usize },
    #[error("parameter `{0}` is not finite")]
    NonFinite(&'static str),
    #[error("blockade strength must be positive")]
    NonPositiveBlockade,
    #[error("invalid schedule: {0}")]
    InvalidSchedule(&'static str),
    #[error("sweep needs at least {min} steps, got {steps}")]
    TooFewSteps { steps: usize, min: usize },
    #[error("norm drifted by {drift:e}; rerun with at least {suggested_steps} steps")]
    NormDrift { drift: f64, suggested_steps: usize },
    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),
}
