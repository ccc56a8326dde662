//! Error types shared across the crate.

use thiserror::Error;

/// Errors from vector/matrix construction and the class machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid bit character {found:?} at position {position}")]
    InvalidBitChar { found: char, position: usize },
    #[error("degree bound must be at least 1")]
    ZeroDegreeBound,
    #[error("exact class requires n >= m (got n={n}, m={m})")]
    ExactClassTooSmall { n: usize, m: usize },
    #[error("per-column choice count overflows; class is too large to sample")]
    SampleSpaceOverflow,
}

/// Errors from the wiring text format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line `wiring <n>`")]
    MissingHeader,
    #[error("bad header {found:?}: expected `wiring <n>`")]
    BadHeader { found: String },
    #[error("bad dimension {found:?}: {reason}")]
    BadDimension { found: String, reason: String },
    #[error("row {row} has length {got}, expected {expected}")]
    WrongRowLength {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("missing row {row} of {expected}")]
    MissingRow { row: usize, expected: usize },
    #[error("invalid character {found:?} in row {row}, column {column}")]
    InvalidCharacter {
        row: usize,
        column: usize,
        found: char,
    },
    #[error("bad configuration line: {reason}")]
    BadConfigLine { reason: String },
    #[error("unexpected trailing content at line {line}")]
    TrailingContent { line: usize },
}

/// Errors from the exact solver.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("dimension mismatch: wiring is {n}x{n}, vector has length {got}")]
    DimensionMismatch { n: usize, got: usize },
    #[error(
        "component {{{component}}} has column-space rank {rank}, above the cap {cap}; \
         raise the cap to proceed"
    )]
    RankOverCap {
        /// 1-based vertices of the offending component, comma separated.
        component: String,
        rank: usize,
        cap: usize,
    },
    #[error("column-space rank {rank} is above the cap {cap}")]
    ConfigRankOverCap { rank: usize, cap: usize },
    #[error("co-rank {corank} is above the cap {cap}")]
    ConfigCorankOverCap { corank: usize, cap: usize },
    #[error("allowed press set has {size} vertices, above the cap {cap}")]
    AllowedSetTooLarge { size: usize, cap: usize },
    #[error("n = {n} is above the exhaustive-enumeration cap {cap}")]
    TooManyButtons { n: usize, cap: usize },
}

/// Errors from the construction builders and formula evaluators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("nu-pairs requires n >= 1")]
    NuPairsRange,
    #[error("nu-star requires n >= m >= 2 (got n={n}, m={m})")]
    NuStarRange { n: usize, m: usize },
    #[error("mu2-star requires n >= 2 (got n={n})")]
    Mu2StarRange { n: usize },
    #[error("mu3-star requires n >= 3 (got n={n})")]
    Mu3StarRange { n: usize },
    #[error("degree extension requires 1 <= n' <= n (got n={n}, n'={n_prime})")]
    ExtendRange { n: usize, n_prime: usize },
    #[error("degree extension requires a base from an exact class")]
    ExtendBaseNotExact,
    #[error("no closed form is available for {kind}(n,m) with m = {m}")]
    FormulaUnknown { kind: String, m: usize },
    #[error("{kind}(n,m) is undefined or unsupported for n={n}, m={m}")]
    FormulaRange { kind: String, n: usize, m: usize },
}

/// Errors from the degree-2 lighting procedure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LightingError {
    #[error("column {column} has degree {degree}; the lighting procedure needs degree <= 2")]
    NotDegreeTwo { column: usize, degree: usize },
}

/// Errors from exhaustive class search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("class has {total} wirings, above the budget {budget}; raise --budget to proceed")]
    BudgetExceeded { total: u128, budget: u64 },
    #[error("class size overflows the counter; far above any workable budget")]
    CountOverflow,
    #[error("exhaustive search supports n <= {max} (got n={n})")]
    TooManyVertices { n: usize, max: usize },
    #[error("search rank {rank} is infeasible")]
    RankInfeasible { rank: usize },
    #[error(transparent)]
    Class(#[from] Gf2Error),
    #[error(transparent)]
    Solve(#[from] SolveError),
}
