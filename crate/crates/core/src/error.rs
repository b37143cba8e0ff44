use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported algebra rank {0}: only SU(2) and SU(3) are supported")]
    UnsupportedRank(u32),

    #[error("level must be positive, got {0}")]
    NonPositiveLevel(u32),

    #[error("labels {labels:?} are not a level-{level} weight of SU({rank})")]
    OutsideAlcove { labels: Vec<u32>, rank: u32, level: u32 },

    #[error("SU({rank})_{level} has no simple-current fixed point ({rank} does not divide {level})")]
    NoFixedPoint { rank: u32, level: u32 },

    #[error("affine Weyl folding of {weight:?} did not reach the alcove within {depth} reflections")]
    WeylDepth { weight: Vec<i64>, depth: usize },

    #[error("S-matrix check failed: {what} (residual {residual:.3e})")]
    Unitarity { what: &'static str, residual: f64 },

    #[error("Verlinde coefficient N[{a}, {b} -> {c}] = {value} is not within {tolerance:e} of a non-negative integer")]
    NotIntegral {
        a: String,
        b: String,
        c: String,
        value: f64,
        tolerance: f64,
    },

    #[error("fusion backends disagree on N[{a}, {b} -> {c}]: Kac-Walton gives {exact}, Verlinde gives {numeric}")]
    BackendMismatch {
        a: String,
        b: String,
        c: String,
        exact: u32,
        numeric: f64,
    },

    #[error("subsystem search refused: {count} fields exceeds the limit of {limit}")]
    TooManyFields { count: usize, limit: usize },

    #[error("degeneracy check mismatch: criterion gives {criterion:?}, simple currents give {currents:?}")]
    DegeneracyMismatch {
        criterion: Vec<String>,
        currents: Vec<String>,
    },

    #[error("edge multiplicity to {odd} is not constant on the orbit of {pair}")]
    NotWellDefined { pair: String, odd: String },

    #[error("split-edge solver found no solution for SU({rank})_{level}")]
    NoSplitSolution { rank: u32, level: u32 },

    #[error("split-edge solver found {count} distinct solutions for SU({rank})_{level}")]
    AmbiguousSplit { rank: u32, level: u32, count: usize },

    #[error("graph check '{name}' failed (residual {residual:.3e})")]
    GraphCheck { name: &'static str, residual: f64 },

    #[error("{what}: computed {computed}, expected {expected}")]
    IndexMismatch {
        what: &'static str,
        computed: f64,
        expected: f64,
    },

    #[error("graph is not connected: {0}")]
    Disconnected(String),

    #[error("even-vertex count {computed} differs from closed form {expected}")]
    CountMismatch { computed: usize, expected: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal error: {0}")]
    Internal(String),
}
