use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} must be odd and at least 3")]
    InvalidModulus(u64),
    #[error("{value} is congruent to 0 modulo {modulus}")]
    ZeroResidue { value: i64, modulus: u64 },
    #[error("residues taken modulo {left} and {right} cannot be combined")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("cell ({row}, {col}) holds {value}, which is not a canonical nonzero residue modulo {modulus}")]
    InvalidEntry {
        row: usize,
        col: usize,
        value: i64,
        modulus: u64,
    },
    #[error("array shape is invalid: {0}")]
    Shape(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{what} is out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no compatible ordering construction for a {rows}x{cols} array (both sides even)")]
    NoCompatibleConstruction { rows: usize, cols: usize },
    #[error("ordering of {part} is not simple")]
    SimplicityLost { part: String },
    #[error("orderings do not describe the same array: {0}")]
    Mismatch(String),
    #[error("part {part} has repeated partial sums")]
    NotSimple { part: usize },
    #[error("not a Heffter system: {0}")]
    NotHeffter(String),
    #[error("face set is not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("rotation at vertex {vertex} is not a permutation: {detail}")]
    Inconsistent { vertex: u64, detail: String },
    #[error("vertex {vertex} is a pinch point ({orbits} rotation orbits)")]
    PinchPoint { vertex: u64, orbits: usize },
    #[error("Euler characteristic {euler} does not give a nonnegative integer genus")]
    NotOrientableSurface { euler: i64 },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("exhaustive search found no valid permutation")]
    NoneExists,
    #[error("{0}")]
    TooLarge(String),
    #[error("line {line}{}: {message}", column.map(|c| format!(", field {c}")).unwrap_or_default())]
    Parse {
        line: usize,
        column: Option<usize>,
        message: String,
    },
}
