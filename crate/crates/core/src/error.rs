use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate identifier `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: unknown vertex `{id}`")]
    UnknownVertex { line: usize, id: String },
    #[error("line {line}: unknown arrow `{id}`")]
    UnknownArrow { line: usize, id: String },
    #[error("line {line}: relation `{first} {second}` is not a composable pair")]
    NotComposable {
        line: usize,
        first: String,
        second: String,
    },
    #[error("unknown vertex `{0}`")]
    NoSuchVertex(String),
    #[error("quiver is not gentle: {0}")]
    NotGentle(String),
    #[error("algebra is infinite dimensional (all-allowed cycle)")]
    InfiniteDimensional,
    #[error("surface has punctures; operation requires an unpunctured surface")]
    Punctured,
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("arc `{0}` is a loop (both ends at one marked point)")]
    LoopArc(String),
    #[error("{0}")]
    Precondition(String),
    #[error("paths are not composable: target {0} differs from source {1}")]
    Composability(String, String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("map is not closed")]
    NotClosed,
    #[error("not an exceptional pair")]
    NotExceptionalPair,
    #[error("braid generator {index} out of range for a sequence of length {len}")]
    GeneratorRange { index: i32, len: usize },
    #[error("zero complex")]
    ZeroComplex,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
