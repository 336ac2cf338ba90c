use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no walk between {0} and {1}")]
    Unreachable(String, String),
    #[error("cannot compose: {0}")]
    Composition(String),
    #[error("walks have different lengths ({0} vs {1})")]
    Length(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cycle enumeration exceeded the cap of {0} cycles")]
    CycleCap(usize),
    #[error("gamma insertion mismatch: {0}")]
    Gamma(String),
    #[error("witness path failed verification at step {0}")]
    Verification(usize),
    #[error("support is not block-like: {0}")]
    Shape(String),
    #[error("cannot fold a single cell whose vertex has no loop")]
    FoldImpossible,
    #[error("atlas has no transition from class {class} along vertex {vertex}")]
    AtlasIncomplete { class: usize, vertex: String },
    #[error("atlas is inconsistent at cell ({0}, {1})")]
    AtlasUnsound(i64, i64),
    #[error("gluing failed: {0}")]
    GluingFailed(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("invalid cactus: {0}")]
    InvalidCactus(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
