use thiserror::Error;

/// Errors surfaced by the dynamical systems and testers.
///
/// Depth-loss events (truncated boundary words, odometer overflow) are always
/// reported, never silently absorbed.
#[derive(Debug, Error)]
pub enum Error {
    /// Left concatenation cancelled the entire stored prefix of a boundary
    /// point; the caller must deepen the truncation.
    #[error("boundary prefix exhausted: word of length {word_len} against depth {depth}")]
    DepthExhausted { word_len: usize, depth: usize },

    /// The odometer was stepped at the all-ones pattern of its stored depth.
    #[error("odometer overflow at depth {depth}")]
    Overflow { depth: usize },

    /// Two of the four points of a cross-ratio tuple coincide.
    #[error("degenerate tuple: points {i} and {j} coincide")]
    DegenerateTuple { i: usize, j: usize },

    /// A letter sequence contains an adjacent inverse pair.
    #[error("letter sequence is not reduced at position {position}")]
    NotReduced { position: usize },

    /// A matrix with zero determinant was offered as a Möbius map.
    #[error("singular matrix is not a Möbius map")]
    SingularMatrix,

    /// The ping-pong inclusions failed at the requested separation.
    #[error("ping-pong certificate failed: {reason}")]
    PingPongFailed { reason: String },

    /// The blow-up search hit its iteration cap.
    #[error("blow-up search exhausted after {iterations} iterations (achieved mass {achieved})")]
    SearchExhausted { iterations: usize, achieved: f64 },

    /// Images of the four test arcs overlap at the working resolution.
    #[error("arc images collide under word {word}; narrow the arcs")]
    ArcCollision { word: String },

    /// An excursion exceeded the simulation horizon.
    #[error("excursion exceeded horizon of {horizon} steps")]
    HorizonExceeded { horizon: usize },

    /// A weight vector is not a probability distribution.
    #[error("invalid distribution: {reason}")]
    InvalidDistribution { reason: String },

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    /// Configuration file problems.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
