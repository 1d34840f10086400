use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("non-finite input")]
    NonFinite,
    #[error("precision of {0} bits is below the 8-bit minimum")]
    PrecisionTooLow(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a bounded polytope")]
    NotBounded,
    #[error("not simple: vertex {vertex} is tight on {tight} facets")]
    NotSimple { vertex: usize, tight: usize },
    #[error("non-simple vertex {vertex}: {degree} neighbors")]
    NonSimpleVertex { vertex: usize, degree: usize },
    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("degenerate direction for vertex {vertex}")]
    DegenerateDirection { vertex: usize },

    #[error("need 2m-1 = {needed} coefficients, got {got}")]
    InsufficientCoefficients { needed: usize, got: usize },
    #[error("cannot determine N: {reason}")]
    CannotDetermineN { reason: String },
    #[error("Padé system ill-conditioned (condition estimate {condition:e})")]
    PadeIllConditioned { condition: f64 },
    #[error("root finding failed (max residual {max_residual:e})")]
    RootFindingFailed { max_residual: f64 },

    #[error("inconsistent N: {0:?}")]
    InconsistentN(Vec<usize>),
    #[error("plane alignment failed at plane {plane} (deviation {deviation:e})")]
    AlignmentFailed { plane: usize, deviation: f64 },
    #[error("coincident projections on z_re in plane {plane}")]
    TiedProjections { plane: usize },
    #[error("direction frame is singular")]
    SingularFrame,
    #[error("budget exhausted after {attempts} attempts: {}", trail.join("; "))]
    BudgetExhausted { attempts: usize, trail: Vec<String> },

    #[error("vertex sets differ in size: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("export is 3D only")]
    ExportNot3d,
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Errors that a fresh random direction or frame can plausibly cure.
    pub fn is_resampleable(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDirection { .. }
                | Error::CannotDetermineN { .. }
                | Error::PadeIllConditioned { .. }
                | Error::RootFindingFailed { .. }
                | Error::InconsistentN(_)
                | Error::AlignmentFailed { .. }
                | Error::TiedProjections { .. }
                | Error::SingularFrame
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
