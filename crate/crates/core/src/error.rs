//! Error type shared by all transform modules.

/// Errors reported by the transforms, their inverses, and the oracles.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix determinant below the invertibility floor.
    #[error("matrix is numerically singular (det = {det:.3e})")]
    SingularMatrix { det: f64 },
    /// An operation that reads off a term was given an empty exponential polynomial.
    #[error("exponential polynomial has no terms")]
    EmptyPoly,
    /// Pole positions must be strictly increasing and inside (0, 1).
    #[error("invalid delta distribution: {0}")]
    InvalidDistribution(String),
    /// Nothing left to peel: the off-diagonal entry has no terms.
    #[error("off-diagonal entry is empty; nothing to peel")]
    EmptyOffDiagonal,
    /// The diagonal read-off coefficient is too small for a stable arctan.
    #[error("diagonal coefficient at frequency zero is {magnitude:.3e}, below the peel floor {floor:.3e}")]
    VanishingDiagonal { magnitude: f64, floor: f64 },
    /// The input is not in the image of the transform.
    #[error("input is not in the transform's image: {0}")]
    NotInImage(String),
    /// Recovered poles leave a gap at or below the frequency-merge tolerance.
    #[error("degenerate gap between recovered poles (gap = {gap:.3e})")]
    DegenerateGap { gap: f64 },
    /// Brute-force enumeration requested beyond its size cap.
    #[error("size {n} exceeds the brute-force cap {cap}")]
    TooLarge { n: usize, cap: usize },
    /// Paired inputs have inconsistent lengths.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    /// Samples do not come from a constant-mass configuration.
    #[error("not a constant-mass configuration: {0}")]
    NotConstMass(String),
    /// The product of cosines of the gaps is numerically zero.
    #[error("cosine-product normalizer is {magnitude:.3e}, too small to divide by")]
    VanishingC { magnitude: f64 },
    /// Step width must stay below the smallest pole gap.
    #[error("step width {epsilon:.3e} is not smaller than the smallest gap {min_gap:.3e}")]
    EpsilonTooLarge { epsilon: f64, min_gap: f64 },
    /// Instance-generation constraints cannot be satisfied.
    #[error("bad generation constraints: {0}")]
    BadConstraints(String),
    /// A gap vector must have positive entries summing to one.
    #[error("invalid gap vector: {0}")]
    InvalidGapVector(String),
    /// A mass vector must be increasing with the required endpoints.
    #[error("invalid mass vector: {0}")]
    InvalidMassVector(String),
    /// Values fed to the public API must be finite.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    /// Input file does not parse as the expected JSON shape.
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
