use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gluing matrix has determinant {0}, expected -1")]
    DeterminantError(i64),
    #[error("longitude image has nonzero free part {0}")]
    NonTorsionLongitude(i64),
    #[error("zero element listed in the torsion complement")]
    ZeroInComplement,
    #[error("torsion complement element with negative free part {0}")]
    NegativePhiInComplement(i64),
    #[error("meridian image has free part {found}, expected {expected}")]
    BadMeridianFreePart { expected: i64, found: i64 },
    #[error("reduced Alexander polynomial is not k(1+t+...+t^(g-1)) mod t^g-1 (g={g}, k={k})")]
    Lemma73Violation { g: i64, k: i64 },
    #[error("slope {0} does not give a Floer simple knot")]
    NotFloerSimpleSlope(String),
    #[error("witness is the homological longitude")]
    WitnessOnLongitude,
    #[error("witness lies on an interval endpoint (delta={delta}, gamma={gamma})")]
    WitnessOnIntervalBoundary { delta: i64, gamma: i64 },
    #[error("filling along the longitude")]
    LongitudeFilling,
    #[error("fiber {0}/{1} is an integer")]
    IntegerFiberSlope(i64, i64),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("glued manifold is not a rational homology sphere")]
    NotRationalHomologySphere,
    #[error("manifold is not a generalized solid torus")]
    NotGeneralizedSolidTorus,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable variant name, used verbatim in CLI output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DeterminantError(_) => "DeterminantError",
            Error::NonTorsionLongitude(_) => "NonTorsionLongitude",
            Error::ZeroInComplement => "ZeroInComplement",
            Error::NegativePhiInComplement(_) => "NegativePhiInComplement",
            Error::BadMeridianFreePart { .. } => "BadMeridianFreePart",
            Error::Lemma73Violation { .. } => "Lemma73Violation",
            Error::NotFloerSimpleSlope(_) => "NotFloerSimpleSlope",
            Error::WitnessOnLongitude => "WitnessOnLongitude",
            Error::WitnessOnIntervalBoundary { .. } => "WitnessOnIntervalBoundary",
            Error::LongitudeFilling => "LongitudeFilling",
            Error::IntegerFiberSlope(..) => "IntegerFiberSlope",
            Error::HypothesisNotMet(_) => "HypothesisNotMet",
            Error::NotRationalHomologySphere => "NotRationalHomologySphere",
            Error::NotGeneralizedSolidTorus => "NotGeneralizedSolidTorus",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
