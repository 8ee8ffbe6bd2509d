use thiserror::Error;

use crate::symbolic::Chart;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("chart mismatch: {0:?} vs {1:?}")]
    ChartMismatch(Chart, Chart),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("coordinate index {0} out of range 0..=3")]
    CoordinateIndex(usize),
    #[error("theta indices must satisfy 0 <= mu < nu <= 3, got ({0}, {1})")]
    ThetaIndices(u8, u8),
    #[error("negative power on coordinate {0}; only the second coordinate may be inverted")]
    NegativePower(usize),
    #[error("Minkowski expressions cannot carry powers of a or exponentials")]
    MinkowskiTranscendental,
    #[error("division by zero: z1 = 0 under a negative power")]
    DivisionByZero,
    #[error("truncated exponential needs every term to have deformation degree >= 1")]
    DegreeZeroExponent,
    #[error("coproduct slot is not a first-order vector field")]
    NotVectorField,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("twist indices must be distinct spatial indices in 1..=3, got (i, k, l) = ({0}, {1}, {2})")]
    InvalidIndices(u8, u8, u8),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("gamma function pole at {0}")]
    GammaPole(f64),
    #[error("frequency must be nonzero (gamma pole at omega = 0)")]
    ZeroFrequency,
    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("invalid physical parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("oracle needs n >= 1, got {0}")]
    OracleOrder(u32),
    #[error("adaptive quadrature did not converge: estimate {estimate_re}+{estimate_im}i, error {error:e} after {evaluations} evaluations")]
    NotConverged {
        estimate_re: f64,
        estimate_im: f64,
        error: f64,
        evaluations: usize,
    },
    #[error("mode term with growing exponential e^(+{0} a tau) is not integrable")]
    GrowingMode(i32),
    #[error("mode term carries a polynomial factor tau^{0}; no closed-form transform")]
    SecularTerm(i32),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("cocycle check needs truncation order >= 2, got {0}")]
    CocycleOrder(u32),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}
