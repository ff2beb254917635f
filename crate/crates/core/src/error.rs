use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a series whose leading coefficient is zero")]
    ZeroLeadingCoefficient,

    #[error("result has no known coefficients")]
    TruncationUnderflow,

    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(String, String),

    #[error("insufficient truncation: need coefficients through q^{needed}, have q^{available}")]
    InsufficientTruncation { needed: i64, available: i64 },

    #[error("not in the image of the Bol operator: {0}")]
    NoBolPreimage(String),

    #[error("both constant terms are nonzero; the pairing is undefined")]
    PairingUndefined,

    #[error("(T_{m} - lambda_{m}) f has constant term {constant}; f is not a weak eigenform with these eigenvalues")]
    NotWeakEigenform { m: u64, constant: String },

    #[error("no Hecke eigenvalue stored for m = {0}")]
    MissingEigenvalue(u64),

    #[error("linear system is singular")]
    SingularSystem,

    #[error("sigma_(n+1)({m}) - lambda_{m} vanishes; use another Hecke index")]
    DegenerateHeckeIndex { m: u64 },

    #[error("reduction needs a basis form with pole order {pole}, beyond the bound {bound}")]
    BasisPoleOrder { pole: i64, bound: i64 },

    #[error("integration path reaches Im z = {im}, below the minimum {min}")]
    PathTooLow { im: f64, min: f64 },

    #[error("truncation tail bound {bound:e} exceeds tolerance {tolerance:e} at Im z = {im}")]
    TailBound { bound: f64, tolerance: f64, im: f64 },

    #[error("quadrature did not converge by order {order} (last change {change:e})")]
    QuadratureNoConvergence { order: usize, change: f64 },

    #[error("cocycle differs by {difference:e} between evaluation points")]
    CocycleDependsOnPoint { difference: f64 },

    #[error("least-squares residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("{what} has relative imaginary part {ratio:e}")]
    NonReal { what: String, ratio: f64 },

    #[error("product of two period symbols")]
    SymbolProduct,

    #[error("coefficient at (k, m, n) = ({k}, {m}, {n}) violates the Hecke condition for T_{index}")]
    HeckeCondition { k: i64, m: i64, n: i64, index: u64 },

    #[error("Kloosterman tail bound {bound:e} for n = {n} exceeds tolerance {tolerance:e} at c_max = {c_max}")]
    KloostermanTail { n: u64, c_max: u64, bound: f64, tolerance: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}
