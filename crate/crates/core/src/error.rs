use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown charge `{0}`")]
    UnknownCharge(String),

    #[error("contraction order {order} for ({left}, {right}) must be >= 0")]
    NegativeContractionOrder {
        left: String,
        right: String,
        order: i64,
    },

    #[error("contraction ({left}, {right}) couples generators of different parity")]
    ParityMismatch { left: String, right: String },

    #[error(
        "contraction table is not skew-consistent at ({left}, {right}) order {order}: \
         forward {forward}, reverse {reverse}, required {required}"
    )]
    SkewInconsistent {
        left: String,
        right: String,
        order: i64,
        forward: String,
        reverse: String,
        required: String,
    },

    #[error("annihilation mode {gen}({mode}) is not allowed in a normal monomial")]
    AnnihilationMode { gen: String, mode: i64 },

    #[error("state is zero; it has no grade")]
    ZeroStateGrade,

    #[error("state is not homogeneous: monomial grades {first} and {second} differ")]
    Inhomogeneous { first: String, second: String },

    #[error(
        "graded slice is not finite: generator `{gen}` has weight 0 under the chosen \
         assignment, is even, and no constrained charge bounds its multiplicity"
    )]
    NonFiniteSlice { gen: String },

    #[error("weight assignment must cover every generator; `{0}` is missing")]
    IncompleteWeights(String),

    #[error("circle products of `{left}` and `{right}` fail to vanish at pole {pole} >= locality bound {bound}")]
    LocalityViolation {
        left: String,
        right: String,
        pole: i64,
        bound: i64,
    },

    #[error("bilinear form `{0}` is singular; no dual basis exists")]
    SingularForm(String),

    #[error("level {level} is critical for this form (k + h_vee = 0); no Sugawara vector exists")]
    CriticalLevel { level: String },

    #[error("Casimir is not scalar on the adjoint representation; got mixed eigenvalues")]
    NonScalarCasimir,

    #[error("Lie data for `{name}` fails validation: {detail}")]
    BadLieData { name: String, detail: String },

    #[error("truncation order must be >= 1, got {0}")]
    BadTruncation(i64),

    #[error("product family does not converge: q-step must be positive")]
    NonConvergentProduct,

    #[error("theta exponent form is not positive definite")]
    IndefiniteForm,

    #[error("parse error at {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("config error on line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("{0}")]
    Other(String),
}
