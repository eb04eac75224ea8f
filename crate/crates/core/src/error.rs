use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice must have rank at least 1")]
    EmptyLattice,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate form")]
    DegenerateForm,
    #[error("not even")]
    NotEven,
    #[error("not unimodular")]
    NotUnimodular,
    #[error("definite form")]
    DefiniteForm,
    #[error("invalid involution: {0}")]
    InvalidInvolution(&'static str),

    #[error("not a spin signature: {0} is not divisible by 8")]
    NotSpinSignature(i64),
    #[error("index congruence violated: {0}")]
    IndexCongruence(String),
    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("gauge route requires nonvanishing input")]
    GaugeRouteNeedsNonvanishing,

    #[error("b_plus < 2")]
    BPlusTooSmall,
    #[error("no stable representation found with multiplicities up to {0}")]
    SearchBoxExceeded(u32),
    #[error("multiplicity too small: {0}")]
    MultiplicityTooSmall(String),
    #[error("singular set too large: dimension {singular} exceeds {bound}")]
    SingularSetTooLarge { singular: u64, bound: u64 },
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("degree {degree} out of range {lo}..={hi}")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("inconsistent V/W data: {0}")]
    InconsistentRepresentations(String),

    #[error("framing/linking matrix fails the equivariant attaching conditions")]
    EeMatrixCheckFailed,
    #[error("odd framing not equivariantly attachable: {0}")]
    OddFraming(i64),
    #[error("framing parity rule requires every link component to bound an invariant disk")]
    MissingInvariantDisks,
    #[error("length mismatch: {expected} components but {found} framings")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no locally linear realization certified: {0}")]
    NoLocallyLinearRealization(String),

    #[error("internal error: {0}")]
    Internal(String),
}
