use thiserror::Error;

/// Everything that can go wrong while building or combining the exact
/// structures in this crate.
///
/// Each variant carries enough context to be reported mechanically; see
/// [`Error::kind`] for the stable machine-readable tag used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A group generator failed the exact orthogonality test `AᵀA = I`.
    #[error("generator {index} is not an orthogonal matrix")]
    NonOrthogonalGenerator { index: usize },

    /// Group closure produced more elements than the configured cap.
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    /// Homomorphism enumeration was asked for a source group larger than the cap.
    #[error("homomorphism enumeration: source order {order} exceeds the cap of {cap}")]
    EnumerationCapExceeded { order: usize, cap: usize },

    /// A stratification was requested over more lifts than the configured cap.
    #[error("stratification over {lifts} lifts exceeds the cap of {cap}")]
    StrataCapExceeded { lifts: usize, cap: usize },

    /// A coefficient space grew past the configured cap.
    #[error("coefficient space of dimension {dim} exceeds the cap of {cap}")]
    CoefficientCapExceeded { dim: usize, cap: usize },

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A set of element indices is not closed under the parent's multiplication.
    #[error("the given element indices do not form a subgroup")]
    NotASubgroup,

    /// A subgroup fails the normality test required for a quotient.
    #[error("the given subgroup is not normal in its parent")]
    NotNormal,

    /// An element assignment does not respect the group multiplication tables.
    #[error("the assignment is not a group homomorphism")]
    NotAHomomorphism,

    /// A matrix assignment to group elements is not multiplicative.
    #[error("the matrix assignment is not a representation")]
    NotARepresentation,

    /// A polynomial lift fails the equivariance identity for the chosen
    /// homomorphism.
    #[error("the lift is not equivariant for the chosen homomorphism")]
    NotEquivariant,

    /// A polynomial lift admits no equivariant structure at all.
    #[error("the lift admits no equivariant structure over any homomorphism")]
    NoLifts,

    /// An atlas references a chart label that was never declared.
    #[error("unknown chart label `{label}`")]
    UnknownLabel { label: String },

    /// A request names an example fixture that does not exist.
    #[error("unknown example `{name}`")]
    UnknownExample { name: String },

    /// Two maps or actions that must live on the same chart do not.
    #[error("charts do not match")]
    ChartMismatch,

    /// An orbisection was paired with a bundle it does not live on.
    #[error("the section does not live on the expected bundle")]
    BundleMismatch,

    /// Two maps that must carry the same homomorphism data do not.
    #[error("homomorphism data does not match between the two maps")]
    ThetaMismatch,

    /// The randomized search for a generic witness vector gave up.  This
    /// cannot happen for subspace chains over the rationals unless the
    /// retry budget is absurdly small; it is reported rather than looped on.
    #[error("no generic witness vector found within the retry budget")]
    WitnessNotFound,

    /// Malformed input data (bad rational literal, ragged matrix, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable tag for this error, used in CLI reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonOrthogonalGenerator { .. } => "non_orthogonal_generator",
            Error::ClosureCapExceeded { .. } => "closure_cap_exceeded",
            Error::EnumerationCapExceeded { .. } => "enumeration_cap_exceeded",
            Error::StrataCapExceeded { .. } => "strata_cap_exceeded",
            Error::CoefficientCapExceeded { .. } => "coefficient_cap_exceeded",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotASubgroup => "not_a_subgroup",
            Error::NotNormal => "not_normal",
            Error::NotAHomomorphism => "not_a_homomorphism",
            Error::NotARepresentation => "not_a_representation",
            Error::NotEquivariant => "not_equivariant",
            Error::NoLifts => "no_lifts",
            Error::UnknownLabel { .. } => "unknown_label",
            Error::UnknownExample { .. } => "unknown_label",
            Error::ChartMismatch => "chart_mismatch",
            Error::BundleMismatch => "bundle_mismatch",
            Error::ThetaMismatch => "theta_mismatch",
            Error::WitnessNotFound => "witness_not_found",
            Error::Invalid(_) => "invalid_input",
        }
    }

    /// `true` for errors that indicate malformed input rather than a
    /// well-formed value failing a mathematical validation.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, Error::Invalid(_))
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
