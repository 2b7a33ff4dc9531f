//! Typed shapes of every JSON report the command-line tool emits.
//!
//! Each report both serializes (for the tool) and deserializes (so scripts
//! and tests can re-parse output under the same schema).

use serde::{Deserialize, Serialize};

/// `group`: structure of a closed matrix group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupReport {
    pub dim: usize,
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    /// Input generators dropped because they repeated an earlier generator
    /// or were the identity.
    pub duplicate_generators_ignored: usize,
    /// All elements in canonical order, row-major rational strings.
    pub elements: Vec<Vec<String>>,
}

/// `homs`: every homomorphism between two groups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomsReport {
    pub src_order: usize,
    pub dst_order: usize,
    pub count: usize,
    /// Full image tuples: entry `g` is the destination element index the
    /// source element `g` maps to.
    pub homs: Vec<Vec<usize>>,
}

/// One complete lift in a `lifts` report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiftEntry {
    pub theta_images: Vec<usize>,
    pub theta_generator_images: Vec<usize>,
}

/// `lifts`: every complete lift of a map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiftsReport {
    pub src_label: String,
    pub dst_label: String,
    pub count: usize,
    pub lifts: Vec<LiftEntry>,
}

/// `pullback` with homomorphism data: one bundle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleReport {
    pub fiber_dim: usize,
    /// One fiber matrix per source group element, row-major strings.
    pub fiber_action: Vec<Vec<String>>,
    pub admissible_at_origin: Vec<Vec<String>>,
    pub admissible_at_origin_dim: usize,
    pub admissible_generic_dim: usize,
    pub equivalent_to_source_tangent: bool,
}

/// One glued fiber in a lift-family `pullback` report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GluedEntry {
    pub indices: Vec<usize>,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

/// `pullback` without homomorphism data: glued fibers over every subset of
/// the complete lifts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GluedReport {
    pub lift_count: usize,
    pub glued: Vec<GluedEntry>,
}

/// `idgroup`: the identity-lift group of a chart.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdgroupReport {
    pub label: String,
    pub order: usize,
    pub center_order: usize,
    pub inner_order: usize,
    pub order_identity_holds: bool,
    pub quotient_is_homomorphism: bool,
    pub kernel_is_center: bool,
}

/// One embedding verdict in a `verify` report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingVerdictReport {
    pub from: String,
    pub to: String,
    pub is_homomorphism: bool,
    pub injective: bool,
    pub equivariant: bool,
    pub ok: bool,
}

/// One composite-triple verdict in a `verify` report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleVerdictReport {
    pub labels: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub ok: bool,
}

/// `verify`: atlas verification verdicts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub embeddings: Vec<EmbeddingVerdictReport>,
    pub triples: Vec<TripleVerdictReport>,
}

/// One stratum summary in an `example` report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumSummary {
    pub indices: Vec<usize>,
    pub dim: usize,
    pub nonempty: bool,
}

/// `example`: a named fixture replayed end to end.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub src_label: String,
    pub dst_label: String,
    pub degree: u32,
    pub lift_count: usize,
    pub theta_images: Vec<Vec<usize>>,
    /// Per lift: `tangent-equivalent`, `trivial`, or `other`.
    pub pullback_classes: Vec<String>,
    pub strata: Vec<StratumSummary>,
    /// Orbit of the first complete lift under the centralizer of its
    /// homomorphism's image, acting through destination identity lifts.
    pub orbit_size: usize,
    pub isotropy_order: usize,
    /// Identity-lift group of the destination chart.
    pub identity_lift_order: usize,
    pub identity_lift_center_order: usize,
    pub identity_lift_inner_order: usize,
}

/// The machine-readable object printed on validation failures (exit 2).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorDetail,
}

/// Tagged error payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorDetail {
    /// Stable snake_case tag, e.g. `not_equivariant`.
    pub kind: String,
    pub message: String,
}
