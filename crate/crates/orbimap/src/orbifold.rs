//! Local charts, atlas compatibility, and lifts of the identity map.
//!
//! A chart is a flat space together with a finite orthogonal group acting on
//! it; the space being modeled is the quotient.  Charts are glued by affine
//! embeddings that are equivariant over an injective homomorphism of chart
//! groups, and a nested triple of charts is compatible when the two ways
//! around the triangle agree up to the action of a single witnessing group
//! element.  The lifts of the identity map of a chart are exactly the group
//! elements themselves, acting by conjugation on homomorphism data; this
//! module computes that group and checks its defining exact sequence.

use crate::error::{Error, Result};
use crate::groups::{
    center, fixed_subspace, FiniteMatrixGroup, GroupHom, Subgroup,
};
use crate::linalg::{QMatrix, Rat, Subspace};

/// A flat chart: `dim`-space together with a finite orthogonal group acting
/// on it.  The label names the chart inside an atlas and in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientChart {
    label: String,
    group: FiniteMatrixGroup,
}

impl QuotientChart {
    pub fn new(label: impl Into<String>, group: FiniteMatrixGroup) -> Self {
        QuotientChart { label: label.into(), group }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    /// Whether two charts carry the same space and action (labels may differ).
    pub fn same_model(&self, other: &QuotientChart) -> bool {
        self.group == other.group
    }
}

/// An affine map `x ↦ A·x + b` between chart domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    matrix: QMatrix,
    offset: Vec<Rat>,
}

impl AffineMap {
    /// Build and validate shapes; the matrix part must be injective.
    pub fn new(matrix: QMatrix, offset: Vec<Rat>) -> Result<Self> {
        if offset.len() != matrix.rows() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), got: offset.len() });
        }
        // Injectivity: the null space of A must be trivial.
        if crate::linalg::nullspace(&matrix).dim() != 0 {
            return Err(Error::Invalid("affine embedding must have an injective linear part".into()));
        }
        Ok(AffineMap { matrix, offset })
    }

    /// The identity on `n`-space.
    pub fn identity(n: usize) -> Self {
        AffineMap { matrix: QMatrix::identity(n), offset: vec![num_traits::Zero::zero(); n] }
    }

    /// A purely linear map.
    pub fn linear(matrix: QMatrix) -> Result<Self> {
        let offset = vec![num_traits::Zero::zero(); matrix.rows()];
        AffineMap::new(matrix, offset)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rat] {
        &self.offset
    }

    pub fn from_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn to_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        let mut y = self.matrix.apply(x);
        for (yi, bi) in y.iter_mut().zip(&self.offset) {
            *yi += bi;
        }
        y
    }

    /// Composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        assert_eq!(inner.to_dim(), self.from_dim(), "affine composition shape mismatch");
        let matrix = self.matrix.mul(&inner.matrix);
        let mut offset = self.matrix.apply(&inner.offset);
        for (oi, bi) in offset.iter_mut().zip(&self.offset) {
            *oi += bi;
        }
        AffineMap { matrix, offset }
    }

    /// Act on the left by an orthogonal matrix: `x ↦ g·(A·x + b)`.
    pub fn left_translate(&self, g: &QMatrix) -> AffineMap {
        AffineMap { matrix: g.mul(&self.matrix), offset: g.apply(&self.offset) }
    }
}

/// A validated chart-to-chart embedding: an injective affine map, equivariant
/// over an injective homomorphism of chart groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasEmbedding {
    from: String,
    to: String,
    map: AffineMap,
    theta: GroupHom,
}

impl AtlasEmbedding {
    pub fn new(
        from: &QuotientChart,
        to: &QuotientChart,
        map: AffineMap,
        theta: GroupHom,
    ) -> Result<Self> {
        if map.from_dim() != from.dim() || map.to_dim() != to.dim() {
            return Err(Error::DimensionMismatch { expected: from.dim(), got: map.from_dim() });
        }
        if theta.source_order() != from.group().order()
            || theta.target_order() != to.group().order()
        {
            return Err(Error::NotAHomomorphism);
        }
        if !theta.is_injective() {
            return Err(Error::Invalid(format!(
                "embedding {} → {} must inject the chart group",
                from.label(),
                to.label()
            )));
        }
        if !embedding_is_equivariant(from.group(), to.group(), &map, &theta) {
            return Err(Error::NotEquivariant);
        }
        Ok(AtlasEmbedding {
            from: from.label().to_string(),
            to: to.label().to_string(),
            map,
            theta,
        })
    }

    pub fn from_label(&self) -> &str {
        &self.from
    }

    pub fn to_label(&self) -> &str {
        &self.to
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn theta(&self) -> &GroupHom {
        &self.theta
    }
}

/// The exact equivariance test for an embedding: `ψ(γ·x) = θ(γ)·ψ(x)` for
/// every group element, i.e. `A·γ = θ(γ)·A` and `θ(γ)·b = b`.
fn embedding_is_equivariant(
    from_group: &FiniteMatrixGroup,
    to_group: &FiniteMatrixGroup,
    map: &AffineMap,
    theta: &GroupHom,
) -> bool {
    (0..from_group.order()).all(|g| {
        let lhs = map.matrix().mul(from_group.element(g));
        let img = to_group.element(theta.image_of(g));
        lhs == img.mul(map.matrix()) && img.apply(map.offset()) == map.offset()
    })
}

/// Raw, unvalidated embedding data fed to [`verify_atlas`].  The
/// homomorphism is given by images of the source chart group's generators.
#[derive(Debug, Clone)]
pub struct RawEmbedding {
    pub from: String,
    pub to: String,
    pub map: AffineMap,
    pub theta_generator_images: Vec<usize>,
}

/// Verdict on one embedding inside an atlas report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingVerdict {
    pub from: String,
    pub to: String,
    pub is_homomorphism: bool,
    pub injective: bool,
    pub equivariant: bool,
}

impl EmbeddingVerdict {
    pub fn ok(&self) -> bool {
        self.is_homomorphism && self.injective && self.equivariant
    }
}

/// Verdict on one nested chart triple `(z, y, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleVerdict {
    pub labels: [String; 3],
    /// Index (in the outer chart group) of the first witnessing element
    /// making the two routes around the triangle agree, if any.
    pub delta: Option<usize>,
    /// Human-readable reason when no witness exists.
    pub note: Option<String>,
}

impl TripleVerdict {
    pub fn ok(&self) -> bool {
        self.delta.is_some()
    }
}

/// Full compatibility report for an atlas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasReport {
    pub embeddings: Vec<EmbeddingVerdict>,
    pub triples: Vec<TripleVerdict>,
}

impl AtlasReport {
    pub fn valid(&self) -> bool {
        self.embeddings.iter().all(EmbeddingVerdict::ok) && self.triples.iter().all(TripleVerdict::ok)
    }
}

/// Check every embedding and every nested triple of an atlas.
///
/// For a triple `(z, y, x)` with embeddings `ψ_zx`, `ψ_zy`, `ψ_yx`, the two
/// routes `z → x` must agree up to a single element `δ` of the outer chart
/// group, acting on both the affine map and the composed homomorphism:
/// `δ·ψ_zx = ψ_yx ∘ ψ_zy` and `δ·θ_zx(γ)·δ⁻¹ = θ_yx(θ_zy(γ))` for all `γ`.
/// The first such `δ` in canonical element order is reported as the witness.
///
/// Unknown labels are an error; mathematical failures are verdicts in the
/// report, not errors.
pub fn verify_atlas(
    charts: &[QuotientChart],
    embeddings: &[RawEmbedding],
    triples: &[[String; 3]],
) -> Result<AtlasReport> {
    let chart = |label: &str| -> Result<&QuotientChart> {
        charts
            .iter()
            .find(|c| c.label() == label)
            .ok_or_else(|| Error::UnknownLabel { label: label.to_string() })
    };

    let mut verdicts = Vec::new();
    let mut resolved: Vec<Option<AtlasEmbedding>> = Vec::new();
    for raw in embeddings {
        let from = chart(&raw.from)?;
        let to = chart(&raw.to)?;
        let theta =
            GroupHom::from_generator_images(from.group(), to.group(), &raw.theta_generator_images);
        match theta {
            Err(_) => {
                verdicts.push(EmbeddingVerdict {
                    from: raw.from.clone(),
                    to: raw.to.clone(),
                    is_homomorphism: false,
                    injective: false,
                    equivariant: false,
                });
                resolved.push(None);
            }
            Ok(theta) => {
                let injective = theta.is_injective();
                let equivariant =
                    embedding_is_equivariant(from.group(), to.group(), &raw.map, &theta);
                verdicts.push(EmbeddingVerdict {
                    from: raw.from.clone(),
                    to: raw.to.clone(),
                    is_homomorphism: true,
                    injective,
                    equivariant,
                });
                resolved.push(Some(AtlasEmbedding {
                    from: raw.from.clone(),
                    to: raw.to.clone(),
                    map: raw.map.clone(),
                    theta,
                }));
            }
        }
    }

    let lookup = |from: &str, to: &str| -> Option<&AtlasEmbedding> {
        resolved
            .iter()
            .flatten()
            .find(|e| e.from_label() == from && e.to_label() == to)
    };

    let mut triple_verdicts = Vec::new();
    for t in triples {
        let [z, y, x] = t;
        // Labels must at least exist.
        chart(z)?;
        chart(y)?;
        let outer = chart(x)?;
        let (Some(zx), Some(zy), Some(yx)) = (lookup(z, x), lookup(z, y), lookup(y, x)) else {
            triple_verdicts.push(TripleVerdict {
                labels: t.clone(),
                delta: None,
                note: Some("missing or invalid embedding along the triple".into()),
            });
            continue;
        };
        let composed_map = yx.map().compose(zy.map());
        let composed_theta = yx.theta().compose(zy.theta()).expect("orders line up by lookup");
        let witness = (0..outer.group().order()).find(|&d| {
            zx.map().left_translate(outer.group().element(d)) == composed_map
                && (0..zx.theta().source_order()).all(|g| {
                    outer.group().conj_idx(d, zx.theta().image_of(g)) == composed_theta.image_of(g)
                })
        });
        triple_verdicts.push(TripleVerdict {
            labels: t.clone(),
            delta: witness,
            note: if witness.is_some() {
                None
            } else {
                Some("no group element reconciles the two routes".into())
            },
        });
    }

    Ok(AtlasReport { embeddings: verdicts, triples: triple_verdicts })
}

/// The singular stratum of a chart fixed by a subgroup of its group: the
/// exact subspace of points every member fixes.
pub fn singular_stratum(chart: &QuotientChart, sub: &Subgroup) -> Result<Subspace> {
    fixed_subspace(chart.group(), sub)
}

/// The group of lifts of the identity map of a chart.
///
/// Each lift is `y ↦ γ·y` for a group element `γ`, and carries the induced
/// homomorphism `δ ↦ γ·δ·γ⁻¹`.  Forgetting the homomorphism data quotients
/// this group by the center; the distinct conjugation actions that remain
/// are exactly the inner automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityLiftGroup {
    chart: QuotientChart,
    conjugations: Vec<Vec<usize>>,
    center: Subgroup,
    distinct_conjugations: usize,
}

impl IdentityLiftGroup {
    pub fn chart(&self) -> &QuotientChart {
        &self.chart
    }

    /// Order of the full lift group (one lift per group element).
    pub fn order(&self) -> usize {
        self.chart.group().order()
    }

    /// The lifts acting trivially on homomorphism data.
    pub fn center(&self) -> &Subgroup {
        &self.center
    }

    /// Order of the quotient by the center: the number of distinct induced
    /// conjugation actions.
    pub fn inner_quotient_order(&self) -> usize {
        self.distinct_conjugations
    }

    /// The conjugation permutation `δ ↦ γ·δ·γ⁻¹` of the lift `γ`.
    pub fn conjugation_of(&self, gamma: usize) -> &[usize] {
        &self.conjugations[gamma]
    }

    /// Verify the defining exact sequence by table enumeration: the
    /// conjugation assignment is a homomorphism, its kernel is the center,
    /// and the order identity `|lifts| = |center| · |inner quotient|` holds.
    pub fn sequence_check(&self) -> SequenceCheck {
        let g = self.chart.group();
        let n = g.order();
        let is_homomorphism = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = g.mul_idx(a, b);
                (0..n).all(|d| {
                    self.conjugations[ab][d] == self.conjugations[a][self.conjugations[b][d]]
                })
            })
        });
        let identity_perm: Vec<usize> = (0..n).collect();
        let kernel: Vec<usize> = (0..n)
            .filter(|&a| self.conjugations[a] == identity_perm)
            .collect();
        let kernel_is_center = kernel == self.center.members();
        let order_identity = n == self.center.order() * self.distinct_conjugations;
        SequenceCheck { is_homomorphism, kernel_is_center, order_identity }
    }
}

/// Outcome of [`IdentityLiftGroup::sequence_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceCheck {
    /// Conjugation respects products: `conj(a·b) = conj(a) ∘ conj(b)`.
    pub is_homomorphism: bool,
    /// The lifts acting trivially are exactly the center.
    pub kernel_is_center: bool,
    /// `|lifts| = |center| · |distinct conjugations|`.
    pub order_identity: bool,
}

impl SequenceCheck {
    pub fn holds(&self) -> bool {
        self.is_homomorphism && self.kernel_is_center && self.order_identity
    }
}

/// Compute the identity-lift group of a chart.
pub fn identity_lift_group(chart: &QuotientChart) -> IdentityLiftGroup {
    let g = chart.group();
    let n = g.order();
    let conjugations: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|d| g.conj_idx(a, d)).collect())
        .collect();
    let mut distinct = conjugations.clone();
    distinct.sort();
    distinct.dedup();
    IdentityLiftGroup {
        chart: chart.clone(),
        center: center(g),
        distinct_conjugations: distinct.len(),
        conjugations,
    }
}
