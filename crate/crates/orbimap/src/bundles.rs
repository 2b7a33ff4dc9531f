//! Pullback bundles over complete maps, their equivalence, admissible
//! subspaces of the fiber, and polynomial orbisections.
//!
//! A complete map `m` pulls the destination tangent space back to its
//! source chart: the source group acts on the fiber through the map's
//! homomorphism.  Everything about the bundle that matters here is that
//! linear action, so a bundle is recorded as the base map plus one fiber
//! matrix per source group element.

use crate::error::{Error, Result};
use crate::groups::{representations_equivalent, validate_representation, GroupHom};
use crate::linalg::{QMatrix, Rat, Subspace};
use crate::maps::CompleteMap;
use crate::orbifold::QuotientChart;
use crate::polymap::PolyMap;

/// A pullback bundle: the base complete map together with the induced
/// action of the source group on the fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackBundleData {
    base: CompleteMap,
    fiber_dim: usize,
    fiber_action: Vec<QMatrix>,
}

impl PullbackBundleData {
    pub fn base(&self) -> &CompleteMap {
        &self.base
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    /// One fiber matrix per source group element, in element order.
    pub fn fiber_action(&self) -> &[QMatrix] {
        &self.fiber_action
    }

    pub fn action_of(&self, g: usize) -> &QMatrix {
        &self.fiber_action[g]
    }
}

/// Pull the destination tangent space back along a complete map.
pub fn pullback(m: &CompleteMap) -> PullbackBundleData {
    let src_group = m.src().group();
    let dst_group = m.dst().group();
    let fiber_action: Vec<QMatrix> = (0..src_group.order())
        .map(|g| dst_group.element(m.theta().image_of(g)).clone())
        .collect();
    debug_assert!(validate_representation(src_group, &fiber_action).is_ok());
    PullbackBundleData { base: m.clone(), fiber_dim: m.dst().dim(), fiber_action }
}

/// The tangent bundle of a chart: the pullback along its identity map.
pub fn tangent_bundle(chart: &QuotientChart) -> PullbackBundleData {
    let identity = CompleteMap::new(
        chart.clone(),
        chart.clone(),
        PolyMap::identity(chart.dim()),
        GroupHom::identity(chart.group()),
    )
    .expect("the identity lift is equivariant over the identity homomorphism");
    pullback(&identity)
}

/// Whether two pullback bundles over the same source chart are equivalent:
/// their fiber actions agree as linear representations (equal characters).
pub fn pullbacks_equivalent(a: &PullbackBundleData, b: &PullbackBundleData) -> Result<bool> {
    if a.base.src() != b.base.src() {
        return Err(Error::BundleMismatch);
    }
    if a.fiber_dim != b.fiber_dim {
        return Ok(false);
    }
    representations_equivalent(a.base.src().group(), &a.fiber_action, &b.fiber_action)
}

/// The admissible subspace of the fiber.
///
/// Over the most singular point of the source chart (the origin) only the
/// vectors fixed by the whole fiber action are admissible; away from it the
/// full fiber is.
pub fn admissible_subspace(b: &PullbackBundleData, at_origin: bool) -> Subspace {
    if !at_origin {
        return Subspace::full(b.fiber_dim);
    }
    let n = b.fiber_dim;
    let order = b.fiber_action.len();
    let mut sum = QMatrix::zeros(n, n);
    for m in &b.fiber_action {
        sum = sum.add(m);
    }
    let projector = sum.scale(&(Rat::from_integer(1.into()) / Rat::from_integer((order as i64).into())));
    assert_eq!(projector.mul(&projector), projector, "averaging must be idempotent");
    let mut spanning: Vec<Vec<Rat>> = Vec::new();
    let pt = projector.transpose();
    for i in 0..n {
        spanning.push(pt.row(i).to_vec());
    }
    Subspace::from_spanning(n, spanning).expect("projector rows have the fiber dimension")
}

/// A polynomial section of a pullback bundle, equivariant for the fiber
/// action: `s(γ·x) = action(γ)·s(x)` exactly, for every group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbisection {
    bundle: PullbackBundleData,
    section: PolyMap,
}

impl Orbisection {
    pub fn new(bundle: PullbackBundleData, section: PolyMap) -> Result<Self> {
        let src = bundle.base().src();
        if section.src_dim() != src.dim() {
            return Err(Error::DimensionMismatch { expected: src.dim(), got: section.src_dim() });
        }
        if section.dst_dim() != bundle.fiber_dim() {
            return Err(Error::DimensionMismatch {
                expected: bundle.fiber_dim(),
                got: section.dst_dim(),
            });
        }
        let group = src.group();
        for g in 0..group.order() {
            let precomposed = section.compose_linear(group.element(g));
            let postcomposed = section.apply_matrix(bundle.action_of(g));
            if precomposed != postcomposed {
                return Err(Error::NotEquivariant);
            }
        }
        Ok(Orbisection { bundle, section })
    }

    pub fn bundle(&self) -> &PullbackBundleData {
        &self.bundle
    }

    pub fn section(&self) -> &PolyMap {
        &self.section
    }

    /// The zero section of a bundle (always equivariant).
    pub fn zero(bundle: PullbackBundleData) -> Orbisection {
        let section = PolyMap::zero(bundle.base().src().dim(), bundle.fiber_dim());
        Orbisection { bundle, section }
    }

    /// Sum of two sections of the same bundle.
    pub fn add(&self, other: &Orbisection) -> Result<Orbisection> {
        if self.bundle != other.bundle {
            return Err(Error::BundleMismatch);
        }
        Ok(Orbisection {
            bundle: self.bundle.clone(),
            section: self.section.add(&other.section),
        })
    }

    /// Scalar multiple of a section.
    pub fn scale(&self, c: &Rat) -> Orbisection {
        Orbisection { bundle: self.bundle.clone(), section: self.section.scale(c) }
    }
}

/// The common fiber subspace of a family of pullback bundles over one
/// source chart into one destination chart: all vectors on which every pair
/// of fiber actions agrees, element by element.
///
/// This is the fiber of the glued bundle over the stratum where the family's
/// members coincide.
pub fn glued_pullback(maps: &[&CompleteMap]) -> Result<Subspace> {
    let first = maps.first().ok_or_else(|| Error::Invalid("empty bundle family".into()))?;
    for m in maps {
        if m.src() != first.src() || m.dst() != first.dst() {
            return Err(Error::BundleMismatch);
        }
    }
    let n = first.dst().dim();
    let bundles: Vec<PullbackBundleData> = maps.iter().map(|m| pullback(m)).collect();
    let mut constraints: Vec<QMatrix> = Vec::new();
    let anchor = &bundles[0];
    for b in &bundles[1..] {
        for g in 0..first.src().group().order() {
            constraints.push(b.action_of(g).sub(anchor.action_of(g)));
        }
    }
    if constraints.is_empty() {
        return Ok(Subspace::full(n));
    }
    let mut stacked = constraints[0].clone();
    for c in &constraints[1..] {
        stacked = stacked.vstack(c);
    }
    Ok(crate::linalg::nullspace(&stacked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::close_group;
    use crate::linalg::rat;
    use crate::maps::{complete_lifts_over, OrbifoldMap};
    use crate::polymap::Poly;

    fn mat(dim: usize, entries: &[i64]) -> QMatrix {
        QMatrix::new(dim, dim, entries.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    fn line_chart() -> QuotientChart {
        QuotientChart::new("rz2", close_group(1, &[mat(1, &[-1])]).unwrap())
    }

    fn flips_chart() -> QuotientChart {
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        let k = mat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1]);
        QuotientChart::new("flips", close_group(3, &[j, k]).unwrap())
    }

    fn axis_lift() -> PolyMap {
        PolyMap::new(1, vec![Poly::variable(1, 0), Poly::zero(1), Poly::zero(1)]).unwrap()
    }

    fn axis_completions() -> Vec<CompleteMap> {
        let f = OrbifoldMap::new(line_chart(), flips_chart(), axis_lift()).unwrap();
        complete_lifts_over(&f)
    }

    #[test]
    fn tangent_bundle_is_the_identity_pullback() {
        let chart = flips_chart();
        let tangent = tangent_bundle(&chart);
        assert_eq!(tangent.fiber_dim(), 3);
        for g in 0..chart.group().order() {
            assert_eq!(tangent.action_of(g), chart.group().element(g));
        }
        assert!(pullbacks_equivalent(&tangent, &tangent).unwrap());
    }

    #[test]
    fn constant_map_pullbacks_are_inequivalent() {
        let chart = line_chart();
        let f = OrbifoldMap::new(chart.clone(), chart, PolyMap::zero(1, 1)).unwrap();
        let completions = complete_lifts_over(&f);
        assert_eq!(completions.len(), 2);
        let a = pullback(&completions[0]);
        let b = pullback(&completions[1]);
        // One homomorphism is the identity (sign action on the fiber), the
        // other is trivial: the characters differ at the flip.
        assert!(!pullbacks_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn double_flip_pullbacks_are_equivalent() {
        let completions = axis_completions();
        let a = pullback(&completions[0]);
        let b = pullback(&completions[1]);
        // Both double flips have trace −1, so the characters agree.
        assert!(pullbacks_equivalent(&a, &b).unwrap());
        assert_ne!(a.fiber_action(), b.fiber_action());
    }

    #[test]
    fn bundles_over_different_charts_do_not_compare() {
        let tangent_line = tangent_bundle(&line_chart());
        let tangent_flips = tangent_bundle(&flips_chart());
        assert_eq!(
            pullbacks_equivalent(&tangent_line, &tangent_flips).unwrap_err(),
            Error::BundleMismatch
        );
    }

    #[test]
    fn admissible_subspaces_at_and_away_from_the_origin() {
        let completions = axis_completions();
        let j_bundle = completions
            .iter()
            .map(pullback)
            .find(|b| *b.action_of(0) == mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]))
            .expect("the first flip sends the generator to j");
        let at_origin = admissible_subspace(&j_bundle, true);
        assert_eq!(at_origin.dim(), 1);
        assert!(at_origin.contains(&[rat(0), rat(1), rat(0)]));
        assert!(!at_origin.contains(&[rat(1), rat(0), rat(0)]));
        let away = admissible_subspace(&j_bundle, false);
        assert_eq!(away.dim(), 3);
    }

    #[test]
    fn orbisections_validate_equivariance() {
        let completions = axis_completions();
        let j_bundle = completions
            .iter()
            .map(pullback)
            .find(|b| *b.action_of(0) == mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]))
            .unwrap();
        // (y³, y², y) matches the sign pattern of j = diag(−1, 1, −1).
        let good = {
            let mut c0 = Poly::zero(1);
            c0.add_term(vec![3], rat(1));
            let mut c1 = Poly::zero(1);
            c1.add_term(vec![2], rat(1));
            PolyMap::new(1, vec![c0, c1, Poly::variable(1, 0)]).unwrap()
        };
        let s = Orbisection::new(j_bundle.clone(), good).unwrap();

        // An even leading component violates the sign pattern.
        let bad = {
            let mut c0 = Poly::zero(1);
            c0.add_term(vec![2], rat(1));
            PolyMap::new(1, vec![c0, Poly::zero(1), Poly::zero(1)]).unwrap()
        };
        assert_eq!(
            Orbisection::new(j_bundle.clone(), bad).unwrap_err(),
            Error::NotEquivariant
        );

        // Sections form a vector space: sums and scalar multiples survive
        // revalidation.
        let doubled = s.add(&s).unwrap();
        let rescaled = s.scale(&(rat(-7) / rat(3)));
        for t in [doubled, rescaled, Orbisection::zero(j_bundle.clone())] {
            assert!(Orbisection::new(j_bundle.clone(), t.section().clone()).is_ok());
        }
    }

    #[test]
    fn sections_of_different_bundles_do_not_add() {
        let completions = axis_completions();
        let a = Orbisection::zero(pullback(&completions[0]));
        let b = Orbisection::zero(pullback(&completions[1]));
        assert_eq!(a.add(&b).unwrap_err(), Error::BundleMismatch);
    }

    #[test]
    fn glued_fibers_of_the_frozen_examples() {
        // Double flips j and k agree on the first axis only.
        let completions = axis_completions();
        let refs: Vec<&CompleteMap> = completions.iter().collect();
        let glued = glued_pullback(&refs).unwrap();
        assert_eq!(glued.dim(), 1);
        assert!(glued.contains(&[rat(5), rat(0), rat(0)]));

        // The two completions of the constant map share no nonzero vector.
        let chart = line_chart();
        let f = OrbifoldMap::new(chart.clone(), chart, PolyMap::zero(1, 1)).unwrap();
        let completions = complete_lifts_over(&f);
        let refs: Vec<&CompleteMap> = completions.iter().collect();
        assert_eq!(glued_pullback(&refs).unwrap().dim(), 0);

        // A one-member family is unconstrained.
        let one = [refs[0]];
        assert_eq!(glued_pullback(&one).unwrap().dim(), 1);
    }
}
