//! The four notions of map between chart quotients and the forgetful
//! projections connecting them.
//!
//! A map between two quotients can be recorded at four levels of detail:
//!
//! * [`CompleteMap`] — a polynomial lift together with the homomorphism of
//!   chart groups over which the lift is equivariant;
//! * [`OrbifoldMap`] — the lift alone, remembering only that at least one
//!   such homomorphism exists;
//! * [`CompleteReducedMap`] — the homomorphism alone, with a witness lift
//!   recording which underlying map it came from;
//! * [`ReducedMap`] — the underlying map alone, represented canonically.
//!
//! Forgetting data is a projection; the fibers of those projections are
//! computed exactly here, as are the isotropy groups of the action of
//! identity lifts on each level.

use crate::error::{Error, Result};
use crate::groups::{
    centralizer, enumerate_homomorphisms_with_cap, fixed_subspace, GroupHom, Subgroup,
    DEFAULT_HOM_SOURCE_CAP,
};
use crate::linalg::Rat;
use crate::orbifold::{IdentityLiftGroup, QuotientChart};
use crate::polymap::{is_equivariant, CoeffVector, EquivarianceCheck, PolyMap};
use num_traits::Zero;

/// A lift with its equivariance homomorphism: the finest notion of map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteMap {
    src: QuotientChart,
    dst: QuotientChart,
    lift: PolyMap,
    theta: GroupHom,
}

impl CompleteMap {
    /// Validate that `lift` is exactly `theta`-equivariant and assemble the
    /// complete map.  The check runs over the whole source group.
    pub fn new(
        src: QuotientChart,
        dst: QuotientChart,
        lift: PolyMap,
        theta: GroupHom,
    ) -> Result<Self> {
        if lift.src_dim() != src.dim() {
            return Err(Error::DimensionMismatch { expected: src.dim(), got: lift.src_dim() });
        }
        if lift.dst_dim() != dst.dim() {
            return Err(Error::DimensionMismatch { expected: dst.dim(), got: lift.dst_dim() });
        }
        if theta.source_order() != src.group().order()
            || theta.target_order() != dst.group().order()
        {
            return Err(Error::NotAHomomorphism);
        }
        if !is_equivariant(&lift, src.group(), &theta, dst.group(), EquivarianceCheck::FullGroup) {
            return Err(Error::NotEquivariant);
        }
        Ok(CompleteMap { src, dst, lift, theta })
    }

    /// Build a complete map from generator images of the homomorphism.
    pub fn from_generator_images(
        src: QuotientChart,
        dst: QuotientChart,
        lift: PolyMap,
        generator_images: &[usize],
    ) -> Result<Self> {
        let theta = GroupHom::from_generator_images(src.group(), dst.group(), generator_images)?;
        CompleteMap::new(src, dst, lift, theta)
    }

    pub fn src(&self) -> &QuotientChart {
        &self.src
    }

    pub fn dst(&self) -> &QuotientChart {
        &self.dst
    }

    pub fn lift(&self) -> &PolyMap {
        &self.lift
    }

    pub fn theta(&self) -> &GroupHom {
        &self.theta
    }

    /// Post-compose the lift with destination element `eta` and conjugate
    /// the homomorphism accordingly.
    pub fn translated(&self, eta: usize) -> CompleteMap {
        let mat = self.dst.group().element(eta);
        CompleteMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            lift: self.lift.apply_matrix(mat),
            theta: self.theta.conjugated_by(self.dst.group(), eta),
        }
    }
}

/// A lift remembering only that an equivariant structure exists.
///
/// Construction enumerates all equivariance homomorphisms once; an empty
/// result rejects the lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldMap {
    src: QuotientChart,
    dst: QuotientChart,
    lift: PolyMap,
    thetas: Vec<GroupHom>,
}

impl OrbifoldMap {
    pub fn new(src: QuotientChart, dst: QuotientChart, lift: PolyMap) -> Result<Self> {
        OrbifoldMap::with_cap(src, dst, lift, DEFAULT_HOM_SOURCE_CAP)
    }

    /// [`OrbifoldMap::new`] with an explicit homomorphism-enumeration cap.
    pub fn with_cap(
        src: QuotientChart,
        dst: QuotientChart,
        lift: PolyMap,
        cap: usize,
    ) -> Result<Self> {
        if lift.src_dim() != src.dim() {
            return Err(Error::DimensionMismatch { expected: src.dim(), got: lift.src_dim() });
        }
        if lift.dst_dim() != dst.dim() {
            return Err(Error::DimensionMismatch { expected: dst.dim(), got: lift.dst_dim() });
        }
        let thetas: Vec<GroupHom> = enumerate_homomorphisms_with_cap(src.group(), dst.group(), cap)?
            .into_iter()
            .filter(|theta| {
                is_equivariant(&lift, src.group(), theta, dst.group(), EquivarianceCheck::FullGroup)
            })
            .collect();
        if thetas.is_empty() {
            return Err(Error::NoLifts);
        }
        Ok(OrbifoldMap { src, dst, lift, thetas })
    }

    pub fn src(&self) -> &QuotientChart {
        &self.src
    }

    pub fn dst(&self) -> &QuotientChart {
        &self.dst
    }

    pub fn lift(&self) -> &PolyMap {
        &self.lift
    }

    /// The homomorphisms making the lift equivariant, sorted by image tuple.
    pub fn thetas(&self) -> &[GroupHom] {
        &self.thetas
    }

    /// Post-compose the lift with destination element `eta`.
    pub fn translated(&self, eta: usize) -> OrbifoldMap {
        let mat = self.dst.group().element(eta);
        let thetas = self
            .thetas
            .iter()
            .map(|t| t.conjugated_by(self.dst.group(), eta));
        let mut thetas: Vec<GroupHom> = thetas.collect();
        thetas.sort();
        OrbifoldMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            lift: self.lift.apply_matrix(mat),
            thetas,
        }
    }
}

/// Every complete map over an orbifold map, in deterministic order (sorted
/// by the homomorphism's image tuple).  This is also the fiber of the
/// homomorphism-forgetting projection over `f`.
pub fn complete_lifts_over(f: &OrbifoldMap) -> Vec<CompleteMap> {
    f.thetas()
        .iter()
        .map(|theta| CompleteMap {
            src: f.src.clone(),
            dst: f.dst.clone(),
            lift: f.lift.clone(),
            theta: theta.clone(),
        })
        .collect()
}

/// The fiber of the homomorphism-forgetting projection over an orbifold
/// map: all complete maps sharing its lift.
pub fn fiber_of_q_over(f: &OrbifoldMap) -> Vec<CompleteMap> {
    complete_lifts_over(f)
}

/// The underlying map represented canonically: the lexicographically least
/// coefficient vector in the orbit of the lift under post-composition by
/// destination group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMap {
    src: QuotientChart,
    dst: QuotientChart,
    lift_rep: PolyMap,
}

impl ReducedMap {
    /// Canonicalize a lift into its reduced representative.
    pub fn from_lift(src: QuotientChart, dst: QuotientChart, lift: &PolyMap) -> Result<Self> {
        if lift.src_dim() != src.dim() || lift.dst_dim() != dst.dim() {
            return Err(Error::DimensionMismatch { expected: dst.dim(), got: lift.dst_dim() });
        }
        let degree = lift.degree();
        let mut best: Option<(CoeffVector, PolyMap)> = None;
        for eta in 0..dst.group().order() {
            let moved = lift.apply_matrix(dst.group().element(eta));
            let key = CoeffVector::from_polymap(&moved, degree)
                .expect("orthogonal post-composition preserves degree");
            match &best {
                Some((k, _)) if *k <= key => {}
                _ => best = Some((key, moved)),
            }
        }
        let (_, lift_rep) = best.expect("groups are nonempty");
        Ok(ReducedMap { src, dst, lift_rep })
    }

    pub fn src(&self) -> &QuotientChart {
        &self.src
    }

    pub fn dst(&self) -> &QuotientChart {
        &self.dst
    }

    /// The canonical representative lift.
    pub fn lift_rep(&self) -> &PolyMap {
        &self.lift_rep
    }

    /// Identity lifts act trivially at this level.
    pub fn translated(&self, _eta: usize) -> ReducedMap {
        self.clone()
    }
}

/// Homomorphism data remembering its underlying map through a witness lift.
///
/// Two values are equal when their homomorphisms agree and their witness
/// lifts define the same underlying reduced map; the witness itself is not
/// part of the identity.
#[derive(Debug, Clone)]
pub struct CompleteReducedMap {
    src: QuotientChart,
    dst: QuotientChart,
    theta: GroupHom,
    witness_lift: PolyMap,
    reduced: ReducedMap,
}

impl CompleteReducedMap {
    pub fn new(
        src: QuotientChart,
        dst: QuotientChart,
        theta: GroupHom,
        witness_lift: PolyMap,
    ) -> Result<Self> {
        // The witness must genuinely carry the homomorphism.
        let complete = CompleteMap::new(src, dst, witness_lift, theta)?;
        Ok(CompleteReducedMap {
            reduced: ReducedMap::from_lift(
                complete.src.clone(),
                complete.dst.clone(),
                &complete.lift,
            )?,
            src: complete.src,
            dst: complete.dst,
            theta: complete.theta,
            witness_lift: complete.lift,
        })
    }

    pub fn src(&self) -> &QuotientChart {
        &self.src
    }

    pub fn dst(&self) -> &QuotientChart {
        &self.dst
    }

    pub fn theta(&self) -> &GroupHom {
        &self.theta
    }

    pub fn witness_lift(&self) -> &PolyMap {
        &self.witness_lift
    }

    pub fn reduced(&self) -> &ReducedMap {
        &self.reduced
    }

    /// Conjugate the homomorphism and move the witness along.
    pub fn translated(&self, eta: usize) -> CompleteReducedMap {
        let mat = self.dst.group().element(eta);
        CompleteReducedMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            theta: self.theta.conjugated_by(self.dst.group(), eta),
            witness_lift: self.witness_lift.apply_matrix(mat),
            reduced: self.reduced.clone(),
        }
    }
}

impl PartialEq for CompleteReducedMap {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
            && self.dst == other.dst
            && self.theta == other.theta
            && self.reduced == other.reduced
    }
}

impl Eq for CompleteReducedMap {}

/// Homomorphism data up to conjugation in the destination group, over a
/// fixed underlying map.
///
/// The stored representative is the least image tuple over all conjugates,
/// so equal classes are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaClass {
    src: QuotientChart,
    dst: QuotientChart,
    reduced: ReducedMap,
    rep: GroupHom,
}

impl ThetaClass {
    pub fn of(m: &CompleteReducedMap) -> ThetaClass {
        let dst_group = m.dst().group();
        let rep = (0..dst_group.order())
            .map(|eta| m.theta().conjugated_by(dst_group, eta))
            .min()
            .expect("groups are nonempty");
        ThetaClass {
            src: m.src().clone(),
            dst: m.dst().clone(),
            reduced: m.reduced().clone(),
            rep,
        }
    }

    pub fn src(&self) -> &QuotientChart {
        &self.src
    }

    pub fn dst(&self) -> &QuotientChart {
        &self.dst
    }

    /// Canonical representative homomorphism of the class.
    pub fn representative(&self) -> &GroupHom {
        &self.rep
    }

    pub fn reduced(&self) -> &ReducedMap {
        &self.reduced
    }
}

/// Which data a projection forgets, starting from a [`CompleteMap`].
///
/// The two multi-step routes to the underlying map (through the lift, or
/// through the homomorphism and its conjugacy class) exist so their
/// agreement with the direct route can be stated and tested; they always
/// produce equal [`ReducedMap`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Forgetful {
    /// Forget the homomorphism, keep the lift.
    Homs,
    /// Forget the lift (up to witness), keep the homomorphism.
    Lift,
    /// Forget both in one step: the underlying map.
    Both,
    /// Forget the homomorphism, then the lift's excess: route through
    /// [`OrbifoldMap`].
    BothViaLift,
    /// Forget the lift, then the homomorphism: route through
    /// [`CompleteReducedMap`].
    BothViaHoms,
    /// Forget the lift, then pass to the conjugacy class of the
    /// homomorphism.
    HomsUpToConjugacy,
    /// From the conjugacy class, forget the homomorphism entirely.
    BothViaConjugacy,
}

/// Result of a forgetful projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectedMap {
    Orbifold(OrbifoldMap),
    CompleteReduced(CompleteReducedMap),
    Reduced(ReducedMap),
    Class(ThetaClass),
}

impl ProjectedMap {
    pub fn as_reduced(&self) -> Option<&ReducedMap> {
        match self {
            ProjectedMap::Reduced(r) => Some(r),
            _ => None,
        }
    }
}

/// Apply a forgetful projection to a complete map.
pub fn project(m: &CompleteMap, which: Forgetful) -> Result<ProjectedMap> {
    let orbifold = || OrbifoldMap::new(m.src().clone(), m.dst().clone(), m.lift().clone());
    let complete_reduced = || {
        CompleteReducedMap::new(
            m.src().clone(),
            m.dst().clone(),
            m.theta().clone(),
            m.lift().clone(),
        )
    };
    let reduced = || ReducedMap::from_lift(m.src().clone(), m.dst().clone(), m.lift());
    Ok(match which {
        Forgetful::Homs => ProjectedMap::Orbifold(orbifold()?),
        Forgetful::Lift => ProjectedMap::CompleteReduced(complete_reduced()?),
        Forgetful::Both => ProjectedMap::Reduced(reduced()?),
        Forgetful::BothViaLift => {
            let f = orbifold()?;
            ProjectedMap::Reduced(ReducedMap::from_lift(
                f.src().clone(),
                f.dst().clone(),
                f.lift(),
            )?)
        }
        Forgetful::BothViaHoms => ProjectedMap::Reduced(complete_reduced()?.reduced().clone()),
        Forgetful::HomsUpToConjugacy => ProjectedMap::Class(ThetaClass::of(&complete_reduced()?)),
        Forgetful::BothViaConjugacy => {
            ProjectedMap::Reduced(ThetaClass::of(&complete_reduced()?).reduced().clone())
        }
    })
}

/// The fiber of the underlying-map projection over a reduced map: every
/// orbifold map whose lift post-composes to the same underlying map,
/// deduplicated and sorted by lift coefficients.
pub fn fiber_of_qdot_over(rf: &ReducedMap) -> Result<Vec<OrbifoldMap>> {
    let degree = rf.lift_rep().degree();
    let mut lifts: Vec<(CoeffVector, PolyMap)> = Vec::new();
    for eta in 0..rf.dst().group().order() {
        let moved = rf.lift_rep().apply_matrix(rf.dst().group().element(eta));
        let key = CoeffVector::from_polymap(&moved, degree)
            .expect("orthogonal post-composition preserves degree");
        if lifts.iter().all(|(k, _)| *k != key) {
            lifts.push((key, moved));
        }
    }
    lifts.sort_by(|(a, _), (b, _)| a.cmp(b));
    lifts
        .into_iter()
        .map(|(_, lift)| OrbifoldMap::new(rf.src().clone(), rf.dst().clone(), lift))
        .collect()
}

/// Types on which lifts of the destination identity map act.
pub trait IdentityLiftAction: Sized {
    fn dst_chart(&self) -> &QuotientChart;
    /// Act by the destination element with index `eta`.
    fn acted_on_by(&self, eta: usize) -> Self;
}

impl IdentityLiftAction for CompleteMap {
    fn dst_chart(&self) -> &QuotientChart {
        self.dst()
    }
    fn acted_on_by(&self, eta: usize) -> Self {
        self.translated(eta)
    }
}

impl IdentityLiftAction for OrbifoldMap {
    fn dst_chart(&self) -> &QuotientChart {
        self.dst()
    }
    fn acted_on_by(&self, eta: usize) -> Self {
        self.translated(eta)
    }
}

impl IdentityLiftAction for CompleteReducedMap {
    fn dst_chart(&self) -> &QuotientChart {
        self.dst()
    }
    fn acted_on_by(&self, eta: usize) -> Self {
        self.translated(eta)
    }
}

impl IdentityLiftAction for ReducedMap {
    fn dst_chart(&self) -> &QuotientChart {
        self.dst()
    }
    fn acted_on_by(&self, eta: usize) -> Self {
        self.translated(eta)
    }
}

/// Act on a map by a lift of the destination identity map.
///
/// The lift group must live on the map's destination chart.
pub fn id_action<T: IdentityLiftAction>(
    lifts: &IdentityLiftGroup,
    eta: usize,
    m: &T,
) -> Result<T> {
    if lifts.chart() != m.dst_chart() {
        return Err(Error::ChartMismatch);
    }
    if eta >= lifts.order() {
        return Err(Error::Invalid(format!("no identity lift with index {eta}")));
    }
    Ok(m.acted_on_by(eta))
}

/// Orbit and isotropy of a map under a subgroup of destination identity
/// lifts, with the orbit–stabilizer identity verified exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData<T> {
    pub orbit: Vec<T>,
    pub isotropy: Subgroup,
}

pub fn orbit_and_isotropy<T>(m: &T, sub: &Subgroup) -> Result<OrbitData<T>>
where
    T: IdentityLiftAction + PartialEq + Clone,
{
    let group = m.dst_chart().group();
    // Re-validate the subgroup against this parent.
    let sub = Subgroup::new(group, sub.members().to_vec())?;
    let mut orbit: Vec<T> = Vec::new();
    let mut stabilizer: Vec<usize> = Vec::new();
    for &eta in sub.members() {
        let moved = m.acted_on_by(eta);
        if moved == *m {
            stabilizer.push(eta);
        }
        if !orbit.contains(&moved) {
            orbit.push(moved);
        }
    }
    let isotropy = Subgroup::new(group, stabilizer).map_err(|_| Error::NotASubgroup)?;
    assert_eq!(
        orbit.len() * isotropy.order(),
        sub.order(),
        "orbit-stabilizer identity must hold exactly"
    );
    Ok(OrbitData { orbit, isotropy })
}

/// What the single-chart neighborhood comparison reports for a pair of
/// complete maps on the same charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborhoodReport {
    /// The homomorphism data agrees exactly.
    pub theta_match: bool,
    /// The second map sends the origin into the stratum fixed by the image
    /// of the first map's homomorphism.
    pub origin_in_stratum: bool,
}

impl NeighborhoodReport {
    /// The defining condition for membership in the same neighborhood model.
    pub fn compatible(&self) -> bool {
        self.theta_match
    }
}

/// Compare `g` against the neighborhood data of `f` on the same charts.
pub fn neighborhood_compatible(f: &CompleteMap, g: &CompleteMap) -> Result<NeighborhoodReport> {
    if f.src() != g.src() || f.dst() != g.dst() {
        return Err(Error::ChartMismatch);
    }
    let theta_match = f.theta() == g.theta();
    let image = f.theta().image_subgroup(f.dst().group());
    let stratum = fixed_subspace(f.dst().group(), &image)?;
    let origin = vec![Rat::zero(); f.src().dim()];
    let value = g.lift().evaluate(&origin);
    Ok(NeighborhoodReport { theta_match, origin_in_stratum: stratum.contains(&value) })
}

/// The centralizer of the image of a complete map's homomorphism inside the
/// destination group: the identity lifts connecting equal-homomorphism
/// completions of the same underlying map.
pub fn connecting_centralizer(m: &CompleteMap) -> Result<Subgroup> {
    let image = m.theta().image_subgroup(m.dst().group());
    centralizer(m.dst().group(), &image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::close_group;
    use crate::linalg::{rat, QMatrix};
    use crate::orbifold::identity_lift_group;
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

    fn signs3_chart() -> QuotientChart {
        let a = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let b = mat(3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
        let c = mat(3, &[1, 0, 0, 0, 1, 0, 0, 0, -1]);
        QuotientChart::new("signs3", close_group(3, &[a, b, c]).unwrap())
    }

    fn perm_chart() -> QuotientChart {
        let swap = mat(3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        let cycle = mat(3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        QuotientChart::new("perm3", close_group(3, &[swap, cycle]).unwrap())
    }

    fn axis_lift() -> PolyMap {
        PolyMap::new(1, vec![Poly::variable(1, 0), Poly::zero(1), Poly::zero(1)]).unwrap()
    }

    fn constant_zero_map() -> OrbifoldMap {
        let c = line_chart();
        OrbifoldMap::new(c.clone(), c, PolyMap::zero(1, 1)).unwrap()
    }

    #[test]
    fn constant_map_has_two_complete_lifts() {
        let f = constant_zero_map();
        let lifts = complete_lifts_over(&f);
        assert_eq!(lifts.len(), 2);
        // Sorted by image tuple: the identity homomorphism [0, 1] precedes
        // the trivial one [1, 1] (the flip is element 0, identity element 1).
        assert_eq!(lifts[0].theta().images(), &[0, 1]);
        assert_eq!(lifts[1].theta().images(), &[1, 1]);
    }

    #[test]
    fn axis_inclusion_has_the_two_double_flip_lifts() {
        let f = OrbifoldMap::new(line_chart(), flips_chart(), axis_lift()).unwrap();
        let lifts = complete_lifts_over(&f);
        assert_eq!(lifts.len(), 2);
        let flips = flips_chart();
        let j = flips.group().index_of(&mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1])).unwrap();
        let k = flips.group().index_of(&mat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1])).unwrap();
        let images: Vec<usize> = lifts.iter().map(|m| m.theta().image_of(0)).collect();
        // Both double flips appear, each exactly once (sorted order).
        assert_eq!(images, vec![k.min(j), k.max(j)]);
    }

    #[test]
    fn identity_map_has_exactly_one_lift() {
        let c = perm_chart();
        let f = OrbifoldMap::new(c.clone(), c.clone(), PolyMap::identity(3)).unwrap();
        let lifts = complete_lifts_over(&f);
        assert_eq!(lifts.len(), 1);
        assert_eq!(lifts[0].theta(), &GroupHom::identity(c.group()));
    }

    #[test]
    fn axis_into_signs_has_four_lifts() {
        let f = OrbifoldMap::new(line_chart(), signs3_chart(), axis_lift()).unwrap();
        assert_eq!(complete_lifts_over(&f).len(), 4);
    }

    #[test]
    fn unliftable_polynomials_are_rejected() {
        let c = line_chart();
        let mixed = {
            let mut p = Poly::zero(1);
            p.add_term(vec![2], rat(1));
            p.add_term(vec![3], rat(1));
            PolyMap::new(1, vec![p]).unwrap()
        };
        assert_eq!(
            OrbifoldMap::new(c.clone(), c, mixed).unwrap_err(),
            Error::NoLifts
        );
    }

    #[test]
    fn make_complete_validates_equivariance() {
        let src = line_chart();
        let dst = flips_chart();
        let jk = dst.group().index_of(&mat(3, &[1, 0, 0, 0, -1, 0, 0, 0, -1])).unwrap();
        let theta = GroupHom::from_generator_images(src.group(), dst.group(), &[jk]).unwrap();
        assert_eq!(
            CompleteMap::new(src, dst, axis_lift(), theta).unwrap_err(),
            Error::NotEquivariant
        );
    }

    #[test]
    fn same_lift_homomorphisms_fix_the_image() {
        // Any two equivariance homomorphisms of one lift differ by elements
        // acting trivially on the image: (Θ'(γ)⁻¹·Θ(γ))·lift = lift.
        for f in [
            constant_zero_map(),
            OrbifoldMap::new(line_chart(), flips_chart(), axis_lift()).unwrap(),
            OrbifoldMap::new(line_chart(), signs3_chart(), axis_lift()).unwrap(),
        ] {
            let lifts = complete_lifts_over(&f);
            for a in &lifts {
                for b in &lifts {
                    for g in 0..f.src().group().order() {
                        let dst = f.dst().group();
                        let connect = dst.mul_idx(dst.inv_idx(b.theta().image_of(g)), a.theta().image_of(g));
                        assert_eq!(f.lift().apply_matrix(dst.element(connect)), *f.lift());
                    }
                }
            }
        }
    }

    #[test]
    fn projection_routes_agree() {
        let f = OrbifoldMap::new(line_chart(), flips_chart(), axis_lift()).unwrap();
        for m in complete_lifts_over(&f) {
            let direct = project(&m, Forgetful::Both).unwrap();
            let via_lift = project(&m, Forgetful::BothViaLift).unwrap();
            let via_homs = project(&m, Forgetful::BothViaHoms).unwrap();
            let via_class = project(&m, Forgetful::BothViaConjugacy).unwrap();
            assert_eq!(direct, via_lift);
            assert_eq!(direct, via_homs);
            assert_eq!(direct, via_class);
        }
    }

    #[test]
    fn reduced_representative_is_orbit_least() {
        let r = ReducedMap::from_lift(line_chart(), flips_chart(), &axis_lift()).unwrap();
        // The orbit of (y,0,0) is {(y,0,0), (−y,0,0)}; the least coefficient
        // vector is the negated one.
        assert_eq!(
            r.lift_rep().evaluate(&[rat(1)]),
            vec![rat(-1), rat(0), rat(0)]
        );
        // Canonicalization is idempotent and orbit-invariant.
        for eta in 0..flips_chart().group().order() {
            let moved = axis_lift().apply_matrix(flips_chart().group().element(eta));
            let r2 = ReducedMap::from_lift(line_chart(), flips_chart(), &moved).unwrap();
            assert_eq!(r, r2);
        }
    }

    #[test]
    fn conjugacy_classes_separate_the_double_flips() {
        let f = OrbifoldMap::new(line_chart(), flips_chart(), axis_lift()).unwrap();
        let lifts = complete_lifts_over(&f);
        let classes: Vec<ProjectedMap> = lifts
            .iter()
            .map(|m| project(m, Forgetful::HomsUpToConjugacy).unwrap())
            .collect();
        // The destination group is abelian, so conjugation cannot merge the
        // two homomorphisms.
        assert_ne!(classes[0], classes[1]);
    }

    #[test]
    fn underlying_fiber_of_the_axis_map() {
        let r = ReducedMap::from_lift(line_chart(), flips_chart(), &axis_lift()).unwrap();
        let fiber = fiber_of_qdot_over(&r).unwrap();
        // Both double flips act the same way on the axis, so the orbit has
        // two distinct lifts: ±(y,0,0).
        assert_eq!(fiber.len(), 2);
        let values: Vec<Vec<Rat>> = fiber.iter().map(|f| f.lift().evaluate(&[rat(1)])).collect();
        assert_eq!(values[0], vec![rat(-1), rat(0), rat(0)]);
        assert_eq!(values[1], vec![rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn id_action_respects_charts_and_group_law() {
        let f = OrbifoldMap::new(line_chart(), signs3_chart(), axis_lift()).unwrap();
        let m = &complete_lifts_over(&f)[0];
        let lifts = identity_lift_group(f.dst());
        // A lift fixing the image axis acts trivially.
        let fix = f.dst().group().index_of(&mat(3, &[1, 0, 0, 0, -1, 0, 0, 0, 1])).unwrap();
        assert_eq!(&id_action(&lifts, fix, m).unwrap(), m);
        // Group law: acting by a then b equals acting by a·b.
        let g = f.dst().group();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let one_step = id_action(&lifts, g.mul_idx(a, b), m).unwrap();
                let two_step = id_action(&lifts, a, &id_action(&lifts, b, m).unwrap()).unwrap();
                assert_eq!(one_step, two_step);
            }
        }
        // Wrong chart: the lift group of the source cannot act.
        let wrong = identity_lift_group(f.src());
        assert_eq!(id_action(&wrong, 0, m).unwrap_err(), Error::ChartMismatch);
    }

    #[test]
    fn axis_orbit_and_isotropy_in_the_sign_cube() {
        let f = OrbifoldMap::new(line_chart(), signs3_chart(), axis_lift()).unwrap();
        let lifts = complete_lifts_over(&f);
        let first = lifts
            .iter()
            .find(|m| {
                *f.dst().group().element(m.theta().image_of(0))
                    == mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, 1])
            })
            .expect("the first-axis flip is an equivariance homomorphism");
        let sub = connecting_centralizer(first).unwrap();
        // The sign cube is abelian: the centralizer is everything.
        assert_eq!(sub.order(), 8);
        let data = orbit_and_isotropy(first, &sub).unwrap();
        assert_eq!(data.orbit.len(), 2);
        assert_eq!(data.isotropy.order(), 4);
    }

    #[test]
    fn neighborhood_comparison_on_the_double_flip_example() {
        let src = line_chart();
        let dst = flips_chart();
        let j = dst.group().index_of(&mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1])).unwrap();
        let theta_j = GroupHom::from_generator_images(src.group(), dst.group(), &[j]).unwrap();
        let f = CompleteMap::new(src.clone(), dst.clone(), axis_lift(), theta_j.clone()).unwrap();
        // g: y ↦ (y + y³, y², 0) is also equivariant over the same
        // homomorphism and sends the origin to the fixed axis.
        let g_lift = {
            let mut c0 = Poly::variable(1, 0);
            c0.add_term(vec![3], rat(1));
            let mut c1 = Poly::zero(1);
            c1.add_term(vec![2], rat(1));
            PolyMap::new(1, vec![c0, c1, Poly::zero(1)]).unwrap()
        };
        let g = CompleteMap::new(src.clone(), dst.clone(), g_lift, theta_j).unwrap();
        let report = neighborhood_compatible(&f, &g).unwrap();
        assert!(report.theta_match);
        assert!(report.origin_in_stratum);
        assert!(report.compatible());

        // The other complete lift of the same underlying map is not in the
        // same neighborhood model.
        let k = dst.group().index_of(&mat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1])).unwrap();
        let theta_k = GroupHom::from_generator_images(src.group(), dst.group(), &[k]).unwrap();
        let f_k = CompleteMap::new(src, dst, axis_lift(), theta_k).unwrap();
        let report2 = neighborhood_compatible(&f, &f_k).unwrap();
        assert!(!report2.theta_match);
        assert!(!report2.compatible());
    }

    #[test]
    fn connecting_elements_lie_in_the_centralizer() {
        // Completions with equal homomorphism data over one underlying map
        // are linked by identity lifts commuting with the homomorphism's
        // image: for every translate, some connecting element found by
        // search lies in the centralizer.
        for f in [
            constant_zero_map(),
            OrbifoldMap::new(line_chart(), flips_chart(), axis_lift()).unwrap(),
            OrbifoldMap::new(line_chart(), signs3_chart(), axis_lift()).unwrap(),
        ] {
            for m in complete_lifts_over(&f) {
                let cz = connecting_centralizer(&m).unwrap();
                for &eta in cz.members() {
                    let moved = m.acted_on_by(eta);
                    if moved.theta() != m.theta() {
                        continue;
                    }
                    let dst = m.dst().group();
                    let connectors: Vec<usize> = (0..dst.order())
                        .filter(|&c| m.lift().apply_matrix(dst.element(c)) == *moved.lift())
                        .collect();
                    assert!(
                        connectors.iter().any(|&c| cz.contains(c)),
                        "a connecting element must centralize the image"
                    );
                }
            }
        }
    }
}
