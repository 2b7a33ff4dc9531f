//! The flat exponential chart around a complete map and the stratification
//! of its perturbation neighborhood by lift compatibility.
//!
//! With orthogonal chart actions the flat exponential `exp_z(v) = z + v` is
//! equivariant, so pushing an equivariant section through it is literal
//! polynomial addition.  A neighborhood of a map with `k` complete lifts
//! splits into strata indexed by subsets `J ⊆ {1..k}`: the perturbations
//! compatible with exactly the lifts in `J`.  Each stratum is modeled by an
//! exact linear subspace of the bounded-degree coefficient space, and
//! nonemptiness is decided by a dimension criterion rather than sampling.

use crate::bundles::{pullback, Orbisection};
use crate::error::{Error, Result};
use crate::groups::{FiniteMatrixGroup, GroupHom};
use crate::json::{polymap_to_json, PolyMapJson};
use crate::linalg::{QMatrix, Rat, Subspace};
use crate::maps::{complete_lifts_over, CompleteMap, OrbifoldMap};
use crate::polymap::{constrained_subspace, CoeffSpace, PolyMap, DEFAULT_COEFF_CAP};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest number of complete lifts a stratification will enumerate
/// subsets of.
pub const DEFAULT_STRATA_CAP: usize = 16;

/// The exponential chart around a complete map: perturbations of bounded
/// degree, pushed through the flat exponential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpChart {
    base: CompleteMap,
    degree: u32,
}

impl ExpChart {
    pub fn new(base: CompleteMap, degree: u32) -> ExpChart {
        // The flat exponential is equivariant because the actions are
        // linear: γ(z + v) = γz + γv.  Assert it once on concrete vectors.
        let group = base.dst().group();
        let m = base.dst().dim();
        let z: Vec<Rat> = (1..=m as i64).map(crate::linalg::rat).collect();
        let v: Vec<Rat> = (1..=m as i64).map(|i| crate::linalg::rat(i * i + 1)).collect();
        let zv: Vec<Rat> = z.iter().zip(&v).map(|(a, b)| a + b).collect();
        for g in 0..group.order() {
            let gz = group.element(g).apply(&z);
            let gv = group.element(g).apply(&v);
            let sum: Vec<Rat> = gz.iter().zip(&gv).map(|(a, b)| a + b).collect();
            assert_eq!(group.element(g).apply(&zv), sum, "flat exponential must be equivariant");
        }
        ExpChart { base, degree }
    }

    pub fn base(&self) -> &CompleteMap {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The space of equivariant polynomial sections of degree at most the
    /// chart degree: the exact domain this chart can push forward.
    pub fn section_space(&self) -> Result<Subspace> {
        crate::polymap::equivariant_subspace(
            self.base.src().group(),
            self.base.theta(),
            self.base.dst().group(),
            self.degree,
        )
    }
}

/// Push a section through the exponential chart: the perturbed complete map
/// with lift `base + section` and unchanged homomorphism, re-validated.
pub fn exp_push(chart: &ExpChart, section: &Orbisection) -> Result<CompleteMap> {
    if *section.bundle() != pullback(chart.base()) {
        return Err(Error::BundleMismatch);
    }
    let lift = chart.base().lift().add(section.section());
    CompleteMap::new(
        chart.base().src().clone(),
        chart.base().dst().clone(),
        lift,
        chart.base().theta().clone(),
    )
}

/// Pull a nearby complete map back through the chart: the section
/// `g − base`, validated as an orbisection.
///
/// The two maps must share charts and homomorphism data; a same-lift map
/// with different homomorphism lives in a different neighborhood entirely.
pub fn exp_pull(chart: &ExpChart, g: &CompleteMap) -> Result<Orbisection> {
    if g.src() != chart.base().src() || g.dst() != chart.base().dst() {
        return Err(Error::ChartMismatch);
    }
    if g.theta() != chart.base().theta() {
        return Err(Error::ThetaMismatch);
    }
    let diff = g.lift().sub(chart.base().lift());
    Orbisection::new(pullback(chart.base()), diff)
}

/// Outcome of exercising the exponential chart on a batch of sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub checked: usize,
    pub failures: usize,
}

impl RoundtripReport {
    pub fn all_round_trip(&self) -> bool {
        self.failures == 0
    }
}

/// Check, exactly, that pull∘push is the identity on every sample and that
/// push∘pull returns each pushed map unchanged.
pub fn exp_roundtrip_check(chart: &ExpChart, samples: &[Orbisection]) -> Result<RoundtripReport> {
    let mut failures = 0;
    for s in samples {
        let pushed = exp_push(chart, s)?;
        let pulled = exp_pull(chart, &pushed)?;
        let repushed = exp_push(chart, &pulled)?;
        if pulled != *s || repushed != pushed {
            failures += 1;
        }
    }
    Ok(RoundtripReport { checked: samples.len(), failures })
}

/// Draw equivariant sections of the chart's bundle by combining its section
/// space basis with small seeded rational coefficients.
pub fn sample_sections(chart: &ExpChart, count: usize, seed: u64) -> Result<Vec<Orbisection>> {
    let space = chart.section_space()?;
    let coeff_space =
        CoeffSpace::new(chart.base().src().dim(), chart.base().dst().dim(), chart.degree());
    let bundle = pullback(chart.base());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut v = vec![Rat::zero(); space.ambient_dim()];
        for b in space.basis() {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            let c = Rat::new(num.into(), den.into());
            for (slot, entry) in v.iter_mut().zip(b) {
                *slot += &c * entry;
            }
        }
        let section = coeff_space.from_vector(&v)?;
        out.push(Orbisection::new(bundle.clone(), section)?);
    }
    Ok(out)
}

/// The subspace of degree-bounded perturbations compatible with one lift's
/// homomorphism: sections satisfying `s(γ·x) = Θ(γ)·s(x)` for every `γ`
/// outside the homomorphism's kernel.
///
/// Kernel elements impose no condition: where the homomorphism forgets a
/// symmetry, nearby maps need not respect it.  For injective homomorphisms
/// this is exactly the equivariant subspace.
pub fn lift_compatibility_space(
    src_group: &FiniteMatrixGroup,
    theta: &GroupHom,
    dst_group: &FiniteMatrixGroup,
    degree: u32,
    cap: usize,
) -> Result<Subspace> {
    let assignment: Vec<QMatrix> = (0..src_group.order())
        .map(|g| dst_group.element(theta.image_of(g)).clone())
        .collect();
    let constrained: Vec<usize> = (0..src_group.order())
        .filter(|&g| theta.image_of(g) != dst_group.identity_index())
        .collect();
    constrained_subspace(src_group, &assignment, degree, &constrained, dst_group.dim(), cap)
}

/// One stratum of the perturbation neighborhood: the perturbations
/// compatible with exactly the lifts in `indices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    indices: Vec<usize>,
    subspace: Subspace,
    nonempty: bool,
    witness: Option<PolyMap>,
}

impl Stratum {
    /// 1-based positions into the lift list, sorted ascending.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The compatibility subspace `W_J`: perturbations compatible with
    /// every lift in the index set (and possibly more).
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Whether perturbations compatible with exactly this index set exist:
    /// adjoining any outside lift must strictly drop the dimension.
    pub fn nonempty(&self) -> bool {
        self.nonempty
    }

    /// A perturbation whose compatibility set is exactly this index set,
    /// present on every nonempty stratum.
    pub fn witness(&self) -> Option<&PolyMap> {
        self.witness.as_ref()
    }

    /// Display form of the index set, e.g. `{1,2}`.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// The stratification of a map neighborhood: every subset of the complete
/// lifts, its compatibility subspace, nonemptiness, and the closure order.
#[derive(Debug, Clone)]
pub struct StrataPoset {
    base: OrbifoldMap,
    lifts: Vec<CompleteMap>,
    degree: u32,
    ambient_dim: usize,
    strata: Vec<Stratum>,
}

impl StrataPoset {
    pub fn base(&self) -> &OrbifoldMap {
        &self.base
    }

    /// The complete lifts, in homomorphism order; stratum indices are
    /// 1-based positions into this list.
    pub fn lifts(&self) -> &[CompleteMap] {
        &self.lifts
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension of the full bounded-degree coefficient space the strata
    /// live in.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// All strata, sorted by index-set size then lexicographically.
    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, indices: &[usize]) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.indices == indices)
    }

    pub fn nonempty_strata(&self) -> Vec<&Stratum> {
        self.strata.iter().filter(|s| s.nonempty).collect()
    }

    /// Strict containment of index sets: the closure order on strata.
    pub fn precedes(a: &[usize], b: &[usize]) -> bool {
        a.len() < b.len() && a.iter().all(|i| b.contains(i))
    }

    /// Covering relations of the closure order among nonempty strata, as
    /// pairs `(lower, upper)` of index sets, deterministically ordered.
    pub fn edges(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let nodes: Vec<&Stratum> = self.nonempty_strata();
        let mut edges = Vec::new();
        for a in &nodes {
            for b in &nodes {
                if !Self::precedes(&a.indices, &b.indices) {
                    continue;
                }
                let intermediate = nodes.iter().any(|c| {
                    Self::precedes(&a.indices, &c.indices) && Self::precedes(&c.indices, &b.indices)
                });
                if !intermediate {
                    edges.push((a.indices.clone(), b.indices.clone()));
                }
            }
        }
        edges
    }
}

fn subset_indices(mask: u32, k: usize) -> Vec<usize> {
    (0..k).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Search for a vector of `w_j` whose compatibility set is exactly the
/// lifts flagged in `mask`: first the basis sum, then seeded small-integer
/// combinations.
fn find_witness(
    w_j: &Subspace,
    singletons: &[Subspace],
    mask: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Rat>> {
    let membership_is_exact = |v: &[Rat]| -> bool {
        singletons
            .iter()
            .enumerate()
            .all(|(i, w)| w.contains(v) == (mask & (1 << i) != 0))
    };
    let mut candidate = vec![Rat::zero(); w_j.ambient_dim()];
    for b in w_j.basis() {
        for (slot, entry) in candidate.iter_mut().zip(b) {
            *slot += entry;
        }
    }
    if w_j.basis().is_empty() {
        // The zero perturbation is compatible with every lift; it is a
        // valid witness only for the full index set.
        return if membership_is_exact(&candidate) {
            Ok(candidate)
        } else {
            Err(Error::WitnessNotFound)
        };
    }
    if membership_is_exact(&candidate) {
        return Ok(candidate);
    }
    for _ in 0..256 {
        let mut v = vec![Rat::zero(); w_j.ambient_dim()];
        for b in w_j.basis() {
            let c = crate::linalg::rat(rng.gen_range(-3i64..=3));
            for (slot, entry) in v.iter_mut().zip(b) {
                *slot += &c * entry;
            }
        }
        if membership_is_exact(&v) {
            return Ok(v);
        }
    }
    Err(Error::WitnessNotFound)
}

/// Stratify the degree-bounded perturbation neighborhood of an orbifold
/// map.  Uses the fixed default seed for the witness fallback.
pub fn strata_poset(f: &OrbifoldMap, degree: u32) -> Result<StrataPoset> {
    strata_poset_with(f, degree, 0, DEFAULT_STRATA_CAP, DEFAULT_COEFF_CAP)
}

/// [`strata_poset`] with explicit witness seed, lift cap, and coefficient
/// cap.
pub fn strata_poset_with(
    f: &OrbifoldMap,
    degree: u32,
    seed: u64,
    strata_cap: usize,
    coeff_cap: usize,
) -> Result<StrataPoset> {
    let lifts = complete_lifts_over(f);
    let k = lifts.len();
    if k > strata_cap {
        return Err(Error::StrataCapExceeded { lifts: k, cap: strata_cap });
    }
    let src_group = f.src().group();
    let dst_group = f.dst().group();
    let ambient_dim = CoeffSpace::new(f.src().dim(), f.dst().dim(), degree).dim();

    let singletons: Vec<Subspace> = lifts
        .iter()
        .map(|m| lift_compatibility_space(src_group, m.theta(), dst_group, degree, coeff_cap))
        .collect::<Result<_>>()?;

    // Intersections for every subset, built up one lift at a time.
    let full = Subspace::full(ambient_dim);
    let mut by_mask: Vec<Subspace> = Vec::with_capacity(1 << k);
    by_mask.push(full);
    for mask in 1..(1u32 << k) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let w = by_mask[rest as usize].intersect(&singletons[low]);
        // Adding constraints can only shrink the space.
        debug_assert!(w.is_subspace_of(&by_mask[rest as usize]));
        by_mask.push(w);
    }

    let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), subset_indices(m, k)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeff_space = CoeffSpace::new(f.src().dim(), f.dst().dim(), degree);
    let mut strata = Vec::with_capacity(masks.len());
    for &mask in &masks {
        let subspace = by_mask[mask as usize].clone();
        let nonempty = (0..k).filter(|i| mask & (1 << i) == 0).all(|i| {
            by_mask[(mask | (1 << i)) as usize].dim() < subspace.dim()
        });
        let witness = if nonempty {
            let v = find_witness(&subspace, &singletons, mask, &mut rng)?;
            Some(coeff_space.from_vector(&v)?)
        } else {
            None
        };
        strata.push(Stratum { indices: subset_indices(mask, k), subspace, nonempty, witness });
    }

    Ok(StrataPoset { base: f.clone(), lifts, degree, ambient_dim, strata })
}

/// Output formats for a stratification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetFormat {
    Dot,
    Json,
}

/// JSON shape of an exported stratification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetReport {
    pub degree: u32,
    pub lift_count: usize,
    pub ambient_dim: usize,
    pub strata: Vec<StratumReport>,
    /// Covering relations among nonempty strata: `[lower, upper]` index
    /// sets.
    pub edges: Vec<[Vec<usize>; 2]>,
}

/// JSON shape of one stratum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumReport {
    pub indices: Vec<usize>,
    pub dim: usize,
    pub nonempty: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<PolyMapJson>,
}

/// Render a stratification as DOT (nonempty strata only) or JSON (all
/// strata plus edges).  Both forms are byte-deterministic.
pub fn export_poset(p: &StrataPoset, format: PosetFormat) -> String {
    match format {
        PosetFormat::Dot => {
            let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
            for s in p.nonempty_strata() {
                out.push_str(&format!("  \"{}\" [label=\"{}:{}\"];\n", s.label(), s.label(), s.dim()));
            }
            for (a, b) in p.edges() {
                let fmt = |ix: &[usize]| {
                    let inner: Vec<String> = ix.iter().map(|i| i.to_string()).collect();
                    format!("{{{}}}", inner.join(","))
                };
                out.push_str(&format!("  \"{}\" -> \"{}\";\n", fmt(&a), fmt(&b)));
            }
            out.push_str("}\n");
            out
        }
        PosetFormat::Json => {
            let report = PosetReport {
                degree: p.degree(),
                lift_count: p.lifts().len(),
                ambient_dim: p.ambient_dim(),
                strata: p
                    .strata()
                    .iter()
                    .map(|s| StratumReport {
                        indices: s.indices().to_vec(),
                        dim: s.dim(),
                        nonempty: s.nonempty(),
                        witness: s.witness().map(polymap_to_json),
                    })
                    .collect(),
                edges: p.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            };
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::close_group;
    use crate::linalg::rat;
    use crate::orbifold::QuotientChart;
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

    fn axis_map() -> OrbifoldMap {
        OrbifoldMap::new(line_chart(), flips_chart(), axis_lift()).unwrap()
    }

    fn j_completion() -> CompleteMap {
        complete_lifts_over(&axis_map())
            .into_iter()
            .find(|m| {
                *m.dst().group().element(m.theta().image_of(0))
                    == mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1])
            })
            .unwrap()
    }

    fn cubic_section(bundle: crate::bundles::PullbackBundleData) -> Orbisection {
        let s = {
            let mut c0 = Poly::zero(1);
            c0.add_term(vec![3], rat(1));
            let mut c1 = Poly::zero(1);
            c1.add_term(vec![2], rat(1));
            PolyMap::new(1, vec![c0, c1, Poly::variable(1, 0)]).unwrap()
        };
        Orbisection::new(bundle, s).unwrap()
    }

    #[test]
    fn pushing_the_zero_section_returns_the_base() {
        let base = j_completion();
        let chart = ExpChart::new(base.clone(), 3);
        let zero = Orbisection::zero(pullback(&base));
        assert_eq!(exp_push(&chart, &zero).unwrap(), base);
    }

    #[test]
    fn pushing_a_cubic_section_perturbs_the_lift() {
        let base = j_completion();
        let chart = ExpChart::new(base.clone(), 3);
        let s = cubic_section(pullback(&base));
        let pushed = exp_push(&chart, &s).unwrap();
        assert_eq!(pushed.theta(), base.theta());
        // lift = (y + y³, y², y).
        assert_eq!(
            pushed.lift().evaluate(&[rat(2)]),
            vec![rat(10), rat(4), rat(2)]
        );
    }

    #[test]
    fn odd_perturbation_of_the_constant_map() {
        let c = line_chart();
        let base = CompleteMap::new(
            c.clone(),
            c.clone(),
            PolyMap::zero(1, 1),
            GroupHom::identity(c.group()),
        )
        .unwrap();
        let chart = ExpChart::new(base.clone(), 3);
        let s = Orbisection::new(pullback(&base), PolyMap::identity(1)).unwrap();
        let pushed = exp_push(&chart, &s).unwrap();
        assert_eq!(pushed.lift(), &PolyMap::identity(1));
        assert_eq!(pushed.theta(), base.theta());
    }

    #[test]
    fn pulling_back_subtracts_the_base() {
        let base = j_completion();
        let chart = ExpChart::new(base.clone(), 3);
        // Pulling the base itself gives the zero section.
        let zero = exp_pull(&chart, &base).unwrap();
        assert!(zero.section().is_zero());
        // Pulling a perturbed map recovers the perturbation.
        let s = cubic_section(pullback(&base));
        let pushed = exp_push(&chart, &s).unwrap();
        assert_eq!(exp_pull(&chart, &pushed).unwrap(), s);
    }

    #[test]
    fn different_homomorphism_is_a_theta_mismatch() {
        let lifts = complete_lifts_over(&axis_map());
        let chart = ExpChart::new(lifts[0].clone(), 3);
        assert_eq!(exp_pull(&chart, &lifts[1]).unwrap_err(), Error::ThetaMismatch);
    }

    #[test]
    fn wrong_bundle_is_a_mismatch() {
        let lifts = complete_lifts_over(&axis_map());
        let chart = ExpChart::new(lifts[0].clone(), 3);
        let foreign = Orbisection::zero(pullback(&lifts[1]));
        assert_eq!(exp_push(&chart, &foreign).unwrap_err(), Error::BundleMismatch);
    }

    #[test]
    fn sampled_sections_round_trip() {
        let base = j_completion();
        let chart = ExpChart::new(base.clone(), 3);
        let mut samples = sample_sections(&chart, 25, 7).unwrap();
        samples.push(Orbisection::zero(pullback(&base)));
        samples.push(cubic_section(pullback(&base)));
        let report = exp_roundtrip_check(&chart, &samples).unwrap();
        assert_eq!(report.checked, 27);
        assert!(report.all_round_trip());
    }

    #[test]
    fn double_flip_stratification_matches_the_worked_numbers() {
        let poset = strata_poset(&axis_map(), 3).unwrap();
        assert_eq!(poset.lifts().len(), 2);
        assert_eq!(poset.ambient_dim(), 12);
        assert_eq!(poset.stratum(&[1]).unwrap().dim(), 6);
        assert_eq!(poset.stratum(&[2]).unwrap().dim(), 6);
        assert_eq!(poset.stratum(&[1, 2]).unwrap().dim(), 2);
        assert!(poset.strata().iter().all(Stratum::nonempty));
        let edges = poset.edges();
        assert_eq!(
            edges,
            vec![
                (vec![1], vec![1, 2]),
                (vec![2], vec![1, 2]),
            ]
        );
        // Witnesses exist and carry exact membership sets.
        for s in poset.strata() {
            let w = s.witness().expect("nonempty strata have witnesses");
            let v = CoeffSpace::new(1, 3, 3).to_vector(w).unwrap();
            for (i, lift) in poset.lifts().iter().enumerate() {
                let w_i = lift_compatibility_space(
                    poset.base().src().group(),
                    lift.theta(),
                    poset.base().dst().group(),
                    3,
                    DEFAULT_COEFF_CAP,
                )
                .unwrap();
                assert_eq!(w_i.contains(&v), s.indices().contains(&(i + 1)));
            }
        }
    }

    #[test]
    fn constant_map_identity_stratum_is_empty() {
        let c = line_chart();
        let f = OrbifoldMap::new(c.clone(), c, PolyMap::zero(1, 1)).unwrap();
        let poset = strata_poset(&f, 3).unwrap();
        // Lift 1 is the identity homomorphism, lift 2 the trivial one.
        assert_eq!(poset.lifts()[0].theta().images(), &[0, 1]);
        let w1 = poset.stratum(&[1]).unwrap();
        let w2 = poset.stratum(&[2]).unwrap();
        let w12 = poset.stratum(&[1, 2]).unwrap();
        // Identity-compatible perturbations are the odd polynomials; the
        // trivial homomorphism imposes nothing.
        assert_eq!(w1.dim(), 2);
        assert_eq!(w2.dim(), 4);
        assert_eq!(w12.dim(), 2);
        assert!(w1.subspace().is_subspace_of(w2.subspace()));
        assert!(w1.dim() < w2.dim());
        // Every identity-compatible perturbation is also compatible with
        // the trivial lift, so the identity-only stratum is empty.
        assert!(!w1.nonempty());
        assert!(w2.nonempty());
        assert!(w12.nonempty());
        assert_eq!(poset.edges(), vec![(vec![2], vec![1, 2])]);
    }

    #[test]
    fn single_lift_means_a_single_stratum() {
        let chart = flips_chart();
        let f = OrbifoldMap::new(chart.clone(), chart, PolyMap::identity(3)).unwrap();
        let poset = strata_poset(&f, 2).unwrap();
        assert_eq!(poset.strata().len(), 1);
        assert!(poset.strata()[0].nonempty());
        assert!(poset.edges().is_empty());
        let dot = export_poset(&poset, PosetFormat::Dot);
        assert_eq!(dot.matches("label=").count(), 1);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn dot_export_is_exact() {
        let poset = strata_poset(&axis_map(), 3).unwrap();
        let dot = export_poset(&poset, PosetFormat::Dot);
        assert_eq!(
            dot,
            "digraph strata {\n  rankdir=BT;\n  \"{1}\" [label=\"{1}:6\"];\n  \"{2}\" [label=\"{2}:6\"];\n  \"{1,2}\" [label=\"{1,2}:2\"];\n  \"{1}\" -> \"{1,2}\";\n  \"{2}\" -> \"{1,2}\";\n}\n"
        );
    }

    #[test]
    fn json_export_round_trips_and_is_deterministic() {
        let poset = strata_poset(&axis_map(), 3).unwrap();
        let a = export_poset(&poset, PosetFormat::Json);
        let b = export_poset(&strata_poset(&axis_map(), 3).unwrap(), PosetFormat::Json);
        assert_eq!(a, b);
        let parsed: PosetReport = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.strata.len(), 3);
        assert_eq!(parsed.edges.len(), 2);
        assert_eq!(parsed.ambient_dim, 12);
    }

    #[test]
    fn witness_fallback_finds_generic_vectors() {
        // Craft subspaces where the basis sum of W_J lands inside an
        // outside singleton, forcing the seeded fallback.
        let w_j = Subspace::from_spanning(
            3,
            vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]],
        )
        .unwrap();
        let trap = Subspace::from_spanning(3, vec![vec![rat(1), rat(1), rat(0)]]).unwrap();
        let singletons = vec![w_j.clone(), trap];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // Mask 0b01: inside the first subspace, outside the trap.
        let v = find_witness(&w_j, &singletons, 0b01, &mut rng).unwrap();
        assert!(singletons[0].contains(&v));
        assert!(!singletons[1].contains(&v));

        // An impossible request errors out rather than looping.
        let zero = Subspace::zero(3);
        assert_eq!(
            find_witness(&zero, &singletons, 0b10, &mut rng).unwrap_err(),
            Error::WitnessNotFound
        );
    }

    #[test]
    fn lift_cap_is_enforced() {
        let err = strata_poset_with(&axis_map(), 3, 0, 1, DEFAULT_COEFF_CAP).unwrap_err();
        assert_eq!(err, Error::StrataCapExceeded { lifts: 2, cap: 1 });
    }
}
