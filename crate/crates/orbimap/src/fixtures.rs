//! Ready-made charts and maps used by the command-line examples, the test
//! suites, and the guide.
//!
//! Every fixture is tiny and exactly reproducible: reflection groups on the
//! line and on 3-space, and the polynomial maps between their quotients
//! whose lift counts, strata, and bundle classes are worked out end to end
//! in the guide.

use crate::error::{Error, Result};
use crate::groups::close_group;
use crate::linalg::{rat, QMatrix};
use crate::maps::OrbifoldMap;
use crate::orbifold::QuotientChart;
use crate::polymap::{Poly, PolyMap};

fn mat(dim: usize, entries: &[i64]) -> QMatrix {
    QMatrix::new(dim, dim, entries.iter().map(|&x| rat(x)).collect())
        .expect("fixture matrices are well-formed")
}

/// The line modulo the sign flip: the half-line quotient.
pub fn line_chart() -> QuotientChart {
    QuotientChart::new("line", close_group(1, &[mat(1, &[-1])]).expect("finite"))
}

/// 3-space modulo the two double sign flips `j = diag(-1,1,-1)` and
/// `k = diag(-1,-1,1)` (a four-group).
pub fn double_flip_chart() -> QuotientChart {
    let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
    let k = mat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1]);
    QuotientChart::new("double-flips", close_group(3, &[j, k]).expect("finite"))
}

/// 3-space modulo all eight sign patterns: the octant quotient.
pub fn sign_cube_chart() -> QuotientChart {
    let a = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, 1]);
    let b = mat(3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
    let c = mat(3, &[1, 0, 0, 0, 1, 0, 0, 0, -1]);
    QuotientChart::new("sign-cube", close_group(3, &[a, b, c]).expect("finite"))
}

/// 3-space modulo coordinate permutations (the symmetric group on three
/// letters, acting by permutation matrices).
pub fn permutation_chart() -> QuotientChart {
    let swap = mat(3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
    let cycle = mat(3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
    QuotientChart::new("permutation", close_group(3, &[swap, cycle]).expect("finite"))
}

/// A chart with the trivial group: plain space, no quotient.
pub fn trivial_chart(dim: usize) -> QuotientChart {
    QuotientChart::new("trivial", close_group(dim, &[]).expect("finite"))
}

/// The first-axis inclusion `y ↦ (y, 0, 0)` of the line into 3-space.
pub fn axis_lift() -> PolyMap {
    PolyMap::new(1, vec![Poly::variable(1, 0), Poly::zero(1), Poly::zero(1)])
        .expect("well-formed")
}

/// The constant map of the half-line to itself, `y ↦ 0`: two complete
/// lifts (identity and trivial homomorphism) with inequivalent pullbacks.
pub fn constant_map_fixture() -> OrbifoldMap {
    OrbifoldMap::new(line_chart(), line_chart(), PolyMap::zero(1, 1))
        .expect("the constant map has complete lifts")
}

/// The axis inclusion of the half-line into the double-flip quotient:
/// exactly two complete lifts whose strata form a three-node poset.
pub fn double_flip_inclusion() -> OrbifoldMap {
    OrbifoldMap::new(line_chart(), double_flip_chart(), axis_lift())
        .expect("the axis inclusion has complete lifts")
}

/// The axis inclusion of the half-line into the octant quotient: four
/// complete lifts with a two-element orbit under identity lifts.
pub fn sign_cube_inclusion() -> OrbifoldMap {
    OrbifoldMap::new(line_chart(), sign_cube_chart(), axis_lift())
        .expect("the axis inclusion has complete lifts")
}

/// The identity map of the permutation quotient: one complete lift, one
/// stratum.
pub fn identity_map_fixture() -> OrbifoldMap {
    let chart = permutation_chart();
    OrbifoldMap::new(chart.clone(), chart, PolyMap::identity(3))
        .expect("the identity map has complete lifts")
}

/// The named example fixtures replayed by the command-line `example`
/// subcommand.
pub const FIXTURE_NAMES: [&str; 4] =
    ["rz2-constant", "z2xz2-inclusion", "ocube-inclusion", "identity-map"];

/// Look up an example fixture by its public name.
pub fn fixture_by_name(name: &str) -> Result<OrbifoldMap> {
    match name {
        "rz2-constant" => Ok(constant_map_fixture()),
        "z2xz2-inclusion" => Ok(double_flip_inclusion()),
        "ocube-inclusion" => Ok(sign_cube_inclusion()),
        "identity-map" => Ok(identity_map_fixture()),
        other => Err(Error::UnknownExample { name: other.to_string() }),
    }
}
