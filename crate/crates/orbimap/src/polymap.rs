//! Polynomial maps with exact rational coefficients.
//!
//! Lifts of orbifold maps between flat charts are polynomial maps
//! `ℝⁿ → ℝᵐ`; equivariance `p(γ·x) = Θ(γ)·p(x)` is then a finite set of
//! exact linear conditions on the coefficients.  This module provides the
//! polynomial arithmetic, the equivariance test, and the translation of
//! polynomial maps into flat coefficient vectors where those conditions
//! become plain linear algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::{FiniteMatrixGroup, GroupHom};
use crate::linalg::{rat, QMatrix, Rat, Subspace};

/// Default cap on the dimension of a coefficient space.
pub const DEFAULT_COEFF_CAP: usize = 4_096;

/// Exponent vector of a monomial, one entry per variable.
pub type Monomial = Vec<u32>;

fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().sum()
}

/// Canonical key for ordering monomials: total degree first, then the
/// exponent vector itself.  All listings in the crate use this order.
fn monomial_key(m: &Monomial) -> (u32, Monomial) {
    (monomial_degree(m), m.clone())
}

/// All monomials in `n` variables of total degree at most `d`, in canonical
/// order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let used: u32 = prefix.iter().sum();
        for e in 0..=(d - used) {
            prefix.push(e);
            rec(n, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by_key(monomial_key);
    out
}

/// A polynomial in `vars` variables with exact rational coefficients.
///
/// Zero coefficients are never stored, and terms live in a sorted map, so
/// equal polynomials are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The coordinate polynomial `x_i`.
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut m = vec![0; vars];
        m[i] = 1;
        let mut p = Poly::zero(vars);
        p.add_term(m, Rat::one());
        p
    }

    /// The linear form `Σ coeffs[j]·x_j`.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let mut p = Poly::zero(coeffs.len());
        for (j, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; coeffs.len()];
            m[j] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomials report degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(monomial_degree).max().unwrap_or(0)
    }

    /// Iterate terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        let mut ts: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        ts.sort_by_key(|(m, _)| monomial_key(m));
        ts.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Add `c·x^m`, dropping the term if the result cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.len(), self.vars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut out = Poly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(self.vars, Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars, "evaluation arity mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `x ↦ A·x`: each variable `x_i` becomes the linear form
    /// given by row `i` of `A`.  Total degree is preserved exactly.
    pub fn compose_linear(&self, a: &QMatrix) -> Poly {
        assert_eq!(a.rows(), self.vars, "substitution arity mismatch");
        let out_vars = a.cols();
        let rows: Vec<Poly> = (0..a.rows()).map(|i| Poly::linear_form(&a.row(i))).collect();
        let mut out = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&rows[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// A polynomial map `ℝⁿ → ℝᵐ`: one [`Poly`] per output component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    src_dim: usize,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(src_dim: usize, components: Vec<Poly>) -> Result<Self> {
        if components.iter().any(|p| p.vars() != src_dim) {
            return Err(Error::DimensionMismatch {
                expected: src_dim,
                got: components.iter().map(Poly::vars).find(|&v| v != src_dim).unwrap_or(0),
            });
        }
        Ok(PolyMap { src_dim, components })
    }

    /// The identity map on `n`-space.
    pub fn identity(n: usize) -> Self {
        PolyMap {
            src_dim: n,
            components: (0..n).map(|i| Poly::variable(n, i)).collect(),
        }
    }

    /// The constant map with the given value.
    pub fn constant(src_dim: usize, value: &[Rat]) -> Self {
        PolyMap {
            src_dim,
            components: value
                .iter()
                .map(|c| Poly::constant(src_dim, c.clone()))
                .collect(),
        }
    }

    pub fn zero(src_dim: usize, dst_dim: usize) -> Self {
        PolyMap {
            src_dim,
            components: (0..dst_dim).map(|_| Poly::zero(src_dim)).collect(),
        }
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn dst_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// Largest total degree over the components.
    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Vec<Rat> {
        self.components.iter().map(|p| p.evaluate(point)).collect()
    }

    pub fn add(&self, other: &PolyMap) -> PolyMap {
        assert_eq!(self.src_dim, other.src_dim);
        assert_eq!(self.dst_dim(), other.dst_dim());
        PolyMap {
            src_dim: self.src_dim,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolyMap) -> PolyMap {
        assert_eq!(self.src_dim, other.src_dim);
        assert_eq!(self.dst_dim(), other.dst_dim());
        PolyMap {
            src_dim: self.src_dim,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PolyMap {
        PolyMap {
            src_dim: self.src_dim,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Pre-compose with a linear map: `x ↦ p(A·x)`.
    pub fn compose_linear(&self, a: &QMatrix) -> PolyMap {
        assert_eq!(a.rows(), self.src_dim, "pre-composition arity mismatch");
        PolyMap {
            src_dim: a.cols(),
            components: self.components.iter().map(|p| p.compose_linear(a)).collect(),
        }
    }

    /// Post-compose with a matrix: `x ↦ B·p(x)`.
    pub fn apply_matrix(&self, b: &QMatrix) -> PolyMap {
        assert_eq!(b.cols(), self.dst_dim(), "post-composition arity mismatch");
        let components = (0..b.rows())
            .map(|k| {
                let mut acc = Poly::zero(self.src_dim);
                for (i, p) in self.components.iter().enumerate() {
                    if !b.get(k, i).is_zero() {
                        acc = acc.add(&p.scale(b.get(k, i)));
                    }
                }
                acc
            })
            .collect();
        PolyMap { src_dim: self.src_dim, components }
    }
}

/// Conjugation of a polynomial map by linear matrices: `x ↦ B·p(A·x)`.
pub fn conjugate_by_linear(p: &PolyMap, a: &QMatrix, b: &QMatrix) -> PolyMap {
    p.compose_linear(a).apply_matrix(b)
}

/// How much of the group the equivariance test should visit.
///
/// Checking the generators suffices: if `p(γ·x) = Θ(γ)·p(x)` holds for two
/// elements it holds for their product, because `Θ` is a homomorphism.  The
/// full-group mode re-verifies that argument element by element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivarianceCheck {
    Generators,
    FullGroup,
}

/// Whether `p(γ·x) = M(γ)·p(x)` holds as an exact polynomial identity, for a
/// matrix assignment `M` indexed like the group's elements.
pub fn is_equivariant_assignment(
    p: &PolyMap,
    group: &FiniteMatrixGroup,
    assignment: &[QMatrix],
    mode: EquivarianceCheck,
) -> bool {
    let indices: Vec<usize> = match mode {
        EquivarianceCheck::Generators => group.generator_indices().to_vec(),
        EquivarianceCheck::FullGroup => (0..group.order()).collect(),
    };
    indices.into_iter().all(|g| {
        p.compose_linear(group.element(g)) == p.apply_matrix(&assignment[g])
    })
}

/// Whether `p(γ·x) = Θ(γ)·p(x)` holds as an exact polynomial identity.
pub fn is_equivariant(
    p: &PolyMap,
    group: &FiniteMatrixGroup,
    theta: &GroupHom,
    target: &FiniteMatrixGroup,
    mode: EquivarianceCheck,
) -> bool {
    if p.src_dim() != group.dim()
        || p.dst_dim() != target.dim()
        || theta.source_order() != group.order()
        || theta.target_order() != target.order()
    {
        return false;
    }
    let assignment = theta.image_matrices(target);
    is_equivariant_assignment(p, group, &assignment, mode)
}

/// The coefficient space of polynomial maps `ℝⁿ → ℝᵐ` of total degree at
/// most `d`, with its fixed monomial basis.
///
/// Flat index layout: component-major, i.e. index `i·N + t` holds the
/// coefficient of monomial `t` (canonical order, `N` monomials) in output
/// component `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSpace {
    src_dim: usize,
    dst_dim: usize,
    degree: u32,
    monomials: Vec<Monomial>,
}

impl CoeffSpace {
    pub fn new(src_dim: usize, dst_dim: usize, degree: u32) -> Self {
        CoeffSpace {
            src_dim,
            dst_dim,
            degree,
            monomials: monomials_up_to(src_dim, degree),
        }
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn dst_dim(&self) -> usize {
        self.dst_dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of monomials per component.
    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    /// Monomials in canonical order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Total dimension `m·N` of the coefficient space.
    pub fn dim(&self) -> usize {
        self.dst_dim * self.monomials.len()
    }

    /// Flatten a polynomial map into exact coefficients.  Errors if the map
    /// has the wrong shape or exceeds the degree bound: overflow is an
    /// error, never a truncation.
    pub fn to_vector(&self, p: &PolyMap) -> Result<Vec<Rat>> {
        if p.src_dim() != self.src_dim || p.dst_dim() != self.dst_dim {
            return Err(Error::DimensionMismatch { expected: self.src_dim, got: p.src_dim() });
        }
        if p.degree() > self.degree {
            return Err(Error::Invalid(format!(
                "polynomial map of degree {} exceeds the coefficient-space bound {}",
                p.degree(),
                self.degree
            )));
        }
        let n = self.monomials.len();
        let mut v = vec![Rat::zero(); self.dim()];
        for (i, comp) in p.components().iter().enumerate() {
            for (t, m) in self.monomials.iter().enumerate() {
                v[i * n + t] = comp.coeff(m);
            }
        }
        Ok(v)
    }

    /// Rebuild the polynomial map a flat coefficient vector denotes.
    pub fn from_vector(&self, v: &[Rat]) -> Result<PolyMap> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        let n = self.monomials.len();
        let components = (0..self.dst_dim)
            .map(|i| {
                let mut p = Poly::zero(self.src_dim);
                for (t, m) in self.monomials.iter().enumerate() {
                    p.add_term(m.clone(), v[i * n + t].clone());
                }
                p
            })
            .collect();
        PolyMap::new(self.src_dim, components)
    }

    /// Matrix of the substitution operator `s ↦ M·s(A·x)` on coefficients.
    ///
    /// With `A = γ⁻¹` and `M = Θ(γ)` its fixed points are exactly the
    /// `Θ`-equivariant maps; averaging it over a group gives the projector
    /// onto that subspace.
    pub fn substitution_operator(&self, a: &QMatrix, m: &QMatrix) -> QMatrix {
        let d = self.dim();
        let n = self.monomials.len();
        let mut op = QMatrix::zeros(d, d);
        for (t, mono) in self.monomials.iter().enumerate() {
            // Expand mono(A·x) once; it is shared across components.
            let mut base = Poly::zero(self.src_dim);
            base.add_term(mono.clone(), Rat::one());
            let composed = base.compose_linear(a);
            for i in 0..self.dst_dim {
                // Input basis vector: monomial `mono` in component `i`.
                // Output: component k picks up M[k][i] · composed.
                for k in 0..self.dst_dim {
                    let f = m.get(k, i);
                    if f.is_zero() {
                        continue;
                    }
                    for (out_mono, c) in composed.terms() {
                        let t_out = self
                            .monomials
                            .binary_search_by_key(&monomial_key(out_mono), monomial_key)
                            .expect("linear substitution preserves total degree");
                        let cur = op.get(k * n + t_out, i * n + t).clone();
                        op.set(k * n + t_out, i * n + t, cur + f * c);
                    }
                }
            }
        }
        op
    }
}

/// A flattened, exactly ordered coefficient vector of a [`PolyMap`].
///
/// The derived ordering (shape first, then the coefficients themselves) is
/// the tie-breaker used wherever a canonical representative of a set of
/// polynomial maps must be chosen.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoeffVector {
    src_dim: usize,
    dst_dim: usize,
    degree: u32,
    data: Vec<Rat>,
}

impl CoeffVector {
    /// Flatten `p` with degree bound `d`.
    pub fn from_polymap(p: &PolyMap, degree: u32) -> Result<Self> {
        let space = CoeffSpace::new(p.src_dim(), p.dst_dim(), degree);
        Ok(CoeffVector {
            src_dim: p.src_dim(),
            dst_dim: p.dst_dim(),
            degree,
            data: space.to_vector(p)?,
        })
    }

    /// Rebuild the polynomial map. The round trip through
    /// [`CoeffVector::from_polymap`] is lossless.
    pub fn to_polymap(&self) -> PolyMap {
        CoeffSpace::new(self.src_dim, self.dst_dim, self.degree)
            .from_vector(&self.data)
            .expect("a coefficient vector always matches its own space")
    }

    pub fn data(&self) -> &[Rat] {
        &self.data
    }
}

/// The subspace of coefficient vectors of `Θ`-equivariant polynomial maps of
/// degree at most `d`, computed by averaging the substitution operators over
/// the whole group (default coefficient-space cap).
pub fn equivariant_subspace(
    group: &FiniteMatrixGroup,
    theta: &GroupHom,
    target: &FiniteMatrixGroup,
    degree: u32,
) -> Result<Subspace> {
    equivariant_subspace_with_cap(group, theta, target, degree, DEFAULT_COEFF_CAP)
}

/// [`equivariant_subspace`] with an explicit coefficient-space cap.
///
/// The averaged operator is verified idempotent (`P·P = P`) exactly before
/// its column space is extracted.
pub fn equivariant_subspace_with_cap(
    group: &FiniteMatrixGroup,
    theta: &GroupHom,
    target: &FiniteMatrixGroup,
    degree: u32,
    cap: usize,
) -> Result<Subspace> {
    if theta.source_order() != group.order() || theta.target_order() != target.order() {
        return Err(Error::NotAHomomorphism);
    }
    let space = CoeffSpace::new(group.dim(), target.dim(), degree);
    if space.dim() > cap {
        return Err(Error::CoefficientCapExceeded { dim: space.dim(), cap });
    }
    let d = space.dim();
    let mut p = QMatrix::zeros(d, d);
    for g in 0..group.order() {
        let g_inv = group.element(group.inv_idx(g));
        let theta_g = target.element(theta.image_of(g));
        p = p.add(&space.substitution_operator(g_inv, theta_g));
    }
    let weight = Rat::one() / rat(group.order() as i64);
    p = p.scale(&weight);
    assert_eq!(p.mul(&p), p, "coefficient averaging must be idempotent");
    let cols = p.transpose();
    let rows = (0..cols.rows()).map(|i| cols.row(i)).collect();
    Subspace::from_spanning(d, rows)
}

/// The subspace of coefficient vectors satisfying the equivariance condition
/// `s(γ·x) = M(γ)·s(x)` for the listed elements only, computed as the exact
/// null space of the stacked constraints.
///
/// With all non-identity elements listed (for a matrix assignment coming
/// from a homomorphism) this agrees with [`equivariant_subspace`]; listing a
/// subset relaxes the condition accordingly.  An empty list yields the full
/// coefficient space.
pub fn constrained_subspace(
    group: &FiniteMatrixGroup,
    assignment: &[QMatrix],
    degree: u32,
    elements: &[usize],
    target_dim: usize,
    cap: usize,
) -> Result<Subspace> {
    let space = CoeffSpace::new(group.dim(), target_dim, degree);
    if space.dim() > cap {
        return Err(Error::CoefficientCapExceeded { dim: space.dim(), cap });
    }
    let d = space.dim();
    if elements.is_empty() {
        return Ok(Subspace::full(d));
    }
    let identity = QMatrix::identity(d);
    let mut stacked: Option<QMatrix> = None;
    for &g in elements {
        let g_inv = group.element(group.inv_idx(g));
        let op = space.substitution_operator(g_inv, &assignment[g]).sub(&identity);
        stacked = Some(match stacked {
            None => op,
            Some(s) => s.vstack(&op),
        });
    }
    Ok(crate::linalg::nullspace(&stacked.expect("at least one constraint")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{close_group, enumerate_homomorphisms};

    fn mat(dim: usize, entries: &[i64]) -> QMatrix {
        QMatrix::new(dim, dim, entries.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    fn sign_group() -> FiniteMatrixGroup {
        close_group(1, &[mat(1, &[-1])]).unwrap()
    }

    fn double_flips() -> FiniteMatrixGroup {
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        let k = mat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1]);
        close_group(3, &[j, k]).unwrap()
    }

    /// `y ↦ (y, 0, 0)` as a polynomial map.
    fn axis_lift() -> PolyMap {
        PolyMap::new(
            1,
            vec![Poly::variable(1, 0), Poly::zero(1), Poly::zero(1)],
        )
        .unwrap()
    }

    fn hom_sending_flip_to(group: &FiniteMatrixGroup, target: &FiniteMatrixGroup, image: &QMatrix) -> GroupHom {
        let img_idx = target.index_of(image).unwrap();
        GroupHom::from_generator_images(group, target, &[img_idx]).unwrap()
    }

    #[test]
    fn monomial_listing_is_graded() {
        let ms = monomials_up_to(2, 2);
        assert_eq!(
            ms,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0],
            ]
        );
        assert_eq!(monomials_up_to(1, 3).len(), 4);
        assert_eq!(monomials_up_to(3, 3).len(), 20);
    }

    #[test]
    fn arithmetic_keeps_canonical_form() {
        let x = Poly::variable(2, 0);
        let y = Poly::variable(2, 1);
        let p = x.add(&y).pow(2);
        // (x+y)² = x² + 2xy + y².
        assert_eq!(p.coeff(&vec![2, 0]), rat(1));
        assert_eq!(p.coeff(&vec![1, 1]), rat(2));
        assert_eq!(p.coeff(&vec![0, 2]), rat(1));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.evaluate(&[rat(1), rat(2)]), rat(9));
    }

    #[test]
    fn linear_conjugation_matches_hand_computation() {
        // j · lift(−y) = (y, 0, 0): conjugation returns the lift itself.
        let lift = axis_lift();
        let a = mat(1, &[-1]);
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        assert_eq!(conjugate_by_linear(&lift, &a, &j), lift);
        // Post-composing with the double flip about the middle axis negates
        // the first component.
        let jk = mat(3, &[1, 0, 0, 0, -1, 0, 0, 0, -1]);
        let moved = conjugate_by_linear(&lift, &a, &jk);
        assert_eq!(moved.evaluate(&[rat(2)]), vec![rat(-2), rat(0), rat(0)]);
    }

    #[test]
    fn equivariance_accepts_and_rejects_correctly() {
        let z2 = sign_group();
        let flips = double_flips();
        let lift = axis_lift();
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        let k = mat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1]);
        let jk = mat(3, &[1, 0, 0, 0, -1, 0, 0, 0, -1]);
        for good in [&j, &k] {
            let theta = hom_sending_flip_to(&z2, &flips, good);
            assert!(is_equivariant(&lift, &z2, &theta, &flips, EquivarianceCheck::Generators));
            assert!(is_equivariant(&lift, &z2, &theta, &flips, EquivarianceCheck::FullGroup));
        }
        for bad in [&jk, &QMatrix::identity(3)] {
            let theta = hom_sending_flip_to(&z2, &flips, bad);
            assert!(!is_equivariant(&lift, &z2, &theta, &flips, EquivarianceCheck::Generators));
            assert!(!is_equivariant(&lift, &z2, &theta, &flips, EquivarianceCheck::FullGroup));
        }
    }

    #[test]
    fn generator_and_full_modes_agree() {
        let z2 = sign_group();
        let flips = double_flips();
        let homs = enumerate_homomorphisms(&z2, &flips).unwrap();
        let space = CoeffSpace::new(1, 3, 3);
        for h in &homs {
            let w = equivariant_subspace(&z2, h, &flips, 3).unwrap();
            for v in w.basis() {
                let p = space.from_vector(v).unwrap();
                assert_eq!(
                    is_equivariant(&p, &z2, h, &flips, EquivarianceCheck::Generators),
                    is_equivariant(&p, &z2, h, &flips, EquivarianceCheck::FullGroup),
                );
            }
        }
    }

    #[test]
    fn equivariant_subspace_dimensions() {
        let z2 = sign_group();
        let flips = double_flips();
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        let k = mat(3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1]);
        // Odd/even/odd components of degree ≤ 3 in one variable: 2+2+2.
        let w_j = equivariant_subspace(&z2, &hom_sending_flip_to(&z2, &flips, &j), &flips, 3).unwrap();
        assert_eq!(w_j.dim(), 6);
        let w_k = equivariant_subspace(&z2, &hom_sending_flip_to(&z2, &flips, &k), &flips, 3).unwrap();
        assert_eq!(w_k.dim(), 6);
        // Their intersection pins components two and three to zero.
        assert_eq!(w_j.intersect(&w_k).dim(), 2);

        // A trivial group leaves the whole coefficient space: 2·6 = 12.
        let triv = FiniteMatrixGroup::trivial(2);
        let w_full = equivariant_subspace(&triv, &GroupHom::identity(&triv), &triv, 2).unwrap();
        assert_eq!(w_full.dim(), 12);
    }

    #[test]
    fn subspace_members_are_equivariant_and_outsiders_fail() {
        let z2 = sign_group();
        let flips = double_flips();
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        let theta = hom_sending_flip_to(&z2, &flips, &j);
        let w = equivariant_subspace(&z2, &theta, &flips, 3).unwrap();
        let space = CoeffSpace::new(1, 3, 3);
        for v in w.basis() {
            let p = space.from_vector(v).unwrap();
            assert!(is_equivariant(&p, &z2, &theta, &flips, EquivarianceCheck::FullGroup));
        }
        // Find a unit coefficient vector outside the subspace and spoil a member.
        let outside = (0..space.dim())
            .map(|i| {
                let mut v = vec![Rat::zero(); space.dim()];
                v[i] = Rat::one();
                v
            })
            .find(|v| !w.contains(v))
            .expect("a proper subspace misses some unit vector");
        let mut spoiled = w.basis()[0].clone();
        for (a, b) in spoiled.iter_mut().zip(&outside) {
            *a += b;
        }
        let p = space.from_vector(&spoiled).unwrap();
        assert!(!is_equivariant(&p, &z2, &theta, &flips, EquivarianceCheck::FullGroup));
    }

    #[test]
    fn constrained_subspace_interpolates() {
        let z2 = sign_group();
        let flips = double_flips();
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        let theta = hom_sending_flip_to(&z2, &flips, &j);
        let assignment = theta.image_matrices(&flips);
        // Constraining on every non-identity element reproduces the
        // averaged subspace; constraining on nothing gives everything.
        let non_identity: Vec<usize> =
            (0..z2.order()).filter(|&g| g != z2.identity_index()).collect();
        let w_all = constrained_subspace(&z2, &assignment, 3, &non_identity, 3, DEFAULT_COEFF_CAP).unwrap();
        let w_avg = equivariant_subspace(&z2, &theta, &flips, 3).unwrap();
        assert_eq!(w_all, w_avg);
        let w_none = constrained_subspace(&z2, &assignment, 3, &[], 3, DEFAULT_COEFF_CAP).unwrap();
        assert_eq!(w_none.dim(), 12);
    }

    #[test]
    fn coefficient_round_trip_is_lossless() {
        let mut p0 = Poly::zero(2);
        p0.add_term(vec![1, 2], rat(3) / rat(7));
        p0.add_term(vec![0, 0], rat(-2));
        let p = PolyMap::new(2, vec![p0, Poly::variable(2, 1)]).unwrap();
        let v = CoeffVector::from_polymap(&p, 3).unwrap();
        assert_eq!(v.to_polymap(), p);
        // Degree overflow is an error, not a truncation.
        assert!(CoeffVector::from_polymap(&p, 2).is_err());
    }

    #[test]
    fn coefficient_cap_is_enforced() {
        let z2 = sign_group();
        let flips = double_flips();
        let j = mat(3, &[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        let theta = hom_sending_flip_to(&z2, &flips, &j);
        assert_eq!(
            equivariant_subspace_with_cap(&z2, &theta, &flips, 3, 4),
            Err(Error::CoefficientCapExceeded { dim: 12, cap: 4 })
        );
    }
}
