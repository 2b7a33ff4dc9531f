//! Finite groups of exact orthogonal matrices.
//!
//! Chart groups are always given by rational orthogonal generators and closed
//! into an explicit element list with a full multiplication table.  Elements
//! are stored in a canonical order (sorted by their row-major entry tuples),
//! so element indices, homomorphism image tuples, and every report built from
//! them are deterministic across runs.
//!
//! Presentations whose generators are not exactly orthogonal are rejected
//! rather than repaired.  A finite matrix group can always be conjugated into
//! the orthogonal group by averaging the standard inner product over the
//! group, but that change of basis would silently alter the coordinates every
//! other module reports, so callers are expected to apply it themselves
//! before handing generators in.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rat, Subspace};
use num_traits::One;

/// Default cap on the number of elements produced by group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Default cap on the source order for homomorphism enumeration.
pub const DEFAULT_HOM_SOURCE_CAP: usize = 64;

/// A finite group of exact orthogonal matrices with a precomputed table.
///
/// `elements` is sorted by the canonical order on row-major entry tuples;
/// all other fields are index-based against that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<QMatrix>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity_index: usize,
    generator_indices: Vec<usize>,
}

impl FiniteMatrixGroup {
    /// The trivial group acting on `dim`-space.
    pub fn trivial(dim: usize) -> Self {
        close_group_with_cap(dim, &[], DEFAULT_CLOSURE_CAP)
            .expect("the empty generating set closes to the trivial group")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &QMatrix {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Indices of the (deduplicated, non-identity) generators used to build
    /// the group, in their canonical element order.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    /// Index of the product of elements `a·b`.
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Index of the inverse of element `a`.
    pub fn inv_idx(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Index of the conjugate `g·h·g⁻¹`.
    pub fn conj_idx(&self, g: usize, h: usize) -> usize {
        self.table[self.table[g][h]][self.inverse[g]]
    }

    /// Look up an element index by matrix, if present.
    pub fn index_of(&self, m: &QMatrix) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Close a set of orthogonal generators into a [`FiniteMatrixGroup`] using
/// the default element cap.
///
/// Duplicate generator matrices (and generators equal to the identity) are
/// accepted and dropped: they signal a redundant presentation, not an error.
pub fn close_group(dim: usize, generators: &[QMatrix]) -> Result<FiniteMatrixGroup> {
    close_group_with_cap(dim, generators, DEFAULT_CLOSURE_CAP)
}

/// [`close_group`] with an explicit cap on the number of elements.
pub fn close_group_with_cap(
    dim: usize,
    generators: &[QMatrix],
    cap: usize,
) -> Result<FiniteMatrixGroup> {
    for (index, g) in generators.iter().enumerate() {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: g.rows() });
        }
        if !g.is_orthogonal() {
            return Err(Error::NonOrthogonalGenerator { index });
        }
    }
    let identity = QMatrix::identity(dim);
    let mut gens: Vec<QMatrix> = Vec::new();
    for g in generators {
        if !g.is_identity() && !gens.contains(g) {
            gens.push(g.clone());
        }
    }

    // Breadth-first closure under right multiplication by generators.
    let mut seen: BTreeSet<QMatrix> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue: VecDeque<QMatrix> = VecDeque::new();
    queue.push_back(identity);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = m.mul(g);
            if seen.insert(p.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                queue.push_back(p);
            }
        }
    }

    let elements: Vec<QMatrix> = seen.into_iter().collect();
    let index: BTreeMap<&QMatrix, usize> =
        elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = elements.len();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = elements[a].mul(&elements[b]);
            table[a][b] = *index
                .get(&p)
                .expect("closure is closed under multiplication");
        }
    }
    let identity_index = elements
        .iter()
        .position(QMatrix::is_identity)
        .expect("closure contains the identity");
    let mut inverse = vec![0usize; n];
    for a in 0..n {
        inverse[a] = (0..n)
            .find(|&b| table[a][b] == identity_index)
            .expect("finite groups contain inverses");
    }
    let generator_indices = gens
        .iter()
        .map(|g| *index.get(g).expect("generators lie in their closure"))
        .collect();
    Ok(FiniteMatrixGroup { dim, elements, table, inverse, identity_index, generator_indices })
}

/// A subgroup given by sorted element indices into a parent group.
///
/// A `Subgroup` is only meaningful relative to the parent it was validated
/// against; operations taking one also take the parent and re-check bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validate that `members` (in any order, duplicates allowed) form a
    /// subgroup of `parent`.
    pub fn new(parent: &FiniteMatrixGroup, members: Vec<usize>) -> Result<Self> {
        let mut ms: Vec<usize> = members;
        ms.sort_unstable();
        ms.dedup();
        if ms.iter().any(|&i| i >= parent.order()) {
            return Err(Error::NotASubgroup);
        }
        let set: BTreeSet<usize> = ms.iter().copied().collect();
        if !set.contains(&parent.identity_index()) {
            return Err(Error::NotASubgroup);
        }
        for &a in &ms {
            if !set.contains(&parent.inv_idx(a)) {
                return Err(Error::NotASubgroup);
            }
            for &b in &ms {
                if !set.contains(&parent.mul_idx(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { members: ms })
    }

    /// The subgroup containing only the identity.
    pub fn trivial(parent: &FiniteMatrixGroup) -> Self {
        Subgroup { members: vec![parent.identity_index()] }
    }

    /// The whole parent group as a subgroup of itself.
    pub fn whole(parent: &FiniteMatrixGroup) -> Self {
        Subgroup { members: (0..parent.order()).collect() }
    }

    /// Close an arbitrary set of element indices into the subgroup it
    /// generates inside `parent`.
    pub fn generated_by(parent: &FiniteMatrixGroup, seed: &[usize]) -> Result<Self> {
        if seed.iter().any(|&i| i >= parent.order()) {
            return Err(Error::NotASubgroup);
        }
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(parent.identity_index());
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(parent.identity_index());
        for &s in seed {
            if set.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(a) = queue.pop_front() {
            for &s in seed {
                let p = parent.mul_idx(a, s);
                if set.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        Ok(Subgroup { members: set.into_iter().collect() })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Sorted element indices into the parent group.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    fn check_bounds(&self, parent: &FiniteMatrixGroup) -> Result<()> {
        if self.members.iter().any(|&i| i >= parent.order()) {
            return Err(Error::NotASubgroup);
        }
        Ok(())
    }
}

/// The center `{z : zg = gz for all g}` of a group.
pub fn center(group: &FiniteMatrixGroup) -> Subgroup {
    let n = group.order();
    let members = (0..n)
        .filter(|&z| (0..n).all(|g| group.mul_idx(z, g) == group.mul_idx(g, z)))
        .collect();
    Subgroup { members }
}

/// The centralizer of a subgroup: all elements commuting with every member.
pub fn centralizer(group: &FiniteMatrixGroup, sub: &Subgroup) -> Result<Subgroup> {
    sub.check_bounds(group)?;
    let n = group.order();
    let members = (0..n)
        .filter(|&c| {
            sub.members()
                .iter()
                .all(|&h| group.mul_idx(c, h) == group.mul_idx(h, c))
        })
        .collect();
    Ok(Subgroup { members })
}

/// Whether `sub` is normal in `group`.
pub fn is_normal(group: &FiniteMatrixGroup, sub: &Subgroup) -> Result<bool> {
    sub.check_bounds(group)?;
    Ok((0..group.order()).all(|g| {
        sub.members()
            .iter()
            .all(|&h| sub.contains(group.conj_idx(g, h)))
    }))
}

/// Order of the quotient `group / sub`; requires `sub` normal.
pub fn quotient_order(group: &FiniteMatrixGroup, sub: &Subgroup) -> Result<usize> {
    if !is_normal(group, sub)? {
        return Err(Error::NotNormal);
    }
    Ok(group.order() / sub.order())
}

/// Number of inner automorphisms, `|G| / |Z(G)|`.
pub fn inner_automorphism_count(group: &FiniteMatrixGroup) -> usize {
    group.order() / center(group).order()
}

/// A homomorphism between two finite matrix groups, stored as the full image
/// tuple: `images[i]` is the target index of source element `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupHom {
    source_order: usize,
    target_order: usize,
    images: Vec<usize>,
}

impl GroupHom {
    /// Validate a full image tuple as a homomorphism.
    pub fn new(
        source: &FiniteMatrixGroup,
        target: &FiniteMatrixGroup,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != source.order() || images.iter().any(|&i| i >= target.order()) {
            return Err(Error::NotAHomomorphism);
        }
        if images[source.identity_index()] != target.identity_index() {
            return Err(Error::NotAHomomorphism);
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if images[source.mul_idx(a, b)] != target.mul_idx(images[a], images[b]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        Ok(GroupHom {
            source_order: source.order(),
            target_order: target.order(),
            images,
        })
    }

    /// The identity homomorphism of a group.
    pub fn identity(group: &FiniteMatrixGroup) -> Self {
        GroupHom {
            source_order: group.order(),
            target_order: group.order(),
            images: (0..group.order()).collect(),
        }
    }

    /// The homomorphism sending everything to the target identity.
    pub fn trivial(source: &FiniteMatrixGroup, target: &FiniteMatrixGroup) -> Self {
        GroupHom {
            source_order: source.order(),
            target_order: target.order(),
            images: vec![target.identity_index(); source.order()],
        }
    }

    /// Build a homomorphism from images of the source's generators, extending
    /// over the whole group and validating the result.
    pub fn from_generator_images(
        source: &FiniteMatrixGroup,
        target: &FiniteMatrixGroup,
        generator_images: &[usize],
    ) -> Result<Self> {
        if generator_images.len() != source.generator_indices().len()
            || generator_images.iter().any(|&i| i >= target.order())
        {
            return Err(Error::NotAHomomorphism);
        }
        extend_generator_images(source, target, generator_images)
            .ok_or(Error::NotAHomomorphism)
            .and_then(|images| GroupHom::new(source, target, images))
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Full image tuple.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the source element with index `i`.
    pub fn image_of(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<usize> = self.images.iter().copied().collect();
        set.len() == self.images.len()
    }

    /// Source indices mapping to the target identity.
    pub fn kernel_indices(&self, target: &FiniteMatrixGroup) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(_, &im)| im == target.identity_index())
            .map(|(i, _)| i)
            .collect()
    }

    /// The image of the homomorphism as a subgroup of the target.
    pub fn image_subgroup(&self, target: &FiniteMatrixGroup) -> Subgroup {
        assert_eq!(self.target_order, target.order(), "image taken in the wrong target");
        let mut members: Vec<usize> = self.images.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    /// Composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target_order != self.source_order {
            return Err(Error::NotAHomomorphism);
        }
        Ok(GroupHom {
            source_order: inner.source_order,
            target_order: self.target_order,
            images: inner.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Conjugate by target element `g`: `γ ↦ g·self(γ)·g⁻¹`.
    pub fn conjugated_by(&self, target: &FiniteMatrixGroup, g: usize) -> GroupHom {
        GroupHom {
            source_order: self.source_order,
            target_order: self.target_order,
            images: self.images.iter().map(|&i| target.conj_idx(g, i)).collect(),
        }
    }

    /// The matrices assigned to each source element.
    pub fn image_matrices(&self, target: &FiniteMatrixGroup) -> Vec<QMatrix> {
        self.images
            .iter()
            .map(|&i| target.element(i).clone())
            .collect()
    }
}

/// Try to extend generator images to a full image tuple by walking words in
/// the generators; returns `None` when the assignment is inconsistent.
fn extend_generator_images(
    source: &FiniteMatrixGroup,
    target: &FiniteMatrixGroup,
    generator_images: &[usize],
) -> Option<Vec<usize>> {
    let n = source.order();
    let mut images = vec![usize::MAX; n];
    images[source.identity_index()] = target.identity_index();
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(source.identity_index());
    while let Some(a) = queue.pop_front() {
        for (g, &gi) in source.generator_indices().iter().zip(generator_images) {
            let b = source.mul_idx(a, *g);
            let im = target.mul_idx(images[a], gi);
            if images[b] == usize::MAX {
                images[b] = im;
                queue.push_back(b);
            } else if images[b] != im {
                return None;
            }
        }
    }
    if images.contains(&usize::MAX) {
        // Generators do not generate the group; cannot happen for groups
        // built by closure, but guard against hand-rolled values.
        return None;
    }
    Some(images)
}

/// Enumerate every homomorphism from `source` to `target`, sorted by image
/// tuple, using the default source-order cap.
pub fn enumerate_homomorphisms(
    source: &FiniteMatrixGroup,
    target: &FiniteMatrixGroup,
) -> Result<Vec<GroupHom>> {
    enumerate_homomorphisms_with_cap(source, target, DEFAULT_HOM_SOURCE_CAP)
}

/// [`enumerate_homomorphisms`] with an explicit cap on the source order.
///
/// The search assigns target images to the source generators and extends each
/// assignment over the whole group, discarding inconsistent ones; every
/// resulting tuple is re-validated against both multiplication tables.
pub fn enumerate_homomorphisms_with_cap(
    source: &FiniteMatrixGroup,
    target: &FiniteMatrixGroup,
    cap: usize,
) -> Result<Vec<GroupHom>> {
    if source.order() > cap {
        return Err(Error::EnumerationCapExceeded { order: source.order(), cap });
    }
    let k = source.generator_indices().len();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut assignment = vec![0usize; k];
    loop {
        if let Some(images) = extend_generator_images(source, target, &assignment) {
            if GroupHom::new(source, target, images.clone()).is_ok() {
                found.insert(images);
            }
        }
        // Odometer over target indices; finished when it wraps.
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < target.order() {
                break;
            }
            assignment[pos] = 0;
        }
        if assignment.iter().all(|&a| a == 0) {
            break;
        }
        if k == 0 {
            break;
        }
    }
    Ok(found
        .into_iter()
        .map(|images| GroupHom {
            source_order: source.order(),
            target_order: target.order(),
            images,
        })
        .collect())
}

/// The subspace of vectors fixed by every element of `sub`, computed by the
/// group-averaging projector `P = (1/|H|) Σ_h h`.
///
/// `P` is verified idempotent (`P·P = P`) exactly before its column space is
/// extracted; the result is the canonical basis of `{v : h·v = v for all h}`.
pub fn fixed_subspace(group: &FiniteMatrixGroup, sub: &Subgroup) -> Result<Subspace> {
    sub.check_bounds(group)?;
    let n = group.dim();
    let mut p = QMatrix::zeros(n, n);
    for &h in sub.members() {
        p = p.add(group.element(h));
    }
    let weight = Rat::one() / crate::linalg::rat(sub.order() as i64);
    p = p.scale(&weight);
    assert_eq!(p.mul(&p), p, "group averaging must be idempotent");
    let cols = p.transpose();
    let rows = (0..cols.rows()).map(|i| cols.row(i)).collect();
    Subspace::from_spanning(n, rows)
}

/// Fixed subspace of the image of a homomorphism inside its target group.
pub fn fixed_subspace_of_image(
    source_hom: &GroupHom,
    target: &FiniteMatrixGroup,
) -> Result<Subspace> {
    let image = source_hom.image_subgroup(target);
    fixed_subspace(target, &image)
}

/// Validate that a matrix assignment (one matrix per group element) is a
/// representation: all square of one size, multiplicative over the table,
/// identity to identity.
pub fn validate_representation(
    group: &FiniteMatrixGroup,
    rho: &[QMatrix],
) -> Result<usize> {
    if rho.len() != group.order() || rho.is_empty() {
        return Err(Error::NotARepresentation);
    }
    let d = rho[0].rows();
    if rho.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::NotARepresentation);
    }
    if !rho[group.identity_index()].is_identity() {
        return Err(Error::NotARepresentation);
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            if rho[a].mul(&rho[b]) != rho[group.mul_idx(a, b)] {
                return Err(Error::NotARepresentation);
            }
        }
    }
    Ok(d)
}

/// Whether two representations of the same group are equivalent, decided by
/// exact elementwise comparison of their characters (traces).
///
/// For finite groups in characteristic zero the character determines the
/// representation up to change of basis, so this is a complete test.
pub fn representations_equivalent(
    group: &FiniteMatrixGroup,
    rho1: &[QMatrix],
    rho2: &[QMatrix],
) -> Result<bool> {
    let d1 = validate_representation(group, rho1)?;
    let d2 = validate_representation(group, rho2)?;
    if d1 != d2 {
        return Ok(false);
    }
    Ok((0..group.order()).all(|i| rho1[i].trace() == rho2[i].trace()))
}
