//! Exact linear algebra over the rationals.
//!
//! Everything downstream — group closure, Reynolds projectors, coefficient
//! spaces, stratification — reduces to row operations on matrices with
//! [`BigRational`] entries, so this module keeps the toolkit deliberately
//! small: a dense matrix type, reduced row echelon form, null spaces, and a
//! canonical [`Subspace`] representation with exact membership and
//! intersection tests.  No floating point is used anywhere.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Parse a rational from a `p/q` or plain-integer literal.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::Invalid(format!("bad rational `{s}`: {e}")))
}

/// Render a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rat(x: &Rat) -> String {
    x.to_string()
}

/// A dense matrix with exact rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    /// Build a matrix from row-major data.  Fails if the data is ragged.
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    /// Build a matrix from a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The `n`-by-`n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rat::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rat::one();
        }
        QMatrix { rows: n, cols: n, data }
    }

    /// The all-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major view of the entries.
    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    /// The `i`-th row as a fresh vector.
    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact matrix product.  Panics on shape mismatch: shapes are an
    /// internal invariant, not user input, by the time products happen.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    /// Exact orthogonality test `AᵀA = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.rows == self.cols && self.transpose().mul(self) == QMatrix::identity(self.rows)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == QMatrix::identity(self.rows)
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(Rat::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        QMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Entries rendered as `p/q` strings, row-major per row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rat(self.get(i, j))).collect())
            .collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduce `rows` in place to reduced row echelon form.
///
/// Returns the pivot column of each nonzero row, in order.  Zero rows are
/// dropped, pivots are normalized to one, and entries above and below each
/// pivot are eliminated, so the output is the canonical basis of the row
/// space: two spanning sets describe the same space exactly when their
/// reduced forms are equal.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        // Find a row at or below `r` with a nonzero entry in column `c`.
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A linear subspace of rational `n`-space in canonical form.
///
/// The basis rows are kept in reduced row echelon form, which makes equality
/// of subspaces literal equality of the struct and keeps every downstream
/// report byte-deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalize a spanning set into a subspace.
    pub fn from_spanning(ambient: usize, spanning: Vec<Vec<Rat>>) -> Result<Self> {
        if spanning.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: spanning.iter().map(Vec::len).find(|&l| l != ambient).unwrap_or(0),
            });
        }
        let mut rows = spanning;
        let pivots = rref(&mut rows);
        Ok(Subspace { ambient, basis: rows, pivots })
    }

    /// The zero subspace of `n`-space.
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    /// All of `n`-space.
    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            })
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis rows (reduced row echelon form).
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // Reduce v against the echelon basis and check that nothing is left.
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for j in 0..self.ambient {
                    let t = &w[j] - &f * &row[j];
                    w[j] = t;
                }
            }
        }
        w.iter().all(Rat::is_zero)
    }

    /// Exact inclusion test `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    /// Exact intersection, computed by solving `aᵀU = bᵀV` for coefficient
    /// pairs and re-canonicalizing the resulting points.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "intersection in different ambient spaces");
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let a = self.dim();
        let b = other.dim();
        // Columns: a coefficients for self, then b coefficients for other.
        // Rows: one per ambient coordinate, expressing Uᵀα − Vᵀβ = 0.
        let mut m = QMatrix::zeros(self.ambient, a + b);
        for (k, row) in self.basis.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                m.set(i, k, x.clone());
            }
        }
        for (k, row) in other.basis.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                m.set(i, a + k, -x.clone());
            }
        }
        let null = nullspace(&m);
        let points = null
            .basis()
            .iter()
            .map(|coeffs| {
                let mut x = vec![Rat::zero(); self.ambient];
                for (k, row) in self.basis.iter().enumerate() {
                    if coeffs[k].is_zero() {
                        continue;
                    }
                    for i in 0..self.ambient {
                        let t = &x[i] + &coeffs[k] * &row[i];
                        x[i] = t;
                    }
                }
                x
            })
            .collect();
        Subspace::from_spanning(self.ambient, points).expect("intersection vectors have ambient length")
    }

    /// Basis rendered as `p/q` strings for reports.
    pub fn basis_strings(&self) -> Vec<Vec<String>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(format_rat).collect())
            .collect()
    }
}

/// Canonical basis of `{x : Mx = 0}`.
pub fn nullspace(m: &QMatrix) -> Subspace {
    let n = m.cols();
    let mut rows: Vec<Vec<Rat>> = (0..m.rows()).map(|i| m.row(i)).collect();
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    Subspace::from_spanning(n, basis).expect("null vectors have ambient length")
}

/// Solve `T·A = B·T` for `T` given two matrix lists of equal length, i.e.
/// find the space of intertwiners between two matrix assignments.  Returns a
/// basis of solutions as matrices.
pub fn intertwiner_space(lhs: &[QMatrix], rhs: &[QMatrix], n: usize) -> Vec<QMatrix> {
    assert_eq!(lhs.len(), rhs.len());
    // Unknown T is n×n, flattened row-major into n² columns.
    let mut rows = Vec::new();
    for (a, b) in lhs.iter().zip(rhs) {
        // Constraint: T·a − b·T = 0, entry (i, j):
        //   Σ_k T[i,k]·a[k,j] − Σ_k b[i,k]·T[k,j] = 0.
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + a.get(k, j);
                    row[k * n + j] = &row[k * n + j] - b.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let m = QMatrix::from_rows(rows).expect("constraint rows are rectangular");
    nullspace(&m)
        .basis()
        .iter()
        .map(|flat| QMatrix::new(n, n, flat.clone()).expect("flat intertwiner has n² entries"))
        .collect()
}

/// Exact determinant by fraction-free elimination on a copy.
pub fn determinant(m: &QMatrix) -> Rat {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| m.row(i)).collect();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].clone();
        for x in a[c][c..].iter_mut() {
            *x = &*x / &inv;
        }
        let pivot_row = a[c].clone();
        for row in a[(c + 1)..].iter_mut() {
            if !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    det
}
