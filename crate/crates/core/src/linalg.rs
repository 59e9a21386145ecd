//! Dense exact linear algebra over ℚ(i): reduced row echelon form,
//! kernels, and subspace arithmetic (sum, intersection, annihilator
//! under a pairing).
//!
//! Subspaces are always stored with a reduced echelon basis, so two
//! subspaces are equal exactly when their stored bases are equal.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::GaussianRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid matrix text: {0}")]
    Parse(String),
}

/// A dense row-major matrix of Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m[(k, k)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianRational,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols)
                .map(|k| &self[(r, k)] * &rhs[(k, c)])
                .sum()
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot add {}x{} to {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + &rhs[(r, c)]
        }))
    }

    pub fn scale(&self, by: &GaussianRational) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] * by)
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| &self[(r, c)] * &v[c]).sum())
            .collect())
    }

    /// Reduced row echelon form together with the ascending pivot columns.
    ///
    /// Exact Gaussian elimination; pivoting picks the first nonzero entry,
    /// which is enough since exact arithmetic has no stability concerns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m[(pivot_row, col)].inv().expect("pivot is nonzero");
            for c in col..m.cols {
                m[(pivot_row, c)] = &m[(pivot_row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let sub = &factor * &m[(pivot_row, c)];
                        m[(r, c)] = m[(r, c)].clone() - sub;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact null space; `dim kernel + rank = cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[fc] = GaussianRational::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(prow, fc)].clone();
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Parses the matrix rendering produced by `Display`: one `[a, b, c]`
    /// row per line, scalars in the exact-arith grammar.
    pub fn parse(text: &str) -> Result<Self, LinalgError> {
        let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let inner = line
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| LinalgError::Parse(format!("expected `[...]`, found `{line}`")))?;
            let row = inner
                .split(',')
                .map(|t| t.trim().parse::<GaussianRational>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| LinalgError::Parse(e.to_string()))?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(LinalgError::Parse("ragged rows".into()));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(LinalgError::Parse("no rows".into()));
        }
        Ok(Self::from_rows(rows))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A linear subspace of a coordinate space, stored as the nonzero rows
/// of a reduced row echelon matrix. Canonical: equal subspaces have
/// equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<GaussianRational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut basis = Vec::with_capacity(ambient_dim);
        for k in 0..ambient_dim {
            let mut v = vec![GaussianRational::zero(); ambient_dim];
            v[k] = GaussianRational::one();
            basis.push(v);
        }
        Self { ambient_dim, basis }
    }

    /// Span of the given vectors, reduced to the canonical echelon basis.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<GaussianRational>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "vector length differs from ambient dimension"
        );
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (r, pivots) = ExactMatrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self { ambient_dim, basis }
    }

    /// The coordinate subspace spanned by the given unit vectors.
    pub fn coordinate(ambient_dim: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut sorted: Vec<usize> = coords.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let basis = sorted
            .into_iter()
            .map(|k| {
                assert!(k < ambient_dim);
                let mut v = vec![GaussianRational::zero(); ambient_dim];
                v[k] = GaussianRational::one();
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<GaussianRational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        // reduce v against the echelon basis
        let mut v = v.to_vec();
        for row in &self.basis {
            let pivot = row
                .iter()
                .position(|e| !e.is_zero())
                .expect("basis rows are nonzero");
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for (ve, re) in v.iter_mut().zip(row) {
                    let sub = &factor * re;
                    *ve = ve.clone() - sub;
                }
            }
        }
        v.iter().all(GaussianRational::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Subspace::from_vectors(self.ambient_dim, vectors))
    }

    /// Exact intersection via the kernel of the stacked coefficient system:
    /// a vector lies in both spans iff some combination of the two bases
    /// cancels.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // columns: coefficients on basis(a) then basis(b); rows: ambient coords
        let stacked = ExactMatrix::from_fn(self.ambient_dim, da + db, |r, c| {
            if c < da {
                self.basis[c][r].clone()
            } else {
                -other.basis[c - da][r].clone()
            }
        });
        let combos = stacked.kernel();
        let vectors = combos
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vec![GaussianRational::zero(); self.ambient_dim];
                for (i, row) in self.basis.iter().enumerate() {
                    for (ve, re) in v.iter_mut().zip(row) {
                        *ve = ve.clone() + &coeffs[i] * re;
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_vectors(self.ambient_dim, vectors))
    }

    /// The annihilator of this subspace under a bilinear pairing.
    ///
    /// `pairing` has one row per coordinate of this space's ambient and one
    /// column per coordinate of the target ambient; the result is
    /// `{w : (v · pairing) · w = 0 for every v in self}`.
    pub fn annihilator(&self, pairing: &ExactMatrix) -> Result<Subspace, LinalgError> {
        if pairing.rows() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "pairing has {} rows, ambient dimension is {}",
                pairing.rows(),
                self.ambient_dim
            )));
        }
        if self.is_zero() {
            return Ok(Subspace::full(pairing.cols()));
        }
        let constraints = ExactMatrix::from_rows(
            self.basis
                .iter()
                .map(|v| {
                    (0..pairing.cols())
                        .map(|c| (0..pairing.rows()).map(|r| &v[r] * &pairing[(r, c)]).sum())
                        .collect()
                })
                .collect(),
        );
        Ok(constraints.kernel())
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient dimensions {} and {} differ",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}
