//! Dense complex matrices and the decompositions every higher layer needs.
//!
//! Singular values come from a one-sided (Hestenes) Jacobi sweep and
//! Hermitian spectra from a cyclic two-sided Jacobi sweep. Both are
//! row-cyclic with a fixed pair order, so results are deterministic for a
//! given input. Jacobi keeps small singular values to high relative
//! accuracy, which matters because the reduced minimum modulus is the
//! smallest nonzero one.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Relative asymmetry accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Default relative rank threshold `1e-10 · max(rows, cols)`.
pub fn default_rank_tol(rows: usize, cols: usize) -> f64 {
    1e-10 * rows.max(cols).max(1) as f64
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        let m = CMatrix { rows, cols, data };
        if !m.is_finite() {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(m)
    }

    /// Real matrix from row-major entries.
    ///
    /// Panics if `values.len() != rows * cols`.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), rows * cols, "from_real: wrong number of entries");
        CMatrix { rows, cols, data: values.iter().map(|&v| C64::new(v, 0.0)).collect() }
    }

    pub fn from_diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "from_columns: ragged column");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[l * other.cols..(l + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Horizontal concatenation; all parts must have `rows` rows.
    pub fn hstack(rows: usize, parts: &[&CMatrix]) -> CMatrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack: row count mismatch");
            out.set_submatrix(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must have `cols` columns.
    pub fn vstack(cols: usize, parts: &[&CMatrix]) -> CMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack: column count mismatch");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        CMatrix { rows, cols, data }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_submatrix(&mut self, r0: usize, c0: usize, block: &CMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "set_submatrix out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    /// `(A + A^H) / 2`.
    pub fn hermitian_part(&self) -> CMatrix {
        assert_eq!(self.rows, self.cols);
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn zip_with(a: &CMatrix, b: &CMatrix, f: impl Fn(C64, C64) -> C64) -> CMatrix {
    assert_eq!(a.shape(), b.shape(), "elementwise op on mismatched shapes");
    CMatrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect() }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

// ── Singular value decomposition ───────────────────────────────────────

/// Thin SVD `A = U · diag(σ) · V^H` with `p = min(rows, cols)` columns in
/// `U` and `V`.
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub left_vectors: CMatrix,
    pub singular_values: Vec<f64>,
    pub right_vectors: CMatrix,
}

impl SvdResult {
    pub fn largest(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values strictly above `cutoff`.
    pub fn count_above(&self, cutoff: f64) -> usize {
        self.singular_values.iter().take_while(|&&s| s > cutoff).count()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let mut us = self.left_vectors.clone();
        for j in 0..us.cols() {
            for i in 0..us.rows() {
                us[(i, j)] *= self.singular_values[j];
            }
        }
        &us * &self.right_vectors.adjoint()
    }

    /// Leading `r` left singular vectors as columns.
    pub fn left_leading(&self, r: usize) -> CMatrix {
        self.left_vectors.submatrix(0, 0, self.left_vectors.rows(), r)
    }

    /// Leading `r` right singular vectors as columns.
    pub fn right_leading(&self, r: usize) -> CMatrix {
        self.right_vectors.submatrix(0, 0, self.right_vectors.rows(), r)
    }
}

/// Thin SVD by one-sided Jacobi.
pub fn svd(a: &CMatrix) -> Result<SvdResult> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("svd of a matrix with non-finite entries".into()));
    }
    Ok(svd_unchecked(a))
}

pub(crate) fn svd_unchecked(a: &CMatrix) -> SvdResult {
    if a.rows >= a.cols {
        let (u, s, v) = one_sided_jacobi(a);
        SvdResult { left_vectors: u, singular_values: s, right_vectors: v }
    } else {
        // A^H = W Σ Z^H  ⇒  A = Z Σ W^H.
        let (w, s, z) = one_sided_jacobi(&a.adjoint());
        SvdResult { left_vectors: z, singular_values: s, right_vectors: w }
    }
}

fn dot_conj(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// One-sided Jacobi on a tall matrix (`rows >= cols`).
fn one_sided_jacobi(a: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let m = a.rows;
    let n = a.cols;
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();
    let threshold = f64::EPSILON * (m.max(1) as f64);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot_conj(&w[p], &w[q]);
                let g = gamma.norm();
                if g <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate (w_p, e^{-iφ} w_q), which have the real inner product |γ|.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut w, p, q, c, s, phase);
                rotate_pair(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut missing = 0;
    for &j in &order {
        if norms[j] > f64::MIN_POSITIVE * 1e8 {
            let inv = 1.0 / norms[j];
            u_cols.push(w[j].iter().map(|z| z * inv).collect());
        } else {
            missing += 1;
        }
    }
    // Zero singular values carry no left vector; complete to an orthonormal set.
    if missing > 0 {
        let extra = complete_columns(m, &u_cols, missing);
        u_cols.extend(extra);
    }
    let v_cols: Vec<Vec<C64>> = order.iter().map(|&j| v[j].clone()).collect();
    (CMatrix::from_columns(m, &u_cols), sigma, CMatrix::from_columns(n, &v_cols))
}

fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let xq = *y * phase;
        *x = xp * c - xq * s;
        *y = xp * s + xq * c;
    }
}

/// Extends the orthonormal vectors `existing` (each of length `dim`) by
/// `count` further orthonormal vectors, drawn from the standard basis by
/// twice-iterated Gram-Schmidt with largest-residual pivoting.
fn complete_columns(dim: usize, existing: &[Vec<C64>], count: usize) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = existing.to_vec();
    let mut added = Vec::with_capacity(count);
    for _ in 0..count {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for e in 0..dim {
            let mut cand: Vec<C64> = (0..dim).map(|i| if i == e { ONE } else { ZERO }).collect();
            for _ in 0..2 {
                for b in &basis {
                    let proj = dot_conj(b, &cand);
                    for (c, bi) in cand.iter_mut().zip(b) {
                        *c -= proj * bi;
                    }
                }
            }
            let nrm = norm_sqr(&cand).sqrt();
            if best.as_ref().is_none_or(|(bn, _)| nrm > *bn) {
                best = Some((nrm, cand));
            }
        }
        let (nrm, mut cand) = best.expect("completion requested beyond the ambient dimension");
        assert!(nrm > 1e-8, "orthonormal completion degenerated");
        for c in cand.iter_mut() {
            *c /= nrm;
        }
        basis.push(cand.clone());
        added.push(cand);
    }
    added
}

/// Orthonormal basis (as columns) of the orthogonal complement of the span
/// of the orthonormal columns of `q`.
pub fn complement_columns(q: &CMatrix) -> CMatrix {
    let dim = q.rows();
    let existing: Vec<Vec<C64>> = (0..q.cols()).map(|j| q.column(j)).collect();
    let extra = complete_columns(dim, &existing, dim.saturating_sub(q.cols()));
    CMatrix::from_columns(dim, &extra)
}

// ── Hermitian eigendecomposition ───────────────────────────────────────

/// Eigenvalues (ascending) and unitary eigenvectors (columns) of a
/// Hermitian matrix, by cyclic Jacobi.
pub fn hermitian_eig(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if a.rows != a.cols {
        return Err(Error::InvalidInput(format!("hermitian_eig of a {}x{} matrix", a.rows, a.cols)));
    }
    if !a.is_finite() {
        return Err(Error::InvalidInput("hermitian_eig of a matrix with non-finite entries".into()));
    }
    let scale = a.fro_norm();
    let asym = (a - &a.adjoint()).fro_norm();
    if asym > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { residual: if scale > 0.0 { asym / scale } else { asym } });
    }
    Ok(hermitian_eig_unchecked(&a.hermitian_part()))
}

pub(crate) fn hermitian_eig_unchecked(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.rows;
    let mut h = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = h.fro_norm();
    let threshold = f64::EPSILON * scale / (n.max(1) as f64);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let hpq = h[(p, q)];
                let g = hpq.norm();
                if g <= threshold {
                    continue;
                }
                rotated = true;
                let app = h[(p, p)].re;
                let aqq = h[(q, q)].re;
                // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on coordinates (p, q).
                let phase = (hpq / g).conj();
                let zeta = (aqq - app) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let jpp = C64::new(c, 0.0);
                let jpq = C64::new(s, 0.0);
                let jqp = -phase * s;
                let jqq = phase * c;
                // H ← H J
                for k in 0..n {
                    let hp = h[(k, p)];
                    let hq = h[(k, q)];
                    h[(k, p)] = hp * jpp + hq * jqp;
                    h[(k, q)] = hp * jpq + hq * jqq;
                }
                // H ← J^H H
                for k in 0..n {
                    let hp = h[(p, k)];
                    let hq = h[(q, k)];
                    h[(p, k)] = jpp.conj() * hp + jqp.conj() * hq;
                    h[(q, k)] = jpq.conj() * hp + jqq.conj() * hq;
                }
                h[(p, q)] = ZERO;
                h[(q, p)] = ZERO;
                h[(p, p)] = C64::new(h[(p, p)].re, 0.0);
                h[(q, q)] = C64::new(h[(q, q)].re, 0.0);
                for k in 0..n {
                    let vp = v[(k, p)];
                    let vq = v[(k, q)];
                    v[(k, p)] = vp * jpp + vq * jqp;
                    v[(k, q)] = vp * jpq + vq * jqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (values, vectors)
}

// ── Derived quantities ────────────────────────────────────────────────

/// Moore-Penrose inverse; singular values at or below `tol · σ₁` are
/// treated as zero.
pub fn pinv(a: &CMatrix, tol: f64) -> CMatrix {
    let svd = svd_unchecked(a);
    pinv_from_svd(&svd, a.rows, a.cols, tol * svd.largest())
}

/// Moore-Penrose inverse with an absolute singular-value cutoff.
pub fn pinv_with_cutoff(a: &CMatrix, cutoff: f64) -> CMatrix {
    let svd = svd_unchecked(a);
    pinv_from_svd(&svd, a.rows, a.cols, cutoff)
}

fn pinv_from_svd(svd: &SvdResult, rows: usize, cols: usize, cutoff: f64) -> CMatrix {
    let r = svd.count_above(cutoff);
    if r == 0 {
        return CMatrix::zeros(cols, rows);
    }
    let mut vr = svd.right_leading(r);
    for j in 0..r {
        let inv = 1.0 / svd.singular_values[j];
        for i in 0..vr.rows() {
            vr[(i, j)] *= inv;
        }
    }
    &vr * &svd.left_leading(r).adjoint()
}

/// Number of singular values above `tol · σ₁` (zero for the zero matrix).
pub fn numerical_rank(a: &CMatrix, tol: f64) -> usize {
    let svd = svd_unchecked(a);
    svd.count_above(tol * svd.largest())
}

/// Largest singular value.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    svd_unchecked(a).largest()
}

/// Orthonormal rows spanning the row space of `a`, keeping singular values
/// above `cutoff`.
pub fn row_space(a: &CMatrix, cutoff: f64) -> CMatrix {
    let svd = svd_unchecked(a);
    let r = svd.count_above(cutoff);
    svd.right_leading(r).adjoint()
}

/// Orthonormal columns spanning the column space of `a`, keeping singular
/// values above `cutoff`.
pub fn column_space(a: &CMatrix, cutoff: f64) -> CMatrix {
    let svd = svd_unchecked(a);
    let r = svd.count_above(cutoff);
    svd.left_leading(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        a.shape() == b.shape() && (a - b).max_abs() <= tol
    }

    #[test]
    fn svd_identity() {
        let s = svd(&CMatrix::identity(2)).unwrap();
        assert_eq!(s.singular_values, vec![1.0, 1.0]);
    }

    #[test]
    fn svd_nilpotent() {
        // A A^H = diag(1, 0)
        let a = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let s = svd(&a).unwrap();
        assert!((s.singular_values[0] - 1.0).abs() < 1e-15);
        assert!(s.singular_values[1].abs() < 1e-15);
        assert!(close(&s.reconstruct(), &a, 1e-15));
        let u = &s.left_vectors;
        assert!(close(&(&u.adjoint() * u), &CMatrix::identity(2), 1e-15));
    }

    #[test]
    fn svd_signed_diagonal() {
        let a = CMatrix::from_diag(&[3.0, -2.0]);
        let s = svd(&a).unwrap();
        assert_eq!(s.singular_values, vec![3.0, 2.0]);
        assert!(close(&s.reconstruct(), &a, 1e-15));
    }

    #[test]
    fn svd_rejects_nan() {
        let mut a = CMatrix::identity(2);
        a[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(svd(&a), Err(Error::InvalidInput(_))));
        assert!(CMatrix::from_vec(1, 1, vec![c(f64::INFINITY, 0.0)]).is_err());
    }

    #[test]
    fn svd_wide_and_empty() {
        let a = CMatrix::from_fn(2, 5, |i, j| c((i + 2 * j) as f64, (i as f64) - (j as f64)));
        let s = svd(&a).unwrap();
        assert_eq!(s.left_vectors.shape(), (2, 2));
        assert_eq!(s.right_vectors.shape(), (5, 2));
        assert!(close(&s.reconstruct(), &a, 1e-13));

        let e = CMatrix::zeros(0, 3);
        let s = svd(&e).unwrap();
        assert!(s.singular_values.is_empty());
        assert_eq!(numerical_rank(&e, 1e-10), 0);
        assert_eq!(spectral_norm(&e), 0.0);
    }

    #[test]
    fn eig_swap_matrix() {
        let a = CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let (l, v) = hermitian_eig(&a).unwrap();
        assert!((l[0] + 1.0).abs() < 1e-15 && (l[1] - 1.0).abs() < 1e-15);
        let av = &a * &v;
        let vl = &v * &CMatrix::from_diag(&l);
        assert!(close(&av, &vl, 1e-14));
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let (l, _) = hermitian_eig(&CMatrix::identity(2)).unwrap();
        assert_eq!(l, vec![1.0, 1.0]);
        let (l, _) = hermitian_eig(&CMatrix::from_diag(&[5.0, -1.5])).unwrap();
        assert_eq!(l, vec![-1.5, 5.0]);
    }

    #[test]
    fn eig_complex_hermitian() {
        let a = CMatrix::from_vec(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let (l, v) = hermitian_eig(&a).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-14 && (l[1] - 3.0).abs() < 1e-14);
        assert!(close(&(&v.adjoint() * &v), &CMatrix::identity(2), 1e-14));
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn pinv_examples() {
        let p = pinv(&CMatrix::from_diag(&[2.0, 0.0]), 1e-10);
        assert!(close(&p, &CMatrix::from_diag(&[0.5, 0.0]), 1e-15));
        assert!(close(&pinv(&CMatrix::identity(3), 1e-10), &CMatrix::identity(3), 1e-15));
        let z = pinv(&CMatrix::zeros(2, 3), 1e-10);
        assert_eq!(z.shape(), (3, 2));
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&CMatrix::zeros(3, 3), 1e-10), 0);
        assert_eq!(numerical_rank(&CMatrix::identity(4), 1e-10), 4);
        let u = CMatrix::from_vec(3, 1, vec![c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.5)]).unwrap();
        let v = CMatrix::from_vec(2, 1, vec![c(0.5, 0.0), c(2.0, -1.0)]).unwrap();
        let outer = &u * &v.adjoint();
        assert_eq!(numerical_rank(&outer, 1e-10), 1);
        let s = svd(&outer).unwrap();
        assert!((s.singular_values[0] - u.fro_norm() * v.fro_norm()).abs() < 1e-14);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(spectral_norm(&CMatrix::identity(3)), 1.0);
        assert_eq!(spectral_norm(&CMatrix::from_diag(&[3.0, -2.0])), 3.0);
        assert_eq!(spectral_norm(&CMatrix::zeros(2, 2)), 0.0);
    }

    #[test]
    fn complement_of_line() {
        let q = CMatrix::from_vec(2, 1, vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let comp = complement_columns(&q);
        assert_eq!(comp.shape(), (2, 1));
        let ip = (&q.adjoint() * &comp)[(0, 0)];
        assert!(ip.norm() < 1e-15);
    }
}
