//! Finite-dimensional C*-algebras `A = M_{n_1}(C) ⊕ … ⊕ M_{n_B}(C)`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::matkit::{self, CMatrix};
use crate::{Error, Result};

/// Normality tolerance for [`AlgebraElement::spectrum`], relative to `‖a‖²`.
pub const NORMAL_TOL: f64 = 1e-10;

/// The block structure `(n_1, …, n_B)` of a direct sum of full matrix
/// algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockAlgebra {
    block_dims: Vec<usize>,
}

impl BlockAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::InvalidInput("a block algebra needs at least one block".into()));
        }
        if block_dims.contains(&0) {
            return Err(Error::InvalidInput(format!("block dimensions must be positive, got {block_dims:?}")));
        }
        Ok(BlockAlgebra { block_dims })
    }

    /// The field of complex numbers, `M_1(C)`.
    pub fn complex() -> Self {
        BlockAlgebra { block_dims: vec![1] }
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    pub fn block_dim(&self, i: usize) -> usize {
        self.block_dims[i]
    }

    /// Complex dimension `Σ n_i²`.
    pub fn dimension(&self) -> usize {
        self.block_dims.iter().map(|n| n * n).sum()
    }

    /// Hyphen-joined block dimensions, e.g. `1-2-3`.
    pub fn descriptor(&self) -> String {
        self.block_dims.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("-")
    }

    pub(crate) fn ensure_same(&self, other: &BlockAlgebra) -> Result<()> {
        if self != other {
            return Err(Error::AlgebraMismatch { left: self.block_dims.clone(), right: other.block_dims.clone() });
        }
        Ok(())
    }
}

/// An element of a [`BlockAlgebra`]: one `n_i × n_i` matrix per block.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    algebra: BlockAlgebra,
    blocks: Vec<CMatrix>,
}

impl AlgebraElement {
    pub fn new(algebra: BlockAlgebra, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != algebra.num_blocks() {
            return Err(Error::InvalidInput(format!(
                "expected {} blocks, got {}",
                algebra.num_blocks(),
                blocks.len()
            )));
        }
        for (i, (b, &n)) in blocks.iter().zip(algebra.block_dims()).enumerate() {
            if b.shape() != (n, n) {
                return Err(Error::InvalidInput(format!(
                    "block {i} has shape {:?}, expected ({n}, {n})",
                    b.shape()
                )));
            }
            if !b.is_finite() {
                return Err(Error::InvalidInput(format!("block {i} has non-finite entries")));
            }
        }
        Ok(AlgebraElement { algebra, blocks })
    }

    pub fn zero(algebra: &BlockAlgebra) -> Self {
        let blocks = algebra.block_dims().iter().map(|&n| CMatrix::zeros(n, n)).collect();
        AlgebraElement { algebra: algebra.clone(), blocks }
    }

    pub fn identity(algebra: &BlockAlgebra) -> Self {
        Self::scalar(algebra, C64::new(1.0, 0.0))
    }

    pub fn scalar(algebra: &BlockAlgebra, z: C64) -> Self {
        let blocks = algebra.block_dims().iter().map(|&n| CMatrix::identity(n).scale(z)).collect();
        AlgebraElement { algebra: algebra.clone(), blocks }
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    pub(crate) fn from_blocks_unchecked(algebra: BlockAlgebra, blocks: Vec<CMatrix>) -> Self {
        AlgebraElement { algebra, blocks }
    }

    fn zip_blocks(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.algebra.ensure_same(&other.algebra)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(AlgebraElement { algebra: self.algebra.clone(), blocks })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a - b)
    }

    pub fn scale(&self, z: C64) -> Self {
        AlgebraElement { algebra: self.algebra.clone(), blocks: self.blocks.iter().map(|b| b.scale(z)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        AlgebraElement { algebra: self.algebra.clone(), blocks: self.blocks.iter().map(CMatrix::adjoint).collect() }
    }

    /// C*-norm: the largest block spectral norm.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(matkit::spectral_norm).fold(0.0, f64::max)
    }

    /// Largest absolute entry difference, for approximate comparisons.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.algebra.ensure_same(&other.algebra)?;
        Ok(self.blocks.iter().zip(&other.blocks).map(|(a, b)| (a - b).max_abs()).fold(0.0, f64::max))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.norm().max(1.0);
        self.blocks.iter().all(|b| (b - &b.adjoint()).max_abs() <= tol * scale)
    }

    pub fn is_normal(&self, tol: f64) -> bool {
        let scale = self.norm().powi(2).max(f64::MIN_POSITIVE);
        self.blocks.iter().all(|b| {
            let bh = b.adjoint();
            matkit::spectral_norm(&(&(b * &bh) - &(&bh * b))) <= tol * scale
        })
    }

    /// Spectrum of a normal element as a multiset, sorted by real then
    /// imaginary part.
    ///
    /// Writes `a = h + i·k` with commuting Hermitian `h`, `k`, diagonalizes
    /// `h`, then `k` restricted to each eigenspace of `h`.
    pub fn spectrum(&self) -> Result<Vec<C64>> {
        if !self.is_normal(NORMAL_TOL) {
            return Err(Error::NotSupported("spectrum of a non-normal element".into()));
        }
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend(normal_block_spectrum(b));
        }
        out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        Ok(out)
    }

    /// Hermitian within `tol` and every eigenvalue `≥ −tol·‖a‖`.
    pub fn is_positive(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        let floor = -tol * self.norm();
        self.blocks.iter().all(|b| {
            let (vals, _) = matkit::hermitian_eig_unchecked(&b.hermitian_part());
            vals.iter().all(|&l| l >= floor)
        })
    }

    /// Smallest nonzero `|λ|` over the spectrum, or `None` if the spectrum is
    /// `{0}`. This is the finite-dimensional stand-in for "0 is not an
    /// accumulation point of the spectrum".
    pub fn spectral_gap_above_zero(&self, tol: f64) -> Result<Option<f64>> {
        let spec = self.spectrum()?;
        let cutoff = tol * self.norm();
        Ok(spec.iter().map(|z| z.norm()).filter(|&m| m > cutoff).min_by(f64::total_cmp))
    }
}

fn normal_block_spectrum(b: &CMatrix) -> Vec<C64> {
    let n = b.rows();
    let h = b.hermitian_part();
    let k = CMatrix::from_fn(n, n, |i, j| (b[(i, j)] - b[(j, i)].conj()) * C64::new(0.0, -0.5));
    let (hvals, hvecs) = matkit::hermitian_eig_unchecked(&h);
    let scale = matkit::spectral_norm(b).max(f64::MIN_POSITIVE);
    let cluster_tol = 1e-9 * scale;
    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && hvals[end] - hvals[end - 1] <= cluster_tol {
            end += 1;
        }
        let basis = hvecs.submatrix(0, start, n, end - start);
        let restricted = (&(&basis.adjoint() * &k) * &basis).hermitian_part();
        let (kvals, _) = matkit::hermitian_eig_unchecked(&restricted);
        let mean_h = hvals[start..end].iter().sum::<f64>() / (end - start) as f64;
        out.extend(kvals.into_iter().map(|im| C64::new(mean_h, im)));
        start = end;
    }
    out
}
