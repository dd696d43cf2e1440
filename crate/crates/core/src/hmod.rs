//! The free Hilbert module `A^k`.
//!
//! A vector `x = (x_1, …, x_k)` is stored per block `i` as the flattening
//! `X_i = [x_1^{(i)} | … | x_k^{(i)}]` of shape `n_i × k·n_i`. Left
//! multiplication by `a ∈ A` acts as `X_i ↦ a_i X_i` and the inner product is
//! `⟨x, y⟩_i = X_i Y_i^H`.
//!
//! A closed submodule is, block by block, the set of flattenings whose rows
//! lie in a fixed complex subspace `V_i ⊆ C^{k·n_i}`: left multiplication by
//! all of `M_{n_i}(C)` mixes rows arbitrarily, so the `A`-span of a set of
//! generators is exactly the row space of their stacked flattenings. Every
//! set operation on submodules is therefore a subspace operation per block.

use num_complex::Complex64 as C64;

use crate::cstar::{AlgebraElement, BlockAlgebra};
use crate::matkit::{self, CMatrix};
use crate::modop::ModuleOperator;
use crate::{Error, Result};

/// Default tolerance for submodule equality by projection distance.
pub const SUBMODULE_EQ_TOL: f64 = 1e-8;

/// The free module `A^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleSpace {
    algebra: BlockAlgebra,
    rank: usize,
}

impl ModuleSpace {
    pub fn new(algebra: BlockAlgebra, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("module rank must be at least 1".into()));
        }
        Ok(ModuleSpace { algebra, rank })
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Width `k·n_i` of the block-`i` flattening.
    pub fn block_width(&self, i: usize) -> usize {
        self.rank * self.algebra.block_dim(i)
    }

    /// Total complex dimension `Σ k·n_i²`.
    pub fn complex_dimension(&self) -> usize {
        self.algebra.block_dims().iter().map(|n| self.rank * n * n).sum()
    }

    pub(crate) fn ensure_same(&self, other: &ModuleSpace, what: &str) -> Result<()> {
        if self != other {
            return Err(Error::SpaceMismatch(format!(
                "{what}: A^{} over {:?} vs A^{} over {:?}",
                self.rank,
                self.algebra.block_dims(),
                other.rank,
                other.algebra.block_dims()
            )));
        }
        Ok(())
    }
}

// ── Vectors ───────────────────────────────────────────────────────────

/// An element of `A^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector {
    space: ModuleSpace,
    blocks: Vec<CMatrix>,
}

impl ModuleVector {
    pub fn new(space: ModuleSpace, blocks: Vec<CMatrix>) -> Result<Self> {
        let alg = space.algebra();
        if blocks.len() != alg.num_blocks() {
            return Err(Error::InvalidInput(format!("expected {} blocks, got {}", alg.num_blocks(), blocks.len())));
        }
        for (i, b) in blocks.iter().enumerate() {
            let want = (alg.block_dim(i), space.block_width(i));
            if b.shape() != want {
                return Err(Error::InvalidInput(format!("block {i} has shape {:?}, expected {want:?}", b.shape())));
            }
            if !b.is_finite() {
                return Err(Error::InvalidInput(format!("block {i} has non-finite entries")));
            }
        }
        Ok(ModuleVector { space, blocks })
    }

    pub(crate) fn from_blocks_unchecked(space: ModuleSpace, blocks: Vec<CMatrix>) -> Self {
        ModuleVector { space, blocks }
    }

    pub fn zero(space: &ModuleSpace) -> Self {
        let blocks = (0..space.algebra().num_blocks())
            .map(|i| CMatrix::zeros(space.algebra().block_dim(i), space.block_width(i)))
            .collect();
        ModuleVector { space: space.clone(), blocks }
    }

    /// The standard generator `e_j` (identity in coordinate `j`, zero elsewhere).
    pub fn generator(space: &ModuleSpace, j: usize) -> Result<Self> {
        if j >= space.rank() {
            return Err(Error::InvalidInput(format!("generator index {j} out of range for rank {}", space.rank())));
        }
        let mut coords = vec![AlgebraElement::zero(space.algebra()); space.rank()];
        coords[j] = AlgebraElement::identity(space.algebra());
        Self::from_coordinates(space, &coords)
    }

    /// Builds `(a_1, …, a_k)`.
    pub fn from_coordinates(space: &ModuleSpace, coords: &[AlgebraElement]) -> Result<Self> {
        if coords.len() != space.rank() {
            return Err(Error::InvalidInput(format!("expected {} coordinates, got {}", space.rank(), coords.len())));
        }
        for a in coords {
            space.algebra().ensure_same(a.algebra())?;
        }
        let blocks = (0..space.algebra().num_blocks())
            .map(|i| {
                let n = space.algebra().block_dim(i);
                let parts: Vec<&CMatrix> = coords.iter().map(|a| a.block(i)).collect();
                CMatrix::hstack(n, &parts)
            })
            .collect();
        Ok(ModuleVector { space: space.clone(), blocks })
    }

    pub fn coordinate(&self, j: usize) -> AlgebraElement {
        let alg = self.space.algebra();
        let blocks = (0..alg.num_blocks())
            .map(|i| {
                let n = alg.block_dim(i);
                self.blocks[i].submatrix(0, j * n, n, n)
            })
            .collect();
        AlgebraElement::from_blocks_unchecked(alg.clone(), blocks)
    }

    pub fn space(&self) -> &ModuleSpace {
        &self.space
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    /// The left action `a · x`.
    pub fn left_mul(&self, a: &AlgebraElement) -> Result<Self> {
        self.space.algebra().ensure_same(a.algebra())?;
        let blocks = self.blocks.iter().zip(a.blocks()).map(|(x, ai)| ai * x).collect();
        Ok(ModuleVector { space: self.space.clone(), blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space, "vector addition")?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
        Ok(ModuleVector { space: self.space.clone(), blocks })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space, "vector subtraction")?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a - b).collect();
        Ok(ModuleVector { space: self.space.clone(), blocks })
    }

    pub fn scale(&self, z: C64) -> Self {
        ModuleVector { space: self.space.clone(), blocks: self.blocks.iter().map(|b| b.scale(z)).collect() }
    }

    /// `‖x‖ = ‖⟨x,x⟩‖^{1/2} = max_i σ₁(X_i)`.
    pub fn norm(&self) -> f64 {
        vector_norm(self)
    }
}

/// The `A`-valued inner product, block by block `X_i Y_i^H`.
pub fn inner_product(x: &ModuleVector, y: &ModuleVector) -> Result<AlgebraElement> {
    x.space.ensure_same(&y.space, "inner product")?;
    let blocks = x.blocks.iter().zip(&y.blocks).map(|(a, b)| a * &b.adjoint()).collect();
    Ok(AlgebraElement::from_blocks_unchecked(x.space.algebra().clone(), blocks))
}

pub fn vector_norm(x: &ModuleVector) -> f64 {
    x.blocks.iter().map(matkit::spectral_norm).fold(0.0, f64::max)
}

// ── Submodules ────────────────────────────────────────────────────────

/// A closed submodule of `A^k`, stored per block as an orthonormal row basis
/// of `V_i ⊆ C^{k·n_i}` (possibly with zero rows).
#[derive(Clone, Debug)]
pub struct Submodule {
    space: ModuleSpace,
    bases: Vec<CMatrix>,
}

pub(crate) fn resolve_tol(tol: Option<f64>, shapes: impl IntoIterator<Item = (usize, usize)>) -> f64 {
    tol.unwrap_or_else(|| {
        shapes.into_iter().map(|(r, c)| matkit::default_rank_tol(r, c)).fold(matkit::default_rank_tol(1, 1), f64::max)
    })
}

impl Submodule {
    pub fn zero(space: &ModuleSpace) -> Self {
        let bases = (0..space.algebra().num_blocks()).map(|i| CMatrix::zeros(0, space.block_width(i))).collect();
        Submodule { space: space.clone(), bases }
    }

    pub fn full(space: &ModuleSpace) -> Self {
        let bases = (0..space.algebra().num_blocks()).map(|i| CMatrix::identity(space.block_width(i))).collect();
        Submodule { space: space.clone(), bases }
    }

    /// Builds a submodule from per-block spanning rows (not necessarily
    /// orthonormal or independent).
    pub fn from_block_rows(space: &ModuleSpace, rows: &[CMatrix], tol: Option<f64>) -> Result<Self> {
        if rows.len() != space.algebra().num_blocks() {
            return Err(Error::InvalidInput(format!(
                "expected {} blocks, got {}",
                space.algebra().num_blocks(),
                rows.len()
            )));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.cols() != space.block_width(i) {
                return Err(Error::InvalidInput(format!(
                    "block {i} rows have width {}, expected {}",
                    r.cols(),
                    space.block_width(i)
                )));
            }
            if !r.is_finite() {
                return Err(Error::InvalidInput(format!("block {i} has non-finite entries")));
            }
        }
        Ok(Self::row_spaces(space, rows, tol))
    }

    pub(crate) fn from_orthonormal_rows(space: &ModuleSpace, bases: Vec<CMatrix>) -> Self {
        Submodule { space: space.clone(), bases }
    }

    fn row_spaces(space: &ModuleSpace, rows: &[CMatrix], tol: Option<f64>) -> Self {
        let tol = resolve_tol(tol, rows.iter().map(CMatrix::shape));
        let svds: Vec<_> = rows.iter().map(matkit::svd_unchecked).collect();
        let scale = svds.iter().map(|s| s.largest()).fold(0.0, f64::max);
        // Spanning rows that are all within `tol` of zero span nothing.
        let cutoff = if scale <= tol { f64::INFINITY } else { tol * scale };
        let bases = svds
            .iter()
            .zip(rows)
            .map(|(s, r)| {
                let k = s.count_above(cutoff);
                if k == 0 {
                    CMatrix::zeros(0, r.cols())
                } else {
                    s.right_leading(k).adjoint()
                }
            })
            .collect();
        Submodule { space: space.clone(), bases }
    }

    /// The closed `A`-span of `generators`: per block, the complex row space
    /// of all generator flattenings.
    pub fn span(space: &ModuleSpace, generators: &[ModuleVector], tol: Option<f64>) -> Result<Self> {
        for g in generators {
            space.ensure_same(g.space(), "span")?;
        }
        if generators.is_empty() {
            return Ok(Self::zero(space));
        }
        let rows: Vec<CMatrix> = (0..space.algebra().num_blocks())
            .map(|i| {
                let parts: Vec<&CMatrix> = generators.iter().map(|g| g.block(i)).collect();
                CMatrix::vstack(space.block_width(i), &parts)
            })
            .collect();
        Ok(Self::row_spaces(space, &rows, tol))
    }

    pub fn space(&self) -> &ModuleSpace {
        &self.space
    }

    /// Orthonormal row basis of `V_i`.
    pub fn basis(&self, i: usize) -> &CMatrix {
        &self.bases[i]
    }

    /// `dim V_i` per block.
    pub fn block_dims(&self) -> Vec<usize> {
        self.bases.iter().map(CMatrix::rows).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bases.iter().all(|b| b.rows() == 0)
    }

    /// Hermitian idempotent `B^H B` onto `V_i`, acting on row vectors from
    /// the right.
    pub fn projection_matrix(&self, i: usize) -> CMatrix {
        let b = &self.bases[i];
        if b.rows() == 0 {
            return CMatrix::zeros(b.cols(), b.cols());
        }
        (&b.adjoint() * b).hermitian_part()
    }

    /// The orthogonal projection `P_M` as an operator on `A^k`.
    pub fn projection_onto(&self) -> ModuleOperator {
        let blocks = (0..self.bases.len()).map(|i| self.projection_matrix(i)).collect();
        ModuleOperator::from_blocks_unchecked(self.space.clone(), self.space.clone(), blocks)
    }

    /// `M^⊥`, by orthonormal completion of each block basis.
    pub fn complement(&self) -> Self {
        let bases = self.bases.iter().map(|b| matkit::complement_columns(&b.adjoint()).adjoint()).collect();
        Submodule { space: self.space.clone(), bases }
    }

    /// `M + N`, per block the span of both bases.
    pub fn sum(&self, other: &Self, tol: Option<f64>) -> Result<Self> {
        self.space.ensure_same(&other.space, "submodule sum")?;
        let rows: Vec<CMatrix> = self
            .bases
            .iter()
            .zip(&other.bases)
            .map(|(a, b)| CMatrix::vstack(a.cols(), &[a, b]))
            .collect();
        Ok(Self::row_spaces(&self.space, &rows, tol))
    }

    /// `M ∩ N`, computed as `(M^⊥ + N^⊥)^⊥`.
    pub fn intersect(&self, other: &Self, tol: Option<f64>) -> Result<Self> {
        Ok(self.complement().sum(&other.complement(), tol)?.complement())
    }

    /// `‖P_M − P_N‖`, the submodule distance used for equality tests.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.space.ensure_same(&other.space, "submodule distance")?;
        Ok((0..self.bases.len())
            .map(|i| matkit::spectral_norm(&(&self.projection_matrix(i) - &other.projection_matrix(i))))
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.distance(other)? <= tol)
    }

    /// `x ∈ M` iff every row of each `X_i` lies in `V_i` within `tol`
    /// (relative to `max(1, ‖X_i‖_F)`).
    pub fn contains(&self, x: &ModuleVector, tol: f64) -> Result<bool> {
        self.space.ensure_same(x.space(), "membership")?;
        Ok(x.blocks().iter().enumerate().all(|(i, xb)| {
            let resid = xb - &(xb * &self.projection_matrix(i));
            resid.fro_norm() <= tol * xb.fro_norm().max(1.0)
        }))
    }

    /// `M ⊆ N` within `tol`.
    pub fn is_subset_of(&self, other: &Self, tol: f64) -> Result<bool> {
        self.space.ensure_same(&other.space, "inclusion")?;
        Ok(self.bases.iter().enumerate().all(|(i, b)| {
            let resid = b - &(b * &other.projection_matrix(i));
            resid.max_abs() <= tol
        }))
    }

    /// Whether `A^k = M ⊕ M^⊥`: the block dimensions add up and the two
    /// projections sum to the identity within `tol`. In this finite setting
    /// the answer is always yes; the check is still carried out so theorem
    /// statements are evaluated rather than assumed.
    pub fn is_orthogonal_summand(&self, tol: f64) -> bool {
        let comp = self.complement();
        (0..self.bases.len()).all(|i| {
            let d = self.space.block_width(i);
            if self.bases[i].rows() + comp.bases[i].rows() != d {
                return false;
            }
            let total = &self.projection_matrix(i) + &comp.projection_matrix(i);
            (&total - &CMatrix::identity(d)).max_abs() <= tol
        })
    }
}

// ── Direct sums ───────────────────────────────────────────────────────

/// `E ⊕ F` for free modules over the same algebra, with its canonical
/// embeddings and coordinate projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    left: ModuleSpace,
    right: ModuleSpace,
    total: ModuleSpace,
}

impl DirectSum {
    pub fn new(left: &ModuleSpace, right: &ModuleSpace) -> Result<Self> {
        left.algebra().ensure_same(right.algebra())?;
        let total = ModuleSpace::new(left.algebra().clone(), left.rank() + right.rank())?;
        Ok(DirectSum { left: left.clone(), right: right.clone(), total })
    }

    pub fn space(&self) -> &ModuleSpace {
        &self.total
    }

    pub fn left(&self) -> &ModuleSpace {
        &self.left
    }

    pub fn right(&self) -> &ModuleSpace {
        &self.right
    }

    /// `(x, y) ∈ E ⊕ F`.
    pub fn pair(&self, x: &ModuleVector, y: &ModuleVector) -> Result<ModuleVector> {
        self.left.ensure_same(x.space(), "direct sum, left component")?;
        self.right.ensure_same(y.space(), "direct sum, right component")?;
        let blocks = x
            .blocks()
            .iter()
            .zip(y.blocks())
            .map(|(a, b)| CMatrix::hstack(a.rows(), &[a, b]))
            .collect();
        Ok(ModuleVector::from_blocks_unchecked(self.total.clone(), blocks))
    }

    pub fn embed_left_vector(&self, x: &ModuleVector) -> Result<ModuleVector> {
        self.pair(x, &ModuleVector::zero(&self.right))
    }

    fn selector(&self, offset_rank: usize, part: &ModuleSpace, embed: bool) -> ModuleOperator {
        let alg = self.total.algebra();
        let blocks = (0..alg.num_blocks())
            .map(|i| {
                let n = alg.block_dim(i);
                let mut m = CMatrix::zeros(part.block_width(i), self.total.block_width(i));
                m.set_submatrix(0, offset_rank * n, &CMatrix::identity(part.block_width(i)));
                if embed {
                    m
                } else {
                    m.adjoint()
                }
            })
            .collect();
        if embed {
            ModuleOperator::from_blocks_unchecked(part.clone(), self.total.clone(), blocks)
        } else {
            ModuleOperator::from_blocks_unchecked(self.total.clone(), part.clone(), blocks)
        }
    }

    /// `x ↦ (x, 0)`.
    pub fn embed_left(&self) -> ModuleOperator {
        self.selector(0, &self.left, true)
    }

    /// `y ↦ (0, y)`.
    pub fn embed_right(&self) -> ModuleOperator {
        self.selector(self.left.rank(), &self.right, true)
    }

    /// `(x, y) ↦ x`.
    pub fn project_left(&self) -> ModuleOperator {
        self.selector(0, &self.left, false)
    }

    /// `(x, y) ↦ y`.
    pub fn project_right(&self) -> ModuleOperator {
        self.selector(self.left.rank(), &self.right, false)
    }

    /// `L ⊕ {0}` for a submodule `L ⊆ E`.
    pub fn embed_left_submodule(&self, l: &Submodule) -> Result<Submodule> {
        self.left.ensure_same(l.space(), "embedding a submodule")?;
        let rows: Vec<CMatrix> = (0..self.total.algebra().num_blocks())
            .map(|i| {
                let b = l.basis(i);
                let mut m = CMatrix::zeros(b.rows(), self.total.block_width(i));
                m.set_submatrix(0, 0, b);
                m
            })
            .collect();
        Submodule::from_block_rows(&self.total, &rows, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(dims: Vec<usize>, k: usize) -> ModuleSpace {
        ModuleSpace::new(BlockAlgebra::new(dims).unwrap(), k).unwrap()
    }

    fn line(s: &ModuleSpace, v: &[f64]) -> Submodule {
        let x = ModuleVector::new(s.clone(), vec![CMatrix::from_real(1, v.len(), v)]).unwrap();
        Submodule::span(s, &[x], None).unwrap()
    }

    #[test]
    fn generators_are_orthonormal() {
        let s = space(vec![1, 2], 2);
        let e1 = ModuleVector::generator(&s, 0).unwrap();
        let e2 = ModuleVector::generator(&s, 1).unwrap();
        assert_eq!(inner_product(&e1, &e2).unwrap().norm(), 0.0);
        let g = inner_product(&e1, &e1).unwrap();
        assert_eq!(g, AlgebraElement::identity(s.algebra()));
        assert_eq!(vector_norm(&e1), 1.0);
        assert_eq!(vector_norm(&ModuleVector::zero(&s)), 0.0);
    }

    #[test]
    fn single_coordinate_inner_product() {
        let s = space(vec![2], 2);
        let alg = s.algebra().clone();
        let a = AlgebraElement::new(alg.clone(), vec![CMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, -1.0])]).unwrap();
        let b = AlgebraElement::new(alg.clone(), vec![CMatrix::from_real(2, 2, &[0.0, 1.0, 3.0, 1.0])]).unwrap();
        let z = AlgebraElement::zero(&alg);
        let x = ModuleVector::from_coordinates(&s, &[a.clone(), z.clone()]).unwrap();
        let y = ModuleVector::from_coordinates(&s, &[b.clone(), z]).unwrap();
        let ip = inner_product(&x, &y).unwrap();
        assert_eq!(ip, a.multiply(&b.adjoint()).unwrap());
        assert!((vector_norm(&x) - a.norm()).abs() < 1e-14);
    }

    #[test]
    fn span_examples() {
        let s = space(vec![1, 2], 2);
        let e1 = ModuleVector::generator(&s, 0).unwrap();
        let e2 = ModuleVector::generator(&s, 1).unwrap();
        let m1 = Submodule::span(&s, &[e1.clone()], None).unwrap();
        assert_eq!(m1.block_dims(), vec![1, 2]);
        let all = Submodule::span(&s, &[e1, e2], None).unwrap();
        assert!(all.approx_eq(&Submodule::full(&s), 1e-12).unwrap());
        assert!(Submodule::span(&s, &[], None).unwrap().is_zero());

        let c2 = space(vec![1], 2);
        let diag = line(&c2, &[1.0, 1.0]);
        assert_eq!(diag.block_dims(), vec![1]);
        let p = diag.projection_matrix(0);
        assert!((&p - &CMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5])).max_abs() < 1e-15);
    }

    #[test]
    fn set_operations() {
        let c2 = space(vec![1], 2);
        let full = Submodule::full(&c2);
        assert!(full.complement().is_zero());
        let x = line(&c2, &[1.0, 0.0]);
        let y = line(&c2, &[0.0, 1.0]);
        assert!(x.sum(&y, None).unwrap().approx_eq(&full, 1e-12).unwrap());
        let d = line(&c2, &[1.0, 1.0]);
        assert!(x.intersect(&d, None).unwrap().is_zero());
        assert!(d.intersect(&d, None).unwrap().approx_eq(&d, 1e-12).unwrap());
    }

    #[test]
    fn summands() {
        let s = space(vec![1, 2], 2);
        let e1 = ModuleVector::generator(&s, 0).unwrap();
        assert!(Submodule::span(&s, &[e1], None).unwrap().is_orthogonal_summand(1e-10));
        assert!(Submodule::zero(&s).is_orthogonal_summand(1e-10));
        assert!(Submodule::full(&s).is_orthogonal_summand(1e-10));
    }

    #[test]
    fn projections_onto_extremes() {
        let s = space(vec![2], 2);
        let full = Submodule::full(&s).projection_onto();
        assert_eq!(full, ModuleOperator::identity(&s));
        let zero = Submodule::zero(&s).projection_onto();
        assert_eq!(zero.operator_norm(), 0.0);
    }

    #[test]
    fn direct_sum_of_rank_one() {
        let a1 = space(vec![1, 2], 1);
        let ds = DirectSum::new(&a1, &a1).unwrap();
        assert_eq!(ds.space(), &space(vec![1, 2], 2));
        let e = ModuleVector::generator(&a1, 0).unwrap();
        let emb = ds.embed_left_vector(&e).unwrap();
        assert_eq!(emb, ModuleVector::generator(ds.space(), 0).unwrap());
        let via_op = ds.embed_left().apply(&e).unwrap();
        assert_eq!(via_op, emb);
        assert_eq!(ds.project_left().apply(&emb).unwrap(), e);
        assert_eq!(ds.project_right().apply(&emb).unwrap(), ModuleVector::zero(&a1));
    }

    #[test]
    fn mismatched_spaces() {
        let a = space(vec![1], 2);
        let b = space(vec![1], 3);
        let x = ModuleVector::zero(&a);
        let y = ModuleVector::zero(&b);
        assert!(matches!(inner_product(&x, &y), Err(Error::SpaceMismatch(_))));
        assert!(Submodule::zero(&a).sum(&Submodule::zero(&b), None).is_err());
        let c = space(vec![2], 1);
        assert!(matches!(DirectSum::new(&a, &c), Err(Error::AlgebraMismatch { .. })));
    }
}
