//! Adjointable operators between free modules.
//!
//! An `A`-linear map `T : A^k → A^m` commutes with the left action, so on
//! block `i` it is right multiplication of the flattening by a matrix
//! `B_i` of shape `k·n_i × m·n_i`: `(Tx)_i = X_i B_i`. The adjoint is the
//! blockwise conjugate transpose. Right multiplication reverses products:
//! the matrix of `T ∘ S` is `B_S · B_T`. Everything below is phrased through
//! [`ModuleOperator::apply`] and [`ModuleOperator::compose`] so callers never
//! see that convention.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::hmod::{resolve_tol, ModuleSpace, ModuleVector, Submodule};
use crate::matkit::{self, CMatrix};
use crate::{Error, Result};

/// Default threshold for generalized-inverse residuals.
pub const GINV_TOL: f64 = 1e-9;
/// Default threshold for `P = P* = P²`.
pub const PROJECTION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleOperator {
    domain: ModuleSpace,
    codomain: ModuleSpace,
    blocks: Vec<CMatrix>,
}

/// Reduced minimum modulus and the block that attains it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaValue {
    pub value: f64,
    pub attained_block: usize,
}

/// Outcome of [`is_generalized_inverse`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneralizedInverseCheck {
    pub passed: bool,
    /// `‖T X T − T‖ / (1 + ‖T‖²‖X‖)`
    pub inner_residual: f64,
    /// `‖X T X − X‖ / (1 + ‖X‖²‖T‖)`
    pub outer_residual: f64,
}

impl GeneralizedInverseCheck {
    pub fn max_residual(&self) -> f64 {
        self.inner_residual.max(self.outer_residual)
    }
}

impl ModuleOperator {
    pub fn new(domain: ModuleSpace, codomain: ModuleSpace, blocks: Vec<CMatrix>) -> Result<Self> {
        domain.algebra().ensure_same(codomain.algebra())?;
        let nb = domain.algebra().num_blocks();
        if blocks.len() != nb {
            return Err(Error::InvalidInput(format!("expected {nb} blocks, got {}", blocks.len())));
        }
        for (i, b) in blocks.iter().enumerate() {
            let want = (domain.block_width(i), codomain.block_width(i));
            if b.shape() != want {
                return Err(Error::InvalidInput(format!("block {i} has shape {:?}, expected {want:?}", b.shape())));
            }
            if !b.is_finite() {
                return Err(Error::InvalidInput(format!("block {i} has non-finite entries")));
            }
        }
        Ok(ModuleOperator { domain, codomain, blocks })
    }

    pub(crate) fn from_blocks_unchecked(domain: ModuleSpace, codomain: ModuleSpace, blocks: Vec<CMatrix>) -> Self {
        ModuleOperator { domain, codomain, blocks }
    }

    pub fn identity(space: &ModuleSpace) -> Self {
        let blocks = (0..space.algebra().num_blocks()).map(|i| CMatrix::identity(space.block_width(i))).collect();
        ModuleOperator { domain: space.clone(), codomain: space.clone(), blocks }
    }

    pub fn zero(domain: &ModuleSpace, codomain: &ModuleSpace) -> Result<Self> {
        domain.algebra().ensure_same(codomain.algebra())?;
        let blocks = (0..domain.algebra().num_blocks())
            .map(|i| CMatrix::zeros(domain.block_width(i), codomain.block_width(i)))
            .collect();
        Ok(ModuleOperator { domain: domain.clone(), codomain: codomain.clone(), blocks })
    }

    pub fn domain(&self) -> &ModuleSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &ModuleSpace {
        &self.codomain
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    pub fn apply(&self, x: &ModuleVector) -> Result<ModuleVector> {
        self.domain.ensure_same(x.space(), "apply")?;
        let blocks = x.blocks().iter().zip(&self.blocks).map(|(xb, b)| xb * b).collect();
        Ok(ModuleVector::from_blocks_unchecked(self.codomain.clone(), blocks))
    }

    /// `self ∘ s`, i.e. apply `s` first.
    pub fn compose(&self, s: &ModuleOperator) -> Result<ModuleOperator> {
        self.domain.ensure_same(&s.codomain, "compose")?;
        let blocks = s.blocks.iter().zip(&self.blocks).map(|(bs, bt)| bs * bt).collect();
        Ok(ModuleOperator { domain: s.domain.clone(), codomain: self.codomain.clone(), blocks })
    }

    pub fn adjoint(&self) -> ModuleOperator {
        ModuleOperator {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            blocks: self.blocks.iter().map(CMatrix::adjoint).collect(),
        }
    }

    fn zip_same(&self, other: &Self, what: &str, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.domain.ensure_same(&other.domain, what)?;
        self.codomain.ensure_same(&other.codomain, what)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(ModuleOperator { domain: self.domain.clone(), codomain: self.codomain.clone(), blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_same(other, "operator addition", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_same(other, "operator subtraction", |a, b| a - b)
    }

    pub fn scale(&self, z: C64) -> Self {
        ModuleOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(z)).collect(),
        }
    }

    /// `1 − self` for an operator on a single space.
    pub fn complement_from_identity(&self) -> Result<Self> {
        ModuleOperator::identity(&self.domain).sub(self)
    }

    /// `‖T‖ = max_i σ₁(B_i)`.
    pub fn operator_norm(&self) -> f64 {
        self.blocks.iter().map(matkit::spectral_norm).fold(0.0, f64::max)
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.operator_norm())
    }

    /// Default relative rank threshold for this operator's blocks.
    pub fn default_tol(&self) -> f64 {
        resolve_tol(None, self.blocks.iter().map(CMatrix::shape))
    }

    /// Absolute singular-value cutoff: `tol · ‖T‖`, or infinite when
    /// `‖T‖ ≤ tol` so that an operator [`is_zero`](Self::is_zero) calls zero
    /// also has zero rank (`1 − P` for `P = 1` is rounding noise, and a purely
    /// relative cutoff would see full rank in it).
    fn cutoff(&self, tol: Option<f64>) -> f64 {
        let tol = tol.unwrap_or_else(|| self.default_tol());
        let norm = self.operator_norm();
        if norm <= tol {
            f64::INFINITY
        } else {
            tol * norm
        }
    }

    pub fn is_zero(&self, tol: Option<f64>) -> bool {
        self.operator_norm() <= tol.unwrap_or_else(|| self.default_tol())
    }

    /// `Ker(T)`: per block the left null space `{x : x B_i = 0}`.
    pub fn kernel(&self, tol: Option<f64>) -> Submodule {
        let cutoff = self.cutoff(tol);
        let rows: Vec<CMatrix> = self
            .blocks
            .iter()
            .map(|b| {
                let cols = matkit::column_space(b, cutoff);
                let null = matkit::complement_columns(&cols);
                null.adjoint()
            })
            .collect();
        Submodule::from_orthonormal_rows(&self.domain, rows)
    }

    /// `Ran(T)`: per block the row space of `B_i`.
    pub fn range(&self, tol: Option<f64>) -> Submodule {
        let cutoff = self.cutoff(tol);
        let rows: Vec<CMatrix> = self.blocks.iter().map(|b| matkit::row_space(b, cutoff)).collect();
        Submodule::from_orthonormal_rows(&self.codomain, rows)
    }

    /// Moore-Penrose inverse `T†`.
    pub fn mp_inverse(&self, tol: Option<f64>) -> ModuleOperator {
        let cutoff = self.cutoff(tol);
        ModuleOperator {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            blocks: self.blocks.iter().map(|b| matkit::pinv_with_cutoff(b, cutoff)).collect(),
        }
    }

    /// Reduced minimum modulus `γ(T) = inf {‖Tx‖ : x ∈ Ker(T)^⊥, ‖x‖ = 1}`,
    /// the smallest nonzero singular value over all blocks.
    pub fn gamma(&self, tol: Option<f64>) -> Result<GammaValue> {
        let cutoff = self.cutoff(tol);
        let mut best: Option<GammaValue> = None;
        for (i, b) in self.blocks.iter().enumerate() {
            let svd = matkit::svd_unchecked(b);
            let r = svd.count_above(cutoff);
            if r == 0 {
                continue;
            }
            let s = svd.singular_values[r - 1];
            if best.is_none_or(|g| s < g.value) {
                best = Some(GammaValue { value: s, attained_block: i });
            }
        }
        best.ok_or(Error::ZeroOperator)
    }

    /// Smallest nonzero eigenvalue of `T T*` (zero for the zero operator).
    /// The number of nonzero eigenvalues per block is the numerical rank of
    /// `T`, so this agrees with `γ(T)²` under the same threshold.
    pub fn range_gap(&self, tol: Option<f64>) -> f64 {
        let cutoff = self.cutoff(tol);
        let tt = self.compose(&self.adjoint()).expect("T T* is always composable");
        let mut gap: Option<f64> = None;
        for (b, g) in self.blocks.iter().zip(&tt.blocks) {
            let r = matkit::svd_unchecked(b).count_above(cutoff);
            if r == 0 {
                continue;
            }
            let (vals, _) = matkit::hermitian_eig_unchecked(&g.hermitian_part());
            let smallest = vals[vals.len() - r].max(0.0);
            gap = Some(gap.map_or(smallest, |x: f64| x.min(smallest)));
        }
        gap.unwrap_or(0.0)
    }

    /// `max(‖P − P*‖, ‖P² − P‖)`, or infinity when domain ≠ codomain.
    pub fn projection_residual(&self) -> f64 {
        if self.domain != self.codomain {
            return f64::INFINITY;
        }
        self.blocks
            .iter()
            .map(|b| {
                let herm = matkit::spectral_norm(&(b - &b.adjoint()));
                let idem = matkit::spectral_norm(&(&(b * b) - b));
                herm.max(idem)
            })
            .fold(0.0, f64::max)
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        self.projection_residual() <= tol
    }

    pub(crate) fn ensure_projection(&self, tol: f64) -> Result<()> {
        let residual = self.projection_residual();
        if residual > tol {
            return Err(Error::NotAProjection { residual });
        }
        Ok(())
    }
}

/// Raw Penrose residuals `‖TXT − T‖, ‖XTX − X‖, ‖(TX)* − TX‖, ‖(XT)* − XT‖`.
pub fn penrose_residuals(t: &ModuleOperator, x: &ModuleOperator) -> Result<[f64; 4]> {
    let tx = t.compose(x)?;
    let xt = x.compose(t)?;
    Ok([
        tx.compose(t)?.distance(t)?,
        xt.compose(x)?.distance(x)?,
        tx.adjoint().distance(&tx)?,
        xt.adjoint().distance(&xt)?,
    ])
}

/// Checks `T X T = T` and `X T X = X` with scale-free residuals.
pub fn is_generalized_inverse(t: &ModuleOperator, x: &ModuleOperator, tol: f64) -> Result<GeneralizedInverseCheck> {
    let nt = t.operator_norm();
    let nx = x.operator_norm();
    let txt = t.compose(x)?.compose(t)?;
    let xtx = x.compose(t)?.compose(x)?;
    let inner_residual = txt.distance(t)? / (1.0 + nt * nt * nx);
    let outer_residual = xtx.distance(x)? / (1.0 + nx * nx * nt);
    Ok(GeneralizedInverseCheck { passed: inner_residual <= tol && outer_residual <= tol, inner_residual, outer_residual })
}

/// Turns an inner inverse `S` (`T S T = T`) into the generalized inverse
/// `S T S`.
pub fn inner_to_generalized(t: &ModuleOperator, s: &ModuleOperator, tol: f64) -> Result<ModuleOperator> {
    let nt = t.operator_norm();
    let ns = s.operator_norm();
    let residual = t.compose(s)?.compose(t)?.distance(t)? / (1.0 + nt * nt * ns);
    if residual > tol {
        return Err(Error::NotInnerInverse { residual });
    }
    s.compose(t)?.compose(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::BlockAlgebra;

    fn cspace(k: usize) -> ModuleSpace {
        ModuleSpace::new(BlockAlgebra::complex(), k).unwrap()
    }

    fn diag_op(values: &[f64]) -> ModuleOperator {
        let s = cspace(values.len());
        ModuleOperator::new(s.clone(), s, vec![CMatrix::from_diag(values)]).unwrap()
    }

    #[test]
    fn compose_matches_apply() {
        let s2 = cspace(2);
        let s3 = cspace(3);
        let a = ModuleOperator::new(s2.clone(), s3.clone(), vec![CMatrix::from_real(2, 3, &[1.0, 2.0, 0.0, -1.0, 0.5, 3.0])])
            .unwrap();
        let b = ModuleOperator::new(s3.clone(), s2.clone(), vec![CMatrix::from_real(3, 2, &[0.0, 1.0, 1.0, 1.0, 2.0, -2.0])])
            .unwrap();
        let x = ModuleVector::new(s2.clone(), vec![CMatrix::from_real(1, 2, &[0.3, -0.7])]).unwrap();
        let via_compose = b.compose(&a).unwrap().apply(&x).unwrap();
        let via_apply = b.apply(&a.apply(&x).unwrap()).unwrap();
        assert!((via_compose.block(0) - via_apply.block(0)).max_abs() < 1e-15);
        assert!(a.compose(&a).is_err());
    }

    #[test]
    fn identity_and_adjoint() {
        let t = diag_op(&[2.0, 0.0]);
        let id = ModuleOperator::identity(t.domain());
        assert_eq!(id.compose(&t).unwrap(), t);
        assert_eq!(t.adjoint().adjoint(), t);
    }

    #[test]
    fn kernel_and_range_examples() {
        let s = cspace(2);
        let id = ModuleOperator::identity(&s);
        assert!(id.kernel(None).is_zero());
        let zero = ModuleOperator::zero(&s, &s).unwrap();
        assert!(zero.range(None).is_zero());

        // Rank one: x ↦ (x·u) v^H.
        let u = CMatrix::from_real(2, 1, &[1.0, 2.0]);
        let v = CMatrix::from_real(1, 2, &[3.0, -1.0]);
        let t = ModuleOperator::new(s.clone(), s.clone(), vec![&u * &v]).unwrap();
        let vline = Submodule::from_block_rows(&s, &[v.clone()], None).unwrap();
        assert!(t.range(None).approx_eq(&vline, 1e-12).unwrap());
        assert_eq!(t.kernel(None).block_dims(), vec![1]);
    }

    #[test]
    fn rounding_noise_has_zero_rank() {
        let s = cspace(2);
        let noise = ModuleOperator::new(s.clone(), s.clone(), vec![CMatrix::from_real(2, 2, &[1e-17, 2e-17, 0.0, -3e-17])])
            .unwrap();
        assert!(noise.is_zero(None));
        assert!(noise.range(None).is_zero());
        assert_eq!(noise.kernel(None).block_dims(), vec![2]);
        assert_eq!(noise.mp_inverse(None).operator_norm(), 0.0);
        assert_eq!(noise.gamma(None), Err(Error::ZeroOperator));
    }

    #[test]
    fn mp_inverse_examples() {
        let t = diag_op(&[2.0, 0.0]);
        let p = t.mp_inverse(None);
        assert!((p.block(0) - &CMatrix::from_diag(&[0.5, 0.0])).max_abs() < 1e-15);
        let id = ModuleOperator::identity(&cspace(3));
        assert_eq!(id.mp_inverse(None), id);
        let z = ModuleOperator::zero(&cspace(2), &cspace(3)).unwrap();
        let zi = z.mp_inverse(None);
        assert_eq!(zi.domain(), &cspace(3));
        assert_eq!(zi.operator_norm(), 0.0);
    }

    #[test]
    fn generalized_inverse_examples() {
        let id = ModuleOperator::identity(&cspace(2));
        assert!(is_generalized_inverse(&id, &id, GINV_TOL).unwrap().passed);
        let t = diag_op(&[2.0, 0.0]);
        assert!(is_generalized_inverse(&t, &t.mp_inverse(None), GINV_TOL).unwrap().passed);
        let wrong = diag_op(&[1.0, 0.0]);
        let check = is_generalized_inverse(&t, &wrong, GINV_TOL).unwrap();
        assert!(!check.passed);
        // X T X = diag(2, 0) ≠ diag(1, 0)
        assert!(check.outer_residual > 0.1);
    }

    #[test]
    fn inner_inverse_conversion() {
        let t = diag_op(&[2.0, 0.0]);
        let mp = t.mp_inverse(None);
        let g = inner_to_generalized(&t, &mp, GINV_TOL).unwrap();
        assert!(g.distance(&mp).unwrap() < 1e-15);

        // pinv + N with T N T = 0 is still inner.
        let s = t.domain().clone();
        let n = ModuleOperator::new(s.clone(), s, vec![CMatrix::from_real(2, 2, &[0.0, 5.0, 7.0, 1.0])]).unwrap();
        let inner = mp.add(&n).unwrap();
        let g = inner_to_generalized(&t, &inner, GINV_TOL).unwrap();
        assert!(is_generalized_inverse(&t, &g, GINV_TOL).unwrap().passed);

        assert!(matches!(
            inner_to_generalized(&t, &diag_op(&[1.0, 0.0]), GINV_TOL),
            Err(Error::NotInnerInverse { .. })
        ));
    }

    #[test]
    fn gamma_examples() {
        let t = diag_op(&[3.0, 0.1, 0.0]);
        let g = t.gamma(None).unwrap();
        assert!((g.value - 0.1).abs() < 1e-15);
        assert!((t.adjoint().gamma(None).unwrap().value - g.value).abs() < 1e-15);
        let u = ModuleOperator::new(cspace(2), cspace(2), vec![CMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0])]).unwrap();
        assert!((u.gamma(None).unwrap().value - 1.0).abs() < 1e-15);
        let z = ModuleOperator::zero(&cspace(2), &cspace(2)).unwrap();
        assert_eq!(z.gamma(None), Err(Error::ZeroOperator));
    }

    #[test]
    fn range_gap_examples() {
        assert!((ModuleOperator::identity(&cspace(2)).range_gap(None) - 1.0).abs() < 1e-15);
        assert_eq!(ModuleOperator::zero(&cspace(2), &cspace(2)).unwrap().range_gap(None), 0.0);
        assert!((diag_op(&[2.0, 0.0]).range_gap(None) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_over_blocks() {
        let alg = BlockAlgebra::new(vec![1, 2]).unwrap();
        let s = ModuleSpace::new(alg, 1).unwrap();
        let t = ModuleOperator::new(
            s.clone(),
            s,
            vec![CMatrix::from_diag(&[0.0]), CMatrix::from_diag(&[4.0, 0.5])],
        )
        .unwrap();
        let g = t.gamma(None).unwrap();
        assert_eq!(g.attained_block, 1);
        assert!((g.value - 0.5).abs() < 1e-15);
    }
}
