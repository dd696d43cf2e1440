//! Dixmier angles between submodules and the defect of the inequality
//! `γ(PQ)² + ‖(1−P)QR‖² ≥ 1`.

use serde::Serialize;

use crate::hmod::Submodule;
use crate::modop::{ModuleOperator, PROJECTION_TOL};
use crate::{Error, Result};

/// Cosine/angle clamping window.
const CLAMP_WINDOW: f64 = 1e-12;

/// `c₀(M, N)` and the Dixmier angle `α₀(M, N) ∈ [0, π/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleResult {
    pub cosine: f64,
    pub angle_radians: f64,
}

/// One evaluation of `γ(PQ)² + ‖(1−P)QR‖² − 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectResult {
    pub gamma_pq: f64,
    pub delta: f64,
    pub defect: f64,
    pub algebra_descriptor: Vec<usize>,
    pub rank_tol: f64,
}

/// `c₀(M, N) = ‖P_M P_N‖`.
///
/// The supremum of `‖⟨x, y⟩‖` over the unit balls of `M` and `N` is the norm
/// of the product of the two projections; that identity is the last step of
/// the closed-range theorem's proof and is checked against sampled unit
/// vectors in the tests.
pub fn dixmier_cosine(m: &Submodule, n: &Submodule) -> Result<AngleResult> {
    let pm = m.projection_onto();
    let pn = n.projection_onto();
    let raw = pm.compose(&pn)?.operator_norm();
    let cosine = if raw > 1.0 && raw <= 1.0 + CLAMP_WINDOW { 1.0 } else { raw.clamp(0.0, 1.0) };
    Ok(AngleResult { cosine, angle_radians: cosine.acos() })
}

/// `M = Ker(T) ∩ [Ker(T) ∩ Ran(S)]^⊥`.
pub fn m_submodule(t: &ModuleOperator, s: &ModuleOperator, tol: Option<f64>) -> Result<Submodule> {
    let ker = t.kernel(tol);
    let ran = s.range(tol);
    let common = ker.intersect(&ran, tol)?;
    ker.intersect(&common.complement(), tol)
}

/// Projection `R` onto `Ker(Q) + Ran(P)`.
pub fn r_projection(p: &ModuleOperator, q: &ModuleOperator, tol: Option<f64>) -> Result<ModuleOperator> {
    p.ensure_projection(PROJECTION_TOL)?;
    q.ensure_projection(PROJECTION_TOL)?;
    let sum = q.kernel(tol).sum(&p.range(tol), tol)?;
    Ok(sum.projection_onto())
}

/// `γ(PQ)`, `δ = ‖(1−P)QR‖` and `γ² + δ² − 1` for orthogonal projections
/// with `PQ ≠ 0`.
pub fn inequality_defect(p: &ModuleOperator, q: &ModuleOperator, tol: Option<f64>) -> Result<DefectResult> {
    let r = r_projection(p, q, tol)?;
    let pq = p.compose(q)?;
    let rank_tol = tol.unwrap_or_else(|| pq.default_tol());
    if pq.operator_norm() <= rank_tol {
        return Err(Error::ZeroProduct);
    }
    let gamma_pq = pq.gamma(Some(rank_tol))?.value;
    let one_minus_p = p.complement_from_identity()?;
    let delta = one_minus_p.compose(q)?.compose(&r)?.operator_norm();
    Ok(DefectResult {
        gamma_pq,
        delta,
        defect: gamma_pq * gamma_pq + delta * delta - 1.0,
        algebra_descriptor: p.domain().algebra().block_dims().to_vec(),
        rank_tol,
    })
}

/// Both sides of `‖(1−P)QR‖ = c₀(M, Ran(S))` with `P = T†T`, `Q = SS†`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleIdentity {
    pub projection_side: f64,
    pub cosine_side: f64,
    pub residual: f64,
}

pub fn angle_identity_check(t: &ModuleOperator, s: &ModuleOperator, tol: Option<f64>) -> Result<AngleIdentity> {
    if t.is_zero(tol) || s.is_zero(tol) {
        return Err(Error::ZeroOperator);
    }
    let p = t.mp_inverse(tol).compose(t)?;
    let q = s.compose(&s.mp_inverse(tol))?;
    let r = r_projection(&p, &q, tol)?;
    let projection_side = p.complement_from_identity()?.compose(&q)?.compose(&r)?.operator_norm();
    let m = m_submodule(t, s, tol)?;
    let cosine_side = dixmier_cosine(&m, &s.range(tol))?.cosine;
    Ok(AngleIdentity { projection_side, cosine_side, residual: (projection_side - cosine_side).abs() })
}
