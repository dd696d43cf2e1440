//! Pass/fail checks for the closed-range results, one function per
//! statement, each returning a [`VerdictReport`] with named residuals.
//!
//! Every statement is checked in its finite-dimensional shadow: closedness
//! of ranges is automatic here, so what is exercised is the algebra behind
//! each argument (identities, subspace equalities, inverse constructions),
//! not the accumulation-point content. Reports say so via
//! `finite_dim_shadow`.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::angles;
use crate::hmod::{DirectSum, ModuleSpace};
use crate::matkit;
use crate::modop::{self, ModuleOperator, PROJECTION_TOL};
use crate::{Error, Result};

/// Module class every report is restricted to.
pub const MODULE_CLASS: &str = "free A^k";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct InstanceDescriptor {
    pub block_dims: Vec<usize>,
    /// Ranks of the free modules involved, in the order the check uses them.
    pub module_ranks: Vec<usize>,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub check_name: String,
    pub instance: InstanceDescriptor,
    pub residuals: Vec<Residual>,
    /// Informational values that are not compared against a tolerance.
    pub metrics: Vec<Metric>,
    pub passed: bool,
    /// The check's primary threshold; each residual carries its own.
    pub tolerance: f64,
    pub finite_dim_shadow: bool,
    /// Set for draws such as `TS = 0` or `PQ = 0` where the statement holds
    /// vacuously.
    pub degenerate: bool,
    pub module_class: String,
}

impl VerdictReport {
    fn new(check_name: &str, spaces: &[&ModuleSpace], tolerance: f64) -> Self {
        VerdictReport {
            check_name: check_name.to_string(),
            instance: InstanceDescriptor {
                block_dims: spaces.first().map(|s| s.algebra().block_dims().to_vec()).unwrap_or_default(),
                module_ranks: spaces.iter().map(|s| s.rank()).collect(),
                seed: None,
                trial: None,
            },
            residuals: Vec::new(),
            metrics: Vec::new(),
            passed: true,
            tolerance,
            finite_dim_shadow: true,
            degenerate: false,
            module_class: MODULE_CLASS.to_string(),
        }
    }

    fn residual(&mut self, name: &str, value: f64, tolerance: f64) {
        self.passed &= value <= tolerance;
        self.residuals.push(Residual { name: name.to_string(), value, tolerance });
    }

    /// A yes/no condition, recorded as residual 0 (holds) or 1 (fails).
    fn condition(&mut self, name: &str, holds: bool) {
        self.residual(name, if holds { 0.0 } else { 1.0 }, 0.0);
    }

    fn metric(&mut self, name: &str, value: f64) {
        self.metrics.push(Metric { name: name.to_string(), value });
    }

    pub fn with_seed(mut self, seed: u64, trial: u64) -> Self {
        self.instance.seed = Some(seed);
        self.instance.trial = Some(trial);
        self
    }

    /// Largest residual, or 0 when there are none.
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }

    pub fn residual_value(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.name == name).map(|r| r.value)
    }

    pub fn metric_value(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.name == name).map(|m| m.value)
    }
}

/// Thresholds used by the checks. `rank` is the relative singular-value
/// cutoff passed to kernel/range/inverse computations (`None` = default).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Penrose residuals, in units of `1 + ‖T‖`.
    pub penrose: f64,
    /// `|‖T†‖·γ(T) − 1|`.
    pub gamma_product: f64,
    /// `|γ(T) − γ(T*)|`.
    pub gamma_adjoint: f64,
    /// Projection distance between submodules.
    pub range: f64,
    pub transfer: f64,
    /// Koliha residuals, in units of `(1 + |λ|)³`.
    pub koliha: f64,
    pub spectral: f64,
    pub angle: f64,
    pub defect: f64,
    /// Operator equalities among projections (commutation, etc.).
    pub commuting: f64,
    pub summand: f64,
    pub rank: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            penrose: 1e-10,
            gamma_product: 1e-8,
            gamma_adjoint: 1e-10,
            range: 1e-8,
            transfer: 1e-9,
            koliha: 1e-10,
            spectral: 1e-6,
            angle: 1e-8,
            defect: 1e-8,
            commuting: 1e-8,
            summand: 1e-8,
            rank: None,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 12] = [
        "penrose",
        "gamma_product",
        "gamma_adjoint",
        "range",
        "transfer",
        "koliha",
        "spectral",
        "angle",
        "defect",
        "commuting",
        "summand",
        "rank",
    ];

    /// Overrides one threshold by name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance {key} must be positive and finite, got {value}")));
        }
        let slot = match key {
            "penrose" => &mut self.penrose,
            "gamma_product" => &mut self.gamma_product,
            "gamma_adjoint" => &mut self.gamma_adjoint,
            "range" => &mut self.range,
            "transfer" => &mut self.transfer,
            "koliha" => &mut self.koliha,
            "spectral" => &mut self.spectral,
            "angle" => &mut self.angle,
            "defect" => &mut self.defect,
            "commuting" => &mut self.commuting,
            "summand" => &mut self.summand,
            "rank" => {
                self.rank = Some(value);
                return Ok(());
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown tolerance {key:?}; expected one of {}",
                    Self::KEYS.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}

fn scalar_op(space: &ModuleSpace, z: C64) -> ModuleOperator {
    ModuleOperator::identity(space).scale(z)
}

fn ensure_projection_pair(p: &ModuleOperator, q: &ModuleOperator) -> Result<()> {
    for op in [p, q] {
        let residual = op.projection_residual();
        if residual > PROJECTION_TOL {
            return Err(Error::NotAProjection { residual });
        }
    }
    p.domain().ensure_same(q.domain(), "projection pair")
}

/// The four Penrose equations for `T†`, `‖T†‖·γ(T) = 1` and `γ(T) = γ(T*)`.
pub fn check_penrose(t: &ModuleOperator, tols: &Tolerances) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("penrose", &[t.domain(), t.codomain()], tols.penrose);
    let x = t.mp_inverse(tols.rank);
    let unit = tols.penrose * (1.0 + t.operator_norm());
    let names = ["txt_minus_t", "xtx_minus_x", "tx_hermitian", "xt_hermitian"];
    for (name, value) in names.iter().zip(modop::penrose_residuals(t, &x)?) {
        report.residual(name, value, unit);
    }
    if t.is_zero(tols.rank) {
        report.degenerate = true;
        return Ok(report);
    }
    let gamma = t.gamma(tols.rank)?.value;
    let gamma_adj = t.adjoint().gamma(tols.rank)?.value;
    let xnorm = x.operator_norm();
    report.residual("gamma_times_mp_norm", (xnorm * gamma - 1.0).abs(), tols.gamma_product);
    report.residual("gamma_adjoint", (gamma - gamma_adj).abs(), tols.gamma_adjoint);
    report.metric("gamma", gamma);
    report.metric("mp_norm", xnorm);
    Ok(report)
}

/// `Ran(T) = Ran(T T*)`.
pub fn check_range_of_tt(t: &ModuleOperator, tols: &Tolerances) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("range-tt", &[t.domain(), t.codomain()], tols.range);
    let tt = t.compose(&t.adjoint())?;
    let d = t.range(tols.rank).distance(&tt.range(tols.rank))?;
    report.residual("range_distance", d, tols.range);
    report.degenerate = t.is_zero(tols.rank);
    Ok(report)
}

/// Generalized inverses transfer between `TS` and `T†TSS†`: with
/// `V = (TS)†`, `SVT` is one for `T†TSS†`; with `U = (T†TSS†)†` and
/// `W = PUQ` (`P = SS†`, `Q = T†T`), `S†WT†` is one for `TS`.
pub fn check_prop_generalized_inverse_transfer(
    t: &ModuleOperator,
    s: &ModuleOperator,
    tols: &Tolerances,
) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("ginv-transfer", &[s.domain(), s.codomain(), t.codomain()], tols.transfer);
    let ts = t.compose(s)?;
    let t_dag = t.mp_inverse(tols.rank);
    let s_dag = s.mp_inverse(tols.rank);
    let q = t_dag.compose(t)?;
    let p = s.compose(&s_dag)?;
    let middle = q.compose(&p)?;

    let v = ts.mp_inverse(tols.rank);
    let svt = s.compose(&v)?.compose(t)?;
    let forward = modop::is_generalized_inverse(&middle, &svt, tols.transfer)?;
    report.residual("svt_inner", forward.inner_residual, tols.transfer);
    report.residual("svt_outer", forward.outer_residual, tols.transfer);

    let u = middle.mp_inverse(tols.rank);
    let w = p.compose(&u)?.compose(&q)?;
    let back = s_dag.compose(&w)?.compose(&t_dag)?;
    let backward = modop::is_generalized_inverse(&ts, &back, tols.transfer)?;
    report.residual("swt_inner", backward.inner_residual, tols.transfer);
    report.residual("swt_outer", backward.outer_residual, tols.transfer);

    report.degenerate = ts.is_zero(tols.rank);
    Ok(report)
}

/// `(λ−1+P)(λ−(P−Q))(λ+1−Q) = λ(λ²−1+PQ)` and
/// `(λ−1+P)(λ−(P+Q))(λ−1+Q) = λ((λ−1)²−PQ)` for each `λ`, residuals in
/// units of `(1+|λ|)³`.
///
/// The first identity needs `λ+1−Q` as its last factor; with `λ−1+Q` the
/// left side expands to `λ((λ−1)² + 2(λ−1)Q + PQ)` instead.
pub fn check_koliha_identities(
    p: &ModuleOperator,
    q: &ModuleOperator,
    lambdas: &[C64],
    tols: &Tolerances,
) -> Result<VerdictReport> {
    ensure_projection_pair(p, q)?;
    let space = p.domain();
    let mut report = VerdictReport::new("koliha", &[space], tols.koliha);
    let pq = p.compose(q)?;
    let p_minus_q = p.sub(q)?;
    let p_plus_q = p.add(q)?;
    let one = C64::new(1.0, 0.0);
    let (mut worst_diff, mut worst_sum) = (0.0f64, 0.0f64);
    for &l in lambdas {
        let scale = (1.0 + l.norm()).powi(3);
        let left_p = scalar_op(space, l - one).add(p)?;

        let lhs = left_p.compose(&scalar_op(space, l).sub(&p_minus_q)?)?.compose(&scalar_op(space, l + one).sub(q)?)?;
        let rhs = scalar_op(space, l * l - one).add(&pq)?.scale(l);
        worst_diff = worst_diff.max(lhs.distance(&rhs)? / scale);

        let lhs = left_p.compose(&scalar_op(space, l).sub(&p_plus_q)?)?.compose(&scalar_op(space, l - one).add(q)?)?;
        let rhs = scalar_op(space, (l - one) * (l - one)).sub(&pq)?.scale(l);
        worst_sum = worst_sum.max(lhs.distance(&rhs)? / scale);
    }
    report.residual("difference_identity", worst_diff, tols.koliha);
    report.residual("sum_identity", worst_sum, tols.koliha);
    report.metric("lambda_count", lambdas.len() as f64);
    Ok(report)
}

/// Width of the window around 0 and 1 excluded from `σ(P+Q)` and from the
/// roots `1 ± √μ`.
const SPECTRAL_EXCLUSION: f64 = 1e-6;

/// `λ ∈ σ(P+Q) ∖ {0,1}` iff `(λ−1)² ∈ σ(PQ)`, with multiplicities.
///
/// Left multiset: `(λ−1)²` over eigenvalues of `P+Q` away from 0 and 1.
/// Right multiset: for each eigenvalue `μ` of `PQP` (which shares the
/// nonzero spectrum of `PQ`), the roots `1 ± √μ` of `(λ−1)² = μ`, filtered
/// by the same exclusion; each surviving root contributes `μ`. A generic
/// principal angle `θ` thus gives `cos²θ` twice on both sides.
pub fn check_spectral_correspondence(
    p: &ModuleOperator,
    q: &ModuleOperator,
    tols: &Tolerances,
) -> Result<VerdictReport> {
    ensure_projection_pair(p, q)?;
    let mut report = VerdictReport::new("spectral", &[p.domain()], tols.spectral);
    let sum = p.add(q)?;
    let pqp = p.compose(q)?.compose(p)?;
    let away = |x: f64| x.abs() > SPECTRAL_EXCLUSION && (x - 1.0).abs() > SPECTRAL_EXCLUSION;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (a, b) in sum.blocks().iter().zip(pqp.blocks()) {
        let (vals, _) = matkit::hermitian_eig(&a.hermitian_part())?;
        left.extend(vals.into_iter().filter(|&l| away(l)).map(|l| (l - 1.0) * (l - 1.0)));
        let (mus, _) = matkit::hermitian_eig(&b.hermitian_part())?;
        for mu in mus {
            let mu = mu.max(0.0);
            let root = mu.sqrt();
            for l in [1.0 + root, 1.0 - root] {
                if away(l) {
                    right.push(mu);
                }
            }
        }
    }
    let (worst, matched) = greedy_pairing(&mut left, &mut right, tols.spectral);
    let unmatched = left.len() + right.len() - 2 * matched;
    report.residual("pairing_distance", worst, tols.spectral);
    report.residual("unmatched", unmatched as f64, 0.0);
    report.metric("matched", matched as f64);
    report.degenerate = left.is_empty() && right.is_empty();
    Ok(report)
}

/// Sorts both lists and pairs each left value with its nearest unused right
/// value within `threshold`. Returns the largest accepted pairing distance
/// and the number of pairs.
fn greedy_pairing(left: &mut [f64], right: &mut [f64], threshold: f64) -> (f64, usize) {
    left.sort_by(f64::total_cmp);
    right.sort_by(f64::total_cmp);
    let mut used = vec![false; right.len()];
    let mut worst = 0.0f64;
    let mut matched = 0;
    for &x in left.iter() {
        let best = right
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((j, d)) = best {
            if d <= threshold {
                used[j] = true;
                matched += 1;
                worst = worst.max(d);
            }
        }
    }
    (worst, matched)
}

/// `Ran(1−P+Q) = Ran(1−P) + Ran(Q)`, and for `T = [[1−P, Q], [0, 0]]` on
/// `F ⊕ F`: `Ran(T) = Ran(TT*) = Ran(1−P+Q) ⊕ 0`.
pub fn check_range_sum_identity(p: &ModuleOperator, q: &ModuleOperator, tols: &Tolerances) -> Result<VerdictReport> {
    ensure_projection_pair(p, q)?;
    let space = p.domain();
    let mut report = VerdictReport::new("range-sum", &[space], tols.range);
    let one_minus_p = p.complement_from_identity()?;
    let combined = one_minus_p.add(q)?;
    let lhs = combined.range(tols.rank);
    let rhs = one_minus_p.range(tols.rank).sum(&q.range(tols.rank), tols.rank)?;
    report.residual("sum_distance", lhs.distance(&rhs)?, tols.range);

    let ds = DirectSum::new(space, space)?;
    let row = one_minus_p.compose(&ds.project_left())?.add(&q.compose(&ds.project_right())?)?;
    let t = ds.embed_left().compose(&row)?;
    let tt = t.compose(&t.adjoint())?;
    let ran_tt = tt.range(tols.rank);
    report.residual("block_tt_distance", ran_tt.distance(&ds.embed_left_submodule(&lhs)?)?, tols.range);
    report.residual("block_t_vs_tt", t.range(tols.rank).distance(&ran_tt)?, tols.range);
    Ok(report)
}

/// The three equivalent conditions: `TS` has closed range,
/// `Ker(T) + Ran(S)` and `Ker(S*) + Ran(T*)` are orthogonal summands; plus
/// the angle criterion `c₀(M, Ran(S)) < 1` with `M = Ker(T) ∩ [Ker(T) ∩
/// Ran(S)]^⊥`.
pub fn check_theorem_equivalences(t: &ModuleOperator, s: &ModuleOperator, tols: &Tolerances) -> Result<VerdictReport> {
    if t.is_zero(tols.rank) || s.is_zero(tols.rank) {
        return Err(Error::ZeroOperator);
    }
    let mut report = VerdictReport::new("theorem", &[s.domain(), s.codomain(), t.codomain()], tols.summand);
    let ts = t.compose(s)?;
    let ts_zero = ts.is_zero(tols.rank);
    let gap = ts.range_gap(tols.rank);
    let closed = ts_zero || gap > 0.0;
    let sum_ii = t.kernel(tols.rank).sum(&s.range(tols.rank), tols.rank)?;
    let summand_ii = sum_ii.is_orthogonal_summand(tols.summand);
    let sum_iii = s.adjoint().kernel(tols.rank).sum(&t.adjoint().range(tols.rank), tols.rank)?;
    let summand_iii = sum_iii.is_orthogonal_summand(tols.summand);
    report.condition("equivalence_disagreement", closed == summand_ii && summand_ii == summand_iii);

    let m = angles::m_submodule(t, s, tols.rank)?;
    let cosine = angles::dixmier_cosine(&m, &s.range(tols.rank))?.cosine;
    report.condition("angle_criterion_violation", !(cosine < 1.0 && summand_iii) || closed);

    report.metric("range_gap", gap);
    report.metric("cosine", cosine);
    report.degenerate = ts_zero;
    Ok(report)
}

/// The seven equivalent conditions for `M = Ran(P)`, `N = Ran(Q)`:
/// `PQ = QP`, `PQ = P_{M∩N}`, `PQ` is a projection, `P` commutes with
/// `1−Q`, `1−P` commutes with `Q`, `1−P` commutes with `1−Q`, and
/// `M = M∩N + M∩N^⊥`. When `M ⊆ N` it also checks `PQ = QP = P`.
pub fn check_commuting_projections(
    p: &ModuleOperator,
    q: &ModuleOperator,
    tols: &Tolerances,
) -> Result<VerdictReport> {
    ensure_projection_pair(p, q)?;
    let mut report = VerdictReport::new("commuting", &[p.domain()], tols.commuting);
    let tol = tols.commuting;
    let commute = |a: &ModuleOperator, b: &ModuleOperator| -> Result<bool> {
        Ok(a.compose(b)?.distance(&b.compose(a)?)? <= tol)
    };
    let m = p.range(tols.rank);
    let n = q.range(tols.rank);
    let m_and_n = m.intersect(&n, tols.rank)?;
    let m_and_not_n = m.intersect(&n.complement(), tols.rank)?;
    let pq = p.compose(q)?;
    let one_p = p.complement_from_identity()?;
    let one_q = q.complement_from_identity()?;
    let conditions = [
        commute(p, q)?,
        pq.distance(&m_and_n.projection_onto())? <= tol,
        pq.projection_residual() <= tol,
        commute(p, &one_q)?,
        commute(&one_p, q)?,
        commute(&one_p, &one_q)?,
        m.distance(&m_and_n.sum(&m_and_not_n, tols.rank)?)? <= tol,
    ];
    let holding = conditions.iter().filter(|&&c| c).count();
    report.condition("equivalence_disagreement", holding == 0 || holding == conditions.len());
    report.metric("conditions_holding", holding as f64);
    report.metric("commutator_norm", pq.distance(&q.compose(p)?)?);
    if m.is_subset_of(&n, tols.range)? {
        report.residual("nested_pq_minus_p", pq.distance(p)?, tol);
        report.residual("nested_qp_minus_p", q.compose(p)?.distance(p)?, tol);
        report.metric("nested", 1.0);
    }
    Ok(report)
}

/// `(TS)†` is bounded iff `Ker(T) + Ran(S)` is an orthogonal summand; both
/// sides are evaluated, along with `‖(TS)†‖·γ(TS) = 1`.
pub fn check_mp_of_product_boundedness(
    t: &ModuleOperator,
    s: &ModuleOperator,
    tols: &Tolerances,
) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("mp-product", &[s.domain(), s.codomain(), t.codomain()], tols.gamma_product);
    let ts = t.compose(s)?;
    let x = ts.mp_inverse(tols.rank);
    let norm = x.operator_norm();
    let bounded = norm.is_finite();
    let summand = t.kernel(tols.rank).sum(&s.range(tols.rank), tols.rank)?.is_orthogonal_summand(tols.summand);
    report.condition("boundedness_disagreement", bounded == summand);
    report.metric("mp_norm", norm);
    if ts.is_zero(tols.rank) {
        report.degenerate = true;
        report.metric("gamma", 0.0);
    } else {
        let gamma = ts.gamma(tols.rank)?.value;
        report.residual("gamma_times_mp_norm", (gamma * norm - 1.0).abs(), tols.gamma_product);
        report.metric("gamma", gamma);
    }
    Ok(report)
}

/// `‖(1−P)QR‖ = c₀(M, Ran(S))` with `P = T†T`, `Q = SS†`.
pub fn check_angle_identity(t: &ModuleOperator, s: &ModuleOperator, tols: &Tolerances) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("angle", &[s.domain(), s.codomain(), t.codomain()], tols.angle);
    match angles::angle_identity_check(t, s, tols.rank) {
        Ok(id) => {
            report.residual("identity_residual", id.residual, tols.angle);
            report.metric("projection_side", id.projection_side);
            report.metric("cosine_side", id.cosine_side);
        }
        Err(Error::ZeroOperator) => report.degenerate = true,
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// `γ(PQ)² + ‖(1−P)QR‖² ≥ 1`, and its consequence `γ(PQ)² ≥ 1 − δ²` when
/// `δ < 1`. Over `C` alone the inequality is an equality, which is checked
/// too. `PQ = 0` gives a degenerate report with no residuals.
pub fn check_defect(p: &ModuleOperator, q: &ModuleOperator, tols: &Tolerances) -> Result<VerdictReport> {
    ensure_projection_pair(p, q)?;
    let mut report = VerdictReport::new("defect", &[p.domain()], tols.defect);
    match angles::inequality_defect(p, q, tols.rank) {
        Ok(d) => {
            report.residual("negative_defect", (-d.defect).max(0.0), tols.defect);
            if d.algebra_descriptor == [1] {
                // Over the complex field the inequality is an equality.
                report.residual("complex_equality", d.defect.abs(), tols.defect);
            }
            if d.delta < 1.0 {
                let shortfall = 1.0 - d.delta * d.delta - d.gamma_pq * d.gamma_pq;
                report.residual("corollary_shortfall", shortfall.max(0.0), tols.defect);
            }
            report.metric("gamma_pq", d.gamma_pq);
            report.metric("delta", d.delta);
            report.metric("defect", d.defect);
        }
        Err(Error::ZeroProduct) => report.degenerate = true,
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::BlockAlgebra;
    use crate::hmod::{ModuleVector, Submodule};
    use crate::matkit::CMatrix;
    use crate::sample;
    use std::f64::consts::FRAC_PI_4;

    fn space(dims: Vec<usize>, k: usize) -> ModuleSpace {
        ModuleSpace::new(BlockAlgebra::new(dims).unwrap(), k).unwrap()
    }

    fn line(s: &ModuleSpace, theta: f64) -> ModuleOperator {
        let x = ModuleVector::new(s.clone(), vec![CMatrix::from_real(1, 2, &[theta.cos(), theta.sin()])]).unwrap();
        Submodule::span(s, &[x], None).unwrap().projection_onto()
    }

    #[test]
    fn koliha_examples() {
        let s = space(vec![1], 2);
        let tols = Tolerances::default();
        let id = ModuleOperator::identity(&s);
        let r = check_koliha_identities(&id, &id, &[C64::new(2.0, 0.0), C64::new(0.0, 0.0)], &tols).unwrap();
        assert!(r.passed && r.max_residual() == 0.0);

        let s = space(vec![1, 2], 2);
        let mut rng = sample::trial_rng(11, 0);
        let p = sample::random_projection(&mut rng, &s, &[1, 2]).unwrap();
        let q = sample::random_projection(&mut rng, &s, &[2, 3]).unwrap();
        let lambdas: Vec<C64> = (0..10).map(|_| sample::random_lambda(&mut rng, 2.0)).collect();
        let r = check_koliha_identities(&p, &q, &lambdas, &tols).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn koliha_printed_first_factor_order_is_not_an_identity() {
        let s = space(vec![1], 2);
        let p = line(&s, 0.0);
        let q = line(&s, FRAC_PI_4);
        let l = C64::new(0.5, 0.0);
        let sc = |z: C64| scalar_op(&s, z);
        let one = C64::new(1.0, 0.0);
        let lhs = sc(l - one).add(&p).unwrap().compose(&sc(l).sub(&p.sub(&q).unwrap()).unwrap()).unwrap();
        let lhs = lhs.compose(&sc(l - one).add(&q).unwrap()).unwrap();
        let rhs = sc(l * l - one).add(&p.compose(&q).unwrap()).unwrap().scale(l);
        assert!(lhs.distance(&rhs).unwrap() > 0.1);
    }

    #[test]
    fn koliha_rejects_non_projection() {
        let s = space(vec![1], 1);
        let two = scalar_op(&s, C64::new(2.0, 0.0));
        let id = ModuleOperator::identity(&s);
        assert!(matches!(
            check_koliha_identities(&two, &id, &[C64::new(1.0, 0.0)], &Tolerances::default()),
            Err(Error::NotAProjection { .. })
        ));
    }

    #[test]
    fn spectral_examples() {
        let s = space(vec![1], 2);
        let tols = Tolerances::default();
        let p = line(&s, 0.3);
        let r = check_spectral_correspondence(&p, &p, &tols).unwrap();
        assert!(r.passed && r.metric_value("matched") == Some(1.0));
        let perp = line(&s, 0.3 + std::f64::consts::FRAC_PI_2);
        let r = check_spectral_correspondence(&p, &perp, &tols).unwrap();
        assert!(r.passed && r.degenerate);
        let q = line(&s, 0.3 + FRAC_PI_4);
        let r = check_spectral_correspondence(&p, &q, &tols).unwrap();
        assert!(r.passed && r.metric_value("matched") == Some(2.0), "{r:?}");
    }

    #[test]
    fn pairing_counts_leftovers() {
        let (w, m) = greedy_pairing(&mut [0.5, 0.25], &mut [0.25 + 1e-9, 0.5, 0.75], 1e-6);
        assert!(w > 0.0 && w < 1e-8);
        assert_eq!(m, 2);
    }

    #[test]
    fn range_sum_examples() {
        let s = space(vec![1, 2], 1);
        let tols = Tolerances::default();
        let id = ModuleOperator::identity(&s);
        let zero = ModuleOperator::zero(&s, &s).unwrap();
        assert!(check_range_sum_identity(&id, &id, &tols).unwrap().passed);
        assert!(check_range_sum_identity(&id, &zero, &tols).unwrap().passed);
        let mut rng = sample::trial_rng(2, 2);
        let p = sample::random_projection(&mut rng, &s, &[1, 1]).unwrap();
        let q = sample::random_projection(&mut rng, &s, &[0, 1]).unwrap();
        let r = check_range_sum_identity(&p, &q, &tols).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn transfer_examples() {
        let s = space(vec![1, 2], 2);
        let tols = Tolerances::default();
        let id = ModuleOperator::identity(&s);
        assert!(check_prop_generalized_inverse_transfer(&id, &id, &tols).unwrap().passed);
        let mut rng = sample::trial_rng(4, 0);
        let e = space(vec![1, 2], 3);
        for _ in 0..10 {
            let sop = sample::random_operator(&mut rng, &e, &s).unwrap();
            let top = sample::random_operator(&mut rng, &s, &e).unwrap();
            let r = check_prop_generalized_inverse_transfer(&top, &sop, &tols).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn theorem_examples() {
        let s = space(vec![1], 2);
        let tols = Tolerances::default();
        let p = line(&s, 0.0);
        let comp = p.complement_from_identity().unwrap();
        let r = check_theorem_equivalences(&p, &comp, &tols).unwrap();
        assert!(r.passed && r.degenerate);
        let zero = ModuleOperator::zero(&s, &s).unwrap();
        assert_eq!(check_theorem_equivalences(&zero, &p, &tols), Err(Error::ZeroOperator));
        let mut rng = sample::trial_rng(6, 1);
        let big = space(vec![1, 2, 3], 2);
        let t = sample::random_nonzero_operator(&mut rng, &big, &big).unwrap();
        let u = sample::random_nonzero_operator(&mut rng, &big, &big).unwrap();
        assert!(check_theorem_equivalences(&t, &u, &tols).unwrap().passed);
    }

    #[test]
    fn commuting_examples() {
        let s = space(vec![1], 2);
        let tols = Tolerances::default();
        let p = line(&s, 0.0);
        let q = line(&s, FRAC_PI_4);
        let r = check_commuting_projections(&p, &q, &tols).unwrap();
        assert!(r.passed && r.metric_value("conditions_holding") == Some(0.0));
        let perp = line(&s, std::f64::consts::FRAC_PI_2);
        let r = check_commuting_projections(&p, &perp, &tols).unwrap();
        assert!(r.passed && r.metric_value("conditions_holding") == Some(7.0));
        let id = ModuleOperator::identity(&s);
        let r = check_commuting_projections(&p, &id, &tols).unwrap();
        assert!(r.passed && r.metric_value("nested") == Some(1.0));
    }

    #[test]
    fn mp_product_examples() {
        let s = space(vec![2], 1);
        let tols = Tolerances::default();
        let id = ModuleOperator::identity(&s);
        let r = check_mp_of_product_boundedness(&id, &id, &tols).unwrap();
        assert!(r.passed && (r.metric_value("mp_norm").unwrap() - 1.0).abs() < 1e-14);
        let zero = ModuleOperator::zero(&s, &s).unwrap();
        let r = check_mp_of_product_boundedness(&zero, &id, &tols).unwrap();
        assert!(r.passed && r.degenerate && r.metric_value("mp_norm") == Some(0.0));
    }

    #[test]
    fn penrose_and_range_tt() {
        let s = space(vec![1, 2], 2);
        let g = space(vec![1, 2], 3);
        let tols = Tolerances::default();
        let mut rng = sample::trial_rng(8, 8);
        for _ in 0..10 {
            let t = sample::random_operator(&mut rng, &s, &g).unwrap();
            assert!(check_penrose(&t, &tols).unwrap().passed);
            assert!(check_range_of_tt(&t, &tols).unwrap().passed);
        }
    }

    #[test]
    fn defect_and_angle() {
        let s = space(vec![1, 2], 2);
        let tols = Tolerances::default();
        let mut rng = sample::trial_rng(10, 0);
        for _ in 0..10 {
            let p = sample::random_projection(&mut rng, &s, &[1, 2]).unwrap();
            let q = sample::random_projection(&mut rng, &s, &[1, 1]).unwrap();
            let r = check_defect(&p, &q, &tols).unwrap();
            assert!(r.passed, "{r:?}");
            let t = sample::random_nonzero_operator(&mut rng, &s, &s).unwrap();
            let u = sample::random_nonzero_operator(&mut rng, &s, &s).unwrap();
            let r = check_angle_identity(&t, &u, &tols).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn tolerance_overrides() {
        let mut t = Tolerances::default();
        t.set("range", 1e-6).unwrap();
        t.set("rank", 1e-8).unwrap();
        assert_eq!((t.range, t.rank), (1e-6, Some(1e-8)));
        assert!(t.set("nope", 1.0).is_err());
        assert!(t.set("range", -1.0).is_err());
    }
}
