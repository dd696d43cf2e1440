//! Seeded verification suites.
//!
//! Trial `i` of every check draws from the ChaCha20 stream `(seed, i)`, so a
//! trial's instance depends only on the master seed, the algebra and the
//! trial index. Trials run on rayon and are collected in index order.

use hilmod::cstar::BlockAlgebra;
use hilmod::hmod::ModuleSpace;
use hilmod::modop::ModuleOperator;
use hilmod::sample::{self, TrialRng, RNG_ALGORITHM};
use hilmod::verifier::{self, Tolerances, VerdictReport, MODULE_CLASS};
use hilmod::C64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::{CliError, Result};

/// λ values drawn per Koliha trial.
pub const KOLIHA_LAMBDAS: usize = 10;
/// Radius of the disk the λ values are drawn from.
pub const KOLIHA_RADIUS: f64 = 2.0;
/// Failing trials kept verbatim in a report, per check.
const FAILURES_KEPT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Penrose,
    RangeTt,
    GinvTransfer,
    Koliha,
    Spectral,
    RangeSum,
    Defect,
    Angle,
    Theorem,
    Commuting,
    MpProduct,
    All,
}

impl Suite {
    pub const CHECKS: [Suite; 11] = [
        Suite::Penrose,
        Suite::RangeTt,
        Suite::GinvTransfer,
        Suite::Koliha,
        Suite::Spectral,
        Suite::RangeSum,
        Suite::Defect,
        Suite::Angle,
        Suite::Theorem,
        Suite::Commuting,
        Suite::MpProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Penrose => "penrose",
            Suite::RangeTt => "range-tt",
            Suite::GinvTransfer => "ginv-transfer",
            Suite::Koliha => "koliha",
            Suite::Spectral => "spectral",
            Suite::RangeSum => "range-sum",
            Suite::Defect => "defect",
            Suite::Angle => "angle",
            Suite::Theorem => "theorem",
            Suite::Commuting => "commuting",
            Suite::MpProduct => "mp-product",
            Suite::All => "all",
        }
    }

    pub fn parse(name: &str) -> Result<Suite> {
        Suite::CHECKS
            .into_iter()
            .chain([Suite::All])
            .find(|s| s.name() == name)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::CHECKS.iter().map(|s| s.name()).collect();
                CliError::Config(format!("unknown suite {name:?}; expected all or one of {}", names.join(", ")))
            })
    }

    pub fn checks(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CHECKS.to_vec(),
            s => vec![s],
        }
    }
}

fn draw_rank(rng: &mut TrialRng, fixed: Option<usize>) -> usize {
    fixed.unwrap_or_else(|| rng.random_range(1..=3))
}

fn projection_pair(rng: &mut TrialRng, space: &ModuleSpace) -> hilmod::Result<(ModuleOperator, ModuleOperator)> {
    let rp = sample::random_rank_profile(rng, space);
    let p = sample::random_projection(rng, space, &rp)?;
    let rq = sample::random_rank_profile(rng, space);
    let q = sample::random_projection(rng, space, &rq)?;
    Ok((p, q))
}

/// `s : A^k → A^m` and `t : A^m → A^k`, so `TS` is defined.
fn operator_pair(
    rng: &mut TrialRng,
    e: &ModuleSpace,
    f: &ModuleSpace,
    nonzero: bool,
) -> hilmod::Result<(ModuleOperator, ModuleOperator)> {
    if nonzero {
        let s = sample::random_nonzero_operator(rng, e, f)?;
        let t = sample::random_nonzero_operator(rng, f, e)?;
        Ok((t, s))
    } else {
        let s = sample::random_operator(rng, e, f)?;
        let t = sample::random_operator(rng, f, e)?;
        Ok((t, s))
    }
}

/// Draws the instance for trial `trial` of `check` and runs it.
pub fn run_trial(
    check: Suite,
    algebra: &BlockAlgebra,
    rank_k: Option<usize>,
    rank_m: Option<usize>,
    seed: u64,
    trial: u64,
    tols: &Tolerances,
) -> hilmod::Result<VerdictReport> {
    let mut rng = sample::trial_rng(seed, trial);
    let k = draw_rank(&mut rng, rank_k);
    let m = draw_rank(&mut rng, rank_m);
    let e = ModuleSpace::new(algebra.clone(), k)?;
    let f = ModuleSpace::new(algebra.clone(), m)?;
    let rng = &mut rng;
    let report = match check {
        Suite::Penrose => verifier::check_penrose(&sample::random_operator(rng, &e, &f)?, tols)?,
        Suite::RangeTt => verifier::check_range_of_tt(&sample::random_operator(rng, &e, &f)?, tols)?,
        Suite::GinvTransfer => {
            let (t, s) = operator_pair(rng, &e, &f, false)?;
            verifier::check_prop_generalized_inverse_transfer(&t, &s, tols)?
        }
        Suite::MpProduct => {
            let (t, s) = operator_pair(rng, &e, &f, false)?;
            verifier::check_mp_of_product_boundedness(&t, &s, tols)?
        }
        Suite::Theorem => {
            let (t, s) = operator_pair(rng, &e, &f, true)?;
            verifier::check_theorem_equivalences(&t, &s, tols)?
        }
        Suite::Angle => {
            let (t, s) = operator_pair(rng, &e, &f, true)?;
            verifier::check_angle_identity(&t, &s, tols)?
        }
        Suite::Koliha => {
            let (p, q) = projection_pair(rng, &e)?;
            let lambdas: Vec<C64> = (0..KOLIHA_LAMBDAS).map(|_| sample::random_lambda(rng, KOLIHA_RADIUS)).collect();
            verifier::check_koliha_identities(&p, &q, &lambdas, tols)?
        }
        Suite::Spectral => {
            let (p, q) = projection_pair(rng, &e)?;
            verifier::check_spectral_correspondence(&p, &q, tols)?
        }
        Suite::RangeSum => {
            let (p, q) = projection_pair(rng, &e)?;
            verifier::check_range_sum_identity(&p, &q, tols)?
        }
        Suite::Defect => {
            let (p, q) = projection_pair(rng, &e)?;
            verifier::check_defect(&p, &q, tols)?
        }
        Suite::Commuting => {
            // Generic pairs almost never commute; mix in commuting and
            // nested pairs so both outcomes are exercised.
            let (p, q) = match rng.random_range(0..4) {
                0 => sample::random_commuting_pair(rng, &e),
                1 => sample::random_nested_pair(rng, &e),
                _ => projection_pair(rng, &e)?,
            };
            verifier::check_commuting_projections(&p, &q, tols)?
        }
        Suite::All => return Err(hilmod::Error::InvalidInput("`all` is not a single check".into())),
    };
    Ok(report.with_seed(seed, trial))
}

/// One trial's outcome as kept in the report.
#[derive(Clone, Debug, Serialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub error: Option<String>,
    pub report: Option<VerdictReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub trials: u64,
    pub passed: u64,
    /// Non-degenerate trials that failed or raised an error.
    pub failed: u64,
    pub degenerate: u64,
    /// Degenerate trials whose residuals still exceeded tolerance.
    pub degenerate_failed: u64,
    pub max_residual: f64,
    pub failures: Vec<TrialFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub rng: &'static str,
    pub master_seed: u64,
    pub algebra: Vec<usize>,
    pub rank_k: Option<usize>,
    pub rank_m: Option<usize>,
    pub trials: u64,
    pub tolerances: Tolerances,
    pub finite_dim_shadow: bool,
    pub module_class: &'static str,
    pub checks: Vec<CheckSummary>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,trials,passed,failed,degenerate,degenerate_failed,max_residual\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.check, c.trials, c.passed, c.failed, c.degenerate, c.degenerate_failed, c.max_residual
            ));
        }
        out.push_str(&format!("# rng={} seed={} algebra={}\n", self.rng, self.master_seed, dims_label(&self.algebra)));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

pub(crate) fn dims_label(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join("-")
}

fn summarize(check: Suite, outcomes: Vec<(u64, hilmod::Result<VerdictReport>)>) -> CheckSummary {
    let mut summary = CheckSummary {
        check: check.name().to_string(),
        trials: outcomes.len() as u64,
        passed: 0,
        failed: 0,
        degenerate: 0,
        degenerate_failed: 0,
        max_residual: 0.0,
        failures: Vec::new(),
    };
    for (trial, outcome) in outcomes {
        match outcome {
            Ok(r) => {
                // NaN residuals count as failures and must show up here too.
                let worst = r.residuals.iter().map(|x| x.value).fold(0.0, |a: f64, b| if b.is_nan() { b } else { a.max(b) });
                if worst.is_nan() || worst > summary.max_residual {
                    summary.max_residual = worst;
                }
                if r.degenerate {
                    summary.degenerate += 1;
                }
                if r.passed {
                    summary.passed += 1;
                    continue;
                }
                if r.degenerate {
                    summary.degenerate_failed += 1;
                } else {
                    summary.failed += 1;
                }
                if summary.failures.len() < FAILURES_KEPT {
                    summary.failures.push(TrialFailure { trial, error: None, report: Some(r) });
                }
            }
            Err(e) => {
                summary.failed += 1;
                if summary.failures.len() < FAILURES_KEPT {
                    summary.failures.push(TrialFailure { trial, error: Some(e.to_string()), report: None });
                }
            }
        }
    }
    summary
}

/// Runs every check of the configured suite and builds the report.
pub fn run_verify(config: &RunConfig) -> Result<VerifyReport> {
    let algebra = config.validate()?;
    let checks = config.suite.checks();
    let summaries = config.in_pool(|| {
        checks
            .iter()
            .map(|&check| {
                let outcomes: Vec<_> = (0..config.trials)
                    .into_par_iter()
                    .map(|trial| {
                        let r = run_trial(
                            check,
                            &algebra,
                            config.rank_k,
                            config.rank_m,
                            config.master_seed,
                            trial,
                            &config.tolerances,
                        );
                        (trial, r)
                    })
                    .collect();
                summarize(check, outcomes)
            })
            .collect::<Vec<_>>()
    })?;
    let all_passed = summaries.iter().all(|s| s.failed == 0);
    Ok(VerifyReport {
        rng: RNG_ALGORITHM,
        master_seed: config.master_seed,
        algebra: config.algebra_dims.clone(),
        rank_k: config.rank_k,
        rank_m: config.rank_m,
        trials: config.trials,
        tolerances: config.tolerances.clone(),
        finite_dim_shadow: true,
        module_class: MODULE_CLASS,
        checks: summaries,
        all_passed,
    })
}
