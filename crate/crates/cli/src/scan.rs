//! Empirical scan of `γ(PQ)² + ‖(1−P)QR‖² − 1` over random projection
//! pairs.

use hilmod::angles::{self, DefectResult};
use hilmod::cstar::BlockAlgebra;
use hilmod::hmod::{ModuleSpace, ModuleVector, Submodule};
use hilmod::matkit::CMatrix;
use hilmod::modop::ModuleOperator;
use hilmod::sample::{self, RNG_ALGORITHM};
use hilmod::verifier::Tolerances;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::suites::dims_label;
use crate::Result;

pub const CSV_HEADER: &str = "seed,block_dims,k,trial,gamma_pq,delta,defect,degenerate";
/// `|defect|` at or below this counts as equality in the summary.
pub const NEAR_EQUALITY: f64 = 1e-6;

/// One scanned pair. Degenerate rows (`PQ = 0`) have no `γ(PQ)` and no
/// defect.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub seed: u64,
    pub block_dims: Vec<usize>,
    pub k: usize,
    pub trial: u64,
    pub gamma_pq: Option<f64>,
    pub delta: f64,
    pub defect: Option<f64>,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub trials: u64,
    pub degenerate: u64,
    pub min_defect: Option<f64>,
    pub mean_defect: Option<f64>,
    pub max_defect: Option<f64>,
    pub near_equality: u64,
}

/// The hand-built pair over `C ⊕ C` on `A²`: block 1 holds two lines at
/// angle π/2, block 2 two lines at angle π/4.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub block_dims: Vec<usize>,
    pub k: usize,
    pub gamma_pq: f64,
    pub delta: f64,
    pub defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanOutput {
    pub rng: &'static str,
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
    pub witness: Option<Witness>,
}

fn line_pair_block(theta: f64) -> (CMatrix, CMatrix) {
    (CMatrix::from_real(1, 2, &[1.0, 0.0]), CMatrix::from_real(1, 2, &[theta.cos(), theta.sin()]))
}

/// `(P, Q)` for the canonical two-block witness.
pub fn witness_pair() -> (ModuleOperator, ModuleOperator) {
    let space = ModuleSpace::new(BlockAlgebra::new(vec![1, 1]).expect("valid dims"), 2).expect("valid rank");
    let (a1, b1) = line_pair_block(std::f64::consts::FRAC_PI_2);
    let (a2, b2) = line_pair_block(std::f64::consts::FRAC_PI_4);
    let span = |x: CMatrix, y: CMatrix| {
        let v = ModuleVector::new(space.clone(), vec![x, y]).expect("valid blocks");
        Submodule::span(&space, &[v], None).expect("same space").projection_onto()
    };
    (span(b1, b2), span(a1, a2))
}

pub fn witness(tols: &Tolerances) -> Result<Witness> {
    let (p, q) = witness_pair();
    let d = angles::inequality_defect(&p, &q, tols.rank)?;
    Ok(Witness { block_dims: vec![1, 1], k: 2, gamma_pq: d.gamma_pq, delta: d.delta, defect: d.defect })
}

fn scan_trial(config: &RunConfig, algebra: &BlockAlgebra, trial: u64) -> Result<ScanRecord> {
    let mut rng = sample::trial_rng(config.master_seed, trial);
    let k = config.rank_k.unwrap_or_else(|| rng.random_range(1..=3));
    let space = ModuleSpace::new(algebra.clone(), k)?;
    let rp = sample::random_rank_profile(&mut rng, &space);
    let p = sample::random_projection(&mut rng, &space, &rp)?;
    let rq = sample::random_rank_profile(&mut rng, &space);
    let q = sample::random_projection(&mut rng, &space, &rq)?;
    let base = ScanRecord {
        seed: config.master_seed,
        block_dims: algebra.block_dims().to_vec(),
        k,
        trial,
        gamma_pq: None,
        delta: 0.0,
        defect: None,
        degenerate: true,
    };
    match angles::inequality_defect(&p, &q, config.tolerances.rank) {
        Ok(DefectResult { gamma_pq, delta, defect, .. }) => {
            Ok(ScanRecord { gamma_pq: Some(gamma_pq), delta, defect: Some(defect), degenerate: false, ..base })
        }
        Err(hilmod::Error::ZeroProduct) => {
            let r = angles::r_projection(&p, &q, config.tolerances.rank)?;
            let delta = p.complement_from_identity()?.compose(&q)?.compose(&r)?.operator_norm();
            Ok(ScanRecord { delta, ..base })
        }
        Err(e) => Err(e.into()),
    }
}

fn summarize(records: &[ScanRecord]) -> ScanSummary {
    let defects: Vec<f64> = records.iter().filter_map(|r| r.defect).collect();
    let n = defects.len();
    ScanSummary {
        trials: records.len() as u64,
        degenerate: records.iter().filter(|r| r.degenerate).count() as u64,
        min_defect: defects.iter().copied().reduce(f64::min),
        mean_defect: (n > 0).then(|| defects.iter().sum::<f64>() / n as f64),
        max_defect: defects.iter().copied().reduce(f64::max),
        near_equality: defects.iter().filter(|d| d.abs() <= NEAR_EQUALITY).count() as u64,
    }
}

pub fn run_defect_scan(config: &RunConfig) -> Result<ScanOutput> {
    let algebra = config.validate()?;
    let records = config.in_pool(|| {
        (0..config.trials).into_par_iter().map(|t| scan_trial(config, &algebra, t)).collect::<Result<Vec<_>>>()
    })??;
    let witness = if algebra.block_dims() == [1, 1] { Some(witness(&config.tolerances)?) } else { None };
    let summary = summarize(&records);
    Ok(ScanOutput { rng: RNG_ALGORITHM, records, summary, witness })
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl ScanOutput {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.records.len() + 8));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.seed,
                dims_label(&r.block_dims),
                r.k,
                r.trial,
                opt(r.gamma_pq),
                r.delta,
                opt(r.defect),
                r.degenerate
            ));
        }
        let s = &self.summary;
        out.push_str(&format!("# rng={}\n", self.rng));
        out.push_str(&format!("# summary trials={} degenerate={}\n", s.trials, s.degenerate));
        out.push_str(&format!(
            "# summary defect_min={} defect_mean={} defect_max={}\n",
            opt(s.min_defect),
            opt(s.mean_defect),
            opt(s.max_defect)
        ));
        out.push_str(&format!("# summary near_equality(|defect|<={NEAR_EQUALITY:e})={}\n", s.near_equality));
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "# witness block_dims={} k={} gamma_pq={} delta={} defect={}\n",
                dims_label(&w.block_dims),
                w.k,
                w.gamma_pq,
                w.delta,
                w.defect
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scan serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}
