use std::path::PathBuf;

use hilmod::cstar::BlockAlgebra;
use hilmod::verifier::Tolerances;

use crate::suites::Suite;
use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Everything that determines a run's output. Two runs with equal configs
/// produce byte-identical reports; `threads` only changes wall time.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub master_seed: u64,
    pub algebra_dims: Vec<usize>,
    /// Fixed module ranks; `None` draws each from {1, 2, 3} per trial.
    pub rank_k: Option<usize>,
    pub rank_m: Option<usize>,
    pub trials: u64,
    pub tolerances: Tolerances,
    pub suite: Suite,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Worker threads for trial execution; `None` uses rayon's default pool.
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            master_seed: 0,
            algebra_dims: vec![1],
            rank_k: None,
            rank_m: None,
            trials: 100,
            tolerances: Tolerances::default(),
            suite: Suite::All,
            out: None,
            format: Format::Json,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<BlockAlgebra> {
        if self.trials == 0 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        for (name, r) in [("rank-k", self.rank_k), ("rank-m", self.rank_m)] {
            if r == Some(0) {
                return Err(CliError::Config(format!("{name} must be at least 1")));
            }
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        BlockAlgebra::new(self.algebra_dims.clone()).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Runs `f` on the configured thread pool.
    pub(crate) fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(f()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// Parses `1,2,3` into block dimensions.
pub fn parse_algebra(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("bad block dimension {part:?} in --algebra {text:?}")))
        })
        .collect()
}

/// Applies `KEY=VALUE` tolerance overrides.
pub fn apply_tolerance_overrides(tols: &mut Tolerances, overrides: &[String]) -> Result<()> {
    for item in overrides {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--tol expects KEY=VALUE, got {item:?}")))?;
        let value: f64 =
            value.trim().parse().map_err(|_| CliError::Config(format!("--tol {key}: bad number {value:?}")))?;
        tols.set(key.trim(), value).map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}
