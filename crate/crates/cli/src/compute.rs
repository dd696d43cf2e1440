//! One-shot computations on stored operators and submodules.

use std::path::PathBuf;

use hilmod::angles;
use hilmod::verifier::Tolerances;

use crate::files;
use crate::{CliError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Computation {
    /// `c₀(M, N)` of two submodule (or operator-range) files.
    Cosine(PathBuf, PathBuf),
    /// `γ(T)`.
    Gamma(PathBuf),
    /// `T†`, in the operator file format.
    MpInverse(PathBuf),
    /// `γ(PQ)² + ‖(1−P)QR‖² − 1` for two projection files.
    Defect(PathBuf, PathBuf),
}

impl Computation {
    pub fn parse(command: &str, inputs: &[PathBuf]) -> Result<Computation> {
        let want = |n: usize| -> Result<()> {
            if inputs.len() != n {
                return Err(CliError::Config(format!("compute {command} takes {n} input file(s), got {}", inputs.len())));
            }
            Ok(())
        };
        match command {
            "c0" => want(2).map(|_| Computation::Cosine(inputs[0].clone(), inputs[1].clone())),
            "gamma" => want(1).map(|_| Computation::Gamma(inputs[0].clone())),
            "mpinv" => want(1).map(|_| Computation::MpInverse(inputs[0].clone())),
            "defect" => want(2).map(|_| Computation::Defect(inputs[0].clone(), inputs[1].clone())),
            _ => Err(CliError::Config(format!("unknown computation {command:?}; expected c0, gamma, mpinv or defect"))),
        }
    }
}

/// Returns the text to print or write: a scalar followed by a newline, or
/// an operator file.
pub fn compute(what: &Computation, tols: &Tolerances) -> Result<String> {
    match what {
        Computation::Cosine(a, b) => {
            let m = files::read_submodule(a)?;
            let n = files::read_submodule(b)?;
            Ok(format!("{}\n", angles::dixmier_cosine(&m, &n)?.cosine))
        }
        Computation::Gamma(path) => {
            let t = files::read_operator(path)?;
            let gamma = match t.gamma(tols.rank) {
                Ok(g) => g.value,
                Err(hilmod::Error::ZeroOperator) => 0.0,
                Err(e) => return Err(e.into()),
            };
            Ok(format!("{gamma}\n"))
        }
        Computation::MpInverse(path) => Ok(files::operator_to_json(&files::read_operator(path)?.mp_inverse(tols.rank))),
        Computation::Defect(a, b) => {
            let p = files::read_operator(a)?;
            let q = files::read_operator(b)?;
            Ok(format!("{}\n", angles::inequality_defect(&p, &q, tols.rank)?.defect))
        }
    }
}
