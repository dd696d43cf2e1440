//! JSON file formats.
//!
//! Operator:
//! `{"algebra": {"blocks": [n₁, …]}, "domain_rank": k, "codomain_rank": m,
//!   "blocks": [{"re": [[…]], "im": [[…]]}, …]}`
//! with block `i` of shape `k·nᵢ × m·nᵢ`.
//!
//! Submodule: `{"algebra": …, "rank": k, "blocks": [{"re", "im"}, …]}` where
//! block `i` holds spanning rows of width `k·nᵢ` (any number of rows).
//!
//! Floats are written as the shortest decimal that parses back to the same
//! bits, so a write/read cycle is exact.

use std::path::Path;

use hilmod::cstar::BlockAlgebra;
use hilmod::hmod::{ModuleSpace, Submodule};
use hilmod::matkit::CMatrix;
use hilmod::modop::ModuleOperator;
use hilmod::C64;
use serde::{Deserialize, Serialize};

use crate::{io_error, CliError, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraSpec {
    blocks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockSpec {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorFile {
    algebra: AlgebraSpec,
    domain_rank: usize,
    codomain_rank: usize,
    blocks: Vec<BlockSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubmoduleFile {
    algebra: AlgebraSpec,
    rank: usize,
    blocks: Vec<BlockSpec>,
}

fn parse_error(origin: &str, message: impl Into<String>) -> CliError {
    CliError::Parse { path: origin.to_string(), message: message.into() }
}

fn block_spec(m: &CMatrix) -> BlockSpec {
    let part = |f: fn(&C64) -> f64| (0..m.rows()).map(|i| m.row(i).iter().map(f).collect()).collect();
    BlockSpec { re: part(|z| z.re), im: part(|z| z.im) }
}

/// Converts one block, checking every row against `cols` and, when given,
/// the row count against `rows`.
fn block_matrix(origin: &str, index: usize, spec: &BlockSpec, rows: Option<usize>, cols: usize) -> Result<CMatrix> {
    let field = |name: &str| format!("blocks[{index}].{name}");
    if spec.re.len() != spec.im.len() {
        return Err(parse_error(
            origin,
            format!("{} has {} rows but {} has {}", field("re"), spec.re.len(), field("im"), spec.im.len()),
        ));
    }
    if let Some(r) = rows {
        if spec.re.len() != r {
            return Err(parse_error(origin, format!("{} has {} rows, expected {r}", field("re"), spec.re.len())));
        }
    }
    let mut data = Vec::with_capacity(spec.re.len() * cols);
    for (row, (re, im)) in spec.re.iter().zip(&spec.im).enumerate() {
        for (name, values) in [("re", re), ("im", im)] {
            if values.len() != cols {
                return Err(parse_error(
                    origin,
                    format!("{}[{row}] has {} entries, expected {cols}", field(name), values.len()),
                ));
            }
        }
        data.extend(re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)));
    }
    CMatrix::from_vec(spec.re.len(), cols, data).map_err(|e| parse_error(origin, format!("{}: {e}", field("re"))))
}

fn parse_json<'a, T: Deserialize<'a>>(origin: &str, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_error(origin, e.to_string()))
}

fn algebra_of(origin: &str, spec: &AlgebraSpec) -> Result<BlockAlgebra> {
    BlockAlgebra::new(spec.blocks.clone()).map_err(|e| parse_error(origin, format!("algebra.blocks: {e}")))
}

fn space_of(origin: &str, algebra: &BlockAlgebra, rank: usize, field: &str) -> Result<ModuleSpace> {
    ModuleSpace::new(algebra.clone(), rank).map_err(|e| parse_error(origin, format!("{field}: {e}")))
}

fn check_block_count(origin: &str, algebra: &BlockAlgebra, got: usize) -> Result<()> {
    if got != algebra.num_blocks() {
        return Err(parse_error(origin, format!("blocks has {got} entries, expected {}", algebra.num_blocks())));
    }
    Ok(())
}

pub fn operator_to_json(op: &ModuleOperator) -> String {
    let file = OperatorFile {
        algebra: AlgebraSpec { blocks: op.domain().algebra().block_dims().to_vec() },
        domain_rank: op.domain().rank(),
        codomain_rank: op.codomain().rank(),
        blocks: op.blocks().iter().map(block_spec).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("operator serialization cannot fail");
    s.push('\n');
    s
}

/// Parses an operator; `origin` names the source in error messages.
pub fn operator_from_json(origin: &str, text: &str) -> Result<ModuleOperator> {
    let file: OperatorFile = parse_json(origin, text)?;
    let algebra = algebra_of(origin, &file.algebra)?;
    let domain = space_of(origin, &algebra, file.domain_rank, "domain_rank")?;
    let codomain = space_of(origin, &algebra, file.codomain_rank, "codomain_rank")?;
    check_block_count(origin, &algebra, file.blocks.len())?;
    let blocks = file
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| block_matrix(origin, i, b, Some(domain.block_width(i)), codomain.block_width(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuleOperator::new(domain, codomain, blocks)?)
}

pub fn submodule_to_json(m: &Submodule) -> String {
    let file = SubmoduleFile {
        algebra: AlgebraSpec { blocks: m.space().algebra().block_dims().to_vec() },
        rank: m.space().rank(),
        blocks: (0..m.space().algebra().num_blocks()).map(|i| block_spec(m.basis(i))).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("submodule serialization cannot fail");
    s.push('\n');
    s
}

/// Parses a submodule file, or an operator file standing for its range.
pub fn submodule_from_json(origin: &str, text: &str) -> Result<Submodule> {
    let value: serde_json::Value = parse_json(origin, text)?;
    if value.get("domain_rank").is_some() {
        return Ok(operator_from_json(origin, text)?.range(None));
    }
    let file: SubmoduleFile = parse_json(origin, text)?;
    let algebra = algebra_of(origin, &file.algebra)?;
    let space = space_of(origin, &algebra, file.rank, "rank")?;
    check_block_count(origin, &algebra, file.blocks.len())?;
    let rows = file
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| block_matrix(origin, i, b, None, space.block_width(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Submodule::from_block_rows(&space, &rows, None)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(io_error(path))
}

pub fn read_operator(path: &Path) -> Result<ModuleOperator> {
    operator_from_json(&path.display().to_string(), &read(path)?)
}

pub fn read_submodule(path: &Path) -> Result<Submodule> {
    submodule_from_json(&path.display().to_string(), &read(path)?)
}

pub fn write_operator(path: &Path, op: &ModuleOperator) -> Result<()> {
    std::fs::write(path, operator_to_json(op)).map_err(io_error(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_file(values: &[f64]) -> String {
        let n = values.len();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let r: Vec<String> = (0..n).map(|j| if i == j { values[i].to_string() } else { "0".into() }).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        let zeros = vec![format!("[{}]", vec!["0"; n].join(",")); n];
        format!(
            r#"{{"algebra":{{"blocks":[1]}},"domain_rank":{n},"codomain_rank":{n},"blocks":[{{"re":[{}],"im":[{}]}}]}}"#,
            rows.join(","),
            zeros.join(",")
        )
    }

    #[test]
    fn reads_a_diagonal_operator() {
        let op = operator_from_json("t.json", &diag_file(&[3.0, 0.1, 0.0])).unwrap();
        assert_eq!(op.block(0)[(1, 1)], C64::new(0.1, 0.0));
        assert_eq!(op.gamma(None).unwrap().value, 0.1);
    }

    #[test]
    fn errors_name_the_field() {
        let text = diag_file(&[1.0, 2.0]).replace("[1,0]", "[1,0,0]");
        let err = operator_from_json("t.json", &text).unwrap_err().to_string();
        assert!(err.contains("t.json") && err.contains("blocks[0].re[0]"), "{err}");
        let err = operator_from_json("t.json", "{\"algebra\": {\"blocks\": [1]},\n \"domain_rank\": 1}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = operator_from_json("t.json", &diag_file(&[1.0]).replace("\"blocks\":[1]", "\"blocks\":[1,1]"));
        assert!(err.unwrap_err().to_string().contains("expected 2"));
    }

    #[test]
    fn submodule_round_trip_and_operator_fallback() {
        let m = submodule_from_json(
            "m.json",
            r#"{"algebra":{"blocks":[1]},"rank":2,"blocks":[{"re":[[1,1]],"im":[[0,0]]}]}"#,
        )
        .unwrap();
        assert_eq!(m.block_dims(), vec![1]);
        let back = submodule_from_json("m.json", &submodule_to_json(&m)).unwrap();
        assert!(back.distance(&m).unwrap() < 1e-15);
        let r = submodule_from_json("t.json", &diag_file(&[1.0, 0.0])).unwrap();
        assert_eq!(r.block_dims(), vec![1]);
    }
}
