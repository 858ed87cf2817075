use std::collections::BTreeMap;
use std::path::Path;

use mccool_core::sigma::{parse_rational, Character, CommutationGraph, Presentation};
use mccool_core::words::Alphabet;
use num_rational::BigRational;
use serde_json::Value;

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn rational(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| CliError::Input(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        other => Err(CliError::Input(format!("{other} is not an integer or \"p/q\" string"))),
    }
}

fn names(v: &Value, field: &str) -> Result<Vec<String>, CliError> {
    v[field]
        .as_array()
        .ok_or_else(|| CliError::Input(format!("missing array {field:?}")))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| CliError::Input(format!("{field:?} entries must be strings")))
        })
        .collect()
}

fn values_by_name(v: &Value, names: &[String]) -> Result<Vec<BigRational>, CliError> {
    let obj = v["values"]
        .as_object()
        .ok_or_else(|| CliError::Input("missing object \"values\"".into()))?;
    let mut out = vec![BigRational::from_integer(0.into()); names.len()];
    for (k, x) in obj {
        let i = names
            .iter()
            .position(|a| a == k)
            .ok_or_else(|| CliError::Input(format!("value for unknown name {k:?}")))?;
        out[i] = rational(x)?;
    }
    Ok(out)
}

pub fn character(path: &Path) -> Result<Character, CliError> {
    Character::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `{"vertices": [..], "edges": [[a, b], ..], "values": {name: value}}`;
/// missing values are zero.
pub fn graph(path: &Path) -> Result<(CommutationGraph, Vec<BigRational>), CliError> {
    let v = parse_json(path)?;
    let vs = names(&v, "vertices")?;
    let mut g = CommutationGraph::new(vs.clone());
    let index = |x: &Value| -> Result<usize, CliError> {
        let s = x
            .as_str()
            .ok_or_else(|| CliError::Input(format!("{x} is not a vertex name")))?;
        vs.iter()
            .position(|a| a == s)
            .ok_or_else(|| CliError::Input(format!("unknown vertex {s:?}")))
    };
    for e in v["edges"]
        .as_array()
        .ok_or_else(|| CliError::Input("missing array \"edges\"".into()))?
    {
        match e.as_array().map(Vec::as_slice) {
            Some([a, b]) => {
                let (a, b) = (index(a)?, index(b)?);
                if a == b {
                    return Err(CliError::Input(format!("loop at {}", vs[a])));
                }
                g.add_edge(a, b);
            }
            _ => return Err(CliError::Input(format!("edge {e} is not a pair"))),
        }
    }
    let values = values_by_name(&v, &vs)?;
    Ok((g, values))
}

pub struct QuotientInput {
    pub presentation: Presentation,
    pub r1: Vec<usize>,
    pub values: Vec<BigRational>,
    pub witness: BTreeMap<usize, usize>,
}

/// `{"generators": [..], "relators": ["a b a^-1 b^-1", ..], "r1": [0],
/// "values": {name: value}, "witness": {"1": name}}`.
pub fn presentation(path: &Path) -> Result<QuotientInput, CliError> {
    let v = parse_json(path)?;
    let gens = names(&v, "generators")?;
    let alphabet = Alphabet::new(gens.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let relators = names(&v, "relators")?
        .iter()
        .map(|r| alphabet.parse(r).map(|w| w.letters().to_vec()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let r1 = v["r1"]
        .as_array()
        .ok_or_else(|| CliError::Input("missing array \"r1\"".into()))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|k| k as usize)
                .ok_or_else(|| CliError::Input(format!("{x} is not a relator index")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut witness = BTreeMap::new();
    if let Some(w) = v["witness"].as_object() {
        for (k, g) in w {
            let r: usize = k
                .parse()
                .map_err(|_| CliError::Input(format!("bad relator index {k:?}")))?;
            let g = g
                .as_str()
                .and_then(|g| alphabet.index(g))
                .ok_or_else(|| CliError::Input(format!("witness {g} is not a generator")))?;
            witness.insert(r, g);
        }
    }
    let values = values_by_name(&v, &gens)?;
    Ok(QuotientInput {
        presentation: Presentation {
            generators: gens,
            relators,
        },
        r1,
        values,
        witness,
    })
}
