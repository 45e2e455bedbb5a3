//! JSON file formats for algebras and modules.
//!
//! Algebra: `{ "p": 2, "dim": n, "structure": [[[c_ij^k; n]; n]; n], "unit": [..] }`.
//! Module: `{ "algebra": <path or inline algebra>, "dim": d, "action": [[row; d]; n] }`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::Mat;

use super::algebra::Algebra;
use super::module::Module;

fn field<'a>(obj: &'a Map<String, Value>, path: &str, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(format!("{path}.{name}"), "missing field"))
}

fn as_uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
    let a = v
        .as_array()
        .ok_or_else(|| Error::parse(path, "expected an array"))?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(Error::parse(path, format!("expected {n} entries, found {}", a.len())));
        }
    }
    Ok(a)
}

fn scalar(v: &Value, path: &str, p: u32) -> Result<u32> {
    let x = v
        .as_i64()
        .ok_or_else(|| Error::parse(path, "expected an integer"))?;
    Ok(crate::linalg::reduce(p, x))
}

pub fn algebra_from_value(v: &Value, root: &str) -> Result<Arc<Algebra>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(root, "expected an object"))?;
    let p = as_uint(field(obj, root, "p")?, &format!("{root}.p"))?;
    let p = u32::try_from(p).map_err(|_| Error::parse(format!("{root}.p"), "prime too large"))?;
    if !crate::linalg::is_prime(p) {
        return Err(Error::parse(format!("{root}.p"), format!("{p} is not prime")));
    }
    let dim = as_uint(field(obj, root, "dim")?, &format!("{root}.dim"))? as usize;
    let sp = format!("{root}.structure");
    let s = as_array(field(obj, root, "structure")?, &sp, Some(dim))?;
    let mut structure = Vec::with_capacity(dim * dim * dim);
    for (i, si) in s.iter().enumerate() {
        let pi = format!("{sp}[{i}]");
        for (j, sij) in as_array(si, &pi, Some(dim))?.iter().enumerate() {
            let pij = format!("{pi}[{j}]");
            for (k, c) in as_array(sij, &pij, Some(dim))?.iter().enumerate() {
                structure.push(scalar(c, &format!("{pij}[{k}]"), p)?);
            }
        }
    }
    let up = format!("{root}.unit");
    let unit = as_array(field(obj, root, "unit")?, &up, Some(dim))?
        .iter()
        .enumerate()
        .map(|(k, c)| scalar(c, &format!("{up}[{k}]"), p))
        .collect::<Result<Vec<u32>>>()?;
    let name = obj
        .get("name")
        .and_then(|n| n.as_str())
        .unwrap_or("file")
        .to_string();
    Algebra::new(p, dim, structure, unit, &name).map_err(|e| match e {
        Error::InvalidAlgebra(msg) => Error::parse(root, msg),
        other => other,
    })
}

pub fn algebra_to_value(alg: &Algebra) -> Value {
    let n = alg.dim();
    let s = alg.structure_constants();
    let structure: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| s[(i * n + j) * n..(i * n + j + 1) * n].to_vec())
                .collect()
        })
        .collect();
    json!({
        "p": alg.prime(),
        "dim": n,
        "structure": structure,
        "unit": alg.unit(),
    })
}

pub fn parse_algebra(text: &str) -> Result<Arc<Algebra>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    algebra_from_value(&v, "$")
}

pub fn read_algebra(path: &Path) -> Result<Arc<Algebra>> {
    let text = std::fs::read_to_string(path)?;
    parse_algebra(&text)
}

pub fn algebra_to_json(alg: &Algebra) -> String {
    serde_json::to_string_pretty(&algebra_to_value(alg)).expect("serializable")
}

/// Parse a module; a string `algebra` field is resolved relative to `base`.
pub fn module_from_value(v: &Value, base: Option<&Path>, expected: Option<&Arc<Algebra>>) -> Result<Module> {
    let root = "$";
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(root, "expected an object"))?;
    let av = field(obj, root, "algebra")?;
    let alg = match av {
        Value::String(s) => {
            let mut path = PathBuf::from(s);
            if path.is_relative() {
                if let Some(b) = base {
                    path = b.join(path);
                }
            }
            read_algebra(&path)?
        }
        other => algebra_from_value(other, "$.algebra")?,
    };
    let alg = match expected {
        Some(e) if **e == *alg => e.clone(),
        Some(_) => {
            return Err(Error::parse(
                "$.algebra",
                "module algebra differs from the selected algebra",
            ))
        }
        None => alg,
    };
    let p = alg.prime();
    let dim = as_uint(field(obj, root, "dim")?, "$.dim")? as usize;
    let acts = as_array(field(obj, root, "action")?, "$.action", Some(alg.dim()))?;
    let mut action = Vec::with_capacity(alg.dim());
    for (i, a) in acts.iter().enumerate() {
        let pa = format!("$.action[{i}]");
        let rows = as_array(a, &pa, Some(dim))?;
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.iter().enumerate() {
            let pr = format!("{pa}[{r}]");
            for (c, x) in as_array(row, &pr, Some(dim))?.iter().enumerate() {
                data.push(scalar(x, &format!("{pr}[{c}]"), p)?);
            }
        }
        action.push(Mat::from_data(p, dim, dim, data));
    }
    Module::new(alg, dim, action).map_err(|e| match e {
        Error::InvalidModule(msg) => Error::parse("$.action", msg),
        other => other,
    })
}

pub fn module_to_value(m: &Module) -> Value {
    let action: Vec<Vec<Vec<u32>>> = m.actions().iter().map(|a| a.row_vecs()).collect();
    json!({
        "algebra": algebra_to_value(m.algebra()),
        "dim": m.dim(),
        "action": action,
    })
}

pub fn parse_module(text: &str, base: Option<&Path>, expected: Option<&Arc<Algebra>>) -> Result<Module> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    module_from_value(&v, base, expected)
}

pub fn read_module(path: &Path, expected: Option<&Arc<Algebra>>) -> Result<Module> {
    let text = std::fs::read_to_string(path)?;
    parse_module(&text, path.parent(), expected)
}

pub fn module_to_json(m: &Module) -> String {
    serde_json::to_string_pretty(&module_to_value(m)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::{path_a2, truncated_poly};
    use crate::algcore::structure::indec_injectives;

    #[test]
    fn algebra_round_trip_is_bit_exact() {
        let a = path_a2(3).unwrap();
        let text = algebra_to_json(&a);
        let b = parse_algebra(&text).unwrap();
        assert_eq!(*a, *b);
        assert_eq!(algebra_to_json(&b), text);
    }

    #[test]
    fn module_round_trip_is_bit_exact() {
        let a = path_a2(2).unwrap();
        let m = indec_injectives(&a).unwrap().remove(1);
        let text = module_to_json(&m);
        let n = parse_module(&text, None, Some(&a)).unwrap();
        assert_eq!(m, n);
        assert_eq!(module_to_json(&n), text);
    }

    #[test]
    fn errors_name_the_field() {
        let a = truncated_poly(2, 2).unwrap();
        let mut v = algebra_to_value(&a);
        v["structure"][1][0] = json!([0]);
        let err = algebra_from_value(&v, "$").unwrap_err().to_string();
        assert!(err.contains("$.structure[1][0]"), "{err}");
        let mut v = algebra_to_value(&a);
        v["p"] = json!(4);
        assert!(algebra_from_value(&v, "$").unwrap_err().to_string().contains("$.p"));
        let err = parse_algebra("{").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
