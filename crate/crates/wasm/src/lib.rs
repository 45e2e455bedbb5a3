//! Three operations for the static demo page: a Text table, stable Hom in
//! both flavours, and the Gorenstein invariants with Tate cohomology.
//! Every entry point returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use stablecoh::algcore::presets::{cyclic_group, path_a2, truncated_poly};
use stablecoh::algcore::{indec_injectives, indec_projectives, simples, Algebra, Module};
use stablecoh::complete::{text_c, ColimitParams};
use stablecoh::resolve::{provider, ProviderKind};
use stablecoh::stab::stable_hom;
use stablecoh::tate::{gorenstein_invariants, tate_cohomology_c, tate_coresolution, TateBounds, TateOutcome};

type Alg = std::sync::Arc<Algebra>;

fn ints(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("algebra: bad number '{t}'")))
        .collect()
}

/// `trunc:p,n | cyc:p,m | a2:p`, small sizes only.
pub fn algebra(spec: &str) -> Result<Alg, String> {
    let (head, rest) = spec.split_once(':').ok_or(format!("algebra: unknown preset '{spec}'"))?;
    let v = ints(rest)?;
    let alg = match (head, v.as_slice()) {
        ("trunc", [p, n]) if *n <= 8 => truncated_poly(*p as u32, *n),
        ("cyc", [p, m]) if *m <= 8 => cyclic_group(*p as u32, *m),
        ("a2", [p]) => path_a2(*p as u32),
        _ => return Err(format!("algebra: unsupported preset '{spec}'")),
    };
    alg.map_err(|e| format!("algebra: {e}"))
}

/// `simple[:i] | regular | proj:i | inj:i`.
pub fn module(field: &str, spec: &str, alg: &Alg) -> Result<Module, String> {
    let (head, idx) = match spec.split_once(':') {
        Some((h, i)) => (h, i.parse::<usize>().map_err(|_| format!("{field}: bad index in '{spec}'"))?),
        None => (spec, 0),
    };
    let list = match head {
        "regular" => return Ok(Module::regular(alg)),
        "simple" => simples(alg),
        "proj" => indec_projectives(alg),
        "inj" => indec_injectives(alg),
        _ => return Err(format!("{field}: unknown module '{spec}'")),
    }
    .map_err(|e| format!("{field}: {e}"))?;
    list.get(idx).cloned().ok_or(format!("{field}: index {idx} out of range"))
}

fn text(v: Value) -> String {
    v.to_string()
}

pub fn text_table_json(alg: &str, m: &str, n: &str, from: i32, to: i32) -> Result<String, String> {
    if from > to || from < -8 || to > 8 {
        return Err("range: need -8 ≤ from ≤ to ≤ 8".into());
    }
    let a = algebra(alg)?;
    let (m, n) = (module("M", m, &a)?, module("N", n, &a)?);
    let c = provider(ProviderKind::Inj, &a).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for deg in from..=to {
        let r = text_c(&*c, &m, &n, deg as i64, ColimitParams::default()).map_err(|e| e.to_string())?;
        rows.push(json!({"n": deg, "dim": r.value_dim, "stabilized": r.is_stabilized()}));
    }
    Ok(text(json!({ "rows": rows })))
}

pub fn stable_hom_json(alg: &str, m: &str, n: &str) -> Result<String, String> {
    let a = algebra(alg)?;
    let (m, n) = (module("M", m, &a)?, module("N", n, &a)?);
    let mut out = json!({});
    for (key, kind) in [("modulo_injectives", ProviderKind::Inj), ("modulo_projectives", ProviderKind::Prj)] {
        let p = provider(kind, &a).map_err(|e| e.to_string())?;
        let s = stable_hom(&*p, &m, &n).map_err(|e| e.to_string())?;
        out[key] = json!({"hom": s.total.dim(), "stable": s.dim()});
    }
    Ok(text(out))
}

pub fn gorenstein_json(alg: &str, n: &str, bound: u32) -> Result<String, String> {
    let a = algebra(alg)?;
    let g = gorenstein_invariants(&a, bound.min(8) as usize).map_err(|e| e.to_string())?;
    let nm = module("N", n, &a)?;
    let c = provider(ProviderKind::Inj, &a).map_err(|e| e.to_string())?;
    let d = provider(ProviderKind::Prj, &a).map_err(|e| e.to_string())?;
    let bounds = TateBounds { gorenstein: bound.min(8) as usize, search: 6 };
    let tate = match tate_coresolution(&*c, &*d, &nm, bounds).map_err(|e| e.to_string())? {
        TateOutcome::Found(t) => {
            let k = simples(&a).map_err(|e| e.to_string())?;
            let rows: Result<Vec<Value>, String> = k
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let dims: Result<Vec<usize>, _> = (-3..=3).map(|deg| tate_cohomology_c(s, deg, &t)).collect();
                    Ok(json!({"M": format!("simple:{i}"), "dims": dims.map_err(|e| e.to_string())?}))
                })
                .collect();
            json!({"degrees": [-3, 3], "rows": rows?})
        }
        TateOutcome::Absent(why) => json!({"absent": why}),
    };
    Ok(text(json!({
        "d_pd_of_injectives": g.d_pd_of_c.to_string(),
        "c_id_of_projectives": g.c_id_of_d.to_string(),
        "equal_and_finite": g.equal_and_finite,
        "tate": tate,
    })))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn text_table(alg: &str, m: &str, n: &str, from: i32, to: i32) -> Result<String, JsError> {
    js(text_table_json(alg, m, n, from, to))
}

#[wasm_bindgen]
pub fn stable_homs(alg: &str, m: &str, n: &str) -> Result<String, JsError> {
    js(stable_hom_json(alg, m, n))
}

#[wasm_bindgen]
pub fn gorenstein(alg: &str, n: &str, bound: u32) -> Result<String, JsError> {
    js(gorenstein_json(alg, n, bound))
}
