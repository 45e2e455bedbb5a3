//! Verification suites: each recomputes one family of identities on the
//! presets and reports every comparison it made.

use clap::ValueEnum;
use serde_json::{json, Value};

use stablecoh::algcore::{indec_injectives, indec_projectives, indecomposables, socle, Module};
use stablecoh::complete::{
    cext_d, cext_via_satellites, double_colimit, les_text, periodic_coresolution, satellite_grid, stable_complex_cohomology,
    stable_les, text_c, text_via_ext1, text_via_satellites, ColimitParams, ColimitResult, TextSide,
};
use stablecoh::resolve::{
    c_injective_dim, cosyzygy, d_projective_dim, les_relative, provider, syzygy, DimOutcome, ProviderKind, ShortExact,
    Side,
};
use stablecoh::stab::{five_term_sequence, mixed_satellite, satellite, satellite_literal, six_term_sequence, FunctorDescriptor};
use stablecoh::tate::{balance_check, TateBounds, Verdict};

use crate::commands::{dim_cell, JobError};
use crate::input::{parse_algebra_spec, AlgebraChoice};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ThmA,
    ThmB,
    #[value(name = "prop-4-4")]
    Prop44,
    Les,
    Appendix,
    Balance,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::ThmA => "thm-a",
            Suite::ThmB => "thm-b",
            Suite::Prop44 => "prop-4-4",
            Suite::Les => "les",
            Suite::Appendix => "appendix",
            Suite::Balance => "balance",
        }
    }

    fn default_algebras(self) -> &'static [&'static str] {
        match self {
            Suite::ThmA => &["trunc:2,2", "trunc:2,3"],
            Suite::ThmB => &["trunc:2,2", "trunc:2,3", "cyc:2,2", "a2:2"],
            Suite::Prop44 => &["trunc:2,2", "trunc:2,3", "a2:2"],
            Suite::Les => &["trunc:2,2", "trunc:2,3"],
            Suite::Appendix => &["trunc:2,3", "trunc:3,3", "a2:2"],
            Suite::Balance => &["trunc:2,2", "trunc:3,3", "a2:2"],
        }
    }
}

const DEGREES: std::ops::RangeInclusive<i64> = -3..=3;

type SuiteResult = Result<Report, JobError>;

pub fn run_suite(suite: Suite, only: Option<&AlgebraChoice>) -> SuiteResult {
    let algebras: Vec<AlgebraChoice> = match only {
        Some(a) => vec![a.clone()],
        None => suite
            .default_algebras()
            .iter()
            .map(|s| parse_algebra_spec(s).expect("preset parses"))
            .collect(),
    };
    let mut r = match suite {
        Suite::ThmA => thm_a(&algebras)?,
        Suite::ThmB => thm_b(&algebras)?,
        Suite::Prop44 => prop_4_4(&algebras)?,
        Suite::Les => les(&algebras)?,
        Suite::Appendix => appendix(&algebras)?,
        Suite::Balance => balance(&algebras)?,
    };
    let specs: Vec<&str> = algebras.iter().map(|a| a.spec.as_str()).collect();
    r.params.insert(0, ("algebras".into(), json!(specs)));
    r.params.insert(0, ("suite".into(), json!(suite.name())));
    let ok_col = r.columns.iter().position(|c| c == "ok").expect("suites have an ok column");
    let failures = r.rows.iter().filter(|row| row[ok_col] != json!(true)).count();
    r.summary("checks", r.rows.len()).summary("failures", failures);
    r.passed = Some(failures == 0);
    Ok(r)
}

fn label(i: usize, m: &Module) -> String {
    format!("X{i}[{}]", m.dim())
}

fn labelled(a: &AlgebraChoice) -> Result<Vec<(String, Module)>, JobError> {
    Ok(indecomposables(&a.alg)?
        .into_iter()
        .enumerate()
        .map(|(i, m)| (label(i, &m), m))
        .collect())
}

fn colim_dim(c: &ColimitResult) -> Value {
    json!(c.value_dim)
}

fn params() -> ColimitParams {
    ColimitParams::default()
}

/// The four routes to `Textⁿ(M, N)`: stable Hom colimit, Ext¹ colimit,
/// satellite colimit and the stable Hom complex of periodic coresolutions.
fn thm_a(algebras: &[AlgebraChoice]) -> SuiteResult {
    let mut r = Report::new(
        "verify",
        &["algebra", "M", "N", "n", "stable_hom", "ext1", "satellites", "hom_complex", "ok"],
    );
    for a in algebras {
        let c = provider(ProviderKind::Inj, &a.alg)?;
        let ms = labelled(a)?;
        let periodic: Vec<_> = ms
            .iter()
            .map(|(_, m)| periodic_coresolution(&*c, m, 8))
            .collect::<Result<_, _>>()?;
        for (i, (lm, m)) in ms.iter().enumerate() {
            for (j, (ln, n_mod)) in ms.iter().enumerate() {
                for n in DEGREES {
                    let x = text_c(&*c, m, n_mod, n, params())?;
                    let y = text_via_ext1(&*c, m, n_mod, n, params())?;
                    let z = text_via_satellites(&*c, m, n_mod, n, params())?;
                    let h = match (&periodic[i], &periodic[j]) {
                        (Some(pi), Some(pj)) => Some(stable_complex_cohomology(pi, pj, n)?.dim()),
                        _ => None,
                    };
                    let ok = x.is_stabilized()
                        && x.value_dim == y.value_dim
                        && x.value_dim == z.value_dim
                        && h.is_some()
                        && x.value_dim == h;
                    r.row(vec![
                        json!(a.spec),
                        json!(lm),
                        json!(ln),
                        json!(n),
                        colim_dim(&x),
                        colim_dim(&y),
                        colim_dim(&z),
                        json!(h),
                        json!(ok),
                    ]);
                }
            }
        }
    }
    Ok(r)
}

fn vanishes_everywhere(results: &[ColimitResult]) -> bool {
    results.iter().all(|c| c.value_dim == Some(0))
}

/// Finite relative dimension, total vanishing and vanishing of the degree-0
/// self group are equivalent; likewise on the projective side.
fn thm_b(algebras: &[AlgebraChoice]) -> SuiteResult {
    let mut r = Report::new("verify", &["algebra", "side", "X", "dim", "self_0", "vanishes", "ok"]);
    let bound = 4;
    for a in algebras {
        let c = provider(ProviderKind::Inj, &a.alg)?;
        let d = provider(ProviderKind::Prj, &a.alg)?;
        let ms = labelled(a)?;
        for (lx, x) in &ms {
            for side in ["c", "d"] {
                let (dim, self0) = if side == "c" {
                    (c_injective_dim(&*c, x, bound)?, text_c(&*c, x, x, 0, params())?)
                } else {
                    (d_projective_dim(&*d, x, bound)?, cext_d(&*d, x, x, 0, params())?)
                };
                let mut all = Vec::new();
                for (_, y) in &ms {
                    for n in DEGREES {
                        if side == "c" {
                            all.push(text_c(&*c, x, y, n, params())?);
                            all.push(text_c(&*c, y, x, n, params())?);
                        } else {
                            all.push(cext_d(&*d, x, y, n, params())?);
                            all.push(cext_d(&*d, y, x, n, params())?);
                        }
                    }
                }
                let vanishes = vanishes_everywhere(&all);
                let finite = matches!(dim, DimOutcome::Finite(_));
                let ok = self0.is_stabilized() && finite == vanishes && vanishes == (self0.value_dim == Some(0));
                r.row(vec![
                    json!(a.spec),
                    json!(side),
                    json!(lx),
                    dim_cell(dim),
                    colim_dim(&self0),
                    json!(vanishes),
                    json!(ok),
                ]);
            }
        }
    }
    Ok(r)
}

/// `… → bExtⁱ → Extⁱ → Textⁱ → bExtⁱ⁺¹ → …` on periodic coresolutions.
fn prop_4_4(algebras: &[AlgebraChoice]) -> SuiteResult {
    let mut r = Report::new("verify", &["algebra", "M", "N", "spots", "exact", "stabilized", "ok"]);
    for a in algebras {
        let c = provider(ProviderKind::Inj, &a.alg)?;
        let ms = labelled(a)?;
        let periodic: Vec<_> = ms
            .iter()
            .map(|(_, m)| periodic_coresolution(&*c, m, 8))
            .collect::<Result<_, _>>()?;
        for (i, (lm, _)) in ms.iter().enumerate() {
            for (j, (ln, _)) in ms.iter().enumerate() {
                let (Some(pi), Some(pj)) = (&periodic[i], &periodic[j]) else {
                    r.row(vec![json!(a.spec), json!(lm), json!(ln), Value::Null, json!(false), json!(false), json!(false)]);
                    continue;
                };
                let s = stable_les(pi, pj, -2, 2, 3)?;
                let (exact, stab) = (s.is_exact(), s.stabilized());
                r.row(vec![
                    json!(a.spec),
                    json!(lm),
                    json!(ln),
                    json!(s.report.spots.len()),
                    json!(exact),
                    json!(stab),
                    json!(exact && stab),
                ]);
            }
        }
    }
    Ok(r)
}

/// The split sequence of the first two indecomposables, and the socle
/// sequence of the regular module.
fn preset_sequences(a: &AlgebraChoice) -> Result<Vec<(String, ShortExact)>, JobError> {
    let ms = indecomposables(&a.alg)?;
    let mut out = Vec::new();
    if ms.len() >= 2 {
        out.push(("split(X0,X1)".to_string(), ShortExact::split(&ms[0], &ms[1])?));
    }
    out.push(("split(X0,X0)".to_string(), ShortExact::split(&ms[0], &ms[0])?));
    let reg = Module::regular(&a.alg);
    let (_, incl) = socle(&reg)?;
    out.push(("soc(A)->A".to_string(), ShortExact::from_mono(incl)));
    Ok(out)
}

fn les(algebras: &[AlgebraChoice]) -> SuiteResult {
    let mut r = Report::new("verify", &["algebra", "ses", "fixed", "sequence", "spots", "exact", "ok"]);
    for a in algebras {
        let c = provider(ProviderKind::Inj, &a.alg)?;
        let d = provider(ProviderKind::Prj, &a.alg)?;
        let ms = labelled(a)?;
        for (ls, ses) in preset_sequences(a)? {
            for (lf, f) in &ms {
                let mut push = |name: &str, spots: usize, exact: bool, extra: bool| {
                    r.row(vec![
                        json!(a.spec),
                        json!(ls),
                        json!(lf),
                        json!(name),
                        json!(spots),
                        json!(exact),
                        json!(exact && extra),
                    ]);
                };
                for (name, side) in [("text_a", TextSide::A), ("text_b", TextSide::B)] {
                    let t = les_text(&*c, &ses, f, side, -2, 2, params())?;
                    push(name, t.report.spots.len(), t.is_exact(), t.stabilized);
                }
                for (name, prov, side) in [
                    ("rel_c_first", &c, Side::First),
                    ("rel_c_second", &c, Side::Second),
                    ("rel_d_first", &d, Side::First),
                    ("rel_d_second", &d, Side::Second),
                ] {
                    let rep = les_relative(&**prov, &ses, f, side, 0, 3)?;
                    push(name, rep.spots.len(), rep.all_exact(), true);
                }
                for (name, prov) in [("six_term_c", &c), ("six_term_d", &d)] {
                    let rep = six_term_sequence(&**prov, &ses, f)?.report();
                    push(name, rep.spots.len(), rep.all_exact(), true);
                }
                for (name, desc, prov) in [
                    ("five_term_contra", FunctorDescriptor::ext_contra(f, 1), &c),
                    ("five_term_co", FunctorDescriptor::ext_co(f, 1), &d),
                ] {
                    let rep = five_term_sequence(&desc, &**prov, &ses)?.report();
                    push(name, rep.spots.len(), rep.all_exact(), true);
                }
            }
        }
    }
    Ok(r)
}

/// Dimension shift of satellites, commuting mixed satellites, the double
/// colimit on a bounded grid and anticommuting grid squares.
fn appendix(algebras: &[AlgebraChoice]) -> SuiteResult {
    let mut r = Report::new("verify", &["check", "algebra", "case", "left", "right", "ok"]);
    let push = |r: &mut Report, check: &str, a: &AlgebraChoice, case: String, l: Value, rt: Value, ok: bool| {
        r.row(vec![json!(check), json!(a.spec), json!(case), l, rt, json!(ok)]);
    };
    for a in algebras {
        let c = provider(ProviderKind::Inj, &a.alg)?;
        let d = provider(ProviderKind::Prj, &a.alg)?;
        let ms = labelled(a)?;
        for (lm, m) in &ms {
            for (ln, n_mod) in &ms {
                for deg in 0..3 {
                    for (var, desc, prov) in [
                        ("contra", FunctorDescriptor::ext_contra(n_mod, deg), &c),
                        ("co", FunctorDescriptor::ext_co(n_mod, deg), &d),
                    ] {
                        let shifted = if var == "contra" { cosyzygy(&**prov, m, 1)? } else { syzygy(&**prov, m, 1)? };
                        let lhs = satellite(&desc, &**prov, m, 3)?.dim();
                        let rhs = satellite(&desc, &**prov, &shifted, 2)?.dim();
                        let case = format!("{var},at={lm},anchor={ln},deg={deg},k=3");
                        push(&mut r, "shift", a, case.clone(), json!(lhs), json!(rhs), lhs == rhs);
                        let lit = satellite_literal(&desc, &**prov, m, 2)?;
                        let red = satellite(&desc, &**prov, m, 2)?.space;
                        push(&mut r, "literal", a, case.replace("k=3", "k=2"), json!(red.dim()), json!(lit.dim()), red == lit);
                    }
                }
                for deg in 0..=3 {
                    for i in 0..=2 {
                        for j in 0..=2 {
                            let x = mixed_satellite(&*c, &*d, m, n_mod, deg, i, j)?;
                            let case = format!("M={lm},N={ln},deg={deg},i={i},j={j}");
                            push(&mut r, "commute", a, case, json!(x.c_then_d.dim()), json!(x.d_then_c.dim()), x.agrees());
                        }
                    }
                }
                for n in -1..=1 {
                    let x = double_colimit(&*c, &*d, m, n_mod, n, 3, 1)?;
                    let t = text_c(&*c, m, n_mod, n, params())?;
                    let ok = x.agrees() && x.rows_first.value_dim == t.value_dim;
                    let case = format!("M={lm},N={ln},n={n},depth=3");
                    push(&mut r, "double_colimit", a, case, colim_dim(&x.rows_first), colim_dim(&x.columns_first), ok);
                }
                if a.alg.prime() == 3 {
                    let g = satellite_grid(&*c, &*d, m, n_mod, 0, 3)?;
                    for i in 0..3 {
                        for j in 0..3 {
                            let defect = g.square_defect(i, j);
                            let case = format!("M={lm},N={ln},i={i},j={j}");
                            let nonzero = !g.partial[i + 1][j].mul(&g.delta[i][j]).is_zero();
                            push(&mut r, "anticommute", a, case, json!(nonzero), json!(defect.rank()), defect.is_zero());
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

fn balance(algebras: &[AlgebraChoice]) -> SuiteResult {
    let mut r = Report::new(
        "verify",
        &["algebra", "M", "N", "n", "tate_c", "tate_d", "text_c", "cext_d", "ok"],
    );
    for a in algebras {
        let ms = labelled(a)?;
        for (lm, m) in &ms {
            for (ln, n_mod) in &ms {
                let rep = balance_check(m, n_mod, *DEGREES.start(), *DEGREES.end(), TateBounds::default(), params())?;
                if !rep.applicable {
                    let why = rep.reason.unwrap_or_default();
                    r.row(vec![json!(a.spec), json!(lm), json!(ln), Value::Null, Value::Null, Value::Null, json!(why), Value::Null, json!(false)]);
                    continue;
                }
                debug_assert_eq!(rep.gorenstein.equal_and_finite, Verdict::Yes);
                for row in rep.rows {
                    let ok = row.equal && row.text_c.is_some() && row.cext_d.is_some();
                    r.row(vec![
                        json!(a.spec),
                        json!(lm),
                        json!(ln),
                        json!(row.n),
                        json!(row.tate_c),
                        json!(row.tate_d),
                        json!(row.text_c),
                        json!(row.cext_d),
                        json!(ok),
                    ]);
                }
            }
        }
    }
    Ok(r)
}

/// Vanishing on injectives and projectives, used by the acceptance suite.
pub fn vanishing(a: &AlgebraChoice) -> Result<Vec<(String, bool)>, JobError> {
    let c = provider(ProviderKind::Inj, &a.alg)?;
    let d = provider(ProviderKind::Prj, &a.alg)?;
    let ms = labelled(a)?;
    let mut out = Vec::new();
    for (k, e) in indec_injectives(&a.alg)?.iter().enumerate() {
        let mut all = Vec::new();
        for (_, x) in &ms {
            for n in DEGREES {
                all.push(text_c(&*c, e, x, n, params())?);
                all.push(text_c(&*c, x, e, n, params())?);
            }
        }
        out.push((format!("{} text inj:{k}", a.spec), vanishes_everywhere(&all)));
    }
    for (k, p) in indec_projectives(&a.alg)?.iter().enumerate() {
        let mut all = Vec::new();
        for (_, x) in &ms {
            for n in DEGREES {
                all.push(cext_d(&*d, p, x, n, params())?);
                all.push(cext_via_satellites(&*d, x, p, n, params())?);
            }
        }
        out.push((format!("{} cext proj:{k}", a.spec), vanishes_everywhere(&all)));
    }
    Ok(out)
}
