//! Preset and module specs, degree ranges and limits.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use stablecoh::algcore::io::{read_algebra, read_module};
use stablecoh::algcore::presets::{cyclic_group, path_a2, truncated_poly};
use stablecoh::algcore::{cokernel_of, indec_injectives, indec_projectives, simples, Algebra, Module, Morphism};
use stablecoh::Error;

pub const MAX_DIM: usize = 512;
pub const MAX_I_MAX: usize = 64;

/// An input problem, with the flag or field path it concerns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub msg: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, msg: impl Into<String>) -> InputError {
        InputError {
            field: field.into(),
            msg: msg.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.msg)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetKind {
    Trunc { n: usize },
    Cyc,
    A2,
    File,
}

#[derive(Clone, Debug)]
pub struct AlgebraChoice {
    pub spec: String,
    pub kind: PresetKind,
    pub alg: Arc<Algebra>,
}

fn from_core(field: &str, e: Error) -> InputError {
    match e {
        Error::Parse { path, msg } => InputError::new(format!("{field} {path}"), msg),
        other => InputError::new(field, other.to_string()),
    }
}

fn two_ints(field: &str, s: &str) -> Result<(u32, usize), InputError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(InputError::new(field, format!("expected two comma-separated integers, got '{s}'")));
    }
    let p = parts[0]
        .trim()
        .parse::<u32>()
        .map_err(|_| InputError::new(field, format!("invalid prime '{}'", parts[0])))?;
    let n = parts[1]
        .trim()
        .parse::<usize>()
        .map_err(|_| InputError::new(field, format!("invalid size '{}'", parts[1])))?;
    Ok((p, n))
}

fn check_prime(field: &str, p: u32) -> Result<(), InputError> {
    if stablecoh::linalg::is_prime(p) {
        Ok(())
    } else {
        Err(InputError::new(field, format!("invalid prime {p}")))
    }
}

/// `trunc:p,n | cyc:p,m | a2:p | file:path`.
pub fn parse_algebra_spec(spec: &str) -> Result<AlgebraChoice, InputError> {
    let field = "--algebra";
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| InputError::new(field, format!("unknown preset '{spec}'")))?;
    let (kind, alg) = match head {
        "trunc" => {
            let (p, n) = two_ints(field, rest)?;
            check_prime(field, p)?;
            if n == 0 || n > MAX_DIM {
                return Err(InputError::new(field, format!("truncation degree must be in 1..={MAX_DIM}")));
            }
            (PresetKind::Trunc { n }, truncated_poly(p, n).map_err(|e| from_core(field, e))?)
        }
        "cyc" => {
            let (p, m) = two_ints(field, rest)?;
            check_prime(field, p)?;
            if m == 0 || m > MAX_DIM {
                return Err(InputError::new(field, format!("group order must be in 1..={MAX_DIM}")));
            }
            (PresetKind::Cyc, cyclic_group(p, m).map_err(|e| from_core(field, e))?)
        }
        "a2" => {
            let p = rest
                .trim()
                .parse::<u32>()
                .map_err(|_| InputError::new(field, format!("invalid prime '{rest}'")))?;
            check_prime(field, p)?;
            (PresetKind::A2, path_a2(p).map_err(|e| from_core(field, e))?)
        }
        "file" => {
            let alg = read_algebra(Path::new(rest)).map_err(|e| from_core(&format!("{field} {rest}"), e))?;
            if alg.dim() > MAX_DIM {
                return Err(InputError::new(field, format!("algebra dimension {} exceeds {MAX_DIM}", alg.dim())));
            }
            (PresetKind::File, alg)
        }
        _ => return Err(InputError::new(field, format!("unknown preset '{head}'"))),
    };
    Ok(AlgebraChoice {
        spec: spec.to_string(),
        kind,
        alg,
    })
}

fn index(field: &str, what: &str, s: Option<&str>, avail: usize) -> Result<usize, InputError> {
    let i = match s {
        None => 0,
        Some(t) => t
            .parse::<usize>()
            .map_err(|_| InputError::new(field, format!("invalid index '{t}'")))?,
    };
    if i >= avail {
        return Err(InputError::new(field, format!("{what}:{i} out of range ({avail} available)")));
    }
    Ok(i)
}

/// `simple | simple:i | regular | proj:i | inj:i | quot:k | file:path`; `field` names the flag.
pub fn parse_module_spec(field: &str, spec: &str, a: &AlgebraChoice) -> Result<Module, InputError> {
    let (head, arg) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    let core = |e: Error| from_core(field, e);
    let m = match head {
        "simple" => {
            let mut s = simples(&a.alg).map_err(core)?;
            let i = index(field, "simple", arg, s.len())?;
            s.swap_remove(i)
        }
        "proj" => {
            let mut s = indec_projectives(&a.alg).map_err(core)?;
            let i = index(field, "proj", arg, s.len())?;
            s.swap_remove(i)
        }
        "inj" => {
            let mut s = indec_injectives(&a.alg).map_err(core)?;
            let i = index(field, "inj", arg, s.len())?;
            s.swap_remove(i)
        }
        "regular" if arg.is_none() => Module::regular(&a.alg),
        "quot" => {
            let PresetKind::Trunc { n } = a.kind else {
                return Err(InputError::new(field, "quot:k is only defined for trunc presets"));
            };
            let k = arg
                .ok_or_else(|| InputError::new(field, "quot needs k"))?
                .parse::<usize>()
                .map_err(|_| InputError::new(field, format!("invalid k in '{spec}'")))?;
            if k == 0 || k > n {
                return Err(InputError::new(field, format!("quot:k needs 1 ≤ k ≤ {n}")));
            }
            quotient_module(&a.alg, k, n)
        }
        "file" => {
            let path = arg.unwrap_or_default();
            let m = read_module(Path::new(path), Some(&a.alg)).map_err(|e| from_core(&format!("{field} {path}"), e))?;
            if m.dim() > MAX_DIM {
                return Err(InputError::new(field, format!("module dimension {} exceeds {MAX_DIM}", m.dim())));
            }
            m
        }
        _ => return Err(InputError::new(field, format!("unknown module spec '{spec}'"))),
    };
    Ok(m)
}

/// `𝔽ₚ[x]/(xᵏ)` as the cokernel of right multiplication by `xᵏ` on the regular module.
fn quotient_module(alg: &Arc<Algebra>, k: usize, n: usize) -> Module {
    let a = Module::regular(alg);
    if k == n {
        return a;
    }
    let xk = alg.right_mult(&alg.basis_elem(k));
    let f = Morphism::new(a.clone(), a, xk).expect("right multiplication is a module map");
    cokernel_of(&f).0
}

/// `a..b` with `a ≤ b`, both inclusive.
pub fn parse_range(field: &str, s: &str) -> Result<(i64, i64), InputError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| InputError::new(field, format!("expected a..b, got '{s}'")))?;
    let a = a
        .trim()
        .parse::<i64>()
        .map_err(|_| InputError::new(field, format!("invalid start '{a}'")))?;
    let b = b
        .trim()
        .parse::<i64>()
        .map_err(|_| InputError::new(field, format!("invalid end '{b}'")))?;
    if a > b {
        return Err(InputError::new(field, format!("empty range {a}..{b}")));
    }
    if a < -64 || b > 64 {
        return Err(InputError::new(field, "degrees are limited to -64..64"));
    }
    Ok((a, b))
}

/// As `parse_range`, for groups that only exist in degrees `i ≥ 0`.
pub fn parse_nonneg_range(field: &str, s: &str) -> Result<(usize, usize), InputError> {
    let (a, b) = parse_range(field, s)?;
    if a < 0 {
        return Err(InputError::new(
            field,
            "relative Ext groups are defined for i ≥ 0 only; use text, cext or tate for negative degrees",
        ));
    }
    Ok((a as usize, b as usize))
}

pub fn check_i_max(i_max: usize, window: usize) -> Result<stablecoh::complete::ColimitParams, InputError> {
    if i_max > MAX_I_MAX {
        return Err(InputError::new("--i-max", format!("must be at most {MAX_I_MAX}")));
    }
    stablecoh::complete::ColimitParams::new(i_max, window).map_err(|e| from_core("--window", e))
}

pub fn check_module(field: &str, m: &Module) -> Result<(), InputError> {
    if m.dim() > MAX_DIM {
        return Err(InputError::new(field, format!("module dimension {} exceeds {MAX_DIM}", m.dim())));
    }
    Ok(())
}
