//! Argument definitions and the single-job runner.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stablecoh::algcore::{hom_space, Module};
use stablecoh::complete::{cext_d, text_c, ColimitParams, ColimitResult};
use stablecoh::resolve::{
    c_injective_dim, d_projective_dim, provider, relative_ext_c, relative_ext_d, Coresolution, DimOutcome,
    ProviderKind, Resolution, SubcategoryProvider,
};
use stablecoh::stab::{satellite, stable_hom, stable_hom_via_cokernel, FunctorDescriptor};
use stablecoh::tate::{
    balance_check, gorenstein_invariants, tate_coresolution, tate_cohomology_c, tate_cohomology_d, tate_resolution,
    TateBounds, TateOutcome,
};

use crate::input::{
    check_i_max, check_module, parse_algebra_spec, parse_module_spec, parse_nonneg_range, parse_range, AlgebraChoice,
    InputError,
};
use crate::report::Report;
use crate::verify::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(name = "stablecoh", version, about = "Stable Hom, complete and Tate cohomology over finite-dimensional algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
    /// trunc:p,n | cyc:p,m | a2:p | file:path
    #[arg(long)]
    pub algebra: String,
    /// simple[:i] | regular | proj:i | inj:i | quot:k | file:path
    #[arg(long = "M", default_value = "simple")]
    pub m: String,
    #[arg(long = "N", default_value = "simple")]
    pub n: String,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Colim {
    #[arg(long, default_value_t = 12)]
    pub i_max: usize,
    #[arg(long, default_value_t = 3)]
    pub window: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Bounds {
    /// Bound for the Gorenstein invariants.
    #[arg(long, default_value_t = 4)]
    pub bound: usize,
    /// Bound for the periodicity search.
    #[arg(long, default_value_t = 6)]
    pub search: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DimSide {
    CId,
    DPd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VarianceArg {
    Contra,
    Co,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// dim Hom(M, N)
    Hom(Pair),
    /// Relative Ext over a degree range (i ≥ 0)
    Ext {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "c")]
        side: SideArg,
        #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
        range: String,
    },
    /// Stable Hom modulo maps through injectives (c) or projectives (d)
    StableHom {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "c")]
        side: SideArg,
    },
    /// Proper coresolution (c) or resolution (d) of M
    Resolve {
        #[arg(long)]
        algebra: String,
        #[arg(long = "M", default_value = "simple")]
        m: String,
        #[arg(long, value_enum, default_value = "c")]
        side: SideArg,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// Bounded injective (c-id, of N) or projective (d-pd, of M) dimension
    Dim {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum)]
        side: DimSide,
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long = "N")]
        n: Option<String>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Complete cohomology on the injective side
    Text {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        range: String,
        #[command(flatten)]
        colim: Colim,
    },
    /// Complete cohomology on the projective side
    Cext {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        range: String,
        #[command(flatten)]
        colim: Colim,
    },
    /// Tate cohomology from both Tate constructions
    Tate {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        range: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Left satellites of Ext^degree(−, N) at M (contra) or Ext^degree(M, −) at N (co)
    Satellite {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "contra")]
        variance: VarianceArg,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
        orders: String,
    },
    /// Gorenstein invariants of the algebra
    Gorenstein {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Compare Tate and complete cohomology on both sides
    Balance {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        range: String,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        colim: Colim,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Restrict the suite to one algebra.
        #[arg(long)]
        algebra: Option<String>,
    },
}

/// Why a job did not produce a report.
#[derive(Debug)]
pub enum JobError {
    Input(InputError),
    Compute(stablecoh::Error),
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JobError::Input(e) => write!(f, "{e}"),
            JobError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<InputError> for JobError {
    fn from(e: InputError) -> Self {
        JobError::Input(e)
    }
}

impl From<stablecoh::Error> for JobError {
    fn from(e: stablecoh::Error) -> Self {
        JobError::Compute(e)
    }
}

type JobResult = Result<Report, JobError>;

struct Loaded {
    a: AlgebraChoice,
    m: Module,
    n: Module,
}

fn load(pair: &Pair) -> Result<Loaded, InputError> {
    let a = parse_algebra_spec(&pair.algebra)?;
    let m = parse_module_spec("--M", &pair.m, &a)?;
    let n = parse_module_spec("--N", &pair.n, &a)?;
    check_module("--M", &m)?;
    check_module("--N", &n)?;
    Ok(Loaded { a, m, n })
}

fn pair_params(r: &mut Report, pair: &Pair) {
    r.param("algebra", pair.algebra.as_str())
        .param("M", pair.m.as_str())
        .param("N", pair.n.as_str());
}

fn colim_cells(c: &ColimitResult) -> Vec<Value> {
    vec![
        json!(c.value_dim),
        json!(if c.is_stabilized() { "stabilized" } else { "not_stabilized" }),
        json!(c.stage),
    ]
}

fn overall_status(r: &mut Report, all: bool) {
    r.summary("status", if all { "stabilized" } else { "not_stabilized" });
}

fn side_provider(a: &AlgebraChoice, side: SideArg) -> Result<std::sync::Arc<dyn SubcategoryProvider>, JobError> {
    let kind = match side {
        SideArg::C => ProviderKind::Inj,
        SideArg::D => ProviderKind::Prj,
    };
    Ok(provider(kind, &a.alg)?)
}

fn side_name(side: SideArg) -> &'static str {
    match side {
        SideArg::C => "c",
        SideArg::D => "d",
    }
}

pub fn dim_cell(d: DimOutcome) -> Value {
    match d {
        DimOutcome::Finite(x) => json!(x),
        DimOutcome::Exceeds(b) => json!(format!(">{b}")),
        DimOutcome::Undetermined(l) => json!(format!("undetermined@{l}")),
    }
}

pub fn run(cmd: &Command) -> JobResult {
    match cmd {
        Command::Hom(pair) => {
            let l = load(pair)?;
            let mut r = Report::new("hom", &["dim"]);
            pair_params(&mut r, pair);
            r.row(vec![json!(hom_space(&l.m, &l.n)?.dim())]);
            Ok(r)
        }
        Command::Ext { pair, side, range } => {
            let l = load(pair)?;
            let (a, b) = parse_nonneg_range("--range", range)?;
            let prov = side_provider(&l.a, *side)?;
            let mut r = Report::new("ext", &["i", "dim"]);
            pair_params(&mut r, pair);
            r.param("side", side_name(*side)).param("range", range.as_str());
            for i in a..=b {
                let d = match side {
                    SideArg::C => relative_ext_c(&*prov, &l.m, &l.n, i)?.dim(),
                    SideArg::D => relative_ext_d(&*prov, &l.m, &l.n, i)?.dim(),
                };
                r.row(vec![json!(i), json!(d)]);
            }
            Ok(r)
        }
        Command::StableHom { pair, side } => {
            let l = load(pair)?;
            let prov = side_provider(&l.a, *side)?;
            let st = stable_hom(&*prov, &l.m, &l.n)?;
            let via = stable_hom_via_cokernel(&*prov, &l.m, &l.n)?;
            let mut r = Report::new("stable-hom", &["hom", "factoring", "stable", "via_cokernel", "agree"]);
            pair_params(&mut r, pair);
            r.param("side", side_name(*side));
            r.row(vec![
                json!(st.total.dim()),
                json!(st.factoring.dim()),
                json!(st.dim()),
                json!(via.dim),
                json!(via.agrees),
            ]);
            Ok(r)
        }
        Command::Resolve { algebra, m, side, length } => {
            let a = parse_algebra_spec(algebra)?;
            let m_mod = parse_module_spec("--M", m, &a)?;
            check_module("--M", &m_mod)?;
            if *length > 64 {
                return Err(InputError::new("--length", "must be at most 64").into());
            }
            let prov = side_provider(&a, *side)?;
            let mut r = Report::new("resolve", &["k", "term", "shift", "map_rank"]);
            r.param("algebra", algebra.as_str())
                .param("M", m.as_str())
                .param("side", side_name(*side))
                .param("length", *length);
            match side {
                SideArg::C => {
                    let c = Coresolution::build(&m_mod, *length, |x| prov.preenvelope(x))?;
                    for k in 0..c.terms.len() {
                        let rank = c.differentials.get(k).map(|d| d.mat.rank());
                        r.row(vec![json!(k), json!(c.terms[k].dim()), json!(c.cosyzygies[k + 1].dim()), json!(rank)]);
                    }
                }
                SideArg::D => {
                    let c = Resolution::build(&m_mod, *length, |x| prov.precover(x))?;
                    for k in 0..c.terms.len() {
                        let rank = c.differentials.get(k).map(|d| d.mat.rank());
                        r.row(vec![json!(k), json!(c.terms[k].dim()), json!(c.syzygies[k + 1].dim()), json!(rank)]);
                    }
                }
            }
            Ok(r)
        }
        Command::Dim { algebra, side, m, n, bound } => {
            let a = parse_algebra_spec(algebra)?;
            let (field, spec) = match side {
                DimSide::CId => ("--N", n.as_deref().ok_or_else(|| InputError::new("--N", "required for --side c-id"))?),
                DimSide::DPd => ("--M", m.as_deref().ok_or_else(|| InputError::new("--M", "required for --side d-pd"))?),
            };
            let x = parse_module_spec(field, spec, &a)?;
            check_module(field, &x)?;
            let out = match side {
                DimSide::CId => c_injective_dim(&*provider(ProviderKind::Inj, &a.alg)?, &x, *bound)?,
                DimSide::DPd => d_projective_dim(&*provider(ProviderKind::Prj, &a.alg)?, &x, *bound)?,
            };
            let mut r = Report::new("dim", &["side", "dim"]);
            r.param("algebra", algebra.as_str())
                .param(&field[2..], spec)
                .param("bound", *bound);
            let s = match side {
                DimSide::CId => "c-id",
                DimSide::DPd => "d-pd",
            };
            r.row(vec![json!(s), dim_cell(out)]);
            Ok(r)
        }
        Command::Text { pair, range, colim } | Command::Cext { pair, range, colim } => {
            let is_text = matches!(cmd, Command::Text { .. });
            let l = load(pair)?;
            let (a, b) = parse_range("--range", range)?;
            let params = check_i_max(colim.i_max, colim.window)?;
            let (name, kind) = if is_text { ("text", ProviderKind::Inj) } else { ("cext", ProviderKind::Prj) };
            let prov = provider(kind, &l.a.alg)?;
            let mut r = Report::new(name, &["n", "dim", "status", "stage"]);
            pair_params(&mut r, pair);
            r.param("range", range.as_str())
                .param("i_max", colim.i_max)
                .param("window", colim.window);
            let mut all = true;
            for n in a..=b {
                let c = if is_text {
                    text_c(&*prov, &l.m, &l.n, n, params)?
                } else {
                    cext_d(&*prov, &l.m, &l.n, n, params)?
                };
                all &= c.is_stabilized();
                let mut row = vec![json!(n)];
                row.extend(colim_cells(&c));
                r.row(row);
            }
            overall_status(&mut r, all);
            Ok(r)
        }
        Command::Tate { pair, range, bounds } => {
            let l = load(pair)?;
            let (a, b) = parse_range("--range", range)?;
            let tb = tate_bounds(bounds)?;
            let c = provider(ProviderKind::Inj, &l.a.alg)?;
            let d = provider(ProviderKind::Prj, &l.a.alg)?;
            let mut r = Report::new("tate", &["n", "tate_c", "tate_d"]);
            pair_params(&mut r, pair);
            r.param("range", range.as_str())
                .param("bound", bounds.bound)
                .param("search", bounds.search);
            let tc = tate_coresolution(&*c, &*d, &l.n, tb)?;
            let td = tate_resolution(&*d, &*c, &l.m, tb)?;
            let mut reasons = Vec::new();
            let tc = match tc {
                TateOutcome::Found(t) => Some(t),
                TateOutcome::Absent(why) => {
                    reasons.push(format!("coresolution of N: {why}"));
                    None
                }
            };
            let td = match td {
                TateOutcome::Found(t) => Some(t),
                TateOutcome::Absent(why) => {
                    reasons.push(format!("resolution of M: {why}"));
                    None
                }
            };
            for n in a..=b {
                let x = tc.as_ref().map(|t| tate_cohomology_c(&l.m, n, t)).transpose()?;
                let y = td.as_ref().map(|t| tate_cohomology_d(&l.n, n, t)).transpose()?;
                r.row(vec![json!(n), json!(x), json!(y)]);
            }
            if let Some(t) = &tc {
                r.summary("agreement_degree", t.agreement_degree)
                    .summary("upper_period", t.t.upper.period())
                    .summary("lower_period", t.t.lower.period());
            }
            for why in reasons {
                r.summary("absent", why);
            }
            Ok(r)
        }
        Command::Satellite { pair, variance, degree, orders } => {
            let l = load(pair)?;
            let (a, b) = parse_nonneg_range("--orders", orders)?;
            let mut r = Report::new("satellite", &["k", "ambient", "dim"]);
            pair_params(&mut r, pair);
            r.param(
                "variance",
                match variance {
                    VarianceArg::Contra => "contra",
                    VarianceArg::Co => "co",
                },
            )
            .param("degree", *degree)
            .param("orders", orders.as_str());
            let (desc, prov, at) = match variance {
                VarianceArg::Contra => (FunctorDescriptor::ext_contra(&l.n, *degree), provider(ProviderKind::Inj, &l.a.alg)?, &l.m),
                VarianceArg::Co => (FunctorDescriptor::ext_co(&l.m, *degree), provider(ProviderKind::Prj, &l.a.alg)?, &l.n),
            };
            for k in a..=b {
                let s = satellite(&desc, &*prov, at, k)?;
                r.row(vec![json!(k), json!(s.ambient.dim()), json!(s.dim())]);
            }
            Ok(r)
        }
        Command::Gorenstein { algebra, bound } => {
            let a = parse_algebra_spec(algebra)?;
            let g = gorenstein_invariants(&a.alg, *bound)?;
            let mut r = Report::new("gorenstein", &["invariant", "value"]);
            r.param("algebra", algebra.as_str()).param("bound", *bound);
            r.row(vec![json!("sup_d_pd_of_injectives"), dim_cell(g.d_pd_of_c)]);
            r.row(vec![json!("sup_c_id_of_projectives"), dim_cell(g.c_id_of_d)]);
            r.row(vec![json!("equal_and_finite"), serde_json::to_value(g.equal_and_finite).expect("serializable")]);
            Ok(r)
        }
        Command::Balance { pair, range, bounds, colim } => {
            let l = load(pair)?;
            let (a, b) = parse_range("--range", range)?;
            let params = check_i_max(colim.i_max, colim.window)?;
            let rep = balance_check(&l.m, &l.n, a, b, tate_bounds(bounds)?, params)?;
            let mut r = Report::new("balance", &["n", "tate_c", "tate_d", "text_c", "cext_d", "equal"]);
            pair_params(&mut r, pair);
            r.param("range", range.as_str())
                .param("bound", bounds.bound)
                .param("search", bounds.search);
            for row in &rep.rows {
                r.row(vec![
                    json!(row.n),
                    json!(row.tate_c),
                    json!(row.tate_d),
                    json!(row.text_c),
                    json!(row.cext_d),
                    json!(row.equal),
                ]);
            }
            r.summary("equal_and_finite", serde_json::to_value(rep.gorenstein.equal_and_finite).expect("serializable"))
                .summary("applicable", rep.applicable)
                .summary("balanced", rep.balanced());
            if let Some(why) = rep.reason {
                r.summary("reason", why);
            }
            Ok(r)
        }
        Command::Verify { suite, algebra } => {
            let only = algebra.as_deref().map(parse_algebra_spec).transpose()?;
            run_suite(*suite, only.as_ref())
        }
    }
}

fn tate_bounds(b: &Bounds) -> Result<TateBounds, InputError> {
    if b.search == 0 || b.search > 64 {
        return Err(InputError::new("--search", "must be in 1..=64"));
    }
    if b.bound > 64 {
        return Err(InputError::new("--bound", "must be at most 64"));
    }
    Ok(TateBounds {
        gorenstein: b.bound,
        search: b.search,
    })
}

/// Colimit parameters used by the suites.
pub fn suite_params() -> ColimitParams {
    ColimitParams::default()
}
