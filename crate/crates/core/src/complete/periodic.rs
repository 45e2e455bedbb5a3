//! Eventually periodic complexes and the Hom-complex route: stable and
//! bounded cohomology of `Hom(I, J)` and the sequence
//! `bExtⁱ → Ext_ACⁱ → Textⁱ → bExtⁱ⁺¹`.

use std::sync::Arc;

use crate::algcore::{hom_space, iso_class, kernel_of, Algebra, HomSpace, Module, Morphism};
use crate::cochain::{CochainComplex, ExactnessReport, LongSequence, Subquotient};
use crate::error::{Error, Result};
use crate::linalg::{sign, Mat};
use crate::resolve::lift::{extend_along, factor_through_epi, factor_through_mono, postcompose_matrix, precompose_matrix};
use crate::resolve::{Coresolution, Resolution, SubcategoryProvider};

use super::system::{ColimitResult, DirectSystem, EndoColimit};

/// A cochain complex of modules, addressed by degree.
pub trait ModuleComplex {
    fn algebra(&self) -> &Arc<Algebra>;
    fn term(&self, k: i64) -> Result<Module>;
    /// `d^k : C^k → C^{k+1}`
    fn diff(&self, k: i64) -> Result<Morphism>;
}

/// How a complex continues beyond its explicit block.
#[derive(Clone, Debug)]
pub enum Tail {
    Zero,
    /// Terms repeat with the given period; `joint` closes the block and
    /// `glue` is the isomorphism of (co)syzygies it was built from.
    Periodic { period: usize, joint: Morphism, glue: Morphism },
}

impl Tail {
    pub fn period(&self) -> Option<usize> {
        match self {
            Tail::Zero => None,
            Tail::Periodic { period, .. } => Some(*period),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Tail::Zero)
    }
}

/// Terms `C^lo … C^hi` given explicitly, with a zero or periodic tail on each
/// side. An upper tail of period `q` means `C^k = C^{k−q}` for `k > hi`, with
/// `d^hi` the upper joint `C^hi → C^{hi+1−q}`; a lower tail of period `q`
/// means `C^k = C^{k+q}` for `k < lo`, with `d^{lo−1}` the lower joint
/// `C^{lo+q−1} → C^lo`.
#[derive(Clone, Debug)]
pub struct PeriodicComplex {
    alg: Arc<Algebra>,
    pub lo: i64,
    pub terms: Vec<Module>,
    /// `diffs[t] : terms[t] → terms[t+1]`
    pub diffs: Vec<Morphism>,
    pub upper: Tail,
    pub lower: Tail,
}

impl PeriodicComplex {
    pub fn new(
        alg: &Arc<Algebra>,
        lo: i64,
        terms: Vec<Module>,
        diffs: Vec<Morphism>,
        upper: Tail,
        lower: Tail,
    ) -> Result<PeriodicComplex> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Precondition("need one differential between consecutive terms".into()));
        }
        for t in [&upper, &lower] {
            if let Some(q) = t.period() {
                if q == 0 || q > terms.len() {
                    return Err(Error::Precondition(format!(
                        "period {q} does not fit a block of {} terms",
                        terms.len()
                    )));
                }
            }
        }
        let c = PeriodicComplex {
            alg: alg.clone(),
            lo,
            terms,
            diffs,
            upper,
            lower,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    /// From this degree on, terms and differentials repeat with the upper period.
    pub fn upper_start(&self) -> i64 {
        match &self.upper {
            Tail::Zero => self.hi() + 1,
            Tail::Periodic { period, .. } => self.hi() + 1 - *period as i64,
        }
    }

    pub fn preperiod(&self) -> usize {
        (self.upper_start() - self.lo).max(0) as usize
    }

    pub fn period(&self) -> usize {
        self.upper.period().unwrap_or(1)
    }

    /// Index into `terms`, or `None` for a zero term.
    fn index(&self, k: i64) -> Option<usize> {
        if self.terms.is_empty() {
            return None;
        }
        let (lo, hi) = (self.lo, self.hi());
        if k > hi {
            let q = self.upper.period()? as i64;
            let s = hi + 1 - q;
            return Some((s + (k - s).rem_euclid(q) - lo) as usize);
        }
        if k < lo {
            let q = self.lower.period()? as i64;
            return Some((k - lo).rem_euclid(q) as usize);
        }
        Some((k - lo) as usize)
    }

    pub fn term_at(&self, k: i64) -> Module {
        match self.index(k) {
            Some(t) => self.terms[t].clone(),
            None => Module::zero(&self.alg),
        }
    }

    pub fn diff_at(&self, k: i64) -> Morphism {
        let (lo, hi) = (self.lo, self.hi());
        if self.terms.is_empty() {
            return Morphism::zero(&Module::zero(&self.alg), &Module::zero(&self.alg));
        }
        if k >= lo && k < hi {
            return self.diffs[(k - lo) as usize].clone();
        }
        if k >= hi {
            return match &self.upper {
                Tail::Zero => Morphism::zero(&self.term_at(k), &self.term_at(k + 1)),
                Tail::Periodic { period, joint, .. } => {
                    let q = *period as i64;
                    let s = hi + 1 - q;
                    let r = s + (k - s).rem_euclid(q);
                    if r == hi {
                        joint.clone()
                    } else {
                        self.diffs[(r - lo) as usize].clone()
                    }
                }
            };
        }
        match &self.lower {
            Tail::Zero => Morphism::zero(&self.term_at(k), &self.term_at(k + 1)),
            Tail::Periodic { period, joint, .. } => {
                let q = *period as i64;
                let r = lo - 1 + (k - (lo - 1)).rem_euclid(q);
                if r == lo - 1 {
                    joint.clone()
                } else {
                    self.diffs[(r - lo) as usize].clone()
                }
            }
        }
    }

    /// The degrees on which every joint and one full period on each side is visible.
    pub fn window(&self) -> (i64, i64) {
        let ql = self.lower.period().unwrap_or(1) as i64;
        let qu = self.upper.period().unwrap_or(1) as i64;
        (self.lo - 2 * ql - 1, self.hi() + 2 * qu + 1)
    }

    fn validate(&self) -> Result<()> {
        for t in [&self.upper, &self.lower] {
            if let Tail::Periodic { glue, .. } = t {
                if !glue.is_iso() {
                    return Err(Error::Precondition("gluing map is not an isomorphism".into()));
                }
            }
        }
        let (a, b) = self.window();
        for k in a..=b {
            let d = self.diff_at(k);
            let e = self.diff_at(k + 1);
            if d.source.dim() != self.term_at(k).dim() || d.target.dim() != self.term_at(k + 1).dim() {
                return Err(Error::Precondition(format!("differential {k} has the wrong shape")));
            }
            if !e.mat.mul(&d.mat).is_zero() {
                return Err(Error::Precondition(format!("d∘d ≠ 0 at degree {k}")));
            }
        }
        Ok(())
    }

    pub fn is_exact_at(&self, k: i64) -> bool {
        let dim = self.term_at(k).dim();
        dim - self.diff_at(k).mat.rank() == self.diff_at(k - 1).mat.rank()
    }

    /// Exactness on the window, which covers every degree up to periodicity.
    pub fn is_acyclic_from(&self, from: i64) -> bool {
        let (a, b) = self.window();
        (from.max(a)..=b).all(|k| self.is_exact_at(k))
    }
}

impl ModuleComplex for PeriodicComplex {
    fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    fn term(&self, k: i64) -> Result<Module> {
        Ok(self.term_at(k))
    }

    fn diff(&self, k: i64) -> Result<Morphism> {
        Ok(self.diff_at(k))
    }
}

/// A finite coresolution read as a complex in degrees `0..=length`.
impl ModuleComplex for Coresolution {
    fn algebra(&self) -> &Arc<Algebra> {
        self.base.algebra()
    }

    fn term(&self, k: i64) -> Result<Module> {
        if k < 0 {
            Ok(Module::zero(self.base.algebra()))
        } else if k as usize <= self.length {
            Ok(self.terms[k as usize].clone())
        } else {
            Err(Error::Internal(format!("coresolution of length {} read at degree {k}", self.length)))
        }
    }

    fn diff(&self, k: i64) -> Result<Morphism> {
        if k < 0 {
            Ok(Morphism::zero(&ModuleComplex::term(self, k)?, &ModuleComplex::term(self, k + 1)?))
        } else if (k as usize) < self.length {
            Ok(self.differentials[k as usize].clone())
        } else {
            Err(Error::Internal(format!("coresolution of length {} read at degree {k}", self.length)))
        }
    }
}

/// The canonical coresolution of `m`, closed up as soon as `Σʲm ≅ Σⁱm` for
/// some `i < j ≤ search_bound` (or `Σʲm = 0`).
pub fn periodic_coresolution(
    c: &dyn SubcategoryProvider,
    m: &Module,
    search_bound: usize,
) -> Result<Option<PeriodicComplex>> {
    if search_bound == 0 {
        return Err(Error::Precondition("search bound must be at least 1".into()));
    }
    let alg = m.algebra();
    let r = Coresolution::build(m, search_bound, |x| c.preenvelope(x))?;
    let block = |j: usize| (r.terms[..j].to_vec(), r.differentials[..j.saturating_sub(1)].to_vec());
    for j in 0..=search_bound + 1 {
        if r.cosyzygies[j].is_zero() {
            let (t, d) = block(j);
            return PeriodicComplex::new(alg, 0, t, d, Tail::Zero, Tail::Zero).map(Some);
        }
        if j == 0 || j > search_bound {
            continue;
        }
        for i in 0..j {
            if r.cosyzygies[i].dim() != r.cosyzygies[j].dim() {
                continue;
            }
            if let Some(g) = iso_class(&r.cosyzygies[j], &r.cosyzygies[i])?.iso() {
                let joint = r.steps[i].i.compose(&g).compose(&r.steps[j - 1].p);
                let (t, d) = block(j);
                let upper = Tail::Periodic {
                    period: j - i,
                    joint,
                    glue: g,
                };
                return PeriodicComplex::new(alg, 0, t, d, upper, Tail::Zero).map(Some);
            }
        }
    }
    Ok(None)
}

/// The canonical resolution of `m` as a complex in degrees `≤ 0` (`P_k` in
/// degree `−k`), closed up as soon as `Ωʲm ≅ Ωⁱm` for some `i < j ≤ search_bound`.
pub fn periodic_resolution(
    d: &dyn SubcategoryProvider,
    m: &Module,
    search_bound: usize,
) -> Result<Option<PeriodicComplex>> {
    if search_bound == 0 {
        return Err(Error::Precondition("search bound must be at least 1".into()));
    }
    let alg = m.algebra();
    let r = Resolution::build(m, search_bound, |x| d.precover(x))?;
    // terms P_{j−1} … P_0 in degrees −(j−1) … 0
    let block = |j: usize| {
        let t: Vec<Module> = (0..j).rev().map(|k| r.terms[k].clone()).collect();
        let d: Vec<Morphism> = (0..j.saturating_sub(1)).rev().map(|k| r.differentials[k].clone()).collect();
        (t, d)
    };
    for j in 0..=search_bound + 1 {
        if r.syzygies[j].is_zero() {
            let (t, dd) = block(j);
            let lo = 1 - j.max(1) as i64;
            return PeriodicComplex::new(alg, lo, t, dd, Tail::Zero, Tail::Zero).map(Some);
        }
        if j == 0 || j > search_bound {
            continue;
        }
        for i in 0..j {
            if r.syzygies[i].dim() != r.syzygies[j].dim() {
                continue;
            }
            if let Some(g) = iso_class(&r.syzygies[i], &r.syzygies[j])?.iso() {
                let joint = r.steps[j - 1].i.compose(&g).compose(&r.steps[i].p);
                let (t, dd) = block(j);
                let lower = Tail::Periodic {
                    period: j - i,
                    joint,
                    glue: g,
                };
                return PeriodicComplex::new(alg, 1 - j as i64, t, dd, Tail::Zero, lower).map(Some);
            }
        }
    }
    Ok(None)
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `H^{n+K}(Hom(X_K, J))` for `X_K = Ker d_I^K`.
#[derive(Clone, Debug)]
pub struct TailStage {
    pub k: i64,
    pub n: i64,
    /// `X_K ↪ I^K`
    pub incl: Morphism,
    pub hom: Arc<HomSpace>,
    pub h: Subquotient,
}

impl TailStage {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }
}

pub fn tail_stage(i: &dyn ModuleComplex, j: &dyn ModuleComplex, n: i64, k: i64) -> Result<TailStage> {
    let (x, incl) = kernel_of(&i.diff(k)?);
    let m = n + k;
    let p = x.prime();
    let d0 = postcompose_matrix(&j.diff(m - 1)?, &x)?;
    let d1 = postcompose_matrix(&j.diff(m)?, &x)?;
    let dims = vec![d0.cols(), d0.rows(), d1.rows()];
    let cx = CochainComplex::new(p, m - 1, dims, vec![d0, d1]);
    Ok(TailStage {
        k,
        n,
        incl,
        hom: hom_space(&x, &j.term(m)?)?,
        h: cx.cohomology(m),
    })
}

/// `V(K) → V(K+1)`: extend a cocycle `X_K → J^m` over `I^K`, apply `d_J`
/// and factor through `I^K ↠ X_{K+1}`; the sign is `(−1)^n`.
pub fn tail_transition(
    i: &dyn ModuleComplex,
    j: &dyn ModuleComplex,
    s: &TailStage,
    t: &TailStage,
) -> Result<Mat> {
    let p = s.incl.mat.prime();
    let dj = j.diff(s.n + s.k)?;
    let pi = factor_through_mono(&t.incl, &i.diff(s.k)?)?;
    let sg = sign(p, s.n);
    let mut cols = Vec::with_capacity(s.dim());
    for c in 0..s.dim() {
        let v = s.h.representative(&unit(s.dim(), c));
        let beta = Morphism::raw(s.hom.source.clone(), s.hom.target.clone(), s.hom.element(&v));
        let alpha = extend_along(&s.incl, &beta)?.ok_or_else(|| {
            Error::Precondition(format!("cocycle does not extend over I^{}: complex is not Hom(-, J)-exact", s.k))
        })?;
        let next = factor_through_epi(&pi, &dj.compose(&alpha))?;
        cols.push(t.h.class(&t.hom.coords(&next.mat.scale(sg))));
    }
    Ok(Mat::from_cols(p, t.dim(), &cols))
}

/// The transition `V(from) → V(to)`.
pub fn tail_chain(i: &dyn ModuleComplex, j: &dyn ModuleComplex, n: i64, from: i64, to: i64) -> Result<Mat> {
    let mut s = tail_stage(i, j, n, from)?;
    let p = s.incl.mat.prime();
    let mut acc = Mat::identity(p, s.dim());
    for k in from..to {
        let t = tail_stage(i, j, n, k + 1)?;
        acc = tail_transition(i, j, &s, &t)?.mul(&acc);
        s = t;
    }
    Ok(acc)
}

/// `V(from) → … → V(to)` as a direct system.
pub fn tail_system(i: &dyn ModuleComplex, j: &dyn ModuleComplex, n: i64, from: i64, to: i64) -> Result<DirectSystem> {
    let mut s = tail_stage(i, j, n, from)?;
    let mut maps = Vec::new();
    for k in from..to {
        let t = tail_stage(i, j, n, k + 1)?;
        maps.push(tail_transition(i, j, &s, &t)?);
        s = t;
    }
    if maps.is_empty() {
        return Ok(DirectSystem {
            start: from,
            dims: vec![s.dim()],
            maps,
        });
    }
    DirectSystem::from_maps(from, maps)
}

/// `Hⁿ(Hom(I,J)/Hom^b(I,J))`, presented as `V(K)/Ker Φ^{dim}` where `Φ`
/// is the transition over one common period.
#[derive(Clone, Debug)]
pub struct StableCohomology {
    pub n: i64,
    /// `None` when a tail is zero and the value vanishes.
    pub stage: Option<TailStage>,
    pub period: usize,
    pub colim: Option<EndoColimit>,
}

impl StableCohomology {
    pub fn dim(&self) -> usize {
        self.colim.as_ref().map_or(0, |c| c.dim())
    }
}

/// Lower-tail condition shared by the stable and bounded computations.
fn require_bounded_below(i: &PeriodicComplex, j: &PeriodicComplex) -> Result<()> {
    if !i.lower.is_zero() && !j.lower.is_zero() {
        return Err(Error::Unsupported(
            "both complexes are unbounded below; one of them must have a zero lower tail".into(),
        ));
    }
    Ok(())
}

/// Stage from which both complexes are periodic for the degree-`n` computation.
pub fn tail_start(i: &PeriodicComplex, j: &PeriodicComplex, n: i64) -> i64 {
    i.upper_start().max(j.upper_start() - n + 1).max(i.lo)
}

pub fn stable_complex_cohomology(i: &PeriodicComplex, j: &PeriodicComplex, n: i64) -> Result<StableCohomology> {
    require_bounded_below(i, j)?;
    let (qi, qj) = match (i.upper.period(), j.upper.period()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Ok(StableCohomology {
                n,
                stage: None,
                period: 1,
                colim: None,
            })
        }
    };
    let q = lcm(qi, qj);
    let k = tail_start(i, j, n);
    let phi = tail_chain(i, j, n, k, k + q as i64)?;
    let stage = tail_stage(i, j, n, k)?;
    if !phi.is_square() || phi.cols() != stage.dim() {
        return Err(Error::Internal("period transition does not return to the same stage".into()));
    }
    Ok(StableCohomology {
        n,
        stage: Some(stage),
        period: q,
        colim: Some(EndoColimit::new(phi)?),
    })
}

/// Graded pieces `Hom(I^k, J^{k+d})` for `k_min ≤ k ≤ b`.
#[derive(Clone, Debug)]
struct Layout {
    ks: Vec<i64>,
    homs: Vec<Arc<HomSpace>>,
    offs: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(i: &PeriodicComplex, j: &PeriodicComplex, d: i64, b: i64) -> Result<Layout> {
        let mut start = i64::MIN;
        if i.lower.is_zero() {
            start = start.max(i.lo);
        }
        if j.lower.is_zero() {
            start = start.max(j.lo - d);
        }
        let mut l = Layout {
            ks: vec![],
            homs: vec![],
            offs: vec![],
            total: 0,
        };
        for k in start..=b {
            let h = hom_space(&i.term_at(k), &j.term_at(k + d))?;
            l.offs.push(l.total);
            l.total += h.dim();
            l.ks.push(k);
            l.homs.push(h);
        }
        Ok(l)
    }

    fn slot(&self, k: i64) -> Option<usize> {
        self.ks.iter().position(|&x| x == k)
    }
}

/// `∂ : Hom^{≤b}(I,J)^d → Hom^{≤b}(I,J)^{d+1}`, `∂α = d_J α − (−1)^d α d_I`.
fn bounded_diff(i: &PeriodicComplex, j: &PeriodicComplex, src: &Layout, dst: &Layout, d: i64) -> Result<Mat> {
    let p = i.alg.prime();
    let mut out = Mat::zeros(p, dst.total, src.total);
    let s = sign(p, d + 1);
    for (a, &k) in src.ks.iter().enumerate() {
        let post = postcompose_matrix(&j.diff_at(k + d), &i.term_at(k))?;
        if let Some(t) = dst.slot(k) {
            out.paste(dst.offs[t], src.offs[a], &post);
        }
        if let Some(t) = dst.slot(k - 1) {
            let pre = precompose_matrix(&i.diff_at(k - 1), &j.term_at(k + d))?;
            out.paste(dst.offs[t], src.offs[a], &pre.scale(s));
        }
    }
    Ok(out)
}

/// `Hⁿ(Hom(I^{≤b}, J))`, the `b`-th stage of bounded cohomology.
#[derive(Clone, Debug)]
struct BoundedStage {
    layout: Layout,
    h: Subquotient,
}

fn bounded_stage(i: &PeriodicComplex, j: &PeriodicComplex, n: i64, b: i64) -> Result<BoundedStage> {
    let p = i.alg.prime();
    let l0 = Layout::new(i, j, n - 1, b)?;
    let l1 = Layout::new(i, j, n, b)?;
    let l2 = Layout::new(i, j, n + 1, b)?;
    let d0 = bounded_diff(i, j, &l0, &l1, n - 1)?;
    let d1 = bounded_diff(i, j, &l1, &l2, n)?;
    let cx = CochainComplex::new(p, n - 1, vec![l0.total, l1.total, l2.total], vec![d0, d1]);
    Ok(BoundedStage {
        layout: l1,
        h: cx.cohomology(n),
    })
}

fn bounded_step(i: &PeriodicComplex, s: &BoundedStage, t: &BoundedStage) -> Mat {
    let p = i.alg.prime();
    let mut inc = Mat::zeros(p, t.layout.total, s.layout.total);
    inc.paste(0, 0, &Mat::identity(p, s.layout.total));
    s.h.induced(&inc, &t.h)
}

/// First stage of the bounded window: `|n| + preperiod + 2·period` past the support start.
pub fn bounded_window_start(i: &PeriodicComplex, j: &PeriodicComplex, n: i64) -> i64 {
    let base = if i.lower.is_zero() { i.lo } else { j.lo - n };
    let pre = i.preperiod().max(j.preperiod()) as i64;
    let per = lcm(i.period(), j.period()) as i64;
    base + n.abs() + pre + 2 * per
}

fn bounded_system(i: &PeriodicComplex, j: &PeriodicComplex, n: i64, from: i64, to: i64) -> Result<(DirectSystem, Vec<BoundedStage>)> {
    let mut stages = vec![bounded_stage(i, j, n, from)?];
    let mut maps = Vec::new();
    for b in from..to {
        let t = bounded_stage(i, j, n, b + 1)?;
        maps.push(bounded_step(i, stages.last().expect("nonempty"), &t));
        stages.push(t);
    }
    Ok((DirectSystem::from_maps(from, maps)?, stages))
}

/// `Hⁿ(Hom^b(I,J)) = colim_b Hⁿ(Hom(I^{≤b}, J))` over stages from the window start.
pub fn bounded_cohomology(i: &PeriodicComplex, j: &PeriodicComplex, n: i64, window: usize) -> Result<ColimitResult> {
    require_bounded_below(i, j)?;
    let w = window.max(1) as i64;
    let from = bounded_window_start(i, j, n);
    let span = w + lcm(i.period(), j.period()) as i64;
    let (sys, _) = bounded_system(i, j, n, from, from + span)?;
    Ok(sys.stabilization(window))
}

/// `bExtⁱ → Ext_ACⁱ → Textⁱ → bExtⁱ⁺¹ → …` with its exactness report.
#[derive(Clone, Debug)]
pub struct StableLes {
    pub sequence: LongSequence,
    pub report: ExactnessReport,
    /// Bounded cohomology of each degree `from..=to+1`.
    pub bounded: Vec<ColimitResult>,
}

impl StableLes {
    pub fn is_exact(&self) -> bool {
        self.report.all_exact()
    }

    pub fn stabilized(&self) -> bool {
        self.bounded.iter().all(|b| b.is_stabilized())
    }
}

/// The long exact sequence of `0 → Hom^b(I,J) → Hom(I,J) → Hom(I,J)/Hom^b → 0`
/// over degrees `from..=to`. `I` must be bounded below; `Ext_AC` is read as
/// `H(Hom(X_lo, J))` with `X_lo = Ker d_I^lo`.
pub fn stable_les(i: &PeriodicComplex, j: &PeriodicComplex, from: i64, to: i64, window: usize) -> Result<StableLes> {
    if !i.lower.is_zero() {
        return Err(Error::Unsupported("the first complex must be bounded below".into()));
    }
    if from > to {
        return Err(Error::Precondition("empty degree range".into()));
    }
    let p = i.alg.prime();
    let lo = i.lo;
    let w = window.max(1) as i64;
    let span = w + lcm(i.period(), j.period()) as i64;

    let mut stable = Vec::new();
    let mut kmax = lo + 1;
    for d in from..=to {
        let s = stable_complex_cohomology(i, j, d)?;
        if let Some(st) = &s.stage {
            kmax = kmax.max(st.k);
        }
        stable.push(s);
    }
    let mut bounded = Vec::new();
    let mut bstages = Vec::new();
    for d in from..=to + 1 {
        let start = bounded_window_start(i, j, d).max(kmax);
        let (sys, stages) = bounded_system(i, j, d, start, start + span)?;
        let res = sys.stabilization(window);
        let at = res.stage.unwrap_or(sys.end());
        bstages.push(stages.into_iter().nth((at - start) as usize).expect("stage in range"));
        bounded.push(res);
    }

    let mut seq = LongSequence::start(format!("bExt^{from}"), bstages[0].h.dim());
    for (t, d) in (from..=to).enumerate() {
        let b = &bstages[t];
        let ext = tail_stage(i, j, d, lo)?;
        // restriction of the degree-`lo` component to X_lo
        let mut a_cols = Vec::new();
        for c in 0..b.h.dim() {
            let v = b.h.representative(&unit(b.h.dim(), c));
            let col = match b.layout.slot(lo) {
                Some(s) => {
                    let h = &b.layout.homs[s];
                    let o = b.layout.offs[s];
                    let f = h.element(&v[o..o + h.dim()]);
                    ext.h.class(&ext.hom.coords(&f.mul(&ext.incl.mat)))
                }
                None => vec![0; ext.dim()],
            };
            a_cols.push(col);
        }
        seq.push(Mat::from_cols(p, ext.dim(), &a_cols), format!("Ext^{d}"));

        let s = &stable[t];
        let text_dim = s.dim();
        let to_text = match (&s.stage, &s.colim) {
            (Some(st), Some(cl)) => cl.proj().mul(&tail_chain(i, j, d, lo, st.k)?),
            _ => Mat::zeros(p, 0, ext.dim()),
        };
        seq.push(to_text, format!("Text^{d}"));

        let nb = &bstages[t + 1];
        let conn = match (&s.stage, &s.colim) {
            // a lift supported on all of I is already a cocycle
            (Some(st), Some(_)) if st.k - 1 < lo => Mat::zeros(p, nb.h.dim(), text_dim),
            (Some(st), Some(cl)) => {
                let slot = nb
                    .layout
                    .slot(st.k - 1)
                    .ok_or_else(|| Error::Internal("bounded window does not reach the tail stage".into()))?;
                let (h, o) = (&nb.layout.homs[slot], nb.layout.offs[slot]);
                let dprev = i.diff_at(st.k - 1);
                let sg = sign(p, d + 1);
                let mut cols = Vec::new();
                for c in 0..text_dim {
                    let v = st.h.representative(&cl.section().apply(&unit(text_dim, c)));
                    let beta = Morphism::raw(st.hom.source.clone(), st.hom.target.clone(), st.hom.element(&v));
                    let alpha = extend_along(&st.incl, &beta)?
                        .ok_or_else(|| Error::Precondition("cocycle does not extend over the tail".into()))?;
                    let comp = alpha.mat.mul(&dprev.mat).scale(sg);
                    let mut full = vec![0; nb.layout.total];
                    full[o..o + h.dim()].copy_from_slice(&h.coords(&comp));
                    cols.push(nb.h.class(&full));
                }
                Mat::from_cols(p, nb.h.dim(), &cols)
            }
            _ => Mat::zeros(p, nb.h.dim(), 0),
        };
        seq.push(conn, format!("bExt^{}", d + 1));
    }
    let report = seq.report();
    Ok(StableLes {
        sequence: seq,
        report,
        bounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::{truncated_poly, cyclic_group};
    use crate::algcore::{indecomposables, simples};
    use crate::complete::{text_c, ColimitParams};
    use crate::resolve::{provider, ProviderKind};

    fn x_complex(alg: &Arc<Algebra>) -> PeriodicComplex {
        // A → A → A → … with every differential multiplication by x
        let a = Module::regular(alg);
        let x = Morphism::new(a.clone(), a.clone(), alg.right_mult(&alg.basis_elem(1))).unwrap();
        let g = Morphism::identity(&a);
        PeriodicComplex::new(alg, 0, vec![a], vec![], Tail::Periodic { period: 1, joint: x, glue: g }, Tail::Zero)
            .unwrap()
    }

    #[test]
    fn periodic_coresolution_examples() {
        let a = truncated_poly(2, 2).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let pc = periodic_coresolution(&*c, &k, 4).unwrap().unwrap();
        assert_eq!(pc.upper.period(), Some(1));
        assert_eq!(pc.upper_start(), 0);
        assert!(pc.is_acyclic_from(1));

        let b = truncated_poly(2, 3).unwrap();
        let cb = provider(ProviderKind::Inj, &b).unwrap();
        let ms = indecomposables(&b).unwrap();
        let m1 = ms.iter().find(|m| m.dim() == 1).unwrap();
        let pc = periodic_coresolution(&*cb, m1, 4).unwrap().unwrap();
        assert_eq!(pc.upper.period(), Some(2));

        let inj = Module::regular(&b);
        let pc = periodic_coresolution(&*cb, &inj, 4).unwrap().unwrap();
        assert!(pc.upper.is_zero());
        assert_eq!(pc.terms.len(), 1);
        assert!(pc.term_at(1).is_zero());
    }

    #[test]
    fn periodic_resolution_of_simple() {
        let a = truncated_poly(3, 3).unwrap();
        let d = provider(ProviderKind::Prj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let pr = periodic_resolution(&*d, &k, 4).unwrap().unwrap();
        assert_eq!(pr.lower.period(), Some(2));
        assert_eq!(pr.hi(), 0);
        for deg in -6..0 {
            assert!(pr.is_exact_at(deg), "degree {deg}");
        }
    }

    #[test]
    fn tails_unroll_consistently() {
        let a = truncated_poly(2, 3).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let pc = periodic_coresolution(&*c, &k, 4).unwrap().unwrap();
        let q = pc.period() as i64;
        for deg in pc.upper_start()..pc.upper_start() + 3 * q {
            assert_eq!(pc.term_at(deg), pc.term_at(deg + q));
            assert_eq!(pc.diff_at(deg), pc.diff_at(deg + q));
        }
    }

    #[test]
    fn stable_cohomology_examples() {
        let a = truncated_poly(2, 2).unwrap();
        let x = x_complex(&a);
        assert_eq!(stable_complex_cohomology(&x, &x, 0).unwrap().dim(), 1);
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let inj = periodic_coresolution(&*c, &Module::regular(&a), 2).unwrap().unwrap();
        for n in -3..=3 {
            assert_eq!(stable_complex_cohomology(&inj, &x, n).unwrap().dim(), 0);
            assert_eq!(stable_complex_cohomology(&x, &inj, n).unwrap().dim(), 0);
        }
    }

    #[test]
    fn two_sided_pairs_are_unsupported() {
        let a = truncated_poly(2, 2).unwrap();
        let d = provider(ProviderKind::Prj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let pr = periodic_resolution(&*d, &k, 3).unwrap().unwrap();
        assert!(matches!(stable_complex_cohomology(&pr, &pr, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn hom_complex_route_matches_colimits() {
        for alg in [truncated_poly(2, 3).unwrap(), cyclic_group(3, 1).unwrap()] {
            let c = provider(ProviderKind::Inj, &alg).unwrap();
            let ms = indecomposables(&alg).unwrap();
            for m in &ms {
                let im = periodic_coresolution(&*c, m, 4).unwrap().unwrap();
                for n_mod in &ms {
                    let jn = periodic_coresolution(&*c, n_mod, 4).unwrap().unwrap();
                    for n in -2..=2 {
                        let want = text_c(&*c, m, n_mod, n, ColimitParams::default()).unwrap().dim();
                        let got = stable_complex_cohomology(&im, &jn, n).unwrap().dim();
                        assert_eq!(got, want, "dims {} {} n={n}", m.dim(), n_mod.dim());
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_cohomology_examples() {
        let a = truncated_poly(2, 2).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let ik = periodic_coresolution(&*c, &k, 4).unwrap().unwrap();
        let inj = periodic_coresolution(&*c, &Module::regular(&a), 2).unwrap().unwrap();
        // a bounded first complex meets the second only in degrees ≥ −hi
        for n in -8..-3 {
            assert_eq!(bounded_cohomology(&inj, &ik, n, 3).unwrap().value_dim, Some(0));
        }
        let dims: Vec<usize> = (-2..=2).map(|n| bounded_cohomology(&ik, &ik, n, 3).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn bounded_window_widening_is_harmless() {
        let a = truncated_poly(2, 3).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let ik = periodic_coresolution(&*c, &k, 4).unwrap().unwrap();
        for n in -2..=2 {
            let b0 = bounded_window_start(&ik, &ik, n);
            let narrow = bounded_stage(&ik, &ik, n, b0).unwrap().h.dim();
            let wide = bounded_stage(&ik, &ik, n, 2 * b0 + 2).unwrap().h.dim();
            assert_eq!(narrow, wide, "n={n}");
        }
    }

    #[test]
    fn bounded_ext_text_sequence_is_exact() {
        let a = truncated_poly(2, 2).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let ik = periodic_coresolution(&*c, &k, 4).unwrap().unwrap();
        let les = stable_les(&ik, &ik, 0, 2, 3).unwrap();
        assert!(les.stabilized());
        assert!(les.is_exact(), "{:?}", les.report.first_failure());
        let les = stable_les(&ik, &ik, -2, 2, 3).unwrap();
        assert!(les.is_exact(), "{:?}", les.report.first_failure());

        let b = truncated_poly(2, 3).unwrap();
        let cb = provider(ProviderKind::Inj, &b).unwrap();
        let ms = indecomposables(&b).unwrap();
        for m in &ms {
            for n_mod in &ms {
                let im = periodic_coresolution(&*cb, m, 4).unwrap().unwrap();
                let jn = periodic_coresolution(&*cb, n_mod, 4).unwrap().unwrap();
                let les = stable_les(&im, &jn, -1, 2, 3).unwrap();
                assert!(les.stabilized());
                assert!(les.is_exact(), "{:?}", les.report.first_failure());
            }
        }
    }
}
