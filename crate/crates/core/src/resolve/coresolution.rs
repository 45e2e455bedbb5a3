//! Proper coresolutions and resolutions built from iterated special
//! preenvelopes/precovers, (co)syzygies and horseshoe constructions.

use crate::algcore::{direct_sum, hom_space, projective_cover, Module, Morphism};
use crate::error::{Error, Result};

use super::lift::{extend_along, factor_through_epi, factor_through_mono, lift_through, precompose_matrix, postcompose_matrix};
use super::provider::{Membership, SubcategoryProvider, ShortExact};

/// `0 → base → I⁰ → I¹ → … → I^L`
#[derive(Clone, Debug)]
pub struct Coresolution {
    pub base: Module,
    pub terms: Vec<Module>,
    /// `differentials[i] : Iⁱ → Iⁱ⁺¹`, for `i < L`.
    pub differentials: Vec<Morphism>,
    pub augmentation: Morphism,
    /// `Σ⁰ = base, …, Σ^{L+1}`.
    pub cosyzygies: Vec<Module>,
    /// `0 → Σⁱ → Iⁱ → Σⁱ⁺¹ → 0`.
    pub steps: Vec<ShortExact>,
    pub length: usize,
    pub special: bool,
}

/// `P_L → … → P₁ → P₀ → base → 0`
#[derive(Clone, Debug)]
pub struct Resolution {
    pub base: Module,
    pub terms: Vec<Module>,
    /// `differentials[i] : P_{i+1} → P_i`.
    pub differentials: Vec<Morphism>,
    pub augmentation: Morphism,
    /// `Ω⁰ = base, …, Ω^{L+1}`.
    pub syzygies: Vec<Module>,
    /// `0 → Ωⁱ⁺¹ → P_i → Ωⁱ → 0`.
    pub steps: Vec<ShortExact>,
    pub length: usize,
    pub special: bool,
}

impl Coresolution {
    /// Splice the given preenvelope step function `length + 1` times.
    pub fn build(base: &Module, length: usize, step: impl Fn(&Module) -> Result<ShortExact>) -> Result<Coresolution> {
        let mut steps: Vec<ShortExact> = Vec::with_capacity(length + 1);
        let mut cur = base.clone();
        for _ in 0..=length {
            let s = step(&cur)?;
            cur = s.right.clone();
            steps.push(s);
        }
        let differentials = (0..length)
            .map(|i| steps[i + 1].i.compose(&steps[i].p))
            .collect();
        let mut cosyzygies: Vec<Module> = steps.iter().map(|s| s.left.clone()).collect();
        cosyzygies.push(cur);
        Ok(Coresolution {
            base: base.clone(),
            terms: steps.iter().map(|s| s.mid.clone()).collect(),
            differentials,
            augmentation: steps[0].i.clone(),
            cosyzygies,
            steps,
            length,
            special: true,
        })
    }

    pub fn term(&self, i: usize) -> &Module {
        &self.terms[i]
    }

    pub fn cosyzygy(&self, i: usize) -> &Module {
        &self.cosyzygies[i]
    }

    /// Exactness of `0 → Hom(Σ^{L+1}, T) → Hom(I^L, T) → … → Hom(I⁰, T) → Hom(base, T) → 0`.
    pub fn hom_exact_against(&self, t: &Module) -> Result<bool> {
        for s in &self.steps {
            let into = hom_space(&s.mid, t)?.dim();
            let left = hom_space(&s.left, t)?.dim();
            let right = hom_space(&s.right, t)?.dim();
            if into != left + right {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Resolution {
    pub fn build(base: &Module, length: usize, step: impl Fn(&Module) -> Result<ShortExact>) -> Result<Resolution> {
        let mut steps: Vec<ShortExact> = Vec::with_capacity(length + 1);
        let mut cur = base.clone();
        for _ in 0..=length {
            let s = step(&cur)?;
            cur = s.left.clone();
            steps.push(s);
        }
        let differentials = (0..length)
            .map(|i| steps[i].i.compose(&steps[i + 1].p))
            .collect();
        let mut syzygies: Vec<Module> = steps.iter().map(|s| s.right.clone()).collect();
        syzygies.push(cur);
        Ok(Resolution {
            base: base.clone(),
            terms: steps.iter().map(|s| s.mid.clone()).collect(),
            differentials,
            augmentation: steps[0].p.clone(),
            syzygies,
            steps,
            length,
            special: true,
        })
    }

    pub fn term(&self, i: usize) -> &Module {
        &self.terms[i]
    }

    pub fn syzygy(&self, i: usize) -> &Module {
        &self.syzygies[i]
    }

    /// Exactness of `0 → Hom(T, Ω^{L+1}) → Hom(T, P_L) → … → Hom(T, base) → 0`.
    pub fn hom_exact_against(&self, t: &Module) -> Result<bool> {
        for s in &self.steps {
            let into = hom_space(t, &s.mid)?.dim();
            let left = hom_space(t, &s.left)?.dim();
            let right = hom_space(t, &s.right)?.dim();
            if into != left + right {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Canonical minimal projective resolution.
pub fn projective_resolution(m: &Module, length: usize) -> Result<Resolution> {
    Resolution::build(m, length, |x| Ok(ShortExact::from_epi(projective_cover(x)?)))
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(format!("provider is not {what}")))
    }
}

pub fn cosyzygy(c: &dyn SubcategoryProvider, m: &Module, i: usize) -> Result<Module> {
    require(c.is_preenveloping(), "preenveloping")?;
    let mut cur = m.clone();
    for _ in 0..i {
        if cur.is_zero() {
            break;
        }
        cur = c.preenvelope(&cur)?.right;
    }
    Ok(cur)
}

pub fn syzygy(d: &dyn SubcategoryProvider, m: &Module, i: usize) -> Result<Module> {
    require(d.is_precovering(), "precovering")?;
    let mut cur = m.clone();
    for _ in 0..i {
        if cur.is_zero() {
            break;
        }
        cur = d.precover(&cur)?.left;
    }
    Ok(cur)
}

/// Proper coresolution of length `L`, certified against the test objects.
pub fn proper_coresolution(c: &dyn SubcategoryProvider, m: &Module, length: usize) -> Result<Coresolution> {
    require(c.is_preenveloping(), "preenveloping")?;
    let r = Coresolution::build(m, length, |x| c.preenvelope(x))?;
    for (i, t) in r.terms.iter().enumerate() {
        if c.membership(t) == Membership::No {
            return Err(Error::Precondition(format!("term {i} is not in {}", c.name())));
        }
    }
    for (j, t) in c.test_objects().iter().enumerate() {
        if !r.hom_exact_against(t)? {
            return Err(Error::Precondition(format!(
                "coresolution is not Hom(-, T)-exact for test object #{j}"
            )));
        }
    }
    Ok(r)
}

pub fn proper_resolution(d: &dyn SubcategoryProvider, m: &Module, length: usize) -> Result<Resolution> {
    require(d.is_precovering(), "precovering")?;
    let r = Resolution::build(m, length, |x| d.precover(x))?;
    for (i, t) in r.terms.iter().enumerate() {
        if d.membership(t) == Membership::No {
            return Err(Error::Precondition(format!("term {i} is not in {}", d.name())));
        }
    }
    for (j, t) in d.test_objects().iter().enumerate() {
        if !r.hom_exact_against(t)? {
            return Err(Error::Precondition(format!(
                "resolution is not Hom(T, -)-exact for test object #{j}"
            )));
        }
    }
    Ok(r)
}

/// Checks that `Hom(ses, T)` (or `Hom(T, ses)` when `covariant`) is exact
/// for every test object, naming the first failure.
pub fn certify_ses(tests: &[Module], ses: &ShortExact, covariant: bool) -> Result<()> {
    for (j, t) in tests.iter().enumerate() {
        let (l, m, r) = if covariant {
            (hom_space(t, &ses.left)?, hom_space(t, &ses.mid)?, hom_space(t, &ses.right)?)
        } else {
            (hom_space(&ses.left, t)?, hom_space(&ses.mid, t)?, hom_space(&ses.right, t)?)
        };
        if m.dim() != l.dim() + r.dim() {
            return Err(Error::Precondition(format!(
                "sequence is not Hom-exact against test object #{j}"
            )));
        }
    }
    Ok(())
}

/// A short exact sequence of coresolutions `0 → I_A → I_B → I_C → 0`, degreewise split.
#[derive(Clone, Debug)]
pub struct HorseshoeCo {
    pub left: Coresolution,
    pub mid: Coresolution,
    pub right: Coresolution,
    /// Degreewise inclusions `I_A^k → I_B^k`.
    pub incl: Vec<Morphism>,
    /// Degreewise projections `I_B^k → I_C^k`.
    pub proj: Vec<Morphism>,
    /// `0 → Σᵏ A → Σᵏ B → Σᵏ C → 0` for `k = 0..=L+1`.
    pub cosyzygy_ses: Vec<ShortExact>,
}

/// Horseshoe coresolution of the middle term of `ses`, from the canonical
/// coresolutions of the outer terms.
pub fn horseshoe_coresolution(c: &dyn SubcategoryProvider, ses: &ShortExact, length: usize) -> Result<HorseshoeCo> {
    require(c.is_preenveloping(), "preenveloping")?;
    let left = Coresolution::build(&ses.left, length, |x| c.preenvelope(x))?;
    let right = Coresolution::build(&ses.right, length, |x| c.preenvelope(x))?;
    let alg = ses.mid.algebra();
    let mut cur = ses.clone();
    let mut cses = vec![cur.clone()];
    let mut steps = Vec::with_capacity(length + 1);
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for k in 0..=length {
        let sa = &left.steps[k];
        let sc = &right.steps[k];
        let h = extend_along(&cur.i, &sa.i)?
            .ok_or_else(|| Error::Precondition("sequence is not Hom(-, C)-exact".into()))?;
        let sum = direct_sum(alg, &[sa.mid.clone(), sc.mid.clone()])?;
        let dc = sc.i.compose(&cur.p);
        let d = sum.injections[0]
            .compose(&h)
            .mat
            .add(&sum.injections[1].compose(&dc).mat);
        let d = Morphism::raw(cur.mid.clone(), sum.module.clone(), d);
        let step = ShortExact::from_mono(d);
        // Induced maps on the next cosyzygies.
        let f_next = factor_through_epi(&sa.p, &step.p.compose(&sum.injections[0]))?;
        let g_next = factor_through_epi(&step.p, &sc.p.compose(&sum.projections[1]))?;
        cur = ShortExact::raw(f_next, g_next);
        cses.push(cur.clone());
        incl.push(sum.injections[0].clone());
        proj.push(sum.projections[1].clone());
        steps.push(step);
    }
    let differentials = (0..length)
        .map(|i| steps[i + 1].i.compose(&steps[i].p))
        .collect();
    let mut cosyzygies: Vec<Module> = steps.iter().map(|s: &ShortExact| s.left.clone()).collect();
    cosyzygies.push(cur.mid.clone());
    let mid = Coresolution {
        base: ses.mid.clone(),
        terms: steps.iter().map(|s| s.mid.clone()).collect(),
        differentials,
        augmentation: steps[0].i.clone(),
        cosyzygies,
        steps,
        length,
        special: true,
    };
    Ok(HorseshoeCo {
        left,
        mid,
        right,
        incl,
        proj,
        cosyzygy_ses: cses,
    })
}

/// A short exact sequence of resolutions `0 → P_A → P_B → P_C → 0`, degreewise split.
#[derive(Clone, Debug)]
pub struct HorseshoeRes {
    pub left: Resolution,
    pub mid: Resolution,
    pub right: Resolution,
    pub incl: Vec<Morphism>,
    pub proj: Vec<Morphism>,
    /// `0 → Ωᵏ A → Ωᵏ B → Ωᵏ C → 0` for `k = 0..=L+1`.
    pub syzygy_ses: Vec<ShortExact>,
}

pub fn horseshoe_resolution(d: &dyn SubcategoryProvider, ses: &ShortExact, length: usize) -> Result<HorseshoeRes> {
    require(d.is_precovering(), "precovering")?;
    let left = Resolution::build(&ses.left, length, |x| d.precover(x))?;
    let right = Resolution::build(&ses.right, length, |x| d.precover(x))?;
    horseshoe_from(ses, left, right)
}

pub(crate) fn horseshoe_from(ses: &ShortExact, left: Resolution, right: Resolution) -> Result<HorseshoeRes> {
    let length = left.length.min(right.length);
    let alg = ses.mid.algebra();
    let mut cur = ses.clone();
    let mut sses = vec![cur.clone()];
    let mut steps = Vec::with_capacity(length + 1);
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for k in 0..=length {
        let sa = &left.steps[k];
        let sc = &right.steps[k];
        let h = lift_through(&cur.p, &sc.p)?
            .ok_or_else(|| Error::Precondition("sequence is not Hom(D, -)-exact".into()))?;
        let sum = direct_sum(alg, &[sa.mid.clone(), sc.mid.clone()])?;
        let fa = cur.i.compose(&sa.p);
        let e = fa
            .mat
            .mul(&sum.projections[0].mat)
            .add(&h.mat.mul(&sum.projections[1].mat));
        let e = Morphism::raw(sum.module.clone(), cur.mid.clone(), e);
        let step = ShortExact::from_epi(e);
        let f_next = factor_through_mono(&step.i, &sum.injections[0].compose(&sa.i))?;
        let g_next = factor_through_mono(&sc.i, &sum.projections[1].compose(&step.i))?;
        cur = ShortExact::raw(f_next, g_next);
        sses.push(cur.clone());
        incl.push(sum.injections[0].clone());
        proj.push(sum.projections[1].clone());
        steps.push(step);
    }
    let differentials = (0..length)
        .map(|i| steps[i].i.compose(&steps[i + 1].p))
        .collect();
    let mut syzygies: Vec<Module> = steps.iter().map(|s: &ShortExact| s.right.clone()).collect();
    syzygies.push(cur.mid.clone());
    let mid = Resolution {
        base: ses.mid.clone(),
        terms: steps.iter().map(|s| s.mid.clone()).collect(),
        differentials,
        augmentation: steps[0].p.clone(),
        syzygies,
        steps,
        length,
        special: true,
    };
    Ok(HorseshoeRes {
        left,
        mid,
        right,
        incl,
        proj,
        syzygy_ses: sses,
    })
}

/// `Hom(M, I•)` as a cochain complex starting in degree 0.
pub fn hom_into_coresolution(m: &Module, r: &Coresolution) -> Result<crate::cochain::CochainComplex> {
    let dims = r
        .terms
        .iter()
        .map(|t| hom_space(m, t).map(|h| h.dim()))
        .collect::<Result<Vec<_>>>()?;
    let diffs = r
        .differentials
        .iter()
        .map(|d| postcompose_matrix(d, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::cochain::CochainComplex::new(m.prime(), 0, dims, diffs))
}

/// `Hom(P•, N)` as a cochain complex starting in degree 0.
pub fn hom_from_resolution(r: &Resolution, n: &Module) -> Result<crate::cochain::CochainComplex> {
    let dims = r
        .terms
        .iter()
        .map(|t| hom_space(t, n).map(|h| h.dim()))
        .collect::<Result<Vec<_>>>()?;
    let diffs = r
        .differentials
        .iter()
        .map(|d| precompose_matrix(d, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::cochain::CochainComplex::new(n.prime(), 0, dims, diffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::{path_a2, truncated_poly};
    use crate::algcore::structure::radical_quotient;
    use crate::algcore::{iso_class, simples};
    use crate::resolve::provider::{provider, ProviderKind};

    #[test]
    fn cosyzygies_over_truncated_polys() {
        let a = truncated_poly(2, 2).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let c = provider(ProviderKind::Inj, &a).unwrap();
        assert!(iso_class(&cosyzygy(&*c, &k, 1).unwrap(), &k).unwrap().is_iso());
        assert!(cosyzygy(&*c, &Module::regular(&a), 1).unwrap().is_zero());
        let a3 = truncated_poly(2, 3).unwrap();
        let c3 = provider(ProviderKind::Inj, &a3).unwrap();
        let m1 = radical_quotient(&a3, 1).unwrap();
        let m2 = radical_quotient(&a3, 2).unwrap();
        assert!(iso_class(&cosyzygy(&*c3, &m1, 1).unwrap(), &m2).unwrap().is_iso());
    }

    #[test]
    fn syzygies_over_truncated_polys() {
        let a = truncated_poly(2, 2).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let d = provider(ProviderKind::Prj, &a).unwrap();
        assert!(iso_class(&syzygy(&*d, &k, 1).unwrap(), &k).unwrap().is_iso());
        assert!(syzygy(&*d, &Module::regular(&a), 1).unwrap().is_zero());
        let a3 = truncated_poly(2, 3).unwrap();
        let d3 = provider(ProviderKind::Prj, &a3).unwrap();
        let m1 = radical_quotient(&a3, 1).unwrap();
        let m2 = radical_quotient(&a3, 2).unwrap();
        assert!(iso_class(&syzygy(&*d3, &m2, 1).unwrap(), &m1).unwrap().is_iso());
    }

    #[test]
    fn coresolution_shapes() {
        let a = truncated_poly(2, 2).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let r = proper_coresolution(&*c, &k, 3).unwrap();
        assert!(r.terms.iter().all(|t| t.dim() == 2));
        assert_eq!(r.differentials.len(), 3);
        for w in r.differentials.windows(2) {
            assert!(w[1].compose(&w[0]).is_zero());
        }
        let e = proper_coresolution(&*c, &Module::regular(&a), 2).unwrap();
        assert_eq!(e.terms[0].dim(), 2);
        assert!(e.terms[1..].iter().all(|t| t.is_zero()));

        let a3 = truncated_poly(2, 3).unwrap();
        let c3 = provider(ProviderKind::Inj, &a3).unwrap();
        let m1 = radical_quotient(&a3, 1).unwrap();
        let r = proper_coresolution(&*c3, &m1, 2).unwrap();
        assert!(r.terms.iter().all(|t| t.dim() == 3));
        let dims: Vec<usize> = r.cosyzygies[1..].iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![2, 1, 2]);
    }

    #[test]
    fn resolution_shapes() {
        let a = truncated_poly(2, 2).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let d = provider(ProviderKind::Prj, &a).unwrap();
        let r = proper_resolution(&*d, &k, 3).unwrap();
        assert!(r.terms.iter().all(|t| t.dim() == 2));
        let a3 = truncated_poly(2, 3).unwrap();
        let d3 = provider(ProviderKind::Prj, &a3).unwrap();
        let m2 = radical_quotient(&a3, 2).unwrap();
        let r = proper_resolution(&*d3, &m2, 2).unwrap();
        let dims: Vec<usize> = r.syzygies.iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![2, 1, 2, 1]);
        let p = proper_resolution(&*d3, &Module::regular(&a3), 2).unwrap();
        assert!(p.terms[1..].iter().all(|t| t.is_zero()));
    }

    #[test]
    fn horseshoes_are_short_exact() {
        let a = path_a2(3).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let d = provider(ProviderKind::Prj, &a).unwrap();
        let s = simples(&a).unwrap();
        let ses = ShortExact::split(&s[0], &s[1]).unwrap();
        let h = horseshoe_coresolution(&*c, &ses, 2).unwrap();
        for (k, t) in h.mid.terms.iter().enumerate() {
            assert_eq!(t.dim(), h.left.terms[k].dim() + h.right.terms[k].dim());
        }
        for w in h.mid.differentials.windows(2) {
            assert!(w[1].compose(&w[0]).is_zero());
        }
        let cover = ShortExact::from_epi(projective_cover(&s[0]).unwrap());
        let h = horseshoe_resolution(&*d, &cover, 2).unwrap();
        assert_eq!(h.mid.base, cover.mid);
        assert!(h.syzygy_ses.iter().all(|x| x.mid.dim() == x.left.dim() + x.right.dim()));
    }
}
