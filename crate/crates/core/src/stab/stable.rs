//! Stable Hom: Hom modulo maps factoring through the subcategory.

use std::sync::Arc;

use serde::Serialize;

use crate::algcore::{hom_space, HomSpace, Module, Morphism};
use crate::cochain::LongSequence;
use crate::error::{Error, Result};
use crate::linalg::{quotient, Mat, Quotient, Subspace};
use crate::resolve::coresolution::{certify_ses, horseshoe_coresolution, horseshoe_resolution};
use crate::resolve::lift::{extend_along, factor_through_epi, factor_through_mono, lift_through, postcompose_matrix, precompose_matrix};
use crate::resolve::{ShortExact, SubcategoryProvider};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StableSide {
    /// Modulo maps factoring through a preenveloping class.
    C,
    /// Modulo maps factoring through a precovering class.
    D,
}

fn side_of(prov: &dyn SubcategoryProvider) -> Result<StableSide> {
    if prov.is_preenveloping() {
        Ok(StableSide::C)
    } else if prov.is_precovering() {
        Ok(StableSide::D)
    } else {
        Err(Error::Precondition("provider has no approximations".into()))
    }
}

/// Maps `M → N` factoring through the preenvelope of `M` (C side) or the
/// precover of `N` (D side), in Hom coordinates.
pub fn factoring_subspace(prov: &dyn SubcategoryProvider, m: &Module, n: &Module) -> Result<Subspace> {
    Ok(match side_of(prov)? {
        StableSide::C => {
            let d = prov.preenvelope(m)?.i;
            precompose_matrix(&d, n)?.image()
        }
        StableSide::D => {
            let e = prov.precover(n)?.p;
            postcompose_matrix(&e, m)?.image()
        }
    })
}

#[derive(Clone, Debug)]
pub struct StableHom {
    pub source: Module,
    pub target: Module,
    pub side: StableSide,
    pub total: Arc<HomSpace>,
    pub factoring: Subspace,
    q: Quotient,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.q.qdim
    }

    /// Hom coordinates → stable coordinates.
    pub fn quotient_proj(&self) -> &Mat {
        &self.q.proj
    }

    pub fn class(&self, f: &Mat) -> Vec<u32> {
        self.q.proj.apply(&self.total.coords(f))
    }

    pub fn representative(&self, c: &[u32]) -> Mat {
        self.total.element(&self.q.section.apply(c))
    }

    pub fn basis_representatives(&self) -> Vec<Mat> {
        (0..self.dim())
            .map(|j| {
                let mut e = vec![0; self.dim()];
                e[j] = 1;
                self.representative(&e)
            })
            .collect()
    }

    /// Matrix of a linear operation on representatives, into `target`.
    pub fn map_into(&self, target: &StableHom, op: impl Fn(&Mat) -> Mat) -> Mat {
        let cols: Vec<Vec<u32>> = self
            .basis_representatives()
            .iter()
            .map(|r| target.class(&op(r)))
            .collect();
        Mat::from_cols(self.source.prime(), target.dim(), &cols)
    }
}

pub fn stable_hom(prov: &dyn SubcategoryProvider, m: &Module, n: &Module) -> Result<StableHom> {
    let total = hom_space(m, n)?;
    let factoring = factoring_subspace(prov, m, n)?;
    let q = quotient(total.dim(), &factoring)?;
    Ok(StableHom {
        source: m.clone(),
        target: n.clone(),
        side: side_of(prov)?,
        total,
        factoring,
        q,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CokernelComparison {
    pub dim: usize,
    pub stable_dim: usize,
    /// Identity-shaped iff the two presentations coincide.
    pub comparison: Vec<Vec<u32>>,
    pub agrees: bool,
}

/// The cokernel of `F(d)` computed independently: the span of all composites
/// `M → T → N` through the provider's test objects, compared to `stable_hom`.
pub fn stable_hom_via_cokernel(prov: &dyn SubcategoryProvider, m: &Module, n: &Module) -> Result<CokernelComparison> {
    let total = hom_space(m, n)?;
    let p = m.prime();
    let mut vecs = Vec::new();
    for t in prov.test_objects() {
        let into = hom_space(m, &t)?;
        let out = hom_space(&t, n)?;
        for a in into.basis() {
            for b in out.basis() {
                vecs.push(total.coords(&b.mul(a)));
            }
        }
    }
    let through = Subspace::from_vectors(p, total.dim(), &vecs);
    let st = stable_hom(prov, m, n)?;
    let q = quotient(total.dim(), &through)?;
    // stable coords ← hom coords ← cokernel coords
    let comparison = st.q.proj.mul(&q.section);
    let agrees = through == st.factoring && comparison.is_invertible();
    Ok(CokernelComparison {
        dim: q.qdim,
        stable_dim: st.dim(),
        comparison: comparison.row_vecs(),
        agrees,
    })
}

/// `Σf : ΣX → ΣY`, with the extension `I_X → I_Y` used to build it.
pub fn sigma_map(c: &dyn SubcategoryProvider, f: &Morphism) -> Result<(Morphism, Morphism)> {
    let sx = c.preenvelope(&f.source)?;
    let sy = c.preenvelope(&f.target)?;
    let g = extend_along(&sx.i, &sy.i.compose(f))?
        .ok_or_else(|| Error::Precondition("preenvelope does not extend".into()))?;
    let sf = factor_through_epi(&sx.p, &sy.p.compose(&g))?;
    Ok((g, sf))
}

/// `Ωf : ΩX → ΩY`, with the lift `P_X → P_Y` used to build it.
pub fn omega_map_d(d: &dyn SubcategoryProvider, f: &Morphism) -> Result<(Morphism, Morphism)> {
    let sx = d.precover(&f.source)?;
    let sy = d.precover(&f.target)?;
    let g = lift_through(&sy.p, &f.compose(&sx.p))?
        .ok_or_else(|| Error::Precondition("precover does not lift".into()))?;
    let of = factor_through_mono(&sy.i, &g.compose(&sx.i))?;
    Ok((g, of))
}

/// `φ ↦ φ ∘ g` on stable classes, `st(g.target, N) → st(g.source, N)`.
pub fn stable_precompose(g: &Morphism, from: &StableHom, to: &StableHom) -> Mat {
    from.map_into(to, |phi| phi.mul(&g.mat))
}

/// `φ ↦ g ∘ φ` on stable classes, `st(M, g.source) → st(M, g.target)`.
pub fn stable_postcompose(g: &Morphism, from: &StableHom, to: &StableHom) -> Mat {
    from.map_into(to, |phi| g.mat.mul(phi))
}

/// `w : M'' → ΣM'` for a Hom(−, C)-exact `0 → M' → M → M'' → 0`, using the
/// given preenvelope of `M'`.
pub fn sigma_connecting(ses: &ShortExact, pre: &ShortExact) -> Result<Morphism> {
    let h = extend_along(&ses.i, &pre.i)?
        .ok_or_else(|| Error::Precondition("sequence is not Hom(-, C)-exact".into()))?;
    factor_through_epi(&ses.p, &pre.p.compose(&h))
}

/// `w : ΩN'' → N'` for a Hom(D, −)-exact `0 → N' → N → N'' → 0`.
pub fn omega_connecting(ses: &ShortExact, pre: &ShortExact) -> Result<Morphism> {
    let u = lift_through(&ses.p, &pre.p)?
        .ok_or_else(|| Error::Precondition("sequence is not Hom(D, -)-exact".into()))?;
    factor_through_mono(&ses.i, &u.compose(&pre.i))
}

/// `F_C(ΣM'') → F_C(ΣM) → F_C(ΣM') → F_C(M'') → F_C(M) → F_C(M')` for
/// `F = Hom(−, N)`, with `ΣM` taken from the horseshoe.
///
/// On the D side: `G_D(ΩN') → G_D(ΩN) → G_D(ΩN'') → G_D(N') → G_D(N) → G_D(N'')`
/// for `G = Hom(M, −)` and the sequence in the second variable.
pub fn six_term_sequence(prov: &dyn SubcategoryProvider, ses: &ShortExact, other: &Module) -> Result<LongSequence> {
    let tests = prov.test_objects();
    match side_of(prov)? {
        StableSide::C => {
            certify_ses(&tests, ses, false)?;
            let h = horseshoe_coresolution(prov, ses, 0)?;
            let s1 = &h.cosyzygy_ses[1];
            let n = other;
            let st = |x: &Module| stable_hom(prov, x, n);
            let (a0, a1, a2) = (st(&s1.right)?, st(&s1.mid)?, st(&s1.left)?);
            let (b0, b1, b2) = (st(&ses.right)?, st(&ses.mid)?, st(&ses.left)?);
            let w = sigma_connecting(ses, &h.left.steps[0])?;
            debug_assert_eq!(w.target, s1.left);
            let mut seq = LongSequence::start("F(ΣM'')", a0.dim());
            seq.push(stable_precompose(&s1.p, &a0, &a1), "F(ΣM)");
            seq.push(stable_precompose(&s1.i, &a1, &a2), "F(ΣM')");
            seq.push(stable_precompose(&w, &a2, &b0), "F(M'')");
            seq.push(stable_precompose(&ses.p, &b0, &b1), "F(M)");
            seq.push(stable_precompose(&ses.i, &b1, &b2), "F(M')");
            Ok(seq)
        }
        StableSide::D => {
            certify_ses(&tests, ses, true)?;
            let h = horseshoe_resolution(prov, ses, 0)?;
            let s1 = &h.syzygy_ses[1];
            let m = other;
            let st = |x: &Module| stable_hom(prov, m, x);
            let (a0, a1, a2) = (st(&s1.left)?, st(&s1.mid)?, st(&s1.right)?);
            let (b0, b1, b2) = (st(&ses.left)?, st(&ses.mid)?, st(&ses.right)?);
            let w = omega_connecting(ses, &h.right.steps[0])?;
            debug_assert_eq!(w.source, s1.right);
            let mut seq = LongSequence::start("G(ΩN')", a0.dim());
            seq.push(stable_postcompose(&s1.i, &a0, &a1), "G(ΩN)");
            seq.push(stable_postcompose(&s1.p, &a1, &a2), "G(ΩN'')");
            seq.push(stable_postcompose(&w, &a2, &b0), "G(N')");
            seq.push(stable_postcompose(&ses.i, &b0, &b1), "G(N)");
            seq.push(stable_postcompose(&ses.p, &b1, &b2), "G(N'')");
            Ok(seq)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::{cyclic_group, path_a2, truncated_poly};
    use crate::algcore::structure::radical_quotient;
    use crate::algcore::{indec_injectives, indec_projectives, indecomposables, injective_envelope, projective_cover, simples};
    use crate::resolve::{provider, Membership, PaddedProvider, ProviderKind};

    #[test]
    fn stable_hom_examples() {
        let a = truncated_poly(2, 2).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        assert_eq!(factoring_subspace(&*c, &k, &k).unwrap().dim(), 0);
        assert_eq!(stable_hom(&*c, &k, &k).unwrap().dim(), 1);
        let r = Module::regular(&a);
        for m in indecomposables(&a).unwrap() {
            assert_eq!(stable_hom(&*c, &r, &m).unwrap().dim(), 0);
            let f = factoring_subspace(&*c, &m, &r).unwrap();
            assert!(f.is_full());
        }
        let a3 = truncated_poly(2, 3).unwrap();
        let c3 = provider(ProviderKind::Inj, &a3).unwrap();
        let m2 = radical_quotient(&a3, 2).unwrap();
        assert_eq!(stable_hom(&*c3, &m2, &m2).unwrap().dim(), 1);
    }

    fn presets() -> Vec<Arc<crate::algcore::Algebra>> {
        vec![
            truncated_poly(2, 2).unwrap(),
            truncated_poly(2, 3).unwrap(),
            cyclic_group(2, 2).unwrap(),
            path_a2(2).unwrap(),
        ]
    }

    #[test]
    fn cokernel_presentation_agrees() {
        for a in presets() {
            for kind in [ProviderKind::Inj, ProviderKind::Prj] {
                let c = provider(kind, &a).unwrap();
                let ms = indecomposables(&a).unwrap();
                for m in &ms {
                    for n in &ms {
                        let v = stable_hom_via_cokernel(&*c, m, n).unwrap();
                        assert!(v.agrees, "{kind:?}");
                        assert_eq!(v.dim, v.stable_dim);
                    }
                }
                let z = Module::zero(&a);
                assert_eq!(stable_hom_via_cokernel(&*c, &z, &ms[0]).unwrap().dim, 0);
            }
        }
    }

    #[test]
    fn independent_of_preenvelope_choice() {
        for a in presets() {
            let c = provider(ProviderKind::Inj, &a).unwrap();
            let d = provider(ProviderKind::Prj, &a).unwrap();
            let pc = PaddedProvider::new(c.clone(), indec_injectives(&a).unwrap().remove(0)).unwrap();
            let pd = PaddedProvider::new(d.clone(), indec_projectives(&a).unwrap().remove(0)).unwrap();
            let ms = indecomposables(&a).unwrap();
            for m in &ms {
                for n in &ms {
                    assert_eq!(stable_hom(&*c, m, n).unwrap().dim(), stable_hom(&pc, m, n).unwrap().dim());
                    assert_eq!(stable_hom(&*d, m, n).unwrap().dim(), stable_hom(&pd, m, n).unwrap().dim());
                }
            }
        }
    }

    #[test]
    fn vanishing_iff_member() {
        for a in presets() {
            let c = provider(ProviderKind::Inj, &a).unwrap();
            let ms = indecomposables(&a).unwrap();
            for n in &ms {
                let all_zero = ms.iter().all(|m| stable_hom(&*c, m, n).unwrap().dim() == 0);
                assert_eq!(all_zero, c.membership(n) == Membership::Yes);
            }
        }
    }

    #[test]
    fn six_term_sequences_are_exact() {
        for a in presets() {
            let c = provider(ProviderKind::Inj, &a).unwrap();
            let d = provider(ProviderKind::Prj, &a).unwrap();
            let ms = indecomposables(&a).unwrap();
            let s = simples(&a).unwrap();
            let mut seqs = vec![ShortExact::split(&s[0], &ms[ms.len() - 1]).unwrap()];
            for m in &ms {
                seqs.push(ShortExact::from_mono(injective_envelope(m).unwrap()));
                seqs.push(ShortExact::from_epi(projective_cover(m).unwrap()));
            }
            for ses in &seqs {
                for o in &ms {
                    for p in [&c, &d] {
                        let seq = six_term_sequence(&**p, ses, o).unwrap();
                        let r = seq.report();
                        assert!(r.all_exact(), "{:?}", r.first_failure());
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_of_identity_is_stably_identity() {
        let a = truncated_poly(3, 3).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let d = provider(ProviderKind::Prj, &a).unwrap();
        for m in indecomposables(&a).unwrap() {
            let id = Morphism::identity(&m);
            let (_, s) = sigma_map(&*c, &id).unwrap();
            let diff = s.mat.sub(&Mat::identity(3, s.source.dim()));
            let st = stable_hom(&*c, &s.source, &s.target).unwrap();
            assert!(st.class(&diff).iter().all(|&x| x == 0));
            let (_, o) = omega_map_d(&*d, &id).unwrap();
            assert_eq!(o.source, o.target);
        }
    }
}
