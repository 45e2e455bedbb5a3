//! Long exact sequences of relative Ext groups.

use serde::Serialize;

use crate::algcore::Module;
use crate::cochain::{long_exact_sequence, CochainComplex, ExactnessReport, LongSequence};
use crate::error::{Error, Result};
use crate::linalg::Mat;

use super::coresolution::{
    certify_ses, hom_from_resolution, hom_into_coresolution, horseshoe_coresolution, horseshoe_resolution,
    Coresolution, Resolution,
};
use super::lift::{postcompose_matrix, precompose_matrix};
use super::provider::{ShortExact, SubcategoryProvider};

/// Which variable of `Ext(−, −)` the short exact sequence sits in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

/// The long sequence `Hⁱ(A) → Hⁱ(B) → Hⁱ(C) → Hⁱ⁺¹(A) → …` over `from..=to`.
pub fn relative_long_sequence(
    prov: &dyn SubcategoryProvider,
    ses: &ShortExact,
    other: &Module,
    side: Side,
    from: usize,
    to: usize,
) -> Result<LongSequence> {
    let len = to + 2;
    let tests = prov.test_objects();
    let (a, b, c, f, g): (CochainComplex, CochainComplex, CochainComplex, Vec<Mat>, Vec<Mat>);
    if prov.is_preenveloping() {
        certify_ses(&tests, ses, false)?;
        match side {
            Side::First => {
                let r = Coresolution::build(other, len, |x| prov.preenvelope(x))?;
                a = hom_into_coresolution(&ses.right, &r)?;
                b = hom_into_coresolution(&ses.mid, &r)?;
                c = hom_into_coresolution(&ses.left, &r)?;
                f = r.terms.iter().map(|t| precompose_matrix(&ses.p, t)).collect::<Result<_>>()?;
                g = r.terms.iter().map(|t| precompose_matrix(&ses.i, t)).collect::<Result<_>>()?;
            }
            Side::Second => {
                let h = horseshoe_coresolution(prov, ses, len)?;
                a = hom_into_coresolution(other, &h.left)?;
                b = hom_into_coresolution(other, &h.mid)?;
                c = hom_into_coresolution(other, &h.right)?;
                f = h.incl.iter().map(|m| postcompose_matrix(m, other)).collect::<Result<_>>()?;
                g = h.proj.iter().map(|m| postcompose_matrix(m, other)).collect::<Result<_>>()?;
            }
        }
    } else if prov.is_precovering() {
        certify_ses(&tests, ses, true)?;
        match side {
            Side::Second => {
                let r = Resolution::build(other, len, |x| prov.precover(x))?;
                a = hom_from_resolution(&r, &ses.left)?;
                b = hom_from_resolution(&r, &ses.mid)?;
                c = hom_from_resolution(&r, &ses.right)?;
                f = r.terms.iter().map(|t| postcompose_matrix(&ses.i, t)).collect::<Result<_>>()?;
                g = r.terms.iter().map(|t| postcompose_matrix(&ses.p, t)).collect::<Result<_>>()?;
            }
            Side::First => {
                let h = horseshoe_resolution(prov, ses, len)?;
                a = hom_from_resolution(&h.right, other)?;
                b = hom_from_resolution(&h.mid, other)?;
                c = hom_from_resolution(&h.left, other)?;
                f = h.proj.iter().map(|m| precompose_matrix(m, other)).collect::<Result<_>>()?;
                g = h.incl.iter().map(|m| precompose_matrix(m, other)).collect::<Result<_>>()?;
            }
        }
    } else {
        return Err(Error::Precondition("provider has no approximations".into()));
    }
    let fk = |k: i64| f[k as usize].clone();
    let gk = |k: i64| g[k as usize].clone();
    let mut seq = long_exact_sequence(&a, &b, &c, &fk, &gk, from as i64, to as i64);
    if from == 0 {
        // Prefix with 0 → H⁰(A) so left exactness is checked too.
        let mut pre = LongSequence::start("0", 0);
        pre.push(Mat::zeros(a.p, seq.dims[0], 0), seq.labels[0].clone());
        for (m, l) in seq.maps.into_iter().zip(seq.labels.into_iter().skip(1)) {
            pre.push(m, l);
        }
        seq = pre;
    }
    Ok(seq)
}

pub fn les_relative(
    prov: &dyn SubcategoryProvider,
    ses: &ShortExact,
    other: &Module,
    side: Side,
    from: usize,
    to: usize,
) -> Result<ExactnessReport> {
    Ok(relative_long_sequence(prov, ses, other, side, from, to)?.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::{path_a2, truncated_poly};
    use crate::algcore::{indecomposables, injective_envelope, projective_cover, simples};
    use crate::resolve::provider::{provider, ProviderKind};

    #[test]
    fn socle_sequence_is_exact() {
        let a = truncated_poly(2, 2).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let ses = ShortExact::from_mono(injective_envelope(&k).unwrap());
        for kind in [ProviderKind::Inj, ProviderKind::Prj] {
            let p = provider(kind, &a).unwrap();
            for side in [Side::First, Side::Second] {
                let seq = relative_long_sequence(&*p, &ses, &k, side, 0, 3).unwrap();
                let r = seq.report();
                assert!(r.all_exact(), "{kind:?} {side:?} {:?}", r.first_failure());
                assert!(seq.dims.iter().any(|&d| d > 0));
            }
        }
    }

    #[test]
    fn split_and_zero_cases() {
        let a = path_a2(3).unwrap();
        let s = simples(&a).unwrap();
        let split = ShortExact::split(&s[0], &s[1]).unwrap();
        let zero = Module::zero(&a);
        for kind in [ProviderKind::Inj, ProviderKind::Prj] {
            let p = provider(kind, &a).unwrap();
            for side in [Side::First, Side::Second] {
                let seq = relative_long_sequence(&*p, &split, &s[0], side, 0, 2).unwrap();
                assert!(seq.report().all_exact());
                // Connecting maps are every third map after the prefix.
                for (j, m) in seq.maps.iter().enumerate().skip(1) {
                    if j % 3 == 0 {
                        assert!(m.is_zero());
                    }
                }
                let z = relative_long_sequence(&*p, &split, &zero, side, 0, 2).unwrap();
                assert!(z.dims.iter().all(|&d| d == 0));
            }
        }
    }

    #[test]
    fn exact_on_all_cover_sequences() {
        let a = truncated_poly(3, 3).unwrap();
        let ms = indecomposables(&a).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let d = provider(ProviderKind::Prj, &a).unwrap();
        for m in &ms {
            let ses = ShortExact::from_epi(projective_cover(m).unwrap());
            for o in &ms {
                for p in [&c, &d] {
                    for side in [Side::First, Side::Second] {
                        assert!(les_relative(&**p, &ses, o, side, 0, 3).unwrap().all_exact());
                    }
                }
            }
        }
    }
}
