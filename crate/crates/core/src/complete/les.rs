//! Long exact sequences of complete cohomology from a short exact sequence
//! in either variable.

use serde::Serialize;

use crate::algcore::Module;
use crate::cochain::{ExactnessReport, LongSequence};
use crate::error::{Error, Result};
use crate::resolve::{certify_ses, cosyzygy, horseshoe_coresolution, relative_long_sequence, Coresolution, ShortExact, Side, SubcategoryProvider};

use super::periodic::tail_system;
use super::text::ColimitParams;

/// (a): the sequence sits in the second variable and `M` is fixed;
/// (b): it sits in the first variable and `N` is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TextSide {
    A,
    B,
}

#[derive(Clone, Debug, Serialize)]
pub struct TextLes {
    pub side: TextSide,
    /// The cosyzygy stage `K` at which the sequence is read off.
    pub stage: i64,
    /// Whether every term's system is stable from `K` for a full window.
    pub stabilized: bool,
    #[serde(skip)]
    pub sequence: LongSequence,
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub report: ExactnessReport,
}

impl TextLes {
    pub fn is_exact(&self) -> bool {
        self.report.all_exact()
    }
}

/// `Textⁿ` over `from..=to` for the three terms, read at the first stage `K`
/// where all nine systems `Ext_AC^{n+K}(Σ^K −, −)` have stabilized. The
/// sequence at that stage is the relative Ext sequence of the `K`-th
/// cosyzygy sequence (side b) or of `Σ^K M` against the sequence (side a).
pub fn les_text(
    c: &dyn SubcategoryProvider,
    ses: &ShortExact,
    fixed: &Module,
    side: TextSide,
    from: i64,
    to: i64,
    params: ColimitParams,
) -> Result<TextLes> {
    if from > to {
        return Err(Error::Precondition("empty degree range".into()));
    }
    if !c.is_preenveloping() {
        return Err(Error::Precondition("provider is not preenveloping".into()));
    }
    certify_ses(&c.test_objects(), ses, false)?;
    let w = params.window.max(1) as i64;
    let k0 = (-from).max(0);
    let last = k0 + params.i_max as i64;
    let len = (last + w + to.max(0) + 3) as usize;
    let h = horseshoe_coresolution(c, ses, len)?;
    let canon = Coresolution::build(fixed, len, |x| c.preenvelope(x))?;
    let pairs: Vec<(&Coresolution, &Coresolution)> = match side {
        TextSide::A => vec![(&canon, &h.left), (&canon, &h.mid), (&canon, &h.right)],
        TextSide::B => vec![(&h.left, &canon), (&h.mid, &canon), (&h.right, &canon)],
    };
    let mut iso = vec![true; (last - k0 + w) as usize];
    for (i, j) in &pairs {
        for n in from..=to {
            let sys = tail_system(*i, *j, n, k0, last + w)?;
            for (t, m) in sys.maps.iter().enumerate() {
                iso[t] &= m.is_invertible();
            }
        }
    }
    let found = (0..=(last - k0) as usize).find(|&s| iso[s..s + w as usize].iter().all(|&b| b));
    let stage = k0 + found.unwrap_or((last - k0) as usize) as i64;
    let (a, b) = ((from + stage) as usize, (to + stage) as usize);
    let sequence = match side {
        TextSide::A => {
            let x = cosyzygy(c, fixed, stage as usize)?;
            relative_long_sequence(c, ses, &x, Side::Second, a, b)?
        }
        TextSide::B => relative_long_sequence(c, &h.cosyzygy_ses[stage as usize], fixed, Side::First, a, b)?,
    };
    let report = sequence.report();
    Ok(TextLes {
        side,
        stage,
        stabilized: found.is_some(),
        labels: sequence.labels.clone(),
        dims: sequence.dims.clone(),
        sequence,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::{path_a2, truncated_poly};
    use crate::algcore::{indec_injectives, indecomposables, simples, socle};
    use crate::complete::text_c;
    use crate::resolve::{provider, ProviderKind};

    fn p() -> ColimitParams {
        ColimitParams::default()
    }

    #[test]
    fn split_sequences_give_exact_sequences() {
        let a = truncated_poly(2, 3).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let ms = indecomposables(&a).unwrap();
        let ses = ShortExact::split(&ms[0], &ms[1]).unwrap();
        for side in [TextSide::A, TextSide::B] {
            let les = les_text(&*c, &ses, &ms[0], side, -1, 1, p()).unwrap();
            assert!(les.stabilized);
            assert!(les.is_exact(), "{:?}", les.report.first_failure());
            // split: every connecting map vanishes
            for (m, l) in les.sequence.maps.iter().zip(les.labels.iter()) {
                if l.ends_with("(C)") {
                    assert!(m.is_zero(), "connecting map out of {l}");
                }
            }
        }
    }

    #[test]
    fn dual_numbers_sequence_side_a() {
        let a = truncated_poly(2, 2).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let reg = Module::regular(&a);
        let (_, incl) = socle(&reg).unwrap();
        let ses = ShortExact::from_mono(incl);
        let les = les_text(&*c, &ses, &k, TextSide::A, -1, 1, p()).unwrap();
        assert!(les.stabilized);
        assert!(les.is_exact(), "{:?}", les.report.first_failure());
        // Text(k, k) = 1 and Text(k, A) = 0 in every degree
        let text_k = text_c(&*c, &k, &k, 0, p()).unwrap().dim();
        assert_eq!(text_k, 1);
        for (d, l) in les.dims.iter().zip(&les.labels) {
            let want = if l.ends_with("(B)") { 0 } else if l == "0" { 0 } else { 1 };
            assert_eq!(*d, want, "{l}");
        }
    }

    #[test]
    fn injective_fixed_slot_gives_zeros() {
        for alg in [truncated_poly(2, 3).unwrap(), path_a2(2).unwrap()] {
            let c = provider(ProviderKind::Inj, &alg).unwrap();
            let reg = Module::regular(&alg);
            let (_, incl) = socle(&reg).unwrap();
            let ses = ShortExact::from_mono(incl);
            for e in indec_injectives(&alg).unwrap() {
                let les = les_text(&*c, &ses, &e, TextSide::B, -1, 1, p()).unwrap();
                assert!(les.stabilized);
                assert!(les.is_exact());
                assert!(les.dims.iter().all(|&d| d == 0), "{:?}", les.dims);
            }
        }
    }

    #[test]
    fn requires_a_preenveloping_provider() {
        let a = truncated_poly(2, 3).unwrap();
        let c = provider(ProviderKind::Prj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let ses = ShortExact::split(&k, &k).unwrap();
        assert!(les_text(&*c, &ses, &k, TextSide::A, 0, 1, p()).is_err());
    }
}
