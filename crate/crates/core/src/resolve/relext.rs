//! Relative Ext groups and relative dimensions.

use std::fmt;

use serde::Serialize;

use crate::algcore::Module;
use crate::cochain::{CochainComplex, Subquotient};
use crate::error::Result;

use super::coresolution::{hom_from_resolution, hom_into_coresolution, Coresolution, Resolution};
use super::provider::{Membership, SubcategoryProvider};

/// `Hⁱ` of a Hom complex, with the complex kept for induced maps.
#[derive(Clone, Debug)]
pub struct RelExt {
    pub degree: usize,
    pub complex: CochainComplex,
    pub cohomology: Subquotient,
}

impl RelExt {
    pub fn dim(&self) -> usize {
        self.cohomology.dim()
    }
}

/// `Hⁱ(Hom(M, I))` for a proper coresolution `N ⇒ I`.
pub fn relative_ext_c(c: &dyn SubcategoryProvider, m: &Module, n: &Module, i: usize) -> Result<RelExt> {
    let r = Coresolution::build(n, i + 1, |x| c.preenvelope(x))?;
    let complex = hom_into_coresolution(m, &r)?;
    let cohomology = complex.cohomology(i as i64);
    Ok(RelExt {
        degree: i,
        complex,
        cohomology,
    })
}

/// `Hⁱ(Hom(P, N))` for a proper resolution `P ⇒ M`.
pub fn relative_ext_d(d: &dyn SubcategoryProvider, m: &Module, n: &Module, i: usize) -> Result<RelExt> {
    let r = Resolution::build(m, i + 1, |x| d.precover(x))?;
    let complex = hom_from_resolution(&r, n)?;
    let cohomology = complex.cohomology(i as i64);
    Ok(RelExt {
        degree: i,
        complex,
        cohomology,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum DimOutcome {
    Finite(usize),
    /// Larger than the bound.
    Exceeds(usize),
    /// Membership could not be decided at this level.
    Undetermined(usize),
}

impl fmt::Display for DimOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimOutcome::Finite(d) => write!(f, "{d}"),
            DimOutcome::Exceeds(b) => write!(f, "> {b}"),
            DimOutcome::Undetermined(n) => write!(f, "undetermined at level {n}"),
        }
    }
}

fn first_member(mut next: impl FnMut(usize) -> Result<Module>, member: impl Fn(&Module) -> Membership, bound: usize) -> Result<DimOutcome> {
    for n in 0..=bound {
        let k = next(n)?;
        match member(&k) {
            Membership::Yes => return Ok(DimOutcome::Finite(n)),
            Membership::No => {}
            Membership::Undetermined => return Ok(DimOutcome::Undetermined(n)),
        }
    }
    Ok(DimOutcome::Exceeds(bound))
}

/// Smallest `n ≤ bound` whose `n`-th cosyzygy lies in `C`.
pub fn c_injective_dim(c: &dyn SubcategoryProvider, n: &Module, bound: usize) -> Result<DimOutcome> {
    let mut cur = n.clone();
    first_member(
        |k| {
            if k > 0 {
                cur = c.preenvelope(&cur)?.right;
            }
            Ok(cur.clone())
        },
        |m| c.membership(m),
        bound,
    )
}

/// Smallest `n ≤ bound` whose `n`-th syzygy lies in `D`.
pub fn d_projective_dim(d: &dyn SubcategoryProvider, m: &Module, bound: usize) -> Result<DimOutcome> {
    let mut cur = m.clone();
    first_member(
        |k| {
            if k > 0 {
                cur = d.precover(&cur)?.left;
            }
            Ok(cur.clone())
        },
        |x| d.membership(x),
        bound,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::{cyclic_group, path_a2, truncated_poly};
    use crate::algcore::{indecomposables, simples};
    use crate::resolve::ext::ext_dim;
    use crate::resolve::provider::{provider, ProviderKind};

    #[test]
    fn relative_ext_agrees_with_ext() {
        for a in [truncated_poly(2, 3).unwrap(), path_a2(2).unwrap(), cyclic_group(2, 2).unwrap()] {
            let c = provider(ProviderKind::Inj, &a).unwrap();
            let d = provider(ProviderKind::Prj, &a).unwrap();
            let ms = indecomposables(&a).unwrap();
            for m in &ms {
                for n in &ms {
                    for i in 0..=4 {
                        let e = ext_dim(m, n, i).unwrap();
                        assert_eq!(relative_ext_c(&*c, m, n, i).unwrap().dim(), e);
                        assert_eq!(relative_ext_d(&*d, m, n, i).unwrap().dim(), e);
                    }
                }
            }
        }
    }

    #[test]
    fn relative_ext_into_injective() {
        let a = truncated_poly(2, 2).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let r = Module::regular(&a);
        for i in 1..4 {
            assert_eq!(relative_ext_c(&*c, &k, &r, i).unwrap().dim(), 0);
        }
    }

    #[test]
    fn dimension_examples() {
        let a = truncated_poly(2, 2).unwrap();
        let c = provider(ProviderKind::Inj, &a).unwrap();
        let d = provider(ProviderKind::Prj, &a).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let r = Module::regular(&a);
        assert_eq!(c_injective_dim(&*c, &r, 3).unwrap(), DimOutcome::Finite(0));
        assert_eq!(c_injective_dim(&*c, &k, 5).unwrap(), DimOutcome::Exceeds(5));
        assert_eq!(c_injective_dim(&*c, &k, 5).unwrap().to_string(), "> 5");
        assert_eq!(d_projective_dim(&*d, &r, 3).unwrap(), DimOutcome::Finite(0));
        assert_eq!(d_projective_dim(&*d, &k, 5).unwrap(), DimOutcome::Exceeds(5));
        let a2 = path_a2(2).unwrap();
        let c2 = provider(ProviderKind::Inj, &a2).unwrap();
        let d2 = provider(ProviderKind::Prj, &a2).unwrap();
        for s in simples(&a2).unwrap() {
            assert!(matches!(c_injective_dim(&*c2, &s, 2).unwrap(), DimOutcome::Finite(x) if x <= 1));
            assert!(matches!(d_projective_dim(&*d2, &s, 2).unwrap(), DimOutcome::Finite(x) if x <= 1));
        }
    }

    #[test]
    fn dimension_shift() {
        for a in [truncated_poly(2, 3).unwrap(), path_a2(2).unwrap()] {
            let c = provider(ProviderKind::Inj, &a).unwrap();
            let ms = indecomposables(&a).unwrap();
            for m in &ms {
                for n in &ms {
                    let sn = c.preenvelope(n).unwrap().right;
                    for i in 1..3 {
                        assert_eq!(
                            relative_ext_c(&*c, m, n, i + 1).unwrap().dim(),
                            relative_ext_c(&*c, m, &sn, i).unwrap().dim()
                        );
                    }
                }
            }
        }
    }
}
