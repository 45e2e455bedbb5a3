//! Left satellites of Hom/Ext functors, their connecting maps, the
//! five-term sequences and mixed satellites.

use serde::Serialize;

use crate::algcore::Module;
use crate::cochain::LongSequence;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Mat, Subspace};
use crate::resolve::coresolution::certify_ses;
use crate::resolve::{
    co_connecting, contra_connecting, cosyzygy, ext, ext_co_map, ext_contra_map, syzygy, ExtSpace, ShortExact,
    SubcategoryProvider,
};

use super::stable::{omega_connecting, omega_map_d, sigma_connecting, sigma_map};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Contra,
    Co,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Hom,
    Ext,
}

/// `Hom(−, N)`, `Extⁱ(−, N)`, `Hom(M, −)` or `Extⁱ(M, −)`.
#[derive(Clone, Debug)]
pub struct FunctorDescriptor {
    pub variance: Variance,
    pub shape: Shape,
    pub anchor: Module,
    pub degree: usize,
}

impl FunctorDescriptor {
    pub fn hom_contra(n: &Module) -> Self {
        FunctorDescriptor {
            variance: Variance::Contra,
            shape: Shape::Hom,
            anchor: n.clone(),
            degree: 0,
        }
    }

    pub fn ext_contra(n: &Module, i: usize) -> Self {
        FunctorDescriptor {
            variance: Variance::Contra,
            shape: Shape::Ext,
            anchor: n.clone(),
            degree: i,
        }
    }

    pub fn hom_co(m: &Module) -> Self {
        FunctorDescriptor {
            variance: Variance::Co,
            shape: Shape::Hom,
            anchor: m.clone(),
            degree: 0,
        }
    }

    pub fn ext_co(m: &Module, i: usize) -> Self {
        FunctorDescriptor {
            variance: Variance::Co,
            shape: Shape::Ext,
            anchor: m.clone(),
            degree: i,
        }
    }

    pub fn at_degree(&self, d: usize) -> Self {
        FunctorDescriptor {
            degree: d,
            ..self.clone()
        }
    }

    /// The functor value at `x`.
    pub fn value(&self, x: &Module) -> Result<ExtSpace> {
        match self.variance {
            Variance::Contra => ext(x, &self.anchor, self.degree),
            Variance::Co => ext(&self.anchor, x, self.degree),
        }
    }
}

/// `S^{-k}F(M)` as a subspace of `F(ΣᵏM)` (contravariant) or `G(ΩᵏM)` (covariant).
#[derive(Clone, Debug)]
pub struct SatelliteValue {
    pub descriptor: FunctorDescriptor,
    pub at: Module,
    pub order: usize,
    pub ambient: ExtSpace,
    pub space: Subspace,
}

impl SatelliteValue {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `{v ∈ sub : map v = 0}`
pub fn kernel_within(sub: &Subspace, map: &Mat) -> Subspace {
    let incl = sub.inclusion();
    let k = kernel_basis(&map.mul(&incl));
    k.map(&incl)
}

/// Matrix of `map` restricted to `src` and corestricted to `dst`.
pub fn restrict(map: &Mat, src: &Subspace, dst: &Subspace) -> Result<Mat> {
    let cols = src
        .vectors()
        .iter()
        .map(|v| {
            dst.coords(&map.apply(v))
                .ok_or_else(|| Error::Internal("map does not preserve the subspaces".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_cols(src.prime(), dst.dim(), &cols))
}

fn check_side(desc: &FunctorDescriptor, prov: &dyn SubcategoryProvider) -> Result<()> {
    let ok = match desc.variance {
        Variance::Contra => prov.is_preenveloping(),
        Variance::Co => prov.is_precovering(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(
            "contravariant functors pair with preenveloping providers, covariant with precovering".into(),
        ))
    }
}

/// `S^{-k}F(M) = Ker F(π)` after shifting `k − 1` times.
pub fn satellite(desc: &FunctorDescriptor, prov: &dyn SubcategoryProvider, at: &Module, k: usize) -> Result<SatelliteValue> {
    check_side(desc, prov)?;
    let (ambient, space) = match (desc.variance, k) {
        (_, 0) => {
            let amb = desc.value(at)?;
            let full = Subspace::full(at.prime(), amb.dim());
            (amb, full)
        }
        (Variance::Contra, _) => {
            let prev = cosyzygy(prov, at, k - 1)?;
            let step = prov.preenvelope(&prev)?;
            let amb = desc.value(&step.right)?;
            let map = ext_contra_map(&step.p, &desc.anchor, desc.degree)?;
            let full = Subspace::full(at.prime(), amb.dim());
            (amb, kernel_within(&full, &map))
        }
        (Variance::Co, _) => {
            let prev = syzygy(prov, at, k - 1)?;
            let step = prov.precover(&prev)?;
            let amb = desc.value(&step.left)?;
            let map = ext_co_map(&step.i, &desc.anchor, desc.degree)?;
            let full = Subspace::full(at.prime(), amb.dim());
            (amb, kernel_within(&full, &map))
        }
    };
    Ok(SatelliteValue {
        descriptor: desc.clone(),
        at: at.clone(),
        order: k,
        ambient,
        space,
    })
}

/// Literal iteration `S^{-k}F = S^{-1}(S^{-(k-1)}F)`, as a subspace of the
/// same ambient as `satellite`.
pub fn satellite_literal(desc: &FunctorDescriptor, prov: &dyn SubcategoryProvider, at: &Module, k: usize) -> Result<Subspace> {
    check_side(desc, prov)?;
    if k == 0 {
        let amb = desc.value(at)?;
        return Ok(Subspace::full(at.prime(), amb.dim()));
    }
    match desc.variance {
        Variance::Contra => {
            let step = prov.preenvelope(at)?;
            let inner = satellite_literal(desc, prov, &step.right, k - 1)?;
            // (k−1)-fold Σ of π : I → ΣM.
            let mut f = step.p.clone();
            for _ in 0..k - 1 {
                f = sigma_map(prov, &f)?.1;
            }
            let map = ext_contra_map(&f, &desc.anchor, desc.degree)?;
            Ok(kernel_within(&inner, &map))
        }
        Variance::Co => {
            let step = prov.precover(at)?;
            let inner = satellite_literal(desc, prov, &step.left, k - 1)?;
            let mut f = step.i.clone();
            for _ in 0..k - 1 {
                f = omega_map_d(prov, &f)?.1;
            }
            let map = ext_co_map(&f, &desc.anchor, desc.degree)?;
            Ok(kernel_within(&inner, &map))
        }
    }
}

/// The connecting map `S^{-k}F^{n+k}(M) → S^{-(k+1)}F^{n+k+1}(M)` (δ for
/// contravariant, ∂ for covariant), with its source and target.
#[derive(Clone, Debug)]
pub struct SatelliteMap {
    pub source: SatelliteValue,
    pub target: SatelliteValue,
    pub map: Mat,
    /// The unrestricted connecting map between the ambients.
    pub raw: Mat,
}

pub fn satellite_connecting(desc: &FunctorDescriptor, prov: &dyn SubcategoryProvider, at: &Module, k: usize) -> Result<SatelliteMap> {
    satellite_connecting_from(&desc.at_degree(desc.degree + k), prov, at, k)
}

/// As `satellite_connecting`, with `desc.degree` the degree of the source
/// (`n + k`), so that `n` may be negative.
pub fn satellite_connecting_from(desc: &FunctorDescriptor, prov: &dyn SubcategoryProvider, at: &Module, k: usize) -> Result<SatelliteMap> {
    if desc.shape == Shape::Hom && desc.degree != k {
        return Err(Error::Precondition("a Hom-shaped descriptor only has degree 0".into()));
    }
    let d = desc.degree;
    let source = satellite(desc, prov, at, k)?;
    let target = satellite(&desc.at_degree(d + 1), prov, at, k + 1)?;
    let raw = match desc.variance {
        Variance::Contra => {
            let x = cosyzygy(prov, at, k)?;
            let ses = prov.preenvelope(&x)?;
            contra_connecting(&ses, &desc.anchor, d)?
        }
        Variance::Co => {
            let x = syzygy(prov, at, k)?;
            let ses = prov.precover(&x)?;
            co_connecting(&desc.anchor, &ses, d)?
        }
    };
    let map = restrict(&raw, &source.space, &target.space)?;
    Ok(SatelliteMap {
        source,
        target,
        map,
        raw,
    })
}

/// `S^{-1}F(M) → S^{-1}F(M') → F(M'') → F(M) → F(M')` for a contravariant
/// descriptor and a Hom(−, C)-exact sequence, or
/// `S^{-1}G(N) → S^{-1}G(N'') → G(N') → G(N) → G(N'')` for a covariant one.
pub fn five_term_sequence(desc: &FunctorDescriptor, prov: &dyn SubcategoryProvider, ses: &ShortExact) -> Result<LongSequence> {
    check_side(desc, prov)?;
    let tests = prov.test_objects();
    let i = desc.degree;
    let y = &desc.anchor;
    match desc.variance {
        Variance::Contra => {
            certify_ses(&tests, ses, false)?;
            let s_m = satellite(desc, prov, &ses.mid, 1)?;
            let s_l = satellite(desc, prov, &ses.left, 1)?;
            let sf = sigma_map(prov, &ses.i)?.1;
            let w = sigma_connecting(ses, &prov.preenvelope(&ses.left)?)?;
            let p = y.prime();
            let full = |x: &Module| -> Result<Subspace> { Ok(Subspace::full(p, desc.value(x)?.dim())) };
            let mut seq = LongSequence::start("S F(M)", s_m.dim());
            seq.push(restrict(&ext_contra_map(&sf, y, i)?, &s_m.space, &s_l.space)?, "S F(M')");
            seq.push(restrict(&ext_contra_map(&w, y, i)?, &s_l.space, &full(&ses.right)?)?, "F(M'')");
            seq.push(ext_contra_map(&ses.p, y, i)?, "F(M)");
            seq.push(ext_contra_map(&ses.i, y, i)?, "F(M')");
            Ok(seq)
        }
        Variance::Co => {
            certify_ses(&tests, ses, true)?;
            let s_m = satellite(desc, prov, &ses.mid, 1)?;
            let s_r = satellite(desc, prov, &ses.right, 1)?;
            let op = omega_map_d(prov, &ses.p)?.1;
            let w = omega_connecting(ses, &prov.precover(&ses.right)?)?;
            let p = y.prime();
            let full = |x: &Module| -> Result<Subspace> { Ok(Subspace::full(p, desc.value(x)?.dim())) };
            let mut seq = LongSequence::start("S G(N)", s_m.dim());
            seq.push(restrict(&ext_co_map(&op, y, i)?, &s_m.space, &s_r.space)?, "S G(N'')");
            seq.push(restrict(&ext_co_map(&w, y, i)?, &s_r.space, &full(&ses.left)?)?, "G(N')");
            seq.push(ext_co_map(&ses.i, y, i)?, "G(N)");
            seq.push(ext_co_map(&ses.p, y, i)?, "G(N'')");
            Ok(seq)
        }
    }
}

/// Both orders of the mixed satellite `S_D^{-j} S_C^{-i} Extⁿ(M, N)` inside
/// `Extⁿ(ΣⁱM, ΩʲN)`.
#[derive(Clone, Debug)]
pub struct MixedSatellite {
    pub ambient: ExtSpace,
    pub c_then_d: Subspace,
    pub d_then_c: Subspace,
}

impl MixedSatellite {
    pub fn agrees(&self) -> bool {
        self.c_then_d == self.d_then_c
    }
}

pub fn mixed_satellite(
    c: &dyn SubcategoryProvider,
    d: &dyn SubcategoryProvider,
    m: &Module,
    n: &Module,
    deg: usize,
    i: usize,
    j: usize,
) -> Result<MixedSatellite> {
    let sm = cosyzygy(c, m, i)?;
    let on = syzygy(d, n, j)?;
    let ambient = ext(&sm, &on, deg)?;
    let p = m.prime();
    let full = Subspace::full(p, ambient.dim());
    // Ext(π, ΩʲN) and Ext(ΣⁱM, ι)
    let contra = if i > 0 {
        let step = c.preenvelope(&cosyzygy(c, m, i - 1)?)?;
        Some(ext_contra_map(&step.p, &on, deg)?)
    } else {
        None
    };
    let co = if j > 0 {
        let step = d.precover(&syzygy(d, n, j - 1)?)?;
        Some(ext_co_map(&step.i, &sm, deg)?)
    } else {
        None
    };
    let apply = |sub: &Subspace, m: &Option<Mat>| match m {
        Some(m) => kernel_within(sub, m),
        None => sub.clone(),
    };
    let c_then_d = apply(&apply(&full, &contra), &co);
    let d_then_c = apply(&apply(&full, &co), &contra);
    Ok(MixedSatellite {
        ambient,
        c_then_d,
        d_then_c,
    })
}
