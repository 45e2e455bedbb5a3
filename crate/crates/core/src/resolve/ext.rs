//! Absolute Ext via canonical projective resolutions, with explicit
//! presentations, functoriality and connecting maps.
//!
//! `Extⁿ(X, Y)` is presented as `Hom(ΩⁿX, Y)` modulo maps that extend over
//! `Ωⁿ X ↪ P_{n-1}`.

use std::sync::Arc;

use crate::algcore::{hom_space, HomSpace, Module, Morphism};
use crate::error::{Error, Result};
use crate::linalg::{quotient, sign, Mat, Quotient, Subspace};

use super::coresolution::{projective_resolution, Resolution};
use super::lift::{factor_through_mono, hom_solutions, lift_through, precompose_matrix};
use super::provider::ShortExact;

#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub source: Module,
    pub target: Module,
    pub degree: usize,
    /// Projective resolution of the source, of length `degree`.
    pub res: Resolution,
    pub hom: Arc<HomSpace>,
    /// Coboundaries in hom coordinates.
    pub coboundaries: Subspace,
    q: Quotient,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.q.qdim
    }

    pub fn prime(&self) -> u32 {
        self.source.prime()
    }

    /// The syzygy `ΩⁿX` on which cocycles live.
    pub fn syzygy(&self) -> &Module {
        self.res.syzygy(self.degree)
    }

    pub fn class(&self, phi: &Mat) -> Vec<u32> {
        self.q.proj.apply(&self.hom.coords(phi))
    }

    pub fn representative(&self, c: &[u32]) -> Mat {
        self.hom.element(&self.q.section.apply(c))
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
    pub fn map_into(&self, target: &ExtSpace, op: impl Fn(&Mat) -> Mat) -> Mat {
        let cols: Vec<Vec<u32>> = self
            .basis_representatives()
            .iter()
            .map(|r| target.class(&op(r)))
            .collect();
        Mat::from_cols(self.prime(), target.dim(), &cols)
    }
}

fn ext_with(res: Resolution, y: &Module, n: usize) -> Result<ExtSpace> {
    let x = res.base.clone();
    x.check_same_algebra(y)?;
    let omega = res.syzygy(n).clone();
    let hom = hom_space(&omega, y)?;
    let p = x.prime();
    let coboundaries = if n == 0 {
        Subspace::zero(p, hom.dim())
    } else {
        precompose_matrix(&res.steps[n - 1].i, y)?.image()
    };
    let q = quotient(hom.dim(), &coboundaries)?;
    Ok(ExtSpace {
        source: x,
        target: y.clone(),
        degree: n,
        res,
        hom,
        coboundaries,
        q,
    })
}

pub fn ext(x: &Module, y: &Module, n: usize) -> Result<ExtSpace> {
    ext_with(projective_resolution(x, n)?, y, n)
}

pub fn ext_dim(x: &Module, y: &Module, n: usize) -> Result<usize> {
    Ok(ext(x, y, n)?.dim())
}

/// The map `ΩⁿX → ΩⁿX'` induced by `f : X → X'` on canonical syzygies. With
/// `alternate` the lifts are perturbed by homogeneous solutions.
pub fn omega_map(f: &Morphism, rx: &Resolution, rx2: &Resolution, n: usize, alternate: bool) -> Result<Morphism> {
    let mut cur = f.clone();
    for k in 0..n {
        let eps = &rx.steps[k].p;
        let eps2 = &rx2.steps[k].p;
        let target = cur.compose(eps);
        let hom = hom_space(&eps.source, &eps2.source)?;
        let (mut g, homog) = hom_solutions(&hom, |g| eps2.mat.mul(g), &target.mat)
            .ok_or_else(|| Error::Internal("lift through a projective cover failed".into()))?;
        if alternate {
            if let Some(h) = homog.last() {
                g = g.add(h);
            }
        }
        let g = Morphism::raw(eps.source.clone(), eps2.source.clone(), g);
        cur = factor_through_mono(&rx2.steps[k].i, &g.compose(&rx.steps[k].i))?;
    }
    Ok(cur)
}

/// `Extⁿ(X', Y) → Extⁿ(X, Y)` for `f : X → X'`.
pub fn ext_contra_map(f: &Morphism, y: &Module, n: usize) -> Result<Mat> {
    ext_contra_map_with(f, y, n, false)
}

pub fn ext_contra_map_with(f: &Morphism, y: &Module, n: usize, alternate: bool) -> Result<Mat> {
    let src = ext(&f.target, y, n)?;
    let dst = ext(&f.source, y, n)?;
    let w = omega_map(f, &dst.res, &src.res, n, alternate)?;
    Ok(src.map_into(&dst, |phi| phi.mul(&w.mat)))
}

/// `Extⁿ(X, Y) → Extⁿ(X, Y')` for `g : Y → Y'`.
pub fn ext_co_map(g: &Morphism, x: &Module, n: usize) -> Result<Mat> {
    let src = ext(x, &g.source, n)?;
    let dst = ext_with(src.res.clone(), &g.target, n)?;
    Ok(src.map_into(&dst, |phi| g.mat.mul(phi)))
}

/// `Extⁿ(X', Y) → Extⁿ⁺¹(X'', Y)` for `0 → X' → X → X'' → 0`.
pub fn contra_connecting(ses: &ShortExact, y: &Module, n: usize) -> Result<Mat> {
    let src = ext(&ses.left, y, n)?;
    let dst = ext(&ses.right, y, n + 1)?;
    let r = &dst.res;
    let eps = &r.steps[0].p;
    let u = lift_through(&ses.p, eps)?
        .ok_or_else(|| Error::Internal("cover does not lift".into()))?;
    let w = factor_through_mono(&ses.i, &u.compose(&r.steps[0].i))?;
    let tail = projective_resolution(r.syzygy(1), n)?;
    let wn = omega_map(&w, &tail, &src.res, n, false)?;
    debug_assert_eq!(wn.source, *dst.syzygy());
    let s = sign(y.prime(), n as i64);
    Ok(src.map_into(&dst, |phi| phi.mul(&wn.mat).scale(s)))
}

/// `Extⁿ(X, Y'') → Extⁿ⁺¹(X, Y')` for `0 → Y' → Y → Y'' → 0`.
pub fn co_connecting(x: &Module, ses: &ShortExact, n: usize) -> Result<Mat> {
    let dst = ext(x, &ses.left, n + 1)?;
    let src = ext_with(projective_resolution(x, n)?, &ses.right, n)?;
    let step = &dst.res.steps[n];
    let mut cols = Vec::with_capacity(src.dim());
    for phi in src.basis_representatives() {
        let h = Morphism::raw(step.mid.clone(), ses.right.clone(), phi.mul(&step.p.mat));
        let l = lift_through(&ses.p, &h)?
            .ok_or_else(|| Error::Internal("map from a projective does not lift".into()))?;
        let psi = factor_through_mono(&ses.i, &l.compose(&step.i))?;
        cols.push(dst.class(&psi.mat));
    }
    Ok(Mat::from_cols(x.prime(), dst.dim(), &cols))
}
