//! Linear solves inside Hom spaces: lifting, extending, factoring, and the
//! matrices of pre/postcomposition between Hom spaces.

use crate::algcore::{hom_space, HomSpace, Module, Morphism};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Mat, Solver};

/// Solutions `g ∈ hom` of `lin(g) = target` for a linear `lin`: a particular
/// solution plus a basis of the homogeneous solutions.
pub fn hom_solutions(hom: &HomSpace, lin: impl Fn(&Mat) -> Mat, target: &Mat) -> Option<(Mat, Vec<Mat>)> {
    let p = hom.source.prime();
    let cols: Vec<Vec<u32>> = hom.basis().iter().map(|b| lin(b).to_vec()).collect();
    let sys = Mat::from_cols(p, target.data().len(), &cols);
    let x = Solver::new(&sys).solve(target.data())?;
    let homog = kernel_basis(&sys)
        .vectors()
        .into_iter()
        .map(|c| hom.element(&c))
        .collect();
    Some((hom.element(&x), homog))
}

pub fn hom_solve(hom: &HomSpace, lin: impl Fn(&Mat) -> Mat, target: &Mat) -> Option<Mat> {
    hom_solutions(hom, lin, target).map(|(x, _)| x)
}

/// `g : h.source → q.source` with `q ∘ g = h`.
pub fn lift_through(q: &Morphism, h: &Morphism) -> Result<Option<Morphism>> {
    let hom = hom_space(&h.source, &q.source)?;
    Ok(hom_solve(&hom, |g| q.mat.mul(g), &h.mat)
        .map(|g| Morphism::raw(h.source.clone(), q.source.clone(), g)))
}

/// `g : i.target → f.target` with `g ∘ i = f`.
pub fn extend_along(i: &Morphism, f: &Morphism) -> Result<Option<Morphism>> {
    let hom = hom_space(&i.target, &f.target)?;
    Ok(hom_solve(&hom, |g| g.mul(&i.mat), &f.mat)
        .map(|g| Morphism::raw(i.target.clone(), f.target.clone(), g)))
}

/// `g` with `mono ∘ g = f`, when `f` lands in the image of the mono.
pub fn factor_through_mono(mono: &Morphism, f: &Morphism) -> Result<Morphism> {
    let g = Solver::new(&mono.mat)
        .solve_mat(&f.mat)
        .ok_or_else(|| Error::Internal("map does not land in the image of the mono".into()))?;
    Ok(Morphism::raw(f.source.clone(), mono.source.clone(), g))
}

/// `g` with `g ∘ epi = f`, when `f` kills the kernel of the epi.
pub fn factor_through_epi(epi: &Morphism, f: &Morphism) -> Result<Morphism> {
    let sec = epi
        .mat
        .right_inverse()
        .ok_or_else(|| Error::Internal("map is not surjective".into()))?;
    let g = f.mat.mul(&sec);
    if g.mul(&epi.mat) != f.mat {
        return Err(Error::Internal("map does not vanish on the kernel of the epi".into()));
    }
    Ok(Morphism::raw(epi.target.clone(), f.target.clone(), g))
}

/// Matrix of `φ ↦ φ ∘ f` from `Hom(f.target, t)` to `Hom(f.source, t)`.
pub fn precompose_matrix(f: &Morphism, t: &Module) -> Result<Mat> {
    let from = hom_space(&f.target, t)?;
    let to = hom_space(&f.source, t)?;
    let cols: Vec<Vec<u32>> = from.basis().iter().map(|b| to.coords(&b.mul(&f.mat))).collect();
    Ok(Mat::from_cols(t.prime(), to.dim(), &cols))
}

/// Matrix of `φ ↦ f ∘ φ` from `Hom(s, f.source)` to `Hom(s, f.target)`.
pub fn postcompose_matrix(f: &Morphism, s: &Module) -> Result<Mat> {
    let from = hom_space(s, &f.source)?;
    let to = hom_space(s, &f.target)?;
    let cols: Vec<Vec<u32>> = from.basis().iter().map(|b| to.coords(&f.mat.mul(b))).collect();
    Ok(Mat::from_cols(s.prime(), to.dim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::truncated_poly;
    use crate::algcore::{projective_cover, simples};

    #[test]
    fn lift_identity_through_cover() {
        let a = truncated_poly(3, 3).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let eps = projective_cover(&k).unwrap();
        let l = lift_through(&eps, &eps).unwrap().unwrap();
        assert_eq!(eps.compose(&l), eps);
        // k → k does not lift through A → k into k itself unless split.
        let id = Morphism::identity(&k);
        assert!(lift_through(&eps, &id).unwrap().is_none());
    }

    #[test]
    fn precompose_identity_is_identity() {
        let a = truncated_poly(2, 2).unwrap();
        let r = Module::regular(&a);
        let m = precompose_matrix(&Morphism::identity(&r), &r).unwrap();
        assert_eq!(m, Mat::identity(2, 2));
    }
}
