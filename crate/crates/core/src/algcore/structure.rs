//! Radical, socle, indecomposable projectives and injectives, covers and envelopes.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg::{kernel_basis, Mat, Subspace};

use super::algebra::Algebra;
use super::hom::{iso_class, IsoOutcome};
use super::module::{direct_sum, Module, Morphism};

/// `J(Λ) · M` as a subspace of `M`.
pub fn radical_subspace(m: &Module) -> Result<Subspace> {
    let st = m.algebra().structure()?;
    let p = m.prime();
    let mut rows = Vec::new();
    for j in st.radical.vectors() {
        rows.extend(m.act(&j).transpose().row_vecs());
    }
    Ok(Subspace::from_vectors(p, m.dim(), &rows))
}

/// `{ v : J(Λ) v = 0 }` as a subspace of `M`.
pub fn socle_subspace(m: &Module) -> Result<Subspace> {
    let st = m.algebra().structure()?;
    let p = m.prime();
    let blocks: Vec<Mat> = st.radical.vectors().iter().map(|j| m.act(j)).collect();
    let stacked = Mat::vstack_all(p, m.dim(), &blocks);
    Ok(kernel_basis(&stacked))
}

pub fn radical(m: &Module) -> Result<(Module, Morphism)> {
    let sub = radical_subspace(m)?;
    let (r, incl) = m.submodule(&sub);
    Ok((r.clone(), Morphism::raw(r, m.clone(), incl)))
}

pub fn socle(m: &Module) -> Result<(Module, Morphism)> {
    let sub = socle_subspace(m)?;
    let (s, incl) = m.submodule(&sub);
    Ok((s.clone(), Morphism::raw(s, m.clone(), incl)))
}

/// `M / rad M` with its projection.
pub fn top(m: &Module) -> Result<(Module, Morphism)> {
    let sub = radical_subspace(m)?;
    let (t, proj, _) = m.quotient(&sub);
    Ok((t.clone(), Morphism::raw(m.clone(), t, proj)))
}

/// `Λ e_i` for each primitive idempotent, on the echelon basis of the left ideal.
pub fn indec_projectives(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    let st = alg.structure()?;
    let reg = Module::regular(alg);
    Ok(st.proj_bases.iter().map(|b| reg.submodule(b).0).collect())
}

/// `D(e_i Λ)`: the dual of the right ideal with the transposed right action.
pub fn indec_injectives(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    let st = alg.structure()?;
    Ok(st.inj_bases.iter().map(|b| dual_right_ideal(alg, b)).collect())
}

fn dual_right_ideal(alg: &Arc<Algebra>, basis: &Subspace) -> Module {
    let incl = basis.inclusion();
    let pivots = basis.pivots();
    let action = (0..alg.dim())
        .map(|i| {
            // v ↦ v e_i on the right ideal, then transposed.
            alg.right_basis_mult(i)
                .mul(&incl)
                .select_rows(&pivots)
                .transpose()
        })
        .collect();
    Module::from_parts(alg.clone(), basis.dim(), action)
}

/// Simple tops `S_i = P_i / rad P_i`.
pub fn simples(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    indec_projectives(alg)?
        .iter()
        .map(|p| top(p).map(|t| t.0))
        .collect()
}

/// `Λ / J^k` as a left module.
pub fn radical_quotient(alg: &Arc<Algebra>, k: usize) -> Result<Module> {
    let st = alg.structure()?;
    let reg = Module::regular(alg);
    let j = st
        .radical_powers
        .get(k)
        .cloned()
        .unwrap_or_else(|| Subspace::zero(alg.prime(), alg.dim()));
    Ok(reg.quotient(&j).0)
}

/// Multiplicity of each simple `S_i` in a semisimple quotient or submodule,
/// read off from the idempotent actions on a subquotient given by `(proj, section)`.
fn multiplicities(m: &Module, sub_or_quot: &Mat, back: &Mat) -> Result<Vec<Subspace>> {
    let st = m.algebra().structure()?;
    Ok(st
        .idempotents
        .iter()
        .map(|e| sub_or_quot.mul(&m.act(e)).mul(back).image())
        .collect())
}

/// Projective cover `P → M` with the index of each indecomposable summand of `P`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub map: Morphism,
    pub summands: Vec<usize>,
}

pub fn projective_cover_data(m: &Module) -> Result<Cover> {
    let alg = m.algebra().clone();
    let st = alg.structure()?;
    let projs = indec_projectives(&alg)?;
    let rad = radical_subspace(m)?;
    let q = crate::linalg::quotient(m.dim(), &rad)?;
    let tops = multiplicities(m, &q.proj, &q.section)?;
    let mut summands = Vec::new();
    let mut gens = Vec::new();
    for (i, t) in tops.iter().enumerate() {
        let e = m.act(&st.idempotents[i]);
        for v in t.vectors() {
            summands.push(i);
            gens.push(e.apply(&q.section.apply(&v)));
        }
    }
    let mods: Vec<Module> = summands.iter().map(|&i| projs[i].clone()).collect();
    let sum = direct_sum(&alg, &mods)?;
    let p = alg.prime();
    let mut mat = Mat::zeros(p, m.dim(), sum.module.dim());
    let mut col = 0;
    for (&i, g) in summands.iter().zip(&gens) {
        for y in st.proj_bases[i].vectors() {
            let img = m.act(&y).apply(g);
            for (r, v) in img.into_iter().enumerate() {
                mat.set(r, col, v);
            }
            col += 1;
        }
    }
    let map = Morphism::raw(sum.module, m.clone(), mat);
    debug_assert!(map.is_epi(), "projective cover is not surjective");
    Ok(Cover { map, summands })
}

pub fn projective_cover(m: &Module) -> Result<Morphism> {
    Ok(projective_cover_data(m)?.map)
}

/// Injective envelope `M → E` with the index of each indecomposable summand of `E`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub map: Morphism,
    pub summands: Vec<usize>,
}

pub fn injective_envelope_data(m: &Module) -> Result<Envelope> {
    let alg = m.algebra().clone();
    let st = alg.structure()?;
    let injs = indec_injectives(&alg)?;
    let soc = socle_subspace(m)?;
    let incl = soc.inclusion();
    let socs = multiplicities(m, &Mat::identity(m.prime(), m.dim()), &incl)?;
    let p = alg.prime();
    let mut summands = Vec::new();
    let mut rows: Vec<Mat> = Vec::new();
    for (i, s) in socs.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        // Functionals dual to a basis of e_i soc M.
        let basis = s.inclusion();
        let psi = basis.left_inverse().expect("basis has full column rank");
        let xs = st.inj_bases[i].vectors();
        for a in 0..s.dim() {
            let row = psi.select_rows(&[a]);
            let mut block = Mat::zeros(p, xs.len(), m.dim());
            for (r, x) in xs.iter().enumerate() {
                let v = row.mul(&m.act(x));
                for c in 0..m.dim() {
                    block.set(r, c, v.get(0, c));
                }
            }
            summands.push(i);
            rows.push(block);
        }
    }
    let mods: Vec<Module> = summands.iter().map(|&i| injs[i].clone()).collect();
    let sum = direct_sum(&alg, &mods)?;
    let mat = Mat::vstack_all(p, m.dim(), &rows);
    let map = Morphism::raw(m.clone(), sum.module, mat);
    debug_assert!(map.is_mono(), "injective envelope is not injective");
    Ok(Envelope { map, summands })
}

pub fn injective_envelope(m: &Module) -> Result<Morphism> {
    Ok(injective_envelope_data(m)?.map)
}

/// Dimension of the injective envelope, without building it.
pub fn envelope_dim(m: &Module) -> Result<usize> {
    let alg = m.algebra();
    let st = alg.structure()?;
    let soc = socle_subspace(m)?;
    let socs = multiplicities(m, &Mat::identity(m.prime(), m.dim()), &soc.inclusion())?;
    Ok(socs
        .iter()
        .zip(&st.inj_bases)
        .map(|(s, b)| s.dim() * b.dim())
        .sum())
}

/// Dimension of the projective cover, without building it.
pub fn cover_dim(m: &Module) -> Result<usize> {
    let alg = m.algebra();
    let st = alg.structure()?;
    let rad = radical_subspace(m)?;
    let q = crate::linalg::quotient(m.dim(), &rad)?;
    let tops = multiplicities(m, &q.proj, &q.section)?;
    Ok(tops
        .iter()
        .zip(&st.proj_bases)
        .map(|(t, b)| t.dim() * b.dim())
        .sum())
}

pub fn is_injective(m: &Module) -> Result<bool> {
    Ok(envelope_dim(m)? == m.dim())
}

pub fn is_projective(m: &Module) -> Result<bool> {
    Ok(cover_dim(m)? == m.dim())
}

/// Quotients `P_i / J^k P_i` up to isomorphism. For Nakayama algebras (every
/// preset) this is the complete list of indecomposable modules.
pub fn indecomposables(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    let projs = indec_projectives(alg)?;
    let mut out: Vec<Module> = Vec::new();
    for p in &projs {
        let mut sub = radical_subspace(p)?;
        let mut layers = vec![sub.clone()];
        while !sub.is_zero() {
            let (r, incl) = p.submodule(&sub);
            let rr = radical_subspace(&r)?;
            sub = rr.map(&incl);
            layers.push(sub.clone());
        }
        for layer in &layers {
            let q = p.quotient(layer).0;
            let mut seen = false;
            for o in &out {
                if let IsoOutcome::Iso(_) = iso_class(o, &q)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(q);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::hom::hom_space;
    use crate::algcore::module::cokernel_of;
    use crate::algcore::presets::{cyclic_group, path_a2, truncated_poly};

    #[test]
    fn radical_and_socle_examples() {
        let a = truncated_poly(2, 3).unwrap();
        let reg = Module::regular(&a);
        let r = radical_subspace(&reg).unwrap();
        assert_eq!(r.vectors(), vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let s = socle_subspace(&reg).unwrap();
        assert_eq!(s.vectors(), vec![vec![0, 0, 1]]);
        let k = simples(&a).unwrap().remove(0);
        assert!(radical_subspace(&k).unwrap().is_zero());
        assert_eq!(socle_subspace(&k).unwrap().dim(), 1);
        assert!(socle_subspace(&Module::zero(&a)).unwrap().is_zero());

        let b = path_a2(2).unwrap();
        assert_eq!(radical_subspace(&Module::regular(&b)).unwrap().dim(), 1);
    }

    #[test]
    fn projectives_and_injectives() {
        let a = truncated_poly(2, 2).unwrap();
        let ps = indec_projectives(&a).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0], Module::regular(&a));
        let is = indec_injectives(&a).unwrap();
        assert_eq!(is.len(), 1);
        assert!(iso_class(&is[0], &ps[0]).unwrap().is_iso());

        let b = path_a2(2).unwrap();
        let dims: Vec<usize> = indec_projectives(&b).unwrap().iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![2, 1]);
        let injs = indec_injectives(&b).unwrap();
        let dims: Vec<usize> = injs.iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![1, 2]);
        let s = simples(&b).unwrap();
        assert!(iso_class(&injs[0], &s[0]).unwrap().is_iso());

        let c = cyclic_group(3, 3).unwrap();
        assert_eq!(indec_projectives(&c).unwrap()[0].dim(), 3);
        let c2 = cyclic_group(2, 2).unwrap();
        let i = indec_injectives(&c2).unwrap();
        assert!(iso_class(&i[0], &Module::regular(&c2)).unwrap().is_iso());
    }

    #[test]
    fn covers_and_envelopes() {
        let a = truncated_poly(2, 2).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let cover = projective_cover(&k).unwrap();
        assert_eq!(cover.source.dim(), 2);
        assert!(cover.is_epi());
        let env = injective_envelope(&k).unwrap();
        assert_eq!(env.target.dim(), 2);
        let (c, _) = cokernel_of(&env);
        assert!(iso_class(&c, &k).unwrap().is_iso());

        let a3 = truncated_poly(2, 3).unwrap();
        let k3 = simples(&a3).unwrap().remove(0);
        let env = injective_envelope(&k3).unwrap();
        let (c, _) = cokernel_of(&env);
        let m2 = radical_quotient(&a3, 2).unwrap();
        assert!(iso_class(&c, &m2).unwrap().is_iso());

        let reg = Module::regular(&a);
        assert_eq!(projective_cover(&reg).unwrap().source.dim(), 2);
        assert_eq!(injective_envelope(&reg).unwrap().target.dim(), 2);
        let z = Module::zero(&a);
        assert_eq!(projective_cover(&z).unwrap().source.dim(), 0);
        assert_eq!(injective_envelope(&z).unwrap().target.dim(), 0);
    }

    #[test]
    fn cover_kernel_in_radical_and_socle_preserved() {
        for alg in [truncated_poly(2, 3).unwrap(), path_a2(2).unwrap(), cyclic_group(3, 3).unwrap()] {
            for m in indecomposables(&alg).unwrap() {
                let c = projective_cover(&m).unwrap();
                let ker = kernel_basis(&c.mat);
                let rad = radical_subspace(&c.source).unwrap();
                assert!(rad.contains_subspace(&ker));
                let e = injective_envelope(&m).unwrap();
                assert!(e.is_mono());
                let se = socle_subspace(&e.target).unwrap();
                let sm = socle_subspace(&m).unwrap();
                assert_eq!(se.dim(), sm.dim());
                assert_eq!(se, sm.map(&e.mat));
            }
        }
    }

    #[test]
    fn self_injective_projectives_are_injective() {
        for alg in [truncated_poly(2, 3).unwrap(), cyclic_group(2, 4).unwrap(), cyclic_group(3, 3).unwrap()] {
            for p in indec_projectives(&alg).unwrap() {
                assert!(is_injective(&p).unwrap());
            }
            for i in indec_injectives(&alg).unwrap() {
                assert!(is_projective(&i).unwrap());
            }
        }
        let b = path_a2(2).unwrap();
        let s = simples(&b).unwrap();
        assert!(is_injective(&s[0]).unwrap());
        assert!(!is_projective(&s[0]).unwrap());
        assert!(is_projective(&s[1]).unwrap());
    }

    #[test]
    fn indecomposable_lists() {
        assert_eq!(indecomposables(&truncated_poly(2, 3).unwrap()).unwrap().len(), 3);
        assert_eq!(indecomposables(&path_a2(2).unwrap()).unwrap().len(), 3);
        assert_eq!(indecomposables(&cyclic_group(2, 2).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn hom_dims() {
        let a = truncated_poly(2, 2).unwrap();
        let k = simples(&a).unwrap().remove(0);
        let reg = Module::regular(&a);
        assert_eq!(hom_space(&k, &k).unwrap().dim(), 1);
        assert_eq!(hom_space(&reg, &reg).unwrap().dim(), 2);
        assert_eq!(hom_space(&Module::zero(&a), &reg).unwrap().dim(), 0);
    }
}
