//! Property tests on randomly generated modules: cokernels and kernels of
//! random endomorphisms of sums of indecomposables over the presets.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stablecoh::algcore::presets::{cyclic_group, path_a2, truncated_poly};
use stablecoh::algcore::{cokernel_of, direct_sum, hom_space, indecomposables, kernel_of, Algebra, Module, Morphism};
use stablecoh::complete::{text_c, text_via_ext1, text_via_satellites, ColimitParams};
use stablecoh::resolve::{
    c_injective_dim, cosyzygy, ext_dim, provider, relative_ext_c, relative_ext_d, DimOutcome, Membership, ProviderKind,
};
use stablecoh::stab::{stable_hom, stable_hom_via_cokernel};
use stablecoh::tate::{tate_cohomology_c, tate_cohomology_d, tate_coresolution, tate_resolution, TateBounds};

fn preset(i: usize) -> Arc<Algebra> {
    match i % 5 {
        0 => truncated_poly(2, 2),
        1 => truncated_poly(2, 3),
        2 => cyclic_group(2, 2),
        3 => path_a2(2),
        _ => truncated_poly(3, 3),
    }
    .unwrap()
}

fn random_endo(x: &Module, rng: &mut ChaCha8Rng) -> Morphism {
    let h = hom_space(x, x).unwrap();
    let p = x.prime();
    let coeffs: Vec<u32> = (0..h.dim()).map(|_| rng.gen_range(0..p)).collect();
    Morphism::new(x.clone(), x.clone(), h.element(&coeffs)).unwrap()
}

/// A sum of up to three indecomposables, then the cokernel or kernel of a
/// random endomorphism of it.
fn random_module(alg: &Arc<Algebra>, seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ind = indecomposables(alg).unwrap();
    let k = rng.gen_range(1..=3);
    let parts: Vec<Module> = (0..k).map(|_| ind[rng.gen_range(0..ind.len())].clone()).collect();
    let x = direct_sum(alg, &parts).unwrap().module;
    match rng.gen_range(0..3) {
        0 => x,
        1 => cokernel_of(&random_endo(&x, &mut rng)).0,
        _ => kernel_of(&random_endo(&x, &mut rng)).0,
    }
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn kernels_and_cokernels_are_exact(a in 0usize..5, s in any::<u64>()) {
        let alg = preset(a);
        let x = random_module(&alg, s);
        let f = random_endo(&x, &mut ChaCha8Rng::seed_from_u64(s ^ 1));
        let (k, inc) = kernel_of(&f);
        let (c, pr) = cokernel_of(&f);
        prop_assert!(f.compose(&inc).mat.is_zero());
        prop_assert!(pr.compose(&f).mat.is_zero());
        prop_assert_eq!(k.dim() + f.mat.rank(), x.dim());
        prop_assert_eq!(c.dim() + f.mat.rank(), x.dim());
    }

    #[test]
    fn hom_is_additive(a in 0usize..5, s in any::<u64>(), t in any::<u64>(), u in any::<u64>()) {
        let alg = preset(a);
        let (m, n, k) = (random_module(&alg, s), random_module(&alg, t), random_module(&alg, u));
        let sum = direct_sum(&alg, &[m.clone(), n.clone()]).unwrap().module;
        let lhs = hom_space(&sum, &k).unwrap().dim();
        prop_assert_eq!(lhs, hom_space(&m, &k).unwrap().dim() + hom_space(&n, &k).unwrap().dim());
        let rhs = hom_space(&k, &sum).unwrap().dim();
        prop_assert_eq!(rhs, hom_space(&k, &m).unwrap().dim() + hom_space(&k, &n).unwrap().dim());
    }

    #[test]
    fn relative_ext_is_balanced_and_shifts(a in 0usize..5, s in any::<u64>(), t in any::<u64>()) {
        let alg = preset(a);
        let (m, n) = (random_module(&alg, s), random_module(&alg, t));
        let c = provider(ProviderKind::Inj, &alg).unwrap();
        let d = provider(ProviderKind::Prj, &alg).unwrap();
        for i in 0..=2 {
            let e = ext_dim(&m, &n, i).unwrap();
            prop_assert_eq!(relative_ext_c(&*c, &m, &n, i).unwrap().dim(), e);
            prop_assert_eq!(relative_ext_d(&*d, &m, &n, i).unwrap().dim(), e);
        }
        let sn = cosyzygy(&*c, &n, 1).unwrap();
        for i in 1..=2 {
            prop_assert_eq!(
                relative_ext_c(&*c, &m, &n, i + 1).unwrap().dim(),
                relative_ext_c(&*c, &m, &sn, i).unwrap().dim()
            );
        }
    }

    #[test]
    fn injective_dimension_zero_is_membership(a in 0usize..5, s in any::<u64>()) {
        let alg = preset(a);
        let n = random_module(&alg, s);
        let c = provider(ProviderKind::Inj, &alg).unwrap();
        let zero = c_injective_dim(&*c, &n, 0).unwrap() == DimOutcome::Finite(0);
        prop_assert_eq!(zero, c.membership(&n) == Membership::Yes);
    }

    #[test]
    fn stable_hom_is_the_cokernel(a in 0usize..5, s in any::<u64>(), t in any::<u64>()) {
        let alg = preset(a);
        let (m, n) = (random_module(&alg, s), random_module(&alg, t));
        for kind in [ProviderKind::Inj, ProviderKind::Prj] {
            let p = provider(kind, &alg).unwrap();
            let via = stable_hom_via_cokernel(&*p, &m, &n).unwrap();
            prop_assert!(via.agrees);
            prop_assert_eq!(via.dim, stable_hom(&*p, &m, &n).unwrap().dim());
        }
    }

    #[test]
    fn stable_hom_vanishes_exactly_on_injectives(a in 0usize..5, s in any::<u64>()) {
        let alg = preset(a);
        let n = random_module(&alg, s);
        let c = provider(ProviderKind::Inj, &alg).unwrap();
        let all_zero = indecomposables(&alg)
            .unwrap()
            .iter()
            .all(|x| stable_hom(&*c, x, &n).unwrap().dim() == 0);
        prop_assert_eq!(all_zero, c.membership(&n) == Membership::Yes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn complete_cohomology_routes_agree(a in 0usize..5, s in any::<u64>(), t in any::<u64>(), n in -2i64..=2) {
        let alg = preset(a);
        let (m, nm) = (random_module(&alg, s), random_module(&alg, t));
        let c = provider(ProviderKind::Inj, &alg).unwrap();
        let p = ColimitParams::default();
        let x = text_c(&*c, &m, &nm, n, p).unwrap();
        prop_assert!(x.is_stabilized());
        prop_assert_eq!(x.value_dim, text_via_ext1(&*c, &m, &nm, n, p).unwrap().value_dim);
        prop_assert_eq!(x.value_dim, text_via_satellites(&*c, &m, &nm, n, p).unwrap().value_dim);
    }

    #[test]
    fn tate_cohomology_matches_complete_cohomology(a in 0usize..5, s in any::<u64>(), t in any::<u64>()) {
        let alg = preset(a);
        let (m, nm) = (random_module(&alg, s), random_module(&alg, t));
        let c = provider(ProviderKind::Inj, &alg).unwrap();
        let d = provider(ProviderKind::Prj, &alg).unwrap();
        let tc = tate_coresolution(&*c, &*d, &nm, TateBounds::default()).unwrap().found().unwrap();
        let td = tate_resolution(&*d, &*c, &m, TateBounds::default()).unwrap().found().unwrap();
        prop_assert!(tc.certificate.totally_acyclic);
        prop_assert!(tc.alpha[tc.agreement_degree].is_iso());
        for n in -2..=2 {
            let want = text_c(&*c, &m, &nm, n, ColimitParams::default()).unwrap().value_dim;
            let got = tate_cohomology_c(&m, n, &tc).unwrap();
            prop_assert_eq!(Some(got), want);
            prop_assert_eq!(tate_cohomology_d(&nm, n, &td).unwrap(), got);
        }
    }
}
