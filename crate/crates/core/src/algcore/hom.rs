//! Hom spaces and isomorphism testing.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{kernel_basis, Mat, Subspace};

use super::module::{Module, Morphism};

/// All equivariant matrices `source → target`, with a canonical basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    /// Row-major flattened basis morphisms, in echelon form.
    space: Subspace,
    basis: Vec<Mat>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn morphisms(&self) -> Vec<Morphism> {
        self.basis
            .iter()
            .map(|m| Morphism::raw(self.source.clone(), self.target.clone(), m.clone()))
            .collect()
    }

    /// `Σ c_b basis_b`
    pub fn element(&self, coeffs: &[u32]) -> Mat {
        assert_eq!(coeffs.len(), self.dim(), "hom coordinates");
        let p = self.source.prime();
        let (t, s) = (self.target.dim(), self.source.dim());
        let mut out = Mat::zeros(p, t, s);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    pub fn contains(&self, f: &Mat) -> bool {
        f.shape() == (self.target.dim(), self.source.dim()) && self.space.contains(f.data())
    }

    /// Coordinates of an equivariant matrix in the basis.
    pub fn coords(&self, f: &Mat) -> Vec<u32> {
        debug_assert!(self.contains(f), "matrix is not in the hom space");
        let d = f.data();
        self.space.pivots().into_iter().map(|c| d[c]).collect()
    }

    /// Matrix whose columns are the flattened basis morphisms.
    pub fn flat_basis(&self) -> Mat {
        self.space.inclusion()
    }
}

/// Canonical basis of `Hom_Λ(m, n)`; memoized per algebra.
pub fn hom_space(m: &Module, n: &Module) -> Result<Arc<HomSpace>> {
    m.check_same_algebra(n)?;
    let alg = m.algebra();
    let key = (m.key(), n.key());
    if let Some(h) = alg.hom_cache.lock().expect("hom cache poisoned").get(&key) {
        return Ok(h.clone());
    }
    let h = Arc::new(compute_hom(m, n));
    alg.hom_cache
        .lock()
        .expect("hom cache poisoned")
        .insert(key, h.clone());
    Ok(h)
}

fn compute_hom(m: &Module, n: &Module) -> HomSpace {
    let alg = m.algebra();
    let p = alg.prime();
    let (s, t) = (m.dim(), n.dim());
    let vars = s * t;
    let gens: Vec<Vec<u32>> = match alg.structure() {
        Ok(st) => st.generators.clone(),
        Err(_) => (0..alg.dim()).map(|i| alg.basis_elem(i)).collect(),
    };
    // Columns of `param` parametrize the current solution set.
    let mut param = Mat::identity(p, vars);
    for g in &gens {
        if param.cols() == 0 {
            break;
        }
        let a = m.act(g);
        let b = n.act(g);
        // X a - b X = 0, with X[r][c] at index r * s + c.
        let mut eq = Mat::zeros(p, vars, vars);
        for r in 0..t {
            for c in 0..s {
                let row = r * s + c;
                for k in 0..s {
                    let v = a.get(k, c);
                    if v != 0 {
                        let idx = r * s + k;
                        eq.set(row, idx, crate::linalg::add(p, eq.get(row, idx), v));
                    }
                }
                for k in 0..t {
                    let v = b.get(r, k);
                    if v != 0 {
                        let idx = k * s + c;
                        eq.set(row, idx, crate::linalg::sub(p, eq.get(row, idx), v));
                    }
                }
            }
        }
        let reduced = eq.mul(&param);
        let ker = kernel_basis(&reduced);
        param = param.mul(&ker.inclusion());
    }
    let space = Subspace::from_rows(&param.transpose());
    let basis = space
        .vectors()
        .into_iter()
        .map(|v| Mat::from_data(p, t, s, v))
        .collect();
    HomSpace {
        source: m.clone(),
        target: n.clone(),
        space,
        basis,
    }
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Iso(Morphism),
    /// Non-isomorphism was proved.
    NonIso,
    /// The search budget ran out without a proof either way.
    Undetermined,
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Iso(_))
    }

    pub fn iso(self) -> Option<Morphism> {
        match self {
            IsoOutcome::Iso(f) => Some(f),
            _ => None,
        }
    }
}

pub const DEFAULT_ISO_BUDGET: usize = 512;
/// Exhaustive search only when `p^dim Hom` stays below this.
const EXHAUSTIVE_CAP: u64 = 1 << 16;

pub fn iso_class(m: &Module, n: &Module) -> Result<IsoOutcome> {
    iso_class_with_budget(m, n, DEFAULT_ISO_BUDGET)
}

pub fn iso_class_with_budget(m: &Module, n: &Module, budget: usize) -> Result<IsoOutcome> {
    m.check_same_algebra(n)?;
    if m.dim() != n.dim() {
        return Ok(IsoOutcome::NonIso);
    }
    if m == n {
        return Ok(IsoOutcome::Iso(Morphism::identity(m)));
    }
    let hmn = hom_space(m, n)?;
    let hnm = hom_space(n, m)?;
    let hmm = hom_space(m, m)?;
    let hnn = hom_space(n, n)?;
    let d = hmm.dim();
    if hmn.dim() != d || hnm.dim() != d || hnn.dim() != d {
        return Ok(IsoOutcome::NonIso);
    }
    let found = |f: Mat| Morphism::raw(m.clone(), n.clone(), f);
    for b in hmn.basis() {
        if b.is_invertible() {
            return Ok(IsoOutcome::Iso(found(b.clone())));
        }
    }
    let p = m.prime();
    let h = hmn.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_150);
    for _ in 0..budget {
        let coeffs: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        let f = hmn.element(&coeffs);
        if f.is_invertible() {
            return Ok(IsoOutcome::Iso(found(f)));
        }
    }
    let total = (p as u64).checked_pow(h as u32);
    if h <= 16 && p <= 3 && total.is_some_and(|t| t <= EXHAUSTIVE_CAP) {
        let total = total.unwrap();
        let mut coeffs = vec![0u32; h];
        for _ in 0..total {
            let f = hmn.element(&coeffs);
            if f.is_invertible() {
                return Ok(IsoOutcome::Iso(found(f)));
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
        }
        return Ok(IsoOutcome::NonIso);
    }
    Ok(IsoOutcome::Undetermined)
}
