//! Finite-dimensional associative unital algebras given by structure constants.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{self, kernel_basis, preimage, quotient, Mat, Subspace};

use super::hom::HomSpace;

/// Elements are coordinate vectors in the basis `e_0 .. e_{dim-1}`.
pub type Elem = Vec<u32>;

pub struct Algebra {
    p: u32,
    dim: usize,
    /// `structure[(i * dim + j) * dim + k]` is the coefficient of `e_k` in `e_i e_j`.
    structure: Vec<u32>,
    unit: Elem,
    left: Vec<Mat>,
    right: Vec<Mat>,
    name: String,
    analysis: OnceLock<std::result::Result<Arc<Structure>, String>>,
    pub(crate) hom_cache: Mutex<HashMap<(Vec<u32>, Vec<u32>), Arc<HomSpace>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {} over F_{})", self.name, self.dim, self.p)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.structure == other.structure
            && self.unit == other.unit
    }
}

impl Eq for Algebra {}

/// Radical, idempotents and the associated projective/injective data of a
/// basic split algebra.
#[derive(Debug, Clone)]
pub struct Structure {
    pub radical: Subspace,
    /// Primitive orthogonal idempotents summing to 1.
    pub idempotents: Vec<Elem>,
    /// `Λ e_i` as a subspace of Λ.
    pub proj_bases: Vec<Subspace>,
    /// `e_i Λ` as a subspace of Λ.
    pub inj_bases: Vec<Subspace>,
    /// Elements generating Λ as an algebra.
    pub generators: Vec<Elem>,
    /// Smallest `l` with `J^l = 0`.
    pub loewy_length: usize,
    /// Powers `J^0 = Λ, J^1, .., J^l = 0`.
    pub radical_powers: Vec<Subspace>,
}

impl Algebra {
    /// Validate structure constants and build the algebra.
    pub fn new(p: u32, dim: usize, structure: Vec<u32>, unit: Elem, name: &str) -> Result<Arc<Algebra>> {
        linalg::check_prime(p)?;
        if structure.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "structure has {} entries, expected {}",
                structure.len(),
                dim * dim * dim
            )));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "unit has length {}, expected {dim}",
                unit.len()
            )));
        }
        let structure: Vec<u32> = structure.into_iter().map(|c| c % p).collect();
        let unit: Elem = unit.into_iter().map(|c| c % p).collect();
        let mut left = Vec::with_capacity(dim);
        let mut right = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut l = Mat::zeros(p, dim, dim);
            let mut r = Mat::zeros(p, dim, dim);
            for j in 0..dim {
                for k in 0..dim {
                    // e_i e_j and e_j e_i
                    l.set(k, j, structure[(i * dim + j) * dim + k]);
                    r.set(k, j, structure[(j * dim + i) * dim + k]);
                }
            }
            left.push(l);
            right.push(r);
        }
        let alg = Algebra {
            p,
            dim,
            structure,
            unit,
            left,
            right,
            name: name.to_string(),
            analysis: OnceLock::new(),
            hom_cache: Mutex::new(HashMap::new()),
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        // (e_i e_j) e_l = e_i (e_j e_l), i.e. L_{e_i e_j} = L_i L_j.
        for i in 0..n {
            for j in 0..n {
                let prod = self.basis_product(i, j);
                let lhs = self.left_mult(&prod);
                let rhs = self.left[i].mul(&self.left[j]);
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails for basis elements {i}, {j}"
                    )));
                }
            }
        }
        let id = Mat::identity(self.p, n);
        if self.left_mult(&self.unit) != id || self.right_mult(&self.unit) != id {
            return Err(Error::InvalidAlgebra("unit is not a two-sided identity".into()));
        }
        Ok(())
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn structure_constants(&self) -> &[u32] {
        &self.structure
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Elem {
        let s = (i * self.dim + j) * self.dim;
        self.structure[s..s + self.dim].to_vec()
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[u32]) -> Mat {
        combine(self.p, self.dim, &self.left, a)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[u32]) -> Mat {
        combine(self.p, self.dim, &self.right, a)
    }

    pub fn left_basis_mult(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    pub fn right_basis_mult(&self, i: usize) -> &Mat {
        &self.right[i]
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Elem {
        self.left_mult(a).apply(b)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| linalg::add(self.p, x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| linalg::sub(self.p, x, y)).collect()
    }

    pub fn scale(&self, a: &[u32], s: u32) -> Elem {
        a.iter().map(|&x| linalg::mul(self.p, x, s)).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Elem {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Two-sided ideal generated by the given elements.
    pub fn ideal(&self, gens: &[Elem]) -> Subspace {
        let mut v = Subspace::from_vectors(self.p, self.dim, gens);
        loop {
            let mut rows = v.vectors();
            for b in v.vectors() {
                for i in 0..self.dim {
                    rows.push(self.left[i].apply(&b));
                    rows.push(self.right[i].apply(&b));
                }
            }
            let w = Subspace::from_vectors(self.p, self.dim, &rows);
            if w.dim() == v.dim() {
                return w;
            }
            v = w;
        }
    }

    /// Span of all products `x y` with `x ∈ a`, `y ∈ b`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for x in a.vectors() {
            let l = self.left_mult(&x);
            for y in b.vectors() {
                rows.push(l.apply(&y));
            }
        }
        Subspace::from_vectors(self.p, self.dim, &rows)
    }

    /// Radical and primitive idempotents; fails for non-basic or non-split input.
    pub fn structure(&self) -> Result<Arc<Structure>> {
        self.analysis
            .get_or_init(|| analyse(self).map(Arc::new))
            .clone()
            .map_err(Error::Unsupported)
    }

    pub fn num_simples(&self) -> Result<usize> {
        Ok(self.structure()?.idempotents.len())
    }

    pub fn is_local(&self) -> Result<bool> {
        Ok(self.num_simples()? == 1)
    }
}

fn combine(p: u32, dim: usize, mats: &[Mat], a: &[u32]) -> Mat {
    assert_eq!(a.len(), dim, "element length");
    let mut out = Mat::zeros(p, dim, dim);
    for (i, &c) in a.iter().enumerate() {
        if c != 0 {
            out = out.add(&mats[i].scale(c));
        }
    }
    out
}

/// Largest prime for which idempotents are split by enumerating eigenvalues.
const MAX_SPLIT_PRIME: u32 = 1 << 16;

fn analyse(alg: &Algebra) -> std::result::Result<Structure, String> {
    let p = alg.p;
    let n = alg.dim;
    if n == 0 {
        return Err("the zero algebra has no simple modules".into());
    }
    // Commutators generate an ideal K contained in J for basic split algebras.
    let mut comms = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let a = alg.basis_product(i, j);
            let b = alg.basis_product(j, i);
            let c = alg.sub(&a, &b);
            if c.iter().any(|&x| x != 0) {
                comms.push(c);
            }
        }
    }
    let k = alg.ideal(&comms);
    let qk = quotient(n, &k).map_err(|e| e.to_string())?;
    let b = qk.qdim;
    // Frobenius is additive on the commutative quotient; its iterated kernel is the nilradical.
    let mut frob = Mat::zeros(p, b, b);
    for c in 0..b {
        let x = qk.section.col(c);
        let y = qk.proj.apply(&alg.pow(&x, p as u64));
        for (r, v) in y.into_iter().enumerate() {
            frob.set(r, c, v);
        }
    }
    let mut m = 0u32;
    let mut pm: u64 = 1;
    while pm < (b as u64 + 1) {
        pm = pm.saturating_mul(p as u64);
        m += 1;
    }
    let nil = kernel_basis(&frob.pow(m.max(1) as u64));
    let radical = preimage(&qk.proj, &nil);

    // J must be nilpotent; otherwise the commutator ideal was too large.
    let mut radical_powers = vec![Subspace::full(p, n), radical.clone()];
    loop {
        let last = radical_powers.last().unwrap().clone();
        if last.is_zero() {
            break;
        }
        let next = alg.product_space(&radical, &last);
        if next.dim() == last.dim() {
            return Err(format!(
                "algebra {} is not basic: the commutator ideal is not nilpotent",
                alg.name
            ));
        }
        radical_powers.push(next);
    }
    let loewy_length = radical_powers.len() - 1;

    let qj = quotient(n, &radical).map_err(|e| e.to_string())?;
    let r = qj.qdim;
    for c in 0..r {
        let x = qj.section.col(c);
        let diff = alg.sub(&alg.pow(&x, p as u64), &x);
        if !radical.contains(&diff) {
            return Err(format!(
                "algebra {} is not split over F_{p}: its semisimple quotient is not a product of copies of F_{p}",
                alg.name
            ));
        }
    }
    if r > 1 && p > MAX_SPLIT_PRIME {
        return Err(format!("idempotent splitting for p = {p} is not supported"));
    }

    // Split 1 in Λ/J along the eigenvalues of each basis element.
    let bar_mul = |u: &[u32], v: &[u32]| -> Elem {
        qj.proj.apply(&alg.mul(&qj.section.apply(u), &qj.section.apply(v)))
    };
    let bar_one = qj.proj.apply(&alg.unit);
    let mut idems: Vec<Elem> = vec![bar_one.clone()];
    for c in 0..r {
        let mut x = vec![0u32; r];
        x[c] = 1;
        let mut next = Vec::new();
        for e in &idems {
            for lambda in 0..p {
                // e (1 - (x - λ)^{p-1})
                let shifted: Elem = x
                    .iter()
                    .zip(&bar_one)
                    .map(|(&xi, &oi)| linalg::sub(p, xi, linalg::mul(p, lambda, oi)))
                    .collect();
                let mut pw = bar_one.clone();
                for _ in 0..(p - 1) {
                    pw = bar_mul(&pw, &shifted);
                }
                let ind: Elem = bar_one
                    .iter()
                    .zip(&pw)
                    .map(|(&a, &b)| linalg::sub(p, a, b))
                    .collect();
                let f = bar_mul(e, &ind);
                if f.iter().any(|&v| v != 0) {
                    next.push(f);
                }
            }
        }
        idems = next;
    }
    if idems.len() != r {
        return Err(format!(
            "algebra {} is not basic: found {} primitive idempotents for a semisimple quotient of dimension {r}",
            alg.name,
            idems.len()
        ));
    }
    idems.sort_by_key(|e| (e.iter().position(|&v| v != 0).unwrap_or(usize::MAX), e.clone()));

    // Lift to orthogonal idempotents of Λ.
    let mut f = alg.unit.clone();
    let mut idempotents = Vec::with_capacity(r);
    for (t, bar) in idems.iter().enumerate() {
        if t + 1 == r {
            idempotents.push(f.clone());
            break;
        }
        let lift = qj.section.apply(bar);
        let mut a = alg.mul(&alg.mul(&f, &lift), &f);
        let mut steps = 0;
        loop {
            let a2 = alg.mul(&a, &a);
            if a2 == a {
                break;
            }
            let a3 = alg.mul(&a2, &a);
            a = alg.sub(&alg.scale(&a2, 3), &alg.scale(&a3, 2));
            steps += 1;
            if steps > 64 {
                return Err("idempotent lifting did not converge".into());
            }
        }
        f = alg.sub(&f, &a);
        idempotents.push(a);
    }

    let proj_bases: Vec<Subspace> = idempotents.iter().map(|e| alg.right_mult(e).image()).collect();
    let inj_bases: Vec<Subspace> = idempotents.iter().map(|e| alg.left_mult(e).image()).collect();

    let mut generators: Vec<Elem> = if r > 1 { idempotents.clone() } else { Vec::new() };
    if radical_powers.len() > 2 {
        let j2 = &radical_powers[2];
        // Lift a basis of J / J^2.
        let qq = quotient(n, j2).map_err(|e| e.to_string())?;
        let image = radical.map(&qq.proj);
        for v in image.vectors() {
            generators.push(qq.section.apply(&v));
        }
    }

    Ok(Structure {
        radical,
        idempotents,
        proj_bases,
        inj_bases,
        generators,
        loewy_length,
        radical_powers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets;

    #[test]
    fn validation() {
        // F_2[C_2] with basis 1, g.
        let c2 = vec![1, 0, 0, 1, 0, 1, 1, 0];
        assert!(Algebra::new(2, 2, c2.clone(), vec![1, 0], "c2").is_ok());
        assert!(matches!(
            Algebra::new(2, 2, c2, vec![0, 1], "c2"),
            Err(Error::InvalidAlgebra(_))
        ));
        // e0 e0 = e1 and everything else zero: associative but without unit e0.
        let bad = vec![0, 1, 0, 0, 0, 0, 0, 0];
        assert!(matches!(
            Algebra::new(2, 2, bad, vec![1, 0], "bad"),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(
            Algebra::new(4, 1, vec![1], vec![1], "z4"),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn radical_of_presets() {
        let a = presets::truncated_poly(2, 3).unwrap();
        let s = a.structure().unwrap();
        assert_eq!(s.radical.dim(), 2);
        assert_eq!(s.idempotents, vec![vec![1, 0, 0]]);
        assert_eq!(s.loewy_length, 3);

        let a = presets::path_a2(2).unwrap();
        let s = a.structure().unwrap();
        assert_eq!(s.radical.vectors(), vec![vec![0, 0, 1]]);
        assert_eq!(s.idempotents, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(s.proj_bases[0].dim(), 2);
        assert_eq!(s.proj_bases[1].dim(), 1);

        let a = presets::cyclic_group(3, 3).unwrap();
        assert_eq!(a.structure().unwrap().radical.dim(), 2);
    }

    #[test]
    fn radical_cross_check_nilpotent_span() {
        // For the local presets J is the span of the nilpotent basis elements
        // x - 1 shifted; check that every element of J is nilpotent and Λ/J is a field.
        for a in [
            presets::truncated_poly(2, 4).unwrap(),
            presets::cyclic_group(2, 4).unwrap(),
            presets::cyclic_group(3, 3).unwrap(),
        ] {
            let s = a.structure().unwrap();
            assert_eq!(s.radical.dim(), a.dim() - 1);
            for v in s.radical.vectors() {
                assert!(a.pow(&v, a.dim() as u64).iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn semisimple_group_algebra_splits() {
        // F_3[C_2] = F_3 x F_3
        let a = presets::cyclic_group(3, 2).unwrap();
        let s = a.structure().unwrap();
        assert!(s.radical.is_zero());
        assert_eq!(s.idempotents.len(), 2);
    }

    #[test]
    fn non_split_rejected() {
        // F_2[C_3] = F_2 x F_4 is not split over F_2.
        let a = presets::cyclic_group(2, 3).unwrap();
        assert!(matches!(a.structure(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn matrix_algebra_rejected_as_non_basic() {
        // M_2(F_2) with basis E11, E12, E21, E22.
        let p = 2;
        let n = 4;
        let mut s = vec![0u32; n * n * n];
        let idx = |r: usize, c: usize| r * 2 + c;
        for (a, b) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
            for (c, d) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
                if b == c {
                    s[(idx(a, b) * n + idx(c, d)) * n + idx(a, d)] = 1;
                }
            }
        }
        let alg = Algebra::new(p, n, s, vec![1, 0, 0, 1], "m2").unwrap();
        assert!(matches!(alg.structure(), Err(Error::Unsupported(_))));
    }
}
