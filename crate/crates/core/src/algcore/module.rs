//! Left modules, morphisms, kernels, cokernels and direct sums.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, quotient, Mat, Subspace};

use super::algebra::Algebra;

/// A finite-dimensional left module: one action matrix per algebra basis element,
/// acting on column vectors.
#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dim: usize,
    action: Arc<Vec<Mat>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over {})", self.dim, self.alg.name())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dim == other.dim && self.action == other.action
    }
}

impl Eq for Module {}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Module {
    /// Validating constructor.
    pub fn new(alg: Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Result<Module> {
        if action.len() != alg.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                alg.dim(),
                action.len()
            )));
        }
        for (i, a) in action.iter().enumerate() {
            if a.shape() != (dim, dim) || a.prime() != alg.prime() {
                return Err(Error::InvalidModule(format!(
                    "action matrix {i} has shape {:?}, expected {dim}x{dim}",
                    a.shape()
                )));
            }
        }
        let m = Module {
            alg,
            dim,
            action: Arc::new(action),
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(alg: Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Module {
        let m = Module {
            alg,
            dim,
            action: Arc::new(action),
        };
        debug_assert!(m.validate().is_ok(), "constructed module violates the action axioms");
        m
    }

    fn validate(&self) -> Result<()> {
        let n = self.alg.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(&self.alg.basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action does not respect the product of basis elements {i} and {j}"
                    )));
                }
            }
        }
        if self.act(self.alg.unit()) != Mat::identity(self.alg.prime(), self.dim) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        Ok(())
    }

    pub fn zero(alg: &Arc<Algebra>) -> Module {
        let p = alg.prime();
        Module::from_parts(alg.clone(), 0, vec![Mat::zeros(p, 0, 0); alg.dim()])
    }

    /// The regular left module `Λ`.
    pub fn regular(alg: &Arc<Algebra>) -> Module {
        let action = (0..alg.dim()).map(|i| alg.left_basis_mult(i).clone()).collect();
        Module::from_parts(alg.clone(), alg.dim(), action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn prime(&self) -> u32 {
        self.alg.prime()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Matrix by which the algebra element `a` acts.
    pub fn act(&self, a: &[u32]) -> Mat {
        let mut out = Mat::zeros(self.prime(), self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    /// Identifying data used for caching and structural comparison.
    pub fn key(&self) -> Vec<u32> {
        let mut k = Vec::with_capacity(1 + self.alg.dim() * self.dim * self.dim);
        k.push(self.dim as u32);
        for a in self.action.iter() {
            k.extend_from_slice(a.data());
        }
        k
    }

    pub fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Whether `sub` is closed under the action.
    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        self.action
            .iter()
            .all(|a| sub.vectors().iter().all(|v| sub.contains(&a.apply(v))))
    }

    /// The submodule on an invariant subspace, with its inclusion matrix.
    pub fn submodule(&self, sub: &Subspace) -> (Module, Mat) {
        debug_assert!(self.is_submodule(sub), "subspace is not invariant");
        let incl = sub.inclusion();
        let pivots = sub.pivots();
        let action = self
            .action
            .iter()
            .map(|a| a.mul(&incl).select_rows(&pivots))
            .collect();
        (Module::from_parts(self.alg.clone(), sub.dim(), action), incl)
    }

    /// The quotient by an invariant subspace, with projection and a linear section.
    pub fn quotient(&self, sub: &Subspace) -> (Module, Mat, Mat) {
        debug_assert!(self.is_submodule(sub), "subspace is not invariant");
        let q = quotient(self.dim, sub).expect("ambient dimension matches");
        let action = self
            .action
            .iter()
            .map(|a| q.proj.mul(a).mul(&q.section))
            .collect();
        (Module::from_parts(self.alg.clone(), q.qdim, action), q.proj, q.section)
    }

    /// Submodule generated by a set of vectors.
    pub fn generated(&self, vecs: &[Vec<u32>]) -> Subspace {
        let p = self.prime();
        let mut v = Subspace::from_vectors(p, self.dim, vecs);
        loop {
            let mut rows = v.vectors();
            for b in v.vectors() {
                for a in self.action.iter() {
                    rows.push(a.apply(&b));
                }
            }
            let w = Subspace::from_vectors(p, self.dim, &rows);
            if w.dim() == v.dim() {
                return w;
            }
            v = w;
        }
    }
}

/// An equivariant linear map, `mat` of shape `target.dim × source.dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: Module,
    pub target: Module,
    pub mat: Mat,
}

pub fn is_equivariant(source: &Module, target: &Module, mat: &Mat) -> bool {
    mat.shape() == (target.dim(), source.dim())
        && (0..source.algebra().dim())
            .all(|i| mat.mul(source.action(i)) == target.action(i).mul(mat))
}

impl Morphism {
    pub fn new(source: Module, target: Module, mat: Mat) -> Result<Morphism> {
        source.check_same_algebra(&target)?;
        if mat.shape() != (target.dim(), source.dim()) {
            return Err(Error::Precondition(format!(
                "morphism matrix has shape {:?}, expected {}x{}",
                mat.shape(),
                target.dim(),
                source.dim()
            )));
        }
        if !is_equivariant(&source, &target, &mat) {
            return Err(Error::Precondition("matrix is not equivariant".into()));
        }
        Ok(Morphism { source, target, mat })
    }

    /// Constructor for maps that are equivariant by construction.
    pub(crate) fn raw(source: Module, target: Module, mat: Mat) -> Morphism {
        debug_assert!(
            is_equivariant(&source, &target, &mat),
            "constructed matrix is not equivariant"
        );
        Morphism { source, target, mat }
    }

    pub fn identity(m: &Module) -> Morphism {
        Morphism::raw(m.clone(), m.clone(), Mat::identity(m.prime(), m.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        Morphism::raw(
            source.clone(),
            target.clone(),
            Mat::zeros(source.prime(), target.dim(), source.dim()),
        )
    }

    /// `self ∘ g`
    pub fn compose(&self, g: &Morphism) -> Morphism {
        assert_eq!(g.target.dim(), self.source.dim(), "composition shape");
        Morphism::raw(g.source.clone(), self.target.clone(), self.mat.mul(&g.mat))
    }

    pub fn is_mono(&self) -> bool {
        self.mat.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.mat.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_mono()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }
}

pub fn kernel_of(f: &Morphism) -> (Module, Morphism) {
    let k = kernel_basis(&f.mat);
    let (km, incl) = f.source.submodule(&k);
    let incl = Morphism::raw(km.clone(), f.source.clone(), incl);
    (km, incl)
}

pub fn cokernel_of(f: &Morphism) -> (Module, Morphism) {
    let im = f.mat.image();
    let (c, proj, _) = f.target.quotient(&im);
    let proj = Morphism::raw(f.target.clone(), c.clone(), proj);
    (c, proj)
}

pub fn image_of(f: &Morphism) -> (Module, Morphism) {
    let im = f.mat.image();
    let (m, incl) = f.target.submodule(&im);
    let incl = Morphism::raw(m.clone(), f.target.clone(), incl);
    (m, incl)
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(alg: &Arc<Algebra>, ms: &[Module]) -> Result<DirectSum> {
    for m in ms {
        if !same_algebra(alg, m.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let p = alg.prime();
    let total: usize = ms.iter().map(|m| m.dim()).sum();
    let action = (0..alg.dim())
        .map(|i| {
            let blocks: Vec<&Mat> = ms.iter().map(|m| m.action(i)).collect();
            Mat::block_diag(p, &blocks)
        })
        .collect();
    let module = Module::from_parts(alg.clone(), total, action);
    let mut injections = Vec::with_capacity(ms.len());
    let mut projections = Vec::with_capacity(ms.len());
    let mut off = 0;
    for m in ms {
        let mut inj = Mat::zeros(p, total, m.dim());
        let mut proj = Mat::zeros(p, m.dim(), total);
        for r in 0..m.dim() {
            inj.set(off + r, r, 1);
            proj.set(r, off + r, 1);
        }
        injections.push(Morphism::raw(m.clone(), module.clone(), inj));
        projections.push(Morphism::raw(module.clone(), m.clone(), proj));
        off += m.dim();
    }
    Ok(DirectSum {
        module,
        injections,
        projections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::presets::truncated_poly;

    fn trivial(alg: &Arc<Algebra>) -> Module {
        // k over F_p[x]/(x^n): x acts as 0.
        let action = (0..alg.dim())
            .map(|i| Mat::from_data(alg.prime(), 1, 1, vec![u32::from(i == 0)]))
            .collect();
        Module::new(alg.clone(), 1, action).unwrap()
    }

    #[test]
    fn invalid_action_rejected() {
        let a = truncated_poly(2, 2).unwrap();
        let bad = vec![Mat::identity(2, 1), Mat::identity(2, 1)];
        assert!(matches!(Module::new(a, 1, bad), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn kernel_and_cokernel_of_x() {
        let a = truncated_poly(2, 2).unwrap();
        let reg = Module::regular(&a);
        let x = Morphism::new(reg.clone(), reg.clone(), a.right_mult(&[0, 1])).unwrap();
        let (k, incl) = kernel_of(&x);
        assert_eq!(k.dim(), 1);
        assert!(k.action(1).is_zero());
        assert!(incl.is_mono());
        let (c, proj) = cokernel_of(&x);
        assert_eq!(c.dim(), 1);
        assert!(proj.compose(&x).is_zero());
        assert!(proj.is_epi());

        let (k, _) = kernel_of(&Morphism::identity(&reg));
        assert!(k.is_zero());
        let (c, _) = cokernel_of(&Morphism::identity(&reg));
        assert!(c.is_zero());
        let z = Morphism::zero(&reg, &reg);
        assert_eq!(kernel_of(&z).0.dim(), 2);
        assert_eq!(cokernel_of(&z).0, reg);
    }

    #[test]
    fn direct_sums() {
        let a = truncated_poly(2, 2).unwrap();
        let k = trivial(&a);
        assert!(direct_sum(&a, &[]).unwrap().module.is_zero());
        let one = direct_sum(&a, &[k.clone()]).unwrap();
        assert_eq!(one.module, k);
        let s = direct_sum(&a, &[k.clone(), k.clone()]).unwrap();
        assert_eq!(s.module.dim(), 2);
        assert!(s.module.action(1).is_zero());
        for (i, inj) in s.injections.iter().enumerate() {
            for (j, proj) in s.projections.iter().enumerate() {
                let c = proj.compose(inj);
                assert_eq!(c.mat.is_zero(), i != j);
            }
        }
    }
}
