//! Finite cochain complexes of vector spaces, cohomology with explicit
//! presentations, connecting maps and exactness reports.

use serde::Serialize;

use crate::linalg::{kernel_basis, quotient, Mat, Quotient, Solver, Subspace};

/// `Z / B` with `B ⊆ Z ⊆ F_p^n`, presented on the echelon basis of `Z`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    /// Quotient of cycle coordinates by boundary coordinates.
    q: Quotient,
}

impl Subquotient {
    pub fn new(cycles: Subspace, boundaries: Subspace) -> Subquotient {
        let ambient = cycles.ambient_dim();
        debug_assert!(cycles.contains_subspace(&boundaries), "boundaries not inside cycles");
        let piv = cycles.pivots();
        let bz: Vec<Vec<u32>> = boundaries
            .vectors()
            .into_iter()
            .map(|v| piv.iter().map(|&c| v[c]).collect())
            .collect();
        let bsub = Subspace::from_vectors(cycles.prime(), cycles.dim(), &bz);
        let q = quotient(cycles.dim(), &bsub).expect("dimensions agree");
        Subquotient {
            ambient,
            cycles,
            boundaries,
            q,
        }
    }

    pub fn prime(&self) -> u32 {
        self.cycles.prime()
    }

    pub fn dim(&self) -> usize {
        self.q.qdim
    }

    /// Class of a cycle.
    pub fn class(&self, v: &[u32]) -> Vec<u32> {
        debug_assert!(self.cycles.contains(v), "vector is not a cycle");
        let z: Vec<u32> = self.cycles.pivots().into_iter().map(|c| v[c]).collect();
        self.q.proj.apply(&z)
    }

    /// A cycle representing the class with coordinates `c`.
    pub fn representative(&self, c: &[u32]) -> Vec<u32> {
        self.cycles.inclusion().apply(&self.q.section.apply(c))
    }

    /// Matrix `dim × ambient` sending cycles to their classes (garbage off cycles).
    pub fn class_matrix(&self) -> Mat {
        let piv = self.cycles.pivots();
        let sel = Mat::identity(self.prime(), self.ambient).select_rows(&piv);
        self.q.proj.mul(&sel)
    }

    /// Matrix `ambient × dim` of chosen representatives.
    pub fn rep_matrix(&self) -> Mat {
        self.cycles.inclusion().mul(&self.q.section)
    }

    /// Matrix of the map on subquotients induced by `f` (which must respect both layers).
    pub fn induced(&self, f: &Mat, target: &Subquotient) -> Mat {
        target.class_matrix().mul(&f.mul(&self.rep_matrix()))
    }
}

/// Cochain complex `C^lo → C^{lo+1} → … → C^hi` with zero outside.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub p: u32,
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[k]` maps degree `lo + k` to `lo + k + 1`.
    pub diffs: Vec<Mat>,
}

impl CochainComplex {
    pub fn new(p: u32, lo: i64, dims: Vec<usize>, diffs: Vec<Mat>) -> CochainComplex {
        assert_eq!(diffs.len() + 1, dims.len().max(1), "one differential between consecutive terms");
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.shape(), (dims[k + 1], dims[k]), "differential shape at {k}");
        }
        let c = CochainComplex { p, lo, dims, diffs };
        debug_assert!(c.is_complex(), "d∘d ≠ 0");
        c
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.dims[(k - self.lo) as usize]
        }
    }

    /// `d^k : C^k → C^{k+1}`
    pub fn diff(&self, k: i64) -> Mat {
        if k >= self.lo && k < self.hi() {
            self.diffs[(k - self.lo) as usize].clone()
        } else {
            Mat::zeros(self.p, self.dim(k + 1), self.dim(k))
        }
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn cohomology(&self, k: i64) -> Subquotient {
        let z = kernel_basis(&self.diff(k));
        let b = self.diff(k - 1).image();
        Subquotient::new(z, b)
    }

    pub fn is_exact_at(&self, k: i64) -> bool {
        self.cohomology(k).dim() == 0
    }
}

/// Matrix of `H^k(f)` for a chain map with component `f_k` in degree `k`.
pub fn induced_on_cohomology(src: &CochainComplex, dst: &CochainComplex, fk: &Mat, k: i64) -> Mat {
    src.cohomology(k).induced(fk, &dst.cohomology(k))
}

/// Connecting map `H^k(C) → H^{k+1}(A)` of `0 → A →f B →g C → 0`, given the
/// components `f_{k+1}`, `g_k` and the complex `B`.
pub fn connecting_map(
    a: &CochainComplex,
    b: &CochainComplex,
    c: &CochainComplex,
    f_next: &Mat,
    g_k: &Mat,
    k: i64,
) -> Mat {
    let hc = c.cohomology(k);
    let ha = a.cohomology(k + 1);
    let p = a.p;
    let gs = Solver::new(g_k);
    let fs = Solver::new(f_next);
    let db = b.diff(k);
    let mut cols = Vec::with_capacity(hc.dim());
    for j in 0..hc.dim() {
        let mut e = vec![0; hc.dim()];
        e[j] = 1;
        let z = hc.representative(&e);
        let lift = gs.solve(&z).expect("g is surjective");
        let dl = db.apply(&lift);
        let pre = fs.solve(&dl).expect("d(lift) lies in the image of f");
        cols.push(ha.class(&pre));
    }
    Mat::from_cols(p, ha.dim(), &cols)
}

/// A finite sequence of linear maps `V_0 → V_1 → … → V_m`.
#[derive(Clone, Debug, Default)]
pub struct LongSequence {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SpotReport {
    pub index: usize,
    pub label: String,
    pub dim: usize,
    pub image_in: usize,
    pub kernel_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessReport {
    pub spots: Vec<SpotReport>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.spots.iter().all(|s| s.exact)
    }

    pub fn first_failure(&self) -> Option<&SpotReport> {
        self.spots.iter().find(|s| !s.exact)
    }

    pub fn merge(&mut self, other: ExactnessReport) {
        let off = self.spots.len();
        self.spots.extend(other.spots.into_iter().map(|mut s| {
            s.index += off;
            s
        }));
    }
}

impl LongSequence {
    pub fn new() -> LongSequence {
        LongSequence::default()
    }

    pub fn start(label: impl Into<String>, dim: usize) -> LongSequence {
        LongSequence {
            labels: vec![label.into()],
            dims: vec![dim],
            maps: Vec::new(),
        }
    }

    /// Append `map` from the current last space to a new space.
    pub fn push(&mut self, map: Mat, label: impl Into<String>) {
        let last = *self.dims.last().expect("sequence started");
        assert_eq!(map.cols(), last, "map source does not match the last space");
        self.dims.push(map.rows());
        self.labels.push(label.into());
        self.maps.push(map);
    }

    /// Exactness at every interior spot.
    pub fn report(&self) -> ExactnessReport {
        let mut spots = Vec::new();
        for i in 1..self.dims.len().saturating_sub(1) {
            let fin = &self.maps[i - 1];
            let fout = &self.maps[i];
            let image_in = fin.rank();
            let kernel_out = self.dims[i] - fout.rank();
            let composite_zero = fout.mul(fin).is_zero();
            spots.push(SpotReport {
                index: i,
                label: self.labels[i].clone(),
                dim: self.dims[i],
                image_in,
                kernel_out,
                composite_zero,
                exact: composite_zero && image_in == kernel_out,
            });
        }
        ExactnessReport { spots }
    }
}

/// The long exact cohomology sequence of `0 → A → B → C → 0` over degrees `from..=to`,
/// given the chain map components `f(k)`, `g(k)`.
pub fn long_exact_sequence(
    a: &CochainComplex,
    b: &CochainComplex,
    c: &CochainComplex,
    f: &dyn Fn(i64) -> Mat,
    g: &dyn Fn(i64) -> Mat,
    from: i64,
    to: i64,
) -> LongSequence {
    let mut seq = LongSequence::start(format!("H^{from}(A)"), a.cohomology(from).dim());
    for k in from..=to {
        seq.push(induced_on_cohomology(a, b, &f(k), k), format!("H^{k}(B)"));
        seq.push(induced_on_cohomology(b, c, &g(k), k), format!("H^{k}(C)"));
        if k < to {
            seq.push(connecting_map(a, b, c, &f(k + 1), &g(k), k), format!("H^{}(A)", k + 1));
        }
    }
    seq
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cohomology_of_small_complex() {
        // F_2 --(1,1)--> F_2^2 --(1 1)--> F_2
        let d0 = Mat::from_rows(2, 1, &[vec![1], vec![1]]);
        let d1 = Mat::from_rows(2, 2, &[vec![1, 1]]);
        let c = CochainComplex::new(2, 0, vec![1, 2, 1], vec![d0, d1]);
        assert_eq!(c.cohomology(0).dim(), 0);
        assert_eq!(c.cohomology(1).dim(), 0);
        assert_eq!(c.cohomology(2).dim(), 0);
        assert_eq!(c.cohomology(5).dim(), 0);
    }

    #[test]
    fn snake_on_mapping_cone_shape() {
        // 0 → F_2[-1] → (F_2 → F_2) → F_2 → 0: the connecting map is an iso.
        let a = CochainComplex::new(2, 0, vec![0, 1], vec![Mat::zeros(2, 1, 0)]);
        let b = CochainComplex::new(2, 0, vec![1, 1], vec![Mat::identity(2, 1)]);
        let c = CochainComplex::new(2, 0, vec![1, 0], vec![Mat::zeros(2, 0, 1)]);
        let f = |k: i64| {
            if k == 1 {
                Mat::identity(2, 1)
            } else {
                Mat::zeros(2, b.dim(k), a.dim(k))
            }
        };
        let g = |k: i64| {
            if k == 0 {
                Mat::identity(2, 1)
            } else {
                Mat::zeros(2, c.dim(k), b.dim(k))
            }
        };
        let delta = connecting_map(&a, &b, &c, &f(1), &g(0), 0);
        assert_eq!(delta, Mat::identity(2, 1));
        let seq = long_exact_sequence(&a, &b, &c, &f, &g, -1, 2);
        assert!(seq.report().all_exact());
    }

    #[test]
    fn exactness_report_detects_failure() {
        let mut s = LongSequence::start("a", 1);
        s.push(Mat::zeros(2, 1, 1), "b");
        s.push(Mat::zeros(2, 1, 1), "c");
        let r = s.report();
        assert!(!r.all_exact());
        assert_eq!(r.first_failure().unwrap().label, "b");
    }
}
