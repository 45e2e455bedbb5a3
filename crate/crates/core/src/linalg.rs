//! Dense exact linear algebra over a prime field.
//!
//! Matrices act on column vectors. Subspaces are stored as the rows of a
//! matrix in reduced row echelon form, so two subspaces are equal exactly
//! when their stored bases are equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Returns true when `p` is prime (trial division; moduli here are small).
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub fn add(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    add(p, a, p - b % p)
}

#[inline]
pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(p: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(p: u32, mut base: u32, mut e: u64) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv(p: u32, a: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow(p, a, (p - 2) as u64)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(p: u32, v: i64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// `(-1)^k` as a residue.
pub fn sign(p: u32, k: i64) -> u32 {
    if k.rem_euclid(2) == 0 {
        1 % p
    } else {
        neg(p, 1 % p)
    }
}

/// A residue class modulo a validated prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    p: u32,
}

impl Scalar {
    pub fn new(p: u32, value: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(Scalar {
            value: reduce(p, value),
            p,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| Scalar {
            value: inv(self.p, self.value),
            p: self.p,
        })
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.p, rhs.p);
        Scalar {
            value: add(self.p, self.value, rhs.value),
            p: self.p,
        }
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.p, rhs.p);
        Scalar {
            value: mul(self.p, self.value, rhs.value),
            p: self.p,
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: neg(self.p, self.value),
            p: self.p,
        }
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} mod {}]", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Mat {
        Mat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Build from row-major data; entries are reduced mod `p`.
    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        let data = data.into_iter().map(|x| x % p).collect();
        Mat {
            p,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zeros(p, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = x % p;
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(p: u32, rows: usize, cols: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zeros(p, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.data[r * cols.len() + c] = x % p;
            }
        }
        m
    }

    pub fn from_signed(p: u32, rows: usize, cols: usize, data: &[i64]) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat {
            p,
            rows,
            cols,
            data: data.iter().map(|&v| reduce(p, v)).collect(),
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        debug_assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let orow = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Mat {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = 0u64;
                for (&a, &b) in row.iter().zip(v) {
                    acc = (acc + a as u64 * b as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let p = self.p;
        Mat {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add(p, a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let p = self.p;
        Mat {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| sub(p, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Mat {
        let p = self.p;
        Mat {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| mul(p, a, s)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        self.scale(neg(self.p, 1 % self.p))
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn vstack_all(p: u32, cols: usize, blocks: &[Mat]) -> Mat {
        let mut out = Mat::zeros(p, 0, cols);
        for b in blocks {
            out = out.vstack(b);
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(p: u32, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut m = Mat::zeros(self.p, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.data[i * m.cols + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.p, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.p, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }

    /// Flatten row-major into a single vector.
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.p, n));
        let r = rref(&aug);
        if r.pivots.iter().take_while(|&&c| c < n).count() < n {
            return None;
        }
        Some(r.reduced.submatrix(0..n, n..2 * n))
    }

    /// Column space as a subspace of `F_p^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_rows(&self.transpose())
    }

    pub fn kernel(&self) -> Subspace {
        kernel_basis(self)
    }

    /// A matrix `s` with `self * s = id` (requires full row rank).
    pub fn right_inverse(&self) -> Option<Mat> {
        let solver = Solver::new(self);
        if solver.rank() != self.rows {
            return None;
        }
        let cols: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| {
                let mut e = vec![0; self.rows];
                e[i] = 1 % self.p;
                solver.solve(&e).expect("full row rank")
            })
            .collect();
        Some(Mat::from_cols(self.p, self.cols, &cols))
    }

    /// A matrix `l` with `l * self = id` (requires full column rank).
    pub fn left_inverse(&self) -> Option<Mat> {
        self.transpose().right_inverse().map(|m| m.transpose())
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Gauss-Jordan elimination to the unique reduced row echelon form.
pub fn rref(m: &Mat) -> Rref {
    let p = m.p;
    let mut a = m.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a.data[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.data.swap(piv * cols + j, r * cols + j);
            }
        }
        let s = inv(p, a.data[r * cols + c]);
        for j in c..cols {
            a.data[r * cols + j] = mul(p, a.data[r * cols + j], s);
        }
        let pivot_row: Vec<u32> = a.data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.data[i * cols + c];
            if f == 0 {
                continue;
            }
            let nf = neg(p, f) as u64;
            for j in c..cols {
                let pr = pivot_row[j];
                if pr != 0 {
                    let idx = i * cols + j;
                    a.data[idx] = ((a.data[idx] as u64 + nf * pr as u64) % p as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: a,
        pivots,
        rank,
    }
}

/// Null space `{v : m v = 0}` in canonical echelon form.
pub fn kernel_basis(m: &Mat) -> Subspace {
    let p = m.p;
    let n = m.cols;
    let rr = rref(m);
    let mut is_pivot = vec![false; n];
    for &c in &rr.pivots {
        is_pivot[c] = true;
    }
    let mut vecs = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; n];
        v[f] = 1 % p;
        for (r, &pc) in rr.pivots.iter().enumerate() {
            v[pc] = neg(p, rr.reduced.get(r, f));
        }
        vecs.push(v);
    }
    Subspace::from_vectors(p, n, &vecs)
}

/// Some `x` with `m x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve(m: &Mat, b: &[u32]) -> Result<Option<Vec<u32>>> {
    if b.len() != m.rows {
        return Err(Error::Precondition(format!(
            "solve: right-hand side has length {} but matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    Ok(Solver::new(m).solve(b))
}

/// A quotient map with kernel exactly `sub`, plus its canonical section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub proj: Mat,
    pub section: Mat,
    pub qdim: usize,
}

/// Projection onto the coordinates not occupied by pivots of `sub`.
pub fn quotient(ambient_dim: usize, sub: &Subspace) -> Result<Quotient> {
    if sub.ambient_dim() != ambient_dim {
        return Err(Error::Precondition(format!(
            "quotient: subspace lives in dimension {} not {}",
            sub.ambient_dim(),
            ambient_dim
        )));
    }
    let p = sub.prime();
    let pivots = sub.pivots();
    let mut is_pivot = vec![false; ambient_dim];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();
    let qdim = free.len();
    let mut proj = Mat::zeros(p, qdim, ambient_dim);
    let mut section = Mat::zeros(p, ambient_dim, qdim);
    for (i, &c) in free.iter().enumerate() {
        proj.set(i, c, 1);
        section.set(c, i, 1);
        for (r, &pc) in pivots.iter().enumerate() {
            let b = sub.basis().get(r, c);
            if b != 0 {
                proj.set(i, pc, neg(p, b));
            }
        }
    }
    Ok(Quotient {
        proj,
        section,
        qdim,
    })
}

/// Reusable solver for `m x = b` with many right-hand sides.
#[derive(Clone, Debug)]
pub struct Solver {
    p: u32,
    /// Row operations taking `m` to its reduced form.
    transform: Mat,
    pivots: Vec<usize>,
    cols: usize,
    rows: usize,
}

impl Solver {
    pub fn new(m: &Mat) -> Solver {
        let (rows, cols) = m.shape();
        let aug = m.hstack(&Mat::identity(m.p, rows));
        let rr = rref(&aug);
        let pivots: Vec<usize> = rr.pivots.iter().copied().filter(|&c| c < cols).collect();
        let transform = rr.reduced.submatrix(0..rows, cols..cols + rows);
        Solver {
            p: m.p,
            transform,
            pivots,
            cols,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "solver right-hand side length");
        let c = self.transform.apply(b);
        if c[self.pivots.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = c[r];
        }
        Some(x)
    }

    /// Solve for every column of `b`.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        let cols: Option<Vec<Vec<u32>>> = (0..b.cols()).map(|j| self.solve(&b.col(j))).collect();
        cols.map(|c| Mat::from_cols(self.p, self.cols, &c))
    }
}

/// A linear subspace of `F_p^n`, stored by its canonical echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis.row_vecs())
    }
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::zeros(p, 0, n),
        }
    }

    pub fn full(p: u32, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::identity(p, n),
        }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Mat) -> Subspace {
        let rr = rref(m);
        let basis = rr.reduced.submatrix(0..rr.rank, 0..m.cols());
        Subspace {
            ambient: m.cols(),
            basis,
        }
    }

    pub fn from_vectors(p: u32, n: usize, vecs: &[Vec<u32>]) -> Subspace {
        Subspace::from_rows(&Mat::from_rows(p, n, vecs))
    }

    pub fn prime(&self) -> u32 {
        self.basis.prime()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn inclusion(&self) -> Mat {
        self.basis.transpose()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|&x| x != 0)
                    .expect("echelon basis row is nonzero")
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the echelon basis.
        let p = self.prime();
        let mut w = v.to_vec();
        for (r, pc) in self.pivots().into_iter().enumerate() {
            let f = w[pc];
            if f != 0 {
                for (c, x) in w.iter_mut().enumerate() {
                    let b = self.basis.get(r, c);
                    if b != 0 {
                        *x = sub(p, *x, mul(p, f, b));
                    }
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let p = self.prime();
        // Solve A^T x = B^T y, i.e. kernel of [A^T | -B^T].
        let a = self.inclusion();
        let b = other.inclusion();
        let m = a.hstack(&b.neg());
        let k = kernel_basis(&m);
        let vecs: Vec<Vec<u32>> = k
            .vectors()
            .into_iter()
            .map(|x| a.apply(&x[..self.dim()]))
            .collect();
        Subspace::from_vectors(p, self.ambient, &vecs)
    }

    /// Image under a linear map with `ambient` columns.
    pub fn map(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        if self.dim() == 0 {
            return Subspace::zero(self.prime(), m.rows());
        }
        m.mul(&self.inclusion()).image()
    }

    /// Coordinates of `v` (assumed in the subspace) in the stored basis.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        Solver::new(&self.inclusion()).solve(v)
    }
}

/// Preimage of a subspace under `m`: `{x : m x in target}`.
pub fn preimage(m: &Mat, target: &Subspace) -> Subspace {
    let q = quotient(m.rows(), target).expect("dimensions agree");
    kernel_basis(&q.proj.mul(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(2, 2);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let z = Mat::zeros(2, 3, 2);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_all_ones_over_f2() {
        let m = Mat::from_rows(2, 2, &[vec![1, 1], vec![1, 1]]);
        let r = rref(&m);
        assert_eq!(r.reduced, Mat::from_rows(2, 2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3, 4)).is_zero());
        assert!(kernel_basis(&Mat::zeros(2, 2, 3)).is_full());
        let k = kernel_basis(&Mat::from_rows(2, 2, &[vec![1, 1]]));
        assert_eq!(k.vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = Mat::identity(5, 3);
        assert_eq!(solve(&id, &[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        assert_eq!(solve(&Mat::zeros(5, 2, 2), &[0, 1]).unwrap(), None);
        let m = Mat::from_rows(2, 2, &[vec![1, 1]]);
        assert_eq!(solve(&m, &[1]).unwrap(), Some(vec![1, 0]));
        assert!(matches!(solve(&m, &[1, 0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(3, &Subspace::zero(2, 3)).unwrap();
        assert_eq!(q.qdim, 3);
        assert_eq!(q.proj, Mat::identity(2, 3));

        let q = quotient(3, &Subspace::full(2, 3)).unwrap();
        assert_eq!(q.qdim, 0);
        assert_eq!(q.proj.rows(), 0);

        let s = Subspace::from_vectors(2, 2, &[vec![1, 1]]);
        let q = quotient(2, &s).unwrap();
        assert_eq!(q.qdim, 1);
        assert_eq!(q.proj.apply(&[1, 1]), vec![0]);
        assert_eq!(q.proj.mul(&q.section), Mat::identity(2, 1));
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(Scalar::new(4, 1), Err(Error::NotPrime(4))));
        assert!(Scalar::new(7, -1).unwrap().value() == 6);
        assert_eq!(Scalar::new(7, 3).unwrap().inverse().unwrap().value(), 5);
    }

    #[test]
    fn intersect_and_preimage() {
        let a = Subspace::from_vectors(3, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(3, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(&b).vectors(), vec![vec![0, 1, 0]]);
        let m = Mat::from_rows(3, 3, &[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]);
        let pre = preimage(&m, &Subspace::from_vectors(3, 3, &[vec![1, 0, 0]]));
        assert_eq!(pre.dim(), 2);
    }

    #[test]
    fn inverse_and_one_sided_inverses() {
        let m = Mat::from_rows(3, 2, &[vec![1, 2], vec![0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3, 2));
        let wide = Mat::from_rows(3, 3, &[vec![1, 0, 2], vec![0, 1, 1]]);
        let s = wide.right_inverse().unwrap();
        assert_eq!(wide.mul(&s), Mat::identity(3, 2));
        let tall = wide.transpose();
        let l = tall.left_inverse().unwrap();
        assert_eq!(l.mul(&tall), Mat::identity(3, 2));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn mat_strategy() -> impl Strategy<Value = Mat> {
            (prop_oneof![Just(2u32), Just(3u32), Just(5u32)], 0usize..8, 0usize..8).prop_flat_map(
                |(p, r, c)| {
                    proptest::collection::vec(0..p, r * c)
                        .prop_map(move |d| Mat::from_data(p, r, c, d))
                },
            )
        }

        proptest! {
            #[test]
            fn rref_is_idempotent(m in mat_strategy()) {
                let once = rref(&m);
                let twice = rref(&once.reduced);
                prop_assert_eq!(&twice.reduced, &once.reduced);
                prop_assert_eq!(twice.pivots, once.pivots);
            }

            #[test]
            fn rank_nullity(m in mat_strategy()) {
                prop_assert_eq!(m.rank() + kernel_basis(&m).dim(), m.cols());
            }

            #[test]
            fn solve_is_exact(m in mat_strategy(), seed in any::<u64>()) {
                let p = m.prime() as u64;
                let b: Vec<u32> = (0..m.rows()).map(|i| ((seed >> (i % 60)) % p) as u32).collect();
                if let Some(x) = solve(&m, &b).unwrap() {
                    prop_assert_eq!(m.apply(&x), b);
                }
                // Consistent right-hand sides always solve.
                let x0: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 50)) % p) as u32).collect();
                let b0 = m.apply(&x0);
                let x = solve(&m, &b0).unwrap();
                prop_assert!(x.is_some());
                prop_assert_eq!(m.apply(&x.unwrap()), b0);
            }

            #[test]
            fn quotient_kills_subspace(m in mat_strategy()) {
                let sub = Subspace::from_rows(&m);
                let q = quotient(m.cols(), &sub).unwrap();
                prop_assert_eq!(q.qdim, m.cols() - sub.dim());
                prop_assert!(q.proj.mul(&sub.inclusion()).is_zero());
                prop_assert_eq!(q.proj.rank(), q.qdim);
                prop_assert_eq!(kernel_basis(&q.proj), sub);
            }
        }
    }
}
