//! Built-in algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;

use super::algebra::Algebra;

/// `F_p[x]/(x^n)` on the basis `1, x, .., x^{n-1}`.
pub fn truncated_poly(p: u32, n: usize) -> Result<Arc<Algebra>> {
    linalg::check_prime(p)?;
    if n == 0 {
        return Err(Error::Precondition("truncated_poly needs n >= 1".into()));
    }
    let mut s = vec![0u32; n * n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                s[(i * n + j) * n + i + j] = 1;
            }
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    Algebra::new(p, n, s, unit, &format!("trunc({p},{n})"))
}

/// Group algebra `F_p[C_m]` on the basis `1, g, .., g^{m-1}`.
pub fn cyclic_group(p: u32, m: usize) -> Result<Arc<Algebra>> {
    linalg::check_prime(p)?;
    if m == 0 {
        return Err(Error::Precondition("cyclic_group needs m >= 1".into()));
    }
    let mut s = vec![0u32; m * m * m];
    for i in 0..m {
        for j in 0..m {
            s[(i * m + j) * m + (i + j) % m] = 1;
        }
    }
    let mut unit = vec![0; m];
    unit[0] = 1;
    Algebra::new(p, m, s, unit, &format!("cyc({p},{m})"))
}

/// Path algebra of `1 --α--> 2` on the basis `e_1, e_2, α` with `e_2 α e_1 = α`.
pub fn path_a2(p: u32) -> Result<Arc<Algebra>> {
    linalg::check_prime(p)?;
    let n = 3;
    let mut s = vec![0u32; n * n * n];
    let mut set = |i: usize, j: usize, k: usize| s[(i * n + j) * n + k] = 1;
    set(0, 0, 0); // e1 e1 = e1
    set(1, 1, 1); // e2 e2 = e2
    set(1, 2, 2); // e2 α = α
    set(2, 0, 2); // α e1 = α
    Algebra::new(p, n, s, vec![1, 1, 0], &format!("a2({p})"))
}
