//! Direct systems of finite-dimensional spaces and effective colimits.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{quotient, Mat, Quotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Stabilized,
    NotStabilized,
}

/// `V_start → V_{start+1} → … → V_end`.
#[derive(Clone, Debug)]
pub struct DirectSystem {
    pub start: i64,
    pub dims: Vec<usize>,
    /// `maps[k] : V_{start+k} → V_{start+k+1}`
    pub maps: Vec<Mat>,
}

/// Stabilized colimit, or an honest failure to observe one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColimitResult {
    pub status: Status,
    pub value_dim: Option<usize>,
    pub stage: Option<i64>,
    pub window: usize,
    pub start: i64,
    pub dims: Vec<usize>,
}

impl ColimitResult {
    pub fn is_stabilized(&self) -> bool {
        self.status == Status::Stabilized
    }

    /// The stabilized dimension; panics when not stabilized.
    pub fn dim(&self) -> usize {
        self.value_dim.expect("colimit did not stabilize")
    }

    pub fn zero(start: i64) -> ColimitResult {
        ColimitResult {
            status: Status::Stabilized,
            value_dim: Some(0),
            stage: Some(start),
            window: 0,
            start,
            dims: vec![],
        }
    }
}

#[cfg(feature = "parallel")]
fn collect_maps<F>(start: i64, end: i64, f: F) -> Result<Vec<Mat>>
where
    F: Fn(i64) -> Result<Mat> + Sync + Send,
{
    use rayon::prelude::*;
    (start..end).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn collect_maps<F>(start: i64, end: i64, f: F) -> Result<Vec<Mat>>
where
    F: Fn(i64) -> Result<Mat> + Sync + Send,
{
    (start..end).map(f).collect()
}

impl DirectSystem {
    /// Stages `start..=end`, with `map(i) : V_i → V_{i+1}`. Stages are
    /// evaluated in parallel and assembled in order.
    pub fn build<F>(start: i64, end: i64, map: F) -> Result<DirectSystem>
    where
        F: Fn(i64) -> Result<Mat> + Sync + Send,
    {
        let maps = collect_maps(start, end, map)?;
        DirectSystem::from_maps(start, maps)
    }

    pub fn from_maps(start: i64, maps: Vec<Mat>) -> Result<DirectSystem> {
        let mut dims: Vec<usize> = maps.iter().map(|m| m.cols()).collect();
        if let Some(last) = maps.last() {
            dims.push(last.rows());
        }
        for (k, w) in maps.windows(2).enumerate() {
            if w[0].rows() != w[1].cols() {
                return Err(crate::error::Error::Internal(format!(
                    "direct system maps at stages {} and {} do not compose",
                    start + k as i64,
                    start + k as i64 + 1
                )));
            }
        }
        Ok(DirectSystem { start, dims, maps })
    }

    pub fn end(&self) -> i64 {
        self.start + self.maps.len() as i64
    }

    pub fn dim_at(&self, i: i64) -> usize {
        self.dims[(i - self.start) as usize]
    }

    /// The transition `V_from → V_to`.
    pub fn transition(&self, from: i64, to: i64) -> Mat {
        let p = self.maps.first().map_or(2, |m| m.prime());
        let mut acc = Mat::identity(p, self.dim_at(from));
        for i in from..to {
            acc = self.maps[(i - self.start) as usize].mul(&acc);
        }
        acc
    }

    /// First stage from which `window` consecutive transitions are isomorphisms.
    pub fn stabilization(&self, window: usize) -> ColimitResult {
        let iso: Vec<bool> = self.maps.iter().map(|m| m.is_invertible()).collect();
        let mut found = None;
        let w = window.max(1);
        for s in 0..iso.len() {
            if s + w <= iso.len() && iso[s..s + w].iter().all(|&b| b) {
                found = Some(s);
                break;
            }
        }
        ColimitResult {
            status: if found.is_some() { Status::Stabilized } else { Status::NotStabilized },
            value_dim: found.map(|s| self.dims[s]),
            stage: found.map(|s| self.start + s as i64),
            window: w,
            start: self.start,
            dims: self.dims.clone(),
        }
    }
}

/// Colimit of the constant system `V →Φ V →Φ …`, presented as
/// `V / Ker Φ^{dim V}`: its dimension is `rank Φ^{dim V}`.
#[derive(Clone, Debug)]
pub struct EndoColimit {
    pub phi: Mat,
    pub q: Quotient,
}

impl EndoColimit {
    pub fn new(phi: Mat) -> Result<EndoColimit> {
        let d = phi.cols();
        let k = phi.pow(d as u64).kernel();
        let q = quotient(d, &k)?;
        Ok(EndoColimit { phi, q })
    }

    pub fn dim(&self) -> usize {
        self.q.qdim
    }

    /// `V → colim`
    pub fn proj(&self) -> &Mat {
        &self.q.proj
    }

    /// A section `colim → V`.
    pub fn section(&self) -> &Mat {
        &self.q.section
    }
}
