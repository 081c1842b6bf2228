use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{max_abs, GroupPoint, Mat};
use crate::error::{Error, Result};

/// The alcove representative of a conjugacy class in SU(n): `g` is conjugate
/// to `diag(exp(2πi ξ_j))` with `ξ_1 ≥ … ≥ ξ_n`, `Σ ξ_j = 0`, `ξ_1 - ξ_n ≤ 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlcovePoint {
    /// Diagonal entries in turns.
    pub xi: Vec<f64>,
    /// Barycentric coordinates: `1 - (ξ_1 - ξ_n)` at the vertex 0, then
    /// `ξ_i - ξ_{i+1}` at the vertex `i`.
    pub barycentric: Vec<f64>,
}

impl AlcovePoint {
    /// Chart membership: the point lies in `U_i` iff its barycentric
    /// coordinate at vertex `i` is positive.
    pub fn in_chart(&self, i: usize) -> bool {
        self.barycentric.get(i).is_some_and(|&b| b > 0.0)
    }

    /// The SU(2) alcove parameter `ξ_1 - ξ_2 ∈ [0, 1]`.
    pub fn parameter(&self) -> f64 {
        self.xi[0] - self.xi[self.xi.len() - 1]
    }

    pub fn distance(&self, other: &AlcovePoint) -> f64 {
        self.xi.iter().zip(&other.xi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn eigenphases(m: &Mat) -> Vec<f64> {
    let (_, t) = m.clone().schur().unpack();
    (0..m.nrows()).map(|i| (t[(i, i)].arg() / (2.0 * PI)).rem_euclid(1.0)).collect()
}

/// The map `q: SU(n) → alcove`. Inputs must be special unitary within `1e-8`.
pub fn alcove_projection(g: &Mat) -> Result<AlcovePoint> {
    GroupPoint::with_tolerance(g.clone(), 1e-8)?;
    let n = g.nrows();
    let mut p = eigenphases(g);
    p.sort_by(|a, b| b.total_cmp(a));
    let m = p.iter().sum::<f64>().round() as usize;
    let m = m.min(n);
    let mut xi: Vec<f64> = p[m..].to_vec();
    xi.extend(p[..m].iter().map(|x| x - 1.0));
    let mean = xi.iter().sum::<f64>() / n as f64;
    for x in &mut xi {
        *x -= mean;
    }
    let mut barycentric = vec![1.0 - (xi[0] - xi[n - 1])];
    barycentric.extend((0..n - 1).map(|i| xi[i] - xi[i + 1]));
    for b in &mut barycentric {
        if b.abs() < 1e-13 {
            *b = 0.0;
        }
    }
    Ok(AlcovePoint { xi, barycentric })
}

/// `diag(exp(2πi ξ_j))`.
pub fn alcove_exp(xi: &[f64]) -> Result<GroupPoint> {
    let n = xi.len();
    let s: f64 = xi.iter().sum();
    if (s - s.round()).abs() > 1e-12 {
        return Err(Error::Domain(format!("alcove coordinates must sum to an integer, got {s}")));
    }
    let mut m = Mat::zeros(n, n);
    for (j, &x) in xi.iter().enumerate() {
        m[(j, j)] = Complex64::from_polar(1.0, 2.0 * PI * x);
    }
    GroupPoint::new(m)
}

/// Smallest distance between two eigenvalues of `g` that are not equal
/// (to within `1e-10`), or `None` if all eigenvalues coincide.
pub(crate) fn eigenvalue_gap(g: &Mat) -> Option<f64> {
    let p = eigenphases(g);
    let mut gap: Option<f64> = None;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let d = (Complex64::from_polar(1.0, 2.0 * PI * p[i]) - Complex64::from_polar(1.0, 2.0 * PI * p[j])).norm();
            if d > 1e-10 {
                gap = Some(gap.map_or(d, |g| g.min(d)));
            }
        }
    }
    gap
}

pub(crate) fn same_class(a: &Mat, b: &Mat, tol: f64) -> Result<bool> {
    Ok(alcove_projection(a)?.distance(&alcove_projection(b)?) <= tol && max_abs(a).is_finite())
}
