//! Topological WZW amplitudes of sampled maps from a triangulated ball to
//! SU(2). Inside each tetrahedron the map is the normalized linear
//! interpolation of its vertex values in the unit quaternions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{GroupPoint, Mat, Pairing};
use crate::error::{Error, Result};
use crate::holonomy::mesh::BallMesh;

/// Unit quaternion `(a, b, c, d)`, identified with `[[a+bi, c+di], [-c+di, a-bi]]`.
pub type Quat = [f64; 4];

fn quat_matrix(q: &Quat) -> Mat {
    let z = Complex64::new;
    Mat::from_row_slice(2, 2, &[z(q[0], q[1]), z(q[2], q[3]), z(-q[2], q[3]), z(q[0], -q[1])])
}

/// A map from a ball mesh to SU(2), sampled at the vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledMap {
    pub mesh: BallMesh,
    pub values: Vec<Quat>,
}

impl SampledMap {
    pub fn new(mesh: BallMesh, values: Vec<Quat>) -> Result<SampledMap> {
        if values.len() != mesh.positions.len() {
            return Err(Error::Domain(format!("{} values for {} vertices", values.len(), mesh.positions.len())));
        }
        for (v, q) in values.iter().enumerate() {
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (n - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!("value at vertex {v} is not a unit quaternion")));
            }
        }
        Ok(SampledMap { mesh, values })
    }

    pub fn from_fn(mesh: BallMesh, f: impl Fn([f64; 3]) -> Quat) -> Result<SampledMap> {
        let values = mesh.positions.iter().map(|&p| f(p)).collect();
        Self::new(mesh, values)
    }

    fn boundary_vertices(&self) -> Result<Vec<usize>> {
        let cc = self.mesh.covered_complex()?;
        let (_, emb) = cc.boundary_surface()?;
        Ok(emb.vertices)
    }
}

/// Degree-5 rule on the tetrahedron with 14 positive-weight points, as
/// barycentric coordinates; weights sum to 1.
fn tet_rule() -> Vec<([f64; 4], f64)> {
    let mut rule = Vec::with_capacity(14);
    for (a, w) in [(0.092_735_250_310_891_2, 0.073_493_043_116_361_9), (0.310_885_919_263_300_6, 0.112_687_925_718_015_9)] {
        for k in 0..4 {
            rule.push((std::array::from_fn(|i| if i == k { 1.0 - 3.0 * a } else { a }), w));
        }
    }
    let c = 0.045_503_704_125_649_6;
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        rule.push((std::array::from_fn(|k| if k == i || k == j { c } else { 0.5 - c }), 0.042_546_020_777_081_2));
    }
    rule
}

/// `∫_tet Φ*H` in barycentric coordinates.
fn tet_integral(pairing: &Pairing, rule: &[([f64; 4], f64)], q: [&Quat; 4], orientation: f64) -> Result<f64> {
    let mut total = 0.0;
    for (lambda, weight) in rule {
        let p: Quat = std::array::from_fn(|c| (0..4).map(|i| lambda[i] * q[i][c]).sum());
        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 0.1 {
            return Err(Error::Numeric("tetrahedron is too coarse for quaternion interpolation".into()));
        }
        let n: Quat = p.map(|x| x / norm);
        let tangent = |j: usize| -> Mat {
            let dp: Quat = std::array::from_fn(|c| q[j][c] - q[0][c]);
            let along: f64 = (0..4).map(|c| n[c] * dp[c]).sum();
            quat_matrix(&std::array::from_fn(|c| (dp[c] - along * n[c]) / norm))
        };
        let g = GroupPoint::with_tolerance(quat_matrix(&n), 1e-10)?;
        total += weight * pairing.eval_h(&g, &tangent(1), &tangent(2), &tangent(3));
    }
    Ok(orientation * total / 6.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WzwAmplitude {
    /// Quadrature of `Φ*H` over the ball.
    pub integral: f64,
    pub level: u32,
    pub amplitude: Complex64,
}

/// `exp(2πi k ∫_B Φ*H)`; the kinetic term is not included.
pub fn wzw_amplitude(map: &SampledMap, level: u32, pairing: &Pairing) -> Result<WzwAmplitude> {
    let vols = map.mesh.signed_volumes();
    let rule = tet_rule();
    let mut integral = 0.0;
    for (t, tet) in map.mesh.tetrahedra.iter().enumerate() {
        let q = tet.map(|v| &map.values[v]);
        integral += tet_integral(pairing, &rule, q, vols[t].signum())?;
    }
    let amplitude = Complex64::from_polar(1.0, 2.0 * PI * level as f64 * integral);
    Ok(WzwAmplitude { integral, level, amplitude })
}

/// The hemisphere fillings of the equatorial map `x ↦ x₁i + x₂j + x₃k`
/// on the boundary sphere: `(±cos(πr/2), sin(πr/2) x/|x|)` at radius `r`.
/// Glued along the boundary they form a degree-one map `S³ → SU(2)`.
pub fn cap_extensions(mesh: &BallMesh) -> Result<(SampledMap, SampledMap)> {
    let cap = |sign: f64| {
        move |p: [f64; 3]| -> Quat {
            let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            if r < 1e-15 {
                return [sign, 0.0, 0.0, 0.0];
            }
            let (s, c) = (PI * r / 2.0).sin_cos();
            let c = if (r - 1.0).abs() < 1e-12 { 0.0 } else { c };
            let s = if (r - 1.0).abs() < 1e-12 { 1.0 } else { s };
            [sign * c, s * p[0] / r, s * p[1] / r, s * p[2] / r]
        }
    };
    Ok((SampledMap::from_fn(mesh.clone(), cap(1.0))?, SampledMap::from_fn(mesh.clone(), cap(-1.0))?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtensionComparison {
    pub level: u32,
    pub first: WzwAmplitude,
    pub second: WzwAmplitude,
    /// Nearest integer to the difference of the two integrals.
    pub degree: i64,
    pub ratio: Complex64,
    /// `|ratio - exp(2πi k m)|`.
    pub residual: f64,
}

/// Amplitudes of two extensions of one boundary map and their ratio.
pub fn compare_extensions(a: &SampledMap, b: &SampledMap, level: u32, pairing: &Pairing) -> Result<ExtensionComparison> {
    let (ba, bb) = (a.boundary_vertices()?, b.boundary_vertices()?);
    if ba.len() != bb.len() {
        return Err(Error::Domain("extensions have different boundary triangulations".into()));
    }
    for &v in &ba {
        let p = a.mesh.positions[v];
        let w = bb
            .iter()
            .copied()
            .find(|&w| (0..3).all(|c| (b.mesh.positions[w][c] - p[c]).abs() < 1e-12))
            .ok_or_else(|| Error::Domain(format!("boundary vertex {v} of the first map has no partner")))?;
        if (0..4).any(|c| (a.values[v][c] - b.values[w][c]).abs() > 1e-12) {
            return Err(Error::Domain(format!("boundary maps differ at vertex {v}")));
        }
    }
    let first = wzw_amplitude(a, level, pairing)?;
    let second = wzw_amplitude(b, level, pairing)?;
    let degree = (first.integral - second.integral).round() as i64;
    let ratio = first.amplitude / second.amplitude;
    let expected = Complex64::from_polar(1.0, 2.0 * PI * (level as i64 * degree) as f64);
    Ok(ExtensionComparison { level, degree, residual: (ratio - expected).norm(), first, second, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::mesh::SphereMesh;

    #[test]
    fn quaternion_matrices_are_special_unitary() {
        let q = [0.5, 0.5, -0.5, 0.5];
        assert!(GroupPoint::new(quat_matrix(&q)).is_ok());
    }

    #[test]
    fn rule_is_exact_for_quintics() {
        // mean of λ^e over the simplex: 3! Π e_i! / (3 + Σ e_i)!
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        let rule = tet_rule();
        assert!((rule.iter().map(|r| r.1).sum::<f64>() - 1.0).abs() < 1e-14);
        for e in [[1, 0, 0, 0], [2, 1, 0, 0], [1, 1, 1, 1], [5, 0, 0, 0], [3, 2, 0, 0], [2, 2, 1, 0], [6, 0, 0, 0]] {
            let exact = 6.0 * e.iter().map(|&k| fact(k)).product::<f64>() / fact(3 + e.iter().sum::<u32>());
            let got: f64 = rule.iter().map(|(l, w)| w * (0..4).map(|i| l[i].powi(e[i] as i32)).product::<f64>()).sum();
            let tol = if e.iter().sum::<u32>() <= 5 { 1e-12 } else { 1e-4 };
            assert!((got - exact).abs() < tol, "{e:?}: {got} vs {exact}");
        }
    }

    #[test]
    fn constant_map_has_unit_amplitude() {
        let mesh = BallMesh::layered(&SphereMesh::icosahedron(), 2);
        let map = SampledMap::from_fn(mesh, |_| [0.0, 1.0, 0.0, 0.0]).unwrap();
        let a = wzw_amplitude(&map, 3, &Pairing::calibrated(1.0)).unwrap();
        assert_eq!(a.integral, 0.0);
        assert_eq!(a.amplitude, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn mismatched_boundaries_are_rejected() {
        let mesh = BallMesh::layered(&SphereMesh::icosahedron(), 2);
        let (north, _) = cap_extensions(&mesh).unwrap();
        let other = SampledMap::from_fn(mesh, |_| [1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(compare_extensions(&north, &other, 1, &Pairing::calibrated(1.0)).is_err());
    }
}
