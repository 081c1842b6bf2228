//! Numerical differential geometry on SU(2) and SU(3).
//!
//! Tangent vectors at `g` are `n x n` matrices `V`; the left Maurer–Cartan
//! form is `θ(V) = g⁻¹V`. Forms use the full antisymmetrization
//! `(α∧β)(u,v) = α(u)β(v) - α(v)β(u)`, so with a pairing `⟨·,·⟩` the
//! canonical 3-form is `H(u,v,w) = ⟨θu, [θv, θw]⟩`.

mod alcove;
mod forms;
mod wzw;

pub use alcove::{alcove_exp, alcove_projection, AlcovePoint};
pub use forms::{
    fd_exterior_derivative, omega_lambda, varpi, verify_omega, verify_varpi, verify_varpi_in, BiTangent, BiconjugacyClass,
    IdentityReport, OMEGA_GAP_TOL,
};
pub use wzw::{cap_extensions, compare_extensions, wzw_amplitude, ExtensionComparison, Quat, SampledMap, WzwAmplitude};

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Mat = DMatrix<Complex64>;

/// Tolerance for the unitarity and Lie-algebra membership invariants.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn bracket(x: &Mat, y: &Mat) -> Mat {
    x * y - y * x
}

/// Inverse of a unitary matrix.
pub(crate) fn uinv(m: &Mat) -> Mat {
    m.adjoint()
}

fn check_n(n: usize) -> Result<()> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(Error::Domain(format!("only SU(2) and SU(3) are supported, got n = {n}")))
    }
}

/// An element of SU(n), n = 2 or 3.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPoint {
    matrix: Mat,
}

impl GroupPoint {
    pub fn new(matrix: Mat) -> Result<GroupPoint> {
        Self::with_tolerance(matrix, MEMBERSHIP_TOL)
    }

    pub fn with_tolerance(matrix: Mat, tol: f64) -> Result<GroupPoint> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::Domain("group elements are square matrices".into()));
        }
        check_n(n)?;
        let unit = max_abs(&(matrix.adjoint() * &matrix - Mat::identity(n, n)));
        let det = (matrix.determinant() - c(1.0, 0.0)).norm();
        if unit > tol || det > tol {
            return Err(Error::Domain(format!(
                "not special unitary: |g*g - 1| = {unit:e}, |det g - 1| = {det:e}"
            )));
        }
        Ok(GroupPoint { matrix })
    }

    pub fn identity(n: usize) -> Result<GroupPoint> {
        check_n(n)?;
        Ok(GroupPoint { matrix: Mat::identity(n, n) })
    }

    pub fn exp(x: &AlgebraVector) -> GroupPoint {
        GroupPoint { matrix: x.matrix.exp() }
    }

    /// `exp(X)` for a uniformly random `X` with coordinates in `[-2, 2]`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<GroupPoint> {
        Ok(Self::exp(&AlgebraVector::random(n, rng)?))
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn inverse(&self) -> GroupPoint {
        GroupPoint { matrix: self.matrix.adjoint() }
    }

    pub fn mul(&self, other: &GroupPoint) -> GroupPoint {
        GroupPoint { matrix: &self.matrix * &other.matrix }
    }

    /// `Ad_g X = g X g⁻¹`.
    pub fn adjoint_action(&self, x: &Mat) -> Mat {
        &self.matrix * x * self.matrix.adjoint()
    }

    /// `θ(V) = g⁻¹ V` for a tangent vector `V` at `g`.
    pub fn maurer_cartan(&self, v: &Mat) -> Mat {
        self.matrix.adjoint() * v
    }
}

/// An element of su(n): anti-hermitian and traceless.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraVector {
    matrix: Mat,
}

impl AlgebraVector {
    pub fn new(matrix: Mat) -> Result<AlgebraVector> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::Domain("Lie algebra elements are square matrices".into()));
        }
        check_n(n)?;
        let herm = max_abs(&(&matrix + matrix.adjoint()));
        let tr = matrix.trace().norm();
        if herm > MEMBERSHIP_TOL || tr > MEMBERSHIP_TOL {
            return Err(Error::Domain(format!("not in su({n}): |X + X*| = {herm:e}, |tr X| = {tr:e}")));
        }
        Ok(AlgebraVector { matrix })
    }

    /// Nearest element of su(n) in the Frobenius norm.
    pub fn project(m: &Mat) -> AlgebraVector {
        let n = m.nrows();
        let mut a = (m - m.adjoint()) * c(0.5, 0.0);
        let t = a.trace() / c(n as f64, 0.0);
        for i in 0..n {
            a[(i, i)] -= t;
        }
        AlgebraVector { matrix: a }
    }

    pub fn from_coords(n: usize, coords: &[f64]) -> Result<AlgebraVector> {
        let basis = su_basis(n)?;
        if coords.len() != basis.len() {
            return Err(Error::Domain(format!("su({n}) has dimension {}, got {} coordinates", basis.len(), coords.len())));
        }
        let mut m = Mat::zeros(n, n);
        for (b, &t) in basis.iter().zip(coords) {
            m += b * c(t, 0.0);
        }
        Ok(AlgebraVector { matrix: m })
    }

    pub fn coords(&self) -> Vec<f64> {
        su_basis(self.matrix.nrows()).unwrap().iter().map(|b| trace_pairing(b, &self.matrix)).collect()
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<AlgebraVector> {
        let dim = n * n - 1;
        let coords: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
        Self::from_coords(n, &coords)
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }
}

/// `-Re tr(XY)`.
pub fn trace_pairing(x: &Mat, y: &Mat) -> f64 {
    -(x * y).trace().re
}

/// Basis of su(n) orthonormal for `-tr(XY)`: `iσ_a/√2` for n = 2 and
/// `iλ_a/√2` (Gell-Mann) for n = 3.
pub fn su_basis(n: usize) -> Result<Vec<Mat>> {
    check_n(n)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    let mut push = |entries: &[(usize, usize, Complex64)]| {
        let mut m = Mat::zeros(n, n);
        for &(i, j, z) in entries {
            m[(i, j)] = z * c(0.0, s);
        }
        out.push(m);
    };
    for a in 0..n {
        for b in a + 1..n {
            push(&[(a, b, c(1.0, 0.0)), (b, a, c(1.0, 0.0))]);
            push(&[(a, b, c(0.0, -1.0)), (b, a, c(0.0, 1.0))]);
        }
    }
    push(&[(0, 0, c(1.0, 0.0)), (1, 1, c(-1.0, 0.0))]);
    if n == 3 {
        let r = 1.0 / 3f64.sqrt();
        push(&[(0, 0, c(r, 0.0)), (1, 1, c(r, 0.0)), (2, 2, c(-2.0 * r, 0.0))]);
    }
    Ok(out)
}

/// An invariant pairing `⟨X,Y⟩ = -factor · tr(XY)` on su(n).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Pairing {
    /// Scale of the underlying inner product relative to `-tr(XY)`.
    pub scale: f64,
    /// Calibration constant multiplying the 3-form.
    pub kappa: f64,
}

impl Pairing {
    /// The plain trace form, `κ = 1`.
    pub fn trace() -> Pairing {
        Pairing { scale: 1.0, kappa: 1.0 }
    }

    /// Inner product `scale · (-tr)` with κ from [`calibrate_h`].
    pub fn calibrated(scale: f64) -> Pairing {
        Pairing { scale, kappa: calibrate_h(scale) }
    }

    fn factor(&self) -> f64 {
        self.scale * self.kappa
    }

    pub fn pair(&self, x: &Mat, y: &Mat) -> f64 {
        self.factor() * trace_pairing(x, y)
    }

    /// `H(u,v,w)` at `g` for tangent vectors `u, v, w` there.
    pub fn eval_h(&self, g: &GroupPoint, u: &Mat, v: &Mat, w: &Mat) -> f64 {
        self.eval_h_algebra(&g.maurer_cartan(u), &g.maurer_cartan(v), &g.maurer_cartan(w))
    }

    /// `H` on left-trivialized tangents: `⟨X, [Y, Z]⟩`.
    pub fn eval_h_algebra(&self, x: &Mat, y: &Mat, z: &Mat) -> f64 {
        self.pair(x, &bracket(y, z))
    }
}

/// κ with `∫_{SU(2)} κ⟨θ,[θ,θ]⟩/6 = 1` for `⟨X,Y⟩ = -scale·tr(XY)`. The form
/// is bi-invariant, so the integral is its value on a frame orthonormal for
/// the round metric of the unit 3-sphere times `2π²`. The frame is the
/// quaternion frame `(i, j, k) = (iσ_3, iσ_2, iσ_1)`, which fixes the
/// orientation of SU(2).
pub fn calibrate_h(scale: f64) -> f64 {
    let value = scale * quaternion_frame_value();
    1.0 / (value * 2.0 * PI * PI)
}

fn quaternion_frame_value() -> f64 {
    let root2 = c(2f64.sqrt(), 0.0);
    let b = su_basis(2).unwrap();
    let [i, j, k] = [&b[2], &b[1], &b[0]].map(|m| m * root2);
    trace_pairing(&i, &bracket(&j, &k))
}

/// Exponential chart `t ↦ base · exp(Σ t_a E_a)` with `|t| < bound`.
#[derive(Clone, Debug)]
pub struct ExpChart {
    pub base: GroupPoint,
    pub bound: f64,
}

/// Default step for first derivatives.
pub const FD_STEP: f64 = 1e-5;

impl ExpChart {
    /// Chart of radius `π`, inside the injectivity radius of `exp` on SU(2) and SU(3).
    pub fn new(base: GroupPoint) -> ExpChart {
        ExpChart { base, bound: PI }
    }

    fn check(&self, t: &[f64]) -> Result<()> {
        let r = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r >= self.bound {
            return Err(Error::Domain(format!("chart parameter norm {r} exceeds the bound {}", self.bound)));
        }
        Ok(())
    }

    pub fn point(&self, t: &[f64]) -> Result<GroupPoint> {
        self.check(t)?;
        let x = AlgebraVector::from_coords(self.base.n(), t)?;
        Ok(self.base.mul(&GroupPoint::exp(&x)))
    }
}

/// `θ` of the chart velocity in direction `dir` at `t`, by central differences.
pub fn maurer_cartan(chart: &ExpChart, t: &[f64], dir: &[f64], step: f64) -> Result<AlgebraVector> {
    let g = chart.point(t)?;
    let shifted = |s: f64| -> Vec<f64> { t.iter().zip(dir).map(|(a, b)| a + s * b).collect() };
    let plus = chart.point(&shifted(step))?;
    let minus = chart.point(&shifted(-step))?;
    let v = (plus.matrix() - minus.matrix()) * c(0.5 / step, 0.0);
    Ok(AlgebraVector::project(&g.maurer_cartan(&v)))
}

/// Closed-form SU(2) version of [`maurer_cartan`], from the derivative of
/// the exponential map: with `X = Σ t_a E_a` acting on su(2) ≅ R³ by
/// `ad_X v = -2 x × v` (`x = t/√2`), `θ = ((1 - e^{-ad_X}) / ad_X) dX`.
pub fn maurer_cartan_su2_exact(chart: &ExpChart, t: &[f64], dir: &[f64]) -> Result<AlgebraVector> {
    chart.check(t)?;
    if chart.base.n() != 2 || t.len() != 3 || dir.len() != 3 {
        return Err(Error::Domain("the closed form applies to SU(2) charts".into()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = [t[0] * s, t[1] * s, t[2] * s];
    let v = [dir[0] * s, dir[1] * s, dir[2] * s];
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let out = if r < 1e-12 {
        v
    } else {
        let u = [x[0] / r, x[1] / r, x[2] / r];
        let along = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        let perp = [v[0] - along * u[0], v[1] - along * u[1], v[2] - along * u[2]];
        let cr = [u[1] * perp[2] - u[2] * perp[1], u[2] * perp[0] - u[0] * perp[2], u[0] * perp[1] - u[1] * perp[0]];
        let a = (2.0 * r).sin() / (2.0 * r);
        let b = (1.0 - (2.0 * r).cos()) / (2.0 * r);
        [0, 1, 2].map(|i| along * u[i] + a * perp[i] + b * cr[i])
    };
    AlgebraVector::from_coords(2, &out.map(|z| z / s))
}

/// Hopf coordinates `(η, ξ₁, ξ₂) ↦ [[cos η e^{iξ₁}, sin η e^{iξ₂}], [-sin η e^{-iξ₂}, cos η e^{-iξ₁}]]`.
pub fn hopf_point(eta: f64, xi1: f64, xi2: f64) -> Mat {
    let (ce, se) = (eta.cos(), eta.sin());
    let a = Complex64::from_polar(1.0, xi1);
    let b = Complex64::from_polar(1.0, xi2);
    Mat::from_row_slice(2, 2, &[a * ce, b * se, -b.conj() * se, a.conj() * ce])
}

fn hopf_tangents(eta: f64, xi1: f64, xi2: f64) -> [Mat; 3] {
    let (ce, se) = (eta.cos(), eta.sin());
    let a = Complex64::from_polar(1.0, xi1);
    let b = Complex64::from_polar(1.0, xi2);
    let i = c(0.0, 1.0);
    let d_eta = Mat::from_row_slice(2, 2, &[-a * se, b * ce, -b.conj() * ce, -a.conj() * se]);
    let d_xi1 = Mat::from_row_slice(2, 2, &[i * a * ce, c(0.0, 0.0), c(0.0, 0.0), -i * a.conj() * ce]);
    let d_xi2 = Mat::from_row_slice(2, 2, &[c(0.0, 0.0), i * b * se, i * b.conj() * se, c(0.0, 0.0)]);
    [d_eta, d_xi1, d_xi2]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Integration {
    pub resolution: usize,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Midpoint-rule integral of `H` over SU(2) in Hopf coordinates with
/// `resolution` cells per coordinate. The coordinates `(η, ξ₂, ξ₁)` are
/// positively oriented for the frame `(iσ_1, iσ_2, iσ_3)`.
pub fn integrate_h_su2(resolution: usize, pairing: &Pairing) -> Integration {
    let n = resolution.max(1);
    let (he, hx) = (PI / 2.0 / n as f64, 2.0 * PI / n as f64);
    let mut total = 0.0;
    for a in 0..n {
        let eta = (a as f64 + 0.5) * he;
        let mut ring = 0.0;
        for b in 0..n {
            let xi1 = (b as f64 + 0.5) * hx;
            for d in 0..n {
                let xi2 = (d as f64 + 0.5) * hx;
                let g = GroupPoint { matrix: hopf_point(eta, xi1, xi2) };
                let [t0, t1, t2] = hopf_tangents(eta, xi1, xi2);
                ring += pairing.eval_h(&g, &t0, &t2, &t1);
            }
        }
        total += ring;
    }
    let value = total * he * hx * hx;
    let warning = (resolution < 8).then(|| format!("resolution {resolution} is below 8; expect poor accuracy"));
    Integration { resolution, value, warning }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_is_orthonormal() {
        for n in [2, 3] {
            let b = su_basis(n).unwrap();
            assert_eq!(b.len(), n * n - 1);
            for (i, x) in b.iter().enumerate() {
                assert!(AlgebraVector::new(x.clone()).is_ok());
                for (j, y) in b.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((trace_pairing(x, y) - expect).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn kappa_scales_inversely() {
        let k = calibrate_h(1.0);
        assert!(k > 0.0);
        assert!((k - 1.0 / (8.0 * PI * PI)).abs() < 1e-15);
        assert!((calibrate_h(2.0) - k / 2.0).abs() < 1e-10);
    }

    #[test]
    fn identity_chart_velocity_is_the_direction() {
        let chart = ExpChart::new(GroupPoint::identity(3).unwrap());
        let dir = [0.3, -0.1, 0.2, 0.5, 0.0, 0.7, -0.4, 0.1];
        let th = maurer_cartan(&chart, &[0.0; 8], &dir, FD_STEP).unwrap();
        let x = AlgebraVector::from_coords(3, &dir).unwrap();
        assert!(max_abs(&(th.matrix() - x.matrix())) < 1e-9);
    }

    #[test]
    fn h_is_antisymmetric_and_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = Pairing::trace();
        let [x, y, z] = [0, 1, 2].map(|_| AlgebraVector::random(3, &mut rng).unwrap().into_matrix());
        let h = p.eval_h_algebra(&x, &y, &z);
        assert!((p.eval_h_algebra(&y, &x, &z) + h).abs() < 1e-10);
        assert!((p.eval_h_algebra(&x, &z, &y) + h).abs() < 1e-10);
        assert!((p.eval_h_algebra(&z, &y, &x) + h).abs() < 1e-10);
        assert!(p.eval_h_algebra(&x, &y, &y).abs() < 1e-12);
    }

    #[test]
    fn constructors_enforce_invariants() {
        let mut m = Mat::identity(2, 2);
        m[(0, 0)] = c(1.0 + 1e-9, 0.0);
        assert!(GroupPoint::new(m).is_err());
        assert!(GroupPoint::identity(4).is_err());
        let mut x = Mat::zeros(2, 2);
        x[(0, 0)] = c(0.0, 1.0);
        assert!(AlgebraVector::new(x).is_err());
        let ch = ExpChart::new(GroupPoint::identity(2).unwrap());
        assert!(ch.point(&[4.0, 0.0, 0.0]).is_err());
    }
}
