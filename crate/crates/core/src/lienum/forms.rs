//! The 2-forms `ω` on conjugacy classes and `ϖ` on biconjugacy classes,
//! and a finite-difference exterior derivative to check their defining
//! identities.
//!
//! Tangent vectors to the conjugacy class of `h` are written `[Y, h]` for a
//! generator `Y ∈ su(n)`; tangents to a biconjugacy class at `(g_1, g_2)` are
//! `(Y g_1 - g_1 Z, Y g_2 - g_2 Z)`.

use rand::Rng;
use serde::Serialize;

use super::alcove::{alcove_exp, eigenvalue_gap, same_class};
use super::{bracket, uinv, AlgebraVector, GroupPoint, Mat, Pairing};
use crate::error::{Error, Result};

/// Eigenvalue separations below this (but not exactly coincident) make `ω`
/// numerically meaningless.
pub const OMEGA_GAP_TOL: f64 = 1e-6;

/// `ω(Y_1, Y_2) = ⟨(Ad_h⁻¹ - 1) Y_1, (Ad_h⁻¹ + 1) Y_2⟩` at `h`; this is the
/// pairing `⟨θ, (Ad⁻¹ + 1)/(Ad⁻¹ - 1) θ⟩` with the fraction cancelled
/// against `θ([Y, h]) = (Ad_h⁻¹ - 1) Y`.
pub fn omega_lambda(pairing: &Pairing, h: &GroupPoint, y1: &Mat, y2: &Mat) -> Result<f64> {
    if let Some(gap) = eigenvalue_gap(h.matrix()) {
        if gap < OMEGA_GAP_TOL {
            return Err(Error::Numeric(format!(
                "conjugacy class is nearly degenerate: eigenvalue gap {gap:e} below {OMEGA_GAP_TOL:e}"
            )));
        }
    }
    let ad_inv = |y: &Mat| uinv(h.matrix()) * y * h.matrix();
    let (a1, a2) = (ad_inv(y1), ad_inv(y2));
    // antisymmetrized so that equal arguments give exactly zero
    let p12 = pairing.pair(&(&a1 - y1), &(&a2 + y2));
    let p21 = pairing.pair(&(&a2 - y2), &(&a1 + y1));
    Ok(0.5 * (p12 - p21))
}

/// Finite-difference `dα(v_0, …, v_k)` at `point` for a `k`-form sampler
/// `α(p; w_1, …, w_k)` on R^d, treating the `v_i` as constant vector fields:
/// `Σ_i (-1)^i ∂_{v_i} α(v_0, …, v̂_i, …, v_k)` with central differences.
pub fn fd_exterior_derivative(
    form: &dyn Fn(&[f64], &[&[f64]]) -> Result<f64>,
    point: &[f64],
    dirs: &[&[f64]],
    step: f64,
) -> Result<f64> {
    if !(1e-6..=1e-2).contains(&step) {
        return Err(Error::Domain(format!("finite-difference step {step} outside [1e-6, 1e-2]")));
    }
    let mut total = 0.0;
    for i in 0..dirs.len() {
        let rest: Vec<&[f64]> = dirs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, d)| *d).collect();
        let at = |s: f64| -> Vec<f64> { point.iter().zip(dirs[i]).map(|(p, d)| p + s * d).collect() };
        let diff = (form(&at(step), &rest)? - form(&at(-step), &rest)?) / (2.0 * step);
        total += if i % 2 == 0 { diff } else { -diff };
    }
    Ok(total)
}

/// Right-trivialized derivative of `t ↦ exp(Σ t_a E_a)` at `t` in direction `u`.
fn exp_generator(n: usize, t: &[f64], u: &[f64], eps: f64) -> Result<Mat> {
    let shifted = |s: f64| -> Vec<f64> { t.iter().zip(u).map(|(a, b)| a + s * b).collect() };
    let e = |x: &[f64]| -> Result<Mat> { Ok(GroupPoint::exp(&AlgebraVector::from_coords(n, x)?).matrix().clone()) };
    let d = (e(&shifted(eps))? - e(&shifted(-eps))?) / num_complex::Complex64::new(2.0 * eps, 0.0);
    Ok(AlgebraVector::project(&(d * uinv(&e(t)?))).into_matrix())
}

/// Residuals of a sampled form identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub step: f64,
}

impl IdentityReport {
    fn new(residuals: Vec<f64>, step: f64) -> Self {
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        IdentityReport { residuals, max_residual, step }
    }
}

fn unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

/// A regular point of the SU(3) alcove, away from every wall.
fn regular_su3_xi<R: Rng + ?Sized>(rng: &mut R) -> Vec<f64> {
    let b: Vec<f64> = (0..3).map(|_| rng.gen_range(0.2..1.0)).collect();
    let s: f64 = b.iter().sum();
    let (b1, b2) = (b[1] / s, b[2] / s);
    let xi = [0.0, -b1, -b1 - b2];
    let mean = xi.iter().sum::<f64>() / 3.0;
    xi.iter().map(|x| x - mean).collect()
}

/// Check `ι*H = dω` on random regular SU(3) conjugacy classes: at each
/// sample, a random class point `h`, the chart `t ↦ e^{S(t)} h e^{-S(t)}`
/// and a random frame of three directions in su(3).
pub fn verify_omega<R: Rng + ?Sized>(pairing: &Pairing, samples: usize, step: f64, rng: &mut R) -> Result<IdentityReport> {
    let n = 3;
    let mut residuals = Vec::with_capacity(samples);
    for _ in 0..samples {
        let xi = regular_su3_xi(rng);
        let k = GroupPoint::random(n, rng)?;
        let h = k.mul(&alcove_exp(&xi)?).mul(&k.inverse());
        let point = |t: &[f64]| -> Result<GroupPoint> {
            let e = GroupPoint::exp(&AlgebraVector::from_coords(n, t)?);
            Ok(e.mul(&h).mul(&e.inverse()))
        };
        let omega = |t: &[f64], dirs: &[&[f64]]| -> Result<f64> {
            let y1 = exp_generator(n, t, dirs[0], super::FD_STEP)?;
            let y2 = exp_generator(n, t, dirs[1], super::FD_STEP)?;
            omega_lambda(pairing, &point(t)?, &y1, &y2)
        };
        let frame: Vec<Vec<f64>> = (0..3).map(|_| unit_vector(rng, 8)).collect();
        let dirs: Vec<&[f64]> = frame.iter().map(Vec::as_slice).collect();
        let origin = [0.0; 8];
        let d_omega = fd_exterior_derivative(&omega, &origin, &dirs, step)?;
        let th: Vec<Mat> = dirs.iter().map(|d| -> Result<Mat> {
            let y = AlgebraVector::from_coords(n, d)?.into_matrix();
            Ok(uinv(h.matrix()) * bracket(&y, h.matrix()))
        }).collect::<Result<_>>()?;
        let h_val = pairing.eval_h_algebra(&th[0], &th[1], &th[2]);
        residuals.push((d_omega - h_val).abs());
    }
    Ok(IdentityReport::new(residuals, step))
}

/// The biconjugacy class `{(x_1 h_1 x_2⁻¹, x_1 h_2 x_2⁻¹)}`.
#[derive(Clone, Debug)]
pub struct BiconjugacyClass {
    pub h1: GroupPoint,
    pub h2: GroupPoint,
}

/// A tangent vector `(Y g_1 - g_1 Z, Y g_2 - g_2 Z)` given by its generators.
#[derive(Clone, Debug)]
pub struct BiTangent {
    pub y: Mat,
    pub z: Mat,
}

impl BiconjugacyClass {
    /// Membership through the alcove projection of `g_1 g_2⁻¹`.
    pub fn contains(&self, g1: &GroupPoint, g2: &GroupPoint) -> Result<bool> {
        let a = g1.mul(&g2.inverse());
        let b = self.h1.mul(&self.h2.inverse());
        same_class(a.matrix(), b.matrix(), 1e-8)
    }
}

/// `ϖ = k [μ̃*ω - ⟨p_1*θ ∧ p_2*θ⟩]` on the biconjugacy class, `μ̃(g_1, g_2) = g_1 g_2⁻¹`,
/// normalized so that `k p_1*H = k p_2*H + dϖ`.
pub fn varpi(
    pairing: &Pairing,
    class: &BiconjugacyClass,
    level: u32,
    g: (&GroupPoint, &GroupPoint),
    u: &BiTangent,
    v: &BiTangent,
) -> Result<f64> {
    if !class.contains(g.0, g.1)? {
        return Err(Error::Domain("point does not lie on the biconjugacy class".into()));
    }
    let mu = g.0.mul(&g.1.inverse());
    let om = omega_lambda(pairing, &mu, &u.y, &v.y)?;
    let theta = |p: &GroupPoint, t: &BiTangent| p.inverse().adjoint_action(&t.y) - &t.z;
    let cross = pairing.pair(&theta(g.0, u), &theta(g.1, v)) - pairing.pair(&theta(g.0, v), &theta(g.1, u));
    Ok(level as f64 * (om - cross))
}

/// Check `k p_1*H = k p_2*H + dϖ` on random SU(2)×SU(2) biconjugacy classes
/// (see [`verify_varpi_in`]) in the chart `(s, t) ↦ (e^{S(s)} g_1 e^{-S(t)}, e^{S(s)} g_2 e^{-S(t)})`.
pub fn verify_varpi<R: Rng + ?Sized>(pairing: &Pairing, level: u32, samples: usize, step: f64, rng: &mut R) -> Result<IdentityReport> {
    verify_varpi_in(2, pairing, level, samples, step, rng)
}

/// [`verify_varpi`] on SU(n)×SU(n); on SU(3) the `μ̃*ω` term is exercised too,
/// since `dω` vanishes identically on the 2-dimensional SU(2) classes.
pub fn verify_varpi_in<R: Rng + ?Sized>(
    n: usize,
    pairing: &Pairing,
    level: u32,
    samples: usize,
    step: f64,
    rng: &mut R,
) -> Result<IdentityReport> {
    let d = n * n - 1;
    let mut residuals = Vec::with_capacity(samples);
    for _ in 0..samples {
        let g1 = GroupPoint::random(n, rng)?;
        let g2 = GroupPoint::random(n, rng)?;
        let class = BiconjugacyClass { h1: g1.clone(), h2: g2.clone() };
        let point = |t: &[f64]| -> Result<(GroupPoint, GroupPoint)> {
            let a = GroupPoint::exp(&AlgebraVector::from_coords(n, &t[..d])?);
            let b = GroupPoint::exp(&AlgebraVector::from_coords(n, &t[d..])?).inverse();
            Ok((a.mul(&g1).mul(&b), a.mul(&g2).mul(&b)))
        };
        let tangent = |t: &[f64], u: &[f64]| -> Result<BiTangent> {
            let y = exp_generator(n, &t[..d], &u[..d], super::FD_STEP)?;
            // -e^{T} d(e^{-T}) = d(e^{T}) e^{-T}
            let z = exp_generator(n, &t[d..], &u[d..], super::FD_STEP)?;
            Ok(BiTangent { y, z })
        };
        let form = |t: &[f64], dirs: &[&[f64]]| -> Result<f64> {
            let (p1, p2) = point(t)?;
            varpi(pairing, &class, level, (&p1, &p2), &tangent(t, dirs[0])?, &tangent(t, dirs[1])?)
        };
        let frame: Vec<Vec<f64>> = (0..3).map(|_| unit_vector(rng, 2 * d)).collect();
        let dirs: Vec<&[f64]> = frame.iter().map(Vec::as_slice).collect();
        let origin = vec![0.0; 2 * d];
        let d_varpi = fd_exterior_derivative(&form, &origin, &dirs, step)?;
        let tans: Vec<BiTangent> = dirs.iter().map(|u| tangent(&origin, u)).collect::<Result<_>>()?;
        let h_on = |g: &GroupPoint| {
            let th: Vec<Mat> = tans.iter().map(|t| g.inverse().adjoint_action(&t.y) - &t.z).collect();
            pairing.eval_h_algebra(&th[0], &th[1], &th[2])
        };
        let lhs = level as f64 * (h_on(&g1) - h_on(&g2));
        residuals.push((lhs - d_varpi).abs());
    }
    Ok(IdentityReport::new(residuals, step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exterior_derivative_textbook_cases() {
        let constant = |_: &[f64], w: &[&[f64]]| -> Result<f64> { Ok(2.0 * w[0][0] - w[0][1]) };
        let e1 = [1.0, 0.0];
        let e2 = [0.0, 1.0];
        assert!(fd_exterior_derivative(&constant, &[0.3, 0.4], &[&e1, &e2], 1e-3).unwrap().abs() < 1e-10);
        let x_dy = |p: &[f64], w: &[&[f64]]| -> Result<f64> { Ok(p[0] * w[0][1]) };
        assert!((fd_exterior_derivative(&x_dy, &[0.3, 0.4], &[&e1, &e2], 1e-3).unwrap() - 1.0).abs() < 1e-6);
        assert!(fd_exterior_derivative(&x_dy, &[0.0, 0.0], &[&e1, &e2], 1.0).is_err());
    }

    #[test]
    fn d_squared_of_a_one_form_is_small() {
        let alpha = |p: &[f64], w: &[&[f64]]| -> Result<f64> {
            Ok((p[0] * p[1]).sin() * w[0][0] + (p[2] + p[0] * p[0]).cos() * w[0][1] + p[1].exp() * w[0][2])
        };
        let d_alpha = |p: &[f64], w: &[&[f64]]| fd_exterior_derivative(&alpha, p, w, 1e-4);
        let (a, b, c) = ([0.6, 0.8, 0.0], [0.0, 0.6, 0.8], [0.8, 0.0, 0.6]);
        for step in [1e-2, 1e-3] {
            let dd = fd_exterior_derivative(&d_alpha, &[0.2, -0.1, 0.5], &[&a, &b, &c], step).unwrap();
            assert!(dd.abs() < 10.0 * step * step, "step {step}: {dd}");
        }
    }

    #[test]
    fn omega_is_antisymmetric_and_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = Pairing::trace();
        let h = alcove_exp(&regular_su3_xi(&mut rng)).unwrap();
        let y1 = AlgebraVector::random(3, &mut rng).unwrap().into_matrix();
        let y2 = AlgebraVector::random(3, &mut rng).unwrap().into_matrix();
        assert_eq!(omega_lambda(&p, &h, &y1, &y1).unwrap(), 0.0);
        let w = omega_lambda(&p, &h, &y1, &y2).unwrap();
        assert!((omega_lambda(&p, &h, &y2, &y1).unwrap() + w).abs() < 1e-12);
        let k = GroupPoint::random(3, &mut rng).unwrap();
        let hk = k.mul(&h).mul(&k.inverse());
        let moved = omega_lambda(&p, &hk, &k.adjoint_action(&y1), &k.adjoint_action(&y2)).unwrap();
        assert!((moved - w).abs() < 1e-8);
    }

    #[test]
    fn omega_refuses_nearly_degenerate_classes() {
        let h = alcove_exp(&[1e-8, -1e-8]).unwrap();
        let y = AlgebraVector::from_coords(2, &[1.0, 0.0, 0.0]).unwrap().into_matrix();
        let err = omega_lambda(&Pairing::trace(), &h, &y, &y).unwrap_err().to_string();
        assert!(err.contains("eigenvalue gap"), "{err}");
    }
}
