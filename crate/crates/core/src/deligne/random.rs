//! Random cochains for property tests, fixtures, and examples.

use std::sync::Arc;

use rand::Rng;

use crate::deligne::cochain::{DeligneCochain, Realization};
use crate::deligne::complex::CoveredComplex;
use crate::deligne::nerve::CoverNerve;
use crate::error::Result;
use crate::rootsys::Rational;

/// Pure-nerve cochain with values `a / b`, `|a| <= 3b`, `1 <= b <= max_denominator`.
pub fn random_rational<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    level: usize,
    nerve: &Arc<CoverNerve>,
    max_denominator: i64,
) -> Result<DeligneCochain<Rational>> {
    DeligneCochain::from_fn(degree, level, nerve.clone(), Realization::Pure, |_, _, _| {
        let b = rng.gen_range(1..=max_denominator.max(1));
        let a = rng.gen_range(-3 * b..=3 * b);
        Rational::new(a.into(), b.into())
    })
}

/// Cochain with independent uniform values in `[-scale, scale]` on every
/// supported slot (U(1) parts uniform in `[0, 1)`).
pub fn random_real<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    level: usize,
    nerve: &Arc<CoverNerve>,
    realization: Realization,
    scale: f64,
) -> Result<DeligneCochain<f64>> {
    DeligneCochain::from_fn(degree, level, nerve.clone(), realization, |k, _, _| {
        if k == 0 {
            rng.gen::<f64>()
        } else {
            rng.gen_range(-scale..=scale)
        }
    })
}

/// A trivial gerbe in a random gauge on a covered complex: `(0, 0, ρ) + D(h, W)`
/// with `ρ` a random global 2-cochain in `[-1, 1]`. Returns the cocycle and `ρ`.
pub fn random_trivial_gerbe<R: Rng + ?Sized>(
    rng: &mut R,
    cc: &Arc<CoveredComplex>,
    nerve: &Arc<CoverNerve>,
) -> Result<(DeligneCochain<f64>, Vec<f64>)> {
    let rho: Vec<f64> = (0..cc.num_simplices(2)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let real = Realization::Geometric(cc.clone());
    let base = DeligneCochain::from_fn(2, 2, nerve.clone(), real.clone(), |k, _, s| if k == 2 { rho[s] } else { 0.0 })?;
    let gauge = random_real(rng, 1, 2, nerve, real, 1.0)?;
    Ok((base.add(&gauge.differential())?, rho))
}
