//! Equivariant and Jandl structures built from a primitive `m` with `ξ = D m`.

use std::sync::Arc;

use gerbes::deligne::equivariant::group_coboundary_1;
use gerbes::deligne::random::random_rational;
use gerbes::deligne::{check_equivariant_data, check_jandl_data, CoverNerve, GroupActionOnCover, Involution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gerbes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let nerve = Arc::new(CoverNerve::simplex(4, Some(3))?);
    let m = random_rational(&mut rng, 1, 2, &nerve, 5)?;
    let xi = m.differential();

    // S3 permuting the first three charts
    let act = GroupActionOnCover::new(4, &[vec![1, 0, 2, 3], vec![1, 2, 0, 3]])?;
    let e: Vec<_> = (0..act.order()).map(|_| random_rational(&mut rng, 0, 2, &nerve, 5)).collect::<Result<_, _>>()?;
    let a: Vec<_> = (0..act.order())
        .map(|g| m.pullback(act.element(g))?.sub(&m)?.add(&e[g].differential()))
        .collect::<Result<_, _>>()?;
    let b: Vec<Vec<_>> = (0..act.order())
        .map(|g| (0..act.order()).map(|h| group_coboundary_1(&act, &e, g, h)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let report = check_equivariant_data(&act, &xi, &a, &b, 0.0)?;
    println!("equivariant structure for a group of order {}:", act.order());
    for c in &report.checks {
        println!("  {:<28} residual {}", c.name, c.residual);
    }

    let k = Involution::new(vec![1, 0, 3, 2])?;
    let y = random_rational(&mut rng, 0, 2, &nerve, 5)?;
    let km = m.pullback(k.perm())?;
    let a = m.neg().sub(&km)?.add(&y.differential())?;
    let phi = y.pullback(k.perm())?.sub(&y)?;
    println!("Jandl structure for {:?}:", k.perm());
    for c in &check_jandl_data(&k, &xi, &a, &phi, 0.0)?.checks {
        println!("  {:<28} residual {}", c.name, c.residual);
    }
    Ok(())
}
