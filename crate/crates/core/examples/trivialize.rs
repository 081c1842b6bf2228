//! Solve for a trivialization of a coboundary and watch it fail on a cocycle
//! with nonzero class.

use std::sync::Arc;

use gerbes::deligne::random::random_rational;
use gerbes::deligne::{solve_trivialization, torsion_generators, CoverNerve, DeligneCochain, Realization, TrivializationOutcome};
use gerbes::rootsys::{rational_string, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(label: &str, c: &DeligneCochain<Rational>) -> gerbes::Result<()> {
    match solve_trivialization(c)? {
        TrivializationOutcome::Trivialized(t) => {
            let rho: Vec<String> = t.rho.iter().map(rational_string).collect();
            println!("{label}: trivialized, rho = [{}], defect {}", rho.join(", "), t.defect);
        }
        TrivializationOutcome::Obstructed(o) => println!("{label}: {o}"),
    }
    Ok(())
}

fn main() -> gerbes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let nerve = Arc::new(CoverNerve::simplex(4, Some(3))?);
    let c = random_rational(&mut rng, 1, 2, &nerve, 6)?.differential();
    show("coboundary on the 3-skeleton of a 4-simplex", &c)?;

    let s = Arc::new(CoverNerve::projective_plane().suspension()?);
    let (gen, _) = &torsion_generators(&s)[0];
    let mut flat = DeligneCochain::<Rational>::zero(2, 2, s.clone(), Realization::Pure)?;
    flat.set_component(0, gen.iter().map(|v| vec![v.clone()]).collect())?;
    show("torsion cocycle on the suspended projective plane", &flat)?;

    let sphere = Arc::new(CoverNerve::simplex_boundary(4)?);
    let mut c = DeligneCochain::<Rational>::zero(2, 2, sphere, Realization::Pure)?;
    c.set(0, &[0, 1, 2], 0, Rational::new(1.into(), 3.into()))?;
    show("flat U(1) data on a 2-sphere", &c)
}
