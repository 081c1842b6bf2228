//! Integral cohomology of small nerves and the Dixmier-Douady class of a
//! flat torsion gerbe on the suspension of the projective plane.

use std::sync::Arc;

use gerbes::deligne::{cech_cohomology, dd_class_of, torsion_generators, CoverNerve, DeligneCochain, Realization};
use gerbes::rootsys::Rational;

fn main() -> gerbes::Result<()> {
    let spaces = [
        ("boundary of the 4-simplex", CoverNerve::simplex_boundary(4)?),
        ("projective plane", CoverNerve::projective_plane()),
        ("suspended projective plane", CoverNerve::projective_plane().suspension()?),
    ];
    for (name, nerve) in &spaces {
        let groups: Vec<String> = (0..=3).map(|k| cech_cohomology(nerve, k).to_string()).collect();
        println!("{name}: H^0..H^3 = {}", groups.join(", "));
    }

    let s = Arc::new(spaces[2].1.clone());
    let (gen, order) = &torsion_generators(&s)[0];
    let mut c = DeligneCochain::<Rational>::zero(2, 2, s.clone(), Realization::Pure)?;
    c.set_component(0, gen.iter().map(|v| vec![v.clone()]).collect())?;
    let class = dd_class_of(&c)?;
    println!("flat gerbe of order {order}: class {class}, twice it {}", class.add(&class)?);
    Ok(())
}
