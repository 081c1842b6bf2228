//! Holonomy of a gauge-transformed trivial gerbe on a subdivided icosahedron,
//! evaluated under several chart assignments.

use std::f64::consts::PI;
use std::sync::Arc;

use gerbes::deligne::random::random_trivial_gerbe;
use gerbes::holonomy::mesh::SphereMesh;
use gerbes::holonomy::{surface_holonomy, ChartAssignment};
use gerbes::io::complex_string;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gerbes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cc = Arc::new(SphereMesh::icosphere(1).covered_complex()?);
    let nerve = Arc::new(cc.nerve(3)?);
    let (c, rho) = random_trivial_gerbe(&mut rng, &cc, &nerve)?;
    let expected = Complex64::from_polar(1.0, 2.0 * PI * rho.iter().sum::<f64>());
    println!("{} triangles, {} charts", cc.num_simplices(2), cc.num_charts());
    println!("exp(2 pi i sum rho) = {}", complex_string(expected));
    for trial in 0..4 {
        let asg = ChartAssignment::random(&cc, &mut rng)?;
        let hol = surface_holonomy(&cc, &c, &asg)?;
        println!("assignment {trial}: {}  (gap {:.1e})", complex_string(hol), (hol - expected).norm());
    }
    Ok(())
}
