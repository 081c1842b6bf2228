//! Boundary holonomy against the bulk integral of the curvature on a solid ball.

use std::sync::Arc;

use gerbes::deligne::random::random_trivial_gerbe;
use gerbes::holonomy::mesh::{BallMesh, SphereMesh};
use gerbes::holonomy::stokes_check;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gerbes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, ball) in [
        ("coned icosahedron", BallMesh::coned(&SphereMesh::icosahedron())),
        ("layered icosphere", BallMesh::layered(&SphereMesh::icosphere(1), 2)),
    ] {
        let cc = Arc::new(ball.covered_complex()?);
        let nerve = Arc::new(cc.nerve(3)?);
        let (c, rho) = random_trivial_gerbe(&mut rng, &cc, &nerve)?;
        let h = cc.coboundary_f64(2, &rho);
        let out = stokes_check(&cc, &h, &c, None)?;
        println!(
            "{name}: {} tetrahedra, sum H = {:.6}, gap {:.1e}, exactness {:.1e}",
            cc.num_simplices(3),
            h.iter().sum::<f64>(),
            out.gap,
            out.exactness_residual
        );
    }
    Ok(())
}
