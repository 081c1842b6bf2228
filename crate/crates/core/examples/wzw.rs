//! Two extensions of the same boundary map over a ball differ by a full
//! sphere, so their amplitudes agree up to exp(2 pi i k m).

use gerbes::holonomy::mesh::{BallMesh, SphereMesh};
use gerbes::io::complex_string;
use gerbes::lienum::{cap_extensions, compare_extensions, Pairing};

fn main() -> gerbes::Result<()> {
    let pairing = Pairing::calibrated(1.0);
    for shells in [2, 4] {
        let mesh = BallMesh::layered(&SphereMesh::icosphere(1), shells);
        let (north, south) = cap_extensions(&mesh)?;
        for k in 1..=3 {
            let cmp = compare_extensions(&north, &south, k, &pairing)?;
            println!(
                "{shells} shells, k = {k}: integrals {:+.6} / {:+.6}, degree {}, ratio {}, residual {:.1e}",
                cmp.first.integral,
                cmp.second.integral,
                cmp.degree,
                complex_string(cmp.ratio),
                cmp.residual
            );
        }
    }
    Ok(())
}
