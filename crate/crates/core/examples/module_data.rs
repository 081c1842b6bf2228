//! Rank-2 gerbe module over a gauge-transformed trivial gerbe on the icosahedron.

use std::sync::Arc;

use gerbes::deligne::random::random_real;
use gerbes::deligne::{check_module_data, DeligneCochain, ModuleData, Realization};
use gerbes::holonomy::mesh::SphereMesh;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> gerbes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cc = Arc::new(SphereMesh::icosahedron().covered_complex()?);
    let nerve = Arc::new(cc.nerve(3)?);
    let real = Realization::Geometric(cc.clone());
    let rho: Vec<f64> = (0..cc.num_simplices(2)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let base = DeligneCochain::from_fn(2, 2, nerve.clone(), real.clone(), |k, _, s| if k == 2 { rho[s] } else { 0.0 })?;
    let gauge = random_real(&mut rng, 1, 2, &nerve, real, 1.0)?;
    let gerbe = base.add(&gauge.differential())?;

    let data = ModuleData::identity(&base, 2, rho)?.gauge_transform(&gauge)?;
    for c in check_module_data(&gerbe, &data, 1e-9)?.checks {
        println!("{:<26} {:.2e}  {}", c.name, c.residual, if c.passed { "ok" } else { "FAILED" });
    }

    let mut broken = data.clone();
    broken.transitions[0][0] *= Complex64::from_polar(1.0, 0.1);
    let report = check_module_data(&gerbe, &broken, 1e-9)?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    println!("after twisting one transition matrix: {failed:?} fail");
    Ok(())
}
