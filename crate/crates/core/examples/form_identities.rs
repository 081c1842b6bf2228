//! Finite-difference checks of the transgression identities on conjugacy
//! and biconjugacy classes.

use gerbes::lienum::{verify_omega, verify_varpi, verify_varpi_in, Pairing};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gerbes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = Pairing::trace();
    for step in [1e-2, 1e-3] {
        let r = verify_omega(&p, 10, step, &mut rng)?;
        println!("SU(3) class, step {step:.0e}: max residual {:.2e}", r.max_residual);
    }
    for level in [1, 2, 5] {
        let r = verify_varpi(&p, level, 10, 1e-3, &mut rng)?;
        println!("SU(2) biconjugacy class, level {level}: max residual {:.2e}", r.max_residual);
    }
    let r = verify_varpi_in(3, &p, 1, 5, 1e-3, &mut rng)?;
    println!("SU(3) biconjugacy class: max residual {:.2e}", r.max_residual);
    Ok(())
}
