//! Project random SU(3) elements to the alcove and check the result ignores conjugation.

use gerbes::lienum::{alcove_projection, GroupPoint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gerbes::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let g = GroupPoint::random(3, &mut rng)?;
        let h = GroupPoint::random(3, &mut rng)?;
        let p = alcove_projection(g.matrix())?;
        let q = alcove_projection(h.mul(&g).mul(&h.inverse()).matrix())?;
        let bary: Vec<String> = p.barycentric.iter().map(|x| format!("{x:.4}")).collect();
        println!("barycentric ({})  conjugate differs by {:.1e}", bary.join(", "), p.distance(&q));
    }
    Ok(())
}
