//! U(1)-valued cohomology of finite abelian groups and of the centers of
//! simply connected simple groups.

use gerbes::grpcoh::{center_of, group_cohomology_u1, FiniteAbelianGroup};
use gerbes::rootsys::{CartanType, Family};

fn main() -> gerbes::Result<()> {
    for orders in [vec![2], vec![3], vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2]] {
        let z = FiniteAbelianGroup::new(orders)?;
        let hs: Vec<String> = (1..=3).map(|n| group_cohomology_u1(&z, n).map(|h| h.to_string())).collect::<Result<_, _>>()?;
        println!("{:<18} H^1, H^2, H^3 = {}", hs.join(" | "), z);
    }
    println!();
    for t in CartanType::all_up_to_rank(8).into_iter().filter(|t| t.rank >= 4 || t.family == Family::G) {
        let z = center_of(t.family, t.rank)?;
        let h3 = group_cohomology_u1(&z, 3)?;
        println!("{:<4} center {:<12} H^3 = {h3}", t.to_string(), z.to_string());
    }
    Ok(())
}
