use gerbes::grpcoh::{center_of, group_cohomology_u1, FiniteAbelianGroup};
use gerbes::rootsys::{CartanType, Family, RootSystem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

fn group(orders: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(orders.to_vec()).unwrap()
}

#[test]
fn documented_small_cases() {
    assert_eq!(group_cohomology_u1(&group(&[2]), 3).unwrap().to_string(), "Z/2");
    assert_eq!(group_cohomology_u1(&group(&[2, 2]), 2).unwrap().to_string(), "Z/2");
    for m in 2..=9 {
        assert!(group_cohomology_u1(&group(&[m]), 2).unwrap().is_trivial(), "Z/{m}");
    }
}

#[test]
fn cyclic_groups_are_periodic() {
    for m in 2..=6u64 {
        let z = group(&[m]);
        for n in 1..=3 {
            let got = group_cohomology_u1(&z, n).unwrap();
            let expect = if n % 2 == 1 { format!("Z/{m}") } else { "0".into() };
            assert_eq!(got.to_string(), expect, "H^{n}(Z/{m})");
        }
    }
}

#[test]
fn schur_multipliers_of_two_cyclic_factors() {
    for a in 2..=6u64 {
        for b in 2..=6u64 {
            let h = group_cohomology_u1(&group(&[a, b]), 2).unwrap();
            assert_eq!(h.order(), Some(BigInt::from(a.gcd(&b))), "Z/{a} x Z/{b}");
        }
    }
}

#[test]
fn trivial_group_has_trivial_cohomology() {
    for n in 1..=4 {
        assert!(group_cohomology_u1(&FiniteAbelianGroup::trivial(), n).unwrap().is_trivial());
    }
}

#[test]
fn cohomology_is_killed_by_the_group_order() {
    for orders in [vec![2u64, 2], vec![4], vec![2, 4], vec![3, 3], vec![2, 2, 2]] {
        let z = group(&orders);
        for n in 1..=3 {
            let h = group_cohomology_u1(&z, n).unwrap();
            let order = BigInt::from(z.order());
            assert!(h.torsion.iter().all(|t| (&order % t).is_zero()), "{z} degree {n}: {h}");
        }
    }
}

#[test]
fn centers_of_simple_types() {
    assert_eq!(center_of(Family::A, 1).unwrap().to_string(), "Z/2");
    assert_eq!(center_of(Family::E, 8).unwrap().to_string(), "0");
    assert_eq!(center_of(Family::D, 4).unwrap().to_string(), "Z/2 x Z/2");
    assert_eq!(center_of(Family::D, 5).unwrap().to_string(), "Z/4");
    assert_eq!(center_of(Family::E, 6).unwrap().to_string(), "Z/3");
    assert_eq!(center_of(Family::E, 7).unwrap().to_string(), "Z/2");
    assert_eq!(center_of(Family::A, 5).unwrap().to_string(), "Z/6");
    for t in CartanType::all_up_to_rank(8) {
        let z = center_of(t.family, t.rank).unwrap();
        let det = RootSystem::from_type(t).unwrap().cartan_determinant();
        assert_eq!(BigInt::from(z.order()), det, "{t:?}");
        if matches!(t.family, Family::E | Family::F | Family::G) && t.rank != 6 && t.rank != 7 {
            assert!(BigInt::from(z.order()).is_one());
        }
    }
}

#[test]
fn center_obstruction_groups() {
    // degree 3 obstructions and degree 2 classifications for the D4 center
    let z = center_of(Family::D, 4).unwrap();
    assert_eq!(group_cohomology_u1(&z, 2).unwrap().to_string(), "Z/2");
    assert_eq!(group_cohomology_u1(&z, 3).unwrap().to_string(), "Z/2 x Z/2 x Z/2");
}
