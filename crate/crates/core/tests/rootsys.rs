use std::collections::BTreeSet;

use gerbes::rootsys::{alcove, minimal_level_k0, CartanType, Family, RVector, Rational, RootSystem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn half(n: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(2))
}

fn e(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn lin(a: i64, x: &[i64], b: i64, y: &[i64]) -> RVector {
    x.iter().zip(y).map(|(u, v)| q(a * u + b * v)).collect()
}

/// Root sets written down directly from the classical descriptions, in the
/// same coordinates the library uses.
fn closed_form_roots(t: CartanType) -> BTreeSet<RVector> {
    let n = t.rank;
    let mut out = BTreeSet::new();
    let pm_pairs = |dim: usize, out: &mut BTreeSet<RVector>| {
        for i in 0..dim {
            for j in i + 1..dim {
                for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    out.insert(lin(a, &e(dim, i), b, &e(dim, j)));
                }
            }
        }
    };
    match t.family {
        Family::A => {
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        out.insert(lin(1, &e(n + 1, i), -1, &e(n + 1, j)));
                    }
                }
            }
        }
        Family::B | Family::C | Family::D => {
            pm_pairs(n, &mut out);
            let k = match t.family {
                Family::B => 1,
                Family::C => 2,
                _ => 0,
            };
            if k > 0 {
                for i in 0..n {
                    out.insert(lin(k, &e(n, i), 0, &e(n, i)));
                    out.insert(lin(-k, &e(n, i), 0, &e(n, i)));
                }
            }
        }
        Family::G => {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        out.insert(lin(1, &e(3, i), -1, &e(3, j)));
                    }
                }
                let long: RVector = (0..3).map(|k| q(if k == i { 2 } else { -1 })).collect();
                out.insert(long.iter().map(|x| -x).collect());
                out.insert(long);
            }
        }
        Family::F => {
            pm_pairs(4, &mut out);
            for i in 0..4 {
                out.insert(lin(1, &e(4, i), 0, &e(4, i)));
                out.insert(lin(-1, &e(4, i), 0, &e(4, i)));
            }
            for signs in 0..16u32 {
                out.insert((0..4).map(|k| half(if signs >> k & 1 == 1 { -1 } else { 1 })).collect());
            }
        }
        Family::E => {
            let mut e8 = BTreeSet::new();
            pm_pairs(8, &mut e8);
            for signs in 0..256u32 {
                if signs.count_ones() % 2 == 0 {
                    e8.insert((0..8).map(|k| half(if signs >> k & 1 == 1 { -1 } else { 1 })).collect());
                }
            }
            let dot = |a: &RVector, b: &[i64]| a.iter().zip(b).fold(q(0), |acc, (x, y)| acc + x * q(*y));
            let mut e78 = e(8, 6);
            e78[7] = 1;
            let mut e68 = e(8, 5);
            e68[7] = 1;
            for r in e8 {
                let keep = match n {
                    8 => true,
                    7 => dot(&r, &e78).is_zero(),
                    _ => dot(&r, &e78).is_zero() && dot(&r, &e68).is_zero(),
                };
                if keep {
                    out.insert(r);
                }
            }
        }
    }
    out
}

fn expected_count(t: CartanType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E => [72, 126, 240][n - 6],
        Family::F => 48,
        Family::G => 12,
    }
}

#[test]
fn root_sets_match_closed_forms_up_to_rank_8() {
    for t in CartanType::all_up_to_rank(8) {
        let rs = RootSystem::from_type(t).unwrap();
        let generated: BTreeSet<RVector> = rs.roots.iter().cloned().collect();
        assert_eq!(generated.len(), rs.roots.len(), "{t}: duplicate roots");
        assert_eq!(generated.len(), expected_count(t), "{t}: root count");
        assert_eq!(generated, closed_form_roots(t), "{t}: root set");
    }
}

#[test]
fn type_invariants_hold() {
    for t in CartanType::all_up_to_rank(8) {
        let rs = RootSystem::from_type(t).unwrap();
        let r = rs.rank();
        for i in 0..r {
            assert_eq!(rs.cartan[i][i], 2);
            for j in 0..r {
                if i != j {
                    assert!(rs.cartan[i][j] <= 0, "{t}");
                }
            }
        }
        for j in 0..r {
            assert!(!rs.pair_with_simple_coroot(&rs.highest_root, j).is_negative(), "{t}: highest root not dominant");
        }
        let coeffs: Vec<i64> = rs.marks.iter().map(|&m| m as i64).collect();
        assert_eq!(rs.combination(&coeffs), rs.highest_root, "{t}");
        let max_len = rs.roots.iter().map(|a| rs.norm2(a)).max().unwrap();
        assert_eq!(max_len, q(2), "{t}");
    }
}

#[test]
fn a2_marks_and_alcove() {
    let rs = RootSystem::build(Family::A, 2).unwrap();
    assert_eq!(rs.marks, vec![1, 1]);
    let sum = rs.combination(&[1, 1]);
    assert_eq!(sum, rs.highest_root);
    let alc = alcove(&rs);
    let w = rs.fundamental_coweights();
    assert_eq!(alc.vertices[1], w[0]);
    assert_eq!(alc.vertices[2], w[1]);
}

/// k0 from the marks and root lengths alone: vertex i pairs with its own
/// coroot to `2 / (a_i |alpha_i|^2)` and with every other coroot to zero.
fn k0_from_marks(rs: &RootSystem) -> u64 {
    let mut l = BigInt::one();
    for i in 0..rs.rank() {
        let p = q(2) / (q(rs.marks[i] as i64) * &rs.gram[i][i]);
        l = l.lcm(p.denom());
    }
    u64::try_from(l).unwrap()
}

#[test]
fn k0_matches_marks_oracle_for_every_type() {
    for t in CartanType::all_up_to_rank(8) {
        let rs = RootSystem::from_type(t).unwrap();
        assert_eq!(minimal_level_k0(&rs), k0_from_marks(&rs), "{t}");
    }
}

#[test]
fn k0_computed_values() {
    let k0 = |s: &str| minimal_level_k0(&RootSystem::from_type(s.parse().unwrap()).unwrap());
    for n in 1..=8 {
        assert_eq!(k0(&format!("A{n}")), 1);
    }
    for n in 2..=8 {
        assert_eq!(k0(&format!("C{n}")), 1);
    }
    for n in 3..=8 {
        assert_eq!(k0(&format!("B{n}")), 2);
    }
    for n in 4..=8 {
        assert_eq!(k0(&format!("D{n}")), 2);
    }
    // low-rank coincidences: B2 = C2 and D3 = A3
    assert_eq!(k0("B2"), 1);
    assert_eq!(k0("D3"), 1);
    assert_eq!(k0("E7"), 12);
    assert_eq!(k0("E8"), 60);
    assert_eq!(k0("F4"), 6);
    assert_eq!(k0("G2"), 2);
    // marks of E6 are 1,2,2,3,2,1
    assert_eq!(k0("E6"), 6);
}

#[test]
fn alcove_vertices_are_dominant() {
    for t in CartanType::all_up_to_rank(8) {
        let rs = RootSystem::from_type(t).unwrap();
        let alc = alcove(&rs);
        for v in &alc.vertices {
            for a in &rs.simple_roots {
                assert!(!rs.inner(a, v).is_negative());
            }
        }
    }
}

#[test]
fn mu_ij_is_additive_exactly() {
    for s in ["A3", "B3", "C3", "G2", "F4", "E6"] {
        let rs = RootSystem::from_type(s.parse().unwrap()).unwrap();
        let alc = alcove(&rs);
        let n = alc.num_vertices();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ik = alc.mu_ij(i, k).unwrap();
                    let ij = alc.mu_ij(i, j).unwrap();
                    let jk = alc.mu_ij(j, k).unwrap();
                    let sum: RVector = ij.iter().zip(&jk).map(|(a, b)| a + b).collect();
                    assert_eq!(ik, sum);
                }
            }
        }
    }
}

fn subsets(n: usize) -> Vec<BTreeSet<usize>> {
    (1u32..(1 << n)).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

#[test]
fn face_centralizers_are_antitone_and_symmetric() {
    for s in ["A2", "B3", "C3", "G2", "F4"] {
        let rs = RootSystem::from_type(s.parse().unwrap()).unwrap();
        let alc = alcove(&rs);
        let faces = subsets(alc.num_vertices());
        let cents: Vec<_> = faces.iter().map(|f| alc.face_centralizer(f).unwrap()).collect();
        for (f, c) in faces.iter().zip(&cents) {
            assert!(c.is_closed_under_negation(&rs));
            for (g, d) in faces.iter().zip(&cents) {
                if f.is_subset(g) {
                    assert!(d.is_subset(c), "{s}: centralizer not antitone for {f:?} in {g:?}");
                }
            }
        }
    }
}

fn permuted(rs: &RootSystem, perm: &[usize]) -> RootSystem {
    let roots = perm.iter().map(|&i| rs.simple_roots[i].clone()).collect();
    RootSystem::from_simple_roots(rs.cartan_type, rs.ambient_dim, rs.ambient_scale.clone(), roots).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn k0_is_invariant_under_relabeling(which in 0usize..6, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let name = ["E6", "E7", "F4", "G2", "B4", "D5"][which];
        let rs = RootSystem::from_type(name.parse().unwrap()).unwrap();
        let mut perm: Vec<usize> = (0..rs.rank()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let p = permuted(&rs, &perm);
        prop_assert_eq!(minimal_level_k0(&p), minimal_level_k0(&rs));
        let a: BTreeSet<RVector> = p.roots.iter().cloned().collect();
        let b: BTreeSet<RVector> = rs.roots.iter().cloned().collect();
        prop_assert_eq!(a, b);
    }
}
