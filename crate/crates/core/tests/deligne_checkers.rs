use std::f64::consts::PI;
use std::sync::Arc;

use gerbes::deligne::random::random_rational;
use gerbes::deligne::{
    check_equivariant_data, check_jandl_data, check_module_data, solve_coboundary, CMatrix, CoverNerve,
    CoveredComplex, DeligneCochain, GroupActionOnCover, Involution, ModuleData, Realization,
};
use gerbes::rootsys::Rational;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn phase(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

fn i2pi() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

fn tetra_surface() -> Arc<CoveredComplex> {
    Arc::new(CoveredComplex::with_star_charts(4, vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]], Vec::new()).unwrap())
}

/// Trivial gerbe `(0, 0, C)` with a global `C`, plus a rank-1 line-bundle
/// cocycle `G_ij = exp(2πi (u_j - u_i))` and connections
/// `Π_i = 2πi (du_i + α)`; then `ω = C + dα`.
fn line_bundle_example(rng: &mut ChaCha8Rng) -> (DeligneCochain<f64>, ModuleData) {
    let cc = tetra_surface();
    let nerve = Arc::new(cc.nerve(3).unwrap());
    let m = nerve.num_indices();
    let nv = cc.num_vertices();
    let u: Vec<Vec<f64>> = (0..m).map(|_| (0..nv).map(|_| rng.gen_range(-0.1..0.1)).collect()).collect();
    let alpha: Vec<f64> = (0..cc.num_simplices(1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let big_c: Vec<f64> = (0..cc.num_simplices(2)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let c = DeligneCochain::from_fn(2, 2, nerve.clone(), Realization::Geometric(cc.clone()), |k, _, s| {
        if k == 2 {
            big_c[s]
        } else {
            0.0
        }
    })
    .unwrap();
    let transitions = nerve
        .faces(1)
        .iter()
        .map(|f| (0..nv).map(|v| CMatrix::from_element(1, 1, phase(u[f[1]][v] - u[f[0]][v]))).collect())
        .collect();
    let connections = (0..m)
        .map(|i| {
            cc.edges()
                .iter()
                .enumerate()
                .map(|(e, &[a, b])| CMatrix::from_element(1, 1, i2pi() * (u[i][b] - u[i][a] + alpha[e])))
                .collect()
        })
        .collect();
    let d_alpha = cc.coboundary_f64(1, &alpha);
    let omega = big_c.iter().zip(&d_alpha).map(|(a, b)| a + b).collect();
    (c, ModuleData { rank: 1, transitions, connections, omega })
}

#[test]
fn line_bundle_data_on_trivial_gerbe_passes() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (c, data) = line_bundle_example(&mut rng);
    let report = check_module_data(&c, &data, 1e-9).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn identity_data_with_omega_equal_to_b_passes() {
    let nerve = Arc::new(CoverNerve::simplex(3, None).unwrap());
    let mut c = DeligneCochain::<f64>::zero(2, 2, nerve, Realization::Pure).unwrap();
    for i in 0..3 {
        c.set(2, &[i], 0, 0.75).unwrap();
    }
    let data = ModuleData::identity(&c, 2, vec![0.75]).unwrap();
    assert!(check_module_data(&c, &data, 0.0).unwrap().passed());
}

#[test]
fn nonabelian_constant_data_passes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let nerve = Arc::new(CoverNerve::simplex(3, None).unwrap());
    let c = DeligneCochain::<f64>::zero(2, 2, nerve.clone(), Realization::Pure).unwrap();
    let random_unitary = |rng: &mut ChaCha8Rng| {
        let m = DMatrix::from_fn(2, 2, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        m.qr().q()
    };
    let vs: Vec<CMatrix> = (0..3).map(|_| random_unitary(&mut rng)).collect();
    let x = CMatrix::from_row_slice(2, 2, &[Complex64::new(0.0, 0.3), Complex64::new(0.2, 0.1), Complex64::new(-0.2, 0.1), Complex64::new(0.0, -0.3)]);
    let transitions = nerve.faces(1).iter().map(|f| vec![vs[f[0]].adjoint() * &vs[f[1]]]).collect();
    let connections = (0..3).map(|i| vec![vs[i].adjoint() * &x * &vs[i]]).collect();
    let data = ModuleData { rank: 2, transitions, connections, omega: vec![0.0] };
    let report = check_module_data(&c, &data, 1e-12).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn perturbed_transition_fails() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (c, mut data) = line_bundle_example(&mut rng);
    data.transitions[0][0][(0, 0)] *= Complex64::new(1.0 + 1e-3, 0.0);
    let report = check_module_data(&c, &data, 1e-6).unwrap();
    assert!(!report.checks[0].passed || !report.checks[1].passed, "{report:?}");
}

#[test]
fn gauge_transported_data_still_passes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (c, data) = line_bundle_example(&mut rng);
    for _ in 0..10 {
        let gauge = DeligneCochain::from_fn(1, 2, c.nerve().clone(), c.realization().clone(), |k, _, _| {
            if k == 0 {
                rng.gen_range(0.0..0.05)
            } else {
                rng.gen_range(-1.0..1.0)
            }
        })
        .unwrap();
        let c2 = c.add(&gauge.differential()).unwrap();
        let d2 = data.gauge_transform(&gauge).unwrap();
        let report = check_module_data(&c2, &d2, 1e-9).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn logarithm_failure_names_the_edge() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (c, mut data) = line_bundle_example(&mut rng);
    let cc = c.realization().complex().unwrap().clone();
    let f = &c.nerve().faces(1)[0];
    let e = (0..cc.num_simplices(1)).find(|&e| cc.in_charts(1, e, f)).unwrap();
    let [u, v] = cc.edges()[e];
    let gu = data.transitions[0][u].clone();
    data.transitions[0][v] = gu * Complex64::new(-1.0, 0.0);
    let err = check_module_data(&c, &data, 1e-9).unwrap_err().to_string();
    assert!(err.contains(&format!("edge {e}")), "{err}");
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

struct EquivariantFixture {
    act: GroupActionOnCover,
    xi: DeligneCochain<Rational>,
    a: Vec<DeligneCochain<Rational>>,
    b: Vec<Vec<DeligneCochain<Rational>>>,
}

/// `ξ = D m`, `a_γ = γ*m - m + D e_γ`, `b = de`.
fn equivariant_fixture(seed: u64) -> EquivariantFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nerve = Arc::new(CoverNerve::simplex(4, Some(3)).unwrap());
    let act = GroupActionOnCover::new(4, &[vec![1, 0, 2, 3], vec![1, 2, 0, 3]]).unwrap();
    assert_eq!(act.order(), 6);
    let m = random_rational(&mut rng, 1, 2, &nerve, 5).unwrap();
    let xi = m.differential();
    let e: Vec<_> = (0..act.order()).map(|_| random_rational(&mut rng, 0, 2, &nerve, 5).unwrap()).collect();
    let a: Vec<_> = (0..act.order())
        .map(|g| m.pullback(act.element(g)).unwrap().sub(&m).unwrap().add(&e[g].differential()).unwrap())
        .collect();
    let b: Vec<Vec<_>> = (0..act.order())
        .map(|g1| {
            (0..act.order())
                .map(|g2| gerbes::deligne::equivariant::group_coboundary_1(&act, &e, g1, g2).unwrap())
                .collect()
        })
        .collect();
    EquivariantFixture { act, xi, a, b }
}

#[test]
fn constructed_equivariant_structure_passes() {
    let f = equivariant_fixture(20);
    let report = check_equivariant_data(&f.act, &f.xi, &f.a, &f.b, 0.0).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn trivial_action_with_zero_data_passes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let nerve = Arc::new(CoverNerve::simplex(3, None).unwrap());
    let xi = random_rational(&mut rng, 1, 2, &nerve, 4).unwrap().differential();
    let act = GroupActionOnCover::trivial(3);
    let a = vec![DeligneCochain::zero(1, 2, nerve.clone(), Realization::Pure).unwrap()];
    let b = vec![vec![DeligneCochain::zero(0, 2, nerve, Realization::Pure).unwrap()]];
    assert!(check_equivariant_data(&act, &xi, &a, &b, 0.0).unwrap().passed());
}

#[test]
fn perturbed_b_fails_cocycle_condition() {
    let mut f = equivariant_fixture(22);
    let old = f.b[1][2].value(0, &[0], 0).unwrap();
    f.b[1][2].set(0, &[0], 0, old + r(1, 7)).unwrap();
    let report = check_equivariant_data(&f.act, &f.xi, &f.a, &f.b, 0.0).unwrap();
    assert!(!report.get("d b = 0").unwrap().passed);
    assert!(report.get("d b = 0").unwrap().detail.as_deref().unwrap().contains("triple"));
}

#[test]
fn missing_group_element_is_an_error() {
    let f = equivariant_fixture(23);
    assert!(check_equivariant_data(&f.act, &f.xi, &f.a[..5], &f.b, 0.0).is_err());
}

#[test]
fn solved_equivariant_data_satisfies_first_two_conditions() {
    let f = equivariant_fixture(24);
    let a: Vec<_> = (0..f.act.order())
        .map(|g| {
            let t = f.xi.pullback(f.act.element(g)).unwrap().sub(&f.xi).unwrap();
            solve_coboundary(&t).unwrap().unwrap()
        })
        .collect();
    let b: Vec<Vec<_>> = (0..f.act.order())
        .map(|g1| {
            (0..f.act.order())
                .map(|g2| {
                    let t = gerbes::deligne::equivariant::group_coboundary_1(&f.act, &a, g1, g2).unwrap();
                    solve_coboundary(&t).unwrap().unwrap()
                })
                .collect()
        })
        .collect();
    let report = check_equivariant_data(&f.act, &f.xi, &a, &b, 0.0).unwrap();
    assert!(report.checks[0].passed && report.checks[1].passed, "{report:?}");
}

#[test]
fn jandl_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let nerve = Arc::new(CoverNerve::simplex(4, Some(3)).unwrap());
    let k = Involution::new(vec![1, 0, 3, 2]).unwrap();
    let zero2 = DeligneCochain::<Rational>::zero(2, 2, nerve.clone(), Realization::Pure).unwrap();
    let zero1 = DeligneCochain::<Rational>::zero(1, 2, nerve.clone(), Realization::Pure).unwrap();
    let zero0 = DeligneCochain::<Rational>::zero(0, 2, nerve.clone(), Realization::Pure).unwrap();
    assert!(check_jandl_data(&k, &zero2, &zero1, &zero0, 0.0).unwrap().passed());

    let m = random_rational(&mut rng, 1, 2, &nerve, 6).unwrap();
    let y = random_rational(&mut rng, 0, 2, &nerve, 6).unwrap();
    let xi = m.differential();
    let km = m.pullback(k.perm()).unwrap();
    let a = m.neg().sub(&km).unwrap().add(&y.differential()).unwrap();
    let phi = y.pullback(k.perm()).unwrap().sub(&y).unwrap();
    let report = check_jandl_data(&k, &xi, &a, &phi, 0.0).unwrap();
    assert!(report.passed(), "{report:?}");

    let flipped = m.add(&km).unwrap().add(&y.differential()).unwrap();
    assert!(!check_jandl_data(&k, &xi, &flipped, &phi, 1e-9).unwrap().passed());
    assert!(Involution::new(vec![1, 2, 0]).is_err());
}
