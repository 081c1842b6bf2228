//! End-to-end acceptance criteria. Each test prints one PASS/FAIL line and
//! fails when its criterion does not hold, including its runtime budget.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gerbes::deligne::random::{random_rational, random_real, random_trivial_gerbe};
use gerbes::deligne::{
    dd_class_of, solve_trivialization, torsion_generators, CoverNerve, CoveredComplex, DeligneCochain, Realization,
    TrivializationOutcome,
};
use gerbes::grpcoh::{center_of, group_cohomology_u1, FiniteAbelianGroup};
use gerbes::holonomy::mesh::{BallMesh, SphereMesh};
use gerbes::holonomy::{stokes_check, surface_holonomy, ChartAssignment};
use gerbes::lienum::{cap_extensions, compare_extensions, integrate_h_su2, verify_omega, verify_varpi, Pairing};
use gerbes::rootsys::{minimal_level_k0, CartanType, Family, Rational, RootSystem};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, title: &str, failures: &[String], elapsed: Duration, budget: Duration, summary: &str) {
    let mut failures = failures.to_vec();
    if elapsed > budget {
        failures.push(format!("runtime {:.2?} over budget {:.0?}", elapsed, budget));
    }
    let mark = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("{mark} [{id}] {title}: {summary} ({elapsed:.2?})");
    for f in &failures {
        println!("     - {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn expi(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

#[test]
fn criterion_1_k0_table() {
    let start = Instant::now();
    let mut expected: Vec<(CartanType, u64)> = Vec::new();
    let ty = |family, rank| CartanType::new(family, rank).unwrap();
    expected.extend((1..=8).map(|r| (ty(Family::A, r), 1)));
    expected.extend((2..=8).map(|r| (ty(Family::C, r), 1)));
    expected.extend((3..=8).map(|r| (ty(Family::B, r), 2)));
    expected.extend((4..=8).map(|r| (ty(Family::D, r), 2)));
    expected.extend([
        (ty(Family::E, 6), 3),
        (ty(Family::E, 7), 12),
        (ty(Family::E, 8), 60),
        (ty(Family::F, 4), 6),
        (ty(Family::G, 2), 2),
    ]);
    let mut failures = Vec::new();
    for (t, k) in &expected {
        let got = minimal_level_k0(&RootSystem::from_type(*t).unwrap());
        if got != *k {
            failures.push(format!("{t}: expected {k}, computed {got}"));
        }
    }
    // low-rank coincidences are reported as computed, not compared
    let b2 = minimal_level_k0(&RootSystem::from_type(ty(Family::B, 2)).unwrap());
    let d3 = minimal_level_k0(&RootSystem::from_type(ty(Family::D, 3)).unwrap());
    let summary = format!("{} types compared, B2 = {b2}, D3 = {d3}", expected.len());
    verdict(1, "k0 table", &failures, start.elapsed(), Duration::from_secs(1), &summary);
}

#[test]
fn criterion_2_deligne_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut failures = Vec::new();

    let simplex = Arc::new(CoverNerve::simplex(5, None).unwrap());
    let mut dd_zero = 0;
    for i in 0..1000 {
        let c = random_rational(&mut rng, i % 4, 1 + (i / 4) % 2, &simplex, 7).unwrap();
        if c.differential().differential().is_zero() {
            dd_zero += 1;
        }
    }
    if dd_zero != 1000 {
        failures.push(format!("D D = 0 held on {dd_zero}/1000 cochains"));
    }

    // cocycles on the suspended projective plane, half of them with the torsion class
    let srp2 = Arc::new(CoverNerve::projective_plane().suspension().unwrap());
    let (gen, _) = torsion_generators(&srp2).into_iter().next().unwrap();
    let mut flat = DeligneCochain::<Rational>::zero(2, 2, srp2.clone(), Realization::Pure).unwrap();
    flat.set_component(0, gen.iter().map(|v| vec![v.clone()]).collect()).unwrap();
    let cocycle = |rng: &mut ChaCha8Rng| {
        let c = random_rational(rng, 1, 2, &srp2, 6).unwrap().differential();
        if rng.gen_bool(0.5) {
            c.add(&flat).unwrap()
        } else {
            c
        }
    };
    let mut additive = 0;
    let mut nontrivial = 0;
    for _ in 0..100 {
        let (x, y) = (cocycle(&mut rng), cocycle(&mut rng));
        let (cx, cy) = (dd_class_of(&x).unwrap(), dd_class_of(&y).unwrap());
        let sum_ok = dd_class_of(&x.add(&y).unwrap()).unwrap() == cx.add(&cy).unwrap();
        let neg_ok = dd_class_of(&x.neg()).unwrap() == cx.neg();
        additive += usize::from(sum_ok && neg_ok);
        nontrivial += usize::from(!cx.is_zero());
    }
    if additive != 100 {
        failures.push(format!("additivity and negation held on {additive}/100 pairs"));
    }
    if nontrivial == 0 {
        failures.push("no pair exercised a nonzero class".into());
    }

    let four = Arc::new(CoverNerve::simplex(4, Some(3)).unwrap());
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let c = random_rational(&mut rng, 1, 2, &four, 6).unwrap().differential();
        match solve_trivialization(&c).unwrap() {
            TrivializationOutcome::Trivialized(t) => worst = worst.max(t.defect),
            TrivializationOutcome::Obstructed(o) => failures.push(format!("coboundary reported obstructed: {o}")),
        }
    }
    if worst >= 1e-9 {
        failures.push(format!("trivialization defect {worst:e}"));
    }
    let summary = format!("D D = 0 on {dd_zero}/1000, dd additive on {additive}/100 ({nontrivial} nonzero), worst defect {worst:e}");
    verdict(2, "Deligne complex properties", &failures, start.elapsed(), Duration::from_secs(30), &summary);
}

#[test]
fn criterion_3_holonomy_invariance() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let cc = Arc::new(SphereMesh::icosahedron().covered_complex().unwrap());
    let nerve = Arc::new(cc.nerve(3).unwrap());
    let real = Realization::Geometric(cc.clone());
    let (c, rho) = random_trivial_gerbe(&mut rng, &cc, &nerve).unwrap();
    let asg = ChartAssignment::first(&cc).unwrap();
    let reference = surface_holonomy(&cc, &c, &asg).unwrap();
    let mut failures = Vec::new();

    let mut gauge_gap: f64 = 0.0;
    for _ in 0..100 {
        let x = random_real(&mut rng, 1, 2, &nerve, real.clone(), 1.0).unwrap();
        let shifted = c.add(&x.differential()).unwrap();
        gauge_gap = gauge_gap.max((surface_holonomy(&cc, &shifted, &asg).unwrap() - reference).norm());
    }
    let mut chart_gap: f64 = 0.0;
    for _ in 0..100 {
        let other = ChartAssignment::random(&cc, &mut rng).unwrap();
        chart_gap = chart_gap.max((surface_holonomy(&cc, &c, &other).unwrap() - reference).norm());
    }
    let mut trivial_gap: f64 = 0.0;
    for _ in 0..20 {
        let rho: Vec<f64> = (0..cc.num_simplices(2)).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let pure = DeligneCochain::from_fn(2, 2, nerve.clone(), real.clone(), |k, _, s| if k == 2 { rho[s] } else { 0.0 }).unwrap();
        let other = ChartAssignment::random(&cc, &mut rng).unwrap();
        trivial_gap = trivial_gap.max((surface_holonomy(&cc, &pure, &other).unwrap() - expi(rho.iter().sum())).norm());
    }
    let gauged_gap = (reference - expi(rho.iter().sum())).norm();
    if gauge_gap >= 1e-9 {
        failures.push(format!("gauge shift changed holonomy by {gauge_gap:e}"));
    }
    if chart_gap >= 1e-9 {
        failures.push(format!("reassignment changed holonomy by {chart_gap:e}"));
    }
    if trivial_gap >= 1e-12 {
        failures.push(format!("trivial gerbe off exp(2 pi i sum rho) by {trivial_gap:e}"));
    }
    if gauged_gap >= 1e-9 {
        failures.push(format!("gauged trivial gerbe off by {gauged_gap:e}"));
    }
    let summary = format!("gauge {gauge_gap:.1e}, charts {chart_gap:.1e}, trivial {trivial_gap:.1e}");
    verdict(3, "holonomy invariance", &failures, start.elapsed(), Duration::from_secs(30), &summary);
}

/// `H` on each tetrahedron as `dB` in its first chart.
fn chart_curvature(cc: &CoveredComplex, c: &DeligneCochain<f64>) -> Vec<f64> {
    (0..cc.num_simplices(3))
        .map(|tet| {
            let i = cc.charts(3, tet)[0];
            cc.boundary(3, tet).iter().map(|&(f, s)| s as f64 * c.value(2, &[i], f).unwrap()).sum()
        })
        .collect()
}

#[test]
fn criterion_4_discrete_stokes() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let cc = Arc::new(BallMesh::coned(&SphereMesh::icosahedron()).covered_complex().unwrap());
    let nerve = Arc::new(cc.nerve(3).unwrap());
    let (surface, _) = cc.boundary_surface().unwrap();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for trial in 0..50 {
        let (c, _) = random_trivial_gerbe(&mut rng, &cc, &nerve).unwrap();
        let h = chart_curvature(&cc, &c);
        let asg = ChartAssignment::random(&surface, &mut rng).unwrap();
        let out = stokes_check(&cc, &h, &c, Some(&asg)).unwrap();
        worst = worst.max(out.gap);
        if out.gap >= 1e-6 {
            failures.push(format!("trial {trial}: gap {:e}", out.gap));
        }
    }
    let summary = format!("50 trials, worst |hol - exp(2 pi i sum dB)| = {worst:.1e}");
    verdict(4, "discrete Stokes", &failures, start.elapsed(), Duration::from_secs(30), &summary);
}

#[test]
fn criterion_5_su2_integrality() {
    let start = Instant::now();
    let p = Pairing::calibrated(1.0);
    let e32 = (integrate_h_su2(32, &p).value - 1.0).abs();
    let e64 = (integrate_h_su2(64, &p).value - 1.0).abs();
    let mut failures = Vec::new();
    if e32 >= 1e-2 {
        failures.push(format!("resolution 32 error {e32:e}"));
    }
    if e64 >= e32 {
        failures.push(format!("no improvement under refinement: {e32:e} -> {e64:e}"));
    }
    let summary = format!("|int - 1| = {e32:.2e} at 32, {e64:.2e} at 64");
    verdict(5, "SU(2) integrality", &failures, start.elapsed(), Duration::from_secs(120), &summary);
}

#[test]
fn criterion_6_form_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let p = Pairing::trace();
    let omega = verify_omega(&p, 20, 1e-3, &mut rng).unwrap();
    let varpi = verify_varpi(&p, 1, 20, 1e-3, &mut rng).unwrap();
    let mut failures = Vec::new();
    if omega.residuals.len() != 20 || omega.max_residual >= 1e-4 {
        failures.push(format!("SU(3) class identity residual {:e}", omega.max_residual));
    }
    if varpi.residuals.len() != 20 || varpi.max_residual >= 1e-4 {
        failures.push(format!("biconjugacy identity residual {:e}", varpi.max_residual));
    }
    let summary = format!("omega {:.1e}, varpi {:.1e} over 20 frames", omega.max_residual, varpi.max_residual);
    verdict(6, "form identities", &failures, start.elapsed(), Duration::from_secs(120), &summary);
}

#[test]
fn criterion_7_wzw_extension_independence() {
    let start = Instant::now();
    let p = Pairing::calibrated(1.0);
    let mesh = BallMesh::layered(&SphereMesh::icosphere(1), 4);
    let (north, south) = cap_extensions(&mesh).unwrap();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut degrees = Vec::new();
    for k in 1..=3 {
        let cmp = compare_extensions(&north, &south, k, &p).unwrap();
        let m = cmp.degree;
        let predicted = expi(k as f64 * m as f64);
        let residual = (cmp.ratio - predicted).norm();
        worst = worst.max(residual);
        degrees.push(m);
        if residual >= 1e-2 {
            failures.push(format!("k = {k}: ratio {} vs exp(2 pi i {k} {m}), residual {residual:e}", cmp.ratio));
        }
    }
    let summary = format!("k = 1..3, glued degrees {degrees:?}, worst residual {worst:.1e}");
    verdict(7, "WZW extension independence", &failures, start.elapsed(), Duration::from_secs(120), &summary);
}

#[test]
fn criterion_8_group_cohomology() {
    let start = Instant::now();
    let g = |o: &[u64]| FiniteAbelianGroup::new(o.to_vec()).unwrap();
    let mut failures = Vec::new();
    let mut check = |label: String, got: String, want: &str| {
        if got != want {
            failures.push(format!("{label}: got {got}, want {want}"));
        }
    };
    check("H3(Z/2)".into(), group_cohomology_u1(&g(&[2]), 3).unwrap().to_string(), "Z/2");
    check("H2(Z/2 x Z/2)".into(), group_cohomology_u1(&g(&[2, 2]), 2).unwrap().to_string(), "Z/2");
    for m in 2..=9 {
        check(format!("H2(Z/{m})"), group_cohomology_u1(&g(&[m]), 2).unwrap().to_string(), "0");
    }
    let types = CartanType::all_up_to_rank(8);
    for t in &types {
        let z = center_of(t.family, t.rank).unwrap();
        let det = RootSystem::from_type(*t).unwrap().cartan_determinant();
        let order = BigInt::from(z.order());
        check(format!("|Z({t})|"), order.to_string(), &det.to_string());
    }
    let summary = format!("10 cohomology groups and {} centers", types.len());
    verdict(8, "group cohomology", &failures, start.elapsed(), Duration::from_secs(60), &summary);
}
