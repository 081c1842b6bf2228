//! Regenerate the JSON files under `fixtures/`.
//!
//! ```text
//! cargo run --example write_fixtures [-- <output dir>]
//! ```
//!
//! Every file is produced from a fixed seed, so rerunning is a no-op.

use std::path::PathBuf;
use std::sync::Arc;

use gerbes::deligne::equivariant::group_coboundary_1;
use gerbes::deligne::random::{random_rational, random_real};
use gerbes::deligne::{
    torsion_generators, CoverNerve, DeligneCochain, GroupActionOnCover, Involution, ModuleData, Realization,
};
use gerbes::holonomy::mesh::{BallMesh, SphereMesh};
use gerbes::holonomy::ChartAssignment;
use gerbes::io::{write_json, BundleFile, CochainFile, ComplexFile, EquivariantFile, JandlFile, MapFile};
use gerbes::lienum::cap_extensions;
use gerbes::rootsys::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> gerbes::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    std::fs::create_dir_all(&dir)?;
    let out = |name: &str| dir.join(name);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // meshes
    let ico = SphereMesh::icosahedron();
    let ico_cc = Arc::new(ico.covered_complex()?);
    write_json(out("sphere_icosahedron.json"), &ComplexFile::from_complex(&ico_cc, Some(ico.positions.clone())))?;
    let sub = SphereMesh::icosphere(1);
    write_json(out("sphere_subdivided.json"), &ComplexFile::from_complex(&sub.covered_complex()?, Some(sub.positions.clone())))?;
    let coned = BallMesh::coned(&ico);
    write_json(out("ball_coned.json"), &ComplexFile::from_complex(&coned.covered_complex()?, Some(coned.positions.clone())))?;
    let layered = BallMesh::layered(&sub, 4);
    write_json(
        out("ball_layered.json"),
        &ComplexFile::from_complex(&layered.covered_complex()?, Some(layered.positions.clone())),
    )?;

    // pure-nerve cochains
    let simplex = Arc::new(CoverNerve::simplex(4, Some(3))?);
    let m = random_rational(&mut rng, 1, 2, &simplex, 6)?;
    write_json(out("coboundary.json"), &CochainFile::from_cochain(&m.differential()))?;
    write_json(out("not_a_cocycle.json"), &CochainFile::from_cochain(&random_rational(&mut rng, 2, 2, &simplex, 6)?))?;

    let srp2 = Arc::new(CoverNerve::projective_plane().suspension()?);
    let (gen, _) = torsion_generators(&srp2).into_iter().next().expect("suspended RP2 has 2-torsion in H3");
    let flat = DeligneCochain::<Rational>::from_fn(2, 2, srp2.clone(), Realization::Pure, |k, face, _| {
        if k == 0 {
            gen[srp2.position(face).unwrap()].clone()
        } else {
            Rational::from_integer(0.into())
        }
    })?;
    write_json(out("flat_torsion.json"), &CochainFile::from_cochain(&flat))?;

    // a trivial gerbe in a random gauge on the icosahedron, with rank-2 module data
    let ico_nerve = Arc::new(ico_cc.nerve(3)?);
    let real = Realization::Geometric(ico_cc.clone());
    let rho: Vec<f64> = (0..ico_cc.num_simplices(2)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let base = DeligneCochain::from_fn(2, 2, ico_nerve.clone(), real.clone(), |k, _, s| if k == 2 { rho[s] } else { 0.0 })?;
    let gauge = random_real(&mut rng, 1, 2, &ico_nerve, real, 1.0)?;
    let gerbe = base.add(&gauge.differential())?;
    let mut file = CochainFile::from_cochain(&gerbe);
    file.complex = None;
    write_json(out("gerbe_icosahedron.json"), &file)?;
    write_json(out("assignment_icosahedron.json"), &ChartAssignment::random(&ico_cc, &mut rng)?)?;
    let data = ModuleData::identity(&base, 2, rho.clone())?.gauge_transform(&gauge)?;
    write_json(out("bundle.json"), &BundleFile::from_data(&gerbe, &data))?;

    // equivariant structure for the symmetric group on three of four charts
    let act = GroupActionOnCover::new(4, &[vec![1, 0, 2, 3], vec![1, 2, 0, 3]])?;
    let m = random_rational(&mut rng, 1, 2, &simplex, 5)?;
    let e: Vec<_> = (0..act.order()).map(|_| random_rational(&mut rng, 0, 2, &simplex, 5)).collect::<Result<_, _>>()?;
    let a: Vec<_> = (0..act.order())
        .map(|g| m.pullback(act.element(g))?.sub(&m)?.add(&e[g].differential()))
        .collect::<Result<_, _>>()?;
    let b: Vec<Vec<_>> = (0..act.order())
        .map(|g1| (0..act.order()).map(|g2| group_coboundary_1(&act, &e, g1, g2)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    write_json(out("equivariant.json"), &EquivariantFile::from_data(&act, &m.differential(), &a, &b))?;

    // Jandl structure for the involution swapping charts 0,1 and 2,3
    let k = Involution::new(vec![1, 0, 3, 2])?;
    let m = random_rational(&mut rng, 1, 2, &simplex, 6)?;
    let y = random_rational(&mut rng, 0, 2, &simplex, 6)?;
    let km = m.pullback(k.perm())?;
    let a = m.neg().sub(&km)?.add(&y.differential())?;
    let phi = y.pullback(k.perm())?.sub(&y)?;
    write_json(out("jandl.json"), &JandlFile::from_data(&k, &m.differential(), &a, &phi))?;

    // an SU(2)-valued map on the layered ball: a cap extension of an S^2 → S^3 boundary map
    let (north, _) = cap_extensions(&layered)?;
    write_json(out("map_layered.json"), &MapFile { values: north.values })?;

    println!("wrote fixtures to {}", dir.display());
    Ok(())
}
