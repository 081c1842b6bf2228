//! Command-line front end: argument parsing, dispatch and run reports.
//!
//! Exit codes are 0 on success, 1 when a check fails and 2 on usage or
//! input errors. Reports go to standard output as text, or as JSON with
//! `--json`. Wall time is only recorded with `--timing`, so that equal
//! arguments and seeds give byte-identical JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::deligne::random::random_trivial_gerbe;
use crate::deligne::{
    check_equivariant_data, check_jandl_data, check_module_data, dd_class_of, solve_trivialization, CoveredComplex,
    TrivializationOutcome,
};
use crate::error::{Error, Result};
use crate::grpcoh::{center_of, group_cohomology_u1, FiniteAbelianGroup};
use crate::holonomy::{stokes_check, surface_holonomy, ChartAssignment};
use crate::io::{
    complex_string, parse_complex, AnyCochain, BundleFile, CochainFile, ComplexFile, EquivariantFile,
    JandlFile, MapFile, ScalarKind, ThreeFormFile,
};
use crate::lienum::{
    alcove_projection, cap_extensions, compare_extensions, integrate_h_su2, verify_omega, verify_varpi_in,
    wzw_amplitude, GroupPoint, Mat, Pairing, SampledMap,
};
use crate::report::Check;
use crate::rootsys::{alcove, minimal_level_k0, rational_string, CartanType, Family, RootSystem};

#[derive(Parser, Debug)]
#[command(name = "gerbes", version, about = "Root systems, discrete gerbes, holonomy and group cohomology")]
struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fundamental alcove vertices of a simple type, e.g. `alcove E8`.
    Alcove { lie_type: String },
    /// Least level making every alcove vertex a weight, e.g. `k0 E8`.
    K0 { lie_type: String },
    /// Roots integral on the open face spanned by the listed alcove vertices.
    Centralizer {
        lie_type: String,
        /// Comma-separated vertex indices, e.g. `0,2`.
        #[arg(long)]
        face: String,
    },
    /// Cochain checks and solvers.
    #[command(subcommand)]
    Deligne(DeligneCmd),
    /// Surface holonomy and the Stokes identity.
    #[command(subcommand)]
    Holonomy(HolonomyCmd),
    /// Numerical checks on SU(2) and SU(3).
    #[command(subcommand)]
    Lienum(LienumCmd),
    /// Cohomology of a finite abelian group with U(1) coefficients.
    Grpcoh(GrpcohArgs),
}

#[derive(Subcommand, Debug)]
enum DeligneCmd {
    /// Check that a cochain is a cocycle.
    Check {
        file: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Dixmier-Douady class of a pure-nerve degree-2 cocycle.
    Dd { file: String },
    /// Solve for a trivialization or report the obstruction.
    Trivialize { file: String },
    /// Check module data against its gerbe cocycle.
    CheckModule {
        file: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check an equivariant structure.
    CheckEquivariant {
        file: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check Jandl data under an involution.
    CheckJandl {
        file: String,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum HolonomyCmd {
    /// Holonomy of a cocycle around a closed oriented surface.
    Surface {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        cochain: String,
        #[arg(long)]
        assignment: Option<String>,
    },
    /// Compare boundary holonomy with the bulk integral on a solid ball.
    /// Without `--cochain`, a random trivial gerbe is drawn from `--seed`.
    Stokes {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        cochain: Option<String>,
        /// Per-tetrahedron 3-cochain; defaults to dB in each tetrahedron's first chart.
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        assignment: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum LienumCmd {
    /// Calibrated integral of H over SU(2).
    IntegrateH {
        #[arg(long, default_value_t = 32)]
        resolution: usize,
    },
    /// Check the conjugacy-class identity at random SU(3) frames.
    VerifyOmega {
        #[arg(long, default_value = "su3")]
        group: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
    /// Check the biconjugacy-class identity at random frames.
    VerifyVarpi {
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value = "su2")]
        group: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
    /// WZW amplitude of a sampled map, or the two cap extensions of the
    /// ball's boundary sphere when no map is given.
    Wzw {
        #[arg(long)]
        ball: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long)]
        map: Option<String>,
    },
    /// Alcove coordinates of the conjugacy class of a special unitary matrix
    /// given as JSON rows of "re,im" strings (inline or a file path).
    Project { matrix: String },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct GrpcohArgs {
    #[command(subcommand)]
    center: Option<GrpcohCmd>,
    /// Cyclic orders, e.g. `2,2`.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value_t = 2)]
    degree: usize,
}

#[derive(Subcommand, Debug)]
enum GrpcohCmd {
    /// Center of the simply connected group of a simple type, e.g. `center A 3`.
    Center { family: String, rank: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Verdict {
    Ok,
    Pass,
    Fail,
    Error,
}

impl Verdict {
    fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok | Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

/// Everything a subcommand reports.
#[derive(Debug, Serialize)]
pub struct RunReport {
    command: Vec<String>,
    /// SHA-256 of each input file.
    inputs: BTreeMap<String, String>,
    verdict: Verdict,
    checks: Vec<Check>,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_s: Option<f64>,
}

struct Outcome {
    text: String,
    result: Value,
    checks: Vec<Check>,
    /// Overrides the verdict implied by the checks.
    verdict: Option<Verdict>,
}

impl Outcome {
    fn value(text: String, result: Value) -> Outcome {
        Outcome { text, result, checks: Vec::new(), verdict: None }
    }
}

#[derive(Default)]
struct Inputs(BTreeMap<String, String>);

impl Inputs {
    fn read<T: serde::de::DeserializeOwned>(&mut self, path: &str) -> Result<T> {
        let bytes =
            std::fs::read(Path::new(path)).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        let digest = Sha256::digest(&bytes);
        self.0.insert(path.to_string(), digest.iter().map(|b| format!("{b:02x}")).collect());
        Ok(serde_json::from_slice(&bytes)?)
    }
}

/// Run the command line `argv` (without the program name) and return the
/// exit code with everything that should be printed.
pub fn dispatch<S: AsRef<str>>(argv: &[S]) -> (i32, String) {
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("gerbes".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.render().to_string());
        }
    };
    let start = cli.timing.then(Instant::now);
    let mut inputs = Inputs::default();
    let outcome = run(&cli, &mut inputs);
    let wall_time_s = start.map(|t| t.elapsed().as_secs_f64());
    let (verdict, report_text, checks, result, error) = match outcome {
        Ok(o) => {
            let verdict = o.verdict.unwrap_or(if o.checks.is_empty() {
                Verdict::Ok
            } else if o.checks.iter().all(|c| c.passed) {
                Verdict::Pass
            } else {
                Verdict::Fail
            });
            (verdict, o.text, o.checks, o.result, None)
        }
        Err(e) => (Verdict::Error, String::new(), Vec::new(), Value::Null, Some(e.to_string())),
    };
    let report = RunReport { command: args, inputs: inputs.0, verdict, checks, result, error, wall_time_s };
    let out = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        render_text(&report, &report_text)
    };
    (verdict.exit_code(), out)
}

fn render_text(report: &RunReport, body: &str) -> String {
    let mut out = String::new();
    if let Some(e) = &report.error {
        out.push_str(&format!("error: {e}\n"));
        return out;
    }
    out.push_str(body);
    if !body.is_empty() && !body.ends_with('\n') {
        out.push('\n');
    }
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{mark}  {}: residual {:.3e} (tolerance {:.1e})", c.name, c.residual, c.tolerance));
        if let Some(d) = &c.detail {
            out.push_str(&format!("  [{d}]"));
        }
        out.push('\n');
    }
    if !report.checks.is_empty() {
        out.push_str(&format!("verdict: {}\n", serde_json::to_value(report.verdict).unwrap().as_str().unwrap()));
    }
    if let Some(t) = report.wall_time_s {
        out.push_str(&format!("wall time: {t:.3} s\n"));
    }
    out
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Alcove { lie_type } => cmd_alcove(lie_type),
        Command::K0 { lie_type } => {
            let t: CartanType = lie_type.parse()?;
            let k0 = minimal_level_k0(&RootSystem::from_type(t)?);
            Ok(Outcome::value(k0.to_string(), json!({ "type": t.to_string(), "k0": k0 })))
        }
        Command::Centralizer { lie_type, face } => cmd_centralizer(lie_type, face),
        Command::Deligne(d) => cmd_deligne(d, inputs),
        Command::Holonomy(h) => cmd_holonomy(h, inputs, &mut rng),
        Command::Lienum(l) => cmd_lienum(l, inputs, &mut rng),
        Command::Grpcoh(g) => cmd_grpcoh(g),
    }
}

fn rationals(v: &[crate::rootsys::Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

fn cmd_alcove(lie_type: &str) -> Result<Outcome> {
    let t: CartanType = lie_type.parse()?;
    let rs = RootSystem::from_type(t)?;
    let alc = alcove(&rs);
    let mut text = format!("{t}: marks {:?}, ambient dimension {}\n", rs.marks, rs.ambient_dim);
    let verts: Vec<Vec<String>> = alc.vertices.iter().map(|v| rationals(v)).collect();
    for (i, v) in verts.iter().enumerate() {
        text.push_str(&format!("mu_{i} = ({})\n", v.join(", ")));
    }
    let result = json!({ "type": t.to_string(), "marks": rs.marks, "vertices": verts });
    Ok(Outcome::value(text, result))
}

fn parse_index_list(s: &str) -> Result<BTreeSet<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index '{t}' in '{s}'"))))
        .collect()
}

fn cmd_centralizer(lie_type: &str, face: &str) -> Result<Outcome> {
    let t: CartanType = lie_type.parse()?;
    let rs = RootSystem::from_type(t)?;
    let alc = alcove(&rs);
    let face = parse_index_list(face)?;
    let sub = alc.face_centralizer(&face)?;
    let coords: Vec<&Vec<i64>> = sub.roots.iter().map(|&i| &rs.root_coords[i]).collect();
    let positive = sub.roots.iter().filter(|&&i| i < rs.num_positive_roots()).count();
    let mut text = format!("{t}, face {face:?}: {} roots ({positive} positive)\n", sub.len());
    for c in coords.iter().filter(|c| c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
        text.push_str(&format!("  {c:?}\n"));
    }
    let result = json!({ "type": t.to_string(), "face": face, "num_roots": sub.len(), "roots": coords });
    Ok(Outcome::value(text, result))
}

fn cmd_deligne(cmd: &DeligneCmd, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        DeligneCmd::Check { file, tol } => {
            let f: CochainFile = inputs.read(file)?;
            let c = f.load(None)?;
            let (residual, tol) = match &c {
                AnyCochain::Rational(c) => (c.cocycle_residual(), tol.unwrap_or(0.0)),
                AnyCochain::Real(c) => (c.cocycle_residual(), tol.unwrap_or(1e-9)),
            };
            let d = c.to_f64();
            let text = format!("degree-{} level-{} cochain", d.degree(), d.level());
            Ok(Outcome {
                text,
                result: json!({ "degree": d.degree(), "level": d.level(), "residual": residual }),
                checks: vec![Check::new("D c = 0", residual, tol)],
                verdict: None,
            })
        }
        DeligneCmd::Dd { file } => {
            let f: CochainFile = inputs.read(file)?;
            let c = f.load(None)?;
            let class = dd_class_of(c.rational()?)?;
            let text = format!("dd class {class}");
            let result = json!({
                "group": class.group.to_string(),
                "coordinates": class.coordinates.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "zero": class.is_zero(),
            });
            Ok(Outcome::value(text, result))
        }
        DeligneCmd::Trivialize { file } => {
            let f: CochainFile = inputs.read(file)?;
            let c = f.load(None)?;
            match solve_trivialization(c.rational()?)? {
                TrivializationOutcome::Trivialized(t) => {
                    let rho = rationals(&t.rho);
                    let text = format!("trivialized; rho per chart: {}", rho.join(" "));
                    let gauge = serde_json::to_value(crate::io::CochainBody::from_cochain(&t.gauge))?;
                    Ok(Outcome {
                        text,
                        result: json!({ "trivialized": true, "rho": rho, "gauge": gauge }),
                        checks: vec![Check::new("trivialization defect", t.defect, 1e-9)],
                        verdict: None,
                    })
                }
                TrivializationOutcome::Obstructed(o) => Ok(Outcome {
                    text: format!("obstructed: {o}"),
                    result: json!({ "trivialized": false, "obstruction": o.to_string() }),
                    checks: Vec::new(),
                    verdict: Some(Verdict::Fail),
                }),
            }
        }
        DeligneCmd::CheckModule { file, tol } => {
            let f: BundleFile = inputs.read(file)?;
            let tol = tol.or(f.tolerance).unwrap_or(1e-9);
            let (c, data) = f.load()?;
            let report = check_module_data(&c, &data, tol)?;
            let text = format!("rank-{} module data", data.rank);
            Ok(Outcome { text, result: json!({ "rank": data.rank }), checks: report.checks, verdict: None })
        }
        DeligneCmd::CheckEquivariant { file, tol } => {
            let f: EquivariantFile = inputs.read(file)?;
            let tol = tol.or(f.tolerance).unwrap_or(1e-9);
            let (report, order) = match f.scalar {
                ScalarKind::Rational => {
                    let d = f.load::<crate::rootsys::Rational>()?;
                    (check_equivariant_data(&d.action, &d.xi, &d.a, &d.b, tol)?, d.action.order())
                }
                ScalarKind::Real => {
                    let d = f.load::<f64>()?;
                    (check_equivariant_data(&d.action, &d.xi, &d.a, &d.b, tol)?, d.action.order())
                }
            };
            let text = format!("group of order {order}");
            Ok(Outcome { text, result: json!({ "group_order": order }), checks: report.checks, verdict: None })
        }
        DeligneCmd::CheckJandl { file, tol } => {
            let f: JandlFile = inputs.read(file)?;
            let tol = tol.or(f.tolerance).unwrap_or(1e-9);
            let report = match f.scalar {
                ScalarKind::Rational => {
                    let d = f.load::<crate::rootsys::Rational>()?;
                    check_jandl_data(&d.involution, &d.xi, &d.a, &d.phi, tol)?
                }
                ScalarKind::Real => {
                    let d = f.load::<f64>()?;
                    check_jandl_data(&d.involution, &d.xi, &d.a, &d.phi, tol)?
                }
            };
            Ok(Outcome { text: "Jandl data".into(), result: Value::Null, checks: report.checks, verdict: None })
        }
    }
}

fn load_complex(inputs: &mut Inputs, path: &str) -> Result<(ComplexFile, Arc<CoveredComplex>)> {
    let f: ComplexFile = inputs.read(path)?;
    let cc = Arc::new(f.to_complex()?);
    Ok((f, cc))
}

fn cmd_holonomy(cmd: &HolonomyCmd, inputs: &mut Inputs, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    match cmd {
        HolonomyCmd::Surface { complex, cochain, assignment } => {
            let (_, cc) = load_complex(inputs, complex)?;
            let f: CochainFile = inputs.read(cochain)?;
            let c = f.load(Some(cc.clone()))?.to_f64();
            let asg = match assignment {
                Some(p) => inputs.read::<ChartAssignment>(p)?,
                None => ChartAssignment::first(&cc)?,
            };
            let hol = surface_holonomy(&cc, &c, &asg)?;
            Ok(Outcome::value(complex_string(hol), json!({ "holonomy": complex_string(hol), "abs": hol.norm() })))
        }
        HolonomyCmd::Stokes { complex, cochain, h, assignment } => {
            let (_, cc) = load_complex(inputs, complex)?;
            let nerve = Arc::new(cc.nerve(3)?);
            let c = match cochain {
                Some(p) => inputs.read::<CochainFile>(p)?.load(Some(cc.clone()))?.to_f64(),
                None => random_trivial_gerbe(rng, &cc, &nerve)?.0,
            };
            let hvals = match h {
                Some(p) => inputs.read::<ThreeFormFile>(p)?.load()?,
                None => (0..cc.num_simplices(3))
                    .map(|tet| {
                        let i = cc.charts(3, tet)[0];
                        cc.boundary(3, tet).iter().map(|&(f, s)| Ok(s as f64 * c.value(2, &[i], f)?)).sum()
                    })
                    .collect::<Result<Vec<f64>>>()?,
            };
            let asg = match assignment {
                Some(p) => Some(inputs.read::<ChartAssignment>(p)?),
                None => None,
            };
            let out = stokes_check(&cc, &hvals, &c, asg.as_ref())?;
            let text = format!(
                "boundary holonomy {}\nbulk             {}",
                complex_string(out.hol_boundary),
                complex_string(out.bulk)
            );
            let result = json!({
                "hol_boundary": complex_string(out.hol_boundary),
                "bulk": complex_string(out.bulk),
                "gap": out.gap,
                "exactness_residual": out.exactness_residual,
                "agree": out.agree,
            });
            let checks = vec![Check::new("boundary holonomy = exp(2 pi i sum H)", out.gap, crate::holonomy::STOKES_TOL)];
            Ok(Outcome { text, result, checks, verdict: None })
        }
    }
}

fn parse_matrix_arg(arg: &str, inputs: &mut Inputs) -> Result<Mat> {
    let rows: Vec<Vec<String>> =
        if arg.trim_start().starts_with('[') { serde_json::from_str(arg)? } else { inputs.read(arg)? };
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Domain("matrix must be square and nonempty".into()));
    }
    let mut m = Mat::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            m[(i, j)] = parse_complex(s)?;
        }
    }
    Ok(m)
}

fn group_rank(name: &str) -> Result<usize> {
    match name.to_ascii_lowercase().as_str() {
        "su2" => Ok(2),
        "su3" => Ok(3),
        other => Err(Error::Domain(format!("unsupported group '{other}' (use su2 or su3)"))),
    }
}

fn identity_outcome(name: &str, rep: crate::lienum::IdentityReport, tol: f64) -> Outcome {
    let text = format!("{} samples, finite-difference step {:.0e}", rep.residuals.len(), rep.step);
    let result = json!({ "residuals": rep.residuals, "max_residual": rep.max_residual, "step": rep.step });
    Outcome { text, result, checks: vec![Check::new(name, rep.max_residual, tol)], verdict: None }
}

/// Residual tolerance of the nested finite-difference identities.
const IDENTITY_TOL: f64 = 1e-4;

fn cmd_lienum(cmd: &LienumCmd, inputs: &mut Inputs, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    match cmd {
        LienumCmd::IntegrateH { resolution } => {
            let int = integrate_h_su2(*resolution, &Pairing::calibrated(1.0));
            let mut text = format!("integral of calibrated H over SU(2) at resolution {resolution}: {:.12}", int.value);
            if let Some(w) = &int.warning {
                text.push_str(&format!("\nwarning: {w}"));
            }
            let checks = vec![Check::new("integral = 1", (int.value - 1.0).abs(), 1e-2)];
            Ok(Outcome { text, result: serde_json::to_value(&int)?, checks, verdict: None })
        }
        LienumCmd::VerifyOmega { group, samples, step } => {
            if group_rank(group)? != 3 {
                return Err(Error::Domain(
                    "on SU(2) conjugacy classes are 2-dimensional and the 3-form identity is vacuous; use su3".into(),
                ));
            }
            let rep = verify_omega(&Pairing::trace(), *samples, *step, rng)?;
            Ok(identity_outcome("pullback of H = d omega", rep, IDENTITY_TOL))
        }
        LienumCmd::VerifyVarpi { level, group, samples, step } => {
            let n = group_rank(group)?;
            let rep = verify_varpi_in(n, &Pairing::trace(), *level, *samples, *step, rng)?;
            Ok(identity_outcome("k p1*H = k p2*H + d varpi", rep, IDENTITY_TOL))
        }
        LienumCmd::Wzw { ball, level, map } => {
            let f: ComplexFile = inputs.read(ball)?;
            let mesh = f.to_ball()?;
            let pairing = Pairing::calibrated(1.0);
            match map {
                Some(p) => {
                    let m: MapFile = inputs.read(p)?;
                    let amp = wzw_amplitude(&SampledMap::new(mesh, m.values)?, *level, &pairing)?;
                    let text = format!("amplitude {} (integral {:.9})", complex_string(amp.amplitude), amp.integral);
                    let result = json!({
                        "level": amp.level,
                        "integral": amp.integral,
                        "amplitude": complex_string(amp.amplitude),
                    });
                    Ok(Outcome::value(text, result))
                }
                None => {
                    let (a, b) = cap_extensions(&mesh)?;
                    let cmp = compare_extensions(&a, &b, *level, &pairing)?;
                    let text = format!(
                        "cap extensions: integrals {:.9} and {:.9}, glued degree {}, ratio {}",
                        cmp.first.integral,
                        cmp.second.integral,
                        cmp.degree,
                        complex_string(cmp.ratio)
                    );
                    let result = json!({
                        "level": cmp.level,
                        "integrals": [cmp.first.integral, cmp.second.integral],
                        "degree": cmp.degree,
                        "ratio": complex_string(cmp.ratio),
                        "residual": cmp.residual,
                    });
                    let checks = vec![Check::new("ratio = exp(2 pi i k m)", cmp.residual, 1e-2)];
                    Ok(Outcome { text, result, checks, verdict: None })
                }
            }
        }
        LienumCmd::Project { matrix } => {
            let m = parse_matrix_arg(matrix, inputs)?;
            GroupPoint::with_tolerance(m.clone(), 1e-9)?;
            let p = alcove_projection(&m)?;
            let text = format!("xi = {:?}\nbarycentric = {:?}", p.xi, p.barycentric);
            Ok(Outcome::value(text, json!({ "xi": p.xi, "barycentric": p.barycentric })))
        }
    }
}

fn cmd_grpcoh(args: &GrpcohArgs) -> Result<Outcome> {
    if let Some(GrpcohCmd::Center { family, rank }) = &args.center {
        let mut chars = family.chars();
        let letter = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(Error::Parse(format!("family must be a single letter, got '{family}'"))),
        };
        let z = center_of(Family::from_letter(letter)?, *rank)?;
        let text = z.invariants().to_string();
        return Ok(Outcome::value(text.clone(), json!({ "center": text, "order": z.order() })));
    }
    let orders = args.group.as_deref().ok_or_else(|| Error::Domain("grpcoh needs --group or `center`".into()))?;
    let z = FiniteAbelianGroup::parse(orders)?;
    let h = group_cohomology_u1(&z, args.degree)?;
    let text = h.to_string();
    let result = json!({
        "group": z.to_string(),
        "degree": args.degree,
        "cohomology": text,
        "invariant_factors": h.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(Outcome::value(text, result))
}
