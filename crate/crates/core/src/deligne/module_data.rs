//! Local-data checker for gerbe modules: twisted transition matrices `G_ij`
//! and matrix-valued connection 1-forms `Π_i` relating a gerbe to a trivial
//! gerbe with 2-form `ω`.
//!
//! U(1) quantities are in turns and real forms in units of `2πi`, so the
//! equations checked are, on every relevant overlap and simplex,
//!
//! 1. `exp(-2πi g_ijk) G_ik G_jk⁻¹ G_ij⁻¹ = 1`
//! 2. `2πi A_ij + Π_j - G_ij⁻¹ Π_i G_ij - G_ij⁻¹ dG_ij = 0`
//! 3. `ω = B_i + tr(dΠ_i) / (2πi n)`
//! 4. `dω = dB_i`
//!
//! On a complex, `G_ij⁻¹ dG_ij` on an edge `(u, v)` is the principal
//! logarithm of `G(u)⁻¹ G(v)` and the conjugation uses `G(u)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::deligne::cochain::{DeligneCochain, Realization};
use crate::error::{Error, Result};
use crate::report::{CheckReport, MaxTracker};

pub type CMatrix = DMatrix<Complex64>;

/// Module data over the nerve of a cochain.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleData {
    pub rank: usize,
    /// `G_ij` for each 1-face `i < j` of the nerve (in nerve order): one matrix
    /// in pure mode, one per vertex of the complex otherwise.
    pub transitions: Vec<Vec<CMatrix>>,
    /// `Π_i` for each chart: one matrix in pure mode, one per edge otherwise.
    pub connections: Vec<Vec<CMatrix>>,
    /// `ω`: a single value in pure mode, one per triangle otherwise.
    pub omega: Vec<f64>,
}

fn turn_phase(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

fn max_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Principal logarithm of a unitary matrix; fails when an eigenvalue sits
/// within `1e-9` rad of `-1`.
pub fn unitary_log(m: &CMatrix) -> std::result::Result<CMatrix, f64> {
    let n = m.nrows();
    if n == 1 {
        let z = m[(0, 0)];
        if PI - z.arg().abs() < 1e-9 {
            return Err(z.arg());
        }
        return Ok(CMatrix::from_element(1, 1, z.ln()));
    }
    let schur = m.clone().schur();
    let (q, t) = schur.unpack();
    let mut d = CMatrix::zeros(n, n);
    for i in 0..n {
        let z = t[(i, i)];
        if PI - z.arg().abs() < 1e-9 {
            return Err(z.arg());
        }
        d[(i, i)] = z.ln();
    }
    Ok(&q * d * q.adjoint())
}

fn invert(m: &CMatrix, what: impl FnOnce() -> String) -> Result<CMatrix> {
    m.clone().try_inverse().ok_or_else(|| Error::Numeric(format!("transition on {} is singular", what())))
}

impl ModuleData {
    /// All-identity transitions and zero connections with the given `ω`.
    pub fn identity(c: &DeligneCochain<f64>, rank: usize, omega: Vec<f64>) -> Result<ModuleData> {
        let nerve = c.nerve();
        let (nv, ne) = match c.realization() {
            Realization::Pure => (1, 1),
            Realization::Geometric(cc) => (cc.num_vertices(), cc.num_simplices(1)),
        };
        if c.num_components() < 3 {
            return Err(Error::Domain("module data needs a degree-2 level-2 cochain".into()));
        }
        Ok(ModuleData {
            rank,
            transitions: vec![vec![CMatrix::identity(rank, rank); nv]; nerve.num_faces(1)],
            connections: vec![vec![CMatrix::zeros(rank, rank); ne]; nerve.num_faces(0)],
            omega,
        })
        .and_then(|d| d.validate(c).map(|_| d))
    }

    /// Transport by a gauge transformation: if this data fits `c`, the
    /// result fits `c + D(h, W)`.
    pub fn gauge_transform(&self, gauge: &DeligneCochain<f64>) -> Result<ModuleData> {
        if gauge.degree() != 1 || gauge.num_components() < 2 {
            return Err(Error::Domain("gauge transformations are degree-1 level-2 cochains".into()));
        }
        let shape_ok = gauge.component(0).len() == self.transitions.len()
            && gauge.component(1).len() == self.connections.len()
            && gauge.component(0).iter().zip(&self.transitions).all(|(a, b)| a.len() == b.len())
            && gauge.component(1).iter().zip(&self.connections).all(|(a, b)| a.len() == b.len());
        if !shape_ok {
            return Err(Error::Domain("gauge cochain does not match the module data layout".into()));
        }
        let mut out = self.clone();
        for (pos, mats) in out.transitions.iter_mut().enumerate() {
            for (s, g) in mats.iter_mut().enumerate() {
                let phase = turn_phase(-gauge.component(0)[pos][s]);
                *g = g.map(|z| z * phase);
            }
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        for (i, mats) in out.connections.iter_mut().enumerate() {
            for (s, p) in mats.iter_mut().enumerate() {
                let w = gauge.component(1)[i][s];
                *p -= CMatrix::identity(self.rank, self.rank) * (two_pi_i * w);
            }
        }
        Ok(out)
    }

    fn transition(&self, c: &DeligneCochain<f64>, i: usize, j: usize, v: usize) -> Result<CMatrix> {
        let nerve = c.nerve();
        let (a, b, inverse) = if i < j { (i, j, false) } else { (j, i, true) };
        let pos = nerve
            .position(&[a, b])
            .ok_or_else(|| Error::Domain(format!("{} is not a face of the nerve", nerve.describe(&[i, j]))))?;
        let g = self.transitions[pos][v].clone();
        if inverse {
            invert(&g, || nerve.describe(&[i, j]))
        } else {
            Ok(g)
        }
    }

    fn validate(&self, c: &DeligneCochain<f64>) -> Result<()> {
        let nerve = c.nerve();
        let (nv, ne, nt) = match c.realization() {
            Realization::Pure => (1, 1, 1),
            Realization::Geometric(cc) => (cc.num_vertices(), cc.num_simplices(1), cc.num_simplices(2)),
        };
        let bad = |what: &str| Err(Error::Domain(format!("module data: {what} has the wrong shape")));
        if self.transitions.len() != nerve.num_faces(1) || self.transitions.iter().any(|m| m.len() != nv) {
            return bad("transitions");
        }
        if self.connections.len() != nerve.num_faces(0) || self.connections.iter().any(|m| m.len() != ne) {
            return bad("connections");
        }
        if self.omega.len() != nt {
            return bad("omega");
        }
        let n = self.rank;
        if self
            .transitions
            .iter()
            .chain(&self.connections)
            .flatten()
            .any(|m| m.nrows() != n || m.ncols() != n)
        {
            return Err(Error::Domain(format!("module data: every matrix must be {n}x{n}")));
        }
        Ok(())
    }
}

/// Check the four module equations for `data` against the gerbe cocycle `c`.
pub fn check_module_data(c: &DeligneCochain<f64>, data: &ModuleData, tol: f64) -> Result<CheckReport> {
    if c.degree() != 2 || c.level() != 2 {
        return Err(Error::Domain("module data is checked against a degree-2 level-2 cochain".into()));
    }
    data.validate(c)?;
    let nerve = c.nerve();
    let n = data.rank;
    let id = CMatrix::identity(n, n);
    let cc = c.realization().complex().cloned();
    let simplices = |k: usize, face: &[usize]| -> Vec<usize> {
        match &cc {
            None => vec![0],
            Some(cc) => (0..cc.num_simplices(k)).filter(|&s| cc.in_charts(k, s, face)).collect(),
        }
    };

    let mut eq1 = MaxTracker::default();
    for face in nerve.faces(2) {
        let [i, j, k] = [face[0], face[1], face[2]];
        for v in simplices(0, face) {
            let m = data.transition(c, i, k, v)?
                * data.transition(c, k, j, v)?
                * data.transition(c, j, i, v)?
                * turn_phase(-c.value(0, face, v)?);
            eq1.observe(max_entry(&(m - &id)), || format!("{} vertex {v}", nerve.describe(face)));
        }
    }

    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut eq2 = MaxTracker::default();
    for face in nerve.faces(1) {
        let [i, j] = [face[0], face[1]];
        for e in simplices(1, face) {
            let (gu_inv, gu, log) = match &cc {
                None => {
                    let g = data.transition(c, i, j, 0)?;
                    (invert(&g, || nerve.describe(face))?, g, CMatrix::zeros(n, n))
                }
                Some(cc) => {
                    let [u, v] = cc.edges()[e];
                    let gu = data.transition(c, i, j, u)?;
                    let gv = data.transition(c, i, j, v)?;
                    let gu_inv = invert(&gu, || nerve.describe(face))?;
                    let log = unitary_log(&(&gu_inv * gv)).map_err(|arg| {
                        Error::Numeric(format!(
                            "principal logarithm undefined on edge {e} ({u},{v}) of {}: eigenvalue phase {arg:.6}",
                            nerve.describe(face)
                        ))
                    })?;
                    (gu_inv, gu, log)
                }
            };
            let m = &id * (two_pi_i * c.value(1, face, e)?) + &data.connections[j][e]
                - gu_inv * &data.connections[i][e] * &gu
                - log;
            eq2.observe(max_entry(&m), || format!("{} edge {e}", nerve.describe(face)));
        }
    }

    let mut eq3 = MaxTracker::default();
    let mut eq4 = MaxTracker::default();
    for i in 0..nerve.num_indices() {
        for t in simplices(2, &[i]) {
            let dpi = match &cc {
                None => Complex64::new(0.0, 0.0),
                Some(cc) => cc.boundary(2, t).iter().map(|&(e, s)| data.connections[i][e].trace() * s as f64).sum(),
            };
            let q = dpi / (two_pi_i * n as f64);
            let r = (data.omega[t] - c.value(2, &[i], t)? - q.re).abs() + q.im.abs();
            eq3.observe(r, || format!("chart {} triangle {t}", nerve.describe(&[i])));
        }
        if let Some(cc) = &cc {
            for tet in (0..cc.num_simplices(3)).filter(|&s| cc.in_charts(3, s, &[i])) {
                let mut r = 0.0;
                for &(f, s) in cc.boundary(3, tet) {
                    r += s as f64 * (data.omega[f] - c.value(2, &[i], f)?);
                }
                eq4.observe(r.abs(), || format!("chart {} tetrahedron {tet}", nerve.describe(&[i])));
            }
        }
    }

    let mut report = CheckReport::default();
    report.push(eq1.check("transition cocycle", tol));
    report.push(eq2.check("connection compatibility", tol));
    report.push(eq3.check("curving relation", tol));
    let mut curv = eq4.check("curvature consequence", tol);
    if cc.as_ref().is_none_or(|cc| cc.num_simplices(3) == 0) {
        curv = curv.with_detail("no 3-simplices; holds vacuously");
    }
    report.push(curv);
    Ok(report)
}
