//! Surface holonomy of discrete gerbes and the Stokes identity on solid
//! balls. Phases are `exp(2πi ·)` of sums in turns.
//!
//! For a closed oriented surface with chart choices `a(t)` per triangle and
//! `b(v)` per vertex the holonomy is
//!
//! ```text
//! Σ_t B_{a(t)}(t) + Σ_e A_{a(t) a(t')}(e) - Σ_v Σ_k g_{a(t_k) b(v) a(t_{k+1})}(v)
//! ```
//!
//! where `e` is oriented as in the boundary of `t` and `t_0, t_1, ...` is the
//! fan around `v` from [`CoveredComplex::vertex_fans`].

pub mod mesh;

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::deligne::{CoveredComplex, DeligneCochain};
use crate::error::{Error, Result};

/// Default tolerance for the cocycle precondition.
pub const COCYCLE_TOL: f64 = 1e-9;

/// Chart choices on a surface: one per triangle and one per vertex. The
/// chart used on an edge is implied by its two triangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartAssignment {
    pub triangles: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl ChartAssignment {
    /// Smallest admissible chart everywhere.
    pub fn first(cc: &CoveredComplex) -> Result<ChartAssignment> {
        let pick = |k: usize, s: usize| {
            cc.charts(k, s)
                .first()
                .copied()
                .ok_or_else(|| Error::Domain(format!("{k}-simplex {s} lies in no chart")))
        };
        Ok(ChartAssignment {
            triangles: (0..cc.num_simplices(2)).map(|t| pick(2, t)).collect::<Result<_>>()?,
            vertices: (0..cc.num_vertices()).map(|v| pick(0, v)).collect::<Result<_>>()?,
        })
    }

    /// Uniformly random chart among the admissible ones on each simplex.
    pub fn random<R: Rng + ?Sized>(cc: &CoveredComplex, rng: &mut R) -> Result<ChartAssignment> {
        let mut pick = |k: usize, s: usize| {
            cc.charts(k, s)
                .choose(rng)
                .copied()
                .ok_or_else(|| Error::Domain(format!("{k}-simplex {s} lies in no chart")))
        };
        let triangles = (0..cc.num_simplices(2)).map(|t| pick(2, t)).collect::<Result<_>>()?;
        let vertices = (0..cc.num_vertices()).map(|v| pick(0, v)).collect::<Result<_>>()?;
        Ok(ChartAssignment { triangles, vertices })
    }

    /// Every triangle and vertex chart must contain its simplex and every
    /// index set used by the formula must be a face of the cochain's nerve.
    pub fn validate(&self, cc: &CoveredComplex, c: &DeligneCochain<f64>) -> Result<()> {
        if self.triangles.len() != cc.num_simplices(2) || self.vertices.len() != cc.num_vertices() {
            return Err(Error::Domain(format!(
                "assignment covers {} triangles and {} vertices, surface has {} and {}",
                self.triangles.len(),
                self.vertices.len(),
                cc.num_simplices(2),
                cc.num_vertices()
            )));
        }
        for (t, &i) in self.triangles.iter().enumerate() {
            if !cc.in_charts(2, t, &[i]) {
                return Err(Error::Domain(format!("triangle {t} does not lie in assigned chart {i}")));
            }
        }
        for (v, &i) in self.vertices.iter().enumerate() {
            if !cc.in_charts(0, v, &[i]) {
                return Err(Error::Domain(format!("vertex {v} does not lie in assigned chart {i}")));
            }
        }
        let nerve = c.nerve();
        let face_ok = |idx: &[usize]| {
            let mut f = idx.to_vec();
            f.sort_unstable();
            f.dedup();
            nerve.contains(&f)
        };
        for (e, [(t, _), (u, _)]) in cc.edge_triangles()?.into_iter().enumerate() {
            if !face_ok(&[self.triangles[t], self.triangles[u]]) {
                return Err(Error::Domain(format!("edge {e}: charts of its triangles are not a nerve face")));
            }
        }
        for (v, fan) in cc.vertex_fans()?.iter().enumerate() {
            for k in 0..fan.len() {
                let idx = [self.triangles[fan[k]], self.vertices[v], self.triangles[fan[(k + 1) % fan.len()]]];
                if !face_ok(&idx) {
                    return Err(Error::Domain(format!("vertex {v}: corner charts {idx:?} are not a nerve face")));
                }
            }
        }
        Ok(())
    }
}

fn phase(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

fn require_surface_cochain(cc: &CoveredComplex, c: &DeligneCochain<f64>) -> Result<()> {
    if c.degree() != 2 || c.level() != 2 {
        return Err(Error::Domain("holonomy needs a degree-2 level-2 cochain".into()));
    }
    match c.realization().complex() {
        Some(own) if std::ptr::eq(Arc::as_ptr(own), cc) || **own == *cc => Ok(()),
        Some(_) => Err(Error::Domain("cochain lives on a different complex".into())),
        None => Err(Error::Domain("holonomy needs a geometric cochain".into())),
    }
}

/// The holonomy exponent in turns (defined modulo integers).
pub fn holonomy_turns(cc: &CoveredComplex, c: &DeligneCochain<f64>, asg: &ChartAssignment) -> Result<f64> {
    require_surface_cochain(cc, c)?;
    if cc.dimension() != 2 {
        return Err(Error::Domain("holonomy is defined on 2-dimensional complexes".into()));
    }
    let residual = c.cocycle_residual();
    if !(residual <= COCYCLE_TOL) {
        return Err(Error::Domain(format!("input is not a cocycle (residual {residual:e})")));
    }
    asg.validate(cc, c)?;
    let mut total = 0.0;
    for (t, &i) in asg.triangles.iter().enumerate() {
        total += c.value(2, &[i], t)?;
    }
    for (e, [(t, sign), (u, _)]) in cc.edge_triangles()?.into_iter().enumerate() {
        let a = c.value(1, &[asg.triangles[t], asg.triangles[u]], e)?;
        total += sign as f64 * a;
    }
    for (v, fan) in cc.vertex_fans()?.iter().enumerate() {
        for k in 0..fan.len() {
            let idx = [asg.triangles[fan[k]], asg.vertices[v], asg.triangles[fan[(k + 1) % fan.len()]]];
            total -= c.value(0, &idx, v)?;
        }
    }
    Ok(total)
}

/// Holonomy of the cocycle `c` around the closed oriented surface `cc`.
pub fn surface_holonomy(cc: &CoveredComplex, c: &DeligneCochain<f64>, asg: &ChartAssignment) -> Result<Complex64> {
    holonomy_turns(cc, c, asg).map(phase)
}

/// Both sides of the Stokes identity on a 3-complex with boundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StokesOutcome {
    pub hol_boundary: Complex64,
    pub bulk: Complex64,
    /// `|hol_boundary - bulk|`.
    pub gap: f64,
    /// Max over charts and tetrahedra of `|dB_i - H|`.
    pub exactness_residual: f64,
    pub agree: bool,
}

pub const STOKES_TOL: f64 = 1e-6;
pub const EXACTNESS_TOL: f64 = 1e-9;

/// Compare the boundary holonomy of `c` (a cocycle on the 3-complex `cc3`)
/// with `exp(2πi Σ_tet H)`. `asg` is an assignment on the boundary surface
/// returned by [`CoveredComplex::boundary_surface`]; `None` uses
/// [`ChartAssignment::first`].
pub fn stokes_check(
    cc3: &Arc<CoveredComplex>,
    h: &[f64],
    c: &DeligneCochain<f64>,
    asg: Option<&ChartAssignment>,
) -> Result<StokesOutcome> {
    if cc3.dimension() != 3 {
        return Err(Error::Domain("Stokes check needs a 3-dimensional complex".into()));
    }
    if h.len() != cc3.num_simplices(3) {
        return Err(Error::Domain(format!("H has {} values for {} tetrahedra", h.len(), cc3.num_simplices(3))));
    }
    match c.realization().complex() {
        Some(own) if **own == **cc3 => {}
        _ => return Err(Error::Domain("cochain must live on the given 3-complex".into())),
    }
    let mut exactness: f64 = 0.0;
    let mut worst = None;
    for tet in 0..cc3.num_simplices(3) {
        for &i in cc3.charts(3, tet) {
            let mut db = 0.0;
            for &(f, s) in cc3.boundary(3, tet) {
                db += s as f64 * c.value(2, &[i], f)?;
            }
            let r = (db - h[tet]).abs();
            if r > exactness {
                exactness = r;
                worst = Some((tet, i));
            }
        }
    }
    if exactness > EXACTNESS_TOL {
        let (tet, i) = worst.unwrap();
        return Err(Error::Domain(format!(
            "H is not dB in chart {i} on tetrahedron {tet} (residual {exactness:e})"
        )));
    }
    let (surface, embedding) = cc3.boundary_surface()?;
    let surface = Arc::new(surface);
    let cb = c.restrict_to_boundary(surface.clone(), &embedding)?;
    let asg = match asg {
        Some(a) => a.clone(),
        None => ChartAssignment::first(&surface)?,
    };
    let hol_boundary = surface_holonomy(&surface, &cb, &asg)?;
    let bulk = phase(h.iter().sum());
    let gap = (hol_boundary - bulk).norm();
    Ok(StokesOutcome { hol_boundary, bulk, gap, exactness_residual: exactness, agree: gap < STOKES_TOL })
}
