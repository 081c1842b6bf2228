use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::deligne::cochain::{DeligneCochain, Realization, Scalar};
use crate::deligne::nerve::CoverNerve;
use crate::error::{Error, Result};
use crate::rootsys::{rational_string, Rational};
use crate::snf::{smith_normal_form, solve_mod_integers, solve_rational, AbelianGroup, CohomologyPresentation, IntMatrix, SnfTransforms};

fn presentation(nerve: &CoverNerve, q: usize) -> CohomologyPresentation {
    let dim = nerve.num_faces(q);
    let prev = if q == 0 { IntMatrix::zeros(dim, 0) } else { nerve.coboundary_matrix(q - 1) };
    CohomologyPresentation::new(&prev, &nerve.coboundary_matrix(q), dim)
}

/// Integral simplicial cohomology `H^q` of the nerve.
pub fn cech_cohomology(nerve: &CoverNerve, q: usize) -> AbelianGroup {
    presentation(nerve, q).group
}

/// A class in `H^3(nerve; Z)`: torsion residues then free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DdClass {
    pub group: AbelianGroup,
    pub coordinates: Vec<BigInt>,
}

impl DdClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }

    fn reduce(mut self) -> Self {
        for (c, d) in self.coordinates.iter_mut().zip(&self.group.torsion) {
            *c = c.mod_floor(d);
        }
        self
    }

    pub fn add(&self, other: &DdClass) -> Result<DdClass> {
        if self.group != other.group {
            return Err(Error::Domain("classes live in different groups".into()));
        }
        let coordinates = self.coordinates.iter().zip(&other.coordinates).map(|(a, b)| a + b).collect();
        Ok(DdClass { group: self.group.clone(), coordinates }.reduce())
    }

    pub fn neg(&self) -> DdClass {
        DdClass { group: self.group.clone(), coordinates: self.coordinates.iter().map(|a| -a).collect() }.reduce()
    }
}

impl fmt::Display for DdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coordinates.iter().map(ToString::to_string).collect();
        write!(f, "({}) in {}", c.join(","), self.group)
    }
}

/// Dixmier–Douady class of a U(1) Čech 2-cocycle given in turns, one value
/// per 2-face of the nerve: the integer 3-cocycle `δ(lift g)` reduced
/// modulo coboundaries.
pub fn dd_class(nerve: &CoverNerve, g: &[Rational]) -> Result<DdClass> {
    if g.len() != nerve.num_faces(2) {
        return Err(Error::Domain(format!(
            "expected {} values on 2-faces, got {}",
            nerve.num_faces(2),
            g.len()
        )));
    }
    let lift: Vec<Rational> = g.iter().map(Scalar::frac).collect();
    let d = nerve.coboundary_matrix(2);
    let n = d.mul_rational_vec(&lift);
    let mut ints = Vec::with_capacity(n.len());
    for (x, face) in n.iter().zip(nerve.faces(3)) {
        if !x.is_integer() {
            return Err(Error::Domain(format!(
                "not a U(1) cocycle: coboundary on {} is {} turns",
                nerve.describe(face),
                rational_string(&x.frac())
            )));
        }
        ints.push(x.to_integer());
    }
    let p = presentation(nerve, 3);
    let coordinates = p.coordinates(&ints).expect("coboundary of a cochain is a cocycle");
    Ok(DdClass { group: p.group, coordinates }.reduce())
}

/// The class of the U(1) part of a degree-2 pure-nerve cochain.
pub fn dd_class_of(c: &DeligneCochain<Rational>) -> Result<DdClass> {
    if c.degree() != 2 || !c.is_pure() {
        return Err(Error::Domain("dd class needs a degree-2 pure-nerve cochain".into()));
    }
    let g: Vec<Rational> = c.component(0).iter().map(|v| v[0].clone()).collect();
    dd_class(c.nerve(), &g)
}

/// U(1) 2-cocycles whose classes generate the torsion of `H^3(nerve; Z)`,
/// each with its order. Built from the Smith form of the 2-to-3 coboundary:
/// a column `x` of the right transform with `δx = d·y` gives `g = x/d`.
pub fn torsion_generators(nerve: &CoverNerve) -> Vec<(Vec<Rational>, BigInt)> {
    let d2 = nerve.coboundary_matrix(2);
    let snf = smith_normal_form(&d2, SnfTransforms { left: false, right: true, right_inverse: false });
    let q = snf.right.as_ref().unwrap();
    let mut out = Vec::new();
    for (r, d) in snf.diagonal.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let den = Rational::from_integer(d.clone());
        let g = (0..q.nrows()).map(|i| (Rational::from_integer(q.get(i, r).clone()) / &den).frac()).collect();
        out.push((g, d.clone()));
    }
    out
}

fn pure_component(c: &DeligneCochain<Rational>, k: usize) -> Vec<Rational> {
    c.component(k).iter().map(|v| v[0].clone()).collect()
}

/// A degree-`(p-1)` pure-nerve cochain `x` with `D x = target`, if one exists
/// (U(1) layer solved modulo integers, form layers exactly).
pub fn solve_coboundary(target: &DeligneCochain<Rational>) -> Result<Option<DeligneCochain<Rational>>> {
    if !target.is_pure() {
        return Err(Error::Domain("coboundary solving needs pure-nerve cochains".into()));
    }
    let p = target.degree();
    if p == 0 {
        return Err(Error::Domain("a degree-0 cochain is never a coboundary of anything".into()));
    }
    let nerve = target.nerve().clone();
    let mut x = DeligneCochain::zero(p - 1, target.level(), nerve.clone(), Realization::Pure)?;
    for k in 0..target.num_components() {
        let t = pure_component(target, k);
        if k >= x.num_components() {
            if t.iter().any(|v| !Zero::is_zero(v)) {
                return Ok(None);
            }
            continue;
        }
        let d = nerve.coboundary_matrix(p - 1 - k);
        let sol = if k == 0 { solve_mod_integers(&d, &t) } else { solve_rational(&d, &t) };
        match sol {
            None => return Ok(None),
            Some(v) => x.set_component(k, v.into_iter().map(|a| vec![a]).collect())?,
        }
    }
    Ok(Some(x))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Nonzero Dixmier–Douady class.
    DixmierDouady { class: DdClass },
    /// Topologically trivial but carrying nontrivial flat data that
    /// constant gauge transformations cannot remove (`layer` 0: U(1) part,
    /// 1: connection part).
    Flat { layer: usize },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::DixmierDouady { class } => write!(f, "nonzero Dixmier-Douady class {class}"),
            Obstruction::Flat { layer: 0 } => write!(f, "flat U(1) data with nontrivial holonomy"),
            Obstruction::Flat { .. } => write!(f, "flat connection data with nontrivial holonomy"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trivialization {
    /// The degree-1 gauge cochain `(h, W)`.
    pub gauge: DeligneCochain<Rational>,
    /// The global 2-form, one (equal) value per chart.
    pub rho: Vec<Rational>,
    /// Max-norm of `c + D(h, W) - (1, 0, rho)`.
    pub defect: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TrivializationOutcome {
    Trivialized(Trivialization),
    Obstructed(Obstruction),
}

/// Find `(h, W)` and `rho` with `(1, 0, rho) = c + D(h, W)`, or report why
/// none exists.
pub fn solve_trivialization(c: &DeligneCochain<Rational>) -> Result<TrivializationOutcome> {
    if c.degree() != 2 || c.level() != 2 || !c.is_pure() {
        return Err(Error::Domain("trivialization needs a degree-2, level-2 pure-nerve cochain".into()));
    }
    let residual = c.cocycle_residual();
    if residual != 0.0 {
        return Err(Error::Domain(format!("input is not a cocycle (residual {residual:e})")));
    }
    let class = dd_class_of(c)?;
    if !class.is_zero() {
        return Ok(TrivializationOutcome::Obstructed(Obstruction::DixmierDouady { class }));
    }
    let nerve = c.nerve().clone();
    let neg_g: Vec<Rational> = pure_component(c, 0).iter().map(|v| -v).collect();
    let Some(h) = solve_mod_integers(&nerve.coboundary_matrix(1), &neg_g) else {
        return Ok(TrivializationOutcome::Obstructed(Obstruction::Flat { layer: 0 }));
    };
    let neg_a: Vec<Rational> = pure_component(c, 1).iter().map(|v| -v).collect();
    let Some(w) = solve_rational(&nerve.coboundary_matrix(0), &neg_a) else {
        return Ok(TrivializationOutcome::Obstructed(Obstruction::Flat { layer: 1 }));
    };
    let mut gauge = DeligneCochain::zero(1, 2, nerve.clone(), Realization::Pure)?;
    gauge.set_component(0, h.into_iter().map(|a| vec![a]).collect())?;
    gauge.set_component(1, w.into_iter().map(|a| vec![a]).collect())?;
    let rho = pure_component(c, 2);
    let mut target = DeligneCochain::zero(2, 2, nerve, Realization::Pure)?;
    target.set_component(2, rho.iter().map(|a| vec![a.clone()]).collect())?;
    let defect = c.add(&gauge.differential())?.sub(&target)?.residual_from_zero();
    Ok(TrivializationOutcome::Trivialized(Trivialization { gauge, rho, defect }))
}

/// Pure-nerve constant cochain on a nerve, handy for tests and examples.
pub fn pure_zero(degree: usize, level: usize, nerve: &Arc<CoverNerve>) -> Result<DeligneCochain<Rational>> {
    DeligneCochain::zero(degree, level, nerve.clone(), Realization::Pure)
}
