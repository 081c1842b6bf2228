use std::fmt::Debug;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use crate::deligne::complex::CoveredComplex;
use crate::deligne::nerve::{CoverNerve, Orientation};
use crate::error::{Error, Result};
use crate::rootsys::Rational;

/// Coefficients for cochains: exact rationals for algebraic work, `f64` on
/// geometric complexes. U(1) values are stored additively in turns.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Representative in `[0, 1)`.
    fn frac(&self) -> Self;
    /// Representative in `(-1/2, 1/2]`.
    fn wrap_half(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    fn signed(&self, negative: bool) -> Self {
        if negative {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn frac(&self) -> Self {
        let f = self - self.floor();
        if f >= 1.0 {
            0.0
        } else {
            f
        }
    }
    fn wrap_half(&self) -> Self {
        let f = self.frac();
        if f > 0.5 {
            f - 1.0
        } else {
            f
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn frac(&self) -> Self {
        self - self.floor()
    }
    fn wrap_half(&self) -> Self {
        let f = self.frac();
        if f > Rational::new(1.into(), 2.into()) {
            f - Rational::one()
        } else {
            f
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Distance from `x` to the nearest integer.
pub fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Whether cochain values are single constants per face or simplicial
/// cochains on a covered complex.
#[derive(Clone, Debug)]
pub enum Realization {
    Pure,
    Geometric(Arc<CoveredComplex>),
}

impl Realization {
    pub fn complex(&self) -> Option<&Arc<CoveredComplex>> {
        match self {
            Realization::Pure => None,
            Realization::Geometric(cc) => Some(cc),
        }
    }

    fn same_as(&self, other: &Realization) -> bool {
        match (self, other) {
            (Realization::Pure, Realization::Pure) => true,
            (Realization::Geometric(a), Realization::Geometric(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

/// An element of the truncated Čech–Deligne complex.
///
/// Component `k` (`0 <= k <= min(degree, level)`) lives on the nerve faces
/// of dimension `degree - k` and carries a simplicial `k`-cochain on the
/// part of the complex covered by all charts of the face; component 0 is
/// U(1)-valued. `values[k][face]` has one entry per `k`-simplex in geometric
/// mode (zero outside the face's charts) and a single entry in pure mode.
#[derive(Clone, Debug)]
pub struct DeligneCochain<S: Scalar> {
    degree: usize,
    level: usize,
    nerve: Arc<CoverNerve>,
    realization: Realization,
    values: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> PartialEq for DeligneCochain<S> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.level == other.level
            && *self.nerve == *other.nerve
            && self.realization.same_as(&other.realization)
            && self.values == other.values
    }
}

impl<S: Scalar> DeligneCochain<S> {
    pub fn zero(degree: usize, level: usize, nerve: Arc<CoverNerve>, realization: Realization) -> Result<Self> {
        if !(1..=2).contains(&level) {
            return Err(Error::Domain(format!("truncation level must be 1 or 2, got {level}")));
        }
        if let Realization::Geometric(cc) = &realization {
            if cc.num_charts() > nerve.num_indices() {
                return Err(Error::Domain(format!(
                    "complex uses {} charts but the nerve has {} indices",
                    cc.num_charts(),
                    nerve.num_indices()
                )));
            }
        }
        let values = (0..=degree.min(level))
            .map(|k| {
                let len = match &realization {
                    Realization::Pure => 1,
                    Realization::Geometric(cc) => cc.num_simplices(k),
                };
                vec![vec![S::zero(); len]; nerve.num_faces(degree - k)]
            })
            .collect();
        Ok(DeligneCochain { degree, level, nerve, realization, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn nerve(&self) -> &Arc<CoverNerve> {
        &self.nerve
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.realization, Realization::Pure)
    }

    /// Number of components, `min(degree, level) + 1`.
    pub fn num_components(&self) -> usize {
        self.values.len()
    }

    /// Čech degree of component `k`.
    pub fn cech_degree(&self, k: usize) -> usize {
        self.degree - k
    }

    pub fn component(&self, k: usize) -> &[Vec<S>] {
        &self.values[k]
    }

    /// Whether simplex `s` (of dimension `k`) lies in the support of `face`.
    pub fn supports(&self, k: usize, face: &[usize], s: usize) -> bool {
        match &self.realization {
            Realization::Pure => true,
            Realization::Geometric(cc) => cc.in_charts(k, s, face),
        }
    }

    fn check_component(&self, k: usize) -> Result<()> {
        if k >= self.values.len() {
            return Err(Error::Domain(format!(
                "degree-{} level-{} cochain has no component of form degree {k}",
                self.degree, self.level
            )));
        }
        Ok(())
    }

    fn slot(&self, k: usize, s: usize) -> Result<usize> {
        match &self.realization {
            Realization::Pure => Ok(0),
            Realization::Geometric(cc) => {
                if s >= cc.num_simplices(k) {
                    Err(Error::IndexOutOfRange { index: s, max: cc.num_simplices(k).saturating_sub(1) })
                } else {
                    Ok(s)
                }
            }
        }
    }

    /// Value of component `k` on an arbitrary ordered index tuple, extended
    /// alternatingly (U(1) components negate modulo 1). `s` selects the
    /// simplex in geometric mode and is ignored in pure mode.
    pub fn value(&self, k: usize, tuple: &[usize], s: usize) -> Result<S> {
        self.check_component(k)?;
        if tuple.len() != self.cech_degree(k) + 1 {
            return Err(Error::Domain(format!(
                "component {k} is indexed by {} charts, got {}",
                self.cech_degree(k) + 1,
                tuple.len()
            )));
        }
        let slot = self.slot(k, s)?;
        match self.nerve.orient(tuple)? {
            Orientation::Degenerate => Ok(S::zero()),
            Orientation::Face { position, odd } => {
                let face = &self.nerve.faces(self.cech_degree(k))[position];
                if !self.supports(k, face, s) {
                    return Err(Error::Domain(format!(
                        "{k}-simplex {s} is not covered by charts {}",
                        self.nerve.describe(tuple)
                    )));
                }
                let v = &self.values[k][position][slot];
                Ok(if k == 0 { v.signed(odd).frac() } else { v.signed(odd) })
            }
        }
    }

    /// Set component `k` on an ordered tuple (the alternating extension
    /// determines the stored value).
    pub fn set(&mut self, k: usize, tuple: &[usize], s: usize, value: S) -> Result<()> {
        self.check_component(k)?;
        let slot = self.slot(k, s)?;
        match self.nerve.orient(tuple)? {
            Orientation::Degenerate => Err(Error::Domain(format!(
                "cannot assign a value on the degenerate tuple {}",
                self.nerve.describe(tuple)
            ))),
            Orientation::Face { position, odd } => {
                let face = self.nerve.faces(self.cech_degree(k))[position].clone();
                if !self.supports(k, &face, s) {
                    return Err(Error::Domain(format!(
                        "{k}-simplex {s} is not covered by charts {}",
                        self.nerve.describe(tuple)
                    )));
                }
                let v = value.signed(odd);
                self.values[k][position][slot] = if k == 0 { v.frac() } else { v };
                Ok(())
            }
        }
    }

    /// Build from a closure giving the value of component `k` on the sorted
    /// face at `position` and simplex `s`; values off the support are ignored.
    pub fn from_fn(
        degree: usize,
        level: usize,
        nerve: Arc<CoverNerve>,
        realization: Realization,
        mut f: impl FnMut(usize, &[usize], usize) -> S,
    ) -> Result<Self> {
        let mut c = Self::zero(degree, level, nerve, realization)?;
        for k in 0..c.values.len() {
            let faces = c.nerve.faces(c.cech_degree(k)).to_vec();
            for (p, face) in faces.iter().enumerate() {
                for s in 0..c.values[k][p].len() {
                    if c.supports(k, face, s) {
                        let v = f(k, face, s);
                        c.values[k][p][s] = if k == 0 { v.frac() } else { v };
                    }
                }
            }
        }
        Ok(c)
    }

    /// Replace the raw storage of component `k` (validated for shape; U(1)
    /// values are reduced and off-support entries zeroed).
    pub fn set_component(&mut self, k: usize, data: Vec<Vec<S>>) -> Result<()> {
        self.check_component(k)?;
        if data.len() != self.values[k].len() || data.iter().zip(&self.values[k]).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::Domain(format!("component {k} has the wrong shape")));
        }
        self.values[k] = data;
        self.normalize();
        Ok(())
    }

    fn normalize(&mut self) {
        for k in 0..self.values.len() {
            let faces = self.nerve.faces(self.degree - k).to_vec();
            for (p, face) in faces.iter().enumerate() {
                for s in 0..self.values[k][p].len() {
                    if !self.supports(k, face, s) {
                        self.values[k][p][s] = S::zero();
                    } else if k == 0 {
                        self.values[k][p][s] = self.values[k][p][s].frac();
                    }
                }
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.level != other.level {
            return Err(Error::Domain(format!(
                "cannot combine degree {} level {} with degree {} level {}",
                self.degree, self.level, other.degree, other.level
            )));
        }
        if !(Arc::ptr_eq(&self.nerve, &other.nerve) || *self.nerve == *other.nerve) {
            return Err(Error::Domain("cochains live on different nerves".into()));
        }
        if !self.realization.same_as(&other.realization) {
            return Err(Error::Domain("cochains live on different realizations".into()));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, comp) in out.values.iter_mut().enumerate() {
            for (a, b) in comp.iter_mut().zip(&other.values[k]) {
                for (x, y) in a.iter_mut().zip(b) {
                    let v = op(x, y);
                    *x = if k == 0 { v.frac() } else { v };
                }
            }
        }
        Ok(out)
    }

    /// Sum (the tensor product of the corresponding gerbe data).
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, S::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, S::sub)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (k, comp) in out.values.iter_mut().enumerate() {
            for a in comp.iter_mut() {
                for x in a.iter_mut() {
                    *x = if k == 0 { x.neg().frac() } else { x.neg() };
                }
            }
        }
        out
    }

    /// The total differential `D`, landing in degree `degree + 1`:
    /// `(Dc)_k = δ c_k + (-1)^q d c_{k-1}`, with `q` the Čech degree of
    /// `c_{k-1}` and `d` replaced by `dlog` on the U(1) component.
    pub fn differential(&self) -> Self {
        let p = self.degree;
        let mut out = Self::zero(p + 1, self.level, self.nerve.clone(), self.realization.clone())
            .expect("level already validated");
        for k in 0..out.values.len() {
            let cech = p + 1 - k;
            let faces = self.nerve.faces(cech).to_vec();
            for (pos, face) in faces.iter().enumerate() {
                let len = out.values[k][pos].len();
                let mut acc = vec![S::zero(); len];
                if k < self.values.len() {
                    for j in 0..face.len() {
                        let sub: Vec<usize> = face.iter().enumerate().filter(|&(b, _)| b != j).map(|(_, &i)| i).collect();
                        let sp = self.nerve.position(&sub).expect("nerve is closed under subsets");
                        let src = &self.values[k][sp];
                        for (s, a) in acc.iter_mut().enumerate() {
                            *a = if j % 2 == 0 { a.add(&src[s]) } else { a.sub(&src[s]) };
                        }
                    }
                }
                if k >= 1 {
                    if let Realization::Geometric(cc) = &self.realization {
                        let negative = (p + 1 - k) % 2 == 1;
                        let src = &self.values[k - 1][pos];
                        for (s, a) in acc.iter_mut().enumerate() {
                            if !cc.in_charts(k, s, face) {
                                continue;
                            }
                            let t = if k == 1 {
                                let [u, v] = cc.edges()[s];
                                src[v].sub(&src[u]).wrap_half()
                            } else {
                                cc.boundary(k, s).iter().fold(S::zero(), |t, &(f, sg)| {
                                    if sg > 0 {
                                        t.add(&src[f])
                                    } else {
                                        t.sub(&src[f])
                                    }
                                })
                            };
                            *a = a.add(&t.signed(negative));
                        }
                    }
                }
                for (s, a) in acc.iter_mut().enumerate() {
                    if !self.supports(k, face, s) {
                        *a = S::zero();
                    } else if k == 0 {
                        *a = a.frac();
                    }
                }
                out.values[k][pos] = acc;
            }
        }
        out
    }

    /// Largest deviation of `D(self)` from zero: U(1) parts measured to the
    /// nearest integer; form parts against zero in pure mode and to the
    /// nearest integer in geometric mode, where the `dlog` branch choice
    /// leaves integer-valued ambiguities.
    pub fn cocycle_residual(&self) -> f64 {
        self.differential().residual_from_zero()
    }

    /// Max-norm distance from the zero cochain under the same conventions as
    /// [`cocycle_residual`](Self::cocycle_residual).
    pub fn residual_from_zero(&self) -> f64 {
        let pure = self.is_pure();
        let mut worst: f64 = 0.0;
        for (k, comp) in self.values.iter().enumerate() {
            for a in comp {
                for x in a {
                    let v = x.to_f64();
                    let r = if k == 0 || !pure { distance_to_integer(v) } else { v.abs() };
                    worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
                }
            }
        }
        worst
    }

    /// `D(self) = 0` within `tol` (see [`cocycle_residual`](Self::cocycle_residual)).
    pub fn is_cocycle(&self, tol: f64) -> bool {
        self.cocycle_residual() <= tol
    }

    /// Exactly zero in every component (U(1) parts reduced mod 1).
    pub fn is_zero(&self) -> bool {
        self.values.iter().enumerate().all(|(k, comp)| {
            comp.iter().flatten().all(|x| if k == 0 { x.frac().is_zero() } else { x.is_zero() })
        })
    }

    /// Pullback along an index permutation `perm` of the nerve:
    /// `(perm^* c)_I = c_{perm(I)}` with the alternating sign of sorting.
    /// Pure mode only.
    pub fn pullback(&self, perm: &[usize]) -> Result<Self> {
        if !self.is_pure() {
            return Err(Error::Domain("pullback along index maps needs pure-nerve cochains".into()));
        }
        let map = self.nerve.induced_face_map(perm)?;
        let mut out = self.clone();
        for k in 0..self.values.len() {
            let q = self.cech_degree(k);
            for (pos, &(img, odd)) in map.get(q).map_or(&[][..], Vec::as_slice).iter().enumerate() {
                let v = self.values[k][img][0].signed(odd);
                out.values[k][pos][0] = if k == 0 { v.frac() } else { v };
            }
        }
        Ok(out)
    }

    /// Restriction of a cochain on a 3-complex to its boundary surface.
    pub fn restrict_to_boundary(
        &self,
        surface: Arc<CoveredComplex>,
        embedding: &crate::deligne::complex::BoundaryEmbedding,
    ) -> Result<Self> {
        if self.is_pure() {
            return Err(Error::Domain("restriction to a boundary needs a geometric cochain".into()));
        }
        let mut out = Self::zero(self.degree, self.level, self.nerve.clone(), Realization::Geometric(surface))?;
        for k in 0..self.values.len() {
            for (pos, src) in self.values[k].iter().enumerate() {
                let dst = &mut out.values[k][pos];
                match k {
                    0 => {
                        for (i, &v) in embedding.vertices.iter().enumerate() {
                            dst[i] = src[v].clone();
                        }
                    }
                    1 => {
                        for (i, &e) in embedding.edges.iter().enumerate() {
                            dst[i] = src[e].clone();
                        }
                    }
                    _ => {
                        for (i, &(t, sg)) in embedding.triangles.iter().enumerate() {
                            dst[i] = src[t].signed(sg < 0);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Map every value through `f`, changing the scalar type.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DeligneCochain<T> {
        DeligneCochain {
            degree: self.degree,
            level: self.level,
            nerve: self.nerve.clone(),
            realization: self.realization.clone(),
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(k, comp)| {
                    comp.iter()
                        .map(|a| a.iter().map(|x| if k == 0 { f(x).frac() } else { f(x) }).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Same data on an identical realization with orientation reversed
    /// (values on oriented triangles and tetrahedra change sign).
    pub fn on_reversed(&self, reversed: Arc<CoveredComplex>) -> Result<Self> {
        if self.is_pure() {
            return Err(Error::Domain("orientation reversal needs a geometric cochain".into()));
        }
        let mut out = Self::zero(self.degree, self.level, self.nerve.clone(), Realization::Geometric(reversed))?;
        for (k, comp) in self.values.iter().enumerate() {
            for (pos, a) in comp.iter().enumerate() {
                out.values[k][pos] = a.iter().map(|x| x.signed(k >= 2)).collect();
            }
        }
        Ok(out)
    }
}

impl DeligneCochain<Rational> {
    /// Floating-point copy of an exact cochain.
    pub fn to_f64(&self) -> DeligneCochain<f64> {
        self.map_scalars(Scalar::to_f64)
    }
}
