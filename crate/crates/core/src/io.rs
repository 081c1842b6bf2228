//! JSON file formats.
//!
//! Rationals are written as `"p/q"` strings, reals as decimal strings and
//! complex matrix entries as `"re,im"` strings with 17 significant digits.
//! Readers also accept plain JSON numbers wherever a scalar is expected.
//! Cochain components are objects keyed by comma-joined sorted face tuples
//! such as `"0,1,2"`, each holding one value (pure mode) or one value per
//! simplex of the form degree (geometric mode).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::deligne::{
    CMatrix, CoverNerve, CoveredComplex, DeligneCochain, GroupActionOnCover, Involution, ModuleData, Realization,
    Scalar,
};
use crate::error::{Error, Result};
use crate::holonomy::mesh::{BallMesh, Point};
use crate::lienum::Quat;
use crate::rootsys::{parse_rational, rational_string, Rational};

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.as_ref().display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Shortest round-trip decimal form of a real.
pub fn real_string(x: f64) -> String {
    format!("{x:?}")
}

/// `"re,im"` with 17 significant digits.
pub fn complex_string(z: Complex64) -> String {
    format!("{:.16e},{:.16e}", z.re, z.im)
}

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse(format!("complex value '{s}' is not \"re,im\"")))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad complex value '{s}'")));
    Ok(Complex64::new(p(a)?, p(b)?))
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("expected a number or numeric string, got {other}"))),
    }
}

/// Scalars that can be read from and written to cochain files.
pub trait FileScalar: Scalar {
    const KIND: ScalarKind;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl FileScalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn to_json(&self) -> Value {
        Value::String(rational_string(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        parse_rational(&scalar_text(v)?)
    }
}

impl FileScalar for f64 {
    const KIND: ScalarKind = ScalarKind::Real;

    fn to_json(&self) -> Value {
        Value::String(real_string(*self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let s = scalar_text(v)?;
        if let Ok(x) = s.trim().parse::<f64>() {
            return Ok(x);
        }
        parse_rational(&s).map(|q| q.to_f64()).map_err(|_| Error::Parse(format!("bad real value '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Real,
}

/// `nerve.json`: index labels plus generating faces (all subsets are implied).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NerveFile {
    pub indices: Vec<String>,
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

impl NerveFile {
    /// Only maximal faces are written.
    pub fn from_nerve(n: &CoverNerve) -> NerveFile {
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for q in (0..=n.dimension()).rev() {
            for f in n.faces(q) {
                let covered = maximal.iter().any(|m| f.iter().all(|i| m.contains(i)));
                if !covered {
                    maximal.push(f.clone());
                }
            }
        }
        maximal.sort();
        NerveFile { indices: n.index_set().to_vec(), faces: maximal, max_dim: None }
    }

    pub fn to_nerve(&self) -> Result<CoverNerve> {
        CoverNerve::from_faces(self.indices.clone(), &self.faces, self.max_dim)
    }
}

/// Chart membership of every simplex, by dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartTable {
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<Vec<usize>>,
    pub triangles: Vec<Vec<usize>>,
    #[serde(default)]
    pub tetrahedra: Vec<Vec<usize>>,
}

/// `complex.json`: oriented simplices (vertex order is the orientation),
/// chart membership, and optional vertex positions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub num_vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default)]
    pub tetrahedra: Vec<[usize; 4]>,
    pub charts: ChartTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Point>>,
}

impl ComplexFile {
    pub fn from_complex(cc: &CoveredComplex, positions: Option<Vec<Point>>) -> ComplexFile {
        ComplexFile {
            num_vertices: cc.num_vertices(),
            edges: cc.edges().to_vec(),
            triangles: cc.triangles().to_vec(),
            tetrahedra: cc.tetrahedra().to_vec(),
            charts: ChartTable {
                vertices: cc.chart_table(0).to_vec(),
                edges: cc.chart_table(1).to_vec(),
                triangles: cc.chart_table(2).to_vec(),
                tetrahedra: cc.chart_table(3).to_vec(),
            },
            positions,
        }
    }

    pub fn to_complex(&self) -> Result<CoveredComplex> {
        let c = &self.charts;
        CoveredComplex::new(
            self.num_vertices,
            self.edges.clone(),
            self.triangles.clone(),
            self.tetrahedra.clone(),
            [c.vertices.clone(), c.edges.clone(), c.triangles.clone(), c.tetrahedra.clone()],
        )
    }

    /// The solid-ball mesh, when positions are present.
    pub fn to_ball(&self) -> Result<BallMesh> {
        let positions = self
            .positions
            .clone()
            .ok_or_else(|| Error::Domain("complex file has no vertex positions".into()))?;
        if positions.len() != self.num_vertices {
            return Err(Error::Domain(format!("{} positions for {} vertices", positions.len(), self.num_vertices)));
        }
        if self.tetrahedra.is_empty() {
            return Err(Error::Domain("complex file has no tetrahedra".into()));
        }
        Ok(BallMesh { positions, tetrahedra: self.tetrahedra.clone() })
    }
}

pub fn face_key(face: &[usize]) -> String {
    face.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn parse_key(key: &str) -> Result<Vec<usize>> {
    key.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad face key '{key}'"))))
        .collect()
}

/// Degree, level and components of a cochain whose nerve is given elsewhere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainBody {
    pub degree: usize,
    pub level: usize,
    pub components: Vec<BTreeMap<String, Vec<Value>>>,
}

impl CochainBody {
    /// Faces with all-zero values are omitted.
    pub fn from_cochain<S: FileScalar>(c: &DeligneCochain<S>) -> CochainBody {
        let components = (0..c.num_components())
            .map(|k| {
                let faces = c.nerve().faces(c.cech_degree(k));
                faces
                    .iter()
                    .zip(c.component(k))
                    .filter(|(_, vals)| vals.iter().any(|v| !v.is_zero()))
                    .map(|(f, vals)| (face_key(f), vals.iter().map(FileScalar::to_json).collect()))
                    .collect()
            })
            .collect();
        CochainBody { degree: c.degree(), level: c.level(), components }
    }

    pub fn to_cochain<S: FileScalar>(&self, nerve: &Arc<CoverNerve>, real: &Realization) -> Result<DeligneCochain<S>> {
        let mut c = DeligneCochain::<S>::zero(self.degree, self.level, nerve.clone(), real.clone())?;
        if self.components.len() > c.num_components() {
            return Err(Error::Domain(format!(
                "degree-{} level-{} cochain has {} components, file lists {}",
                self.degree,
                self.level,
                c.num_components(),
                self.components.len()
            )));
        }
        for (k, comp) in self.components.iter().enumerate() {
            let mut data: Vec<Vec<S>> = c.component(k).to_vec();
            for (key, vals) in comp {
                let face = parse_key(key)?;
                let pos = nerve
                    .position(&face)
                    .filter(|_| face.len() == c.cech_degree(k) + 1 && face.windows(2).all(|w| w[0] < w[1]))
                    .ok_or_else(|| {
                        Error::Domain(format!("component {k}: '{key}' is not a sorted face with {} indices", c.cech_degree(k) + 1))
                    })?;
                if vals.len() != data[pos].len() {
                    return Err(Error::Domain(format!(
                        "component {k} face {key}: {} values, expected {}",
                        vals.len(),
                        data[pos].len()
                    )));
                }
                for (s, v) in vals.iter().enumerate() {
                    let x = S::from_json(v)?;
                    if !x.is_zero() && !c.supports(k, &face, s) {
                        return Err(Error::Domain(format!(
                            "component {k} face {key}: nonzero value on uncovered {k}-simplex {s}"
                        )));
                    }
                    data[pos][s] = x;
                }
            }
            c.set_component(k, data)?;
        }
        Ok(c)
    }
}

/// `cochain.json`: a Deligne cochain with its nerve and, in geometric mode,
/// its complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainFile {
    pub scalar: ScalarKind,
    pub nerve: NerveFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexFile>,
    #[serde(flatten)]
    pub body: CochainBody,
}

/// A cochain read from a file, in its stored scalar type.
#[derive(Clone, Debug)]
pub enum AnyCochain {
    Rational(DeligneCochain<Rational>),
    Real(DeligneCochain<f64>),
}

impl AnyCochain {
    pub fn to_f64(&self) -> DeligneCochain<f64> {
        match self {
            AnyCochain::Rational(c) => c.to_f64(),
            AnyCochain::Real(c) => c.clone(),
        }
    }

    pub fn rational(&self) -> Result<&DeligneCochain<Rational>> {
        match self {
            AnyCochain::Rational(c) => Ok(c),
            AnyCochain::Real(_) => Err(Error::Domain("this operation needs exact rational cochain values".into())),
        }
    }
}

impl CochainFile {
    pub fn from_cochain<S: FileScalar>(c: &DeligneCochain<S>) -> CochainFile {
        CochainFile {
            scalar: S::KIND,
            nerve: NerveFile::from_nerve(c.nerve()),
            complex: c.realization().complex().map(|cc| ComplexFile::from_complex(cc, None)),
            body: CochainBody::from_cochain(c),
        }
    }

    /// Build the nerve and realization. `complex` overrides the embedded one.
    pub fn context(&self, complex: Option<Arc<CoveredComplex>>) -> Result<(Arc<CoverNerve>, Realization)> {
        let nerve = Arc::new(self.nerve.to_nerve()?);
        let real = match (complex, &self.complex) {
            (Some(cc), _) => Realization::Geometric(cc),
            (None, Some(f)) => Realization::Geometric(Arc::new(f.to_complex()?)),
            (None, None) => Realization::Pure,
        };
        Ok((nerve, real))
    }

    pub fn load(&self, complex: Option<Arc<CoveredComplex>>) -> Result<AnyCochain> {
        let (nerve, real) = self.context(complex)?;
        Ok(match self.scalar {
            ScalarKind::Rational => AnyCochain::Rational(self.body.to_cochain(&nerve, &real)?),
            ScalarKind::Real => AnyCochain::Real(self.body.to_cochain(&nerve, &real)?),
        })
    }
}

type MatrixRows = Vec<Vec<String>>;

fn matrix_rows(m: &CMatrix) -> MatrixRows {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| complex_string(m[(i, j)])).collect()).collect()
}

fn parse_matrix(rows: &MatrixRows, n: usize) -> Result<CMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Domain(format!("expected a {n}x{n} matrix")));
    }
    let mut m = CMatrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            m[(i, j)] = parse_complex(s)?;
        }
    }
    Ok(m)
}

/// `bundle.json`: a gerbe cocycle and module data over it. Transitions are
/// keyed by sorted pairs `"i,j"` (one matrix per vertex in geometric mode),
/// connections by chart `"i"` (one matrix per edge); missing keys mean
/// identity transitions and zero connections.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleFile {
    pub cochain: CochainFile,
    pub rank: usize,
    #[serde(default)]
    pub transitions: BTreeMap<String, Vec<MatrixRows>>,
    #[serde(default)]
    pub connections: BTreeMap<String, Vec<MatrixRows>>,
    pub omega: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl BundleFile {
    pub fn from_data(c: &DeligneCochain<f64>, data: &ModuleData) -> BundleFile {
        let nerve = c.nerve();
        let id = CMatrix::identity(data.rank, data.rank);
        let zero = CMatrix::zeros(data.rank, data.rank);
        let transitions = nerve
            .faces(1)
            .iter()
            .zip(&data.transitions)
            .filter(|(_, ms)| ms.iter().any(|m| *m != id))
            .map(|(f, ms)| (face_key(f), ms.iter().map(matrix_rows).collect()))
            .collect();
        let connections = data
            .connections
            .iter()
            .enumerate()
            .filter(|(_, ms)| ms.iter().any(|m| *m != zero))
            .map(|(i, ms)| (i.to_string(), ms.iter().map(matrix_rows).collect()))
            .collect();
        BundleFile {
            cochain: CochainFile::from_cochain(c),
            rank: data.rank,
            transitions,
            connections,
            omega: data.omega.iter().map(FileScalar::to_json).collect(),
            tolerance: None,
        }
    }

    pub fn load(&self) -> Result<(DeligneCochain<f64>, ModuleData)> {
        let c = self.cochain.load(None)?.to_f64();
        let omega = self.omega.iter().map(f64::from_json).collect::<Result<Vec<_>>>()?;
        let mut data = ModuleData::identity(&c, self.rank, omega)?;
        let nerve = c.nerve();
        for (key, mats) in &self.transitions {
            let face = parse_key(key)?;
            let pos = nerve
                .position(&face)
                .filter(|_| face.len() == 2)
                .ok_or_else(|| Error::Domain(format!("transition key '{key}' is not a sorted pair in the nerve")))?;
            if mats.len() != data.transitions[pos].len() {
                return Err(Error::Domain(format!("transition {key}: {} matrices, expected {}", mats.len(), data.transitions[pos].len())));
            }
            data.transitions[pos] = mats.iter().map(|m| parse_matrix(m, self.rank)).collect::<Result<_>>()?;
        }
        for (key, mats) in &self.connections {
            let i: usize = key.trim().parse().map_err(|_| Error::Parse(format!("bad chart key '{key}'")))?;
            if i >= data.connections.len() || mats.len() != data.connections[i].len() {
                return Err(Error::Domain(format!("connection '{key}' does not match the cochain layout")));
            }
            data.connections[i] = mats.iter().map(|m| parse_matrix(m, self.rank)).collect::<Result<_>>()?;
        }
        Ok((c, data))
    }
}

/// Equivariant data: the listed group elements must be closed under
/// composition; `a[i]` and `b[i][j]` refer to positions in `elements`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivariantFile {
    pub scalar: ScalarKind,
    pub nerve: NerveFile,
    pub elements: Vec<Vec<usize>>,
    pub xi: CochainBody,
    pub a: Vec<CochainBody>,
    pub b: Vec<Vec<CochainBody>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Loaded equivariant data, reindexed to the action's element order.
pub struct EquivariantData<S: Scalar> {
    pub action: GroupActionOnCover,
    pub xi: DeligneCochain<S>,
    pub a: Vec<DeligneCochain<S>>,
    pub b: Vec<Vec<DeligneCochain<S>>>,
}

impl EquivariantFile {
    pub fn from_data<S: FileScalar>(
        act: &GroupActionOnCover,
        xi: &DeligneCochain<S>,
        a: &[DeligneCochain<S>],
        b: &[Vec<DeligneCochain<S>>],
    ) -> EquivariantFile {
        EquivariantFile {
            scalar: S::KIND,
            nerve: NerveFile::from_nerve(xi.nerve()),
            elements: (0..act.order()).map(|g| act.element(g).to_vec()).collect(),
            xi: CochainBody::from_cochain(xi),
            a: a.iter().map(CochainBody::from_cochain).collect(),
            b: b.iter().map(|row| row.iter().map(CochainBody::from_cochain).collect()).collect(),
            tolerance: None,
        }
    }

    pub fn load<S: FileScalar>(&self) -> Result<EquivariantData<S>> {
        let nerve = Arc::new(self.nerve.to_nerve()?);
        let real = Realization::Pure;
        let action = GroupActionOnCover::new(nerve.num_indices(), &self.elements)?;
        if action.order() != self.elements.len() {
            return Err(Error::Domain(format!(
                "listed elements generate a group of order {}, but {} are listed",
                action.order(),
                self.elements.len()
            )));
        }
        let map: Vec<usize> = (0..action.order())
            .map(|g| self.elements.iter().position(|e| e == action.element(g)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Domain("group elements are listed more than once".into()))?;
        let n = map.len();
        if self.a.len() != n || self.b.len() != n || self.b.iter().any(|r| r.len() != n) {
            return Err(Error::Domain(format!("a needs {n} entries and b needs {n}x{n} entries")));
        }
        let xi = self.xi.to_cochain(&nerve, &real)?;
        let a = map.iter().map(|&i| self.a[i].to_cochain(&nerve, &real)).collect::<Result<_>>()?;
        let b = map
            .iter()
            .map(|&i| map.iter().map(|&j| self.b[i][j].to_cochain(&nerve, &real)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(EquivariantData { action, xi, a, b })
    }
}

/// Jandl data under an involution of the index set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JandlFile {
    pub scalar: ScalarKind,
    pub nerve: NerveFile,
    pub involution: Vec<usize>,
    pub xi: CochainBody,
    pub a: CochainBody,
    pub phi: CochainBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

pub struct JandlData<S: Scalar> {
    pub involution: Involution,
    pub xi: DeligneCochain<S>,
    pub a: DeligneCochain<S>,
    pub phi: DeligneCochain<S>,
}

impl JandlFile {
    pub fn from_data<S: FileScalar>(
        involution: &Involution,
        xi: &DeligneCochain<S>,
        a: &DeligneCochain<S>,
        phi: &DeligneCochain<S>,
    ) -> JandlFile {
        JandlFile {
            scalar: S::KIND,
            nerve: NerveFile::from_nerve(xi.nerve()),
            involution: involution.perm().to_vec(),
            xi: CochainBody::from_cochain(xi),
            a: CochainBody::from_cochain(a),
            phi: CochainBody::from_cochain(phi),
            tolerance: None,
        }
    }

    pub fn load<S: FileScalar>(&self) -> Result<JandlData<S>> {
        let nerve = Arc::new(self.nerve.to_nerve()?);
        let real = Realization::Pure;
        Ok(JandlData {
            involution: Involution::new(self.involution.clone())?,
            xi: self.xi.to_cochain(&nerve, &real)?,
            a: self.a.to_cochain(&nerve, &real)?,
            phi: self.phi.to_cochain(&nerve, &real)?,
        })
    }
}

/// Per-tetrahedron 3-cochain values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreeFormFile {
    pub values: Vec<Value>,
}

impl ThreeFormFile {
    pub fn load(&self) -> Result<Vec<f64>> {
        self.values.iter().map(f64::from_json).collect()
    }
}

/// A sampled SU(2)-valued map on a ball, as unit quaternions per vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub values: Vec<Quat>,
}
