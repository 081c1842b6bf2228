//! Triangulated spheres and balls with vertex positions.

use std::collections::HashMap;

use crate::deligne::CoveredComplex;
use crate::error::Result;

pub type Point = [f64; 3];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: Point, b: Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize(a: Point) -> Point {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// A triangulated unit sphere with outward-oriented triangles.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereMesh {
    pub positions: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
}

impl SphereMesh {
    /// The regular icosahedron (12 vertices, 20 triangles) projected to the unit sphere.
    pub fn icosahedron() -> SphereMesh {
        let p = (1.0 + 5f64.sqrt()) / 2.0;
        let mut positions = Vec::with_capacity(12);
        for s1 in [-1.0, 1.0] {
            for s2 in [-1.0, 1.0] {
                positions.push([0.0, s1, s2 * p]);
                positions.push([s1, s2 * p, 0.0]);
                positions.push([s2 * p, 0.0, s1]);
            }
        }
        let close = |a: usize, b: usize| (dot(sub(positions[a], positions[b]), sub(positions[a], positions[b])) - 4.0).abs() < 1e-9;
        let mut triangles = Vec::with_capacity(20);
        for a in 0..12 {
            for b in a + 1..12 {
                for c in b + 1..12 {
                    if close(a, b) && close(b, c) && close(a, c) {
                        triangles.push([a, b, c]);
                    }
                }
            }
        }
        let mut mesh = SphereMesh { positions: positions.into_iter().map(normalize).collect(), triangles };
        mesh.orient_outward();
        mesh
    }

    /// Icosahedron refined `level` times by 1-to-4 midpoint subdivision.
    pub fn icosphere(level: usize) -> SphereMesh {
        let mut mesh = Self::icosahedron();
        for _ in 0..level {
            mesh = mesh.subdivide();
        }
        mesh
    }

    pub fn subdivide(&self) -> SphereMesh {
        let mut positions = self.positions.clone();
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, positions: &mut Vec<Point>| {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (x, y) = (positions[a], positions[b]);
                positions.push(normalize([x[0] + y[0], x[1] + y[1], x[2] + y[2]]));
                positions.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        for &[a, b, c] in &self.triangles {
            let ab = midpoint(a, b, &mut positions);
            let bc = midpoint(b, c, &mut positions);
            let ca = midpoint(c, a, &mut positions);
            triangles.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        SphereMesh { positions, triangles }
    }

    fn orient_outward(&mut self) {
        for t in &mut self.triangles {
            let [a, b, c] = t.map(|i| self.positions[i]);
            if dot(cross(sub(b, a), sub(c, a)), a) < 0.0 {
                t.swap(1, 2);
            }
        }
    }

    /// Signed volume enclosed, `4π/3` for a fine outward mesh of the unit sphere.
    pub fn enclosed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.positions[i]);
                dot(a, cross(b, c)) / 6.0
            })
            .sum()
    }

    /// Surface complex with closed-vertex-star charts.
    pub fn covered_complex(&self) -> Result<CoveredComplex> {
        CoveredComplex::with_star_charts(self.positions.len(), self.triangles.clone(), Vec::new())
    }
}

/// A solid ball: the cone from the origin over a sphere mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct BallMesh {
    pub positions: Vec<Point>,
    /// Positively oriented tetrahedra `(apex, a, b, c)` for each outward triangle `(a, b, c)`.
    pub tetrahedra: Vec<[usize; 4]>,
}

impl BallMesh {
    pub fn coned(sphere: &SphereMesh) -> BallMesh {
        let apex = sphere.positions.len();
        let mut positions = sphere.positions.clone();
        positions.push([0.0; 3]);
        let tetrahedra = sphere.triangles.iter().map(|&[a, b, c]| [apex, a, b, c]).collect();
        BallMesh { positions, tetrahedra }
    }

    /// Ball with `shells` concentric copies of the sphere at radii `s/shells`,
    /// a cone over the innermost one and each prism between shells cut into
    /// three tetrahedra. Cuts follow the vertex order of the sphere so
    /// neighbouring prisms agree on their shared quadrilaterals.
    pub fn layered(sphere: &SphereMesh, shells: usize) -> BallMesh {
        let shells = shells.max(1);
        let nv = sphere.positions.len();
        let at = |s: usize, i: usize| (s - 1) * nv + i;
        let mut positions = Vec::with_capacity(shells * nv + 1);
        for s in 1..=shells {
            let r = s as f64 / shells as f64;
            positions.extend(sphere.positions.iter().map(|p| p.map(|x| r * x)));
        }
        let center = positions.len();
        positions.push([0.0; 3]);
        let mut tetrahedra = Vec::new();
        for t in &sphere.triangles {
            let mut v = *t;
            v.sort_unstable();
            let [a, b, c] = v;
            tetrahedra.push([center, at(1, a), at(1, b), at(1, c)]);
            for s in 1..shells {
                let [a0, b0, c0] = [a, b, c].map(|i| at(s, i));
                let [a1, b1, c1] = [a, b, c].map(|i| at(s + 1, i));
                tetrahedra.extend([[a0, b0, c0, c1], [a0, b0, b1, c1], [a0, a1, b1, c1]]);
            }
        }
        let mut ball = BallMesh { positions, tetrahedra };
        let vols = ball.signed_volumes();
        for (t, v) in ball.tetrahedra.iter_mut().zip(vols) {
            if v < 0.0 {
                t.swap(0, 1);
            }
        }
        ball
    }

    pub fn signed_volumes(&self) -> Vec<f64> {
        self.tetrahedra
            .iter()
            .map(|t| {
                let [o, a, b, c] = t.map(|i| self.positions[i]);
                dot(sub(a, o), cross(sub(b, o), sub(c, o))) / 6.0
            })
            .collect()
    }

    pub fn covered_complex(&self) -> Result<CoveredComplex> {
        CoveredComplex::with_star_charts(self.positions.len(), Vec::new(), self.tetrahedra.clone())
    }
}
