use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::deligne::nerve::{sort_with_parity, CoverNerve};
use crate::error::{Error, Result};

/// An oriented simplicial complex of dimension 2 or 3 with, for every
/// simplex, the sorted list of chart indices whose chart contains it.
///
/// Edges are stored with their endpoints in the given order; triangles and
/// tetrahedra carry an orientation through the order of their vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveredComplex {
    num_vertices: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    tetrahedra: Vec<[usize; 4]>,
    charts: [Vec<Vec<usize>>; 4],
    num_charts: usize,
    /// `boundary[k][s]`: facets of the `k`-simplex `s` with incidence sign.
    boundary: [Vec<Vec<(usize, i8)>>; 4],
}

/// How a boundary surface sits inside its 3-complex.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryEmbedding {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Parent triangle and the sign relating the induced orientation to the stored one.
    pub triangles: Vec<(usize, i8)>,
}

fn simplex_key(s: &[usize]) -> Vec<usize> {
    let mut k = s.to_vec();
    k.sort_unstable();
    k
}

impl CoveredComplex {
    /// Build from explicit simplices and per-simplex chart lists, validating
    /// every structural invariant.
    pub fn new(
        num_vertices: usize,
        edges: Vec<[usize; 2]>,
        triangles: Vec<[usize; 3]>,
        tetrahedra: Vec<[usize; 4]>,
        charts: [Vec<Vec<usize>>; 4],
    ) -> Result<Self> {
        let mut edge_index: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                if v >= num_vertices {
                    return Err(Error::Domain(format!("edge {i} uses unknown vertex {v}")));
                }
            }
            if e[0] == e[1] || edge_index.insert(simplex_key(e), i).is_some() {
                return Err(Error::Domain(format!("edge {i} is degenerate or repeated")));
            }
        }
        let mut tri_index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut tri_boundary = Vec::with_capacity(triangles.len());
        for (i, t) in triangles.iter().enumerate() {
            if sort_with_parity(t).is_none() || tri_index.insert(simplex_key(t), i).is_some() {
                return Err(Error::Domain(format!("triangle {i} is degenerate or repeated")));
            }
            let mut facets = Vec::with_capacity(3);
            for j in 0..3 {
                let (a, b) = ((t[(j + 1) % 3]), t[(j + 2) % 3]);
                let e = *edge_index
                    .get(&simplex_key(&[a, b]))
                    .ok_or_else(|| Error::Domain(format!("triangle {i} has missing edge ({a},{b})")))?;
                let sign = if edges[e] == [a, b] { 1 } else { -1 };
                facets.push((e, sign));
            }
            tri_boundary.push(facets);
        }
        let mut tet_boundary = Vec::with_capacity(tetrahedra.len());
        for (i, t) in tetrahedra.iter().enumerate() {
            if sort_with_parity(t).is_none() {
                return Err(Error::Domain(format!("tetrahedron {i} is degenerate")));
            }
            let mut facets = Vec::with_capacity(4);
            for j in 0..4 {
                let face: Vec<usize> = (0..4).filter(|&b| b != j).map(|b| t[b]).collect();
                let f = *tri_index
                    .get(&simplex_key(&face))
                    .ok_or_else(|| Error::Domain(format!("tetrahedron {i} has missing face {face:?}")))?;
                let sign = alternating_sign(j) * relative_orientation(&face, &triangles[f]);
                facets.push((f, sign));
            }
            tet_boundary.push(facets);
        }
        let edge_boundary = edges.iter().map(|e| vec![(e[0], -1), (e[1], 1)]).collect();
        let counts = [num_vertices, edges.len(), triangles.len(), tetrahedra.len()];
        let mut num_charts = 0;
        for (k, count) in counts.iter().enumerate() {
            if charts[k].len() != *count {
                return Err(Error::Domain(format!(
                    "chart table for dimension {k} has {} rows, expected {count}",
                    charts[k].len()
                )));
            }
            for (s, list) in charts[k].iter().enumerate() {
                if list.is_empty() {
                    return Err(Error::Domain(format!("{k}-simplex {s} lies in no chart")));
                }
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Domain(format!("charts of {k}-simplex {s} must be strictly increasing")));
                }
                num_charts = num_charts.max(list[list.len() - 1] + 1);
            }
        }
        let cc = CoveredComplex {
            num_vertices,
            edges,
            triangles,
            tetrahedra,
            charts,
            num_charts,
            boundary: [vec![Vec::new(); num_vertices], edge_boundary, tri_boundary, tet_boundary],
        };
        cc.check_monotone()?;
        cc.check_boundary_squared()?;
        Ok(cc)
    }

    /// Build from top simplices (edges and triangles derived from them) with
    /// charts given by closed vertex stars: a top simplex belongs to chart `w`
    /// exactly when `w` is one of its vertices, and lower simplices inherit the
    /// union over their cofaces.
    pub fn with_star_charts(num_vertices: usize, triangles: Vec<[usize; 3]>, tetrahedra: Vec<[usize; 4]>) -> Result<Self> {
        let (cc, _) = Self::skeleton(num_vertices, triangles, tetrahedra)?;
        let mut charts: [Vec<BTreeSet<usize>>; 4] = [
            vec![BTreeSet::new(); cc.num_vertices],
            vec![BTreeSet::new(); cc.edges.len()],
            vec![BTreeSet::new(); cc.triangles.len()],
            vec![BTreeSet::new(); cc.tetrahedra.len()],
        ];
        let top = if cc.tetrahedra.is_empty() { 2 } else { 3 };
        for s in 0..cc.num_simplices(top) {
            charts[top][s] = cc.vertices_of(top, s).into_iter().collect();
        }
        for k in (0..top).rev() {
            for s in 0..cc.num_simplices(k + 1) {
                let up = charts[k + 1][s].clone();
                for &(f, _) in &cc.boundary[k + 1][s] {
                    charts[k][f].extend(up.iter().copied());
                }
            }
            for s in 0..cc.num_simplices(k) {
                if charts[k][s].is_empty() {
                    charts[k][s] = cc.vertices_of(k, s).into_iter().collect();
                }
            }
        }
        let charts = charts.map(|level| level.into_iter().map(|s| s.into_iter().collect()).collect());
        Self::new(cc.num_vertices, cc.edges, cc.triangles, cc.tetrahedra, charts)
    }

    /// Every simplex in the single chart 0.
    pub fn with_single_chart(num_vertices: usize, triangles: Vec<[usize; 3]>, tetrahedra: Vec<[usize; 4]>) -> Result<Self> {
        let (cc, counts) = Self::skeleton(num_vertices, triangles, tetrahedra)?;
        let charts = counts.map(|n| vec![vec![0]; n]);
        Self::new(cc.num_vertices, cc.edges, cc.triangles, cc.tetrahedra, charts)
    }

    fn skeleton(num_vertices: usize, mut triangles: Vec<[usize; 3]>, tetrahedra: Vec<[usize; 4]>) -> Result<(Self, [usize; 4])> {
        let mut seen: BTreeMap<Vec<usize>, usize> =
            triangles.iter().enumerate().map(|(i, t)| (simplex_key(t), i)).collect();
        for t in &tetrahedra {
            for j in 0..4 {
                let face: Vec<usize> = (0..4).filter(|&b| b != j).map(|b| t[b]).collect();
                let key = simplex_key(&face);
                if !seen.contains_key(&key) {
                    seen.insert(key.clone(), triangles.len());
                    triangles.push([key[0], key[1], key[2]]);
                }
            }
        }
        let mut edge_set: BTreeSet<[usize; 2]> = BTreeSet::new();
        for t in &triangles {
            for j in 0..3 {
                let (a, b) = (t[j], t[(j + 1) % 3]);
                edge_set.insert([a.min(b), a.max(b)]);
            }
        }
        let edges: Vec<[usize; 2]> = edge_set.into_iter().collect();
        let counts = [num_vertices, edges.len(), triangles.len(), tetrahedra.len()];
        let charts = counts.map(|n| vec![vec![0]; n]);
        let cc = Self::new(num_vertices, edges, triangles, tetrahedra, charts)?;
        Ok((cc, counts))
    }

    fn check_monotone(&self) -> Result<()> {
        for k in 1..4 {
            for s in 0..self.num_simplices(k) {
                for &(f, _) in &self.boundary[k][s] {
                    if !is_subset(&self.charts[k][s], &self.charts[k - 1][f]) {
                        return Err(Error::Domain(format!(
                            "charts of {k}-simplex {s} are not contained in those of its face {f}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_boundary_squared(&self) -> Result<()> {
        for k in 2..4 {
            for s in 0..self.num_simplices(k) {
                let mut acc: HashMap<usize, i32> = HashMap::new();
                for &(f, a) in &self.boundary[k][s] {
                    for &(g, b) in &self.boundary[k - 1][f] {
                        *acc.entry(g).or_default() += (a * b) as i32;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(Error::Domain(format!("boundary of boundary of {k}-simplex {s} is nonzero")));
                }
            }
        }
        Ok(())
    }

    /// 3 if there are tetrahedra, otherwise 2 (or lower for degenerate inputs).
    pub fn dimension(&self) -> usize {
        if !self.tetrahedra.is_empty() {
            3
        } else if !self.triangles.is_empty() {
            2
        } else if !self.edges.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        match k {
            0 => self.num_vertices,
            1 => self.edges.len(),
            2 => self.triangles.len(),
            3 => self.tetrahedra.len(),
            _ => 0,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_charts(&self) -> usize {
        self.num_charts
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn tetrahedra(&self) -> &[[usize; 4]] {
        &self.tetrahedra
    }

    /// Vertices of a simplex in stored order.
    pub fn vertices_of(&self, k: usize, s: usize) -> Vec<usize> {
        match k {
            0 => vec![s],
            1 => self.edges[s].to_vec(),
            2 => self.triangles[s].to_vec(),
            3 => self.tetrahedra[s].to_vec(),
            _ => Vec::new(),
        }
    }

    pub fn charts(&self, k: usize, s: usize) -> &[usize] {
        &self.charts[k][s]
    }

    pub fn chart_table(&self, k: usize) -> &[Vec<usize>] {
        &self.charts[k]
    }

    /// Whether simplex `s` lies in the intersection of the charts in `face` (sorted).
    pub fn in_charts(&self, k: usize, s: usize, face: &[usize]) -> bool {
        is_subset(face, &self.charts[k][s])
    }

    /// Facets of a `k`-simplex with incidence signs.
    pub fn boundary(&self, k: usize, s: usize) -> &[(usize, i8)] {
        &self.boundary[k][s]
    }

    /// Apply the simplicial coboundary to a `k`-cochain given on all `k`-simplices.
    pub fn coboundary_f64(&self, k: usize, values: &[f64]) -> Vec<f64> {
        (0..self.num_simplices(k + 1))
            .map(|s| self.boundary[k + 1][s].iter().map(|&(f, sg)| sg as f64 * values[f]).sum())
            .collect()
    }

    pub fn edge_position(&self, a: usize, b: usize) -> Option<(usize, i8)> {
        self.edges.iter().position(|e| simplex_key(e) == simplex_key(&[a, b])).map(|i| {
            if self.edges[i] == [a, b] {
                (i, 1)
            } else {
                (i, -1)
            }
        })
    }

    /// Nerve whose faces are all chart subsets (up to `max_dim + 1` indices)
    /// shared by some simplex.
    pub fn nerve(&self, max_dim: usize) -> Result<CoverNerve> {
        let labels = crate::deligne::nerve::default_labels(self.num_charts.max(1));
        let faces = (0..4).flat_map(|k| self.charts[k].iter().cloned());
        CoverNerve::from_faces(labels, faces, Some(max_dim))
    }

    /// Triangles of the 3-complex lying on exactly one tetrahedron, as a closed
    /// surface oriented by the induced (outward) orientation.
    pub fn boundary_surface(&self) -> Result<(CoveredComplex, BoundaryEmbedding)> {
        if self.tetrahedra.is_empty() {
            return Err(Error::Domain("boundary surface requires tetrahedra".into()));
        }
        let mut incidence: Vec<(usize, i8)> = vec![(0, 0); self.triangles.len()];
        for facets in &self.boundary[3] {
            for &(f, sg) in facets {
                incidence[f].0 += 1;
                incidence[f].1 = sg;
            }
        }
        let tris: Vec<(usize, i8)> =
            incidence.iter().enumerate().filter(|(_, &(n, _))| n == 1).map(|(i, &(_, sg))| (i, sg)).collect();
        let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut emap: BTreeMap<usize, usize> = BTreeMap::new();
        for &(t, _) in &tris {
            for &v in &self.triangles[t] {
                let n = vmap.len();
                vmap.entry(v).or_insert(n);
            }
            for &(e, _) in &self.boundary[2][t] {
                let n = emap.len();
                emap.entry(e).or_insert(n);
            }
        }
        let mut vertices = vec![0; vmap.len()];
        for (&old, &new) in &vmap {
            vertices[new] = old;
        }
        let mut edge_parents = vec![0; emap.len()];
        for (&old, &new) in &emap {
            edge_parents[new] = old;
        }
        let edges: Vec<[usize; 2]> = edge_parents.iter().map(|&e| self.edges[e].map(|v| vmap[&v])).collect();
        let triangles: Vec<[usize; 3]> = tris
            .iter()
            .map(|&(t, sg)| {
                let [a, b, c] = self.triangles[t].map(|v| vmap[&v]);
                if sg > 0 {
                    [a, b, c]
                } else {
                    [b, a, c]
                }
            })
            .collect();
        let charts = [
            vertices.iter().map(|&v| self.charts[0][v].clone()).collect(),
            edge_parents.iter().map(|&e| self.charts[1][e].clone()).collect(),
            tris.iter().map(|&(t, _)| self.charts[2][t].clone()).collect(),
            Vec::new(),
        ];
        let surface = CoveredComplex::new(vertices.len(), edges, triangles, Vec::new(), charts)?;
        Ok((surface, BoundaryEmbedding { vertices, edges: edge_parents, triangles: tris }))
    }

    /// Same complex with every triangle and tetrahedron orientation reversed.
    pub fn reversed(&self) -> Result<CoveredComplex> {
        let triangles = self.triangles.iter().map(|&[a, b, c]| [b, a, c]).collect();
        let tetrahedra = self.tetrahedra.iter().map(|&[a, b, c, d]| [b, a, c, d]).collect();
        CoveredComplex::new(self.num_vertices, self.edges.clone(), triangles, tetrahedra, self.charts.clone())
    }

    /// For each vertex of a closed oriented surface, its incident triangles in
    /// fan order: consecutive triangles `(v, w_k, w_{k+1})`, `(v, w_{k+1}, w_{k+2})`
    /// share the edge `{v, w_{k+1}}`, starting from the lowest-index triangle.
    pub fn vertex_fans(&self) -> Result<Vec<Vec<usize>>> {
        if self.dimension() != 2 {
            return Err(Error::Domain("vertex fans require a 2-dimensional complex".into()));
        }
        let mut around: Vec<BTreeMap<usize, (usize, usize)>> = vec![BTreeMap::new(); self.num_vertices];
        for (ti, t) in self.triangles.iter().enumerate() {
            for j in 0..3 {
                let (v, w1, w2) = (t[j], t[(j + 1) % 3], t[(j + 2) % 3]);
                if around[v].insert(w1, (w2, ti)).is_some() {
                    return Err(Error::Domain(format!("surface is not consistently oriented at vertex {v}")));
                }
            }
        }
        let mut fans = Vec::with_capacity(self.num_vertices);
        for (v, links) in around.iter().enumerate() {
            if links.is_empty() {
                return Err(Error::Domain(format!("vertex {v} has no incident triangle")));
            }
            let (&start_w, &(_, _)) = links.iter().min_by_key(|(_, &(_, t))| t).unwrap();
            let mut fan = Vec::with_capacity(links.len());
            let mut w = start_w;
            loop {
                let &(next, t) = links
                    .get(&w)
                    .ok_or_else(|| Error::Domain(format!("surface is not closed around vertex {v}")))?;
                fan.push(t);
                w = next;
                if w == start_w {
                    break;
                }
                if fan.len() > links.len() {
                    return Err(Error::Domain(format!("link of vertex {v} is not a single cycle")));
                }
            }
            if fan.len() != links.len() {
                return Err(Error::Domain(format!("link of vertex {v} is not a single cycle")));
            }
            fans.push(fan);
        }
        Ok(fans)
    }

    /// The two triangles on each edge of a closed surface, as
    /// `(t, t')` with the edge oriented as in the boundary of `t`.
    pub fn edge_triangles(&self) -> Result<Vec<[(usize, i8); 2]>> {
        let mut acc: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.edges.len()];
        for (t, facets) in self.boundary[2].iter().enumerate() {
            for &(e, sg) in facets {
                acc[e].push((t, sg));
            }
        }
        acc.into_iter()
            .enumerate()
            .map(|(e, v)| match v.as_slice() {
                [a, b] if a.1 == -b.1 => Ok([*a, *b]),
                _ => Err(Error::Domain(format!("edge {e} is not shared by exactly two compatibly oriented triangles"))),
            })
            .collect()
    }
}

fn alternating_sign(j: usize) -> i8 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// +1 if `a` and `b` list the same vertices in orders differing by an even permutation.
fn relative_orientation(a: &[usize], b: &[usize]) -> i8 {
    let pos: Vec<usize> = a.iter().map(|x| b.iter().position(|y| y == x).unwrap()).collect();
    match sort_with_parity(&pos) {
        Some((_, false)) => 1,
        _ => -1,
    }
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}
