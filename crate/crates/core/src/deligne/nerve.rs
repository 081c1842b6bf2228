use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::snf::IntMatrix;

/// Abstract nerve of a finite cover: which index subsets have nonempty
/// common intersection. Faces are stored sorted, grouped by dimension
/// (a face with `q + 1` indices has dimension `q`).
#[derive(Clone, Debug, PartialEq)]
pub struct CoverNerve {
    index_set: Vec<String>,
    faces: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

/// Where an unordered index tuple lands among the stored faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Repeated index: alternating cochains vanish there.
    Degenerate,
    /// Position of the sorted face and whether sorting was an odd permutation.
    Face { position: usize, odd: bool },
}

/// Sort a tuple, returning the sign parity of the sorting permutation, or
/// `None` on a repeated entry.
pub fn sort_with_parity(tuple: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = tuple.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

impl CoverNerve {
    /// Nerve generated by `faces`: every subset of a listed face is added.
    /// Subsets larger than `max_dim + 1` indices are dropped when a cap is given.
    pub fn from_faces<I, F>(index_set: Vec<String>, faces: I, max_dim: Option<usize>) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let m = index_set.len();
        if m == 0 {
            return Err(Error::Domain("nerve needs at least one index".into()));
        }
        let distinct: BTreeSet<&String> = index_set.iter().collect();
        if distinct.len() != m {
            return Err(Error::Domain("nerve index labels must be distinct".into()));
        }
        let cap = max_dim.map_or(usize::MAX, |d| d + 1);
        let mut all: BTreeSet<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
        for face in faces {
            let face = face.as_ref();
            let (sorted, _) = sort_with_parity(face)
                .ok_or_else(|| Error::Domain(format!("face {face:?} repeats an index")))?;
            if let Some(&bad) = sorted.iter().find(|&&i| i >= m) {
                return Err(Error::IndexOutOfRange { index: bad, max: m - 1 });
            }
            if cap == usize::MAX && sorted.len() > 24 {
                return Err(Error::Resource(format!("face with {} indices is too large", sorted.len())));
            }
            insert_subsets(&sorted, cap, &mut Vec::new(), 0, &mut all);
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(1);
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for f in all {
            faces[f.len() - 1].push(f);
        }
        let lookup = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        Ok(CoverNerve { index_set, faces, lookup })
    }

    /// Nerve with labels `0..m`.
    pub fn with_indices<I, F>(m: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        Self::from_faces(default_labels(m), faces, None)
    }

    /// Full simplex on `m` indices, optionally capped in dimension.
    pub fn simplex(m: usize, max_dim: Option<usize>) -> Result<Self> {
        Self::from_faces(default_labels(m), [(0..m).collect::<Vec<_>>()], max_dim)
    }

    /// Boundary of the simplex on `m` indices: every proper subset.
    /// With `m = 4` this is the nerve of the four-chart cover of the 2-sphere.
    pub fn simplex_boundary(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain("simplex boundary needs at least two indices".into()));
        }
        let faces: Vec<Vec<usize>> = (0..m).map(|skip| (0..m).filter(|&i| i != skip).collect()).collect();
        Self::from_faces(default_labels(m), faces, None)
    }

    /// The six-vertex triangulation of the real projective plane.
    pub fn projective_plane() -> Self {
        const TRIANGLES: [[usize; 3]; 10] = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [2, 4, 5],
            [1, 3, 5],
        ];
        Self::with_indices(6, TRIANGLES).expect("static data is valid")
    }

    /// Suspension: two new indices, each joined to every face.
    pub fn suspension(&self) -> Result<Self> {
        let m = self.num_indices();
        let mut labels = self.index_set.clone();
        labels.push(format!("n{m}"));
        labels.push(format!("s{m}"));
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for f in self.faces.iter().flatten() {
            for apex in [m, m + 1] {
                let mut g = f.clone();
                g.push(apex);
                faces.push(g);
            }
        }
        Self::from_faces(labels, faces, None)
    }

    pub fn index_set(&self) -> &[String] {
        &self.index_set
    }

    pub fn num_indices(&self) -> usize {
        self.index_set.len()
    }

    /// Largest face dimension present.
    pub fn dimension(&self) -> usize {
        self.faces.len() - 1
    }

    /// Faces of dimension `q` (empty slice beyond the top dimension).
    pub fn faces(&self, q: usize) -> &[Vec<usize>] {
        self.faces.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn num_faces(&self, q: usize) -> usize {
        self.faces(q).len()
    }

    pub fn position(&self, face: &[usize]) -> Option<usize> {
        if face.is_empty() {
            return None;
        }
        self.lookup.get(face.len() - 1)?.get(face).copied()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        match sort_with_parity(face) {
            Some((s, _)) => self.position(&s).is_some(),
            None => false,
        }
    }

    /// Locate an arbitrary ordered tuple of indices.
    pub fn orient(&self, tuple: &[usize]) -> Result<Orientation> {
        match sort_with_parity(tuple) {
            None => Ok(Orientation::Degenerate),
            Some((s, odd)) => self
                .position(&s)
                .map(|position| Orientation::Face { position, odd })
                .ok_or_else(|| Error::Domain(format!("{} is not a face of the nerve", self.describe(tuple)))),
        }
    }

    /// Human-readable face using the index labels.
    pub fn describe(&self, tuple: &[usize]) -> String {
        let parts: Vec<&str> =
            tuple.iter().map(|&i| self.index_set.get(i).map_or("?", String::as_str)).collect();
        format!("({})", parts.join(","))
    }

    /// Integer Čech coboundary `C^q -> C^{q+1}`, rows indexed by `(q+1)`-faces.
    pub fn coboundary_matrix(&self, q: usize) -> IntMatrix {
        let rows = self.faces(q + 1);
        let mut m = IntMatrix::zeros(rows.len(), self.num_faces(q));
        for (r, face) in rows.iter().enumerate() {
            for j in 0..face.len() {
                let sub: Vec<usize> = face.iter().enumerate().filter(|&(b, _)| b != j).map(|(_, &i)| i).collect();
                let c = self.position(&sub).expect("nerve is closed under subsets");
                m.add_to(r, c, if j % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// The map on faces induced by an index permutation, if it preserves
    /// the nerve: for each dimension, the position and sorting parity of `perm(face)`.
    pub fn induced_face_map(&self, perm: &[usize]) -> Result<Vec<Vec<(usize, bool)>>> {
        if perm.len() != self.num_indices() {
            return Err(Error::Domain(format!(
                "permutation has {} entries but the nerve has {} indices",
                perm.len(),
                self.num_indices()
            )));
        }
        let mut out = Vec::with_capacity(self.faces.len());
        for fs in &self.faces {
            let mut level = Vec::with_capacity(fs.len());
            for f in fs {
                let image: Vec<usize> = f.iter().map(|&i| perm[i]).collect();
                match self.orient(&image)? {
                    Orientation::Face { position, odd } => level.push((position, odd)),
                    Orientation::Degenerate => {
                        return Err(Error::Domain(format!("map is not injective on face {}", self.describe(f))))
                    }
                }
            }
            out.push(level);
        }
        Ok(out)
    }
}

fn insert_subsets(face: &[usize], cap: usize, current: &mut Vec<usize>, start: usize, out: &mut BTreeSet<Vec<usize>>) {
    for i in start..face.len() {
        current.push(face[i]);
        out.insert(current.clone());
        if current.len() < cap {
            insert_subsets(face, cap, current, i + 1, out);
        }
        current.pop();
    }
}

pub(crate) fn default_labels(m: usize) -> Vec<String> {
    (0..m).map(|i| i.to_string()).collect()
}
