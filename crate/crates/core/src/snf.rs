//! Smith normal form over the integers and the finitely generated abelian
//! groups it produces.
//!
//! All arithmetic is arbitrary precision. The decomposition is
//! `P * A * Q = D` with `P`, `Q` unimodular and `D` diagonal with
//! `D[0] | D[1] | ...`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix stored row-major as a vector of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged integer matrix");
        IntMatrix { rows: r, cols: c, data: rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i][j] += v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_rational_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + BigRational::from_integer(a.clone()) * b)
            })
            .collect()
    }

    /// Rows `start..` of the matrix as a new matrix.
    pub fn rows_from(&self, start: usize) -> IntMatrix {
        IntMatrix { rows: self.rows - start, cols: self.cols, data: self.data[start..].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// row[dst] += factor * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x += factor * y;
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for row in &mut self.data {
            if !row[src].is_zero() {
                let add = factor * &row[src];
                row[dst] += add;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.data[r] {
            *x = -x.clone();
        }
    }
}

/// Which unimodular transforms to accumulate during a Smith reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct SnfTransforms {
    pub left: bool,
    pub right: bool,
    pub right_inverse: bool,
}

impl SnfTransforms {
    pub const NONE: SnfTransforms = SnfTransforms { left: false, right: false, right_inverse: false };
    pub const ALL: SnfTransforms = SnfTransforms { left: true, right: true, right_inverse: true };
}

#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
    pub right_inverse: Option<IntMatrix>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Elementary divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix, want: SnfTransforms) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut p = want.left.then(|| IntMatrix::identity(m));
    let mut q = want.right.then(|| IntMatrix::identity(n));
    let mut qi = want.right_inverse.then(|| IntMatrix::identity(n));

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else { break };
        if pi != t {
            d.swap_rows(t, pi);
            if let Some(p) = p.as_mut() {
                p.swap_rows(t, pi);
            }
        }
        if pj != t {
            d.swap_cols(t, pj);
            if let Some(q) = q.as_mut() {
                q.swap_cols(t, pj);
            }
            if let Some(qi) = qi.as_mut() {
                qi.swap_rows(t, pj);
            }
        }
        loop {
            let pivot = d.data[t][t].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if d.data[i][t].is_zero() {
                    continue;
                }
                let f = -d.data[i][t].div_floor(&pivot);
                d.row_axpy(i, t, &f);
                if let Some(p) = p.as_mut() {
                    p.row_axpy(i, t, &f);
                }
                dirty |= !d.data[i][t].is_zero();
            }
            for j in t + 1..n {
                if d.data[t][j].is_zero() {
                    continue;
                }
                let f = -d.data[t][j].div_floor(&pivot);
                d.col_axpy(j, t, &f);
                if let Some(q) = q.as_mut() {
                    q.col_axpy(j, t, &f);
                }
                if let Some(qi) = qi.as_mut() {
                    // inverse of (col_j += f col_t) is row_t -= f row_j
                    qi.row_axpy(t, j, &-f.clone());
                }
                dirty |= !d.data[t][j].is_zero();
            }
            if dirty {
                // a smaller remainder appeared in row/column t: move it to the pivot
                let (pi, pj) = min_abs_in_cross(&d, t);
                if pi != t {
                    d.swap_rows(t, pi);
                    if let Some(p) = p.as_mut() {
                        p.swap_rows(t, pi);
                    }
                }
                if pj != t {
                    d.swap_cols(t, pj);
                    if let Some(q) = q.as_mut() {
                        q.swap_cols(t, pj);
                    }
                    if let Some(qi) = qi.as_mut() {
                        qi.swap_rows(t, pj);
                    }
                }
                continue;
            }
            // row and column t are clear; enforce divisibility of the rest
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.data[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.row_axpy(t, i, &one);
                    if let Some(p) = p.as_mut() {
                        p.row_axpy(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            if let Some(p) = p.as_mut() {
                p.negate_row(t);
            }
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| d.data[i][i].clone()).collect();
    Snf { diagonal, rows: m, cols: n, left: p, right: q, right_inverse: qi }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = &d.data[i][j];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|b| a < b.2) {
                let unit = a.is_one();
                best = Some((i, j, a));
                if unit {
                    let b = best.unwrap();
                    return Some((b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn min_abs_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, d.data[t][t].abs());
    for i in t + 1..d.rows {
        let v = &d.data[i][t];
        if !v.is_zero() && v.abs() < best.2 {
            best = (i, t, v.abs());
        }
    }
    for j in t + 1..d.cols {
        let v = &d.data[t][j];
        if !v.is_zero() && v.abs() < best.2 {
            best = (t, j, v.abs());
        }
    }
    (best.0, best.1)
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m`
/// with invariant factors `t_1 | t_2 | ...`, all greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    pub fn torsion_part(&self) -> AbelianGroup {
        AbelianGroup { free_rank: 0, torsion: self.torsion.clone() }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" x "))
    }
}

/// Cohomology `ker(next) / im(prev)` of a pair of composable integer
/// matrices, with the data needed to express any cocycle in the
/// invariant-factor basis.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    pub group: AbelianGroup,
    dim: usize,
    next_rank: usize,
    next_rinv: IntMatrix,
    image_snf: Snf,
}

impl CohomologyPresentation {
    /// `prev: C^{q-1} -> C^q` (dim x m) and `next: C^q -> C^{q+1}` (l x dim).
    pub fn new(prev: &IntMatrix, next: &IntMatrix, dim: usize) -> Self {
        assert_eq!(prev.nrows(), dim);
        assert_eq!(next.ncols(), dim);
        let next_snf = smith_normal_form(next, SnfTransforms { left: false, right: false, right_inverse: true });
        let r = next_snf.rank();
        let rinv = next_snf.right_inverse.clone().unwrap();
        let m = rinv.mul(prev).rows_from(r);
        let image_snf = smith_normal_form(&m, SnfTransforms { left: true, ..SnfTransforms::NONE });
        let group = AbelianGroup { free_rank: dim - r - image_snf.rank(), torsion: image_snf.torsion() };
        CohomologyPresentation { group, dim, next_rank: r, next_rinv: rinv, image_snf }
    }

    /// Coordinates of a cocycle: one residue per torsion factor followed by
    /// one integer per free generator. `None` if `x` is not a cocycle.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.dim);
        let full = self.next_rinv.mul_vec(x);
        if full[..self.next_rank].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let c = &full[self.next_rank..];
        let y = self.image_snf.left.as_ref().unwrap().mul_vec(c);
        let mut coords = Vec::with_capacity(self.group.torsion.len() + self.group.free_rank);
        for (yi, di) in y.iter().zip(&self.image_snf.diagonal) {
            if !di.is_one() {
                coords.push(yi.mod_floor(di));
            }
        }
        coords.extend(y[self.image_snf.rank()..].iter().cloned());
        Some(coords)
    }
}

/// Rational solution `x` of `a x = b` (exact), if one exists.
pub fn solve_rational(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let snf = smith_normal_form(a, SnfTransforms { left: true, right: true, right_inverse: false });
    let y = snf.left.as_ref().unwrap().mul_rational_vec(b);
    let r = snf.rank();
    if y[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(back_substitute(&snf, &y))
}

/// Rational `x` with `a x ≡ b (mod Z^n)`, if one exists.
pub fn solve_mod_integers(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let snf = smith_normal_form(a, SnfTransforms { left: true, right: true, right_inverse: false });
    let y = snf.left.as_ref().unwrap().mul_rational_vec(b);
    let r = snf.rank();
    if y[r..].iter().any(|v| !v.is_integer()) {
        return None;
    }
    Some(back_substitute(&snf, &y))
}

fn back_substitute(snf: &Snf, y: &[BigRational]) -> Vec<BigRational> {
    let mut u = vec![BigRational::zero(); snf.cols];
    for (i, d) in snf.diagonal.iter().enumerate() {
        u[i] = &y[i] / BigRational::from_integer(d.clone());
    }
    snf.right.as_ref().unwrap().mul_rational_vec(&u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(snf: &Snf) -> Vec<i64> {
        snf.diagonal.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn textbook_example() {
        let a = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = smith_normal_form(&a, SnfTransforms::ALL);
        assert_eq!(diag(&snf), vec![2, 6, 12]);
        let p = snf.left.unwrap();
        let q = snf.right.unwrap();
        let d = p.mul(&a).mul(&q);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { snf.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expect);
            }
        }
        assert_eq!(q.mul(&snf.right_inverse.unwrap()), IntMatrix::identity(3));
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zeros(3, 2);
        assert_eq!(smith_normal_form(&z, SnfTransforms::ALL).rank(), 0);
        let e = IntMatrix::zeros(0, 4);
        assert_eq!(smith_normal_form(&e, SnfTransforms::ALL).rank(), 0);
    }

    #[test]
    fn cartan_d4_divisors() {
        let c = IntMatrix::from_i64(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]);
        let snf = smith_normal_form(&c, SnfTransforms::NONE);
        assert_eq!(diag(&snf), vec![1, 1, 2, 2]);
    }

    #[test]
    fn display_groups() {
        let g = AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(2), BigInt::from(2)] };
        assert_eq!(g.to_string(), "Z/2 x Z/2");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup { free_rank: 2, torsion: vec![BigInt::from(3)] }.to_string(), "Z^2 x Z/3");
    }

    #[test]
    fn congruence_solver() {
        // 2x ≡ 1/2 (mod 1) solvable, x ≡ 0 row forces nothing
        let a = IntMatrix::from_i64(&[vec![2], vec![0]]);
        let half = BigRational::new(1.into(), 2.into());
        let sol = solve_mod_integers(&a, &[half.clone(), BigRational::zero()]).unwrap();
        assert!((BigRational::from_integer(2.into()) * &sol[0] - &half).is_integer());
        // second row demands 0 ≡ 1/2
        assert!(solve_mod_integers(&a, &[BigRational::zero(), half.clone()]).is_none());
        assert!(solve_rational(&a, &[half.clone(), BigRational::zero()]).is_some());
        assert!(solve_rational(&a, &[half.clone(), half]).is_none());
    }

    proptest::proptest! {
        #[test]
        fn decomposition_holds(entries in proptest::collection::vec(-6i64..7, 12)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let a = IntMatrix::from_i64(&rows);
            let snf = smith_normal_form(&a, SnfTransforms::ALL);
            let d = snf.left.as_ref().unwrap().mul(&a).mul(snf.right.as_ref().unwrap());
            for i in 0..3 {
                for j in 0..4 {
                    let expect = if i == j && i < snf.rank() { snf.diagonal[i].clone() } else { BigInt::zero() };
                    proptest::prop_assert_eq!(d.get(i, j), &expect);
                }
            }
            for w in snf.diagonal.windows(2) {
                proptest::prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }
}
