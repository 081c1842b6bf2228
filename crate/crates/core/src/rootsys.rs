//! Exact root data for the simple Lie types, the fundamental alcove, and the
//! minimal level at which the alcove vertices become weights.
//!
//! Simple roots live in a fixed ambient rational vector space whose inner
//! product is a rational multiple of the Euclidean one, chosen so that long
//! roots have squared length 2 (the basic inner product). Coweights are
//! identified with vectors through that inner product.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RVector = Vec<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn q2(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Result<Family> {
        Ok(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            other => return Err(Error::Domain(format!("unknown Lie family '{other}'"))),
        })
    }
}

/// A simple Lie type such as `E8` or `A2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::Domain(format!("({}, {rank}) is not a simple Lie type", family.letter())))
        }
    }

    /// Every simple type of rank at most `max_rank`, listed once per isomorphism
    /// class label (B2 and C2 are both listed, as are D3 and A3).
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for r in 1..=max_rank {
            for f in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
                if let Ok(t) = CartanType::new(f, r) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty Lie type".into()))?;
        let family = Family::from_letter(letter)?;
        let rank: usize = chars
            .as_str()
            .trim_start_matches(['_', '-'])
            .parse()
            .map_err(|_| Error::Parse(format!("cannot read a rank from '{s}'")))?;
        CartanType::new(family, rank)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub ambient_dim: usize,
    /// The ambient inner product is `ambient_scale` times the Euclidean one.
    pub ambient_scale: Rational,
    pub simple_roots: Vec<RVector>,
    /// `gram[i][j] = <alpha_i, alpha_j>`.
    pub gram: Vec<Vec<Rational>>,
    /// `cartan[i][j] = 2 <alpha_i, alpha_j> / <alpha_j, alpha_j>`.
    pub cartan: Vec<Vec<i64>>,
    /// All roots in ambient coordinates; positive roots first, ordered by height.
    pub roots: Vec<RVector>,
    /// All roots as integer combinations of the simple roots, parallel to `roots`.
    pub root_coords: Vec<Vec<i64>>,
    pub highest_root: RVector,
    pub marks: Vec<u64>,
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v[j] = -1;
    v
}

fn ints(v: &[i64]) -> RVector {
    v.iter().map(|&x| q(x)).collect()
}

/// Standard simple-root coordinates, as (ambient dim, scale, roots).
fn standard_simple_roots(t: CartanType) -> (usize, Rational, Vec<RVector>) {
    let n = t.rank;
    match t.family {
        Family::A => (n + 1, q(1), (0..n).map(|i| ints(&diff(n + 1, i, i + 1))).collect()),
        Family::B => {
            let mut s: Vec<RVector> = (0..n - 1).map(|i| ints(&diff(n, i, i + 1))).collect();
            s.push(ints(&unit(n, n - 1)));
            (n, q(1), s)
        }
        Family::C => {
            let mut s: Vec<RVector> = (0..n - 1).map(|i| ints(&diff(n, i, i + 1))).collect();
            let mut last = vec![0; n];
            last[n - 1] = 2;
            s.push(ints(&last));
            (n, q2(1, 2), s)
        }
        Family::D => {
            let mut s: Vec<RVector> = (0..n - 1).map(|i| ints(&diff(n, i, i + 1))).collect();
            let mut last = vec![0; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            s.push(ints(&last));
            (n, q(1), s)
        }
        Family::E => {
            let half = q2(1, 2);
            let mut a1 = vec![-half.clone(); 8];
            a1[0] = half.clone();
            a1[7] = half;
            let mut s = vec![a1];
            let mut a2 = vec![0; 8];
            a2[0] = 1;
            a2[1] = 1;
            s.push(ints(&a2));
            s.push(ints(&diff(8, 1, 0)));
            for i in 2..7 {
                s.push(ints(&diff(8, i, i - 1)));
            }
            s.truncate(n);
            (8, q(1), s)
        }
        Family::F => {
            let h = q2(1, 2);
            let a4 = vec![h.clone(), -h.clone(), -h.clone(), -h];
            (4, q(1), vec![ints(&diff(4, 1, 2)), ints(&diff(4, 2, 3)), ints(&unit(4, 3)), a4])
        }
        Family::G => (3, q2(1, 3), vec![ints(&[1, -1, 0]), ints(&[-2, 1, 1])]),
    }
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        Self::from_type(CartanType::new(family, rank)?)
    }

    pub fn from_type(t: CartanType) -> Result<RootSystem> {
        let (ambient_dim, ambient_scale, simple_roots) = standard_simple_roots(t);
        Self::from_simple_roots(t, ambient_dim, ambient_scale, simple_roots)
    }

    /// Root system generated by the given simple roots (in any order).
    pub fn from_simple_roots(
        t: CartanType,
        ambient_dim: usize,
        ambient_scale: Rational,
        simple_roots: Vec<RVector>,
    ) -> Result<RootSystem> {
        let r = t.rank;
        if simple_roots.len() != r || simple_roots.iter().any(|a| a.len() != ambient_dim) {
            return Err(Error::Domain(format!("expected {r} simple roots of length {ambient_dim}")));
        }
        let ip = |a: &RVector, b: &RVector| -> Rational {
            a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y) * &ambient_scale
        };
        let gram: Vec<Vec<Rational>> =
            (0..r).map(|i| (0..r).map(|j| ip(&simple_roots[i], &simple_roots[j])).collect()).collect();
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let c = q(2) * &gram[i][j] / &gram[j][j];
                if !c.is_integer() {
                    return Err(Error::Numeric(format!("non-integral Cartan entry for {t}")));
                }
                cartan[i][j] = i64::try_from(c.to_integer()).expect("small Cartan entry");
            }
        }
        let root_coords = enumerate_roots(&cartan);
        let mut positive: Vec<Vec<i64>> = root_coords.iter().filter(|c| c.iter().all(|&x| x >= 0)).cloned().collect();
        positive.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
        let negative: Vec<Vec<i64>> = positive.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
        let root_coords: Vec<Vec<i64>> = positive.iter().chain(negative.iter()).cloned().collect();
        let to_ambient = |c: &[i64]| -> RVector {
            let mut v = vec![Rational::zero(); ambient_dim];
            for (ci, a) in c.iter().zip(&simple_roots) {
                if *ci != 0 {
                    for (vk, ak) in v.iter_mut().zip(a) {
                        *vk += q(*ci) * ak;
                    }
                }
            }
            v
        };
        let roots: Vec<RVector> = root_coords.iter().map(|c| to_ambient(c)).collect();
        let top = positive.last().expect("nonempty root system").clone();
        let marks = top.iter().map(|&x| x as u64).collect();
        let highest_root = to_ambient(&top);
        Ok(RootSystem {
            cartan_type: t,
            ambient_dim,
            ambient_scale,
            simple_roots,
            gram,
            cartan,
            roots,
            root_coords,
            highest_root,
            marks,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y) * &self.ambient_scale
    }

    pub fn norm2(&self, a: &[Rational]) -> Rational {
        self.inner(a, a)
    }

    /// `<v, alpha_j^vee> = 2 <v, alpha_j> / <alpha_j, alpha_j>`.
    pub fn pair_with_simple_coroot(&self, v: &[Rational], j: usize) -> Rational {
        q(2) * self.inner(v, &self.simple_roots[j]) / &self.gram[j][j]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len() / 2
    }

    /// The simple roots expressed as a combination; used to double-check `marks`.
    pub fn combination(&self, coeffs: &[i64]) -> RVector {
        let mut v = vec![Rational::zero(); self.ambient_dim];
        for (c, a) in coeffs.iter().zip(&self.simple_roots) {
            for (vk, ak) in v.iter_mut().zip(a) {
                *vk += q(*c) * ak;
            }
        }
        v
    }

    fn check_dim(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::Domain(format!(
                "vector of length {} does not live in the {}-dimensional ambient space of {}",
                v.len(),
                self.ambient_dim,
                self.cartan_type
            )));
        }
        Ok(())
    }

    /// True iff `<v, alpha^vee>` is an integer for every simple coroot.
    pub fn is_weight(&self, v: &[Rational]) -> Result<bool> {
        self.check_dim(v)?;
        Ok((0..self.rank()).all(|j| self.pair_with_simple_coroot(v, j).is_integer()))
    }

    /// Fundamental coweights: `<omega_i^vee, alpha_j> = delta_ij`.
    pub fn fundamental_coweights(&self) -> Vec<RVector> {
        let inv = invert(&self.gram);
        (0..self.rank())
            .map(|i| {
                let mut v = vec![Rational::zero(); self.ambient_dim];
                for (k, a) in self.simple_roots.iter().enumerate() {
                    for (vk, ak) in v.iter_mut().zip(a) {
                        *vk += &inv[i][k] * ak;
                    }
                }
                v
            })
            .collect()
    }

    /// Determinant of the Cartan matrix.
    pub fn cartan_determinant(&self) -> BigInt {
        let m: Vec<Vec<Rational>> = self.cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        determinant(&m).to_integer()
    }
}

/// Closure of the simple roots under the simple reflections, in simple-root coordinates.
fn enumerate_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let s = unit(r, i);
        seen.insert(s.clone());
        queue.push_back(s);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            // <beta, alpha_i^vee> = sum_j beta_j c_ji
            let p: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
            if p == 0 {
                continue;
            }
            let mut img = beta.clone();
            img[i] -= p;
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

pub(crate) fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero()).expect("singular matrix");
        a.swap(c, piv);
        let p = a[c][c].clone();
        for x in &mut a[c] {
            *x /= &p;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub(crate) fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = q(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rational::zero() };
        if piv != c {
            a.swap(c, piv);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            let pivot_row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Fundamental alcove vertices `mu_0 = 0`, `mu_i = omega_i^vee / a_i`.
#[derive(Clone, Debug)]
pub struct Alcove<'a> {
    pub root_system: &'a RootSystem,
    pub vertices: Vec<RVector>,
}

pub fn alcove(rs: &RootSystem) -> Alcove<'_> {
    let mut vertices = vec![vec![Rational::zero(); rs.ambient_dim]];
    for (w, a) in rs.fundamental_coweights().into_iter().zip(&rs.marks) {
        let a = q(*a as i64);
        vertices.push(w.into_iter().map(|x| x / &a).collect());
    }
    Alcove { root_system: rs, vertices }
}

impl<'a> Alcove<'a> {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `mu_ij = mu_j - mu_i`.
    pub fn mu_ij(&self, i: usize, j: usize) -> Result<RVector> {
        let max = self.vertices.len() - 1;
        for idx in [i, j] {
            if idx > max {
                return Err(Error::IndexOutOfRange { index: idx, max });
            }
        }
        Ok(self.vertices[j].iter().zip(&self.vertices[i]).map(|(a, b)| a - b).collect())
    }

    /// Value of the root `alpha` (ambient vector) on the point `xi`.
    pub fn evaluate(&self, alpha: &[Rational], xi: &[Rational]) -> Rational {
        self.root_system.inner(alpha, xi)
    }

    /// Exact barycenter of the face spanned by the vertices in `face`.
    pub fn barycenter(&self, face: &BTreeSet<usize>) -> Result<RVector> {
        if face.is_empty() {
            return Err(Error::Domain("face index set must be nonempty".into()));
        }
        let max = self.vertices.len() - 1;
        let mut c = vec![Rational::zero(); self.root_system.ambient_dim];
        for &i in face {
            if i > max {
                return Err(Error::IndexOutOfRange { index: i, max });
            }
            for (ck, vk) in c.iter_mut().zip(&self.vertices[i]) {
                *ck += vk;
            }
        }
        let n = q(face.len() as i64);
        Ok(c.into_iter().map(|x| x / &n).collect())
    }

    /// Roots taking integer values on the open face spanned by `face`.
    pub fn face_centralizer(&self, face: &BTreeSet<usize>) -> Result<RootSubsystem> {
        let xi = self.barycenter(face)?;
        let roots = self
            .root_system
            .roots
            .iter()
            .enumerate()
            .filter(|(_, a)| self.evaluate(a, &xi).is_integer())
            .map(|(i, _)| i)
            .collect();
        Ok(RootSubsystem { roots })
    }
}

/// A subset of the parent's roots (indices into `RootSystem::roots`), closed under negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSubsystem {
    pub roots: BTreeSet<usize>,
}

impl RootSubsystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_subset(&self, other: &RootSubsystem) -> bool {
        self.roots.is_subset(&other.roots)
    }

    pub fn is_closed_under_negation(&self, rs: &RootSystem) -> bool {
        let half = rs.num_positive_roots();
        self.roots.iter().all(|&i| {
            let neg = if i < half { i + half } else { i - half };
            self.roots.contains(&neg)
        })
    }
}

/// Least `k >= 1` such that `k mu_i` is a weight for every alcove vertex.
pub fn minimal_level_k0(rs: &RootSystem) -> u64 {
    let alc = alcove(rs);
    let mut l = BigInt::one();
    for v in &alc.vertices[1..] {
        for j in 0..rs.rank() {
            let p = rs.pair_with_simple_coroot(v, j);
            l = l.lcm(p.denom());
        }
    }
    u64::try_from(l).expect("k0 fits in u64")
}

/// Serialize an exact rational as `"p/q"` (or `"p"` for integers).
pub fn rational_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in '{s}'")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in '{s}'")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(s)
}

/// Exact value of a decimal literal such as `-0.125` or `3e-2`.
fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("cannot read '{s}' as a rational"));
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut x = Rational::from_integer(n);
    if shift >= 0 {
        x *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        x /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -x } else { x })
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
