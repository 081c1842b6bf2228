//! Cohomology of finite abelian groups with trivial U(1) coefficients.
//!
//! For a finite group `Z` the exponential sequence gives
//! `H^n(Z; U(1)) ≅ H^{n+1}(Z; Z)` for `n >= 1`, and the latter is the torsion
//! of the cokernel of the single normalized bar coboundary
//! `δ_n: C^n -> C^{n+1}` (the cokernel modulo `H^{n+1}` embeds in the free
//! group `C^{n+2}`). So only one matrix is reduced. Most of its entries are
//! `±1`, which are eliminated sparsely before a dense Smith form of what is
//! left.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rustc_hash::FxHashSet as HashSet;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, Family, RootSystem};
use crate::snf::{smith_normal_form, AbelianGroup, IntMatrix, SnfTransforms};

/// `Z/d_1 x ... x Z/d_m`; the empty product is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::Domain(format!("cyclic factor orders must be at least 2, got {d}")));
        }
        let mut total: u64 = 1;
        for &d in &orders {
            total = total
                .checked_mul(d)
                .filter(|&t| t <= u32::MAX as u64)
                .ok_or_else(|| Error::Resource("group order does not fit in 32 bits".into()))?;
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(d: u64) -> Result<Self> {
        Self::new(vec![d])
    }

    /// Parse a comma-separated list of orders such as `"2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::trivial());
        }
        let orders = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad cyclic order '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    /// The finite group with the torsion invariants of `g`.
    pub fn from_invariants(g: &AbelianGroup) -> Result<Self> {
        if g.free_rank != 0 {
            return Err(Error::Domain(format!("{g} is infinite")));
        }
        let orders = g
            .torsion
            .iter()
            .map(|t| t.to_u64().ok_or_else(|| Error::Resource(format!("cyclic order {t} too large"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Mixed-radix index of a residue tuple, first factor least significant.
    pub fn encode(&self, residues: &[u64]) -> Result<usize> {
        if residues.len() != self.orders.len() {
            return Err(Error::Domain(format!("expected {} residues, got {}", self.orders.len(), residues.len())));
        }
        let mut idx = 0u64;
        for (&r, &d) in residues.iter().zip(&self.orders).rev() {
            idx = idx * d + r % d;
        }
        Ok(idx as usize)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let r = idx as u64 % d;
                idx /= d as usize;
                r
            })
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), d)| (x + y) % d).collect()
    }

    /// Group law on indices; index 0 is the identity.
    fn table(&self) -> Vec<Vec<usize>> {
        let g = self.order() as usize;
        let elems: Vec<Vec<u64>> = (0..g).map(|i| self.decode(i)).collect();
        elems
            .iter()
            .map(|a| elems.iter().map(|b| self.encode(&self.add(a, b)).expect("same shape")).collect())
            .collect()
    }

    /// Canonical invariant-factor form.
    pub fn invariants(&self) -> AbelianGroup {
        let n = self.orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &d) in self.orders.iter().enumerate() {
            m.set(i, i, BigInt::from(d));
        }
        AbelianGroup { free_rank: 0, torsion: smith_normal_form(&m, SnfTransforms::NONE).torsion() }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Size limit for the bar coboundary: its row count `(|Z|-1)^(n+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_rows: usize,
}

impl Default for Budget {
    /// Covers every group of order 16 in degree 3 and order 36 in degree 2.
    fn default() -> Self {
        Budget { max_rows: 65_536 }
    }
}

/// Matrix dimensions of `δ_n` for a group of order `g`, or `None` on overflow.
pub fn coboundary_shape(g: u64, n: usize) -> Option<(usize, usize)> {
    let base = (g.max(1) - 1) as usize;
    let pow = |e: u32| base.checked_pow(e);
    Some((pow(n as u32 + 1)?, pow(n as u32)?))
}

type SparseRow = Vec<(u32, i64)>;

/// Rows of the normalized bar coboundary `δ_n`, sparse, sorted by column.
fn bar_coboundary(group: &FiniteAbelianGroup, n: usize) -> Vec<SparseRow> {
    let g = group.order() as usize;
    if g < 2 {
        return Vec::new();
    }
    let mul = group.table();
    let base = g - 1;
    let (rows, _) = coboundary_shape(g as u64, n).expect("checked by caller");
    let col = |args: &mut dyn Iterator<Item = usize>| -> usize { args.fold(0, |acc, x| acc * base + (x - 1)) };
    let mut tuple = vec![1usize; n + 1];
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut rem = r;
        for slot in tuple.iter_mut().rev() {
            *slot = rem % base + 1;
            rem /= base;
        }
        let mut acc: HashMap<u32, i64> = HashMap::new();
        *acc.entry(col(&mut tuple[1..].iter().copied()) as u32).or_default() += 1;
        for i in 0..n {
            let p = mul[tuple[i]][tuple[i + 1]];
            if p == 0 {
                continue;
            }
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            let mut it = tuple[..i].iter().copied().chain(std::iter::once(p)).chain(tuple[i + 2..].iter().copied());
            *acc.entry(col(&mut it) as u32).or_default() += sign;
        }
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
        *acc.entry(col(&mut tuple[..n].iter().copied()) as u32).or_default() += sign;
        let mut row: SparseRow = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        row.sort_unstable();
        out.push(row);
    }
    out
}

/// `a - f * b` on sparse rows, with the columns that appeared and vanished.
fn axpy(a: &SparseRow, f: i64, b: &SparseRow) -> Result<(SparseRow, Vec<u32>, Vec<u32>)> {
    let overflow = || Error::Numeric("entry overflow during sparse elimination".into());
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut added, mut removed) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = b[j].1.checked_mul(-f).ok_or_else(overflow)?;
            out.push((b[j].0, v));
            added.push(b[j].0);
            j += 1;
        } else {
            let v = b[j].1.checked_mul(f).and_then(|x| a[i].1.checked_sub(x)).ok_or_else(overflow)?;
            if v != 0 {
                out.push((a[i].0, v));
            } else {
                removed.push(a[i].0);
            }
            i += 1;
            j += 1;
        }
    }
    Ok((out, added, removed))
}

/// Invariant factors greater than one of a sparse integer matrix.
///
/// Unit pivots are eliminated first, each contributing a factor 1 to the
/// Smith form. The next pivot column is always the live column in the
/// fewest rows, which keeps fill-in low on bar complexes. What is left is
/// compacted to echelon form and finished with the dense Smith form.
pub(crate) fn sparse_torsion(mut rows: Vec<SparseRow>, ncols: usize) -> Result<Vec<BigInt>> {
    let mut col_rows: Vec<HashSet<u32>> = vec![HashSet::default(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].insert(r as u32);
        }
    }
    let mut alive = vec![true; ncols];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..ncols).filter(|&c| !col_rows[c].is_empty()).map(|c| Reverse((col_rows[c].len(), c))).collect();
    let mut touched: HashSet<usize> = HashSet::default();
    while let Some(Reverse((count, c))) = heap.pop() {
        if !alive[c] || count != col_rows[c].len() || count == 0 {
            continue;
        }
        let entry = |r: usize| rows[r].iter().find(|&&(j, _)| j as usize == c).map(|&(_, v)| v).unwrap();
        let pick = col_rows[c]
            .iter()
            .map(|&r| r as usize)
            .filter(|&r| entry(r).abs() == 1)
            .min_by_key(|&r| (rows[r].len(), r));
        // no unit here; the column is revisited once an update touches it
        let Some(p) = pick else { continue };
        let prow = std::mem::take(&mut rows[p]);
        let pv = prow.iter().find(|&&(j, _)| j as usize == c).map(|&(_, v)| v).unwrap();
        for &(j, _) in &prow {
            col_rows[j as usize].remove(&(p as u32));
            touched.insert(j as usize);
        }
        let targets: Vec<usize> = col_rows[c].iter().map(|&r| r as usize).collect();
        for s in targets {
            let sv = rows[s].iter().find(|&&(j, _)| j as usize == c).map(|&(_, v)| v).unwrap();
            let (new, added, removed) = axpy(&rows[s], sv * pv, &prow)?;
            for j in removed {
                col_rows[j as usize].remove(&(s as u32));
            }
            for j in added {
                col_rows[j as usize].insert(s as u32);
            }
            rows[s] = new;
        }
        alive[c] = false;
        for j in touched.drain() {
            if alive[j] && !col_rows[j].is_empty() {
                heap.push(Reverse((col_rows[j].len(), j)));
            }
        }
    }
    let cols: Vec<usize> = (0..ncols).filter(|&c| alive[c] && !col_rows[c].is_empty()).collect();
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut echelon = Echelon::new(cols.len());
    let mut seen: HashSet<SparseRow> = HashSet::default();
    for r in rows.into_iter().filter(|r| !r.is_empty()) {
        if !seen.insert(r.clone()) {
            continue;
        }
        let mut v = vec![0i128; cols.len()];
        for (c, x) in r {
            v[pos[&(c as usize)]] = x as i128;
        }
        echelon.insert(v)?;
    }
    let m = IntMatrix::from_rows(
        echelon.rows.into_iter().flatten().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
    );
    Ok(smith_normal_form(&m, SnfTransforms::NONE).torsion())
}

/// Row echelon form over the integers, one row per pivot column, built by
/// gcd row operations so the row lattice is preserved.
struct Echelon {
    rows: Vec<Option<Vec<i128>>>,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon { rows: vec![None; ncols] }
    }

    fn insert(&mut self, mut v: Vec<i128>) -> Result<()> {
        let overflow = || Error::Numeric("entry overflow while compacting the residual block".into());
        let n = v.len();
        for c in 0..n {
            if v[c] == 0 {
                continue;
            }
            let (head, tail) = self.rows.split_at_mut(c + 1);
            let Some(b) = head[c].as_mut() else {
                if v[c] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                head[c] = Some(v);
                return Ok(());
            };
            // unimodular combination: b becomes the gcd row, v gets a zero at c
            let (g, x, y) = ext_gcd(b[c], v[c]);
            let (bq, vq) = (b[c] / g, v[c] / g);
            for j in c..n {
                let (bj, vj) = (b[j], v[j]);
                let nb = x.checked_mul(bj).and_then(|p| y.checked_mul(vj).and_then(|q| p.checked_add(q)));
                let nv = bq.checked_mul(vj).and_then(|p| vq.checked_mul(bj).and_then(|q| p.checked_sub(q)));
                b[j] = nb.ok_or_else(overflow)?;
                v[j] = nv.ok_or_else(overflow)?;
            }
            // keep b short by reducing against the later pivots
            for j in c + 1..n {
                if let Some(piv) = tail[j - c - 1].as_ref() {
                    let q = b[j].div_euclid(piv[j]);
                    for k in j..n {
                        b[k] = q.checked_mul(piv[k]).and_then(|p| b[k].checked_sub(p)).ok_or_else(overflow)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

type MemoKey = (Vec<u64>, usize);

fn memo() -> &'static RwLock<HashMap<MemoKey, AbelianGroup>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, AbelianGroup>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `H^n(Z; U(1))` for trivial action, `n >= 1`, within the default budget.
pub fn group_cohomology_u1(group: &FiniteAbelianGroup, n: usize) -> Result<AbelianGroup> {
    group_cohomology_u1_with(group, n, Budget::default())
}

pub fn group_cohomology_u1_with(group: &FiniteAbelianGroup, n: usize, budget: Budget) -> Result<AbelianGroup> {
    if n == 0 {
        return Err(Error::Domain("U(1) cohomology is computed for degrees n >= 1".into()));
    }
    let key = (group.orders.clone(), n);
    if let Some(hit) = memo().read().ok().and_then(|m| m.get(&key).cloned()) {
        return Ok(hit);
    }
    let g = group.order();
    let too_big = || {
        Error::Resource(format!(
            "bar coboundary C^{n} -> C^{} of {group} needs ({}-1)^{} rows, budget is {} rows",
            n + 1,
            g,
            n + 1,
            budget.max_rows
        ))
    };
    let (rows, cols) = coboundary_shape(g, n).ok_or_else(too_big)?;
    if rows > budget.max_rows {
        return Err(too_big());
    }
    let torsion = sparse_torsion(bar_coboundary(group, n), cols)?;
    let out = AbelianGroup { free_rank: 0, torsion };
    if let Ok(mut m) = memo().write() {
        m.insert(key, out.clone());
    }
    Ok(out)
}

/// Center of the simply connected group of the given type: coweight
/// lattice modulo coroot lattice, read off the Smith form of the Cartan
/// matrix.
pub fn center_of(family: Family, rank: usize) -> Result<FiniteAbelianGroup> {
    let rs = RootSystem::from_type(CartanType::new(family, rank)?)?;
    let rows: Vec<Vec<BigInt>> = rs.cartan.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let snf = smith_normal_form(&IntMatrix::from_rows(rows), SnfTransforms::NONE);
    debug_assert!(snf.diagonal.iter().all(|d| d.is_positive()));
    let torsion: Vec<BigInt> = snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
    FiniteAbelianGroup::from_invariants(&AbelianGroup { free_rank: 0, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(orders: &[u64], n: usize) -> String {
        let g = FiniteAbelianGroup::new(orders.to_vec()).unwrap();
        group_cohomology_u1(&g, n).unwrap().to_string()
    }

    #[test]
    fn characters_of_small_groups() {
        assert_eq!(h(&[2], 1), "Z/2");
        assert_eq!(h(&[6], 1), "Z/6");
        assert_eq!(h(&[2, 4], 1), "Z/2 x Z/4");
    }

    #[test]
    fn elementary_abelian_four_group() {
        assert_eq!(h(&[2, 2], 2), "Z/2");
        assert_eq!(h(&[2, 2], 3), "Z/2 x Z/2 x Z/2");
    }

    #[test]
    fn element_codec_roundtrip() {
        let g = FiniteAbelianGroup::new(vec![2, 3, 4]).unwrap();
        for i in 0..24 {
            assert_eq!(g.encode(&g.decode(i)).unwrap(), i);
        }
        assert_eq!(g.add(&[1, 2, 3], &[1, 2, 3]), vec![0, 1, 2]);
        assert_eq!(g.invariants().to_string(), "Z/2 x Z/12");
    }

    #[test]
    fn bad_inputs() {
        assert!(FiniteAbelianGroup::new(vec![2, 1]).is_err());
        assert!(FiniteAbelianGroup::parse("2,x").is_err());
        assert_eq!(FiniteAbelianGroup::parse("2, 2").unwrap().order(), 4);
        let z = FiniteAbelianGroup::cyclic(16).unwrap();
        let err = group_cohomology_u1(&z, 4).unwrap_err().to_string();
        assert!(err.contains("rows"), "{err}");
        assert!(group_cohomology_u1(&z, 0).is_err());
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let d1 = bar_coboundary(&g, 1);
        let d2 = bar_coboundary(&g, 2);
        let m = 5;
        for (r, row) in d2.iter().enumerate() {
            let mut acc = vec![0i64; m];
            for &(c, v) in row {
                for &(j, w) in &d1[c as usize] {
                    acc[j as usize] += v * w;
                }
            }
            assert!(acc.iter().all(|&x| x == 0), "row {r}");
        }
    }

    proptest! {
        #[test]
        fn sparse_elimination_matches_dense_smith(
            entries in proptest::collection::vec(-3i64..=3, 42),
            mask in proptest::collection::vec(0u8..3, 42),
        ) {
            let (r, c) = (7, 6);
            let dense: Vec<Vec<i64>> = (0..r)
                .map(|i| (0..c).map(|j| if mask[i * c + j] == 0 { entries[i * c + j] } else { 0 }).collect())
                .collect();
            let sparse: Vec<SparseRow> = dense
                .iter()
                .map(|row| row.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j as u32, v)).collect())
                .collect();
            let big = IntMatrix::from_rows(dense.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect());
            let expect = smith_normal_form(&big, SnfTransforms::NONE).torsion();
            prop_assert_eq!(sparse_torsion(sparse, c).unwrap(), expect);
        }
    }
}
