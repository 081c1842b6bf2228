//! Checkers for equivariant and Jandl structures on pure-nerve gerbe data.
//!
//! A finite group acts on the cover through permutations of the index set;
//! pullback is `(γ*c)_I = c_{γ(I)}`, so `(γ₂∘γ₁)* = γ₁*γ₂*`.

use std::collections::{BTreeMap, VecDeque};

use crate::deligne::cochain::{DeligneCochain, Scalar};
use crate::error::{Error, Result};
use crate::report::{CheckReport, MaxTracker};

fn validate_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Domain(format!("permutation has {} entries, expected {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Domain(format!("{perm:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// A finite group acting on the nerve index set, given by generating
/// permutations and closed under composition. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupActionOnCover {
    elements: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl GroupActionOnCover {
    pub fn new(num_indices: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            validate_permutation(g, num_indices)?;
        }
        let id: Vec<usize> = (0..num_indices).collect();
        let mut elements = vec![id.clone()];
        let mut index = BTreeMap::from([(id, 0)]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let prod: Vec<usize> = elements[e].iter().map(|&i| g[i]).collect();
                if !index.contains_key(&prod) {
                    if elements.len() >= 10_000 {
                        return Err(Error::Resource("group generated by the action exceeds 10000 elements".into()));
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        Ok(GroupActionOnCover { elements, index })
    }

    pub fn trivial(num_indices: usize) -> Self {
        Self::new(num_indices, &[]).expect("identity is a permutation")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, g: usize) -> &[usize] {
        &self.elements[g]
    }

    pub fn position(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// Index of `a ∘ b` (apply `b` first).
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let prod: Vec<usize> = self.elements[b].iter().map(|&i| self.elements[a][i]).collect();
        self.index[&prod]
    }
}

fn expect_shape<S: Scalar>(c: &DeligneCochain<S>, degree: usize, like: &DeligneCochain<S>, what: &str) -> Result<()> {
    if c.degree() != degree || c.level() != like.level() || !c.is_pure() {
        return Err(Error::Domain(format!(
            "{what} must be a pure-nerve cochain of degree {degree} and level {}",
            like.level()
        )));
    }
    if **c.nerve() != **like.nerve() {
        return Err(Error::Domain(format!("{what} lives on a different nerve")));
    }
    Ok(())
}

/// `(da)_{γ₁,γ₂} = γ₁*a_{γ₂} - a_{γ₂γ₁} + a_{γ₁}`.
pub fn group_coboundary_1<S: Scalar>(
    act: &GroupActionOnCover,
    a: &[DeligneCochain<S>],
    g1: usize,
    g2: usize,
) -> Result<DeligneCochain<S>> {
    a[g2].pullback(act.element(g1))?.sub(&a[act.compose(g2, g1)])?.add(&a[g1])
}

/// `(db)_{γ₁,γ₂,γ₃} = γ₁*b_{γ₂,γ₃} - b_{γ₂γ₁,γ₃} + b_{γ₁,γ₃γ₂} - b_{γ₁,γ₂}`.
pub fn group_coboundary_2<S: Scalar>(
    act: &GroupActionOnCover,
    b: &[Vec<DeligneCochain<S>>],
    g1: usize,
    g2: usize,
    g3: usize,
) -> Result<DeligneCochain<S>> {
    b[g2][g3]
        .pullback(act.element(g1))?
        .sub(&b[act.compose(g2, g1)][g3])?
        .add(&b[g1][act.compose(g3, g2)])?
        .sub(&b[g1][g2])
}

/// Check the three conditions of an equivariant structure `(a, b)` on `xi`:
/// `D a_γ = γ*ξ - ξ`, `D b_{γ₁,γ₂} = (da)_{γ₁,γ₂}`, `(db) = 0`.
pub fn check_equivariant_data<S: Scalar>(
    act: &GroupActionOnCover,
    xi: &DeligneCochain<S>,
    a: &[DeligneCochain<S>],
    b: &[Vec<DeligneCochain<S>>],
    tol: f64,
) -> Result<CheckReport> {
    if !xi.is_pure() || xi.degree() != 2 {
        return Err(Error::Domain("equivariant data is checked on a degree-2 pure-nerve cochain".into()));
    }
    let n = act.order();
    if a.len() != n {
        return Err(Error::Domain(format!("a has {} entries but the group has {n} elements", a.len())));
    }
    if b.len() != n || b.iter().any(|row| row.len() != n) {
        return Err(Error::Domain(format!("b must have an entry for each of the {n}x{n} pairs")));
    }
    for x in a {
        expect_shape(x, 1, xi, "a")?;
    }
    for x in b.iter().flatten() {
        expect_shape(x, 0, xi, "b")?;
    }
    let mut c1 = MaxTracker::default();
    for g in 0..n {
        let r = a[g].differential().sub(&xi.pullback(act.element(g))?.sub(xi)?)?.residual_from_zero();
        c1.observe(r, || format!("γ={:?}", act.element(g)));
    }
    let mut c2 = MaxTracker::default();
    for g1 in 0..n {
        for g2 in 0..n {
            let r = b[g1][g2].differential().sub(&group_coboundary_1(act, a, g1, g2)?)?.residual_from_zero();
            c2.observe(r, || format!("(γ₁,γ₂)=({g1},{g2})"));
        }
    }
    let mut c3 = MaxTracker::default();
    for g1 in 0..n {
        for g2 in 0..n {
            for g3 in 0..n {
                let r = group_coboundary_2(act, b, g1, g2, g3)?.residual_from_zero();
                c3.observe(r, || format!("triple ({g1},{g2},{g3})"));
            }
        }
    }
    let mut report = CheckReport::default();
    report.push(c1.check("D a = pullback(xi) - xi", tol));
    report.push(c2.check("D b = d a", tol));
    report.push(c3.check("d b = 0", tol));
    Ok(report)
}

/// An involution of the nerve index set.
#[derive(Clone, Debug, PartialEq)]
pub struct Involution {
    perm: Vec<usize>,
}

impl Involution {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        validate_permutation(&perm, perm.len())?;
        if let Some(i) = (0..perm.len()).find(|&i| perm[perm[i]] != i) {
            return Err(Error::Domain(format!("map is not an involution: {i} -> {} -> {}", perm[i], perm[perm[i]])));
        }
        Ok(Involution { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

/// Check Jandl data `(a, φ)` on `xi` under the involution `k`:
/// `D a = -ξ - k*ξ`, `D φ = k*a - a`, and `k*φ = φ̄` (negation in turns).
pub fn check_jandl_data<S: Scalar>(
    invol: &Involution,
    xi: &DeligneCochain<S>,
    a: &DeligneCochain<S>,
    phi: &DeligneCochain<S>,
    tol: f64,
) -> Result<CheckReport> {
    if !xi.is_pure() || xi.degree() != 2 {
        return Err(Error::Domain("Jandl data is checked on a degree-2 pure-nerve cochain".into()));
    }
    expect_shape(a, 1, xi, "a")?;
    expect_shape(phi, 0, xi, "phi")?;
    let k = invol.perm();
    let kxi = xi.pullback(k)?;
    let r1 = a.differential().add(xi)?.add(&kxi)?.residual_from_zero();
    let r2 = phi.differential().sub(&a.pullback(k)?.sub(a)?)?.residual_from_zero();
    let r3 = phi.pullback(k)?.add(phi)?.residual_from_zero();
    let mut report = CheckReport::default();
    report.push(crate::report::Check::new("D a = -xi - pullback(xi)", r1, tol));
    report.push(crate::report::Check::new("D phi = pullback(a) - a", r2, tol));
    report.push(crate::report::Check::new("pullback(phi) = conjugate(phi)", r3, tol));
    Ok(report)
}
