//! The packing parameter `ν_{p,q}(M, N)`.
//!
//! A vector `c ∈ ℕ^V` is *reachable* by `k` independent sets of `M` when
//! there are `A_1..A_k ∈ M` with `#v(A) = c_v` for every `v`; reachable
//! vectors are exactly those dominated by the multiplicity vector of some
//! multiset of `k` bases. Then
//! `ν_{p,q} = max { Σ c : c reachable by p sets of M and by q sets of N }`,
//! and only vectors with entries at most `min(p, q)` matter.
//!
//! Reachable vectors with entries clipped to a cap are stored in a dense
//! table indexed in base `cap + 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matroid::Matroid;
use crate::set::ElementSet;

/// Number of sets among `sets` containing `v`.
pub fn multiplicity(v: usize, sets: &[ElementSet]) -> usize {
    sets.iter().filter(|s| s.contains(v)).count()
}

/// `Σ_v min(#v(a), #v(b))`.
pub fn objective(a: &[ElementSet], b: &[ElementSet]) -> usize {
    let ground = a.iter().chain(b).fold(ElementSet::EMPTY, |acc, s| acc.union(*s));
    ground.iter().map(|v| multiplicity(v, a).min(multiplicity(v, b))).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuResult {
    pub value: usize,
    #[serde(rename = "A")]
    pub a: Vec<ElementSet>,
    #[serde(rename = "B")]
    pub b: Vec<ElementSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DanglingWitness {
    #[serde(rename = "X")]
    pub x: Vec<ElementSet>,
    #[serde(rename = "Y")]
    pub y: Vec<ElementSet>,
    pub z: usize,
    pub nu: usize,
}

impl DanglingWitness {
    pub fn verify(&self, m: &Matroid, n: &Matroid) -> bool {
        let p = self.x.len();
        self.x.iter().all(|s| m.is_independent(*s))
            && self.y.iter().all(|s| n.is_independent(*s))
            && m.ground().iter().all(|v| {
                v == self.z || multiplicity(v, &self.x) == multiplicity(v, &self.y)
            })
            && multiplicity(self.z, &self.x) == p
            && self.y.iter().map(|s| s.len()).sum::<usize>() == self.nu
    }
}

/// Multisets of `k` bases, as index lists in non-decreasing order.
struct Side<'a> {
    bases: Vec<ElementSet>,
    k: usize,
    elems: &'a [usize],
}

impl Side<'_> {
    fn new<'a>(m: &Matroid, k: usize, elems: &'a [usize], limits: &Limits) -> Result<Side<'a>> {
        let bases = m.bases();
        let count = multiset_count(bases.len() as u64, k as u64);
        if count > limits.nu_max_multisets {
            return Err(Error::resource(format!(
                "{count} multisets of {k} bases exceed the limit {}",
                limits.nu_max_multisets
            )));
        }
        Ok(Side { bases, k, elems })
    }

    /// Visits multiplicity vectors (local coordinates) of every multiset in
    /// enumeration order, together with the base indices; stops when `f`
    /// returns `true`.
    fn for_each(&self, f: &mut dyn FnMut(&[u8], &[usize]) -> bool) -> bool {
        fn go(
            side: &Side<'_>,
            start: usize,
            counts: &mut Vec<u8>,
            picked: &mut Vec<usize>,
            f: &mut dyn FnMut(&[u8], &[usize]) -> bool,
        ) -> bool {
            if picked.len() == side.k {
                return f(counts, picked);
            }
            for b in start..side.bases.len() {
                let base = side.bases[b];
                bump(side.elems, base, counts, 1);
                picked.push(b);
                let stop = go(side, b, counts, picked, f);
                picked.pop();
                bump(side.elems, base, counts, -1);
                if stop {
                    return true;
                }
            }
            false
        }
        go(self, 0, &mut vec![0; self.elems.len()], &mut Vec::with_capacity(self.k), f)
    }

    /// Down-closed table of reachable vectors with entries capped at `cap`.
    fn table(&self, cap: usize) -> Vec<bool> {
        let radix = cap + 1;
        let n = self.elems.len();
        let mut table = vec![false; radix.pow(n as u32)];
        self.for_each(&mut |counts, _| {
            let idx = counts
                .iter()
                .rev()
                .fold(0usize, |acc, &c| acc * radix + (c as usize).min(cap));
            table[idx] = true;
            false
        });
        let mut stride = 1usize;
        for _ in 0..n {
            for idx in (0..table.len()).rev() {
                if (idx / stride) % radix < cap && table[idx + stride] {
                    table[idx] = true;
                }
            }
            stride *= radix;
        }
        table
    }

    /// The first multiset whose multiplicity vector dominates `target`.
    fn first_dominating(&self, target: &[u8]) -> Option<Vec<ElementSet>> {
        let mut found = None;
        self.for_each(&mut |counts, picked| {
            if counts.iter().zip(target).all(|(c, t)| c >= t) {
                found = Some(picked.iter().map(|&b| self.bases[b]).collect());
                true
            } else {
                false
            }
        });
        found
    }

    /// [`Side::first_dominating`] trimmed to exactly `target` by removing
    /// surplus elements from the highest-index set containing them.
    fn realize(&self, target: &[u8]) -> Option<Vec<ElementSet>> {
        let mut sets = self.first_dominating(target)?;
        for (i, &v) in self.elems.iter().enumerate() {
            trim(&mut sets, v, target[i] as usize);
        }
        Some(sets)
    }
}

fn bump(elems: &[usize], base: ElementSet, counts: &mut [u8], delta: i8) {
    for (i, &v) in elems.iter().enumerate() {
        if base.contains(v) {
            counts[i] = counts[i].wrapping_add_signed(delta);
        }
    }
}

/// Removes `v` from the highest-index sets until it lies in `keep` of them.
fn trim(sets: &mut [ElementSet], v: usize, keep: usize) {
    let mut surplus = multiplicity(v, sets).saturating_sub(keep);
    for s in sets.iter_mut().rev() {
        if surplus == 0 {
            break;
        }
        if s.contains(v) {
            *s = s.without(v);
            surplus -= 1;
        }
    }
}

fn multiset_count(items: u64, k: u64) -> u64 {
    // C(items + k - 1, k), saturating
    if items == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (items as u128 + i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn check_pair(m: &Matroid, n: &Matroid, p: usize, q: usize) -> Result<Vec<usize>> {
    if m.ground() != n.ground() {
        return Err(Error::domain("matroids must share a ground set"));
    }
    if p == 0 || q == 0 {
        return Err(Error::domain("p and q must be at least 1"));
    }
    Ok(m.ground().to_vec())
}

fn check_table(n: usize, cap: usize, limits: &Limits) -> Result<()> {
    let size = ((cap + 1) as f64).powi(n as i32);
    if size > limits.nu_max_table as f64 {
        return Err(Error::resource(format!(
            "multiplicity table of size {}^{n} exceeds the limit {}",
            cap + 1,
            limits.nu_max_table
        )));
    }
    Ok(())
}

fn digits(mut idx: usize, radix: usize, n: usize) -> Vec<u8> {
    (0..n)
        .map(|_| {
            let d = (idx % radix) as u8;
            idx /= radix;
            d
        })
        .collect()
}

pub fn nu_pq(m: &Matroid, n: &Matroid, p: usize, q: usize) -> Result<NuResult> {
    nu_pq_with(m, n, p, q, &Limits::default())
}

/// Exact `ν_{p,q}` with a witness made of bases: the lowest-index optimal
/// vector `c` is realized by the first multiset on each side dominating it.
pub fn nu_pq_with(m: &Matroid, n: &Matroid, p: usize, q: usize, limits: &Limits) -> Result<NuResult> {
    let elems = check_pair(m, n, p, q)?;
    let cap = p.min(q);
    check_table(elems.len(), cap, limits)?;
    let sm = Side::new(m, p, &elems, limits)?;
    let sn = Side::new(n, q, &elems, limits)?;
    let (tm, tn) = (sm.table(cap), sn.table(cap));
    let radix = cap + 1;
    let (mut best, mut best_idx) = (0usize, 0usize);
    for idx in 0..tm.len() {
        if tm[idx] && tn[idx] {
            let sum: usize = digits(idx, radix, elems.len()).iter().map(|&d| d as usize).sum();
            if sum > best {
                best = sum;
                best_idx = idx;
            }
        }
    }
    let target = digits(best_idx, radix, elems.len());
    let dominating = |side: &Side<'_>| side.first_dominating(&target).expect("table entries are realizable");
    let result = NuResult { value: best, a: dominating(&sm), b: dominating(&sn) };
    debug_assert_eq!(objective(&result.a, &result.b), best);
    Ok(result)
}

pub fn equalized_witness(m: &Matroid, n: &Matroid, p: usize, q: usize) -> Result<NuResult> {
    equalized_witness_with(m, n, p, q, &Limits::default())
}

/// An optimal witness with `#v(A) = #v(B)` for every element, so that
/// `Σ|A_i| = Σ|B_j| = ν_{p,q}`.
pub fn equalized_witness_with(
    m: &Matroid,
    n: &Matroid,
    p: usize,
    q: usize,
    limits: &Limits,
) -> Result<NuResult> {
    let NuResult { value, mut a, mut b } = nu_pq_with(m, n, p, q, limits)?;
    for v in m.ground().iter() {
        let keep = multiplicity(v, &a).min(multiplicity(v, &b));
        trim(&mut a, v, keep);
        trim(&mut b, v, keep);
    }
    Ok(NuResult { value, a, b })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    pub smaller: usize,
    pub larger: usize,
    pub holds: bool,
}

/// `ν_{p,q}(M, N) <= ν_{p',q'}(M', N')` for `p <= p'`, `q <= q'`,
/// `M ⊆ M'`, `N ⊆ N'`.
#[allow(clippy::too_many_arguments)]
pub fn check_monotone(
    m: &Matroid,
    n: &Matroid,
    m2: &Matroid,
    n2: &Matroid,
    p: usize,
    q: usize,
    p2: usize,
    q2: usize,
) -> Result<MonotoneReport> {
    if p > p2 || q > q2 {
        return Err(Error::domain("need p <= p' and q <= q'"));
    }
    if !m.is_subcomplex_of(m2) || !n.is_subcomplex_of(n2) {
        return Err(Error::domain("need M ⊆ M' and N ⊆ N' on the same ground"));
    }
    let smaller = nu_pq(m, n, p, q)?.value;
    let larger = nu_pq(m2, n2, p2, q2)?.value;
    Ok(MonotoneReport { smaller, larger, holds: smaller <= larger })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuqqReport {
    pub q: usize,
    pub nu11: usize,
    pub nu_qq: usize,
    /// `⌈ν_{q,q} / q⌉`
    pub bound: usize,
    pub slack: i64,
    pub holds: bool,
}

/// `ν_{1,1} >= ⌈ν_{q,q} / q⌉`.
pub fn check_nuqq_bound(m: &Matroid, n: &Matroid, q: usize) -> Result<NuqqReport> {
    check_nuqq_bound_with(m, n, q, &Limits::default())
}

pub fn check_nuqq_bound_with(m: &Matroid, n: &Matroid, q: usize, limits: &Limits) -> Result<NuqqReport> {
    let nu11 = nu_pq_with(m, n, 1, 1, limits)?.value;
    let nu_qq = nu_pq_with(m, n, q, q, limits)?.value;
    let bound = nu_qq.div_ceil(q);
    Ok(NuqqReport {
        q,
        nu11,
        nu_qq,
        bound,
        slack: nu11 as i64 - bound as i64,
        holds: nu11 >= bound,
    })
}

pub fn dangling_witness(m: &Matroid, n: &Matroid, p: usize, q: usize) -> Result<DanglingWitness> {
    dangling_witness_with(m, n, p, q, &Limits::default())
}

/// Sets `X_1..X_p ∈ M`, `Y_1..Y_q ∈ N` and an element `z` with
/// `#v(X) = #v(Y)` off `z`, `#z(X) = p` and `Σ|Y_j| = ν_{p,q}`.
///
/// Searches `z` ascending, then multiplicity vectors of `Y` in table order.
pub fn dangling_witness_with(
    m: &Matroid,
    n: &Matroid,
    p: usize,
    q: usize,
    limits: &Limits,
) -> Result<DanglingWitness> {
    let elems = check_pair(m, n, p, q)?;
    if p > q {
        return Err(Error::domain("dangling witnesses need p <= q"));
    }
    let nu = nu_pq_with(m, n, p, q, limits)?.value;
    if nu_pq_with(m, n, 1, 1, limits)?.value == 0 {
        return Err(Error::domain("dangling witnesses need ν_{1,1} > 0"));
    }
    check_table(elems.len(), q, limits)?;
    let sm = Side::new(m, p, &elems, limits)?;
    let sn = Side::new(n, q, &elems, limits)?;
    let (tm, tn) = (sm.table(p), sn.table(q));
    let (rm, rn) = (p + 1, q + 1);
    for (zi, &z) in elems.iter().enumerate() {
        for (idx, _) in tn.iter().enumerate().filter(|(_, &ok)| ok) {
            let y = digits(idx, rn, elems.len());
            if y.iter().map(|&d| d as usize).sum::<usize>() != nu {
                continue;
            }
            if y.iter().enumerate().any(|(i, &d)| i != zi && d as usize > p) {
                continue;
            }
            let mut x = y.clone();
            x[zi] = p as u8;
            let xi = x.iter().rev().fold(0usize, |acc, &d| acc * rm + d as usize);
            if !tm[xi] {
                continue;
            }
            let witness = DanglingWitness {
                x: sm.realize(&x).expect("table entries are realizable"),
                y: sn.realize(&y).expect("table entries are realizable"),
                z,
                nu,
            };
            debug_assert!(witness.verify(m, n));
            return Ok(witness);
        }
    }
    Err(Error::TheoremViolation(format!(
        "no dangling witness for p = {p}, q = {q} on M = {m}, N = {n}"
    )))
}
