//! Reduced simplicial homology over `ℚ` or `GF(p)`, the connectivity `η`,
//! and the ratio parameter `Δ_η`.
//!
//! The chain complex is augmented: the empty face spans degree `-1` and
//! `∂_0` sends every vertex to it. So `{∅}` has `β̃_{-1} = 1` and the void
//! complex has no chains at all. All arithmetic is exact.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::set::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CoefficientField {
    #[default]
    Rationals,
    Prime(u64),
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::Prime(p))
        } else {
            Err(Error::domain(format!("{p} is not prime")))
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FromStr for CoefficientField {
    type Err = Error;

    /// `q`, `gf2`, `gf<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" {
            return Ok(CoefficientField::Rationals);
        }
        let digits = lower
            .strip_prefix("gf")
            .ok_or_else(|| Error::domain(format!("unknown field {s:?}; use q, gf2 or gf<p>")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::domain(format!("unknown field {s:?}; use q, gf2 or gf<p>")))?;
        if p > u32::MAX as u64 {
            return Err(Error::domain("prime fields are limited to p < 2^32"));
        }
        CoefficientField::prime(p)
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => f.write_str("q"),
            CoefficientField::Prime(p) => write!(f, "gf{p}"),
        }
    }
}

impl Serialize for CoefficientField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A connectivity value: a natural number or `∞`.
///
/// `Finite(_) < Infinite`, and `∞` absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EtaValue {
    Finite(u64),
    Infinite,
}

impl EtaValue {
    pub fn is_infinite(self) -> bool {
        self == EtaValue::Infinite
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            EtaValue::Finite(k) => Some(k),
            EtaValue::Infinite => None,
        }
    }

    pub fn plus(self, c: u64) -> Self {
        match self {
            EtaValue::Finite(k) => EtaValue::Finite(k + c),
            EtaValue::Infinite => EtaValue::Infinite,
        }
    }

    /// `self >= num / den` for `den > 0`.
    pub fn at_least_ratio(self, num: u64, den: u64) -> bool {
        match self {
            EtaValue::Infinite => true,
            EtaValue::Finite(k) => k as u128 * den as u128 >= num as u128,
        }
    }

    /// `self - other` when both are finite.
    pub fn finite_diff(self, other: EtaValue) -> Option<i64> {
        Some(self.finite()? as i64 - other.finite()? as i64)
    }
}

impl Add for EtaValue {
    type Output = EtaValue;
    fn add(self, rhs: EtaValue) -> EtaValue {
        match (self, rhs) {
            (EtaValue::Finite(a), EtaValue::Finite(b)) => EtaValue::Finite(a + b),
            _ => EtaValue::Infinite,
        }
    }
}

impl fmt::Display for EtaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaValue::Finite(k) => write!(f, "{k}"),
            EtaValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for EtaValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EtaValue::Finite(k) => serializer.serialize_u64(*k),
            EtaValue::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for EtaValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(k) => Ok(EtaValue::Finite(k)),
            Raw::Str(s) if s == "inf" => Ok(EtaValue::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad eta value {s:?}"))),
        }
    }
}

/// Serializes an exact rational as `"num/den"`.
pub fn ratio_string(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn serialize_ratio<S: Serializer>(
    r: &Ratio<u64>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&ratio_string(r))
}

pub(crate) fn serialize_slack<S: Serializer>(
    slack: &Option<i64>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match slack {
        Some(k) => serializer.serialize_i64(*k),
        None => serializer.serialize_str("inf"),
    }
}

/// Reduced Betti numbers; entry `i` is `β̃_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiProfile(pub Vec<u64>);

impl BettiProfile {
    /// `β̃_k` for `k >= -1`; zero beyond the stored range.
    pub fn reduced(&self, k: isize) -> u64 {
        usize::try_from(k + 1).ok().and_then(|i| self.0.get(i).copied()).unwrap_or(0)
    }

    /// Least `k` with `β̃_{k-1} != 0`.
    pub fn eta(&self) -> EtaValue {
        self.0
            .iter()
            .position(|&b| b > 0)
            .map_or(EtaValue::Infinite, |i| EtaValue::Finite(i as u64))
    }
}

/// Matrix of `∂_k` from `k`-faces (columns) to `(k-1)`-faces (rows), both in
/// sorted order, with the sign `(-1)^i` for deleting the `i`-th smallest
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: Vec<ElementSet>,
    pub cols: Vec<ElementSet>,
    pub entries: Vec<Vec<i64>>,
}

impl BoundaryMatrix {
    fn build(rows: &[ElementSet], cols: &[ElementSet]) -> Self {
        let mut entries = vec![vec![0i64; cols.len()]; rows.len()];
        if !rows.is_empty() {
            for (j, &face) in cols.iter().enumerate() {
                for (i, v) in face.iter().enumerate() {
                    let r = rows
                        .binary_search_by(|x| x.cmp(&face.without(v)))
                        .expect("boundary face present in a downward-closed complex");
                    entries[r][j] = if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        BoundaryMatrix { rows: rows.to_vec(), cols: cols.to_vec(), entries }
    }

    pub fn rank(&self, field: CoefficientField) -> usize {
        matrix_rank(&self.entries, self.cols.len(), field)
    }
}

/// Faces of `c` grouped by size, each group in lexicographic order.
fn faces_by_size(c: &SimplicialComplex, budget: usize) -> Result<Vec<Vec<ElementSet>>> {
    let faces = c.faces_within(budget)?;
    let top = faces.last().map_or(0, |f| f.len());
    let mut groups = vec![Vec::new(); if faces.is_empty() { 0 } else { top + 1 }];
    for f in faces {
        groups[f.len()].push(f);
    }
    for g in &mut groups {
        g.sort();
    }
    Ok(groups)
}

/// `∂_k` for `-1 <= k <= dim + 1`. Over `GF(p)` entries are reduced into
/// `0..p`.
pub fn boundary_matrix(
    c: &SimplicialComplex,
    k: isize,
    field: CoefficientField,
) -> Result<BoundaryMatrix> {
    let dim = c.dimension().ok_or_else(|| Error::domain("the void complex has no chains"))?;
    if k < -1 || k > dim + 1 {
        return Err(Error::domain(format!("degree {k} outside -1..={}", dim + 1)));
    }
    let groups = faces_by_size(c, Limits::default().face_budget)?;
    let size = (k + 1) as usize;
    let empty = Vec::new();
    let cols = groups.get(size).unwrap_or(&empty);
    let rows = if size == 0 { &empty } else { groups.get(size - 1).unwrap_or(&empty) };
    let mut m = BoundaryMatrix::build(rows, cols);
    if let CoefficientField::Prime(p) = field {
        for row in &mut m.entries {
            for x in row.iter_mut() {
                *x = x.rem_euclid(p as i64);
            }
        }
    }
    Ok(m)
}

pub fn reduced_betti(c: &SimplicialComplex, field: CoefficientField) -> Result<BettiProfile> {
    reduced_betti_with(c, field, &Limits::default())
}

pub fn reduced_betti_with(
    c: &SimplicialComplex,
    field: CoefficientField,
    limits: &Limits,
) -> Result<BettiProfile> {
    let groups = faces_by_size(c, limits.face_budget)?;
    let ranks = boundary_ranks(&groups, field, groups.len());
    Ok(BettiProfile(
        (0..groups.len())
            .map(|s| (groups[s].len() - ranks[s] - ranks[s + 1]) as u64)
            .collect(),
    ))
}

/// `ranks[s]` is the rank of `∂` from size-`s` faces to size-`s-1` faces,
/// computed for `s <= upto`; the rest are zero.
fn boundary_ranks(groups: &[Vec<ElementSet>], field: CoefficientField, upto: usize) -> Vec<usize> {
    let mut ranks = vec![0usize; groups.len() + 1];
    for s in 1..groups.len().min(upto + 1) {
        ranks[s] = BoundaryMatrix::build(&groups[s - 1], &groups[s]).rank(field);
    }
    ranks
}

pub fn eta(c: &SimplicialComplex, field: CoefficientField) -> Result<EtaValue> {
    eta_with(c, field, &Limits::default())
}

/// `η(C)`: least `k` with `β̃_{k-1} != 0`, `0` for the void complex, `∞` if
/// all reduced homology vanishes. Cones are recognised without elimination.
pub fn eta_with(c: &SimplicialComplex, field: CoefficientField, limits: &Limits) -> Result<EtaValue> {
    let Some(facets) = c.facets() else {
        return Ok(EtaValue::Finite(0));
    };
    let apex = facets.iter().fold(c.vertex_support(), |acc, f| acc.intersection(*f));
    if !apex.is_empty() {
        return Ok(EtaValue::Infinite);
    }
    let groups = faces_by_size(c, limits.face_budget)?;
    let mut rank_in = 0usize; // rank of ∂ into the current size
    for s in 0..groups.len() {
        let rank_out = if s + 1 < groups.len() {
            BoundaryMatrix::build(&groups[s], &groups[s + 1]).rank(field)
        } else {
            0
        };
        // β̃_{s-1} = f_s - rank ∂_s - rank ∂_{s+1}
        if groups[s].len() > rank_in + rank_out {
            return Ok(EtaValue::Finite(s as u64));
        }
        rank_in = rank_out;
    }
    Ok(EtaValue::Infinite)
}

/// `Δ_η(C) = max_{∅ ≠ S ⊆ V} |S| / η(C[S])`, with `|S| / ∞ = 0`.
pub fn delta_eta(c: &SimplicialComplex, field: CoefficientField) -> Result<Ratio<u64>> {
    delta_eta_with(c, field, &Limits::default())
}

pub fn delta_eta_with(
    c: &SimplicialComplex,
    field: CoefficientField,
    limits: &Limits,
) -> Result<Ratio<u64>> {
    if !c.covers_ground() {
        return Err(Error::domain("Δ_η requires every ground element to lie in a face"));
    }
    let ground = c.ground();
    if ground.len() > limits.delta_eta_max_ground {
        return Err(Error::resource(format!(
            "Δ_η enumerates 2^{} subsets; limit is ground size {}",
            ground.len(),
            limits.delta_eta_max_ground
        )));
    }
    let mut subsets: Vec<ElementSet> = ground.subsets().filter(|s| !s.is_empty()).collect();
    subsets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut best = Ratio::new(0u64, 1);
    for s in subsets {
        // η(C[S]) >= 1 under coverage, so |S| bounds the ratio
        if Ratio::from_integer(s.len() as u64) <= best {
            break;
        }
        if c.is_face(s) {
            continue;
        }
        if let EtaValue::Finite(k) = eta_with(&c.restrict_unchecked(s), field, limits)? {
            debug_assert!(k >= 1);
            let r = Ratio::new(s.len() as u64, k);
            if r > best {
                best = r;
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub eta_join: EtaValue,
    pub eta_left: EtaValue,
    pub eta_right: EtaValue,
    #[serde(serialize_with = "serialize_slack")]
    pub slack: Option<i64>,
    pub holds: bool,
}

/// `η(C * D) >= η(C) + η(D)` on disjoint grounds.
pub fn check_join_superadditivity(
    c: &SimplicialComplex,
    d: &SimplicialComplex,
    field: CoefficientField,
) -> Result<JoinReport> {
    let joined = c.join(d)?;
    let eta_join = eta(&joined, field)?;
    let eta_left = eta(c, field)?;
    let eta_right = eta(d, field)?;
    let bound = eta_left + eta_right;
    Ok(JoinReport {
        eta_join,
        eta_left,
        eta_right,
        slack: eta_join.finite_diff(bound),
        holds: eta_join >= bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MayerVietorisReport {
    pub eta_a: EtaValue,
    pub eta_b: EtaValue,
    pub eta_union: EtaValue,
    pub eta_intersection: EtaValue,
    /// Whether inequalities (union), (intersection), (A) hold.
    pub holds: [bool; 3],
    /// Whether each holds with equality.
    pub tight: [bool; 3],
}

impl MayerVietorisReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

/// The three Mayer–Vietoris consequences for complexes on one ground set:
///
/// 1. `η(A ∪ B) >= min(η(A), η(B), η(A ∩ B) + 1)`
/// 2. `η(A ∩ B) >= min(η(A), η(B), η(A ∪ B) - 1)`
/// 3. `η(A) >= min(η(A ∪ B), η(A ∩ B))`
pub fn check_mayer_vietoris(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    field: CoefficientField,
) -> Result<MayerVietorisReport> {
    let union = a.union(b)?;
    let inter = a.intersection(b)?;
    let (ea, eb) = (eta(a, field)?, eta(b, field)?);
    let (eu, ei) = (eta(&union, field)?, eta(&inter, field)?);

    let rhs1 = ea.min(eb).min(ei.plus(1));
    // (2) shifted by one to stay in the naturals
    let lhs2 = ei.plus(1);
    let rhs2 = ea.plus(1).min(eb.plus(1)).min(eu);
    let rhs3 = eu.min(ei);

    Ok(MayerVietorisReport {
        eta_a: ea,
        eta_b: eb,
        eta_union: eu,
        eta_intersection: ei,
        holds: [eu >= rhs1, lhs2 >= rhs2, ea >= rhs3],
        tight: [eu == rhs1, lhs2 == rhs2, ea == rhs3],
    })
}

fn matrix_rank(entries: &[Vec<i64>], cols: usize, field: CoefficientField) -> usize {
    if entries.is_empty() || cols == 0 {
        return 0;
    }
    match field {
        CoefficientField::Rationals => {
            let m: Vec<Vec<i128>> =
                entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
            rank_bareiss_i128(m).unwrap_or_else(|| {
                rank_bareiss_big(
                    entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                )
            })
        }
        CoefficientField::Prime(p) => rank_mod_p(entries, p),
    }
}

/// Fraction-free elimination; `None` on overflow.
fn rank_bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(p) = (rank..rows).filter(|&r| m[r][c] != 0).min_by_key(|&r| m[r][c].unsigned_abs())
        else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let a = row[c];
            for j in c + 1..cols {
                let v = pivot.checked_mul(row[j])?.checked_sub(a.checked_mul(prow[j])?)?;
                debug_assert_eq!(v % prev, 0);
                row[j] = v / prev;
            }
            row[c] = 0;
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn rank_bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).filter(|&r| !m[r][c].is_zero()).min_by_key(|&r| m[r][c].abs())
        else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let a = row[c].clone();
            for j in c + 1..cols {
                row[j] = (&pivot * &row[j] - &a * &prow[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_mod_p(entries: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = entries
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let rows = m.len();
    let cols = m[0].len();
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        // Fermat
        let (mut base, mut exp, mut acc) = (a, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let scale = inv(m[rank][c]);
        for x in &mut m[rank][c..cols] {
            *x = mulmod(*x, scale);
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                row[j] = (row[j] + p - mulmod(f, prow[j])) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientField = CoefficientField::Rationals;
    const GF2: CoefficientField = CoefficientField::Prime(2);

    fn s(v: &[usize]) -> ElementSet {
        v.iter().copied().collect()
    }

    fn cx(ground: &[usize], facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(s(ground), facets.iter().map(|f| s(f))).unwrap()
    }

    fn hollow_triangle() -> SimplicialComplex {
        cx(&[0, 1, 2], &[&[0, 1], &[1, 2], &[0, 2]])
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<CoefficientField>().unwrap(), Q);
        assert_eq!("gf2".parse::<CoefficientField>().unwrap(), GF2);
        assert_eq!("GF7".parse::<CoefficientField>().unwrap(), CoefficientField::Prime(7));
        assert!("gf4".parse::<CoefficientField>().is_err());
        assert!("r".parse::<CoefficientField>().is_err());
        assert_eq!(CoefficientField::Prime(3).to_string(), "gf3");
    }

    #[test]
    fn eta_value_arithmetic() {
        use EtaValue::*;
        assert!(Finite(100) < Infinite);
        assert_eq!(Infinite + Finite(3), Infinite);
        assert_eq!(Finite(1) + Finite(3), Finite(4));
        assert!(Infinite.at_least_ratio(1000, 1));
        assert!(Finite(1).at_least_ratio(2, 2));
        assert!(!Finite(1).at_least_ratio(3, 2));
        assert_eq!(serde_json::to_string(&Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<EtaValue>("\"inf\"").unwrap(), Infinite);
        assert_eq!(serde_json::from_str::<EtaValue>("2").unwrap(), Finite(2));
    }

    #[test]
    fn boundary_matrix_examples() {
        let m = boundary_matrix(&hollow_triangle(), 1, Q).unwrap();
        assert_eq!((m.rows.len(), m.cols.len()), (3, 3));
        assert_eq!(m.rank(Q), 2);
        let m = boundary_matrix(&hollow_triangle(), 2, Q).unwrap();
        assert!(m.cols.is_empty());
        let point = SimplicialComplex::simplex(s(&[4]));
        let m = boundary_matrix(&point, 0, Q).unwrap();
        assert_eq!(m.entries, vec![vec![1]]);
        let m = boundary_matrix(&point, -1, Q).unwrap();
        assert_eq!((m.rows.len(), m.cols.len()), (0, 1));
        assert!(boundary_matrix(&point, 2, Q).is_err());
        let m = boundary_matrix(&hollow_triangle(), 1, CoefficientField::Prime(3)).unwrap();
        assert!(m.entries.iter().flatten().all(|&x| (0..3).contains(&x)));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = SimplicialComplex::simplex(s(&[0, 1, 2, 3]));
        for k in 1..=3 {
            let d1 = boundary_matrix(&c, k, Q).unwrap();
            let d0 = boundary_matrix(&c, k - 1, Q).unwrap();
            for i in 0..d0.rows.len() {
                for j in 0..d1.cols.len() {
                    let v: i64 = (0..d0.cols.len()).map(|t| d0.entries[i][t] * d1.entries[t][j]).sum();
                    assert_eq!(v, 0);
                }
            }
        }
    }

    #[test]
    fn betti_examples() {
        let b = reduced_betti(&hollow_triangle(), Q).unwrap();
        assert_eq!((b.reduced(0), b.reduced(1)), (0, 1));
        let two_edges = cx(&[0, 1, 2, 3], &[&[0, 2], &[1, 3]]);
        assert_eq!(reduced_betti(&two_edges, Q).unwrap().reduced(0), 1);
        let full = SimplicialComplex::simplex(s(&[0, 1, 2]));
        assert!(reduced_betti(&full, Q).unwrap().0.iter().all(|&b| b == 0));
        let unit = SimplicialComplex::empty_face_only(s(&[0]));
        assert_eq!(reduced_betti(&unit, Q).unwrap().reduced(-1), 1);
        assert!(reduced_betti(&SimplicialComplex::void(s(&[0])), Q).unwrap().0.is_empty());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&SimplicialComplex::void(s(&[0])), Q).unwrap(), EtaValue::Finite(0));
        assert_eq!(eta(&SimplicialComplex::empty_face_only(s(&[0])), Q).unwrap(), EtaValue::Finite(0));
        assert_eq!(eta(&hollow_triangle(), Q).unwrap(), EtaValue::Finite(2));
        let two_edges = cx(&[0, 1, 2, 3], &[&[0, 2], &[1, 3]]);
        assert_eq!(eta(&two_edges, Q).unwrap(), EtaValue::Finite(1));
        assert_eq!(eta(&SimplicialComplex::simplex(s(&[0, 1, 2])), Q).unwrap(), EtaValue::Infinite);
    }

    #[test]
    fn eta_agrees_with_betti_profile() {
        // octahedron boundary: a 2-sphere with no apex
        let oct = cx(
            &[0, 1, 2, 3, 4, 5],
            &[&[0, 2, 4], &[0, 2, 5], &[0, 3, 4], &[0, 3, 5], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4], &[1, 3, 5]],
        );
        for field in [Q, GF2] {
            assert_eq!(eta(&oct, field).unwrap(), EtaValue::Finite(3));
            assert_eq!(reduced_betti(&oct, field).unwrap().eta(), EtaValue::Finite(3));
        }
    }

    #[test]
    fn projective_plane_is_field_sensitive() {
        // 6-vertex RP^2: H̃_1 = Z/2, so η is 2 over GF(2) and ∞ over Q
        let rp2 = cx(
            &[0, 1, 2, 3, 4, 5],
            &[
                &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5],
                &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5],
            ],
        );
        assert_eq!(eta(&rp2, Q).unwrap(), EtaValue::Infinite);
        assert_eq!(eta(&rp2, GF2).unwrap(), EtaValue::Finite(2));
        assert_eq!(eta(&rp2, CoefficientField::Prime(3)).unwrap(), EtaValue::Infinite);
    }

    #[test]
    fn face_budget_is_enforced() {
        let big = SimplicialComplex::simplex(ElementSet::full(12));
        let tight = Limits { face_budget: 100, ..Limits::default() };
        assert!(matches!(reduced_betti_with(&big, Q, &tight), Err(Error::Resource(_))));
    }

    #[test]
    fn delta_eta_examples() {
        let full = SimplicialComplex::simplex(s(&[0, 1, 2]));
        assert_eq!(delta_eta(&full, Q).unwrap(), Ratio::new(0, 1));
        let two_edges = cx(&[0, 1, 2, 3], &[&[0, 2], &[1, 3]]);
        assert_eq!(delta_eta(&two_edges, Q).unwrap(), Ratio::new(4, 1));
        // every pair is a face; only S = ground contributes, 3 / 2
        assert_eq!(delta_eta(&hollow_triangle(), Q).unwrap(), Ratio::new(3, 2));
        assert!(delta_eta(&cx(&[0, 1], &[&[0]]), Q).is_err());
        let tight = Limits { delta_eta_max_ground: 3, ..Limits::default() };
        assert!(matches!(delta_eta_with(&two_edges, Q, &tight), Err(Error::Resource(_))));
    }

    #[test]
    fn join_examples() {
        let a = cx(&[0, 1], &[&[0], &[1]]);
        let b = cx(&[2, 3], &[&[2], &[3]]);
        let r = check_join_superadditivity(&a, &b, Q).unwrap();
        assert_eq!((r.eta_join, r.eta_left, r.eta_right), (EtaValue::Finite(2), EtaValue::Finite(1), EtaValue::Finite(1)));
        assert!(r.holds);
        assert_eq!(r.slack, Some(0));
        let cone = check_join_superadditivity(&SimplicialComplex::simplex(s(&[4])), &a, Q).unwrap();
        assert_eq!(cone.eta_join, EtaValue::Infinite);
        let unit = check_join_superadditivity(&a, &SimplicialComplex::empty_face_only(s(&[5])), Q).unwrap();
        assert_eq!(unit.eta_right, EtaValue::Finite(0));
        assert_eq!(unit.eta_join, unit.eta_left);
        assert!(unit.holds);
    }

    #[test]
    fn mayer_vietoris_examples() {
        let t = hollow_triangle();
        let r = check_mayer_vietoris(&t, &t, Q).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.eta_union, r.eta_intersection);
        // two arcs of the circle meeting in two points
        let arc1 = cx(&[0, 1, 2], &[&[0, 1], &[1, 2]]);
        let arc2 = cx(&[0, 1, 2], &[&[0, 2]]);
        let r = check_mayer_vietoris(&arc1, &arc2, Q).unwrap();
        assert_eq!(r.eta_union, EtaValue::Finite(2));
        assert_eq!(r.eta_intersection, EtaValue::Finite(1));
        assert!(r.all_hold());
        assert!(r.tight[0]);
    }
}
