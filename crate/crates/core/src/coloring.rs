//! Chromatic and list-chromatic numbers of complexes.
//!
//! A colouring is a cover of the ground set by faces; since complexes are
//! closed downward, a cover can always be shrunk to a partition.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matroid::Matroid;
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    /// Element to colour id.
    pub assignment: BTreeMap<usize, usize>,
    /// Colour classes, indexed by colour id.
    pub classes: Vec<ElementSet>,
}

impl Coloring {
    fn from_classes(classes: Vec<ElementSet>) -> Self {
        let assignment = classes
            .iter()
            .enumerate()
            .flat_map(|(c, class)| class.iter().map(move |v| (v, c)))
            .collect();
        Coloring { assignment, classes }
    }

    /// Classes are disjoint faces covering the ground set.
    pub fn is_valid_for(&self, c: &SimplicialComplex) -> bool {
        let mut seen = ElementSet::EMPTY;
        for &class in &self.classes {
            if !class.is_disjoint(seen) || !c.is_face(class) {
                return false;
            }
            seen = seen.union(class);
        }
        seen == c.ground()
    }
}

/// A list of colours for each ground element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListAssignment {
    pub lists: BTreeMap<usize, Vec<usize>>,
}

impl ListAssignment {
    pub fn new(lists: BTreeMap<usize, Vec<usize>>) -> Result<Self> {
        let mut sizes = lists.values().map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l.len()
        });
        if let Some(k) = sizes.next() {
            if sizes.any(|s| s != k) {
                return Err(Error::domain("all lists must have the same size"));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// A choice function whose colour classes are faces of `c`, if any.
    pub fn choose(&self, c: &SimplicialComplex) -> Option<BTreeMap<usize, usize>> {
        fn go(
            items: &[(usize, &Vec<usize>)],
            c: &SimplicialComplex,
            classes: &mut BTreeMap<usize, ElementSet>,
            out: &mut BTreeMap<usize, usize>,
        ) -> bool {
            let Some(&(v, list)) = items.first() else {
                return true;
            };
            for &colour in list {
                let old = classes.get(&colour).copied().unwrap_or(ElementSet::EMPTY);
                if c.is_face(old.with(v)) {
                    classes.insert(colour, old.with(v));
                    out.insert(v, colour);
                    if go(&items[1..], c, classes, out) {
                        return true;
                    }
                    classes.insert(colour, old);
                    out.remove(&v);
                }
            }
            false
        }
        let items: Vec<_> = self.lists.iter().map(|(&v, l)| (v, l)).collect();
        let mut out = BTreeMap::new();
        go(&items, c, &mut BTreeMap::new(), &mut out).then_some(out)
    }
}

fn first_uncovered(c: &SimplicialComplex) -> Option<usize> {
    c.ground().difference(c.vertex_support()).min_element()
}

/// `χ(C)` with a partition witness.
pub fn chi(c: &SimplicialComplex) -> Result<(usize, Coloring)> {
    if let Some(v) = first_uncovered(c) {
        return Err(Error::NoColoring(v));
    }
    let facets = c.facets().unwrap_or(&[]);
    let cover = min_cover(facets, c.ground());
    let mut seen = ElementSet::EMPTY;
    let classes: Vec<ElementSet> = cover
        .into_iter()
        .map(|f| {
            let class = f.difference(seen);
            seen = seen.union(f);
            class
        })
        .collect();
    Ok((classes.len(), Coloring::from_classes(classes)))
}

/// Minimum cover of `target` by members of `sets` (which must cover it).
fn min_cover(sets: &[ElementSet], target: ElementSet) -> Vec<ElementSet> {
    if target.is_empty() {
        return Vec::new();
    }
    let mut sorted: Vec<ElementSet> = sets.iter().map(|s| s.intersection(target)).collect();
    sorted.sort();
    sorted.dedup();
    let widest = sorted.iter().map(|s| s.len()).max().unwrap_or(1).max(1);

    let mut best = greedy_cover(&sorted, target);
    let mut chosen = Vec::new();
    branch(&sorted, target, widest, &mut chosen, &mut best);
    best
}

fn greedy_cover(sets: &[ElementSet], target: ElementSet) -> Vec<ElementSet> {
    let mut left = target;
    let mut out = Vec::new();
    while !left.is_empty() {
        let pick = *sets
            .iter()
            .max_by(|a, b| {
                a.intersection(left)
                    .len()
                    .cmp(&b.intersection(left).len())
                    .then_with(|| b.cmp(a))
            })
            .expect("coverable");
        out.push(pick);
        left = left.difference(pick);
    }
    out
}

fn branch(
    sets: &[ElementSet],
    left: ElementSet,
    widest: usize,
    chosen: &mut Vec<ElementSet>,
    best: &mut Vec<ElementSet>,
) {
    let Some(v) = left.min_element() else {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    };
    if chosen.len() + left.len().div_ceil(widest) >= best.len() {
        return;
    }
    for &s in sets.iter().filter(|s| s.contains(v)) {
        chosen.push(s);
        branch(sets, left.difference(s), widest, chosen, best);
        chosen.pop();
    }
}

/// `max_X ⌈|X| / r(X)⌉`, the number of independent sets needed to cover
/// the ground set.
pub fn chi_matroid(m: &Matroid) -> Result<usize> {
    if let Some(v) = m.loops().min_element() {
        return Err(Error::LoopNotSupported(v));
    }
    Ok(m
        .ground()
        .subsets()
        .filter(|x| !x.is_empty())
        .map(|x| x.len().div_ceil(m.rank_unchecked(x)))
        .max()
        .unwrap_or(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiListValue {
    Exactly(usize),
    /// Every `k <= k_max` is defeated by some list assignment.
    Exceeds(usize),
}

impl ChiListValue {
    pub fn at_most(self, bound: usize) -> bool {
        matches!(self, ChiListValue::Exactly(k) if k <= bound)
    }
}

impl fmt::Display for ChiListValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiListValue::Exactly(k) => write!(f, "{k}"),
            ChiListValue::Exceeds(k) => write!(f, ">{k}"),
        }
    }
}

impl Serialize for ChiListValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ChiListValue::Exactly(k) => serializer.serialize_u64(*k as u64),
            ChiListValue::Exceeds(_) => serializer.collect_str(self),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiListResult {
    pub value: ChiListValue,
    /// An assignment of lists of size `value - 1` (or `k_max`) with no
    /// valid choice function.
    pub defeating: Option<ListAssignment>,
}

pub fn chi_list(c: &SimplicialComplex, k_max: usize) -> Result<ChiListResult> {
    chi_list_with(c, k_max, &Limits::default())
}

/// Least `k <= k_max` such that every `k`-list assignment is choosable.
///
/// Colours are renamed in order of first appearance, so each list consists
/// of some earlier colours plus a run of fresh consecutive ones; every
/// assignment is equivalent under a palette permutation to one of these.
pub fn chi_list_with(c: &SimplicialComplex, k_max: usize, limits: &Limits) -> Result<ChiListResult> {
    let ground = c.ground();
    let n = ground.len();
    if n > limits.chi_list_max_ground {
        return Err(Error::resource(format!(
            "list colouring limited to ground size {}, got {n}",
            limits.chi_list_max_ground
        )));
    }
    if k_max > limits.chi_list_max_k {
        return Err(Error::resource(format!(
            "list colouring limited to k <= {}, got {k_max}",
            limits.chi_list_max_k
        )));
    }
    if k_max * n > 64 {
        return Err(Error::resource("palette exceeds 64 colours"));
    }
    let (lower, _) = chi(c)?;
    let elements = ground.to_vec();
    let constant = |k: usize| {
        ListAssignment { lists: elements.iter().map(|&v| (v, (0..k).collect())).collect() }
    };
    if lower > k_max {
        return Ok(ChiListResult {
            value: ChiListValue::Exceeds(k_max),
            defeating: (k_max > 0).then(|| constant(k_max)),
        });
    }
    // face lookup on local indices
    let faces: Vec<bool> = (0u64..1 << n)
        .map(|mask| {
            let s = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elements[i]).collect();
            c.is_face(s)
        })
        .collect();

    let mut defeating = (lower > 0).then(|| constant(lower - 1));
    for k in lower.max(1)..=k_max {
        match find_unchoosable(n, k, &faces) {
            None => return Ok(ChiListResult { value: ChiListValue::Exactly(k), defeating }),
            Some(lists) => {
                defeating = Some(ListAssignment {
                    lists: lists
                        .iter()
                        .enumerate()
                        .map(|(i, &mask)| (elements[i], bits(mask)))
                        .collect(),
                });
            }
        }
    }
    if n == 0 {
        return Ok(ChiListResult { value: ChiListValue::Exactly(0), defeating: None });
    }
    Ok(ChiListResult { value: ChiListValue::Exceeds(k_max), defeating })
}

fn bits(mask: u64) -> Vec<usize> {
    ElementSet::from_bits(mask).to_vec()
}

/// Colour masks per local vertex for the first canonical `k`-list
/// assignment with no face-valued choice function.
fn find_unchoosable(n: usize, k: usize, faces: &[bool]) -> Option<Vec<u64>> {
    // split the enumeration at a shallow depth for the thread pool
    let split = n.min(2);
    let mut prefixes = Vec::new();
    enumerate_lists(n, k, split, &mut Vec::new(), 0, &mut |lists, used| {
        prefixes.push((lists.to_vec(), used));
        false
    });
    prefixes.par_iter().find_map_first(|(prefix, used)| {
        let mut found = None;
        let mut lists = prefix.clone();
        enumerate_lists(n, k, n, &mut lists, *used, &mut |full, _| {
            if choosable(full, faces, &mut vec![0u64; 64], 0) {
                false
            } else {
                found = Some(full.to_vec());
                true
            }
        });
        found
    })
}

/// Extends `lists` up to `depth` vertices; `visit` returns `true` to stop.
fn enumerate_lists(
    n: usize,
    k: usize,
    depth: usize,
    lists: &mut Vec<u64>,
    used: usize,
    visit: &mut dyn FnMut(&[u64], usize) -> bool,
) -> bool {
    if lists.len() == depth.min(n) {
        return visit(lists, used);
    }
    for fresh in (0..=k).rev() {
        let new_mask = ((1u64 << fresh) - 1) << used;
        let mut stop = false;
        for_each_combination(used, k - fresh, &mut |old| {
            lists.push(old | new_mask);
            stop = enumerate_lists(n, k, depth, lists, used + fresh, visit);
            lists.pop();
            stop
        });
        if stop {
            return true;
        }
    }
    false
}

/// Calls `f` on every `size`-subset of `0..pool` as a mask, in
/// lexicographic order, until `f` returns `true`.
fn for_each_combination(pool: usize, size: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn go(start: usize, pool: usize, size: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if size == 0 {
            return f(acc);
        }
        for x in start..=pool - size {
            if go(x + 1, pool, size - 1, acc | 1 << x, f) {
                return true;
            }
        }
        false
    }
    if size > pool {
        return false;
    }
    go(0, pool, size, 0, f)
}

fn choosable(lists: &[u64], faces: &[bool], classes: &mut [u64], v: usize) -> bool {
    let Some(&list) = lists.get(v) else {
        return true;
    };
    let mut rest = list;
    while rest != 0 {
        let colour = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let old = classes[colour];
        let grown = old | 1 << v;
        if faces[grown as usize] {
            classes[colour] = grown;
            if choosable(lists, faces, classes, v + 1) {
                classes[colour] = old;
                return true;
            }
            classes[colour] = old;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiSumReport {
    pub chi_m: usize,
    pub chi_n: usize,
    pub chi_intersection: usize,
    /// Present when the instance is within list-colouring limits and the
    /// bound does not exceed the list size limit.
    pub chi_list: Option<ChiListValue>,
    pub bound: usize,
    pub slack: usize,
    pub holds: bool,
}

/// `χ(M ∩ N) <= χ(M) + χ(N)` and, within limits, the same for `χ_ℓ`.
pub fn check_chi_sum(m: &Matroid, n: &Matroid) -> Result<ChiSumReport> {
    check_chi_sum_with(m, n, &Limits::default())
}

pub fn check_chi_sum_with(m: &Matroid, n: &Matroid, limits: &Limits) -> Result<ChiSumReport> {
    let inter = Matroid::intersection_complex(&[m, n])?;
    if let Some(v) = first_uncovered(&inter) {
        return Err(Error::LoopNotSupported(v));
    }
    let (chi_m, chi_n) = (chi_matroid(m)?, chi_matroid(n)?);
    let (chi_intersection, _) = chi(&inter)?;
    let bound = chi_m + chi_n;
    let chi_list = if inter.ground().len() <= limits.chi_list_max_ground && bound <= limits.chi_list_max_k {
        Some(chi_list_with(&inter, bound, limits)?.value)
    } else {
        None
    };
    let holds = chi_intersection <= bound && chi_list.is_none_or(|v| v.at_most(bound));
    Ok(ChiSumReport {
        chi_m,
        chi_n,
        chi_intersection,
        chi_list,
        bound,
        slack: bound.saturating_sub(chi_intersection),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::ElementSet as S;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(S::full(n), facets.iter().map(|f| f.iter().copied().collect())).unwrap()
    }

    /// C4 on edges 0=12, 1=23, 2=34, 3=41: matchings {0,2}, {1,3}.
    fn c4_matching() -> SimplicialComplex {
        cx(4, &[&[0, 2], &[1, 3]])
    }

    #[test]
    fn chi_examples() {
        let (k, col) = chi(&SimplicialComplex::simplex(S::full(4))).unwrap();
        assert_eq!(k, 1);
        assert!(col.is_valid_for(&SimplicialComplex::simplex(S::full(4))));
        let (k, col) = chi(&c4_matching()).unwrap();
        assert_eq!(k, 2);
        assert_eq!(col.classes, vec![S::from([0, 2]), S::from([1, 3])]);
        let part = Matroid::partition(&[S::from([0, 1, 2]), S::from([3, 4])], &[1, 1]).unwrap();
        assert_eq!(chi(part.complex()).unwrap().0, 3);
        assert_eq!(chi(&cx(3, &[&[0]])), Err(Error::NoColoring(1)));
    }

    #[test]
    fn chi_witness_is_partition() {
        // overlapping facets force trimming of later classes
        let c = cx(5, &[&[0, 1, 2], &[2, 3], &[3, 4], &[0, 4]]);
        let (k, col) = chi(&c).unwrap();
        assert_eq!(k, 2);
        assert!(col.is_valid_for(&c));
        assert_eq!(col.assignment.len(), 5);
    }

    #[test]
    fn chi_matroid_examples() {
        assert_eq!(chi_matroid(&Matroid::free(5).unwrap()).unwrap(), 1);
        assert_eq!(chi_matroid(&Matroid::uniform(4, 2).unwrap()).unwrap(), 2);
        assert_eq!(chi_matroid(&Matroid::uniform(7, 3).unwrap()).unwrap(), 3);
        let with_loop = Matroid::free(3).unwrap().contract(S::EMPTY).unwrap();
        assert_eq!(chi_matroid(&with_loop).unwrap(), 1);
        let loopy = Matroid::uniform(3, 1).unwrap().contract(S::from([0])).unwrap();
        assert!(matches!(chi_matroid(&loopy), Err(Error::LoopNotSupported(_))));
    }

    #[test]
    fn chi_list_examples() {
        let r = chi_list(&SimplicialComplex::simplex(S::full(3)), 3).unwrap();
        assert_eq!(r.value, ChiListValue::Exactly(1));
        let pair = cx(2, &[&[0], &[1]]);
        let r = chi_list(&pair, 3).unwrap();
        assert_eq!(r.value, ChiListValue::Exactly(2));
        let lists = r.defeating.unwrap();
        assert_eq!(lists.lists[&0], vec![0]);
        assert_eq!(lists.lists[&1], vec![0]);
        assert_eq!(lists.choose(&pair), None);
        assert_eq!(chi_list(&c4_matching(), 3).unwrap().value, ChiListValue::Exactly(2));
    }

    #[test]
    fn chi_list_exceeds_kmax() {
        // the hollow triangle's complement: three points, no edges, χ = 3
        let points = cx(3, &[&[0], &[1], &[2]]);
        let r = chi_list(&points, 2).unwrap();
        assert_eq!(r.value, ChiListValue::Exceeds(2));
        assert_eq!(r.defeating.unwrap().choose(&points), None);
        assert_eq!(chi_list(&points, 3).unwrap().value, ChiListValue::Exactly(3));
    }

    #[test]
    fn chi_list_can_exceed_chi() {
        // K_{2,4} as a graph: its independence complex has χ = 2 but the
        // classic lists {1,2},{3,4} vs {1,3},{1,4},{2,3},{2,4} defeat k = 2.
        let edges: Vec<S> = [0, 1]
            .iter()
            .flat_map(|&a| (2..6).map(move |b| S::from([a, b])))
            .collect();
        let h = crate::hypergraph::Hypergraph::on_range(6, edges).unwrap();
        let c = h.independence_complex();
        assert_eq!(chi(&c).unwrap().0, 2);
        let r = chi_list(&c, 2).unwrap();
        assert_eq!(r.value, ChiListValue::Exceeds(2));
        assert_eq!(r.defeating.unwrap().choose(&c), None);
    }

    #[test]
    fn chi_list_limits() {
        let big = SimplicialComplex::simplex(S::full(7));
        assert!(matches!(chi_list(&big, 2), Err(Error::Resource(_))));
        assert!(matches!(chi_list(&c4_matching(), 4), Err(Error::Resource(_))));
    }

    #[test]
    fn canonical_enumeration_counts() {
        // n = 1: one list. n = 2, k = 1: {0},{0} and {0},{1}.
        let count = |n, k| {
            let mut c = 0u64;
            enumerate_lists(n, k, n, &mut Vec::new(), 0, &mut |_, _| {
                c += 1;
                false
            });
            c
        };
        assert_eq!(count(1, 3), 1);
        assert_eq!(count(2, 1), 2);
        // n = 2, k = 2: second list shares 2, 1 or 0 colours with the first
        assert_eq!(count(2, 2), 1 + 2 + 1);
    }

    #[test]
    fn chi_sum_examples() {
        let free = Matroid::free(4).unwrap();
        let r = check_chi_sum(&free, &free).unwrap();
        assert_eq!((r.chi_intersection, r.bound), (1, 2));
        assert_eq!(r.chi_list, Some(ChiListValue::Exactly(1)));
        assert!(r.holds);
        // blown 4-cycle with p = q = 1
        let m = Matroid::partition(&[S::from([0, 3]), S::from([1, 2])], &[1, 1]).unwrap();
        let n = Matroid::partition(&[S::from([0, 1]), S::from([2, 3])], &[1, 1]).unwrap();
        let r = check_chi_sum(&m, &n).unwrap();
        assert_eq!((r.chi_m, r.chi_n, r.chi_intersection), (2, 2, 2));
        assert!(r.holds);
    }
}
