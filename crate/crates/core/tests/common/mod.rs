//! Brute-force oracles for small instances, written independently of the
//! library algorithms. They only ask a matroid whether a set is independent.

#![allow(dead_code)]

use std::collections::HashSet;

use matcolor::{ElementSet, Matroid};

fn independent_sets(m: &Matroid) -> Vec<ElementSet> {
    m.ground().subsets().filter(|s| m.is_independent(*s)).collect()
}

/// Largest set independent in both matroids, by enumeration.
pub fn max_common_independent(m: &Matroid, n: &Matroid) -> usize {
    m.ground().subsets().filter(|s| m.is_independent(*s) && n.is_independent(*s)).map(|s| s.len()).max().unwrap_or(0)
}

/// Fewest independent sets partitioning the ground set, by dynamic
/// programming over subsets. `None` if some element is a loop.
pub fn min_independent_partition(m: &Matroid) -> Option<usize> {
    let n = m.ground().max_element().map_or(0, |x| x + 1);
    assert_eq!(m.ground(), ElementSet::full(n));
    let size = 1usize << n;
    let mut best = vec![usize::MAX; size];
    best[0] = 0;
    for s in 1..size {
        let low = s & s.wrapping_neg();
        // submasks of s containing the lowest element
        let mut t = s;
        while t > 0 {
            if t & low != 0 && best[s ^ t] != usize::MAX && m.is_independent(ElementSet::from_bits(t as u64)) {
                best[s] = best[s].min(best[s ^ t] + 1);
            }
            t = (t - 1) & s;
        }
    }
    (best[size - 1] != usize::MAX).then_some(best[size - 1])
}

/// Multiplicity vectors of all multisets of `k` sets drawn from `sets`,
/// reduced to the maximal ones.
fn multiplicity_vectors(sets: &[ElementSet], k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut counts = vec![0u8; n];
    fn rec(sets: &[ElementSet], from: usize, left: usize, counts: &mut Vec<u8>, seen: &mut HashSet<Vec<u8>>) {
        if left == 0 {
            seen.insert(counts.clone());
            return;
        }
        for i in from..sets.len() {
            for v in sets[i].iter() {
                counts[v] += 1;
            }
            rec(sets, i, left - 1, counts, seen);
            for v in sets[i].iter() {
                counts[v] -= 1;
            }
        }
    }
    rec(sets, 0, k, &mut counts, &mut seen);
    let all: Vec<Vec<u8>> = seen.into_iter().collect();
    all.iter()
        .filter(|a| !all.iter().any(|b| b != *a && a.iter().zip(b.iter()).all(|(x, y)| x <= y)))
        .cloned()
        .collect()
}

/// `ν_{p,q}` as the literal maximum over multisets of `p` independent sets
/// of `m` and `q` independent sets of `n` of `Σ_v min(#v(A), #v(B))`.
pub fn nu(m: &Matroid, n: &Matroid, p: usize, q: usize) -> usize {
    let size = m.ground().max_element().map_or(0, |x| x + 1);
    let a = multiplicity_vectors(&independent_sets(m), p, size);
    let b = multiplicity_vectors(&independent_sets(n), q, size);
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(&u, &v)| u.min(v) as usize).sum::<usize>()))
        .max()
        .unwrap_or(0)
}
