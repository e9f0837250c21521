//! Maximum common independent sets of two matroids.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::ElementSet;

/// A common independent set `I` with a bipartition `(V1, V2)` of the ground
/// set such that `|I| = r_M(V1) + r_N(V2)`, which proves `I` is maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionCertificate {
    #[serde(rename = "I")]
    pub independent: ElementSet,
    #[serde(rename = "V1")]
    pub v1: ElementSet,
    #[serde(rename = "V2")]
    pub v2: ElementSet,
    pub size: usize,
}

impl IntersectionCertificate {
    pub fn verify(&self, m: &Matroid, n: &Matroid) -> bool {
        let i = self.independent;
        self.v1.union(self.v2) == m.ground()
            && self.v1.is_disjoint(self.v2)
            && m.is_independent(i)
            && n.is_independent(i)
            && self.size == i.len()
            && i.intersection(self.v1).len() == m.rank_unchecked(self.v1)
            && i.intersection(self.v2).len() == n.rank_unchecked(self.v2)
            && self.size == m.rank_unchecked(self.v1) + n.rank_unchecked(self.v2)
    }
}

fn same_ground(m: &Matroid, n: &Matroid) -> Result<()> {
    if m.ground() != n.ground() {
        return Err(Error::domain(format!(
            "ground sets differ: {} vs {}",
            m.ground(),
            n.ground()
        )));
    }
    Ok(())
}

pub fn max_common_independent(m: &Matroid, n: &Matroid) -> Result<IntersectionCertificate> {
    let (steps, reach) = run(m, n)?;
    let independent = *steps.last().expect("starts from the empty set");
    let cert = IntersectionCertificate {
        independent,
        v1: m.ground().difference(reach),
        v2: reach,
        size: independent.len(),
    };
    if !cert.verify(m, n) {
        return Err(Error::TheoremViolation(format!(
            "matroid intersection certificate failed to verify: {cert:?}"
        )));
    }
    Ok(cert)
}

/// The common independent sets visited by the augmenting-path algorithm,
/// starting from `∅`.
pub fn augmentation_sequence(m: &Matroid, n: &Matroid) -> Result<Vec<ElementSet>> {
    Ok(run(m, n)?.0)
}

pub fn nu11(m: &Matroid, n: &Matroid) -> Result<usize> {
    Ok(max_common_independent(m, n)?.size)
}

/// Returns the augmentation sequence and the final set reachable from the
/// sources of the exchange graph.
fn run(m: &Matroid, n: &Matroid) -> Result<(Vec<ElementSet>, ElementSet)> {
    same_ground(m, n)?;
    let elems = m.ground().to_vec();
    let mut current = ElementSet::EMPTY;
    let mut steps = vec![current];
    loop {
        match augmenting_path(m, n, &elems, current) {
            Ok(path) => {
                for v in path {
                    current = if current.contains(v) { current.without(v) } else { current.with(v) };
                }
                steps.push(current);
            }
            Err(reach) => return Ok((steps, reach)),
        }
    }
}

/// Shortest path in the exchange graph from `{y : I+y ∈ M}` to
/// `{y : I+y ∈ N}`, breadth first with the lowest element explored first.
/// On failure returns the vertices reachable from the sources.
fn augmenting_path(
    m: &Matroid,
    n: &Matroid,
    elems: &[usize],
    i: ElementSet,
) -> std::result::Result<Vec<usize>, ElementSet> {
    let outside: Vec<usize> = elems.iter().copied().filter(|&y| !i.contains(y)).collect();
    let inside: Vec<usize> = i.to_vec();
    let is_sink = |y: usize| n.is_independent(i.with(y));

    let mut parent: std::collections::HashMap<usize, Option<usize>> = Default::default();
    let mut queue = VecDeque::new();
    let mut reach = ElementSet::EMPTY;
    for &y in &outside {
        if m.is_independent(i.with(y)) {
            parent.insert(y, None);
            reach = reach.with(y);
            queue.push_back(y);
        }
    }
    while let Some(u) = queue.pop_front() {
        if !i.contains(u) && is_sink(u) {
            let mut path = vec![u];
            let mut cur = u;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(*p);
                cur = *p;
            }
            path.reverse();
            return Ok(path);
        }
        let next: Vec<usize> = if i.contains(u) {
            // x -> y when I - x + y ∈ M
            outside
                .iter()
                .copied()
                .filter(|&y| m.is_independent(i.without(u).with(y)))
                .collect()
        } else {
            // y -> x when I - x + y ∈ N
            inside
                .iter()
                .copied()
                .filter(|&x| n.is_independent(i.without(x).with(u)))
                .collect()
        };
        for w in next {
            if !reach.contains(w) {
                reach = reach.with(w);
                parent.insert(w, Some(u));
                queue.push_back(w);
            }
        }
    }
    Err(reach)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::ElementSet as S;

    fn blown_c4() -> (Matroid, Matroid) {
        // edges 0=12, 1=23, 2=34, 3=41
        let m = Matroid::partition(&[S::from([0, 3]), S::from([1, 2])], &[1, 1]).unwrap();
        let n = Matroid::partition(&[S::from([0, 1]), S::from([2, 3])], &[1, 1]).unwrap();
        (m, n)
    }

    #[test]
    fn identical_matroids() {
        let m = Matroid::uniform(5, 3).unwrap();
        let c = max_common_independent(&m, &m).unwrap();
        assert_eq!(c.size, 3);
        assert_eq!(c.v1, m.ground());
        assert_eq!(c.v2, S::EMPTY);
    }

    #[test]
    fn blown_cycle() {
        let (m, n) = blown_c4();
        let c = max_common_independent(&m, &n).unwrap();
        assert_eq!(c.size, 2);
        assert!(c.verify(&m, &n));
        assert_eq!(nu11(&m, &n).unwrap(), 2);
    }

    #[test]
    fn rank_one_against_free() {
        let c = max_common_independent(&Matroid::uniform(4, 1).unwrap(), &Matroid::free(4).unwrap()).unwrap();
        assert_eq!(c.size, 1);
        assert_eq!(nu11(&Matroid::free(6).unwrap(), &Matroid::free(6).unwrap()).unwrap(), 6);
        let one_part = Matroid::partition(&[S::full(5)], &[1]).unwrap();
        assert_eq!(nu11(&one_part, &Matroid::free(5).unwrap()).unwrap(), 1);
    }

    #[test]
    fn needs_a_long_augmenting_path() {
        // bipartite matching: edges a0b0, a0b1, a1b0 as elements 0, 1, 2;
        // greedy would take 0 and get stuck
        let m = Matroid::partition(&[S::from([0, 1]), S::from([2])], &[1, 1]).unwrap();
        let n = Matroid::partition(&[S::from([0, 2]), S::from([1])], &[1, 1]).unwrap();
        let seq = augmentation_sequence(&m, &n).unwrap();
        assert_eq!(seq.last().unwrap().len(), 2);
        for w in seq.windows(2) {
            assert_eq!(w[1].len(), w[0].len() + 1);
        }
    }

    #[test]
    fn mismatched_grounds() {
        assert!(nu11(&Matroid::free(3).unwrap(), &Matroid::free(4).unwrap()).is_err());
    }
}
