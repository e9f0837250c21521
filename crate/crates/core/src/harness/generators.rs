//! Seeded instance generators and the blown-up 4-cycle family.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matroid::Matroid;
use crate::set::ElementSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 4-cycle `1234` with `12`, `34` replaced by `p` parallel edges and
/// `23`, `41` by `q`, together with the partition matroids whose parts are
/// the edge stars of `1, 3` (for `m`) and of `2, 4` (for `n`), capacity 1.
/// The common independent sets are the matchings.
#[derive(Clone, Debug)]
pub struct TightnessExample {
    pub p: usize,
    pub q: usize,
    pub m: Matroid,
    pub n: Matroid,
    /// Endpoints of each element, vertices labelled `1..=4`.
    pub multigraph: Vec<(usize, usize)>,
}

pub fn tightness_example(p: usize, q: usize) -> Result<TightnessExample> {
    if p == 0 || q == 0 {
        return Err(Error::domain("p and q must be at least 1"));
    }
    let mut multigraph = Vec::with_capacity(2 * (p + q));
    for (pair, copies) in [((1, 2), p), ((2, 3), q), ((3, 4), p), ((4, 1), q)] {
        multigraph.extend(std::iter::repeat_n(pair, copies));
    }
    let star = |x: usize| -> ElementSet {
        multigraph
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == x || b == x)
            .map(|(i, _)| i)
            .collect()
    };
    let m = Matroid::partition(&[star(1), star(3)], &[1, 1])?;
    let n = Matroid::partition(&[star(2), star(4)], &[1, 1])?;
    Ok(TightnessExample { p, q, m, n, multigraph })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatroidKind {
    Uniform,
    Partition,
    Graphic,
    Free,
    /// One of the other kinds, chosen by the seed.
    Mixed,
}

impl FromStr for MatroidKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(MatroidKind::Uniform),
            "partition" => Ok(MatroidKind::Partition),
            "graphic" => Ok(MatroidKind::Graphic),
            "free" => Ok(MatroidKind::Free),
            "mixed" => Ok(MatroidKind::Mixed),
            _ => Err(Error::domain(format!(
                "unknown matroid kind {s:?}; use uniform, partition, graphic, free or mixed"
            ))),
        }
    }
}

impl fmt::Display for MatroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatroidKind::Uniform => "uniform",
            MatroidKind::Partition => "partition",
            MatroidKind::Graphic => "graphic",
            MatroidKind::Free => "free",
            MatroidKind::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

/// A loopless matroid on `0..n`, reproducible from `seed`.
pub fn random_matroid(seed: u64, n: usize, kind: MatroidKind) -> Result<Matroid> {
    random_matroid_from(&mut rng(seed), n, kind)
}

pub fn random_matroid_from(rng: &mut ChaCha8Rng, n: usize, kind: MatroidKind) -> Result<Matroid> {
    let kind = match kind {
        MatroidKind::Mixed => *[
            MatroidKind::Uniform,
            MatroidKind::Partition,
            MatroidKind::Partition,
            MatroidKind::Graphic,
            MatroidKind::Graphic,
            MatroidKind::Free,
        ]
        .choose(rng)
        .expect("non-empty"),
        k => k,
    };
    if n == 0 {
        return Matroid::free(0);
    }
    match kind {
        MatroidKind::Uniform => Matroid::uniform(n, rng.gen_range(1..=n)),
        MatroidKind::Free | MatroidKind::Mixed => Matroid::free(n),
        MatroidKind::Partition => {
            let blocks = rng.gen_range(1..=n);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            // the first `blocks` shuffled elements seed distinct parts
            let mut parts = vec![ElementSet::EMPTY; blocks];
            for (i, &x) in order.iter().enumerate() {
                let b = if i < blocks { i } else { rng.gen_range(0..blocks) };
                parts[b] = parts[b].with(x);
            }
            parts.sort();
            let caps: Vec<usize> = parts.iter().map(|p| rng.gen_range(1..=p.len())).collect();
            Matroid::partition(&parts, &caps)
        }
        MatroidKind::Graphic => {
            let vertices = rng.gen_range(2..=(n + 1).min(6));
            let edges: Vec<(usize, usize)> = (0..n)
                .map(|_| {
                    let a = rng.gen_range(0..vertices);
                    let b = (a + rng.gen_range(1..vertices)) % vertices;
                    (a.min(b), a.max(b))
                })
                .collect();
            Matroid::graphic(vertices, &edges)
        }
    }
}

/// The downward closure of a random family on `0..n` in which each set `S`
/// is drawn with probability `density^|S|`. Density 1 gives the full
/// simplex.
pub fn random_complex(seed: u64, n: usize, density: f64) -> Result<SimplicialComplex> {
    random_complex_from(&mut rng(seed), n, density)
}

pub fn random_complex_from(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Result<SimplicialComplex> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::domain("density must lie in [0, 1]"));
    }
    let ground = ElementSet::full(n);
    let generators: Vec<ElementSet> = ground
        .subsets()
        .filter(|s| rng.gen_bool(density.powi(s.len() as i32)))
        .collect();
    SimplicialComplex::new(ground, generators)
}

/// `m` random edges on `0..n`, each of size between 1 and `arity`.
pub fn random_hypergraph(seed: u64, n: usize, m: usize, arity: usize) -> Result<Hypergraph> {
    random_hypergraph_from(&mut rng(seed), n, m, arity)
}

pub fn random_hypergraph_from(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    arity: usize,
) -> Result<Hypergraph> {
    if n == 0 || arity == 0 {
        return Hypergraph::on_range(n, []);
    }
    let elements: Vec<usize> = (0..n).collect();
    let edges: Vec<ElementSet> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=arity.min(n));
            elements.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    Hypergraph::on_range(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{chi, chi_matroid};
    use crate::homology::{eta, CoefficientField, EtaValue};

    #[test]
    fn tightness_small_cases() {
        let t = tightness_example(1, 1).unwrap();
        assert_eq!(t.multigraph, vec![(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert_eq!(chi_matroid(&t.m).unwrap(), 2);
        let inter = Matroid::intersection_complex(&[&t.m, &t.n]).unwrap();
        assert_eq!(eta(&inter, CoefficientField::Rationals).unwrap(), EtaValue::Finite(1));

        let t = tightness_example(2, 1).unwrap();
        assert_eq!(t.multigraph.len(), 6);
        assert_eq!((chi_matroid(&t.m).unwrap(), chi_matroid(&t.n).unwrap()), (3, 3));
        assert_eq!(chi(t.m.complex()).unwrap().0, 3);
        assert!(tightness_example(0, 1).is_err());
    }

    #[test]
    fn tightness_connectivity_and_delta() {
        use crate::homology::delta_eta;
        use num_rational::Ratio;
        let t = tightness_example(2, 1).unwrap();
        let inter = Matroid::intersection_complex(&[&t.m, &t.n]).unwrap();
        assert_eq!(delta_eta(&inter, CoefficientField::Rationals).unwrap(), Ratio::from_integer(6));
        // the matching complex of the doubly blown 4-cycle has two components
        let t = tightness_example(2, 2).unwrap();
        let inter = Matroid::intersection_complex(&[&t.m, &t.n]).unwrap();
        let betti = crate::homology::reduced_betti(&inter, CoefficientField::Rationals).unwrap();
        assert_eq!(betti.reduced(0), 1);
        assert_eq!(eta(&inter, CoefficientField::Rationals).unwrap(), EtaValue::Finite(1));
    }

    #[test]
    fn generators_are_deterministic() {
        for kind in [MatroidKind::Uniform, MatroidKind::Partition, MatroidKind::Graphic, MatroidKind::Mixed] {
            let a = random_matroid(11, 6, kind).unwrap();
            let b = random_matroid(11, 6, kind).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.ground(), ElementSet::full(6));
            assert!(!a.has_loops());
        }
        assert_eq!(random_complex(3, 5, 0.5).unwrap(), random_complex(3, 5, 0.5).unwrap());
        assert_eq!(random_hypergraph(3, 6, 4, 3).unwrap(), random_hypergraph(3, 6, 4, 3).unwrap());
    }

    #[test]
    fn density_one_is_full_simplex() {
        let c = random_complex(9, 5, 1.0).unwrap();
        assert_eq!(c, SimplicialComplex::simplex(ElementSet::full(5)));
        assert!(random_complex(9, 5, 1.5).is_err());
    }

    #[test]
    fn partition_parts_cover_ground() {
        for seed in 0..20 {
            let m = random_matroid(seed, 6, MatroidKind::Partition).unwrap();
            assert_eq!(m.ground(), ElementSet::full(6));
        }
    }

    #[test]
    fn hypergraph_edges_are_nonempty() {
        for seed in 0..20 {
            let h = random_hypergraph(seed, 5, 6, 3).unwrap();
            assert!(h.edges().iter().all(|e| !e.is_empty() && e.len() <= 3));
        }
    }
}
