//! Named instances with provenance: curated matroid pairs, the tightness
//! family, and seeded random pairs, complexes and hypergraphs.

use rand::Rng;

use super::generators::{
    random_complex_from, random_hypergraph_from, random_matroid_from, rng, tightness_example,
    MatroidKind,
};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::matroid::Matroid;
use crate::set::ElementSet;

/// Seed of the standard corpus.
pub const CORPUS_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct MatroidPair {
    pub id: String,
    pub provenance: String,
    pub m: Matroid,
    pub n: Matroid,
}

impl MatroidPair {
    pub fn size(&self) -> usize {
        self.m.ground().len()
    }
}

#[derive(Clone, Debug)]
pub struct ComplexPair {
    pub id: String,
    pub provenance: String,
    pub a: SimplicialComplex,
    pub b: SimplicialComplex,
}

#[derive(Clone, Debug)]
pub struct NamedHypergraph {
    pub id: String,
    pub provenance: String,
    pub h: Hypergraph,
}

/// Sizes of the standard corpus.
#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub seed: u64,
    pub random_pairs: usize,
    pub pair_nmax: usize,
    pub complex_pairs: usize,
    pub complex_nmax: usize,
    /// Each side of a join pair has at most this many elements.
    pub join_side_max: usize,
    pub hypergraphs: usize,
    pub hypergraph_nmax: usize,
    pub include_curated: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: CORPUS_SEED,
            random_pairs: 220,
            pair_nmax: 7,
            complex_pairs: 520,
            complex_nmax: 7,
            join_side_max: 4,
            hypergraphs: 320,
            hypergraph_nmax: 8,
            include_curated: true,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub pairs: Vec<MatroidPair>,
    /// Complex pairs on a common ground set.
    pub complex_pairs: Vec<ComplexPair>,
    /// Complex pairs each on `0..k`; joins shift the second past the first.
    pub join_pairs: Vec<ComplexPair>,
    pub hypergraphs: Vec<NamedHypergraph>,
}

/// A random pair of loopless matroids on `0..n`.
pub fn random_pair(seed: u64, n: usize) -> Result<(Matroid, Matroid)> {
    let mut r = rng(seed);
    let m = random_matroid_from(&mut r, n, MatroidKind::Mixed)?;
    let n2 = random_matroid_from(&mut r, n, MatroidKind::Mixed)?;
    Ok((m, n2))
}

/// Two random complexes on `0..n`, densities drawn from the seed.
pub fn random_complex_pair(seed: u64, n: usize) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let mut r = rng(seed);
    let da = r.gen_range(0.25..0.9);
    let db = r.gen_range(0.25..0.9);
    Ok((random_complex_from(&mut r, n, da)?, random_complex_from(&mut r, n, db)?))
}

/// Two random complexes on `0..na` and `0..nb`.
pub fn random_join_pair(seed: u64, na: usize, nb: usize) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let mut r = rng(seed);
    let da = r.gen_range(0.25..0.9);
    let db = r.gen_range(0.25..0.9);
    Ok((random_complex_from(&mut r, na, da)?, random_complex_from(&mut r, nb, db)?))
}

/// A random hypergraph on `0..n` with edge count and arity from the seed.
pub fn random_game_hypergraph(seed: u64, n: usize) -> Result<Hypergraph> {
    let mut r = rng(seed);
    let m = r.gen_range(1..=6);
    let arity = r.gen_range(1..=4);
    random_hypergraph_from(&mut r, n, m, arity)
}

/// Mixes a base seed with an index.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn curated_pairs() -> Result<Vec<MatroidPair>> {
    let mut out = Vec::new();
    let mut push = |id: &str, provenance: String, m: Matroid, n: Matroid| {
        out.push(MatroidPair { id: id.to_string(), provenance, m, n });
    };
    for n in 1..=5 {
        push(&format!("free-{n}"), format!("free({n}) x free({n})"), Matroid::free(n)?, Matroid::free(n)?);
    }
    push("u12-u12", "uniform(2,1) x uniform(2,1)".into(), Matroid::uniform(2, 1)?, Matroid::uniform(2, 1)?);
    push("u24-free", "uniform(4,2) x free(4)".into(), Matroid::uniform(4, 2)?, Matroid::free(4)?);
    push("u23-free", "uniform(3,2) x free(3)".into(), Matroid::uniform(3, 2)?, Matroid::free(3)?);
    push("u14-u24", "uniform(4,1) x uniform(4,2)".into(), Matroid::uniform(4, 1)?, Matroid::uniform(4, 2)?);
    push("u37-u37", "uniform(7,3) x uniform(7,3)".into(), Matroid::uniform(7, 3)?, Matroid::uniform(7, 3)?);
    push(
        "one-part-free",
        "partition([0..4], [1]) x free(4)".into(),
        Matroid::partition(&[ElementSet::full(4)], &[1])?,
        Matroid::free(4)?,
    );
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    push(
        "k4-partition",
        "graphic(K4) x partition({0,1,2},{3,4,5}; 1,2)".into(),
        Matroid::graphic(4, &k4)?,
        Matroid::partition(&[ElementSet::from([0, 1, 2]), ElementSet::from([3, 4, 5])], &[1, 2])?,
    );
    push("k4-k4", "graphic(K4) x graphic(K4)".into(), Matroid::graphic(4, &k4)?, Matroid::graphic(4, &k4)?);
    for (p, q) in [(1, 1), (2, 1), (1, 2)] {
        let t = tightness_example(p, q)?;
        push(&format!("blown-c4-{p}-{q}"), format!("tightness_example({p},{q})"), t.m, t.n);
    }
    Ok(out)
}

impl Corpus {
    pub fn standard() -> Result<Corpus> {
        Corpus::build(&CorpusSpec::default())
    }

    pub fn build(spec: &CorpusSpec) -> Result<Corpus> {
        let mut corpus = Corpus::default();
        if spec.include_curated {
            corpus.pairs = curated_pairs()?
                .into_iter()
                .filter(|p| p.size() <= spec.pair_nmax)
                .collect();
        }
        let span = |lo: usize, hi: usize, i: usize| lo + i % (hi.max(lo) - lo + 1);
        for i in 0..spec.random_pairs {
            let seed = derive_seed(spec.seed, i as u64);
            let n = span(2, spec.pair_nmax, i);
            let (m, n2) = random_pair(seed, n)?;
            corpus.pairs.push(MatroidPair {
                id: format!("pair-{i:04}"),
                provenance: format!("random_pair(seed={seed}, n={n})"),
                m,
                n: n2,
            });
        }
        for i in 0..spec.complex_pairs {
            let seed = derive_seed(spec.seed ^ 0xC0, i as u64);
            let n = span(1, spec.complex_nmax, i);
            let (a, b) = random_complex_pair(seed, n)?;
            corpus.complex_pairs.push(ComplexPair {
                id: format!("complexes-{i:04}"),
                provenance: format!("random_complex_pair(seed={seed}, n={n})"),
                a,
                b,
            });
            let na = span(1, spec.join_side_max, i);
            let nb = span(1, spec.join_side_max, i / spec.join_side_max.max(1));
            let (a, b) = random_join_pair(seed, na, nb)?;
            corpus.join_pairs.push(ComplexPair {
                id: format!("join-{i:04}"),
                provenance: format!("random_join_pair(seed={seed}, na={na}, nb={nb})"),
                a,
                b,
            });
        }
        for i in 0..spec.hypergraphs {
            let seed = derive_seed(spec.seed ^ 0x4E, i as u64);
            let n = span(1, spec.hypergraph_nmax, i);
            corpus.hypergraphs.push(NamedHypergraph {
                id: format!("hypergraph-{i:04}"),
                provenance: format!("random_game_hypergraph(seed={seed}, n={n})"),
                h: random_game_hypergraph(seed, n)?,
            });
        }
        Ok(corpus)
    }

    /// `count` instances of every kind drawn from `seed`, sizes at most `nmax`.
    pub fn random(seed: u64, count: usize, nmax: usize) -> Result<Corpus> {
        Corpus::build(&CorpusSpec {
            seed,
            random_pairs: count,
            pair_nmax: nmax.max(2),
            complex_pairs: count,
            complex_nmax: nmax.max(1),
            join_side_max: nmax.clamp(1, 4),
            hypergraphs: count,
            hypergraph_nmax: nmax.max(1),
            include_curated: false,
        })
    }
}
