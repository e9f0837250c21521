//! Fixed instances shared by the kernel benchmarks.

use matcolor::harness::corpus::random_pair;
use matcolor::harness::generators::{random_complex, random_hypergraph, tightness_example};
use matcolor::{Hypergraph, Matroid, SimplicialComplex};

/// The blown 4-cycle intersection for `(p, q)`.
pub fn blown_cycle(p: usize, q: usize) -> SimplicialComplex {
    let t = tightness_example(p, q).expect("p, q >= 1");
    Matroid::intersection_complex(&[&t.m, &t.n]).expect("same ground")
}

pub fn dense_complex(n: usize) -> SimplicialComplex {
    random_complex(17, n, 0.75).expect("density in range")
}

pub fn game_hypergraph(n: usize) -> Hypergraph {
    random_hypergraph(23, n, 6, 3).expect("valid sizes")
}

pub fn matroid_pair(n: usize) -> (Matroid, Matroid) {
    random_pair(31, n).expect("valid size")
}

pub fn uniform_pair(n: usize, k: usize) -> (Matroid, Matroid) {
    (Matroid::uniform(n, k).expect("k <= n"), Matroid::uniform(n, k).expect("k <= n"))
}
