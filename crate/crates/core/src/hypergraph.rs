//! Finite hypergraphs, the minor operators on them, and their independence
//! complexes.
//!
//! Vertices are drawn from the shared `0..64` universe and keep their labels
//! under every operator, so a contraction of `{0,1,2}` by `{1}` lives on
//! `{0,2}` rather than being renumbered.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::set::{ElementSet, GroundSet};

/// A vertex set together with a family of distinct edges inside it.
///
/// Edges are kept sorted and deduplicated. Nested edges are allowed, since
/// contraction can produce them and the operators are applied literally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Hypergraph {
    vertices: GroundSet,
    edges: Vec<ElementSet>,
}

impl Hypergraph {
    pub fn new(vertices: GroundSet, edges: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let mut edges: Vec<ElementSet> = edges.into_iter().collect();
        if let Some(bad) = edges.iter().find(|e| !e.is_subset(vertices)) {
            return Err(Error::domain(format!(
                "edge {bad} is not contained in the vertex set {vertices}"
            )));
        }
        edges.sort();
        edges.dedup();
        Ok(Hypergraph { vertices, edges })
    }

    /// Hypergraph on `{0, .., n-1}`.
    pub fn on_range(n: usize, edges: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        Self::new(ElementSet::full(n), edges)
    }

    fn from_parts_unchecked(vertices: GroundSet, mut edges: Vec<ElementSet>) -> Self {
        edges.sort();
        edges.dedup();
        Hypergraph { vertices, edges }
    }

    pub fn vertices(&self) -> GroundSet {
        self.vertices
    }

    pub fn edges(&self) -> &[ElementSet] {
        &self.edges
    }

    pub fn has_edge(&self, e: ElementSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    fn check_within(&self, x: ElementSet) -> Result<()> {
        if x.is_subset(self.vertices) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{x} is not a subset of the vertex set {}",
                self.vertices
            )))
        }
    }

    /// `H - e`: drop one edge, keep every vertex.
    pub fn delete_edge(&self, e: ElementSet) -> Result<Self> {
        let idx = self.edges.binary_search(&e).map_err(|_| Error::NotFound(e))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Hypergraph { vertices: self.vertices, edges })
    }

    /// `H[X]`: vertex set `X`, edges contained in `X`.
    pub fn restrict(&self, x: ElementSet) -> Result<Self> {
        self.check_within(x)?;
        let edges = self.edges.iter().copied().filter(|e| e.is_subset(x)).collect();
        Ok(Hypergraph { vertices: x, edges })
    }

    /// `H / X`: vertex set `V \ X`, edges `e \ X` for every edge not inside `X`.
    pub fn contract(&self, x: ElementSet) -> Result<Self> {
        self.check_within(x)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.is_subset(x))
            .map(|e| e.difference(x))
            .collect();
        Ok(Self::from_parts_unchecked(self.vertices.difference(x), edges))
    }

    /// `H \ X`: vertex set `V \ X`, edges disjoint from `X`.
    pub fn delete_vertices(&self, x: ElementSet) -> Result<Self> {
        self.check_within(x)?;
        let edges = self.edges.iter().copied().filter(|e| e.is_disjoint(x)).collect();
        Ok(Hypergraph { vertices: self.vertices.difference(x), edges })
    }

    /// `H ~ X`: as `H \ X` but the vertex set stays `V`.
    pub fn sim(&self, x: ElementSet) -> Result<Self> {
        self.check_within(x)?;
        let edges = self.edges.iter().copied().filter(|e| e.is_disjoint(x)).collect();
        Ok(Hypergraph { vertices: self.vertices, edges })
    }

    /// Edge-wise union of hypergraphs on the same vertex set.
    pub fn union(&self, other: &Hypergraph) -> Result<Self> {
        if self.vertices != other.vertices {
            return Err(Error::domain("hypergraph union needs equal vertex sets"));
        }
        let edges = self.edges.iter().chain(other.edges.iter()).copied().collect();
        Ok(Self::from_parts_unchecked(self.vertices, edges))
    }

    /// Whether `s` contains no edge.
    pub fn is_independent(&self, s: ElementSet) -> bool {
        !self.edges.iter().any(|e| e.is_subset(s))
    }

    /// The edges that contain no other edge.
    pub fn minimal_edges(&self) -> Vec<ElementSet> {
        crate::set::minimal_sets(self.edges.iter().copied())
    }

    /// Whether `e` is an edge containing no other edge.
    pub fn is_minimal_edge(&self, e: ElementSet) -> bool {
        self.has_edge(e) && !self.edges.iter().any(|&f| f != e && f.is_subset(e))
    }

    /// `I(H)`, the complex of edge-free vertex subsets, by its facets.
    pub fn independence_complex(&self) -> SimplicialComplex {
        let minimal = self.minimal_edges();
        if minimal.first() == Some(&ElementSet::EMPTY) {
            return SimplicialComplex::void(self.vertices);
        }
        SimplicialComplex::from_predicate(self.vertices, |s| {
            !minimal.iter().any(|e| e.is_subset(s))
        })
    }

    /// Checks the three circuit properties in order: no empty edge, no
    /// nested pair, circuit elimination. Iteration is over edges in sorted
    /// order and elements ascending, so the witness is reproducible.
    pub fn check_circuit_axioms(&self) -> std::result::Result<(), CircuitViolation> {
        if self.edges.first() == Some(&ElementSet::EMPTY) {
            return Err(CircuitViolation {
                kind: ViolationKind::EmptyEdge,
                edges: vec![ElementSet::EMPTY],
                u: None,
                v: None,
            });
        }
        for &c1 in &self.edges {
            for &c2 in &self.edges {
                if c1 != c2 && c1.is_subset(c2) {
                    return Err(CircuitViolation {
                        kind: ViolationKind::NestedPair,
                        edges: vec![c1, c2],
                        u: None,
                        v: None,
                    });
                }
            }
        }
        for &c1 in &self.edges {
            for &c2 in &self.edges {
                if c1 == c2 {
                    continue;
                }
                let both = c1.union(c2);
                for u in c1.intersection(c2) {
                    let allowed = both.without(u);
                    for v in c1.difference(c2) {
                        let found = self
                            .edges
                            .iter()
                            .any(|c3| c3.contains(v) && c3.is_subset(allowed));
                        if !found {
                            return Err(CircuitViolation {
                                kind: ViolationKind::EliminationFailure,
                                edges: vec![c1, c2],
                                u: Some(u),
                                v: Some(v),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, [", self.vertices)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    EmptyEdge,
    NestedPair,
    EliminationFailure,
}

/// The first failed circuit property, with the edges and elements involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitViolation {
    pub kind: ViolationKind,
    pub edges: Vec<ElementSet>,
    pub u: Option<usize>,
    pub v: Option<usize>,
}

impl fmt::Display for CircuitViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::EmptyEdge => f.write_str("the empty set is an edge"),
            ViolationKind::NestedPair => {
                write!(f, "edge {} is contained in edge {}", self.edges[0], self.edges[1])
            }
            ViolationKind::EliminationFailure => write!(
                f,
                "no edge inside ({} ∪ {}) \\ {{{}}} contains {}",
                self.edges[0],
                self.edges[1],
                self.u.unwrap_or_default(),
                self.v.unwrap_or_default()
            ),
        }
    }
}

/// On-disk form: `{"n": int, "edges": [[int, ..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl HypergraphFile {
    pub fn build(&self) -> Result<Hypergraph> {
        check_universe(self.n)?;
        let edges = self
            .edges
            .iter()
            .map(|e| crate::io::element_set(self.n, e))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::on_range(self.n, edges)
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        let n = h.vertices().max_element().map_or(0, |m| m + 1);
        HypergraphFile { n, edges: h.edges().iter().map(|e| e.to_vec()).collect() }
    }
}

pub(crate) fn check_universe(n: usize) -> Result<()> {
    if n > crate::set::MAX_ELEMENTS {
        Err(Error::domain(format!(
            "ground size {n} exceeds the supported maximum of {}",
            crate::set::MAX_ELEMENTS
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> ElementSet {
        v.iter().copied().collect()
    }

    fn h(vs: &[usize], es: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(s(vs), es.iter().map(|e| s(e))).unwrap()
    }

    #[test]
    fn delete_edge_examples() {
        assert_eq!(h(&[1, 2], &[&[1, 2]]).delete_edge(s(&[1, 2])).unwrap(), h(&[1, 2], &[]));
        assert_eq!(
            h(&[1, 2, 3], &[&[1, 2], &[2, 3]]).delete_edge(s(&[1, 2])).unwrap(),
            h(&[1, 2, 3], &[&[2, 3]])
        );
        assert_eq!(h(&[1], &[]).delete_edge(s(&[1])), Err(Error::NotFound(s(&[1]))));
    }

    #[test]
    fn restrict_examples() {
        let g = h(&[1, 2, 3], &[&[1, 2], &[2, 3]]);
        assert_eq!(g.restrict(s(&[1, 2])).unwrap(), h(&[1, 2], &[&[1, 2]]));
        assert_eq!(g.restrict(g.vertices()).unwrap(), g);
        assert_eq!(g.restrict(ElementSet::EMPTY).unwrap(), h(&[], &[]));
        assert!(matches!(g.restrict(s(&[4])), Err(Error::Domain(_))));
    }

    #[test]
    fn contract_examples() {
        let g = h(&[1, 2, 3], &[&[1, 2], &[2, 3]]);
        assert_eq!(g.contract(s(&[2])).unwrap(), h(&[1, 3], &[&[1], &[3]]));
        assert_eq!(g.contract(ElementSet::EMPTY).unwrap(), g);
        assert_eq!(h(&[1, 2], &[&[1, 2]]).contract(s(&[1, 2])).unwrap(), h(&[], &[]));
        // duplicates collapse
        let d = h(&[1, 2, 3], &[&[1, 3], &[2, 3]]).contract(s(&[1, 2])).unwrap();
        assert_eq!(d.edges(), &[s(&[3])]);
    }

    #[test]
    fn delete_vertices_and_sim() {
        let g = h(&[1, 2, 3], &[&[1, 2], &[2, 3]]);
        assert_eq!(g.delete_vertices(s(&[2])).unwrap(), h(&[1, 3], &[]));
        assert_eq!(g.delete_vertices(ElementSet::EMPTY).unwrap(), g);
        assert_eq!(
            h(&[1, 2, 3], &[&[1, 2], &[3]]).delete_vertices(s(&[1])).unwrap(),
            h(&[2, 3], &[&[3]])
        );
        assert_eq!(g.sim(s(&[2])).unwrap(), h(&[1, 2, 3], &[]));
        assert_eq!(g.sim(ElementSet::EMPTY).unwrap(), g);
        let via_sim = g.sim(s(&[1])).unwrap().restrict(s(&[2, 3])).unwrap();
        assert_eq!(via_sim, g.delete_vertices(s(&[1])).unwrap());
    }

    #[test]
    fn independence_complex_examples() {
        let c = h(&[1, 2], &[&[1, 2]]).independence_complex();
        assert_eq!(c.facets().unwrap(), &[s(&[1]), s(&[2])]);
        let c = h(&[1, 2, 3], &[]).independence_complex();
        assert_eq!(c.facets().unwrap(), &[s(&[1, 2, 3])]);
        assert!(h(&[1], &[&[]]).independence_complex().is_void());
    }

    #[test]
    fn circuit_axiom_examples() {
        assert_eq!(h(&[1, 2, 3], &[&[1, 2, 3]]).check_circuit_axioms(), Ok(()));
        let err = h(&[1, 2], &[&[1], &[1, 2]]).check_circuit_axioms().unwrap_err();
        assert_eq!(err.kind, ViolationKind::NestedPair);
        let err = h(&[1, 2, 3], &[&[1, 2], &[2, 3]]).check_circuit_axioms().unwrap_err();
        assert_eq!(err.kind, ViolationKind::EliminationFailure);
        assert_eq!((err.u, err.v), (Some(2), Some(1)));
        assert_eq!(err.edges, vec![s(&[1, 2]), s(&[2, 3])]);
        let err = h(&[1], &[&[]]).check_circuit_axioms().unwrap_err();
        assert_eq!(err.kind, ViolationKind::EmptyEdge);
    }

    #[test]
    fn edges_outside_vertices_rejected() {
        assert!(Hypergraph::new(s(&[0, 1]), [s(&[2])]).is_err());
    }
}
