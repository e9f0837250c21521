//! Matroids given by an independence oracle, with lazily cached circuits and
//! independence complex.
//!
//! Minors are taken through the circuit representation: `M[X]`, `M / X` and
//! `M ~ X` are the independence complexes of the corresponding hypergraph
//! operators applied to `(V, circ(M))`. Minors may have loops; the public
//! constructors do not accept them.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hypergraph::{check_universe, Hypergraph};
use crate::set::{minimal_sets, ElementSet, GroundSet};

/// Ground sizes above this are refused by [`Matroid::from_independent_sets`],
/// whose exhaustive axiom check is quadratic in the number of faces.
pub const AXIOM_CHECK_MAX_GROUND: usize = 10;

#[derive(Clone, Debug)]
enum Oracle {
    Uniform { rank: usize },
    Partition { parts: Vec<(ElementSet, usize)> },
    Graphic { endpoints: Vec<(usize, usize)> },
    Circuits(Vec<ElementSet>),
    Complex(SimplicialComplex),
}

#[derive(Clone, Debug)]
pub struct Matroid {
    ground: GroundSet,
    oracle: Oracle,
    circuits: OnceLock<Vec<ElementSet>>,
    complex: OnceLock<SimplicialComplex>,
}

impl Matroid {
    fn with_oracle(ground: GroundSet, oracle: Oracle) -> Self {
        Matroid { ground, oracle, circuits: OnceLock::new(), complex: OnceLock::new() }
    }

    /// `U_{k,n}` on `{0, .., n-1}`.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        check_universe(n)?;
        if k > n {
            return Err(Error::domain(format!("uniform matroid needs k <= n, got k={k}, n={n}")));
        }
        if k == 0 && n > 0 {
            return Err(Error::LoopNotSupported(0));
        }
        Ok(Self::with_oracle(ElementSet::full(n), Oracle::Uniform { rank: k }))
    }

    /// The free matroid: every subset of `{0, .., n-1}` is independent.
    pub fn free(n: usize) -> Result<Self> {
        Self::uniform(n, n)
    }

    /// At most `capacities[i]` elements from `parts[i]`. The ground set is the
    /// union of the parts.
    pub fn partition(parts: &[ElementSet], capacities: &[usize]) -> Result<Self> {
        if parts.len() != capacities.len() {
            return Err(Error::domain("partition matroid needs one capacity per part"));
        }
        let mut ground = ElementSet::EMPTY;
        for (part, &cap) in parts.iter().zip(capacities) {
            if part.is_empty() {
                return Err(Error::domain("partition matroid parts must be non-empty"));
            }
            if cap == 0 {
                return Err(Error::domain("partition matroid capacities must be at least 1"));
            }
            if !part.is_disjoint(ground) {
                return Err(Error::domain(format!("part {part} overlaps an earlier part")));
            }
            ground = ground.union(*part);
        }
        let parts = parts.iter().copied().zip(capacities.iter().copied()).collect();
        Ok(Self::with_oracle(ground, Oracle::Partition { parts }))
    }

    /// Cycle matroid of a multigraph; element `i` is edge `edges[i]`.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_universe(edges.len())?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::domain(format!(
                    "edge {i} = ({u},{v}) has an endpoint outside 0..{vertices}"
                )));
            }
            if u == v {
                return Err(Error::LoopNotSupported(i));
            }
        }
        Ok(Self::with_oracle(
            ElementSet::full(edges.len()),
            Oracle::Graphic { endpoints: edges.to_vec() },
        ))
    }

    /// The matroid whose circuits are exactly `circuits`, after checking the
    /// circuit axioms.
    pub fn from_circuits(n: usize, circuits: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        check_universe(n)?;
        let h = Hypergraph::on_range(n, circuits)?;
        h.check_circuit_axioms().map_err(Error::InvalidCircuits)?;
        if let Some(c) = h.edges().iter().find(|c| c.len() == 1) {
            return Err(Error::LoopNotSupported(c.min_element().unwrap_or_default()));
        }
        let circuits = h.edges().to_vec();
        let m = Self::with_oracle(h.vertices(), Oracle::Circuits(circuits.clone()));
        let _ = m.circuits.set(circuits);
        Ok(m)
    }

    /// The matroid whose independent sets are the downward closure of
    /// `family`, after an exhaustive axiom check.
    pub fn from_independent_sets(
        n: usize,
        family: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self> {
        check_universe(n)?;
        if n > AXIOM_CHECK_MAX_GROUND {
            return Err(Error::resource(format!(
                "exhaustive axiom check is limited to ground size {AXIOM_CHECK_MAX_GROUND}, got {n}"
            )));
        }
        let complex = SimplicialComplex::new(ElementSet::full(n), family)?;
        verify_matroid_axioms(&complex).map_err(Error::NotAMatroid)?;
        if let Some(v) = complex.ground().difference(complex.vertex_support()).min_element() {
            return Err(Error::LoopNotSupported(v));
        }
        let m = Self::with_oracle(complex.ground(), Oracle::Complex(complex.clone()));
        let _ = m.complex.set(complex);
        Ok(m)
    }

    /// Internal constructor for minors: trusts the circuit family and allows
    /// loops.
    pub(crate) fn from_minimal_circuits(ground: GroundSet, circuits: Vec<ElementSet>) -> Self {
        let circuits = minimal_sets(circuits);
        let m = Self::with_oracle(ground, Oracle::Circuits(circuits.clone()));
        let _ = m.circuits.set(circuits);
        m
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Independence oracle. Sets leaving the ground set are dependent.
    pub fn is_independent(&self, s: ElementSet) -> bool {
        if !s.is_subset(self.ground) {
            return false;
        }
        match &self.oracle {
            Oracle::Uniform { rank } => s.len() <= *rank,
            Oracle::Partition { parts } => {
                parts.iter().all(|(part, cap)| s.intersection(*part).len() <= *cap)
            }
            Oracle::Graphic { endpoints } => is_forest(endpoints, s),
            Oracle::Circuits(cs) => !cs.iter().any(|c| c.is_subset(s)),
            Oracle::Complex(c) => c.is_face(s),
        }
    }

    /// The independence complex, facets being the bases.
    pub fn complex(&self) -> &SimplicialComplex {
        self.complex
            .get_or_init(|| SimplicialComplex::from_predicate(self.ground, |s| self.is_independent(s)))
    }

    /// Minimal dependent sets, sorted.
    pub fn circuits(&self) -> &[ElementSet] {
        self.circuits.get_or_init(|| {
            self.complex().circ().expect("independence complex of a matroid is never void")
        })
    }

    /// `(V, circ(M))`.
    pub fn circuit_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.ground, self.circuits().iter().copied())
            .expect("circuits lie inside the ground set")
    }

    /// All bases in lexicographic order.
    pub fn bases(&self) -> Vec<ElementSet> {
        self.complex().facets().expect("matroid complex is never void").to_vec()
    }

    pub fn rank(&self, x: ElementSet) -> Result<usize> {
        if !x.is_subset(self.ground) {
            return Err(Error::domain(format!("{x} is not inside the ground set {}", self.ground)));
        }
        Ok(self.rank_unchecked(x))
    }

    /// Greedy rank; `x` is intersected with the ground set.
    pub fn rank_unchecked(&self, x: ElementSet) -> usize {
        let mut basis = ElementSet::EMPTY;
        for v in x.intersection(self.ground) {
            if self.is_independent(basis.with(v)) {
                basis = basis.with(v);
            }
        }
        basis.len()
    }

    pub fn full_rank(&self) -> usize {
        self.rank_unchecked(self.ground)
    }

    /// Elements that are dependent on their own.
    pub fn loops(&self) -> ElementSet {
        self.ground.iter().filter(|&v| !self.is_independent(ElementSet::singleton(v))).collect()
    }

    pub fn has_loops(&self) -> bool {
        !self.loops().is_empty()
    }

    fn check_within(&self, x: ElementSet) -> Result<()> {
        if x.is_subset(self.ground) {
            Ok(())
        } else {
            Err(Error::domain(format!("{x} is not inside the ground set {}", self.ground)))
        }
    }

    /// `M[X] = I(H[X])`.
    pub fn restrict(&self, x: ElementSet) -> Result<Self> {
        self.check_within(x)?;
        let cs = self.circuits().iter().copied().filter(|c| c.is_subset(x)).collect();
        Ok(self.checked_minor(Self::from_minimal_circuits(x, cs)))
    }

    /// `M / X = I(H / X)`: minimal members of `{C \ X : C ⊄ X}` on `V \ X`.
    pub fn contract(&self, x: ElementSet) -> Result<Self> {
        self.check_within(x)?;
        let cs = self
            .circuits()
            .iter()
            .filter(|c| !c.is_subset(x))
            .map(|c| c.difference(x))
            .collect();
        Ok(self.checked_minor(Self::from_minimal_circuits(self.ground.difference(x), cs)))
    }

    /// `I(H / X)` computed literally from the contracted hypergraph, without
    /// minimalizing. Kept as an independent route to cross-check
    /// [`Matroid::contract`].
    pub fn contract_complex_literal(&self, x: ElementSet) -> Result<SimplicialComplex> {
        Ok(self.circuit_hypergraph().contract(x)?.independence_complex())
    }

    /// `M ~ X = I(H ~ X)`: circuits meeting `X` are dropped, ground unchanged.
    pub fn sim(&self, x: ElementSet) -> Result<Self> {
        self.check_within(x)?;
        let cs = self.circuits().iter().copied().filter(|c| c.is_disjoint(x)).collect();
        Ok(self.checked_minor(Self::from_minimal_circuits(self.ground, cs)))
    }

    pub fn sim_element(&self, v: usize) -> Result<Self> {
        if !self.ground.contains(v) {
            return Err(Error::domain(format!("{v} is not in the ground set {}", self.ground)));
        }
        self.sim(ElementSet::singleton(v))
    }

    fn checked_minor(&self, m: Matroid) -> Matroid {
        #[cfg(debug_assertions)]
        if m.ground.len() <= 7 {
            debug_assert_eq!(verify_matroid_axioms(m.complex()), Ok(()), "minor is not a matroid");
        }
        m
    }

    /// Whether every independent set of `self` is independent in `other`.
    pub fn is_subcomplex_of(&self, other: &Matroid) -> bool {
        self.ground == other.ground && self.bases().iter().all(|b| other.is_independent(*b))
    }

    /// The complex of sets independent in every matroid of `ms`.
    pub fn intersection_complex(ms: &[&Matroid]) -> Result<SimplicialComplex> {
        let Some(first) = ms.first() else {
            return Err(Error::domain("intersection of an empty list of matroids"));
        };
        if ms.iter().any(|m| m.ground != first.ground) {
            return Err(Error::domain("matroids must share a ground set"));
        }
        Ok(SimplicialComplex::from_predicate(first.ground, |s| {
            ms.iter().all(|m| m.is_independent(s))
        }))
    }

    /// Loop-free description as a circuits file.
    pub fn to_file(&self) -> MatroidFile {
        let n = self.ground.max_element().map_or(0, |m| m + 1);
        MatroidFile::Circuits {
            n,
            circuits: self.circuits().iter().map(|c| c.to_vec()).collect(),
        }
    }

    fn kind_name(&self) -> &'static str {
        match self.oracle {
            Oracle::Uniform { .. } => "uniform",
            Oracle::Partition { .. } => "partition",
            Oracle::Graphic { .. } => "graphic",
            Oracle::Circuits(_) => "circuits",
            Oracle::Complex(_) => "independent",
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.complex() == other.complex()
    }
}

impl Eq for Matroid {}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} matroid on {} of rank {}", self.kind_name(), self.ground, self.full_rank())
    }
}

fn is_forest(endpoints: &[(usize, usize)], s: ElementSet) -> bool {
    let mut parent: Vec<usize> = Vec::new();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in s {
        let (u, v) = endpoints[e];
        let need = u.max(v) + 1;
        if parent.len() < need {
            let old = parent.len();
            parent.extend(old..need);
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// Why a complex fails to be a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxiomCounterexample {
    MissingEmptySet,
    Augmentation { small: ElementSet, large: ElementSet },
}

impl fmt::Display for AxiomCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomCounterexample::MissingEmptySet => f.write_str("the empty set is not independent"),
            AxiomCounterexample::Augmentation { small, large } => {
                write!(f, "no element of {large} \\ {small} extends {small}")
            }
        }
    }
}

/// Exhaustive check of `∅ ∈ C` and the augmentation axiom over all pairs of
/// faces, scanning the smaller set and then the larger set in lexicographic
/// order.
pub fn verify_matroid_axioms(c: &SimplicialComplex) -> std::result::Result<(), AxiomCounterexample> {
    if c.is_void() {
        return Err(AxiomCounterexample::MissingEmptySet);
    }
    let mut faces = c.faces();
    faces.sort();
    for &small in &faces {
        for &large in &faces {
            if small.len() >= large.len() {
                continue;
            }
            let augments = large.difference(small).iter().any(|v| c.is_face(small.with(v)));
            if !augments {
                return Err(AxiomCounterexample::Augmentation { small, large });
            }
        }
    }
    Ok(())
}

/// On-disk matroid description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidFile {
    Uniform { n: usize, k: usize },
    Partition { parts: Vec<Vec<usize>>, capacities: Vec<usize> },
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Circuits { n: usize, circuits: Vec<Vec<usize>> },
    Independent { n: usize, sets: Vec<Vec<usize>> },
}

impl MatroidFile {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidFile::Uniform { n, k } => Matroid::uniform(*n, *k),
            MatroidFile::Partition { parts, capacities } => {
                let parts = parts
                    .iter()
                    .map(|p| crate::io::element_set(crate::set::MAX_ELEMENTS, p))
                    .collect::<Result<Vec<_>>>()?;
                Matroid::partition(&parts, capacities)
            }
            MatroidFile::Graphic { vertices, edges } => Matroid::graphic(*vertices, edges),
            MatroidFile::Circuits { n, circuits } => {
                check_universe(*n)?;
                let cs = circuits
                    .iter()
                    .map(|c| crate::io::element_set(*n, c))
                    .collect::<Result<Vec<_>>>()?;
                Matroid::from_circuits(*n, cs)
            }
            MatroidFile::Independent { n, sets } => {
                check_universe(*n)?;
                let fam = sets
                    .iter()
                    .map(|c| crate::io::element_set(*n, c))
                    .collect::<Result<Vec<_>>>()?;
                Matroid::from_independent_sets(*n, fam)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> ElementSet {
        v.iter().copied().collect()
    }

    #[test]
    fn from_circuits_examples() {
        let u23 = Matroid::from_circuits(3, [s(&[0, 1, 2])]).unwrap();
        assert_eq!(u23, Matroid::uniform(3, 2).unwrap());
        let free = Matroid::from_circuits(2, []).unwrap();
        assert_eq!(free, Matroid::free(2).unwrap());
        let pm = Matroid::from_circuits(4, [s(&[0, 1]), s(&[2, 3])]).unwrap();
        let direct = Matroid::partition(&[s(&[0, 1]), s(&[2, 3])], &[1, 1]).unwrap();
        assert_eq!(pm, direct);
        assert_eq!(direct.circuits(), &[s(&[0, 1]), s(&[2, 3])]);
        assert!(matches!(
            Matroid::from_circuits(3, [s(&[0, 1]), s(&[1, 2])]),
            Err(Error::InvalidCircuits(_))
        ));
        assert_eq!(Matroid::from_circuits(2, [s(&[1])]), Err(Error::LoopNotSupported(1)));
    }

    #[test]
    fn constructor_examples() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u.bases(), vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        let tri = Matroid::graphic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.circuits(), &[s(&[0, 1, 2])]);
        assert!(matches!(Matroid::uniform(2, 3), Err(Error::Domain(_))));
        assert_eq!(Matroid::uniform(2, 0), Err(Error::LoopNotSupported(0)));
        assert!(Matroid::uniform(0, 0).is_ok());
        assert!(Matroid::partition(&[s(&[0, 1]), s(&[1])], &[1, 1]).is_err());
        assert!(Matroid::partition(&[s(&[0, 1])], &[0]).is_err());
        assert_eq!(Matroid::graphic(2, &[(0, 0)]), Err(Error::LoopNotSupported(0)));
    }

    #[test]
    fn parallel_edges_are_circuits() {
        let m = Matroid::graphic(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(m.circuits(), &[s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        assert_eq!(m, Matroid::uniform(3, 1).unwrap());
    }

    #[test]
    fn from_independent_sets_examples() {
        let m = Matroid::from_independent_sets(3, [s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]).unwrap();
        assert_eq!(m, Matroid::uniform(3, 2).unwrap());
        let err = Matroid::from_independent_sets(3, [s(&[0, 1]), s(&[2])]).unwrap_err();
        assert_eq!(
            err,
            Error::NotAMatroid(AxiomCounterexample::Augmentation { small: s(&[2]), large: s(&[0, 1]) })
        );
        assert_eq!(Matroid::from_independent_sets(2, [s(&[0])]), Err(Error::LoopNotSupported(1)));
        assert!(matches!(Matroid::from_independent_sets(11, []), Err(Error::Resource(_))));
    }

    #[test]
    fn verify_axiom_examples() {
        let c = SimplicialComplex::new(s(&[1, 2, 3]), [s(&[1, 2]), s(&[3])]).unwrap();
        assert_eq!(
            verify_matroid_axioms(&c),
            Err(AxiomCounterexample::Augmentation { small: s(&[3]), large: s(&[1, 2]) })
        );
        assert_eq!(
            verify_matroid_axioms(&SimplicialComplex::void(s(&[1]))),
            Err(AxiomCounterexample::MissingEmptySet)
        );
        assert_eq!(verify_matroid_axioms(Matroid::uniform(4, 2).unwrap().complex()), Ok(()));
    }

    #[test]
    fn rank_examples() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u.rank(s(&[0, 1, 2])).unwrap(), 2);
        let f = Matroid::free(4).unwrap();
        assert_eq!(f.rank(s(&[0, 2, 3])).unwrap(), 3);
        assert!(f.rank(s(&[9])).is_err());
    }

    #[test]
    fn minor_examples() {
        let u23 = Matroid::uniform(3, 2).unwrap();
        let c = u23.contract(s(&[0])).unwrap();
        assert_eq!(c.ground(), s(&[1, 2]));
        assert_eq!(c.circuits(), &[s(&[1, 2])]);
        assert_eq!(u23.restrict(u23.ground()).unwrap(), u23);
        let sim = u23.sim_element(1).unwrap();
        assert!(sim.bases().iter().all(|b| b.contains(1)));
        // contracting a dependent set creates loops
        let loopy = u23.contract(s(&[0, 1])).unwrap();
        assert_eq!(loopy.loops(), s(&[2]));
    }

    #[test]
    fn bases_examples() {
        assert_eq!(Matroid::uniform(2, 1).unwrap().bases(), vec![s(&[0]), s(&[1])]);
        assert_eq!(Matroid::free(2).unwrap().bases(), vec![s(&[0, 1])]);
        assert_eq!(Matroid::uniform(4, 2).unwrap().bases().len(), 6);
    }

    #[test]
    fn file_roundtrip() {
        let json = r#"{"type":"partition","parts":[[0,1],[2]],"capacities":[1,1]}"#;
        let f: MatroidFile = serde_json::from_str(json).unwrap();
        let m = f.build().unwrap();
        assert_eq!(m.full_rank(), 2);
        let back = m.to_file().build().unwrap();
        assert_eq!(back, m);
        let g: MatroidFile =
            serde_json::from_str(r#"{"type":"graphic","vertices":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.build().unwrap(), Matroid::free(2).unwrap());
    }
}
