//! Abstract simplicial complexes stored by their facets.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::set::{maximal_sets, ElementSet, GroundSet};

/// A downward-closed family of subsets of `ground`, kept as its sorted list
/// of facets.
///
/// `facets == None` is the void complex (no faces, not even `∅`);
/// `facets == Some([∅])` is the complex whose only face is `∅`. Ground
/// elements need not lie in any face.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    ground: GroundSet,
    facets: Option<Vec<ElementSet>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `generators`; every generator must lie
    /// in `ground`. An empty generator list gives the void complex.
    pub fn new(ground: GroundSet, generators: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let generators: Vec<ElementSet> = generators.into_iter().collect();
        if let Some(bad) = generators.iter().find(|f| !f.is_subset(ground)) {
            return Err(Error::domain(format!("face {bad} is not inside the ground set {ground}")));
        }
        if generators.is_empty() {
            return Ok(Self::void(ground));
        }
        Ok(SimplicialComplex { ground, facets: Some(maximal_sets(generators)) })
    }

    pub fn void(ground: GroundSet) -> Self {
        SimplicialComplex { ground, facets: None }
    }

    /// The complex `{∅}`.
    pub fn empty_face_only(ground: GroundSet) -> Self {
        SimplicialComplex { ground, facets: Some(vec![ElementSet::EMPTY]) }
    }

    /// The full simplex `2^ground`.
    pub fn simplex(ground: GroundSet) -> Self {
        SimplicialComplex { ground, facets: Some(vec![ground]) }
    }

    /// The facets of the downward-closed family `{S ⊆ ground : member(S)}`.
    ///
    /// `member` must be downward closed; each face is visited once.
    pub fn from_predicate(ground: GroundSet, member: impl Fn(ElementSet) -> bool) -> Self {
        if !member(ElementSet::EMPTY) {
            return Self::void(ground);
        }
        let elements = ground.to_vec();
        let mut facets = Vec::new();
        // (face, index of the first element allowed as an extension)
        let mut stack = vec![(ElementSet::EMPTY, 0usize)];
        while let Some((face, start)) = stack.pop() {
            let mut maximal = true;
            for (i, &x) in elements.iter().enumerate() {
                if face.contains(x) {
                    continue;
                }
                let bigger = face.with(x);
                if member(bigger) {
                    maximal = false;
                    if i >= start {
                        stack.push((bigger, i + 1));
                    }
                }
            }
            if maximal {
                facets.push(face);
            }
        }
        facets.sort();
        SimplicialComplex { ground, facets: Some(facets) }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// `None` for the void complex.
    pub fn facets(&self) -> Option<&[ElementSet]> {
        self.facets.as_deref()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_none()
    }

    /// Largest face size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets
            .as_ref()
            .map(|fs| fs.iter().map(|f| f.len()).max().unwrap_or(0) as isize - 1)
    }

    /// Union of all faces.
    pub fn vertex_support(&self) -> ElementSet {
        self.facets
            .iter()
            .flatten()
            .fold(ElementSet::EMPTY, |acc, f| acc.union(*f))
    }

    /// Whether every ground element is itself a face.
    pub fn covers_ground(&self) -> bool {
        self.vertex_support() == self.ground
    }

    /// Membership without the ground check.
    #[inline]
    pub fn is_face(&self, s: ElementSet) -> bool {
        self.facets.iter().flatten().any(|f| s.is_subset(*f))
    }

    pub fn contains(&self, s: ElementSet) -> Result<bool> {
        if !s.is_subset(self.ground) {
            return Err(Error::domain(format!("{s} is not inside the ground set {}", self.ground)));
        }
        Ok(self.is_face(s))
    }

    /// All faces, ordered by size and then lexicographically.
    pub fn faces(&self) -> Vec<ElementSet> {
        self.faces_within(usize::MAX).expect("unbounded face enumeration")
    }

    /// All faces, failing once more than `budget` distinct faces appear.
    pub fn faces_within(&self, budget: usize) -> Result<Vec<ElementSet>> {
        let Some(facets) = &self.facets else {
            return Ok(Vec::new());
        };
        let mut seen: HashSet<ElementSet> = HashSet::new();
        for f in facets {
            for s in f.subsets() {
                if seen.insert(s) && seen.len() > budget {
                    return Err(Error::resource(format!(
                        "complex has more than {budget} faces"
                    )));
                }
            }
        }
        let mut faces: Vec<ElementSet> = seen.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(faces)
    }

    /// The minimal non-faces all of whose one-element deletions are faces.
    pub fn circ(&self) -> Result<Vec<ElementSet>> {
        if self.is_void() {
            return Err(Error::domain("circ is undefined for the void complex"));
        }
        let mut out: HashSet<ElementSet> = HashSet::new();
        for face in self.faces() {
            for x in self.ground.difference(face) {
                let e = face.with(x);
                if out.contains(&e) || self.is_face(e) {
                    continue;
                }
                if e.iter().all(|y| self.is_face(e.without(y))) {
                    out.insert(e);
                }
            }
        }
        let mut out: Vec<ElementSet> = out.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Whether `I((ground, circ(C))) == C`. Requires every ground element to
    /// be a face.
    pub fn duality_roundtrip(&self) -> Result<bool> {
        if !self.covers_ground() {
            return Err(Error::domain(
                "duality roundtrip requires every ground element to lie in a face",
            ));
        }
        let h = Hypergraph::new(self.ground, self.circ()?)?;
        Ok(h.independence_complex() == *self)
    }

    /// `C * D = {S ∪ T}` on disjoint grounds.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::domain(format!(
                "join needs disjoint grounds, got {} and {}",
                self.ground, other.ground
            )));
        }
        let ground = self.ground.union(other.ground);
        let (Some(a), Some(b)) = (&self.facets, &other.facets) else {
            return Ok(Self::void(ground));
        };
        let facets = a.iter().flat_map(|f| b.iter().map(move |g| f.union(*g)));
        Ok(SimplicialComplex { ground, facets: Some(maximal_sets(facets)) })
    }

    fn same_ground(&self, other: &SimplicialComplex, op: &str) -> Result<()> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{op} needs equal grounds, got {} and {}",
                self.ground, other.ground
            )))
        }
    }

    pub fn union(&self, other: &SimplicialComplex) -> Result<Self> {
        self.same_ground(other, "union")?;
        match (&self.facets, &other.facets) {
            (None, _) => Ok(other.clone()),
            (_, None) => Ok(self.clone()),
            (Some(a), Some(b)) => Ok(SimplicialComplex {
                ground: self.ground,
                facets: Some(maximal_sets(a.iter().chain(b.iter()).copied())),
            }),
        }
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> Result<Self> {
        self.same_ground(other, "intersection")?;
        let (Some(a), Some(b)) = (&self.facets, &other.facets) else {
            return Ok(Self::void(self.ground));
        };
        let facets = a.iter().flat_map(|f| b.iter().map(move |g| f.intersection(*g)));
        Ok(SimplicialComplex { ground: self.ground, facets: Some(maximal_sets(facets)) })
    }

    /// `C[S]`: the faces contained in `S`, on ground `S`.
    pub fn restrict(&self, s: ElementSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::domain("restriction to the empty set"));
        }
        if !s.is_subset(self.ground) {
            return Err(Error::domain(format!("{s} is not inside the ground set {}", self.ground)));
        }
        Ok(self.restrict_unchecked(s))
    }

    /// The same complex with every element `x` renamed `x + by`.
    pub fn shifted(&self, by: usize) -> Result<Self> {
        let top = self.ground.max_element().map_or(0, |m| m + 1);
        if top + by > crate::set::MAX_ELEMENTS {
            return Err(Error::domain("shifted ground exceeds 64 elements"));
        }
        let shift = |s: ElementSet| ElementSet::from_bits(s.bits() << by);
        Ok(SimplicialComplex {
            ground: shift(self.ground),
            facets: self.facets.as_ref().map(|fs| fs.iter().map(|&f| shift(f)).collect()),
        })
    }

    pub(crate) fn restrict_unchecked(&self, s: ElementSet) -> Self {
        match &self.facets {
            None => Self::void(s),
            Some(fs) => SimplicialComplex {
                ground: s,
                facets: Some(maximal_sets(fs.iter().map(|f| f.intersection(s)))),
            },
        }
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.facets {
            None => write!(f, "void on {}", self.ground),
            Some(fs) => {
                write!(f, "complex on {} with facets [", self.ground)?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// On-disk form: `{"n": int, "facets": [[int, ..], ..] | null}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub facets: Option<Vec<Vec<usize>>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex> {
        crate::hypergraph::check_universe(self.n)?;
        let ground = ElementSet::full(self.n);
        match &self.facets {
            None => Ok(SimplicialComplex::void(ground)),
            Some(fs) => {
                let sets = fs
                    .iter()
                    .map(|f| crate::io::element_set(self.n, f))
                    .collect::<Result<Vec<_>>>()?;
                if sets.is_empty() {
                    // `[]` has no faces at all; `[[]]` is {∅}
                    return Ok(SimplicialComplex::void(ground));
                }
                SimplicialComplex::new(ground, sets)
            }
        }
    }

    pub fn from_complex(c: &SimplicialComplex) -> Self {
        let n = c.ground().max_element().map_or(0, |m| m + 1);
        ComplexFile { n, facets: c.facets().map(|fs| fs.iter().map(|f| f.to_vec()).collect()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> ElementSet {
        v.iter().copied().collect()
    }

    fn cx(ground: &[usize], facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(s(ground), facets.iter().map(|f| s(f))).unwrap()
    }

    #[test]
    fn contains_examples() {
        let c = cx(&[1, 2], &[&[1, 2]]);
        assert!(c.contains(s(&[1])).unwrap());
        assert!(c.contains(ElementSet::EMPTY).unwrap());
        assert!(!SimplicialComplex::void(s(&[1])).contains(ElementSet::EMPTY).unwrap());
        assert!(c.contains(s(&[5])).is_err());
    }

    #[test]
    fn circ_examples() {
        let u23 = cx(&[1, 2, 3], &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(u23.circ().unwrap(), vec![s(&[1, 2, 3])]);
        assert!(SimplicialComplex::simplex(s(&[1, 2, 3])).circ().unwrap().is_empty());
        let two = cx(&[1, 2, 3, 4], &[&[1, 2], &[3, 4]]);
        assert_eq!(
            two.circ().unwrap(),
            vec![s(&[1, 3]), s(&[1, 4]), s(&[2, 3]), s(&[2, 4])]
        );
        assert!(SimplicialComplex::void(s(&[1])).circ().is_err());
    }

    #[test]
    fn circ_includes_uncovered_singletons() {
        let c = cx(&[0, 1], &[&[0]]);
        assert_eq!(c.circ().unwrap(), vec![s(&[1])]);
    }

    #[test]
    fn roundtrip_examples() {
        assert!(SimplicialComplex::simplex(s(&[1, 2, 3])).duality_roundtrip().unwrap());
        assert!(cx(&[1, 2, 3, 4], &[&[1, 2], &[3, 4]]).duality_roundtrip().unwrap());
        assert!(cx(&[0, 1], &[&[0]]).duality_roundtrip().is_err());
    }

    #[test]
    fn join_examples() {
        let a = cx(&[0, 1], &[&[0], &[1]]);
        let b = cx(&[2, 3], &[&[2], &[3]]);
        let j = a.join(&b).unwrap();
        assert_eq!(j.facets().unwrap(), &[s(&[0, 2]), s(&[0, 3]), s(&[1, 2]), s(&[1, 3])]);
        let void = SimplicialComplex::void(s(&[4]));
        assert!(a.join(&void).unwrap().is_void());
        let unit = SimplicialComplex::empty_face_only(s(&[4]));
        let with_unit = a.join(&unit).unwrap();
        assert_eq!(with_unit.facets(), a.facets());
        assert_eq!(with_unit.ground(), s(&[0, 1, 4]));
        assert!(a.join(&a).is_err());
    }

    #[test]
    fn union_intersection_examples() {
        let a = cx(&[1, 2, 3], &[&[1, 2]]);
        let b = cx(&[1, 2, 3], &[&[2, 3]]);
        assert_eq!(a.union(&a).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(a.intersection(&b).unwrap().facets().unwrap(), &[s(&[2])]);
        assert_eq!(a.union(&b).unwrap().facets().unwrap(), &[s(&[1, 2]), s(&[2, 3])]);
        assert!(a.union(&cx(&[1, 2], &[&[1]])).is_err());
    }

    #[test]
    fn restrict_examples() {
        let c = cx(&[0, 1, 2, 3], &[&[0, 2], &[1, 3]]);
        assert_eq!(c.restrict(s(&[0, 2])).unwrap(), SimplicialComplex::simplex(s(&[0, 2])));
        assert_eq!(c.restrict(s(&[0, 1])).unwrap().facets().unwrap(), &[s(&[0]), s(&[1])]);
        assert_eq!(c.restrict(c.ground()).unwrap(), c);
        assert!(c.restrict(ElementSet::EMPTY).is_err());
        assert!(c.restrict(s(&[7])).is_err());
    }

    #[test]
    fn faces_sorted_and_budgeted() {
        let c = cx(&[0, 1, 2], &[&[0, 1], &[2]]);
        assert_eq!(
            c.faces(),
            vec![ElementSet::EMPTY, s(&[0]), s(&[1]), s(&[2]), s(&[0, 1])]
        );
        assert!(matches!(c.faces_within(3), Err(Error::Resource(_))));
        assert!(SimplicialComplex::void(s(&[0])).faces().is_empty());
    }

    #[test]
    fn from_predicate_matches_filter() {
        let ground = s(&[0, 1, 2, 3, 4]);
        let pred = |x: ElementSet| x.len() <= 2 && !(x.contains(0) && x.contains(1));
        let c = SimplicialComplex::from_predicate(ground, pred);
        let expected: Vec<ElementSet> = {
            let mut v: Vec<_> = ground.subsets().filter(|x| pred(*x)).collect();
            v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            v
        };
        assert_eq!(c.faces(), expected);
    }

    #[test]
    fn file_format() {
        let f: ComplexFile = serde_json::from_str(r#"{"n":3,"facets":null}"#).unwrap();
        assert!(f.build().unwrap().is_void());
        let f: ComplexFile = serde_json::from_str(r#"{"n":3,"facets":[[]]}"#).unwrap();
        assert_eq!(f.build().unwrap(), SimplicialComplex::empty_face_only(s(&[0, 1, 2])));
        let f: ComplexFile = serde_json::from_str(r#"{"n":2,"facets":[[0,5]]}"#).unwrap();
        assert!(f.build().is_err());
    }
}
