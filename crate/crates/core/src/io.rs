//! JSON instance files.
//!
//! Matroids carry a `"type"` tag, complexes a `"facets"` field, and
//! hypergraphs an `"edges"` field. Elements are integers `0..n`.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::complex::{ComplexFile, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphFile};
use crate::matroid::{Matroid, MatroidFile};
use crate::set::ElementSet;

/// Builds a set from a list of elements, each required to be `< n`.
pub fn element_set(n: usize, items: &[usize]) -> Result<ElementSet> {
    let mut s = ElementSet::EMPTY;
    for &x in items {
        if x >= n || x >= crate::set::MAX_ELEMENTS {
            return Err(Error::domain(format!("element {x} outside universe 0..{n}")));
        }
        s = s.with(x);
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub enum Instance {
    Matroid(Matroid),
    Complex(SimplicialComplex),
    Hypergraph(Hypergraph),
}

impl Instance {
    /// The independence complex for matroids and hypergraphs.
    pub fn complex(&self) -> SimplicialComplex {
        match self {
            Instance::Matroid(m) => m.complex().clone(),
            Instance::Complex(c) => c.clone(),
            Instance::Hypergraph(h) => h.independence_complex(),
        }
    }

    /// Like [`Instance::complex`], except a hypergraph is kept as is.
    pub fn hypergraph(&self) -> Hypergraph {
        match self {
            Instance::Matroid(m) => m.circuit_hypergraph(),
            Instance::Complex(c) => {
                Hypergraph::new(c.ground(), c.circ().unwrap_or_else(|_| vec![ElementSet::EMPTY]))
                    .expect("circuits lie in the ground set")
            }
            Instance::Hypergraph(h) => h.clone(),
        }
    }

    pub fn matroid(&self) -> Result<&Matroid> {
        match self {
            Instance::Matroid(m) => Ok(m),
            _ => Err(Error::domain("expected a matroid instance")),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::domain(format!("malformed instance: {e}"))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value.as_object().ok_or_else(|| Error::domain("instance must be a JSON object"))?;
    if obj.contains_key("type") {
        let f: MatroidFile = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Instance::Matroid(f.build()?))
    } else if obj.contains_key("facets") {
        let f: ComplexFile = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Instance::Complex(f.build()?))
    } else if obj.contains_key("edges") {
        let f: HypergraphFile = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Instance::Hypergraph(f.build()?))
    } else {
        Err(Error::domain("instance needs a \"type\", \"facets\" or \"edges\" field"))
    }
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&read_text(path.as_ref())?)
}

pub fn load_matroid(path: impl AsRef<Path>) -> Result<Matroid> {
    match load_instance(path)? {
        Instance::Matroid(m) => Ok(m),
        _ => Err(Error::domain("expected a matroid instance")),
    }
}

pub fn load_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    serde_json::from_str(&read_text(path.as_ref())?).map_err(parse_err)
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::domain(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_set_validates() {
        assert_eq!(element_set(3, &[0, 2]).unwrap(), ElementSet::from([0, 2]));
        assert!(element_set(3, &[3]).is_err());
    }

    #[test]
    fn detects_instance_kinds() {
        let m = parse_instance(r#"{"type":"uniform","n":3,"k":2}"#).unwrap();
        assert!(matches!(m, Instance::Matroid(_)));
        let c = parse_instance(r#"{"n":3,"facets":[[0,1],[2]]}"#).unwrap();
        assert!(matches!(c, Instance::Complex(_)));
        let h = parse_instance(r#"{"n":3,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(h.complex().facets().unwrap().len(), 2);
        assert!(parse_instance(r#"{"n":3}"#).is_err());
        assert!(parse_instance("[1]").is_err());
        assert!(parse_instance(r#"{"n":2,"edges":[[0,5]]}"#).is_err());
    }
}
