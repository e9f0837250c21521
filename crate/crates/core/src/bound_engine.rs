//! Lower bounds on `η` from deletion/contraction, the coloop-or-contract
//! dichotomy for intersections of matroids, and the numeric checks
//! relating `η`, `ν_{p,q}`, `Δ_η` and chromatic numbers.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::coloring::{chi_list_with, chi_matroid, ChiListValue};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{delta_eta_with, eta_with, serialize_ratio, CoefficientField, EtaValue};
use crate::hypergraph::Hypergraph;
use crate::limits::Limits;
use crate::matroid::Matroid;
use crate::nu::nu_pq_with;
use crate::set::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "target", rename_all = "kebab-case")]
pub enum GameMove {
    /// A vertex `v` with `{v}` not an edge: `H \ {v}` against `H / {v}`.
    VertexMove(usize),
    /// An edge containing no other edge: `H - e` against `H / e`.
    EdgeMove(ElementSet),
}

impl GameMove {
    pub fn bonus(self) -> u64 {
        match self {
            GameMove::VertexMove(_) => 1,
            GameMove::EdgeMove(e) => e.len() as u64 - 1,
        }
    }

    fn apply(self, h: &Hypergraph) -> (Hypergraph, Hypergraph) {
        match self {
            GameMove::VertexMove(v) => {
                let x = ElementSet::singleton(v);
                (h.delete_vertices(x).expect("vertex of H"), h.contract(x).expect("vertex of H"))
            }
            GameMove::EdgeMove(e) => {
                (h.delete_edge(e).expect("edge of H"), h.contract(e).expect("edge of H"))
            }
        }
    }
}

fn admissible_moves(h: &Hypergraph) -> Vec<GameMove> {
    let vertex_moves = h
        .vertices()
        .iter()
        .filter(|&v| !h.has_edge(ElementSet::singleton(v)))
        .map(GameMove::VertexMove);
    let edge_moves = h.minimal_edges().into_iter().map(GameMove::EdgeMove);
    vertex_moves.chain(edge_moves).collect()
}

/// One position of the game with the move realizing its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationNode {
    pub fingerprint: String,
    pub value: EtaValue,
    #[serde(rename = "move", skip_serializing_if = "Option::is_none")]
    pub chosen: Option<GameMove>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bonus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delete: Option<Box<DerivationNode>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contract: Option<Box<DerivationNode>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameResult {
    pub value: EtaValue,
    /// Number of distinct positions (up to isomorphism) evaluated.
    pub positions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<DerivationNode>,
}

/// Isomorphism-invariant key: vertices relabelled `0..k`, edges as sorted
/// masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key {
    k: usize,
    edges: Vec<u64>,
}

impl Key {
    fn fingerprint(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|&e| ElementSet::from_bits(e).to_string()).collect();
        format!("{}:[{}]", self.k, edges.join(","))
    }
}

const MAX_RELABELINGS: usize = 720;

/// Refines vertices by degree and neighbourhood signatures, then takes the
/// least relabelled edge list over permutations within cells when there
/// are few enough; otherwise keeps vertex order inside cells. Equal keys
/// always mean isomorphic hypergraphs.
fn canonical_key(h: &Hypergraph) -> Key {
    let verts = h.vertices().to_vec();
    let k = verts.len();
    let local: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| {
            verts
                .iter()
                .enumerate()
                .filter(|(_, &v)| e.contains(v))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();

    let mut cell = vec![0usize; k];
    let mut cells_count = 1usize.min(k);
    loop {
        let sigs: Vec<(usize, Vec<Vec<usize>>)> = (0..k)
            .map(|v| {
                let mut around: Vec<Vec<usize>> = local
                    .iter()
                    .filter(|&&e| e >> v & 1 == 1)
                    .map(|&e| {
                        let mut cs: Vec<usize> = (0..k).filter(|&u| e >> u & 1 == 1).map(|u| cell[u]).collect();
                        cs.sort_unstable();
                        cs
                    })
                    .collect();
                around.sort();
                (cell[v], around)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        cell = sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        if distinct.len() == cells_count {
            break;
        }
        cells_count = distinct.len();
    }

    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); cells_count];
    for v in 0..k {
        groups[cell[v]].push(v);
    }
    let relabel = |order: &[usize]| {
        let mut pos = vec![0usize; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges: Vec<u64> = local
            .iter()
            .map(|&e| (0..k).filter(|&u| e >> u & 1 == 1).fold(0u64, |m, u| m | 1 << pos[u]))
            .collect();
        edges.sort_unstable();
        edges
    };

    let combos = groups
        .iter()
        .try_fold(1usize, |acc, g| (1..=g.len()).try_fold(acc, |a, i| a.checked_mul(i)))
        .unwrap_or(usize::MAX);
    let identity: Vec<usize> = groups.iter().flatten().copied().collect();
    if combos > MAX_RELABELINGS {
        return Key { k, edges: relabel(&identity) };
    }
    let mut best: Option<Vec<u64>> = None;
    let mut order = Vec::with_capacity(k);
    permute_cells(&groups, 0, &mut order, &mut |order| {
        let edges = relabel(order);
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
    });
    Key { k, edges: best.unwrap_or_default() }
}

fn permute_cells(groups: &[Vec<usize>], g: usize, order: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let Some(group) = groups.get(g) else {
        f(order);
        return;
    };
    let mut items = group.clone();
    permutations(&mut items, 0, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        permute_cells(groups, g + 1, order, f);
        order.truncate(len);
    });
}

fn permutations(items: &mut [usize], i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == items.len() {
        f(items);
        return;
    }
    for j in i..items.len() {
        items.swap(i, j);
        permutations(items, i + 1, f);
        items.swap(i, j);
    }
}

struct Game {
    memo: HashMap<Key, EtaValue>,
}

impl Game {
    fn base_case(h: &Hypergraph) -> Option<EtaValue> {
        if h.has_edge(ElementSet::EMPTY) {
            Some(EtaValue::Finite(0))
        } else if h.edges().is_empty() {
            Some(if h.vertices().is_empty() { EtaValue::Finite(0) } else { EtaValue::Infinite })
        } else {
            None
        }
    }

    fn value(&mut self, h: &Hypergraph) -> EtaValue {
        if let Some(v) = Self::base_case(h) {
            return v;
        }
        let key = canonical_key(h);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut best = EtaValue::Finite(0);
        for mv in admissible_moves(h) {
            let (del, con) = mv.apply(h);
            let d = self.value(&del);
            if d <= best {
                continue;
            }
            let c = self.value(&con).plus(mv.bonus());
            best = best.max(d.min(c));
            if best.is_infinite() {
                break;
            }
        }
        self.memo.insert(key, best);
        best
    }

    fn trace(&mut self, h: &Hypergraph, budget: &mut usize) -> Result<DerivationNode> {
        if *budget == 0 {
            return Err(Error::resource("derivation tree exceeds 100000 nodes"));
        }
        *budget -= 1;
        let value = self.value(h);
        let mut node = DerivationNode {
            fingerprint: canonical_key(h).fingerprint(),
            value,
            chosen: None,
            bonus: None,
            delete: None,
            contract: None,
        };
        if Self::base_case(h).is_some() {
            return Ok(node);
        }
        for mv in admissible_moves(h) {
            let (del, con) = mv.apply(h);
            let (d, c) = (self.value(&del), self.value(&con));
            if d.min(c.plus(mv.bonus())) == value {
                node.chosen = Some(mv);
                node.bonus = Some(mv.bonus());
                node.delete = Some(Box::new(self.trace(&del, budget)?));
                node.contract = Some(Box::new(self.trace(&con, budget)?));
                break;
            }
        }
        Ok(node)
    }
}

pub fn game_value(h: &Hypergraph) -> Result<EtaValue> {
    Ok(game_value_with(h, &Limits::default(), false)?.value)
}

/// The best lower bound on `η(I(H))` obtainable by repeatedly applying the
/// vertex-link and edge-contraction inequalities.
pub fn game_value_with(h: &Hypergraph, limits: &Limits, trace: bool) -> Result<GameResult> {
    if h.vertices().len() > limits.game_max_vertices {
        return Err(Error::resource(format!(
            "game limited to {} vertices, got {}",
            limits.game_max_vertices,
            h.vertices().len()
        )));
    }
    let mut game = Game { memo: HashMap::new() };
    let value = game.value(h);
    let trace = if trace { Some(game.trace(h, &mut 100_000)?) } else { None };
    Ok(GameResult { value, positions: game.memo.len(), trace })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum BranchOutcome {
    /// `η(M_1 ∩ … ∩ M_k) >= η((M_1 ~ v) ∩ M_2 ∩ … ∩ M_k)`.
    Sim,
    /// `η(M_1 ∩ … ∩ M_k) >= η(∩ (M_i / C)) + |C| - 1` for a circuit `C` of
    /// `M_1` through `v`, independent in the others.
    Contract { circuit: ElementSet, bonus: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractBranch {
    pub circuit: ElementSet,
    pub eta_contracted: EtaValue,
    pub bound: EtaValue,
    pub verifies: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoolopReport {
    pub v: usize,
    pub eta_intersection: EtaValue,
    pub eta_sim: EtaValue,
    pub sim_verifies: bool,
    pub contract_branches: Vec<ContractBranch>,
    pub outcome: BranchOutcome,
}

fn check_family(ms: &[Matroid], v: usize) -> Result<()> {
    let Some(first) = ms.first() else {
        return Err(Error::domain("need at least one matroid"));
    };
    if ms.iter().any(|m| m.ground() != first.ground()) {
        return Err(Error::domain("matroids must share a ground set"));
    }
    if !first.ground().contains(v) {
        return Err(Error::domain(format!("{v} is not in the ground set {}", first.ground())));
    }
    Ok(())
}

/// Circuits of `M_1` through `v` that are independent in every other `M_i`,
/// in sorted order.
pub fn qualifying_circuits(ms: &[Matroid], v: usize) -> Result<Vec<ElementSet>> {
    check_family(ms, v)?;
    Ok(ms[0]
        .circuits()
        .iter()
        .copied()
        .filter(|c| c.contains(v) && ms[1..].iter().all(|m| m.is_independent(*c)))
        .collect())
}

fn refs(ms: &[Matroid]) -> Vec<&Matroid> {
    ms.iter().collect()
}

pub fn coloop_or_contract(ms: &[Matroid], v: usize, field: CoefficientField) -> Result<CoolopReport> {
    coloop_or_contract_with(ms, v, field, &Limits::default())
}

/// Evaluates both sides of the dichotomy by direct homology and reports
/// the first branch that verifies (the `~` branch first, then circuits in
/// sorted order).
pub fn coloop_or_contract_with(
    ms: &[Matroid],
    v: usize,
    field: CoefficientField,
    limits: &Limits,
) -> Result<CoolopReport> {
    let circuits = qualifying_circuits(ms, v)?;
    let eta_intersection = eta_with(&Matroid::intersection_complex(&refs(ms))?, field, limits)?;

    let mut simmed = ms.to_vec();
    simmed[0] = ms[0].sim_element(v)?;
    let eta_sim = eta_with(&Matroid::intersection_complex(&refs(&simmed))?, field, limits)?;
    let sim_verifies = eta_intersection >= eta_sim;

    let mut contract_branches = Vec::with_capacity(circuits.len());
    for &c in &circuits {
        let contracted = ms.iter().map(|m| m.contract(c)).collect::<Result<Vec<_>>>()?;
        let eta_contracted = eta_with(&Matroid::intersection_complex(&refs(&contracted))?, field, limits)?;
        let bound = eta_contracted.plus(c.len() as u64 - 1);
        contract_branches.push(ContractBranch {
            circuit: c,
            eta_contracted,
            bound,
            verifies: eta_intersection >= bound,
        });
    }

    let outcome = if sim_verifies {
        BranchOutcome::Sim
    } else if let Some(b) = contract_branches.iter().find(|b| b.verifies) {
        BranchOutcome::Contract { circuit: b.circuit, bonus: b.circuit.len() as u64 - 1 }
    } else {
        let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        return Err(Error::TheoremViolation(format!(
            "coloop-or-contract: no branch verifies for v = {v} on [{}]; η = {eta_intersection}, \
             η(~ branch) = {eta_sim}, contract bounds = {:?}",
            names.join("; "),
            contract_branches.iter().map(|b| b.bound.to_string()).collect::<Vec<_>>()
        )));
    };
    Ok(CoolopReport { v, eta_intersection, eta_sim, sim_verifies, contract_branches, outcome })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub v: usize,
    pub circuits: Vec<ElementSet>,
    /// `I(H - C_1 - … - C_t) = (M_1 ~ v) ∩ M_2 ∩ … ∩ M_k`
    pub deletion: bool,
    /// Per circuit: `I((H - C_1 - … - C_{j-1}) / C_j) = I(H / C_j)`
    pub partial_contraction: Vec<bool>,
    /// Per circuit: `I(H / C_j) = (M_1 / C_j) ∩ … ∩ (M_k / C_j)`
    pub contraction: Vec<bool>,
    /// Per circuit: `H / C_j` and `∪ (H_i / C_j)` have the same edges.
    pub union_contraction: Vec<bool>,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.deletion
            && self.partial_contraction.iter().all(|&b| b)
            && self.contraction.iter().all(|&b| b)
            && self.union_contraction.iter().all(|&b| b)
    }
}

/// Checks the face-set equalities behind the coloop-or-contract dichotomy,
/// where `H` is the union of the circuit hypergraphs.
pub fn check_claim_equalities(ms: &[Matroid], v: usize) -> Result<ClaimReport> {
    let circuits = qualifying_circuits(ms, v)?;
    let parts: Vec<Hypergraph> = ms.iter().map(|m| m.circuit_hypergraph()).collect();
    let h = parts[1..].iter().try_fold(parts[0].clone(), |acc, p| acc.union(p))?;

    let mut reduced = h.clone();
    for &c in &circuits {
        reduced = reduced.delete_edge(c)?;
    }
    let mut simmed = ms.to_vec();
    simmed[0] = ms[0].sim_element(v)?;
    let deletion = reduced.independence_complex() == Matroid::intersection_complex(&refs(&simmed))?;

    let mut partial_contraction = Vec::new();
    let mut contraction = Vec::new();
    let mut union_contraction = Vec::new();
    let mut prefix = h.clone();
    for &c in &circuits {
        let full: SimplicialComplex = h.contract(c)?.independence_complex();
        partial_contraction.push(prefix.contract(c)?.independence_complex() == full);
        prefix = prefix.delete_edge(c)?;

        let contracted = ms.iter().map(|m| m.contract(c)).collect::<Result<Vec<_>>>()?;
        contraction.push(full == Matroid::intersection_complex(&refs(&contracted))?);

        let pieces = parts.iter().map(|p| p.contract(c)).collect::<Result<Vec<_>>>()?;
        let joined = pieces[1..].iter().try_fold(pieces[0].clone(), |acc, p| acc.union(p))?;
        union_contraction.push(joined == h.contract(c)?);
    }

    let report = ClaimReport { v, circuits, deletion, partial_contraction, contraction, union_contraction };
    if !report.all_hold() {
        return Err(Error::ClaimViolation(format!("{report:?}")));
    }
    Ok(report)
}

pub(crate) fn serialize_signed_ratio<S: Serializer>(
    r: &Option<Ratio<i64>>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => serializer.collect_str(&format_args!("{}/{}", r.numer(), r.denom())),
        None => serializer.serialize_str("inf"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaNuReport {
    pub p: usize,
    pub q: usize,
    pub eta: EtaValue,
    pub nu: usize,
    /// `η - ν / (p + q)`, `"inf"` when `η` is infinite.
    #[serde(serialize_with = "serialize_signed_ratio")]
    pub slack: Option<Ratio<i64>>,
    pub tight: bool,
    pub holds: bool,
}

pub fn check_eta_nu_bound(m: &Matroid, n: &Matroid, p: usize, q: usize, field: CoefficientField) -> Result<EtaNuReport> {
    check_eta_nu_bound_with(m, n, p, q, field, &Limits::default())
}

/// `η(M ∩ N) >= ν_{p,q}(M, N) / (p + q)`, compared exactly.
pub fn check_eta_nu_bound_with(
    m: &Matroid,
    n: &Matroid,
    p: usize,
    q: usize,
    field: CoefficientField,
    limits: &Limits,
) -> Result<EtaNuReport> {
    let nu = nu_pq_with(m, n, p, q, limits)?.value;
    let eta = eta_with(&Matroid::intersection_complex(&[m, n])?, field, limits)?;
    let bound = Ratio::new(nu as i64, (p + q) as i64);
    let slack = eta.finite().map(|e| Ratio::from_integer(e as i64) - bound);
    Ok(EtaNuReport {
        p,
        q,
        eta,
        nu,
        slack,
        tight: slack == Some(Ratio::from_integer(0)),
        holds: eta.at_least_ratio(nu as u64, (p + q) as u64),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaEtaReport {
    #[serde(serialize_with = "serialize_ratio")]
    pub delta_eta: Ratio<u64>,
    pub chi_m: usize,
    pub chi_n: usize,
    /// `Δ_η(M ∩ N) <= χ(M) + χ(N)`
    pub holds_sum: bool,
    pub tight_sum: bool,
    /// `max(1, ⌈Δ_η⌉)`; the maximum only matters for the full simplex,
    /// whose `Δ_η` is 0.
    pub list_bound: usize,
    pub chi_list: Option<ChiListValue>,
    /// `χ_ℓ(M ∩ N) <= list_bound`, when computed.
    pub holds_list: bool,
    pub holds: bool,
}

pub fn check_delta_eta_bound(m: &Matroid, n: &Matroid, field: CoefficientField) -> Result<DeltaEtaReport> {
    check_delta_eta_bound_with(m, n, field, &Limits::default())
}

pub fn check_delta_eta_bound_with(
    m: &Matroid,
    n: &Matroid,
    field: CoefficientField,
    limits: &Limits,
) -> Result<DeltaEtaReport> {
    let inter = Matroid::intersection_complex(&[m, n])?;
    let delta_eta = delta_eta_with(&inter, field, limits)?;
    let (chi_m, chi_n) = (chi_matroid(m)?, chi_matroid(n)?);
    let sum = Ratio::from_integer((chi_m + chi_n) as u64);
    let list_bound = (delta_eta.ceil().to_integer() as usize).max(1);
    let chi_list = if inter.ground().len() <= limits.chi_list_max_ground && list_bound <= limits.chi_list_max_k {
        Some(chi_list_with(&inter, list_bound, limits)?.value)
    } else {
        None
    };
    let holds_sum = delta_eta <= sum;
    let holds_list = chi_list.is_none_or(|v| v.at_most(list_bound));
    Ok(DeltaEtaReport {
        delta_eta,
        chi_m,
        chi_n,
        holds_sum,
        tight_sum: delta_eta == sum,
        list_bound,
        chi_list,
        holds_list,
        holds: holds_sum && holds_list,
    })
}
