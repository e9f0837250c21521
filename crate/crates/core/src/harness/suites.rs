//! Verification suites: each suite enumerates cases from the corpus plus
//! seeded random instances and checks one family of bounds exactly.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::corpus::Corpus;
use super::generators::tightness_example;
use super::report::{Case, CaseParams, CaseResult, Live, ReplayBundle, VerificationReport};
use crate::bound_engine::{
    check_claim_equalities, check_delta_eta_bound_with, check_eta_nu_bound_with, coloop_or_contract_with,
    game_value_with,
};
use crate::coloring::{check_chi_sum_with, chi, chi_matroid};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{
    check_join_superadditivity, check_mayer_vietoris, delta_eta_with, eta_with, reduced_betti_with,
    CoefficientField, EtaValue,
};
use crate::hypergraph::Hypergraph;
use crate::intersection::max_common_independent;
use crate::limits::Limits;
use crate::matroid::{verify_matroid_axioms, Matroid};
use crate::nu::{
    check_monotone, check_nuqq_bound_with, dangling_witness_with, equalized_witness_with, multiplicity,
    nu_pq_with, objective, NuResult,
};
use crate::set::ElementSet;
use crate::Ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Duality,
    Operators,
    Axioms,
    HomologyBasics,
    Join,
    MayerVietoris,
    GameSoundness,
    Coloop,
    Claim,
    NuObservations,
    Nuqq,
    Dangling,
    EtaNu,
    ChiSum,
    DeltaEta,
    Tightness,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::Duality,
        Suite::Operators,
        Suite::Axioms,
        Suite::HomologyBasics,
        Suite::Join,
        Suite::MayerVietoris,
        Suite::GameSoundness,
        Suite::Coloop,
        Suite::Claim,
        Suite::NuObservations,
        Suite::Nuqq,
        Suite::Dangling,
        Suite::EtaNu,
        Suite::ChiSum,
        Suite::DeltaEta,
        Suite::Tightness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::Operators => "operators",
            Suite::Axioms => "axioms",
            Suite::HomologyBasics => "homology-basics",
            Suite::Join => "join",
            Suite::MayerVietoris => "mayer-vietoris",
            Suite::GameSoundness => "game-soundness",
            Suite::Coloop => "coloop",
            Suite::Claim => "claim",
            Suite::NuObservations => "nu-observations",
            Suite::Nuqq => "nuqq",
            Suite::Dangling => "dangling",
            Suite::EtaNu => "eta-nu",
            Suite::ChiSum => "chi-sum",
            Suite::DeltaEta => "delta-eta",
            Suite::Tightness => "tightness",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::domain(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The `(p, q)` combinations of the η-ν suite.
pub const ETA_NU_COMBOS: [(usize, usize); 5] = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)];

/// Instances at most this large are used for the coloop and claim suites.
pub const DICHOTOMY_NMAX: usize = 6;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Seeded random instances of each kind added to the corpus.
    pub random_cases: usize,
    pub nmax: usize,
    /// Largest ground set on which list chromatic numbers are computed.
    pub list_nmax: usize,
    pub pmax: usize,
    pub qmax: usize,
    pub field: CoefficientField,
    pub limits: Limits,
    pub include_corpus: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            random_cases: 0,
            nmax: 7,
            list_nmax: 5,
            pmax: 3,
            qmax: 3,
            field: CoefficientField::Rationals,
            limits: Limits::default(),
            include_corpus: true,
        }
    }
}

impl SuiteConfig {
    fn case_limits(&self) -> Limits {
        Limits { chi_list_max_ground: self.limits.chi_list_max_ground.min(self.list_nmax), ..self.limits }
    }
}

/// The standard corpus, built once per process.
pub fn standard_corpus() -> Result<&'static Corpus> {
    static CORPUS: OnceLock<Result<Corpus>> = OnceLock::new();
    CORPUS.get_or_init(Corpus::standard).as_ref().map_err(Clone::clone)
}

fn case(id: String, provenance: &str, live: Live, params: CaseParams) -> Case {
    Case { id, provenance: provenance.to_string(), live, params }
}

fn pq(p: usize, q: usize) -> CaseParams {
    CaseParams { p: Some(p), q: Some(q) }
}

/// All cases of `suite` under `config`, in id order.
pub fn cases(suite: Suite, config: &SuiteConfig) -> Result<Vec<Case>> {
    if suite == Suite::Tightness {
        let mut out = Vec::new();
        for p in 1..=config.pmax {
            for q in 1..=config.qmax {
                let prov = format!("tightness_example({p},{q})");
                out.push(case(format!("tightness-{p}-{q}"), &prov, Live::Tightness(p, q), pq(p, q)));
            }
        }
        return Ok(out);
    }
    let random =
        if config.random_cases > 0 { Some(Corpus::random(config.seed, config.random_cases, config.nmax)?) } else { None };
    let mut sources: Vec<(&str, &Corpus)> = Vec::new();
    if config.include_corpus {
        sources.push(("", standard_corpus()?));
    }
    if let Some(r) = &random {
        sources.push(("random/", r));
    }
    let mut out = Vec::new();
    for (prefix, corpus) in sources {
        collect_cases(suite, config, prefix, corpus, &mut out);
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

fn collect_cases(suite: Suite, config: &SuiteConfig, prefix: &str, corpus: &Corpus, out: &mut Vec<Case>) {
    let none = CaseParams::default();
    let pairs = corpus.pairs.iter().filter(|p| p.size() <= config.nmax);
    let complex_pairs = corpus.complex_pairs.iter().filter(|p| p.a.ground().len() <= config.nmax);
    let hypergraphs = corpus.hypergraphs.iter().filter(|h| h.h.vertices().len() <= config.nmax.max(8));
    let pair_ps = |suite: Suite| -> Vec<(usize, usize)> {
        let grid = (1..=config.pmax).flat_map(|p| (1..=config.qmax).map(move |q| (p, q)));
        match suite {
            Suite::NuObservations => grid.collect(),
            Suite::Dangling => grid.filter(|&(p, q)| p <= q).collect(),
            Suite::Nuqq => [2, 3].into_iter().filter(|&q| q <= config.qmax).map(|q| (q, q)).collect(),
            _ => ETA_NU_COMBOS.into_iter().filter(|&(p, q)| p <= config.pmax && q <= config.qmax).collect(),
        }
    };
    match suite {
        Suite::Duality | Suite::HomologyBasics => {
            for cp in complex_pairs {
                for (side, c) in [("a", &cp.a), ("b", &cp.b)] {
                    let id = format!("{prefix}{}/{side}", cp.id);
                    out.push(case(id, &cp.provenance, Live::Complex(c.clone()), none));
                }
            }
            for mp in pairs {
                if let Ok(inter) = Matroid::intersection_complex(&[&mp.m, &mp.n]) {
                    let id = format!("{prefix}{}/intersection", mp.id);
                    out.push(case(id, &mp.provenance, Live::Complex(inter), none));
                }
            }
            if suite == Suite::Duality {
                for nh in hypergraphs {
                    let id = format!("{prefix}{}/independence", nh.id);
                    out.push(case(id, &nh.provenance, Live::Complex(nh.h.independence_complex()), none));
                }
                for jp in &corpus.join_pairs {
                    for (side, c) in [("a", &jp.a), ("b", &jp.b)] {
                        let id = format!("{prefix}{}/{side}", jp.id);
                        out.push(case(id, &jp.provenance, Live::Complex(c.clone()), none));
                    }
                }
            }
        }
        Suite::Operators | Suite::Axioms => {
            for mp in pairs {
                for (side, m) in [("m", &mp.m), ("n", &mp.n)] {
                    let id = format!("{prefix}{}/{side}", mp.id);
                    out.push(case(id, &mp.provenance, Live::Matroid(m.clone()), none));
                }
            }
            for nh in hypergraphs {
                out.push(case(format!("{prefix}{}", nh.id), &nh.provenance, Live::Hypergraph(nh.h.clone()), none));
            }
        }
        Suite::Join => {
            for jp in &corpus.join_pairs {
                let live = Live::Complexes(jp.a.clone(), jp.b.clone());
                out.push(case(format!("{prefix}{}", jp.id), &jp.provenance, live, none));
            }
        }
        Suite::MayerVietoris => {
            for cp in complex_pairs {
                let live = Live::Complexes(cp.a.clone(), cp.b.clone());
                out.push(case(format!("{prefix}{}", cp.id), &cp.provenance, live, none));
            }
        }
        Suite::GameSoundness => {
            for nh in hypergraphs {
                out.push(case(format!("{prefix}{}", nh.id), &nh.provenance, Live::Hypergraph(nh.h.clone()), none));
            }
        }
        Suite::Coloop | Suite::Claim => {
            for mp in pairs.filter(|p| p.size() <= DICHOTOMY_NMAX.min(config.nmax)) {
                for (order, ms) in [("mn", [&mp.m, &mp.n]), ("nm", [&mp.n, &mp.m])] {
                    for v in mp.m.ground().iter() {
                        let id = format!("{prefix}{}/{order}/v{v}", mp.id);
                        let live = Live::Family(ms.iter().map(|m| (*m).clone()).collect(), v);
                        out.push(case(id, &mp.provenance, live, none));
                    }
                }
            }
        }
        Suite::NuObservations | Suite::Nuqq | Suite::Dangling | Suite::EtaNu => {
            let combos = pair_ps(suite);
            for mp in pairs {
                for &(p, q) in &combos {
                    let id = format!("{prefix}{}/p{p}q{q}", mp.id);
                    out.push(case(id, &mp.provenance, Live::Pair(mp.m.clone(), mp.n.clone()), pq(p, q)));
                }
            }
        }
        Suite::ChiSum | Suite::DeltaEta => {
            for mp in pairs {
                let live = Live::Pair(mp.m.clone(), mp.n.clone());
                out.push(case(format!("{prefix}{}", mp.id), &mp.provenance, live, none));
            }
        }
        Suite::Tightness => {}
    }
}

/// The outcome of one case before it is tagged with its id.
struct Outcome {
    passed: bool,
    tight: bool,
    values: Value,
    failure: Option<String>,
}

impl Outcome {
    fn pass(values: Value) -> Self {
        Outcome { passed: true, tight: false, values, failure: None }
    }

    fn judged(holds: bool, tight: bool, values: Value, what: &str) -> Self {
        Outcome {
            passed: holds,
            tight: holds && tight,
            values,
            failure: (!holds).then(|| what.to_string()),
        }
    }

    fn fail(values: Value, what: impl Into<String>) -> Self {
        Outcome { passed: false, tight: false, values, failure: Some(what.into()) }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn wrong_instance(suite: Suite) -> Error {
    Error::domain(format!("instance kind does not fit suite {suite}"))
}

fn pair_params(params: CaseParams) -> Result<(usize, usize)> {
    match (params.p, params.q) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::domain("case needs p and q")),
    }
}

/// Runs one case. Errors of any kind count as failures.
pub fn run_case(suite: Suite, case: &Case, config: &SuiteConfig) -> CaseResult {
    let (passed, tight, values, error) = match check(suite, &case.live, case.params, config) {
        Ok(o) => (o.passed, o.tight, o.values, o.failure),
        Err(e) => (false, false, Value::Null, Some(e.to_string())),
    };
    CaseResult { id: case.id.clone(), provenance: case.provenance.clone(), passed, tight, values, error }
}

fn check(suite: Suite, live: &Live, params: CaseParams, config: &SuiteConfig) -> Result<Outcome> {
    let field = config.field;
    let limits = config.case_limits();
    match (suite, live) {
        (Suite::Duality, Live::Complex(c)) => check_duality(c),
        (Suite::Operators, Live::Matroid(m)) => check_matroid_operators(m),
        (Suite::Operators, Live::Hypergraph(h)) => check_hypergraph_operators(h),
        (Suite::Axioms, Live::Matroid(m)) => check_matroid_axioms(m),
        (Suite::Axioms, Live::Hypergraph(h)) => check_axiom_duality(h),
        (Suite::HomologyBasics, Live::Complex(c)) => check_homology_basics(c, field, &limits),
        (Suite::Join, Live::Complexes(a, b)) => {
            let shift = a.ground().max_element().map_or(0, |m| m + 1);
            let r = check_join_superadditivity(a, &b.shifted(shift)?, field)?;
            Ok(Outcome::judged(r.holds, r.slack == Some(0), to_value(&r), "join superadditivity fails"))
        }
        (Suite::MayerVietoris, Live::Complexes(a, b)) => {
            let r = check_mayer_vietoris(a, b, field)?;
            let tight = r.tight.iter().any(|&t| t);
            Ok(Outcome::judged(r.all_hold(), tight, to_value(&r), "a Mayer-Vietoris inequality fails"))
        }
        (Suite::GameSoundness, Live::Hypergraph(h)) => {
            let game = game_value_with(h, &limits, false)?;
            let eta = eta_with(&h.independence_complex(), field, &limits)?;
            let values = json!({ "game": game.value, "eta": eta, "positions": game.positions });
            Ok(Outcome::judged(game.value <= eta, game.value == eta, values, "game value exceeds η"))
        }
        (Suite::Coloop, Live::Family(ms, v)) => {
            let r = coloop_or_contract_with(ms, *v, field, &limits)?;
            Ok(Outcome::pass(to_value(&r)))
        }
        (Suite::Claim, Live::Family(ms, v)) => {
            let r = check_claim_equalities(ms, *v)?;
            Ok(Outcome::judged(r.all_hold(), false, to_value(&r), "a face-set equality fails"))
        }
        (Suite::NuObservations, Live::Pair(m, n)) => {
            let (p, q) = pair_params(params)?;
            check_nu_observations(m, n, p, q, &limits)
        }
        (Suite::Nuqq, Live::Pair(m, n)) => {
            let (_, q) = pair_params(params)?;
            let r = check_nuqq_bound_with(m, n, q, &limits)?;
            Ok(Outcome::judged(r.holds, r.slack == 0, to_value(&r), "ν_{1,1} < ⌈ν_{q,q}/q⌉"))
        }
        (Suite::Dangling, Live::Pair(m, n)) => {
            let (p, q) = pair_params(params)?;
            let nu11 = nu_pq_with(m, n, 1, 1, &limits)?.value;
            if nu11 == 0 {
                return Ok(Outcome::pass(json!({ "nu11": 0, "applicable": false })));
            }
            let w = dangling_witness_with(m, n, p, q, &limits)?;
            let ok = w.verify(m, n);
            Ok(Outcome::judged(ok, false, json!({ "nu11": nu11, "witness": w }), "dangling witness does not verify"))
        }
        (Suite::EtaNu, Live::Pair(m, n)) => {
            let (p, q) = pair_params(params)?;
            let r = check_eta_nu_bound_with(m, n, p, q, field, &limits)?;
            Ok(Outcome::judged(r.holds, r.tight, to_value(&r), "η < ν_{p,q}/(p+q)"))
        }
        (Suite::ChiSum, Live::Pair(m, n)) => {
            let r = check_chi_sum_with(m, n, &limits)?;
            Ok(Outcome::judged(r.holds, r.slack == 0, to_value(&r), "χ(M ∩ N) exceeds χ(M) + χ(N)"))
        }
        (Suite::DeltaEta, Live::Pair(m, n)) => {
            let r = check_delta_eta_bound_with(m, n, field, &limits)?;
            Ok(Outcome::judged(r.holds, r.tight_sum, to_value(&r), "Δ_η bound fails"))
        }
        (Suite::Tightness, Live::Tightness(p, q)) => check_tightness(*p, *q, field, &limits),
        _ => Err(wrong_instance(suite)),
    }
}

fn check_duality(c: &SimplicialComplex) -> Result<Outcome> {
    let support = c.vertex_support();
    if support.is_empty() {
        return Ok(Outcome::pass(json!({ "applicable": false })));
    }
    let restricted = !c.covers_ground();
    let target = if restricted { c.restrict(support)? } else { c.clone() };
    let ok = target.duality_roundtrip()?;
    let values = json!({ "restricted_to_support": restricted, "circuits": target.circ()?.len() });
    Ok(Outcome::judged(ok, false, values, "I(circ(C)) differs from C"))
}

fn check_matroid_operators(m: &Matroid) -> Result<Outcome> {
    let ground = m.ground();
    for x in ground.subsets() {
        if !x.is_empty() {
            let oracle = SimplicialComplex::from_predicate(x, |s| m.is_independent(s));
            if *m.restrict(x)?.complex() != oracle {
                return Ok(Outcome::fail(json!({ "X": x }), format!("restriction to {x} is wrong")));
            }
        }
        let rx = m.rank_unchecked(x);
        let oracle = SimplicialComplex::from_predicate(ground.difference(x), |s| {
            m.rank_unchecked(s.union(x)) == s.len() + rx
        });
        if *m.contract(x)?.complex() != oracle || m.contract_complex_literal(x)? != oracle {
            return Ok(Outcome::fail(json!({ "X": x }), format!("contraction by {x} is wrong")));
        }
        let oracle = SimplicialComplex::from_predicate(ground, |s| m.is_independent(s.difference(x)));
        let literal = m.circuit_hypergraph().sim(x)?.independence_complex();
        if *m.sim(x)?.complex() != oracle || literal != oracle {
            return Ok(Outcome::fail(json!({ "X": x }), format!("deletion-keeping-ground by {x} is wrong")));
        }
    }
    Ok(Outcome::pass(json!({ "subsets": 1u64 << ground.len() })))
}

fn check_hypergraph_operators(h: &Hypergraph) -> Result<Outcome> {
    let v = h.vertices();
    for x in v.subsets() {
        let rest = v.difference(x);
        let restricted = SimplicialComplex::from_predicate(x, |s| h.is_independent(s));
        let contracted = SimplicialComplex::from_predicate(rest, |s| {
            !h.edges().iter().any(|e| !e.is_subset(x) && e.is_subset(s.union(x)))
        });
        let simmed = SimplicialComplex::from_predicate(v, |s| h.is_independent(s.difference(x)));
        let deleted = SimplicialComplex::from_predicate(rest, |s| h.is_independent(s));
        let checks = [
            ("restriction", h.restrict(x)?.independence_complex() == restricted),
            ("contraction", h.contract(x)?.independence_complex() == contracted),
            ("sim", h.sim(x)?.independence_complex() == simmed),
            ("vertex deletion", h.delete_vertices(x)?.independence_complex() == deleted),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Ok(Outcome::fail(json!({ "X": x }), format!("{name} by {x} is wrong")));
        }
    }
    Ok(Outcome::pass(json!({ "subsets": 1u64 << v.len() })))
}

fn check_matroid_axioms(m: &Matroid) -> Result<Outcome> {
    if let Err(cx) = verify_matroid_axioms(m.complex()) {
        return Ok(Outcome::fail(to_value(&cx), format!("independence axioms fail: {cx}")));
    }
    if let Err(v) = m.circuit_hypergraph().check_circuit_axioms() {
        return Ok(Outcome::fail(to_value(&v), format!("circuit axioms fail: {v}")));
    }
    let n = ground_size(m.ground());
    let from_circuits = Matroid::from_circuits(n, m.circuits().iter().copied())?;
    let from_bases = Matroid::from_independent_sets(n, m.bases())?;
    let ok = from_circuits == *m && from_bases == *m;
    let values = json!({ "circuits": m.circuits().len(), "bases": m.bases().len(), "rank": m.full_rank() });
    Ok(Outcome::judged(ok, false, values, "circuit or basis round trip differs"))
}

fn ground_size(g: ElementSet) -> usize {
    g.max_element().map_or(0, |m| m + 1)
}

/// A clutter satisfies the circuit axioms exactly when its independence
/// complex satisfies the independence axioms.
fn check_axiom_duality(h: &Hypergraph) -> Result<Outcome> {
    let clutter = Hypergraph::new(h.vertices(), h.minimal_edges())?;
    let circuits_ok = clutter.check_circuit_axioms().is_ok();
    let independence_ok = verify_matroid_axioms(&h.independence_complex()).is_ok();
    let values = json!({ "circuit_axioms": circuits_ok, "independence_axioms": independence_ok });
    Ok(Outcome::judged(circuits_ok == independence_ok, false, values, "axiom systems disagree"))
}

fn check_homology_basics(c: &SimplicialComplex, field: CoefficientField, limits: &Limits) -> Result<Outcome> {
    if c.is_void() {
        let eta = eta_with(c, field, limits)?;
        return Ok(Outcome::judged(eta == EtaValue::Finite(0), false, json!({ "eta": eta }), "void complex has η != 0"));
    }
    let faces = c.faces_within(limits.face_budget)?;
    // reduced Euler characteristic, counting the empty face
    let euler: i64 = faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum();
    let is_cone = c.facets().is_some_and(|fs| !fs.iter().fold(c.vertex_support(), |a, f| a.intersection(*f)).is_empty());
    let mut fields = vec![CoefficientField::Rationals, CoefficientField::Prime(2)];
    if !fields.contains(&field) {
        fields.push(field);
    }
    let mut etas = Vec::new();
    let mut values = serde_json::Map::new();
    for f in fields {
        let betti = reduced_betti_with(c, f, limits)?;
        let alternating: i64 =
            betti.0.iter().enumerate().map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) }).sum();
        let eta = eta_with(c, f, limits)?;
        values.insert(f.to_string(), json!({ "betti": betti, "eta": eta }));
        if alternating != euler {
            return Ok(Outcome::fail(Value::Object(values), format!("Euler identity fails over {f}")));
        }
        if betti.eta() != eta {
            return Ok(Outcome::fail(Value::Object(values), format!("η disagrees with the Betti profile over {f}")));
        }
        if is_cone && !eta.is_infinite() {
            return Ok(Outcome::fail(Value::Object(values), format!("cone has finite η over {f}")));
        }
        etas.push(eta);
    }
    values.insert("euler".into(), json!(euler));
    // a prime field never sees less homology than the rationals
    let ok = etas[1..].iter().all(|&e| e <= etas[0]);
    Ok(Outcome::judged(ok, false, Value::Object(values), "η over a prime field exceeds η over Q"))
}

fn verify_nu_result(m: &Matroid, n: &Matroid, p: usize, q: usize, r: &NuResult) -> bool {
    r.a.len() == p
        && r.b.len() == q
        && r.a.iter().all(|s| m.is_independent(*s))
        && r.b.iter().all(|s| n.is_independent(*s))
        && objective(&r.a, &r.b) == r.value
}

fn check_nu_observations(m: &Matroid, n: &Matroid, p: usize, q: usize, limits: &Limits) -> Result<Outcome> {
    let nu = nu_pq_with(m, n, p, q, limits)?;
    let eq = equalized_witness_with(m, n, p, q, limits)?;
    let equalized = verify_nu_result(m, n, p, q, &eq)
        && eq.value == nu.value
        && m.ground().iter().all(|v| multiplicity(v, &eq.a) == multiplicity(v, &eq.b))
        && eq.a.iter().map(|s| s.len()).sum::<usize>() == nu.value;
    let free = Matroid::free(ground_size(m.ground()))?;
    let up = check_monotone(m, n, m, n, 1, 1, p, q)?;
    let wider = check_monotone(m, n, &free, n, p, q, p, q)?;
    let nu11 = nu_pq_with(m, n, 1, 1, limits)?.value;
    let edmonds = max_common_independent(m, n)?.size;
    let values = json!({
        "nu": nu.value,
        "witness": nu,
        "equalized": eq,
        "monotone_in_pq": up,
        "monotone_in_matroid": wider,
        "nu11": nu11,
        "edmonds": edmonds,
    });
    let checks = [
        (verify_nu_result(m, n, p, q, &nu), "ν witness does not realize ν"),
        (equalized, "no equalized witness"),
        (up.holds && wider.holds, "ν is not monotone"),
        (nu11 == edmonds, "ν_{1,1} differs from the maximum common independent set"),
        (nu.value <= p.max(q) * nu11, "ν_{p,q} exceeds max(p, q) ν_{1,1}"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => Ok(Outcome::fail(values, *what)),
        None => Ok(Outcome::pass(values)),
    }
}

fn check_tightness(p: usize, q: usize, field: CoefficientField, limits: &Limits) -> Result<Outcome> {
    let t = tightness_example(p, q)?;
    let inter = Matroid::intersection_complex(&[&t.m, &t.n])?;
    let (chi_m, chi_n) = (chi_matroid(&t.m)?, chi_matroid(&t.n)?);
    let (cover_m, cover_n) = (chi(t.m.complex())?.0, chi(t.n.complex())?.0);
    let eta = eta_with(&inter, field, limits)?;
    let delta = delta_eta_with(&inter, field, limits)?;
    let eta_nu = check_eta_nu_bound_with(&t.m, &t.n, 1, 1, field, limits)?;
    let target = p + q;
    let values = json!({
        "p": p,
        "q": q,
        "chi_m": chi_m,
        "chi_n": chi_n,
        "cover_m": cover_m,
        "cover_n": cover_n,
        "eta": eta,
        "delta_eta": crate::homology::ratio_string(&delta),
        "eta_nu_11": eta_nu,
    });
    let checks = [
        (chi_m == target && chi_n == target, "χ(M) or χ(N) differs from p + q"),
        (cover_m == target && cover_n == target, "cover search disagrees with the rank formula"),
        (eta == EtaValue::Finite(1), "η(M ∩ N) != 1"),
        (delta == Ratio::from_integer((2 * target) as u64), "Δ_η(M ∩ N) != 2(p + q)"),
        (delta == Ratio::from_integer((chi_m + chi_n) as u64), "Δ_η(M ∩ N) != χ(M) + χ(N)"),
        (eta_nu.tight, "η = ν_{1,1}/2 is not tight"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => Ok(Outcome::fail(values, *what)),
        None => Ok(Outcome { passed: true, tight: true, values, failure: None }),
    }
}

/// Runs every case of `suite` on a work pool. The first failure stops
/// cases that have not started yet; they are counted as skipped.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let all = cases(suite, config)?;
    let abort = AtomicBool::new(false);
    let skipped = AtomicUsize::new(0);
    let mut ran: Vec<(CaseResult, &Case)> = all
        .par_iter()
        .filter_map(|c| {
            if abort.load(Ordering::Relaxed) {
                skipped.fetch_add(1, Ordering::Relaxed);
                return None;
            }
            let r = run_case(suite, c, config);
            if !r.passed {
                abort.store(true, Ordering::Relaxed);
            }
            Some((r, c))
        })
        .collect();
    ran.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    let failures: Vec<ReplayBundle> = ran
        .iter()
        .filter(|(r, _)| !r.passed)
        .map(|(r, c)| ReplayBundle {
            suite: suite.name().to_string(),
            case_id: c.id.clone(),
            provenance: c.provenance.clone(),
            seed: config.seed,
            field: config.field.to_string(),
            limits: config.limits,
            params: c.params,
            instance: c.live.to_instance(),
            result: r.clone(),
        })
        .collect();
    let cases: Vec<CaseResult> = ran.into_iter().map(|(r, _)| r).collect();
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        seed: config.seed,
        field: config.field.to_string(),
        tight_cases: cases.iter().filter(|c| c.tight).count(),
        passed: failures.is_empty(),
        cases,
        failures,
        skipped: skipped.into_inner(),
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Reruns the case stored in a replay bundle.
pub fn replay(bundle: &ReplayBundle) -> Result<CaseResult> {
    let suite: Suite = bundle.suite.parse()?;
    let config = SuiteConfig {
        seed: bundle.seed,
        field: bundle.field.parse()?,
        limits: bundle.limits,
        list_nmax: bundle.limits.chi_list_max_ground,
        ..SuiteConfig::default()
    };
    let c = Case {
        id: bundle.case_id.clone(),
        provenance: bundle.provenance.clone(),
        live: bundle.instance.build()?,
        params: bundle.params,
    };
    Ok(run_case(suite, &c, &config))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig { include_corpus: false, random_cases: 6, nmax: 5, seed: 3, ..SuiteConfig::default() }
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Domain(_))));
    }

    #[test]
    fn every_suite_passes_on_small_random_instances() {
        let config = small();
        for s in Suite::ALL {
            let r = run_suite(s, &config).unwrap();
            assert!(r.passed, "{s}: {:?}", r.failures.first().map(|f| &f.result));
            assert!(!r.cases.is_empty(), "{s} has no cases");
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let config = small();
        let a = run_suite(Suite::EtaNu, &config).unwrap();
        let b = run_suite(Suite::EtaNu, &config).unwrap();
        assert_eq!(a.cases, b.cases);
    }

    #[test]
    fn tightness_grid_is_tight() {
        let config = SuiteConfig { pmax: 2, qmax: 2, ..SuiteConfig::default() };
        let r = run_suite(Suite::Tightness, &config).unwrap();
        assert!(r.passed);
        assert_eq!(r.cases.len(), 4);
        assert_eq!(r.tight_cases, 4);
    }

    #[test]
    fn replay_reproduces_a_failure() {
        // a hand-made failing bundle: the wrong instance kind for the suite
        let c = Case {
            id: "x".into(),
            provenance: "test".into(),
            live: Live::Tightness(1, 1),
            params: CaseParams::default(),
        };
        let config = SuiteConfig::default();
        let r = run_case(Suite::Join, &c, &config);
        assert!(!r.passed);
        let bundle = ReplayBundle {
            suite: "join".into(),
            case_id: c.id.clone(),
            provenance: c.provenance.clone(),
            seed: 0,
            field: "q".into(),
            limits: Limits::default(),
            params: c.params,
            instance: c.live.to_instance(),
            result: r.clone(),
        };
        let text = serde_json::to_string(&bundle).unwrap();
        let back: ReplayBundle = serde_json::from_str(&text).unwrap();
        assert_eq!(replay(&back).unwrap(), r);
    }
}
