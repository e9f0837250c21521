//! Acceptance criteria. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use matcolor::coloring::{check_chi_sum_with, chi, chi_matroid};
use matcolor::harness::corpus::random_pair;
use matcolor::harness::suites::{run_suite, standard_corpus, Suite, SuiteConfig, DICHOTOMY_NMAX, ETA_NU_COMBOS};
use matcolor::harness::{tightness_example, VerificationReport};
use matcolor::homology::{delta_eta, eta};
use matcolor::intersection::max_common_independent;
use matcolor::nu::nu_pq;
use matcolor::{CoefficientField, EtaValue, Limits, Matroid, Ratio};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(s: Suite) -> Result<VerificationReport, String> {
    let r = run_suite(s, &SuiteConfig::default()).map_err(|e| format!("{s}: {e}"))?;
    if let Some(f) = r.failures.first() {
        return Err(format!("{s}: case {} failed: {:?}", f.case_id, f.result.error));
    }
    ensure(r.passed && r.skipped == 0, || format!("{s}: not every case ran"))?;
    Ok(r)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("{what} took {took:?}, over {limit:?}"))
}

fn tightness_family() -> Verdict {
    let start = Instant::now();
    for p in 1..=3 {
        for q in 1..=3 {
            let t = tightness_example(p, q).map_err(|e| e.to_string())?;
            let target = p + q;
            let chis = [
                chi_matroid(&t.m).unwrap(),
                chi_matroid(&t.n).unwrap(),
                chi(t.m.complex()).unwrap().0,
                chi(t.n.complex()).unwrap().0,
                common::min_independent_partition(&t.m).unwrap(),
                common::min_independent_partition(&t.n).unwrap(),
            ];
            ensure(chis.iter().all(|&c| c == target), || format!("({p},{q}): χ values {chis:?}, want {target}"))?;
            let inter = Matroid::intersection_complex(&[&t.m, &t.n]).unwrap();
            let e = eta(&inter, CoefficientField::Rationals).unwrap();
            ensure(e == EtaValue::Finite(1), || format!("({p},{q}): η = {e}"))?;
            let d = delta_eta(&inter, CoefficientField::Rationals).unwrap();
            let want = Ratio::from_integer((2 * target) as u64);
            ensure(d == want && d == Ratio::from_integer((chis[0] + chis[1]) as u64), || {
                format!("({p},{q}): Δ_η = {d}, want {want}")
            })?;
        }
    }
    suite(Suite::Tightness)?;
    within(start, Duration::from_secs(60), "tightness family")?;
    Ok("9 instances, χ(M) = χ(N) = p + q, η = 1, Δ_η = 2(p + q) exactly".into())
}

fn chi_sum() -> Verdict {
    let start = Instant::now();
    let corpus = standard_corpus().map_err(|e| e.to_string())?;
    let pairs: Vec<_> = corpus.pairs.iter().filter(|p| p.size() <= 7).collect();
    ensure(pairs.len() >= 200, || format!("only {} pairs with n <= 7", pairs.len()))?;
    let limits = Limits { chi_list_max_ground: 5, chi_list_max_k: 3, ..Limits::default() };
    let listed: Vec<bool> = pairs
        .par_iter()
        .map(|p| {
            let r = check_chi_sum_with(&p.m, &p.n, &limits).map_err(|e| format!("{}: {e}", p.id))?;
            ensure(r.holds, || format!("{}: {r:?}", p.id))?;
            let eligible = p.size() <= 5 && r.bound <= 3;
            ensure(!eligible || r.chi_list.is_some(), || format!("{}: χ_ℓ not computed", p.id))?;
            Ok(eligible)
        })
        .collect::<Result<_, String>>()?;
    suite(Suite::ChiSum)?;
    within(start, Duration::from_secs(600), "chi sum")?;
    let lists = listed.iter().filter(|&&b| b).count();
    Ok(format!("{} pairs for χ, {lists} pairs also for χ_ℓ", pairs.len()))
}

fn eta_nu() -> Verdict {
    let r = suite(Suite::EtaNu)?;
    let pairs = standard_corpus().unwrap().pairs.iter().filter(|p| p.size() <= 7).count();
    ensure(r.cases.len() == pairs * ETA_NU_COMBOS.len(), || format!("{} cases for {pairs} pairs", r.cases.len()))?;
    let c4 = r.cases.iter().find(|c| c.id == "blown-c4-1-1/p1q1").ok_or("blown 4-cycle case missing")?;
    ensure(c4.tight && c4.values["eta"] == 1 && c4.values["nu"] == 2, || format!("blown 4-cycle: {}", c4.values))?;
    Ok(format!("{} cases, {} tight, blown 4-cycle tight at 1 = 2/2", r.cases.len(), r.tight_cases))
}

fn topological_soundness() -> Verdict {
    let join = suite(Suite::Join)?;
    let mv = suite(Suite::MayerVietoris)?;
    let game = suite(Suite::GameSoundness)?;
    let corpus = standard_corpus().unwrap();
    ensure(join.cases.len() >= 500 && mv.cases.len() >= 500, || "fewer than 500 complex pairs".into())?;
    ensure(corpus.complex_pairs.iter().all(|p| p.a.ground().len() <= 7), || "complex pair above n = 7".into())?;
    ensure(game.cases.len() >= 300, || "fewer than 300 hypergraphs".into())?;
    ensure(corpus.hypergraphs.iter().all(|h| h.h.vertices().len() <= 8), || "hypergraph above n = 8".into())?;
    Ok(format!(
        "{} joins, {} Mayer-Vietoris pairs, {} games, zero failures",
        join.cases.len(),
        mv.cases.len(),
        game.cases.len()
    ))
}

fn coloop_or_contract() -> Verdict {
    let coloop = suite(Suite::Coloop)?;
    let claim = suite(Suite::Claim)?;
    let expected: usize = standard_corpus()
        .unwrap()
        .pairs
        .iter()
        .filter(|p| p.size() <= DICHOTOMY_NMAX)
        .map(|p| 2 * p.size())
        .sum();
    ensure(coloop.cases.len() == expected && claim.cases.len() == expected, || {
        format!("{} and {} cases, want {expected}", coloop.cases.len(), claim.cases.len())
    })?;
    Ok(format!("{expected} (pair, order, vertex) combinations with n <= 6"))
}

fn nu_observations() -> Verdict {
    let obs = suite(Suite::NuObservations)?;
    let nuqq = suite(Suite::Nuqq)?;
    let dangling = suite(Suite::Dangling)?;
    let applicable = dangling.cases.iter().filter(|c| c.values.get("witness").is_some()).count();
    Ok(format!(
        "{} equalized-witness cases, {} ν_(q,q) cases, {applicable} dangling witnesses",
        obs.cases.len(),
        nuqq.cases.len()
    ))
}

fn oracle_cross_checks() -> Verdict {
    let corpus = standard_corpus().map_err(|e| e.to_string())?;
    let mut pairs: Vec<(String, Matroid, Matroid)> =
        corpus.pairs.iter().map(|p| (p.id.clone(), p.m.clone(), p.n.clone())).collect();
    for i in 0..40u64 {
        let (m, n) = random_pair(9_000 + i, 8).map_err(|e| e.to_string())?;
        pairs.push((format!("n8-{i}"), m, n));
    }
    let counts: Vec<(usize, usize, usize)> = pairs
        .par_iter()
        .map(|(id, m, n)| {
            let cert = max_common_independent(m, n).map_err(|e| format!("{id}: {e}"))?;
            let brute = common::max_common_independent(m, n);
            ensure(cert.size == brute, || format!("{id}: Edmonds {} vs brute force {brute}", cert.size))?;
            let size = m.ground().len();
            let mut chis = 0;
            if size <= 7 {
                for x in [m, n] {
                    let formula = chi_matroid(x).map_err(|e| format!("{id}: {e}"))?;
                    let cover = common::min_independent_partition(x).unwrap();
                    ensure(formula == cover, || format!("{id}: χ formula {formula} vs cover {cover}"))?;
                    chis += 1;
                }
            }
            let mut nus = 0;
            if size <= 5 {
                for p in 1..=3 {
                    for q in 1..=3 {
                        let fast = nu_pq(m, n, p, q).map_err(|e| format!("{id}: {e}"))?.value;
                        let brute = common::nu(m, n, p, q);
                        ensure(fast == brute, || format!("{id}: ν_({p},{q}) {fast} vs brute force {brute}"))?;
                        nus += 1;
                    }
                }
            }
            Ok((1, chis, nus))
        })
        .collect::<Result<_, String>>()?;
    let duality = suite(Suite::Duality)?;
    let (e, c, n) = counts.iter().fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(format!(
        "{e} intersections, {c} χ formulas, {n} ν values, {} duality round trips",
        duality.cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("tightness-family", tightness_family),
        ("chi-sum", chi_sum),
        ("eta-nu", eta_nu),
        ("topological-soundness", topological_soundness),
        ("coloop-or-contract", coloop_or_contract),
        ("nu-observations", nu_observations),
        ("oracle-cross-checks", oracle_cross_checks),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
