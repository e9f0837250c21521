//! `matcolor`: connectivity, colouring and intersection bounds for
//! matroids, simplicial complexes and hypergraphs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matcolor::bound_engine::{check_claim_equalities, coloop_or_contract_with, game_value_with};
use matcolor::coloring::{check_chi_sum_with, chi, chi_list_with};
use matcolor::complex::ComplexFile;
use matcolor::harness::generators::{random_complex, random_hypergraph, random_matroid, MatroidKind};
use matcolor::harness::report::{Case, CaseParams, Live, ReplayBundle};
use matcolor::harness::suites::{replay, run_case, run_suite, Suite, SuiteConfig};
use matcolor::harness::tightness_example;
use matcolor::homology::{eta_with, reduced_betti_with};
use matcolor::hypergraph::HypergraphFile;
use matcolor::intersection::{augmentation_sequence, max_common_independent};
use matcolor::io::{element_set, load_instance, load_json, load_matroid, Instance};
use matcolor::nu::{dangling_witness_with, equalized_witness_with, nu_pq_with};
use matcolor::{CoefficientField, Error, Limits};

#[derive(Parser)]
#[command(name = "matcolor", version, about = "Colouring and connectivity bounds for matroid intersections")]
struct Cli {
    /// Coefficient field for homology: q, gf2, gf3, ...
    #[arg(long, global = true, default_value = "q")]
    field: CoefficientField,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated faces and on multisets in ν searches.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include derivation traces where available.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homological connectivity η of a complex, matroid or hypergraph.
    Eta { file: PathBuf },
    /// Reduced Betti numbers.
    Betti { file: PathBuf },
    /// Chromatic number by exact cover search.
    Chi { file: PathBuf },
    /// List chromatic number up to a bound.
    ChiList {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// Compare χ(M ∩ N) with χ(M) + χ(N).
    ChiSum { m: PathBuf, n: PathBuf },
    /// ν_{p,q} of a matroid pair.
    Nu {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Also print an equalized witness and, when p <= q, a dangling witness.
        #[arg(long)]
        witness: bool,
    },
    /// Maximum common independent set with a rank certificate.
    Intersect { m: PathBuf, n: PathBuf },
    /// Value of the deletion-contraction game on a hypergraph.
    Game { file: PathBuf },
    /// Minimal non-faces of a complex.
    Circ { file: PathBuf },
    /// A minor of a matroid.
    Minor {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: MinorOp,
        /// Comma-separated elements.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
    /// The blown-up 4-cycle pair.
    Tightness {
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// Run a verification suite, or check files against one suite.
    Verify(VerifyArgs),
    /// Generate a random instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MinorOp {
    Restrict,
    Contract,
    Sim,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: Option<String>,
    /// Instance files checked as a single case instead of the corpus.
    files: Vec<PathBuf>,
    /// Seeded random instances added to the corpus.
    #[arg(long, default_value_t = 0)]
    cases: usize,
    #[arg(long, default_value_t = 7)]
    nmax: usize,
    #[arg(long, default_value_t = 3)]
    pmax: usize,
    #[arg(long, default_value_t = 3)]
    qmax: usize,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    v: Option<usize>,
    /// Skip the standard corpus.
    #[arg(long)]
    no_corpus: bool,
    /// Allow n > 7, or list colouring above n = 5.
    #[arg(long)]
    allow_large: bool,
    #[arg(long, default_value_t = 5)]
    list_nmax: usize,
    /// Rerun a failure bundle.
    #[arg(long, conflicts_with = "suite")]
    replay: Option<PathBuf>,
    /// Where failure bundles are written.
    #[arg(long, default_value = ".")]
    bundle_dir: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Matroid family: uniform, partition, graphic, free or mixed.
    #[arg(long, default_value = "mixed")]
    family: MatroidKind,
    #[arg(long, default_value_t = 0.6)]
    density: f64,
    /// Hypergraph edge count.
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    arity: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Matroid,
    Complex,
    Hypergraph,
}

/// Exit status for an error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TheoremViolation(_) | Error::ClaimViolation(_) => 1,
        Error::Resource(_) => 3,
        _ => 2,
    }
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    field: CoefficientField,
    seed: u64,
    limits: Limits,
    json: bool,
    trace: bool,
}

impl Ctx {
    /// Prints `value` as JSON, or `text` otherwise.
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
        } else {
            println!("{}", text());
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(b) = cli.budget {
        limits.face_budget = b;
        limits.nu_max_multisets = b as u64;
    }
    let ctx = Ctx { field: cli.field, seed: cli.seed, limits, json: cli.json, trace: cli.trace };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Eta { file } => {
            let c = load_instance(&file)?.complex();
            let eta = eta_with(&c, ctx.field, &ctx.limits)?;
            ctx.emit(&json!({ "eta": eta, "field": ctx.field }), || format!("η = {eta} over {}", ctx.field));
            Ok(0)
        }
        Command::Betti { file } => {
            let c = load_instance(&file)?.complex();
            let b = reduced_betti_with(&c, ctx.field, &ctx.limits)?;
            ctx.emit(&json!({ "reduced_betti": b, "eta": b.eta(), "field": ctx.field }), || {
                let parts: Vec<String> =
                    b.0.iter().enumerate().map(|(i, x)| format!("β̃_{} = {x}", i as isize - 1)).collect();
                parts.join("\n")
            });
            Ok(0)
        }
        Command::Chi { file } => {
            let c = load_instance(&file)?.complex();
            let (k, coloring) = chi(&c)?;
            ctx.emit(&json!({ "chi": k, "coloring": coloring }), || {
                let classes: Vec<String> = coloring.classes.iter().map(|s| s.to_string()).collect();
                format!("χ = {k}\nclasses: {}", classes.join(" "))
            });
            Ok(0)
        }
        Command::ChiList { file, kmax } => {
            let c = load_instance(&file)?.complex();
            let r = chi_list_with(&c, kmax, &ctx.limits)?;
            ctx.emit(&to_value(&r), || format!("χ_ℓ {}", describe_list(&r.value.to_string())));
            Ok(0)
        }
        Command::ChiSum { m, n } => {
            let (m, n) = (load_matroid(&m)?, load_matroid(&n)?);
            let r = check_chi_sum_with(&m, &n, &ctx.limits)?;
            ctx.emit(&to_value(&r), || {
                let list = r.chi_list.map_or("not computed".to_string(), |v| describe_list(&v.to_string()));
                format!(
                    "χ(M) = {}, χ(N) = {}, χ(M ∩ N) = {}, χ_ℓ(M ∩ N) {}\nbound {} {}",
                    r.chi_m,
                    r.chi_n,
                    r.chi_intersection,
                    list,
                    r.bound,
                    if r.holds { "holds" } else { "FAILS" }
                )
            });
            Ok(if r.holds { 0 } else { 1 })
        }
        Command::Nu { m, n, p, q, witness } => {
            let (m, n) = (load_matroid(&m)?, load_matroid(&n)?);
            let r = nu_pq_with(&m, &n, p, q, &ctx.limits)?;
            let mut out = json!({ "p": p, "q": q, "nu": r.value, "witness": r });
            if witness {
                out["equalized"] = to_value(&equalized_witness_with(&m, &n, p, q, &ctx.limits)?);
                if p <= q && r.value > 0 {
                    out["dangling"] = to_value(&dangling_witness_with(&m, &n, p, q, &ctx.limits)?);
                }
            }
            ctx.emit(&out, || {
                let a: Vec<String> = r.a.iter().map(|s| s.to_string()).collect();
                let b: Vec<String> = r.b.iter().map(|s| s.to_string()).collect();
                format!("ν_{{{p},{q}}} = {}\nA: {}\nB: {}", r.value, a.join(" "), b.join(" "))
            });
            Ok(0)
        }
        Command::Intersect { m, n } => {
            let (m, n) = (load_matroid(&m)?, load_matroid(&n)?);
            let cert = max_common_independent(&m, &n)?;
            let mut out = to_value(&cert);
            if ctx.trace {
                out["augmentations"] = to_value(&augmentation_sequence(&m, &n)?);
            }
            ctx.emit(&out, || {
                format!("size {}\nI = {}\nV1 = {}, V2 = {}", cert.size, cert.independent, cert.v1, cert.v2)
            });
            Ok(0)
        }
        Command::Game { file } => {
            let h = load_instance(&file)?.hypergraph();
            let r = game_value_with(&h, &ctx.limits, ctx.trace)?;
            ctx.emit(&to_value(&r), || format!("game value {} ({} positions)", r.value, r.positions));
            Ok(0)
        }
        Command::Circ { file } => {
            let c = load_instance(&file)?.complex();
            let circuits = c.circ()?;
            let file = HypergraphFile {
                n: c.ground().max_element().map_or(0, |x| x + 1),
                edges: circuits.iter().map(|s| s.to_vec()).collect(),
            };
            ctx.emit(&to_value(&file), || {
                circuits.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n")
            });
            Ok(0)
        }
        Command::Minor { file, op, set } => {
            let m = load_matroid(&file)?;
            let x = element_set(64, &set)?;
            let minor = match op {
                MinorOp::Restrict => m.restrict(x)?,
                MinorOp::Contract => m.contract(x)?,
                MinorOp::Sim => m.sim(x)?,
            };
            let complex = ComplexFile::from_complex(minor.complex());
            let out = json!({ "ground": minor.ground(), "complex": complex, "circuits": minor.circuits() });
            ctx.emit(&out, || minor.to_string());
            Ok(0)
        }
        Command::Tightness { p, q } => {
            let t = tightness_example(p, q)?;
            let out = json!({ "p": p, "q": q, "M": t.m.to_file(), "N": t.n.to_file(), "multigraph": t.multigraph });
            ctx.emit(&out, || {
                let edges: Vec<String> = t.multigraph.iter().map(|(a, b)| format!("{a}{b}")).collect();
                format!("multigraph edges: {}\nM = {}\nN = {}", edges.join(" "), t.m, t.n)
            });
            Ok(0)
        }
        Command::Verify(args) => verify(ctx, args),
        Command::Gen(args) => {
            let value = match args.kind {
                GenKind::Matroid => to_value(&random_matroid(ctx.seed, args.n, args.family)?.to_file()),
                GenKind::Complex => {
                    to_value(&ComplexFile::from_complex(&random_complex(ctx.seed, args.n, args.density)?))
                }
                GenKind::Hypergraph => to_value(&HypergraphFile::from_hypergraph(&random_hypergraph(
                    ctx.seed, args.n, args.m, args.arity,
                )?)),
            };
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            Ok(0)
        }
    }
}

fn describe_list(v: &str) -> String {
    match v.strip_prefix('>') {
        Some(k) => format!("> {k}"),
        None => format!("= {v}"),
    }
}

fn verify(ctx: &Ctx, args: VerifyArgs) -> Outcome {
    if let Some(path) = &args.replay {
        let bundle: ReplayBundle = load_json(path)?;
        let r = replay(&bundle)?;
        ctx.emit(&to_value(&r), || {
            format!("{} {}: {}", bundle.suite, r.id, if r.passed { "passes" } else { "FAILS" })
        });
        return Ok(if r.passed { 0 } else { 1 });
    }
    let Some(name) = args.suite.as_deref() else {
        return Err(Failure(2, "verify needs a suite name or --replay".into()));
    };
    if !args.allow_large && (args.nmax > 7 || args.list_nmax > 5) {
        return Err(Failure(2, "--nmax above 7 or --list-nmax above 5 needs --allow-large".into()));
    }
    let config = SuiteConfig {
        seed: ctx.seed,
        random_cases: args.cases,
        nmax: args.nmax,
        list_nmax: args.list_nmax,
        pmax: args.pmax,
        qmax: args.qmax,
        field: ctx.field,
        limits: ctx.limits,
        include_corpus: !args.no_corpus,
    };
    let suites: Vec<Suite> = if name == "all" { Suite::ALL.to_vec() } else { vec![name.parse()?] };
    if !args.files.is_empty() {
        return verify_files(ctx, suites[0], &args, &config);
    }
    let mut code = 0;
    for suite in suites {
        let report = run_suite(suite, &config)?;
        if ctx.json {
            print!("{}", report.json_lines());
        } else {
            print!("{}", report.summary_table());
        }
        for bundle in &report.failures {
            let path = write_bundle(&args.bundle_dir, bundle)?;
            eprintln!("replay bundle: {}", path.display());
            let resource = bundle.result.error.as_deref().is_some_and(|e| e.starts_with("resource limit"));
            code = code.max(if resource { 3 } else { 1 });
        }
    }
    Ok(code)
}

fn write_bundle(dir: &Path, bundle: &ReplayBundle) -> Result<PathBuf, Failure> {
    let safe: String =
        bundle.case_id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    let path = dir.join(format!("replay-{}-{safe}.json", bundle.suite));
    let text = serde_json::to_string_pretty(bundle).expect("serializable");
    fs::create_dir_all(dir)
        .and_then(|_| fs::write(&path, text))
        .map_err(|e| Failure(2, format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// Builds the single case described by instance files.
fn file_case(suite: Suite, args: &VerifyArgs) -> Result<Case, Failure> {
    let instances = args.files.iter().map(load_instance).collect::<Result<Vec<Instance>, Error>>()?;
    let matroids = || -> Result<Vec<matcolor::Matroid>, Error> {
        instances.iter().map(|i| i.matroid().cloned()).collect()
    };
    let need = |k: usize| -> Result<(), Failure> {
        if instances.len() == k {
            Ok(())
        } else {
            Err(Failure(2, format!("suite {suite} takes {k} instance file(s), got {}", instances.len())))
        }
    };
    let mut params = CaseParams::default();
    let live = match suite {
        Suite::Duality | Suite::HomologyBasics => {
            need(1)?;
            Live::Complex(instances[0].complex())
        }
        Suite::Join | Suite::MayerVietoris => {
            need(2)?;
            Live::Complexes(instances[0].complex(), instances[1].complex())
        }
        Suite::GameSoundness => {
            need(1)?;
            Live::Hypergraph(instances[0].hypergraph())
        }
        Suite::Operators | Suite::Axioms => {
            need(1)?;
            match &instances[0] {
                Instance::Matroid(m) => Live::Matroid(m.clone()),
                other => Live::Hypergraph(other.hypergraph()),
            }
        }
        Suite::Coloop | Suite::Claim => {
            let v = args.v.ok_or_else(|| Failure(2, format!("suite {suite} needs --v")))?;
            if instances.is_empty() {
                return Err(Failure(2, format!("suite {suite} needs at least one matroid file")));
            }
            Live::Family(matroids()?, v)
        }
        Suite::Tightness => {
            need(0)?;
            let (p, q) = (args.p.unwrap_or(1), args.q.unwrap_or(1));
            params = CaseParams { p: Some(p), q: Some(q) };
            Live::Tightness(p, q)
        }
        Suite::NuObservations | Suite::Nuqq | Suite::Dangling | Suite::EtaNu | Suite::ChiSum | Suite::DeltaEta => {
            need(2)?;
            let ms = matroids()?;
            let q = args.q.unwrap_or(if suite == Suite::Nuqq { 2 } else { 1 });
            let p = args.p.unwrap_or(if suite == Suite::Nuqq { q } else { 1 });
            params = CaseParams { p: Some(p), q: Some(q) };
            Live::Pair(ms[0].clone(), ms[1].clone())
        }
    };
    let id = args.files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>().join("+");
    Ok(Case { id, provenance: "files".into(), live, params })
}

fn verify_files(ctx: &Ctx, suite: Suite, args: &VerifyArgs, config: &SuiteConfig) -> Outcome {
    let case = file_case(suite, args)?;
    if let (Suite::Coloop, Live::Family(ms, v), true) = (suite, &case.live, ctx.trace) {
        let r = coloop_or_contract_with(ms, *v, ctx.field, &ctx.limits)?;
        let claim = check_claim_equalities(ms, *v)?;
        ctx.emit(&json!({ "coloop": r, "claim": claim }), || format!("{r:?}\n{claim:?}"));
    }
    let r = run_case(suite, &case, config);
    ctx.emit(&to_value(&r), || {
        let status = if r.passed { "holds" } else { "FAILS" };
        let detail = r.error.as_deref().map(|e| format!(": {e}")).unwrap_or_default();
        format!("{suite} {status}{}{detail}\n{}", if r.tight { " (tight)" } else { "" }, pretty(&r.values))
    });
    if !r.passed {
        let bundle = ReplayBundle {
            suite: suite.name().into(),
            case_id: case.id.clone(),
            provenance: case.provenance.clone(),
            seed: config.seed,
            field: config.field.to_string(),
            limits: config.limits,
            params: case.params,
            instance: case.live.to_instance(),
            result: r.clone(),
        };
        let path = write_bundle(&args.bundle_dir, &bundle)?;
        eprintln!("replay bundle: {}", path.display());
        let resource = r.error.as_deref().is_some_and(|e| e.starts_with("resource limit"));
        return Ok(if resource { 3 } else if r.error.as_deref().is_some_and(|e| e.starts_with("domain")) { 2 } else { 1 });
    }
    Ok(0)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
