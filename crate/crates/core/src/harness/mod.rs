//! Instance generation, the named corpus and the verification suites.

pub mod corpus;
pub mod generators;
pub mod report;
pub mod suites;

pub use corpus::{Corpus, CorpusSpec, CORPUS_SEED};
pub use generators::{random_complex, random_hypergraph, random_matroid, tightness_example, MatroidKind, TightnessExample};
pub use report::{CaseInstance, CaseResult, ReplayBundle, VerificationReport};
pub use suites::{replay, run_suite, Suite, SuiteConfig};
