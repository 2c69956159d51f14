//! Randomized cross-check of the engine against the naive oracle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{refine, Mode};
use crate::graph::FuzzyGraph;
use crate::oracle::{self, RandomGraphParams};
use crate::partition::PartitionResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub cases: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_m: usize,
    pub max_l: usize,
    pub max_labels: usize,
    /// Modes compared per graph.
    pub plain: bool,
    pub counting: bool,
    /// Stop at the first graph with a counterexample.
    pub fail_fast: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            cases: 1000,
            seed: 0,
            max_n: 12,
            max_m: 40,
            max_l: 6,
            max_labels: 2,
            plain: true,
            counting: true,
            fail_fast: false,
        }
    }
}

/// A graph on which the engine disagreed with the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: usize,
    pub mode: Mode,
    /// The graph in the text input format.
    pub graph: String,
    pub expected: PartitionResult,
    pub actual: PartitionResult,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub cases: usize,
    pub passed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Set when nothing was checked.
    pub fn warning(&self) -> Option<&'static str> {
        (self.cases == 0).then_some("warning: 0 cases requested, nothing was checked")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "ok" } else { "FAILED" };
        write!(f, "{}/{} {verdict}", self.passed, self.cases)
    }
}

/// Parameters of case `i`; each case has its own seed so any single one can
/// be regenerated.
pub fn case_params(cfg: &CheckConfig, i: usize) -> RandomGraphParams {
    let seed = cfg
        .seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(i as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=cfg.max_n.max(1));
    let labels = rng.random_range(1..=cfg.max_labels.max(1));
    let m = rng.random_range(0..=cfg.max_m.min(n * n * labels));
    let l = rng.random_range(1..=cfg.max_l.clamp(1, 1000));
    let vertex_labels = rng.random_range(0..=2);
    RandomGraphParams {
        n,
        m,
        l,
        labels,
        vertex_labels,
        seed,
    }
}

/// Compares `engine` with the oracle on `cfg.cases` random graphs. Besides
/// equality, the engine result must be a bisimulation of the requested kind.
pub fn run_check(
    cfg: &CheckConfig,
    engine: impl Fn(&FuzzyGraph, Mode) -> PartitionResult,
) -> CheckReport {
    let mut report = CheckReport {
        cases: cfg.cases,
        ..CheckReport::default()
    };
    let modes: Vec<Mode> = [(cfg.plain, Mode::Plain), (cfg.counting, Mode::Counting)]
        .into_iter()
        .filter_map(|(on, m)| on.then_some(m))
        .collect();
    for case in 0..cfg.cases {
        let g = oracle::random_graph_with(case_params(cfg, case))
            .expect("case parameters are feasible");
        let failures: Vec<Counterexample> = modes
            .iter()
            .filter_map(|&mode| {
                check_graph(&g, mode, &engine).err().map(|mut c| {
                    c.case = case;
                    c
                })
            })
            .collect();
        if failures.is_empty() {
            report.passed += 1;
        }
        let stop = cfg.fail_fast && !failures.is_empty();
        report.counterexamples.extend(failures);
        if stop {
            break;
        }
    }
    report
}

/// Checks one graph in one mode.
pub fn check_graph(
    g: &FuzzyGraph,
    mode: Mode,
    engine: impl Fn(&FuzzyGraph, Mode) -> PartitionResult,
) -> Result<(), Counterexample> {
    let expected = match mode {
        Mode::Plain => oracle::naive_largest_bisimulation(g),
        Mode::Counting => oracle::naive_largest_s_bisimulation(g),
    };
    let actual = engine(g, mode);
    let reason = if actual.class_vector(g).is_none() {
        Some("result is not a partition of the vertices".to_owned())
    } else if actual != expected {
        Some("result differs from the oracle".to_owned())
    } else {
        let z = oracle::Relation::from_partition(g, &actual);
        let valid = match mode {
            Mode::Plain => oracle::is_bisimulation(g, &z),
            Mode::Counting => oracle::is_s_bisimulation(g, &z),
        };
        (!valid).then(|| "result is not a bisimulation".to_owned())
    };
    match reason {
        None => Ok(()),
        Some(reason) => Err(Counterexample {
            case: 0,
            mode,
            graph: g.to_text(),
            expected,
            actual,
            reason,
        }),
    }
}

/// The production engine, in the shape [`run_check`] expects.
pub fn engine(g: &FuzzyGraph, mode: Mode) -> PartitionResult {
    refine(g, mode, &mut ()).partition
}
