//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any hard criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fuzzbisim::bench::{ceil_log2, normalized_spread, run_bench, BenchConfig, Participation};
use fuzzbisim::check::{case_params, CheckConfig};
use fuzzbisim::engine::{Engine, SplitEvent, SplitObserver};
use fuzzbisim::oracle::{self, random_graph, Relation};
use fuzzbisim::{compute, refine, s_compute, FuzzyGraph, Mode, PartitionResult};

const SEVEN_VERTICES: &str = include_str!("data/seven_vertices.txt");
const CORPUS_SIZE: usize = 1000;

type Outcome = Result<String, String>;

fn p(blocks: &[&[&str]]) -> PartitionResult {
    PartitionResult::from_blocks(
        blocks
            .iter()
            .map(|b| b.iter().map(|s| s.to_string()).collect()),
    )
}

fn corpus() -> Vec<FuzzyGraph> {
    let cfg = CheckConfig::default();
    (0..CORPUS_SIZE)
        .map(|i| oracle::random_graph_with(case_params(&cfg, i)).expect("feasible"))
        .collect()
}

/// Records the partition after initialization and after the first split.
#[derive(Default)]
struct Trace {
    initial: Option<PartitionResult>,
    first_split: Option<PartitionResult>,
}

impl SplitObserver for Trace {
    fn initialized(&mut self, engine: &Engine<'_>) {
        self.initial = Some(engine.partition());
    }

    fn split(&mut self, _: &SplitEvent<'_>, engine: &Engine<'_>) {
        self.first_split.get_or_insert_with(|| engine.partition());
    }
}

fn golden(
    mode: Mode,
    expected: PartitionResult,
    initial: PartitionResult,
    first_split: PartitionResult,
) -> Outcome {
    let g = FuzzyGraph::parse(SEVEN_VERTICES).map_err(|e| e.to_string())?;
    let mut trace = Trace::default();
    let traced = refine(&g, mode, &mut trace).partition;
    let run = || match mode {
        Mode::Plain => compute(&g),
        Mode::Counting => s_compute(&g),
    };
    run();
    let start = Instant::now();
    let result = run();
    let elapsed = start.elapsed();
    if result != expected || traced != expected {
        return Err(format!(
            "got {:?}, expected {:?}",
            result.blocks(),
            expected.blocks()
        ));
    }
    if trace.initial.as_ref() != Some(&initial) {
        return Err(format!("initial partition {:?}", trace.initial));
    }
    if trace.first_split.as_ref() != Some(&first_split) {
        return Err(format!(
            "partition after first split {:?}",
            trace.first_split
        ));
    }
    if elapsed >= Duration::from_millis(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("exact match in {elapsed:?}"))
}

fn oracle_equivalence(graphs: &[FuzzyGraph], mode: Mode) -> Outcome {
    let start = Instant::now();
    for (i, g) in graphs.iter().enumerate() {
        let (got, want) = match mode {
            Mode::Plain => (compute(g), oracle::naive_largest_bisimulation(g)),
            Mode::Counting => (s_compute(g), oracle::naive_largest_s_bisimulation(g)),
        };
        if got != want {
            return Err(format!(
                "graph {i}: engine {:?}, oracle {:?}\n{}",
                got.blocks(),
                want.blocks(),
                g.to_text()
            ));
        }
    }
    Ok(format!(
        "{}/{} graphs agree in {:?}",
        graphs.len(),
        graphs.len(),
        start.elapsed()
    ))
}

fn definition_level(graphs: &[FuzzyGraph]) -> Outcome {
    let mut maximality = 0;
    for (i, g) in graphs.iter().enumerate() {
        let plain = compute(g);
        let z = Relation::from_partition(g, &plain);
        if !oracle::is_bisimulation(g, &z) || !oracle::is_stable(g, &plain) {
            return Err(format!("graph {i}: plain result fails the definition"));
        }
        let counting = s_compute(g);
        let zs = Relation::from_partition(g, &counting);
        if !oracle::is_s_bisimulation(g, &zs) || !oracle::is_s_stable(g, &counting) {
            return Err(format!("graph {i}: counting result fails the definition"));
        }
        if g.vertex_count() <= 8 {
            if !oracle::is_maximal_bisimulation(g, &plain) {
                return Err(format!(
                    "graph {i}: a cross-block pair extends the plain result"
                ));
            }
            maximality += 1;
        }
    }
    Ok(format!(
        "{} graphs valid, maximality checked on {maximality}",
        graphs.len()
    ))
}

fn crisp_case() -> Outcome {
    let cfg = CheckConfig::default();
    let mut checked = 0;
    for i in 0..CORPUS_SIZE {
        let mut params = case_params(&cfg, i);
        params.l = 1;
        let g = oracle::random_graph_with(params).expect("feasible");
        if g.edges().iter().any(|e| e.degree != fuzzbisim::Degree::ONE) {
            return Err(format!("graph {i} is not crisp"));
        }
        let got = compute(&g);
        let want = oracle::relational_coarsest_partition(&g);
        if got != want {
            return Err(format!(
                "graph {i}: engine {:?}, relational {:?}",
                got.blocks(),
                want.blocks()
            ));
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} crisp graphs agree with the relational coarsest partition"
    ))
}

/// Audits the engine after initialization and after every split.
#[derive(Default)]
struct Auditor {
    audits: usize,
    failure: Option<String>,
}

impl SplitObserver for Auditor {
    fn initialized(&mut self, engine: &Engine<'_>) {
        self.audit(engine);
    }

    fn split(&mut self, _: &SplitEvent<'_>, engine: &Engine<'_>) {
        self.audit(engine);
    }
}

impl Auditor {
    fn audit(&mut self, engine: &Engine<'_>) {
        self.audits += 1;
        if self.failure.is_none() {
            self.failure = engine.audit().err();
        }
    }
}

fn structural_invariants(graphs: &[FuzzyGraph]) -> Outcome {
    let mut audits = 0;
    for (i, g) in graphs.iter().enumerate() {
        for mode in [Mode::Plain, Mode::Counting] {
            let mut auditor = Auditor::default();
            refine(g, mode, &mut auditor);
            if let Some(f) = auditor.failure {
                return Err(format!("graph {i} ({mode:?}): {f}"));
            }
            audits += auditor.audits;
        }
    }
    Ok(format!(
        "{audits} audits on {} graphs in both modes",
        graphs.len()
    ))
}

fn participation_bound(graphs: &[FuzzyGraph]) -> Outcome {
    let mut runs = 0;
    let mut worst = 0;
    let sizes: Vec<usize> = (1..=14).map(|k| 1 << k).collect();
    let bench_graphs = sizes
        .iter()
        .map(|&n| random_graph(n, 4 * n, 8, 2, n as u64).expect("feasible"));
    for g in graphs.iter().cloned().chain(bench_graphs) {
        for mode in [Mode::Plain, Mode::Counting] {
            let mut obs = Participation::default();
            refine(&g, mode, &mut obs);
            let bound = ceil_log2(g.vertex_count());
            if obs.max() > bound {
                return Err(format!(
                    "n={} participation {} > {bound}",
                    g.vertex_count(),
                    obs.max()
                ));
            }
            worst = worst.max(obs.max());
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} runs, max participation {worst}, never above ceil(log2 n)"
    ))
}

fn smaller_half(graphs: &[FuzzyGraph]) -> Outcome {
    let mut splits = 0;
    for g in graphs {
        for mode in [Mode::Plain, Mode::Counting] {
            let mut obs = Participation::default();
            refine(g, mode, &mut obs);
            if obs.oversized_splits > 0 {
                return Err(format!("{} splits with |Y'| > |Y|/2", obs.oversized_splits));
            }
            splits += obs.splits;
        }
    }
    Ok(format!("{splits} splits, all with |Y'| <= |Y|/2"))
}

fn bench_schedule() -> (Outcome, Outcome) {
    let start = Instant::now();
    let cfg = BenchConfig::default();
    let rows = match run_bench(&cfg) {
        Ok(rows) => rows,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let elapsed = start.elapsed();
    let over = rows.iter().find(|r| r.max_participation > r.log2_n);
    let hard = match over {
        Some(r) => Err(format!(
            "n={} participation {} > {}",
            r.n, r.max_participation, r.log2_n
        )),
        None if elapsed >= Duration::from_secs(300) => Err(format!("bench took {elapsed:?}")),
        None => Ok(format!("{} rows in {elapsed:?}", rows.len())),
    };
    let spread = normalized_spread(&rows);
    let advisory = if spread < 8.0 {
        Ok(format!("normalized time spread {spread:.2}x"))
    } else {
        Err(format!("normalized time spread {spread:.2}x"))
    };
    (hard, advisory)
}

fn criterion(name: &str, failures: &mut usize, f: impl FnOnce() -> Outcome) {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(detail) => {
            *failures += 1;
            println!("FAIL {name}: {detail}");
        }
    }
}

fn main() -> ExitCode {
    let suite = Instant::now();
    let graphs = corpus();
    let mut failures = 0;

    criterion("golden seven-vertex graph (plain)", &mut failures, || {
        golden(
            Mode::Plain,
            p(&[&["a", "b"], &["c", "f", "g"], &["d", "e"]]),
            p(&[&["a", "b", "c", "f", "g"], &["d", "e"]]),
            p(&[&["a", "b"], &["c", "f", "g"], &["d", "e"]]),
        )
    });
    criterion(
        "golden seven-vertex graph (counting)",
        &mut failures,
        || {
            golden(
                Mode::Counting,
                p(&[&["a"], &["b"], &["c", "f"], &["d", "e"], &["g"]]),
                p(&[&["a"], &["b"], &["c", "f", "g"], &["d", "e"]]),
                p(&[&["a"], &["b"], &["c", "f"], &["d", "e"], &["g"]]),
            )
        },
    );
    criterion("oracle equivalence (plain)", &mut failures, || {
        oracle_equivalence(&graphs, Mode::Plain)
    });
    criterion("oracle equivalence (counting)", &mut failures, || {
        oracle_equivalence(&graphs, Mode::Counting)
    });
    criterion("definition-level validation", &mut failures, || {
        definition_level(&graphs)
    });
    criterion("crisp special case", &mut failures, crisp_case);
    criterion("structural invariants", &mut failures, || {
        structural_invariants(&graphs)
    });
    criterion(
        "complexity (a): split participation <= ceil(log2 n)",
        &mut failures,
        || participation_bound(&graphs),
    );
    criterion("complexity (b): smaller-half rule", &mut failures, || {
        smaller_half(&graphs)
    });
    let (bench, advisory) = bench_schedule();
    criterion(
        "complexity: bench schedule 2^10..2^14, m = 4n",
        &mut failures,
        || bench,
    );
    match advisory {
        Ok(d) => println!("PASS complexity (c, advisory): {d}"),
        Err(d) => println!("WARN complexity (c, advisory): {d} (not counted as a failure)"),
    }
    let total = suite.elapsed();
    criterion("corpus suite runtime < 60 s", &mut failures, || {
        if total < Duration::from_secs(60) {
            Ok(format!("{total:?}"))
        } else {
            Err(format!("{total:?}"))
        }
    });

    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
