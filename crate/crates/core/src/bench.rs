//! Scaling runs on random graphs.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::engine::{refine, Engine, Mode, SplitEvent, SplitObserver};
use crate::oracle::random_graph;

/// Counts, per `(vertex, label)`, how often the vertex was inside a splitter
/// block `Y'` for that label, and records any split whose `Y'` exceeded half
/// of its super-block.
#[derive(Debug, Clone, Default)]
pub struct Participation {
    labels: usize,
    counts: Vec<u32>,
    pub oversized_splits: usize,
    pub splits: usize,
}

impl Participation {
    pub fn max(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }
}

impl SplitObserver for Participation {
    fn initialized(&mut self, engine: &Engine<'_>) {
        self.labels = engine.graph().label_count();
        self.counts = vec![0; engine.graph().vertex_count() * self.labels];
    }

    fn split(&mut self, event: &SplitEvent<'_>, _engine: &Engine<'_>) {
        self.splits += 1;
        if 2 * event.splitter.len() > event.super_block_size {
            self.oversized_splits += 1;
        }
        for &y in event.splitter {
            self.counts[y as usize * self.labels + event.label] += 1;
        }
    }
}

/// `⌈log₂ n⌉`, with 0 for `n <= 1`.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    /// Edges per vertex; `m = edge_factor · n`.
    pub edge_factor: usize,
    pub l: usize,
    pub labels: usize,
    pub seed: u64,
    pub mode: Mode,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: (10..=14).map(|k| 1 << k).collect(),
            edge_factor: 4,
            l: 8,
            labels: 2,
            seed: 0,
            mode: Mode::Plain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub seconds: f64,
    pub split_calls: usize,
    pub blocks: usize,
    pub max_participation: u32,
    pub log2_n: u32,
    /// `seconds / ((m · max(log₂ l, 1) + n) · log₂ n)`, in nanoseconds.
    pub normalized_ns: f64,
}

/// Ratio of the largest to the smallest normalized time over the rows.
pub fn normalized_spread(rows: &[BenchRow]) -> f64 {
    let values = rows.iter().map(|r| r.normalized_ns).filter(|v| *v > 0.0);
    let (lo, hi) = values.fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if hi == 0.0 {
        1.0
    } else {
        hi / lo
    }
}

/// Runs one size: a timed run without instrumentation, then an observed run
/// for the participation counts.
pub fn bench_one(n: usize, cfg: &BenchConfig) -> Result<BenchRow, crate::oracle::GenerateError> {
    let m = (cfg.edge_factor * n).min(n * n * cfg.labels);
    let g = random_graph(n, m, cfg.l, cfg.labels, cfg.seed ^ n as u64)?;
    let start = Instant::now();
    let timed = refine(&g, cfg.mode, &mut ());
    let seconds = start.elapsed().as_secs_f64();
    let mut participation = Participation::default();
    refine(&g, cfg.mode, &mut participation);
    let l = g.distinct_degree_count();
    let log_l = (l.max(1) as f64).log2().max(1.0);
    let log_n = (n.max(2) as f64).log2();
    let work = (m as f64 * log_l + n as f64) * log_n;
    Ok(BenchRow {
        n,
        m,
        l,
        seconds,
        split_calls: timed.stats.split_calls,
        blocks: timed.stats.blocks,
        max_participation: participation.max(),
        log2_n: ceil_log2(n),
        normalized_ns: seconds * 1e9 / work,
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, crate::oracle::GenerateError> {
    cfg.sizes.iter().map(|&n| bench_one(n, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let got: Vec<u32> = [0, 1, 2, 3, 4, 5, 8, 9, 1024, 1025]
            .iter()
            .map(|&n| ceil_log2(n))
            .collect();
        assert_eq!(got, [0, 0, 1, 2, 2, 3, 3, 4, 10, 11]);
    }

    #[test]
    fn small_bench_rows() {
        let cfg = BenchConfig {
            sizes: vec![64, 128],
            ..BenchConfig::default()
        };
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert_eq!(row.m, 4 * row.n);
            assert!(row.max_participation <= row.log2_n);
        }
        assert!(normalized_spread(&rows) >= 1.0);
    }
}
