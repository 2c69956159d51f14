use rand::seq::index;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::degree::Degree;
use crate::graph::{FuzzyGraph, GraphBuilder, VertexLabel};

/// Shape of a random graph. Degrees are drawn from a pool of `l` distinct
/// multiples of 0.001 that always contains 1, so `l = 1` gives a crisp graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomGraphParams {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub labels: usize,
    /// Number of distinct vertex labels; 0 or 1 leaves every vertex unlabeled.
    pub vertex_labels: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("n must be at least 1")]
    NoVertices,
    #[error("at least one edge label is required")]
    NoLabels,
    #[error("m = {m} exceeds the {max} possible (origin, label, destination) triples")]
    TooManyEdges { m: usize, max: usize },
    #[error("l must be between 1 and 1000 when m > 0 (got {0})")]
    BadDegreeCount(usize),
    #[error("at most 1000 vertex labels are supported (got {0})")]
    BadVertexLabelCount(usize),
}

const GRAIN: u32 = 1000;

/// Random graph with exactly `m` distinct edges, named `v0..v{n-1}`, edge
/// labels `r0..`. The same parameters always give the same graph.
pub fn random_graph(
    n: usize,
    m: usize,
    l: usize,
    labels: usize,
    seed: u64,
) -> Result<FuzzyGraph, GenerateError> {
    random_graph_with(RandomGraphParams {
        n,
        m,
        l,
        labels,
        vertex_labels: 0,
        seed,
    })
}

pub fn random_graph_with(p: RandomGraphParams) -> Result<FuzzyGraph, GenerateError> {
    if p.n == 0 {
        return Err(GenerateError::NoVertices);
    }
    if p.labels == 0 {
        return Err(GenerateError::NoLabels);
    }
    let max =
        p.n.checked_mul(p.n)
            .and_then(|x| x.checked_mul(p.labels))
            .unwrap_or(usize::MAX);
    if p.m > max {
        return Err(GenerateError::TooManyEdges { m: p.m, max });
    }
    if p.m > 0 && !(1..=GRAIN as usize).contains(&p.l) {
        return Err(GenerateError::BadDegreeCount(p.l));
    }
    if p.vertex_labels > GRAIN as usize {
        return Err(GenerateError::BadVertexLabelCount(p.vertex_labels));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut pool = vec![Degree::ONE];
    if p.l > 1 {
        let others = index::sample(&mut rng, GRAIN as usize - 1, p.l - 1);
        pool.extend(
            others
                .iter()
                .map(|i| Degree::from_decimal(i as u64 + 1, 3).expect("below 1")),
        );
    }
    pool.shuffle(&mut rng);

    let mut b = GraphBuilder::new();
    let names: Vec<String> = (0..p.n).map(|i| format!("v{i}")).collect();
    let symbols: Vec<String> = (0..p.labels).map(|i| format!("r{i}")).collect();
    for name in &names {
        let mut label = VertexLabel::new();
        if p.vertex_labels > 1 {
            let class = rng.random_range(0..p.vertex_labels) as u64;
            let degree = Degree::from_decimal(class * GRAIN as u64 / p.vertex_labels as u64, 3)
                .expect("below 1");
            label.set("p", degree);
        }
        b.add_vertex(name, label)
            .expect("generated names are distinct");
    }
    let picks = index::sample(&mut rng, max, p.m);
    for (i, t) in picks.iter().enumerate() {
        let origin = t / (p.n * p.labels);
        let rest = t % (p.n * p.labels);
        let (label, dest) = (rest / p.n, rest % p.n);
        // the first edges cover the pool so it is used in full when m >= l
        let degree = if i < pool.len() {
            pool[i]
        } else {
            pool[rng.random_range(0..pool.len())]
        };
        b.add_edge(&names[origin], &symbols[label], &names[dest], degree)
            .expect("generated edges are distinct and positive");
    }
    Ok(b.build().expect("n >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_counts() {
        let g = random_graph(20, 80, 5, 2, 7).unwrap();
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.edge_count(), 80);
        assert_eq!(g.distinct_degree_count(), 5);
        assert!(g.label_count() <= 2);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = random_graph(15, 40, 3, 2, 99).unwrap();
        let b = random_graph(15, 40, 3, 2, 99).unwrap();
        let c = random_graph(15, 40, 3, 2, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn crisp_when_one_degree() {
        let g = random_graph(10, 30, 1, 1, 3).unwrap();
        assert!(g.edges().iter().all(|e| e.degree == Degree::ONE));
    }

    #[test]
    fn complete_graph_is_reachable() {
        let g = random_graph(4, 32, 2, 2, 0).unwrap();
        assert_eq!(g.edge_count(), 32);
    }

    #[test]
    fn infeasible_parameters() {
        assert_eq!(random_graph(0, 0, 1, 1, 0), Err(GenerateError::NoVertices));
        assert_eq!(random_graph(3, 1, 1, 0, 0), Err(GenerateError::NoLabels));
        assert_eq!(
            random_graph(2, 9, 1, 2, 0),
            Err(GenerateError::TooManyEdges { m: 9, max: 8 })
        );
        assert_eq!(
            random_graph(3, 2, 0, 1, 0),
            Err(GenerateError::BadDegreeCount(0))
        );
        assert_eq!(
            random_graph(3, 2, 1001, 1, 0),
            Err(GenerateError::BadDegreeCount(1001))
        );
        assert!(random_graph(3, 0, 0, 1, 0).is_ok());
    }

    #[test]
    fn vertex_labels_split_classes() {
        let g = random_graph_with(RandomGraphParams {
            n: 30,
            m: 0,
            l: 1,
            labels: 1,
            vertex_labels: 3,
            seed: 5,
        })
        .unwrap();
        let distinct: std::collections::BTreeSet<_> =
            (0..30).map(|v| g.vertex_label(v).clone()).collect();
        assert!(distinct.len() > 1 && distinct.len() <= 3);
    }
}
