//! Brute-force reference implementations.
//!
//! Everything here works straight from the definitions: relations are
//! explicit pair sets, stability is checked by recomputing suprema and
//! counts, and the naive refinement splits any unstable block against any
//! current block until nothing changes. Nothing here is fast; it only has to
//! be obviously right on small graphs.

mod random;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::degree::Degree;
use crate::graph::{FuzzyGraph, LabelIdx, VertexIdx, VertexLabel};
use crate::partition::PartitionResult;

pub use random::{random_graph, random_graph_with, GenerateError, RandomGraphParams};

/// A binary relation on the vertices of one graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Relation {
    pairs: BTreeSet<(VertexIdx, VertexIdx)>,
}

impl Relation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(g: &FuzzyGraph) -> Self {
        (0..g.vertex_count()).map(|v| (v, v)).collect()
    }

    /// The equivalence relation whose classes are the blocks of `p`.
    /// Panics if `p` is not a partition of `g`'s vertices.
    pub fn from_partition(g: &FuzzyGraph, p: &PartitionResult) -> Self {
        let class = p
            .class_vector(g)
            .expect("partition does not cover the graph's vertices");
        let n = g.vertex_count();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| class[x] == class[y])
            .collect()
    }

    pub fn insert(&mut self, x: VertexIdx, y: VertexIdx) -> bool {
        self.pairs.insert((x, y))
    }

    pub fn contains(&self, x: VertexIdx, y: VertexIdx) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexIdx, VertexIdx)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn inverse(&self) -> Self {
        self.iter().map(|(x, y)| (y, x)).collect()
    }

    /// `self ∘ other = {(x, z) | ∃y. self(x, y) ∧ other(y, z)}`.
    pub fn compose(&self, other: &Relation) -> Self {
        let mut succ: HashMap<VertexIdx, Vec<VertexIdx>> = HashMap::new();
        for (y, z) in other.iter() {
            succ.entry(y).or_default().push(z);
        }
        self.iter()
            .flat_map(|(x, y)| succ.get(&y).into_iter().flatten().map(move |&z| (x, z)))
            .collect()
    }

    pub fn union(&self, other: &Relation) -> Self {
        self.iter().chain(other.iter()).collect()
    }
}

impl FromIterator<(VertexIdx, VertexIdx)> for Relation {
    fn from_iter<I: IntoIterator<Item = (VertexIdx, VertexIdx)>>(iter: I) -> Self {
        Relation {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// `(y, E(x, r, y))` for every stored `r`-edge leaving `x`.
fn successors(g: &FuzzyGraph, x: VertexIdx, r: LabelIdx) -> Vec<(VertexIdx, Degree)> {
    g.outgoing(x, r)
        .iter()
        .map(|&e| (g.edge(e).dest, g.edge(e).degree))
        .collect()
}

/// Checks a relation against the definition of a crisp bisimulation:
/// nonempty, related vertices carry equal labels, and every edge of one
/// side is matched by an edge of at least the same degree of the other side
/// into a related vertex.
pub fn is_bisimulation(g: &FuzzyGraph, z: &Relation) -> bool {
    if z.is_empty() {
        return false;
    }
    let forward = |x: VertexIdx, x2: VertexIdx, flip: bool| {
        (0..g.label_count()).all(|r| {
            let targets = successors(g, x2, r);
            successors(g, x, r).iter().all(|&(y, d)| {
                targets.iter().any(|&(y2, d2)| {
                    let related = if flip {
                        z.contains(y2, y)
                    } else {
                        z.contains(y, y2)
                    };
                    related && d <= d2
                })
            })
        })
    };
    z.iter().all(|(x, x2)| {
        g.vertex_label(x) == g.vertex_label(x2) && forward(x, x2, false) && forward(x2, x, true)
    })
}

/// Checks a relation against the definition of a crisp bisimulation with
/// counting successors: for every related pair and label there must be a
/// bijection between the successor sets that preserves degrees and stays
/// inside the relation. Bijections are found by bipartite matching.
pub fn is_s_bisimulation(g: &FuzzyGraph, z: &Relation) -> bool {
    if z.is_empty() {
        return false;
    }
    z.iter().all(|(x, x2)| {
        g.vertex_label(x) == g.vertex_label(x2)
            && (0..g.label_count()).all(|r| {
                let left = successors(g, x, r);
                let right = successors(g, x2, r);
                left.len() == right.len()
                    && has_perfect_matching(left.len(), right.len(), |i, j| {
                        z.contains(left[i].0, right[j].0) && left[i].1 == right[j].1
                    })
            })
    })
}

/// Kuhn's augmenting-path matching; true iff all left vertices can be
/// matched and both sides have the same size.
fn has_perfect_matching(
    left: usize,
    right: usize,
    compatible: impl Fn(usize, usize) -> bool,
) -> bool {
    if left != right {
        return false;
    }
    fn augment(
        i: usize,
        right: usize,
        compatible: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..right {
            if compatible(i, j) && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, right, compatible, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..left).all(|i| {
        let mut seen = vec![false; right];
        augment(i, right, &compatible, &mut seen, &mut owner)
    })
}

fn blocks_of(g: &FuzzyGraph, p: &PartitionResult) -> Vec<Vec<VertexIdx>> {
    p.blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| g.vertex_index(v).expect("unknown vertex"))
                .collect()
        })
        .collect()
}

/// True iff every block `X` agrees on `sup E(x, r, Y)` for every block `Y`
/// and label `r`.
pub fn is_stable(g: &FuzzyGraph, p: &PartitionResult) -> bool {
    let blocks = blocks_of(g, p);
    let membership = membership(g, &blocks);
    blocks.iter().all(|x_block| {
        (0..blocks.len()).all(|y| {
            (0..g.label_count()).all(|r| {
                let sup = |x: VertexIdx| g.sup_degree(x, r, |v| membership[v] == y);
                let first = sup(x_block[0]);
                x_block.iter().all(|&x| sup(x) == first)
            })
        })
    })
}

/// True iff every block `X` agrees on `|{y ∈ Y : E(x, r, y) = d}|` for every
/// block `Y`, label `r` and positive degree `d` occurring in `g`.
pub fn is_s_stable(g: &FuzzyGraph, p: &PartitionResult) -> bool {
    let blocks = blocks_of(g, p);
    let membership = membership(g, &blocks);
    let degrees: BTreeSet<Degree> = g.edges().iter().map(|e| e.degree).collect();
    blocks.iter().all(|x_block| {
        (0..blocks.len()).all(|y| {
            (0..g.label_count()).all(|r| {
                degrees.iter().all(|&d| {
                    let count = |x: VertexIdx| g.count_at_degree(x, r, d, |v| membership[v] == y);
                    let first = count(x_block[0]);
                    x_block.iter().all(|&x| count(x) == first)
                })
            })
        })
    })
}

fn membership(g: &FuzzyGraph, blocks: &[Vec<VertexIdx>]) -> Vec<usize> {
    let mut m = vec![usize::MAX; g.vertex_count()];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            m[v] = i;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("relation {0} is not a bisimulation")]
pub struct NotABisimulation(pub &'static str);

/// Checks that the inverse of `z1`, the composition `z1 ∘ z2` and the union
/// `z1 ∪ z2` are bisimulations. Both inputs must be bisimulations. An empty
/// composition is accepted: it satisfies every matching condition and is
/// only excluded from being a bisimulation by the nonemptiness requirement.
pub fn closure_properties_check(
    g: &FuzzyGraph,
    z1: &Relation,
    z2: &Relation,
) -> Result<bool, NotABisimulation> {
    if !is_bisimulation(g, z1) {
        return Err(NotABisimulation("z1"));
    }
    if !is_bisimulation(g, z2) {
        return Err(NotABisimulation("z2"));
    }
    Ok(is_bisimulation(g, &z1.inverse())
        && composed_ok(g, &z1.compose(z2))
        && is_bisimulation(g, &z1.union(z2)))
}

fn composed_ok(g: &FuzzyGraph, z: &Relation) -> bool {
    z.is_empty() || is_bisimulation(g, z)
}

/// True iff adding any single pair from two different blocks of `p` to its
/// equivalence relation yields a relation that is not a bisimulation.
pub fn is_maximal_bisimulation(g: &FuzzyGraph, p: &PartitionResult) -> bool {
    let base = Relation::from_partition(g, p);
    let class = p.class_vector(g).expect("partition of g");
    let n = g.vertex_count();
    (0..n).all(|x| {
        (0..n).filter(|&y| class[x] != class[y]).all(|y| {
            let mut z = base.clone();
            z.insert(x, y);
            !is_bisimulation(g, &z)
        })
    })
}

/// Order in which the naive refinement looks for an unstable block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitterOrder {
    #[default]
    Forward,
    Reverse,
}

type Histogram = BTreeMap<Degree, usize>;

/// What a vertex is compared on when refining against a block.
#[derive(Clone, Copy)]
enum Observation {
    Sup,
    Histogram,
}

fn observe(
    g: &FuzzyGraph,
    how: Observation,
    x: VertexIdx,
    r: LabelIdx,
    in_y: impl Fn(VertexIdx) -> bool,
) -> BTreeMap<Degree, usize> {
    match how {
        Observation::Sup => {
            let sup = g.sup_degree(x, r, in_y);
            BTreeMap::from([(sup, 1)])
        }
        Observation::Histogram => g.degree_histogram(x, r, in_y),
    }
}

fn naive_refinement(g: &FuzzyGraph, how: Observation, order: SplitterOrder) -> PartitionResult {
    let n = g.vertex_count();
    // initial partition: equal labels and equal observation toward V
    let mut keyed: BTreeMap<(&VertexLabel, Vec<Histogram>), Vec<VertexIdx>> = BTreeMap::new();
    for x in 0..n {
        let obs = (0..g.label_count())
            .map(|r| observe(g, how, x, r, |_| true))
            .collect();
        keyed.entry((g.vertex_label(x), obs)).or_default().push(x);
    }
    let mut blocks: Vec<Vec<VertexIdx>> = keyed.into_values().collect();

    loop {
        let m = membership(g, &blocks);
        let k = blocks.len();
        let candidates: Vec<(usize, usize, LabelIdx)> = {
            let mut all: Vec<_> = (0..k)
                .flat_map(|x| {
                    (0..k).flat_map(move |y| (0..g.label_count()).map(move |r| (x, y, r)))
                })
                .collect();
            if order == SplitterOrder::Reverse {
                all.reverse();
            }
            all
        };
        let unstable = candidates.into_iter().find_map(|(xb, yb, r)| {
            let mut groups: BTreeMap<BTreeMap<Degree, usize>, Vec<VertexIdx>> = BTreeMap::new();
            for &x in &blocks[xb] {
                groups
                    .entry(observe(g, how, x, r, |v| m[v] == yb))
                    .or_default()
                    .push(x);
            }
            (groups.len() > 1).then(|| (xb, groups.into_values().collect::<Vec<_>>()))
        });
        match unstable {
            Some((xb, parts)) => {
                blocks.swap_remove(xb);
                blocks.extend(parts);
            }
            None => break,
        }
    }
    PartitionResult::from_blocks(
        blocks
            .into_iter()
            .map(|b| b.into_iter().map(|v| g.vertex_name(v).to_owned()).collect()),
    )
}

/// Coarsest stable refinement of the initial partition, computed by
/// repeatedly splitting an unstable block against a current block.
pub fn naive_largest_bisimulation(g: &FuzzyGraph) -> PartitionResult {
    naive_refinement(g, Observation::Sup, SplitterOrder::Forward)
}

pub fn naive_largest_bisimulation_ordered(g: &FuzzyGraph, order: SplitterOrder) -> PartitionResult {
    naive_refinement(g, Observation::Sup, order)
}

/// Coarsest s-stable refinement of the counting initial partition.
pub fn naive_largest_s_bisimulation(g: &FuzzyGraph) -> PartitionResult {
    naive_refinement(g, Observation::Histogram, SplitterOrder::Forward)
}

pub fn naive_largest_s_bisimulation_ordered(
    g: &FuzzyGraph,
    order: SplitterOrder,
) -> PartitionResult {
    naive_refinement(g, Observation::Histogram, order)
}

/// Classical relational coarsest partition of the crisp graph underlying
/// `g`: only the presence of edges counts, degrees are ignored. Agrees with
/// [`naive_largest_bisimulation`] when every degree is 1.
pub fn relational_coarsest_partition(g: &FuzzyGraph) -> PartitionResult {
    let n = g.vertex_count();
    let labels = g.label_count();
    // class id per vertex, refined by signatures until fixpoint
    let mut class: Vec<usize> = {
        let mut ids: BTreeMap<(&VertexLabel, Vec<bool>), usize> = BTreeMap::new();
        (0..n)
            .map(|x| {
                let label = g.vertex_label(x);
                let has: Vec<bool> = (0..labels).map(|r| !g.outgoing(x, r).is_empty()).collect();
                let next = ids.len();
                *ids.entry((label, has)).or_insert(next)
            })
            .collect()
    };
    loop {
        let mut ids: BTreeMap<(usize, Vec<BTreeSet<usize>>), usize> = BTreeMap::new();
        let next_class: Vec<usize> = (0..n)
            .map(|x| {
                let reach: Vec<BTreeSet<usize>> = (0..labels)
                    .map(|r| {
                        g.outgoing(x, r)
                            .iter()
                            .map(|&e| class[g.edge(e).dest])
                            .collect()
                    })
                    .collect();
                let next = ids.len();
                *ids.entry((class[x], reach)).or_insert(next)
            })
            .collect();
        let before = class.iter().collect::<BTreeSet<_>>().len();
        let after = ids.len();
        class = next_class;
        if before == after {
            break;
        }
    }
    PartitionResult::from_classes(g, |v| class[v])
}
