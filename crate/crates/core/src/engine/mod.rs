//! Partition refinement for the largest crisp bisimulation.
//!
//! The engine keeps the working partition `P` as a set of [`Block`]s and, for
//! every edge label `r`, a coarser partition `Q[r]` made of super-blocks. `P`
//! is always stable with respect to every super-block of every `Q[r]`. While
//! some `Q[r]` has a super-block `Y` holding more than one block, the smaller
//! of its first two blocks `Y'` is split off: every block of `P` is refined
//! against `Y'` and `Y \ Y'`, and `Y'` becomes a super-block of its own.
//! Work per split is proportional to `Y'` and the `r`-edges entering it,
//! never to `Y`.
//!
//! Per vertex, a block-edge records the degree histogram of its `r`-edges
//! into the super-block containing the target; its largest key is
//! `sup E(x, r, Y)`. In counting mode the whole histogram is the split key.

mod audit;
mod block_edge;
mod counting;
mod split;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::degree::Degree;
use crate::graph::{FuzzyGraph, LabelIdx, VertexIdx, VertexLabel};
use crate::list::{Link, List};
use crate::partition::PartitionResult;

use block_edge::BlockEdge;
pub use block_edge::BlockEdgeSignature;

/// Which bisimulation notion to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Crisp bisimulation: blocks agree on `sup E(x, r, Y)`.
    Plain,
    /// Crisp bisimulation with counting successors: blocks agree on the
    /// number of successors in `Y` at every degree.
    Counting,
}

/// What one split did, as seen by a [`SplitObserver`].
#[derive(Debug, Clone)]
pub struct SplitEvent<'a> {
    pub label: LabelIdx,
    /// Vertices of the splitter block `Y'`.
    pub splitter: &'a [u32],
    /// `|Y|` before the split.
    pub super_block_size: usize,
    /// Number of `r`-edges entering `Y'`.
    pub incoming_edges: usize,
    /// Vertices moved into departing subblocks.
    pub moved_vertices: usize,
    /// Distinct departing keys used across all touched blocks.
    pub departing_keys: usize,
    pub blocks_created: usize,
}

/// Diagnostic hook called by [`Engine::run`].
pub trait SplitObserver {
    fn initialized(&mut self, _engine: &Engine<'_>) {}
    fn split(&mut self, _event: &SplitEvent<'_>, _engine: &Engine<'_>) {}
}

impl SplitObserver for () {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementStats {
    pub vertices: usize,
    pub edges: usize,
    pub distinct_degrees: usize,
    pub initial_blocks: usize,
    pub blocks: usize,
    pub split_calls: usize,
}

#[derive(Debug, Clone)]
pub struct Refinement {
    pub partition: PartitionResult,
    pub stats: RefinementStats,
    pub elapsed: Duration,
}

/// Partition of the largest crisp bisimulation of `g`.
pub fn compute(g: &FuzzyGraph) -> PartitionResult {
    refine(g, Mode::Plain, &mut ()).partition
}

/// Partition of the largest crisp bisimulation with counting successors.
pub fn s_compute(g: &FuzzyGraph) -> PartitionResult {
    refine(g, Mode::Counting, &mut ()).partition
}

pub fn refine(g: &FuzzyGraph, mode: Mode, observer: &mut dyn SplitObserver) -> Refinement {
    let start = Instant::now();
    let mut engine = Engine::new(g, mode);
    let initial_blocks = engine.block_count();
    engine.run(observer);
    let partition = engine.partition();
    let elapsed = start.elapsed();
    Refinement {
        stats: RefinementStats {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            distinct_degrees: g.distinct_degree_count(),
            initial_blocks,
            blocks: engine.block_count(),
            split_calls: engine.split_calls(),
        },
        partition,
        elapsed,
    }
}

#[derive(Debug, Clone, Default)]
struct Block {
    vertices: List,
    /// Super-block of `Q[r]` containing this block, per label.
    super_blocks: Vec<u32>,
    /// Plain mode: subblocks whose sup toward `Y \ Y'` is below the sup
    /// toward `Y'`, keyed by the former.
    departing_by_rest: BTreeMap<Degree, List>,
    /// Plain mode: remaining subblocks, keyed by the sup toward `Y'`.
    departing_by_splitter: BTreeMap<Degree, List>,
    /// Counting mode: subblocks keyed by a representative block-edge, in
    /// insertion order.
    departing: Vec<(u32, List)>,
    departing_lookup: HashMap<u64, Vec<u32>>,
}

impl Block {
    fn has_departing(&self) -> bool {
        !(self.departing_by_rest.is_empty()
            && self.departing_by_splitter.is_empty()
            && self.departing.is_empty())
    }
}

#[derive(Debug, Clone)]
struct SuperBlock {
    label: u32,
    blocks: List,
    size: usize,
    compound: bool,
}

#[derive(Debug, Clone, Default)]
struct SuperPartition {
    compound: List,
    simple: List,
    /// Links of every block in the block list of its `Q[r]` super-block.
    block_links: Vec<Link>,
}

/// Working state of one refinement run over a borrowed graph.
pub struct Engine<'g> {
    graph: &'g FuzzyGraph,
    mode: Mode,
    labels: usize,
    vertex_block: Vec<u32>,
    processed: Vec<bool>,
    vertex_links: Vec<Link>,
    edge_block_edge: Vec<u32>,
    block_edges: Vec<BlockEdge>,
    free_block_edges: Vec<u32>,
    blocks: Vec<Block>,
    super_blocks: Vec<SuperBlock>,
    super_block_links: Vec<Link>,
    super_partitions: Vec<SuperPartition>,
    initial_class: Vec<u32>,
    split_calls: usize,
}

impl<'g> Engine<'g> {
    /// Builds block-edges toward `V` and the initial partition: vertices are
    /// grouped by vertex label and, per edge label, by the largest outgoing
    /// degree (plain) or by the full degree histogram (counting). Every
    /// `Q[r]` starts as the single super-block `{V}`.
    pub fn new(graph: &'g FuzzyGraph, mode: Mode) -> Self {
        let n = graph.vertex_count();
        let labels = graph.label_count();
        let mut engine = Engine {
            graph,
            mode,
            labels,
            vertex_block: vec![u32::MAX; n],
            processed: vec![false; n],
            vertex_links: vec![Link::default(); n],
            edge_block_edge: vec![0; graph.edge_count()],
            block_edges: Vec::new(),
            free_block_edges: Vec::new(),
            blocks: Vec::new(),
            super_blocks: Vec::new(),
            super_block_links: Vec::new(),
            super_partitions: vec![SuperPartition::default(); labels],
            initial_class: Vec::with_capacity(n),
            split_calls: 0,
        };

        // One block-edge per (x, r) with at least one r-edge.
        for x in 0..n {
            for r in 0..labels {
                let out = graph.outgoing(x, r);
                if out.is_empty() {
                    continue;
                }
                let id = engine.alloc_block_edge(BlockEdge::default());
                for &e in out {
                    engine.edge_block_edge[e] = id;
                    engine.block_edges[id as usize].push_key(graph.edge(e).degree);
                }
            }
        }

        let mut label_class: HashMap<&VertexLabel, u32> = HashMap::new();
        let mut plain_key: HashMap<(u32, Vec<Degree>), u32> = HashMap::new();
        let mut counting_key: HashMap<(u32, Vec<BlockEdgeSignature>), u32> = HashMap::new();
        for x in 0..n {
            let next = label_class.len() as u32;
            let lc = *label_class.entry(graph.vertex_label(x)).or_insert(next);
            let class = match mode {
                Mode::Plain => {
                    let sups = (0..labels).map(|r| {
                        engine
                            .block_edge_toward_all(x, r)
                            .map_or(Degree::ZERO, |be| be.max_key())
                    });
                    let next = plain_key.len() as u32;
                    *plain_key.entry((lc, sups.collect())).or_insert(next)
                }
                Mode::Counting => {
                    let sigs = (0..labels).map(|r| {
                        engine
                            .block_edge_toward_all(x, r)
                            .map(|be| be.signature())
                            .unwrap_or_default()
                    });
                    let next = counting_key.len() as u32;
                    *counting_key.entry((lc, sigs.collect())).or_insert(next)
                }
            };
            engine.initial_class.push(class);
        }

        let initial_supers: Vec<u32> = (0..labels).map(|r| engine.new_super_block(r, 0)).collect();
        let class_count = engine
            .initial_class
            .iter()
            .max()
            .map_or(0, |&c| c as usize + 1);
        let mut members = vec![List::default(); class_count];
        for x in 0..n {
            members[engine.initial_class[x] as usize].push_back(&mut engine.vertex_links, x as u32);
        }
        for list in members {
            engine.new_block(list, initial_supers.clone());
        }
        for &sb in &initial_supers {
            engine.super_blocks[sb as usize].size = n;
        }
        engine
    }

    fn block_edge_toward_all(&self, x: VertexIdx, r: LabelIdx) -> Option<&BlockEdge> {
        self.graph
            .outgoing(x, r)
            .first()
            .map(|&e| &self.block_edges[self.edge_block_edge[e] as usize])
    }

    /// Runs splits until every `Q[r]` equals `P`. Labels are visited in
    /// order; each label's compound super-blocks are drained first-in
    /// first-out.
    pub fn run(&mut self, observer: &mut dyn SplitObserver) {
        observer.initialized(self);
        if self.blocks.len() == 1 {
            return;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for r in 0..self.labels {
                while let Some(y) = self.super_partitions[r].compound.first() {
                    let y_prime = self.smaller_block(y);
                    self.split(y_prime, y, r, observer);
                    changed = true;
                }
            }
        }
    }

    /// Next splitter `(Y', Y, r)` the run loop would pick, if any.
    pub fn next_splitter(&self) -> Option<(u32, u32, LabelIdx)> {
        if self.blocks.len() == 1 {
            return None;
        }
        (0..self.labels).find_map(|r| {
            self.super_partitions[r]
                .compound
                .first()
                .map(|y| (self.smaller_block(y), y, r))
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn graph(&self) -> &'g FuzzyGraph {
        self.graph
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn split_calls(&self) -> usize {
        self.split_calls
    }

    /// Current `P`.
    pub fn partition(&self) -> PartitionResult {
        PartitionResult::from_blocks(self.blocks.iter().map(|b| self.block_names(b.vertices)))
    }

    /// Partition the engine started from.
    pub fn initial_partition(&self) -> PartitionResult {
        PartitionResult::from_classes(self.graph, |v| self.initial_class[v])
    }

    /// Current `Q[r]` as a partition of the vertices.
    pub fn super_partition(&self, r: LabelIdx) -> PartitionResult {
        let sp = &self.super_partitions[r];
        PartitionResult::from_blocks(
            self.super_blocks
                .iter()
                .filter(|sb| sb.label as usize == r)
                .map(|sb| {
                    sb.blocks
                        .iter(&sp.block_links)
                        .flat_map(|b| self.block_names(self.blocks[b as usize].vertices))
                        .collect()
                }),
        )
    }

    /// Number of super-blocks in `Q[r]`.
    pub fn super_block_count(&self, r: LabelIdx) -> usize {
        self.super_blocks
            .iter()
            .filter(|sb| sb.label as usize == r)
            .count()
    }

    /// Vertex ids of block `b`.
    pub fn block_vertices(&self, b: u32) -> Vec<String> {
        self.block_names(self.blocks[b as usize].vertices)
    }

    /// Number of vertices in super-block `sb`.
    pub fn super_block_size(&self, sb: u32) -> usize {
        self.super_blocks[sb as usize].size
    }

    fn block_names(&self, list: List) -> Vec<String> {
        list.iter(&self.vertex_links)
            .map(|v| self.graph.vertex_name(v as usize).to_owned())
            .collect()
    }

    fn alloc_block_edge(&mut self, be: BlockEdge) -> u32 {
        match self.free_block_edges.pop() {
            Some(id) => {
                self.block_edges[id as usize] = be;
                id
            }
            None => {
                self.block_edges.push(be);
                (self.block_edges.len() - 1) as u32
            }
        }
    }

    /// Creates a block holding `vertices` and registers it in the given
    /// super-block of every label.
    fn new_block(&mut self, vertices: List, super_blocks: Vec<u32>) -> u32 {
        let id = self.blocks.len() as u32;
        for v in vertices.iter(&self.vertex_links) {
            self.vertex_block[v as usize] = id;
        }
        for sp in &mut self.super_partitions {
            sp.block_links.push(Link::default());
        }
        self.blocks.push(Block {
            vertices,
            super_blocks: super_blocks.clone(),
            ..Block::default()
        });
        for sb in super_blocks {
            self.add_block(sb, id);
        }
        id
    }

    /// New block for a departing list, inheriting the super-blocks of the
    /// block it leaves.
    fn create_block(&mut self, vertices: List, from: u32) -> u32 {
        let supers = self.blocks[from as usize].super_blocks.clone();
        self.new_block(vertices, supers)
    }

    fn new_super_block(&mut self, r: LabelIdx, size: usize) -> u32 {
        let id = self.super_blocks.len() as u32;
        self.super_blocks.push(SuperBlock {
            label: r as u32,
            blocks: List::default(),
            size,
            compound: false,
        });
        self.super_block_links.push(Link::default());
        self.super_partitions[r]
            .simple
            .push_back(&mut self.super_block_links, id);
        id
    }

    fn add_block(&mut self, sb: u32, b: u32) {
        let super_block = &mut self.super_blocks[sb as usize];
        let sp = &mut self.super_partitions[super_block.label as usize];
        super_block.blocks.push_back(&mut sp.block_links, b);
        if super_block.blocks.len() == 2 {
            sp.simple.remove(&mut self.super_block_links, sb);
            sp.compound.push_back(&mut self.super_block_links, sb);
            super_block.compound = true;
        }
    }

    fn remove_block(&mut self, sb: u32, b: u32) {
        let super_block = &mut self.super_blocks[sb as usize];
        let sp = &mut self.super_partitions[super_block.label as usize];
        super_block.blocks.remove(&mut sp.block_links, b);
        if super_block.blocks.len() == 1 {
            sp.compound.remove(&mut self.super_block_links, sb);
            sp.simple.push_back(&mut self.super_block_links, sb);
            super_block.compound = false;
        }
    }

    /// Makes `b` the only block of a fresh super-block of `Q[r]`.
    fn create_super_block(&mut self, r: LabelIdx, b: u32, size: usize) -> u32 {
        let sb = self.new_super_block(r, size);
        self.add_block(sb, b);
        self.blocks[b as usize].super_blocks[r] = sb;
        sb
    }

    /// The smaller of the first two blocks of a compound super-block; the
    /// first one on a tie.
    fn smaller_block(&self, sb: u32) -> u32 {
        let super_block = &self.super_blocks[sb as usize];
        let links = &self.super_partitions[super_block.label as usize].block_links;
        let first = super_block.blocks.first().expect("compound super-block");
        let second = List::next(links, first).expect("compound super-block");
        if self.blocks[second as usize].vertices.len() < self.blocks[first as usize].vertices.len()
        {
            second
        } else {
            first
        }
    }
}
