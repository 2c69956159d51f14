use std::mem;

use super::{BlockEdge, Engine, Mode, SplitEvent, SplitObserver};
use crate::graph::LabelIdx;
use crate::list::{List, NIL};

/// Counters gathered while distributing vertices into departing lists.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Distribution {
    pub(crate) moved: usize,
    pub(crate) keys: usize,
}

impl Engine<'_> {
    /// Splits every block of `P` against `Y'` and `Y \ Y'` for label `r`,
    /// then replaces `Y` in `Q[r]` by `Y'` and `Y \ Y'`.
    pub(crate) fn split(
        &mut self,
        y_prime: u32,
        y: u32,
        r: LabelIdx,
        observer: &mut dyn SplitObserver,
    ) {
        let splitter: Vec<u32> = self.blocks[y_prime as usize]
            .vertices
            .iter(&self.vertex_links)
            .collect();
        let super_block_size = self.super_blocks[y as usize].size;
        assert!(
            2 * splitter.len() <= super_block_size,
            "splitter of {} vertices exceeds half of its super-block ({super_block_size})",
            splitter.len()
        );

        let incoming_edges = self.compute_block_edges(&splitter, r);
        let distribution = match self.mode {
            Mode::Plain => self.compute_subblocks(&splitter, r),
            Mode::Counting => self.s_compute_subblocks(&splitter, r),
        };
        let blocks_created = match self.mode {
            Mode::Plain => self.do_splitting(y_prime, &splitter, y, r),
            Mode::Counting => self.s_do_splitting(y_prime, &splitter, y, r),
        };
        self.clear_auxiliary_info(&splitter, r);
        self.split_calls += 1;

        let event = SplitEvent {
            label: r,
            splitter: &splitter,
            super_block_size,
            incoming_edges,
            moved_vertices: distribution.moved,
            departing_keys: distribution.keys,
            blocks_created,
        };
        observer.split(&event, self);
    }

    /// Moves every `r`-edge into `Y'` from its block-edge toward `Y` to the
    /// departing block-edge toward `Y'`, creating the latter on first use.
    /// Returns the number of `r`-edges entering `Y'`.
    pub(crate) fn compute_block_edges(&mut self, splitter: &[u32], r: LabelIdx) -> usize {
        let graph = self.graph;
        let mut edges = 0;
        for &y in splitter {
            for &e in graph.incoming(y as usize, r) {
                let be = self.edge_block_edge[e];
                if self.block_edges[be as usize].departing == NIL {
                    let dbe = self.alloc_block_edge(BlockEdge::with_source(be));
                    self.block_edges[be as usize].departing = dbe;
                }
                let dbe = self.block_edges[be as usize].departing;
                let degree = graph.edge(e).degree;
                self.block_edges[be as usize].pop_key(degree);
                self.block_edges[dbe as usize].push_key(degree);
                edges += 1;
            }
        }
        edges
    }

    /// Moves each origin `x` of an `r`-edge into `Y'` out of its block into a
    /// departing list identified by `(d1, d2)`, the sups of `x` toward
    /// `Y \ Y'` and `Y'`. Because the block is stable toward `Y`,
    /// `max(d1, d2)` is shared by the whole block, so `d2` alone identifies
    /// the subblock when `d1 >= d2` and `d1` alone otherwise. Vertices with
    /// no edge into `Y'` stay behind and form the `(d, 0)` subblock.
    pub(crate) fn compute_subblocks(&mut self, splitter: &[u32], r: LabelIdx) -> Distribution {
        let graph = self.graph;
        let mut dist = Distribution::default();
        for &y in splitter {
            for &e in graph.incoming(y as usize, r) {
                let x = graph.edge(e).origin;
                if self.processed[x] {
                    continue;
                }
                let be = &self.block_edges[self.edge_block_edge[e] as usize];
                let d1 = be.max_key();
                let d2 = self.block_edges[be.departing as usize].max_key();
                let block = &mut self.blocks[self.vertex_block[x] as usize];
                let map = if d1 >= d2 {
                    &mut block.departing_by_splitter
                } else {
                    &mut block.departing_by_rest
                };
                let key = if d1 >= d2 { d2 } else { d1 };
                let list = map.entry(key).or_insert_with(|| {
                    dist.keys += 1;
                    List::default()
                });
                block.vertices.remove(&mut self.vertex_links, x as u32);
                list.push_back(&mut self.vertex_links, x as u32);
                self.processed[x] = true;
                dist.moved += 1;
            }
        }
        dist
    }

    /// Detaches `Y'` into its own super-block, retargets the `r`-edges into
    /// `Y'` to their departing block-edges and turns departing lists into
    /// blocks. A block left empty keeps its first departing list, taking
    /// `departing_by_rest` before `departing_by_splitter`, in ascending key
    /// order. Returns the number of blocks created.
    pub(crate) fn do_splitting(
        &mut self,
        y_prime: u32,
        splitter: &[u32],
        y: u32,
        r: LabelIdx,
    ) -> usize {
        self.detach_splitter(y_prime, splitter.len(), y, r);
        let graph = self.graph;
        let mut created = 0;
        for &yv in splitter {
            for &e in graph.incoming(yv as usize, r) {
                self.retarget(e);
                let bx = self.vertex_block[graph.edge(e).origin];
                let block = &mut self.blocks[bx as usize];
                if !block.has_departing() {
                    continue;
                }
                let mut by_rest = mem::take(&mut block.departing_by_rest);
                let mut by_splitter = mem::take(&mut block.departing_by_splitter);
                if block.vertices.is_empty() {
                    let (_, kept) = by_rest
                        .pop_first()
                        .or_else(|| by_splitter.pop_first())
                        .expect("drained block has a departing list");
                    block.vertices = kept;
                }
                for list in by_rest.into_values().chain(by_splitter.into_values()) {
                    self.create_block(list, bx);
                    created += 1;
                }
            }
        }
        created
    }

    pub(super) fn detach_splitter(&mut self, y_prime: u32, size: usize, y: u32, r: LabelIdx) {
        self.remove_block(y, y_prime);
        self.super_blocks[y as usize].size -= size;
        self.create_super_block(r, y_prime, size);
    }

    pub(super) fn retarget(&mut self, e: usize) {
        let be = self.edge_block_edge[e];
        self.edge_block_edge[e] = self.block_edges[be as usize].departing;
    }

    /// Resets `processed` flags and unlinks source/departing block-edge
    /// pairs. A source block-edge left without keys no longer has any edge
    /// pointing at it and is recycled.
    pub(crate) fn clear_auxiliary_info(&mut self, splitter: &[u32], r: LabelIdx) {
        let graph = self.graph;
        for &y in splitter {
            for &e in graph.incoming(y as usize, r) {
                self.processed[graph.edge(e).origin] = false;
                let be = self.edge_block_edge[e];
                let sbe = self.block_edges[be as usize].source;
                if sbe != NIL {
                    self.block_edges[sbe as usize].departing = NIL;
                    self.block_edges[be as usize].source = NIL;
                    if self.block_edges[sbe as usize].is_empty() {
                        self.free_block_edges.push(sbe);
                    }
                }
            }
        }
    }
}
