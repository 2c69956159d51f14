//! Counting-successors variant of the subblock distribution.
//!
//! A block that agrees on degree counts toward `Y` agrees on counts toward
//! `Y'` exactly when it agrees on counts toward `Y \ Y'`, so a moved vertex is
//! keyed by its residual block-edge (edges into `Y \ Y'`) alone. Keys compare
//! by map content: an incrementally maintained hash picks the bucket and the
//! maps themselves confirm the match.

use std::collections::HashMap;
use std::mem;

use super::split::Distribution;
use super::Engine;
use crate::graph::LabelIdx;
use crate::list::List;

impl Engine<'_> {
    pub(crate) fn s_compute_subblocks(&mut self, splitter: &[u32], r: LabelIdx) -> Distribution {
        let graph = self.graph;
        let mut dist = Distribution::default();
        for &y in splitter {
            for &e in graph.incoming(y as usize, r) {
                let x = graph.edge(e).origin;
                if self.processed[x] {
                    continue;
                }
                let be = self.edge_block_edge[e];
                let residual = &self.block_edges[be as usize];
                let block = &mut self.blocks[self.vertex_block[x] as usize];
                let bucket = block
                    .departing_lookup
                    .entry(residual.content_hash())
                    .or_default();
                let found = bucket.iter().copied().find(|&slot| {
                    let (rep, _) = block.departing[slot as usize];
                    self.block_edges[rep as usize].same_map(residual)
                });
                let slot = match found {
                    Some(slot) => slot,
                    None => {
                        block.departing.push((be, List::default()));
                        let slot = (block.departing.len() - 1) as u32;
                        bucket.push(slot);
                        dist.keys += 1;
                        slot
                    }
                };
                block.vertices.remove(&mut self.vertex_links, x as u32);
                block.departing[slot as usize]
                    .1
                    .push_back(&mut self.vertex_links, x as u32);
                self.processed[x] = true;
                dist.moved += 1;
            }
        }
        dist
    }

    /// As `do_splitting`, over the single signature-keyed map. A drained
    /// block keeps the first departing list in insertion order.
    pub(crate) fn s_do_splitting(
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
                if block.departing.is_empty() {
                    continue;
                }
                let departing = mem::take(&mut block.departing);
                block.departing_lookup = HashMap::new();
                let mut lists = departing.into_iter().map(|(_, list)| list);
                if block.vertices.is_empty() {
                    block.vertices = lists.next().expect("drained block has a departing list");
                }
                for list in lists {
                    self.create_block(list, bx);
                    created += 1;
                }
            }
        }
        created
    }
}
