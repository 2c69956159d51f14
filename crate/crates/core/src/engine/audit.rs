//! Full consistency check of the engine state between splits.
//!
//! Everything here is recomputed from the graph and compared against the
//! incremental structures; it is quadratic in places and meant for tests and
//! instrumented runs on small graphs.

use std::collections::{BTreeMap, HashMap};

use super::{Engine, Mode};
use crate::degree::Degree;
use crate::list::NIL;

impl Engine<'_> {
    /// Checks the structural invariants that must hold outside a split:
    ///
    /// - blocks are nonempty, disjoint, cover `V`, and agree with each
    ///   vertex's block pointer; no auxiliary split state is left behind;
    /// - `P` refines the initial partition and every `Q[r]`, and each
    ///   super-block sits in the compound or simple list matching its size;
    /// - each block-edge holds exactly the degree histogram of its vertex's
    ///   `r`-edges into its super-block;
    /// - `P` is stable (or s-stable in counting mode) toward every
    ///   super-block of every `Q[r]`.
    pub fn audit(&self) -> Result<(), String> {
        self.audit_blocks()?;
        self.audit_super_partitions()?;
        self.audit_block_edges()?;
        self.audit_stability()
    }

    fn audit_blocks(&self) -> Result<(), String> {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        for (b, block) in self.blocks.iter().enumerate() {
            if block.vertices.is_empty() {
                return Err(format!("block {b} is empty"));
            }
            if block.has_departing() || !block.departing_lookup.is_empty() {
                return Err(format!("block {b} has leftover departing lists"));
            }
            let mut count = 0;
            let class = self.initial_class[block.vertices.first().unwrap() as usize];
            for v in block.vertices.iter(&self.vertex_links) {
                count += 1;
                let v = v as usize;
                if seen[v] {
                    return Err(format!(
                        "vertex {} in two blocks",
                        self.graph.vertex_name(v)
                    ));
                }
                seen[v] = true;
                if self.vertex_block[v] as usize != b {
                    return Err(format!(
                        "vertex {} points at the wrong block",
                        self.graph.vertex_name(v)
                    ));
                }
                if self.initial_class[v] != class {
                    return Err(format!("block {b} does not refine the initial partition"));
                }
            }
            if count != block.vertices.len() {
                return Err(format!("block {b} length mismatch"));
            }
            if block.super_blocks.len() != self.labels {
                return Err(format!("block {b} lacks super-blocks"));
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(format!("vertex {} in no block", self.graph.vertex_name(v)));
        }
        if let Some(v) = self.processed.iter().position(|&p| p) {
            return Err(format!(
                "vertex {} still flagged processed",
                self.graph.vertex_name(v)
            ));
        }
        Ok(())
    }

    fn audit_super_partitions(&self) -> Result<(), String> {
        // (super-block, list) owner of each block per label
        let mut owner = vec![vec![NIL; self.blocks.len()]; self.labels];
        let mut placement = vec![None; self.super_blocks.len()];
        for (r, sp) in self.super_partitions.iter().enumerate() {
            for (list, compound) in [(&sp.compound, true), (&sp.simple, false)] {
                for sb in list.iter(&self.super_block_links) {
                    if placement[sb as usize].replace(compound).is_some() {
                        return Err(format!("super-block {sb} listed twice"));
                    }
                    if self.super_blocks[sb as usize].label as usize != r {
                        return Err(format!("super-block {sb} in the wrong super-partition"));
                    }
                }
            }
        }
        for (id, sb) in self.super_blocks.iter().enumerate() {
            let r = sb.label as usize;
            let links = &self.super_partitions[r].block_links;
            let mut size = 0;
            let mut count = 0;
            for b in sb.blocks.iter(links) {
                if owner[r][b as usize] != NIL {
                    return Err(format!("block {b} in two super-blocks of label {r}"));
                }
                owner[r][b as usize] = id as u32;
                size += self.blocks[b as usize].vertices.len();
                count += 1;
            }
            if count == 0 {
                return Err(format!("super-block {id} is empty"));
            }
            if size != sb.size {
                return Err(format!(
                    "super-block {id} size {} but holds {size} vertices",
                    sb.size
                ));
            }
            let compound = count > 1;
            if sb.compound != compound || placement[id] != Some(compound) {
                return Err(format!(
                    "super-block {id} compound flag or list placement is stale"
                ));
            }
        }
        for (b, block) in self.blocks.iter().enumerate() {
            for (r, &sb) in block.super_blocks.iter().enumerate() {
                if owner[r][b] != sb {
                    return Err(format!(
                        "block {b} disagrees with Q[{r}] on its super-block"
                    ));
                }
            }
        }
        Ok(())
    }

    fn super_block_of(&self, v: usize, r: usize) -> u32 {
        self.blocks[self.vertex_block[v] as usize].super_blocks[r]
    }

    fn audit_block_edges(&self) -> Result<(), String> {
        let mut expected: HashMap<(usize, usize, u32), BTreeMap<Degree, u32>> = HashMap::new();
        let mut id_of: HashMap<(usize, usize, u32), u32> = HashMap::new();
        let mut key_of: HashMap<u32, (usize, usize, u32)> = HashMap::new();
        for (e, edge) in self.graph.edges().iter().enumerate() {
            let key = (
                edge.origin,
                edge.label,
                self.super_block_of(edge.dest, edge.label),
            );
            *expected
                .entry(key)
                .or_default()
                .entry(edge.degree)
                .or_insert(0) += 1;
            let be = self.edge_block_edge[e];
            if *id_of.entry(key).or_insert(be) != be {
                return Err(
                    "edges of one (vertex, label, super-block) use different block-edges".into(),
                );
            }
            if *key_of.entry(be).or_insert(key) != key {
                return Err(format!("block-edge {be} shared across super-blocks"));
            }
        }
        for (key, hist) in &expected {
            let be = &self.block_edges[id_of[key] as usize];
            if be.counts() != hist {
                return Err(format!(
                    "block-edge of ({}, {}, super-block {}) holds {:?}, recount gives {:?}",
                    self.graph.vertex_name(key.0),
                    self.graph.edge_label(key.1),
                    key.2,
                    be.counts(),
                    hist
                ));
            }
            if be.content_hash() != be.recomputed_hash() {
                return Err("block-edge hash out of date".into());
            }
            if be.departing != NIL || be.source != NIL {
                return Err("block-edge keeps departing/source links".into());
            }
        }
        Ok(())
    }

    fn audit_stability(&self) -> Result<(), String> {
        for (b, block) in self.blocks.iter().enumerate() {
            for r in 0..self.labels {
                let profile = |x: usize| -> BTreeMap<u32, BTreeMap<Degree, u32>> {
                    let mut out: BTreeMap<u32, BTreeMap<Degree, u32>> = BTreeMap::new();
                    for &e in self.graph.outgoing(x, r) {
                        let edge = self.graph.edge(e);
                        let hist = out.entry(self.super_block_of(edge.dest, r)).or_default();
                        match self.mode {
                            Mode::Counting => *hist.entry(edge.degree).or_insert(0) += 1,
                            Mode::Plain => {
                                let sup = hist.keys().next().copied().unwrap_or(Degree::ZERO);
                                if edge.degree > sup {
                                    hist.clear();
                                    hist.insert(edge.degree, 1);
                                }
                            }
                        }
                    }
                    out
                };
                let mut members = block.vertices.iter(&self.vertex_links);
                let first = profile(members.next().unwrap() as usize);
                for x in members {
                    if profile(x as usize) != first {
                        return Err(format!(
                            "block {b} is not stable toward Q[{}] (vertex {})",
                            self.graph.edge_label(r),
                            self.graph.vertex_name(x as usize)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}
