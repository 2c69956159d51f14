//! Canonical partitions returned to callers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{FuzzyGraph, VertexIdx};

/// Orders vertex ids: all-digit ids numerically first, then the rest
/// lexicographically.
pub fn compare_ids(a: &str, b: &str) -> Ordering {
    let numeric = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    match (numeric(a), numeric(b)) {
        (true, true) => {
            let (ta, tb) = (a.trim_start_matches('0'), b.trim_start_matches('0'));
            ta.len()
                .cmp(&tb.len())
                .then_with(|| ta.cmp(tb))
                .then_with(|| a.cmp(b))
        }
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.cmp(b),
    }
}

/// A partition of a graph's vertices in canonical form: every block sorted
/// by [`compare_ids`], blocks sorted by their first element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionResult {
    blocks: Vec<Vec<String>>,
}

impl PartitionResult {
    /// Canonicalizes arbitrary blocks of vertex ids. Empty blocks are dropped.
    pub fn from_blocks(blocks: impl IntoIterator<Item = Vec<String>>) -> Self {
        let mut blocks: Vec<Vec<String>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_by(|x, y| compare_ids(x, y));
                b
            })
            .collect();
        blocks.sort_by(|x, y| compare_ids(&x[0], &y[0]));
        PartitionResult { blocks }
    }

    /// Groups vertices by an arbitrary class id per vertex.
    pub fn from_classes<K: std::hash::Hash + Eq>(
        g: &FuzzyGraph,
        class_of: impl Fn(VertexIdx) -> K,
    ) -> Self {
        let mut order: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<String>> = Vec::new();
        for v in 0..g.vertex_count() {
            let next = blocks.len();
            let slot = *order.entry(class_of(v)).or_insert(next);
            if slot == next {
                blocks.push(Vec::new());
            }
            blocks[slot].push(g.vertex_name(v).to_owned());
        }
        Self::from_blocks(blocks)
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every vertex of `g`, or `None` if the partition does
    /// not cover exactly the vertices of `g`.
    pub fn class_vector(&self, g: &FuzzyGraph) -> Option<Vec<usize>> {
        let mut class = vec![usize::MAX; g.vertex_count()];
        for (i, block) in self.blocks.iter().enumerate() {
            for id in block {
                let v = g.vertex_index(id)?;
                if class[v] != usize::MAX {
                    return None;
                }
                class[v] = i;
            }
        }
        class.iter().all(|&c| c != usize::MAX).then_some(class)
    }

    /// True iff every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &PartitionResult) -> bool {
        let owner: HashMap<&str, usize> = coarser
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |v| (v.as_str(), i)))
            .collect();
        self.blocks.iter().all(|block| {
            let first = owner.get(block[0].as_str());
            first.is_some() && block.iter().all(|v| owner.get(v.as_str()) == first)
        })
    }
}

impl fmt::Display for PartitionResult {
    /// One block per line, vertices separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            writeln!(f, "{}", block.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(blocks: &[&[&str]]) -> PartitionResult {
        PartitionResult::from_blocks(
            blocks
                .iter()
                .map(|b| b.iter().map(|s| s.to_string()).collect()),
        )
    }

    #[test]
    fn canonical_order() {
        let x = p(&[&["g", "c", "f"], &["e", "d"], &["b", "a"]]);
        assert_eq!(x.to_string(), "a b\nc f g\nd e\n");
        assert_eq!(x, p(&[&["a", "b"], &["d", "e"], &["f", "g", "c"]]));
    }

    #[test]
    fn numeric_ids_sort_numerically() {
        let x = p(&[&["10", "2"], &["1"]]);
        assert_eq!(x.to_string(), "1\n2 10\n");
        assert_eq!(compare_ids("x", "9"), Ordering::Greater);
    }

    #[test]
    fn refinement() {
        let fine = p(&[&["a"], &["b"], &["c", "d"]]);
        let coarse = p(&[&["a", "b"], &["c", "d"]]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.refines(&coarse));
    }
}
