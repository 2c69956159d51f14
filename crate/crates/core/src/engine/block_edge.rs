use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::degree::Degree;
use crate::list::NIL;

/// Degree histogram of the `r`-edges from one vertex into one super-block.
///
/// `departing` and `source` pair a block-edge with the one split off from it
/// while a splitter is being processed; both are `NIL` otherwise.
#[derive(Debug, Clone)]
pub(crate) struct BlockEdge {
    counts: BTreeMap<Degree, u32>,
    /// Order-independent hash of `counts`, kept current by push/pop.
    hash: u64,
    pub(crate) departing: u32,
    pub(crate) source: u32,
}

impl Default for BlockEdge {
    fn default() -> Self {
        BlockEdge {
            counts: BTreeMap::new(),
            hash: 0,
            departing: NIL,
            source: NIL,
        }
    }
}

fn entry_hash(degree: Degree, count: u32) -> u64 {
    if count == 0 {
        return 0;
    }
    // splitmix64 finalizer
    let mut z = (u64::from(degree.billionths()) << 32 | u64::from(count))
        .wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl BlockEdge {
    pub(crate) fn with_source(source: u32) -> Self {
        BlockEdge {
            source,
            ..BlockEdge::default()
        }
    }

    pub(crate) fn push_key(&mut self, degree: Degree) {
        let count = self.counts.entry(degree).or_insert(0);
        self.hash = self
            .hash
            .wrapping_sub(entry_hash(degree, *count))
            .wrapping_add(entry_hash(degree, *count + 1));
        *count += 1;
    }

    /// Decrements `degree`, which must be present; drops the key at zero.
    pub(crate) fn pop_key(&mut self, degree: Degree) {
        let count = self
            .counts
            .get_mut(&degree)
            .expect("pop_key on a degree the block-edge does not hold");
        self.hash = self
            .hash
            .wrapping_sub(entry_hash(degree, *count))
            .wrapping_add(entry_hash(degree, *count - 1));
        *count -= 1;
        if *count == 0 {
            self.counts.remove(&degree);
        }
    }

    pub(crate) fn max_key(&self) -> Degree {
        self.counts
            .last_key_value()
            .map(|(d, _)| *d)
            .unwrap_or(Degree::ZERO)
    }

    pub(crate) fn counts(&self) -> &BTreeMap<Degree, u32> {
        &self.counts
    }

    pub(crate) fn content_hash(&self) -> u64 {
        self.hash
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub(crate) fn same_map(&self, other: &BlockEdge) -> bool {
        self.hash == other.hash && self.counts == other.counts
    }

    pub(crate) fn signature(&self) -> BlockEdgeSignature {
        BlockEdgeSignature(self.counts.iter().map(|(d, c)| (*d, *c)).collect())
    }

    pub(crate) fn recomputed_hash(&self) -> u64 {
        self.counts
            .iter()
            .fold(0u64, |h, (d, c)| h.wrapping_add(entry_hash(*d, *c)))
    }
}

/// Canonical ascending `(degree, count)` listing of a block-edge's map. Two
/// block-edges are equal exactly when their signatures are.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockEdgeSignature(pub Vec<(Degree, u32)>);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Degree {
        s.parse().unwrap()
    }

    #[test]
    fn push_pop_max() {
        let mut be = BlockEdge::default();
        assert_eq!(be.max_key(), Degree::ZERO);
        be.push_key(d("0.7"));
        be.push_key(Degree::ONE);
        be.push_key(Degree::ONE);
        assert_eq!(be.max_key(), Degree::ONE);
        be.pop_key(Degree::ONE);
        assert_eq!(be.counts()[&Degree::ONE], 1);
        be.pop_key(Degree::ONE);
        assert!(!be.counts().contains_key(&Degree::ONE));
        assert_eq!(be.max_key(), d("0.7"));
        be.pop_key(d("0.7"));
        assert!(be.is_empty());
        assert_eq!(be.content_hash(), 0);
    }

    proptest! {
        #[test]
        fn hash_tracks_content(keys in proptest::collection::vec((0u32..5, any::<bool>()), 0..40)) {
            let mut be = BlockEdge::default();
            let mut model: BTreeMap<Degree, u32> = BTreeMap::new();
            for (k, push) in keys {
                let degree = Degree::from_decimal(u64::from(k) + 1, 1).unwrap();
                if push || !model.contains_key(&degree) {
                    be.push_key(degree);
                    *model.entry(degree).or_insert(0) += 1;
                } else {
                    be.pop_key(degree);
                    let c = model.get_mut(&degree).unwrap();
                    *c -= 1;
                    if *c == 0 { model.remove(&degree); }
                }
                prop_assert_eq!(be.counts(), &model);
                prop_assert_eq!(be.content_hash(), be.recomputed_hash());
            }
            let mut twin = BlockEdge::default();
            for (deg, c) in &model {
                for _ in 0..*c { twin.push_key(*deg); }
            }
            prop_assert!(be.same_map(&twin));
            prop_assert_eq!(be.signature(), twin.signature());
        }
    }
}
