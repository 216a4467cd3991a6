//! Total preorders over the world universe.
//!
//! A [`TotalPreorder`] stores one rank per world, rank 0 being the most
//! plausible layer. Ranks are always compressed (the occupied ranks are
//! exactly `0..k`), so the direct-successor relation `≪` is rank adjacency.

use thiserror::Error;

use crate::logic::{World, WorldSet};

/// Largest universe [`enumerate_preorders`] accepts (545 835 weak orders).
pub const MAX_ENUMERATION_WORLDS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreorderError {
    #[error("layer {0} is empty")]
    EmptyLayer(usize),
    #[error("world {0} appears in more than one layer")]
    Overlap(u32),
    #[error("world {0} is missing from every layer")]
    Missing(u32),
    #[error("layers range over different universes")]
    UniverseMismatch,
    #[error("ranks are not compressed: rank {0} is unoccupied")]
    RankGap(u32),
    #[error("an order needs at least one world")]
    EmptyUniverse,
    #[error("cannot enumerate weak orders over {0} worlds (limit {MAX_ENUMERATION_WORLDS})")]
    UniverseTooLarge(usize),
}

/// Layered presentation of a preorder; index = rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layers(pub Vec<WorldSet>);

impl Layers {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WorldSet> {
        self.0.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalPreorder {
    ranks: Vec<u32>,
    layer_count: u32,
}

impl TotalPreorder {
    /// Every world in layer 0.
    pub fn flat(universe: usize) -> Self {
        assert!(universe > 0, "an order needs at least one world");
        TotalPreorder {
            ranks: vec![0; universe],
            layer_count: 1,
        }
    }

    /// Accepts an already compressed rank vector.
    pub fn from_ranks(ranks: Vec<u32>) -> Result<Self, PreorderError> {
        if ranks.is_empty() {
            return Err(PreorderError::EmptyUniverse);
        }
        let layer_count = ranks.iter().max().copied().unwrap_or(0) + 1;
        let mut seen = vec![false; layer_count as usize];
        for &r in &ranks {
            seen[r as usize] = true;
        }
        if let Some(gap) = seen.iter().position(|s| !s) {
            return Err(PreorderError::RankGap(gap as u32));
        }
        Ok(TotalPreorder { ranks, layer_count })
    }

    /// Order whose ranks are order-isomorphic to `keys` (one key per world),
    /// numbered consecutively from 0.
    pub fn compress<K: Ord>(keys: &[K]) -> Self {
        assert!(!keys.is_empty(), "an order needs at least one world");
        let mut sorted: Vec<&K> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let ranks: Vec<u32> = keys
            .iter()
            .map(|k| sorted.binary_search(&k).expect("key present") as u32)
            .collect();
        TotalPreorder {
            ranks,
            layer_count: sorted.len() as u32,
        }
    }

    pub fn from_layers(layers: &Layers) -> Result<Self, PreorderError> {
        let first = layers.0.first().ok_or(PreorderError::EmptyUniverse)?;
        let universe = first.universe();
        if universe == 0 {
            return Err(PreorderError::EmptyUniverse);
        }
        let mut ranks: Vec<Option<u32>> = vec![None; universe];
        for (r, layer) in layers.iter().enumerate() {
            if layer.universe() != universe {
                return Err(PreorderError::UniverseMismatch);
            }
            if layer.is_empty() {
                return Err(PreorderError::EmptyLayer(r));
            }
            for w in layer.iter() {
                if ranks[w.index()].replace(r as u32).is_some() {
                    return Err(PreorderError::Overlap(w.0));
                }
            }
        }
        let ranks = ranks
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or(PreorderError::Missing(i as u32)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TotalPreorder {
            ranks,
            layer_count: layers.len() as u32,
        })
    }

    pub fn to_layers(&self) -> Layers {
        Layers((0..self.layer_count).map(|r| self.layer(r)).collect())
    }

    pub fn universe_size(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn layer_count(&self) -> usize {
        self.layer_count as usize
    }

    #[inline]
    pub fn rank(&self, w: World) -> u32 {
        self.ranks[w.index()]
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.ranks.len() as u32).map(World)
    }

    pub fn layer(&self, rank: u32) -> WorldSet {
        WorldSet::from_worlds(
            self.ranks.len(),
            self.worlds().filter(|&w| self.rank(w) == rank),
        )
    }

    /// Layer 0, the most plausible worlds.
    pub fn bottom(&self) -> WorldSet {
        self.layer(0)
    }

    #[inline]
    pub fn leq(&self, w1: World, w2: World) -> bool {
        self.rank(w1) <= self.rank(w2)
    }

    #[inline]
    pub fn lt(&self, w1: World, w2: World) -> bool {
        self.rank(w1) < self.rank(w2)
    }

    #[inline]
    pub fn equiv(&self, w1: World, w2: World) -> bool {
        self.rank(w1) == self.rank(w2)
    }

    /// `w1 ≪ w2`: `w2` lies in the layer right above `w1`.
    #[inline]
    pub fn direct_successor(&self, w1: World, w2: World) -> bool {
        self.rank(w2) == self.rank(w1) + 1
    }

    /// Lowest rank occupied by a member of `set`.
    pub fn min_rank_of(&self, set: &WorldSet) -> Option<u32> {
        set.iter().map(|w| self.rank(w)).min()
    }

    /// `min(set, ≤)`.
    pub fn min_of(&self, set: &WorldSet) -> WorldSet {
        match self.min_rank_of(set) {
            None => WorldSet::empty(self.ranks.len()),
            Some(r) => {
                WorldSet::from_worlds(self.ranks.len(), set.iter().filter(|&w| self.rank(w) == r))
            }
        }
    }

    /// Ordering used to present counterexamples: fewer layers first, then
    /// the layer encoding read bottom-up.
    pub fn presentation_key(&self) -> (usize, Vec<Vec<u32>>) {
        let layers = (0..self.layer_count)
            .map(|r| {
                let mut ws: Vec<u32> = self
                    .worlds()
                    .filter(|&w| self.rank(w) == r)
                    .map(|w| w.0)
                    .collect();
                ws.reverse();
                ws
            })
            .collect();
        (self.layer_count(), layers)
    }
}

/// Every weak order over `universe` worlds exactly once, in lexicographic
/// order of the rank vectors.
pub fn enumerate_preorders(universe: usize) -> Result<PreorderIter, PreorderError> {
    if universe == 0 {
        return Err(PreorderError::EmptyUniverse);
    }
    if universe > MAX_ENUMERATION_WORLDS {
        return Err(PreorderError::UniverseTooLarge(universe));
    }
    Ok(PreorderIter {
        current: vec![0; universe],
        started: false,
        done: false,
    })
}

/// Streaming enumerator behind [`enumerate_preorders`].
#[derive(Clone, Debug)]
pub struct PreorderIter {
    current: Vec<u32>,
    started: bool,
    done: bool,
}

impl PreorderIter {
    /// Missing ranks below the maximum of `prefix`, as a bitmask, and that
    /// maximum.
    fn gaps(prefix: &[u32]) -> (u32, u32) {
        let used = prefix.iter().fold(0u32, |acc, &r| acc | (1 << r));
        let max = prefix.iter().copied().max().unwrap_or(0);
        let full = if max >= 31 {
            u32::MAX
        } else {
            (1u32 << (max + 1)) - 1
        };
        (full & !used, max)
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        for i in (0..n).rev() {
            for v in self.current[i] + 1..n as u32 {
                self.current[i] = v;
                let (missing, _) = Self::gaps(&self.current[..=i]);
                let slots = (n - 1 - i) as u32;
                if missing.count_ones() > slots {
                    continue;
                }
                // Smallest completion: zeros, then the missing ranks ascending.
                let tail: Vec<u32> = (1..32).filter(|b| missing & (1 << b) != 0).collect();
                let zeros = slots as usize - tail.len();
                for (k, slot) in self.current[i + 1..].iter_mut().enumerate() {
                    *slot = if k < zeros { 0 } else { tail[k - zeros] };
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PreorderIter {
    type Item = TotalPreorder;

    fn next(&mut self) -> Option<TotalPreorder> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        let layer_count = self.current.iter().max().copied().unwrap_or(0) + 1;
        Some(TotalPreorder {
            ranks: self.current.clone(),
            layer_count,
        })
    }
}
