//! Worlds (complete truth assignments) and sets of worlds.
//!
//! A world is identified by its index in the universe of a signature with `n`
//! atoms. The first atom is the most significant bit, so the index read in
//! binary is the world's bitstring in atom order: for `(a, b)` the world
//! `a ∧ ¬b` is `"10"`, index 2.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use smallvec::SmallVec;

/// One interpretation of a signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub u32);

impl World {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Truth value of atom `atom` in a signature of `width` atoms.
    #[inline]
    pub fn truth(self, atom: usize, width: usize) -> bool {
        debug_assert!(atom < width);
        (self.0 >> (width - 1 - atom)) & 1 == 1
    }

    /// Bitstring in atom order, e.g. `"10"` for `a ∧ ¬b` over `(a, b)`.
    pub fn bitstring(self, width: usize) -> String {
        (0..width)
            .map(|i| if self.truth(i, width) { '1' } else { '0' })
            .collect()
    }

    /// Inverse of [`World::bitstring`]. Returns `None` for wrong length or
    /// characters other than `0`/`1`.
    pub fn parse_bitstring(text: &str, width: usize) -> Option<World> {
        if text.len() != width || width > 32 {
            return None;
        }
        let mut index = 0u32;
        for c in text.chars() {
            index <<= 1;
            match c {
                '0' => {}
                '1' => index |= 1,
                _ => return None,
            }
        }
        Some(World(index))
    }
}

const WORD: usize = 64;

/// Membership bitmask over the `2^n` worlds of a universe.
///
/// Bits beyond the universe size are always zero, so derived equality is
/// set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    universe: usize,
    words: SmallVec<[u64; 1]>,
}

impl WorldSet {
    pub fn empty(universe: usize) -> Self {
        let len = universe.div_ceil(WORD).max(1);
        WorldSet {
            universe,
            words: SmallVec::from_elem(0, len),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.clear_tail();
        set
    }

    pub fn singleton(universe: usize, world: World) -> Self {
        let mut set = Self::empty(universe);
        set.insert(world);
        set
    }

    /// Set whose membership bits are the low `universe` bits of `mask`.
    /// Only meaningful for universes of at most 64 worlds.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(
            universe <= WORD,
            "mask construction needs at most 64 worlds"
        );
        let mut set = Self::empty(universe);
        set.words[0] = mask;
        set.clear_tail();
        set
    }

    /// Membership bits as a single word, when the universe fits in one.
    pub fn as_mask(&self) -> Option<u64> {
        (self.universe <= WORD).then(|| self.words[0])
    }

    pub fn from_worlds<I: IntoIterator<Item = World>>(universe: usize, worlds: I) -> Self {
        let mut set = Self::empty(universe);
        for w in worlds {
            set.insert(w);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, world: World) -> bool {
        let i = world.index();
        i < self.universe && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, world: World) {
        let i = world.index();
        assert!(
            i < self.universe,
            "world {i} outside universe of {}",
            self.universe
        );
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, world: World) {
        let i = world.index();
        if i < self.universe {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &WorldSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> WorldSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    /// `Ω1 =_α Ω2`: both sets contain the same `α`-worlds.
    pub fn equal_within(&self, other: &WorldSet, alpha: &WorldSet) -> bool {
        self.intersection(alpha) == other.intersection(alpha)
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = World> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(World((wi * WORD) as u32 + b))
            })
        })
    }

    /// Bitstrings of the members, highest index first (the layout used in
    /// layer tables: `11` before `01`, `10` before `00`).
    pub fn bitstrings(&self, width: usize) -> Vec<String> {
        let mut worlds: Vec<World> = self.iter().collect();
        worlds.reverse();
        worlds.into_iter().map(|w| w.bitstring(width)).collect()
    }

    fn zip_with(&self, other: &WorldSet, f: impl Fn(u64, u64) -> u64) -> WorldSet {
        self.check_universe(other);
        WorldSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.universe % WORD;
        let last = self.words.len() - 1;
        if self.universe == 0 {
            self.words[0] = 0;
        } else if rem != 0 {
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    #[inline]
    fn check_universe(&self, other: &WorldSet) {
        assert_eq!(
            self.universe, other.universe,
            "world sets over different universes"
        );
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|w| w.0)).finish()
    }
}

impl BitAnd for &WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: &WorldSet) -> WorldSet {
        self.intersection(rhs)
    }
}

impl BitOr for &WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: &WorldSet) -> WorldSet {
        self.union(rhs)
    }
}

impl Sub for &WorldSet {
    type Output = WorldSet;
    fn sub(self, rhs: &WorldSet) -> WorldSet {
        self.difference(rhs)
    }
}

impl Not for &WorldSet {
    type Output = WorldSet;
    fn not(self) -> WorldSet {
        self.complement()
    }
}
