//! Bit-vector subsets of the state set.
//!
//! A [`StateSet`] is the "vector of units and zeroes" used by the subset
//! searches: one bit per state, with the cardinality cached so the pruning
//! store can bucket sets by size without recounting.

use std::fmt;

const BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    universe: usize,
    count: usize,
    blocks: Vec<u64>,
}

impl StateSet {
    /// The empty subset of `[0, universe)`.
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            count: 0,
            blocks: vec![0; universe.div_ceil(BITS)],
        }
    }

    /// The full set `[0, universe)`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for (i, block) in set.blocks.iter_mut().enumerate() {
            let lo = i * BITS;
            let width = (universe - lo).min(BITS);
            *block = if width == BITS {
                u64::MAX
            } else {
                (1u64 << width) - 1
            };
        }
        set.count = universe;
        set
    }

    pub fn singleton(universe: usize, state: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(state);
        set
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(universe: usize, states: I) -> Self {
        let mut set = Self::empty(universe);
        for s in states {
            set.insert(s);
        }
        set
    }

    /// Size of the underlying state space.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, state: usize) -> bool {
        state < self.universe && self.blocks[state / BITS] & (1 << (state % BITS)) != 0
    }

    /// Inserts `state`, returning whether it was newly added.
    ///
    /// Panics if `state` is outside the universe.
    pub fn insert(&mut self, state: usize) -> bool {
        assert!(
            state < self.universe,
            "state {state} outside universe {}",
            self.universe
        );
        let block = &mut self.blocks[state / BITS];
        let mask = 1 << (state % BITS);
        if *block & mask != 0 {
            return false;
        }
        *block |= mask;
        self.count += 1;
        true
    }

    pub fn remove(&mut self, state: usize) -> bool {
        if !self.contains(state) {
            return false;
        }
        self.blocks[state / BITS] &= !(1 << (state % BITS));
        self.count -= 1;
        true
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.count <= other.count
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &StateSet) -> bool {
        self.count < other.count && self.is_subset(other)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            blocks: &self.blocks,
            index: 0,
            current: self.blocks.first().copied().unwrap_or(0),
        }
    }

    /// The smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

pub struct Iter<'a> {
    blocks: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * BITS + bit);
            }
            self.index += 1;
            if self.index >= self.blocks.len() {
                return None;
            }
            self.current = self.blocks[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
