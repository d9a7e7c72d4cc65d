//! Index newtypes for the entities of a game, plus a compact topology set.

use std::fmt;

macro_rules! index_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }

            #[inline]
            pub fn from_index(index: usize) -> Self {
                Self(index as u32)
            }
        }
    };
}

index_type!(
    /// A player, by position in the game's player list.
    Player
);
index_type!(
    /// A game state, by position in the game's state list.
    State
);
index_type!(
    /// An action of the shared action alphabet.
    Action
);
index_type!(
    /// A topology, by position in the game's topology list.
    Topology
);

/// Maximum number of topologies a game may declare; sets are stored as a `u64` mask.
pub const MAX_TOPOLOGIES: usize = 64;

/// A set of topologies.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TopologySet(u64);

impl TopologySet {
    pub const EMPTY: TopologySet = TopologySet(0);

    pub fn full(count: usize) -> Self {
        if count >= 64 {
            TopologySet(u64::MAX)
        } else {
            TopologySet((1u64 << count) - 1)
        }
    }

    pub fn singleton(t: Topology) -> Self {
        TopologySet(1u64 << t.0)
    }

    pub fn from_bits(bits: u64) -> Self {
        TopologySet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, t: Topology) -> bool {
        self.0 & (1u64 << t.0) != 0
    }

    pub fn insert(&mut self, t: Topology) {
        self.0 |= 1u64 << t.0;
    }

    pub fn with(self, t: Topology) -> Self {
        TopologySet(self.0 | (1u64 << t.0))
    }

    pub fn union(self, other: Self) -> Self {
        TopologySet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        TopologySet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        TopologySet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// `self ⊊ other`.
    pub fn is_strict_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Topology> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let low = bits.trailing_zeros();
                bits &= bits - 1;
                Some(Topology(low))
            }
        })
    }
}

impl FromIterator<Topology> for TopologySet {
    fn from_iter<I: IntoIterator<Item = Topology>>(iter: I) -> Self {
        let mut set = TopologySet::EMPTY;
        for t in iter {
            set.insert(t);
        }
        set
    }
}

impl fmt::Debug for TopologySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|t| t.0)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a: TopologySet = [Topology(0), Topology(2)].into_iter().collect();
        let b = a.with(Topology(1));
        assert!(a.is_strict_subset(b));
        assert!(!b.is_strict_subset(b));
        assert!(b.is_subset(b));
        assert_eq!(b.difference(a), TopologySet::singleton(Topology(1)));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![Topology(0), Topology(1), Topology(2)]);
        assert_eq!(TopologySet::full(3), b);
        assert_eq!(TopologySet::full(64).len(), 64);
    }
}
