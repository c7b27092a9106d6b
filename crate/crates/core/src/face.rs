//! Small vertex sets packed into a machine word, plus the set-system helpers
//! (minimal/maximal sets, blockers) shared by clutters and complexes.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 32;

/// A subset of `{0, .., 31}` stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BitFace(u32);

impl BitFace {
    pub const EMPTY: BitFace = BitFace(0);

    pub const fn from_bits(bits: u32) -> Self {
        BitFace(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        BitFace(1 << v)
    }

    /// The full ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            BitFace(u32::MAX)
        } else {
            BitFace((1u32 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        vs.into_iter().fold(BitFace::EMPTY, |acc, v| acc.with(v))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && (self.0 >> v) & 1 == 1
    }

    pub const fn is_subset_of(self, other: BitFace) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_proper_subset_of(self, other: BitFace) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    pub const fn union(self, other: BitFace) -> BitFace {
        BitFace(self.0 | other.0)
    }

    pub const fn intersection(self, other: BitFace) -> BitFace {
        BitFace(self.0 & other.0)
    }

    pub const fn minus(self, other: BitFace) -> BitFace {
        BitFace(self.0 & !other.0)
    }

    pub const fn is_disjoint(self, other: BitFace) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, v: usize) -> BitFace {
        BitFace(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> BitFace {
        BitFace(self.0 & !(1 << v))
    }

    /// Largest member index plus one, i.e. the smallest ground set holding this face.
    pub const fn span(self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// Drops vertex `v` and shifts every higher vertex down by one.
    pub fn remove_index(self, v: usize) -> BitFace {
        let bits = self.0 as u64;
        let low = bits & ((1u64 << v) - 1);
        let high = (bits >> (v + 1)) << v;
        BitFace((low | high) as u32)
    }

    /// Drops every vertex of `gone`, compacting the survivors to a dense range.
    pub fn remove_indices(self, gone: BitFace) -> BitFace {
        let mut out = 0u32;
        let mut pos = 0;
        for v in 0..MAX_VERTICES {
            if gone.contains(v) {
                continue;
            }
            if self.contains(v) {
                out |= 1 << pos;
            }
            pos += 1;
        }
        BitFace(out)
    }

    /// Image under a vertex map `perm[old] = new`.
    pub fn permuted(self, perm: &[usize]) -> BitFace {
        let mut out = 0u32;
        for v in self.vertices() {
            out |= 1 << perm[v];
        }
        BitFace(out)
    }

    /// Shifts every vertex up by `offset` (used by joins and disjoint unions).
    pub fn shifted(self, offset: usize) -> BitFace {
        BitFace(((self.0 as u64) << offset) as u32)
    }

    /// All subsets of this face (including the empty set and itself).
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for BitFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over member indices in increasing order.
#[derive(Clone)]
pub struct Vertices(u32);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    full: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = BitFace;

    fn next(&mut self) -> Option<BitFace> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            // next submask above `cur` in numeric order
            Some(((cur | !self.full).wrapping_add(1)) & self.full)
        };
        Some(BitFace(cur))
    }
}

/// All `k`-subsets of `{0, .., n-1}` in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> Vec<BitFace> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![BitFace::EMPTY];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut x: u64 = (1u64 << k) - 1;
    while x < limit {
        out.push(BitFace(x as u32));
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Sorts, dedups, and keeps only the inclusion-minimal sets.
pub fn minimal_sets(mut sets: Vec<BitFace>) -> Vec<BitFace> {
    sets.sort_unstable_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut kept: Vec<BitFace> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset_of(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Sorts, dedups, and keeps only the inclusion-maximal sets.
pub fn maximal_sets(mut sets: Vec<BitFace>) -> Vec<BitFace> {
    sets.sort_unstable_by_key(|s| (std::cmp::Reverse(s.len()), s.bits()));
    sets.dedup();
    let mut kept: Vec<BitFace> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset_of(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Minimal transversals: the minimal sets meeting every member of `sets`.
///
/// An empty family has the single transversal `∅`; a family containing `∅`
/// has none.
pub fn blocker(sets: &[BitFace]) -> Vec<BitFace> {
    let mut transversals = vec![BitFace::EMPTY];
    for &e in sets {
        let mut next = Vec::with_capacity(transversals.len() * 2);
        for &t in &transversals {
            if !t.is_disjoint(e) {
                next.push(t);
            } else {
                next.extend(e.vertices().map(|x| t.with(x)));
            }
        }
        transversals = minimal_sets(next);
        if transversals.is_empty() {
            break;
        }
    }
    transversals
}

/// First pair `(a, b)` with `a ⊊ b`, if any.
pub fn antichain_violation(sets: &[BitFace]) -> Option<(BitFace, BitFace)> {
    for &a in sets {
        for &b in sets {
            if a.is_proper_subset_of(b) {
                return Some((a, b));
            }
        }
    }
    None
}
