//! Relabeling-invariant keys for clutters and complexes.
//!
//! Vertices are first partitioned by an iterated invariant (circuit-size
//! degrees refined by the colors of circuit neighbours). The key is the least
//! sorted list of relabeled circuit masks over all relabelings that place the
//! vertex classes in invariant order. Two set systems on the same number of
//! vertices get the same key iff they are isomorphic.

use std::fmt;

use crate::clutter::Clutter;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::BitFace;

/// Ground sets up to this size are canonicalized exactly.
pub const MAX_CANONICAL_VERTICES: usize = 8;

/// Byte encoding: `[n, sorted relabeled masks...]`, one byte per mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn of(c: &Clutter) -> Result<Self> {
        Ok(canonical_form(c)?.0)
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let Some((&n, masks)) = bytes.split_first() else {
            return Err(Error::InvalidParameters("empty canonical key".into()));
        };
        if n as usize > MAX_CANONICAL_VERTICES {
            return Err(Error::CanonicalTooLarge(n as usize));
        }
        let limit = 1u16 << n;
        if masks.iter().any(|&m| m as u16 >= limit) || masks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameters("malformed canonical key".into()));
        }
        Ok(CanonicalKey(bytes.into()))
    }

    /// The canonical representative this key encodes.
    pub fn clutter(&self) -> Clutter {
        let circuits = self.0[1..].iter().map(|&m| BitFace::from_bits(m as u32)).collect();
        Clutter::from_sorted_unchecked(self.n(), circuits)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

/// Memo key: canonical when the ground set is small enough, otherwise the raw
/// circuit list (still exact, just without sharing across relabelings).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MemoKey {
    Canonical(CanonicalKey),
    Raw(u8, Box<[u32]>),
}

impl MemoKey {
    pub fn of_clutter(c: &Clutter) -> MemoKey {
        memo_key(c.n(), c.circuits())
    }

    /// Keys a complex by its facets after discarding vertices in no face.
    pub fn of_complex(d: &SimplicialComplex) -> MemoKey {
        let (compact, _) = d.compact();
        memo_key(compact.n(), compact.facets())
    }
}

fn memo_key(n: usize, sets: &[BitFace]) -> MemoKey {
    if n <= MAX_CANONICAL_VERTICES {
        MemoKey::Canonical(canonical_masks(n, sets).0)
    } else {
        MemoKey::Raw(n as u8, sets.iter().map(|s| s.bits()).collect())
    }
}

/// Canonical key, canonical representative, and the relabeling `perm[old] = new`
/// that carries `c` onto the representative.
pub fn canonical_form(c: &Clutter) -> Result<(CanonicalKey, Clutter, Vec<usize>)> {
    if c.n() > MAX_CANONICAL_VERTICES {
        return Err(Error::CanonicalTooLarge(c.n()));
    }
    let (key, perm) = canonical_masks(c.n(), c.circuits());
    let rep = key.clutter();
    Ok((key, rep, perm))
}

/// Isomorphism test via canonical keys (ground sets must agree).
pub fn isomorphic(a: &Clutter, b: &Clutter) -> Result<bool> {
    Ok(a.n() == b.n() && CanonicalKey::of(a)? == CanonicalKey::of(b)?)
}

#[inline]
fn mix(mut x: u64) -> u64 {
    // splitmix64 finalizer
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Iterated vertex invariant; equal-colored vertices may be swapped freely.
fn vertex_colors(n: usize, sets: &[BitFace]) -> [u64; MAX_CANONICAL_VERTICES] {
    let mut color = [0u64; MAX_CANONICAL_VERTICES];
    for &e in sets {
        let h = mix(e.len() as u64);
        for v in e.vertices() {
            color[v] = color[v].wrapping_add(h);
        }
    }
    let mut classes = distinct(&color[..n]);
    for _ in 0..n {
        if classes == n {
            break;
        }
        let mut next = [0u64; MAX_CANONICAL_VERTICES];
        for v in 0..n {
            next[v] = mix(color[v]);
        }
        for &e in sets {
            let inner = e
                .vertices()
                .fold(0u64, |acc, u| acc.wrapping_add(mix(color[u] ^ 0x5555)));
            let h = mix(inner ^ ((e.len() as u64) << 56));
            for v in e.vertices() {
                next[v] = next[v].wrapping_add(h);
            }
        }
        let refined = distinct(&next[..n]);
        color = next;
        if refined == classes {
            break;
        }
        classes = refined;
    }
    color
}

fn distinct(xs: &[u64]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search<'a> {
    sets: &'a [BitFace],
    /// vertices in invariant order; cells are contiguous runs
    order: Vec<usize>,
    cells: Vec<(usize, usize)>,
    perm: [usize; MAX_CANONICAL_VERTICES],
    scratch: Vec<u8>,
    best: Option<Vec<u8>>,
    best_perm: [usize; MAX_CANONICAL_VERTICES],
}

impl Search<'_> {
    fn leaf(&mut self) {
        let mut lo = [0u8; 16];
        let mut hi = [0u8; 16];
        for m in 0..16usize {
            let mut a = 0u8;
            let mut b = 0u8;
            for bit in 0..4 {
                if m >> bit & 1 == 1 {
                    a |= 1 << self.perm[bit];
                    b |= 1 << self.perm[bit + 4];
                }
            }
            lo[m] = a;
            hi[m] = b;
        }
        self.scratch.clear();
        for s in self.sets {
            let m = s.bits() as usize;
            self.scratch.push(lo[m & 15] | hi[(m >> 4) & 15]);
        }
        self.scratch.sort_unstable();
        let better = match &self.best {
            None => true,
            Some(b) => self.scratch.as_slice() < b.as_slice(),
        };
        if better {
            self.best = Some(self.scratch.clone());
            self.best_perm = self.perm;
        }
    }

    /// Assigns positions `start..end` of cell `ci` to its vertices in every order.
    fn cell(&mut self, ci: usize) {
        if ci == self.cells.len() {
            self.leaf();
            return;
        }
        let (start, end) = self.cells[ci];
        if end - start == 1 {
            self.perm[self.order[start]] = start;
            self.cell(ci + 1);
            return;
        }
        let mut members: Vec<usize> = self.order[start..end].to_vec();
        self.permute(ci, start, &mut members, 0);
    }

    fn permute(&mut self, ci: usize, start: usize, members: &mut Vec<usize>, k: usize) {
        if k == members.len() {
            for (i, &v) in members.iter().enumerate() {
                self.perm[v] = start + i;
            }
            self.cell(ci + 1);
            return;
        }
        for i in k..members.len() {
            members.swap(k, i);
            self.permute(ci, start, members, k + 1);
            members.swap(k, i);
        }
    }
}

pub(crate) fn canonical_masks(n: usize, sets: &[BitFace]) -> (CanonicalKey, Vec<usize>) {
    debug_assert!(n <= MAX_CANONICAL_VERTICES);
    let color = vertex_colors(n, sets);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (color[v], v));
    let mut cells = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && color[order[j]] == color[order[i]] {
            j += 1;
        }
        cells.push((i, j));
        i = j;
    }
    let mut search = Search {
        sets,
        order,
        cells,
        perm: [0; MAX_CANONICAL_VERTICES],
        scratch: Vec::with_capacity(sets.len()),
        best: None,
        best_perm: [0; MAX_CANONICAL_VERTICES],
    };
    search.cell(0);
    let best = search.best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(best.len() + 1);
    bytes.push(n as u8);
    bytes.extend_from_slice(&best);
    (
        CanonicalKey(bytes.into_boxed_slice()),
        search.best_perm[..n].to_vec(),
    )
}
