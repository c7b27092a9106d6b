//! Exhaustive generation of clutters up to isomorphism.

use std::collections::HashSet;

use crate::canon::{canonical_masks, CanonicalKey};
use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::face::BitFace;

/// Largest ground set the raw antichain walk supports (subsets fit one `u64`).
pub const MAX_ENUMERATION_VERTICES: usize = 6;

fn check_n(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_VERTICES {
        Err(Error::InvalidParameters(format!(
            "exhaustive enumeration supports at most {MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Calls `visit` once for every antichain of subsets of an `n`-set (no
/// isomorph rejection), circuits in increasing mask order.
pub fn for_each_antichain<F: FnMut(&[BitFace])>(n: usize, mut visit: F) -> Result<()> {
    check_n(n)?;
    let total = 1usize << n;
    let comparable: Vec<u64> = (0..total)
        .map(|a| {
            (0..total)
                .filter(|&b| a & b == a || a & b == b)
                .fold(0u64, |acc, b| acc | 1 << b)
        })
        .collect();
    let mut chosen = Vec::with_capacity(total);
    walk(total, &comparable, 0, 0, &mut chosen, &mut visit);
    Ok(())
}

fn walk<F: FnMut(&[BitFace])>(
    total: usize,
    comparable: &[u64],
    from: usize,
    blocked: u64,
    chosen: &mut Vec<BitFace>,
    visit: &mut F,
) {
    visit(chosen);
    for m in from..total {
        if blocked >> m & 1 == 0 {
            chosen.push(BitFace::from_bits(m as u32));
            walk(total, comparable, m + 1, blocked | comparable[m], chosen, visit);
            chosen.pop();
        }
    }
}

pub fn count_antichains(n: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_antichain(n, |_| count += 1)?;
    Ok(count)
}

/// Canonical keys of all isomorphism classes on `n` vertices, sorted.
pub fn enumerate_keys(n: usize) -> Result<Vec<CanonicalKey>> {
    let mut seen = HashSet::new();
    for_each_antichain(n, |sets| {
        seen.insert(canonical_masks(n, sets).0);
    })?;
    let mut keys: Vec<CanonicalKey> = seen.into_iter().collect();
    keys.sort_unstable();
    Ok(keys)
}

/// One representative per isomorphism class of clutters on `n` vertices,
/// including the two degenerate classes, in canonical-key order.
pub fn enumerate_clutters(n: usize) -> Result<Vec<Clutter>> {
    Ok(enumerate_keys(n)?.iter().map(CanonicalKey::clutter).collect())
}
