//! Reduced simplicial homology over a field, Cohen-Macaulayness and
//! free-face collapsing.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::face::BitFace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Rational,
    Gf2,
}

/// Reduced Betti numbers `b̃₋₁ … b̃_dim`; empty for the void complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyProfile {
    betti: Vec<u64>,
}

impl HomologyProfile {
    pub fn from_betti(betti: Vec<u64>) -> Self {
        HomologyProfile { betti }
    }

    /// `b̃ᵢ`, zero outside the stored range.
    pub fn betti(&self, i: i32) -> u64 {
        if i < -1 {
            return 0;
        }
        self.betti.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Betti numbers indexed from dimension −1.
    pub fn as_slice(&self) -> &[u64] {
        &self.betti
    }

    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// `Σ (−1)ⁱ b̃ᵢ`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(idx, &b)| if idx % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Serialized as its display form, `S<k>` or `not-a-homology-sphere`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SphereSignature {
    Sphere(i32),
    NotASphere,
}

impl fmt::Display for SphereSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereSignature::Sphere(k) => write!(f, "S{k}"),
            SphereSignature::NotASphere => f.write_str("not-a-homology-sphere"),
        }
    }
}

impl FromStr for SphereSignature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "not-a-homology-sphere" {
            return Ok(SphereSignature::NotASphere);
        }
        s.strip_prefix('S')
            .and_then(|k| k.parse().ok())
            .map(SphereSignature::Sphere)
            .ok_or_else(|| format!("not a sphere signature: {s:?}"))
    }
}

impl Serialize for SphereSignature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SphereSignature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl SphereSignature {
    pub fn of_profile(p: &HomologyProfile) -> Self {
        let mut found = None;
        for (idx, &b) in p.as_slice().iter().enumerate() {
            match b {
                0 => {}
                1 if found.is_none() => found = Some(idx as i32 - 1),
                _ => return SphereSignature::NotASphere,
            }
        }
        found.map_or(SphereSignature::NotASphere, SphereSignature::Sphere)
    }
}

/// Faces grouped by cardinality, each group sorted by mask.
fn faces_by_size(d: &SimplicialComplex) -> Vec<Vec<BitFace>> {
    let top = d.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    let mut groups = vec![Vec::new(); top + 1];
    for s in d.faces() {
        groups[s.len()].push(s);
    }
    groups
}

/// Reduced Betti numbers from ranks of the augmented boundary maps.
pub fn reduced_homology(d: &SimplicialComplex, coefficients: Coefficients) -> HomologyProfile {
    let Some(dim) = d.dim() else {
        return HomologyProfile { betti: Vec::new() };
    };
    let len = (dim + 2) as usize;
    let common = d.facets().iter().fold(BitFace::full(d.n()), |a, f| a.intersection(*f));
    if !common.is_empty() {
        return HomologyProfile { betti: vec![0; len] };
    }
    let groups = faces_by_size(d);
    // rank[j] = rank of the boundary map from cardinality j to j − 1
    let mut rank = vec![0u64; len + 1];
    for j in 1..len {
        rank[j] = boundary_rank(&groups[j], &groups[j - 1], coefficients);
    }
    let betti = (0..len)
        .map(|j| groups[j].len() as u64 - rank[j] - rank[j + 1])
        .collect();
    HomologyProfile { betti }
}

fn boundary_rank(rows: &[BitFace], cols: &[BitFace], coefficients: Coefficients) -> u64 {
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let index: HashMap<BitFace, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    match coefficients {
        Coefficients::Gf2 => {
            let words = cols.len().div_ceil(64);
            let mut m: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![0u64; words];
                    for v in r.vertices() {
                        let c = index[&r.without(v)];
                        row[c / 64] |= 1 << (c % 64);
                    }
                    row
                })
                .collect();
            rank_gf2(&mut m, cols.len())
        }
        Coefficients::Rational => {
            let m: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![0i64; cols.len()];
                    for (pos, v) in r.vertices().enumerate() {
                        row[index[&r.without(v)]] = if pos % 2 == 0 { 1 } else { -1 };
                    }
                    row
                })
                .collect();
            rank_rational(&m)
        }
    }
}

pub(crate) fn rank_gf2(m: &mut [Vec<u64>], ncols: usize) -> u64 {
    let mut rank = 0usize;
    for c in 0..ncols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..m.len()).find(|&r| m[r][w] & bit != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank as u64
}

/// Rank over the rationals by fraction-free elimination; switches to big
/// integers if an intermediate value leaves the `i128` range.
pub(crate) fn rank_rational(m: &[Vec<i64>]) -> u64 {
    let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match bareiss_i128(small) {
        Some(r) => r,
        None => {
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            bareiss_big(big)
        }
    }
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for r in rank + 1..rows {
            let factor = m[r][c];
            for k in c..cols {
                let v = pivot
                    .checked_mul(m[r][k])?
                    .checked_sub(factor.checked_mul(m[rank][k])?)?;
                m[r][k] = v / prev;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank as u64)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> u64 {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in rank + 1..rows {
            let factor = m[r][c].clone();
            for k in c..cols {
                let v = &pivot * &m[r][k] - &factor * &m[rank][k];
                m[r][k] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank as u64
}

/// Reisner's criterion over every face, the empty face included. The void
/// and empty complexes count as Cohen-Macaulay.
pub fn is_cohen_macaulay(d: &SimplicialComplex, coefficients: Coefficients) -> bool {
    if d.is_degenerate() {
        return true;
    }
    if !d.is_pure() {
        return false;
    }
    d.faces().into_iter().all(|s| {
        let link = d.link(s).expect("face");
        let top = link.dim().unwrap_or(-1);
        let p = reduced_homology(&link, coefficients);
        (-1..top).all(|i| p.betti(i) == 0)
    })
}

/// Every pure skeleton is Cohen-Macaulay.
pub fn is_sequentially_cm(d: &SimplicialComplex, coefficients: Coefficients) -> bool {
    let Some(dim) = d.dim() else {
        return true;
    };
    (-1..=dim).all(|s| is_cohen_macaulay(&d.skeleton(s, true), coefficients))
}

/// Repeatedly removes a nonempty face lying in exactly one other face
/// (necessarily a facet one dimension up) together with that facet, taking
/// the smallest such face first.
pub fn free_face_collapse(d: &SimplicialComplex) -> SimplicialComplex {
    let mut cur = d.clone();
    while let Some(s) = smallest_free_face(&cur) {
        cur = cur.delete_face(s);
    }
    cur
}

fn smallest_free_face(d: &SimplicialComplex) -> Option<BitFace> {
    let facets = d.facets();
    facets
        .iter()
        .filter(|f| f.len() >= 2)
        .flat_map(|&f| f.vertices().map(move |x| f.without(x)))
        .filter(|&s| facets.iter().filter(|g| s.is_subset_of(**g)).count() == 1)
        .min()
}

/// Homology of the collapsed complex read as a sphere type.
pub fn sphere_signature(d: &SimplicialComplex, coefficients: Coefficients) -> SphereSignature {
    SphereSignature::of_profile(&reduced_homology(&free_face_collapse(d), coefficients))
}

/// Signature of the pure skeleton in the top dimension.
pub fn top_skeleton_signature(d: &SimplicialComplex, coefficients: Coefficients) -> SphereSignature {
    match d.dim() {
        Some(dim) => sphere_signature(&d.skeleton(dim, true), coefficients),
        None => SphereSignature::NotASphere,
    }
}
