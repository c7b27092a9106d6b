//! Shedding faces, k-decomposability and shellability.

use std::collections::{BTreeSet, HashSet};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::canon::MemoKey;
use crate::clutter::check_within;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::BitFace;

/// Largest facet count the shelling search accepts.
pub const MAX_SEARCH_FACETS: usize = 128;

fn check_shedding_candidate(d: &SimplicialComplex, s: BitFace) -> Result<()> {
    check_within(d.n(), s)?;
    if s.is_empty() {
        return Err(Error::EmptyFace);
    }
    if !d.is_face(s) {
        return Err(Error::NotAFace(s));
    }
    Ok(())
}

/// No facet of `(star σ) ∖ σ` is a facet of `Δ ∖ σ`.
pub fn is_shedding_face(d: &SimplicialComplex, s: BitFace) -> Result<bool> {
    check_shedding_candidate(d, s)?;
    Ok(shedding_unchecked(d, s))
}

fn shedding_unchecked(d: &SimplicialComplex, s: BitFace) -> bool {
    // Each F ∖ x (F ⊇ σ, x ∈ σ) must sit strictly inside some face avoiding σ,
    // which means some facet H ⊋ F ∖ x has a vertex outside F.
    for &f in d.facets().iter().filter(|f| s.is_subset_of(**f)) {
        for x in s.vertices() {
            let g = f.without(x);
            let covered = d
                .facets()
                .iter()
                .any(|&h| g.is_subset_of(h) && !h.minus(g).without(x).is_empty());
            if !covered {
                return false;
            }
        }
    }
    true
}

/// The exchange form: for every face `τ ⊇ σ` and `v ∈ σ` there is `w ∉ τ`
/// with `(τ ∪ w) ∖ v` a face.
pub fn is_shedding_face_exchange(d: &SimplicialComplex, s: BitFace) -> Result<bool> {
    check_shedding_candidate(d, s)?;
    let mut taus = BTreeSet::new();
    for &f in d.facets().iter().filter(|f| s.is_subset_of(**f)) {
        for extra in f.minus(s).subsets() {
            taus.insert(s.union(extra));
        }
    }
    let ground = BitFace::full(d.n());
    Ok(taus.into_iter().all(|tau| {
        s.vertices().all(|v| {
            ground
                .minus(tau)
                .vertices()
                .any(|w| d.is_face(tau.with(w).without(v)))
        })
    }))
}

/// Node budget shared by a single decision. `None` means unlimited.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    remaining: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { remaining: None }
    }

    pub fn nodes(n: u64) -> Self {
        Budget { remaining: Some(n) }
    }

    fn spend(&mut self) -> bool {
        match &mut self.remaining {
            None => true,
            Some(0) => false,
            Some(r) => {
                *r -= 1;
                true
            }
        }
    }
}

impl From<Option<u64>> for Budget {
    fn from(b: Option<u64>) -> Self {
        Budget { remaining: b }
    }
}

/// Memo of k-decomposability verdicts, shareable across threads.
#[derive(Default)]
pub struct DecompositionCache {
    map: DashMap<(MemoKey, i32), bool>,
}

impl DecompositionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// A replayable witness of k-decomposability. Faces are in the labels of the
/// complex the certificate was produced for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheddingCertificate {
    Degenerate,
    Simplex,
    Shed {
        face: BitFace,
        link: Box<SheddingCertificate>,
        deletion: Box<SheddingCertificate>,
    },
}

impl SheddingCertificate {
    /// Largest shedding-face dimension used, `None` for leaves only.
    pub fn max_dim(&self) -> Option<i32> {
        match self {
            SheddingCertificate::Shed { face, link, deletion } => {
                let here = face.len() as i32 - 1;
                [Some(here), link.max_dim(), deletion.max_dim()].into_iter().flatten().max()
            }
            _ => None,
        }
    }

    /// Every shedding face used, in pre-order.
    pub fn faces(&self) -> Vec<BitFace> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<BitFace>) {
        if let SheddingCertificate::Shed { face, link, deletion } = self {
            out.push(*face);
            link.collect(out);
            deletion.collect(out);
        }
    }
}

fn candidate_faces(d: &SimplicialComplex, k: i32) -> Vec<BitFace> {
    let max_len = (k + 1).max(0) as usize;
    let mut set = BTreeSet::new();
    for &f in d.facets() {
        for s in f.subsets() {
            if !s.is_empty() && s.len() <= max_len {
                set.insert((s.len(), s));
            }
        }
    }
    set.into_iter().map(|(_, s)| s).collect()
}

/// Decides k-decomposability; `None` when the budget runs out.
pub fn decide_k_decomposable(
    d: &SimplicialComplex,
    k: i32,
    cache: &DecompositionCache,
    budget: &mut Budget,
) -> Option<bool> {
    if d.is_degenerate() || d.is_simplex() {
        return Some(true);
    }
    let key = (MemoKey::of_complex(d), k);
    if let Some(v) = cache.map.get(&key) {
        return Some(*v);
    }
    if !budget.spend() {
        return None;
    }
    for s in candidate_faces(d, k) {
        if !shedding_unchecked(d, s) {
            continue;
        }
        let link = d.link(s).expect("candidate is a face");
        match decide_k_decomposable(&link, k, cache, budget) {
            Some(true) => {}
            Some(false) => continue,
            None => return None,
        }
        match decide_k_decomposable(&d.delete_face(s), k, cache, budget) {
            Some(true) => {
                cache.map.insert(key, true);
                return Some(true);
            }
            Some(false) => continue,
            None => return None,
        }
    }
    cache.map.insert(key, false);
    Some(false)
}

/// k-decomposability with a certificate on success. `k ≥ -1`; `k = 0` is
/// vertex decomposability.
pub fn is_k_decomposable(
    d: &SimplicialComplex,
    k: i32,
    cache: &DecompositionCache,
) -> (bool, Option<SheddingCertificate>) {
    let ok = decide_k_decomposable(d, k, cache, &mut Budget::unlimited()) == Some(true);
    if !ok {
        return (false, None);
    }
    let labels: Vec<usize> = (0..d.n()).collect();
    (true, Some(build_certificate(d, k, cache, &labels)))
}

fn to_labels(s: BitFace, labels: &[usize]) -> BitFace {
    BitFace::from_vertices(s.vertices().map(|v| labels[v]))
}

fn link_labels(s: BitFace, labels: &[usize]) -> Vec<usize> {
    labels
        .iter()
        .enumerate()
        .filter(|(i, _)| !s.contains(*i))
        .map(|(_, &l)| l)
        .collect()
}

fn build_certificate(
    d: &SimplicialComplex,
    k: i32,
    cache: &DecompositionCache,
    labels: &[usize],
) -> SheddingCertificate {
    if d.is_degenerate() {
        return SheddingCertificate::Degenerate;
    }
    if d.is_simplex() {
        return SheddingCertificate::Simplex;
    }
    let mut unlimited = Budget::unlimited();
    for s in candidate_faces(d, k) {
        if !shedding_unchecked(d, s) {
            continue;
        }
        let link = d.link(s).expect("candidate is a face");
        let del = d.delete_face(s);
        if decide_k_decomposable(&link, k, cache, &mut unlimited) == Some(true)
            && decide_k_decomposable(&del, k, cache, &mut unlimited) == Some(true)
        {
            return SheddingCertificate::Shed {
                face: to_labels(s, labels),
                link: Box::new(build_certificate(&link, k, cache, &link_labels(s, labels))),
                deletion: Box::new(build_certificate(&del, k, cache, labels)),
            };
        }
    }
    unreachable!("decision said decomposable but no shedding face works")
}

/// Replays a certificate against `d`, checking every shedding face and the
/// dimension bound `k`.
pub fn verify_certificate(d: &SimplicialComplex, k: i32, cert: &SheddingCertificate) -> bool {
    let labels: Vec<usize> = (0..d.n()).collect();
    replay(d, k, cert, &labels)
}

fn replay(d: &SimplicialComplex, k: i32, cert: &SheddingCertificate, labels: &[usize]) -> bool {
    match cert {
        SheddingCertificate::Degenerate => d.is_degenerate(),
        SheddingCertificate::Simplex => d.is_simplex(),
        SheddingCertificate::Shed { face, link, deletion } => {
            let mut local = BitFace::EMPTY;
            for v in face.vertices() {
                match labels.iter().position(|&l| l == v) {
                    Some(i) => local = local.with(i),
                    None => return false,
                }
            }
            if local.is_empty()
                || local.len() as i32 - 1 > k
                || !d.is_face(local)
                || !shedding_unchecked(d, local)
            {
                return false;
            }
            let l = d.link(local).expect("checked face");
            replay(&l, k, link, &link_labels(local, labels))
                && replay(&d.delete_face(local), k, deletion, labels)
        }
    }
}

/// Facet order witnessing shellability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShellingOrder(pub Vec<BitFace>);

impl ShellingOrder {
    /// Each facet after the first meets the earlier ones in a pure complex of
    /// codimension one in that facet, and the order lists every facet once.
    pub fn is_valid_for(&self, d: &SimplicialComplex) -> bool {
        let mut seen: Vec<BitFace> = self.0.clone();
        seen.sort_unstable();
        if seen != d.facets() {
            return false;
        }
        (1..self.0.len()).all(|i| extends_shelling(self.0[i], &self.0[..i]))
    }
}

fn extends_shelling(f: BitFace, placed: &[BitFace]) -> bool {
    if placed.is_empty() {
        return true;
    }
    let ridges = f
        .vertices()
        .filter(|&x| placed.iter().any(|g| f.without(x).is_subset_of(*g)))
        .fold(BitFace::EMPTY, |a, x| a.with(x));
    placed.iter().all(|g| !f.minus(*g).intersection(ridges).is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Shellable(ShellingOrder),
    NotShellable,
    Undecided,
}

/// Backtracking over facet orders of weakly decreasing dimension.
pub fn shelling_search(d: &SimplicialComplex, budget: Budget) -> Result<SearchOutcome> {
    if d.is_degenerate() {
        return Ok(SearchOutcome::Shellable(ShellingOrder(d.facets().to_vec())));
    }
    let m = d.facets().len();
    if m > MAX_SEARCH_FACETS {
        return Err(Error::TooManyFacets(m));
    }
    let mut facets = d.facets().to_vec();
    facets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut search = ShellingSearch {
        facets,
        failed: HashSet::new(),
        order: Vec::with_capacity(m),
        budget,
        exhausted: false,
    };
    if search.extend(0) {
        Ok(SearchOutcome::Shellable(ShellingOrder(search.order)))
    } else if search.exhausted {
        Ok(SearchOutcome::Undecided)
    } else {
        Ok(SearchOutcome::NotShellable)
    }
}

struct ShellingSearch {
    facets: Vec<BitFace>,
    failed: HashSet<u128>,
    order: Vec<BitFace>,
    budget: Budget,
    exhausted: bool,
}

impl ShellingSearch {
    fn extend(&mut self, placed: u128) -> bool {
        let m = self.facets.len();
        if self.order.len() == m {
            return true;
        }
        if self.failed.contains(&placed) {
            return false;
        }
        if !self.budget.spend() {
            self.exhausted = true;
            return false;
        }
        let first = (0..m).find(|&i| placed >> i & 1 == 0).expect("facets remain");
        let size = self.facets[first].len();
        for i in first..m {
            let f = self.facets[i];
            if f.len() != size {
                break;
            }
            if placed >> i & 1 == 1 || !extends_shelling(f, &self.order) {
                continue;
            }
            self.order.push(f);
            if self.extend(placed | 1 << i) {
                return true;
            }
            self.order.pop();
            if self.exhausted {
                return false;
            }
        }
        self.failed.insert(placed);
        false
    }
}

/// Face counts refined by degree and their h-transform.
/// `f[i][j]` counts faces of cardinality `j` whose largest containing facet
/// has cardinality `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FHTriangle {
    pub f: Vec<Vec<u64>>,
    pub h: Vec<Vec<i64>>,
}

impl FHTriangle {
    pub fn has_negative(&self) -> bool {
        self.h.iter().flatten().any(|&x| x < 0)
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

pub fn fh_triangle(d: &SimplicialComplex) -> FHTriangle {
    let top = d.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    let mut f = vec![vec![0u64; top + 1]; top + 1];
    for (i, row) in f.iter_mut().enumerate() {
        row.truncate(i + 1);
    }
    for s in d.faces() {
        let degree = d
            .facets()
            .iter()
            .filter(|g| s.is_subset_of(**g))
            .map(|g| g.len())
            .max()
            .expect("face lies in a facet");
        f[degree][s.len()] += 1;
    }
    let h = f
        .iter()
        .enumerate()
        .map(|(i, row)| {
            (0..=i)
                .map(|j| {
                    (0..=j)
                        .map(|k| {
                            let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                            sign * binomial(i - k, j - k) * row[k] as i64
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    FHTriangle { f, h }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ShellabilityOptions {
    /// Also run the shelling search and require agreement.
    pub audit: bool,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellabilityReport {
    /// `None` when a budget ran out before a verdict.
    pub shellable: Option<bool>,
    pub h_negative: bool,
    pub certificate: Option<SheddingCertificate>,
    pub order: Option<ShellingOrder>,
}

/// Shellability as dim-decomposability, with the h-triangle as a quick
/// negative test. In audit mode the shelling search runs as well and any
/// disagreement is an error.
pub fn shellability(
    d: &SimplicialComplex,
    cache: &DecompositionCache,
    opts: ShellabilityOptions,
) -> Result<ShellabilityReport> {
    let h_negative = fh_triangle(d).has_negative();
    let k = d.dim().unwrap_or(-1);
    let mut budget = Budget::from(opts.budget);
    let decided = if h_negative && !opts.audit {
        Some(false)
    } else {
        decide_k_decomposable(d, k, cache, &mut budget)
    };
    let certificate = if decided == Some(true) {
        let labels: Vec<usize> = (0..d.n()).collect();
        Some(build_certificate(d, k, cache, &labels))
    } else {
        None
    };
    let mut order = None;
    if opts.audit {
        match shelling_search(d, Budget::from(opts.budget))? {
            SearchOutcome::Shellable(o) => {
                if decided == Some(false) {
                    return Err(Error::AuditMismatch { search: true, decomposable: false });
                }
                order = Some(o);
            }
            SearchOutcome::NotShellable => {
                if decided == Some(true) {
                    return Err(Error::AuditMismatch { search: false, decomposable: true });
                }
            }
            SearchOutcome::Undecided => {}
        }
        if h_negative && decided == Some(true) {
            return Err(Error::AuditMismatch { search: false, decomposable: true });
        }
    }
    Ok(ShellabilityReport {
        shellable: decided,
        h_negative,
        certificate,
        order,
    })
}

pub fn is_shellable(d: &SimplicialComplex, cache: &DecompositionCache) -> bool {
    let k = d.dim().unwrap_or(-1);
    !fh_triangle(d).has_negative()
        && decide_k_decomposable(d, k, cache, &mut Budget::unlimited()) == Some(true)
}
