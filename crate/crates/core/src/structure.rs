//! Vertex-local structure predicates and the chordality decision procedure.

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::canon::MemoKey;
use crate::clutter::{Clutter, MinorOp};
use crate::error::{Error, Result};
use crate::face::BitFace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexVerdict {
    pub vertex: usize,
    pub simplicial: bool,
    pub free: bool,
    /// Always false for clutters that are not uniform.
    pub complete_neighborhood: bool,
}

fn check_vertex(c: &Clutter, v: usize) -> Result<()> {
    if v >= c.n() {
        Err(Error::VertexOutOfRange { vertex: v, n: c.n() })
    } else {
        Ok(())
    }
}

/// Some circuit lies inside `(e1 ∪ e2) ∖ v`.
fn exchange_holds(c: &Clutter, e1: BitFace, e2: BitFace, v: usize) -> bool {
    let target = e1.union(e2).without(v);
    c.circuits().iter().any(|e3| e3.is_subset_of(target))
}

/// Any two distinct circuits through `v` admit a third circuit inside their
/// union minus `v`. Vertices in at most one circuit are simplicial.
pub fn is_simplicial_vertex(c: &Clutter, v: usize) -> Result<bool> {
    check_vertex(c, v)?;
    Ok(simplicial_unchecked(c, v))
}

fn simplicial_unchecked(c: &Clutter, v: usize) -> bool {
    let through: Vec<BitFace> = c.circuits_containing(v).collect();
    for (i, &e1) in through.iter().enumerate() {
        for &e2 in &through[i + 1..] {
            if !exchange_holds(c, e1, e2, v) {
                return false;
            }
        }
    }
    true
}

pub fn simplicial_vertices(c: &Clutter) -> Vec<usize> {
    (0..c.n()).filter(|&v| simplicial_unchecked(c, v)).collect()
}

pub fn is_free_vertex(c: &Clutter, v: usize) -> Result<bool> {
    check_vertex(c, v)?;
    Ok(c.degree(v) == 1)
}

/// The induced subclutter on `S = {x : x, v ∈ e}` is the complete `d`-uniform
/// clutter on `S` (vacuously so when `|S| < d`).
pub fn is_complete_neighborhood_vertex(c: &Clutter, v: usize, d: usize) -> Result<bool> {
    check_vertex(c, v)?;
    if !c.is_uniform(d) {
        return Err(Error::NotUniform(d));
    }
    let nbhd = c
        .circuits_containing(v)
        .fold(BitFace::EMPTY, |a, e| a.union(e))
        .without(v);
    if nbhd.len() < d {
        return Ok(true);
    }
    Ok(nbhd
        .subsets()
        .filter(|s| s.len() == d)
        .all(|s| c.is_circuit(s)))
}

pub fn vertex_verdict(c: &Clutter, v: usize) -> Result<VertexVerdict> {
    let complete_neighborhood = match c.min_cardinality() {
        Some(d) if c.is_uniform(d) => is_complete_neighborhood_vertex(c, v, d)?,
        None => true,
        _ => false,
    };
    Ok(VertexVerdict {
        vertex: v,
        simplicial: is_simplicial_vertex(c, v)?,
        free: is_free_vertex(c, v)?,
        complete_neighborhood,
    })
}

/// Pairs `(v, e)` with `v ∈ e` such that every other circuit `e₂ ∋ v` has a
/// circuit inside `(e ∪ e₂) ∖ v`.
pub fn neighborhood_containment_pairs(c: &Clutter) -> Vec<(usize, BitFace)> {
    let mut out = Vec::new();
    for &e in c.circuits() {
        for v in e.vertices() {
            let ok = c
                .circuits_containing(v)
                .filter(|&e2| e2 != e)
                .all(|e2| exchange_holds(c, e, e2, v));
            if ok {
                out.push((v, e));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Weak circuit exchange over every pair of distinct circuits and shared vertex.
pub fn is_matroid_circuit_clutter(c: &Clutter) -> bool {
    let cs = c.circuits();
    for (i, &e1) in cs.iter().enumerate() {
        for &e2 in &cs[i + 1..] {
            for v in e1.intersection(e2).vertices() {
                if !exchange_holds(c, e1, e2, v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Memo of chordality verdicts keyed by canonical form. Safe to share across threads.
#[derive(Default)]
pub struct ChordalityCache {
    map: DashMap<MemoKey, bool>,
}

impl ChordalityCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, key: &MemoKey) -> Option<bool> {
        self.map.get(key).map(|r| *r)
    }

    pub fn insert(&self, key: MemoKey, chordal: bool) {
        self.map.insert(key, chordal);
    }

    /// Snapshot of all entries.
    pub fn entries(&self) -> Vec<(MemoKey, bool)> {
        self.map.iter().map(|r| (r.key().clone(), *r.value())).collect()
    }
}

/// Every minor (including `c`) has a simplicial vertex. Clutters on zero
/// vertices count as chordal.
pub fn is_chordal(c: &Clutter, cache: &ChordalityCache) -> bool {
    if c.n() == 0 || c.is_degenerate() {
        return true;
    }
    let key = MemoKey::of_clutter(c);
    if let Some(v) = cache.get(&key) {
        return v;
    }
    let verdict = (0..c.n()).any(|v| simplicial_unchecked(c, v))
        && c.minors_one_step().iter().all(|(_, m)| is_chordal(m, cache));
    cache.insert(key, verdict);
    verdict
}

/// A sequence of minor steps from `c` down to a minimal non-chordal minor.
pub fn non_chordal_witness(c: &Clutter, cache: &ChordalityCache) -> Option<(Vec<MinorOp>, Clutter)> {
    if is_chordal(c, cache) {
        return None;
    }
    let mut path = Vec::new();
    let mut cur = c.clone();
    'descend: loop {
        for (op, m) in cur.minors_one_step() {
            if !is_chordal(&m, cache) {
                path.push(op);
                cur = m;
                continue 'descend;
            }
        }
        return Some((path, cur));
    }
}

/// Graham-Yu-Özsoyoglu reduction with free vertices picked by `choose` among
/// the current free vertices. True iff the clutter reduces to a degenerate one.
pub fn gyo_reduce_with<F>(c: &Clutter, mut choose: F) -> bool
where
    F: FnMut(&[usize]) -> usize,
{
    let mut cur = c.clone();
    loop {
        if cur.is_degenerate() {
            return true;
        }
        let free: Vec<usize> = (0..cur.n()).filter(|&v| cur.degree(v) == 1).collect();
        if free.is_empty() {
            return false;
        }
        let v = free[choose(&free) % free.len()];
        let e = cur.circuits_containing(v).next().expect("free vertex lies in a circuit");
        let rest = e.without(v);
        let absorbed = cur
            .circuits()
            .iter()
            .any(|&other| other != e && rest.is_proper_subset_of(other));
        cur = if absorbed {
            cur.delete_vertex(v)
        } else {
            cur.contract_vertex(v)
        }
        .expect("vertex in range");
    }
}

/// Every minor has a free vertex, decided by the GYO reduction.
pub fn has_free_vertex_property(c: &Clutter) -> bool {
    gyo_reduce_with(c, |_| 0)
}

/// For every independent set `A` of the graph `g`, `g ∖ N[A]` is empty or has
/// a simplicial vertex.
pub fn graph_neighborhood_simplicial(g: &Clutter) -> Result<bool> {
    if !g.is_uniform(2) {
        return Err(Error::NotUniform(2));
    }
    let n = g.n();
    let mut nbr = vec![BitFace::EMPTY; n];
    for e in g.circuits() {
        let vs: Vec<usize> = e.vertices().collect();
        nbr[vs[0]] = nbr[vs[0]].with(vs[1]);
        nbr[vs[1]] = nbr[vs[1]].with(vs[0]);
    }
    let closed = |a: BitFace| a.vertices().fold(a, |acc, v| acc.union(nbr[v]));
    let has_simplicial = |rest: BitFace| {
        rest.vertices().any(|v| {
            let nv = nbr[v].intersection(rest);
            nv.vertices().all(|x| nv.without(x).is_subset_of(nbr[x]))
        })
    };
    // depth-first over independent sets, each built in increasing vertex order
    let mut stack = vec![(BitFace::EMPTY, 0usize)];
    while let Some((a, next)) = stack.pop() {
        let rest = BitFace::full(n).minus(closed(a));
        if !rest.is_empty() && !has_simplicial(rest) {
            return Ok(false);
        }
        for v in next..n {
            if !a.contains(v) && nbr[v].is_disjoint(a) {
                stack.push((a.with(v), v + 1));
            }
        }
    }
    Ok(true)
}
