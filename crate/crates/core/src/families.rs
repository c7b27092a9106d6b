//! Generators for named clutter families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::face::{k_subsets, BitFace, MAX_VERTICES};

/// Refuse to materialize more circuits than this.
const MAX_GENERATED_CIRCUITS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    CycleGraph,
    CyclicUniform,
    DeletedCrosspolytope,
    TwoFacetComplement,
    CompleteUniform,
    GraphicMatroid,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::CycleGraph,
        Family::CyclicUniform,
        Family::DeletedCrosspolytope,
        Family::TwoFacetComplement,
        Family::CompleteUniform,
        Family::GraphicMatroid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CycleGraph => "cycle-graph",
            Family::CyclicUniform => "cyclic-uniform",
            Family::DeletedCrosspolytope => "deleted-crosspolytope",
            Family::TwoFacetComplement => "two-facet-complement",
            Family::CompleteUniform => "complete-uniform",
            Family::GraphicMatroid => "graphic-matroid",
        }
    }

    /// Parameter shape, for usage messages.
    pub fn usage(self) -> &'static str {
        match self {
            Family::CycleGraph => "N",
            Family::CyclicUniform => "N K",
            Family::DeletedCrosspolytope => "N",
            Family::TwoFacetComplement => "N",
            Family::CompleteUniform => "N D",
            Family::GraphicMatroid => "U1 V1 U2 V2 ... (edge endpoints)",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, params: Vec<usize>) -> Self {
        FamilySpec { family, params }
    }

    pub fn build(&self) -> Result<Clutter> {
        let p = &self.params;
        let arity = |k: usize| {
            if p.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!(
                    "{} takes parameters {}, got {} values",
                    self.family,
                    self.family.usage(),
                    p.len()
                )))
            }
        };
        match self.family {
            Family::CycleGraph => {
                arity(1)?;
                make_cycle_graph(p[0])
            }
            Family::CyclicUniform => {
                arity(2)?;
                make_cyclic_uniform(p[0], p[1])
            }
            Family::DeletedCrosspolytope => {
                arity(1)?;
                make_deleted_crosspolytope(p[0])
            }
            Family::TwoFacetComplement => {
                arity(1)?;
                make_two_facet_complement(p[0])
            }
            Family::CompleteUniform => {
                arity(2)?;
                make_complete_uniform(p[0], p[1])
            }
            Family::GraphicMatroid => {
                if p.is_empty() || !p.len().is_multiple_of(2) {
                    return Err(Error::InvalidParameters(
                        "graphic-matroid takes an even, nonempty list of edge endpoints".into(),
                    ));
                }
                let edges: Vec<(usize, usize)> = p.chunks(2).map(|e| (e[0], e[1])).collect();
                make_graphic_matroid_circuits(&edges)
            }
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::GroundTooLarge(n))
    } else {
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |r, i| r * (n - i) as u128 / (i + 1) as u128)
}

/// `C_n`, the cycle graph on `n ≥ 3` vertices.
pub fn make_cycle_graph(n: usize) -> Result<Clutter> {
    if n < 3 {
        return Err(invalid(format!("cycle graph needs at least 3 vertices, got {n}")));
    }
    make_cyclic_uniform(n, 2)
}

/// `Z_n^k`: every `k` cyclically consecutive vertices of `Z_n`.
pub fn make_cyclic_uniform(n: usize, k: usize) -> Result<Clutter> {
    if k == 0 || k > n {
        return Err(invalid(format!("cyclic-uniform needs 1 ≤ k ≤ n, got n={n}, k={k}")));
    }
    check_size(n)?;
    let circuits = (0..n).map(|i| BitFace::from_vertices((i..i + k).map(|v| v % n)));
    let mut list: Vec<BitFace> = circuits.collect();
    list.sort_unstable();
    list.dedup();
    Clutter::new(n, list)
}

/// `X_n` on `2n` vertices: the odd vertices, the even vertices, and each
/// pair `{i, i+1}` with `i` odd (1-based labels).
pub fn make_deleted_crosspolytope(n: usize) -> Result<Clutter> {
    if n == 0 {
        return Err(invalid("deleted-crosspolytope needs n ≥ 1".into()));
    }
    check_size(2 * n)?;
    let odds = BitFace::from_vertices((0..n).map(|i| 2 * i));
    let evens = BitFace::from_vertices((0..n).map(|i| 2 * i + 1));
    let pairs = (0..n).map(|i| BitFace::from_vertices([2 * i, 2 * i + 1]));
    Clutter::from_minimal_sets(2 * n, [odds, evens].into_iter().chain(pairs))
}

/// `Y_n` on `2n` vertices: all `n`-sets except `{1..n}` and `{n+1..2n}`.
pub fn make_two_facet_complement(n: usize) -> Result<Clutter> {
    if n == 0 {
        return Err(invalid("two-facet-complement needs n ≥ 1".into()));
    }
    check_size(2 * n)?;
    if binomial(2 * n, n) > MAX_GENERATED_CIRCUITS as u128 {
        return Err(invalid(format!("two-facet-complement {n} has too many circuits")));
    }
    let low = BitFace::full(n);
    let high = BitFace::full(2 * n).minus(low);
    let circuits = k_subsets(2 * n, n).into_iter().filter(|&s| s != low && s != high);
    Clutter::new(2 * n, circuits)
}

/// `K_n^d`: every `d`-subset of an `n`-set.
pub fn make_complete_uniform(n: usize, d: usize) -> Result<Clutter> {
    if d == 0 || d > n {
        return Err(invalid(format!("complete-uniform needs 1 ≤ d ≤ n, got n={n}, d={d}")));
    }
    check_size(n)?;
    if binomial(n, d) > MAX_GENERATED_CIRCUITS as u128 {
        return Err(invalid(format!("complete-uniform {n} {d} has too many circuits")));
    }
    Clutter::new(n, k_subsets(n, d))
}

/// Cycle matroid of a simple graph: the ground set is the edge list (in the
/// given order) and circuits are edge sets of simple cycles.
pub fn make_graphic_matroid_circuits(edges: &[(usize, usize)]) -> Result<Clutter> {
    check_size(edges.len())?;
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in edges {
        if u == v {
            return Err(invalid(format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(invalid(format!("repeated edge {u}-{v}")));
        }
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let idx = |x: usize| verts.binary_search(&x).expect("endpoint listed");
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); verts.len()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[idx(u)].push((idx(v), e));
        adj[idx(v)].push((idx(u), e));
    }
    let mut cycles = Vec::new();
    for start in 0..verts.len() {
        let mut on_path = vec![false; verts.len()];
        on_path[start] = true;
        cycle_dfs(&adj, start, start, BitFace::EMPTY, 0, &mut on_path, &mut cycles);
    }
    cycles.sort_unstable();
    cycles.dedup();
    Clutter::new(edges.len(), cycles)
}

/// Extends a path from `start` (its least vertex) through larger vertices only.
fn cycle_dfs(
    adj: &[Vec<(usize, usize)>],
    start: usize,
    at: usize,
    used: BitFace,
    len: usize,
    on_path: &mut [bool],
    out: &mut Vec<BitFace>,
) {
    for &(next, e) in &adj[at] {
        if used.contains(e) {
            continue;
        }
        if next == start {
            if len >= 2 {
                out.push(used.with(e));
            }
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            cycle_dfs(adj, start, next, used.with(e), len + 1, on_path, out);
            on_path[next] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;

    fn one_based(n: usize, circuits: &[&[usize]]) -> Clutter {
        Clutter::new(
            n,
            circuits.iter().map(|c| BitFace::from_vertices(c.iter().map(|v| v - 1))),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_uniform_examples() {
        assert_eq!(
            make_cyclic_uniform(5, 2).unwrap(),
            one_based(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 1]])
        );
        assert_eq!(
            make_cyclic_uniform(5, 3).unwrap(),
            one_based(5, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 1], &[5, 1, 2]])
        );
        assert_eq!(make_cyclic_uniform(4, 4).unwrap(), one_based(4, &[&[1, 2, 3, 4]]));
        assert!(make_cyclic_uniform(3, 4).is_err());
        assert!(make_cyclic_uniform(3, 0).is_err());
    }

    #[test]
    fn crosspolytope_examples() {
        assert_eq!(
            make_deleted_crosspolytope(2).unwrap(),
            one_based(4, &[&[1, 3], &[2, 4], &[1, 2], &[3, 4]])
        );
        assert_eq!(
            make_deleted_crosspolytope(3).unwrap(),
            one_based(6, &[&[1, 3, 5], &[2, 4, 6], &[1, 2], &[3, 4], &[5, 6]])
        );
    }

    #[test]
    fn two_facet_complement_examples() {
        assert_eq!(
            make_two_facet_complement(2).unwrap(),
            one_based(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
        );
        let y3 = make_two_facet_complement(3).unwrap();
        assert_eq!(y3.circuits().len(), 18);
        let facets = y3.independence_complex();
        assert!(facets.is_facet(BitFace::from_vertices([0, 1, 2])));
        assert!(facets.is_facet(BitFace::from_vertices([3, 4, 5])));
        // Y_2 is the 4-cycle
        assert!(isomorphic(&make_two_facet_complement(2).unwrap(), &make_cycle_graph(4).unwrap()).unwrap());
    }

    #[test]
    fn complete_uniform_minors() {
        for n in 2..7 {
            for d in 1..=n {
                let k = make_complete_uniform(n, d).unwrap();
                assert!(isomorphic(&k.delete_vertex(0).unwrap(), &if d < n {
                    make_complete_uniform(n - 1, d).unwrap()
                } else {
                    Clutter::no_circuits(n - 1)
                })
                .unwrap());
                let contracted = k.contract_vertex(0).unwrap();
                let expected = if d == 1 {
                    Clutter::empty_circuit(n - 1)
                } else {
                    make_complete_uniform(n - 1, d - 1).unwrap()
                };
                assert!(isomorphic(&contracted, &expected).unwrap());
            }
        }
    }

    #[test]
    fn graphic_matroids() {
        let k4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let m = make_graphic_matroid_circuits(&k4).unwrap();
        assert_eq!(m.circuits().len(), 7);
        assert_eq!(m.circuits().iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(m.circuits().iter().filter(|c| c.len() == 4).count(), 3);
        let tree = make_graphic_matroid_circuits(&[(1, 2), (2, 3), (2, 4)]).unwrap();
        assert!(tree.has_no_circuits());
        let tri = make_graphic_matroid_circuits(&[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(tri.circuits(), &[BitFace::full(3)]);
        assert!(make_graphic_matroid_circuits(&[(1, 1)]).is_err());
        assert!(make_graphic_matroid_circuits(&[(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn spec_parsing() {
        let spec = FamilySpec::new("cyclic-uniform".parse().unwrap(), vec![5, 3]);
        assert_eq!(spec.build().unwrap().circuits().len(), 5);
        assert!(FamilySpec::new(Family::CyclicUniform, vec![5]).build().is_err());
        assert!("nope".parse::<Family>().is_err());
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
