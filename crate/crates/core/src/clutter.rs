//! Clutters (antichains of circuits) and their minors.

use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{self, BitFace, MAX_VERTICES};

/// An antichain of circuits on the ground set `{0, .., n-1}`.
///
/// Circuits are kept sorted by bit mask, so structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clutter {
    n: usize,
    circuits: Vec<BitFace>,
}

/// A single deletion or contraction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum MinorOp {
    Delete(usize),
    Contract(usize),
}

pub(crate) fn check_ground(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::GroundTooLarge(n))
    } else {
        Ok(())
    }
}

pub(crate) fn check_within(n: usize, f: BitFace) -> Result<()> {
    if f.span() > n {
        Err(Error::FaceOutOfRange { face: f, n })
    } else {
        Ok(())
    }
}

impl Clutter {
    /// Validates that `circuits` is an antichain inside the ground set.
    pub fn new<I: IntoIterator<Item = BitFace>>(n: usize, circuits: I) -> Result<Self> {
        check_ground(n)?;
        let mut circuits: Vec<BitFace> = circuits.into_iter().collect();
        for &c in &circuits {
            check_within(n, c)?;
        }
        circuits.sort_unstable();
        circuits.dedup();
        if let Some((smaller, larger)) = face::antichain_violation(&circuits) {
            return Err(Error::NotAntichain { smaller, larger });
        }
        Ok(Clutter { n, circuits })
    }

    /// Keeps the inclusion-minimal members of `sets`.
    pub fn from_minimal_sets<I: IntoIterator<Item = BitFace>>(n: usize, sets: I) -> Result<Self> {
        check_ground(n)?;
        let sets: Vec<BitFace> = sets.into_iter().collect();
        for &c in &sets {
            check_within(n, c)?;
        }
        Ok(Clutter {
            n,
            circuits: face::minimal_sets(sets),
        })
    }

    /// Convenience constructor from vertex lists; panics on invalid input.
    pub fn from_lists(n: usize, circuits: &[&[usize]]) -> Self {
        Self::new(n, circuits.iter().map(|c| BitFace::from_vertices(c.iter().copied())))
            .expect("invalid clutter literal")
    }

    pub(crate) fn from_sorted_unchecked(n: usize, circuits: Vec<BitFace>) -> Self {
        debug_assert!(circuits.windows(2).all(|w| w[0] < w[1]));
        Clutter { n, circuits }
    }

    /// The clutter with no circuits.
    pub fn no_circuits(n: usize) -> Self {
        Clutter { n, circuits: Vec::new() }
    }

    /// The clutter `{∅}`.
    pub fn empty_circuit(n: usize) -> Self {
        Clutter {
            n,
            circuits: vec![BitFace::EMPTY],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[BitFace] {
        &self.circuits
    }

    pub fn has_no_circuits(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn is_empty_circuit(&self) -> bool {
        self.circuits == [BitFace::EMPTY]
    }

    /// No circuits, or only the empty circuit.
    pub fn is_degenerate(&self) -> bool {
        self.has_no_circuits() || self.is_empty_circuit()
    }

    pub fn ground(&self) -> BitFace {
        BitFace::full(self.n)
    }

    /// Union of all circuits.
    pub fn support(&self) -> BitFace {
        self.circuits.iter().fold(BitFace::EMPTY, |a, &c| a.union(c))
    }

    /// Every vertex lies in some circuit.
    pub fn covers_ground(&self) -> bool {
        self.support() == self.ground()
    }

    pub fn circuits_containing(&self, v: usize) -> impl Iterator<Item = BitFace> + '_ {
        self.circuits.iter().copied().filter(move |c| c.contains(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.circuits_containing(v).count()
    }

    pub fn max_cardinality(&self) -> Option<usize> {
        self.circuits.iter().map(|c| c.len()).max()
    }

    pub fn min_cardinality(&self) -> Option<usize> {
        self.circuits.iter().map(|c| c.len()).min()
    }

    /// Every circuit has exactly `d` vertices (vacuous with no circuits).
    pub fn is_uniform(&self, d: usize) -> bool {
        self.circuits.iter().all(|c| c.len() == d)
    }

    pub fn is_circuit(&self, s: BitFace) -> bool {
        self.circuits.binary_search(&s).is_ok()
    }

    /// Contains no circuit.
    pub fn is_independent(&self, s: BitFace) -> bool {
        !self.circuits.iter().any(|c| c.is_subset_of(s))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `C ∖ v`: drops every circuit through `v`, then removes `v` from the ground set.
    pub fn delete_vertex(&self, v: usize) -> Result<Clutter> {
        self.check_vertex(v)?;
        let mut circuits: Vec<BitFace> = self
            .circuits
            .iter()
            .filter(|c| !c.contains(v))
            .map(|c| c.remove_index(v))
            .collect();
        circuits.sort_unstable();
        Ok(Clutter { n: self.n - 1, circuits })
    }

    /// `C / v`: removes `v` from every circuit and keeps the minimal results.
    pub fn contract_vertex(&self, v: usize) -> Result<Clutter> {
        self.check_vertex(v)?;
        let sets = self.circuits.iter().map(|c| c.without(v).remove_index(v)).collect();
        Ok(Clutter {
            n: self.n - 1,
            circuits: face::minimal_sets(sets),
        })
    }

    pub fn apply(&self, op: MinorOp) -> Result<Clutter> {
        match op {
            MinorOp::Delete(v) => self.delete_vertex(v),
            MinorOp::Contract(v) => self.contract_vertex(v),
        }
    }

    /// The `2n` minors obtained by one deletion or one contraction.
    pub fn minors_one_step(&self) -> Vec<(MinorOp, Clutter)> {
        let mut out = Vec::with_capacity(2 * self.n);
        for v in 0..self.n {
            out.push((MinorOp::Delete(v), self.delete_vertex(v).expect("in range")));
            out.push((MinorOp::Contract(v), self.contract_vertex(v).expect("in range")));
        }
        out
    }

    /// Minimal sets of `C ∪ {s}` for an independent set `s`.
    pub fn augment_with_nonface(&self, s: BitFace) -> Result<Clutter> {
        check_within(self.n, s)?;
        if !self.is_independent(s) {
            return Err(Error::NotIndependent(s));
        }
        let mut sets = self.circuits.clone();
        sets.push(s);
        Ok(Clutter {
            n: self.n,
            circuits: face::minimal_sets(sets),
        })
    }

    /// `I(C)`: the complex of all circuit-free subsets.
    pub fn independence_complex(&self) -> SimplicialComplex {
        let ground = self.ground();
        let facets = face::blocker(&self.circuits)
            .into_iter()
            .map(|t| ground.minus(t))
            .collect();
        SimplicialComplex::from_antichain_unchecked(self.n, facets)
    }

    /// `c_d(C)`: all `d`-subsets of the ground set that are not circuits.
    pub fn d_complement(&self, d: usize) -> Result<Clutter> {
        if d == 0 || d > self.n {
            return Err(Error::InvalidParameters(format!(
                "d_complement needs 1 <= d <= {}, got {d}",
                self.n
            )));
        }
        let circuits = face::k_subsets(self.n, d)
            .into_iter()
            .filter(|s| !self.is_circuit(*s))
            .collect();
        Ok(Clutter { n: self.n, circuits })
    }

    /// Disjoint union; the second clutter's vertices are shifted past this one's.
    pub fn disjoint_union(&self, other: &Clutter) -> Result<Clutter> {
        let n = self.n + other.n;
        check_ground(n)?;
        let mut circuits: Vec<BitFace> = self.circuits.clone();
        circuits.extend(other.circuits.iter().map(|c| c.shifted(self.n)));
        // two empty circuits collapse into one
        Ok(Clutter {
            n,
            circuits: face::minimal_sets(circuits),
        })
    }

    /// Relabels by `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> Clutter {
        debug_assert_eq!(perm.len(), self.n);
        let mut circuits: Vec<BitFace> = self.circuits.iter().map(|c| c.permuted(perm)).collect();
        circuits.sort_unstable();
        Clutter { n: self.n, circuits }
    }

    /// Induced subclutter on `keep`, reindexed densely.
    pub fn induced(&self, keep: BitFace) -> Clutter {
        let gone = self.ground().minus(keep);
        let mut circuits: Vec<BitFace> = self
            .circuits
            .iter()
            .filter(|c| c.is_subset_of(keep))
            .map(|c| c.remove_indices(gone))
            .collect();
        circuits.sort_unstable();
        Clutter {
            n: keep.len(),
            circuits,
        }
    }
}

impl fmt::Debug for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clutter(n={}, {:?})", self.n, self.circuits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(vs: &[usize]) -> BitFace {
        BitFace::from_vertices(vs.iter().copied())
    }

    /// Builds from 1-based vertex lists, as written in the literature.
    fn one_based(n: usize, circuits: &[&[usize]]) -> Clutter {
        Clutter::new(
            n,
            circuits.iter().map(|c| BitFace::from_vertices(c.iter().map(|v| v - 1))),
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_antichain() {
        let err = Clutter::new(3, [bf(&[0, 1]), bf(&[0, 1, 2])]).unwrap_err();
        assert_eq!(
            err,
            Error::NotAntichain {
                smaller: bf(&[0, 1]),
                larger: bf(&[0, 1, 2])
            }
        );
        assert!(matches!(Clutter::new(2, [bf(&[2])]), Err(Error::FaceOutOfRange { .. })));
        assert!(matches!(Clutter::new(33, []), Err(Error::GroundTooLarge(33))));
    }

    #[test]
    fn delete_from_c6() {
        let c6 = one_based(6, &[&[1, 2], &[1, 3], &[2, 4], &[3, 5], &[4, 6], &[5, 6]]);
        let d = c6.delete_vertex(0).unwrap();
        // {24,35,46,56} on {2..6}, reindexed to {1..5}
        assert_eq!(d, one_based(5, &[&[1, 3], &[2, 4], &[3, 5], &[4, 5]]));
    }

    #[test]
    fn degenerate_minors() {
        let e = Clutter::empty_circuit(3);
        assert_eq!(e.delete_vertex(1).unwrap(), Clutter::empty_circuit(2));
        assert_eq!(e.contract_vertex(1).unwrap(), Clutter::empty_circuit(2));
        let none = Clutter::no_circuits(3);
        assert_eq!(none.contract_vertex(0).unwrap(), Clutter::no_circuits(2));
        let single = one_based(3, &[&[1, 2, 3]]);
        assert_eq!(single.delete_vertex(1).unwrap(), Clutter::no_circuits(2));
        assert_eq!(single.contract_vertex(0).unwrap(), one_based(2, &[&[1, 2]]));
        // contracting a singleton circuit leaves the empty circuit
        let s = one_based(2, &[&[1]]);
        assert_eq!(s.contract_vertex(0).unwrap(), Clutter::empty_circuit(1));
    }

    #[test]
    fn contraction_to_c4() {
        let c = one_based(8, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7], &[7, 8, 1]]);
        // contract 8, 6, 4, 2 (highest first so indices stay put)
        let m = [7, 5, 3, 1]
            .iter()
            .fold(c, |acc, &v| acc.contract_vertex(v).unwrap());
        assert_eq!(m, one_based(4, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]));
    }

    #[test]
    fn out_of_range_vertex() {
        let c = one_based(2, &[&[1, 2]]);
        assert!(matches!(c.delete_vertex(2), Err(Error::VertexOutOfRange { vertex: 2, n: 2 })));
        assert!(c.contract_vertex(5).is_err());
    }

    #[test]
    fn one_step_minors_of_edge() {
        let c = one_based(2, &[&[1, 2]]);
        let minors = c.minors_one_step();
        assert_eq!(minors.len(), 4);
        assert_eq!(minors[0].1, Clutter::no_circuits(1));
        assert_eq!(minors[1].1, one_based(1, &[&[1]]));
    }

    #[test]
    fn augment_examples() {
        let c = one_based(3, &[&[1, 2, 3]]);
        assert_eq!(c.augment_with_nonface(bf(&[1, 2])).unwrap(), one_based(3, &[&[2, 3]]));
        let c5 = one_based(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 1]]);
        assert_eq!(
            c5.augment_with_nonface(bf(&[0, 2])).unwrap(),
            one_based(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 1], &[1, 3]])
        );
        assert_eq!(c5.augment_with_nonface(BitFace::EMPTY).unwrap(), Clutter::empty_circuit(5));
        assert_eq!(
            c5.augment_with_nonface(bf(&[0, 1])),
            Err(Error::NotIndependent(bf(&[0, 1])))
        );
    }

    #[test]
    fn d_complement_examples() {
        let c5 = one_based(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 1]]);
        assert_eq!(
            c5.d_complement(2).unwrap(),
            one_based(5, &[&[1, 3], &[1, 4], &[2, 4], &[2, 5], &[3, 5]])
        );
        let z53 = one_based(5, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 1], &[5, 1, 2]]);
        assert_eq!(
            z53.d_complement(3).unwrap(),
            one_based(5, &[&[1, 2, 4], &[1, 3, 4], &[1, 3, 5], &[2, 3, 5], &[2, 4, 5]])
        );
        assert!(c5.d_complement(0).is_err());
        assert!(c5.d_complement(6).is_err());
    }

    #[test]
    fn independence_complex_of_c6() {
        let c6 = one_based(6, &[&[1, 2], &[1, 3], &[2, 4], &[3, 5], &[4, 6], &[5, 6]]);
        let facets: Vec<BitFace> = [&[1, 4, 5][..], &[1, 6], &[2, 3, 6], &[2, 5], &[3, 4]]
            .iter()
            .map(|f| BitFace::from_vertices(f.iter().map(|v| v - 1)))
            .collect();
        let mut expected = facets.clone();
        expected.sort();
        assert_eq!(c6.independence_complex().facets(), expected.as_slice());
        assert!(Clutter::empty_circuit(4).independence_complex().is_void());
    }

    #[test]
    fn induced_subclutter() {
        let c = one_based(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert_eq!(c.induced(bf(&[1, 2, 3])), one_based(3, &[&[1, 2], &[2, 3]]));
    }
}
