//! Simplicial complexes stored by their facets.
//!
//! The facet list `[]` is the void complex (no faces at all) and `[∅]` is the
//! empty complex whose only face is the empty set. The two are distinct.

use std::collections::BTreeSet;
use std::fmt;

use crate::clutter::{check_ground, check_within, Clutter};
use crate::error::{Error, Result};
use crate::face::{self, BitFace};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<BitFace>,
}

impl SimplicialComplex {
    /// Validates that `facets` is an antichain inside the ground set.
    pub fn new<I: IntoIterator<Item = BitFace>>(n: usize, facets: I) -> Result<Self> {
        check_ground(n)?;
        let mut facets: Vec<BitFace> = facets.into_iter().collect();
        for &f in &facets {
            check_within(n, f)?;
        }
        facets.sort_unstable();
        facets.dedup();
        if let Some((smaller, larger)) = face::antichain_violation(&facets) {
            return Err(Error::NotAntichain { smaller, larger });
        }
        Ok(SimplicialComplex { n, facets })
    }

    /// The complex generated by `faces` (non-maximal members are dropped).
    pub fn generated_by<I: IntoIterator<Item = BitFace>>(n: usize, faces: I) -> Result<Self> {
        check_ground(n)?;
        let faces: Vec<BitFace> = faces.into_iter().collect();
        for &f in &faces {
            check_within(n, f)?;
        }
        Ok(SimplicialComplex {
            n,
            facets: face::maximal_sets(faces),
        })
    }

    /// Convenience constructor from vertex lists; panics on invalid input.
    pub fn from_lists(n: usize, facets: &[&[usize]]) -> Self {
        Self::new(n, facets.iter().map(|f| BitFace::from_vertices(f.iter().copied())))
            .expect("invalid complex literal")
    }

    pub(crate) fn from_antichain_unchecked(n: usize, mut facets: Vec<BitFace>) -> Self {
        facets.sort_unstable();
        SimplicialComplex { n, facets }
    }

    /// The void complex `{}`.
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The empty complex `{∅}`.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![BitFace::EMPTY],
        }
    }

    /// The full simplex on the ground set.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![BitFace::full(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[BitFace] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets == [BitFace::EMPTY]
    }

    pub fn is_degenerate(&self) -> bool {
        self.is_void() || self.is_empty_complex()
    }

    /// A single facet (this includes `{∅}`).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.len() as i32 - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn is_face(&self, s: BitFace) -> bool {
        self.facets.iter().any(|f| s.is_subset_of(*f))
    }

    pub fn is_facet(&self, s: BitFace) -> bool {
        self.facets.binary_search(&s).is_ok()
    }

    /// Union of all faces.
    pub fn vertex_support(&self) -> BitFace {
        self.facets.iter().fold(BitFace::EMPTY, |a, &f| a.union(f))
    }

    /// Every face, sorted by bit mask.
    pub fn faces(&self) -> Vec<BitFace> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                all.insert(s);
            }
        }
        all.into_iter().collect()
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// `C(Δ)`: the minimal non-faces.
    pub fn nonface_clutter(&self) -> Clutter {
        let ground = BitFace::full(self.n);
        let complements: Vec<BitFace> = self.facets.iter().map(|f| ground.minus(*f)).collect();
        Clutter::from_sorted_unchecked(self.n, face::blocker(&complements))
    }

    /// Faces `τ` disjoint from `s` with `τ ∪ s` a face, on the ground set `V ∖ s`
    /// reindexed densely.
    pub fn link(&self, s: BitFace) -> Result<SimplicialComplex> {
        check_within(self.n, s)?;
        if !self.is_face(s) {
            return Err(Error::NotAFace(s));
        }
        let facets = self
            .facets
            .iter()
            .filter(|f| s.is_subset_of(**f))
            .map(|f| f.minus(s).remove_indices(s))
            .collect();
        Ok(SimplicialComplex::from_antichain_unchecked(self.n - s.len(), facets))
    }

    /// Faces not containing `s`, on the same ground set. Deleting `∅` gives the void complex.
    pub fn delete_face(&self, s: BitFace) -> SimplicialComplex {
        let mut faces = Vec::with_capacity(self.facets.len() + s.len());
        let mut changed = false;
        for &f in &self.facets {
            if s.is_subset_of(f) {
                changed = true;
                faces.extend(s.vertices().map(|x| f.without(x)));
            } else {
                faces.push(f);
            }
        }
        if !changed {
            return self.clone();
        }
        SimplicialComplex {
            n: self.n,
            facets: face::maximal_sets(faces),
        }
    }

    /// `Δ ∖ v` on the ground set `V ∖ v`, reindexed.
    pub fn delete_vertex(&self, v: usize) -> Result<SimplicialComplex> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let del = self.delete_face(BitFace::singleton(v));
        let facets = del.facets.into_iter().map(|f| f.remove_index(v)).collect();
        Ok(SimplicialComplex::from_antichain_unchecked(self.n - 1, facets))
    }

    /// `Δ₁ * Δ₂`, with the second complex's vertices shifted past the first's.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = self.n + other.n;
        check_ground(n)?;
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for &a in &self.facets {
            for &b in &other.facets {
                facets.push(a.union(b.shifted(self.n)));
            }
        }
        Ok(SimplicialComplex::from_antichain_unchecked(n, facets))
    }

    /// With `pure`, the complex generated by the faces of dimension `s`;
    /// otherwise all faces of dimension at most `s`.
    pub fn skeleton(&self, s: i32, pure: bool) -> SimplicialComplex {
        assert!(s >= -1, "skeleton dimension must be at least -1");
        let size = (s + 1) as usize;
        let mut faces = Vec::new();
        for &f in &self.facets {
            if f.len() < size {
                if !pure {
                    faces.push(f);
                }
            } else if f.len() == size {
                faces.push(f);
            } else {
                faces.extend(f.subsets().filter(|x| x.len() == size));
            }
        }
        SimplicialComplex {
            n: self.n,
            facets: face::maximal_sets(faces),
        }
    }

    /// `Δ∨`: facets are the complements of the minimal non-faces.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let ground = BitFace::full(self.n);
        let facets = self
            .nonface_clutter()
            .circuits()
            .iter()
            .map(|e| ground.minus(*e))
            .collect();
        SimplicialComplex::from_antichain_unchecked(self.n, facets)
    }

    /// Relabels by `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> SimplicialComplex {
        let facets = self.facets.iter().map(|f| f.permuted(perm)).collect();
        SimplicialComplex::from_antichain_unchecked(self.n, facets)
    }

    /// Drops vertices lying in no face and reindexes; returns the kept-vertex map.
    pub fn compact(&self) -> (SimplicialComplex, Vec<usize>) {
        let support = self.vertex_support();
        let gone = BitFace::full(self.n).minus(support);
        let facets = self.facets.iter().map(|f| f.remove_indices(gone)).collect();
        (
            SimplicialComplex::from_antichain_unchecked(support.len(), facets),
            support.vertices().collect(),
        )
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, {:?})", self.n, self.facets)
    }
}
