//! Per-clutter classification: chordality status, shellability and
//! obstruction class of the independence complex, and summary counts.

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canon::{CanonicalKey, MemoKey};
use crate::clutter::Clutter;
use crate::complex::SimplicialComplex;
use crate::decomp::{self, DecompositionCache, ShellabilityOptions};
use crate::error::Result;
use crate::families::make_cycle_graph;
use crate::homology::{self, Coefficients, SphereSignature};
use crate::notation::{format_clutter, format_complex, LabeledGround};
use crate::structure::{is_chordal, simplicial_vertices, ChordalityCache};

/// Membership in the three obstruction classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ObstructionClass {
    pub d: bool,
    pub c: bool,
    pub dc: bool,
}

impl ObstructionClass {
    pub fn is_empty(&self) -> bool {
        !(self.d || self.c || self.dc)
    }

    pub fn names(&self) -> Vec<&'static str> {
        [(self.d, "d"), (self.c, "c"), (self.dc, "dc")]
            .into_iter()
            .filter(|(on, _)| *on)
            .map(|(_, name)| name)
            .collect()
    }
}

impl Serialize for ObstructionClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.names().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ObstructionClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        let mut out = ObstructionClass::default();
        for n in names {
            match n.as_str() {
                "d" => out.d = true,
                "c" => out.c = true,
                "dc" => out.dc = true,
                other => {
                    return Err(serde::de::Error::custom(format!("unknown obstruction class {other:?}")))
                }
            }
        }
        Ok(out)
    }
}

/// Shared memo tables for a classification run.
#[derive(Default)]
pub struct Caches {
    pub chordal: ChordalityCache,
    pub decomposition: DecompositionCache,
    shellable: DashMap<MemoKey, bool>,
    hereditary_d: DashMap<MemoKey, bool>,
    hereditary_dc: DashMap<MemoKey, bool>,
}

impl Caches {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shellability of `I(c)` without a budget.
    pub fn shellable(&self, c: &Clutter) -> bool {
        let key = MemoKey::of_clutter(c);
        if let Some(v) = self.shellable.get(&key) {
            return *v;
        }
        let v = decomp::is_shellable(&c.independence_complex(), &self.decomposition);
        self.shellable.insert(key, v);
        v
    }

    /// `I(c)` and all its induced subcomplexes are shellable.
    fn hereditary_d(&self, c: &Clutter) -> bool {
        let key = MemoKey::of_clutter(c);
        if let Some(v) = self.hereditary_d.get(&key) {
            return *v;
        }
        let v = self.shellable(c)
            && (0..c.n()).all(|v| self.hereditary_d(&c.delete_vertex(v).expect("in range")));
        self.hereditary_d.insert(key, v);
        v
    }

    /// Every complex reached from `I(c)` by deletions and links is shellable.
    fn hereditary_dc(&self, c: &Clutter) -> bool {
        let key = MemoKey::of_clutter(c);
        if let Some(v) = self.hereditary_dc.get(&key) {
            return *v;
        }
        let v = self.shellable(c) && c.minors_one_step().iter().all(|(_, m)| self.hereditary_dc(m));
        self.hereditary_dc.insert(key, v);
        v
    }
}

/// Obstruction classes of `I(c)`, with the whole ground set of `c` as vertex
/// set: deleting a vertex of `I(c)` is `c ∖ v`, and its link is `I(c / v)`.
pub fn clutter_obstruction_class(c: &Clutter, caches: &Caches) -> ObstructionClass {
    if caches.shellable(c) {
        return ObstructionClass::default();
    }
    let n = c.n();
    let d = (0..n).all(|v| caches.hereditary_d(&c.delete_vertex(v).expect("in range")));
    let cc = (0..n).all(|v| caches.shellable(&c.contract_vertex(v).expect("in range")));
    let dc = d && cc && c.minors_one_step().iter().all(|(_, m)| caches.hereditary_dc(m));
    ObstructionClass { d, c: cc, dc }
}

/// Obstruction classes of a complex over its ground set.
pub fn obstruction_class(d: &SimplicialComplex, caches: &Caches) -> ObstructionClass {
    clutter_obstruction_class(&d.nonface_clutter(), caches)
}

/// Not chordal, but every one-step minor is.
pub fn is_forbidden_minor(c: &Clutter, cache: &ChordalityCache) -> bool {
    !is_chordal(c, cache) && c.minors_one_step().iter().all(|(_, m)| is_chordal(m, cache))
}

/// Not chordal, but every single-vertex deletion is.
pub fn is_forbidden_subclutter(c: &Clutter, cache: &ChordalityCache) -> bool {
    !is_chordal(c, cache) && (0..c.n()).all(|v| is_chordal(&c.delete_vertex(v).expect("in range"), cache))
}

/// Not chordal, every non-chordal proper minor is isomorphic to the 5-cycle,
/// and there is at least one such minor.
pub fn has_only_c5_nonchordal_minors(c: &Clutter, cache: &ChordalityCache) -> bool {
    if is_chordal(c, cache) {
        return false;
    }
    let c5 = CanonicalKey::of(&make_cycle_graph(5).expect("valid")).expect("small");
    let mut saw_c5 = false;
    for (_, m) in c.minors_one_step() {
        if is_chordal(&m, cache) {
            continue;
        }
        match CanonicalKey::of(&m) {
            Ok(k) if k == c5 => saw_c5 = true,
            _ => return false,
        }
    }
    saw_c5
}

/// Would be a forbidden minor to chordality if the 5-cycle were allowed: no
/// simplicial vertex, and every non-chordal proper minor is isomorphic to the
/// 5-cycle (with at least one such minor).
pub fn is_c5_only(c: &Clutter, cache: &ChordalityCache) -> bool {
    simplicial_vertices(c).is_empty() && has_only_c5_nonchordal_minors(c, cache)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassifyOptions {
    pub coefficients: Coefficients,
    pub audit: bool,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    /// Canonical key in hex.
    pub key: String,
    pub n: usize,
    /// Circuits of the canonical representative, compact or extended notation.
    pub circuits: String,
    /// Facets of the independence complex.
    pub facets: String,
    pub covers_ground: bool,
    pub chordal: bool,
    pub forbidden_minor_to_chordality: bool,
    pub forbidden_subclutter: bool,
    pub c5_only_nonchordal_minor: bool,
    /// Looser variant that allows a simplicial vertex.
    pub only_c5_nonchordal_minors: bool,
    /// `None` when the search budget ran out.
    pub shellable: Option<bool>,
    pub sequentially_cm: bool,
    pub obstruction_class: ObstructionClass,
    pub top_skeleton_profile: SphereSignature,
    pub h_negative: bool,
}

impl ClassificationRecord {
    pub fn canonical_key(&self) -> CanonicalKey {
        let bytes: Vec<u8> = (0..self.key.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&self.key[i..i + 2], 16).expect("hex key"))
            .collect();
        CanonicalKey::from_bytes(&bytes).expect("valid key")
    }
}

/// Classifies one clutter (relabeled to its canonical representative when it
/// is small enough to have one).
pub fn classify(c: &Clutter, caches: &Caches, opts: ClassifyOptions) -> Result<ClassificationRecord> {
    let (key, rep) = match CanonicalKey::of(c) {
        Ok(k) => {
            let rep = k.clutter();
            (k.to_hex(), rep)
        }
        Err(_) => (String::new(), c.clone()),
    };
    let c = &rep;
    let labels = LabeledGround::numbered(c.n());
    let complex = c.independence_complex();
    let chordal = is_chordal(c, &caches.chordal);
    let report = decomp::shellability(
        &complex,
        &caches.decomposition,
        ShellabilityOptions {
            audit: opts.audit,
            budget: opts.budget,
        },
    )?;
    if let Some(v) = report.shellable {
        caches.shellable.insert(MemoKey::of_clutter(c), v);
    }
    let obstruction_class = match report.shellable {
        Some(false) => clutter_obstruction_class(c, caches),
        _ => ObstructionClass::default(),
    };
    Ok(ClassificationRecord {
        key,
        n: c.n(),
        circuits: format_clutter(c, &labels),
        facets: format_complex(&complex, &labels),
        covers_ground: c.covers_ground(),
        chordal,
        forbidden_minor_to_chordality: !chordal && is_forbidden_minor(c, &caches.chordal),
        forbidden_subclutter: !chordal && is_forbidden_subclutter(c, &caches.chordal),
        c5_only_nonchordal_minor: !chordal && is_c5_only(c, &caches.chordal),
        only_c5_nonchordal_minors: !chordal && has_only_c5_nonchordal_minors(c, &caches.chordal),
        shellable: report.shellable,
        sequentially_cm: homology::is_sequentially_cm(&complex, opts.coefficients),
        obstruction_class,
        top_skeleton_profile: homology::top_skeleton_signature(&complex, opts.coefficients),
        h_negative: report.h_negative,
    })
}

/// Classifies every clutter in `cs` in parallel, preserving order.
pub fn classify_all(cs: &[Clutter], caches: &Caches, opts: ClassifyOptions) -> Result<Vec<ClassificationRecord>> {
    cs.par_iter().map(|c| classify(c, caches, opts)).collect()
}

/// Which clutters a summary counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Universe {
    /// Every isomorphism class, including degenerate ones and those with
    /// vertices in no circuit.
    All,
    /// Only clutters whose circuits cover the ground set.
    Covering,
}

impl Universe {
    pub fn name(self) -> &'static str {
        match self {
            Universe::All => "all",
            Universe::Covering => "covering",
        }
    }

    pub fn admits(self, r: &ClassificationRecord) -> bool {
        match self {
            Universe::All => true,
            Universe::Covering => r.covers_ground,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub chordal: usize,
    pub forbidden_minors: usize,
    pub forbidden_minors_shellable: usize,
    pub forbidden_minors_non_shellable: usize,
    pub forbidden_subclutters: usize,
    pub c5_only: usize,
    pub c5_only_shellable: usize,
    pub only_c5_nonchordal_minors: usize,
    pub shellable: usize,
    pub sequentially_cm: usize,
    pub d_obstructions: usize,
    pub c_obstructions: usize,
    pub dc_obstructions: usize,
    pub undecided: usize,
}

impl Summary {
    pub const FIELDS: [&'static str; 15] = [
        "total",
        "chordal",
        "forbidden_minors",
        "forbidden_minors_shellable",
        "forbidden_minors_non_shellable",
        "forbidden_subclutters",
        "c5_only",
        "c5_only_shellable",
        "only_c5_nonchordal_minors",
        "shellable",
        "sequentially_cm",
        "d_obstructions",
        "c_obstructions",
        "dc_obstructions",
        "undecided",
    ];

    pub fn of(records: &[ClassificationRecord], universe: Universe) -> Summary {
        let mut s = Summary::default();
        for r in records.iter().filter(|r| universe.admits(r)) {
            let sh = r.shellable == Some(true);
            s.total += 1;
            s.chordal += r.chordal as usize;
            if r.forbidden_minor_to_chordality {
                s.forbidden_minors += 1;
                s.forbidden_minors_shellable += sh as usize;
                s.forbidden_minors_non_shellable += (r.shellable == Some(false)) as usize;
            }
            s.forbidden_subclutters += r.forbidden_subclutter as usize;
            if r.c5_only_nonchordal_minor {
                s.c5_only += 1;
                s.c5_only_shellable += sh as usize;
            }
            s.only_c5_nonchordal_minors += r.only_c5_nonchordal_minors as usize;
            s.shellable += sh as usize;
            s.sequentially_cm += r.sequentially_cm as usize;
            s.d_obstructions += r.obstruction_class.d as usize;
            s.c_obstructions += r.obstruction_class.c as usize;
            s.dc_obstructions += r.obstruction_class.dc as usize;
            s.undecided += r.shellable.is_none() as usize;
        }
        s
    }

    pub fn values(&self) -> [usize; 15] {
        [
            self.total,
            self.chordal,
            self.forbidden_minors,
            self.forbidden_minors_shellable,
            self.forbidden_minors_non_shellable,
            self.forbidden_subclutters,
            self.c5_only,
            self.c5_only_shellable,
            self.only_c5_nonchordal_minors,
            self.shellable,
            self.sequentially_cm,
            self.d_obstructions,
            self.c_obstructions,
            self.dc_obstructions,
            self.undecided,
        ]
    }
}
