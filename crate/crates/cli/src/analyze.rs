//! The JSON report printed by `analyze` and `family --analyze`.

use serde::Serialize;

use clutter_core::classify::{classify, Caches, ClassificationRecord, ClassifyOptions};
use clutter_core::decomp::{self, SheddingCertificate, ShellabilityOptions};
use clutter_core::homology::{self, HomologyProfile};
use clutter_core::notation::{format_clutter, format_complex, LabeledGround};
use clutter_core::structure::{non_chordal_witness, simplicial_vertices};
use clutter_core::{Clutter, MinorOp, Result};

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub classify: ClassifyOptions,
    pub certificates: bool,
    pub complements: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    /// Circuits in the input labels.
    pub clutter: String,
    pub n: usize,
    /// Verdicts, stated for the canonical relabeling of the input.
    pub record: ClassificationRecord,
    pub simplicial_vertices: Vec<String>,
    pub non_chordal_witness: Option<Witness>,
    pub independence_complex: String,
    pub homology: Homology,
    pub alexander_dual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shelling_order: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shedding_tree: Option<Tree>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub complements: Vec<Complement>,
}

#[derive(Debug, Serialize)]
pub struct Witness {
    pub steps: Vec<String>,
    pub minor: String,
}

#[derive(Debug, Serialize)]
pub struct Homology {
    pub independence_complex: HomologyProfile,
    pub top_skeleton: HomologyProfile,
    pub top_skeleton_signature: String,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Tree {
    Leaf(&'static str),
    Shed {
        face: String,
        link: Box<Tree>,
        deletion: Box<Tree>,
    },
}

#[derive(Debug, Serialize)]
pub struct Complement {
    pub d: usize,
    pub clutter: String,
}

fn tree(cert: &SheddingCertificate, labels: &LabeledGround) -> Tree {
    match cert {
        SheddingCertificate::Degenerate => Tree::Leaf("degenerate"),
        SheddingCertificate::Simplex => Tree::Leaf("simplex"),
        SheddingCertificate::Shed { face, link, deletion } => Tree::Shed {
            face: labels.format_set(*face),
            link: Box::new(tree(link, labels)),
            deletion: Box::new(tree(deletion, labels)),
        },
    }
}

fn witness(c: &Clutter, labels: &LabeledGround, caches: &Caches) -> Option<Witness> {
    let (ops, minor) = non_chordal_witness(c, &caches.chordal)?;
    let mut cur = labels.clone();
    let mut steps = Vec::new();
    for op in ops {
        let (verb, v) = match op {
            MinorOp::Delete(v) => ("delete", v),
            MinorOp::Contract(v) => ("contract", v),
        };
        steps.push(format!("{verb} {}", cur.label(v)));
        cur = cur.without(v);
    }
    Some(Witness {
        steps,
        minor: format_clutter(&minor, &cur),
    })
}

pub fn analyze(c: &Clutter, labels: &LabeledGround, opts: &AnalyzeOptions) -> Result<Report> {
    let caches = Caches::new();
    let record = classify(c, &caches, opts.classify)?;
    let complex = c.independence_complex();
    let coeffs = opts.classify.coefficients;
    let top = complex.skeleton(complex.dim().unwrap_or(-1), true);
    let top_profile = homology::reduced_homology(&top, coeffs);
    let (shelling_order, shedding_tree) = if opts.certificates {
        let rep = decomp::shellability(
            &complex,
            &caches.decomposition,
            ShellabilityOptions {
                audit: true,
                budget: opts.classify.budget,
            },
        )?;
        (
            rep.order.map(|o| o.0.iter().map(|&f| labels.format_set(f)).collect()),
            rep.certificate.map(|cert| tree(&cert, labels)),
        )
    } else {
        (None, None)
    };
    let complements = opts
        .complements
        .iter()
        .map(|&d| {
            Ok(Complement {
                d,
                clutter: format_clutter(&c.d_complement(d)?, labels),
            })
        })
        .collect::<Result<_>>()?;
    Ok(Report {
        clutter: format_clutter(c, labels),
        n: c.n(),
        simplicial_vertices: simplicial_vertices(c).into_iter().map(|v| labels.label(v).to_string()).collect(),
        non_chordal_witness: witness(c, labels, &caches),
        independence_complex: format_complex(&complex, labels),
        homology: Homology {
            independence_complex: homology::reduced_homology(&complex, coeffs),
            top_skeleton_signature: homology::SphereSignature::of_profile(&top_profile).to_string(),
            top_skeleton: top_profile,
        },
        alexander_dual: format_complex(&complex.alexander_dual(), labels),
        shelling_order,
        shedding_tree,
        complements,
        record,
    })
}
