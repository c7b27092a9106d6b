use thiserror::Error;

use crate::face::BitFace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of {0} vertices exceeds the supported maximum of 32")]
    GroundTooLarge(usize),

    #[error("vertex {vertex} out of range for a ground set of {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("set {face:?} is not contained in a ground set of {n} vertices")]
    FaceOutOfRange { face: BitFace, n: usize },

    #[error("not an antichain: {smaller:?} is a proper subset of {larger:?}")]
    NotAntichain { smaller: BitFace, larger: BitFace },

    #[error("{0:?} is not a face of the complex")]
    NotAFace(BitFace),

    #[error("the empty face cannot be a shedding face")]
    EmptyFace,

    #[error("{0:?} contains a circuit, so it is not an independent set")]
    NotIndependent(BitFace),

    #[error("clutter is not {0}-uniform")]
    NotUniform(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("exact canonical form is limited to 8 vertices, got {0}")]
    CanonicalTooLarge(usize),

    #[error("parse error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("label {label} out of range: {message}")]
    LabelOutOfRange { label: String, message: String },

    #[error("duplicate label {0}")]
    DuplicateLabel(String),

    #[error("shelling search has {0} facets, above the supported 128")]
    TooManyFacets(usize),

    #[error("audit mismatch: shelling search says {search}, decomposability says {decomposable}")]
    AuditMismatch { search: bool, decomposable: bool },
}

pub type Result<T> = std::result::Result<T, Error>;
