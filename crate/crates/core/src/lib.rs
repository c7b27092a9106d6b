//! Clutters on small ground sets, their independence complexes, and the
//! combinatorial and topological properties that connect them.

pub mod canon;
pub mod classify;
pub mod clutter;
pub mod complex;
pub mod decomp;
pub mod enumerate;
pub mod error;
pub mod face;
pub mod families;
pub mod homology;
pub mod notation;
pub mod structure;

pub use canon::{canonical_form, isomorphic, CanonicalKey, MemoKey};
pub use clutter::{Clutter, MinorOp};
pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use face::BitFace;
pub use structure::{is_chordal, ChordalityCache};
