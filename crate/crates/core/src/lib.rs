//! Combinatorial machinery for braid twists on cyclic branched covers of the
//! disk.
//!
//! The crate models mapping classes by their action on free groupoids
//! generated by finite graphs of arcs: half twists on a marked disk, their
//! lifts to `d`-fold cyclic branched covers, deck transformations, and the
//! covering projection. Around that core it provides ribbon graphs with face
//! traversal for surface invariants, the two-vertex polygon model with an
//! exhaustive classification of simple twists, exact Riemann–Hurwitz
//! bookkeeping, and the framed little 2-disks operad with its action on
//! configurations and on surface invariants.
//!
//! Everything checkable is checked exactly: words compare as reduced letter
//! sequences, invariants as integers. Verification entry points produce
//! [`report::VerificationReport`]s rather than panicking on failures.

pub mod braid;
pub mod covering;
pub mod error;
pub mod groupoid;
pub mod invariants;
pub mod operad;
pub mod polygon;
pub mod report;
pub mod ribbon;

pub use braid::{BraidLetter, BraidWord, TwistAssignment};
pub use covering::{CoverGroupoid, DiskChainGroupoid};
pub use error::{Error, Result};
pub use groupoid::{
    EdgeId, FreeGroupoid, GroupoidFunctor, GroupoidMorphism, Letter, ObjectId, Orientation,
    PathWord, Relabeling, Support,
};
pub use invariants::{CompositeEmbedding, CompositeInvariants};
pub use operad::{AffineMap, Configuration, FramedDisksElement, SurfaceOperand};
pub use polygon::{PolygonSurface, ShiftTwist, TwistDirection};
pub use report::{Check, CheckStatus, Summary, VerificationReport};
pub use ribbon::{RibbonGraph, SurfaceInvariants};
