//! Exact evaluation and classification of holant problems with symmetric signatures.
//!
//! Builds with the `parallel` feature (default) run independent terms on rayon;
//! without it, or inside [`exec::sequential`], everything runs on the calling thread.

pub mod classifier;
pub mod error;
pub mod exec;
pub mod grids;
pub mod holant;
pub mod homcount;
pub mod partitions;
pub mod scalar;
pub mod signatures;
pub mod zeta;

pub use classifier::{classify_coloured, classify_factor, classify_uncoloured, Problem, Regime, Verdict};
pub use error::{Error, Result};
pub use grids::{ColouredPattern, Fracture, Graph, SignatureGrid};
pub use holant::{holant_auto, holant_mod_p, holant_route, HolantResult, Mode, Route, Stats};
pub use partitions::{IntPartition, SetPartition};
pub use scalar::{Field, Scalar};
pub use signatures::{Builtin, IndicatorSet, Signature, Tail, TypeTag};
