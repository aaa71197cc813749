//! Exact certification of slope-(semi)stability for vector bundles presented
//! as kernels or cokernels of maps between sums of line bundles, on
//! projective spaces and on generic smooth hypersurfaces.
//!
//! All computations are integer bookkeeping on twists: no maps, matrices or
//! Gröbner bases are ever materialized. Genericity of the maps and of the
//! hypersurface are hypotheses, recorded alongside every verdict.

pub mod chern;
pub mod cohomology;
mod combinatorics;
pub mod criteria;
mod error;
pub mod pipeline;
pub mod twist;

pub use combinatorics::binomial;
pub use error::{Error, Result};
pub use twist::{MonadPresentation, Orientation, TwistSum};
