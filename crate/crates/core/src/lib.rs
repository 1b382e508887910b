//! Degree-constrained factors, `[a,b]`-covered graphs and spectral radii of
//! small simple graphs, together with an exhaustive verification harness for
//! extremal statements about them.
//!
//! Every decision procedure comes in two independent flavours so that each
//! can serve as an oracle for the other:
//!
//! * [`factor::has_gf_factor`] scans the deficiency condition over all
//!   disjoint vertex-set pairs, [`factor::find_factor`] searches for an
//!   explicit factor.
//! * [`covered::is_ab_covered_structural`] scans the covered criterion,
//!   [`covered::is_ab_covered_definitional`] checks every edge directly.
//! * [`spectral::spectral_radius`] runs power iteration,
//!   [`spectral::quotient_spectral_radius`] isolates roots of the quotient
//!   characteristic polynomial.

pub mod covered;
pub mod enumerate;
mod error;
pub mod factor;
pub mod graph;
pub mod graph6;
pub mod harness;
mod scan;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
