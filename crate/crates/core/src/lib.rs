//! Exact computation of GIT fans, GIT regions, reflection groups and crepant-resolution
//! counts for Nakajima quiver varieties from root combinatorics, with support-based GIT
//! fans of torus actions on affine toric varieties and hypertoric chamber data as
//! independent cross-checks.
//!
//! All arithmetic is exact; there are no floating-point values anywhere in the crate.

pub mod exactgeom;
pub mod hypertoric;
pub mod quiverfan;
pub mod roots;
pub mod sigma;
pub mod toric;
