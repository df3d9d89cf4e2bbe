//! Exact integer and rational polyhedral geometry.

pub mod arrangement;
pub mod cone;
pub mod lp;
pub mod matrix;
pub mod num;
pub mod smith;
pub mod subspace;

pub use arrangement::{enumerate_chambers, Arrangement, ArrangementError, Chamber};
pub use cone::{Cone, ConeError, Face};
pub use matrix::IntMatrix;
pub use num::{Int, Rat};
pub use subspace::Subspace;
