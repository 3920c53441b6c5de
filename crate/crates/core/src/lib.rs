//! Gentle algebras as dissected marked surfaces, and exceptional sequences
//! in the homotopy category of projectives.

pub mod algebra;
pub mod braid;
pub mod complex;
pub mod error;
pub mod exceptional;
pub mod fixtures;
pub mod hom;
pub mod iso;
pub mod linalg;
pub mod minimal;
pub mod module;
pub mod quiver;
pub mod ribbon;

pub use algebra::{allowed_paths, Path, PathAlgebra, PathVector};
pub use error::{Error, Result};
pub use linalg::{Field, DEFAULT_PRIME};
pub use quiver::{Arrow, GentleQuiver, GentleReport};
pub use ribbon::{SurfaceInvariants, Special};
