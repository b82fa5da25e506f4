//! Exact computations with finitely generated abelian groups, extensions,
//! Moore diagrams and extended eta-diagrams, the category `J` and the two
//! dualities on eta-diagrams.

pub mod brute;
pub mod cj;
pub mod diagrams;
pub mod duality;
pub mod enumerate;
pub mod error;
pub mod ext;
pub mod fgab;
pub mod int;
pub mod json;
pub mod lin;
pub mod matrix;
pub mod snf;
pub mod verify;

pub use error::{Error, Result};
pub use fgab::{FgGroup, GroupElement, HomSpace, Homomorphism};
pub use int::Int;
pub use matrix::Matrix;
