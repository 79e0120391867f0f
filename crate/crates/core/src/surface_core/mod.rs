//! Exact algebra on the model genus-`g` surface.

pub mod homology;
pub mod matrix;
pub mod tietze;
pub mod word;

pub use homology::{algebraic_intersection, lagrangian_verdict, HomologyClass};
pub use matrix::{AbelianGroup, IntegerMatrix, SmithForm};
pub use tietze::{tietze_simplify, GroupPresentation, TietzeConfig, TietzeOutcome, TietzeStep};
pub use word::{abelianize, Letter, SurfaceWord, Word};
