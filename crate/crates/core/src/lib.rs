//! Chekanov differential graded algebras of Legendrian knots over GF(2).
//!
//! The crate covers exact arithmetic in free graded algebras
//! ([`algebra`]), DGA structure with Legendrian mirrors and tame
//! automorphisms ([`dga`]), quotients by two-sided ideals through word
//! rewriting ([`rewrite`]), and the graded unit-product obstruction that
//! separates a knot from its mirror ([`obstruction`]). The [`cli`] module
//! holds the file formats and the command-line front end; [`shipped`] holds
//! the bundled 6_2 example.

pub mod algebra;
pub mod cli;
pub mod dga;
pub mod obstruction;
pub mod rewrite;
pub mod shipped;

pub use algebra::{FreeGradedAlgebra, GeneratorSymbol, Homogeneity, Polynomial, Word};
pub use dga::{ChekanovDga, ElementaryAutomorphism, KnotMetadata};
pub use obstruction::{ProjectionMap, RefutationPlan, Witness};
pub use rewrite::{RewriteRule, RewriteSystem};
