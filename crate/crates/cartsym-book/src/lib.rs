//! Doc-test harness for the guide under `book/`.
//!
//! mdbook does not run chapter code blocks against the real crate, so each
//! chapter is attached here as module documentation and `cargo test --doc`
//! executes every Rust snippet. If a snippet drifts from the `cartsym` API,
//! the build breaks; the guide cannot lie.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/characters.md")]
pub mod characters {}

#[doc = include_str!("../../../book/src/symmetrizers.md")]
pub mod symmetrizers {}

#[doc = include_str!("../../../book/src/orthogonal-bases.md")]
pub mod orthogonal_bases {}

#[doc = include_str!("../../../book/src/dimension-formulas.md")]
pub mod dimension_formulas {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
