//! Exact-arithmetic Cartesian symmetry classes for subgroups of `S_m`.
//!
//! Given a permutation group `G` inside `S_m` and a character `lambda` of
//! `G`, the Cartesian symmetrizer is the orthogonal projection
//!
//! ```text
//! C = (lambda(1) / |G|) * sum over tau in G of lambda(tau) * Q(tau)
//! ```
//!
//! acting on the direct product of `m` copies of an n-dimensional inner
//! product space, where `Q(tau)` permutes the coordinates. Its range is the
//! Cartesian symmetry class of the pair `(G, lambda)`. This crate builds the
//! projection matrix exactly over cyclotomic fields, computes dimensions of
//! symmetry classes and their cyclic subspaces, evaluates Gram matrices and
//! norms of the standard symmetrized vectors, and decides whether a symmetry
//! class admits an orthogonal basis of standard symmetrized vectors
//! (an O-basis), both by closed-form criteria and by exhaustive search.
//!
//! Everything is exact: values live in `Q(zeta_N)` with rational
//! coefficients, zero tests reduce modulo cyclotomic polynomials, and every
//! closed form is cross-checked against a trace or brute-force oracle. See
//! the guide under `book/` for a tour.
//!
//! ```
//! use cartsym::perm::families::DihedralGroup;
//! use cartsym::chars::{dihedral_character, DihedralCharId};
//! use cartsym::symclass::{build_symmetrizer, dim_symmetry_class};
//!
//! let d8 = DihedralGroup::new(4)?;
//! let psi = dihedral_character(&d8, DihedralCharId::Psi(1))?;
//! let sym = build_symmetrizer(&psi);
//! assert_eq!(dim_symmetry_class(&sym, 2)?, 4);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod chars;
pub mod cli;
pub mod cyclo;
pub mod formulas;
pub mod obasis;
pub mod perm;
pub mod specs;
pub mod symclass;
pub mod verify;
