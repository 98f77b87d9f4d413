//! Nominal absolute semantics for first-order logic with equality.
//!
//! The crate is organised bottom-up:
//!
//! - [`nominal`]: atoms, permutations, support and freshness.
//! - [`syntax`]: terms and formulas with named binders, alpha-equivalence,
//!   capture-avoiding substitution, parser and printer.
//! - [`sigma`]: substitution algebras and their duals on characteristic
//!   sets, with the axiom suites that check them.
//! - [`foleq`]: lattice algebras with fresh-finite limits, equality and a
//!   compatible substitution action; the interpretation of formulas into
//!   any such algebra.
//! - [`tarski`]: finite ordinary models, brute-force evaluation, and the
//!   computable lifted algebra of finite-dependency tables.
//! - [`sequent`]: proofs, a proof checker, bounded proof search,
//!   countermodel search and a generator of derivable sequents.
//! - [`filter`]: filters, ideals and a bounded sketch of the prime filter
//!   construction, over prover-backed membership oracles.
//! - [`suites`]: the named, seeded axiom suites.
//! - [`cli`]: the `nomsem` command line; [`gen`] holds the shared random
//!   generators.

pub mod cli;
pub mod filter;
pub mod foleq;
pub mod gen;
pub mod nominal;
pub mod sequent;
pub mod sigma;
pub mod suites;
pub mod syntax;
pub mod tarski;

pub use nominal::{compose, fresh, new_check, strict_support, swap, Atom, AtomSet, Nominal, Perm};
pub use syntax::{alpha_eq, free_atoms, subst_formula, subst_term, Formula, Signature, Term};
