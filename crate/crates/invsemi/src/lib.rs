//! Finite computational algebra for inverse semigroups.
//!
//! Everything here works on small, explicitly tabulated objects: an inverse
//! semigroup is a Cayley table, a partial action is a list of partial
//! bijections, and every structural claim (premorphism axioms, congruence
//! compatibility, embedding certificates) is checked by exhaustive
//! enumeration. The point is not speed but certainty on small instances.
//!
//! The main pipeline:
//!
//! 1. [`semigroup`] validates Cayley tables and derives the natural partial
//!    order, the compatibility relation, the minimum group congruence, and
//!    the semilattice of idempotents.
//! 2. [`action`] validates partial actions (premorphisms into partial
//!    bijections), builds the representation of a semigroup on its own
//!    idempotents, and lifts actions along idempotent-pure congruences.
//! 3. [`product`] builds the semidirect product of a semilattice by an
//!    acting semigroup and certifies the embedding of the original
//!    semigroup into it.
//! 4. [`ltriple`] handles the order-theoretic side: globalizations of
//!    partial actions, induced partial orders, and the equivalence between
//!    semidirect products and triples (T, X, Y).
//!
//! [`instance`] and [`cli`] provide a line-oriented file format and a
//! command-line front end over the whole pipeline.

// Nearly everything here walks parallel index-keyed tables; plain index
// loops read better than the iterator chains clippy would prefer.
#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod cli;
pub mod congruence;
pub mod generate;
pub mod instance;
pub mod ltriple;
pub mod pbij;
pub mod product;
pub mod report;
pub mod semigroup;
