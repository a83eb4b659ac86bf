//! Kernel and finite verifiers for categories with families.
//!
//! * [`simplex`]: the semi-simplex category, standard simplexes and horns.
//! * [`sset`]: finite semisimplicial sets, horn filling, Segal and fibration
//!   checks, identities via idempotent equivalences.
//! * [`semicat`]: finite semicategories, nerves, slices, set-valued functors
//!   and an exhaustive enumerator.
//! * [`syntax`]: explicit-substitution syntax, type checking, normalization
//!   by evaluation and an equational rewrite oracle.
//! * [`model`]: the finite standard model, the syntactic model, slice models
//!   and a law harness for any model.

pub mod model;
pub mod simplex;
pub mod semicat;
pub mod sset;
pub mod syntax;
