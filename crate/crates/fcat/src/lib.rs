//! Finite categories presented by explicit composition tables.
//!
//! Everything in this crate is exhaustively checkable: categories are finite
//! sets of objects and morphisms with a total composition table, so laws,
//! lifting problems, factorizations, and universal properties are all decided
//! by direct enumeration.  On top of the basic data structure the crate builds
//!
//! * validation of candidate categories and of distinguished-class triples
//!   against the model-structure axioms ([`model`]),
//! * cylinder- and path-object searches deciding the homotopy relations on
//!   fibrant-cofibrant objects ([`homotopy`]),
//! * the homotopy category as an honest quotient category ([`ho`]),
//! * a localization built from words in morphisms and formal inverses,
//!   saturated up to a length bound ([`localize`]), and
//! * a comparison functor between the two constructions ([`localize::compare`]).
//!
//! The [`format`] module gives a plain-text surface syntax so categories and
//! model structures can be stored in files and round-tripped byte-for-byte.

pub mod category;
pub mod corpus;
pub mod format;
pub mod ho;
pub mod homotopy;
pub mod localize;
pub mod model;
pub mod universal;

pub use category::{CategoryError, FiniteCategory, MorId, ObjId, RawCategory};
pub use model::ModelStructure;
