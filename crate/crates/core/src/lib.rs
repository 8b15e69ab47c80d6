//! Canonical forms of indexed-object monomials with free and dummy indices.
//!
//! An index configuration is a signed permutation acting on a standard
//! layout. Tensor symmetries act on slots (on the left), dummy relabelings and
//! metric flips act on labels (on the right), so the configurations equivalent
//! to `g` form the double coset `S * g * D`. The canonical form is the element
//! of that double coset with the least image of the base of `S`.
//!
//! The pipeline runs in two stages: free indices are first moved to their
//! least slots with a single-coset search ([`free`]), then the dummy indices
//! are canonicalized by a double-coset search ([`dummy`]) over the stabilizer
//! of those slots.

pub mod bench;
pub mod dummy;
pub mod error;
pub mod free;
pub mod frontend;
pub mod oracle;
pub mod perm;
pub mod schreier;

pub use dummy::{double_coset_can_rep, CanonResult, DummySpec, Metric};
pub use error::{Error, Result};
pub use free::free_can_rep;
pub use frontend::{canonicalize, CanonOptions, Registry};
pub use perm::SignedPerm;
pub use schreier::StrongGenSet;
