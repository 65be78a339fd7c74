//! Orientably regular hypermaps as permutation pairs acting regularly on
//! darts, with genus, mirror image, duality, isomorphism testing and a
//! brute-force search for small quotients of triangle groups.

mod builtin;
mod perm;
mod regular;
mod search;

pub use builtin::{builtin, klein, r2_6, torus424, BUILTIN_NAMES};
pub use perm::Perm;
pub use regular::{regular_closure, RegularHypermap};
pub use search::{monodromy_search, monodromy_search_with, search_all};
