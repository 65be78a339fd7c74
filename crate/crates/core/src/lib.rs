//! Orientably regular hypermaps as triangle-group quotients, their mod-p
//! homology modules, and the chiral and regular covers built from invariant
//! submodules of those modules.

pub mod cencli;
pub mod covers;
pub mod error;
pub mod fpalg;
pub mod fpgroup;
pub mod homrep;
pub mod hypermap;
pub mod modec;
pub mod par;

pub use error::{Error, Result};
