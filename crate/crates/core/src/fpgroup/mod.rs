//! Words, finitely presented groups, coset enumeration and
//! Reidemeister-Schreier rewriting.

mod coset;
mod parse;
mod presentation;
mod schreier;
mod word;

pub use coset::{coset_enumerate, CosetTable};
pub use parse::{parse_word, parse_words};
pub use presentation::{triangle_presentation, z_word, Presentation, TriangleType, X, Y};
pub use schreier::{
    abelianized_rank, conjugation_action, rewrite_in_subgroup, schreier_transversal, subgroup_presentation,
    SchreierData,
};
pub use word::{sigma, Word};
