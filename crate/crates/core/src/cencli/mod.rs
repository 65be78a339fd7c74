//! Census fixtures, the verification pipeline, the record serialization
//! and the command-line front end.

pub mod cli;
pub mod fixtures;
pub mod record;
pub mod verify;

pub use fixtures::{fixtures, lookup, CensusFixture, DualityRelation, MapType, OrientationClass};
pub use record::{parse_record, parse_records, Record};
pub use verify::{check_ids, verify_paper, verify_paper_with, CheckRecord, VerificationReport, Verifier};
