//! Test support for the verification engine: reference fixtures, oracles
//! that are independent of the code paths under test, and seed-fixed
//! randomized property suites shared by the unit and acceptance tests.

pub mod fixtures;
pub mod oracle;
pub mod suites;
