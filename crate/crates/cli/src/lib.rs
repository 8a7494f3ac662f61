//! Verification suites and their reports, shared by the `verify` binary and
//! the acceptance tests.

pub mod report;
pub mod suites;

pub use report::{CheckRecord, Status, SuiteReport};
pub use suites::{run, Options, Suite};
