//! JSON formats, reports, the consistency sweep and the command-line front
//! end for `detloci-core`.

pub mod cli;
pub mod format;
pub mod report;
pub mod sweep;
