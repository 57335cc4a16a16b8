//! Implementation of the `paxos-mc` command line tool, exposed as a
//! library so integration tests can reuse the CSV and trace-file codecs
//! that define the tool's on-disk formats.

pub mod checks;
pub mod csvio;
pub mod opts;
pub mod replay;
pub mod single;
pub mod sweep;
pub mod tracefile;
