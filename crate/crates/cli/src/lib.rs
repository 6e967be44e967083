//! File formats, table reproduction and report rendering for the
//! `desitter` command-line tool.

pub mod documents;
pub mod report;
pub mod tables;
