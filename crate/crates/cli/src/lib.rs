//! Batch front end: input documents, subcommands and reports.

pub mod commands;
pub mod document;
pub mod report;
