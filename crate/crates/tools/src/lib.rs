//! File formats, reports and command implementations behind the
//! `geodesic` command-line tool.

pub mod automaton_file;
pub mod bundled;
pub mod cache;
pub mod commands;
pub mod error;
pub mod group_file;
pub mod report;
pub mod tri_file;
