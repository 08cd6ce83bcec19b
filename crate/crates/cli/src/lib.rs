//! Front end for the bounds engine: argument handling lives in the binary,
//! the commands and table reports here.

pub mod commands;
pub mod config;
pub mod report;
