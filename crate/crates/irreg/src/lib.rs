//! File formats, a seeded graph corpus, timing helpers and the command-line
//! front end for `irreg-core`.

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod formats;
