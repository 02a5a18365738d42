//! File formats, JSON result documents and command implementations behind
//! the `hdvf` binary.

pub mod commands;
pub mod document;
pub mod formats;

pub use document::ResultDocument;
