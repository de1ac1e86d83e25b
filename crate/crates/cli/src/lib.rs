//! Command-line front end: computes homology tables with a content-addressed
//! cache and runs the identity checks of the engine.

pub mod app;
pub mod cache;
pub mod error;
pub mod input;

pub use app::run;
