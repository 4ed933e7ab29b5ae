//! Toolchain for declarative interactive VR scene packages.
//!
//! A package is parsed ([`io`]), checked ([`validate`]), optionally extended with
//! interactivity patterns ([`patterns`]), compiled to an A-Frame document
//! ([`generate`]) and executed headlessly ([`sim`]) to produce deterministic
//! traces.

pub mod diag;
pub mod generate;
pub mod io;
pub mod model;
pub mod number;
pub mod patterns;
pub mod sim;
pub mod validate;

pub use diag::{Diagnostic, Severity};
pub use model::*;
