//! Script parsing and session execution behind the `mpv` binary.

pub mod script;
pub mod session;
