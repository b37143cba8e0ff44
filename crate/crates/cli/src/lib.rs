//! Serialization, transcribed fixtures and verification suites behind the
//! `asymdouble` command-line tool.

pub mod document;
pub mod fixtures;
pub mod verify;
