//! MCFGs for the word problem of `Z^n`, necklace splitting, and the
//! octahedral Tucker lemma.

pub mod cli;
pub mod decompose;
pub mod derivation;
pub mod error;
pub mod grammar_gn;
pub mod mcfg;
pub mod necklace;
pub mod oracle;
pub mod selftest;
pub mod tucker;
pub mod words;

pub use error::{Error, ErrorKind, Result};
