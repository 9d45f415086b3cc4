//! Value-quantale-valued metric spaces for finite topology.
//!
//! Every topological space is metrizable once distances are allowed to take
//! values in a *value quantale* rather than `[0, ∞]`. This crate implements
//! the two quantales that matter for finite spaces — the extended rationals
//! and the free quantale Ω(S) over a finite ground set — plus the
//! metrization of finite topological spaces, scale-indexed connectedness
//! (steps, walks, components, scale systems), and a verification suite that
//! replays the structural theorems of the subject over exhaustive and
//! randomized corpora of small instances.
//!
//! The crate is a library first; the companion `scalewalk` binary exposes
//! the same operations as subcommands over canonical JSON documents.

pub mod error;
pub mod exec;
pub mod io;
pub mod quantale;
pub mod scales;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
