//! Given an arrangement of red, green and blue lines in 3-space in general
//! position, none meeting the z-axis, there is always a plane through the
//! z-axis whose cross-section admits a single line simultaneously bisecting
//! all three color classes. This crate finds such a plane and the bisector
//! with exact arithmetic: a brute-force event scan serves as ground truth,
//! and the fast path combines a sidedness oracle on median levels of the
//! dual arrangement with a parametric search over collinearity events.

pub mod bruteforce;
pub mod cli;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod levels;
pub mod oracle;
pub mod render;
pub mod signseq;
pub mod solver;

pub use error::{Error, Result};
