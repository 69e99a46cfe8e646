//! Exact solvers for placing proxies on a line so that every voter's proxy
//! has a favourite candidate within `theta` of the voter's own favourite.
//!
//! All arithmetic is over exact rationals.

pub mod elections;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod restricted;
pub mod unrestricted;
pub mod verify;

pub use elections::{Profile, Side};
pub use error::{Error, Result};
pub use geometry::{rat, Arrangement, Instance, Rational, TieBreak};
pub use interval::{Endpoint, Interval, IntervalSet};
pub use restricted::Solution;
pub use verify::Violation;
