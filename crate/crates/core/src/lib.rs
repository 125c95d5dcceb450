//! Exact polygon visibility, critical configurations, motion verification and
//! single-vertex convexification planning.
//!
//! All coordinates and times are exact rationals. The crate is `no_std` and
//! needs only `alloc`.

#![cfg_attr(not(test), no_std)]
// Errors carry exact times and coordinates; they are rare, so size is fine.
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod critical;
pub mod error;
pub mod field;
pub mod geom;
pub mod greedy;
pub mod matching;
pub mod motion;
pub mod planner;
pub mod poly;
pub mod scalar;
pub mod verifier;
pub mod visibility;

pub use error::{GeomError, MotionError, OracleError, VerifyError, CriticalError};
pub use geom::{Point, Polygon, Segment};
pub use scalar::{Scalar, Sign};
