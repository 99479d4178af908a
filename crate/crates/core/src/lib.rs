//! Lattice points inside p-circles `|x1|^p + |x2|^p < r^p` with `2/p` a
//! positive integer, generalized Bessel functions attached to them, and
//! Hardy-type series for the lattice error term.

// `!(x > 0.0)` style guards are how NaN gets rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod erdkober;
pub mod error;
pub mod genbessel;
pub mod hardy;
pub mod numkernel;
pub mod pgeom;

pub use error::{Error, Result};
pub use genbessel::{EvalPath, GenBesselParams, PathMode};
pub use numkernel::{DiffSpec, QuadratureSpec, SeriesControl};
pub use pgeom::{LatticePoint, PExponent};
