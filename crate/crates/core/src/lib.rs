//! Exact computations for weighted-quasihomogeneous surface singularities:
//! weights, cyclic quotient data, dual sets, monodromy, and smoothings whose
//! weighted blow-up has a prescribed exceptional surface.

pub mod catalog;
pub mod cyclicq;
pub mod error;
pub mod exactmath;
pub mod monodromy;
pub mod orbit;
pub mod par;
pub mod quasihom;
pub mod smoothing;
pub mod wps;

pub use cyclicq::{CyclicQuotient, ReidTai};
pub use error::{Error, Result};
pub use exactmath::Rational;
pub use par::Exec;
