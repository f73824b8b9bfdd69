//! Linear (in)dependence of the torsion sections `s_P` attached to a cyclic
//! subgroup of an elliptic curve.
//!
//! Two engines: exact ranks over finite fields ([`elliptic`]) and
//! q-expansions on the Tate curve ([`qexp`]). [`ngon`] solves the valuation
//! bookkeeping along the cusp fibers.

pub mod arith;
pub mod check;
pub mod elliptic;
pub mod error;
pub mod ngon;
pub mod qexp;

pub use error::{Error, Result};
