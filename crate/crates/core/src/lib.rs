//! Exact arithmetic geometry over the rational function field K = F_q(t):
//! naive and canonical heights on P^1, Neron-Tate heights and pairings on
//! elliptic curves, fiber-matrix checks and flat-corrected intersection
//! pairings on models, and preperiodic-set comparison scans.
//!
//! Everything is exact: field arithmetic in F_{p^n}, polynomials and
//! rational functions in t, and `Rat` (arbitrary-precision rationals) for
//! heights. Iterative quantities (canonical heights) come back as a value
//! together with a certified error bound, never as a bare approximation.

pub mod config;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod ffield;
pub mod lattice;
pub mod projheights;
pub mod rat;
pub mod rigidity;
pub mod wire;

pub use config::Caps;
pub use error::{FfhError, Result};
pub use ffield::{ConstExt, FFElem, GroundField, Place, Poly, RatFunc};
pub use rat::Rat;
