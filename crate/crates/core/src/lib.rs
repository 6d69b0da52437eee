//! Gaussian arithmetic-geometric mean, complete elliptic integrals, a catalog
//! of bivariate means, and sharp two-sided bounds for `AG_{Q,C}(a,b)`, the AGM
//! of the quadratic and contraharmonic means.
//!
//! Every bound family ships with a verifier that evaluates the inequality on a
//! grid and reports signed margins, so the sharp constants and their
//! optimality can be checked numerically.
//!
//! ```
//! use agmb_core::composite::ag_qc_closed_form;
//! use agmb_core::means::{contraharmonic, quadratic, PositivePair};
//!
//! let pair = PositivePair::new(7.0, 1.0).unwrap();
//! let ag = ag_qc_closed_form(&pair);
//! assert!(quadratic(&pair) < ag && ag < contraharmonic(&pair));
//! ```

pub mod bounds;
pub mod composite;
pub mod elliptic;
pub mod error;
pub mod grid;
pub mod lemmafn;
pub mod means;
pub mod suite;

pub use error::{Error, Result};
