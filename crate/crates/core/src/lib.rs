//! Exact F-signature of normal affine semigroup rings.
//!
//! The pipeline: generators in `N^r` → Hermite basis of the group they
//! span → facet functionals of their cone → the full embedding
//! `T : gp(M) → Z^n` → the polytope `{0 <= T x <= 1}`, whose volume is the
//! F-signature. Free ranks `a_q` and Hilbert–Kunz colengths are counted
//! directly on the embedded semigroup as an independent check.
//!
//! ```
//! use fsig_core::{families, signature::f_signature};
//!
//! let segre = families::segre_generators(2, 2).unwrap();
//! let s = f_signature(&segre).unwrap().value;
//! assert_eq!(s, families::segre_signature(2, 2));
//! ```

pub mod cone;
mod dd;
pub mod error;
pub mod exact;
pub mod families;
pub mod frobenius;
pub mod semigroup;
pub mod signature;

pub use dd::extreme_rays;
pub use error::{Error, Result};
