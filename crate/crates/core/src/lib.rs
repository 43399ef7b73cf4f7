//! Exact combinatorics of the pillowcase distribution on partitions.
//!
//! The crate provides, over exact big-rational arithmetic:
//!
//! - partitions, Maya diagrams, 2-cores/2-quotients and contour functions,
//! - symmetric-group characters (Murnaghan-Nakayama, plain and skew),
//!   the domino evaluations at fixed-point-free involutions, and
//!   Littlewood-Richardson coefficients,
//! - shifted Schur functions and the shifted power sums `p_k`, `pbar_k`,
//! - truncated power series, Eisenstein series, eta/theta products,
//!   quasimodular fitting over Q[E2(q), E2(q^2), E4(q^2)] and exact
//!   Laurent asymptotics in 1/h for q = exp(-h),
//! - pillowcase weights (definition and hook-product form), the near
//!   involution ratio `g_nu`, fixed-n and q-series expectations, the
//!   Sobolev-norm diagnostics, Meinardus ratios, and
//! - Hurwitz cover counts with a brute-force monodromy oracle.
//!
//! Series arithmetic is generic over the coefficient scalar (anything
//! satisfying [`series::Scalar`]); the concrete instantiations used by the
//! library are [`RationalSeries`] and `Series<f64>`.

pub mod character;
pub mod contour;
pub mod engine;
pub mod error;
pub mod hurwitz;
pub mod num;
pub mod partition;
pub mod qseries;
pub mod quotient;
pub mod series;
pub mod shifted;
pub mod stats;
pub mod theta;
pub mod weight;

pub use character::{character, class_data, f_eta, lr_coefficient, skew_character, CharCache, ClassData};
pub use contour::ContourFunction;
pub use error::{Error, Result};
pub use num::{Int, Rat};
pub use partition::{Partition, SkewShape};
pub use qseries::{
    asymptotics, eisenstein, eval_at_h, quasimodular_fit, LaurentAsymptotics, PiPoly,
    QuasimodularPoly,
};
pub use quotient::{MayaDiagram, TwoQuotient};
pub use series::Series;

/// Truncated power series in `q` with exact rational coefficients.
pub type RationalSeries = Series<Rat>;
