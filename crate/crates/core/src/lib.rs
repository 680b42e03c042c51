//! Numerical laboratory for the Riemann-Siegel Z function on the critical
//! line: Gram points, Titchmarsh sums, the Hardy-Littlewood integral,
//! Jacob's ladders, Fermat rationals and ladder-generated orthogonal systems.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cache;
pub mod error;
pub mod exec;
pub mod fermat;
pub mod gram;
pub mod hardy_littlewood;
pub mod lab;
pub mod ladder;
pub mod ortho;
pub mod quad;
pub mod report;
pub mod sum;
pub mod table;
pub mod titchmarsh;
pub mod zeta_core;

pub use error::{LabError, Result};
pub use exec::Strategy;
pub use lab::{Lab, LabConfig, Weight};
pub use zeta_core::{ZetaEvalConfig, EULER_GAMMA};
