//! Numerical and exact-arithmetic tools for free probability on the upper
//! half-plane: Cauchy/Stieltjes transforms of a small catalog of measures
//! (Meixner family, hyperbolic secant, logistic, semicircle, free Poisson,
//! Cauchy, power beta laws), their reciprocal transforms and inverses,
//! free cumulants over exact rationals, and a curve-based checker for free
//! infinite divisibility via univalent extension of the inverse reciprocal
//! transform.
//!
//! The crate is organized in layers:
//!
//! * [`specfun`]: complex log-gamma, digamma, trigamma.
//! * [`exact`]: exact integer/rational sequences (secant, tangent, Bernoulli,
//!   Catalan numbers) and truncated power-series arithmetic over rationals.
//! * [`quad`]: adaptive Gauss-Kronrod quadrature for real and complex
//!   integrands.
//! * [`measures`]: the measure catalog, densities, reference moment
//!   sequences, closed-form inverse reciprocal transforms.
//! * [`orthopoly`]: monic three-term recurrences and exact moments from
//!   truncated Jacobi matrices.
//! * [`cumulants`]: moment/free-cumulant conversion, series reversion,
//!   conditional positive-semidefiniteness, free additive convolution.
//! * [`transforms`]: evaluation of G = Cauchy transform by quadrature,
//!   residue series, analytic continuation, and closed forms; F = 1/G,
//!   numerical inversion of F, the Voiculescu transform, characteristic
//!   functions, and Stieltjes inversion.
//! * [`fidcheck`]: horizontal-curve checks for membership in the class of
//!   measures whose inverse F extends univalently to the upper half-plane.
//! * [`config`]: run-time tolerance configuration.
//! * [`verify`]: the self-contained verification suite used by the CLI
//!   `verify-all` subcommand and the acceptance tests.

pub mod config;
pub mod cumulants;
pub mod error;
pub mod exact;
pub mod fidcheck;
pub mod measures;
pub mod orthopoly;
pub mod quad;
pub mod specfun;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};

/// Double-precision complex scalar used throughout the transform layer.
pub type ComplexValue = num_complex::Complex64;
