//! Chebyshev-polynomial machinery for approximating the inverse function on
//! the spectral domain `D_kappa = [-1, -1/kappa] ∪ [1/kappa, 1]`.
//!
//! The crate is organized around [`cheb::ChebSeries`], a parity-tagged
//! coefficient vector in the Chebyshev basis:
//!
//! * [`cheb`] — evaluation (recurrence, explicit/log form, degree halving),
//!   Chebyshev nodes, Clenshaw series evaluation, and interpolation with both
//!   a quadratic reference path and an FFT-based fast path.
//! * [`approx`] — the three inverse-approximation families (gradient-descent
//!   polynomial, its Chebyshev-truncated variant, and the Chebyshev-iteration
//!   polynomial), error measurement in both residual notions, degree
//!   selection, coefficient-norm bounds, and a discrete-minimax optimality
//!   oracle.
//! * [`special`] — Chebyshev expansions of monomials, the scaled exponential
//!   and logarithm, and `erf(kappa*x)` via scaled modified Bessel functions,
//!   together with sign/rectangle approximants.
//! * [`solvers`] — classical iterative methods on small dense Hermitian
//!   matrices (gradient descent, Chebyshev iteration, the general-to-PD
//!   reduction) plus the momentum and positive-definite-only negative results.
//! * [`lowerbound`] — exact integer-arithmetic path-counting gadgets relating
//!   matrix cubes and inverses.
//!
//! Grid sweeps and node evaluations are data-parallel via rayon when the
//! default `parallel` feature is enabled; disabling it yields a sequential
//! build with identical results.

pub mod approx;
pub mod cheb;
pub mod grid;
pub mod lowerbound;
pub mod lp;
pub mod parallel;
pub mod solvers;
pub mod special;

pub use cheb::{ChebNodes, ChebSeries, Parity};
