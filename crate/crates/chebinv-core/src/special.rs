//! Chebyshev expansions of reference functions with bounded coefficient
//! norms: monomials, the scaled exponential and logarithm, and `erf(kappa x)`
//! through scaled modified Bessel functions, plus sign/rectangle approximants
//! built from the latter.
//!
//! Every exponentially-scaled quantity (`e^{-x} I_n(x)`) is kept in scaled
//! form end to end: the unscaled Bessel values overflow already at moderate
//! `kappa` and are never materialized.

use std::fmt;

use crate::cheb::{self, ChebSeries, Parity};
use crate::grid;
use crate::parallel::par_map_range;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecialError {
    NegativeArgument(f64),
    /// The sign/rectangle search exhausted its degree budget before reaching
    /// the requested accuracy.
    DegreeCapExceeded { delta: f64, epsilon: f64 },
    BadParameter(String),
}

impl fmt::Display for SpecialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialError::NegativeArgument(x) => {
                write!(f, "argument must be nonnegative, got {x}")
            }
            SpecialError::DegreeCapExceeded { delta, epsilon } => write!(
                f,
                "no polynomial within the degree cap reaches epsilon={epsilon} at delta={delta}"
            ),
            SpecialError::BadParameter(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for SpecialError {}

/// Exponentially scaled modified Bessel function of the first kind,
/// `e^{-x} I_n(x)`, by Miller's backward recurrence normalized with
/// `1 = i_0 + 2 sum_{k>=1} i_k` (the scaled form of the generating-function
/// identity at 1). Relative accuracy ~1e-12 for `n <= 1e4`, `x <= 1e6`.
pub fn bessel_i_scaled(n: usize, x: f64) -> Result<f64, SpecialError> {
    if x < 0.0 {
        return Err(SpecialError::NegativeArgument(x));
    }
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    // Start high enough that the trial tail has decayed by ~1e-20 relative:
    // the scaled values fall off like exp(-k^2 / (2x)) once k outruns x.
    let start = n + ((90.0 * x).sqrt().ceil() as usize).max(40) + 20;
    let mut above = 0.0f64; // trial i_{k+1}
    let mut here = 1e-280f64; // trial i_k
    let mut sum = 0.0f64; // accumulates i_0 + 2 sum_{k>=1}, in trial units
    let mut target = f64::NAN;
    for k in (0..=start).rev() {
        if k == n {
            target = here;
        }
        sum += if k == 0 { here } else { 2.0 * here };
        if k > 0 {
            // i_{k-1} = (2k/x) i_k + i_{k+1}
            let below = (2.0 * k as f64 / x) * here + above;
            above = here;
            here = below;
            if here > 1e180 {
                here *= 1e-180;
                above *= 1e-180;
                sum *= 1e-180;
                target *= 1e-180;
            }
        }
    }
    Ok(target / sum)
}

/// Reference error function, independent of any Chebyshev machinery.
///
/// For `|z| <= 3` uses the all-positive-term series
/// `erf(z) = (2 z e^{-z^2}/sqrt(pi)) sum_n (2 z^2)^n / (2n+1)!!`
/// (no cancellation); beyond that, the continued fraction for `erfc` by
/// modified Lentz. Absolute accuracy ~1e-15.
pub fn erf_ref(z: f64) -> f64 {
    if z < 0.0 {
        return -erf_ref(-z);
    }
    if z == 0.0 {
        return 0.0;
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    if z <= 3.0 {
        let z2 = z * z;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        let mut n = 1.0f64;
        while term > 1e-18 * sum {
            term *= 2.0 * z2 / (2.0 * n + 1.0);
            sum += term;
            n += 1.0;
        }
        2.0 * z * (-z2).exp() / sqrt_pi * sum
    } else {
        // erfc(z) = e^{-z^2} / (sqrt(pi) K) with the continued fraction
        // K = z + (1/2)/(z + 1/(z + (3/2)/(z + ...))), partial numerators
        // a_n = n/2, evaluated by modified Lentz.
        let mut f = z;
        let mut c = z;
        let mut d = 0.0f64;
        for n in 1..=400 {
            let a = n as f64 / 2.0;
            d = 1.0 / (z + a * d);
            c = z + a / c;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        let erfc = (-z * z).exp() / (sqrt_pi * f);
        1.0 - erfc
    }
}

/// Exact Chebyshev expansion of the monomial `x^n`:
/// `x^n = 2^{1-n} sum'_{j: n-j even} binom(n, (n-j)/2) T_j(x)` with the
/// `j = 0` contribution halved. The coefficient 1-norm is at most one.
pub fn monomial_cheb(n: usize) -> ChebSeries {
    // binom(n, (n-j)/2) / 2^{n-1}: walk j downward from n via ratio updates.
    // With k = (n-j)/2, binom(n,k+1)/binom(n,k) = (n-k)/(k+1).
    let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
    let len = n / 2 + 1;
    let mut coeffs = vec![0.0; len];
    let mut c = (2.0f64).powi(1 - (n as i32)); // 2^{1-n} * binom(n, 0)
    let mut k = 0usize; // k = (n - j)/2, j = n - 2k
    loop {
        let j = n - 2 * k;
        let idx = j / 2; // storage index within the parity class
        coeffs[idx] = if j == 0 { 0.5 * c } else { c };
        if j < 2 {
            break;
        }
        c *= (n - k) as f64 / (k + 1) as f64;
        k += 1;
    }
    if n == 0 {
        coeffs[0] = 1.0;
    }
    ChebSeries::new(parity, coeffs)
}

/// Chebyshev expansion of the scaled exponential `e^{kappa (x - 1)}` via the
/// truncated Taylor series routed through [`monomial_cheb`]. Coefficient
/// 1-norm stays within one plus the truncation slack.
pub fn exp_cheb(kappa: f64, degree: usize) -> ChebSeries {
    assert!(kappa >= 0.0);
    let mut coeffs = vec![0.0; degree + 1];
    // e^{-kappa} kappa^n / n! accumulated stably in linear space
    let mut factor = (-kappa).exp();
    for n in 0..=degree {
        if n > 0 {
            factor *= kappa / n as f64;
        }
        let mono = monomial_cheb(n);
        for (i, c) in mono.coeffs.iter().enumerate() {
            coeffs[mono.basis_degree(i)] += factor * c;
        }
    }
    ChebSeries::new(Parity::None, coeffs)
}

/// Chebyshev expansion of the shifted-log
/// `slog_kappa(x) = log(1/kappa + ((x+1)/2)(1 - 1/kappa))`, whose Taylor
/// coefficients are `(-1)^{n+1}/n * ((kappa-1)/(kappa+1))^n` beyond the
/// constant. Coefficient 1-norm grows like the partial harmonic sum.
pub fn slog_cheb(kappa: f64, degree: usize) -> ChebSeries {
    assert!(kappa >= 1.0);
    let mut coeffs = vec![0.0; degree + 1];
    coeffs[0] = ((kappa + 1.0) / (2.0 * kappa)).ln();
    let rho = (kappa - 1.0) / (kappa + 1.0);
    let mut rho_n = 1.0;
    for n in 1..=degree {
        rho_n *= rho;
        let taylor = if n % 2 == 0 { -rho_n / n as f64 } else { rho_n / n as f64 };
        let mono = monomial_cheb(n);
        for (i, c) in mono.coeffs.iter().enumerate() {
            coeffs[mono.basis_degree(i)] += taylor * c;
        }
    }
    ChebSeries::new(Parity::None, coeffs)
}

/// Analytic cap on the slog coefficient 1-norm: `|log((kappa+1)/(2 kappa))| +
/// sum_{n<=degree} rho^n / n` with `rho = (kappa-1)/(kappa+1)`.
pub fn slog_norm_bound(kappa: f64, degree: usize) -> f64 {
    let rho = (kappa - 1.0) / (kappa + 1.0);
    let mut bound = (((kappa + 1.0) / (2.0 * kappa)).ln()).abs();
    let mut rho_n = 1.0;
    for n in 1..=degree {
        rho_n *= rho;
        bound += rho_n / n as f64;
    }
    bound
}

/// Coefficient of `T_{2n+1}` in the Chebyshev series of `erf(kappa x)`:
/// `(2 kappa / sqrt(pi)) (-1)^n (i_n + i_{n+1}) / (2n+1)` with
/// `i_n = e^{-kappa^2/2} I_n(kappa^2/2)` — the `e^{-kappa^2/2}` prefactor of
/// the series cancels analytically against the scaling of the Bessel terms.
pub fn erf_coeff(kappa: f64, n: usize) -> f64 {
    let x = kappa * kappa / 2.0;
    let i_n = bessel_i_scaled(n, x).expect("x >= 0");
    let i_n1 = bessel_i_scaled(n + 1, x).expect("x >= 0");
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    2.0 * kappa / std::f64::consts::PI.sqrt() * sign * (i_n + i_n1) / (2 * n + 1) as f64
}

/// Chebyshev series of `erf(kappa x)` truncated at term `n = n_max`
/// (inclusive), so the polynomial degree is `2 n_max + 1`.
pub fn erf_cheb(kappa: f64, n_max: usize) -> ChebSeries {
    assert!(kappa > 0.0);
    let coeffs = par_map_range(n_max + 1, |n| erf_coeff(kappa, n));
    ChebSeries::new(Parity::Odd, coeffs)
}

/// Per-coefficient analytic bound:
/// `|c_n| <= (4/pi) (2n+1)^{-1} (kappa^2/(kappa^2+n+1/2))^{n+1/2}`.
pub fn erf_coeff_bound(kappa: f64, n: usize) -> f64 {
    let k2 = kappa * kappa;
    let base: f64 = k2 / (k2 + n as f64 + 0.5);
    4.0 / std::f64::consts::PI / (2 * n + 1) as f64 * base.powf(n as f64 + 0.5)
}

/// Truncated coefficient 1-norm of the erf series with its analytic head
/// bound `(6 + 2 ln N)/pi` and, when `N >= kappa^2`, the tail bound
/// `2^{2-N}`. Also asserts the full-series estimate `<= 4 + 2 ln kappa`.
pub fn erf_coeff_norm(kappa: f64, n_max: usize) -> (f64, f64, Option<f64>) {
    assert!(n_max >= 1);
    let norm = erf_cheb(kappa, n_max).coeff_norm();
    let head_bound = (6.0 + 2.0 * (n_max as f64).ln()) / std::f64::consts::PI;
    assert!(
        norm <= head_bound,
        "erf coefficient norm {norm} exceeds head bound {head_bound}"
    );
    let tail_bound = if (n_max as f64) >= kappa * kappa {
        Some((2.0f64).powf(2.0 - n_max as f64))
    } else {
        None
    };
    // full-series estimate at the canonical split N = ceil(kappa^2)
    let n_split = (kappa * kappa).ceil() as usize;
    let full_estimate = erf_cheb(kappa, n_split.max(1)).coeff_norm()
        + (2.0f64).powf(2.0 - n_split as f64);
    assert!(
        full_estimate <= 4.0 + 2.0 * kappa.ln().max(0.0) + 1e-12,
        "full erf norm estimate {full_estimate} exceeds 4 + 2 log kappa"
    );
    (norm, head_bound, tail_bound)
}

/// Truncation index `N` such that the erf series kept through term `N` is an
/// `epsilon`-approximation of `erf(kappa x)` on `[-1, 1]`.
///
/// For `epsilon` above the beyond-`kappa^2` tail mass `2^{2-kappa^2}` the
/// blockwise tail analysis gives `N = alpha_0 kappa - 1` with
/// `alpha_0 = ceil(sqrt(2 ln(4 kappa / (pi eps'))))` and
/// `eps' = epsilon - 2^{2-kappa^2}`; otherwise (including a nonpositive
/// `eps'`) the geometric tail gives `N = ceil(log2(4 / epsilon))`.
pub fn erf_degree(kappa: f64, epsilon: f64) -> usize {
    assert!(kappa >= 1.0 && epsilon > 0.0);
    let cutoff = (2.0f64).powf(2.0 - kappa * kappa);
    let eps_prime = epsilon - cutoff;
    if eps_prime <= 0.0 {
        return (4.0 / epsilon).log2().ceil().max(0.0) as usize;
    }
    let arg = 2.0 * (4.0 * kappa / (std::f64::consts::PI * eps_prime)).ln();
    let alpha0 = (arg.max(0.0).sqrt().ceil()).max(1.0);
    let alpha0 = alpha0.min(kappa.ceil());
    ((alpha0 * kappa - 1.0).ceil().max(0.0)) as usize
}

/// Target shape for [`sign_rect_approx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepShape {
    Sign,
    Rect,
}

const SIGN_RECT_N_CAP: usize = 20_000;

fn sign_grid_error(s: &ChebSeries, delta: f64) -> f64 {
    let pts = grid::cheb_grid_with_endpoints(delta, 1.0, 512);
    grid::refined_max_abs(|x| s.eval(x) - 1.0, &pts)
}

fn rect_fn(kappa: f64, x: f64) -> f64 {
    0.5 * (erf_ref(kappa * (x + 0.5)) - erf_ref(kappa * (x - 0.5)))
}

fn rect_grid_error(s: &ChebSeries, delta: f64) -> f64 {
    let inner = grid::cheb_grid_with_endpoints(-(0.5 - delta), 0.5 - delta, 512);
    let outer_pos = grid::cheb_grid_with_endpoints(0.5 + delta, 1.0, 256);
    let outer_neg = grid::cheb_grid_with_endpoints(-1.0, -(0.5 + delta), 256);
    let e_in = grid::refined_max_abs(|x| s.eval(x) - 1.0, &inner);
    let e_out = grid::refined_max_abs(|x| s.eval(x), &outer_pos)
        .max(grid::refined_max_abs(|x| s.eval(x), &outer_neg));
    e_in.max(e_out)
}

/// Polynomial approximation of the sign function (odd) or the rectangle
/// function (parity-none, re-expanded by interpolation since the half-shifts
/// break parity), accurate to `epsilon` outside the `delta`-neighborhoods of
/// the discontinuities. The erf steepness `kappa` is found by doubling plus
/// bisection; an unreachable combination is reported as an error.
pub fn sign_rect_approx(
    delta: f64,
    epsilon: f64,
    shape: StepShape,
) -> Result<ChebSeries, SpecialError> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(SpecialError::BadParameter(format!(
            "delta must lie in (0, 1/2), got {delta}"
        )));
    }
    if !(epsilon > 0.0) {
        return Err(SpecialError::BadParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let build = |kappa: f64| -> Option<(ChebSeries, f64)> {
        match shape {
            StepShape::Sign => {
                let n = erf_degree(kappa, epsilon / 4.0);
                if n > SIGN_RECT_N_CAP {
                    return None;
                }
                let s = erf_cheb(kappa, n);
                let err = sign_grid_error(&s, delta);
                Some((s, err))
            }
            StepShape::Rect => {
                // interpolate the composed function; double the node count
                // until the interpolation tail is resolved
                let mut m = 64usize;
                loop {
                    let s = cheb::interpolate_fn(|x| rect_fn(kappa, x), m, Parity::None)
                        .expect("parity-none interpolation cannot fail");
                    let tail: f64 = s.coeffs[s.coeffs.len() - s.coeffs.len() / 8..]
                        .iter()
                        .map(|c| c.abs())
                        .sum();
                    if tail < epsilon * 1e-3 || m >= SIGN_RECT_N_CAP {
                        if m >= SIGN_RECT_N_CAP {
                            return None;
                        }
                        let err = rect_grid_error(&s, delta);
                        return Some((s, err));
                    }
                    m *= 2;
                }
            }
        }
    };
    // doubling search for a feasible steepness
    let mut hi = 2.0f64;
    let mut feasible: Option<(f64, ChebSeries)> = None;
    for _ in 0..24 {
        if let Some((s, err)) = build(hi) {
            if err <= epsilon {
                feasible = Some((hi, s));
                break;
            }
        } else {
            break;
        }
        hi *= 2.0;
    }
    let (hi_kappa, mut best) = match feasible {
        Some(v) => v,
        None => return Err(SpecialError::DegreeCapExceeded { delta, epsilon }),
    };
    // bisect toward the smallest feasible steepness (smaller kappa, lower degree)
    let mut lo = hi_kappa / 2.0;
    let mut hi = hi_kappa;
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        match build(mid) {
            Some((s, err)) if err <= epsilon => {
                best = s;
                hi = mid;
            }
            _ => lo = mid,
        }
    }
    Ok(best)
}
