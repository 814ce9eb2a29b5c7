//! Classical iterative methods on small dense Hermitian matrices: gradient
//! descent, Chebyshev iteration through the three-term vector recurrence, the
//! general-to-positive-definite reduction, and the two negative results
//! (momentum block norm, blow-up of the PD-only polynomial at -1).
//!
//! Production solve paths are matrix-free (matrix-vector products only);
//! eigendecomposition exists as an oracle for tests and for input
//! preparation elsewhere.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cheb::cheb_eval_log;

#[derive(Debug, Clone, PartialEq)]
pub enum SolverError {
    NotHermitian { row: usize, col: usize, deviation: f64 },
    NotSquare { rows: usize, cols: usize },
    BadKappa(f64),
    BadParameter(String),
    Parse(String),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::NotHermitian { row, col, deviation } => write!(
                f,
                "matrix is not Hermitian: entry ({row},{col}) deviates by {deviation:.3e}"
            ),
            SolverError::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            SolverError::BadKappa(k) => write!(f, "kappa must exceed 1, got {k}"),
            SolverError::BadParameter(msg) => write!(f, "{msg}"),
            SolverError::Parse(msg) => write!(f, "matrix text: {msg}"),
        }
    }
}

impl std::error::Error for SolverError {}

/// Dense Hermitian matrix with a certified condition bound: all nonzero
/// eigenvalues lie in `D_kappa = [-1, -1/kappa] ∪ [1/kappa, 1]`.
#[derive(Debug, Clone)]
pub struct DenseHermitian {
    mat: DMatrix<Complex64>,
    kappa: f64,
}

const HERMITIAN_TOL: f64 = 1e-12;

impl DenseHermitian {
    pub fn new(mat: DMatrix<Complex64>, kappa: f64) -> Result<Self, SolverError> {
        if mat.nrows() != mat.ncols() {
            return Err(SolverError::NotSquare { rows: mat.nrows(), cols: mat.ncols() });
        }
        if !(kappa >= 1.0) {
            return Err(SolverError::BadKappa(kappa));
        }
        for i in 0..mat.nrows() {
            for j in 0..=i {
                let dev = (mat[(i, j)] - mat[(j, i)].conj()).norm();
                if dev > HERMITIAN_TOL {
                    return Err(SolverError::NotHermitian { row: i, col: j, deviation: dev });
                }
            }
        }
        Ok(Self { mat, kappa })
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.mat * v
    }

    /// Squared matrix with condition bound `kappa^2` (eigenvalues of `A^2`
    /// lie in `[1/kappa^2, 1]`).
    pub fn squared(&self) -> DenseHermitian {
        DenseHermitian {
            mat: &self.mat * &self.mat,
            kappa: self.kappa * self.kappa,
        }
    }

    /// Eigendecomposition oracle: `(eigenvalues, eigenvectors)` with columns
    /// of the returned matrix the orthonormal eigenvectors. Test/preparation
    /// use only; solve paths never call this.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<Complex64>) {
        let se = nalgebra::SymmetricEigen::new(self.mat.clone());
        (se.eigenvalues.iter().copied().collect(), se.eigenvectors)
    }

    /// Apply a real function to the matrix through the spectral oracle.
    pub fn map_spectrum<F: Fn(f64) -> f64>(&self, f: F) -> DMatrix<Complex64> {
        let (vals, vecs) = self.eigen();
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            vals.len(),
            vals.iter().map(|&l| Complex64::new(f(l), 0.0)),
        ));
        &vecs * d * vecs.adjoint()
    }

    /// Random Hermitian matrix with a prescribed spectrum, built by
    /// conjugating the diagonal with a Haar-ish random unitary (QR of a
    /// complex Gaussian matrix). `pd` draws eigenvalues from `[1/kappa, 1]`,
    /// otherwise from `D_kappa` with random signs; the extreme values
    /// `1/kappa` and `1` are always present so the bound is tight.
    pub fn random_with_spectrum(n: usize, kappa: f64, seed: u64, pd: bool) -> Self {
        assert!(n >= 1 && kappa >= 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut eigs: Vec<f64> = Vec::with_capacity(n);
        for i in 0..n {
            let mag = if i == 0 {
                1.0 / kappa
            } else if i == 1 && n > 1 {
                1.0
            } else {
                rng.gen_range(1.0 / kappa..=1.0)
            };
            let sign = if pd || rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            eigs.push(mag * sign);
        }
        let g = DMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let q = g.qr().q();
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            n,
            eigs.iter().map(|&l| Complex64::new(l, 0.0)),
        ));
        let mut m = &q * d * q.adjoint();
        // symmetrize away the last few ulps so the constructor accepts it
        let mh = m.adjoint();
        m = (m + mh) * Complex64::new(0.5, 0.0);
        DenseHermitian::new(m, kappa).expect("constructed Hermitian")
    }

    /// Serialize in the plain-text exchange format: `n` on the first line,
    /// then `n` rows of `n` whitespace-separated complex entries `re+imj`.
    pub fn to_text(&self) -> String {
        let n = self.n();
        let mut out = format!("{n}\n");
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| {
                    let z = self.mat[(i, j)];
                    if z.im >= 0.0 {
                        format!("{:.16e}+{:.16e}j", z.re, z.im)
                    } else {
                        format!("{:.16e}-{:.16e}j", z.re, -z.im)
                    }
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the format written by [`Self::to_text`]. Entries may omit the
    /// imaginary part (`1.5` means `1.5+0j`).
    pub fn from_text(text: &str, kappa: f64) -> Result<Self, SolverError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| SolverError::Parse("empty input".into()))?
            .trim()
            .parse()
            .map_err(|e| SolverError::Parse(format!("dimension: {e}")))?;
        let mut mat = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| SolverError::Parse(format!("missing row {i}")))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != n {
                return Err(SolverError::Parse(format!(
                    "row {i} has {} entries, expected {n}",
                    entries.len()
                )));
            }
            for (j, e) in entries.iter().enumerate() {
                mat[(i, j)] = parse_complex(e)
                    .ok_or_else(|| SolverError::Parse(format!("bad entry `{e}`")))?;
            }
        }
        DenseHermitian::new(mat, kappa)
    }
}

/// Parse `re+imj` / `re-imj` / bare `re`.
fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if let Some(stripped) = s.strip_suffix('j') {
        // split at the sign of the imaginary part (skip a leading sign and
        // signs inside exponents)
        let bytes = stripped.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let b = bytes[idx];
            if (b == b'+' || b == b'-') && bytes[idx - 1] != b'e' && bytes[idx - 1] != b'E' {
                split = Some(idx);
                break;
            }
        }
        let idx = split?;
        let re: f64 = stripped[..idx].parse().ok()?;
        let im_str = &stripped[idx..];
        let im: f64 = im_str.parse().ok()?;
        Some(Complex64::new(re, im))
    } else {
        s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
    }
}

/// Iterates and residual norms of an iterative solve. `iterates[0]` is the
/// initialization `x_1 = b`.
#[derive(Debug, Clone)]
pub struct IterateTrace {
    pub iterates: Vec<DVector<Complex64>>,
    pub residual_norms: Vec<f64>,
    /// Set when the residual grew past ten times its initial value.
    pub diverged: bool,
}

impl IterateTrace {
    fn from_iterates(a: &DenseHermitian, b: &DVector<Complex64>, iterates: Vec<DVector<Complex64>>) -> Self {
        let residual_norms: Vec<f64> =
            iterates.iter().map(|x| (a.apply(x) - b).norm()).collect();
        let diverged = residual_norms
            .iter()
            .any(|&r| r > 10.0 * residual_norms[0].max(f64::MIN_POSITIVE));
        IterateTrace { iterates, residual_norms, diverged }
    }

    pub fn last(&self) -> &DVector<Complex64> {
        self.iterates.last().expect("trace is never empty")
    }
}

/// Basic gradient descent on `||A x - b||^2 / 2` for positive definite `A`:
/// `x_k = (I - eta A) x_{k-1} + eta b` from `x_1 = b`. With `eta = 1` the
/// `t`-th iterate equals `p_t^+(A) b` where `p_t^+(l) = (1 - (1-l)^t)/l`;
/// other step sizes run fine but are not covered by that identity.
pub fn gradient_descent(
    a: &DenseHermitian,
    b: &DVector<Complex64>,
    t: usize,
    eta: f64,
) -> IterateTrace {
    assert!(t >= 1);
    let mut iterates = Vec::with_capacity(t);
    iterates.push(b.clone());
    let eta_c = Complex64::new(eta, 0.0);
    for _ in 1..t {
        let x = iterates.last().unwrap();
        let next = x - a.apply(x) * eta_c + b * eta_c;
        iterates.push(next);
    }
    IterateTrace::from_iterates(a, b, iterates)
}

/// Chebyshev iteration for positive definite `A` with eigenvalues in
/// `[1/kappa, 1]`: the three-term vector recurrence whose `k`-th iterate is
/// `q_k^+(A) b`, the residual-optimal degree-(k-1) polynomial applied to `b`.
///
/// The Chebyshev ratios `T_k(g)/T_{k+1}(g)` at `g = (kappa+1)/(kappa-1)` are
/// computed by the stable ratio iteration `R_k = 2g - 1/R_{k-1}` (no
/// overflow). The reported trace starts at the conventional initialization
/// `x_1 = b`; the recurrence itself is seeded at `q_1^+(A) b =
/// (2 kappa/(kappa+1)) b`, which is what the closed form requires, and the
/// constant `b`-term enters with a plus sign (validated against the spectral
/// oracle).
pub fn chebyshev_iteration(
    a: &DenseHermitian,
    b: &DVector<Complex64>,
    t: usize,
    kappa: f64,
) -> IterateTrace {
    assert!(t >= 1 && kappa > 1.0);
    let mut iterates = Vec::with_capacity(t);
    iterates.push(b.clone());
    if t > 1 {
        let g = (kappa + 1.0) / (kappa - 1.0);
        let scale = 2.0 * kappa / (kappa - 1.0); // s(A) = g I - scale * A ... see below
        // s(x) = (kappa + 1 - 2 kappa x)/(kappa - 1) = g - scale * x
        let mut prev: DVector<Complex64> = DVector::zeros(b.len()); // q_0^+ = 0
        let mut cur = b * Complex64::new(2.0 * kappa / (kappa + 1.0), 0.0); // q_1^+(A) b
        let mut r_prev = g; // R_0 = T_1/T_0
        for _ in 1..t {
            let r_cur = 2.0 * g - 1.0 / r_prev;
            let a_k = 2.0 / r_cur;
            let b_k = 1.0 / (r_prev * r_cur);
            let d_k = (4.0 * kappa / (kappa - 1.0)) / r_cur;
            let s_cur = &cur * Complex64::new(g, 0.0)
                - a.apply(&cur) * Complex64::new(scale, 0.0);
            let next = s_cur * Complex64::new(a_k, 0.0) - &prev * Complex64::new(b_k, 0.0)
                + b * Complex64::new(d_k, 0.0);
            prev = cur;
            cur = next;
            r_prev = r_cur;
            iterates.push(cur.clone());
        }
    }
    IterateTrace::from_iterates(a, b, iterates)
}

/// Solve a general (indefinite) Hermitian system with eigenvalues in
/// `D_kappa` by Chebyshev iteration on the squared system: returns
/// `P_t(A^2) A b = q_t(A) b`, an `eps`-accurate inverse application once
/// `t >= kappa/2 * ln(2 kappa^2 / eps)`.
pub fn general_solve(
    a: &DenseHermitian,
    b: &DVector<Complex64>,
    t: usize,
    kappa: f64,
) -> DVector<Complex64> {
    assert!(t >= 1 && kappa > 1.0);
    let squared = a.squared();
    let ab = a.apply(b);
    let trace = chebyshev_iteration(&squared, &ab, t.max(2), kappa * kappa);
    if t == 1 {
        // one iteration of the PD recurrence, not the raw initialization
        ab * Complex64::new(2.0 * kappa * kappa / (kappa * kappa + 1.0), 0.0)
    } else {
        trace.last().clone()
    }
}

/// Spectral norm of the momentum-gradient-descent block matrix
/// `[[(1+beta) - eta l, -beta], [1, 0]]` maximized over the eigenvalue grid,
/// with the step/momentum choice `eta = 4/(1+sqrt(1/kappa))^2`,
/// `beta = (1 - 2/(1+sqrt(kappa)))^2`. Exceeds `sqrt(2)` for `kappa >= 9`,
/// which is what rules out cheap block-encodings of the momentum update.
pub fn momentum_matrix_norm(kappa: f64, lambda_grid: &[f64]) -> f64 {
    assert!(kappa >= 1.0);
    let eta = 4.0 / (1.0 + (1.0 / kappa).sqrt()).powi(2);
    let beta = (1.0 - 2.0 / (1.0 + kappa.sqrt())).powi(2);
    lambda_grid
        .iter()
        .map(|&l| {
            let a = (1.0 + beta) - eta * l;
            spectral_norm_2x2(a, -beta, 1.0, 0.0)
        })
        .fold(0.0f64, f64::max)
}

/// Largest singular value of `[[a, b], [c, d]]` in closed form.
fn spectral_norm_2x2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let frob2 = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    let gap = (frob2 * frob2 - 4.0 * det * det).max(0.0).sqrt();
    (0.5 * (frob2 + gap)).sqrt()
}

/// Blow-up of the positive-definite-only polynomial at the negated endpoint.
#[derive(Debug, Clone, Copy)]
pub struct QtPlusBlowup {
    /// `|q_t^+(-1)|`; infinity once past f64 range.
    pub value: f64,
    /// Natural log of the value, always finite.
    pub log_value: f64,
    /// Log of the guaranteed lower bound `(3/2)^t / 2`.
    pub log_bound: f64,
}

/// Evaluate `|q_t^+(-1)|` stably. The value is
/// `T_t(3 + 4/(kappa-1)) / T_t(1 + 2/(kappa-1)) - 1`, computed as a log-domain
/// ratio; it grows at least like `(3/2)^t / 2` (asserted in the log domain),
/// which is why normalizing `q_t^+` for a quantum circuit is hopeless.
pub fn qtplus_blowup(t: usize, kappa: f64) -> Result<QtPlusBlowup, SolverError> {
    if t == 0 {
        return Err(SolverError::BadParameter("t must be at least 1".into()));
    }
    if !(kappa > 1.0) {
        return Err(SolverError::BadKappa(kappa));
    }
    let s_minus1 = 3.0 + 4.0 / (kappa - 1.0);
    let gamma = 1.0 + 2.0 / (kappa - 1.0);
    let log_ratio = cheb_eval_log(t, s_minus1).expect("argument > 1")
        - cheb_eval_log(t, gamma).expect("gamma > 1");
    // |q_t^+(-1)| = ratio - 1; log1p keeps it exact when the ratio is modest
    let log_value = log_ratio + (-(-log_ratio).exp()).ln_1p();
    let log_bound = t as f64 * (1.5f64).ln() - std::f64::consts::LN_2;
    assert!(
        log_value >= log_bound,
        "log |q_t+(-1)| = {log_value} below bound {log_bound} at t={t} kappa={kappa}"
    );
    Ok(QtPlusBlowup { value: log_value.exp(), log_value, log_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::qtplus_eval;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn real_vec(v: &[f64]) -> DVector<Complex64> {
        DVector::from_iterator(v.len(), v.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    fn apply_poly_spectrally(
        a: &DenseHermitian,
        b: &DVector<Complex64>,
        f: impl Fn(f64) -> f64,
    ) -> DVector<Complex64> {
        &a.map_spectrum(f) * b
    }

    #[test]
    fn hermitian_validation() {
        let m = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 1.0), // should be -i
            Complex64::new(1.0, 0.0),
        ]);
        assert!(matches!(
            DenseHermitian::new(m, 2.0),
            Err(SolverError::NotHermitian { .. })
        ));
    }

    #[test]
    fn gd_identity_matrix_fixed_point() {
        let a = DenseHermitian::new(DMatrix::identity(3, 3), 1.0).unwrap();
        let b = real_vec(&[1.0, -2.0, 0.5]);
        for t in [1usize, 2, 9] {
            let trace = gradient_descent(&a, &b, t, 1.0);
            assert!((trace.last() - &b).norm() < 1e-14);
            assert!(!trace.diverged);
        }
    }

    #[test]
    fn gd_scalar_closed_form() {
        let a = DenseHermitian::new(
            DMatrix::from_element(1, 1, Complex64::new(0.5, 0.0)),
            2.0,
        )
        .unwrap();
        let b = real_vec(&[2.0]);
        let trace = gradient_descent(&a, &b, 3, 1.0);
        assert_close(trace.last()[0].re, 1.75 * 2.0, 1e-14);
    }

    #[test]
    fn gd_matches_spectral_oracle() {
        let a = DenseHermitian::random_with_spectrum(4, 5.0, 42, true);
        let b = real_vec(&[0.3, -1.0, 0.8, 0.1]);
        let t = 10;
        let trace = gradient_descent(&a, &b, t, 1.0);
        let oracle = apply_poly_spectrally(&a, &b, |l| {
            (1.0 - (1.0 - l).powi(t as i32)) / l
        });
        assert!((trace.last() - &oracle).norm() <= 1e-10 * oracle.norm());
    }

    #[test]
    fn chebyshev_t1_is_initialization() {
        let a = DenseHermitian::random_with_spectrum(3, 4.0, 7, true);
        let b = real_vec(&[1.0, 0.0, -1.0]);
        let trace = chebyshev_iteration(&a, &b, 1, 4.0);
        assert_eq!(trace.iterates.len(), 1);
        assert!((trace.last() - &b).norm() == 0.0);
    }

    #[test]
    fn chebyshev_scalar_residual() {
        // A = [1/kappa], kappa = 2, t = 2: residual/||b|| = 1/T_2(3) = 1/17
        let a = DenseHermitian::new(
            DMatrix::from_element(1, 1, Complex64::new(0.5, 0.0)),
            2.0,
        )
        .unwrap();
        let b = real_vec(&[1.0]);
        let trace = chebyshev_iteration(&a, &b, 2, 2.0);
        assert_close(trace.residual_norms[1], 1.0 / 17.0, 1e-13);
    }

    #[test]
    fn chebyshev_matches_spectral_oracle() {
        let a = DenseHermitian::random_with_spectrum(6, 10.0, 3, true);
        let b = real_vec(&[0.2, 0.4, -0.6, 1.0, 0.0, -0.3]);
        let t = 20;
        let trace = chebyshev_iteration(&a, &b, t, 10.0);
        let oracle = apply_poly_spectrally(&a, &b, |l| qtplus_eval(t, 10.0, l));
        assert!(
            (trace.last() - &oracle).norm() <= 1e-9 * oracle.norm(),
            "deviation {}",
            (trace.last() - &oracle).norm() / oracle.norm()
        );
    }

    #[test]
    fn chebyshev_residual_bound_holds_along_trace() {
        let kappa = 8.0;
        let a = DenseHermitian::random_with_spectrum(5, kappa, 11, true);
        let b = real_vec(&[1.0, -0.5, 0.25, 0.7, -0.9]);
        let trace = chebyshev_iteration(&a, &b, 12, kappa);
        let gamma = (kappa + 1.0) / (kappa - 1.0);
        for (k, r) in trace.residual_norms.iter().enumerate().skip(1) {
            let t = k + 1;
            let bound = (-cheb_eval_log(t, gamma).unwrap()).exp() * b.norm();
            assert!(*r <= bound * (1.0 + 1e-9), "step {t}: {r} > {bound}");
        }
    }

    #[test]
    fn chebyshev_residual_tight_for_worst_eigenvalue() {
        // 1x1 matrix at the inner spectral edge attains the bound exactly
        let kappa = 3.0;
        let a = DenseHermitian::new(
            DMatrix::from_element(1, 1, Complex64::new(1.0 / kappa, 0.0)),
            kappa,
        )
        .unwrap();
        let b = real_vec(&[1.0]);
        let t = 9;
        let trace = chebyshev_iteration(&a, &b, t, kappa);
        let gamma = (kappa + 1.0) / (kappa - 1.0);
        let bound = (-cheb_eval_log(t, gamma).unwrap()).exp();
        // the residual is a difference of O(1) quantities; ~1e-11 relative
        // noise on a 1e-5 value is the floating-point floor here
        assert!((trace.residual_norms[t - 1] - bound).abs() <= 1e-9 * bound);
    }

    #[test]
    fn general_solve_signature_matrix() {
        // A = diag(1, -1) is its own inverse; with kappa essentially 1 the
        // residual factor 1/T_t(s(0)) is below 1e-12 already at t = 1
        let kappa = 1.0 + 1e-12;
        let a = DenseHermitian::new(
            DMatrix::from_diagonal(&real_vec(&[1.0, -1.0])),
            kappa,
        )
        .unwrap();
        let b = real_vec(&[0.6, -0.8]);
        let expected = a.apply(&b);
        for t in [1usize, 2, 5] {
            let x = general_solve(&a, &b, t, kappa);
            assert!(
                (x.clone() - &expected).norm() <= 5e-12,
                "t={t}: {}",
                (x - &expected).norm()
            );
        }
    }

    #[test]
    fn general_solve_diagonal_accuracy() {
        let kappa = 4.0f64;
        let a = DenseHermitian::new(
            DMatrix::from_diagonal(&real_vec(&[1.0 / kappa, -1.0])),
            kappa,
        )
        .unwrap();
        let b = real_vec(&[1.0, 1.0]);
        let eps = 1e-6;
        let t = (0.5 * kappa * (2.0 * kappa * kappa / eps).ln()).ceil() as usize + 1;
        let x = general_solve(&a, &b, t, kappa);
        let exact = real_vec(&[kappa, -1.0]);
        assert!((x - exact).norm() <= eps * b.norm());
    }

    #[test]
    fn general_solve_zero_rhs() {
        let a = DenseHermitian::random_with_spectrum(4, 6.0, 9, false);
        let b = DVector::zeros(4);
        let x = general_solve(&a, &b, 7, 6.0);
        assert_eq!(x.norm(), 0.0);
    }

    #[test]
    fn general_solve_matches_qt_spectrally() {
        let kappa = 6.0;
        let a = DenseHermitian::random_with_spectrum(5, kappa, 21, false);
        let b = real_vec(&[0.1, 0.9, -0.4, 0.0, 0.5]);
        let t = 14;
        let x = general_solve(&a, &b, t, kappa);
        let oracle = apply_poly_spectrally(&a, &b, |l| crate::approx::qt_eval(t, kappa, l));
        assert!((x - &oracle).norm() <= 1e-9 * oracle.norm());
    }

    #[test]
    fn general_solve_is_odd_in_a() {
        let kappa = 5.0;
        let a = DenseHermitian::random_with_spectrum(4, kappa, 33, false);
        let neg = DenseHermitian::new(-a.matrix().clone(), kappa).unwrap();
        let b = real_vec(&[0.4, -0.2, 0.7, 0.1]);
        let x_pos = general_solve(&a, &b, 9, kappa);
        let x_neg = general_solve(&neg, &b, 9, kappa);
        assert!((x_pos + x_neg).norm() <= 1e-10);
    }

    #[test]
    fn momentum_norm_exceeds_sqrt2() {
        let grid: Vec<f64> = (0..2001).map(|i| {
            let kappa = 9.0;
            1.0 / kappa + (1.0 - 1.0 / kappa) * i as f64 / 2000.0
        }).collect();
        assert!(momentum_matrix_norm(9.0, &grid) >= std::f64::consts::SQRT_2);
        let grid100: Vec<f64> = (0..2001).map(|i| 0.01 + 0.99 * i as f64 / 2000.0).collect();
        assert!(momentum_matrix_norm(100.0, &grid100) >= std::f64::consts::SQRT_2);
    }

    #[test]
    fn momentum_degenerate_block_norm() {
        // with eta = beta = 0 each block is [[1, 0], [1, 0]], norm sqrt(2)
        assert_close(spectral_norm_2x2(1.0, 0.0, 1.0, 0.0), std::f64::consts::SQRT_2, 1e-15);
    }

    #[test]
    fn qtplus_blowup_examples() {
        // t = 1, kappa = 2: ratio T_1(7)/T_1(3) = 7/3, value 4/3
        let r = qtplus_blowup(1, 2.0).unwrap();
        assert_close(r.value, 4.0 / 3.0, 1e-12);
        let r = qtplus_blowup(50, 10.0).unwrap();
        assert!(r.log_value >= 50.0 * (1.5f64).ln() - std::f64::consts::LN_2);
        assert!(qtplus_blowup(0, 2.0).is_err());
    }

    #[test]
    fn qtplus_matches_direct_evaluation() {
        for &(t, kappa) in &[(3usize, 2.0), (7, 5.0)] {
            let r = qtplus_blowup(t, kappa).unwrap();
            let direct = qtplus_eval(t, kappa, -1.0).abs();
            assert!((r.value - direct).abs() <= 1e-9 * direct);
        }
    }

    #[test]
    fn convergence_rate_separation() {
        // indefinite system via the squared reduction: gradient descent needs
        // on the order of kappa^2 iterations, Chebyshev on the order of kappa
        let kappa = 100.0;
        let a = DenseHermitian::new(
            DMatrix::from_diagonal(&real_vec(&[1.0 / kappa, -1.0, 1.0])),
            kappa,
        )
        .unwrap();
        let b = real_vec(&[1.0, 1.0, 1.0]);
        let eps = 1e-4;
        let exact = real_vec(&[kappa, -1.0, 1.0]);
        let steps_to = |cheb: bool| -> usize {
            let mut t = 1usize;
            loop {
                let x = if cheb {
                    general_solve(&a, &b, t, kappa)
                } else {
                    let sq = a.squared();
                    let ab = a.apply(&b);
                    gradient_descent(&sq, &ab, t, 1.0).last().clone()
                };
                if (x - &exact).norm() <= eps * b.norm() {
                    return t;
                }
                t *= 2;
                assert!(t < 1 << 22);
            }
        };
        let cheb_steps = steps_to(true);
        let gd_steps = steps_to(false);
        assert!(
            gd_steps as f64 / cheb_steps as f64 > 10.0,
            "gd {gd_steps} vs cheb {cheb_steps}"
        );
    }

    #[test]
    fn text_round_trip() {
        let a = DenseHermitian::random_with_spectrum(3, 4.0, 5, false);
        let text = a.to_text();
        let back = DenseHermitian::from_text(&text, 4.0).unwrap();
        assert!((a.matrix() - back.matrix()).norm() <= 1e-12);
        // bare-real entries parse too
        let simple = DenseHermitian::from_text("2\n1 0\n0 -0.5\n", 2.0).unwrap();
        assert_eq!(simple.matrix()[(1, 1)], Complex64::new(-0.5, 0.0));
        assert_eq!(parse_complex("1.5e-3-2e-4j"), Some(Complex64::new(1.5e-3, -2e-4)));
    }

    #[test]
    fn random_spectrum_lands_in_dkappa() {
        let a = DenseHermitian::random_with_spectrum(8, 7.0, 123, false);
        let (vals, _) = a.eigen();
        for v in vals {
            let m = v.abs();
            assert!(m >= 1.0 / 7.0 - 1e-10 && m <= 1.0 + 1e-10, "eigenvalue {v}");
        }
    }
}
