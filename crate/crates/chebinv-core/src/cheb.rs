//! Chebyshev polynomial primitives: evaluation of `T_t` by three routes,
//! Chebyshev nodes, Clenshaw evaluation of parity-tagged series, and
//! interpolation (quadratic reference path and FFT-based fast path).

use std::fmt;

use crate::parallel::par_map;

mod fft;

/// Symmetry class of a [`ChebSeries`].
///
/// Coefficient `i` multiplies `T_i` for `None`, `T_{2i+1}` for `Odd`, and
/// `T_{2i}` for `Even`. Odd series evaluate to odd functions and even series
/// to even functions; tracking this explicitly halves storage and makes
/// symmetry bugs visible instead of silently averaging out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    None,
    Odd,
    Even,
}

/// Errors from Chebyshev primitives.
#[derive(Debug, Clone, PartialEq)]
pub enum ChebError {
    /// `cheb_eval_log` requires an argument strictly greater than one.
    LogDomain(f64),
    /// Interpolation input was empty or of unexpected length.
    BadLength { expected: usize, got: usize },
    /// The fast interpolation path requires a power-of-two node count.
    NotPowerOfTwo(usize),
    /// A parity hint was violated: the coefficient of the excluded parity at
    /// `index` had magnitude `magnitude`, above the assertion threshold.
    ParityViolation { index: usize, magnitude: f64 },
    /// CSV parse failure.
    Csv(String),
}

impl fmt::Display for ChebError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChebError::LogDomain(x) => {
                write!(f, "log-domain Chebyshev evaluation requires x > 1, got {x}")
            }
            ChebError::BadLength { expected, got } => {
                write!(f, "expected {expected} values, got {got}")
            }
            ChebError::NotPowerOfTwo(m) => {
                write!(f, "fast interpolation needs a power-of-two node count, got {m}")
            }
            ChebError::ParityViolation { index, magnitude } => {
                write!(
                    f,
                    "parity hint violated: coefficient {index} has magnitude {magnitude:.3e}"
                )
            }
            ChebError::Csv(msg) => write!(f, "series CSV: {msg}"),
        }
    }
}

impl std::error::Error for ChebError {}

/// A polynomial stored as coefficients in the Chebyshev basis, tagged with a
/// parity class. `coeffs[i]` multiplies `T_{basis_degree(i)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub parity: Parity,
    pub coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(parity: Parity, coeffs: Vec<f64>) -> Self {
        Self { parity, coeffs }
    }

    /// Basis polynomial degree of stored coefficient `i`.
    pub fn basis_degree(&self, i: usize) -> usize {
        match self.parity {
            Parity::None => i,
            Parity::Odd => 2 * i + 1,
            Parity::Even => 2 * i,
        }
    }

    /// Degree of the highest stored basis polynomial (trailing zeros count).
    pub fn degree(&self) -> usize {
        if self.coeffs.is_empty() {
            0
        } else {
            self.basis_degree(self.coeffs.len() - 1)
        }
    }

    /// 1-norm of the coefficient vector. By the triangle inequality this is
    /// an upper bound for the sup-norm of the polynomial on `[-1, 1]`.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Evaluate the series at `x` by the backward Clenshaw recurrence.
    ///
    /// Odd and even series are evaluated through the variable `u = 2x^2 - 1`,
    /// so only the stored half of the coefficients is touched. Arguments
    /// outside `[-1, 1]` are permitted but accuracy degrades with distance
    /// from the interval.
    pub fn eval(&self, x: f64) -> f64 {
        match self.parity {
            Parity::None => clenshaw(&self.coeffs, x),
            Parity::Even => clenshaw(&self.coeffs, 2.0 * x * x - 1.0),
            Parity::Odd => {
                // T_{2i+1}(x) = x * V_i(2x^2 - 1) with V_0 = 1, V_1 = 2u - 1
                // and the usual three-term recurrence; Clenshaw adapted to the
                // shifted start gives x * (b_0 - b_1).
                let u = 2.0 * x * x - 1.0;
                let n = self.coeffs.len();
                let (mut b1, mut b2) = (0.0, 0.0);
                for k in (0..n).rev() {
                    let b0 = self.coeffs[k] + 2.0 * u * b1 - b2;
                    b2 = b1;
                    b1 = b0;
                }
                x * (b1 - b2)
            }
        }
    }

    /// Measured sup-norm on `[-1, 1]` over the standard Chebyshev-distributed
    /// grid (with local refinement of grid maxima).
    pub fn sup_norm(&self) -> f64 {
        let pts = crate::grid::supnorm_grid(self.degree());
        crate::grid::refined_max_abs(|x| self.eval(x), &pts)
    }

    /// Drop stored coefficients beyond index `len - 1`.
    pub fn truncate_len(&mut self, len: usize) {
        self.coeffs.truncate(len);
    }

    /// Serialize as CSV with header `index,basis_degree,coefficient`,
    /// coefficients in scientific notation with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,basis_degree,coefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{},{},{:.16e}\n", i, self.basis_degree(i), c));
        }
        out
    }

    /// Parse the CSV produced by [`Self::to_csv`]. The parity is recovered
    /// from the basis-degree column.
    pub fn from_csv(s: &str) -> Result<Self, ChebError> {
        let mut lines = s.lines();
        match lines.next() {
            Some("index,basis_degree,coefficient") => {}
            other => {
                return Err(ChebError::Csv(format!("bad header: {other:?}")));
            }
        }
        let mut rows = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let idx: usize = parts
                .next()
                .ok_or_else(|| ChebError::Csv("missing index".into()))?
                .trim()
                .parse()
                .map_err(|e| ChebError::Csv(format!("index: {e}")))?;
            let deg: usize = parts
                .next()
                .ok_or_else(|| ChebError::Csv("missing basis_degree".into()))?
                .trim()
                .parse()
                .map_err(|e| ChebError::Csv(format!("basis_degree: {e}")))?;
            let coef: f64 = parts
                .next()
                .ok_or_else(|| ChebError::Csv("missing coefficient".into()))?
                .trim()
                .parse()
                .map_err(|e| ChebError::Csv(format!("coefficient: {e}")))?;
            rows.push((idx, deg, coef));
        }
        if rows.is_empty() {
            return Ok(ChebSeries::new(Parity::None, Vec::new()));
        }
        let parity = match (rows[0].1, rows.get(1).map(|r| r.1)) {
            (0, Some(1)) | (0, None) | (1, None) if rows[0].1 == 0 => Parity::None,
            (1, Some(3)) | (1, None) => Parity::Odd,
            (0, Some(2)) => Parity::Even,
            (0, Some(1)) => Parity::None,
            _ => Parity::None,
        };
        let mut coeffs = vec![0.0; rows.len()];
        for (i, (idx, deg, coef)) in rows.into_iter().enumerate() {
            if idx != i {
                return Err(ChebError::Csv(format!("non-contiguous index {idx}")));
            }
            let expected = match parity {
                Parity::None => i,
                Parity::Odd => 2 * i + 1,
                Parity::Even => 2 * i,
            };
            if deg != expected {
                return Err(ChebError::Csv(format!(
                    "basis degree {deg} at row {i} does not match parity pattern"
                )));
            }
            coeffs[i] = coef;
        }
        Ok(ChebSeries::new(parity, coeffs))
    }
}

/// Clenshaw evaluation of a plain (parity-none) Chebyshev series.
fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let n = coeffs.len();
    if n == 0 {
        return 0.0;
    }
    if n == 1 {
        return coeffs[0];
    }
    let two_x = 2.0 * x;
    let (mut b1, mut b2) = (0.0, 0.0);
    for k in (1..n).rev() {
        let b0 = coeffs[k] + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + x * b1 - b2
}

/// The roots of `T_m`: `x_k = cos((k - 1/2) pi / m)` for `k = 1..m`, stored
/// in decreasing order. The second half is produced by mirroring the first so
/// that `x_{m+1-k} = -x_k` holds exactly.
#[derive(Debug, Clone)]
pub struct ChebNodes {
    pub order: usize,
    pub nodes: Vec<f64>,
}

impl ChebNodes {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "node order must be at least 1");
        let mut nodes = vec![0.0; m];
        let half = m / 2;
        for k in 0..half {
            let theta = (k as f64 + 0.5) * std::f64::consts::PI / m as f64;
            let x = theta.cos();
            nodes[k] = x;
            nodes[m - 1 - k] = -x;
        }
        if m % 2 == 1 {
            nodes[half] = 0.0;
        }
        Self { order: m, nodes }
    }
}

/// Evaluate `T_t(x)`.
///
/// For `|x| <= 1` this runs the three-term recurrence; for `|x| > 1` it uses
/// the explicit form `T_t(x) = ((x - sqrt(x^2-1))^t + (x + sqrt(x^2-1))^t)/2`,
/// which avoids the error growth of the recurrence outside the interval.
/// Overflow to infinity for large `t` and `|x| > 1` signals that the caller
/// should switch to [`cheb_eval_log`].
pub fn cheb_eval(t: usize, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        if t == 0 {
            return 1.0;
        }
        let (mut t0, mut t1) = (1.0, x);
        for _ in 1..t {
            let t2 = 2.0 * x * t1 - t0;
            t0 = t1;
            t1 = t2;
        }
        t1
    } else {
        let ax = x.abs();
        let s = (ax * ax - 1.0).sqrt();
        let a = ax + s;
        let val = 0.5 * (a.powi(t as i32) + a.powi(-(t as i32)));
        if x < 0.0 && t % 2 == 1 {
            -val
        } else {
            val
        }
    }
}

/// Natural log of `T_t(x)` for `x > 1`, valid far beyond f64 overflow.
///
/// With `c = acosh(x)` we have `T_t(x) = cosh(t c)`, so
/// `log T_t(x) = t c - log 2 + log1p(exp(-2 t c))`.
pub fn cheb_eval_log(t: usize, x: f64) -> Result<f64, ChebError> {
    if !(x > 1.0) {
        return Err(ChebError::LogDomain(x));
    }
    let c = x.acosh();
    let tc = t as f64 * c;
    Ok(tc - std::f64::consts::LN_2 + (-2.0 * tc).exp().ln_1p())
}

/// Evaluate `T_t(x)` in `O(log t)` arithmetic operations using the
/// degree-halving identities `T_{2k} = 2 T_k^2 - 1` and
/// `T_{2k+1} = 2 T_{k+1} T_k - x`, maintaining the pair `(T_k, T_{k+1})`
/// over the binary expansion of `t`.
pub fn cheb_eval_halving(t: usize, x: f64) -> f64 {
    if t == 0 {
        return 1.0;
    }
    // Invariant: (a, b) = (T_k(x), T_{k+1}(x)) where k is the prefix of t's
    // binary expansion consumed so far.
    let bits = usize::BITS - t.leading_zeros();
    let (mut a, mut b) = (1.0, x); // k = 0
    for i in (0..bits).rev() {
        let bit = (t >> i) & 1;
        let t2k = 2.0 * a * a - 1.0;
        let t2k1 = 2.0 * a * b - x;
        if bit == 0 {
            // k -> 2k
            a = t2k;
            b = t2k1;
        } else {
            // k -> 2k + 1
            let t2k2 = 2.0 * b * b - 1.0;
            a = t2k1;
            b = t2k2;
        }
    }
    a
}

/// Strip the excluded-parity coefficients from a full-basis coefficient
/// vector, asserting they are negligible relative to the kept ones.
fn apply_parity(full: Vec<f64>, hint: Parity) -> Result<ChebSeries, ChebError> {
    match hint {
        Parity::None => Ok(ChebSeries::new(Parity::None, full)),
        Parity::Odd | Parity::Even => {
            let keep_rem = if hint == Parity::Odd { 1 } else { 0 };
            let kept_max = full
                .iter()
                .skip(keep_rem)
                .step_by(2)
                .fold(0.0f64, |m, c| m.max(c.abs()));
            let tol = 1e-10 * kept_max.max(1.0);
            for (i, c) in full.iter().enumerate() {
                if i % 2 != keep_rem && c.abs() > tol {
                    return Err(ChebError::ParityViolation {
                        index: i,
                        magnitude: c.abs(),
                    });
                }
            }
            let coeffs = full.into_iter().skip(keep_rem).step_by(2).collect();
            Ok(ChebSeries::new(hint, coeffs))
        }
    }
}

/// Interpolate function values given at `ChebNodes(m)` into the exact
/// degree-(m-1) Chebyshev expansion, reference `O(m^2)` path.
///
/// The coefficient of `T_0` uses the halved weight `1/m`; the others `2/m`.
/// With a parity hint, only the matching coefficients are returned and the
/// excluded ones are asserted negligible.
pub fn interpolate(values: &[f64], hint: Parity) -> Result<ChebSeries, ChebError> {
    let m = values.len();
    if m == 0 {
        return Err(ChebError::BadLength { expected: 1, got: 0 });
    }
    let nodes = ChebNodes::new(m);
    let mut full = vec![0.0; m];
    for (k, &x) in nodes.nodes.iter().enumerate() {
        let v = values[k];
        let (mut t0, mut t1) = (1.0, x);
        full[0] += v;
        if m > 1 {
            full[1] += v * x;
        }
        for item in full.iter_mut().take(m).skip(2) {
            let t2 = 2.0 * x * t1 - t0;
            *item += v * t2;
            t0 = t1;
            t1 = t2;
        }
    }
    full[0] /= m as f64;
    for c in full.iter_mut().skip(1) {
        *c *= 2.0 / m as f64;
    }
    apply_parity(full, hint)
}

/// Fast `O(m log m)` interpolation at `ChebNodes(m)`; `m` must be a power of
/// two. Same contract as [`interpolate`].
pub fn interpolate_fast(values: &[f64], hint: Parity) -> Result<ChebSeries, ChebError> {
    let m = values.len();
    if m == 0 {
        return Err(ChebError::BadLength { expected: 1, got: 0 });
    }
    if !m.is_power_of_two() {
        return Err(ChebError::NotPowerOfTwo(m));
    }
    let mut full = fft::dct2(values);
    full[0] /= m as f64;
    for c in full.iter_mut().skip(1) {
        *c *= 2.0 / m as f64;
    }
    apply_parity(full, hint)
}

/// Fast interpolation of a function: `m` is padded up to the next power of
/// two and `f` is evaluated at the larger node set, so the result is exact
/// whenever `f` is a polynomial of degree `< m`. Node evaluations run in
/// parallel.
pub fn interpolate_fn<F>(f: F, m: usize, hint: Parity) -> Result<ChebSeries, ChebError>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let m_pad = m.next_power_of_two().max(1);
    let nodes = ChebNodes::new(m_pad);
    let values = par_map(&nodes.nodes, |&x| f(x));
    interpolate_fast(&values, hint)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn eval_low_orders() {
        assert_close(cheb_eval(0, 0.3), 1.0, 0.0);
        assert_close(cheb_eval(1, -0.7), -0.7, 0.0);
        assert_close(cheb_eval(2, 2.0), 7.0, 1e-14);
        // monomial form 4x^3 - 3x
        assert_close(cheb_eval(3, 0.6), -0.936, 1e-15);
    }

    #[test]
    fn eval_log_small_cases() {
        assert_close(
            cheb_eval_log(1, 5.0 / 3.0).unwrap(),
            (5.0f64 / 3.0).ln(),
            1e-14,
        );
        assert_close(cheb_eval_log(2, 2.0).unwrap(), 7.0f64.ln(), 1e-14);
        assert!(cheb_eval_log(3, 1.0).is_err());
        assert!(cheb_eval_log(3, 0.5).is_err());
    }

    #[test]
    fn eval_log_matches_composition_chain() {
        // T_{2t} = 2 T_t^2 - 1 lets a small-t evaluation certify a large-t
        // log evaluation: here t = 1000 via twenty halvings from t <= 50.
        let x = 1.0002f64;
        let log_direct = cheb_eval_log(1000, x).unwrap();
        // chain: T_1000 = composition of T_2 five hundred... use halving oracle
        // in plain f64 at a point where it stays finite.
        let direct = cheb_eval_halving(1000, x);
        assert!(direct.is_finite());
        assert_close(log_direct, direct.ln(), 1e-10 * direct.ln().abs());
        // and composition T_{2t}(x) = 2 T_t(x)^2 - 1 at t = 50 on the chain
        let t50 = cheb_eval_halving(50, x);
        let t100 = cheb_eval_halving(100, x);
        assert_close(t100, 2.0 * t50 * t50 - 1.0, 1e-12 * t100.abs());
    }

    #[test]
    fn halving_identities() {
        assert_close(cheb_eval_halving(2, 0.4), -0.68, 1e-15);
        assert_close(cheb_eval_halving(5, 0.3), cheb_eval(5, 0.3), 1e-13);
        // large order against Clenshaw on the unit series
        let t = 4096;
        let x = 0.99;
        let mut coeffs = vec![0.0; t + 1];
        coeffs[t] = 1.0;
        let unit = ChebSeries::new(Parity::None, coeffs);
        assert_close(cheb_eval_halving(t, x), unit.eval(x), 1e-9);
    }

    #[test]
    fn three_routes_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let t = rng.gen_range(0..=4096usize);
            let x: f64 = rng.gen_range(-1.0..=1.0);
            let a = cheb_eval(t, x);
            let b = cheb_eval_halving(t, x);
            let mut coeffs = vec![0.0; t + 1];
            coeffs[t] = 1.0;
            let c = ChebSeries::new(Parity::None, coeffs).eval(x);
            let tol = 1e-9 * a.abs().max(1.0);
            assert_close(a, b, tol);
            assert_close(a, c, tol);
        }
    }

    #[test]
    fn sup_norm_of_basis_polynomials() {
        for &t in &[1usize, 5, 117, 1024, 10_000] {
            let pts = crate::grid::supnorm_grid(16);
            for &x in &pts {
                assert!(cheb_eval(t, x).abs() <= 1.0 + 1e-12, "t={t} x={x}");
            }
        }
    }

    #[test]
    fn series_eval_basics() {
        let s = ChebSeries::new(Parity::None, vec![1.0]);
        assert_close(s.eval(0.7), 1.0, 0.0);
        let s = ChebSeries::new(Parity::Odd, vec![1.0]);
        assert_close(s.eval(0.5), 0.5, 0.0);
        let s = ChebSeries::new(Parity::Even, vec![0.0, 1.0]);
        assert_close(s.eval(0.3), cheb_eval(2, 0.3), 1e-15);
    }

    #[test]
    fn series_eval_matches_naive_sum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let coeffs: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = 0.31;
        for parity in [Parity::None, Parity::Odd, Parity::Even] {
            let s = ChebSeries::new(parity, coeffs.clone());
            let naive: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * cheb_eval(s.basis_degree(i), x))
                .sum();
            assert_close(s.eval(x), naive, 1e-13);
        }
    }

    #[test]
    fn parity_symmetry_on_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let coeffs: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let odd = ChebSeries::new(Parity::Odd, coeffs.clone());
        let even = ChebSeries::new(Parity::Even, coeffs);
        for _ in 0..50 {
            let x: f64 = rng.gen_range(-1.0..1.0);
            assert_close(odd.eval(-x), -odd.eval(x), 1e-14);
            assert_close(even.eval(-x), even.eval(x), 1e-14);
        }
    }

    #[test]
    fn nodes_are_antisymmetric_roots() {
        for &m in &[1usize, 2, 7, 64, 255] {
            let nodes = ChebNodes::new(m);
            assert_eq!(nodes.nodes.len(), m);
            for k in 0..m {
                let x = nodes.nodes[k];
                assert!(x.abs() < 1.0);
                assert_eq!(x, -nodes.nodes[m - 1 - k]); // exact mirror
                assert!(
                    cheb_eval(m, x).abs() <= m as f64 * 1e-14 * 8.0,
                    "m={m} k={k} T_m(x_k)={}",
                    cheb_eval(m, x)
                );
            }
        }
    }

    #[test]
    fn discrete_orthogonality() {
        for &m in &[2usize, 7, 64, 256] {
            let nodes = ChebNodes::new(m);
            // table[i][k] = T_i(x_k)
            let mut table = vec![vec![0.0; m]; m];
            for k in 0..m {
                for i in 0..m {
                    table[i][k] = cheb_eval(i, nodes.nodes[k]);
                }
            }
            let tol = 1e-8 * m as f64;
            for i in 0..m {
                for j in 0..m {
                    let dot: f64 = (0..m).map(|k| table[i][k] * table[j][k]).sum();
                    let expect = if i == j {
                        if i == 0 {
                            m as f64
                        } else {
                            m as f64 / 2.0
                        }
                    } else {
                        0.0
                    };
                    assert!(
                        (dot - expect).abs() <= tol,
                        "m={m} i={i} j={j}: {dot} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn interpolate_reproduces_basis() {
        let nodes = ChebNodes::new(8);
        let values: Vec<f64> = nodes.nodes.iter().map(|&x| cheb_eval(3, x)).collect();
        let s = interpolate(&values, Parity::None).unwrap();
        for (i, c) in s.coeffs.iter().enumerate() {
            let expect = if i == 3 { 1.0 } else { 0.0 };
            assert_close(*c, expect, 1e-12);
        }
    }

    #[test]
    fn interpolate_constant() {
        let values = vec![1.0; 4];
        let s = interpolate(&values, Parity::None).unwrap();
        assert_close(s.coeffs[0], 1.0, 1e-14);
        for c in &s.coeffs[1..] {
            assert_close(*c, 0.0, 1e-14);
        }
    }

    #[test]
    fn interpolate_round_trip_degree_63() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let coeffs: Vec<f64> = (0..64).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = ChebSeries::new(Parity::None, coeffs.clone());
        let nodes = ChebNodes::new(64);
        let values: Vec<f64> = nodes.nodes.iter().map(|&x| s.eval(x)).collect();
        let back = interpolate(&values, Parity::None).unwrap();
        let num: f64 = coeffs
            .iter()
            .zip(&back.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let den: f64 = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!(num / den <= 1e-10, "round-trip relative 2-norm {}", num / den);
    }

    #[test]
    fn fast_interpolation_matches_reference() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for &m in &[2usize, 16, 256, 4096] {
            let values: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = interpolate(&values, Parity::None).unwrap();
            let b = interpolate_fast(&values, Parity::None).unwrap();
            let num: f64 = a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let den: f64 = a.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!(num / den <= 1e-10, "m={m}: relative 2-norm {}", num / den);
        }
        assert!(matches!(
            interpolate_fast(&[1.0, 2.0, 3.0], Parity::None),
            Err(ChebError::NotPowerOfTwo(3))
        ));
    }

    #[test]
    fn interpolate_parity_paths() {
        // odd polynomial T_5 at 8 nodes: odd hint keeps 4 coefficients
        let nodes = ChebNodes::new(8);
        let values: Vec<f64> = nodes.nodes.iter().map(|&x| cheb_eval(5, x)).collect();
        let s = interpolate(&values, Parity::Odd).unwrap();
        assert_eq!(s.coeffs.len(), 4);
        assert_close(s.coeffs[2], 1.0, 1e-12); // T_5 = index 2 in odd storage
        // an even function under an odd hint must fail the parity assertion
        let values: Vec<f64> = nodes.nodes.iter().map(|&x| cheb_eval(4, x)).collect();
        assert!(matches!(
            interpolate(&values, Parity::Odd),
            Err(ChebError::ParityViolation { .. })
        ));
    }

    #[test]
    fn interpolate_fn_pads_to_power_of_two() {
        let f = |x: f64| 0.25 + x - 2.0 * x * x * x;
        let s = interpolate_fn(f, 5, Parity::None).unwrap();
        assert_eq!(s.coeffs.len(), 8);
        for x in [-0.9, -0.2, 0.4, 1.0] {
            assert_close(s.eval(x), f(x), 1e-13);
        }
    }

    #[test]
    fn coeff_norm_bounds_measured_sup_norm() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for parity in [Parity::None, Parity::Odd, Parity::Even] {
            let coeffs: Vec<f64> = (0..33).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let s = ChebSeries::new(parity, coeffs);
            let norm = s.coeff_norm();
            assert!(s.sup_norm() <= norm + 1e-9 * norm);
        }
    }

    #[test]
    fn csv_round_trip() {
        let s = ChebSeries::new(Parity::Odd, vec![1.6, -0.25, 3e-17]);
        let text = s.to_csv();
        assert!(text.starts_with("index,basis_degree,coefficient\n"));
        let back = ChebSeries::from_csv(&text).unwrap();
        assert_eq!(back.parity, Parity::Odd);
        assert_eq!(back.coeffs, s.coeffs);
    }
}
