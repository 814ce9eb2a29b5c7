//! Measurement grids and sup-norm extraction.
//!
//! Near-minimax polynomials have extrema that cluster like Chebyshev points,
//! so all grids here are Chebyshev-distributed and include the interval
//! endpoints. A coarse grid alone systematically undershoots a sup-norm
//! (extrema fall between grid points), so grid maxima are refined by
//! golden-section search in the bracketing cell before being reported.

use crate::parallel::par_map;

/// `n` Chebyshev-distributed points in the open interval `(a, b)`, sorted
/// ascending.
pub fn cheb_points(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (0..n)
        .rev()
        .map(|j| mid + half * ((j as f64 + 0.5) * std::f64::consts::PI / n as f64).cos())
        .collect()
}

/// Chebyshev-distributed grid on `[a, b]` with both endpoints included.
pub fn cheb_grid_with_endpoints(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut pts = Vec::with_capacity(n + 2);
    pts.push(a);
    pts.extend(cheb_points(a, b, n));
    pts.push(b);
    pts
}

/// The standard sup-norm measurement grid on `[-1, 1]` for a polynomial of
/// the given degree: `max(4 * degree, 1024)` Chebyshev-distributed points
/// plus the endpoints.
pub fn supnorm_grid(degree: usize) -> Vec<f64> {
    cheb_grid_with_endpoints(-1.0, 1.0, (4 * degree).max(1024))
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..120 {
        if hi - lo <= 1e-15 * (1.0 + hi.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// Maximum of `|f|` over the grid, with every local grid maximum refined by
/// golden-section search over its bracketing cell. `pts` must be sorted.
pub fn refined_max_abs<F>(f: F, pts: &[f64]) -> f64
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if pts.is_empty() {
        return 0.0;
    }
    let vals = par_map(pts, |&x| f(x).abs());
    let g = |x: f64| f(x).abs();
    let n = pts.len();
    let mut brackets = Vec::new();
    for i in 0..n {
        let left_ok = i == 0 || vals[i] >= vals[i - 1];
        let right_ok = i == n - 1 || vals[i] >= vals[i + 1];
        if left_ok && right_ok {
            let lo = pts[i.saturating_sub(1)];
            let hi = pts[(i + 1).min(n - 1)];
            brackets.push((lo, hi, vals[i]));
        }
    }
    let refined = par_map(&brackets, |&(lo, hi, v0)| {
        if lo < hi {
            golden_max(&g, lo, hi).max(v0)
        } else {
            v0
        }
    });
    refined.into_iter().fold(0.0f64, f64::max)
}

/// Like [`refined_max_abs`] but also reports sign-alternation data: the
/// refined per-cell maxima of `|f|` with the sign of `f` at each local
/// maximum, in increasing abscissa order. Used for equioscillation counting.
pub fn local_extrema_abs<F>(f: F, pts: &[f64]) -> Vec<(f64, f64, f64)>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if pts.is_empty() {
        return Vec::new();
    }
    let vals = par_map(pts, |&x| f(x));
    let n = pts.len();
    let mut out = Vec::new();
    for i in 0..n {
        let a = vals[i].abs();
        let left_ok = i == 0 || a >= vals[i - 1].abs();
        let right_ok = i == n - 1 || a >= vals[i + 1].abs();
        if left_ok && right_ok {
            let lo = pts[i.saturating_sub(1)];
            let hi = pts[(i + 1).min(n - 1)];
            let g = |x: f64| f(x).abs();
            let m = if lo < hi { golden_max(&g, lo, hi).max(a) } else { a };
            out.push((pts[i], m, vals[i].signum()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = supnorm_grid(10);
        assert_eq!(g.len(), 1026);
        assert_eq!(g[0], -1.0);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn refined_max_finds_off_grid_extremum() {
        // max of cos(40 x) on a coarse grid misses the true extrema; the
        // refinement must recover 1 to near machine precision.
        let pts = cheb_grid_with_endpoints(0.1, 1.0, 37);
        let m = refined_max_abs(|x| (40.0 * x).cos(), &pts);
        assert!((m - 1.0).abs() < 1e-12, "got {m}");
    }
}
