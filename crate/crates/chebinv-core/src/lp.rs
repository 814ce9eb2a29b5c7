//! Discrete-minimax falsification oracle.
//!
//! Finds the odd polynomial `P` of degree `2t - 1` minimizing
//! `max_x |x P(x) - 1|` over a 512-point grid on `[1/kappa, 1]` (the mirror
//! half is covered by symmetry since the optimum is odd), by linear
//! programming. The grid is seeded with the `t + 1` abscissae where the
//! Chebyshev-iteration residual attains its extrema: with those points
//! present, no same-degree polynomial can beat the closed-form residual on
//! the grid (a sign-alternation argument), so the LP optimum pins the true
//! minimax value instead of under-shooting by the grid resolution.

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::cheb::cheb_eval;

const GRID_SIZE: usize = 512;

/// Grid for the oracle: extremal abscissae of the optimal residual plus
/// Chebyshev-distributed filler, deduplicated and sorted.
fn oracle_grid(t: usize, kappa: f64) -> Vec<f64> {
    let ik2 = 1.0 / (kappa * kappa);
    let mut pts = Vec::with_capacity(GRID_SIZE + t + 1);
    // s(x^2) = cos(k pi / t)  =>  x^2 = (1 + ik2 - cos(k pi/t) (1 - ik2)) / 2
    for k in 0..=t {
        let u = (k as f64 * std::f64::consts::PI / t as f64).cos();
        let x2 = 0.5 * (1.0 + ik2 - u * (1.0 - ik2));
        pts.push(x2.sqrt());
    }
    let filler = GRID_SIZE.saturating_sub(pts.len() + 2);
    pts.extend(crate::grid::cheb_grid_with_endpoints(1.0 / kappa, 1.0, filler));
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    pts
}

/// Minimum of `max_grid |x P(x) - 1|` over odd polynomials of degree `2t - 1`.
pub fn discrete_minimax_residual(t: usize, kappa: f64) -> f64 {
    assert!(t >= 1 && kappa > 1.0);
    let grid = oracle_grid(t, kappa);
    let mut pb = Problem::new(OptimizationDirection::Minimize);
    let eps = pb.add_var(1.0, (0.0, f64::INFINITY));
    let coeffs: Vec<_> = (0..t)
        .map(|_| pb.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    for &x in &grid {
        let phis: Vec<f64> = (0..t).map(|i| x * cheb_eval(2 * i + 1, x)).collect();
        let mut upper: Vec<_> = coeffs.iter().copied().zip(phis.iter().copied()).collect();
        upper.push((eps, -1.0));
        pb.add_constraint(&upper, ComparisonOp::Le, 1.0);
        let mut lower: Vec<_> = coeffs.iter().copied().zip(phis.iter().copied()).collect();
        lower.push((eps, 1.0));
        pb.add_constraint(&lower, ComparisonOp::Ge, 1.0);
    }
    let solution = pb.solve().expect("minimax LP is feasible and bounded");
    solution.objective()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{closed_form_residual, s_at_zero};

    #[test]
    fn lp_matches_closed_form() {
        for &(t, kappa) in &[(1usize, 4.0), (2, 2.0), (5, 3.0), (8, 8.0)] {
            let lp = discrete_minimax_residual(t, kappa);
            let exact = closed_form_residual(t, kappa);
            let rel = (lp - exact).abs() / exact;
            assert!(rel <= 1e-6, "t={t} kappa={kappa}: lp={lp} exact={exact} rel={rel}");
        }
    }

    #[test]
    fn grid_contains_interval_ends() {
        let g = oracle_grid(3, 2.0);
        assert!((g[0] - 0.5).abs() < 1e-12);
        assert!((g.last().unwrap() - 1.0).abs() < 1e-12);
        assert!(g.len() <= GRID_SIZE + 4);
    }

    #[test]
    fn t_at_zero_map() {
        // s(0) > 1 and increasing as kappa -> 1
        assert!(s_at_zero(2.0) > 1.0);
        assert!(s_at_zero(1.01) > s_at_zero(2.0));
    }
}
