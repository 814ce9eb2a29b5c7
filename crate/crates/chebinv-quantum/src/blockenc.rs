//! Block-encodings and the two circuit families built on them.
//!
//! Register layout: `counter ⊗ ancilla ⊗ system` (counter only present in
//! the linear-combination circuit). The encoded block of a `(mu, a)`
//! block-encoding `U` is `mu * (<0|^a ⊗ I) U (|0>^a ⊗ I)`, i.e. `mu` times
//! the top-left `n`-by-`n` block under this layout.

use std::fmt;

use chebinv_core::approx::chebiter_coeffs;
use chebinv_core::solvers::DenseHermitian;
use chebinv_core::ChebSeries;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub enum BlockEncodingError {
    /// Input matrix has spectral norm above one and cannot be dilated.
    NormTooLarge(f64),
    /// The constructed matrix failed its unitarity check.
    NotUnitary(f64),
    /// Operation requires a single-ancilla encoding.
    AncillaMismatch { expected: u32, got: u32 },
    /// Chebyshev circuits here implement odd polynomials only.
    EvenDegree(usize),
    /// All-zero coefficient vector has no linear-combination circuit.
    ZeroCoefficients,
    BadParameter(String),
}

impl fmt::Display for BlockEncodingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockEncodingError::NormTooLarge(n) => {
                write!(f, "matrix norm {n} exceeds 1; rescale before dilating")
            }
            BlockEncodingError::NotUnitary(dev) => {
                write!(f, "unitarity deviation {dev:.3e} above tolerance")
            }
            BlockEncodingError::AncillaMismatch { expected, got } => {
                write!(f, "needs a {expected}-ancilla encoding, got {got}")
            }
            BlockEncodingError::EvenDegree(t) => {
                write!(f, "degree {t} is even; only odd Chebyshev circuits are built")
            }
            BlockEncodingError::ZeroCoefficients => {
                write!(f, "coefficient vector is identically zero")
            }
            BlockEncodingError::BadParameter(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for BlockEncodingError {}

/// A `(mu, a)` block-encoding of an `n`-dimensional operator, together with
/// the number of oracle factors (`U_A` or its adjoint) used to build it.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    pub unitary: DMatrix<Complex64>,
    pub ancillas: u32,
    pub mu: f64,
    pub n: usize,
    /// Structural count of `U_A` / `U_A^†` factors along the deepest
    /// activated path of the circuit.
    pub query_count: usize,
}

const UNITARITY_TOL: f64 = 1e-10;

fn unitarity_deviation(u: &DMatrix<Complex64>) -> f64 {
    let dim = u.nrows();
    let prod = u.adjoint() * u;
    let mut dev = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let expect = if i == j { ONE } else { ZERO };
            dev = dev.max((prod[(i, j)] - expect).norm());
        }
    }
    dev
}

impl BlockEncoding {
    fn checked(
        unitary: DMatrix<Complex64>,
        ancillas: u32,
        mu: f64,
        n: usize,
        query_count: usize,
    ) -> Result<Self, BlockEncodingError> {
        let dev = unitarity_deviation(&unitary);
        if dev > UNITARITY_TOL {
            return Err(BlockEncodingError::NotUnitary(dev));
        }
        Ok(Self { unitary, ancillas, mu, n, query_count })
    }

    /// The encoded operator `mu * (<0|^a ⊗ I) U (|0>^a ⊗ I)`.
    pub fn block(&self) -> DMatrix<Complex64> {
        self.unitary.view((0, 0), (self.n, self.n)).into_owned()
            * Complex64::new(self.mu, 0.0)
    }

    /// Deviation of `U^† U` from the identity, for invariant checks.
    pub fn unitarity_error(&self) -> f64 {
        unitarity_deviation(&self.unitary)
    }
}

/// One-ancilla dilation `[[A, B], [B, -A]]` with `B = sqrt(I - A^2)`: an
/// exact `(1, 1)`-block-encoding of a Hermitian contraction. The square root
/// goes through the spectral decomposition (input preparation, not a solve
/// path); eigenvalues of `I - A^2` are clamped at zero before the root since
/// rounding can push them to `-1e-17`.
pub fn dilate(a: &DenseHermitian) -> Result<BlockEncoding, BlockEncodingError> {
    let n = a.n();
    let (vals, _) = a.eigen();
    let max_abs = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs > 1.0 + 1e-12 {
        return Err(BlockEncodingError::NormTooLarge(max_abs));
    }
    let b = a.map_spectrum(|l| (1.0 - l * l).max(0.0).sqrt());
    let mut u = DMatrix::from_element(2 * n, 2 * n, ZERO);
    for i in 0..n {
        for j in 0..n {
            let aij = a.matrix()[(i, j)];
            let bij = b[(i, j)];
            u[(i, j)] = aij;
            u[(i, j + n)] = bij;
            u[(i + n, j)] = bij;
            u[(i + n, j + n)] = -aij;
        }
    }
    BlockEncoding::checked(u, 1, 1.0, n, 1)
}

/// The walk operator `W = (2Π - I) U_A^† (2Π - I) U_A` of a single-ancilla
/// block-encoding, with `Π` the ancilla-zero projector. Two oracle factors.
pub fn w_operator(be: &BlockEncoding) -> Result<DMatrix<Complex64>, BlockEncodingError> {
    if be.ancillas != 1 {
        return Err(BlockEncodingError::AncillaMismatch { expected: 1, got: be.ancillas });
    }
    let refl = reflection(be.n);
    let w = &refl * be.unitary.adjoint() * &refl * &be.unitary;
    let dev = unitarity_deviation(&w);
    if dev > UNITARITY_TOL {
        return Err(BlockEncodingError::NotUnitary(dev));
    }
    Ok(w)
}

/// `2Π - I` on ancilla ⊗ system for a single ancilla: `diag(I_n, -I_n)`.
fn reflection(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            ZERO
        } else if i < n {
            ONE
        } else {
            -ONE
        }
    })
}

/// `e^{i phi (2Π - I)} = diag(e^{i phi} I_n, e^{-i phi} I_n)`.
fn phase_op(n: usize, phi: f64) -> DMatrix<Complex64> {
    let plus = Complex64::from_polar(1.0, phi);
    let minus = Complex64::from_polar(1.0, -phi);
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            ZERO
        } else if i < n {
            plus
        } else {
            minus
        }
    })
}

/// Block-encoding of `T_t(A)` for odd `t = 2k + 1`: the circuit `U_A W^k`,
/// which uses exactly `t` oracle factors.
pub fn chebyshev_block(
    be: &BlockEncoding,
    t: usize,
) -> Result<BlockEncoding, BlockEncodingError> {
    if t % 2 == 0 {
        return Err(BlockEncodingError::EvenDegree(t));
    }
    let k = (t - 1) / 2;
    let w = w_operator(be)?;
    let mut u = be.unitary.clone();
    for _ in 0..k {
        u = &u * &w;
    }
    BlockEncoding::checked(u, 1, 1.0, be.n, 2 * k + 1)
}

/// Extracted block of the symmetrized phased alternating sequence: the
/// average of the `Φ` and `-Φ` circuit blocks (the single-qubit `|+>`
/// conjugation collapses to that average at the block level).
///
/// For odd length the sequence is
/// `e^{i phi_1 (2Π-I)} U_A prod_j [e^{i phi_{2j} (2Π-I)} U_A^† e^{i phi_{2j+1} (2Π-I)} U_A]`;
/// for even length the leading phase and `U_A` pair are absent. With the
/// Chebyshev phases `phi_1 = (1 - t) pi/2`, `phi_i = pi/2` the block equals
/// `T_t(A)`, matching [`chebyshev_block`].
pub fn qsvt_sequence(
    be: &BlockEncoding,
    phases: &[f64],
) -> Result<DMatrix<Complex64>, BlockEncodingError> {
    if be.ancillas != 1 {
        return Err(BlockEncodingError::AncillaMismatch { expected: 1, got: be.ancillas });
    }
    if phases.is_empty() {
        return Err(BlockEncodingError::BadParameter("empty phase vector".into()));
    }
    let n = be.n;
    let build = |sign: f64| -> DMatrix<Complex64> {
        let t = phases.len();
        let mut u: DMatrix<Complex64>;
        let mut idx; // next phase to consume (0-based)
        if t % 2 == 1 {
            u = phase_op(n, sign * phases[0]) * &be.unitary;
            idx = 1;
        } else {
            u = DMatrix::identity(2 * n, 2 * n);
            idx = 0;
        }
        while idx + 1 < t {
            let factor = phase_op(n, sign * phases[idx])
                * be.unitary.adjoint()
                * phase_op(n, sign * phases[idx + 1])
                * &be.unitary;
            u = &u * factor;
            idx += 2;
        }
        u
    };
    let u_plus = build(1.0);
    let u_minus = build(-1.0);
    let half = Complex64::new(0.5, 0.0);
    let block = (u_plus.view((0, 0), (n, n)).into_owned()
        + u_minus.view((0, 0), (n, n)).into_owned())
        * half;
    Ok(block)
}

/// The Chebyshev phase vector of length `t`: `phi_1 = (1 - t) pi/2`, the
/// rest `pi/2`.
pub fn chebyshev_phases(t: usize) -> Vec<f64> {
    let mut phases = vec![std::f64::consts::FRAC_PI_2; t];
    if t > 0 {
        phases[0] = (1.0 - t as f64) * std::f64::consts::FRAC_PI_2;
    }
    phases
}

/// Embed a unitary with first column equal to `v` (Householder completion);
/// `v` must be a unit vector with real entries.
fn prepare_unitary(v: &DVector<f64>) -> DMatrix<Complex64> {
    let m = v.len();
    let mut w = v.clone();
    w[0] -= 1.0; // w = v - e_0
    let norm2 = w.norm_squared();
    let mut u = DMatrix::<Complex64>::identity(m, m);
    if norm2 > 1e-30 {
        for i in 0..m {
            for j in 0..m {
                let h = -2.0 * w[i] * w[j] / norm2;
                u[(i, j)] += Complex64::new(h, 0.0);
            }
        }
    }
    u
}

/// Linear-combination circuit for an odd Chebyshev series
/// `p(A) = sum_i c_i T_{2i+1}(A)`.
///
/// A counter register of `ceil(log2 t) + 1` qubits drives the select
/// operator `sum_i |i><i| ⊗ (U_A W^i)` (binary-controlled powers
/// `W, W^2, W^4, ...` followed by one `U_A`); conjugating by the preparation
/// pair for `sqrt(|c_i|)` — with the signs of `c_i` folded into the left
/// preparation — yields a `||c||_1`-block-encoding of `p(A)`. Unused counter
/// basis states get zero preparation amplitude.
pub fn lcu_apply(
    be: &BlockEncoding,
    c: &ChebSeries,
) -> Result<BlockEncoding, BlockEncodingError> {
    if be.ancillas != 1 {
        return Err(BlockEncodingError::AncillaMismatch { expected: 1, got: be.ancillas });
    }
    if c.parity != chebinv_core::Parity::Odd {
        return Err(BlockEncodingError::BadParameter(
            "linear-combination circuit expects an odd series".into(),
        ));
    }
    let t = c.coeffs.len();
    let Some(i_max) = c.coeffs.iter().rposition(|&x| x != 0.0) else {
        return Err(BlockEncodingError::ZeroCoefficients);
    };
    let counter_qubits = (usize::BITS - (t - 1).leading_zeros()) as usize + 1;
    let counter_dim = 1usize << counter_qubits;
    let sub = 2 * be.n; // ancilla ⊗ system dimension
    let dim = counter_dim * sub;
    let norm1 = c.coeff_norm();

    // preparation vectors: right carries sqrt(|c_i|)/sqrt(||c||_1), left
    // additionally carries the sign of c_i
    let mut right = DVector::<f64>::zeros(counter_dim);
    let mut left = DVector::<f64>::zeros(counter_dim);
    for (i, &ci) in c.coeffs.iter().enumerate() {
        let amp = (ci.abs() / norm1).sqrt();
        right[i] = amp;
        left[i] = if ci < 0.0 { -amp } else { amp };
    }
    let p_right = prepare_unitary(&right);
    let p_left = prepare_unitary(&left);

    // select blocks D_i = U_A W^i
    let w = w_operator(be)?;
    let mut blocks: Vec<DMatrix<Complex64>> = Vec::with_capacity(counter_dim);
    let mut cur = be.unitary.clone();
    for i in 0..counter_dim {
        if i > 0 {
            cur = &cur * &w;
        }
        blocks.push(cur.clone());
    }

    // assemble (P_left^† ⊗ I) · SELECT · (P_right ⊗ I)
    let mut u = DMatrix::<Complex64>::zeros(dim, dim);
    for bi in 0..counter_dim {
        for bj in 0..counter_dim {
            let mut scale_sum = DMatrix::<Complex64>::zeros(sub, sub);
            let mut nonzero = false;
            for (j, block) in blocks.iter().enumerate() {
                let coef = p_left[(j, bi)].conj() * p_right[(j, bj)];
                if coef.norm() > 0.0 {
                    scale_sum += block * coef;
                    nonzero = true;
                }
            }
            if nonzero {
                for r in 0..sub {
                    for col in 0..sub {
                        u[(bi * sub + r, bj * sub + col)] = scale_sum[(r, col)];
                    }
                }
            }
        }
    }
    BlockEncoding::checked(u, counter_qubits as u32 + 1, norm1, be.n, 2 * i_max + 1)
}

/// Output of one linear-system application: the full post-circuit state, the
/// success amplitude of the all-ancillas-zero branch, and the residual of
/// the normalized solution candidate.
#[derive(Debug, Clone)]
pub struct QlsOutput {
    /// Statevector over counter ⊗ ancilla ⊗ system after the circuit.
    pub state: DVector<Complex64>,
    /// Norm of the ancilla-zero branch, `||q_t(A) b|| / ||c||_1`.
    pub alpha: f64,
    /// `|| A x / ||A x|| - b ||` for the normalized solution candidate `x`.
    pub residual: f64,
    /// Oracle factors along the deepest path: `2t - 1` for the order-`t`
    /// Chebyshev-iteration polynomial.
    pub query_count: usize,
}

impl QlsOutput {
    /// The normalized solution candidate (ancilla-zero system branch).
    pub fn solution(&self, n: usize) -> DVector<Complex64> {
        let branch = self.state.rows(0, n).into_owned();
        let norm = branch.norm();
        branch / Complex64::new(norm, 0.0)
    }
}

/// Apply the Chebyshev-iteration inverse polynomial to `|b>` through the
/// linear-combination circuit: build `q_t` for the given `kappa`, run
/// [`lcu_apply`], and apply the result to `|0...0>|b>`.
pub fn solve_qls(
    be: &BlockEncoding,
    b: &DVector<Complex64>,
    t: usize,
    kappa: f64,
) -> Result<QlsOutput, BlockEncodingError> {
    if (b.norm() - 1.0).abs() > 1e-10 {
        return Err(BlockEncodingError::BadParameter(format!(
            "right-hand side must be a unit vector, norm {}",
            b.norm()
        )));
    }
    if b.len() != be.n {
        return Err(BlockEncodingError::BadParameter(format!(
            "dimension mismatch: encoding is {}, b is {}",
            be.n,
            b.len()
        )));
    }
    let coeffs = chebiter_coeffs(t, kappa);
    let lcu = lcu_apply(be, &coeffs)?;
    let dim = lcu.unitary.nrows();
    let mut input = DVector::<Complex64>::zeros(dim);
    for i in 0..be.n {
        input[i] = b[i];
    }
    let state = &lcu.unitary * input;
    let alpha = state.rows(0, be.n).norm();
    // residual of the normalized candidate against |b>
    let x = state.rows(0, be.n).into_owned();
    let ax = encoded_block(be) * &x;
    let ax_norm = ax.norm();
    let residual = if ax_norm > 0.0 {
        (ax / Complex64::new(ax_norm, 0.0) - b).norm()
    } else {
        f64::NAN
    };
    Ok(QlsOutput { state, alpha, residual, query_count: lcu.query_count })
}

/// The operator encoded in the base block-encoding.
fn encoded_block(be: &BlockEncoding) -> DMatrix<Complex64> {
    be.unitary.view((0, 0), (be.n, be.n)).into_owned() * Complex64::new(be.mu, 0.0)
}
