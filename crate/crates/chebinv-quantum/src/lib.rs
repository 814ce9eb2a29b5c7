//! Dense simulation of block-encoded polynomial circuits.
//!
//! Everything here is straight matrix algebra on statevector-sized unitaries:
//! no gate decomposition, no noise model. The object of study is the identity
//! between three routes to `T_t(A)` — the reflection/walk form `U_A W^k`, the
//! phased alternating sequence with Chebyshev angles, and the spectral
//! definition — and the linear-combination circuit that assembles `q_t(A)`
//! from odd Chebyshev pieces with a counter register.

pub mod blockenc;

pub use blockenc::{
    chebyshev_block, dilate, lcu_apply, qsvt_sequence, solve_qls, w_operator, BlockEncoding,
    BlockEncodingError, QlsOutput,
};
