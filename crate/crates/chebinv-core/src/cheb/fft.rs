//! Self-contained radix-2 FFT and the DCT-II built on it.
//!
//! The DCT maps values at the roots of `T_m` to unnormalized Chebyshev sums:
//! `dct2(v)[k] = sum_j v[j] * cos(pi * k * (2j+1) / (2m))`. It uses the
//! even/odd reshuffle that reduces a length-`m` DCT-II to a length-`m`
//! complex FFT with a post-twiddle, so only power-of-two lengths are
//! supported.

use num_complex::Complex64;
use std::f64::consts::PI;

/// In-place iterative radix-2 FFT with kernel `exp(-2 pi i k n / m)`.
/// `data.len()` must be a power of two.
fn fft_in_place(data: &mut [Complex64]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let ang = -2.0 * PI / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        let mut i = 0;
        while i < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = data[i + k];
                let v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
}

/// DCT-II of a power-of-two-length slice.
pub fn dct2(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    debug_assert!(m.is_power_of_two());
    if m == 1 {
        return vec![values[0]];
    }
    // Even entries in order, odd entries reversed into the back half.
    let mut work = vec![Complex64::new(0.0, 0.0); m];
    for n in 0..m / 2 {
        work[n] = Complex64::new(values[2 * n], 0.0);
        work[m - 1 - n] = Complex64::new(values[2 * n + 1], 0.0);
    }
    fft_in_place(&mut work);
    let mut out = vec![0.0; m];
    for (k, item) in out.iter_mut().enumerate() {
        let ang = -PI * k as f64 / (2.0 * m as f64);
        let tw = Complex64::new(ang.cos(), ang.sin());
        *item = (tw * work[k]).re;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dct2_matches_direct_sum() {
        let values: Vec<f64> = (0..16).map(|i| ((i * i + 3) % 7) as f64 - 3.0).collect();
        let m = values.len();
        let fast = dct2(&values);
        for k in 0..m {
            let direct: f64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * (PI * k as f64 * (2 * j + 1) as f64 / (2.0 * m as f64)).cos())
                .sum();
            assert!(
                (fast[k] - direct).abs() <= 1e-12,
                "k={k}: {} vs {direct}",
                fast[k]
            );
        }
    }

    #[test]
    fn fft_inverts_delta() {
        let mut data = vec![Complex64::new(0.0, 0.0); 8];
        data[1] = Complex64::new(1.0, 0.0);
        fft_in_place(&mut data);
        for (k, z) in data.iter().enumerate() {
            let ang = -2.0 * PI * k as f64 / 8.0;
            assert!((z - Complex64::new(ang.cos(), ang.sin())).norm() < 1e-14);
        }
    }
}
