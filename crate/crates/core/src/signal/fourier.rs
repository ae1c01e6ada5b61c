//! FFT engine access and the chirp (Bluestein) sums used for evaluation on
//! non-commensurate lattices.
//!
//! Plans are cached behind a mutex that is only held while planning, so every
//! entry point here is reentrant and callable from many threads at once.

use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut guard = planner().lock().unwrap_or_else(|e| e.into_inner());
    if inverse {
        guard.plan_fft_inverse(len)
    } else {
        guard.plan_fft_forward(len)
    }
}

/// Unnormalized forward transform: `X_k = sum_j x_j e^{-2 pi i jk/n}`.
pub fn fft_forward(buf: &mut [Complex64]) {
    if buf.len() > 1 {
        plan(buf.len(), false).process(buf);
    }
}

/// Unnormalized inverse transform: `x_j = sum_k X_k e^{+2 pi i jk/n}`.
pub fn fft_inverse(buf: &mut [Complex64]) {
    if buf.len() > 1 {
        plan(buf.len(), true).process(buf);
    }
}

/// Computes `X_m = sum_{j<N} x_j e^{i alpha j m}` for `m < m_out` in
/// `O((N + M) log(N + M))` via Bluestein's identity `jm = (j^2 + m^2 - (m-j)^2)/2`.
pub fn chirp_sum(x: &[Complex64], alpha: f64, m_out: usize) -> Vec<Complex64> {
    let n_in = x.len();
    if n_in == 0 || m_out == 0 {
        return vec![Complex64::new(0.0, 0.0); m_out];
    }
    let chirp = |d: f64| Complex64::from_polar(1.0, 0.5 * alpha * d * d);
    let len = (n_in + m_out - 1).next_power_of_two();

    let mut a = vec![Complex64::new(0.0, 0.0); len];
    for (j, (slot, &v)) in a.iter_mut().zip(x).enumerate() {
        *slot = v * chirp(j as f64);
    }
    let mut b = vec![Complex64::new(0.0, 0.0); len];
    for (d, slot) in b.iter_mut().take(m_out).enumerate() {
        *slot = chirp(d as f64).conj();
    }
    for d in 1..n_in {
        b[len - d] = chirp(d as f64).conj();
    }

    fft_forward(&mut a);
    fft_forward(&mut b);
    for (u, v) in a.iter_mut().zip(&b) {
        *u *= v;
    }
    fft_inverse(&mut a);

    let scale = 1.0 / len as f64;
    (0..m_out).map(|m| a[m] * scale * chirp(m as f64)).collect()
}
