//! Uniform-grid synthesis and analysis of trigonometric polynomials.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Values of Σ c_k e^{i n_k θ} at θ_j = 2πj/n, j = 0..n.
///
/// Frequencies are folded modulo n, which is exact on the grid.
pub fn synthesize(terms: &[(i64, Complex64)], n: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let m = n as i64;
    for &(freq, c) in terms {
        buf[freq.rem_euclid(m) as usize] += c;
    }
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n).process(&mut buf));
    buf
}

/// Discrete Fourier projection (1/n) Σ_j v_j e^{−ikθ_j}, indexed by k mod n.
pub fn analyze(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n).process(&mut buf));
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}
