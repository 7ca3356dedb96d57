//! Shared fixtures for the benchmark targets.

use num_complex::Complex64;

use toeplitz_sharp_core::classes::{phi_named, MindaGenerator};
use toeplitz_sharp_core::series::TruncatedSeries;

/// The extreme generator (1+z)/(1-z); its starlike family is the classical
/// full class.
pub fn koebe_generator(order: usize) -> MindaGenerator {
    phi_named("janowski", &[("A", 1.0), ("B", -1.0)], order).unwrap()
}

/// A dense series with non-trivial real and imaginary parts at every degree.
pub fn dense_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::new(
        (0..=order)
            .map(|k| {
                let x = k as f64;
                Complex64::new((0.3 * x).sin() * 0.8 + 0.1, (0.7 * x).cos() * 0.5)
            })
            .collect(),
    )
}

/// Koebe coefficients a_n = n, long enough for T_{8,1}.
pub fn koebe_coefficients(len: usize) -> Vec<Complex64> {
    (1..=len).map(|n| Complex64::new(n as f64, 0.0)).collect()
}
