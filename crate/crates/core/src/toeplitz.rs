//! Hermitian-Toeplitz matrices built from initial Taylor coefficients, and
//! their determinants.
//!
//! `T_{m,n}(f)` is the m x m matrix with `a_{n+k-j}` above the diagonal and
//! conjugated entries below it. For `n = 1` (where `a_1 = 1`) the matrix is
//! Hermitian and its determinant real. The closed forms for m <= 3 are the
//! source of truth; the general determinant exists for cross-checking and
//! experiments with larger m.

use num_complex::Complex64;
use thiserror::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToeplitzError {
    #[error("T_{{{m},{n}}} needs coefficients a_1..a_{needed}, got {got}")]
    InsufficientCoefficients {
        m: usize,
        n: usize,
        needed: usize,
        got: usize,
    },
    #[error("matrix size and start index must be at least 1")]
    BadShape,
}

/// `det T_{2,1} = 1 - |a2|^2`.
pub fn det_t21(a2: Complex64) -> f64 {
    1.0 - a2.norm_sqr()
}

/// `det T_{3,1} = 2 Re(a2^2 conj(a3)) - 2|a2|^2 - |a3|^2 + 1`.
pub fn det_t31(a2: Complex64, a3: Complex64) -> f64 {
    2.0 * (a2 * a2 * a3.conj()).re - 2.0 * a2.norm_sqr() - a3.norm_sqr() + 1.0
}

/// `det T_{2,2} = a2^2 - |a3|^2` (complex in general).
pub fn det_t22(a2: Complex64, a3: Complex64) -> Complex64 {
    a2 * a2 - a3.norm_sqr()
}

pub fn abs_det_t22(a2: Complex64, a3: Complex64) -> f64 {
    det_t22(a2, a3).norm()
}

/// An `m x m` Toeplitz matrix starting at coefficient index `n`, over the
/// sequence `a_1 = coeffs[0], a_2 = coeffs[1], ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpec {
    m: usize,
    n: usize,
    coeffs: Vec<Complex64>,
}

impl ToeplitzSpec {
    pub fn new(m: usize, n: usize, coeffs: Vec<Complex64>) -> Result<Self, ToeplitzError> {
        if m < 1 || n < 1 {
            return Err(ToeplitzError::BadShape);
        }
        let needed = n + m - 1;
        if coeffs.len() < needed {
            return Err(ToeplitzError::InsufficientCoefficients {
                m,
                n,
                needed,
                got: coeffs.len(),
            });
        }
        Ok(Self { m, n, coeffs })
    }

    /// Coefficient `a_idx` (1-based).
    fn a(&self, idx: usize) -> Complex64 {
        self.coeffs[idx - 1]
    }

    /// Dense row-major matrix: entry `(j, k)` is `a_{n+k-j}` for `k >= j`
    /// and the conjugate of `a_{n+j-k}` below the diagonal.
    pub fn matrix(&self) -> Vec<Vec<Complex64>> {
        (0..self.m)
            .map(|j| {
                (0..self.m)
                    .map(|k| {
                        if k >= j {
                            self.a(self.n + k - j)
                        } else {
                            self.a(self.n + j - k).conj()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Determinant by LU elimination with partial pivoting. Sizes stay small
/// (m <= 8), so conditioning is a non-issue.
#[allow(clippy::needless_range_loop)]
pub fn det_general(spec: &ToeplitzSpec) -> Complex64 {
    let mut a = spec.matrix();
    let m = spec.m;
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&r, &s| a[r][col].norm().total_cmp(&a[s][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return ZERO;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..m {
            let factor = a[row][col] / a[col][col];
            for k in col..m {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn t21_closed_form() {
        assert_eq!(det_t21(ZERO), 1.0);
        assert_eq!(det_t21(re(2.0)), -3.0);
        assert!((det_t21(re(1.5)) - (-1.25)).abs() < 1e-15);
    }

    #[test]
    fn t31_closed_form() {
        assert!((det_t31(re(2.0), re(3.0)) - 8.0).abs() < 1e-15);
        assert_eq!(det_t31(ZERO, ZERO), 1.0);
        assert!((det_t31(re(1.5), re(5.0 / 3.0)) - 11.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn t22_closed_form() {
        assert_eq!(det_t22(ZERO, ZERO), ZERO);
        let v = abs_det_t22(Complex64::new(0.0, 1.5), re(-5.0 / 3.0));
        assert!((v - 181.0 / 36.0).abs() < 1e-14);
        let w = abs_det_t22(Complex64::new(0.0, 1.0), re(-1.0));
        assert!((w - 2.0).abs() < 1e-15);
    }

    #[test]
    fn general_matches_closed_forms() {
        // Koebe: a_n = n.
        let coeffs: Vec<Complex64> = (1..=4).map(|n| re(n as f64)).collect();
        let spec = ToeplitzSpec::new(3, 1, coeffs.clone()).unwrap();
        let d = det_general(&spec);
        assert!((d.re - 8.0).abs() < 1e-12);
        assert!(d.im.abs() < 1e-12);

        let spec1 = ToeplitzSpec::new(1, 1, coeffs.clone()).unwrap();
        assert_eq!(det_general(&spec1), re(1.0));

        // f7 over z/(1-z): a2 = 3i/2, a3 = -5/3.
        let f7 = vec![re(1.0), Complex64::new(0.0, 1.5), re(-5.0 / 3.0)];
        let spec22 = ToeplitzSpec::new(2, 2, f7).unwrap();
        assert!((det_general(&spec22).norm() - 181.0 / 36.0).abs() < 1e-12);
    }

    #[test]
    fn insufficient_coefficients() {
        let err = ToeplitzSpec::new(3, 2, vec![re(1.0), re(2.0)]).unwrap_err();
        assert!(matches!(
            err,
            ToeplitzError::InsufficientCoefficients {
                needed: 4,
                got: 2,
                ..
            }
        ));
        assert!(matches!(
            ToeplitzSpec::new(0, 1, vec![]),
            Err(ToeplitzError::BadShape)
        ));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn hermitian_structure() {
        let coeffs = vec![re(1.0), Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.1)];
        let spec = ToeplitzSpec::new(3, 1, coeffs).unwrap();
        let m = spec.matrix();
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(m[j][k], m[k][j].conj());
            }
        }
    }
}
