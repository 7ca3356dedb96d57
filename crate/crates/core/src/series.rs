//! Truncated complex power-series arithmetic.
//!
//! A [`TruncatedSeries`] stores the coefficients `c0..cN` of an analytic germ
//! to a fixed order `N`. Every binary operation truncates its result to the
//! minimum order of the operands, so a series never pretends to know more
//! coefficients than its inputs justify.

use num_complex::Complex64;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Errors raised by series operations whose preconditions fail.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    /// Division requires the divisor to have a nonzero constant term.
    #[error("division requires a nonzero constant term")]
    ZeroConstantTerm,
    /// Composition substitutes the inner series into the outer one, so the
    /// inner constant term must vanish.
    #[error("composition requires the inner series to have zero constant term")]
    NonzeroInnerConstant,
    /// `log`/`sqrt` are normalized at 1.
    #[error("{op} requires constant term 1, got {got}")]
    BadConstantTerm { op: &'static str, got: Complex64 },
    /// Dividing by z drops the lowest coefficient, which must be zero.
    #[error("division by z requires zero constant term and order >= 1")]
    BadShift,
}

/// Complex coefficients `c0..cN` of a power series truncated at degree `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Build a series from its coefficient vector (`coeffs[k]` is the degree-k
    /// coefficient). Panics if empty: order 0 means a single constant term.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c0");
        Self { coeffs }
    }

    /// Series with the given real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The identity series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    /// Truncation degree `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree-k coefficient; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Largest coefficient-wise distance to another series, comparing up to
    /// the shorter order and treating missing coefficients as zero there.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Drop coefficients above `order` (never pads).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    /// Cauchy product truncated at the minimum order of the operands.
    ///
    /// The convolution is accumulated symmetrically (pairing `a_k b_{m-k}`
    /// with `a_{m-k} b_k`), which makes `a.mul(b)` bit-identical to
    /// `b.mul(a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![ZERO; n + 1];
        for (m, slot) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            let mut k = 0;
            while 2 * k < m {
                acc += self.coeff(k) * rhs.coeff(m - k) + self.coeff(m - k) * rhs.coeff(k);
                k += 1;
            }
            if 2 * k == m {
                acc += self.coeff(k) * rhs.coeff(k);
            }
            *slot = acc;
        }
        Self { coeffs: out }
    }

    /// Quotient `q` with `q.mul(rhs) == self` up to truncation.
    #[allow(clippy::needless_range_loop)]
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let b0 = rhs.coeff(0);
        if b0.norm() == 0.0 {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.order().min(rhs.order());
        let mut q = vec![ZERO; n + 1];
        for m in 0..=n {
            let mut acc = self.coeff(m);
            for k in 0..m {
                acc -= q[k] * rhs.coeff(m - k);
            }
            q[m] = acc / b0;
        }
        Ok(Self { coeffs: q })
    }

    /// Substitute `inner` into `self`, truncating to the common order.
    /// Computed by accumulating powers of the inner series.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if inner.coeff(0) != ZERO {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeff(0), n);
        let mut power = Self::one(n);
        for k in 1..=n {
            power = power.mul(&inner);
            acc = acc.add(&power.scale(self.coeff(k)));
        }
        Ok(acc)
    }

    /// Exponential of the series: `b = exp(a)` via `b' = a' b`, so
    /// `n b_n = sum_{k=1..n} k a_k b_{n-k}` with `b0 = exp(a0)`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut b = vec![ZERO; n + 1];
        b[0] = self.coeff(0).exp();
        for m in 1..=n {
            let mut acc = ZERO;
            for k in 1..=m {
                acc += (k as f64) * self.coeff(k) * b[m - k];
            }
            b[m] = acc / (m as f64);
        }
        Self { coeffs: b }
    }

    /// Logarithm of a series with constant term 1, inverse of [`Self::exp`]
    /// up to truncation.
    #[allow(clippy::needless_range_loop)]
    pub fn log(&self) -> Result<Self, SeriesError> {
        self.check_unit_constant("log")?;
        let n = self.order();
        let a0 = self.coeff(0);
        let mut l = vec![ZERO; n + 1];
        // a = exp(l) gives n a_n = sum_{k=1..n} k l_k a_{n-k}; solve for l_n.
        for m in 1..=n {
            let mut acc = (m as f64) * self.coeff(m);
            for k in 1..m {
                acc -= (k as f64) * l[k] * self.coeff(m - k);
            }
            l[m] = acc / ((m as f64) * a0);
        }
        Ok(Self { coeffs: l })
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        self.check_unit_constant("sqrt")?;
        let n = self.order();
        let mut s = vec![ZERO; n + 1];
        s[0] = self.coeff(0).sqrt();
        let two_s0 = s[0] + s[0];
        for m in 1..=n {
            let mut acc = self.coeff(m);
            for k in 1..m {
                acc -= s[k] * s[m - k];
            }
            s[m] = acc / two_s0;
        }
        Ok(Self { coeffs: s })
    }

    fn check_unit_constant(&self, op: &'static str) -> Result<(), SeriesError> {
        let c0 = self.coeff(0);
        if (c0 - ONE).norm() > 1e-9 {
            return Err(SeriesError::BadConstantTerm { op, got: c0 });
        }
        Ok(())
    }

    /// `int_0^z (a(t) - a(0)) / t dt`: zero constant term, `c_k = a_k / k`
    /// for `k >= 1`.
    pub fn integrate_shifted(&self) -> Self {
        let mut out = vec![ZERO; self.order() + 1];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = self.coeff(k) / (k as f64);
        }
        Self { coeffs: out }
    }

    /// Antiderivative vanishing at 0: `c_k = a_{k-1} / k`. The result keeps
    /// the same order, so the top input coefficient is dropped.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![ZERO; self.order() + 1];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = self.coeff(k - 1) / (k as f64);
        }
        Self { coeffs: out }
    }

    /// Multiply by `z`, keeping the order (the top input coefficient is
    /// dropped).
    pub fn mul_z(&self) -> Self {
        let n = self.order();
        let mut out = vec![ZERO; n + 1];
        out[1..].copy_from_slice(&self.coeffs[..n]);
        Self { coeffs: out }
    }

    /// Divide by `z`. Requires a zero constant term; the result honestly
    /// loses one order.
    pub fn div_z(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 || self.coeff(0) != ZERO {
            return Err(SeriesError::BadShift);
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }
}

// Series travel as JSON arrays of [re, im] pairs, index = degree.
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        if pairs.is_empty() {
            return Err(D::Error::custom(
                "series needs at least the constant coefficient",
            ));
        }
        Ok(Self::new(
            pairs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        ))
    }
}
