//! Generator registry and coefficient machinery for the three function
//! families.
//!
//! A starlike or convex family is described by a generator `phi` with
//! `phi(0) = 1`, real coefficients and `B1 = phi'(0) > 0`; a close-to-convex
//! family is described by a normalized base `g` (`g(0) = 0`, `g'(0) = 1`).
//! From either description this module produces the initial Taylor
//! coefficients `a2, a3` of class members, both through exact closed
//! formulas on the coefficient body and through the full series recurrences,
//! plus the seven extremal functions that attain the sharp determinant
//! bounds.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{SeriesError, TruncatedSeries};

/// Default truncation order. The determinants only need `a2, a3`; the
/// headroom keeps shift/compose truncation away from the coefficients that
/// matter and leaves room for higher-order experiments.
pub const DEFAULT_ORDER: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassError {
    #[error("unknown class '{0}' (use `classes list` for the registry; custom generators load from a series file)")]
    UnknownClass(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("extremal {id} is not defined for the {family} family")]
    IncompatibleExtremal {
        id: ExtremalId,
        family: &'static str,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Generator `phi(z) = 1 + B1 z + B2 z^2 + B3 z^3 + ...` of a starlike or
/// convex family: real coefficients, `B1 in (0, 2]`, `B2 in [-2, 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MindaGenerator {
    name: String,
    series: TruncatedSeries,
}

impl MindaGenerator {
    /// Validate and wrap a generator series. Imaginary parts are discarded
    /// after checking they are negligible.
    pub fn from_series(
        name: impl Into<String>,
        series: TruncatedSeries,
    ) -> Result<Self, ClassError> {
        let name = name.into();
        if (series.coeff(0) - ONE).norm() > 1e-9 {
            return Err(ClassError::BadParams(format!(
                "generator '{name}' must have constant term 1, got {}",
                series.coeff(0)
            )));
        }
        for k in 0..=series.order() {
            if series.coeff(k).im.abs() > 1e-9 {
                return Err(ClassError::BadParams(format!(
                    "generator '{name}' must have real coefficients, degree {k} is {}",
                    series.coeff(k)
                )));
            }
        }
        let real: Vec<f64> = (0..=series.order()).map(|k| series.coeff(k).re).collect();
        let mut real = real;
        real[0] = 1.0;
        let series = TruncatedSeries::from_real(&real);
        let b1 = series.coeff(1).re;
        let b2 = series.coeff(2).re;
        if !(b1 > 0.0 && b1 <= 2.0 + 1e-12) {
            return Err(ClassError::BadParams(format!(
                "generator '{name}' needs B1 in (0, 2], got {b1}"
            )));
        }
        if !(-2.0 - 1e-12..=2.0 + 1e-12).contains(&b2) {
            return Err(ClassError::BadParams(format!(
                "generator '{name}' needs B2 in [-2, 2], got {b2}"
            )));
        }
        Ok(Self { name, series })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn b1(&self) -> f64 {
        self.series.coeff(1).re
    }

    pub fn b2(&self) -> f64 {
        self.series.coeff(2).re
    }

    /// Stored for completeness; no determinant bound depends on it.
    pub fn b3(&self) -> f64 {
        self.series.coeff(3).re
    }
}

/// Look up a built-in generator by name.
///
/// Registry: `janowski(A,B)`, `order(a)`, `strongly(a)`, `sin`, `parabolic`,
/// `sigmoid`, `nephroid`, `lemniscate`. Custom series come in through
/// [`MindaGenerator::from_series`] instead.
pub fn phi_named(
    name: &str,
    params: &[(&str, f64)],
    order: usize,
) -> Result<MindaGenerator, ClassError> {
    let get = |key: &str| -> Option<f64> {
        params
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(key))
            .map(|(_, v)| *v)
    };
    let require = |key: &str| -> Result<f64, ClassError> {
        get(key).ok_or_else(|| ClassError::BadParams(format!("'{name}' needs parameter {key}")))
    };
    match name.to_ascii_lowercase().as_str() {
        "janowski" => {
            let a = require("A")?;
            let b = require("B")?;
            janowski(a, b, order)
        }
        "order" => {
            let alpha = get("a").or_else(|| get("alpha")).ok_or_else(|| {
                ClassError::BadParams(format!("'{name}' needs parameter a (the order)"))
            })?;
            if !(0.0..1.0).contains(&alpha) {
                return Err(ClassError::BadParams(format!(
                    "order needs a in [0, 1), got {alpha}"
                )));
            }
            let phi = janowski(1.0 - 2.0 * alpha, -1.0, order)?;
            Ok(MindaGenerator {
                name: format!("order(a={alpha})"),
                ..phi
            })
        }
        "strongly" => {
            let alpha = get("a").or_else(|| get("alpha")).ok_or_else(|| {
                ClassError::BadParams(format!("'{name}' needs parameter a (the exponent)"))
            })?;
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(ClassError::BadParams(format!(
                    "strongly needs a in (0, 1], got {alpha}"
                )));
            }
            let cayley = one_plus_z(order).div(&one_minus_z(order))?;
            let series = cayley.log()?.scale(Complex64::new(alpha, 0.0)).exp();
            MindaGenerator::from_series(format!("strongly(a={alpha})"), series)
        }
        "sin" => {
            // 1 + sin z
            let mut c = vec![0.0; order + 1];
            c[0] = 1.0;
            let mut factorial = 1.0;
            for (k, slot) in c.iter_mut().enumerate().skip(1) {
                factorial *= k as f64;
                if k % 2 == 1 {
                    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    *slot = sign / factorial;
                }
            }
            MindaGenerator::from_series("sin", TruncatedSeries::from_real(&c))
        }
        "parabolic" => {
            // 1 + (2/pi^2) (log((1+sqrt z)/(1-sqrt z)))^2. The square of the
            // odd artanh series in sqrt(z) has integer powers of z:
            // degree n picks up 4 * sum over odd j of 1/(j(2n-j)).
            let mut c = vec![0.0; order + 1];
            c[0] = 1.0;
            for (n, slot) in c.iter_mut().enumerate().skip(1) {
                let mut d = 0.0;
                let mut j = 1;
                while j < 2 * n {
                    d += 1.0 / ((j * (2 * n - j)) as f64);
                    j += 2;
                }
                *slot = 8.0 / (PI * PI) * d;
            }
            MindaGenerator::from_series("parabolic", TruncatedSeries::from_real(&c))
        }
        "sigmoid" => {
            // 2 / (1 + exp(-z))
            let minus_z = TruncatedSeries::z(order).neg();
            let denom = minus_z.exp().add(&TruncatedSeries::one(order));
            let series = TruncatedSeries::constant(Complex64::new(2.0, 0.0), order).div(&denom)?;
            MindaGenerator::from_series("sigmoid", series)
        }
        "nephroid" => {
            let mut c = vec![0.0; order + 1];
            c[0] = 1.0;
            if order >= 1 {
                c[1] = 1.0;
            }
            if order >= 3 {
                c[3] = -1.0 / 3.0;
            }
            MindaGenerator::from_series("nephroid", TruncatedSeries::from_real(&c))
        }
        "lemniscate" => {
            let series = one_plus_z(order).sqrt()?;
            MindaGenerator::from_series("lemniscate", series)
        }
        other => Err(ClassError::UnknownClass(other.to_string())),
    }
}

fn janowski(a: f64, b: f64, order: usize) -> Result<MindaGenerator, ClassError> {
    if !(-1.0 <= b && b < a && a <= 1.0) {
        return Err(ClassError::BadParams(format!(
            "janowski needs -1 <= B < A <= 1, got A={a}, B={b}"
        )));
    }
    let mut num = vec![0.0; order + 1];
    num[0] = 1.0;
    if order >= 1 {
        num[1] = a;
    }
    let mut den = vec![0.0; order + 1];
    den[0] = 1.0;
    if order >= 1 {
        den[1] = b;
    }
    let series = TruncatedSeries::from_real(&num).div(&TruncatedSeries::from_real(&den))?;
    MindaGenerator::from_series(format!("janowski(A={a},B={b})"), series)
}

fn one_plus_z(order: usize) -> TruncatedSeries {
    let mut c = vec![0.0; order + 1];
    c[0] = 1.0;
    if order >= 1 {
        c[1] = 1.0;
    }
    TruncatedSeries::from_real(&c)
}

fn one_minus_z(order: usize) -> TruncatedSeries {
    let mut c = vec![0.0; order + 1];
    c[0] = 1.0;
    if order >= 1 {
        c[1] = -1.0;
    }
    TruncatedSeries::from_real(&c)
}

/// One registry row for `classes list`.
pub struct RegistryEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub generator: &'static str,
}

pub fn registry() -> &'static [RegistryEntry] {
    &[
        RegistryEntry {
            name: "janowski",
            params: "A,B with -1 <= B < A <= 1",
            generator: "(1+Az)/(1+Bz)",
        },
        RegistryEntry {
            name: "order",
            params: "a in [0,1)",
            generator: "(1+(1-2a)z)/(1-z)",
        },
        RegistryEntry {
            name: "strongly",
            params: "a in (0,1]",
            generator: "((1+z)/(1-z))^a",
        },
        RegistryEntry {
            name: "sin",
            params: "",
            generator: "1+sin z",
        },
        RegistryEntry {
            name: "parabolic",
            params: "",
            generator: "1+(2/pi^2) log^2((1+sqrt z)/(1-sqrt z))",
        },
        RegistryEntry {
            name: "sigmoid",
            params: "",
            generator: "2/(1+exp(-z))",
        },
        RegistryEntry {
            name: "nephroid",
            params: "",
            generator: "1+z-z^3/3",
        },
        RegistryEntry {
            name: "lemniscate",
            params: "",
            generator: "sqrt(1+z)",
        },
    ]
}

/// Canonical instance of every registry class, as used by the verification
/// sweeps: the parameterized entries get their classical parameter choices.
pub fn canonical_generators(order: usize) -> Vec<MindaGenerator> {
    vec![
        phi_named("janowski", &[("A", 1.0), ("B", -1.0)], order).unwrap(),
        phi_named("order", &[("a", 0.5)], order).unwrap(),
        phi_named("strongly", &[("a", 0.5)], order).unwrap(),
        phi_named("sin", &[], order).unwrap(),
        phi_named("parabolic", &[], order).unwrap(),
        phi_named("sigmoid", &[], order).unwrap(),
        phi_named("nephroid", &[], order).unwrap(),
        phi_named("lemniscate", &[], order).unwrap(),
    ]
}

/// Normalized base `g(z) = z + b2 z^2 + b3 z^3 + ...` of a close-to-convex
/// family.
#[derive(Debug, Clone, PartialEq)]
pub struct CtcBase {
    name: String,
    series: TruncatedSeries,
}

impl CtcBase {
    pub fn from_series(
        name: impl Into<String>,
        series: TruncatedSeries,
    ) -> Result<Self, ClassError> {
        let name = name.into();
        if series.coeff(0).norm() > 1e-12 {
            return Err(ClassError::BadParams(format!(
                "base '{name}' must vanish at 0, got c0 = {}",
                series.coeff(0)
            )));
        }
        if (series.coeff(1) - ONE).norm() > 1e-9 {
            return Err(ClassError::BadParams(format!(
                "base '{name}' must be normalized (c1 = 1), got {}",
                series.coeff(1)
            )));
        }
        let mut coeffs: Vec<Complex64> = (0..=series.order()).map(|k| series.coeff(k)).collect();
        coeffs[0] = ZERO;
        coeffs[1] = ONE;
        Ok(Self {
            name,
            series: TruncatedSeries::new(coeffs),
        })
    }

    /// The named bases: `f1-base` = z/(1-z), `f2-base` = z/(1-z^2),
    /// `f3-base` (alias `koebe`) = z/(1-z)^2, `f4-base` = z/(1-z+z^2),
    /// `id` = z.
    pub fn named(name: &str, order: usize) -> Result<Self, ClassError> {
        let series = match name {
            "f1-base" => {
                let mut c = vec![1.0; order + 1];
                c[0] = 0.0;
                TruncatedSeries::from_real(&c)
            }
            "f2-base" => {
                let mut c = vec![0.0; order + 1];
                for (k, slot) in c.iter_mut().enumerate() {
                    if k % 2 == 1 {
                        *slot = 1.0;
                    }
                }
                TruncatedSeries::from_real(&c)
            }
            "f3-base" | "koebe" => {
                let c: Vec<f64> = (0..=order).map(|k| k as f64).collect();
                TruncatedSeries::from_real(&c)
            }
            "f4-base" => {
                let mut den = vec![0.0; order + 1];
                den[0] = 1.0;
                if order >= 1 {
                    den[1] = -1.0;
                }
                if order >= 2 {
                    den[2] = 1.0;
                }
                TruncatedSeries::one(order)
                    .div(&TruncatedSeries::from_real(&den))?
                    .mul_z()
            }
            "id" => TruncatedSeries::z(order),
            other => return Err(ClassError::UnknownClass(other.to_string())),
        };
        Self::from_series(name, series)
    }

    pub fn base_names() -> &'static [&'static str] {
        &["f1-base", "f2-base", "f3-base", "f4-base", "id"]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn b2(&self) -> Complex64 {
        self.series.coeff(2)
    }

    pub fn b3(&self) -> Complex64 {
        self.series.coeff(3)
    }
}

/// Which family a computation refers to.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Starlike(MindaGenerator),
    Convex(MindaGenerator),
    CloseToConvex(CtcBase),
}

impl FamilySpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            FamilySpec::Starlike(_) => "starlike",
            FamilySpec::Convex(_) => "convex",
            FamilySpec::CloseToConvex(_) => "ctc",
        }
    }

    /// Human-readable identifier used in reports.
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Starlike(phi) => format!("starlike[{}]", phi.name()),
            FamilySpec::Convex(phi) => format!("convex[{}]", phi.name()),
            FamilySpec::CloseToConvex(g) => format!("ctc[{}]", g.name()),
        }
    }
}

/// A point of the coefficient body: `p1 in [0, 2]` together with
/// `zeta` in the closed unit disk determines `p2` through
/// `2 p2 = p1^2 + (4 - p1^2) zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub p1: f64,
    pub zeta: Complex64,
}

impl SamplePoint {
    pub fn new(p1: f64, zeta: Complex64) -> Result<Self, ClassError> {
        if !(-1e-12..=2.0 + 1e-12).contains(&p1) {
            return Err(ClassError::BadParams(format!(
                "p1 must lie in [0, 2], got {p1}"
            )));
        }
        if zeta.norm() > 1.0 + 1e-12 {
            return Err(ClassError::BadParams(format!(
                "zeta must lie in the closed unit disk, got |zeta| = {}",
                zeta.norm()
            )));
        }
        Ok(Self { p1, zeta })
    }

    /// Second Caratheodory coefficient determined by this point; always
    /// satisfies `|p2| <= 2`.
    pub fn p2(&self) -> Complex64 {
        let p1sq = self.p1 * self.p1;
        (Complex64::new(p1sq, 0.0) + (4.0 - p1sq) * self.zeta) * 0.5
    }
}

/// `a2, a3` of a starlike-family member from raw Caratheodory coefficients.
pub fn a2a3_starlike_p(b1: f64, b2: f64, p1: Complex64, p2: Complex64) -> (Complex64, Complex64) {
    let a2 = 0.5 * b1 * p1;
    let a3 = ((b1 * b1 - b1 + b2) * p1 * p1 + 2.0 * b1 * p2) / 8.0;
    (a2, a3)
}

pub fn a2a3_starlike(b1: f64, b2: f64, s: &SamplePoint) -> (Complex64, Complex64) {
    a2a3_starlike_p(b1, b2, Complex64::new(s.p1, 0.0), s.p2())
}

/// `a2, a3` of a convex-family member from raw Caratheodory coefficients.
pub fn a2a3_convex_p(b1: f64, b2: f64, p1: Complex64, p2: Complex64) -> (Complex64, Complex64) {
    let a2 = 0.25 * b1 * p1;
    let a3 = ((b1 * b1 - b1 + b2) * p1 * p1 + 2.0 * b1 * p2) / 24.0;
    (a2, a3)
}

pub fn a2a3_convex(b1: f64, b2: f64, s: &SamplePoint) -> (Complex64, Complex64) {
    a2a3_convex_p(b1, b2, Complex64::new(s.p1, 0.0), s.p2())
}

/// `a2, a3` of a close-to-convex member over base coefficients `b2, b3`.
pub fn a2a3_ctc(
    b2: Complex64,
    b3: Complex64,
    p1: Complex64,
    p2: Complex64,
) -> (Complex64, Complex64) {
    let a2 = (b2 + p1) / 2.0;
    let a3 = (b3 + b2 * p1 + p2) / 3.0;
    (a2, a3)
}

/// Taylor coefficients of `f` solving `z f'/f = phi(omega(z))` for a Schwarz
/// series candidate `omega` (only `omega(0) = 0` is checked; the verification
/// sweeps stick to the exactly attainable coefficient body).
pub fn coeffs_starlike(
    phi: &MindaGenerator,
    omega: &TruncatedSeries,
) -> Result<TruncatedSeries, ClassError> {
    let c = phi.series().compose(omega)?;
    let n = c.order();
    let mut a = vec![ZERO; n + 1];
    if n >= 1 {
        a[1] = ONE;
    }
    for m in 2..=n {
        let mut acc = ZERO;
        for k in 1..m {
            acc += c.coeff(k) * a[m - k];
        }
        a[m] = acc / ((m - 1) as f64);
    }
    Ok(TruncatedSeries::new(a))
}

/// Taylor coefficients of `f` solving `1 + z f''/f' = phi(omega(z))`:
/// the derivative `q = f'` satisfies `m q_m = sum c_k q_{m-k}`, then
/// `a_{m+1} = q_m / (m+1)`.
pub fn coeffs_convex(
    phi: &MindaGenerator,
    omega: &TruncatedSeries,
) -> Result<TruncatedSeries, ClassError> {
    let c = phi.series().compose(omega)?;
    let n = c.order();
    let mut q = vec![ZERO; n + 1];
    q[0] = ONE;
    for m in 1..=n {
        let mut acc = ZERO;
        for k in 1..=m {
            acc += c.coeff(k) * q[m - k];
        }
        q[m] = acc / (m as f64);
    }
    Ok(TruncatedSeries::new(q).antiderivative())
}

/// Identifier of an extremal function constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
}

impl ExtremalId {
    pub const ALL: [ExtremalId; 7] = [
        ExtremalId::F1,
        ExtremalId::F2,
        ExtremalId::F3,
        ExtremalId::F4,
        ExtremalId::F5,
        ExtremalId::F6,
        ExtremalId::F7,
    ];
}

impl fmt::Display for ExtremalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtremalId::F1 => "f1",
            ExtremalId::F2 => "f2",
            ExtremalId::F3 => "f3",
            ExtremalId::F4 => "f4",
            ExtremalId::F5 => "f5",
            ExtremalId::F6 => "f6",
            ExtremalId::F7 => "f7",
        };
        f.write_str(s)
    }
}

impl FromStr for ExtremalId {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "f1" => Ok(ExtremalId::F1),
            "f2" => Ok(ExtremalId::F2),
            "f3" => Ok(ExtremalId::F3),
            "f4" => Ok(ExtremalId::F4),
            "f5" => Ok(ExtremalId::F5),
            "f6" => Ok(ExtremalId::F6),
            "f7" => Ok(ExtremalId::F7),
            other => Err(ClassError::UnknownClass(other.to_string())),
        }
    }
}

/// Build the coefficient series of a named extremal function.
///
/// `f1, f2` live in the starlike family (`z f'/f = phi(z)` resp. `phi(z^2)`),
/// `f3, f4` in the convex family (`1 + z f''/f' = phi(z)` resp. `phi(z^2)`),
/// and `f5, f6, f7` in a close-to-convex family over its base `g`.
pub fn extremal(id: ExtremalId, family: &FamilySpec) -> Result<TruncatedSeries, ClassError> {
    use ExtremalId::*;
    use FamilySpec::*;
    match (id, family) {
        (F1, Starlike(phi)) => Ok(phi.series().integrate_shifted().exp().mul_z()),
        (F2, Starlike(phi)) => {
            let phi2 = phi.series().compose(&z_squared(phi.series().order()))?;
            Ok(phi2.integrate_shifted().exp().mul_z())
        }
        (F3, Convex(phi)) => Ok(phi.series().integrate_shifted().exp().antiderivative()),
        (F4, Convex(phi)) => {
            let phi2 = phi.series().compose(&z_squared(phi.series().order()))?;
            Ok(phi2.integrate_shifted().exp().antiderivative())
        }
        (F5, CloseToConvex(g)) => {
            // integral of (1+t)/(1-t) * g(t)/t
            let n = g.series().order();
            let kernel = one_plus_z(n).div(&one_minus_z(n))?;
            Ok(kernel.mul(&g.series().div_z()?).antiderivative())
        }
        (F6, CloseToConvex(g)) => {
            // integral of (1+t^3)/(1-t^3) * 1/(1-t)^2, independent of g
            let n = g.series().order();
            let mut num = vec![0.0; n + 1];
            num[0] = 1.0;
            if n >= 3 {
                num[3] = 1.0;
            }
            let mut cubic = vec![0.0; n + 1];
            cubic[0] = 1.0;
            if n >= 3 {
                cubic[3] = -1.0;
            }
            let den = TruncatedSeries::from_real(&cubic)
                .mul(&one_minus_z(n))
                .mul(&one_minus_z(n));
            Ok(TruncatedSeries::from_real(&num).div(&den)?.antiderivative())
        }
        (F7, CloseToConvex(g)) => {
            // z f' = g~(z) (1+iz)/(1-iz) with g~_n = i^(n-1) g_n
            let n = g.series().order();
            let rotated: Vec<Complex64> = (0..=n)
                .map(|k| {
                    if k == 0 {
                        ZERO
                    } else {
                        I.powu((k - 1) as u32) * g.series().coeff(k)
                    }
                })
                .collect();
            let g_rot = TruncatedSeries::new(rotated);
            let mut num = vec![ZERO; n + 1];
            num[0] = ONE;
            if n >= 1 {
                num[1] = I;
            }
            let mut den = vec![ZERO; n + 1];
            den[0] = ONE;
            if n >= 1 {
                den[1] = -I;
            }
            let kernel = TruncatedSeries::new(num).div(&TruncatedSeries::new(den))?;
            Ok(kernel.mul(&g_rot.div_z()?).antiderivative())
        }
        (id, family) => Err(ClassError::IncompatibleExtremal {
            id,
            family: family.kind_name(),
        }),
    }
}

fn z_squared(order: usize) -> TruncatedSeries {
    let mut c = vec![ZERO; order + 1];
    if order >= 2 {
        c[2] = ONE;
    }
    TruncatedSeries::new(c)
}
