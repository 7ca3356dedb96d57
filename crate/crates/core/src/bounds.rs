//! Sharp lower/upper bounds for `det T_{2,1}`, `det T_{3,1}` and
//! `|det T_{2,2}|` over the three families, with full case dispatch.
//!
//! The `det T_{3,1}` lower bounds come from minimizing a boundary quadratic
//! `G(x)` over `x = p1^2 in [0, 4]`: the dispatch value `mu` (starlike) or
//! `sigma` (convex) is the critical point of `G`, and the branch picks the
//! interior value, the endpoint `x = 4`, or the smaller endpoint, matching a
//! direct clamped minimization of `G` (see `oracle::minimize_g_direct`).
//! Precondition failures are reported as typed `Inapplicable` outcomes so
//! grid sweeps can record coverage maps instead of aborting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::FamilySpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("B1 must lie in (0, 2], got {0}")]
    BadB1(f64),
    #[error("coefficient magnitudes must be nonnegative, got |b2| = {b2}, |b3| = {b3}")]
    NegativeMagnitude { b2: f64, b3: f64 },
}

pub const PRE_B1_RANGE: &str = "b1-in-(0,2]";
pub const PRE_STARLIKE_LOWER: &str = "b1^2>=b2";
pub const PRE_CONVEX_LOWER: &str = "b1^2>=2*b2";
pub const PRE_T31_UPPER: &str = "b1<=|b2+b1^2|";
pub const PRE_CTC_HYPO: &str = "ctc-t31-hypothesis";

/// Boundary cases where the critical point lands exactly on `mu = 4` (or
/// `sigma = 4`) are classified with this slack; both adjacent branches give
/// the same value there, so only the label is at stake.
const DISPATCH_EPS: f64 = 1e-12;

/// Below this magnitude the critical-point denominator counts as zero and
/// the quadratic degenerates to a decreasing line.
const DEGENERATE_DEN: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "T21")]
    T21,
    #[serde(rename = "T31")]
    T31,
    #[serde(rename = "ABS_T22")]
    AbsT22,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Precondition {
    pub name: String,
    pub ok: bool,
}

impl Precondition {
    fn new(name: &str, ok: bool) -> Self {
        Self {
            name: name.to_string(),
            ok,
        }
    }
}

/// One evaluated bound. `sharp` records whether equality is asserted to be
/// attained by some class member; `extremal` names the constructor that
/// witnesses it where one exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: Quantity,
    pub side: Side,
    pub value: f64,
    pub case: String,
    pub mu_or_sigma: Option<f64>,
    pub preconditions: Vec<Precondition>,
    pub sharp: bool,
    pub extremal: Option<String>,
    pub notes: Option<String>,
}

/// A bound request either produces a report or a typed refusal naming the
/// failed precondition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum BoundOutcome {
    Applicable(BoundReport),
    Inapplicable(InapplicableReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InapplicableReport {
    pub quantity: Quantity,
    pub side: Side,
    pub preconditions: Vec<Precondition>,
    pub reason: String,
}

impl BoundOutcome {
    pub fn report(&self) -> Option<&BoundReport> {
        match self {
            BoundOutcome::Applicable(r) => Some(r),
            BoundOutcome::Inapplicable(_) => None,
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, BoundOutcome::Applicable(_))
    }
}

fn check_b1(b1: f64) -> Result<(), BoundsError> {
    if b1 > 0.0 && b1 <= 2.0 + 1e-12 {
        Ok(())
    } else {
        Err(BoundsError::BadB1(b1))
    }
}

// Closed forms shared by the dispatch and the sharpness checks.

/// `G(0)` of the starlike boundary quadratic: `1 - B1^2/4`.
pub fn starlike_lower_g0(b1: f64) -> f64 {
    1.0 - b1 * b1 / 4.0
}

/// `G(4)` of the starlike boundary quadratic.
pub fn starlike_lower_g4(b1: f64, b2: f64) -> f64 {
    let b1sq = b1 * b1;
    1.0 - 2.0 * b1sq + 0.75 * b1sq * b1sq + 0.5 * b1sq * b2 - 0.25 * b2 * b2
}

/// Upper-bound value for starlike `det T_{3,1}` in the non-trivial case;
/// algebraically equal to `G(4)`.
pub fn starlike_t31_upper_value(b1: f64, b2: f64) -> f64 {
    let s = b1 * b1 + b2;
    b1 * b1 * s - 0.25 * s * s - 2.0 * b1 * b1 + 1.0
}

/// `G(0)` of the convex boundary quadratic: `1 - B1^2/36`.
pub fn convex_lower_g0(b1: f64) -> f64 {
    1.0 - b1 * b1 / 36.0
}

/// `G(4)` of the convex boundary quadratic.
pub fn convex_lower_g4(b1: f64, b2: f64) -> f64 {
    let b1sq = b1 * b1;
    1.0 - b1sq / 2.0 + b1sq * b1sq / 18.0 + b1sq * b2 / 36.0 - b2 * b2 / 36.0
}

/// Coefficients `(a, b, c)` of the starlike boundary quadratic
/// `G(x) = a x^2 + b x + c` on `[0, 4]`.
pub(crate) fn starlike_g_coeffs(b1: f64, b2: f64) -> (f64, f64, f64) {
    let b1sq = b1 * b1;
    let den = (3.0 * b1sq - b2) * (b1sq + b2) + b1 * (2.0 * b1sq - 2.0 * b2 - b1);
    (
        den / 64.0,
        -b1 * (b1sq + 3.0 * b1 - b2) / 8.0,
        1.0 - b1sq / 4.0,
    )
}

/// Coefficients of the convex boundary quadratic.
pub(crate) fn convex_g_coeffs(b1: f64, b2: f64) -> (f64, f64, f64) {
    let b1sq = b1 * b1;
    let den = 2.0 * b1sq * b1sq + b1sq * b1 - b1sq - 2.0 * b1 * b2 + b1sq * b2 - b2 * b2;
    (
        den / 576.0,
        -b1 * (b1sq + 16.0 * b1 - 2.0 * b2) / 144.0,
        1.0 - b1sq / 36.0,
    )
}

/// `det T_{2,1}` range for the starlike family: `[1 - B1^2, 1]`.
pub fn t21_starlike(b1: f64) -> Result<(BoundReport, BoundReport), BoundsError> {
    check_b1(b1)?;
    let pre = vec![Precondition::new(PRE_B1_RANGE, true)];
    let lower = BoundReport {
        quantity: Quantity::T21,
        side: Side::Lower,
        value: 1.0 - b1 * b1,
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions: pre.clone(),
        sharp: true,
        extremal: Some("f1".into()),
        notes: None,
    };
    let upper = BoundReport {
        quantity: Quantity::T21,
        side: Side::Upper,
        value: 1.0,
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions: pre,
        sharp: true,
        extremal: Some("f2".into()),
        notes: None,
    };
    Ok((lower, upper))
}

/// `det T_{2,1}` range for the convex family: `[1 - B1^2/4, 1]`.
pub fn t21_convex(b1: f64) -> Result<(BoundReport, BoundReport), BoundsError> {
    check_b1(b1)?;
    let pre = vec![Precondition::new(PRE_B1_RANGE, true)];
    let lower = BoundReport {
        quantity: Quantity::T21,
        side: Side::Lower,
        value: 1.0 - b1 * b1 / 4.0,
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions: pre.clone(),
        sharp: true,
        extremal: Some("f3".into()),
        notes: None,
    };
    let upper = BoundReport {
        quantity: Quantity::T21,
        side: Side::Upper,
        value: 1.0,
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions: pre,
        sharp: true,
        extremal: Some("f4".into()),
        notes: None,
    };
    Ok((lower, upper))
}

/// Upper bound for starlike `det T_{3,1}`: 1 when the discriminant
/// `3 B1^4 - 8 B1^2 + 2 B1^2 B2 - B2^2` is negative, else the closed-form
/// value attained by `f1`. Requires `B1 <= |B2 + B1^2|`.
pub fn t31_upper_starlike(b1: f64, b2: f64) -> Result<BoundOutcome, BoundsError> {
    check_b1(b1)?;
    let applicable = b1 <= (b2 + b1 * b1).abs() + 1e-12;
    let preconditions = vec![
        Precondition::new(PRE_B1_RANGE, true),
        Precondition::new(PRE_T31_UPPER, applicable),
    ];
    if !applicable {
        return Ok(BoundOutcome::Inapplicable(InapplicableReport {
            quantity: Quantity::T31,
            side: Side::Upper,
            preconditions,
            reason: format!("needs B1 <= |B2 + B1^2|: {b1} > {}", (b2 + b1 * b1).abs()),
        }));
    }
    let disc = 3.0 * b1.powi(4) - 8.0 * b1 * b1 + 2.0 * b1 * b1 * b2 - b2 * b2;
    let report = if disc < 0.0 {
        BoundReport {
            quantity: Quantity::T31,
            side: Side::Upper,
            value: 1.0,
            case: "disc<0".into(),
            mu_or_sigma: None,
            preconditions,
            sharp: true,
            extremal: Some("id".into()),
            notes: None,
        }
    } else {
        BoundReport {
            quantity: Quantity::T31,
            side: Side::Upper,
            value: starlike_t31_upper_value(b1, b2),
            case: "disc>=0".into(),
            mu_or_sigma: None,
            preconditions,
            sharp: true,
            extremal: Some("f1".into()),
            notes: None,
        }
    };
    Ok(BoundOutcome::Applicable(report))
}

/// Upper bound for convex `det T_{3,1}`: always 1 under
/// `B1 <= |B2 + B1^2|`, attained by the identity map.
pub fn t31_upper_convex(b1: f64, b2: f64) -> Result<BoundOutcome, BoundsError> {
    check_b1(b1)?;
    let applicable = b1 <= (b2 + b1 * b1).abs() + 1e-12;
    let preconditions = vec![
        Precondition::new(PRE_B1_RANGE, true),
        Precondition::new(PRE_T31_UPPER, applicable),
    ];
    if !applicable {
        return Ok(BoundOutcome::Inapplicable(InapplicableReport {
            quantity: Quantity::T31,
            side: Side::Upper,
            preconditions,
            reason: format!("needs B1 <= |B2 + B1^2|: {b1} > {}", (b2 + b1 * b1).abs()),
        }));
    }
    Ok(BoundOutcome::Applicable(BoundReport {
        quantity: Quantity::T31,
        side: Side::Upper,
        value: 1.0,
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions,
        sharp: true,
        extremal: Some("id".into()),
        notes: None,
    }))
}

/// Lower bound for starlike `det T_{3,1}` under `B1^2 >= B2`, dispatched on
/// the critical point `mu` of the boundary quadratic.
pub fn t31_lower_starlike(b1: f64, b2: f64) -> Result<BoundOutcome, BoundsError> {
    check_b1(b1)?;
    let applicable = b1 * b1 >= b2 - 1e-12;
    let preconditions = vec![
        Precondition::new(PRE_B1_RANGE, true),
        Precondition::new(PRE_STARLIKE_LOWER, applicable),
    ];
    if !applicable {
        return Ok(BoundOutcome::Inapplicable(InapplicableReport {
            quantity: Quantity::T31,
            side: Side::Lower,
            preconditions,
            reason: format!("needs B1^2 >= B2: {} < {b2}", b1 * b1),
        }));
    }
    let (ga, _, _) = starlike_g_coeffs(b1, b2);
    let den = 64.0 * ga;
    let g0 = starlike_lower_g0(b1);
    let g4 = starlike_lower_g4(b1, b2);
    let numerator = 4.0 * b1 * (b1 * b1 + 3.0 * b1 - b2);

    let report = if den.abs() < DEGENERATE_DEN {
        BoundReport {
            quantity: Quantity::T31,
            side: Side::Lower,
            value: g4,
            case: "degenerate-denominator".into(),
            mu_or_sigma: None,
            preconditions,
            sharp: true,
            extremal: Some("f1".into()),
            notes: Some(
                "critical-point denominator vanishes; G is linear and decreasing, minimum at x=4"
                    .into(),
            ),
        }
    } else {
        let mu = numerator / den;
        if (mu - 4.0).abs() <= DISPATCH_EPS {
            BoundReport {
                quantity: Quantity::T31,
                side: Side::Lower,
                value: g4,
                case: "mu=4".into(),
                mu_or_sigma: Some(mu),
                preconditions,
                sharp: true,
                extremal: Some("f1".into()),
                notes: None,
            }
        } else if !(0.0..4.0).contains(&mu) {
            let (value, extremal) = if g4 <= g0 { (g4, "f1") } else { (g0, "f2") };
            BoundReport {
                quantity: Quantity::T31,
                side: Side::Lower,
                value,
                case: "mu-outside-[0,4]".into(),
                mu_or_sigma: Some(mu),
                preconditions,
                sharp: true,
                extremal: Some(extremal.into()),
                notes: None,
            }
        } else {
            let value =
                1.0 - b1 * b1 / 4.0 - b1 * b1 * (b1 * b1 + 3.0 * b1 - b2).powi(2) / (4.0 * den);
            BoundReport {
                quantity: Quantity::T31,
                side: Side::Lower,
                value,
                case: "mu-in-(0,4)".into(),
                mu_or_sigma: Some(mu),
                preconditions,
                sharp: false,
                extremal: None,
                notes: Some("interior critical point; not asserted sharp, the scan reports the empirical margin".into()),
            }
        }
    };
    Ok(BoundOutcome::Applicable(report))
}

/// Lower bound for convex `det T_{3,1}` under `B1^2 >= 2 B2`, dispatched on
/// the critical point `sigma`.
pub fn t31_lower_convex(b1: f64, b2: f64) -> Result<BoundOutcome, BoundsError> {
    check_b1(b1)?;
    let applicable = b1 * b1 >= 2.0 * b2 - 1e-12;
    let preconditions = vec![
        Precondition::new(PRE_B1_RANGE, true),
        Precondition::new(PRE_CONVEX_LOWER, applicable),
    ];
    if !applicable {
        return Ok(BoundOutcome::Inapplicable(InapplicableReport {
            quantity: Quantity::T31,
            side: Side::Lower,
            preconditions,
            reason: format!("needs B1^2 >= 2 B2: {} < {}", b1 * b1, 2.0 * b2),
        }));
    }
    let (ga, _, _) = convex_g_coeffs(b1, b2);
    let den = 576.0 * ga;
    let g0 = convex_lower_g0(b1);
    let g4 = convex_lower_g4(b1, b2);
    let numerator = 2.0 * b1 * (b1 * b1 + 16.0 * b1 - 2.0 * b2);

    let report = if den.abs() < DEGENERATE_DEN {
        BoundReport {
            quantity: Quantity::T31,
            side: Side::Lower,
            value: g4,
            case: "degenerate-denominator".into(),
            mu_or_sigma: None,
            preconditions,
            sharp: true,
            extremal: Some("f3".into()),
            notes: Some(
                "critical-point denominator vanishes; G is linear and decreasing, minimum at x=4"
                    .into(),
            ),
        }
    } else {
        let sigma = numerator / den;
        if (sigma - 4.0).abs() <= DISPATCH_EPS {
            BoundReport {
                quantity: Quantity::T31,
                side: Side::Lower,
                value: g4,
                case: "sigma=4".into(),
                mu_or_sigma: Some(sigma),
                preconditions,
                sharp: true,
                extremal: Some("f3".into()),
                notes: None,
            }
        } else if !(0.0..4.0).contains(&sigma) {
            let (value, extremal) = if g4 <= g0 { (g4, "f3") } else { (g0, "f4") };
            BoundReport {
                quantity: Quantity::T31,
                side: Side::Lower,
                value,
                case: "sigma-outside-[0,4]".into(),
                mu_or_sigma: Some(sigma),
                preconditions,
                sharp: true,
                extremal: Some(extremal.into()),
                notes: None,
            }
        } else {
            let b1cu = b1 * b1 * b1;
            let value = 1.0 - b1cu * (b1cu + 4.0 * b1 * b1 + 28.0 * b1 - 8.0 * b2) / (16.0 * den);
            BoundReport {
                quantity: Quantity::T31,
                side: Side::Lower,
                value,
                case: "sigma-in-(0,4)".into(),
                mu_or_sigma: Some(sigma),
                preconditions,
                sharp: false,
                extremal: None,
                notes: Some("interior critical point; not asserted sharp, the scan reports the empirical margin".into()),
            }
        }
    };
    Ok(BoundOutcome::Applicable(report))
}

/// All close-to-convex bounds over the base coefficient magnitudes:
/// `det T_{2,1}` range, `det T_{3,1}` upper bound and `|det T_{2,2}|` upper
/// bound. The `det T_{3,1}` entry carries the hypothesis flag rather than
/// refusing, so coverage maps can record where it fails.
pub fn t_bounds_ctc(b2_abs: f64, b3_abs: f64) -> Result<Vec<BoundOutcome>, BoundsError> {
    if b2_abs < 0.0 || b3_abs < 0.0 {
        return Err(BoundsError::NegativeMagnitude {
            b2: b2_abs,
            b3: b3_abs,
        });
    }
    let b = b2_abs;
    let c = b3_abs;
    // Hypothesis under which the coefficient-box corner dominates the
    // interior maximum of u(x) = 2|a2|^2 x - 2|a2|^2 - x^2 + 1.
    let hypothesis =
        6.0 * b.powi(3) - 4.0 * b * (c - 1.0) - 4.0 * (c - 1.0).powi(2) + b * b * (3.0 * c + 5.0);
    let hypothesis_ok = hypothesis >= -1e-12;
    // Box maximum of u, scaled by 18; the bound is 1 until it exceeds 18.
    let box_max_18 =
        6.0 * b.powi(3) + b * b * (3.0 * c + 13.0) + 4.0 * b * (c - 1.0) - 2.0 * (1.0 - c).powi(2);

    let t21_lower = BoundReport {
        quantity: Quantity::T21,
        side: Side::Lower,
        value: 1.0 - (1.0 + b / 2.0).powi(2),
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions: vec![],
        sharp: true,
        extremal: Some("f5".into()),
        notes: None,
    };
    let t21_upper = BoundReport {
        quantity: Quantity::T21,
        side: Side::Upper,
        value: 1.0,
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions: vec![],
        sharp: true,
        extremal: Some("f6".into()),
        notes: Some(
            "f6 evaluates to det T21 = 0 (a2 = 1), so it does not witness this bound".into(),
        ),
    };
    let t31_pre = vec![Precondition::new(PRE_CTC_HYPO, hypothesis_ok)];
    let t31_upper = if box_max_18 <= 18.0 {
        BoundReport {
            quantity: Quantity::T31,
            side: Side::Upper,
            value: 1.0,
            case: "box-max<=1".into(),
            mu_or_sigma: None,
            preconditions: t31_pre,
            sharp: true,
            extremal: None,
            notes: None,
        }
    } else {
        let value = box_max_18 / 18.0;
        BoundReport {
            quantity: Quantity::T31,
            side: Side::Upper,
            value,
            case: "box-max>1".into(),
            mu_or_sigma: None,
            preconditions: t31_pre,
            sharp: true,
            extremal: Some("f5".into()),
            notes: Some(
                "emitted as an upper bound: it dominates u(|a3|) over the coefficient box".into(),
            ),
        }
    };
    let t22_upper = BoundReport {
        quantity: Quantity::AbsT22,
        side: Side::Upper,
        value: 0.25 * (2.0 + b).powi(2) + (c + 2.0 * b + 2.0).powi(2) / 9.0,
        case: "direct".into(),
        mu_or_sigma: None,
        preconditions: vec![],
        sharp: true,
        extremal: Some("f7".into()),
        notes: None,
    };
    Ok(vec![
        BoundOutcome::Applicable(t21_lower),
        BoundOutcome::Applicable(t21_upper),
        BoundOutcome::Applicable(t31_upper),
        BoundOutcome::Applicable(t22_upper),
    ])
}

/// Every bound the family supports, in a fixed order.
pub fn family_bounds(family: &FamilySpec) -> Result<Vec<BoundOutcome>, BoundsError> {
    match family {
        FamilySpec::Starlike(phi) => {
            let (b1, b2) = (phi.b1(), phi.b2());
            let (lo, hi) = t21_starlike(b1)?;
            Ok(vec![
                BoundOutcome::Applicable(lo),
                BoundOutcome::Applicable(hi),
                t31_lower_starlike(b1, b2)?,
                t31_upper_starlike(b1, b2)?,
            ])
        }
        FamilySpec::Convex(phi) => {
            let (b1, b2) = (phi.b1(), phi.b2());
            let (lo, hi) = t21_convex(b1)?;
            Ok(vec![
                BoundOutcome::Applicable(lo),
                BoundOutcome::Applicable(hi),
                t31_lower_convex(b1, b2)?,
                t31_upper_convex(b1, b2)?,
            ])
        }
        FamilySpec::CloseToConvex(g) => t_bounds_ctc(g.b2().norm(), g.b3().norm()),
    }
}
