//! Brute-force verification of the closed-form bounds.
//!
//! The scan walks the exactly attainable coefficient body: `p1` on a grid
//! over `[0, 2]`, `zeta` on a polar grid over the closed unit disk (the
//! binding constraints sit on `|zeta| = 1`, so the boundary ring is always
//! part of the grid), plus seeded uniform random samples. Every sampled
//! determinant is checked against the applicable bounds; empirical extrema
//! and their sample points are recorded.
//!
//! Scans are embarrassingly parallel: shards own disjoint index ranges, the
//! random shards draw from per-shard RNG streams derived from the master
//! seed, and shard results merge in index order. Reports are therefore
//! byte-identical across runs and thread counts.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundOutcome, BoundsError, Quantity, Side};
use crate::classes::{self, ClassError, ExtremalId, FamilySpec, SamplePoint};
use crate::toeplitz;

/// Environment variable capping the number of rayon workers a scan may use.
pub const THREADS_ENV: &str = "TOEPLITZ_SHARP_THREADS";

const SHARD: u64 = 1 << 16;
const MAX_STORED_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("scan has zero samples")]
    EmptyScan,
    #[error("bad scan config: {0}")]
    BadConfig(String),
    #[error("scan inapplicable for {family}: {reason}")]
    Inapplicable { family: String, reason: String },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("sample dump failed: {0}")]
    Io(String),
}

/// Grid resolution, random-sample count, seed and violation tolerance of a
/// scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub grid_p1: usize,
    pub grid_zeta_radius: usize,
    pub grid_zeta_phase: usize,
    pub random_samples: u64,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            grid_p1: 200,
            grid_zeta_radius: 64,
            grid_zeta_phase: 64,
            random_samples: 1_000_000,
            seed: 42,
            tolerance: 1e-9,
        }
    }
}

impl ScanConfig {
    fn grid_total(&self) -> u64 {
        self.grid_p1 as u64 * self.grid_zeta_radius as u64 * self.grid_zeta_phase as u64
    }

    fn total(&self) -> u64 {
        self.grid_total() + self.random_samples
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.tolerance <= 0.0 || self.tolerance.is_nan() {
            return Err(OracleError::BadConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.total() == 0 {
            return Err(OracleError::EmptyScan);
        }
        Ok(())
    }
}

/// A sample whose determinant escaped `[lower - tol, upper + tol]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub quantity: Quantity,
    pub side: Side,
    pub bound: f64,
    pub value: f64,
    pub sample: SamplePoint,
}

/// Scan result. `violations` keeps at most the first 64 offending samples in
/// deterministic order; `violations_total` counts them all, and the scan
/// passes exactly when it is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub family: String,
    pub emp_min: f64,
    pub emp_max: f64,
    pub argmin: SamplePoint,
    pub argmax: SamplePoint,
    pub samples: u64,
    pub violations: Vec<Violation>,
    pub violations_total: u64,
    pub sharp_gaps: BTreeMap<String, f64>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violations_total == 0
    }
}

/// Which determinants a scan checks, and against what.
#[derive(Debug, Clone, Copy)]
struct ActiveChecks {
    t21: (f64, f64),
    t31_lower: Option<f64>,
    t31_upper: Option<f64>,
    t22_upper: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
enum Evaluator {
    Starlike { b1: f64, b2: f64 },
    Convex { b1: f64, b2: f64 },
    Ctc { b2: Complex64, b3: Complex64 },
}

impl Evaluator {
    #[inline]
    fn a2a3(&self, sample: &SamplePoint) -> (Complex64, Complex64) {
        match self {
            Evaluator::Starlike { b1, b2 } => classes::a2a3_starlike(*b1, *b2, sample),
            Evaluator::Convex { b1, b2 } => classes::a2a3_convex(*b1, *b2, sample),
            Evaluator::Ctc { b2, b3 } => {
                classes::a2a3_ctc(*b2, *b3, Complex64::new(sample.p1, 0.0), sample.p2())
            }
        }
    }
}

struct ShardOut {
    min: f64,
    argmin: SamplePoint,
    max: f64,
    argmax: SamplePoint,
    violations: Vec<Violation>,
    violations_total: u64,
}

impl ShardOut {
    fn empty() -> Self {
        let origin = SamplePoint {
            p1: 0.0,
            zeta: Complex64::new(0.0, 0.0),
        };
        Self {
            min: f64::INFINITY,
            argmin: origin,
            max: f64::NEG_INFINITY,
            argmax: origin,
            violations: Vec::new(),
            violations_total: 0,
        }
    }

    #[inline]
    fn record(&mut self, sample: SamplePoint, eval: &Evaluator, checks: &ActiveChecks, tol: f64) {
        let (a2, a3) = eval.a2a3(&sample);
        let t31 = toeplitz::det_t31(a2, a3);
        if t31 < self.min {
            self.min = t31;
            self.argmin = sample;
        }
        if t31 > self.max {
            self.max = t31;
            self.argmax = sample;
        }

        let t21 = toeplitz::det_t21(a2);
        let (t21_lo, t21_hi) = checks.t21;
        if t21 < t21_lo - tol {
            self.violate(Quantity::T21, Side::Lower, t21_lo, t21, sample);
        }
        if t21 > t21_hi + tol {
            self.violate(Quantity::T21, Side::Upper, t21_hi, t21, sample);
        }
        if let Some(lo) = checks.t31_lower {
            if t31 < lo - tol {
                self.violate(Quantity::T31, Side::Lower, lo, t31, sample);
            }
        }
        if let Some(hi) = checks.t31_upper {
            if t31 > hi + tol {
                self.violate(Quantity::T31, Side::Upper, hi, t31, sample);
            }
        }
        if let Some(hi) = checks.t22_upper {
            let t22 = toeplitz::abs_det_t22(a2, a3);
            if t22 > hi + tol {
                self.violate(Quantity::AbsT22, Side::Upper, hi, t22, sample);
            }
        }
    }

    fn violate(
        &mut self,
        quantity: Quantity,
        side: Side,
        bound: f64,
        value: f64,
        sample: SamplePoint,
    ) {
        self.violations_total += 1;
        if self.violations.len() < MAX_STORED_VIOLATIONS {
            self.violations.push(Violation {
                quantity,
                side,
                bound,
                value,
                sample,
            });
        }
    }

    fn merge(mut self, other: ShardOut) -> ShardOut {
        if other.min < self.min {
            self.min = other.min;
            self.argmin = other.argmin;
        }
        if other.max > self.max {
            self.max = other.max;
            self.argmax = other.argmax;
        }
        self.violations_total += other.violations_total;
        for v in other.violations {
            if self.violations.len() >= MAX_STORED_VIOLATIONS {
                break;
            }
            self.violations.push(v);
        }
        self
    }
}

#[inline]
fn linspace(i: usize, n: usize, lo: f64, hi: f64) -> f64 {
    if n <= 1 {
        lo
    } else {
        lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
    }
}

#[inline]
fn grid_sample(cfg: &ScanConfig, idx: u64) -> SamplePoint {
    let nr = cfg.grid_zeta_radius as u64;
    let nph = cfg.grid_zeta_phase as u64;
    let ip = idx / (nr * nph);
    let rem = idx % (nr * nph);
    let ir = rem / nph;
    let iph = rem % nph;
    let p1 = linspace(ip as usize, cfg.grid_p1, 0.0, 2.0);
    let r = linspace(ir as usize, cfg.grid_zeta_radius, 0.0, 1.0);
    let phase = 2.0 * std::f64::consts::PI * (iph as f64) / (nph as f64);
    SamplePoint {
        p1,
        zeta: Complex64::new(r * phase.cos(), r * phase.sin()),
    }
}

#[inline]
fn random_sample(rng: &mut ChaCha12Rng) -> SamplePoint {
    let p1 = 2.0 * rng.gen::<f64>();
    // Uniform over the disk: sqrt-radius times a uniform phase.
    let r = rng.gen::<f64>().sqrt();
    let phase = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
    SamplePoint {
        p1,
        zeta: Complex64::new(r * phase.cos(), r * phase.sin()),
    }
}

fn run_scan(
    label: String,
    eval: Evaluator,
    checks: ActiveChecks,
    cfg: &ScanConfig,
) -> Result<OracleReport, OracleError> {
    cfg.validate()?;

    let grid_total = cfg.grid_total();
    let grid_shards = grid_total.div_ceil(SHARD);
    let random_shards = cfg.random_samples.div_ceil(SHARD);
    let tol = cfg.tolerance;

    let scan = || {
        let grid: Vec<ShardOut> = (0..grid_shards)
            .into_par_iter()
            .map(|shard| {
                let mut out = ShardOut::empty();
                let start = shard * SHARD;
                let end = (start + SHARD).min(grid_total);
                for idx in start..end {
                    out.record(grid_sample(cfg, idx), &eval, &checks, tol);
                }
                out
            })
            .collect();
        let random: Vec<ShardOut> = (0..random_shards)
            .into_par_iter()
            .map(|shard| {
                let mut out = ShardOut::empty();
                let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
                rng.set_stream(shard + 1);
                let start = shard * SHARD;
                let end = (start + SHARD).min(cfg.random_samples);
                for _ in start..end {
                    out.record(random_sample(&mut rng), &eval, &checks, tol);
                }
                out
            })
            .collect();
        grid.into_iter()
            .chain(random)
            .fold(ShardOut::empty(), ShardOut::merge)
    };

    let merged = match scan_thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| OracleError::Io(e.to_string()))?
            .install(scan),
        None => scan(),
    };

    Ok(OracleReport {
        family: label,
        emp_min: merged.min,
        emp_max: merged.max,
        argmin: merged.argmin,
        argmax: merged.argmax,
        samples: cfg.total(),
        violations: merged.violations,
        violations_total: merged.violations_total,
        sharp_gaps: BTreeMap::new(),
    })
}

fn scan_thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
}

fn starlike_checks(
    b1: f64,
    b2: f64,
    label: &str,
) -> Result<(ActiveChecks, Evaluator), OracleError> {
    let lower = bounds::t31_lower_starlike(b1, b2)?;
    let lower = match lower {
        BoundOutcome::Applicable(r) => r.value,
        BoundOutcome::Inapplicable(na) => {
            return Err(OracleError::Inapplicable {
                family: label.to_string(),
                reason: na.reason,
            })
        }
    };
    let upper = bounds::t31_upper_starlike(b1, b2)?
        .report()
        .map(|r| r.value);
    let checks = ActiveChecks {
        t21: (1.0 - b1 * b1, 1.0),
        t31_lower: Some(lower),
        t31_upper: upper,
        t22_upper: None,
    };
    Ok((checks, Evaluator::Starlike { b1, b2 }))
}

fn convex_checks(b1: f64, b2: f64, label: &str) -> Result<(ActiveChecks, Evaluator), OracleError> {
    let lower = bounds::t31_lower_convex(b1, b2)?;
    let lower = match lower {
        BoundOutcome::Applicable(r) => r.value,
        BoundOutcome::Inapplicable(na) => {
            return Err(OracleError::Inapplicable {
                family: label.to_string(),
                reason: na.reason,
            })
        }
    };
    let upper = bounds::t31_upper_convex(b1, b2)?.report().map(|r| r.value);
    let checks = ActiveChecks {
        t21: (1.0 - b1 * b1 / 4.0, 1.0),
        t31_lower: Some(lower),
        t31_upper: upper,
        t22_upper: None,
    };
    Ok((checks, Evaluator::Convex { b1, b2 }))
}

fn ctc_checks(b2: Complex64, b3: Complex64) -> Result<(ActiveChecks, Evaluator), OracleError> {
    let outcomes = bounds::t_bounds_ctc(b2.norm(), b3.norm())?;
    let t21_lo = outcomes[0].report().unwrap().value;
    let t31 = outcomes[2].report().unwrap();
    let t31_upper = if t31.preconditions.iter().all(|p| p.ok) {
        Some(t31.value)
    } else {
        None
    };
    let t22_upper = Some(outcomes[3].report().unwrap().value);
    let checks = ActiveChecks {
        t21: (t21_lo, 1.0),
        t31_lower: None,
        t31_upper,
        t22_upper,
    };
    Ok((checks, Evaluator::Ctc { b2, b3 }))
}

/// Scan the starlike family with generator coefficients `B1, B2`. Requires
/// the lower-bound hypothesis `B1^2 >= B2`; the upper bound is checked
/// whenever its own hypothesis holds.
pub fn scan_starlike(b1: f64, b2: f64, cfg: &ScanConfig) -> Result<OracleReport, OracleError> {
    let label = format!("starlike(B1={b1},B2={b2})");
    let (checks, eval) = starlike_checks(b1, b2, &label)?;
    run_scan(label, eval, checks, cfg)
}

/// Scan the convex family with generator coefficients `B1, B2`. Requires
/// `B1^2 >= 2 B2`.
pub fn scan_convex(b1: f64, b2: f64, cfg: &ScanConfig) -> Result<OracleReport, OracleError> {
    let label = format!("convex(B1={b1},B2={b2})");
    let (checks, eval) = convex_checks(b1, b2, &label)?;
    run_scan(label, eval, checks, cfg)
}

/// Scan a close-to-convex family over base coefficients `b2, b3`. The
/// `det T_{3,1}` upper bound is only checked when its hypothesis holds.
pub fn scan_ctc(
    b2: Complex64,
    b3: Complex64,
    cfg: &ScanConfig,
) -> Result<OracleReport, OracleError> {
    let label = format!("ctc(b2={b2},b3={b3})");
    let (checks, eval) = ctc_checks(b2, b3)?;
    run_scan(label, eval, checks, cfg)
}

fn family_scan_parts(family: &FamilySpec) -> Result<(ActiveChecks, Evaluator), OracleError> {
    match family {
        FamilySpec::Starlike(phi) => starlike_checks(phi.b1(), phi.b2(), &family.label()),
        FamilySpec::Convex(phi) => convex_checks(phi.b1(), phi.b2(), &family.label()),
        FamilySpec::CloseToConvex(g) => ctc_checks(g.b2(), g.b3()),
    }
}

/// Scan a family described by a [`FamilySpec`], labelling the report with
/// the family name.
pub fn scan_family(family: &FamilySpec, cfg: &ScanConfig) -> Result<OracleReport, OracleError> {
    let (checks, eval) = family_scan_parts(family)?;
    run_scan(family.label(), eval, checks, cfg)
}

/// Sequential scan that also writes every sample as a CSV row
/// (`p1, re_zeta, im_zeta, re_a2, im_a2, re_a3, im_a3, det31`).
/// Produces the identical report to [`scan_family`].
pub fn scan_family_dump(
    family: &FamilySpec,
    cfg: &ScanConfig,
    writer: &mut dyn Write,
) -> Result<OracleReport, OracleError> {
    cfg.validate()?;
    let (checks, eval) = family_scan_parts(family)?;
    let io = |e: std::io::Error| OracleError::Io(e.to_string());
    writeln!(writer, "p1,re_zeta,im_zeta,re_a2,im_a2,re_a3,im_a3,det31").map_err(io)?;

    let mut out = ShardOut::empty();
    let mut dump = |sample: SamplePoint, out: &mut ShardOut| -> Result<(), OracleError> {
        out.record(sample, &eval, &checks, cfg.tolerance);
        let (a2, a3) = eval.a2a3(&sample);
        let d = toeplitz::det_t31(a2, a3);
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{}",
            sample.p1, sample.zeta.re, sample.zeta.im, a2.re, a2.im, a3.re, a3.im, d
        )
        .map_err(io)
    };

    for idx in 0..cfg.grid_total() {
        dump(grid_sample(cfg, idx), &mut out)?;
    }
    let random_shards = cfg.random_samples.div_ceil(SHARD);
    for shard in 0..random_shards {
        let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
        rng.set_stream(shard + 1);
        let start = shard * SHARD;
        let end = (start + SHARD).min(cfg.random_samples);
        for _ in start..end {
            dump(random_sample(&mut rng), &mut out)?;
        }
    }

    Ok(OracleReport {
        family: family.label(),
        emp_min: out.min,
        emp_max: out.max,
        argmin: out.argmin,
        argmax: out.argmax,
        samples: cfg.total(),
        violations: out.violations,
        violations_total: out.violations_total,
        sharp_gaps: BTreeMap::new(),
    })
}

/// Evaluate each bound's named extremal function and report
/// `|det(extremal) - bound|`, keyed `"<extremal>:<quantity>:<side>"`.
pub fn check_sharpness(
    family: &FamilySpec,
    outcomes: &[BoundOutcome],
) -> Result<BTreeMap<String, f64>, ClassError> {
    let mut gaps = BTreeMap::new();
    for outcome in outcomes {
        let Some(report) = outcome.report() else {
            continue;
        };
        let Some(name) = report.extremal.as_deref() else {
            continue;
        };
        let (a2, a3) = if name == "id" {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            let id: ExtremalId = name.parse()?;
            let f = classes::extremal(id, family)?;
            (f.coeff(2), f.coeff(3))
        };
        let det = match report.quantity {
            Quantity::T21 => toeplitz::det_t21(a2),
            Quantity::T31 => toeplitz::det_t31(a2, a3),
            Quantity::AbsT22 => toeplitz::abs_det_t22(a2, a3),
        };
        let quantity = serde_plain_name(report.quantity);
        let side = match report.side {
            Side::Lower => "lower",
            Side::Upper => "upper",
        };
        gaps.insert(
            format!("{name}:{quantity}:{side}"),
            (det - report.value).abs(),
        );
    }
    Ok(gaps)
}

fn serde_plain_name(q: Quantity) -> &'static str {
    match q {
        Quantity::T21 => "T21",
        Quantity::T31 => "T31",
        Quantity::AbsT22 => "ABS_T22",
    }
}

/// Bounds, scan and sharpness gaps for a family in one call.
pub fn verify_family(
    family: &FamilySpec,
    cfg: &ScanConfig,
) -> Result<(Vec<BoundOutcome>, OracleReport), OracleError> {
    let outcomes = bounds::family_bounds(family)?;
    let mut report = scan_family(family, cfg)?;
    report.sharp_gaps = check_sharpness(family, &outcomes)?;
    Ok((outcomes, report))
}

/// Clamped minimization of the starlike boundary quadratic `G` over
/// `[0, 4]`, evaluated directly from its coefficients. Independent check of
/// the case dispatch in `bounds::t31_lower_starlike`; assumes `B1^2 >= B2`.
pub fn minimize_g_direct(b1: f64, b2: f64) -> (f64, f64) {
    minimize_quadratic(bounds::starlike_g_coeffs(b1, b2))
}

/// Convex twin of [`minimize_g_direct`]; assumes `B1^2 >= 2 B2`.
pub fn minimize_g_convex_direct(b1: f64, b2: f64) -> (f64, f64) {
    minimize_quadratic(bounds::convex_g_coeffs(b1, b2))
}

fn minimize_quadratic((a, b, c): (f64, f64, f64)) -> (f64, f64) {
    let g = |x: f64| (a * x + b) * x + c;
    let mut best = (4.0, g(4.0));
    if g(0.0) < best.1 {
        best = (0.0, g(0.0));
    }
    if a > 0.0 {
        let x0 = -b / (2.0 * a);
        if (0.0..=4.0).contains(&x0) && g(x0) < best.1 {
            best = (x0, g(x0));
        }
    }
    best
}
