//! Schwarz-type bounds for α-harmonic extensions of bounded boundary data.
//!
//! The factorization P_α = g_α·P splits f(z) into a classical Poisson
//! integral weighted by g_α. Averaging g_α against F gives G_α; dividing out
//! the weight (1−|z|²)^α gives H_α, whose expansion only involves the
//! negative coefficients of F.

use std::f64::consts::{FRAC_2_PI, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{grid_angle, BoundaryFunction};
use crate::error::{Error, Result};
use crate::kernel::{abs_one_minus_sq, cpow, g_alpha_eval, one_minus_r2, DiskPoint};
use crate::norms::NormIndex;
use crate::poisson::AlphaHarmonicFunction;
use crate::quadrature::{integrate_adaptive, periodic_mean, QuadratureConfig};
use crate::special::{binomial_series_coeff, AlphaParam};

/// Slack below −SCHWARZ_TOLERANCE marks a violated bound.
pub const SCHWARZ_TOLERANCE: f64 = 1e-9;
/// Sup-norm target for rescaled random boundaries.
pub const NORMALIZED_SUP: f64 = 0.999;
const SUP_ANGLES: usize = 4096;
const HETHCOTE_TOL: f64 = 1e-14;
const FRAC_4_PI: f64 = 4.0 / PI;

/// max_θ |g_α(re^{iθ})| over 4096 angles.
///
/// The extremum sits at θ = 0 for α ≥ 0 and at θ = π for α < 0, both of
/// which are grid angles, so the grid maximum is the true supremum.
pub fn g_alpha_sup(alpha: AlphaParam, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("radius must lie in [0, 1), got {r}")));
    }
    let mut sup = 0.0f64;
    for k in 0..SUP_ANGLES {
        let z = DiskPoint::from_polar(r, grid_angle(k, SUP_ANGLES))?;
        sup = sup.max(g_alpha_eval(alpha, z).norm());
    }
    Ok(sup)
}

/// The closed-form bound on |g_α(r)|_∞: 2^α for α ≥ 0, (1−r)^α for α < 0.
pub fn g_alpha_sup_bound(alpha: AlphaParam, r: f64) -> f64 {
    let a = alpha.value();
    if a >= 0.0 {
        2f64.powf(a)
    } else {
        (1.0 - r).powf(a)
    }
}

/// G_α, H_α (two ways) and K_α at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ghk {
    pub g: Complex64,
    /// G_α / (1−|z|²)^α.
    pub h_quotient: Complex64,
    /// f̂(0) + Σ_{n≥1} ((α)_n/n!) f̂(−n) z̄ⁿ.
    pub h_series: Complex64,
    /// H_α − f(0), from the series.
    pub k: Complex64,
}

/// Coefficients ((α)_n/n!)·f̂(−n), n = 0..=order, of the H_α expansion in z̄.
pub fn h_series_coeffs(
    alpha: AlphaParam,
    boundary: &BoundaryFunction,
    order: usize,
) -> Vec<Complex64> {
    (0..=order)
        .map(|n| boundary.coeff(-(n as i64)) * binomial_series_coeff(alpha.value(), n as u32))
        .collect()
}

pub fn h_series(alpha: AlphaParam, boundary: &BoundaryFunction, z: DiskPoint) -> Complex64 {
    let zc = z.z().conj();
    let mut power = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for c in h_series_coeffs(alpha, boundary, boundary.degree()) {
        acc += c * power;
        power *= zc;
    }
    acc
}

/// G_α(z) = (1/2π)∫ g_α(ze^{−it}) F(e^{it}) dt by the trapezoid.
pub fn g_average(
    alpha: AlphaParam,
    boundary: &BoundaryFunction,
    z: DiskPoint,
    quad: &QuadratureConfig,
) -> Complex64 {
    if z.r() == 0.0 {
        return boundary.mean();
    }
    let n = quad.circle_nodes(alpha.value(), z.r());
    let samples = boundary.samples(n);
    // g_α(ze^{−it}) = (1−|z|²)^α (1 − z̄e^{it})^{−α}
    let zc = z.z().conj();
    let a = alpha.value();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, fk) in samples.iter().enumerate() {
        let w = Complex64::new(1.0, 0.0) - zc * Complex64::from_polar(1.0, grid_angle(k, n));
        acc += cpow(w, -a) * fk;
    }
    acc * z.weight_base().powf(a) / n as f64
}

pub fn ghk(
    alpha: AlphaParam,
    boundary: &BoundaryFunction,
    z: DiskPoint,
    quad: &QuadratureConfig,
) -> Ghk {
    let g = g_average(alpha, boundary, z, quad);
    let h_quotient = g / z.weight_base().powf(alpha.value());
    let h_series = h_series(alpha, boundary, z);
    Ghk {
        g,
        h_quotient,
        h_series,
        k: h_series - boundary.mean(),
    }
}

/// (1/2π)∫|P(ze^{−it}) − (1−|z|²)/(1+|z|²)| dt.
///
/// The integrand has kinks where cos t = 0 (relative to arg z); the integral
/// is split there and each smooth piece is integrated adaptively.
pub fn hethcote_deviation(z: DiskPoint) -> f64 {
    let r = z.r();
    if r == 0.0 {
        return 0.0;
    }
    let w = one_minus_r2(r);
    let level = w / (1.0 + r * r);
    let dev = |t: f64| (w / abs_one_minus_sq(r, t) - level).abs();
    // even in t, so integrate over [0, π] only
    let half = PI / 2.0;
    let inner = integrate_adaptive(0.0, half, HETHCOTE_TOL, &dev);
    let outer = integrate_adaptive(half, PI, HETHCOTE_TOL, &dev);
    (inner + outer) / PI
}

/// The four Schwarz-type checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Lemma31,
    Lemma32,
    Thm33,
    Cor34,
}

impl Which {
    pub const ALL: [Which; 4] = [Which::Lemma31, Which::Lemma32, Which::Thm33, Which::Cor34];

    pub fn as_str(&self) -> &'static str {
        match self {
            Which::Lemma31 => "lemma31",
            Which::Lemma32 => "lemma32",
            Which::Thm33 => "thm33",
            Which::Cor34 => "cor34",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Which::ALL
            .into_iter()
            .find(|w| w.as_str() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown check {s:?}; expected lemma31, lemma32, thm33 or cor34"
                ))
            })
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzEntry {
    pub lhs: f64,
    pub rhs: f64,
    /// Weaker closed-form right-hand side, reported for lemma31 only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_closed_form: Option<f64>,
}

impl SchwarzEntry {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Right-hand side of the two-branch Schwarz-type bound (α ≥ 0 and α < 0).
pub fn thm33_rhs(alpha: f64, r: f64) -> f64 {
    let at = r.atan();
    let q = 1.0 - r;
    if alpha >= 0.0 {
        2f64.powf(alpha + 2.0) / PI * at + 2f64.powf(alpha + 1.0) * q * (1.0 - q.powf(alpha))
    } else {
        FRAC_4_PI * q.powf(alpha) * at + (q.powf(alpha) - 1.0)
    }
}

/// A simpler, weaker bound valid for α > 0.
pub fn cor34_rhs(alpha: f64, r: f64) -> f64 {
    let tail = if alpha <= 1.0 {
        r.powf(alpha)
    } else {
        alpha * r
    };
    2f64.powf(alpha + 1.0) * (FRAC_2_PI * r.atan() + tail)
}

/// (1/2π)∫|(1−re^{it})^{−α} − 1| dt.
pub fn lemma32_lhs(alpha: AlphaParam, r: f64, quad: &QuadratureConfig) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let a = alpha.value();
    let n = quad.circle_nodes(a, r);
    periodic_mean(n, 0.0, |t| {
        let w = Complex64::new(1.0, 0.0) - Complex64::from_polar(r, t);
        (cpow(w, -a) - 1.0).norm()
    })
}

/// Evaluates one check for f = P_α[F] at z; F must satisfy ‖F‖_∞ ≤ 1.
pub fn schwarz_check(
    f: &AlphaHarmonicFunction,
    z: DiskPoint,
    which: Which,
) -> Result<SchwarzEntry> {
    let sup = checked_sup(f, which)?;
    evaluate(f, z, which, sup, None)
}

fn checked_sup(f: &AlphaHarmonicFunction, which: Which) -> Result<f64> {
    let sup = f.boundary().lp_norm(NormIndex::INFINITY);
    if sup > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "boundary sup norm {sup} exceeds 1"
        )));
    }
    let a = f.alpha().value();
    if which == Which::Cor34 && a <= 0.0 {
        return Err(Error::Domain(format!("cor34 requires alpha > 0, got {a}")));
    }
    Ok(sup)
}

fn evaluate(
    f: &AlphaHarmonicFunction,
    z: DiskPoint,
    which: Which,
    sup: f64,
    g_sup: Option<f64>,
) -> Result<SchwarzEntry> {
    let alpha = f.alpha();
    let a = alpha.value();
    let r = z.r();
    let w = z.weight_base();
    let damp = 1.0 + r * r;
    let entry = match which {
        Which::Lemma31 => {
            let g = g_average(alpha, f.boundary(), z, f.quad());
            let lhs = (f.extend(z)? - g * (w / damp)).norm();
            let g_sup = match g_sup {
                Some(v) => v,
                None => g_alpha_sup(alpha, r)?,
            };
            SchwarzEntry {
                lhs,
                rhs: FRAC_4_PI * g_sup * r.atan() * sup,
                rhs_closed_form: Some(FRAC_4_PI * g_alpha_sup_bound(alpha, r) * r.atan() * sup),
            }
        }
        Which::Lemma32 => SchwarzEntry {
            lhs: lemma32_lhs(alpha, r, f.quad()),
            rhs: ((1.0 - r).powf(-a) - 1.0).abs(),
            rhs_closed_form: None,
        },
        Which::Thm33 | Which::Cor34 => {
            let f0 = f.boundary().mean();
            let lhs = (f.extend(z)? - f0 * (w.powf(a + 1.0) / damp)).norm();
            let rhs = if which == Which::Thm33 {
                thm33_rhs(a, r)
            } else {
                cor34_rhs(a, r)
            };
            SchwarzEntry {
                lhs,
                rhs,
                rhs_closed_form: None,
            }
        }
    };
    Ok(entry)
}

/// Results of one check over a point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzReport {
    pub alpha: f64,
    pub which: Which,
    pub points: Vec<Complex64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_closed_form: Option<Vec<f64>>,
    /// min over points of rhs − lhs.
    pub max_slack: f64,
    pub violated: bool,
}

impl SchwarzReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schwarz report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,lhs,rhs,slack\n");
        for ((z, l), r) in self.points.iter().zip(&self.lhs).zip(&self.rhs) {
            out.push_str(&format!("{},{},{l},{r},{}\n", z.re, z.im, r - l));
        }
        out
    }
}

/// 8 radii 0.95·i/7 times 8 equally spaced angles (the origin included).
pub fn standard_points() -> Vec<DiskPoint> {
    let mut pts = Vec::with_capacity(64);
    for i in 0..8 {
        let r = 0.95 * i as f64 / 7.0;
        for k in 0..8 {
            pts.push(DiskPoint::from_polar(r, grid_angle(k, 8) + 0.1).expect("radius below 1"));
        }
    }
    pts
}

/// α values of the Schwarz sweep.
pub const SCHWARZ_ALPHAS: [f64; 8] = [-0.9, -0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 3.0];

pub fn schwarz_report(
    f: &AlphaHarmonicFunction,
    points: &[DiskPoint],
    which: Which,
) -> Result<SchwarzReport> {
    let sup = checked_sup(f, which)?;
    // g_α sup depends on |z| only; points of a sweep share few radii
    let mut radii: Vec<f64> = points.iter().map(|p| p.r()).collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let g_sups = if which == Which::Lemma31 {
        radii
            .par_iter()
            .map(|&r| g_alpha_sup(f.alpha(), r))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let lookup = |r: f64| {
        radii
            .binary_search_by(|x| x.total_cmp(&r))
            .ok()
            .and_then(|i| g_sups.get(i).copied())
    };
    let entries = points
        .par_iter()
        .map(|&z| evaluate(f, z, which, sup, lookup(z.r())))
        .collect::<Result<Vec<_>>>()?;
    let max_slack = entries
        .iter()
        .map(SchwarzEntry::slack)
        .fold(f64::INFINITY, f64::min);
    let closed: Option<Vec<f64>> = entries.iter().map(|e| e.rhs_closed_form).collect();
    Ok(SchwarzReport {
        alpha: f.alpha().value(),
        which,
        points: points.iter().map(|p| p.z()).collect(),
        lhs: entries.iter().map(|e| e.lhs).collect(),
        rhs: entries.iter().map(|e| e.rhs).collect(),
        rhs_closed_form: closed,
        max_slack,
        violated: max_slack < -SCHWARZ_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn normalized(seed: u64) -> BoundaryFunction {
        BoundaryFunction::random(seed, 16)
            .unwrap()
            .normalized_sup(NORMALIZED_SUP)
            .unwrap()
    }

    #[test]
    fn g_alpha_sup_examples() {
        for &r in &[0.0, 0.4, 0.9] {
            assert!((g_alpha_sup(alpha(0.0), r).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((g_alpha_sup(alpha(2.0), 0.5).unwrap() - 2.25).abs() < 1e-13);
        assert!((g_alpha_sup(alpha(-0.5), 0.75).unwrap() - 2.0).abs() < 1e-13);
        for &a in &[-0.9, -0.3, 0.5, 3.0] {
            for j in 0..100 {
                let r = j as f64 / 100.0;
                let s = g_alpha_sup(alpha(a), r).unwrap();
                assert!(s <= g_alpha_sup_bound(alpha(a), r) + 1e-9);
            }
        }
    }

    #[test]
    fn ghk_examples() {
        let q = QuadratureConfig::default();
        let b = BoundaryFunction::random(2, 10).unwrap();
        let z = DiskPoint::new(c(0.3, -0.6)).unwrap();
        let g0 = ghk(alpha(0.0), &b, z, &q);
        assert!((g0.g - b.mean()).norm() < 1e-14);
        let analytic = b.analytic_part();
        let h = ghk(alpha(1.3), &analytic, z, &q);
        assert!((h.h_series - analytic.mean()).norm() < 1e-15);
        assert_eq!(h.k, c(0.0, 0.0));
        assert!((h.h_quotient - analytic.mean()).norm() < 1e-12);
        let conj = BoundaryFunction::mode(-1, c(1.0, 0.0)).unwrap();
        let h = ghk(alpha(1.0), &conj, DiskPoint::new(c(0.5, 0.0)).unwrap(), &q);
        assert!((h.h_series - 0.5).norm() < 1e-15);
        assert!((h.k - 0.5).norm() < 1e-15);
    }

    #[test]
    fn h_quotient_matches_series_on_sweep() {
        let q = QuadratureConfig::default();
        for seed in 0..20 {
            let b = normalized(seed);
            for &a in &SCHWARZ_ALPHAS {
                for z in standard_points() {
                    let h = ghk(alpha(a), &b, z, &q);
                    assert!(
                        (h.h_quotient - h.h_series).norm() < 1e-9,
                        "seed {seed} a {a} z {}",
                        z.z()
                    );
                }
            }
        }
    }

    #[test]
    fn hethcote_examples() {
        assert_eq!(hethcote_deviation(DiskPoint::origin()), 0.0);
        let a = hethcote_deviation(DiskPoint::new(c(0.5, 0.0)).unwrap());
        let b = hethcote_deviation(DiskPoint::new(c(0.0, 0.5)).unwrap());
        assert!((a - b).abs() < 1e-10);
        assert!(a <= FRAC_4_PI * 0.5f64.atan() + 1e-8);
        for j in 0..100 {
            let r = j as f64 / 100.0;
            let v = hethcote_deviation(DiskPoint::from_polar(r, 0.0).unwrap());
            assert!(v <= FRAC_4_PI * r.atan() + 1e-8, "r {r}: {v}");
        }
    }

    #[test]
    fn degenerate_origin_is_exact() {
        let b = normalized(4);
        for &a in &SCHWARZ_ALPHAS {
            let f = AlphaHarmonicFunction::new(alpha(a), b.clone());
            for which in Which::ALL {
                if which == Which::Cor34 && a <= 0.0 {
                    continue;
                }
                let e = schwarz_check(&f, DiskPoint::origin(), which).unwrap();
                assert_eq!((e.lhs, e.rhs), (0.0, 0.0), "{which} a {a}");
            }
        }
    }

    #[test]
    fn hand_examples() {
        let one = BoundaryFunction::constant(c(1.0, 0.0));
        let f = AlphaHarmonicFunction::new(alpha(1.0), one);
        let e = schwarz_check(&f, DiskPoint::new(c(0.5, 0.0)).unwrap(), Which::Thm33).unwrap();
        assert!((e.lhs - 0.55).abs() < 1e-14);
        assert!((e.rhs - (8.0 / PI * 0.5f64.atan() + 1.0)).abs() < 1e-14);
        let g = AlphaHarmonicFunction::new(alpha(-0.5), BoundaryFunction::zero(0));
        let e = schwarz_check(&g, DiskPoint::new(c(0.5, 0.0)).unwrap(), Which::Lemma32).unwrap();
        assert!((e.rhs - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
        assert!(e.lhs < e.rhs);
    }

    #[test]
    fn lemma31_at_alpha_zero_is_hethcote() {
        let q = QuadratureConfig::default();
        for seed in 0..5 {
            let b = normalized(seed);
            let f = AlphaHarmonicFunction::new(alpha(0.0), b.clone());
            for z in standard_points() {
                let e = schwarz_check(&f, z, Which::Lemma31).unwrap();
                let w = z.weight_base() / (1.0 + z.r() * z.r());
                let direct = (f.extend(z).unwrap() - b.mean() * w).norm();
                assert!((e.lhs - direct).abs() < 1e-10);
                assert!((g_average(alpha(0.0), &b, z, &q) - b.mean()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn preconditions() {
        let big = BoundaryFunction::constant(c(2.0, 0.0));
        let f = AlphaHarmonicFunction::new(alpha(1.0), big);
        let z = DiskPoint::new(c(0.2, 0.0)).unwrap();
        assert!(matches!(
            schwarz_check(&f, z, Which::Thm33),
            Err(Error::Precondition(_))
        ));
        let g = AlphaHarmonicFunction::new(alpha(-0.5), normalized(1));
        assert!(matches!(
            schwarz_check(&g, z, Which::Cor34),
            Err(Error::Domain(_))
        ));
        assert!("thm34".parse::<Which>().is_err());
        assert_eq!("cor34".parse::<Which>().unwrap(), Which::Cor34);
    }

    #[test]
    fn relaxed_bound_dominates() {
        for &a in &[0.1, 0.5, 1.0, 1.5, 3.0] {
            for j in 0..=95 {
                let r = j as f64 / 100.0;
                assert!(cor34_rhs(a, r) - thm33_rhs(a, r) >= -1e-12, "a {a} r {r}");
            }
        }
    }

    #[test]
    fn sweep_holds() {
        for seed in 0..20 {
            let b = normalized(seed);
            for &a in &SCHWARZ_ALPHAS {
                let f = AlphaHarmonicFunction::new(alpha(a), b.clone());
                for which in Which::ALL {
                    if which == Which::Cor34 && a <= 0.0 {
                        continue;
                    }
                    let rep = schwarz_report(&f, &standard_points(), which).unwrap();
                    assert!(
                        !rep.violated,
                        "{which} a {a} seed {seed}: {}",
                        rep.max_slack
                    );
                }
            }
        }
    }

    #[test]
    fn report_round_trips() {
        let f = AlphaHarmonicFunction::new(alpha(0.5), normalized(3));
        let rep = schwarz_report(&f, &standard_points()[..10], Which::Lemma31).unwrap();
        let back: SchwarzReport = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        assert_eq!(rep.to_csv().lines().count(), 11);
    }
}
