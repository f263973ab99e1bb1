//! Integral means on circles, Hardy-type sup norms with a growth verdict, and
//! normalized area L^p norms over sub-disks.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::boundary::grid_angle;
use crate::error::{Error, Result};

/// Norm index p ∈ [1, ∞].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NormIndex(f64);

impl NormIndex {
    pub const INFINITY: NormIndex = NormIndex(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("norm index must be >= 1, got {p}")));
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    /// (Σ vᵖ / n)^{1/p}, or the max for p = ∞.
    pub(crate) fn mean_of<I>(&self, abs_values: I, n: usize) -> f64
    where
        I: Iterator<Item = f64>,
    {
        if self.is_infinite() {
            abs_values.fold(0.0, f64::max)
        } else if self.0 == 1.0 {
            abs_values.sum::<f64>() / n as f64
        } else {
            (abs_values.map(|v| v.powf(self.0)).sum::<f64>() / n as f64).powf(1.0 / self.0)
        }
    }
}

impl fmt::Display for NormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for NormIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "∞" => Ok(Self::INFINITY),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid norm index {other:?}")))?;
                Self::new(p)
            }
        }
    }
}

impl Serialize for NormIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for NormIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(p) => NormIndex::new(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Anything that can be evaluated on the disk.
pub trait DiskFunction: Sync {
    fn eval(&self, z: Complex64) -> Complex64;

    /// Values at r·e^{iθ_k}, θ_k = 2πk/n.
    fn circle_values(&self, r: f64, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| self.eval(Complex64::from_polar(r, grid_angle(k, n))))
            .collect()
    }

    /// Angular node count adequate for this function's circle means.
    fn suggested_nodes(&self) -> usize {
        4096
    }
}

impl<F> DiskFunction for F
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval(&self, z: Complex64) -> Complex64 {
        self(z)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("radius must lie in [0, 1), got {r}")));
    }
    Ok(())
}

fn finite_abs(values: &[Complex64], r: f64) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|v| {
            let a = v.norm();
            if a.is_finite() {
                Ok(a)
            } else {
                Err(Error::NonFinite(format!(
                    "sample {v} on the circle r = {r}"
                )))
            }
        })
        .collect()
}

/// M_p(r, g) by the trapezoid on `n_theta` angles (grid max for p = ∞).
pub fn mean_p<G: DiskFunction + ?Sized>(
    g: &G,
    r: f64,
    p: NormIndex,
    n_theta: usize,
) -> Result<f64> {
    check_radius(r)?;
    let abs = finite_abs(&g.circle_values(r, n_theta), r)?;
    Ok(p.mean_of(abs.into_iter(), n_theta))
}

/// r_j = 1 − 2^{−j}, j = 1..=14.
pub fn default_grid() -> Vec<f64> {
    dyadic_grid(1, 14)
}

pub fn dyadic_grid(first: i32, last: i32) -> Vec<f64> {
    (first..=last).map(|j| 1.0 - 2f64.powi(-j)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Growing,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Bounded => "bounded",
            Verdict::Growing => "growing",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Minimum coefficient of determination for a "growing" verdict.
pub const R2_GATE: f64 = 0.99;
/// Fitted exponents above −0.05 are treated as no growth.
pub const GROWTH_EXPONENT_FLOOR: f64 = -0.05;
/// Means at or below this level everywhere are treated as identically zero.
pub const NEGLIGIBLE_MEAN: f64 = 1e-10;

/// Least-squares line y = a + b x; returns (b, R²).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Some((slope, r2))
}

/// Result of a radial sweep of M_p(r, g).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub p: NormIndex,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub sup: f64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_squared: Option<f64>,
}

impl NormReport {
    /// Classifies growth from a log–log fit of M_p against (1 − r) over the
    /// outer half of the grid (at least three points).
    pub fn from_values(p: NormIndex, grid: Vec<f64>, values: Vec<f64>) -> Self {
        let sup = values.iter().copied().fold(0.0, f64::max);
        let n = grid.len();
        let tail = (n / 2).max(3).min(n);
        let start = n - tail;
        let (verdict, exponent, r_squared) = if sup <= NEGLIGIBLE_MEAN {
            (Verdict::Bounded, None, None)
        } else if tail < 3 || values[start..].iter().any(|&v| v <= 0.0) {
            (Verdict::Inconclusive, None, None)
        } else {
            let xs: Vec<f64> = grid[start..].iter().map(|r| (1.0 - r).ln()).collect();
            let ys: Vec<f64> = values[start..].iter().map(|v| v.ln()).collect();
            match linear_fit(&xs, &ys) {
                Some((slope, r2)) => {
                    let verdict = if slope >= GROWTH_EXPONENT_FLOOR {
                        Verdict::Bounded
                    } else if r2 > R2_GATE {
                        Verdict::Growing
                    } else {
                        Verdict::Inconclusive
                    };
                    (verdict, Some(slope), Some(r2))
                }
                None => (Verdict::Inconclusive, None, None),
            }
        };
        Self {
            p,
            grid,
            values,
            sup,
            verdict,
            exponent,
            r_squared,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("norm report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,M_p\n");
        for (r, v) in self.grid.iter().zip(&self.values) {
            out.push_str(&format!("{r},{v}\n"));
        }
        out
    }
}

/// Evaluates M_p on each grid radius and classifies the growth.
pub fn hardy_norm<G: DiskFunction + ?Sized>(
    g: &G,
    p: NormIndex,
    grid: &[f64],
    n_theta: usize,
) -> Result<NormReport> {
    if grid.is_empty() {
        return Err(Error::Domain("radial grid is empty".into()));
    }
    for r in grid {
        check_radius(*r)?;
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "radial grid must be strictly increasing".into(),
        ));
    }
    let values = grid
        .iter()
        .map(|&r| mean_p(g, r, p, n_theta))
        .collect::<Result<Vec<_>>>()?;
    Ok(NormReport::from_values(p, grid.to_vec(), values))
}

/// Polar grid for area norms: uniform in u = −ln(1 − r), trapezoid in θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaGrid {
    pub nodes_per_unit: usize,
    pub n_theta: usize,
}

impl Default for AreaGrid {
    fn default() -> Self {
        Self {
            nodes_per_unit: 64,
            n_theta: 2048,
        }
    }
}

/// (1/π)∬_{|z|≤R} |g|ᵖ dA for each R in `radii` (ascending).
///
/// The radial integral runs over u = −ln(1 − r) on a fixed uniform grid and
/// integrates the piecewise-linear interpolant of the samples, so the result
/// is nondecreasing in R exactly.
pub fn area_lp_powers<G: DiskFunction + ?Sized>(
    g: &G,
    p: NormIndex,
    radii: &[f64],
    grid: &AreaGrid,
) -> Result<Vec<f64>> {
    if p.is_infinite() {
        return Err(Error::Domain("area norms need a finite p".into()));
    }
    if grid.nodes_per_unit == 0 || grid.n_theta == 0 {
        return Err(Error::Domain("area grid needs positive node counts".into()));
    }
    for &r in radii {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!(
                "outer radius must lie in (0, 1), got {r}"
            )));
        }
    }
    if radii.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("outer radii must be ascending".into()));
    }
    let Some(&r_max) = radii.last() else {
        return Ok(Vec::new());
    };
    let h = 1.0 / grid.nodes_per_unit as f64;
    let u_max = -(1.0 - r_max).ln();
    let k_max = (u_max / h).ceil() as usize + 1;
    let pv = p.value();
    let integrand = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let u = h * k as f64;
            let gap = (-u).exp();
            let r = 1.0 - gap;
            let abs = finite_abs(&g.circle_values(r, grid.n_theta), r)?;
            let mean_pow = abs.iter().map(|v| v.powf(pv)).sum::<f64>() / grid.n_theta as f64;
            // dA/π = 2r dr dθ/2π and dr = (1 − r) du
            Ok(2.0 * r * gap * mean_pow)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut cumulative = vec![0.0; k_max + 1];
    for k in 1..=k_max {
        cumulative[k] = cumulative[k - 1] + 0.5 * h * (integrand[k - 1] + integrand[k]);
    }
    Ok(radii
        .iter()
        .map(|&r| {
            let u = -(1.0 - r).ln();
            let k = ((u / h).floor() as usize).min(k_max - 1);
            let frac = u - h * k as f64;
            let slope = (integrand[k + 1] - integrand[k]) / h;
            cumulative[k] + frac * integrand[k] + 0.5 * frac * frac * slope
        })
        .collect())
}

/// (1/π ∬_{|z|≤R} |g|ᵖ dA)^{1/p}.
pub fn area_lp_norm<G: DiskFunction + ?Sized>(
    g: &G,
    p: NormIndex,
    outer: f64,
    grid: &AreaGrid,
) -> Result<f64> {
    let powers = area_lp_powers(g, p, &[outer], grid)?;
    Ok(powers[0].powf(1.0 / p.value()))
}

/// Behaviour of an increasing sequence such as area norms over R_j → 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Converging,
    Diverging,
    Inconclusive,
}

/// Tail increment ratios at or below this value count as convergence.
pub const CONVERGE_RATIO: f64 = 0.97;
/// Tail increment ratios at or above this value count as divergence.
pub const DIVERGE_RATIO: f64 = 0.99;

/// Geometric-mean ratio q of the last increments Δ_k = v_{k+1} − v_k over
/// three steps, q = (Δ_last/Δ_{last−3})^{1/3}, and the trend it implies.
///
/// On a dyadic grid R_j = 1 − 2^{−j} a tail like (1−R)^κ gives q = 2^{−κ};
/// logarithmic growth gives q → 1.
pub fn increment_trend(values: &[f64]) -> Result<(f64, Trend)> {
    let n = values.len();
    if n < 5 {
        return Err(Error::Domain(format!(
            "trend needs at least 5 values, got {n}"
        )));
    }
    let last = values[n - 1] - values[n - 2];
    let earlier = values[n - 4] - values[n - 5];
    let scale = values[n - 1].abs();
    if last.abs() <= 1e-13 * scale {
        return Ok((0.0, Trend::Converging));
    }
    if !(earlier > 0.0 && last > 0.0) {
        return Ok((1.0, Trend::Inconclusive));
    }
    let q = (last / earlier).powf(1.0 / 3.0);
    let trend = if q <= CONVERGE_RATIO {
        Trend::Converging
    } else if q >= DIVERGE_RATIO {
        Trend::Diverging
    } else {
        Trend::Inconclusive
    };
    Ok((q, trend))
}

/// Slope of ln v against ln(1 − R²) over the outer half of the points.
pub fn weight_exponent(radii: &[f64], values: &[f64]) -> Option<f64> {
    let n = radii.len().min(values.len());
    let start = n - (n / 2).max(3).min(n);
    if values[start..n].iter().any(|&v| !(v > 0.0)) {
        return None;
    }
    let xs: Vec<f64> = radii[start..n]
        .iter()
        .map(|r| ((1.0 - r) * (1.0 + r)).ln())
        .collect();
    let ys: Vec<f64> = values[start..n].iter().map(|v| v.ln()).collect();
    linear_fit(&xs, &ys).map(|(slope, _)| slope)
}
