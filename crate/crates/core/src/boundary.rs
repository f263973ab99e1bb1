//! Boundary data on the unit circle as truncated Fourier series.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier;
use crate::norms::NormIndex;

/// Largest supported trigonometric degree.
pub const MAX_DEGREE: usize = 1024;

/// Degree of the seeded random boundaries used by the property sweeps.
pub const DEFAULT_RANDOM_DEGREE: usize = 16;

/// F(e^{iθ}) = Σ_{|n| ≤ degree} c_n e^{inθ}.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    degree: usize,
    // index n + degree
    coeffs: Vec<Complex64>,
}

impl BoundaryFunction {
    /// Builds from (n, c_n) pairs; repeated frequencies are summed.
    pub fn from_coeffs<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let pairs: Vec<(i64, Complex64)> = coeffs.into_iter().collect();
        let degree = pairs
            .iter()
            .map(|(n, _)| n.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut out = Self::zero(degree);
        for (n, c) in pairs {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite(format!("coefficient {n} = {c}")));
            }
            out.coeffs[(n + degree as i64) as usize] += c;
        }
        Ok(out)
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * degree + 1],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self {
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// c·e^{inθ}.
    pub fn mode(n: i64, c: Complex64) -> Result<Self> {
        Self::from_coeffs([(n, c)])
    }

    /// Discrete Fourier projection of M uniform samples θ_k = 2πk/M.
    ///
    /// M must be a power of two. Without a target degree, every resolvable
    /// frequency |n| < M/2 is kept (capped at [`MAX_DEGREE`]).
    pub fn from_samples(samples: &[Complex64], degree: Option<usize>) -> Result<Self> {
        let m = samples.len();
        if m == 0 || !m.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(m));
        }
        if let Some((k, v)) = samples
            .iter()
            .enumerate()
            .find(|(_, v)| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::NonFinite(format!("sample {k} = {v}")));
        }
        let degree = match degree {
            Some(d) => {
                if d > MAX_DEGREE {
                    return Err(Error::DegreeOverflow {
                        degree: d,
                        max: MAX_DEGREE,
                    });
                }
                if m < 2 * d + 2 {
                    return Err(Error::TooFewSamples {
                        samples: m,
                        degree: d,
                        needed: 2 * d + 2,
                    });
                }
                d
            }
            None => (m / 2).saturating_sub(1).min(MAX_DEGREE),
        };
        let spectrum = fourier::analyze(samples);
        let mut out = Self::zero(degree);
        for n in -(degree as i64)..=degree as i64 {
            out.coeffs[(n + degree as i64) as usize] = spectrum[n.rem_euclid(m as i64) as usize];
        }
        Ok(out)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// c_n, zero outside the stored range.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.degree {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.degree as i64) as usize]
        }
    }

    /// All stored (n, c_n) pairs in increasing n.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let d = self.degree as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, &c)| (k as i64 - d, c))
    }

    pub fn mean(&self) -> Complex64 {
        self.coeff(0)
    }

    /// True iff c_n = 0 for every n < 0.
    pub fn is_analytic_type(&self) -> bool {
        self.coeffs[..self.degree]
            .iter()
            .all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.terms()
            .map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * theta))
            .sum()
    }

    /// F at θ_k = 2πk/n.
    pub fn samples(&self, n: usize) -> Vec<Complex64> {
        let terms: Vec<_> = self.terms().collect();
        fourier::synthesize(&terms, n)
    }

    fn map_coeffs<M>(&self, mut m: M) -> Self
    where
        M: FnMut(i64, Complex64) -> Complex64,
    {
        let d = self.degree as i64;
        Self {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| m(k as i64 - d, c))
                .collect(),
        }
    }

    /// Ḟ = dF/dθ, multiplier i·n.
    pub fn differentiate(&self) -> Self {
        self.map_coeffs(|n, c| c * Complex64::new(0.0, n as f64))
    }

    /// Conjugate-function transform, multiplier −i·sgn(n).
    pub fn hilbert_transform(&self) -> Self {
        self.map_coeffs(|n, c| c * Complex64::new(0.0, -(n.signum() as f64)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_coeffs(|_, c| c * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        let degree = self.degree.max(other.degree);
        let mut out = Self::zero(degree);
        for (n, c) in self.terms().chain(other.terms()) {
            out.coeffs[(n + degree as i64) as usize] += c;
        }
        out
    }

    /// Copy with every negative frequency removed.
    pub fn analytic_part(&self) -> Self {
        self.map_coeffs(|n, c| if n < 0 { Complex64::new(0.0, 0.0) } else { c })
    }

    /// Node count used for boundary norms: max(4096, 16·degree).
    pub fn norm_grid_size(&self) -> usize {
        4096.max(16 * self.degree)
    }

    /// ‖F‖_p on the unit circle by the uniform trapezoid (max over the grid for p = ∞).
    pub fn lp_norm(&self, p: NormIndex) -> f64 {
        let values = self.samples(self.norm_grid_size());
        p.mean_of(values.iter().map(|v| v.norm()), values.len())
    }

    /// Seeded random boundary: complex Gaussian c_n scaled by 1/(1+n²).
    pub fn random(seed: u64, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = degree as i64;
        Self::from_coeffs((-d..=d).map(|n| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            (n, Complex64::new(re, im) / (1.0 + (n * n) as f64))
        }))
    }

    /// Rescaled copy whose sup on the norm grid equals `target`.
    pub fn normalized_sup(&self, target: f64) -> Result<Self> {
        let sup = self.lp_norm(NormIndex::INFINITY);
        if !(sup > 0.0) {
            return Err(Error::Domain("cannot normalize the zero boundary".into()));
        }
        Ok(self.scale(Complex64::new(target / sup, 0.0)))
    }

    pub fn to_file(&self) -> BoundaryFile {
        BoundaryFile {
            coeffs: self
                .terms()
                .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
                .map(|(n, c)| CoeffEntry {
                    n,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: BoundaryFile = serde_json::from_str(s)?;
        file.try_into()
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("boundary file serializes")
    }
}

/// On-disk boundary schema: `{"coeffs": [{"n": 1, "re": 1.0, "im": 0.0}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryFile {
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub n: i64,
    pub re: f64,
    pub im: f64,
}

impl TryFrom<BoundaryFile> for BoundaryFunction {
    type Error = Error;

    fn try_from(file: BoundaryFile) -> Result<Self> {
        BoundaryFunction::from_coeffs(
            file.coeffs
                .into_iter()
                .map(|e| (e.n, Complex64::new(e.re, e.im))),
        )
    }
}

/// θ_k = 2πk/n.
pub(crate) fn grid_angle(k: usize, n: usize) -> f64 {
    2.0 * PI * k as f64 / n as f64
}
