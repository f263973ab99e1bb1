//! The extension f = P_α[F] of boundary data into the disk.
//!
//! Two engines are available. The quadrature engine integrates the kernel
//! against F on the circle; the series engine sums the finite expansion
//! Σ c_n e_{α,n}(z), where e_{α,n} = zⁿ for n ≥ 0 and the negative modes
//! carry a radial t-integral.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{grid_angle, BoundaryFunction};
use crate::error::{Error, Result};
use crate::fourier;
use crate::kernel::{one_minus_r2, poisson_kernel, DiskPoint};
use crate::norms::DiskFunction;
use crate::quadrature::{integrate_doubling, QuadratureConfig};
use crate::special::{inv_beta_int, AlphaParam};

const T_INTEGRAL_TOL: f64 = 1e-13;

/// J(k, β, r) = ∫₀¹ t^{k−1} (1 − t r²)^β dt for k ≥ 1 and 0 ≤ r < 1.
///
/// Gauss–Legendre in t while r² ≤ 1/2. Closer to the boundary the factor
/// (1 − t r²)^β develops an endpoint layer of width 1 − r², so the integral
/// is taken in v = ln(1 − t r²) instead, where it is smooth.
pub fn t_integral(k: u32, beta: f64, r: f64, start_nodes: usize) -> f64 {
    debug_assert!(k >= 1);
    let s = r * r;
    if s == 0.0 || beta == 0.0 {
        return 1.0 / k as f64;
    }
    let km1 = (k - 1) as i32;
    if s <= 0.5 {
        let (v, _) = integrate_doubling(0.0, 1.0, start_nodes, T_INTEGRAL_TOL, |t| {
            t.powi(km1) * (1.0 - t * s).powf(beta)
        });
        v
    } else {
        let eps = one_minus_r2(r);
        let (v, _) = integrate_doubling(eps.ln(), 0.0, start_nodes, T_INTEGRAL_TOL, |v| {
            let t = -v.exp_m1() / s;
            t.powi(km1) * ((beta + 1.0) * v).exp() / s
        });
        v
    }
}

/// |e_{α,−m}(re^{iθ})| factor: e_{α,−m}(re^{iθ}) = radial · e^{−imθ}.
pub fn e_minus_radial(alpha: AlphaParam, m: u32, r: f64, quad: &QuadratureConfig) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let a = alpha.value();
    inv_beta_int(m, a + 1.0) * t_integral(m, a, r, quad.t_nodes) * r.powi(m as i32)
}

/// e_{α,k}(z): zᵏ for k ≥ 0, the weighted conjugate power for k < 0.
pub fn e_alpha_k(alpha: AlphaParam, k: i64, z: DiskPoint, quad: &QuadratureConfig) -> Complex64 {
    if k >= 0 {
        return z.z().powu(k as u32);
    }
    let m = k.unsigned_abs() as u32;
    let r = z.r();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let a = alpha.value();
    inv_beta_int(m, a + 1.0) * t_integral(m, a, r, quad.t_nodes) * z.z().conj().powu(m)
}

/// ∂̄e_{α,−k}(z) = (1/B(k, α+1)) (1−|z|²)^α z̄^{k−1}, k ≥ 1.
pub fn dbar_e_minus_k(alpha: AlphaParam, k: u32, z: DiskPoint) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::Domain("dbar_e_minus_k needs k >= 1".into()));
    }
    let a = alpha.value();
    Ok(inv_beta_int(k, a + 1.0) * z.weight_base().powf(a) * z.z().conj().powu(k - 1))
}

/// ∂e_{α,−k}(z), differentiating the t-integral under the integral sign:
/// −α (1/B(k, α+1)) z̄^{k+1} ∫₀¹ tᵏ (1 − t|z|²)^{α−1} dt.
pub fn dz_e_minus_k(
    alpha: AlphaParam,
    k: u32,
    z: DiskPoint,
    quad: &QuadratureConfig,
) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::Domain("dz_e_minus_k needs k >= 1".into()));
    }
    let a = alpha.value();
    if a == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let j = t_integral(k + 1, a - 1.0, z.r(), quad.t_nodes);
    Ok(-a * inv_beta_int(k, a + 1.0) * j * z.z().conj().powu(k + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Quadrature,
    #[default]
    Series,
}

/// f = P_α[F] with a chosen evaluation engine.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaHarmonicFunction {
    alpha: AlphaParam,
    boundary: BoundaryFunction,
    engine: Engine,
    quad: QuadratureConfig,
}

impl AlphaHarmonicFunction {
    pub fn new(alpha: AlphaParam, boundary: BoundaryFunction) -> Self {
        Self {
            alpha,
            boundary,
            engine: Engine::default(),
            quad: QuadratureConfig::default(),
        }
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_quad(mut self, quad: QuadratureConfig) -> Self {
        self.quad = quad;
        self
    }

    /// Same α, engine and quadrature over different boundary data.
    pub fn with_boundary(&self, boundary: BoundaryFunction) -> Self {
        Self {
            alpha: self.alpha,
            boundary,
            engine: self.engine,
            quad: self.quad,
        }
    }

    #[inline]
    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    #[inline]
    pub fn boundary(&self) -> &BoundaryFunction {
        &self.boundary
    }

    #[inline]
    pub fn engine(&self) -> Engine {
        self.engine
    }

    #[inline]
    pub fn quad(&self) -> &QuadratureConfig {
        &self.quad
    }

    /// f(z) with the configured engine.
    pub fn extend(&self, z: DiskPoint) -> Result<Complex64> {
        let v = self.eval_raw(z);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!(
                "extension at {} evaluated to {v}",
                z.z()
            )))
        }
    }

    pub(crate) fn eval_raw(&self, z: DiskPoint) -> Complex64 {
        match self.engine {
            Engine::Quadrature => self.extend_quadrature(z),
            Engine::Series => self.extend_series(z),
        }
    }

    /// (1/2π)∫ P_α(z e^{−it}) F(e^{it}) dt by the trapezoid with N(|z|) nodes.
    pub fn extend_quadrature(&self, z: DiskPoint) -> Complex64 {
        if z.r() == 0.0 {
            return self.boundary.mean();
        }
        let n = self.quad.circle_nodes(self.alpha.value(), z.r());
        let samples = self.boundary.samples(n);
        let h = 2.0 * std::f64::consts::PI / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, fk) in samples.iter().enumerate() {
            let w = z.z() * Complex64::from_polar(1.0, -h * k as f64);
            // |w| = |z| < 1
            let p = poisson_kernel(self.alpha, DiskPoint::new(w).unwrap_or(z));
            acc += p * fk;
        }
        acc / n as f64
    }

    /// Σ_{n≥0} f̂(n) zⁿ + Σ_{m≥1} f̂(−m) e_{α,−m}(z).
    pub fn extend_series(&self, z: DiskPoint) -> Complex64 {
        let theta = z.theta();
        self.circle_terms(z.r())
            .into_iter()
            .map(|(freq, c)| c * Complex64::from_polar(1.0, freq as f64 * theta))
            .sum()
    }

    /// The restriction of f to |z| = r as (frequency, coefficient) pairs.
    pub fn circle_terms(&self, r: f64) -> Vec<(i64, Complex64)> {
        let d = self.boundary.degree() as u32;
        let mut terms = Vec::with_capacity(2 * d as usize + 1);
        for n in 0..=d {
            terms.push((n as i64, self.boundary.coeff(n as i64) * r.powi(n as i32)));
        }
        for m in 1..=d {
            let c = self.boundary.coeff(-(m as i64));
            if c.re != 0.0 || c.im != 0.0 {
                terms.push((
                    -(m as i64),
                    c * e_minus_radial(self.alpha, m, r, &self.quad),
                ));
            }
        }
        terms
    }

    /// f(re^{iθ_k}) on n uniform angles, by the series engine.
    pub fn circle_values(&self, r: f64, n: usize) -> Vec<Complex64> {
        fourier::synthesize(&self.circle_terms(r), n)
    }

    /// f_n(z) = (1/2π)∫ f(z e^{it}) e^{int} dt.
    ///
    /// The integrand is a trigonometric polynomial of degree ≤ deg F + n in
    /// t, so the trapezoid with more than twice that many nodes is exact.
    pub fn circle_projection(&self, n: u32, z: DiskPoint) -> Result<Complex64> {
        if n == 0 {
            return Err(Error::Domain("circle projection needs n >= 1".into()));
        }
        let nodes = 64.max(4 * (self.boundary.degree() + n as usize) + 4);
        let h = 2.0 * std::f64::consts::PI / nodes as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..nodes {
            let t = h * k as f64;
            let w = DiskPoint::new(z.z() * Complex64::from_polar(1.0, t))?;
            acc += self.extend(w)? * Complex64::from_polar(1.0, n as f64 * t);
        }
        Ok(acc / nodes as f64)
    }

    /// Recovers f̂(−n) = f_n(r)/e_{α,−n}(r) at a point of the positive axis.
    pub fn extract_negative_coefficient(&self, n: u32, r: f64) -> Result<Complex64> {
        let z = DiskPoint::from_polar(r, 0.0)?;
        let e = e_alpha_k(self.alpha, -(n as i64), z, &self.quad);
        if e.norm() < 1e-12 {
            return Err(Error::IllConditioned(format!(
                "e_(alpha,-{n})({r}) = {e} is too small to divide by"
            )));
        }
        Ok(self.circle_projection(n, z)? / e)
    }
}

impl DiskFunction for AlphaHarmonicFunction {
    fn eval(&self, z: Complex64) -> Complex64 {
        match DiskPoint::new(z) {
            Ok(z) => self.eval_raw(z),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    }

    fn circle_values(&self, r: f64, n: usize) -> Vec<Complex64> {
        match self.engine {
            Engine::Series => AlphaHarmonicFunction::circle_values(self, r, n),
            Engine::Quadrature => (0..n)
                .map(|k| self.eval(Complex64::from_polar(r, grid_angle(k, n))))
                .collect(),
        }
    }

    fn suggested_nodes(&self) -> usize {
        4096.max(16 * self.boundary.degree())
    }
}
