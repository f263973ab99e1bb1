//! Quadrature rules: periodic trapezoid on the circle and Gauss–Legendre on
//! intervals (fixed, doubling, and recursively adaptive).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node-count policy for circle quadratures and the radial t-integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Minimum node count of any circle quadrature.
    pub base_nodes: usize,
    /// Nodes per unit of (|α|+2)/(1−r); the kernel peak has angular width ~(1−r).
    pub growth: f64,
    /// Starting Gauss–Legendre order for the t-integral in e_{α,−k}.
    pub t_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            base_nodes: 512,
            growth: 16.0,
            t_nodes: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn new(base_nodes: usize, growth: f64, t_nodes: usize) -> Result<Self> {
        let cfg = Self {
            base_nodes,
            growth,
            t_nodes,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.base_nodes < 64 || self.t_nodes < 64 {
            return Err(Error::Domain(format!(
                "quadrature node counts must be >= 64 (base {}, t {})",
                self.base_nodes, self.t_nodes
            )));
        }
        if !(self.growth >= 1.0) || !self.growth.is_finite() {
            return Err(Error::Domain(format!(
                "growth factor must be >= 1, got {}",
                self.growth
            )));
        }
        Ok(())
    }

    /// N(r) = max(base, ceil(growth·(|α|+2)/(1−r))).
    pub fn circle_nodes(&self, alpha: f64, r: f64) -> usize {
        let scaled = (self.growth * (alpha.abs() + 2.0) / (1.0 - r)).ceil();
        if scaled.is_finite() && scaled > self.base_nodes as f64 {
            scaled as usize
        } else {
            self.base_nodes
        }
    }
}

/// Mean of a 2π-periodic function over n uniform nodes t_k = 2πk/n + offset.
pub fn periodic_mean<F>(n: usize, offset: f64, mut f: F) -> f64
where
    F: FnMut(f64) -> f64,
{
    let h = 2.0 * PI / n as f64;
    let mut acc = 0.0;
    for k in 0..n {
        acc += f(offset + h * k as f64);
    }
    acc / n as f64
}

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    fn compute(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Cached rule of order n.
    pub fn rule(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&n) {
            return Arc::clone(rule);
        }
        let rule = Arc::new(Self::compute(n));
        cache
            .lock()
            .expect("rule cache poisoned")
            .entry(n)
            .or_insert_with(|| Arc::clone(&rule))
            .clone()
    }

    pub fn integrate<F>(&self, a: f64, b: f64, mut f: F) -> f64
    where
        F: FnMut(f64) -> f64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Largest Gauss–Legendre order used by [`integrate_doubling`].
pub const MAX_GAUSS_ORDER: usize = 4096;

/// Integrates with Gauss–Legendre of order `start`, doubling the order until
/// successive values agree to `rel_tol` (relative) or the order cap is hit.
/// Returns the last value and whether the tolerance was met.
pub fn integrate_doubling<F>(a: f64, b: f64, start: usize, rel_tol: f64, f: F) -> (f64, bool)
where
    F: Fn(f64) -> f64,
{
    let mut n = start.max(2);
    let mut prev = GaussLegendre::rule(n).integrate(a, b, &f);
    while n < MAX_GAUSS_ORDER {
        n *= 2;
        let next = GaussLegendre::rule(n).integrate(a, b, &f);
        if (next - prev).abs() <= rel_tol * next.abs() || next == prev {
            return (next, true);
        }
        prev = next;
    }
    (prev, false)
}

/// Recursive bisection with a 20-point Gauss–Legendre panel rule.
pub fn integrate_adaptive<F>(a: f64, b: f64, abs_tol: f64, f: &F) -> f64
where
    F: Fn(f64) -> f64,
{
    let rule = GaussLegendre::rule(20);
    let whole = rule.integrate(a, b, f);
    adaptive_step(&rule, a, b, whole, abs_tol, 0, f)
}

fn adaptive_step<F>(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    f: &F,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, f);
    let right = rule.integrate(mid, b, f);
    let sum = left + right;
    // below a few ulps of the panel value the estimate is pure rounding
    let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth >= 40 || (sum - whole).abs() <= tol.max(floor) {
        return sum;
    }
    adaptive_step(rule, a, mid, left, 0.5 * tol, depth + 1, f)
        + adaptive_step(rule, mid, b, right, 0.5 * tol, depth + 1, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        for &n in &[2usize, 5, 16, 64] {
            let rule = GaussLegendre::rule(n);
            let sum: f64 = rule.weights.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13);
            let deg = 2 * n - 1;
            let val = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32));
            assert!((val - 1.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn large_rule_integrates_smooth_function() {
        let rule = GaussLegendre::rule(4096);
        let v = rule.integrate(0.0, PI, f64::sin);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn doubling_converges() {
        let (v, ok) = integrate_doubling(0.0, 1.0, 64, 1e-13, |t| (1.0 - 0.99 * t).powf(-0.9));
        let exact = (1.0 - 0.01f64.powf(0.1)) / (0.1 * 0.99);
        assert!(ok);
        assert!((v - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn adaptive_handles_kinks() {
        let v = integrate_adaptive(-1.0, 2.0, 1e-12, &|x: f64| x.abs());
        assert!((v - 2.5).abs() < 1e-11);
    }

    #[test]
    fn periodic_trapezoid_is_spectral() {
        let m = periodic_mean(64, 0.0, |t| (t.cos()).exp());
        // I0(1)
        assert!((m - 1.266_065_877_752_008_4).abs() < 1e-14);
    }

    #[test]
    fn config_validation_and_node_policy() {
        assert!(QuadratureConfig::new(32, 16.0, 64).is_err());
        assert!(QuadratureConfig::new(512, 0.5, 64).is_err());
        let q = QuadratureConfig::default();
        assert_eq!(q.circle_nodes(1.0, 0.0), 512);
        assert_eq!(q.circle_nodes(2.0, 0.9), 641);
    }
}
