//! Derivatives of α-harmonic extensions.
//!
//! With ∂_θ = i(z∂ − z̄∂̄), the angular derivative transfers to the boundary:
//! ∂_θ P_α[F] = P_α[Ḟ]. The scaled conjugate derivative z̄∂̄f has an integral
//! representation against Ḟ, and ∂f follows from iz∂ = ∂_θ + iz̄∂̄. Near the
//! origin, where that identity degenerates, the series is differentiated term
//! by term instead.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier;
use crate::kernel::{cpow, one_minus_r2, DiskPoint};
use crate::norms::DiskFunction;
use crate::poisson::{dbar_e_minus_k, dz_e_minus_k, t_integral, AlphaHarmonicFunction, Engine};
use crate::special::inv_beta_int;

/// Inside this radius ∂ and ∂̄ come from the term-by-term series derivative.
pub const SERIES_DERIVATIVE_RADIUS: f64 = 0.05;

pub const DEFAULT_FD_STEP: f64 = 1e-5;
pub const DEFAULT_LAPLACIAN_STEP: f64 = 1e-3;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// ∂_θ f(z) = P_α[Ḟ](z).
pub fn dtheta(f: &AlphaHarmonicFunction, z: DiskPoint) -> Result<Complex64> {
    f.with_boundary(f.boundary().differentiate()).extend(z)
}

/// z̄ ∂̄f(z) = −(1/2πi) ∫ (1−|z|²)^α (1 − z̄e^{it})^{−(α+1)} Ḟ(e^{it}) dt.
///
/// The series engine uses the closed form of the same integral,
/// Σ_k f̂(−k) (1−|z|²)^α z̄ᵏ / B(k, α+1).
pub fn dbar_scaled(f: &AlphaHarmonicFunction, z: DiskPoint) -> Result<Complex64> {
    match f.engine() {
        Engine::Quadrature => Ok(dbar_scaled_quadrature(f, z)),
        Engine::Series => Ok(dbar_scaled_series(f, z)),
    }
}

pub fn dbar_scaled_quadrature(f: &AlphaHarmonicFunction, z: DiskPoint) -> Complex64 {
    if z.r() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let a = f.alpha().value();
    let n = f.quad().circle_nodes(a, z.r());
    let fdot = f.boundary().differentiate().samples(n);
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let zc = z.z().conj();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, d) in fdot.iter().enumerate() {
        let w = Complex64::new(1.0, 0.0) - zc * Complex64::from_polar(1.0, h * k as f64);
        acc += cpow(w, -(a + 1.0)) * d;
    }
    // −(1/2πi)·2π·mean = i·mean
    I * z.weight_base().powf(a) * acc / n as f64
}

pub fn dbar_scaled_series(f: &AlphaHarmonicFunction, z: DiskPoint) -> Complex64 {
    let a = f.alpha().value();
    let zc = z.z().conj();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for k in 1..=f.boundary().degree() as u32 {
        power *= zc;
        acc += f.boundary().coeff(-(k as i64)) * inv_beta_int(k, a + 1.0) * power;
    }
    acc * z.weight_base().powf(a)
}

/// ∂̄f(z) = Σ_k f̂(−k) ∂̄e_{α,−k}(z).
pub fn dbar_series(f: &AlphaHarmonicFunction, z: DiskPoint) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=f.boundary().degree() as u32 {
        let c = f.boundary().coeff(-(k as i64));
        if c != Complex64::new(0.0, 0.0) {
            acc += c * dbar_e_minus_k(f.alpha(), k, z)?;
        }
    }
    Ok(acc)
}

/// ∂̄f(z): z̄∂̄f divided by z̄ away from the origin, the series near it.
pub fn dbar(f: &AlphaHarmonicFunction, z: DiskPoint) -> Result<Complex64> {
    if z.r() < SERIES_DERIVATIVE_RADIUS {
        dbar_series(f, z)
    } else {
        Ok(dbar_scaled(f, z)? / z.z().conj())
    }
}

/// ∂f(z) = Σ_{n≥1} f̂(n) n z^{n−1} + Σ_{k≥1} f̂(−k) ∂e_{α,−k}(z).
pub fn dz_series(f: &AlphaHarmonicFunction, z: DiskPoint) -> Result<Complex64> {
    let b = f.boundary();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for n in 1..=b.degree() {
        acc += b.coeff(n as i64) * n as f64 * power;
        power *= z.z();
    }
    for k in 1..=b.degree() as u32 {
        let c = b.coeff(-(k as i64));
        if c != Complex64::new(0.0, 0.0) {
            acc += c * dz_e_minus_k(f.alpha(), k, z, f.quad())?;
        }
    }
    Ok(acc)
}

/// ∂f(z) = (∂_θf + i z̄∂̄f)/(iz) for |z| ≥ 0.05, the series derivative inside.
pub fn dz(f: &AlphaHarmonicFunction, z: DiskPoint) -> Result<Complex64> {
    if z.r() < SERIES_DERIVATIVE_RADIUS {
        dz_series(f, z)
    } else {
        Ok((dtheta(f, z)? + I * dbar_scaled(f, z)?) / (I * z.z()))
    }
}

/// |iz∂f − ∂_θf − iz̄∂̄f| with ∂f from the series, so both sides are computed
/// independently.
pub fn wirtinger_residual(f: &AlphaHarmonicFunction, z: DiskPoint) -> Result<f64> {
    let lhs = I * z.z() * dz_series(f, z)?;
    let rhs = dtheta(f, z)? + I * dbar_scaled(f, z)?;
    Ok((lhs - rhs).norm())
}

fn check_step(z: Complex64, h: f64, reach: f64) -> Result<()> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let half = 0.5 * h;
    if h < 1e-12 || z.re + half == z.re || z.im + half == z.im {
        return Err(Error::StepUnderflow(h));
    }
    if z.norm() + reach * h >= 1.0 {
        return Err(Error::TooCloseToBoundary(z.norm()));
    }
    Ok(())
}

fn central_wirtinger<G: DiskFunction + ?Sized>(
    g: &G,
    z: Complex64,
    h: f64,
) -> (Complex64, Complex64) {
    let hx = Complex64::new(h, 0.0);
    let hy = Complex64::new(0.0, h);
    let dx = (g.eval(z + hx) - g.eval(z - hx)) / (2.0 * h);
    let dy = (g.eval(z + hy) - g.eval(z - hy)) / (2.0 * h);
    (0.5 * (dx - I * dy), 0.5 * (dx + I * dy))
}

fn richardson_wirtinger<G: DiskFunction + ?Sized>(
    g: &G,
    z: Complex64,
    h: f64,
) -> (Complex64, Complex64) {
    let (d1, b1) = central_wirtinger(g, z, h);
    let (d2, b2) = central_wirtinger(g, z, 0.5 * h);
    ((4.0 * d2 - d1) / 3.0, (4.0 * b2 - b1) / 3.0)
}

/// (∂g, ∂̄g) at z by central differences with Richardson extrapolation.
pub fn fd_oracle<G: DiskFunction + ?Sized>(
    g: &G,
    z: DiskPoint,
    h: f64,
) -> Result<(Complex64, Complex64)> {
    check_step(z.z(), h, 2.0)?;
    let (d, b) = richardson_wirtinger(g, z.z(), h);
    if !(d.re.is_finite() && d.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
        return Err(Error::NonFinite(format!("finite differences at {}", z.z())));
    }
    Ok((d, b))
}

/// |∂_z((1−|z|²)^{−α} ∂̄g)| at z, by nested finite differences.
pub fn alpha_laplacian_residual<G: DiskFunction + ?Sized>(
    g: &G,
    alpha: f64,
    z: DiskPoint,
    h: f64,
) -> Result<f64> {
    check_step(z.z(), h, 4.0)?;
    let weighted_dbar = |w: Complex64| {
        let (_, b) = richardson_wirtinger(g, w, h);
        b * (1.0 - w.norm_sqr()).powf(-alpha)
    };
    let (outer, _) = richardson_wirtinger(&weighted_dbar, z.z(), h);
    let v = outer.norm();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("laplacian residual at {}", z.z())))
    }
}

/// Which quantity of an extension a [`Derived`] view evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    F,
    Dz,
    Dbar,
    DbarScaled,
    Dtheta,
}

/// f or one of its derivatives as a disk function.
///
/// Circle values always come from the series restricted to the circle, so
/// sweeps close to the boundary stay cheap and accurate.
#[derive(Debug, Clone)]
pub struct Derived<'a> {
    f: &'a AlphaHarmonicFunction,
    target: Target,
}

impl<'a> Derived<'a> {
    pub fn new(f: &'a AlphaHarmonicFunction, target: Target) -> Self {
        Self { f, target }
    }

    /// Value at a point, with the pointwise operations of this module.
    pub fn value(&self, z: DiskPoint) -> Result<Complex64> {
        match self.target {
            Target::F => self.f.extend(z),
            Target::Dz => dz(self.f, z),
            Target::Dbar => dbar(self.f, z),
            Target::DbarScaled => dbar_scaled(self.f, z),
            Target::Dtheta => dtheta(self.f, z),
        }
    }

    /// The restriction to |z| = r as (frequency, coefficient) pairs.
    pub fn circle_terms(&self, r: f64) -> Vec<(i64, Complex64)> {
        let f = self.f;
        let b = f.boundary();
        let a = f.alpha().value();
        let d = b.degree() as u32;
        let weight = || one_minus_r2(r).powf(a);
        let negatives = || {
            (1..=d)
                .map(|m| (m, b.coeff(-(m as i64))))
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
        };
        match self.target {
            Target::F => f.circle_terms(r),
            Target::Dtheta => f.with_boundary(b.differentiate()).circle_terms(r),
            Target::DbarScaled => {
                let w = weight();
                negatives()
                    .map(|(m, c)| {
                        (
                            -(m as i64),
                            c * inv_beta_int(m, a + 1.0) * w * r.powi(m as i32),
                        )
                    })
                    .collect()
            }
            Target::Dbar => {
                let w = weight();
                negatives()
                    .map(|(m, c)| {
                        (
                            1 - m as i64,
                            c * inv_beta_int(m, a + 1.0) * w * r.powi(m as i32 - 1),
                        )
                    })
                    .collect()
            }
            Target::Dz => {
                let mut terms: Vec<(i64, Complex64)> = (1..=d)
                    .map(|n| {
                        (
                            n as i64 - 1,
                            b.coeff(n as i64) * n as f64 * r.powi(n as i32 - 1),
                        )
                    })
                    .collect();
                if a != 0.0 {
                    terms.extend(negatives().map(|(m, c)| {
                        let j = t_integral(m + 1, a - 1.0, r, f.quad().t_nodes);
                        (
                            -(m as i64) - 1,
                            c * (-a) * inv_beta_int(m, a + 1.0) * j * r.powi(m as i32 + 1),
                        )
                    }));
                }
                terms
            }
        }
    }
}

impl DiskFunction for Derived<'_> {
    fn eval(&self, z: Complex64) -> Complex64 {
        DiskPoint::new(z)
            .and_then(|p| self.value(p))
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    fn circle_values(&self, r: f64, n: usize) -> Vec<Complex64> {
        fourier::synthesize(&self.circle_terms(r), n)
    }

    fn suggested_nodes(&self) -> usize {
        self.f.suggested_nodes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryFunction;
    use crate::special::AlphaParam;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ext(a: f64, b: BoundaryFunction) -> AlphaHarmonicFunction {
        AlphaHarmonicFunction::new(AlphaParam::new(a).unwrap(), b)
    }

    fn mode(n: i64) -> BoundaryFunction {
        BoundaryFunction::mode(n, c(1.0, 0.0)).unwrap()
    }

    fn test_grid() -> Vec<DiskPoint> {
        let mut pts = Vec::new();
        for &r in &[0.0, 0.3, 0.6, 0.9] {
            for k in 0..16 {
                pts.push(DiskPoint::from_polar(r, 2.0 * PI * k as f64 / 16.0).unwrap());
            }
        }
        pts
    }

    #[test]
    fn dtheta_examples() {
        let z = DiskPoint::new(c(0.3, -0.5)).unwrap();
        for k in 0..4 {
            let f = ext(0.7, mode(k));
            let expected = I * k as f64 * z.z().powu(k as u32);
            assert!((dtheta(&f, z).unwrap() - expected).norm() < 1e-14);
        }
        let f = ext(1.0, mode(-1));
        let half = DiskPoint::new(c(0.5, 0.0)).unwrap();
        assert!((dtheta(&f, half).unwrap() - c(0.0, -0.875)).norm() < 1e-13);
    }

    #[test]
    fn dbar_scaled_examples() {
        let z = DiskPoint::new(c(0.4, 0.3)).unwrap();
        for engine in [Engine::Quadrature, Engine::Series] {
            let f = ext(
                0.5,
                BoundaryFunction::random(5, 10).unwrap().analytic_part(),
            )
            .with_engine(engine);
            assert!(dbar_scaled(&f, z).unwrap().norm() < 1e-10);
            for &a in &[-0.6, 0.0, 1.3] {
                let g = ext(a, mode(-1)).with_engine(engine);
                let expected = z.z().conj() * (a + 1.0) * 0.75f64.powf(a);
                assert!((dbar_scaled(&g, z).unwrap() - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dbar_scaled_engines_agree() {
        for seed in 0..10 {
            for &a in &[-0.7, 0.0, 0.7, 2.0] {
                let f = ext(a, BoundaryFunction::random(seed, 16).unwrap());
                for z in test_grid() {
                    let q = dbar_scaled_quadrature(&f, z);
                    let s = dbar_scaled_series(&f, z);
                    assert!((q - s).norm() < 1e-10, "seed {seed} a {a} z {}", z.z());
                }
            }
        }
    }

    #[test]
    fn derivatives_match_fd_oracle() {
        let f = ext(0.7, BoundaryFunction::random(11, 16).unwrap()).with_engine(Engine::Quadrature);
        let z = DiskPoint::new(c(0.4, 0.3)).unwrap();
        let (_, b) = fd_oracle(&f, z, DEFAULT_FD_STEP).unwrap();
        assert!((dbar_scaled(&f, z).unwrap() - z.z().conj() * b).norm() < 1e-7);

        let f = ext(-0.4, BoundaryFunction::random(12, 16).unwrap());
        let z = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let (d, _) = fd_oracle(&f, z, DEFAULT_FD_STEP).unwrap();
        assert!((dz(&f, z).unwrap() - d).norm() < 1e-7);
    }

    #[test]
    fn fd_oracle_examples_and_errors() {
        let id = ext(0.3, mode(1));
        let z = DiskPoint::new(c(0.2, 0.1)).unwrap();
        let (d, b) = fd_oracle(&id, z, DEFAULT_FD_STEP).unwrap();
        assert!((d - 1.0).norm() < 1e-9 && b.norm() < 1e-9);
        let conj = ext(0.0, mode(-1));
        let (d, b) = fd_oracle(&conj, z, DEFAULT_FD_STEP).unwrap();
        assert!(d.norm() < 1e-9 && (b - 1.0).norm() < 1e-9);
        let e = ext(0.5, mode(-1));
        let (_, b) = fd_oracle(&e, DiskPoint::new(c(0.3, 0.0)).unwrap(), DEFAULT_FD_STEP).unwrap();
        assert!((b - 1.5 * 0.91f64.sqrt()).norm() < 1e-8);

        let edge = DiskPoint::new(c(0.99999, 0.0)).unwrap();
        assert!(matches!(
            fd_oracle(&id, edge, 1e-5),
            Err(Error::TooCloseToBoundary(_))
        ));
        assert!(matches!(
            fd_oracle(&id, z, 1e-14),
            Err(Error::StepUnderflow(_))
        ));
        assert!(matches!(fd_oracle(&id, z, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn dz_examples() {
        for z in test_grid() {
            let f = ext(-0.3, mode(1));
            assert!((dz(&f, z).unwrap() - 1.0).norm() < 1e-12);
            let g = ext(1.5, mode(3));
            assert!((dz(&g, z).unwrap() - 3.0 * z.z().powu(2)).norm() < 1e-12);
        }
    }

    #[test]
    fn wirtinger_identity_holds() {
        for seed in 0..50 {
            let b = BoundaryFunction::random(seed, 16).unwrap();
            for &a in &[-0.5, -0.2, 0.0, 1.0, 2.5] {
                let f = ext(a, b.clone()).with_engine(Engine::Quadrature);
                for z in test_grid() {
                    let res = wirtinger_residual(&f, z).unwrap();
                    assert!(res < 1e-8, "seed {seed} a {a} z {}", z.z());
                }
            }
        }
    }

    #[test]
    fn branches_agree_on_overlap_annulus() {
        let f = ext(0.8, BoundaryFunction::random(3, 16).unwrap());
        for k in 0..8 {
            let z = DiskPoint::from_polar(0.045, 0.8 * k as f64).unwrap();
            let quotient = (dtheta(&f, z).unwrap() + I * dbar_scaled(&f, z).unwrap()) / (I * z.z());
            assert!((quotient - dz_series(&f, z).unwrap()).norm() < 1e-8);
            let dq = dbar_scaled(&f, z).unwrap() / z.z().conj();
            assert!((dq - dbar_series(&f, z).unwrap()).norm() < 1e-8);
        }
    }

    #[test]
    fn conjugation_symmetry_at_alpha_zero() {
        for seed in 0..5 {
            let b = BoundaryFunction::random(seed, 12).unwrap();
            // real-valued boundary data
            let real = b.add(
                &BoundaryFunction::from_coeffs(b.terms().map(|(n, c)| (-n, c.conj()))).unwrap(),
            );
            let f = ext(0.0, real);
            for z in test_grid() {
                let d = dz(&f, z).unwrap();
                let db = dbar(&f, z).unwrap();
                assert!((db - d.conj()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn conjugate_identity_at_alpha_zero() {
        for seed in 0..10 {
            let b = BoundaryFunction::random(seed, 16).unwrap();
            let f = ext(0.0, b.clone());
            let fdot = b.differentiate();
            let rhs_boundary = fdot.add(&fdot.hilbert_transform().scale(I));
            let rhs = f.with_boundary(rhs_boundary);
            for z in test_grid() {
                let lhs = 2.0 * I * z.z() * dz(&f, z).unwrap();
                assert!((lhs - rhs.extend(z).unwrap()).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn laplacian_residual() {
        let z = DiskPoint::new(c(0.4, 0.0)).unwrap();
        for &a in &[-0.5, 0.0, 2.0] {
            let f = ext(a, mode(1));
            assert!(alpha_laplacian_residual(&f, a, z, DEFAULT_LAPLACIAN_STEP).unwrap() < 1e-6);
        }
        let e = ext(1.0, mode(-1));
        let w = DiskPoint::new(c(0.3, 0.2)).unwrap();
        assert!(alpha_laplacian_residual(&e, 1.0, w, DEFAULT_LAPLACIAN_STEP).unwrap() < 1e-6);
        for seed in 0..5 {
            let f = ext(
                -0.4 + 0.6 * seed as f64,
                BoundaryFunction::random(seed, 8).unwrap(),
            );
            let p = DiskPoint::from_polar(0.8, 1.3 * seed as f64).unwrap();
            let v =
                alpha_laplacian_residual(&f, f.alpha().value(), p, DEFAULT_LAPLACIAN_STEP).unwrap();
            assert!(v < 1e-6, "seed {seed}: {v}");
        }
        let zbar = |z: Complex64| z.conj();
        let half = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let v = alpha_laplacian_residual(&zbar, 1.0, half, DEFAULT_LAPLACIAN_STEP).unwrap();
        assert!((v - 0.5 / 0.5625).abs() < 1e-6);
        assert!(
            alpha_laplacian_residual(&zbar, 1.0, DiskPoint::new(c(0.997, 0.0)).unwrap(), 1e-3)
                .is_err()
        );
    }

    #[test]
    fn derived_circle_values_match_pointwise() {
        let n = 32;
        for &a in &[-0.5, 0.0, 1.2] {
            let f = ext(a, BoundaryFunction::random(21, 8).unwrap());
            for target in [
                Target::F,
                Target::Dz,
                Target::Dbar,
                Target::DbarScaled,
                Target::Dtheta,
            ] {
                let g = Derived::new(&f, target);
                for &r in &[0.2, 0.7] {
                    let vals = g.circle_values(r, n);
                    for (k, v) in vals.iter().enumerate() {
                        let z = DiskPoint::from_polar(r, 2.0 * PI * k as f64 / n as f64).unwrap();
                        let p = g.value(z).unwrap();
                        assert!((v - p).norm() < 1e-10, "{target:?} a {a} r {r}: {v} vs {p}");
                    }
                }
            }
        }
    }
}
