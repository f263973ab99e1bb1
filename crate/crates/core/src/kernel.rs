//! Pointwise kernels on the disk and their radial circle means.
//!
//! Every complex power here has a base of the form 1 − w with |w| < 1, so
//! the base has positive real part and the principal branch is continuous.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{periodic_mean, QuadratureConfig};
use crate::special::AlphaParam;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct DiskPoint {
    z: Complex64,
}

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite(format!("disk point {z}")));
        }
        if z.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "|z| must be < 1, got |{z}| = {}",
                z.norm()
            )));
        }
        Ok(Self { z })
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain(format!("radius must lie in [0, 1), got {r}")));
        }
        Self::new(Complex64::from_polar(r, theta))
    }

    pub fn origin() -> Self {
        Self {
            z: Complex64::new(0.0, 0.0),
        }
    }

    #[inline]
    pub fn z(&self) -> Complex64 {
        self.z
    }

    #[inline]
    pub fn r(&self) -> f64 {
        self.z.norm()
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.z.arg()
    }

    /// 1 − |z|², formed as (1−r)(1+r).
    #[inline]
    pub fn weight_base(&self) -> f64 {
        one_minus_r2(self.r())
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = Error;

    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z)
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Complex64 {
        p.z
    }
}

#[inline]
pub(crate) fn one_minus_r2(r: f64) -> f64 {
    (1.0 - r) * (1.0 + r)
}

/// Principal-branch w^s.
#[inline]
pub(crate) fn cpow(w: Complex64, s: f64) -> Complex64 {
    Complex64::from_polar(w.norm().powf(s), s * w.arg())
}

/// |1 − r e^{it}|², written without cancellation near t = 0, r → 1.
#[inline]
pub fn abs_one_minus_sq(r: f64, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    let re = (1.0 - r) + 2.0 * r * s * s;
    let im = r * t.sin();
    re * re + im * im
}

/// P_α(z) = (1−|z|²)^{α+1} / ((1−z)(1−z̄)^{α+1}).
pub fn poisson_kernel(alpha: AlphaParam, z: DiskPoint) -> Complex64 {
    let a = alpha.value();
    let w = z.weight_base();
    let one = Complex64::new(1.0, 0.0);
    let num = w.powf(a + 1.0);
    num / ((one - z.z) * cpow(one - z.z.conj(), a + 1.0))
}

/// The classical Poisson kernel (1−|z|²)/|1−z|².
pub fn classical_poisson(z: DiskPoint) -> f64 {
    let w = z.weight_base();
    let d = Complex64::new(1.0, 0.0) - z.z;
    w / d.norm_sqr()
}

/// g_α(z) = ((1−|z|²)/(1−z̄))^α, so that P_α = g_α·P.
pub fn g_alpha_eval(alpha: AlphaParam, z: DiskPoint) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    cpow(z.weight_base() / (one - z.z.conj()), alpha.value())
}

/// ∂̄P_α(z) = (α+1)(1−|z|²)^α (1−z̄)^{−(α+2)}.
pub fn dbar_poisson_kernel(alpha: AlphaParam, z: DiskPoint) -> Complex64 {
    let a = alpha.value();
    let one = Complex64::new(1.0, 0.0);
    (a + 1.0) * z.weight_base().powf(a) * cpow(one - z.z.conj(), -(a + 2.0))
}

/// Which radial circle mean to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadialKind {
    /// M_α(r) = (1/2π)∫|P_α(re^{−it})| dt.
    M,
    /// I_α(r) = (1/2π)∫(1−r²)^α |1−re^{it}|^{−(α+1)} dt.
    I,
}

/// M_α(r) or I_α(r) by the uniform trapezoid with N(r) nodes.
pub fn radial_mean(
    alpha: AlphaParam,
    r: f64,
    kind: RadialKind,
    quad: &QuadratureConfig,
) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!(
            "radial mean needs 0 <= r < 1, got {r}"
        )));
    }
    let a = alpha.value();
    let w = one_minus_r2(r);
    let n = quad.circle_nodes(a, r);
    let (prefactor, exponent) = match kind {
        // |P_α(re^{−it})| = (1−r²)^{α+1} / |1−re^{it}|^{α+2}
        RadialKind::M => (w.powf(a + 1.0), -0.5 * (a + 2.0)),
        RadialKind::I => (w.powf(a), -0.5 * (a + 1.0)),
    };
    let mean = periodic_mean(n, 0.0, |t| abs_one_minus_sq(r, t).powf(exponent));
    Ok(prefactor * mean)
}

/// The same circle means evaluated through the complex kernels at an
/// arbitrary base point z (they depend on |z| only).
pub fn kernel_circle_mean(
    alpha: AlphaParam,
    z: DiskPoint,
    kind: RadialKind,
    quad: &QuadratureConfig,
) -> f64 {
    let a = alpha.value();
    let n = quad.circle_nodes(a, z.r());
    let w = z.weight_base();
    periodic_mean(n, 0.0, |t| {
        let rotated = DiskPoint {
            z: z.z * Complex64::from_polar(1.0, -t),
        };
        match kind {
            RadialKind::M => poisson_kernel(alpha, rotated).norm(),
            RadialKind::I => {
                let d = Complex64::new(1.0, 0.0) - z.z.conj() * Complex64::from_polar(1.0, t);
                w.powf(a) / d.norm().powf(a + 1.0)
            }
        }
    })
}
