//! Real special functions and the weight-dependent constants built from them.
//!
//! Gamma and Beta come from `statrs`; these wrappers add domain checks.
//! Pochhammer symbols are plain products so that negative bases need no
//! reflection formula.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::{beta as sbeta, gamma as sgamma};

use crate::error::{Error, Result};

/// Γ(x) by recurrence onto [1, 2), where the library approximation is
/// accurate to a few ulps; for large x it loses about 1e-13 relative.
fn gamma_reduced(x: f64) -> f64 {
    if x < 1.0 {
        sgamma::gamma(x + 1.0) / x
    } else if x < 171.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y >= 2.0 {
            y -= 1.0;
            prod *= y;
        }
        prod * sgamma::gamma(y)
    } else {
        sgamma::gamma(x)
    }
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma requires x > 0, got {x}")));
    }
    let g = gamma_reduced(x);
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::NonFinite(format!("gamma({x}) overflows")))
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(sgamma::ln_gamma(x))
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b) for a, b > 0.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "beta requires a, b > 0, got ({a}, {b})"
        )));
    }
    Ok(sbeta::ln_beta(a, b).exp())
}

/// Rising factorial (a)_n = a(a+1)⋯(a+n−1), with (a)_0 = 1.
pub fn pochhammer(a: f64, n: i64) -> Result<f64> {
    if n < 0 {
        return Err(Error::Domain(format!(
            "pochhammer requires n >= 0, got {n}"
        )));
    }
    Ok((0..n).fold(1.0, |acc, j| acc * (a + j as f64)))
}

/// 1/B(m, a) for a positive integer m, as the product (a)_m/(m−1)!.
///
/// Stays finite for large m where the Gamma quotient would overflow.
pub fn inv_beta_int(m: u32, a: f64) -> f64 {
    debug_assert!(m >= 1);
    (1..m).fold(a, |acc, j| acc * (a + j as f64) / j as f64)
}

/// (a)_n / n!, the coefficients of (1 − w)^{−a} = Σ (a)_n/n! wⁿ.
pub fn binomial_series_coeff(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (a + j as f64) / (j as f64 + 1.0))
}

/// One query against the Gamma family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialQuery {
    Gamma(f64),
    Beta(f64, f64),
    Pochhammer(f64, i64),
}

pub fn gamma_family(query: SpecialQuery) -> Result<f64> {
    match query {
        SpecialQuery::Gamma(x) => gamma(x),
        SpecialQuery::Beta(a, b) => beta(a, b),
        SpecialQuery::Pochhammer(a, n) => pochhammer(a, n),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// The weight exponent α > −1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AlphaParam {
    alpha: f64,
    c_alpha: f64,
}

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::Domain(format!(
                "alpha must be a finite value > -1, got {alpha}"
            )));
        }
        let c_alpha = gamma(alpha + 1.0)? / gamma(alpha / 2.0 + 1.0)?.powi(2);
        Ok(Self { alpha, c_alpha })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.alpha
    }

    pub fn sign(&self) -> Sign {
        if self.alpha < 0.0 {
            Sign::Negative
        } else if self.alpha > 0.0 {
            Sign::Positive
        } else {
            Sign::Zero
        }
    }

    /// Γ(α+1)/Γ²(α/2+1), the limit of the kernel's L¹ circle mean.
    #[inline]
    pub fn c_alpha(&self) -> f64 {
        self.c_alpha
    }
}

impl TryFrom<f64> for AlphaParam {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<AlphaParam> for f64 {
    fn from(a: AlphaParam) -> f64 {
        a.alpha
    }
}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha)
    }
}

pub fn c_alpha(alpha: AlphaParam) -> f64 {
    alpha.c_alpha()
}

/// Upper bound on the circle mean I_α(r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IAlphaBound {
    /// α > 0: I_α(r) ≤ Γ(α)/Γ²(α/2+1/2) for every r.
    Constant { value: f64 },
    /// −1 < α < 0: I_α(r) ≤ coefficient · (1−r²)^α.
    Weighted { coefficient: f64, exponent: f64 },
}

impl IAlphaBound {
    pub fn at(&self, r: f64) -> f64 {
        match *self {
            IAlphaBound::Constant { value } => value,
            IAlphaBound::Weighted {
                coefficient,
                exponent,
            } => coefficient * ((1.0 - r) * (1.0 + r)).powf(exponent),
        }
    }
}

pub fn i_alpha_bound(alpha: AlphaParam) -> Result<IAlphaBound> {
    let a = alpha.value();
    match alpha.sign() {
        Sign::Zero => Err(Error::NotApplicable(
            "the I_alpha bound is stated only for alpha != 0".into(),
        )),
        Sign::Positive => Ok(IAlphaBound::Constant {
            value: gamma(a)? / gamma(a / 2.0 + 0.5)?.powi(2),
        }),
        Sign::Negative => Ok(IAlphaBound::Weighted {
            coefficient: gamma(-a)? / gamma(0.5 - a / 2.0)?.powi(2),
            exponent: a,
        }),
    }
}
