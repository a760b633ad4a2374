//! Pseudo-Huber loss, its derivative, and its curvature weight.
//!
//! The scalar kernel shared by every robust estimator in the crate:
//!
//! ```text
//! l_tau(x)   = tau * (sqrt(tau^2 + x^2) - tau)
//! l_tau'(x)  = tau * x / sqrt(tau^2 + x^2)
//! l_tau''(x) = (tau / sqrt(tau^2 + x^2))^3
//! ```
//!
//! The loss is quadratic near the origin and linear in the tails, so the
//! derivative (the influence of one residual) is bounded by `tau`.

use crate::error::{Error, Result};

/// Per-observation robustification parameter and surrogate scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustLossParams {
    /// Robustification parameter; the residual scale at which the loss
    /// transitions from quadratic to linear.
    pub tau: f64,
    /// Surrogate scale used to standardize the residual.
    pub sigma: f64,
}

impl RobustLossParams {
    pub fn new(tau: f64, sigma: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::domain(format!("tau must be positive and finite, got {tau}")));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::domain(format!("sigma must be positive and finite, got {sigma}")));
        }
        Ok(Self { tau, sigma })
    }
}

/// sqrt(tau^2 + x^2) evaluated in scaled form so that residuals of magnitude
/// 1e8 and beyond (Pareto tails) neither overflow nor lose precision.
#[inline]
fn scaled_hypot(x: f64, tau: f64) -> f64 {
    let a = x.abs();
    if a <= tau {
        let r = a / tau;
        tau * (1.0 + r * r).sqrt()
    } else {
        let r = tau / a;
        a * (1.0 + r * r).sqrt()
    }
}

#[inline]
fn check_inputs(x: f64, tau: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain(format!("non-finite residual {x}")));
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::domain(format!("tau must be positive and finite, got {tau}")));
    }
    Ok(())
}

/// Pseudo-Huber loss `tau * (sqrt(tau^2 + x^2) - tau)`.
///
/// Even in `x`, zero at the origin, and dominated by `x^2 / 2` everywhere.
pub fn pseudo_huber(x: f64, tau: f64) -> Result<f64> {
    check_inputs(x, tau)?;
    Ok(pseudo_huber_raw(x, tau))
}

/// Derivative `tau * x / sqrt(tau^2 + x^2)`; odd, monotone, bounded by `tau`.
pub fn pseudo_huber_deriv(x: f64, tau: f64) -> Result<f64> {
    check_inputs(x, tau)?;
    Ok(pseudo_huber_deriv_raw(x, tau))
}

/// Second derivative `(tau / sqrt(tau^2 + x^2))^3`, in `(0, 1]`.
///
/// Appears as the per-observation weight in the Hessian of a pseudo-Huber
/// regression objective; equals 1 at zero residual and decays in `|x|`.
pub fn curvature_weight(x: f64, tau: f64) -> Result<f64> {
    check_inputs(x, tau)?;
    Ok(curvature_weight_raw(x, tau))
}

// Unchecked kernels for the solver hot path; callers validate once up front.
// `tau = +inf` selects the quadratic (weighted least-squares) limit.

#[inline]
pub(crate) fn pseudo_huber_raw(x: f64, tau: f64) -> f64 {
    if tau.is_infinite() {
        return 0.5 * x * x;
    }
    // tau*(hypot - tau) = tau * x^2 / (hypot + tau), factored to avoid both
    // cancellation near 0 and overflow of x^2 for extreme residuals.
    let h = scaled_hypot(x, tau);
    tau * x * (x / (h + tau))
}

#[inline]
pub(crate) fn pseudo_huber_deriv_raw(x: f64, tau: f64) -> f64 {
    if tau.is_infinite() {
        return x;
    }
    tau * (x / scaled_hypot(x, tau))
}

#[inline]
pub(crate) fn curvature_weight_raw(x: f64, tau: f64) -> f64 {
    if tau.is_infinite() {
        return 1.0;
    }
    let r = tau / scaled_hypot(x, tau);
    r * r * r
}
