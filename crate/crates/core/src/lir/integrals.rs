//! The integral over `N'(R)` in closed one-variable form and as a direct
//! two-variable quadrature.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::gamma_real;
use super::quad::{integrate, QuadratureSpec};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(-1)^{2x}`.
pub fn sign_two_x(two_x: i32) -> f64 {
    if two_x.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Power of `pi` in the table normalisation: 3 for `x = +-1/2`, else 2.
pub fn pi_power(two_x: i32) -> i32 {
    if two_x.abs() == 1 {
        3
    } else {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedIntegral {
    /// `int_0^oo 2t [(1 - it)^{2x} + (-1 - it)^{2x}] (1 + t^2)^{-(3+2x)/2} dt`
    pub j: Complex64,
    pub j_error: f64,
    /// `8 pi^2 (-1)^{2x} Gamma(2v) j`
    pub total: Complex64,
    /// `total / (8 pi^p Gamma(2v))`
    pub constant: Complex64,
}

/// The `v`-independent one-variable integral.
pub fn j_integral(two_x: i32, spec: &QuadratureSpec) -> Result<(Complex64, f64)> {
    let expo = -(3.0 + f64::from(two_x)) / 2.0;
    let f = |u: f64| {
        let t = u / (1.0 - u);
        let dt = 1.0 / ((1.0 - u) * (1.0 - u));
        let num = Complex64::new(1.0, -t).powi(two_x) + Complex64::new(-1.0, -t).powi(two_x);
        num * (2.0 * t * (1.0 + t * t).powf(expo) * dt)
    };
    let r = integrate(f, 0.0, 1.0, spec)?;
    Ok((r.value, r.error))
}

pub fn integral_closed(two_x: i32, v: f64, spec: &QuadratureSpec) -> Result<ClosedIntegral> {
    if v <= 0.0 {
        return Err(Error::InvalidParameter(format!("v = {v} must be positive")));
    }
    let (j, j_error) = j_integral(two_x, spec)?;
    let g2v = gamma_real(2.0 * v)?;
    let total = j * (8.0 * PI * PI * sign_two_x(two_x) * g2v);
    let constant = total / (8.0 * PI.powi(pi_power(two_x)) * g2v);
    Ok(ClosedIntegral { j, j_error, total, constant })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruteForce {
    /// `16 C (-1)^{2x} int int r^3 (a - i r^2)^{2x} ... da dr` over `a, r > 0`.
    pub half: Complex64,
    /// `half + (-1)^{2x} conj(half)`
    pub total: Complex64,
    pub truncation: f64,
    pub error: f64,
}

/// `C = 2 pi int_0^pi int_0^pi sin^2(phi_1) sin(phi_2)`, the volume factor of the
/// angular variables.
pub fn angular_constant(spec: &QuadratureSpec) -> Result<f64> {
    let inner = integrate(|p: f64| Complex64::new(p.sin().powi(2), 0.0), 0.0, PI, spec)?.value.re;
    let outer = integrate(|p: f64| Complex64::new(p.sin(), 0.0), 0.0, PI, spec)?.value.re;
    Ok(2.0 * PI * inner * outer)
}

/// Original integrand of the two-variable form, multiplied by the Jacobian
/// of `a = rho cos(theta)`, `r^2 = rho sin(theta)`, `rho = s^{-2}`.
fn mapped_integrand(two_x: i32, v: f64, s: f64, theta: f64) -> Complex64 {
    let rho = 1.0 / (s * s);
    let a = rho * theta.cos();
    let r2 = rho * theta.sin();
    let q = a * a + r2 * r2;
    let sq = q.sqrt();
    let u = Complex64::new(a, -r2) / sq;
    let log_mag = -(1.5 + v) * q.ln() - 1.0 / sq;
    // r^3 * (rho / (2 r)) * (2 / s^3) = r^2 rho / s^3
    let jac = r2 * rho / (s * s * s);
    u.powi(two_x) * (log_mag.exp() * jac)
}

pub fn integral_bruteforce(two_x: i32, v: f64, abs_tol: f64, rel_tol: f64) -> Result<BruteForce> {
    if v < 0.25 {
        return Err(Error::InvalidParameter(format!("v = {v} is below 1/4")));
    }
    let c = 2.0 * PI * PI;
    let pref = 16.0 * c * sign_two_x(two_x);
    let inner_spec = QuadratureSpec::new(abs_tol * 1e-3, rel_tol * 1e-3);
    let outer_spec = QuadratureSpec::new(abs_tol, rel_tol);

    // Tail over s > S is bounded by |pref|/2 * int_S^oo 2 s^{4v-1} e^{-s^2} ds.
    let tail = |s_max: f64| {
        let k = 4.0 * v - 1.0;
        let denom = 2.0 - k / (s_max * s_max);
        2.0 * pref.abs() * s_max.powf(k - 1.0) * (-(s_max * s_max)).exp() / denom
    };
    let mut s_max = 4.0;
    while tail(s_max) > abs_tol / 10.0 {
        s_max *= 2.0;
        if s_max > 1e3 {
            return Err(Error::Quadrature("truncation did not reach the error budget".into()));
        }
    }

    let inner_failure = std::cell::RefCell::new(None);
    let outer = integrate(
        |s: f64| match integrate(|t: f64| mapped_integrand(two_x, v, s, t), 0.0, FRAC_PI_2, &inner_spec) {
            Ok(r) => r.value,
            Err(e) => {
                inner_failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        s_max,
        &outer_spec,
    )?;
    if let Some(e) = inner_failure.into_inner() {
        return Err(e);
    }
    let half = outer.value * pref;
    let total = half + half.conj() * sign_two_x(two_x);
    Ok(BruteForce { half, total, truncation: s_max, error: outer.error * pref.abs() + tail(s_max) })
}

/// `(1 - i r^{1/2})^{2x}` form of the closed integrand, used as a check of the
/// `r = t^2` substitution.
pub fn closed_integrand_r(two_x: i32, r: f64) -> Complex64 {
    let s = r.sqrt();
    let num = (Complex64::new(1.0, 0.0) - I * s).powi(two_x) + (Complex64::new(-1.0, 0.0) - I * s).powi(two_x);
    num / (1.0 + r).sqrt().powi(3 + two_x)
}
