//! The seven cases `x in {-2, -1, -1/2, 0, 1/2, 1, 2}`: normalising factors,
//! the limit `v -> 0`, and the pairing with `s(a_3)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::gamma_real;
use super::integrals::{integral_bruteforce, integral_closed, j_integral, pi_power, sign_two_x, BruteForce};
use super::quad::QuadratureSpec;
use crate::centralizers::{centralizer, ClassicalFactor};
use crate::error::{Error, Result};
use crate::params::{ArchCharacter, FormalParameter};
use crate::settings::Settings;

pub const SUPPORTED_TWO_X: [i32; 7] = [-4, -2, -1, 0, 1, 2, 4];

/// `lambda(C/R, psi_R)`.
pub const LAMBDA: f64 = -1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LirCase {
    pub two_x: i32,
    pub prefactor: Complex64,
    pub l_ratio_formula: String,
    pub integral_constant: Complex64,
    pub pi_power: i32,
    pub expected_scalar: i8,
    pub expected_pairing: i8,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn lir_case(two_x: i32) -> Result<LirCase> {
    let (prefactor, formula, constant, scalar, pairing) = match two_x {
        -4 | 4 => (c(1.0, 0.0), "G(v)G(v+3/2)/(G(v+1/2)G(v+7/2))", c(-4.0 / 15.0, 0.0), -1, -1),
        -2 | 2 => (c(1.0, 0.0), "G(v)/G(v+5/2)", c(-4.0 / 3.0, 0.0), -1, -1),
        -1 => (c(0.0, -1.0), "G(v)G(v+1/2)/(G(v+1)G(v+2))", c(0.0, -1.0), -1, -1),
        1 => (c(0.0, -1.0), "G(v)G(v+1/2)/(G(v+1)G(v+2))", c(0.0, 1.0), 1, 1),
        0 => (c(-1.0, 0.0), "G(v)G(v+1/2)/G(v+3/2)^2", c(4.0, 0.0), -1, -1),
        _ => return Err(Error::Unsupported(format!("x = {two_x}/2"))),
    };
    Ok(LirCase {
        two_x,
        prefactor,
        l_ratio_formula: format!("4 pi^(5/2) {formula}"),
        integral_constant: constant,
        pi_power: pi_power(two_x),
        expected_scalar: scalar,
        expected_pairing: pairing,
    })
}

/// `R_x(v) = L(0)/L(1) / (4 pi^{5/2} Gamma(v))`.
fn r_x(two_x: i32, v: f64) -> Result<f64> {
    let g = gamma_real;
    Ok(match two_x.abs() {
        4 => g(v + 1.5)? / (g(v + 0.5)? * g(v + 3.5)?),
        2 => 1.0 / g(v + 2.5)?,
        1 => g(v + 0.5)? / (g(v + 1.0)? * g(v + 2.0)?),
        0 => g(v + 0.5)? / g(v + 1.5)?.powi(2),
        _ => return Err(Error::Unsupported(format!("x = {two_x}/2"))),
    })
}

/// `L(0)/L(1)` at `v`.
pub fn l_ratio(two_x: i32, v: f64) -> Result<f64> {
    Ok(4.0 * PI.powf(2.5) * gamma_real(v)? * r_x(two_x, v)?)
}

/// `lambda^{-1} epsilon(0, ...) L(0)/L(1)`.
pub fn normalizing_ratio(two_x: i32, v: f64) -> Result<Complex64> {
    if v <= 0.0 {
        return Err(Error::InvalidParameter(format!("v = {v} must be positive")));
    }
    Ok(lir_case(two_x)?.prefactor * l_ratio(two_x, v)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarLimit {
    pub value: Complex64,
    /// Extrapolation to `v = 0` from direct evaluations at `1e-3` and `1e-4`.
    pub backstop: Complex64,
    pub backstop_gap: f64,
}

/// `prefactor * integral / (L(0)/L(1))` as `v -> 0`.
///
/// `Gamma(2v)/Gamma(v) = 2^{2v-1} pi^{-1/2} Gamma(v + 1/2)` removes the pole,
/// after which the expression is evaluated at `v = 0`.
pub fn lir_scalar(two_x: i32, spec: &QuadratureSpec) -> Result<ScalarLimit> {
    let case = lir_case(two_x)?;
    let (j, _) = j_integral(two_x, spec)?;
    let outer = case.prefactor * j * (8.0 * PI * PI * sign_two_x(two_x));
    let at = |v: f64| -> Result<Complex64> {
        let dup = 2f64.powf(2.0 * v - 1.0) / PI.sqrt() * gamma_real(v + 0.5)?;
        Ok(outer * dup / (4.0 * PI.powf(2.5) * r_x(two_x, v)?))
    };
    let value = at(0.0)?;
    let direct = |v: f64| -> Result<Complex64> {
        let total = integral_closed(two_x, v, spec)?.total;
        Ok(case.prefactor * total / l_ratio(two_x, v)?)
    };
    let (f3, f4) = (direct(1e-3)?, direct(1e-4)?);
    let backstop = (f4 * 10.0 - f3) / 9.0;
    Ok(ScalarLimit { value, backstop, backstop_gap: (backstop - value).norm() })
}

fn a3(two_x: i32) -> [[i8; 4]; 4] {
    match two_x {
        1 => [[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]],
        -1 => [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]],
        _ => [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 0]],
    }
}

fn s_prime() -> [[i8; 4]; 4] {
    [[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [-1, 0, 0, 0]]
}

fn m_twist(two_x: i32) -> [[i8; 4]; 4] {
    let last = if two_x.abs() == 1 { -1 } else { 1 };
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, last]]
}

fn mul(a: &[[i8; 4]; 4], b: &[[i8; 4]; 4]) -> [[i8; 4]; 4] {
    let mut out = [[0i8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub pairing: i8,
    /// Diagonal of `m s(a_3) s'(w)` in the maximal torus.
    pub torus_element: [i8; 4],
}

/// `<pi, s(a_3)>` through the character `a_1^{e_1} a_2^{e_2} -> (-1)^{e_1}`.
pub fn pi_a3_pairing(two_x: i32) -> Result<Pairing> {
    lir_case(two_x)?;
    let t = mul(&mul(&m_twist(two_x), &a3(two_x)), &s_prime());
    for (i, row) in t.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if i != j && e != 0 {
                return Err(Error::Degenerate(format!("s(a_3) s'(w) is not diagonal: {t:?}")));
            }
        }
    }
    let torus_element = [t[0][0], t[1][1], t[2][2], t[3][3]];
    let e1 = torus_element[1] == -1;
    Ok(Pairing { pairing: if e1 { -1 } else { 1 }, torus_element })
}

/// The parameter `2 (x,-x) + (1/2,-1/2) + (-1/2,1/2)` of `U(4)`.
pub fn u31_parameter(two_x: i32) -> Result<FormalParameter> {
    let x = ArchCharacter::new(two_x, -two_x)?;
    let chars = [x, x, ArchCharacter::new(1, -1)?, ArchCharacter::new(-1, 1)?];
    FormalParameter::from_arch_characters(1, &chars)
}

/// Centralizer row of the table, as a sorted multiset of factors.
pub fn expected_centralizer(two_x: i32) -> Vec<ClassicalFactor> {
    let mut v = if two_x % 2 == 0 {
        vec![ClassicalFactor::sp(2), ClassicalFactor::o(1), ClassicalFactor::o(1)]
    } else if two_x.abs() == 1 {
        vec![ClassicalFactor::o(3), ClassicalFactor::o(1)]
    } else {
        vec![ClassicalFactor::o(2), ClassicalFactor::o(1), ClassicalFactor::o(1)]
    };
    v.sort();
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LirReport {
    pub two_x: i32,
    pub prefactor: Complex64,
    pub v: f64,
    pub l_ratio_at_v: f64,
    pub integral_constant_measured: Complex64,
    pub integral_constant_expected: Complex64,
    pub constant_rel_error: f64,
    pub scalar_limit: Complex64,
    pub backstop: Complex64,
    pub pairing: i8,
    pub centralizer: String,
    pub centralizer_matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<BruteForce>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce_rel_error: Option<f64>,
    pub pass: bool,
}

/// Checks that the normalised scalar equals the pairing, i.e. the relation
/// holds with trivial correction, and cross-checks the centralizer row.
pub fn verify_u31(two_x: i32, v: f64, bruteforce: bool, settings: &Settings) -> Result<LirReport> {
    let case = lir_case(two_x)?;
    let spec = QuadratureSpec::new(settings.quad_abs_tol, settings.quad_rel_tol);
    let closed = integral_closed(two_x, v, &spec)?;
    let constant_rel_error = (closed.constant - case.integral_constant).norm() / case.integral_constant.norm();
    let scalar = lir_scalar(two_x, &spec)?;
    let pairing = pi_a3_pairing(two_x)?;
    let g = centralizer(&u31_parameter(two_x)?)?;
    let centralizer_matches = g.sorted_factors() == expected_centralizer(two_x);

    let (bf, bf_err) = if bruteforce {
        let b = integral_bruteforce(two_x, v, settings.quad_abs_tol.max(1e-10), 1e-9)?;
        let err = (b.total - closed.total).norm() / closed.total.norm();
        (Some(b), Some(err))
    } else {
        (None, None)
    };

    let tol = settings.sign_tol;
    let pass = (scalar.value - f64::from(pairing.pairing)).norm() <= tol
        && scalar.backstop_gap <= 1e-4
        && constant_rel_error <= 1e-8
        && centralizer_matches
        && bf_err.is_none_or(|e| e <= settings.bruteforce_rel_tol);

    Ok(LirReport {
        two_x,
        prefactor: case.prefactor,
        v,
        l_ratio_at_v: l_ratio(two_x, v)?,
        integral_constant_measured: closed.constant,
        integral_constant_expected: case.integral_constant,
        constant_rel_error,
        scalar_limit: scalar.value,
        backstop: scalar.backstop,
        pairing: pairing.pairing,
        centralizer: g.describe(),
        centralizer_matches,
        bruteforce: bf,
        bruteforce_rel_error: bf_err,
        pass,
    })
}
