use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation with reflection for `Re z < 1/2`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::GammaPole(z.re));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return PI / (s * gamma_unchecked(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert!((gamma_real(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-13);
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-11);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-12);
        assert!(matches!(gamma_real(0.0), Err(Error::GammaPole(_))));
        assert!(matches!(gamma_real(-1.0), Err(Error::GammaPole(_))));
    }

    #[test]
    fn duplication() {
        let v = 0.3;
        let lhs = gamma_real(2.0 * v).unwrap();
        let rhs = 2f64.powf(2.0 * v - 1.0) / PI.sqrt() * gamma_real(v).unwrap() * gamma_real(v + 0.5).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * lhs.abs());
    }

    #[test]
    fn complex_recurrence() {
        let z = Complex64::new(0.7, 0.8);
        let a = gamma(z + 1.0).unwrap();
        let b = z * gamma(z).unwrap();
        assert!((a - b).norm() < 1e-13 * a.norm());
    }
}
