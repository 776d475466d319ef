//! The relative Bruhat decomposition of `exp(nbar(X))` in `U(3,1)`.

use nalgebra::{Matrix4, Matrix5};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruhatPoint {
    pub x1: Complex64,
    pub x2: Complex64,
    pub x3: f64,
    pub a: Complex64,
    pub y1: Complex64,
    pub y2: Complex64,
    pub y3: f64,
    pub c: Complex64,
}

pub fn c_of(x1: Complex64, x2: Complex64, x3: f64) -> Complex64 {
    Complex64::new(x3, -0.5 * (x1.norm_sqr() + x2.norm_sqr()))
}

/// Smallest `|c|` accepted; below it the point is treated as lying over `N(R)`.
pub const C_MIN: f64 = 1e-300;

pub fn bruhat_decompose(x1: Complex64, x2: Complex64, x3: f64) -> Result<BruhatPoint> {
    let c = c_of(x1, x2, x3);
    if c.norm() < C_MIN {
        return Err(Error::Degenerate(format!("c = {c} at ({x1}, {x2}, {x3})")));
    }
    let a = -1.0 / c.conj();
    Ok(BruhatPoint {
        x1,
        x2,
        x3,
        a,
        y1: -I * x1.conj() / c,
        y2: -I * x2.conj() / c,
        y3: x3 / c.norm_sqr(),
        c,
    })
}

pub type M4 = Matrix4<Complex64>;

pub fn nbar(x1: Complex64, x2: Complex64, x3: f64) -> M4 {
    let mut m = M4::zeros();
    m[(1, 0)] = x1;
    m[(2, 0)] = x2;
    m[(3, 0)] = re(x3);
    m[(3, 1)] = -I * x1.conj();
    m[(3, 2)] = -I * x2.conj();
    m
}

pub fn n_upper(y1: Complex64, y2: Complex64, y3: f64) -> M4 {
    let mut m = M4::zeros();
    m[(0, 1)] = y1;
    m[(0, 2)] = y2;
    m[(0, 3)] = re(y3);
    m[(1, 3)] = I * y1.conj();
    m[(2, 3)] = I * y2.conj();
    m
}

/// `exp` of a matrix with cube zero.
pub fn exp_nilpotent(n: &M4) -> M4 {
    M4::identity() + n + n * n * re(0.5)
}

pub fn w_breve() -> M4 {
    let mut w = M4::zeros();
    w[(0, 3)] = re(1.0);
    w[(1, 1)] = re(-1.0);
    w[(2, 2)] = re(-1.0);
    w[(3, 0)] = re(-1.0);
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    /// Largest entry of the block-triangular part that should vanish.
    pub off_block: f64,
    pub a_mismatch: f64,
    pub unitarity: f64,
    pub v3_imaginary_mismatch: f64,
    pub reconstruction: f64,
}

impl OracleReport {
    pub fn max(&self) -> f64 {
        [self.off_block, self.a_mismatch, self.unitarity, self.v3_imaginary_mismatch, self.reconstruction]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn max_abs(m: &M4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Recovers `exp(n(V)) m w exp(n(Y))` from `exp(nbar(X))` by matrix algebra
/// and measures how far each structural claim is from holding.
pub fn matrix_oracle(p: &BruhatPoint) -> OracleReport {
    let lhs = exp_nilpotent(&nbar(p.x1, p.x2, p.x3));
    let ny = exp_nilpotent(&n_upper(p.y1, p.y2, p.y3));
    let ny_inv = exp_nilpotent(&(-n_upper(p.y1, p.y2, p.y3)));
    let w = w_breve();
    let w_inv = w.transpose();
    let q = lhs * ny_inv * w_inv;

    let mut off_block = 0.0f64;
    for r in 1..4 {
        off_block = off_block.max(q[(r, 0)].norm());
    }
    for col in 0..3 {
        off_block = off_block.max(q[(3, col)].norm());
    }
    let a_mismatch = (q[(0, 0)] - p.a).norm().max((q[(3, 3)] - 1.0 / p.a.conj()).norm());

    let mut b = nalgebra::Matrix2::<Complex64>::zeros();
    for r in 0..2 {
        for col in 0..2 {
            b[(r, col)] = q[(r + 1, col + 1)];
        }
    }
    let unitarity = (b.adjoint() * b - nalgebra::Matrix2::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);

    let mut m = M4::zeros();
    m[(0, 0)] = q[(0, 0)];
    m[(3, 3)] = q[(3, 3)];
    for r in 0..2 {
        for col in 0..2 {
            m[(r + 1, col + 1)] = b[(r, col)];
        }
    }
    let u = q * m.try_inverse().unwrap_or_else(M4::zeros);
    let (v1, v2) = (u[(0, 1)], u[(0, 2)]);
    let v3 = u[(0, 3)].re;
    let v3_imaginary_mismatch = (u[(0, 3)].im - 0.5 * (v1.norm_sqr() + v2.norm_sqr())).abs();
    let rebuilt = exp_nilpotent(&n_upper(v1, v2, v3)) * m * w * ny;
    let reconstruction = max_abs(&(rebuilt - lhs));
    OracleReport { off_block, a_mismatch, unitarity, v3_imaginary_mismatch, reconstruction }
}

/// Value of the top form on the images under `nbar` of the real basis
/// `(1,0,0), (i,0,0), (0,1,0), (0,i,0), (0,0,1)`, with the coordinates
/// `(2,1), (3,1), (4,1), (4,2), (4,3)` in that order.
pub fn top_form_pullback() -> Complex64 {
    let basis = [
        (re(1.0), re(0.0), 0.0),
        (I, re(0.0), 0.0),
        (re(0.0), re(1.0), 0.0),
        (re(0.0), I, 0.0),
        (re(0.0), re(0.0), 1.0),
    ];
    let slots = [(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)];
    let mut m = Matrix5::<Complex64>::zeros();
    for (col, &(x1, x2, x3)) in basis.iter().enumerate() {
        let n = nbar(x1, x2, x3);
        for (row, &(i, j)) in slots.iter().enumerate() {
            m[(row, col)] = n[(i, j)];
        }
    }
    m.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_point() {
        let p = bruhat_decompose(re(0.0), re(0.0), 1.0).unwrap();
        assert!((p.a - re(-1.0)).norm() < 1e-15);
        assert_eq!((p.y1, p.y2, p.y3), (re(0.0), re(0.0), 1.0));
        assert!(matrix_oracle(&p).max() < 1e-12);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(bruhat_decompose(re(0.0), re(0.0), 0.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn top_form() {
        assert!((top_form_pullback() - re(-4.0)).norm() < 1e-12);
    }
}
