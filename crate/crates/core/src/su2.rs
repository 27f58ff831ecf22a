//! Quaternion-form 2x2 complex matrices and the elementary factor matrices
//! used by every transform in this crate.
//!
//! A quaternion-form matrix is
//!
//! ```text
//!   ( a        b      )
//!   ( -conj(b) conj(a))
//! ```
//!
//! determined by its upper row `(a, b)`. The form is closed under
//! multiplication and has determinant `|a|^2 + |b|^2 >= 0`; unit-determinant
//! elements are exactly SU(2). Storing only `(a, b)` enforces the shape by
//! construction; the full 2x2 form is materialized only in oracle and test
//! code via [`QMat::to_mat2`].
//!
//! Conventions: angles are radians, frequencies live in the unit interval,
//! and the spectral variable `z` is dimensionless, matching the phase
//! factors `exp(±i·pi·x·z)` used throughout.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// 2x2 complex matrix in quaternion form, stored as its upper row `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMat {
    pub a: C64,
    pub b: C64,
}

impl QMat {
    pub const fn new(a: C64, b: C64) -> Self {
        Self { a, b }
    }

    pub fn identity() -> Self {
        Self::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn zero() -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    /// Determinant `|a|^2 + |b|^2` (always real and non-negative).
    pub fn det(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    /// Matrix product `self · rhs`, staying in quaternion form.
    pub fn compose(&self, rhs: &QMat) -> QMat {
        QMat::new(
            self.a * rhs.a - self.b * rhs.b.conj(),
            self.a * rhs.b + self.b * rhs.a.conj(),
        )
    }

    /// Matrix inverse. Fails on determinants below 1e-300.
    pub fn invert(&self) -> Result<QMat> {
        let det = self.det();
        if det < 1e-300 {
            return Err(Error::SingularMatrix { det });
        }
        Ok(QMat::new(self.a.conj() / det, -self.b / det))
    }

    /// Entrywise sum; the quaternion shape is preserved.
    pub fn add(&self, rhs: &QMat) -> QMat {
        QMat::new(self.a + rhs.a, self.b + rhs.b)
    }

    /// Scale by a real factor; the quaternion shape is preserved.
    pub fn scale(&self, s: f64) -> QMat {
        QMat::new(self.a * s, self.b * s)
    }

    /// Largest entrywise absolute difference against `rhs`.
    pub fn max_abs_diff(&self, rhs: &QMat) -> f64 {
        (self.a - rhs.a).norm().max((self.b - rhs.b).norm())
    }

    /// Materialize the full 2x2 matrix `(a, b; -conj(b), conj(a))`.
    pub fn to_mat2(&self) -> Mat2 {
        Mat2 {
            m: [
                [self.a, self.b],
                [-self.b.conj(), self.a.conj()],
            ],
        }
    }
}

impl std::ops::Mul for QMat {
    type Output = QMat;
    fn mul(self, rhs: QMat) -> QMat {
        self.compose(&rhs)
    }
}

/// General 2x2 complex matrix, used only for the conjugation by
/// `A = (i, -i; 1, 1)` that diagonalizes the dual transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    /// Row-major entries.
    pub m: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Mat2 {
            m: [[one, zero], [zero, one]],
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        Mat2 { m: out }
    }

    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((self.m[i][j] - rhs.m[i][j]).norm());
            }
        }
        dev
    }
}

/// Phase factor `E(x, z) = diag(exp(i·pi·x·z), exp(-i·pi·x·z))`.
pub fn phase_factor(x: f64, z: f64) -> QMat {
    QMat::new(C64::cis(std::f64::consts::PI * x * z), C64::new(0.0, 0.0))
}

/// Grid phase factor `E_N(n, z) = diag(exp(i·pi·n·z/N), exp(-i·pi·n·z/N))`,
/// equal to `phase_factor(n/N, z)`.
pub fn phase_factor_n(n: i64, z: i64, grid: usize) -> QMat {
    phase_factor(n as f64 / grid as f64, z as f64)
}

/// Rotation factor `R(u)` with `u = exp(i·phi)·r`:
/// `a = cos r`, `b = exp(i·phi)·sin r`. `R(0)` is the identity.
pub fn rotation_factor(u: C64) -> QMat {
    let r = u.norm();
    let b = if r == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        u * (r.sin() / r)
    };
    QMat::new(C64::new(r.cos(), 0.0), b)
}

/// Antidiagonal generator `U = (0, u; -conj(u), 0)`.
pub fn rotation_generator(u: C64) -> QMat {
    QMat::new(C64::new(0.0, 0.0), u)
}

/// Dual rotation factor `R_hat(xi) = cos(xi)·I + sin(xi)·L` with
/// `L = (0, -i; -i, 0)`: `a = cos xi`, `b = -i·sin xi`.
pub fn dual_rotation_factor(xi: f64) -> QMat {
    QMat::new(C64::new(xi.cos(), 0.0), C64::new(0.0, -xi.sin()))
}

/// Real rotation `R(v, z)` by the angle `pi·v·z`:
/// `a = cos(pi·v·z)`, `b = sin(pi·v·z)`.
pub fn dual_phase_factor(v: f64, z: f64) -> QMat {
    let t = std::f64::consts::PI * v * z;
    QMat::new(C64::new(t.cos(), 0.0), C64::new(t.sin(), 0.0))
}

/// Conjugation `A^{-1} · m · A` with `A = (i, -i; 1, 1)`.
///
/// `A` diagonalizes the real rotations: conjugating `dual_phase_factor(v, z)`
/// yields `phase_factor(v, -z)`, and conjugating the fixed diagonal
/// `diag(exp(i·x), exp(-i·x))` yields `dual_rotation_factor(x)`.
pub fn conjugate_by_a(m: &Mat2) -> Mat2 {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let half = C64::new(0.5, 0.0);
    // A^{-1} = (1/(2i)) · (1, i; -1, i)
    let a = Mat2 {
        m: [[i, -i], [one, one]],
    };
    let a_inv = Mat2 {
        m: [
            [half / i, half],
            [-half / i, half],
        ],
    };
    a_inv.mul(m).mul(&a)
}
