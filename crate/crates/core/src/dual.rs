//! Dual transform obtained by exchanging the roles of the pole gaps
//! `xi_n = x_{n+1} - x_n` and the masses `u_n`, and the fast inversion of
//! constant-mass combs `w = sum_n u_c · delta_{x_n}` through the uniform-grid
//! layer-peeling machine.
//!
//! In the dual the rotations carry the spectral variable and the diagonal
//! phases are fixed:
//!
//! ```text
//!   (prod_{n = N+1..1}  R(v_n - v_{n-1}, z) · E(xi_{n-1})) · R(v_0, z)
//! ```
//!
//! with `R(v, z)` the real rotation by `pi·v·z` and `E(xi) =
//! diag(exp(i·xi), exp(-i·xi))`. Conjugating by `A = (i, -i; 1, 1)` and
//! substituting `zeta = -z` turns this into a product of the same shape as
//! the reduced Dirac-comb transform, with masses in the role of poles.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::euler::{idft, peel_step, GridMat};
use crate::exppoly::{ExpMat, ExpPoly, Term};
use crate::su2::{dual_phase_factor, QMat};
use crate::tol::Tolerances;

/// Real-part floor above which a recovered dual value cannot come from a
/// constant-mass configuration.
pub const REAL_PART_FLOOR: f64 = 1e-7;
/// Smallest usable cosine-product normalizer.
pub const C_FLOOR: f64 = 1e-8;

/// Positive gaps `(xi_0, ..., xi_N)` summing to one; partial sums are the
/// pole positions `x_n = xi_0 + ... + xi_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapVector {
    xi: Vec<f64>,
}

impl GapVector {
    pub fn new(xi: Vec<f64>) -> Result<Self> {
        if xi.is_empty() {
            return Err(Error::InvalidGapVector("no entries".into()));
        }
        if xi.iter().any(|g| !g.is_finite() || *g <= 0.0) {
            return Err(Error::InvalidGapVector(
                "entries must be finite and positive".into(),
            ));
        }
        let sum: f64 = xi.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidGapVector(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        Ok(Self { xi })
    }

    pub fn gaps(&self) -> &[f64] {
        &self.xi
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// Pole positions `x_1 < ... < x_N` (partial sums, last one dropped).
    pub fn poles(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.xi[..self.xi.len() - 1]
            .iter()
            .map(|g| {
                acc += g;
                acc
            })
            .collect()
    }
}

/// Cumulative masses `(v_0, ..., v_{N+1})` with `v_{N+1} = 1` and strictly
/// positive increments.
#[derive(Debug, Clone, PartialEq)]
pub struct MassVector {
    v: Vec<f64>,
}

impl MassVector {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::InvalidMassVector("needs at least two entries".into()));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("mass vector"));
        }
        if (v[v.len() - 1] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMassVector(format!(
                "last entry is {}, expected 1",
                v[v.len() - 1]
            )));
        }
        for w in v.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidMassVector(format!(
                    "entries must increase, got {} after {}",
                    w[1], w[0]
                )));
            }
        }
        Ok(Self { v })
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }
}

/// Fixed diagonal `E(x) = diag(exp(i·x), exp(-i·x))`.
fn fixed_phase(x: f64) -> QMat {
    QMat::new(C64::cis(x), C64::new(0.0, 0.0))
}

/// Dual transform at one spectral point.
pub fn forward(xi: &GapVector, v: &MassVector, z: f64) -> Result<QMat> {
    if v.v.len() != xi.len() + 1 {
        return Err(Error::LengthMismatch {
            expected: xi.len() + 1,
            got: v.v.len(),
        });
    }
    let m = xi.len(); // N + 1 factors in the product
    let mut acc = QMat::identity();
    for n in (1..=m).rev() {
        acc = acc.compose(&dual_phase_factor(v.v[n] - v.v[n - 1], z));
        acc = acc.compose(&fixed_phase(xi.xi[n - 1]));
    }
    Ok(acc.compose(&dual_phase_factor(v.v[0], z)))
}

/// Reduced dual transform as an exponential-polynomial matrix in the
/// conjugated variable:
///
/// ```text
///   prod_{n = N..0}  (cos xi_n,  -i·sin(xi_n)·exp(-2·pi·i·v_n·zeta); ...)
/// ```
///
/// `masses` holds `(v_0, ..., v_N)`, one entry per gap.
pub fn hat_forward(xi: &GapVector, masses: &[f64]) -> Result<ExpMat> {
    if masses.len() != xi.len() {
        return Err(Error::LengthMismatch {
            expected: xi.len(),
            got: masses.len(),
        });
    }
    let mut acc = ExpMat::identity();
    for n in (0..xi.len()).rev() {
        let g = xi.xi[n];
        let factor = ExpMat::new(
            ExpPoly::from_terms(vec![Term::new(0.0, C64::new(g.cos(), 0.0))]),
            ExpPoly::from_terms(vec![Term::new(masses[n], C64::new(0.0, -g.sin()))]),
        );
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// The constant-mass cumulative masses `v_n = n/M`, `n = 0, ..., M-1`.
pub fn const_mass_points(m: usize) -> Vec<f64> {
    (0..m).map(|n| n as f64 / m as f64).collect()
}

/// Fast inversion of a constant-mass dual transform from its samples at
/// `zeta = 0, ..., M-1`.
///
/// Divides out the cosine-product normalizer (the zero-frequency inverse-DFT
/// coefficient of the diagonal samples), runs `M` uniform-grid peel steps on
/// the normalized grid, reads each recovered scaled value as `-i·tan(xi_n)`,
/// and rebuilds the gaps. Rejects inputs whose recovered values have a
/// non-negligible real part or whose grid does not return to itself.
pub fn inverse_const_mass(samples: &[QMat], m: usize, tol: &Tolerances) -> Result<GapVector> {
    if samples.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: samples.len(),
        });
    }
    let a: Vec<C64> = samples.iter().map(|q| q.a).collect();
    let c_norm = idft(&a)[0];
    if c_norm.norm() < C_FLOOR {
        return Err(Error::VanishingC {
            magnitude: c_norm.norm(),
        });
    }
    // only the real part carries the cosine product; the imaginary part is
    // rounding noise on genuine inputs
    let c_real = c_norm.re;
    let normalized = GridMat::new(samples.iter().map(|q| q.scale(1.0 / c_real)).collect())?;

    let mut cur = normalized.clone();
    let mut scaled = Vec::with_capacity(m);
    for _ in 0..m {
        let (u_rec, next) = peel_step(&cur);
        scaled.push(u_rec / m as f64); // expected: -i·tan(xi_n)
        cur = next;
    }
    scaled.reverse();

    let residual = cur.max_abs_diff(&normalized);
    if residual > tol.eps_member {
        return Err(Error::NotConstMass(format!(
            "grid residual {residual:.3e} after {m} peel steps"
        )));
    }
    let mut xi = Vec::with_capacity(m);
    for (n, val) in scaled.iter().enumerate() {
        if val.re.abs() > REAL_PART_FLOOR {
            return Err(Error::NotConstMass(format!(
                "recovered value {n} has real part {:.3e}",
                val.re
            )));
        }
        let g = (-val.im).atan();
        if g <= 0.0 {
            return Err(Error::NotConstMass(format!(
                "recovered gap {n} is non-positive ({g:.3e})"
            )));
        }
        xi.push(g);
    }
    GapVector::new(xi).map_err(|e| Error::NotConstMass(format!("recovered gaps invalid: {e}")))
}
