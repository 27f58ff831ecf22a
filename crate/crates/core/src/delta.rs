//! Transform of Dirac combs `u = sum_n u_n · delta_{x_n}` with non-equidistant
//! poles: the forward transform as an exact exponential-polynomial matrix, its
//! reduced form, and the recursive layer-peeling inverse.
//!
//! The forward transform is the ordered product
//!
//! ```text
//!   E(1, z) · prod_{n = N..1}  Ad_{E(-x_n, z)} R(u_n)
//! ```
//!
//! whose entries are finite sums `sum c · exp(-2·pi·i·y·z)` over alternating
//! pole sums `y`; the reduced form drops the leading `E(1, z)`. Inversion
//! reads off the rightmost delta of the off-diagonal entry and the zero
//! frequency of the diagonal entry, strips the recovered factor, and repeats.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::exppoly::{ExpMat, ExpPoly, Term};
use crate::tol::Tolerances;

/// One pole: position `x` in (0, 1) with complex weight `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub x: f64,
    pub u: C64,
}

/// Dirac comb with strictly increasing poles inside the open unit interval.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaDistribution {
    poles: Vec<Pole>,
}

impl DeltaDistribution {
    /// Validates strict ordering `0 < x_1 < ... < x_N < 1` and finiteness.
    pub fn new(poles: Vec<Pole>) -> Result<Self> {
        let mut prev = 0.0;
        for (i, p) in poles.iter().enumerate() {
            if !p.x.is_finite() || !p.u.re.is_finite() || !p.u.im.is_finite() {
                return Err(Error::NonFinite("delta distribution"));
            }
            if p.x <= prev {
                return Err(Error::InvalidDistribution(format!(
                    "pole {} at x = {} does not increase past {}",
                    i, p.x, prev
                )));
            }
            prev = p.x;
        }
        if prev >= 1.0 {
            return Err(Error::InvalidDistribution(format!(
                "last pole at x = {prev} is not below 1"
            )));
        }
        Ok(Self { poles })
    }

    pub fn empty() -> Self {
        Self { poles: Vec::new() }
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }
}

/// Conjugated rotation `Ad_{E(-x, z)} R(u)` as an exponential-polynomial
/// matrix: `a = cos|u|` constant, `b = exp(i·arg u)·sin|u|` at frequency `x`.
pub(crate) fn conjugated_rotation(x: f64, u: C64) -> ExpMat {
    let r = u.norm();
    let a = ExpPoly::from_terms(vec![Term::new(0.0, C64::new(r.cos(), 0.0))]);
    let b = if r == 0.0 {
        ExpPoly::empty()
    } else {
        ExpPoly::from_terms(vec![Term::new(x, u * (r.sin() / r))])
    };
    ExpMat::new(a, b)
}

/// Exponential-polynomial matrix of the phase factor `E(x, z)`:
/// `a` is the single term at frequency `-x/2`, `b` is empty.
pub(crate) fn phase_expmat(x: f64) -> ExpMat {
    ExpMat::new(
        ExpPoly::from_terms(vec![Term::new(-x / 2.0, C64::new(1.0, 0.0))]),
        ExpPoly::empty(),
    )
}

/// Forward transform of the comb, with explicit merge/prune tolerances.
pub fn forward_with(dist: &DeltaDistribution, eps_f: f64, eps_c: f64) -> ExpMat {
    let mut acc = phase_expmat(1.0);
    for p in dist.poles.iter().rev() {
        acc = acc.mul_with(&conjugated_rotation(p.x, p.u), eps_f, eps_c);
    }
    acc
}

/// Forward transform of the comb with default tolerances.
pub fn forward(dist: &DeltaDistribution) -> ExpMat {
    let tol = Tolerances::default();
    forward_with(dist, tol.eps_f, tol.eps_c)
}

/// Reduced transform: left multiplication by `E(-1, z)`, i.e. a frequency
/// shift of both entries by `+1/2`.
pub fn reduce(m: &ExpMat) -> ExpMat {
    m.shift_freq(0.5)
}

/// One layer-peeling step on a reduced transform.
///
/// Reads the rightmost off-diagonal term `(y, b_k)` and the zero-frequency
/// diagonal coefficient `a_k`, recovers `u = exp(i·arg b_k)·arctan|b_k/a_k|`,
/// and strips the factor: `next = Ad_{E(-y, z)} R(u)^{-1} · m`.
pub fn peel_step(m: &ExpMat, tol: &Tolerances) -> Result<(f64, C64, ExpMat)> {
    let top = match m.b.rightmost() {
        Ok(t) => t,
        Err(_) => return Err(Error::EmptyOffDiagonal),
    };
    let a0 = m.a.at_zero(tol.eps_f);
    if a0.norm() <= tol.eps_peel {
        return Err(Error::VanishingDiagonal {
            magnitude: a0.norm(),
            floor: tol.eps_peel,
        });
    }
    let u = C64::from_polar((top.coeff.norm() / a0.norm()).atan(), top.coeff.arg());
    let strip = conjugated_rotation(top.freq, -u);
    let next = strip.mul_with(m, tol.eps_f, tol.eps_c);
    Ok((top.freq, u, next))
}

/// Full layer-peeling inversion of a reduced transform with at most `n_max`
/// poles. Returns the poles in increasing order.
pub fn inverse(m: &ExpMat, n_max: usize, tol: &Tolerances) -> Result<DeltaDistribution> {
    let mut cur = m.clone();
    let mut recovered: Vec<Pole> = Vec::new();
    while !cur.b.is_empty() {
        if recovered.len() == n_max {
            return Err(Error::NotInImage(format!(
                "off-diagonal entry still has {} terms after {} peel steps",
                cur.b.len(),
                n_max
            )));
        }
        let (x, u, next) = peel_step(&cur, tol)?;
        recovered.push(Pole { x, u });
        cur = next;
    }
    // unpruned difference: the residual itself must stay measurable below eps_c
    let residual = cur
        .a
        .sub_with(&ExpPoly::one(), tol.eps_f, 0.0)
        .coeff_abs_sum();
    if residual > tol.eps_member {
        return Err(Error::NotInImage(format!(
            "diagonal residual {residual:.3e} after peeling exceeds {:.3e}",
            tol.eps_member
        )));
    }
    recovered.reverse();
    DeltaDistribution::new(recovered)
        .map_err(|e| Error::NotInImage(format!("recovered poles are inconsistent: {e}")))
}

/// Inversion for combs given in the gap-weighted convention
/// `u_hat = sum_n (Delta x_n · u_n) · delta_{x_n}`: peels as [`inverse`] and
/// divides each recovered weight by `Delta x_n = x_{n+1} - x_n`
/// (`x_{N+1} := 1`).
pub fn inverse_weighted(m: &ExpMat, n_max: usize, tol: &Tolerances) -> Result<DeltaDistribution> {
    let hat = inverse(m, n_max, tol)?;
    let n = hat.len();
    let mut poles = hat.poles().to_vec();
    for i in 0..n {
        let next_x = if i + 1 < n { poles[i + 1].x } else { 1.0 };
        let gap = next_x - poles[i].x;
        if gap <= tol.eps_f {
            return Err(Error::DegenerateGap { gap });
        }
        poles[i].u /= gap;
    }
    DeltaDistribution::new(poles)
}

/// Membership test: true iff exactly `n` peel steps succeed and the residual
/// is the identity within `eps_member` (coefficient-sum norms of `a - 1` and
/// `b`). Any peel failure yields `false`.
pub fn membership(m: &ExpMat, n: usize, tol: &Tolerances) -> bool {
    let mut cur = m.clone();
    for _ in 0..n {
        match peel_step(&cur, tol) {
            Ok((_, _, next)) => cur = next,
            Err(_) => return false,
        }
    }
    let a_res = cur
        .a
        .sub_with(&ExpPoly::one(), tol.eps_f, 0.0)
        .coeff_abs_sum();
    a_res < tol.eps_member && cur.b.coeff_abs_sum() < tol.eps_member
}
