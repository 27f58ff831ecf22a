//! Independent brute-force routes used to verify the fast paths: subset
//! expansions of the product formulas, exact matrix exponentials of narrow
//! step approximations, the gauge relation, stratum enumeration, and the
//! quadratic-time DFT.
//!
//! Everything here favors directness over speed and is capped at sizes where
//! exhaustive enumeration stays cheap.

use num_complex::Complex64 as C64;

use crate::delta::DeltaDistribution;
use crate::error::{Error, Result};
use crate::euler::DiscreteSignal;
use crate::exppoly::{ExpMat, ExpPoly, Term};
use crate::su2::{phase_factor, QMat};
use crate::tol::{EPS_C, EPS_F};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Subset-enumeration size cap (cost 2^N).
pub const SUBSET_CAP: usize = 14;
/// Stratum-enumeration size cap.
pub const ENUM_CAP: usize = 20;

/// Expansion of the uniform-grid product into its ordered-subset sum
/// `I + sum_d N^{-d} sum_{n_d > ... > n_1} L(n_d, z) ··· L(n_1, z)`,
/// evaluated directly.
pub fn dyson_product(signal: &DiscreteSignal, z: i64) -> Result<QMat> {
    let n = signal.len();
    if n > SUBSET_CAP {
        return Err(Error::TooLarge { n, cap: SUBSET_CAP });
    }
    let factors: Vec<QMat> = (0..n)
        .map(|slot| {
            let phase = C64::cis(-TWO_PI * slot as f64 * z as f64 / n as f64);
            QMat::new(C64::new(0.0, 0.0), phase * signal.values()[slot])
        })
        .collect();
    let mut acc = QMat::identity();
    let scale = 1.0 / n as f64;
    for mask in 1u32..(1u32 << n) {
        let mut prod = QMat::identity();
        let mut weight = 1.0;
        for slot in (0..n).rev() {
            if mask & (1 << slot) != 0 {
                prod = prod.compose(&factors[slot]);
                weight *= scale;
            }
        }
        acc = acc.add(&prod.scale(weight));
    }
    Ok(acc)
}

/// Expansion of the reduced Dirac-comb transform into its subset sum: the
/// cosine product on the diagonal plus, for every index subset, the
/// alternating-sum frequency with its sine/cosine coefficient.
pub fn dyson_delta(dist: &DeltaDistribution) -> Result<ExpMat> {
    let n = dist.len();
    if n > SUBSET_CAP {
        return Err(Error::TooLarge { n, cap: SUBSET_CAP });
    }
    let poles = dist.poles();
    // generators with sine magnitudes; cosines for the complements
    let gens: Vec<C64> = poles
        .iter()
        .map(|p| {
            let r = p.u.norm();
            if r == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                p.u * (r.sin() / r)
            }
        })
        .collect();
    let cosines: Vec<f64> = poles.iter().map(|p| p.u.norm().cos()).collect();

    let mut a_terms = vec![Term::new(0.0, C64::new(cosines.iter().product(), 0.0))];
    let mut b_terms: Vec<Term> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let mut prod = QMat::identity();
        let mut cos_rest = 1.0;
        let mut freq = 0.0;
        let d = mask.count_ones() as usize;
        let mut seen = 0usize;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                // alternating sum x_{n_d} - x_{n_{d-1}} + ...: position from
                // the top of the ascending subset fixes the sign
                seen += 1;
                let sign = if (d - seen).is_multiple_of(2) { 1.0 } else { -1.0 };
                freq += sign * poles[i].x;
            } else {
                cos_rest *= cosines[i];
            }
        }
        for i in (0..n).rev() {
            if mask & (1 << i) != 0 {
                prod = prod.compose(&QMat::new(C64::new(0.0, 0.0), gens[i]));
            }
        }
        if d % 2 == 1 {
            b_terms.push(Term::new(freq, prod.b * cos_rest));
        } else {
            a_terms.push(Term::new(freq, prod.a * cos_rest));
        }
    }
    Ok(ExpMat::new(
        ExpPoly::normalize(a_terms, EPS_F, EPS_C),
        ExpPoly::normalize(b_terms, EPS_F, EPS_C),
    ))
}

/// Narrow step approximation of a comb: each pole smeared over a width
/// `epsilon` strictly below the smallest gap.
#[derive(Debug, Clone)]
pub struct StepProfile {
    dist: DeltaDistribution,
    epsilon: f64,
}

impl StepProfile {
    pub fn new(dist: DeltaDistribution, epsilon: f64) -> Result<Self> {
        let min_gap = Self::min_gap(&dist);
        if epsilon.is_nan() || epsilon <= 0.0 || epsilon >= min_gap {
            return Err(Error::EpsilonTooLarge { epsilon, min_gap });
        }
        Ok(Self { dist, epsilon })
    }

    fn min_gap(dist: &DeltaDistribution) -> f64 {
        let poles = dist.poles();
        if poles.is_empty() {
            return 1.0;
        }
        let mut gap = poles[0].x.min(1.0 - poles[poles.len() - 1].x);
        for w in poles.windows(2) {
            gap = gap.min(w[1].x - w[0].x);
        }
        gap
    }

    pub fn dist(&self) -> &DeltaDistribution {
        &self.dist
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Rotation block: the exact exponential of
/// `(i·pi·eps·z, u; -conj(u), -i·pi·eps·z)`, with `A = sqrt(|u|^2 +
/// (eps·pi·z)^2)` and `sinc x = sin x / x` (`sinc 0 = 1`).
fn step_rotation(u: C64, eps: f64, z: f64) -> QMat {
    let w = eps * std::f64::consts::PI * z;
    let a = (u.norm_sqr() + w * w).sqrt();
    let snc = if a == 0.0 { 1.0 } else { a.sin() / a };
    QMat::new(C64::new(a.cos(), w * snc), u * snc)
}

/// Exact transform of the step approximation at one spectral point: the
/// ordered product of closed-form exponentials of the constant pieces. The
/// boundary pieces lose half a step width, interior pieces a full one.
pub fn step_transform(profile: &StepProfile, z: f64) -> QMat {
    let poles = profile.dist.poles();
    let n = poles.len();
    if n == 0 {
        // no rotation pieces to make room for: the zero function transforms
        // to the full-interval phase for every step width
        return phase_factor(1.0, z);
    }
    let eps = profile.epsilon;
    let pos = |i: usize| -> f64 {
        if i == 0 {
            0.0
        } else if i <= n {
            poles[i - 1].x
        } else {
            1.0
        }
    };
    let mut acc = phase_factor(pos(n + 1) - pos(n) - eps / 2.0, z);
    for i in (1..=n).rev() {
        acc = acc.compose(&step_rotation(poles[i - 1].u, eps, z));
        let tilde = if i == 1 { eps / 2.0 } else { eps };
        acc = acc.compose(&phase_factor(pos(i) - pos(i - 1) - tilde, z));
    }
    acc
}

/// Gauge relation at integer spectral points: returns the pair
/// `(G(1, n) · F[u_eps](n), (-1)^n · F[u_eps](n))` with
/// `G(x, z) = diag(exp(-i·pi·x·z), exp(i·pi·x·z))`; the two sides agree.
pub fn gauge_check(profile: &StepProfile, n: i64) -> (QMat, QMat) {
    let base = step_transform(profile, n as f64);
    let lhs = phase_factor(-1.0, n as f64).compose(&base);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    (lhs, base.scale(sign))
}

/// All strictly increasing `d`-tuples in `[0, n-1]` whose alternating sum
/// `n_d - n_{d-1} + ... ± n_1` equals `l`.
pub fn enumerate_stratum(n: usize, d: usize, l: i64) -> Result<Vec<Vec<usize>>> {
    if n > ENUM_CAP {
        return Err(Error::TooLarge { n, cap: ENUM_CAP });
    }
    if d > n {
        return Err(Error::TooLarge { n: d, cap: n });
    }
    let mut out = Vec::new();
    let mut tuple = vec![0usize; d];
    fn rec(
        n: usize,
        d: usize,
        l: i64,
        depth: usize,
        start: usize,
        tuple: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == d {
            let mut alt = 0i64;
            for (pos, &v) in tuple.iter().enumerate() {
                let sign = if (d - 1 - pos).is_multiple_of(2) { 1 } else { -1 };
                alt += sign * v as i64;
            }
            if alt == l {
                out.push(tuple.clone());
            }
            return;
        }
        for v in start..n {
            tuple[depth] = v;
            rec(n, d, l, depth + 1, v + 1, tuple, out);
        }
    }
    if d > 0 {
        rec(n, d, l, 0, 0, &mut tuple, &mut out);
    }
    Ok(out)
}

/// Quadratic-time DFT, the independent check for the fast transform.
pub fn naive_dft(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    (0..n)
        .map(|z| {
            (0..n)
                .map(|l| v[l] * C64::cis(-TWO_PI * (l * z) as f64 / n as f64))
                .sum()
        })
        .collect()
}

/// Quadratic-time inverse DFT.
pub fn naive_idft(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    (0..n)
        .map(|l| {
            (0..n)
                .map(|z| v[z] * C64::cis(TWO_PI * (l * z) as f64 / n as f64))
                .sum::<C64>()
                / n as f64
        })
        .collect()
}
