//! Euler-type transform of uniform discrete signals, sampled on the integer
//! grid `z = 0, ..., N-1`, and its DFT-based layer-peeling inverse.
//!
//! Forward: `F[u](z) = prod_{n = N-1..0} (I + (1/N)·L(n, z))` with
//! `L(n, z) = (0, exp(-2·pi·i·n·z/N)·u_n; -exp(2·pi·i·n·z/N)·conj(u_n), 0)`.
//!
//! Inversion peels one grid slot per step: the inverse DFT of the
//! off-diagonal samples read at index `N-1` recovers `u_{N-1}/N`; stripping
//! the recovered factor and conjugating by one slot of phase leaves the
//! transform of the signal cyclically shifted by one step, so `N` steps
//! recover `u_{N-1}, u_{N-2}, ..., u_0` and return the grid to its start.

use num_bigint::BigUint;
use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::su2::{phase_factor_n, QMat};
use crate::tol::Tolerances;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Size cap for the brute-force stratified expansion.
pub const DYSON_CAP: usize = 14;

/// Complex signal `(u_0, ..., u_{N-1})`, `N >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSignal {
    u: Vec<C64>,
}

impl DiscreteSignal {
    pub fn new(u: Vec<C64>) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        if u.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("discrete signal"));
        }
        Ok(Self { u })
    }

    pub fn values(&self) -> &[C64] {
        &self.u
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

/// N sampled matrices at `z = 0, ..., N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMat {
    samples: Vec<QMat>,
}

impl GridMat {
    pub fn new(samples: Vec<QMat>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[QMat] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest entrywise deviation across all samples.
    pub fn max_abs_diff(&self, rhs: &GridMat) -> f64 {
        self.samples
            .iter()
            .zip(&rhs.samples)
            .map(|(p, q)| p.max_abs_diff(q))
            .fold(0.0, f64::max)
    }
}

/// One product factor `I + (1/N)·L(n, z)`.
fn grid_factor(n: usize, z: usize, len: usize, u: C64) -> QMat {
    let phase = C64::cis(-TWO_PI * (n as f64) * (z as f64) / len as f64);
    QMat::new(C64::new(1.0, 0.0), phase * u / len as f64)
}

/// Forward transform: the ordered factor product at every grid point.
pub fn forward(signal: &DiscreteSignal) -> GridMat {
    let n = signal.len();
    let samples = (0..n)
        .map(|z| {
            let mut acc = QMat::identity();
            for slot in (0..n).rev() {
                acc = acc.compose(&grid_factor(slot, z, n, signal.u[slot]));
            }
            acc
        })
        .collect();
    GridMat { samples }
}

/// Discrete Fourier transform `F[v](z) = sum_l v_l · exp(-2·pi·i·l·z/N)`.
pub fn dft(v: &[C64]) -> Vec<C64> {
    let mut buf: Vec<rustfft::num_complex::Complex<f64>> =
        v.iter().map(|c| rustfft::num_complex::Complex::new(c.re, c.im)).collect();
    FftPlanner::new().plan_fft_forward(v.len()).process(&mut buf);
    buf.into_iter().map(|c| C64::new(c.re, c.im)).collect()
}

/// Inverse discrete Fourier transform, normalized so `idft(dft(v)) = v`.
pub fn idft(v: &[C64]) -> Vec<C64> {
    let n = v.len() as f64;
    let mut buf: Vec<rustfft::num_complex::Complex<f64>> =
        v.iter().map(|c| rustfft::num_complex::Complex::new(c.re, c.im)).collect();
    FftPlanner::new().plan_fft_inverse(v.len()).process(&mut buf);
    buf.into_iter().map(|c| C64::new(c.re / n, c.im / n)).collect()
}

/// One layer-peeling step.
///
/// Returns the recovered component (the inverse DFT of the off-diagonal
/// samples at index `N-1`, times `N`) and the next grid
/// `Ad_{E_N(-1, z)}[R_hat(z)^{-1} · g(z)] · (I + (1/N)·U)` built with the
/// recovered value. On a transform of `u` the next grid is the transform of
/// `u` cyclically permuted by one step.
pub fn peel_step(grid: &GridMat) -> (C64, GridMat) {
    let n = grid.len();
    let b: Vec<C64> = grid.samples.iter().map(|m| m.b).collect();
    let scaled = idft(&b)[n - 1]; // u_rec / N
    let u_rec = scaled * n as f64;
    let right = QMat::new(C64::new(1.0, 0.0), scaled);
    let samples = (0..n)
        .map(|z| {
            let rhat = grid_factor(n - 1, z, n, u_rec);
            // R_hat has determinant 1 + |u|^2/N^2 > 0, so this cannot fail
            let stripped = rhat.invert().unwrap().compose(&grid.samples[z]);
            let e = phase_factor_n(-1, z as i64, n);
            let shifted = e.compose(&stripped).compose(&e.invert().unwrap());
            shifted.compose(&right)
        })
        .collect();
    (u_rec, GridMat { samples })
}

/// Full inversion: `N` peel steps recover `u_{N-1}, ..., u_0`; the result is
/// validated by recomputing its forward transform against the input.
pub fn inverse(grid: &GridMat, tol: &Tolerances) -> Result<DiscreteSignal> {
    let n = grid.len();
    let mut cur = grid.clone();
    let mut rec = Vec::with_capacity(n);
    for _ in 0..n {
        let (u, next) = peel_step(&cur);
        rec.push(u);
        cur = next;
    }
    rec.reverse();
    let signal = DiscreteSignal::new(rec)?;
    let residual = forward(&signal).max_abs_diff(grid);
    if residual > tol.eps_member {
        return Err(Error::NotInImage(format!(
            "reconstruction residual {residual:.3e} exceeds {:.3e}",
            tol.eps_member
        )));
    }
    Ok(signal)
}

/// Membership test: true iff `N` peel steps return the original grid
/// entrywise within `eps_member`.
pub fn membership(grid: &GridMat, tol: &Tolerances) -> bool {
    let mut cur = grid.clone();
    for _ in 0..grid.len() {
        cur = peel_step(&cur).1;
    }
    cur.max_abs_diff(grid) < tol.eps_member
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact size of the stratum of strictly increasing `(2k-1)`-tuples in
/// `[0, N-1]` with alternating sum `l`:
/// `C(l, k-1) · C(N-l-1, k-1)`.
pub fn stratum_count(n: usize, k: usize, l: usize) -> BigUint {
    if k == 0 || n == 0 || l >= n {
        return BigUint::from(0u32);
    }
    binomial(l as u64, (k - 1) as u64) * binomial((n - l - 1) as u64, (k - 1) as u64)
}

/// Brute-force stratified expansion of the forward transform.
///
/// Enumerates every strictly increasing index array, buckets the
/// generator-product contribution by alternating sum `l`, and returns the
/// per-`l` bracket arrays for the diagonal and off-diagonal entries, so that
/// `a(z) = 1 + dft(alpha)(z)` and `b(z) = dft(beta)(z)`.
pub fn dyson_strata(signal: &DiscreteSignal) -> Result<(Vec<C64>, Vec<C64>)> {
    let n = signal.len();
    if n > DYSON_CAP {
        return Err(Error::TooLarge { n, cap: DYSON_CAP });
    }
    let mut alpha = vec![C64::new(0.0, 0.0); n];
    let mut beta = vec![C64::new(0.0, 0.0); n];
    let scale = 1.0 / n as f64;
    for mask in 1u32..(1u32 << n) {
        let indices: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let d = indices.len();
        // product U_{n_d} ... U_{n_1}, scaled by N^{-d}
        let mut prod = QMat::identity();
        for &i in indices.iter().rev() {
            prod = prod.compose(&QMat::new(C64::new(0.0, 0.0), signal.u[i] * scale));
        }
        let mut l: i64 = 0;
        for (pos, &i) in indices.iter().enumerate() {
            let sign = if (d - 1 - pos).is_multiple_of(2) { 1 } else { -1 };
            l += sign * i as i64;
        }
        debug_assert!((0..n as i64).contains(&l));
        if d % 2 == 1 {
            beta[l as usize] += prod.b;
        } else {
            alpha[l as usize] += prod.a;
        }
    }
    Ok((alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn forward_of_zero_signal_is_identity() {
        let s = DiscreteSignal::new(vec![c(0.0, 0.0); 5]).unwrap();
        for m in forward(&s).samples() {
            assert!(m.max_abs_diff(&QMat::identity()) < 1e-15);
        }
    }

    #[test]
    fn forward_of_length_one_signal() {
        let s = DiscreteSignal::new(vec![c(0.4, -1.3)]).unwrap();
        let g = forward(&s);
        assert_eq!(g.len(), 1);
        assert!((g.samples()[0].a - c(1.0, 0.0)).norm() < 1e-15);
        assert!((g.samples()[0].b - c(0.4, -1.3)).norm() < 1e-15);
    }

    #[test]
    fn determinant_is_constant_across_grid() {
        let s = gen::signal(16, 3).unwrap();
        let g = forward(&s);
        let want: f64 = s
            .values()
            .iter()
            .map(|u| 1.0 + u.norm_sqr() / (16.0 * 16.0))
            .product();
        for m in g.samples() {
            assert!((m.det() - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn dft_cases() {
        let delta: Vec<C64> = (0..8)
            .map(|i| if i == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) })
            .collect();
        for v in dft(&delta) {
            assert!((v - c(1.0, 0.0)).norm() < 1e-14);
        }
        let s = gen::signal(64, 9).unwrap();
        let back = idft(&dft(s.values()));
        for (p, q) in back.iter().zip(s.values()) {
            assert!((p - q).norm() < 1e-12);
        }
    }

    #[test]
    fn peel_reads_last_component_when_only_it_is_set() {
        let mut u = vec![c(0.0, 0.0); 6];
        u[5] = c(0.7, 0.2);
        let g = forward(&DiscreteSignal::new(u).unwrap());
        let (got, _) = peel_step(&g);
        assert!((got - c(0.7, 0.2)).norm() < 1e-12);
    }

    #[test]
    fn peel_of_identity_grid_is_identity() {
        let g = GridMat::new(vec![QMat::identity(); 4]).unwrap();
        let (u, next) = peel_step(&g);
        assert!(u.norm() < 1e-15);
        assert!(next.max_abs_diff(&g) < 1e-15);
    }

    #[test]
    fn peel_cyclically_shifts_the_signal() {
        let s = gen::signal(16, 12).unwrap();
        let g = forward(&s);
        let (u, next) = peel_step(&g);
        let vals = s.values();
        assert!((u - vals[15]).norm() < 1e-10);
        let mut shifted = vec![vals[15]];
        shifted.extend_from_slice(&vals[..15]);
        let want = forward(&DiscreteSignal::new(shifted).unwrap());
        assert!(next.max_abs_diff(&want) < 1e-10);
    }

    #[test]
    fn inverse_roundtrip() {
        let tol = Tolerances::default();
        let s = gen::signal(64, 23).unwrap();
        let rec = inverse(&forward(&s), &tol).unwrap();
        for (p, q) in rec.values().iter().zip(s.values()) {
            assert!((p - q).norm() < 1e-8);
        }
    }

    #[test]
    fn inverse_of_identity_grid_is_zero_signal() {
        let g = GridMat::new(vec![QMat::identity(); 7]).unwrap();
        let rec = inverse(&g, &Tolerances::default()).unwrap();
        for v in rec.values() {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_rejects_tampered_grid() {
        let tol = Tolerances::default();
        let s = gen::signal(8, 41).unwrap();
        let g = forward(&s);
        let mut samples = g.samples().to_vec();
        samples[3] = QMat::identity();
        let bad = GridMat::new(samples).unwrap();
        assert!(matches!(inverse(&bad, &tol), Err(Error::NotInImage(_))));
    }

    #[test]
    fn membership_cases() {
        let tol = Tolerances::default();
        let s = gen::signal(32, 8).unwrap();
        let g = forward(&s);
        assert!(membership(&g, &tol));
        assert!(membership(&GridMat::new(vec![QMat::identity(); 9]).unwrap(), &tol));
        let mut samples = g.samples().to_vec();
        samples[5] = QMat::new(samples[5].a, samples[5].b * 1.1);
        assert!(!membership(&GridMat::new(samples).unwrap(), &tol));
    }

    #[test]
    fn stratum_count_fixed_values() {
        // frozen regression constant, computed independently by exact
        // big-integer arithmetic: C(25,9) * C(74,9)
        let want = "225798070267414150".parse::<BigUint>().unwrap();
        assert_eq!(stratum_count(100, 10, 25), want);
        for l in 0..12 {
            assert_eq!(stratum_count(12, 1, l), BigUint::from(1u32));
        }
        assert_eq!(stratum_count(4, 2, 0), BigUint::from(0u32));
    }

    #[test]
    fn dyson_strata_matches_forward() {
        let s = gen::signal(12, 71).unwrap();
        let n = s.len();
        let (alpha, beta) = dyson_strata(&s).unwrap();
        let g = forward(&s);
        let a_hat = dft(&alpha);
        let b_hat = dft(&beta);
        for z in 0..n {
            assert!((c(1.0, 0.0) + a_hat[z] - g.samples()[z].a).norm() < 1e-10);
            assert!((b_hat[z] - g.samples()[z].b).norm() < 1e-10);
        }
        // last bracket of the off-diagonal carries u_{N-1}/N alone
        assert!((beta[n - 1] - s.values()[n - 1] / n as f64).norm() < 1e-14);
    }

    #[test]
    fn dyson_strata_zero_signal_and_cap() {
        let s = DiscreteSignal::new(vec![c(0.0, 0.0); 4]).unwrap();
        let (alpha, beta) = dyson_strata(&s).unwrap();
        assert!(alpha.iter().chain(&beta).all(|v| v.norm() == 0.0));
        let big = DiscreteSignal::new(vec![c(0.1, 0.0); 15]).unwrap();
        assert!(matches!(dyson_strata(&big), Err(Error::TooLarge { .. })));
    }
}
