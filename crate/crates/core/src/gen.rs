//! Deterministic random instance generation. Every generator is a pure
//! function of its size and seed, so the command line, the tests, and the
//! acceptance suite draw from one code path.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delta::{DeltaDistribution, Pole};
use crate::dual::GapVector;
use crate::error::{Error, Result};
use crate::euler::DiscreteSignal;

/// Comb with `n` poles, pairwise gaps at least `0.5/n`, boundary margins at
/// least `0.25/n`, weight moduli uniform in `[0.05, 1.2]` (inverse-eligible,
/// below pi/2) and uniform phases.
pub fn delta_distribution(n: usize, seed: u64) -> Result<DeltaDistribution> {
    if n == 0 {
        return Err(Error::BadConstraints("need at least one pole".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gap = 0.5 / n as f64;
    let slack = 1.0 - gap * n as f64; // 0.5 left to distribute
    let weights: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut poles = Vec::with_capacity(n);
    let mut x = gap / 2.0;
    for (i, w) in weights.iter().take(n).enumerate() {
        x += slack * w / total;
        if i > 0 {
            x += gap;
        }
        let modulus = rng.gen_range(0.05..1.2);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        poles.push(Pole {
            x,
            u: C64::from_polar(modulus, phase),
        });
    }
    DeltaDistribution::new(poles)
}

/// Signal of length `n` with entry moduli uniform in `[0, 2]` and uniform
/// phases.
pub fn signal(n: usize, seed: u64) -> Result<DiscreteSignal> {
    if n == 0 {
        return Err(Error::BadConstraints("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = (0..n)
        .map(|_| {
            let modulus = rng.gen_range(0.0..2.0);
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            C64::from_polar(modulus, phase)
        })
        .collect();
    DiscreteSignal::new(u)
}

/// Gap vector of length `m`: positive draws normalized to sum exactly one.
pub fn gap_vector(m: usize, seed: u64) -> Result<GapVector> {
    if m == 0 {
        return Err(Error::BadConstraints("need at least one gap".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..m).map(|_| rng.gen_range(0.3..1.5)).collect();
    let total: f64 = raw.iter().sum();
    let mut xi: Vec<f64> = raw.iter().map(|g| g / total).collect();
    let head: f64 = xi[..m - 1].iter().sum();
    xi[m - 1] = 1.0 - head;
    GapVector::new(xi)
}
