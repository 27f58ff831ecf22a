//! Operation-count comparison between a full inversion (N size-N DFTs) and a
//! gap-reducing variant whose cost is the hyperfactorial logarithm
//! `sum_{k=1..N} k·ln k = ln(prod k^k)`.

/// Cost report for problem size `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Report {
    /// `N^2 · ln N` — N inverse DFTs of size N.
    pub full: f64,
    /// `sum_{k=1..N} k·ln k` — one DFT per remaining unknown.
    pub modified: f64,
    /// `full - modified`.
    pub difference: f64,
}

pub fn report(n: usize) -> Report {
    let nf = n as f64;
    let full = nf * nf * nf.ln();
    let modified: f64 = (1..=n).map(|k| (k as f64) * (k as f64).ln()).sum();
    Report {
        full,
        modified,
        difference: full - modified,
    }
}
