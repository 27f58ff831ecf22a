//! Numerical tolerances threaded through the transforms.

/// Default frequency-merge tolerance: pole separations in practice are well
/// above 1e-3, while rounding of frequency sums stays near 1e-16.
pub const EPS_F: f64 = 1e-9;
/// Default coefficient-prune tolerance.
pub const EPS_C: f64 = 1e-12;
/// Default minimum magnitude of the zero-frequency diagonal coefficient
/// accepted by a peel step.
pub const EPS_PEEL: f64 = 1e-8;
/// Default identity-residual tolerance for membership tests.
pub const EPS_MEMBER: f64 = 1e-7;

/// Tolerance bundle accepted by the inversion and membership routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Frequencies closer than this are merged into one term.
    pub eps_f: f64,
    /// Coefficients at or below this magnitude are pruned.
    pub eps_c: f64,
    /// Peel steps reject diagonal read-offs smaller than this.
    pub eps_peel: f64,
    /// Membership and image-residual threshold.
    pub eps_member: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_f: EPS_F,
            eps_c: EPS_C,
            eps_peel: EPS_PEEL,
            eps_member: EPS_MEMBER,
        }
    }
}
