//! Shared numeric tolerance settings.

use thiserror::Error;

/// Tolerances used by every approximate comparison in the crate.
///
/// `eq_tol` is a relative tolerance: operator comparisons divide the residual
/// by `max(1, scale)` so that equalities between O(1) quantities and exact
/// zeros are judged on the same footing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative tolerance for approximate equality of scalars and operators.
    pub eq_tol: f64,
    /// Relative singular-value threshold for range projections: singular
    /// values at or below `rank_tol * sigma_max` count as zero.
    pub rank_tol: f64,
    /// Spectral floor for `x log x`: eigenvalues below it contribute zero
    /// (the continuous extension 0 log 0 = 0).
    pub entropy_floor: f64,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("invalid tolerances: need 0 < rank_tol < eq_tol < 1 and entropy_floor > 0")]
pub struct InvalidTolerance;

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            rank_tol: 1e-10,
            entropy_floor: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eq_tol: f64, rank_tol: f64, entropy_floor: f64) -> Result<Self, InvalidTolerance> {
        let ok = rank_tol > 0.0
            && eq_tol > rank_tol
            && eq_tol < 1.0
            && entropy_floor > 0.0
            && eq_tol.is_finite()
            && rank_tol.is_finite()
            && entropy_floor.is_finite();
        if ok {
            Ok(Self {
                eq_tol,
                rank_tol,
                entropy_floor,
            })
        } else {
            Err(InvalidTolerance)
        }
    }

    /// Override only the equality tolerance, keeping `rank_tol` one decade
    /// below it.
    pub fn with_eq_tol(eq_tol: f64) -> Result<Self, InvalidTolerance> {
        Self::new(eq_tol, eq_tol / 10.0, ToleranceConfig::default().entropy_floor)
    }

    /// Relative residual of `|a - b|` against the natural scale of the inputs.
    pub fn scalar_residual(&self, a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1.0)
    }

    pub fn scalars_close(&self, a: f64, b: f64) -> bool {
        self.scalar_residual(a, b) <= self.eq_tol
    }
}

/// Residual of a difference norm relative to the larger of the operand norms,
/// floored at 1 so residuals near zero operators stay meaningful.
pub fn rel_residual(diff_norm: f64, scale_a: f64, scale_b: f64) -> f64 {
    diff_norm / scale_a.max(scale_b).max(1.0)
}
