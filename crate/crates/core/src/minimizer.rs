//! Minimizer characterization for the uncertainty principles: extremality,
//! the four-way equivalence (entropy equality, support-product equality,
//! extremal bi-partial isometry, bi-shift), the autocorrelation identity of
//! extremal bi-partial isometries, peak-projection extraction, the bi-shift
//! decomposition, Hardy's theorem, and the uniqueness dimension.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::biproj::{is_projection, make_bi_shift, BiShiftCertificate, BiprojError};
use crate::block::BlockOperator;
use crate::dual::DualPair;
use crate::fourier::{convolve_in, uncertainty_report, FourierError};
use crate::tol::ToleranceConfig;
use crate::CMat;

#[derive(Debug, Error)]
pub enum MinimizerError {
    #[error("operation undefined on the zero operator")]
    ZeroOperator,
    #[error("not an extremal bi-partial isometry: {0}")]
    NotExtremalBpi(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no convergence after {steps} squaring steps")]
    NoConvergence { steps: usize },
    #[error("reconstruction failed: {0}")]
    ReconstructionFailure(String),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Biproj(#[from] BiprojError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HardyError {
    #[error("domination hypothesis fails on the {side} side")]
    HypothesisFailed { side: &'static str },
    #[error("hypotheses hold but no scalar fits (residual {residual:.3e}); tolerance alarm")]
    TheoremViolation { residual: f64 },
    #[error("operation undefined on the zero operator")]
    ZeroOperator,
}

/// `‖F(x)‖_∞ = ‖x‖₁` within tolerance.
pub fn is_extremal(
    pair: &DualPair,
    x: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<bool, MinimizerError> {
    if x.is_zero(tol.rank_tol) {
        return Err(MinimizerError::ZeroOperator);
    }
    let l1 = pair.primal().lp_norm(x, 1.0).expect("p=1");
    let finf = pair
        .dual()
        .lp_norm(&pair.fourier(x), f64::INFINITY)
        .expect("p=inf");
    Ok((finf - l1).abs() <= tol.eq_tol * l1)
}

/// `x` and `F(x)` are both scalar multiples of partial isometries.
pub fn is_bi_partial_isometry(
    pair: &DualPair,
    x: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<bool, MinimizerError> {
    if x.is_zero(tol.rank_tol) {
        return Err(MinimizerError::ZeroOperator);
    }
    let primal = x
        .partial_isometry_scale(tol)
        .map_err(|_| MinimizerError::ZeroOperator)?;
    if primal.is_none() {
        return Ok(false);
    }
    let fx = pair.fourier(x);
    let dual = fx
        .partial_isometry_scale(tol)
        .map_err(|_| MinimizerError::ZeroOperator)?;
    Ok(dual.is_some())
}

/// The verdict quadruple of the minimizer equivalence. `consistent` is true
/// when all four statements agree; a false value is a consistency alarm.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MinimizerVerdict {
    pub entropy_equality: bool,
    pub ds_equality: bool,
    pub extremal_bpi: bool,
    pub bishift: bool,
    pub consistent: bool,
}

impl MinimizerVerdict {
    pub fn all_true(&self) -> bool {
        self.entropy_equality && self.ds_equality && self.extremal_bpi && self.bishift
    }

    pub fn all_false(&self) -> bool {
        !(self.entropy_equality || self.ds_equality || self.extremal_bpi || self.bishift)
    }
}

/// Evaluate the four equivalent minimizer statements independently.
pub fn check_main_theorem(
    pair: &DualPair,
    x: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<MinimizerVerdict, MinimizerError> {
    if x.is_zero(tol.rank_tol) {
        return Err(MinimizerError::ZeroOperator);
    }
    let report = uncertainty_report(pair, x, tol)?;
    let entropy_equality = report.hb_minimal;
    let ds_equality = report.ds_minimal;
    let extremal_bpi = is_bi_partial_isometry(pair, x, tol)? && is_extremal(pair, x, tol)?;
    let bishift = bishift_decompose(pair, x, tol).is_ok();
    let consistent = entropy_equality == ds_equality
        && ds_equality == extremal_bpi
        && extremal_bpi == bishift;
    Ok(MinimizerVerdict {
        entropy_equality,
        ds_equality,
        extremal_bpi,
        bishift,
        consistent,
    })
}

/// Normalize an extremal bi-partial isometry to an honest partial isometry,
/// or explain why it is not one.
fn normalize_to_partial_isometry(
    pair: &DualPair,
    w: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<BlockOperator, MinimizerError> {
    if w.is_zero(tol.rank_tol) {
        return Err(MinimizerError::ZeroOperator);
    }
    let mu = w
        .partial_isometry_scale(tol)
        .map_err(|_| MinimizerError::ZeroOperator)?
        .ok_or_else(|| MinimizerError::NotExtremalBpi("not a multiple of a partial isometry".into()))?;
    let w0 = w.scale(Complex64::new(1.0 / mu, 0.0));
    let fx = pair.fourier(&w0);
    if fx
        .partial_isometry_scale(tol)
        .map_err(|_| MinimizerError::ZeroOperator)?
        .is_none()
    {
        return Err(MinimizerError::NotExtremalBpi(
            "transform is not a multiple of a partial isometry".into(),
        ));
    }
    if !is_extremal(pair, &w0, tol)? {
        return Err(MinimizerError::NotExtremalBpi(
            "Hausdorff-Young is not saturated".into(),
        ));
    }
    Ok(w0)
}

/// Residuals of the autocorrelation identity of an extremal bi-partial
/// isometry `w` (normalized internally to a partial isometry):
/// `(w*R(w)*)(w**R(w)) = ‖w‖₂² (ww*)*(R(w)*R(w))`, the partial-isometry
/// property of `w*R(w)*/‖w‖₂²`, and `‖w‖₁ = ‖w*R(w)*/‖w‖₂²‖₁`.
#[derive(Debug, Clone, Serialize)]
pub struct AutocorrelationCheck {
    pub identity_residual: f64,
    pub isometry_residual: f64,
    pub l1_residual: f64,
}

impl AutocorrelationCheck {
    pub fn max_residual(&self) -> f64 {
        self.identity_residual
            .max(self.isometry_residual)
            .max(self.l1_residual)
    }
}

pub fn verify_autocorrelation(
    pair: &DualPair,
    w: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<AutocorrelationCheck, MinimizerError> {
    let k = pair.primal();
    let w0 = normalize_to_partial_isometry(pair, w, tol)?;
    let s = k.norm2(&w0).powi(2);
    let rw = k.apply_antipode(&w0);

    let a = convolve_in(k, &w0, &rw.adjoint())?;
    let a2 = convolve_in(k, &w0.adjoint(), &rw)?;
    let lhs = &a * &a2;
    let wws = &w0 * &w0.adjoint();
    let rr = &rw.adjoint() * &rw;
    let rhs = convolve_in(k, &wws, &rr)?.scale(Complex64::new(s, 0.0));
    let identity_residual =
        lhs.distance(&rhs) / lhs.frobenius_norm().max(rhs.frobenius_norm()).max(1.0);

    let u = a.scale(Complex64::new(1.0 / s, 0.0));
    let isometry_residual = u
        .singular_values()
        .iter()
        .map(|&sv| sv.min((sv - 1.0).abs()))
        .fold(0.0, f64::max);

    let w_l1 = k.lp_norm(&w0, 1.0).expect("p=1");
    let u_l1 = k.lp_norm(&u, 1.0).expect("p=1");
    let l1_residual = (w_l1 - u_l1).abs() / w_l1.max(1.0);

    Ok(AutocorrelationCheck {
        identity_residual,
        isometry_residual,
        l1_residual,
    })
}

/// Extract the top spectral projection of the autocorrelation of `w` by
/// iterated squaring of `(w**R(w))(w*R(w*))`. Every limit is post-verified
/// to be a projection and an extremal bi-partial isometry.
pub fn extract_extremal_projection(
    pair: &DualPair,
    w: &BlockOperator,
    max_iter: usize,
    conv_tol: f64,
    tol: &ToleranceConfig,
) -> Result<BlockOperator, MinimizerError> {
    let k = pair.primal();
    if w.is_zero(tol.rank_tol) {
        return Err(MinimizerError::ZeroOperator);
    }
    let w1 = w.scale(Complex64::new(1.0 / k.norm2(w), 0.0));
    let rw = k.apply_antipode(&w1);
    let a = convolve_in(k, &w1, &k.apply_antipode(&w1.adjoint()))?;
    let a_inf = a.operator_norm();
    if (a_inf - 1.0).abs() > tol.eq_tol.max(1e-9) * 10.0 {
        return Err(MinimizerError::PreconditionFailed(format!(
            "‖w * R(w*)‖_∞ = {a_inf}, expected ‖w‖₂² = 1"
        )));
    }
    let a2 = convolve_in(k, &w1.adjoint(), &rw)?;
    let mut t = &a2 * &a;
    let mut steps = 0usize;
    let mut power = 1usize;
    loop {
        let next = &t * &t;
        let diff = (&next - &t).operator_norm();
        t = next;
        steps += 1;
        power = power.saturating_mul(2);
        if diff < conv_tol {
            break;
        }
        if power >= max_iter {
            return Err(MinimizerError::NoConvergence { steps });
        }
    }
    let q = t;
    if q.is_zero(tol.rank_tol) {
        return Err(MinimizerError::ReconstructionFailure(
            "autocorrelation projection vanished".into(),
        ));
    }
    if !is_projection(&q, tol) {
        return Err(MinimizerError::ReconstructionFailure(
            "iteration limit is not a projection".into(),
        ));
    }
    if !is_bi_partial_isometry(pair, &q, tol)? || !is_extremal(pair, &q, tol)? {
        return Err(MinimizerError::ReconstructionFailure(
            "limit projection is not an extremal bi-partial isometry".into(),
        ));
    }
    Ok(q)
}

/// Decompose an extremal bi-partial isometry as a bi-shift:
/// `B = (w*R(w)*)(w**R(w))/‖w‖₂⁴`, `B_g = ww*`, `B̃_h = F(w)F(w)*/‖w‖₂⁴`,
/// with `w` recovered as `F̂(B̃_h)*(B_g w)`.
pub fn bishift_decompose(
    pair: &DualPair,
    w: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<BiShiftCertificate, MinimizerError> {
    let k = pair.primal();
    let w0 = normalize_to_partial_isometry(pair, w, tol)?;
    let s = k.norm2(&w0).powi(2);
    let rw = k.apply_antipode(&w0);

    let a = convolve_in(k, &w0, &rw.adjoint())?;
    let a2 = convolve_in(k, &w0.adjoint(), &rw)?;
    let b = (&a * &a2).scale(Complex64::new(1.0 / (s * s), 0.0));

    let primal_shift = &w0 * &w0.adjoint();
    let fw = pair.fourier(&w0);
    let dual_shift = (&fw * &fw.adjoint()).scale(Complex64::new(1.0 / (s * s), 0.0));

    let cert = make_bi_shift(pair, &primal_shift, &dual_shift, &w0, Some(&b), tol)
        .map_err(|e| match e {
            BiprojError::ShiftMismatch(m) => MinimizerError::ReconstructionFailure(m),
            BiprojError::NotBiprojection => MinimizerError::ReconstructionFailure(
                "derived element is not a biprojection".into(),
            ),
            BiprojError::ZeroResult => {
                MinimizerError::ReconstructionFailure("reconstruction vanished".into())
            }
            other => MinimizerError::Biproj(other),
        })?;

    // Theorem-level reconstruction: the rebuilt element equals w itself.
    let resid = cert.element.distance(&w0) / k.norm2(&w0).max(1.0);
    if resid > tol.eq_tol * 10.0 {
        return Err(MinimizerError::ReconstructionFailure(format!(
            "w = F̂(B̃_h)*(B_g w) fails with residual {resid:.3e}"
        )));
    }
    Ok(cert)
}

/// Hardy's theorem: if `|x| ≤ C|w|` and `|F(x)| ≤ C'|F(w)|` for a bi-shift
/// `w`, then `x = μw`; returns `μ`. Hypothesis violations are signaled, a
/// fitting failure under valid hypotheses is a tolerance alarm.
pub fn hardy_scalar(
    pair: &DualPair,
    w: &BlockOperator,
    x: &BlockOperator,
    c_primal: f64,
    c_dual: f64,
    tol: &ToleranceConfig,
) -> Result<Complex64, HardyError> {
    let k = pair.primal();
    let kd = pair.dual();
    if w.is_zero(tol.rank_tol) || x.is_zero(tol.rank_tol) {
        return Err(HardyError::ZeroOperator);
    }

    let dominated = |k: &crate::algebra::FiniteKacAlgebra,
                     small: &BlockOperator,
                     big: &BlockOperator,
                     c: f64|
     -> bool {
        let (_, m_small) = small.polar(tol);
        let (_, m_big) = big.polar(tol);
        let diff = &m_big.scale(Complex64::new(c, 0.0)) - &m_small;
        let min_eig = diff
            .hermitian_eigen()
            .iter()
            .flat_map(|(v, _)| v.iter().copied())
            .fold(f64::INFINITY, f64::min);
        let scale = k.lp_norm(big, f64::INFINITY).expect("p=inf") * c;
        min_eig >= -tol.eq_tol * scale.max(1.0)
    };

    if !dominated(k, x, w, c_primal) {
        return Err(HardyError::HypothesisFailed { side: "primal" });
    }
    let fx = pair.fourier(x);
    let fw = pair.fourier(w);
    if !dominated(kd, &fx, &fw, c_dual) {
        return Err(HardyError::HypothesisFailed { side: "fourier" });
    }

    let mu = k.inner(w, x) / Complex64::new(k.norm2(w).powi(2), 0.0);
    let residual = k.norm2(&(x - &w.scale(mu))) / k.norm2(x);
    if residual <= tol.eq_tol {
        Ok(mu)
    } else {
        Err(HardyError::TheoremViolation { residual })
    }
}

/// Dimension of `{ x : range(x) ≤ B_g and range(F(x)) ≤ B̃_h }`, computed as
/// the nullspace dimension of the stacked compression constraints. The
/// uniqueness corollary asserts this is at most 1 for certified shift pairs.
pub fn uniqueness_dimension(
    pair: &DualPair,
    primal_shift: &BlockOperator,
    dual_shift: &BlockOperator,
    tol: &ToleranceConfig,
) -> usize {
    let k = pair.primal();
    let kd = pair.dual();
    let n = k.dim();
    let mut rows = CMat::zeros(2 * n, n);
    for col in 0..n {
        let e = k.basis_op(col);
        // range(x) ≤ B_g  ⟺  B_g x = x
        let primal_constraint = &(primal_shift * &e) - &e;
        let fe = pair.fourier(&e);
        let dual_constraint = &(dual_shift * &fe) - &fe;
        let pv = k.coeffs(&primal_constraint);
        let dv = kd.coeffs(&dual_constraint);
        for r in 0..n {
            rows[(r, col)] = pv[r];
            rows[(n + r, col)] = dv[r];
        }
    }
    let sv = crate::linalg::singular_values(&rows);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return n;
    }
    sv.iter().filter(|&&s| s <= tol.rank_tol.sqrt() * smax).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{function_algebra, standard_element, ElementKind, GroupTable};
    use crate::dual::build_dual;
    use crate::fourier::random_element;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_n_pair(n: usize) -> DualPair {
        build_dual(
            &function_algebra(&GroupTable::cyclic(n)),
            &ToleranceConfig::default(),
        )
        .unwrap()
    }

    fn scalars(v: &[f64]) -> BlockOperator {
        BlockOperator::from_scalars(&v.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn extremality_examples() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(4);
        for g in 0..4 {
            let x = standard_element(pair.primal(), ElementKind::PointMass(g)).unwrap();
            assert!(is_extremal(&pair, &x, &tol).unwrap());
        }
        let h = scalars(&[1.0, 0.0, 1.0, 0.0]);
        assert!(is_extremal(&pair, &h, &tol).unwrap());

        let pair3 = z_n_pair(3);
        let bad = scalars(&[1.0, -1.0, 0.0]);
        assert!(!is_extremal(&pair3, &bad, &tol).unwrap());
        assert!(matches!(
            is_extremal(&pair3, &pair3.primal().zero(), &tol),
            Err(MinimizerError::ZeroOperator)
        ));
    }

    #[test]
    fn extremality_passes_to_adjoint_and_antipode() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(4);
        let k = pair.primal();
        let w = BlockOperator::from_scalars(&[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, -1.0)]);
        assert!(is_extremal(&pair, &w, &tol).unwrap());
        assert!(is_extremal(&pair, &w.adjoint(), &tol).unwrap());
        assert!(is_extremal(&pair, &k.apply_antipode(&w), &tol).unwrap());
    }

    #[test]
    fn main_theorem_on_worked_example() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(4);
        let w = scalars(&[0.0, 1.0, 0.0, -1.0]);
        let v = check_main_theorem(&pair, &w, &tol).unwrap();
        assert!(v.all_true() && v.consistent, "{v:?}");

        let bad = scalars(&[1.0, 1.0, 0.0, 0.0]);
        let v = check_main_theorem(&pair, &bad, &tol).unwrap();
        assert!(v.all_false() && v.consistent, "{v:?}");

        let uniform = standard_element(pair.primal(), ElementKind::Uniform).unwrap();
        let v = check_main_theorem(&pair, &uniform, &tol).unwrap();
        assert!(v.all_true() && v.consistent, "{v:?}");
    }

    #[test]
    fn main_theorem_false_on_z3_indicator() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(3);
        let x = scalars(&[1.0, 1.0, 0.0]);
        let v = check_main_theorem(&pair, &x, &tol).unwrap();
        assert!(v.all_false() && v.consistent, "{v:?}");
    }

    #[test]
    fn autocorrelation_identity_examples() {
        let tol = ToleranceConfig::default();
        // w = δ_1 on Z2
        let pair2 = z_n_pair(2);
        let w = scalars(&[0.0, 1.0]);
        let chk = verify_autocorrelation(&pair2, &w, &tol).unwrap();
        assert!(chk.max_residual() < 1e-10, "{chk:?}");

        // w = 1_H on Z4
        let pair4 = z_n_pair(4);
        let w = scalars(&[1.0, 0.0, 1.0, 0.0]);
        let chk = verify_autocorrelation(&pair4, &w, &tol).unwrap();
        assert!(chk.max_residual() < 1e-10, "{chk:?}");

        // the modulated coset indicator
        let w = scalars(&[0.0, 1.0, 0.0, -1.0]);
        let chk = verify_autocorrelation(&pair4, &w, &tol).unwrap();
        assert!(chk.max_residual() < 1e-10, "{chk:?}");

        // rejected on a non-minimizer
        let bad = scalars(&[1.0, 2.0, 0.0, 0.0]);
        assert!(matches!(
            verify_autocorrelation(&pair4, &bad, &tol),
            Err(MinimizerError::NotExtremalBpi(_))
        ));
    }

    #[test]
    fn peak_projection_worked_inputs() {
        let tol = ToleranceConfig::default();
        let pair4 = z_n_pair(4);
        let w = standard_element(pair4.primal(), ElementKind::PointMass(1)).unwrap();
        let q = extract_extremal_projection(&pair4, &w, 1 << 20, 1e-12, &tol).unwrap();
        let d0 = scalars(&[1.0, 0.0, 0.0, 0.0]);
        assert!(q.distance(&d0) < 1e-9);

        let pair3 = z_n_pair(3);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        let w = scalars(&[inv_sqrt2, inv_sqrt2, 0.0]);
        let q = extract_extremal_projection(&pair3, &w, 1 << 20, 1e-12, &tol).unwrap();
        let d0 = scalars(&[1.0, 0.0, 0.0]);
        assert!(q.distance(&d0) < 1e-9);
        // ‖F(Q)‖₁ = ‖Q‖_∞
        let f_l1 = pair3.dual().lp_norm(&pair3.fourier(&q), 1.0).unwrap();
        let q_inf = pair3.primal().lp_norm(&q, f64::INFINITY).unwrap();
        assert!((f_l1 - q_inf).abs() < 1e-8);
        let v = check_main_theorem(&pair3, &q, &tol).unwrap();
        assert!(v.all_true());
    }

    #[test]
    fn bishift_decomposition_worked_examples() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(4);

        // w = δ_g: B = δ_0, B_g = δ_g, B̃_h = dual identity
        let w = scalars(&[0.0, 0.0, 1.0, 0.0]);
        let cert = bishift_decompose(&pair, &w, &tol).unwrap();
        assert!(cert.biprojection.distance(&scalars(&[1.0, 0.0, 0.0, 0.0])) < 1e-9);
        assert!(cert.primal_shift.distance(&scalars(&[0.0, 0.0, 1.0, 0.0])) < 1e-9);
        assert!(cert.dual_shift.distance(&pair.dual().unit()) < 1e-9);

        // w = 1_H: everything is the biprojection itself
        let w = scalars(&[1.0, 0.0, 1.0, 0.0]);
        let cert = bishift_decompose(&pair, &w, &tol).unwrap();
        assert!(cert.biprojection.distance(&w) < 1e-9);
        assert!(cert.primal_shift.distance(&w) < 1e-9);
        let bt = pair.fourier(&w).range_projection(&tol);
        assert!(cert.dual_shift.distance(&bt) < 1e-9);

        // the worked modulated example
        let w = scalars(&[0.0, 1.0, 0.0, -1.0]);
        let cert = bishift_decompose(&pair, &w, &tol).unwrap();
        assert!(cert.biprojection.distance(&scalars(&[1.0, 0.0, 1.0, 0.0])) < 1e-9);
        assert!(cert.primal_shift.distance(&scalars(&[0.0, 1.0, 0.0, 1.0])) < 1e-9);
        let half = c(0.5, 0.0);
        let expected_dual = pair.fourier(&BlockOperator::from_scalars(&[
            half,
            c(0.0, 0.0),
            -half,
            c(0.0, 0.0),
        ]));
        assert!(cert.dual_shift.distance(&expected_dual) < 1e-9);
    }

    #[test]
    fn hardy_examples() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(4);
        let w = scalars(&[0.0, 1.0, 0.0, -1.0]);

        let x = w.scale(c(2.0, 0.0));
        let mu = hardy_scalar(&pair, &w, &x, 2.5, 2.5, &tol).unwrap();
        assert!((mu - c(2.0, 0.0)).norm() < 1e-10);

        let xi = BlockOperator::from_scalars(&[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, -1.0)]);
        let mu = hardy_scalar(&pair, &w, &xi, 1.0, 1.0, &tol).unwrap();
        assert!((mu - c(0.0, 1.0)).norm() < 1e-10);

        // δ_1 is primal-dominated but its transform has full support
        let d1 = scalars(&[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(
            hardy_scalar(&pair, &w, &d1, 1.0, 1.0, &tol),
            Err(HardyError::HypothesisFailed { side: "fourier" })
        );
    }

    #[test]
    fn uniqueness_dimension_examples() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(4);
        let bg = scalars(&[0.0, 1.0, 0.0, 1.0]);
        let half = c(0.5, 0.0);
        let bh_minus = pair.fourier(&BlockOperator::from_scalars(&[
            half,
            c(0.0, 0.0),
            -half,
            c(0.0, 0.0),
        ]));
        assert_eq!(uniqueness_dimension(&pair, &bg, &bh_minus, &tol), 1);

        let bh_plus = pair.fourier(&BlockOperator::from_scalars(&[
            half,
            c(0.0, 0.0),
            half,
            c(0.0, 0.0),
        ]));
        assert_eq!(uniqueness_dimension(&pair, &bg, &bh_plus, &tol), 1);

        // incompatible pair: φ(B_g)·φ̂(B̃_h) < 1 forces dimension 0
        let d1 = scalars(&[0.0, 1.0, 0.0, 0.0]);
        let full_avg = pair
            .fourier(&scalars(&[0.25, 0.25, 0.25, 0.25]))
            .range_projection(&tol);
        assert_eq!(uniqueness_dimension(&pair, &d1, &full_avg, &tol), 0);
    }

    #[test]
    fn random_elements_are_uniformly_non_minimal() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(6);
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..200 {
            let x = random_element(pair.primal(), &mut rng);
            let v = check_main_theorem(&pair, &x, &tol).unwrap();
            assert!(v.all_false() && v.consistent, "{v:?}");
        }
    }

    #[test]
    fn positive_minimizers_are_biprojections() {
        // Corollary: x, F(x) ≥ 0 with S(x)S(F(x)) = 1 forces a biprojection.
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(6);
        let b = scalars(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let rep = uncertainty_report(&pair, &b, &tol).unwrap();
        assert!((rep.ds_product - 1.0).abs() < 1e-9);
        assert!(crate::biproj::is_biprojection(&pair, &b, &tol));
    }
}
