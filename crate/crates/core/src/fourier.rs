//! Fourier transform, convolution, entropy and support functionals, the
//! uncertainty report, and the randomized inequality suite
//! (Hausdorff-Young, Young, Plancherel, Hirschman-Beckner, Donoho-Stark).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::FiniteKacAlgebra;
use crate::block::{BlockOperator, SpectralFn};
use crate::dual::{AlgebraSide, DualPair};
use crate::tol::ToleranceConfig;
use crate::CVec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("element does not belong to the selected algebra of the pair")]
    AlgebraMismatch,
    #[error("operation undefined on the zero operator")]
    ZeroOperator,
}

/// `F(x) = λ(xφ)` in dual coordinates.
pub fn fourier(pair: &DualPair, x: &BlockOperator) -> Result<BlockOperator, FourierError> {
    if !pair.primal().contains(x) {
        return Err(FourierError::AlgebraMismatch);
    }
    Ok(pair.fourier(x))
}

/// The unique `x` with `F(x) = ξ` (the transform is a linear bijection).
pub fn inverse_fourier(pair: &DualPair, xi: &BlockOperator) -> Result<BlockOperator, FourierError> {
    if !pair.dual().contains(xi) {
        return Err(FourierError::AlgebraMismatch);
    }
    Ok(pair.inverse_fourier(xi))
}

/// Convolution `x * y = ((xφ)R ⊗ ι)(Δ(y))` inside one Kac algebra.
pub fn convolve_in(
    k: &FiniteKacAlgebra,
    x: &BlockOperator,
    y: &BlockOperator,
) -> Result<BlockOperator, FourierError> {
    if !k.contains(x) || !k.contains(y) {
        return Err(FourierError::AlgebraMismatch);
    }
    let n = k.dim();
    let layout = k.layout();
    // φ(e_p x) for every basis index p
    let mut phi_ex = CVec::zeros(n);
    for p in 0..n {
        let (b, r, c) = layout.locate(p);
        phi_ex[p] = x.block(b)[(c, r)] * Complex64::new(k.trace_weights()[b], 0.0);
    }
    // ω_a = φ(R(e_a) x) = Σ_p R[p,a] φ(e_p x)
    let omega = k.antipode_matrix().transpose() * phi_ex;
    let ycoeff = k.coeffs(y);
    let mut out = CVec::zeros(n);
    for l in 0..n {
        let yl = ycoeff[l];
        if yl == Complex64::new(0.0, 0.0) {
            continue;
        }
        for &(a, b, c) in k.comul_terms(l) {
            out[b] += yl * c * omega[a];
        }
    }
    Ok(k.from_coeffs(&out))
}

/// Convolution on the chosen side of a dual pair. Both operands must lie in
/// that algebra.
pub fn convolve(
    pair: &DualPair,
    side: AlgebraSide,
    x: &BlockOperator,
    y: &BlockOperator,
) -> Result<BlockOperator, FourierError> {
    convolve_in(pair.algebra(side), x, y)
}

/// Von Neumann entropy `H(|x|²) = -φ(x*x log x*x)`.
pub fn entropy(
    k: &FiniteKacAlgebra,
    x: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<f64, FourierError> {
    if !k.contains(x) {
        return Err(FourierError::AlgebraMismatch);
    }
    if x.is_zero(tol.rank_tol) {
        return Err(FourierError::ZeroOperator);
    }
    let sq = &x.adjoint() * x;
    let xlogx = sq
        .spectral_map(SpectralFn::XLogX, tol)
        .expect("x*x is positive semidefinite");
    Ok(-k.phi(&xlogx).re)
}

/// Support measure `S(x) = φ(range projection of x)`; zero iff `x = 0`.
pub fn support_measure(k: &FiniteKacAlgebra, x: &BlockOperator, tol: &ToleranceConfig) -> f64 {
    if x.is_zero(0.0) {
        return 0.0;
    }
    k.phi(&x.range_projection(tol)).re
}

/// Per-element uncertainty diagnostics. `hb_deficit` is
/// `H(|x|²) + H(|F(x)|²) + 4‖x‖₂² log ‖x‖₂` (zero exactly on minimizers);
/// `ds_product` is `S(x)·S(F(x))`. The minimality flags are judged on the
/// 2-normalized element so the tolerance is scale free.
#[derive(Debug, Clone, Serialize)]
pub struct UncertaintyReport {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    pub dual_l1: f64,
    pub dual_l2: f64,
    pub dual_linf: f64,
    pub entropy: f64,
    pub dual_entropy: f64,
    pub hb_deficit: f64,
    pub support: f64,
    pub dual_support: f64,
    pub ds_product: f64,
    pub hb_minimal: bool,
    pub ds_minimal: bool,
}

pub fn uncertainty_report(
    pair: &DualPair,
    x: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<UncertaintyReport, FourierError> {
    if !pair.primal().contains(x) {
        return Err(FourierError::AlgebraMismatch);
    }
    if x.is_zero(tol.rank_tol) {
        return Err(FourierError::ZeroOperator);
    }
    let k = pair.primal();
    let kd = pair.dual();
    let fx = pair.fourier(x);
    let l1 = k.lp_norm(x, 1.0).expect("p=1");
    let l2 = k.lp_norm(x, 2.0).expect("p=2");
    let linf = k.lp_norm(x, f64::INFINITY).expect("p=inf");
    let dual_l1 = kd.lp_norm(&fx, 1.0).expect("p=1");
    let dual_l2 = kd.lp_norm(&fx, 2.0).expect("p=2");
    let dual_linf = kd.lp_norm(&fx, f64::INFINITY).expect("p=inf");
    let h = entropy(k, x, tol)?;
    let dual_h = entropy(kd, &fx, tol)?;
    let hb_deficit = h + dual_h + 4.0 * l2 * l2 * l2.ln();
    let support = support_measure(k, x, tol);
    let dual_support = support_measure(kd, &fx, tol);
    let ds_product = support * dual_support;
    Ok(UncertaintyReport {
        l1,
        l2,
        linf,
        dual_l1,
        dual_l2,
        dual_linf,
        entropy: h,
        dual_entropy: dual_h,
        hb_deficit,
        support,
        dual_support,
        ds_product,
        hb_minimal: (hb_deficit / (l2 * l2)).abs() <= tol.eq_tol,
        ds_minimal: (ds_product - 1.0).abs() <= tol.eq_tol,
    })
}

/// One checked inequality instance: `violation = max(0, lhs - rhs)` for the
/// inequality `lhs ≤ rhs`.
#[derive(Debug, Clone)]
pub struct InequalityRow {
    pub sample: usize,
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub violation: f64,
}

#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub rows: Vec<InequalityRow>,
    pub max_violation: f64,
}

/// A 2-normalized random element with complex Gaussian coefficients.
pub fn random_element(k: &FiniteKacAlgebra, rng: &mut impl Rng) -> BlockOperator {
    let n = k.dim();
    let v = CVec::from_fn(n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let x = k.from_coeffs(&v);
    let nrm = k.norm2(&x);
    x.scale(Complex64::new(1.0 / nrm, 0.0))
}

/// Randomized check of Hausdorff-Young (p ∈ {1, 4/3, 2}), Young for
/// (p,q,r) ∈ {(1,1,1), (1,2,2), (2,2,∞)}, Plancherel, and both uncertainty
/// inequalities, over `samples` unit-normalized Gaussian elements.
pub fn inequality_suite(
    pair: &DualPair,
    samples: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> InequalityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = pair.primal();
    let kd = pair.dual();
    let mut rows = Vec::with_capacity(samples * 9);
    for sample in 0..samples {
        let x = random_element(k, &mut rng);
        let y = random_element(k, &mut rng);
        let fx = pair.fourier(&x);

        let xp = |p: f64| k.lp_norm(&x, p).expect("valid p");
        let yp = |p: f64| k.lp_norm(&y, p).expect("valid p");
        let fxq = |q: f64| kd.lp_norm(&fx, q).expect("valid q");

        let conv = convolve_in(k, &x, &y).expect("same algebra");
        let report = uncertainty_report(pair, &x, tol).expect("nonzero");

        // (name, lhs, rhs) instances of `lhs ≤ rhs`; Plancherel as |diff| ≤ 0.
        let checks: [(&'static str, f64, f64); 8] = [
            ("hausdorff_young_p1", fxq(f64::INFINITY), xp(1.0)),
            ("hausdorff_young_p4_3", fxq(4.0), xp(4.0 / 3.0)),
            ("plancherel", (fxq(2.0) - xp(2.0)).abs(), 0.0),
            ("young_1_1_1", k.lp_norm(&conv, 1.0).expect("p=1"), xp(1.0) * yp(1.0)),
            ("young_1_2_2", k.lp_norm(&conv, 2.0).expect("p=2"), xp(1.0) * yp(2.0)),
            (
                "young_2_2_inf",
                k.lp_norm(&conv, f64::INFINITY).expect("p=inf"),
                xp(2.0) * yp(2.0),
            ),
            // H(|x|²) + H(|F(x)|²) ≥ -4‖x‖₂² log ‖x‖₂ (samples are normalized)
            (
                "hirschman_beckner",
                -4.0 * report.l2 * report.l2 * report.l2.ln(),
                report.entropy + report.dual_entropy,
            ),
            ("donoho_stark", 1.0, report.ds_product),
        ];
        for (name, lhs, rhs) in checks {
            rows.push(InequalityRow {
                sample,
                name,
                lhs,
                rhs,
                violation: (lhs - rhs).max(0.0),
            });
        }
    }
    let max_violation = rows.iter().map(|r| r.violation).fold(0.0, f64::max);
    InequalityReport {
        rows,
        max_violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{function_algebra, standard_element, ElementKind, GroupTable};
    use crate::dual::build_dual;

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

    #[test]
    fn fourier_of_delta_zero_is_dual_identity() {
        let pair = z_n_pair(2);
        let x = BlockOperator::from_scalars(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let fx = pair.fourier(&x);
        assert!(fx.distance(&pair.dual().unit()) < 1e-10);
    }

    #[test]
    fn fourier_of_subgroup_indicator_matches_dft_oracle() {
        // F(1_{0,2}) on Z4 must be λ_0 + λ_2 as an operator on l²(Z4)
        let pair = z_n_pair(4);
        let x = BlockOperator::from_scalars(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let fop = pair.dual_gns_operator(&pair.fourier(&x));
        let t = GroupTable::cyclic(4);
        let mut expect = crate::CMat::zeros(4, 4);
        for g in [0usize, 2] {
            for h in 0..4 {
                expect[(t.mul[g][h], h)] += c(1.0, 0.0);
            }
        }
        assert!((fop - expect).norm() < 1e-10);
    }

    #[test]
    fn fourier_linear_and_invertible() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_element(pair.primal(), &mut rng);
            let round = pair.inverse_fourier(&pair.fourier(&x));
            assert!(round.distance(&x) < 1e-10);
            assert!(
                (pair.dual().norm2(&pair.fourier(&x)) - pair.primal().norm2(&x)).abs()
                    < tol.eq_tol
            );
        }
        let zero = pair.dual().zero();
        assert!(pair.inverse_fourier(&zero).is_zero(0.0));
    }

    #[test]
    fn convolution_matches_group_convolution_oracle() {
        let pair = z_n_pair(4);
        let k = pair.primal();
        let delta = |g: usize| {
            let mut v = vec![c(0.0, 0.0); 4];
            v[g] = c(1.0, 0.0);
            BlockOperator::from_scalars(&v)
        };
        // δ_1 * δ_1 = δ_2
        let conv = convolve_in(k, &delta(1), &delta(1)).unwrap();
        assert!(conv.distance(&delta(2)) < 1e-10);

        // 1 * x = (Σ x)·1
        let x = BlockOperator::from_scalars(&[c(1.0, 0.0), c(2.0, 0.5), c(-1.0, 0.0), c(0.0, 1.0)]);
        let conv = convolve_in(k, &k.unit(), &x).unwrap();
        let expect = k.unit().scale(k.phi(&x));
        assert!(conv.distance(&expect) < 1e-10);

        // Z2: δ_1 * δ_1 = δ_0
        let pair2 = z_n_pair(2);
        let d1 = BlockOperator::from_scalars(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let d0 = BlockOperator::from_scalars(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let conv = convolve_in(pair2.primal(), &d1, &d1).unwrap();
        assert!(conv.distance(&d0) < 1e-12);
    }

    #[test]
    fn convolution_agrees_with_fourier_side_product_on_both_sides() {
        let tol = ToleranceConfig::default();
        for n in [3usize, 4, 6] {
            let pair = z_n_pair(n);
            let mut rng = ChaCha8Rng::seed_from_u64(7 + n as u64);
            for _ in 0..20 {
                let x = random_element(pair.primal(), &mut rng);
                let y = random_element(pair.primal(), &mut rng);
                let conv = convolve_in(pair.primal(), &x, &y).unwrap();
                let via_fourier = pair.inverse_fourier(&(&pair.fourier(&x) * &pair.fourier(&y)));
                assert!(conv.distance(&via_fourier) < tol.eq_tol);

                // dual side through the reversed pair
                let xi = random_element(pair.dual(), &mut rng);
                let eta = random_element(pair.dual(), &mut rng);
                let dconv = convolve_in(pair.dual(), &xi, &eta).unwrap();
                let rev = pair.reversed();
                let via = rev.inverse_fourier(&(&rev.fourier(&xi) * &rev.fourier(&eta)));
                assert!(dconv.distance(&via) < tol.eq_tol);
            }
        }
    }

    #[test]
    fn entropy_examples() {
        let tol = ToleranceConfig::default();
        let k3 = function_algebra(&GroupTable::cyclic(3));
        let u = standard_element(&k3, ElementKind::Uniform).unwrap();
        assert!((entropy(&k3, &u, &tol).unwrap() - 3.0f64.ln()).abs() < 1e-12);

        let k2 = function_algebra(&GroupTable::cyclic(2));
        let d0 = BlockOperator::from_scalars(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(entropy(&k2, &d0, &tol).unwrap().abs() < 1e-12);
        assert!(matches!(
            entropy(&k2, &k2.zero(), &tol),
            Err(FourierError::ZeroOperator)
        ));

        // one M_2 block with plain trace
        let m2 = crate::algebra::FiniteKacAlgebra::new(
            vec![2],
            vec![1.0],
            vec![],
            vec![c(0.0, 0.0); 4],
            crate::CMat::identity(4, 4),
            crate::algebra::Provenance::Generic,
            "M2".into(),
        )
        .unwrap();
        let x = BlockOperator::new(vec![crate::CMat::from_diagonal(&nalgebra::dvector![
            c(1.0 / 2.0_f64.sqrt(), 0.0),
            c(1.0 / 2.0_f64.sqrt(), 0.0)
        ])])
        .unwrap();
        assert!((entropy(&m2, &x, &tol).unwrap() - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn support_examples() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(4);
        let k = pair.primal();
        let x = BlockOperator::from_scalars(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((support_measure(k, &x, &tol) - 2.0).abs() < 1e-12);
        assert!((support_measure(k, &k.unit(), &tol) - 4.0).abs() < 1e-12);
        assert_eq!(support_measure(k, &k.zero(), &tol), 0.0);

        // dual: S(λ_0 + λ_2) = 1/2 with the Plancherel-normalized dual trace
        let xi = pair.fourier(&x);
        assert!((support_measure(pair.dual(), &xi, &tol) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn uncertainty_report_examples() {
        let tol = ToleranceConfig::default();
        let pair3 = z_n_pair(3);
        let x = BlockOperator::from_scalars(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let rep = uncertainty_report(&pair3, &x, &tol).unwrap();
        assert!((rep.support - 2.0).abs() < 1e-12);
        assert!((rep.dual_support - 1.0).abs() < 1e-10);
        assert!((rep.ds_product - 2.0).abs() < 1e-10);
        assert!(!rep.ds_minimal);

        for n in [2usize, 5, 6] {
            let pair = z_n_pair(n);
            let u = standard_element(pair.primal(), ElementKind::Uniform).unwrap();
            let rep = uncertainty_report(&pair, &u, &tol).unwrap();
            assert!(rep.hb_deficit.abs() < 1e-10, "n={n}: {}", rep.hb_deficit);
            assert!((rep.ds_product - 1.0).abs() < 1e-10);
            assert!(rep.hb_minimal && rep.ds_minimal);
        }

        let pair2 = z_n_pair(2);
        let d0 = BlockOperator::from_scalars(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let rep = uncertainty_report(&pair2, &d0, &tol).unwrap();
        assert!(rep.entropy.abs() < 1e-12 && rep.dual_entropy.abs() < 1e-12);
        assert!((rep.ds_product - 1.0).abs() < 1e-12);
    }

    #[test]
    fn young_equality_case() {
        // x = δ_a, y = 1_H on Z4: ‖x*y‖₁ = ‖x‖₁‖y‖₁
        let pair = z_n_pair(4);
        let k = pair.primal();
        let x = standard_element(k, ElementKind::PointMass(1)).unwrap();
        let y = standard_element(k, ElementKind::Indicator(&[0, 2])).unwrap();
        let conv = convolve_in(k, &x, &y).unwrap();
        let lhs = k.lp_norm(&conv, 1.0).unwrap();
        let rhs = k.lp_norm(&x, 1.0).unwrap() * k.lp_norm(&y, 1.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn suite_is_clean_on_z6() {
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(6);
        let report = inequality_suite(&pair, 200, 42, &tol);
        assert!(
            report.max_violation < 1e-9,
            "max violation {:.3e}",
            report.max_violation
        );
    }

    #[test]
    fn fourier_is_multiplicative_for_convolution() {
        let pair = z_n_pair(6);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let x = random_element(pair.primal(), &mut rng);
            let y = random_element(pair.primal(), &mut rng);
            let lhs = pair.fourier(&convolve_in(pair.primal(), &x, &y).unwrap());
            let rhs = &pair.fourier(&x) * &pair.fourier(&y);
            assert!(lhs.distance(&rhs) < 1e-9);
        }
    }

    #[test]
    fn log_support_bounds_entropy() {
        // log S(x) ≥ H(|x|²) for ‖x‖₂ = 1
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(5);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let x = random_element(pair.primal(), &mut rng);
            let s = support_measure(pair.primal(), &x, &tol);
            let h = entropy(pair.primal(), &x, &tol).unwrap();
            assert!(s.ln() >= h - 1e-9);
        }
    }

    #[test]
    fn range_lemma_inequalities() {
        // (x*y)(x*y)* ≤ ‖R(x*)‖₂²(xx*)*(yy*) and R(x*y) ≤ R(R(x)*R(y))
        let tol = ToleranceConfig::default();
        let pair = z_n_pair(6);
        let k = pair.primal();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let x = random_element(k, &mut rng);
            let y = random_element(k, &mut rng);
            let conv = convolve_in(k, &x, &y).unwrap();
            let lhs = &conv * &conv.adjoint();
            let rx_star = x.adjoint().range_projection(&tol);
            let bound = k.norm2(&rx_star).powi(2);
            let xxs = &x * &x.adjoint();
            let yys = &y * &y.adjoint();
            let rhs = convolve_in(k, &xxs, &yys).unwrap().scale(c(bound, 0.0));
            let diff = &rhs - &lhs;
            let min_eig = diff
                .hermitian_eigen()
                .iter()
                .flat_map(|(v, _)| v.iter().copied())
                .fold(f64::INFINITY, f64::min);
            assert!(min_eig > -1e-9, "psd violated: {min_eig:.3e}");

            let p1 = conv.range_projection(&tol);
            let rx = x.range_projection(&tol);
            let ry = y.range_projection(&tol);
            let p2 = convolve_in(k, &rx, &ry).unwrap().range_projection(&tol);
            // dominance: p2 p1 = p1
            assert!((&p2 * &p1).distance(&p1) < 1e-9);
        }
    }
}
