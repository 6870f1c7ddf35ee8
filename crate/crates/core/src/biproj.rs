//! Biprojections (projections whose Fourier transform is a multiple of a
//! projection), their left/right shifts, group-like verification, and the
//! construction of certified bi-shifts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteKacAlgebra, Provenance};
use crate::block::BlockOperator;
use crate::builders::characters_deg1;
use crate::dual::DualPair;
use crate::fourier::{convolve_in, support_measure, FourierError};
use crate::tol::ToleranceConfig;
use crate::CVec;

pub const DEFAULT_DIMENSION_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum BiprojError {
    #[error("operand is not a projection")]
    NotProjection,
    #[error("operand is not a biprojection")]
    NotBiprojection,
    #[error("bi-shift product vanished (witness annihilated)")]
    ZeroResult,
    #[error("shift verification failed: {0}")]
    ShiftMismatch(String),
    #[error("algebra dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftSide {
    Left,
    Right,
}

/// `‖p² - p‖` and `‖p* - p‖` both below tolerance.
pub fn is_projection(p: &BlockOperator, tol: &ToleranceConfig) -> bool {
    let scale = p.frobenius_norm().max(1.0);
    (&(p * p) - p).frobenius_norm() <= tol.eq_tol * scale
        && (&p.adjoint() - p).frobenius_norm() <= tol.eq_tol * scale
}

/// If `ξ = c·q` for a projection `q` and scalar `c ≠ 0`, return `c`.
/// Decided by normality plus the idempotency test `ξ² = cξ` with
/// `c = φ(ξ²)/φ(ξ)`.
pub fn multiple_of_projection_scale(
    k: &FiniteKacAlgebra,
    xi: &BlockOperator,
    tol: &ToleranceConfig,
) -> Option<Complex64> {
    let norm = xi.frobenius_norm();
    if norm <= tol.rank_tol {
        return None;
    }
    let normality = (&(xi * &xi.adjoint()) - &(&xi.adjoint() * xi)).frobenius_norm();
    if normality > tol.eq_tol * norm * norm.max(1.0) {
        return None;
    }
    let phi_xi = k.phi(xi);
    if phi_xi.norm() <= tol.eq_tol * norm {
        return None;
    }
    let xi2 = xi * xi;
    let c = k.phi(&xi2) / phi_xi;
    let scale = xi2
        .frobenius_norm()
        .max(c.norm() * norm)
        .max(1.0);
    if xi2.distance(&xi.scale(c)) <= tol.eq_tol * scale {
        Some(c)
    } else {
        None
    }
}

/// A projection whose Fourier transform is a scalar multiple of a projection.
pub fn is_biprojection(pair: &DualPair, p: &BlockOperator, tol: &ToleranceConfig) -> bool {
    if p.is_zero(tol.rank_tol) || !is_projection(p, tol) {
        return false;
    }
    multiple_of_projection_scale(pair.dual(), &pair.fourier(p), tol).is_some()
}

/// Group-like projection test: `Δ(B)(B ⊗ 1) = Δ(B)(1 ⊗ B) = B ⊗ B`.
pub fn is_group_like(
    k: &FiniteKacAlgebra,
    p: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<bool, BiprojError> {
    if !is_projection(p, tol) {
        return Err(BiprojError::NotProjection);
    }
    let ts = k.tensor_square();
    let dp = ts.op_from_coeffs(&k.comul_coeffs(p));
    let unit = k.unit();
    let p_one = ts.kron(p, &unit);
    let one_p = ts.kron(&unit, p);
    let p_p = ts.kron(p, p);
    let scale = p_p.frobenius_norm().max(1.0);
    let ok = (&dp * &p_one).distance(&p_p) <= tol.eq_tol * scale
        && (&dp * &one_p).distance(&p_p) <= tol.eq_tol * scale;
    Ok(ok)
}

/// Shift test: a projection `x` with `φ(x) = φ(B)` satisfying
/// `x * B = φ(B) x` (left) or `B * x = φ(B) x` (right).
pub fn is_shift(
    pair: &DualPair,
    x: &BlockOperator,
    b: &BlockOperator,
    side: ShiftSide,
    tol: &ToleranceConfig,
) -> Result<bool, BiprojError> {
    if !is_biprojection(pair, b, tol) {
        return Err(BiprojError::NotBiprojection);
    }
    if !is_projection(x, tol) {
        return Err(BiprojError::NotProjection);
    }
    let k = pair.primal();
    let phi_b = k.phi(b);
    let phi_x = k.phi(x);
    if (phi_x - phi_b).norm() > tol.eq_tol * phi_b.norm().max(1.0) {
        return Ok(false);
    }
    let conv = match side {
        ShiftSide::Left => convolve_in(k, x, b)?,
        ShiftSide::Right => convolve_in(k, b, x)?,
    };
    let target = x.scale(phi_b);
    let scale = target.frobenius_norm().max(1.0);
    Ok(conv.distance(&target) <= tol.eq_tol * scale)
}

/// A certified bi-shift `x = F̂(B̃_h) * (B_g y)` together with the
/// biprojection, its dual range projection, and the two right shifts.
#[derive(Debug, Clone)]
pub struct BiShiftCertificate {
    pub biprojection: BlockOperator,
    pub dual_projection: BlockOperator,
    pub primal_shift: BlockOperator,
    pub dual_shift: BlockOperator,
    pub witness: BlockOperator,
    pub element: BlockOperator,
    pub provenance: String,
}

/// Recover the biprojection from one of its right shifts:
/// `B = range_projection(B_g * R(B_g))`.
pub fn biprojection_from_shift(
    pair: &DualPair,
    primal_shift: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<BlockOperator, BiprojError> {
    let k = pair.primal();
    let conv = convolve_in(k, primal_shift, &k.apply_antipode(primal_shift))?;
    Ok(conv.range_projection(tol))
}

/// Build and verify a bi-shift from a right shift of `B`, a right shift of
/// `B̃ = range_projection(F(B))`, and a witness `y`. When `biprojection` is
/// omitted it is recovered from the shift and cross-checked.
pub fn make_bi_shift(
    pair: &DualPair,
    primal_shift: &BlockOperator,
    dual_shift: &BlockOperator,
    witness: &BlockOperator,
    biprojection: Option<&BlockOperator>,
    tol: &ToleranceConfig,
) -> Result<BiShiftCertificate, BiprojError> {
    let k = pair.primal();
    let kd = pair.dual();

    let recovered = biprojection_from_shift(pair, primal_shift, tol)?;
    let b = match biprojection {
        Some(given) => {
            if given.distance(&recovered) > tol.eq_tol * given.frobenius_norm().max(1.0) {
                return Err(BiprojError::ShiftMismatch(
                    "given biprojection does not match the one recovered from the shift".into(),
                ));
            }
            given.clone()
        }
        None => recovered,
    };
    if !is_biprojection(pair, &b, tol) {
        return Err(BiprojError::NotBiprojection);
    }
    let b_tilde = pair.fourier(&b).range_projection(tol);

    if !is_shift(pair, primal_shift, &b, ShiftSide::Right, tol)? {
        return Err(BiprojError::ShiftMismatch(
            "primal shift is not a right shift of the biprojection".into(),
        ));
    }
    let reversed = pair.reversed();
    if !is_shift(&reversed, dual_shift, &b_tilde, ShiftSide::Right, tol)? {
        return Err(BiprojError::ShiftMismatch(
            "dual shift is not a right shift of the dual projection".into(),
        ));
    }

    // x = F̂(B̃_h) * (B_g y)
    let front = pair.inverse_fourier(dual_shift);
    let masked = primal_shift * witness;
    let x = convolve_in(k, &front, &masked)?;
    let x_norm = k.norm2(&x);
    if x_norm <= tol.rank_tol {
        return Err(BiprojError::ZeroResult);
    }

    // Certificate invariants.
    let rx = x.range_projection(tol);
    if rx.distance(primal_shift) > tol.eq_tol * primal_shift.frobenius_norm().max(1.0) {
        return Err(BiprojError::ShiftMismatch(
            "range projection of the bi-shift is not the primal shift".into(),
        ));
    }
    let fx = pair.fourier(&x);
    let rfx = fx.range_projection(tol);
    if rfx.distance(dual_shift) > tol.eq_tol * dual_shift.frobenius_norm().max(1.0) {
        return Err(BiprojError::ShiftMismatch(
            "range projection of F(bi-shift) is not the dual shift".into(),
        ));
    }
    let phi_b = k.phi(&b).re;
    let phi_bg = k.phi(primal_shift).re;
    let phihat_bt = kd.phi(&b_tilde).re;
    let phihat_bh = kd.phi(dual_shift).re;
    if !tol.scalars_close(phi_b, phi_bg)
        || !tol.scalars_close(phihat_bt, phihat_bh)
        || !tol.scalars_close(phi_b * phihat_bt, 1.0)
    {
        return Err(BiprojError::ShiftMismatch(
            "trace invariants of the shifts fail".into(),
        ));
    }
    let ds = support_measure(k, &x, tol) * support_measure(kd, &fx, tol);
    if !tol.scalars_close(ds, 1.0) {
        return Err(BiprojError::ShiftMismatch(format!(
            "support product of the bi-shift is {ds}, expected 1"
        )));
    }

    Ok(BiShiftCertificate {
        biprojection: b,
        dual_projection: b_tilde,
        primal_shift: primal_shift.clone(),
        dual_shift: dual_shift.clone(),
        witness: witness.clone(),
        element: x,
        provenance: format!("bi-shift on {}", k.label),
    })
}

/// Build a bi-shift for a shift pair by searching for a witness: basis
/// elements first, then random draws. Only annihilated witnesses are
/// retried; structural failures propagate.
pub fn find_bi_shift(
    pair: &DualPair,
    primal_shift: &BlockOperator,
    dual_shift: &BlockOperator,
    biprojection: Option<&BlockOperator>,
    tol: &ToleranceConfig,
) -> Result<BiShiftCertificate, BiprojError> {
    let k = pair.primal();
    for idx in 0..k.dim() {
        let y = k.basis_op(idx);
        match make_bi_shift(pair, primal_shift, dual_shift, &y, biprojection, tol) {
            Ok(cert) => return Ok(cert),
            Err(BiprojError::ZeroResult) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xB15);
    for _ in 0..8 {
        let y = crate::fourier::random_element(k, &mut rng);
        match make_bi_shift(pair, primal_shift, dual_shift, &y, biprojection, tol) {
            Ok(cert) => return Ok(cert),
            Err(BiprojError::ZeroResult) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(BiprojError::ZeroResult)
}

fn dedupe_and_sort(
    k: &FiniteKacAlgebra,
    mut found: Vec<BlockOperator>,
    tol: &ToleranceConfig,
) -> Vec<BlockOperator> {
    let mut out: Vec<BlockOperator> = Vec::new();
    found.sort_by(|a, b| {
        let ta = k.phi(a).re;
        let tb = k.phi(b).re;
        ta.partial_cmp(&tb).unwrap().then_with(|| {
            let ca = k.coeffs(a);
            let cb = k.coeffs(b);
            for i in 0..ca.len() {
                let ka = ((ca[i].re * 1e9).round() as i64, (ca[i].im * 1e9).round() as i64);
                let kb = ((cb[i].re * 1e9).round() as i64, (cb[i].im * 1e9).round() as i64);
                match ka.cmp(&kb) {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    for cand in found {
        if !out
            .iter()
            .any(|p| p.distance(&cand) <= tol.eq_tol * 10.0 * p.frobenius_norm().max(1.0))
        {
            out.push(cand);
        }
    }
    out
}

/// Enumerate certified biprojections of the primal algebra.
///
/// For group-built algebras the candidates are subgroup indicators (function
/// side) or normalized subgroup averages (group-algebra side), which is
/// complete. For generic algebras the search is sound but not complete: it
/// tries central spectral projections plus any user-supplied candidates.
pub fn enumerate_biprojections(
    pair: &DualPair,
    user_candidates: &[BlockOperator],
    tol: &ToleranceConfig,
    cap: usize,
) -> Result<Vec<BlockOperator>, BiprojError> {
    let k = pair.primal();
    if k.dim() > cap {
        return Err(BiprojError::DimensionCap {
            dim: k.dim(),
            cap,
        });
    }
    let mut candidates: Vec<BlockOperator> = user_candidates.to_vec();
    match &k.provenance {
        Provenance::FunctionAlgebra { table } => {
            for h in table.subgroups() {
                let mut v = vec![Complex64::new(0.0, 0.0); table.order];
                for &g in &h {
                    v[g] = Complex64::new(1.0, 0.0);
                }
                candidates.push(BlockOperator::from_scalars(&v));
            }
        }
        Provenance::GroupAlgebra { table, lambda } => {
            for h in table.subgroups() {
                let mut coeff = CVec::zeros(k.dim());
                for &g in &h {
                    coeff += &lambda[g];
                }
                coeff /= Complex64::new(h.len() as f64, 0.0);
                candidates.push(k.from_coeffs(&coeff));
            }
        }
        Provenance::Generic => {
            // spectral projections of central elements: sums of block units
            let nblocks = k.dims().len();
            if nblocks <= 16 {
                for mask in 1u32..(1 << nblocks) {
                    let mut blocks = Vec::with_capacity(nblocks);
                    for (i, &d) in k.dims().iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            blocks.push(crate::CMat::identity(d, d));
                        } else {
                            blocks.push(crate::CMat::zeros(d, d));
                        }
                    }
                    candidates.push(BlockOperator::new(blocks).expect("square"));
                }
            }
        }
    }
    let found = candidates
        .into_iter()
        .filter(|p| is_biprojection(pair, p, tol))
        .collect();
    Ok(dedupe_and_sort(k, found, tol))
}

/// Enumerate certified right shifts of a biprojection in the primal algebra.
///
/// Commutative algebras are handled completely by searching indicator
/// projections inside the `φ(B)`-eigenspace of convolution by `B`;
/// group-algebra primals enumerate subgroup characters; other algebras fall
/// back to spectral projections of random elements of that eigenspace.
pub fn enumerate_right_shifts(
    pair: &DualPair,
    b: &BlockOperator,
    tol: &ToleranceConfig,
) -> Result<Vec<BlockOperator>, BiprojError> {
    let k = pair.primal();
    if !is_biprojection(pair, b, tol) {
        return Err(BiprojError::NotBiprojection);
    }
    let n = k.dim();
    let phi_b = k.phi(b).re;
    let mut candidates: Vec<BlockOperator> = Vec::new();

    let commutative = k.dims().iter().all(|&d| d == 1);
    if commutative {
        // eigenspace of T: x ↦ B * x at eigenvalue φ(B)
        let mut t = crate::CMat::zeros(n, n);
        for l in 0..n {
            let conv = convolve_in(k, b, &k.basis_op(l))?;
            t.set_column(l, &k.coeffs(&conv));
        }
        let shifted = &t - crate::CMat::identity(n, n) * Complex64::new(phi_b, 0.0);
        let mut support: Vec<usize> = Vec::new();
        for vec in crate::linalg::nullspace(&shifted, 1e-8) {
            for g in 0..n {
                if vec[g].norm() > 1e-8 && !support.contains(&g) {
                    support.push(g);
                }
            }
        }
        support.sort_unstable();
        if support.len() <= 20 {
            for mask in 1u64..(1 << support.len()) {
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                let mut weight = 0.0;
                for (pos, &g) in support.iter().enumerate() {
                    if mask & (1 << pos) != 0 {
                        v[g] = Complex64::new(1.0, 0.0);
                        let (blk, _, _) = k.layout().locate(g);
                        weight += k.trace_weights()[blk];
                    }
                }
                if (weight - phi_b).abs() <= 1e-6 * phi_b.max(1.0) {
                    candidates.push(k.from_coeffs(&CVec::from_vec(v)));
                }
            }
        }
    } else if let Provenance::GroupAlgebra { table, lambda } = &k.provenance {
        // identify the subgroup carried by B from its group coordinates
        let mut basis_change = crate::CMat::zeros(n, n);
        for (g, col) in lambda.iter().enumerate() {
            basis_change.set_column(g, col);
        }
        if let Some(inv) = basis_change.full_piv_lu().try_inverse() {
            let beta = inv * k.coeffs(b);
            let bmax = beta.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let subgroup: Vec<usize> = (0..table.order)
                .filter(|&g| beta[g].norm() > 1e-8 * bmax.max(1.0))
                .collect();
            if table.is_subgroup(&subgroup) {
                if let Some(sub) = table.sub_table(&subgroup) {
                    if let Ok(chars) = characters_deg1(&sub, tol) {
                        for chi in chars {
                            let mut coeff = CVec::zeros(n);
                            for (pos, &g) in subgroup.iter().enumerate() {
                                let inv_pos = sub.inverse[pos];
                                coeff += &lambda[g] * (chi[inv_pos] / Complex64::new(subgroup.len() as f64, 0.0));
                            }
                            candidates.push(k.from_coeffs(&coeff));
                        }
                    }
                }
            }
        }
    } else {
        // sound generic fallback: spectral projections of random self-adjoint
        // elements of the φ(B)-eigenspace of convolution by B
        let mut t = crate::CMat::zeros(n, n);
        for l in 0..n {
            let conv = convolve_in(k, b, &k.basis_op(l))?;
            t.set_column(l, &k.coeffs(&conv));
        }
        let shifted = &t - crate::CMat::identity(n, n) * Complex64::new(phi_b, 0.0);
        let eig_basis: Vec<CVec> = crate::linalg::nullspace(&shifted, 1e-8);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5417);
        for _ in 0..16 {
            let mut coeff = CVec::zeros(n);
            for base in &eig_basis {
                coeff += base
                    * Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0);
            }
            let op = k.from_coeffs(&coeff);
            let herm = (&op + &op.adjoint()).scale(Complex64::new(0.5, 0.0));
            // spectral projections of the hermitian part, blockwise
            let eig = herm.hermitian_eigen();
            let dims = k.dims().to_vec();
            let nblocks = dims.len();
            let mut all_vals: Vec<f64> = eig.iter().flat_map(|(v, _)| v.clone()).collect();
            all_vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            all_vals.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
            for &level in &all_vals {
                let mut blocks = Vec::with_capacity(nblocks);
                for (bi, (vals, vecs)) in eig.iter().enumerate() {
                    let d = dims[bi];
                    let mut p = crate::CMat::zeros(d, d);
                    for (j, &v) in vals.iter().enumerate() {
                        if (v - level).abs() < 1e-6 {
                            let col = vecs.column(j);
                            for r in 0..d {
                                for c in 0..d {
                                    p[(r, c)] += col[r] * col[c].conj();
                                }
                            }
                        }
                    }
                    blocks.push(p);
                }
                candidates.push(BlockOperator::new(blocks).expect("square"));
            }
        }
    }

    let mut found = Vec::new();
    for cand in candidates {
        if cand.is_zero(tol.rank_tol) {
            continue;
        }
        if matches!(is_shift(pair, &cand, b, ShiftSide::Right, tol), Ok(true)) {
            found.push(cand);
        }
    }
    Ok(dedupe_and_sort(k, found, tol))
}
