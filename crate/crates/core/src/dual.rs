//! The multiplicative unitary, the dual Kac algebra, and the Fourier maps
//! between an algebra and its dual.
//!
//! Everything is realized on the GNS space `H` of the Haar trace, with the
//! orthonormal basis `ê_k = e_k / √t_{i(k)}` obtained from the matrix units.
//! `W` is defined on `H ⊗ H` by `W*(Λ(a) ⊗ Λ(b)) = (Λ⊗Λ)(Δ(b)(a ⊗ 1))`, the
//! Fourier transform of `x` is the slice `(xφ ⊗ ι)(W)`, and the dual algebra
//! is the span of those slices, block-diagonalized numerically through its
//! commutant. The dual Haar trace is normalized by Plancherel.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraError, BasisLayout, ComulEntry, FiniteKacAlgebra, Provenance};
use crate::block::BlockOperator;
use crate::tol::ToleranceConfig;
use crate::{CMat, CVec};

/// Which algebra of a [`DualPair`] an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraSide {
    Primal,
    Dual,
}

/// An orthogonal split of `C^N` into subspaces carrying one copy of each
/// block of a matrix *-algebra: `isometries[j]` has orthonormal columns and
/// `x ↦ Q_j* x Q_j` is the j-th block of the algebra element `x`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub dims: Vec<usize>,
    pub isometries: Vec<CMat>,
}

fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Orthonormal basis of the solution space of `[X, op] = 0` for every listed
/// operator (and optionally extra constraints), via an SVD nullspace.
fn commutant_basis(ops: &[&CMat], rank_tol: f64) -> Vec<CMat> {
    let n = ops[0].nrows();
    let id = CMat::identity(n, n);
    let mut rows = CMat::zeros(ops.len() * n * n, n * n);
    for (i, op) in ops.iter().enumerate() {
        // vec(AX - XA) = (I ⊗ A - Aᵀ ⊗ I) vec(X), column-major vec
        let block = id.kronecker(*op) - op.transpose().kronecker(&id);
        rows.view_mut((i * n * n, 0), (n * n, n * n)).copy_from(&block);
    }
    crate::linalg::nullspace(&rows, rank_tol.max(1e-12))
        .into_iter()
        .map(|v| CMat::from_column_slice(n, n, v.as_slice()))
        .collect()
}

fn random_self_adjoint(basis: &[CMat], rng: &mut impl Rng) -> CMat {
    let n = basis[0].nrows();
    let mut acc = CMat::zeros(n, n);
    for b in basis {
        let c = Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0);
        acc += b * c;
    }
    hermitize(&acc)
}

/// Group eigenvalues into clusters separated by a relative gap.
fn cluster_eigenvalues(vals: &[f64], gap_tol: f64) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
    let spread = (vals[idx[vals.len() - 1]] - vals[idx[0]]).max(1.0);
    let mut ranges = Vec::new();
    let mut start = 0;
    for i in 1..idx.len() {
        if vals[idx[i]] - vals[idx[i - 1]] > gap_tol * spread {
            ranges.push((start, i));
            start = i;
        }
    }
    ranges.push((start, idx.len()));
    ranges
}

/// Simultaneously block-diagonalize the *-algebra spanned by `ops`,
/// returning one isometry per inequivalent block. The splitting element is a
/// random self-adjoint member of the commutant restricted to each central
/// subspace; degenerate draws are retried.
pub fn block_diagonalize(
    ops: &[CMat],
    tol: &ToleranceConfig,
) -> Result<BlockDecomposition, AlgebraError> {
    let n = ops[0].nrows();
    let op_refs: Vec<&CMat> = ops.iter().collect();
    let commutant = commutant_basis(&op_refs, tol.rank_tol);
    if commutant.is_empty() {
        return Err(AlgebraError::BlockDecompositionFailure(
            "empty commutant".into(),
        ));
    }
    let mut center_constraints: Vec<&CMat> = op_refs.clone();
    center_constraints.extend(commutant.iter());
    let center = commutant_basis(&center_constraints, tol.rank_tol);

    let span_dim = {
        let mut m = CMat::zeros(n * n, ops.len());
        for (i, op) in ops.iter().enumerate() {
            m.set_column(i, &CVec::from_column_slice(op.as_slice()));
        }
        crate::linalg::rank(&m, 1e-10)
    };

    let gap_tol = 1e-7;
    for attempt in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD1A6_0000 + attempt);
        let z = random_self_adjoint(&center, &mut rng);
        let t_split = random_self_adjoint(&commutant, &mut rng);

        let (zvals, zvecs) = crate::linalg::hermitian_eigen(&z);
        let clusters = cluster_eigenvalues(&zvals, gap_tol);
        if clusters.len() != center.len() {
            continue;
        }

        let mut blocks: Vec<CMat> = Vec::new();
        let mut ok = true;
        for &(lo, hi) in &clusters {
            let dim_c = hi - lo;
            let uc = zvecs.columns(lo, dim_c).into_owned();
            // split the central block by a commutant element
            let tc = hermitize(&(uc.adjoint() * &t_split * &uc));
            let (tvals, tvecs) = crate::linalg::hermitian_eigen(&tc);
            let tclusters = cluster_eigenvalues(&tvals, gap_tol);
            let m = tclusters[0].1 - tclusters[0].0;
            if dim_c % m != 0 || tclusters.iter().any(|&(a, b)| b - a != m) {
                ok = false;
                break;
            }
            let v = tvecs.columns(0, m).into_owned();
            blocks.push(&uc * &v);
        }
        if !ok {
            continue;
        }

        // verify invariance and multiplicativity of every compression
        let check_tol = 1e-8;
        'verify: {
            for q in &blocks {
                let p = q * q.adjoint();
                for op in ops {
                    let leak = (op * q) - (&p * (op * q));
                    if leak.norm() > check_tol * op.norm().max(1.0) {
                        ok = false;
                        break 'verify;
                    }
                }
            }
            let compressed: Vec<Vec<CMat>> = blocks
                .iter()
                .map(|q| ops.iter().map(|op| q.adjoint() * op * q).collect())
                .collect();
            for (q, comp) in blocks.iter().zip(&compressed) {
                for (i, a) in ops.iter().enumerate() {
                    for (j, b) in ops.iter().enumerate() {
                        let prod = q.adjoint() * (a * b) * q;
                        let sep = &comp[i] * &comp[j];
                        if (&prod - &sep).norm() > check_tol * prod.norm().max(1.0) {
                            ok = false;
                            break 'verify;
                        }
                    }
                }
            }
        }
        if !ok {
            continue;
        }

        // deduplicate equivalent blocks by their characters on the ops
        let mut kept: Vec<(usize, CMat, Vec<Complex64>)> = Vec::new();
        for q in &blocks {
            let chi: Vec<Complex64> = ops.iter().map(|op| (q.adjoint() * op * q).trace()).collect();
            let dup = kept.iter().any(|(d, _, c)| {
                *d == q.ncols()
                    && c.iter()
                        .zip(&chi)
                        .map(|(a, b)| (a - b).norm_sqr())
                        .sum::<f64>()
                        .sqrt()
                        < 1e-6
            });
            if !dup {
                kept.push((q.ncols(), q.clone(), chi));
            }
        }
        kept.sort_by_key(|(d, _, _)| *d);
        let dims: Vec<usize> = kept.iter().map(|(d, _, _)| *d).collect();
        let total: usize = dims.iter().map(|d| d * d).sum();
        if total != span_dim {
            continue;
        }
        return Ok(BlockDecomposition {
            dims,
            isometries: kept.into_iter().map(|(_, q, _)| q).collect(),
        });
    }
    Err(AlgebraError::BlockDecompositionFailure(
        "could not split the algebra after 8 random draws".into(),
    ))
}

/// Residuals of the structural identities a [`DualPair`] must satisfy.
#[derive(Debug, Clone)]
pub struct PairValidation {
    /// `‖W*W - 1‖` (normalized).
    pub w_unitarity: f64,
    /// `max_k ‖Δ(e_k) - W*(1 ⊗ e_k)W‖` in the GNS representation.
    pub comul_conjugation: f64,
    /// `max_{k,l} |⟨F e_k, F e_l⟩ - ⟨e_k, e_l⟩|`.
    pub plancherel: f64,
    /// `max_k ‖F(x)* - F(R(x)*)‖` — the adjoint/antipode compatibility of the
    /// transform, reported rather than assumed.
    pub fourier_adjoint: f64,
}

impl PairValidation {
    pub fn max_residual(&self) -> f64 {
        self.w_unitarity
            .max(self.comul_conjugation)
            .max(self.plancherel)
            .max(self.fourier_adjoint)
    }
}

/// A Kac algebra together with its dual, the multiplicative unitary on
/// `H ⊗ H`, and the mutually inverse Fourier maps between them.
///
/// Both algebras act on the same GNS space `H`: the primal by left
/// multiplication, the dual by its defining operators. `reversed()` swaps the
/// roles, with `Ŵ = Σ W* Σ` and the inverse transform as the Fourier map, so
/// every primal-side computation is available on the dual side.
#[derive(Debug, Clone)]
pub struct DualPair {
    primal: FiniteKacAlgebra,
    dual: FiniteKacAlgebra,
    w: CMat,
    fourier_mat: CMat,
    fourier_inv: CMat,
    /// GNS realization of the primal matrix-unit basis (left multiplication).
    primal_ops: Vec<CMat>,
    /// GNS realization of the dual matrix-unit basis.
    dual_ops: Vec<CMat>,
}

impl DualPair {
    pub fn primal(&self) -> &FiniteKacAlgebra {
        &self.primal
    }

    pub fn dual(&self) -> &FiniteKacAlgebra {
        &self.dual
    }

    pub fn algebra(&self, side: AlgebraSide) -> &FiniteKacAlgebra {
        match side {
            AlgebraSide::Primal => &self.primal,
            AlgebraSide::Dual => &self.dual,
        }
    }

    pub fn multiplicative_unitary(&self) -> &CMat {
        &self.w
    }

    pub fn fourier_matrix(&self) -> &CMat {
        &self.fourier_mat
    }

    /// `F(x) = λ(xφ)`, expressed in the dual algebra.
    pub fn fourier(&self, x: &BlockOperator) -> BlockOperator {
        let v = self.primal.coeffs(x);
        self.dual.from_coeffs(&(&self.fourier_mat * v))
    }

    /// The linear inverse of `F`.
    pub fn inverse_fourier(&self, xi: &BlockOperator) -> BlockOperator {
        let v = self.dual.coeffs(xi);
        self.primal.from_coeffs(&(&self.fourier_inv * v))
    }

    /// GNS-space matrix of a primal element (left multiplication on `H`).
    pub fn primal_gns_operator(&self, x: &BlockOperator) -> CMat {
        let v = self.primal.coeffs(x);
        let mut acc = CMat::zeros(self.primal_ops[0].nrows(), self.primal_ops[0].ncols());
        for (k, op) in self.primal_ops.iter().enumerate() {
            if v[k] != Complex64::new(0.0, 0.0) {
                acc += op * v[k];
            }
        }
        acc
    }

    /// GNS-space matrix of a dual element.
    pub fn dual_gns_operator(&self, xi: &BlockOperator) -> CMat {
        let v = self.dual.coeffs(xi);
        let mut acc = CMat::zeros(self.dual_ops[0].nrows(), self.dual_ops[0].ncols());
        for (a, op) in self.dual_ops.iter().enumerate() {
            if v[a] != Complex64::new(0.0, 0.0) {
                acc += op * v[a];
            }
        }
        acc
    }

    /// The same pair with the two sides exchanged: the dual becomes primal,
    /// `W` becomes `Σ W* Σ`, and the Fourier map becomes the inverse one.
    pub fn reversed(&self) -> DualPair {
        let n2 = self.w.nrows();
        let n = (n2 as f64).sqrt().round() as usize;
        let mut what = CMat::zeros(n2, n2);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        what[(a * n + b, c * n + d)] = self.w[(d * n + c, b * n + a)].conj();
                    }
                }
            }
        }
        DualPair {
            primal: self.dual.clone(),
            dual: self.primal.clone(),
            w: what,
            fourier_mat: self.fourier_inv.clone(),
            fourier_inv: self.fourier_mat.clone(),
            primal_ops: self.dual_ops.clone(),
            dual_ops: self.primal_ops.clone(),
        }
    }

    /// Residuals of the defining identities.
    pub fn validation(&self) -> PairValidation {
        let n = self.primal.dim();
        let h = self.primal_ops[0].nrows();
        let id2 = CMat::identity(h * h, h * h);
        let w_unitarity = (&self.w.adjoint() * &self.w - &id2).norm() / (h as f64);

        let idh = CMat::identity(h, h);
        let mut comul_conjugation: f64 = 0.0;
        for k in 0..n {
            let coeff = self.primal.comul_coeffs(&self.primal.basis_op(k));
            let mut lhs = CMat::zeros(h * h, h * h);
            for a in 0..n {
                for b in 0..n {
                    let c = coeff[(a, b)];
                    if c != Complex64::new(0.0, 0.0) {
                        lhs += self.primal_ops[a].kronecker(&self.primal_ops[b]) * c;
                    }
                }
            }
            let rhs = self.w.adjoint() * idh.kronecker(&self.primal_ops[k]) * &self.w;
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            comul_conjugation = comul_conjugation.max((&lhs - &rhs).norm() / scale);
        }

        let mut plancherel: f64 = 0.0;
        let fops: Vec<BlockOperator> = (0..n)
            .map(|k| self.fourier(&self.primal.basis_op(k)))
            .collect();
        let basis: Vec<BlockOperator> = (0..n).map(|k| self.primal.basis_op(k)).collect();
        for k in 0..n {
            for l in 0..n {
                let lhs = self.dual.inner(&fops[k], &fops[l]);
                let rhs = self.primal.inner(&basis[k], &basis[l]);
                plancherel = plancherel.max((lhs - rhs).norm());
            }
        }

        let mut fourier_adjoint: f64 = 0.0;
        for (k, b) in basis.iter().enumerate() {
            let lhs = fops[k].adjoint();
            let rhs = self.fourier(&self.primal.apply_antipode(b).adjoint());
            let scale = lhs.frobenius_norm().max(rhs.frobenius_norm()).max(1.0);
            fourier_adjoint = fourier_adjoint.max(lhs.distance(&rhs) / scale);
        }

        PairValidation {
            w_unitarity,
            comul_conjugation,
            plancherel,
            fourier_adjoint,
        }
    }
}

/// Construct the dual pair of a verified Kac algebra.
pub fn build_dual(k: &FiniteKacAlgebra, tol: &ToleranceConfig) -> Result<DualPair, AlgebraError> {
    k.require_axioms(tol)?;

    let n = k.dim();
    let layout = k.layout().clone();
    let zero = Complex64::new(0.0, 0.0);
    let scale: Vec<f64> = (0..n)
        .map(|m| {
            let (b, _, _) = layout.locate(m);
            k.trace_weights()[b].sqrt()
        })
        .collect();

    // W* on the orthonormalized basis: W*(ê_k ⊗ ê_l) = ΛΛ(Δ(e_l)(e_k ⊗ 1)) / (s_k s_l)
    let mut wstar = CMat::zeros(n * n, n * n);
    for l in 0..n {
        for &(a, b, c) in k.comul_terms(l) {
            for kk in 0..n {
                if let Some(m) = layout.unit_product(a, kk) {
                    let amp = c * Complex64::new(scale[m] * scale[b] / (scale[kk] * scale[l]), 0.0);
                    wstar[(m * n + b, kk * n + l)] += amp;
                }
            }
        }
    }
    let w = wstar.adjoint();

    // Λ(1) in orthonormal coordinates.
    let mut lambda_one = CVec::zeros(n);
    for m in 0..n {
        let (_, r, c) = layout.locate(m);
        if r == c {
            lambda_one[m] = Complex64::new(scale[m], 0.0);
        }
    }

    // Fourier transforms of the basis as GNS-space operators:
    // F(e_k)[j,i] = s_k · (W (Λ(1) ⊗ ê_i))[(adj(k), j)]
    let mut w1 = CMat::zeros(n * n, n);
    for i in 0..n {
        let mut col = CVec::zeros(n * n);
        for kk in 0..n {
            if lambda_one[kk] != zero {
                for row in 0..n * n {
                    col[row] += w[(row, kk * n + i)] * lambda_one[kk];
                }
            }
        }
        w1.set_column(i, &col);
    }
    let fops: Vec<CMat> = (0..n)
        .map(|kk| {
            let adj = layout.adjoint_index(kk);
            let mut f = CMat::zeros(n, n);
            for j in 0..n {
                for i in 0..n {
                    f[(j, i)] = w1[(adj * n + j, i)] * Complex64::new(scale[kk], 0.0);
                }
            }
            f
        })
        .collect();

    // The transform must be injective onto an N-dimensional operator span.
    {
        let mut m = CMat::zeros(n * n, n);
        for (i, f) in fops.iter().enumerate() {
            m.set_column(i, &CVec::from_column_slice(f.as_slice()));
        }
        let rank = crate::linalg::rank(&m, 1e-10);
        if rank != n {
            return Err(AlgebraError::BlockDecompositionFailure(format!(
                "fourier image has rank {rank}, expected {n}"
            )));
        }
    }

    let dec = block_diagonalize(&fops, tol)?;
    let dual_dims = dec.dims.clone();
    let dual_layout = BasisLayout::new(&dual_dims);
    if dual_layout.total != n {
        return Err(AlgebraError::BlockDecompositionFailure(format!(
            "dual block dims {dual_dims:?} do not fill dimension {n}"
        )));
    }

    // Fourier matrix: column k = dual block coordinates of F(e_k).
    let mut fourier_mat = CMat::zeros(n, n);
    for (kk, f) in fops.iter().enumerate() {
        let mut col = CVec::zeros(n);
        for (j, q) in dec.isometries.iter().enumerate() {
            let blk = q.adjoint() * f * q;
            let d = dual_dims[j];
            for r in 0..d {
                for c in 0..d {
                    col[dual_layout.index(j, r, c)] = blk[(r, c)];
                }
            }
        }
        fourier_mat.set_column(kk, &col);
    }
    let fourier_inv = fourier_mat.clone().full_piv_lu().try_inverse().ok_or_else(|| {
        AlgebraError::BlockDecompositionFailure("fourier matrix is singular".into())
    })?;

    // Dual trace weights from Plancherel: ⟨F e_k, F e_l⟩_dual = ⟨e_k, e_l⟩.
    let nblocks = dual_dims.len();
    let mut rows = nalgebra::DMatrix::<f64>::zeros(2 * n * n, nblocks);
    let mut rhs = nalgebra::DVector::<f64>::zeros(2 * n * n);
    let fblocks: Vec<Vec<CMat>> = fops
        .iter()
        .map(|f| dec.isometries.iter().map(|q| q.adjoint() * f * q).collect())
        .collect();
    for kk in 0..n {
        for l in 0..n {
            let row = kk * n + l;
            for j in 0..nblocks {
                let g = (fblocks[kk][j].adjoint() * &fblocks[l][j]).trace();
                rows[(2 * row, j)] = g.re;
                rows[(2 * row + 1, j)] = g.im;
            }
            let target = k.inner(&k.basis_op(kk), &k.basis_op(l));
            rhs[2 * row] = target.re;
            rhs[2 * row + 1] = target.im;
        }
    }
    let weights_v = rows
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| AlgebraError::BlockDecompositionFailure(format!("plancherel solve: {e}")))?;
    let dual_weights: Vec<f64> = weights_v.iter().copied().collect();
    if dual_weights.iter().any(|&t| t <= 0.0) {
        return Err(AlgebraError::BlockDecompositionFailure(
            "plancherel weights not positive".into(),
        ));
    }

    // Dual matrix units as operators on H.
    let dual_ops: Vec<CMat> = (0..n)
        .map(|a| {
            let mut acc = CMat::zeros(n, n);
            for kk in 0..n {
                let c = fourier_inv[(kk, a)];
                if c != zero {
                    acc += &fops[kk] * c;
                }
            }
            acc
        })
        .collect();

    // Ŵ = Σ W* Σ, used to read off the dual comultiplication.
    let mut what = CMat::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    what[(a * n + b, c * n + d)] = w[(d * n + c, b * n + a)].conj();
                }
            }
        }
    }

    // Dual comultiplication coefficients: Δ̂(Ê_a) = Ŵ*(1 ⊗ Ê_a)Ŵ, compressed
    // by Q_{j1} ⊗ Q_{j2} to read coefficients over dual matrix units.
    let idh = CMat::identity(n, n);
    let prune = 1e-13;
    let mut dual_comul: Vec<ComulEntry> = Vec::new();
    for a in 0..n {
        let conj = what.adjoint() * idh.kronecker(&dual_ops[a]) * &what;
        let scale_c = conj.norm().max(1.0);
        for (j1, q1) in dec.isometries.iter().enumerate() {
            let d1 = dual_dims[j1];
            for (j2, q2) in dec.isometries.iter().enumerate() {
                let d2 = dual_dims[j2];
                let qq = q1.kronecker(q2);
                let c12 = qq.adjoint() * &conj * qq;
                for r1 in 0..d1 {
                    for c1 in 0..d1 {
                        for r2 in 0..d2 {
                            for c2 in 0..d2 {
                                let v = c12[(r1 * d2 + r2, c1 * d2 + c2)];
                                if v.norm() > prune * scale_c {
                                    dual_comul.push(ComulEntry {
                                        src: a,
                                        left: dual_layout.index(j1, r1, c1),
                                        right: dual_layout.index(j2, r2, c2),
                                        coeff: v,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Dual antipode R̂ = F ∘ R ∘ F⁻¹ and dual counit ε̂(ξ) = φ(F⁻¹ ξ).
    let dual_antipode = &fourier_mat * k.antipode_matrix() * &fourier_inv;
    let dual_counit: Vec<Complex64> = (0..n)
        .map(|a| {
            (0..n)
                .map(|kk| fourier_inv[(kk, a)] * Complex64::new(k.phi_basis(kk), 0.0))
                .sum()
        })
        .collect();

    let dual_provenance = match &k.provenance {
        Provenance::FunctionAlgebra { table } => Provenance::GroupAlgebra {
            table: table.clone(),
            lambda: (0..n)
                .map(|g| CVec::from(fourier_mat.column(g).into_owned()))
                .collect(),
        },
        _ => Provenance::Generic,
    };

    let dual = FiniteKacAlgebra::new(
        dual_dims,
        dual_weights,
        dual_comul,
        dual_counit,
        dual_antipode,
        dual_provenance,
        format!("dual({})", k.label),
    )?;

    // Primal GNS realization: left multiplication, blockwise x ⊗ 1.
    let primal_ops: Vec<CMat> = (0..n)
        .map(|kk| {
            let op = k.basis_op(kk);
            let mut m = CMat::zeros(n, n);
            for (i, &d) in k.dims().iter().enumerate() {
                let xb = op.block(i);
                for r1 in 0..d {
                    for c1 in 0..d {
                        if xb[(r1, c1)] == zero {
                            continue;
                        }
                        for col in 0..d {
                            m[(layout.index(i, r1, col), layout.index(i, c1, col))] +=
                                xb[(r1, c1)];
                        }
                    }
                }
            }
            m
        })
        .collect();

    Ok(DualPair {
        primal: k.clone(),
        dual,
        w,
        fourier_mat,
        fourier_inv,
        primal_ops,
        dual_ops,
    })
}
