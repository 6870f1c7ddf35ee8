//! The finite unimodular Kac algebra structure: block dimensions, tracial
//! Haar weight, comultiplication structure tensor, counit and antipode, with
//! numeric verification of every axiom.
//!
//! Elements are [`BlockOperator`]s; the structure maps are stored over the
//! matrix-unit basis `e_k = E^i_{rc}` enumerated block by block, row-major.

use num_complex::Complex64;
use thiserror::Error;

use crate::block::BlockOperator;
use crate::builders::GroupTable;
use crate::tol::{rel_residual, ToleranceConfig};
use crate::{CMat, CVec};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("element shape does not match the algebra")]
    ElementMismatch,
    #[error("exponent {0} invalid: need p >= 1 (or infinity)")]
    BadExponent(f64),
    #[error("axiom verification failed (max residual {max_residual:.3e} in {worst})")]
    AxiomFailure { worst: String, max_residual: f64 },
    #[error("block decomposition failed: {0}")]
    BlockDecompositionFailure(String),
    #[error("zero operator")]
    ZeroOperator,
}

/// Flat indexing of the matrix-unit basis of `⊕_i M_{n_i}(C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLayout {
    pub dims: Vec<usize>,
    offsets: Vec<usize>,
    pub total: usize,
}

impl BasisLayout {
    pub fn new(dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &n in dims {
            offsets.push(total);
            total += n * n;
        }
        Self {
            dims: dims.to_vec(),
            offsets,
            total,
        }
    }

    pub fn index(&self, block: usize, row: usize, col: usize) -> usize {
        self.offsets[block] + row * self.dims[block] + col
    }

    pub fn locate(&self, k: usize) -> (usize, usize, usize) {
        let block = match self.offsets.binary_search(&k) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let rel = k - self.offsets[block];
        let n = self.dims[block];
        (block, rel / n, rel % n)
    }

    /// Index of `e_k*`.
    pub fn adjoint_index(&self, k: usize) -> usize {
        let (b, r, c) = self.locate(k);
        self.index(b, c, r)
    }

    /// `e_k e_l`, which is another matrix unit or zero.
    pub fn unit_product(&self, k: usize, l: usize) -> Option<usize> {
        let (bk, rk, ck) = self.locate(k);
        let (bl, rl, cl) = self.locate(l);
        (bk == bl && ck == rl).then(|| self.index(bk, rk, cl))
    }

    pub fn basis_op(&self, k: usize) -> BlockOperator {
        let mut blocks: Vec<CMat> = self.dims.iter().map(|&n| CMat::zeros(n, n)).collect();
        let (b, r, c) = self.locate(k);
        blocks[b][(r, c)] = Complex64::new(1.0, 0.0);
        BlockOperator::new(blocks).expect("square")
    }
}

/// One sparse entry of the comultiplication structure tensor: the coefficient
/// of `e_left ⊗ e_right` in `Δ(e_src)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComulEntry {
    pub src: usize,
    pub left: usize,
    pub right: usize,
    pub coeff: Complex64,
}

/// Where an algebra came from; group-built algebras carry their table so the
/// search layers can enumerate subgroups, cosets and characters.
#[derive(Debug, Clone)]
pub enum Provenance {
    Generic,
    /// `F(G)`: functions on a finite group, basis `δ_g` in table order.
    FunctionAlgebra { table: GroupTable },
    /// `C[G]` in block form; `lambda[g]` holds the basis coefficients of the
    /// group unitary for table element `g`.
    GroupAlgebra { table: GroupTable, lambda: Vec<CVec> },
}

/// Named residual from the axiom suite.
#[derive(Debug, Clone)]
pub struct AxiomResidual {
    pub name: &'static str,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub entries: Vec<AxiomResidual>,
    pub tolerance: f64,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|e| e.residual < self.tolerance)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn worst(&self) -> &AxiomResidual {
        self.entries
            .iter()
            .max_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap())
            .expect("non-empty report")
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.residual)
    }
}

/// A finite-dimensional unimodular Kac algebra `(M, Δ, φ, R, ε)` with
/// `M = ⊕_i M_{n_i}(C)` and `φ(x) = Σ_i t_i Tr(x_i)` the Haar trace.
#[derive(Debug, Clone)]
pub struct FiniteKacAlgebra {
    dims: Vec<usize>,
    trace_weights: Vec<f64>,
    comul: Vec<ComulEntry>,
    comul_by_src: Vec<Vec<(usize, usize, Complex64)>>,
    counit: Vec<Complex64>,
    antipode: CMat,
    layout: BasisLayout,
    pub provenance: Provenance,
    pub label: String,
}

impl FiniteKacAlgebra {
    pub fn new(
        dims: Vec<usize>,
        trace_weights: Vec<f64>,
        comul: Vec<ComulEntry>,
        counit: Vec<Complex64>,
        antipode: CMat,
        provenance: Provenance,
        label: String,
    ) -> Result<Self, AlgebraError> {
        if dims.is_empty() || dims.iter().any(|&n| n == 0) {
            return Err(AlgebraError::Malformed(
                "dims must be a non-empty list of positive integers".into(),
            ));
        }
        if trace_weights.len() != dims.len() || trace_weights.iter().any(|&t| !(t > 0.0)) {
            return Err(AlgebraError::Malformed(
                "trace weights must be positive, one per block".into(),
            ));
        }
        let layout = BasisLayout::new(&dims);
        let n = layout.total;
        if counit.len() != n {
            return Err(AlgebraError::Malformed("counit length mismatch".into()));
        }
        if antipode.nrows() != n || antipode.ncols() != n {
            return Err(AlgebraError::Malformed("antipode shape mismatch".into()));
        }
        let mut comul_by_src = vec![Vec::new(); n];
        for e in &comul {
            if e.src >= n || e.left >= n || e.right >= n {
                return Err(AlgebraError::Malformed(
                    "comultiplication entry index out of range".into(),
                ));
            }
            comul_by_src[e.src].push((e.left, e.right, e.coeff));
        }
        Ok(Self {
            dims,
            trace_weights,
            comul,
            comul_by_src,
            counit,
            antipode,
            layout,
            provenance,
            label,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn trace_weights(&self) -> &[f64] {
        &self.trace_weights
    }

    pub fn layout(&self) -> &BasisLayout {
        &self.layout
    }

    /// Vector-space dimension `Σ_i n_i²`.
    pub fn dim(&self) -> usize {
        self.layout.total
    }

    pub fn comul_entries(&self) -> &[ComulEntry] {
        &self.comul
    }

    pub fn counit_coeffs(&self) -> &[Complex64] {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &CMat {
        &self.antipode
    }

    pub fn unit(&self) -> BlockOperator {
        BlockOperator::identity(&self.dims)
    }

    pub fn zero(&self) -> BlockOperator {
        BlockOperator::zeros(&self.dims)
    }

    pub fn contains(&self, x: &BlockOperator) -> bool {
        x.dims() == self.dims
    }

    /// Haar trace `φ(x) = Σ_i t_i Tr(x_i)`.
    pub fn phi(&self, x: &BlockOperator) -> Complex64 {
        x.blocks()
            .iter()
            .zip(&self.trace_weights)
            .map(|(b, &t)| b.trace() * Complex64::new(t, 0.0))
            .sum()
    }

    /// GNS inner product `⟨x, y⟩ = φ(x* y)`, conjugate-linear in `x`.
    pub fn inner(&self, x: &BlockOperator, y: &BlockOperator) -> Complex64 {
        x.blocks()
            .iter()
            .zip(y.blocks())
            .zip(&self.trace_weights)
            .map(|((a, b), &t)| (a.adjoint() * b).trace() * Complex64::new(t, 0.0))
            .sum()
    }

    pub fn norm2(&self, x: &BlockOperator) -> f64 {
        self.inner(x, x).re.max(0.0).sqrt()
    }

    /// Noncommutative Lp norm `‖x‖_p = φ(|x|^p)^{1/p}`; `p = ∞` gives the
    /// operator norm.
    pub fn lp_norm(&self, x: &BlockOperator, p: f64) -> Result<f64, AlgebraError> {
        if p.is_nan() || p < 1.0 {
            return Err(AlgebraError::BadExponent(p));
        }
        if p.is_infinite() {
            return Ok(x.operator_norm());
        }
        let mut acc = 0.0;
        for (b, &t) in x.blocks().iter().zip(&self.trace_weights) {
            for s in b.singular_values().iter() {
                acc += t * s.powf(p);
            }
        }
        Ok(acc.powf(1.0 / p))
    }

    /// Basis coefficients of `x` over the matrix units.
    pub fn coeffs(&self, x: &BlockOperator) -> CVec {
        let mut v = CVec::zeros(self.layout.total);
        for (i, b) in x.blocks().iter().enumerate() {
            let n = self.dims[i];
            for r in 0..n {
                for c in 0..n {
                    v[self.layout.index(i, r, c)] = b[(r, c)];
                }
            }
        }
        v
    }

    pub fn from_coeffs(&self, v: &CVec) -> BlockOperator {
        assert_eq!(v.len(), self.layout.total, "coefficient length mismatch");
        let mut blocks = Vec::with_capacity(self.dims.len());
        for (i, &n) in self.dims.iter().enumerate() {
            let mut b = CMat::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    b[(r, c)] = v[self.layout.index(i, r, c)];
                }
            }
            blocks.push(b);
        }
        BlockOperator::new(blocks).expect("square")
    }

    pub fn basis_op(&self, k: usize) -> BlockOperator {
        self.layout.basis_op(k)
    }

    /// `φ(e_k)` for the matrix-unit basis.
    pub fn phi_basis(&self, k: usize) -> f64 {
        let (b, r, c) = self.layout.locate(k);
        if r == c {
            self.trace_weights[b]
        } else {
            0.0
        }
    }

    pub fn counit_of(&self, x: &BlockOperator) -> Complex64 {
        let v = self.coeffs(x);
        v.iter().zip(&self.counit).map(|(a, b)| a * b).sum()
    }

    pub fn apply_antipode(&self, x: &BlockOperator) -> BlockOperator {
        let v = self.coeffs(x);
        self.from_coeffs(&(&self.antipode * v))
    }

    /// Coefficient matrix of `Δ(x)` over `e_a ⊗ e_b`: entry `(a, b)`.
    pub fn comul_coeffs(&self, x: &BlockOperator) -> CMat {
        let v = self.coeffs(x);
        let n = self.layout.total;
        let mut out = CMat::zeros(n, n);
        for (k, terms) in self.comul_by_src.iter().enumerate() {
            let xk = v[k];
            if xk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &(a, b, c) in terms {
                out[(a, b)] += xk * c;
            }
        }
        out
    }

    pub fn comul_terms(&self, src: usize) -> &[(usize, usize, Complex64)] {
        &self.comul_by_src[src]
    }

    /// The tensor-square algebra `M ⊗ M` as a block algebra with blocks
    /// `M_{n_i n_j}` ordered lexicographically in `(i, j)`.
    pub fn tensor_square(&self) -> TensorSquare<'_> {
        TensorSquare::new(self, self)
    }

    /// Numeric verification of every structure axiom. Failures are report
    /// entries, never errors.
    pub fn verify_axioms(&self, tol: &ToleranceConfig) -> AxiomReport {
        let n = self.layout.total;
        let ts = self.tensor_square();
        let unit = self.unit();
        let one_one = ts.kron(&unit, &unit);

        let comul_ops: Vec<BlockOperator> = (0..n)
            .map(|k| ts.op_from_coeffs(&self.comul_coeffs(&self.basis_op(k))))
            .collect();
        let basis_ops: Vec<BlockOperator> = (0..n).map(|k| self.basis_op(k)).collect();

        let mut res_star_hom: f64 = 0.0;
        for k in 0..n {
            for l in 0..n {
                let lhs = &comul_ops[k] * &comul_ops[l];
                let rhs = match self.layout.unit_product(k, l) {
                    Some(m) => comul_ops[m].clone(),
                    None => BlockOperator::zeros(&ts.dims),
                };
                let r = rel_residual(
                    lhs.distance(&rhs),
                    lhs.frobenius_norm(),
                    rhs.frobenius_norm(),
                );
                res_star_hom = res_star_hom.max(r);
            }
            // adjoint compatibility Δ(x*) = Δ(x)*
            let lhs = comul_ops[self.layout.adjoint_index(k)].clone();
            let rhs = comul_ops[k].adjoint();
            res_star_hom = res_star_hom.max(rel_residual(
                lhs.distance(&rhs),
                lhs.frobenius_norm(),
                rhs.frobenius_norm(),
            ));
        }

        let comul_unit = ts.op_from_coeffs(&self.comul_coeffs(&unit));
        let res_unital = rel_residual(
            comul_unit.distance(&one_one),
            comul_unit.frobenius_norm(),
            one_one.frobenius_norm(),
        );

        // Coassociativity on coefficient 3-tensors.
        let mut res_coassoc: f64 = 0.0;
        {
            let mut lhs = vec![Complex64::new(0.0, 0.0); n * n * n];
            let mut rhs = vec![Complex64::new(0.0, 0.0); n * n * n];
            for k in 0..n {
                for v in lhs.iter_mut() {
                    *v = Complex64::new(0.0, 0.0);
                }
                for v in rhs.iter_mut() {
                    *v = Complex64::new(0.0, 0.0);
                }
                for &(a, b, cab) in &self.comul_by_src[k] {
                    for &(p, q, cpq) in &self.comul_by_src[a] {
                        lhs[(p * n + q) * n + b] += cab * cpq;
                    }
                    for &(q, r, cqr) in &self.comul_by_src[b] {
                        rhs[(a * n + q) * n + r] += cab * cqr;
                    }
                }
                let mut diff: f64 = 0.0;
                let mut scale: f64 = 0.0;
                for i in 0..lhs.len() {
                    diff = diff.max((lhs[i] - rhs[i]).norm());
                    scale = scale.max(lhs[i].norm()).max(rhs[i].norm());
                }
                res_coassoc = res_coassoc.max(diff / scale.max(1.0));
            }
        }

        // Counit law on both legs.
        let mut res_counit: f64 = 0.0;
        for k in 0..n {
            let mut left = CVec::zeros(n);
            let mut right = CVec::zeros(n);
            for &(a, b, c) in &self.comul_by_src[k] {
                left[b] += self.counit[a] * c;
                right[a] += self.counit[b] * c;
            }
            let mut ek = CVec::zeros(n);
            ek[k] = Complex64::new(1.0, 0.0);
            res_counit = res_counit
                .max((&left - &ek).norm())
                .max((&right - &ek).norm());
        }

        // Left/right invariance of the Haar trace.
        let mut res_inv_left: f64 = 0.0;
        let mut res_inv_right: f64 = 0.0;
        let unit_coeffs = self.coeffs(&unit);
        for k in 0..n {
            let mut slice_right = CVec::zeros(n); // (ι⊗φ)Δ(e_k)
            let mut slice_left = CVec::zeros(n); // (φ⊗ι)Δ(e_k)
            for &(a, b, c) in &self.comul_by_src[k] {
                slice_right[a] += c * Complex64::new(self.phi_basis(b), 0.0);
                slice_left[b] += c * Complex64::new(self.phi_basis(a), 0.0);
            }
            let target = &unit_coeffs * Complex64::new(self.phi_basis(k), 0.0);
            let scale = target.norm().max(1.0);
            res_inv_left = res_inv_left.max((&slice_right - &target).norm() / scale);
            res_inv_right = res_inv_right.max((&slice_left - &target).norm() / scale);
        }

        // Traciality of φ (structural for weighted block traces, kept as a row).
        let mut res_tracial: f64 = 0.0;
        for k in 0..n {
            for l in 0..n {
                let xy = &basis_ops[k] * &basis_ops[l];
                let yx = &basis_ops[l] * &basis_ops[k];
                res_tracial = res_tracial.max((self.phi(&xy) - self.phi(&yx)).norm());
            }
        }

        // Antipode laws.
        let rr = &self.antipode * &self.antipode;
        let res_r_invol = (&rr - CMat::identity(n, n)).norm() / (n as f64).sqrt().max(1.0);

        let r_ops: Vec<BlockOperator> = (0..n)
            .map(|k| self.from_coeffs(&CVec::from(self.antipode.column(k).into_owned())))
            .collect();
        let mut res_r_antihom: f64 = 0.0;
        let mut res_r_star: f64 = 0.0;
        for k in 0..n {
            for l in 0..n {
                let lhs = match self.layout.unit_product(k, l) {
                    Some(m) => r_ops[m].clone(),
                    None => self.zero(),
                };
                let rhs = &r_ops[l] * &r_ops[k];
                res_r_antihom = res_r_antihom.max(rel_residual(
                    lhs.distance(&rhs),
                    lhs.frobenius_norm(),
                    rhs.frobenius_norm(),
                ));
            }
            let lhs = r_ops[self.layout.adjoint_index(k)].clone();
            let rhs = r_ops[k].adjoint();
            res_r_star = res_r_star.max(rel_residual(
                lhs.distance(&rhs),
                lhs.frobenius_norm(),
                rhs.frobenius_norm(),
            ));
        }

        // (R⊗R)∘Δ = flip∘Δ∘R on coefficients.
        let mut res_r_comul: f64 = 0.0;
        for k in 0..n {
            let mut lhs = CMat::zeros(n, n);
            for &(a, b, c) in &self.comul_by_src[k] {
                for p in 0..n {
                    let rpa = self.antipode[(p, a)];
                    if rpa == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for q in 0..n {
                        let rqb = self.antipode[(q, b)];
                        if rqb != Complex64::new(0.0, 0.0) {
                            lhs[(p, q)] += c * rpa * rqb;
                        }
                    }
                }
            }
            let mut rhs = CMat::zeros(n, n);
            for m in 0..n {
                let rmk = self.antipode[(m, k)];
                if rmk == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for &(a, b, c) in &self.comul_by_src[m] {
                    rhs[(b, a)] += rmk * c;
                }
            }
            res_r_comul =
                res_r_comul.max(rel_residual((&lhs - &rhs).norm(), lhs.norm(), rhs.norm()));
        }

        // m(R⊗ι)Δ = ε(·)1 = m(ι⊗R)Δ, the identity singling out the antipode.
        let mut res_r_counit: f64 = 0.0;
        for k in 0..n {
            let mut left_slice = self.zero();
            let mut right_slice = self.zero();
            for &(a, b, c) in &self.comul_by_src[k] {
                left_slice = &left_slice + &(&r_ops[a] * &basis_ops[b]).scale(c);
                right_slice = &right_slice + &(&basis_ops[a] * &r_ops[b]).scale(c);
            }
            let target = unit.scale(self.counit[k]);
            let scale = target.frobenius_norm();
            res_r_counit = res_r_counit
                .max(rel_residual(left_slice.distance(&target), scale, 1.0))
                .max(rel_residual(right_slice.distance(&target), scale, 1.0));
        }

        // φ∘R = φ (unimodularity).
        let mut res_phi_r: f64 = 0.0;
        for (k, r_op) in r_ops.iter().enumerate() {
            let lhs = self.phi(r_op);
            let rhs = Complex64::new(self.phi_basis(k), 0.0);
            res_phi_r = res_phi_r.max((lhs - rhs).norm());
        }

        AxiomReport {
            entries: vec![
                AxiomResidual { name: "comul_star_hom", residual: res_star_hom },
                AxiomResidual { name: "comul_unital", residual: res_unital },
                AxiomResidual { name: "coassociativity", residual: res_coassoc },
                AxiomResidual { name: "counit", residual: res_counit },
                AxiomResidual { name: "invariance_left", residual: res_inv_left },
                AxiomResidual { name: "invariance_right", residual: res_inv_right },
                AxiomResidual { name: "traciality", residual: res_tracial },
                AxiomResidual { name: "antipode_involution", residual: res_r_invol },
                AxiomResidual { name: "antipode_antihom", residual: res_r_antihom },
                AxiomResidual { name: "antipode_star", residual: res_r_star },
                AxiomResidual { name: "antipode_comul_flip", residual: res_r_comul },
                AxiomResidual { name: "antipode_counit", residual: res_r_counit },
                AxiomResidual { name: "haar_antipode", residual: res_phi_r },
            ],
            tolerance: tol.eq_tol,
        }
    }

    /// `verify_axioms` as a hard gate.
    pub fn require_axioms(&self, tol: &ToleranceConfig) -> Result<AxiomReport, AlgebraError> {
        let report = self.verify_axioms(tol);
        if report.passes() {
            Ok(report)
        } else {
            let worst = report.worst();
            Err(AlgebraError::AxiomFailure {
                worst: worst.name.to_string(),
                max_residual: worst.residual,
            })
        }
    }
}

/// The representation of `A ⊗ B` as a block algebra with blocks
/// `M_{n_i m_j}`, ordered lexicographically in the block pair `(i, j)`.
pub struct TensorSquare<'a> {
    left: &'a FiniteKacAlgebra,
    right: &'a FiniteKacAlgebra,
    pub dims: Vec<usize>,
}

impl<'a> TensorSquare<'a> {
    pub fn new(left: &'a FiniteKacAlgebra, right: &'a FiniteKacAlgebra) -> Self {
        let mut dims = Vec::with_capacity(left.dims.len() * right.dims.len());
        for &ni in &left.dims {
            for &mj in &right.dims {
                dims.push(ni * mj);
            }
        }
        Self { left, right, dims }
    }

    /// Build the tensor-square operator from a coefficient matrix over
    /// `e_a ⊗ f_b`.
    pub fn op_from_coeffs(&self, coeff: &CMat) -> BlockOperator {
        let nb = self.right.dims.len();
        let mut blocks: Vec<CMat> = self.dims.iter().map(|&n| CMat::zeros(n, n)).collect();
        for a in 0..self.left.layout.total {
            let (i, r, c) = self.left.layout.locate(a);
            for b in 0..self.right.layout.total {
                let v = coeff[(a, b)];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (j, s, d) = self.right.layout.locate(b);
                let mj = self.right.dims[j];
                let blk = &mut blocks[i * nb + j];
                blk[(r * mj + s, c * mj + d)] += v;
            }
        }
        BlockOperator::new(blocks).expect("square")
    }

    /// Kronecker embedding `x ⊗ y`.
    pub fn kron(&self, x: &BlockOperator, y: &BlockOperator) -> BlockOperator {
        let blocks = x
            .blocks()
            .iter()
            .flat_map(|xb| y.blocks().iter().map(move |yb| xb.kronecker(yb)))
            .collect();
        BlockOperator::new(blocks).expect("square")
    }

    /// `(ι ⊗ φ_right)` applied to a tensor-square operator.
    pub fn trace_out_right(&self, u: &BlockOperator) -> BlockOperator {
        let nb = self.right.dims.len();
        let mut out: Vec<CMat> = self.left.dims.iter().map(|&n| CMat::zeros(n, n)).collect();
        for (i, &ni) in self.left.dims.iter().enumerate() {
            for (j, &mj) in self.right.dims.iter().enumerate() {
                let t = self.right.trace_weights[j];
                let blk = u.block(i * nb + j);
                for r in 0..ni {
                    for c in 0..ni {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for s in 0..mj {
                            acc += blk[(r * mj + s, c * mj + s)];
                        }
                        out[i][(r, c)] += acc * Complex64::new(t, 0.0);
                    }
                }
            }
        }
        BlockOperator::new(out).expect("square")
    }

    /// `(φ_left ⊗ ι)` applied to a tensor-square operator.
    pub fn trace_out_left(&self, u: &BlockOperator) -> BlockOperator {
        let nb = self.right.dims.len();
        let mut out: Vec<CMat> = self.right.dims.iter().map(|&n| CMat::zeros(n, n)).collect();
        for (i, &ni) in self.left.dims.iter().enumerate() {
            let t = self.left.trace_weights[i];
            for (j, &mj) in self.right.dims.iter().enumerate() {
                let blk = u.block(i * nb + j);
                for s in 0..mj {
                    for d in 0..mj {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for r in 0..ni {
                            acc += blk[(r * mj + s, r * mj + d)];
                        }
                        out[j][(s, d)] += acc * Complex64::new(t, 0.0);
                    }
                }
            }
        }
        BlockOperator::new(out).expect("square")
    }
}
