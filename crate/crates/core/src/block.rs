//! Block-diagonal complex matrix arithmetic with the spectral operations
//! (polar decomposition, range projections, matrix functions) used by the
//! Fourier-analytic layers above it.


use num_complex::Complex64;
use thiserror::Error;

use crate::linalg;
use crate::tol::ToleranceConfig;
use crate::CMat;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("block {index} is {rows}x{cols}, expected square")]
    NonSquareBlock { index: usize, rows: usize, cols: usize },
    #[error("operator has no blocks")]
    Empty,
    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("operation undefined on the zero operator")]
    ZeroOperator,
}

/// Scalar functions applied through the spectral theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralFn {
    /// `t -> t^alpha` with `alpha > 0`; eigenvalues clamped at 0 from below.
    Power(f64),
    /// `t -> t log t`, with eigenvalues under the entropy floor contributing 0.
    XLogX,
    /// `t -> log t` on the support: eigenvalues under the floor contribute 0.
    Log,
}

/// An element of a finite-dimensional *-algebra `⊕_i M_{n_i}(C)`: one square
/// complex matrix per block. Immutable after construction; all operations
/// return new values.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    blocks: Vec<CMat>,
}

impl BlockOperator {
    pub fn new(blocks: Vec<CMat>) -> Result<Self, OperatorError> {
        if blocks.is_empty() {
            return Err(OperatorError::Empty);
        }
        for (index, b) in blocks.iter().enumerate() {
            if b.nrows() != b.ncols() || b.nrows() == 0 {
                return Err(OperatorError::NonSquareBlock {
                    index,
                    rows: b.nrows(),
                    cols: b.ncols(),
                });
            }
        }
        Ok(Self { blocks })
    }

    pub fn zeros(dims: &[usize]) -> Self {
        Self {
            blocks: dims.iter().map(|&n| CMat::zeros(n, n)).collect(),
        }
    }

    pub fn identity(dims: &[usize]) -> Self {
        Self {
            blocks: dims.iter().map(|&n| CMat::identity(n, n)).collect(),
        }
    }

    /// Diagonal operator on an algebra whose blocks are all one-dimensional.
    pub fn from_scalars(values: &[Complex64]) -> Self {
        Self {
            blocks: values
                .iter()
                .map(|&v| CMat::from_element(1, 1, v))
                .collect(),
        }
    }

    /// The scalar entries, provided every block is one-dimensional.
    pub fn scalars(&self) -> Option<Vec<Complex64>> {
        self.blocks
            .iter()
            .map(|b| (b.nrows() == 1).then(|| b[(0, 0)]))
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.nrows() == b.nrows())
    }

    pub fn block(&self, i: usize) -> &CMat {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<CMat> {
        self.blocks
    }

    pub fn map_blocks(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self {
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map_blocks(|b| b.adjoint())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_blocks(|b| b * c)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest singular value over all blocks.
    pub fn operator_norm(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| linalg::singular_values(b))
            .fold(0.0, f64::max)
    }

    /// All singular values (over every block), descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(linalg::singular_values)
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.frobenius_norm() <= tol
    }

    /// Frobenius distance to another operator of the same shape.
    pub fn distance(&self, other: &Self) -> f64 {
        assert!(self.same_shape(other), "block shape mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a - b).norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    /// Polar decomposition `x = w m` with `m = |x| >= 0` and `w` a partial
    /// isometry satisfying `w* w = range_projection(m)`, computed blockwise
    /// by singular value decomposition.
    pub fn polar(&self, tol: &ToleranceConfig) -> (Self, Self) {
        let mut ws = Vec::with_capacity(self.blocks.len());
        let mut ms = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let dec = linalg::svd(b);
            let sv = &dec.singular_values;
            let smax = sv.iter().cloned().fold(0.0, f64::max);
            let cut = tol.rank_tol * smax;
            let n = b.nrows();
            // w = sum over retained singular triplets of u_k v_k^*
            let mut w = CMat::zeros(n, n);
            for k in 0..sv.len() {
                if sv[k] > cut && sv[k] > 0.0 {
                    let uk = dec.u.column(k);
                    let vk = dec.v.column(k);
                    for r in 0..n {
                        for c in 0..n {
                            w[(r, c)] += uk[r] * vk[c].conj();
                        }
                    }
                }
            }
            // m = V diag(sigma) V^*
            let mut m = CMat::zeros(n, n);
            for k in 0..sv.len() {
                let vk = dec.v.column(k);
                for r in 0..n {
                    for c in 0..n {
                        m[(r, c)] += vk[r] * vk[c].conj() * Complex64::new(sv[k], 0.0);
                    }
                }
            }
            ws.push(w);
            ms.push(m);
        }
        (Self { blocks: ws }, Self { blocks: ms })
    }

    /// Orthogonal projection onto the column space, blockwise. Singular values
    /// at or below `rank_tol * sigma_max` (with the max taken over the whole
    /// operator, so the cut is scale invariant) count as zero.
    pub fn range_projection(&self, tol: &ToleranceConfig) -> Self {
        let smax = self.operator_norm();
        let cut = tol.rank_tol * smax;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let dec = linalg::svd(b);
                let sv = &dec.singular_values;
                let n = b.nrows();
                let mut p = CMat::zeros(n, n);
                for k in 0..sv.len() {
                    if sv[k] > cut && sv[k] > 0.0 {
                        let uk = dec.u.column(k);
                        for r in 0..n {
                            for c in 0..n {
                                p[(r, c)] += uk[r] * uk[c].conj();
                            }
                        }
                    }
                }
                p
            })
            .collect();
        Self { blocks }
    }

    /// Eigendecomposition of the Hermitian part `(x + x*)/2` of each block.
    /// Returns `(eigenvalues, eigenvectors)` per block with eigenvectors as
    /// columns.
    pub fn hermitian_eigen(&self) -> Vec<(Vec<f64>, CMat)> {
        self.blocks.iter().map(linalg::hermitian_eigen).collect()
    }

    /// Apply a scalar function to a positive semidefinite operator through the
    /// spectral theorem. The input is symmetrized before factorization to
    /// suppress round-off asymmetry.
    pub fn spectral_map(&self, f: SpectralFn, tol: &ToleranceConfig) -> Result<Self, OperatorError> {
        let eig = self.hermitian_eigen();
        let scale = eig
            .iter()
            .flat_map(|(vals, _)| vals.iter().map(|v| v.abs()))
            .fold(0.0, f64::max);
        let min_eig = eig
            .iter()
            .flat_map(|(vals, _)| vals.iter().copied())
            .fold(f64::INFINITY, f64::min);
        if min_eig < -tol.eq_tol * scale.max(1.0) {
            return Err(OperatorError::NotPositive {
                min_eigenvalue: min_eig,
            });
        }
        let apply = |t: f64| -> f64 {
            let t = t.max(0.0);
            match f {
                SpectralFn::Power(alpha) => t.powf(alpha),
                SpectralFn::XLogX => {
                    if t < tol.entropy_floor {
                        0.0
                    } else {
                        t * t.ln()
                    }
                }
                SpectralFn::Log => {
                    if t < tol.entropy_floor {
                        0.0
                    } else {
                        t.ln()
                    }
                }
            }
        };
        let blocks = eig
            .into_iter()
            .map(|(vals, q)| {
                let n = q.nrows();
                let mut out = CMat::zeros(n, n);
                for k in 0..n {
                    let fv = apply(vals[k]);
                    if fv != 0.0 {
                        let qk = q.column(k);
                        for r in 0..n {
                            for c in 0..n {
                                out[(r, c)] += qk[r] * qk[c].conj() * Complex64::new(fv, 0.0);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Self { blocks })
    }

    /// `Some(mu)` when every nonzero singular value equals `mu` within
    /// `eq_tol`, so `x / mu` is a partial isometry; `None` otherwise.
    pub fn partial_isometry_scale(
        &self,
        tol: &ToleranceConfig,
    ) -> Result<Option<f64>, OperatorError> {
        let sv = self.singular_values();
        let smax = sv.first().copied().unwrap_or(0.0);
        if smax == 0.0 {
            return Err(OperatorError::ZeroOperator);
        }
        let nonzero: Vec<f64> = sv
            .iter()
            .copied()
            .filter(|&s| s > tol.rank_tol * smax)
            .collect();
        let smin = nonzero.iter().copied().fold(f64::INFINITY, f64::min);
        if smax - smin <= tol.eq_tol * smax {
            let mu = nonzero.iter().sum::<f64>() / nonzero.len() as f64;
            Ok(Some(mu))
        } else {
            Ok(None)
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait<&BlockOperator> for &BlockOperator {
            type Output = BlockOperator;
            fn $method(self, rhs: &BlockOperator) -> BlockOperator {
                assert!(self.same_shape(rhs), "block shape mismatch");
                BlockOperator {
                    blocks: self
                        .blocks
                        .iter()
                        .zip(&rhs.blocks)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);

impl std::ops::Mul<&BlockOperator> for &BlockOperator {
    type Output = BlockOperator;
    fn mul(self, rhs: &BlockOperator) -> BlockOperator {
        assert!(self.same_shape(rhs), "block shape mismatch");
        BlockOperator {
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &BlockOperator {
    type Output = BlockOperator;
    fn neg(self) -> BlockOperator {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
