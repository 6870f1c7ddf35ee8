//! JSON wire formats shared repo-wide.
//!
//! * element: `{"dims":[...], "blocks":[[[re,im],...],...]}`, row-major per
//!   block;
//! * algebra: `{"dims":[...], "trace_weights":[...], "comul":[[i,j,k,re,im],...],
//!   "antipode":[[i,j,re,im],...], "counit":[[i,re,im],...]}` over the
//!   matrix-unit basis;
//! * group table: `{"order":n, "mul":[[...]], "identity":i}`;
//! * bi-shift certificates embed the element format plus provenance strings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ComulEntry, FiniteKacAlgebra, Provenance};
use crate::biproj::BiShiftCertificate;
use crate::block::BlockOperator;
use crate::builders::GroupTable;
use crate::CMat;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
    #[error("schema: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementFile {
    pub dims: Vec<usize>,
    pub blocks: Vec<Vec<[f64; 2]>>,
}

impl ElementFile {
    pub fn from_operator(x: &BlockOperator) -> Self {
        let blocks = x
            .blocks()
            .iter()
            .map(|b| {
                let n = b.nrows();
                let mut flat = Vec::with_capacity(n * n);
                for r in 0..n {
                    for c in 0..n {
                        flat.push([b[(r, c)].re, b[(r, c)].im]);
                    }
                }
                flat
            })
            .collect();
        Self {
            dims: x.dims(),
            blocks,
        }
    }

    pub fn to_operator(&self) -> Result<BlockOperator, IoError> {
        if self.dims.len() != self.blocks.len() {
            return Err(IoError::Schema(
                "dims and blocks length mismatch".into(),
            ));
        }
        let mut blocks = Vec::with_capacity(self.dims.len());
        for (i, (&n, flat)) in self.dims.iter().zip(&self.blocks).enumerate() {
            if flat.len() != n * n {
                return Err(IoError::Schema(format!(
                    "block {i} has {} entries, expected {}",
                    flat.len(),
                    n * n
                )));
            }
            let mut b = CMat::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    let [re, im] = flat[r * n + c];
                    b[(r, c)] = Complex64::new(re, im);
                }
            }
            blocks.push(b);
        }
        BlockOperator::new(blocks).map_err(|e| IoError::Schema(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dims: Vec<usize>,
    pub trace_weights: Vec<f64>,
    pub comul: Vec<(usize, usize, usize, f64, f64)>,
    pub antipode: Vec<(usize, usize, f64, f64)>,
    pub counit: Vec<(usize, f64, f64)>,
}

impl AlgebraFile {
    pub fn from_algebra(k: &FiniteKacAlgebra) -> Self {
        let comul = k
            .comul_entries()
            .iter()
            .map(|e| (e.src, e.left, e.right, e.coeff.re, e.coeff.im))
            .collect();
        let n = k.dim();
        let rmat = k.antipode_matrix();
        let mut antipode = Vec::new();
        for src in 0..n {
            for out in 0..n {
                let v = rmat[(out, src)];
                if v != Complex64::new(0.0, 0.0) {
                    antipode.push((src, out, v.re, v.im));
                }
            }
        }
        let counit = k
            .counit_coeffs()
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != Complex64::new(0.0, 0.0))
            .map(|(i, v)| (i, v.re, v.im))
            .collect();
        Self {
            dims: k.dims().to_vec(),
            trace_weights: k.trace_weights().to_vec(),
            comul,
            antipode,
            counit,
        }
    }

    pub fn to_algebra(&self, label: String) -> Result<FiniteKacAlgebra, IoError> {
        let layout = crate::algebra::BasisLayout::new(&self.dims);
        let n = layout.total;
        let comul = self
            .comul
            .iter()
            .map(|&(src, left, right, re, im)| ComulEntry {
                src,
                left,
                right,
                coeff: Complex64::new(re, im),
            })
            .collect();
        let mut antipode = CMat::zeros(n, n);
        for &(src, out, re, im) in &self.antipode {
            if src >= n || out >= n {
                return Err(IoError::Schema("antipode index out of range".into()));
            }
            antipode[(out, src)] = Complex64::new(re, im);
        }
        let mut counit = vec![Complex64::new(0.0, 0.0); n];
        for &(i, re, im) in &self.counit {
            if i >= n {
                return Err(IoError::Schema("counit index out of range".into()));
            }
            counit[i] = Complex64::new(re, im);
        }
        FiniteKacAlgebra::new(
            self.dims.clone(),
            self.trace_weights.clone(),
            comul,
            counit,
            antipode,
            Provenance::Generic,
            label,
        )
        .map_err(|e| IoError::Schema(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub provenance: String,
    pub biprojection: ElementFile,
    pub dual_projection: ElementFile,
    pub primal_shift: ElementFile,
    pub dual_shift: ElementFile,
    pub witness: ElementFile,
    pub element: ElementFile,
}

impl CertificateFile {
    pub fn from_certificate(cert: &BiShiftCertificate) -> Self {
        Self {
            provenance: cert.provenance.clone(),
            biprojection: ElementFile::from_operator(&cert.biprojection),
            dual_projection: ElementFile::from_operator(&cert.dual_projection),
            primal_shift: ElementFile::from_operator(&cert.primal_shift),
            dual_shift: ElementFile::from_operator(&cert.dual_shift),
            witness: ElementFile::from_operator(&cert.witness),
            element: ElementFile::from_operator(&cert.element),
        }
    }
}

pub fn write_element(path: &std::path::Path, x: &BlockOperator) -> Result<(), IoError> {
    let file = ElementFile::from_operator(x);
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn read_element(path: &std::path::Path) -> Result<BlockOperator, IoError> {
    let data = std::fs::read_to_string(path)?;
    let file: ElementFile = serde_json::from_str(&data)?;
    file.to_operator()
}

pub fn write_algebra(path: &std::path::Path, k: &FiniteKacAlgebra) -> Result<(), IoError> {
    let file = AlgebraFile::from_algebra(k);
    std::fs::write(path, serde_json::to_string(&file)?)?;
    Ok(())
}

pub fn read_algebra(path: &std::path::Path, label: String) -> Result<FiniteKacAlgebra, IoError> {
    let data = std::fs::read_to_string(path)?;
    let file: AlgebraFile = serde_json::from_str(&data)?;
    file.to_algebra(label)
}

pub fn read_group_table(path: &std::path::Path, name: String) -> Result<GroupTable, IoError> {
    let data = std::fs::read_to_string(path)?;
    GroupTable::from_json(&data, name).map_err(|e| IoError::Schema(e.to_string()))
}
