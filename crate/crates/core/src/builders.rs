//! Constructors for the test corpus: finite group tables, the function
//! algebra `F(G)` and group algebra `C[G]` as Kac algebras, and the standard
//! elements (point masses, indicators, coset indicators, character twists).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, ComulEntry, FiniteKacAlgebra, Provenance};
use crate::block::BlockOperator;
use crate::dual::block_diagonalize;
use crate::tol::ToleranceConfig;
use crate::{CMat, CVec};

#[derive(Debug, Error)]
pub enum BuilderError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("element kind does not fit this algebra: {0}")]
    KindMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Multiplication table of a finite group. `mul[a][b]` is the index of
/// `g_a g_b`; associativity and the identity/inverse laws are validated on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub identity: usize,
    pub name: String,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    order: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    pub fn new(mul: Vec<Vec<usize>>, identity: usize, name: String) -> Result<Self, BuilderError> {
        let n = mul.len();
        if n == 0 {
            return Err(BuilderError::InvalidTable("empty table".into()));
        }
        if identity >= n || mul.iter().any(|row| row.len() != n) {
            return Err(BuilderError::InvalidTable("table is not square".into()));
        }
        if mul
            .iter()
            .any(|row| row.iter().any(|&v| v >= n))
        {
            return Err(BuilderError::InvalidTable("index out of range".into()));
        }
        for i in 0..n {
            if mul[identity][i] != i || mul[i][identity] != i {
                return Err(BuilderError::InvalidTable("identity law fails".into()));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for (i, inv) in inverse.iter_mut().enumerate() {
            match (0..n).find(|&j| mul[i][j] == identity && mul[j][i] == identity) {
                Some(j) => *inv = j,
                None => return Err(BuilderError::InvalidTable(format!("no inverse for {i}"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(BuilderError::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            order: n,
            mul,
            inverse,
            identity,
            name,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(mul, 0, format!("Z{n}")).expect("cyclic table is a group")
    }

    pub fn from_json(data: &str, name: String) -> Result<Self, BuilderError> {
        let file: TableFile = serde_json::from_str(data)
            .map_err(|e| BuilderError::InvalidTable(format!("json: {e}")))?;
        if file.mul.len() != file.order {
            return Err(BuilderError::InvalidTable("order field mismatch".into()));
        }
        Self::new(file.mul, file.identity, name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableFile {
            order: self.order,
            mul: self.mul.clone(),
            identity: self.identity,
        })
        .expect("serializable")
    }

    /// Symmetric group on three letters.
    pub fn s3() -> Self {
        Self::from_json(include_str!("../fixtures/s3.json"), "S3".into()).expect("fixture")
    }

    /// Dihedral group of the square.
    pub fn d4() -> Self {
        Self::from_json(include_str!("../fixtures/d4.json"), "D4".into()).expect("fixture")
    }

    /// Quaternion group.
    pub fn q8() -> Self {
        Self::from_json(include_str!("../fixtures/q8.json"), "Q8".into()).expect("fixture")
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut mul = vec![vec![0usize; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        mul[idx(x1, y1)][idx(x2, y2)] = idx(a.mul[x1][x2], b.mul[y1][y2]);
                    }
                }
            }
        }
        Self::new(mul, idx(a.identity, b.identity), format!("{}x{}", a.name, b.name))
            .expect("product of groups is a group")
    }

    /// Closure of a subset under multiplication and inverses.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut set = vec![false; self.order];
        set[self.identity] = true;
        for &g in generators {
            set[g] = true;
        }
        loop {
            let members: Vec<usize> = (0..self.order).filter(|&i| set[i]).collect();
            let mut grew = false;
            for &a in &members {
                for &b in &members {
                    let c = self.mul[a][b];
                    if !set[c] {
                        set[c] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        (0..self.order).filter(|&i| set[i]).collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        if !elements.contains(&self.identity) {
            return false;
        }
        elements.iter().all(|&a| {
            elements.contains(&self.inverse[a])
                && elements.iter().all(|&b| elements.contains(&self.mul[a][b]))
        })
    }

    /// All subgroups, as sorted element lists, ordered by (size, elements).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![vec![self.identity]];
        let mut frontier = found.clone();
        while let Some(h) = frontier.pop() {
            for g in 0..self.order {
                if h.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let c = self.closure(&gens);
                if !found.contains(&c) {
                    found.push(c.clone());
                    frontier.push(c);
                }
            }
        }
        found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        found
    }

    /// Right cosets `Hg` of a subgroup, each sorted, in order of their least
    /// representative.
    pub fn right_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut cosets = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul[h][g]).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// The group table of a subgroup, with elements renumbered in the order
    /// given. Returns `None` if the subset is not a subgroup.
    pub fn sub_table(&self, elements: &[usize]) -> Option<GroupTable> {
        if !self.is_subgroup(elements) {
            return None;
        }
        let pos = |g: usize| elements.iter().position(|&x| x == g).unwrap();
        let mul = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(self.mul[a][b])).collect())
            .collect();
        GroupTable::new(mul, pos(self.identity), format!("{}sub{}", self.name, elements.len()))
            .ok()
    }
}

/// The commutative Kac algebra of functions on `G` with counting-measure Haar
/// trace: `Δ(δ_g) = Σ_{ab=g} δ_a ⊗ δ_b`, `R(δ_g) = δ_{g⁻¹}`, `ε = ev_e`.
pub fn function_algebra(t: &GroupTable) -> FiniteKacAlgebra {
    let n = t.order;
    let dims = vec![1usize; n];
    let weights = vec![1.0f64; n];
    let one = Complex64::new(1.0, 0.0);
    let mut comul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            comul.push(ComulEntry {
                src: t.mul[a][b],
                left: a,
                right: b,
                coeff: one,
            });
        }
    }
    let counit = (0..n)
        .map(|g| if g == t.identity { one } else { Complex64::new(0.0, 0.0) })
        .collect();
    let mut antipode = CMat::zeros(n, n);
    for g in 0..n {
        antipode[(t.inverse[g], g)] = one;
    }
    FiniteKacAlgebra::new(
        dims,
        weights,
        comul,
        counit,
        antipode,
        Provenance::FunctionAlgebra { table: t.clone() },
        format!("F({})", t.name),
    )
    .expect("function algebra data is well-formed")
}

/// The group algebra `C[G]` in block form, found by block-diagonalizing the
/// left regular representation. The Haar trace is fixed by `τ(λ_e) = 1`,
/// `τ(λ_g) = 0` otherwise; `Δ(λ_g) = λ_g ⊗ λ_g` and `R(λ_g) = λ_{g⁻¹}`.
pub fn group_algebra(t: &GroupTable, tol: &ToleranceConfig) -> Result<FiniteKacAlgebra, AlgebraError> {
    let n = t.order;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    // Left regular representation by permutation matrices.
    let perms: Vec<CMat> = (0..n)
        .map(|g| {
            let mut m = CMat::zeros(n, n);
            for h in 0..n {
                m[(t.mul[g][h], h)] = one;
            }
            m
        })
        .collect();

    let dec = block_diagonalize(&perms, tol)?;
    let dims = dec.dims.clone();
    let layout = crate::algebra::BasisLayout::new(&dims);
    if layout.total != n {
        return Err(AlgebraError::BlockDecompositionFailure(format!(
            "regular representation split into dims {dims:?}, expected total {n}"
        )));
    }

    // λ_g in block coordinates, and the change of basis between the group
    // basis and the matrix-unit basis.
    let lambda_blocks: Vec<BlockOperator> = perms
        .iter()
        .map(|p| {
            BlockOperator::new(dec.isometries.iter().map(|q| q.adjoint() * p * q).collect())
                .expect("square")
        })
        .collect();
    let mut mx = CMat::zeros(n, n);
    for (g, lb) in lambda_blocks.iter().enumerate() {
        let mut col = CVec::zeros(n);
        for (i, &d) in dims.iter().enumerate() {
            let b = lb.block(i);
            for r in 0..d {
                for c in 0..d {
                    col[layout.index(i, r, c)] = b[(r, c)];
                }
            }
        }
        mx.set_column(g, &col);
    }
    let mx_inv = mx.clone().full_piv_lu().try_inverse().ok_or_else(|| {
        AlgebraError::BlockDecompositionFailure("group basis change is singular".into())
    })?;

    // Trace weights from τ(λ_g) = [g = e] by least squares over the blocks.
    let nblocks = dims.len();
    let mut a = nalgebra::DMatrix::<f64>::zeros(2 * n, nblocks);
    let mut b = nalgebra::DVector::<f64>::zeros(2 * n);
    for g in 0..n {
        for (j, _) in dims.iter().enumerate() {
            let tr = lambda_blocks[g].block(j).trace();
            a[(2 * g, j)] = tr.re;
            a[(2 * g + 1, j)] = tr.im;
        }
        b[2 * g] = if g == t.identity { 1.0 } else { 0.0 };
    }
    let svd = a.svd(true, true);
    let weights_v = svd
        .solve(&b, 1e-12)
        .map_err(|e| AlgebraError::BlockDecompositionFailure(format!("trace solve: {e}")))?;
    let weights: Vec<f64> = weights_v.iter().copied().collect();
    if weights.iter().any(|&w| w <= 0.0) {
        return Err(AlgebraError::BlockDecompositionFailure(
            "trace weights not positive".into(),
        ));
    }

    // Δ(e_k) = Σ_g S[g,k] λ_g ⊗ λ_g expanded back over matrix units.
    let mut comul = Vec::new();
    let prune = 1e-13;
    for k in 0..n {
        let mut acc = CMat::zeros(n, n);
        for g in 0..n {
            let s = mx_inv[(g, k)];
            if s.norm() < 1e-15 {
                continue;
            }
            let col = mx.column(g);
            for p in 0..n {
                let mp = col[p];
                if mp == zero {
                    continue;
                }
                for q in 0..n {
                    acc[(p, q)] += s * mp * col[q];
                }
            }
        }
        let scale = acc.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
        for p in 0..n {
            for q in 0..n {
                if acc[(p, q)].norm() > prune * scale {
                    comul.push(ComulEntry {
                        src: k,
                        left: p,
                        right: q,
                        coeff: acc[(p, q)],
                    });
                }
            }
        }
    }

    // R(e_k) = Σ_g S[g,k] λ_{g⁻¹}; ε(e_k) = Σ_g S[g,k].
    let mut antipode = CMat::zeros(n, n);
    let mut counit = vec![zero; n];
    for k in 0..n {
        let mut col = CVec::zeros(n);
        let mut eps = zero;
        for g in 0..n {
            let s = mx_inv[(g, k)];
            if s.norm() < 1e-15 {
                continue;
            }
            col += mx.column(t.inverse[g]) * s;
            eps += s;
        }
        antipode.set_column(k, &col);
        counit[k] = eps;
    }

    let lambda: Vec<CVec> = (0..n).map(|g| CVec::from(mx.column(g).into_owned())).collect();
    FiniteKacAlgebra::new(
        dims,
        weights,
        comul,
        counit,
        antipode,
        Provenance::GroupAlgebra {
            table: t.clone(),
            lambda,
        },
        format!("C[{}]", t.name),
    )
}

/// One-dimensional characters of `G`, read off the one-dimensional blocks of
/// the regular representation. The trivial character comes first.
pub fn characters_deg1(t: &GroupTable, tol: &ToleranceConfig) -> Result<Vec<Vec<Complex64>>, AlgebraError> {
    let n = t.order;
    let one = Complex64::new(1.0, 0.0);
    let perms: Vec<CMat> = (0..n)
        .map(|g| {
            let mut m = CMat::zeros(n, n);
            for h in 0..n {
                m[(t.mul[g][h], h)] = one;
            }
            m
        })
        .collect();
    let dec = block_diagonalize(&perms, tol)?;
    let mut chars = Vec::new();
    for (j, &d) in dec.dims.iter().enumerate() {
        if d != 1 {
            continue;
        }
        let q = &dec.isometries[j];
        let chi: Vec<Complex64> = perms.iter().map(|p| (q.adjoint() * p * q)[(0, 0)]).collect();
        chars.push(chi);
    }
    // trivial character first, then a deterministic order
    chars.sort_by(|a, b| {
        let key = |chi: &Vec<Complex64>| {
            chi.iter()
                .map(|z| ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64))
                .collect::<Vec<_>>()
        };
        key(b).cmp(&key(a))
    });
    Ok(chars)
}

/// Named element constructors. Function-algebra kinds require every block to
/// be one-dimensional.
#[derive(Debug, Clone)]
pub enum ElementKind<'a> {
    PointMass(usize),
    Indicator(&'a [usize]),
    CosetIndicator { subgroup: &'a [usize], rep: usize },
    CharacterTwist { character: &'a [Complex64], subset: &'a [usize] },
    Uniform,
}

pub fn standard_element(
    k: &FiniteKacAlgebra,
    kind: ElementKind<'_>,
) -> Result<BlockOperator, BuilderError> {
    let n = k.dim();
    let scalar_algebra = k.dims().iter().all(|&d| d == 1);
    let need_scalars = |what: &str| -> Result<(), BuilderError> {
        if scalar_algebra {
            Ok(())
        } else {
            Err(BuilderError::KindMismatch(format!(
                "{what} requires an algebra with one-dimensional blocks"
            )))
        }
    };
    let check_index = |g: usize| -> Result<(), BuilderError> {
        if g < n {
            Ok(())
        } else {
            Err(BuilderError::KindMismatch(format!("index {g} out of range")))
        }
    };
    match kind {
        ElementKind::PointMass(g) => {
            need_scalars("point_mass")?;
            check_index(g)?;
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[g] = Complex64::new(1.0, 0.0);
            Ok(BlockOperator::from_scalars(&v))
        }
        ElementKind::Indicator(subset) => {
            need_scalars("indicator")?;
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for &g in subset {
                check_index(g)?;
                v[g] = Complex64::new(1.0, 0.0);
            }
            Ok(BlockOperator::from_scalars(&v))
        }
        ElementKind::CosetIndicator { subgroup, rep } => {
            need_scalars("coset_indicator")?;
            check_index(rep)?;
            let table = match &k.provenance {
                Provenance::FunctionAlgebra { table } => table,
                _ => {
                    return Err(BuilderError::KindMismatch(
                        "coset_indicator requires a function algebra with a group table".into(),
                    ))
                }
            };
            if !table.is_subgroup(subgroup) {
                return Err(BuilderError::KindMismatch("not a subgroup".into()));
            }
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for &h in subgroup {
                v[table.mul[h][rep]] = Complex64::new(1.0, 0.0);
            }
            Ok(BlockOperator::from_scalars(&v))
        }
        ElementKind::CharacterTwist { character, subset } => {
            need_scalars("character_twist")?;
            if character.len() != n {
                return Err(BuilderError::KindMismatch(
                    "character length must match the group order".into(),
                ));
            }
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for &g in subset {
                check_index(g)?;
                v[g] = character[g];
            }
            Ok(BlockOperator::from_scalars(&v))
        }
        ElementKind::Uniform => {
            let phi_one: f64 = k
                .dims()
                .iter()
                .zip(k.trace_weights())
                .map(|(&d, &t)| t * d as f64)
                .sum();
            Ok(k.unit().scale(Complex64::new(1.0 / phi_one.sqrt(), 0.0)))
        }
    }
}
