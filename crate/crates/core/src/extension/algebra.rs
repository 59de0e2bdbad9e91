//! Lie algebras given by exact structure constants, and the matrix model of `sl(n+1)`.

use crate::error::{Error, Result};
use crate::grading::GradedParabolic;
use crate::linalg::{zeros, QMat, Q};
use crate::rootsys::{Family, Root, RootSystem};
use num::{One, Zero};

/// Sparse vector: `(basis index, coefficient)` pairs with nonzero coefficients, sorted by index.
pub type Sparse = Vec<(usize, Q)>;

pub fn to_dense(s: &[(usize, Q)], dim: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    for (i, x) in s {
        v[*i] += x;
    }
    v
}

pub fn to_sparse(v: &[Q]) -> Sparse {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Finite-dimensional Lie algebra with a fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StructAlgebra {
    pub dim: usize,
    pub names: Vec<String>,
    /// `table[i][j]` holds the coordinates of `[e_i, e_j]`.
    table: Vec<Vec<Sparse>>,
}

impl StructAlgebra {
    /// Builds the table from listed brackets. Missing `(j, i)` entries are filled by
    /// antisymmetry; entries listed both ways must agree.
    pub fn from_brackets(dim: usize, names: Vec<String>, entries: Vec<(usize, usize, Sparse)>) -> Result<Self> {
        if names.len() != dim {
            return Err(Error::Schema(format!("{} basis names for dimension {dim}", names.len())));
        }
        let mut table: Vec<Vec<Option<Sparse>>> = vec![vec![None; dim]; dim];
        for (i, j, v) in entries {
            if i >= dim || j >= dim || v.iter().any(|(c, _)| *c >= dim) {
                return Err(Error::Schema(format!("bracket index out of range in ({i}, {j})")));
            }
            let v = to_sparse(&to_dense(&v, dim));
            if i == j && !v.is_empty() {
                return Err(Error::Antisymmetry(i, j));
            }
            let neg: Sparse = v.iter().map(|(c, x)| (*c, -x.clone())).collect();
            for (a, b, w) in [(i, j, v), (j, i, neg)] {
                match &table[a][b] {
                    Some(old) if *old != w => return Err(Error::Antisymmetry(a.min(b), a.max(b))),
                    _ => table[a][b] = Some(w),
                }
            }
        }
        let table = table.into_iter().map(|r| r.into_iter().map(Option::unwrap_or_default).collect()).collect();
        Ok(StructAlgebra { dim, names, table })
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (c, v) in &self.table[i][j] {
                    out[*c] += &ab * v;
                }
            }
        }
        out
    }

    /// `[e_i, v]` for a sparse `v`.
    fn bracket_sparse(&self, i: usize, v: &[(usize, Q)]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (j, b) in v {
            for (c, x) in &self.table[i][*j] {
                out[*c] += b * x;
            }
        }
        out
    }

    /// Checks the Jacobi identity on all basis triples `i < j < k`.
    pub fn check_jacobi(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket_sparse(i, &self.table[j][k]);
                    let b = self.bracket_sparse(j, &self.table[k][i]);
                    let c = self.bracket_sparse(k, &self.table[i][j]);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// All listed brackets `[e_i, e_j]` with `i < j` that are nonzero.
    pub fn entries(&self) -> Vec<(usize, usize, &Sparse)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !self.table[i][j].is_empty() {
                    out.push((i, j, &self.table[i][j]));
                }
            }
        }
        out
    }

    /// Killing form `tr(ad e_a ∘ ad e_b)` on basis elements.
    pub fn killing_basis(&self, a: usize, b: usize) -> Q {
        let mut t = Q::zero();
        for c in 0..self.dim {
            for (d, x) in &self.table[b][c] {
                for (e, y) in &self.table[a][*d] {
                    if *e == c {
                        t += x * y;
                    }
                }
            }
        }
        t
    }

    pub fn killing(&self, x: &[Q], y: &[Q]) -> Q {
        let mut t = Q::zero();
        for (a, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            for (b, v) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                t += u * v * self.killing_basis(a, b);
            }
        }
        t
    }

    /// True when `[u, v]` lies in the span of `basis` for all `u, v` in it.
    pub fn is_subalgebra(&self, basis: &QMat) -> bool {
        for (i, u) in basis.iter().enumerate() {
            for v in &basis[i + 1..] {
                if !crate::linalg::in_span(basis, &self.bracket(u, v), self.dim) {
                    return false;
                }
            }
        }
        true
    }
}

/// `sl(n+1, R)` realised by matrices, with its root-space basis and a grading.
///
/// The basis lists `E_ij` (`i ≠ j`) in lexicographic order, then `H_k = E_kk - E_{k+1,k+1}`.
#[derive(Clone, Debug)]
pub struct GModel {
    pub alg: StructAlgebra,
    pub gp: GradedParabolic,
    roots: Vec<Option<Root>>,
    entries: Vec<Option<(usize, usize)>>,
    size: usize,
}

impl GModel {
    /// `xi` lists 0-based simple-root indices.
    pub fn sl(rank: usize, xi: &[usize]) -> Result<Self> {
        let rs = RootSystem::new(Family::A, rank, false)?;
        let gp = GradedParabolic::new(rs, xi)?;
        let n = rank + 1;
        let mut roots = Vec::new();
        let mut entries = Vec::new();
        let mut names = Vec::new();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let mut r = vec![0i64; rank];
                let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
                for x in &mut r[lo..hi] {
                    *x = s;
                }
                roots.push(Some(r));
                entries.push(Some((i, j)));
                names.push(format!("E{}{}", i + 1, j + 1));
            }
        }
        for k in 0..rank {
            roots.push(None);
            entries.push(None);
            names.push(format!("H{}", k + 1));
        }
        let dim = names.len();
        let mut model = GModel {
            alg: StructAlgebra { dim, names: names.clone(), table: vec![vec![Vec::new(); dim]; dim] },
            gp,
            roots,
            entries,
            size: n,
        };
        let mats: Vec<QMat> = (0..dim).map(|c| model.basis_matrix(c)).collect();
        let mut brackets = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let m = commutator(&mats[a], &mats[b]);
                brackets.push((a, b, to_sparse(&model.from_matrix(&m)?)));
            }
        }
        model.alg = StructAlgebra::from_brackets(dim, names, brackets)?;
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    /// Matrix size `n + 1`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.size - 1
    }

    /// Root of a basis element; `None` on the Cartan part.
    pub fn root(&self, c: usize) -> Option<&Root> {
        self.roots[c].as_ref()
    }

    /// Root of a basis element, zero on the Cartan part.
    pub fn weight(&self, c: usize) -> Root {
        self.roots[c].clone().unwrap_or_else(|| vec![0; self.rank()])
    }

    pub fn index_of_root(&self, r: &[i64]) -> Option<usize> {
        self.roots.iter().position(|x| x.as_deref() == Some(r))
    }

    /// Ξ-height of a basis element.
    pub fn height(&self, c: usize) -> i64 {
        self.height_in(c, self.gp.xi())
    }

    /// Height with respect to another set of simple roots.
    pub fn height_in(&self, c: usize, set: &[usize]) -> i64 {
        self.roots[c].as_ref().map_or(0, |r| set.iter().map(|&i| r[i]).sum())
    }

    pub fn basis_matrix(&self, c: usize) -> QMat {
        let mut m = zeros(self.size, self.size);
        match self.entries[c] {
            Some((i, j)) => m[i][j] = Q::one(),
            None => {
                let k = c - (self.size * self.size - self.size);
                m[k][k] = Q::one();
                m[k + 1][k + 1] = -Q::one();
            }
        }
        m
    }

    pub fn to_matrix(&self, v: &[Q]) -> QMat {
        let mut m = zeros(self.size, self.size);
        for (c, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (row, brow) in m.iter_mut().zip(self.basis_matrix(c)) {
                for (y, b) in row.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *y += x * b;
                    }
                }
            }
        }
        m
    }

    /// Coordinates of a traceless matrix.
    pub fn from_matrix(&self, m: &QMat) -> Result<Vec<Q>> {
        let n = self.size;
        let mut v = vec![Q::zero(); self.dim_for(n)];
        for (c, e) in self.entries.iter().enumerate() {
            if let Some((i, j)) = e {
                v[c] = m[*i][*j].clone();
            }
        }
        let base = n * n - n;
        let mut acc = Q::zero();
        for k in 0..n - 1 {
            acc += &m[k][k];
            v[base + k] = acc.clone();
        }
        if !(acc + &m[n - 1][n - 1]).is_zero() {
            return Err(Error::Invalid("matrix is not traceless".into()));
        }
        Ok(v)
    }

    fn dim_for(&self, n: usize) -> usize {
        n * n - 1
    }

    /// Cartan involution `X ↦ -X^T` in coordinates.
    pub fn cartan_involution(&self, v: &[Q]) -> Vec<Q> {
        let m = self.to_matrix(v);
        let n = self.size;
        let t: QMat = (0..n).map(|i| (0..n).map(|j| -m[j][i].clone()).collect()).collect();
        self.from_matrix(&t).expect("transpose of a traceless matrix is traceless")
    }
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = b.first().map_or(0, Vec::len);
    crate::linalg::mat_mul(a, b, n)
}

pub fn commutator(a: &QMat, b: &QMat) -> QMat {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

/// Matrix algebra spanned by `mats`, with brackets expressed in that basis.
pub fn from_matrices(names: Vec<String>, mats: &[QMat]) -> Result<StructAlgebra> {
    let n = mats.first().map_or(0, Vec::len);
    let flat = |m: &QMat| -> Vec<Q> { m.iter().flatten().cloned().collect() };
    let cols: QMat = crate::linalg::transpose(&mats.iter().map(flat).collect(), n * n);
    let mut brackets = Vec::new();
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            let c = flat(&commutator(&mats[a], &mats[b]));
            let x = crate::linalg::solve(&cols, &c, mats.len())
                .ok_or_else(|| Error::Invalid(format!("[{}, {}] leaves the span", names[a], names[b])))?;
            brackets.push((a, b, to_sparse(&x)));
        }
    }
    StructAlgebra::from_brackets(mats.len(), names, brackets)
}
