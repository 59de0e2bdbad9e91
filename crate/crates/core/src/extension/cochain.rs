//! The complex `Λ^k g_-^* ⊗ g`, Kostant's differential and codifferential.
//!
//! A cochain is stored by its values `φ(ξ_I)` on increasing index tuples `I` of the
//! basis `ξ` of `g_-`. Through the Killing-dual basis `Z` of `p_+` the same data is
//! the element `Σ Z_I ⊗ φ(ξ_I)` of `Λ^k p_+ ⊗ g`.

use super::algebra::{to_dense, to_sparse, GModel, Sparse};
use crate::error::{Error, Result};
use crate::linalg::{inverse, nullspace, rank, solve, QMat, Q};
use crate::rootsys::Root;
use num::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

/// Key `(I, c)`: increasing `g_-` positions and a basis index of `g`.
pub type Key = (Vec<usize>, usize);
pub type Cochain = BTreeMap<Key, Q>;

pub(crate) fn add(map: &mut Cochain, key: Key, x: Q) {
    if x.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(x);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += x;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Inserts `m` into the increasing tuple `rest`; returns the tuple and the insertion position.
fn insert(rest: &[usize], m: usize) -> Option<(Vec<usize>, usize)> {
    if rest.contains(&m) {
        return None;
    }
    let pos = rest.iter().filter(|&&x| x < m).count();
    let mut v = rest.to_vec();
    v.insert(pos, m);
    Some((v, pos))
}

/// Killing-dual bases and bracket tables for a graded `g`.
#[derive(Clone, Debug)]
pub struct Complex<'a> {
    pub g: &'a GModel,
    /// Basis indices of `g` spanning `g_-`.
    pub minus: Vec<usize>,
    /// `Z_l` with `B(ξ_m, Z_l) = δ_ml`.
    pub duals: QMat,
    /// `[ξ_u, ξ_v]` in `ξ` coordinates.
    minus_br: Vec<Vec<Sparse>>,
    /// For each `p`, the pairs `u < v` with `[ξ_u, ξ_v]` having a `ξ_p` component.
    producing: Vec<Vec<(usize, usize, Q)>>,
    /// `[Z_l, Z_m]` in `Z` coordinates.
    plus_br: Vec<Vec<Sparse>>,
    /// `[ξ_l, e_c]` and `[Z_l, e_c]` in `g` coordinates.
    xi_act: Vec<Vec<Sparse>>,
    z_act: Vec<Vec<Sparse>>,
}

impl<'a> Complex<'a> {
    pub fn new(g: &'a GModel) -> Result<Self> {
        let dim = g.dim();
        let minus: Vec<usize> = (0..dim).filter(|&c| g.height(c) < 0).collect();
        let plus: Vec<usize> = (0..dim).filter(|&c| g.height(c) > 0).collect();
        if minus.len() != plus.len() {
            return Err(Error::Degenerate("g_- and p_+ differ in dimension".into()));
        }
        let gram: QMat = minus.iter().map(|&m| plus.iter().map(|&p| g.alg.killing_basis(m, p)).collect()).collect();
        let inv = inverse(&gram).ok_or_else(|| Error::Degenerate("Killing form does not pair g_- with p_+".into()))?;
        let duals: QMat = (0..minus.len())
            .map(|l| {
                let mut z = vec![Q::zero(); dim];
                for (q, &p) in plus.iter().enumerate() {
                    z[p] = inv[q][l].clone();
                }
                z
            })
            .collect();
        let pos: BTreeMap<usize, usize> = minus.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let to_xi = |v: &[Q]| -> Result<Sparse> {
            let mut out = Vec::new();
            for (c, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let p = pos.get(&c).ok_or_else(|| Error::Degenerate("g_- is not a subalgebra".into()))?;
                out.push((*p, x.clone()));
            }
            out.sort_by_key(|(p, _)| *p);
            Ok(out)
        };
        let n = minus.len();
        let mut minus_br = vec![vec![Vec::new(); n]; n];
        let mut producing = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                let b = to_xi(&to_dense(g.alg.bracket_basis(minus[u], minus[v]), dim))?;
                if u < v {
                    for (p, x) in &b {
                        producing[*p].push((u, v, x.clone()));
                    }
                }
                minus_br[u][v] = b;
            }
        }
        let mut plus_br = vec![vec![Vec::new(); n]; n];
        for l in 0..n {
            for m in 0..n {
                let w = g.alg.bracket(&duals[l], &duals[m]);
                let coords: Vec<Q> = minus.iter().map(|&x| g.alg.killing(&to_dense(&[(x, Q::one())], dim), &w)).collect();
                plus_br[l][m] = to_sparse(&coords);
            }
        }
        let xi_act = minus.iter().map(|&x| (0..dim).map(|c| g.alg.bracket_basis(x, c).clone()).collect()).collect();
        let z_act = duals
            .iter()
            .map(|z| (0..dim).map(|c| to_sparse(&g.alg.bracket(z, &to_dense(&[(c, Q::one())], dim)))).collect())
            .collect();
        Ok(Complex { g, minus, duals, minus_br, producing, plus_br, xi_act, z_act })
    }

    pub fn n(&self) -> usize {
        self.minus.len()
    }

    /// `[ξ_u, ξ_v]` in `ξ` coordinates.
    pub fn minus_bracket(&self, u: usize, v: usize) -> &Sparse {
        &self.minus_br[u][v]
    }

    /// Weight of the basis cochain `Z_I ⊗ e_c`.
    pub fn weight(&self, key: &Key) -> Root {
        let mut w = self.g.weight(key.1);
        for &l in &key.0 {
            for (x, r) in w.iter_mut().zip(self.g.weight(self.minus[l])) {
                *x -= r;
            }
        }
        w
    }

    /// Ξ-homogeneity of the basis cochain `Z_I ⊗ e_c`.
    pub fn homogeneity(&self, key: &Key) -> i64 {
        self.g.height(key.1) - key.0.iter().map(|&l| self.g.height(self.minus[l])).sum::<i64>()
    }

    /// Kostant's differential `C^k → C^{k+1}`.
    pub fn differential(&self, phi: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        let n = self.n();
        for ((idx, c), coef) in phi {
            for m in 0..n {
                if let Some((j, i)) = insert(idx, m) {
                    for (d, x) in &self.xi_act[m][*c] {
                        add(&mut out, (j.clone(), *d), sign(i) * coef * x);
                    }
                }
            }
            for (pp, &p) in idx.iter().enumerate() {
                let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != p).collect();
                for (u, v, x) in &self.producing[p] {
                    let Some((j1, _)) = insert(&rest, *u) else { continue };
                    let Some((j, jv)) = insert(&j1, *v) else { continue };
                    let ju = j.iter().position(|y| y == u).expect("u was inserted");
                    add(&mut out, (j, *c), sign(ju + jv + pp) * coef * x);
                }
            }
        }
        out
    }

    /// Kostant's codifferential `C^k → C^{k-1}`, computed on `Λ^k p_+ ⊗ g`.
    pub fn codifferential(&self, phi: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        for ((idx, c), coef) in phi {
            for (i, &l) in idx.iter().enumerate() {
                let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != l).collect();
                for (d, x) in &self.z_act[l][*c] {
                    add(&mut out, (rest.clone(), *d), sign(i + 1) * coef * x);
                }
            }
            for i in 0..idx.len() {
                for j in i + 1..idx.len() {
                    let rest: Vec<usize> = idx.iter().enumerate().filter(|(t, _)| *t != i && *t != j).map(|(_, &x)| x).collect();
                    for (m, w) in &self.plus_br[idx[i]][idx[j]] {
                        if let Some((k, t)) = insert(&rest, *m) {
                            add(&mut out, (k, *c), sign(i + j + t) * coef * w);
                        }
                    }
                }
            }
        }
        out
    }

    /// All basis keys of `C^k` with the given weight.
    pub fn block(&self, k: usize, weight: &[i64]) -> Vec<Key> {
        let mut out = Vec::new();
        for idx in tuples(self.n(), k) {
            for c in 0..self.g.dim() {
                let key = (idx.clone(), c);
                if self.weight(&key) == weight {
                    out.push(key);
                }
            }
        }
        out
    }

    /// Matrix of a linear map on a list of basis keys; rows indexed by the returned target keys.
    fn matrix(&self, keys: &[Key], f: impl Fn(&Cochain) -> Cochain) -> (Vec<Key>, QMat) {
        let images: Vec<Cochain> = keys.iter().map(|k| f(&Cochain::from([(k.clone(), Q::one())]))).collect();
        let targets: Vec<Key> = images.iter().flat_map(|m| m.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        let index: BTreeMap<&Key, usize> = targets.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = vec![vec![Q::zero(); keys.len()]; targets.len()];
        for (col, img) in images.iter().enumerate() {
            for (k, x) in img {
                m[index[k]][col] = x.clone();
            }
        }
        (targets, m)
    }

    /// Images of basis keys under `f`, as coordinate vectors over `onto`.
    fn images(&self, keys: &[Key], onto: &[Key], f: impl Fn(&Cochain) -> Cochain) -> Result<QMat> {
        let index: BTreeMap<&Key, usize> = onto.iter().enumerate().map(|(i, k)| (k, i)).collect();
        keys.iter()
            .map(|k| {
                let img = f(&Cochain::from([(k.clone(), Q::one())]));
                let mut v = vec![Q::zero(); onto.len()];
                for (t, x) in img {
                    let i = index.get(&t).ok_or_else(|| Error::Degenerate("image leaves its weight space".into()))?;
                    v[*i] = x;
                }
                Ok(v)
            })
            .collect()
    }

    /// Decomposition data of one weight block of `C^2`.
    pub fn weight_block(&self, degree: usize, weight: &[i64]) -> Result<Block> {
        let keys = self.block(degree, weight);
        let (_, dm) = self.matrix(&keys, |c| self.differential(c));
        let (_, sm) = self.matrix(&keys, |c| self.codifferential(c));
        let mut stacked = dm;
        stacked.extend(sm);
        let harmonic = nullspace(&stacked, keys.len());
        let exact = if degree == 0 { Vec::new() } else { self.images(&self.block(degree - 1, weight), &keys, |c| self.differential(c))? };
        let coexact = self.images(&self.block(degree + 1, weight), &keys, |c| self.codifferential(c))?;
        let (re, rc) = (rank(&exact, keys.len()), rank(&coexact, keys.len()));
        if harmonic.len() + re + rc != keys.len() {
            return Err(Error::Degenerate(format!(
                "Hodge decomposition fails in weight {weight:?}: {} + {re} + {rc} != {}",
                harmonic.len(),
                keys.len()
            )));
        }
        Ok(Block { keys, harmonic, exact, coexact })
    }

    /// Projection onto `ker ∂ ∩ ker ∂*` along `im ∂ ⊕ im ∂*`, block by block.
    pub fn harmonic_projection(&self, phi: &Cochain) -> Result<Cochain> {
        let mut out = Cochain::new();
        for (w, part) in split_by_weight(self, phi) {
            let degree = part.keys().next().map_or(0, |k| k.0.len());
            let block = self.weight_block(degree, &w)?;
            let h = block.harmonic_part(&part, true)?;
            for (k, x) in h {
                add(&mut out, k, x);
            }
        }
        Ok(out)
    }

    /// Positive-definite pairing `⟨φ, ψ⟩` induced by `-B(θ·, ·)`.
    pub fn inner_product(&self, a: &Cochain, b: &Cochain) -> Q {
        let dim = self.g.dim();
        let g = |x: &[Q], y: &[Q]| -> Q { -self.g.alg.killing(&self.g.cartan_involution(x), y) };
        let basis = |c: usize| to_dense(&[(c, Q::one())], dim);
        let mut zcache: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        let mut zpair = |l: usize, m: usize| -> Q { zcache.entry((l, m)).or_insert_with(|| g(&self.duals[l], &self.duals[m])).clone() };
        let mut t = Q::zero();
        for ((i, c), x) in a {
            for ((j, d), y) in b {
                if i.len() != j.len() {
                    continue;
                }
                let gd = g(&basis(*c), &basis(*d));
                if gd.is_zero() {
                    continue;
                }
                let m: QMat = i.iter().map(|&l| j.iter().map(|&mm| zpair(l, mm)).collect()).collect();
                t += x * y * gd * det(m);
            }
        }
        t
    }
}

/// Keys, harmonic basis, exact and coexact spanning sets of one weight block.
#[derive(Clone, Debug)]
pub struct Block {
    pub keys: Vec<Key>,
    pub harmonic: QMat,
    pub exact: QMat,
    pub coexact: QMat,
}

impl Block {
    fn coords(&self, phi: &Cochain) -> Result<Vec<Q>> {
        let mut v = vec![Q::zero(); self.keys.len()];
        for (k, x) in phi {
            let i = self.keys.iter().position(|y| y == k).ok_or_else(|| Error::Degenerate("cochain leaves the block".into()))?;
            v[i] = x.clone();
        }
        Ok(v)
    }

    /// Harmonic component of `phi`. With `with_exact = false` only `im ∂*` is
    /// subtracted, which requires `phi` to be coclosed.
    pub fn harmonic_part(&self, phi: &Cochain, with_exact: bool) -> Result<Cochain> {
        let target = self.coords(phi)?;
        let mut cols: QMat = self.harmonic.clone();
        if with_exact {
            cols.extend(self.exact.iter().cloned());
        }
        cols.extend(self.coexact.iter().cloned());
        let a = crate::linalg::transpose(&cols, self.keys.len());
        let x = solve(&a, &target, cols.len()).ok_or_else(|| Error::Degenerate("cochain outside the Hodge decomposition".into()))?;
        let mut out = Cochain::new();
        for (hx, h) in x.iter().zip(&self.harmonic) {
            for (k, y) in self.keys.iter().zip(h) {
                add(&mut out, k.clone(), hx * y);
            }
        }
        Ok(out)
    }
}

pub fn split_by_weight(cx: &Complex, phi: &Cochain) -> BTreeMap<Root, Cochain> {
    let mut out: BTreeMap<Root, Cochain> = BTreeMap::new();
    for (k, x) in phi {
        out.entry(cx.weight(k)).or_default().insert(k.clone(), x.clone());
    }
    out
}

/// Increasing `k`-tuples from `0..n`.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn det(mut m: QMat) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            let pivot = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Orthogonal projection onto the harmonic space of all of `C^k`, by brute force
/// over the positive-definite pairing. Only sensible on small algebras.
pub fn brute_force_projection(cx: &Complex, degree: usize, phi: &Cochain) -> Result<Cochain> {
    let keys: Vec<Key> = tuples(cx.n(), degree).into_iter().flat_map(|i| (0..cx.g.dim()).map(move |c| (i.clone(), c))).collect();
    let (_, dm) = cx.matrix(&keys, |c| cx.differential(c));
    let (_, sm) = cx.matrix(&keys, |c| cx.codifferential(c));
    let mut stacked = dm;
    stacked.extend(sm);
    let hs: Vec<Cochain> = nullspace(&stacked, keys.len())
        .into_iter()
        .map(|v| keys.iter().cloned().zip(v).filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    let gram: QMat = hs.iter().map(|a| hs.iter().map(|b| cx.inner_product(a, b)).collect()).collect();
    let inv = inverse(&gram).ok_or_else(|| Error::Degenerate("pairing is degenerate on the harmonic space".into()))?;
    let rhs: Vec<Q> = hs.iter().map(|h| cx.inner_product(h, phi)).collect();
    let mut out = Cochain::new();
    for (i, h) in hs.iter().enumerate() {
        let c: Q = inv[i].iter().zip(&rhs).map(|(a, b)| a * b).sum();
        for (k, x) in h {
            add(&mut out, k.clone(), &c * x);
        }
    }
    Ok(out)
}
