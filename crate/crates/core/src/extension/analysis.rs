//! Curvature, harmonic part and the symmetry-derived sets of an extension.

use super::algebra::{to_dense, GModel};
use super::cochain::{add, split_by_weight, Cochain, Complex};
use super::{validate_extension, ExtensionData};
use crate::error::{Error, Result};
use crate::kostant::{self, CurvatureComponent};
use crate::linalg::{in_span, nullspace, row_basis, solve, QMat, Q};
use crate::rootsys::Root;
use num::{One, Zero};
use serde::Serialize;

/// Curvature as an alternating 2-form on `g/p_Ξ ≅ g_-` with values in `g`.
#[derive(Clone, Debug)]
pub struct CurvatureTensor {
    /// Basis indices of `g` spanning `g_-`, in the order used by the cochain keys.
    pub minus: Vec<usize>,
    /// `lifts[a]` is a vector of `k` with `α(lifts[a]) ≡ ξ_a` modulo `p_Ξ`.
    pub lifts: QMat,
    pub values: Cochain,
}

/// `κ(X, Y) = [α(X), α(Y)] - α([X, Y])`.
pub fn kappa(e: &ExtensionData, x: &[Q], y: &[Q]) -> Vec<Q> {
    let mut out = e.g.alg.bracket(&e.apply(x), &e.apply(y));
    for (o, z) in out.iter_mut().zip(e.apply(&e.k.bracket(x, y))) {
        *o -= z;
    }
    out
}

pub fn curvature(e: &ExtensionData) -> Result<CurvatureTensor> {
    let report = validate_extension(e);
    if let Some(c) = report.conditions.iter().find(|c| !c.ok) {
        return Err(Error::Invalid(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())));
    }
    let g = &e.g;
    let minus: Vec<usize> = (0..g.dim()).filter(|&c| g.height(c) < 0).collect();
    let proj: QMat = minus.iter().map(|&c| e.alpha.iter().map(|row| row[c].clone()).collect()).collect();
    let lifts = (0..minus.len())
        .map(|a| {
            let target = to_dense(&[(a, Q::one())], minus.len());
            solve(&proj, &target, e.k.dim).ok_or_else(|| Error::Invalid("alpha does not reach g/p".into()))
        })
        .collect::<Result<QMat>>()?;
    let mut values = Cochain::new();
    for a in 0..minus.len() {
        for b in a + 1..minus.len() {
            for (c, x) in kappa(e, &lifts[a], &lifts[b]).into_iter().enumerate() {
                add(&mut values, (vec![a, b], c), x);
            }
        }
    }
    Ok(CurvatureTensor { minus, lifts, values })
}

/// A nonzero harmonic entry with the components whose module it can lie in.
#[derive(Clone, Debug, Serialize)]
pub struct HarmonicEntry {
    /// Names of the two `g_-` arguments and the value slot.
    pub slot: (String, String, String),
    pub coefficient: String,
    pub weight: Root,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct HarmonicReport {
    pub is_regular: bool,
    pub is_normal: bool,
    pub harmonic_part: Cochain,
    pub entries: Vec<HarmonicEntry>,
    pub component_labels: Vec<String>,
    pub components: Vec<CurvatureComponent>,
    /// Harmonic part recomputed as `κ - ∂*z`; equal to `harmonic_part` for normal `κ`.
    pub second_route_agrees: bool,
}

/// Regularity, normality and the harmonic part of a curvature tensor.
pub fn harmonic_decompose(t: &CurvatureTensor, g: &GModel) -> Result<HarmonicReport> {
    let cx = Complex::new(g)?;
    if cx.minus != t.minus {
        return Err(Error::Mismatch("curvature tensor and grading use different g_- bases".into()));
    }
    let is_regular = t.values.keys().all(|k| cx.homogeneity(k) > 0);
    let is_normal = cx.codifferential(&t.values).is_empty();
    let mut harmonic = Cochain::new();
    let mut second_route_agrees = true;
    for (w, part) in split_by_weight(&cx, &t.values) {
        let block = cx.weight_block(2, &w)?;
        let h = block.harmonic_part(&part, true)?;
        if is_normal {
            second_route_agrees &= block.harmonic_part(&part, false)? == h;
        }
        for (k, x) in h {
            add(&mut harmonic, k, x);
        }
    }
    let candidates = kostant::harmonic_components(&g.gp, false);
    let rs = g.gp.rs();
    let mut entries = Vec::new();
    let mut components: Vec<CurvatureComponent> = Vec::new();
    for (k, x) in &harmonic {
        let w = cx.weight(k);
        let matching: Vec<&CurvatureComponent> = candidates.iter().filter(|c| in_module(g, &w, &c.lowvec_sum())).collect();
        for c in &matching {
            if !components.iter().any(|d| (d.a, d.b, d.copy) == (c.a, c.b, c.copy)) {
                components.push((*c).clone());
            }
        }
        let name = |l: usize| g.alg.names[t.minus[l]].clone();
        entries.push(HarmonicEntry {
            slot: (name(k.0[0]), name(k.0[1]), g.alg.names[k.1].clone()),
            coefficient: x.to_string(),
            weight: w,
            labels: matching.iter().map(|c| c.label(rs)).collect(),
        });
    }
    components.sort_by_key(|c| (c.a, c.b, c.copy));
    Ok(HarmonicReport {
        is_regular,
        is_normal,
        component_labels: components.iter().map(|c| c.label(rs)).collect(),
        components,
        harmonic_part: harmonic,
        entries,
        second_route_agrees,
    })
}

/// True when `w` is the lowest weight `low` raised by positive roots of `g_0`.
fn in_module(g: &GModel, w: &[i64], low: &[i64]) -> bool {
    w.iter().zip(low).enumerate().all(|(i, (a, b))| if g.gp.in_xi(i) { a == b } else { a >= b })
}

/// The lowest weight cochain `Z_{α_a} ∧ Z_{s_a α_b} ⊗ e_{-s_a s_b μ}` of a component.
pub fn lowest_weight_cochain(t: &CurvatureTensor, g: &GModel, c: &CurvatureComponent) -> Result<Cochain> {
    let [x, y, z] = &c.lowvec;
    let pos = |r: &Root| -> Result<usize> {
        let neg: Root = r.iter().map(|v| -v).collect();
        let idx = g.index_of_root(&neg).ok_or_else(|| Error::NotARoot(neg.clone()))?;
        t.minus.iter().position(|&m| m == idx).ok_or_else(|| Error::Mismatch(format!("{r:?} is not in p_+")))
    };
    let (a, b) = (pos(x)?, pos(y)?);
    let v = g.index_of_root(z).ok_or_else(|| Error::NotARoot(z.clone()))?;
    let (key, s) = if a < b { (vec![a, b], Q::one()) } else { (vec![b, a], -Q::one()) };
    Ok(Cochain::from([((key, v), s)]))
}

/// `Φ(k)`, `Θ(k)`, `Λ(k)` of an extension; indices are 0-based simple roots.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryData {
    pub h_plus_basis: Vec<Vec<String>>,
    pub phi: Vec<usize>,
    pub theta: Vec<usize>,
    pub lambda: Vec<usize>,
    pub harmonic_labels: Vec<String>,
    /// Components `μ` with `Φ(k) ⊄ I_μ`.
    pub phi_violations: Vec<String>,
}

impl SymmetryData {
    pub fn phi_in_every_i_mu(&self) -> bool {
        self.phi_violations.is_empty()
    }
}

pub fn analyze_symmetry_data(e: &ExtensionData) -> Result<SymmetryData> {
    let t = curvature(e)?;
    let hr = harmonic_decompose(&t, &e.g)?;
    symmetry_data_with(e, &hr)
}

/// As [`analyze_symmetry_data`] with a given harmonic report.
pub fn symmetry_data_with(e: &ExtensionData, hr: &HarmonicReport) -> Result<SymmetryData> {
    let g = &e.g;
    let gp = &g.gp;
    let images: QMat = e.h.iter().map(|&i| e.alpha[i].clone()).collect();
    let off_plus: QMat = (0..g.dim()).filter(|&c| g.height(c) <= 0).map(|c| images.iter().map(|v| v[c].clone()).collect()).collect();
    let combos = nullspace(&off_plus, images.len());
    let plus_vectors: QMat = combos.iter().map(|x| (0..g.dim()).map(|c| x.iter().zip(&images).map(|(a, v)| a * &v[c]).sum()).collect()).collect();
    let h_plus = row_basis(&plus_vectors, g.dim());
    let mut phi = Vec::new();
    for &i in gp.xi() {
        let module = gp.simple_module(i).map(|m| m.members.clone()).unwrap_or_default();
        let hit = h_plus.iter().any(|v| v.iter().enumerate().any(|(c, x)| !x.is_zero() && g.root(c).is_some_and(|r| module.contains(r))));
        if hit {
            phi.push(i);
        }
    }
    let theta: Vec<usize> = gp
        .xi()
        .iter()
        .enumerate()
        .filter(|(p, _)| e.j_generators.iter().all(|j| j[*p].is_one()))
        .map(|(_, &i)| i)
        .collect();
    let lambda = gp.xi().iter().copied().filter(|i| !phi.contains(i) && !theta.contains(i)).collect();
    let phi_violations = hr
        .components
        .iter()
        .filter(|c| phi.iter().any(|i| !c.i_mu.contains(i)))
        .map(|c| c.label(gp.rs()))
        .collect();
    Ok(SymmetryData {
        h_plus_basis: h_plus.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
        phi,
        theta,
        lambda,
        harmonic_labels: hr.component_labels.clone(),
        phi_violations,
    })
}

/// Result of a reduction to `(q_{Ξ'}, q_{Ξ'} ∩ p_Ξ)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub extension: ExtensionData,
    pub xi_prime: Vec<usize>,
    /// Roots spanning `g_{Ξ',0} / (g_{Ξ',0} ∩ p_Ξ)`, the fiber type of `VM`.
    pub vertical: Vec<Root>,
    /// Roots spanning `g_{Ξ',-}`, the fiber type of `T^{Ξ',-}M`.
    pub horizontal: Vec<Root>,
    /// The reduced `α` agrees with the original modulo `p_Ξ`.
    pub congruent: bool,
}

/// Drops the `p_{Ξ',+}` part of `α`; requires `α(h) ⊆ q_{Ξ'}`. `xi_prime` is 0-based.
pub fn reduce_geometry(e: &ExtensionData, xi_prime: &[usize]) -> Result<Reduction> {
    let g = &e.g;
    let mut xp = xi_prime.to_vec();
    xp.sort_unstable();
    xp.dedup();
    if let Some(i) = xp.iter().find(|i| !g.gp.in_xi(**i)) {
        return Err(Error::InvalidXi(format!("α{} is not in Ξ", i + 1)));
    }
    for &i in &e.h {
        for (c, x) in e.alpha[i].iter().enumerate() {
            if !x.is_zero() && g.height_in(c, &xp) > 0 {
                return Err(Error::Reduction { h_vector: i, root: g.weight(c) });
            }
        }
    }
    let mut reduced = e.clone();
    for row in &mut reduced.alpha {
        for (c, x) in row.iter_mut().enumerate() {
            if g.height_in(c, &xp) > 0 {
                *x = Q::zero();
            }
        }
    }
    let congruent = e.alpha.iter().zip(&reduced.alpha).all(|(a, b)| {
        a.iter().zip(b).enumerate().all(|(c, (x, y))| x == y || g.height(c) >= 0)
    });
    let roots = |f: &dyn Fn(usize) -> bool| -> Vec<Root> { (0..g.dim()).filter(|&c| g.root(c).is_some() && f(c)).map(|c| g.weight(c)).collect() };
    Ok(Reduction {
        vertical: roots(&|c| g.height_in(c, &xp) == 0 && g.height(c) < 0),
        horizontal: roots(&|c| g.height_in(c, &xp) < 0),
        extension: reduced,
        xi_prime: xp,
        congruent,
    })
}

/// `Ad_{exp Y}` applied to `v`.
pub fn ad_exp(g: &GModel, y: &[Q], v: &[Q]) -> Vec<Q> {
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    let mut k = 1i64;
    loop {
        term = g.alg.bracket(y, &term);
        if term.iter().all(Zero::is_zero) {
            return out;
        }
        let f = Q::from_integer(k.into()).recip();
        term.iter_mut().for_each(|x| *x *= &f);
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
        k += 1;
    }
}

/// Conjugates every row of `α` by `exp(Y)`.
pub fn conjugate_extension(e: &ExtensionData, y: &[Q]) -> ExtensionData {
    let mut out = e.clone();
    out.alpha = e.alpha.iter().map(|row| ad_exp(&e.g, y, row)).collect();
    out
}

/// Factors of a normalizing conjugation, lowest level first.
#[derive(Clone, Debug)]
pub struct Normalization {
    /// `(Λ-level, Y)` with `p = … exp(Y_2) exp(Y_1)`.
    pub factors: Vec<(i64, Vec<Q>)>,
    pub extension: ExtensionData,
}

impl Normalization {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

/// True when `α(h) ⊆ q_Λ`.
pub fn isotropy_in_q(e: &ExtensionData, lambda: &[usize]) -> bool {
    e.h.iter().all(|&i| e.alpha[i].iter().enumerate().all(|(c, x)| x.is_zero() || e.g.height_in(c, lambda) <= 0))
}

/// Conjugates `α` level by level so that `α(h) ⊆ q_Λ`, with `Y` ranging over
/// `m ∩ p_{Λ,+}`; `m_roots = None` allows all of `p_{Λ,+}`. `lambda` is 0-based.
pub fn normalize_isotropy(e: &ExtensionData, lambda: &[usize], m_roots: Option<&[Root]>) -> Result<Normalization> {
    let g = &e.g;
    if let Some(i) = lambda.iter().find(|i| !g.gp.in_xi(**i)) {
        return Err(Error::InvalidXi(format!("α{} is not in Ξ", i + 1)));
    }
    let depth = (0..g.dim()).map(|c| g.height_in(c, lambda)).max().unwrap_or(0);
    let mut cur = e.clone();
    let mut factors = Vec::new();
    for level in 1..=depth {
        let zs: QMat = cur.h.iter().map(|&i| cur.alpha[i].clone()).collect();
        let at_level: Vec<usize> = (0..g.dim()).filter(|&c| g.height_in(c, lambda) == level).collect();
        if zs.iter().all(|z| at_level.iter().all(|&c| z[c].is_zero())) {
            continue;
        }
        let unknowns: Vec<usize> =
            at_level.iter().copied().filter(|&c| m_roots.is_none_or(|m| g.root(c).is_some_and(|r| m.contains(r)))).collect();
        let mut a: QMat = Vec::new();
        let mut b: Vec<Q> = Vec::new();
        for z in &zs {
            let z0: Vec<Q> = z.iter().enumerate().map(|(c, x)| if g.height_in(c, lambda) == 0 { x.clone() } else { Q::zero() }).collect();
            let cols: Vec<Vec<Q>> = unknowns.iter().map(|&u| g.alg.bracket(&to_dense(&[(u, Q::one())], g.dim()), &z0)).collect();
            for &c in &at_level {
                a.push(cols.iter().map(|col| col[c].clone()).collect());
                b.push(-z[c].clone());
            }
        }
        let Some(x) = solve(&a, &b, unknowns.len()) else {
            let c = at_level.iter().copied().find(|&c| zs.iter().any(|z| !z[c].is_zero())).expect("some entry is nonzero");
            return Err(Error::Obstruction { level, root: g.weight(c) });
        };
        let mut y = vec![Q::zero(); g.dim()];
        for (u, v) in unknowns.iter().zip(x) {
            y[*u] = v;
        }
        cur = conjugate_extension(&cur, &y);
        factors.push((level, y));
    }
    Ok(Normalization { factors, extension: cur })
}

#[derive(Clone, Debug)]
pub struct TwistorSubalgebra {
    /// Echelon basis of `l = α^{-1}(p_{Ξ - psi1})`.
    pub l_basis: QMat,
    pub closed: bool,
    /// `(-1)`-eigenspace of the supplied involution, when given.
    pub m_basis: Option<QMat>,
    pub symmetric_pair: Option<bool>,
}

/// `l = α^{-1}(p_{Ξ-psi1})` and, for an involutive `j`, the check `[m, m] ⊆ l`.
/// `psi1` is 0-based; `involution` lists eigenvalues on the positions of Ξ.
pub fn twistor_subalgebra(e: &ExtensionData, psi1: &[usize], involution: Option<&[Q]>) -> Result<TwistorSubalgebra> {
    let g = &e.g;
    let rest: Vec<usize> = g.gp.xi().iter().copied().filter(|i| !psi1.contains(i)).collect();
    let preimage = |bad: &dyn Fn(usize) -> bool| -> QMat {
        let rows: QMat = (0..g.dim()).filter(|&c| bad(c)).map(|c| e.alpha.iter().map(|r| r[c].clone()).collect()).collect();
        row_basis(&nullspace(&rows, e.k.dim), e.k.dim)
    };
    let l = preimage(&|c| g.height_in(c, &rest) < 0);
    let closed = e.k.is_subalgebra(&l);
    let (m_basis, symmetric_pair) = match involution {
        None => (None, None),
        Some(j) => {
            if j.len() != g.gp.xi().len() || j.iter().any(|x| *x != Q::one() && *x != -Q::one()) {
                return Err(Error::Invalid("involution must have eigenvalues ±1 on Ξ".into()));
            }
            let eig = |c: usize| -> Q {
                let d = g.gp.xi_degree(&g.weight(c));
                d.iter().zip(j).filter(|(k, _)| **k % 2 != 0).fold(Q::one(), |acc, (_, x)| acc * x)
            };
            let m = preimage(&|c| eig(c).is_one());
            let plus = preimage(&|c| !eig(c).is_one());
            if m.len() + plus.len() != e.k.dim {
                return Err(Error::Invalid("alpha(k) is not invariant under the involution".into()));
            }
            let ok = m.iter().enumerate().all(|(a, u)| m[a + 1..].iter().all(|v| in_span(&l, &e.k.bracket(u, v), e.k.dim)));
            (Some(m), Some(ok))
        }
    };
    Ok(TwistorSubalgebra { l_basis: l, closed, m_basis, symmetric_pair })
}
