//! Harmonic curvature components, their homogeneities, `I_μ`, `Ψ` and twistor regularity.
//!
//! A component is written `(α_a, α_b)` and has highest weight `s_a s_b · μ`, the affine
//! action of the Weyl element on the highest root. On a doubled diagram the
//! coefficient module has two simple summands, so a component also records the copy
//! `v` whose highest root `μ_v` is used.

use crate::error::{Error, Result};
use crate::grading::GradedParabolic;
use crate::rootsys::{Rat, Root, RootSystem, Weight};
use num::{Signed, Zero};
use serde::Serialize;

/// Which root is paired with `α_a` in the lowest weight vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LowvecConvention {
    /// `X^{α_a} ∧ X^{s_a(α_b)}`; reproduces the tables.
    #[default]
    ReflectB,
    /// `X^{α_a} ∧ X^{s_b(α_a)}`.
    ReflectA,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureComponent {
    pub a: usize,
    pub b: usize,
    /// Copy of the coefficient module (always 0 unless the diagram is doubled).
    pub copy: usize,
    pub weight: Weight,
    /// `(α_a, s_a(α_b), -s_a s_b(μ))`.
    pub lowvec: [Root; 3],
    /// Indexed by the positions of Ξ.
    pub homogeneity: Vec<i64>,
    pub i_mu: Vec<usize>,
    pub neg_set: Vec<usize>,
}

impl CurvatureComponent {
    pub fn total(&self) -> i64 {
        self.homogeneity.iter().sum()
    }

    pub fn commuting(&self, rs: &RootSystem) -> bool {
        rs.cartan()[self.a][self.b] == 0
    }

    /// Label such as `(α2,α1)`, with `@0` appended when the copy differs from that of `α_a`.
    pub fn label(&self, rs: &RootSystem) -> String {
        let mut s = format!("(α{},α{})", rs.label(self.a), rs.label(self.b));
        if self.copy != rs.copy_of(self.a) {
            s.push_str(&format!("@{}", self.copy));
        }
        s
    }

    /// Sum of the three lowest-weight-vector roots.
    pub fn lowvec_sum(&self) -> Root {
        let [x, y, z] = &self.lowvec;
        x.iter().zip(y).zip(z).map(|((a, b), c)| a + b + c).collect()
    }
}

/// Table record for a component.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentRecord {
    pub algebra: String,
    pub xi: Vec<String>,
    pub mu: [String; 2],
    pub copy: usize,
    pub homogeneity: Vec<i64>,
    pub i_mu: Vec<String>,
}

impl ComponentRecord {
    pub fn new(c: &CurvatureComponent, gp: &GradedParabolic) -> Self {
        let rs = gp.rs();
        ComponentRecord {
            algebra: rs.algebra_name(),
            xi: gp.xi_labels(),
            mu: [rs.label(c.a), rs.label(c.b)],
            copy: c.copy,
            homogeneity: c.homogeneity.clone(),
            i_mu: c.i_mu.iter().map(|&i| rs.label(i)).collect(),
        }
    }
}

/// Length-two Hasse condition for the pair `(a, b)`.
pub fn admissible(gp: &GradedParabolic, a: usize, b: usize) -> bool {
    let rs = gp.rs();
    if a == b || !gp.in_xi(a) {
        return false;
    }
    // (a,b) and (b,a) give the same Weyl element when the reflections commute.
    if rs.cartan()[a][b] == 0 && a > b {
        return false;
    }
    gp.height(&rs.reflect_root(&rs.simple_root(b), a)) > 0
}

/// Highest weight `s_a s_b · μ_copy`.
pub fn component_weight(rs: &RootSystem, a: usize, b: usize, copy: usize) -> Result<Weight> {
    rs.affine_action(&[b, a], &rs.highest_root_weight(copy))
}

pub fn lowest_weight_vector(rs: &RootSystem, a: usize, b: usize, copy: usize, conv: LowvecConvention) -> [Root; 3] {
    let second = match conv {
        LowvecConvention::ReflectB => rs.reflect_root(&rs.simple_root(b), a),
        LowvecConvention::ReflectA => rs.reflect_root(&rs.simple_root(a), b),
    };
    let mu = rs.highest_root(copy);
    let w = rs.reflect_root(&rs.reflect_root(mu, b), a);
    [rs.simple_root(a), second, w.iter().map(|x| -x).collect()]
}

/// The bullet formulas for the homogeneity with respect to each index in `indices`.
pub fn bullet_homogeneity(rs: &RootSystem, a: usize, b: usize, copy: usize, indices: &[usize]) -> Vec<i64> {
    let k = rs.highest_root(copy);
    let r = rs.highest_root_weight(copy).as_ints().expect("roots have integral weights");
    let ab = rs.cartan()[b][a];
    indices
        .iter()
        .map(|&i| {
            if i == a {
                -k[a] + 1 + r[a] - ab * (1 + r[b])
            } else if i == b {
                -k[b] + 1 + r[b]
            } else {
                -k[i]
            }
        })
        .collect()
}

/// Builds a component of `gp` for the pair `(a, b)` valued in copy `copy`.
pub fn component(gp: &GradedParabolic, a: usize, b: usize, copy: usize) -> Result<CurvatureComponent> {
    component_with(gp, a, b, copy, LowvecConvention::default())
}

pub fn component_with(
    gp: &GradedParabolic,
    a: usize,
    b: usize,
    copy: usize,
    conv: LowvecConvention,
) -> Result<CurvatureComponent> {
    let rs = gp.rs();
    rs.check_index(a)?;
    rs.check_index(b)?;
    if copy >= rs.copies() {
        return Err(Error::Mismatch(format!("copy {copy} does not exist")));
    }
    if !admissible(gp, a, b) {
        return Err(Error::Mismatch(format!(
            "(α{},α{}) is not a component for Ξ = {{{}}}",
            rs.label(a),
            rs.label(b),
            gp.xi_labels().join(",")
        )));
    }
    let weight = component_weight(rs, a, b, copy)?;
    let i_mu = gp.xi().iter().copied().filter(|&i| weight.fw[i].is_zero()).collect();
    let neg_set = (0..rs.n()).filter(|&i| weight.fw[i].is_negative()).collect();
    Ok(CurvatureComponent {
        a,
        b,
        copy,
        lowvec: lowest_weight_vector(rs, a, b, copy, conv),
        homogeneity: bullet_homogeneity(rs, a, b, copy, gp.xi()),
        weight,
        i_mu,
        neg_set,
    })
}

/// All components of `H^2` for the grading, sorted by `(a, b, copy)`.
pub fn harmonic_components(gp: &GradedParabolic, regular_only: bool) -> Vec<CurvatureComponent> {
    let rs = gp.rs();
    let mut out = Vec::new();
    for &a in gp.xi() {
        for b in 0..rs.n() {
            if !admissible(gp, a, b) {
                continue;
            }
            for copy in 0..rs.copies() {
                let c = component(gp, a, b, copy).expect("admissible pair");
                if !regular_only || c.total() > 0 {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Components up to conjugation: on a doubled diagram only copy-0 representatives.
pub fn representatives(gp: &GradedParabolic, regular_only: bool) -> Vec<CurvatureComponent> {
    harmonic_components(gp, regular_only).into_iter().filter(|c| c.copy == 0).collect()
}

/// The conjugate component `(α_{σa}, α_{σb})` valued in the other copy.
pub fn conjugate(c: &CurvatureComponent, gp: &GradedParabolic) -> Result<CurvatureComponent> {
    let rs = gp.rs();
    if !rs.complex_as_real() {
        return Ok(c.clone());
    }
    let (a, b) = (rs.conj(c.a), rs.conj(c.b));
    let (a, b) = if rs.cartan()[a][b] == 0 && a > b { (b, a) } else { (a, b) };
    component(gp, a, b, 1 - c.copy)
}

/// Homogeneity tuple by the bullet formulas.
pub fn homogeneity_tuple(c: &CurvatureComponent, gp: &GradedParabolic) -> Vec<i64> {
    bullet_homogeneity(gp.rs(), c.a, c.b, c.copy, gp.xi())
}

/// Homogeneity tuple read off the lowest weight vector.
pub fn lowvec_homogeneity(c: &CurvatureComponent, gp: &GradedParabolic) -> Vec<i64> {
    gp.xi_degree(&c.lowvec_sum())
}

/// `{α_i ∈ Ξ : <weight, α_i> = 0}`.
pub fn i_mu(c: &CurvatureComponent, gp: &GradedParabolic) -> Vec<usize> {
    gp.xi().iter().copied().filter(|&i| c.weight.fw[i].is_zero()).collect()
}

/// `I_μ` read as restricted simple roots: the first-copy indices `i` with both `α_i` and
/// `α_{i'}` in `I_μ`. Equal to [`i_mu`] for real forms.
pub fn restricted_i_mu(c: &CurvatureComponent, gp: &GradedParabolic) -> Vec<usize> {
    let rs = gp.rs();
    let i = i_mu(c, gp);
    if !rs.complex_as_real() {
        return i;
    }
    i.iter().copied().filter(|&k| k < rs.rank() && i.contains(&rs.conj(k))).collect()
}

/// Checks the negativity dichotomy: only `α_a` pairs negatively, or exactly `α_a` and
/// `α_b` when the two roots are orthogonal.
pub fn dichotomy_holds(c: &CurvatureComponent, rs: &RootSystem) -> bool {
    let mut want = vec![c.a];
    if c.commuting(rs) {
        want.push(c.b);
        want.sort_unstable();
    }
    c.neg_set == want
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativityCertificate {
    pub component: (usize, usize, usize),
    pub negative: Vec<usize>,
    pub dichotomy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub psi: Vec<usize>,
    pub certificates: Vec<NegativityCertificate>,
}

/// `Ψ = {α_i ∈ Ξ : <weight_μ, α_i> ≥ 0 for every supplied μ}`.
pub fn psi(components: &[CurvatureComponent], gp: &GradedParabolic) -> Result<PsiReport> {
    if components.is_empty() {
        return Err(Error::Empty("component list"));
    }
    let rs = gp.rs();
    let psi = gp
        .xi()
        .iter()
        .copied()
        .filter(|&i| components.iter().all(|c| c.weight.fw[i] >= Rat::zero()))
        .collect();
    let certificates = components
        .iter()
        .map(|c| NegativityCertificate {
            component: (c.a, c.b, c.copy),
            negative: c.neg_set.clone(),
            dichotomy: dichotomy_holds(c, rs),
        })
        .collect();
    Ok(PsiReport { psi, certificates })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistorRegularity {
    pub regular: bool,
    /// Components whose homogeneity with respect to `Ξ - psi1` is not positive.
    pub offending: Vec<(CurvatureComponent, Vec<i64>)>,
}

/// Regularity of the components with respect to the coarser grading by `Ξ - psi1`.
pub fn twistor_regularity(
    gp: &GradedParabolic,
    psi1: &[usize],
    components: &[CurvatureComponent],
) -> Result<TwistorRegularity> {
    let report = psi(components, gp)?;
    if psi1.iter().any(|i| !report.psi.contains(i)) {
        return Err(Error::NotInPsi { psi1: psi1.to_vec(), psi: report.psi });
    }
    let rest: Vec<usize> = gp.xi().iter().copied().filter(|i| !psi1.contains(i)).collect();
    let offending: Vec<_> = components
        .iter()
        .filter_map(|c| {
            let h = bullet_homogeneity(gp.rs(), c.a, c.b, c.copy, &rest);
            (h.iter().sum::<i64>() <= 0).then(|| (c.clone(), h))
        })
        .collect();
    Ok(TwistorRegularity { regular: offending.is_empty(), offending })
}
