//! Eigenvalue equations `∏ j_i^{a_i} = 1` and their solution families.
//!
//! An eigenvalue is written `j_i = exp(x_i + 2πi t_i)`. A system splits into a real
//! linear system for the moduli `x` and a lattice congruence `M t ∈ Z^m` for the
//! angles, which is solved by Smith normal form. A family is one Galois orbit of
//! connected components of the locus where exactly a given set of module
//! characters is identically 1.

pub mod scan;

use crate::error::{Error, Result};
use crate::grading::GradedParabolic;
use crate::kostant::{self, CurvatureComponent};
use crate::linalg::{self, q, Q, QMat};
use crate::rootsys::{Family, RootSystem};
use crate::snf;
use num::integer::{gcd, lcm};
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

/// Real forms supported by the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RealForm {
    /// Split real form; eigenvalues are real.
    Split,
    /// Complex algebra viewed as real, modelled on the doubled diagram.
    Complex,
    /// Quasi-split unitary form `su(q, n+1-q)` of type A; the diagram flip conjugates.
    Unitary,
}

impl FromStr for RealForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "R" | "SPLIT" => Ok(RealForm::Split),
            "C" | "COMPLEX" => Ok(RealForm::Complex),
            "U" | "SU" | "UNITARY" => Ok(RealForm::Unitary),
            _ => Err(Error::Invalid(format!("unknown real form {s}"))),
        }
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealForm::Split => "R",
            RealForm::Complex => "C",
            RealForm::Unitary => "U",
        })
    }
}

/// Root system carrying the given real form.
pub fn root_system(family: Family, rank: usize, rf: RealForm) -> Result<RootSystem> {
    if rf == RealForm::Unitary && family != Family::A {
        return Err(Error::Unsupported { family: format!("{family} (unitary)"), rank });
    }
    RootSystem::new(family, rank, rf == RealForm::Complex)
}

/// Where a single eigenvalue may live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Domain {
    /// `±e^r`.
    Real,
    /// Unit circle `e^{iφ}`.
    Circle,
    /// Any nonzero complex number.
    Free,
    /// Complex conjugate of the eigenvalue at the given Ξ position.
    Paired(usize),
}

/// A `p_{Ξ,+}` module seen as a character of the eigenvalue torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleChar {
    pub label: String,
    pub degree: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintSystem {
    pub xi: Vec<usize>,
    pub xi_labels: Vec<String>,
    pub rows: Vec<Vec<i64>>,
    pub domains: Vec<Domain>,
    pub modules: Vec<ModuleChar>,
}

/// Builds the constraint system for the given components.
pub fn constraint_system(
    components: &[CurvatureComponent],
    gp: &GradedParabolic,
    rf: RealForm,
) -> Result<ConstraintSystem> {
    if gp.xi().is_empty() {
        return Err(Error::Empty("Ξ"));
    }
    let rs = gp.rs();
    if (rf == RealForm::Complex) != rs.complex_as_real() {
        return Err(Error::Mismatch(format!("real form {rf} does not match the root system")));
    }
    for c in components {
        let fresh = kostant::component(gp, c.a, c.b, c.copy)?;
        if fresh.homogeneity != c.homogeneity {
            return Err(Error::Mismatch(format!("component {} was built for another grading", c.label(rs))));
        }
    }
    let n = gp.xi().len();
    let domains = (0..n)
        .map(|p| {
            let i = gp.xi()[p];
            let partner = match rf {
                RealForm::Split => return Ok(Domain::Real),
                RealForm::Complex => rs.conj(i),
                RealForm::Unitary => rs.rank() - 1 - i,
            };
            if partner == i {
                return Ok(Domain::Real);
            }
            gp.xi_pos(partner)
                .map(Domain::Paired)
                .ok_or_else(|| Error::InvalidXi(format!("Ξ is not closed under conjugation at {}", rs.label(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    let modules = gp
        .plus_modules()
        .iter()
        .map(|m| ModuleChar { label: rs.root_string(&m.label, false), degree: m.xi_degree.clone() })
        .collect();
    Ok(ConstraintSystem {
        xi: gp.xi().to_vec(),
        xi_labels: gp.xi_labels(),
        rows: components.iter().map(|c| c.homogeneity.clone()).collect(),
        domains,
        modules,
    })
}

impl ConstraintSystem {
    /// A system given directly by exponent rows, e.g. for a single diagram with `ℂ*` eigenvalues.
    pub fn from_rows(rows: Vec<Vec<i64>>, domains: Vec<Domain>, modules: Vec<ModuleChar>) -> Self {
        let n = domains.len();
        ConstraintSystem { xi: (0..n).collect(), xi_labels: (1..=n).map(|i| i.to_string()).collect(), rows, domains, modules }
    }

    pub fn n(&self) -> usize {
        self.domains.len()
    }

    fn characters(&self) -> Vec<Vec<i64>> {
        let set: BTreeSet<Vec<i64>> = self.modules.iter().map(|m| m.degree.clone()).collect();
        set.into_iter().collect()
    }

    fn modulus_matrix(&self, extra: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut m: Vec<Vec<i64>> = self.rows.iter().chain(extra).cloned().collect();
        for (i, d) in self.domains.iter().enumerate() {
            match *d {
                Domain::Paired(j) if j > i => m.push(unit(n, i, 1, Some((j, -1)))),
                Domain::Circle => m.push(unit(n, i, 1, None)),
                _ => {}
            }
        }
        m
    }

    fn angle_matrix(&self, extra: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut m: Vec<Vec<i64>> = self.rows.iter().chain(extra).cloned().collect();
        for (i, d) in self.domains.iter().enumerate() {
            match *d {
                Domain::Paired(j) if j > i => m.push(unit(n, i, 1, Some((j, 1)))),
                Domain::Real => m.push(unit(n, i, 2, None)),
                _ => {}
            }
        }
        m
    }

    /// Checks that a point solves every row and respects the domains.
    pub fn satisfied_by(&self, p: &Point) -> bool {
        let n = self.n();
        if p.constant.len() != n {
            return false;
        }
        for row in &self.rows {
            let w: Vec<Q> = row.iter().map(|&x| q(x)).collect();
            if !p.modulus.iter().chain(&p.angle).all(|col| linalg::dot(&w, col).is_zero()) {
                return false;
            }
            if !linalg::dot(&w, &p.constant).is_integer() {
                return false;
            }
        }
        self.domains.iter().enumerate().all(|(i, d)| match *d {
            Domain::Real => p.angle.iter().all(|c| c[i].is_zero()) && (&p.constant[i] * q(2)).is_integer(),
            Domain::Circle => p.modulus.iter().all(|c| c[i].is_zero()),
            Domain::Free => true,
            Domain::Paired(j) => {
                p.modulus.iter().all(|c| c[i] == c[j])
                    && p.angle.iter().all(|c| c[i] == -c[j].clone())
                    && (&p.constant[i] + &p.constant[j]).is_integer()
            }
        })
    }

    /// The characters identically 1 at a point.
    pub fn fixed_at(&self, p: &Point) -> Vec<Vec<i64>> {
        self.characters().into_iter().filter(|d| p.character_trivial(d)).collect()
    }
}

fn unit(n: usize, i: usize, c: i64, other: Option<(usize, i64)>) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    if let Some((j, d)) = other {
        v[j] = d;
    }
    v
}

/// An eigenvalue tuple `j_i = exp(Σ_p modulus[p][i] r_p + 2πi (constant[i] + Σ_p angle[p][i] φ_p))`
/// with `r_p`, `φ_p` treated as independent generic parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub modulus: Vec<Vec<Q>>,
    pub angle: Vec<Vec<Q>>,
    pub constant: Vec<Q>,
}

impl Point {
    /// A point with no parameters and the given angles, as fractions of a full turn.
    pub fn torsion(constant: &[(i64, i64)]) -> Self {
        Point { modulus: vec![], angle: vec![], constant: constant.iter().map(|&(a, b)| linalg::qf(a, b)).collect() }
    }

    pub fn with_modulus(mut self, dir: &[i64]) -> Self {
        self.modulus.push(dir.iter().map(|&x| q(x)).collect());
        self
    }

    pub fn with_angle(mut self, dir: &[(i64, i64)]) -> Self {
        self.angle.push(dir.iter().map(|&(a, b)| linalg::qf(a, b)).collect());
        self
    }

    pub fn character_trivial(&self, d: &[i64]) -> bool {
        let w: Vec<Q> = d.iter().map(|&x| q(x)).collect();
        self.modulus.iter().chain(&self.angle).all(|c| linalg::dot(&w, c).is_zero())
            && linalg::dot(&w, &self.constant).is_integer()
    }
}

/// One solution family.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryFamily {
    /// Degree vectors of the characters identically 1 on the family.
    pub fixed: Vec<Vec<i64>>,
    /// Labels of the fixed modules `m`.
    pub m: Vec<String>,
    /// Modulus directions (reduced echelon rows); `x = Σ r_k modulus[k]`.
    #[serde(skip)]
    pub modulus: QMat,
    /// Angle directions (reduced echelon rows); `t = base + Σ φ_k angle[k]`.
    #[serde(skip)]
    pub angle: QMat,
    #[serde(skip)]
    pub base: Vec<Q>,
    /// Order of the base point modulo the identity component.
    pub order: u64,
    /// Multipliers `k` with `gcd(k, order) = 1` merged into this family.
    pub galois: Vec<u64>,
    /// Whether real-parameter sign changes are merged (parameters range over `ℝ*`).
    pub signed: bool,
    pub trivial: bool,
    pub eigenvalues: Vec<String>,
    #[serde(skip)]
    lattice: FamilyLattice,
}

#[derive(Clone, Debug, Default)]
struct FamilyLattice {
    w: Vec<Vec<i64>>,
    halves: Vec<Vec<Q>>,
}

impl SymmetryFamily {
    /// Base point as `(order, exponent)` per Ξ index: `e^(2πi·exponent/order)`.
    pub fn roots_of_unity(&self) -> Vec<(u64, u64)> {
        self.base
            .iter()
            .map(|t| {
                let f = t - t.floor();
                let d = f.denom().to_u64().expect("torsion orders are small");
                let n = f.numer().to_u64().expect("torsion orders are small");
                (d, n)
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.modulus.len() + self.angle.len()
    }

    /// True when the point lies on (the closure of) this family.
    pub fn contains(&self, p: &Point) -> bool {
        let n = self.base.len();
        if p.constant.len() != n {
            return false;
        }
        let mspan = p.modulus.iter().all(|c| linalg::in_span(&self.modulus, c, n));
        let aspan = p.angle.iter().all(|c| linalg::in_span(&self.angle, c, n));
        if !mspan || !aspan {
            return false;
        }
        let target = key(&self.lattice.w, &p.constant);
        let base = key(&self.lattice.w, &self.base);
        let halves: Vec<Vec<Q>> = self.lattice.halves.iter().map(|h| key(&self.lattice.w, h)).collect();
        let group = half_group(&halves, base.len());
        self.galois.iter().any(|&m| {
            let scaled: Vec<Q> = base.iter().map(|x| frac(&(x * q(m as i64)))).collect();
            group.iter().any(|h| {
                let s: Vec<Q> = scaled.iter().zip(h).map(|(a, b)| frac(&(a + b))).collect();
                s == target
            })
        })
    }

    /// `{α_i ∈ Ξ : the eigenvalue on V_{Ξ,α_i} is identically 1}`, as Ξ positions.
    pub fn theta_positions(&self) -> Vec<usize> {
        (0..self.base.len())
            .filter(|&i| self.fixed.iter().any(|d| d.iter().enumerate().all(|(k, &x)| x == i64::from(k == i))))
            .collect()
    }
}

fn frac(x: &Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

fn key(w: &[Vec<i64>], t: &[Q]) -> Vec<Q> {
    w.iter()
        .map(|row| {
            let v: Vec<Q> = row.iter().map(|&x| q(x)).collect();
            frac(&linalg::dot(&v, t))
        })
        .collect()
}

fn order_of(key: &[Q]) -> u64 {
    key.iter()
        .fold(BigInt::one(), |acc, x| lcm(acc, x.denom().clone()))
        .to_u64()
        .unwrap_or(u64::MAX)
}

/// All sums of subsets of `halves` modulo 1 (a group of exponent 2).
fn half_group(halves: &[Vec<Q>], len: usize) -> Vec<Vec<Q>> {
    let mut group: Vec<Vec<Q>> = vec![vec![Q::zero(); len]];
    for h in halves {
        let extra: Vec<Vec<Q>> =
            group.iter().map(|g| g.iter().zip(h).map(|(a, b)| frac(&(a + b))).collect()).collect();
        for e in extra {
            if !group.contains(&e) {
                group.push(e);
            }
        }
    }
    group
}

struct Solved {
    x_basis: QMat,
    x_lattice: Vec<Vec<i64>>,
    y_basis: QMat,
    y_int: Vec<Vec<i64>>,
    w: Vec<Vec<i64>>,
    components: Vec<Vec<Q>>,
}

/// Caps the number of torsion components enumerated for one system.
const MAX_COMPONENTS: u64 = 1 << 20;

fn solve_system(cs: &ConstraintSystem, extra: &[Vec<i64>]) -> Result<Solved> {
    let n = cs.n();
    let mx = cs.modulus_matrix(extra);
    let (x_basis, x_lattice) = if mx.is_empty() {
        (linalg::identity(n), (0..n).map(|i| unit(n, i, 1, None)).collect())
    } else {
        let s = snf::smith(&mx, n)?;
        debug_assert!(s.verify(&mx));
        let mut xb: QMat = s.kernel_basis().iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        linalg::rref(&mut xb, n);
        (xb, s.kernel_basis())
    };
    let mt = cs.angle_matrix(extra);
    let (diag, vcols, rank) = if mt.is_empty() {
        (vec![], (0..n).map(|i| unit(n, i, 1, None)).collect::<Vec<_>>(), 0)
    } else {
        let s = snf::smith(&mt, n)?;
        debug_assert!(s.verify(&mt));
        (s.diag.clone(), (0..n).map(|k| s.v_col(k)).collect(), s.rank())
    };
    let y_int: Vec<Vec<i64>> = vcols[rank..].to_vec();
    let mut y_basis: QMat = y_int.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    linalg::rref(&mut y_basis, n);
    let w = snf::annihilator(&y_int, n)?;
    let total: u64 = diag.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64)).unwrap_or(u64::MAX);
    if total > MAX_COMPONENTS {
        return Err(Error::Overflow("torsion component count"));
    }
    let mut components = Vec::with_capacity(total as usize);
    let mut digits = vec![0i64; diag.len()];
    loop {
        let mut t = vec![Q::zero(); n];
        for (k, (&c, &d)) in digits.iter().zip(&diag).enumerate() {
            if c != 0 {
                let f = linalg::qf(c, d);
                for (ti, &v) in t.iter_mut().zip(&vcols[k]) {
                    *ti += &f * q(v);
                }
            }
        }
        components.push(t.iter().map(frac).collect());
        let mut k = 0;
        loop {
            if k == diag.len() {
                return Ok(Solved { x_basis, x_lattice, y_basis, y_int, w, components });
            }
            digits[k] += 1;
            if digits[k] < diag[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn trivial_on(d: &[i64], s: &Solved, t: &[Q]) -> bool {
    let dot_i = |v: &[i64]| d.iter().zip(v).map(|(a, b)| a * b).sum::<i64>();
    s.x_lattice.iter().all(|v| dot_i(v) == 0)
        && s.y_int.iter().all(|v| dot_i(v) == 0)
        && linalg::dot(&d.iter().map(|&x| q(x)).collect::<Vec<_>>(), t).is_integer()
}

/// Solves the system and returns all families, nontrivial ones first.
pub fn solve_symmetries(cs: &ConstraintSystem) -> Result<Vec<SymmetryFamily>> {
    let chars = cs.characters();
    let mut families = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([vec![]]);
    seen.insert(vec![]);
    while let Some(sset) = queue.pop_front() {
        let extra: Vec<Vec<i64>> = sset.iter().map(|&k| chars[k].clone()).collect();
        let solved = solve_system(cs, &extra)?;
        let mut exact = Vec::new();
        for t in &solved.components {
            let fixed: Vec<usize> = (0..chars.len()).filter(|&k| trivial_on(&chars[k], &solved, t)).collect();
            if fixed == sset {
                exact.push(t.clone());
                for k in 0..chars.len() {
                    if !fixed.contains(&k) {
                        let mut next = fixed.clone();
                        next.push(k);
                        next.sort_unstable();
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            } else if seen.insert(fixed.clone()) {
                queue.push_back(fixed);
            }
        }
        families.extend(merge_components(cs, &chars, &sset, &solved, exact));
    }
    families.sort_by(|a, b| {
        a.trivial
            .cmp(&b.trivial)
            .then_with(|| b.dim().cmp(&a.dim()))
            .then_with(|| a.fixed.cmp(&b.fixed))
            .then_with(|| a.base.cmp(&b.base))
    });
    Ok(families)
}

fn merge_components(
    cs: &ConstraintSystem,
    chars: &[Vec<i64>],
    sset: &[usize],
    solved: &Solved,
    mut comps: Vec<Vec<Q>>,
) -> Vec<SymmetryFamily> {
    comps.sort();
    let halves: Vec<Vec<Q>> =
        solved.x_lattice.iter().map(|l| l.iter().map(|&x| linalg::qf(x, 2)).collect()).collect();
    let group = half_group(&halves.iter().map(|h| key(&solved.w, h)).collect::<Vec<_>>(), solved.w.len());
    let keys: Vec<Vec<Q>> = comps.iter().map(|t| key(&solved.w, t)).collect();
    let mut used = vec![false; comps.len()];
    let mut out = Vec::new();
    for i in 0..comps.len() {
        if used[i] {
            continue;
        }
        let order = order_of(&keys[i]);
        let mut galois = Vec::new();
        let mut signed = false;
        for m in 1..=order.max(1) {
            if gcd(m, order.max(1)) != 1 {
                continue;
            }
            let scaled: Vec<Q> = keys[i].iter().map(|x| frac(&(x * q(m as i64)))).collect();
            let mut hit = false;
            for (gi, h) in group.iter().enumerate() {
                let target: Vec<Q> = scaled.iter().zip(h).map(|(a, b)| frac(&(a + b))).collect();
                if let Some(j) = keys.iter().position(|k| *k == target) {
                    hit = true;
                    if !used[j] {
                        used[j] = true;
                        signed |= gi > 0;
                    }
                }
            }
            if hit {
                galois.push(m);
            }
        }
        let base = comps[i].clone();
        let fixed: Vec<Vec<i64>> = sset.iter().map(|&k| chars[k].clone()).collect();
        let trivial = solved.x_lattice.is_empty() && solved.y_int.is_empty() && base.iter().all(Zero::is_zero);
        let m = cs.modules.iter().filter(|md| fixed.contains(&md.degree)).map(|md| md.label.clone()).collect();
        let eigenvalues = describe(&solved.x_basis, &solved.y_basis, &base, order, galois.len() > 1, signed, &halves);
        out.push(SymmetryFamily {
            fixed,
            m,
            modulus: solved.x_basis.clone(),
            angle: solved.y_basis.clone(),
            base,
            order,
            galois,
            signed,
            trivial,
            eigenvalues,
            lattice: FamilyLattice { w: solved.w.clone(), halves: halves.clone() },
        });
    }
    out
}

fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn linear_term(coeffs: &[(Q, String)]) -> String {
    let mut s = String::new();
    for (c, name) in coeffs {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if neg {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            s.push_str(&fmt_q(&a));
        }
        s.push_str(name);
    }
    s
}

fn describe(x: &QMat, y: &QMat, base: &[Q], order: u64, galois: bool, signed: bool, halves: &[Vec<Q>]) -> Vec<String> {
    (0..base.len())
        .map(|i| {
            let t = &base[i];
            let mut head = if t.is_zero() {
                String::new()
            } else if *t == linalg::qf(1, 2) {
                "-".to_string()
            } else if galois {
                let k = (t * q(order as i64)).to_integer();
                if k.is_one() { format!("√[{order}]1") } else { format!("√[{order}]1^{k}") }
            } else {
                format!("e^(2πi·{})", fmt_q(t))
            };
            if signed && halves.iter().any(|h| !h[i].is_integer()) {
                head = if head.is_empty() { "±".into() } else { format!("±{head}") };
            }
            let mut terms: Vec<(Q, String)> = x.iter().enumerate().map(|(k, r)| (r[i].clone(), format!("r{}", k + 1))).collect();
            terms.extend(y.iter().enumerate().map(|(k, r)| (r[i].clone(), format!("iφ{}", k + 1))));
            let lin = linear_term(&terms);
            match (head.as_str(), lin.is_empty()) {
                ("", true) => "1".into(),
                ("-", true) => "-1".into(),
                ("±", true) => "±1".into(),
                (h, true) => h.to_string(),
                (h, false) if h.is_empty() || h == "-" || h == "±" => format!("{h}e^({lin})"),
                (h, false) => format!("{h}·e^({lin})"),
            }
        })
        .collect()
}

/// The fixed modules of a family, by label.
pub fn fixed_modules(f: &SymmetryFamily) -> Vec<String> {
    f.m.clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSets {
    pub theta: Vec<usize>,
    pub phi_bound: Vec<usize>,
    pub lambda: Vec<usize>,
}

/// Θ over the supplied families, Φ bound `∩ I_μ` and `Λ = Ξ - Φ - Θ`.
pub fn derive_sets(
    families: &[SymmetryFamily],
    components: &[CurvatureComponent],
    gp: &GradedParabolic,
) -> Result<DerivedSets> {
    if families.is_empty() {
        return Err(Error::Empty("family list"));
    }
    let xi = gp.xi();
    let mut theta: BTreeSet<usize> = xi.iter().copied().collect();
    for f in families.iter().filter(|f| !f.trivial) {
        let t: BTreeSet<usize> = f.theta_positions().into_iter().map(|p| xi[p]).collect();
        theta = theta.intersection(&t).copied().collect();
    }
    let mut phi: BTreeSet<usize> = xi.iter().copied().collect();
    for c in components {
        phi = phi.intersection(&c.i_mu.iter().copied().collect()).copied().collect();
    }
    if components.is_empty() {
        phi.clear();
    }
    let lambda = xi.iter().copied().filter(|i| !phi.contains(i) && !theta.contains(i)).collect();
    Ok(DerivedSets { theta: theta.into_iter().collect(), phi_bound: phi.into_iter().collect(), lambda })
}

/// `Θ` and `Λ` for the symmetry group generated by one family.
pub fn family_sets(f: &SymmetryFamily, components: &[CurvatureComponent], gp: &GradedParabolic) -> DerivedSets {
    derive_sets(std::slice::from_ref(f), components, gp).expect("one family supplied")
}

/// True when some component of the full solution group has no simple-root eigenvalue
/// identically 1, i.e. a nontrivial family with `Θ = ∅` exists.
pub fn generic_theta_empty(cs: &ConstraintSystem) -> Result<bool> {
    let n = cs.n();
    let solved = solve_system(cs, &[])?;
    let simple: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, 1, None)).collect();
    Ok(solved.components.iter().any(|t| simple.iter().all(|d| !trivial_on(d, &solved, t))))
}

/// Table record for one family.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyRecord {
    pub algebra: String,
    pub xi: Vec<String>,
    pub components: Vec<String>,
    pub eigenvalues: Vec<String>,
    pub torsion: u64,
    /// Base point per Ξ index as `(order, exponent)`.
    pub roots_of_unity: Vec<(u64, u64)>,
    pub m: Vec<String>,
    pub theta: Vec<String>,
    pub lambda: Vec<String>,
    /// Per component, in the order of `components`.
    pub homogeneity: Vec<Vec<i64>>,
    pub i_mu: Vec<Vec<String>>,
}

impl FamilyRecord {
    pub fn new(f: &SymmetryFamily, components: &[CurvatureComponent], gp: &GradedParabolic) -> Self {
        let rs = gp.rs();
        let sets = family_sets(f, components, gp);
        FamilyRecord {
            algebra: rs.algebra_name(),
            xi: gp.xi_labels(),
            components: components.iter().map(|c| c.label(rs)).collect(),
            eigenvalues: f.eigenvalues.clone(),
            torsion: f.order,
            roots_of_unity: f.roots_of_unity(),
            m: f.m.clone(),
            theta: sets.theta.iter().map(|&i| rs.label(i)).collect(),
            lambda: sets.lambda.iter().map(|&i| rs.label(i)).collect(),
            homogeneity: components.iter().map(|c| c.homogeneity.clone()).collect(),
            i_mu: components.iter().map(|c| c.i_mu.iter().map(|&i| rs.label(i)).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::harmonic_components;

    fn sl(n: usize, xi: &[usize]) -> GradedParabolic {
        GradedParabolic::from_labels(RootSystem::new(Family::A, n, false).unwrap(), xi).unwrap()
    }

    #[test]
    fn sl_example_families() {
        let g = sl(4, &[1, 2]);
        let cs = harmonic_components(&g, true);
        let sys = constraint_system(&cs, &g, RealForm::Split).unwrap();
        assert_eq!(sys.rows, vec![vec![2, 0], vec![1, 2]]);
        let fams = solve_symmetries(&sys).unwrap();
        let nontrivial: Vec<_> = fams.iter().filter(|f| !f.trivial).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].eigenvalues, vec!["1", "-1"]);
        let d = derive_sets(&fams, &cs, &g).unwrap();
        assert_eq!(d.theta, vec![0]);
        assert_eq!(d.lambda, vec![1]);
    }

    #[test]
    fn single_row_over_reals_and_complex() {
        let modules = vec![
            ModuleChar { label: "a".into(), degree: vec![1] },
            ModuleChar { label: "b".into(), degree: vec![2] },
            ModuleChar { label: "c".into(), degree: vec![3] },
        ];
        let real = ConstraintSystem::from_rows(vec![vec![4]], vec![Domain::Real], modules.clone());
        let f = solve_symmetries(&real).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].eigenvalues, vec!["-1"]);
        assert_eq!(f[0].m, vec!["b"]);
        let cx = ConstraintSystem::from_rows(vec![vec![4]], vec![Domain::Free], modules);
        let f = solve_symmetries(&cx).unwrap();
        assert_eq!(f.len(), 3);
        let quarter = f.iter().find(|x| x.order == 4).unwrap();
        assert_eq!(quarter.galois, vec![1, 3]);
        assert!(quarter.m.is_empty());
    }

    #[test]
    fn empty_system_is_free() {
        let sys = ConstraintSystem::from_rows(vec![], vec![Domain::Real], vec![ModuleChar { label: "a".into(), degree: vec![1] }]);
        let f = solve_symmetries(&sys).unwrap();
        assert_eq!(f[0].dim(), 1);
        assert!(f[0].signed);
        assert_eq!(f[0].eigenvalues, vec!["±e^(r1)"]);
    }

    #[test]
    fn membership() {
        let g = sl(4, &[1, 2]);
        let cs = vec![kostant::component(&g, 0, 1, 0).unwrap()];
        let sys = constraint_system(&cs, &g, RealForm::Split).unwrap();
        let fams = solve_symmetries(&sys).unwrap();
        let p = Point::torsion(&[(1, 2), (0, 1)]).with_modulus(&[0, 1]);
        assert!(sys.satisfied_by(&p));
        let fixed = sys.fixed_at(&p);
        let f = fams.iter().find(|f| f.fixed == fixed && f.contains(&p)).unwrap();
        assert!(f.m.is_empty());
        let p = Point::torsion(&[(1, 2), (1, 2)]);
        let f = fams.iter().find(|f| f.fixed == sys.fixed_at(&p) && f.contains(&p)).unwrap();
        assert_eq!(f.fixed, vec![vec![1, 1]]);
    }
}
