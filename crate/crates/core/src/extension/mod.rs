//! Concrete homogeneous models given by extension data `(k, h, α)` into a graded `sl(n+1)`.
//!
//! Basis indices in the JSON form are 0-based; Ξ is given by 1-based simple-root labels.

pub mod algebra;
pub mod analysis;
pub mod cochain;
pub mod model;

pub use algebra::{GModel, StructAlgebra};
pub use analysis::*;

use crate::error::{Error, Result};
use crate::linalg::{in_span, nullspace, rank, QMat, Q};
use crate::rootsys::Family;
use crate::symsolve::RealForm;
use algebra::{to_dense, to_sparse};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Exact data of an extension of `(k, h)` to `(g, p_Ξ)`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub k: StructAlgebra,
    pub h: Vec<usize>,
    pub g: GModel,
    /// Row `i` holds the coordinates of `α(e_i)` in the basis of `g`.
    pub alpha: QMat,
    /// Eigenvalue tuples on the positions of Ξ.
    pub j_generators: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootBasisJson {
    pub root: Vec<i64>,
    pub index: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GJson {
    pub family: String,
    pub rank: usize,
    pub real_form: String,
    pub xi: Vec<usize>,
    pub root_basis: Vec<RootBasisJson>,
}

/// Bracket `[e_i, e_j] = Σ c·e_k` with rational coefficients as strings.
pub type BracketEntry = (usize, usize, Vec<(String, usize)>);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub g: GJson,
    pub k: KJson,
    pub h: Vec<usize>,
    pub alpha: Vec<Vec<String>>,
    pub j_generators: Vec<Vec<String>>,
}

pub fn parse_rational(s: &str) -> Result<Q> {
    s.trim().parse::<Q>().map_err(|_| Error::Schema(format!("not a rational literal: {s:?}")))
}

pub fn format_rational(x: &Q) -> String {
    x.to_string()
}

impl ExtensionData {
    pub fn from_json(j: &ExtensionJson) -> Result<Self> {
        let family: Family = j.g.family.parse().map_err(|_| Error::Schema(format!("unknown family {:?}", j.g.family)))?;
        if family != Family::A {
            return Err(Error::Unsupported { family: j.g.family.clone(), rank: j.g.rank });
        }
        let form: RealForm = j.g.real_form.parse().map_err(|_| Error::Schema(format!("unknown real form {:?}", j.g.real_form)))?;
        if form != RealForm::Split {
            return Err(Error::Unsupported { family: format!("{} ({form})", j.g.family), rank: j.g.rank });
        }
        let xi = j
            .g
            .xi
            .iter()
            .map(|&l| l.checked_sub(1).ok_or_else(|| Error::Schema("xi labels start at 1".into())))
            .collect::<Result<Vec<_>>>()?;
        let g = GModel::sl(j.g.rank, &xi)?;
        for rb in &j.g.root_basis {
            if rb.index >= g.dim() || g.root(rb.index) != Some(&rb.root) {
                return Err(Error::Schema(format!("root_basis entry {:?} at {} does not match the sl basis", rb.root, rb.index)));
            }
        }
        let names = if j.k.names.is_empty() { (1..=j.k.dim).map(|i| format!("X{i}")).collect() } else { j.k.names.clone() };
        let brackets = j
            .k
            .brackets
            .iter()
            .map(|(a, b, v)| Ok((*a, *b, v.iter().map(|(x, i)| Ok((*i, parse_rational(x)?))).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<Vec<_>>>()?;
        let k = StructAlgebra::from_brackets(j.k.dim, names, brackets)?;
        k.check_jacobi()?;
        if let Some(&i) = j.h.iter().find(|&&i| i >= k.dim) {
            return Err(Error::Schema(format!("h index {i} out of range")));
        }
        if j.alpha.len() != k.dim || j.alpha.iter().any(|r| r.len() != g.dim()) {
            return Err(Error::Schema(format!("alpha must be {} x {}", k.dim, g.dim())));
        }
        let alpha = j.alpha.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect::<Result<QMat>>()?;
        let j_generators = j
            .j_generators
            .iter()
            .map(|r| {
                if r.len() != xi.len() {
                    return Err(Error::Schema("j generator length differs from |Ξ|".into()));
                }
                r.iter().map(|s| parse_rational(s)).collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtensionData { k, h: j.h.clone(), g, alpha, j_generators })
    }

    pub fn to_json(&self) -> ExtensionJson {
        let fmt = |v: &[Q]| v.iter().map(format_rational).collect::<Vec<_>>();
        ExtensionJson {
            g: GJson {
                family: "A".into(),
                rank: self.g.rank(),
                real_form: RealForm::Split.to_string(),
                xi: self.g.gp.xi().iter().map(|i| i + 1).collect(),
                root_basis: (0..self.g.dim())
                    .filter_map(|c| self.g.root(c).map(|r| RootBasisJson { root: r.clone(), index: c }))
                    .collect(),
            },
            k: KJson {
                dim: self.k.dim,
                names: self.k.names.clone(),
                brackets: self
                    .k
                    .entries()
                    .into_iter()
                    .map(|(a, b, v)| (a, b, v.iter().map(|(i, x)| (format_rational(x), *i)).collect()))
                    .collect(),
            },
            h: self.h.clone(),
            alpha: self.alpha.iter().map(|r| fmt(r)).collect(),
            j_generators: self.j_generators.iter().map(|r| fmt(r)).collect(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let j: ExtensionJson = serde_json::from_str(&text)?;
        Self::from_json(&j)
    }

    /// `α` applied to a vector of `k`.
    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.g.dim()];
        for (xi, row) in x.iter().zip(&self.alpha) {
            if xi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += xi * a;
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        to_dense(&[(i, Q::from_integer(1.into()))], self.k.dim)
    }

    /// Basis vectors of `h` as vectors of `k`.
    pub fn h_basis(&self) -> QMat {
        self.h.iter().map(|&i| self.unit(i)).collect()
    }

    /// `g`-coordinates whose Ξ-height satisfies `keep`, others zeroed.
    pub fn project(&self, v: &[Q], keep: impl Fn(usize) -> bool) -> Vec<Q> {
        v.iter().enumerate().map(|(c, x)| if keep(c) { x.clone() } else { Q::zero() }).collect()
    }

    /// Matrix of `X ↦ (α(X))_{g_-}`, rows indexed by the `g_-` basis.
    fn minus_projection(&self, minus: &[usize]) -> QMat {
        minus.iter().map(|&c| self.alpha.iter().map(|row| row[c].clone()).collect()).collect()
    }
}

pub fn load_extension(path: impl AsRef<Path>) -> Result<ExtensionData> {
    ExtensionData::load(path)
}

/// One checked condition with an optional witness.
#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub conditions: Vec<Condition>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.conditions.iter().all(|c| c.ok)
    }
}

/// Checks `α(h) ⊆ p_Ξ`, the isomorphism `k/h ≅ g/p_Ξ` and infinitesimal equivariance.
pub fn validate_extension(e: &ExtensionData) -> ValidationReport {
    let g = &e.g;
    let mut conditions = Vec::new();

    let mut w1 = None;
    'outer: for &i in &e.h {
        for (c, x) in e.alpha[i].iter().enumerate() {
            if !x.is_zero() && g.height(c) < 0 {
                w1 = Some(format!("α({}) has a component along {}", e.k.names[i], g.alg.names[c]));
                break 'outer;
            }
        }
    }
    conditions.push(Condition { name: "alpha(h) in p", ok: w1.is_none(), witness: w1 });

    let minus: Vec<usize> = (0..g.dim()).filter(|&c| g.height(c) < 0).collect();
    let proj = e.minus_projection(&minus);
    let r = rank(&proj, e.k.dim);
    let hb = e.h_basis();
    let mut w2 = None;
    if r < minus.len() {
        w2 = Some(format!("image of k in g/p has dimension {r} < {}", minus.len()));
    } else if e.k.dim - e.h.len() != minus.len() {
        w2 = Some(format!("dim k/h = {} but dim g/p = {}", e.k.dim - e.h.len(), minus.len()));
    } else if let Some(v) = nullspace(&proj, e.k.dim).into_iter().find(|v| !in_span(&hb, v, e.k.dim)) {
        w2 = Some(format!("kernel vector outside h: {}", vector_string(&v, &e.k.names)));
    }
    conditions.push(Condition { name: "k/h -> g/p isomorphism", ok: w2.is_none(), witness: w2 });

    let mut w3 = None;
    'eq: for &i in &e.h {
        let ai = &e.alpha[i];
        for j in 0..e.k.dim {
            let lhs = g.alg.bracket(ai, &e.alpha[j]);
            let rhs = e.apply(&to_dense(e.k.bracket_basis(i, j), e.k.dim));
            if lhs != rhs {
                w3 = Some(format!("[α({}), α({})] != α([{}, {}])", e.k.names[i], e.k.names[j], e.k.names[i], e.k.names[j]));
                break 'eq;
            }
        }
    }
    conditions.push(Condition { name: "equivariance", ok: w3.is_none(), witness: w3 });
    ValidationReport { conditions }
}

pub fn vector_string(v: &[Q], names: &[String]) -> String {
    let terms: Vec<String> = to_sparse(v).iter().map(|(i, x)| format!("{}*{}", x, names[*i])).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
