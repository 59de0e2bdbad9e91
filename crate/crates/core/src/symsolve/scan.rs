//! Exhaustive sweeps over algebras, gradings and component subsets.

use super::{constraint_system, generic_theta_empty, solve_symmetries, root_system, Domain, RealForm};
use crate::error::Result;
use crate::grading::GradedParabolic;
use crate::kostant::{self, CurvatureComponent};
use crate::rootsys::{Family, RootSystem};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Bounds of a sweep.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub families: Vec<Family>,
    pub forms: Vec<RealForm>,
    pub max_rank: usize,
    /// Largest Ξ per diagram copy.
    pub max_xi: usize,
    /// Largest component subset.
    pub max_subset: usize,
    pub rule: LambdaRule,
}

/// When a case enters the Λ = Ξ table (besides `Φ = ∅`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum LambdaRule {
    /// Some nontrivial family has `Θ = ∅`.
    #[default]
    Exists,
    /// Every nontrivial family has `Θ = ∅`, and one exists.
    All,
}

impl ScanConfig {
    pub fn new(max_rank: usize, max_xi: usize, max_subset: usize) -> Self {
        ScanConfig {
            families: vec![Family::A, Family::B, Family::C, Family::D, Family::G2, Family::E6, Family::E7],
            forms: vec![RealForm::Split, RealForm::Complex],
            max_rank,
            max_xi,
            max_subset,
            rule: LambdaRule::Exists,
        }
    }
}

/// One grading to be scanned.
#[derive(Clone, Debug)]
struct Job {
    family: Family,
    rank: usize,
    form: RealForm,
    xi: Vec<usize>,
}

fn jobs(cfg: &ScanConfig, min_xi: usize) -> Vec<Job> {
    let mut out = Vec::new();
    for &family in &cfg.families {
        let ranks: Vec<usize> = match family.fixed_rank() {
            Some(r) => vec![r],
            None => (family.min_rank().max(2)..=cfg.max_rank).collect(),
        };
        for rank in ranks.into_iter().filter(|&r| r <= cfg.max_rank) {
            for &form in &cfg.forms {
                for xi in subsets(rank, cfg.max_xi).into_iter().filter(|s| s.len() >= min_xi) {
                    let mut xi: Vec<usize> = match form {
                        RealForm::Complex => xi.iter().flat_map(|&i| [i, i + rank]).collect(),
                        _ => xi,
                    };
                    xi.sort_unstable();
                    out.push(Job { family, rank, form, xi });
                }
            }
        }
    }
    out
}

/// Nonempty subsets of `0..n` of size at most `k`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..n {
            cur.push(i);
            out.push(cur.clone());
            if cur.len() < k {
                rec(i + 1, n, k, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn component_subsets(cs: &[CurvatureComponent], k: usize) -> Vec<Vec<CurvatureComponent>> {
    subsets(cs.len(), k).into_iter().map(|s| s.into_iter().map(|i| cs[i].clone()).collect()).collect()
}

/// The components together with their conjugates (a no-op on a single diagram).
pub fn with_conjugates(cs: &[CurvatureComponent], gp: &GradedParabolic) -> Result<Vec<CurvatureComponent>> {
    let mut out: Vec<CurvatureComponent> = cs.to_vec();
    if gp.rs().complex_as_real() {
        for c in cs {
            let k = kostant::conjugate(c, gp)?;
            if !out.iter().any(|x| (x.a, x.b, x.copy) == (k.a, k.b, k.copy)) {
                out.push(k);
            }
        }
    }
    Ok(out)
}

/// A case of the Λ = Ξ table.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaCase {
    pub family: Family,
    pub rank: usize,
    pub form: RealForm,
    pub algebra: String,
    pub xi: Vec<usize>,
    pub xi_labels: Vec<String>,
    /// `(a, b, copy)` triples.
    pub components: Vec<(usize, usize, usize)>,
    pub component_labels: Vec<String>,
    /// `g_{Ξ,-1}` is indecomposable, so the case follows without the table.
    pub indecomposable: bool,
}

/// True when the degree-one modules form a single orbit under conjugation.
pub fn minus_one_indecomposable(gp: &GradedParabolic, domains: &[Domain]) -> bool {
    let ones: Vec<Vec<i64>> = gp.plus_modules().iter().filter(|m| m.height == 1).map(|m| m.xi_degree.clone()).collect();
    let flip = |d: &[i64]| -> Vec<i64> {
        let mut out = vec![0; d.len()];
        for (i, dom) in domains.iter().enumerate() {
            let j = match *dom {
                Domain::Paired(j) => j,
                _ => i,
            };
            out[j] = d[i];
        }
        out
    };
    let orbits: BTreeSet<Vec<i64>> = ones.iter().map(|d| d.clone().min(flip(d))).collect();
    orbits.len() == 1
}

/// Cases with empty Φ bound and a nontrivial family whose Θ is empty.
pub fn lambda_full_table(cfg: &ScanConfig) -> Result<Vec<LambdaCase>> {
    let per_job: Vec<Result<Vec<LambdaCase>>> = jobs(cfg, 1)
        .into_par_iter()
        .map(|job| {
            let rs = root_system(job.family, job.rank, job.form)?;
            let gp = GradedParabolic::new(rs, &job.xi)?;
            let reps = kostant::representatives(&gp, true);
            let mut out = Vec::new();
            let mut indecomposable = None;
            for subset in component_subsets(&reps, cfg.max_subset) {
                let full = with_conjugates(&subset, &gp)?;
                if !phi_bound_empty(&full, &gp) {
                    continue;
                }
                let cs = constraint_system(&full, &gp, job.form)?;
                let keep = match cfg.rule {
                    LambdaRule::Exists => generic_theta_empty(&cs)?,
                    LambdaRule::All => {
                        let fams = solve_symmetries(&cs)?;
                        let nontrivial: Vec<_> = fams.iter().filter(|f| !f.trivial).collect();
                        !nontrivial.is_empty() && nontrivial.iter().all(|f| f.theta_positions().is_empty())
                    }
                };
                if !keep {
                    continue;
                }
                let ind = *indecomposable.get_or_insert_with(|| minus_one_indecomposable(&gp, &cs.domains));
                out.push(case(&job, &gp, &subset, ind));
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_job {
        all.extend(r?);
    }
    Ok(all)
}

fn phi_bound_empty(cs: &[CurvatureComponent], gp: &GradedParabolic) -> bool {
    gp.xi().iter().all(|i| cs.iter().any(|c| !c.i_mu.contains(i)))
}

fn case(job: &Job, gp: &GradedParabolic, cs: &[CurvatureComponent], indecomposable: bool) -> LambdaCase {
    let rs = gp.rs();
    LambdaCase {
        family: job.family,
        rank: job.rank,
        form: job.form,
        algebra: rs.algebra_name(),
        xi: job.xi.clone(),
        xi_labels: gp.xi_labels(),
        components: cs.iter().map(|c| (c.a, c.b, c.copy)).collect(),
        component_labels: cs.iter().map(|c| c.label(rs)).collect(),
        indecomposable,
    }
}

/// A non-regular twistor grading found by the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct TwistorCase {
    pub case: LambdaCase,
    pub psi1: Vec<usize>,
    pub psi1_labels: Vec<String>,
    /// Offending components and their homogeneity over `Ξ - Ψ(1)`.
    pub offending: Vec<(String, Vec<i64>)>,
}

/// Sweeps regular component subsets; `Ψ(1)` ranges over the sets
/// `Ψ ∩ Θ(family)` of the nontrivial families.
pub fn twistor_scan(cfg: &ScanConfig) -> Result<Vec<TwistorCase>> {
    let per_job: Vec<Result<Vec<TwistorCase>>> = jobs(cfg, 2)
        .into_par_iter()
        .map(|job| {
            let rs = root_system(job.family, job.rank, job.form)?;
            let gp = GradedParabolic::new(rs, &job.xi)?;
            let reps = kostant::representatives(&gp, true);
            let mut out = Vec::new();
            for subset in component_subsets(&reps, cfg.max_subset) {
                let full = with_conjugates(&subset, &gp)?;
                let psi: BTreeSet<usize> = kostant::psi(&full, &gp)?.psi.into_iter().collect();
                if psi.is_empty() {
                    continue;
                }
                let cs = constraint_system(&full, &gp, job.form)?;
                let families = solve_symmetries(&cs)?;
                let mut tried = BTreeSet::new();
                for f in families.iter().filter(|f| !f.trivial) {
                    let psi1: Vec<usize> =
                        f.theta_positions().into_iter().map(|p| gp.xi()[p]).filter(|i| psi.contains(i)).collect();
                    if psi1.is_empty() || !tried.insert(psi1.clone()) {
                        continue;
                    }
                    let reg = kostant::twistor_regularity(&gp, &psi1, &full)?;
                    if !reg.regular {
                        out.push(TwistorCase {
                            case: case(&job, &gp, &subset, false),
                            psi1_labels: psi1.iter().map(|&i| gp.rs().label(i)).collect(),
                            psi1,
                            offending: reg.offending.iter().map(|(c, h)| (c.label(gp.rs()), h.clone())).collect(),
                        });
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_job {
        all.extend(r?);
    }
    Ok(all)
}

/// Root system and grading of a case, rebuilt.
pub fn rebuild(case: &LambdaCase) -> Result<(RootSystem, GradedParabolic)> {
    let rs = root_system(case.family, case.rank, case.form)?;
    let gp = GradedParabolic::new(rs.clone(), &case.xi)?;
    Ok((rs, gp))
}
