//! Gradings by Ξ-heights and the partition of root spaces into modules `V_{Ξ,γ}`.

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::OnceLock;

/// One module `V_{Ξ,γ}`, modelled by the set of its root spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootModule {
    /// Lexicographically smallest member.
    pub label: Root,
    pub members: Vec<Root>,
    /// Coordinates of the members at the indices of Ξ.
    pub xi_degree: Vec<i64>,
    pub height: i64,
    /// Height-zero modules may not exhaust `g_{Ξ,0}` (the Cartan part is missing).
    pub partial: bool,
}

#[derive(Clone, Debug)]
pub struct GradedParabolic {
    rs: RootSystem,
    xi: Vec<usize>,
    modules: OnceLock<(Vec<RootModule>, HashMap<Root, usize>)>,
}

impl GradedParabolic {
    /// `xi` lists 0-based simple-root indices; duplicates are removed.
    pub fn new(rs: RootSystem, xi: &[usize]) -> Result<Self> {
        let mut xi = xi.to_vec();
        xi.sort_unstable();
        xi.dedup();
        for &i in &xi {
            rs.check_index(i)?;
        }
        if rs.complex_as_real() {
            if let Some(&i) = xi.iter().find(|&&i| xi.binary_search(&rs.conj(i)).is_err()) {
                return Err(Error::InvalidXi(format!("{} is in Ξ but its conjugate is not", rs.label(i))));
            }
        }
        Ok(GradedParabolic { rs, xi, modules: OnceLock::new() })
    }

    /// Same grading built from 1-based labels, as printed in tables.
    pub fn from_labels(rs: RootSystem, labels: &[usize]) -> Result<Self> {
        let xi = labels
            .iter()
            .map(|&l| l.checked_sub(1).ok_or_else(|| Error::InvalidXi("labels start at 1".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rs, &xi)
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn xi(&self) -> &[usize] {
        &self.xi
    }

    pub fn in_xi(&self, i: usize) -> bool {
        self.xi.binary_search(&i).is_ok()
    }

    /// Position of simple root `i` inside Ξ.
    pub fn xi_pos(&self, i: usize) -> Option<usize> {
        self.xi.binary_search(&i).ok()
    }

    pub fn xi_labels(&self) -> Vec<String> {
        self.xi.iter().map(|&i| self.rs.label(i)).collect()
    }

    /// Ξ-height of a root.
    pub fn xi_height(&self, r: &[i64]) -> Result<i64> {
        if !self.rs.is_root(r) {
            return Err(Error::NotARoot(r.to_vec()));
        }
        Ok(self.height(r))
    }

    /// Ξ-height of any lattice vector, without the root check.
    pub fn height(&self, r: &[i64]) -> i64 {
        self.xi.iter().map(|&i| r[i]).sum()
    }

    pub fn xi_degree(&self, r: &[i64]) -> Vec<i64> {
        self.xi.iter().map(|&i| r[i]).collect()
    }

    /// Grading length `k`, the Ξ-height of the highest root (per copy).
    pub fn depth(&self) -> i64 {
        (0..self.rs.copies()).map(|c| self.height(self.rs.highest_root(c))).max().unwrap_or(0)
    }

    fn cache(&self) -> &(Vec<RootModule>, HashMap<Root, usize>) {
        self.modules.get_or_init(|| build_modules(self))
    }

    /// All modules, sorted by height then label.
    pub fn modules(&self) -> &[RootModule] {
        &self.cache().0
    }

    /// Modules making up `p_{Ξ,+}`.
    pub fn plus_modules(&self) -> Vec<&RootModule> {
        self.modules().iter().filter(|m| m.height > 0).collect()
    }

    /// Modules making up `g_{Ξ,-}`.
    pub fn minus_modules(&self) -> Vec<&RootModule> {
        self.modules().iter().filter(|m| m.height < 0).collect()
    }

    pub fn module_of(&self, r: &[i64]) -> Option<&RootModule> {
        self.cache().1.get(r).map(|&k| &self.cache().0[k])
    }

    /// The module containing the simple root `i`.
    pub fn simple_module(&self, i: usize) -> Option<&RootModule> {
        self.module_of(&self.rs.simple_root(i))
    }
}

fn build_modules(gp: &GradedParabolic) -> (Vec<RootModule>, HashMap<Root, usize>) {
    let roots = gp.rs.roots();
    let zero: Vec<&Root> = roots.iter().filter(|r| gp.height(r) == 0).collect();
    let mut seen: HashMap<Root, usize> = HashMap::new();
    let mut groups: Vec<Vec<Root>> = Vec::new();
    for r in &roots {
        if seen.contains_key(r) {
            continue;
        }
        let id = groups.len();
        let mut members = vec![r.clone()];
        seen.insert(r.clone(), id);
        let mut k = 0;
        while k < members.len() {
            let cur = members[k].clone();
            for z in &zero {
                let s: Root = cur.iter().zip(z.iter()).map(|(a, b)| a + b).collect();
                if s.iter().any(|&x| x != 0) && gp.rs.is_root(&s) && !seen.contains_key(&s) {
                    seen.insert(s.clone(), id);
                    members.push(s);
                }
            }
            k += 1;
        }
        groups.push(members);
    }
    let mut modules: Vec<RootModule> = groups
        .into_iter()
        .map(|mut members| {
            members.sort();
            let label = members[0].clone();
            let height = gp.height(&label);
            RootModule { xi_degree: gp.xi_degree(&label), partial: height == 0, height, label, members }
        })
        .collect();
    modules.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.label.cmp(&b.label)));
    let mut index = HashMap::new();
    for (k, m) in modules.iter().enumerate() {
        for r in &m.members {
            index.insert(r.clone(), k);
        }
    }
    (modules, index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn gp(f: Family, n: usize, xi: &[usize]) -> GradedParabolic {
        GradedParabolic::from_labels(RootSystem::new(f, n, false).unwrap(), xi).unwrap()
    }

    #[test]
    fn heights() {
        let g = gp(Family::A, 5, &[1, 2, 5]);
        assert_eq!(g.xi_height(&[0, 0, 1, 0, 0]).unwrap(), 0);
        assert!(g.xi_height(&[1, 0, 1, 0, 0]).is_err());
        let g = gp(Family::G2, 2, &[1]);
        assert_eq!(g.xi_height(&[3, 2]).unwrap(), 3);
        assert_eq!(g.depth(), 3);
        let g = gp(Family::C, 4, &[1]);
        assert_eq!(g.xi_height(&[2, 2, 2, 1]).unwrap(), 2);
    }

    #[test]
    fn g2_partition() {
        let g = gp(Family::G2, 2, &[1]);
        let plus: Vec<Vec<Root>> = g.plus_modules().iter().map(|m| m.members.clone()).collect();
        assert_eq!(plus, vec![vec![vec![1, 0], vec![1, 1]], vec![vec![2, 1]], vec![vec![3, 1], vec![3, 2]]]);
    }

    #[test]
    fn a_partition() {
        let g = gp(Family::A, 2, &[1, 2]);
        assert_eq!(g.plus_modules().len(), 3);
        let g = gp(Family::A, 4, &[1, 2]);
        let zero: Vec<_> = g.modules().iter().filter(|m| m.height == 0).collect();
        assert!(zero.iter().all(|m| m.partial));
        assert!(zero.iter().any(|m| m.members.contains(&vec![0, 0, 1, 0])));
    }

    #[test]
    fn doubled_xi_must_be_closed() {
        let rs = RootSystem::new(Family::A, 3, true).unwrap();
        assert!(GradedParabolic::new(rs.clone(), &[0]).is_err());
        assert!(GradedParabolic::new(rs, &[0, 3]).is_ok());
    }
}
