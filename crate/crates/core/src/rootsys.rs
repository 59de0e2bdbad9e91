//! Root systems, weights, simple reflections and the affine Weyl action.
//!
//! Conventions: the Cartan matrix is `A[i][j] = <α_i, α_j^∨> = 2(α_i, α_j)/(α_j, α_j)`
//! (Bourbaki numbering; α_n is short in type B, long in type C, α_1 is short in G2).
//! Weights are stored in the fundamental-weight basis, so that the pairing
//! `<w, α_i^∨>` is the `i`-th coordinate.
//!
//! A complex simple algebra viewed as a real one is modelled as two copies of its
//! Dynkin diagram. Simple root `i` of the second copy has index `i + rank` and is
//! printed with a prime.

use crate::error::{Error, Result};
use num::rational::Ratio;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

pub type Rat = Ratio<i64>;

/// Root coordinates in the simple-root basis.
pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    E6,
    E7,
    BC,
}

impl Family {
    /// Name of the split real form used in tables, e.g. `sl(5)`.
    pub fn algebra_name(self, rank: usize) -> String {
        match self {
            Family::A => format!("sl({})", rank + 1),
            Family::B => format!("so({})", 2 * rank + 1),
            Family::C => format!("sp({})", 2 * rank),
            Family::D => format!("so({})", 2 * rank),
            Family::G2 => "g2".into(),
            Family::E6 => "e6".into(),
            Family::E7 => "e7".into(),
            Family::BC => format!("bc{rank}"),
        }
    }

    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::G2 => Some(2),
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A | Family::C | Family::BC => 2,
            Family::B => 3,
            Family::D => 4,
            Family::G2 => 2,
            Family::E6 => 6,
            Family::E7 => 7,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "a" | "sl" | "su" => Family::A,
            "b" | "so-odd" => Family::B,
            "c" | "sp" => Family::C,
            "d" | "so-even" => Family::D,
            "g2" => Family::G2,
            "e6" => Family::E6,
            "e7" => Family::E7,
            "bc" => Family::BC,
            _ => return Err(Error::Unsupported { family: s.into(), rank: 0 }),
        })
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub fw: Vec<Rat>,
}

impl Weight {
    pub fn from_ints(v: &[i64]) -> Self {
        Weight { fw: v.iter().map(|&x| Rat::from_integer(x)).collect() }
    }

    /// Integer coordinates, when all are integral.
    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.fw.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    fn add(&self, o: &Weight) -> Weight {
        Weight { fw: self.fw.iter().zip(&o.fw).map(|(a, b)| a + b).collect() }
    }

    fn sub(&self, o: &Weight) -> Weight {
        Weight { fw: self.fw.iter().zip(&o.fw).map(|(a, b)| a - b).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    complex_as_real: bool,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashSet<Root>,
    highest: Vec<Root>,
    conjugation: Vec<usize>,
    half_norms: Vec<Rat>,
}

impl RootSystem {
    /// Builds the root datum of `family` with `rank` simple roots per copy.
    pub fn new(family: Family, rank: usize, complex_as_real: bool) -> Result<Self> {
        let unsupported = || Error::Unsupported { family: family.to_string(), rank };
        if let Some(r) = family.fixed_rank() {
            if r != rank {
                return Err(unsupported());
            }
        }
        if rank < family.min_rank() || rank > 16 {
            return Err(unsupported());
        }
        let single = cartan_matrix(family, rank);
        let mut single_roots = positive_roots(&single);
        if family == Family::BC {
            let norms = half_norms(&single);
            let short = norms.iter().cloned().fold(Rat::from_integer(i64::MAX), Rat::min);
            let doubles: Vec<Root> = single_roots
                .iter()
                .filter(|r| norm_of(&single, &norms, r) == short * 2)
                .map(|r| r.iter().map(|x| 2 * x).collect())
                .collect();
            single_roots.extend(doubles);
        }
        sort_roots(&mut single_roots);
        let copies = if complex_as_real { 2 } else { 1 };
        let n = rank * copies;
        let mut cartan = vec![vec![0; n]; n];
        let mut positive = Vec::new();
        for c in 0..copies {
            for i in 0..rank {
                for j in 0..rank {
                    cartan[c * rank + i][c * rank + j] = single[i][j];
                }
            }
            for r in &single_roots {
                let mut v = vec![0; n];
                v[c * rank..(c + 1) * rank].copy_from_slice(r);
                positive.push(v);
            }
        }
        sort_roots(&mut positive);
        let index = positive.iter().cloned().collect();
        let top = single_roots.iter().max_by_key(|r| r.iter().sum::<i64>()).cloned().ok_or_else(unsupported)?;
        let highest = (0..copies)
            .map(|c| {
                let mut v = vec![0; n];
                v[c * rank..(c + 1) * rank].copy_from_slice(&top);
                v
            })
            .collect();
        let conjugation = (0..n).map(|i| if complex_as_real { (i + rank) % n } else { i }).collect();
        let half_norms = half_norms(&cartan);
        Ok(RootSystem { family, rank, complex_as_real, cartan, positive, index, highest, conjugation, half_norms })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Rank of one copy of the diagram.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn complex_as_real(&self) -> bool {
        self.complex_as_real
    }

    /// Total number of simple roots (twice the rank for doubled diagrams).
    pub fn n(&self) -> usize {
        self.cartan.len()
    }

    pub fn copies(&self) -> usize {
        if self.complex_as_real { 2 } else { 1 }
    }

    pub fn copy_of(&self, i: usize) -> usize {
        i / self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// All roots, positive first then their negatives.
    pub fn roots(&self) -> Vec<Root> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
        all
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        if self.index.contains(r) {
            return true;
        }
        let neg: Root = r.iter().map(|x| -x).collect();
        self.index.contains(&neg)
    }

    /// Highest root of the given copy (the only copy unless doubled).
    pub fn highest_root(&self, copy: usize) -> &Root {
        &self.highest[copy]
    }

    /// The coordinates `r_i` of the highest root in the fundamental-weight basis.
    pub fn highest_root_weight(&self, copy: usize) -> Weight {
        self.root_to_weight(&self.highest[copy])
    }

    pub fn conjugation(&self) -> &[usize] {
        &self.conjugation
    }

    pub fn conj(&self, i: usize) -> usize {
        self.conjugation[i]
    }

    pub fn rho(&self) -> Weight {
        Weight { fw: vec![Rat::one(); self.n()] }
    }

    pub fn simple_root(&self, i: usize) -> Root {
        (0..self.n()).map(|j| i64::from(i == j)).collect()
    }

    /// `(α_i, α_i)/2` for the invariant form normalised per component.
    pub fn half_norm(&self, i: usize) -> Rat {
        self.half_norms[i]
    }

    /// Squared length of a root, up to the per-component normalisation.
    pub fn norm(&self, r: &[i64]) -> Rat {
        norm_of(&self.cartan, &self.half_norms, r)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::Index { index: i, rank: self.n() })
        }
    }

    /// `<w, α_i^∨>`.
    pub fn pairing(&self, w: &Weight, i: usize) -> Result<Rat> {
        self.check_index(i)?;
        Ok(w.fw[i])
    }

    /// Integer pairing `<β, α_i^∨>` of a root-lattice vector.
    pub fn pairing_root(&self, r: &[i64], i: usize) -> i64 {
        r.iter().enumerate().map(|(j, c)| c * self.cartan[j][i]).sum()
    }

    pub fn root_to_weight(&self, r: &[i64]) -> Weight {
        Weight::from_ints(&(0..self.n()).map(|i| self.pairing_root(r, i)).collect::<Vec<_>>())
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root(&self, w: &Weight) -> Vec<Rat> {
        // Solve x^T A = w^T, i.e. A^T x = w, by Gauss-Jordan.
        let n = self.n();
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = (0..n).map(|j| Rat::from_integer(self.cartan[j][i])).collect();
                row.push(w.fw[i]);
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("Cartan matrix is invertible");
            m.swap(c, p);
            let inv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c];
                    let pr = m[c].clone();
                    for (x, y) in m[r].iter_mut().zip(pr) {
                        *x -= f * y;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n]).collect()
    }

    /// `s_i(w) = w - <w, α_i^∨> α_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        let c = w.fw[i];
        Ok(Weight { fw: w.fw.iter().enumerate().map(|(j, x)| x - c * self.cartan[i][j]).collect() })
    }

    /// Simple reflection of a root-lattice vector.
    pub fn reflect_root(&self, r: &[i64], i: usize) -> Root {
        let c = self.pairing_root(r, i);
        let mut out = r.to_vec();
        out[i] -= c;
        out
    }

    /// Applies the reflections of `word` to `w + ρ` in the order written and subtracts ρ.
    pub fn affine_action(&self, word: &[usize], w: &Weight) -> Result<Weight> {
        let rho = self.rho();
        let mut x = w.add(&rho);
        for &i in word {
            x = self.reflect(&x, i)?;
        }
        Ok(x.sub(&rho))
    }

    /// Printable name of simple root `i`, 1-based, primed in the second copy.
    pub fn label(&self, i: usize) -> String {
        let k = i % self.rank + 1;
        if self.copy_of(i) == 1 { format!("{k}'") } else { k.to_string() }
    }

    /// Formats a root as e.g. `2α1+α2` (ASCII `a` when `ascii` is set).
    pub fn root_string(&self, r: &[i64], ascii: bool) -> String {
        let sym = if ascii { "a" } else { "α" };
        let mut s = String::new();
        for (i, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(sym);
            s.push_str(&self.label(i));
        }
        if s.is_empty() { "0".into() } else { s }
    }

    /// Name of the algebra as used in output tables.
    pub fn algebra_name(&self) -> String {
        let base = self.family.algebra_name(self.rank);
        if self.complex_as_real { format!("{base},C") } else { base }
    }
}

/// Serialized form of a root system.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootSystemJson {
    pub family: Family,
    pub rank: usize,
    pub complex_as_real: bool,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    pub highest_root: Root,
}

impl From<&RootSystem> for RootSystemJson {
    fn from(rs: &RootSystem) -> Self {
        RootSystemJson {
            family: rs.family,
            rank: rs.rank,
            complex_as_real: rs.complex_as_real,
            cartan: rs.cartan.clone(),
            positive_roots: rs.positive.clone(),
            highest_root: rs.highest[0].clone(),
        }
    }
}

fn sort_roots(v: &mut [Root]) {
    v.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));
}

pub fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match family {
        Family::A => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Family::B | Family::BC => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            a[n - 2][n - 1] = -2;
        }
        Family::C => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            a[n - 1][n - 2] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, n - 3, n - 1);
        }
        Family::G2 => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
        Family::E6 | Family::E7 => {
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
    }
    a
}

/// Positive roots by breadth-first closure using root strings.
fn positive_roots(a: &[Vec<i64>]) -> Vec<Root> {
    let n = a.len();
    let pair = |r: &[i64], i: usize| -> i64 { r.iter().enumerate().map(|(j, c)| c * a[j][i]).sum() };
    let mut seen: HashSet<Root> = HashSet::new();
    let mut queue: VecDeque<Root> = VecDeque::new();
    for i in 0..n {
        let r: Root = (0..n).map(|j| i64::from(i == j)).collect();
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            // q = largest k with r - k α_i a root
            let mut q = 0;
            loop {
                let mut s = r.clone();
                s[i] -= q + 1;
                if s.iter().all(|&x| x >= 0) && seen.contains(&s) {
                    q += 1;
                } else {
                    break;
                }
            }
            let p = q - pair(&r, i);
            if p > 0 {
                let mut s = r.clone();
                s[i] += 1;
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// `(α_i, α_i)/2`, normalised so that the longest simple root of each component has 1.
fn half_norms(a: &[Vec<i64>]) -> Vec<Rat> {
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        d[start] = Some(Rat::one());
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if a[i][j] != 0 && i != j && d[j].is_none() {
                    // a_ij d_j = a_ji d_i
                    d[j] = Some(Rat::new(a[j][i], a[i][j]) * d[i].unwrap());
                    comp.push(j);
                }
            }
            k += 1;
        }
        let max = comp.iter().map(|&i| d[i].unwrap()).max().unwrap();
        for &i in &comp {
            d[i] = Some(d[i].unwrap() / max);
        }
    }
    d.into_iter().map(Option::unwrap).collect()
}

fn norm_of(a: &[Vec<i64>], d: &[Rat], r: &[i64]) -> Rat {
    let mut s = Rat::zero();
    for i in 0..r.len() {
        for j in 0..r.len() {
            s += Rat::from_integer(r[i] * r[j] * a[i][j]) * d[j];
        }
    }
    s
}
