//! Smith normal form of small integer matrices.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{Signed, Zero};

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// Nonzero diagonal entries, all positive.
    pub diag: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Column `k` of `v`.
    pub fn v_col(&self, k: usize) -> Vec<i64> {
        self.v.iter().map(|r| r[k]).collect()
    }

    /// Columns of `v` spanning the integer kernel of `a`.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        (self.rank()..self.cols).map(|k| self.v_col(k)).collect()
    }

    /// Checks `u a v = d` and that `u`, `v` have determinant ±1.
    pub fn verify(&self, a: &[Vec<i64>]) -> bool {
        let ua = mul(&self.u, a);
        let uav = mul(&ua, &self.v);
        for (i, row) in uav.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j && i < self.diag.len() { self.diag[i] } else { 0 };
                if x != want {
                    return false;
                }
            }
        }
        let w = self.diag.windows(2).all(|p| p[1] % p[0] == 0);
        w && det(&self.u).abs() == BigInt::from(1) && det(&self.v).abs() == BigInt::from(1)
    }
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let bc = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..bc).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn ck(x: Option<i64>) -> Result<i64> {
    x.ok_or(Error::Overflow("smith normal form"))
}

/// Computes the Smith normal form of an `rows x cols` integer matrix.
pub fn smith(a: &[Vec<i64>], cols: usize) -> Result<Smith> {
    let rows = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..rows).map(|i| (0..rows).map(|j| i64::from(i == j)).collect()).collect();
    let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            if m[i][t] != 0 {
                let f = m[i][t] / m[t][t];
                for j in 0..cols {
                    m[i][j] = ck(m[i][j].checked_sub(ck(f.checked_mul(m[t][j]))?))?;
                }
                for j in 0..rows {
                    u[i][j] = ck(u[i][j].checked_sub(ck(f.checked_mul(u[t][j]))?))?;
                }
                dirty |= m[i][t] != 0;
            }
        }
        for j in t + 1..cols {
            if m[t][j] != 0 {
                let f = m[t][j] / m[t][t];
                for i in 0..rows {
                    m[i][j] = ck(m[i][j].checked_sub(ck(f.checked_mul(m[i][t]))?))?;
                }
                for row in v.iter_mut() {
                    row[j] = ck(row[j].checked_sub(ck(f.checked_mul(row[t]))?))?;
                }
                dirty |= m[t][j] != 0;
            }
        }
        if dirty {
            continue;
        }
        // divisibility of the remaining block
        let p = m[t][t];
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
        if let Some(i) = bad {
            for j in 0..cols {
                m[t][j] = ck(m[t][j].checked_add(m[i][j]))?;
            }
            for j in 0..rows {
                u[t][j] = ck(u[t][j].checked_add(u[i][j]))?;
            }
            continue;
        }
        if p < 0 {
            for j in 0..cols {
                m[t][j] = -m[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        diag.push(m[t][t]);
        t += 1;
    }
    Ok(Smith { u, v, diag, rows, cols })
}

/// Integer basis of the lattice `{w in Z^n : w . y = 0 for every column y}`,
/// where `ys` lists the vectors `y`.
pub fn annihilator(ys: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    if ys.is_empty() {
        return Ok((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect());
    }
    let s = smith(ys, n)?;
    Ok(s.kernel_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalises_small_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3).unwrap();
        assert_eq!(s.diag, vec![2, 6, 12]);
        assert!(s.verify(&a));
    }

    #[test]
    fn rank_deficient() {
        let a = vec![vec![2, 0], vec![1, 2], vec![3, 2]];
        let s = smith(&a, 2).unwrap();
        assert!(s.verify(&a));
        assert_eq!(s.diag, vec![1, 4]);
        let z = vec![vec![0, 0]];
        let s = smith(&z, 2).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.kernel_basis().len(), 2);
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]), BigInt::from(-3));
    }

    #[test]
    fn annihilator_of_line() {
        let w = annihilator(&[vec![1, 2]], 2).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0][0] + 2 * w[0][1], 0);
    }
}
