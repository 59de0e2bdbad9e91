//! The 17-dimensional model in `gl(8)` with its extension into `sl(6)`, `Ξ = {1, 2, 5}`.
//!
//! The basis of `k` is `X1, …, X17` except that the 13th vector is `X13 + X17`, so
//! that `h` is spanned by basis vectors.

use super::algebra::{from_matrices, GModel};
use super::ExtensionData;
use crate::error::Result;
use crate::linalg::{q, qf, zeros, QMat, Q};

/// Position in the 8x8 matrix of `X1..X17` (index 0 unused); `X9` is handled separately.
const CELLS: [(usize, usize); 18] = [
    (0, 0),
    (4, 0),
    (4, 1),
    (5, 0),
    (5, 1),
    (6, 2),
    (6, 3),
    (7, 2),
    (7, 3),
    (0, 0),
    (4, 4),
    (4, 5),
    (5, 4),
    (5, 5),
    (6, 6),
    (6, 7),
    (7, 6),
    (7, 7),
];

/// Coordinates `X1..X17` (at indices 1..=17) of the `i`-th basis vector.
pub fn x_coordinates(i: usize) -> [i64; 18] {
    let mut x = [0i64; 18];
    x[i + 1] = 1;
    if i == 12 {
        x[17] = 1;
    }
    x
}

fn k_matrix(x: &[i64; 18]) -> QMat {
    let mut m = zeros(8, 8);
    for (i, &(r, c)) in CELLS.iter().enumerate() {
        if i != 0 && i != 9 {
            m[r][c] += q(x[i]);
        }
    }
    let x9 = q(x[9]);
    m[0][1] -= &x9;
    m[1][0] += &x9;
    m[2][3] += &x9;
    m[3][2] += &x9;
    m
}

/// `α(X)` as a 6x6 matrix.
pub fn alpha_matrix(x: &[i64; 18]) -> QMat {
    let v = |i: usize| q(x[i]);
    let c = qf(-(x[10] + x[13] + x[14] + x[17]), 6);
    let z = Q::from_integer(0.into());
    vec![
        vec![c.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![v(9), c.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![v(1), v(2), &c + v(10), z.clone(), v(11), z.clone()],
        vec![v(5), v(6), z.clone(), &c + v(14), v(15), v(15)],
        vec![v(3), v(4), v(12), z.clone(), &c + v(13), z.clone()],
        vec![v(7) - v(3), v(8) - v(4), -v(12), v(16), v(17) - v(13), &c + v(17)],
    ]
}

pub fn basis_names() -> Vec<String> {
    (1..=17).map(|i| if i == 13 { "X13+X17".to_string() } else { format!("X{i}") }).collect()
}

/// Builds the model from its matrix description.
pub fn k17_model() -> Result<ExtensionData> {
    let mats: Vec<QMat> = (0..17).map(|i| k_matrix(&x_coordinates(i))).collect();
    let k = from_matrices(basis_names(), &mats)?;
    let g = GModel::sl(5, &[0, 1, 4])?;
    let alpha = (0..17).map(|i| g.from_matrix(&alpha_matrix(&x_coordinates(i)))).collect::<Result<QMat>>()?;
    let j = |a: i64, b: i64| vec![q(a), q(b), q(1)];
    Ok(ExtensionData { k, h: vec![9, 10, 12, 13, 14], g, alpha, j_generators: vec![j(-1, 1), j(1, -1), j(1, 2)] })
}
