//! Exact dense linear algebra over [`Scalar`].
//!
//! Elimination always takes the first usable row as pivot, so results do not
//! depend on anything but the input order.

use crate::scalar::Scalar;

/// Solves `sum_j lambda_j * columns[j] = rhs`. Free unknowns are set to zero.
///
/// All columns must have the same length as `rhs`.
pub fn solve(columns: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let nrows = rhs.len();
    let ncols = columns.len();
    // augmented matrix, one row per coordinate
    let mut m: Vec<Vec<Scalar>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = eliminate(&mut m, ncols);
    // inconsistent if some zero row has a nonzero right-hand side
    if m[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Scalar::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][ncols].clone();
    }
    Some(sol)
}

/// Rank of a list of vectors of equal length.
pub fn rank(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m = vectors.to_vec();
    let width = m[0].len();
    eliminate(&mut m, width).len()
}

/// Indices of a maximal linearly independent prefix-greedy subset.
pub fn independent_subset(vectors: &[Vec<Scalar>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = 0;
    for (i, v) in vectors.iter().enumerate() {
        let mut trial: Vec<Vec<Scalar>> = chosen.iter().map(|&j| vectors[j].clone()).collect();
        trial.push(v.clone());
        let r = rank(&trial);
        if r > current {
            chosen.push(i);
            current = r;
        }
    }
    chosen
}

/// Reduced row echelon form on the first `width` columns; returns pivot columns.
fn eliminate(m: &mut [Vec<Scalar>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..m[r].len() {
                let sub = &factor * &m[row][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}
