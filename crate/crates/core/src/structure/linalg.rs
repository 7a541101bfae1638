//! Small dense linear algebra over F_p.

use super::subgroup::mod_inverse;

/// Basis of `{c : sum_i c_i rows[i] = 0}`.
pub(crate) fn left_nullspace(rows: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let m = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u32>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| u32::from(i == j)));
            v
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(r) = (pivot_row..m).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(pivot_row, r);
        let inv = mod_inverse(aug[pivot_row][col], p);
        for x in aug[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        let piv = aug[pivot_row].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivot_row += 1;
    }
    aug[pivot_row..].iter().map(|r| r[width..].to_vec()).collect()
}

/// Rank of the row space.
pub(crate) fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    rows.len() - left_nullspace(rows, p).len()
}
