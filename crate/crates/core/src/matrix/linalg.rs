//! Gaussian elimination over a field.

use crate::scalars::{Elem, ScalarRing};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(field: &ScalarRing, rows: &mut [Vec<Elem>]) -> Vec<usize> {
    let m = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..m {
            if i == r || field.is_zero(&rows[i][c]) {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..width {
                let delta = field.mul(&f, &rows[r][j]);
                rows[i][j] = field.sub(&rows[i][j], &delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &ScalarRing, rows: &[Vec<Elem>]) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work).len()
}

/// Determinant by elimination with row swaps tracked.
pub fn determinant(field: &ScalarRing, rows: &[Vec<Elem>]) -> Elem {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if piv != c {
            a.swap(piv, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for j in c..n {
                let delta = field.mul(&f, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &delta);
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan on `[A | I]`; `None` when singular.
pub fn inverse(field: &ScalarRing, rows: &[Vec<Elem>]) -> Option<Vec<Vec<Elem>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Elem>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : A x = 0}` for an `m x width` matrix, one vector per free column.
pub fn null_space(field: &ScalarRing, rows: &[Vec<Elem>], width: usize) -> Vec<Vec<Elem>> {
    let mut work = rows.to_vec();
    let pivots = rref(field, &mut work);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); width];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&work[r][f]);
            }
            v
        })
        .collect()
}
