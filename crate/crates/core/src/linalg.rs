//! Gaussian elimination over a [`Field`]: rank and right null space.

use crate::field::Field;

/// Reduces `rows` in place to reduced row echelon form and returns the
/// pivot column of each nonzero row.
fn rref<K: Field>(field: &K, rows: &mut [Vec<K::Elem>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(field: &K, mut rows: Vec<Vec<K::Elem>>) -> usize {
    rref(field, &mut rows).len()
}

/// Basis of `{ v : M v = 0 }` for the matrix given by `rows`
/// (`cols` columns).
pub fn nullspace<K: Field>(
    field: &K,
    mut rows: Vec<Vec<K::Elem>>,
    cols: usize,
) -> Vec<Vec<K::Elem>> {
    let pivots = rref(field, &mut rows);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}
