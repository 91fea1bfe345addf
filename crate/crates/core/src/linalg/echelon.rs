//! Row reduction. Pivots are the leftmost nonzero entry in each column scan,
//! taken from the first eligible row.

use crate::linalg::Field;

/// Gauss-Jordan elimination to reduced row echelon form.
/// Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut().skip(col) {
            *x = x.mul_ref(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Fraction-free (Bareiss) forward elimination followed by back
/// substitution and normalization; yields the same reduced echelon form as
/// [`rref`].
pub fn rref_fraction_free<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut prev = F::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let prev_inv = prev.inv().expect("nonzero previous pivot");
        let pivot = rows[r][col].clone();
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let f = row[col].clone();
            for j in col..ncols {
                // (pivot * a - f * b) / prev is exact.
                let a = row[j].mul_ref(&pivot);
                let b = if f.is_zero() || pivot_row[j].is_zero() {
                    F::zero()
                } else {
                    f.mul_ref(&pivot_row[j])
                };
                row[j] = a.sub_ref(&b).mul_ref(&prev_inv);
            }
            for x in row.iter_mut().take(col) {
                *x = F::zero();
            }
        }
        prev = pivot;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    // Back substitution, bottom-up, then normalize each row.
    for k in (0..r).rev() {
        let inv = rows[k][pivots[k]].inv().expect("nonzero pivot");
        for x in rows[k].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        let pivot_row = rows[k].clone();
        for row in rows.iter_mut().take(k) {
            let f = row[pivots[k]].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
    }
    (rows, pivots)
}

/// Basis of `{ v : M v = 0 }` from the reduced echelon form of `M`, one
/// vector per free column.
pub fn null_space_from_rref<F: Field>(reduced: &[Vec<F>], pivots: &[usize], ncols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (row, &p) in reduced.iter().zip(pivots) {
                v[p] = row[free].neg_ref();
            }
            v
        })
        .collect()
}

pub fn determinant<F: Field>(mut rows: Vec<Vec<F>>) -> F {
    let n = rows.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            rows.swap(col, p);
            det = det.neg_ref();
        }
        let pivot = rows[col][col].clone();
        det = det.mul_ref(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        let pivot_row = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].mul_ref(&inv);
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
    }
    det
}
