//! Dense exact linear algebra over [`Scalar`] rows.

use crate::field::{FieldSpec, Scalar};

pub type Row = Vec<Scalar>;

/// Reduced row echelon form in place; zero rows are dropped. Returns pivot columns.
pub fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
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
    pivots
}

pub fn rank(rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of {c : Σ cᵢ·rowsᵢ = 0}.
pub fn left_kernel(rows: &[Row], field: FieldSpec) -> Vec<Row> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut aug: Vec<Row> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| if i == j { field.one() } else { field.zero() }));
            v
        })
        .collect();
    // Echelonize on the left block only, keeping rows whose left part vanished.
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][col].inv().expect("pivot nonzero");
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        r += 1;
    }
    let mut ker: Vec<Row> = aug.into_iter().skip(r).map(|row| row[n..].to_vec()).collect();
    rref(&mut ker);
    ker
}

/// Coefficients c with Σ cᵢ·basisᵢ = v, for linearly independent `basis`.
pub fn express(basis: &[Row], v: &[Scalar], field: FieldSpec) -> Option<Row> {
    if basis.is_empty() {
        return v.iter().all(Scalar::is_zero).then(Vec::new);
    }
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    let k = basis.len();
    let ker = left_kernel(&rows, field);
    let w = ker.into_iter().find(|c| !c[k].is_zero())?;
    let scale = -w[k].inv().expect("nonzero");
    Some(w[..k].iter().map(|c| c * &scale).collect())
}

/// Whether `v` lies in the row space of an RREF matrix with the given pivots.
pub fn in_row_space(basis: &[Row], pivots: &[usize], v: &[Scalar]) -> bool {
    reduce_against(basis, pivots, v).iter().all(Scalar::is_zero)
}

/// Reduce `v` by an RREF basis.
pub fn reduce_against(basis: &[Row], pivots: &[usize], v: &[Scalar]) -> Row {
    let mut w = v.to_vec();
    for (row, &col) in basis.iter().zip(pivots) {
        if w[col].is_zero() {
            continue;
        }
        let f = w[col].clone();
        for (x, p) in w.iter_mut().zip(row) {
            if !p.is_zero() {
                *x = &*x - &(&f * p);
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: FieldSpec, xs: &[i64]) -> Row {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let f = FieldSpec::Rationals;
        let mut m = vec![v(f, &[1, 2, 3]), v(f, &[2, 4, 6]), v(f, &[0, 1, 1])];
        let piv = rref(&mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m, vec![v(f, &[1, 0, 1]), v(f, &[0, 1, 1])]);
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let f = FieldSpec::prime(3).unwrap();
        let rows = vec![v(f, &[1, 1]), v(f, &[2, 2]), v(f, &[0, 1])];
        let k = left_kernel(&rows, f);
        assert_eq!(k.len(), 1);
        // 1*(1,1) + 1*(2,2) = (3,3) = 0 mod 3
        assert_eq!(k[0], v(f, &[1, 1, 0]));
    }

    #[test]
    fn express_in_basis() {
        let f = FieldSpec::Rationals;
        let b = vec![v(f, &[1, 1, 0]), v(f, &[0, 1, 1])];
        assert_eq!(express(&b, &v(f, &[2, 5, 3]), f), Some(v(f, &[2, 3])));
        assert_eq!(express(&b, &v(f, &[1, 0, 0]), f), None);
    }

    #[test]
    fn membership_in_row_space() {
        let f = FieldSpec::Rationals;
        let mut b = vec![v(f, &[1, 1, 0]), v(f, &[0, 0, 1])];
        let piv = rref(&mut b);
        assert!(in_row_space(&b, &piv, &v(f, &[2, 2, 5])));
        assert!(!in_row_space(&b, &piv, &v(f, &[1, 0, 0])));
    }
}
