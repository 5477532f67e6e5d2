//! Subspaces of 𝔽ⁿ in canonical (RREF) form, and exhaustive enumeration over finite fields.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{in_row_space, left_kernel, reduce_against, rref, Row};

/// Refuse enumerations above this many candidates unless told otherwise.
pub const DEFAULT_BOUND: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.rows.len().cmp(&other.rows.len()))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subspace {
    pub fn new(field: FieldSpec, ambient: usize, vectors: Vec<Row>) -> Self {
        let mut rows: Vec<Row> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(&mut rows);
        Subspace { field, ambient, rows, pivots }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::new(field, ambient, (0..ambient).map(|i| unit_vector(field, ambient, i)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Row] {
        &self.rows
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        in_row_space(&self.rows, &self.pivots, v)
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Row {
        reduce_against(&self.rows, &self.pivots, v)
    }

    pub fn is_subset(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::new(self.field, self.ambient, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        let ker = left_kernel(&stacked, self.field);
        let k = self.rows.len();
        let vecs = ker
            .iter()
            .map(|c| combine(self.field, self.ambient, &c[..k], &self.rows))
            .collect();
        Subspace::new(self.field, self.ambient, vecs)
    }

    /// Coordinates of a member with respect to [`Subspace::basis`].
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Row> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vectors of this subspace that form a basis modulo `sub`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Row> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for r in &self.rows {
            if !acc.contains(r) {
                out.push(r.clone());
                acc = acc.sum(&Subspace::new(self.field, self.ambient, vec![r.clone()]));
            }
        }
        out
    }

    /// Every vector of the subspace, in a fixed order. Finite fields only.
    pub fn elements(&self) -> Result<Vec<Row>> {
        let scalars = self.field.elements()?;
        let q = scalars.len() as u128;
        let count = q.checked_pow(self.dim() as u32).unwrap_or(u128::MAX);
        if count > DEFAULT_BOUND {
            return Err(Error::CombinatorialBlowup { count, bound: DEFAULT_BOUND });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0usize; self.dim()];
        loop {
            let coeffs: Row = digits.iter().map(|&d| scalars[d].clone()).collect();
            out.push(combine(self.field, self.ambient, &coeffs, &self.rows));
            if !increment(&mut digits, scalars.len()) {
                break;
            }
        }
        Ok(out)
    }

    /// All subspaces of this one, ordered by dimension then canonical basis.
    pub fn subspaces(&self, bound: u128) -> Result<Vec<Subspace>> {
        if !self.field.is_finite() {
            return Err(Error::InfiniteFieldUnsupported);
        }
        let p = self.field.characteristic() as u128;
        let m = self.dim();
        let count = subspace_count(p, m);
        if count > bound {
            return Err(Error::CombinatorialBlowup { count, bound });
        }
        let scalars = self.field.elements()?;
        let mut out = Vec::new();
        for k in 0..=m {
            for piv in combinations(m, k) {
                // Free slots: (row, col) with col > pivot of row and col not a pivot.
                let free: Vec<(usize, usize)> = (0..k)
                    .flat_map(|i| ((piv[i] + 1)..m).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
                    .collect();
                let mut digits = vec![0usize; free.len()];
                loop {
                    let mut coords = vec![vec![self.field.zero(); m]; k];
                    for (i, &c) in piv.iter().enumerate() {
                        coords[i][c] = self.field.one();
                    }
                    for (&(i, c), &d) in free.iter().zip(&digits) {
                        coords[i][c] = scalars[d].clone();
                    }
                    let vecs = coords
                        .iter()
                        .map(|c| combine(self.field, self.ambient, c, &self.rows))
                        .collect();
                    out.push(Subspace::new(self.field, self.ambient, vecs));
                    if !increment(&mut digits, scalars.len()) {
                        break;
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Row {
    (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

/// Σ cᵢ·rowsᵢ.
pub fn combine(field: FieldSpec, n: usize, coeffs: &[Scalar], rows: &[Row]) -> Row {
    let mut out = vec![field.zero(); n];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            if !x.is_zero() {
                *o = &*o + &(c * x);
            }
        }
    }
    out
}

/// Number of subspaces of 𝔽_p^m (sum of Gaussian binomials), saturating.
pub fn subspace_count(p: u128, m: usize) -> u128 {
    let mut total: u128 = 0;
    for k in 0..=m {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num = num.saturating_mul(p.saturating_pow((m - i) as u32).saturating_sub(1));
            den = den.saturating_mul(p.saturating_pow((i + 1) as u32).saturating_sub(1));
        }
        total = total.saturating_add(if num == u128::MAX { u128::MAX } else { num / den });
    }
    total
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    go(0, m, k, &mut cur, &mut out);
    out
}

/// Odometer increment; false once every digit has wrapped.
pub(crate) fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        assert_eq!(subspace_count(2, 3), 16);
        assert_eq!(subspace_count(2, 4), 67);
        assert_eq!(subspace_count(3, 2), 6);
        let all = Subspace::full(f2(), 3).subspaces(DEFAULT_BOUND).unwrap();
        assert_eq!(all.len(), 16);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(Subspace::full(f3, 2).subspaces(DEFAULT_BOUND).unwrap().len(), 6);
    }

    #[test]
    fn blowup_is_reported() {
        let err = Subspace::full(f2(), 8).subspaces(100).unwrap_err();
        assert!(matches!(err, Error::CombinatorialBlowup { bound: 100, .. }));
        assert_eq!(
            Subspace::full(FieldSpec::Rationals, 2).subspaces(DEFAULT_BOUND).unwrap_err(),
            Error::InfiniteFieldUnsupported
        );
    }

    #[test]
    fn meet_and_join() {
        let f = f2();
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Row>();
        let a = Subspace::new(f, 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::new(f, 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::new(f, 3, vec![v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(f, 3));
        assert_eq!(a.complement_of(&a.intersect(&b)).len(), 1);
        assert_eq!(a.elements().unwrap().len(), 4);
        let sub = Subspace::new(f, 3, vec![v(&[1, 1, 0])]);
        assert_eq!(a.subspaces(DEFAULT_BOUND).unwrap().len(), 5);
        assert!(sub.is_subset(&a) && !sub.is_subset(&b));
    }
}
