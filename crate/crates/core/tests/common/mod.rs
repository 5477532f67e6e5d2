//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use qsubcat::{FieldSpec, Monomial, Poly, QRing, Scalar, Side};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn qq(n: i64) -> Scalar {
    FieldSpec::Rationals.from_i64(n)
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    qq(n).div(&qq(d)).unwrap()
}

fn word(m: &Monomial) -> Vec<usize> {
    m.exps().iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
}

fn exps(n: usize, w: &[usize]) -> Monomial {
    let mut e = vec![0u32; n];
    for &i in w {
        e[i] += 1;
    }
    Monomial::from_exps(&e)
}

/// Product computed on words: concatenate, then bubble adjacent inversions
/// with xⱼxᵢ = pᵢⱼxᵢxⱼ until the word is sorted.
pub fn word_mul(r: &QRing, f: &Poly, g: &Poly) -> Poly {
    let mut out = Vec::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let mut w = word(a);
            w.extend(word(b));
            let mut c = ca * cb;
            let mut sorted = false;
            while !sorted {
                sorted = true;
                for k in 0..w.len().saturating_sub(1) {
                    if w[k] > w[k + 1] {
                        c = &c * &r.param(w[k + 1], w[k]);
                        w.swap(k, k + 1);
                        sorted = false;
                    }
                }
            }
            out.push((exps(r.n(), &w), c));
        }
    }
    r.from_terms(out)
}

/// Is `v` in the row span? Plain Gaussian elimination.
pub fn in_span(rows: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let mut echelon: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let reduce = |echelon: &[(usize, Vec<Scalar>)], mut x: Vec<Scalar>| {
        for (p, row) in echelon {
            if !x[*p].is_zero() {
                let c = x[*p].clone();
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi = &*xi - &(&c * ri);
                }
            }
        }
        x
    };
    for r in rows {
        let x = reduce(&echelon, r.clone());
        if let Some(p) = x.iter().position(|c| !c.is_zero()) {
            let inv = x[p].inv().unwrap();
            let x: Vec<Scalar> = x.iter().map(|c| c * &inv).collect();
            for (_, row) in echelon.iter_mut() {
                if !row[p].is_zero() {
                    let c = row[p].clone();
                    for (ri, xi) in row.iter_mut().zip(&x) {
                        *ri = &*ri - &(&c * xi);
                    }
                }
            }
            echelon.push((p, x));
        }
    }
    reduce(&echelon, v.to_vec()).iter().all(|c| c.is_zero())
}

fn coords(r: &QRing, cols: &[Monomial], f: &Poly) -> Vec<Scalar> {
    cols.iter().map(|m| f.coeff(m).cloned().unwrap_or_else(|| r.field().zero())).collect()
}

fn is_homogeneous(f: &Poly) -> bool {
    f.monomials().map(|m| m.degree()).collect::<std::collections::BTreeSet<_>>().len() <= 1
}

/// Membership of a homogeneous `f` in the ideal generated by homogeneous `gens`,
/// decided by linear algebra in the single degree of `f`.
pub fn homogeneous_member(r: &QRing, gens: &[Poly], side: Side, f: &Poly) -> bool {
    assert!(is_homogeneous(f) && gens.iter().all(is_homogeneous));
    let Some(d) = f.degree() else { return true };
    let n = r.n();
    let cols = Monomial::all_of_degree(n, d);
    let mut rows = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        let e = d - dg;
        match side {
            Side::Right => {
                for m in Monomial::all_of_degree(n, e) {
                    rows.push(coords(r, &cols, &word_mul(r, g, &r.monomial(m))));
                }
            }
            Side::TwoSided => {
                for e1 in 0..=e {
                    for m1 in Monomial::all_of_degree(n, e1) {
                        let left = word_mul(r, &r.monomial(m1), g);
                        for m2 in Monomial::all_of_degree(n, e - e1) {
                            rows.push(coords(r, &cols, &word_mul(r, &left, &r.monomial(m2))));
                        }
                    }
                }
            }
        }
    }
    in_span(&rows, &coords(r, &cols, f))
}

const PARAMS: [(i64, i64); 5] = [(2, 1), (-1, 1), (1, 2), (3, 1), (1, 1)];

/// A quantum affine space on `n` variables with random parameters.
pub fn random_ring(rng: &mut ChaCha8Rng, n: usize) -> QRing {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut r = QRing::from_names(names, FieldSpec::Rationals).unwrap();
    for j in 0..n {
        for i in 0..j {
            let (a, b) = PARAMS[rng.gen_range(0..PARAMS.len())];
            r = r.with_param(i, j, ratio(a, b)).unwrap();
        }
    }
    r
}

pub fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Monomial {
    let d = rng.gen_range(0..=max_deg);
    let all = Monomial::all_of_degree(n, d);
    all[rng.gen_range(0..all.len())].clone()
}

pub fn random_poly(rng: &mut ChaCha8Rng, r: &QRing, max_deg: u32, max_terms: usize) -> Poly {
    let t = rng.gen_range(1..=max_terms);
    let terms = (0..t).map(|_| (random_monomial(rng, r.n(), max_deg), qq(rng.gen_range(-3..=3)))).collect();
    r.from_terms(terms)
}

pub fn random_homogeneous(rng: &mut ChaCha8Rng, r: &QRing, deg: u32, max_terms: usize) -> Poly {
    let all = Monomial::all_of_degree(r.n(), deg);
    let t = rng.gen_range(1..=max_terms);
    let terms = (0..t).map(|_| (all[rng.gen_range(0..all.len())].clone(), qq(rng.gen_range(-3..=3)))).collect();
    r.from_terms(terms)
}
