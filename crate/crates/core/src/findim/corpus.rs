//! All modules of small dimension up to isomorphism, used as the finite test set that
//! distinguishes subcategories.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{express, rref, Row};

use super::algebra::StructAlgebra;
use super::filter::{subcategory_membership, FilterSystem, Generators};
use super::module::{enumerate_right_submodules, identity, mat_mul, FDModule, Matrix};
use super::subspace::{increment, Subspace};

/// Default cap on action matrices tried while enumerating the corpus.
pub const CORPUS_BOUND: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Letter {
    Idempotent(usize),
    Generator(usize),
}

/// The algebra as generated by its idempotents and a minimal set of further basis elements.
#[derive(Debug, Clone)]
struct Presentation {
    letters: Vec<Letter>,
    /// Words in the letters whose products form a basis of the algebra.
    words: Vec<Vec<usize>>,
    /// Basis element i = Σ coeffs[i][w]·words[w].
    coeffs: Vec<Row>,
    /// Highest generator position each basis element depends on.
    level: Vec<Option<usize>>,
    generators: Vec<usize>,
}

fn letter_vector(alg: &StructAlgebra, l: Letter) -> Row {
    match l {
        Letter::Idempotent(a) => alg.idempotents()[a].clone(),
        Letter::Generator(i) => alg.basis_vector(i),
    }
}

fn closure(alg: &StructAlgebra, letters: &[Letter]) -> (Vec<Vec<usize>>, Vec<Row>) {
    let mut words = vec![Vec::new()];
    let mut vecs = vec![alg.unit().clone()];
    let mut span = alg.space(vecs.clone());
    let mut next = 0;
    while next < words.len() {
        for (li, &l) in letters.iter().enumerate() {
            let v = alg.mul(&vecs[next], &letter_vector(alg, l));
            if !span.contains(&v) {
                let mut w = words[next].clone();
                w.push(li);
                words.push(w);
                span = span.sum(&alg.space(vec![v.clone()]));
                vecs.push(v);
            }
        }
        next += 1;
    }
    (words, vecs)
}

impl Presentation {
    fn new(alg: &StructAlgebra) -> Self {
        let mut letters: Vec<Letter> = (0..alg.num_generators()).map(Letter::Idempotent).collect();
        for i in 0..alg.dim() {
            let (_, vecs) = closure(alg, &letters);
            if !alg.space(vecs).contains(&alg.basis_vector(i)) {
                letters.push(Letter::Generator(i));
            }
        }
        let (words, vecs) = closure(alg, &letters);
        let generators: Vec<usize> = letters
            .iter()
            .filter_map(|l| match l {
                Letter::Generator(i) => Some(*i),
                Letter::Idempotent(_) => None,
            })
            .collect();
        let gen_pos = |li: usize| match letters[li] {
            Letter::Generator(i) => generators.iter().position(|&g| g == i),
            Letter::Idempotent(_) => None,
        };
        let coeffs: Vec<Row> = (0..alg.dim())
            .map(|i| express(&vecs, &alg.basis_vector(i), alg.field()).expect("generators span the algebra"))
            .collect();
        let level = coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&words)
                    .filter(|(x, _)| !x.is_zero())
                    .flat_map(|(_, w)| w.iter().filter_map(|&li| gen_pos(li)))
                    .max()
            })
            .collect();
        Presentation { letters, words, coeffs, level, generators }
    }
}

struct Search<'a> {
    alg: &'a StructAlgebra,
    pres: &'a Presentation,
    field: FieldSpec,
    n: usize,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    scalars: Vec<Scalar>,
    nodes: u128,
    bound: u128,
    found: Vec<Vec<Matrix>>,
}

impl Search<'_> {
    fn letter_matrix(&self, l: Letter, gens: &[Matrix]) -> Matrix {
        match l {
            Letter::Idempotent(a) => {
                let mut m = vec![vec![self.field.zero(); self.n]; self.n];
                for i in self.offsets[a]..self.offsets[a] + self.dims[a] {
                    m[i][i] = self.field.one();
                }
                m
            }
            Letter::Generator(i) => {
                let t = self.pres.generators.iter().position(|&g| g == i).expect("generator");
                gens[t].clone()
            }
        }
    }

    fn basis_matrix(&self, i: usize, gens: &[Matrix]) -> Matrix {
        let mut out = vec![vec![self.field.zero(); self.n]; self.n];
        for (c, w) in self.pres.coeffs[i].iter().zip(&self.pres.words) {
            if c.is_zero() {
                continue;
            }
            let mut m = identity(self.field, self.n);
            for &li in w {
                m = mat_mul(self.field, &m, &self.letter_matrix(self.pres.letters[li], gens), self.n);
            }
            for (orow, mrow) in out.iter_mut().zip(&m) {
                for (o, x) in orow.iter_mut().zip(mrow) {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    /// Check every structure-constant relation whose highest generator is `level`.
    fn relations_hold(&self, level: Option<usize>, gens: &[Matrix]) -> bool {
        let d = self.alg.dim();
        let lv = &self.pres.level;
        let rho: Vec<Option<Matrix>> =
            (0..d).map(|i| (lv[i] <= level).then(|| self.basis_matrix(i, gens))).collect();
        for i in 0..d {
            for j in 0..d {
                let c = self.alg.structure_constant(i, j);
                let rel_level = (0..d).filter(|&k| !c[k].is_zero()).map(|k| lv[k]).chain([lv[i], lv[j]]).max().flatten();
                if rel_level != level {
                    continue;
                }
                let (Some(a), Some(b)) = (&rho[i], &rho[j]) else { continue };
                let lhs = mat_mul(self.field, a, b, self.n);
                let mut rhs = vec![vec![self.field.zero(); self.n]; self.n];
                for (k, ck) in c.iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    let m = rho[k].as_ref().expect("lower level");
                    for (orow, mrow) in rhs.iter_mut().zip(m) {
                        for (o, x) in orow.iter_mut().zip(mrow) {
                            *o = &*o + &(ck * x);
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn slots(&self, t: usize) -> Vec<(usize, usize)> {
        let all = |r: std::ops::Range<usize>, c: std::ops::Range<usize>| -> Vec<(usize, usize)> {
            r.flat_map(|i| c.clone().map(move |j| (i, j))).collect()
        };
        match self.alg.peirce_block(self.pres.generators[t]) {
            Some((a, b)) => all(
                self.offsets[a]..self.offsets[a] + self.dims[a],
                self.offsets[b]..self.offsets[b] + self.dims[b],
            ),
            None => all(0..self.n, 0..self.n),
        }
    }

    fn run(&mut self, gens: &mut Vec<Matrix>) -> Result<()> {
        let t = gens.len();
        if t == self.pres.generators.len() {
            self.found.push(gens.clone());
            return Ok(());
        }
        let slots = self.slots(t);
        let mut digits = vec![0usize; slots.len()];
        loop {
            self.nodes += 1;
            if self.nodes > self.bound {
                return Err(Error::CombinatorialBlowup { count: self.nodes, bound: self.bound });
            }
            let mut m = vec![vec![self.field.zero(); self.n]; self.n];
            for (&(i, j), &dgt) in slots.iter().zip(&digits) {
                m[i][j] = self.scalars[dgt].clone();
            }
            gens.push(m);
            if self.relations_hold(Some(t), gens) {
                self.run(gens)?;
            }
            gens.pop();
            if !increment(&mut digits, self.scalars.len()) {
                return Ok(());
            }
        }
    }
}

fn invert(field: FieldSpec, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Vec<Row> = m
        .iter()
        .zip(identity(field, n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let piv = rref(&mut aug);
    (piv == (0..n).collect::<Vec<_>>()).then(|| aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Block-diagonal invertible matrices with the given block sizes, paired with their inverses.
fn block_group(field: FieldSpec, dims: &[usize], bound: u128) -> Result<Vec<(Matrix, Matrix)>> {
    let scalars = field.elements()?;
    let n: usize = dims.iter().sum();
    let mut group = vec![(identity(field, n), identity(field, n))];
    let mut offset = 0;
    for &d in dims {
        let count = (scalars.len() as u128).checked_pow((d * d) as u32).unwrap_or(u128::MAX);
        if count > bound {
            return Err(Error::CombinatorialBlowup { count, bound });
        }
        let mut gl = Vec::new();
        let mut digits = vec![0usize; d * d];
        loop {
            let m: Matrix = (0..d).map(|i| (0..d).map(|j| scalars[digits[i * d + j]].clone()).collect()).collect();
            if let Some(inv) = invert(field, &m) {
                gl.push((m, inv));
            }
            if !increment(&mut digits, scalars.len()) {
                break;
            }
        }
        let mut next = Vec::with_capacity(group.len() * gl.len());
        for (g, gi) in &group {
            for (h, hi) in &gl {
                let (mut a, mut b) = (g.clone(), gi.clone());
                for i in 0..d {
                    for j in 0..d {
                        a[offset + i][offset + j] = h[i][j].clone();
                        b[offset + i][offset + j] = hi[i][j].clone();
                    }
                }
                next.push((a, b));
            }
        }
        group = next;
        offset += d;
    }
    Ok(group)
}

fn dimension_vectors(parts: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..parts {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let used: usize = v.iter().sum();
                (0..=max_total - used).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

/// Every module of dimension at most `max_dim`, one per isomorphism class, in a canonical order.
pub fn module_corpus(alg: &StructAlgebra, max_dim: usize, bound: u128) -> Result<Vec<FDModule>> {
    let field = alg.field();
    let scalars = field.elements()?;
    let pres = Presentation::new(alg);
    let mut out = Vec::new();
    for dims in dimension_vectors(alg.num_generators(), max_dim) {
        let n: usize = dims.iter().sum();
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        }).collect();
        let mut search = Search {
            alg,
            pres: &pres,
            field,
            n,
            offsets,
            dims: dims.clone(),
            scalars: scalars.clone(),
            nodes: 0,
            bound,
            found: Vec::new(),
        };
        if !search.relations_hold(None, &[]) {
            continue;
        }
        search.run(&mut Vec::new())?;
        let group = block_group(field, &dims, bound)?;
        let mut classes: BTreeSet<Vec<Scalar>> = BTreeSet::new();
        for gens in &search.found {
            let key = group
                .iter()
                .map(|(g, gi)| {
                    gens.iter()
                        .flat_map(|m| mat_mul(field, &mat_mul(field, g, m, n), gi, n).into_iter().flatten())
                        .collect::<Vec<Scalar>>()
                })
                .min()
                .unwrap_or_default();
            classes.insert(key);
        }
        for key in classes {
            let gens: Vec<Matrix> = (0..pres.generators.len())
                .map(|t| (0..n).map(|i| key[t * n * n + i * n..t * n * n + (i + 1) * n].to_vec()).collect())
                .collect();
            let action = (0..alg.dim()).map(|i| search.basis_matrix(i, &gens)).collect();
            out.push(FDModule::new(alg, n, action)?);
        }
    }
    Ok(out)
}

/// Membership of every corpus module in the subcategory generated by `fs`.
pub fn fingerprint(g: &Generators, fs: &FilterSystem, corpus: &[FDModule]) -> Vec<bool> {
    corpus.iter().map(|m| subcategory_membership(g, m, fs)).collect()
}

/// A corpus module outside the subcategory together with a submodule N such that N and M/N
/// are both inside it.
pub fn extension_violation(
    g: &Generators,
    fs: &FilterSystem,
    corpus: &[FDModule],
    bound: u128,
) -> Result<Option<(usize, Subspace)>> {
    for (idx, m) in corpus.iter().enumerate() {
        if subcategory_membership(g, m, fs) {
            continue;
        }
        for n in enumerate_right_submodules(m, bound)? {
            if subcategory_membership(g, &m.submodule(&n), fs) && subcategory_membership(g, &m.quotient(&n), fs) {
                return Ok(Some((idx, n)));
            }
        }
    }
    Ok(None)
}
