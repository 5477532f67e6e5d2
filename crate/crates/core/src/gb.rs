//! Right and two-sided Gröbner bases in a quantum affine space.
//!
//! Leading monomials divide componentwise, and right division shifts a basis element
//! by a monomial on the right: g·x^c has leading monomial lm(g)+c with coefficient
//! lc(g)·λ(lm g, c). Only the chain criterion is used to discard S-pairs; the
//! coprime-leading-monomial shortcut of the commutative case does not apply.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::field::Scalar;
use crate::linalg::{self, Row};
use crate::ring::{Monomial, MonomialOrder, Poly, QRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Right,
    TwoSided,
}

/// Fully reduce `f` by right division against `basis`.
pub fn normal_form_right(ring: &QRing, f: &Poly, basis: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        let reducer = basis.iter().find(|g| g.lm().is_some_and(|l| l.divides(&m)));
        match reducer {
            Some(g) => {
                let cof = g.lm().expect("nonzero").cofactor_in(&m);
                let shifted = ring.mul_monomial_right(g, &cof);
                let factor = c.div(shifted.lc().expect("nonzero")).expect("nonzero leading coefficient");
                p = ring.sub(&p, &ring.scale(&shifted, &factor));
            }
            None => {
                rem.push((m, c));
                p = p.tail();
            }
        }
    }
    Poly::from_sorted(rem)
}

/// Right S-polynomial: both elements shifted to the lcm of their leading monomials.
pub fn s_polynomial(ring: &QRing, f: &Poly, g: &Poly) -> Poly {
    let (lf, lg) = (f.lm().expect("nonzero"), g.lm().expect("nonzero"));
    let l = lf.lcm(lg);
    let sf = ring.mul_monomial_right(f, &lf.cofactor_in(&l));
    let sg = ring.mul_monomial_right(g, &lg.cofactor_in(&l));
    let a = ring.monic(&sf);
    let b = ring.monic(&sg);
    ring.sub(&a, &b)
}

/// Incremental Buchberger completion of a right ideal.
struct Completion<'a> {
    ring: &'a QRing,
    basis: Vec<Poly>,
    pending: BTreeSet<(usize, usize)>,
    unit: bool,
}

impl<'a> Completion<'a> {
    fn new(ring: &'a QRing) -> Self {
        Completion { ring, basis: Vec::new(), pending: BTreeSet::new(), unit: false }
    }

    /// Reduce and adjoin; true when the right ideal grew.
    fn insert(&mut self, f: &Poly) -> bool {
        if self.unit {
            return false;
        }
        let h = normal_form_right(self.ring, f, &self.basis);
        if h.is_zero() {
            return false;
        }
        let h = self.ring.monic(&h);
        if h.lm().expect("nonzero").is_one() {
            self.unit = true;
            self.basis = vec![h];
            self.pending.clear();
            return true;
        }
        let k = self.basis.len();
        for i in 0..k {
            self.pending.insert((i, k));
        }
        self.basis.push(h);
        true
    }

    fn lcm_of(&self, i: usize, j: usize) -> Monomial {
        self.basis[i].lm().expect("nonzero").lcm(self.basis[j].lm().expect("nonzero"))
    }

    fn next_pair(&self) -> Option<(usize, usize)> {
        self.pending.iter().copied().min_by(|&(a, b), &(c, d)| {
            let (l1, l2) = (self.lcm_of(a, b), self.lcm_of(c, d));
            l1.degree()
                .cmp(&l2.degree())
                .then_with(|| self.ring.cmp_monomials(&l1, &l2))
                .then_with(|| (a, b).cmp(&(c, d)))
        })
    }

    fn chain_discard(&self, i: usize, j: usize) -> bool {
        let l = self.lcm_of(i, j);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && self.basis[k].lm().expect("nonzero").divides(&l)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
        })
    }

    fn complete(&mut self) {
        while let Some((i, j)) = self.next_pair() {
            self.pending.remove(&(i, j));
            if self.unit {
                break;
            }
            if self.chain_discard(i, j) {
                continue;
            }
            let s = s_polynomial(self.ring, &self.basis[i], &self.basis[j]);
            self.insert(&s);
        }
    }

    /// Minimal, tail-reduced, monic basis sorted ascending by leading monomial.
    fn reduced(&self) -> Vec<Poly> {
        let mut sorted: Vec<&Poly> = self.basis.iter().collect();
        sorted.sort_by(|a, b| self.ring.cmp_monomials(a.lm().expect("nonzero"), b.lm().expect("nonzero")));
        let mut minimal: Vec<Poly> = Vec::new();
        for g in sorted {
            let l = g.lm().expect("nonzero");
            if !minimal.iter().any(|h| h.lm().expect("nonzero").divides(l)) {
                minimal.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Poly> =
                out.iter().cloned().chain(minimal[i + 1..].iter().cloned()).collect::<Vec<Poly>>();
            let r = normal_form_right(self.ring, &minimal[i], &others);
            out.push(self.ring.monic(&r));
        }
        out
    }
}

/// A completed Gröbner basis of a right ideal, or of a two-sided ideal when
/// `side == TwoSided` (then the basis right-generates a left-stable ideal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: QRing,
    side: Side,
    basis: Vec<Poly>,
    generators: Vec<Poly>,
}

impl GroebnerBasis {
    /// Right Buchberger completion; the output is reduced and canonical.
    pub fn right(ring: &QRing, gens: &[Poly]) -> Self {
        let mut c = Completion::new(ring);
        for g in gens {
            c.insert(g);
        }
        c.complete();
        GroebnerBasis { ring: ring.clone(), side: Side::Right, basis: c.reduced(), generators: gens.to_vec() }
    }

    /// Two-sided completion: right-complete, then adjoin xᵢ·g for every basis element
    /// until left multiplication by each variable stays inside the right ideal.
    pub fn two_sided(ring: &QRing, gens: &[Poly]) -> Self {
        let mut c = Completion::new(ring);
        for g in gens {
            c.insert(g);
        }
        let mut checked = 0;
        loop {
            c.complete();
            if c.unit {
                break;
            }
            let upto = c.basis.len();
            let mut grew = false;
            'scan: for k in checked..upto {
                for i in 0..ring.n() {
                    if c.unit {
                        break 'scan;
                    }
                    let h = ring.mul(&ring.var(i), &c.basis[k]);
                    grew |= c.insert(&h);
                }
            }
            if c.unit {
                break;
            }
            checked = upto;
            if !grew && checked == c.basis.len() {
                break;
            }
        }
        GroebnerBasis { ring: ring.clone(), side: Side::TwoSided, basis: c.reduced(), generators: gens.to_vec() }
    }

    pub fn new(ring: &QRing, gens: &[Poly], side: Side) -> Self {
        match side {
            Side::Right => Self::right(ring, gens),
            Side::TwoSided => Self::two_sided(ring, gens),
        }
    }

    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_two_sided(&self) -> bool {
        self.side == Side::TwoSided
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form_right(&self.ring, f, &self.basis)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].lm().is_some_and(Monomial::is_one)
    }

    /// Largest degree among basis elements (0 for the zero ideal).
    pub fn max_degree(&self) -> u32 {
        self.basis.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Whether a monomial is a leading monomial of some ideal member.
    pub fn is_leading(&self, m: &Monomial) -> bool {
        self.basis.iter().any(|g| g.lm().expect("nonzero").divides(m))
    }

    /// Monomials of degree ≤ `d` not divisible by any leading monomial, ascending.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        Monomial::all_up_to_degree(self.ring.n(), d).into_iter().filter(|m| !self.is_leading(m)).collect()
    }

    /// Certificate that left multiplication by every variable stays inside.
    pub fn verify_two_sided(&self) -> bool {
        self.basis.iter().all(|g| {
            (0..self.ring.n()).all(|i| {
                let x = self.ring.var(i);
                self.contains(&self.ring.mul(&x, g)) && self.contains(&self.ring.mul(g, &x))
            })
        })
    }

    /// A set that generates the ideal as a left ideal, computed in the opposite ring.
    pub fn left_generators(&self) -> Vec<Poly> {
        assert!(self.is_two_sided(), "left generators require a two-sided ideal");
        let op = self.ring.opposite();
        let mirrored: Vec<Poly> = self.basis.iter().map(|g| self.ring.to_opposite(g)).collect();
        let gb = GroebnerBasis::two_sided(&op, &mirrored);
        gb.basis.iter().map(|g| op.to_opposite(g)).collect()
    }

    /// The subspace K ∩ R_{≤d}, exact for a degree-compatible order.
    pub fn truncate(&self, d: u32) -> Truncation {
        assert_eq!(self.ring.order(), MonomialOrder::DegLex, "truncation needs a degree-compatible order");
        let cols = MonomialBasis::up_to_degree(self.ring.n(), d);
        let mut rows: Vec<Row> = Vec::new();
        for m in cols.monomials() {
            if self.is_leading(m) {
                let mono = self.ring.monomial(m.clone());
                let r = self.ring.sub(&mono, &self.normal_form(&mono));
                rows.push(cols.row(&self.ring, &r));
            }
        }
        let pivots = linalg::rref(&mut rows);
        Truncation { degree: d, columns: cols, rows, pivots }
    }
}

/// Column indexing for polynomials of bounded degree: monomials in descending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn up_to_degree(n: usize, d: u32) -> Self {
        let mut monos = Monomial::all_up_to_degree(n, d);
        monos.reverse();
        Self::from_monomials(monos)
    }

    /// Columns in the given order (callers usually pass descending monomials).
    pub fn from_monomials(monos: Vec<Monomial>) -> Self {
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coefficient row; panics if `f` has a monomial outside the basis.
    pub fn row(&self, ring: &QRing, f: &Poly) -> Row {
        let mut r = vec![ring.field().zero(); self.monos.len()];
        for (m, c) in f.terms() {
            r[self.index[m]] = c.clone();
        }
        r
    }

    pub fn try_row(&self, ring: &QRing, f: &Poly) -> Option<Row> {
        let mut r = vec![ring.field().zero(); self.monos.len()];
        for (m, c) in f.terms() {
            r[*self.index.get(m)?] = c.clone();
        }
        Some(r)
    }

    pub fn poly(&self, ring: &QRing, row: &[Scalar]) -> Poly {
        let terms = self.monos.iter().zip(row).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())).collect();
        ring.from_terms(terms)
    }
}

/// A finite-dimensional slice K ∩ R_{≤D} as an RREF matrix over descending monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub degree: u32,
    pub columns: MonomialBasis,
    pub rows: Vec<Row>,
    pub pivots: Vec<usize>,
}

impl Truncation {
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, ring: &QRing, f: &Poly) -> bool {
        match self.columns.try_row(ring, f) {
            Some(r) => linalg::in_row_space(&self.rows, &self.pivots, &r),
            None => false,
        }
    }

    /// The basis vectors as polynomials.
    pub fn polys(&self, ring: &QRing) -> Vec<Poly> {
        self.rows.iter().map(|r| self.columns.poly(ring, r)).collect()
    }
}
