//! Multiparameter quantum affine spaces k⟨x₁..xₙ⟩/(xⱼxᵢ − pᵢⱼxᵢxⱼ) in PBW normal form.
//!
//! Every product of monomials is routed through [`QRing::commutation_scalar`]:
//! x^a·x^b = λ(a,b)·x^{a+b} with λ(a,b) = Π_{i<j} pᵢⱼ^{aⱼbᵢ}.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Exponent vector of a PBW monomial x₁^{a₁}···xₙ^{aₙ}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise divisibility `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other − self`, assuming `self | other`.
    pub fn cofactor_in(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials in `n` variables of total degree exactly `d`, ascending in DegLex.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::from_exps(cur));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All monomials of total degree ≤ `d`, ascending in DegLex.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0.as_slice())
    }
}

fn deglex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// The natural order on monomials is DegLex with x₁ < … < xₙ: total degree first,
/// then the exponent of the highest-index variable decides.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegLex,
    /// The exponent of the given variable is compared first, DegLex breaks ties.
    BlockElim(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegLex => deglex(a, b),
            MonomialOrder::BlockElim(v) => a.0[v].cmp(&b.0[v]).then_with(|| deglex(a, b)),
        }
    }
}

/// A polynomial in PBW normal form: terms strictly descending in the ring's order,
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.iter().find(|t| &t.0 == m).map(|t| &t.1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.0)
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    /// Wrap terms that are already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, Scalar)>) -> Self {
        Poly { terms }
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Poly {
        Poly { terms: self.terms.iter().skip(1).cloned().collect() }
    }
}

/// A diagonal automorphism xᵢ ↦ λᵢxᵢ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagAuto {
    scalars: Vec<Scalar>,
}

impl DiagAuto {
    pub fn new(scalars: Vec<Scalar>) -> Result<Self> {
        if scalars.iter().any(Scalar::is_zero) {
            return Err(Error::DivisionByZero);
        }
        Ok(DiagAuto { scalars })
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        DiagAuto { scalars: vec![field.one(); n] }
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.scalars
    }

    pub fn is_identity(&self) -> bool {
        self.scalars.iter().all(Scalar::is_one)
    }

    /// The scalar by which x^a is multiplied.
    pub fn monomial_factor(&self, a: &Monomial) -> Scalar {
        let mut acc = self.scalars[0].field().one();
        for (s, &e) in self.scalars.iter().zip(a.exps()) {
            if e > 0 && !s.is_one() {
                acc = &acc * &s.pow(e as i64);
            }
        }
        acc
    }

    /// Monomials are eigenvectors, so the term order is preserved.
    pub fn apply(&self, f: &Poly) -> Poly {
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * &self.monomial_factor(m)))
            .collect();
        Poly { terms }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagAuto) -> DiagAuto {
        DiagAuto { scalars: self.scalars.iter().zip(&other.scalars).map(|(a, b)| a * b).collect() }
    }

    pub fn inverse(&self) -> DiagAuto {
        DiagAuto { scalars: self.scalars.iter().map(|s| s.inv().expect("nonzero by construction")).collect() }
    }

    pub fn pow(&self, k: i64) -> DiagAuto {
        DiagAuto { scalars: self.scalars.iter().map(|s| s.pow(k)).collect() }
    }
}

/// A multiparameter quantum affine space together with the monomial order its
/// polynomials are sorted by.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRing {
    names: Vec<String>,
    field: FieldSpec,
    /// Row-major n×n; only entries with i < j are meaningful.
    params: Vec<Scalar>,
    order: MonomialOrder,
    commutative: bool,
}

impl QRing {
    /// The polynomial ring over `field` with all pᵢⱼ = 1.
    pub fn commutative(names: &[&str], field: FieldSpec) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        Self::from_names(names, field)
    }

    pub fn from_names(names: Vec<String>, field: FieldSpec) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateName(a.clone()));
            }
        }
        let n = names.len();
        Ok(QRing { names, field, params: vec![field.one(); n * n], order: MonomialOrder::DegLex, commutative: true })
    }

    /// Set pᵢⱼ (0-based, i < j).
    pub fn with_param(mut self, i: usize, j: usize, p: Scalar) -> Result<Self> {
        assert!(i < j && j < self.n(), "parameter index out of range");
        if p.is_zero() {
            return Err(Error::ZeroParameter(i + 1, j + 1));
        }
        let n = self.n();
        self.params[i * n + j] = p;
        self.commutative = self.params.iter().all(Scalar::is_one);
        Ok(self)
    }

    /// k⟨x, y⟩/(yx − qxy).
    pub fn quantum_plane(field: FieldSpec, q: Scalar) -> Result<Self> {
        Self::commutative(&["x", "y"], field)?.with_param(0, 1, q)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// pᵢⱼ for i < j, pⱼᵢ⁻¹ for i > j, 1 on the diagonal.
    pub fn param(&self, i: usize, j: usize) -> Scalar {
        let n = self.n();
        match i.cmp(&j) {
            Ordering::Less => self.params[i * n + j].clone(),
            Ordering::Greater => self.params[j * n + i].inv().expect("nonzero parameter"),
            Ordering::Equal => self.field.one(),
        }
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    // ----- constructors -----

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        self.term(Monomial::one(self.n()), c)
    }

    pub fn from_i64(&self, c: i64) -> Poly {
        self.constant(self.field.from_i64(c))
    }

    pub fn var(&self, i: usize) -> Poly {
        self.term(Monomial::var(self.n(), i), self.field.one())
    }

    pub fn monomial(&self, m: Monomial) -> Poly {
        self.term(m, self.field.one())
    }

    pub fn term(&self, m: Monomial, c: Scalar) -> Poly {
        debug_assert_eq!(m.nvars(), self.n());
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Canonicalize an arbitrary list of terms.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, Scalar)>) -> Poly {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    /// Re-sort a polynomial produced under another order of the same ring.
    pub fn resort(&self, f: Poly) -> Poly {
        self.from_terms(f.terms)
    }

    // ----- linear structure -----

    fn merge(&self, f: &Poly, g: &Poly, neg_g: bool) -> Poly {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let (mf, cf) = &f.terms[i];
            let (mg, cg) = &g.terms[j];
            match self.order.cmp(mf, mg) {
                Ordering::Greater => {
                    out.push((mf.clone(), cf.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mg.clone(), if neg_g { -cg } else { cg.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if neg_g { cf - cg } else { cf + cg };
                    if !c.is_zero() {
                        out.push((mf.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        out.extend(g.terms[j..].iter().map(|(m, c)| (m.clone(), if neg_g { -c } else { c.clone() })));
        Poly { terms: out }
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.merge(f, g, false)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.merge(f, g, true)
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        Poly { terms: f.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, f: &Poly, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: f.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `f` divided by its leading coefficient.
    pub fn monic(&self, f: &Poly) -> Poly {
        match f.lc() {
            None => Poly::zero(),
            Some(c) if c.is_one() => f.clone(),
            Some(c) => self.scale(f, &c.inv().expect("nonzero leading coefficient")),
        }
    }

    // ----- multiplication -----

    /// λ(a,b) with x^a·x^b = λ(a,b)·x^{a+b}.
    pub fn commutation_scalar(&self, a: &Monomial, b: &Monomial) -> Scalar {
        let mut acc = self.field.one();
        if self.commutative {
            return acc;
        }
        let n = self.n();
        for j in 1..n {
            let aj = a.0[j];
            if aj == 0 {
                continue;
            }
            for i in 0..j {
                let bi = b.0[i];
                if bi == 0 {
                    continue;
                }
                let p = &self.params[i * n + j];
                if !p.is_one() {
                    acc = &acc * &p.pow((aj as i64) * (bi as i64));
                }
            }
        }
        acc
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
        for (ma, ca) in &f.terms {
            for (mb, cb) in &g.terms {
                let c = &(ca * cb) * &self.commutation_scalar(ma, mb);
                terms.push((ma.mul(mb), c));
            }
        }
        self.from_terms(terms)
    }

    /// `f · x^m`; term order is preserved.
    pub fn mul_monomial_right(&self, f: &Poly, m: &Monomial) -> Poly {
        Poly {
            terms: f.terms.iter().map(|(a, c)| (a.mul(m), c * &self.commutation_scalar(a, m))).collect(),
        }
    }

    /// `x^m · f`; term order is preserved.
    pub fn mul_monomial_left(&self, m: &Monomial, f: &Poly) -> Poly {
        Poly {
            terms: f.terms.iter().map(|(a, c)| (m.mul(a), c * &self.commutation_scalar(m, a))).collect(),
        }
    }

    pub fn pow(&self, f: &Poly, k: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// The unique g with `f = x^h · g`, if it exists.
    pub fn left_divide_monomial(&self, h: &Monomial, f: &Poly) -> Option<Poly> {
        let mut terms = Vec::with_capacity(f.terms.len());
        for (a, c) in &f.terms {
            if !h.divides(a) {
                return None;
            }
            let rest = h.cofactor_in(a);
            let lam = self.commutation_scalar(h, &rest);
            terms.push((rest, c.div(&lam).expect("nonzero commutation scalar")));
        }
        Some(Poly { terms })
    }

    /// The unique g with `f = h · g`, if it exists (R is a domain).
    pub fn left_divide(&self, h: &Poly, f: &Poly) -> Option<Poly> {
        let lh = h.lm()?;
        let ch = h.lc()?;
        let mut rest = f.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.terms().first().cloned() {
            if !lh.divides(&m) {
                return None;
            }
            let cof = lh.cofactor_in(&m);
            let k = c.div(&(ch * &self.commutation_scalar(lh, &cof))).expect("nonzero");
            let t = self.term(cof.clone(), k.clone());
            rest = self.sub(&rest, &self.mul(h, &t));
            quot.push((cof, k));
        }
        Some(self.from_terms(quot))
    }

    /// If every monomial of `h` induces the same automorphism, `h` is normal with that
    /// automorphism: h·r = ψ(r)·h.
    pub fn normal_automorphism(&self, h: &Poly) -> Option<DiagAuto> {
        let mut it = h.monomials();
        let psi = self.monomial_automorphism(it.next()?);
        it.all(|m| self.monomial_automorphism(m) == psi).then_some(psi)
    }

    // ----- automorphisms and normality -----

    /// f^{(m)} with x^m·f = f^{(m)}·x^m.
    pub fn twist_by_monomial(&self, m: &Monomial, f: &Poly) -> Poly {
        Poly {
            terms: f
                .terms
                .iter()
                .map(|(a, c)| {
                    let s = self.commutation_scalar(m, a).div(&self.commutation_scalar(a, m)).expect("nonzero");
                    (a.clone(), c * &s)
                })
                .collect(),
        }
    }

    /// ψ with x^a·r = ψ(r)·x^a.
    pub fn monomial_automorphism(&self, a: &Monomial) -> DiagAuto {
        let n = self.n();
        let scalars = (0..n)
            .map(|i| {
                let e = Monomial::var(n, i);
                self.commutation_scalar(a, &e).div(&self.commutation_scalar(&e, a)).expect("nonzero")
            })
            .collect();
        DiagAuto { scalars }
    }

    pub fn is_central(&self, f: &Poly) -> bool {
        (0..self.n()).all(|i| {
            let x = self.var(i);
            self.mul(f, &x) == self.mul(&x, f)
        })
    }

    /// Same quantum space with every pᵢⱼ inverted. Use [`QRing::to_opposite`] to move elements.
    pub fn opposite(&self) -> QRing {
        let mut params = self.params.clone();
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                params[i * n + j] = self.params[i * n + j].inv().expect("nonzero parameter");
            }
        }
        QRing { params, ..self.clone() }
    }

    /// Image of `f` under the anti-isomorphism R → opposite(R) fixing each xᵢ.
    ///
    /// The PBW word x^a read backwards is c(a)⁻¹·x^a in the opposite ring, where
    /// c(a) = Π_{i<j} pᵢⱼ^{aᵢaⱼ}. Applying the map of the opposite ring undoes it.
    pub fn to_opposite(&self, f: &Poly) -> Poly {
        if self.commutative {
            return f.clone();
        }
        let n = self.n();
        let terms = f
            .terms
            .iter()
            .map(|(a, c)| {
                let mut s = self.field.one();
                for i in 0..n {
                    for j in i + 1..n {
                        let e = (a.0[i] as i64) * (a.0[j] as i64);
                        if e != 0 {
                            s = &s * &self.params[i * n + j].pow(-e);
                        }
                    }
                }
                (a.clone(), c * &s)
            })
            .collect();
        Poly { terms }
    }

    // ----- central elimination variable -----

    /// Adjoin a central variable `t` as the last variable, ordered by elimination of `t`.
    pub fn adjoin_central_variable(&self, name: &str) -> Result<QRing> {
        let mut names = self.names.clone();
        if names.iter().any(|s| s == name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        names.push(name.to_string());
        let n = self.n();
        let m = n + 1;
        let mut params = vec![self.field.one(); m * m];
        for i in 0..n {
            for j in 0..n {
                params[i * m + j] = self.params[i * n + j].clone();
            }
        }
        Ok(QRing { names, field: self.field, params, order: MonomialOrder::BlockElim(n), commutative: self.commutative })
    }

    /// Embed a polynomial of the ring without the last variable.
    pub fn embed_from_base(&self, f: &Poly) -> Poly {
        let terms = f
            .terms
            .iter()
            .map(|(a, c)| {
                let mut e = a.0.clone();
                e.push(0);
                (Monomial(e), c.clone())
            })
            .collect();
        self.from_terms(terms)
    }

    /// Substitute the scalar `c` for the last variable and drop it; `base` is the target ring.
    pub fn specialize_last(&self, f: &Poly, c: &Scalar, base: &QRing) -> Poly {
        let terms = f
            .terms
            .iter()
            .filter_map(|(a, k)| {
                let mut e = a.0.clone();
                let t = e.pop().expect("at least one variable");
                let s = if t == 0 { k.clone() } else { k * &c.pow(t as i64) };
                (!s.is_zero()).then(|| (Monomial(e), s))
            })
            .collect();
        base.from_terms(terms)
    }

    /// Whether `f` avoids the given variable entirely.
    pub fn avoids_var(&self, f: &Poly, v: usize) -> bool {
        f.terms.iter().all(|(a, _)| a.0[v] == 0)
    }

    /// The same ring sorted by plain DegLex.
    pub fn with_order(&self, order: MonomialOrder) -> QRing {
        QRing { order, ..self.clone() }
    }

    // ----- printing -----

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }

    /// Canonical text: terms in descending order, e.g. `x^2*y + 3*x*y - 1/2*y + 1`.
    pub fn fmt_poly(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&self.fmt_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", abs, self.fmt_monomial(m)));
            }
        }
        out
    }
}
