//! Ideal calculus on right and two-sided ideals of a quantum affine space.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gb::{GroebnerBasis, MonomialBasis, Side};
use crate::linalg::{self, Row};
use crate::ring::{DiagAuto, Monomial, Poly, QRing};

/// How far an ideal (or a verdict about ideals) can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Exactness {
    Exact,
    /// Agrees with the true ideal on every element of degree ≤ D.
    UpToDegree(u32),
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }

    pub fn bound(&self) -> Option<u32> {
        match self {
            Exactness::Exact => None,
            Exactness::UpToDegree(d) => Some(*d),
        }
    }

    /// The weaker of the two.
    pub fn meet(self, other: Exactness) -> Exactness {
        match (self, other) {
            (Exactness::Exact, e) | (e, Exactness::Exact) => e,
            (Exactness::UpToDegree(a), Exactness::UpToDegree(b)) => Exactness::UpToDegree(a.min(b)),
        }
    }

    pub fn covers(&self, degree: u32) -> bool {
        self.bound().is_none_or(|d| degree <= d)
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact => write!(f, "exact"),
            Exactness::UpToDegree(d) => write!(f, "up to degree {d}"),
        }
    }
}

/// A right or two-sided ideal with its reduced Gröbner basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealHandle {
    gb: GroebnerBasis,
    exactness: Exactness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqualityVerdict {
    Equal(Exactness),
    /// `witness` lies in exactly one of the ideals; `in_first` says which.
    NotEqual { witness: Poly, in_first: bool, exactness: Exactness },
}

impl EqualityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityVerdict::Equal(_))
    }
}

impl IdealHandle {
    pub fn new(ring: &QRing, gens: &[Poly], side: Side) -> Self {
        IdealHandle { gb: GroebnerBasis::new(ring, gens, side), exactness: Exactness::Exact }
    }

    pub fn right(ring: &QRing, gens: &[Poly]) -> Self {
        Self::new(ring, gens, Side::Right)
    }

    pub fn two_sided(ring: &QRing, gens: &[Poly]) -> Self {
        Self::new(ring, gens, Side::TwoSided)
    }

    pub fn unit(ring: &QRing, side: Side) -> Self {
        Self::new(ring, &[ring.one()], side)
    }

    pub fn zero(ring: &QRing, side: Side) -> Self {
        Self::new(ring, &[], side)
    }

    pub fn from_gb(gb: GroebnerBasis, exactness: Exactness) -> Self {
        IdealHandle { gb, exactness }
    }

    pub fn with_exactness(mut self, e: Exactness) -> Self {
        self.exactness = e;
        self
    }

    pub fn ring(&self) -> &QRing {
        self.gb.ring()
    }

    pub fn side(&self) -> Side {
        self.gb.side()
    }

    pub fn is_two_sided(&self) -> bool {
        self.gb.is_two_sided()
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &[Poly] {
        self.gb.basis()
    }

    pub fn generators(&self) -> &[Poly] {
        self.gb.generators()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_unit_ideal()
    }

    pub fn is_zero(&self) -> bool {
        self.gb.is_zero_ideal()
    }

    pub fn max_degree(&self) -> u32 {
        self.gb.max_degree()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb.normal_form(f)
    }

    /// Membership, refused above the degree the handle is certified for.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        let d = f.degree().unwrap_or(0);
        if let Exactness::UpToDegree(avail) = self.exactness {
            if d > avail {
                return Err(Error::DegreeBoundTooLow { needed: d, available: avail });
            }
        }
        Ok(self.gb.contains(f))
    }

    /// Membership in the computed ideal, which is always contained in the true one.
    pub fn contains_computed(&self, f: &Poly) -> bool {
        self.gb.contains(f)
    }

    /// The same set regarded as a right ideal.
    pub fn as_right(&self) -> IdealHandle {
        if self.side() == Side::Right {
            return self.clone();
        }
        IdealHandle { gb: GroebnerBasis::right(self.ring(), self.basis()), exactness: self.exactness }
    }

    /// Image under a diagonal automorphism.
    pub fn apply_auto(&self, psi: &DiagAuto) -> IdealHandle {
        let gens: Vec<Poly> = self.basis().iter().map(|g| psi.apply(g)).collect();
        IdealHandle { gb: GroebnerBasis::new(self.ring(), &gens, self.side()), exactness: self.exactness }
    }

    pub fn display_basis(&self) -> Vec<String> {
        self.basis().iter().map(|g| self.ring().fmt_poly(g)).collect()
    }
}

fn same_ring(a: &IdealHandle, b: &IdealHandle) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

fn joint_side(a: &IdealHandle, b: &IdealHandle) -> Side {
    if a.is_two_sided() && b.is_two_sided() {
        Side::TwoSided
    } else {
        Side::Right
    }
}

/// A + B; a right ideal unless both summands are two-sided.
pub fn sum(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    same_ring(a, b)?;
    let gens: Vec<Poly> = a.basis().iter().chain(b.basis()).cloned().collect();
    Ok(IdealHandle::new(a.ring(), &gens, joint_side(a, b)).with_exactness(a.exactness.meet(b.exactness)))
}

/// A·B for two-sided A. The product is two-sided: A absorbs on the left.
pub fn product(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    same_ring(a, b)?;
    if !a.is_two_sided() {
        return Err(Error::SideMismatch("the left factor of a product must be two-sided".into()));
    }
    let ring = a.ring();
    let e = a.exactness.meet(b.exactness);
    if b.is_two_sided() {
        // A = Σ gᵢR and B = Σ kⱼR two-sided give AB = Σ gᵢkⱼR.
        let gens: Vec<Poly> =
            a.basis().iter().flat_map(|g| b.basis().iter().map(move |k| ring.mul(g, k))).collect();
        return Ok(IdealHandle::two_sided(ring, &gens).with_exactness(e));
    }
    let left = a.gb.left_generators();
    let gens: Vec<Poly> = left.iter().flat_map(|g| b.basis().iter().map(move |k| ring.mul(g, k))).collect();
    Ok(IdealHandle::two_sided(ring, &gens).with_exactness(e))
}

/// Iⁿ with I⁰ = R.
pub fn power(i: &IdealHandle, n: u32) -> Result<IdealHandle> {
    if !i.is_two_sided() {
        return Err(Error::SideMismatch("powers need a two-sided ideal".into()));
    }
    let mut acc = IdealHandle::unit(i.ring(), Side::TwoSided);
    for _ in 0..n {
        acc = product(i, &acc)?;
    }
    Ok(acc.with_exactness(i.exactness))
}

/// A ∩ B through the right ideal tA + (1−t)B in R[t] with t central, eliminating t.
pub fn intersect(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    same_ring(a, b)?;
    let ring = a.ring();
    let ext = ring.adjoin_central_variable("__t")?;
    let t = ext.var(ring.n());
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens = Vec::new();
    for g in a.basis() {
        gens.push(ext.mul(&t, &ext.embed_from_base(g)));
    }
    for g in b.basis() {
        gens.push(ext.mul(&one_minus_t, &ext.embed_from_base(g)));
    }
    let gb = GroebnerBasis::right(&ext, &gens);
    let zero = ring.field().zero();
    let kept: Vec<Poly> = gb
        .basis()
        .iter()
        .filter(|g| ext.avoids_var(g, ring.n()))
        .map(|g| ext.specialize_last(g, &zero, ring))
        .collect();
    let out = IdealHandle::new(ring, &kept, joint_side(a, b)).with_exactness(a.exactness.meet(b.exactness));
    debug_assert!(out.basis().iter().all(|g| a.contains_computed(g) && b.contains_computed(g)));
    Ok(out)
}

/// Check that every generator of `inter` lies in both `a` and `b`.
pub fn intersection_certificate(inter: &IdealHandle, a: &IdealHandle, b: &IdealHandle) -> bool {
    inter.basis().iter().all(|g| a.contains_computed(g) && b.contains_computed(g))
}

/// {z : z·h ∈ K} for a normal element h whose monomials all induce the same
/// automorphism ψ (any monomial, or any polynomial in a commutative ring).
///
/// Since z·h = h·ψ⁻¹(z), the colon is ψ(h⁻¹(K ∩ hR)).
pub fn colon_normal(k: &IdealHandle, h: &Poly) -> Result<IdealHandle> {
    let ring = k.ring();
    if h.is_zero() {
        return Err(Error::NotAMonomial("0".into()));
    }
    let psi = ring.normal_automorphism(h).ok_or_else(|| Error::NotAMonomial(ring.fmt_poly(h)))?;
    let hr = IdealHandle::right(ring, std::slice::from_ref(h));
    let meet = intersect(&k.as_right(), &hr)?;
    let gens: Vec<Poly> = meet
        .basis()
        .iter()
        .map(|g| psi.apply(&ring.left_divide(h, g).expect("elements of hR are left-divisible by h")))
        .collect();
    Ok(IdealHandle::new(ring, &gens, k.side()).with_exactness(k.exactness))
}

/// Whether `h` can be handled by [`colon_normal`].
pub fn is_normal_homogeneous(ring: &QRing, h: &Poly) -> bool {
    !h.is_zero() && ring.normal_automorphism(h).is_some()
}

/// {z : z·I ⊆ K} restricted to degree ≤ d, as the kernel of z ↦ (NF(z·hⱼ))ⱼ over the
/// standard monomials of K, where hⱼ right-generate I. The computed ideal is always
/// contained in the true colon and agrees with it in degrees ≤ d.
pub fn colon_truncated(k: &IdealHandle, i: &IdealHandle, d: u32) -> Result<IdealHandle> {
    same_ring(k, i)?;
    if !i.is_two_sided() {
        return Err(Error::SideMismatch("the divisor of a colon must be two-sided".into()));
    }
    let ring = k.ring();
    let hs = i.basis();
    let maxdeg = i.max_degree();
    if let Exactness::UpToDegree(avail) = k.exactness {
        if avail < d + maxdeg {
            return Err(Error::DegreeBoundTooLow { needed: d + maxdeg, available: avail });
        }
    }
    let side = joint_side(k, i);
    let e = i.exactness.meet(Exactness::UpToDegree(d));
    if hs.is_empty() {
        return Ok(IdealHandle::unit(ring, side).with_exactness(e));
    }
    let std_monos = k.gb.standard_monomials(d);
    if std_monos.is_empty() {
        return Ok(k.clone().with_exactness(k.exactness.meet(e)));
    }
    let cols = MonomialBasis::up_to_degree(ring.n(), d + maxdeg);
    let rows: Vec<Row> = std_monos
        .iter()
        .map(|b| {
            let bp = ring.monomial(b.clone());
            hs.iter().flat_map(|h| cols.row(ring, &k.normal_form(&ring.mul(&bp, h)))).collect()
        })
        .collect();
    let kernel = linalg::left_kernel(&rows, ring.field());
    let std_basis = MonomialBasis::from_monomials(std_monos);
    let mut gens: Vec<Poly> = k.basis().to_vec();
    gens.extend(kernel.iter().map(|c| std_basis.poly(ring, c)));
    let out = IdealHandle::new(ring, &gens, side);
    Ok(out.with_exactness(k.exactness.meet(e)))
}

/// A ⊆ B, decided on the computed bases. Returns a basis element of A outside B if any.
pub fn subset_witness(a: &IdealHandle, b: &IdealHandle) -> Option<Poly> {
    a.basis().iter().find(|g| !b.contains_computed(g)).cloned()
}

/// Compare two ideals as sets of elements. With exact inputs the reduced bases decide;
/// otherwise both are compared on degrees ≤ min(D), and the verdict says so.
pub fn equal(a: &IdealHandle, b: &IdealHandle) -> Result<EqualityVerdict> {
    same_ring(a, b)?;
    let ring = a.ring();
    let e = a.exactness.meet(b.exactness);
    let limit = e.bound();
    let in_range = |g: &&Poly| limit.is_none_or(|d| g.degree().unwrap_or(0) <= d);
    let mut candidates: Vec<(Poly, bool)> = Vec::new();
    for g in a.basis().iter().filter(in_range) {
        if !b.contains_computed(g) {
            candidates.push((g.clone(), true));
        }
    }
    for g in b.basis().iter().filter(in_range) {
        if !a.contains_computed(g) {
            candidates.push((g.clone(), false));
        }
    }
    let best = candidates.into_iter().min_by(|x, y| {
        let (lx, ly) = (x.0.lm().expect("nonzero"), y.0.lm().expect("nonzero"));
        ring.cmp_monomials(lx, ly).then_with(|| y.1.cmp(&x.1))
    });
    Ok(match best {
        None => EqualityVerdict::Equal(e),
        Some((witness, in_first)) => EqualityVerdict::NotEqual { witness, in_first, exactness: e },
    })
}

/// A + B = R.
pub fn is_comaximal(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    Ok(sum(a, b)?.is_unit())
}

/// Ordering helper: compare leading monomials of two polynomials in a ring.
pub fn cmp_leading(ring: &QRing, a: &Poly, b: &Poly) -> Ordering {
    match (a.lm(), b.lm()) {
        (Some(x), Some(y)) => ring.cmp_monomials(x, y),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
    }
}

/// The monomial x^a as an element, rejecting non-monomials.
pub fn as_monomial(ring: &QRing, h: &Poly) -> Result<Monomial> {
    if h.is_monomial() {
        Ok(h.lm().expect("nonzero").clone())
    } else {
        Err(Error::NotAMonomial(ring.fmt_poly(h)))
    }
}
