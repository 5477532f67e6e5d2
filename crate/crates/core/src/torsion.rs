//! Torsion theories given by powers of a two-sided ideal I, saturation, the chain
//! T_n = sat(IⁿK), and the stability predicates built on it.
//!
//! Two facts drive the exact verdicts:
//!
//! * The chain is constant iff K ⊆ sat(IK) iff K·Iᵐ ⊆ IK for some m. A constant chain
//!   is therefore certified by exhibiting such an m.
//! * If K = hR for a normal h with h·r = ψ(r)·h, I is proper and I + ψ(I) = R, then
//!   for v ∈ Iⁿ \ Iⁿ⁺¹ the element h·ψ⁻¹(v) lies in T_n but not in T_{n+1}.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gb::Side;
use crate::ideal::{self, EqualityVerdict, Exactness, IdealHandle};
use crate::ring::{DiagAuto, Poly};

/// The localizing subcategory of modules killed elementwise by powers of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionTheory {
    base: IdealHandle,
}

impl TorsionTheory {
    pub fn new(base: IdealHandle) -> Result<Self> {
        if !base.is_two_sided() {
            return Err(Error::SideMismatch("a torsion theory needs a two-sided base ideal".into()));
        }
        Ok(TorsionTheory { base })
    }

    pub fn base(&self) -> &IdealHandle {
        &self.base
    }

    /// Base R: only the zero module is torsion.
    pub fn is_trivial(&self) -> bool {
        self.base.is_unit()
    }

    /// Base 0: every module is torsion.
    pub fn is_everything(&self) -> bool {
        self.base.is_zero()
    }

    /// Whether every right generator of the base is normal, so colons are exact.
    pub fn has_normal_generators(&self) -> bool {
        let ring = self.base.ring();
        self.base.basis().iter().all(|h| ideal::is_normal_homogeneous(ring, h))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub degree: u32,
    pub chain_length: usize,
    pub max_iters: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { degree: 12, chain_length: 4, max_iters: 8 }
    }
}

impl Bounds {
    pub fn with_degree(degree: u32) -> Self {
        Bounds { degree, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SatMethod {
    Unchanged,
    Everything,
    NormalColon,
    Truncated { working_degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub ideal: IdealHandle,
    pub iterations: usize,
    pub cap_hit: bool,
    pub method: SatMethod,
}

/// {z : z·I ⊆ K} computed exactly as an intersection of colons by normal generators.
fn colon_exact(k: &IdealHandle, t: &TorsionTheory) -> Result<IdealHandle> {
    let mut acc: Option<IdealHandle> = None;
    for h in t.base.basis() {
        let c = ideal::colon_normal(k, h)?;
        acc = Some(match acc {
            None => c,
            Some(a) => ideal::intersect(&a, &c)?,
        });
    }
    Ok(acc.expect("nonempty base"))
}

/// K̃ = {z : z·Iᵐ ⊆ K for some m}.
pub fn saturate(k: &IdealHandle, t: &TorsionTheory, d: u32) -> Result<IdealHandle> {
    Ok(saturate_with(k, t, Bounds::with_degree(d))?.ideal)
}

/// Saturation with its bookkeeping. Reaching the iteration cap is reported through
/// `cap_hit`, and the last iterate is returned labelled `UpToDegree`.
pub fn saturate_with(k: &IdealHandle, t: &TorsionTheory, b: Bounds) -> Result<Saturation> {
    if k.ring() != t.base.ring() {
        return Err(Error::RingMismatch);
    }
    if t.is_trivial() {
        return Ok(Saturation { ideal: k.clone(), iterations: 0, cap_hit: false, method: SatMethod::Unchanged });
    }
    if t.is_everything() || k.is_unit() {
        let unit = IdealHandle::unit(k.ring(), k.side()).with_exactness(k.exactness());
        return Ok(Saturation { ideal: unit, iterations: 0, cap_hit: false, method: SatMethod::Everything });
    }
    if t.has_normal_generators() {
        let mut cur = k.clone();
        for it in 1..=b.max_iters {
            let next = colon_exact(&cur, t)?.with_exactness(k.exactness());
            if ideal::subset_witness(&next, &cur).is_none() {
                return Ok(Saturation { ideal: cur, iterations: it, cap_hit: false, method: SatMethod::NormalColon });
            }
            cur = next;
        }
        let e = k.exactness().meet(Exactness::UpToDegree(b.degree));
        return Ok(Saturation {
            ideal: cur.with_exactness(e),
            iterations: b.max_iters,
            cap_hit: true,
            method: SatMethod::NormalColon,
        });
    }
    saturate_truncated(k, t, b)
}

/// Iterated truncated colon. Step j runs at degree W − (j−1)·maxdeg so that its input is
/// valid where it is read; the working degree W is raised when the budget runs out.
fn saturate_truncated(k: &IdealHandle, t: &TorsionTheory, b: Bounds) -> Result<Saturation> {
    let maxdeg = t.base.max_degree().max(1);
    let limit = k.exactness().bound().map(|a| a.saturating_sub(maxdeg));
    if let Some(l) = limit {
        if l < b.degree {
            return Err(Error::DegreeBoundTooLow { needed: b.degree + maxdeg, available: l + maxdeg });
        }
    }
    let mut budget = 2usize.min(b.max_iters.max(1));
    loop {
        let mut w = b.degree + (budget as u32 - 1) * maxdeg;
        if let Some(l) = limit {
            w = w.min(l);
        }
        let mut cur = k.clone();
        let mut step_degree = w;
        for it in 1..=budget {
            let next = ideal::colon_truncated(&cur, &t.base, step_degree)?;
            let same = matches!(ideal::equal(&cur.clone().with_exactness(next.exactness()), &next)?, EqualityVerdict::Equal(_));
            if same {
                let e = k.exactness().meet(Exactness::UpToDegree(b.degree));
                return Ok(Saturation {
                    ideal: next.with_exactness(e),
                    iterations: it,
                    cap_hit: false,
                    method: SatMethod::Truncated { working_degree: w },
                });
            }
            cur = next;
            if step_degree < b.degree + maxdeg {
                break;
            }
            step_degree -= maxdeg;
        }
        let max_budget = b.max_iters.max(1);
        let bounded = limit.is_some_and(|l| w >= l);
        if budget >= max_budget || bounded {
            let e = k.exactness().meet(Exactness::UpToDegree(b.degree));
            return Ok(Saturation {
                ideal: cur.with_exactness(e),
                iterations: budget,
                cap_hit: true,
                method: SatMethod::Truncated { working_degree: w },
            });
        }
        budget = (budget * 2).min(max_budget);
    }
}

/// Smallest m ≤ `max_m` with w·Iᵐ ⊆ `target` (membership in the computed target).
pub fn torsion_exponent(w: &Poly, target: &IdealHandle, t: &TorsionTheory, max_m: u32) -> Result<Option<u32>> {
    let ring = target.ring();
    let mut pw = IdealHandle::unit(ring, Side::TwoSided);
    for m in 0..=max_m {
        if pw.basis().iter().all(|h| target.contains_computed(&ring.mul(w, h))) {
            return Ok(Some(m));
        }
        pw = ideal::product(&t.base, &pw)?;
    }
    Ok(None)
}

/// Smallest m ≤ `max_m` with K·Iᵐ ⊆ IK, which certifies that the chain is constant.
pub fn power_absorption(k: &IdealHandle, t: &TorsionTheory, max_m: u32) -> Result<Option<u32>> {
    let ik = ideal::product(&t.base, k)?;
    let ring = k.ring();
    let mut pw = t.base.clone();
    for m in 1..=max_m {
        let ok = k.basis().iter().all(|g| pw.basis().iter().all(|h| ik.contains_computed(&ring.mul(g, h))));
        if ok {
            return Ok(Some(m));
        }
        if m < max_m {
            pw = ideal::product(&t.base, &pw)?;
        }
    }
    Ok(None)
}

/// Evidence from the comaximality argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComaximalityCertificate {
    /// K = hR.
    pub normal: Poly,
    pub automorphism: DiagAuto,
    /// (n, v, w): v ∈ Iⁿ \ Iⁿ⁺¹ and w = h·ψ⁻¹(v) ∈ T_n \ T_{n+1}.
    pub descents: Vec<(usize, Poly, Poly)>,
}

/// The exact non-stabilization criterion, when K is principal on a normal element,
/// I is proper and I + ψ(I) = R. Descent witnesses are produced for n ≤ `max_n`.
pub fn comaximality_criterion(
    k: &IdealHandle,
    t: &TorsionTheory,
    max_n: usize,
) -> Result<Option<ComaximalityCertificate>> {
    let ring = k.ring();
    if !k.exactness().is_exact() || k.basis().len() != 1 || t.base.is_unit() || t.base.is_zero() {
        return Ok(None);
    }
    let h = &k.basis()[0];
    let Some(psi) = ring.normal_automorphism(h) else {
        return Ok(None);
    };
    let psi_i = t.base.apply_auto(&psi);
    if !ideal::is_comaximal(&t.base, &psi_i)? {
        return Ok(None);
    }
    let inv = psi.inverse();
    let mut descents = Vec::new();
    let mut cur = IdealHandle::unit(ring, Side::TwoSided);
    for n in 0..=max_n {
        let next = ideal::product(&t.base, &cur)?;
        match ideal::equal(&cur, &next)? {
            EqualityVerdict::NotEqual { witness, in_first: true, .. } => {
                let w = ring.mul(h, &inv.apply(&witness));
                descents.push((n, witness, w));
            }
            _ => break,
        }
        cur = next;
    }
    Ok(Some(ComaximalityCertificate { normal: h.clone(), automorphism: psi, descents }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub n: usize,
    /// An element of T_n outside T_{n+1}.
    pub witness: Poly,
    pub exactness: Exactness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub terms: Vec<IdealHandle>,
    pub stabilized_at: Option<usize>,
    pub strict_descents: Vec<Descent>,
    /// T_{n+1} ⊆ T_n held on every computed basis element within the certified degrees.
    pub nested: bool,
    pub exactness: Exactness,
    pub cap_hit: bool,
    pub criterion: Option<ComaximalityCertificate>,
}

/// T_n = sat(IⁿK) for n = 0..=N.
pub fn tilde_chain(k: &IdealHandle, t: &TorsionTheory, b: Bounds) -> Result<ChainReport> {
    let mut terms = Vec::with_capacity(b.chain_length + 1);
    let mut cap_hit = false;
    let mut power_k = k.clone();
    for n in 0..=b.chain_length {
        if n > 0 {
            power_k = ideal::product(&t.base, &power_k)?;
        }
        let s = saturate_with(&power_k, t, b)?;
        cap_hit |= s.cap_hit;
        terms.push(s.ideal);
    }
    let criterion = comaximality_criterion(k, t, b.chain_length)?;
    let mut stabilized_at = None;
    let mut strict_descents = Vec::new();
    let mut nested = true;
    let mut exactness = Exactness::Exact;
    for term in &terms {
        exactness = exactness.meet(term.exactness());
    }
    for n in 0..b.chain_length {
        let (a, c) = (&terms[n], &terms[n + 1]);
        let e = a.exactness().meet(c.exactness());
        if let Some(w) = ideal::subset_witness(c, a) {
            if e.covers(w.degree().unwrap_or(0)) {
                nested = false;
            }
        }
        let exact_witness =
            criterion.as_ref().and_then(|cc| cc.descents.iter().find(|d| d.0 == n)).map(|d| d.2.clone());
        match (exact_witness, ideal::equal(a, c)?) {
            (Some(w), _) => strict_descents.push(Descent { n, witness: w, exactness: Exactness::Exact }),
            (None, EqualityVerdict::NotEqual { witness, in_first, exactness }) => {
                if in_first {
                    strict_descents.push(Descent { n, witness, exactness });
                } else {
                    nested = false;
                }
            }
            (None, EqualityVerdict::Equal(_)) => {
                if stabilized_at.is_none() {
                    stabilized_at = Some(n);
                }
            }
        }
    }
    Ok(ChainReport { terms, stabilized_at, strict_descents, nested, exactness, cap_hit, criterion })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Certificate {
    /// The base ideal is R: nothing is torsion.
    TrivialTheory,
    /// The base ideal is 0: everything is torsion.
    EverythingTorsion,
    /// K·Iᵐ ⊆ IK.
    PowerAbsorbed { m: u32 },
    /// K equals its computed saturation.
    Saturated { iterations: usize },
    /// witness·Iᵐ ⊆ K while the witness is not in K.
    TorsionElement { m: u32 },
    /// K = hR, h normal with automorphism ψ, I + ψ(I) = R; descents checked at these n.
    Comaximality { normal: String, descents_checked: Vec<usize> },
    /// Computed chain evidence.
    Chain { compared: usize },
    /// Both conditions of closedness.
    Both { tf: Box<Certificate>, stable: Box<Certificate> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Holds { exactness: Exactness, certificate: Certificate },
    Fails { n: usize, witness: Poly, exactness: Exactness, certificate: Certificate },
    Undetermined { chain_length: usize, degree: u32 },
}

impl StabilityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, StabilityVerdict::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, StabilityVerdict::Fails { .. })
    }

    pub fn is_exact(&self) -> bool {
        match self {
            StabilityVerdict::Holds { exactness, .. } | StabilityVerdict::Fails { exactness, .. } => {
                exactness.is_exact()
            }
            StabilityVerdict::Undetermined { .. } => false,
        }
    }
}

/// K = K̃: R/K has no torsion.
pub fn is_torsionfree_generated(k: &IdealHandle, t: &TorsionTheory, b: Bounds) -> Result<StabilityVerdict> {
    let ring = k.ring();
    if t.is_trivial() {
        return Ok(StabilityVerdict::Holds { exactness: k.exactness(), certificate: Certificate::TrivialTheory });
    }
    if t.is_everything() {
        return Ok(if k.is_unit() {
            StabilityVerdict::Holds { exactness: k.exactness(), certificate: Certificate::EverythingTorsion }
        } else {
            StabilityVerdict::Fails {
                n: 0,
                witness: ring.one(),
                exactness: k.exactness(),
                certificate: Certificate::EverythingTorsion,
            }
        });
    }
    let sat = saturate_with(k, t, b)?;
    match ideal::equal(k, &sat.ideal)? {
        EqualityVerdict::Equal(e) => {
            if sat.cap_hit {
                return Ok(StabilityVerdict::Undetermined { chain_length: 0, degree: b.degree });
            }
            Ok(StabilityVerdict::Holds {
                exactness: e.meet(sat.ideal.exactness()),
                certificate: Certificate::Saturated { iterations: sat.iterations },
            })
        }
        EqualityVerdict::NotEqual { witness, exactness, .. } => {
            let bound = sat.iterations as u32 + 1;
            match torsion_exponent(&witness, k, t, bound)? {
                Some(m) if !k.contains_computed(&witness) => Ok(StabilityVerdict::Fails {
                    n: 0,
                    witness,
                    exactness: k.exactness(),
                    certificate: Certificate::TorsionElement { m },
                }),
                _ => Ok(StabilityVerdict::Fails {
                    n: 0,
                    witness,
                    exactness,
                    certificate: Certificate::Saturated { iterations: sat.iterations },
                }),
            }
        }
    }
}

/// The chain T_n = sat(IⁿK) is constant.
pub fn is_essentially_stable(k: &IdealHandle, t: &TorsionTheory, b: Bounds) -> Result<StabilityVerdict> {
    if t.is_trivial() {
        return Ok(StabilityVerdict::Holds { exactness: k.exactness(), certificate: Certificate::TrivialTheory });
    }
    if t.is_everything() || k.is_unit() {
        return Ok(StabilityVerdict::Holds { exactness: k.exactness(), certificate: Certificate::EverythingTorsion });
    }
    if k.exactness().is_exact() {
        if let Some(m) = power_absorption(k, t, b.chain_length.max(1) as u32)? {
            return Ok(StabilityVerdict::Holds { exactness: Exactness::Exact, certificate: Certificate::PowerAbsorbed { m } });
        }
        if let Some(cc) = comaximality_criterion(k, t, 0)? {
            if let Some((_, _, w)) = cc.descents.first() {
                return Ok(StabilityVerdict::Fails {
                    n: 0,
                    witness: w.clone(),
                    exactness: Exactness::Exact,
                    certificate: Certificate::Comaximality {
                        normal: k.ring().fmt_poly(&cc.normal),
                        descents_checked: cc.descents.iter().map(|d| d.0).collect(),
                    },
                });
            }
        }
    }
    let chain = tilde_chain(k, t, b)?;
    if let Some(d) = chain.strict_descents.first() {
        return Ok(StabilityVerdict::Fails {
            n: d.n,
            witness: d.witness.clone(),
            exactness: d.exactness,
            certificate: Certificate::Chain { compared: b.chain_length },
        });
    }
    if chain.stabilized_at == Some(0) && chain.exactness.is_exact() && !chain.cap_hit {
        return Ok(StabilityVerdict::Holds {
            exactness: Exactness::Exact,
            certificate: Certificate::Chain { compared: b.chain_length },
        });
    }
    Ok(StabilityVerdict::Undetermined { chain_length: b.chain_length, degree: b.degree })
}

/// Closed in the quotient: torsionfree generated and essentially stable.
pub fn is_y_closed(k: &IdealHandle, t: &TorsionTheory, b: Bounds) -> Result<StabilityVerdict> {
    let tf = is_torsionfree_generated(k, t, b)?;
    if tf.fails() {
        return Ok(tf);
    }
    let es = is_essentially_stable(k, t, b)?;
    Ok(match (tf, es) {
        (_, f @ StabilityVerdict::Fails { .. }) => f,
        (
            StabilityVerdict::Holds { exactness: e1, certificate: c1 },
            StabilityVerdict::Holds { exactness: e2, certificate: c2 },
        ) => StabilityVerdict::Holds {
            exactness: e1.meet(e2),
            certificate: Certificate::Both { tf: Box::new(c1), stable: Box::new(c2) },
        },
        _ => StabilityVerdict::Undetermined { chain_length: b.chain_length, degree: b.degree },
    })
}

/// Defining ideal of the Gabriel product Z∗W of closed subcategories.
pub fn gabriel_product_ideal(kz: &IdealHandle, kw: &IdealHandle) -> Result<IdealHandle> {
    ideal::product(kz, kw)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreChain {
    pub chain: ChainReport,
    /// T_n = φⁿ(K̃) for every computed n, φ the automorphism of s.
    pub twisted_terms_agree: bool,
}

/// The chain for the torsion theory of powers of sR, s a nonzero monomial.
pub fn ore_chain(k: &IdealHandle, s: &Poly, chain_length: usize) -> Result<OreChain> {
    let ring = k.ring();
    let m = ideal::as_monomial(ring, s)?;
    let phi = ring.monomial_automorphism(&m);
    let t = TorsionTheory::new(IdealHandle::two_sided(ring, std::slice::from_ref(s)))?;
    let b = Bounds { chain_length, ..Bounds::default() };
    let chain = tilde_chain(k, &t, b)?;
    let base = &chain.terms[0];
    let mut agree = true;
    if k.is_two_sided() {
        let mut tw = base.clone();
        for term in &chain.terms {
            agree &= ideal::equal(term, &tw)?.is_equal();
            tw = tw.apply_auto(&phi);
        }
    }
    Ok(OreChain { chain, twisted_terms_agree: agree })
}
