//! Union and intersection of closed subcategories at the level of defining ideals, their
//! counterparts in a quotient category, and distributivity testing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::findim::LinIdeal;
use crate::ideal::{self, EqualityVerdict, IdealHandle};
use crate::ring::Poly;
use crate::torsion::{self, Bounds, Certificate, StabilityVerdict, TorsionTheory};

/// Z = Mod-(R/K) for a two-sided ideal K, over a quantum affine space or a finite-dimensional algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedSubcat {
    Quantum(IdealHandle),
    FinDim(LinIdeal),
}

impl ClosedSubcat {
    /// Right ideals are accepted when they are closed under left multiplication too.
    pub fn quantum(k: IdealHandle) -> Result<Self> {
        if let Some(d) = k.exactness().bound() {
            return Err(Error::InexactIdeal(d));
        }
        if k.is_two_sided() {
            return Ok(ClosedSubcat::Quantum(k));
        }
        if !k.gb().verify_two_sided() {
            return Err(Error::SideMismatch("a closed subcategory needs a two-sided ideal".into()));
        }
        Ok(ClosedSubcat::Quantum(IdealHandle::two_sided(k.ring(), k.basis())))
    }

    pub fn findim(k: LinIdeal) -> Result<Self> {
        if !k.two_sided {
            return Err(Error::SideMismatch("a closed subcategory needs a two-sided ideal".into()));
        }
        Ok(ClosedSubcat::FinDim(k))
    }

    pub fn as_quantum(&self) -> Option<&IdealHandle> {
        match self {
            ClosedSubcat::Quantum(k) => Some(k),
            ClosedSubcat::FinDim(_) => None,
        }
    }

    pub fn as_findim(&self) -> Option<&LinIdeal> {
        match self {
            ClosedSubcat::FinDim(k) => Some(k),
            ClosedSubcat::Quantum(_) => None,
        }
    }

    /// self ⊆ other as subcategories, i.e. other's ideal lies in self's.
    pub fn is_subcategory_of(&self, other: &ClosedSubcat) -> Result<bool> {
        match (self, other) {
            (ClosedSubcat::Quantum(a), ClosedSubcat::Quantum(b)) => {
                ideal::equal(a, b)?;
                Ok(ideal::subset_witness(b, a).is_none())
            }
            (ClosedSubcat::FinDim(a), ClosedSubcat::FinDim(b)) => Ok(b.space.is_subset(&a.space)),
            _ => Err(Error::RingMismatch),
        }
    }
}

fn lin(space: crate::findim::Subspace) -> LinIdeal {
    // Sums and intersections of two-sided ideals stay two-sided.
    LinIdeal { space, right_stable: true, two_sided: true }
}

/// Z₁ ∩ Z₂, defined by K₁ + K₂.
pub fn meet(a: &ClosedSubcat, b: &ClosedSubcat) -> Result<ClosedSubcat> {
    match (a, b) {
        (ClosedSubcat::Quantum(x), ClosedSubcat::Quantum(y)) => Ok(ClosedSubcat::Quantum(ideal::sum(x, y)?)),
        (ClosedSubcat::FinDim(x), ClosedSubcat::FinDim(y)) => Ok(ClosedSubcat::FinDim(lin(x.space.sum(&y.space)))),
        _ => Err(Error::RingMismatch),
    }
}

/// Z₁ ∪ Z₂, defined by K₁ ∩ K₂.
pub fn join(a: &ClosedSubcat, b: &ClosedSubcat) -> Result<ClosedSubcat> {
    match (a, b) {
        (ClosedSubcat::Quantum(x), ClosedSubcat::Quantum(y)) => Ok(ClosedSubcat::Quantum(ideal::intersect(x, y)?)),
        (ClosedSubcat::FinDim(x), ClosedSubcat::FinDim(y)) => {
            Ok(ClosedSubcat::FinDim(lin(x.space.intersect(&y.space))))
        }
        _ => Err(Error::RingMismatch),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributiveLaw {
    /// K₁ ∩ (K₂ + K₃) = (K₁ ∩ K₂) + (K₁ ∩ K₃).
    MeetOverSum,
    /// K₁ + (K₂ ∩ K₃) = (K₁ + K₂) ∩ (K₁ + K₃).
    SumOverMeet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: DistributiveLaw,
    pub lhs: IdealHandle,
    pub rhs: IdealHandle,
    pub verdict: EqualityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributivityReport {
    pub checks: Vec<LawCheck>,
}

impl DistributivityReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.is_equal())
    }

    /// The first failing law with its witness and whether the witness lies in the left side.
    pub fn witness(&self) -> Option<(DistributiveLaw, &Poly, bool)> {
        self.checks.iter().find_map(|c| match &c.verdict {
            EqualityVerdict::NotEqual { witness, in_first, .. } => Some((c.law, witness, *in_first)),
            EqualityVerdict::Equal(_) => None,
        })
    }
}

/// Both distributive laws on three ideals, each with an ideal-level witness on failure.
pub fn distributivity_check(k1: &IdealHandle, k2: &IdealHandle, k3: &IdealHandle) -> Result<DistributivityReport> {
    let lhs = ideal::intersect(k1, &ideal::sum(k2, k3)?)?;
    let rhs = ideal::sum(&ideal::intersect(k1, k2)?, &ideal::intersect(k1, k3)?)?;
    let first = LawCheck { law: DistributiveLaw::MeetOverSum, verdict: ideal::equal(&lhs, &rhs)?, lhs, rhs };
    let lhs = ideal::sum(k1, &ideal::intersect(k2, k3)?)?;
    let rhs = ideal::intersect(&ideal::sum(k1, k2)?, &ideal::sum(k1, k3)?)?;
    let second = LawCheck { law: DistributiveLaw::SumOverMeet, verdict: ideal::equal(&lhs, &rhs)?, lhs, rhs };
    Ok(DistributivityReport { checks: vec![first, second] })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YLatticeResult {
    /// The ideal representing the result in X/Y, when it is closed there.
    pub ideal: Option<IdealHandle>,
    /// Y-essential stability of the underlying ideal (K₁ + K₂ or K₁ ∩ K₂).
    pub stability: StabilityVerdict,
}

fn quantum_pair<'a>(a: &'a ClosedSubcat, b: &'a ClosedSubcat) -> Result<(&'a IdealHandle, &'a IdealHandle)> {
    match (a, b) {
        (ClosedSubcat::Quantum(x), ClosedSubcat::Quantum(y)) => Ok((x, y)),
        _ => Err(Error::RingMismatch),
    }
}

/// π(Z₁) ∩ π(Z₂): the saturation of K₁ + K₂.
pub fn y_meet(a: &ClosedSubcat, b: &ClosedSubcat, t: &TorsionTheory, bounds: Bounds) -> Result<YLatticeResult> {
    let (x, y) = quantum_pair(a, b)?;
    let s = ideal::sum(x, y)?;
    let stability = torsion::is_essentially_stable(&s, t, bounds)?;
    let sat = torsion::saturate_with(&s, t, bounds)?;
    Ok(YLatticeResult { ideal: Some(sat.ideal), stability })
}

/// π(Z₁) ∪ π(Z₂) = π(Z₁ ∪ Z₂). It is closed in X/Y exactly when the chain (Iⁿ(K₁ ∩ K₂))~
/// stabilizes, and then the stable term represents it.
pub fn y_join(a: &ClosedSubcat, b: &ClosedSubcat, t: &TorsionTheory, bounds: Bounds) -> Result<YLatticeResult> {
    let (x, y) = quantum_pair(a, b)?;
    let j = ideal::intersect(x, y)?;
    let stability = torsion::is_essentially_stable(&j, t, bounds)?;
    let ideal = match &stability {
        StabilityVerdict::Holds { .. } => Some(torsion::saturate_with(&j, t, bounds)?.ideal),
        // The criterion certifies a strict descent at every n: no stable term exists.
        StabilityVerdict::Fails { certificate: Certificate::Comaximality { .. }, .. } => None,
        _ => {
            let chain = torsion::tilde_chain(&j, t, bounds)?;
            chain.stabilized_at.map(|n| chain.terms[n].clone())
        }
    };
    Ok(YLatticeResult { ideal, stability })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::QRing;

    fn kxy() -> QRing {
        QRing::commutative(&["x", "y"], FieldSpec::Rationals).unwrap()
    }

    fn two(r: &QRing, gens: &[Poly]) -> IdealHandle {
        IdealHandle::two_sided(r, gens)
    }

    #[test]
    fn not_distributive_in_two_variables() {
        let r = kxy();
        let (x, y) = (r.var(0), r.var(1));
        let k1 = two(&r, std::slice::from_ref(&x));
        let k2 = two(&r, std::slice::from_ref(&y));
        let k3 = two(&r, &[r.add(&x, &y)]);
        let rep = distributivity_check(&k1, &k2, &k3).unwrap();
        assert!(!rep.holds());
        let (law, w, in_lhs) = rep.witness().unwrap();
        assert_eq!((law, w, in_lhs), (DistributiveLaw::MeetOverSum, &x, true));
        let c = &rep.checks[0];
        assert!(ideal::equal(&c.lhs, &k1).unwrap().is_equal());
        let xm = two(&r, &[r.mul(&x, &x), r.mul(&x, &y)]);
        assert!(ideal::equal(&c.rhs, &xm).unwrap().is_equal());
    }

    #[test]
    fn chains_and_principal_ideals_distribute() {
        let r = kxy();
        let x = r.var(0);
        let k3 = two(&r, std::slice::from_ref(&x));
        let k2 = two(&r, &[r.mul(&x, &x)]);
        let k1 = two(&r, &[r.pow(&x, 3)]);
        assert!(distributivity_check(&k1, &k2, &k3).unwrap().holds());
        assert!(distributivity_check(&k3, &k1, &k2).unwrap().holds());
        // 𝕜[x] is a principal ideal domain, hence arithmetical.
        let s = QRing::commutative(&["x"], FieldSpec::Rationals).unwrap();
        let x = s.var(0);
        let one = s.one();
        let a = two(&s, &[s.mul(&x, &s.sub(&x, &one))]);
        let b = two(&s, &[s.mul(&x, &x)]);
        let c = two(&s, &[s.sub(&x, &one)]);
        assert!(distributivity_check(&a, &b, &c).unwrap().holds());
    }

    #[test]
    fn meet_and_join_laws() {
        let r = kxy();
        let (x, y) = (r.var(0), r.var(1));
        let zx = ClosedSubcat::quantum(two(&r, std::slice::from_ref(&x))).unwrap();
        let zy = ClosedSubcat::quantum(two(&r, std::slice::from_ref(&y))).unwrap();
        let m = meet(&zx, &zy).unwrap();
        assert!(ideal::equal(m.as_quantum().unwrap(), &two(&r, &[x.clone(), y.clone()])).unwrap().is_equal());
        let j = join(&zx, &zy).unwrap();
        assert!(ideal::equal(j.as_quantum().unwrap(), &two(&r, &[r.mul(&x, &y)])).unwrap().is_equal());
        assert!(zx.is_subcategory_of(&j).unwrap() && m.is_subcategory_of(&zx).unwrap());
        assert!(!zx.is_subcategory_of(&zy).unwrap());
        // absorption: K + (K ∩ L) = K
        let abs = meet(&zx, &join(&zx, &zy).unwrap()).unwrap();
        assert!(ideal::equal(abs.as_quantum().unwrap(), zx.as_quantum().unwrap()).unwrap().is_equal());
        let right = IdealHandle::right(&r, &[x]);
        assert!(ClosedSubcat::quantum(right.clone()).is_ok());
        let q = QRing::quantum_plane(FieldSpec::Rationals, FieldSpec::Rationals.from_i64(2)).unwrap();
        let rx = IdealHandle::right(&q, &[q.add(&q.var(0), &q.var(1))]);
        assert!(matches!(ClosedSubcat::quantum(rx), Err(Error::SideMismatch(_))));
    }

    #[test]
    fn commutative_joins_are_stable() {
        let r = kxy();
        let (x, y) = (r.var(0), r.var(1));
        let t = TorsionTheory::new(two(&r, &[x.clone(), y.clone()])).unwrap();
        let za = ClosedSubcat::quantum(two(&r, &[r.mul(&x, &x)])).unwrap();
        let zb = ClosedSubcat::quantum(two(&r, &[r.sub(&y, &r.one())])).unwrap();
        let b = Bounds::with_degree(6);
        let j = y_join(&za, &zb, &t, b).unwrap();
        assert!(j.stability.holds());
        let jk = j.ideal.unwrap();
        // Contained in both saturations.
        for z in [&za, &zb] {
            let s = torsion::saturate_with(z.as_quantum().unwrap(), &t, b).unwrap().ideal;
            assert!(ideal::subset_witness(&jk, &s).is_none());
        }
        let m = y_meet(&za, &za, &t, b).unwrap();
        let sat = torsion::saturate_with(za.as_quantum().unwrap(), &t, b).unwrap().ideal;
        assert!(ideal::equal(&m.ideal.unwrap(), &sat).unwrap().is_equal());
    }

    #[test]
    fn triangular_lattice_is_order_reversed() {
        use crate::findim::corpus::{fingerprint, module_corpus, CORPUS_BOUND};
        use crate::findim::{enumerate_two_sided_ideals, examples::upper_triangular, Generators, DEFAULT_BOUND};
        let t = upper_triangular(FieldSpec::prime(2).unwrap());
        let g = Generators::new(&t, DEFAULT_BOUND).unwrap();
        let corpus = module_corpus(&t, 3, CORPUS_BOUND).unwrap();
        let ideals = enumerate_two_sided_ideals(&t, DEFAULT_BOUND).unwrap();
        let print = |k: &LinIdeal| fingerprint(&g, &g.principal(k), &corpus);
        for a in &ideals {
            for b in &ideals {
                let (za, zb) = (ClosedSubcat::findim(a.clone()).unwrap(), ClosedSubcat::findim(b.clone()).unwrap());
                let (pa, pb) = (print(a), print(b));
                let inside = pa.iter().zip(&pb).all(|(x, y)| !x || *y);
                assert_eq!(inside, b.space.is_subset(&a.space));
                assert_eq!(inside, za.is_subcategory_of(&zb).unwrap());
                let m = print(meet(&za, &zb).unwrap().as_findim().unwrap());
                assert!(m.iter().zip(pa.iter().zip(&pb)).all(|(x, (y, z))| *x == (*y && *z)));
                let j = print(join(&za, &zb).unwrap().as_findim().unwrap());
                assert!(j.iter().zip(pa.iter().zip(&pb)).all(|(x, (y, z))| *x || !(*y || *z)));
            }
        }
    }

    #[test]
    fn bad_union_join_is_unstable() {
        let f = FieldSpec::Rationals;
        let names = ["x1", "x2", "x3", "x4"].map(String::from).to_vec();
        let p = f.from_i64(2);
        let pinv = p.inv().unwrap();
        let r = QRing::from_names(names, f)
            .unwrap()
            .with_param(0, 1, p.clone())
            .unwrap()
            .with_param(0, 2, pinv.clone())
            .unwrap()
            .with_param(0, 3, pinv)
            .unwrap();
        let x = |i: usize| r.var(i);
        let z1 = r.mul(&x(1), &x(2));
        let z2 = r.mul(&x(1), &x(3));
        assert!(r.is_central(&z1) && r.is_central(&z2));
        let i = two(&r, &[r.sub(&x(0), &r.one()), x(1), x(2), x(3)]);
        let t = TorsionTheory::new(i).unwrap();
        let za = ClosedSubcat::quantum(two(&r, &[z1])).unwrap();
        let zb = ClosedSubcat::quantum(two(&r, &[z2])).unwrap();
        let b = Bounds::with_degree(4);
        for z in [&za, &zb] {
            let v = torsion::is_essentially_stable(z.as_quantum().unwrap(), &t, b).unwrap();
            assert!(v.holds() && v.is_exact(), "{v:?}");
        }
        let j = join(&za, &zb).unwrap();
        let z3 = r.mul(&r.mul(&x(1), &x(2)), &x(3));
        assert!(ideal::equal(j.as_quantum().unwrap(), &two(&r, &[z3])).unwrap().is_equal());
        let yj = y_join(&za, &zb, &t, b).unwrap();
        assert!(yj.stability.fails() && yj.stability.is_exact(), "{:?}", yj.stability);
        assert!(yj.ideal.is_none());
    }
}
