//! JSON reports whose verdicts carry re-checkable membership facts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::expr::{parse_poly, parse_poly_list};
use crate::field::Scalar;
use crate::findim::{StructAlgebra, Subspace};
use crate::gb::Side;
use crate::ideal::{self, Exactness, IdealHandle};
use crate::ring::{Poly, QRing};
use crate::torsion::{self, Bounds, Certificate, ChainReport, StabilityVerdict, TorsionTheory};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub ring: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub exactness: Exactness,
    pub certificates: Vec<Value>,
    pub witnesses: Vec<Witness>,
    pub chain: Vec<ChainTerm>,
    pub timing_ms: f64,
}

/// A polynomial together with the membership facts that justify a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub role: String,
    pub element: String,
    pub facts: Vec<MembershipFact>,
}

/// `element ∈ ideal` (or ∉), the ideal given by generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipFact {
    pub element: String,
    pub ideal: Vec<String>,
    pub side: Side,
    pub member: bool,
    pub exactness: Exactness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub n: usize,
    pub basis: Vec<String>,
    pub exactness: Exactness,
}

impl Report {
    pub fn new(command: impl Into<String>, ring: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ring: ring.into(),
            inputs: BTreeMap::new(),
            result: Value::Null,
            exactness: Exactness::Exact,
            certificates: Vec::new(),
            witnesses: Vec::new(),
            chain: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with timing zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Report {
        Report { timing_ms: 0.0, ..self.clone() }
    }

    pub fn set_chain(&mut self, c: &ChainReport) {
        self.chain = c
            .terms
            .iter()
            .enumerate()
            .map(|(n, t)| ChainTerm { n, basis: t.display_basis(), exactness: t.exactness() })
            .collect();
    }

    /// Re-verify every fact of every witness in `ring`. Returns the facts that disagree.
    pub fn recheck(&self, ring: &QRing) -> Result<Vec<MembershipFact>> {
        let mut bad = Vec::new();
        for w in &self.witnesses {
            for f in &w.facts {
                if !f.recheck(ring)? {
                    bad.push(f.clone());
                }
            }
        }
        Ok(bad)
    }
}

impl MembershipFact {
    pub fn new(ring: &QRing, element: &Poly, k: &IdealHandle) -> Self {
        MembershipFact {
            element: ring.fmt_poly(element),
            ideal: k.display_basis(),
            side: k.side(),
            member: k.contains_computed(element),
            exactness: k.exactness(),
        }
    }

    /// Membership in the ideal generated by `gens`, recorded with those generators
    /// rather than a reduced basis.
    pub fn generated(ring: &QRing, element: &Poly, gens: &[Poly], side: Side) -> Self {
        let k = IdealHandle::new(ring, gens, side);
        MembershipFact {
            element: ring.fmt_poly(element),
            ideal: gens.iter().map(|g| ring.fmt_poly(g)).collect(),
            side,
            member: k.contains_computed(element),
            exactness: Exactness::Exact,
        }
    }

    /// Membership of a vector in a subspace of a finite-dimensional algebra.
    pub fn linear(alg: &StructAlgebra, v: &[Scalar], space: &Subspace) -> Self {
        MembershipFact {
            element: alg.fmt_vector(v),
            ideal: space.basis().iter().map(|r| alg.fmt_vector(r)).collect(),
            side: Side::TwoSided,
            member: space.contains(v),
            exactness: Exactness::Exact,
        }
    }

    /// Rebuild the ideal from the printed generators and test membership again.
    pub fn recheck(&self, ring: &QRing) -> Result<bool> {
        let f = parse_poly(&self.element, ring)?;
        let gens = parse_poly_list(&self.ideal.join(", "), ring)?;
        Ok(IdealHandle::new(ring, &gens, self.side).contains_computed(&f) == self.member)
    }
}

pub fn describe_qring(r: &QRing) -> String {
    let names = r.names();
    let mut rels = Vec::new();
    for j in 0..r.n() {
        for i in 0..j {
            let p = r.param(i, j);
            if !p.is_one() {
                rels.push(format!("{}*{} = {}*{}*{}", names[j], names[i], p, names[i], names[j]));
            }
        }
    }
    if rels.is_empty() {
        format!("{}[{}]", r.field(), names.join(", "))
    } else {
        format!("{}<{} | {}>", r.field(), names.join(", "), rels.join(", "))
    }
}

pub fn describe_algebra(a: &StructAlgebra) -> String {
    format!("{}-algebra<{}>", a.field(), a.labels().join(", "))
}

pub fn exactness_value(e: Exactness) -> Value {
    serde_json::to_value(e).expect("serializes")
}

pub fn ideal_value(k: &IdealHandle) -> Value {
    json!({ "basis": k.display_basis(), "side": k.side(), "exactness": k.exactness() })
}

pub fn verdict_value(ring: &QRing, v: &StabilityVerdict) -> Value {
    match v {
        StabilityVerdict::Holds { exactness, certificate } => {
            json!({ "verdict": "holds", "exactness": exactness, "certificate": certificate })
        }
        StabilityVerdict::Fails { n, witness, exactness, certificate } => json!({
            "verdict": "fails",
            "n": n,
            "witness": ring.fmt_poly(witness),
            "exactness": exactness,
            "certificate": certificate,
        }),
        StabilityVerdict::Undetermined { chain_length, degree } => {
            json!({ "verdict": "undetermined", "chain_length": chain_length, "degree": degree })
        }
    }
}

pub fn verdict_exactness(v: &StabilityVerdict) -> Exactness {
    match v {
        StabilityVerdict::Holds { exactness, .. } | StabilityVerdict::Fails { exactness, .. } => *exactness,
        StabilityVerdict::Undetermined { degree, .. } => Exactness::UpToDegree(*degree),
    }
}

/// Membership facts backing a stability verdict about K.
pub fn stability_witnesses(
    k: &IdealHandle,
    t: &TorsionTheory,
    v: &StabilityVerdict,
    b: Bounds,
) -> Result<Vec<Witness>> {
    let ring = k.ring();
    let i = t.base();
    let mut out = Vec::new();
    match v {
        StabilityVerdict::Fails { n, witness, certificate, .. } => {
            let mut facts = Vec::new();
            match certificate {
                Certificate::TorsionElement { m } => {
                    facts.push(MembershipFact::new(ring, witness, k));
                    for g in ideal::power(i, *m)?.basis() {
                        facts.push(MembershipFact::new(ring, &ring.mul(witness, g), k));
                    }
                }
                Certificate::EverythingTorsion => facts.push(MembershipFact::new(ring, witness, k)),
                Certificate::Saturated { .. } => {
                    let s = torsion::saturate_with(k, t, b)?.ideal;
                    facts.push(MembershipFact::new(ring, witness, &s));
                    facts.push(MembershipFact::new(ring, witness, k));
                }
                Certificate::Comaximality { .. } => {
                    if let Some(cc) = torsion::comaximality_criterion(k, t, *n)? {
                        facts.push(MembershipFact::new(ring, witness, k));
                        let psi_i = i.apply_auto(&cc.automorphism);
                        let gens: Vec<Poly> = i.basis().iter().chain(psi_i.basis()).cloned().collect();
                        facts.push(MembershipFact::generated(ring, &ring.one(), &gens, Side::TwoSided));
                        if let Some((dn, v, _)) = cc.descents.iter().find(|d| d.0 == *n) {
                            let pow = |e: usize| ideal::power(i, e as u32);
                            let lo = if *dn == 0 { IdealHandle::unit(ring, Side::TwoSided) } else { pow(*dn)? };
                            facts.push(MembershipFact::new(ring, v, &lo));
                            facts.push(MembershipFact::new(ring, v, &pow(dn + 1)?));
                        }
                    }
                }
                Certificate::Chain { .. } => {
                    let chain = torsion::tilde_chain(k, t, b)?;
                    facts.push(MembershipFact::new(ring, witness, &chain.terms[*n]));
                    facts.push(MembershipFact::new(ring, witness, &chain.terms[n + 1]));
                }
                _ => {}
            }
            out.push(Witness { role: "stability-failure".into(), element: ring.fmt_poly(witness), facts });
        }
        StabilityVerdict::Holds { certificate: Certificate::PowerAbsorbed { m }, .. } => {
            let ik = ideal::product(i, k)?;
            for kg in k.basis() {
                for g in ideal::power(i, *m)?.basis() {
                    let e = ring.mul(kg, g);
                    out.push(Witness {
                        role: "absorbed".into(),
                        element: ring.fmt_poly(&e),
                        facts: vec![MembershipFact::new(ring, &e, &ik)],
                    });
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Witnesses for each strict descent of a chain: w ∈ T_n and w ∉ T_{n+1}.
pub fn descent_witnesses(ring: &QRing, c: &ChainReport) -> Vec<Witness> {
    c.strict_descents
        .iter()
        .map(|d| Witness {
            role: format!("descent-{}", d.n),
            element: ring.fmt_poly(&d.witness),
            facts: vec![
                MembershipFact::new(ring, &d.witness, &c.terms[d.n]),
                MembershipFact::new(ring, &d.witness, &c.terms[d.n + 1]),
            ],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn descriptions() {
        let f = FieldSpec::Rationals;
        let q = QRing::quantum_plane(f, f.from_i64(2)).unwrap();
        assert_eq!(describe_qring(&q), "QQ<x, y | y*x = 2*x*y>");
        assert_eq!(describe_qring(&QRing::commutative(&["a"], f).unwrap()), "QQ[a]");
    }

    #[test]
    fn failure_witnesses_recheck() {
        let f = FieldSpec::Rationals;
        let q = QRing::quantum_plane(f, f.from_i64(2)).unwrap();
        let (x, y) = (q.var(0), q.var(1));
        let i = IdealHandle::two_sided(&q, &[x.clone(), q.sub(&y, &q.one())]);
        let t = TorsionTheory::new(i).unwrap();
        let k = IdealHandle::right(&q, &[x]);
        let b = Bounds::default();
        let v = torsion::is_essentially_stable(&k, &t, b).unwrap();
        assert!(v.fails());
        let mut rep = Report::new("check", describe_qring(&q));
        rep.witnesses = stability_witnesses(&k, &t, &v, b).unwrap();
        let facts = &rep.witnesses[0].facts;
        assert_eq!(facts.iter().map(|f| f.member).collect::<Vec<_>>(), [true, true, true, false]);
        assert!(rep.recheck(&q).unwrap().is_empty());
        let back: Report = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        rep.witnesses[0].facts[0].member = false;
        assert_eq!(rep.recheck(&q).unwrap().len(), 1);
    }
}
