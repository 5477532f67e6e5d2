use serde_json::{json, Value};

use qsubcat::expr::{parse_list_in, parse_poly, parse_poly_list};
use qsubcat::findim::{saturate_exact, stability_predicates, LinIdeal, StructAlgebra, Subspace};
use qsubcat::ideal::{self, EqualityVerdict, IdealHandle};
use qsubcat::lattice::{self, ClosedSubcat};
use qsubcat::report::{
    self, describe_algebra, describe_qring, ideal_value, verdict_exactness, verdict_value, ChainTerm,
    MembershipFact, Report, Witness,
};
use qsubcat::spec_file::{load_ring_spec, LoadedRing};
use qsubcat::torsion::{self, Bounds, StabilityVerdict, TorsionTheory};
use qsubcat::{Error, Exactness, Poly, QRing, Side};

use crate::{CheckCmd, Cli, IdealCmd, LatticeCmd, Pair, Status, Torsion, YPair};

type Outcome = Result<(Report, Status), Error>;

pub fn load(cli: &Cli) -> Result<LoadedRing, Error> {
    let path = cli.ring.as_ref().ok_or_else(|| Error::Io("--ring is required".into()))?;
    load_ring_spec(path)
}

fn wrong_kind(what: &str) -> Error {
    Error::Spec { path: "ring".into(), message: format!("this command needs {what}") }
}

fn quantum(cli: &Cli) -> Result<QRing, Error> {
    match load(cli)? {
        LoadedRing::Quantum(r) => Ok(r),
        LoadedRing::FinDim(_) => Err(wrong_kind("a quantum affine space")),
    }
}

fn ideal_of(r: &QRing, text: &str, side: Side) -> Result<IdealHandle, Error> {
    Ok(IdealHandle::new(r, &parse_poly_list(text, r)?, side))
}

fn theory(r: &QRing, filter: &str) -> Result<TorsionTheory, Error> {
    TorsionTheory::new(ideal_of(r, filter, Side::TwoSided)?)
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Right => "right",
        Side::TwoSided => "two-sided",
    }
}

fn torsion_report(command: &str, ring: String, t: &Torsion) -> Report {
    Report::new(command, ring)
        .input("ideal", t.ideal.as_str())
        .input("filter", t.filter.as_str())
        .input("side", side_name(t.side.into()))
}

fn fmt_all(r: &QRing, ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| r.fmt_poly(p)).collect()
}

// ---- saturation, chains and stability ----

pub fn saturate(cli: &Cli, t: &Torsion, b: Bounds) -> Outcome {
    let r = match load(cli)? {
        LoadedRing::Quantum(r) => r,
        LoadedRing::FinDim(a) => return lin_saturate(&a, t),
    };
    let k = ideal_of(&r, &t.ideal, t.side.into())?;
    let th = theory(&r, &t.filter)?;
    let sat = torsion::saturate_with(&k, &th, b)?;
    let mut rep = torsion_report("saturate", describe_qring(&r), t);
    rep.result = json!({
        "ideal": ideal_value(&sat.ideal),
        "iterations": sat.iterations,
        "cap_hit": sat.cap_hit,
        "method": sat.method,
        "unchanged": ideal::equal(&k, &sat.ideal)?.is_equal(),
    });
    rep.exactness = sat.ideal.exactness();
    let max_m = sat.iterations as u32 + 2;
    for w in sat.ideal.basis().iter().filter(|w| !k.contains_computed(w)) {
        let mut facts = vec![MembershipFact::new(&r, w, &k)];
        if let Some(m) = torsion::torsion_exponent(w, &k, &th, max_m)? {
            for g in ideal::power(th.base(), m)?.basis() {
                facts.push(MembershipFact::new(&r, &r.mul(w, g), &k));
            }
        }
        rep.witnesses.push(Witness { role: "torsion".into(), element: r.fmt_poly(w), facts });
    }
    let status = if sat.cap_hit { Status::Undetermined } else { Status::Ok };
    Ok((rep, status))
}

pub fn chain(cli: &Cli, t: &Torsion, b: Bounds) -> Outcome {
    let r = match load(cli)? {
        LoadedRing::Quantum(r) => r,
        LoadedRing::FinDim(a) => return lin_chain(&a, t),
    };
    let k = ideal_of(&r, &t.ideal, t.side.into())?;
    let th = theory(&r, &t.filter)?;
    let c = torsion::tilde_chain(&k, &th, b)?;
    let mut rep = torsion_report("chain", describe_qring(&r), t).input("chain_length", b.chain_length);
    rep.set_chain(&c);
    rep.result = json!({
        "stabilized_at": c.stabilized_at,
        "strict_descents": c.strict_descents.iter().map(|d| d.n).collect::<Vec<_>>(),
        "nested": c.nested,
        "cap_hit": c.cap_hit,
        "comaximality_criterion": c.criterion.is_some(),
    });
    rep.exactness = c.exactness;
    if let Some(cc) = &c.criterion {
        rep.certificates.push(json!({
            "kind": "comaximality",
            "normal": r.fmt_poly(&cc.normal),
            "descents": cc.descents.iter().map(|(n, v, w)| json!({"n": n, "v": r.fmt_poly(v), "w": r.fmt_poly(w)})).collect::<Vec<_>>(),
        }));
    }
    rep.witnesses = report::descent_witnesses(&r, &c);
    let status = if c.cap_hit { Status::Undetermined } else { Status::Ok };
    Ok((rep, status))
}

pub fn check(cli: &Cli, which: &CheckCmd, b: Bounds) -> Outcome {
    let (name, t) = match which {
        CheckCmd::TfGenerated(t) => ("check tf-generated", t),
        CheckCmd::Stable(t) => ("check stable", t),
        CheckCmd::YClosed(t) => ("check y-closed", t),
    };
    let r = match load(cli)? {
        LoadedRing::Quantum(r) => r,
        LoadedRing::FinDim(a) => return lin_check(&a, name, which, t),
    };
    let k = ideal_of(&r, &t.ideal, t.side.into())?;
    let th = theory(&r, &t.filter)?;
    let v = match which {
        CheckCmd::TfGenerated(_) => torsion::is_torsionfree_generated(&k, &th, b)?,
        CheckCmd::Stable(_) => torsion::is_essentially_stable(&k, &th, b)?,
        CheckCmd::YClosed(_) => torsion::is_y_closed(&k, &th, b)?,
    };
    let mut rep = torsion_report(name, describe_qring(&r), t);
    rep.result = verdict_value(&r, &v);
    rep.exactness = verdict_exactness(&v);
    push_certificate(&mut rep, &v);
    rep.witnesses = report::stability_witnesses(&k, &th, &v, b)?;
    Ok((rep, verdict_status(&v)))
}

fn push_certificate(rep: &mut Report, v: &StabilityVerdict) {
    match v {
        StabilityVerdict::Holds { certificate, .. } | StabilityVerdict::Fails { certificate, .. } => {
            rep.certificates.push(serde_json::to_value(certificate).expect("serializes"))
        }
        StabilityVerdict::Undetermined { .. } => {}
    }
}

fn verdict_status(v: &StabilityVerdict) -> Status {
    match v {
        StabilityVerdict::Undetermined { .. } => Status::Undetermined,
        _ => Status::Ok,
    }
}

// ---- the same over a finite-dimensional algebra ----

fn lin_ideal(a: &StructAlgebra, text: &str, side: Side) -> Result<LinIdeal, Error> {
    let gens = parse_list_in(text, a)?;
    Ok(match side {
        Side::Right => LinIdeal::right(a, gens),
        Side::TwoSided => LinIdeal::two_sided(a, gens),
    })
}

fn lin_inputs(a: &StructAlgebra, t: &Torsion) -> Result<(LinIdeal, LinIdeal), Error> {
    Ok((lin_ideal(a, &t.ideal, t.side.into())?, lin_ideal(a, &t.filter, Side::TwoSided)?))
}

fn vectors(a: &StructAlgebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| a.fmt_vector(v)).collect()
}

fn lin_value(a: &StructAlgebra, k: &LinIdeal) -> Value {
    json!({ "basis": vectors(a, &k.space), "dim": k.dim(), "two_sided": k.two_sided })
}

/// Facts showing that v is torsion modulo K: v ∉ K and v·Iᵐ ⊆ K.
fn lin_torsion_witness(a: &StructAlgebra, v: &[qsubcat::Scalar], k: &Subspace, i: &LinIdeal) -> Witness {
    let mut facts = vec![MembershipFact::linear(a, v, k)];
    for m in 1..=a.dim() {
        let prod = a.product(&a.space(vec![v.to_vec()]), &a.power(&i.space, m));
        if prod.is_subset(k) {
            facts.extend(prod.basis().iter().map(|u| MembershipFact::linear(a, u, k)));
            break;
        }
    }
    Witness { role: "torsion".into(), element: a.fmt_vector(v), facts }
}

fn lin_saturate(a: &StructAlgebra, t: &Torsion) -> Outcome {
    let (k, i) = lin_inputs(a, t)?;
    let (sat, steps) = saturate_exact(a, &k, &i);
    let mut rep = torsion_report("saturate", describe_algebra(a), t);
    rep.result = json!({ "ideal": lin_value(a, &sat), "iterations": steps, "unchanged": sat.space == k.space });
    rep.witnesses = sat.space.complement_of(&k.space).iter().map(|v| lin_torsion_witness(a, v, &k.space, &i)).collect();
    Ok((rep, Status::Ok))
}

fn lin_chain_terms(a: &StructAlgebra, chain: &[Subspace]) -> Vec<ChainTerm> {
    chain
        .iter()
        .enumerate()
        .map(|(n, s)| ChainTerm { n, basis: vectors(a, s), exactness: Exactness::Exact })
        .collect()
}

fn lin_descents(a: &StructAlgebra, chain: &[Subspace]) -> Vec<Witness> {
    chain
        .windows(2)
        .enumerate()
        .filter_map(|(n, w)| {
            let v = w[0].complement_of(&w[1]).into_iter().next()?;
            Some(Witness {
                role: format!("descent-{n}"),
                element: a.fmt_vector(&v),
                facts: vec![MembershipFact::linear(a, &v, &w[0]), MembershipFact::linear(a, &v, &w[1])],
            })
        })
        .collect()
}

fn lin_chain(a: &StructAlgebra, t: &Torsion) -> Outcome {
    let (k, i) = lin_inputs(a, t)?;
    let p = stability_predicates(a, &k, &i);
    let mut rep = torsion_report("chain", describe_algebra(a), t);
    let descents: Vec<usize> = p.chain.windows(2).enumerate().filter(|(_, w)| w[0] != w[1]).map(|(n, _)| n).collect();
    rep.result = json!({
        "stabilized_at": p.chain.len() - 2,
        "strict_descents": descents,
        "nested": p.chain.windows(2).all(|w| w[1].is_subset(&w[0])),
        "cap_hit": false,
    });
    rep.chain = lin_chain_terms(a, &p.chain);
    rep.witnesses = lin_descents(a, &p.chain);
    Ok((rep, Status::Ok))
}

fn lin_check(a: &StructAlgebra, name: &str, which: &CheckCmd, t: &Torsion) -> Outcome {
    let (k, i) = lin_inputs(a, t)?;
    let p = stability_predicates(a, &k, &i);
    let tf_witnesses = || {
        let (sat, _) = saturate_exact(a, &k, &i);
        sat.space.complement_of(&k.space).iter().take(1).map(|v| lin_torsion_witness(a, v, &k.space, &i)).collect()
    };
    let (holds, witnesses): (bool, Vec<Witness>) = match which {
        CheckCmd::TfGenerated(_) => (p.tf_generated, if p.tf_generated { vec![] } else { tf_witnesses() }),
        CheckCmd::Stable(_) => (p.essentially_stable, lin_descents(a, &p.chain)),
        CheckCmd::YClosed(_) if !p.tf_generated => (false, tf_witnesses()),
        CheckCmd::YClosed(_) => (p.y_closed, lin_descents(a, &p.chain)),
    };
    let mut rep = torsion_report(name, describe_algebra(a), t);
    rep.result = json!({
        "verdict": if holds { "holds" } else { "fails" },
        "exactness": "exact",
        "tf_generated": p.tf_generated,
        "essentially_stable": p.essentially_stable,
    });
    rep.chain = lin_chain_terms(a, &p.chain);
    rep.witnesses = witnesses;
    Ok((rep, Status::Ok))
}

// ---- ideal arithmetic ----

fn pair(r: &QRing, p: &Pair) -> Result<(IdealHandle, IdealHandle), Error> {
    Ok((ideal_of(r, &p.a, p.side.into())?, ideal_of(r, &p.b, p.side.into())?))
}

fn pair_report(command: &str, r: &QRing, p: &Pair) -> Report {
    Report::new(command, describe_qring(r))
        .input("a", p.a.as_str())
        .input("b", p.b.as_str())
        .input("side", side_name(p.side.into()))
}

fn ideal_result(mut rep: Report, k: &IdealHandle) -> Outcome {
    rep.result = json!({ "ideal": ideal_value(k) });
    rep.exactness = k.exactness();
    Ok((rep, Status::Ok))
}

pub fn ideal_op(cli: &Cli, op: &IdealCmd, b: Bounds) -> Outcome {
    let r = quantum(cli)?;
    match op {
        IdealCmd::Sum(p) => {
            let (x, y) = pair(&r, p)?;
            ideal_result(pair_report("ideal sum", &r, p), &ideal::sum(&x, &y)?)
        }
        IdealCmd::Product(p) => {
            let (x, y) = pair(&r, p)?;
            ideal_result(pair_report("ideal product", &r, p), &ideal::product(&x, &y)?)
        }
        IdealCmd::Intersect(p) => {
            let (x, y) = pair(&r, p)?;
            let i = ideal::intersect(&x, &y)?;
            let mut rep = pair_report("ideal intersect", &r, p);
            rep.certificates.push(json!({ "kind": "lower-bound", "holds": ideal::intersection_certificate(&i, &x, &y) }));
            ideal_result(rep, &i)
        }
        IdealCmd::Power { a, n } => {
            let x = ideal_of(&r, a, Side::TwoSided)?;
            let rep = Report::new("ideal power", describe_qring(&r)).input("a", a.as_str()).input("n", *n);
            ideal_result(rep, &ideal::power(&x, *n)?)
        }
        IdealCmd::Colon(p) => colon(&r, p, b),
        IdealCmd::Equal(p) => {
            let (x, y) = pair(&r, p)?;
            let mut rep = pair_report("ideal equal", &r, p);
            match ideal::equal(&x, &y)? {
                EqualityVerdict::Equal(e) => {
                    rep.result = json!({ "equal": true });
                    rep.exactness = e;
                }
                EqualityVerdict::NotEqual { witness, in_first, exactness } => {
                    rep.result = json!({ "equal": false, "witness": r.fmt_poly(&witness), "in_a": in_first });
                    rep.exactness = exactness;
                    rep.witnesses.push(Witness {
                        role: "separating".into(),
                        element: r.fmt_poly(&witness),
                        facts: vec![MembershipFact::new(&r, &witness, &x), MembershipFact::new(&r, &witness, &y)],
                    });
                }
            }
            Ok((rep, Status::Ok))
        }
        IdealCmd::Comaximal(p) => {
            let (x, y) = pair(&r, p)?;
            let co = ideal::is_comaximal(&x, &y)?;
            let mut rep = pair_report("ideal comaximal", &r, p);
            rep.result = json!({ "comaximal": co });
            rep.exactness = x.exactness().meet(y.exactness());
            let gens: Vec<Poly> = x.generators().iter().chain(y.generators()).cloned().collect();
            rep.witnesses.push(Witness {
                role: "unit".into(),
                element: "1".into(),
                facts: vec![MembershipFact::generated(&r, &r.one(), &gens, p.side.into())],
            });
            Ok((rep, Status::Ok))
        }
        IdealCmd::Member { a, element, side } => {
            let k = ideal_of(&r, a, (*side).into())?;
            let f = parse_poly(element, &r)?;
            let fact = MembershipFact::generated(&r, &f, k.generators(), (*side).into());
            let mut rep = Report::new("ideal member", describe_qring(&r))
                .input("a", a.as_str())
                .input("element", element.as_str())
                .input("side", side_name((*side).into()));
            rep.result = json!({ "member": fact.member });
            rep.exactness = k.exactness();
            rep.witnesses.push(Witness { role: "membership".into(), element: r.fmt_poly(&f), facts: vec![fact] });
            Ok((rep, Status::Ok))
        }
    }
}

/// {z : z·B ⊆ A}: exact when B is generated by one normal homogeneous element,
/// otherwise truncated at the degree bound.
fn colon(r: &QRing, p: &Pair, b: Bounds) -> Outcome {
    let (x, y) = pair(r, p)?;
    let normal = match y.generators() {
        [h] if ideal::is_normal_homogeneous(r, h) => Some(h.clone()),
        _ => None,
    };
    let c = match &normal {
        Some(h) => ideal::colon_normal(&x, h)?,
        None => ideal::colon_truncated(&x, &y, b.degree)?,
    };
    let mut rep = pair_report("ideal colon", r, p);
    rep.result = json!({ "ideal": ideal_value(&c), "method": if normal.is_some() { "normal" } else { "truncated" } });
    rep.exactness = c.exactness();
    for z in c.basis() {
        let facts = y.generators().iter().map(|g| MembershipFact::new(r, &r.mul(z, g), &x)).collect();
        rep.witnesses.push(Witness { role: "colon".into(), element: r.fmt_poly(z), facts });
    }
    Ok((rep, Status::Ok))
}

// ---- lattices ----

fn closed(loaded: &LoadedRing, text: &str) -> Result<ClosedSubcat, Error> {
    match loaded {
        LoadedRing::Quantum(r) => ClosedSubcat::quantum(ideal_of(r, text, Side::TwoSided)?),
        LoadedRing::FinDim(a) => ClosedSubcat::findim(lin_ideal(a, text, Side::TwoSided)?),
    }
}

fn closed_value(loaded: &LoadedRing, z: &ClosedSubcat) -> Value {
    match (loaded, z) {
        (_, ClosedSubcat::Quantum(k)) => ideal_value(k),
        (LoadedRing::FinDim(a), ClosedSubcat::FinDim(k)) => lin_value(a, k),
        (LoadedRing::Quantum(_), ClosedSubcat::FinDim(_)) => Value::Null,
    }
}

fn describe(loaded: &LoadedRing) -> String {
    match loaded {
        LoadedRing::Quantum(r) => describe_qring(r),
        LoadedRing::FinDim(a) => describe_algebra(a),
    }
}

pub fn lattice_op(cli: &Cli, op: &LatticeCmd, b: Bounds) -> Outcome {
    let loaded = load(cli)?;
    match op {
        LatticeCmd::Meet(p) | LatticeCmd::Join(p) => {
            let (x, y) = (closed(&loaded, &p.a)?, closed(&loaded, &p.b)?);
            let (name, z) = match op {
                LatticeCmd::Meet(_) => ("lattice meet", lattice::meet(&x, &y)?),
                _ => ("lattice join", lattice::join(&x, &y)?),
            };
            let mut rep = Report::new(name, describe(&loaded)).input("a", p.a.as_str()).input("b", p.b.as_str());
            rep.result = json!({ "ideal": closed_value(&loaded, &z) });
            if let ClosedSubcat::Quantum(k) = &z {
                rep.exactness = k.exactness();
            }
            Ok((rep, Status::Ok))
        }
        LatticeCmd::Distributive { a, b: bb, c } => {
            let r = loaded.as_quantum().ok_or_else(|| wrong_kind("a quantum affine space"))?;
            let ks = [a, bb, c].map(|t| ideal_of(r, t, Side::TwoSided));
            let [k1, k2, k3] = ks;
            let d = lattice::distributivity_check(&k1?, &k2?, &k3?)?;
            let mut rep = Report::new("lattice distributive", describe_qring(r))
                .input("a", a.as_str())
                .input("b", bb.as_str())
                .input("c", c.as_str());
            let checks: Vec<Value> = d
                .checks
                .iter()
                .map(|c| json!({ "law": c.law, "lhs": ideal_value(&c.lhs), "rhs": ideal_value(&c.rhs), "equal": c.verdict.is_equal() }))
                .collect();
            rep.result = json!({ "holds": d.holds(), "checks": checks });
            if let Some((law, w, in_lhs)) = d.witness() {
                let check = d.checks.iter().find(|c| c.law == law).expect("law present");
                rep.result["law"] = json!(law);
                rep.result["witness"] = json!(r.fmt_poly(w));
                rep.result["witness_in_lhs"] = json!(in_lhs);
                rep.witnesses.push(Witness {
                    role: "distributivity-failure".into(),
                    element: r.fmt_poly(w),
                    facts: vec![MembershipFact::new(r, w, &check.lhs), MembershipFact::new(r, w, &check.rhs)],
                });
            }
            rep.exactness = d.checks.iter().fold(Exactness::Exact, |e, c| e.meet(c.lhs.exactness()).meet(c.rhs.exactness()));
            Ok((rep, Status::Ok))
        }
        LatticeCmd::YJoin(p) => y_op(&loaded, p, b, true),
        LatticeCmd::YMeet(p) => y_op(&loaded, p, b, false),
    }
}

fn y_op(loaded: &LoadedRing, p: &YPair, b: Bounds, is_join: bool) -> Outcome {
    let r = loaded.as_quantum().ok_or_else(|| wrong_kind("a quantum affine space"))?;
    let (x, y) = (closed(loaded, &p.a)?, closed(loaded, &p.b)?);
    let th = theory(r, &p.filter)?;
    let (name, res) = if is_join {
        ("lattice y-join", lattice::y_join(&x, &y, &th, b)?)
    } else {
        ("lattice y-meet", lattice::y_meet(&x, &y, &th, b)?)
    };
    let (kx, ky) = (x.as_quantum().expect("quantum"), y.as_quantum().expect("quantum"));
    let underlying = if is_join { ideal::intersect(kx, ky)? } else { ideal::sum(kx, ky)? };
    let mut rep = Report::new(name, describe_qring(r))
        .input("a", p.a.as_str())
        .input("b", p.b.as_str())
        .input("filter", p.filter.as_str());
    rep.result = json!({
        "underlying": fmt_all(r, underlying.basis()),
        "ideal": res.ideal.as_ref().map(ideal_value),
        "closed": res.ideal.is_some(),
        "stability": verdict_value(r, &res.stability),
    });
    rep.exactness = verdict_exactness(&res.stability);
    push_certificate(&mut rep, &res.stability);
    rep.witnesses = report::stability_witnesses(&underlying, &th, &res.stability, b)?;
    Ok((rep, verdict_status(&res.stability)))
}
