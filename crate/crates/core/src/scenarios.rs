//! Scripted worked examples, compared against golden expectations.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::findim::subspace::unit_vector;
use crate::findim::{enumerate_two_sided_ideals, examples, stability_predicates, LinIdeal, Subspace, DEFAULT_BOUND};
use crate::ideal::{self, IdealHandle};
use crate::lattice::{self, distributivity_check, ClosedSubcat};
use crate::report::{self, describe_algebra, describe_qring, ideal_value, verdict_value, ChainTerm, MembershipFact, Report, Witness};
use crate::ring::{Monomial, Poly, QRing};
use crate::torsion::{self, Bounds, TorsionTheory};

pub const EXAMPLE_IDS: [&str; 7] = [
    "upper-triangular",
    "commutative-saturation",
    "ore-normal",
    "quantum-plane-descending",
    "quantum-plane-two-torsion",
    "bad-union",
    "not-distributive",
];

const GOLDEN: &str = include_str!("../golden/examples.json");

pub const ORE_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
pub struct ExampleOutcome {
    pub id: String,
    pub report: Report,
    pub expected: Map<String, Value>,
    pub observed: Map<String, Value>,
    /// Keys whose observed value differs from the expectation.
    pub mismatches: Vec<String>,
}

impl ExampleOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn golden(id: &str) -> Result<Map<String, Value>> {
    let all: Map<String, Value> = serde_json::from_str(GOLDEN).expect("golden expectations are valid JSON");
    match all.get(id) {
        Some(Value::Object(m)) => Ok(m.clone()),
        _ => Err(Error::UnknownExample(id.to_string())),
    }
}

pub fn run_example(id: &str) -> Result<ExampleOutcome> {
    let expected = golden(id)?;
    let start = Instant::now();
    let (mut report, observed) = match id {
        "upper-triangular" => upper_triangular()?,
        "commutative-saturation" => commutative_saturation()?,
        "ore-normal" => ore_normal(20, ORE_SEED)?,
        "quantum-plane-descending" => quantum_plane_descending(3)?,
        "quantum-plane-two-torsion" => two_torsion()?,
        "bad-union" => bad_union()?,
        "not-distributive" => not_distributive()?,
        _ => return Err(Error::UnknownExample(id.to_string())),
    };
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut mismatches = Vec::new();
    for (k, want) in &expected {
        match observed.get(k) {
            Some(got) if got == want => {}
            got => mismatches.push(format!("{k}: expected {want}, observed {}", got.unwrap_or(&Value::Null))),
        }
    }
    report.result = json!({ "passed": mismatches.is_empty(), "observed": observed, "mismatches": mismatches });
    Ok(ExampleOutcome { id: id.to_string(), report, expected, observed, mismatches })
}

type Scenario = (Report, Map<String, Value>);

fn verdict_word(v: &torsion::StabilityVerdict) -> &'static str {
    match v {
        torsion::StabilityVerdict::Holds { .. } => "holds",
        torsion::StabilityVerdict::Fails { .. } => "fails",
        torsion::StabilityVerdict::Undetermined { .. } => "undetermined",
    }
}

fn qq() -> FieldSpec {
    FieldSpec::Rationals
}

fn plane(q: i64) -> Result<QRing> {
    QRing::quantum_plane(qq(), qq().from_i64(q))
}

fn two(r: &QRing, gens: &[Poly]) -> IdealHandle {
    IdealHandle::two_sided(r, gens)
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

fn rechecks(report: &Report, ring: &QRing) -> Result<bool> {
    Ok(report.recheck(ring)?.is_empty())
}

fn upper_triangular() -> Result<Scenario> {
    let f = FieldSpec::prime(2)?;
    let t = examples::upper_triangular(f);
    let ideals = enumerate_two_sided_ideals(&t, DEFAULT_BOUND)?;
    let i1 = LinIdeal::two_sided(&t, vec![unit_vector(f, 3, 2)]);
    let i2 = LinIdeal::two_sided(&t, vec![unit_vector(f, 3, 0)]);
    let rad = LinIdeal::new(&t, i1.space.intersect(&i2.space));
    let name = |s: &Subspace| -> String {
        let named = [
            ("0", Subspace::zero(f, 3)),
            ("rad", rad.space.clone()),
            ("I1", i1.space.clone()),
            ("I2", i2.space.clone()),
            ("R", t.whole()),
        ];
        named.iter().find(|(_, x)| x == s).map_or_else(|| t.fmt_space(s), |(n, _)| n.to_string())
    };
    let mut names: Vec<String> = ideals.iter().map(|i| name(&i.space)).collect();
    names.sort();
    let p = stability_predicates(&t, &i2, &i1);
    let join = lattice::join(&ClosedSubcat::findim(i1.clone())?, &ClosedSubcat::findim(i2.clone())?)?;
    let join_ideal = join.as_findim().expect("findim join").clone();
    let pj = stability_predicates(&t, &join_ideal, &i1);

    let mut report = Report::new("example upper-triangular", describe_algebra(&t)).input("id", "upper-triangular").input("K", "I2").input("I", "I1");
    report.chain = p
        .chain
        .iter()
        .enumerate()
        .map(|(n, s)| ChainTerm {
            n,
            basis: s.basis().iter().map(|r| t.fmt_vector(r)).collect(),
            exactness: crate::Exactness::Exact,
        })
        .collect();
    for (label, chain) in [("K", &p.chain), ("join", &pj.chain)] {
        if let Some(n) = chain.windows(2).position(|w| w[0] != w[1]) {
            let w = chain[n].basis().iter().find(|v| !chain[n + 1].contains(v)).expect("strict step");
            report.witnesses.push(Witness {
                role: format!("{label}-descent-{n}"),
                element: t.fmt_vector(w),
                facts: vec![MembershipFact::linear(&t, w, &chain[n]), MembershipFact::linear(&t, w, &chain[n + 1])],
            });
        }
    }
    report.certificates.push(json!({ "ideals": ideals.iter().map(|i| t.fmt_space(&i.space)).collect::<Vec<_>>() }));

    let mut o = Map::new();
    o.insert("ideal_count".into(), json!(ideals.len()));
    o.insert("ideals".into(), json!(names));
    o.insert("k_tf_generated".into(), json!(p.tf_generated));
    o.insert("k_essentially_stable".into(), json!(p.essentially_stable));
    o.insert("k_y_closed".into(), json!(p.y_closed));
    o.insert("join_ideal".into(), json!(name(&join_ideal.space)));
    o.insert("join_essentially_stable".into(), json!(pj.essentially_stable));
    Ok((report, o))
}

/// Ideals of 𝕜[x,y] used for the commutative stability sweep.
pub fn commutative_corpus(r: &QRing) -> Vec<IdealHandle> {
    let p = |s: &str| crate::expr::parse_poly_list(s, r).expect("corpus parses");
    [
        "x",
        "y",
        "x + y",
        "x^2, x*y",
        "x, y",
        "x^2",
        "x*y",
        "x - 1",
        "y^2 - x",
        "x^2, y^2",
        "x - y, y^2",
        "x*y - 1",
    ]
    .iter()
    .map(|s| two(r, &p(s)))
    .collect()
}

fn commutative_saturation() -> Result<Scenario> {
    let r = QRing::commutative(&["x", "y"], qq())?;
    let p = |s: &str| crate::expr::parse_poly_list(s, &r);
    let corpus = commutative_corpus(&r);
    let bases = ["x, y", "x", "x - 1, y"];
    let b = Bounds::default();
    let mut holds = 0;
    let mut exact = true;
    let mut report = Report::new("example commutative-saturation", describe_qring(&r)).input("id", "commutative-saturation");
    for base in bases {
        let t = TorsionTheory::new(two(&r, &p(base)?))?;
        for k in &corpus {
            let v = torsion::is_essentially_stable(k, &t, b)?;
            holds += usize::from(v.holds());
            exact &= v.is_exact();
            report.certificates.push(json!({ "K": k.display_basis(), "I": base, "stable": verdict_value(&r, &v) }));
            report.witnesses.extend(report::stability_witnesses(k, &t, &v, b)?);
        }
    }
    let k = two(&r, &p("x^2, x*y")?);
    let t = TorsionTheory::new(two(&r, &p("x, y")?))?;
    let sat = torsion::saturate_with(&k, &t, b)?;
    report.certificates.push(json!({ "saturation": ideal_value(&sat.ideal), "method": sat.method }));
    report.exactness = sat.ideal.exactness();
    let x = two(&r, &p("x")?);

    let mut o = Map::new();
    o.insert("corpus_size".into(), json!(corpus.len()));
    o.insert("bases".into(), json!(bases.len()));
    o.insert("stable_count".into(), json!(holds));
    o.insert("all_exact".into(), json!(exact));
    o.insert("saturation".into(), json!(sorted(sat.ideal.display_basis())));
    o.insert("saturation_is_x".into(), json!(ideal::equal(&sat.ideal, &x)?.is_equal()));
    o.insert("saturation_exactness".into(), report::exactness_value(sat.ideal.exactness()));
    o.insert("witnesses_recheck".into(), json!(rechecks(&report, &r)?));
    Ok((report, o))
}

/// A random two-sided ideal and a random nonconstant monomial in a random quantum plane.
pub fn ore_pair(rng: &mut ChaCha8Rng) -> Result<(QRing, IdealHandle, Poly)> {
    const QS: [(i64, i64); 5] = [(2, 1), (-1, 1), (3, 1), (1, 2), (-2, 3)];
    let (num, den) = QS[rng.gen_range(0..QS.len())];
    let f = qq();
    let r = QRing::quantum_plane(f, f.from_i64(num).div(&f.from_i64(den))?)?;
    let rand_poly = |rng: &mut ChaCha8Rng| {
        let terms = rng.gen_range(1..=3);
        let t: Vec<_> = (0..terms)
            .map(|_| {
                let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                (Monomial::from_exps(&[a, b]), f.from_i64(rng.gen_range(-3..=3)))
            })
            .collect();
        r.from_terms(t)
    };
    let mut gens = Vec::new();
    while gens.len() < rng.gen_range(1..=2) {
        let g = rand_poly(rng);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    let mut e = [0, 0];
    while e == [0, 0] {
        e = [rng.gen_range(0..=2), rng.gen_range(0..=2)];
    }
    let s = r.monomial(Monomial::from_exps(&e));
    let k = two(&r, &gens);
    Ok((r, k, s))
}

fn ore_normal(count: usize, seed: u64) -> Result<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("example ore-normal", "QQ<x, y | y*x = q*x*y>, q varies")
        .input("id", "ore-normal")
        .input("seed", seed)
        .input("pairs", count);
    let (mut stabilized, mut at_zero, mut exact, mut agree) = (0, 0, 0, 0);
    let mut skipped = 0;
    let mut done = 0;
    while done < count {
        let (r, k, s) = ore_pair(&mut rng)?;
        if k.is_unit() {
            skipped += 1;
            continue;
        }
        let oc = torsion::ore_chain(&k, &s, 3)?;
        // K̃ = R makes every term R; such draws say nothing.
        if oc.chain.terms[0].is_unit() {
            skipped += 1;
            continue;
        }
        done += 1;
        let c = &oc.chain;
        stabilized += usize::from(c.stabilized_at.is_some());
        at_zero += usize::from(c.stabilized_at == Some(0));
        exact += usize::from(c.exactness.is_exact() && !c.cap_hit);
        agree += usize::from(oc.twisted_terms_agree);
        report.certificates.push(json!({
            "ring": describe_qring(&r),
            "K": k.display_basis(),
            "s": r.fmt_poly(&s),
            "saturation": c.terms[0].display_basis(),
            "stabilized_at": c.stabilized_at,
            "exactness": c.exactness,
            "twisted_terms_agree": oc.twisted_terms_agree,
        }));
    }
    report.inputs.insert("skipped_trivial_draws".into(), json!(skipped));
    let mut o = Map::new();
    o.insert("pairs".into(), json!(count));
    o.insert("stabilized".into(), json!(stabilized));
    o.insert("stabilized_at_zero".into(), json!(at_zero));
    o.insert("exact".into(), json!(exact));
    o.insert("twisted_terms_agree".into(), json!(agree));
    Ok((report, o))
}

fn descending_setup(q: i64) -> Result<(QRing, TorsionTheory, IdealHandle)> {
    let r = plane(q)?;
    let (x, y) = (r.var(0), r.var(1));
    let i = two(&r, &[x.clone(), r.sub(&y, &r.one())]);
    let k = IdealHandle::right(&r, &[x]);
    Ok((r, TorsionTheory::new(i)?, k))
}

fn quantum_plane_descending(chain_length: usize) -> Result<Scenario> {
    let (r, t, k) = descending_setup(2)?;
    let b = Bounds { chain_length, ..Bounds::default() };
    let chain = torsion::tilde_chain(&k, &t, b)?;
    let y = torsion::is_y_closed(&k, &t, b)?;
    let mut report = Report::new("example quantum-plane-descending", describe_qring(&r))
        .input("id", "quantum-plane-descending")
        .input("K", "x")
        .input("I", "x, y - 1")
        .input("chain_length", chain_length);
    report.set_chain(&chain);
    report.exactness = chain.exactness;
    report.witnesses = report::descent_witnesses(&r, &chain);
    report.witnesses.extend(report::stability_witnesses(&k, &t, &y, b)?);
    let cc = chain.criterion.as_ref();
    if let Some(cc) = cc {
        report.certificates.push(json!({
            "criterion": "comaximality",
            "normal": r.fmt_poly(&cc.normal),
            "psi": cc.automorphism.scalars().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "power_descents": cc.descents.iter().map(|d| json!({ "n": d.0, "v": r.fmt_poly(&d.1), "w": r.fmt_poly(&d.2) })).collect::<Vec<_>>(),
        }));
    }
    report.certificates.push(json!({ "y_closed": verdict_value(&r, &y) }));

    let mut o = Map::new();
    let descents: Vec<usize> = chain.strict_descents.iter().map(|d| d.n).collect();
    o.insert("chain_length".into(), json!(chain_length));
    o.insert("strict_descents".into(), json!(descents));
    o.insert("descents_exact".into(), json!(chain.strict_descents.iter().all(|d| d.exactness.is_exact())));
    o.insert("nested".into(), json!(chain.nested));
    o.insert("criterion_applies".into(), json!(cc.is_some()));
    o.insert("power_descents".into(), json!(cc.map(|c| c.descents.iter().map(|d| d.0).collect::<Vec<_>>())));
    o.insert("y_closed".into(), json!(verdict_word(&y)));
    o.insert("y_closed_exact".into(), json!(y.is_exact()));
    o.insert("witnesses_recheck".into(), json!(rechecks(&report, &r)?));
    Ok((report, o))
}

fn two_torsion() -> Result<Scenario> {
    let (r, ti, k) = descending_setup(-1)?;
    let x = r.var(0);
    let psi = r.normal_automorphism(&x).expect("x is normal");
    let i = ti.base().clone();
    let psi_i = i.apply_auto(&psi);
    let j = ideal::intersect(&i, &psi_i)?;
    let tj = TorsionTheory::new(j.clone())?;
    let b = Bounds::default();
    let tf_j = torsion::is_torsionfree_generated(&k, &tj, b)?;
    let es_j = torsion::is_essentially_stable(&k, &tj, b)?;
    let y_j = torsion::is_y_closed(&k, &tj, b)?;
    let tf_i = torsion::is_torsionfree_generated(&k, &ti, b)?;
    let y_i = torsion::is_y_closed(&k, &ti, b)?;

    let mut report = Report::new("example quantum-plane-two-torsion", describe_qring(&r))
        .input("id", "quantum-plane-two-torsion")
        .input("K", "x")
        .input("I", "x, y - 1");
    report.certificates.push(json!({ "J": ideal_value(&j), "psi_I": ideal_value(&psi_i) }));
    for (label, v) in [("tf_J", &tf_j), ("stable_J", &es_j), ("y_closed_J", &y_j), ("tf_I", &tf_i), ("y_closed_I", &y_i)] {
        report.certificates.push(json!({ label: verdict_value(&r, v) }));
    }
    report.witnesses.extend(report::stability_witnesses(&k, &tj, &es_j, b)?);
    report.witnesses.extend(report::stability_witnesses(&k, &ti, &y_i, b)?);
    report.exactness = report::verdict_exactness(&tf_j).meet(report::verdict_exactness(&y_i));

    let mut o = Map::new();
    o.insert("psi_squared_identity".into(), json!(psi.compose(&psi).is_identity()));
    o.insert("x2_central".into(), json!(r.is_central(&r.mul(&x, &x))));
    o.insert("j_psi_fixed".into(), json!(ideal::equal(&j.apply_auto(&psi), &j)?.is_equal()));
    o.insert("i_psi_comaximal".into(), json!(ideal::is_comaximal(&i, &psi_i)?));
    o.insert("j_inside_i".into(), json!(ideal::subset_witness(&j, &i).is_none()));
    o.insert("tf_generated_j".into(), json!(verdict_word(&tf_j)));
    o.insert("essentially_stable_j".into(), json!(verdict_word(&es_j)));
    o.insert("y_closed_j".into(), json!(verdict_word(&y_j)));
    o.insert("y_closed_i".into(), json!(verdict_word(&y_i)));
    o.insert("y_closed_i_exact".into(), json!(y_i.is_exact()));
    // Y₁ ⊆ Y₂, so Y₂-torsionfree implies Y₁-torsionfree.
    o.insert("tf_implication".into(), json!(!tf_j.holds() || tf_i.holds()));
    o.insert("witnesses_recheck".into(), json!(rechecks(&report, &r)?));
    Ok((report, o))
}

/// 𝕜⟨x1..x4⟩ with p12 = p, p13 = p14 = p⁻¹ and all other parameters 1.
pub fn bad_union_ring(p: i64) -> Result<QRing> {
    let f = qq();
    let p = f.from_i64(p);
    let pinv = p.inv()?;
    QRing::from_names(["x1", "x2", "x3", "x4"].map(String::from).to_vec(), f)?
        .with_param(0, 1, p)?
        .with_param(0, 2, pinv.clone())?
        .with_param(0, 3, pinv)
}

fn bad_union() -> Result<Scenario> {
    let r = bad_union_ring(2)?;
    let x = |i: usize| r.var(i);
    let z1 = r.mul(&x(1), &x(2));
    let z2 = r.mul(&x(1), &x(3));
    let i = two(&r, &[r.sub(&x(0), &r.one()), x(1), x(2), x(3)]);
    let t = TorsionTheory::new(i)?;
    let za = ClosedSubcat::quantum(two(&r, std::slice::from_ref(&z1)))?;
    let zb = ClosedSubcat::quantum(two(&r, std::slice::from_ref(&z2)))?;
    let b = Bounds::with_degree(4);
    let mut report = Report::new("example bad-union", describe_qring(&r))
        .input("id", "bad-union")
        .input("Z1", r.fmt_poly(&z1))
        .input("Z2", r.fmt_poly(&z2))
        .input("I", "x1 - 1, x2, x3, x4");
    let mut each = Vec::new();
    for z in [&za, &zb] {
        let k = z.as_quantum().expect("quantum");
        let v = torsion::is_essentially_stable(k, &t, b)?;
        each.push(json!({ "verdict": verdict_word(&v), "exact": v.is_exact() }));
        report.witnesses.extend(report::stability_witnesses(k, &t, &v, b)?);
        report.certificates.push(json!({ "Z": k.display_basis(), "stable": verdict_value(&r, &v) }));
    }
    let j = lattice::join(&za, &zb)?;
    let jk = j.as_quantum().expect("quantum");
    let z3 = r.mul(&z1, &x(3));
    let yj = lattice::y_join(&za, &zb, &t, b)?;
    report.witnesses.extend(report::stability_witnesses(jk, &t, &yj.stability, b)?);
    report.certificates.push(json!({ "join": ideal_value(jk), "y_join": verdict_value(&r, &yj.stability) }));
    let psi = r.normal_automorphism(&z3).expect("monomials are normal");
    report.exactness = report::verdict_exactness(&yj.stability);

    let mut o = Map::new();
    o.insert("z_central".into(), json!(r.is_central(&z1) && r.is_central(&z2)));
    o.insert("join_ideal".into(), json!(sorted(jk.display_basis())));
    o.insert("join_is_x2x3x4".into(), json!(ideal::equal(jk, &two(&r, &[z3]))?.is_equal()));
    o.insert("join_exact".into(), json!(jk.exactness().is_exact()));
    o.insert("each_stable".into(), json!(each));
    o.insert("psi_x1".into(), json!(psi.scalars()[0].to_string()));
    o.insert("join_stability".into(), json!(verdict_word(&yj.stability)));
    o.insert("join_stability_exact".into(), json!(yj.stability.is_exact()));
    o.insert("y_join_closed".into(), json!(yj.ideal.is_some()));
    o.insert("witnesses_recheck".into(), json!(rechecks(&report, &r)?));
    Ok((report, o))
}

fn not_distributive() -> Result<Scenario> {
    let r = QRing::commutative(&["x", "y"], qq())?;
    let (x, y) = (r.var(0), r.var(1));
    let k1 = two(&r, std::slice::from_ref(&x));
    let k2 = two(&r, std::slice::from_ref(&y));
    let k3 = two(&r, &[r.add(&x, &y)]);
    let rep = distributivity_check(&k1, &k2, &k3)?;
    let mut report = Report::new("example not-distributive", describe_qring(&r))
        .input("id", "not-distributive")
        .input("K1", "x")
        .input("K2", "y")
        .input("K3", "x + y");
    for c in &rep.checks {
        report.certificates.push(json!({ "law": c.law, "lhs": ideal_value(&c.lhs), "rhs": ideal_value(&c.rhs) }));
    }
    let mut o = Map::new();
    o.insert("holds".into(), json!(rep.holds()));
    if let Some((law, w, in_lhs)) = rep.witness() {
        let c = rep.checks.iter().find(|c| c.law == law).expect("witnessed law");
        report.witnesses.push(Witness {
            role: "distributivity".into(),
            element: r.fmt_poly(w),
            facts: vec![MembershipFact::new(&r, w, &c.lhs), MembershipFact::new(&r, w, &c.rhs)],
        });
        o.insert("law".into(), json!(law));
        o.insert("witness".into(), json!(r.fmt_poly(w)));
        o.insert("witness_in_lhs".into(), json!(in_lhs));
        o.insert("lhs".into(), json!(sorted(c.lhs.display_basis())));
        o.insert("rhs".into(), json!(sorted(c.rhs.display_basis())));
    }
    o.insert("witnesses_recheck".into(), json!(rechecks(&report, &r)?));
    Ok((report, o))
}
