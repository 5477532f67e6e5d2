//! Acceptance suite: one line per criterion, each under ten seconds.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use qsubcat::findim::corpus::{extension_violation, module_corpus, CORPUS_BOUND};
use qsubcat::findim::examples::{kronecker, upper_triangular};
use qsubcat::findim::{
    enumerate_filter_systems, enumerate_two_sided_ideals, filter_system_roundtrip, is_gabriel_fs, is_principal_fs,
    Generators, StructAlgebra, DEFAULT_BOUND,
};
use qsubcat::ideal::{self, IdealHandle};
use qsubcat::scenarios::{bad_union_ring, run_example};
use qsubcat::torsion::{self, Bounds, TorsionTheory};
use qsubcat::{FieldSpec, Poly, QRing, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT: Duration = Duration::from_secs(10);

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn scenario(id: &str) -> Result<(), String> {
    let out = run_example(id).map_err(|e| e.to_string())?;
    ensure(out.passed(), format!("{id}: {}", out.mismatches.join("; ")))
}

// ---- upper-triangular: brute force on 2×2 matrices over F₂ ----

/// [[a, b], [0, c]] packed as bits a, b, c.
fn t2_mul(u: u8, v: u8) -> u8 {
    let (a, b, c) = (u & 1, (u >> 1) & 1, (u >> 2) & 1);
    let (d, e, f) = (v & 1, (v >> 1) & 1, (v >> 2) & 1);
    (a & d) | (((a & e) ^ (b & f)) << 1) | ((c & f) << 2)
}

type Set = u16;

fn members(s: Set) -> impl Iterator<Item = u8> {
    (0..8u8).filter(move |&e| s >> e & 1 == 1)
}

fn span(mut s: Set) -> Set {
    s |= 1;
    loop {
        let mut t = s;
        for a in members(s) {
            for b in members(s) {
                t |= 1 << (a ^ b);
            }
        }
        if t == s {
            return s;
        }
        s = t;
    }
}

fn t2_product(a: Set, b: Set) -> Set {
    let mut s = 1;
    for x in members(a) {
        for y in members(b) {
            s |= 1 << t2_mul(x, y);
        }
    }
    span(s)
}

fn t2_ideal(gens: &[u8]) -> Set {
    let g: Set = gens.iter().fold(0, |s, &e| s | 1 << e);
    t2_product(t2_product(0xff, g), 0xff)
}

fn t2_sat(k: Set, i: Set) -> Set {
    let mut cur = k;
    loop {
        let next = (0..8u8).filter(|&z| members(i).all(|y| cur >> t2_mul(z, y) & 1 == 1)).fold(0, |s, z| s | 1 << z);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn t2_stable(k: Set, i: Set) -> bool {
    let base = t2_sat(k, i);
    let mut p = k;
    (1..=4).all(|_| {
        p = t2_product(i, p);
        t2_sat(p, i) == base
    })
}

fn upper_triangular_criterion() -> Check {
    let ideals: Vec<Set> = (0..=u16::from(u8::MAX))
        .filter(|&s| s & 1 == 1 && span(s) == s && t2_product(0xff, s) == s && t2_product(s, 0xff) == s)
        .collect();
    ensure(ideals.len() == 5, format!("brute force found {} ideals", ideals.len()))?;
    let lib = enumerate_two_sided_ideals(&upper_triangular(FieldSpec::prime(2).unwrap()), DEFAULT_BOUND).unwrap();
    ensure(lib.len() == ideals.len(), "library ideal count differs from brute force")?;
    let (e11, e22) = (0b001, 0b100);
    let (i1, i2) = (t2_ideal(&[e22]), t2_ideal(&[e11]));
    ensure(t2_sat(i2, i1) == i2, "I2 should be I1-torsionfree generated")?;
    ensure(!t2_stable(i2, i1), "I2 should not be essentially stable")?;
    ensure(!t2_stable(i1 & i2, i1), "the semisimple join should not be essentially stable")?;
    scenario("upper-triangular")?;
    Ok("5 ideals; K = I2 closed, not stable; join I1∩I2 not stable".into())
}

// ---- commutative law ----

fn commutative_criterion() -> Check {
    scenario("commutative-saturation")?;
    // (x², xy) is a monomial ideal: x^a y^b lies in the saturation by (x,y) exactly when
    // x^a y^b · x^i y^j is divisible by x² or xy for all i + j = N.
    let in_k = |a: u32, b: u32| a >= 2 || (a >= 1 && b >= 1);
    for d in 0..=8u32 {
        for a in 0..=d {
            let b = d - a;
            let sat = (0..=4u32).all(|i| in_k(a + i, b + 4 - i));
            ensure(sat == (a >= 1), format!("monomial oracle disagrees at x^{a} y^{b}"))?;
        }
    }
    Ok("12 ideals x 3 bases stable; sat((x^2, xy)) = (x)".into())
}

// ---- quantum plane, q = 2 ----

fn plane(q: i64) -> QRing {
    QRing::quantum_plane(FieldSpec::Rationals, qq(q)).unwrap()
}

/// Coefficients of the x-free part, as a polynomial in y.
fn y_part(f: &Poly) -> Vec<qsubcat::Scalar> {
    let d = f.monomials().map(|m| m.exps()[1]).max().unwrap_or(0) as usize;
    let mut c = vec![qq(0); d + 1];
    for (m, k) in f.terms() {
        if m.exps()[0] == 0 {
            c[m.exps()[1] as usize] = k.clone();
        }
    }
    c
}

/// Order of vanishing of a polynomial in y at y = 1.
fn order_at_one(mut c: Vec<qsubcat::Scalar>) -> usize {
    let mut k = 0;
    loop {
        if c.iter().all(|x| x.is_zero()) {
            return usize::MAX;
        }
        let at_one = c.iter().fold(qq(0), |s, x| &s + x);
        if !at_one.is_zero() {
            return k;
        }
        c = c.iter().enumerate().skip(1).map(|(i, x)| x * &qq(i as i64)).collect();
        k += 1;
    }
}

fn descending_criterion() -> Check {
    let r = plane(2);
    let (x, y, one) = (r.var(0), r.var(1), r.one());
    let psi = r.normal_automorphism(&x).unwrap();
    ensure(word_mul(&r, &psi.apply(&y), &x) == word_mul(&r, &x, &y), "ψ is not the twist of x")?;
    let ym1 = r.sub(&y, &one);
    let combo = r.sub(&r.scale(&psi.apply(&ym1), &qq(2)), &ym1);
    ensure(combo == r.from_i64(-1), "2ψ(y-1) - (y-1) should be -1")?;
    // R/xR = k[y] sends Iⁿ onto ((y-1)ⁿ): every generator of Iⁿ⁺¹ vanishes to order n+1 at y = 1.
    let i = IdealHandle::two_sided(&r, &[x.clone(), ym1.clone()]);
    for n in 0..=3u32 {
        let next = ideal::power(&i, n + 1).unwrap();
        let low = next.basis().iter().map(|g| order_at_one(y_part(g))).min().unwrap();
        ensure(low > n as usize, format!("I^{} has a generator vanishing to order {low}", n + 1))?;
        ensure(order_at_one(y_part(&r.pow(&ym1, n))) == n as usize, "(y-1)^n order")?;
    }
    let start = Instant::now();
    let t = TorsionTheory::new(i).unwrap();
    let k = IdealHandle::right(&r, &[x]);
    let chain = torsion::tilde_chain(&k, &t, Bounds { chain_length: 3, ..Bounds::default() }).unwrap();
    let secs = start.elapsed().as_secs_f64();
    ensure(chain.strict_descents.len() == 3, "chain of length 3 is not strictly descending")?;
    scenario("quantum-plane-descending")?;
    Ok(format!("T0 > T1 > T2 > T3 with exact witnesses; I^n != I^(n+1) for n <= 3; y-closed fails; chain at D=12 in {secs:.2}s"))
}

fn two_torsion_criterion() -> Check {
    let r = plane(-1);
    let (x, y) = (r.var(0), r.var(1));
    let x2 = word_mul(&r, &x, &x);
    ensure(word_mul(&r, &x2, &y) == word_mul(&r, &y, &x2), "x² does not commute with y")?;
    let psi = r.normal_automorphism(&x).unwrap();
    ensure(psi.apply(&psi.apply(&y)) == y, "ψ² ≠ 1 on y")?;
    scenario("quantum-plane-two-torsion")?;
    Ok("psi^2 = 1, x^2 central, J psi-fixed; Y2-closed while Y1 fails".into())
}

fn bad_union_criterion() -> Check {
    let r = bad_union_ring(2).unwrap();
    let x = |i: usize| r.var(i);
    let z1 = word_mul(&r, &x(1), &x(2));
    let z2 = word_mul(&r, &x(1), &x(3));
    for z in [&z1, &z2] {
        for i in 0..4 {
            ensure(word_mul(&r, z, &x(i)) == word_mul(&r, &x(i), z), "z is not central")?;
        }
    }
    let z3 = word_mul(&r, &z1, &x(3));
    let lhs = word_mul(&r, &z3, &x(0));
    let rhs = r.scale(&word_mul(&r, &x(0), &z3), &ratio(1, 2));
    ensure(lhs == rhs, "x2x3x4 · x1 should be 1/2 · x1 · x2x3x4")?;
    scenario("bad-union")?;
    Ok("z1, z2 central; join x2x3x4R exact; each Zi stable; join fails by comaximality".into())
}

fn not_distributive_criterion() -> Check {
    // x is not divisible by x² or xy, so x ∉ (x)(x, y).
    scenario("not-distributive")?;
    Ok("witness x in (x) ∩ ((y) + (x+y)) but not in (x)(x, y)".into())
}

// ---- filter-system bijections ----

fn audit(alg: &StructAlgebra, name: &str) -> Result<String, String> {
    let g = Generators::new(alg, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    let systems = enumerate_filter_systems(&g, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    let ideals = enumerate_two_sided_ideals(alg, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    let corpus = module_corpus(alg, 3, CORPUS_BOUND).map_err(|e| e.to_string())?;
    ensure(systems.iter().all(|fs| filter_system_roundtrip(&g, fs)), format!("{name}: round trip fails"))?;
    let mut principal: Vec<_> = systems.iter().filter_map(|fs| is_principal_fs(&g, fs)).map(|k| k.space).collect();
    principal.sort();
    let mut spaces: Vec<_> = ideals.iter().map(|k| k.space.clone()).collect();
    spaces.sort();
    ensure(principal == spaces, format!("{name}: principal systems do not match the ideals"))?;
    for k in &ideals {
        ensure(is_principal_fs(&g, &g.principal(k)).map(|j| j.space) == Some(k.space.clone()), "ideal round trip")?;
    }
    let mut gabriel = 0;
    for fs in &systems {
        let closed = extension_violation(&g, fs, &corpus, DEFAULT_BOUND).map_err(|e| e.to_string())?.is_none();
        ensure(closed == is_gabriel_fs(&g, fs), format!("{name}: Gabriel test disagrees with extension closure"))?;
        gabriel += usize::from(closed);
    }
    Ok(format!("{name}: {} systems, {} ideals, {gabriel} Gabriel", systems.len(), ideals.len()))
}

fn bijection_criterion() -> Check {
    let f2 = FieldSpec::prime(2).unwrap();
    let a = audit(&upper_triangular(f2), "T2")?;
    let b = audit(&kronecker(f2), "Kronecker")?;
    Ok(format!("{a}; {b}"))
}

fn ore_criterion() -> Check {
    scenario("ore-normal")?;
    Ok("20 seeded (K, s) pairs stabilize at n = 0, exact".into())
}

// ---- oracle suites ----

fn products(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for k in 0..500 {
        let n = rng.gen_range(2..=4);
        let r = random_ring(rng, n);
        let f = random_poly(rng, &r, 3, 3);
        let g = random_poly(rng, &r, 3, 3);
        ensure(r.mul(&f, &g) == word_mul(&r, &f, &g), format!("product {k} differs from the word oracle"))?;
    }
    Ok(())
}

fn memberships(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut members = 0;
    for k in 0..200 {
        let n = rng.gen_range(2..=3);
        let r = random_ring(rng, n);
        let side = if rng.gen_bool(0.5) { Side::Right } else { Side::TwoSided };
        let gens: Vec<Poly> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let dg = rng.gen_range(1..=2);
                random_homogeneous(rng, &r, dg, 2)
            })
            .filter(|g| !g.is_zero())
            .collect();
        let d = rng.gen_range(2..=3);
        let f = if rng.gen_bool(0.5) && !gens.is_empty() {
            // A combination Σ a·g·c, with a = 1 for right ideals.
            let mut acc = r.zero();
            for g in &gens {
                let e = d - g.degree().unwrap();
                let e1 = if side == Side::TwoSided { rng.gen_range(0..=e) } else { 0 };
                let a = if e1 == 0 { r.one() } else { random_homogeneous(rng, &r, e1, 2) };
                let c = random_homogeneous(rng, &r, e - e1, 2);
                acc = r.add(&acc, &word_mul(&r, &word_mul(&r, &a, g), &c));
            }
            acc
        } else {
            random_homogeneous(rng, &r, d, 3)
        };
        let oracle = homogeneous_member(&r, &gens, side, &f);
        let lib = IdealHandle::new(&r, &gens, side).contains(&f).map_err(|e| e.to_string())?;
        ensure(lib == oracle, format!("membership {k}: library {lib}, oracle {oracle}"))?;
        members += usize::from(oracle);
    }
    Ok(members)
}

fn saturations(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let b = Bounds::default();
    for k in 0..100 {
        let r = if k % 2 == 0 {
            QRing::commutative(&["x", "y"], FieldSpec::Rationals).unwrap()
        } else {
            random_ring(rng, 2)
        };
        // Normal generators: anything in the commutative case, monomials otherwise.
        let base: Vec<Poly> = (0..rng.gen_range(1..=2))
            .map(|_| {
                if r.is_commutative() {
                    random_poly(rng, &r, 1, 2)
                } else {
                    r.monomial(random_monomial(rng, 2, 2))
                }
            })
            .filter(|g| !g.is_zero())
            .collect();
        let t = TorsionTheory::new(IdealHandle::two_sided(&r, &base)).map_err(|e| e.to_string())?;
        let gens: Vec<Poly> = (0..rng.gen_range(1..=2)).map(|_| random_poly(rng, &r, 2, 2)).collect();
        let k1 = IdealHandle::two_sided(&r, &gens);
        let mut more = gens.clone();
        more.push(random_poly(rng, &r, 2, 2));
        let k2 = IdealHandle::two_sided(&r, &more);
        let sat = |k: &IdealHandle| torsion::saturate_with(k, &t, b).map(|s| s.ideal).map_err(|e| e.to_string());
        let (s1, s2) = (sat(&k1)?, sat(&k2)?);
        ensure(s1.exactness().is_exact(), format!("pair {k}: saturation inexact"))?;
        ensure(ideal::subset_witness(&k1, &s1).is_none(), format!("pair {k}: K ⊄ sat(K)"))?;
        ensure(ideal::equal(&sat(&s1)?, &s1).map_err(|e| e.to_string())?.is_equal(), format!("pair {k}: not idempotent"))?;
        ensure(ideal::subset_witness(&s1, &s2).is_none(), format!("pair {k}: not monotone"))?;
    }
    Ok(())
}

fn oracle_criterion() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    products(&mut rng)?;
    let members = memberships(&mut rng)?;
    saturations(&mut rng)?;
    Ok(format!("500 products, 200 memberships ({members} members), 100 saturation pairs"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("upper-triangular", upper_triangular_criterion),
        ("commutative law", commutative_criterion),
        ("quantum-plane-descending", descending_criterion),
        ("quantum-plane-two-torsion", two_torsion_criterion),
        ("bad-union", bad_union_criterion),
        ("not-distributive", not_distributive_criterion),
        ("filter-system bijections", bijection_criterion),
        ("ore-normal", ore_criterion),
        ("oracle suites", oracle_criterion),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let (ok, detail) = match res {
            Ok(d) if took < LIMIT => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!("criterion {} {name}: {} ({:.2}s) {detail}", n + 1, if ok { "PASS" } else { "FAIL" }, took.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
