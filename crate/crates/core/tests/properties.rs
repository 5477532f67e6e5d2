mod common;

use common::{qq, ratio, word_mul};
use proptest::prelude::*;
use qsubcat::expr::parse_poly;
use qsubcat::ideal::{self, IdealHandle};
use qsubcat::torsion::{self, Bounds, TorsionTheory};
use qsubcat::{FieldSpec, Monomial, Poly, QRing, Side};

const PARAMS: [(i64, i64); 6] = [(1, 1), (2, 1), (-1, 1), (1, 2), (3, 1), (-2, 3)];

fn ring(n: usize, picks: &[usize]) -> QRing {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut r = QRing::from_names(names, FieldSpec::Rationals).unwrap();
    let mut k = 0;
    for j in 0..n {
        for i in 0..j {
            let (a, b) = PARAMS[picks[k % picks.len()] % PARAMS.len()];
            r = r.with_param(i, j, ratio(a, b)).unwrap();
            k += 1;
        }
    }
    r
}

type Terms = Vec<(Vec<u32>, i64)>;

fn poly(r: &QRing, t: &Terms) -> Poly {
    r.from_terms(t.iter().map(|(e, c)| (Monomial::from_exps(&e[..r.n()]), qq(*c))).collect())
}

fn terms(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, 3), -4i64..=4), 1..=max_terms)
}

fn params() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..PARAMS.len(), 3)
}

fn exps() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bicharacter(p in params(), a in exps(), b in exps(), c in exps()) {
        let r = ring(3, &p);
        let m = |e: &[u32]| Monomial::from_exps(e);
        let ab: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
        let lam = |x: &[u32], y: &[u32]| r.commutation_scalar(&m(x), &m(y));
        prop_assert_eq!(lam(&ab, &c), &lam(&a, &c) * &lam(&b, &c));
        prop_assert_eq!(lam(&a, &bc), &lam(&a, &b) * &lam(&a, &c));
    }

    #[test]
    fn product_matches_word_rewriting(p in params(), f in terms(3, 4), g in terms(3, 4), h in terms(2, 3)) {
        let r = ring(3, &p);
        let (f, g, h) = (poly(&r, &f), poly(&r, &g), poly(&r, &h));
        prop_assert_eq!(r.mul(&f, &g), word_mul(&r, &f, &g));
        prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
    }

    #[test]
    fn twist_identity(p in params(), a in exps(), f in terms(2, 4)) {
        let r = ring(3, &p);
        let (m, f) = (Monomial::from_exps(&a), poly(&r, &f));
        let xm = r.monomial(m.clone());
        prop_assert_eq!(r.mul(&xm, &f), r.mul(&r.twist_by_monomial(&m, &f), &xm));
        let psi = r.normal_automorphism(&xm).unwrap();
        prop_assert_eq!(r.mul(&xm, &f), r.mul(&psi.apply(&f), &xm));
        prop_assert_eq!(psi.inverse().apply(&psi.apply(&f)), f);
    }

    #[test]
    fn opposite_is_an_anti_isomorphism(p in params(), f in terms(2, 3), g in terms(2, 3)) {
        let r = ring(3, &p);
        let op = r.opposite();
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        prop_assert_eq!(r.to_opposite(&r.mul(&f, &g)), op.mul(&r.to_opposite(&g), &r.to_opposite(&f)));
        prop_assert_eq!(op.to_opposite(&r.to_opposite(&f)), f);
    }

    #[test]
    fn groebner_basis_is_canonical(p in params(), gens in prop::collection::vec(terms(2, 3), 1..=3), rot in 0usize..3, two in any::<bool>()) {
        let r = ring(2, &p);
        let gens: Vec<Poly> = gens.iter().map(|t| poly(&r, t)).collect();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        let scaled: Vec<Poly> = shuffled.iter().map(|g| r.scale(g, &qq(-3))).collect();
        let side = if two { Side::TwoSided } else { Side::Right };
        let a = IdealHandle::new(&r, &gens, side);
        let b = IdealHandle::new(&r, &scaled, side);
        prop_assert_eq!(a.basis(), b.basis());
        for g in &gens {
            prop_assert!(a.contains_computed(g));
        }
    }

    #[test]
    fn colon_laws(p in params(), gens in prop::collection::vec(terms(2, 2), 1..=2), h in exps()) {
        let r = ring(2, &p);
        let gens: Vec<Poly> = gens.iter().map(|t| poly(&r, t)).collect();
        let k = IdealHandle::two_sided(&r, &gens);
        let h = r.monomial(Monomial::from_exps(&h[..2]));
        let c = ideal::colon_normal(&k, &h).unwrap();
        for z in c.basis() {
            prop_assert!(k.contains_computed(&r.mul(z, &h)));
        }
        prop_assert!(ideal::subset_witness(&k, &c).is_none());
        let kh = IdealHandle::two_sided(&r, std::slice::from_ref(&h));
        prop_assert!(ideal::colon_normal(&kh, &h).unwrap().is_unit());
    }

    #[test]
    fn intersection_is_a_lower_bound(p in params(), a in terms(2, 2), b in terms(2, 2)) {
        let r = ring(2, &p);
        let (a, b) = (IdealHandle::two_sided(&r, &[poly(&r, &a)]), IdealHandle::two_sided(&r, &[poly(&r, &b)]));
        let i = ideal::intersect(&a, &b).unwrap();
        prop_assert!(ideal::intersection_certificate(&i, &a, &b));
        prop_assert!(ideal::subset_witness(&ideal::product(&a, &b).unwrap(), &i).is_none());
    }

    #[test]
    fn saturation_is_idempotent_and_monotone(p in params(), k in terms(2, 2), extra in terms(2, 2), base in exps()) {
        let r = ring(2, &p);
        let t = TorsionTheory::new(IdealHandle::two_sided(&r, &[r.monomial(Monomial::from_exps(&base[..2]))])).unwrap();
        let k1 = IdealHandle::two_sided(&r, &[poly(&r, &k)]);
        let k2 = IdealHandle::two_sided(&r, &[poly(&r, &k), poly(&r, &extra)]);
        let b = Bounds::default();
        let s1 = torsion::saturate_with(&k1, &t, b).unwrap().ideal;
        let s2 = torsion::saturate_with(&k2, &t, b).unwrap().ideal;
        prop_assert!(ideal::subset_witness(&k1, &s1).is_none());
        prop_assert!(ideal::subset_witness(&s1, &s2).is_none());
        let again = torsion::saturate_with(&s1, &t, b).unwrap().ideal;
        prop_assert!(ideal::equal(&again, &s1).unwrap().is_equal());
    }

    #[test]
    fn print_parse_round_trip(p in params(), f in terms(3, 5)) {
        let r = ring(3, &p);
        let f = poly(&r, &f);
        let text = r.fmt_poly(&f);
        prop_assert_eq!(parse_poly(&text, &r).unwrap(), f);
    }
}
