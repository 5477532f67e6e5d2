//! Fixtures shared by the benchmarks.

use qsubcat::expr::parse_poly_list;
use qsubcat::torsion::TorsionTheory;
use qsubcat::{FieldSpec, IdealHandle, QRing};

pub fn quantum_plane(q: i64) -> QRing {
    let f = FieldSpec::Rationals;
    QRing::quantum_plane(f, f.from_i64(q)).expect("nonzero parameter")
}

pub fn two_sided(r: &QRing, gens: &str) -> IdealHandle {
    IdealHandle::two_sided(r, &parse_poly_list(gens, r).expect("valid generators"))
}

pub fn theory(r: &QRing, gens: &str) -> TorsionTheory {
    TorsionTheory::new(two_sided(r, gens)).expect("two-sided base")
}

/// Three-variable ring with generic parameters.
pub fn three_space() -> QRing {
    let f = FieldSpec::Rationals;
    QRing::from_names(vec!["x".into(), "y".into(), "z".into()], f)
        .and_then(|r| r.with_param(0, 1, f.from_i64(2)))
        .and_then(|r| r.with_param(0, 2, f.from_i64(-1)))
        .and_then(|r| r.with_param(1, 2, f.from_i64(3)))
        .expect("valid parameters")
}
