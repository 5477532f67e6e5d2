//! TOML ring specifications.
//!
//! ```toml
//! [ring]
//! type = "quantum"
//! field = "QQ"
//! vars = ["x", "y"]
//! [ring.q]
//! "1,2" = "2"
//! ```
//!
//! Finite-dimensional algebras use `type = "findim"`, a `basis` list, a `unit` list of
//! summands, an optional `idempotents` list (default: the unit summands) and a `[ring.mul]`
//! table `"bi,bj" = "expr"`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::{self, Target};
use crate::field::{FieldSpec, Scalar};
use crate::findim::{build_algebra, AlgebraSpec, StructAlgebra};
use crate::linalg::Row;
use crate::ring::QRing;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    ring: RingSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum Kind {
    Quantum,
    Findim,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingSection {
    #[serde(rename = "type")]
    kind: Kind,
    field: String,
    vars: Option<Vec<String>>,
    q: Option<BTreeMap<String, String>>,
    basis: Option<Vec<String>>,
    mul: Option<BTreeMap<String, String>>,
    unit: Option<Vec<String>>,
    idempotents: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadedRing {
    Quantum(QRing),
    FinDim(StructAlgebra),
}

impl LoadedRing {
    pub fn as_quantum(&self) -> Option<&QRing> {
        match self {
            LoadedRing::Quantum(r) => Some(r),
            LoadedRing::FinDim(_) => None,
        }
    }

    pub fn as_findim(&self) -> Option<&StructAlgebra> {
        match self {
            LoadedRing::FinDim(a) => Some(a),
            LoadedRing::Quantum(_) => None,
        }
    }
}

/// "QQ" or "GF(p)".
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.trim().parse::<u64>().ok())
        .ok_or_else(|| Error::spec("ring.field", format!("expected \"QQ\" or \"GF(p)\", got {t:?}")))?;
    FieldSpec::prime(p).map_err(|e| Error::spec("ring.field", e.to_string()))
}

impl Target for FieldSpec {
    type Elem = Scalar;

    fn scalar(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        self.from_ratio(num, den)
    }

    fn variable(&self, name: &str) -> Result<Scalar> {
        Err(Error::UnknownVariable(name.into()))
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }

    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }

    fn one(&self) -> Scalar {
        FieldSpec::one(self)
    }
}

fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::spec(path, e.to_string()))
}

fn pair(key: &str) -> Option<(&str, &str)> {
    let (a, b) = key.split_once(',')?;
    Some((a.trim(), b.trim()))
}

fn is_name(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_ring_spec(text: &str) -> Result<LoadedRing> {
    let file: File = toml::from_str(text).map_err(|e| Error::spec("ring", e.message().to_string()))?;
    let r = file.ring;
    let field = parse_field(&r.field)?;
    match r.kind {
        Kind::Quantum => {
            for (key, present) in [("basis", r.basis.is_some()), ("mul", r.mul.is_some()), ("unit", r.unit.is_some()), ("idempotents", r.idempotents.is_some())] {
                if present {
                    return Err(Error::spec(format!("ring.{key}"), "not allowed for a quantum ring"));
                }
            }
            let vars = r.vars.ok_or_else(|| Error::spec("ring.vars", "missing"))?;
            if let Some(bad) = vars.iter().find(|v| !is_name(v)) {
                return Err(Error::spec("ring.vars", format!("{bad:?} is not a valid name")));
            }
            let mut ring = at("ring.vars", QRing::from_names(vars.clone(), field))?;
            for (key, value) in r.q.unwrap_or_default() {
                let path = format!("ring.q.\"{key}\"");
                let (i, j) = pair(&key)
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    .filter(|&(i, j)| 1 <= i && i < j && j <= vars.len())
                    .ok_or_else(|| Error::spec(&path, format!("expected \"i,j\" with 1 ≤ i < j ≤ {}", vars.len())))?;
                let p = at(&path, expr::parse_in(&value, &field))?;
                if p.is_zero() {
                    return Err(Error::spec(&path, format!("p{i}{j} must be nonzero")));
                }
                ring = at(&path, ring.with_param(i - 1, j - 1, p))?;
            }
            Ok(LoadedRing::Quantum(ring))
        }
        Kind::Findim => {
            if r.vars.is_some() || r.q.is_some() {
                return Err(Error::spec("ring", "`vars` and `q` are not allowed for a findim ring"));
            }
            let labels = r.basis.ok_or_else(|| Error::spec("ring.basis", "missing"))?;
            if let Some(bad) = labels.iter().find(|v| !is_name(v)) {
                return Err(Error::spec("ring.basis", format!("{bad:?} is not a valid name")));
            }
            let d = labels.len();
            let linear = |path: &str, text: &str| -> Result<Row> {
                let e = at(path, expr::parse_expr(text))?;
                let lin = LinearTarget { labels: &labels, field };
                match at(path, e.eval(&lin))? {
                    Some((v, c)) if c.is_zero() => Ok(v),
                    Some(_) => Err(Error::spec(path, "constant terms are not allowed; write the unit as basis labels")),
                    None => Err(Error::spec(path, "expected a linear combination of basis labels")),
                }
            };
            let mut table = vec![vec![vec![field.zero(); d]; d]; d];
            for (key, value) in r.mul.unwrap_or_default() {
                let path = format!("ring.mul.\"{key}\"");
                let (a, b) = pair(&key)
                    .and_then(|(a, b)| Some((labels.iter().position(|l| l == a)?, labels.iter().position(|l| l == b)?)))
                    .ok_or_else(|| Error::spec(&path, "expected \"bi,bj\" with basis labels"))?;
                table[a][b] = linear(&path, &value)?;
            }
            let unit_parts = r.unit.ok_or_else(|| Error::spec("ring.unit", "missing"))?;
            let summands = unit_parts.iter().map(|s| linear("ring.unit", s)).collect::<Result<Vec<_>>>()?;
            let mut unit = vec![field.zero(); d];
            for v in &summands {
                unit = unit.iter().zip(v).map(|(a, b)| a + b).collect();
            }
            let idempotents = match r.idempotents {
                Some(list) => list.iter().map(|s| linear("ring.idempotents", s)).collect::<Result<Vec<_>>>()?,
                None => summands,
            };
            let alg = build_algebra(AlgebraSpec { labels: labels.clone(), field, table, unit, idempotents: Some(idempotents) })
                .map_err(|e| Error::spec("ring.mul", e.to_string()))?;
            Ok(LoadedRing::FinDim(alg))
        }
    }
}

/// Linear combinations of basis labels. `None` marks a product of two non-scalars, which has
/// no meaning before the multiplication table is known.
struct LinearTarget<'a> {
    labels: &'a [String],
    field: FieldSpec,
}

type Lin = Option<(Row, Scalar)>;

impl Target for LinearTarget<'_> {
    type Elem = Lin;

    fn scalar(&self, num: &BigInt, den: &BigInt) -> Result<Lin> {
        Ok(Some((vec![self.field.zero(); self.labels.len()], self.field.from_ratio(num, den)?)))
    }

    fn variable(&self, name: &str) -> Result<Lin> {
        let i = self.labels.iter().position(|l| l == name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut v = vec![self.field.zero(); self.labels.len()];
        v[i] = self.field.one();
        Ok(Some((v, self.field.zero())))
    }

    fn add(&self, a: &Lin, b: &Lin) -> Lin {
        let ((u, c), (v, e)) = (a.as_ref()?, b.as_ref()?);
        Some((u.iter().zip(v).map(|(x, y)| x + y).collect(), c + e))
    }

    fn sub(&self, a: &Lin, b: &Lin) -> Lin {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Lin) -> Lin {
        let (u, c) = a.as_ref()?;
        Some((u.iter().map(|x| -x).collect(), -c))
    }

    fn mul(&self, a: &Lin, b: &Lin) -> Lin {
        let ((u, c), (v, e)) = (a.as_ref()?, b.as_ref()?);
        let scale = |w: &Row, k: &Scalar| w.iter().map(|x| x * k).collect::<Row>();
        if u.iter().all(Scalar::is_zero) {
            Some((scale(v, c), c * e))
        } else if v.iter().all(Scalar::is_zero) {
            Some((scale(u, e), c * e))
        } else {
            None
        }
    }

    fn one(&self) -> Lin {
        Some((vec![self.field.zero(); self.labels.len()], self.field.one()))
    }
}

pub fn load_ring_spec(path: &Path) -> Result<LoadedRing> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_ring_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = "[ring]\ntype = \"quantum\"\nfield = \"QQ\"\nvars = [\"x\", \"y\"]\n[ring.q]\n\"1,2\" = \"2\"\n";

    const T2: &str = r#"
[ring]
type = "findim"
field = "GF(2)"
basis = ["e11", "e12", "e22"]
unit = ["e11", "e22"]
idempotents = ["e11", "e22"]
[ring.mul]
"e11,e11" = "e11"
"e11,e12" = "e12"
"e12,e22" = "e12"
"e22,e22" = "e22"
"#;

    #[test]
    fn quantum_plane_loads() {
        let r = parse_ring_spec(PLANE).unwrap();
        let r = r.as_quantum().unwrap();
        assert_eq!(r.param(0, 1), FieldSpec::Rationals.from_i64(2));
        assert!(expr::parse_poly("y*x - 2*x*y", r).unwrap().is_zero());
    }

    #[test]
    fn triangular_loads_and_matches_builtin() {
        let a = parse_ring_spec(T2).unwrap();
        let builtin = crate::findim::examples::upper_triangular(FieldSpec::prime(2).unwrap());
        assert_eq!(a.as_findim().unwrap(), &builtin);
        let implicit = parse_ring_spec(&T2.replace("idempotents = [\"e11\", \"e22\"]\n", "")).unwrap();
        assert_eq!(implicit, a);
        let trivial = parse_ring_spec(&T2.replace("[\"e11\", \"e22\"]\n[ring", "[\"e11 + e22\"]\n[ring")).unwrap();
        assert_eq!(trivial.as_findim().unwrap().idempotents().len(), 1);
    }

    #[test]
    fn errors_name_the_key() {
        let zero = PLANE.replace("\"2\"", "\"0\"");
        let Err(Error::Spec { path, .. }) = parse_ring_spec(&zero) else { panic!() };
        assert_eq!(path, "ring.q.\"1,2\"");
        let unknown = PLANE.replace("vars", "variables");
        assert!(matches!(parse_ring_spec(&unknown), Err(Error::Spec { .. })));
        let bad_field = PLANE.replace("QQ", "GF(4)");
        let Err(Error::Spec { path, .. }) = parse_ring_spec(&bad_field) else { panic!() };
        assert_eq!(path, "ring.field");
        let bad_assoc = T2.replace("\"e22,e22\" = \"e22\"", "\"e22,e22\" = \"e22\"\n\"e12,e12\" = \"e11\"");
        let Err(Error::Spec { path, message }) = parse_ring_spec(&bad_assoc) else { panic!() };
        assert_eq!(path, "ring.mul");
        assert!(message.contains("associative"), "{message}");
        let product = T2.replace("\"e11,e11\" = \"e11\"", "\"e11,e11\" = \"e11*e12\"");
        assert!(matches!(parse_ring_spec(&product), Err(Error::Spec { .. })));
        assert!(matches!(load_ring_spec(Path::new("/nonexistent.toml")), Err(Error::Io(_))));
    }
}
