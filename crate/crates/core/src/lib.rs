//! Exact ideal calculus, torsion-theoretic saturation and subcategory lattices
//! over quantum affine spaces and finite-dimensional algebras.

pub mod error;
pub mod expr;
pub mod field;
pub mod findim;
pub mod gb;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod scenarios;
pub mod spec_file;
pub mod torsion;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use gb::{GroebnerBasis, Side};
pub use ideal::{EqualityVerdict, Exactness, IdealHandle};
pub use ring::{DiagAuto, Monomial, MonomialOrder, Poly, QRing};
