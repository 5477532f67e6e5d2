//! Finite-dimensional right modules given by action matrices.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{express, left_kernel, Row};

use super::algebra::StructAlgebra;
use super::subspace::{combine, unit_vector, Subspace};

pub type Matrix = Vec<Row>;

/// A right module: `action[i]` is the matrix of m ↦ m·bᵢ in row-vector convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FDModule {
    field: FieldSpec,
    dim: usize,
    action: Vec<Matrix>,
}

pub fn vec_mat(field: FieldSpec, v: &[Scalar], m: &Matrix, cols: usize) -> Row {
    combine(field, cols, v, m)
}

pub fn mat_mul(field: FieldSpec, a: &Matrix, b: &Matrix, cols: usize) -> Matrix {
    a.iter().map(|r| vec_mat(field, r, b, cols)).collect()
}

pub fn identity(field: FieldSpec, n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(field, n, i)).collect()
}

impl FDModule {
    /// Validate the action against the structure constants and the unit.
    pub fn new(alg: &StructAlgebra, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let field = alg.field();
        if action.len() != alg.dim() || action.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::InvalidModule(format!("expected {} matrices of size {dim}×{dim}", alg.dim())));
        }
        let module = FDModule { field, dim, action };
        if let Some(msg) = module.violation(alg) {
            return Err(Error::InvalidModule(msg));
        }
        Ok(module)
    }

    fn violation(&self, alg: &StructAlgebra) -> Option<String> {
        let d = alg.dim();
        if self.matrix_of(alg.unit()) != identity(self.field, self.dim) {
            return Some("the unit does not act as the identity".into());
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = mat_mul(self.field, &self.action[i], &self.action[j], self.dim);
                if lhs != self.matrix_of(alg.structure_constant(i, j)) {
                    return Some(format!("ρ({})ρ({}) ≠ ρ({}·{})", alg.labels()[i], alg.labels()[j], alg.labels()[i], alg.labels()[j]));
                }
            }
        }
        None
    }

    pub fn zero(alg: &StructAlgebra) -> Self {
        FDModule { field: alg.field(), dim: 0, action: vec![Vec::new(); alg.dim()] }
    }

    /// The algebra acting on itself by right multiplication.
    pub fn regular(alg: &StructAlgebra) -> Self {
        FDModule { field: alg.field(), dim: alg.dim(), action: (0..alg.dim()).map(|i| alg.right_action(i)).collect() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// ρ(a) for an algebra element given in basis coordinates.
    pub fn matrix_of(&self, a: &[Scalar]) -> Matrix {
        let mut out = vec![vec![self.field.zero(); self.dim]; self.dim];
        for (c, m) in a.iter().zip(&self.action) {
            if c.is_zero() {
                continue;
            }
            for (orow, mrow) in out.iter_mut().zip(m) {
                for (o, x) in orow.iter_mut().zip(mrow) {
                    if !x.is_zero() {
                        *o = &*o + &(c * x);
                    }
                }
            }
        }
        out
    }

    /// m·a.
    pub fn act(&self, m: &[Scalar], a: &[Scalar]) -> Row {
        let mut out = vec![self.field.zero(); self.dim];
        for (c, mat) in a.iter().zip(&self.action) {
            if c.is_zero() {
                continue;
            }
            let img = vec_mat(self.field, m, mat, self.dim);
            for (o, x) in out.iter_mut().zip(&img) {
                if !x.is_zero() {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn space(&self, vectors: Vec<Row>) -> Subspace {
        Subspace::new(self.field, self.dim, vectors)
    }

    pub fn is_stable(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| self.action.iter().all(|m| s.contains(&vec_mat(self.field, v, m, self.dim))))
    }

    /// M·e = image of ρ(e).
    pub fn image_of(&self, e: &[Scalar]) -> Subspace {
        self.space(self.matrix_of(e))
    }

    /// The submodule m·A generated by m.
    pub fn cyclic(&self, m: &[Scalar]) -> Subspace {
        self.space(self.action.iter().map(|mat| vec_mat(self.field, m, mat, self.dim)).collect())
    }

    /// {u ∈ P : m·u = 0} for a subspace P of the algebra.
    pub fn annihilator_in(&self, m: &[Scalar], p: &Subspace) -> Subspace {
        let rows: Vec<Row> = p.basis().iter().map(|u| self.act(m, u)).collect();
        if rows.is_empty() || self.dim == 0 {
            return p.clone();
        }
        let ker = left_kernel(&rows, self.field);
        Subspace::new(self.field, p.ambient(), ker.iter().map(|c| combine(self.field, p.ambient(), c, p.basis())).collect())
    }

    /// upper/lower for stable subspaces lower ⊆ upper.
    pub fn subquotient(&self, upper: &Subspace, lower: &Subspace) -> FDModule {
        debug_assert!(lower.is_subset(upper) && self.is_stable(upper) && self.is_stable(lower));
        let q = upper.complement_of(lower);
        let mut basis = q.clone();
        basis.extend(lower.basis().iter().cloned());
        let r = q.len();
        let action = self
            .action
            .iter()
            .map(|mat| {
                q.iter()
                    .map(|v| {
                        let img = vec_mat(self.field, v, mat, self.dim);
                        let c = express(&basis, &img, self.field).expect("upper is stable");
                        c[..r].to_vec()
                    })
                    .collect()
            })
            .collect();
        FDModule { field: self.field, dim: r, action }
    }

    pub fn submodule(&self, s: &Subspace) -> FDModule {
        self.subquotient(s, &Subspace::zero(self.field, self.dim))
    }

    pub fn quotient(&self, s: &Subspace) -> FDModule {
        self.subquotient(&self.whole(), s)
    }

    pub fn direct_sum(&self, other: &FDModule) -> FDModule {
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = vec![vec![self.field.zero(); n]; n];
                for i in 0..self.dim {
                    m[i][..self.dim].clone_from_slice(&a[i]);
                }
                for i in 0..other.dim {
                    m[self.dim + i][self.dim..].clone_from_slice(&b[i]);
                }
                m
            })
            .collect();
        FDModule { field: self.field, dim: n, action }
    }
}

/// Every action-stable subspace, ordered by dimension then canonical basis.
pub fn enumerate_right_submodules(m: &FDModule, bound: u128) -> Result<Vec<Subspace>> {
    Ok(m.whole().subspaces(bound)?.into_iter().filter(|s| m.is_stable(s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::algebra::examples::*;
    use crate::findim::subspace::DEFAULT_BOUND;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn projective_lattices_of_triangular() {
        let t = upper_triangular(f2());
        let reg = FDModule::regular(&t);
        assert!(FDModule::new(&t, reg.dim(), reg.action().to_vec()).is_ok());
        let p1 = reg.submodule(&t.projective(0));
        let p2 = reg.submodule(&t.projective(1));
        assert_eq!((p1.dim(), p2.dim()), (2, 1));
        let subs = enumerate_right_submodules(&p1, DEFAULT_BOUND).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(enumerate_right_submodules(&p2, DEFAULT_BOUND).unwrap().len(), 2);
        assert_eq!(enumerate_right_submodules(&FDModule::zero(&t), DEFAULT_BOUND).unwrap().len(), 1);
        // The socle of P1 is e12·R ≅ S2 and the top is S1.
        let soc = &subs[1];
        let top = p1.quotient(soc);
        assert!(FDModule::new(&t, top.dim(), top.action().to_vec()).is_ok());
        assert!(top.matrix_of(&t.idempotents()[0])[0][0].is_one());
        assert!(p1.submodule(soc).matrix_of(&t.idempotents()[1])[0][0].is_one());
    }

    #[test]
    fn bad_action_rejected() {
        let t = upper_triangular(f2());
        let f = t.field();
        let one = vec![vec![f.one()]];
        let zero = vec![vec![f.zero()]];
        // e12 acting invertibly on a 1-dimensional module contradicts e12·e12 = 0.
        let err = FDModule::new(&t, 1, vec![one.clone(), one.clone(), zero.clone()]).unwrap_err();
        assert!(matches!(err, Error::InvalidModule(_)));
        assert!(FDModule::new(&t, 1, vec![one.clone(), zero.clone(), zero.clone()]).is_ok());
        let s = FDModule::new(&t, 1, vec![zero.clone(), zero, one]).unwrap();
        assert_eq!(s.direct_sum(&s).dim(), 2);
    }
}
