//! Filter systems on the projective generators P_α = e_α·A and the subcategories they generate.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{left_kernel, Row};

use super::algebra::{stability_predicates, LinIdeal, StructAlgebra};
use super::module::FDModule;
use super::subspace::{combine, Subspace};

/// The projective generators with their submodule lattices and the Hom-action between them.
#[derive(Debug, Clone)]
pub struct Generators<'a> {
    alg: &'a StructAlgebra,
    regular: FDModule,
    projectives: Vec<Subspace>,
    lattices: Vec<Vec<Subspace>>,
    index: Vec<HashMap<Subspace, usize>>,
    leq: Vec<Vec<Vec<bool>>>,
    meet: Vec<Vec<Vec<usize>>>,
    /// (α, β, map) where map[J] is the index of f⁻¹(J) ⊆ P_α for J ⊆ P_β; deduplicated over f.
    pullbacks: Vec<(usize, usize, Vec<usize>)>,
}

impl<'a> Generators<'a> {
    pub fn new(alg: &'a StructAlgebra, bound: u128) -> Result<Self> {
        let regular = FDModule::regular(alg);
        let n = alg.num_generators();
        let projectives: Vec<Subspace> = (0..n).map(|a| alg.projective(a)).collect();
        let mut lattices = Vec::with_capacity(n);
        for p in &projectives {
            let l: Vec<Subspace> = p.subspaces(bound)?.into_iter().filter(|s| alg.is_right_stable(s)).collect();
            lattices.push(l);
        }
        let index: Vec<HashMap<Subspace, usize>> =
            lattices.iter().map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let leq = lattices
            .iter()
            .map(|l| l.iter().map(|a| l.iter().map(|b| a.is_subset(b)).collect()).collect())
            .collect();
        let meet = lattices
            .iter()
            .zip(&index)
            .map(|(l, ix)| l.iter().map(|a| l.iter().map(|b| ix[&a.intersect(b)]).collect()).collect())
            .collect();
        let mut pullbacks = Vec::new();
        for alpha in 0..n {
            for beta in 0..n {
                let mut seen: Vec<Vec<usize>> = Vec::new();
                for c in alg.corner(beta, alpha).elements()? {
                    let map: Vec<usize> = lattices[beta]
                        .iter()
                        .map(|j| index[alpha][&preimage(alg, &c, &projectives[alpha], j)])
                        .collect();
                    if !seen.contains(&map) {
                        seen.push(map);
                    }
                }
                pullbacks.extend(seen.into_iter().map(|m| (alpha, beta, m)));
            }
        }
        Ok(Generators { alg, regular, projectives, lattices, index, leq, meet, pullbacks })
    }

    pub fn algebra(&self) -> &StructAlgebra {
        self.alg
    }

    pub fn len(&self) -> usize {
        self.projectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectives.is_empty()
    }

    pub fn projective(&self, alpha: usize) -> &Subspace {
        &self.projectives[alpha]
    }

    pub fn lattice(&self, alpha: usize) -> &[Subspace] {
        &self.lattices[alpha]
    }

    /// P_α / J as a module.
    pub fn cyclic_quotient(&self, alpha: usize, j: &Subspace) -> FDModule {
        self.regular.subquotient(&self.projectives[alpha], j)
    }

    fn indices(&self, filters: &[Vec<Subspace>]) -> Result<Vec<Vec<bool>>> {
        if filters.len() != self.len() {
            return Err(Error::InvalidFilterSystem(format!("expected {} filters", self.len())));
        }
        filters
            .iter()
            .enumerate()
            .map(|(a, f)| {
                let mut mask = vec![false; self.lattices[a].len()];
                for j in f {
                    let &i = self.index[a].get(j).ok_or_else(|| {
                        Error::InvalidFilterSystem(format!("{} is not a submodule of P{}", self.alg.fmt_space(j), a + 1))
                    })?;
                    mask[i] = true;
                }
                Ok(mask)
            })
            .collect()
    }

    /// First violated axiom, described with the offending submodules.
    fn violation(&self, masks: &[Vec<bool>]) -> Option<String> {
        let show = |a: usize, i: usize| self.alg.fmt_space(&self.lattices[a][i]);
        for (a, mask) in masks.iter().enumerate() {
            let top = self.lattices[a].len() - 1;
            if !mask[top] {
                return Some(format!("P{} missing from its own filter", a + 1));
            }
            for i in (0..mask.len()).filter(|&i| mask[i]) {
                for j in 0..mask.len() {
                    if self.leq[a][i][j] && !mask[j] {
                        return Some(format!("not upward closed at P{}: {} ⊆ {}", a + 1, show(a, i), show(a, j)));
                    }
                    if mask[j] && !mask[self.meet[a][i][j]] {
                        return Some(format!("not closed under ∩ at P{}: {} ∩ {}", a + 1, show(a, i), show(a, j)));
                    }
                }
            }
        }
        for (alpha, beta, map) in &self.pullbacks {
            for (j, &pre) in map.iter().enumerate() {
                if masks[*beta][j] && !masks[*alpha][pre] {
                    return Some(format!(
                        "pullback of {} along a map P{} → P{} is {}, not in the filter",
                        show(*beta, j),
                        alpha + 1,
                        beta + 1,
                        show(*alpha, pre)
                    ));
                }
            }
        }
        None
    }

    fn from_masks(&self, masks: &[Vec<bool>]) -> FilterSystem {
        let filters = masks
            .iter()
            .enumerate()
            .map(|(a, m)| (0..m.len()).filter(|&i| m[i]).map(|i| self.lattices[a][i].clone()).collect())
            .collect();
        FilterSystem { filters }
    }

    /// Validate an explicit family of filters.
    pub fn filter_system(&self, filters: Vec<Vec<Subspace>>) -> Result<FilterSystem> {
        let masks = self.indices(&filters)?;
        match self.violation(&masks) {
            Some(msg) => Err(Error::InvalidFilterSystem(msg)),
            None => Ok(self.from_masks(&masks)),
        }
    }

    /// F_α = {J : e_α·K ⊆ J}.
    pub fn principal(&self, k: &LinIdeal) -> FilterSystem {
        let masks: Vec<Vec<bool>> = (0..self.len())
            .map(|a| {
                let ka = self.alg.product(&self.alg.space(vec![self.alg.idempotents()[a].clone()]), &k.space);
                self.lattices[a].iter().map(|j| ka.is_subset(j)).collect()
            })
            .collect();
        self.from_masks(&masks)
    }

    pub fn all_submodules(&self) -> FilterSystem {
        self.from_masks(&self.lattices.iter().map(|l| vec![true; l.len()]).collect::<Vec<_>>())
    }

    pub fn only_generators(&self) -> FilterSystem {
        self.from_masks(&self.lattices.iter().map(|l| (0..l.len()).map(|i| i + 1 == l.len()).collect()).collect::<Vec<_>>())
    }
}

/// {u ∈ P : c·u ∈ J}.
fn preimage(alg: &StructAlgebra, c: &Row, p: &Subspace, j: &Subspace) -> Subspace {
    let rows: Vec<Row> = p.basis().iter().map(|u| j.reduce(&alg.mul(c, u))).collect();
    let ker = left_kernel(&rows, alg.field());
    alg.space(ker.iter().map(|k| combine(alg.field(), alg.dim(), k, p.basis())).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterSystem {
    filters: Vec<Vec<Subspace>>,
}

impl FilterSystem {
    pub fn filters(&self) -> &[Vec<Subspace>] {
        &self.filters
    }

    pub fn filter(&self, alpha: usize) -> &[Subspace] {
        &self.filters[alpha]
    }

    pub fn contains(&self, alpha: usize, j: &Subspace) -> bool {
        self.filters[alpha].contains(j)
    }
}

/// Every family of filters satisfying the pullback condition, by exhaustive search.
pub fn enumerate_filter_systems(g: &Generators, bound: u128) -> Result<Vec<FilterSystem>> {
    let bits: usize = g.lattices.iter().map(Vec::len).sum();
    let count = 1u128.checked_shl(bits as u32).unwrap_or(u128::MAX);
    if count > bound {
        return Err(Error::CombinatorialBlowup { count, bound });
    }
    let mut out = Vec::new();
    for word in 0..count {
        let mut shift = 0;
        let masks: Vec<Vec<bool>> = g
            .lattices
            .iter()
            .map(|l| {
                let m = (0..l.len()).map(|i| word >> (shift + i) & 1 == 1).collect();
                shift += l.len();
                m
            })
            .collect();
        if g.violation(&masks).is_none() {
            out.push(g.from_masks(&masks));
        }
    }
    Ok(out)
}

/// Whether M is the sum of the images of maps P_α → M whose kernels lie in F_α.
pub fn subcategory_membership(g: &Generators, m: &FDModule, fs: &FilterSystem) -> bool {
    if m.is_zero() {
        return true;
    }
    let mut acc = Subspace::zero(m.field(), m.dim());
    let whole = m.whole();
    for (a, e) in g.alg.idempotents().iter().enumerate() {
        let Ok(elems) = m.image_of(e).elements() else { return false };
        for x in elems {
            if acc.contains(&x) {
                continue;
            }
            if fs.contains(a, &m.annihilator_in(&x, &g.projectives[a])) {
                acc = acc.sum(&m.cyclic(&x));
                if acc == whole {
                    return true;
                }
            }
        }
    }
    acc == whole
}

/// F′_α = {J : P_α/J lies in the subcategory generated by `fs`}.
pub fn generated_filters(g: &Generators, fs: &FilterSystem) -> Vec<Vec<Subspace>> {
    (0..g.len())
        .map(|a| {
            g.lattices[a]
                .iter()
                .filter(|j| subcategory_membership(g, &g.cyclic_quotient(a, j), fs))
                .cloned()
                .collect()
        })
        .collect()
}

pub fn filter_system_roundtrip(g: &Generators, fs: &FilterSystem) -> bool {
    generated_filters(g, fs) == fs.filters
}

/// The two-sided ideal ⊕ J_α when every F_α is principal on a J_α and the family is an ideal.
pub fn is_principal_fs(g: &Generators, fs: &FilterSystem) -> Option<LinIdeal> {
    let mut total = Subspace::zero(g.alg.field(), g.alg.dim());
    for (a, f) in fs.filters.iter().enumerate() {
        let min = f.iter().fold(g.projectives[a].clone(), |acc, j| acc.intersect(j));
        if !fs.contains(a, &min) {
            return None;
        }
        total = total.sum(&min);
    }
    let ideal = LinIdeal::new(g.alg, total);
    (ideal.two_sided && g.principal(&ideal) == *fs).then_some(ideal)
}

/// A triple (β, J, K) with K ⊆ J ⊆ P_β, J ∈ F_β, J/K in the subcategory but K ∉ F_β.
pub fn gabriel_violation(g: &Generators, fs: &FilterSystem) -> Option<(usize, Subspace, Subspace)> {
    for (b, lattice) in g.lattices.iter().enumerate() {
        for j in fs.filter(b) {
            for k in lattice.iter().filter(|k| k.is_subset(j) && !fs.contains(b, k)) {
                if subcategory_membership(g, &g.regular.subquotient(j, k), fs) {
                    return Some((b, j.clone(), k.clone()));
                }
            }
        }
    }
    None
}

pub fn is_gabriel_fs(g: &Generators, fs: &FilterSystem) -> bool {
    gabriel_violation(g, fs).is_none()
}

/// Filter of Ẑ from the stabilized chain (IⁿK)~ for Z = Mod-(A/K) and Y given by I-powers.
pub fn hat_filter_by_chain(g: &Generators, k: &LinIdeal, i: &LinIdeal) -> FilterSystem {
    let chain = stability_predicates(g.alg, k, i).chain;
    let t = LinIdeal::new(g.alg, chain.last().expect("nonempty chain").clone());
    g.principal(&t)
}

/// Filter of Ẑ by direct enumeration: J contains the saturation of some I′ ⊆ L ⊆ P_α with
/// P_α/L torsion and L/I′ in Z.
pub fn hat_filter_by_formula(g: &Generators, k: &LinIdeal, i: &LinIdeal) -> Vec<Vec<Subspace>> {
    let alg = g.alg;
    let stable = alg.power(&i.space, alg.dim());
    (0..g.len())
        .map(|a| {
            let p = &g.projectives[a];
            let lattice = &g.lattices[a];
            let torsion_quotient = alg.product(p, &stable);
            let mut sats: Vec<Subspace> = Vec::new();
            for l in lattice.iter().filter(|l| torsion_quotient.is_subset(l)) {
                let lk = alg.product(l, &k.space);
                for ip in lattice.iter().filter(|ip| ip.is_subset(l) && lk.is_subset(ip)) {
                    let sat = alg.right_colon(ip, &stable).intersect(p);
                    if !sats.contains(&sat) {
                        sats.push(sat);
                    }
                }
            }
            lattice.iter().filter(|j| sats.iter().any(|s| s.is_subset(j))).cloned().collect()
        })
        .collect()
}
