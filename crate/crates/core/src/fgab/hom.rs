use std::fmt;

use super::FgGroup;
use crate::error::{Error, Result};
use crate::int::{divides, exact_div, int, is_zero, Int};
use crate::lin::{self, Solver};
use crate::matrix::Matrix;

/// Entry `(i, j)` sends domain generator `j` into codomain factor `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    domain: FgGroup,
    codomain: FgGroup,
    matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgGroup,
    pub inclusion: Homomorphism,
}

#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FgGroup,
    pub projection: Homomorphism,
    /// Lifts of the quotient's generators, one column each.
    pub section: Matrix,
}

impl QuotientGroup {
    pub fn lift(&self, x: &[Int]) -> Vec<Int> {
        let v = self.section.mul_vec(x);
        self.projection.domain().reduced(v)
    }
}

fn well_defined(dom: &FgGroup, cod: &FgGroup, m: &Matrix) -> Result<()> {
    if m.rows() != cod.ngens() || m.cols() != dom.ngens() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for {} -> {}",
            m.rows(),
            m.cols(),
            dom,
            cod
        )));
    }
    for (i, e) in cod.factors().iter().enumerate() {
        for (j, d) in dom.factors().iter().enumerate() {
            if !divides(e, &(d * &m[(i, j)])) {
                return Err(Error::IllDefined { row: i, col: j });
            }
        }
    }
    Ok(())
}

impl Homomorphism {
    pub fn new(domain: &FgGroup, codomain: &FgGroup, matrix: Matrix) -> Result<Self> {
        well_defined(domain, codomain, &matrix)?;
        Ok(Self::unchecked(domain, codomain, matrix))
    }

    /// Row-major entries.
    pub fn from_i64(domain: &FgGroup, codomain: &FgGroup, entries: &[i64]) -> Result<Self> {
        if entries.len() != domain.ngens() * codomain.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for {} -> {}",
                entries.len(),
                domain,
                codomain
            )));
        }
        Self::new(
            domain,
            codomain,
            Matrix::from_i64(codomain.ngens(), domain.ngens(), entries),
        )
    }

    pub(crate) fn unchecked(domain: &FgGroup, codomain: &FgGroup, mut matrix: Matrix) -> Self {
        debug_assert!(well_defined(domain, codomain, &matrix).is_ok());
        lin::reduce_rows(codomain.factors(), &mut matrix);
        Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix,
        }
    }

    pub fn zero(domain: &FgGroup, codomain: &FgGroup) -> Self {
        Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::zeros(codomain.ngens(), domain.ngens()),
        }
    }

    pub fn identity(g: &FgGroup) -> Self {
        Self::unchecked(g, g, Matrix::identity(g.ngens()))
    }

    pub fn domain(&self) -> &FgGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.codomain.reduced(self.matrix.mul_vec(x))
    }

    pub fn try_compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.codomain != self.domain {
            return Err(Error::Mismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, inner.domain, inner.codomain
            )));
        }
        Ok(Self::unchecked(
            &inner.domain,
            &self.codomain,
            self.matrix.mul(&inner.matrix),
        ))
    }

    /// `self ∘ inner`; panics on mismatched groups.
    pub fn compose(&self, inner: &Homomorphism) -> Homomorphism {
        self.try_compose(inner).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_add(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Mismatch(
                "adding maps between different groups".into(),
            ));
        }
        Ok(Self::unchecked(
            &self.domain,
            &self.codomain,
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn add(&self, other: &Homomorphism) -> Homomorphism {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Homomorphism) -> Homomorphism {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Homomorphism {
        self.scale(&int(-1))
    }

    pub fn scale(&self, k: &Int) -> Homomorphism {
        Self::unchecked(&self.domain, &self.codomain, self.matrix.scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> Subgroup {
        let s = lin::kernel(self.domain.factors(), self.codomain.factors(), &self.matrix);
        Subgroup {
            inclusion: Self::unchecked(&s.group, &self.domain, s.inclusion),
            group: s.group,
        }
    }

    pub fn image(&self) -> Subgroup {
        let s = lin::subgroup(self.codomain.factors(), &self.matrix);
        Subgroup {
            inclusion: Self::unchecked(&s.group, &self.codomain, s.inclusion),
            group: s.group,
        }
    }

    pub fn cokernel(&self) -> QuotientGroup {
        let q = lin::quotient(self.codomain.factors(), &self.matrix);
        QuotientGroup {
            projection: Self::unchecked(&self.codomain, &q.group, q.projection),
            group: q.group,
            section: q.section,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let pre = self.preimager();
        let n = self.codomain.ngens();
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let mut unit = self.codomain.zero_vec();
            unit[k] = int(1);
            cols.push(pre.solve(&unit)?);
        }
        let m = Matrix::from_columns(self.domain.ngens(), &cols);
        Homomorphism::new(&self.codomain, &self.domain, m).ok()
    }

    /// Reusable solver for `self(x) = y`.
    pub fn preimager(&self) -> Preimager {
        Preimager {
            solver: Solver::new(&self.matrix, self.codomain.factors()),
            domain: self.domain.clone(),
        }
    }

    pub fn preimage(&self, y: &[Int]) -> Option<Vec<Int>> {
        self.preimager().solve(y)
    }

    /// Factors `self` through an injective map `incl` into the same codomain.
    pub fn corestrict(&self, incl: &Homomorphism) -> Option<Homomorphism> {
        if incl.codomain != self.codomain {
            return None;
        }
        let pre = incl.preimager();
        let mut cols = Vec::with_capacity(self.domain.ngens());
        for j in 0..self.domain.ngens() {
            cols.push(pre.solve(&self.matrix.column(j))?);
        }
        let m = Matrix::from_columns(incl.domain.ngens(), &cols);
        Homomorphism::new(&self.domain, &incl.domain, m).ok()
    }

    /// Induced map on a quotient of the domain, through the quotient's section.
    pub fn through_section(&self, q: &QuotientGroup) -> Option<Homomorphism> {
        if q.projection.domain() != &self.domain {
            return None;
        }
        let m = self.matrix.mul(&q.section);
        Homomorphism::new(&q.group, &self.codomain, m).ok()
    }

    /// The restriction `U[2] -> V[2]`.
    pub fn on_two_torsion(&self) -> Homomorphism {
        let su = two_torsion(&self.domain);
        let sv = two_torsion(&self.codomain);
        self.compose(&su.inclusion)
            .corestrict(&sv.inclusion)
            .expect("2-torsion maps to 2-torsion")
    }

    /// The induced map `U/2 -> V/2`.
    pub fn mod_two(&self) -> Homomorphism {
        let qu = mod_two(&self.domain);
        let qv = mod_two(&self.codomain);
        qv.projection
            .compose(self)
            .through_section(&qu)
            .expect("2U maps into 2V")
    }

    /// Subgroup equality of the images of two maps into the same group.
    pub fn same_image(&self, other: &Homomorphism) -> bool {
        image_contains(self, other) && image_contains(other, self)
    }
}

/// `im(small) ⊆ im(big)`.
pub fn image_contains(big: &Homomorphism, small: &Homomorphism) -> bool {
    let pre = big.preimager();
    (0..small.domain.ngens()).all(|j| pre.solve(&small.matrix.column(j)).is_some())
}

/// Image of `f` equals kernel of `g`.
pub fn is_exact_at(f: &Homomorphism, g: &Homomorphism) -> bool {
    if f.codomain != g.domain {
        return false;
    }
    if !g.compose(f).is_zero() {
        return false;
    }
    image_contains(f, &g.kernel().inclusion)
}

pub struct Preimager {
    solver: Solver,
    domain: FgGroup,
}

impl Preimager {
    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        self.solver.solve(y).map(|x| self.domain.reduced(x))
    }
}

/// `U[2]` with its inclusion; one `Z/2` per even invariant factor.
pub fn two_torsion(u: &FgGroup) -> Subgroup {
    let even: Vec<usize> = (0..u.ngens())
        .filter(|&j| {
            let d = &u.factors()[j];
            !is_zero(d) && divides(&int(2), d)
        })
        .collect();
    let group = FgGroup::canonical_unchecked(vec![int(2); even.len()]);
    let mut m = Matrix::zeros(u.ngens(), even.len());
    for (k, &j) in even.iter().enumerate() {
        m[(j, k)] = exact_div(&u.factors()[j], &int(2));
    }
    Subgroup {
        inclusion: Homomorphism::unchecked(&group, u, m),
        group,
    }
}

/// `U/2` with its projection; one `Z/2` per even or free factor.
pub fn mod_two(u: &FgGroup) -> QuotientGroup {
    let keep: Vec<usize> = (0..u.ngens())
        .filter(|&j| divides(&int(2), &u.factors()[j]))
        .collect();
    let group = FgGroup::canonical_unchecked(vec![int(2); keep.len()]);
    let mut p = Matrix::zeros(keep.len(), u.ngens());
    for (k, &j) in keep.iter().enumerate() {
        p[(k, j)] = int(1);
    }
    QuotientGroup {
        projection: Homomorphism::unchecked(u, &group, p.clone()),
        section: p.transpose(),
        group,
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {}", self.domain, self.codomain, self.matrix)
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn congruences() {
        let z2 = g("Z/2");
        let z4 = g("Z/4");
        assert_eq!(
            Homomorphism::from_i64(&z2, &z4, &[1]).err(),
            Some(Error::IllDefined { row: 0, col: 0 })
        );
        assert!(Homomorphism::from_i64(&z2, &z4, &[2]).is_ok());
        assert!(Homomorphism::from_i64(&g("Z"), &z2, &[1]).is_ok());
        assert!(Homomorphism::from_i64(&z2, &g("Z"), &[1]).is_err());
    }

    #[test]
    fn kernels_and_cokernels() {
        let z4 = g("Z/4");
        let z2 = g("Z/2");
        let p = Homomorphism::from_i64(&z4, &z2, &[1]).unwrap();
        let k = p.kernel();
        assert_eq!(k.group, z2);
        assert_eq!(k.inclusion.matrix(), &Matrix::from_i64(1, 1, &[2]));
        assert!(Homomorphism::identity(&g("Z/6"))
            .kernel()
            .group
            .is_trivial());
        let two = Homomorphism::from_i64(&g("Z"), &g("Z"), &[2]).unwrap();
        assert!(two.kernel().group.is_trivial());
        assert_eq!(two.cokernel().group, z2);
        let i = Homomorphism::from_i64(&z2, &z4, &[2]).unwrap();
        assert_eq!(i.cokernel().group, z2);
        let zero = Homomorphism::zero(&g("0"), &g("Z/6"));
        assert_eq!(zero.cokernel().group, g("Z/6"));
        assert!(is_exact_at(&i, &p));
    }

    #[test]
    fn torsion_and_mod_two() {
        let u = g("Z/4+Z/3");
        assert_eq!(u.to_string(), "Z/12");
        assert_eq!(two_torsion(&u).group, g("Z/2"));
        assert_eq!(mod_two(&u).group, g("Z/2"));
        assert!(two_torsion(&g("Z")).group.is_trivial());
        assert_eq!(mod_two(&g("Z")).group, g("Z/2"));
        assert!(two_torsion(&g("0")).group.is_trivial());
        assert!(mod_two(&g("0")).group.is_trivial());
    }

    #[test]
    fn induced_maps() {
        let z4 = g("Z/4");
        let twice = Homomorphism::from_i64(&z4, &z4, &[2]).unwrap();
        assert!(twice.on_two_torsion().is_zero());
        assert!(twice.mod_two().is_zero());
        let id = Homomorphism::identity(&z4);
        assert_eq!(id.on_two_torsion(), Homomorphism::identity(&g("Z/2")));
    }
}
