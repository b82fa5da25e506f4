//! Linear algebra on sums of cyclic groups `Z/m_1 + ... + Z/m_n` given by an
//! arbitrary modulus list (0 meaning Z). The lists need not be canonical; the
//! results are always reported against canonical groups.

use crate::fgab::FgGroup;
use crate::int::{int, reduce, Int};
use crate::matrix::Matrix;
use crate::snf::{integer_kernel, present, DiophantineSolver};

/// A subgroup: canonical group plus an `n x s` inclusion into raw coordinates.
#[derive(Clone, Debug)]
pub struct Sub {
    pub group: FgGroup,
    pub inclusion: Matrix,
}

/// A quotient: canonical group, an `s x n` projection and an `n x s` section
/// (canonical generators lifted to raw coordinates).
#[derive(Clone, Debug)]
pub struct Quot {
    pub group: FgGroup,
    pub projection: Matrix,
    pub section: Matrix,
}

pub fn reduce_vec(mods: &[Int], v: &mut [Int]) {
    for (x, m) in v.iter_mut().zip(mods) {
        *x = reduce(x, m);
    }
}

/// Reduces row `i` modulo `mods[i]`.
pub fn reduce_rows(mods: &[Int], m: &mut Matrix) {
    let cols = m.cols();
    assert_eq!(mods.len(), m.rows());
    for (i, md) in mods.iter().enumerate() {
        for x in &mut m.data_mut()[i * cols..(i + 1) * cols] {
            *x = reduce(x, md);
        }
    }
}

fn with_moduli(a: &Matrix, mods: &[Int]) -> Matrix {
    a.hstack(&Matrix::diagonal(mods))
}

/// The subgroup generated by the columns of `gens`.
pub fn subgroup(mods: &[Int], gens: &Matrix) -> Sub {
    let n = mods.len();
    let r = gens.cols();
    let k = integer_kernel(&with_moduli(gens, mods));
    let rels = k.row_slice(0, r);
    let p = present(r, &rels);
    let mut inclusion = gens.mul(&p.from_canon);
    reduce_rows(mods, &mut inclusion);
    debug_assert_eq!(inclusion.rows(), n);
    Sub {
        group: FgGroup::canonical_unchecked(p.factors),
        inclusion,
    }
}

/// `{x : a x = 0}` for `a` from `dom` to `cod`.
pub fn kernel(dom: &[Int], cod: &[Int], a: &Matrix) -> Sub {
    let k = dom.len();
    let ker = integer_kernel(&with_moduli(a, cod));
    subgroup(dom, &ker.row_slice(0, k))
}

/// `(Z/m_1 + ...) / span(gens)`.
pub fn quotient(mods: &[Int], gens: &Matrix) -> Quot {
    let n = mods.len();
    let p = present(n, &with_moduli(gens, mods));
    let mut projection = p.to_canon;
    reduce_rows(&p.factors, &mut projection);
    let mut section = p.from_canon;
    reduce_rows(mods, &mut section);
    Quot {
        group: FgGroup::canonical_unchecked(p.factors),
        projection,
        section,
    }
}

/// Canonical form of a raw cyclic sum, with mutually inverse coordinate maps.
pub fn normalize(mods: &[Int]) -> Quot {
    quotient(mods, &Matrix::zeros(mods.len(), 0))
}

/// Solves `a x = y` in the cyclic sum `cod`.
#[derive(Clone, Debug)]
pub struct Solver {
    unknowns: usize,
    inner: DiophantineSolver,
}

impl Solver {
    pub fn new(a: &Matrix, cod: &[Int]) -> Self {
        Solver {
            unknowns: a.cols(),
            inner: DiophantineSolver::new(&with_moduli(a, cod)),
        }
    }

    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        let mut x = self.inner.solve(y)?;
        x.truncate(self.unknowns);
        Some(x)
    }
}

/// The matrix of a linear map `Z^n -> Z^m` given as a closure, by evaluation
/// on unit vectors.
pub fn matrix_of(n: usize, m: usize, f: impl Fn(&[Int]) -> Vec<Int>) -> Matrix {
    let mut cols = Vec::with_capacity(n);
    let mut e = vec![int(0); n];
    for j in 0..n {
        e[j] = int(1);
        let c = f(&e);
        assert_eq!(c.len(), m);
        cols.push(c);
        e[j] = int(0);
    }
    Matrix::from_columns(m, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn kernel_of_projection() {
        // Z/4 -> Z/2, x -> x
        let s = kernel(&ints(&[4]), &ints(&[2]), &Matrix::from_i64(1, 1, &[1]));
        assert_eq!(s.group.factors(), &ints(&[2])[..]);
        assert_eq!(s.inclusion, Matrix::from_i64(1, 1, &[2]));
    }

    #[test]
    fn normalize_merges_coprime() {
        let q = normalize(&ints(&[2, 3, 1, 0]));
        assert_eq!(q.group.factors(), &ints(&[6, 0])[..]);
        let round = q.projection.mul(&q.section);
        let mut r = round.clone();
        reduce_rows(q.group.factors(), &mut r);
        assert_eq!(r, Matrix::identity(2));
    }

    #[test]
    fn solver_modular() {
        // 2x = 1 mod 3 has x = 2
        let s = Solver::new(&Matrix::from_i64(1, 1, &[2]), &ints(&[3]));
        let x = s.solve(&ints(&[1])).unwrap();
        assert_eq!(reduce(&(int(2) * &x[0]), &int(3)), int(1));
        let s = Solver::new(&Matrix::from_i64(1, 1, &[2]), &ints(&[4]));
        assert!(s.solve(&ints(&[1])).is_none());
    }
}
