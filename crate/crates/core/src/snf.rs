//! Smith normal form over the integers and the linear algebra built on it:
//! integer kernels, cokernel presentations and linear Diophantine solving.
//!
//! The reduction runs first in checked 128-bit arithmetic and restarts in
//! arbitrary precision if any intermediate value overflows, so results are
//! always exact and identical whichever path produced them.

use crate::int::{int, is_one, is_zero, Int};
use crate::matrix::Matrix;

/// Result of `L * A * R = D`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero diagonal entries `d_0 | d_1 | ... | d_{rank-1}`, all positive.
    pub diag: Vec<Int>,
    pub rows: usize,
    pub cols: usize,
    pub left: Option<Matrix>,
    pub left_inv: Option<Matrix>,
    pub right: Option<Matrix>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The full `rows x cols` diagonal matrix `D`.
    pub fn diagonal_matrix(&self) -> Matrix {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Which transforms to accumulate alongside `D`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
}

impl Track {
    pub const ALL: Track = Track {
        left: true,
        left_inv: true,
        right: true,
    };
    pub const NONE: Track = Track {
        left: false,
        left_inv: false,
        right: false,
    };
}

/// Smith normal form with all three transforms.
pub fn snf(a: &Matrix) -> Snf {
    snf_tracked(a, Track::ALL)
}

pub fn snf_tracked(a: &Matrix, track: Track) -> Snf {
    let small: Option<Vec<i128>> = a
        .data()
        .iter()
        .map(|x| i64::try_from(x).ok().map(i128::from))
        .collect();
    if let Some(entries) = small {
        if let Some(w) = Work::new(a.rows(), a.cols(), entries, track).run() {
            return w.finish(Int::from);
        }
    }
    Work::new(a.rows(), a.cols(), a.data().to_vec(), track)
        .run()
        .expect("arbitrary precision reduction cannot overflow")
        .finish(|x| x)
}

trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Euclidean quotient.
    fn quot(&self, d: &Self) -> Self;
    /// `self | x` for nonzero `self`.
    fn divides(&self, x: &Self) -> bool;
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn sub(&self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self.div_euclid(*d)
    }
    fn divides(&self, x: &Self) -> bool {
        x.rem_euclid(*self) == 0
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn sub(&self, b: &Self) -> Option<Self> {
        self.checked_sub(*b)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Scalar for Int {
    fn zero() -> Self {
        int(0)
    }
    fn one() -> Self {
        int(1)
    }
    fn is_zero(&self) -> bool {
        is_zero(self)
    }
    fn is_negative(&self) -> bool {
        *self < int(0)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        use ibig::ops::UnsignedAbs;
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Self {
        use ibig::ops::DivEuclid;
        self.div_euclid(d)
    }
    fn divides(&self, x: &Self) -> bool {
        use ibig::ops::RemEuclid;
        is_zero(&x.rem_euclid(self))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn sub(&self, b: &Self) -> Option<Self> {
        Some(self - b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

struct Work<T> {
    m: usize,
    n: usize,
    a: Vec<T>,
    l: Option<Vec<T>>,
    linv: Option<Vec<T>>,
    r: Option<Vec<T>>,
    rank: usize,
}

fn identity<T: Scalar>(n: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    v
}

impl<T: Scalar> Work<T> {
    fn new(m: usize, n: usize, a: Vec<T>, track: Track) -> Self {
        Work {
            m,
            n,
            a,
            l: track.left.then(|| identity(m)),
            linv: track.left_inv.then(|| identity(m)),
            r: track.right.then(|| identity(n)),
            rank: 0,
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.n + j]
    }

    // row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        let n = self.n;
        for j in 0..n {
            if !self.a[t * n + j].is_zero() {
                self.a[i * n + j] = self.a[i * n + j].sub_mul(q, &self.a[t * n + j])?;
            }
        }
        let m = self.m;
        if let Some(l) = &mut self.l {
            for j in 0..m {
                if !l[t * m + j].is_zero() {
                    l[i * m + j] = l[i * m + j].sub_mul(q, &l[t * m + j])?;
                }
            }
        }
        if let Some(li) = &mut self.linv {
            // inverse update: col_t += q * col_i
            for k in 0..m {
                if !li[k * m + i].is_zero() {
                    let neg_q = q.neg()?;
                    li[k * m + t] = li[k * m + t].sub_mul(&neg_q, &li[k * m + i])?;
                }
            }
        }
        Some(())
    }

    // row_t += row_i
    fn row_add(&mut self, t: usize, i: usize) -> Option<()> {
        let n = self.n;
        for j in 0..n {
            self.a[t * n + j] = self.a[t * n + j].add(&self.a[i * n + j])?;
        }
        let m = self.m;
        if let Some(l) = &mut self.l {
            for j in 0..m {
                l[t * m + j] = l[t * m + j].add(&l[i * m + j])?;
            }
        }
        if let Some(li) = &mut self.linv {
            // inverse update: col_i -= col_t
            for k in 0..m {
                li[k * m + i] = li[k * m + i].sub(&li[k * m + t])?;
            }
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        let n = self.n;
        for j in 0..n {
            self.a.swap(i * n + j, t * n + j);
        }
        let m = self.m;
        if let Some(l) = &mut self.l {
            for j in 0..m {
                l.swap(i * m + j, t * m + j);
            }
        }
        if let Some(li) = &mut self.linv {
            for k in 0..m {
                li.swap(k * m + i, k * m + t);
            }
        }
    }

    fn row_neg(&mut self, t: usize) -> Option<()> {
        let n = self.n;
        for j in 0..n {
            self.a[t * n + j] = self.a[t * n + j].neg()?;
        }
        let m = self.m;
        if let Some(l) = &mut self.l {
            for j in 0..m {
                l[t * m + j] = l[t * m + j].neg()?;
            }
        }
        if let Some(li) = &mut self.linv {
            for k in 0..m {
                li[k * m + t] = li[k * m + t].neg()?;
            }
        }
        Some(())
    }

    // col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        let n = self.n;
        for i in 0..self.m {
            if !self.a[i * n + t].is_zero() {
                self.a[i * n + j] = self.a[i * n + j].sub_mul(q, &self.a[i * n + t])?;
            }
        }
        if let Some(r) = &mut self.r {
            for i in 0..n {
                if !r[i * n + t].is_zero() {
                    r[i * n + j] = r[i * n + j].sub_mul(q, &r[i * n + t])?;
                }
            }
        }
        Some(())
    }

    fn col_swap(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        let n = self.n;
        for i in 0..self.m {
            self.a.swap(i * n + j, i * n + t);
        }
        if let Some(r) = &mut self.r {
            for i in 0..n {
                r.swap(i * n + j, i * n + t);
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.abs_lt(self.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<Self> {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let p = self.at(t, t).clone();
                for i in t + 1..self.m {
                    if !self.at(i, t).is_zero() {
                        let q = self.at(i, t).quot(&p);
                        self.row_sub(i, t, &q)?;
                    }
                }
                for j in t + 1..self.n {
                    if !self.at(t, j).is_zero() {
                        let q = self.at(t, j).quot(&p);
                        self.col_sub(j, t, &q)?;
                    }
                }
                // Smallest leftover in the pivot row/column becomes the new pivot.
                let mut smaller: Option<(bool, usize)> = None;
                for i in t + 1..self.m {
                    let x = self.at(i, t);
                    if !x.is_zero() {
                        let better = match smaller {
                            None => true,
                            Some((true, k)) => x.abs_lt(self.at(k, t)),
                            Some((false, k)) => x.abs_lt(self.at(t, k)),
                        };
                        if better {
                            smaller = Some((true, i));
                        }
                    }
                }
                for j in t + 1..self.n {
                    let x = self.at(t, j);
                    if !x.is_zero() {
                        let better = match smaller {
                            None => true,
                            Some((true, k)) => x.abs_lt(self.at(k, t)),
                            Some((false, k)) => x.abs_lt(self.at(t, k)),
                        };
                        if better {
                            smaller = Some((false, j));
                        }
                    }
                }
                match smaller {
                    Some((true, i)) => {
                        self.row_swap(t, i);
                        continue;
                    }
                    Some((false, j)) => {
                        self.col_swap(t, j);
                        continue;
                    }
                    None => {}
                }
                let p = self.at(t, t).clone();
                let mut offender = None;
                'scan: for i in t + 1..self.m {
                    for j in t + 1..self.n {
                        if !p.divides(self.at(i, j)) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.row_add(t, i)?,
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.row_neg(t)?;
            }
            t += 1;
        }
        self.rank = t;
        Some(self)
    }

    fn finish(self, conv: impl Fn(T) -> Int) -> Snf {
        let n = self.n;
        let m = self.m;
        let diag = (0..self.rank)
            .map(|i| conv(self.a[i * n + i].clone()))
            .collect();
        let to_matrix = |v: Vec<T>, r: usize, c: usize| {
            Matrix::from_rows(
                v.chunks(c.max(1))
                    .take(r)
                    .map(|row| row.iter().cloned().map(&conv).collect())
                    .collect(),
                c,
            )
        };
        Snf {
            diag,
            rows: m,
            cols: n,
            left: self.l.map(|v| to_matrix(v, m, m)),
            left_inv: self.linv.map(|v| to_matrix(v, m, m)),
            right: self.r.map(|v| to_matrix(v, n, n)),
        }
    }
}

/// A basis (as columns) of the integer kernel `{x in Z^n : A x = 0}`.
pub fn integer_kernel(a: &Matrix) -> Matrix {
    let s = snf_tracked(
        a,
        Track {
            right: true,
            ..Track::NONE
        },
    );
    let rank = s.rank();
    s.right.expect("tracked").col_slice(rank, a.cols())
}

/// The abelian group `Z^n / (column span of relations)` brought into
/// invariant-factor form, with mutually inverse coordinate changes.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Canonical invariant factors of the quotient.
    pub factors: Vec<Int>,
    /// `k x n`: generator coordinates to canonical coordinates (unreduced).
    pub to_canon: Matrix,
    /// `n x k`: canonical coordinates to a generator-coordinate representative.
    pub from_canon: Matrix,
}

pub fn present(num_gens: usize, relations: &Matrix) -> Presentation {
    assert_eq!(relations.rows(), num_gens);
    let s = snf_tracked(
        relations,
        Track {
            left: true,
            left_inv: true,
            right: false,
        },
    );
    let l = s.left.expect("tracked");
    let linv = s.left_inv.expect("tracked");
    let mut keep = Vec::new();
    let mut factors = Vec::new();
    for i in 0..num_gens {
        let d = s.diag.get(i).cloned().unwrap_or_else(|| int(0));
        if !is_one(&d) {
            keep.push(i);
            factors.push(d);
        }
    }
    Presentation {
        factors,
        to_canon: l.select_rows(&keep),
        from_canon: linv.select_columns(&keep),
    }
}

/// Solves `A x = b` over the integers for many right-hand sides.
#[derive(Clone, Debug)]
pub struct DiophantineSolver {
    cols: usize,
    diag: Vec<Int>,
    left: Matrix,
    right: Matrix,
}

impl DiophantineSolver {
    pub fn new(a: &Matrix) -> Self {
        let s = snf_tracked(
            a,
            Track {
                left: true,
                left_inv: false,
                right: true,
            },
        );
        DiophantineSolver {
            cols: a.cols(),
            diag: s.diag,
            left: s.left.expect("tracked"),
            right: s.right.expect("tracked"),
        }
    }

    /// Some integer solution, or `None` if there is none.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let lb = self.left.mul_vec(b);
        let mut w = vec![int(0); self.cols];
        for (i, y) in lb.iter().enumerate() {
            if i < self.diag.len() {
                let d = &self.diag[i];
                if !crate::int::divides(d, y) {
                    return None;
                }
                w[i] = y / d;
            } else if !is_zero(y) {
                return None;
            }
        }
        Some(self.right.mul_vec(&w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix) -> Snf {
        let s = snf(a);
        let l = s.left.clone().unwrap();
        let r = s.right.clone().unwrap();
        assert_eq!(l.mul(a).mul(&r), s.diagonal_matrix());
        assert_eq!(
            l.mul(s.left_inv.as_ref().unwrap()),
            Matrix::identity(a.rows())
        );
        for w in s.diag.windows(2) {
            assert!(crate::int::divides(&w[0], &w[1]));
        }
        s
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&Matrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.diag, vec![int(2), int(4)]);
    }

    #[test]
    fn empty_and_identity() {
        let s = check(&Matrix::zeros(0, 0));
        assert!(s.diag.is_empty());
        let s = check(&Matrix::identity(3));
        assert_eq!(s.diag, vec![int(1); 3]);
        assert_eq!(s.left.unwrap(), Matrix::identity(3));
        assert_eq!(s.right.unwrap(), Matrix::identity(3));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let s = check(&Matrix::from_i64(2, 3, &[2, 4, 6, 1, 2, 3]));
        assert_eq!(s.diag, vec![int(1)]);
        let s = check(&Matrix::from_i64(3, 1, &[0, 6, 4]));
        assert_eq!(s.diag, vec![int(2)]);
    }

    #[test]
    fn overflow_falls_back_to_bignum() {
        let big = i64::MAX;
        let a = Matrix::from_i64(2, 2, &[big, big - 1, big - 2, big - 7]);
        check(&a);
        let huge = Int::from(big) * Int::from(big);
        let mut m = Matrix::zeros(2, 2);
        m[(0, 0)] = huge.clone();
        m[(1, 1)] = huge + int(1);
        let s = check(&m);
        assert_eq!(s.diag[0], int(1));
    }

    #[test]
    fn kernel_and_presentation() {
        let a = Matrix::from_i64(1, 2, &[2, 4]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        // Z^2 / <(2,0), (0,4)> is Z/2 + Z/4
        let p = present(2, &Matrix::from_i64(2, 2, &[2, 0, 0, 4]));
        assert_eq!(p.factors, vec![int(2), int(4)]);
        // Z^2 / <(2,3)> is Z
        let p = present(2, &Matrix::from_i64(2, 1, &[2, 3]));
        assert_eq!(p.factors, vec![int(0)]);
    }

    #[test]
    fn diophantine() {
        let a = Matrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = DiophantineSolver::new(&a);
        assert_eq!(s.solve(&[int(4), int(9)]), Some(vec![int(2), int(3)]));
        assert_eq!(s.solve(&[int(1), int(0)]), None);
    }
}
