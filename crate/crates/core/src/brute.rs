//! Exhaustive oracles over finite groups in plain `i64` arithmetic. Nothing
//! here uses Smith normal form; maps are enumerated entry by entry and
//! checked elementwise.

use std::collections::BTreeMap;

use crate::diagrams::{ExtEtaDiagram, MooreDiagram};
use crate::fgab::{FgGroup, Homomorphism};
use crate::int::to_i64;

/// Rows index codomain factors, columns domain factors.
pub type Mat = Vec<Vec<i64>>;

pub fn factors(g: &FgGroup) -> Vec<i64> {
    g.factors()
        .iter()
        .map(|d| match to_i64(d) {
            Some(d) if d > 0 => d,
            _ => panic!("the oracle only handles finite groups of small order"),
        })
        .collect()
}

pub fn matrix(f: &Homomorphism) -> Mat {
    let m = f.matrix();
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| to_i64(&m[(i, j)]).expect("small entry"))
                .collect()
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Number of well-defined matrices, `Π gcd(d_j, e_i)`.
pub fn hom_count(dom: &[i64], cod: &[i64]) -> u128 {
    let mut n = 1u128;
    for e in cod {
        for d in dom {
            n *= gcd(*d, *e) as u128;
        }
    }
    n
}

/// Every well-defined matrix `dom -> cod`, found by trying each entry in
/// `[0, e_i)` against `d_j x ≡ 0 (mod e_i)`.
pub fn hom_matrices(dom: &[i64], cod: &[i64]) -> Vec<Mat> {
    let choices: Vec<Vec<i64>> = cod
        .iter()
        .flat_map(|&e| {
            dom.iter()
                .map(move |&d| (0..e).filter(|x| (d * x) % e == 0).collect())
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let flat: Vec<i64> = idx.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
        out.push(if dom.is_empty() {
            vec![Vec::new(); cod.len()]
        } else {
            flat.chunks(dom.len()).map(|r| r.to_vec()).collect()
        });
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `a ∘ b`, reduced modulo the codomain of `a`.
pub fn compose(a: &Mat, b: &Mat, cod: &[i64]) -> Mat {
    let cols = b.first().map_or(0, |r| r.len());
    (0..cod.len())
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let s: i64 = (0..b.len()).map(|k| a[i][k] * b[k][j]).sum();
                    s.rem_euclid(cod[i])
                })
                .collect()
        })
        .collect()
}

/// Entrywise equality modulo the codomain orders. Missing rows or columns
/// count as zero, since a matrix with no rows or no columns loses its shape.
fn eq(a: &Mat, b: &Mat, cod: &[i64]) -> bool {
    let at = |m: &Mat, i: usize, j: usize| m.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0);
    let cols = a.iter().chain(b).map(|r| r.len()).max().unwrap_or(0);
    cod.iter()
        .enumerate()
        .all(|(i, e)| (0..cols).all(|j| (at(a, i, j) - at(b, i, j)).rem_euclid(*e) == 0))
}

pub fn elements(g: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &d in g {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn apply(m: &Mat, x: &[i64], cod: &[i64]) -> Vec<i64> {
    m.iter()
        .zip(cod)
        .map(|(r, e)| {
            r.iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum::<i64>()
                .rem_euclid(*e)
        })
        .collect()
}

/// Element order counts, which determine a finite abelian group.
pub fn order_statistics(g: &[i64]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for x in elements(g) {
        let ord = x
            .iter()
            .zip(g)
            .map(|(a, d)| d / gcd(*a, *d))
            .fold(1, |l, o| l / gcd(l, o) * o);
        *out.entry(ord).or_insert(0) += 1;
    }
    out
}

/// `(|ker f|, |im f|)` by evaluating `f` on every element.
pub fn kernel_image_sizes(dom: &[i64], cod: &[i64], m: &Mat) -> (usize, usize) {
    let mut image = std::collections::BTreeSet::new();
    let mut ker = 0;
    for x in elements(dom) {
        let y = apply(m, &x, cod);
        if y.iter().all(|v| *v == 0) {
            ker += 1;
        }
        image.insert(y);
    }
    (ker, image.len())
}

/// The number of morphisms `N -> N'`; `None` if the raw search space
/// exceeds `limit`.
pub fn count_eed_morphisms(n: &ExtEtaDiagram, n2: &ExtEtaDiagram, limit: u128) -> Option<u64> {
    let (a, b, c) = (factors(n.a()), factors(n.b()), factors(n.c()));
    let (a2, b2, c2) = (factors(n2.a()), factors(n2.b()), factors(n2.c()));
    let fh = hom_count(&a, &a2) * hom_count(&c, &c2);
    if fh.saturating_mul(hom_count(&b, &b2)) > limit {
        return None;
    }
    let (psi, eta, chi) = (matrix(n.psi()), matrix(n.eta()), matrix(n.chi()));
    let (psi2, eta2, chi2) = (matrix(n2.psi()), matrix(n2.eta()), matrix(n2.chi()));
    let gs = hom_matrices(&b, &b2);
    let mut count = 0u64;
    for f in hom_matrices(&a, &a2) {
        for h in hom_matrices(&c, &c2) {
            if !eq(&compose(&h, &eta, &c2), &compose(&eta2, &f, &c2), &c2) {
                continue;
            }
            let chi2h = compose(&chi2, &h, &b2);
            for g in &gs {
                if eq(&compose(g, &chi, &b2), &chi2h, &b2)
                    && eq(&compose(&f, &psi, &a2), &compose(&psi2, g, &a2), &a2)
                {
                    count += 1;
                }
            }
        }
    }
    Some(count)
}

/// The number of η-diagram morphisms `(f, h)` with `hη = η'f`.
pub fn count_eta_morphisms(eta: &Homomorphism, eta2: &Homomorphism) -> u64 {
    let (a, c) = (factors(eta.domain()), factors(eta.codomain()));
    let (a2, c2) = (factors(eta2.domain()), factors(eta2.codomain()));
    let (e, e2) = (matrix(eta), matrix(eta2));
    let hs = hom_matrices(&c, &c2);
    let mut count = 0;
    for f in hom_matrices(&a, &a2) {
        let rhs = compose(&e2, &f, &c2);
        count += hs
            .iter()
            .filter(|h| eq(&compose(h, &e, &c2), &rhs, &c2))
            .count() as u64;
    }
    count
}

pub fn count_moore_morphisms(m: &MooreDiagram, m2: &MooreDiagram) -> u64 {
    let (a, b) = (factors(m.a()), factors(m.b()));
    let (a2, b2) = (factors(m2.a()), factors(m2.b()));
    let (phi, psi) = (matrix(m.phi()), matrix(m.psi()));
    let (phi2, psi2) = (matrix(m2.phi()), matrix(m2.psi()));
    let gs = hom_matrices(&b, &b2);
    let mut count = 0;
    for f in hom_matrices(&a, &a2) {
        let phi2f = compose(&phi2, &f, &b2);
        let fpsi = compose(&f, &psi, &a2);
        count += gs
            .iter()
            .filter(|g| {
                eq(&compose(g, &phi, &b2), &phi2f, &b2) && eq(&fpsi, &compose(&psi2, g, &a2), &a2)
            })
            .count() as u64;
    }
    count
}

/// Whether some `g: M -> M'` has `g i = i' f` and `p' g = h p`.
pub fn fill_exists(
    (i, p): (&Homomorphism, &Homomorphism),
    (i2, p2): (&Homomorphism, &Homomorphism),
    f: &Homomorphism,
    h: &Homomorphism,
) -> bool {
    let (m, m2) = (factors(i.codomain()), factors(i2.codomain()));
    let u2 = factors(p2.codomain());
    let lhs_i = compose(&matrix(i2), &matrix(f), &m2);
    let rhs_p = compose(&matrix(h), &matrix(p), &u2);
    let (mi, mp2) = (matrix(i), matrix(p2));
    hom_matrices(&m, &m2)
        .iter()
        .any(|g| eq(&compose(g, &mi, &m2), &lhs_i, &m2) && eq(&compose(&mp2, g, &u2), &rhs_p, &u2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::groups_up_to;
    use crate::fgab::HomSpace;

    #[test]
    fn hom_counts_match_matrix_search() {
        assert_eq!(hom_matrices(&[4], &[6]).len(), 2);
        assert_eq!(hom_matrices(&[], &[6]), vec![vec![Vec::<i64>::new()]]);
        assert_eq!(hom_matrices(&[2, 4], &[]).len(), 1);
        let gs = groups_up_to(8);
        for u in &gs {
            for v in &gs {
                let (du, dv) = (factors(u), factors(v));
                let n = hom_matrices(&du, &dv).len() as u128;
                assert_eq!(n, hom_count(&du, &dv));
                assert_eq!(
                    HomSpace::new(u, v).group().order().unwrap(),
                    crate::Int::from(n)
                );
            }
        }
    }

    #[test]
    fn zero_matrices_compare_across_lost_shapes() {
        let through_trivial = compose(&vec![vec![]], &vec![], &[2]);
        assert!(eq(&through_trivial, &vec![vec![0, 0]], &[2]));
        assert!(!eq(&through_trivial, &vec![vec![0, 1]], &[2]));
    }

    #[test]
    fn order_statistics_separate_groups() {
        let gs = crate::enumerate::groups_of_order(16);
        let stats: std::collections::BTreeSet<_> =
            gs.iter().map(|g| order_statistics(&factors(g))).collect();
        assert_eq!(stats.len(), gs.len());
    }
}
