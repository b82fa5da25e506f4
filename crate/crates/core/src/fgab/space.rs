use super::{odometer, FgGroup, Homomorphism};
use crate::error::{Error, Result};
use crate::int::{exact_div, gcd, int, is_zero, reduce, Int};
use crate::lin::{self, Quot};
use crate::matrix::Matrix;

/// `Hom(U, V)` as a sum of cyclic components, one per matrix entry that can
/// be nonzero, plus its canonical form.
///
/// Raw coordinate `k` scales the generator of entry `(row_k, col_k)`, whose
/// order is `gcd(d_j, e_i)` (or `e_i` from a free source, or Z between free
/// factors; a finite source into a free target contributes nothing).
#[derive(Clone, Debug)]
pub struct HomSpace {
    domain: FgGroup,
    codomain: FgGroup,
    comps: Vec<(usize, usize, Int)>,
    raw_mods: Vec<Int>,
    norm: Quot,
}

impl HomSpace {
    pub fn new(domain: &FgGroup, codomain: &FgGroup) -> Self {
        let mut comps = Vec::new();
        let mut raw_mods = Vec::new();
        for (i, e) in codomain.factors().iter().enumerate() {
            for (j, d) in domain.factors().iter().enumerate() {
                let (order, generator) = match (is_zero(d), is_zero(e)) {
                    (false, false) => {
                        let g = gcd(d, e);
                        let gen = exact_div(e, &g);
                        (g, gen)
                    }
                    (true, false) => (e.clone(), int(1)),
                    (false, true) => continue,
                    (true, true) => (int(0), int(1)),
                };
                if order == int(1) {
                    continue;
                }
                comps.push((i, j, generator));
                raw_mods.push(order);
            }
        }
        let norm = lin::normalize(&raw_mods);
        HomSpace {
            domain: domain.clone(),
            codomain: codomain.clone(),
            comps,
            raw_mods,
            norm,
        }
    }

    pub fn domain(&self) -> &FgGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgGroup {
        &self.codomain
    }

    /// The canonical group `Hom(U, V)`.
    pub fn group(&self) -> &FgGroup {
        &self.norm.group
    }

    pub fn raw_moduli(&self) -> &[Int] {
        &self.raw_mods
    }

    pub fn raw_dim(&self) -> usize {
        self.raw_mods.len()
    }

    pub fn from_raw(&self, x: &[Int]) -> Homomorphism {
        assert_eq!(x.len(), self.raw_dim());
        let mut m = Matrix::zeros(self.codomain.ngens(), self.domain.ngens());
        for ((i, j, gen), c) in self.comps.iter().zip(x) {
            m[(*i, *j)] += c * gen;
        }
        Homomorphism::unchecked(&self.domain, &self.codomain, m)
    }

    pub fn to_raw(&self, f: &Homomorphism) -> Vec<Int> {
        debug_assert_eq!(f.domain(), &self.domain);
        debug_assert_eq!(f.codomain(), &self.codomain);
        self.comps
            .iter()
            .zip(&self.raw_mods)
            .map(|((i, j, gen), m)| reduce(&exact_div(&f.matrix()[(*i, *j)], gen), m))
            .collect()
    }

    pub fn to_canonical(&self, f: &Homomorphism) -> Vec<Int> {
        let v = self.norm.projection.mul_vec(&self.to_raw(f));
        self.group().reduced(v)
    }

    pub fn from_canonical(&self, c: &[Int]) -> Homomorphism {
        self.from_raw(&self.norm.section.mul_vec(c))
    }

    /// Every homomorphism exactly once.
    pub fn elements(&self) -> Result<impl Iterator<Item = Homomorphism> + '_> {
        if !self.group().is_finite() {
            return Err(Error::InfiniteHomSet(format!(
                "Hom({}, {}) = {}",
                self.domain,
                self.codomain,
                self.group()
            )));
        }
        Ok(odometer(self.raw_mods.clone()).map(move |x| self.from_raw(&x)))
    }
}

/// A canonical direct sum of several groups with its injections and
/// projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgGroup,
    summands: Vec<FgGroup>,
    offsets: Vec<usize>,
    norm: Quot,
}

impl DirectSum {
    pub fn new(summands: &[FgGroup]) -> Self {
        let mut raw = Vec::new();
        let mut offsets = Vec::with_capacity(summands.len() + 1);
        for s in summands {
            offsets.push(raw.len());
            raw.extend(s.factors().iter().cloned());
        }
        offsets.push(raw.len());
        let norm = lin::normalize(&raw);
        DirectSum {
            group: norm.group.clone(),
            summands: summands.to_vec(),
            offsets,
            norm,
        }
    }

    pub fn summands(&self) -> &[FgGroup] {
        &self.summands
    }

    pub fn injection(&self, k: usize) -> Homomorphism {
        let m = self
            .norm
            .projection
            .col_slice(self.offsets[k], self.offsets[k + 1]);
        Homomorphism::unchecked(&self.summands[k], &self.group, m)
    }

    pub fn projection(&self, k: usize) -> Homomorphism {
        let m = self
            .norm
            .section
            .row_slice(self.offsets[k], self.offsets[k + 1]);
        Homomorphism::unchecked(&self.group, &self.summands[k], m)
    }

    pub fn pack(&self, parts: &[Vec<Int>]) -> Vec<Int> {
        assert_eq!(parts.len(), self.summands.len());
        let raw: Vec<Int> = parts.iter().flatten().cloned().collect();
        self.group.reduced(self.norm.projection.mul_vec(&raw))
    }

    pub fn unpack(&self, x: &[Int]) -> Vec<Vec<Int>> {
        (0..self.summands.len())
            .map(|k| self.projection(k).apply(x))
            .collect()
    }

    /// The map `⊕ S_k -> T` whose restriction to summand `k` is `maps[k]`.
    pub fn copair(&self, maps: &[Homomorphism]) -> Homomorphism {
        assert_eq!(maps.len(), self.summands.len());
        let target = maps[0].codomain().clone();
        let mut total = Homomorphism::zero(&self.group, &target);
        for (k, f) in maps.iter().enumerate() {
            total = total.add(&f.compose(&self.projection(k)));
        }
        total
    }

    /// The map `S -> ⊕ T_k` with components `maps[k]`.
    pub fn pair(&self, maps: &[Homomorphism]) -> Homomorphism {
        assert_eq!(maps.len(), self.summands.len());
        let source = maps[0].domain().clone();
        let mut total = Homomorphism::zero(&source, &self.group);
        for (k, f) in maps.iter().enumerate() {
            total = total.add(&self.injection(k).compose(f));
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn hom_groups() {
        assert_eq!(HomSpace::new(&g("Z/4"), &g("Z/6")).group(), &g("Z/2"));
        assert_eq!(HomSpace::new(&g("Z"), &g("Z/2+Z")).group(), &g("Z/2+Z"));
        assert!(HomSpace::new(&g("Z/2"), &g("Z")).group().is_trivial());
        assert_eq!(
            HomSpace::new(&g("Z/2+Z/4"), &g("Z/4")).group(),
            &g("Z/2+Z/4")
        );
    }

    #[test]
    fn indexer_round_trip() {
        let h = HomSpace::new(&g("Z/2+Z/4"), &g("Z/4+Z"));
        assert_eq!(h.group(), &g("Z/2+Z/4"));
        let all: Vec<_> = h.elements().unwrap().collect();
        assert_eq!(all.len(), 8);
        for f in &all {
            let c = h.to_canonical(f);
            assert_eq!(&h.from_canonical(&c), f);
        }
        let a = &all[3];
        let b = &all[6];
        let sum: Vec<Int> = h
            .to_canonical(a)
            .iter()
            .zip(h.to_canonical(b))
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(h.from_canonical(&h.group().reduced(sum)), a.add(b));
    }

    #[test]
    fn direct_sum_maps() {
        let s = DirectSum::new(&[g("Z/2"), g("Z/3")]);
        assert_eq!(s.group, g("Z/6"));
        for k in 0..2 {
            let id = s.projection(k).compose(&s.injection(k));
            assert_eq!(id, Homomorphism::identity(&s.summands()[k]));
        }
        let x = s.pack(&[vec![int(1)], vec![int(2)]]);
        assert_eq!(s.unpack(&x), vec![vec![int(1)], vec![int(2)]]);
    }
}
