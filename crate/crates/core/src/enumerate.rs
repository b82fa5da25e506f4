//! Small-instance corpora: every finite abelian group up to a given order,
//! and seeded sampling over them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{construct_eeed_over, EtaDiagram, ExtEtaDiagram};
use crate::fgab::{FgGroup, HomSpace, Homomorphism};
use crate::int::{int, Int};

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `n` into parts of size at most `max`, largest first.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One group per isomorphism class of order `n`, from partitions of each
/// prime exponent.
pub fn groups_of_order(n: u64) -> Vec<FgGroup> {
    assert!(n >= 1);
    let mut combos: Vec<Vec<Int>> = vec![vec![]];
    for (p, k) in factorize(n) {
        let mut next = Vec::new();
        for c in &combos {
            for part in partitions(k, k) {
                let mut c = c.clone();
                c.extend(part.iter().map(|&e| int(p.pow(e) as i64)));
                next.push(c);
            }
        }
        combos = next;
    }
    let mut groups: Vec<FgGroup> = combos.iter().map(|c| FgGroup::from_orders(c)).collect();
    groups.sort_by(|a, b| a.factors().cmp(b.factors()));
    groups
}

/// Every finite abelian group of order at most `max`, by order.
pub fn groups_up_to(max: u64) -> Vec<FgGroup> {
    (1..=max).flat_map(groups_of_order).collect()
}

/// Every `η: A -> C` with `2η = 0`.
pub fn eta_maps(a: &FgGroup, c: &FgGroup) -> Vec<Homomorphism> {
    let space = HomSpace::new(a, c);
    space
        .elements()
        .expect("finite groups")
        .filter(|f| f.scale(&int(2)).is_zero())
        .collect()
}

/// One exact diagram over each `A -η-> C` with `|A|, |C| <= max`.
pub fn exact_eeds(max: u64) -> Vec<ExtEtaDiagram> {
    let groups = groups_up_to(max);
    let mut out = Vec::new();
    for a in &groups {
        for c in &groups {
            for eta in eta_maps(a, c) {
                out.push(construct_eeed_over(
                    &EtaDiagram::new(eta).expect("2eta = 0"),
                ));
            }
        }
    }
    out
}

/// Deterministic sampling for the verification suites.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// `k` distinct indices below `n`, in increasing order; all of them if
    /// `k >= n`.
    pub fn indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut v = rand::seq::index::sample(&mut self.rng, n, k.min(n)).into_vec();
        v.sort_unstable();
        v
    }

    /// A uniform element of a finite group; free coordinates in `[-3, 3]`.
    pub fn element(&mut self, g: &FgGroup) -> Vec<Int> {
        g.factors()
            .iter()
            .map(|d| match crate::int::to_i64(d) {
                Some(0) => int(self.rng.gen_range(-3..=3)),
                Some(d) => int(self.rng.gen_range(0..d)),
                None => unreachable!("factor too large to sample"),
            })
            .collect()
    }

    pub fn hom(&mut self, u: &FgGroup, v: &FgGroup) -> Homomorphism {
        let space = HomSpace::new(u, v);
        let c = self.element(space.group());
        space.from_canonical(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| groups_of_order(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(groups_of_order(72).len(), 6);
        assert_eq!(groups_up_to(8).len(), 11);
    }

    #[test]
    fn sampling_is_reproducible() {
        let g: FgGroup = "Z/4+Z/12".parse().unwrap();
        let a: Vec<_> = (0..5).map(|_| Sampler::new(7).element(&g)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut s = Sampler::new(7);
        assert_eq!(s.indices(10, 3).len(), 3);
        assert_eq!(s.indices(2, 3), vec![0, 1]);
    }

    #[test]
    fn exact_corpus() {
        let all = exact_eeds(4);
        assert!(all.iter().all(|n| n.is_exact()));
        assert!(all.len() > 20);
    }
}
