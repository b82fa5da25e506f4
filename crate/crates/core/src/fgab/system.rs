use std::sync::OnceLock;

use super::{FgGroup, HomSpace, Homomorphism};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lin::{self, Solver, Sub};

/// The group of tuples `(f_1, ..., f_n)` with `f_k ∈ Hom(S_k, T_k)` on which
/// a linear defect map vanishes, e.g. the commuting squares of a diagram
/// morphism. Solved over the integers, so infinite groups are fine.
#[derive(Debug)]
pub struct HomSystem {
    spaces: Vec<HomSpace>,
    offsets: Vec<usize>,
    raw_mods: Vec<Int>,
    sub: Sub,
    solver: OnceLock<Solver>,
}

fn flatten(maps: &[Homomorphism]) -> (Vec<Int>, Vec<Int>) {
    let mut values = Vec::new();
    let mut mods = Vec::new();
    for m in maps {
        values.extend(m.matrix().data().iter().cloned());
        for e in m.codomain().factors() {
            mods.extend(std::iter::repeat_n(e.clone(), m.domain().ngens()));
        }
    }
    (values, mods)
}

impl HomSystem {
    /// `defect` must be additive in the tuple.
    pub fn new(
        spaces: Vec<HomSpace>,
        defect: impl Fn(&[Homomorphism]) -> Vec<Homomorphism>,
    ) -> Self {
        let mut offsets = vec![0];
        let mut raw_mods = Vec::new();
        for s in &spaces {
            raw_mods.extend(s.raw_moduli().iter().cloned());
            offsets.push(raw_mods.len());
        }
        let split = |x: &[Int]| -> Vec<Homomorphism> {
            spaces
                .iter()
                .enumerate()
                .map(|(k, s)| s.from_raw(&x[offsets[k]..offsets[k + 1]]))
                .collect()
        };
        let zero = vec![crate::int::int(0); raw_mods.len()];
        let (_, target_mods) = flatten(&defect(&split(&zero)));
        let t = lin::matrix_of(raw_mods.len(), target_mods.len(), |x| {
            flatten(&defect(&split(x))).0
        });
        let sub = lin::kernel(&raw_mods, &target_mods, &t);
        HomSystem {
            spaces,
            offsets,
            raw_mods,
            sub,
            solver: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &FgGroup {
        &self.sub.group
    }

    pub fn spaces(&self) -> &[HomSpace] {
        &self.spaces
    }

    fn split(&self, raw: &[Int]) -> Vec<Homomorphism> {
        self.spaces
            .iter()
            .enumerate()
            .map(|(k, s)| s.from_raw(&raw[self.offsets[k]..self.offsets[k + 1]]))
            .collect()
    }

    /// The tuple with canonical coordinates `c`.
    pub fn components(&self, c: &[Int]) -> Vec<Homomorphism> {
        self.split(&self.sub.inclusion.mul_vec(c))
    }

    /// Canonical coordinates of a tuple, or `None` if it is not a solution.
    pub fn coords(&self, maps: &[Homomorphism]) -> Option<Vec<Int>> {
        let raw: Vec<Int> = self
            .spaces
            .iter()
            .zip(maps)
            .flat_map(|(s, m)| s.to_raw(m))
            .collect();
        let solver = self
            .solver
            .get_or_init(|| Solver::new(&self.sub.inclusion, &self.raw_mods));
        solver.solve(&raw).map(|x| self.group().reduced(x))
    }

    pub fn elements(&self) -> Result<impl Iterator<Item = Vec<Homomorphism>> + '_> {
        let it = self
            .group()
            .elements()
            .map_err(|_| Error::InfiniteHomSet(format!("solution group {}", self.group())))?;
        Ok(it.map(move |c| self.components(&c)))
    }
}
