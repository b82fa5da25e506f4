use super::{ExtClass, Extension, Lifter, PreimageChoice};
use crate::error::{Error, Result};
use crate::fgab::{is_exact_at, mod_two, two_torsion, HomSpace, Homomorphism};
use crate::int::{int, Int};
use crate::lin::{self, Solver};
use crate::matrix::Matrix;

/// `Φ(E): U[2] -> V/2`, `u ↦ i^{-1}(2 p^{-1}(u)) + 2V`.
pub fn phi(e: &Extension) -> Result<Homomorphism> {
    phi_with(e, PreimageChoice::Solver)
}

pub fn phi_with(e: &Extension, choice: PreimageChoice) -> Result<Homomorphism> {
    let lifter = Lifter::new(e, choice);
    let tors = two_torsion(e.u());
    let quot = mod_two(e.v());
    let mut cols = Vec::new();
    for k in 0..tors.group.ngens() {
        let u = tors.inclusion.matrix().column(k);
        let v = lifter.connect(&u, &int(2))?;
        cols.push(quot.projection.apply(&v));
    }
    Homomorphism::new(
        &tors.group,
        &quot.group,
        Matrix::from_columns(quot.group.ngens(), &cols),
    )
}

/// `Φ` evaluated directly on a class: the `Z/2` in `U[2]` coming from an even
/// factor `d_j` goes to `c_j mod 2V`.
pub fn phi_of_class(c: &ExtClass) -> Homomorphism {
    let tors = two_torsion(c.u());
    let quot = mod_two(c.v());
    let fin = super::finite_factors(c.u());
    let mut cols = Vec::new();
    for k in 0..tors.group.ngens() {
        let j = (0..c.u().ngens())
            .find(|&j| !crate::int::is_zero(&tors.inclusion.matrix()[(j, k)]))
            .expect("nonzero generator");
        let slot = fin.iter().position(|&f| f == j).expect("finite factor");
        cols.push(quot.projection.apply(&c.cosets()[slot]));
    }
    Homomorphism::unchecked(
        &tors.group,
        &quot.group,
        Matrix::from_columns(quot.group.ngens(), &cols),
    )
}

/// `V[2] -> M[2] -> U[2] -Φ-> V/2 -> M/2 -> U/2`.
#[derive(Clone, Debug)]
pub struct SixTerm {
    pub maps: [Homomorphism; 5],
}

impl SixTerm {
    /// Exactness at each of the four interior groups.
    pub fn joints(&self) -> [bool; 4] {
        let m = &self.maps;
        [
            is_exact_at(&m[0], &m[1]),
            is_exact_at(&m[1], &m[2]),
            is_exact_at(&m[2], &m[3]),
            is_exact_at(&m[3], &m[4]),
        ]
    }

    pub fn is_exact(&self) -> bool {
        self.joints().iter().all(|&b| b)
    }
}

pub fn six_term(e: &Extension) -> Result<SixTerm> {
    Ok(SixTerm {
        maps: [
            e.i().on_two_torsion(),
            e.p().on_two_torsion(),
            phi(e)?,
            e.i().mod_two(),
            e.p().mod_two(),
        ],
    })
}

/// Some `g: M -> M'` with `g i = i' f` and `p' g = h p`, or `None`.
///
/// Solved as one linear congruence system `T(g) = (i' f, h p)` with
/// `T(g) = (g i, p' g)` over the raw coordinates of `Hom(M, M')`.
pub fn middle_fill(
    e: &Extension,
    e2: &Extension,
    f: &Homomorphism,
    h: &Homomorphism,
) -> Result<Option<Homomorphism>> {
    if f.domain() != e.v() || f.codomain() != e2.v() {
        return Err(Error::Mismatch("f must map V to V'".into()));
    }
    if h.domain() != e.u() || h.codomain() != e2.u() {
        return Err(Error::Mismatch("h must map U to U'".into()));
    }
    let space = HomSpace::new(e.m(), e2.m());
    let mut target_mods: Vec<Int> = Vec::new();
    for x in e2.m().factors() {
        target_mods.extend(std::iter::repeat_n(x.clone(), e.v().ngens()));
    }
    for x in e2.u().factors() {
        target_mods.extend(std::iter::repeat_n(x.clone(), e.m().ngens()));
    }
    let flatten = |a: &Homomorphism, b: &Homomorphism| -> Vec<Int> {
        a.matrix()
            .data()
            .iter()
            .chain(b.matrix().data())
            .cloned()
            .collect()
    };
    let t = lin::matrix_of(space.raw_dim(), target_mods.len(), |x| {
        let g = space.from_raw(x);
        flatten(&g.compose(e.i()), &e2.p().compose(&g))
    });
    let y = flatten(&e2.i().compose(f), &h.compose(e.p()));
    Ok(Solver::new(&t, &target_mods)
        .solve(&y)
        .map(|x| space.from_raw(&x)))
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use crate::fgab::FgGroup;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn e1() -> Extension {
        let z2 = g("Z/2");
        let z4 = g("Z/4");
        Extension::new(
            Homomorphism::from_i64(&z2, &z4, &[2]).unwrap(),
            Homomorphism::from_i64(&z4, &z2, &[1]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn phi_of_nonsplit_is_identity() {
        let e = e1();
        assert_eq!(phi(&e).unwrap(), Homomorphism::identity(&g("Z/2")));
        assert_eq!(
            phi_with(&e, PreimageChoice::Shifted).unwrap(),
            phi(&e).unwrap()
        );
        let split = Extension::split(&g("Z/2"), &g("Z/2"));
        assert!(phi(&split).unwrap().is_zero());
        let free = Extension::split(&g("Z"), &g("Z/2"));
        assert!(phi(&free).unwrap().domain().is_trivial());
    }

    #[test]
    fn six_term_examples() {
        let s = six_term(&e1()).unwrap();
        assert!(s.is_exact());
        for m in &s.maps {
            assert_eq!(m.domain(), &g("Z/2"));
        }
        let c = ExtClass::new(&g("Z/4"), &g("Z/2"), vec![vec![int(1)]]).unwrap();
        let e = realize(&c);
        assert_eq!(e.m(), &g("Z/8"));
        let s = six_term(&e).unwrap();
        assert!(s.is_exact());
        for m in &s.maps {
            assert_eq!(m.domain(), &g("Z/2"));
        }
    }

    #[test]
    fn middle_fill_examples() {
        let e = e1();
        let z2 = g("Z/2");
        let id = Homomorphism::identity(&z2);
        let fill = middle_fill(&e, &e, &id, &id).unwrap().unwrap();
        assert_eq!(fill.compose(e.i()), e.i().clone());
        let zero = Homomorphism::zero(&z2, &z2);
        assert!(middle_fill(&e, &e, &id, &zero).unwrap().is_none());
    }

    #[test]
    fn direct_class_formulas_match_constructions() {
        let u = g("Z/2+Z/4");
        let v = g("Z/2+Z/4");
        let eg = ExtGroup::new(&u, &v);
        let f = Homomorphism::from_i64(&v, &g("Z/4"), &[2, 1]).unwrap();
        let h = Homomorphism::from_i64(&g("Z/8"), &u, &[1, 1]).unwrap();
        for c in eg.classes() {
            let e = realize(&c);
            assert_eq!(classify(&e).unwrap(), c);
            assert_eq!(phi(&e).unwrap(), phi_of_class(&c));
            assert_eq!(
                classify(&pushout(&f, &e).unwrap()).unwrap(),
                c.pushforward(&f).unwrap()
            );
            assert_eq!(
                classify(&pullback(&h, &e).unwrap()).unwrap(),
                c.pullback(&h).unwrap()
            );
        }
    }
}
