//! Extensions `V -> M -> U`, their classes in `Ext(U, V)`, and the
//! operations on them.

mod phi;

pub use phi::{middle_fill, phi, phi_of_class, phi_with, six_term, SixTerm};

use std::fmt;

use crate::error::{Error, Result};
use crate::fgab::{is_exact_at, DirectSum, FgGroup, Homomorphism};
use crate::int::{gcd, int, is_zero, Int};
use crate::lin::{self, Quot};
use crate::matrix::Matrix;
use crate::snf::present;

/// Modulus of coordinate `i` of the coset for a finite factor `d` of U.
fn coset_modulus(d: &Int, e: &Int) -> Int {
    gcd(d, e)
}

/// Indices of the finite invariant factors of `u`.
fn finite_factors(u: &FgGroup) -> Vec<usize> {
    (0..u.ngens())
        .filter(|&j| !is_zero(&u.factors()[j]))
        .collect()
}

/// A class in `Ext(U, V) = ⊕_j V / d_j V`, one coset per finite factor of U.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtClass {
    u: FgGroup,
    v: FgGroup,
    cosets: Vec<Vec<Int>>,
}

impl ExtClass {
    pub fn new(u: &FgGroup, v: &FgGroup, cosets: Vec<Vec<Int>>) -> Result<Self> {
        let fin = finite_factors(u);
        if cosets.len() != fin.len() || cosets.iter().any(|c| c.len() != v.ngens()) {
            return Err(Error::DimensionMismatch(format!(
                "class of Ext({u}, {v}) needs {} cosets of length {}",
                fin.len(),
                v.ngens()
            )));
        }
        Ok(Self::reduced(u, v, cosets))
    }

    fn reduced(u: &FgGroup, v: &FgGroup, mut cosets: Vec<Vec<Int>>) -> Self {
        for (c, &j) in cosets.iter_mut().zip(&finite_factors(u)) {
            let d = &u.factors()[j];
            for (x, e) in c.iter_mut().zip(v.factors()) {
                *x = crate::int::reduce(x, &coset_modulus(d, e));
            }
        }
        ExtClass {
            u: u.clone(),
            v: v.clone(),
            cosets,
        }
    }

    pub fn zero(u: &FgGroup, v: &FgGroup) -> Self {
        let n = finite_factors(u).len();
        ExtClass {
            u: u.clone(),
            v: v.clone(),
            cosets: vec![v.zero_vec(); n],
        }
    }

    pub fn u(&self) -> &FgGroup {
        &self.u
    }

    pub fn v(&self) -> &FgGroup {
        &self.v
    }

    pub fn cosets(&self) -> &[Vec<Int>] {
        &self.cosets
    }

    pub fn is_zero(&self) -> bool {
        self.cosets.iter().flatten().all(is_zero)
    }

    fn same_groups(&self, other: &ExtClass) -> Result<()> {
        if self.u != other.u || self.v != other.v {
            return Err(Error::Mismatch(format!(
                "Ext({}, {}) vs Ext({}, {})",
                self.u, self.v, other.u, other.v
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ExtClass) -> Result<ExtClass> {
        self.same_groups(other)?;
        let sum = self
            .cosets
            .iter()
            .zip(&other.cosets)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self::reduced(&self.u, &self.v, sum))
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, k: &Int) -> ExtClass {
        let c = self
            .cosets
            .iter()
            .map(|a| a.iter().map(|x| x * k).collect())
            .collect();
        Self::reduced(&self.u, &self.v, c)
    }

    pub fn neg(&self) -> ExtClass {
        self.scale(&int(-1))
    }

    /// `f_*`: push the class forward along `f: V -> V'`.
    pub fn pushforward(&self, f: &Homomorphism) -> Result<ExtClass> {
        if f.domain() != &self.v {
            return Err(Error::Mismatch(format!(
                "pushforward along a map out of {}",
                f.domain()
            )));
        }
        let c = self.cosets.iter().map(|x| f.apply(x)).collect();
        Ok(Self::reduced(&self.u, f.codomain(), c))
    }

    /// `h^*`: pull the class back along `h: U' -> U`.
    ///
    /// For a finite factor `d'_l` of U', the coset is
    /// `sum_j (d'_l H_jl / d_j) c_j`.
    pub fn pullback(&self, h: &Homomorphism) -> Result<ExtClass> {
        if h.codomain() != &self.u {
            return Err(Error::Mismatch(format!(
                "pullback along a map into {}",
                h.codomain()
            )));
        }
        let u2 = h.domain();
        let fin = finite_factors(&self.u);
        let mut out = Vec::new();
        for l in finite_factors(u2) {
            let dl = &u2.factors()[l];
            let mut acc = self.v.zero_vec();
            for (c, &j) in self.cosets.iter().zip(&fin) {
                let k = dl * &h.matrix()[(j, l)] / &self.u.factors()[j];
                for (a, x) in acc.iter_mut().zip(c) {
                    *a += &k * x;
                }
            }
            out.push(acc);
        }
        Ok(Self::reduced(u2, &self.v, out))
    }
}

impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.cosets.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Matrix::from_rows(vec![c.clone()], c.len()))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Ext({}, {})", self.u, self.v)
    }
}

/// `Ext(U, V)` with an indexer between classes and canonical coordinates.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    u: FgGroup,
    v: FgGroup,
    raw_mods: Vec<Int>,
    norm: Quot,
}

impl ExtGroup {
    pub fn new(u: &FgGroup, v: &FgGroup) -> Self {
        let mut raw_mods = Vec::new();
        for j in finite_factors(u) {
            for e in v.factors() {
                raw_mods.push(coset_modulus(&u.factors()[j], e));
            }
        }
        let norm = lin::normalize(&raw_mods);
        ExtGroup {
            u: u.clone(),
            v: v.clone(),
            raw_mods,
            norm,
        }
    }

    pub fn group(&self) -> &FgGroup {
        &self.norm.group
    }

    pub fn raw_moduli(&self) -> &[Int] {
        &self.raw_mods
    }

    pub fn from_raw(&self, x: &[Int]) -> ExtClass {
        let n = self.v.ngens();
        let cosets = if n == 0 {
            vec![Vec::new(); finite_factors(&self.u).len()]
        } else {
            x.chunks(n).map(|c| c.to_vec()).collect()
        };
        ExtClass::reduced(&self.u, &self.v, cosets)
    }

    pub fn to_raw(&self, c: &ExtClass) -> Vec<Int> {
        c.cosets.iter().flatten().cloned().collect()
    }

    pub fn to_canonical(&self, c: &ExtClass) -> Vec<Int> {
        self.group()
            .reduced(self.norm.projection.mul_vec(&self.to_raw(c)))
    }

    pub fn from_canonical(&self, x: &[Int]) -> ExtClass {
        self.from_raw(&self.norm.section.mul_vec(x))
    }

    /// Every class exactly once (Ext of finitely generated groups is finite).
    pub fn classes(&self) -> impl Iterator<Item = ExtClass> + '_ {
        crate::fgab::odometer(self.raw_mods.clone()).map(move |x| self.from_raw(&x))
    }

    /// One representative per class of `Ext(U, V) / 2`.
    pub fn classes_mod_two(&self) -> impl Iterator<Item = ExtClass> + '_ {
        let mods: Vec<Int> = self.raw_mods.iter().map(|m| gcd(m, &int(2))).collect();
        crate::fgab::odometer(mods).map(move |x| self.from_raw(&x))
    }
}

/// `⊕_{d_j finite} V / d_j V`.
pub fn ext_group(u: &FgGroup, v: &FgGroup) -> FgGroup {
    ExtGroup::new(u, v).group().clone()
}

/// A short exact sequence `V -i-> M -p-> U`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Extension {
    i: Homomorphism,
    p: Homomorphism,
}

impl Extension {
    pub fn new(i: Homomorphism, p: Homomorphism) -> Result<Self> {
        if i.codomain() != p.domain() {
            return Err(Error::Mismatch(format!(
                "i lands in {} but p starts at {}",
                i.codomain(),
                p.domain()
            )));
        }
        if !i.is_injective() {
            return Err(Error::NotExact("i is not injective".into()));
        }
        if !p.is_surjective() {
            return Err(Error::NotExact("p is not surjective".into()));
        }
        if !is_exact_at(&i, &p) {
            return Err(Error::NotExact(
                "image of i differs from kernel of p".into(),
            ));
        }
        Ok(Extension { i, p })
    }

    pub(crate) fn unchecked(i: Homomorphism, p: Homomorphism) -> Self {
        debug_assert!(Extension::new(i.clone(), p.clone()).is_ok());
        Extension { i, p }
    }

    pub fn v(&self) -> &FgGroup {
        self.i.domain()
    }

    pub fn m(&self) -> &FgGroup {
        self.i.codomain()
    }

    pub fn u(&self) -> &FgGroup {
        self.p.codomain()
    }

    pub fn i(&self) -> &Homomorphism {
        &self.i
    }

    pub fn p(&self) -> &Homomorphism {
        &self.p
    }

    /// `V -> V + U -> U`.
    pub fn split(u: &FgGroup, v: &FgGroup) -> Self {
        let s = DirectSum::new(&[v.clone(), u.clone()]);
        Extension::unchecked(s.injection(0), s.projection(1))
    }
}

/// Which `p`-preimage the element-level constructions start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PreimageChoice {
    #[default]
    Solver,
    /// The solver's preimage shifted by `i` of the all-ones vector of V.
    Shifted,
}

pub(crate) struct Lifter<'a> {
    e: &'a Extension,
    pre_p: crate::fgab::Preimager,
    pre_i: crate::fgab::Preimager,
    shift: Option<Vec<Int>>,
}

impl<'a> Lifter<'a> {
    pub(crate) fn new(e: &'a Extension, choice: PreimageChoice) -> Self {
        let shift = match choice {
            PreimageChoice::Solver => None,
            PreimageChoice::Shifted => Some(e.i.apply(&vec![int(1); e.v().ngens()])),
        };
        Lifter {
            e,
            pre_p: e.p.preimager(),
            pre_i: e.i.preimager(),
            shift,
        }
    }

    pub(crate) fn lift(&self, u: &[Int]) -> Result<Vec<Int>> {
        let mut m = self
            .pre_p
            .solve(u)
            .ok_or_else(|| Error::NotExact("element of U without preimage".into()))?;
        if let Some(s) = &self.shift {
            for (a, b) in m.iter_mut().zip(s) {
                *a += b;
            }
            self.e.m().reduce(&mut m);
        }
        Ok(m)
    }

    /// `i^{-1}(k * p^{-1}(u))`.
    pub(crate) fn connect(&self, u: &[Int], k: &Int) -> Result<Vec<Int>> {
        let m: Vec<Int> = self.lift(u)?.iter().map(|x| x * k).collect();
        self.pre_i
            .solve(&m)
            .ok_or_else(|| Error::NotExact("element of ker p outside im i".into()))
    }
}

/// The extension `(V + ⊕_j Z e_j) / <V relations, d_j e_j - c_j>`.
pub fn realize(c: &ExtClass) -> Extension {
    let (u, v) = (&c.u, &c.v);
    let nv = v.ngens();
    let nu = u.ngens();
    let fin = finite_factors(u);
    let mut rels = Matrix::zeros(nv + nu, nv + fin.len());
    for (i, e) in v.factors().iter().enumerate() {
        rels[(i, i)] = e.clone();
    }
    for (k, (&j, cj)) in fin.iter().zip(&c.cosets).enumerate() {
        for (i, x) in cj.iter().enumerate() {
            rels[(i, nv + k)] = -x;
        }
        rels[(nv + j, nv + k)] = u.factors()[j].clone();
    }
    let pres = present(nv + nu, &rels);
    let m = FgGroup::canonical_unchecked(pres.factors);
    let i = Homomorphism::unchecked(v, &m, pres.to_canon.col_slice(0, nv));
    let p = Homomorphism::unchecked(&m, u, pres.from_canon.row_slice(nv, nv + nu));
    Extension::unchecked(i, p)
}

pub fn classify(e: &Extension) -> Result<ExtClass> {
    classify_with(e, PreimageChoice::Solver)
}

pub fn classify_with(e: &Extension, choice: PreimageChoice) -> Result<ExtClass> {
    let lifter = Lifter::new(e, choice);
    let u = e.u();
    let mut cosets = Vec::new();
    for j in finite_factors(u) {
        let mut unit = u.zero_vec();
        unit[j] = int(1);
        cosets.push(lifter.connect(&unit, &u.factors()[j])?);
    }
    Ok(ExtClass::reduced(u, e.v(), cosets))
}

/// `f_* E`, with middle group `(V' + M) / <(f(v), -i(v))>`.
pub fn pushout(f: &Homomorphism, e: &Extension) -> Result<Extension> {
    if f.domain() != e.v() {
        return Err(Error::Mismatch(format!(
            "pushout along a map out of {} for an extension of {}",
            f.domain(),
            e.v()
        )));
    }
    let s = DirectSum::new(&[f.codomain().clone(), e.m().clone()]);
    let r = s.pair(&[f.clone(), e.i.neg()]);
    let q = r.cokernel();
    let i2 = q.projection.compose(&s.injection(0));
    let p_sum = s.copair(&[Homomorphism::zero(f.codomain(), e.u()), e.p.clone()]);
    let p2 = p_sum
        .through_section(&q)
        .expect("p kills the pushout relations");
    Ok(Extension::unchecked(i2, p2))
}

/// `h^* E`, with middle group `{(m, u') : p(m) = h(u')}`.
pub fn pullback(h: &Homomorphism, e: &Extension) -> Result<Extension> {
    if h.codomain() != e.u() {
        return Err(Error::Mismatch(format!(
            "pullback along a map into {} for an extension of {}",
            h.codomain(),
            e.u()
        )));
    }
    let s = DirectSum::new(&[e.m().clone(), h.domain().clone()]);
    let q = s.copair(&[e.p.clone(), h.neg()]);
    let k = q.kernel();
    let i2 = s
        .injection(0)
        .compose(&e.i)
        .corestrict(&k.inclusion)
        .expect("i(V) lies in the pullback");
    let p2 = s.projection(1).compose(&k.inclusion);
    Ok(Extension::unchecked(i2, p2))
}

/// `E + E'` as an extension of `U + U'` by `V + V'`.
pub fn direct_sum(e: &Extension, e2: &Extension) -> Extension {
    let sv = DirectSum::new(&[e.v().clone(), e2.v().clone()]);
    let sm = DirectSum::new(&[e.m().clone(), e2.m().clone()]);
    let su = DirectSum::new(&[e.u().clone(), e2.u().clone()]);
    let i = sv.copair(&[
        sm.injection(0).compose(&e.i),
        sm.injection(1).compose(&e2.i),
    ]);
    let p = sm.copair(&[
        su.injection(0).compose(&e.p),
        su.injection(1).compose(&e2.p),
    ]);
    Extension::unchecked(i, p)
}

/// `∇_* Δ^* (E + E')`.
pub fn baer_sum(e: &Extension, e2: &Extension) -> Result<Extension> {
    if e.u() != e2.u() || e.v() != e2.v() {
        return Err(Error::Mismatch(
            "Baer sum of extensions with different ends".into(),
        ));
    }
    let sum = direct_sum(e, e2);
    let su = DirectSum::new(&[e.u().clone(), e.u().clone()]);
    let id_u = Homomorphism::identity(e.u());
    let diag = su.pair(&[id_u.clone(), id_u]);
    let sv = DirectSum::new(&[e.v().clone(), e.v().clone()]);
    let id_v = Homomorphism::identity(e.v());
    let codiag = sv.copair(&[id_v.clone(), id_v]);
    let pulled = pullback(&diag, &sum)?;
    pushout(&codiag, &pulled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn class(u: &str, v: &str, cosets: &[&[i64]]) -> ExtClass {
        let cs = cosets
            .iter()
            .map(|c| c.iter().map(|&x| int(x)).collect())
            .collect();
        ExtClass::new(&g(u), &g(v), cs).unwrap()
    }

    #[test]
    fn ext_groups() {
        assert!(ext_group(&g("Z"), &g("Z/6+Z")).is_trivial());
        assert_eq!(ext_group(&g("Z/2"), &g("Z")), g("Z/2"));
        assert_eq!(ext_group(&g("Z/2"), &g("Z/2")), g("Z/2"));
        assert_eq!(ext_group(&g("Z/4"), &g("Z/6")), g("Z/2"));
        assert!(ext_group(&g("0"), &g("Z/2")).is_trivial());
    }

    #[test]
    fn realize_examples() {
        assert_eq!(realize(&class("Z/2", "Z/2", &[&[1]])).m(), &g("Z/4"));
        assert_eq!(realize(&class("Z/4", "Z/2", &[&[1]])).m(), &g("Z/8"));
        assert_eq!(realize(&class("Z/2", "Z", &[&[1]])).m(), &g("Z"));
        let z = ExtClass::zero(&g("Z/2+Z"), &g("Z/3"));
        assert_eq!(realize(&z).m(), &g("Z/6+Z"));
        let trivial = realize(&ExtClass::zero(&g("0"), &g("0")));
        assert!(trivial.m().is_trivial());
    }

    #[test]
    fn classify_examples() {
        let z2 = g("Z/2");
        let z4 = g("Z/4");
        let e = Extension::new(
            Homomorphism::from_i64(&z2, &z4, &[2]).unwrap(),
            Homomorphism::from_i64(&z4, &z2, &[1]).unwrap(),
        )
        .unwrap();
        assert_eq!(classify(&e).unwrap(), class("Z/2", "Z/2", &[&[1]]));
        assert!(classify(&Extension::split(&z4, &z2)).unwrap().is_zero());
        let bad = Extension::new(
            Homomorphism::from_i64(&z2, &z4, &[2]).unwrap(),
            Homomorphism::from_i64(&z4, &z4, &[1]).unwrap(),
        );
        assert!(matches!(bad, Err(Error::NotExact(_))));
    }

    #[test]
    fn pushout_and_pullback_examples() {
        let e = realize(&class("Z/2", "Z/2", &[&[1]]));
        let id = Homomorphism::identity(&g("Z/2"));
        assert_eq!(
            classify(&pushout(&id, &e).unwrap()).unwrap(),
            classify(&e).unwrap()
        );
        let zero = Homomorphism::zero(&g("Z/4"), &g("Z/2"));
        assert!(classify(&pullback(&zero, &e).unwrap()).unwrap().is_zero());
        assert!(pushout(&Homomorphism::identity(&g("Z/4")), &e).is_err());
    }

    #[test]
    fn baer_sums() {
        let e = realize(&class("Z/2", "Z/2", &[&[1]]));
        assert!(classify(&baer_sum(&e, &e).unwrap()).unwrap().is_zero());
        let split = Extension::split(&g("Z/2"), &g("Z/2"));
        assert_eq!(
            classify(&baer_sum(&e, &split).unwrap()).unwrap(),
            classify(&e).unwrap()
        );
        let gen = class("Z/4", "Z/4", &[&[1]]);
        let eg = realize(&gen);
        let mut acc = eg.clone();
        for k in 2..=4 {
            acc = baer_sum(&acc, &eg).unwrap();
            assert_eq!(classify(&acc).unwrap(), gen.scale(&int(k)));
        }
    }

    #[test]
    fn shifted_preimages_agree() {
        let eg = ExtGroup::new(&g("Z/2+Z/4"), &g("Z/2+Z"));
        for c in eg.classes() {
            let e = realize(&c);
            assert_eq!(classify_with(&e, PreimageChoice::Shifted).unwrap(), c);
        }
    }
}
