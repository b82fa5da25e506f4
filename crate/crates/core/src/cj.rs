//! The additive category with objects `a`, `b`, `c`, generated by
//! `ρ: a -> b`, `η: c -> a`, `β: b -> c` subject to `2ρ = 2η = 2β = 0`,
//! `βρ = 0` and `ρηβ = 2·1_b`. Every hom group is cyclic, so a morphism is
//! one coefficient on a fixed generator.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::diagrams::{hom_set, Eed, EedMorphism, ExtEtaDiagram};
use crate::error::{Error, Result};
use crate::fgab::{FgGroup, Homomorphism};
use crate::int::{int, reduce, Int};
use crate::matrix::Matrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CjObject {
    A,
    B,
    C,
}

use CjObject::{A, B, C};

impl CjObject {
    pub const ALL: [CjObject; 3] = [A, B, C];

    pub fn name(self) -> &'static str {
        match self {
            A => "a",
            B => "b",
            C => "c",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for CjObject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(A),
            "b" => Ok(B),
            "c" => Ok(C),
            other => Err(Error::Parse(format!("expected a, b or c, got {other:?}"))),
        }
    }
}

impl fmt::Display for CjObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Order of `J(x, y)`; 0 means `Z`.
const ORDER: [[i64; 3]; 3] = [[0, 2, 1], [2, 4, 2], [2, 2, 0]];

/// `gen(y,z) ∘ gen(x,y) = K[x][y][z] · gen(x,z)`.
const K: [[[i64; 3]; 3]; 3] = [
    // x = a
    [[1, 1, 0], [0, 1, 0], [0, 0, 0]],
    // x = b
    [[1, 2, 0], [1, 1, 1], [1, 2, 1]],
    // x = c
    [[1, 1, 0], [0, 1, 0], [1, 1, 1]],
];

fn order(x: CjObject, y: CjObject) -> i64 {
    ORDER[x.index()][y.index()]
}

fn k(x: CjObject, y: CjObject, z: CjObject) -> i64 {
    K[x.index()][y.index()][z.index()]
}

/// `J(x, y)` as a group.
pub fn cj_hom(x: CjObject, y: CjObject) -> FgGroup {
    FgGroup::from_orders_i64(&[order(x, y)])
}

/// Name of the generator of `J(x, y)`, if the group is nonzero.
pub fn generator_name(x: CjObject, y: CjObject) -> Option<&'static str> {
    Some(match (x, y) {
        (A, A) => "1_a",
        (B, B) => "1_b",
        (C, C) => "1_c",
        (A, B) => "rho",
        (C, A) => "eta",
        (B, C) => "beta",
        (B, A) => "eta.beta",
        (C, B) => "rho.eta",
        (A, C) => return None,
    })
}

/// `coeff` times the generator of `J(source, target)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CjMorphism {
    source: CjObject,
    target: CjObject,
    coeff: Int,
}

impl CjMorphism {
    pub fn new(source: CjObject, target: CjObject, coeff: impl Into<Int>) -> Self {
        let m = int(order(source, target));
        CjMorphism {
            source,
            target,
            coeff: reduce(&coeff.into(), &m),
        }
    }

    pub fn generator(source: CjObject, target: CjObject) -> Self {
        Self::new(source, target, 1)
    }

    pub fn identity(x: CjObject) -> Self {
        Self::generator(x, x)
    }

    pub fn zero(source: CjObject, target: CjObject) -> Self {
        Self::new(source, target, 0)
    }

    pub fn rho() -> Self {
        Self::generator(A, B)
    }

    pub fn eta() -> Self {
        Self::generator(C, A)
    }

    pub fn beta() -> Self {
        Self::generator(B, C)
    }

    pub fn source(&self) -> CjObject {
        self.source
    }

    pub fn target(&self) -> CjObject {
        self.target
    }

    pub fn coeff(&self) -> &Int {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == int(0)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CjMorphism) -> Result<CjMorphism> {
        if inner.target != self.source {
            return Err(Error::Mismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        let c = &self.coeff * &inner.coeff * int(k(inner.source, self.source, self.target));
        Ok(CjMorphism::new(inner.source, self.target, c))
    }

    pub fn add(&self, other: &CjMorphism) -> Result<CjMorphism> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::Mismatch(
                "adding morphisms with different ends".into(),
            ));
        }
        Ok(CjMorphism::new(
            self.source,
            self.target,
            &self.coeff + &other.coeff,
        ))
    }

    /// Every element of `J(x, y)`, or `None` for the infinite ones.
    pub fn all(source: CjObject, target: CjObject) -> Option<Vec<CjMorphism>> {
        match order(source, target) {
            0 => None,
            n => Some((0..n).map(|c| CjMorphism::new(source, target, c)).collect()),
        }
    }
}

impl fmt::Display for CjMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match generator_name(self.source, self.target) {
            _ if self.is_zero() => write!(f, "0"),
            Some(g) if self.coeff == int(1) => write!(f, "{g}"),
            Some(g) => write!(f, "{}*{g}", self.coeff),
            None => write!(f, "0"),
        }
    }
}

/// `a <-> c`, `b` fixed.
pub fn delta_obj(x: CjObject) -> CjObject {
    match x {
        A => C,
        B => B,
        C => A,
    }
}

/// The contravariant involution: `ρ <-> β`, `η` fixed, `ηβ <-> ρη`.
pub fn delta_mor(u: &CjMorphism) -> CjMorphism {
    CjMorphism::new(delta_obj(u.target), delta_obj(u.source), u.coeff.clone())
}

/// `N(x)`.
pub fn evaluate(n: &ExtEtaDiagram, x: CjObject) -> &FgGroup {
    match x {
        A => n.a(),
        B => n.b(),
        C => n.c(),
    }
}

/// `N(u): N(y) -> N(x)` for `u: x -> y`, reading `N` as a contravariant
/// functor with `N(ρ) = ψ`, `N(η) = η`, `N(β) = χ`.
pub fn action(n: &ExtEtaDiagram, u: &CjMorphism) -> Homomorphism {
    let (x, y) = (u.source, u.target);
    let g = match (x, y) {
        (A, A) => Homomorphism::identity(n.a()),
        (B, B) => Homomorphism::identity(n.b()),
        (C, C) => Homomorphism::identity(n.c()),
        (A, B) => n.psi().clone(),
        (C, A) => n.eta().clone(),
        (B, C) => n.chi().clone(),
        (B, A) => n.chi().compose(n.eta()),
        (C, B) => n.eta().compose(n.psi()),
        (A, C) => Homomorphism::zero(n.c(), n.a()),
    };
    g.scale(&u.coeff)
}

/// `u^*: J(y, t) -> J(x, t)` for `u: x -> y`, as a map of cyclic groups.
fn precompose(u: &CjMorphism, t: CjObject) -> Homomorphism {
    let (x, y) = (u.source, u.target);
    let image = CjMorphism::generator(y, t).compose(u).expect("adjacent");
    cyclic_map(cj_hom(y, t), cj_hom(x, t), image.coeff)
}

/// `u_*: J(t, x) -> J(t, y)` for `u: x -> y`.
fn postcompose(u: &CjMorphism, t: CjObject) -> Homomorphism {
    let (x, y) = (u.source, u.target);
    let image = u.compose(&CjMorphism::generator(t, x)).expect("adjacent");
    cyclic_map(cj_hom(t, x), cj_hom(t, y), image.coeff)
}

fn cyclic_map(dom: FgGroup, cod: FgGroup, c: Int) -> Homomorphism {
    if dom.is_trivial() || cod.is_trivial() {
        return Homomorphism::zero(&dom, &cod);
    }
    Homomorphism::new(&dom, &cod, Matrix::from_rows(vec![vec![c]], 1))
        .expect("composition is well defined")
}

/// `F_x = J(-, x)` as the diagram `J(b,x) -ρ*-> J(a,x) -η*-> J(c,x) -β*-> J(b,x)`.
pub fn representable(x: CjObject) -> ExtEtaDiagram {
    ExtEtaDiagram::new(
        precompose(&CjMorphism::rho(), x),
        precompose(&CjMorphism::eta(), x),
        precompose(&CjMorphism::beta(), x),
    )
    .expect("representables satisfy the relations")
}

/// `F_u = u_*: F_x -> F_y`.
pub fn representable_mor(u: &CjMorphism) -> EedMorphism {
    EedMorphism::new(
        Arc::new(representable(u.source)),
        Arc::new(representable(u.target)),
        postcompose(u, A),
        postcompose(u, B),
        postcompose(u, C),
    )
    .expect("postcomposition is natural")
}

fn component(m: &EedMorphism, x: CjObject) -> &Homomorphism {
    match x {
        A => &m.f,
        B => &m.g,
        C => &m.h,
    }
}

/// Value of `m: F_x -> N` at `1_x`, an element of `N(x)`.
pub fn yoneda_eval(x: CjObject, m: &EedMorphism) -> Vec<Int> {
    let c = component(m, x);
    let mut one = c.domain().zero_vec();
    one[0] = int(1);
    c.apply(&one)
}

/// The morphism `F_x -> N` sending `u: t -> x` to `N(u)(e)`.
pub fn yoneda_morphism(x: CjObject, n: &Eed, e: &[Int]) -> EedMorphism {
    let fx = Arc::new(representable(x));
    let comp = |t: CjObject| {
        let dom = cj_hom(t, x);
        let cod = evaluate(n, t);
        if dom.is_trivial() {
            return Homomorphism::zero(&dom, cod);
        }
        let col = action(n, &CjMorphism::generator(t, x)).apply(e);
        Homomorphism::new(&dom, cod, Matrix::from_columns(cod.ngens(), &[col]))
            .expect("N(x) element")
    };
    EedMorphism::new(fx, n.clone(), comp(A), comp(B), comp(C))
        .expect("Yoneda morphisms are natural")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YonedaCheck {
    pub morphisms: usize,
    pub elements: usize,
    pub round_trips: bool,
}

/// Counts `EED(F_x, N)` and `N(x)` and runs both round trips of the
/// evaluation bijection.
pub fn yoneda_check(x: CjObject, n: &Eed) -> Result<YonedaCheck> {
    let fx = Arc::new(representable(x));
    let mors = hom_set(&fx, n)?;
    let group = evaluate(n, x);
    let elems: Vec<Vec<Int>> = group.elements()?.collect();
    let there = mors
        .iter()
        .all(|m| &yoneda_morphism(x, n, &yoneda_eval(x, m)) == m);
    let back = elems
        .iter()
        .all(|e| &yoneda_eval(x, &yoneda_morphism(x, n, e)) == e);
    Ok(YonedaCheck {
        morphisms: mors.len(),
        elements: elems.len(),
        round_trips: there && back && mors.len() == elems.len(),
    })
}

/// The hom groups and every product of generators, one per line.
pub fn composition_table_text() -> String {
    let mut s = String::from("hom groups J(x,y), x down, y across\n");
    s.push_str("   a    b    c\n");
    for x in CjObject::ALL {
        s.push_str(x.name());
        for y in CjObject::ALL {
            s.push_str(&format!(" {:<4}", cj_hom(x, y).to_string()));
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    s.push_str("\ncomposites gen(y,z) o gen(x,y)\n");
    for x in CjObject::ALL {
        for y in CjObject::ALL {
            for z in CjObject::ALL {
                let (Some(u), Some(v)) = (generator_name(x, y), generator_name(y, z)) else {
                    continue;
                };
                let w = CjMorphism::generator(y, z)
                    .compose(&CjMorphism::generator(x, y))
                    .expect("adjacent");
                s.push_str(&format!("{x}->{y}->{z}: {v} o {u} = {w}\n"));
            }
        }
    }
    s
}

/// The diagrams `F_b, F_c, F_a` and the morphisms `F_β`, `F_η`, `F_ρ`
/// between consecutive rows, components listed as `B, A, C`.
pub fn square_text() -> String {
    let rows = [B, C, A, B];
    let mors = [CjMorphism::beta(), CjMorphism::eta(), CjMorphism::rho()];
    let mut s = String::new();
    for (i, x) in rows.iter().enumerate() {
        s.push_str(&format!("F_{x}: {}\n", representable(*x)));
        if let Some(u) = mors.get(i) {
            let m = representable_mor(u);
            s.push_str(&format!(
                "  F_{}: B {}  A {}  C {}\n",
                generator_name(u.source, u.target).expect("generator"),
                m.g.matrix(),
                m.f.matrix(),
                m.h.matrix()
            ));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{h_diagram, SppObject};

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn hom(a: &str, b: &str, m: &[i64]) -> Homomorphism {
        Homomorphism::from_i64(&g(a), &g(b), m).unwrap()
    }

    #[test]
    fn hom_groups() {
        assert_eq!(cj_hom(A, A), g("Z"));
        assert_eq!(cj_hom(A, C), g("0"));
        assert_eq!(cj_hom(B, B), g("Z/4"));
        assert_eq!(cj_hom(C, B), g("Z/2"));
    }

    #[test]
    fn defining_relations() {
        let (rho, eta, beta) = (CjMorphism::rho(), CjMorphism::eta(), CjMorphism::beta());
        assert!(beta.compose(&rho).unwrap().is_zero());
        let r = rho.compose(&eta).unwrap().compose(&beta).unwrap();
        assert_eq!(r, CjMorphism::new(B, B, 2));
        assert_eq!(rho.compose(&eta.compose(&beta).unwrap()).unwrap(), r);
        for u in [&rho, &eta, &beta] {
            assert!(u.add(u).unwrap().is_zero());
            let id = CjMorphism::identity(u.target());
            assert_eq!(&id.compose(u).unwrap(), u);
        }
        assert!(eta.compose(&rho).is_err());
    }

    /// Generators in `J(x, y)` for small coefficient ranges, including `Z`.
    fn samples(x: CjObject, y: CjObject) -> Vec<CjMorphism> {
        CjMorphism::all(x, y)
            .unwrap_or_else(|| (-2..=3).map(|c| CjMorphism::new(x, y, c)).collect())
    }

    #[test]
    fn associative_and_bilinear() {
        for w in CjObject::ALL {
            for x in CjObject::ALL {
                for y in CjObject::ALL {
                    for z in CjObject::ALL {
                        for u in samples(w, x) {
                            for v in samples(x, y) {
                                for t in samples(y, z) {
                                    let l = t.compose(&v).unwrap().compose(&u).unwrap();
                                    let r = t.compose(&v.compose(&u).unwrap()).unwrap();
                                    assert_eq!(l, r, "{u} {v} {t}");
                                }
                                let sum = v.add(&v).unwrap().compose(&u).unwrap();
                                let c = v.compose(&u).unwrap();
                                assert_eq!(sum, c.add(&c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn representables_match_display() {
        let fb = representable(B);
        assert_eq!((fb.b(), fb.a(), fb.c()), (&g("Z/4"), &g("Z/2"), &g("Z/2")));
        assert_eq!(fb.psi(), &hom("Z/4", "Z/2", &[1]));
        assert_eq!(fb.eta(), &hom("Z/2", "Z/2", &[1]));
        assert_eq!(fb.chi(), &hom("Z/2", "Z/4", &[2]));
        let fc = representable(C);
        assert_eq!((fc.b(), fc.a(), fc.c()), (&g("Z/2"), &g("0"), &g("Z")));
        assert_eq!(fc.chi(), &hom("Z", "Z/2", &[1]));
        let fa = representable(A);
        assert_eq!((fa.b(), fa.a(), fa.c()), (&g("Z/2"), &g("Z"), &g("Z/2")));
        assert!(fa.psi().is_zero());
        assert_eq!(fa.eta(), &hom("Z", "Z/2", &[1]));
        assert_eq!(fa.chi(), &hom("Z/2", "Z/2", &[1]));
        for x in CjObject::ALL {
            let f = representable(x);
            assert!(f.is_exact(), "F_{x}");
            for w in CjObject::ALL {
                assert_eq!(evaluate(&f, w), &cj_hom(w, x));
            }
        }
    }

    #[test]
    fn representable_morphisms_match_square() {
        let fb = representable_mor(&CjMorphism::beta());
        assert_eq!(fb.g, hom("Z/4", "Z/2", &[1]));
        assert!(fb.f.is_zero() && fb.h.is_zero());
        let fe = representable_mor(&CjMorphism::eta());
        assert_eq!(fe.g, hom("Z/2", "Z/2", &[1]));
        assert_eq!(fe.h, hom("Z", "Z/2", &[1]));
        let fr = representable_mor(&CjMorphism::rho());
        assert_eq!(fr.g, hom("Z/2", "Z/4", &[2]));
        assert_eq!(fr.f, hom("Z", "Z/2", &[1]));
        assert_eq!(fr.h, hom("Z/2", "Z/2", &[1]));
        let id = representable_mor(&CjMorphism::identity(A));
        assert_eq!(id, EedMorphism::identity(&id.source));
    }

    #[test]
    fn representable_mor_is_functorial() {
        for x in CjObject::ALL {
            for y in CjObject::ALL {
                for z in CjObject::ALL {
                    for u in samples(x, y) {
                        for v in samples(y, z) {
                            let lhs = representable_mor(&v.compose(&u).unwrap());
                            let rhs = representable_mor(&v)
                                .compose(&representable_mor(&u))
                                .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn yoneda() {
        let fb: Eed = Arc::new(representable(B));
        let r = yoneda_check(B, &fb).unwrap();
        assert_eq!((r.morphisms, r.elements, r.round_trips), (4, 4, true));
        let h: Eed = Arc::new(h_diagram(&SppObject::new(g("Z/2"), g("Z/2"))));
        let r = yoneda_check(A, &h).unwrap();
        assert_eq!((r.morphisms, r.elements, r.round_trips), (2, 2, true));
        let zero: Eed = Arc::new(ExtEtaDiagram::zero());
        for x in CjObject::ALL {
            let r = yoneda_check(x, &zero).unwrap();
            assert_eq!((r.morphisms, r.elements, r.round_trips), (1, 1, true));
        }
    }

    #[test]
    fn delta_is_contravariant_involution() {
        assert_eq!(delta_obj(A), C);
        assert_eq!(delta_obj(delta_obj(A)), A);
        assert_eq!(delta_mor(&CjMorphism::rho()), CjMorphism::beta());
        assert_eq!(delta_mor(&CjMorphism::eta()), CjMorphism::eta());
        assert_eq!(
            delta_mor(&CjMorphism::new(B, B, 2)),
            CjMorphism::new(B, B, 2)
        );
        for x in CjObject::ALL {
            for y in CjObject::ALL {
                for z in CjObject::ALL {
                    for u in samples(x, y) {
                        assert_eq!(delta_mor(&delta_mor(&u)), u);
                        for v in samples(y, z) {
                            let lhs = delta_mor(&v.compose(&u).unwrap());
                            let rhs = delta_mor(&u).compose(&delta_mor(&v)).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn golden_texts() {
        assert_eq!(
            composition_table_text(),
            include_str!("../golden/cj_table.txt")
        );
        assert_eq!(square_text(), include_str!("../golden/cj_square.txt"));
    }
}
