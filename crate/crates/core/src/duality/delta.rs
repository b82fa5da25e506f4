use std::collections::HashSet;
use std::sync::Arc;

use crate::cj::{delta_mor, delta_obj, representable, representable_mor, CjMorphism, CjObject};
use crate::diagrams::{eed_hom_system, Eed, EedMorphism, ExtEtaDiagram};
use crate::error::{Error, Result};
use crate::fgab::{FgGroup, HomSpace, HomSystem, Homomorphism};
use crate::int::{int, Int};
use crate::lin::matrix_of;

use CjObject::{A, B, C};

fn z2() -> FgGroup {
    FgGroup::cyclic(2)
}

fn z4() -> FgGroup {
    FgGroup::cyclic(4)
}

/// The nonzero map `Z/4 -> Z/2`.
fn s() -> Homomorphism {
    Homomorphism::from_i64(&z4(), &z2(), &[1]).expect("s")
}

/// The nonzero map `Z/2 -> Z/4`.
fn t() -> Homomorphism {
    Homomorphism::from_i64(&z2(), &z4(), &[2]).expect("t")
}

fn proj() -> Homomorphism {
    Homomorphism::from_i64(&FgGroup::integers(), &z2(), &[1]).expect("proj")
}

fn component(m: &EedMorphism, x: CjObject) -> &Homomorphism {
    match x {
        A => &m.f,
        B => &m.g,
        C => &m.h,
    }
}

fn linear_map(dom: &FgGroup, cod: &FgGroup, f: impl Fn(&[Int]) -> Vec<Int>) -> Homomorphism {
    let m = matrix_of(dom.ngens(), cod.ngens(), f);
    Homomorphism::new(dom, cod, m).expect("induced map is well defined")
}

/// `Δ(N)` with `B' = Hom(B, Z/4)`, `A' = {(g: B -> Z/2, h: C -> Z) | gχ = proj h}`,
/// `C' = {(f: A -> Z, g: B -> Z/2) | gχη = proj f}`, and
/// `ψ'(g) = (sg, 0)`, `η'(g, h) = (0, g)`, `χ'(f, g) = tg`.
#[derive(Debug)]
pub struct ExplicitDelta {
    pub b_space: HomSpace,
    pub a_system: HomSystem,
    pub c_system: HomSystem,
    pub diagram: ExtEtaDiagram,
}

pub fn delta_dual_explicit(n: &ExtEtaDiagram) -> ExplicitDelta {
    let b_space = HomSpace::new(n.b(), &z4());
    let a_system = HomSystem::new(
        vec![
            HomSpace::new(n.b(), &z2()),
            HomSpace::new(n.c(), &FgGroup::integers()),
        ],
        |x| vec![x[0].compose(n.chi()).sub(&proj().compose(&x[1]))],
    );
    let chi_eta = n.chi().compose(n.eta());
    let c_system = HomSystem::new(
        vec![
            HomSpace::new(n.a(), &FgGroup::integers()),
            HomSpace::new(n.b(), &z2()),
        ],
        |x| vec![x[1].compose(&chi_eta).sub(&proj().compose(&x[0]))],
    );
    let psi = linear_map(b_space.group(), a_system.group(), |c| {
        let g = b_space.from_canonical(c);
        let h0 = Homomorphism::zero(n.c(), &FgGroup::integers());
        a_system
            .coords(&[s().compose(&g), h0])
            .expect("(sg, 0) lies in A'")
    });
    let eta = linear_map(a_system.group(), c_system.group(), |c| {
        let gh = a_system.components(c);
        let f0 = Homomorphism::zero(n.a(), &FgGroup::integers());
        c_system
            .coords(&[f0, gh[0].clone()])
            .expect("(0, g) lies in C'")
    });
    let chi = linear_map(c_system.group(), b_space.group(), |c| {
        let fg = c_system.components(c);
        b_space.to_canonical(&t().compose(&fg[1]))
    });
    let diagram =
        ExtEtaDiagram::new(psi, eta, chi).expect("the explicit dual satisfies the relations");
    ExplicitDelta {
        b_space,
        a_system,
        c_system,
        diagram,
    }
}

/// `Δ(N)(x) = EED(N, F_{Δx})`, with structure maps induced by the
/// representable morphisms.
#[derive(Debug)]
pub struct DeltaDual {
    source: Eed,
    targets: [Eed; 3],
    systems: [HomSystem; 3],
    diagram: Eed,
}

impl DeltaDual {
    pub fn new(n: &Eed) -> Self {
        let targets = CjObject::ALL.map(|x| Arc::new(representable(delta_obj(x))));
        let systems = CjObject::ALL.map(|x| eed_hom_system(n, &targets[x.index()]));
        let mut d = DeltaDual {
            source: n.clone(),
            targets,
            systems,
            diagram: Arc::new(ExtEtaDiagram::zero()),
        };
        // Δ(N)(u): Δ(N)(y) -> Δ(N)(x) for u: x -> y is F_{Δu} ∘ -.
        let induced = |u: CjMorphism| {
            let (x, y) = (u.source(), u.target());
            let fu = representable_mor(&delta_mor(&u));
            linear_map(d.group(y), d.group(x), |c| {
                let m = fu.compose(&d.morphism(y, c)).expect("adjacent");
                d.coords(x, &m)
            })
        };
        let diagram = ExtEtaDiagram::new(
            induced(CjMorphism::rho()),
            induced(CjMorphism::eta()),
            induced(CjMorphism::beta()),
        )
        .expect("a functor on J gives an EED");
        d.diagram = Arc::new(diagram);
        d
    }

    pub fn source(&self) -> &Eed {
        &self.source
    }

    pub fn diagram(&self) -> &Eed {
        &self.diagram
    }

    pub fn group(&self, x: CjObject) -> &FgGroup {
        self.systems[x.index()].group()
    }

    /// The morphism `N -> F_{Δx}` with canonical coordinates `c`.
    pub fn morphism(&self, x: CjObject, c: &[Int]) -> EedMorphism {
        let [f, g, h]: [Homomorphism; 3] = self.systems[x.index()]
            .components(c)
            .try_into()
            .expect("three components");
        EedMorphism {
            source: self.source.clone(),
            target: self.targets[x.index()].clone(),
            f,
            g,
            h,
        }
    }

    pub fn coords(&self, x: CjObject, m: &EedMorphism) -> Vec<Int> {
        self.systems[x.index()]
            .coords(&m.components())
            .expect("a morphism N -> F_{Δx}")
    }
}

pub fn delta_dual_abstract(n: &Eed) -> ExtEtaDiagram {
    DeltaDual::new(n).diagram().as_ref().clone()
}

/// `Δ(m) = - ∘ m: Δ(N') -> Δ(N)` for `m: N -> N'`.
pub fn delta_mor_abstract(m: &EedMorphism, dn: &DeltaDual, dn2: &DeltaDual) -> Result<EedMorphism> {
    if dn.source() != &m.source || dn2.source() != &m.target {
        return Err(Error::Mismatch("duals do not match the morphism".into()));
    }
    let comp = |x: CjObject| {
        linear_map(dn2.group(x), dn.group(x), |c| {
            let n2 = dn2.morphism(x, c);
            dn.coords(x, &n2.compose(m).expect("adjacent"))
        })
    };
    EedMorphism::new(
        dn2.diagram().clone(),
        dn.diagram().clone(),
        comp(A),
        comp(B),
        comp(C),
    )
}

/// The isomorphism from the explicit to the abstract dual:
/// `(g, h) ↦ (0, g, h)`, `g ↦ (hη, g, h)` with `gχ = th`, and
/// `(f, g) ↦ (f, g, gχ)`.
pub fn delta_comparison(n: &Eed) -> Result<(ExplicitDelta, DeltaDual, EedMorphism)> {
    let ex = delta_dual_explicit(n);
    let ab = DeltaDual::new(n);
    let fa = linear_map(ex.a_system.group(), ab.group(A), |c| {
        let gh = ex.a_system.components(c);
        let f = Homomorphism::zero(n.a(), &FgGroup::trivial());
        ab.coords(
            A,
            &EedMorphism::new(
                n.clone(),
                ab.targets[0].clone(),
                f,
                gh[0].clone(),
                gh[1].clone(),
            )
            .expect("element of A'"),
        )
    });
    let gb = linear_map(ex.b_space.group(), ab.group(B), |c| {
        let g = ex.b_space.from_canonical(c);
        let h = g.compose(n.chi()).corestrict(&t()).expect("2 g chi = 0");
        let f = h.compose(n.eta());
        ab.coords(
            B,
            &EedMorphism::new(n.clone(), ab.targets[1].clone(), f, g, h).expect("element of B'"),
        )
    });
    let hc = linear_map(ex.c_system.group(), ab.group(C), |c| {
        let fg = ex.c_system.components(c);
        let h = fg[1].compose(n.chi());
        ab.coords(
            C,
            &EedMorphism::new(
                n.clone(),
                ab.targets[2].clone(),
                fg[0].clone(),
                fg[1].clone(),
                h,
            )
            .expect("element of C'"),
        )
    });
    let m = EedMorphism::new(
        Arc::new(ex.diagram.clone()),
        ab.diagram().clone(),
        fa,
        gb,
        hc,
    )?;
    Ok((ex, ab, m))
}

/// `κ: N -> Δ²N`, `κ_x(e)_y(n) = Δ(n_x(e))` for `e ∈ N(x)` and
/// `n ∈ Δ(N)(y) = EED(N, F_{Δy})`.
pub fn delta_unit(n: &Eed) -> Result<(DeltaDual, DeltaDual, EedMorphism)> {
    let d1 = DeltaDual::new(n);
    let d2 = DeltaDual::new(d1.diagram());
    let kappa = |x: CjObject| {
        let nx = crate::cj::evaluate(n, x);
        linear_map(nx, d2.group(x), |e| {
            let comp = |y: CjObject| {
                let target = crate::cj::evaluate(&d2.targets[x.index()], y);
                linear_map(d1.group(y), target, |c| {
                    let value = component(&d1.morphism(y, c), x).apply(e);
                    pairing_value(x, delta_obj(y), &value, target)
                })
            };
            let m = EedMorphism::new(
                d1.diagram().clone(),
                d2.targets[x.index()].clone(),
                comp(A),
                comp(B),
                comp(C),
            )
            .expect("κ_x(e) is a morphism");
            d2.coords(x, &m)
        })
    };
    let k = EedMorphism::new(
        n.clone(),
        d2.diagram().clone(),
        kappa(A),
        kappa(B),
        kappa(C),
    )?;
    Ok((d1, d2, k))
}

/// Reads `value ∈ J(x, z)` as a coefficient and applies `Δ` to land in
/// `J(Δz, Δx)`, given as coordinates in `target`.
fn pairing_value(x: CjObject, z: CjObject, value: &[Int], target: &FgGroup) -> Vec<Int> {
    let coeff = value.first().cloned().unwrap_or_else(|| int(0));
    let u = delta_mor(&CjMorphism::new(x, z, coeff));
    if target.is_trivial() {
        vec![]
    } else {
        vec![u.coeff().clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub left: usize,
    pub right: usize,
    pub bijective: bool,
}

/// `EED(M, ΔN) -> EED(N, ΔM)`, `adj(φ)_y(e)_x(m) = Δ(φ_x(m)_y(e))`.
fn adjoint(phi: &EedMorphism, dm: &DeltaDual, dn: &DeltaDual) -> EedMorphism {
    let m = dm.source();
    let n = dn.source();
    let comp = |y: CjObject| {
        let ny = crate::cj::evaluate(n, y);
        linear_map(ny, dm.group(y), |e| {
            let inner = |x: CjObject| {
                let mx = crate::cj::evaluate(m, x);
                let target = crate::cj::evaluate(&dm.targets[y.index()], x);
                linear_map(mx, target, |v| {
                    let phi_x_v = component(phi, x).apply(v);
                    let value = component(&dn.morphism(x, &phi_x_v), y).apply(e);
                    pairing_value(y, delta_obj(x), &value, target)
                })
            };
            let mor = EedMorphism::new(
                m.clone(),
                dm.targets[y.index()].clone(),
                inner(A),
                inner(B),
                inner(C),
            )
            .expect("adjoint component is a morphism");
            dm.coords(y, &mor)
        })
    };
    EedMorphism::new(n.clone(), dm.diagram().clone(), comp(A), comp(B), comp(C))
        .expect("adjoint is natural")
}

/// Enumerates both sides of `EED(M, ΔN) ≅ EED(N, ΔM)` and checks that the
/// adjunction map is a bijection whose square is the identity.
pub fn delta_adjunction_check(m: &Eed, n: &Eed) -> Result<AdjunctionCheck> {
    let dm = DeltaDual::new(m);
    let dn = DeltaDual::new(n);
    let left = crate::diagrams::hom_set(m, dn.diagram())?;
    let right = crate::diagrams::hom_set(n, dm.diagram())?;
    let images: HashSet<EedMorphism> = left.iter().map(|phi| adjoint(phi, &dm, &dn)).collect();
    let back = left
        .iter()
        .all(|phi| &adjoint(&adjoint(phi, &dm, &dn), &dn, &dm) == phi);
    Ok(AdjunctionCheck {
        left: left.len(),
        right: right.len(),
        bijective: back && images.len() == left.len() && left.len() == right.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{h_diagram, SppObject};

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn rep(x: CjObject) -> Eed {
        Arc::new(representable(x))
    }

    #[test]
    fn odd_order_dual_is_zero() {
        let n = ExtEtaDiagram::new(
            Homomorphism::zero(&g("0"), &g("Z/3")),
            Homomorphism::zero(&g("Z/3"), &g("Z/5")),
            Homomorphism::zero(&g("Z/5"), &g("0")),
        )
        .unwrap();
        assert!(delta_dual_explicit(&n).diagram.is_zero_diagram());
        let n = Arc::new(n);
        assert!(delta_dual_abstract(&n).is_zero_diagram());
        let (_, _, k) = delta_unit(&n).unwrap();
        assert!(k.is_zero());
    }

    #[test]
    fn representables_are_permuted() {
        for x in CjObject::ALL {
            let d = Arc::new(delta_dual_explicit(&representable(x)).diagram);
            let fx = rep(delta_obj(x));
            let (_, _, cmp) = delta_comparison(&rep(x)).unwrap();
            assert!(cmp.is_isomorphism());
            assert_eq!((d.a(), d.b(), d.c()), (fx.a(), fx.b(), fx.c()));
        }
    }

    #[test]
    fn split_pair_breaks_exactness() {
        let n = h_diagram(&SppObject::new(g("Z/2"), g("Z/2")));
        let d = delta_dual_explicit(&n).diagram;
        assert_eq!(
            (d.a(), d.b(), d.c()),
            (&g("Z/2"), &g("Z/2+Z/2"), &g("Z/2+Z/2"))
        );
        assert!(d.validate().ok());
        assert!(!d.is_exact());
    }

    #[test]
    fn unit_on_fb_and_z4() {
        let (_, _, k) = delta_unit(&rep(B)).unwrap();
        assert!(k.is_isomorphism());
        let n = Arc::new(crate::diagrams::emd_to_eeed(
            &crate::diagrams::standard_emd(&g("Z/4")),
        ));
        let (_, _, k) = delta_unit(&n).unwrap();
        assert!(!k.is_isomorphism());
    }

    #[test]
    fn adjunction_small() {
        let r = delta_adjunction_check(&rep(B), &rep(B)).unwrap();
        assert_eq!((r.left, r.right, r.bijective), (4, 4, true));
        let zero: Eed = Arc::new(ExtEtaDiagram::zero());
        let r = delta_adjunction_check(&zero, &rep(B)).unwrap();
        assert_eq!((r.left, r.right, r.bijective), (1, 1, true));
    }
}
