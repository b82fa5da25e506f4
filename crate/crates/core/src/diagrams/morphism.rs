use std::sync::Arc;

use super::{Eed, EtaDiagram, ExtEtaDiagram, MooreDiagram};
use crate::error::{Error, Result};
use crate::ext::{middle_fill, realize, ExtClass};
use crate::fgab::{mod_two, two_torsion, HomSpace, HomSystem, Homomorphism};
use crate::int::Int;

/// `(f, g, h): N -> N'` with `hη = η'f`, `gχ = χ'h`, `fψ = ψ'g`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EedMorphism {
    pub source: Eed,
    pub target: Eed,
    pub f: Homomorphism,
    pub g: Homomorphism,
    pub h: Homomorphism,
}

/// `(f, h): P -> P'` with `hη = η'f`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EtaMorphism {
    pub source: Arc<EtaDiagram>,
    pub target: Arc<EtaDiagram>,
    pub f: Homomorphism,
    pub h: Homomorphism,
}

/// `(f, g): M -> M'` with `gφ = φ'f` and `fψ = ψ'g`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MooreMorphism {
    pub source: Arc<MooreDiagram>,
    pub target: Arc<MooreDiagram>,
    pub f: Homomorphism,
    pub g: Homomorphism,
}

fn eed_defect(n: &ExtEtaDiagram, n2: &ExtEtaDiagram, fgh: &[Homomorphism]) -> Vec<Homomorphism> {
    let (f, g, h) = (&fgh[0], &fgh[1], &fgh[2]);
    vec![
        h.compose(n.eta()).sub(&n2.eta().compose(f)),
        g.compose(n.chi()).sub(&n2.chi().compose(h)),
        f.compose(n.psi()).sub(&n2.psi().compose(g)),
    ]
}

fn shape(f: &Homomorphism, dom: &crate::FgGroup, cod: &crate::FgGroup, name: &str) -> Result<()> {
    if f.domain() != dom || f.codomain() != cod {
        return Err(Error::Mismatch(format!(
            "component {name} has the wrong groups"
        )));
    }
    Ok(())
}

impl EedMorphism {
    pub fn new(
        source: Eed,
        target: Eed,
        f: Homomorphism,
        g: Homomorphism,
        h: Homomorphism,
    ) -> Result<Self> {
        shape(&f, source.a(), target.a(), "f")?;
        shape(&g, source.b(), target.b(), "g")?;
        shape(&h, source.c(), target.c(), "h")?;
        let names = ["h eta = eta' f", "g chi = chi' h", "f psi = psi' g"];
        let d = eed_defect(&source, &target, &[f.clone(), g.clone(), h.clone()]);
        for (name, x) in names.iter().zip(&d) {
            if !x.is_zero() {
                return Err(Error::RelationFailed(name.to_string()));
            }
        }
        Ok(EedMorphism {
            source,
            target,
            f,
            g,
            h,
        })
    }

    pub(crate) fn unchecked(
        source: Eed,
        target: Eed,
        f: Homomorphism,
        g: Homomorphism,
        h: Homomorphism,
    ) -> Self {
        debug_assert!(
            eed_defect(&source, &target, &[f.clone(), g.clone(), h.clone()])
                .iter()
                .all(|x| x.is_zero())
        );
        EedMorphism {
            source,
            target,
            f,
            g,
            h,
        }
    }

    pub fn identity(n: &Eed) -> Self {
        EedMorphism {
            source: n.clone(),
            target: n.clone(),
            f: Homomorphism::identity(n.a()),
            g: Homomorphism::identity(n.b()),
            h: Homomorphism::identity(n.c()),
        }
    }

    pub fn zero(source: &Eed, target: &Eed) -> Self {
        EedMorphism {
            source: source.clone(),
            target: target.clone(),
            f: Homomorphism::zero(source.a(), target.a()),
            g: Homomorphism::zero(source.b(), target.b()),
            h: Homomorphism::zero(source.c(), target.c()),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &EedMorphism) -> Result<EedMorphism> {
        if inner.target != self.source {
            return Err(Error::Mismatch(
                "composing non-adjacent diagram morphisms".into(),
            ));
        }
        Ok(EedMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            f: self.f.compose(&inner.f),
            g: self.g.compose(&inner.g),
            h: self.h.compose(&inner.h),
        })
    }

    pub fn add(&self, other: &EedMorphism) -> Result<EedMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch(
                "adding morphisms between different diagrams".into(),
            ));
        }
        Ok(EedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            f: self.f.add(&other.f),
            g: self.g.add(&other.g),
            h: self.h.add(&other.h),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero() && self.h.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f.is_isomorphism() && self.g.is_isomorphism() && self.h.is_isomorphism()
    }

    pub fn components(&self) -> [Homomorphism; 3] {
        [self.f.clone(), self.g.clone(), self.h.clone()]
    }
}

impl EtaMorphism {
    pub fn new(
        source: Arc<EtaDiagram>,
        target: Arc<EtaDiagram>,
        f: Homomorphism,
        h: Homomorphism,
    ) -> Result<Self> {
        shape(&f, source.a(), target.a(), "f")?;
        shape(&h, source.c(), target.c(), "h")?;
        if h.compose(source.eta()) != target.eta().compose(&f) {
            return Err(Error::RelationFailed("h eta = eta' f".into()));
        }
        Ok(EtaMorphism {
            source,
            target,
            f,
            h,
        })
    }

    pub fn identity(p: &Arc<EtaDiagram>) -> Self {
        EtaMorphism {
            source: p.clone(),
            target: p.clone(),
            f: Homomorphism::identity(p.a()),
            h: Homomorphism::identity(p.c()),
        }
    }

    pub fn compose(&self, inner: &EtaMorphism) -> Result<EtaMorphism> {
        if inner.target != self.source {
            return Err(Error::Mismatch(
                "composing non-adjacent diagram morphisms".into(),
            ));
        }
        Ok(EtaMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            f: self.f.compose(&inner.f),
            h: self.h.compose(&inner.h),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.h.is_zero()
    }
}

impl MooreMorphism {
    pub fn new(
        source: Arc<MooreDiagram>,
        target: Arc<MooreDiagram>,
        f: Homomorphism,
        g: Homomorphism,
    ) -> Result<Self> {
        shape(&f, source.a(), target.a(), "f")?;
        shape(&g, source.b(), target.b(), "g")?;
        if g.compose(source.phi()) != target.phi().compose(&f) {
            return Err(Error::RelationFailed("g phi = phi' f".into()));
        }
        if f.compose(source.psi()) != target.psi().compose(&g) {
            return Err(Error::RelationFailed("f psi = psi' g".into()));
        }
        Ok(MooreMorphism {
            source,
            target,
            f,
            g,
        })
    }
}

/// `EED(N, N')` as a subgroup of `Hom(A,A') + Hom(B,B') + Hom(C,C')`.
pub fn eed_hom_system(n: &ExtEtaDiagram, n2: &ExtEtaDiagram) -> HomSystem {
    let spaces = vec![
        HomSpace::new(n.a(), n2.a()),
        HomSpace::new(n.b(), n2.b()),
        HomSpace::new(n.c(), n2.c()),
    ];
    HomSystem::new(spaces, |x| eed_defect(n, n2, x))
}

/// `ED(P, P')` as a subgroup of `Hom(A,A') + Hom(C,C')`.
pub fn eta_hom_system(p: &EtaDiagram, p2: &EtaDiagram) -> HomSystem {
    let spaces = vec![HomSpace::new(p.a(), p2.a()), HomSpace::new(p.c(), p2.c())];
    HomSystem::new(spaces, |x| {
        vec![x[1].compose(p.eta()).sub(&p2.eta().compose(&x[0]))]
    })
}

/// Every morphism `N -> N'`.
pub fn hom_set(n: &Eed, n2: &Eed) -> Result<Vec<EedMorphism>> {
    let sys = eed_hom_system(n, n2);
    let all = sys
        .elements()?
        .map(|c| {
            let [f, g, h]: [Homomorphism; 3] = c.try_into().expect("three components");
            EedMorphism::unchecked(n.clone(), n2.clone(), f, g, h)
        })
        .collect();
    Ok(all)
}

/// `ξ(u) = (0, χ' u ψ̄, 0)` for `u: A[2] -> C'/2`.
pub fn xi(n: &Eed, n2: &Eed, u: &Homomorphism) -> Result<EedMorphism> {
    let psi_bar = n
        .psi_bar()
        .ok_or_else(|| Error::RelationFailed("2psi = 0".into()))?;
    let chi_bar = n2
        .chi_bar()
        .ok_or_else(|| Error::RelationFailed("2chi = 0".into()))?;
    if u.domain() != psi_bar.codomain() || u.codomain() != chi_bar.domain() {
        return Err(Error::Mismatch("u must map A[2] to C'/2".into()));
    }
    let g = chi_bar.compose(u).compose(&psi_bar);
    Ok(EedMorphism::unchecked(
        n.clone(),
        n2.clone(),
        Homomorphism::zero(n.a(), n2.a()),
        g,
        Homomorphism::zero(n.c(), n2.c()),
    ))
}

pub fn pi(n: &ExtEtaDiagram) -> EtaDiagram {
    EtaDiagram {
        eta: n.eta().clone(),
    }
}

pub fn pi_mor(m: &EedMorphism) -> EtaMorphism {
    EtaMorphism {
        source: Arc::new(pi(&m.source)),
        target: Arc::new(pi(&m.target)),
        f: m.f.clone(),
        h: m.h.clone(),
    }
}

/// Some `g` completing an ED-morphism `(f, h)` between exact diagrams,
/// found as a fill between `C/2 -> B -> A[2]` and `C'/2 -> B' -> A'[2]`.
pub fn lift_along_pi(n: &Eed, n2: &Eed, m: &EtaMorphism) -> Result<EedMorphism> {
    if m.f.domain() != n.a()
        || m.f.codomain() != n2.a()
        || m.h.domain() != n.c()
        || m.h.codomain() != n2.c()
    {
        return Err(Error::Mismatch(
            "ED morphism does not match the diagrams".into(),
        ));
    }
    if m.h.compose(n.eta()) != n2.eta().compose(&m.f) {
        return Err(Error::RelationFailed("h eta = eta' f".into()));
    }
    let e = n.extension()?;
    let e2 = n2.extension()?;
    let g = middle_fill(&e, &e2, &m.h.mod_two(), &m.f.on_two_torsion())?.ok_or_else(|| {
        Error::NotExact("no middle map; the diagrams cannot both be exact".into())
    })?;
    EedMorphism::new(n.clone(), n2.clone(), m.f.clone(), g, m.h.clone())
}

/// An exact diagram over `A -η-> C`, with B realizing the class whose `Φ`
/// is `η̄`.
pub fn construct_eeed_over(p: &EtaDiagram) -> ExtEtaDiagram {
    let tors = two_torsion(p.a());
    let quot = mod_two(p.c());
    let eta_bar = quot.projection.compose(p.eta()).compose(&tors.inclusion);
    // A[2] and C/2 are killed by 2, so each coset is just the image of a
    // generator under η̄.
    let cosets: Vec<Vec<Int>> = (0..tors.group.ngens())
        .map(|k| eta_bar.matrix().column(k))
        .collect();
    let class = ExtClass::new(&tors.group, &quot.group, cosets).expect("shapes match");
    let e = realize(&class);
    let chi = e.i().compose(&quot.projection);
    let psi = tors.inclusion.compose(e.p());
    ExtEtaDiagram::unchecked(psi, p.eta().clone(), chi)
}

/// An isomorphism `N -> N'`, searching at most `limit` morphisms.
pub fn find_isomorphism(n: &Eed, n2: &Eed, limit: u64) -> Result<Option<EedMorphism>> {
    if n.a() != n2.a() || n.b() != n2.b() || n.c() != n2.c() {
        return Ok(None);
    }
    let sys = eed_hom_system(n, n2);
    if let Some(order) = sys.group().order() {
        if order > Int::from(limit) {
            return Err(Error::InfiniteHomSet(format!(
                "{} morphisms exceed the search limit {limit}",
                order
            )));
        }
    }
    for c in sys.elements()? {
        let [f, g, h]: [Homomorphism; 3] = c.try_into().expect("three components");
        if f.is_isomorphism() && g.is_isomorphism() && h.is_isomorphism() {
            return Ok(Some(EedMorphism::unchecked(n.clone(), n2.clone(), f, g, h)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::FgGroup;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn hom(a: &str, b: &str, m: &[i64]) -> Homomorphism {
        Homomorphism::from_i64(&g(a), &g(b), m).unwrap()
    }

    fn fb() -> Eed {
        Arc::new(
            ExtEtaDiagram::new(
                hom("Z/4", "Z/2", &[1]),
                hom("Z/2", "Z/2", &[1]),
                hom("Z/2", "Z/4", &[2]),
            )
            .unwrap(),
        )
    }

    #[test]
    fn endomorphisms_of_fb() {
        let n = fb();
        let all = hom_set(&n, &n).unwrap();
        assert_eq!(all.len(), 4);
        let zero = Arc::new(ExtEtaDiagram::zero());
        assert_eq!(hom_set(&zero, &n).unwrap().len(), 1);
    }

    #[test]
    fn xi_examples() {
        let n = fb();
        let u = Homomorphism::identity(&g("Z/2"));
        let m = xi(&n, &n, &u).unwrap();
        assert_eq!(m.g, hom("Z/4", "Z/4", &[2]));
        assert!(pi_mor(&m).is_zero());
        let z = xi(&n, &n, &Homomorphism::zero(&g("Z/2"), &g("Z/2"))).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn lifting_identity() {
        let n = fb();
        let p = Arc::new(pi(&n));
        let lift = lift_along_pi(&n, &n, &EtaMorphism::identity(&p)).unwrap();
        assert_eq!(pi_mor(&lift).f, Homomorphism::identity(n.a()));
    }

    #[test]
    fn construction_over_eta_diagrams() {
        let p = EtaDiagram::new(hom("Z/2", "Z/2", &[1])).unwrap();
        let n = construct_eeed_over(&p);
        assert_eq!(n.b(), &g("Z/4"));
        assert!(n.is_exact());
        assert_eq!(pi(&n), p);
        let n = Arc::new(n);
        assert!(find_isomorphism(&n, &fb(), 1000).unwrap().is_some());

        // η̄ vanishes on A[2] = {0, 2}, so the extension splits.
        let p = EtaDiagram::new(hom("Z/4", "Z/2", &[1])).unwrap();
        let n = construct_eeed_over(&p);
        assert_eq!(n.b(), &g("Z/2+Z/2"));
        assert!(n.is_exact());
        assert_eq!(pi(&n), p);

        let p = EtaDiagram::new(Homomorphism::zero(&g("Z/2"), &g("Z/6"))).unwrap();
        let n = construct_eeed_over(&p);
        assert_eq!(n.b(), &g("Z/2+Z/2"));
        assert!(super::super::eeed_phi_check(&n).unwrap().holds);
    }
}
