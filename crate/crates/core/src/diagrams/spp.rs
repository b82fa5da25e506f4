use std::sync::Arc;

use super::{Eed, EedMorphism, ExtEtaDiagram};
use crate::error::{Error, Result};
use crate::ext::{phi_of_class, ExtClass};
use crate::fgab::{mod_two, two_torsion, DirectSum, FgGroup, Homomorphism};

/// A pair `(A, C)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SppObject {
    pub a: FgGroup,
    pub c: FgGroup,
}

/// `(f, h, u)` with `u: A_0[2] -> C_1/2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SppMorphism {
    pub source: SppObject,
    pub target: SppObject,
    pub f: Homomorphism,
    pub h: Homomorphism,
    pub u: Homomorphism,
}

/// `(f, h, u)` with `u ∈ Ext(A_0, C_1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SppPlusMorphism {
    pub source: SppObject,
    pub target: SppObject,
    pub f: Homomorphism,
    pub h: Homomorphism,
    pub u: ExtClass,
}

impl SppObject {
    pub fn new(a: FgGroup, c: FgGroup) -> Self {
        SppObject { a, c }
    }
}

fn ends(s: &SppObject, t: &SppObject, f: &Homomorphism, h: &Homomorphism) -> Result<()> {
    if f.domain() != &s.a || f.codomain() != &t.a || h.domain() != &s.c || h.codomain() != &t.c {
        return Err(Error::Mismatch("f or h does not match the objects".into()));
    }
    Ok(())
}

impl SppMorphism {
    pub fn new(
        source: SppObject,
        target: SppObject,
        f: Homomorphism,
        h: Homomorphism,
        u: Homomorphism,
    ) -> Result<Self> {
        ends(&source, &target, &f, &h)?;
        if u.domain() != &two_torsion(&source.a).group || u.codomain() != &mod_two(&target.c).group
        {
            return Err(Error::Mismatch("u must map A_0[2] to C_1/2".into()));
        }
        Ok(SppMorphism {
            source,
            target,
            f,
            h,
            u,
        })
    }

    pub fn identity(x: &SppObject) -> Self {
        SppMorphism {
            source: x.clone(),
            target: x.clone(),
            f: Homomorphism::identity(&x.a),
            h: Homomorphism::identity(&x.c),
            u: Homomorphism::zero(&two_torsion(&x.a).group, &mod_two(&x.c).group),
        }
    }

    /// `(f_1 f_0, h_1 h_0, h̄_1 u_0 + u_1 f_0[2])` for `self = m_1`.
    pub fn compose(&self, m0: &SppMorphism) -> Result<SppMorphism> {
        if m0.target != self.source {
            return Err(Error::Mismatch(
                "composing non-adjacent SPP morphisms".into(),
            ));
        }
        Ok(SppMorphism {
            source: m0.source.clone(),
            target: self.target.clone(),
            f: self.f.compose(&m0.f),
            h: self.h.compose(&m0.h),
            u: self
                .h
                .mod_two()
                .compose(&m0.u)
                .add(&self.u.compose(&m0.f.on_two_torsion())),
        })
    }
}

impl SppPlusMorphism {
    pub fn new(
        source: SppObject,
        target: SppObject,
        f: Homomorphism,
        h: Homomorphism,
        u: ExtClass,
    ) -> Result<Self> {
        ends(&source, &target, &f, &h)?;
        if u.u() != &source.a || u.v() != &target.c {
            return Err(Error::Mismatch("u must lie in Ext(A_0, C_1)".into()));
        }
        Ok(SppPlusMorphism {
            source,
            target,
            f,
            h,
            u,
        })
    }

    pub fn identity(x: &SppObject) -> Self {
        SppPlusMorphism {
            source: x.clone(),
            target: x.clone(),
            f: Homomorphism::identity(&x.a),
            h: Homomorphism::identity(&x.c),
            u: ExtClass::zero(&x.a, &x.c),
        }
    }

    /// `(f_1 f_0, h_1 h_0, (h_1)_* u_0 + f_0^* u_1)` for `self = m_1`.
    pub fn compose(&self, m0: &SppPlusMorphism) -> Result<SppPlusMorphism> {
        if m0.target != self.source {
            return Err(Error::Mismatch(
                "composing non-adjacent SPP+ morphisms".into(),
            ));
        }
        let u = m0.u.pushforward(&self.h)?.add(&self.u.pullback(&m0.f)?);
        Ok(SppPlusMorphism {
            source: m0.source.clone(),
            target: self.target.clone(),
            f: self.f.compose(&m0.f),
            h: self.h.compose(&m0.h),
            u,
        })
    }

    /// The functor to SPP applying `Φ` to the Ext component.
    pub fn to_spp(&self) -> SppMorphism {
        SppMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            f: self.f.clone(),
            h: self.h.clone(),
            u: phi_of_class(&self.u),
        }
    }
}

fn h_middle(x: &SppObject) -> DirectSum {
    DirectSum::new(&[mod_two(&x.c).group, two_torsion(&x.a).group])
}

/// `H(A, C) = (C/2 + A[2] -ψ-> A -0-> C -χ-> C/2 + A[2])`.
pub fn h_diagram(x: &SppObject) -> ExtEtaDiagram {
    let b = h_middle(x);
    let psi = two_torsion(&x.a).inclusion.compose(&b.projection(1));
    let chi = b.injection(0).compose(&mod_two(&x.c).projection);
    ExtEtaDiagram::unchecked(psi, Homomorphism::zero(&x.a, &x.c), chi)
}

/// `H(f, h, u) = (f, g, h)` with `g(c̄, a) = (h̄ c̄ + u a, f a)`.
pub fn h_mor(m: &SppMorphism) -> EedMorphism {
    let b0 = h_middle(&m.source);
    let b1 = h_middle(&m.target);
    let g = b1
        .injection(0)
        .compose(&m.h.mod_two())
        .compose(&b0.projection(0))
        .add(&b1.injection(0).compose(&m.u).compose(&b0.projection(1)))
        .add(
            &b1.injection(1)
                .compose(&m.f.on_two_torsion())
                .compose(&b0.projection(1)),
        );
    let n0: Eed = Arc::new(h_diagram(&m.source));
    let n1: Eed = Arc::new(h_diagram(&m.target));
    EedMorphism::unchecked(n0, n1, m.f.clone(), g, m.h.clone())
}

/// Inverse of `h_mor` on hom-sets: `u` is the `A_0[2] -> C_1/2` block of `g`.
pub fn h_mor_inverse(
    source: &SppObject,
    target: &SppObject,
    m: &EedMorphism,
) -> Result<SppMorphism> {
    let b0 = h_middle(source);
    let b1 = h_middle(target);
    if m.g.domain() != &b0.group || m.g.codomain() != &b1.group {
        return Err(Error::Mismatch(
            "morphism is not between the H diagrams".into(),
        ));
    }
    let u = b1.projection(0).compose(&m.g).compose(&b0.injection(1));
    SppMorphism::new(source.clone(), target.clone(), m.f.clone(), m.h.clone(), u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::hom_set;
    use crate::ext::{phi, realize};
    use crate::int::int;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn h_of_two_two() {
        let x = SppObject::new(g("Z/2"), g("Z/2"));
        let n = h_diagram(&x);
        assert_eq!(n.b(), &g("Z/2+Z/2"));
        assert!(n.eta().is_zero());
        assert!(n.is_exact());
        let id = h_mor(&SppMorphism::identity(&x));
        assert_eq!(id, EedMorphism::identity(&id.source));
    }

    #[test]
    fn h_is_bijective_on_homs() {
        let x0 = SppObject::new(g("Z/4"), g("Z/2"));
        let x1 = SppObject::new(g("Z/2"), g("Z/6"));
        let n0 = Arc::new(h_diagram(&x0));
        let n1 = Arc::new(h_diagram(&x1));
        let all = hom_set(&n0, &n1).unwrap();
        // |Hom(Z/4,Z/2)| |Hom(Z/2,Z/6)| |Hom(Z/2,Z/2)|
        assert_eq!(all.len(), 8);
        for m in &all {
            let s = h_mor_inverse(&x0, &x1, m).unwrap();
            assert_eq!(&h_mor(&s), m);
        }
    }

    #[test]
    fn spp_plus_identity_class() {
        let x = SppObject::new(g("Z/2"), g("Z/2"));
        let e1 = ExtClass::new(&x.a, &x.c, vec![vec![int(1)]]).unwrap();
        let m = SppPlusMorphism::new(
            x.clone(),
            x.clone(),
            Homomorphism::identity(&x.a),
            Homomorphism::identity(&x.c),
            e1.clone(),
        )
        .unwrap();
        let s = m.to_spp();
        assert_eq!(s.u, Homomorphism::identity(&g("Z/2")));
        assert_eq!(s.u, phi(&realize(&e1)).unwrap());
        let id = SppPlusMorphism::identity(&x);
        assert_eq!(id.compose(&m).unwrap(), m);
        assert_eq!(m.compose(&id).unwrap(), m);
    }
}
