use std::sync::Arc;

use super::{h_diagram, pi, EedMorphism, EtaDiagram, ExtEtaDiagram, SppObject};
use crate::error::{Error, Result};
use crate::ext::middle_fill;
use crate::fgab::{FgGroup, Homomorphism};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Tag {
    ChiZero,
    PsiZero,
    BZero,
    CZero,
    AZero,
    EtaZero,
}

impl Tag {
    pub fn name(self) -> &'static str {
        match self {
            Tag::ChiZero => "chi=0",
            Tag::PsiZero => "psi=0",
            Tag::BZero => "B=0",
            Tag::CZero => "C=0",
            Tag::AZero => "A=0",
            Tag::EtaZero => "eta=0",
        }
    }
}

/// The simpler object a degenerate diagram is equivalent to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    /// `π N`, for `χ = 0`, `ψ = 0` or `B = 0`.
    Eta(EtaDiagram),
    /// `A` when `C = 0`, `C` when `A = 0`.
    Group(FgGroup),
    /// `(A, C)` with an isomorphism `H(A, C) -> N`, for `η = 0`.
    Spp { obj: SppObject, iso: EedMorphism },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneration {
    pub tag: Tag,
    pub reduced: Reduced,
}

/// Every degenerate case that applies to an exact diagram.
pub fn classify_degenerate(n: &ExtEtaDiagram) -> Result<Vec<Degeneration>> {
    let ext = n.extension()?;
    let mut out = Vec::new();
    let mut push = |tag, reduced| out.push(Degeneration { tag, reduced });
    if n.chi().is_zero() {
        push(Tag::ChiZero, Reduced::Eta(pi(n)));
    }
    if n.psi().is_zero() {
        push(Tag::PsiZero, Reduced::Eta(pi(n)));
    }
    if n.b().is_trivial() {
        push(Tag::BZero, Reduced::Eta(pi(n)));
    }
    if n.c().is_trivial() {
        push(Tag::CZero, Reduced::Group(n.a().clone()));
    }
    if n.a().is_trivial() {
        push(Tag::AZero, Reduced::Group(n.c().clone()));
    }
    if n.eta().is_zero() {
        let obj = SppObject::new(n.a().clone(), n.c().clone());
        let h = Arc::new(h_diagram(&obj));
        // The extension of N is Φ⁻¹(η̄) = 0, so it splits compatibly with H's.
        let g = middle_fill(
            &h.extension()?,
            &ext,
            &Homomorphism::identity(ext.v()),
            &Homomorphism::identity(ext.u()),
        )?
        .ok_or_else(|| Error::NotExact("eta = 0 but the extension does not split".into()))?;
        let iso = EedMorphism::new(
            h,
            Arc::new(n.clone()),
            Homomorphism::identity(n.a()),
            g,
            Homomorphism::identity(n.c()),
        )?;
        push(Tag::EtaZero, Reduced::Spp { obj, iso });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{mod_two, two_torsion};

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn tags(n: &ExtEtaDiagram) -> Vec<Tag> {
        classify_degenerate(n)
            .unwrap()
            .into_iter()
            .map(|d| d.tag)
            .collect()
    }

    #[test]
    fn split_pair() {
        let obj = SppObject::new(g("Z/2"), g("Z/3"));
        let n = h_diagram(&obj);
        let ds = classify_degenerate(&n).unwrap();
        let spp = ds.iter().find(|d| d.tag == Tag::EtaZero).unwrap();
        match &spp.reduced {
            Reduced::Spp { obj: o, iso } => {
                assert_eq!(o, &obj);
                assert!(iso.is_isomorphism());
            }
            r => panic!("{r:?}"),
        }
        // C/2 = 0 forces χ = 0 with ψ: B ≅ A[2].
        assert!(tags(&n).contains(&Tag::ChiZero));
        assert!(mod_two(n.c()).group.is_trivial());
        assert!(n.psi_bar().unwrap().is_isomorphism());
        assert_eq!(n.b(), &two_torsion(n.a()).group);
    }

    #[test]
    fn fb_is_not_degenerate() {
        let fb = ExtEtaDiagram::new(
            Homomorphism::from_i64(&g("Z/4"), &g("Z/2"), &[1]).unwrap(),
            Homomorphism::identity(&g("Z/2")),
            Homomorphism::from_i64(&g("Z/2"), &g("Z/4"), &[2]).unwrap(),
        )
        .unwrap();
        assert!(tags(&fb).is_empty());
    }

    #[test]
    fn zero_diagram_has_every_tag() {
        assert_eq!(tags(&ExtEtaDiagram::zero()).len(), 6);
    }

    #[test]
    fn nontrivial_splitting() {
        let obj = SppObject::new(g("Z/4+Z"), g("Z/2+Z/8"));
        let n = h_diagram(&obj);
        let ds = classify_degenerate(&n).unwrap();
        assert_eq!(ds.len(), 1);
    }
}
