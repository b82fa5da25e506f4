use std::sync::Arc;

use super::{Eed, EedMorphism, EtaMorphism, ExtEtaDiagram, MooreDiagram, MooreMorphism};
use crate::error::{Error, Result};
use crate::fgab::{mod_two, DirectSum, FgGroup, HomSpace, HomSystem, Homomorphism};
use crate::int::{divides, exact_div, int, is_zero};
use crate::matrix::Matrix;

/// An exact Moore diagram on `A`, built one invariant factor at a time:
///
/// | factor        | block       | φ               | ψ               |
/// |---------------|-------------|-----------------|-----------------|
/// | odd           | 0           |                 |                 |
/// | `d ≡ 2 mod 4` | Z/4         | `a ↦ 2a`        | `b ↦ (d/2) b`   |
/// | `d ≡ 0 mod 4` | Z/2 + Z/2   | `a ↦ (a, 0)`    | `(x,y) ↦ (d/2) y` |
/// | Z             | Z/2         | `a ↦ a`         | 0               |
///
/// For `d ≡ 2 mod 4` the block `A/2 + A[2] = Z/2 + Z/2` would have
/// `φψ(0,1) = (1,0) ≠ 0`, so the nonsplit extension is used instead.
pub fn standard_emd(a: &FgGroup) -> MooreDiagram {
    let mut blocks = Vec::new();
    // (factor index, φ_k, ψ_k) with φ_k: Z/d -> block, ψ_k: block -> Z/d
    let mut parts = Vec::new();
    for (k, d) in a.factors().iter().enumerate() {
        let cyc = FgGroup::canonical_unchecked(vec![d.clone()]);
        let (block, phi, psi): (FgGroup, Vec<i64>, Vec<crate::Int>) = if is_zero(d) {
            (FgGroup::cyclic(2), vec![1], vec![int(0)])
        } else if !divides(&int(2), d) {
            continue;
        } else if divides(&int(4), d) {
            (
                FgGroup::from_orders_i64(&[2, 2]),
                vec![1, 0],
                vec![int(0), exact_div(d, &int(2))],
            )
        } else {
            (FgGroup::cyclic(4), vec![2], vec![exact_div(d, &int(2))])
        };
        let phi_k = Homomorphism::from_i64(&cyc, &block, &phi).expect("well-defined block");
        let psi_k = Homomorphism::new(
            &block,
            &cyc,
            Matrix::from_rows(vec![psi.clone()], psi.len()),
        )
        .expect("well-defined block");
        blocks.push(block);
        parts.push((k, phi_k, psi_k));
    }
    let b = DirectSum::new(&blocks);
    let mut phi = Homomorphism::zero(a, &b.group);
    let mut psi = Homomorphism::zero(&b.group, a);
    for (slot, (k, phi_k, psi_k)) in parts.iter().enumerate() {
        let cyc = phi_k.domain();
        let mut row = Matrix::zeros(1, a.ngens());
        row[(0, *k)] = int(1);
        let proj = Homomorphism::unchecked(a, cyc, row.clone());
        let incl = Homomorphism::unchecked(cyc, a, row.transpose());
        phi = phi.add(&b.injection(slot).compose(phi_k).compose(&proj));
        psi = psi.add(&incl.compose(psi_k).compose(&b.projection(slot)));
    }
    MooreDiagram::unchecked(phi, psi)
}

/// `E(M) = (B -ψ-> A -proj-> A/2 -φ̄-> B)`.
pub fn emd_to_eeed(m: &MooreDiagram) -> ExtEtaDiagram {
    let q = mod_two(m.a());
    let chi = m
        .phi()
        .through_section(&q)
        .expect("2phi = 0 on a Moore diagram");
    ExtEtaDiagram::unchecked(m.psi().clone(), q.projection, chi)
}

/// A diagram of EMD′ as a Moore diagram, with the isomorphism
/// `A/2 -> C` induced by `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmdPrime {
    pub moore: MooreDiagram,
    pub witness: Homomorphism,
}

/// `η` is surjective with kernel `2A`; kernels are compared as subgroups
/// by mutual inclusion, so free factors are handled too.
fn emd_prime_witness(n: &ExtEtaDiagram) -> Result<Homomorphism> {
    let eta = n.eta();
    if !eta.is_surjective() {
        return Err(Error::NotInEmdPrime("eta is not surjective".into()));
    }
    let two = Homomorphism::identity(n.a()).scale(&int(2));
    if !eta.kernel().inclusion.same_image(&two) {
        return Err(Error::NotInEmdPrime("ker eta differs from 2A".into()));
    }
    let w = eta.through_section(&mod_two(n.a())).expect("eta kills 2A");
    debug_assert!(w.is_isomorphism());
    Ok(w)
}

/// `E⁻¹(N) = (A -χη-> B -ψ-> A)` for `N` in EMD′.
pub fn eeed_to_emd(n: &ExtEtaDiagram) -> Result<EmdPrime> {
    let witness = emd_prime_witness(n)?;
    let moore = MooreDiagram::unchecked(n.chi().compose(n.eta()), n.psi().clone());
    Ok(EmdPrime { moore, witness })
}

/// `E(f, g) = (f, g, f/2)`.
pub fn emd_mor_to_eeed(m: &MooreMorphism) -> EedMorphism {
    EedMorphism::unchecked(
        Arc::new(emd_to_eeed(&m.source)),
        Arc::new(emd_to_eeed(&m.target)),
        m.f.clone(),
        m.g.clone(),
        m.f.mod_two(),
    )
}

/// Forgets `h` from a morphism between diagrams of EMD′.
pub fn eeed_mor_to_emd(m: &EedMorphism) -> Result<MooreMorphism> {
    let s = eeed_to_emd(&m.source)?;
    let t = eeed_to_emd(&m.target)?;
    MooreMorphism::new(
        Arc::new(s.moore),
        Arc::new(t.moore),
        m.f.clone(),
        m.g.clone(),
    )
}

fn moore_defect(m: &MooreDiagram, m2: &MooreDiagram, fg: &[Homomorphism]) -> Vec<Homomorphism> {
    let (f, g) = (&fg[0], &fg[1]);
    vec![
        g.compose(m.phi()).sub(&m2.phi().compose(f)),
        f.compose(m.psi()).sub(&m2.psi().compose(g)),
    ]
}

pub fn moore_hom_system(m: &MooreDiagram, m2: &MooreDiagram) -> HomSystem {
    let spaces = vec![HomSpace::new(m.a(), m2.a()), HomSpace::new(m.b(), m2.b())];
    HomSystem::new(spaces, |x| moore_defect(m, m2, x))
}

/// Every morphism `M -> M'`.
pub fn moore_hom_set(m: &Arc<MooreDiagram>, m2: &Arc<MooreDiagram>) -> Result<Vec<MooreMorphism>> {
    let sys = moore_hom_system(m, m2);
    let all = sys
        .elements()?
        .map(|c| {
            let [f, g]: [Homomorphism; 2] = c.try_into().expect("two components");
            MooreMorphism {
                source: m.clone(),
                target: m2.clone(),
                f,
                g,
            }
        })
        .collect();
    Ok(all)
}

/// `ED(πN, πN') -> Hom(A, A')`, which only drops `h`.
pub fn ed_to_hom(n: &Eed, m: &EtaMorphism) -> Result<Homomorphism> {
    emd_prime_witness(n)?;
    if m.f.domain() != n.a() || m.h.domain() != n.c() {
        return Err(Error::Mismatch(
            "ED morphism does not start at pi(N)".into(),
        ));
    }
    Ok(m.f.clone())
}

/// The inverse of `ed_to_hom`: `h` is determined by `h η = η' f`.
pub fn hom_to_ed(n: &Eed, n2: &Eed, f: &Homomorphism) -> Result<EtaMorphism> {
    let witness = emd_prime_witness(n)?;
    if f.domain() != n.a() || f.codomain() != n2.a() {
        return Err(Error::Mismatch("f must map A to A'".into()));
    }
    let down = n2
        .eta()
        .compose(f)
        .through_section(&mod_two(n.a()))
        .expect("2 eta' = 0");
    let h = down.compose(&witness.inverse().expect("witness is an isomorphism"));
    EtaMorphism::new(
        Arc::new(super::pi(n)),
        Arc::new(super::pi(n2)),
        f.clone(),
        h,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{eta_hom_system, pi};

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn standard_examples() {
        let m = standard_emd(&g("Z/4"));
        assert_eq!(m.b(), &g("Z/2+Z/2"));
        assert!(m.validate().ok() && m.is_exact());
        let m = standard_emd(&g("Z"));
        assert_eq!(m.b(), &g("Z/2"));
        assert!(m.psi().is_zero() && m.is_exact());
        let m = standard_emd(&g("0"));
        assert!(m.b().is_trivial());
        let m = standard_emd(&g("Z/2"));
        assert_eq!(m.b(), &g("Z/4"));
        assert!(m.validate().ok() && m.is_exact());
        for s in ["Z/6", "Z/2+Z/4", "Z/3+Z", "Z/2+Z/2+Z/8", "Z/12+Z"] {
            let m = standard_emd(&g(s));
            assert!(m.validate().ok() && m.is_exact(), "{s}");
        }
    }

    #[test]
    fn round_trips() {
        let m = standard_emd(&g("Z/4"));
        let n = emd_to_eeed(&m);
        assert_eq!(n.c(), &g("Z/2"));
        let back = eeed_to_emd(&n).unwrap();
        assert_eq!(back.moore, m);
        assert_eq!(back.witness, Homomorphism::identity(&g("Z/2")));

        let zero = MooreDiagram::new(
            Homomorphism::zero(&g("0"), &g("0")),
            Homomorphism::zero(&g("0"), &g("0")),
        )
        .unwrap();
        assert!(emd_to_eeed(&zero).is_zero_diagram());

        let fb = ExtEtaDiagram::new(
            Homomorphism::from_i64(&g("Z/4"), &g("Z/2"), &[1]).unwrap(),
            Homomorphism::identity(&g("Z/2")),
            Homomorphism::from_i64(&g("Z/2"), &g("Z/4"), &[2]).unwrap(),
        )
        .unwrap();
        let m = eeed_to_emd(&fb).unwrap().moore;
        assert_eq!((m.a(), m.b()), (&g("Z/2"), &g("Z/4")));
    }

    #[test]
    fn not_in_emd_prime() {
        let h = super::super::h_diagram(&super::super::SppObject::new(g("Z/2"), g("Z/2")));
        assert!(matches!(eeed_to_emd(&h), Err(Error::NotInEmdPrime(_))));
    }

    #[test]
    fn lemma_bijection_on_z4() {
        let n: Eed = Arc::new(emd_to_eeed(&standard_emd(&g("Z/4"))));
        let sys = eta_hom_system(&pi(&n), &pi(&n));
        assert_eq!(sys.group().order(), Some(int(4)));
        for c in sys.elements().unwrap() {
            let m = EtaMorphism::new(
                Arc::new(pi(&n)),
                Arc::new(pi(&n)),
                c[0].clone(),
                c[1].clone(),
            )
            .unwrap();
            let f = ed_to_hom(&n, &m).unwrap();
            assert_eq!(hom_to_ed(&n, &n, &f).unwrap(), m);
        }
        let id = hom_to_ed(&n, &n, &Homomorphism::identity(n.a())).unwrap();
        assert_eq!(id.h, Homomorphism::identity(n.c()));
        let z = hom_to_ed(&n, &n, &Homomorphism::zero(n.a(), n.a())).unwrap();
        assert!(z.h.is_zero());
    }

    #[test]
    fn moore_hom_counts() {
        // |EMD(M, M')| = |Hom(A[2], A'/2)| |Hom(A, A')|
        let m = Arc::new(standard_emd(&g("Z/4")));
        assert_eq!(moore_hom_set(&m, &m).unwrap().len(), 2 * 4);
        let m2 = Arc::new(standard_emd(&g("Z/2")));
        assert_eq!(moore_hom_set(&m, &m2).unwrap().len(), 2 * 2);
    }
}
