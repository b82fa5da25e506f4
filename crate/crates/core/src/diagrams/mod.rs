//! Moore diagrams, eta-diagrams and extended eta-diagrams with their
//! morphisms.

mod degenerate;
mod moore;
mod morphism;
mod spp;

pub use degenerate::{classify_degenerate, Degeneration, Reduced, Tag};
pub use moore::{
    ed_to_hom, eeed_mor_to_emd, eeed_to_emd, emd_mor_to_eeed, emd_to_eeed, hom_to_ed,
    moore_hom_set, moore_hom_system, standard_emd, EmdPrime,
};
pub use morphism::{
    construct_eeed_over, eed_hom_system, eta_hom_system, find_isomorphism, hom_set, lift_along_pi,
    pi, pi_mor, xi, EedMorphism, EtaMorphism, MooreMorphism,
};
pub use spp::{h_diagram, h_mor, h_mor_inverse, SppMorphism, SppObject, SppPlusMorphism};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::{phi, six_term, Extension};
use crate::fgab::{is_exact_at, mod_two, two_torsion, FgGroup, Homomorphism};

/// `A -η-> C` with `2η = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EtaDiagram {
    eta: Homomorphism,
}

impl EtaDiagram {
    pub fn new(eta: Homomorphism) -> Result<Self> {
        if !eta.scale(&crate::int::int(2)).is_zero() {
            return Err(Error::RelationFailed("2eta = 0".into()));
        }
        Ok(EtaDiagram { eta })
    }

    pub fn a(&self) -> &FgGroup {
        self.eta.domain()
    }

    pub fn c(&self) -> &FgGroup {
        self.eta.codomain()
    }

    pub fn eta(&self) -> &Homomorphism {
        &self.eta
    }
}

/// `A -φ-> B -ψ-> A` with `ψφ = 0` and `φψ = 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MooreDiagram {
    phi: Homomorphism,
    psi: Homomorphism,
}

/// `B -ψ-> A -η-> C -χ-> B` with `2η = 0`, `ψχ = 0`, `χηψ = 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtEtaDiagram {
    psi: Homomorphism,
    eta: Homomorphism,
    chi: Homomorphism,
}

pub type Eed = Arc<ExtEtaDiagram>;

/// Outcome of checking every defining relation of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<(String, bool)>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, b)| *b)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|(_, b)| !b)
            .map(|(n, _)| n.as_str())
    }

    fn into_result(self) -> Result<()> {
        match self.first_failure() {
            Some(n) => Err(Error::RelationFailed(n.to_string())),
            None => Ok(()),
        }
    }
}

fn times(f: &Homomorphism, k: i64) -> Homomorphism {
    f.scale(&crate::int::int(k))
}

fn check_shape(f: &Homomorphism, dom: &FgGroup, cod: &FgGroup, name: &str) -> Result<()> {
    if f.domain() != dom || f.codomain() != cod {
        return Err(Error::Mismatch(format!(
            "{name} goes {} -> {}, expected {} -> {}",
            f.domain(),
            f.codomain(),
            dom,
            cod
        )));
    }
    Ok(())
}

impl MooreDiagram {
    pub fn new(phi: Homomorphism, psi: Homomorphism) -> Result<Self> {
        let d = Self::from_maps(phi, psi)?;
        d.validate().into_result()?;
        Ok(d)
    }

    /// Checks only that the maps fit together, not the relations.
    pub fn from_maps(phi: Homomorphism, psi: Homomorphism) -> Result<Self> {
        check_shape(&psi, phi.codomain(), phi.domain(), "psi")?;
        Ok(MooreDiagram { phi, psi })
    }

    pub(crate) fn unchecked(phi: Homomorphism, psi: Homomorphism) -> Self {
        let d = MooreDiagram { phi, psi };
        debug_assert!(d.validate().ok());
        d
    }

    pub fn a(&self) -> &FgGroup {
        self.phi.domain()
    }

    pub fn b(&self) -> &FgGroup {
        self.phi.codomain()
    }

    pub fn phi(&self) -> &Homomorphism {
        &self.phi
    }

    pub fn psi(&self) -> &Homomorphism {
        &self.psi
    }

    pub fn validate(&self) -> ValidationReport {
        let two_b = times(&Homomorphism::identity(self.b()), 2);
        ValidationReport {
            checks: vec![
                ("psi phi = 0".into(), self.psi.compose(&self.phi).is_zero()),
                ("phi psi = 2".into(), self.phi.compose(&self.psi) == two_b),
            ],
        }
    }

    /// `A/2 -> B -> A[2]` is short exact.
    pub fn is_exact(&self) -> bool {
        let (Some(phi_bar), Some(psi_bar)) = (
            self.phi.through_section(&mod_two(self.a())),
            self.psi.corestrict(&two_torsion(self.a()).inclusion),
        ) else {
            return false;
        };
        phi_bar.is_injective() && psi_bar.is_surjective() && is_exact_at(&phi_bar, &psi_bar)
    }
}

impl ExtEtaDiagram {
    pub fn new(psi: Homomorphism, eta: Homomorphism, chi: Homomorphism) -> Result<Self> {
        let d = Self::from_maps(psi, eta, chi)?;
        d.validate().into_result()?;
        Ok(d)
    }

    /// Checks only that the maps fit together, not the relations.
    pub fn from_maps(psi: Homomorphism, eta: Homomorphism, chi: Homomorphism) -> Result<Self> {
        check_shape(&eta, psi.codomain(), eta.codomain(), "eta")?;
        check_shape(&chi, eta.codomain(), psi.domain(), "chi")?;
        Ok(ExtEtaDiagram { psi, eta, chi })
    }

    pub(crate) fn unchecked(psi: Homomorphism, eta: Homomorphism, chi: Homomorphism) -> Self {
        let d = ExtEtaDiagram { psi, eta, chi };
        debug_assert!(d.validate().ok(), "{:?}", d.validate());
        d
    }

    pub fn zero() -> Self {
        let z = FgGroup::trivial();
        let m = Homomorphism::zero(&z, &z);
        ExtEtaDiagram::unchecked(m.clone(), m.clone(), m)
    }

    pub fn a(&self) -> &FgGroup {
        self.eta.domain()
    }

    pub fn b(&self) -> &FgGroup {
        self.psi.domain()
    }

    pub fn c(&self) -> &FgGroup {
        self.eta.codomain()
    }

    pub fn psi(&self) -> &Homomorphism {
        &self.psi
    }

    pub fn eta(&self) -> &Homomorphism {
        &self.eta
    }

    pub fn chi(&self) -> &Homomorphism {
        &self.chi
    }

    pub fn is_finite(&self) -> bool {
        self.a().is_finite() && self.b().is_finite() && self.c().is_finite()
    }

    pub fn is_zero_diagram(&self) -> bool {
        self.a().is_trivial() && self.b().is_trivial() && self.c().is_trivial()
    }

    /// The defining relations, followed by the consequences `2ψ = 0`,
    /// `2χ = 0` and `4 = 0` on B; a failing consequence with passing
    /// relations would be an internal error.
    pub fn validate(&self) -> ValidationReport {
        let id_b = Homomorphism::identity(self.b());
        ValidationReport {
            checks: vec![
                ("2eta = 0".into(), times(&self.eta, 2).is_zero()),
                ("psi chi = 0".into(), self.psi.compose(&self.chi).is_zero()),
                (
                    "chi eta psi = 2".into(),
                    self.chi.compose(&self.eta).compose(&self.psi) == times(&id_b, 2),
                ),
                ("2psi = 0".into(), times(&self.psi, 2).is_zero()),
                ("2chi = 0".into(), times(&self.chi, 2).is_zero()),
                ("4 = 0 on B".into(), times(&id_b, 4).is_zero()),
            ],
        }
    }

    /// `χ̄: C/2 -> B`.
    pub fn chi_bar(&self) -> Option<Homomorphism> {
        self.chi.through_section(&mod_two(self.c()))
    }

    /// `ψ̄: B -> A[2]`.
    pub fn psi_bar(&self) -> Option<Homomorphism> {
        self.psi.corestrict(&two_torsion(self.a()).inclusion)
    }

    /// `η̄: A[2] -> A -> C -> C/2`.
    pub fn eta_bar(&self) -> Homomorphism {
        mod_two(self.c())
            .projection
            .compose(&self.eta)
            .compose(&two_torsion(self.a()).inclusion)
    }

    /// `C/2 -> B -> A[2]` is short exact.
    pub fn is_exact(&self) -> bool {
        self.extension().is_ok()
    }

    /// The extension `C/2 -> B -> A[2]` of an exact diagram.
    pub fn extension(&self) -> Result<Extension> {
        let (Some(chi_bar), Some(psi_bar)) = (self.chi_bar(), self.psi_bar()) else {
            return Err(Error::NotExact("2chi or 2psi is nonzero".into()));
        };
        Extension::new(chi_bar, psi_bar)
    }
}

/// Result of comparing `Φ(C/2 -> B -> A[2])` with `η̄`.
#[derive(Clone, Debug)]
pub struct PhiCheck {
    pub holds: bool,
    pub six_term_exact: bool,
    /// A generator of `A[2]` on which the two maps differ.
    pub counterexample: Option<Vec<crate::Int>>,
}

pub fn eeed_phi_check(n: &ExtEtaDiagram) -> Result<PhiCheck> {
    let e = n.extension()?;
    let p = phi(&e)?;
    let eb = n.eta_bar();
    let counterexample = (0..p.domain().ngens()).find_map(|k| {
        let col = p.matrix().column(k);
        (col != eb.matrix().column(k)).then(|| {
            let mut unit = p.domain().zero_vec();
            unit[k] = crate::int::int(1);
            two_torsion(n.a()).inclusion.apply(&unit)
        })
    });
    Ok(PhiCheck {
        holds: counterexample.is_none(),
        six_term_exact: six_term(&e)?.is_exact(),
        counterexample,
    })
}

impl fmt::Display for ExtEtaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -psi {}-> {} -eta {}-> {} -chi {}-> {}",
            self.b(),
            self.psi.matrix(),
            self.a(),
            self.eta.matrix(),
            self.c(),
            self.chi.matrix(),
            self.b()
        )
    }
}

impl fmt::Display for MooreDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -phi {}-> {} -psi {}-> {}",
            self.a(),
            self.phi.matrix(),
            self.b(),
            self.psi.matrix(),
            self.a()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    fn hom(a: &str, b: &str, m: &[i64]) -> Homomorphism {
        Homomorphism::from_i64(&g(a), &g(b), m).unwrap()
    }

    /// `B -> B/2 -1-> B/2 -2-> B` for `B = Z/4`.
    pub(crate) fn four() -> ExtEtaDiagram {
        ExtEtaDiagram::new(
            hom("Z/4", "Z/2", &[1]),
            hom("Z/2", "Z/2", &[1]),
            hom("Z/2", "Z/4", &[2]),
        )
        .unwrap()
    }

    #[test]
    fn free_z4_module_example() {
        let n = four();
        assert!(n.validate().ok());
        assert!(n.is_exact());
        let c = eeed_phi_check(&n).unwrap();
        assert!(c.holds && c.six_term_exact);
        let two = ExtEtaDiagram::new(
            hom("Z/4+Z/4", "Z/2+Z/2", &[1, 0, 0, 1]),
            Homomorphism::identity(&g("Z/2+Z/2")),
            hom("Z/2+Z/2", "Z/4+Z/4", &[2, 0, 0, 2]),
        )
        .unwrap();
        assert!(two.is_exact());
    }

    #[test]
    fn zero_diagram_valid() {
        let z = ExtEtaDiagram::zero();
        assert!(z.validate().ok());
        assert!(z.is_exact());
    }

    #[test]
    fn relation_failures_are_named() {
        let bad = ExtEtaDiagram::new(
            hom("Z/4", "Z/2", &[1]),
            hom("Z/2", "Z/2", &[0]),
            hom("Z/2", "Z/4", &[2]),
        );
        assert_eq!(
            bad.err(),
            Some(Error::RelationFailed("chi eta psi = 2".into()))
        );
    }

    #[test]
    fn moore_exactness() {
        let z2 = g("Z/2");
        let z = g("0");
        let m =
            MooreDiagram::new(Homomorphism::zero(&z2, &z), Homomorphism::zero(&z, &z2)).unwrap();
        assert!(!m.is_exact());
    }
}
