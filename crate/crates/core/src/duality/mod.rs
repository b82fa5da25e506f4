//! Character duality `J` on finite diagrams and the self-adjoint `Δ`.

mod delta;

pub use delta::{
    delta_adjunction_check, delta_comparison, delta_dual_abstract, delta_dual_explicit,
    delta_mor_abstract, delta_unit, AdjunctionCheck, DeltaDual, ExplicitDelta,
};

use std::fmt;
use std::sync::Arc;

use crate::diagrams::{Eed, EedMorphism, ExtEtaDiagram};
use crate::error::{Error, Result};
use crate::fgab::{FgGroup, Homomorphism};
use crate::int::{exact_div, gcd, int, reduce, Int};
use crate::matrix::Matrix;

/// An element of `Q/Z`, kept as `num/den` in lowest terms with
/// `0 <= num < den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QmodZ {
    num: Int,
    den: Int,
}

impl QmodZ {
    pub fn new(num: Int, den: Int) -> Self {
        assert!(den > int(0), "denominator must be positive");
        let num = reduce(&num, &den);
        let g = gcd(&num, &den);
        QmodZ {
            num: exact_div(&num, &g),
            den: exact_div(&den, &g),
        }
    }

    pub fn zero() -> Self {
        QmodZ {
            num: int(0),
            den: int(1),
        }
    }

    pub fn num(&self) -> &Int {
        &self.num
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == int(0)
    }

    pub fn add(&self, other: &QmodZ) -> QmodZ {
        QmodZ::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn require_finite(u: &FgGroup) -> Result<()> {
    if u.is_finite() {
        Ok(())
    } else {
        Err(Error::InfiniteGroup)
    }
}

/// `U* = Hom(U, Q/Z)`, identified with `U` so that the `k`-th generator
/// of `U*` sends the `k`-th generator of `U` to `1/d_k` and the others
/// to 0.
pub fn character_dual(u: &FgGroup) -> Result<FgGroup> {
    require_finite(u)?;
    Ok(u.clone())
}

/// `⟨x, y⟩ = Σ x_k y_k / d_k` for `x ∈ U`, `y ∈ U*`.
pub fn pairing(u: &FgGroup, x: &[Int], y: &[Int]) -> Result<QmodZ> {
    require_finite(u)?;
    Ok(u.factors()
        .iter()
        .zip(x.iter().zip(y))
        .fold(QmodZ::zero(), |acc, (d, (a, b))| {
            acc.add(&QmodZ::new(a * b, d.clone()))
        }))
}

/// `f*: V* -> U*`, `χ ↦ χ ∘ f`; entry `(j, i)` is `M_ij d_j / e_i`.
pub fn dual_map(f: &Homomorphism) -> Result<Homomorphism> {
    let (u, v) = (f.domain(), f.codomain());
    require_finite(u)?;
    require_finite(v)?;
    let m = f.matrix();
    let mut t = Matrix::zeros(u.ngens(), v.ngens());
    for (i, e) in v.factors().iter().enumerate() {
        for (j, d) in u.factors().iter().enumerate() {
            t[(j, i)] = exact_div(&(&m[(i, j)] * d), e);
        }
    }
    Homomorphism::new(v, u, t)
}

/// `J(B -ψ-> A -η-> C -χ-> B) = (B* -χ*-> C* -η*-> A* -ψ*-> B*)`.
pub fn j_dual(n: &ExtEtaDiagram) -> Result<ExtEtaDiagram> {
    ExtEtaDiagram::new(dual_map(n.chi())?, dual_map(n.eta())?, dual_map(n.psi())?)
}

/// `J(f, g, h) = (h*, g*, f*): J(N') -> J(N)`.
pub fn j_dual_mor(m: &EedMorphism) -> Result<EedMorphism> {
    EedMorphism::new(
        Arc::new(j_dual(&m.target)?),
        Arc::new(j_dual(&m.source)?),
        dual_map(&m.h)?,
        dual_map(&m.g)?,
        dual_map(&m.f)?,
    )
}

/// Evaluation `U -> U**`, `x ↦ (χ ↦ χ(x))`, read off the pairing.
fn evaluation(u: &FgGroup) -> Result<Homomorphism> {
    require_finite(u)?;
    let n = u.ngens();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let mut x = u.zero_vec();
        x[j] = int(1);
        for k in 0..n {
            let mut y = u.zero_vec();
            y[k] = int(1);
            // The k-th generator of U** takes the value 1/d_k on the k-th
            // generator of U*.
            let p = pairing(u, &x, &y)?;
            m[(k, j)] = exact_div(&(&u.factors()[k] * p.num()), p.den());
        }
    }
    Homomorphism::new(u, u, m)
}

/// The unit `N -> J²N`.
pub fn j_double_dual_unit(n: &Eed) -> Result<EedMorphism> {
    let jj = Arc::new(j_dual(&j_dual(n)?)?);
    EedMorphism::new(
        n.clone(),
        jj,
        evaluation(n.a())?,
        evaluation(n.b())?,
        evaluation(n.c())?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cj::{representable, CjObject};
    use crate::diagrams::{h_diagram, SppObject};

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn pairing_is_nondegenerate() {
        for s in ["Z/2+Z/4", "Z/3+Z/6", "Z/8"] {
            let u = g(s);
            let elems: Vec<_> = u.elements().unwrap().collect();
            for x in &elems {
                if u.is_zero_vec(x) {
                    continue;
                }
                assert!(elems.iter().any(|y| !pairing(&u, x, y).unwrap().is_zero()));
            }
        }
    }

    #[test]
    fn dual_maps_are_adjoint_and_contravariant() {
        let u = g("Z/2+Z/4");
        let v = g("Z/4+Z/12");
        let f = Homomorphism::from_i64(&u, &v, &[2, 1, 6, 3]).unwrap();
        let fs = dual_map(&f).unwrap();
        for x in u.elements().unwrap() {
            for y in v.elements().unwrap() {
                assert_eq!(
                    pairing(&v, &f.apply(&x), &y).unwrap(),
                    pairing(&u, &x, &fs.apply(&y)).unwrap()
                );
            }
        }
        let w = g("Z/6");
        let h = Homomorphism::from_i64(&v, &w, &[3, 1]).unwrap();
        assert_eq!(
            dual_map(&h.compose(&f)).unwrap(),
            fs.compose(&dual_map(&h).unwrap())
        );
    }

    #[test]
    fn j_examples() {
        let fb = representable(CjObject::B);
        let j = j_dual(&fb).unwrap();
        assert_eq!((j.b(), j.a(), j.c()), (&g("Z/4"), &g("Z/2"), &g("Z/2")));
        assert!(j.is_exact());
        let z = j_dual(&ExtEtaDiagram::zero()).unwrap();
        assert!(z.is_zero_diagram());
        assert_eq!(
            j_dual(&representable(CjObject::C)),
            Err(Error::InfiniteGroup)
        );
    }

    #[test]
    fn double_dual_unit() {
        for n in [
            representable(CjObject::B),
            ExtEtaDiagram::zero(),
            h_diagram(&SppObject::new(g("Z/2"), g("Z/4"))),
        ] {
            let k = j_double_dual_unit(&Arc::new(n)).unwrap();
            assert!(k.is_isomorphism());
        }
    }
}
