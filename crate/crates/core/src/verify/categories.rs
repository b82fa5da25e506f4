//! Suites on the category `J`: its tables, the Yoneda bijection and the
//! two dualities.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{SuiteReport, Tally};
use crate::cj::{
    cj_hom, composition_table_text, delta_mor, delta_obj, evaluate, representable,
    representable_mor, square_text, yoneda_check, CjMorphism, CjObject,
};
use crate::diagrams::{h_diagram, Eed, EedMorphism, ExtEtaDiagram, SppObject};
use crate::duality::{
    delta_adjunction_check, delta_comparison, delta_dual_abstract, delta_dual_explicit, delta_unit,
    j_double_dual_unit, j_dual,
};
use crate::enumerate::{exact_eeds, groups_up_to, Sampler};
use crate::fgab::{FgGroup, Homomorphism};
use crate::int::{int, Int};
use crate::json::encode_eed;
use crate::matrix::Matrix;

const TABLE: &str = include_str!("../../golden/cj_table.txt");
const SQUARE: &str = include_str!("../../golden/cj_square.txt");

fn key1(n: &ExtEtaDiagram) -> (String, Value) {
    (n.to_string(), json!({"N": encode_eed(n)}))
}

fn key2(n: &ExtEtaDiagram, n2: &ExtEtaDiagram) -> (String, Value) {
    (
        format!("{n} || {n2}"),
        json!({"M": encode_eed(n), "N": encode_eed(n2)}),
    )
}

fn text_key(name: &str, got: &str) -> (String, Value) {
    (name.to_string(), json!({"got": got}))
}

/// Every morphism `x -> y`, with coefficients in `[-2, 2]` on `Z`.
fn some_morphisms(x: CjObject, y: CjObject) -> Vec<CjMorphism> {
    CjMorphism::all(x, y).unwrap_or_else(|| (-2..=2).map(|k| CjMorphism::new(x, y, k)).collect())
}

pub(crate) fn cj_tables() -> SuiteReport {
    let mut t = Tally::new("cj-tables");
    let table = composition_table_text();
    t.check("composition-table-golden", table == TABLE, || {
        text_key("table", &table)
    });
    let square = square_text();
    t.check("square-golden", square == SQUARE, || {
        text_key("square", &square)
    });

    let expected = [
        ["Z", "Z/2", "0"],
        ["Z/2", "Z/4", "Z/2"],
        ["Z/2", "Z/2", "Z"],
    ];
    for x in CjObject::ALL {
        for y in CjObject::ALL {
            let lit = expected[x as usize][y as usize];
            t.check("hom-groups", cj_hom(x, y).to_string() == lit, || {
                (format!("J({x},{y})"), json!({"expected": lit}))
            });
        }
    }
    let (rho, eta, beta) = (CjMorphism::rho(), CjMorphism::eta(), CjMorphism::beta());
    let br = beta.compose(&rho).expect("b -> c after a -> b");
    t.check("beta-rho=0", br.is_zero(), || {
        ("beta o rho".into(), json!({"got": br.to_string()}))
    });
    let reb = rho
        .compose(&eta)
        .and_then(|x| x.compose(&beta))
        .expect("composable");
    let two = CjMorphism::new(CjObject::B, CjObject::B, 2);
    t.check("rho-eta-beta=2", reb == two, || {
        ("rho o eta o beta".into(), json!({"got": reb.to_string()}))
    });
    for u in [&rho, &eta, &beta] {
        t.check(
            "generators-killed-by-two",
            u.add(u).is_ok_and(|d| d.is_zero()),
            || (u.to_string(), Value::Null),
        );
    }
    for x in CjObject::ALL {
        t.instance();
        let fx = representable(x);
        t.check(
            "representable-valid-exact",
            fx.validate().ok() && fx.is_exact(),
            || key1(&fx),
        );
        for y in CjObject::ALL {
            t.check(
                "representable-values",
                evaluate(&fx, y) == &cj_hom(y, x),
                || key1(&fx),
            );
        }
    }
    for x in CjObject::ALL {
        for y in CjObject::ALL {
            for z in CjObject::ALL {
                for u in some_morphisms(x, y) {
                    for v in some_morphisms(y, z) {
                        let vu = v.compose(&u).expect("composable");
                        t.check(
                            "delta-contravariant",
                            delta_mor(&vu)
                                == delta_mor(&u).compose(&delta_mor(&v)).expect("composable"),
                            || (format!("{v} o {u}"), Value::Null),
                        );
                        t.check(
                            "representable-functorial",
                            representable_mor(&vu)
                                == representable_mor(&v)
                                    .compose(&representable_mor(&u))
                                    .expect("composable"),
                            || (format!("{v} o {u}"), Value::Null),
                        );
                        for w in some_morphisms(z, x) {
                            let l = w.compose(&vu).expect("composable");
                            let r = w
                                .compose(&v)
                                .and_then(|wv| wv.compose(&u))
                                .expect("composable");
                            t.check("associative", l == r, || {
                                (format!("{w} o {v} o {u}"), Value::Null)
                            });
                        }
                    }
                }
            }
        }
        t.check("delta-involution", delta_obj(delta_obj(x)) == x, || {
            (x.to_string(), Value::Null)
        });
    }
    t.finish()
}

/// Finite diagrams: the exact corpus, `F_b`, the zero diagram and a few
/// `H(A, C)`.
fn finite_corpus(max: u64) -> Vec<Eed> {
    let mut out: Vec<Eed> = exact_eeds(max).into_iter().map(Arc::new).collect();
    out.push(Arc::new(representable(CjObject::B)));
    out.push(Arc::new(ExtEtaDiagram::zero()));
    for (a, c) in [("Z/2", "Z/2"), ("Z/4", "Z/2+Z/2"), ("Z/2+Z/4", "Z/8")] {
        out.push(Arc::new(h_diagram(&SppObject::new(
            a.parse().expect("literal"),
            c.parse().expect("literal"),
        ))));
    }
    out
}

/// Diagrams from the corpus checked by the costlier suites.
const YONEDA_SAMPLES: usize = 40;

pub(crate) fn yoneda(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("yoneda");
    let all = finite_corpus(max);
    let mut s = Sampler::new(seed);
    let mut picked: Vec<Eed> = s
        .indices(all.len(), YONEDA_SAMPLES)
        .into_iter()
        .map(|k| all[k].clone())
        .collect();
    picked.extend(all.iter().rev().take(5).cloned());
    for n in &picked {
        t.instance();
        for x in CjObject::ALL {
            if let Some(c) = t.ok("yoneda-defined", yoneda_check(x, n), || key1(n)) {
                t.check("counts-match", c.morphisms == c.elements, || key1(n));
                t.check("round-trips", c.round_trips, || key1(n));
            }
        }
    }
    // EED(F_x, F_y) = J(x, y), here only where it is finite.
    for x in CjObject::ALL {
        for y in CjObject::ALL {
            let (fx, fy) = (Arc::new(representable(x)), Arc::new(representable(y)));
            if cj_hom(x, y).is_finite() {
                let n = crate::diagrams::hom_set(&fx, &fy).map(|h| h.len());
                let expected =
                    crate::int::to_usize(&cj_hom(x, y).order().expect("finite")).expect("small");
                t.check("representable-homs", n == Ok(expected), || key2(&fx, &fy));
            }
        }
    }
    t.finish()
}

pub(crate) fn j_dual_suite(max: u64) -> SuiteReport {
    let mut t = Tally::new("j-dual");
    for n in finite_corpus(max) {
        t.instance();
        let key = || key1(&n);
        let Some(j) = t.ok("j-defined", j_dual(&n), key) else {
            continue;
        };
        t.check("j-valid", j.validate().ok(), key);
        if n.is_exact() {
            t.check("j-preserves-exactness", j.is_exact(), key);
        }
        if let Some(k) = t.ok("unit-defined", j_double_dual_unit(&n), key) {
            t.check("unit-isomorphism", k.is_isomorphism(), key);
        }
        let id = EedMorphism::identity(&n);
        t.check(
            "j-preserves-identity",
            crate::duality::j_dual_mor(&id)
                .is_ok_and(|m| m == EedMorphism::identity(&Arc::new(j.clone()))),
            key,
        );
    }
    t.check(
        "j-rejects-infinite",
        j_dual(&representable(CjObject::A)).is_err(),
        || key1(&representable(CjObject::A)),
    );
    t.finish()
}

/// An isomorphism between diagrams of cyclic groups, by trying each unit
/// on each generator (`±1` on `Z`).
fn cyclic_isomorphic(n: &Eed, n2: &Eed) -> bool {
    let groups = [(n.a(), n2.a()), (n.b(), n2.b()), (n.c(), n2.c())];
    if groups.iter().any(|(g, g2)| g != g2 || g.ngens() > 1) {
        return false;
    }
    let units = |g: &FgGroup| -> Vec<Homomorphism> {
        match g.factors().first() {
            None => vec![Homomorphism::identity(g)],
            Some(d) => {
                let ks: Vec<Int> = if crate::int::is_zero(d) {
                    vec![int(1), int(-1)]
                } else {
                    let d = crate::int::to_i64(d).expect("small");
                    (1..d).filter(|k| gcd(*k, d) == 1).map(int).collect()
                };
                ks.into_iter()
                    .map(|k| {
                        Homomorphism::new(g, g, Matrix::from_rows(vec![vec![k]], 1)).expect("unit")
                    })
                    .collect()
            }
        }
    };
    let (ua, ub, uc) = (units(n.a()), units(n.b()), units(n.c()));
    ua.iter().any(|f| {
        ub.iter().any(|g| {
            uc.iter().any(|h| {
                EedMorphism::new(n.clone(), n2.clone(), f.clone(), g.clone(), h.clone()).is_ok()
            })
        })
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Seeded corpus diagrams on which the two constructions of `Δ` are
/// compared.
const DELTA_SAMPLES: usize = 60;

pub(crate) fn delta_dual(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("delta-dual");
    for x in CjObject::ALL {
        let fx = Arc::new(representable(x));
        let target = Arc::new(representable(delta_obj(x)));
        let d = Arc::new(delta_dual_abstract(&fx));
        t.check(
            "delta-of-representable",
            cyclic_isomorphic(&d, &target),
            || key2(&fx, &target),
        );
    }
    let groups = groups_up_to(max);
    let odd: Vec<&FgGroup> = groups
        .iter()
        .filter(|g| g.order().is_some_and(|o| !crate::int::divides(&int(2), &o)))
        .collect();
    for a in &odd {
        for c in &odd {
            let n = Arc::new(h_diagram(&SppObject::new((*a).clone(), (*c).clone())));
            let zero = delta_dual_explicit(&n).diagram.is_zero_diagram()
                && delta_dual_abstract(&n).is_zero_diagram();
            t.check("odd-order-dual-vanishes", zero, || key1(&n));
        }
    }
    let z2 = FgGroup::cyclic(2);
    let h22 = Arc::new(h_diagram(&SppObject::new(z2.clone(), z2)));
    let dh = delta_dual_explicit(&h22).diagram;
    t.check(
        "h22-dual-not-exact",
        dh.validate().ok() && !dh.is_exact(),
        || key1(&h22),
    );

    let all = finite_corpus(max);
    let mut s = Sampler::new(seed);
    let mut picked: Vec<Eed> = s
        .indices(all.len(), DELTA_SAMPLES)
        .into_iter()
        .map(|k| all[k].clone())
        .collect();
    picked.extend(CjObject::ALL.iter().map(|&x| Arc::new(representable(x))));
    picked.push(h22.clone());
    for n in &picked {
        t.instance();
        let key = || key1(n);
        if let Some((ex, ab, m)) = t.ok("comparison-defined", delta_comparison(n), key) {
            t.check("explicit-valid", ex.diagram.validate().ok(), key);
            t.check(
                "explicit-equals-abstract",
                m.is_isomorphism() && ab.diagram().validate().ok(),
                key,
            );
        }
        if let Some((_, _, k)) = t.ok("unit-is-morphism", delta_unit(n), key) {
            if **n == representable(CjObject::B) {
                t.check("unit-iso-on-f_b", k.is_isomorphism(), key);
            }
        }
    }
    t.finish()
}

/// Pairs for the adjunction, drawn from diagrams of order at most this.
const ADJOINT_ORDER: u64 = 4;
const ADJOINT_PAIRS: usize = 30;

pub(crate) fn delta_adjoint(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("delta-adjoint");
    let all = finite_corpus(max.min(ADJOINT_ORDER));
    let mut s = Sampler::new(seed);
    let mut pairs = Vec::new();
    for _ in 0..ADJOINT_PAIRS {
        pairs.push((s.below(all.len()), s.below(all.len())));
    }
    for (i, j) in pairs {
        t.instance();
        let (m, n) = (&all[i], &all[j]);
        if let Some(c) = t.ok("adjunction-defined", delta_adjunction_check(m, n), || {
            key2(m, n)
        }) {
            t.check(
                "adjunction-bijective",
                c.bijective && c.left == c.right,
                || key2(m, n),
            );
        }
    }
    t.finish()
}
