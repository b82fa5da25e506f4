//! Suites on extensions: the `Φ` isomorphism, the six-term sequence, Baer
//! sums and the middle-map criterion.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};

use super::{SuiteReport, Tally};
use crate::brute;
use crate::enumerate::{groups_of_order, groups_up_to};
use crate::error::Result;
use crate::ext::{
    baer_sum, classify, classify_with, phi, phi_of_class, phi_with, realize, six_term, ExtClass,
    ExtGroup, Extension, PreimageChoice,
};
use crate::fgab::{mod_two, two_torsion, FgGroup, HomSpace, HomSystem, Homomorphism};
use crate::int::{int, Int};
use crate::json::ExtensionJson;
use crate::lin::{self, Solver, Sub};
use crate::matrix::Matrix;

fn pair_key(u: &FgGroup, v: &FgGroup) -> (String, Value) {
    (
        format!("U={u} V={v}"),
        json!({"U": u.to_string(), "V": v.to_string()}),
    )
}

fn class_key(c: &ExtClass, e: &Extension) -> (String, Value) {
    (
        format!("U={} V={} class={}", c.u(), c.v(), c),
        json!({"class": c.to_string(), "extension": ExtensionJson::of(e)}),
    )
}

pub(crate) fn phi_iso(max: u64) -> SuiteReport {
    let mut t = Tally::new("phi-iso");
    let groups = groups_up_to(max);
    for u in &groups {
        for v in &groups {
            t.instance();
            let g = ExtGroup::new(u, v);
            let (tors, quot) = (two_torsion(u).group, mod_two(v).group);
            let target = HomSpace::new(&tors, &quot);
            let hom_size = brute::hom_count(&brute::factors(&tors), &brute::factors(&quot));
            let mut images = HashSet::new();
            let mut classes = 0u128;
            for c in g.classes_mod_two() {
                classes += 1;
                let e = realize(&c);
                let Some(p) = t.ok("phi-defined", phi(&e), || class_key(&c, &e)) else {
                    continue;
                };
                let alt = phi_with(&e, PreimageChoice::Shifted);
                t.check("choice-independent", alt.as_ref() == Ok(&p), || {
                    class_key(&c, &e)
                });
                t.check("matches-class-formula", phi_of_class(&c) == p, || {
                    class_key(&c, &e)
                });
                images.insert(target.to_canonical(&p));
            }
            let evens = g
                .group()
                .factors()
                .iter()
                .filter(|d| crate::int::divides(&int(2), d))
                .count();
            t.check("class-count", classes == 1u128 << evens, || pair_key(u, v));
            t.check("injective", images.len() as u128 == classes, || {
                pair_key(u, v)
            });
            t.check("surjective", images.len() as u128 == hom_size, || {
                pair_key(u, v)
            });
            if u.killed_by_two() || v.killed_by_two() {
                let ext_order = g.group().order().expect("finite");
                t.check(
                    "exponent-two-count",
                    ext_order == Int::from(hom_size),
                    || pair_key(u, v),
                );
            }
        }
    }
    t.finish()
}

/// Baer sums of classes with `|Ext| <= BAER_LIMIT` are checked pairwise.
const BAER_LIMIT: u32 = 16;

pub(crate) fn six_term_suite(max: u64) -> SuiteReport {
    let mut t = Tally::new("six-term");
    let names = [
        "exact-at-M[2]",
        "exact-at-U[2]",
        "exact-at-V/2",
        "exact-at-M/2",
    ];
    let groups = groups_up_to(max);
    for u in &groups {
        for v in &groups {
            let g = ExtGroup::new(u, v);
            let classes: Vec<ExtClass> = g.classes().collect();
            let exts: Vec<Extension> = classes.iter().map(realize).collect();
            for (c, e) in classes.iter().zip(&exts) {
                t.instance();
                if let Some(s) = t.ok("six-term-defined", six_term(e), || class_key(c, e)) {
                    for (name, ok) in names.iter().zip(s.joints()) {
                        t.check(name, ok, || class_key(c, e));
                    }
                }
                t.check("classify-realize", classify(e).as_ref() == Ok(c), || {
                    class_key(c, e)
                });
                let alt = classify_with(e, PreimageChoice::Shifted);
                t.check("classify-choice-independent", alt.as_ref() == Ok(c), || {
                    class_key(c, e)
                });
            }
            if classes.len() as u32 <= BAER_LIMIT {
                for (a, ea) in classes.iter().zip(&exts) {
                    for (b, eb) in classes.iter().zip(&exts) {
                        let sum = baer_sum(ea, eb).and_then(|s| classify(&s));
                        t.check("baer-sum-law", sum.as_ref() == Ok(&a.add(b)), || {
                            (
                                format!("U={u} V={v} {a} + {b}"),
                                json!({"left": ExtensionJson::of(ea), "right": ExtensionJson::of(eb)}),
                            )
                        });
                    }
                }
            }
        }
    }
    let ok = baer_table_z4();
    t.check("baer-z4-table", ok.is_ok(), || {
        (
            "U=Z/4 V=Z/4".into(),
            json!({"error": ok.err().unwrap_or_default()}),
        )
    });
    t.finish()
}

/// Classifies every extension `Z/4 -> M -> Z/4` with `|M| = 16` found by
/// enumerating all pairs of maps, and checks the classes form `Z/4` under
/// the Baer sum of realized extensions.
pub fn baer_table_z4() -> std::result::Result<(), String> {
    let z4 = FgGroup::cyclic(4);
    let mut found: Vec<ExtClass> = Vec::new();
    for m in groups_of_order(16) {
        let (into, onto) = (HomSpace::new(&z4, &m), HomSpace::new(&m, &z4));
        let ps: Vec<Homomorphism> = onto
            .elements()
            .expect("finite")
            .filter(|p| p.is_surjective())
            .collect();
        for i in into
            .elements()
            .expect("finite")
            .filter(|i| i.is_injective())
        {
            for p in &ps {
                if let Ok(e) = Extension::new(i.clone(), p.clone()) {
                    let c = classify(&e).map_err(|e| e.to_string())?;
                    if !found.contains(&c) {
                        found.push(c);
                    }
                }
            }
        }
    }
    if found.len() != 4 {
        return Err(format!("{} classes", found.len()));
    }
    let gen = found
        .iter()
        .find(|c| c.scale(&int(2)) != ExtClass::zero(&z4, &z4))
        .ok_or("no class of order 4")?;
    let multiples: Vec<ExtClass> = (0..4).map(|k| gen.scale(&int(k))).collect();
    if multiples.iter().any(|c| !found.contains(c)) {
        return Err("classes are not the multiples of one class".into());
    }
    for k in 0..4 {
        for l in 0..4 {
            let s = baer_sum(&realize(&multiples[k]), &realize(&multiples[l]))
                .map_err(|e| e.to_string())?;
            if classify(&s).map_err(|e| e.to_string())? != multiples[(k + l) % 4] {
                return Err(format!("{k} + {l}"));
            }
        }
    }
    Ok(())
}

/// A generating set of `Aut(G)` for finite `G`, chosen greedily from the
/// full automorphism list.
pub fn aut_generators(g: &FgGroup) -> Vec<Homomorphism> {
    let autos: Vec<Homomorphism> = HomSpace::new(g, g)
        .elements()
        .expect("finite group")
        .filter(|a| a.is_isomorphism())
        .collect();
    let mut gens: Vec<Homomorphism> = Vec::new();
    let mut closure: HashSet<Homomorphism> = HashSet::from([Homomorphism::identity(g)]);
    for a in autos {
        if closure.contains(&a) {
            continue;
        }
        gens.push(a);
        let mut frontier: Vec<Homomorphism> = closure.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = s.compose(&x);
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// One class per orbit of `Aut(U) x Aut(V)` on `Ext(U, V)`, acting by
/// pullback and pushforward.
pub fn orbit_representatives(u: &FgGroup, v: &FgGroup) -> Vec<ExtClass> {
    let g = ExtGroup::new(u, v);
    let classes: Vec<ExtClass> = g.classes().collect();
    let index: HashMap<&ExtClass, usize> =
        classes.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let (gu, gv) = (aut_generators(u), aut_generators(v));
    for (k, c) in classes.iter().enumerate() {
        let moved = gv
            .iter()
            .map(|a| c.pushforward(a))
            .chain(gu.iter().map(|b| c.pullback(b)));
        for d in moved {
            let d = d.expect("automorphisms fit");
            let (x, y) = (root(&mut parent, k), root(&mut parent, index[&d]));
            parent[x.max(y)] = x.min(y);
        }
    }
    (0..classes.len())
        .filter(|&k| root(&mut parent, k) == k)
        .map(|k| classes[k].clone())
        .collect()
}

/// For extensions `E` of `U` by `V` and `E'` of `U'` by `V'`, the three
/// subgroups of pairs `(f: V -> V', h: U -> U')` in raw coordinates:
/// those admitting a middle map, those with `f_*[E] = h^*[E']`, and those
/// with `(f/2) Φ(E) = Φ(E') h[2]`.
pub struct MiddleSubgroups {
    pub mods: Vec<Int>,
    hom_v: HomSpace,
    hom_u: HomSpace,
    pub fill: Sub,
    pub ext: Sub,
    pub phi: Sub,
}

impl MiddleSubgroups {
    pub fn new(e: &Extension, e2: &Extension) -> Result<Self> {
        let hom_v = HomSpace::new(e.v(), e2.v());
        let hom_u = HomSpace::new(e.u(), e2.u());
        let mods: Vec<Int> = hom_v
            .raw_moduli()
            .iter()
            .chain(hom_u.raw_moduli())
            .cloned()
            .collect();
        let nv = hom_v.raw_dim();
        let split = |x: &[Int]| (hom_v.from_raw(&x[..nv]), hom_u.from_raw(&x[nv..]));

        let sys = HomSystem::new(
            vec![hom_v.clone(), HomSpace::new(e.m(), e2.m()), hom_u.clone()],
            |x| {
                vec![
                    x[1].compose(e.i()).sub(&e2.i().compose(&x[0])),
                    e2.p().compose(&x[1]).sub(&x[2].compose(e.p())),
                ]
            },
        );
        let gens: Vec<Vec<Int>> = (0..sys.group().ngens())
            .map(|k| {
                let mut c = sys.group().zero_vec();
                c[k] = int(1);
                let parts = sys.components(&c);
                hom_v
                    .to_raw(&parts[0])
                    .into_iter()
                    .chain(hom_u.to_raw(&parts[2]))
                    .collect()
            })
            .collect();
        let fill = lin::subgroup(&mods, &Matrix::from_columns(mods.len(), &gens));

        let (c, c2) = (classify(e)?, classify(e2)?);
        let target = ExtGroup::new(e.u(), e2.v());
        let t = lin::matrix_of(mods.len(), target.raw_moduli().len(), |x| {
            let (f, h) = split(x);
            let d = c
                .pushforward(&f)
                .expect("fits")
                .add(&c2.pullback(&h).expect("fits").neg());
            target.to_raw(&d)
        });
        let ext = lin::kernel(&mods, target.raw_moduli(), &t);

        let (p, p2) = (phi(e)?, phi(e2)?);
        let target = HomSpace::new(p.domain(), p2.codomain());
        let t = lin::matrix_of(mods.len(), target.raw_dim(), |x| {
            let (f, h) = split(x);
            target.to_raw(
                &f.mod_two()
                    .compose(&p)
                    .sub(&p2.compose(&h.on_two_torsion())),
            )
        });
        let phi = lin::kernel(&mods, target.raw_moduli(), &t);
        Ok(MiddleSubgroups {
            mods,
            hom_v,
            hom_u,
            fill,
            ext,
            phi,
        })
    }

    pub fn raw(&self, f: &Homomorphism, h: &Homomorphism) -> Vec<Int> {
        self.hom_v
            .to_raw(f)
            .into_iter()
            .chain(self.hom_u.to_raw(h))
            .collect()
    }

    pub fn contains(&self, s: &Sub, x: &[Int]) -> bool {
        Solver::new(&s.inclusion, &self.mods).solve(x).is_some()
    }

    /// `small ⊆ big`.
    pub fn includes(&self, big: &Sub, small: &Sub) -> bool {
        let solver = Solver::new(&big.inclusion, &self.mods);
        (0..small.inclusion.cols()).all(|k| solver.solve(&small.inclusion.column(k)).is_some())
    }
}

/// Brute-force cross-checks run on quadruples of order at most this, when
/// the number of matrices to try stays below `BRUTE_LIMIT`.
const BRUTE_ORDER: u64 = 4;
const BRUTE_LIMIT: u128 = 1 << 14;

fn from_mat(dom: &FgGroup, cod: &FgGroup, m: &brute::Mat) -> Homomorphism {
    let rows: Vec<Vec<Int>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Int::from(x)).collect())
        .collect();
    Homomorphism::new(dom, cod, Matrix::from_rows(rows, dom.ngens())).expect("well-defined")
}

struct Side {
    u: FgGroup,
    v: FgGroup,
    reps: Vec<(ExtClass, Extension)>,
}

pub(crate) fn middle(max: u64) -> SuiteReport {
    let mut t = Tally::new("middle");
    let groups = groups_up_to(max);
    let mut sides = Vec::new();
    let mut total = 0usize;
    for u in &groups {
        for v in &groups {
            total += ExtGroup::new(u, v).classes().count();
            let reps = orbit_representatives(u, v).into_iter().map(|c| {
                let e = realize(&c);
                (c, e)
            });
            sides.push(Side {
                u: u.clone(),
                v: v.clone(),
                reps: reps.collect(),
            });
        }
    }
    let orbits: usize = sides.iter().map(|s| s.reps.len()).sum();
    t.note(format!(
        "{total} classes reduced to {orbits} orbit representatives under Aut(U) x Aut(V); each condition is compared as a subgroup of Hom(V,V') + Hom(U,U')"
    ));
    t.declare("a-iff-b");
    t.declare("b-implies-c");
    t.declare("c-implies-a-when-2ext-zero");
    t.declare("brute-force-membership");
    for s in &sides {
        for s2 in &sides {
            let two_kills = ExtGroup::new(&s.u, &s2.v).group().killed_by_two();
            for (c, e) in &s.reps {
                for (c2, e2) in &s2.reps {
                    t.instance();
                    let key = || {
                        (
                            format!("E={} [{}] E'={} [{}]", s.u, c, s2.u, c2),
                            json!({"E": ExtensionJson::of(e), "E'": ExtensionJson::of(e2)}),
                        )
                    };
                    let Some(m) = t.ok("subgroups-defined", MiddleSubgroups::new(e, e2), key)
                    else {
                        continue;
                    };
                    let a_iff_b = m.includes(&m.fill, &m.ext) && m.includes(&m.ext, &m.fill);
                    t.check("a-iff-b", a_iff_b, key);
                    t.check("b-implies-c", m.includes(&m.phi, &m.ext), key);
                    if two_kills {
                        t.check(
                            "c-implies-a-when-2ext-zero",
                            m.includes(&m.fill, &m.phi),
                            key,
                        );
                    }
                    brute_membership(&mut t, &m, (c, e), (c2, e2), max.min(BRUTE_ORDER));
                }
            }
        }
    }
    t.finish()
}

/// Tests every `(f, h)` directly against each condition and compares with
/// subgroup membership.
fn brute_membership(
    t: &mut Tally,
    m: &MiddleSubgroups,
    (c, e): (&ExtClass, &Extension),
    (c2, e2): (&ExtClass, &Extension),
    order: u64,
) {
    let all_small = [e.u(), e.v(), e2.u(), e2.v()]
        .iter()
        .all(|g| g.order().is_some_and(|o| o <= Int::from(order)));
    if !all_small {
        return;
    }
    let (v, v2, u, u2) = (
        brute::factors(e.v()),
        brute::factors(e2.v()),
        brute::factors(e.u()),
        brute::factors(e2.u()),
    );
    let (mm, mm2) = (brute::factors(e.m()), brute::factors(e2.m()));
    let work = brute::hom_count(&v, &v2) * brute::hom_count(&u, &u2) * brute::hom_count(&mm, &mm2);
    if work > BRUTE_LIMIT {
        return;
    }
    let (p, p2) = (phi(e).expect("phi"), phi(e2).expect("phi"));
    for fm in brute::hom_matrices(&v, &v2) {
        let f = from_mat(e.v(), e2.v(), &fm);
        for hm in brute::hom_matrices(&u, &u2) {
            let h = from_mat(e.u(), e2.u(), &hm);
            let x = m.raw(&f, &h);
            let a = brute::fill_exists((e.i(), e.p()), (e2.i(), e2.p()), &f, &h);
            let b = c.pushforward(&f).ok() == c2.pullback(&h).ok();
            let cc = f.mod_two().compose(&p) == p2.compose(&h.on_two_torsion());
            let ok = a == m.contains(&m.fill, &x)
                && b == m.contains(&m.ext, &x)
                && cc == m.contains(&m.phi, &x);
            t.check("brute-force-membership", ok, || {
                (
                    format!("E={} [{}] E'={} [{}] f={} h={}", e.u(), c, e2.u(), c2, f, h),
                    json!({"E": ExtensionJson::of(e), "E'": ExtensionJson::of(e2), "f": crate::json::MapJson::of(&f), "h": crate::json::MapJson::of(&h)}),
                )
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgGroup {
        s.parse().unwrap()
    }

    #[test]
    fn automorphism_generators() {
        assert!(aut_generators(&g("Z/2")).is_empty());
        let gens = aut_generators(&g("Z/2+Z/2+Z/2"));
        assert!(!gens.is_empty() && gens.len() <= 4);
    }

    #[test]
    fn orbits_of_small_ext_groups() {
        assert_eq!(orbit_representatives(&g("Z/8"), &g("Z/8")).len(), 4);
        assert_eq!(
            orbit_representatives(&g("Z/2+Z/2+Z/2"), &g("Z/2+Z/2+Z/2")).len(),
            4
        );
        assert_eq!(orbit_representatives(&g("Z/3"), &g("Z/2")).len(), 1);
    }

    #[test]
    fn middle_subgroups_on_z4() {
        let e = realize(
            &ExtGroup::new(&g("Z/2"), &g("Z/2"))
                .classes()
                .nth(1)
                .unwrap(),
        );
        let m = MiddleSubgroups::new(&e, &e).unwrap();
        assert!(m.includes(&m.fill, &m.ext) && m.includes(&m.ext, &m.fill));
        // (f, h) = (1, 0) has no middle map out of Z/4.
        let one = Homomorphism::identity(e.v());
        let zero = Homomorphism::zero(e.u(), e.u());
        assert!(!m.contains(&m.fill, &m.raw(&one, &zero)));
        assert!(m.contains(&m.fill, &m.raw(&one, &Homomorphism::identity(e.u()))));
    }

    #[test]
    fn baer_z4() {
        assert_eq!(baer_table_z4(), Ok(()));
    }
}
