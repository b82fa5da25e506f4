//! Suites on diagram categories: the hom-set sequence for `π`, the EED
//! relations, Moore diagrams versus EMD′, and the `H` and SPP categories.

use std::collections::HashSet;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{SuiteReport, Tally};
use crate::brute;
use crate::cj::{representable, CjObject};
use crate::diagrams::{
    classify_degenerate, construct_eeed_over, ed_to_hom, eed_hom_system, eeed_mor_to_emd,
    eeed_phi_check, eeed_to_emd, emd_mor_to_eeed, emd_to_eeed, eta_hom_system, h_diagram, h_mor,
    h_mor_inverse, hom_set, hom_to_ed, lift_along_pi, moore_hom_set, pi, pi_mor, standard_emd, xi,
    Eed, EedMorphism, EtaMorphism, ExtEtaDiagram, MooreDiagram, Reduced, SppMorphism, SppObject,
    SppPlusMorphism, Tag,
};
use crate::enumerate::{exact_eeds, groups_up_to, Sampler};
use crate::ext::{phi_of_class, ExtGroup};
use crate::fgab::{mod_two, two_torsion, FgGroup, HomSpace, Homomorphism};
use crate::int::int;
use crate::json::{encode_eed, Diagram, MapJson};

/// Brute-force hom-set counts are attempted below this many raw triples.
const BRUTE_LIMIT: u128 = 1 << 20;
/// Sampled exact pairs for the `π` sequence.
const PI_PAIRS: usize = 120;

fn key1(n: &ExtEtaDiagram) -> (String, Value) {
    (n.to_string(), json!({"N": encode_eed(n)}))
}

fn key2(n: &ExtEtaDiagram, n2: &ExtEtaDiagram) -> (String, Value) {
    (
        format!("{n} || {n2}"),
        json!({"N": encode_eed(n), "N'": encode_eed(n2)}),
    )
}

fn moore_key(m: &MooreDiagram, m2: &MooreDiagram) -> (String, Value) {
    (
        format!("{m} || {m2}"),
        json!({"M": Diagram::Moore(m.clone()).encode(), "M'": Diagram::Moore(m2.clone()).encode()}),
    )
}

fn brute_cost(n: &ExtEtaDiagram, n2: &ExtEtaDiagram) -> u128 {
    let f = |g: &FgGroup, g2: &FgGroup| brute::hom_count(&brute::factors(g), &brute::factors(g2));
    f(n.a(), n2.a()) * f(n.b(), n2.b()) * f(n.c(), n2.c())
}

fn order(g: &FgGroup) -> u128 {
    crate::int::to_i64(&g.order().expect("finite")).expect("small") as u128
}

fn corpus(max: u64) -> Vec<Eed> {
    exact_eeds(max).into_iter().map(Arc::new).collect()
}

/// Seeded pairs from `items` accepted by `keep`, at most `want` of them
/// within `10 * want` draws.
fn sample_pairs<T>(
    items: &[T],
    want: usize,
    seed: u64,
    keep: impl Fn(&T, &T) -> bool,
) -> Vec<(usize, usize)> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for _ in 0..want * 10 {
        if out.len() == want {
            break;
        }
        let (i, j) = (s.below(items.len()), s.below(items.len()));
        if seen.insert((i, j)) && keep(&items[i], &items[j]) {
            out.push((i, j));
        }
    }
    out
}

pub(crate) fn pi_ses(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("pi-ses");
    let all = corpus(max);
    let pairs = sample_pairs(&all, PI_PAIRS, seed, |n, n2| {
        brute_cost(n, n2) <= BRUTE_LIMIT
    });
    t.note(format!(
        "{} seeded pairs from {} exact diagrams with brute-force cost at most {BRUTE_LIMIT}",
        pairs.len(),
        all.len()
    ));
    t.check("enough-pairs", pairs.len() >= 100, || {
        ("sampling".into(), json!({"pairs": pairs.len()}))
    });
    for (i, j) in pairs {
        t.instance();
        let (n, n2) = (&all[i], &all[j]);
        let key = || key2(n, n2);
        let sys = eed_hom_system(n, n2);
        let ed = eta_hom_system(&pi(n), &pi(n2));
        let structural = order(sys.group());
        let brute_eed =
            brute::count_eed_morphisms(n, n2, BRUTE_LIMIT).expect("cost checked") as u128;
        let brute_ed = brute::count_eta_morphisms(n.eta(), n2.eta()) as u128;
        let (tors, quot) = (two_torsion(n.a()).group, mod_two(n2.c()).group);
        let hom_u = brute::hom_count(&brute::factors(&tors), &brute::factors(&quot));
        t.check("hom-count-oracle", structural == brute_eed, key);
        t.check("ed-count-oracle", order(ed.group()) == brute_ed, key);
        t.check("count-factorization", brute_eed == hom_u * brute_ed, key);

        let us: Vec<Homomorphism> = HomSpace::new(&tors, &quot)
            .elements()
            .expect("finite")
            .collect();
        let mut images = HashSet::new();
        let mut xi_ok = true;
        for u in &us {
            match xi(n, n2, u) {
                Ok(m) => {
                    let valid = EedMorphism::new(
                        n.clone(),
                        n2.clone(),
                        m.f.clone(),
                        m.g.clone(),
                        m.h.clone(),
                    )
                    .is_ok();
                    xi_ok &= valid && m.f.is_zero() && m.h.is_zero();
                    images.insert(m.g);
                }
                Err(_) => xi_ok = false,
            }
        }
        t.check("xi-lands-in-kernel-of-pi", xi_ok, key);
        t.check("xi-injective", images.len() == us.len(), key);
        if us.len() >= 2 {
            let (a, b) = (&us[1], &us[us.len() - 1]);
            let sum = xi(n, n2, &a.add(b)).map(|m| m.g);
            let parts = xi(n, n2, a).and_then(|x| xi(n, n2, b).map(|y| x.g.add(&y.g)));
            t.check("xi-additive", sum.is_ok() && sum == parts, key);
        }
        if let Some(hs) = t.ok("hom-set", hom_set(n, n2), key) {
            let kernel: HashSet<Homomorphism> = hs
                .iter()
                .filter(|m| m.f.is_zero() && m.h.is_zero())
                .map(|m| m.g.clone())
                .collect();
            t.check("kernel-of-pi-is-image-of-xi", kernel == images, key);
        }
        // π is additive, so lifting a generating set shows it is onto.
        let mut onto = true;
        for k in 0..ed.group().ngens() {
            let mut c = ed.group().zero_vec();
            c[k] = int(1);
            let fh = ed.components(&c);
            let m = EtaMorphism::new(
                Arc::new(pi(n)),
                Arc::new(pi(n2)),
                fh[0].clone(),
                fh[1].clone(),
            )
            .expect("solution of the system");
            onto &= lift_along_pi(n, n2, &m).is_ok_and(|l| pi_mor(&l) == m);
        }
        t.check("pi-surjective", onto, key);
    }
    t.finish()
}

/// Diagrams whose relations and degenerations are checked.
fn relation_corpus(max: u64) -> Vec<Eed> {
    let mut out = corpus(max);
    out.extend(CjObject::ALL.iter().map(|&x| Arc::new(representable(x))));
    out.push(Arc::new(ExtEtaDiagram::zero()));
    out
}

pub(crate) fn eed_rels(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("eed-rels");
    let all = relation_corpus(max);
    for n in &all {
        t.instance();
        let key = || key1(n);
        t.check("validates", n.validate().ok(), key);
        let two = int(2);
        t.check("2psi=0", n.psi().scale(&two).is_zero(), key);
        t.check("2chi=0", n.chi().scale(&two).is_zero(), key);
        t.check(
            "4id_B=0",
            Homomorphism::identity(n.b()).scale(&int(4)).is_zero(),
            key,
        );
        let bars = n.psi_bar().zip(n.chi_bar());
        t.check(
            "psibar-chibar=0",
            bars.is_some_and(|(p, c)| p.compose(&c).is_zero()),
            key,
        );
        t.check("exact", n.is_exact(), key);
        if let Some(pc) = t.ok("phi-check", eeed_phi_check(n), key) {
            t.check("phi-equals-eta-bar", pc.holds, key);
            t.check("induced-six-term-exact", pc.six_term_exact, key);
        }
        let again = construct_eeed_over(&pi(n));
        t.check(
            "construct-over-pi",
            pi(&again) == pi(n) && again.is_exact(),
            key,
        );
        if let Some(tags) = t.ok("degenerate", classify_degenerate(n), key) {
            let found: HashSet<Tag> = tags.iter().map(|d| d.tag).collect();
            let expected: HashSet<Tag> = [
                (Tag::ChiZero, n.chi().is_zero()),
                (Tag::PsiZero, n.psi().is_zero()),
                (Tag::BZero, n.b().is_trivial()),
                (Tag::CZero, n.c().is_trivial()),
                (Tag::AZero, n.a().is_trivial()),
                (Tag::EtaZero, n.eta().is_zero()),
            ]
            .into_iter()
            .filter(|p| p.1)
            .map(|p| p.0)
            .collect();
            t.check("degenerate-tags", found == expected, key);
            if found.contains(&Tag::ChiZero) {
                let c2 = mod_two(n.c()).group.is_trivial();
                let b_iso = n.psi_bar().is_some_and(|p| p.is_isomorphism());
                t.check("chi=0-consistency", c2 && b_iso, key);
            }
            for d in &tags {
                if let Reduced::Spp { obj, iso } = &d.reduced {
                    let ok =
                        iso.is_isomorphism() && *iso.source == h_diagram(obj) && &iso.target == n;
                    t.check("eta=0-splitting", ok, key);
                }
            }
        }
    }
    // π reflects isomorphisms: a morphism with f and h bijective has g
    // bijective.
    let small: Vec<&Eed> = all
        .iter()
        .filter(|n| n.is_finite() && brute_cost(n, n) <= 1 << 12)
        .collect();
    let mut s = Sampler::new(seed);
    for k in s.indices(small.len(), 40) {
        let n = small[k];
        if let Some(hs) = t.ok("hom-set", hom_set(n, n), || key1(n)) {
            for m in hs
                .iter()
                .filter(|m| m.f.is_isomorphism() && m.h.is_isomorphism())
            {
                t.check("pi-reflects-isomorphisms", m.g.is_isomorphism(), || key1(n));
            }
        }
    }
    t.finish()
}

pub(crate) fn emd_equiv(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("emd-equiv");
    let mut standard: Vec<FgGroup> = groups_up_to(max.max(16));
    standard.extend(
        ["Z", "Z+Z/2", "Z/2+Z/4+Z"]
            .iter()
            .map(|s| s.parse::<FgGroup>().expect("literal")),
    );
    for a in &standard {
        let m = standard_emd(a);
        t.check("standard-exact", m.validate().ok() && m.is_exact(), || {
            (
                format!("A={a}"),
                json!({"M": Diagram::Moore(m.clone()).encode()}),
            )
        });
    }
    let groups = groups_up_to(max);
    let moore: Vec<Arc<MooreDiagram>> = groups.iter().map(|a| Arc::new(standard_emd(a))).collect();
    for m in &moore {
        t.instance();
        let n = emd_to_eeed(m);
        let back = eeed_to_emd(&n);
        t.check(
            "round-trip-object",
            back.as_ref().is_ok_and(|b| b.moore == **m),
            || moore_key(m, m),
        );
        t.check("image-exact", n.is_exact(), || key1(&n));
    }
    // The other direction, on diagrams of EMD′ from the exact corpus.
    for n in corpus(max).iter().filter(|n| eeed_to_emd(n).is_ok()) {
        let e = eeed_to_emd(n).expect("filtered");
        let there = Arc::new(emd_to_eeed(&e.moore));
        let iso = EedMorphism::new(
            there.clone(),
            n.clone(),
            Homomorphism::identity(n.a()),
            Homomorphism::identity(n.b()),
            e.witness.clone(),
        );
        t.check(
            "round-trip-up-to-witness",
            iso.is_ok_and(|i| i.is_isomorphism()),
            || key1(n),
        );
    }
    let mut s = Sampler::new(seed);
    let mut skipped = 0;
    for m in &moore {
        for m2 in &moore {
            let key = || moore_key(m, m2);
            let (a, a2) = (brute::factors(m.a()), brute::factors(m2.a()));
            let tors = brute::factors(&two_torsion(m.a()).group);
            let quot = brute::factors(&mod_two(m2.a()).group);
            let hs = moore_hom_set(m, m2).expect("finite");
            let (b, b2) = (brute::factors(m.b()), brute::factors(m2.b()));
            let count = if brute::hom_count(&a, &a2) * brute::hom_count(&b, &b2) <= BRUTE_LIMIT {
                let c = brute::count_moore_morphisms(m, m2) as u128;
                t.check("hom-count-oracle", hs.len() as u128 == c, key);
                c
            } else {
                skipped += 1;
                hs.len() as u128
            };
            t.check(
                "emd-count",
                count == brute::hom_count(&tors, &quot) * brute::hom_count(&a, &a2),
                key,
            );
            let (n, n2) = (Arc::new(emd_to_eeed(m)), Arc::new(emd_to_eeed(m2)));
            let eed_count = order(eed_hom_system(&n, &n2).group());
            t.check("counts-agree-across-equivalence", eed_count == count, key);
            for k in s.indices(hs.len(), 8) {
                let mm = &hs[k];
                let there = emd_mor_to_eeed(mm);
                t.check(
                    "round-trip-morphism",
                    eeed_mor_to_emd(&there).as_ref() == Ok(mm),
                    key,
                );
            }
            let fs: Vec<Homomorphism> = HomSpace::new(m.a(), m2.a())
                .elements()
                .expect("finite")
                .collect();
            let mut bij = fs.len() as u128 == brute::count_eta_morphisms(n.eta(), n2.eta()) as u128;
            for f in &fs {
                bij &= hom_to_ed(&n, &n2, f)
                    .and_then(|e| ed_to_hom(&n, &e))
                    .as_ref()
                    == Ok(f);
            }
            t.check("ed-hom-bijection", bij, key);
        }
    }
    t.note(format!(
        "{skipped} pairs above {BRUTE_LIMIT} raw triples are counted structurally only"
    ));
    t.finish()
}

fn spp_objects(max: u64) -> Vec<SppObject> {
    let groups = groups_up_to(max);
    groups
        .iter()
        .flat_map(|a| {
            groups
                .iter()
                .map(move |c| SppObject::new(a.clone(), c.clone()))
        })
        .collect()
}

fn spp_key(x: &SppObject, y: &SppObject) -> (String, Value) {
    (
        format!("({}, {}) -> ({}, {})", x.a, x.c, y.a, y.c),
        json!({"source": [x.a.to_string(), x.c.to_string()], "target": [y.a.to_string(), y.c.to_string()]}),
    )
}

fn spp_count(x: &SppObject, y: &SppObject) -> u128 {
    let f = |g: &FgGroup, g2: &FgGroup| brute::hom_count(&brute::factors(g), &brute::factors(g2));
    f(&x.a, &y.a) * f(&x.c, &y.c) * f(&two_torsion(&x.a).group, &mod_two(&y.c).group)
}

fn random_spp(s: &mut Sampler, x: &SppObject, y: &SppObject) -> SppMorphism {
    let u = s.hom(&two_torsion(&x.a).group, &mod_two(&y.c).group);
    SppMorphism::new(
        x.clone(),
        y.clone(),
        s.hom(&x.a, &y.a),
        s.hom(&x.c, &y.c),
        u,
    )
    .expect("shapes")
}

fn random_spp_plus(s: &mut Sampler, x: &SppObject, y: &SppObject) -> SppPlusMorphism {
    let g = ExtGroup::new(&x.a, &y.c);
    let c = s.element(g.group());
    let u = g.from_canonical(&c);
    SppPlusMorphism::new(
        x.clone(),
        y.clone(),
        s.hom(&x.a, &y.a),
        s.hom(&x.c, &y.c),
        u,
    )
    .expect("shapes")
}

fn spp_json(m: &SppMorphism) -> Value {
    json!({"f": MapJson::of(&m.f), "h": MapJson::of(&m.h), "u": MapJson::of(&m.u)})
}

/// Pairs whose hom-sets are enumerated for the round-trip checks.
const H_ROUND_TRIPS: usize = 40;

pub(crate) fn h_equiv(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("h-equiv");
    let objs = spp_objects(max);
    let hs: Vec<Eed> = objs.iter().map(|x| Arc::new(h_diagram(x))).collect();
    for (x, hx) in objs.iter().zip(&hs) {
        t.check(
            "h-valid-exact",
            hx.validate().ok() && hx.is_exact() && hx.eta().is_zero(),
            || key1(hx),
        );
        let id = h_mor(&SppMorphism::identity(x));
        t.check(
            "h-preserves-identity",
            id == EedMorphism::identity(hx),
            || key1(hx),
        );
    }
    for (x, hx) in objs.iter().zip(&hs) {
        for (y, hy) in objs.iter().zip(&hs) {
            t.instance();
            let count = order(eed_hom_system(hx, hy).group());
            t.check(
                "spp-count-equals-eeed-count",
                count == spp_count(x, y),
                || spp_key(x, y),
            );
        }
    }
    let mut s = Sampler::new(seed);
    let small = sample_pairs(&objs, H_ROUND_TRIPS, seed, |x, y| spp_count(x, y) <= 256);
    for (i, j) in small {
        let (x, y, hx, hy) = (&objs[i], &objs[j], &hs[i], &hs[j]);
        let brute_count = brute::count_eed_morphisms(hx, hy, BRUTE_LIMIT);
        t.check(
            "eeed-count-oracle",
            brute_count.map(|c| c as u128) == Some(spp_count(x, y)),
            || spp_key(x, y),
        );
        let Some(all) = t.ok("hom-set", hom_set(hx, hy), || spp_key(x, y)) else {
            continue;
        };
        for m in &all {
            let back = h_mor_inverse(x, y, m);
            t.check("full", back.as_ref().is_ok_and(|b| &h_mor(b) == m), || {
                spp_key(x, y)
            });
        }
        for _ in 0..8 {
            let m = random_spp(&mut s, x, y);
            let back = h_mor_inverse(x, y, &h_mor(&m));
            t.check("faithful", back.as_ref() == Ok(&m), || {
                let (k, _) = spp_key(x, y);
                (k, spp_json(&m))
            });
        }
    }
    for _ in 0..200 {
        let (x, y, z) = (s.pick(&objs), s.pick(&objs), s.pick(&objs));
        let (m0, m1) = (random_spp(&mut s, x, y), random_spp(&mut s, y, z));
        let lhs = m1.compose(&m0).map(|m| h_mor(&m));
        let rhs = h_mor(&m1).compose(&h_mor(&m0));
        t.check("h-preserves-composition", lhs.is_ok() && lhs == rhs, || {
            let (k, _) = spp_key(x, z);
            (k, json!({"m0": spp_json(&m0), "m1": spp_json(&m1)}))
        });
    }
    t.finish()
}

/// Seeded composable triples for the associativity checks.
const TRIPLES: usize = 1000;

pub(crate) fn spp_plus(max: u64, seed: u64) -> SuiteReport {
    let mut t = Tally::new("spp-plus");
    let objs = spp_objects(max);
    let mut s = Sampler::new(seed);
    for _ in 0..TRIPLES {
        t.instance();
        let w: Vec<&SppObject> = (0..4).map(|_| s.pick(&objs)).collect();
        let key = || spp_key(w[0], w[3]);
        let m: Vec<SppMorphism> = (0..3).map(|k| random_spp(&mut s, w[k], w[k + 1])).collect();
        let left = m[2].compose(&m[1]).and_then(|x| x.compose(&m[0]));
        let right = m[1].compose(&m[0]).and_then(|x| m[2].compose(&x));
        t.check("spp-associative", left.is_ok() && left == right, || {
            let (k, _) = key();
            (
                k,
                json!({"m0": spp_json(&m[0]), "m1": spp_json(&m[1]), "m2": spp_json(&m[2])}),
            )
        });
        let unit = SppMorphism::identity(w[1])
            .compose(&m[0])
            .and_then(|x| x.compose(&SppMorphism::identity(w[0])));
        t.check("spp-identity", unit.as_ref() == Ok(&m[0]), key);

        let p: Vec<SppPlusMorphism> = (0..3)
            .map(|k| random_spp_plus(&mut s, w[k], w[k + 1]))
            .collect();
        let left = p[2].compose(&p[1]).and_then(|x| x.compose(&p[0]));
        let right = p[1].compose(&p[0]).and_then(|x| p[2].compose(&x));
        t.check("spp-plus-associative", left.is_ok() && left == right, key);
        let unit = SppPlusMorphism::identity(w[1])
            .compose(&p[0])
            .and_then(|x| x.compose(&SppPlusMorphism::identity(w[0])));
        t.check("spp-plus-identity", unit.as_ref() == Ok(&p[0]), key);
        let composite = p[1].compose(&p[0]).map(|x| x.to_spp());
        let separately = p[1].to_spp().compose(&p[0].to_spp());
        t.check(
            "to-spp-functorial",
            composite.is_ok() && composite == separately,
            key,
        );
        t.check(
            "to-spp-identity",
            SppPlusMorphism::identity(w[0]).to_spp() == SppMorphism::identity(w[0]),
            key,
        );
    }
    let z2 = FgGroup::cyclic(2);
    let x = SppObject::new(z2.clone(), z2.clone());
    let e1 = ExtGroup::new(&z2, &z2)
        .classes()
        .find(|c| !c.is_zero())
        .expect("nonzero class");
    let m = SppPlusMorphism::new(
        x.clone(),
        x.clone(),
        Homomorphism::identity(&z2),
        Homomorphism::identity(&z2),
        e1.clone(),
    )
    .expect("endomorphism");
    let u = m.to_spp().u;
    t.check(
        "nonsplit-class-gives-identity",
        u.is_isomorphism() && u == phi_of_class(&e1),
        || spp_key(&x, &x),
    );
    t.finish()
}
