//! The acceptance criteria, one line each. Runs without the libtest harness
//! so the lines always print; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use moorediag::verify::{baer_table_z4, run_verify, SuiteReport};

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(names: &[&str], max_order: u64) -> (Vec<SuiteReport>, Duration) {
    let start = Instant::now();
    let reports = names
        .iter()
        .flat_map(|s| run_verify(s, max_order, 0).expect("known suite").suites)
        .collect();
    (reports, start.elapsed())
}

fn failures(reports: &[SuiteReport]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| {
            r.properties
                .iter()
                .filter(|p| !p.passed())
                .map(move |p| format!("{}/{} ({} of {})", r.suite, p.name, p.failed, p.checked))
        })
        .collect()
}

fn checked(reports: &[SuiteReport], suite: &str, prop: &str) -> u64 {
    reports
        .iter()
        .find(|r| r.suite == suite)
        .and_then(|r| r.property(prop))
        .map_or(0, |p| p.checked)
}

/// Passes when every property holds, each `(suite, property, min)` was
/// checked at least `min` times and the run fit in `budget`.
fn judge(
    names: &[&str],
    max_order: u64,
    minimums: &[(&str, &str, u64)],
    budget: Option<Duration>,
) -> Outcome {
    let (reports, took) = suites(names, max_order);
    let mut problems = failures(&reports);
    for &(suite, prop, min) in minimums {
        let n = checked(&reports, suite, prop);
        if n < min {
            problems.push(format!("{suite}/{prop} checked {n} < {min}"));
        }
    }
    if let Some(b) = budget {
        if took > b {
            problems.push(format!("took {took:.1?}, budget {b:?}"));
        }
    }
    let instances: u64 = reports.iter().map(|r| r.instances).sum();
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{instances} instances in {took:.1?}")
        } else {
            problems.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        (
            "Ext/2 to Hom(U[2],V/2) is a bijection, order <= 16",
            Box::new(move || {
                judge(
                    &["phi-iso"],
                    16,
                    &[
                        ("phi-iso", "injective", 625),
                        ("phi-iso", "surjective", 625),
                    ],
                    Some(secs(60)),
                )
            }),
        ),
        (
            "six-term sequence exact at all four joints",
            Box::new(|| {
                judge(
                    &["six-term"],
                    8,
                    &[
                        ("six-term", "exact-at-M[2]", 1),
                        ("six-term", "exact-at-U[2]", 1),
                        ("six-term", "exact-at-V/2", 1),
                        ("six-term", "exact-at-M/2", 1),
                    ],
                    None,
                )
            }),
        ),
        (
            "middle-map filling: (a)<=>(b), (b)=>(c), (c)=>(a) when 2Ext=0",
            Box::new(|| {
                judge(
                    &["middle"],
                    8,
                    &[
                        ("middle", "a-iff-b", 1),
                        ("middle", "b-implies-c", 1),
                        ("middle", "c-implies-a-when-2ext-zero", 1),
                    ],
                    None,
                )
            }),
        ),
        (
            "J hom groups, relations, representables and square match golden files",
            Box::new(|| judge(&["cj-tables"], 8, &[("cj-tables", "hom-groups", 1)], None)),
        ),
        (
            "hom-set sequence for pi on >= 100 exact pairs",
            Box::new(|| {
                judge(
                    &["pi-ses"],
                    8,
                    &[
                        ("pi-ses", "hom-count-oracle", 100),
                        ("pi-ses", "count-factorization", 100),
                        ("pi-ses", "kernel-of-pi-is-image-of-xi", 100),
                        ("pi-ses", "pi-surjective", 100),
                    ],
                    None,
                )
            }),
        ),
        (
            "Moore diagrams and EMD' agree, standard diagrams exact",
            Box::new(|| {
                judge(
                    &["emd-equiv"],
                    8,
                    &[
                        ("emd-equiv", "standard-exact", 28),
                        ("emd-equiv", "emd-count", 121),
                    ],
                    None,
                )
            }),
        ),
        (
            "H is an equivalence, SPP and SPP+ compose associatively",
            Box::new(|| {
                judge(
                    &["h-equiv", "spp-plus"],
                    8,
                    &[
                        ("h-equiv", "spp-count-equals-eeed-count", 14641),
                        ("spp-plus", "spp-associative", 1000),
                        ("spp-plus", "spp-plus-associative", 1000),
                        ("spp-plus", "to-spp-functorial", 1),
                    ],
                    None,
                )
            }),
        ),
        (
            "J and Delta dualities",
            Box::new(move || {
                judge(
                    &["j-dual", "delta-dual", "delta-adjoint"],
                    8,
                    &[
                        ("j-dual", "j-preserves-exactness", 1),
                        ("j-dual", "unit-isomorphism", 1),
                        ("delta-dual", "delta-of-representable", 3),
                        ("delta-dual", "odd-order-dual-vanishes", 1),
                        ("delta-dual", "h22-dual-not-exact", 1),
                        ("delta-dual", "explicit-equals-abstract", 50),
                        ("delta-adjoint", "adjunction-bijective", 25),
                    ],
                    Some(secs(120)),
                )
            }),
        ),
        (
            "extensions of Z/4 by Z/4 form Z/4 under Baer sum",
            Box::new(|| match baer_table_z4() {
                Ok(()) => Outcome {
                    ok: true,
                    detail: "4 classes".into(),
                },
                Err(e) => Outcome {
                    ok: false,
                    detail: e,
                },
            }),
        ),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.ok;
        println!(
            "criterion {}: {} {name}: {}",
            k + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
