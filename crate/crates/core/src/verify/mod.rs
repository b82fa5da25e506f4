//! Named verification suites. Each enumerates every group up to a maximum
//! order (sampling with a seed where that is too large), checks a list of
//! properties and collects replayable counterexamples. Reports carry no
//! timings, so equal parameters give byte-identical JSON.

mod categories;
mod diagrams;
mod ext;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub use ext::{aut_generators, baer_table_z4, orbit_representatives, MiddleSubgroups};

pub const SUITES: [&str; 13] = [
    "phi-iso",
    "six-term",
    "middle",
    "pi-ses",
    "eed-rels",
    "emd-equiv",
    "h-equiv",
    "spp-plus",
    "cj-tables",
    "yoneda",
    "j-dual",
    "delta-dual",
    "delta-adjoint",
];

/// Counterexamples kept per property.
const KEEP: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub property: String,
    pub instance: String,
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: u64,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub suite: String,
    pub max_order: u64,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.suites {
            let _ = writeln!(
                s,
                "{} {}: {} instances",
                if r.passed { "PASS" } else { "FAIL" },
                r.suite,
                r.instances
            );
            for p in &r.properties {
                let _ = writeln!(
                    s,
                    "  {} {} ({} checked, {} failed)",
                    if p.passed() { "ok  " } else { "FAIL" },
                    p.name,
                    p.checked,
                    p.failed
                );
            }
            for n in &r.notes {
                let _ = writeln!(s, "  note: {n}");
            }
            for c in &r.counterexamples {
                let _ = writeln!(
                    s,
                    "  counterexample [{}] {}: {}",
                    c.property, c.instance, c.payload
                );
            }
        }
        let _ = writeln!(
            s,
            "{} {} (max-order {}, seed {})",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.max_order,
            self.seed
        );
        s
    }
}

/// Accumulates property checks for one suite.
pub(crate) struct Tally {
    suite: &'static str,
    instances: u64,
    props: BTreeMap<String, (u64, u64)>,
    order: Vec<String>,
    counterexamples: Vec<Counterexample>,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn new(suite: &'static str) -> Self {
        Tally {
            suite,
            instances: 0,
            props: BTreeMap::new(),
            order: Vec::new(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn instance(&mut self) {
        self.instances += 1;
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Records one check; `witness` is only called on failure and returns
    /// the instance key and a payload that replays it.
    pub(crate) fn check(
        &mut self,
        prop: &str,
        ok: bool,
        witness: impl FnOnce() -> (String, Value),
    ) {
        if !self.props.contains_key(prop) {
            self.order.push(prop.to_string());
        }
        let e = self.props.entry(prop.to_string()).or_insert((0, 0));
        e.0 += 1;
        if !ok {
            e.1 += 1;
            if e.1 as usize <= KEEP {
                let (instance, payload) = witness();
                self.counterexamples.push(Counterexample {
                    property: prop.to_string(),
                    instance,
                    payload,
                });
            }
        }
    }

    /// Unwraps `r`, recording an error as a failure of `prop`.
    pub(crate) fn ok<T>(
        &mut self,
        prop: &str,
        r: Result<T>,
        key: impl FnOnce() -> (String, Value),
    ) -> Option<T> {
        match r {
            Ok(v) => {
                self.check(prop, true, || unreachable!());
                Some(v)
            }
            Err(e) => {
                self.check(prop, false, || {
                    let (k, mut p) = key();
                    if let Value::Object(m) = &mut p {
                        m.insert("error".into(), Value::String(e.to_string()));
                    }
                    (k, p)
                });
                None
            }
        }
    }

    /// Registers `prop` even if nothing was checked, so a vacuous property
    /// shows up with zero checks.
    pub(crate) fn declare(&mut self, prop: &str) {
        if !self.props.contains_key(prop) {
            self.order.push(prop.to_string());
            self.props.insert(prop.to_string(), (0, 0));
        }
    }

    pub(crate) fn finish(self) -> SuiteReport {
        let properties: Vec<PropertyResult> = self
            .order
            .iter()
            .map(|name| {
                let (checked, failed) = self.props[name];
                PropertyResult {
                    name: name.clone(),
                    checked,
                    failed,
                }
            })
            .collect();
        let mut counterexamples = self.counterexamples;
        counterexamples.sort_by(|a, b| (&a.property, &a.instance).cmp(&(&b.property, &b.instance)));
        SuiteReport {
            suite: self.suite.to_string(),
            instances: self.instances,
            passed: properties.iter().all(|p| p.passed()),
            properties,
            counterexamples,
            notes: self.notes,
        }
    }
}

fn run_one(suite: &str, max_order: u64, seed: u64) -> Result<SuiteReport> {
    Ok(match suite {
        "phi-iso" => ext::phi_iso(max_order),
        "six-term" => ext::six_term_suite(max_order),
        "middle" => ext::middle(max_order),
        "pi-ses" => diagrams::pi_ses(max_order, seed),
        "eed-rels" => diagrams::eed_rels(max_order, seed),
        "emd-equiv" => diagrams::emd_equiv(max_order, seed),
        "h-equiv" => diagrams::h_equiv(max_order, seed),
        "spp-plus" => diagrams::spp_plus(max_order, seed),
        "cj-tables" => categories::cj_tables(),
        "yoneda" => categories::yoneda(max_order, seed),
        "j-dual" => categories::j_dual_suite(max_order),
        "delta-dual" => categories::delta_dual(max_order, seed),
        "delta-adjoint" => categories::delta_adjoint(max_order, seed),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_verify(suite: &str, max_order: u64, seed: u64) -> Result<VerifyReport> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let suites = names
        .into_iter()
        .map(|s| run_one(s, max_order, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        schema: 1,
        suite: suite.to_string(),
        max_order,
        seed,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_verify("nope", 4, 0),
            Err(Error::UnknownSuite("nope".into()))
        );
    }

    #[test]
    fn tally_keeps_order_and_caps_counterexamples() {
        let mut t = Tally::new("phi-iso");
        t.declare("z");
        for i in 0..5 {
            t.check("a", i % 2 == 0, || (format!("{i}"), Value::Null));
        }
        let r = t.finish();
        assert!(!r.passed);
        assert_eq!(r.properties[0].name, "z");
        assert_eq!(r.property("a").unwrap().failed, 2);
        assert_eq!(r.counterexamples.len(), 2);
    }
}
