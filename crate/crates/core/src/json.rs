//! JSON encodings of groups, maps, extensions and diagrams. Groups are
//! literals such as `Z/2+Z`; a map is its matrix as a list of rows (one
//! row per codomain factor). Serialization goes through structs so field
//! order is fixed.

use serde::{Deserialize, Serialize};

use crate::diagrams::{EtaDiagram, ExtEtaDiagram, MooreDiagram};
use crate::error::{Error, Result};
use crate::ext::Extension;
use crate::fgab::{FgGroup, Homomorphism};
use crate::int::{to_i64, Int};
use crate::matrix::Matrix;

/// A matrix entry: a JSON integer, or a decimal string when it does not
/// fit in 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Small(i64),
    Big(String),
}

impl Entry {
    fn of(x: &Int) -> Self {
        match to_i64(x) {
            Some(v) => Entry::Small(v),
            None => Entry::Big(x.to_string()),
        }
    }

    fn value(&self) -> Result<Int> {
        match self {
            Entry::Small(v) => Ok(Int::from(*v)),
            Entry::Big(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

pub type Rows = Vec<Vec<Entry>>;

pub fn rows(m: &Matrix) -> Rows {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Entry::of(&m[(i, j)])).collect())
        .collect()
}

pub fn hom_from_rows(dom: &FgGroup, cod: &FgGroup, rows: &Rows) -> Result<Homomorphism> {
    let (r, c) = (cod.ngens(), dom.ngens());
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {r}x{c} matrix for a map {dom} -> {cod}"
        )));
    }
    let mut m = Matrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = e.value()?;
        }
    }
    Homomorphism::new(dom, cod, m)
}

fn group(s: &str) -> Result<FgGroup> {
    s.parse()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: String,
    pub codomain: String,
    pub matrix: Rows,
}

impl MapJson {
    pub fn of(f: &Homomorphism) -> Self {
        MapJson {
            domain: f.domain().to_string(),
            codomain: f.codomain().to_string(),
            matrix: rows(f.matrix()),
        }
    }

    pub fn decode(&self) -> Result<Homomorphism> {
        hom_from_rows(&group(&self.domain)?, &group(&self.codomain)?, &self.matrix)
    }
}

/// `V -i-> M -p-> U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    #[serde(rename = "V")]
    pub v: String,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "U")]
    pub u: String,
    pub i: Rows,
    pub p: Rows,
}

impl ExtensionJson {
    pub fn of(e: &Extension) -> Self {
        ExtensionJson {
            v: e.v().to_string(),
            m: e.m().to_string(),
            u: e.u().to_string(),
            i: rows(e.i().matrix()),
            p: rows(e.p().matrix()),
        }
    }

    pub fn decode(&self) -> Result<Extension> {
        let (v, m, u) = (group(&self.v)?, group(&self.m)?, group(&self.u)?);
        Extension::new(
            hom_from_rows(&v, &m, &self.i)?,
            hom_from_rows(&m, &u, &self.p)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DiagramJson {
    Moore {
        #[serde(rename = "A")]
        a: String,
        #[serde(rename = "B")]
        b: String,
        phi: Rows,
        psi: Rows,
    },
    Eta {
        #[serde(rename = "A")]
        a: String,
        #[serde(rename = "C")]
        c: String,
        eta: Rows,
    },
    Eed {
        #[serde(rename = "A")]
        a: String,
        #[serde(rename = "B")]
        b: String,
        #[serde(rename = "C")]
        c: String,
        psi: Rows,
        eta: Rows,
        chi: Rows,
    },
}

/// A decoded diagram. Moore and extended diagrams are only checked for
/// shape, so relation failures can still be reported by `validate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Moore(MooreDiagram),
    Eta(EtaDiagram),
    Eed(ExtEtaDiagram),
}

impl DiagramJson {
    pub fn decode(&self) -> Result<Diagram> {
        Ok(match self {
            DiagramJson::Moore { a, b, phi, psi } => {
                let (a, b) = (group(a)?, group(b)?);
                Diagram::Moore(MooreDiagram::from_maps(
                    hom_from_rows(&a, &b, phi)?,
                    hom_from_rows(&b, &a, psi)?,
                )?)
            }
            DiagramJson::Eta { a, c, eta } => Diagram::Eta(EtaDiagram::new(hom_from_rows(
                &group(a)?,
                &group(c)?,
                eta,
            )?)?),
            DiagramJson::Eed {
                a,
                b,
                c,
                psi,
                eta,
                chi,
            } => {
                let (a, b, c) = (group(a)?, group(b)?, group(c)?);
                Diagram::Eed(ExtEtaDiagram::from_maps(
                    hom_from_rows(&b, &a, psi)?,
                    hom_from_rows(&a, &c, eta)?,
                    hom_from_rows(&c, &b, chi)?,
                )?)
            }
        })
    }
}

impl Diagram {
    pub fn encode(&self) -> DiagramJson {
        match self {
            Diagram::Moore(m) => DiagramJson::Moore {
                a: m.a().to_string(),
                b: m.b().to_string(),
                phi: rows(m.phi().matrix()),
                psi: rows(m.psi().matrix()),
            },
            Diagram::Eta(e) => DiagramJson::Eta {
                a: e.a().to_string(),
                c: e.c().to_string(),
                eta: rows(e.eta().matrix()),
            },
            Diagram::Eed(n) => DiagramJson::Eed {
                a: n.a().to_string(),
                b: n.b().to_string(),
                c: n.c().to_string(),
                psi: rows(n.psi().matrix()),
                eta: rows(n.eta().matrix()),
                chi: rows(n.chi().matrix()),
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Diagram::Moore(_) => "moore",
            Diagram::Eta(_) => "eta",
            Diagram::Eed(_) => "eed",
        }
    }
}

pub fn encode_eed(n: &ExtEtaDiagram) -> DiagramJson {
    Diagram::Eed(n.clone()).encode()
}

pub fn parse_diagram(s: &str) -> Result<Diagram> {
    let j: DiagramJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.decode()
}

pub fn parse_extension(s: &str) -> Result<Extension> {
    let j: ExtensionJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.decode()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cj::{representable, CjObject};
    use crate::diagrams::standard_emd;
    use crate::ext::{realize, ExtGroup};

    #[test]
    fn eed_round_trip_and_field_order() {
        let fb = representable(CjObject::B);
        let s = serde_json::to_string(&encode_eed(&fb)).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"eed","A":"Z/2","B":"Z/4","C":"Z/2","psi":[[1]],"eta":[[1]],"chi":[[2]]}"#
        );
        assert_eq!(parse_diagram(&s).unwrap(), Diagram::Eed(fb));
    }

    #[test]
    fn moore_and_extension_round_trip() {
        let m = standard_emd(&"Z/4+Z".parse().unwrap());
        let d = Diagram::Moore(m);
        let s = serde_json::to_string(&d.encode()).unwrap();
        assert!(s.starts_with(r#"{"kind":"moore","A":"Z/4+Z","#));
        assert_eq!(parse_diagram(&s).unwrap(), d);

        let g = ExtGroup::new(&"Z/4".parse().unwrap(), &"Z/2".parse().unwrap());
        let e = realize(&g.classes().nth(1).unwrap());
        let s = serde_json::to_string(&ExtensionJson::of(&e)).unwrap();
        assert!(s.starts_with(r#"{"V":"Z/2","M":"#));
        let back = parse_extension(&s).unwrap();
        assert_eq!((back.i(), back.p()), (e.i(), e.p()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_diagram("{"), Err(Error::Parse(_))));
        let bad = r#"{"kind":"eta","A":"Z/2","C":"Z/2","eta":[[1,0]]}"#;
        assert!(matches!(
            parse_diagram(bad),
            Err(Error::DimensionMismatch(_))
        ));
        let ill = r#"{"kind":"eta","A":"Z/2","C":"Z/4","eta":[[1]]}"#;
        assert!(matches!(parse_diagram(ill), Err(Error::IllDefined { .. })));
        let big = r#"{"kind":"eta","A":"Z","C":"Z","eta":[["123456789012345678901234567890"]]}"#;
        assert!(parse_diagram(big).is_err());
    }
}
