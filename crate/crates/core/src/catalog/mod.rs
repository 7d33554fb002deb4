//! The identity catalog: a versioned JSON file of records, each checked by
//! the strategy its `kind` selects, and the reports produced by a run.

mod families;
mod report;
mod runner;

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::gammaexpr::{GammaExpr, GammaSum};
use crate::hyper::{HypParams, PochRatio};

pub use report::{Achieved, Outcome, ReportEntry, Summary, VerificationReport};
pub use runner::{run_all, run_records, verify_identity};

pub const SCHEMA_VERSION: u32 = 1;

/// The catalog shipped with the crate.
pub const BUNDLED_CATALOG: &str = include_str!("../../data/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    PointEvaluation,
    ParametricFamily,
    TransformRule,
    ProofChain,
    /// any kind this version cannot verify; reported as skipped
    #[serde(other)]
    Unsupported,
}

/// Left side of a point evaluation: ₂F₁(params; z).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lhs {
    pub params: HypParams,
    pub z: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Rhs {
    Gamma(GammaExpr),
    GammaSum(GammaSum),
    Rational(Rational),
    /// base^n · Π(upper)_n / Π(lower)_n, for families indexed by n
    PochRatio {
        base: Rational,
        ratio: PochRatio,
    },
}

/// Grid or sampling specification; the variant names a built-in family or
/// a structural check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Parameters {
    /// ₂F₁(a,b;c;1) through its Beta integral vs Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))
    Gauss { samples: usize, seed: u64 },
    /// ₂F₁(a,b;(a+b+1)/2;1/2)
    GaussSecond { samples: usize, seed: u64 },
    /// ₂F₁(a,1−a;c;1/2)
    Bailey { samples: usize, seed: u64 },
    /// ₂F₁(a,b;1+a−b;−1)
    Kummer { samples: usize, seed: u64 },
    /// ∫₀¹ t^(x−1)(1−t)^(y−1) dt by quadrature vs Γ(x)Γ(y)/Γ(x+y)
    BetaIntegral { samples: usize, seed: u64 },
    /// terminating ₂F₁(−n, −n−1/2; 4n+9/2; 1/5), exact for n = 0..=n_max
    ApagoduZeilberger { n_max: u64, rhs: Rhs },
    /// ₂F₁(1−a, b; b+2; b/(a+b)) = (b+1)(a/(a+b))^a on the grid a × b
    GosperStrange { a: Vec<Rational>, b: Vec<Rational> },
    /// ₂F₁(1/2, b; 5/2−2b; 1/4) closed form for each b
    GosperQuarter { b: Vec<Rational> },
    /// the quadratic splitting of ₂F₁(a, b; 1/2; z) at each (a, b, z)
    ZjSplit { points: Vec<[Rational; 3]> },
    /// numerical soundness of a named transformation rule
    Rule { rule: String, samples: usize, seed: u64 },
    /// the degree-12 derivation of the main evaluation
    MainChain,
    /// integral proof steps of the Gosper ¼-identity at each b
    GosperProof { b: Vec<Rational> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRecord {
    pub id: String,
    pub kind: Kind,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Lhs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Rhs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
    /// minimum precision for this record, in decimal digits
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<u32>,
}

impl IdentityRecord {
    /// Check that the fields present match what `kind` needs.
    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Catalog(format!("record {:?}: {why}", self.id)));
        if self.id.trim().is_empty() {
            return bad("empty id");
        }
        let p = self.parameters.as_ref();
        match self.kind {
            Kind::PointEvaluation => {
                if self.lhs.is_none() || self.rhs.is_none() || p.is_some() {
                    return bad("point-evaluation needs lhs and rhs and no parameters");
                }
                if let Some(Rhs::PochRatio { .. }) = self.rhs {
                    return bad("a Pochhammer ratio right side needs an index; use a family");
                }
            }
            Kind::ParametricFamily => match p {
                Some(Parameters::Rule { .. } | Parameters::MainChain | Parameters::GosperProof { .. }) | None => {
                    return bad("parametric-family needs family parameters")
                }
                Some(_) => {}
            },
            Kind::TransformRule => match p {
                Some(Parameters::Rule { rule, .. }) => {
                    if crate::transforms::TransformRule::by_name(rule).is_none() {
                        return bad(&format!("unknown rule {rule:?}"));
                    }
                }
                _ => return bad("transform-rule needs rule parameters"),
            },
            Kind::ProofChain => {
                if !matches!(p, Some(Parameters::MainChain | Parameters::GosperProof { .. })) {
                    return bad("proof-chain needs main-chain or gosper-proof parameters");
                }
            }
            Kind::Unsupported => {}
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    schema_version: u32,
    records: Vec<IdentityRecord>,
}

/// Parse and validate catalog JSON.
pub fn catalog_from_str(text: &str) -> Result<Vec<IdentityRecord>> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::Catalog(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (i, r) in file.records.iter().enumerate() {
        r.validate()?;
        if let Some(j) = seen.insert(&r.id, i) {
            return Err(Error::Catalog(format!(
                "duplicate id {:?}: record #{} ({}) and record #{} ({})",
                r.id,
                j + 1,
                file.records[j].source,
                i + 1,
                r.source
            )));
        }
    }
    Ok(file.records)
}

pub fn catalog_load(path: impl AsRef<Path>) -> Result<Vec<IdentityRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
    catalog_from_str(&text).map_err(|e| match e {
        Error::Catalog(m) => Error::Catalog(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn bundled_catalog() -> Vec<IdentityRecord> {
    catalog_from_str(BUNDLED_CATALOG).expect("bundled catalog is valid")
}

/// Serialize records in the catalog file format.
pub fn catalog_to_string(records: &[IdentityRecord]) -> String {
    let file = CatalogFile { schema_version: SCHEMA_VERSION, records: records.to_vec() };
    serde_json::to_string_pretty(&file).expect("records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrap(records: &str) -> String {
        format!(r#"{{"schema_version": 1, "records": [{records}]}}"#)
    }

    const POINT: &str = r#"{"id": "cl", "kind": "point-evaluation", "source": "test",
        "lhs": {"params": {"a": "1/2", "b": "2/3", "c": "1/6"}, "z": "1/4"},
        "rhs": {"gamma": {"rat": [["2", "1/3"], ["4/3", "1"]]}}}"#;

    #[test]
    fn bundled_catalog_is_large_enough() {
        let recs = bundled_catalog();
        assert!(recs.len() >= 13);
        let ids: Vec<&str> = recs.iter().map(|r| r.id.as_str()).collect();
        for id in ["main-evaluation", "conclusion", "conclusion-corrected", "campbell-levrie"] {
            assert!(ids.contains(&id), "{id}");
        }
    }

    #[test]
    fn round_trip() {
        let recs = catalog_from_str(&wrap(POINT)).unwrap();
        let again = catalog_from_str(&catalog_to_string(&recs)).unwrap();
        assert_eq!(recs, again);
    }

    #[test]
    fn rejections() {
        let dup = catalog_from_str(&wrap(&format!("{POINT}, {}", POINT.replace("\"test\"", "\"other\""))));
        let msg = dup.unwrap_err().to_string();
        assert!(msg.contains("record #1 (test)") && msg.contains("record #2 (other)"), "{msg}");
        let pole = POINT.replace(r#"{"rat": [["2", "1/3"], ["4/3", "1"]]}"#, r#"{"gamma": [["0", 1]]}"#);
        assert!(catalog_from_str(&wrap(&pole)).is_err());
        let extra = POINT.replace(r#""source": "test","#, r#""source": "test", "colour": "red","#);
        assert!(catalog_from_str(&wrap(&extra)).unwrap_err().to_string().contains("colour"));
        assert!(catalog_from_str(r#"{"schema_version": 2, "records": []}"#).is_err());
        let no_rhs = POINT.replace(r#""rhs": {"gamma": {"rat": [["2", "1/3"], ["4/3", "1"]]}}"#, r#""digits": 5"#);
        assert!(catalog_from_str(&wrap(&no_rhs)).is_err());
    }

    #[test]
    fn unknown_kind_parses_as_unsupported() {
        let rec = r#"{"id": "x", "kind": "hypergeometric-oracle", "source": "future"}"#;
        let recs = catalog_from_str(&wrap(rec)).unwrap();
        assert_eq!(recs[0].kind, Kind::Unsupported);
    }
}
