//! Machine-readable ontology dump: JSON Lines, one record per line.
//!
//! The first record describes the ontology, then one record per declared
//! entity (in declaration order), then one record per axiom (in insertion
//! order):
//!
//! ```text
//! {"record":"ontology","iri":"o:aa","default_prefix":"o","prefixes":{"o":"http://example.org/aa#",...}}
//! {"record":"declaration","kind":"Class","iri":"o:Size"}
//! {"record":"axiom","axiom":"SubClassOf","sub":{"type":"Named","iri":"o:Tiny"},"super":{"type":"Named","iri":"o:Size"}}
//! ```
//!
//! Class expressions are objects tagged by `type` (`Named`, `Some`, `Only`,
//! `And`, `Or`); axioms are tagged by `axiom` and carry the field names of
//! [`Axiom`]. Annotation values are either a JSON string (literal) or
//! `{"iri": "..."}`.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Axiom, EntityKind, Iri, ModelError, Ontology};

#[derive(Debug, Error)]
pub enum DumpError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {source}")]
    Model {
        line: usize,
        #[source]
        source: ModelError,
    },
    #[error("dump does not start with an ontology record")]
    MissingHeader,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
enum Record {
    Ontology {
        iri: Iri,
        default_prefix: String,
        prefixes: IndexMap<String, String>,
    },
    Declaration {
        kind: EntityKind,
        iri: Iri,
    },
    Axiom {
        #[serde(flatten)]
        axiom: Axiom,
    },
}

pub fn to_json_lines(ont: &Ontology) -> String {
    let mut lines = Vec::with_capacity(1 + ont.signature().len() + ont.axiom_count());
    let header = Record::Ontology {
        iri: ont.iri().clone(),
        default_prefix: ont.default_prefix().to_owned(),
        prefixes: ont.prefixes().clone(),
    };
    lines.push(serde_json::to_string(&header).expect("serializable"));
    for e in ont.signature() {
        let rec = Record::Declaration {
            kind: e.kind,
            iri: e.iri,
        };
        lines.push(serde_json::to_string(&rec).expect("serializable"));
    }
    for ax in ont.axioms() {
        let rec = Record::Axiom { axiom: ax.clone() };
        lines.push(serde_json::to_string(&rec).expect("serializable"));
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

pub fn from_json_lines(text: &str) -> Result<Ontology, DumpError> {
    let mut ont: Option<Ontology> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let rec: Record =
            serde_json::from_str(raw).map_err(|source| DumpError::Json { line, source })?;
        let model = |source| DumpError::Model { line, source };
        match (rec, ont.as_mut()) {
            (
                Record::Ontology {
                    iri,
                    default_prefix,
                    prefixes,
                },
                None,
            ) => {
                let mut fresh = Ontology::new(iri, &default_prefix).map_err(model)?;
                for (p, e) in &prefixes {
                    fresh.set_prefix(p, e).map_err(model)?;
                }
                ont = Some(fresh);
            }
            (_, None) => return Err(DumpError::MissingHeader),
            (Record::Ontology { .. }, Some(_)) => {
                return Err(model(ModelError::MalformedAxiom(
                    "duplicate ontology record".into(),
                )))
            }
            (Record::Declaration { kind, iri }, Some(o)) => {
                o.declare_iri(kind, iri).map_err(model)?;
            }
            (Record::Axiom { axiom }, Some(o)) => {
                o.add_axiom(axiom).map_err(model)?;
            }
        }
    }
    ont.ok_or(DumpError::MissingHeader)
}
