//! The amino-acid ontology: five physico-chemical tiers, the lattice of
//! defined classes over them, and amino acids as gems loaded from a table.
//!
//! Hydrophobicity and polarity are modelled as binary splits
//! (`Hydrophobic`/`Hydrophilic`, `Polar`/`NonPolar`).

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Axiom, ClassExpression, EntityKind, Iri, ModelError, Ontology};
use crate::patterns::{
    defgem, defpartition, deftier, facet, FacetRegistry, GemSpec, PatternError, TierSpec,
};

pub const ONTOLOGY_NAME: &str = "amino_acids";
pub const PREFIX: &str = "o";
pub const DOMAIN: &str = "AminoAcid";
pub const TIER_SUPER: &str = "PhysioChemicalProperty";

/// Tier names and values, in the order used for defined-class names.
pub const TIERS: [(&str, &[&str]); 5] = [
    ("Size", &["Tiny", "Small", "Large"]),
    ("Charge", &["Positive", "Neutral", "Negative"]),
    ("Hydrophobicity", &["Hydrophobic", "Hydrophilic"]),
    ("Polarity", &["Polar", "NonPolar"]),
    ("SideChainStructure", &["Aromatic", "Aliphatic"]),
];

/// Header of the rows table.
pub const CSV_HEADER: [&str; 7] = [
    "name",
    "size",
    "charge",
    "hydrophobicity",
    "polarity",
    "side_chain",
    "comment",
];

/// The bundled table (Alanine only).
pub const BUNDLED_ROWS: &str = include_str!("../data/amino_acids.csv");

#[derive(Debug, Error)]
pub enum ExemplarError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("cannot read rows: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad header: expected `{}`, found `{found}`", CSV_HEADER.join(","))]
    BadHeader { found: String },
    #[error("row {row}: `{value}` is not a valid {column}")]
    BadEnumValue {
        row: usize,
        column: &'static str,
        value: String,
    },
    #[error("row {row}: `{name}` is not a valid class name")]
    BadName { row: usize, name: String },
    #[error("row {row}: duplicate amino acid `{name}`")]
    DuplicateName { row: usize, name: String },
}

/// One amino acid and its value on each tier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AminoAcidRow {
    pub name: String,
    pub size: String,
    pub charge: String,
    pub hydrophobicity: String,
    pub polarity: String,
    pub side_chain: String,
    pub comment: Option<String>,
}

impl AminoAcidRow {
    /// Values in tier order.
    pub fn values(&self) -> [&str; 5] {
        [
            &self.size,
            &self.charge,
            &self.hydrophobicity,
            &self.polarity,
            &self.side_chain,
        ]
    }

    pub fn alanine() -> Self {
        AminoAcidRow {
            name: "Alanine".into(),
            size: "Tiny".into(),
            charge: "Neutral".into(),
            hydrophobicity: "Hydrophobic".into(),
            polarity: "NonPolar".into(),
            side_chain: "Aliphatic".into(),
            comment: Some("An amino acid with a single methyl group as a side-chain.".into()),
        }
    }
}

pub fn load_rows(path: impl AsRef<Path>) -> Result<Vec<AminoAcidRow>, ExemplarError> {
    let file = std::fs::File::open(path).map_err(csv::Error::from)?;
    read_rows(file)
}

/// Reads and validates rows. Empty comments become `None`.
pub fn read_rows(reader: impl Read) -> Result<Vec<AminoAcidRow>, ExemplarError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(ExemplarError::BadHeader {
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let columns = ["size", "charge", "hydrophobicity", "polarity", "side_chain"];
    let mut rows: Vec<AminoAcidRow> = Vec::new();
    for (i, record) in rdr.deserialize().enumerate() {
        let row_no = i + 1;
        let mut row: AminoAcidRow = record?;
        if row.comment.as_deref().is_some_and(str::is_empty) {
            row.comment = None;
        }
        if Iri::new(PREFIX, &row.name).is_err() {
            return Err(ExemplarError::BadName {
                row: row_no,
                name: row.name,
            });
        }
        for ((column, (_, allowed)), value) in columns.iter().zip(TIERS).zip(row.values()) {
            if !allowed.contains(&value) {
                return Err(ExemplarError::BadEnumValue {
                    row: row_no,
                    column,
                    value: value.to_owned(),
                });
            }
        }
        if rows.iter().any(|r| r.name == row.name) {
            return Err(ExemplarError::DuplicateName {
                row: row_no,
                name: row.name,
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Fresh ontology with the domain class and the tier superclass declared.
pub fn new_exemplar_ontology() -> Ontology {
    let mut ont = Ontology::new(Iri::new(PREFIX, ONTOLOGY_NAME).expect("valid name"), PREFIX)
        .expect("valid prefix");
    ont.declare(EntityKind::Class, DOMAIN)
        .expect("fresh ontology");
    ont.declare(EntityKind::Class, TIER_SUPER)
        .expect("fresh ontology");
    ont
}

/// Size as a value partition, the other four as tiers; all functional,
/// disjoint and covering, on the amino-acid domain.
pub fn build_tiers(ont: &mut Ontology) -> Result<FacetRegistry, ExemplarError> {
    let domain = ont.iri_for(DOMAIN)?;
    let sup = ont.iri_for(TIER_SUPER)?;
    let mut registry = FacetRegistry::new();
    for (i, (name, values)) in TIERS.iter().enumerate() {
        let spec = TierSpec::new(name, values.iter().copied())
            .domain(domain.clone())
            .sup(sup.clone());
        if i == 0 {
            defpartition(ont, &mut registry, &spec)?;
        } else {
            deftier(ont, &mut registry, &spec)?;
        }
    }
    Ok(registry)
}

/// Every non-empty choice of tiers with one value each, in tier order.
pub fn defined_class_choices() -> Vec<Vec<&'static str>> {
    let mut out: Vec<Vec<&'static str>> = vec![Vec::new()];
    for (_, values) in TIERS {
        let mut next = Vec::with_capacity(out.len() * (values.len() + 1));
        for prefix in &out {
            next.push(prefix.clone());
            for v in values {
                let mut p = prefix.clone();
                p.push(*v);
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|c| !c.is_empty());
    out
}

pub fn defined_class_name(values: &[&str]) -> String {
    format!("{}{DOMAIN}", values.concat())
}

/// Declares `Name ≡ AminoAcid ⊓ facet(values)` for every choice.
pub fn generate_defined_classes(
    ont: &mut Ontology,
    registry: &FacetRegistry,
) -> Result<Vec<Iri>, ExemplarError> {
    let domain = ont.iri_for(DOMAIN)?;
    let mut out = Vec::new();
    for choice in defined_class_choices() {
        let values = choice
            .iter()
            .map(|v| ont.iri_for(v))
            .collect::<Result<Vec<_>, _>>()?;
        let mut operands = vec![ClassExpression::named(domain.clone())];
        operands.extend(facet(registry, &values)?);
        let entity = ont.declare(EntityKind::Class, &defined_class_name(&choice))?;
        ont.add_axiom(Axiom::EquivalentClasses {
            operands: vec![
                entity.iri.clone().into(),
                ClassExpression::intersection(operands)?,
            ],
        })?;
        out.push(entity.iri);
    }
    Ok(out)
}

pub fn gem_spec(ont: &Ontology, row: &AminoAcidRow) -> Result<GemSpec, ExemplarError> {
    let facets = row
        .values()
        .iter()
        .map(|v| ont.iri_for(v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut spec = GemSpec::new(&row.name, facets);
    spec.comment = row.comment.clone();
    Ok(spec)
}

/// One primitive gem per row.
pub fn build_gems(
    ont: &mut Ontology,
    registry: &FacetRegistry,
    rows: &[AminoAcidRow],
) -> Result<Vec<Iri>, ExemplarError> {
    rows.iter()
        .map(|row| {
            let spec = gem_spec(ont, row)?;
            Ok(defgem(ont, registry, &spec)?)
        })
        .collect()
}

/// The whole exemplar.
#[derive(Debug, Clone)]
pub struct Exemplar {
    pub ontology: Ontology,
    pub registry: FacetRegistry,
    pub defined: Vec<Iri>,
    pub gems: Vec<Iri>,
}

pub fn build_exemplar(rows: &[AminoAcidRow]) -> Result<Exemplar, ExemplarError> {
    let mut ontology = new_exemplar_ontology();
    let registry = build_tiers(&mut ontology)?;
    let defined = generate_defined_classes(&mut ontology, &registry)?;
    let gems = build_gems(&mut ontology, &registry, rows)?;
    Ok(Exemplar {
        ontology,
        registry,
        defined,
        gems,
    })
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// The exemplar as a DSL program; evaluating it yields the same ontology
/// as [`build_exemplar`].
pub fn to_program(rows: &[AminoAcidRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "(defontology {ONTOLOGY_NAME} :prefix {PREFIX})");
    let _ = writeln!(s, "(defclass {DOMAIN})");
    let _ = writeln!(s, "(defclass {TIER_SUPER})");
    for (i, (name, values)) in TIERS.iter().enumerate() {
        let head = if i == 0 { "defpartition" } else { "deftier" };
        let _ = writeln!(
            s,
            "({head} {name} [{}] :domain {DOMAIN} :super {TIER_SUPER})",
            values.join(" ")
        );
    }
    for choice in defined_class_choices() {
        let _ = writeln!(
            s,
            "(defclass {} :equivalent (and {DOMAIN} (facet {})))",
            defined_class_name(&choice),
            choice.join(" ")
        );
    }
    for row in rows {
        let _ = write!(s, "(defgem {}", row.name);
        if let Some(c) = &row.comment {
            let _ = write!(s, "\n  :comment {}", quote(c));
        }
        let _ = writeln!(s, "\n  :facet {})", row.values().join(" "));
    }
    s
}
