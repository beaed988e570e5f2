//! The OWL subset targeted by the pattern library.
//!
//! An [`Ontology`] is an ordered store: entities keep their declaration
//! order and axioms keep their insertion order, which is what makes
//! building the same program twice produce identical output. Axioms are
//! deduplicated structurally on insertion.
//!
//! Pattern provenance is recorded with two internal annotation
//! properties under the `tawny:` prefix: `tawny:pattern` (string valued,
//! naming the pattern that created an entity) and `tawny:facetProperty`
//! (IRI valued, linking a facet value class to its governing property).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Prefix reserved for the internal annotation vocabulary.
pub const INTERNAL_PREFIX: &str = "tawny";
pub const INTERNAL_EXPANSION: &str = "urn:x-hypernorm:pattern#";
pub const RDFS_PREFIX: &str = "rdfs";
pub const RDFS_EXPANSION: &str = "http://www.w3.org/2000/01/rdf-schema#";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed IRI `{0}`")]
    MalformedIri(String),
    #[error("`{iri}` is already declared as {existing}, cannot redeclare as {requested}")]
    KindClash {
        iri: String,
        existing: EntityKind,
        requested: EntityKind,
    },
    #[error("undeclared entity `{0}`")]
    UndeclaredEntity(String),
    #[error("`{iri}` is used as {expected} but declared as {found}")]
    KindMismatch {
        iri: String,
        expected: EntityKind,
        found: EntityKind,
    },
    #[error("malformed axiom: {0}")]
    MalformedAxiom(String),
    #[error("empty operand list")]
    EmptyOperands,
}

fn valid_fragment(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn valid_prefix(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// A prefixed name, rendered as `prefix:fragment`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri {
    prefix: String,
    fragment: String,
}

impl Iri {
    pub fn new(prefix: &str, fragment: &str) -> Result<Self, ModelError> {
        if !valid_prefix(prefix) || !valid_fragment(fragment) {
            return Err(ModelError::MalformedIri(format!("{prefix}:{fragment}")));
        }
        Ok(Iri {
            prefix: prefix.to_owned(),
            fragment: fragment.to_owned(),
        })
    }

    /// Parses the `prefix:fragment` form.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        match s.split_once(':') {
            Some((prefix, fragment)) => {
                Iri::new(prefix, fragment).map_err(|_| ModelError::MalformedIri(s.to_owned()))
            }
            None => Err(ModelError::MalformedIri(s.to_owned())),
        }
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn fragment(&self) -> &str {
        &self.fragment
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.prefix, self.fragment)
    }
}

impl FromStr for Iri {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iri::parse(s)
    }
}

impl Serialize for Iri {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Iri {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Iri::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    AnnotationProperty,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::AnnotationProperty => "AnnotationProperty",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entity {
    pub kind: EntityKind,
    pub iri: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ClassExpression {
    Named {
        iri: Iri,
    },
    Some {
        property: Iri,
        filler: Box<ClassExpression>,
    },
    Only {
        property: Iri,
        filler: Box<ClassExpression>,
    },
    And {
        operands: Vec<ClassExpression>,
    },
    Or {
        operands: Vec<ClassExpression>,
    },
}

impl ClassExpression {
    pub fn named(iri: Iri) -> Self {
        ClassExpression::Named { iri }
    }

    pub fn some(property: Iri, filler: ClassExpression) -> Self {
        ClassExpression::Some {
            property,
            filler: Box::new(filler),
        }
    }

    pub fn only(property: Iri, filler: ClassExpression) -> Self {
        ClassExpression::Only {
            property,
            filler: Box::new(filler),
        }
    }

    /// Union of `operands`; a single operand is returned bare.
    pub fn union(mut operands: Vec<ClassExpression>) -> Result<Self, ModelError> {
        match operands.len() {
            0 => Err(ModelError::EmptyOperands),
            1 => Ok(operands.pop().unwrap()),
            _ => Ok(ClassExpression::Or { operands }),
        }
    }

    /// Intersection of `operands`; a single operand is returned bare.
    pub fn intersection(mut operands: Vec<ClassExpression>) -> Result<Self, ModelError> {
        match operands.len() {
            0 => Err(ModelError::EmptyOperands),
            1 => Ok(operands.pop().unwrap()),
            _ => Ok(ClassExpression::And { operands }),
        }
    }

    pub fn as_named(&self) -> Option<&Iri> {
        match self {
            ClassExpression::Named { iri } => Some(iri),
            _ => None,
        }
    }

    fn collect_iris<'a>(&'a self, out: &mut Vec<(&'a Iri, Option<EntityKind>)>) {
        match self {
            ClassExpression::Named { iri } => out.push((iri, Some(EntityKind::Class))),
            ClassExpression::Some { property, filler }
            | ClassExpression::Only { property, filler } => {
                out.push((property, Some(EntityKind::ObjectProperty)));
                filler.collect_iris(out);
            }
            ClassExpression::And { operands } | ClassExpression::Or { operands } => {
                for op in operands {
                    op.collect_iris(out);
                }
            }
        }
    }

    fn check_shape(&self) -> Result<(), ModelError> {
        match self {
            ClassExpression::Named { .. } => Ok(()),
            ClassExpression::Some { filler, .. } | ClassExpression::Only { filler, .. } => {
                filler.check_shape()
            }
            ClassExpression::And { operands } | ClassExpression::Or { operands } => {
                if operands.len() < 2 {
                    return Err(ModelError::MalformedAxiom(
                        "and/or needs at least two operands".into(),
                    ));
                }
                operands.iter().try_for_each(ClassExpression::check_shape)
            }
        }
    }
}

impl From<Iri> for ClassExpression {
    fn from(iri: Iri) -> Self {
        ClassExpression::Named { iri }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnnotationValue {
    Iri { iri: Iri },
    Literal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "axiom")]
pub enum Axiom {
    SubClassOf {
        sub: ClassExpression,
        #[serde(rename = "super")]
        sup: ClassExpression,
    },
    EquivalentClasses {
        operands: Vec<ClassExpression>,
    },
    DisjointClasses {
        classes: Vec<Iri>,
    },
    ObjectPropertyDomain {
        property: Iri,
        domain: ClassExpression,
    },
    ObjectPropertyRange {
        property: Iri,
        range: ClassExpression,
    },
    FunctionalObjectProperty {
        property: Iri,
    },
    AnnotationAssertion {
        subject: Iri,
        property: Iri,
        value: AnnotationValue,
    },
}

impl Axiom {
    pub fn subclass_of(sub: impl Into<ClassExpression>, sup: impl Into<ClassExpression>) -> Self {
        Axiom::SubClassOf {
            sub: sub.into(),
            sup: sup.into(),
        }
    }

    /// Every IRI the axiom mentions, paired with the kind it must have
    /// (`None` where any declared kind is acceptable).
    pub fn signature(&self) -> Vec<(&Iri, Option<EntityKind>)> {
        let mut out = Vec::new();
        match self {
            Axiom::SubClassOf { sub, sup } => {
                sub.collect_iris(&mut out);
                sup.collect_iris(&mut out);
            }
            Axiom::EquivalentClasses { operands } => {
                for op in operands {
                    op.collect_iris(&mut out);
                }
            }
            Axiom::DisjointClasses { classes } => {
                out.extend(classes.iter().map(|c| (c, Some(EntityKind::Class))));
            }
            Axiom::ObjectPropertyDomain {
                property,
                domain: ce,
            }
            | Axiom::ObjectPropertyRange {
                property,
                range: ce,
            } => {
                out.push((property, Some(EntityKind::ObjectProperty)));
                ce.collect_iris(&mut out);
            }
            Axiom::FunctionalObjectProperty { property } => {
                out.push((property, Some(EntityKind::ObjectProperty)));
            }
            Axiom::AnnotationAssertion {
                subject,
                property,
                value,
            } => {
                out.push((property, Some(EntityKind::AnnotationProperty)));
                out.push((subject, None));
                if let AnnotationValue::Iri { iri } = value {
                    out.push((iri, None));
                }
            }
        }
        out
    }

    pub fn mentions(&self, iri: &Iri) -> bool {
        self.signature().iter().any(|(i, _)| *i == iri)
    }

    fn check_shape(&self) -> Result<(), ModelError> {
        match self {
            Axiom::SubClassOf { sub, sup } => {
                sub.check_shape()?;
                sup.check_shape()
            }
            Axiom::EquivalentClasses { operands } => {
                if operands.len() < 2 {
                    return Err(ModelError::MalformedAxiom(
                        "EquivalentClasses needs at least two operands".into(),
                    ));
                }
                operands.iter().try_for_each(ClassExpression::check_shape)
            }
            Axiom::DisjointClasses { classes } => {
                if classes.len() < 2 {
                    return Err(ModelError::MalformedAxiom(
                        "DisjointClasses needs at least two classes".into(),
                    ));
                }
                let distinct: HashSet<_> = classes.iter().collect();
                if distinct.len() != classes.len() {
                    return Err(ModelError::MalformedAxiom(
                        "DisjointClasses operands must be pairwise distinct".into(),
                    ));
                }
                Ok(())
            }
            Axiom::ObjectPropertyDomain { domain: ce, .. }
            | Axiom::ObjectPropertyRange { range: ce, .. } => ce.check_shape(),
            Axiom::FunctionalObjectProperty { .. } | Axiom::AnnotationAssertion { .. } => Ok(()),
        }
    }
}

/// The patterns whose provenance is recorded on generated entities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Tier,
    Partition,
    Facet,
    Gem,
    Closure,
}

impl PatternKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::Tier => "tier",
            PatternKind::Partition => "partition",
            PatternKind::Facet => "facet",
            PatternKind::Gem => "gem",
            PatternKind::Closure => "closure",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// IRIs of the internal and standard annotation properties.
pub mod vocab {
    use super::{Iri, INTERNAL_PREFIX, RDFS_PREFIX};

    pub fn pattern() -> Iri {
        Iri::new(INTERNAL_PREFIX, "pattern").unwrap()
    }

    pub fn facet_property() -> Iri {
        Iri::new(INTERNAL_PREFIX, "facetProperty").unwrap()
    }

    pub fn label() -> Iri {
        Iri::new(RDFS_PREFIX, "label").unwrap()
    }

    pub fn comment() -> Iri {
        Iri::new(RDFS_PREFIX, "comment").unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ontology {
    iri: Iri,
    default_prefix: String,
    prefixes: IndexMap<String, String>,
    entities: IndexMap<Iri, EntityKind>,
    axioms: Vec<Axiom>,
    seen: HashSet<Axiom>,
}

impl Ontology {
    pub fn new(iri: Iri, default_prefix: &str) -> Result<Self, ModelError> {
        if !valid_prefix(default_prefix) {
            return Err(ModelError::MalformedIri(format!("{default_prefix}:")));
        }
        let mut prefixes = IndexMap::new();
        prefixes.insert(
            default_prefix.to_owned(),
            format!("http://example.org/{}#", iri.fragment()),
        );
        prefixes.insert(INTERNAL_PREFIX.to_owned(), INTERNAL_EXPANSION.to_owned());
        prefixes.insert(RDFS_PREFIX.to_owned(), RDFS_EXPANSION.to_owned());
        let mut ont = Ontology {
            iri,
            default_prefix: default_prefix.to_owned(),
            prefixes,
            entities: IndexMap::new(),
            axioms: Vec::new(),
            seen: HashSet::new(),
        };
        for iri in [
            vocab::pattern(),
            vocab::facet_property(),
            vocab::label(),
            vocab::comment(),
        ] {
            ont.declare_iri(EntityKind::AnnotationProperty, iri)?;
        }
        Ok(ont)
    }

    pub fn iri(&self) -> &Iri {
        &self.iri
    }

    pub fn default_prefix(&self) -> &str {
        &self.default_prefix
    }

    pub fn prefixes(&self) -> &IndexMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: &str, expansion: &str) -> Result<(), ModelError> {
        if !valid_prefix(prefix) {
            return Err(ModelError::MalformedIri(format!("{prefix}:")));
        }
        self.prefixes
            .insert(prefix.to_owned(), expansion.to_owned());
        Ok(())
    }

    /// The IRI `name` would have under the default prefix.
    pub fn iri_for(&self, name: &str) -> Result<Iri, ModelError> {
        Iri::new(&self.default_prefix, name)
    }

    /// Declares `name` under the default prefix.
    pub fn declare(&mut self, kind: EntityKind, name: &str) -> Result<Entity, ModelError> {
        let iri = self.iri_for(name)?;
        self.declare_iri(kind, iri)
    }

    pub fn declare_iri(&mut self, kind: EntityKind, iri: Iri) -> Result<Entity, ModelError> {
        if !self.prefixes.contains_key(iri.prefix()) {
            return Err(ModelError::MalformedIri(format!("{iri} (unknown prefix)")));
        }
        match self.entities.get(&iri) {
            Some(&existing) if existing != kind => Err(ModelError::KindClash {
                iri: iri.to_string(),
                existing,
                requested: kind,
            }),
            Some(_) => Ok(Entity { kind, iri }),
            None => {
                self.entities.insert(iri.clone(), kind);
                Ok(Entity { kind, iri })
            }
        }
    }

    pub fn kind_of(&self, iri: &Iri) -> Option<EntityKind> {
        self.entities.get(iri).copied()
    }

    pub fn is_declared(&self, iri: &Iri) -> bool {
        self.entities.contains_key(iri)
    }

    /// Appends `axiom`; returns `false` when a structurally equal axiom was
    /// already present.
    pub fn add_axiom(&mut self, axiom: Axiom) -> Result<bool, ModelError> {
        axiom.check_shape()?;
        for (iri, expected) in axiom.signature() {
            let found = self
                .kind_of(iri)
                .ok_or_else(|| ModelError::UndeclaredEntity(iri.to_string()))?;
            if let Some(expected) = expected.filter(|&k| k != found) {
                return Err(ModelError::KindMismatch {
                    iri: iri.to_string(),
                    expected,
                    found,
                });
            }
        }
        if self.seen.contains(&axiom) {
            return Ok(false);
        }
        self.seen.insert(axiom.clone());
        self.axioms.push(axiom);
        Ok(true)
    }

    /// Records that `subject` was produced by a pattern of `kind`.
    pub fn annotate_pattern(&mut self, subject: &Iri, kind: PatternKind) -> Result<(), ModelError> {
        if !self.is_declared(subject) {
            return Err(ModelError::UndeclaredEntity(subject.to_string()));
        }
        self.add_axiom(Axiom::AnnotationAssertion {
            subject: subject.clone(),
            property: vocab::pattern(),
            value: AnnotationValue::Literal(kind.as_str().to_owned()),
        })?;
        Ok(())
    }

    pub fn signature(&self) -> Vec<Entity> {
        self.entities
            .iter()
            .map(|(iri, &kind)| Entity {
                kind,
                iri: iri.clone(),
            })
            .collect()
    }

    /// Declared classes in declaration order.
    pub fn classes(&self) -> impl Iterator<Item = &Iri> {
        self.entities_of(EntityKind::Class)
    }

    pub fn object_properties(&self) -> impl Iterator<Item = &Iri> {
        self.entities_of(EntityKind::ObjectProperty)
    }

    fn entities_of(&self, kind: EntityKind) -> impl Iterator<Item = &Iri> {
        self.entities
            .iter()
            .filter(move |(_, &k)| k == kind)
            .map(|(iri, _)| iri)
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn axiom_count(&self) -> usize {
        self.axioms.len()
    }

    pub fn axioms_about(&self, iri: &Iri) -> Result<Vec<&Axiom>, ModelError> {
        if !self.is_declared(iri) {
            return Err(ModelError::UndeclaredEntity(iri.to_string()));
        }
        Ok(self.axioms.iter().filter(|ax| ax.mentions(iri)).collect())
    }

    /// Values of `tawny:pattern` annotations on `subject`.
    pub fn pattern_annotations(&self, subject: &Iri) -> Vec<&str> {
        let pattern = vocab::pattern();
        self.axioms
            .iter()
            .filter_map(|ax| match ax {
                Axiom::AnnotationAssertion {
                    subject: s,
                    property,
                    value: AnnotationValue::Literal(v),
                } if s == subject && *property == pattern => Some(v.as_str()),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(name: &str) -> Iri {
        Iri::new("o", name).unwrap()
    }

    fn fresh() -> Ontology {
        Ontology::new(Iri::parse("o:aa").unwrap(), "o").unwrap()
    }

    #[test]
    fn new_ontology_has_only_internal_vocabulary() {
        let ont = fresh();
        assert_eq!(ont.classes().count(), 0);
        assert_eq!(ont.axiom_count(), 0);
        assert_eq!(
            ont.kind_of(&vocab::pattern()),
            Some(EntityKind::AnnotationProperty)
        );
        assert_eq!(
            ont.kind_of(&vocab::facet_property()),
            Some(EntityKind::AnnotationProperty)
        );
        assert!(ont
            .signature()
            .iter()
            .all(|e| e.kind == EntityKind::AnnotationProperty));
    }

    #[test]
    fn ontologies_are_independent() {
        let mut a = fresh();
        let b = fresh();
        a.declare(EntityKind::Class, "A").unwrap();
        assert!(!b.is_declared(&o("A")));
    }

    #[test]
    fn empty_prefix_is_malformed() {
        let err = Ontology::new(Iri::parse("o:aa").unwrap(), "").unwrap_err();
        assert!(matches!(err, ModelError::MalformedIri(_)));
    }

    #[test]
    fn iri_validation() {
        assert!(Iri::new("o", "A_1").is_ok());
        assert!(Iri::new("o", "1A").is_err());
        assert!(Iri::new("o", "").is_err());
        assert!(Iri::parse("noprefix").is_err());
        assert_eq!(Iri::parse("o:Size").unwrap().to_string(), "o:Size");
    }

    #[test]
    fn declare_is_idempotent_and_detects_clash() {
        let mut ont = fresh();
        let e = ont.declare(EntityKind::Class, "A").unwrap();
        assert_eq!(e.iri, o("A"));
        ont.declare(EntityKind::Class, "A").unwrap();
        assert_eq!(ont.classes().count(), 1);
        let err = ont.declare(EntityKind::ObjectProperty, "A").unwrap_err();
        assert!(matches!(err, ModelError::KindClash { .. }));
    }

    #[test]
    fn add_axiom_dedups_and_checks_declarations() {
        let mut ont = fresh();
        ont.declare(EntityKind::Class, "A").unwrap();
        ont.declare(EntityKind::Class, "B").unwrap();
        assert!(ont.add_axiom(Axiom::subclass_of(o("A"), o("B"))).unwrap());
        assert!(!ont.add_axiom(Axiom::subclass_of(o("A"), o("B"))).unwrap());
        assert_eq!(ont.axiom_count(), 1);
        let err = ont
            .add_axiom(Axiom::subclass_of(o("A"), o("C")))
            .unwrap_err();
        assert_eq!(err, ModelError::UndeclaredEntity("o:C".into()));
    }

    #[test]
    fn add_axiom_checks_kinds_and_shape() {
        let mut ont = fresh();
        ont.declare(EntityKind::Class, "A").unwrap();
        ont.declare(EntityKind::Class, "B").unwrap();
        let err = ont
            .add_axiom(Axiom::subclass_of(
                o("A"),
                ClassExpression::some(o("B"), o("A").into()),
            ))
            .unwrap_err();
        assert!(matches!(err, ModelError::KindMismatch { .. }));
        let err = ont
            .add_axiom(Axiom::DisjointClasses {
                classes: vec![o("A"), o("A")],
            })
            .unwrap_err();
        assert!(matches!(err, ModelError::MalformedAxiom(_)));
        let err = ont
            .add_axiom(Axiom::SubClassOf {
                sub: o("A").into(),
                sup: ClassExpression::Or {
                    operands: vec![o("B").into()],
                },
            })
            .unwrap_err();
        assert!(matches!(err, ModelError::MalformedAxiom(_)));
    }

    #[test]
    fn annotate_pattern_dedups() {
        let mut ont = fresh();
        ont.declare(EntityKind::Class, "Size").unwrap();
        ont.annotate_pattern(&o("Size"), PatternKind::Tier).unwrap();
        ont.annotate_pattern(&o("Size"), PatternKind::Tier).unwrap();
        assert_eq!(ont.pattern_annotations(&o("Size")), vec!["tier"]);
        assert_eq!(
            ont.axioms()[0],
            Axiom::AnnotationAssertion {
                subject: o("Size"),
                property: vocab::pattern(),
                value: AnnotationValue::Literal("tier".into()),
            }
        );
        let err = ont
            .annotate_pattern(&o("Nope"), PatternKind::Gem)
            .unwrap_err();
        assert!(matches!(err, ModelError::UndeclaredEntity(_)));
    }

    #[test]
    fn axioms_about_filters_by_mention() {
        let mut ont = fresh();
        for n in ["A", "B", "Unused"] {
            ont.declare(EntityKind::Class, n).unwrap();
        }
        ont.add_axiom(Axiom::subclass_of(o("A"), o("B"))).unwrap();
        assert_eq!(ont.axioms_about(&o("B")).unwrap().len(), 1);
        assert!(ont.axioms_about(&o("Unused")).unwrap().is_empty());
        assert!(ont.axioms_about(&o("Missing")).is_err());
    }

    #[test]
    fn union_collapses_singletons() {
        assert_eq!(
            ClassExpression::union(vec![]),
            Err(ModelError::EmptyOperands)
        );
        assert_eq!(
            ClassExpression::union(vec![o("A").into()]).unwrap(),
            ClassExpression::named(o("A"))
        );
    }
}
