//! Ontology design patterns: closure, tier, value partition, facet and gem.
//!
//! Each pattern expands into a fixed set of axioms on an [`Ontology`] and
//! annotates the entities it creates with their pattern kind. Facet
//! registrations are kept both in a [`FacetRegistry`] and as
//! `tawny:facetProperty` annotations, so the registry can always be rebuilt
//! from the ontology alone.

use indexmap::IndexMap;
use thiserror::Error;

use crate::model::{
    vocab, AnnotationValue, Axiom, ClassExpression, EntityKind, Iri, ModelError, Ontology,
    PatternKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("closure needs at least one filler")]
    EmptyFillers,
    #[error("tier `{tier}` lists value `{value}` more than once")]
    DuplicateValueName { tier: String, value: String },
    #[error("tier `{0}` has no values")]
    EmptyTier(String),
    #[error(
        "`{class}` is already a facet of `{existing}`, cannot register it under `{requested}`"
    )]
    FacetConflict {
        class: String,
        existing: String,
        requested: String,
    },
    #[error("`{0}` is not registered as a facet class")]
    UnregisteredFacetClass(String),
    #[error("facets `{first}` and `{second}` share the property `{property}`")]
    DuplicateFacetProperty {
        property: String,
        first: String,
        second: String,
    },
}

/// Existential restrictions on `property` for each filler, closed by one
/// universal restriction over their union.
pub fn some_only(
    property: &Iri,
    fillers: &[ClassExpression],
) -> Result<Vec<ClassExpression>, PatternError> {
    if fillers.is_empty() {
        return Err(PatternError::EmptyFillers);
    }
    let mut out: Vec<_> = fillers
        .iter()
        .map(|f| ClassExpression::some(property.clone(), f.clone()))
        .collect();
    let union = ClassExpression::union(fillers.to_vec())?;
    out.push(ClassExpression::only(property.clone(), union));
    Ok(out)
}

/// Declarative description of a tier. `TierSpec::new` gives the defaults:
/// functional, disjoint and covering, with a property named `has<Name>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierSpec {
    pub name: String,
    pub values: Vec<String>,
    pub domain: Option<Iri>,
    pub sup: Option<Iri>,
    pub suffix: bool,
    pub functional: bool,
    pub disjoint: bool,
    pub cover: bool,
    pub make_property: bool,
    pub property_name: Option<String>,
}

impl TierSpec {
    pub fn new<S: Into<String>>(name: &str, values: impl IntoIterator<Item = S>) -> Self {
        TierSpec {
            name: name.to_owned(),
            values: values.into_iter().map(Into::into).collect(),
            domain: None,
            sup: None,
            suffix: false,
            functional: true,
            disjoint: true,
            cover: true,
            make_property: true,
            property_name: None,
        }
    }

    pub fn domain(mut self, domain: Iri) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn sup(mut self, sup: Iri) -> Self {
        self.sup = Some(sup);
        self
    }

    pub fn suffix(mut self, on: bool) -> Self {
        self.suffix = on;
        self
    }

    pub fn functional(mut self, on: bool) -> Self {
        self.functional = on;
        self
    }

    pub fn disjoint(mut self, on: bool) -> Self {
        self.disjoint = on;
        self
    }

    pub fn cover(mut self, on: bool) -> Self {
        self.cover = on;
        self
    }

    pub fn make_property(mut self, on: bool) -> Self {
        self.make_property = on;
        self
    }

    pub fn property_name(mut self, name: &str) -> Self {
        self.property_name = Some(name.to_owned());
        self
    }

    fn value_fragment(&self, value: &str) -> String {
        if self.suffix {
            format!("{value}{}", self.name)
        } else {
            value.to_owned()
        }
    }

    fn property_fragment(&self) -> String {
        self.property_name
            .clone()
            .unwrap_or_else(|| format!("has{}", self.name))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierResult {
    pub tier_class: Iri,
    pub value_classes: Vec<Iri>,
    pub property: Option<Iri>,
}

/// Maps facet value classes to their governing object property.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FacetRegistry {
    by_class: IndexMap<Iri, Iri>,
}

impl FacetRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds the registry from the `tawny:facetProperty` annotations.
    pub fn from_ontology(ont: &Ontology) -> Self {
        let facet_property = vocab::facet_property();
        let mut by_class = IndexMap::new();
        for ax in ont.axioms() {
            if let Axiom::AnnotationAssertion {
                subject,
                property,
                value: AnnotationValue::Iri { iri },
            } = ax
            {
                if *property == facet_property {
                    by_class
                        .entry(subject.clone())
                        .or_insert_with(|| iri.clone());
                }
            }
        }
        FacetRegistry { by_class }
    }

    pub fn property_of(&self, class: &Iri) -> Option<&Iri> {
        self.by_class.get(class)
    }

    /// Value classes registered under `property`, in registration order.
    pub fn classes_of(&self, property: &Iri) -> Vec<&Iri> {
        self.by_class
            .iter()
            .filter(|(_, p)| *p == property)
            .map(|(c, _)| c)
            .collect()
    }

    /// Distinct facet properties, in order of first registration.
    pub fn properties(&self) -> Vec<&Iri> {
        let mut seen: Vec<&Iri> = Vec::new();
        for p in self.by_class.values() {
            if !seen.contains(&p) {
                seen.push(p);
            }
        }
        seen
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Iri, &Iri)> {
        self.by_class.iter()
    }

    pub fn len(&self) -> usize {
        self.by_class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_class.is_empty()
    }
}

/// Registers `classes` as facet values of `property`.
pub fn as_facet(
    ont: &mut Ontology,
    registry: &mut FacetRegistry,
    property: &Iri,
    classes: &[Iri],
) -> Result<(), PatternError> {
    expect_kind(ont, property, EntityKind::ObjectProperty)?;
    for class in classes {
        expect_kind(ont, class, EntityKind::Class)?;
        if let Some(existing) = registry.property_of(class) {
            if existing != property {
                return Err(PatternError::FacetConflict {
                    class: class.to_string(),
                    existing: existing.to_string(),
                    requested: property.to_string(),
                });
            }
        }
    }
    for class in classes {
        registry.by_class.insert(class.clone(), property.clone());
        ont.add_axiom(Axiom::AnnotationAssertion {
            subject: class.clone(),
            property: vocab::facet_property(),
            value: AnnotationValue::Iri {
                iri: property.clone(),
            },
        })?;
    }
    Ok(())
}

/// One existential restriction per class on its facet property, ordered by
/// rendered property name.
pub fn facet(
    registry: &FacetRegistry,
    classes: &[Iri],
) -> Result<Vec<ClassExpression>, PatternError> {
    let mut pairs = classes
        .iter()
        .map(|c| {
            registry
                .property_of(c)
                .map(|p| (p, c))
                .ok_or_else(|| PatternError::UnregisteredFacetClass(c.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    pairs.sort_by_cached_key(|(p, _)| p.to_string());
    Ok(pairs
        .into_iter()
        .map(|(p, c)| ClassExpression::some(p.clone(), c.clone().into()))
        .collect())
}

fn expect_kind(ont: &Ontology, iri: &Iri, kind: EntityKind) -> Result<(), ModelError> {
    match ont.kind_of(iri) {
        None => Err(ModelError::UndeclaredEntity(iri.to_string())),
        Some(found) if found != kind => Err(ModelError::KindMismatch {
            iri: iri.to_string(),
            expected: kind,
            found,
        }),
        Some(_) => Ok(()),
    }
}

fn check_fresh(ont: &Ontology, iri: &Iri, kind: EntityKind) -> Result<(), ModelError> {
    match ont.kind_of(iri) {
        Some(existing) if existing != kind => Err(ModelError::KindClash {
            iri: iri.to_string(),
            existing,
            requested: kind,
        }),
        _ => Ok(()),
    }
}

pub fn deftier(
    ont: &mut Ontology,
    registry: &mut FacetRegistry,
    spec: &TierSpec,
) -> Result<TierResult, PatternError> {
    expand_tier(ont, registry, spec, PatternKind::Tier)
}

/// A tier with functionality, disjointness and covering forced on.
pub fn defpartition(
    ont: &mut Ontology,
    registry: &mut FacetRegistry,
    spec: &TierSpec,
) -> Result<TierResult, PatternError> {
    let forced = spec.clone().functional(true).disjoint(true).cover(true);
    expand_tier(ont, registry, &forced, PatternKind::Partition)
}

fn expand_tier(
    ont: &mut Ontology,
    registry: &mut FacetRegistry,
    spec: &TierSpec,
    kind: PatternKind,
) -> Result<TierResult, PatternError> {
    if spec.values.is_empty() {
        return Err(PatternError::EmptyTier(spec.name.clone()));
    }
    for (i, v) in spec.values.iter().enumerate() {
        if spec.values[..i].contains(v) {
            return Err(PatternError::DuplicateValueName {
                tier: spec.name.clone(),
                value: v.clone(),
            });
        }
    }

    // Validate every name before touching the ontology.
    let tier_class = ont.iri_for(&spec.name)?;
    check_fresh(ont, &tier_class, EntityKind::Class)?;
    let value_classes = spec
        .values
        .iter()
        .map(|v| ont.iri_for(&spec.value_fragment(v)))
        .collect::<Result<Vec<_>, _>>()?;
    for v in &value_classes {
        check_fresh(ont, v, EntityKind::Class)?;
        if let Some(existing) = registry.property_of(v) {
            if spec.make_property {
                let requested = ont.iri_for(&spec.property_fragment())?;
                if *existing != requested {
                    return Err(PatternError::FacetConflict {
                        class: v.to_string(),
                        existing: existing.to_string(),
                        requested: requested.to_string(),
                    });
                }
            }
        }
    }
    let property = if spec.make_property {
        let p = ont.iri_for(&spec.property_fragment())?;
        check_fresh(ont, &p, EntityKind::ObjectProperty)?;
        Some(p)
    } else {
        None
    };
    for anchor in spec.domain.iter().chain(spec.sup.iter()) {
        expect_kind(ont, anchor, EntityKind::Class)?;
    }

    ont.declare_iri(EntityKind::Class, tier_class.clone())?;
    ont.annotate_pattern(&tier_class, kind)?;
    for value in &value_classes {
        ont.declare_iri(EntityKind::Class, value.clone())?;
        ont.add_axiom(Axiom::subclass_of(value.clone(), tier_class.clone()))?;
        ont.annotate_pattern(value, kind)?;
        if spec.suffix {
            ont.add_axiom(Axiom::AnnotationAssertion {
                subject: value.clone(),
                property: vocab::label(),
                value: AnnotationValue::Literal(value.fragment().to_owned()),
            })?;
        }
    }
    if let Some(sup) = &spec.sup {
        ont.add_axiom(Axiom::subclass_of(tier_class.clone(), sup.clone()))?;
    }
    if spec.cover {
        let union =
            ClassExpression::union(value_classes.iter().cloned().map(Into::into).collect())?;
        ont.add_axiom(Axiom::EquivalentClasses {
            operands: vec![tier_class.clone().into(), union],
        })?;
    }
    if spec.disjoint && value_classes.len() >= 2 {
        ont.add_axiom(Axiom::DisjointClasses {
            classes: value_classes.clone(),
        })?;
    }
    if let Some(p) = &property {
        ont.declare_iri(EntityKind::ObjectProperty, p.clone())?;
        ont.annotate_pattern(p, kind)?;
        ont.add_axiom(Axiom::ObjectPropertyRange {
            property: p.clone(),
            range: tier_class.clone().into(),
        })?;
        if let Some(domain) = &spec.domain {
            ont.add_axiom(Axiom::ObjectPropertyDomain {
                property: p.clone(),
                domain: domain.clone().into(),
            })?;
        }
        if spec.functional {
            ont.add_axiom(Axiom::FunctionalObjectProperty {
                property: p.clone(),
            })?;
        }
        as_facet(ont, registry, p, &value_classes)?;
    }

    Ok(TierResult {
        tier_class,
        value_classes,
        property,
    })
}

/// A class built mainly from facet restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GemSpec {
    pub name: String,
    pub facets: Vec<Iri>,
    pub comment: Option<String>,
    pub extra_supers: Vec<ClassExpression>,
    pub defined: bool,
}

impl GemSpec {
    pub fn new(name: &str, facets: impl IntoIterator<Item = Iri>) -> Self {
        GemSpec {
            name: name.to_owned(),
            facets: facets.into_iter().collect(),
            comment: None,
            extra_supers: Vec::new(),
            defined: false,
        }
    }

    pub fn comment(mut self, comment: &str) -> Self {
        self.comment = Some(comment.to_owned());
        self
    }

    pub fn extra_super(mut self, sup: ClassExpression) -> Self {
        self.extra_supers.push(sup);
        self
    }

    pub fn defined(mut self, on: bool) -> Self {
        self.defined = on;
        self
    }
}

pub fn defgem(
    ont: &mut Ontology,
    registry: &FacetRegistry,
    spec: &GemSpec,
) -> Result<Iri, PatternError> {
    let mut used: Vec<(&Iri, &Iri)> = Vec::new();
    for class in &spec.facets {
        let property = registry
            .property_of(class)
            .ok_or_else(|| PatternError::UnregisteredFacetClass(class.to_string()))?;
        if let Some((_, first)) = used.iter().find(|(p, _)| *p == property) {
            return Err(PatternError::DuplicateFacetProperty {
                property: property.to_string(),
                first: first.to_string(),
                second: class.to_string(),
            });
        }
        used.push((property, class));
    }
    let restrictions = facet(registry, &spec.facets)?;

    let gem = ont.iri_for(&spec.name)?;
    check_fresh(ont, &gem, EntityKind::Class)?;
    ont.declare_iri(EntityKind::Class, gem.clone())?;

    if spec.defined && !restrictions.is_empty() {
        let mut operands: Vec<ClassExpression> = Vec::new();
        for (property, _) in &used {
            for domain in property_domains(ont, property) {
                let domain = ClassExpression::named(domain);
                if !operands.contains(&domain) {
                    operands.push(domain);
                }
            }
        }
        operands.extend(restrictions);
        ont.add_axiom(Axiom::EquivalentClasses {
            operands: vec![gem.clone().into(), ClassExpression::intersection(operands)?],
        })?;
    } else {
        for r in restrictions {
            ont.add_axiom(Axiom::subclass_of(gem.clone(), r))?;
        }
    }
    for sup in &spec.extra_supers {
        ont.add_axiom(Axiom::subclass_of(gem.clone(), sup.clone()))?;
    }
    if let Some(comment) = &spec.comment {
        ont.add_axiom(Axiom::AnnotationAssertion {
            subject: gem.clone(),
            property: vocab::comment(),
            value: AnnotationValue::Literal(comment.clone()),
        })?;
    }
    ont.annotate_pattern(&gem, PatternKind::Gem)?;
    Ok(gem)
}

/// Named domains asserted for `property`.
pub fn property_domains(ont: &Ontology, property: &Iri) -> Vec<Iri> {
    ont.axioms()
        .iter()
        .filter_map(|ax| match ax {
            Axiom::ObjectPropertyDomain {
                property: p,
                domain: ClassExpression::Named { iri },
            } if p == property => Some(iri.clone()),
            _ => None,
        })
        .collect()
}
