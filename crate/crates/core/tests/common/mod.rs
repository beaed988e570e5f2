//! Random facet-fragment ontologies and an independent model checker.
//!
//! The checker knows nothing about constraints or masks. For a fixed total
//! assignment of facet values it forward-chains the axioms from a single
//! class to the least set of named classes an individual must belong to,
//! and reads subsumption off those least models.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hypernorm::model::{Axiom, ClassExpression, EntityKind, Iri, Ontology};
use hypernorm::patterns::{deftier, FacetRegistry, TierSpec};
use proptest::prelude::*;

pub const MAX_FACETS: usize = 4;
pub const MAX_VALUES: usize = 4;
pub const MAX_CLASSES: usize = 40;
pub const DOMAINS: usize = 2;

#[derive(Debug, Clone)]
pub struct FacetRecipe {
    pub values: usize,
    pub cover: bool,
    pub domain: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum FillerRecipe {
    Value(usize),
    Union(Vec<usize>),
    Tier,
}

#[derive(Debug, Clone)]
pub struct ClassRecipe {
    pub defined: bool,
    pub named: Vec<usize>,
    pub restrictions: Vec<(usize, FillerRecipe)>,
    pub disjoint_with: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Recipe {
    pub facets: Vec<FacetRecipe>,
    pub classes: Vec<ClassRecipe>,
}

fn facet_recipe() -> impl Strategy<Value = FacetRecipe> {
    (
        1..=MAX_VALUES,
        prop::bool::weighted(0.7),
        prop::option::of(0..DOMAINS),
    )
        .prop_map(|(values, cover, domain)| FacetRecipe {
            values,
            cover,
            domain,
        })
}

fn filler_recipe() -> impl Strategy<Value = FillerRecipe> {
    prop_oneof![
        6 => (0..MAX_VALUES).prop_map(FillerRecipe::Value),
        2 => prop::collection::vec(0..MAX_VALUES, 2..=3).prop_map(FillerRecipe::Union),
        1 => Just(FillerRecipe::Tier),
    ]
}

fn class_recipe() -> impl Strategy<Value = ClassRecipe> {
    (
        prop::bool::weighted(0.5),
        prop::collection::vec(0..MAX_CLASSES, 0..=2),
        prop::collection::vec((0..MAX_FACETS, filler_recipe()), 0..=3),
        prop::option::weighted(0.1, 0..MAX_CLASSES),
    )
        .prop_map(
            |(defined, named, restrictions, disjoint_with)| ClassRecipe {
                defined,
                named,
                restrictions,
                disjoint_with,
            },
        )
}

/// At most `MAX_CLASSES` declared classes in total.
pub fn recipe() -> impl Strategy<Value = Recipe> {
    prop::collection::vec(facet_recipe(), 1..=MAX_FACETS).prop_flat_map(|facets| {
        let used = DOMAINS + facets.iter().map(|f| f.values + 1).sum::<usize>();
        let room = MAX_CLASSES - used;
        prop::collection::vec(class_recipe(), 1..=room).prop_map(move |classes| Recipe {
            facets: facets.clone(),
            classes,
        })
    })
}

pub fn o(name: &str) -> Iri {
    Iri::new("o", name).unwrap()
}

pub struct Built {
    pub ontology: Ontology,
    pub registry: FacetRegistry,
    /// Classes created from class recipes, in order.
    pub user: Vec<Iri>,
}

/// Facet restriction for `facet` (taken modulo the facet count).
fn restriction(recipe: &Recipe, facet: usize, filler: &FillerRecipe) -> ClassExpression {
    let f = facet % recipe.facets.len();
    let n = recipe.facets[f].values;
    let value = |v: usize| ClassExpression::named(o(&format!("F{f}V{}", v % n)));
    let filler = match filler {
        FillerRecipe::Value(v) => value(*v),
        FillerRecipe::Union(vs) => {
            let distinct: BTreeSet<usize> = vs.iter().map(|v| v % n).collect();
            ClassExpression::union(distinct.into_iter().map(value).collect()).unwrap()
        }
        FillerRecipe::Tier => ClassExpression::named(o(&format!("F{f}"))),
    };
    ClassExpression::some(o(&format!("hasF{f}")), filler)
}

pub fn build(recipe: &Recipe) -> Built {
    build_with(recipe, None)
}

/// Builds the ontology; `extra` adds one more restriction to the definition
/// (or told supers) of the given user class.
pub fn build_with(recipe: &Recipe, extra: Option<(usize, usize, &FillerRecipe)>) -> Built {
    let mut ont = Ontology::new(o("random"), "o").unwrap();
    let mut reg = FacetRegistry::new();
    let mut pool: Vec<Iri> = Vec::new();
    for d in 0..DOMAINS {
        pool.push(
            ont.declare(EntityKind::Class, &format!("D{d}"))
                .unwrap()
                .iri,
        );
    }
    for (f, facet) in recipe.facets.iter().enumerate() {
        let values: Vec<String> = (0..facet.values).map(|v| format!("F{f}V{v}")).collect();
        let mut spec = TierSpec::new(&format!("F{f}"), values).cover(facet.cover);
        if let Some(d) = facet.domain {
            spec = spec.domain(pool[d].clone());
        }
        deftier(&mut ont, &mut reg, &spec).unwrap();
    }
    let mut user = Vec::new();
    let mut primitive = Vec::new();
    for (i, c) in recipe.classes.iter().enumerate() {
        let iri = ont
            .declare(EntityKind::Class, &format!("C{i}"))
            .unwrap()
            .iri;
        let mut parts: Vec<ClassExpression> = Vec::new();
        for &n in &c.named {
            let target = &pool[n % pool.len()];
            let e = ClassExpression::named(target.clone());
            if !parts.contains(&e) {
                parts.push(e);
            }
        }
        for (f, filler) in &c.restrictions {
            parts.push(restriction(recipe, *f, filler));
        }
        // Decided before the extra restriction, so it only narrows.
        let defined = c.defined && !parts.is_empty();
        if let Some((target, f, filler)) = extra {
            if target == i {
                parts.push(restriction(recipe, f, filler));
            }
        }
        if defined {
            ont.add_axiom(Axiom::EquivalentClasses {
                operands: vec![
                    iri.clone().into(),
                    ClassExpression::intersection(parts).unwrap(),
                ],
            })
            .unwrap();
        } else {
            for p in parts {
                ont.add_axiom(Axiom::subclass_of(iri.clone(), p)).unwrap();
            }
            primitive.push(iri.clone());
        }
        if let Some(d) = c.disjoint_with {
            if !primitive.is_empty() && primitive.last() == Some(&iri) {
                let other = &primitive[d % primitive.len()];
                if *other != iri {
                    ont.add_axiom(Axiom::DisjointClasses {
                        classes: vec![iri.clone(), other.clone()],
                    })
                    .unwrap();
                }
            }
        }
        pool.push(iri.clone());
        user.push(iri);
    }
    Built {
        ontology: ont,
        registry: reg,
        user,
    }
}

/// One facet as the model checker sees it.
struct Axis {
    property: Iri,
    tier: Iri,
    values: Vec<Iri>,
    width: usize,
    domains: Vec<Iri>,
}

/// Least-model subsumption over total assignments.
pub struct ModelChecker {
    axes: Vec<Axis>,
    axioms: Vec<Axiom>,
    /// least[class][assignment] is None when no individual of `class` can
    /// take that assignment.
    least: BTreeMap<Iri, Vec<Option<BTreeSet<Iri>>>>,
}

impl ModelChecker {
    pub fn new(built: &Built, classes: &[Iri]) -> Self {
        let ont = &built.ontology;
        let mut axes = Vec::new();
        let mut properties: Vec<&Iri> = built.registry.properties();
        properties.sort_by_key(|p| p.to_string());
        for p in properties {
            let values: Vec<Iri> = built.registry.classes_of(p).into_iter().cloned().collect();
            let tier = ont
                .axioms()
                .iter()
                .find_map(|a| match a {
                    Axiom::ObjectPropertyRange { property, range } if property == p => {
                        range.as_named().cloned()
                    }
                    _ => None,
                })
                .unwrap();
            let covered = ont.axioms().iter().any(|a| match a {
                Axiom::EquivalentClasses { operands } => {
                    operands[0].as_named() == Some(&tier)
                        && operands.iter().skip(1).any(|e| match e {
                            ClassExpression::Or { operands } => operands.len() == values.len(),
                            ClassExpression::Named { iri } => values == [iri.clone()],
                            _ => false,
                        })
                }
                _ => false,
            });
            let domains = ont
                .axioms()
                .iter()
                .filter_map(|a| match a {
                    Axiom::ObjectPropertyDomain { property, domain } if property == p => {
                        domain.as_named().cloned()
                    }
                    _ => None,
                })
                .collect();
            axes.push(Axis {
                property: p.clone(),
                tier,
                width: values.len() + usize::from(!covered),
                values,
                domains,
            });
        }
        // Tier covers are disjunctive and only matter for value classes,
        // which no individual here belongs to.
        let axioms = ont
            .axioms()
            .iter()
            .filter(|a| match a {
                Axiom::EquivalentClasses { operands } => !operands
                    .iter()
                    .any(|e| matches!(e, ClassExpression::Or { .. })),
                Axiom::SubClassOf { .. } | Axiom::DisjointClasses { .. } => true,
                _ => false,
            })
            .cloned()
            .collect();
        let mut checker = ModelChecker {
            axes,
            axioms,
            least: BTreeMap::new(),
        };
        let assignments = checker.assignments();
        for c in classes {
            let row = assignments
                .iter()
                .map(|a| checker.least_model(c, a))
                .collect();
            checker.least.insert(c.clone(), row);
        }
        checker
    }

    pub fn universe_size(&self) -> usize {
        self.axes.iter().map(|a| a.width).product()
    }

    fn assignments(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..axis.width).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn allowed(&self, axis: usize, filler: &ClassExpression) -> BTreeSet<usize> {
        let a = &self.axes[axis];
        let names: Vec<&Iri> = match filler {
            ClassExpression::Named { iri } if *iri == a.tier => return (0..a.width).collect(),
            ClassExpression::Named { iri } => vec![iri],
            ClassExpression::Or { operands } => {
                operands.iter().map(|e| e.as_named().unwrap()).collect()
            }
            other => panic!("unexpected filler {other:?}"),
        };
        names
            .into_iter()
            .map(|n| a.values.iter().position(|v| v == n).unwrap())
            .collect()
    }

    fn axis(&self, property: &Iri) -> usize {
        self.axes
            .iter()
            .position(|a| a.property == *property)
            .unwrap()
    }

    fn holds(&self, e: &ClassExpression, a: &[usize], s: &BTreeSet<Iri>) -> bool {
        match e {
            ClassExpression::Named { iri } => s.contains(iri),
            ClassExpression::And { operands } => operands.iter().all(|x| self.holds(x, a, s)),
            ClassExpression::Some { property, filler } => {
                let i = self.axis(property);
                self.allowed(i, filler).contains(&a[i])
                    && self.axes[i].domains.iter().all(|d| s.contains(d))
            }
            other => panic!("unexpected expression {other:?}"),
        }
    }

    /// Adds what `e` forces; false when the assignment contradicts it.
    fn require(&self, e: &ClassExpression, a: &[usize], s: &mut BTreeSet<Iri>) -> bool {
        match e {
            ClassExpression::Named { iri } => {
                s.insert(iri.clone());
                true
            }
            ClassExpression::And { operands } => operands.iter().all(|x| self.require(x, a, s)),
            ClassExpression::Some { property, filler } => {
                let i = self.axis(property);
                s.extend(self.axes[i].domains.iter().cloned());
                self.allowed(i, filler).contains(&a[i])
            }
            other => panic!("unexpected expression {other:?}"),
        }
    }

    fn least_model(&self, class: &Iri, a: &[usize]) -> Option<BTreeSet<Iri>> {
        let mut s = BTreeSet::from([class.clone()]);
        loop {
            let before = s.len();
            for ax in &self.axioms {
                match ax {
                    Axiom::SubClassOf { sub, sup } => {
                        if self.holds(sub, a, &s) && !self.require(sup, a, &mut s) {
                            return None;
                        }
                    }
                    Axiom::EquivalentClasses { operands } => {
                        if operands.iter().any(|e| self.holds(e, a, &s)) {
                            for e in operands {
                                if !self.require(e, a, &mut s) {
                                    return None;
                                }
                            }
                        }
                    }
                    Axiom::DisjointClasses { classes }
                        if classes.iter().filter(|c| s.contains(*c)).count() > 1 =>
                    {
                        return None;
                    }
                    _ => {}
                }
            }
            if s.len() == before {
                return Some(s);
            }
        }
    }

    pub fn satisfiable(&self, class: &Iri) -> bool {
        self.least[class].iter().any(Option::is_some)
    }

    /// Every individual of `sub` belongs to `sup`.
    pub fn subsumes(&self, sup: &Iri, sub: &Iri) -> bool {
        self.least[sub]
            .iter()
            .all(|m| m.as_ref().is_none_or(|s| s.contains(sup)))
    }
}
