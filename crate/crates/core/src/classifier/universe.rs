use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::model::{Axiom, ClassExpression, Iri, Ontology};
use crate::patterns::FacetRegistry;

use super::ClassifierError;

/// Largest number of values a single facet may carry.
pub const MAX_FACET_VALUES: usize = 64;

/// One facet dimension: a functional property and its disjoint values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FacetAxis {
    pub property: Iri,
    /// The range class whose covering axiom lists the values, if any.
    pub tier: Option<Iri>,
    pub values: Vec<Iri>,
    /// The values do not cover the range; one anonymous extra value stands
    /// for everything else.
    pub open: bool,
}

impl FacetAxis {
    pub fn width(&self) -> usize {
        self.values.len() + usize::from(self.open)
    }

    pub fn full_mask(&self) -> u64 {
        let w = self.width();
        if w == 64 {
            u64::MAX
        } else {
            (1u64 << w) - 1
        }
    }

    pub fn index_of(&self, value: &Iri) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniverseMode {
    /// Facets that are not functional and disjoint are left out (their
    /// restrictions fall outside the fragment); non-covering facets are
    /// open.
    Classifier,
    /// Every facet must be functional, disjoint and covering, unless
    /// `pad_open` allows a synthetic value for non-covering ones.
    Oracle { pad_open: bool },
}

/// The facet axes of an ontology. Its elements are total assignments,
/// one value per axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentUniverse {
    axes: Vec<FacetAxis>,
    excluded: Vec<(Iri, String)>,
    approximate: bool,
    fingerprint: u64,
}

impl AssignmentUniverse {
    pub fn from_axes(axes: Vec<FacetAxis>) -> Result<Self, ClassifierError> {
        for axis in &axes {
            if axis.width() == 0 || axis.width() > MAX_FACET_VALUES {
                return Err(ClassifierError::OracleInapplicable(format!(
                    "facet {} has {} values (supported: 1..={MAX_FACET_VALUES})",
                    axis.property,
                    axis.width()
                )));
            }
        }
        let mut h = DefaultHasher::new();
        axes.hash(&mut h);
        let approximate = axes.iter().any(|a| a.open);
        Ok(AssignmentUniverse {
            fingerprint: h.finish(),
            axes,
            excluded: Vec::new(),
            approximate,
        })
    }

    pub fn build(
        ont: &Ontology,
        registry: &FacetRegistry,
        mode: UniverseMode,
    ) -> Result<Self, ClassifierError> {
        let mut properties: Vec<&Iri> = registry.properties();
        properties.sort_by_cached_key(|p| p.to_string());

        let mut axes = Vec::new();
        let mut excluded = Vec::new();
        let mut approximate = false;
        for property in properties {
            let values: Vec<Iri> = registry.classes_of(property).into_iter().cloned().collect();
            let functional = ont.axioms().iter().any(
                |a| matches!(a, Axiom::FunctionalObjectProperty { property: p } if p == property),
            );
            let disjoint = pairwise_disjoint(ont, &values);
            let tier = ont.axioms().iter().find_map(|a| match a {
                Axiom::ObjectPropertyRange {
                    property: p,
                    range: ClassExpression::Named { iri },
                } if p == property => Some(iri.clone()),
                _ => None,
            });
            let covering = tier.as_ref().is_some_and(|t| covers(ont, t, &values));

            let mut problems = Vec::new();
            if !functional {
                problems.push("not functional");
            }
            if !disjoint {
                problems.push("values not pairwise disjoint");
            }
            match mode {
                UniverseMode::Classifier if !problems.is_empty() => {
                    excluded.push((property.clone(), problems.join(", ")));
                    continue;
                }
                UniverseMode::Oracle { pad_open } => {
                    if !covering && !pad_open {
                        problems.push("values do not cover the range");
                    }
                    if !problems.is_empty() {
                        return Err(ClassifierError::OracleInapplicable(format!(
                            "facet {property}: {}",
                            problems.join(", ")
                        )));
                    }
                    approximate |= !covering;
                }
                UniverseMode::Classifier => {}
            }
            axes.push(FacetAxis {
                property: property.clone(),
                tier,
                values,
                open: !covering,
            });
        }
        let mut universe = AssignmentUniverse::from_axes(axes)?;
        universe.excluded = excluded;
        universe.approximate = approximate;
        Ok(universe)
    }

    pub fn axes(&self) -> &[FacetAxis] {
        &self.axes
    }

    pub fn axis_of(&self, property: &Iri) -> Option<usize> {
        self.axes.iter().position(|a| a.property == *property)
    }

    /// Facets left out in classifier mode, with the reason.
    pub fn excluded(&self) -> &[(Iri, String)] {
        &self.excluded
    }

    /// True when synthetic padding values were added for the oracle.
    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Number of total assignments, or `None` on overflow.
    pub fn size(&self) -> Option<usize> {
        self.axes
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.width()))
    }
}

fn pairwise_disjoint(ont: &Ontology, values: &[Iri]) -> bool {
    let groups: Vec<&Vec<Iri>> = ont
        .axioms()
        .iter()
        .filter_map(|a| match a {
            Axiom::DisjointClasses { classes } => Some(classes),
            _ => None,
        })
        .collect();
    values.iter().enumerate().all(|(i, a)| {
        values[i + 1..]
            .iter()
            .all(|b| groups.iter().any(|g| g.contains(a) && g.contains(b)))
    })
}

fn covers(ont: &Ontology, tier: &Iri, values: &[Iri]) -> bool {
    ont.axioms().iter().any(|a| match a {
        Axiom::EquivalentClasses { operands } => {
            operands.iter().any(|o| o.as_named() == Some(tier))
                && operands.iter().any(|o| is_union_of(o, values))
        }
        _ => false,
    })
}

/// `expr` is exactly the union of `values` (a bare name for one value).
pub(crate) fn is_union_of(expr: &ClassExpression, values: &[Iri]) -> bool {
    let names: Vec<&Iri> = match expr {
        ClassExpression::Named { iri } => vec![iri],
        ClassExpression::Or { operands } => match operands.iter().map(|o| o.as_named()).collect() {
            Some(names) => names,
            None => return false,
        },
        _ => return false,
    };
    names.len() == values.len() && values.iter().all(|v| names.contains(&v))
}
