//! Subsumption over the facet fragment.
//!
//! A class is in the fragment when its asserted definition is a
//! conjunction of named classes and existential restrictions on facet
//! properties whose fillers are facet values (or unions of values, or the
//! facet's range class). Such a class reduces to a [`FacetConstraint`]:
//! the set of primitive named classes it sits under ("anchors", including
//! the domains of the facet properties it uses) plus, for every facet, the
//! set of values it allows.
//!
//! Facets are functional, with pairwise disjoint values that cover their
//! range, so every individual picks exactly one value per facet. Under that
//! reading a class denotes a set of total assignments and subsumption is
//! mask inclusion, which the brute-force [`oracle`] checks independently
//! by enumerating the assignments.
//!
//! Each class gets two constraints. Its *necessary* constraint collects
//! everything asserted about it (used when it is the candidate subclass).
//! Its *sufficient* constraint is what membership requires: the definition
//! of a defined class, or just the class itself for a primitive one (used
//! when it is the candidate superclass). Primitive classes therefore only
//! acquire subclasses through assertion, never by inference.

mod constraint;
mod dag;
pub mod oracle;
mod report;
mod universe;

use std::collections::HashMap;

use thiserror::Error;

pub use constraint::{subsumes, FacetConstraint};
pub use dag::{classify, SubsumptionDag};
pub use oracle::{
    check_against_oracle, oracle_extension, oracle_subsumes, Extension, OracleReport,
};
pub use report::{render_machine, render_text};
pub use universe::{AssignmentUniverse, FacetAxis, UniverseMode, MAX_FACET_VALUES};

use crate::model::{Axiom, ClassExpression, EntityKind, Iri, Ontology};
use crate::patterns::FacetRegistry;

/// Why a class falls outside the facet fragment.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct NotInFragment {
    pub class: Iri,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("undeclared class `{0}`")]
    UndeclaredEntity(String),
    #[error("`{}` is outside the facet fragment: {}", .0.class, .0.reason)]
    NotInFragment(NotInFragment),
    #[error("{} classes are outside the facet fragment: {}", .0.len(), fragment_list(.0))]
    FragmentViolation(Vec<NotInFragment>),
    #[error("constraints were built over different facet universes")]
    UniverseMismatch,
    #[error("oracle not applicable: {0}")]
    OracleInapplicable(String),
}

fn fragment_list(items: &[NotInFragment]) -> String {
    items
        .iter()
        .map(|n| format!("{} ({})", n.class, n.reason))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Necessary,
    Sufficient,
}

type Outcome = Result<FacetConstraint, NotInFragment>;

/// Both constraints of an in-fragment class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassConstraints {
    pub necessary: FacetConstraint,
    pub sufficient: FacetConstraint,
}

/// Reduces classes of one ontology to facet constraints.
pub struct Classifier<'a> {
    ont: &'a Ontology,
    universe: AssignmentUniverse,
    /// Named classes asserted equivalent share one representative.
    canon: HashMap<&'a Iri, &'a Iri>,
    value_slot: HashMap<&'a Iri, (usize, usize)>,
    tier_axis: HashMap<Iri, usize>,
    told_supers: HashMap<&'a Iri, Vec<&'a ClassExpression>>,
    definitions: HashMap<&'a Iri, Vec<&'a ClassExpression>>,
    domains: HashMap<&'a Iri, Vec<&'a ClassExpression>>,
    disjoint_groups: Vec<Vec<&'a Iri>>,
}

impl<'a> Classifier<'a> {
    /// Classifier-mode universe: non-covering facets are open.
    pub fn new(ont: &'a Ontology, registry: &FacetRegistry) -> Result<Self, ClassifierError> {
        let universe = AssignmentUniverse::build(ont, registry, UniverseMode::Classifier)?;
        Ok(Self::with_universe(ont, universe))
    }

    pub fn with_universe(ont: &'a Ontology, universe: AssignmentUniverse) -> Self {
        let canon = named_equivalence_groups(ont);
        let rep = |iri: &'a Iri| -> &'a Iri { canon.get(iri).copied().unwrap_or(iri) };

        let mut told_supers: HashMap<&Iri, Vec<&ClassExpression>> = HashMap::new();
        let mut definitions: HashMap<&Iri, Vec<&ClassExpression>> = HashMap::new();
        let mut domains: HashMap<&Iri, Vec<&ClassExpression>> = HashMap::new();
        let mut disjoint_groups = Vec::new();
        let mut tier_axis = HashMap::new();
        for (i, axis) in universe.axes().iter().enumerate() {
            if let Some(t) = &axis.tier {
                tier_axis.insert(t.clone(), i);
            }
        }

        for ax in ont.axioms() {
            match ax {
                Axiom::SubClassOf {
                    sub: ClassExpression::Named { iri },
                    sup,
                } => told_supers.entry(rep(iri)).or_default().push(sup),
                Axiom::EquivalentClasses { operands } => {
                    let Some(name) = operands.iter().find_map(ClassExpression::as_named) else {
                        continue;
                    };
                    for other in operands {
                        if other.as_named().is_some() || is_tier_cover(&universe, name, other) {
                            continue;
                        }
                        definitions.entry(rep(name)).or_default().push(other);
                    }
                }
                Axiom::ObjectPropertyDomain { property, domain } => {
                    domains.entry(property).or_default().push(domain)
                }
                Axiom::DisjointClasses { classes } => {
                    disjoint_groups.push(classes.iter().map(rep).collect())
                }
                _ => {}
            }
        }

        let mut value_slot = HashMap::new();
        for iri in ont.classes() {
            for (i, axis) in universe.axes().iter().enumerate() {
                if let Some(bit) = axis.index_of(iri) {
                    value_slot.insert(iri, (i, bit));
                }
            }
        }

        Classifier {
            ont,
            universe,
            canon,
            value_slot,
            tier_axis,
            told_supers,
            definitions,
            domains,
            disjoint_groups,
        }
    }

    fn canonical<'b>(&'b self, iri: &'b Iri) -> &'b Iri {
        self.canon.get(iri).map_or(iri, |c| *c)
    }

    pub fn universe(&self) -> &AssignmentUniverse {
        &self.universe
    }

    pub fn ontology(&self) -> &'a Ontology {
        self.ont
    }

    /// The necessary constraint of `class`: everything asserted about it.
    pub fn constraint_of(&self, class: &Iri) -> Result<FacetConstraint, ClassifierError> {
        self.check_class(class)?;
        let mut memo = Memo::default();
        self.necessary(class, &mut memo, &mut Vec::new())
            .map_err(ClassifierError::NotInFragment)
    }

    /// What membership in `class` requires.
    pub fn definition_of(&self, class: &Iri) -> Result<FacetConstraint, ClassifierError> {
        self.check_class(class)?;
        let mut memo = Memo::default();
        self.sufficient(class, &mut memo, &mut Vec::new())
            .map_err(ClassifierError::NotInFragment)
    }

    /// Constraints for every declared class, in declaration order, split into
    /// in-fragment classes and the ones that fall outside.
    pub fn all_constraints(&self) -> (Vec<(Iri, ClassConstraints)>, Vec<NotInFragment>) {
        let mut memo = Memo::default();
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for class in self.ont.classes() {
            let nec = self.necessary(class, &mut memo, &mut Vec::new());
            let suf = self.sufficient(class, &mut memo, &mut Vec::new());
            match (nec, suf) {
                (Ok(necessary), Ok(sufficient)) => inside.push((
                    class.clone(),
                    ClassConstraints {
                        necessary,
                        sufficient,
                    },
                )),
                (Err(e), _) | (_, Err(e)) => outside.push(NotInFragment {
                    class: class.clone(),
                    reason: e.reason,
                }),
            }
        }
        (inside, outside)
    }

    fn check_class(&self, class: &Iri) -> Result<(), ClassifierError> {
        match self.ont.kind_of(class) {
            Some(EntityKind::Class) => Ok(()),
            _ => Err(ClassifierError::UndeclaredEntity(class.to_string())),
        }
    }

    fn out(&self, class: &Iri, reason: impl Into<String>) -> NotInFragment {
        NotInFragment {
            class: class.clone(),
            reason: reason.into(),
        }
    }

    fn necessary(&self, class: &Iri, memo: &mut Memo, stack: &mut Vec<Iri>) -> Outcome {
        let class = self.canonical(class);
        if let Some(hit) = memo.necessary.get(class) {
            return hit.clone();
        }
        if stack.contains(class) {
            // Asserted cycle: the outer frame already collects this class.
            memo.cycles += 1;
            return Ok(FacetConstraint::top(&self.universe));
        }
        let cycles = memo.cycles;
        stack.push(class.clone());
        let result = self.necessary_uncached(class, memo, stack);
        stack.pop();
        // Results computed inside a cycle are partial.
        if memo.cycles == cycles {
            memo.necessary.insert(class.clone(), result.clone());
        }
        result
    }

    fn necessary_uncached(&self, class: &Iri, memo: &mut Memo, stack: &mut Vec<Iri>) -> Outcome {
        let defs = self.definitions.get(class).map_or(&[][..], Vec::as_slice);
        let supers = self.told_supers.get(class).map_or(&[][..], Vec::as_slice);
        if !defs.is_empty() && !supers.is_empty() {
            return Err(self.out(class, "defined class with additional asserted superclasses"));
        }
        let mut c = FacetConstraint::top(&self.universe);
        if defs.is_empty() {
            c.add_anchor(class.clone());
        }
        for e in defs.iter().chain(supers) {
            let part = self.expr(class, e, Role::Necessary, memo, stack)?;
            c.conjoin(&part);
        }
        let clash = self
            .disjoint_groups
            .iter()
            .any(|g| g.iter().filter(|m| c.anchors().contains(**m)).count() >= 2);
        if clash {
            c.set_anchor_clash(true);
        }
        Ok(c)
    }

    fn sufficient(&self, class: &Iri, memo: &mut Memo, stack: &mut Vec<Iri>) -> Outcome {
        let class = self.canonical(class);
        if let Some(hit) = memo.sufficient.get(class) {
            return hit.clone();
        }
        let defs = self.definitions.get(class).map_or(&[][..], Vec::as_slice);
        if defs.is_empty() {
            let c = FacetConstraint::anchored(&self.universe, class.clone());
            memo.sufficient.insert(class.clone(), Ok(c.clone()));
            return Ok(c);
        }
        if stack.contains(class) {
            return Err(self.out(class, "cyclic definition"));
        }
        let supers = self.told_supers.get(class).map_or(0, Vec::len);
        if supers > 0 {
            return Err(self.out(class, "defined class with additional asserted superclasses"));
        }
        stack.push(class.clone());
        let mut result = Ok(FacetConstraint::top(&self.universe));
        for e in defs {
            match self.expr(class, e, Role::Sufficient, memo, stack) {
                Ok(part) => {
                    if let Ok(c) = result.as_mut() {
                        c.conjoin(&part);
                    }
                }
                Err(e) => {
                    result = Err(e);
                    break;
                }
            }
        }
        stack.pop();
        memo.sufficient.insert(class.clone(), result.clone());
        result
    }

    fn expr(
        &self,
        owner: &Iri,
        expr: &ClassExpression,
        role: Role,
        memo: &mut Memo,
        stack: &mut Vec<Iri>,
    ) -> Outcome {
        match expr {
            ClassExpression::Named { iri } => {
                let r = match role {
                    Role::Necessary => self.necessary(iri, memo, stack),
                    Role::Sufficient => self.sufficient(iri, memo, stack),
                };
                r.map_err(|e| self.out(owner, format!("via {}: {}", e.class, e.reason)))
            }
            ClassExpression::And { operands } => {
                let mut c = FacetConstraint::top(&self.universe);
                for op in operands {
                    c.conjoin(&self.expr(owner, op, role, memo, stack)?);
                }
                Ok(c)
            }
            ClassExpression::Some { property, filler } => {
                let axis = self.universe.axis_of(property).ok_or_else(|| {
                    self.out(
                        owner,
                        format!("restriction on non-facet property {property}"),
                    )
                })?;
                let mask = self.filler_mask(owner, axis, filler)?;
                let mut c = FacetConstraint::top(&self.universe);
                c.restrict(axis, mask);
                for domain in self.domains.get(property).into_iter().flatten() {
                    c.conjoin(&self.expr(owner, domain, role, memo, stack)?);
                }
                Ok(c)
            }
            ClassExpression::Only { property, .. } => {
                Err(self.out(owner, format!("universal restriction on {property}")))
            }
            ClassExpression::Or { .. } => Err(self.out(owner, "union outside a facet filler")),
        }
    }

    fn filler_mask(
        &self,
        owner: &Iri,
        axis: usize,
        filler: &ClassExpression,
    ) -> Result<u64, NotInFragment> {
        let property = &self.universe.axes()[axis].property;
        let bit = |iri: &Iri| -> Result<u64, NotInFragment> {
            if self.tier_axis.get(iri) == Some(&axis) {
                return Ok(self.universe.axes()[axis].full_mask());
            }
            match self.value_slot.get(iri) {
                Some(&(a, b)) if a == axis => Ok(1 << b),
                _ => Err(self.out(owner, format!("{iri} is not a value of facet {property}"))),
            }
        };
        match filler {
            ClassExpression::Named { iri } => bit(iri),
            ClassExpression::Or { operands } => operands.iter().try_fold(0, |acc, op| match op {
                ClassExpression::Named { iri } => Ok(acc | bit(iri)?),
                _ => Err(self.out(owner, format!("complex filler under {property}"))),
            }),
            _ => Err(self.out(owner, format!("complex filler under {property}"))),
        }
    }
}

#[derive(Default)]
struct Memo {
    necessary: HashMap<Iri, Outcome>,
    sufficient: HashMap<Iri, Outcome>,
    cycles: usize,
}

/// Union-find over `EquivalentClasses` axioms between named classes; maps
/// each grouped class to the alphabetically first member.
fn named_equivalence_groups(ont: &Ontology) -> HashMap<&Iri, &Iri> {
    fn find<'x>(parent: &HashMap<&'x Iri, &'x Iri>, mut x: &'x Iri) -> &'x Iri {
        while let Some(&p) = parent.get(x) {
            if p == x {
                break;
            }
            x = p;
        }
        x
    }
    let mut parent: HashMap<&Iri, &Iri> = HashMap::new();
    for ax in ont.axioms() {
        let Axiom::EquivalentClasses { operands } = ax else {
            continue;
        };
        let names: Vec<&Iri> = operands
            .iter()
            .filter_map(ClassExpression::as_named)
            .collect();
        for pair in names.windows(2) {
            let (a, b) = (find(&parent, pair[0]), find(&parent, pair[1]));
            if a == b {
                continue;
            }
            let (keep, drop) = if a.to_string() <= b.to_string() {
                (a, b)
            } else {
                (b, a)
            };
            parent.insert(keep, keep);
            parent.insert(drop, keep);
        }
    }
    let keys: Vec<&Iri> = parent.keys().copied().collect();
    keys.into_iter().map(|k| (k, find(&parent, k))).collect()
}

/// `other` is the covering axiom of the facet whose range is `name`.
fn is_tier_cover(universe: &AssignmentUniverse, name: &Iri, other: &ClassExpression) -> bool {
    universe
        .axes()
        .iter()
        .any(|a| a.tier.as_ref() == Some(name) && universe::is_union_of(other, &a.values))
}
