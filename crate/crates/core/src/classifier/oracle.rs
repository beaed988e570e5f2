//! Brute-force semantic check for the classifier.
//!
//! With functional, disjoint and covering facets every individual takes
//! exactly one value per facet, so a class is fully described by the set
//! of total assignments it admits. The oracle enumerates the whole
//! assignment universe, tests each assignment against a constraint value by
//! value, and compares extensions by set inclusion. It never looks at the
//! classifier's mask arithmetic or hierarchy.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::dag::build_dag;
use super::{
    AssignmentUniverse, Classifier, ClassifierError, FacetConstraint, NotInFragment, UniverseMode,
};
use crate::model::{Iri, Ontology};
use crate::patterns::FacetRegistry;

/// Refuse universes larger than this many assignments.
pub const MAX_UNIVERSE: usize = 1 << 22;

/// A set of total assignments, indexed in mixed radix over the axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    radices: Vec<usize>,
    members: FixedBitSet,
}

impl Extension {
    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Whether the assignment (one value index per axis) is a member.
    pub fn contains(&self, assignment: &[usize]) -> bool {
        encode(&self.radices, assignment).is_some_and(|i| self.members.contains(i))
    }

    /// Members as value-index vectors, in enumeration order.
    pub fn assignments(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.members.ones().map(|i| decode(&self.radices, i))
    }
}

fn encode(radices: &[usize], assignment: &[usize]) -> Option<usize> {
    if assignment.len() != radices.len() {
        return None;
    }
    let mut idx = 0;
    for (&r, &v) in radices.iter().zip(assignment) {
        if v >= r {
            return None;
        }
        idx = idx * r + v;
    }
    Some(idx)
}

fn decode(radices: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = idx % r;
        idx /= r;
    }
    out
}

/// All assignments of `universe` admitted by `constraint`.
pub fn oracle_extension(
    universe: &AssignmentUniverse,
    constraint: &FacetConstraint,
) -> Result<Extension, ClassifierError> {
    if constraint.universe_fingerprint() != universe.fingerprint() {
        return Err(ClassifierError::UniverseMismatch);
    }
    let size = universe
        .size()
        .filter(|&s| s <= MAX_UNIVERSE)
        .ok_or_else(|| {
            ClassifierError::OracleInapplicable("assignment universe too large".into())
        })?;
    let radices: Vec<usize> = universe.axes().iter().map(|a| a.width()).collect();
    let mut members = FixedBitSet::with_capacity(size);
    if !constraint.has_anchor_clash() {
        let masks = constraint.masks();
        for idx in 0..size {
            let assignment = decode(&radices, idx);
            let admitted = assignment
                .iter()
                .zip(masks)
                .all(|(&value, &mask)| (mask >> value) & 1 == 1);
            if admitted {
                members.insert(idx);
            }
        }
    }
    Ok(Extension { radices, members })
}

/// `sup` subsumes `sub` when every assignment of `sub` is one of `sup`'s
/// and `sub` sits under every anchor of `sup`; an empty `sub` is subsumed
/// by everything.
pub fn oracle_subsumes(
    sup: (&FacetConstraint, &Extension),
    sub: (&FacetConstraint, &Extension),
) -> bool {
    sub.1.is_empty() || (sup.0.anchors().is_subset(sub.0.anchors()) && sub.1.is_subset(sup.1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub sub: Iri,
    pub sup: Iri,
    pub classifier: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub classes: usize,
    pub pairs: usize,
    pub universe_size: usize,
    pub approximate: bool,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Vec<NotInFragment>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} mismatches / {} pairs",
            self.mismatches.len(),
            self.pairs
        );
        if self.approximate {
            s.push_str(" (approximate: open facets padded)");
        }
        s
    }
}

/// Compares the classified hierarchy with extension inclusion on every
/// ordered pair of in-fragment classes.
pub fn check_against_oracle(
    ont: &Ontology,
    registry: &FacetRegistry,
    pad_open: bool,
) -> Result<OracleReport, ClassifierError> {
    let universe = AssignmentUniverse::build(ont, registry, UniverseMode::Oracle { pad_open })?;
    let universe_size = universe
        .size()
        .filter(|&s| s <= MAX_UNIVERSE)
        .ok_or_else(|| {
            ClassifierError::OracleInapplicable("assignment universe too large".into())
        })?;
    let approximate = universe.is_approximate();
    let classifier = Classifier::with_universe(ont, universe);
    let (inside, skipped) = classifier.all_constraints();
    let dag = build_dag(&inside, Vec::new())?;

    let mut semantic = Vec::with_capacity(inside.len());
    for (iri, cc) in &inside {
        let nec = oracle_extension(classifier.universe(), &cc.necessary)?;
        let suf = oracle_extension(classifier.universe(), &cc.sufficient)?;
        semantic.push((iri, nec, suf));
    }

    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for (b, (sub, sub_ext, _)) in semantic.iter().enumerate() {
        let ancestors = dag.ancestors(sub);
        for (a, (sup, _, sup_ext)) in semantic.iter().enumerate() {
            pairs += 1;
            let expected = oracle_subsumes(
                (&inside[a].1.sufficient, sup_ext),
                (&inside[b].1.necessary, sub_ext),
            );
            let got = a == b
                || dag.unsatisfiable().contains(sub)
                || dag.equivalents(sub).contains(sup)
                || ancestors.contains(*sup);
            if got != expected {
                mismatches.push(Mismatch {
                    sub: (*sub).clone(),
                    sup: (*sup).clone(),
                    classifier: got,
                    oracle: expected,
                });
            }
        }
    }

    Ok(OracleReport {
        classes: inside.len(),
        pairs,
        universe_size,
        approximate,
        mismatches,
        skipped,
    })
}
