use std::collections::{BTreeMap, BTreeSet};

use crate::model::Iri;

use super::universe::AssignmentUniverse;
use super::ClassifierError;

/// Canonical form of a class in the facet fragment: the named classes it is
/// asserted under, and one allowed-value mask per facet axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetConstraint {
    anchors: BTreeSet<Iri>,
    masks: Vec<u64>,
    anchor_clash: bool,
    universe: u64,
}

impl FacetConstraint {
    /// The unconstrained class: no anchors, every value allowed.
    pub fn top(universe: &AssignmentUniverse) -> Self {
        FacetConstraint {
            anchors: BTreeSet::new(),
            masks: universe.axes().iter().map(|a| a.full_mask()).collect(),
            anchor_clash: false,
            universe: universe.fingerprint(),
        }
    }

    pub fn anchored(universe: &AssignmentUniverse, anchor: Iri) -> Self {
        let mut c = Self::top(universe);
        c.anchors.insert(anchor);
        c
    }

    pub fn anchors(&self) -> &BTreeSet<Iri> {
        &self.anchors
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn universe_fingerprint(&self) -> u64 {
        self.universe
    }

    /// Two of the anchors are asserted disjoint.
    pub fn has_anchor_clash(&self) -> bool {
        self.anchor_clash
    }

    pub fn is_unsatisfiable(&self) -> bool {
        self.anchor_clash || self.masks.contains(&0)
    }

    pub fn add_anchor(&mut self, anchor: Iri) {
        self.anchors.insert(anchor);
    }

    pub fn set_anchor_clash(&mut self, clash: bool) {
        self.anchor_clash = clash;
    }

    /// Intersects the allowed values on `axis` with `mask`.
    pub fn restrict(&mut self, axis: usize, mask: u64) {
        self.masks[axis] &= mask;
    }

    pub fn conjoin(&mut self, other: &FacetConstraint) {
        debug_assert_eq!(self.universe, other.universe);
        self.anchors.extend(other.anchors.iter().cloned());
        for (m, o) in self.masks.iter_mut().zip(&other.masks) {
            *m &= *o;
        }
        self.anchor_clash |= other.anchor_clash;
    }

    /// Constrained axes and their allowed named values. The synthetic value
    /// of an open axis is not listed.
    pub fn allowed(&self, universe: &AssignmentUniverse) -> BTreeMap<Iri, Vec<Iri>> {
        universe
            .axes()
            .iter()
            .zip(&self.masks)
            .filter(|(axis, &m)| m != axis.full_mask())
            .map(|(axis, &m)| {
                let values = axis
                    .values
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m & (1 << i) != 0)
                    .map(|(_, v)| v.clone())
                    .collect();
                (axis.property.clone(), values)
            })
            .collect()
    }
}

/// Structural subsumption: `sup` subsumes `sub` when `sub` is unsatisfiable
/// or it carries every anchor of `sup` and allows no value `sup` excludes.
pub fn subsumes(sup: &FacetConstraint, sub: &FacetConstraint) -> Result<bool, ClassifierError> {
    if sup.universe != sub.universe || sup.masks.len() != sub.masks.len() {
        return Err(ClassifierError::UniverseMismatch);
    }
    if sub.is_unsatisfiable() {
        return Ok(true);
    }
    Ok(sup.anchors.is_subset(&sub.anchors)
        && sup.masks.iter().zip(&sub.masks).all(|(a, b)| b & !a == 0))
}
