use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use super::{subsumes, ClassConstraints, Classifier, ClassifierError, NotInFragment};
use crate::model::{Iri, Ontology};
use crate::patterns::FacetRegistry;

/// The inferred hierarchy: equivalence groups joined by direct
/// (transitively reduced) subsumption edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumptionDag {
    /// Group representative (alphabetically first member) to all members.
    groups: BTreeMap<Iri, Vec<Iri>>,
    group_of: HashMap<Iri, Iri>,
    parents: BTreeMap<Iri, Vec<Iri>>,
    children: BTreeMap<Iri, Vec<Iri>>,
    unsatisfiable: Vec<Iri>,
    skipped: Vec<NotInFragment>,
}

impl SubsumptionDag {
    /// Representatives of all equivalence groups, alphabetical.
    pub fn nodes(&self) -> impl Iterator<Item = &Iri> {
        self.groups.keys()
    }

    pub fn representative(&self, class: &Iri) -> Option<&Iri> {
        self.group_of.get(class)
    }

    /// Members of `class`'s equivalence group, including itself.
    pub fn equivalents(&self, class: &Iri) -> &[Iri] {
        self.group_of
            .get(class)
            .and_then(|r| self.groups.get(r))
            .map_or(&[][..], Vec::as_slice)
    }

    pub fn groups(&self) -> &BTreeMap<Iri, Vec<Iri>> {
        &self.groups
    }

    /// Direct superclasses (group representatives), alphabetical.
    pub fn direct_supers(&self, class: &Iri) -> &[Iri] {
        self.group_of
            .get(class)
            .and_then(|r| self.parents.get(r))
            .map_or(&[][..], Vec::as_slice)
    }

    pub fn direct_subs(&self, class: &Iri) -> &[Iri] {
        self.group_of
            .get(class)
            .and_then(|r| self.children.get(r))
            .map_or(&[][..], Vec::as_slice)
    }

    pub fn roots(&self) -> Vec<&Iri> {
        self.groups
            .keys()
            .filter(|r| self.parents.get(*r).is_none_or(Vec::is_empty))
            .collect()
    }

    /// Classes placed under the bottom node.
    pub fn unsatisfiable(&self) -> &[Iri] {
        &self.unsatisfiable
    }

    /// Classes left out of classification.
    pub fn skipped(&self) -> &[NotInFragment] {
        &self.skipped
    }

    /// Every class strictly above `class` (all members of reachable groups).
    pub fn ancestors(&self, class: &Iri) -> BTreeSet<Iri> {
        let mut out = BTreeSet::new();
        let Some(start) = self.group_of.get(class) else {
            return out;
        };
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&Iri> = self.parents.get(start).into_iter().flatten().collect();
        while let Some(g) = stack.pop() {
            if !seen.insert(g) {
                continue;
            }
            out.extend(self.groups[g].iter().cloned());
            stack.extend(self.parents.get(g).into_iter().flatten());
        }
        out
    }

    /// Subsumption as read off the hierarchy.
    pub fn is_subsumed_by(&self, sub: &Iri, sup: &Iri) -> bool {
        if self.unsatisfiable.contains(sub) {
            return true;
        }
        match (self.group_of.get(sub), self.group_of.get(sup)) {
            (Some(a), Some(b)) if a == b => true,
            (Some(_), Some(_)) => self.ancestors(sub).contains(sup),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.parents.values().map(Vec::len).sum()
    }
}

/// Classifies every class of the ontology. Without `skip_non_fragment`, any
/// class outside the fragment is an error.
pub fn classify(
    ont: &Ontology,
    registry: &FacetRegistry,
    skip_non_fragment: bool,
) -> Result<SubsumptionDag, ClassifierError> {
    let classifier = Classifier::new(ont, registry)?;
    let (inside, outside) = classifier.all_constraints();
    if !outside.is_empty() && !skip_non_fragment {
        return Err(ClassifierError::FragmentViolation(outside));
    }
    build_dag(&inside, outside)
}

pub(crate) fn build_dag(
    inside: &[(Iri, ClassConstraints)],
    skipped: Vec<NotInFragment>,
) -> Result<SubsumptionDag, ClassifierError> {
    let mut unsatisfiable = Vec::new();
    let mut live: Vec<&(Iri, ClassConstraints)> = Vec::new();
    for entry in inside {
        if entry.1.necessary.is_unsatisfiable() {
            unsatisfiable.push(entry.0.clone());
        } else {
            live.push(entry);
        }
    }
    unsatisfiable.sort_by_cached_key(ToString::to_string);
    live.sort_by_cached_key(|(iri, _)| iri.to_string());

    // above[b] holds every a with a ⊒ b.
    let n = live.len();
    let mut above = vec![FixedBitSet::with_capacity(n); n];
    for (b, (_, cb)) in live.iter().enumerate() {
        for (a, (_, ca)) in live.iter().enumerate() {
            if subsumes(&ca.sufficient, &cb.necessary)? {
                above[b].insert(a);
            }
        }
    }

    // Equivalence groups; live is sorted, so the first member is the
    // alphabetical representative.
    let mut rep = vec![usize::MAX; n];
    for i in 0..n {
        if rep[i] != usize::MAX {
            continue;
        }
        rep[i] = i;
        for j in i + 1..n {
            if rep[j] == usize::MAX && above[i].contains(j) && above[j].contains(i) {
                rep[j] = i;
            }
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&i| rep[i] == i).collect();

    // Strict supers per representative, restricted to representatives.
    let mut strict: HashMap<usize, FixedBitSet> = HashMap::new();
    for &g in &reps {
        let mut s = FixedBitSet::with_capacity(n);
        for &h in &reps {
            if h != g && above[g].contains(h) {
                s.insert(h);
            }
        }
        strict.insert(g, s);
    }
    let mut groups: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();
    let mut group_of = HashMap::new();
    for i in 0..n {
        let r = live[rep[i]].0.clone();
        group_of.insert(live[i].0.clone(), r.clone());
        groups.entry(r).or_default().push(live[i].0.clone());
    }
    let mut parents: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();
    let mut children: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();
    for &g in &reps {
        let mut implied = FixedBitSet::with_capacity(n);
        for h in strict[&g].ones() {
            implied.union_with(&strict[&h]);
        }
        let mut direct = strict[&g].clone();
        direct.difference_with(&implied);
        let g_iri = &live[g].0;
        let list: Vec<Iri> = direct.ones().map(|h| live[h].0.clone()).collect();
        for p in &list {
            children.entry(p.clone()).or_default().push(g_iri.clone());
        }
        parents.insert(g_iri.clone(), list);
    }
    for kids in children.values_mut() {
        kids.sort_by_cached_key(ToString::to_string);
    }

    Ok(SubsumptionDag {
        groups,
        group_of,
        parents,
        children,
        unsatisfiable,
        skipped,
    })
}
