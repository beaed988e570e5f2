use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;

use super::{NotInFragment, SubsumptionDag};
use crate::model::Iri;

/// Indented tree of the hierarchy. A group reached a second time is printed
/// once more with a `(see above)` marker instead of its subtree.
pub fn render_text(dag: &SubsumptionDag) -> String {
    let mut out = String::new();
    let mut printed = BTreeSet::new();
    for root in dag.roots() {
        write_node(dag, root, 0, &mut printed, &mut out);
    }
    if !dag.unsatisfiable().is_empty() {
        out.push_str("Nothing\n");
        for c in dag.unsatisfiable() {
            let _ = writeln!(out, "    {c}");
        }
    }
    if !dag.skipped().is_empty() {
        out.push_str("Skipped\n");
        for s in dag.skipped() {
            let _ = writeln!(out, "    {} ({})", s.class, s.reason);
        }
    }
    out
}

fn write_node(
    dag: &SubsumptionDag,
    node: &Iri,
    depth: usize,
    printed: &mut BTreeSet<Iri>,
    out: &mut String,
) {
    let indent = "    ".repeat(depth);
    let _ = write!(out, "{indent}{node}");
    let others: Vec<String> = dag
        .equivalents(node)
        .iter()
        .filter(|e| *e != node)
        .map(ToString::to_string)
        .collect();
    if !others.is_empty() {
        let _ = write!(out, " = {}", others.join(" = "));
    }
    if !printed.insert(node.clone()) {
        if !dag.direct_subs(node).is_empty() {
            out.push_str(" (see above)");
        }
        out.push('\n');
        return;
    }
    out.push('\n');
    for child in dag.direct_subs(node) {
        write_node(dag, child, depth + 1, printed, out);
    }
}

#[derive(Serialize)]
struct MachineClass<'a> {
    class: &'a Iri,
    equivalents: Vec<&'a Iri>,
    direct_supers: &'a [Iri],
}

#[derive(Serialize)]
struct MachineReport<'a> {
    classes: Vec<MachineClass<'a>>,
    unsatisfiable: &'a [Iri],
    skipped: &'a [NotInFragment],
}

/// JSON form of the hierarchy, one entry per classified class (sorted).
pub fn render_machine(dag: &SubsumptionDag) -> String {
    let mut classes: Vec<MachineClass> = dag
        .groups()
        .values()
        .flatten()
        .map(|c| MachineClass {
            class: c,
            equivalents: dag.equivalents(c).iter().filter(|e| *e != c).collect(),
            direct_supers: dag.direct_supers(c),
        })
        .collect();
    classes.sort_by_cached_key(|m| m.class.to_string());
    let report = MachineReport {
        classes,
        unsatisfiable: dag.unsatisfiable(),
        skipped: dag.skipped(),
    };
    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
}
