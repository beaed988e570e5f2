//! Manchester-style rendering.
//!
//! Output is a pure function of the ontology's axiom *set*: frames are
//! sorted by rendered name, section members and `or`/`and` operands are
//! sorted alphabetically, so insertion order never shows through.
//!
//! Layout follows the OWL API renderer: every section and frame is
//! separated by a line holding four spaces, section headers keep a trailing
//! space after the colon, and members sit at an eight-space indent.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::model::{AnnotationValue, Axiom, ClassExpression, Ontology};

const SEPARATOR: &str = "    \n";

/// Rendering switches; all off by default, which gives plain class frames.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Append an `Annotations:` section to each frame.
    pub include_annotations: bool,
    /// Emit `ObjectProperty:` frames after the class frames.
    pub include_properties: bool,
    /// Start with `Prefix:` declarations and an `Ontology:` line.
    pub include_header: bool,
}

impl RenderOptions {
    pub fn full() -> Self {
        RenderOptions {
            include_annotations: true,
            include_properties: true,
            include_header: true,
        }
    }
}

pub fn render_expression(expr: &ClassExpression) -> String {
    render_nested(expr, false)
}

fn render_nested(expr: &ClassExpression, nested: bool) -> String {
    match expr {
        ClassExpression::Named { iri } => iri.to_string(),
        ClassExpression::Some { property, filler } => {
            format!("{property} some {}", render_nested(filler, true))
        }
        ClassExpression::Only { property, filler } => {
            format!("{property} only {}", render_nested(filler, true))
        }
        ClassExpression::And { operands } => infix(operands, " and ", nested),
        ClassExpression::Or { operands } => infix(operands, " or ", nested),
    }
}

fn infix(operands: &[ClassExpression], op: &str, nested: bool) -> String {
    let mut parts: Vec<String> = operands.iter().map(|e| render_nested(e, true)).collect();
    parts.sort();
    let joined = parts.join(op);
    if nested {
        format!("({joined})")
    } else {
        joined
    }
}

fn render_annotation(property: &crate::model::Iri, value: &AnnotationValue) -> String {
    match value {
        AnnotationValue::Iri { iri } => format!("{property} {iri}"),
        AnnotationValue::Literal(s) => format!("{property} {}", quote(s)),
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Default)]
struct Frame {
    sections: BTreeMap<usize, (&'static str, Vec<String>)>,
}

impl Frame {
    fn push(&mut self, order: usize, header: &'static str, member: String) {
        let section = self
            .sections
            .entry(order)
            .or_insert_with(|| (header, Vec::new()));
        if !section.1.contains(&member) {
            section.1.push(member);
        }
    }

    fn render(self, keyword: &str, name: &str) -> String {
        let mut out = format!("{keyword}: {name}\n");
        let sections: Vec<String> = self
            .sections
            .into_values()
            .map(|(header, mut members)| {
                members.sort();
                let body: Vec<String> = members.iter().map(|m| format!("        {m}")).collect();
                format!("    {header}: \n{}\n", body.join(",\n"))
            })
            .collect();
        out.push_str(&sections.join(SEPARATOR));
        out
    }
}

// Section order inside a frame.
const EQUIVALENT: usize = 0;
const SUBCLASS: usize = 1;
const DOMAIN: usize = 2;
const RANGE: usize = 3;
const CHARACTERISTICS: usize = 4;
const ANNOTATIONS: usize = 5;

/// Renders the ontology as Manchester-style text.
pub fn render(ont: &Ontology, opts: &RenderOptions) -> String {
    let mut classes: BTreeMap<String, Frame> = BTreeMap::new();
    let mut properties: BTreeMap<String, Frame> = BTreeMap::new();
    let mut equivalences: Vec<String> = Vec::new();
    let mut general: Vec<String> = Vec::new();
    let mut disjoints: Vec<String> = Vec::new();

    for ax in ont.axioms() {
        match ax {
            Axiom::SubClassOf { sub, sup } => match sub.as_named() {
                Some(iri) => classes.entry(iri.to_string()).or_default().push(
                    SUBCLASS,
                    "SubClassOf",
                    render_expression(sup),
                ),
                None => general.push(format!(
                    "{} SubClassOf {}",
                    render_nested(sub, true),
                    render_nested(sup, true)
                )),
            },
            Axiom::EquivalentClasses { operands } => {
                let mut names: Vec<String> = operands
                    .iter()
                    .filter_map(|e| e.as_named().map(ToString::to_string))
                    .collect();
                names.sort();
                match names.first() {
                    Some(owner) => {
                        let frame = classes.entry(owner.clone()).or_default();
                        for e in operands {
                            let rendered = render_expression(e);
                            if rendered != *owner {
                                frame.push(EQUIVALENT, "EquivalentTo", rendered);
                            }
                        }
                    }
                    None => {
                        let mut parts: Vec<String> =
                            operands.iter().map(|e| render_nested(e, true)).collect();
                        parts.sort();
                        equivalences.push(parts.join(","));
                    }
                }
            }
            Axiom::DisjointClasses { classes: members } => {
                let mut parts: Vec<String> = members.iter().map(ToString::to_string).collect();
                parts.sort();
                disjoints.push(parts.join(","));
            }
            Axiom::ObjectPropertyDomain { property, domain } => {
                properties.entry(property.to_string()).or_default().push(
                    DOMAIN,
                    "Domain",
                    render_expression(domain),
                );
            }
            Axiom::ObjectPropertyRange { property, range } => {
                properties.entry(property.to_string()).or_default().push(
                    RANGE,
                    "Range",
                    render_expression(range),
                );
            }
            Axiom::FunctionalObjectProperty { property } => {
                properties.entry(property.to_string()).or_default().push(
                    CHARACTERISTICS,
                    "Characteristics",
                    "Functional".to_owned(),
                );
            }
            Axiom::AnnotationAssertion {
                subject,
                property,
                value,
            } => {
                if !opts.include_annotations {
                    continue;
                }
                let target = match ont.kind_of(subject) {
                    Some(crate::model::EntityKind::Class) => &mut classes,
                    Some(crate::model::EntityKind::ObjectProperty) => &mut properties,
                    _ => continue,
                };
                target.entry(subject.to_string()).or_default().push(
                    ANNOTATIONS,
                    "Annotations",
                    render_annotation(property, value),
                );
            }
        }
    }

    let mut blocks: Vec<String> = classes
        .into_iter()
        .map(|(name, frame)| frame.render("Class", &name))
        .collect();
    if opts.include_properties {
        blocks.extend(
            properties
                .into_iter()
                .map(|(name, frame)| frame.render("ObjectProperty", &name)),
        );
    }
    equivalences.sort();
    blocks.extend(
        equivalences
            .into_iter()
            .map(|e| format!("EquivalentClasses: \n    {e}\n")),
    );
    general.sort();
    blocks.extend(general.into_iter().map(|g| format!("Rule: \n    {g}\n")));
    disjoints.sort();
    disjoints.dedup();
    blocks.extend(
        disjoints
            .into_iter()
            .map(|d| format!("DisjointClasses: \n    {d}\n")),
    );

    let mut out = String::new();
    if opts.include_header {
        for (prefix, expansion) in ont.prefixes() {
            let _ = writeln!(out, "Prefix: {prefix}: <{expansion}>");
        }
        let _ = writeln!(out, "\nOntology: {}\n", ont.iri());
    }
    out.push_str(&blocks.join(SEPARATOR));
    out
}

/// One-line rendering of a single axiom, for traces and diagnostics.
pub fn render_axiom(axiom: &Axiom) -> String {
    match axiom {
        Axiom::SubClassOf { sub, sup } => {
            format!(
                "{} SubClassOf {}",
                render_nested(sub, true),
                render_nested(sup, true)
            )
        }
        Axiom::EquivalentClasses { operands } => operands
            .iter()
            .map(|e| render_nested(e, true))
            .collect::<Vec<_>>()
            .join(" EquivalentTo "),
        Axiom::DisjointClasses { classes } => format!(
            "DisjointClasses: {}",
            classes
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
        Axiom::ObjectPropertyDomain { property, domain } => {
            format!("{property} Domain {}", render_nested(domain, true))
        }
        Axiom::ObjectPropertyRange { property, range } => {
            format!("{property} Range {}", render_nested(range, true))
        }
        Axiom::FunctionalObjectProperty { property } => {
            format!("{property} Characteristics Functional")
        }
        Axiom::AnnotationAssertion {
            subject,
            property,
            value,
        } => format!(
            "{subject} Annotations {}",
            render_annotation(property, value)
        ),
    }
}
