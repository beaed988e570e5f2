use std::collections::HashMap;

use thiserror::Error;

use super::parse::{parse, Form, FormKind, ParseError, ParseErrorKind, Pos};
use crate::model::{
    vocab, AnnotationValue, Axiom, ClassExpression, Entity, EntityKind, Iri, ModelError, Ontology,
};
use crate::patterns::{
    self, as_facet, defgem, defpartition, deftier, FacetRegistry, GemSpec, PatternError, TierSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("{message}")]
    Parse {
        kind: ParseErrorKind,
        message: String,
    },
    #[error("unknown form `{0}`")]
    UnknownHead(String),
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("`{head}`: {message}")]
    ArityError { head: String, message: String },
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("`{symbol}` names {found}, expected {expected}")]
    WrongKind {
        symbol: String,
        expected: EntityKind,
        found: EntityKind,
    },
    #[error("program must start with (defontology ...)")]
    MissingOntology,
    #[error("defontology may only appear once, as the first form")]
    MisplacedOntology,
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// An evaluation error with the source position of the offending form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct DslError {
    pub pos: Pos,
    pub kind: DslErrorKind,
}

impl DslError {
    fn new(pos: Pos, kind: DslErrorKind) -> Self {
        DslError { pos, kind }
    }
}

impl From<ParseError> for DslError {
    fn from(e: ParseError) -> Self {
        DslError {
            pos: e.pos,
            kind: DslErrorKind::Parse {
                kind: e.kind,
                message: e.message,
            },
        }
    }
}

type Result<T> = std::result::Result<T, DslError>;

/// Axioms attributed to one top-level form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub form: Form,
    pub axioms: Vec<Axiom>,
}

/// Everything produced by evaluating a program.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub ontology: Ontology,
    pub registry: FacetRegistry,
    pub trace: Vec<TraceEntry>,
}

/// Symbol table and ontology under construction.
#[derive(Debug, Clone)]
pub struct EvalEnv {
    ontology: Ontology,
    registry: FacetRegistry,
    bindings: HashMap<String, Entity>,
}

impl EvalEnv {
    pub fn ontology(&self) -> &Ontology {
        &self.ontology
    }

    pub fn registry(&self) -> &FacetRegistry {
        &self.registry
    }

    pub fn lookup(&self, name: &str) -> Option<&Entity> {
        self.bindings.get(name)
    }

    fn bind(&mut self, entity: Entity) {
        self.bindings
            .insert(entity.iri.fragment().to_owned(), entity);
    }

    fn bind_iri(&mut self, kind: EntityKind, iri: &Iri) {
        self.bind(Entity {
            kind,
            iri: iri.clone(),
        });
    }

    fn resolve(&self, form: &Form, kind: EntityKind) -> Result<Iri> {
        let name = form.as_symbol().ok_or_else(|| {
            DslError::new(
                form.pos,
                DslErrorKind::Unexpected {
                    expected: "a symbol".into(),
                    found: form.describe().into(),
                },
            )
        })?;
        let entity = if name.contains(':') {
            Iri::parse(name)
                .ok()
                .and_then(|iri| self.ontology.kind_of(&iri).map(|kind| Entity { kind, iri }))
        } else {
            self.bindings.get(name).cloned()
        };
        let entity = entity
            .ok_or_else(|| DslError::new(form.pos, DslErrorKind::UnboundSymbol(name.to_owned())))?;
        if entity.kind != kind {
            return Err(DslError::new(
                form.pos,
                DslErrorKind::WrongKind {
                    symbol: name.to_owned(),
                    expected: kind,
                    found: entity.kind,
                },
            ));
        }
        Ok(entity.iri)
    }

    fn declare(&mut self, form: &Form, kind: EntityKind) -> Result<Iri> {
        let name = symbol(form)?;
        let entity = self
            .ontology
            .declare(kind, name)
            .map_err(|e| at(form.pos, e))?;
        let iri = entity.iri.clone();
        self.bind(entity);
        Ok(iri)
    }

    fn add(&mut self, pos: Pos, axiom: Axiom) -> Result<()> {
        self.ontology.add_axiom(axiom).map_err(|e| at(pos, e))?;
        Ok(())
    }

    /// Evaluates a class-expression form; `some-only` and `facet` yield
    /// several expressions.
    fn exprs(&self, form: &Form) -> Result<Vec<ClassExpression>> {
        match &form.kind {
            FormKind::Symbol(_) => Ok(vec![self.resolve(form, EntityKind::Class)?.into()]),
            FormKind::List(items) => {
                let (head, args) = items.split_first().ok_or_else(|| {
                    DslError::new(
                        form.pos,
                        DslErrorKind::Unexpected {
                            expected: "a class expression".into(),
                            found: "empty list".into(),
                        },
                    )
                })?;
                let name = symbol(head)?;
                match name {
                    "some" | "only" => {
                        let [p, filler] = args else {
                            return Err(arity(form.pos, name, "expects a property and one filler"));
                        };
                        let property = self.resolve(p, EntityKind::ObjectProperty)?;
                        let filler = self.single(filler)?;
                        Ok(vec![if name == "some" {
                            ClassExpression::some(property, filler)
                        } else {
                            ClassExpression::only(property, filler)
                        }])
                    }
                    "and" | "or" => {
                        let operands = self.flat(form.pos, name, args)?;
                        let expr = if name == "and" {
                            ClassExpression::intersection(operands)
                        } else {
                            ClassExpression::union(operands)
                        };
                        Ok(vec![expr.map_err(|e| at(form.pos, e))?])
                    }
                    "some-only" => {
                        let (p, fillers) = args.split_first().ok_or_else(|| {
                            arity(form.pos, name, "expects a property and at least one filler")
                        })?;
                        let property = self.resolve(p, EntityKind::ObjectProperty)?;
                        let fillers = self.flat(form.pos, name, fillers)?;
                        patterns::some_only(&property, &fillers)
                            .map_err(|e| DslError::new(form.pos, e.into()))
                    }
                    "facet" => {
                        if args.is_empty() {
                            return Err(arity(form.pos, name, "expects at least one class"));
                        }
                        let classes = args
                            .iter()
                            .map(|a| self.resolve(a, EntityKind::Class))
                            .collect::<Result<Vec<_>>>()?;
                        patterns::facet(&self.registry, &classes)
                            .map_err(|e| DslError::new(form.pos, e.into()))
                    }
                    other => Err(DslError::new(
                        head.pos,
                        DslErrorKind::UnknownHead(other.to_owned()),
                    )),
                }
            }
            _ => Err(DslError::new(
                form.pos,
                DslErrorKind::Unexpected {
                    expected: "a class expression".into(),
                    found: form.describe().into(),
                },
            )),
        }
    }

    fn single(&self, form: &Form) -> Result<ClassExpression> {
        let mut out = self.exprs(form)?;
        if out.len() != 1 {
            return Err(DslError::new(
                form.pos,
                DslErrorKind::Unexpected {
                    expected: "a single class expression".into(),
                    found: format!("{} expressions", out.len()),
                },
            ));
        }
        Ok(out.pop().unwrap())
    }

    fn flat(&self, pos: Pos, head: &str, args: &[Form]) -> Result<Vec<ClassExpression>> {
        let mut out = Vec::new();
        for a in args {
            out.extend(self.exprs(a)?);
        }
        if out.is_empty() {
            return Err(arity(pos, head, "expects at least one operand"));
        }
        Ok(out)
    }
}

fn at(pos: Pos, e: ModelError) -> DslError {
    DslError::new(pos, DslErrorKind::Pattern(PatternError::Model(e)))
}

fn arity(pos: Pos, head: &str, message: &str) -> DslError {
    DslError::new(
        pos,
        DslErrorKind::ArityError {
            head: head.to_owned(),
            message: message.to_owned(),
        },
    )
}

fn symbol(form: &Form) -> Result<&str> {
    form.as_symbol().ok_or_else(|| {
        DslError::new(
            form.pos,
            DslErrorKind::Unexpected {
                expected: "a symbol".into(),
                found: form.describe().into(),
            },
        )
    })
}

fn string(form: &Form) -> Result<&str> {
    match &form.kind {
        FormKind::Str(s) => Ok(s),
        _ => Err(DslError::new(
            form.pos,
            DslErrorKind::Unexpected {
                expected: "a string".into(),
                found: form.describe().into(),
            },
        )),
    }
}

fn boolean(form: &Form) -> Result<bool> {
    match form.as_symbol() {
        Some("true") => Ok(true),
        Some("false") => Ok(false),
        _ => Err(DslError::new(
            form.pos,
            DslErrorKind::Unexpected {
                expected: "`true` or `false`".into(),
                found: form.to_string(),
            },
        )),
    }
}

/// Arguments of a definition form: leading positionals, then keyword
/// sections each owning the forms up to the next keyword.
struct Args<'a> {
    head: &'a str,
    pos: Pos,
    positional: &'a [Form],
    sections: Vec<(&'a Form, &'a [Form])>,
}

impl<'a> Args<'a> {
    fn split(head: &'a str, pos: Pos, args: &'a [Form], allowed: &[&str]) -> Result<Self> {
        let first_kw = args
            .iter()
            .position(|f| f.as_keyword().is_some())
            .unwrap_or(args.len());
        let (positional, rest) = args.split_at(first_kw);
        let mut sections = Vec::new();
        let mut i = 0;
        while i < rest.len() {
            let kw = &rest[i];
            let name = kw.as_keyword().expect("section starts at a keyword");
            if !allowed.contains(&name) {
                return Err(DslError::new(
                    kw.pos,
                    DslErrorKind::Unexpected {
                        expected: format!(
                            "one of {}",
                            allowed
                                .iter()
                                .map(|a| format!(":{a}"))
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                        found: format!(":{name}"),
                    },
                ));
            }
            let end = rest[i + 1..]
                .iter()
                .position(|f| f.as_keyword().is_some())
                .map_or(rest.len(), |p| i + 1 + p);
            sections.push((kw, &rest[i + 1..end]));
            i = end;
        }
        Ok(Args {
            head,
            pos,
            positional,
            sections,
        })
    }

    fn name(&self) -> Result<&'a Form> {
        match self.positional.first() {
            Some(f) => Ok(f),
            None => Err(arity(self.pos, self.head, "expects a name")),
        }
    }

    fn positional_exactly(&self, n: usize, what: &str) -> Result<()> {
        if self.positional.len() != n {
            return Err(arity(self.pos, self.head, what));
        }
        Ok(())
    }

    fn section(&self, name: &str) -> impl Iterator<Item = (&'a Form, &'a [Form])> + '_ {
        let name = name.to_owned();
        self.sections
            .iter()
            .filter(move |(kw, _)| kw.as_keyword() == Some(name.as_str()))
            .copied()
    }

    /// A section that must hold exactly one form, if present.
    fn one(&self, name: &str) -> Result<Option<&'a Form>> {
        let mut found = None;
        for (kw, forms) in self.section(name) {
            if forms.len() != 1 || found.is_some() {
                return Err(arity(
                    kw.pos,
                    self.head,
                    &format!(":{name} takes exactly one value"),
                ));
            }
            found = Some(&forms[0]);
        }
        Ok(found)
    }

    fn flag(&self, name: &str) -> Result<Option<bool>> {
        self.one(name)?.map(boolean).transpose()
    }
}

fn tier_spec(env: &EvalEnv, args: &Args<'_>) -> Result<(TierSpec, Pos)> {
    args.positional_exactly(2, "expects a name and a vector of values")?;
    let name_form = &args.positional[0];
    let name = symbol(name_form)?;
    let values = match &args.positional[1].kind {
        FormKind::Vector(items) => items
            .iter()
            .map(|f| symbol(f).map(str::to_owned))
            .collect::<Result<Vec<_>>>()?,
        _ => {
            return Err(DslError::new(
                args.positional[1].pos,
                DslErrorKind::Unexpected {
                    expected: "a vector of value names".into(),
                    found: args.positional[1].describe().into(),
                },
            ))
        }
    };
    let mut spec = TierSpec::new(name, values);
    if let Some(f) = args.one("domain")? {
        spec.domain = Some(env.resolve(f, EntityKind::Class)?);
    }
    if let Some(f) = args.one("super")? {
        spec.sup = Some(env.resolve(f, EntityKind::Class)?);
    }
    if let Some(f) = args.one("property-name")? {
        spec.property_name = Some(symbol(f)?.to_owned());
    }
    spec.suffix = args.flag("suffix")?.unwrap_or(spec.suffix);
    spec.functional = args.flag("functional")?.unwrap_or(spec.functional);
    spec.disjoint = args.flag("disjoint")?.unwrap_or(spec.disjoint);
    spec.cover = args.flag("cover")?.unwrap_or(spec.cover);
    spec.make_property = args.flag("property")?.unwrap_or(spec.make_property);
    Ok((spec, name_form.pos))
}

const TIER_OPTIONS: &[&str] = &[
    "domain",
    "super",
    "suffix",
    "functional",
    "disjoint",
    "cover",
    "property",
    "property-name",
];

fn eval_definition(env: &mut EvalEnv, form: &Form) -> Result<()> {
    let FormKind::List(items) = &form.kind else {
        return Err(DslError::new(
            form.pos,
            DslErrorKind::Unexpected {
                expected: "a top-level list form".into(),
                found: form.describe().into(),
            },
        ));
    };
    let Some((head_form, rest)) = items.split_first() else {
        return Err(DslError::new(
            form.pos,
            DslErrorKind::Unexpected {
                expected: "a top-level form".into(),
                found: "empty list".into(),
            },
        ));
    };
    let head = symbol(head_form)?;
    match head {
        "defontology" => Err(DslError::new(form.pos, DslErrorKind::MisplacedOntology)),
        "defclass" => {
            let args = Args::split(head, form.pos, rest, &["super", "equivalent", "comment"])?;
            args.positional_exactly(1, "expects exactly one class name")?;
            let class = env.declare(args.name()?, EntityKind::Class)?;
            for (_, forms) in args.section("super") {
                for f in forms {
                    for sup in env.exprs(f)? {
                        env.add(f.pos, Axiom::subclass_of(class.clone(), sup))?;
                    }
                }
            }
            for (_, forms) in args.section("equivalent") {
                for f in forms {
                    for eq in env.exprs(f)? {
                        env.add(
                            f.pos,
                            Axiom::EquivalentClasses {
                                operands: vec![class.clone().into(), eq],
                            },
                        )?;
                    }
                }
            }
            if let Some(f) = args.one("comment")? {
                let text = string(f)?.to_owned();
                env.add(
                    f.pos,
                    Axiom::AnnotationAssertion {
                        subject: class,
                        property: vocab::comment(),
                        value: AnnotationValue::Literal(text),
                    },
                )?;
            }
            Ok(())
        }
        "defoproperty" => {
            let args = Args::split(head, form.pos, rest, &["domain", "range", "characteristic"])?;
            args.positional_exactly(1, "expects exactly one property name")?;
            let property = env.declare(args.name()?, EntityKind::ObjectProperty)?;
            for (_, forms) in args.section("domain") {
                for f in forms {
                    for d in env.exprs(f)? {
                        env.add(
                            f.pos,
                            Axiom::ObjectPropertyDomain {
                                property: property.clone(),
                                domain: d,
                            },
                        )?;
                    }
                }
            }
            for (_, forms) in args.section("range") {
                for f in forms {
                    for r in env.exprs(f)? {
                        env.add(
                            f.pos,
                            Axiom::ObjectPropertyRange {
                                property: property.clone(),
                                range: r,
                            },
                        )?;
                    }
                }
            }
            for (_, forms) in args.section("characteristic") {
                for f in forms {
                    match f.as_symbol() {
                        Some("functional") => env.add(
                            f.pos,
                            Axiom::FunctionalObjectProperty {
                                property: property.clone(),
                            },
                        )?,
                        _ => {
                            return Err(DslError::new(
                                f.pos,
                                DslErrorKind::Unexpected {
                                    expected: "`functional`".into(),
                                    found: f.to_string(),
                                },
                            ))
                        }
                    }
                }
            }
            Ok(())
        }
        "deftier" | "defpartition" => {
            let args = Args::split(head, form.pos, rest, TIER_OPTIONS)?;
            let (spec, pos) = tier_spec(env, &args)?;
            let result = if head == "deftier" {
                deftier(&mut env.ontology, &mut env.registry, &spec)
            } else {
                defpartition(&mut env.ontology, &mut env.registry, &spec)
            }
            .map_err(|e| DslError::new(pos, e.into()))?;
            env.bind_iri(EntityKind::Class, &result.tier_class);
            for v in &result.value_classes {
                env.bind_iri(EntityKind::Class, v);
            }
            if let Some(p) = &result.property {
                env.bind_iri(EntityKind::ObjectProperty, p);
            }
            Ok(())
        }
        "as-facet" => {
            let Some((p, classes)) = rest.split_first() else {
                return Err(arity(
                    form.pos,
                    head,
                    "expects a property and at least one class",
                ));
            };
            if classes.is_empty() {
                return Err(arity(
                    form.pos,
                    head,
                    "expects a property and at least one class",
                ));
            }
            let property = env.resolve(p, EntityKind::ObjectProperty)?;
            let classes = classes
                .iter()
                .map(|c| env.resolve(c, EntityKind::Class))
                .collect::<Result<Vec<_>>>()?;
            as_facet(&mut env.ontology, &mut env.registry, &property, &classes)
                .map_err(|e| DslError::new(form.pos, e.into()))
        }
        "defgem" => {
            let args = Args::split(
                head,
                form.pos,
                rest,
                &["comment", "facet", "super", "defined"],
            )?;
            args.positional_exactly(1, "expects exactly one gem name")?;
            let name_form = args.name()?;
            let mut spec = GemSpec::new(symbol(name_form)?, []);
            for (_, forms) in args.section("facet") {
                for f in forms {
                    spec.facets.push(env.resolve(f, EntityKind::Class)?);
                }
            }
            if let Some(f) = args.one("comment")? {
                spec.comment = Some(string(f)?.to_owned());
            }
            for (_, forms) in args.section("super") {
                for f in forms {
                    spec.extra_supers.extend(env.exprs(f)?);
                }
            }
            spec.defined = args.flag("defined")?.unwrap_or(false);
            let gem = defgem(&mut env.ontology, &env.registry, &spec)
                .map_err(|e| DslError::new(name_form.pos, e.into()))?;
            env.bind_iri(EntityKind::Class, &gem);
            Ok(())
        }
        other => Err(DslError::new(
            head_form.pos,
            DslErrorKind::UnknownHead(other.to_owned()),
        )),
    }
}

fn eval_ontology_header(form: &Form) -> Result<EvalEnv> {
    let head_is = |items: &[Form]| items.first().and_then(Form::as_symbol) == Some("defontology");
    let items = match &form.kind {
        FormKind::List(items) if head_is(items) => items,
        _ => return Err(DslError::new(form.pos, DslErrorKind::MissingOntology)),
    };
    let args = Args::split("defontology", form.pos, &items[1..], &["iri", "prefix"])?;
    args.positional_exactly(1, "expects exactly one ontology name")?;
    let name_form = args.name()?;
    let name = symbol(name_form)?;
    let prefix = match args.one("prefix")? {
        None => "o".to_owned(),
        Some(f) => match &f.kind {
            FormKind::Symbol(s) | FormKind::Str(s) => s.clone(),
            _ => {
                return Err(DslError::new(
                    f.pos,
                    DslErrorKind::Unexpected {
                        expected: "a prefix name".into(),
                        found: f.describe().into(),
                    },
                ))
            }
        },
    };
    let iri = Iri::new(&prefix, name).map_err(|e| at(name_form.pos, e))?;
    let mut ontology = Ontology::new(iri, &prefix).map_err(|e| at(form.pos, e))?;
    if let Some(f) = args.one("iri")? {
        ontology
            .set_prefix(&prefix, string(f)?)
            .map_err(|e| at(f.pos, e))?;
    }
    Ok(EvalEnv {
        ontology,
        registry: FacetRegistry::new(),
        bindings: HashMap::new(),
    })
}

/// Evaluates `forms` top to bottom, attributing new axioms to each form.
pub fn evaluate(forms: &[Form]) -> Result<Evaluation> {
    let Some((first, rest)) = forms.split_first() else {
        return Err(DslError::new(
            Pos { line: 1, col: 1 },
            DslErrorKind::MissingOntology,
        ));
    };
    let mut env = eval_ontology_header(first)?;
    let mut trace = Vec::with_capacity(rest.len());
    for form in rest {
        let before = env.ontology.axiom_count();
        eval_definition(&mut env, form)?;
        trace.push(TraceEntry {
            form: form.clone(),
            axioms: env.ontology.axioms()[before..].to_vec(),
        });
    }
    Ok(Evaluation {
        ontology: env.ontology,
        registry: env.registry,
        trace,
    })
}

pub fn eval_program(forms: &[Form]) -> Result<Ontology> {
    evaluate(forms).map(|e| e.ontology)
}

pub fn expand_trace(forms: &[Form]) -> Result<Vec<TraceEntry>> {
    evaluate(forms).map(|e| e.trace)
}

/// Parses and evaluates source text.
pub fn compile_str(text: &str) -> Result<Evaluation> {
    let forms = parse(text)?;
    evaluate(&forms)
}
