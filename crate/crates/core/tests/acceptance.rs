//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use hypernorm::classifier::{check_against_oracle, classify, subsumes, Classifier};
use hypernorm::dsl::compile_str;
use hypernorm::exemplar::{
    build_exemplar, build_tiers, defined_class_choices, defined_class_name,
    generate_defined_classes, new_exemplar_ontology, AminoAcidRow, TIERS,
};
use hypernorm::model::{Axiom, ClassExpression, EntityKind, Iri, Ontology};
use hypernorm::patterns::{as_facet, deftier, facet, FacetRegistry, TierSpec};
use hypernorm::serializer::{render, RenderOptions};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn o(name: &str) -> Iri {
    Iri::new("o", name).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_serialization() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let start = Instant::now();
    for name in ["defclass_super", "size_partition"] {
        let program = std::fs::read_to_string(dir.join(format!("{name}.tawny"))).unwrap();
        let expected = std::fs::read_to_string(dir.join(format!("{name}.omn"))).unwrap();
        let eval = compile_str(&program).map_err(|e| format!("{name}: {e}"))?;
        let got = render(&eval.ontology, &RenderOptions::default());
        ensure(got == expected, || {
            format!("{name}: output differs:\n{got}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("2 listings byte-exact in {elapsed:?}"))
}

fn facet_equalities() -> Outcome {
    let mut ont = new_exemplar_ontology();
    let reg = build_tiers(&mut ont).map_err(|e| e.to_string())?;
    let some = |p: &str, v: &str| ClassExpression::some(o(p), o(v).into());
    let one = facet(&reg, &[o("Positive")]).map_err(|e| e.to_string())?;
    ensure(one == vec![some("hasCharge", "Positive")], || {
        format!("{one:?}")
    })?;
    let five = facet(
        &reg,
        &["Neutral", "Hydrophobic", "NonPolar", "Aliphatic", "Tiny"].map(o),
    )
    .map_err(|e| e.to_string())?;
    let expected = vec![
        some("hasCharge", "Neutral"),
        some("hasHydrophobicity", "Hydrophobic"),
        some("hasPolarity", "NonPolar"),
        some("hasSideChainStructure", "Aliphatic"),
        some("hasSize", "Tiny"),
    ];
    ensure(five == expected, || format!("{five:?}"))?;

    // The same through an explicit as-facet registration.
    let mut ont2 = Ontology::new(o("x"), "o").unwrap();
    let mut reg2 = FacetRegistry::new();
    let tier = TierSpec::new("Charge", ["Positive", "Neutral", "Negative"]);
    deftier(&mut ont2, &mut reg2, &tier).map_err(|e| e.to_string())?;
    let mut fresh = FacetRegistry::new();
    as_facet(
        &mut ont2,
        &mut fresh,
        &o("hasCharge"),
        &["Positive", "Neutral", "Negative"].map(o),
    )
    .map_err(|e| e.to_string())?;
    let again = facet(&fresh, &[o("Positive")]).map_err(|e| e.to_string())?;
    ensure(again == one, || format!("{again:?}"))?;
    Ok("single and five-facet expansions equal, in property order".into())
}

fn tier_suffix() -> Outcome {
    let program = "(defontology aa :prefix o)
(defclass AminoAcid)
(defclass PhysioChemicalProperty)
(deftier Charge
   [Positive Neutral Negative]
   :domain AminoAcid
   :super PhysioChemicalProperty
   :suffix true)
";
    let eval = compile_str(program).map_err(|e| e.to_string())?;
    let text = render(&eval.ontology, &RenderOptions::default());
    let frame = "Class: o:PositiveCharge\n    SubClassOf: \n        o:Charge\n";
    let frames: Vec<&str> = text.split("    \n").collect();
    ensure(frames.contains(&frame), || {
        format!("no such frame in:\n{text}")
    })?;
    ensure(eval.ontology.kind_of(&o("Positive")).is_none(), || {
        "unsuffixed class exists".into()
    })?;
    Ok("o:PositiveCharge frame present".into())
}

fn exemplar_scale() -> Outcome {
    let mut ont = new_exemplar_ontology();
    let reg = build_tiers(&mut ont).map_err(|e| e.to_string())?;
    let defined = generate_defined_classes(&mut ont, &reg).map_err(|e| e.to_string())?;
    let formula: usize = TIERS.iter().map(|(_, v)| v.len() + 1).product::<usize>() - 1;
    let equivalences = ont
        .axioms()
        .iter()
        .filter(|a| {
            matches!(a, Axiom::EquivalentClasses { operands }
                if matches!(operands.get(1), Some(ClassExpression::And { .. })))
        })
        .count();
    ensure(
        defined.len() == 431 && formula == 431 && equivalences == 431,
        || {
            format!(
                "{} classes, {equivalences} definitions, formula {formula}",
                defined.len()
            )
        },
    )?;
    Ok("431 defined classes (product of tier sizes plus one, minus one)".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let ex = build_exemplar(&[AminoAcidRow::alanine()]).map_err(|e| e.to_string())?;
    let report =
        check_against_oracle(&ex.ontology, &ex.registry, false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.passed(), || format!("{:?}", report.mismatches))?;
    ensure(report.skipped.is_empty() && !report.approximate, || {
        "incomplete check".into()
    })?;
    ensure(report.classes == ex.ontology.classes().count(), || {
        "classes missing".into()
    })?;
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} over {} classes, universe {}, in {elapsed:?}",
        report.summary(),
        report.classes,
        report.universe_size
    ))
}

fn alanine_classification() -> Outcome {
    let alanine = AminoAcidRow::alanine();
    let ex = build_exemplar(std::slice::from_ref(&alanine)).map_err(|e| e.to_string())?;
    let dag = classify(&ex.ontology, &ex.registry, false).map_err(|e| e.to_string())?;
    let defined: BTreeSet<&Iri> = ex.defined.iter().collect();
    let a = o("Alanine");
    let above: Vec<Iri> = dag
        .ancestors(&a)
        .into_iter()
        .filter(|c| defined.contains(c))
        .collect();
    let values: BTreeSet<&str> = alanine.values().into_iter().collect();
    let expected: BTreeSet<Iri> = defined_class_choices()
        .into_iter()
        .filter(|c| c.iter().all(|v| values.contains(v)))
        .map(|c| o(&defined_class_name(&c)))
        .collect();
    ensure(
        above.len() == 31 && above.iter().cloned().collect::<BTreeSet<_>>() == expected,
        || format!("{} defined ancestors", above.len()),
    )?;
    let direct: Vec<&Iri> = dag
        .direct_supers(&a)
        .iter()
        .filter(|c| defined.contains(c))
        .collect();
    ensure(
        direct == [&o("TinyNeutralHydrophobicNonPolarAliphaticAminoAcid")],
        || format!("direct defined supers {direct:?}"),
    )?;
    let chains = [
        ("SmallNeutralAliphaticAminoAcid", "SmallNeutralAminoAcid"),
        ("SmallNeutralAminoAcid", "SmallAminoAcid"),
        ("SmallNeutralAminoAcid", "NeutralAminoAcid"),
        ("SmallAminoAcid", "AminoAcid"),
    ];
    for (sub, sup) in chains {
        ensure(dag.is_subsumed_by(&o(sub), &o(sup)), || {
            format!("{sub} not below {sup}")
        })?;
    }
    ensure(
        !dag.is_subsumed_by(&o("SmallAminoAcid"), &o("TinyAminoAcid")),
        || "Small below Tiny".into(),
    )?;
    Ok("31 defined supers, 1 direct; SmallNeutral chains reachable".into())
}

fn randomized_properties() -> Outcome {
    let cases = 200;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&common::recipe(), |r| {
            let built = common::build(&r);
            let fail = |m: String| TestCaseError::fail(m);
            let dag = classify(&built.ontology, &built.registry, false)
                .map_err(|e| fail(e.to_string()))?;
            let all: Vec<Iri> = built.ontology.classes().cloned().collect();
            let model = common::ModelChecker::new(&built, &all);
            for sub in &all {
                for sup in &all {
                    if dag.is_subsumed_by(sub, sup) != model.subsumes(sup, sub) {
                        return Err(fail(format!("{sub} / {sup}")));
                    }
                }
            }
            let report = check_against_oracle(&built.ontology, &built.registry, true)
                .map_err(|e| fail(e.to_string()))?;
            if !report.passed() {
                return Err(fail(format!("{:?}", report.mismatches)));
            }

            let classifier = Classifier::new(&built.ontology, &built.registry)
                .map_err(|e| fail(e.to_string()))?;
            let (inside, _) = classifier.all_constraints();
            let n = inside.len();
            let rel: Vec<Vec<bool>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| subsumes(&inside[a].1.sufficient, &inside[b].1.necessary).unwrap())
                        .collect()
                })
                .collect();
            for a in 0..n {
                if !rel[a][a] {
                    return Err(fail(format!("{} not reflexive", inside[a].0)));
                }
                for b in 0..n {
                    for c in 0..n {
                        if rel[a][b] && rel[b][c] && !rel[a][c] {
                            return Err(fail("not transitive".into()));
                        }
                    }
                }
            }

            // Adding a restriction to the first defined class never adds
            // satisfiable subsumees.
            if let Some(t) = r.classes.iter().position(|c| c.defined) {
                let filler = common::FillerRecipe::Value(0);
                let after = common::build_with(&r, Some((t, 0, &filler)));
                let dag_after = classify(&after.ontology, &after.registry, false)
                    .map_err(|e| fail(e.to_string()))?;
                let x = &built.user[t];
                for c in &all {
                    if dag_after.is_subsumed_by(c, x)
                        && !dag_after.unsatisfiable().contains(c)
                        && !dag.is_subsumed_by(c, x)
                    {
                        return Err(fail(format!("{c} became a subsumee of {x}")));
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "{cases} random ontologies: model checker, oracle, preorder, monotonicity"
    ))
}

fn hypernormalisation_census() -> Outcome {
    let ex = build_exemplar(&[AminoAcidRow::alanine()]).map_err(|e| e.to_string())?;
    let ont = &ex.ontology;
    let domain = o("AminoAcid");
    let mut checked = 0;
    for class in ont.classes() {
        for ax in ont.axioms() {
            if let Axiom::SubClassOf { sub, sup } = ax {
                if sub.as_named() == Some(class) {
                    if let Some(named) = sup.as_named() {
                        // Only the tier skeleton may assert named supers.
                        let tier_side = ex.registry.property_of(class).is_some()
                            || named.fragment() == "PhysioChemicalProperty";
                        ensure(tier_side, || format!("{class} asserted under {named}"))?;
                        ensure(*named != domain, || {
                            format!("{class} asserted under {domain}")
                        })?;
                    }
                }
            }
        }
        checked += 1;
    }
    for gem in &ex.gems {
        ensure(ont.kind_of(gem) == Some(EntityKind::Class), || {
            format!("{gem} missing")
        })?;
        let named_supers = ont
            .axioms_about(gem)
            .unwrap()
            .into_iter()
            .filter(|a| matches!(a, Axiom::SubClassOf { sub, sup } if sub.as_named() == Some(gem) && sup.as_named().is_some()))
            .count();
        ensure(named_supers == 0, || format!("{gem} has named supers"))?;
    }
    Ok(format!(
        "{checked} classes checked, no asserted named hierarchy under AminoAcid"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden serialization", golden_serialization),
        ("facet equalities", facet_equalities),
        ("tier suffix", tier_suffix),
        ("exemplar scale", exemplar_scale),
        ("oracle equivalence", oracle_equivalence),
        ("alanine classification", alanine_classification),
        ("randomized fragment properties", randomized_properties),
        ("hypernormalisation census", hypernormalisation_census),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
