//! End-to-end acceptance checks. Each test prints one pass/fail line.

use std::collections::BTreeMap;

use ddf_core::cat::{check_category, check_functor, is_discrete_fibration, FinFunctor};
use ddf_core::corpus::{
    c2, c3, corpus_bases, corpus_lax_functors, corpus_modules, corpus_multimodulations,
    discrete3, elements_projection_c2, nonassociative_mutant, square_poset, z2_monoid,
};
use ddf_core::dbl::{check_double_category, terminal_double, vertical_double, DoubleFunctor};
use ddf_core::doc::{emit, parse, Document};
use ddf_core::elements::{el_functor, is_ddf, is_ddf_via_transpose, DdfCandidate};
use ddf_core::equiv::{
    el_module, el_multimodulation, epsilon_module, eta_module, f_of_multicell, f_of_profunctor,
    functor_of_lax, lax_of_category, lax_of_functor, verify_equivalence, EquivalenceCorpus,
};
use ddf_core::fiber::f_of_ddf;
use ddf_core::finset::{pair_id, FinFn};
use ddf_core::lax::{check_lax_functor, check_transformation, LaxTransformation};
use ddf_core::modules::{
    check_module, check_multimodulation, unit_module, Multimodulation,
};
use ddf_core::prof::{check_internal_profunctor, check_prof_multicell, unit_profunctor,
    ProfMulticell};
use ddf_core::Report;

fn finish(number: u32, name: &str, problems: Vec<String>) {
    if problems.is_empty() {
        println!("criterion {number} ({name}): PASS");
    } else {
        println!("criterion {number} ({name}): FAIL");
        panic!("criterion {number} ({name}):\n{}", problems.join("\n"));
    }
}

fn expect_clean(problems: &mut Vec<String>, context: &str, report: &Report) {
    if !report.is_ok() {
        problems.push(format!("{context}: {report}"));
    }
}

fn expect_rule(problems: &mut Vec<String>, context: &str, report: &Report, rule: &str) {
    if !report.has_rule(rule) {
        problems.push(format!("{context}: expected {rule}, got: {report}"));
    }
}

/// The inclusion of the walking arrow into the composable pair, packaged as
/// a transformation of the encoded categories over the point.
fn inclusion_transformation() -> LaxTransformation {
    let f = lax_of_category(&c2());
    let g = lax_of_category(&c3());
    let obj = FinFn::new(
        c2().objects.clone(),
        c3().objects.clone(),
        [("X".to_string(), "X".to_string()), ("Y".to_string(), "Y".to_string())].into(),
    )
    .unwrap();
    let pro = FinFn::new(
        c2().morphisms.clone(),
        c3().morphisms.clone(),
        [
            ("idX".to_string(), "idX".to_string()),
            ("idY".to_string(), "idY".to_string()),
            ("f".to_string(), "f".to_string()),
        ]
        .into(),
    )
    .unwrap();
    LaxTransformation {
        src: f,
        tgt: g,
        obj_comp: BTreeMap::from([("*".to_string(), obj)]),
        pro_comp: BTreeMap::from([("id_*".to_string(), pro)]),
    }
}

#[test]
fn criterion_1_validator_soundness() {
    let mut problems = Vec::new();
    for (name, b) in corpus_bases() {
        expect_clean(&mut problems, &name, &check_double_category(&b));
        for (i, f) in corpus_lax_functors(&b).iter().enumerate() {
            expect_clean(&mut problems, &format!("{name} lax #{i}"), &check_lax_functor(f));
        }
    }

    // Mutants: one broken axiom each, rejected with that axiom named.
    expect_rule(
        &mut problems,
        "nonassociative table",
        &check_category(&nonassociative_mutant()),
        "category.assoc",
    );
    let mut cat = c2();
    cat.comp.insert(("f".into(), "f".into()), "f".into());
    expect_rule(&mut problems, "stray composite", &check_category(&cat), "category.composability");
    let mut cat = c2();
    cat.comp.insert(("f".into(), "idX".into()), "idX".into());
    expect_rule(&mut problems, "broken unit composite", &check_category(&cat), "category.unit");
    let mut cat = c2();
    let mut table = cat.id.table().clone();
    table.insert("X".into(), "f".into());
    cat.id = FinFn::new(cat.objects.clone(), cat.morphisms.clone(), table).unwrap();
    expect_rule(
        &mut problems,
        "identity with wrong endpoints",
        &check_category(&cat),
        "category.identity-endpoints",
    );
    let mut p = elements_projection_c2();
    let mut table = p.on_morphisms.table().clone();
    table.insert("(f,y1)".into(), "idX".into());
    p.on_morphisms = FinFn::new(
        p.src.morphisms.clone(),
        p.tgt.morphisms.clone(),
        table,
    )
    .unwrap();
    expect_rule(&mut problems, "non-functorial map", &check_functor(&p), "functor.cod");
    expect_rule(
        &mut problems,
        "collapse functor is no fibration",
        &is_discrete_fibration(&FinFunctor::to_terminal(&c2())),
        "dfib.unique-lift",
    );
    let mut b = vertical_double(&c2());
    b.comp_pro.insert(("idX".into(), "f".into()), "idX".into());
    let report = check_double_category(&b);
    if !report.has_rule("double.unit-law") && !report.has_rule("double.extcomp-functor") {
        problems.push(format!("broken external composite: {report}"));
    }
    let mut f = lax_of_category(&z2_monoid());
    let unit = FinFn::new(
        f.f_ob("*").clone(),
        f.f_pro("id_*").vertex().clone(),
        [("*".to_string(), "s".to_string())].into(),
    )
    .unwrap();
    f.unit_lax.insert("*".into(), unit);
    expect_rule(&mut problems, "wrong unit laxity", &check_lax_functor(&f), "lax.unit");
    expect_rule(
        &mut problems,
        "nonassociative laxity",
        &check_lax_functor(&lax_of_category(&nonassociative_mutant())),
        "lax.assoc",
    );
    let mut t = LaxTransformation::identity(&lax_of_category(&c2()));
    let swapped = FinFn::new(
        c2().morphisms.clone(),
        c2().morphisms.clone(),
        [
            ("idX".to_string(), "f".to_string()),
            ("idY".to_string(), "idY".to_string()),
            ("f".to_string(), "idX".to_string()),
        ]
        .into(),
    )
    .unwrap();
    t.pro_comp.insert("id_*".into(), swapped);
    expect_rule(
        &mut problems,
        "component off the legs",
        &check_transformation(&t).unwrap(),
        "transf.legs",
    );
    let mut m = unit_module(&lax_of_category(&z2_monoid()));
    let key = m.left_act.keys().next().unwrap().clone();
    let act = m.left_act[&key].clone();
    let elems = act.cod().elements().to_vec();
    let bad = FinFn::from_fn(act.dom().clone(), act.cod().clone(), |p| {
        let v = act.apply(p);
        if v == elems[0] { elems[1].clone() } else { elems[0].clone() }
    })
    .unwrap();
    m.left_act.insert(key, bad);
    expect_rule(&mut problems, "swapped left action", &check_module(&m).unwrap(), "module.unit");
    // The transposed arrows double category of the walking arrow has a
    // non-identity arrow, so the collapse onto the point has two lifts.
    let p = DdfCandidate {
        proj: DoubleFunctor::to_terminal(&ddf_core::dbl::transpose(&vertical_double(&c2()))),
    };
    expect_rule(&mut problems, "non-fibration candidate", &is_ddf(&p), "ddf.unique-lift-f0");
    let mut mu = Multimodulation::identity(&unit_module(&lax_of_category(&c2())));
    let path = vec!["id_*".to_string()];
    let bad = FinFn::new(
        mu.components[&path].dom().clone(),
        mu.components[&path].cod().clone(),
        [
            ("idX".to_string(), "f".to_string()),
            ("idY".to_string(), "idY".to_string()),
            ("f".to_string(), "idX".to_string()),
        ]
        .into(),
    )
    .unwrap();
    mu.components.insert(path, bad);
    expect_rule(
        &mut problems,
        "component off the multimodulation legs",
        &check_multimodulation(&mu).unwrap(),
        "mmod.legs",
    );
    let el = el_functor(&lax_of_category(&c2())).unwrap();
    let mut prof = unit_profunctor(&el).unwrap();
    let first = prof.carrier.objects.elements()[0].clone();
    prof.left_act = FinFunctor::new(
        prof.left_act.src.clone(),
        prof.left_act.tgt.clone(),
        FinFn::from_fn(prof.left_act.on_objects.dom().clone(), prof.left_act.on_objects.cod().clone(), |_| first.clone())
            .unwrap(),
        prof.left_act.on_morphisms.clone(),
    )
    .unwrap();
    let report = check_internal_profunctor(&prof).unwrap();
    if report.is_ok() {
        problems.push("constant profunctor action was accepted".into());
    }

    finish(1, "validator soundness with named mutants", problems);
}

#[test]
fn criterion_2_projections_are_fibrations() {
    let mut problems = Vec::new();
    for (name, b) in corpus_bases() {
        for (i, f) in corpus_lax_functors(&b).iter().enumerate() {
            let el = el_functor(f).unwrap();
            let direct = is_ddf(&el);
            let transposed = is_ddf_via_transpose(&el);
            expect_clean(&mut problems, &format!("{name} #{i} direct"), &direct);
            expect_clean(&mut problems, &format!("{name} #{i} transpose"), &transposed);
            if direct.is_ok() != transposed.is_ok() {
                problems.push(format!("{name} #{i}: the two characterizations disagree"));
            }
        }
    }
    // The characterizations also agree on a failing candidate.
    let bad = DdfCandidate {
        proj: DoubleFunctor::to_terminal(&vertical_double(&c2())),
    };
    if is_ddf(&bad).is_ok() != is_ddf_via_transpose(&bad).is_ok() {
        problems.push("characterizations disagree on a non-fibration".into());
    }
    finish(2, "element projections are discrete double fibrations", problems);
}

#[test]
fn criterion_3_functor_equivalence() {
    let mut problems = Vec::new();
    for (name, b) in corpus_bases() {
        let mut corpus = EquivalenceCorpus::default();
        for f in corpus_lax_functors(&b) {
            corpus.transformations.push(LaxTransformation::identity(&f));
            corpus.ddfs.push(el_functor(&f).unwrap());
            corpus.functors.push(f);
        }
        if b == terminal_double() {
            corpus.transformations.push(inclusion_transformation());
        }
        let report = verify_equivalence(&b, &corpus);
        expect_clean(&mut problems, &name, &report);
    }
    finish(3, "unit and counit of the functor equivalence", problems);
}

#[test]
fn criterion_4_lax_over_point_is_cat() {
    let mut problems = Vec::new();
    for c in [c2(), c3(), z2_monoid(), square_poset(), discrete3()] {
        let f = lax_of_category(&c);
        expect_clean(&mut problems, "encoded category", &check_lax_functor(&f));
        match ddf_core::equiv::category_of_lax(&f) {
            Ok(back) if back == c => {}
            Ok(_) => problems.push("decode of encode differs".into()),
            Err(e) => problems.push(format!("decode failed: {e}")),
        }
    }
    if !check_lax_functor(&lax_of_category(&nonassociative_mutant())).has_rule("lax.assoc") {
        problems.push("non-associative table was not rejected".into());
    }
    finish(4, "lax functors on the point are categories", problems);
}

#[test]
fn criterion_5_slice_equivalence_over_c2() {
    let mut problems = Vec::new();
    let p = elements_projection_c2();
    let f = lax_of_functor(&p).unwrap();
    expect_clean(&mut problems, "encoded slice object", &check_lax_functor(&f));
    // Through the elements construction and back, then decoded to the slice.
    let back = f_of_ddf(&el_functor(&f).unwrap()).unwrap();
    let q = functor_of_lax(&back, &c2()).unwrap();
    // The expected object of the slice is the double renaming x ↦ (A,(A,x)).
    let r_ob = |x: &str| {
        let a = p.ob(x);
        pair_id(a, &pair_id(a, x))
    };
    let r_mor = |u: &str| {
        let m = p.mor(u);
        pair_id(m, &pair_id(m, u))
    };
    if q.src.objects.len() != p.src.objects.len() || q.src.morphisms.len() != p.src.morphisms.len()
    {
        problems.push("round trip changed cardinalities".into());
    }
    for x in p.src.objects.iter() {
        if !q.src.objects.contains(&r_ob(x)) || q.ob(&r_ob(x)) != p.ob(x) {
            problems.push(format!("object {x} did not round trip"));
        }
    }
    for u in p.src.morphisms.iter() {
        let ru = r_mor(u);
        if !q.src.morphisms.contains(&ru)
            || q.mor(&ru) != p.mor(u)
            || q.src.dom.apply(&ru) != r_ob(p.src.dom.apply(u))
            || q.src.cod.apply(&ru) != r_ob(p.src.cod.apply(u))
        {
            problems.push(format!("morphism {u} did not round trip"));
        }
    }
    for (g, h) in p.src.composable_pairs() {
        if q.src.compose(&r_mor(&g), &r_mor(&h)).unwrap()
            != r_mor(p.src.compose(&g, &h).unwrap())
        {
            problems.push(format!("composite ({g},{h}) did not round trip"));
        }
    }
    finish(5, "lax functors on the arrows double category are slice objects", problems);
}

#[test]
fn criterion_6_module_equivalence() {
    let mut problems = Vec::new();
    for (name, b) in corpus_bases() {
        let modules = corpus_modules(&b);
        let multimodulations = corpus_multimodulations(&b);
        if modules.len() < 3 {
            problems.push(format!("{name}: fewer than 3 modules"));
        }
        if multimodulations.len() < 3
            || !multimodulations.iter().any(|m| m.arity() == 2)
            || !multimodulations.iter().any(|m| m.arity() == 0)
        {
            problems.push(format!("{name}: multimodulation corpus too small"));
        }
        for (i, m) in modules.iter().enumerate() {
            let w = format!("{name} module #{i}");
            let elm = el_module(m).unwrap();
            expect_clean(&mut problems, &w, &check_internal_profunctor(&elm).unwrap());
            expect_clean(&mut problems, &w, &check_module(&f_of_profunctor(&elm).unwrap()).unwrap());
            let unit = eta_module(m).unwrap();
            expect_clean(&mut problems, &w, &check_multimodulation(&unit).unwrap());
            if unit.arity() != 1 || !unit.components.values().all(|c| c.is_bijection()) {
                problems.push(format!("{w}: unit is not an invertible 1-ary multimodulation"));
            }
            let counit = epsilon_module(&elm).unwrap();
            expect_clean(&mut problems, &w, &check_prof_multicell(&counit).unwrap());
            if counit.arity() != 1
                || !counit.mediating.on_objects.is_bijection()
                || !counit.mediating.on_morphisms.is_bijection()
            {
                problems.push(format!("{w}: counit is not an invertible 1-ary multicell"));
            }
        }
        for (i, mu) in multimodulations.iter().enumerate() {
            let w = format!("{name} multimodulation #{i}");
            let cell = el_multimodulation(mu).unwrap();
            expect_clean(&mut problems, &w, &check_prof_multicell(&cell).unwrap());
            expect_clean(
                &mut problems,
                &w,
                &check_multimodulation(&f_of_multicell(&cell).unwrap()).unwrap(),
            );
        }
        // Cell naturality and unit preservation, through the aggregate verifier.
        let mut corpus = EquivalenceCorpus::default();
        corpus.functors = corpus_lax_functors(&b);
        corpus.modules = modules;
        corpus.multimodulations = multimodulations;
        corpus.profunctors = corpus
            .functors
            .iter()
            .map(|f| unit_profunctor(&el_functor(f).unwrap()).unwrap())
            .collect();
        corpus.multicells = corpus.profunctors.iter().map(ProfMulticell::identity).collect();
        expect_clean(&mut problems, &name, &verify_equivalence(&b, &corpus));
        for f in &corpus.functors {
            if el_module(&unit_module(f)).unwrap()
                != unit_profunctor(&el_functor(f).unwrap()).unwrap()
            {
                problems.push(format!("{name}: unit preservation is not bit-exact"));
            }
        }
    }
    finish(6, "module and multimodulation equivalence", problems);
}

#[test]
fn criterion_7_counting_oracles() {
    let mut problems = Vec::new();
    for (name, b) in corpus_bases() {
        for (i, f) in corpus_lax_functors(&b).iter().enumerate() {
            let el = el_functor(f).unwrap();
            // Brute force: generate every expected name and match the sets
            // exactly in both directions.
            let mut expected_objects = 0usize;
            for a in b.objects().iter() {
                for x in f.f_ob(a).iter() {
                    expected_objects += 1;
                    if !el.total().d0.objects.contains(&pair_id(a, x)) {
                        problems.push(format!("{name} #{i}: missing object ({a},{x})"));
                    }
                }
            }
            if el.total().d0.objects.len() != expected_objects {
                problems.push(format!("{name} #{i}: object count mismatch"));
            }
            let mut expected_proarrows = 0usize;
            for m in b.proarrows().iter() {
                for s in f.f_pro(m).vertex().iter() {
                    expected_proarrows += 1;
                    if !el.total().d1.objects.contains(&pair_id(m, s)) {
                        problems.push(format!("{name} #{i}: missing proarrow ({m},{s})"));
                    }
                }
            }
            if el.total().d1.objects.len() != expected_proarrows {
                problems.push(format!("{name} #{i}: proarrow count mismatch"));
            }
        }
    }
    finish(7, "element counts match fiberwise sums", problems);
}

#[test]
fn criterion_8_determinism_and_round_trip() {
    let mut problems = Vec::new();
    for (name, b) in corpus_bases() {
        let mut doc = Document::default();
        doc.double_categories.insert(name.clone(), b.clone());
        for (i, f) in corpus_lax_functors(&b).into_iter().enumerate() {
            let p = el_functor(&f).unwrap();
            doc.profunctors
                .insert(format!("prof_{i}"), unit_profunctor(&p).unwrap());
            doc.ddfs.insert(format!("el_{i}"), p);
            doc.lax_functors.insert(format!("lax_{i}"), f);
        }
        for (i, m) in corpus_modules(&b).into_iter().enumerate() {
            doc.modules.insert(format!("module_{i}"), m);
        }
        for (i, mu) in corpus_multimodulations(&b).into_iter().enumerate() {
            doc.multimodulations.insert(format!("mm_{i}"), mu);
        }
        for (i, m) in doc.profunctors.clone().values().enumerate() {
            doc.multicells
                .insert(format!("cell_{i}"), ProfMulticell::identity(m));
        }
        let once = emit(&doc);
        let twice = emit(&doc);
        if once != twice {
            problems.push(format!("{name}: repeated emission differs"));
        }
        let canonical = emit(&parse(&once).unwrap());
        if emit(&parse(&canonical).unwrap()) != canonical {
            problems.push(format!("{name}: emission is not idempotent"));
        }
    }
    finish(8, "deterministic serialization and round trip", problems);
}
