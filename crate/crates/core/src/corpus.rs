//! Fixed small instances used by the test suites and the demo command.
//!
//! Everything here is a concrete presentation; builders elsewhere are generic.

use std::collections::BTreeMap;

use crate::cat::{FinCategory, FinFunctor};
use crate::finset::{FinFn, FinSet};

/// Build a category from object names, identity names `id_of[i]` matching
/// `objects[i]`, non-identity morphisms `(name, dom, cod)`, and the table of
/// composites of non-identity pairs. Unit composites are filled in.
pub fn presented_category(
    objects: &[&str],
    ids: &[&str],
    arrows: &[(&str, &str, &str)],
    composites: &[(&str, &str, &str)],
) -> FinCategory {
    assert_eq!(objects.len(), ids.len());
    let object_set = FinSet::of(objects);
    let mut names: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    names.extend(arrows.iter().map(|(n, _, _)| n.to_string()));
    let morphisms = FinSet::new(names).unwrap();
    let mut dom: BTreeMap<String, String> = BTreeMap::new();
    let mut cod: BTreeMap<String, String> = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        dom.insert(id.to_string(), objects[i].to_string());
        cod.insert(id.to_string(), objects[i].to_string());
    }
    for (n, d, c) in arrows {
        dom.insert(n.to_string(), d.to_string());
        cod.insert(n.to_string(), c.to_string());
    }
    let dom = FinFn::new(morphisms.clone(), object_set.clone(), dom).unwrap();
    let cod = FinFn::new(morphisms.clone(), object_set.clone(), cod).unwrap();
    let id = FinFn::new(
        object_set.clone(),
        morphisms.clone(),
        objects
            .iter()
            .zip(ids)
            .map(|(o, i)| (o.to_string(), i.to_string()))
            .collect(),
    )
    .unwrap();
    let is_id = |m: &str| ids.contains(&m);
    let mut comp = BTreeMap::new();
    for g in morphisms.iter() {
        for f in morphisms.iter() {
            if cod.apply(f) != dom.apply(g) {
                continue;
            }
            let value = if is_id(g) {
                f.clone()
            } else if is_id(f) {
                g.clone()
            } else {
                composites
                    .iter()
                    .find(|(gg, ff, _)| gg == g && ff == f)
                    .unwrap_or_else(|| panic!("missing composite ({g},{f})"))
                    .2
                    .to_string()
            };
            comp.insert((g.clone(), f.clone()), value);
        }
    }
    FinCategory::new(object_set, morphisms, dom, cod, id, comp).unwrap()
}

/// The walking arrow: objects X, Y and one morphism f : X → Y.
pub fn c2() -> FinCategory {
    presented_category(&["X", "Y"], &["idX", "idY"], &[("f", "X", "Y")], &[])
}

/// The composable pair: X → Y → Z with composite gf.
pub fn c3() -> FinCategory {
    presented_category(
        &["X", "Y", "Z"],
        &["idX", "idY", "idZ"],
        &[("f", "X", "Y"), ("g", "Y", "Z"), ("gf", "X", "Z")],
        &[("g", "f", "gf")],
    )
}

/// The two-element group as a one-object category.
pub fn z2_monoid() -> FinCategory {
    presented_category(&["*"], &["e"], &[("s", "*", "*")], &[("s", "s", "e")])
}

/// The commuting square poset: bottom ≤ both middles ≤ top.
pub fn square_poset() -> FinCategory {
    presented_category(
        &["00", "01", "10", "11"],
        &["i00", "i01", "i10", "i11"],
        &[
            ("a", "00", "01"),
            ("b", "00", "10"),
            ("c", "01", "11"),
            ("d", "10", "11"),
            ("t", "00", "11"),
        ],
        &[("c", "a", "t"), ("d", "b", "t")],
    )
}

/// Discrete category on three objects.
pub fn discrete3() -> FinCategory {
    crate::cat::discrete_category(&FinSet::of(&["P", "Q", "R"]))
}

/// Two objects with a parallel pair of arrows between them; four morphisms
/// in total, nothing composes except with identities.
pub fn parallel_pair() -> FinCategory {
    presented_category(
        &["N0", "N1"],
        &["i0", "i1"],
        &[("s", "N0", "N1"), ("t", "N0", "N1")],
        &[],
    )
}

/// A non-associative one-object composition table: (a∘a)∘a = b∘a = b but
/// a∘(a∘a) = a∘b = e.
pub fn nonassociative_mutant() -> FinCategory {
    presented_category(
        &["*"],
        &["e"],
        &[("a", "*", "*"), ("b", "*", "*")],
        &[
            ("a", "a", "b"),
            ("a", "b", "e"),
            ("b", "a", "b"),
            ("b", "b", "b"),
        ],
    )
}

/// Domain projection from the category of elements of the presheaf on
/// [`c2`] with sections {x1,x2} over X, {y1} over Y, restriction y1 ↦ x1.
/// A discrete fibration.
pub fn elements_projection_c2() -> FinFunctor {
    let total = presented_category(
        &["(X,x1)", "(X,x2)", "(Y,y1)"],
        &["id(X,x1)", "id(X,x2)", "id(Y,y1)"],
        &[("(f,y1)", "(X,x1)", "(Y,y1)")],
        &[],
    );
    let base = c2();
    let on_objects = FinFn::new(
        total.objects.clone(),
        base.objects.clone(),
        [
            ("(X,x1)".to_string(), "X".to_string()),
            ("(X,x2)".to_string(), "X".to_string()),
            ("(Y,y1)".to_string(), "Y".to_string()),
        ]
        .into(),
    )
    .unwrap();
    let on_morphisms = FinFn::new(
        total.morphisms.clone(),
        base.morphisms.clone(),
        [
            ("id(X,x1)".to_string(), "idX".to_string()),
            ("id(X,x2)".to_string(), "idX".to_string()),
            ("id(Y,y1)".to_string(), "idY".to_string()),
            ("(f,y1)".to_string(), "f".to_string()),
        ]
        .into(),
    )
    .unwrap();
    FinFunctor::new(total, base, on_objects, on_morphisms).unwrap()
}

/// The double categories every suite exercises, with stable names.
pub fn corpus_bases() -> Vec<(String, crate::dbl::DoubleCategory)> {
    use crate::dbl::{terminal_double, vertical_double, walking_proarrow};
    vec![
        ("terminal".into(), terminal_double()),
        ("vertical_c2".into(), vertical_double(&c2())),
        ("vertical_parallel_pair".into(), vertical_double(&parallel_pair())),
        ("walking_proarrow".into(), walking_proarrow()),
    ]
}

/// Lax functors over a base: the terminal one, every representable, and on
/// the terminal base a few encoded categories.
pub fn corpus_lax_functors(b: &crate::dbl::DoubleCategory) -> Vec<crate::lax::LaxSpanFunctor> {
    use crate::dbl::terminal_double;
    use crate::lax::{representable, terminal_lax};
    let mut out = vec![terminal_lax(b)];
    for x in b.objects().iter() {
        out.push(representable(b, x).unwrap());
    }
    if b == &terminal_double() {
        for c in [c2(), c3(), z2_monoid(), square_poset(), discrete3()] {
            out.push(crate::equiv::lax_of_category(&c));
        }
    }
    out
}

/// Modules over a base: the unit module of every corpus lax functor.
pub fn corpus_modules(b: &crate::dbl::DoubleCategory) -> Vec<crate::modules::Module> {
    corpus_lax_functors(b)
        .iter()
        .map(crate::modules::unit_module)
        .collect()
}

/// Multimodulations over a base: for every corpus lax functor, the identity
/// (1-ary), the laxity (2-ary), and the unit laxity (nullary).
pub fn corpus_multimodulations(
    b: &crate::dbl::DoubleCategory,
) -> Vec<crate::modules::Multimodulation> {
    use crate::modules::{laxity_multimodulation, unit_module, unit_multimodulation, Multimodulation};
    let mut out = Vec::new();
    for f in corpus_lax_functors(b) {
        out.push(Multimodulation::identity(&unit_module(&f)));
        out.push(laxity_multimodulation(&f));
        out.push(unit_multimodulation(&f));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{check_category, check_functor};

    #[test]
    fn corpus_categories_are_valid() {
        for c in [c2(), c3(), z2_monoid(), square_poset(), discrete3()] {
            assert!(check_category(&c).is_ok(), "{}", check_category(&c));
        }
    }

    #[test]
    fn nonassociative_mutant_fails_assoc() {
        assert!(check_category(&nonassociative_mutant()).has_rule("category.assoc"));
    }

    #[test]
    fn elements_projection_is_a_functor() {
        assert!(check_functor(&elements_projection_c2()).is_ok());
    }
}
