//! Finite presented categories, functors, and discrete fibrations.
//!
//! Composition tables are explicit and must be closed; every axiom check is a
//! finite enumeration that returns a [`Report`] of violations instead of
//! failing.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finset::{pair_id, FinFn, FinSet};
use crate::report::Report;

/// A finite category given by explicit object, morphism, and composition
/// tables. `comp` is keyed `(g, f)` for the composite `g ∘ f` and must be
/// defined exactly on the composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: FinSet,
    pub morphisms: FinSet,
    pub dom: FinFn,
    pub cod: FinFn,
    pub id: FinFn,
    pub comp: BTreeMap<(String, String), String>,
}

impl FinCategory {
    /// Shape validation only: tables total and well-typed. Axioms are the
    /// business of [`check_category`].
    pub fn new(
        objects: FinSet,
        morphisms: FinSet,
        dom: FinFn,
        cod: FinFn,
        id: FinFn,
        comp: BTreeMap<(String, String), String>,
    ) -> Result<Self> {
        if dom.dom() != &morphisms || dom.cod() != &objects {
            return Err(Error::Malformed("dom is not morphisms→objects".into()));
        }
        if cod.dom() != &morphisms || cod.cod() != &objects {
            return Err(Error::Malformed("cod is not morphisms→objects".into()));
        }
        if id.dom() != &objects || id.cod() != &morphisms {
            return Err(Error::Malformed("id is not objects→morphisms".into()));
        }
        for ((g, f), gf) in &comp {
            if !morphisms.contains(g) || !morphisms.contains(f) || !morphisms.contains(gf) {
                return Err(Error::Malformed(format!(
                    "composition entry ({g},{f})={gf} mentions an unknown morphism"
                )));
            }
        }
        Ok(FinCategory { objects, morphisms, dom, cod, id, comp })
    }

    /// `g ∘ f` if present in the table.
    pub fn compose(&self, g: &str, f: &str) -> Option<&str> {
        self.comp.get(&(g.to_string(), f.to_string())).map(|s| s.as_str())
    }

    pub fn id_of(&self, x: &str) -> &str {
        self.id.apply(x)
    }

    /// Composable pairs `(g, f)` with `cod(f) = dom(g)`, in morphism order.
    pub fn composable_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        for g in self.morphisms.iter() {
            for f in self.morphisms.iter() {
                if self.cod.apply(f) == self.dom.apply(g) {
                    pairs.push((g.clone(), f.clone()));
                }
            }
        }
        pairs
    }
}

/// The one-object one-morphism category.
pub fn terminal_category() -> FinCategory {
    let objects = FinSet::of(&["*"]);
    let morphisms = FinSet::of(&["id_*"]);
    FinCategory::new(
        objects.clone(),
        morphisms.clone(),
        FinFn::from_fn(morphisms.clone(), objects.clone(), |_| "*".into()).unwrap(),
        FinFn::from_fn(morphisms.clone(), objects.clone(), |_| "*".into()).unwrap(),
        FinFn::from_fn(objects, morphisms, |_| "id_*".into()).unwrap(),
        [(("id_*".to_string(), "id_*".to_string()), "id_*".to_string())].into(),
    )
    .unwrap()
}

/// Discrete category on a set: only identity morphisms.
pub fn discrete_category(objects: &FinSet) -> FinCategory {
    let morphisms = FinSet::new(objects.iter().map(|x| format!("id_{x}")).collect()).unwrap();
    let strip = |m: &str| m.strip_prefix("id_").unwrap().to_string();
    FinCategory::new(
        objects.clone(),
        morphisms.clone(),
        FinFn::from_fn(morphisms.clone(), objects.clone(), strip).unwrap(),
        FinFn::from_fn(morphisms.clone(), objects.clone(), strip).unwrap(),
        FinFn::from_fn(objects.clone(), morphisms.clone(), |x| format!("id_{x}")).unwrap(),
        morphisms
            .iter()
            .map(|m| ((m.clone(), m.clone()), m.clone()))
            .collect(),
    )
    .unwrap()
}

pub fn check_category(c: &FinCategory) -> Report {
    let mut report = Report::ok();
    for x in c.objects.iter() {
        let i = c.id.apply(x);
        if c.dom.apply(i) != x || c.cod.apply(i) != x {
            report.push("category.identity-endpoints", format!("id of {x} is {i}"));
        }
    }
    // The table must be defined on exactly the composable pairs.
    let composable: std::collections::BTreeSet<(String, String)> =
        c.composable_pairs().into_iter().collect();
    for key in composable.iter() {
        if !c.comp.contains_key(key) {
            report.push(
                "category.composability",
                format!("missing composite for ({},{})", key.0, key.1),
            );
        }
    }
    for ((g, f), gf) in &c.comp {
        if !composable.contains(&(g.clone(), f.clone())) {
            report.push("category.composability", format!("({g},{f}) is not composable"));
            continue;
        }
        if c.dom.apply(gf) != c.dom.apply(f) || c.cod.apply(gf) != c.cod.apply(g) {
            report.push(
                "category.composite-endpoints",
                format!("({g},{f}) = {gf} has the wrong boundary"),
            );
        }
    }
    for f in c.morphisms.iter() {
        let lid = c.id.apply(c.cod.apply(f));
        if c.compose(lid, f) != Some(f.as_str()) {
            report.push("category.unit", format!("id∘{f}"));
        }
        let rid = c.id.apply(c.dom.apply(f));
        if c.compose(f, rid) != Some(f.as_str()) {
            report.push("category.unit", format!("{f}∘id"));
        }
    }
    for h in c.morphisms.iter() {
        for g in c.morphisms.iter() {
            if c.cod.apply(g) != c.dom.apply(h) {
                continue;
            }
            for f in c.morphisms.iter() {
                if c.cod.apply(f) != c.dom.apply(g) {
                    continue;
                }
                let left = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                let right = c.compose(g, f).and_then(|gf| c.compose(h, gf));
                if left != right || left.is_none() {
                    report.push("category.assoc", format!("({h},{g},{f})"));
                }
            }
        }
    }
    report
}

/// A functor between finite categories, as two element tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub src: FinCategory,
    pub tgt: FinCategory,
    pub on_objects: FinFn,
    pub on_morphisms: FinFn,
}

impl FinFunctor {
    pub fn new(src: FinCategory, tgt: FinCategory, on_objects: FinFn, on_morphisms: FinFn) -> Result<Self> {
        if on_objects.dom() != &src.objects || on_objects.cod() != &tgt.objects {
            return Err(Error::Malformed("object part has the wrong boundary".into()));
        }
        if on_morphisms.dom() != &src.morphisms || on_morphisms.cod() != &tgt.morphisms {
            return Err(Error::Malformed("morphism part has the wrong boundary".into()));
        }
        Ok(FinFunctor { src, tgt, on_objects, on_morphisms })
    }

    pub fn identity(c: &FinCategory) -> Self {
        FinFunctor {
            src: c.clone(),
            tgt: c.clone(),
            on_objects: FinFn::identity(&c.objects),
            on_morphisms: FinFn::identity(&c.morphisms),
        }
    }

    /// The unique functor into the terminal category.
    pub fn to_terminal(c: &FinCategory) -> Self {
        let t = terminal_category();
        FinFunctor {
            src: c.clone(),
            tgt: t.clone(),
            on_objects: FinFn::from_fn(c.objects.clone(), t.objects.clone(), |_| "*".into()).unwrap(),
            on_morphisms: FinFn::from_fn(c.morphisms.clone(), t.morphisms.clone(), |_| "id_*".into())
                .unwrap(),
        }
    }

    pub fn ob(&self, x: &str) -> &str {
        self.on_objects.apply(x)
    }

    pub fn mor(&self, f: &str) -> &str {
        self.on_morphisms.apply(f)
    }
}

/// Composite `g ∘ f` of functors: first `f`, then `g`.
pub fn compose_functors(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor> {
    if f.tgt != g.src {
        return Err(Error::CompositionMismatch(
            "codomain category of first functor differs from domain of second".into(),
        ));
    }
    FinFunctor::new(
        f.src.clone(),
        g.tgt.clone(),
        crate::finset::compose_fn(&g.on_objects, &f.on_objects)?,
        crate::finset::compose_fn(&g.on_morphisms, &f.on_morphisms)?,
    )
}

pub fn check_functor(ff: &FinFunctor) -> Report {
    let mut report = Report::ok();
    for f in ff.src.morphisms.iter() {
        if ff.tgt.dom.apply(ff.mor(f)) != ff.ob(ff.src.dom.apply(f)) {
            report.push("functor.dom", f.clone());
        }
        if ff.tgt.cod.apply(ff.mor(f)) != ff.ob(ff.src.cod.apply(f)) {
            report.push("functor.cod", f.clone());
        }
    }
    for x in ff.src.objects.iter() {
        if ff.mor(ff.src.id.apply(x)) != ff.tgt.id.apply(ff.ob(x)) {
            report.push("functor.id", x.clone());
        }
    }
    for ((g, f), gf) in &ff.src.comp {
        match ff.tgt.compose(ff.mor(g), ff.mor(f)) {
            Some(img) if img == ff.mor(gf) => {}
            _ => report.push("functor.comp", format!("({g},{f})")),
        }
    }
    report
}

/// Discrete-fibration check by lift counting: for each object `Y` upstairs and
/// base morphism `f` ending at its image, exactly one morphism with codomain
/// `Y` maps to `f`.
pub fn is_discrete_fibration(ff: &FinFunctor) -> Report {
    let mut report = Report::ok();
    for y in ff.src.objects.iter() {
        let fy = ff.ob(y);
        for f in ff.tgt.morphisms.iter() {
            if ff.tgt.cod.apply(f) != fy {
                continue;
            }
            let count = ff
                .src
                .morphisms
                .iter()
                .filter(|e| ff.src.cod.apply(e) == y && ff.mor(e) == f)
                .count();
            if count != 1 {
                report.push("dfib.unique-lift", format!("({y},{f}) has {count} lifts"));
            }
        }
    }
    report
}

/// The same property stated as a set-level pullback square: morphisms
/// upstairs correspond bijectively to pairs (base morphism, object over its
/// codomain). Must agree with [`is_discrete_fibration`] everywhere.
pub fn is_discrete_fibration_via_pullback(ff: &FinFunctor) -> Result<bool> {
    let (p, p0, p1) = crate::finset::pullback(&ff.tgt.cod, &ff.on_objects)?;
    // e ↦ (F(e), cod(e)) must be a bijection onto the pullback vertex.
    let mediating = FinFn::from_fn(ff.src.morphisms.clone(), p.clone(), |e| {
        pair_id(ff.mor(e), ff.src.cod.apply(e))
    });
    let mediating = match mediating {
        Ok(m) => m,
        Err(_) => return Ok(false),
    };
    if !mediating.is_bijection() {
        return Ok(false);
    }
    for e in ff.src.morphisms.iter() {
        let v = mediating.apply(e);
        if p0.apply(v) != ff.mor(e) || p1.apply(v) != ff.src.cod.apply(e) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique morphism with codomain `y` over `f`.
pub fn unique_lift(ff: &FinFunctor, y: &str, f: &str) -> Result<String> {
    let candidates: Vec<&String> = ff
        .src
        .morphisms
        .iter()
        .filter(|e| ff.src.cod.apply(e) == y && ff.mor(e) == f)
        .collect();
    match candidates.as_slice() {
        [e] => Ok((*e).clone()),
        other => Err(Error::NotAFibration(format!(
            "({y},{f}) has {} lifts",
            other.len()
        ))),
    }
}

/// Objects of the source mapping to `b`.
pub fn fiber_objects(ff: &FinFunctor, b: &str) -> Result<FinSet> {
    if !ff.tgt.objects.contains(b) {
        return Err(Error::InvalidObject(b.to_string()));
    }
    FinSet::new(
        ff.src
            .objects
            .iter()
            .filter(|x| ff.ob(x) == b)
            .cloned()
            .collect(),
    )
}

/// The subcategory over `b`: objects over `b`, morphisms over `id_b`.
pub fn fiber_category(ff: &FinFunctor, b: &str) -> Result<FinCategory> {
    let objects = fiber_objects(ff, b)?;
    let base_id = ff.tgt.id.apply(b).to_string();
    let morphisms = FinSet::new(
        ff.src
            .morphisms
            .iter()
            .filter(|e| ff.mor(e) == base_id)
            .cloned()
            .collect(),
    )?;
    let dom = FinFn::from_fn(morphisms.clone(), objects.clone(), |e| {
        ff.src.dom.apply(e).to_string()
    })?;
    let cod = FinFn::from_fn(morphisms.clone(), objects.clone(), |e| {
        ff.src.cod.apply(e).to_string()
    })?;
    let id = FinFn::from_fn(objects.clone(), morphisms.clone(), |x| {
        ff.src.id.apply(x).to_string()
    })?;
    let comp = ff
        .src
        .comp
        .iter()
        .filter(|((g, f), _)| morphisms.contains(g) && morphisms.contains(f))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    FinCategory::new(objects, morphisms, dom, cod, id, comp)
}

/// Canonical pullback of categories along a cospan `F : A → C ← B : G`,
/// with matched pairs as objects/morphisms and the two projections.
pub fn pullback_category(
    f: &FinFunctor,
    g: &FinFunctor,
) -> Result<(FinCategory, FinFunctor, FinFunctor)> {
    if f.tgt != g.tgt {
        return Err(Error::CompositionMismatch(
            "pullback of categories needs a common codomain".into(),
        ));
    }
    let (objects, ob_p0, ob_p1) = crate::finset::pullback(&f.on_objects, &g.on_objects)?;
    let (morphisms, mor_p0, mor_p1) = crate::finset::pullback(&f.on_morphisms, &g.on_morphisms)?;
    let dom = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| {
        pair_id(
            f.src.dom.apply(mor_p0.apply(m)),
            g.src.dom.apply(mor_p1.apply(m)),
        )
    })?;
    let cod = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| {
        pair_id(
            f.src.cod.apply(mor_p0.apply(m)),
            g.src.cod.apply(mor_p1.apply(m)),
        )
    })?;
    let id = FinFn::from_fn(objects.clone(), morphisms.clone(), |x| {
        pair_id(
            f.src.id.apply(ob_p0.apply(x)),
            g.src.id.apply(ob_p1.apply(x)),
        )
    })?;
    let mut comp = BTreeMap::new();
    for h in morphisms.iter() {
        for k in morphisms.iter() {
            if cod.apply(k) != dom.apply(h) {
                continue;
            }
            let left = f.src.compose(mor_p0.apply(h), mor_p0.apply(k));
            let right = g.src.compose(mor_p1.apply(h), mor_p1.apply(k));
            if let (Some(l), Some(r)) = (left, right) {
                comp.insert((h.clone(), k.clone()), pair_id(l, r));
            }
        }
    }
    let cat = FinCategory::new(objects.clone(), morphisms.clone(), dom, cod, id, comp)?;
    let p0 = FinFunctor::new(
        cat.clone(),
        f.src.clone(),
        FinFn::new(objects.clone(), f.src.objects.clone(), ob_p0.table().clone())?,
        FinFn::new(morphisms.clone(), f.src.morphisms.clone(), mor_p0.table().clone())?,
    )?;
    let p1 = FinFunctor::new(
        cat,
        g.src.clone(),
        FinFn::new(objects, g.src.objects.clone(), ob_p1.table().clone())?,
        FinFn::new(morphisms, g.src.morphisms.clone(), mor_p1.table().clone())?,
    )?;
    Ok((p0.src.clone(), p0, p1))
}
