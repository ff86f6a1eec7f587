//! Lax span-valued functors on a double category base, contravariant in the
//! internal direction, and their natural transformations.
//!
//! Contravariance is baked into the field types: an arrow `f : A → B` is sent
//! to a transition function `f* : FB → FA`, and a cell to a map of span
//! vertices against the cell's direction. The base itself is never reversed.

use std::collections::BTreeMap;

use crate::dbl::DoubleCategory;
use crate::error::{Error, Result};
use crate::finset::{compose_spans, pair_id, FinFn, FinSet, Span};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxSpanFunctor {
    pub base: DoubleCategory,
    /// `A ↦ FA`.
    pub on_object: BTreeMap<String, FinSet>,
    /// `f : A → B ↦ f* : FB → FA`.
    pub on_arrow: BTreeMap<String, FinFn>,
    /// `m : A ⇸ B ↦ Fm`, a span `FA ⇸ FB`.
    pub on_proarrow: BTreeMap<String, Span>,
    /// `θ : m ⇒ n ↦ θ* : vertex(Fn) → vertex(Fm)`, the middle component; the
    /// outer components are forced to be the transitions of the frame.
    pub on_cell: BTreeMap<String, FinFn>,
    /// `φ_A : FA → vertex(F u_A)`.
    pub unit_lax: BTreeMap<String, FinFn>,
    /// `(m,n) composable ↦ φ : vertex(Fm ; Fn) → vertex(F(n⊗m))` on canonical
    /// pullback pairs.
    pub comp_lax: BTreeMap<(String, String), FinFn>,
}

impl LaxSpanFunctor {
    pub fn f_ob(&self, a: &str) -> &FinSet {
        &self.on_object[a]
    }

    pub fn f_ar(&self, f: &str) -> &FinFn {
        &self.on_arrow[f]
    }

    pub fn f_pro(&self, m: &str) -> &Span {
        &self.on_proarrow[m]
    }

    pub fn f_cell(&self, th: &str) -> &FinFn {
        &self.on_cell[th]
    }

    pub fn phi(&self, a: &str) -> &FinFn {
        &self.unit_lax[a]
    }

    pub fn phi_comp(&self, m: &str, n: &str) -> &FinFn {
        &self.comp_lax[&(m.to_string(), n.to_string())]
    }

    /// `φ_{n,m}(s,t)` for a composable pair of vertex elements.
    pub fn apply_phi(&self, m: &str, n: &str, s: &str, t: &str) -> &str {
        self.phi_comp(m, n).apply(&pair_id(s, t))
    }
}

/// The lax functor sending every object to a point; valid on any base.
pub fn terminal_lax(base: &DoubleCategory) -> LaxSpanFunctor {
    let pt = FinSet::of(&["pt"]);
    let id_pt = FinFn::identity(&pt);
    let pt_span = Span::new(id_pt.clone(), id_pt.clone()).unwrap();
    let on_object = base.objects().iter().map(|a| (a.clone(), pt.clone())).collect();
    let on_arrow = base.arrows().iter().map(|f| (f.clone(), id_pt.clone())).collect();
    let on_proarrow = base
        .proarrows()
        .iter()
        .map(|m| (m.clone(), pt_span.clone()))
        .collect();
    let on_cell = base.cells().iter().map(|th| (th.clone(), id_pt.clone())).collect();
    let unit_lax = base.objects().iter().map(|a| (a.clone(), id_pt.clone())).collect();
    let pair = FinSet::of(&["(pt,pt)"]);
    let collapse = FinFn::from_fn(pair, pt.clone(), |_| "pt".into()).unwrap();
    let comp_lax = base
        .composable_pro_pairs()
        .into_iter()
        .map(|k| (k, collapse.clone()))
        .collect();
    LaxSpanFunctor {
        base: base.clone(),
        on_object,
        on_arrow,
        on_proarrow,
        on_cell,
        unit_lax,
        comp_lax,
    }
}

fn check_lax_shape(f: &LaxSpanFunctor) -> Report {
    let mut report = Report::ok();
    let b = &f.base;
    for a in b.objects().iter() {
        if !f.on_object.contains_key(a) {
            report.push("lax.shape", format!("no value at object {a}"));
        }
    }
    if !report.is_ok() {
        return report;
    }
    for ar in b.arrows().iter() {
        match f.on_arrow.get(ar) {
            None => report.push("lax.shape", format!("no transition at arrow {ar}")),
            Some(t) => {
                if t.dom() != f.f_ob(b.d0.cod.apply(ar)) || t.cod() != f.f_ob(b.d0.dom.apply(ar)) {
                    report.push("lax.shape", format!("transition at {ar} has the wrong boundary"));
                }
            }
        }
    }
    for m in b.proarrows().iter() {
        match f.on_proarrow.get(m) {
            None => report.push("lax.shape", format!("no span at proarrow {m}")),
            Some(s) => {
                if s.left() != f.f_ob(b.src.ob(m)) || s.right() != f.f_ob(b.tgt.ob(m)) {
                    report.push("lax.shape", format!("span at {m} has the wrong boundary"));
                }
            }
        }
    }
    if !report.is_ok() {
        return report;
    }
    for th in b.cells().iter() {
        match f.on_cell.get(th) {
            None => report.push("lax.shape", format!("no vertex map at cell {th}")),
            Some(v) => {
                let dom_pro = b.d1.dom.apply(th);
                let cod_pro = b.d1.cod.apply(th);
                if v.dom() != f.f_pro(cod_pro).vertex() || v.cod() != f.f_pro(dom_pro).vertex() {
                    report.push("lax.shape", format!("vertex map at {th} has the wrong boundary"));
                }
            }
        }
    }
    for a in b.objects().iter() {
        match f.unit_lax.get(a) {
            None => report.push("lax.shape", format!("no unit laxity at {a}")),
            Some(u) => {
                if u.dom() != f.f_ob(a) || u.cod() != f.f_pro(b.u_ob(a)).vertex() {
                    report.push("lax.shape", format!("unit laxity at {a} has the wrong boundary"));
                }
            }
        }
    }
    for (m, n) in b.composable_pro_pairs() {
        match f.comp_lax.get(&(m.clone(), n.clone())) {
            None => report.push("lax.shape", format!("no composition laxity at ({m},{n})")),
            Some(c) => {
                let composed = compose_spans(f.f_pro(&m), f.f_pro(&n)).unwrap();
                let target = b.pro_comp(&m, &n).unwrap();
                if c.dom() != composed.vertex() || c.cod() != f.f_pro(target).vertex() {
                    report.push(
                        "lax.shape",
                        format!("composition laxity at ({m},{n}) has the wrong boundary"),
                    );
                }
            }
        }
    }
    report
}

pub fn check_lax_functor(f: &LaxSpanFunctor) -> Report {
    let shape = check_lax_shape(f);
    if !shape.is_ok() {
        return shape;
    }
    let mut report = Report::ok();
    let b = &f.base;
    // Internal functoriality of the object/arrow part (contravariant).
    for a in b.objects().iter() {
        if f.f_ar(b.d0.id.apply(a)) != &FinFn::identity(f.f_ob(a)) {
            report.push("lax.internal-functoriality", format!("identity at {a}"));
        }
    }
    for ((g, fa), gf) in &b.d0.comp {
        // F(g∘f) = Ff ∘ Fg.
        let lhs = f.f_ar(gf);
        let rhs = crate::finset::compose_fn(f.f_ar(fa), f.f_ar(g)).unwrap();
        if lhs != &rhs {
            report.push("lax.internal-functoriality", format!("composite ({g},{fa})"));
        }
    }
    // Internal functoriality of the proarrow/cell part.
    for m in b.proarrows().iter() {
        if f.f_cell(b.d1.id.apply(m)) != &FinFn::identity(f.f_pro(m).vertex()) {
            report.push("lax.internal-functoriality", format!("identity cell at {m}"));
        }
    }
    for ((ps, th), comp) in &b.d1.comp {
        let lhs = f.f_cell(comp);
        let rhs = crate::finset::compose_fn(f.f_cell(th), f.f_cell(ps)).unwrap();
        if lhs != &rhs {
            report.push("lax.internal-functoriality", format!("cell composite ({ps},{th})"));
        }
    }
    // Outer components of each cell image are the frame transitions.
    for th in b.cells().iter() {
        let m = b.d1.dom.apply(th);
        let n = b.d1.cod.apply(th);
        let fstar = f.f_ar(b.src.mor(th));
        let gstar = f.f_ar(b.tgt.mor(th));
        for t in f.f_pro(n).vertex().iter() {
            let s = f.f_cell(th).apply(t);
            if f.f_pro(m).leg0().apply(s) != fstar.apply(f.f_pro(n).leg0().apply(t)) {
                report.push("lax.cell-legs", format!("{th} at {t} (left)"));
            }
            if f.f_pro(m).leg1().apply(s) != gstar.apply(f.f_pro(n).leg1().apply(t)) {
                report.push("lax.cell-legs", format!("{th} at {t} (right)"));
            }
        }
    }
    // Unit laxity legs: both legs of φ_A(x) return x.
    for a in b.objects().iter() {
        let ua = f.f_pro(b.u_ob(a));
        for x in f.f_ob(a).iter() {
            let s = f.phi(a).apply(x);
            if ua.leg0().apply(s) != x || ua.leg1().apply(s) != x {
                report.push("lax.laxity-legs", format!("unit at {a}, element {x}"));
            }
        }
    }
    // Composition laxity legs: outer legs pass through.
    for ((m, n), c) in &f.comp_lax {
        let composed = compose_spans(f.f_pro(m), f.f_pro(n)).unwrap();
        let target = f.f_pro(b.pro_comp(m, n).unwrap());
        for p in composed.vertex().iter() {
            let out = c.apply(p);
            if target.leg0().apply(out) != composed.leg0().apply(p) {
                report.push("lax.laxity-legs", format!("({m},{n}) at {p} (left)"));
            }
            if target.leg1().apply(out) != composed.leg1().apply(p) {
                report.push("lax.laxity-legs", format!("({m},{n}) at {p} (right)"));
            }
        }
    }
    // Naturality of the unit laxity against unit cells.
    for fa in b.arrows().iter() {
        let a = b.d0.dom.apply(fa);
        let bb = b.d0.cod.apply(fa);
        let uf = b.u_ar(fa);
        for y in f.f_ob(bb).iter() {
            let lhs = f.phi(a).apply(f.f_ar(fa).apply(y));
            let rhs = f.f_cell(uf).apply(f.phi(bb).apply(y));
            if lhs != rhs {
                report.push("lax.naturality", format!("unit square at {fa}, element {y}"));
            }
        }
    }
    // Naturality of the composition laxity against external composites of cells.
    for (al, be) in b.composable_cell_pairs() {
        let m = b.d1.dom.apply(&al);
        let n = b.d1.dom.apply(&be);
        let p = b.d1.cod.apply(&al);
        let q = b.d1.cod.apply(&be);
        let composite_cell = b.cell_comp(&al, &be).unwrap();
        let top = compose_spans(f.f_pro(p), f.f_pro(q)).unwrap();
        for pr in top.vertex().iter() {
            let (s, t) = crate::dbl::split_pair(pr);
            let lhs = f.f_cell(composite_cell).apply(f.apply_phi(p, q, &s, &t));
            let s2 = f.f_cell(&al).apply(&s);
            let t2 = f.f_cell(&be).apply(&t);
            let rhs = f.apply_phi(m, n, s2, t2);
            if lhs != rhs {
                report.push("lax.naturality", format!("cells ({al},{be}) at ({s},{t})"));
            }
        }
    }
    // Unit laws of the laxity.
    for m in b.proarrows().iter() {
        let a = b.src.ob(m);
        let bb = b.tgt.ob(m);
        let ua = b.u_ob(a);
        let ub = b.u_ob(bb);
        for s in f.f_pro(m).vertex().iter() {
            let x = f.f_pro(m).leg0().apply(s);
            let left = f.apply_phi(ua, m, f.phi(a).apply(x), s);
            if left != s {
                report.push("lax.unit", format!("left unit at {m}, element {s}"));
            }
            let y = f.f_pro(m).leg1().apply(s);
            let right = f.apply_phi(m, ub, s, f.phi(bb).apply(y));
            if right != s {
                report.push("lax.unit", format!("right unit at {m}, element {s}"));
            }
        }
    }
    // Associativity of the laxity, iterated over raw triples; this is
    // equivalent to the pentagon after the canonical associator.
    for (m, n) in b.composable_pro_pairs() {
        for p in b.proarrows().iter() {
            if b.tgt.ob(&n) != b.src.ob(p) {
                continue;
            }
            let spans = [f.f_pro(&m), f.f_pro(&n), f.f_pro(p)];
            let chain = crate::finset::chain_vertex(&spans).unwrap();
            let nm = b.pro_comp(&m, &n).unwrap();
            let pn = b.pro_comp(&n, p).unwrap();
            for tuple in &chain.tuples {
                let (s, t, w) = (&tuple[0], &tuple[1], &tuple[2]);
                let left = f
                    .apply_phi(nm, p, f.apply_phi(&m, &n, s, t), w)
                    .to_string();
                let right = f
                    .apply_phi(&m, pn, s, f.apply_phi(&n, p, t, w))
                    .to_string();
                if left != right {
                    report.push("lax.assoc", format!("({m},{n},{p}) at ({s},{t},{w})"));
                }
            }
        }
    }
    report
}

/// A transformation between lax functors on the same base: one function per
/// object and one per proarrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxTransformation {
    pub src: LaxSpanFunctor,
    pub tgt: LaxSpanFunctor,
    /// `τ_A : FA → GA`.
    pub obj_comp: BTreeMap<String, FinFn>,
    /// `τ_m : vertex(Fm) → vertex(Gm)`.
    pub pro_comp: BTreeMap<String, FinFn>,
}

impl LaxTransformation {
    pub fn identity(f: &LaxSpanFunctor) -> Self {
        LaxTransformation {
            src: f.clone(),
            tgt: f.clone(),
            obj_comp: f
                .on_object
                .iter()
                .map(|(a, s)| (a.clone(), FinFn::identity(s)))
                .collect(),
            pro_comp: f
                .on_proarrow
                .iter()
                .map(|(m, s)| (m.clone(), FinFn::identity(s.vertex())))
                .collect(),
        }
    }

    pub fn tau_ob(&self, a: &str) -> &FinFn {
        &self.obj_comp[a]
    }

    pub fn tau_pro(&self, m: &str) -> &FinFn {
        &self.pro_comp[m]
    }
}

pub fn check_transformation(t: &LaxTransformation) -> Result<Report> {
    if t.src.base != t.tgt.base {
        return Err(Error::BaseMismatch(
            "source and target functors live over different bases".into(),
        ));
    }
    let mut report = Report::ok();
    let b = &t.src.base;
    let (f, g) = (&t.src, &t.tgt);
    for a in b.objects().iter() {
        match t.obj_comp.get(a) {
            None => report.push("transf.shape", format!("no component at {a}")),
            Some(c) if c.dom() != f.f_ob(a) || c.cod() != g.f_ob(a) => {
                report.push("transf.shape", format!("component at {a} has the wrong boundary"))
            }
            _ => {}
        }
    }
    for m in b.proarrows().iter() {
        match t.pro_comp.get(m) {
            None => report.push("transf.shape", format!("no component at proarrow {m}")),
            Some(c) if c.dom() != f.f_pro(m).vertex() || c.cod() != g.f_pro(m).vertex() => {
                report.push("transf.shape", format!("component at {m} has the wrong boundary"))
            }
            _ => {}
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    // Proarrow components form span morphisms over the object components.
    for m in b.proarrows().iter() {
        let a = b.src.ob(m);
        let bb = b.tgt.ob(m);
        for s in f.f_pro(m).vertex().iter() {
            let out = t.tau_pro(m).apply(s);
            if g.f_pro(m).leg0().apply(out) != t.tau_ob(a).apply(f.f_pro(m).leg0().apply(s)) {
                report.push("transf.legs", format!("{m} at {s} (left)"));
            }
            if g.f_pro(m).leg1().apply(out) != t.tau_ob(bb).apply(f.f_pro(m).leg1().apply(s)) {
                report.push("transf.legs", format!("{m} at {s} (right)"));
            }
        }
    }
    // The functoriality equations below feed component outputs into the
    // laxity maps, which is only meaningful once the legs hold.
    if !report.is_ok() {
        return Ok(report);
    }
    // Naturality in arrows and in cells.
    for fa in b.arrows().iter() {
        let a = b.d0.dom.apply(fa);
        let bb = b.d0.cod.apply(fa);
        for y in f.f_ob(bb).iter() {
            let lhs = t.tau_ob(a).apply(f.f_ar(fa).apply(y));
            let rhs = g.f_ar(fa).apply(t.tau_ob(bb).apply(y));
            if lhs != rhs {
                report.push("transf.naturality", format!("arrow {fa}, element {y}"));
            }
        }
    }
    for th in b.cells().iter() {
        let m = b.d1.dom.apply(th);
        let n = b.d1.cod.apply(th);
        for w in f.f_pro(n).vertex().iter() {
            let lhs = t.tau_pro(m).apply(f.f_cell(th).apply(w));
            let rhs = g.f_cell(th).apply(t.tau_pro(n).apply(w));
            if lhs != rhs {
                report.push("transf.naturality", format!("cell {th}, element {w}"));
            }
        }
    }
    // Unit functoriality: laxity then component = component then laxity.
    for a in b.objects().iter() {
        let ua = b.u_ob(a);
        for x in f.f_ob(a).iter() {
            let lhs = t.tau_pro(ua).apply(f.phi(a).apply(x));
            let rhs = g.phi(a).apply(t.tau_ob(a).apply(x));
            if lhs != rhs {
                report.push("transf.unit", format!("object {a}, element {x}"));
            }
        }
    }
    // Composition functoriality.
    for (m, n) in b.composable_pro_pairs() {
        let nm = b.pro_comp(&m, &n).unwrap();
        let top = compose_spans(f.f_pro(&m), f.f_pro(&n)).unwrap();
        for pr in top.vertex().iter() {
            let (s, w) = crate::dbl::split_pair(pr);
            let lhs = t.tau_pro(nm).apply(f.apply_phi(&m, &n, &s, &w));
            let rhs = g.apply_phi(&m, &n, t.tau_pro(&m).apply(&s), t.tau_pro(&n).apply(&w));
            if lhs != rhs {
                report.push("transf.comp", format!("({m},{n}) at ({s},{w})"));
            }
        }
    }
    Ok(report)
}

pub fn compose_transformations(s: &LaxTransformation, t: &LaxTransformation) -> Result<LaxTransformation> {
    if t.tgt != s.src {
        return Err(Error::CompositionMismatch(
            "target of first transformation differs from source of second".into(),
        ));
    }
    let obj_comp = t
        .obj_comp
        .iter()
        .map(|(a, c)| Ok((a.clone(), crate::finset::compose_fn(s.tau_ob(a), c)?)))
        .collect::<Result<_>>()?;
    let pro_comp = t
        .pro_comp
        .iter()
        .map(|(m, c)| Ok((m.clone(), crate::finset::compose_fn(s.tau_pro(m), c)?)))
        .collect::<Result<_>>()?;
    Ok(LaxTransformation { src: t.src.clone(), tgt: s.tgt.clone(), obj_comp, pro_comp })
}

/// The representable lax functor on an object `x`: arrows into `x` at each
/// object, cells into the unit proarrow at each proarrow, transitions by
/// pre-composition.
pub fn representable(b: &DoubleCategory, x: &str) -> Result<LaxSpanFunctor> {
    if !b.objects().contains(x) {
        return Err(Error::InvalidObject(x.to_string()));
    }
    let ux = b.u_ob(x).to_string();
    let hom = |a: &str| -> FinSet {
        FinSet::new(
            b.arrows()
                .iter()
                .filter(|f| b.d0.dom.apply(f) == a && b.d0.cod.apply(f) == x)
                .cloned()
                .collect(),
        )
        .unwrap()
    };
    let cells_into_unit = |m: &str| -> FinSet {
        FinSet::new(
            b.cells()
                .iter()
                .filter(|th| b.d1.dom.apply(th) == m && b.d1.cod.apply(th) == ux)
                .cloned()
                .collect(),
        )
        .unwrap()
    };
    let on_object: BTreeMap<String, FinSet> =
        b.objects().iter().map(|a| (a.clone(), hom(a))).collect();
    let mut on_arrow = BTreeMap::new();
    for f in b.arrows().iter() {
        let a = b.d0.dom.apply(f);
        let c = b.d0.cod.apply(f);
        on_arrow.insert(
            f.clone(),
            FinFn::from_fn(on_object[c].clone(), on_object[a].clone(), |g| {
                b.d0.compose(g, f).unwrap().to_string()
            })?,
        );
    }
    let mut on_proarrow = BTreeMap::new();
    for m in b.proarrows().iter() {
        let vertex = cells_into_unit(m);
        let a = b.src.ob(m);
        let c = b.tgt.ob(m);
        let leg0 = FinFn::from_fn(vertex.clone(), on_object[a].clone(), |th| {
            b.src.mor(th).to_string()
        })?;
        let leg1 = FinFn::from_fn(vertex, on_object[c].clone(), |th| b.tgt.mor(th).to_string())?;
        on_proarrow.insert(m.clone(), Span::new(leg0, leg1)?);
    }
    let mut on_cell = BTreeMap::new();
    for ps in b.cells().iter() {
        let m = b.d1.dom.apply(ps);
        let n = b.d1.cod.apply(ps);
        on_cell.insert(
            ps.clone(),
            FinFn::from_fn(
                on_proarrow[n].vertex().clone(),
                on_proarrow[m].vertex().clone(),
                |th| b.d1.compose(th, ps).unwrap().to_string(),
            )?,
        );
    }
    let mut unit_lax = BTreeMap::new();
    for a in b.objects().iter() {
        let ua = b.u_ob(a).to_string();
        unit_lax.insert(
            a.clone(),
            FinFn::from_fn(on_object[a].clone(), on_proarrow[&ua].vertex().clone(), |f| {
                b.u_ar(f).to_string()
            })?,
        );
    }
    let mut comp_lax = BTreeMap::new();
    for (m, n) in b.composable_pro_pairs() {
        let composed = compose_spans(&on_proarrow[&m], &on_proarrow[&n])?;
        let target = b.pro_comp(&m, &n).unwrap().to_string();
        comp_lax.insert(
            (m.clone(), n.clone()),
            FinFn::from_fn(
                composed.vertex().clone(),
                on_proarrow[&target].vertex().clone(),
                |pr| {
                    let (th, ps) = crate::dbl::split_pair(pr);
                    // θ⊗ψ lands in u_x ⊗ u_x = u_x by strictness.
                    b.cell_comp(&th, &ps).unwrap().to_string()
                },
            )?,
        );
    }
    Ok(LaxSpanFunctor {
        base: b.clone(),
        on_object,
        on_arrow,
        on_proarrow,
        on_cell,
        unit_lax,
        comp_lax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dbl::{terminal_double, vertical_double, walking_proarrow};

    fn bases() -> Vec<DoubleCategory> {
        vec![
            terminal_double(),
            vertical_double(&corpus::c2()),
            vertical_double(&corpus::c3()),
            walking_proarrow(),
        ]
    }

    #[test]
    fn terminal_lax_is_valid_on_all_bases() {
        for b in bases() {
            let f = terminal_lax(&b);
            let report = check_lax_functor(&f);
            assert!(report.is_ok(), "{report}");
        }
    }

    #[test]
    fn representables_are_valid() {
        for b in bases() {
            for x in b.objects().iter().cloned().collect::<Vec<_>>() {
                let f = representable(&b, &x).unwrap();
                let report = check_lax_functor(&f);
                assert!(report.is_ok(), "at {x}: {report}");
            }
        }
        assert!(matches!(
            representable(&terminal_double(), "missing"),
            Err(Error::InvalidObject(_))
        ));
    }

    #[test]
    fn representable_on_terminal_encodes_one_point() {
        let f = representable(&terminal_double(), "*").unwrap();
        assert_eq!(f.f_ob("*").len(), 1);
        assert_eq!(f.f_pro("id_*").vertex().len(), 1);
    }

    #[test]
    fn representable_on_walking_proarrow_has_empty_span() {
        let w = walking_proarrow();
        let f = representable(&w, "B").unwrap();
        assert_eq!(f.f_ob("B").elements(), &["id_B"]);
        assert!(f.f_ob("A").is_empty());
        // No cells m ⇒ u_B exist, so the span at m is empty.
        assert!(f.f_pro("m").vertex().is_empty());
    }

    #[test]
    fn representable_on_vertical_c2_counts_triangles() {
        let c = corpus::c2();
        let v = vertical_double(&c);
        let f = representable(&v, "Y").unwrap();
        // Cells over proarrow `f` into u_Y: only identity cells exist, and
        // id_f has cod f ≠ idY, so the vertex is empty; at idY it is a point.
        assert!(f.f_pro("f").vertex().is_empty());
        assert_eq!(f.f_pro("idY").vertex().len(), 1);
        // The internal direction is discrete, so there are no arrows X → Y.
        assert!(f.f_ob("X").is_empty());
        assert_eq!(f.f_ob("Y").len(), 1);
    }

    #[test]
    fn identity_transformation_checks() {
        for b in bases() {
            let f = terminal_lax(&b);
            let t = LaxTransformation::identity(&f);
            assert!(check_transformation(&t).unwrap().is_ok());
        }
    }

    #[test]
    fn transformation_composition_laws() {
        let b = vertical_double(&corpus::c2());
        let f = terminal_lax(&b);
        let id = LaxTransformation::identity(&f);
        let composed = compose_transformations(&id, &id).unwrap();
        assert_eq!(composed, id);
        let assoc_l = compose_transformations(&compose_transformations(&id, &id).unwrap(), &id).unwrap();
        let assoc_r = compose_transformations(&id, &compose_transformations(&id, &id).unwrap()).unwrap();
        assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn wrong_boundary_component_is_rejected() {
        let b = vertical_double(&corpus::c2());
        let g = representable(&b, "Y").unwrap();
        let mut t = LaxTransformation::identity(&g);
        // Point the component at proarrow f into the wrong vertex.
        let bad = FinFn::from_fn(
            g.f_pro("f").vertex().clone(),
            g.f_pro("idY").vertex().clone(),
            |_| g.f_pro("idY").vertex().elements()[0].clone(),
        )
        .unwrap();
        t.pro_comp.insert("f".into(), bad);
        let report = check_transformation(&t).unwrap();
        assert!(report.has_rule("transf.shape"));
    }

    #[test]
    fn base_mismatch_is_an_error() {
        let f = terminal_lax(&terminal_double());
        let g = terminal_lax(&walking_proarrow());
        let t = LaxTransformation {
            src: f.clone(),
            tgt: g,
            obj_comp: Default::default(),
            pro_comp: Default::default(),
        };
        assert!(matches!(check_transformation(&t), Err(Error::BaseMismatch(_))));
    }
}
