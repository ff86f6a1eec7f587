//! Pseudo-inverse of the elements construction: a discrete double fibration
//! presents a lax span-valued functor through its fibers and unique lifts.

use std::collections::BTreeMap;

use crate::cat::{compose_functors, fiber_objects, unique_lift};
use crate::dbl::DoubleFunctor;
use crate::elements::{is_ddf, DdfCandidate};
use crate::error::{Error, Result};
use crate::finset::{FinFn, Span};
use crate::lax::{LaxSpanFunctor, LaxTransformation};

/// Build the lax functor presented by a discrete double fibration: object
/// fibers, transition by lift domains, spans of proarrow fibers with the
/// boundary maps as legs, laxity by units and external composition upstairs.
pub fn f_of_ddf(p: &DdfCandidate) -> Result<LaxSpanFunctor> {
    let report = is_ddf(p);
    if !report.is_ok() {
        return Err(Error::NotADdf(report.to_string()));
    }
    let b = p.base();
    let e = p.total();

    let mut on_object = BTreeMap::new();
    for a in b.objects().iter() {
        on_object.insert(a.clone(), fiber_objects(&p.proj.f0, a)?);
    }
    let mut on_arrow = BTreeMap::new();
    for f in b.arrows().iter() {
        let a = b.d0.dom.apply(f);
        let c = b.d0.cod.apply(f);
        let mut table = BTreeMap::new();
        for y in on_object[c].iter() {
            let lift = unique_lift(&p.proj.f0, y, f)?;
            table.insert(y.clone(), e.d0.dom.apply(&lift).to_string());
        }
        on_arrow.insert(
            f.clone(),
            FinFn::new(on_object[c].clone(), on_object[a].clone(), table)?,
        );
    }
    let mut on_proarrow = BTreeMap::new();
    for m in b.proarrows().iter() {
        let vertex = fiber_objects(&p.proj.f1, m)?;
        let a = b.src.ob(m);
        let c = b.tgt.ob(m);
        let leg0 = FinFn::from_fn(vertex.clone(), on_object[a].clone(), |pro| {
            e.src.ob(pro).to_string()
        })?;
        let leg1 = FinFn::from_fn(vertex, on_object[c].clone(), |pro| {
            e.tgt.ob(pro).to_string()
        })?;
        on_proarrow.insert(m.clone(), Span::new(leg0, leg1)?);
    }
    let mut on_cell = BTreeMap::new();
    for al in b.cells().iter() {
        let m = b.d1.dom.apply(al);
        let n = b.d1.cod.apply(al);
        let mut table = BTreeMap::new();
        for t in on_proarrow[n].vertex().iter() {
            let lift = unique_lift(&p.proj.f1, t, al)?;
            table.insert(t.clone(), e.d1.dom.apply(&lift).to_string());
        }
        on_cell.insert(
            al.clone(),
            FinFn::new(
                on_proarrow[n].vertex().clone(),
                on_proarrow[m].vertex().clone(),
                table,
            )?,
        );
    }
    let mut unit_lax = BTreeMap::new();
    for a in b.objects().iter() {
        let ua = b.u_ob(a).to_string();
        unit_lax.insert(
            a.clone(),
            FinFn::from_fn(on_object[a].clone(), on_proarrow[&ua].vertex().clone(), |x| {
                e.u_ob(x).to_string()
            })?,
        );
    }
    let mut comp_lax = BTreeMap::new();
    for (m, n) in b.composable_pro_pairs() {
        let composed = crate::finset::compose_spans(&on_proarrow[&m], &on_proarrow[&n])?;
        let target = b.pro_comp(&m, &n).unwrap().to_string();
        comp_lax.insert(
            (m.clone(), n.clone()),
            FinFn::from_fn(
                composed.vertex().clone(),
                on_proarrow[&target].vertex().clone(),
                |pr| {
                    let (u, v) = crate::dbl::split_pair(pr);
                    e.pro_comp(&u, &v).unwrap().to_string()
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

/// A morphism of discrete double fibrations over the same base restricts to a
/// transformation of the presented lax functors.
pub fn f_of_morphism(
    h: &DoubleFunctor,
    p: &DdfCandidate,
    q: &DdfCandidate,
) -> Result<LaxTransformation> {
    if p.base() != q.base() {
        return Err(Error::BaseMismatch("candidates are over different bases".into()));
    }
    let over0 = compose_functors(&q.proj.f0, &h.f0)?;
    let over1 = compose_functors(&q.proj.f1, &h.f1)?;
    if over0 != p.proj.f0 || over1 != p.proj.f1 {
        return Err(Error::NotOverBase(
            "the morphism does not commute with the projections".into(),
        ));
    }
    let fp = f_of_ddf(p)?;
    let fq = f_of_ddf(q)?;
    let b = p.base();
    let mut obj_comp = BTreeMap::new();
    for a in b.objects().iter() {
        obj_comp.insert(
            a.clone(),
            FinFn::from_fn(fp.f_ob(a).clone(), fq.f_ob(a).clone(), |x| {
                h.f0.ob(x).to_string()
            })?,
        );
    }
    let mut pro_comp = BTreeMap::new();
    for m in b.proarrows().iter() {
        pro_comp.insert(
            m.clone(),
            FinFn::from_fn(
                fp.f_pro(m).vertex().clone(),
                fq.f_pro(m).vertex().clone(),
                |s| h.f1.ob(s).to_string(),
            )?,
        );
    }
    Ok(LaxTransformation { src: fp, tgt: fq, obj_comp, pro_comp })
}
