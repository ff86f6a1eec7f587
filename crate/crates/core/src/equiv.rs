//! The two directions of the elements construction at the module and
//! multicell level, the unit and counit isomorphisms, and an extensional
//! verifier for the induced equivalence on a given corpus of instances.

use std::collections::BTreeMap;

use crate::cat::{
    check_functor, compose_functors, unique_lift, FinCategory, FinFunctor,
};
use crate::dbl::{
    check_double_functor, split_pair, terminal_double, vertical_double, DoubleCategory,
    DoubleFunctor,
};
use crate::elements::{el_functor, el_transformation, is_ddf, is_ddf_via_transpose, DdfCandidate};
use crate::error::{Error, Result};
use crate::fiber::{f_of_ddf, f_of_morphism};
use crate::finset::{chain_vertex, compose_spans, pair_id, FinFn, FinSet, Span};
use crate::lax::{
    check_lax_functor, check_transformation, compose_transformations, LaxSpanFunctor,
    LaxTransformation,
};
use crate::modules::{
    check_module, check_multimodulation, path_composite, unit_module, Module, Multimodulation,
};
use crate::prof::{
    carrier_fiber, carrier_transition, chain_pullback, check_internal_profunctor,
    check_prof_multicell, compose_double_functors, unit_profunctor, InternalProfunctor,
    ProfMulticell,
};
use crate::report::Report;

/// Encode a category as a lax functor on the terminal double category: the
/// objects sit at the point, the morphisms form the span at the unit
/// proarrow, and the laxity is composition.
pub fn lax_of_category(c: &FinCategory) -> LaxSpanFunctor {
    let b = terminal_double();
    let pt = b.objects().elements()[0].clone();
    let arrow = b.d0.id.apply(&pt).to_string();
    let up = b.u_ob(&pt).to_string();
    let ucell = b.u_ar(&arrow).to_string();
    let vertex = c.morphisms.clone();
    let leg0 = FinFn::from_fn(vertex.clone(), c.objects.clone(), |m| {
        c.dom.apply(m).to_string()
    })
    .unwrap();
    let leg1 = FinFn::from_fn(vertex.clone(), c.objects.clone(), |m| {
        c.cod.apply(m).to_string()
    })
    .unwrap();
    let span = Span::new(leg0, leg1).unwrap();
    let comp_dom = compose_spans(&span, &span).unwrap();
    let phi = FinFn::from_fn(comp_dom.vertex().clone(), vertex.clone(), |pr| {
        let (s, t) = split_pair(pr);
        c.compose(&t, &s).unwrap().to_string()
    })
    .unwrap();
    let unit = FinFn::from_fn(c.objects.clone(), vertex.clone(), |x| {
        c.id.apply(x).to_string()
    })
    .unwrap();
    LaxSpanFunctor {
        base: b,
        on_object: BTreeMap::from([(pt.clone(), c.objects.clone())]),
        on_arrow: BTreeMap::from([(arrow, FinFn::identity(&c.objects))]),
        on_proarrow: BTreeMap::from([(up.clone(), span)]),
        on_cell: BTreeMap::from([(ucell, FinFn::identity(&vertex))]),
        unit_lax: BTreeMap::from([(pt, unit)]),
        comp_lax: BTreeMap::from([((up.clone(), up), phi)]),
    }
}

/// Decode a lax functor on the terminal double category back to a category.
pub fn category_of_lax(f: &LaxSpanFunctor) -> Result<FinCategory> {
    let b = terminal_double();
    if f.base != b {
        return Err(Error::InvalidInput(
            "functor is not based on the terminal double category".into(),
        ));
    }
    let pt = b.objects().elements()[0].clone();
    let up = b.u_ob(&pt).to_string();
    let span = f.f_pro(&up);
    let mut comp = BTreeMap::new();
    for (pr, out) in f.phi_comp(&up, &up).table() {
        let (s, t) = split_pair(pr);
        comp.insert((t, s), out.clone());
    }
    FinCategory::new(
        f.f_ob(&pt).clone(),
        span.vertex().clone(),
        span.leg0().clone(),
        span.leg1().clone(),
        f.phi(&pt).clone(),
        comp,
    )
}

/// Encode a functor `p : D → C` as a lax functor on the double category with
/// the morphisms of `C` as proarrows: fibers of objects at objects, fibers of
/// morphisms as span vertices.
pub fn lax_of_functor(p: &FinFunctor) -> Result<LaxSpanFunctor> {
    let report = check_functor(p);
    if !report.is_ok() {
        return Err(Error::InvalidInput(report.to_string()));
    }
    let c = &p.tgt;
    let d = &p.src;
    let b = vertical_double(c);
    let mut on_object = BTreeMap::new();
    for a in c.objects.iter() {
        let fiber: Vec<String> = d
            .objects
            .iter()
            .filter(|x| p.ob(x) == a)
            .cloned()
            .collect();
        on_object.insert(a.clone(), FinSet::new(fiber)?);
    }
    let mut on_arrow = BTreeMap::new();
    for ar in b.arrows().iter() {
        let a = b.d0.dom.apply(ar);
        on_arrow.insert(ar.clone(), FinFn::identity(&on_object[a]));
    }
    let mut on_proarrow = BTreeMap::new();
    for m in b.proarrows().iter() {
        let fiber: Vec<String> = d
            .morphisms
            .iter()
            .filter(|u| p.mor(u) == m)
            .cloned()
            .collect();
        let vertex = FinSet::new(fiber)?;
        let leg0 = FinFn::from_fn(vertex.clone(), on_object[c.dom.apply(m)].clone(), |u| {
            d.dom.apply(u).to_string()
        })?;
        let leg1 = FinFn::from_fn(vertex, on_object[c.cod.apply(m)].clone(), |u| {
            d.cod.apply(u).to_string()
        })?;
        on_proarrow.insert(m.clone(), Span::new(leg0, leg1)?);
    }
    let mut on_cell = BTreeMap::new();
    for th in b.cells().iter() {
        let m = b.d1.dom.apply(th);
        on_cell.insert(th.clone(), FinFn::identity(on_proarrow[m].vertex()));
    }
    let mut unit_lax = BTreeMap::new();
    for a in c.objects.iter() {
        let ua = b.u_ob(a).to_string();
        unit_lax.insert(
            a.clone(),
            FinFn::from_fn(on_object[a].clone(), on_proarrow[&ua].vertex().clone(), |x| {
                d.id.apply(x).to_string()
            })?,
        );
    }
    let mut comp_lax = BTreeMap::new();
    for (m, n) in b.composable_pro_pairs() {
        let dom = compose_spans(&on_proarrow[&m], &on_proarrow[&n])?;
        let target = b.pro_comp(&m, &n).unwrap().to_string();
        comp_lax.insert(
            (m.clone(), n.clone()),
            FinFn::from_fn(
                dom.vertex().clone(),
                on_proarrow[&target].vertex().clone(),
                |pr| {
                    let (u, v) = split_pair(pr);
                    d.compose(&v, &u).unwrap().to_string()
                },
            )?,
        );
    }
    Ok(LaxSpanFunctor {
        base: b,
        on_object,
        on_arrow,
        on_proarrow,
        on_cell,
        unit_lax,
        comp_lax,
    })
}

/// Decode a lax functor on the double category of a category's morphisms back
/// to a functor into that category: the total category has pairs as objects
/// and morphisms, the projection takes first components.
pub fn functor_of_lax(f: &LaxSpanFunctor, c: &FinCategory) -> Result<FinFunctor> {
    if f.base != vertical_double(c) {
        return Err(Error::BaseMismatch(
            "functor is not based on the given category's double category".into(),
        ));
    }
    let b = &f.base;
    let mut objects = Vec::new();
    for a in c.objects.iter() {
        for x in f.f_ob(a).iter() {
            objects.push(pair_id(a, x));
        }
    }
    let objects = FinSet::new(objects)?;
    let mut morphisms = Vec::new();
    let mut dom = BTreeMap::new();
    let mut cod = BTreeMap::new();
    for m in c.morphisms.iter() {
        for s in f.f_pro(m).vertex().iter() {
            let name = pair_id(m, s);
            dom.insert(name.clone(), pair_id(c.dom.apply(m), f.f_pro(m).leg0().apply(s)));
            cod.insert(name.clone(), pair_id(c.cod.apply(m), f.f_pro(m).leg1().apply(s)));
            morphisms.push(name);
        }
    }
    let morphisms = FinSet::new(morphisms)?;
    let dom = FinFn::new(morphisms.clone(), objects.clone(), dom)?;
    let cod = FinFn::new(morphisms.clone(), objects.clone(), cod)?;
    let id = FinFn::from_fn(objects.clone(), morphisms.clone(), |o| {
        let (a, x) = split_pair(o);
        pair_id(c.id.apply(&a), f.phi(&a).apply(&x))
    })?;
    let mut comp = BTreeMap::new();
    for h in morphisms.iter() {
        for k in morphisms.iter() {
            if cod.apply(k) != dom.apply(h) {
                continue;
            }
            let (n, t) = split_pair(h);
            let (m, s) = split_pair(k);
            let nm = c.compose(&n, &m).unwrap().to_string();
            // The base's composite tables are keyed diagrammatically.
            let _ = b;
            comp.insert((h.clone(), k.clone()), pair_id(&nm, f.apply_phi(&m, &n, &s, &t)));
        }
    }
    let total = FinCategory::new(objects.clone(), morphisms.clone(), dom, cod, id, comp)?;
    FinFunctor::new(
        total.clone(),
        c.clone(),
        FinFn::from_fn(objects, c.objects.clone(), |o| split_pair(o).0)?,
        FinFn::from_fn(morphisms, c.morphisms.clone(), |m| split_pair(m).0)?,
    )
}

/// Elements of a module: carrier objects `(m,s)`, morphisms `(θ,t)` into
/// `(n,t)` with domain `(m, Mθ t)`, actions by pairing base composites with
/// the module actions.
pub fn el_module(m: &Module) -> Result<InternalProfunctor> {
    let report = check_module(m)?;
    if !report.is_ok() {
        return Err(Error::InvalidModule(report.to_string()));
    }
    let b = m.base().clone();
    let src_p = el_functor(&m.src_f)?;
    let tgt_p = el_functor(&m.tgt_f)?;

    let mut objects = Vec::new();
    for pro in b.proarrows().iter() {
        for s in m.m_pro(pro).vertex().iter() {
            objects.push(pair_id(pro, s));
        }
    }
    let objects = FinSet::new(objects)?;
    let mut morphisms = Vec::new();
    let mut dom = BTreeMap::new();
    let mut cod = BTreeMap::new();
    for th in b.cells().iter() {
        let p = b.d1.dom.apply(th);
        let q = b.d1.cod.apply(th);
        for t in m.m_pro(q).vertex().iter() {
            let name = pair_id(th, t);
            dom.insert(name.clone(), pair_id(p, m.m_cell(th).apply(t)));
            cod.insert(name.clone(), pair_id(q, t));
            morphisms.push(name);
        }
    }
    let morphisms = FinSet::new(morphisms)?;
    let dom = FinFn::new(morphisms.clone(), objects.clone(), dom)?;
    let cod = FinFn::new(morphisms.clone(), objects.clone(), cod)?;
    let id = FinFn::from_fn(objects.clone(), morphisms.clone(), |o| {
        let (pro, s) = split_pair(o);
        pair_id(b.d1.id.apply(&pro), &s)
    })?;
    let mut comp = BTreeMap::new();
    for h in morphisms.iter() {
        for k in morphisms.iter() {
            if cod.apply(k) != dom.apply(h) {
                continue;
            }
            let (ps, tp) = split_pair(h);
            let (th, _) = split_pair(k);
            let c = b.d1.compose(&ps, &th).unwrap();
            comp.insert((h.clone(), k.clone()), pair_id(c, &tp));
        }
    }
    let carrier = FinCategory::new(objects.clone(), morphisms.clone(), dom, cod, id, comp)?;

    let mfun = FinFunctor::new(
        carrier.clone(),
        b.d1.clone(),
        FinFn::from_fn(objects.clone(), b.d1.objects.clone(), |o| split_pair(o).0)?,
        FinFn::from_fn(morphisms.clone(), b.d1.morphisms.clone(), |c| split_pair(c).0)?,
    )?;
    let e0 = src_p.total().d0.clone();
    let leg0 = FinFunctor::new(
        carrier.clone(),
        e0.clone(),
        FinFn::from_fn(objects.clone(), e0.objects.clone(), |o| {
            let (pro, s) = split_pair(o);
            pair_id(b.src.ob(&pro), m.m_pro(&pro).leg0().apply(&s))
        })?,
        FinFn::from_fn(morphisms.clone(), e0.morphisms.clone(), |c| {
            let (th, t) = split_pair(c);
            let q = b.d1.cod.apply(&th);
            pair_id(b.src.mor(&th), m.m_pro(q).leg0().apply(&t))
        })?,
    )?;
    let g0 = tgt_p.total().d0.clone();
    let leg1 = FinFunctor::new(
        carrier.clone(),
        g0.clone(),
        FinFn::from_fn(objects.clone(), g0.objects.clone(), |o| {
            let (pro, s) = split_pair(o);
            pair_id(b.tgt.ob(&pro), m.m_pro(&pro).leg1().apply(&s))
        })?,
        FinFn::from_fn(morphisms.clone(), g0.morphisms.clone(), |c| {
            let (th, t) = split_pair(c);
            let q = b.d1.cod.apply(&th);
            pair_id(b.tgt.mor(&th), m.m_pro(q).leg1().apply(&t))
        })?,
    )?;

    let (l_dom, _, _) = crate::cat::pullback_category(&src_p.total().tgt, &leg0)?;
    let left_act = FinFunctor::new(
        l_dom.clone(),
        carrier.clone(),
        FinFn::from_fn(l_dom.objects.clone(), objects.clone(), |pr| {
            let (eo, mo) = split_pair(pr);
            let (p, u) = split_pair(&eo);
            let (q, r) = split_pair(&mo);
            pair_id(b.pro_comp(&p, &q).unwrap(), m.apply_lam(&p, &q, &u, &r))
        })?,
        FinFn::from_fn(l_dom.morphisms.clone(), morphisms.clone(), |pr| {
            let (ec, mc) = split_pair(pr);
            let (al, v) = split_pair(&ec);
            let (be, s) = split_pair(&mc);
            let n = b.d1.cod.apply(&al);
            let q = b.d1.cod.apply(&be);
            pair_id(
                b.cell_comp(&al, &be).unwrap(),
                m.apply_lam(n, q, &v, &s),
            )
        })?,
    )?;
    let (r_dom, _, _) = crate::cat::pullback_category(&leg1, &tgt_p.total().src)?;
    let right_act = FinFunctor::new(
        r_dom.clone(),
        carrier.clone(),
        FinFn::from_fn(r_dom.objects.clone(), objects.clone(), |pr| {
            let (mo, go) = split_pair(pr);
            let (p, r) = split_pair(&mo);
            let (q, t) = split_pair(&go);
            pair_id(b.pro_comp(&p, &q).unwrap(), m.apply_rho(&p, &q, &r, &t))
        })?,
        FinFn::from_fn(r_dom.morphisms.clone(), morphisms.clone(), |pr| {
            let (mc, gc) = split_pair(pr);
            let (al, v) = split_pair(&mc);
            let (be, s) = split_pair(&gc);
            let n = b.d1.cod.apply(&al);
            let q = b.d1.cod.apply(&be);
            pair_id(
                b.cell_comp(&al, &be).unwrap(),
                m.apply_rho(n, q, &v, &s),
            )
        })?,
    )?;
    Ok(InternalProfunctor {
        src_p,
        tgt_p,
        carrier,
        mfun,
        leg0,
        leg1,
        left_act,
        right_act,
    })
}

/// Elements of a multimodulation: the mediating functor indexes each tuple of
/// elements with its path and applies the component.
pub fn el_multimodulation(mu: &Multimodulation) -> Result<ProfMulticell> {
    let report = check_multimodulation(mu)?;
    if !report.is_ok() {
        return Err(Error::InvalidMultimodulation(report.to_string()));
    }
    let b = mu.base().clone();
    let k = mu.arity();
    let sources = mu
        .sources
        .iter()
        .map(el_module)
        .collect::<Result<Vec<_>>>()?;
    let target = el_module(&mu.target)?;
    let left_b = el_transformation(&mu.left_leg)?;
    let right_b = el_transformation(&mu.right_leg)?;

    if k == 0 {
        let e = left_b.src_dc.clone();
        let mediating = FinFunctor::new(
            e.d0.clone(),
            target.carrier.clone(),
            FinFn::from_fn(e.d0.objects.clone(), target.carrier.objects.clone(), |o| {
                let (a, x) = split_pair(o);
                pair_id(b.u_ob(&a), mu.nullary[&a].apply(&x))
            })?,
            FinFn::from_fn(e.d0.morphisms.clone(), target.carrier.morphisms.clone(), |f| {
                let (g, y) = split_pair(f);
                let c = b.d0.cod.apply(&g);
                pair_id(b.u_ar(&g), mu.nullary[c].apply(&y))
            })?,
        )?;
        return Ok(ProfMulticell { sources, target, left_b, right_b, mediating });
    }

    let carriers: Vec<&FinCategory> = sources.iter().map(|m| &m.carrier).collect();
    let legs: Vec<(&FinFunctor, &FinFunctor)> = (0..k - 1)
        .map(|i| (&sources[i].leg1, &sources[i + 1].leg0))
        .collect();
    let (dom, projs) = chain_pullback(&carriers, &legs)?;
    let ob_image = |obj: &str| -> String {
        let mut path = Vec::new();
        let mut raw = String::new();
        for p in &projs {
            let (pro, s) = split_pair(p.ob(obj));
            path.push(pro);
            raw = if raw.is_empty() { s } else { pair_id(&raw, &s) };
        }
        pair_id(
            &path_composite(&b, &path),
            mu.components[&path].apply(&raw),
        )
    };
    let mor_image = |morx: &str| -> String {
        let mut cells = Vec::new();
        let mut cod_path = Vec::new();
        let mut raw = String::new();
        for p in &projs {
            let (th, t) = split_pair(p.mor(morx));
            cod_path.push(b.d1.cod.apply(&th).to_string());
            cells.push(th);
            raw = if raw.is_empty() { t } else { pair_id(&raw, &t) };
        }
        let mut composite = cells[0].clone();
        for th in &cells[1..] {
            composite = b.cell_comp(&composite, th).unwrap().to_string();
        }
        pair_id(&composite, mu.components[&cod_path].apply(&raw))
    };
    let mediating = FinFunctor::new(
        dom.clone(),
        target.carrier.clone(),
        FinFn::from_fn(dom.objects.clone(), target.carrier.objects.clone(), |o| ob_image(o))?,
        FinFn::from_fn(dom.morphisms.clone(), target.carrier.morphisms.clone(), |m| {
            mor_image(m)
        })?,
    )?;
    Ok(ProfMulticell { sources, target, left_b, right_b, mediating })
}

/// Present an internal profunctor as a module between the fiber functors:
/// spans of carrier fibers, transitions by unique lifts, actions restricted
/// fiberwise.
pub fn f_of_profunctor(m: &InternalProfunctor) -> Result<Module> {
    let report = check_internal_profunctor(m)?;
    if !report.is_ok() {
        return Err(Error::InvalidProfunctor(report.to_string()));
    }
    let b = m.base().clone();
    let src_f = f_of_ddf(&m.src_p)?;
    let tgt_f = f_of_ddf(&m.tgt_p)?;
    let mut on_proarrow = BTreeMap::new();
    for pro in b.proarrows().iter() {
        let vertex = FinSet::new(carrier_fiber(m, pro))?;
        let a = b.src.ob(pro);
        let c = b.tgt.ob(pro);
        let leg0 = FinFn::from_fn(vertex.clone(), src_f.f_ob(a).clone(), |r| {
            m.leg0.ob(r).to_string()
        })?;
        let leg1 = FinFn::from_fn(vertex, tgt_f.f_ob(c).clone(), |r| {
            m.leg1.ob(r).to_string()
        })?;
        on_proarrow.insert(pro.clone(), Span::new(leg0, leg1)?);
    }
    let mut on_cell = BTreeMap::new();
    for th in b.cells().iter() {
        let p = b.d1.dom.apply(th);
        let q = b.d1.cod.apply(th);
        let mut table = BTreeMap::new();
        for t in on_proarrow[q].vertex().iter() {
            table.insert(t.clone(), carrier_transition(m, th, t)?);
        }
        on_cell.insert(
            th.clone(),
            FinFn::new(
                on_proarrow[q].vertex().clone(),
                on_proarrow[p].vertex().clone(),
                table,
            )?,
        );
    }
    let mut left_act = BTreeMap::new();
    let mut right_act = BTreeMap::new();
    for (p, q) in b.composable_pro_pairs() {
        let target = b.pro_comp(&p, &q).unwrap().to_string();
        let l_dom = compose_spans(src_f.f_pro(&p), &on_proarrow[&q])?;
        left_act.insert(
            (p.clone(), q.clone()),
            FinFn::from_fn(
                l_dom.vertex().clone(),
                on_proarrow[&target].vertex().clone(),
                |pr| {
                    let (s, r) = split_pair(pr);
                    m.act_l(&s, &r).to_string()
                },
            )?,
        );
        let r_dom = compose_spans(&on_proarrow[&p], tgt_f.f_pro(&q))?;
        right_act.insert(
            (p.clone(), q.clone()),
            FinFn::from_fn(
                r_dom.vertex().clone(),
                on_proarrow[&target].vertex().clone(),
                |pr| {
                    let (r, t) = split_pair(pr);
                    m.act_r(&r, &t).to_string()
                },
            )?,
        );
    }
    Ok(Module { src_f, tgt_f, on_proarrow, on_cell, left_act, right_act })
}

/// Present a multicell of internal profunctors as a multimodulation: each
/// component is the mediating functor restricted to a path's fiber.
pub fn f_of_multicell(u: &ProfMulticell) -> Result<Multimodulation> {
    let report = check_prof_multicell(u)?;
    if !report.is_ok() {
        return Err(Error::InvalidMulticell(report.to_string()));
    }
    let b = u.base().clone();
    let k = u.arity();
    let sources = u
        .sources
        .iter()
        .map(f_of_profunctor)
        .collect::<Result<Vec<_>>>()?;
    let target = f_of_profunctor(&u.target)?;

    if k == 0 {
        // The nullary boundary is the shared fibration the two boundary
        // morphisms start from.
        let src_cand = DdfCandidate {
            proj: DoubleFunctor::new(
                u.left_b.src_dc.clone(),
                b.clone(),
                compose_functors(&u.target.src_p.proj.f0, &u.left_b.f0)?,
                compose_functors(&u.target.src_p.proj.f1, &u.left_b.f1)?,
            )?,
        };
        let left_leg = f_of_morphism(&u.left_b, &src_cand, &u.target.src_p)?;
        let right_leg = f_of_morphism(&u.right_b, &src_cand, &u.target.tgt_p)?;
        let f = left_leg.src.clone();
        let mut nullary = BTreeMap::new();
        for a in b.objects().iter() {
            let table: BTreeMap<String, String> = f
                .f_ob(a)
                .iter()
                .map(|x| (x.clone(), u.mediating.ob(x).to_string()))
                .collect();
            nullary.insert(
                a.clone(),
                FinFn::new(
                    f.f_ob(a).clone(),
                    target.m_pro(b.u_ob(a)).vertex().clone(),
                    table,
                )?,
            );
        }
        return Ok(Multimodulation {
            sources,
            target,
            left_leg,
            right_leg,
            components: BTreeMap::new(),
            nullary,
        });
    }

    let left_leg = f_of_morphism(&u.left_b, &u.sources[0].src_p, &u.target.src_p)?;
    let right_leg = f_of_morphism(&u.right_b, &u.sources[k - 1].tgt_p, &u.target.tgt_p)?;
    let mut components = BTreeMap::new();
    for path in crate::modules::proarrow_paths(&b, k) {
        let spans: Vec<&Span> = sources
            .iter()
            .zip(&path)
            .map(|(m, p)| m.m_pro(p))
            .collect();
        let chain = chain_vertex(&spans)?;
        let target_vertex = target.m_pro(&path_composite(&b, &path)).vertex().clone();
        let table: BTreeMap<String, String> = chain
            .set
            .iter()
            .map(|id| (id.clone(), u.mediating.ob(id).to_string()))
            .collect();
        components.insert(path, FinFn::new(chain.set.clone(), target_vertex, table)?);
    }
    Ok(Multimodulation {
        sources,
        target,
        left_leg,
        right_leg,
        components,
        nullary: BTreeMap::new(),
    })
}

/// The unit at a lax functor: index every element with its position.
pub fn eta(h: &LaxSpanFunctor) -> Result<LaxTransformation> {
    let el = el_functor(h)?;
    let back = f_of_ddf(&el)?;
    let b = &h.base;
    let mut obj_comp = BTreeMap::new();
    for a in b.objects().iter() {
        obj_comp.insert(
            a.clone(),
            FinFn::from_fn(h.f_ob(a).clone(), back.f_ob(a).clone(), |x| pair_id(a, x))?,
        );
    }
    let mut pro_comp = BTreeMap::new();
    for m in b.proarrows().iter() {
        pro_comp.insert(
            m.clone(),
            FinFn::from_fn(
                h.f_pro(m).vertex().clone(),
                back.f_pro(m).vertex().clone(),
                |s| pair_id(m, s),
            )?,
        );
    }
    Ok(LaxTransformation { src: h.clone(), tgt: back, obj_comp, pro_comp })
}

/// The unit at a module, as an invertible 1-ary multimodulation.
pub fn eta_module(m: &Module) -> Result<Multimodulation> {
    let back = f_of_profunctor(&el_module(m)?)?;
    let b = m.base();
    let mut components = BTreeMap::new();
    for pro in b.proarrows().iter() {
        let chain = chain_vertex(&[m.m_pro(pro)])?;
        components.insert(
            vec![pro.clone()],
            FinFn::from_fn(chain.set.clone(), back.m_pro(pro).vertex().clone(), |s| {
                pair_id(pro, s)
            })?,
        );
    }
    Ok(Multimodulation {
        sources: vec![m.clone()],
        target: back,
        left_leg: eta(&m.src_f)?,
        right_leg: eta(&m.tgt_f)?,
        components,
        nullary: BTreeMap::new(),
    })
}

/// The counit at a discrete double fibration: strip indices by unique
/// lifting. An isomorphism of double categories over the base.
pub fn epsilon(p: &DdfCandidate) -> Result<DoubleFunctor> {
    let back = f_of_ddf(p)?;
    let elp = el_functor(&back)?;
    let e = p.total();
    let f0 = FinFunctor::new(
        elp.total().d0.clone(),
        e.d0.clone(),
        FinFn::from_fn(elp.total().d0.objects.clone(), e.d0.objects.clone(), |o| {
            split_pair(o).1
        })?,
        {
            let mut table = BTreeMap::new();
            for mor in elp.total().d0.morphisms.iter() {
                let (g, y) = split_pair(mor);
                table.insert(mor.clone(), unique_lift(&p.proj.f0, &y, &g)?);
            }
            FinFn::new(
                elp.total().d0.morphisms.clone(),
                e.d0.morphisms.clone(),
                table,
            )?
        },
    )?;
    let f1 = FinFunctor::new(
        elp.total().d1.clone(),
        e.d1.clone(),
        FinFn::from_fn(elp.total().d1.objects.clone(), e.d1.objects.clone(), |o| {
            split_pair(o).1
        })?,
        {
            let mut table = BTreeMap::new();
            for mor in elp.total().d1.morphisms.iter() {
                let (th, t) = split_pair(mor);
                table.insert(mor.clone(), unique_lift(&p.proj.f1, &t, &th)?);
            }
            FinFn::new(
                elp.total().d1.morphisms.clone(),
                e.d1.morphisms.clone(),
                table,
            )?
        },
    )?;
    DoubleFunctor::new(elp.total().clone(), e.clone(), f0, f1)
}

/// The counit at an internal profunctor, as an invertible 1-ary multicell.
pub fn epsilon_module(m: &InternalProfunctor) -> Result<ProfMulticell> {
    let elfm = el_module(&f_of_profunctor(m)?)?;
    let mut table = BTreeMap::new();
    for mor in elfm.carrier.morphisms.iter() {
        let (th, t) = split_pair(mor);
        table.insert(mor.clone(), unique_lift(&m.mfun, &t, &th)?);
    }
    let mediating = FinFunctor::new(
        elfm.carrier.clone(),
        m.carrier.clone(),
        FinFn::from_fn(elfm.carrier.objects.clone(), m.carrier.objects.clone(), |o| {
            split_pair(o).1
        })?,
        FinFn::new(elfm.carrier.morphisms.clone(), m.carrier.morphisms.clone(), table)?,
    )?;
    Ok(ProfMulticell {
        sources: vec![elfm],
        target: m.clone(),
        left_b: epsilon(&m.src_p)?,
        right_b: epsilon(&m.tgt_p)?,
        mediating,
    })
}

/// Instances over one base submitted to the equivalence verifier.
#[derive(Debug, Clone, Default)]
pub struct EquivalenceCorpus {
    pub functors: Vec<LaxSpanFunctor>,
    pub transformations: Vec<LaxTransformation>,
    pub ddfs: Vec<DdfCandidate>,
    pub modules: Vec<Module>,
    pub multimodulations: Vec<Multimodulation>,
    pub profunctors: Vec<InternalProfunctor>,
    pub multicells: Vec<ProfMulticell>,
}

macro_rules! try_or_report {
    ($report:expr, $rule:expr, $witness:expr, $expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => {
                $report.push($rule, format!("{}: {e}", $witness));
                continue;
            }
        }
    };
}

/// Check every proof obligation of the equivalence that the given
/// corpus instantiates, reporting each failure with the instance and the
/// equation that broke.
pub fn verify_equivalence(b: &DoubleCategory, corpus: &EquivalenceCorpus) -> Report {
    let mut report = Report::ok();
    for (i, h) in corpus.functors.iter().enumerate() {
        let w = format!("functor #{i}");
        if &h.base != b {
            report.push("equiv.base", format!("{w} lives over another base"));
            continue;
        }
        let el = try_or_report!(report, "equiv.el-functor", w, el_functor(h));
        let direct = is_ddf(&el);
        let via_transpose = is_ddf_via_transpose(&el);
        if !direct.is_ok() || !via_transpose.is_ok() {
            report.push("equiv.el-ddf", w.clone());
        }
        // Counting oracles against brute-force sums.
        let ob_sum: usize = b.objects().iter().map(|a| h.f_ob(a).len()).sum();
        let pro_sum: usize = b.proarrows().iter().map(|m| h.f_pro(m).vertex().len()).sum();
        if el.total().d0.objects.len() != ob_sum || el.total().d1.objects.len() != pro_sum {
            report.push("equiv.counting", w.clone());
        }
        let back = try_or_report!(report, "equiv.f-of-ddf", w, f_of_ddf(&el));
        if !check_lax_functor(&back).is_ok() {
            report.push("equiv.f-of-ddf", w.clone());
        }
        let unit = try_or_report!(report, "equiv.eta", w, eta(h));
        match check_transformation(&unit) {
            Ok(r) if r.is_ok() => {}
            _ => report.push("equiv.eta", w.clone()),
        }
        let bijective = unit.obj_comp.values().all(|c| c.is_bijection())
            && unit.pro_comp.values().all(|c| c.is_bijection());
        if !bijective {
            report.push("equiv.eta-bijective", w.clone());
        }
        // Triangle: collapsing indices after indexing is the identity.
        let indexed = try_or_report!(report, "equiv.triangle", w, el_transformation(&unit));
        let collapse = try_or_report!(report, "equiv.triangle", w, epsilon(&el));
        let around = try_or_report!(
            report,
            "equiv.triangle",
            w,
            compose_double_functors(&collapse, &indexed)
        );
        if around != DoubleFunctor::identity(el.total()) {
            report.push("equiv.triangle", w.clone());
        }
        // Unit preservation at the module level.
        let lhs = try_or_report!(
            report,
            "equiv.unit-preservation",
            w,
            el_module(&unit_module(h))
        );
        let rhs = try_or_report!(report, "equiv.unit-preservation", w, unit_profunctor(&el));
        if lhs != rhs {
            report.push("equiv.unit-preservation", w.clone());
        }
    }
    for (i, p) in corpus.ddfs.iter().enumerate() {
        let w = format!("ddf #{i}");
        if p.base() != b {
            report.push("equiv.base", format!("{w} lives over another base"));
            continue;
        }
        let counit = try_or_report!(report, "equiv.epsilon", w, epsilon(p));
        if !check_double_functor(&counit).is_ok() {
            report.push("equiv.epsilon", w.clone());
        }
        let bijective = [&counit.f0.on_objects, &counit.f0.on_morphisms, &counit.f1.on_objects, &counit.f1.on_morphisms]
            .iter()
            .all(|c| c.is_bijection());
        if !bijective {
            report.push("equiv.epsilon-bijective", w.clone());
        }
        // The counit lives over the base.
        let over0 = compose_functors(&p.proj.f0, &counit.f0);
        let over1 = compose_functors(&p.proj.f1, &counit.f1);
        match (over0, over1) {
            (Ok(o0), Ok(o1)) => {
                let elp = try_or_report!(report, "equiv.epsilon", w, el_functor(&try_or_report!(report, "equiv.epsilon", w, f_of_ddf(p))));
                if o0 != elp.proj.f0 || o1 != elp.proj.f1 {
                    report.push("equiv.epsilon-over-base", w.clone());
                }
            }
            _ => report.push("equiv.epsilon-over-base", w.clone()),
        }
    }
    for (i, t) in corpus.transformations.iter().enumerate() {
        let w = format!("transformation #{i}");
        if &t.src.base != b {
            report.push("equiv.base", format!("{w} lives over another base"));
            continue;
        }
        let p = try_or_report!(report, "equiv.eta-naturality", w, el_functor(&t.src));
        let q = try_or_report!(report, "equiv.eta-naturality", w, el_functor(&t.tgt));
        let h = try_or_report!(report, "equiv.eta-naturality", w, el_transformation(t));
        let lifted = try_or_report!(report, "equiv.eta-naturality", w, f_of_morphism(&h, &p, &q));
        let src_eta = try_or_report!(report, "equiv.eta-naturality", w, eta(&t.src));
        let tgt_eta = try_or_report!(report, "equiv.eta-naturality", w, eta(&t.tgt));
        let lhs = try_or_report!(
            report,
            "equiv.eta-naturality",
            w,
            compose_transformations(&lifted, &src_eta)
        );
        let rhs = try_or_report!(
            report,
            "equiv.eta-naturality",
            w,
            compose_transformations(&tgt_eta, t)
        );
        if lhs != rhs {
            report.push("equiv.eta-naturality", w.clone());
        }
    }
    for (i, m) in corpus.modules.iter().enumerate() {
        let w = format!("module #{i}");
        if m.base() != b {
            report.push("equiv.base", format!("{w} lives over another base"));
            continue;
        }
        let elm = try_or_report!(report, "equiv.el-module", w, el_module(m));
        match check_internal_profunctor(&elm) {
            Ok(r) if r.is_ok() => {}
            _ => report.push("equiv.el-module", w.clone()),
        }
        let vertex_sum: usize = b
            .proarrows()
            .iter()
            .map(|pro| m.m_pro(pro).vertex().len())
            .sum();
        if elm.carrier.objects.len() != vertex_sum {
            report.push("equiv.counting", w.clone());
        }
        let back = try_or_report!(report, "equiv.f-of-profunctor", w, f_of_profunctor(&elm));
        match check_module(&back) {
            Ok(r) if r.is_ok() => {}
            _ => report.push("equiv.f-of-profunctor", w.clone()),
        }
        let unit = try_or_report!(report, "equiv.eta-module", w, eta_module(m));
        match check_multimodulation(&unit) {
            Ok(r) if r.is_ok() => {}
            _ => report.push("equiv.eta-module", w.clone()),
        }
        if !unit.components.values().all(|c| c.is_bijection()) {
            report.push("equiv.eta-module-bijective", w.clone());
        }
    }
    for (i, mu) in corpus.multimodulations.iter().enumerate() {
        let w = format!("multimodulation #{i}");
        if mu.base() != b {
            report.push("equiv.base", format!("{w} lives over another base"));
            continue;
        }
        let cell = try_or_report!(report, "equiv.el-multimodulation", w, el_multimodulation(mu));
        match check_prof_multicell(&cell) {
            Ok(r) if r.is_ok() => {}
            _ => report.push("equiv.el-multimodulation", w.clone()),
        }
        let back = try_or_report!(report, "equiv.f-of-multicell", w, f_of_multicell(&cell));
        match check_multimodulation(&back) {
            Ok(r) if r.is_ok() => {}
            _ => report.push("equiv.f-of-multicell", w.clone()),
        }
        // Cell naturality of the unit: evaluating then indexing equals
        // indexing then evaluating the round-tripped multimodulation.
        if mu.arity() == 0 {
            for (a, c) in &mu.nullary {
                for x in c.dom().iter() {
                    let expected = pair_id(b.u_ob(a), c.apply(x));
                    let via = back.nullary[a].apply(&pair_id(a, x));
                    if via != expected {
                        report.push("equiv.cell-naturality", format!("{w} at ({a},{x})"));
                    }
                }
            }
        } else {
            for (path, c) in &mu.components {
                let spans: Vec<&Span> = mu
                    .sources
                    .iter()
                    .zip(path)
                    .map(|(m, p)| m.m_pro(p))
                    .collect();
                let chain = match chain_vertex(&spans) {
                    Ok(c) => c,
                    Err(e) => {
                        report.push("equiv.cell-naturality", format!("{w}: {e}"));
                        continue;
                    }
                };
                for (id, tuple) in chain.set.iter().zip(&chain.tuples) {
                    let expected = pair_id(&path_composite(b, path), c.apply(id));
                    let mut renamed = String::new();
                    for (pro, s) in path.iter().zip(tuple) {
                        let part = pair_id(pro, s);
                        renamed = if renamed.is_empty() {
                            part
                        } else {
                            pair_id(&renamed, &part)
                        };
                    }
                    let via = back.components[path].apply(&renamed);
                    if via != expected {
                        report.push("equiv.cell-naturality", format!("{w} at {id}"));
                    }
                }
            }
        }
    }
    for (i, m) in corpus.profunctors.iter().enumerate() {
        let w = format!("profunctor #{i}");
        if m.base() != b {
            report.push("equiv.base", format!("{w} lives over another base"));
            continue;
        }
        let counit = try_or_report!(report, "equiv.epsilon-module", w, epsilon_module(m));
        match check_prof_multicell(&counit) {
            Ok(r) if r.is_ok() => {}
            _ => report.push("equiv.epsilon-module", w.clone()),
        }
        if !counit.mediating.on_objects.is_bijection()
            || !counit.mediating.on_morphisms.is_bijection()
        {
            report.push("equiv.epsilon-module-bijective", w.clone());
        }
    }
    for (i, u) in corpus.multicells.iter().enumerate() {
        let w = format!("multicell #{i}");
        if u.base() != b {
            report.push("equiv.base", format!("{w} lives over another base"));
            continue;
        }
        let back = try_or_report!(report, "equiv.f-of-multicell", w, f_of_multicell(u));
        let around = try_or_report!(report, "equiv.epsilon-cell-naturality", w, el_multimodulation(&back));
        // Collapsing the indexed multicell reproduces the original: at each
        // chain object, the second component of the indexed image is the
        // original image.
        if u.arity() == 0 {
            for x in u.mediating.src.objects.iter() {
                let proj = compose_functors(&u.target.src_p.proj.f0, &u.left_b.f0);
                let a = match &proj {
                    Ok(p) => p.ob(x).to_string(),
                    Err(_) => continue,
                };
                let renamed = pair_id(&a, x);
                let image = around.mediating.ob(&renamed);
                if split_pair(image).1 != u.mediating.ob(x) {
                    report.push("equiv.epsilon-cell-naturality", format!("{w} at {x}"));
                }
            }
        } else {
            let (dom, projs) = match u.chain_domain() {
                Ok(v) => v,
                Err(e) => {
                    report.push("equiv.epsilon-cell-naturality", format!("{w}: {e}"));
                    continue;
                }
            };
            for obj in dom.objects.iter() {
                let mut renamed = String::new();
                for (s, p) in u.sources.iter().zip(&projs) {
                    let r = p.ob(obj);
                    let part = pair_id(s.mfun.ob(r), r);
                    renamed = if renamed.is_empty() {
                        part
                    } else {
                        pair_id(&renamed, &part)
                    };
                }
                let image = around.mediating.ob(&renamed);
                if split_pair(image).1 != u.mediating.ob(obj) {
                    report.push("equiv.epsilon-cell-naturality", format!("{w} at {obj}"));
                }
            }
        }
    }
    report
}
