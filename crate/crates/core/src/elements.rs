//! The double category of elements of a lax span-valued functor, its
//! projection, and recognition of discrete double fibrations.

use std::collections::BTreeMap;

use crate::cat::{check_functor, pullback_category, FinCategory, FinFunctor};
use crate::dbl::{transpose, DoubleCategory, DoubleFunctor};
use crate::error::{Error, Result};
use crate::finset::{pair_id, FinFn, FinSet};
use crate::lax::{check_lax_functor, check_transformation, LaxSpanFunctor, LaxTransformation};
use crate::report::Report;

/// A double functor presented as a candidate discrete double fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdfCandidate {
    pub proj: DoubleFunctor,
}

impl DdfCandidate {
    pub fn total(&self) -> &DoubleCategory {
        &self.proj.src_dc
    }

    pub fn base(&self) -> &DoubleCategory {
        &self.proj.tgt_dc
    }
}

/// The double category of elements: objects `(B,x)`, arrows `(f,y)` ending at
/// `(C,y)` with domain `(B,f*y)`, proarrows `(m,s)`, cells `(θ,t)`; external
/// composition pairs the base composite with the laxity map.
pub fn el_functor(f: &LaxSpanFunctor) -> Result<DdfCandidate> {
    let report = check_lax_functor(f);
    if !report.is_ok() {
        return Err(Error::InvalidFunctor(report.to_string()));
    }
    let b = &f.base;

    let mut objects = Vec::new();
    for a in b.objects().iter() {
        for x in f.f_ob(a).iter() {
            objects.push(pair_id(a, x));
        }
    }
    let objects = FinSet::new(objects)?;
    // Arrows (g,y) for g : B → C in the base and y ∈ FC.
    let mut arrows = Vec::new();
    let mut ar_dom = BTreeMap::new();
    let mut ar_cod = BTreeMap::new();
    let mut ar_proj = BTreeMap::new();
    for g in b.arrows().iter() {
        let c = b.d0.cod.apply(g);
        for y in f.f_ob(c).iter() {
            let name = pair_id(g, y);
            ar_dom.insert(name.clone(), pair_id(b.d0.dom.apply(g), f.f_ar(g).apply(y)));
            ar_cod.insert(name.clone(), pair_id(c, y));
            ar_proj.insert(name.clone(), g.clone());
            arrows.push(name);
        }
    }
    let arrows = FinSet::new(arrows)?;
    let ar_dom = FinFn::new(arrows.clone(), objects.clone(), ar_dom)?;
    let ar_cod = FinFn::new(arrows.clone(), objects.clone(), ar_cod)?;
    let id0 = FinFn::from_fn(objects.clone(), arrows.clone(), |o| {
        let (a, x) = crate::dbl::split_pair(o);
        pair_id(b.d0.id.apply(&a), &x)
    })?;
    let mut comp0 = BTreeMap::new();
    for h in arrows.iter() {
        for k in arrows.iter() {
            if ar_cod.apply(k) != ar_dom.apply(h) {
                continue;
            }
            let (g, z) = crate::dbl::split_pair(h);
            let (fa, _) = crate::dbl::split_pair(k);
            let gf = b.d0.compose(&g, &fa).unwrap();
            comp0.insert((h.clone(), k.clone()), pair_id(gf, &z));
        }
    }
    let d0 = FinCategory::new(objects.clone(), arrows.clone(), ar_dom, ar_cod, id0, comp0)?;

    // Proarrows (m,s) and cells (θ,t) ending at (n,t) with domain (m,θ*t).
    let mut proarrows = Vec::new();
    for m in b.proarrows().iter() {
        for s in f.f_pro(m).vertex().iter() {
            proarrows.push(pair_id(m, s));
        }
    }
    let proarrows = FinSet::new(proarrows)?;
    let mut cells = Vec::new();
    let mut cell_dom = BTreeMap::new();
    let mut cell_cod = BTreeMap::new();
    for th in b.cells().iter() {
        let m = b.d1.dom.apply(th);
        let n = b.d1.cod.apply(th);
        for t in f.f_pro(n).vertex().iter() {
            let name = pair_id(th, t);
            cell_dom.insert(name.clone(), pair_id(m, f.f_cell(th).apply(t)));
            cell_cod.insert(name.clone(), pair_id(n, t));
            cells.push(name);
        }
    }
    let cells = FinSet::new(cells)?;
    let cell_dom = FinFn::new(cells.clone(), proarrows.clone(), cell_dom)?;
    let cell_cod = FinFn::new(cells.clone(), proarrows.clone(), cell_cod)?;
    let id1 = FinFn::from_fn(proarrows.clone(), cells.clone(), |p| {
        let (m, s) = crate::dbl::split_pair(p);
        pair_id(b.d1.id.apply(&m), &s)
    })?;
    let mut comp1 = BTreeMap::new();
    for h in cells.iter() {
        for k in cells.iter() {
            if cell_cod.apply(k) != cell_dom.apply(h) {
                continue;
            }
            let (ps, tp) = crate::dbl::split_pair(h);
            let (th, _) = crate::dbl::split_pair(k);
            let c = b.d1.compose(&ps, &th).unwrap();
            comp1.insert((h.clone(), k.clone()), pair_id(c, &tp));
        }
    }
    let d1 = FinCategory::new(proarrows.clone(), cells.clone(), cell_dom, cell_cod, id1, comp1)?;

    let src = FinFunctor::new(
        d1.clone(),
        d0.clone(),
        FinFn::from_fn(proarrows.clone(), objects.clone(), |p| {
            let (m, s) = crate::dbl::split_pair(p);
            pair_id(b.src.ob(&m), f.f_pro(&m).leg0().apply(&s))
        })?,
        FinFn::from_fn(cells.clone(), arrows.clone(), |c| {
            let (th, t) = crate::dbl::split_pair(c);
            let n = b.d1.cod.apply(&th);
            pair_id(b.src.mor(&th), f.f_pro(n).leg0().apply(&t))
        })?,
    )?;
    let tgt = FinFunctor::new(
        d1.clone(),
        d0.clone(),
        FinFn::from_fn(proarrows.clone(), objects.clone(), |p| {
            let (m, s) = crate::dbl::split_pair(p);
            pair_id(b.tgt.ob(&m), f.f_pro(&m).leg1().apply(&s))
        })?,
        FinFn::from_fn(cells.clone(), arrows.clone(), |c| {
            let (th, t) = crate::dbl::split_pair(c);
            let n = b.d1.cod.apply(&th);
            pair_id(b.tgt.mor(&th), f.f_pro(n).leg1().apply(&t))
        })?,
    )?;
    let unit = FinFunctor::new(
        d0.clone(),
        d1.clone(),
        FinFn::from_fn(objects.clone(), proarrows.clone(), |o| {
            let (a, x) = crate::dbl::split_pair(o);
            pair_id(b.u_ob(&a), f.phi(&a).apply(&x))
        })?,
        FinFn::from_fn(arrows.clone(), cells.clone(), |ar| {
            let (g, y) = crate::dbl::split_pair(ar);
            let c = b.d0.cod.apply(&g);
            pair_id(b.u_ar(&g), f.phi(c).apply(&y))
        })?,
    )?;

    let mut comp_pro = BTreeMap::new();
    for p in proarrows.iter() {
        for q in proarrows.iter() {
            if tgt.ob(p) != src.ob(q) {
                continue;
            }
            let (m, s) = crate::dbl::split_pair(p);
            let (n, t) = crate::dbl::split_pair(q);
            let nm = b.pro_comp(&m, &n).unwrap();
            comp_pro.insert(
                (p.clone(), q.clone()),
                pair_id(nm, f.apply_phi(&m, &n, &s, &t)),
            );
        }
    }
    let mut comp_cell = BTreeMap::new();
    for c in cells.iter() {
        for e in cells.iter() {
            if tgt.mor(c) != src.mor(e) {
                continue;
            }
            let (th, t) = crate::dbl::split_pair(c);
            let (ps, w) = crate::dbl::split_pair(e);
            let composite = b.cell_comp(&th, &ps).unwrap();
            let p = b.d1.cod.apply(&th);
            let q = b.d1.cod.apply(&ps);
            comp_cell.insert(
                (c.clone(), e.clone()),
                pair_id(composite, f.apply_phi(p, q, &t, &w)),
            );
        }
    }

    let total = DoubleCategory { d0, d1, src, tgt, unit, comp_pro, comp_cell };
    let f0 = FinFunctor::new(
        total.d0.clone(),
        b.d0.clone(),
        FinFn::from_fn(total.d0.objects.clone(), b.d0.objects.clone(), |o| {
            crate::dbl::split_pair(o).0
        })?,
        FinFn::from_fn(total.d0.morphisms.clone(), b.d0.morphisms.clone(), |m| {
            crate::dbl::split_pair(m).0
        })?,
    )?;
    let f1 = FinFunctor::new(
        total.d1.clone(),
        b.d1.clone(),
        FinFn::from_fn(total.d1.objects.clone(), b.d1.objects.clone(), |o| {
            crate::dbl::split_pair(o).0
        })?,
        FinFn::from_fn(total.d1.morphisms.clone(), b.d1.morphisms.clone(), |m| {
            crate::dbl::split_pair(m).0
        })?,
    )?;
    let proj = DoubleFunctor::new(total, b.clone(), f0, f1)?;
    Ok(DdfCandidate { proj })
}

/// The strict double functor `El(F) → El(G)` induced by a transformation:
/// `(B,x) ↦ (B, τ_B x)` in every slot.
pub fn el_transformation(t: &LaxTransformation) -> Result<DoubleFunctor> {
    let report = check_transformation(t)?;
    if !report.is_ok() {
        return Err(Error::InvalidTransformation(report.to_string()));
    }
    let ef = el_functor(&t.src)?;
    let eg = el_functor(&t.tgt)?;
    let b = &t.src.base;
    let f0 = FinFunctor::new(
        ef.total().d0.clone(),
        eg.total().d0.clone(),
        FinFn::from_fn(
            ef.total().d0.objects.clone(),
            eg.total().d0.objects.clone(),
            |id| {
                let (a, x) = crate::dbl::split_pair(id);
                pair_id(&a, t.tau_ob(&a).apply(&x))
            },
        )?,
        FinFn::from_fn(
            ef.total().d0.morphisms.clone(),
            eg.total().d0.morphisms.clone(),
            |id| {
                let (g, y) = crate::dbl::split_pair(id);
                pair_id(&g, t.tau_ob(b.d0.cod.apply(&g)).apply(&y))
            },
        )?,
    )?;
    let f1 = FinFunctor::new(
        ef.total().d1.clone(),
        eg.total().d1.clone(),
        FinFn::from_fn(
            ef.total().d1.objects.clone(),
            eg.total().d1.objects.clone(),
            |id| {
                let (m, s) = crate::dbl::split_pair(id);
                pair_id(&m, t.tau_pro(&m).apply(&s))
            },
        )?,
        FinFn::from_fn(
            ef.total().d1.morphisms.clone(),
            eg.total().d1.morphisms.clone(),
            |id| {
                let (th, w) = crate::dbl::split_pair(id);
                pair_id(&th, t.tau_pro(b.d1.cod.apply(&th)).apply(&w))
            },
        )?,
    )?;
    DoubleFunctor::new(ef.total().clone(), eg.total().clone(), f0, f1)
}

/// Both legs of the projection must be discrete fibrations.
pub fn is_ddf(p: &DdfCandidate) -> Report {
    let mut report = Report::ok();
    report.absorb("objects-and-arrows", {
        let mut r = crate::cat::is_discrete_fibration(&p.proj.f0);
        r.violations.iter_mut().for_each(|v| v.rule = "ddf.unique-lift-f0".into());
        r
    });
    report.absorb("proarrows-and-cells", {
        let mut r = crate::cat::is_discrete_fibration(&p.proj.f1);
        r.violations.iter_mut().for_each(|v| v.rule = "ddf.unique-lift-f1".into());
        r
    });
    report
}

/// The same property through the transpose: the codomain square of the
/// transposed projection must be a pullback of categories, witnessed by the
/// canonical mediating functor being an isomorphism.
pub fn is_ddf_via_transpose(p: &DdfCandidate) -> Report {
    let mut report = Report::ok();
    let et = transpose(p.total());
    let bt = transpose(p.base());
    // Transposed projection parts.
    let f0t = FinFunctor::new(
        et.d0.clone(),
        bt.d0.clone(),
        p.proj.f0.on_objects.clone(),
        p.proj.f1.on_objects.clone(),
    )
    .unwrap();
    let pb = match pullback_category(&bt.tgt, &f0t) {
        Ok((c, _, _)) => c,
        Err(e) => {
            report.push("ddf.transpose-pullback", e.to_string());
            return report;
        }
    };
    // Objects of the transposed d1 are the arrows of the total category.
    let mediating_ob = FinFn::from_fn(et.d1.objects.clone(), pb.objects.clone(), |e| {
        pair_id(p.proj.f0.mor(e), et.tgt.ob(e))
    });
    let mediating_mor = FinFn::from_fn(et.d1.morphisms.clone(), pb.morphisms.clone(), |c| {
        pair_id(p.proj.f1.mor(c), et.tgt.mor(c))
    });
    let (mediating_ob, mediating_mor) = match (mediating_ob, mediating_mor) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            report.push(
                "ddf.transpose-pullback",
                "mediating comparison does not land in the pullback",
            );
            return report;
        }
    };
    let mediating = FinFunctor::new(et.d1.clone(), pb, mediating_ob, mediating_mor).unwrap();
    if !check_functor(&mediating).is_ok() {
        report.push("ddf.transpose-pullback", "mediating comparison is not a functor");
    }
    if !mediating.on_objects.is_bijection() {
        report.push(
            "ddf.transpose-pullback",
            "mediating comparison is not bijective on objects",
        );
    }
    if !mediating.on_morphisms.is_bijection() {
        report.push(
            "ddf.transpose-pullback",
            "mediating comparison is not bijective on morphisms",
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dbl::{
        check_double_category, check_double_functor, terminal_double, vertical_double,
        walking_proarrow,
    };
    use crate::lax::{representable, terminal_lax};

    fn corpus_lax() -> Vec<LaxSpanFunctor> {
        let mut out = Vec::new();
        for b in [
            terminal_double(),
            vertical_double(&corpus::c2()),
            walking_proarrow(),
        ] {
            out.push(terminal_lax(&b));
            for x in b.objects().iter() {
                out.push(representable(&b, x).unwrap());
            }
        }
        out
    }

    #[test]
    fn elements_is_a_valid_ddf_everywhere() {
        for f in corpus_lax() {
            let e = el_functor(&f).unwrap();
            assert!(check_double_category(e.total()).is_ok(), "{}", check_double_category(e.total()));
            assert!(check_double_functor(&e.proj).is_ok());
            assert!(is_ddf(&e).is_ok());
            assert!(is_ddf_via_transpose(&e).is_ok());
        }
    }

    #[test]
    fn cardinalities_match_summation_oracle() {
        for f in corpus_lax() {
            let e = el_functor(&f).unwrap();
            let ob_sum: usize = f.base.objects().iter().map(|a| f.f_ob(a).len()).sum();
            assert_eq!(e.total().objects().len(), ob_sum);
            let pro_sum: usize = f
                .base
                .proarrows()
                .iter()
                .map(|m| f.f_pro(m).vertex().len())
                .sum();
            assert_eq!(e.total().proarrows().len(), pro_sum);
            let cell_sum: usize = f
                .base
                .cells()
                .iter()
                .map(|th| f.f_pro(f.base.d1.cod.apply(th)).vertex().len())
                .sum();
            assert_eq!(e.total().cells().len(), cell_sum);
        }
    }

    #[test]
    fn elements_of_terminal_lax_mirrors_the_base() {
        let b = walking_proarrow();
        let e = el_functor(&terminal_lax(&b)).unwrap();
        assert_eq!(e.total().objects().len(), b.objects().len());
        assert_eq!(e.total().proarrows().len(), b.proarrows().len());
        assert_eq!(e.total().cells().len(), b.cells().len());
    }

    #[test]
    fn identity_candidate_is_a_ddf() {
        let b = vertical_double(&corpus::c2());
        let cand = DdfCandidate { proj: DoubleFunctor::identity(&b) };
        assert!(is_ddf(&cand).is_ok());
        assert!(is_ddf_via_transpose(&cand).is_ok());
    }

    #[test]
    fn walking_proarrow_over_terminal_is_a_ddf() {
        // Both directions upstairs are discrete, so the projection lifts
        // uniquely; this candidate presents the walking-arrow category.
        let cand = DdfCandidate { proj: DoubleFunctor::to_terminal(&walking_proarrow()) };
        assert!(is_ddf(&cand).is_ok());
        assert!(is_ddf_via_transpose(&cand).is_ok());
    }

    #[test]
    fn transposed_walking_proarrow_over_terminal_is_not_a_ddf() {
        // Upstairs d0 is the walking arrow; id and the arrow both lift the
        // base identity with the same codomain, so unique lifts fail.
        let t = transpose(&walking_proarrow());
        let cand = DdfCandidate { proj: DoubleFunctor::to_terminal(&t) };
        let direct = is_ddf(&cand);
        assert!(direct.has_rule("ddf.unique-lift-f0"));
        assert!(!is_ddf_via_transpose(&cand).is_ok());
    }

    #[test]
    fn both_ddf_routes_agree_on_corpus() {
        let mut candidates = vec![
            DdfCandidate { proj: DoubleFunctor::identity(&terminal_double()) },
            DdfCandidate { proj: DoubleFunctor::identity(&walking_proarrow()) },
            DdfCandidate { proj: DoubleFunctor::to_terminal(&walking_proarrow()) },
            DdfCandidate {
                proj: DoubleFunctor::to_terminal(&transpose(&walking_proarrow())),
            },
            DdfCandidate { proj: DoubleFunctor::to_terminal(&vertical_double(&corpus::c2())) },
            DdfCandidate {
                proj: DoubleFunctor::to_terminal(&transpose(&vertical_double(&corpus::c2()))),
            },
        ];
        for f in corpus_lax() {
            candidates.push(el_functor(&f).unwrap());
        }
        for cand in candidates {
            assert_eq!(
                is_ddf(&cand).is_ok(),
                is_ddf_via_transpose(&cand).is_ok(),
                "routes disagree"
            );
        }
    }

    #[test]
    fn el_of_identity_transformation_is_identity() {
        let f = terminal_lax(&vertical_double(&corpus::c2()));
        let e = el_functor(&f).unwrap();
        let id = el_transformation(&LaxTransformation::identity(&f)).unwrap();
        assert_eq!(id, DoubleFunctor::identity(e.total()));
    }

    #[test]
    fn el_transformation_commutes_with_projection() {
        let f = terminal_lax(&walking_proarrow());
        let t = LaxTransformation::identity(&f);
        let e = el_functor(&f).unwrap();
        let lifted = el_transformation(&t).unwrap();
        // Π_G ∘ El(τ) = Π_F.
        let composed0 = crate::cat::compose_functors(&e.proj.f0, &lifted.f0).unwrap();
        assert_eq!(composed0, e.proj.f0);
        let composed1 = crate::cat::compose_functors(&e.proj.f1, &lifted.f1).unwrap();
        assert_eq!(composed1, e.proj.f1);
    }
}
