//! Internal profunctors between discrete double fibrations over a fixed base,
//! and the multicells between them: the proarrow-and-multicell layer of the
//! fibrational side of the correspondence.

use std::collections::BTreeMap;

use crate::cat::{
    check_functor, compose_functors, is_discrete_fibration, pullback_category, unique_lift,
    FinCategory, FinFunctor,
};
use crate::dbl::{split_pair, DoubleCategory, DoubleFunctor};
use crate::elements::{is_ddf, DdfCandidate};
use crate::error::{Error, Result};
use crate::finset::{pair_id, FinFn};
use crate::report::Report;

/// An internal profunctor `M : P ⇸ Q` between discrete double fibrations over
/// the same base: a carrier category fibred over the base's proarrow level,
/// with boundary legs into the two total object levels and two-sided actions
/// by the total proarrow categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalProfunctor {
    pub src_p: DdfCandidate,
    pub tgt_p: DdfCandidate,
    pub carrier: FinCategory,
    /// Projection of the carrier to the base's proarrow level.
    pub mfun: FinFunctor,
    /// Left boundary leg into the source total's object level.
    pub leg0: FinFunctor,
    /// Right boundary leg into the target total's object level.
    pub leg1: FinFunctor,
    /// `L : E₁ ×_{E₀} 𝓜 → 𝓜`, source on the pullback of `tgt` against `∂₀`.
    pub left_act: FinFunctor,
    /// `R : 𝓜 ×_{G₀} G₁ → 𝓜`, source on the pullback of `∂₁` against `src`.
    pub right_act: FinFunctor,
}

impl InternalProfunctor {
    pub fn base(&self) -> &DoubleCategory {
        self.src_p.base()
    }

    /// Apply the left action to a composable pair of carrier objects.
    pub fn act_l(&self, x: &str, r: &str) -> &str {
        self.left_act.ob(&pair_id(x, r))
    }

    pub fn act_r(&self, r: &str, t: &str) -> &str {
        self.right_act.ob(&pair_id(r, t))
    }

    /// Apply the left action to a composable pair of carrier morphisms.
    pub fn act_l_mor(&self, x: &str, r: &str) -> &str {
        self.left_act.mor(&pair_id(x, r))
    }

    pub fn act_r_mor(&self, r: &str, t: &str) -> &str {
        self.right_act.mor(&pair_id(r, t))
    }
}

/// The unit profunctor on a discrete double fibration: carrier the total
/// proarrow level, legs the external boundaries, both actions external
/// composition.
pub fn unit_profunctor(p: &DdfCandidate) -> Result<InternalProfunctor> {
    let report = is_ddf(p);
    if !report.is_ok() {
        return Err(Error::NotADdf(report.to_string()));
    }
    let e = p.total();
    let comp = e.ext_comp_functor()?;
    Ok(InternalProfunctor {
        src_p: p.clone(),
        tgt_p: p.clone(),
        carrier: e.d1.clone(),
        mfun: p.proj.f1.clone(),
        leg0: e.src.clone(),
        leg1: e.tgt.clone(),
        left_act: comp.clone(),
        right_act: comp,
    })
}

pub fn check_internal_profunctor(m: &InternalProfunctor) -> Result<Report> {
    if m.src_p.base() != m.tgt_p.base() {
        return Err(Error::BaseMismatch(
            "profunctor endpoints live over different bases".into(),
        ));
    }
    let mut report = Report::ok();
    let endpoints = {
        let mut r = Report::ok();
        r.absorb("source endpoint", is_ddf(&m.src_p));
        r.absorb("target endpoint", is_ddf(&m.tgt_p));
        r
    };
    if !endpoints.is_ok() {
        report.violations.extend(endpoints.violations.into_iter().map(|mut v| {
            v.rule = "prof.endpoint".into();
            v
        }));
        return Ok(report);
    }
    let b = m.src_p.base();
    let e = m.src_p.total();
    let g = m.tgt_p.total();
    // Boundaries of all the structure maps.
    if m.mfun.src != m.carrier || m.mfun.tgt != b.d1 {
        report.push("prof.shape", "carrier projection has the wrong boundary");
    }
    if m.leg0.src != m.carrier || m.leg0.tgt != e.d0 {
        report.push("prof.shape", "left leg has the wrong boundary");
    }
    if m.leg1.src != m.carrier || m.leg1.tgt != g.d0 {
        report.push("prof.shape", "right leg has the wrong boundary");
    }
    let (l_dom, _, _) = pullback_category(&e.tgt, &m.leg0)?;
    if m.left_act.src != l_dom || m.left_act.tgt != m.carrier {
        report.push("prof.shape", "left action has the wrong boundary");
    }
    let (r_dom, _, _) = pullback_category(&m.leg1, &g.src)?;
    if m.right_act.src != r_dom || m.right_act.tgt != m.carrier {
        report.push("prof.shape", "right action has the wrong boundary");
    }
    if !report.is_ok() {
        return Ok(report);
    }
    for f in [&m.mfun, &m.leg0, &m.leg1, &m.left_act, &m.right_act] {
        report.absorb("structure map", check_functor(f));
    }
    {
        let mut r = is_discrete_fibration(&m.mfun);
        r.violations.iter_mut().for_each(|v| v.rule = "prof.fibration".into());
        report.violations.extend(r.violations);
    }
    if !report.is_ok() {
        return Ok(report);
    }
    // The span sits over the base's boundary span.
    let left_down = compose_functors(&m.src_p.proj.f0, &m.leg0)?;
    if left_down != compose_functors(&b.src, &m.mfun)? {
        report.push("prof.over-base", "left leg square");
    }
    let right_down = compose_functors(&m.tgt_p.proj.f0, &m.leg1)?;
    if right_down != compose_functors(&b.tgt, &m.mfun)? {
        report.push("prof.over-base", "right leg square");
    }
    // Actions sit over external composition in the base, and their legs pass
    // through the outer factors.
    for pr in m.left_act.src.objects.iter() {
        let (x, r) = split_pair(pr);
        let out = m.act_l(&x, &r);
        let expected = b.pro_comp(m.src_p.proj.f1.ob(&x), m.mfun.ob(&r));
        if expected != Some(m.mfun.ob(out)) {
            report.push("prof.over-base", format!("left action at {pr}"));
        }
        if m.leg0.ob(out) != e.src.ob(&x) {
            report.push("prof.action-legs", format!("left action at {pr} (left leg)"));
        }
        if m.leg1.ob(out) != m.leg1.ob(&r) {
            report.push("prof.action-legs", format!("left action at {pr} (right leg)"));
        }
    }
    for pr in m.left_act.src.morphisms.iter() {
        let (xi, rho) = split_pair(pr);
        let out = m.act_l_mor(&xi, &rho);
        let expected = b.cell_comp(m.src_p.proj.f1.mor(&xi), m.mfun.mor(&rho));
        if expected != Some(m.mfun.mor(out)) {
            report.push("prof.over-base", format!("left action at morphism {pr}"));
        }
    }
    for pr in m.right_act.src.objects.iter() {
        let (r, t) = split_pair(pr);
        let out = m.act_r(&r, &t);
        let expected = b.pro_comp(m.mfun.ob(&r), m.tgt_p.proj.f1.ob(&t));
        if expected != Some(m.mfun.ob(out)) {
            report.push("prof.over-base", format!("right action at {pr}"));
        }
        if m.leg0.ob(out) != m.leg0.ob(&r) {
            report.push("prof.action-legs", format!("right action at {pr} (left leg)"));
        }
        if m.leg1.ob(out) != g.tgt.ob(&t) {
            report.push("prof.action-legs", format!("right action at {pr} (right leg)"));
        }
    }
    for pr in m.right_act.src.morphisms.iter() {
        let (rho, ps) = split_pair(pr);
        let out = m.act_r_mor(&rho, &ps);
        let expected = b.cell_comp(m.mfun.mor(&rho), m.tgt_p.proj.f1.mor(&ps));
        if expected != Some(m.mfun.mor(out)) {
            report.push("prof.over-base", format!("right action at morphism {pr}"));
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    // Associativity, unit, and compatibility of the actions, object level.
    for r in m.carrier.objects.iter() {
        let x0 = m.leg0.ob(r);
        if m.act_l(e.u_ob(x0), r) != r {
            report.push("prof.unit", format!("left unit at {r}"));
        }
        let y0 = m.leg1.ob(r);
        if m.act_r(r, g.u_ob(y0)) != r {
            report.push("prof.unit", format!("right unit at {r}"));
        }
        for x in e.proarrows().iter() {
            if e.tgt.ob(x) != m.leg0.ob(r) {
                continue;
            }
            for w in e.proarrows().iter() {
                if e.tgt.ob(w) != e.src.ob(x) {
                    continue;
                }
                let lhs = m.act_l(w, m.act_l(x, r));
                let rhs = m.act_l(e.pro_comp(w, x).unwrap(), r);
                if lhs != rhs {
                    report.push("prof.assoc", format!("left at ({w},{x},{r})"));
                }
            }
            for t in g.proarrows().iter() {
                if m.leg1.ob(r) != g.src.ob(t) {
                    continue;
                }
                let lhs = m.act_l(x, m.act_r(r, t));
                let rhs = m.act_r(m.act_l(x, r), t);
                if lhs != rhs {
                    report.push("prof.compat", format!("({x},{r},{t})"));
                }
            }
        }
        for t in g.proarrows().iter() {
            if m.leg1.ob(r) != g.src.ob(t) {
                continue;
            }
            for u in g.proarrows().iter() {
                if g.tgt.ob(t) != g.src.ob(u) {
                    continue;
                }
                let lhs = m.act_r(m.act_r(r, t), u);
                let rhs = m.act_r(r, g.pro_comp(t, u).unwrap());
                if lhs != rhs {
                    report.push("prof.assoc", format!("right at ({r},{t},{u})"));
                }
            }
        }
    }
    Ok(report)
}

/// Iterated pullback of carrier categories along the boundary legs: the
/// domain category of a multicell, with projections to each factor.
pub fn chain_pullback(
    carriers: &[&FinCategory],
    inner_legs: &[(&FinFunctor, &FinFunctor)],
) -> Result<(FinCategory, Vec<FinFunctor>)> {
    assert_eq!(inner_legs.len() + 1, carriers.len());
    let mut acc = carriers[0].clone();
    let mut projs = vec![FinFunctor::identity(&acc)];
    for (i, (right_leg, next_left_leg)) in inner_legs.iter().enumerate() {
        let into_mid = compose_functors(right_leg, &projs[i])?;
        let (pb, p0, p1) = pullback_category(&into_mid, next_left_leg)?;
        projs = projs
            .iter()
            .map(|p| compose_functors(p, &p0))
            .collect::<Result<Vec<_>>>()?;
        projs.push(p1);
        acc = pb;
    }
    Ok((acc, projs))
}

/// A multicell `(M¹,…,Mᵏ) ⇒ N` of internal profunctors: a mediating functor
/// from the iterated pullback of the carriers, with boundary morphisms of
/// fibrations on the two vertical sides. For `k = 0` the mediating functor
/// starts at the object level of the single boundary total category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfMulticell {
    pub sources: Vec<InternalProfunctor>,
    pub target: InternalProfunctor,
    pub left_b: DoubleFunctor,
    pub right_b: DoubleFunctor,
    pub mediating: FinFunctor,
}

impl ProfMulticell {
    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn base(&self) -> &DoubleCategory {
        self.target.base()
    }

    /// Identity 1-ary multicell on a profunctor.
    pub fn identity(m: &InternalProfunctor) -> Self {
        ProfMulticell {
            sources: vec![m.clone()],
            target: m.clone(),
            left_b: DoubleFunctor::identity(m.src_p.total()),
            right_b: DoubleFunctor::identity(m.tgt_p.total()),
            mediating: FinFunctor::identity(&m.carrier),
        }
    }

    /// Domain category of the mediating functor, with its projections.
    pub fn chain_domain(&self) -> Result<(FinCategory, Vec<FinFunctor>)> {
        let carriers: Vec<&FinCategory> = self.sources.iter().map(|m| &m.carrier).collect();
        let legs: Vec<(&FinFunctor, &FinFunctor)> = (0..self.arity().saturating_sub(1))
            .map(|i| (&self.sources[i].leg1, &self.sources[i + 1].leg0))
            .collect();
        chain_pullback(&carriers, &legs)
    }
}

fn multicell_frame(u: &ProfMulticell) -> Result<()> {
    let k = u.arity();
    let n = &u.target;
    for m in u.sources.iter().chain(std::iter::once(n)) {
        if m.base() != u.base() {
            return Err(Error::FrameMismatch("mixed bases in the frame".into()));
        }
    }
    for i in 0..k.saturating_sub(1) {
        if u.sources[i].tgt_p != u.sources[i + 1].src_p {
            return Err(Error::FrameMismatch(format!(
                "sources {i} and {} do not chain",
                i + 1
            )));
        }
    }
    if k == 0 {
        // Nullary boundaries start at a shared total category.
        if u.left_b.src_dc != u.right_b.src_dc {
            return Err(Error::FrameMismatch(
                "nullary boundaries start at different totals".into(),
            ));
        }
    } else {
        if &u.left_b.src_dc != u.sources[0].src_p.total() {
            return Err(Error::FrameMismatch("left boundary has the wrong source".into()));
        }
        if &u.right_b.src_dc != u.sources[k - 1].tgt_p.total() {
            return Err(Error::FrameMismatch("right boundary has the wrong source".into()));
        }
    }
    if &u.left_b.tgt_dc != n.src_p.total() {
        return Err(Error::FrameMismatch("left boundary has the wrong target".into()));
    }
    if &u.right_b.tgt_dc != n.tgt_p.total() {
        return Err(Error::FrameMismatch("right boundary has the wrong target".into()));
    }
    Ok(())
}

pub fn check_prof_multicell(u: &ProfMulticell) -> Result<Report> {
    multicell_frame(u)?;
    let mut report = Report::ok();
    let b = u.base();
    let n = &u.target;
    let k = u.arity();
    if k == 0 {
        // Both boundaries must project down to the same fibration over the
        // base; that common projection locates the source of the cell.
        let proj0 = compose_functors(&n.src_p.proj.f0, &u.left_b.f0)?;
        let proj1 = compose_functors(&n.src_p.proj.f1, &u.left_b.f1)?;
        if proj0 != compose_functors(&n.tgt_p.proj.f0, &u.right_b.f0)?
            || proj1 != compose_functors(&n.tgt_p.proj.f1, &u.right_b.f1)?
        {
            report.push("pmc.boundary-over-base", "nullary boundaries disagree over the base");
            return Ok(report);
        }
        let e = &u.left_b.src_dc;
        if u.mediating.src != e.d0 || u.mediating.tgt != n.carrier {
            report.push("pmc.shape", "nullary mediating functor has the wrong boundary");
            return Ok(report);
        }
        report.absorb("mediating functor", check_functor(&u.mediating));
        for x in e.d0.objects.iter() {
            let out = u.mediating.ob(x);
            if n.mfun.ob(out) != b.u_ob(proj0.ob(x)) {
                report.push("pmc.over-base", format!("object {x}"));
            }
            if n.leg0.ob(out) != u.left_b.f0.ob(x) {
                report.push("pmc.legs", format!("object {x} (left)"));
            }
            if n.leg1.ob(out) != u.right_b.f0.ob(x) {
                report.push("pmc.legs", format!("object {x} (right)"));
            }
        }
        for f in e.d0.morphisms.iter() {
            let out = u.mediating.mor(f);
            if n.mfun.mor(out) != b.u_ar(proj0.mor(f)) {
                report.push("pmc.over-base", format!("morphism {f}"));
            }
        }
        if !report.is_ok() {
            return Ok(report);
        }
        // Absorbing a total proarrow on either side agrees.
        for w in e.proarrows().iter() {
            let lhs = n.act_l(u.left_b.f1.ob(w), u.mediating.ob(e.tgt.ob(w)));
            let rhs = n.act_r(u.mediating.ob(e.src.ob(w)), u.right_b.f1.ob(w));
            if lhs != rhs {
                report.push("pmc.nullary-equivariance", format!("proarrow {w}"));
            }
        }
        return Ok(report);
    }

    // Boundary morphisms must commute with the projections to the base.
    for (name, h, p, q) in [
        ("left boundary", &u.left_b, &u.sources[0].src_p, &n.src_p),
        ("right boundary", &u.right_b, &u.sources[k - 1].tgt_p, &n.tgt_p),
    ] {
        let over0 = compose_functors(&q.proj.f0, &h.f0)?;
        let over1 = compose_functors(&q.proj.f1, &h.f1)?;
        if over0 != p.proj.f0 || over1 != p.proj.f1 {
            report.push("pmc.boundary-over-base", name);
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    let (dom, projs) = u.chain_domain()?;
    if u.mediating.src != dom || u.mediating.tgt != n.carrier {
        report.push("pmc.shape", "mediating functor has the wrong boundary");
        return Ok(report);
    }
    report.absorb("mediating functor", check_functor(&u.mediating));
    if !report.is_ok() {
        return Ok(report);
    }
    // Over-base: the projection of the image is the iterated external
    // composite of the projections of the factors.
    for obj in dom.objects.iter() {
        let out = u.mediating.ob(obj);
        let mut acc = u.sources[0].mfun.ob(projs[0].ob(obj)).to_string();
        for i in 1..k {
            acc = b
                .pro_comp(&acc, u.sources[i].mfun.ob(projs[i].ob(obj)))
                .unwrap()
                .to_string();
        }
        if n.mfun.ob(out) != acc {
            report.push("pmc.over-base", format!("object {obj}"));
        }
        let first = u.sources[0].leg0.ob(projs[0].ob(obj));
        if n.leg0.ob(out) != u.left_b.f0.ob(first) {
            report.push("pmc.legs", format!("object {obj} (left)"));
        }
        let last = u.sources[k - 1].leg1.ob(projs[k - 1].ob(obj));
        if n.leg1.ob(out) != u.right_b.f0.ob(last) {
            report.push("pmc.legs", format!("object {obj} (right)"));
        }
    }
    for mor in dom.morphisms.iter() {
        let out = u.mediating.mor(mor);
        let mut acc = u.sources[0].mfun.mor(projs[0].mor(mor)).to_string();
        for i in 1..k {
            acc = b
                .cell_comp(&acc, u.sources[i].mfun.mor(projs[i].mor(mor)))
                .unwrap()
                .to_string();
        }
        if n.mfun.mor(out) != acc {
            report.push("pmc.over-base", format!("morphism {mor}"));
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    let components = |obj: &str| -> Vec<String> {
        projs.iter().map(|p| p.ob(obj).to_string()).collect()
    };
    let find_obj = |parts: &[String]| -> String {
        dom.objects
            .iter()
            .find(|o| components(o) == parts)
            .expect("chained parts form an object")
            .clone()
    };
    let e0 = u.sources[0].src_p.total();
    // Left equivariance.
    for obj in dom.objects.iter() {
        let parts = components(obj);
        for x in e0.proarrows().iter() {
            if e0.tgt.ob(x) != u.sources[0].leg0.ob(&parts[0]) {
                continue;
            }
            let lhs = n.act_l(u.left_b.f1.ob(x), u.mediating.ob(obj));
            let mut absorbed = parts.clone();
            absorbed[0] = u.sources[0].act_l(x, &parts[0]).to_string();
            let rhs = u.mediating.ob(&find_obj(&absorbed));
            if lhs != rhs {
                report.push("pmc.left-equivariance", format!("{x} against {obj}"));
            }
        }
        // Right equivariance.
        let gk = u.sources[k - 1].tgt_p.total();
        for t in gk.proarrows().iter() {
            if u.sources[k - 1].leg1.ob(&parts[k - 1]) != gk.src.ob(t) {
                continue;
            }
            let lhs = n.act_r(u.mediating.ob(obj), u.right_b.f1.ob(t));
            let mut absorbed = parts.clone();
            absorbed[k - 1] = u.sources[k - 1].act_r(&parts[k - 1], t).to_string();
            let rhs = u.mediating.ob(&find_obj(&absorbed));
            if lhs != rhs {
                report.push("pmc.right-equivariance", format!("{t} against {obj}"));
            }
        }
        // Inner equivariance: a middle proarrow absorbed by either neighbour.
        for i in 0..k - 1 {
            let mid = u.sources[i].tgt_p.total();
            for w in mid.proarrows().iter() {
                if u.sources[i].leg1.ob(&parts[i]) != mid.src.ob(w)
                    || mid.tgt.ob(w) != u.sources[i + 1].leg0.ob(&parts[i + 1])
                {
                    continue;
                }
                let mut right = parts.clone();
                right[i] = u.sources[i].act_r(&parts[i], w).to_string();
                let mut left = parts.clone();
                left[i + 1] = u.sources[i + 1].act_l(w, &parts[i + 1]).to_string();
                let lhs = u.mediating.ob(&find_obj(&right));
                let rhs = u.mediating.ob(&find_obj(&left));
                if lhs != rhs {
                    report.push(
                        "pmc.inner-equivariance",
                        format!("{w} between slots {i} of {obj}"),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Substitute inner multicells into an outer one.
pub fn compose_prof_multicells(
    outer: &ProfMulticell,
    inners: &[ProfMulticell],
) -> Result<ProfMulticell> {
    let k = outer.arity();
    if inners.len() != k {
        return Err(Error::FrameMismatch(format!(
            "outer arity {k} but {} inner multicells",
            inners.len()
        )));
    }
    if k == 0 {
        return Ok(outer.clone());
    }
    for (j, nu) in inners.iter().enumerate() {
        if nu.target != outer.sources[j] {
            return Err(Error::FrameMismatch(format!(
                "inner {j} does not target outer source {j}"
            )));
        }
    }
    for j in 0..k - 1 {
        if inners[j].right_b != inners[j + 1].left_b {
            return Err(Error::FrameMismatch(format!(
                "inner boundaries {j} and {} do not agree",
                j + 1
            )));
        }
    }
    let sources: Vec<InternalProfunctor> =
        inners.iter().flat_map(|nu| nu.sources.clone()).collect();
    let left_b = compose_double_functors(&outer.left_b, &inners[0].left_b)?;
    let right_b = compose_double_functors(&outer.right_b, &inners[k - 1].right_b)?;
    let arities: Vec<usize> = inners.iter().map(|nu| nu.arity()).collect();
    let total: usize = arities.iter().sum();
    let n = &outer.target;
    let (outer_dom, outer_projs) = outer.chain_domain()?;

    if total == 0 {
        // Every inner nullary: the composite is nullary on the shared total.
        let e = &inners[0].left_b.src_dc;
        let mut ob_table = BTreeMap::new();
        let mut mor_table = BTreeMap::new();
        let glue = |apply: &dyn Fn(&ProfMulticell, &str) -> String, x: &str| -> String {
            let pieces: Vec<String> = inners.iter().map(|nu| apply(nu, x)).collect();
            pieces.into_iter().fold(String::new(), |acc, p| {
                if acc.is_empty() {
                    p
                } else {
                    pair_id(&acc, &p)
                }
            })
        };
        for x in e.d0.objects.iter() {
            let id = glue(&|nu, x| nu.mediating.ob(x).to_string(), x);
            ob_table.insert(x.clone(), outer.mediating.ob(&id).to_string());
        }
        for f in e.d0.morphisms.iter() {
            let id = glue(&|nu, f| nu.mediating.mor(f).to_string(), f);
            mor_table.insert(f.clone(), outer.mediating.mor(&id).to_string());
        }
        let mediating = FinFunctor::new(
            e.d0.clone(),
            n.carrier.clone(),
            FinFn::new(e.d0.objects.clone(), n.carrier.objects.clone(), ob_table)?,
            FinFn::new(e.d0.morphisms.clone(), n.carrier.morphisms.clone(), mor_table)?,
        )?;
        return Ok(ProfMulticell {
            sources,
            target: n.clone(),
            left_b,
            right_b,
            mediating,
        });
    }

    // Build the big chain domain over the concatenated sources.
    let composed_frame = ProfMulticell {
        sources: sources.clone(),
        target: n.clone(),
        left_b: left_b.clone(),
        right_b: right_b.clone(),
        mediating: outer.mediating.clone(), // placeholder, replaced below
    };
    let (dom, projs) = composed_frame.chain_domain()?;
    let inner_doms: Vec<(FinCategory, Vec<FinFunctor>)> = inners
        .iter()
        .map(|nu| {
            if nu.arity() == 0 {
                let e = nu.target.src_p.total();
                Ok((e.d0.clone(), vec![]))
            } else {
                nu.chain_domain()
            }
        })
        .collect::<Result<Vec<_>>>()?;
    // A lookup from component lists to chain identifiers, per category.
    let find_in = |cat: &FinCategory, prs: &[FinFunctor], parts: &[String], morphism: bool| -> String {
        let pool = if morphism { cat.morphisms.iter() } else { cat.objects.iter() };
        for cand in pool {
            let comps: Vec<String> = prs
                .iter()
                .map(|p| if morphism { p.mor(cand).to_string() } else { p.ob(cand).to_string() })
                .collect();
            if comps == parts {
                return cand.clone();
            }
        }
        panic!("no chain element with the requested components");
    };
    let image = |id: &str, morphism: bool| -> String {
        let parts: Vec<String> = projs
            .iter()
            .map(|p| if morphism { p.mor(id).to_string() } else { p.ob(id).to_string() })
            .collect();
        let mut offset = 0;
        let mut pieces = Vec::new();
        for (j, nu) in inners.iter().enumerate() {
            let r = arities[j];
            if r == 0 {
                // Junction: boundary of the neighbouring slot.
                let x = if offset > 0 {
                    let s = &sources[offset - 1];
                    if morphism {
                        s.leg1.mor(&parts[offset - 1]).to_string()
                    } else {
                        s.leg1.ob(&parts[offset - 1]).to_string()
                    }
                } else {
                    let s = &sources[offset];
                    if morphism {
                        s.leg0.mor(&parts[offset]).to_string()
                    } else {
                        s.leg0.ob(&parts[offset]).to_string()
                    }
                };
                pieces.push(if morphism {
                    nu.mediating.mor(&x).to_string()
                } else {
                    nu.mediating.ob(&x).to_string()
                });
            } else {
                let sub = &parts[offset..offset + r];
                let (cat, prs) = &inner_doms[j];
                let sub_id = find_in(cat, prs, sub, morphism);
                pieces.push(if morphism {
                    nu.mediating.mor(&sub_id).to_string()
                } else {
                    nu.mediating.ob(&sub_id).to_string()
                });
            }
            offset += r;
        }
        let outer_id = find_in(&outer_dom, &outer_projs, &pieces, morphism);
        if morphism {
            outer.mediating.mor(&outer_id).to_string()
        } else {
            outer.mediating.ob(&outer_id).to_string()
        }
    };
    let ob_table: BTreeMap<String, String> = dom
        .objects
        .iter()
        .map(|o| (o.clone(), image(o, false)))
        .collect();
    let mor_table: BTreeMap<String, String> = dom
        .morphisms
        .iter()
        .map(|f| (f.clone(), image(f, true)))
        .collect();
    let mediating = FinFunctor::new(
        dom.clone(),
        n.carrier.clone(),
        FinFn::new(dom.objects.clone(), n.carrier.objects.clone(), ob_table)?,
        FinFn::new(dom.morphisms.clone(), n.carrier.morphisms.clone(), mor_table)?,
    )?;
    Ok(ProfMulticell {
        sources,
        target: n.clone(),
        left_b,
        right_b,
        mediating,
    })
}

pub fn compose_double_functors(g: &DoubleFunctor, f: &DoubleFunctor) -> Result<DoubleFunctor> {
    DoubleFunctor::new(
        f.src_dc.clone(),
        g.tgt_dc.clone(),
        compose_functors(&g.f0, &f.f0)?,
        compose_functors(&g.f1, &f.f1)?,
    )
}

/// Restrict the carrier fiber over a proarrow `m`: the objects of the
/// carrier sitting over `m`.
pub fn carrier_fiber(m: &InternalProfunctor, pro: &str) -> Vec<String> {
    m.carrier
        .objects
        .iter()
        .filter(|o| m.mfun.ob(o) == pro)
        .cloned()
        .collect()
}

/// The transition along a cell of the base: the domain of the unique lift.
pub fn carrier_transition(m: &InternalProfunctor, cell: &str, t: &str) -> Result<String> {
    let lift = unique_lift(&m.mfun, t, cell)?;
    Ok(m.carrier.dom.apply(&lift).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dbl::{terminal_double, vertical_double, walking_proarrow};
    use crate::elements::el_functor;
    use crate::lax::{representable, terminal_lax};

    fn corpus_ddfs() -> Vec<DdfCandidate> {
        let mut out = vec![
            DdfCandidate { proj: DoubleFunctor::identity(&terminal_double()) },
            DdfCandidate { proj: DoubleFunctor::identity(&walking_proarrow()) },
        ];
        for b in [
            terminal_double(),
            vertical_double(&corpus::c2()),
            walking_proarrow(),
        ] {
            out.push(el_functor(&terminal_lax(&b)).unwrap());
            for x in b.objects().iter() {
                out.push(el_functor(&representable(&b, x).unwrap()).unwrap());
            }
        }
        out
    }

    #[test]
    fn unit_profunctors_validate() {
        for p in corpus_ddfs() {
            let m = unit_profunctor(&p).unwrap();
            let report = check_internal_profunctor(&m).unwrap();
            assert!(report.is_ok(), "{report}");
        }
    }

    #[test]
    fn unit_profunctor_on_terminal_identity_has_one_object() {
        let p = DdfCandidate { proj: DoubleFunctor::identity(&terminal_double()) };
        let m = unit_profunctor(&p).unwrap();
        assert_eq!(m.carrier.objects.len(), 1);
    }

    #[test]
    fn identity_multicell_validates() {
        for p in corpus_ddfs() {
            let m = unit_profunctor(&p).unwrap();
            let u = ProfMulticell::identity(&m);
            let report = check_prof_multicell(&u).unwrap();
            assert!(report.is_ok(), "{report}");
        }
    }

    /// External composition of a DDF's total category as the generic 2-ary
    /// multicell on its unit profunctor.
    fn ext_comp_multicell(p: &DdfCandidate) -> ProfMulticell {
        let m = unit_profunctor(p).unwrap();
        let u2 = ProfMulticell {
            sources: vec![m.clone(), m.clone()],
            target: m.clone(),
            left_b: DoubleFunctor::identity(p.total()),
            right_b: DoubleFunctor::identity(p.total()),
            mediating: m.left_act.clone(),
        };
        u2
    }

    /// The unit cell: objects of the total category index unit proarrows.
    fn unit_multicell(p: &DdfCandidate) -> ProfMulticell {
        let m = unit_profunctor(p).unwrap();
        let e = p.total();
        let mediating = FinFunctor::new(
            e.d0.clone(),
            e.d1.clone(),
            FinFn::from_fn(e.d0.objects.clone(), e.d1.objects.clone(), |x| {
                e.u_ob(x).to_string()
            })
            .unwrap(),
            FinFn::from_fn(e.d0.morphisms.clone(), e.d1.morphisms.clone(), |f| {
                e.u_ar(f).to_string()
            })
            .unwrap(),
        )
        .unwrap();
        ProfMulticell {
            sources: vec![],
            target: m,
            left_b: DoubleFunctor::identity(e),
            right_b: DoubleFunctor::identity(e),
            mediating,
        }
    }

    #[test]
    fn generic_multicells_validate() {
        for p in corpus_ddfs() {
            let report = check_prof_multicell(&ext_comp_multicell(&p)).unwrap();
            assert!(report.is_ok(), "2-ary: {report}");
            let report = check_prof_multicell(&unit_multicell(&p)).unwrap();
            assert!(report.is_ok(), "nullary: {report}");
        }
    }

    #[test]
    fn compose_with_identities_is_identity() {
        for p in corpus_ddfs().into_iter().take(4) {
            let u = ext_comp_multicell(&p);
            let id = ProfMulticell::identity(&unit_profunctor(&p).unwrap());
            let composed = compose_prof_multicells(&u, &[id.clone(), id.clone()]).unwrap();
            assert_eq!(composed.mediating, u.mediating);
            let outer_id = compose_prof_multicells(&id, &[u.clone()]).unwrap();
            assert_eq!(outer_id.mediating, u.mediating);
        }
    }

    #[test]
    fn composition_with_nullary_inner_is_unital() {
        let p = el_functor(&terminal_lax(&vertical_double(&corpus::c2()))).unwrap();
        let u = ext_comp_multicell(&p);
        let id = ProfMulticell::identity(&unit_profunctor(&p).unwrap());
        let unit = unit_multicell(&p);
        let composed = compose_prof_multicells(&u, &[unit.clone(), id.clone()]).unwrap();
        assert_eq!(composed.arity(), 1);
        assert!(check_prof_multicell(&composed).unwrap().is_ok());
        assert_eq!(composed.mediating, id.mediating);
        let composed_r = compose_prof_multicells(&u, &[id.clone(), unit]).unwrap();
        assert_eq!(composed_r.mediating, id.mediating);
    }

    #[test]
    fn composition_is_associative_on_a_corpus_triple() {
        let p = el_functor(&terminal_lax(&vertical_double(&corpus::c2()))).unwrap();
        let u = ext_comp_multicell(&p);
        let id = ProfMulticell::identity(&unit_profunctor(&p).unwrap());
        let three = compose_prof_multicells(&u, &[u.clone(), id.clone()]).unwrap();
        assert!(check_prof_multicell(&three).unwrap().is_ok());
        let left =
            compose_prof_multicells(&three, &[id.clone(), id.clone(), id.clone()]).unwrap();
        let inner1 = compose_prof_multicells(&u, &[id.clone(), id.clone()]).unwrap();
        let inner2 = compose_prof_multicells(&id, &[id.clone()]).unwrap();
        let right = compose_prof_multicells(&u, &[inner1, inner2]).unwrap();
        assert_eq!(left.mediating, right.mediating);
    }

    #[test]
    fn broken_action_is_rejected() {
        // Redirect the left action of a unit profunctor through a constant:
        // the composite lands over the wrong proarrow.
        let p = DdfCandidate { proj: DoubleFunctor::identity(&walking_proarrow()) };
        let mut m = unit_profunctor(&p).unwrap();
        let first = m.carrier.objects.elements()[0].clone();
        let first_mor = m.carrier.id.apply(&first).to_string();
        m.left_act = FinFunctor::new(
            m.left_act.src.clone(),
            m.carrier.clone(),
            FinFn::from_fn(m.left_act.src.objects.clone(), m.carrier.objects.clone(), |_| {
                first.clone()
            })
            .unwrap(),
            FinFn::from_fn(m.left_act.src.morphisms.clone(), m.carrier.morphisms.clone(), |_| {
                first_mor.clone()
            })
            .unwrap(),
        )
        .unwrap();
        let report = check_internal_profunctor(&m).unwrap();
        assert!(report.has_rule("prof.over-base"), "{report}");
    }

    #[test]
    fn inner_equivariance_breaker_is_rejected() {
        // Swap the mediating functor's output on one chain object of the
        // external-composition cell over the walking proarrow.
        let p = DdfCandidate { proj: DoubleFunctor::identity(&walking_proarrow()) };
        let u = ext_comp_multicell(&p);
        let mut bad = u.clone();
        // Send every chain object to the unit at A instead of the composite.
        let e = p.total();
        let target = e.u_ob("A").to_string();
        let mut table = bad.mediating.on_objects.table().clone();
        let changed: Vec<String> = table
            .iter()
            .filter(|(_, v)| *v == "m")
            .map(|(k, _)| k.clone())
            .collect();
        assert!(!changed.is_empty());
        for k in changed {
            table.insert(k, target.clone());
        }
        bad.mediating.on_objects = FinFn::new(
            bad.mediating.on_objects.dom().clone(),
            bad.mediating.on_objects.cod().clone(),
            table,
        )
        .unwrap();
        let report = check_prof_multicell(&bad).unwrap();
        assert!(!report.is_ok());
    }
}
