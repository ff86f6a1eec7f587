//! Modules between lax span-valued functors and multimodulations between
//! them: the proarrows and multicells of the virtual double category of lax
//! functors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finset::{chain_vertex, compose_spans, pair_id, FinFn, Span};
use crate::lax::{LaxSpanFunctor, LaxTransformation};
use crate::report::Report;

/// A module `M : F ⇸ G`: a span `FA ⇸ GB` for every proarrow `m : A ⇸ B`,
/// contravariant vertex maps for cells, and two-sided actions of the laxity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    pub src_f: LaxSpanFunctor,
    pub tgt_f: LaxSpanFunctor,
    /// `m ↦ Mm : FA ⇸ GB`.
    pub on_proarrow: BTreeMap<String, Span>,
    /// `θ : m ⇒ n ↦ Mθ : vertex(Mn) → vertex(Mm)`.
    pub on_cell: BTreeMap<String, FinFn>,
    /// `(m,n) ↦ λ : vertex(Fm ; Mn) → vertex(M(n⊗m))`.
    pub left_act: BTreeMap<(String, String), FinFn>,
    /// `(m,n) ↦ ρ : vertex(Mm ; Gn) → vertex(M(n⊗m))`.
    pub right_act: BTreeMap<(String, String), FinFn>,
}

impl Module {
    pub fn base(&self) -> &crate::dbl::DoubleCategory {
        &self.src_f.base
    }

    pub fn m_pro(&self, m: &str) -> &Span {
        &self.on_proarrow[m]
    }

    pub fn m_cell(&self, th: &str) -> &FinFn {
        &self.on_cell[th]
    }

    pub fn lam(&self, m: &str, n: &str) -> &FinFn {
        &self.left_act[&(m.to_string(), n.to_string())]
    }

    pub fn rho(&self, m: &str, n: &str) -> &FinFn {
        &self.right_act[&(m.to_string(), n.to_string())]
    }

    pub fn apply_lam(&self, m: &str, n: &str, s: &str, r: &str) -> &str {
        self.lam(m, n).apply(&pair_id(s, r))
    }

    pub fn apply_rho(&self, m: &str, n: &str, r: &str, t: &str) -> &str {
        self.rho(m, n).apply(&pair_id(r, t))
    }
}

/// The unit module on `F`: carrier `F` itself, both actions the laxity.
pub fn unit_module(f: &LaxSpanFunctor) -> Module {
    Module {
        src_f: f.clone(),
        tgt_f: f.clone(),
        on_proarrow: f.on_proarrow.clone(),
        on_cell: f.on_cell.clone(),
        left_act: f.comp_lax.clone(),
        right_act: f.comp_lax.clone(),
    }
}

fn check_module_shape(m: &Module) -> Report {
    let mut report = Report::ok();
    let b = m.base();
    for p in b.proarrows().iter() {
        match m.on_proarrow.get(p) {
            None => report.push("module.shape", format!("no span at {p}")),
            Some(s) => {
                let a = b.src.ob(p);
                let c = b.tgt.ob(p);
                if s.left() != m.src_f.f_ob(a) || s.right() != m.tgt_f.f_ob(c) {
                    report.push("module.shape", format!("span at {p} has the wrong boundary"));
                }
            }
        }
    }
    if !report.is_ok() {
        return report;
    }
    for th in b.cells().iter() {
        let dom_pro = b.d1.dom.apply(th);
        let cod_pro = b.d1.cod.apply(th);
        match m.on_cell.get(th) {
            None => report.push("module.shape", format!("no vertex map at cell {th}")),
            Some(v) => {
                if v.dom() != m.m_pro(cod_pro).vertex() || v.cod() != m.m_pro(dom_pro).vertex() {
                    report.push("module.shape", format!("vertex map at {th} has the wrong boundary"));
                }
            }
        }
    }
    for (p, q) in b.composable_pro_pairs() {
        let target = b.pro_comp(&p, &q).unwrap();
        match m.left_act.get(&(p.clone(), q.clone())) {
            None => report.push("module.shape", format!("no left action at ({p},{q})")),
            Some(l) => {
                let dom = compose_spans(m.src_f.f_pro(&p), m.m_pro(&q)).unwrap();
                if l.dom() != dom.vertex() || l.cod() != m.m_pro(target).vertex() {
                    report.push("module.shape", format!("left action at ({p},{q}) has the wrong boundary"));
                }
            }
        }
        match m.right_act.get(&(p.clone(), q.clone())) {
            None => report.push("module.shape", format!("no right action at ({p},{q})")),
            Some(r) => {
                let dom = compose_spans(m.m_pro(&p), m.tgt_f.f_pro(&q)).unwrap();
                if r.dom() != dom.vertex() || r.cod() != m.m_pro(target).vertex() {
                    report.push("module.shape", format!("right action at ({p},{q}) has the wrong boundary"));
                }
            }
        }
    }
    report
}

pub fn check_module(m: &Module) -> Result<Report> {
    if m.src_f.base != m.tgt_f.base {
        return Err(Error::BaseMismatch(
            "module endpoints live over different bases".into(),
        ));
    }
    let shape = check_module_shape(m);
    if !shape.is_ok() {
        return Ok(shape);
    }
    let mut report = Report::ok();
    let b = m.base();
    // Functoriality of the cell assignment.
    for p in b.proarrows().iter() {
        if m.m_cell(b.d1.id.apply(p)) != &FinFn::identity(m.m_pro(p).vertex()) {
            report.push("module.functoriality", format!("identity cell at {p}"));
        }
    }
    for ((ps, th), comp) in &b.d1.comp {
        let lhs = m.m_cell(comp);
        let rhs = crate::finset::compose_fn(m.m_cell(th), m.m_cell(ps)).unwrap();
        if lhs != &rhs {
            report.push("module.functoriality", format!("cell composite ({ps},{th})"));
        }
    }
    // Outer components of cells are the functor transitions.
    for th in b.cells().iter() {
        let p = b.d1.dom.apply(th);
        let q = b.d1.cod.apply(th);
        let fstar = m.src_f.f_ar(b.src.mor(th));
        let gstar = m.tgt_f.f_ar(b.tgt.mor(th));
        for t in m.m_pro(q).vertex().iter() {
            let s = m.m_cell(th).apply(t);
            if m.m_pro(p).leg0().apply(s) != fstar.apply(m.m_pro(q).leg0().apply(t)) {
                report.push("module.cell-legs", format!("{th} at {t} (left)"));
            }
            if m.m_pro(p).leg1().apply(s) != gstar.apply(m.m_pro(q).leg1().apply(t)) {
                report.push("module.cell-legs", format!("{th} at {t} (right)"));
            }
        }
    }
    // Action legs pass through the outer elements.
    for ((p, q), l) in &m.left_act {
        let dom = compose_spans(m.src_f.f_pro(p), m.m_pro(q)).unwrap();
        let target = m.m_pro(b.pro_comp(p, q).unwrap());
        for pr in dom.vertex().iter() {
            let out = l.apply(pr);
            let (s, r) = crate::dbl::split_pair(pr);
            if target.leg0().apply(out) != m.src_f.f_pro(p).leg0().apply(&s) {
                report.push("module.action-legs", format!("λ({p},{q}) at {pr} (left)"));
            }
            if target.leg1().apply(out) != m.m_pro(q).leg1().apply(&r) {
                report.push("module.action-legs", format!("λ({p},{q}) at {pr} (right)"));
            }
        }
    }
    for ((p, q), rr) in &m.right_act {
        let dom = compose_spans(m.m_pro(p), m.tgt_f.f_pro(q)).unwrap();
        let target = m.m_pro(b.pro_comp(p, q).unwrap());
        for pr in dom.vertex().iter() {
            let out = rr.apply(pr);
            let (r, t) = crate::dbl::split_pair(pr);
            if target.leg0().apply(out) != m.m_pro(p).leg0().apply(&r) {
                report.push("module.action-legs", format!("ρ({p},{q}) at {pr} (left)"));
            }
            if target.leg1().apply(out) != m.tgt_f.f_pro(q).leg1().apply(&t) {
                report.push("module.action-legs", format!("ρ({p},{q}) at {pr} (right)"));
            }
        }
    }
    // Deeper equations apply actions to intermediate results, which is only
    // meaningful once the leg equations hold.
    if !report.is_ok() {
        return Ok(report);
    }
    // Naturality of the actions against external composites of cells.
    for (al, be) in b.composable_cell_pairs() {
        let p = b.d1.dom.apply(&al);
        let q = b.d1.dom.apply(&be);
        let pp = b.d1.cod.apply(&al);
        let qq = b.d1.cod.apply(&be);
        let composite = b.cell_comp(&al, &be).unwrap();
        // Left: M(β⊗α)(λ(s,r)) = λ(Fα s, Mβ r).
        let top = compose_spans(m.src_f.f_pro(pp), m.m_pro(qq)).unwrap();
        for pr in top.vertex().iter() {
            let (s, r) = crate::dbl::split_pair(pr);
            let lhs = m.m_cell(composite).apply(m.apply_lam(pp, qq, &s, &r));
            let rhs = m.apply_lam(p, q, m.src_f.f_cell(&al).apply(&s), m.m_cell(&be).apply(&r));
            if lhs != rhs {
                report.push("module.naturality", format!("λ at cells ({al},{be}), ({s},{r})"));
            }
        }
        // Right: M(β⊗α)(ρ(r,t)) = ρ(Mα r, Gβ t).
        let top = compose_spans(m.m_pro(pp), m.tgt_f.f_pro(qq)).unwrap();
        for pr in top.vertex().iter() {
            let (r, t) = crate::dbl::split_pair(pr);
            let lhs = m.m_cell(composite).apply(m.apply_rho(pp, qq, &r, &t));
            let rhs = m.apply_rho(p, q, m.m_cell(&al).apply(&r), m.tgt_f.f_cell(&be).apply(&t));
            if lhs != rhs {
                report.push("module.naturality", format!("ρ at cells ({al},{be}), ({r},{t})"));
            }
        }
    }
    // Associativity with the laxity of each endpoint.
    for (p, q) in b.composable_pro_pairs() {
        for w in b.proarrows().iter() {
            if b.tgt.ob(&q) != b.src.ob(w) {
                continue;
            }
            let qp = b.pro_comp(&p, &q).unwrap();
            let wq = b.pro_comp(&q, w).unwrap();
            // λ(s, λ(t, r)) = λ(φ_F(s,t), r).
            let spans = [m.src_f.f_pro(&p), m.src_f.f_pro(&q), m.m_pro(w)];
            for tuple in &chain_vertex(&spans).unwrap().tuples {
                let (s, t, r) = (&tuple[0], &tuple[1], &tuple[2]);
                let lhs = m.apply_lam(&p, wq, s, m.apply_lam(&q, w, t, r));
                let rhs = m.apply_lam(qp, w, m.src_f.apply_phi(&p, &q, s, t), r);
                if lhs != rhs {
                    report.push("module.associativity", format!("λ at ({p},{q},{w}), ({s},{t},{r})"));
                }
            }
            // ρ(ρ(r, t), v) = ρ(r, φ_G(t, v)).
            let spans = [m.m_pro(&p), m.tgt_f.f_pro(&q), m.tgt_f.f_pro(w)];
            for tuple in &chain_vertex(&spans).unwrap().tuples {
                let (r, t, v) = (&tuple[0], &tuple[1], &tuple[2]);
                let lhs = m.apply_rho(qp, w, m.apply_rho(&p, &q, r, t), v);
                let rhs = m.apply_rho(&p, wq, r, m.tgt_f.apply_phi(&q, w, t, v));
                if lhs != rhs {
                    report.push("module.associativity", format!("ρ at ({p},{q},{w}), ({r},{t},{v})"));
                }
            }
            // Compatibility: λ(s, ρ(r, t)) = ρ(λ(s, r), t).
            let spans = [m.src_f.f_pro(&p), m.m_pro(&q), m.tgt_f.f_pro(w)];
            for tuple in &chain_vertex(&spans).unwrap().tuples {
                let (s, r, t) = (&tuple[0], &tuple[1], &tuple[2]);
                let lhs = m.apply_lam(&p, wq, s, m.apply_rho(&q, w, r, t));
                let rhs = m.apply_rho(qp, w, m.apply_lam(&p, &q, s, r), t);
                if lhs != rhs {
                    report.push("module.compatibility", format!("({p},{q},{w}), ({s},{r},{t})"));
                }
            }
        }
    }
    // Unit laws.
    for p in b.proarrows().iter() {
        let a = b.src.ob(p);
        let c = b.tgt.ob(p);
        let ua = b.u_ob(a);
        let uc = b.u_ob(c);
        for r in m.m_pro(p).vertex().iter() {
            let x = m.m_pro(p).leg0().apply(r);
            if m.apply_lam(ua, p, m.src_f.phi(a).apply(x), r) != r {
                report.push("module.unit", format!("λ at {p}, element {r}"));
            }
            let y = m.m_pro(p).leg1().apply(r);
            if m.apply_rho(p, uc, r, m.tgt_f.phi(c).apply(y)) != r {
                report.push("module.unit", format!("ρ at {p}, element {r}"));
            }
        }
    }
    Ok(report)
}

/// A multimodulation `(M₁,…,M_k) ⇒ N` with vertical legs `τ, σ`. For `k = 0`
/// the components are indexed by base objects instead of paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multimodulation {
    pub sources: Vec<Module>,
    pub target: Module,
    pub left_leg: LaxTransformation,
    pub right_leg: LaxTransformation,
    /// `k ≥ 1`: path `(m₁,…,m_k)` ↦ map from the chain vertex of the
    /// `Mᵢ mᵢ` to `vertex(N(m_k ⊗ … ⊗ m₁))`.
    pub components: BTreeMap<Vec<String>, FinFn>,
    /// `k = 0`: object `A` ↦ map `FA → vertex(N u_A)`.
    pub nullary: BTreeMap<String, FinFn>,
}

impl Multimodulation {
    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn base(&self) -> &crate::dbl::DoubleCategory {
        self.target.base()
    }

    /// The identity 1-ary multimodulation on a module.
    pub fn identity(m: &Module) -> Self {
        let components = m
            .base()
            .proarrows()
            .iter()
            .map(|p| (vec![p.clone()], FinFn::identity(m.m_pro(p).vertex())))
            .collect();
        Multimodulation {
            sources: vec![m.clone()],
            target: m.clone(),
            left_leg: LaxTransformation::identity(&m.src_f),
            right_leg: LaxTransformation::identity(&m.tgt_f),
            components,
            nullary: BTreeMap::new(),
        }
    }
}

/// Composable proarrow paths of exactly length `k`, in lexicographic
/// enumeration order.
pub fn proarrow_paths(b: &crate::dbl::DoubleCategory, k: usize) -> Vec<Vec<String>> {
    let mut paths: Vec<Vec<String>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for path in &paths {
            for p in b.proarrows().iter() {
                if let Some(last) = path.last() {
                    if b.tgt.ob(last) != b.src.ob(p) {
                        continue;
                    }
                }
                let mut np = path.clone();
                np.push(p.clone());
                next.push(np);
            }
        }
        paths = next;
    }
    paths
}

/// Fold a nonempty path into its external composite proarrow.
pub fn path_composite(b: &crate::dbl::DoubleCategory, path: &[String]) -> String {
    let mut acc = path[0].clone();
    for p in &path[1..] {
        acc = b.pro_comp(&acc, p).unwrap().to_string();
    }
    acc
}

fn frame_report(mu: &Multimodulation) -> Result<()> {
    let n = &mu.target;
    let k = mu.arity();
    if mu.left_leg.tgt != n.src_f {
        return Err(Error::FrameMismatch("left leg does not land in the target's source".into()));
    }
    if mu.right_leg.tgt != n.tgt_f {
        return Err(Error::FrameMismatch("right leg does not land in the target's target".into()));
    }
    if k == 0 {
        if mu.left_leg.src != mu.right_leg.src {
            return Err(Error::FrameMismatch("nullary legs start at different functors".into()));
        }
    } else {
        if mu.left_leg.src != mu.sources[0].src_f {
            return Err(Error::FrameMismatch("left leg does not start at the first source".into()));
        }
        if mu.right_leg.src != mu.sources[k - 1].tgt_f {
            return Err(Error::FrameMismatch("right leg does not start at the last source".into()));
        }
        for i in 0..k - 1 {
            if mu.sources[i].tgt_f != mu.sources[i + 1].src_f {
                return Err(Error::FrameMismatch(format!(
                    "sources {i} and {} do not chain",
                    i + 1
                )));
            }
        }
    }
    for m in std::iter::once(&mu.target).chain(mu.sources.iter()) {
        if m.base() != mu.base() {
            return Err(Error::FrameMismatch("mixed bases in the frame".into()));
        }
    }
    Ok(())
}

/// Spans of the sources along a path, for building the chain domain.
fn path_spans<'a>(mu: &'a Multimodulation, path: &[String]) -> Vec<&'a Span> {
    mu.sources
        .iter()
        .zip(path)
        .map(|(m, p)| m.m_pro(p))
        .collect()
}

pub fn check_multimodulation(mu: &Multimodulation) -> Result<Report> {
    frame_report(mu)?;
    let mut report = Report::ok();
    let b = mu.base();
    let n = &mu.target;
    let k = mu.arity();
    if k == 0 {
        for a in b.objects().iter() {
            let f = &mu.left_leg.src;
            match mu.nullary.get(a) {
                None => report.push("mmod.shape", format!("no nullary component at {a}")),
                Some(c) => {
                    let target_vertex = n.m_pro(b.u_ob(a)).vertex();
                    if c.dom() != f.f_ob(a) || c.cod() != target_vertex {
                        report.push("mmod.shape", format!("nullary component at {a} has the wrong boundary"));
                    }
                }
            }
        }
        if !report.is_ok() {
            return Ok(report);
        }
        let f = mu.left_leg.src.clone();
        // Legs.
        for a in b.objects().iter() {
            let ua = b.u_ob(a);
            for x in f.f_ob(a).iter() {
                let out = mu.nullary[a].apply(x);
                if n.m_pro(ua).leg0().apply(out) != mu.left_leg.tau_ob(a).apply(x) {
                    report.push("mmod.legs", format!("nullary at {a}, element {x} (left)"));
                }
                if n.m_pro(ua).leg1().apply(out) != mu.right_leg.tau_ob(a).apply(x) {
                    report.push("mmod.legs", format!("nullary at {a}, element {x} (right)"));
                }
            }
        }
        // The equations below feed component outputs into actions and
        // transitions, which is only meaningful once the legs hold.
        if !report.is_ok() {
            return Ok(report);
        }
        // Naturality over base arrows through unit cells.
        for ar in b.arrows().iter() {
            let a = b.d0.dom.apply(ar);
            let c = b.d0.cod.apply(ar);
            for y in f.f_ob(c).iter() {
                let lhs = n.m_cell(b.u_ar(ar)).apply(mu.nullary[c].apply(y));
                let rhs = mu.nullary[a].apply(f.f_ar(ar).apply(y));
                if lhs != rhs {
                    report.push("mmod.naturality", format!("nullary at arrow {ar}, element {y}"));
                }
            }
        }
        // Combined equivariance: absorbing an element of Fx on either side
        // agrees.
        for x in b.proarrows().iter() {
            let a = b.src.ob(x);
            let c = b.tgt.ob(x);
            let ua = b.u_ob(a);
            let uc = b.u_ob(c);
            for w in f.f_pro(x).vertex().iter() {
                let lw = f.f_pro(x).leg0().apply(w);
                let rw = f.f_pro(x).leg1().apply(w);
                let lhs = n.apply_lam(x, uc, mu.left_leg.tau_pro(x).apply(w), mu.nullary[c].apply(rw));
                let rhs = n.apply_rho(ua, x, mu.nullary[a].apply(lw), mu.right_leg.tau_pro(x).apply(w));
                if lhs != rhs {
                    report.push("mmod.nullary-equivariance", format!("proarrow {x}, element {w}"));
                }
            }
        }
        return Ok(report);
    }

    // k ≥ 1: components at every composable path of length k.
    for path in proarrow_paths(b, k) {
        let spans = path_spans(mu, &path);
        let chain = chain_vertex(&spans).unwrap();
        let target_vertex = n.m_pro(&path_composite(b, &path)).vertex();
        match mu.components.get(&path) {
            None => report.push("mmod.shape", format!("no component at path {path:?}")),
            Some(c) => {
                if c.dom() != &chain.set || c.cod() != target_vertex {
                    report.push("mmod.shape", format!("component at {path:?} has the wrong boundary"));
                }
            }
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    // Legs.
    for (path, c) in &mu.components {
        let spans = path_spans(mu, path);
        let chain = chain_vertex(&spans).unwrap();
        let target = n.m_pro(&path_composite(b, path));
        let a = b.src.ob(&path[0]);
        let z = b.tgt.ob(&path[k - 1]);
        for (id, tuple) in chain.set.iter().zip(&chain.tuples) {
            let out = c.apply(id);
            let first = mu.sources[0].m_pro(&path[0]).leg0().apply(&tuple[0]);
            if target.leg0().apply(out) != mu.left_leg.tau_ob(a).apply(first) {
                report.push("mmod.legs", format!("{path:?} at {id} (left)"));
            }
            let last = mu.sources[k - 1].m_pro(&path[k - 1]).leg1().apply(&tuple[k - 1]);
            if target.leg1().apply(out) != mu.right_leg.tau_ob(z).apply(last) {
                report.push("mmod.legs", format!("{path:?} at {id} (right)"));
            }
        }
    }
    // The equations below feed component outputs into actions and
    // transitions, which is only meaningful once the legs hold.
    if !report.is_ok() {
        return Ok(report);
    }
    // Naturality over chains of externally chained cells: for each path of
    // cells (θ₁,…,θ_k) whose frames chain, N(θ_k⊗…⊗θ₁) after the component
    // at the codomain path equals the component at the domain path after the
    // source maps.
    let mut cell_paths: Vec<Vec<String>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for path in &cell_paths {
            for th in b.cells().iter() {
                if let Some(last) = path.last() {
                    if b.tgt.mor(last) != b.src.mor(th) {
                        continue;
                    }
                }
                let mut np = path.clone();
                np.push(th.clone());
                next.push(np);
            }
        }
        cell_paths = next;
    }
    for cells in &cell_paths {
        let dom_path: Vec<String> = cells.iter().map(|th| b.d1.dom.apply(th).to_string()).collect();
        let cod_path: Vec<String> = cells.iter().map(|th| b.d1.cod.apply(th).to_string()).collect();
        let mut composite_cell = cells[0].clone();
        for th in &cells[1..] {
            composite_cell = b.cell_comp(&composite_cell, th).unwrap().to_string();
        }
        let cod_spans = path_spans(mu, &cod_path);
        let chain = chain_vertex(&cod_spans).unwrap();
        for (id, tuple) in chain.set.iter().zip(&chain.tuples) {
            let lhs = n.m_cell(&composite_cell).apply(mu.components[&cod_path].apply(id));
            // Map each tuple slot down and re-index in the domain chain.
            let mapped: Vec<String> = tuple
                .iter()
                .zip(cells)
                .enumerate()
                .map(|(i, (t, th))| mu.sources[i].m_cell(th).apply(t).to_string())
                .collect();
            let dom_chain = chain_vertex(&path_spans(mu, &dom_path)).unwrap();
            let idx = dom_chain
                .tuples
                .iter()
                .position(|t| t == &mapped)
                .expect("mapped tuple is composable");
            let rhs = mu.components[&dom_path].apply(&dom_chain.set.elements()[idx]);
            if lhs != rhs {
                report.push("mmod.naturality", format!("cells {cells:?} at {id}"));
            }
        }
    }
    // Left equivariance: absorbing an F⁰-element before the first slot.
    for x in b.proarrows().iter() {
        for path in proarrow_paths(b, k) {
            if b.tgt.ob(x) != b.src.ob(&path[0]) {
                continue;
            }
            let f0 = &mu.sources[0].src_f;
            let mut absorbed_path = path.clone();
            absorbed_path[0] = b.pro_comp(x, &path[0]).unwrap().to_string();
            let spans = path_spans(mu, &path);
            let chain = chain_vertex(&spans).unwrap();
            let comp_pro = path_composite(b, &path);
            for w in f0.f_pro(x).vertex().iter() {
                for (id, tuple) in chain.set.iter().zip(&chain.tuples) {
                    if mu.sources[0].m_pro(&path[0]).leg0().apply(&tuple[0])
                        != f0.f_pro(x).leg1().apply(w)
                    {
                        continue;
                    }
                    let lhs = n.apply_lam(
                        x,
                        &comp_pro,
                        mu.left_leg.tau_pro(x).apply(w),
                        mu.components[&path].apply(id),
                    );
                    let mut absorbed = tuple.clone();
                    absorbed[0] = mu.sources[0]
                        .apply_lam(x, &path[0], w, &tuple[0])
                        .to_string();
                    let a_chain = chain_vertex(&path_spans(mu, &absorbed_path)).unwrap();
                    let idx = a_chain
                        .tuples
                        .iter()
                        .position(|t| t == &absorbed)
                        .expect("absorbed tuple is composable");
                    let rhs = mu.components[&absorbed_path].apply(&a_chain.set.elements()[idx]);
                    if lhs != rhs {
                        report.push("mmod.left-equivariance", format!("{x} before {path:?} at {id}"));
                    }
                }
            }
        }
    }
    // Right equivariance: absorbing an F^k-element after the last slot.
    for y in b.proarrows().iter() {
        for path in proarrow_paths(b, k) {
            if b.tgt.ob(&path[k - 1]) != b.src.ob(y) {
                continue;
            }
            let fk = &mu.sources[k - 1].tgt_f;
            let mut absorbed_path = path.clone();
            absorbed_path[k - 1] = b.pro_comp(&path[k - 1], y).unwrap().to_string();
            let spans = path_spans(mu, &path);
            let chain = chain_vertex(&spans).unwrap();
            let comp_pro = path_composite(b, &path);
            for v in fk.f_pro(y).vertex().iter() {
                for (id, tuple) in chain.set.iter().zip(&chain.tuples) {
                    if mu.sources[k - 1].m_pro(&path[k - 1]).leg1().apply(&tuple[k - 1])
                        != fk.f_pro(y).leg0().apply(v)
                    {
                        continue;
                    }
                    let lhs = n.apply_rho(
                        &comp_pro,
                        y,
                        mu.components[&path].apply(id),
                        mu.right_leg.tau_pro(y).apply(v),
                    );
                    let mut absorbed = tuple.clone();
                    absorbed[k - 1] = mu.sources[k - 1]
                        .apply_rho(&path[k - 1], y, &tuple[k - 1], v)
                        .to_string();
                    let a_chain = chain_vertex(&path_spans(mu, &absorbed_path)).unwrap();
                    let idx = a_chain
                        .tuples
                        .iter()
                        .position(|t| t == &absorbed)
                        .expect("absorbed tuple is composable");
                    let rhs = mu.components[&absorbed_path].apply(&a_chain.set.elements()[idx]);
                    if lhs != rhs {
                        report.push("mmod.right-equivariance", format!("{y} after {path:?} at {id}"));
                    }
                }
            }
        }
    }
    // Inner equivariance: an element inserted between slots i and i+1 may be
    // absorbed by either neighbour.
    for i in 0..k.saturating_sub(1) {
        let fi = mu.sources[i].tgt_f.clone();
        for x in b.proarrows().iter() {
            for path in proarrow_paths(b, k) {
                if b.tgt.ob(&path[i]) != b.src.ob(x) || b.tgt.ob(x) != b.src.ob(&path[i + 1]) {
                    continue;
                }
                let mut right_path = path.clone();
                right_path[i] = b.pro_comp(&path[i], x).unwrap().to_string();
                let mut left_path = path.clone();
                left_path[i + 1] = b.pro_comp(x, &path[i + 1]).unwrap().to_string();
                let chain = chain_vertex(&path_spans(mu, &path)).unwrap();
                for w in fi.f_pro(x).vertex().iter() {
                    for tuple in &chain.tuples {
                        if mu.sources[i].m_pro(&path[i]).leg1().apply(&tuple[i])
                            != fi.f_pro(x).leg0().apply(w)
                            || mu.sources[i + 1].m_pro(&path[i + 1]).leg0().apply(&tuple[i + 1])
                                != fi.f_pro(x).leg1().apply(w)
                        {
                            continue;
                        }
                        let mut right_tuple = tuple.clone();
                        right_tuple[i] = mu.sources[i]
                            .apply_rho(&path[i], x, &tuple[i], w)
                            .to_string();
                        let r_chain = chain_vertex(&path_spans(mu, &right_path)).unwrap();
                        let ridx = r_chain
                            .tuples
                            .iter()
                            .position(|t| t == &right_tuple)
                            .expect("right-absorbed tuple is composable");
                        let lhs = mu.components[&right_path].apply(&r_chain.set.elements()[ridx]);
                        let mut left_tuple = tuple.clone();
                        left_tuple[i + 1] = mu.sources[i + 1]
                            .apply_lam(x, &path[i + 1], w, &tuple[i + 1])
                            .to_string();
                        let l_chain = chain_vertex(&path_spans(mu, &left_path)).unwrap();
                        let lidx = l_chain
                            .tuples
                            .iter()
                            .position(|t| t == &left_tuple)
                            .expect("left-absorbed tuple is composable");
                        let rhs = mu.components[&left_path].apply(&l_chain.set.elements()[lidx]);
                        if lhs != rhs {
                            report.push(
                                "mmod.inner-equivariance",
                                format!("{x} between slots {i} of {path:?}, element {w}"),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Substitute inner multimodulations into an outer one: the component at a
/// concatenated path applies each inner component slot-group-wise, with
/// nullary inners fed the junction element.
pub fn compose_multimodulations(
    outer: &Multimodulation,
    inners: &[Multimodulation],
) -> Result<Multimodulation> {
    let k = outer.arity();
    if inners.len() != k {
        return Err(Error::FrameMismatch(format!(
            "outer arity {k} but {} inner multimodulations",
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
        if inners[j].right_leg != inners[j + 1].left_leg {
            return Err(Error::FrameMismatch(format!(
                "inner legs {j} and {} do not share a boundary",
                j + 1
            )));
        }
    }
    let b = outer.base();
    let sources: Vec<Module> = inners.iter().flat_map(|nu| nu.sources.clone()).collect();
    let left_leg = crate::lax::compose_transformations(&outer.left_leg, &inners[0].left_leg)?;
    let right_leg =
        crate::lax::compose_transformations(&outer.right_leg, &inners[k - 1].right_leg)?;
    let total_arity: usize = inners.iter().map(|nu| nu.arity()).sum();
    let arities: Vec<usize> = inners.iter().map(|nu| nu.arity()).collect();

    let result_sources = sources;
    let mut components = BTreeMap::new();
    let mut nullary = BTreeMap::new();
    if total_arity == 0 {
        // Every inner is nullary; the composite is nullary too.
        let f = inners[0].left_leg.src.clone();
        for a in b.objects().iter() {
            let ua = b.u_ob(a).to_string();
            let unit_path: Vec<String> = vec![ua.clone(); k];
            let target_vertex = outer.target.m_pro(b.u_ob(a)).vertex().clone();
            let table = f
                .f_ob(a)
                .iter()
                .map(|x| {
                    let pieces: Vec<String> = inners
                        .iter()
                        .map(|nu| nu.nullary[a].apply(x).to_string())
                        .collect();
                    let chain =
                        chain_vertex(&outer.sources.iter().map(|m| m.m_pro(&ua)).collect::<Vec<_>>())
                            .unwrap();
                    let idx = chain
                        .tuples
                        .iter()
                        .position(|t| t == &pieces)
                        .expect("nullary pieces chain");
                    (
                        x.clone(),
                        outer.components[&unit_path]
                            .apply(&chain.set.elements()[idx])
                            .to_string(),
                    )
                })
                .collect();
            nullary.insert(a.clone(), FinFn::new(f.f_ob(a).clone(), target_vertex, table)?);
        }
        return Ok(Multimodulation {
            sources: result_sources,
            target: outer.target.clone(),
            left_leg,
            right_leg,
            components,
            nullary,
        });
    }

    // k' = total_arity ≥ 1: enumerate concatenated paths.
    for path in proarrow_paths(b, total_arity) {
        // Split into groups by the inner arities.
        let mut groups: Vec<&[String]> = Vec::new();
        let mut offset = 0;
        for r in &arities {
            groups.push(&path[offset..offset + *r]);
            offset += r;
        }
        let spans: Vec<&Span> = result_sources
            .iter()
            .zip(&path)
            .map(|(m, p)| m.m_pro(p))
            .collect();
        let chain = chain_vertex(&spans).unwrap();
        // The outer path: composites of the groups, with units at nullary
        // slots anchored at the junction object.
        let mut outer_path: Vec<String> = Vec::new();
        {
            let mut offset = 0;
            for (j, r) in arities.iter().enumerate() {
                if *r == 0 {
                    // Junction object: right boundary of the previous group or
                    // left boundary of the next nonempty group.
                    let a = junction_object(b, &path, offset, j, &arities);
                    outer_path.push(b.u_ob(&a).to_string());
                } else {
                    outer_path.push(path_composite(b, &path[offset..offset + *r]));
                }
                offset += r;
            }
        }
        let target_vertex = outer
            .target
            .m_pro(&path_composite(b, &outer_path))
            .vertex()
            .clone();
        let mut table = BTreeMap::new();
        for (id, tuple) in chain.set.iter().zip(&chain.tuples) {
            // Apply each inner component to its slice of the tuple.
            let mut offset = 0;
            let mut pieces: Vec<String> = Vec::new();
            for (j, nu) in inners.iter().enumerate() {
                let r = arities[j];
                if r == 0 {
                    let a = junction_object(b, &path, offset, j, &arities);
                    let x = junction_element(mu_src(nu), &result_sources, &path, tuple, offset, &a);
                    pieces.push(nu.nullary[&a].apply(&x).to_string());
                } else {
                    let sub_path = groups[j].to_vec();
                    let sub_tuple = &tuple[offset..offset + r];
                    let sub_chain =
                        chain_vertex(&nu.sources.iter().zip(&sub_path).map(|(m, p)| m.m_pro(p)).collect::<Vec<_>>())
                            .unwrap();
                    let idx = sub_chain
                        .tuples
                        .iter()
                        .position(|t| t.as_slice() == sub_tuple)
                        .expect("group tuple chains");
                    pieces.push(
                        nu.components[&sub_path]
                            .apply(&sub_chain.set.elements()[idx])
                            .to_string(),
                    );
                }
                offset += r;
            }
            let outer_chain = chain_vertex(
                &outer
                    .sources
                    .iter()
                    .zip(&outer_path)
                    .map(|(m, p)| m.m_pro(p))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let idx = outer_chain
                .tuples
                .iter()
                .position(|t| t == &pieces)
                .expect("inner outputs chain");
            table.insert(
                id.clone(),
                outer.components[&outer_path]
                    .apply(&outer_chain.set.elements()[idx])
                    .to_string(),
            );
        }
        components.insert(path.clone(), FinFn::new(chain.set.clone(), target_vertex, table)?);
    }
    Ok(Multimodulation {
        sources: result_sources,
        target: outer.target.clone(),
        left_leg,
        right_leg,
        components,
        nullary,
    })
}

fn mu_src(nu: &Multimodulation) -> &LaxSpanFunctor {
    &nu.left_leg.src
}

/// The base object at the junction of an empty group `j` within a
/// concatenated path: right boundary of the preceding proarrow, or left
/// boundary of the following one.
fn junction_object(
    b: &crate::dbl::DoubleCategory,
    path: &[String],
    offset: usize,
    _j: usize,
    _arities: &[usize],
) -> String {
    if offset > 0 {
        b.tgt.ob(&path[offset - 1]).to_string()
    } else {
        b.src.ob(&path[offset]).to_string()
    }
}

/// The set element fed into a nullary inner at a junction: the boundary of
/// the neighbouring tuple slot under the adjacent carrier's leg.
fn junction_element(
    _f: &LaxSpanFunctor,
    sources: &[Module],
    path: &[String],
    tuple: &[String],
    offset: usize,
    _a: &str,
) -> String {
    if offset > 0 {
        sources[offset - 1]
            .m_pro(&path[offset - 1])
            .leg1()
            .apply(&tuple[offset - 1])
            .to_string()
    } else {
        sources[offset]
            .m_pro(&path[offset])
            .leg0()
            .apply(&tuple[offset])
            .to_string()
    }
}

/// The laxity of a functor, packaged as a 2-ary multimodulation of its
/// unit module.
pub fn laxity_multimodulation(f: &LaxSpanFunctor) -> Multimodulation {
    let m = unit_module(f);
    let b = &f.base;
    let components = proarrow_paths(b, 2)
        .into_iter()
        .map(|path| {
            let c = f.phi_comp(&path[0], &path[1]).clone();
            (path, c)
        })
        .collect();
    Multimodulation {
        sources: vec![m.clone(), m.clone()],
        target: m.clone(),
        left_leg: LaxTransformation::identity(f),
        right_leg: LaxTransformation::identity(f),
        components,
        nullary: BTreeMap::new(),
    }
}

/// The unit laxity of a functor as a nullary multimodulation.
pub fn unit_multimodulation(f: &LaxSpanFunctor) -> Multimodulation {
    Multimodulation {
        sources: vec![],
        target: unit_module(f),
        left_leg: LaxTransformation::identity(f),
        right_leg: LaxTransformation::identity(f),
        components: BTreeMap::new(),
        nullary: f.unit_lax.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dbl::{terminal_double, vertical_double, walking_proarrow};
    use crate::lax::{representable, terminal_lax};

    fn corpus_functors() -> Vec<LaxSpanFunctor> {
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
    fn unit_modules_validate() {
        for f in corpus_functors() {
            let m = unit_module(&f);
            let report = check_module(&m).unwrap();
            assert!(report.is_ok(), "{report}");
        }
    }

    #[test]
    fn identity_multimodulation_validates() {
        for f in corpus_functors() {
            let m = unit_module(&f);
            let mu = Multimodulation::identity(&m);
            let report = check_multimodulation(&mu).unwrap();
            assert!(report.is_ok(), "{report}");
        }
    }

    #[test]
    fn laxity_and_unit_multimodulations_validate() {
        for f in corpus_functors() {
            let report = check_multimodulation(&laxity_multimodulation(&f)).unwrap();
            assert!(report.is_ok(), "2-ary: {report}");
            let report = check_multimodulation(&unit_multimodulation(&f)).unwrap();
            assert!(report.is_ok(), "nullary: {report}");
        }
    }

    #[test]
    fn compose_with_identities_is_identity() {
        for f in corpus_functors() {
            let mu = laxity_multimodulation(&f);
            let id = Multimodulation::identity(&unit_module(&f));
            let composed = compose_multimodulations(&mu, &[id.clone(), id.clone()]).unwrap();
            assert_eq!(composed, mu);
            let outer_id = compose_multimodulations(&id, &[mu.clone()]).unwrap();
            assert_eq!(outer_id.components, mu.components);
        }
    }

    #[test]
    fn composition_with_nullary_inner_validates() {
        // φ ∘ (unit, id) : (M) ⇒ M is the left unit law in multicell form.
        let f = terminal_lax(&vertical_double(&corpus::c2()));
        let mu = laxity_multimodulation(&f);
        let id = Multimodulation::identity(&unit_module(&f));
        let unit = unit_multimodulation(&f);
        let composed = compose_multimodulations(&mu, &[unit.clone(), id.clone()]).unwrap();
        assert_eq!(composed.arity(), 1);
        let report = check_multimodulation(&composed).unwrap();
        assert!(report.is_ok(), "{report}");
        // By the module unit law this composite is the identity on components.
        assert_eq!(composed.components, id.components);
        let composed_r = compose_multimodulations(&mu, &[id.clone(), unit]).unwrap();
        assert_eq!(composed_r.components, id.components);
    }

    #[test]
    fn composition_is_associative_on_a_corpus_triple() {
        let f = terminal_lax(&vertical_double(&corpus::c2()));
        let mu = laxity_multimodulation(&f);
        let id = Multimodulation::identity(&unit_module(&f));
        // (φ ∘ (φ, id)) ∘ four identities vs φ ∘ ((φ ∘ ids), id ∘ ids).
        let three = compose_multimodulations(&mu, &[mu.clone(), id.clone()]).unwrap();
        assert!(check_multimodulation(&three).unwrap().is_ok());
        let left = compose_multimodulations(&three, &[id.clone(), id.clone(), id.clone()]).unwrap();
        let inner1 = compose_multimodulations(&mu, &[id.clone(), id.clone()]).unwrap();
        let inner2 = compose_multimodulations(&id, &[id.clone()]).unwrap();
        let right = compose_multimodulations(&mu, &[inner1, inner2]).unwrap();
        assert_eq!(left.components, right.components);
    }

    #[test]
    fn category_as_lax_unit_module_validates() {
        let f = crate::equiv::lax_of_category(&corpus::c2());
        assert!(crate::lax::check_lax_functor(&f).is_ok());
        assert!(check_module(&unit_module(&f)).unwrap().is_ok());
    }

    #[test]
    fn broken_action_is_named() {
        // Damage the left action of the unit module on a one-object
        // monoid-valued functor: post-composing with the swap keeps the
        // (trivial) legs but violates the unit law.
        let f = crate::equiv::lax_of_category(&corpus::z2_monoid());
        let mut m = unit_module(&f);
        let key = {
            let (k, _) = m.left_act.iter().next().unwrap();
            k.clone()
        };
        let act = m.left_act[&key].clone();
        let elems = act.cod().elements().to_vec();
        assert_eq!(elems.len(), 2);
        let swap = |x: &str| if x == elems[0] { elems[1].clone() } else { elems[0].clone() };
        let bad = FinFn::from_fn(act.dom().clone(), act.cod().clone(), |p| {
            swap(act.apply(p))
        })
        .unwrap();
        m.left_act.insert(key, bad);
        let report = check_module(&m).unwrap();
        assert!(report.has_rule("module.unit"), "{report}");
    }
}
