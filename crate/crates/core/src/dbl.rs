//! Strict double categories as category objects in categories.
//!
//! `d0` holds objects and arrows, `d1` holds proarrows and cells with internal
//! (cell) composition. External composition is stored as explicit tables keyed
//! diagrammatically: `comp_pro[(m,n)]` is the composite of `m : A ⇸ B`
//! followed by `n : B ⇸ C`.

use std::collections::BTreeMap;

use crate::cat::{
    check_category, check_functor, discrete_category, pullback_category, terminal_category,
    FinCategory, FinFunctor,
};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCategory {
    /// Objects and (vertical) arrows.
    pub d0: FinCategory,
    /// Proarrows and cells; composition in this category is internal cell
    /// composition.
    pub d1: FinCategory,
    /// External source: proarrow ↦ left object, cell ↦ left arrow.
    pub src: FinFunctor,
    /// External target.
    pub tgt: FinFunctor,
    /// External unit: object ↦ unit proarrow, arrow ↦ unit cell.
    pub unit: FinFunctor,
    /// `comp_pro[(m,n)]` with `tgt(m) = src(n)`: the external composite.
    pub comp_pro: BTreeMap<(String, String), String>,
    /// `comp_cell[(θ,ψ)]` with `tgt(θ) = src(ψ)` on the underlying arrows.
    pub comp_cell: BTreeMap<(String, String), String>,
}

impl DoubleCategory {
    pub fn objects(&self) -> &FinSet {
        &self.d0.objects
    }

    pub fn arrows(&self) -> &FinSet {
        &self.d0.morphisms
    }

    pub fn proarrows(&self) -> &FinSet {
        &self.d1.objects
    }

    pub fn cells(&self) -> &FinSet {
        &self.d1.morphisms
    }

    /// Unit proarrow on an object.
    pub fn u_ob(&self, a: &str) -> &str {
        self.unit.ob(a)
    }

    /// Unit cell on an arrow.
    pub fn u_ar(&self, f: &str) -> &str {
        self.unit.mor(f)
    }

    pub fn pro_comp(&self, m: &str, n: &str) -> Option<&str> {
        self.comp_pro.get(&(m.to_string(), n.to_string())).map(|s| s.as_str())
    }

    pub fn cell_comp(&self, th: &str, ps: &str) -> Option<&str> {
        self.comp_cell.get(&(th.to_string(), ps.to_string())).map(|s| s.as_str())
    }

    /// Externally composable proarrow pairs, diagrammatic order.
    pub fn composable_pro_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        for m in self.proarrows().iter() {
            for n in self.proarrows().iter() {
                if self.tgt.ob(m) == self.src.ob(n) {
                    pairs.push((m.clone(), n.clone()));
                }
            }
        }
        pairs
    }

    /// Externally composable cell pairs, diagrammatic order.
    pub fn composable_cell_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        for th in self.cells().iter() {
            for ps in self.cells().iter() {
                if self.tgt.mor(th) == self.src.mor(ps) {
                    pairs.push((th.clone(), ps.clone()));
                }
            }
        }
        pairs
    }

    /// External composition packaged as a functor out of the pullback of
    /// `tgt` against `src`; the functor laws for it are the interchange law.
    pub fn ext_comp_functor(&self) -> Result<FinFunctor> {
        let (pb, _, _) = pullback_category(&self.tgt, &self.src)?;
        let on_objects = FinFn::from_fn(pb.objects.clone(), self.d1.objects.clone(), |o| {
            let (m, n) = split_pair(o);
            self.pro_comp(&m, &n).unwrap_or("").to_string()
        })?;
        let on_morphisms = FinFn::from_fn(pb.morphisms.clone(), self.d1.morphisms.clone(), |c| {
            let (th, ps) = split_pair(c);
            self.cell_comp(&th, &ps).unwrap_or("").to_string()
        })?;
        FinFunctor::new(pb, self.d1.clone(), on_objects, on_morphisms)
    }
}

/// Split a top-level canonical pair id `(a,b)` into its components.
pub fn split_pair(id: &str) -> (String, String) {
    let inner = &id[1..id.len() - 1];
    let mut depth = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                return (inner[..i].to_string(), inner[i + 1..].to_string());
            }
            _ => {}
        }
    }
    panic!("not a pair id: {id}");
}

pub fn check_double_category(b: &DoubleCategory) -> Report {
    let mut report = Report::ok();
    report.absorb("d0", check_category(&b.d0));
    report.absorb("d1", check_category(&b.d1));
    report.absorb("src", check_functor(&b.src));
    report.absorb("tgt", check_functor(&b.tgt));
    report.absorb("unit", check_functor(&b.unit));
    for a in b.objects().iter() {
        let u = b.u_ob(a);
        if b.src.ob(u) != a || b.tgt.ob(u) != a {
            report.push("double.unit-boundary", format!("unit proarrow of {a}"));
        }
    }
    for f in b.arrows().iter() {
        let u = b.u_ar(f);
        if b.src.mor(u) != f || b.tgt.mor(u) != f {
            report.push("double.unit-boundary", format!("unit cell of {f}"));
        }
    }
    // External composition defined on exactly the composable pairs, with the
    // outer boundaries.
    let pro_pairs: std::collections::BTreeSet<_> = b.composable_pro_pairs().into_iter().collect();
    for key in &pro_pairs {
        match b.comp_pro.get(key) {
            None => report.push(
                "double.extcomp-composability",
                format!("missing proarrow composite ({},{})", key.0, key.1),
            ),
            Some(c) => {
                if b.src.ob(c) != b.src.ob(&key.0) || b.tgt.ob(c) != b.tgt.ob(&key.1) {
                    report.push(
                        "double.extcomp-boundary",
                        format!("({},{}) = {c}", key.0, key.1),
                    );
                }
            }
        }
    }
    for key in b.comp_pro.keys() {
        if !pro_pairs.contains(key) {
            report.push(
                "double.extcomp-composability",
                format!("({},{}) is not externally composable", key.0, key.1),
            );
        }
    }
    let cell_pairs: std::collections::BTreeSet<_> = b.composable_cell_pairs().into_iter().collect();
    for key in &cell_pairs {
        match b.comp_cell.get(key) {
            None => report.push(
                "double.extcomp-composability",
                format!("missing cell composite ({},{})", key.0, key.1),
            ),
            Some(c) => {
                let dom_ok = b.pro_comp(b.d1.dom.apply(&key.0), b.d1.dom.apply(&key.1))
                    == Some(b.d1.dom.apply(c));
                let cod_ok = b.pro_comp(b.d1.cod.apply(&key.0), b.d1.cod.apply(&key.1))
                    == Some(b.d1.cod.apply(c));
                if !dom_ok || !cod_ok {
                    report.push(
                        "double.extcomp-boundary",
                        format!("cell composite ({},{}) = {c}", key.0, key.1),
                    );
                }
                if b.src.mor(c) != b.src.mor(&key.0) || b.tgt.mor(c) != b.tgt.mor(&key.1) {
                    report.push(
                        "double.extcomp-boundary",
                        format!("cell composite frame ({},{})", key.0, key.1),
                    );
                }
            }
        }
    }
    for key in b.comp_cell.keys() {
        if !cell_pairs.contains(key) {
            report.push(
                "double.extcomp-composability",
                format!("cells ({},{}) are not externally composable", key.0, key.1),
            );
        }
    }
    // Strict unit laws, element-wise.
    for m in b.proarrows().iter() {
        let ua = b.u_ob(b.src.ob(m));
        if b.pro_comp(ua, m) != Some(m) {
            report.push("double.unit-law", format!("u⊗{m}"));
        }
        let ub = b.u_ob(b.tgt.ob(m));
        if b.pro_comp(m, ub) != Some(m) {
            report.push("double.unit-law", format!("{m}⊗u"));
        }
    }
    for th in b.cells().iter() {
        let uf = b.u_ar(b.src.mor(th));
        if b.cell_comp(uf, th) != Some(th) {
            report.push("double.unit-law", format!("u⊗{th}"));
        }
        let ug = b.u_ar(b.tgt.mor(th));
        if b.cell_comp(th, ug) != Some(th) {
            report.push("double.unit-law", format!("{th}⊗u"));
        }
    }
    // Strict associativity, element-wise.
    for (m, n) in b.composable_pro_pairs() {
        for p in b.proarrows().iter() {
            if b.tgt.ob(&n) != b.src.ob(p) {
                continue;
            }
            let left = b.pro_comp(&m, &n).and_then(|mn| b.pro_comp(mn, p));
            let right = b.pro_comp(&n, p).and_then(|np| b.pro_comp(&m, np));
            if left != right || left.is_none() {
                report.push("double.assoc", format!("({m},{n},{p})"));
            }
        }
    }
    for (th, ps) in b.composable_cell_pairs() {
        for ch in b.cells().iter() {
            if b.tgt.mor(&ps) != b.src.mor(ch) {
                continue;
            }
            let left = b.cell_comp(&th, &ps).and_then(|c| b.cell_comp(c, ch));
            let right = b.cell_comp(&ps, ch).and_then(|c| b.cell_comp(&th, c));
            if left != right || left.is_none() {
                report.push("double.assoc", format!("cells ({th},{ps},{ch})"));
            }
        }
    }
    // Functoriality of external composition on the pullback category; this is
    // the interchange law and preservation of identity cells.
    match b.ext_comp_functor() {
        Ok(ec) => report.absorb("extcomp", {
            let mut r = check_functor(&ec);
            r.violations.iter_mut().for_each(|v| {
                v.rule = v.rule.replace("functor.", "double.extcomp-functor.");
            });
            r
        }),
        Err(e) => report.push("double.extcomp-functor", e.to_string()),
    }
    report
}

/// Element-wise interchange: the external composite of internal composites
/// equals the internal composite of external composites. Must agree with the
/// functor-based route in [`check_double_category`].
pub fn check_interchange(b: &DoubleCategory) -> Report {
    let mut report = Report::ok();
    for ((th2, th1), thc) in &b.d1.comp {
        for ((ps2, ps1), psc) in &b.d1.comp {
            if b.tgt.mor(th1) != b.src.mor(ps1) || b.tgt.mor(th2) != b.src.mor(ps2) {
                continue;
            }
            let lhs = b.cell_comp(thc, psc);
            let rhs = match (b.cell_comp(th2, ps2), b.cell_comp(th1, ps1)) {
                (Some(top), Some(bot)) => b.d1.compose(top, bot),
                _ => None,
            };
            if lhs != rhs || lhs.is_none() {
                report.push("double.interchange", format!("({th1},{ps1});({th2},{ps2})"));
            }
        }
    }
    report
}

/// The one-object double category: one arrow, one proarrow, one cell.
pub fn terminal_double() -> DoubleCategory {
    vertical_double(&terminal_category())
}

/// The double category with `C`'s morphisms as proarrows and only identity
/// arrows and cells. External composition is composition in `C`.
pub fn vertical_double(c: &FinCategory) -> DoubleCategory {
    let d0 = discrete_category(&c.objects);
    let d1 = discrete_category(&c.morphisms);
    let src = FinFunctor::new(
        d1.clone(),
        d0.clone(),
        FinFn::from_fn(d1.objects.clone(), d0.objects.clone(), |m| {
            c.dom.apply(m).to_string()
        })
        .unwrap(),
        FinFn::from_fn(d1.morphisms.clone(), d0.morphisms.clone(), |cell| {
            let m = cell.strip_prefix("id_").unwrap();
            format!("id_{}", c.dom.apply(m))
        })
        .unwrap(),
    )
    .unwrap();
    let tgt = FinFunctor::new(
        d1.clone(),
        d0.clone(),
        FinFn::from_fn(d1.objects.clone(), d0.objects.clone(), |m| {
            c.cod.apply(m).to_string()
        })
        .unwrap(),
        FinFn::from_fn(d1.morphisms.clone(), d0.morphisms.clone(), |cell| {
            let m = cell.strip_prefix("id_").unwrap();
            format!("id_{}", c.cod.apply(m))
        })
        .unwrap(),
    )
    .unwrap();
    let unit = FinFunctor::new(
        d0.clone(),
        d1.clone(),
        FinFn::from_fn(d0.objects.clone(), d1.objects.clone(), |x| {
            c.id.apply(x).to_string()
        })
        .unwrap(),
        FinFn::from_fn(d0.morphisms.clone(), d1.morphisms.clone(), |ar| {
            let x = ar.strip_prefix("id_").unwrap();
            format!("id_{}", c.id.apply(x))
        })
        .unwrap(),
    )
    .unwrap();
    let comp_pro: BTreeMap<(String, String), String> = c
        .comp
        .iter()
        .map(|((g, f), gf)| ((f.clone(), g.clone()), gf.clone()))
        .collect();
    let comp_cell = comp_pro
        .iter()
        .map(|((f, g), gf)| ((format!("id_{f}"), format!("id_{g}")), format!("id_{gf}")))
        .collect();
    DoubleCategory { d0, d1, src, tgt, unit, comp_pro, comp_cell }
}

/// Two objects, one non-unit proarrow `m : A ⇸ B`, only identity arrows and
/// cells, unit composites only.
pub fn walking_proarrow() -> DoubleCategory {
    let d0 = discrete_category(&FinSet::of(&["A", "B"]));
    let d1 = discrete_category(&FinSet::of(&["u_A", "u_B", "m"]));
    let src_ob: BTreeMap<String, String> = [
        ("u_A".to_string(), "A".to_string()),
        ("u_B".to_string(), "B".to_string()),
        ("m".to_string(), "A".to_string()),
    ]
    .into();
    let tgt_ob: BTreeMap<String, String> = [
        ("u_A".to_string(), "A".to_string()),
        ("u_B".to_string(), "B".to_string()),
        ("m".to_string(), "B".to_string()),
    ]
    .into();
    let mor_map = |ob: &BTreeMap<String, String>| -> BTreeMap<String, String> {
        ob.iter()
            .map(|(k, v)| (format!("id_{k}"), format!("id_{v}")))
            .collect()
    };
    let src = FinFunctor::new(
        d1.clone(),
        d0.clone(),
        FinFn::new(d1.objects.clone(), d0.objects.clone(), src_ob.clone()).unwrap(),
        FinFn::new(d1.morphisms.clone(), d0.morphisms.clone(), mor_map(&src_ob)).unwrap(),
    )
    .unwrap();
    let tgt = FinFunctor::new(
        d1.clone(),
        d0.clone(),
        FinFn::new(d1.objects.clone(), d0.objects.clone(), tgt_ob.clone()).unwrap(),
        FinFn::new(d1.morphisms.clone(), d0.morphisms.clone(), mor_map(&tgt_ob)).unwrap(),
    )
    .unwrap();
    let unit_ob: BTreeMap<String, String> = [
        ("A".to_string(), "u_A".to_string()),
        ("B".to_string(), "u_B".to_string()),
    ]
    .into();
    let unit = FinFunctor::new(
        d0.clone(),
        d1.clone(),
        FinFn::new(d0.objects.clone(), d1.objects.clone(), unit_ob.clone()).unwrap(),
        FinFn::new(d0.morphisms.clone(), d1.morphisms.clone(), mor_map(&unit_ob)).unwrap(),
    )
    .unwrap();
    let comp_pro: BTreeMap<(String, String), String> = [
        (("u_A".to_string(), "u_A".to_string()), "u_A".to_string()),
        (("u_B".to_string(), "u_B".to_string()), "u_B".to_string()),
        (("u_A".to_string(), "m".to_string()), "m".to_string()),
        (("m".to_string(), "u_B".to_string()), "m".to_string()),
    ]
    .into();
    let comp_cell = comp_pro
        .iter()
        .map(|((a, b), c)| ((format!("id_{a}"), format!("id_{b}")), format!("id_{c}")))
        .collect();
    DoubleCategory { d0, d1, src, tgt, unit, comp_pro, comp_cell }
}

/// Swap the two directions: arrows become proarrows and vice versa, cells are
/// reindexed. An involution up to bit-exact equality.
pub fn transpose(b: &DoubleCategory) -> DoubleCategory {
    let d0 = FinCategory::new(
        b.d0.objects.clone(),
        b.d1.objects.clone(),
        b.src.on_objects.clone(),
        b.tgt.on_objects.clone(),
        b.unit.on_objects.clone(),
        b.comp_pro
            .iter()
            .map(|((m, n), c)| ((n.clone(), m.clone()), c.clone()))
            .collect(),
    )
    .unwrap();
    let d1 = FinCategory::new(
        b.d0.morphisms.clone(),
        b.d1.morphisms.clone(),
        b.src.on_morphisms.clone(),
        b.tgt.on_morphisms.clone(),
        b.unit.on_morphisms.clone(),
        b.comp_cell
            .iter()
            .map(|((th, ps), c)| ((ps.clone(), th.clone()), c.clone()))
            .collect(),
    )
    .unwrap();
    let src = FinFunctor::new(d1.clone(), d0.clone(), b.d0.dom.clone(), b.d1.dom.clone()).unwrap();
    let tgt = FinFunctor::new(d1.clone(), d0.clone(), b.d0.cod.clone(), b.d1.cod.clone()).unwrap();
    let unit = FinFunctor::new(d0.clone(), d1.clone(), b.d0.id.clone(), b.d1.id.clone()).unwrap();
    let comp_pro = b
        .d0
        .comp
        .iter()
        .map(|((g, f), gf)| ((f.clone(), g.clone()), gf.clone()))
        .collect();
    let comp_cell = b
        .d1
        .comp
        .iter()
        .map(|((g, f), gf)| ((f.clone(), g.clone()), gf.clone()))
        .collect();
    DoubleCategory { d0, d1, src, tgt, unit, comp_pro, comp_cell }
}

fn op_category(c: &FinCategory) -> FinCategory {
    FinCategory::new(
        c.objects.clone(),
        c.morphisms.clone(),
        c.cod.clone(),
        c.dom.clone(),
        c.id.clone(),
        c.comp
            .iter()
            .map(|((g, f), gf)| ((f.clone(), g.clone()), gf.clone()))
            .collect(),
    )
    .unwrap()
}

/// Reverse the internal (arrow) direction, leaving the external direction
/// alone. An involution up to bit-exact equality.
pub fn opposite(b: &DoubleCategory) -> DoubleCategory {
    let d0 = op_category(&b.d0);
    let d1 = op_category(&b.d1);
    let src = FinFunctor::new(d1.clone(), d0.clone(), b.src.on_objects.clone(), b.src.on_morphisms.clone()).unwrap();
    let tgt = FinFunctor::new(d1.clone(), d0.clone(), b.tgt.on_objects.clone(), b.tgt.on_morphisms.clone()).unwrap();
    let unit = FinFunctor::new(d0.clone(), d1.clone(), b.unit.on_objects.clone(), b.unit.on_morphisms.clone()).unwrap();
    DoubleCategory {
        d0,
        d1,
        src,
        tgt,
        unit,
        comp_pro: b.comp_pro.clone(),
        comp_cell: b.comp_cell.clone(),
    }
}

/// A strict double functor: a compatible pair of ordinary functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleFunctor {
    pub src_dc: DoubleCategory,
    pub tgt_dc: DoubleCategory,
    pub f0: FinFunctor,
    pub f1: FinFunctor,
}

impl DoubleFunctor {
    pub fn new(src_dc: DoubleCategory, tgt_dc: DoubleCategory, f0: FinFunctor, f1: FinFunctor) -> Result<Self> {
        if f0.src != src_dc.d0 || f0.tgt != tgt_dc.d0 {
            return Err(Error::Malformed("arrow part has the wrong boundary".into()));
        }
        if f1.src != src_dc.d1 || f1.tgt != tgt_dc.d1 {
            return Err(Error::Malformed("cell part has the wrong boundary".into()));
        }
        Ok(DoubleFunctor { src_dc, tgt_dc, f0, f1 })
    }

    pub fn identity(b: &DoubleCategory) -> Self {
        DoubleFunctor {
            src_dc: b.clone(),
            tgt_dc: b.clone(),
            f0: FinFunctor::identity(&b.d0),
            f1: FinFunctor::identity(&b.d1),
        }
    }

    /// The unique double functor into the terminal double category.
    pub fn to_terminal(b: &DoubleCategory) -> Self {
        let t = terminal_double();
        let f0 = FinFunctor::new(
            b.d0.clone(),
            t.d0.clone(),
            FinFn::from_fn(b.d0.objects.clone(), t.d0.objects.clone(), |_| "*".into()).unwrap(),
            FinFn::from_fn(b.d0.morphisms.clone(), t.d0.morphisms.clone(), |_| "id_*".into()).unwrap(),
        )
        .unwrap();
        let f1 = FinFunctor::new(
            b.d1.clone(),
            t.d1.clone(),
            FinFn::from_fn(b.d1.objects.clone(), t.d1.objects.clone(), |_| "id_*".into()).unwrap(),
            FinFn::from_fn(b.d1.morphisms.clone(), t.d1.morphisms.clone(), |_| "id_id_*".into())
                .unwrap(),
        )
        .unwrap();
        DoubleFunctor { src_dc: b.clone(), tgt_dc: t, f0, f1 }
    }
}

pub fn check_double_functor(p: &DoubleFunctor) -> Report {
    let mut report = Report::ok();
    report.absorb("f0", check_functor(&p.f0));
    report.absorb("f1", check_functor(&p.f1));
    let b = &p.src_dc;
    let d = &p.tgt_dc;
    for m in b.proarrows().iter() {
        if d.src.ob(p.f1.ob(m)) != p.f0.ob(b.src.ob(m)) {
            report.push("dfunctor.src", m.clone());
        }
        if d.tgt.ob(p.f1.ob(m)) != p.f0.ob(b.tgt.ob(m)) {
            report.push("dfunctor.tgt", m.clone());
        }
    }
    for th in b.cells().iter() {
        if d.src.mor(p.f1.mor(th)) != p.f0.mor(b.src.mor(th)) {
            report.push("dfunctor.src", th.clone());
        }
        if d.tgt.mor(p.f1.mor(th)) != p.f0.mor(b.tgt.mor(th)) {
            report.push("dfunctor.tgt", th.clone());
        }
    }
    for a in b.objects().iter() {
        if p.f1.ob(b.u_ob(a)) != d.u_ob(p.f0.ob(a)) {
            report.push("dfunctor.unit", a.clone());
        }
    }
    for f in b.arrows().iter() {
        if p.f1.mor(b.u_ar(f)) != d.u_ar(p.f0.mor(f)) {
            report.push("dfunctor.unit", f.clone());
        }
    }
    for ((m, n), c) in &b.comp_pro {
        if d.pro_comp(p.f1.ob(m), p.f1.ob(n)) != Some(p.f1.ob(c)) {
            report.push("dfunctor.extcomp", format!("({m},{n})"));
        }
    }
    for ((th, ps), c) in &b.comp_cell {
        if d.cell_comp(p.f1.mor(th), p.f1.mor(ps)) != Some(p.f1.mor(c)) {
            report.push("dfunctor.extcomp", format!("cells ({th},{ps})"));
        }
    }
    report
}
