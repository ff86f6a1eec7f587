//! One on-disk format for every entity kind: a single JSON document with
//! named sections, references by name, and a canonical emission order so
//! that equality of entities is byte equality of their canonical form.
//!
//! Sub-entities (the sets inside a category, the functors inside a double
//! category) are interned under derived names like `C.objects` on emission
//! and deduplicated by value, so `emit ∘ parse` is idempotent on canonical
//! documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cat::{FinCategory, FinFunctor};
use crate::dbl::{DoubleCategory, DoubleFunctor};
use crate::elements::DdfCandidate;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet, Span};
use crate::lax::{LaxSpanFunctor, LaxTransformation};
use crate::modules::{Module, Multimodulation};
use crate::prof::{InternalProfunctor, ProfMulticell};

/// A fully resolved document: every entity constructed and boundary-checked.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    pub sets: BTreeMap<String, FinSet>,
    pub functions: BTreeMap<String, FinFn>,
    pub categories: BTreeMap<String, FinCategory>,
    pub double_categories: BTreeMap<String, DoubleCategory>,
    pub lax_functors: BTreeMap<String, LaxSpanFunctor>,
    pub transformations: BTreeMap<String, LaxTransformation>,
    pub ddfs: BTreeMap<String, DdfCandidate>,
    pub ddf_morphisms: BTreeMap<String, DoubleFunctor>,
    pub modules: BTreeMap<String, Module>,
    pub multimodulations: BTreeMap<String, Multimodulation>,
    pub profunctors: BTreeMap<String, InternalProfunctor>,
    pub multicells: BTreeMap<String, ProfMulticell>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct RawDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    sets: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    functions: BTreeMap<String, RawFn>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    categories: BTreeMap<String, RawCategory>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    double_categories: BTreeMap<String, RawDouble>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    lax_functors: BTreeMap<String, RawLax>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    transformations: BTreeMap<String, RawTransformation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    ddfs: BTreeMap<String, RawDoubleFunctor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    ddf_morphisms: BTreeMap<String, RawDoubleFunctor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    modules: BTreeMap<String, RawModule>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    multimodulations: BTreeMap<String, RawMultimodulation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    profunctors: BTreeMap<String, RawProfunctor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    multicells: BTreeMap<String, RawMulticell>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawFn {
    dom: String,
    cod: String,
    map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawCategory {
    objects: String,
    morphisms: String,
    dom: String,
    cod: String,
    id: String,
    comp: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawFunctor {
    src: String,
    tgt: String,
    on_objects: String,
    on_morphisms: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawDouble {
    d0: String,
    d1: String,
    src: RawFunctor,
    tgt: RawFunctor,
    unit: RawFunctor,
    comp_pro: Vec<(String, String, String)>,
    comp_cell: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSpan {
    leg0: String,
    leg1: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawLax {
    base: String,
    on_object: BTreeMap<String, String>,
    on_arrow: BTreeMap<String, String>,
    on_proarrow: BTreeMap<String, RawSpan>,
    on_cell: BTreeMap<String, String>,
    unit_lax: BTreeMap<String, String>,
    comp_lax: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawTransformation {
    src: String,
    tgt: String,
    obj_comp: BTreeMap<String, String>,
    pro_comp: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawDoubleFunctor {
    src: String,
    tgt: String,
    f0: RawFunctor,
    f1: RawFunctor,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawModule {
    src_f: String,
    tgt_f: String,
    on_proarrow: BTreeMap<String, RawSpan>,
    on_cell: BTreeMap<String, String>,
    left_act: Vec<(String, String, String)>,
    right_act: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawMultimodulation {
    sources: Vec<String>,
    target: String,
    left_leg: String,
    right_leg: String,
    components: Vec<(Vec<String>, String)>,
    nullary: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawProfunctor {
    src_p: String,
    tgt_p: String,
    carrier: String,
    mfun: RawFunctor,
    leg0: RawFunctor,
    leg1: RawFunctor,
    left_act: RawFunctor,
    right_act: RawFunctor,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawMulticell {
    sources: Vec<String>,
    target: String,
    left_b: RawDoubleFunctor,
    right_b: RawDoubleFunctor,
    mediating: RawFunctor,
}

fn unresolved(path: &str, kind: &str, name: &str) -> Error {
    Error::UnresolvedName(format!("{path}: unknown {kind} '{name}'"))
}

struct Resolver {
    doc: Document,
}

impl Resolver {
    fn set(&self, path: &str, name: &str) -> Result<FinSet> {
        self.doc
            .sets
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "set", name))
    }

    fn function(&self, path: &str, name: &str) -> Result<FinFn> {
        self.doc
            .functions
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "function", name))
    }

    fn category(&self, path: &str, name: &str) -> Result<FinCategory> {
        self.doc
            .categories
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "category", name))
    }

    fn double(&self, path: &str, name: &str) -> Result<DoubleCategory> {
        self.doc
            .double_categories
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "double category", name))
    }

    fn lax(&self, path: &str, name: &str) -> Result<LaxSpanFunctor> {
        self.doc
            .lax_functors
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "lax functor", name))
    }

    fn transformation(&self, path: &str, name: &str) -> Result<LaxTransformation> {
        self.doc
            .transformations
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "transformation", name))
    }

    fn ddf(&self, path: &str, name: &str) -> Result<DdfCandidate> {
        self.doc
            .ddfs
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "ddf", name))
    }

    fn module(&self, path: &str, name: &str) -> Result<Module> {
        self.doc
            .modules
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "module", name))
    }

    fn profunctor(&self, path: &str, name: &str) -> Result<InternalProfunctor> {
        self.doc
            .profunctors
            .get(name)
            .cloned()
            .ok_or_else(|| unresolved(path, "profunctor", name))
    }

    fn functor(&self, path: &str, raw: &RawFunctor) -> Result<FinFunctor> {
        FinFunctor::new(
            self.category(path, &raw.src)?,
            self.category(path, &raw.tgt)?,
            self.function(path, &raw.on_objects)?,
            self.function(path, &raw.on_morphisms)?,
        )
    }

    fn span(&self, path: &str, raw: &RawSpan) -> Result<Span> {
        Span::new(
            self.function(path, &raw.leg0)?,
            self.function(path, &raw.leg1)?,
        )
    }

    fn double_functor(&self, path: &str, raw: &RawDoubleFunctor) -> Result<DoubleFunctor> {
        DoubleFunctor::new(
            self.double(path, &raw.src)?,
            self.double(path, &raw.tgt)?,
            self.functor(path, &raw.f0)?,
            self.functor(path, &raw.f1)?,
        )
    }
}

fn triples(table: &[(String, String, String)]) -> BTreeMap<(String, String), String> {
    table
        .iter()
        .map(|(a, b, c)| ((a.clone(), b.clone()), c.clone()))
        .collect()
}

/// Parse a document, resolving every reference; rejects dangling names with
/// the section and entity they occur in.
pub fn parse(text: &str) -> Result<Document> {
    let raw: RawDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut r = Resolver { doc: Document::default() };
    for (name, elems) in &raw.sets {
        r.doc.sets.insert(name.clone(), FinSet::new(elems.clone())?);
    }
    for (name, f) in &raw.functions {
        let path = format!("functions.{name}");
        let fun = FinFn::new(
            r.set(&path, &f.dom)?,
            r.set(&path, &f.cod)?,
            f.map.clone(),
        )?;
        r.doc.functions.insert(name.clone(), fun);
    }
    for (name, c) in &raw.categories {
        let path = format!("categories.{name}");
        let cat = FinCategory::new(
            r.set(&path, &c.objects)?,
            r.set(&path, &c.morphisms)?,
            r.function(&path, &c.dom)?,
            r.function(&path, &c.cod)?,
            r.function(&path, &c.id)?,
            triples(&c.comp),
        )?;
        r.doc.categories.insert(name.clone(), cat);
    }
    for (name, d) in &raw.double_categories {
        let path = format!("double_categories.{name}");
        let b = DoubleCategory {
            d0: r.category(&path, &d.d0)?,
            d1: r.category(&path, &d.d1)?,
            src: r.functor(&path, &d.src)?,
            tgt: r.functor(&path, &d.tgt)?,
            unit: r.functor(&path, &d.unit)?,
            comp_pro: triples(&d.comp_pro),
            comp_cell: triples(&d.comp_cell),
        };
        r.doc.double_categories.insert(name.clone(), b);
    }
    for (name, l) in &raw.lax_functors {
        let path = format!("lax_functors.{name}");
        let f = LaxSpanFunctor {
            base: r.double(&path, &l.base)?,
            on_object: l
                .on_object
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.set(&path, v)?)))
                .collect::<Result<_>>()?,
            on_arrow: l
                .on_arrow
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
            on_proarrow: l
                .on_proarrow
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.span(&path, v)?)))
                .collect::<Result<_>>()?,
            on_cell: l
                .on_cell
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
            unit_lax: l
                .unit_lax
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
            comp_lax: l
                .comp_lax
                .iter()
                .map(|(m, n, v)| Ok(((m.clone(), n.clone()), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
        };
        r.doc.lax_functors.insert(name.clone(), f);
    }
    for (name, t) in &raw.transformations {
        let path = format!("transformations.{name}");
        let tr = LaxTransformation {
            src: r.lax(&path, &t.src)?,
            tgt: r.lax(&path, &t.tgt)?,
            obj_comp: t
                .obj_comp
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
            pro_comp: t
                .pro_comp
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
        };
        r.doc.transformations.insert(name.clone(), tr);
    }
    for (name, d) in &raw.ddfs {
        let path = format!("ddfs.{name}");
        let proj = r.double_functor(&path, d)?;
        r.doc.ddfs.insert(name.clone(), DdfCandidate { proj });
    }
    for (name, d) in &raw.ddf_morphisms {
        let path = format!("ddf_morphisms.{name}");
        let h = r.double_functor(&path, d)?;
        r.doc.ddf_morphisms.insert(name.clone(), h);
    }
    for (name, m) in &raw.modules {
        let path = format!("modules.{name}");
        let module = Module {
            src_f: r.lax(&path, &m.src_f)?,
            tgt_f: r.lax(&path, &m.tgt_f)?,
            on_proarrow: m
                .on_proarrow
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.span(&path, v)?)))
                .collect::<Result<_>>()?,
            on_cell: m
                .on_cell
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
            left_act: m
                .left_act
                .iter()
                .map(|(p, q, v)| Ok(((p.clone(), q.clone()), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
            right_act: m
                .right_act
                .iter()
                .map(|(p, q, v)| Ok(((p.clone(), q.clone()), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
        };
        r.doc.modules.insert(name.clone(), module);
    }
    for (name, mm) in &raw.multimodulations {
        let path = format!("multimodulations.{name}");
        let mu = Multimodulation {
            sources: mm
                .sources
                .iter()
                .map(|s| r.module(&path, s))
                .collect::<Result<_>>()?,
            target: r.module(&path, &mm.target)?,
            left_leg: r.transformation(&path, &mm.left_leg)?,
            right_leg: r.transformation(&path, &mm.right_leg)?,
            components: mm
                .components
                .iter()
                .map(|(p, v)| Ok((p.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
            nullary: mm
                .nullary
                .iter()
                .map(|(k, v)| Ok((k.clone(), r.function(&path, v)?)))
                .collect::<Result<_>>()?,
        };
        r.doc.multimodulations.insert(name.clone(), mu);
    }
    for (name, p) in &raw.profunctors {
        let path = format!("profunctors.{name}");
        let m = InternalProfunctor {
            src_p: r.ddf(&path, &p.src_p)?,
            tgt_p: r.ddf(&path, &p.tgt_p)?,
            carrier: r.category(&path, &p.carrier)?,
            mfun: r.functor(&path, &p.mfun)?,
            leg0: r.functor(&path, &p.leg0)?,
            leg1: r.functor(&path, &p.leg1)?,
            left_act: r.functor(&path, &p.left_act)?,
            right_act: r.functor(&path, &p.right_act)?,
        };
        r.doc.profunctors.insert(name.clone(), m);
    }
    for (name, u) in &raw.multicells {
        let path = format!("multicells.{name}");
        let cell = ProfMulticell {
            sources: u
                .sources
                .iter()
                .map(|s| r.profunctor(&path, s))
                .collect::<Result<_>>()?,
            target: r.profunctor(&path, &u.target)?,
            left_b: r.double_functor(&path, &u.left_b)?,
            right_b: r.double_functor(&path, &u.right_b)?,
            mediating: r.functor(&path, &u.mediating)?,
        };
        r.doc.multicells.insert(name.clone(), cell);
    }
    Ok(r.doc)
}

#[derive(Default)]
struct Emitter {
    raw: RawDoc,
    sets: Vec<(FinSet, String)>,
    functions: Vec<(FinFn, String)>,
    categories: Vec<(FinCategory, String)>,
    doubles: Vec<(DoubleCategory, String)>,
    laxes: Vec<(LaxSpanFunctor, String)>,
    transformations: Vec<(LaxTransformation, String)>,
    ddfs: Vec<(DdfCandidate, String)>,
}

fn unique<K>(taken: &BTreeMap<String, K>, preferred: &str) -> String {
    if !taken.contains_key(preferred) {
        return preferred.to_string();
    }
    let mut i = 2;
    loop {
        let candidate = format!("{preferred}#{i}");
        if !taken.contains_key(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

impl Emitter {
    fn set(&mut self, preferred: &str, s: &FinSet) -> String {
        if let Some((_, n)) = self.sets.iter().find(|(v, _)| v == s) {
            return n.clone();
        }
        let name = unique(&self.raw.sets, preferred);
        self.sets.push((s.clone(), name.clone()));
        self.raw.sets.insert(name.clone(), s.elements().to_vec());
        name
    }

    fn function(&mut self, preferred: &str, f: &FinFn) -> String {
        if let Some((_, n)) = self.functions.iter().find(|(v, _)| v == f) {
            return n.clone();
        }
        let dom = self.set(&format!("{preferred}.dom"), f.dom());
        let cod = self.set(&format!("{preferred}.cod"), f.cod());
        let name = unique(&self.raw.functions, preferred);
        self.functions.push((f.clone(), name.clone()));
        self.raw.functions.insert(
            name.clone(),
            RawFn { dom, cod, map: f.table().clone() },
        );
        name
    }

    fn category(&mut self, preferred: &str, c: &FinCategory) -> String {
        if let Some((_, n)) = self.categories.iter().find(|(v, _)| v == c) {
            return n.clone();
        }
        let record = RawCategory {
            objects: self.set(&format!("{preferred}.objects"), &c.objects),
            morphisms: self.set(&format!("{preferred}.morphisms"), &c.morphisms),
            dom: self.function(&format!("{preferred}.dom"), &c.dom),
            cod: self.function(&format!("{preferred}.cod"), &c.cod),
            id: self.function(&format!("{preferred}.id"), &c.id),
            comp: c
                .comp
                .iter()
                .map(|((g, f), gf)| (g.clone(), f.clone(), gf.clone()))
                .collect(),
        };
        let name = unique(&self.raw.categories, preferred);
        self.categories.push((c.clone(), name.clone()));
        self.raw.categories.insert(name.clone(), record);
        name
    }

    fn functor(&mut self, preferred: &str, f: &FinFunctor) -> RawFunctor {
        RawFunctor {
            src: self.category(&format!("{preferred}.src"), &f.src),
            tgt: self.category(&format!("{preferred}.tgt"), &f.tgt),
            on_objects: self.function(&format!("{preferred}.on_objects"), &f.on_objects),
            on_morphisms: self.function(&format!("{preferred}.on_morphisms"), &f.on_morphisms),
        }
    }

    fn double(&mut self, preferred: &str, b: &DoubleCategory) -> String {
        if let Some((_, n)) = self.doubles.iter().find(|(v, _)| v == b) {
            return n.clone();
        }
        let record = RawDouble {
            d0: self.category(&format!("{preferred}.d0"), &b.d0),
            d1: self.category(&format!("{preferred}.d1"), &b.d1),
            src: self.functor(&format!("{preferred}.src"), &b.src),
            tgt: self.functor(&format!("{preferred}.tgt"), &b.tgt),
            unit: self.functor(&format!("{preferred}.unit"), &b.unit),
            comp_pro: b
                .comp_pro
                .iter()
                .map(|((m, n), mn)| (m.clone(), n.clone(), mn.clone()))
                .collect(),
            comp_cell: b
                .comp_cell
                .iter()
                .map(|((a, c), ac)| (a.clone(), c.clone(), ac.clone()))
                .collect(),
        };
        let name = unique(&self.raw.double_categories, preferred);
        self.doubles.push((b.clone(), name.clone()));
        self.raw.double_categories.insert(name.clone(), record);
        name
    }

    fn span(&mut self, preferred: &str, s: &Span) -> RawSpan {
        RawSpan {
            leg0: self.function(&format!("{preferred}.leg0"), s.leg0()),
            leg1: self.function(&format!("{preferred}.leg1"), s.leg1()),
        }
    }

    fn lax(&mut self, preferred: &str, f: &LaxSpanFunctor) -> String {
        if let Some((_, n)) = self.laxes.iter().find(|(v, _)| v == f) {
            return n.clone();
        }
        let record = RawLax {
            base: self.double(&format!("{preferred}.base"), &f.base),
            on_object: f
                .on_object
                .iter()
                .map(|(k, v)| (k.clone(), self.set(&format!("{preferred}.on_object.{k}"), v)))
                .collect(),
            on_arrow: f
                .on_arrow
                .iter()
                .map(|(k, v)| (k.clone(), self.function(&format!("{preferred}.on_arrow.{k}"), v)))
                .collect(),
            on_proarrow: f
                .on_proarrow
                .iter()
                .map(|(k, v)| (k.clone(), self.span(&format!("{preferred}.on_proarrow.{k}"), v)))
                .collect(),
            on_cell: f
                .on_cell
                .iter()
                .map(|(k, v)| (k.clone(), self.function(&format!("{preferred}.on_cell.{k}"), v)))
                .collect(),
            unit_lax: f
                .unit_lax
                .iter()
                .map(|(k, v)| (k.clone(), self.function(&format!("{preferred}.unit_lax.{k}"), v)))
                .collect(),
            comp_lax: f
                .comp_lax
                .iter()
                .map(|((m, n), v)| {
                    let fn_name = self.function(&format!("{preferred}.comp_lax.{m}.{n}"), v);
                    (m.clone(), n.clone(), fn_name)
                })
                .collect(),
        };
        let name = unique(&self.raw.lax_functors, preferred);
        self.laxes.push((f.clone(), name.clone()));
        self.raw.lax_functors.insert(name.clone(), record);
        name
    }

    fn transformation(&mut self, preferred: &str, t: &LaxTransformation) -> String {
        if let Some((_, n)) = self.transformations.iter().find(|(v, _)| v == t) {
            return n.clone();
        }
        let record = RawTransformation {
            src: self.lax(&format!("{preferred}.src"), &t.src),
            tgt: self.lax(&format!("{preferred}.tgt"), &t.tgt),
            obj_comp: t
                .obj_comp
                .iter()
                .map(|(k, v)| (k.clone(), self.function(&format!("{preferred}.obj_comp.{k}"), v)))
                .collect(),
            pro_comp: t
                .pro_comp
                .iter()
                .map(|(k, v)| (k.clone(), self.function(&format!("{preferred}.pro_comp.{k}"), v)))
                .collect(),
        };
        let name = unique(&self.raw.transformations, preferred);
        self.transformations.push((t.clone(), name.clone()));
        self.raw.transformations.insert(name.clone(), record);
        name
    }

    fn double_functor(&mut self, preferred: &str, h: &DoubleFunctor) -> RawDoubleFunctor {
        RawDoubleFunctor {
            src: self.double(&format!("{preferred}.src"), &h.src_dc),
            tgt: self.double(&format!("{preferred}.tgt"), &h.tgt_dc),
            f0: self.functor(&format!("{preferred}.f0"), &h.f0),
            f1: self.functor(&format!("{preferred}.f1"), &h.f1),
        }
    }

    fn ddf(&mut self, preferred: &str, p: &DdfCandidate) -> String {
        if let Some((_, n)) = self.ddfs.iter().find(|(v, _)| v == p) {
            return n.clone();
        }
        let record = self.double_functor(preferred, &p.proj);
        let name = unique(&self.raw.ddfs, preferred);
        self.ddfs.push((p.clone(), name.clone()));
        self.raw.ddfs.insert(name.clone(), record);
        name
    }

    fn module_record(&mut self, preferred: &str, m: &Module) -> RawModule {
        RawModule {
            src_f: self.lax(&format!("{preferred}.src_f"), &m.src_f),
            tgt_f: self.lax(&format!("{preferred}.tgt_f"), &m.tgt_f),
            on_proarrow: m
                .on_proarrow
                .iter()
                .map(|(k, v)| (k.clone(), self.span(&format!("{preferred}.on_proarrow.{k}"), v)))
                .collect(),
            on_cell: m
                .on_cell
                .iter()
                .map(|(k, v)| (k.clone(), self.function(&format!("{preferred}.on_cell.{k}"), v)))
                .collect(),
            left_act: m
                .left_act
                .iter()
                .map(|((p, q), v)| {
                    let fn_name = self.function(&format!("{preferred}.left_act.{p}.{q}"), v);
                    (p.clone(), q.clone(), fn_name)
                })
                .collect(),
            right_act: m
                .right_act
                .iter()
                .map(|((p, q), v)| {
                    let fn_name = self.function(&format!("{preferred}.right_act.{p}.{q}"), v);
                    (p.clone(), q.clone(), fn_name)
                })
                .collect(),
        }
    }

    fn profunctor_record(&mut self, preferred: &str, m: &InternalProfunctor) -> RawProfunctor {
        RawProfunctor {
            src_p: self.ddf(&format!("{preferred}.src_p"), &m.src_p),
            tgt_p: self.ddf(&format!("{preferred}.tgt_p"), &m.tgt_p),
            carrier: self.category(&format!("{preferred}.carrier"), &m.carrier),
            mfun: self.functor(&format!("{preferred}.mfun"), &m.mfun),
            leg0: self.functor(&format!("{preferred}.leg0"), &m.leg0),
            leg1: self.functor(&format!("{preferred}.leg1"), &m.leg1),
            left_act: self.functor(&format!("{preferred}.left_act"), &m.left_act),
            right_act: self.functor(&format!("{preferred}.right_act"), &m.right_act),
        }
    }
}

/// Emit the canonical text form. Sub-entities are interned by value under
/// derived names; repeated emission of the same document is byte-identical.
pub fn emit(doc: &Document) -> String {
    let mut e = Emitter::default();
    for (name, s) in &doc.sets {
        e.set(name, s);
    }
    for (name, f) in &doc.functions {
        e.function(name, f);
    }
    for (name, c) in &doc.categories {
        e.category(name, c);
    }
    for (name, b) in &doc.double_categories {
        e.double(name, b);
    }
    for (name, f) in &doc.lax_functors {
        e.lax(name, f);
    }
    for (name, t) in &doc.transformations {
        e.transformation(name, t);
    }
    for (name, p) in &doc.ddfs {
        e.ddf(name, p);
    }
    for (name, h) in &doc.ddf_morphisms {
        let record = e.double_functor(name, h);
        let key = unique(&e.raw.ddf_morphisms, name);
        e.raw.ddf_morphisms.insert(key, record);
    }
    for (name, m) in &doc.modules {
        let record = e.module_record(name, m);
        let key = unique(&e.raw.modules, name);
        e.raw.modules.insert(key, record);
    }
    for (name, mu) in &doc.multimodulations {
        let sources = mu
            .sources
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let rec = e.module_record(&format!("{name}.source{i}"), m);
                intern_module(&mut e, &format!("{name}.source{i}"), rec)
            })
            .collect();
        let target_rec = e.module_record(&format!("{name}.target"), &mu.target);
        let target = intern_module(&mut e, &format!("{name}.target"), target_rec);
        let record = RawMultimodulation {
            sources,
            target,
            left_leg: e.transformation(&format!("{name}.left_leg"), &mu.left_leg),
            right_leg: e.transformation(&format!("{name}.right_leg"), &mu.right_leg),
            components: mu
                .components
                .iter()
                .map(|(p, v)| {
                    let fn_name =
                        e.function(&format!("{name}.components.{}", p.join(";")), v);
                    (p.clone(), fn_name)
                })
                .collect(),
            nullary: mu
                .nullary
                .iter()
                .map(|(k, v)| (k.clone(), e.function(&format!("{name}.nullary.{k}"), v)))
                .collect(),
        };
        let key = unique(&e.raw.multimodulations, name);
        e.raw.multimodulations.insert(key, record);
    }
    for (name, m) in &doc.profunctors {
        let record = e.profunctor_record(name, m);
        let key = unique(&e.raw.profunctors, name);
        e.raw.profunctors.insert(key, record);
    }
    for (name, u) in &doc.multicells {
        let sources = u
            .sources
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let rec = e.profunctor_record(&format!("{name}.source{i}"), m);
                intern_profunctor(&mut e, &format!("{name}.source{i}"), rec, m)
            })
            .collect();
        let target_rec = e.profunctor_record(&format!("{name}.target"), &u.target);
        let target = intern_profunctor(&mut e, &format!("{name}.target"), target_rec, &u.target);
        let record = RawMulticell {
            sources,
            target,
            left_b: e.double_functor(&format!("{name}.left_b"), &u.left_b),
            right_b: e.double_functor(&format!("{name}.right_b"), &u.right_b),
            mediating: e.functor(&format!("{name}.mediating"), &u.mediating),
        };
        let key = unique(&e.raw.multicells, name);
        e.raw.multicells.insert(key, record);
    }
    serde_json::to_string_pretty(&e.raw).expect("serialization cannot fail") + "\n"
}

// Modules and profunctors are referenced by name from multimodulations and
// multicells, so sources and targets must be interned like primitives. The
// raw record is the value identity here: equal records mean equal entities.
fn intern_module(e: &mut Emitter, preferred: &str, record: RawModule) -> String {
    let encoded = serde_json::to_string(&record).unwrap();
    for (name, existing) in &e.raw.modules {
        if serde_json::to_string(existing).unwrap() == encoded {
            return name.clone();
        }
    }
    let name = unique(&e.raw.modules, preferred);
    e.raw.modules.insert(name.clone(), record);
    name
}

fn intern_profunctor(
    e: &mut Emitter,
    preferred: &str,
    record: RawProfunctor,
    _m: &InternalProfunctor,
) -> String {
    let encoded = serde_json::to_string(&record).unwrap();
    for (name, existing) in &e.raw.profunctors {
        if serde_json::to_string(existing).unwrap() == encoded {
            return name.clone();
        }
    }
    let name = unique(&e.raw.profunctors, preferred);
    e.raw.profunctors.insert(name.clone(), record);
    name
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dbl::{terminal_double, vertical_double, walking_proarrow};
    use crate::elements::el_functor;
    use crate::equiv::lax_of_category;
    use crate::lax::{representable, terminal_lax};
    use crate::modules::{laxity_multimodulation, unit_multimodulation, unit_module, Multimodulation};
    use crate::prof::{unit_profunctor, ProfMulticell};

    fn sample_document() -> Document {
        let mut doc = Document::default();
        doc.sets.insert("three".into(), FinSet::of(&["a", "b", "c"]));
        doc.categories.insert("c2".into(), corpus::c2());
        doc.categories.insert("square".into(), corpus::square_poset());
        doc.double_categories
            .insert("vertical_c2".into(), vertical_double(&corpus::c2()));
        doc.double_categories
            .insert("walking".into(), walking_proarrow());
        let f = lax_of_category(&corpus::z2_monoid());
        let g = terminal_lax(&walking_proarrow());
        let r = representable(&walking_proarrow(), "A").unwrap();
        doc.lax_functors.insert("z2".into(), f.clone());
        doc.lax_functors.insert("pt".into(), g.clone());
        doc.lax_functors.insert("repA".into(), r.clone());
        doc.transformations
            .insert("id_z2".into(), LaxTransformation::identity(&f));
        let p = el_functor(&g).unwrap();
        doc.ddfs.insert("el_pt".into(), p.clone());
        doc.ddf_morphisms
            .insert("id_el_pt".into(), DoubleFunctor::identity(p.total()));
        doc.modules.insert("unit_z2".into(), unit_module(&f));
        doc.multimodulations
            .insert("laxity_z2".into(), laxity_multimodulation(&f));
        doc.multimodulations
            .insert("unit_mm_z2".into(), unit_multimodulation(&f));
        doc.multimodulations.insert(
            "id_unit_z2".into(),
            Multimodulation::identity(&unit_module(&f)),
        );
        let up = unit_profunctor(&p).unwrap();
        doc.profunctors.insert("unit_el_pt".into(), up.clone());
        doc.multicells
            .insert("id_unit_el_pt".into(), ProfMulticell::identity(&up));
        doc
    }

    #[test]
    fn emit_then_parse_recovers_every_entity() {
        let doc = sample_document();
        let text = emit(&doc);
        let back = parse(&text).unwrap();
        for (name, s) in &doc.sets {
            assert_eq!(back.sets.get(name), Some(s));
        }
        for (name, c) in &doc.categories {
            assert_eq!(back.categories.get(name), Some(c));
        }
        for (name, b) in &doc.double_categories {
            assert_eq!(back.double_categories.get(name), Some(b));
        }
        for (name, f) in &doc.lax_functors {
            assert_eq!(back.lax_functors.get(name), Some(f));
        }
        for (name, t) in &doc.transformations {
            assert_eq!(back.transformations.get(name), Some(t));
        }
        for (name, p) in &doc.ddfs {
            assert_eq!(back.ddfs.get(name), Some(p));
        }
        for (name, m) in &doc.modules {
            assert_eq!(back.modules.get(name), Some(m));
        }
        for (name, mu) in &doc.multimodulations {
            assert_eq!(back.multimodulations.get(name), Some(mu));
        }
        for (name, m) in &doc.profunctors {
            assert_eq!(back.profunctors.get(name), Some(m));
        }
        for (name, u) in &doc.multicells {
            assert_eq!(back.multicells.get(name), Some(u));
        }
    }

    #[test]
    fn emission_is_idempotent_on_canonical_form() {
        let doc = sample_document();
        let canonical = emit(&parse(&emit(&doc)).unwrap());
        let again = emit(&parse(&canonical).unwrap());
        assert_eq!(canonical, again);
    }

    #[test]
    fn emission_is_deterministic() {
        let a = emit(&sample_document());
        let b = emit(&sample_document());
        assert_eq!(a, b);
    }

    #[test]
    fn empty_document_round_trips() {
        let doc = parse("{}").unwrap();
        assert_eq!(doc, Document::default());
        assert_eq!(parse(&emit(&doc)).unwrap(), doc);
    }

    #[test]
    fn dangling_reference_is_named() {
        let text = r#"{"functions": {"f": {"dom": "missing", "cod": "missing", "map": {}}}}"#;
        match parse(text) {
            Err(Error::UnresolvedName(msg)) => {
                assert!(msg.contains("functions.f"), "{msg}");
                assert!(msg.contains("missing"), "{msg}");
            }
            other => panic!("expected an unresolved name, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_is_a_parse_error() {
        match parse("{not json") {
            Err(Error::Parse(_)) => {}
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn corpus_files_round_trip_byte_exactly() {
        for b in [terminal_double(), vertical_double(&corpus::c2()), walking_proarrow()] {
            let mut doc = Document::default();
            doc.double_categories.insert("base".into(), b.clone());
            doc.lax_functors.insert("pt".into(), terminal_lax(&b));
            let canonical = emit(&parse(&emit(&doc)).unwrap());
            assert_eq!(emit(&parse(&canonical).unwrap()), canonical);
        }
    }
}
