//! Finite sets, functions, spans, and span morphisms.
//!
//! This is the ambient material of the double category of sets and spans:
//! spans compose by pullback, and pullback vertices carry canonical pair
//! identifiers `"(x,y)"` so that every construction downstream is
//! deterministic and comparisons after re-bracketing are mechanical.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::report::Report;

/// Canonical identifier of a pair element in a pullback vertex.
pub fn pair_id(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// An ordered finite set of opaque string identifiers.
///
/// Order is the insertion order of the presentation and is preserved by every
/// construction; equality is order-sensitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    pub fn new(elements: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        Ok(FinSet { elements })
    }

    /// Convenience constructor for literals; panics on duplicates.
    pub fn of(elements: &[&str]) -> Self {
        FinSet::new(elements.iter().map(|s| s.to_string()).collect()).expect("duplicate element")
    }

    pub fn empty() -> Self {
        FinSet { elements: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &str) -> bool {
        self.elements.iter().any(|x| x == e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.elements.iter()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }
}

/// A total function between finite sets, stored as an explicit table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    map: BTreeMap<String, String>,
}

impl FinFn {
    pub fn new(dom: FinSet, cod: FinSet, map: BTreeMap<String, String>) -> Result<Self> {
        for x in dom.iter() {
            match map.get(x) {
                None => return Err(Error::Malformed(format!("no image for {x}"))),
                Some(y) if !cod.contains(y) => {
                    return Err(Error::Malformed(format!("image {y} of {x} not in codomain")))
                }
                _ => {}
            }
        }
        for k in map.keys() {
            if !dom.contains(k) {
                return Err(Error::Malformed(format!("table key {k} not in domain")));
            }
        }
        Ok(FinFn { dom, cod, map })
    }

    /// Build a function by evaluating `f` on each domain element.
    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(&str) -> String) -> Result<Self> {
        let map = dom.iter().map(|x| (x.clone(), f(x))).collect();
        FinFn::new(dom, cod, map)
    }

    pub fn identity(a: &FinSet) -> Self {
        FinFn {
            dom: a.clone(),
            cod: a.clone(),
            map: a.iter().map(|x| (x.clone(), x.clone())).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn get(&self, x: &str) -> Option<&str> {
        self.map.get(x).map(|s| s.as_str())
    }

    /// Apply to a domain element. Panics on a non-domain element; totality is
    /// guaranteed by construction.
    pub fn apply(&self, x: &str) -> &str {
        self.map
            .get(x)
            .unwrap_or_else(|| panic!("element {x} not in domain"))
            .as_str()
    }

    /// Preimage of `y`, in domain order.
    pub fn preimage(&self, y: &str) -> Vec<&str> {
        self.dom
            .iter()
            .filter(|x| self.apply(x) == y)
            .map(|s| s.as_str())
            .collect()
    }

    pub fn is_bijection(&self) -> bool {
        if self.dom.len() != self.cod.len() {
            return false;
        }
        let images: BTreeSet<&str> = self.dom.iter().map(|x| self.apply(x)).collect();
        images.len() == self.dom.len()
    }

    pub fn table(&self) -> &BTreeMap<String, String> {
        &self.map
    }
}

/// Composite `g ∘ f`: first `f`, then `g`.
pub fn compose_fn(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.cod != g.dom {
        return Err(Error::CompositionMismatch(
            "codomain of first function differs from domain of second".into(),
        ));
    }
    FinFn::from_fn(f.dom.clone(), g.cod.clone(), |x| g.apply(f.apply(x)).to_string())
}

/// A span `left ← vertex → right`, the proarrows of the span double category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    left: FinSet,
    vertex: FinSet,
    right: FinSet,
    leg0: FinFn,
    leg1: FinFn,
}

impl Span {
    pub fn new(leg0: FinFn, leg1: FinFn) -> Result<Self> {
        if leg0.dom() != leg1.dom() {
            return Err(Error::Malformed("span legs have different domains".into()));
        }
        Ok(Span {
            left: leg0.cod().clone(),
            vertex: leg0.dom().clone(),
            right: leg1.cod().clone(),
            leg0,
            leg1,
        })
    }

    pub fn left(&self) -> &FinSet {
        &self.left
    }

    pub fn vertex(&self) -> &FinSet {
        &self.vertex
    }

    pub fn right(&self) -> &FinSet {
        &self.right
    }

    pub fn leg0(&self) -> &FinFn {
        &self.leg0
    }

    pub fn leg1(&self) -> &FinFn {
        &self.leg1
    }
}

/// The unit proarrow on `a`: both legs the identity.
pub fn identity_span(a: &FinSet) -> Span {
    Span::new(FinFn::identity(a), FinFn::identity(a)).expect("identity legs share a domain")
}

/// Canonical pullback of `f : X → Z` and `g : Y → Z`.
///
/// The vertex is `{ (x,y) | f(x) = g(y) }` with pair identifiers, ordered by
/// `X` then `Y`; returns the vertex with its two projections.
pub fn pullback(f: &FinFn, g: &FinFn) -> Result<(FinSet, FinFn, FinFn)> {
    if f.cod() != g.cod() {
        return Err(Error::CompositionMismatch(
            "pullback requires a common codomain".into(),
        ));
    }
    let mut elements = Vec::new();
    let mut p0 = BTreeMap::new();
    let mut p1 = BTreeMap::new();
    for x in f.dom().iter() {
        for y in g.dom().iter() {
            if f.apply(x) == g.apply(y) {
                let id = pair_id(x, y);
                p0.insert(id.clone(), x.clone());
                p1.insert(id.clone(), y.clone());
                elements.push(id);
            }
        }
    }
    let vertex = FinSet::new(elements)?;
    let p0 = FinFn::new(vertex.clone(), f.dom().clone(), p0)?;
    let p1 = FinFn::new(vertex.clone(), g.dom().clone(), p1)?;
    Ok((vertex, p0, p1))
}

/// External composition of spans: `s : A ⇸ B` then `t : B ⇸ C`.
///
/// The vertex is the canonical pullback of `s.leg1` against `t.leg0`.
pub fn compose_spans(s: &Span, t: &Span) -> Result<Span> {
    if s.right() != t.left() {
        return Err(Error::CompositionMismatch(
            "right boundary of first span differs from left boundary of second".into(),
        ));
    }
    let (_, p0, p1) = pullback(s.leg1(), t.leg0())?;
    Span::new(compose_fn(s.leg0(), &p0)?, compose_fn(t.leg1(), &p1)?)
}

/// A morphism of spans: three component functions from `src` to `tgt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanMorphism {
    src: Span,
    tgt: Span,
    left_fn: FinFn,
    vertex_fn: FinFn,
    right_fn: FinFn,
}

impl SpanMorphism {
    pub fn new(src: Span, tgt: Span, left_fn: FinFn, vertex_fn: FinFn, right_fn: FinFn) -> Result<Self> {
        if left_fn.dom() != src.left() || left_fn.cod() != tgt.left() {
            return Err(Error::Malformed("left component has the wrong boundary".into()));
        }
        if vertex_fn.dom() != src.vertex() || vertex_fn.cod() != tgt.vertex() {
            return Err(Error::Malformed("vertex component has the wrong boundary".into()));
        }
        if right_fn.dom() != src.right() || right_fn.cod() != tgt.right() {
            return Err(Error::Malformed("right component has the wrong boundary".into()));
        }
        Ok(SpanMorphism { src, tgt, left_fn, vertex_fn, right_fn })
    }

    pub fn identity(s: &Span) -> Self {
        SpanMorphism {
            src: s.clone(),
            tgt: s.clone(),
            left_fn: FinFn::identity(s.left()),
            vertex_fn: FinFn::identity(s.vertex()),
            right_fn: FinFn::identity(s.right()),
        }
    }

    pub fn src(&self) -> &Span {
        &self.src
    }

    pub fn tgt(&self) -> &Span {
        &self.tgt
    }

    pub fn left_fn(&self) -> &FinFn {
        &self.left_fn
    }

    pub fn vertex_fn(&self) -> &FinFn {
        &self.vertex_fn
    }

    pub fn right_fn(&self) -> &FinFn {
        &self.right_fn
    }
}

/// Check both commuting squares of a span morphism element-wise.
pub fn check_span_morphism(m: &SpanMorphism) -> Report {
    let mut report = Report::ok();
    for v in m.src.vertex().iter() {
        let lhs = m.tgt.leg0().apply(m.vertex_fn.apply(v));
        let rhs = m.left_fn.apply(m.src.leg0().apply(v));
        if lhs != rhs {
            report.push("span.left-square", format!("vertex element {v}: {lhs} != {rhs}"));
        }
        let lhs = m.tgt.leg1().apply(m.vertex_fn.apply(v));
        let rhs = m.right_fn.apply(m.src.leg1().apply(v));
        if lhs != rhs {
            report.push("span.right-square", format!("vertex element {v}: {lhs} != {rhs}"));
        }
    }
    report
}

/// The canonical re-bracketing bijection
/// `vertex((r;s);t) → vertex(r;(s;t))`, `((a,b),c) ↦ (a,(b,c))`.
pub fn associator(r: &Span, s: &Span, t: &Span) -> Result<FinFn> {
    let rs = compose_spans(r, s)?;
    let st = compose_spans(s, t)?;
    let lhs = compose_spans(&rs, t)?;
    let rhs = compose_spans(r, &st)?;
    // Recover components from the chain rather than parsing pair strings.
    let chain = chain_vertex(&[r, s, t])?;
    let map = lhs
        .vertex()
        .iter()
        .map(|id| {
            // lhs ids are ((a,b),c); locate the triple by matching against the chain.
            let idx = chain
                .set
                .iter()
                .position(|c| c == id)
                .expect("left-nested chain id present");
            let parts = &chain.tuples[idx];
            (id.clone(), pair_id(&parts[0], &pair_id(&parts[1], &parts[2])))
        })
        .collect();
    FinFn::new(lhs.vertex().clone(), rhs.vertex().clone(), map)
}

/// The iterated pullback vertex of a composable chain of spans, with
/// left-nested canonical pair identifiers and the underlying tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVertex {
    pub set: FinSet,
    /// `tuples[i]` are the components of `set.elements()[i]`.
    pub tuples: Vec<Vec<String>>,
}

impl ChainVertex {
    pub fn components(&self, id: &str) -> Option<&[String]> {
        self.set
            .iter()
            .position(|e| e == id)
            .map(|i| self.tuples[i].as_slice())
    }
}

/// Enumerate tuples `(v_1, …, v_k)` with `leg1(v_i) = leg0(v_{i+1})`, named by
/// left-nested pairs. A chain of length one is the vertex itself; the empty
/// chain is not defined here (unit paths are handled by the callers).
pub fn chain_vertex(spans: &[&Span]) -> Result<ChainVertex> {
    let first = spans
        .first()
        .ok_or_else(|| Error::InvalidInput("empty span chain".into()))?;
    let mut ids: Vec<String> = first.vertex().iter().cloned().collect();
    let mut tuples: Vec<Vec<String>> = first.vertex().iter().map(|v| vec![v.clone()]).collect();
    for window in spans.windows(2) {
        if window[0].right() != window[1].left() {
            return Err(Error::CompositionMismatch("span chain does not match".into()));
        }
    }
    for next in &spans[1..] {
        let mut new_ids = Vec::new();
        let mut new_tuples = Vec::new();
        for (id, tuple) in ids.iter().zip(&tuples) {
            let boundary = spans[tuple.len() - 1].leg1().apply(tuple.last().unwrap());
            for v in next.vertex().iter() {
                if next.leg0().apply(v) == boundary {
                    new_ids.push(pair_id(id, v));
                    let mut t = tuple.clone();
                    t.push(v.clone());
                    new_tuples.push(t);
                }
            }
        }
        ids = new_ids;
        tuples = new_tuples;
    }
    Ok(ChainVertex { set: FinSet::new(ids)?, tuples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fn_of(dom: &[&str], cod: &[&str], pairs: &[(&str, &str)]) -> FinFn {
        FinFn::new(
            FinSet::of(dom),
            FinSet::of(cod),
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn compose_identity() {
        let a = FinSet::of(&["a", "b"]);
        let f = fn_of(&["x"], &["a", "b"], &[("x", "a")]);
        assert_eq!(compose_fn(&FinFn::identity(&a), &f).unwrap(), f);
    }

    #[test]
    fn compose_chase() {
        let f = fn_of(&["x"], &["a"], &[("x", "a")]);
        let g = fn_of(&["a"], &["p"], &[("a", "p")]);
        let gf = compose_fn(&g, &f).unwrap();
        assert_eq!(gf.apply("x"), "p");
    }

    #[test]
    fn compose_mismatch() {
        let f = fn_of(&["x"], &["a"], &[("x", "a")]);
        let g = fn_of(&["b"], &["p"], &[("b", "p")]);
        assert!(matches!(compose_fn(&g, &f), Err(Error::CompositionMismatch(_))));
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let z = FinSet::of(&["u", "v"]);
        let idz = FinFn::identity(&z);
        let (p, p0, p1) = pullback(&idz, &idz).unwrap();
        assert_eq!(p.elements(), &["(u,u)", "(v,v)"]);
        assert_eq!(p0, p1);
    }

    #[test]
    fn pullback_over_point_is_product() {
        let f = fn_of(&["a", "b"], &["z"], &[("a", "z"), ("b", "z")]);
        let g = fn_of(&["c"], &["z"], &[("c", "z")]);
        let (p, _, _) = pullback(&f, &g).unwrap();
        assert_eq!(p.elements(), &["(a,c)", "(b,c)"]);
    }

    #[test]
    fn identity_span_on_empty_set() {
        let s = identity_span(&FinSet::empty());
        assert!(s.vertex().is_empty());
    }

    #[test]
    fn unit_law_vertex_is_graph_of_leg0() {
        let a = FinSet::of(&["a1", "a2"]);
        let b = FinSet::of(&["b"]);
        let s = Span::new(
            fn_of(&["s1", "s2"], &["a1", "a2"], &[("s1", "a1"), ("s2", "a2")]),
            FinFn::from_fn(FinSet::of(&["s1", "s2"]), b.clone(), |_| "b".into()).unwrap(),
        )
        .unwrap();
        let comp = compose_spans(&identity_span(&a), &s).unwrap();
        assert_eq!(comp.vertex().len(), s.vertex().len());
        // Every element is (leg0(x), x) for x in the original vertex.
        for x in s.vertex().iter() {
            assert!(comp.vertex().contains(&pair_id(s.leg0().apply(x), x)));
        }
    }

    #[test]
    fn diagonal_of_unit_composite() {
        let a = FinSet::of(&["p", "q"]);
        let comp = compose_spans(&identity_span(&a), &identity_span(&a)).unwrap();
        assert_eq!(comp.vertex().elements(), &["(p,p)", "(q,q)"]);
    }

    #[test]
    fn span_morphism_violation_witnessed() {
        let a = FinSet::of(&["a1", "a2"]);
        let s = Span::new(FinFn::identity(&a), FinFn::identity(&a)).unwrap();
        let swap = fn_of(&["a1", "a2"], &["a1", "a2"], &[("a1", "a2"), ("a2", "a1")]);
        let m = SpanMorphism::new(
            s.clone(),
            s.clone(),
            FinFn::identity(&a),
            swap,
            FinFn::identity(&a),
        )
        .unwrap();
        let report = check_span_morphism(&m);
        assert!(report.has_rule("span.left-square"));
        assert!(check_span_morphism(&SpanMorphism::identity(&s)).is_ok());
    }

    fn small_span(seed: &str, left: &FinSet, right: &FinSet, n: usize) -> Span {
        // Deterministic small span for law tests.
        let vertex = FinSet::new((0..n).map(|i| format!("{seed}{i}")).collect()).unwrap();
        let leg0 = FinFn::from_fn(vertex.clone(), left.clone(), |x| {
            let i = x.trim_start_matches(seed).parse::<usize>().unwrap();
            left.elements()[i % left.len()].clone()
        })
        .unwrap();
        let leg1 = FinFn::from_fn(vertex.clone(), right.clone(), |x| {
            let i = x.trim_start_matches(seed).parse::<usize>().unwrap();
            right.elements()[(i * 7 + 1) % right.len()].clone()
        })
        .unwrap();
        Span::new(leg0, leg1).unwrap()
    }

    #[test]
    fn associator_is_bijection_commuting_with_outer_legs() {
        let a = FinSet::of(&["a0", "a1"]);
        let b = FinSet::of(&["b0", "b1", "b2"]);
        let c = FinSet::of(&["c0", "c1"]);
        let d = FinSet::of(&["d0", "d1", "d2"]);
        let r = small_span("r", &a, &b, 4);
        let s = small_span("s", &b, &c, 5);
        let t = small_span("t", &c, &d, 4);
        let assoc = associator(&r, &s, &t).unwrap();
        assert!(assoc.is_bijection());
        let lhs = compose_spans(&compose_spans(&r, &s).unwrap(), &t).unwrap();
        let rhs = compose_spans(&r, &compose_spans(&s, &t).unwrap()).unwrap();
        for v in lhs.vertex().iter() {
            assert_eq!(lhs.leg0().apply(v), rhs.leg0().apply(assoc.apply(v)));
            assert_eq!(lhs.leg1().apply(v), rhs.leg1().apply(assoc.apply(v)));
        }
    }

    #[test]
    fn pullback_universal_property_by_enumeration() {
        // For every commuting cone from a test set with at most 6 elements,
        // exactly one mediating function into the pullback exists.
        let f = fn_of(&["x0", "x1", "x2"], &["z0", "z1"], &[("x0", "z0"), ("x1", "z1"), ("x2", "z0")]);
        let g = fn_of(&["y0", "y1"], &["z0", "z1"], &[("y0", "z1"), ("y1", "z0")]);
        let (p, p0, p1) = pullback(&f, &g).unwrap();
        let t = FinSet::of(&["t0", "t1"]);
        // Enumerate all cones (q0, q1) with f q0 = g q1.
        let xs: Vec<&String> = f.dom().iter().collect();
        let ys: Vec<&String> = g.dom().iter().collect();
        let mut cones = 0;
        for i in 0..xs.len().pow(t.len() as u32) {
            for j in 0..ys.len().pow(t.len() as u32) {
                let q0 = FinFn::from_fn(t.clone(), f.dom().clone(), |e| {
                    let k = t.iter().position(|x| x == e).unwrap();
                    xs[(i / xs.len().pow(k as u32)) % xs.len()].clone()
                })
                .unwrap();
                let q1 = FinFn::from_fn(t.clone(), g.dom().clone(), |e| {
                    let k = t.iter().position(|x| x == e).unwrap();
                    ys[(j / ys.len().pow(k as u32)) % ys.len()].clone()
                })
                .unwrap();
                if t.iter().any(|e| f.apply(q0.apply(e)) != g.apply(q1.apply(e))) {
                    continue;
                }
                cones += 1;
                // Count mediating maps m with p0 m = q0 and p1 m = q1.
                let candidates: Vec<Vec<&String>> = t
                    .iter()
                    .map(|e| {
                        p.iter()
                            .filter(|v| p0.apply(v) == q0.apply(e) && p1.apply(v) == q1.apply(e))
                            .collect()
                    })
                    .collect();
                for per_element in &candidates {
                    assert_eq!(per_element.len(), 1, "mediating map not unique");
                }
            }
        }
        assert!(cones > 0);
    }

    proptest! {
        #[test]
        fn compose_fn_matches_elementwise_oracle(
            fi in proptest::collection::vec(0usize..5, 1..5),
            gi in proptest::collection::vec(0usize..4, 5),
        ) {
            let x = FinSet::new((0..fi.len()).map(|i| format!("x{i}")).collect()).unwrap();
            let y = FinSet::new((0..5).map(|i| format!("y{i}")).collect()).unwrap();
            let z = FinSet::new((0..4).map(|i| format!("z{i}")).collect()).unwrap();
            let f = FinFn::from_fn(x.clone(), y.clone(), |e| {
                let i = e[1..].parse::<usize>().unwrap();
                format!("y{}", fi[i])
            }).unwrap();
            let g = FinFn::from_fn(y.clone(), z.clone(), |e| {
                let i = e[1..].parse::<usize>().unwrap();
                format!("z{}", gi[i])
            }).unwrap();
            let gf = compose_fn(&g, &f).unwrap();
            for e in x.iter() {
                prop_assert_eq!(gf.apply(e), g.apply(f.apply(e)));
            }
        }

        #[test]
        fn pullback_matches_filter_oracle(
            fi in proptest::collection::vec(0usize..3, 1..5),
            gi in proptest::collection::vec(0usize..3, 1..5),
        ) {
            let x = FinSet::new((0..fi.len()).map(|i| format!("x{i}")).collect()).unwrap();
            let y = FinSet::new((0..gi.len()).map(|i| format!("y{i}")).collect()).unwrap();
            let z = FinSet::new((0..3).map(|i| format!("z{i}")).collect()).unwrap();
            let f = FinFn::from_fn(x.clone(), z.clone(), |e| format!("z{}", fi[e[1..].parse::<usize>().unwrap()])).unwrap();
            let g = FinFn::from_fn(y.clone(), z.clone(), |e| format!("z{}", gi[e[1..].parse::<usize>().unwrap()])).unwrap();
            let (p, _, _) = pullback(&f, &g).unwrap();
            let mut brute = Vec::new();
            for a in x.iter() {
                for b in y.iter() {
                    if f.apply(a) == g.apply(b) {
                        brute.push(pair_id(a, b));
                    }
                }
            }
            prop_assert_eq!(p.elements().to_vec(), brute);
        }

        #[test]
        fn span_composition_matches_fiberwise_counting(
            si in proptest::collection::vec((0usize..3, 0usize..3), 1..6),
            ti in proptest::collection::vec((0usize..3, 0usize..3), 1..6),
        ) {
            let a = FinSet::new((0..3).map(|i| format!("a{i}")).collect()).unwrap();
            let b = FinSet::new((0..3).map(|i| format!("b{i}")).collect()).unwrap();
            let c = FinSet::new((0..3).map(|i| format!("c{i}")).collect()).unwrap();
            let sv = FinSet::new((0..si.len()).map(|i| format!("s{i}")).collect()).unwrap();
            let tv = FinSet::new((0..ti.len()).map(|i| format!("t{i}")).collect()).unwrap();
            let s = Span::new(
                FinFn::from_fn(sv.clone(), a, |e| format!("a{}", si[e[1..].parse::<usize>().unwrap()].0)).unwrap(),
                FinFn::from_fn(sv.clone(), b.clone(), |e| format!("b{}", si[e[1..].parse::<usize>().unwrap()].1)).unwrap(),
            ).unwrap();
            let t = Span::new(
                FinFn::from_fn(tv.clone(), b.clone(), |e| format!("b{}", ti[e[1..].parse::<usize>().unwrap()].0)).unwrap(),
                FinFn::from_fn(tv.clone(), c, |e| format!("c{}", ti[e[1..].parse::<usize>().unwrap()].1)).unwrap(),
            ).unwrap();
            let comp = compose_spans(&s, &t).unwrap();
            let expected: usize = b.iter().map(|x| {
                s.leg1().preimage(x).len() * t.leg0().preimage(x).len()
            }).sum();
            prop_assert_eq!(comp.vertex().len(), expected);
        }
    }
}
