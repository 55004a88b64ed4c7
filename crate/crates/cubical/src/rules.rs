//! Cat-rules: functors on coordinate spaces that carry their own edge
//! categories, and their application to a whole presentation.
//!
//! Applying a rule with directions `r` to a presentation `P` gives the
//! presentation with vertex sets `R^L(P_β)`, old structure maps `R^L(·)`, new
//! edges from the rule, and faces mixing an old direction with a rule direction
//! built from the old pair parametrization and the rule's pair parametrization
//! over the parameter space.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::nfold::{
    canonical_params, compose_dom, pick_tag, spread_untagged, stack_tagged, tagged_labels, CoordSchema, Dir, EdgeCat,
    Face, Presentation,
};
use crate::poly::{Coord, Env, Poly, PolyMap};
use crate::scalars::{q, Q};
use crate::slope::{all_move, bit, derive_map, slope_with, SlopeSpec};

pub trait Rule {
    fn name(&self) -> String;
    fn dirs(&self) -> Vec<Dir>;
    /// Coordinates of `R^layer(X)`.
    fn coords(&self, layer: u32, x: &[Coord]) -> Vec<Coord>;
    /// The functor on maps.
    fn apply_map(&self, layer: u32, f: &PolyMap) -> Result<PolyMap>;
    /// Constraint maps of `R^layer(X)` induced by a constraint `g` of `X`.
    fn constraints(&self, layer: u32, g: &PolyMap, x: &[Coord]) -> Result<Vec<PolyMap>>;
    /// The rule's edge category from layer `lo` to layer `hi` over `X`.
    fn edge(&self, lo: u32, hi: u32, x: &[Coord]) -> Result<EdgeCat>;
    /// Quadruples for the face spanned by both rule directions (two-direction rules).
    fn quad(&self, _x: &[Coord]) -> Result<Option<PolyMap>> {
        Ok(None)
    }
}

fn partners(x: &[Coord], j: u8) -> Vec<Coord> {
    x.iter().map(|c| c.partner(j)).collect()
}

fn cat(parts: &[&[Coord]]) -> Vec<Coord> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// `f × id` on extra coordinates.
fn times_id(f: &PolyMap, extra: &[Coord]) -> Result<PolyMap> {
    let dom = cat(&[&f.dom, extra]);
    let g = f.with_dom(&dom)?;
    let mut cod = g.cod.clone();
    let mut comps = g.comps.clone();
    let env = Env::new(&dom);
    for c in extra {
        cod.push(*c);
        comps.push(env.get(c));
    }
    Ok(PolyMap::new(dom, cod, comps))
}

/// `g ∘ (x ↦ x + s·w)` where `w` is the `j`-partner of `x` and `s` a polynomial
/// over the listed extra coordinates.
fn shifted_constraint(g: &PolyMap, x: &[Coord], j: u8, dom: &[Coord], scale: &dyn Fn(&Env) -> Poly) -> PolyMap {
    let env = Env::new(dom);
    let s = scale(&env);
    g.substitute_dom(dom, &|c: &Coord| {
        if x.contains(c) {
            env.get(c).add(&s.mul(&env.get(&c.partner(j))))
        } else {
            env.get_or_zero(c)
        }
    })
}

/// Edge category of the first kind: `(x, w, e) ↦ x + s·w`, where `e` are extra
/// coordinates shared by both ends and `s` is a polynomial in them.
pub fn first_kind_edge(x: &[Coord], j: u8, extra: &[Coord], scale: &dyn Fn(&Env) -> Poly, groupoid: bool) -> EdgeCat {
    let w = partners(x, j);
    let lo = cat(&[x, extra]);
    let hi = cat(&[x, &w, extra]);
    let source = PolyMap::projection(&hi, &lo);
    let target = PolyMap::build(&hi, &lo, |e| {
        let s = scale(e);
        let mut out: Vec<Poly> = x.iter().map(|c| e.get(c).add(&s.mul(&e.get(&c.partner(j))))).collect();
        out.extend(extra.iter().map(|c| e.get(c)));
        out
    });
    let unit = PolyMap::projection(&lo, &hi);
    let cd = compose_dom(&hi);
    let compose = PolyMap::build(&cd, &hi, |e| {
        let mut out: Vec<Poly> = x.iter().map(|c| e.get(&c.tagged(2))).collect();
        out.extend(w.iter().map(|c| e.get(&c.tagged(1)).add(&e.get(&c.tagged(2)))));
        out.extend(extra.iter().map(|c| e.get(&c.tagged(2))));
        out
    });
    let inverse = groupoid.then(|| {
        PolyMap::build(&hi, &hi, |e| {
            let s = scale(e);
            let mut out: Vec<Poly> = x.iter().map(|c| e.get(c).add(&s.mul(&e.get(&c.partner(j))))).collect();
            out.extend(w.iter().map(|c| e.get(c).neg()));
            out.extend(extra.iter().map(|c| e.get(c)));
            out
        })
    });
    // parameters: x, copies of w tagged 1..k, extra
    let params = |k: u8| -> PolyMap {
        let mut dom = x.to_vec();
        for t in 1..=k {
            dom.extend(tagged_labels(&w, t));
        }
        dom.extend_from_slice(extra);
        let mut cod = Vec::new();
        for t in 1..=k {
            cod.extend(tagged_labels(&hi, t));
        }
        let m = PolyMap::build(&dom, &cod, |e| {
            let s = scale(e);
            let mut out = Vec::new();
            for t in 1..=k {
                // element t sits after the shifts of elements t+1..k
                for c in x {
                    let mut v = e.get(c);
                    for u in t + 1..=k {
                        v = v.add(&s.mul(&e.get(&c.partner(j).tagged(u))));
                    }
                    out.push(v);
                }
                out.extend(w.iter().map(|c| e.get(&c.tagged(t))));
                out.extend(extra.iter().map(|c| e.get(c)));
            }
            out
        });
        canonical_params(&m)
    };
    EdgeCat { source, target, unit, compose, inverse, pair: Some(params(2)), triple: Some(params(3)) }
}

/// Edge category of the second kind: `(y, s, t)` with source `(y, st)` and target
/// `(s·y, t)`, where `s·` multiplies the `scaled` coordinates of `y`.
pub fn second_kind_edge(y: &[Coord], scaled: &[Coord], s: Coord, t: Coord) -> EdgeCat {
    let lo = cat(&[y, &[t]]);
    let hi = cat(&[y, &[s, t]]);
    let act = |e: &Env, c: &Coord, sv: &Poly, get: &dyn Fn(&Coord) -> Poly| -> Poly {
        let _ = e;
        if scaled.contains(c) {
            sv.mul(&get(c))
        } else {
            get(c)
        }
    };
    let source = PolyMap::build(&hi, &lo, |e| {
        let mut out: Vec<Poly> = y.iter().map(|c| e.get(c)).collect();
        out.push(e.get(&s).mul(&e.get(&t)));
        out
    });
    let target = PolyMap::build(&hi, &lo, |e| {
        let sv = e.get(&s);
        let mut out: Vec<Poly> = y.iter().map(|c| act(e, c, &sv, &|d| e.get(d))).collect();
        out.push(e.get(&t));
        out
    });
    let unit = PolyMap::build(&lo, &hi, |e| {
        let mut out: Vec<Poly> = y.iter().map(|c| e.get(c)).collect();
        out.push(Poly::one());
        out.push(e.get(&t));
        out
    });
    let cd = compose_dom(&hi);
    let compose = PolyMap::build(&cd, &hi, |e| {
        let mut out: Vec<Poly> = y.iter().map(|c| e.get(&c.tagged(2))).collect();
        out.push(e.get(&s.tagged(2)).mul(&e.get(&s.tagged(1))));
        out.push(e.get(&t.tagged(1)));
        out
    });
    // parameters: y, scales s_1..s_k (tags), final scale t
    let params = |k: u8| -> PolyMap {
        let mut dom = y.to_vec();
        for u in 1..=k {
            dom.push(s.tagged(u));
        }
        dom.push(t);
        let mut cod = Vec::new();
        for u in 1..=k {
            cod.extend(tagged_labels(&hi, u));
        }
        let m = PolyMap::build(&dom, &cod, |e| {
            let mut out = Vec::new();
            for u in 1..=k {
                // element u: y scaled by the s of elements after it in the chain
                let mut sv = Poly::one();
                for v in u + 1..=k {
                    sv = sv.mul(&e.get(&s.tagged(v)));
                }
                out.extend(y.iter().map(|c| act(e, c, &sv, &|d| e.get(d))));
                out.push(e.get(&s.tagged(u)));
                let mut tv = e.get(&t);
                for v in 1..u {
                    tv = tv.mul(&e.get(&s.tagged(v)));
                }
                out.push(tv);
            }
            out
        });
        canonical_params(&m)
    };
    EdgeCat { source, target, unit, compose, inverse: None, pair: Some(params(2)), triple: Some(params(3)) }
}

/// One full-cubic direction: `G¹`, with its own scale coordinate `t_j`.
pub struct G1 {
    pub j: u8,
}

impl G1 {
    fn t(&self) -> Coord {
        Coord::t(bit(self.j))
    }
}

impl Rule for G1 {
    fn name(&self) -> String {
        format!("G1[{}]", self.j)
    }
    fn dirs(&self) -> Vec<Dir> {
        vec![Dir::plain(self.j)]
    }
    fn coords(&self, layer: u32, x: &[Coord]) -> Vec<Coord> {
        if layer == 0 {
            cat(&[x, &[self.t()]])
        } else {
            cat(&[x, &partners(x, self.j), &[self.t()]])
        }
    }
    fn apply_map(&self, layer: u32, f: &PolyMap) -> Result<PolyMap> {
        if layer == 0 {
            times_id(f, &[self.t()])
        } else {
            derive_map(f, self.j)
        }
    }
    fn constraints(&self, layer: u32, g: &PolyMap, x: &[Coord]) -> Result<Vec<PolyMap>> {
        if layer == 0 {
            return Ok(vec![g.clone()]);
        }
        let dom = self.coords(1, x);
        let t = self.t();
        Ok(vec![g.clone(), shifted_constraint(g, x, self.j, &dom, &|e| e.get(&t))])
    }
    fn edge(&self, lo: u32, hi: u32, x: &[Coord]) -> Result<EdgeCat> {
        if (lo, hi) != (0, 1) {
            return Err(Error::Internal("G1 has a single edge".into()));
        }
        let t = self.t();
        Ok(first_kind_edge(x, self.j, &[t], &|e| e.get(&t), true))
    }
}

/// One symmetric-cubic direction with a fixed scalar scale.
pub struct GsyConst {
    pub j: u8,
    pub t: Q,
}

impl Rule for GsyConst {
    fn name(&self) -> String {
        format!("Gsy[{}; t={}]", self.j, self.t)
    }
    fn dirs(&self) -> Vec<Dir> {
        vec![Dir::plain(self.j)]
    }
    fn coords(&self, layer: u32, x: &[Coord]) -> Vec<Coord> {
        if layer == 0 {
            x.to_vec()
        } else {
            cat(&[x, &partners(x, self.j)])
        }
    }
    fn apply_map(&self, layer: u32, f: &PolyMap) -> Result<PolyMap> {
        if layer == 0 {
            return Ok(f.clone());
        }
        let tl = Coord::t(bit(self.j));
        let j = self.j;
        let p = move |c: Coord| c.partner(j);
        let s = slope_with(f, &SlopeSpec { moving: &all_move, partner: &p, scale: tl })?;
        let dom = cat(&[&f.dom, &partners(&f.dom, j)]);
        let tv = Poly::constant(self.t.clone());
        let s = s.substitute_dom(&dom, &|c: &Coord| if *c == tl { tv.clone() } else { Env::new(&dom).get(c) });
        let base = f.with_dom(&dom)?;
        let mut cod = base.cod.clone();
        cod.extend(s.cod.iter().copied());
        let mut comps = base.comps.clone();
        comps.extend(s.comps);
        Ok(PolyMap::new(dom, cod, comps))
    }
    fn constraints(&self, layer: u32, g: &PolyMap, x: &[Coord]) -> Result<Vec<PolyMap>> {
        if layer == 0 {
            return Ok(vec![g.clone()]);
        }
        let dom = self.coords(1, x);
        let tv = Poly::constant(self.t.clone());
        Ok(vec![g.clone(), shifted_constraint(g, x, self.j, &dom, &|_| tv.clone())])
    }
    fn edge(&self, lo: u32, hi: u32, x: &[Coord]) -> Result<EdgeCat> {
        if (lo, hi) != (0, 1) {
            return Err(Error::Internal("Gsy has a single edge".into()));
        }
        let tv = Poly::constant(self.t.clone());
        Ok(first_kind_edge(x, self.j, &[], &|_| tv.clone(), true))
    }
}

/// One pair-groupoid direction: `X × X ⇉ X`, the second copy labelled by partners.
pub struct PairRule {
    pub j: u8,
}

impl Rule for PairRule {
    fn name(&self) -> String {
        format!("PG[{}]", self.j)
    }
    fn dirs(&self) -> Vec<Dir> {
        vec![Dir::plain(self.j)]
    }
    fn coords(&self, layer: u32, x: &[Coord]) -> Vec<Coord> {
        if layer == 0 {
            x.to_vec()
        } else {
            cat(&[x, &partners(x, self.j)])
        }
    }
    fn apply_map(&self, layer: u32, f: &PolyMap) -> Result<PolyMap> {
        if layer == 0 {
            return Ok(f.clone());
        }
        let j = self.j;
        let g = f.relabel(&|c| c.partner(j));
        PolyMap::concat(&[f.clone(), g])
    }
    fn constraints(&self, layer: u32, g: &PolyMap, _x: &[Coord]) -> Result<Vec<PolyMap>> {
        if layer == 0 {
            return Ok(vec![g.clone()]);
        }
        let j = self.j;
        Ok(vec![g.clone(), g.relabel_dom(&|c| c.partner(j))])
    }
    fn edge(&self, lo: u32, hi: u32, x: &[Coord]) -> Result<EdgeCat> {
        if (lo, hi) != (0, 1) {
            return Err(Error::Internal("PG has a single edge".into()));
        }
        let j = self.j;
        let y = partners(x, j);
        let h = cat(&[x, &y]);
        let source = PolyMap::projection(&h, x);
        let target = PolyMap::build(&h, x, |e| x.iter().map(|c| e.get(&c.partner(j))).collect());
        let unit = PolyMap::build(x, &h, |e| x.iter().chain(x.iter()).map(|c| e.get(c)).collect());
        let cd = compose_dom(&h);
        let compose = PolyMap::build(&cd, &h, |e| {
            x.iter().map(|c| e.get(&c.tagged(2))).chain(y.iter().map(|c| e.get(&c.tagged(1)))).collect()
        });
        let inverse = PolyMap::build(&h, &h, |e| y.iter().chain(x.iter()).map(|c| e.get(c)).collect());
        // chain of objects x_0 → x_1 → … → x_k
        let params = |k: u8| -> PolyMap {
            let dom: Vec<Coord> = (0..=k).flat_map(|u| tagged_labels(x, 10 + u)).collect();
            let mut cod = Vec::new();
            for u in 1..=k {
                cod.extend(tagged_labels(&h, u));
            }
            let m = PolyMap::build(&dom, &cod, |e| {
                let mut out = Vec::new();
                for u in 1..=k {
                    // element u goes from object k−u to object k−u+1
                    out.extend(x.iter().map(|c| e.get(&c.tagged(10 + k - u))));
                    out.extend(x.iter().map(|c| e.get(&c.tagged(10 + k - u + 1))));
                }
                out
            });
            canonical_params(&m)
        };
        Ok(EdgeCat { source, target, unit, compose, inverse: Some(inverse), pair: Some(params(2)), triple: Some(params(3)) })
    }
}

/// The two-typed rule: directions `j` (first kind) and `j'` (second kind) with
/// coordinates `(x,t)`, `(x,w,t)`, `(x,s,t)`, `(x,w,s,t)`.
pub struct G1Bar {
    pub j: u8,
}

impl G1Bar {
    fn s(&self) -> Coord {
        Coord::s(bit(self.j))
    }
    fn t(&self) -> Coord {
        Coord::t(bit(self.j))
    }
    fn extra(&self, layer: u32) -> Vec<Coord> {
        if layer & 2 != 0 {
            vec![self.s(), self.t()]
        } else {
            vec![self.t()]
        }
    }
}

impl Rule for G1Bar {
    fn name(&self) -> String {
        format!("G1bar[{}]", self.j)
    }
    fn dirs(&self) -> Vec<Dir> {
        vec![Dir::plain(self.j), Dir::primed(self.j)]
    }
    fn coords(&self, layer: u32, x: &[Coord]) -> Vec<Coord> {
        let e = self.extra(layer);
        if layer & 1 != 0 {
            cat(&[x, &partners(x, self.j), &e])
        } else {
            cat(&[x, &e])
        }
    }
    fn apply_map(&self, layer: u32, f: &PolyMap) -> Result<PolyMap> {
        match layer {
            0 => times_id(f, &[self.t()]),
            1 => derive_map(f, self.j),
            2 => times_id(f, &[self.s(), self.t()]),
            _ => {
                let (s, t, j) = (self.s(), self.t(), self.j);
                let p = move |c: Coord| c.partner(j);
                let sl = slope_with(f, &SlopeSpec { moving: &all_move, partner: &p, scale: t })?;
                let dom = cat(&[&f.dom, &partners(&f.dom, j), &[s, t]]);
                let env = Env::new(&dom);
                let st = env.get(&s).mul(&env.get(&t));
                let sl = sl.substitute_dom(&dom, &|c: &Coord| if *c == t { st.clone() } else { env.get(c) });
                let base = f.with_dom(&dom)?;
                let mut cod = base.cod.clone();
                let mut comps = base.comps.clone();
                cod.extend(sl.cod.iter().copied());
                comps.extend(sl.comps);
                cod.extend([s, t]);
                comps.extend([env.get(&s), env.get(&t)]);
                Ok(PolyMap::new(dom, cod, comps))
            }
        }
    }
    fn constraints(&self, layer: u32, g: &PolyMap, x: &[Coord]) -> Result<Vec<PolyMap>> {
        let dom = self.coords(layer, x);
        let (s, t) = (self.s(), self.t());
        Ok(match layer {
            1 => vec![g.clone(), shifted_constraint(g, x, self.j, &dom, &|e| e.get(&t))],
            3 => vec![g.clone(), shifted_constraint(g, x, self.j, &dom, &|e| e.get(&s).mul(&e.get(&t)))],
            _ => vec![g.clone()],
        })
    }
    fn edge(&self, lo: u32, hi: u32, x: &[Coord]) -> Result<EdgeCat> {
        let (s, t) = (self.s(), self.t());
        match (lo, hi) {
            (0, 1) => Ok(first_kind_edge(x, self.j, &[t], &|e| e.get(&t), true)),
            (2, 3) => Ok(first_kind_edge(x, self.j, &[s, t], &|e| e.get(&s).mul(&e.get(&t)), true)),
            (0, 2) => Ok(second_kind_edge(x, &[], s, t)),
            (1, 3) => {
                let w = partners(x, self.j);
                Ok(second_kind_edge(&cat(&[x, &w]), &w, s, t))
            }
            _ => Err(Error::Internal(format!("G1bar has no edge ({lo},{hi})"))),
        }
    }
    fn quad(&self, x: &[Coord]) -> Result<Option<PolyMap>> {
        // parameters (x, w, u, s, σ, τ):
        // d=(x,w,s,στ), c=(x+sστw,u,s,στ), b=(x,sw,σ,τ), a=(x+sστw,s·u,σ,τ)
        let j = self.j;
        let w = partners(x, j);
        let (s, t) = (self.s(), self.t());
        let (sig, tau) = (s.tagged(1), t.tagged(1));
        let dom = cat(&[x, &w, &tagged_labels(&w, 1), &[s, sig, tau]]);
        let hi = self.coords(3, x);
        let mut cod = Vec::new();
        for u in 1..=4 {
            cod.extend(tagged_labels(&hi, u));
        }
        let m = PolyMap::build(&dom, &cod, |e| {
            let sv = e.get(&s);
            let st = e.get(&sig).mul(&e.get(&tau));
            let shift = sv.mul(&st);
            let xs = |shifted: bool| -> Vec<Poly> {
                x.iter()
                    .map(|c| if shifted { e.get(c).add(&shift.mul(&e.get(&c.partner(j)))) } else { e.get(c) })
                    .collect()
            };
            let wv: Vec<Poly> = w.iter().map(|c| e.get(c)).collect();
            let uv: Vec<Poly> = w.iter().map(|c| e.get(&c.tagged(1))).collect();
            let mut out = Vec::new();
            // a
            out.extend(xs(true));
            out.extend(uv.iter().map(|p| sv.mul(p)));
            out.extend([e.get(&sig), e.get(&tau)]);
            // b
            out.extend(xs(false));
            out.extend(wv.iter().map(|p| sv.mul(p)));
            out.extend([e.get(&sig), e.get(&tau)]);
            // c
            out.extend(xs(true));
            out.extend(uv.iter().cloned());
            out.extend([sv.clone(), st.clone()]);
            // d
            out.extend(xs(false));
            out.extend(wv.iter().cloned());
            out.extend([sv.clone(), st]);
            out
        });
        Ok(Some(canonical_params(&m)))
    }
}

fn sorted(mut v: Vec<Coord>) -> Vec<Coord> {
    v.sort();
    v
}

/// The 0-fold presentation of a single space `U ⊆ V`, with coordinates `labels`.
pub fn point_presentation(name: &str, schema: CoordSchema) -> Presentation {
    let mut vertices = BTreeMap::new();
    vertices.insert(0, schema);
    Presentation { name: name.into(), dirs: Vec::new(), vertices, edges: BTreeMap::new(), faces: BTreeMap::new() }
}

/// Extends `p` by the directions of `rule`.
pub fn apply_rule(p: &Presentation, rule: &dyn Rule, name: &str) -> Result<Presentation> {
    let m = p.dirs.len();
    let rdirs = rule.dirs();
    let r = rdirs.len();
    if m + r > 16 {
        return Err(Error::Domain("at most 16 directions".into()));
    }
    let nl = 1u32 << r;
    let lift = |b: u32, l: u32| b | l << m;
    let mut dirs = p.dirs.clone();
    dirs.extend(rdirs.iter().copied());

    let mut vertices = BTreeMap::new();
    for (b, s) in &p.vertices {
        for l in 0..nl {
            let mut constraints = Vec::new();
            for g in &s.constraints {
                constraints.extend(rule.constraints(l, g, &s.labels)?);
            }
            vertices.insert(
                lift(*b, l),
                CoordSchema {
                    labels: sorted(rule.coords(l, &s.labels)),
                    constraints,
                    bounds: s.bounds.clone(),
                    units: s.units.clone(),
                },
            );
        }
    }

    let mut edges = BTreeMap::new();
    for ((lo, hi), e) in &p.edges {
        for l in 0..nl {
            let ap = |f: &PolyMap| rule.apply_map(l, f);
            let compose = ap(&e.compose)?.relabel_dom(&|c| if c.tag == 0 { c.tagged(2) } else { c });
            let par = |f: &Option<PolyMap>, k: u8| -> Result<Option<PolyMap>> {
                f.as_ref().map(|f| Ok(canonical_params(&spread_untagged(&ap(f)?, k)))).transpose()
            };
            edges.insert(
                (lift(*lo, l), lift(*hi, l)),
                EdgeCat {
                    source: ap(&e.source)?,
                    target: ap(&e.target)?,
                    unit: ap(&e.unit)?,
                    compose,
                    inverse: e.inverse.as_ref().map(&ap).transpose()?,
                    pair: par(&e.pair, 2)?,
                    triple: par(&e.triple, 3)?,
                },
            );
        }
    }
    let rule_edges: Vec<(u32, u32, usize)> = (0..nl)
        .flat_map(|l| (0..r).filter(move |k| l >> k & 1 == 0).map(move |k| (l, l | 1 << k, k)))
        .collect();
    for (b, s) in &p.vertices {
        for &(l0, l1, _) in &rule_edges {
            edges.insert((lift(*b, l0), lift(*b, l1)), rule.edge(l0, l1, &s.labels)?);
        }
    }

    let mut faces = BTreeMap::new();
    for ((lo, i, j), f) in &p.faces {
        for l in 0..nl {
            let quad = match &f.quad {
                Some(qm) => Some(canonical_params(&spread_untagged(&rule.apply_map(l, qm)?, 4))),
                None => None,
            };
            faces.insert((lift(*lo, l), *i, *j), Face { quad });
        }
    }
    for ((b, bi), e) in &p.edges {
        let i = (bi ^ b).trailing_zeros() as u8;
        for &(l0, l1, k) in &rule_edges {
            let quad = match &e.pair {
                None => None,
                Some(phi) => {
                    let psi = rule
                        .edge(l0, l1, &phi.dom)?
                        .pair
                        .ok_or_else(|| Error::Internal("rule edge without pair parameters".into()))?;
                    let fa = rule.apply_map(l1, &pick_tag(phi, 1))?;
                    let fb = rule.apply_map(l1, &pick_tag(phi, 2))?;
                    let (p1, p2) = (pick_tag(&psi, 1), pick_tag(&psi, 2));
                    let quad = stack_tagged(&[fa.compose(&p1)?, fb.compose(&p1)?, fa.compose(&p2)?, fb.compose(&p2)?])?;
                    Some(canonical_params(&quad))
                }
            };
            faces.insert((lift(*b, l0), i, (m + k) as u8), Face { quad });
        }
    }
    if r == 2 {
        for (b, s) in &p.vertices {
            faces.insert((lift(*b, 0), m as u8, m as u8 + 1), Face { quad: rule.quad(&s.labels)? });
        }
    }
    Ok(Presentation { name: name.into(), dirs, vertices, edges, faces })
}

/// Base space `U ⊆ 𝕂^d` with coordinates `v0` (components), optionally a box.
pub fn base_space(vdim: usize, bounds: Option<(Q, Q)>) -> CoordSchema {
    let labels: Vec<Coord> = (0..vdim).map(|k| Coord::vc(0, k as u16)).collect();
    let constraints = if bounds.is_some() && vdim > 0 { vec![PolyMap::identity(&labels)] } else { Vec::new() };
    CoordSchema { labels, constraints, bounds, units: Vec::new() }
}

pub fn unit_interval() -> (Q, Q) {
    (q(0), q(1))
}
