//! n-fold categories presented by coordinate schemas and polynomial structure
//! maps, with exact sampling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{fmt_labels, Coord, Kind, Poly, PolyMap};
use crate::scalars::{fmt_q, q, qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dir {
    pub elem: u8,
    pub primed: bool,
}

impl Dir {
    pub fn plain(elem: u8) -> Dir {
        Dir { elem, primed: false }
    }
    pub fn primed(elem: u8) -> Dir {
        Dir { elem, primed: true }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.elem, if self.primed { "'" } else { "" })
    }
}

/// Coordinates of a vertex set. Points satisfy `lo ≤ g(p) ≤ hi` for every
/// component of every constraint map `g` (when bounds are set) and have every
/// component of every `units` map nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordSchema {
    pub labels: Vec<Coord>,
    pub constraints: Vec<PolyMap>,
    pub bounds: Option<(Q, Q)>,
    pub units: Vec<PolyMap>,
}

impl CoordSchema {
    pub fn free(labels: Vec<Coord>) -> CoordSchema {
        CoordSchema { labels, constraints: Vec::new(), bounds: None, units: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        if let Some((lo, hi)) = &self.bounds {
            for g in &self.constraints {
                for y in eval_at(g, p)? {
                    if &y < lo || &y > hi {
                        return Ok(false);
                    }
                }
            }
        }
        for u in &self.units {
            if eval_at(u, p)?.iter().any(|y| y.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for CoordSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_labels(&self.labels))
    }
}

/// Structure maps of one edge category. `compose` reads the left factor from
/// tag 1 and the right factor from tag 2; `a ∗ b` needs `source(a) = target(b)`.
/// `pair` and `triple` parametrize composable pairs `(a,b)` and triples
/// `(a,b,c)` (outputs tagged 1, 2, 3).
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeCat {
    pub source: PolyMap,
    pub target: PolyMap,
    pub unit: PolyMap,
    pub compose: PolyMap,
    pub inverse: Option<PolyMap>,
    pub pair: Option<PolyMap>,
    pub triple: Option<PolyMap>,
}

/// Quadruples `(a,b,c,d)` (tags 1–4) with `a ∗_i b`, `c ∗_i d`, `a ∗_j c`,
/// `b ∗_j d` defined, where `i < j` are the face directions by position.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub quad: Option<PolyMap>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub dirs: Vec<Dir>,
    pub vertices: BTreeMap<u32, CoordSchema>,
    pub edges: BTreeMap<(u32, u32), EdgeCat>,
    pub faces: BTreeMap<(u32, u8, u8), Face>,
}

impl Presentation {
    pub fn n(&self) -> usize {
        self.dirs.len()
    }

    pub fn top(&self) -> u32 {
        (1u32 << self.dirs.len()) - 1
    }

    pub fn vertex(&self, m: u32) -> Result<&CoordSchema> {
        self.vertices.get(&m).ok_or_else(|| Error::Domain(format!("no vertex {}", self.mask_name(m))))
    }

    pub fn edge(&self, lo: u32, hi: u32) -> Result<&EdgeCat> {
        self.edges
            .get(&(lo, hi))
            .ok_or_else(|| Error::Domain(format!("no edge {}", self.edge_name(lo, hi))))
    }

    pub fn mask_name(&self, m: u32) -> String {
        let parts: Vec<String> =
            (0..self.dirs.len()).filter(|k| m >> k & 1 == 1).map(|k| self.dirs[k].to_string()).collect();
        if parts.is_empty() {
            "∅".into()
        } else {
            format!("{{{}}}", parts.join(","))
        }
    }

    pub fn edge_name(&self, lo: u32, hi: u32) -> String {
        format!("({},{})", self.mask_name(lo), self.mask_name(hi))
    }

    pub fn face_name(&self, lo: u32, i: u8, j: u8) -> String {
        format!("[{}; {},{}]", self.mask_name(lo), self.dirs[i as usize], self.dirs[j as usize])
    }

    /// Mask over direction positions for a set of plain elements.
    pub fn mask_of_elems(&self, elems: &[u8]) -> Result<u32> {
        let mut m = 0;
        for e in elems {
            let k = self
                .dirs
                .iter()
                .position(|d| d.elem == *e && !d.primed)
                .ok_or_else(|| Error::Domain(format!("{e} is not a direction")))?;
            m |= 1 << k;
        }
        Ok(m)
    }

    /// Mask over positions for a two-typed vertex: `plain` and `primed` are element lists.
    pub fn mask_of_dirs(&self, dirs: &[Dir]) -> Result<u32> {
        let mut m = 0;
        for d in dirs {
            let k = self
                .dirs
                .iter()
                .position(|e| e == d)
                .ok_or_else(|| Error::Domain(format!("{d} is not a direction")))?;
            m |= 1 << k;
        }
        Ok(m)
    }

    pub fn is_groupoid(&self) -> bool {
        self.edges.values().all(|e| e.inverse.is_some())
    }

    /// Restricts to the vertices whose masks lie in `sub` (a union of
    /// directions), renumbering directions.
    pub fn restrict(&self, keep: u32, name: &str) -> Presentation {
        let pos: Vec<usize> = (0..self.dirs.len()).filter(|k| keep >> k & 1 == 1).collect();
        let squeeze = |m: u32| -> u32 {
            pos.iter().enumerate().fold(0, |acc, (new, &old)| acc | ((m >> old & 1) << new))
        };
        let inside = |m: u32| m & !keep == 0;
        let vertices = self.vertices.iter().filter(|(m, _)| inside(**m)).map(|(m, s)| (squeeze(*m), s.clone())).collect();
        let edges = self
            .edges
            .iter()
            .filter(|((lo, hi), _)| inside(*lo) && inside(*hi))
            .map(|((lo, hi), e)| ((squeeze(*lo), squeeze(*hi)), e.clone()))
            .collect();
        let faces = self
            .faces
            .iter()
            .filter(|((lo, i, j), _)| inside(*lo) && keep >> i & 1 == 1 && keep >> j & 1 == 1)
            .map(|((lo, i, j), f)| {
                let ni = pos.iter().position(|&p| p == *i as usize).unwrap() as u8;
                let nj = pos.iter().position(|&p| p == *j as usize).unwrap() as u8;
                ((squeeze(*lo), ni, nj), f.clone())
            })
            .collect();
        Presentation {
            name: name.to_string(),
            dirs: pos.iter().map(|&k| self.dirs[k]).collect(),
            vertices,
            edges,
            faces,
        }
    }
}

/// A point of a coordinate space, keyed by label.
pub type Point = BTreeMap<Coord, Q>;

pub fn fmt_point(p: &Point) -> String {
    let labels: Vec<Coord> = p.keys().copied().collect();
    let sc = crate::poly::show_comps(&labels);
    let parts: Vec<String> = p.iter().map(|(c, v)| format!("{}={}", c.name(sc), fmt_q(v))).collect();
    format!("({})", parts.join(", "))
}

/// Evaluates a map whose every input label (tag 0) is found in `p`.
pub fn eval_at(m: &PolyMap, p: &Point) -> Result<Vec<Q>> {
    let mut x = Vec::with_capacity(m.dom.len());
    for c in &m.dom {
        x.push(
            p.get(c)
                .cloned()
                .ok_or_else(|| Error::Shape(format!("point lacks coordinate {}", c.name(true))))?,
        );
    }
    Ok(m.eval_q(&x))
}

/// Evaluates a map whose inputs are drawn from several tagged points; an input
/// labelled with tag `k` is read from `inputs[k-1]` at the untagged label.
pub fn eval_tagged(m: &PolyMap, inputs: &[&Point]) -> Result<Vec<Q>> {
    let mut x = Vec::with_capacity(m.dom.len());
    for c in &m.dom {
        let src = match c.tag {
            0 => inputs.first(),
            k => inputs.get(k as usize - 1),
        }
        .ok_or_else(|| Error::Shape(format!("no input for tag {}", c.tag)))?;
        x.push(
            src.get(&c.tagged(0))
                .cloned()
                .ok_or_else(|| Error::Shape(format!("input lacks coordinate {}", c.name(true))))?,
        );
    }
    Ok(m.eval_q(&x))
}

pub fn to_point(labels: &[Coord], vals: Vec<Q>) -> Point {
    labels.iter().copied().zip(vals).collect()
}

/// Applies a unary structure map and returns a point keyed by its output labels.
pub fn apply(m: &PolyMap, p: &Point) -> Result<Point> {
    Ok(to_point(&m.cod, eval_at(m, p)?))
}

pub fn apply_tagged(m: &PolyMap, inputs: &[&Point]) -> Result<Point> {
    Ok(to_point(&m.cod, eval_tagged(m, inputs)?))
}

/// Splits the output of a parameter map into points by tag.
pub fn split_tags(m: &PolyMap, vals: &[Q], k: u8) -> Vec<Point> {
    let mut out = vec![Point::new(); k as usize];
    for (c, v) in m.cod.iter().zip(vals) {
        if c.tag >= 1 && c.tag <= k {
            out[c.tag as usize - 1].insert(c.tagged(0), v.clone());
        }
    }
    out
}

/// Deterministic generator of small exact rationals.
pub struct Sampler {
    pub rng: ChaCha8Rng,
    pub max_attempts: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        use rand::SeedableRng;
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), max_attempts: 4000 }
    }

    pub fn scalar(&mut self) -> Q {
        match self.rng.gen_range(0..10) {
            0 => Q::zero(),
            1 => q(1),
            2 => q(-1),
            3..=5 => q(self.rng.gen_range(-4..=4)),
            _ => qf(self.rng.gen_range(-6..=6), self.rng.gen_range(1..=4)),
        }
    }

    pub fn unit(&mut self) -> Q {
        loop {
            let x = self.scalar();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn values(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| self.scalar()).collect()
    }

    /// A value suited to a box `[lo, hi]`: either a grid point of the box or a
    /// small increment.
    pub fn boxed(&mut self, lo: &Q, hi: &Q) -> Q {
        let w = hi - lo;
        match self.rng.gen_range(0..4) {
            0 => Q::zero(),
            1 => lo + &w * qf(self.rng.gen_range(0..=8), 8),
            2 => &w * qf(self.rng.gen_range(0..=3), 16),
            _ => &w * qf(self.rng.gen_range(-2..=2), 16),
        }
    }

    fn values_for(&mut self, n: usize, s: &CoordSchema) -> Vec<Q> {
        match &s.bounds {
            Some((lo, hi)) if !s.constraints.is_empty() => (0..n).map(|_| self.boxed(lo, hi)).collect(),
            _ => self.values(n),
        }
    }

    /// A random point of a vertex set, by rejection.
    pub fn point(&mut self, s: &CoordSchema) -> Result<Point> {
        for _ in 0..self.max_attempts {
            let p = to_point(&s.labels, self.values_for(s.labels.len(), s));
            if s.contains(&p)? {
                return Ok(p);
            }
        }
        Err(Error::Sampling { attempts: self.max_attempts, detail: format!("vertex set {s}") })
    }

    /// Random tuple from a parameter map whose members must lie in `schema`.
    pub fn tuple(&mut self, param: &PolyMap, k: u8, schema: &CoordSchema) -> Result<Vec<Point>> {
        for _ in 0..self.max_attempts {
            let x = self.values_for(param.dom.len(), schema);
            let vals = param.eval_q(&x);
            let pts = split_tags(param, &vals, k);
            let mut ok = true;
            for p in &pts {
                if !schema.contains(p)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(pts);
            }
        }
        Err(Error::Sampling { attempts: self.max_attempts, detail: format!("{k}-tuples over {schema}") })
    }
}

/// Relabels every domain label of a parameter map to a positional parameter.
pub fn canonical_params(m: &PolyMap) -> PolyMap {
    let idx: HashMap<Coord, u16> = m.dom.iter().enumerate().map(|(i, c)| (*c, i as u16)).collect();
    m.relabel_dom(&|c| Coord::p(idx[&c]))
}

/// Copies the untagged outputs of a parameter map into every tag `1..=k`.
pub fn spread_untagged(m: &PolyMap, k: u8) -> PolyMap {
    let mut cod = Vec::new();
    let mut comps = Vec::new();
    for (c, p) in m.cod.iter().zip(&m.comps) {
        if c.tag == 0 {
            for t in 1..=k {
                cod.push(c.tagged(t));
                comps.push(p.clone());
            }
        } else {
            cod.push(*c);
            comps.push(p.clone());
        }
    }
    PolyMap::new(m.dom.clone(), cod, comps)
}

/// The outputs of a parameter map carrying tag `k`, untagged.
pub fn pick_tag(m: &PolyMap, k: u8) -> PolyMap {
    let mut cod = Vec::new();
    let mut comps = Vec::new();
    for (c, p) in m.cod.iter().zip(&m.comps) {
        if c.tag == k {
            cod.push(c.tagged(0));
            comps.push(p.clone());
        }
    }
    PolyMap::new(m.dom.clone(), cod, comps)
}

/// Stacks maps sharing one domain, tagging the outputs of the `k`-th with `k+1`.
pub fn stack_tagged(maps: &[PolyMap]) -> Result<PolyMap> {
    let tagged: Vec<PolyMap> =
        maps.iter().enumerate().map(|(k, m)| m.relabel_cod(&|c| c.tagged(k as u8 + 1))).collect();
    PolyMap::concat(&tagged)
}

/// The map `x ↦ x`, tagged copies for a composition domain.
pub fn tagged_labels(labels: &[Coord], tag: u8) -> Vec<Coord> {
    labels.iter().map(|c| c.tagged(tag)).collect()
}

/// Builds a composition map from per-label closures over an environment in which
/// `a` and `b` are read from tags 1 and 2.
pub fn compose_dom(labels: &[Coord]) -> Vec<Coord> {
    let mut d = tagged_labels(labels, 1);
    d.extend(tagged_labels(labels, 2));
    d
}

pub fn is_v(c: &Coord) -> bool {
    c.kind == Kind::V
}

/// `Poly` helper: sum of polynomials.
pub fn psum(ps: impl IntoIterator<Item = Poly>) -> Poly {
    ps.into_iter().fold(Poly::zero(), |a, b| a.add(&b))
}
