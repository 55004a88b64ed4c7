//! Sparse multivariate polynomials with rational coefficients and polynomial
//! maps between labelled coordinate spaces.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::digits;
use crate::scalars::{fmt_q, CRing, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    V,
    S,
    T,
    X,
    P,
    C,
}

impl Kind {
    fn letter(self) -> &'static str {
        match self {
            Kind::V => "v",
            Kind::S => "s",
            Kind::T => "t",
            Kind::X => "x",
            Kind::P => "p",
            Kind::C => "u",
        }
    }
}

/// A scalar coordinate label. Field order gives the canonical order:
/// copy tag, then kind (`v` block, `s` block, `t` block), then the index set in
/// binary-code order, then the vector component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coord {
    pub tag: u8,
    pub kind: Kind,
    pub set: u32,
    pub comp: u16,
}

impl Coord {
    pub const fn new(kind: Kind, set: u32, comp: u16) -> Coord {
        Coord { tag: 0, kind, set, comp }
    }
    pub const fn v(set: u32) -> Coord {
        Coord::new(Kind::V, set, 0)
    }
    pub const fn vc(set: u32, comp: u16) -> Coord {
        Coord::new(Kind::V, set, comp)
    }
    pub const fn s(set: u32) -> Coord {
        Coord::new(Kind::S, set, 0)
    }
    pub const fn t(set: u32) -> Coord {
        Coord::new(Kind::T, set, 0)
    }
    pub const fn p(i: u16) -> Coord {
        Coord::new(Kind::P, 0, i)
    }
    pub fn tagged(self, tag: u8) -> Coord {
        Coord { tag, ..self }
    }
    /// Partner label under derivation in direction `e`.
    pub fn partner(self, e: u8) -> Coord {
        Coord { set: self.set | (1 << (e - 1)), ..self }
    }

    pub fn name(&self, show_comp: bool) -> String {
        let mut s = match self.kind {
            Kind::P => format!("p{}", self.comp),
            k => format!("{}{}", k.letter(), digits(self.set)),
        };
        if show_comp && self.kind != Kind::P {
            s.push_str(&format!("_{}", self.comp + 1));
        }
        match self.tag {
            0 => {}
            1 => s.push('\''),
            k => s.push_str(&format!("#{k}")),
        }
        s
    }

    /// Printing order of factors: letter, then the rendered index read as a number.
    fn print_key(&self) -> (&'static str, u64, u16, u8) {
        let num = crate::hypercube::elems_of(self.set).iter().fold(0u64, |a, &e| a * 100 + e as u64);
        (self.kind.letter(), num, self.comp, self.tag)
    }
}

pub fn show_comps(labels: &[Coord]) -> bool {
    labels.iter().any(|c| c.comp > 0 && c.kind != Kind::P)
}

pub fn fmt_labels(labels: &[Coord]) -> String {
    let sc = show_comps(labels);
    format!("({})", labels.iter().map(|c| c.name(sc)).collect::<Vec<_>>().join(", "))
}

/// Monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp_of(&self, v: u32) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(o.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + o.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    fn lower(&self, v: u32) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut found = false;
        for &(w, e) in &self.0 {
            if w == v {
                found = true;
                if e > 1 {
                    out.push((w, e - 1));
                }
            } else {
                out.push((w, e));
            }
        }
        found.then_some(Monomial(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(crate::scalars::q(n))
    }

    pub fn var(v: u32) -> Poly {
        let mut p = Poly::zero();
        p.terms.insert(Monomial::var(v), Q::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, Q> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: u32) -> u32 {
        self.terms.keys().map(|m| m.exp_of(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn depends_on(&self, v: u32) -> bool {
        self.terms.keys().any(|m| m.exp_of(v) > 0)
    }

    /// Divides by the variable `v`; `None` when some term does not contain `v`.
    pub fn div_var(&self, v: u32) -> Option<Poly> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            out.insert(m.lower(v)?, c.clone());
        }
        Some(Poly { terms: out })
    }

    /// Renames variables. Distinct variables must stay distinct.
    pub fn remap(&self, f: impl Fn(u32) -> u32) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let mut v: Vec<(u32, u32)> = m.0.iter().map(|&(w, e)| (f(w), e)).collect();
            v.sort_unstable();
            p.add_term(Monomial(v), c.clone());
        }
        p
    }

    /// Substitutes `subs[v]` for every variable `v`.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        let mut cache: HashMap<(u32, u32), Poly> = HashMap::new();
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(v, e) in &m.0 {
                let pw = cache
                    .entry((v, e))
                    .or_insert_with(|| subs[v as usize].pow(e))
                    .clone();
                term = term.mul(&pw);
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                match acc.get_mut(&tm) {
                    Some(x) => *x += tc,
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn eval<R: CRing>(&self, point: &[R], like: &R) -> Option<R> {
        let mut acc = like.zero_like();
        let mut cache: HashMap<(u32, u32), R> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = like.from_q_like(c)?;
            for &(v, e) in &m.0 {
                let pw = cache.entry((v, e)).or_insert_with(|| point[v as usize].r_pow(e)).clone();
                term = term.r_mul(&pw);
            }
            acc = acc.r_add(&term);
        }
        Some(acc)
    }

    pub fn eval_q(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in &m.0 {
                let x = &point[v as usize];
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Partial derivative in `v`.
    pub fn diff(&self, v: u32) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp_of(v);
            if e == 0 {
                continue;
            }
            p.add_term(m.lower(v).unwrap(), c * Q::from_integer(e.into()));
        }
        p
    }

    pub fn render(&self, names: &dyn Fn(u32) -> String, key: &dyn Fn(u32) -> (String, u64, u16, u8)) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        type Factors = Vec<((String, u64, u16, u8), String, u32)>;
        let mut rows: Vec<(u32, Factors, &Q)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut f: Factors = m.0.iter().map(|&(v, e)| (key(v), names(v), e)).collect();
                f.sort();
                (m.degree(), f, c)
            })
            .collect();
        rows.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                let ka: Vec<_> = a.1.iter().map(|x| (&x.0, std::cmp::Reverse(x.2))).collect();
                let kb: Vec<_> = b.1.iter().map(|x| (&x.0, std::cmp::Reverse(x.2))).collect();
                ka.cmp(&kb)
            })
        });
        let mut out = String::new();
        for (i, (_, fs, c)) in rows.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || fs.is_empty() {
                parts.push(fmt_q(&a));
            }
            for (_, n, e) in fs {
                if *e == 1 {
                    parts.push(n.clone());
                } else {
                    parts.push(format!("{n}^{e}"));
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl CRing for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        Poly::one()
    }
    fn from_q_like(&self, c: &Q) -> Option<Self> {
        Some(Poly::constant(c.clone()))
    }
    fn r_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn r_neg(&self) -> Self {
        self.neg()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
}

/// Polynomial map `K^dom → K^cod`. Variable `i` of every component is `dom[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    pub dom: Vec<Coord>,
    pub cod: Vec<Coord>,
    pub comps: Vec<Poly>,
}

impl PolyMap {
    pub fn new(dom: Vec<Coord>, cod: Vec<Coord>, comps: Vec<Poly>) -> PolyMap {
        assert_eq!(cod.len(), comps.len(), "one component per output label");
        PolyMap { dom, cod, comps }
    }

    /// Builds a map from a closure receiving an environment of variables by label.
    pub fn build(dom: &[Coord], cod: &[Coord], f: impl FnOnce(&Env) -> Vec<Poly>) -> PolyMap {
        let env = Env::new(dom);
        let comps = f(&env);
        PolyMap::new(dom.to_vec(), cod.to_vec(), comps)
    }

    pub fn identity(labels: &[Coord]) -> PolyMap {
        PolyMap::new(labels.to_vec(), labels.to_vec(), (0..labels.len() as u32).map(Poly::var).collect())
    }

    /// Coordinate projection onto `cod`; labels absent from `dom` map to zero.
    pub fn projection(dom: &[Coord], cod: &[Coord]) -> PolyMap {
        let env = Env::new(dom);
        let comps = cod.iter().map(|c| env.get_or_zero(c)).collect();
        PolyMap::new(dom.to_vec(), cod.to_vec(), comps)
    }

    pub fn in_arity(&self) -> usize {
        self.dom.len()
    }

    pub fn out_arity(&self) -> usize {
        self.cod.len()
    }

    pub fn dom_index(&self, c: &Coord) -> Option<usize> {
        self.dom.iter().position(|d| d == c)
    }

    pub fn cod_index(&self, c: &Coord) -> Option<usize> {
        self.cod.iter().position(|d| d == c)
    }

    pub fn comp(&self, c: &Coord) -> Option<&Poly> {
        self.cod_index(c).map(|i| &self.comps[i])
    }

    pub fn degree(&self) -> Vec<u32> {
        self.comps.iter().map(|p| p.degree()).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.comps.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn eval<R: CRing>(&self, point: &[R], like: &R) -> Result<Vec<R>> {
        if point.len() != self.dom.len() {
            return Err(Error::Shape(format!("expected {} inputs, got {}", self.dom.len(), point.len())));
        }
        self.comps
            .iter()
            .map(|p| p.eval(point, like).ok_or_else(|| Error::Domain("coefficient has no image in the ring".into())))
            .collect()
    }

    pub fn eval_q(&self, point: &[Q]) -> Vec<Q> {
        assert_eq!(point.len(), self.dom.len(), "arity mismatch in evaluation");
        self.comps.iter().map(|p| p.eval_q(point)).collect()
    }

    /// `self ∘ inner`, matching `self.dom` against `inner.cod` by label.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        let mut subs = Vec::with_capacity(self.dom.len());
        for c in &self.dom {
            match inner.cod_index(c) {
                Some(i) => subs.push(inner.comps[i].clone()),
                None => {
                    let used = self.comps.iter().any(|p| p.depends_on(subs.len() as u32));
                    if used {
                        return Err(Error::Shape(format!("input {} not provided by inner map", c.name(false))));
                    }
                    subs.push(Poly::zero());
                }
            }
        }
        Ok(PolyMap::new(inner.dom.clone(), self.cod.clone(), self.comps.iter().map(|p| p.substitute(&subs)).collect()))
    }

    /// Substitutes polynomials (over `new_dom`) for the domain labels.
    pub fn substitute_dom(&self, new_dom: &[Coord], subs: &dyn Fn(&Coord) -> Poly) -> PolyMap {
        let s: Vec<Poly> = self.dom.iter().map(subs).collect();
        PolyMap::new(new_dom.to_vec(), self.cod.clone(), self.comps.iter().map(|p| p.substitute(&s)).collect())
    }

    /// Re-expresses the map over another domain containing every label it uses.
    pub fn with_dom(&self, new_dom: &[Coord]) -> Result<PolyMap> {
        let mut idx = Vec::with_capacity(self.dom.len());
        for (i, c) in self.dom.iter().enumerate() {
            match new_dom.iter().position(|d| d == c) {
                Some(j) => idx.push(j as u32),
                None => {
                    if self.comps.iter().any(|p| p.depends_on(i as u32)) {
                        return Err(Error::Shape(format!("label {} missing from new domain", c.name(false))));
                    }
                    idx.push(u32::MAX);
                }
            }
        }
        Ok(PolyMap::new(new_dom.to_vec(), self.cod.clone(), self.comps.iter().map(|p| p.remap(|v| idx[v as usize])).collect()))
    }

    /// Selects output components by label, in the given order.
    pub fn pick(&self, cod: &[Coord]) -> Result<PolyMap> {
        let mut comps = Vec::with_capacity(cod.len());
        for c in cod {
            comps.push(
                self.comp(c)
                    .ok_or_else(|| Error::Shape(format!("no output labelled {}", c.name(false))))?
                    .clone(),
            );
        }
        Ok(PolyMap::new(self.dom.clone(), cod.to_vec(), comps))
    }

    pub fn relabel(&self, f: &dyn Fn(Coord) -> Coord) -> PolyMap {
        PolyMap::new(
            self.dom.iter().map(|c| f(*c)).collect(),
            self.cod.iter().map(|c| f(*c)).collect(),
            self.comps.clone(),
        )
    }

    pub fn relabel_dom(&self, f: &dyn Fn(Coord) -> Coord) -> PolyMap {
        PolyMap::new(self.dom.iter().map(|c| f(*c)).collect(), self.cod.clone(), self.comps.clone())
    }

    pub fn relabel_cod(&self, f: &dyn Fn(Coord) -> Coord) -> PolyMap {
        PolyMap::new(self.dom.clone(), self.cod.iter().map(|c| f(*c)).collect(), self.comps.clone())
    }

    /// Stacks the outputs of several maps over a common (merged) domain.
    pub fn concat(maps: &[PolyMap]) -> Result<PolyMap> {
        let mut dom: Vec<Coord> = Vec::new();
        for m in maps {
            for c in &m.dom {
                if !dom.contains(c) {
                    dom.push(*c);
                }
            }
        }
        let mut cod = Vec::new();
        let mut comps = Vec::new();
        for m in maps {
            let m2 = m.with_dom(&dom)?;
            cod.extend(m2.cod);
            comps.extend(m2.comps);
        }
        Ok(PolyMap::new(dom, cod, comps))
    }

    /// Label-wise equality: same output labels and identical components once both
    /// maps are read over the union of their domains.
    pub fn same_as(&self, other: &PolyMap) -> bool {
        self.diff_against(other).is_none()
    }

    /// First output label at which two maps differ.
    pub fn diff_against(&self, other: &PolyMap) -> Option<String> {
        let mut a_cod = self.cod.clone();
        let mut b_cod = other.cod.clone();
        a_cod.sort();
        b_cod.sort();
        if a_cod != b_cod {
            return Some(format!("output labels {} vs {}", fmt_labels(&self.cod), fmt_labels(&other.cod)));
        }
        let mut dom = self.dom.clone();
        for c in &other.dom {
            if !dom.contains(c) {
                dom.push(*c);
            }
        }
        let a = self.with_dom(&dom).ok()?;
        let b = other.with_dom(&dom).ok()?;
        let sc = show_comps(&dom) || show_comps(&self.cod);
        for c in &a_cod {
            let pa = a.comp(c).unwrap();
            let pb = b.comp(c).unwrap();
            if pa != pb {
                let d = pa.sub(pb);
                return Some(format!("{}: difference {}", c.name(sc), render_over(&d, &dom)));
            }
        }
        None
    }

    /// Drops domain labels no component depends on.
    pub fn trim_dom(&self) -> PolyMap {
        let keep: Vec<Coord> = self
            .dom
            .iter()
            .enumerate()
            .filter(|(i, _)| self.comps.iter().any(|p| p.depends_on(*i as u32)))
            .map(|(_, c)| *c)
            .collect();
        self.with_dom(&keep).expect("kept every used label")
    }

    pub fn render_comps(&self) -> Vec<String> {
        let sc = show_comps(&self.dom);
        let names = |v: u32| self.dom[v as usize].name(sc);
        let key = |v: u32| {
            let k = self.dom[v as usize].print_key();
            (k.0.to_string(), k.1, k.2, k.3)
        };
        self.comps.iter().map(|p| p.render(&names, &key)).collect()
    }
}

pub fn render_over(p: &Poly, dom: &[Coord]) -> String {
    let sc = show_comps(dom);
    let names = |v: u32| dom[v as usize].name(sc);
    let key = |v: u32| {
        let k = dom[v as usize].print_key();
        (k.0.to_string(), k.1, k.2, k.3)
    };
    p.render(&names, &key)
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_comps().join(", "))
    }
}

/// Variables of a domain, looked up by label.
pub struct Env {
    idx: HashMap<Coord, u32>,
}

impl Env {
    pub fn new(dom: &[Coord]) -> Env {
        Env { idx: dom.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect() }
    }

    pub fn get(&self, c: &Coord) -> Poly {
        match self.idx.get(c) {
            Some(&i) => Poly::var(i),
            None => panic!("label {} not in domain", c.name(true)),
        }
    }

    pub fn get_or_zero(&self, c: &Coord) -> Poly {
        self.idx.get(c).map(|&i| Poly::var(i)).unwrap_or_else(Poly::zero)
    }

    pub fn has(&self, c: &Coord) -> bool {
        self.idx.contains_key(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q;

    #[test]
    fn arithmetic_and_eval() {
        let x = Poly::var(0);
        let p = x.mul(&x); // x^2
        assert_eq!(p.eval_q(&[q(3)]), q(9));
        let s = x.add(&Poly::one());
        let c = p.substitute(&[s]);
        assert_eq!(c, x.mul(&x).add(&x.scale(&q(2))).add(&Poly::one()));
        assert_eq!(c.degree(), 2);
    }

    #[test]
    fn division_by_variable() {
        let x = Poly::var(0);
        let t = Poly::var(1);
        let p = x.mul(&t).add(&t.mul(&t));
        assert_eq!(p.div_var(1).unwrap(), x.add(&t));
        assert!(p.add(&Poly::one()).div_var(1).is_none());
    }

    #[test]
    fn rendering_order() {
        let dom = vec![Coord::v(0), Coord::v(1), Coord::t(1)];
        let m = PolyMap::build(&dom, &[Coord::v(0), Coord::v(1), Coord::t(1)], |e| {
            let v0 = e.get(&Coord::v(0));
            let v1 = e.get(&Coord::v(1));
            let t1 = e.get(&Coord::t(1));
            vec![v0.mul(&v0), v0.mul(&v1).scale(&q(2)).add(&t1.mul(&v1).mul(&v1)), t1]
        });
        assert_eq!(m.to_string(), "(v0^2, 2*v0*v1 + t1*v1^2, t1)");
    }

    #[test]
    fn compose_by_label() {
        let a = vec![Coord::v(0)];
        let sq = PolyMap::build(&a, &a, |e| vec![e.get(&Coord::v(0)).pow(2)]);
        let inc = PolyMap::build(&a, &a, |e| vec![e.get(&Coord::v(0)).add(&Poly::one())]);
        let c = sq.compose(&inc).unwrap();
        assert_eq!(c.to_string(), "(1 + 2*v0 + v0^2)");
    }
}
