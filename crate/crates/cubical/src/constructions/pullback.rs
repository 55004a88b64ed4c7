//! First-order derivation of a pullback. For `f : A → C` and
//! `g : B = C × Z → C`, `g(y, z) = y + h(z)`, the pullback `P = A ×_C B` is
//! parametrized by `(a, z)`, and `Q = A^⟨1⟩ ×_{C^⟨1⟩} B^⟨1⟩` is compared with
//! `P^⟨1⟩ = {(p₀, p₁, t) : p₀ ∈ P, p₀ + t·p₁ ∈ P}`.

use num_traits::Zero;

use crate::check::{witness, CheckConfig, Report, Tally};
use crate::error::{Error, Result};
use crate::nfold::{Point, Sampler};
use crate::poly::{Coord, Kind, PolyMap};
use crate::scalars::Q;
use crate::slope::slope;

pub struct Pullback {
    pub f: PolyMap,
    pub h: PolyMap,
    f1: PolyMap,
    h1: PolyMap,
}

/// An element `(p₀, p₁, t)` with `p = (a, y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    pub a0: Vec<Q>,
    pub y0: Vec<Q>,
    pub z0: Vec<Q>,
    pub a1: Vec<Q>,
    pub y1: Vec<Q>,
    pub z1: Vec<Q>,
    pub t: Q,
}

fn add(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn scale(t: &Q, x: &[Q]) -> Vec<Q> {
    x.iter().map(|a| t * a).collect()
}

fn cat(parts: &[&[Q]]) -> Vec<Q> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

impl Element {
    fn point(&self) -> Point {
        let mut p = Point::new();
        for (kind, v) in [(Kind::V, &self.a0), (Kind::C, &self.y0), (Kind::X, &self.z0)] {
            for (k, x) in v.iter().enumerate() {
                p.insert(Coord::new(kind, 0, k as u16), x.clone());
            }
        }
        for (kind, v) in [(Kind::V, &self.a1), (Kind::C, &self.y1), (Kind::X, &self.z1)] {
            for (k, x) in v.iter().enumerate() {
                p.insert(Coord::new(kind, 1, k as u16), x.clone());
            }
        }
        p.insert(Coord::t(1), self.t.clone());
        p
    }
}

impl Pullback {
    pub fn new(f: PolyMap, h: PolyMap) -> Result<Pullback> {
        if f.out_arity() != h.out_arity() {
            return Err(Error::Shape("f and h must land in the same space C".into()));
        }
        let f1 = slope(&f)?;
        let h1 = slope(&h)?;
        Ok(Pullback { f, h, f1, h1 })
    }

    pub fn c_dim(&self) -> usize {
        self.f.out_arity()
    }

    fn in_p(&self, a: &[Q], y: &[Q], z: &[Q]) -> bool {
        self.f.eval_q(a) == add(y, &self.h.eval_q(z))
    }

    /// Membership in `P^⟨1⟩`.
    pub fn in_p1(&self, e: &Element) -> bool {
        self.in_p(&e.a0, &e.y0, &e.z0)
            && self.in_p(
                &add(&e.a0, &scale(&e.t, &e.a1)),
                &add(&e.y0, &scale(&e.t, &e.y1)),
                &add(&e.z0, &scale(&e.t, &e.z1)),
            )
    }

    /// Membership in `Q`: `f^⟨1⟩(a) = g^⟨1⟩(y, z)`.
    pub fn in_q(&self, e: &Element) -> bool {
        self.in_p(&e.a0, &e.y0, &e.z0)
            && self.f1.eval_q(&cat(&[&e.a0, &e.a1, &[e.t.clone()]]))
                == add(&e.y1, &self.h1.eval_q(&cat(&[&e.z0, &e.z1, &[e.t.clone()]])))
    }

    /// An element of `Q` over the base point `(a0, z0)`, with free fiber `(a1, z1)`.
    pub fn q_element(&self, a0: Vec<Q>, z0: Vec<Q>, a1: Vec<Q>, z1: Vec<Q>, t: Q) -> Element {
        let y0 = sub(&self.f.eval_q(&a0), &self.h.eval_q(&z0));
        let y1 = sub(
            &self.f1.eval_q(&cat(&[&a0, &a1, &[t.clone()]])),
            &self.h1.eval_q(&cat(&[&z0, &z1, &[t.clone()]])),
        );
        Element { a0, y0, z0, a1, y1, z1, t }
    }

    fn sample_q(&self, s: &mut Sampler) -> Element {
        let (na, nz) = (self.f.in_arity(), self.h.in_arity());
        let (a0, z0, a1, z1) = (s.values(na), s.values(nz), s.values(na), s.values(nz));
        let t = s.scalar();
        self.q_element(a0, z0, a1, z1, t)
    }

    /// Target of an element: `p₀ + t·p₁`.
    fn target(&self, e: &Element) -> (Vec<Q>, Vec<Q>) {
        (add(&e.a0, &scale(&e.t, &e.a1)), add(&e.z0, &scale(&e.t, &e.z1)))
    }

    /// `a ∗ b` in `G¹P`: base of `b`, fibers added.
    fn compose(a: &Element, b: &Element) -> Element {
        Element {
            a0: b.a0.clone(),
            y0: b.y0.clone(),
            z0: b.z0.clone(),
            a1: add(&a.a1, &b.a1),
            y1: add(&a.y1, &b.y1),
            z1: add(&a.z1, &b.z1),
            t: b.t.clone(),
        }
    }

    fn inverse(e: &Element) -> Element {
        let neg = |v: &[Q]| v.iter().map(|x| -x).collect::<Vec<Q>>();
        Element {
            a0: add(&e.a0, &scale(&e.t, &e.a1)),
            y0: add(&e.y0, &scale(&e.t, &e.y1)),
            z0: add(&e.z0, &scale(&e.t, &e.z1)),
            a1: neg(&e.a1),
            y1: neg(&e.y1),
            z1: neg(&e.z1),
            t: e.t.clone(),
        }
    }

    /// Inclusion `Q ⊆ P^⟨1⟩`, closure of `Q` under the groupoid operations of
    /// `G¹P`, equality at unit scales, and equality for every scale when `C = 0`.
    pub fn check(&self, cfg: CheckConfig) -> Vec<Report> {
        let mut t = Tally::new(format!("pullback of f: {}, h: {}", self.f, self.h), cfg);
        let w = |e: &Element| e.point();
        t.law("q-inside-p1", |s| {
            let e = self.sample_q(s);
            if !self.in_p1(&e) {
                return Ok(Some(witness("element of Q outside P^<1>", &[("e", &w(&e))])));
            }
            Ok(None)
        });
        t.law("q-closed-under-composition", |s| {
            let b = self.sample_q(s);
            let (ta, tz) = self.target(&b);
            let a = self.q_element(ta, tz, s.values(self.f.in_arity()), s.values(self.h.in_arity()), b.t.clone());
            let c = Self::compose(&a, &b);
            if !self.in_q(&c) {
                return Ok(Some(witness("a*b leaves Q", &[("a", &w(&a)), ("b", &w(&b)), ("a*b", &w(&c))])));
            }
            Ok(None)
        });
        t.law("q-closed-under-inverses", |s| {
            let e = self.sample_q(s);
            let i = Self::inverse(&e);
            if !self.in_q(&i) {
                return Ok(Some(witness("inverse leaves Q", &[("e", &w(&e)), ("e^-1", &w(&i))])));
            }
            Ok(None)
        });
        t.law("p1-inside-q-at-unit-scales", |s| {
            let (na, nz) = (self.f.in_arity(), self.h.in_arity());
            let p0 = self.q_element(s.values(na), s.values(nz), vec![Q::zero(); na], vec![Q::zero(); nz], Q::zero());
            let p1 = self.q_element(s.values(na), s.values(nz), vec![Q::zero(); na], vec![Q::zero(); nz], Q::zero());
            let tv = s.unit();
            let d = |x: &[Q], y: &[Q]| sub(y, x).iter().map(|v| v / &tv).collect::<Vec<Q>>();
            let e = Element {
                a1: d(&p0.a0, &p1.a0),
                y1: d(&p0.y0, &p1.y0),
                z1: d(&p0.z0, &p1.z0),
                a0: p0.a0,
                y0: p0.y0,
                z0: p0.z0,
                t: tv,
            };
            if !self.in_p1(&e) || !self.in_q(&e) {
                return Ok(Some(witness("element of P^<1> with unit scale outside Q", &[("e", &w(&e))])));
            }
            Ok(None)
        });
        if self.c_dim() == 0 {
            t.law("equality-when-c-is-zero", |s| {
                let (na, nz) = (self.f.in_arity(), self.h.in_arity());
                let e = Element {
                    a0: s.values(na),
                    y0: Vec::new(),
                    z0: s.values(nz),
                    a1: s.values(na),
                    y1: Vec::new(),
                    z1: s.values(nz),
                    t: s.scalar(),
                };
                if self.in_p1(&e) != self.in_q(&e) {
                    return Ok(Some(witness("P^<1> and Q differ", &[("e", &w(&e))])));
                }
                Ok(None)
            });
        }
        t.reports
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_pass;
    use crate::parse::parse;

    #[test]
    fn square_against_identity() {
        let pb = Pullback::new(parse("f(x) = x^2").unwrap(), parse("h(z) = z").unwrap()).unwrap();
        assert!(all_pass(&pb.check(CheckConfig::default())));
    }

    #[test]
    fn strict_inclusion_at_zero_scale() {
        let pb = Pullback::new(parse("f(x) = x^2").unwrap(), parse("h(z) = 0*z").unwrap()).unwrap();
        // at t = 0, P^<1> allows any fiber over p0; Q forces y1 = 2·a0·a1
        let one = Q::from_integer(1.into());
        let e = Element {
            a0: vec![one.clone()],
            y0: vec![one.clone()],
            z0: vec![Q::zero()],
            a1: vec![one.clone()],
            y1: vec![Q::zero()],
            z1: vec![Q::zero()],
            t: Q::zero(),
        };
        assert!(pb.in_p1(&e));
        assert!(!pb.in_q(&e));
    }
}
