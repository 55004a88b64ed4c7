//! Difference factorizers and the derivation operators on polynomial maps.

use crate::error::{Error, Result};
use crate::hypercube::{elems_of, full_mask, subsets_of};
use crate::poly::{Coord, Kind, Poly, PolyMap};
use crate::scalars::{CRing, ExtElement, Scalar, Q};

pub fn bit(e: u8) -> u32 {
    1 << (e - 1)
}

/// How a slope step treats the coordinates of a map.
pub struct SlopeSpec<'a> {
    /// Coordinates that receive an increment; the others are frozen parameters.
    pub moving: &'a dyn Fn(&Coord) -> bool,
    /// Label of the increment attached to a moving coordinate.
    pub partner: &'a dyn Fn(Coord) -> Coord,
    /// Label of the scale variable.
    pub scale: Coord,
}

impl<'a> SlopeSpec<'a> {
    fn dom(&self, f: &PolyMap) -> Vec<Coord> {
        let mut dom = f.dom.clone();
        dom.extend(f.dom.iter().filter(|c| (self.moving)(c)).map(|c| (self.partner)(*c)));
        dom.push(self.scale);
        dom
    }
}

pub fn all_move(_: &Coord) -> bool {
    true
}

pub fn non_t_moves(c: &Coord) -> bool {
    c.kind != Kind::T
}

/// The factorizer `f^[1](x,w,t) = (f(x+tw) − f(x))/t`, one component per moving
/// output coordinate (labelled by its partner).
pub fn slope_with(f: &PolyMap, spec: &SlopeSpec) -> Result<PolyMap> {
    let dom = spec.dom(f);
    let m = f.dom.len() as u32;
    let tvar = dom.len() as u32 - 1;
    let t = Poly::var(tvar);
    let mut next = m;
    let mut subs = Vec::with_capacity(f.dom.len());
    for (i, c) in f.dom.iter().enumerate() {
        if (spec.moving)(c) {
            subs.push(Poly::var(i as u32).add(&t.mul(&Poly::var(next))));
            next += 1;
        } else {
            subs.push(Poly::var(i as u32));
        }
    }
    let mut cod = Vec::new();
    let mut comps = Vec::new();
    for (c, p) in f.cod.iter().zip(&f.comps) {
        if !(spec.moving)(c) {
            continue;
        }
        let diff = p.substitute(&subs).sub(p);
        let q = diff
            .div_var(tvar)
            .ok_or_else(|| Error::Internal("difference not divisible by the scale".into()))?;
        cod.push((spec.partner)(*c));
        comps.push(q);
    }
    Ok(PolyMap::new(dom, cod, comps))
}

/// One derivation step: `(x, w, t) ↦ (f(x), f^[1](x,w,t), t)`.
pub fn derive_with(f: &PolyMap, spec: &SlopeSpec) -> Result<PolyMap> {
    let s = slope_with(f, spec)?;
    let dom = s.dom.clone();
    let base = f.with_dom(&dom)?;
    let mut cod = base.cod.clone();
    let mut comps = base.comps.clone();
    cod.extend(s.cod.iter().copied());
    comps.extend(s.comps.iter().cloned());
    cod.push(spec.scale);
    comps.push(Poly::var(dom.len() as u32 - 1));
    Ok(PolyMap::new(dom, cod, comps))
}

fn full_spec(j: u8) -> (impl Fn(Coord) -> Coord, Coord) {
    (move |c: Coord| c.partner(j), Coord::t(bit(j)))
}

/// `f^[1]` in direction `j`, every coordinate moving, scale `t_j`.
pub fn slope_dir(f: &PolyMap, j: u8) -> Result<PolyMap> {
    let (p, s) = full_spec(j);
    slope_with(f, &SlopeSpec { moving: &all_move, partner: &p, scale: s })
}

/// The derivation functor on maps in direction `j`.
pub fn derive_map(f: &PolyMap, j: u8) -> Result<PolyMap> {
    let (p, s) = full_spec(j);
    derive_with(f, &SlopeSpec { moving: &all_move, partner: &p, scale: s })
}

/// `f^[1]` in direction 1.
pub fn slope(f: &PolyMap) -> Result<PolyMap> {
    slope_dir(f, 1)
}

/// `f^[n] = (f^[n−1])^[1]`, iterated in every variable.
pub fn full_slope(f: &PolyMap, n: u8) -> Result<PolyMap> {
    if n == 0 {
        return Err(Error::Domain("slope order must be at least 1".into()));
    }
    let mut g = f.clone();
    for j in 1..=n {
        g = slope_dir(&g, j)?;
    }
    Ok(g)
}

/// `f^[n]_{t_1..t_n}`: slopes with frozen symbolic scales. Domain is
/// `(v_β)_{β ⊆ n}` followed by `t_1..t_n`.
pub fn sym_slope_iterated(f: &PolyMap, n: u8) -> Result<PolyMap> {
    if n == 0 {
        return Err(Error::Domain("slope order must be at least 1".into()));
    }
    let mut g = f.clone();
    for j in 1..=n {
        let p = move |c: Coord| c.partner(j);
        g = slope_with(&g, &SlopeSpec { moving: &non_t_moves, partner: &p, scale: Coord::t(bit(j)) })?;
    }
    let dom = sym_dom(f, n);
    g.with_dom(&dom)
}

/// Canonical domain of a symmetric factorizer of order `n`.
pub fn sym_dom(f: &PolyMap, n: u8) -> Vec<Coord> {
    let mut dom = Vec::new();
    for b in subsets_of(full_mask(n)) {
        for c in &f.dom {
            dom.push(Coord { set: c.set | b, ..*c });
        }
    }
    for j in 1..=n {
        dom.push(Coord::t(bit(j)));
    }
    dom
}

/// Closed formula: `(Π t_i)^{-1} Σ_α (−1)^{n−ℓα} f(Σ_{β⊆α} t^β v_β)`.
/// `v[mask]` is the argument attached to the subset `mask` of `{1..n}`.
pub fn sym_slope_closed(f: &PolyMap, t: &[Scalar], v: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    let like = t.first().ok_or_else(|| Error::Domain("need at least one scale".into()))?.clone();
    let eval = |x: &[Scalar]| f.eval(x, &like);
    sym_slope_closed_by(&eval, t, v, f.out_arity())
}

/// Closed formula for an arbitrary map given as a closure.
pub fn sym_slope_closed_by<R: CRing + ScaleInverse>(
    f: &dyn Fn(&[R]) -> Result<Vec<R>>,
    t: &[R],
    v: &[Vec<R>],
    out_arity: usize,
) -> Result<Vec<R>> {
    let n = t.len();
    if v.len() != 1 << n {
        return Err(Error::Shape(format!("expected {} arguments, got {}", 1usize << n, v.len())));
    }
    let mut inv = t[0].one_like();
    for ti in t {
        inv = inv.r_mul(&ti.inverse_of()?);
    }
    let d = v[0].len();
    let zero = t[0].zero_like();
    let mut acc = vec![zero.clone(); out_arity];
    for a in 0..(1u32 << n) {
        let mut point = vec![zero.clone(); d];
        for b in subsets_of(a) {
            let mut tb = t[0].one_like();
            for e in elems_of(b) {
                tb = tb.r_mul(&t[e as usize - 1]);
            }
            for (k, x) in v[b as usize].iter().enumerate() {
                point[k] = point[k].r_add(&tb.r_mul(x));
            }
        }
        let val = f(&point)?;
        let neg = (n as u32 - a.count_ones()) % 2 == 1;
        for (k, y) in val.iter().enumerate() {
            acc[k] = if neg { acc[k].r_sub(y) } else { acc[k].r_add(y) };
        }
    }
    Ok(acc.iter().map(|x| x.r_mul(&inv)).collect())
}

/// Rings whose units can be inverted.
pub trait ScaleInverse: Sized {
    fn inverse_of(&self) -> Result<Self>;
}

impl ScaleInverse for Scalar {
    fn inverse_of(&self) -> Result<Self> {
        self.inverse()
    }
}

impl ScaleInverse for Q {
    fn inverse_of(&self) -> Result<Self> {
        use num_traits::Zero;
        if self.is_zero() {
            return Err(Error::Domain("scale 0 is not a unit".into()));
        }
        Ok(num_traits::Inv::inv(self.clone()))
    }
}

/// Substitutes the elements of a scalar-extension algebra into `f`.
pub fn eval_over_extension<R: CRing>(f: &PolyMap, base: &[ExtElement<R>]) -> Result<Vec<ExtElement<R>>> {
    let like = base.first().ok_or_else(|| Error::Shape("empty argument list".into()))?;
    for b in base {
        if b.alpha != like.alpha || b.t != like.t {
            return Err(Error::Shape("arguments live in different algebras".into()));
        }
    }
    f.eval(base, like)
}

/// Replaces variables of `f` according to `subs` (labels not listed stay).
pub fn substitute_labels(f: &PolyMap, subs: &[(Coord, Poly)], new_dom: &[Coord]) -> Result<PolyMap> {
    let env = crate::poly::Env::new(new_dom);
    let table: Vec<Poly> = f
        .dom
        .iter()
        .map(|c| match subs.iter().find(|(d, _)| d == c) {
            Some((_, p)) => p.clone(),
            None => env.get_or_zero(c),
        })
        .collect();
    Ok(PolyMap::new(new_dom.to_vec(), f.cod.clone(), f.comps.iter().map(|p| p.substitute(&table)).collect()))
}
