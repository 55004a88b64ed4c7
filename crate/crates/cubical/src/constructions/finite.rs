//! Finite parts, trivializations and anchor maps into pair groupoids.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::check::{witness, CheckConfig, Report, Tally};
use crate::error::{Error, Result};
use crate::hypercube::subsets_of;
use crate::nfold::{apply, apply_tagged, Point, Presentation};
use crate::poly::{Coord, Kind, Poly, PolyMap};
use crate::scalars::Q;

use super::closed::{gsy_labels, GsyScales};
use super::{gfull, pair_groupoid_over, pg_base, top_down_projection, x_label};

/// `x_γ = Σ_{δ⊆γ} t^δ v_δ`, from `Gsy^{α;n}_t U` to `(PG^n U)_α`, for every vertex.
pub fn gsy_trivialization(t: &[Q], vdim: usize) -> BTreeMap<u32, PolyMap> {
    let sc = GsyScales::Const(t.to_vec());
    let mut out = BTreeMap::new();
    for a in 0..(1u32 << t.len()) {
        let dom = gsy_labels(&sc, vdim, a);
        let cod: Vec<Coord> =
            subsets_of(a).into_iter().flat_map(|g| (0..vdim).map(move |k| x_label(g, k as u16))).collect();
        let m = PolyMap::build(&dom, &cod, |e| {
            cod.iter()
                .map(|c| {
                    subsets_of(c.set).into_iter().fold(Poly::zero(), |acc, d| {
                        acc.add(&sc.t_pow(d, e).mul(&e.get(&Coord::vc(d, c.comp))))
                    })
                })
                .collect()
        });
        out.insert(a, m);
    }
    out
}

/// Inverse of the trivialization for unit scales:
/// `v_γ = t^{-γ} Σ_{δ⊆γ} (−1)^{|γ∖δ|} x_δ`.
pub fn gsy_trivialization_inverse(t: &[Q], vdim: usize) -> Result<BTreeMap<u32, PolyMap>> {
    if t.iter().any(|x| x.is_zero()) {
        return Err(Error::Domain("the trivialization is invertible only for unit scales".into()));
    }
    let tinv = |g: u32| -> Q {
        (0..t.len()).filter(|k| g >> k & 1 == 1).fold(Q::one(), |acc, k| acc / &t[k])
    };
    let sc = GsyScales::Const(t.to_vec());
    let mut out = BTreeMap::new();
    for a in 0..(1u32 << t.len()) {
        let cod = gsy_labels(&sc, vdim, a);
        let dom: Vec<Coord> =
            subsets_of(a).into_iter().flat_map(|g| (0..vdim).map(move |k| x_label(g, k as u16))).collect();
        let m = PolyMap::build(&dom, &cod, |e| {
            cod.iter()
                .map(|c| {
                    let s = subsets_of(c.set).into_iter().fold(Poly::zero(), |acc, d| {
                        let x = e.get(&x_label(d, c.comp));
                        if (c.set & !d).count_ones() % 2 == 1 {
                            acc.sub(&x)
                        } else {
                            acc.add(&x)
                        }
                    });
                    s.scale(&tinv(c.set))
                })
                .collect()
        });
        out.insert(a, m);
    }
    Ok(out)
}

/// Solves the triangular system `x_γ = Σ_{δ⊆γ} t^δ v_δ` for `v`, choosing
/// `v_γ = 0` where `t^γ = 0`. `None` when the point is not in the image.
pub fn gsy_image_preimage(t: &[Q], vdim: usize, alpha: u32, x: &Point) -> Result<Option<Point>> {
    let tp = |g: u32| (0..t.len()).filter(|k| g >> k & 1 == 1).fold(Q::one(), |acc, k| acc * &t[k]);
    let mut v = Point::new();
    for g in subsets_of(alpha) {
        for k in 0..vdim as u16 {
            let xg = x
                .get(&x_label(g, k))
                .ok_or_else(|| Error::Shape(format!("point lacks {}", x_label(g, k).name(true))))?;
            let mut r = xg.clone();
            for d in subsets_of(g) {
                if d != g {
                    r -= tp(d) * &v[&Coord::vc(d, k)];
                }
            }
            let tg = tp(g);
            if tg.is_zero() {
                if !r.is_zero() {
                    return Ok(None);
                }
                v.insert(Coord::vc(g, k), Q::zero());
            } else {
                v.insert(Coord::vc(g, k), r / tg);
            }
        }
    }
    Ok(Some(v))
}

/// The anchor of `p` into the pair groupoid of its bottom vertex set: the vertex
/// `α` goes to `(ξ_γ)_{γ⊆α}`. Returns the pair groupoid and the vertex maps.
pub fn anchor(p: &Presentation) -> Result<(Presentation, BTreeMap<u32, PolyMap>)> {
    let bottom = p.vertex(0)?;
    let idx: BTreeMap<Coord, u16> = bottom.labels.iter().enumerate().map(|(i, c)| (*c, i as u16)).collect();
    let n = p.dirs.len() as u8;
    let pg = pair_groupoid_over(n, pg_base(bottom.labels.len(), None))?;
    let mut maps = BTreeMap::new();
    for a in p.vertices.keys() {
        let mut parts = Vec::new();
        for g in subsets_of(*a) {
            let xi = top_down_projection(p, *a, g)?;
            parts.push(xi.relabel_cod(&|c| x_label(g, idx[&c])));
        }
        maps.insert(*a, PolyMap::concat(&parts)?.with_dom(&p.vertex(*a)?.labels)?);
    }
    Ok((pg, maps))
}

/// Checks that the image of the anchor of `Gsy^n_t U` is an n-fold
/// subgroupoid of `PG^n U`: closed under composition, units and inverses.
pub fn check_gsy_image_subgroupoid(gsy: &Presentation, t: &[Q], vdim: usize, cfg: CheckConfig) -> Result<Vec<Report>> {
    let (pg, maps) = anchor(gsy)?;
    let mut reports = Vec::new();
    for ((lo, hi), e) in &gsy.edges {
        let pe = pg.edge(*lo, *hi)?;
        let (alo, ahi) = (&maps[lo], &maps[hi]);
        let vhi = gsy.vertex(*hi)?;
        let vlo = gsy.vertex(*lo)?;
        let mut tally = Tally::new(format!("image of {} in {} {}", gsy.name, pg.name, gsy.edge_name(*lo, *hi)), cfg);
        let inside = |m: u32, x: &Point| -> Result<bool> { Ok(gsy_image_preimage(t, vdim, m, x)?.is_some()) };
        tally.law("image-closed-under-composition", |s| {
            let pr = s.tuple(e.pair.as_ref().ok_or_else(|| Error::Unsupported("no pair parametrization".into()))?, 2, vhi)?;
            let (a, b) = (apply(ahi, &pr[0])?, apply(ahi, &pr[1])?);
            let c = apply_tagged(&pe.compose, &[&a, &b])?;
            if !inside(*hi, &c)? {
                return Ok(Some(witness("composite of image points leaves the image", &[("a", &a), ("b", &b), ("a*b", &c)])));
            }
            Ok(None)
        });
        tally.law("image-closed-under-units", |s| {
            let y = apply(alo, &s.point(vlo)?)?;
            let z = apply(&pe.unit, &y)?;
            if !inside(*hi, &z)? {
                return Ok(Some(witness("unit of an image point leaves the image", &[("y", &y), ("z(y)", &z)])));
            }
            Ok(None)
        });
        tally.law("image-closed-under-inverses", |s| {
            let a = apply(ahi, &s.point(vhi)?)?;
            let inv = pe.inverse.as_ref().ok_or_else(|| Error::Internal("pair groupoid without inverse".into()))?;
            let ia = apply(inv, &a)?;
            if !inside(*hi, &ia)? {
                return Ok(Some(witness("inverse of an image point leaves the image", &[("a", &a), ("a^-1", &ia)])));
            }
            Ok(None)
        });
        reports.extend(tally.reports);
    }
    Ok(reports)
}

/// The finite part of `G^{1..n}U`: every scale component of every top-down
/// projection must be a unit.
pub fn gfull_finite_part(n: u8, vdim: usize) -> Result<Presentation> {
    let mut p = gfull(&super::natural(n), vdim, None)?;
    p.name = format!("{} (finite part)", p.name);
    let masks: Vec<u32> = p.vertices.keys().copied().collect();
    for a in masks {
        let mut units = Vec::new();
        for g in subsets_of(a) {
            let xi = top_down_projection(&p, a, g)?;
            let ts: Vec<Coord> = xi.cod.iter().copied().filter(|c| c.kind == Kind::T).collect();
            units.push(xi.pick(&ts)?);
        }
        p.vertices.get_mut(&a).expect("vertex").units = units;
    }
    Ok(p)
}

/// The finite part of `Gsy^n_t U`; defined for unit scales.
pub fn gsy_finite_part(t: &[Q], vdim: usize) -> Result<Presentation> {
    if t.iter().any(|x| x.is_zero()) {
        return Err(Error::Domain("the finite part needs unit scales".into()));
    }
    let mut p = super::gsy(t, vdim, None)?;
    p.name = format!("{} (finite part)", p.name);
    Ok(p)
}

/// Symbolic check that two families of vertex maps are mutually inverse.
pub fn check_mutually_inverse(f: &BTreeMap<u32, PolyMap>, g: &BTreeMap<u32, PolyMap>) -> Result<Option<String>> {
    for (m, fm) in f {
        let gm = g.get(m).ok_or_else(|| Error::Shape("vertex maps over different vertices".into()))?;
        let a = gm.compose(fm)?;
        if let Some(d) = a.diff_against(&PolyMap::identity(&fm.dom)) {
            return Ok(Some(format!("vertex mask {m}: g∘f ≠ id: {d}")));
        }
        let b = fm.compose(gm)?;
        if let Some(d) = b.diff_against(&PolyMap::identity(&gm.dom)) {
            return Ok(Some(format!("vertex mask {m}: f∘g ≠ id: {d}")));
        }
    }
    Ok(None)
}
