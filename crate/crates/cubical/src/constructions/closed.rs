//! Closed-form presentations, written directly from the coordinate formulas.
//! They serve as the second route against the rule-built presentations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypercube::{subsets_of, IndexSet};
use crate::nfold::{CoordSchema, Dir, EdgeCat, Presentation};
use crate::poly::{Coord, Env, Kind, Poly, PolyMap};
use crate::scalars::Q;
use crate::slope::derive_map;

use super::stair::stair_schema;
use super::{fiber_sum_compose, x_label};

fn empty(name: String, n: u8, vertices: BTreeMap<u32, CoordSchema>, edges: BTreeMap<(u32, u32), EdgeCat>) -> Presentation {
    Presentation { name, dirs: (1..=n).map(Dir::plain).collect(), vertices, edges, faces: BTreeMap::new() }
}

fn each_edge(n: u8, mut f: impl FnMut(u32, u32, u8) -> Result<()>) -> Result<()> {
    for lo in 0..(1u32 << n) {
        for i in 1..=n {
            let b = 1u32 << (i - 1);
            if lo & b == 0 {
                f(lo, lo | b, i)?;
            }
        }
    }
    Ok(())
}

/// `PG^n M`: `π_0` keeps `x_γ`, `π_1` reads `x_{γ∪i}`, units duplicate, and
/// `z_γ = x_γ` of the right factor if `i ∉ γ`, of the left factor otherwise.
pub fn pg_closed(n: u8, dim: usize) -> Result<Presentation> {
    let labels = |m: u32| -> Vec<Coord> {
        subsets_of(m).into_iter().flat_map(|g| (0..dim).map(move |k| x_label(g, k as u16))).collect()
    };
    let mut vertices = BTreeMap::new();
    for m in 0..(1u32 << n) {
        vertices.insert(m, CoordSchema::free(labels(m)));
    }
    let mut edges = BTreeMap::new();
    each_edge(n, |lo, hi, i| {
        let b = 1u32 << (i - 1);
        let (l, h) = (labels(lo), labels(hi));
        let with = |c: &Coord, s: u32| Coord { set: s, ..*c };
        let source = PolyMap::projection(&h, &l);
        let target = PolyMap::build(&h, &l, |e| l.iter().map(|c| e.get(&with(c, c.set | b))).collect());
        let unit = PolyMap::build(&l, &h, |e| h.iter().map(|c| e.get(&with(c, c.set & !b))).collect());
        let cd = crate::nfold::compose_dom(&h);
        let compose = PolyMap::build(&cd, &h, |e| {
            h.iter().map(|c| e.get(&c.tagged(if c.set & b == 0 { 2 } else { 1 }))).collect()
        });
        let inverse = PolyMap::build(&h, &h, |e| h.iter().map(|c| e.get(&with(c, c.set ^ b))).collect());
        edges.insert(
            (lo, hi),
            EdgeCat { source, target, unit, compose, inverse: Some(inverse), pair: None, triple: None },
        );
        Ok(())
    })?;
    Ok(empty(format!("PG^{n}M (closed)"), n, vertices, edges))
}

/// Scales of a symmetric cubic groupoid: fixed scalars, or free coordinates
/// `t_1..t_n` carried by every vertex.
#[derive(Clone, Debug, PartialEq)]
pub enum GsyScales {
    Const(Vec<Q>),
    Symbolic(u8),
}

impl GsyScales {
    pub fn n(&self) -> u8 {
        match self {
            GsyScales::Const(t) => t.len() as u8,
            GsyScales::Symbolic(n) => *n,
        }
    }

    fn extra(&self) -> Vec<Coord> {
        match self {
            GsyScales::Const(_) => Vec::new(),
            GsyScales::Symbolic(n) => (0..*n).map(|k| Coord::t(1 << k)).collect(),
        }
    }

    /// `t_i` as a polynomial over `env`.
    fn t(&self, i: u8, env: &Env) -> Poly {
        match self {
            GsyScales::Const(t) => Poly::constant(t[i as usize - 1].clone()),
            GsyScales::Symbolic(_) => env.get(&Coord::t(1 << (i - 1))),
        }
    }

    /// `t^γ = Π_{i∈γ} t_i`.
    pub fn t_pow(&self, gamma: u32, env: &Env) -> Poly {
        (0..32u8).filter(|k| gamma >> k & 1 == 1).fold(Poly::one(), |a, k| a.mul(&self.t(k + 1, env)))
    }
}

/// Coordinates `v_γ (γ ⊆ α)` of `Gsy^{α;n}`, plus the scales when symbolic.
pub fn gsy_labels(scales: &GsyScales, vdim: usize, alpha: u32) -> Vec<Coord> {
    let mut l: Vec<Coord> =
        subsets_of(alpha).into_iter().flat_map(|g| (0..vdim).map(move |k| Coord::vc(g, k as u16))).collect();
    l.extend(scales.extra());
    l
}

/// `x_β = Σ_{γ⊆β} t^γ v_γ` for every `β ⊆ α`: the points whose membership in `U`
/// defines the vertex set.
pub fn gsy_corner_maps(scales: &GsyScales, vdim: usize, alpha: u32) -> Vec<PolyMap> {
    let dom = gsy_labels(scales, vdim, alpha);
    let base: Vec<Coord> = (0..vdim).map(|k| Coord::vc(0, k as u16)).collect();
    subsets_of(alpha)
        .into_iter()
        .map(|b| {
            PolyMap::build(&dom, &base, |e| {
                (0..vdim)
                    .map(|k| {
                        subsets_of(b).into_iter().fold(Poly::zero(), |acc, g| {
                            acc.add(&scales.t_pow(g, e).mul(&e.get(&Coord::vc(g, k as u16))))
                        })
                    })
                    .collect()
            })
        })
        .collect()
}

/// `Gsy^n_t U`: `π_0` forgets, `π_1(v)_γ = v_γ + t_i v_{γ∪i}`, units include,
/// `∗` adds the components containing `i`, inverses negate them.
pub fn gsy_closed(scales: &GsyScales, vdim: usize, bounds: Option<(Q, Q)>) -> Result<Presentation> {
    let n = scales.n();
    let mut vertices = BTreeMap::new();
    for m in 0..(1u32 << n) {
        let constraints = if bounds.is_some() && vdim > 0 { gsy_corner_maps(scales, vdim, m) } else { Vec::new() };
        vertices.insert(
            m,
            CoordSchema { labels: gsy_labels(scales, vdim, m), constraints, bounds: bounds.clone(), units: Vec::new() },
        );
    }
    let mut edges = BTreeMap::new();
    each_edge(n, |lo, hi, i| {
        let b = 1u32 << (i - 1);
        let (l, h) = (gsy_labels(scales, vdim, lo), gsy_labels(scales, vdim, hi));
        let shift = |e: &Env, c: &Coord| -> Poly {
            if c.kind == Kind::V {
                e.get(c).add(&scales.t(i, e).mul(&e.get(&c.partner(i))))
            } else {
                e.get(c)
            }
        };
        let source = PolyMap::projection(&h, &l);
        let target = PolyMap::build(&h, &l, |e| l.iter().map(|c| shift(e, c)).collect());
        let unit = PolyMap::projection(&l, &h);
        let compose = fiber_sum_compose(&h, &l);
        let inverse = PolyMap::build(&h, &h, |e| {
            h.iter().map(|c| if c.kind == Kind::V && c.set & b != 0 { e.get(c).neg() } else { shift(e, c) }).collect()
        });
        edges.insert(
            (lo, hi),
            EdgeCat { source, target, unit, compose, inverse: Some(inverse), pair: None, triple: None },
        );
        Ok(())
    })?;
    let name = match scales {
        GsyScales::Const(_) => format!("Gsy^{n}_tU (closed)"),
        GsyScales::Symbolic(_) => format!("Gsy^{n}U (closed, symbolic t)"),
    };
    Ok(empty(name, n, vertices, edges))
}

/// Coordinates of `G^{α;n}U` read off the α-stair.
pub fn gfull_labels(n: u8, vdim: usize, alpha: u32) -> Result<Vec<Coord>> {
    Ok(stair_schema(&IndexSet::natural(n), alpha)?.labels(vdim))
}

fn times_id(f: &PolyMap, extra: Coord) -> PolyMap {
    let mut dom = f.dom.clone();
    dom.push(extra);
    let g = f.with_dom(&dom).expect("superset domain");
    let mut cod = g.cod.clone();
    let mut comps = g.comps.clone();
    cod.push(extra);
    comps.push(Poly::var(dom.len() as u32 - 1));
    PolyMap::new(dom, cod, comps)
}

/// Target projection of the edge `(lo, hi)` of `G^{1..n}U`, by recursion on the
/// last direction `n`: an old edge gets `× id` on `t_n`, a copy of an old edge is
/// derived in direction `n`, and the new edge is `x ↦ x + t_n·x^{(n)}`.
pub fn gfull_target(n: u8, vdim: usize, lo: u32, hi: u32) -> Result<PolyMap> {
    if n == 0 || lo & !hi != 0 || (hi ^ lo).count_ones() != 1 || hi >> n != 0 {
        return Err(Error::Domain("not an edge of the cube".into()));
    }
    let top = 1u32 << (n - 1);
    let tn = Coord::t(top);
    if hi & top == 0 {
        Ok(times_id(&gfull_target(n - 1, vdim, lo, hi)?, tn))
    } else if lo & top != 0 {
        derive_map(&gfull_target(n - 1, vdim, lo & !top, hi & !top)?, n)
    } else {
        let x = gfull_labels(n - 1, vdim, lo)?;
        let mut dom = x.clone();
        dom.extend(x.iter().map(|c| c.partner(n)));
        dom.push(tn);
        let mut cod = x.clone();
        cod.push(tn);
        Ok(PolyMap::build(&dom, &cod, |e| {
            let mut out: Vec<Poly> = x.iter().map(|c| e.get(c).add(&e.get(&tn).mul(&e.get(&c.partner(n))))).collect();
            out.push(e.get(&tn));
            out
        }))
    }
}

/// `G^{1..n}U` in closed form: stair coordinates, projection sources,
/// zero-padding units, fiberwise-additive composition, and inverses that send
/// the base to the target and negate the fiber.
pub fn gfull_closed(n: u8, vdim: usize) -> Result<Presentation> {
    let mut vertices = BTreeMap::new();
    for m in 0..(1u32 << n) {
        vertices.insert(m, CoordSchema::free(gfull_labels(n, vdim, m)?));
    }
    let mut edges = BTreeMap::new();
    each_edge(n, |lo, hi, _| {
        let (l, h) = (gfull_labels(n, vdim, lo)?, gfull_labels(n, vdim, hi)?);
        let target = gfull_target(n, vdim, lo, hi)?.with_dom(&h)?;
        let inverse = PolyMap::build(&h, &h, |e| {
            let sub: Vec<Poly> = h.iter().map(|c| e.get(c)).collect();
            h.iter()
                .map(|c| match target.cod_index(c) {
                    Some(k) => target.comps[k].substitute(&sub),
                    None => e.get(c).neg(),
                })
                .collect()
        });
        edges.insert(
            (lo, hi),
            EdgeCat {
                source: PolyMap::projection(&h, &l),
                target,
                unit: PolyMap::projection(&l, &h),
                compose: fiber_sum_compose(&h, &l),
                inverse: Some(inverse),
                pair: None,
                triple: None,
            },
        );
        Ok(())
    })?;
    Ok(empty(format!("G^{n}U (closed)"), n, vertices, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{compare_presentations, gfull, gsy, pair_groupoid, scaleoid};
    use crate::scalars::q;

    #[test]
    fn closed_forms_match_rules() {
        for n in 1..=3u8 {
            let d = compare_presentations(&pg_closed(n, 2).unwrap(), &pair_groupoid(n, 2).unwrap());
            assert!(d.is_empty(), "PG n={n}: {d:?}");
            let d = compare_presentations(&gfull_closed(n, 1).unwrap(), &gfull(&(1..=n).collect::<Vec<_>>(), 1, None).unwrap());
            assert!(d.is_empty(), "G n={n}: {d:?}");
            let d = compare_presentations(&gfull_closed(n, 0).unwrap(), &scaleoid(n).unwrap());
            assert!(d.is_empty(), "G0 n={n}: {d:?}");
            let t: Vec<Q> = (0..n).map(|k| q(k as i64 * 2 - 1)).collect();
            let d = compare_presentations(&gsy_closed(&GsyScales::Const(t.clone()), 2, None).unwrap(), &gsy(&t, 2, None).unwrap());
            assert!(d.is_empty(), "Gsy n={n}: {d:?}");
        }
    }
}
