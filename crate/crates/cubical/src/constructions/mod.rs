//! Builders for the concrete n-fold structures: pair groupoids, scaled action
//! categories, symmetric and full cubic groupoids, scaleoids, tangent bundles
//! and the two-typed category `G^{n̄}` for `n ≤ 2`, together with the generic
//! transformations (transpose, γ-opposite, top-down projections).

pub mod closed;
pub mod finite;
pub mod pullback;
pub mod stair;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::nfold::{compose_dom, CoordSchema, Dir, EdgeCat, Face, Presentation};
use crate::poly::{Coord, Kind, PolyMap};
use crate::rules::{apply_rule, base_space, point_presentation, second_kind_edge, G1Bar, GsyConst, PairRule, G1};
use crate::scalars::{fmt_q, Q};
use crate::slope::bit;

pub fn x_label(set: u32, k: u16) -> Coord {
    Coord::new(Kind::X, set, k)
}

fn list(elems: &[u8]) -> String {
    elems.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// `G^N U` for an ordered index set `N`, `U ⊆ 𝕂^vdim` (a box when `bounds` is set).
pub fn gfull(elems: &[u8], vdim: usize, bounds: Option<(Q, Q)>) -> Result<Presentation> {
    check_elems(elems)?;
    let name = if vdim == 0 { format!("G^<{}>0", list(elems)) } else { format!("G^<{}>U", list(elems)) };
    let mut p = point_presentation(&name, base_space(vdim, bounds));
    for &j in elems {
        p = apply_rule(&p, &G1 { j }, &name)?;
    }
    Ok(p)
}

fn check_elems(elems: &[u8]) -> Result<()> {
    let mut seen = 0u32;
    for &e in elems {
        if e == 0 || e > 16 {
            return Err(Error::Domain(format!("index {e} outside 1..=16")));
        }
        if seen & bit(e) != 0 {
            return Err(Error::Domain(format!("index {e} repeated")));
        }
        seen |= bit(e);
    }
    Ok(())
}

pub fn natural(n: u8) -> Vec<u8> {
    (1..=n).collect()
}

/// The scaleoid `G^n 0`: the full cubic groupoid of a point.
pub fn scaleoid(n: u8) -> Result<Presentation> {
    gfull(&natural(n), 0, None)
}

/// `Gsy^n_t U` with constant scales.
pub fn gsy(t: &[Q], vdim: usize, bounds: Option<(Q, Q)>) -> Result<Presentation> {
    let ts: Vec<String> = t.iter().map(fmt_q).collect();
    let name = format!("Gsy^{}_{{{}}}U", t.len(), ts.join(","));
    let mut p = point_presentation(&name, base_space(vdim, bounds));
    for (k, tk) in t.iter().enumerate() {
        p = apply_rule(&p, &GsyConst { j: k as u8 + 1, t: tk.clone() }, &name)?;
    }
    Ok(p)
}

/// The tangent bundle `T^n U = Gsy^n_0 U`.
pub fn tangent(n: u8, vdim: usize) -> Result<Presentation> {
    let mut p = gsy(&vec![Q::from_integer(0.into()); n as usize], vdim, None)?;
    p.name = format!("T^{n}U");
    Ok(p)
}

/// Base coordinates `x∅_1..x∅_dim` of a pair groupoid.
pub fn pg_base(dim: usize, bounds: Option<(Q, Q)>) -> CoordSchema {
    let labels: Vec<Coord> = (0..dim).map(|k| x_label(0, k as u16)).collect();
    let constraints = if bounds.is_some() && dim > 0 { vec![PolyMap::identity(&labels)] } else { Vec::new() };
    CoordSchema { labels, constraints, bounds, units: Vec::new() }
}

/// `PG^n M` for `M ⊆ 𝕂^dim`; the vertex `α` has coordinates `x_γ`, `γ ⊆ α`.
pub fn pair_groupoid(n: u8, dim: usize) -> Result<Presentation> {
    pair_groupoid_over(n, pg_base(dim, None))
}

pub fn pair_groupoid_over(n: u8, base: CoordSchema) -> Result<Presentation> {
    let name = format!("PG^{n}M");
    let mut p = point_presentation(&name, base);
    for j in 1..=n {
        p = apply_rule(&p, &PairRule { j }, &name)?;
    }
    Ok(p)
}

/// Scaled action category with `S = K = 𝕂` acting on `V = 𝕂^vdim`; with
/// `trivial` the action on `V` is trivial. Vertex `α` has coordinates `v`,
/// `s_i (i ∈ α)` and `t_1..t_n`.
pub fn scaled_action(n: u8, vdim: usize, trivial: bool) -> Result<Presentation> {
    if n > 16 {
        return Err(Error::Domain("at most 16 directions".into()));
    }
    let name = format!("SA^{n}{}", if trivial { "(trivial)" } else { "" });
    let v: Vec<Coord> = (0..vdim).map(|k| Coord::vc(0, k as u16)).collect();
    let top = (1u32 << n) - 1;
    let labels = |m: u32| -> Vec<Coord> {
        let mut l = v.clone();
        l.extend((0..n).filter(|k| m >> k & 1 == 1).map(|k| Coord::s(1 << k)));
        l.extend((0..n).map(|k| Coord::t(1 << k)));
        l
    };
    let mut vertices = BTreeMap::new();
    for m in 0..=top {
        vertices.insert(m, CoordSchema::free(labels(m)));
    }
    let scaled: Vec<Coord> = if trivial { Vec::new() } else { v.clone() };
    let mut edges = BTreeMap::new();
    for lo in 0..=top {
        for i in 0..n {
            if lo >> i & 1 == 1 {
                continue;
            }
            let (s, t) = (Coord::s(1 << i), Coord::t(1 << i));
            let y: Vec<Coord> = labels(lo).into_iter().filter(|c| *c != t).collect();
            edges.insert((lo, lo | 1 << i), second_kind_edge(&y, &scaled, s, t));
        }
    }
    let mut faces = BTreeMap::new();
    for lo in 0..=top {
        for i in 0..n {
            for j in i + 1..n {
                if lo >> i & 1 == 0 && lo >> j & 1 == 0 {
                    let quad = sa_quad(&labels(lo), &v, !trivial, i, j);
                    faces.insert((lo, i, j), Face { quad: Some(quad) });
                }
            }
        }
    }
    let dirs = (1..=n).map(Dir::plain).collect();
    Ok(Presentation { name, dirs, vertices, edges, faces })
}

/// Compatible quadruples on the face at `lo` spanned by positions `i < j`:
/// `d = (x, σ, μ, ρτ_i, ντ_j)`, `c = (σx, ρ, μ, τ_i, ντ_j)`,
/// `b = (μx, σ, ν, ρτ_i, τ_j)`, `a = (σμx, ρ, ν, τ_i, τ_j)`.
fn sa_quad(lo_labels: &[Coord], v: &[Coord], act: bool, i: u8, j: u8) -> PolyMap {
    let (si, sj, ti, tj) = (Coord::s(1 << i), Coord::s(1 << j), Coord::t(1 << i), Coord::t(1 << j));
    let (rho, nu) = (si.tagged(1), sj.tagged(1));
    let mut dom: Vec<Coord> = lo_labels.to_vec();
    dom.extend([si, sj, rho, nu]);
    let mut top: Vec<Coord> = lo_labels.to_vec();
    top.extend([si, sj]);
    top.sort();
    let mut cod = Vec::new();
    for u in 1..=4 {
        cod.extend(top.iter().map(|c| c.tagged(u)));
    }
    let m = PolyMap::build(&dom, &cod, |e| {
        let g = |c: &Coord| e.get(c);
        // (x-scale, s_i, s_j, t_i, t_j) for a, b, c, d
        let rows = [
            (g(&si).mul(&g(&sj)), g(&rho), g(&nu), g(&ti), g(&tj)),
            (g(&sj), g(&si), g(&nu), g(&rho).mul(&g(&ti)), g(&tj)),
            (g(&si), g(&rho), g(&sj), g(&ti), g(&nu).mul(&g(&tj))),
            (crate::poly::Poly::one(), g(&si), g(&sj), g(&rho).mul(&g(&ti)), g(&nu).mul(&g(&tj))),
        ];
        let mut out = Vec::new();
        for (xs, a, b, c, d) in rows {
            for l in &top {
                out.push(if *l == si {
                    a.clone()
                } else if *l == sj {
                    b.clone()
                } else if *l == ti {
                    c.clone()
                } else if *l == tj {
                    d.clone()
                } else if act && v.contains(l) {
                    xs.mul(&g(l))
                } else {
                    g(l)
                });
            }
        }
        out
    });
    crate::nfold::canonical_params(&m)
}

/// `G^{n̄}U` over the two-typed hypercube, directions `1, 1', …, n, n'`.
pub fn g_overline(n: u8, vdim: usize, bounds: Option<(Q, Q)>) -> Result<Presentation> {
    if n > 2 {
        return Err(Error::Unsupported(format!(
            "G^{{n̄}} is only built for n ≤ 2 (requested n = {n}); its structure for larger n is not determined"
        )));
    }
    let name = format!("G^{n}barU");
    let mut p = point_presentation(&name, base_space(vdim, bounds));
    for j in 1..=n {
        p = apply_rule(&p, &G1Bar { j }, &name)?;
    }
    Ok(p)
}

/// Positions of the plain (`primed = false`) or primed directions of a two-typed presentation.
pub fn typed_positions(p: &Presentation, primed: bool) -> u32 {
    (0..p.dirs.len()).filter(|&k| p.dirs[k].primed == primed).fold(0, |m, k| m | 1 << k)
}

/// Relabels directions by a permutation: source position `k` goes to `perm[k]`.
pub fn transpose(p: &Presentation, perm: &[usize]) -> Result<Presentation> {
    let n = p.dirs.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
        return Err(Error::Domain("not a permutation of the directions".into()));
    }
    let pm = |m: u32| (0..n).filter(|k| m >> k & 1 == 1).fold(0u32, |a, k| a | 1 << perm[k]);
    let mut dirs = p.dirs.clone();
    for k in 0..n {
        dirs[perm[k]] = p.dirs[k];
    }
    let vertices = p.vertices.iter().map(|(m, s)| (pm(*m), s.clone())).collect();
    let edges = p.edges.iter().map(|((lo, hi), e)| ((pm(*lo), pm(*hi)), e.clone())).collect();
    let faces = p
        .faces
        .iter()
        .map(|((lo, i, j), f)| {
            let (ni, nj) = (perm[*i as usize] as u8, perm[*j as usize] as u8);
            if ni < nj {
                ((pm(*lo), ni, nj), f.clone())
            } else {
                let quad = f.quad.as_ref().map(|q| swap_tags(q, &[(2, 3)]));
                ((pm(*lo), nj, ni), Face { quad })
            }
        })
        .collect();
    Ok(Presentation { name: format!("{}^τ", p.name), dirs, vertices, edges, faces })
}

/// Exchanges output tags of a parameter map.
pub fn swap_tags(m: &PolyMap, pairs: &[(u8, u8)]) -> PolyMap {
    m.relabel_cod(&|c| {
        for &(a, b) in pairs {
            if c.tag == a {
                return c.tagged(b);
            }
            if c.tag == b {
                return c.tagged(a);
            }
        }
        c
    })
}

/// Reverses the directions in `gamma` (a mask over positions).
pub fn gamma_opposite(p: &Presentation, gamma: u32) -> Presentation {
    let mut edges = BTreeMap::new();
    for ((lo, hi), e) in &p.edges {
        let d = (hi ^ lo).trailing_zeros();
        let e2 = if gamma >> d & 1 == 1 {
            EdgeCat {
                source: e.target.clone(),
                target: e.source.clone(),
                unit: e.unit.clone(),
                compose: e.compose.relabel_dom(&|c| match c.tag {
                    1 => c.tagged(2),
                    2 => c.tagged(1),
                    _ => c,
                }),
                inverse: e.inverse.clone(),
                pair: e.pair.as_ref().map(|m| swap_tags(m, &[(1, 2)])),
                triple: e.triple.as_ref().map(|m| swap_tags(m, &[(1, 3)])),
            }
        } else {
            e.clone()
        };
        edges.insert((*lo, *hi), e2);
    }
    let mut faces = BTreeMap::new();
    for ((lo, i, j), f) in &p.faces {
        let mut quad = f.quad.clone();
        if gamma >> i & 1 == 1 {
            quad = quad.map(|q| swap_tags(&q, &[(1, 2), (3, 4)]));
        }
        if gamma >> j & 1 == 1 {
            quad = quad.map(|q| swap_tags(&q, &[(1, 3), (2, 4)]));
        }
        faces.insert((*lo, *i, *j), Face { quad });
    }
    Presentation {
        name: p.name.clone(),
        dirs: p.dirs.clone(),
        vertices: p.vertices.clone(),
        edges,
        faces,
    }
}

/// `ξ_γ` from vertex `from` to the bottom vertex: the target projection in the
/// directions of `gamma`, the source projection in the others.
pub fn top_down_projection(p: &Presentation, from: u32, gamma: u32) -> Result<PolyMap> {
    if gamma & !from != 0 {
        return Err(Error::Domain("γ must lie inside the starting vertex".into()));
    }
    let mut m = PolyMap::identity(&p.vertex(from)?.labels);
    let mut cur = from;
    for k in (0..p.dirs.len()).rev() {
        if cur >> k & 1 == 0 {
            continue;
        }
        let lo = cur & !(1 << k);
        let e = p.edge(lo, cur)?;
        let step = if gamma >> k & 1 == 1 { &e.target } else { &e.source };
        m = step.compose(&m)?;
        cur = lo;
    }
    Ok(m)
}

/// All `ξ_γ`, `γ ⊆ from`, keyed by `γ`.
pub fn top_down_projections(p: &Presentation, from: u32) -> Result<BTreeMap<u32, PolyMap>> {
    crate::hypercube::subsets_of(from).into_iter().map(|g| Ok((g, top_down_projection(p, from, g)?))).collect()
}

/// Label-wise comparison of two presentations over the same masks: vertex label
/// sets and the source, target, unit, composition and inverse maps. Returns one
/// line per difference.
pub fn compare_presentations(a: &Presentation, b: &Presentation) -> Vec<String> {
    let mut out = Vec::new();
    let ka: Vec<u32> = a.vertices.keys().copied().collect();
    let kb: Vec<u32> = b.vertices.keys().copied().collect();
    if ka != kb {
        out.push("vertex masks differ".into());
        return out;
    }
    for (m, s) in &a.vertices {
        let mut la = s.labels.clone();
        let mut lb = b.vertices[m].labels.clone();
        la.sort();
        lb.sort();
        if la != lb {
            out.push(format!(
                "vertex {}: labels {} vs {}",
                a.mask_name(*m),
                crate::poly::fmt_labels(&la),
                crate::poly::fmt_labels(&lb)
            ));
        }
    }
    for ((lo, hi), e) in &a.edges {
        let Some(f) = b.edges.get(&(*lo, *hi)) else {
            out.push(format!("edge {} missing", a.edge_name(*lo, *hi)));
            continue;
        };
        let mut pairs = vec![
            ("source", Some(&e.source), Some(&f.source)),
            ("target", Some(&e.target), Some(&f.target)),
            ("unit", Some(&e.unit), Some(&f.unit)),
            ("compose", Some(&e.compose), Some(&f.compose)),
        ];
        if e.inverse.is_some() || f.inverse.is_some() {
            pairs.push(("inverse", e.inverse.as_ref(), f.inverse.as_ref()));
        }
        for (what, x, y) in pairs {
            match (x, y) {
                (Some(x), Some(y)) => {
                    if let Some(d) = x.diff_against(y) {
                        out.push(format!("edge {} {what}: {d}", a.edge_name(*lo, *hi)));
                    }
                }
                _ => out.push(format!("edge {} {what}: present on one side only", a.edge_name(*lo, *hi))),
            }
        }
    }
    if a.edges.len() != b.edges.len() {
        out.push("edge sets differ".into());
    }
    out
}

/// The restriction of a full cubic groupoid to the locus `t_γ = 0, |γ| > 1`:
/// every structure map with those inputs set to zero and those outputs dropped.
/// Parametrizations and faces are not carried over.
pub fn sym_locus_restriction(p: &Presentation) -> Result<Presentation> {
    use crate::laws::restrict_to_sym_locus;
    let higher = |c: &Coord| c.kind == Kind::T && c.set.count_ones() > 1;
    let mut vertices = BTreeMap::new();
    for (m, s) in &p.vertices {
        let labels: Vec<Coord> = s.labels.iter().copied().filter(|c| !higher(c)).collect();
        vertices.insert(*m, CoordSchema::free(labels));
    }
    let mut edges = BTreeMap::new();
    for (k, e) in &p.edges {
        edges.insert(
            *k,
            EdgeCat {
                source: restrict_to_sym_locus(&e.source)?,
                target: restrict_to_sym_locus(&e.target)?,
                unit: restrict_to_sym_locus(&e.unit)?,
                compose: restrict_to_sym_locus(&e.compose)?,
                inverse: e.inverse.as_ref().map(restrict_to_sym_locus).transpose()?,
                pair: None,
                triple: None,
            },
        );
    }
    Ok(Presentation { name: format!("{} on the symmetric locus", p.name), dirs: p.dirs.clone(), vertices, edges, faces: BTreeMap::new() })
}

/// Differences between `G^n U` restricted to the symmetric locus and `Gsy^n U`
/// with symbolic scales.
pub fn imbedding_discrepancies(n: u8, vdim: usize) -> Result<Vec<String>> {
    let full = sym_locus_restriction(&gfull(&natural(n), vdim, None)?)?;
    let sym = closed::gsy_closed(&closed::GsyScales::Symbolic(n), vdim, None)?;
    Ok(compare_presentations(&full, &sym))
}

/// The composition map `a ∗ b` that keeps `keep` from `b` and adds the rest.
pub fn fiber_sum_compose(hi: &[Coord], base: &[Coord]) -> PolyMap {
    let cd = compose_dom(hi);
    PolyMap::build(&cd, hi, |e| {
        hi.iter()
            .map(|c| if base.contains(c) { e.get(&c.tagged(2)) } else { e.get(&c.tagged(1)).add(&e.get(&c.tagged(2))) })
            .collect()
    })
}
