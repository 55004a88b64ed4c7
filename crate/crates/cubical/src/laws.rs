//! Laws: families of vertex maps induced by a polynomial base map, and checks of
//! compatibility, homogeneity and symmetry.

use std::collections::BTreeMap;

use crate::check::{check_morphism, witness, CheckConfig, Report, Tally};
use crate::constructions::closed::{gsy_labels, GsyScales};
use crate::error::{Error, Result};
use crate::hypercube::{elems_of, subsets_of};
use crate::nfold::{tagged_labels, Point, Presentation};
use crate::poly::{Coord, Env, Kind, Poly, PolyMap};
use crate::rules::{GsyConst, Rule, G1};
use crate::scalars::{ExtElement, Q};
use crate::slope::{bit, slope_with, sym_slope_closed_by, SlopeSpec};

/// Vertex maps keyed by position masks over `dirs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Law {
    pub name: String,
    pub dirs: Vec<u8>,
    pub base: PolyMap,
    pub vertex_maps: BTreeMap<u32, PolyMap>,
}

/// Applies one-direction rules in order; the map at mask `m` uses layer
/// `m_k` of rule `k`.
pub fn law_from_rules(f: &PolyMap, rules: &[&dyn Rule], name: &str) -> Result<Law> {
    let mut maps = BTreeMap::new();
    maps.insert(0u32, f.clone());
    for (k, r) in rules.iter().enumerate() {
        if r.dirs().len() != 1 {
            return Err(Error::Unsupported("laws are built from one-direction rules".into()));
        }
        let mut next = BTreeMap::new();
        for (m, g) in &maps {
            next.insert(*m, r.apply_map(0, g)?);
            next.insert(*m | 1 << k, r.apply_map(1, g)?);
        }
        maps = next;
    }
    let dirs = rules.iter().map(|r| r.dirs()[0].elem).collect();
    Ok(Law { name: name.into(), dirs, base: f.clone(), vertex_maps: maps })
}

/// `G^{α;N}f`, built by deriving in the directions of `α` and multiplying by
/// the identity in the others, following the order of `N`.
pub fn derive_law_full(f: &PolyMap, elems: &[u8]) -> Result<Law> {
    let rules: Vec<G1> = elems.iter().map(|&j| G1 { j }).collect();
    let refs: Vec<&dyn Rule> = rules.iter().map(|r| r as &dyn Rule).collect();
    law_from_rules(f, &refs, "G f")
}

/// `Gsy^{α;n}_t f` for constant scales, through the one-direction rules.
pub fn derive_law_sym(f: &PolyMap, t: &[Q]) -> Result<Law> {
    let rules: Vec<GsyConst> = t.iter().enumerate().map(|(k, x)| GsyConst { j: k as u8 + 1, t: x.clone() }).collect();
    let refs: Vec<&dyn Rule> = rules.iter().map(|r| r as &dyn Rule).collect();
    law_from_rules(f, &refs, "Gsy_t f")
}

/// `f^{[ℓβ]}_{t_β}`: iterated slopes in the directions of `β` with the scales
/// frozen. The domain is `v_γ (γ ⊆ β)` (and `t_i, i ∈ β`, when symbolic); the
/// outputs are labelled `v_β`.
pub fn sym_factorizer(f: &PolyMap, beta: u32, scales: &GsyScales) -> Result<PolyMap> {
    let mut g = f.clone();
    for j in elems_of(beta) {
        let p = move |c: Coord| c.partner(j);
        let moving = |c: &Coord| c.kind == Kind::V;
        g = slope_with(&g, &SlopeSpec { moving: &moving, partner: &p, scale: Coord::t(bit(j)) })?;
    }
    if let GsyScales::Const(t) = scales {
        let dom: Vec<Coord> = g.dom.iter().copied().filter(|c| c.kind != Kind::T).collect();
        let env = Env::new(&dom);
        g = g.substitute_dom(&dom, &|c: &Coord| {
            if c.kind == Kind::T {
                Poly::constant(t[c.set.trailing_zeros() as usize].clone())
            } else {
                env.get(c)
            }
        });
    }
    Ok(g)
}

/// `Gsy^{α;n}_t f(v) = (f^{[ℓβ]}_{t_β}(v_β))_{β⊆α}`, scales passed through when symbolic.
pub fn derive_law_sym_closed(f: &PolyMap, scales: &GsyScales) -> Result<Law> {
    let n = scales.n();
    let (din, dout) = (f.in_arity(), f.out_arity());
    let mut maps = BTreeMap::new();
    for a in 0..(1u32 << n) {
        let dom = gsy_labels(scales, din, a);
        let cod = gsy_labels(scales, dout, a);
        let mut parts = Vec::new();
        for b in subsets_of(a) {
            parts.push(sym_factorizer(f, b, scales)?.with_dom(&dom)?);
        }
        let extra: Vec<Coord> = cod.iter().copied().filter(|c| c.kind == Kind::T).collect();
        parts.push(PolyMap::projection(&dom, &extra));
        maps.insert(a, PolyMap::concat(&parts)?.with_dom(&dom)?.pick(&cod)?);
    }
    Ok(Law { name: "Gsy f (closed)".into(), dirs: (1..=n).collect(), base: f.clone(), vertex_maps: maps })
}

/// Label-wise comparison of two laws over the same masks.
pub fn compare_laws(a: &Law, b: &Law) -> Option<String> {
    if a.vertex_maps.len() != b.vertex_maps.len() {
        return Some("different vertex sets".into());
    }
    for (m, f) in &a.vertex_maps {
        let Some(g) = b.vertex_maps.get(m) else { return Some(format!("mask {m} missing")) };
        if let Some(d) = f.diff_against(g) {
            return Some(format!("mask {m}: {d}"));
        }
    }
    None
}

/// `F` applied to both factors of a composable pair: tags 1 and 2 kept apart.
fn pairwise(f: &PolyMap) -> Result<PolyMap> {
    let a = f.relabel(&|c| c.tagged(1));
    let b = f.relabel(&|c| c.tagged(2));
    let mut dom = tagged_labels(&f.dom, 1);
    dom.extend(tagged_labels(&f.dom, 2));
    PolyMap::concat(&[a, b])?.with_dom(&dom)
}

/// Symbolic check that the vertex maps commute with sources, targets, units,
/// inverses and (over the pair parametrization) compositions.
pub fn check_law_compatibility(law: &Law, src: &Presentation, dst: &Presentation) -> Vec<Report> {
    let mut t = Tally::new(format!("{}: {} → {}", law.name, src.name, dst.name), CheckConfig { samples: 1, seed: 0 });
    for ((lo, hi), e) in &src.edges {
        let loc = src.edge_name(*lo, *hi);
        let outcome = (|| -> Result<Option<String>> {
            let d = dst.edge(*lo, *hi)?;
            let (flo, fhi) = (
                law.vertex_maps.get(lo).ok_or_else(|| Error::Domain("law misses a vertex".into()))?,
                law.vertex_maps.get(hi).ok_or_else(|| Error::Domain("law misses a vertex".into()))?,
            );
            for (what, sm, dm) in [("source", &e.source, &d.source), ("target", &e.target, &d.target)] {
                if let Some(x) = dm.compose(fhi)?.diff_against(&flo.compose(sm)?) {
                    return Ok(Some(format!("{loc} {what}: {x}")));
                }
            }
            if let Some(x) = fhi.compose(&e.unit)?.diff_against(&d.unit.compose(flo)?) {
                return Ok(Some(format!("{loc} unit: {x}")));
            }
            if let (Some(si), Some(di)) = (&e.inverse, &d.inverse) {
                if let Some(x) = fhi.compose(si)?.diff_against(&di.compose(fhi)?) {
                    return Ok(Some(format!("{loc} inverse: {x}")));
                }
            }
            if let Some(pair) = &e.pair {
                let lhs = fhi.compose(&e.compose.compose(pair)?)?;
                let rhs = d.compose.compose(&pairwise(fhi)?.compose(pair)?)?;
                if let Some(x) = lhs.diff_against(&rhs) {
                    return Ok(Some(format!("{loc} composition: {x}")));
                }
            }
            Ok(None)
        })();
        t.fact(
            &format!("compatibility {loc}"),
            outcome.map(|o| o.map(|d| witness(d, &[]))),
        );
    }
    t.reports
}

/// Sampled morphism check of a law between two presentations.
pub fn check_law_morphism(law: &Law, src: &Presentation, dst: &Presentation, cfg: CheckConfig) -> Vec<Report> {
    let maps = &law.vertex_maps;
    let f = crate::check::polymap_vertex_maps(maps);
    check_morphism(src, dst, None, &f, cfg)
}

/// `Φ_s(v)_γ = s^γ v_γ` with `s` given as polynomials over `env`.
fn phi(labels: &[Coord], s: &[Poly], env: &Env) -> Vec<Poly> {
    labels
        .iter()
        .map(|c| {
            if c.kind == Kind::V {
                elems_of(c.set).iter().fold(env.get(c), |acc, &i| acc.mul(&s[i as usize - 1]))
            } else {
                env.get(c)
            }
        })
        .collect()
}

/// Homogeneity of a symmetric law with symbolic scales:
/// `F(Φ_s v, t) = Φ_s F(v, s·t)` on the `v` components at every vertex. With `s = None` the `s_i` are
/// fresh variables; otherwise the given scalars.
pub fn check_homogeneity(law: &Law, s: Option<&[Q]>) -> Result<Option<String>> {
    let n = law.dirs.len();
    for (m, f) in &law.vertex_maps {
        let svars: Vec<Coord> = (0..n).map(|k| Coord::s(1 << k)).collect();
        let mut dom = f.dom.clone();
        if s.is_none() {
            dom.extend(svars.iter().copied());
        }
        let env = Env::new(&dom);
        let sv: Vec<Poly> = match s {
            None => svars.iter().map(|c| env.get(c)).collect(),
            Some(x) => x.iter().map(|q| Poly::constant(q.clone())).collect(),
        };
        if sv.len() != n {
            return Err(Error::Shape(format!("need {n} scalars")));
        }
        let scaled_in = phi(&f.dom, &sv, &env);
        let lhs = f.substitute_dom(&dom, &|c: &Coord| scaled_in[f.dom_index(c).unwrap()].clone());
        let st = f.substitute_dom(&dom, &|c: &Coord| {
            if c.kind == Kind::T {
                env.get(c).mul(&sv[c.set.trailing_zeros() as usize])
            } else {
                env.get(c)
            }
        });
        let rhs_comps: Vec<Poly> = st
            .cod
            .iter()
            .zip(&st.comps)
            .map(|(c, p)| {
                if c.kind == Kind::V {
                    elems_of(c.set).iter().fold(p.clone(), |acc, &i| acc.mul(&sv[i as usize - 1]))
                } else {
                    p.clone()
                }
            })
            .collect();
        let rhs = PolyMap::new(dom.clone(), st.cod.clone(), rhs_comps);
        let vs: Vec<Coord> = f.cod.iter().copied().filter(|c| c.kind == Kind::V).collect();
        if let Some(d) = lhs.pick(&vs)?.diff_against(&rhs.pick(&vs)?) {
            return Ok(Some(format!("mask {m}: {d}")));
        }
    }
    Ok(None)
}

/// Relabels index sets by a permutation `σ` of `1..n` (`sigma[i-1] = σ(i)`).
pub fn permute_label(c: Coord, sigma: &[u8]) -> Coord {
    let set = elems_of(c.set).iter().fold(0u32, |a, &e| a | bit(sigma[e as usize - 1]));
    Coord { set, ..c }
}

fn permute_mask(m: u32, sigma: &[u8]) -> u32 {
    elems_of(m).iter().fold(0u32, |a, &e| a | bit(sigma[e as usize - 1]))
}

/// Symmetry of a symmetric law: `F_{σα}(σv, σt) = σ F_α(v, t)`.
pub fn check_symmetry(law: &Law, sigma: &[u8]) -> Result<Option<String>> {
    for (m, f) in &law.vertex_maps {
        let g = f.relabel(&|c| permute_label(c, sigma));
        let h = law.vertex_maps.get(&permute_mask(*m, sigma)).ok_or_else(|| Error::Domain("bad permutation".into()))?;
        if let Some(d) = g.diff_against(h) {
            return Ok(Some(format!("mask {m}: {d}")));
        }
    }
    Ok(None)
}

/// Naturality of the full construction under relabelling: the law built along
/// `σ(N)` is the relabelled law built along `N`.
pub fn check_full_relabelling(f: &PolyMap, n: u8, sigma: &[u8]) -> Result<Option<String>> {
    let nat: Vec<u8> = (1..=n).collect();
    let a = derive_law_full(f, &nat)?;
    let b = derive_law_full(f, sigma)?;
    for (m, g) in &a.vertex_maps {
        let r = g.relabel(&|c| permute_label(c, sigma));
        if let Some(d) = r.diff_against(&b.vertex_maps[m]) {
            return Ok(Some(format!("mask {m}: {d}")));
        }
    }
    Ok(None)
}

/// Restricting `G^n f` to `t_γ = 0` for `|γ| > 1` gives the symmetric law with
/// symbolic scales.
pub fn check_full_law_on_sym_locus(f: &PolyMap, n: u8) -> Result<Option<String>> {
    let full = derive_law_full(f, &(1..=n).collect::<Vec<_>>())?;
    let sym = derive_law_sym_closed(f, &GsyScales::Symbolic(n))?;
    for (m, g) in &full.vertex_maps {
        let r = restrict_to_sym_locus(g)?;
        if let Some(d) = r.diff_against(&sym.vertex_maps[m]) {
            return Ok(Some(format!("mask {m}: {d}")));
        }
    }
    Ok(None)
}

fn is_higher_t(c: &Coord) -> bool {
    c.kind == Kind::T && c.set.count_ones() > 1
}

/// Sets every `t_γ` with `|γ| > 1` to zero in the inputs and drops such outputs,
/// after checking they vanish there.
pub fn restrict_to_sym_locus(g: &PolyMap) -> Result<PolyMap> {
    let dom: Vec<Coord> = g.dom.iter().copied().filter(|c| !is_higher_t(c)).collect();
    let env = Env::new(&dom);
    let r = g.substitute_dom(&dom, &|c: &Coord| if is_higher_t(c) { Poly::zero() } else { env.get(c) });
    let keep: Vec<Coord> = r.cod.iter().copied().filter(|c| !is_higher_t(c)).collect();
    for (c, p) in r.cod.iter().zip(&r.comps) {
        if is_higher_t(c) && !p.is_zero() {
            return Err(Error::Domain(format!("output {} does not vanish on the symmetric locus", c.name(false))));
        }
    }
    r.pick(&keep)
}

/// The terminal law: every vertex map keeps the scale coordinates only.
pub fn terminal_law(p: &Presentation) -> Law {
    let maps = p
        .vertices
        .iter()
        .map(|(m, s)| {
            let ts: Vec<Coord> = s.labels.iter().copied().filter(|c| c.kind == Kind::T).collect();
            (*m, PolyMap::projection(&s.labels, &ts))
        })
        .collect();
    Law {
        name: "terminal".into(),
        dirs: p.dirs.iter().map(|d| d.elem).collect(),
        base: PolyMap::projection(&p.vertices[&0].labels, &[]),
        vertex_maps: maps,
    }
}

/// `0 ∘ F = 0`: a law preserves the scale coordinates.
pub fn check_terminal_compatibility(law: &Law, src: &Presentation, dst: &Presentation) -> Result<Option<String>> {
    let ts = terminal_law(src);
    let td = terminal_law(dst);
    for (m, f) in &law.vertex_maps {
        let lhs = td.vertex_maps[m].compose(f)?;
        if let Some(d) = lhs.diff_against(&ts.vertex_maps[m]) {
            return Ok(Some(format!("mask {m}: {d}")));
        }
    }
    Ok(None)
}

pub type BlackBox<'a> = dyn Fn(&[Q]) -> Result<Vec<Q>> + 'a;

/// Vertex maps of the finite-part law induced by an arbitrary map: at unit
/// scales each component is the closed difference formula.
pub fn finite_law_vertex_map(
    f: &BlackBox,
    nout: usize,
    t: &[Q],
    nin: usize,
    alpha: u32,
    v: &Point,
) -> Result<Point> {
    use num_traits::Zero;
    if t.iter().any(|x| x.is_zero()) {
        return Err(Error::Domain("finite-part laws need unit scales".into()));
    }
    let mut out = Point::new();
    for b in subsets_of(alpha) {
        let es = elems_of(b);
        let val = if es.is_empty() {
            let x: Vec<Q> = (0..nin).map(|k| v[&Coord::vc(0, k as u16)].clone()).collect();
            f(&x)?
        } else {
            let tb: Vec<Q> = es.iter().map(|&e| t[e as usize - 1].clone()).collect();
            let fam: Vec<Vec<Q>> = (0..1u32 << es.len())
                .map(|pm| {
                    let g = (0..es.len()).filter(|p| pm >> p & 1 == 1).fold(0u32, |a, p| a | bit(es[p]));
                    (0..nin).map(|k| v[&Coord::vc(g, k as u16)].clone()).collect()
                })
                .collect();
            sym_slope_closed_by(f, &tb, &fam, nout)?
        };
        for (k, y) in val.into_iter().enumerate() {
            out.insert(Coord::vc(b, k as u16), y);
        }
    }
    Ok(out)
}

/// Morphism identities of the finite-part law of a black-box map between
/// `Gsy^n_t(𝕂^nin)` and `Gsy^n_t(𝕂^nout)`.
pub fn finite_law_from_map(
    f: &BlackBox,
    nin: usize,
    nout: usize,
    t: &[Q],
    cfg: CheckConfig,
) -> Result<Vec<Report>> {
    let src = crate::constructions::finite::gsy_finite_part(t, nin)?;
    let dst = crate::constructions::gsy(t, nout, None)?;
    let vm = |m: u32, x: &Point| finite_law_vertex_map(f, nout, t, nin, m, x);
    Ok(check_morphism(&src, &dst, None, &vm, cfg))
}

/// Substitutes `Σ_γ v_γ X_γ` into `f` over `A_t^{α}` and compares every
/// coefficient with the symmetric law at the vertex `α`.
pub fn check_extension_model(f: &PolyMap, scales: &GsyScales) -> Result<Option<String>> {
    let law = derive_law_sym_closed(f, scales)?;
    let n = scales.n();
    for (a, g) in &law.vertex_maps {
        let alpha = elems_of(*a);
        let env = Env::new(&g.dom);
        let t: Vec<Poly> = alpha
            .iter()
            .map(|&e| match scales {
                GsyScales::Const(t) => Poly::constant(t[e as usize - 1].clone()),
                GsyScales::Symbolic(_) => env.get(&Coord::t(bit(e))),
            })
            .collect();
        let pos_set = |pm: usize| (0..alpha.len()).filter(|p| pm >> p & 1 == 1).fold(0u32, |s, p| s | bit(alpha[p]));
        let base: Vec<ExtElement<Poly>> = (0..f.in_arity())
            .map(|k| {
                let coeffs = (0..1usize << alpha.len()).map(|pm| env.get(&Coord::vc(pos_set(pm), k as u16))).collect();
                ExtElement::new(alpha.clone(), t.clone(), coeffs)
            })
            .collect::<Result<_>>()?;
        let vals = if base.is_empty() {
            return Err(Error::Shape("the base map needs at least one input".into()));
        } else {
            crate::slope::eval_over_extension(f, &base)?
        };
        for (k, val) in vals.iter().enumerate() {
            for (pm, c) in val.coeffs.iter().enumerate() {
                let label = Coord::vc(pos_set(pm), k as u16);
                let expect = g.comp(&label).ok_or_else(|| Error::Internal("law output missing".into()))?;
                if c != expect {
                    return Ok(Some(format!(
                        "n={n}, vertex {}, component {}: extension gives {} but the law gives {}",
                        crate::hypercube::set_string(*a),
                        label.name(true),
                        crate::poly::render_over(c, &g.dom),
                        crate::poly::render_over(expect, &g.dom)
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Ring structure on the vertices of `Gsy^n_t 𝕂` induced by the product and sum
/// of `𝕂`: the derived maps are groupoid morphisms and the product agrees with
/// multiplication in `A_t`.
pub fn ring_goid_structure(t: &[Q], cfg: CheckConfig) -> Result<Vec<Report>> {
    let x0 = Coord::vc(0, 0);
    let x1 = Coord::vc(0, 1);
    let d2 = [x0, x1];
    let mul = PolyMap::build(&d2, &[x0], |e| vec![e.get(&x0).mul(&e.get(&x1))]);
    let add = PolyMap::build(&d2, &[x0], |e| vec![e.get(&x0).add(&e.get(&x1))]);
    let src = crate::constructions::gsy(t, 2, None)?;
    let dst = crate::constructions::gsy(t, 1, None)?;
    let mut reports = Vec::new();
    for (name, op) in [("product", &mul), ("sum", &add)] {
        let mut law = derive_law_sym(op, t)?;
        law.name = format!("Gsy_t({name})");
        reports.extend(check_law_compatibility(&law, &src, &dst));
        reports.extend(check_law_morphism(&law, &src, &dst, cfg));
    }
    let mut tally = Tally::new(format!("Gsy^{}_t ring", t.len()), cfg);
    tally.fact("product-is-extension-multiplication", check_extension_model(&mul, &GsyScales::Const(t.to_vec())).map(|o| {
        o.map(|d| witness(d, &[]))
    }));
    reports.extend(tally.reports);
    Ok(reports)
}

/// The derived product on `(a_γ), (b_γ)` at the top vertex, as a map.
pub fn derived_product(t: &[Q]) -> Result<PolyMap> {
    let x0 = Coord::vc(0, 0);
    let x1 = Coord::vc(0, 1);
    let mul = PolyMap::build(&[x0, x1], &[x0], |e| vec![e.get(&x0).mul(&e.get(&x1))]);
    let law = derive_law_sym(&mul, t)?;
    Ok(law.vertex_maps[&((1u32 << t.len()) - 1)].clone())
}
