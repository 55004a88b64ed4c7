//! Randomized exact checkers for edge categories, faces and morphisms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nfold::{apply, apply_tagged, fmt_point, EdgeCat, Point, Presentation, Sampler};
use crate::poly::{Coord, PolyMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub detail: String,
    pub points: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub law: String,
    pub location: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub samples: usize,
    pub seed: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{:<5} {} @ {} ({} samples, seed {})",
            match self.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            },
            self.law,
            self.location,
            self.samples,
            self.seed
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!("\n      {}", w.detail));
            for (k, v) in &w.points {
                s.push_str(&format!("\n      {k} = {v}"));
            }
        }
        s
    }
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 100, seed: 7 }
    }
}

pub type Outcome = Result<Option<Witness>>;

pub fn witness(detail: impl Into<String>, pts: &[(&str, &Point)]) -> Witness {
    Witness { detail: detail.into(), points: pts.iter().map(|(k, p)| (k.to_string(), fmt_point(p))).collect() }
}

/// Runs named laws at one location, one report each.
pub struct Tally {
    pub location: String,
    pub cfg: CheckConfig,
    pub sampler: Sampler,
    pub reports: Vec<Report>,
}

impl Tally {
    pub fn new(location: impl Into<String>, cfg: CheckConfig) -> Tally {
        let location = location.into();
        let salt = location.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Tally { location, cfg, sampler: Sampler::new(cfg.seed ^ salt), reports: Vec::new() }
    }

    pub fn law(&mut self, name: &str, mut body: impl FnMut(&mut Sampler) -> Outcome) {
        let mut status = Status::Pass;
        let mut wit = None;
        let mut done = 0;
        for _ in 0..self.cfg.samples {
            match body(&mut self.sampler) {
                Ok(None) => done += 1,
                Ok(Some(w)) => {
                    done += 1;
                    status = Status::Fail;
                    wit = Some(w);
                    break;
                }
                Err(e) => {
                    status = Status::Error;
                    wit = Some(Witness { detail: e.to_string(), points: Vec::new() });
                    break;
                }
            }
        }
        self.reports.push(Report {
            law: name.to_string(),
            location: self.location.clone(),
            status,
            witness: wit,
            samples: done,
            seed: self.cfg.seed,
        });
    }

    /// A law decided once, without sampling.
    pub fn fact(&mut self, name: &str, outcome: Outcome) {
        let (status, witness) = match outcome {
            Ok(None) => (Status::Pass, None),
            Ok(Some(w)) => (Status::Fail, Some(w)),
            Err(e) => (Status::Error, Some(Witness { detail: e.to_string(), points: Vec::new() })),
        };
        self.reports.push(Report {
            law: name.to_string(),
            location: self.location.clone(),
            status,
            witness,
            samples: 0,
            seed: self.cfg.seed,
        });
    }
}

fn labels_set(l: &[Coord]) -> BTreeSet<Coord> {
    l.iter().copied().collect()
}

fn same(x: &Point, y: &Point) -> bool {
    x == y
}

fn need<'a>(m: &'a Option<PolyMap>, what: &str) -> Result<&'a PolyMap> {
    m.as_ref().ok_or_else(|| Error::Unsupported(format!("no {what} parametrization")))
}

fn shape_check(p: &Presentation, lo: u32, hi: u32, e: &EdgeCat) -> Outcome {
    let l = labels_set(&p.vertex(lo)?.labels);
    let h = labels_set(&p.vertex(hi)?.labels);
    let sub = |m: &PolyMap, dom: &BTreeSet<Coord>| m.dom.iter().all(|c| dom.contains(&c.tagged(0)));
    let mut bad = Vec::new();
    for (name, m) in [("source", &e.source), ("target", &e.target)] {
        if labels_set(&m.cod) != l || !sub(m, &h) {
            bad.push(name);
        }
    }
    if labels_set(&e.unit.cod) != h || !sub(&e.unit, &l) {
        bad.push("unit");
    }
    if labels_set(&e.compose.cod) != h || !sub(&e.compose, &h) {
        bad.push("compose");
    }
    if let Some(inv) = &e.inverse {
        if labels_set(&inv.cod) != h || !sub(inv, &h) {
            bad.push("inverse");
        }
    }
    if bad.is_empty() {
        Ok(None)
    } else {
        Ok(Some(Witness { detail: format!("label mismatch in {}", bad.join(", ")), points: Vec::new() }))
    }
}

/// Category axioms (and inverse laws when present) of the edge `(lo, hi)`.
pub fn check_edge_category(p: &Presentation, lo: u32, hi: u32, cfg: CheckConfig) -> Vec<Report> {
    let mut t = Tally::new(format!("{} {}", p.name, p.edge_name(lo, hi)), cfg);
    let (e, vlo, vhi) = match (p.edge(lo, hi), p.vertex(lo), p.vertex(hi)) {
        (Ok(e), Ok(a), Ok(b)) => (e, a, b),
        _ => {
            t.fact("structure", Err(Error::Domain("missing edge data".into())));
            return t.reports;
        }
    };
    t.fact("shape", shape_check(p, lo, hi, e));
    let comp = |a: &Point, b: &Point| apply_tagged(&e.compose, &[a, b]);

    t.law("unit-source-target", |s| {
        let y = s.point(vlo)?;
        let z = apply(&e.unit, &y)?;
        if !vhi.contains(&z)? {
            return Ok(Some(witness("unit leaves the vertex set", &[("y", &y), ("z(y)", &z)])));
        }
        let (src, tgt) = (apply(&e.source, &z)?, apply(&e.target, &z)?);
        if !same(&src, &y) || !same(&tgt, &y) {
            return Ok(Some(witness(
                "source or target of a unit differs from its object",
                &[("y", &y), ("source(z(y))", &src), ("target(z(y))", &tgt)],
            )));
        }
        Ok(None)
    });

    t.law("composable-pairs", |s| {
        let pr = s.tuple(need(&e.pair, "pair")?, 2, vhi)?;
        let (sa, tb) = (apply(&e.source, &pr[0])?, apply(&e.target, &pr[1])?);
        if !same(&sa, &tb) {
            return Ok(Some(witness(
                "sampled pair is not composable",
                &[("a", &pr[0]), ("b", &pr[1]), ("source(a)", &sa), ("target(b)", &tb)],
            )));
        }
        Ok(None)
    });

    t.law("composite-source-target", |s| {
        let pr = s.tuple(need(&e.pair, "pair")?, 2, vhi)?;
        let ab = comp(&pr[0], &pr[1])?;
        if !vhi.contains(&ab)? {
            return Ok(Some(witness("composite leaves the vertex set", &[("a", &pr[0]), ("b", &pr[1]), ("a*b", &ab)])));
        }
        let ok = same(&apply(&e.source, &ab)?, &apply(&e.source, &pr[1])?)
            && same(&apply(&e.target, &ab)?, &apply(&e.target, &pr[0])?);
        if !ok {
            return Ok(Some(witness(
                "source(a*b) ≠ source(b) or target(a*b) ≠ target(a)",
                &[("a", &pr[0]), ("b", &pr[1]), ("a*b", &ab)],
            )));
        }
        Ok(None)
    });

    t.law("unit-laws", |s| {
        let a = s.point(vhi)?;
        let zl = apply(&e.unit, &apply(&e.target, &a)?)?;
        let zr = apply(&e.unit, &apply(&e.source, &a)?)?;
        let (l, r) = (comp(&zl, &a)?, comp(&a, &zr)?);
        if !same(&l, &a) || !same(&r, &a) {
            return Ok(Some(witness(
                "unit law fails",
                &[("a", &a), ("z(target a)*a", &l), ("a*z(source a)", &r)],
            )));
        }
        Ok(None)
    });

    t.law("associativity", |s| {
        let tr = s.tuple(need(&e.triple, "triple")?, 3, vhi)?;
        let (a, b, c) = (&tr[0], &tr[1], &tr[2]);
        if !same(&apply(&e.source, a)?, &apply(&e.target, b)?) || !same(&apply(&e.source, b)?, &apply(&e.target, c)?) {
            return Ok(Some(witness("sampled triple is not composable", &[("a", a), ("b", b), ("c", c)])));
        }
        let l = comp(&comp(a, b)?, c)?;
        let r = comp(a, &comp(b, c)?)?;
        if !same(&l, &r) {
            return Ok(Some(witness("(a*b)*c ≠ a*(b*c)", &[("a", a), ("b", b), ("c", c), ("(a*b)*c", &l), ("a*(b*c)", &r)])));
        }
        Ok(None)
    });

    if let Some(inv) = &e.inverse {
        t.law("inverse-laws", |s| {
            let a = s.point(vhi)?;
            let ia = apply(inv, &a)?;
            if !vhi.contains(&ia)? {
                return Ok(Some(witness("inverse leaves the vertex set", &[("a", &a), ("a^-1", &ia)])));
            }
            let l = comp(&a, &ia)?;
            let r = comp(&ia, &a)?;
            let zt = apply(&e.unit, &apply(&e.target, &a)?)?;
            let zs = apply(&e.unit, &apply(&e.source, &a)?)?;
            if !same(&l, &zt) || !same(&r, &zs) {
                return Ok(Some(witness("inverse law fails", &[("a", &a), ("a^-1", &ia), ("a*a^-1", &l), ("a^-1*a", &r)])));
            }
            Ok(None)
        });
    }
    t.reports
}

/// Double-category conditions on the face at `lo` spanned by directions `i < j`.
pub fn check_face(p: &Presentation, lo: u32, i: u8, j: u8, cfg: CheckConfig) -> Vec<Report> {
    let mut t = Tally::new(format!("{} {}", p.name, p.face_name(lo, i, j)), cfg);
    let li = lo | 1 << i;
    let lj = lo | 1 << j;
    let top = li | lj;
    let data = (|| -> Result<_> {
        Ok((
            p.edge(lo, li)?,
            p.edge(lj, top)?,
            p.edge(lo, lj)?,
            p.edge(li, top)?,
            p.vertex(lo)?,
            p.vertex(li)?,
            p.vertex(lj)?,
            p.vertex(top)?,
        ))
    })();
    let (ei_lo, ei_top, ej_lo, ej_top, vlo, vli, vlj, vtop) = match data {
        Ok(d) => d,
        Err(e) => {
            t.fact("structure", Err(e));
            return t.reports;
        }
    };
    let proj = |e: &EdgeCat, sigma: bool, x: &Point| apply(if sigma { &e.target } else { &e.source }, x);

    t.law("projections-commute", |s| {
        let x = s.point(vtop)?;
        for sg in [false, true] {
            for tu in [false, true] {
                let l = proj(ei_lo, sg, &proj(ej_top, tu, &x)?)?;
                let r = proj(ej_lo, tu, &proj(ei_top, sg, &x)?)?;
                if !same(&l, &r) {
                    return Ok(Some(witness(
                        format!("π^i_{}π^j_{} ≠ π^j_{}π^i_{}", sg as u8, tu as u8, tu as u8, sg as u8),
                        &[("x", &x), ("left", &l), ("right", &r)],
                    )));
                }
            }
        }
        Ok(None)
    });

    t.law("units-commute", |s| {
        let y = s.point(vlo)?;
        let l = apply(&ei_top.unit, &apply(&ej_lo.unit, &y)?)?;
        let r = apply(&ej_top.unit, &apply(&ei_lo.unit, &y)?)?;
        if !same(&l, &r) {
            return Ok(Some(witness("z^i z^j ≠ z^j z^i", &[("y", &y), ("z^i z^j y", &l), ("z^j z^i y", &r)])));
        }
        Ok(None)
    });

    t.law("units-respect-projections", |s| {
        let x = s.point(vli)?;
        for sg in [false, true] {
            let l = proj(ei_top, sg, &apply(&ej_top.unit, &x)?)?;
            let r = apply(&ej_lo.unit, &proj(ei_lo, sg, &x)?)?;
            if !same(&l, &r) {
                return Ok(Some(witness("π^i z^j ≠ z^j π^i", &[("x", &x), ("left", &l), ("right", &r)])));
            }
        }
        let y = s.point(vlj)?;
        for tu in [false, true] {
            let l = proj(ej_top, tu, &apply(&ei_top.unit, &y)?)?;
            let r = apply(&ei_lo.unit, &proj(ej_lo, tu, &y)?)?;
            if !same(&l, &r) {
                return Ok(Some(witness("π^j z^i ≠ z^i π^j", &[("y", &y), ("left", &l), ("right", &r)])));
            }
        }
        Ok(None)
    });

    t.law("projections-respect-composition", |s| {
        let pr = s.tuple(need(&ei_top.pair, "pair")?, 2, vtop)?;
        let ab = apply_tagged(&ei_top.compose, &[&pr[0], &pr[1]])?;
        for tu in [false, true] {
            let l = proj(ej_top, tu, &ab)?;
            let r = apply_tagged(&ei_lo.compose, &[&proj(ej_top, tu, &pr[0])?, &proj(ej_top, tu, &pr[1])?])?;
            if !same(&l, &r) {
                return Ok(Some(witness("π^j(a *_i b) ≠ π^j a *_i π^j b", &[("a", &pr[0]), ("b", &pr[1]), ("left", &l), ("right", &r)])));
            }
        }
        let pr = s.tuple(need(&ej_top.pair, "pair")?, 2, vtop)?;
        let cd = apply_tagged(&ej_top.compose, &[&pr[0], &pr[1]])?;
        for sg in [false, true] {
            let l = proj(ei_top, sg, &cd)?;
            let r = apply_tagged(&ej_lo.compose, &[&proj(ei_top, sg, &pr[0])?, &proj(ei_top, sg, &pr[1])?])?;
            if !same(&l, &r) {
                return Ok(Some(witness("π^i(c *_j d) ≠ π^i c *_j π^i d", &[("c", &pr[0]), ("d", &pr[1]), ("left", &l), ("right", &r)])));
            }
        }
        Ok(None)
    });

    t.law("units-respect-composition", |s| {
        let pr = s.tuple(need(&ei_lo.pair, "pair")?, 2, vli)?;
        let l = apply(&ej_top.unit, &apply_tagged(&ei_lo.compose, &[&pr[0], &pr[1]])?)?;
        let r = apply_tagged(&ei_top.compose, &[&apply(&ej_top.unit, &pr[0])?, &apply(&ej_top.unit, &pr[1])?])?;
        if !same(&l, &r) {
            return Ok(Some(witness("z^j(a *_i b) ≠ z^j a *_i z^j b", &[("a", &pr[0]), ("b", &pr[1]), ("left", &l), ("right", &r)])));
        }
        let pr = s.tuple(need(&ej_lo.pair, "pair")?, 2, vlj)?;
        let l = apply(&ei_top.unit, &apply_tagged(&ej_lo.compose, &[&pr[0], &pr[1]])?)?;
        let r = apply_tagged(&ej_top.compose, &[&apply(&ei_top.unit, &pr[0])?, &apply(&ei_top.unit, &pr[1])?])?;
        if !same(&l, &r) {
            return Ok(Some(witness("z^i(c *_j d) ≠ z^i c *_j z^i d", &[("c", &pr[0]), ("d", &pr[1]), ("left", &l), ("right", &r)])));
        }
        Ok(None)
    });

    let quad = p.faces.get(&(lo, i, j)).and_then(|f| f.quad.clone());
    t.law("interchange", |s| {
        let q = s.tuple(need(&quad, "quadruple")?, 4, vtop)?;
        let (a, b, c, d) = (&q[0], &q[1], &q[2], &q[3]);
        let ok = |e: &EdgeCat, x: &Point, y: &Point| -> Result<bool> { Ok(apply(&e.source, x)? == apply(&e.target, y)?) };
        if !(ok(ei_top, a, b)? && ok(ei_top, c, d)? && ok(ej_top, a, c)? && ok(ej_top, b, d)?) {
            return Ok(Some(witness("sampled quadruple is not compatible", &[("a", a), ("b", b), ("c", c), ("d", d)])));
        }
        let ci = |x: &Point, y: &Point| apply_tagged(&ei_top.compose, &[x, y]);
        let cj = |x: &Point, y: &Point| apply_tagged(&ej_top.compose, &[x, y]);
        let l = cj(&ci(a, b)?, &ci(c, d)?)?;
        let r = ci(&cj(a, c)?, &cj(b, d)?)?;
        if !same(&l, &r) {
            return Ok(Some(witness(
                "(a *_i b) *_j (c *_i d) ≠ (a *_j c) *_i (b *_j d)",
                &[("a", a), ("b", b), ("c", c), ("d", d), ("left", &l), ("right", &r)],
            )));
        }
        Ok(None)
    });
    t.reports
}

/// Every edge and face of a presentation.
pub fn check_presentation(p: &Presentation, cfg: CheckConfig) -> Vec<Report> {
    let mut out = Vec::new();
    for (lo, hi) in p.edges.keys() {
        out.extend(check_edge_category(p, *lo, *hi, cfg));
    }
    for (lo, i, j) in p.faces.keys() {
        out.extend(check_face(p, *lo, *i, *j, cfg));
    }
    out
}

pub type VertexMap<'a> = dyn Fn(u32, &Point) -> Result<Point> + 'a;

/// Checks that vertex maps `f_m : src_m → dst_{perm(m)}` form a morphism; `perm[k]`
/// is the destination position of source direction `k`.
pub fn check_morphism(
    src: &Presentation,
    dst: &Presentation,
    perm: Option<&[usize]>,
    f: &VertexMap,
    cfg: CheckConfig,
) -> Vec<Report> {
    let pm = |m: u32| -> u32 {
        match perm {
            None => m,
            Some(pr) => (0..src.dirs.len()).filter(|k| m >> k & 1 == 1).fold(0, |a, k| a | 1 << pr[k]),
        }
    };
    let mut reports = Vec::new();
    for ((lo, hi), e) in &src.edges {
        let mut t = Tally::new(format!("{} → {} {}", src.name, dst.name, src.edge_name(*lo, *hi)), cfg);
        let data = (|| -> Result<_> { Ok((dst.edge(pm(*lo), pm(*hi))?, src.vertex(*lo)?, src.vertex(*hi)?, dst.vertex(pm(*hi))?)) })();
        let (d, vlo, vhi, dhi) = match data {
            Ok(x) => x,
            Err(err) => {
                t.fact("structure", Err(err));
                reports.extend(t.reports);
                continue;
            }
        };
        t.law("morphism-projections", |s| {
            let a = s.point(vhi)?;
            let fa = f(*hi, &a)?;
            if !dhi.contains(&fa)? {
                return Ok(Some(witness("image leaves the target vertex set", &[("a", &a), ("f(a)", &fa)])));
            }
            for (m, dm) in [(&e.source, &d.source), (&e.target, &d.target)] {
                let l = f(*lo, &apply(m, &a)?)?;
                let r = apply(dm, &fa)?;
                if l != r {
                    return Ok(Some(witness("f∘π ≠ π∘f", &[("a", &a), ("f(π a)", &l), ("π(f a)", &r)])));
                }
            }
            Ok(None)
        });
        t.law("morphism-units", |s| {
            let y = s.point(vlo)?;
            let l = f(*hi, &apply(&e.unit, &y)?)?;
            let r = apply(&d.unit, &f(*lo, &y)?)?;
            if l != r {
                return Ok(Some(witness("f∘z ≠ z∘f", &[("y", &y), ("f(z y)", &l), ("z(f y)", &r)])));
            }
            Ok(None)
        });
        t.law("morphism-composition", |s| {
            let pr = s.tuple(need(&e.pair, "pair")?, 2, vhi)?;
            let l = f(*hi, &apply_tagged(&e.compose, &[&pr[0], &pr[1]])?)?;
            let r = apply_tagged(&d.compose, &[&f(*hi, &pr[0])?, &f(*hi, &pr[1])?])?;
            if l != r {
                return Ok(Some(witness("f(a*b) ≠ f(a)*f(b)", &[("a", &pr[0]), ("b", &pr[1]), ("f(a*b)", &l), ("f(a)*f(b)", &r)])));
            }
            Ok(None)
        });
        reports.extend(t.reports);
    }
    reports
}

/// Vertex maps given by polynomial maps, one per source vertex.
pub fn polymap_vertex_maps(maps: &std::collections::BTreeMap<u32, PolyMap>) -> impl Fn(u32, &Point) -> Result<Point> + '_ {
    move |m, x| {
        let f = maps.get(&m).ok_or_else(|| Error::Domain(format!("no vertex map at mask {m}")))?;
        apply(f, x)
    }
}
