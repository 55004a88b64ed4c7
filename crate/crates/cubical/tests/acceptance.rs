//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use cubical::check::{check_edge_category, check_face, check_morphism, check_presentation, CheckConfig, Report, Status};
use cubical::constructions::closed::GsyScales;
use cubical::constructions::finite::{check_mutually_inverse, gsy_finite_part, gsy_trivialization, gsy_trivialization_inverse};
use cubical::constructions::pullback::Pullback;
use cubical::constructions::{
    g_overline, gfull, gsy, imbedding_discrepancies, natural, pair_groupoid, scaled_action, scaleoid,
};
use cubical::gen::random_map;
use cubical::hypercube::{count_kcubes, kcubes};
use cubical::laws::{
    check_full_law_on_sym_locus, check_full_relabelling, check_homogeneity, check_law_compatibility,
    check_law_morphism, check_symmetry, compare_laws, derive_law_full, derive_law_sym, derive_law_sym_closed,
    derived_product, finite_law_from_map, permute_label, check_extension_model,
};
use cubical::mutate::{corrupt_edge, corrupt_law, Part};
use cubical::nfold::{Point, Presentation, Sampler};
use cubical::poly::{Coord, Env, Kind, Poly};
use cubical::scalars::{q, qf, ExtElement, Scalar, Q};
use cubical::slope::{sym_slope_closed, sym_slope_iterated};

use common::oracle::mixed_partial;

type Verdict = Result<String, String>;

fn permutations(n: u8) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut r = p.clone();
            r.insert(k, n);
            out.push(r);
        }
    }
    out
}

fn first_failure(reports: &[Report]) -> Option<String> {
    reports.iter().find(|r| !r.passed()).map(|r| r.line())
}

fn c1_closed_vs_iterated() -> Verdict {
    let start = Instant::now();
    let mut s = Sampler::new(101);
    let mut evals = 0;
    for k in 0..50 {
        let nin = 1 + k % 3;
        let nout = 1 + k % 2;
        let f = random_map(&mut s, nin, nout, 3);
        for n in 1..=3u8 {
            let it = sym_slope_iterated(&f, n).map_err(|e| e.to_string())?;
            for _ in 0..100 {
                let t: Vec<Q> = (0..n).map(|_| s.unit()).collect();
                let v: Vec<Vec<Q>> = (0..1usize << n).map(|_| s.values(nin)).collect();
                let ts: Vec<Scalar> = t.iter().cloned().map(Scalar::Rat).collect();
                let vs: Vec<Vec<Scalar>> = v.iter().map(|x| x.iter().cloned().map(Scalar::Rat).collect()).collect();
                let closed = sym_slope_closed(&f, &ts, &vs).map_err(|e| e.to_string())?;
                let mut point: Vec<Q> = v.concat();
                point.extend(t.iter().cloned());
                let direct = it.eval_q(&point);
                let closed: Vec<Q> = closed.iter().map(|x| x.as_rational().unwrap().clone()).collect();
                if closed != direct {
                    return Err(format!("map {f}, n={n}, t={t:?}: closed {closed:?} vs iterated {direct:?}"));
                }
                evals += 1;
            }
        }
    }
    let el = start.elapsed();
    if el > Duration::from_secs(30) {
        return Err(format!("took {:.1}s (limit 30s)", el.as_secs_f64()));
    }
    Ok(format!("{evals} exact comparisons in {:.1}s", el.as_secs_f64()))
}

fn c2_goldens() -> Verdict {
    let mut out = common::vertex_outcomes();
    out.extend(common::edge_outcomes());
    for o in &out {
        if o.deviation.is_some() {
            println!("    {}", o.line());
        }
    }
    if let Some(o) = out.iter().find(|o| !o.ok) {
        return Err(o.line());
    }
    let flagged = out.iter().filter(|o| o.deviation.is_some()).count();
    Ok(format!("{} rows match, {flagged} flagged against ledger entries", out.len()))
}

fn c3_degree() -> Verdict {
    let d = common::degree_of_copy_of_copy();
    if d == 5 {
        Ok("target of ({2,3},{1,2,3}) has total degree 5".into())
    } else {
        Err(format!("total degree {d}"))
    }
}

fn c4_axioms() -> Verdict {
    let start = Instant::now();
    let cfg = CheckConfig { samples: 100, seed: 7 };
    let mut ps: Vec<Presentation> = Vec::new();
    let build = |r: cubical::Result<Presentation>| r.map_err(|e| e.to_string());
    for n in 1..=3u8 {
        ps.push(build(pair_groupoid(n, 1))?);
        ps.push(build(scaled_action(n, 1, false))?);
        ps.push(build(gsy(&vec![q(1); n as usize], 1, None))?);
        ps.push(build(gsy(&vec![qf(-2, 3); n as usize], 1, None))?);
        ps.push(build(gsy(&vec![q(0); n as usize], 1, None))?);
        let mixed: Vec<Q> = (0..n).map(|k| if k % 2 == 0 { q(0) } else { q(3) }).collect();
        ps.push(build(gsy(&mixed, 1, None))?);
        ps.push(build(gfull(&natural(n), 1, None))?);
        ps.push(build(scaleoid(n))?);
    }
    for n in 1..=2u8 {
        ps.push(build(g_overline(n, 1, None))?);
    }
    let mut total = 0;
    for p in &ps {
        let r = check_presentation(p, cfg);
        if let Some(l) = first_failure(&r) {
            return Err(l);
        }
        if r.iter().any(|x| x.samples != 0 && x.samples < 100) {
            return Err(format!("{}: fewer than 100 samples on some law", p.name));
        }
        total += r.len();
    }
    let el = start.elapsed();
    if el > Duration::from_secs(300) {
        return Err(format!("took {:.1}s (limit 300s)", el.as_secs_f64()));
    }
    Ok(format!("{} presentations, {total} laws × 100 samples in {:.1}s", ps.len(), el.as_secs_f64()))
}

fn flip_point(x: &Point) -> Point {
    x.iter().map(|(c, v)| (permute_label(*c, &[2, 1]), v.clone())).collect()
}

fn c5_schwarz() -> Verdict {
    let cfg = CheckConfig { samples: 100, seed: 11 };
    for (t1, t2) in [(q(1), q(2)), (q(0), qf(1, 2)), (q(0), q(0)), (q(-3), q(0))] {
        let a = gsy(&[t1.clone(), t2.clone()], 1, None).map_err(|e| e.to_string())?;
        let b = gsy(&[t2.clone(), t1.clone()], 1, None).map_err(|e| e.to_string())?;
        let flip = |_m: u32, x: &Point| Ok(flip_point(x));
        if let Some(l) = first_failure(&check_morphism(&a, &b, Some(&[1, 0]), &flip, cfg)) {
            return Err(l);
        }
        if let Some(l) = first_failure(&check_morphism(&b, &a, Some(&[1, 0]), &flip, cfg)) {
            return Err(l);
        }
    }
    let mut s = Sampler::new(55);
    let mut count = 0;
    for k in 0..20 {
        let f = random_map(&mut s, 1 + k % 3, 1 + k % 2, 3);
        for n in 2..=3u8 {
            let law = derive_law_sym(&f, &vec![q(0); n as usize]).map_err(|e| e.to_string())?;
            for sigma in permutations(n) {
                if let Some(d) = check_symmetry(&law, &sigma).map_err(|e| e.to_string())? {
                    return Err(format!("t = 0 factorizer not symmetric under {sigma:?}: {d}"));
                }
            }
            let top = &law.vertex_maps[&((1 << n) - 1)];
            let env = Env::new(&top.dom);
            let zeroed =
                top.substitute_dom(&top.dom, &|c: &Coord| if c.set.count_ones() > 1 { Poly::zero() } else { env.get(c) });
            let outs: Vec<Coord> = top.cod.iter().copied().filter(|c| c.set == (1 << n) - 1).collect();
            let got = zeroed.pick(&outs).map_err(|e| e.to_string())?;
            if let Some(d) = got.diff_against(&mixed_partial(&f, n)) {
                return Err(format!("map {f}, n={n}: factorizer at t = 0 vs mixed partial: {d}"));
            }
            count += 1;
        }
    }
    Ok(format!("flip is an isomorphism for 4 scale pairs; {count} factorizers at t = 0 symmetric and equal to the mixed partial"))
}

fn c6_extension() -> Verdict {
    let mut s = Sampler::new(66);
    for k in 0..20 {
        let f = random_map(&mut s, 1 + k % 2, 1 + k % 2, 3);
        let n = 1 + (k % 3) as u8;
        if let Some(d) = check_extension_model(&f, &GsyScales::Symbolic(n)).map_err(|e| e.to_string())? {
            return Err(format!("map {f}: {d}"));
        }
        let t: Vec<Q> = (0..n).map(|_| s.scalar()).collect();
        if let Some(d) = check_extension_model(&f, &GsyScales::Const(t.clone())).map_err(|e| e.to_string())? {
            return Err(format!("map {f}, t={t:?}: {d}"));
        }
        let rule = derive_law_sym(&f, &t).map_err(|e| e.to_string())?;
        let closed = derive_law_sym_closed(&f, &GsyScales::Const(t.clone())).map_err(|e| e.to_string())?;
        if let Some(d) = compare_laws(&rule, &closed) {
            return Err(format!("map {f}, t={t:?}: rule vs closed: {d}"));
        }
    }
    for t in [vec![q(2)], vec![q(0), q(3)], vec![q(1), qf(-1, 2), q(0)]] {
        let n = t.len();
        let prod = derived_product(&t).map_err(|e| e.to_string())?;
        let env = Env::new(&prod.dom);
        let tp: Vec<Poly> = t.iter().map(|x| Poly::constant(x.clone())).collect();
        let alpha: Vec<u8> = (1..=n as u8).collect();
        let elem = |k: u16| {
            ExtElement::new(alpha.clone(), tp.clone(), (0..1u32 << n).map(|m| env.get(&Coord::vc(m, k))).collect())
        };
        let (a, b) = (elem(0).map_err(|e| e.to_string())?, elem(1).map_err(|e| e.to_string())?);
        let ab = a.ext_mul(&b).map_err(|e| e.to_string())?;
        for (m, c) in ab.coeffs.iter().enumerate() {
            if prod.comp(&Coord::vc(m as u32, 0)) != Some(c) {
                return Err(format!("t={t:?}: product coefficient {m} differs from ext_mul"));
            }
        }
        let r = cubical::laws::ring_goid_structure(&t, CheckConfig { samples: 50, seed: 3 }).map_err(|e| e.to_string())?;
        if let Some(l) = first_failure(&r) {
            return Err(l);
        }
    }
    Ok("20 random maps agree with the extension model; derived product equals ext_mul for 3 scale vectors".into())
}

fn c7_imbedding() -> Verdict {
    for (n, vdim) in [(1u8, 1usize), (2, 1), (3, 1), (2, 2)] {
        let d = imbedding_discrepancies(n, vdim).map_err(|e| e.to_string())?;
        if !d.is_empty() {
            return Err(format!("n={n}: {}", d.join("; ")));
        }
    }
    Ok("every structure map of G^n U restricted to t_γ = 0 (|γ| > 1) equals Gsy^n, n ≤ 3".into())
}

fn c8_pullback() -> Verdict {
    let mut s = Sampler::new(88);
    let cfg = CheckConfig { samples: 100, seed: 8 };
    let mut zero_c = 0;
    for k in 0..10 {
        let (na, nz) = (1 + k % 2, 1 + (k / 2) % 2);
        let nc = if k < 3 { 0 } else { 1 + k % 2 };
        let f = random_map(&mut s, na, nc, 3);
        let h = random_map(&mut s, nz, nc, 2);
        let h = h.relabel_dom(&|c| Coord::new(Kind::X, 0, c.comp));
        let pb = Pullback::new(f, h).map_err(|e| e.to_string())?;
        let r = pb.check(cfg);
        if let Some(l) = first_failure(&r) {
            return Err(l);
        }
        if r.iter().any(|x| x.law == "equality-when-c-is-zero") {
            zero_c += 1;
        }
    }
    Ok(format!("10 random pairs: Q ⊆ P^<1> and closure of Q on 100 samples; equality for {zero_c} pairs with C = 0"))
}

fn c9_finite() -> Verdict {
    let cfg = CheckConfig { samples: 100, seed: 9 };
    for t in [vec![q(1)], vec![q(2), qf(-1, 3)], vec![q(1), q(-1), qf(3, 2)]] {
        let n = t.len() as u8;
        let tri = gsy_trivialization(&t, 1);
        let inv = gsy_trivialization_inverse(&t, 1).map_err(|e| e.to_string())?;
        if let Some(d) = check_mutually_inverse(&tri, &inv).map_err(|e| e.to_string())? {
            return Err(d);
        }
        let fp = gsy_finite_part(&t, 1).map_err(|e| e.to_string())?;
        let pg = pair_groupoid(n, 1).map_err(|e| e.to_string())?;
        let f = cubical::check::polymap_vertex_maps(&tri);
        if let Some(l) = first_failure(&check_morphism(&fp, &pg, None, &f, cfg)) {
            return Err(l);
        }
        let g = cubical::check::polymap_vertex_maps(&inv);
        if let Some(l) = first_failure(&check_morphism(&pg, &fp, None, &g, cfg)) {
            return Err(l);
        }
        let rational = |x: &[Q]| -> cubical::Result<Vec<Q>> {
            let d = &x[0] * &x[0] + &x[1] * &x[1] + q(1);
            Ok(vec![&x[0] / &d, q(1) / d])
        };
        let r = finite_law_from_map(&rational, 2, 2, &t, cfg).map_err(|e| e.to_string())?;
        if let Some(l) = first_failure(&r) {
            return Err(l);
        }
    }
    Ok("trivialization and its inverse are morphisms for n ≤ 3; the law of (x,y) ↦ (x, 1)/(1+x²+y²) passes".into())
}

fn c10_homogeneity_symmetry() -> Verdict {
    let mut s = Sampler::new(1010);
    for k in 0..20 {
        let f = random_map(&mut s, 1 + k % 2, 1 + (k / 2) % 2, 3);
        let n = 1 + (k % 3) as u8;
        let sym = derive_law_sym_closed(&f, &GsyScales::Symbolic(n)).map_err(|e| e.to_string())?;
        let unit: Vec<Q> = (0..n).map(|_| s.unit()).collect();
        let mut nonunit = unit.clone();
        nonunit[0] = q(0);
        for sv in [None, Some(unit.as_slice()), Some(nonunit.as_slice())] {
            if let Some(d) = check_homogeneity(&sym, sv).map_err(|e| e.to_string())? {
                return Err(format!("map {f}, s={sv:?}: {d}"));
            }
        }
        for sigma in permutations(n) {
            if let Some(d) = check_symmetry(&sym, &sigma).map_err(|e| e.to_string())? {
                return Err(format!("map {f}, σ={sigma:?}: {d}"));
            }
            if let Some(d) = check_full_relabelling(&f, n, &sigma).map_err(|e| e.to_string())? {
                return Err(format!("full law of {f}, σ={sigma:?}: {d}"));
            }
        }
        if let Some(d) = check_full_law_on_sym_locus(&f, n).map_err(|e| e.to_string())? {
            return Err(format!("full law of {f} on the symmetric locus: {d}"));
        }
    }
    Ok("20 random laws: Φ_s-equivariant (symbolic, unit and non-unit s) and S_n-equivariant".into())
}

fn c11_hypercube() -> Verdict {
    let counts: Vec<u64> = (0..=3).map(|k| count_kcubes(4, k).unwrap()).collect();
    if counts != vec![16, 32, 24, 8] {
        return Err(format!("tesseract counts {counts:?}"));
    }
    for n in 0..=6u8 {
        for k in 0..=n {
            let e = kcubes(n, k).len() as u64;
            if e != count_kcubes(n, k).unwrap() {
                return Err(format!("n={n}, k={k}: formula {} vs enumeration {e}", count_kcubes(n, k).unwrap()));
            }
        }
    }
    Ok("tesseract (16, 32, 24, 8); formula equals enumeration for n ≤ 6".into())
}

fn detected(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail && r.witness.as_ref().is_some_and(|w| !w.detail.is_empty()))
}

fn sampled_witness(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail && r.witness.as_ref().is_some_and(|w| !w.points.is_empty()))
}

fn c12_mutations() -> Verdict {
    let cfg = CheckConfig { samples: 100, seed: 12 };
    let ps = vec![
        pair_groupoid(2, 1),
        scaled_action(2, 1, false),
        gsy(&[q(1), q(2)], 1, None),
        gsy(&[q(0), q(0)], 1, None),
        gfull(&[1, 2], 1, None),
        scaleoid(2),
    ];
    let mut n = 0;
    for p in ps {
        let p = p.map_err(|e| e.to_string())?;
        let edges: Vec<(u32, u32)> = p.edges.keys().copied().collect();
        for (lo, hi) in edges {
            for part in [Part::Source, Part::Target, Part::Unit, Part::Compose] {
                let e = &p.edges[&(lo, hi)];
                let comps = match part {
                    Part::Source => e.source.comps.len(),
                    Part::Target => e.target.comps.len(),
                    Part::Unit => e.unit.comps.len(),
                    Part::Compose => e.compose.comps.len(),
                };
                for comp in 0..comps {
                    let bad = corrupt_edge(&p, lo, hi, part, comp).map_err(|e| e.to_string())?;
                    let r = check_edge_category(&bad, lo, hi, cfg);
                    if !sampled_witness(&r) {
                        return Err(format!("{} {}: planted term in {part:?} component {comp} not detected", p.name, p.edge_name(lo, hi)));
                    }
                    n += 1;
                }
            }
        }
        for (lo, i, j) in p.faces.keys().copied().collect::<Vec<_>>() {
            let hi = lo | 1 << i | 1 << j;
            let bad = corrupt_edge(&p, hi & !(1 << i), hi, Part::Compose, 0).map_err(|e| e.to_string())?;
            if !sampled_witness(&check_face(&bad, lo, i, j, cfg)) {
                return Err(format!("{}: face checker misses a corrupted composition", p.name));
            }
            n += 1;
        }
    }
    let f = cubical::parse::parse("f(x,y) = (x*y, x^2 - y)").map_err(|e| e.to_string())?;
    let src = gfull(&[1, 2], 2, None).map_err(|e| e.to_string())?;
    let law = derive_law_full(&f, &[1, 2]).map_err(|e| e.to_string())?;
    let bad = corrupt_law(&law, 3, 2).map_err(|e| e.to_string())?;
    if !sampled_witness(&check_law_morphism(&bad, &src, &src, cfg)) || !detected(&check_law_compatibility(&bad, &src, &src)) {
        return Err("corrupted law passes the morphism checks".into());
    }
    let sym = derive_law_sym_closed(&f, &GsyScales::Symbolic(2)).map_err(|e| e.to_string())?;
    let bad = corrupt_law(&sym, 3, 3).map_err(|e| e.to_string())?;
    if check_homogeneity(&bad, None).map_err(|e| e.to_string())?.is_none() {
        return Err("corrupted symmetric law passes the homogeneity check".into());
    }
    if check_symmetry(&bad, &[2, 1]).map_err(|e| e.to_string())?.is_none() {
        return Err("corrupted symmetric law passes the symmetry check".into());
    }
    Ok(format!("{n} planted corruptions caught with witnesses; law, homogeneity and symmetry mutants caught"))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("closed formula equals iterated slopes", c1_closed_vs_iterated),
        ("coordinate tables match the printed rows", c2_goldens),
        ("copy of the copy has degree 5", c3_degree),
        ("axiom suites pass", c4_axioms),
        ("Schwarz: flip isomorphism and mixed partials", c5_schwarz),
        ("scalar-extension model", c6_extension),
        ("imbedding of Gsy^n into G^n", c7_imbedding),
        ("pullback inclusion", c8_pullback),
        ("finite part", c9_finite),
        ("homogeneity and symmetry of laws", c10_homogeneity_symmetry),
        ("hypercube counts", c11_hypercube),
        ("mutation sensitivity", c12_mutations),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let secs = start.elapsed().as_secs_f64();
        match v {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{secs:.1}s]", k + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name}: {msg} [{secs:.1}s]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
