//! `cubical`: derive polynomial maps, print structure tables, run axiom suites
//! and evaluate factorizers exactly.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use cubical::check::{all_pass, check_edge_category, check_presentation, CheckConfig, Report};
use cubical::constructions::closed::GsyScales;
use cubical::constructions::{g_overline, gfull, gsy, natural, pair_groupoid, scaled_action, tangent};
use cubical::laws::{
    check_homogeneity, check_law_compatibility, check_law_morphism, check_terminal_compatibility, derive_law_full,
    derive_law_sym, derive_law_sym_closed, Law,
};
use cubical::nfold::Presentation;
use cubical::parse::parse;
use cubical::poly::{show_comps, Coord, PolyMap};
use cubical::scalars::{fmt_decimal, RingSpec, Scalar, Q};
use cubical::slope::{full_slope, sym_dom, sym_slope_closed, sym_slope_iterated};
use cubical::table::{edge_table, vertex_table, Projection};
use cubical::{Error, Result};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Slope,
    Derive,
    Table,
    Check,
    Eval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    Pg,
    Sa,
    Gsy,
    Gfull,
    Scaleoid,
    Tangent,
    Goverline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Vertex,
    Target,
    Source,
}

#[derive(Parser, Debug)]
#[command(name = "cubical", version, about = "Exact cubic difference calculus")]
struct Opts {
    verb: Verb,
    /// Map definition, e.g. "f(x,y) = (x*y, x^2)".
    #[arg(long)]
    expr: Option<String>,
    /// File holding the map definition; `-` reads stdin.
    #[arg(long)]
    file: Option<String>,
    #[arg(long)]
    n: Option<u8>,
    /// Ordered index set, e.g. "2,1".
    #[arg(long = "N")]
    big_n: Option<String>,
    /// Vertex as a comma list of elements; empty for ∅.
    #[arg(long)]
    alpha: Option<String>,
    /// Edge as "beta>alpha", e.g. "2>1,2" or ">1".
    #[arg(long)]
    edge: Option<String>,
    /// Scales, e.g. "1,1/2,0".
    #[arg(long)]
    t: Option<String>,
    /// Scalars of the scalar action, for homogeneity checks.
    #[arg(long)]
    s: Option<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// rational or mod:m
    #[arg(long, default_value = "rational")]
    ring: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum)]
    construction: Option<Construction>,
    #[arg(long, value_enum, default_value_t = What::Vertex)]
    what: What,
    /// Dimension of the model space of U.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Point for `eval`, e.g. "v0=1,v1=2,t1=1"; missing coordinates are 0.
    #[arg(long)]
    at: Option<String>,
    /// Symmetric calculus: frozen scales.
    #[arg(long)]
    sym: bool,
    /// Evaluate through the closed difference formula (unit scales only).
    #[arg(long)]
    closed: bool,
    /// Also render rational results as decimals with this many digits.
    #[arg(long)]
    digits: Option<usize>,
}

/// Outcome of a verb: output text and whether every check passed.
struct Out {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let opts = match Opts::try_parse() {
        Ok(o) => o,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&opts) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn run(o: &Opts) -> Result<Out> {
    let ring = parse_ring(&o.ring)?;
    if ring != RingSpec::Rational && o.verb != Verb::Eval {
        return Err(usage("--ring is only used by eval"));
    }
    match o.verb {
        Verb::Slope => slope_cmd(o),
        Verb::Derive => derive_cmd(o),
        Verb::Table => table_cmd(o),
        Verb::Check => check_cmd(o),
        Verb::Eval => eval_cmd(o, ring),
    }
}

fn parse_ring(s: &str) -> Result<RingSpec> {
    if s == "rational" {
        return Ok(RingSpec::Rational);
    }
    match s.strip_prefix("mod:").map(str::parse::<u64>) {
        Some(Ok(m)) => RingSpec::modular(m),
        _ => Err(usage(format!("unknown ring `{s}`; use rational or mod:m"))),
    }
}

fn source(o: &Opts) -> Result<String> {
    match (&o.expr, &o.file) {
        (Some(e), None) => Ok(e.clone()),
        (None, Some(f)) => {
            let mut s = String::new();
            if f == "-" {
                std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
            } else {
                s = std::fs::read_to_string(f).map_err(|e| usage(format!("{f}: {e}")))?;
            }
            Ok(s)
        }
        (Some(_), Some(_)) => Err(usage("give either --expr or --file")),
        (None, None) => Err(usage("a map is required: --expr or --file")),
    }
}

fn map(o: &Opts) -> Result<PolyMap> {
    parse(&source(o)?)
}

fn list<T>(s: &str, what: &str, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() || s == "∅" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| f(x.trim()).ok_or_else(|| usage(format!("bad {what} `{}`", x.trim()))))
        .collect()
}

fn elems(s: &str) -> Result<Vec<u8>> {
    list(s, "index", |x| x.parse::<u8>().ok().filter(|e| (1..=16).contains(e)))
}

fn rationals(s: &str) -> Result<Vec<Q>> {
    list(s, "scalar", |x| x.parse::<Q>().ok())
}

fn order(o: &Opts, default_n: u8) -> Result<Vec<u8>> {
    match (&o.big_n, o.n) {
        (Some(s), _) => {
            let v = elems(s)?;
            if v.is_empty() {
                return Err(usage("--N must not be empty"));
            }
            Ok(v)
        }
        (None, Some(n)) => Ok(natural(n)),
        (None, None) => Ok(natural(default_n)),
    }
}

fn scales(o: &Opts) -> Result<Option<Vec<Q>>> {
    o.t.as_deref().map(rationals).transpose()
}

fn names(labels: &[Coord]) -> Vec<String> {
    let sc = show_comps(labels);
    labels.iter().map(|c| c.name(sc)).collect()
}

fn json(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn map_json(m: &PolyMap) -> serde_json::Value {
    serde_json::json!({ "dom": names(&m.dom), "cod": names(&m.cod), "comps": m.render_comps() })
}

fn slope_cmd(o: &Opts) -> Result<Out> {
    let f = map(o)?;
    let n = o.n.unwrap_or(1);
    let g = if o.sym { sym_slope_iterated(&f, n)? } else { full_slope(&f, n)? };
    let text = match o.format {
        Format::Text => format!("f^[{n}]({}) = {}\n", names(&g.dom).join(", "), g),
        Format::Json => json(map_json(&g)),
    };
    Ok(Out { text, ok: true })
}

/// The position mask of a vertex given by its elements.
fn vertex_mask(dirs: &[u8], alpha: &[u8]) -> Result<u32> {
    let mut m = 0;
    for e in alpha {
        let k = dirs.iter().position(|d| d == e).ok_or_else(|| usage(format!("{e} is not in N")))?;
        m |= 1 << k;
    }
    Ok(m)
}

fn build_law(o: &Opts, f: &PolyMap) -> Result<Law> {
    if let Some(t) = scales(o)? {
        if t.is_empty() {
            return Err(usage("--t needs at least one scale"));
        }
        return derive_law_sym(f, &t);
    }
    if o.sym {
        return derive_law_sym_closed(f, &GsyScales::Symbolic(o.n.unwrap_or(1)));
    }
    derive_law_full(f, &order(o, 1)?)
}

fn derive_cmd(o: &Opts) -> Result<Out> {
    let f = map(o)?;
    let law = build_law(o, &f)?;
    let top = (1u32 << law.dirs.len()) - 1;
    let m = match &o.alpha {
        Some(a) => vertex_mask(&law.dirs, &elems(a)?)?,
        None => top,
    };
    let g = &law.vertex_maps[&m];
    let text = match o.format {
        Format::Text => format!("{g}\n"),
        Format::Json => {
            let mut v = map_json(g);
            v["law"] = law.name.clone().into();
            v["directions"] = serde_json::json!(law.dirs);
            v["vertex_mask"] = m.into();
            json(v)
        }
    };
    Ok(Out { text, ok: true })
}

/// The presentation named by `--construction`, and the index order and model
/// dimension when it is a full cubic groupoid.
fn build(o: &Opts) -> Result<(Presentation, Option<(Vec<u8>, usize)>)> {
    let c = o.construction.unwrap_or(Construction::Gfull);
    let n = || o.n.ok_or_else(|| usage("--n is required for this construction"));
    Ok(match c {
        Construction::Pg => (pair_groupoid(n()?, o.dim)?, None),
        Construction::Sa => (scaled_action(n()?, o.dim, false)?, None),
        Construction::Gsy => {
            let t = scales(o)?.ok_or_else(|| usage("gsy needs --t"))?;
            if let Some(k) = o.n {
                if k as usize != t.len() {
                    return Err(usage(format!("--n {k} does not match {} scales", t.len())));
                }
            }
            (gsy(&t, o.dim, None)?, None)
        }
        Construction::Gfull => {
            let ord = order(o, 2)?;
            (gfull(&ord, o.dim, None)?, Some((ord, o.dim)))
        }
        Construction::Scaleoid => {
            let ord = order(o, 2)?;
            (gfull(&ord, 0, None)?, Some((ord, 0)))
        }
        Construction::Tangent => (tangent(n()?, o.dim)?, None),
        Construction::Goverline => (g_overline(n()?, o.dim, None)?, None),
    })
}

/// `"beta>alpha"` as position masks of `p`.
fn edge_masks(p: &Presentation, s: &str) -> Result<(u32, u32)> {
    let (b, a) = s.split_once('>').ok_or_else(|| usage("--edge must look like beta>alpha"))?;
    let dirs: Vec<u8> = p.dirs.iter().map(|d| d.elem).collect();
    if p.dirs.iter().any(|d| d.primed) {
        return Err(usage("--edge is not available for two-typed constructions"));
    }
    let lo = vertex_mask(&dirs, &elems(b)?)?;
    let hi = vertex_mask(&dirs, &elems(a)?)?;
    if !p.edges.contains_key(&(lo, hi)) {
        return Err(usage(format!("({b},{a}) is not an edge")));
    }
    Ok((lo, hi))
}

fn table_cmd(o: &Opts) -> Result<Out> {
    let (p, stair) = build(o)?;
    let text = match o.what {
        What::Vertex => {
            let mut t = vertex_table(&p, stair.as_ref().map(|(e, d)| (e.as_slice(), *d)))?;
            if let Some(a) = &o.alpha {
                let dirs: Vec<u8> = p.dirs.iter().map(|d| d.elem).collect();
                let name = p.mask_name(vertex_mask(&dirs, &elems(a)?)?);
                t.rows.retain(|r| r.alpha == name);
            }
            match o.format {
                Format::Text => t.text(),
                Format::Json => t.json() + "\n",
            }
        }
        What::Target | What::Source => {
            let which = if o.what == What::Target { Projection::Target } else { Projection::Source };
            let mut t = edge_table(&p, which);
            if let Some(e) = &o.edge {
                let (lo, hi) = edge_masks(&p, e)?;
                let name = p.edge_name(lo, hi);
                t.rows.retain(|r| r.edge == name);
            }
            match o.format {
                Format::Text => t.text(),
                Format::Json => t.json() + "\n",
            }
        }
    };
    Ok(Out { text, ok: true })
}

fn fact(law: &str, location: &str, outcome: Result<Option<String>>) -> Report {
    let mut t = cubical::check::Tally::new(location, CheckConfig { samples: 1, seed: 0 });
    t.fact(law, outcome.map(|o| o.map(|d| cubical::check::witness(d, &[]))));
    t.reports.remove(0)
}

fn check_cmd(o: &Opts) -> Result<Out> {
    let cfg = CheckConfig { samples: o.samples, seed: o.seed };
    let mut reports = Vec::new();
    if o.expr.is_some() || o.file.is_some() {
        let f = map(o)?;
        let c = o.construction.unwrap_or(Construction::Gfull);
        let (src, dst, law) = match c {
            Construction::Gfull => {
                let ord = order(o, 2)?;
                (gfull(&ord, f.in_arity(), None)?, gfull(&ord, f.out_arity(), None)?, derive_law_full(&f, &ord)?)
            }
            Construction::Gsy => {
                let t = scales(o)?.ok_or_else(|| usage("gsy needs --t"))?;
                (gsy(&t, f.in_arity(), None)?, gsy(&t, f.out_arity(), None)?, derive_law_sym(&f, &t)?)
            }
            _ => return Err(usage("laws are checked over gfull or gsy")),
        };
        reports.extend(check_law_compatibility(&law, &src, &dst));
        reports.extend(check_law_morphism(&law, &src, &dst, cfg));
        reports.push(fact("terminal-map", &law.name, check_terminal_compatibility(&law, &src, &dst)));
        if c == Construction::Gsy || o.s.is_some() {
            let n = law.dirs.len() as u8;
            let sym = derive_law_sym_closed(&f, &GsyScales::Symbolic(n))?;
            let s = o.s.as_deref().map(rationals).transpose()?;
            reports.push(fact("homogeneity", &sym.name, check_homogeneity(&sym, s.as_deref())));
        }
    } else {
        let (p, _) = build(o)?;
        match &o.edge {
            Some(e) => {
                let (lo, hi) = edge_masks(&p, e)?;
                reports.extend(check_edge_category(&p, lo, hi, cfg));
            }
            None => reports.extend(check_presentation(&p, cfg)),
        }
    }
    let ok = all_pass(&reports);
    let text = match o.format {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| r.line() + "\n").collect();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            s.push_str(&format!("{} laws checked, {} failed\n", reports.len(), failed));
            s
        }
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
    };
    Ok(Out { text, ok })
}

/// `name=value` assignments over the given labels.
fn assignments(s: Option<&str>, labels: &[Coord]) -> Result<Vec<Q>> {
    let ns = names(labels);
    let mut vals = vec![Q::zero(); labels.len()];
    if let Some(s) = s {
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| usage(format!("bad assignment `{part}`")))?;
            let i = ns
                .iter()
                .position(|n| n == k.trim())
                .ok_or_else(|| usage(format!("unknown coordinate `{}`; expected one of {}", k.trim(), ns.join(", "))))?;
            vals[i] = v.trim().parse::<Q>().map_err(|_| usage(format!("bad value `{}`", v.trim())))?;
        }
    }
    Ok(vals)
}

fn render(x: &Scalar, digits: Option<usize>) -> String {
    match (x.as_rational(), digits) {
        (Some(q), Some(d)) => format!("{x} ≈ {}", fmt_decimal(q, d)),
        _ => x.to_string(),
    }
}

fn eval_cmd(o: &Opts, ring: RingSpec) -> Result<Out> {
    let f = map(o)?;
    let lift = |v: &[Q]| -> Result<Vec<Scalar>> { v.iter().map(|x| ring.from_rational(x)).collect() };
    let (labels, vals) = if o.closed {
        let t = scales(o)?.ok_or_else(|| usage("--closed needs --t"))?;
        let n = t.len() as u8;
        let dom: Vec<Coord> = sym_dom(&f, n).into_iter().filter(|c| c.kind == cubical::poly::Kind::V).collect();
        let x = lift(&assignments(o.at.as_deref(), &dom)?)?;
        let ts = lift(&t)?;
        let d = f.in_arity();
        let v: Vec<Vec<Scalar>> = x.chunks(d.max(1)).map(|c| c.to_vec()).collect();
        let v = if d == 0 { vec![Vec::new(); 1 << n] } else { v };
        (f.cod.clone(), sym_slope_closed(&f, &ts, &v)?)
    } else {
        let n = o.n.unwrap_or(1);
        let g = match (n, o.sym) {
            (0, _) => f.clone(),
            (_, true) => sym_slope_iterated(&f, n)?,
            (_, false) => full_slope(&f, n)?,
        };
        let x = lift(&assignments(o.at.as_deref(), &g.dom)?)?;
        let like = ring.zero();
        (g.cod.clone(), g.eval(&x, &like)?)
    };
    let text = match o.format {
        Format::Text => {
            let parts: Vec<String> = vals.iter().map(|x| render(x, o.digits)).collect();
            if parts.len() == 1 {
                format!("{}\n", parts[0])
            } else {
                format!("({})\n", parts.join(", "))
            }
        }
        Format::Json => json(serde_json::json!({
            "ring": ring.to_string(),
            "outputs": names(&labels),
            "values": vals.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })),
    };
    Ok(Out { text, ok: true })
}
