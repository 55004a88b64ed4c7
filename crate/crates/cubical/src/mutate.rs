//! Planted single-term corruptions, used to confirm that the checkers fail
//! with a witness.

use crate::error::{Error, Result};
use crate::laws::Law;
use crate::nfold::Presentation;
use crate::poly::{Poly, PolyMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Source,
    Target,
    Unit,
    Compose,
}

/// Adds the square of the first domain variable to output `comp`.
pub fn plant_term(m: &PolyMap, comp: usize) -> Result<PolyMap> {
    if m.dom.is_empty() || comp >= m.comps.len() {
        return Err(Error::Shape("nothing to corrupt".into()));
    }
    let mut out = m.clone();
    out.comps[comp] = out.comps[comp].add(&Poly::var(0).pow(2));
    Ok(out)
}

/// A copy of `p` with one structure map of the edge `(lo, hi)` corrupted.
pub fn corrupt_edge(p: &Presentation, lo: u32, hi: u32, part: Part, comp: usize) -> Result<Presentation> {
    let mut q = p.clone();
    let e = q.edges.get_mut(&(lo, hi)).ok_or_else(|| Error::Domain("no such edge".into()))?;
    let m = match part {
        Part::Source => &mut e.source,
        Part::Target => &mut e.target,
        Part::Unit => &mut e.unit,
        Part::Compose => &mut e.compose,
    };
    *m = plant_term(m, comp)?;
    q.name = format!("{} (corrupted {part:?})", p.name);
    Ok(q)
}

/// A copy of `law` with one vertex map corrupted.
pub fn corrupt_law(law: &Law, mask: u32, comp: usize) -> Result<Law> {
    let mut l = law.clone();
    let m = l.vertex_maps.get_mut(&mask).ok_or_else(|| Error::Domain("no such vertex".into()))?;
    *m = plant_term(m, comp)?;
    l.name = format!("{} (corrupted)", law.name);
    Ok(l)
}
