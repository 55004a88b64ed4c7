//! Plain-text and JSON tables of vertex sets and edge projections.

use serde::Serialize;

use crate::constructions::stair::stair_schema;
use crate::error::Result;
use crate::hypercube::IndexSet;
use crate::nfold::Presentation;
use crate::poly::{show_comps, Coord, PolyMap};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexRow {
    pub alpha: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_set: Option<String>,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeRow {
    pub edge: String,
    pub dom: Vec<String>,
    pub map: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Source,
    Target,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table<R> {
    pub construction: String,
    pub what: String,
    pub rows: Vec<R>,
}

fn sorted(labels: &[Coord]) -> Vec<Coord> {
    let mut l = labels.to_vec();
    l.sort();
    l
}

fn names(labels: &[Coord]) -> Vec<String> {
    let sc = show_comps(labels);
    labels.iter().map(|c| c.name(sc)).collect()
}

/// Coordinates of every vertex set in canonical order, with the fiber-product
/// description when the presentation is a full cubic groupoid over `elems`.
pub fn vertex_table(p: &Presentation, stair: Option<(&[u8], usize)>) -> Result<Table<VertexRow>> {
    let mut rows = Vec::new();
    for (m, s) in &p.vertices {
        let vertex_set = match stair {
            Some((elems, vdim)) => {
                let order = IndexSet::new(elems.to_vec())?;
                let alpha = (0..elems.len()).filter(|k| m >> k & 1 == 1).fold(0u32, |a, k| a | 1 << (elems[k] - 1));
                Some(stair_schema(&order, alpha)?.display_for(vdim))
            }
            None => None,
        };
        rows.push(VertexRow { alpha: p.mask_name(*m), vertex_set, coords: names(&sorted(&s.labels)) });
    }
    Ok(Table { construction: p.name.clone(), what: "vertex".into(), rows })
}

/// The source or target projection of every edge, grouped by direction, with
/// domain and outputs in canonical order.
pub fn edge_table(p: &Presentation, which: Projection) -> Table<EdgeRow> {
    let mut edges: Vec<(&(u32, u32), _)> = p.edges.iter().collect();
    edges.sort_by_key(|((lo, hi), _)| (hi & !lo, *lo));
    let rows = edges
        .into_iter()
        .map(|((lo, hi), e)| {
            let m: &PolyMap = match which {
                Projection::Source => &e.source,
                Projection::Target => &e.target,
            };
            let dom = sorted(&m.dom);
            let m = m.with_dom(&dom).and_then(|m| m.pick(&sorted(&m.cod))).expect("same labels");
            EdgeRow { edge: p.edge_name(*lo, *hi), dom: names(&dom), map: m.render_comps() }
        })
        .collect();
    let what = match which {
        Projection::Source => "source",
        Projection::Target => "target",
    };
    Table { construction: p.name.clone(), what: what.into(), rows }
}

impl VertexRow {
    pub fn line(&self) -> String {
        let coords = format!("({})", self.coords.join(", "));
        match &self.vertex_set {
            Some(s) => format!("{} | {} | {}", self.alpha, s, coords),
            None => format!("{} | {}", self.alpha, coords),
        }
    }
}

impl EdgeRow {
    pub fn line(&self) -> String {
        format!("{} | π({}) = ({})", self.edge, self.dom.join(", "), self.map.join(", "))
    }
}

impl Table<VertexRow> {
    pub fn text(&self) -> String {
        let mut out = format!("{}: vertex sets\n", self.construction);
        for r in &self.rows {
            out.push_str(&r.line());
            out.push('\n');
        }
        out
    }
}

impl Table<EdgeRow> {
    pub fn text(&self) -> String {
        let mut out = format!("{}: {} projections\n", self.construction, self.what);
        for r in &self.rows {
            out.push_str(&r.line());
            out.push('\n');
        }
        out
    }
}

impl<R: Serialize> Table<R> {
    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }
}
