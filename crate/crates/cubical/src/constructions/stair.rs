//! Vertex sets of `G^N U` as iterated fiber products of `U^A` and `0^A`, built
//! two ways: from the α-stair and by composing one-step derivations.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::{alpha_stair, digits, subsets_of, IndexSet};
use crate::poly::Coord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AtomKind {
    UPower,
    ZeroPower,
}

/// `U^A` or `0^A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaAtom {
    pub kind: AtomKind,
    pub set: u32,
}

impl SchemaAtom {
    /// `v_β (β ⊆ A)` for `U^A`, then `t_β (∅ ≠ β ⊆ A)`.
    pub fn labels(&self, vdim: usize) -> Vec<Coord> {
        let mut out = Vec::new();
        if self.kind == AtomKind::UPower {
            for b in subsets_of(self.set) {
                out.extend((0..vdim).map(|k| Coord::vc(b, k as u16)));
            }
        }
        out.extend(subsets_of(self.set).into_iter().filter(|&b| b != 0).map(Coord::t));
        out
    }
}

impl fmt::Display for SchemaAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.kind == AtomKind::UPower { "U" } else { "0" };
        if self.set == 0 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}^{{{}}}", digits(self.set))
        }
    }
}

/// `atoms[0] ×_{0^{g_1}} atoms[1] ×_{0^{g_2}} …`; `gluings[k]` joins atoms `k`
/// and `k+1` over the shared index set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberProductSchema {
    pub atoms: Vec<SchemaAtom>,
    pub gluings: Vec<(usize, usize, u32)>,
}

impl FiberProductSchema {
    /// Flat, duplicate-free coordinate list in canonical order.
    pub fn labels(&self, vdim: usize) -> Vec<Coord> {
        let mut out: Vec<Coord> = self.atoms.iter().flat_map(|a| a.labels(vdim)).collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for FiberProductSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.atoms.iter().enumerate() {
            if k > 0 {
                let g = self.gluings[k - 1].2;
                if g == 0 {
                    write!(f, " × ")?;
                } else {
                    write!(f, " ×_{{0^{{{}}}}} ", digits(g))?;
                }
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FiberProductSchema {
    /// Display for `U = 0`: `U^A` reads `0^A` and a bare `U` factor is dropped.
    pub fn display_for(&self, vdim: usize) -> String {
        if vdim > 0 {
            return self.to_string();
        }
        let atoms: Vec<SchemaAtom> =
            self.atoms.iter().map(|a| SchemaAtom { kind: AtomKind::ZeroPower, set: a.set }).collect();
        let (atoms, gluings) = if atoms.len() > 1 && atoms[0].set == 0 {
            (atoms[1..].to_vec(), self.gluings[1..].to_vec())
        } else {
            (atoms, self.gluings.clone())
        };
        FiberProductSchema { atoms, gluings }.to_string()
    }
}

fn push(atoms: &mut Vec<SchemaAtom>, gluings: &mut Vec<(usize, usize, u32)>, atom: SchemaAtom) {
    if let Some(prev) = atoms.last() {
        let k = atoms.len();
        gluings.push((k - 1, k, prev.set & atom.set));
    }
    atoms.push(atom);
}

/// The schema read off the α-stair: `U^α`, then `0^{S_i}` for every normalized
/// step not already contained in `α`.
pub fn stair_schema(n_set: &IndexSet, alpha: u32) -> Result<FiberProductSchema> {
    let st = alpha_stair(n_set, alpha)?;
    let mut atoms = Vec::new();
    let mut gluings = Vec::new();
    push(&mut atoms, &mut gluings, SchemaAtom { kind: AtomKind::UPower, set: alpha });
    for s in st.normalized {
        if s & !alpha == 0 {
            continue;
        }
        push(&mut atoms, &mut gluings, SchemaAtom { kind: AtomKind::ZeroPower, set: s });
    }
    Ok(FiberProductSchema { atoms, gluings })
}

/// The schema obtained by applying, for `j` running through `N` in order, either
/// the derivation in direction `j` (every superscript and gluing set gains `j`)
/// or the product with `0^{j}`.
pub fn compositional_schema(order: &[u8], alpha: u32) -> Result<FiberProductSchema> {
    let mut all = 0u32;
    for &j in order {
        if j == 0 || j > 16 || all & 1 << (j - 1) != 0 {
            return Err(Error::Domain("N must list distinct elements of 1..=16".into()));
        }
        all |= 1 << (j - 1);
    }
    if alpha & !all != 0 {
        return Err(Error::Domain("α is not a subset of N".into()));
    }
    let mut atoms = vec![SchemaAtom { kind: AtomKind::UPower, set: 0 }];
    let mut gluings: Vec<(usize, usize, u32)> = Vec::new();
    for &j in order {
        let b = 1u32 << (j - 1);
        if alpha & b != 0 {
            for a in &mut atoms {
                a.set |= b;
            }
            for g in &mut gluings {
                g.2 |= b;
            }
        } else {
            push(&mut atoms, &mut gluings, SchemaAtom { kind: AtomKind::ZeroPower, set: b });
        }
    }
    // a zero power inside the U power is absorbed by it
    let u = atoms[0].set;
    let mut kept = vec![atoms[0]];
    let mut glue = Vec::new();
    for a in atoms.into_iter().skip(1) {
        if a.set & !u == 0 {
            continue;
        }
        push(&mut kept, &mut glue, a);
    }
    Ok(FiberProductSchema { atoms: kept, gluings: glue })
}
