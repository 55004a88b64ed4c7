//! Natural hypercubes `P(n)`, ordered index sets, the Boolean ring on subsets,
//! alpha-stairs and the two-typed hypercube `P(n̄)`.
//!
//! Subsets of `{1..16}` are bitmasks: element `e` lives in bit `e - 1`. With
//! this encoding the integer order of the masks is the binary-code order.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_DIM: u8 = 16;

/// A subset of `{1..n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Vertex {
    pub bits: u32,
    pub n: u8,
}

impl Vertex {
    pub fn new(bits: u32, n: u8) -> Result<Vertex> {
        if n > MAX_DIM {
            return Err(Error::Domain(format!("dimension {n} exceeds {MAX_DIM}")));
        }
        if bits >> n != 0 {
            return Err(Error::Domain(format!("{} is not a subset of {{1..{n}}}", set_string(bits))));
        }
        Ok(Vertex { bits, n })
    }

    pub fn from_elems(elems: &[u8], n: u8) -> Result<Vertex> {
        let mut bits = 0u32;
        for &e in elems {
            if e == 0 || e > n {
                return Err(Error::Domain(format!("element {e} outside 1..={n}")));
            }
            bits |= 1 << (e - 1);
        }
        Vertex::new(bits, n)
    }

    pub fn empty(n: u8) -> Vertex {
        Vertex { bits: 0, n }
    }

    pub fn full(n: u8) -> Vertex {
        Vertex { bits: full_mask(n), n }
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: u8) -> bool {
        e >= 1 && self.bits & (1 << (e - 1)) != 0
    }

    pub fn is_subset(&self, other: &Vertex) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn elems(&self) -> Vec<u8> {
        elems_of(self.bits)
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic (binary-code) order.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.bits).cmp(&(other.n, other.bits))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", set_string(self.bits))
    }
}

pub fn full_mask(n: u8) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn elems_of(bits: u32) -> Vec<u8> {
    (0..32).filter(|i| bits & (1 << i) != 0).map(|i| i as u8 + 1).collect()
}

pub fn mask_of(elems: &[u8]) -> u32 {
    elems.iter().fold(0, |m, &e| m | (1 << (e - 1)))
}

/// `{1,2}` renders as `12`, the empty set as `0`. Elements above 9 switch to braces.
pub fn digits(bits: u32) -> String {
    let es = elems_of(bits);
    if es.is_empty() {
        return "0".into();
    }
    if es.iter().all(|&e| e <= 9) {
        es.iter().map(|e| e.to_string()).collect()
    } else {
        format!("{{{}}}", es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
    }
}

pub fn set_string(bits: u32) -> String {
    let es = elems_of(bits);
    if es.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// All `2^n` vertices in lexicographic order.
pub fn vertices(n: u8) -> Vec<Vertex> {
    (0..=full_mask(n)).map(|bits| Vertex { bits, n }).collect()
}

/// Oriented edge `(lo, hi)` with `hi = lo ∪ {i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    pub fn new(lo: Vertex, hi: Vertex) -> Result<Edge> {
        if lo.n != hi.n || !lo.is_subset(&hi) || (hi.bits & !lo.bits).count_ones() != 1 {
            return Err(Error::Domain(format!("({lo},{hi}) is not an edge")));
        }
        Ok(Edge { lo, hi })
    }

    pub fn direction(&self) -> u8 {
        (self.hi.bits & !self.lo.bits).trailing_zeros() as u8 + 1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KCube {
    pub lo: Vertex,
    pub hi: Vertex,
    pub k: u32,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n,k) 2^(n-k)`.
pub fn count_kcubes(n: u8, k: u8) -> Result<u64> {
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    Ok(binomial(n as u64, k as u64) << (n - k))
}

/// Enumerates k-cubes by brute force over all pairs of vertices.
pub fn kcubes(n: u8, k: u8) -> Vec<KCube> {
    let mut out = Vec::new();
    for lo in vertices(n) {
        for hi in vertices(n) {
            if lo.is_subset(&hi) && (hi.bits & !lo.bits).count_ones() == k as u32 {
                out.push(KCube { lo, hi, k: k as u32 });
            }
        }
    }
    out
}

pub fn edges(n: u8) -> Vec<Edge> {
    kcubes(n, 1).into_iter().map(|c| Edge { lo: c.lo, hi: c.hi }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeClass {
    Old,
    CopyOfOld,
    New,
}

/// Induction bookkeeping relative to the top direction of the ambient cube.
pub fn classify_edge_for_induction(e: &Edge, top: u8) -> EdgeClass {
    if !e.hi.contains(top) {
        EdgeClass::Old
    } else if e.lo.contains(top) {
        EdgeClass::CopyOfOld
    } else {
        EdgeClass::New
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RingOps {
    pub sum: Vertex,
    pub product: Vertex,
    pub distance: u32,
}

pub fn boolean_ring_ops(a: &Vertex, b: &Vertex) -> Result<RingOps> {
    if a.n != b.n {
        return Err(Error::Shape(format!("ambient dimensions {} and {} differ", a.n, b.n)));
    }
    let sum = a.bits ^ b.bits;
    Ok(RingOps {
        sum: Vertex { bits: sum, n: a.n },
        product: Vertex { bits: a.bits & b.bits, n: a.n },
        distance: sum.count_ones(),
    })
}

/// A finite ordered index set `N = {a_1 < … < a_n}` with elements in `1..=16`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IndexSet(Vec<u8>);

impl IndexSet {
    pub fn new(mut elems: Vec<u8>) -> Result<IndexSet> {
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&e| e == 0 || e > MAX_DIM) {
            return Err(Error::Domain(format!("index set elements must lie in 1..={MAX_DIM}")));
        }
        Ok(IndexSet(elems))
    }

    pub fn natural(n: u8) -> IndexSet {
        IndexSet((1..=n).collect())
    }

    pub fn elems(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mask(&self) -> u32 {
        mask_of(&self.0)
    }

    /// Subsets of `N` as masks, in binary-code order.
    pub fn subsets(&self) -> Vec<u32> {
        subsets_of(self.mask())
    }
}

/// Every submask of `m`, ascending.
pub fn subsets_of(m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut s = 0u32;
    loop {
        out.push(s);
        if s == m {
            break;
        }
        s = (s.wrapping_sub(m)) & m;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stair {
    pub raw: Vec<u32>,
    pub normalized: Vec<u32>,
}

/// `S_i = {a_i} ∪ (α ∖ {a_1..a_{i-1}})`; a step contained in its predecessor is dropped.
pub fn alpha_stair(n_set: &IndexSet, alpha: u32) -> Result<Stair> {
    if alpha & !n_set.mask() != 0 {
        return Err(Error::Domain(format!("{} is not a subset of N", set_string(alpha))));
    }
    let mut raw = Vec::with_capacity(n_set.len());
    let mut seen = 0u32;
    for &a in n_set.elems() {
        raw.push((1 << (a - 1)) | (alpha & !seen));
        seen |= 1 << (a - 1);
    }
    let mut normalized: Vec<u32> = Vec::new();
    for (i, &s) in raw.iter().enumerate() {
        if i > 0 && s & !raw[i - 1] == 0 {
            continue;
        }
        normalized.push(s);
    }
    Ok(Stair { raw, normalized })
}

/// A vertex of `P(N ∪ N')`: an unprimed part and a primed part, both subsets of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoTypedVertex {
    pub plain: u32,
    pub primed: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexType {
    pub n_vertex: bool,
    pub n_prime_vertex: bool,
    pub saturated: bool,
}

impl VertexType {
    pub fn is_generic(&self) -> bool {
        !(self.n_vertex || self.n_prime_vertex || self.saturated)
    }
}

impl TwoTypedVertex {
    pub fn classify(&self) -> VertexType {
        VertexType {
            n_vertex: self.primed == 0,
            n_prime_vertex: self.plain == 0,
            saturated: self.plain == self.primed,
        }
    }
}

impl fmt::Display for TwoTypedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for e in 1..=MAX_DIM {
            if self.plain & (1 << (e - 1)) != 0 {
                parts.push(e.to_string());
            }
            if self.primed & (1 << (e - 1)) != 0 {
                parts.push(format!("{e}'"));
            }
        }
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceType {
    A,
    B,
    C,
}

/// `P(n̄)` encoded on `2n` positions: `2(k-1)` holds `k`, `2(k-1)+1` holds `k'`.
pub fn two_typed_from_mask(mask: u32) -> TwoTypedVertex {
    let mut plain = 0;
    let mut primed = 0;
    for k in 0..16 {
        if mask & (1 << (2 * k)) != 0 {
            plain |= 1 << k;
        }
        if mask & (1 << (2 * k + 1)) != 0 {
            primed |= 1 << k;
        }
    }
    TwoTypedVertex { plain, primed }
}

pub fn two_typed_to_mask(v: &TwoTypedVertex) -> u32 {
    let mut m = 0;
    for k in 0..16 {
        if v.plain & (1 << k) != 0 {
            m |= 1 << (2 * k);
        }
        if v.primed & (1 << k) != 0 {
            m |= 1 << (2 * k + 1);
        }
    }
    m
}

/// Even positions are unprimed directions.
pub fn edge_kind_of_position(pos: u32) -> EdgeKind {
    if pos % 2 == 0 {
        EdgeKind::First
    } else {
        EdgeKind::Second
    }
}

pub fn two_typed_edges(n: u8) -> Vec<(TwoTypedVertex, TwoTypedVertex, EdgeKind)> {
    edges(2 * n)
        .into_iter()
        .map(|e| {
            let pos = e.direction() as u32 - 1;
            (two_typed_from_mask(e.lo.bits), two_typed_from_mask(e.hi.bits), edge_kind_of_position(pos))
        })
        .collect()
}

pub fn two_typed_faces(n: u8) -> Vec<(TwoTypedVertex, TwoTypedVertex, FaceType)> {
    kcubes(2 * n, 2)
        .into_iter()
        .map(|c| {
            let d = c.hi.bits & !c.lo.bits;
            let firsts = (0..2 * n as u32).filter(|p| d & (1 << p) != 0 && p % 2 == 0).count();
            let ty = match firsts {
                2 => FaceType::A,
                0 => FaceType::B,
                _ => FaceType::C,
            };
            (two_typed_from_mask(c.lo.bits), two_typed_from_mask(c.hi.bits), ty)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_listing() {
        let v: Vec<u32> = vertices(2).iter().map(|v| v.bits).collect();
        assert_eq!(v, vec![0, 1, 2, 3]);
        assert_eq!(vertices(0).len(), 1);
        let v3 = vertices(3);
        assert_eq!(v3.len(), 8);
        assert_eq!(v3.iter().position(|v| v.bits == 0b100), Some(4));
    }

    #[test]
    fn tesseract_counts() {
        let c: Vec<u64> = (0..=4).map(|k| count_kcubes(4, k).unwrap()).collect();
        assert_eq!(c, vec![16, 32, 24, 8, 1]);
        assert!(count_kcubes(2, 3).is_err());
    }

    #[test]
    fn induction_classes() {
        let e = Edge::new(Vertex::from_elems(&[], 2).unwrap(), Vertex::from_elems(&[1], 2).unwrap()).unwrap();
        assert_eq!(classify_edge_for_induction(&e, 2), EdgeClass::Old);
        let e = Edge::new(Vertex::from_elems(&[3], 3).unwrap(), Vertex::from_elems(&[1, 3], 3).unwrap()).unwrap();
        assert_eq!(classify_edge_for_induction(&e, 3), EdgeClass::CopyOfOld);
        let e = Edge::new(Vertex::from_elems(&[1], 3).unwrap(), Vertex::from_elems(&[1, 3], 3).unwrap()).unwrap();
        assert_eq!(classify_edge_for_induction(&e, 3), EdgeClass::New);
    }

    #[test]
    fn boolean_ring_examples() {
        let a = Vertex::from_elems(&[1, 2], 3).unwrap();
        let b = Vertex::from_elems(&[2, 3], 3).unwrap();
        assert_eq!(boolean_ring_ops(&a, &a).unwrap().sum.bits, 0);
        assert_eq!(boolean_ring_ops(&a, &b).unwrap().sum.bits, 0b101);
        let c = Vertex::from_elems(&[1], 3).unwrap();
        assert_eq!(boolean_ring_ops(&c, &b).unwrap().distance, 3);
    }

    #[test]
    fn stairs() {
        let n2 = IndexSet::natural(2);
        let s = alpha_stair(&n2, 0b10).unwrap();
        assert_eq!(s.raw, vec![0b11, 0b10]);
        assert_eq!(s.normalized, vec![0b11]);
        let n3 = IndexSet::natural(3);
        assert_eq!(alpha_stair(&n3, 0).unwrap().normalized, vec![1, 2, 4]);
        assert_eq!(alpha_stair(&n3, 0b111).unwrap().normalized, vec![0b111]);
        assert_eq!(alpha_stair(&n3, 0b101).unwrap().normalized, vec![0b101, 0b110]);
        assert!(alpha_stair(&n2, 0b100).is_err());
    }

    #[test]
    fn two_typed_counts() {
        let e = two_typed_edges(2);
        assert_eq!(e.iter().filter(|x| x.2 == EdgeKind::First).count(), 16);
        assert_eq!(e.iter().filter(|x| x.2 == EdgeKind::Second).count(), 16);
        let f = two_typed_faces(2);
        assert_eq!(f.iter().filter(|x| x.2 == FaceType::A).count(), 4);
        assert_eq!(f.iter().filter(|x| x.2 == FaceType::B).count(), 4);
        assert_eq!(f.iter().filter(|x| x.2 == FaceType::C).count(), 16);
        let top = TwoTypedVertex { plain: 0b11, primed: 0b11 };
        assert!(top.classify().saturated);
        assert!(!top.classify().n_vertex);
        let g = TwoTypedVertex { plain: 0b01, primed: 0b10 };
        assert!(g.classify().is_generic());
    }

    #[test]
    fn rendering() {
        assert_eq!(digits(0), "0");
        assert_eq!(digits(0b101), "13");
        assert_eq!(set_string(0b11), "{1,2}");
    }
}
