//! Symbolic differentiation written from the power rule alone, kept apart from
//! the engine's difference quotients.

use cubical::poly::{Coord, Monomial, Poly, PolyMap};
use cubical::scalars::Q;

/// `∂p/∂x_v` term by term.
pub fn partial(p: &Poly, v: u32) -> Poly {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut exps = m.0.clone();
        if let Some(pos) = exps.iter().position(|(var, _)| *var == v) {
            let e = exps[pos].1;
            if e == 1 {
                exps.remove(pos);
            } else {
                exps[pos].1 = e - 1;
            }
            terms.push((Monomial(exps), c * Q::from_integer(e.into())));
        }
    }
    Poly::from_terms(terms)
}

/// `D^n f(v_∅)(v_{1}, …, v_{n})` as a map over `v_∅, v_{1}, …, v_{n}`: the sum
/// over index tuples of the mixed partials times the vector components.
pub fn mixed_partial(f: &PolyMap, n: u8) -> PolyMap {
    let d = f.in_arity();
    let mut dom: Vec<Coord> = (0..d).map(|k| Coord::vc(0, k as u16)).collect();
    for j in 0..n {
        dom.extend((0..d).map(|k| Coord::vc(1 << j, k as u16)));
    }
    let cod: Vec<Coord> = (0..f.out_arity()).map(|k| Coord::vc((1 << n) - 1, k as u16)).collect();
    let mut comps = Vec::new();
    for p in &f.comps {
        // f's variables 0..d are the base point; direction j's components sit at d(j+1)..
        let mut acc = vec![(p.clone(), Poly::one())];
        for j in 0..n as u32 {
            let mut next = Vec::new();
            for (q, w) in &acc {
                for i in 0..d as u32 {
                    let dq = partial(q, i);
                    if !dq.is_zero() {
                        next.push((dq, w.mul(&Poly::var(d as u32 * (j + 1) + i))));
                    }
                }
            }
            acc = next;
        }
        comps.push(acc.iter().fold(Poly::zero(), |s, (q, w)| s.add(&q.mul(w))));
    }
    PolyMap::new(dom, cod, comps)
}
