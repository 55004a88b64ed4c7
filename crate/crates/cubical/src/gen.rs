//! Random polynomial maps for property checks.

use rand::Rng;

use crate::nfold::Sampler;
use crate::poly::{Coord, Monomial, Poly, PolyMap};
use crate::scalars::{qf, Q};

/// A random polynomial in `nvars` variables of total degree at most `deg`, with
/// up to `max_terms` terms and small rational coefficients.
pub fn random_poly(s: &mut Sampler, nvars: usize, deg: u32, max_terms: usize) -> Poly {
    let nterms = s.rng.gen_range(1..=max_terms.max(1));
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let d = s.rng.gen_range(0..=deg);
        let mut exps = vec![0u32; nvars];
        if nvars > 0 {
            for _ in 0..d {
                exps[s.rng.gen_range(0..nvars)] += 1;
            }
        }
        let m = Monomial(exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(v, e)| (v as u32, *e)).collect());
        let c: Q = qf(s.rng.gen_range(-5..=5), s.rng.gen_range(1..=3));
        terms.push((m, c));
    }
    Poly::from_terms(terms)
}

/// A random map `𝕂^nin → 𝕂^nout` over the labels `v0_k`.
pub fn random_map(s: &mut Sampler, nin: usize, nout: usize, deg: u32) -> PolyMap {
    let dom: Vec<Coord> = (0..nin).map(|k| Coord::vc(0, k as u16)).collect();
    let cod: Vec<Coord> = (0..nout).map(|k| Coord::vc(0, k as u16)).collect();
    let comps = (0..nout).map(|_| random_poly(s, nin, deg, 4)).collect();
    PolyMap::new(dom, cod, comps)
}
