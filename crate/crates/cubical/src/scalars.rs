//! Commutative rings used by the engine: exact rationals, integers modulo `m`,
//! polynomials, and the scalar-extension algebras
//! `A_t = ⊗_{i∈α} K[X_i]/(X_i² − t_i X_i)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Ring elements that carry enough context to produce their own zero and one.
pub trait CRing: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Image of a rational under the structure map, if defined (denominator must be a unit).
    fn from_q_like(&self, c: &Q) -> Option<Self>;
    fn r_add(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn r_is_zero(&self) -> bool;

    fn r_sub(&self, o: &Self) -> Self {
        self.r_add(&o.r_neg())
    }

    fn r_pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.r_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.r_mul(&base);
            }
        }
        acc
    }
}

impl CRing for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn from_q_like(&self, c: &Q) -> Option<Self> {
        Some(c.clone())
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RingSpec {
    Rational,
    Mod(u64),
}

impl RingSpec {
    pub fn modular(m: u64) -> Result<RingSpec> {
        if m < 2 {
            return Err(Error::Domain(format!("modulus {m} must be at least 2")));
        }
        Ok(RingSpec::Mod(m))
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            RingSpec::Rational => Scalar::Rat(Q::zero()),
            RingSpec::Mod(m) => Scalar::Mod { v: 0, m },
        }
    }

    pub fn one(&self) -> Scalar {
        match *self {
            RingSpec::Rational => Scalar::Rat(Q::one()),
            RingSpec::Mod(m) => Scalar::Mod { v: 1 % m, m },
        }
    }

    pub fn from_rational(&self, c: &Q) -> Result<Scalar> {
        self.zero()
            .from_q_like(c)
            .ok_or_else(|| Error::Domain(format!("{c} has no image in {self}")))
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(&q(n)).expect("integers embed in every ring")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rational => write!(f, "Q"),
            RingSpec::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Exact scalar over a `RingSpec`. Mixing elements of different rings panics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(Q),
    Mod { v: u64, m: u64 },
}

fn mod_of_bigint(b: &BigInt, m: u64) -> u64 {
    let r = b.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

impl Scalar {
    pub fn ring(&self) -> RingSpec {
        match self {
            Scalar::Rat(_) => RingSpec::Rational,
            Scalar::Mod { m, .. } => RingSpec::Mod(*m),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Rat(x) => !x.is_zero(),
            Scalar::Mod { v, m } => mod_inverse(*v, *m).is_some(),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(x) if !x.is_zero() => Ok(Scalar::Rat(x.recip())),
            Scalar::Mod { v, m } => mod_inverse(*v, *m)
                .map(|v| Scalar::Mod { v, m: *m })
                .ok_or_else(|| Error::Domain(format!("{v} is not a unit mod {m}"))),
            _ => Err(Error::Domain("0 is not invertible".into())),
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Scalar::Rat(x) => Some(x),
            _ => None,
        }
    }

    fn same_ring(&self, o: &Scalar) {
        assert_eq!(self.ring(), o.ring(), "mixed rings in scalar arithmetic");
    }
}

impl CRing for Scalar {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn from_q_like(&self, c: &Q) -> Option<Self> {
        match self {
            Scalar::Rat(_) => Some(Scalar::Rat(c.clone())),
            Scalar::Mod { m, .. } => {
                let num = mod_of_bigint(c.numer(), *m);
                let den = mod_of_bigint(c.denom(), *m);
                let inv = mod_inverse(den, *m)?;
                Some(Scalar::Mod { v: ((num as u128 * inv as u128) % *m as u128) as u64, m: *m })
            }
        }
    }
    fn r_add(&self, o: &Self) -> Self {
        self.same_ring(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, m }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { v: ((*a as u128 + *b as u128) % *m as u128) as u64, m: *m }
            }
            _ => unreachable!(),
        }
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.same_ring(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, m }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { v: ((*a as u128 * *b as u128) % *m as u128) as u64, m: *m }
            }
            _ => unreachable!(),
        }
    }
    fn r_neg(&self) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, m } => Scalar::Mod { v: (*m - *v) % *m, m: *m },
        }
    }
    fn r_is_zero(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => write!(f, "{}", fmt_q(x)),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

/// `p/q` with the sign on the numerator; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering for display only, rounded half away from zero to `digits` places.
pub fn fmt_decimal(x: &Q, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * Q::from_integer(scale.clone());
    let neg = scaled.is_negative();
    let a = scaled.abs();
    let r = (a.clone() + Q::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let (ip, fp) = r.div_rem(&scale);
    let mut s = ip.to_string();
    if digits > 0 {
        let f = fp.to_string();
        s.push('.');
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    if neg && !r.is_zero() {
        s.insert(0, '-');
    }
    s
}

/// Element `Σ_β c_β X_β` of `A_t^{α}`; `coeffs[mask]` is the coefficient of the
/// monomial `Π_{i ∈ mask} X_{alpha[i]}` (mask over positions in `alpha`).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElement<R: CRing> {
    pub alpha: Vec<u8>,
    pub t: Vec<R>,
    pub coeffs: Vec<R>,
}

impl<R: CRing> ExtElement<R> {
    pub fn new(alpha: Vec<u8>, t: Vec<R>, coeffs: Vec<R>) -> Result<Self> {
        if t.len() != alpha.len() || coeffs.len() != 1 << alpha.len() {
            return Err(Error::Shape(format!(
                "{} generators need {} scales and {} coefficients",
                alpha.len(),
                alpha.len(),
                1usize << alpha.len()
            )));
        }
        Ok(ExtElement { alpha, t, coeffs })
    }

    pub fn scalar(alpha: Vec<u8>, t: Vec<R>, c: R) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![z; 1 << alpha.len()];
        coeffs[0] = c;
        ExtElement { alpha, t, coeffs }
    }

    /// The basis monomial `X_β` for a mask over positions in `alpha`.
    pub fn basis(alpha: Vec<u8>, t: Vec<R>, mask: usize, one: &R) -> Self {
        let mut coeffs = vec![one.zero_like(); 1 << alpha.len()];
        coeffs[mask] = one.clone();
        ExtElement { alpha, t, coeffs }
    }

    fn check_shape(&self, o: &Self) -> Result<()> {
        if self.alpha != o.alpha || self.t != o.t {
            return Err(Error::Shape("extension elements over different algebras".into()));
        }
        Ok(())
    }

    pub fn ext_add(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.r_add(b)).collect();
        Ok(ExtElement { alpha: self.alpha.clone(), t: self.t.clone(), coeffs })
    }

    /// `(a·b)_δ = Σ_{β∪γ=δ} a_β b_γ Π_{i∈β∩γ} t_i`.
    pub fn ext_mul(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        let size = self.coeffs.len();
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; size];
        // t-products over every mask, precomputed
        let one = self.coeffs[0].one_like();
        let mut tprod = vec![one; size];
        for m in 1..size {
            let low = m.trailing_zeros() as usize;
            tprod[m] = tprod[m & (m - 1)].r_mul(&self.t[low]);
        }
        for (b, ab) in self.coeffs.iter().enumerate() {
            if ab.r_is_zero() {
                continue;
            }
            for (g, bg) in o.coeffs.iter().enumerate() {
                if bg.r_is_zero() {
                    continue;
                }
                let term = ab.r_mul(bg).r_mul(&tprod[b & g]);
                out[b | g] = out[b | g].r_add(&term);
            }
        }
        Ok(ExtElement { alpha: self.alpha.clone(), t: self.t.clone(), coeffs: out })
    }
}

impl<R: CRing> CRing for ExtElement<R> {
    fn zero_like(&self) -> Self {
        ExtElement::scalar(self.alpha.clone(), self.t.clone(), self.coeffs[0].zero_like())
    }
    fn one_like(&self) -> Self {
        ExtElement::scalar(self.alpha.clone(), self.t.clone(), self.coeffs[0].one_like())
    }
    fn from_q_like(&self, c: &Q) -> Option<Self> {
        Some(ExtElement::scalar(self.alpha.clone(), self.t.clone(), self.coeffs[0].from_q_like(c)?))
    }
    fn r_add(&self, o: &Self) -> Self {
        self.ext_add(o).expect("extension elements over one algebra")
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.ext_mul(o).expect("extension elements over one algebra")
    }
    fn r_neg(&self) -> Self {
        ExtElement {
            alpha: self.alpha.clone(),
            t: self.t.clone(),
            coeffs: self.coeffs.iter().map(|c| c.r_neg()).collect(),
        }
    }
    fn r_is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.r_is_zero())
    }
}

/// `A_t ≅ K × K` for a single generator with unit `t`, via `X ↦ (0, t)`.
pub fn ext_split(a: &ExtElement<Scalar>) -> Result<(Scalar, Scalar)> {
    if a.alpha.len() != 1 {
        return Err(Error::Shape("splitting needs exactly one generator".into()));
    }
    if !a.t[0].is_unit() {
        return Err(Error::Domain(format!("t = {} is not a unit", a.t[0])));
    }
    let x0 = a.coeffs[0].clone();
    let x1 = a.coeffs[0].r_add(&a.coeffs[1].r_mul(&a.t[0]));
    Ok((x0, x1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Scalar {
        Scalar::Rat(q(n))
    }

    #[test]
    fn single_generator_product() {
        // (a+bX)(c+dX) = ac + (ad+bc+bdt)X
        let t = vec![r(5)];
        let x = ExtElement::new(vec![1], t.clone(), vec![r(2), r(3)]).unwrap();
        let y = ExtElement::new(vec![1], t, vec![r(7), r(11)]).unwrap();
        let p = x.ext_mul(&y).unwrap();
        assert_eq!(p.coeffs, vec![r(14), r(2 * 11 + 3 * 7 + 3 * 11 * 5)]);
    }

    #[test]
    fn nilpotent_and_cross_terms() {
        let t0 = vec![r(0), r(0)];
        let x1 = ExtElement::basis(vec![1, 2], t0.clone(), 1, &r(1));
        assert!(x1.ext_mul(&x1).unwrap().r_is_zero());
        let t = vec![r(3), r(4)];
        let x1 = ExtElement::basis(vec![1, 2], t.clone(), 1, &r(1));
        let x12 = ExtElement::basis(vec![1, 2], t, 3, &r(1));
        let p = x1.ext_mul(&x12).unwrap();
        assert_eq!(p.coeffs, vec![r(0), r(0), r(0), r(3)]);
    }

    #[test]
    fn split_examples() {
        let one = ExtElement::scalar(vec![1], vec![r(1)], r(1));
        assert_eq!(ext_split(&one).unwrap(), (r(1), r(1)));
        let a = ExtElement::new(vec![1], vec![r(1)], vec![r(2), r(5)]).unwrap();
        assert_eq!(ext_split(&a).unwrap(), (r(2), r(7)));
        let z4 = RingSpec::modular(4).unwrap();
        let bad = ExtElement::scalar(vec![1], vec![z4.from_int(2)], z4.one());
        assert!(ext_split(&bad).is_err());
        let good = ExtElement::scalar(vec![1], vec![z4.from_int(3)], z4.one());
        assert!(ext_split(&good).is_ok());
    }

    #[test]
    fn modular_arithmetic() {
        let z7 = RingSpec::modular(7).unwrap();
        let a = z7.from_rational(&qf(1, 3)).unwrap();
        assert_eq!(a.r_mul(&z7.from_int(3)), z7.one());
        let z4 = RingSpec::modular(4).unwrap();
        assert!(z4.from_rational(&qf(1, 2)).is_err());
        assert!(!z4.from_int(2).is_unit());
        assert!(RingSpec::modular(1).is_err());
        assert_eq!(z4.from_int(-1), Scalar::Mod { v: 3, m: 4 });
    }

    #[test]
    fn decimals() {
        assert_eq!(fmt_decimal(&qf(1, 3), 4), "0.3333");
        assert_eq!(fmt_decimal(&qf(-2, 3), 2), "-0.67");
        assert_eq!(fmt_decimal(&q(3), 0), "3");
        assert_eq!(fmt_q(&qf(-3, 6)), "-1/2");
    }
}
