//! Exact arithmetic in cyclotomic fields `Q(ζ_M)` and q-combinatorics.
//!
//! An element is stored as its canonical remainder modulo the `M`-th
//! cyclotomic polynomial `Φ_M`, so equality is coefficient-wise and zero
//! testing is exact. Operands of different orders are embedded into
//! `Q(ζ_lcm)` before combining; results are never demoted to a subfield.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_integer::Integer;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Integer polynomial division of `num` by monic `den`; the division is exact
/// for the cyclotomic recursion.
fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1];
        quot[k] = c;
        if c != 0 {
            for j in 0..dl {
                rem[k + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn compute_cyclotomic(m: u32, cache: &mut HashMap<u32, Rc<Vec<i64>>>) -> Rc<Vec<i64>> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // x^m - 1 = prod_{d | m} Φ_d
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in divisors(m) {
        if d < m {
            let phi_d = compute_cyclotomic(d, cache);
            poly = div_exact(&poly, &phi_d);
        }
    }
    let rc = Rc::new(poly);
    cache.insert(m, rc.clone());
    rc
}

thread_local! {
    static CYCLO: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
    static ROOTS: RefCell<HashMap<(u32, u32), CycNum>> = RefCell::new(HashMap::new());
}

/// Coefficients (low degree first) of the monic cyclotomic polynomial `Φ_m`.
pub fn cyclotomic_poly(m: u32) -> Rc<Vec<i64>> {
    CYCLO.with(|c| compute_cyclotomic(m, &mut c.borrow_mut()))
}

/// Reduces a dense polynomial in place modulo `Φ_m`, returning the first
/// `φ(m)` coefficients.
fn reduce(mut poly: Vec<Rational>, m: u32) -> Vec<Rational> {
    let phi = totient(m) as usize;
    if poly.len() <= phi {
        poly.resize(phi, Rational::ZERO);
        return poly;
    }
    let cyc = cyclotomic_poly(m);
    for k in (phi..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[k]);
        for (j, &pj) in cyc.iter().enumerate().take(phi) {
            if pj != 0 {
                let t = c.mul_ref(&Rational::from_int(pj));
                poly[k - phi + j] = poly[k - phi + j].sub_ref(&t);
            }
        }
    }
    poly.truncate(phi);
    poly
}

/// An exact element of the cyclotomic field `Q(ζ_order)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { order: 1, coeffs: vec![Rational::ZERO] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        CycNum { order: 1, coeffs: vec![Rational::from_int(n)] }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNum { order: 1, coeffs: vec![r] }
    }

    /// Element of `Q(ζ_order)` from polynomial coefficients in `ζ` (any length;
    /// reduced modulo `Φ_order`).
    pub fn from_poly(order: u32, poly: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        Ok(CycNum { order, coeffs: reduce(poly, order) })
    }

    /// `ζ_m^e`, for any integer exponent.
    pub fn root_of_unity(m: u32, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as u32;
        ROOTS.with(|r| {
            if let Some(v) = r.borrow().get(&(m, e)) {
                return v.clone();
            }
            let mut poly = vec![Rational::ZERO; e as usize + 1];
            poly[e as usize] = Rational::ONE;
            let v = CycNum { order: m, coeffs: reduce(poly, m) };
            r.borrow_mut().insert((m, e), v.clone());
            v
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses `self` inside `Q(ζ_target)`; `target` must be a multiple of
    /// the current order.
    pub fn embed(&self, target: u32) -> CycNum {
        if target == self.order {
            return self.clone();
        }
        debug_assert_eq!(target % self.order, 0);
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        CycNum { order: target, coeffs: reduce(poly, target) }
    }

    fn common(&self, other: &CycNum) -> (std::borrow::Cow<'_, CycNum>, CycNum, u32) {
        if self.order == other.order {
            return (std::borrow::Cow::Borrowed(self), other.clone(), self.order);
        }
        let l = self.order.lcm(&other.order);
        (std::borrow::Cow::Owned(self.embed(l)), other.embed(l), l)
    }

    pub fn add_ref(&self, other: &CycNum) -> CycNum {
        if other.is_zero() && other.order <= self.order && self.order.is_multiple_of(other.order) {
            return self.clone();
        }
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_ref(b)).collect();
            return CycNum { order: self.order, coeffs };
        }
        let (a, b, l) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add_ref(y)).collect();
        CycNum { order: l, coeffs }
    }

    pub fn neg_ref(&self) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(Rational::neg_ref).collect() }
    }

    pub fn sub_ref(&self, other: &CycNum) -> CycNum {
        self.add_ref(&other.neg_ref())
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| c.mul_ref(r)).collect() }
    }

    pub fn mul_ref(&self, other: &CycNum) -> CycNum {
        if self.order != other.order {
            if other.order == 1 {
                return self.scale(&other.coeffs[0]);
            }
            if self.order == 1 {
                return other.scale(&self.coeffs[0]);
            }
            let (a, b, _) = self.common(other);
            return a.mul_same(&b);
        }
        self.mul_same(other)
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let n = self.coeffs.len();
        if n == 1 {
            return CycNum { order: self.order, coeffs: vec![self.coeffs[0].mul_ref(&other.coeffs[0])] };
        }
        let mut poly = vec![Rational::ZERO; 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                poly[i + j] = poly[i + j].add_ref(&a.mul_ref(b));
            }
        }
        CycNum { order: self.order, coeffs: reduce(poly, self.order) }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&k| !self.coeffs[k].is_zero()).collect();
        if nz.len() == 1 {
            // c ζ^k
            let k = nz[0];
            let c = self.coeffs[k].inv()?;
            return Ok(CycNum::root_of_unity(self.order, -(k as i64)).scale(&c));
        }
        // extended Euclid: find a with a * self ≡ 1 mod Φ
        let cyc: Vec<Rational> = cyclotomic_poly(self.order).iter().map(|&c| Rational::from_int(c)).collect();
        let inv = poly_inverse_mod(&self.coeffs, &cyc)?;
        CycNum::from_poly(self.order, inv)
    }

    pub fn div_ref(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exponentiation by a non-negative power.
    pub fn powu(&self, e: u64) -> CycNum {
        self.pow(e as i64).expect("non-negative powers never invert")
    }

    /// Smallest `k > 0` with `self^k = 1`, searching up to `bound`.
    pub fn multiplicative_order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.mul_ref(self);
        }
        None
    }

    /// Exponent `e` in `0..m` with `self = ζ_m^e`, if any.
    pub fn root_exponent(&self, m: u32) -> Option<u32> {
        (0..m).find(|&e| &CycNum::root_of_unity(m, e as i64) == self)
    }
}

/// Inverse of `a` modulo the monic polynomial `m` over `Q`.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Result<Vec<Rational>> {
    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
            p.pop();
        }
    }
    fn divmod(num: &[Rational], den: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
        let mut rem = num.to_vec();
        trim(&mut rem);
        let dl = den.len();
        if rem.len() < dl {
            return Ok((vec![Rational::ZERO], rem));
        }
        let lead_inv = den[dl - 1].inv()?;
        let mut quot = vec![Rational::ZERO; rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dl - 1].mul_ref(&lead_inv);
            if !c.is_zero() {
                for j in 0..dl {
                    rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(&den[j]));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dl - 1);
        if rem.is_empty() {
            rem.push(Rational::ZERO);
        }
        trim(&mut rem);
        Ok((quot, rem))
    }
    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
        out
    }
    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rational> = (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_default();
                let y = b.get(k).cloned().unwrap_or_default();
                x.sub_ref(&y)
            })
            .collect();
        trim(&mut out);
        out
    }
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rational::ZERO], vec![Rational::ONE]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = divmod(&r0, &r1)?;
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd, a nonzero constant because Φ is irreducible
    if r0.len() != 1 {
        return Err(Error::DivisionByZero);
    }
    let c = r0[0].inv()?;
    Ok(s0.iter().map(|x| x.mul_ref(&c)).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.add_ref(rhs)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.sub_ref(rhs)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.mul_ref(rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "z{}^{k}", self.order)?,
                _ => write!(f, "({c})*z{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycNum", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl CycNum {
    /// Parses the JSON form `{"order": M, "coeffs": [...]}`; integers are
    /// accepted both as a whole value and as coefficient entries.
    pub fn from_json(v: &serde_json::Value) -> Result<CycNum> {
        let rat = |c: &serde_json::Value| -> Result<Rational> {
            match c {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(Rational::from_int)
                    .ok_or_else(|| Error::Parse(format!("non-integer numeric coefficient {n}"))),
                serde_json::Value::String(s) => s.parse(),
                other => Err(Error::Parse(format!("invalid coefficient {other}"))),
            }
        };
        match v {
            serde_json::Value::Number(_) | serde_json::Value::String(_) => Ok(CycNum::from_rational(rat(v)?)),
            serde_json::Value::Object(map) => {
                let order = map
                    .get("order")
                    .and_then(|o| o.as_u64())
                    .ok_or_else(|| Error::Parse("CycNum needs a positive integer `order`".into()))?;
                let coeffs = map
                    .get("coeffs")
                    .and_then(|c| c.as_array())
                    .ok_or_else(|| Error::Parse("CycNum needs a `coeffs` array".into()))?;
                let poly = coeffs.iter().map(rat).collect::<Result<Vec<_>>>()?;
                if poly.is_empty() {
                    return Err(Error::Parse("CycNum `coeffs` must be non-empty".into()));
                }
                CycNum::from_poly(order as u32, poly)
            }
            other => Err(Error::Parse(format!("invalid CycNum {other}"))),
        }
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        CycNum::from_json(&v).map_err(de::Error::custom)
    }
}

/// `n_q = 1 + q + … + q^{n-1}`.
pub fn q_int(n: u32, q: &CycNum) -> CycNum {
    let mut acc = CycNum::zero();
    let mut p = CycNum::one();
    for _ in 0..n {
        acc = acc.add_ref(&p);
        p = p.mul_ref(q);
    }
    acc
}

/// `n!_q = 1_q 2_q ⋯ n_q`.
pub fn q_factorial(n: u32, q: &CycNum) -> CycNum {
    (1..=n).fold(CycNum::one(), |acc, k| acc.mul_ref(&q_int(k, q)))
}

/// Gaussian binomial via `binom(n+1, r) = binom(n, r) + q^{n+1-r} binom(n, r-1)`.
pub fn q_binomial(n: u32, r: u32, q: &CycNum) -> CycNum {
    if r > n {
        return CycNum::zero();
    }
    q_binomial_row(n, q).swap_remove(r as usize)
}

/// The full row `binom(n, 0..=n)_q`.
pub fn q_binomial_row(n: u32, q: &CycNum) -> Vec<CycNum> {
    let powers: Vec<CycNum> = (0..=n).map(|k| q.powu(k as u64)).collect();
    let mut row = vec![CycNum::one()];
    for m in 0..n {
        // row currently holds binom(m, ·); build binom(m + 1, ·)
        let mut next = Vec::with_capacity(row.len() + 1);
        for r in 0..=(m + 1) as usize {
            let keep = if r <= m as usize { row[r].clone() } else { CycNum::zero() };
            let shifted = if r >= 1 {
                row[r - 1].mul_ref(&powers[m as usize + 1 - r])
            } else {
                CycNum::zero()
            };
            next.push(keep.add_ref(&shifted));
        }
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, e: i64) -> CycNum {
        CycNum::root_of_unity(m, e)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(25).len(), 21);
    }

    #[test]
    fn field_examples() {
        let s = z(3, 0).add_ref(&z(3, 1)).add_ref(&z(3, 2));
        assert!(s.is_zero());
        assert_eq!(z(4, 1).mul_ref(&z(4, 1)), CycNum::from_int(-1));
        assert!(z(3, 1).mul_ref(&z(3, 2)).is_one());
    }

    #[test]
    fn mixed_orders_embed() {
        // ζ_9^3 = ζ_3
        assert_eq!(z(9, 3), z(3, 1));
        let s = z(9, 3).add_ref(&z(3, 2));
        assert_eq!(s.order(), 9);
        assert_eq!(s, CycNum::from_int(-1));
        let p = z(4, 1).mul_ref(&z(3, 1));
        assert_eq!(p.order(), 12);
        assert_eq!(p, z(12, 7));
    }

    #[test]
    fn division() {
        let a = CycNum::from_int(1).add_ref(&z(5, 1));
        let inv = a.inv().unwrap();
        assert!(a.mul_ref(&inv).is_one());
        assert_eq!(CycNum::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(z(9, 4).inv().unwrap(), z(9, 5));
    }

    #[test]
    fn q_integers() {
        let q = z(5, 1);
        assert!(q_int(0, &q).is_zero());
        assert_eq!(q_int(2, &q), CycNum::one().add_ref(&q));
        assert!(q_int(3, &z(3, 1)).is_zero());
        assert!(q_factorial(0, &q).is_one());
        let expanded = CycNum::one()
            .mul_ref(&CycNum::one().add_ref(&q))
            .mul_ref(&CycNum::one().add_ref(&q).add_ref(&q.powu(2)));
        assert_eq!(q_factorial(3, &q), expanded);
        assert!(q_factorial(3, &z(3, 1)).is_zero());
        assert!(q_factorial(5, &z(5, 1)).is_zero());
    }

    #[test]
    fn q_binomials() {
        let q = z(7, 1);
        assert_eq!(q_binomial(2, 1, &q), CycNum::one().add_ref(&q));
        assert!(q_binomial(3, 1, &z(3, 1)).is_zero());
        assert!(q_binomial(2, 3, &q).is_zero());
        for n in [3u32, 5] {
            let q = z(n, 1);
            for r in 1..n {
                assert!(q_binomial(n, r, &q).is_zero());
            }
        }
    }

    #[test]
    fn json_round_trip_and_shorthand() {
        let v = z(9, 4).scale(&Rational::new(-3, 7).unwrap());
        let s = serde_json::to_string(&v).unwrap();
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let two: CycNum = serde_json::from_str("2").unwrap();
        assert_eq!(two, CycNum::from_int(2));
        let mixed: CycNum = serde_json::from_str(r#"{"order": 4, "coeffs": [1, "1/2"]}"#).unwrap();
        assert_eq!(mixed, CycNum::one().add_ref(&z(4, 1).scale(&Rational::new(1, 2).unwrap())));
    }
}
