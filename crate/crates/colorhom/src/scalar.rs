//! Exact elements of the cyclotomic field ℚ(ζ_m).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{self, Poly};

/// Element of ℚ(ζ_m) in the power basis 1, ζ, …, ζ^{φ(m)−1}.
///
/// `coeffs.len() == φ(m)` always; operands of different root orders are
/// embedded into ℚ(ζ_lcm) before combining.
#[derive(Clone, Debug)]
pub struct Scalar {
    m: u32,
    coeffs: Vec<BigRational>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<Poly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial, by dividing x^m − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_poly(m: u32) -> Arc<Poly> {
    assert!(m >= 1, "root order must be positive");
    if let Some(p) = cache().read().unwrap().get(&m) {
        return p.clone();
    }
    let mut num: Poly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = poly::divrem(&num, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    let p = Arc::new(num);
    cache().write().unwrap().insert(m, p.clone());
    p
}

pub fn totient(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

/// Canonical remainder of `raw` (a polynomial in ζ) modulo Φ_m.
pub fn cyclo_reduce(raw: &[BigRational], m: u32) -> Scalar {
    assert!(m >= 1, "root order must be positive");
    let mut folded = vec![BigRational::zero(); (m as usize).max(1)];
    for (i, c) in raw.iter().enumerate() {
        if !c.is_zero() {
            folded[i % m as usize] += c;
        }
    }
    let phi = cyclotomic_poly(m);
    let n = phi.len() - 1;
    let (_, mut r) = poly::divrem(&folded, &phi);
    r.resize(n, BigRational::zero());
    Scalar { m, coeffs: r }
}

impl Scalar {
    pub fn from_rational(q: BigRational) -> Self {
        Scalar { m: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_m^k.
    pub fn zeta_pow(k: i64, m: u32) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        cyclo_reduce(&raw, m)
    }

    /// Builds from power-basis coefficients; the length must be φ(m).
    pub fn from_coeffs(coeffs: Vec<BigRational>, m: u32) -> Result<Self> {
        let n = totient(m);
        if coeffs.len() != n {
            return Err(Error::Scalar(format!(
                "expected {n} coefficients for root order {m}, got {}",
                coeffs.len()
            )));
        }
        Ok(cyclo_reduce(&coeffs, m))
    }

    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Image in ℚ(ζ_target) under ζ_m ↦ ζ_target^{target/m}.
    pub fn embed(&self, target: u32) -> Scalar {
        if target == self.m {
            return self.clone();
        }
        if let Some(q) = self.as_rational() {
            let mut c = vec![BigRational::zero(); totient(target)];
            c[0] = q.clone();
            return Scalar { m: target, coeffs: c };
        }
        assert!(target % self.m == 0, "cannot embed Q(zeta_{}) into Q(zeta_{})", self.m, target);
        let step = (target / self.m) as usize;
        let mut raw = vec![BigRational::zero(); step * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        cyclo_reduce(&raw, target)
    }

    fn unify<'a>(a: &'a Scalar, b: &'a Scalar) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        if a.m == b.m {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let ra = a.coeffs.len() == 1;
        let rb = b.coeffs.len() == 1;
        let t = if ra && rb {
            a.m.max(b.m)
        } else if ra {
            b.m
        } else if rb {
            a.m
        } else {
            a.m.lcm(&b.m)
        };
        let ea = if a.m == t || ra { a.embed_rational_or(t) } else { Cow::Owned(a.embed(t)) };
        let eb = if b.m == t || rb { b.embed_rational_or(t) } else { Cow::Owned(b.embed(t)) };
        (ea, eb)
    }

    fn embed_rational_or(&self, t: u32) -> std::borrow::Cow<'_, Scalar> {
        use std::borrow::Cow;
        if self.m == t {
            Cow::Borrowed(self)
        } else {
            let mut c = vec![BigRational::zero(); totient(t)];
            c[0] = self.coeffs[0].clone();
            Cow::Owned(Scalar { m: t, coeffs: c })
        }
    }

    /// Multiplicative inverse by extended Euclid against Φ_m.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(Scalar { m: self.m, coeffs: vec![self.coeffs[0].recip()] });
        }
        let phi = cyclotomic_poly(self.m);
        let (g, u) = poly::ext_gcd(&self.coeffs, &phi);
        debug_assert_eq!(g.len(), 1);
        Ok(cyclo_reduce(&u, self.m))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parses `p`, `p/q` or `[c0;c1;…]` with exactly φ(m) coefficients.
    pub fn parse(text: &str, m: u32) -> Result<Scalar> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Scalar(format!("unterminated coefficient list `{t}`")))?;
            let parts: Vec<BigRational> =
                inner.split(';').map(parse_rational).collect::<Result<_>>()?;
            return Scalar::from_coeffs(parts, m);
        }
        Ok(Scalar::from_rational(parse_rational(t)?).embed(m))
    }

    /// Literal form accepted by [`Scalar::parse`].
    pub fn literal(&self) -> String {
        match self.as_rational() {
            Some(q) => rational_literal(q),
            None => {
                let parts: Vec<String> = self.coeffs.iter().map(rational_literal).collect();
                format!("[{}]", parts.join(";"))
            }
        }
    }
}

fn rational_literal(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Scalar(format!("malformed scalar literal `{t}`"));
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(t).ok_or_else(bad)?)),
        Some((p, q)) => {
            let p = parse_integer(p.trim()).ok_or_else(bad)?;
            let q = parse_integer(q.trim()).ok_or_else(bad)?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if q.is_negative() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Scalar::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.literal())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let (a, b) = Scalar::unify(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Scalar { m: a.m, coeffs }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let (a, b) = Scalar::unify(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Scalar { m: a.m, coeffs }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.coeffs.len() == 1 && rhs.coeffs.len() == 1 {
            return Scalar { m: self.m.max(rhs.m), coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let (a, b) = Scalar::unify(self, rhs);
        if a.coeffs.len() == 1 {
            return Scalar { m: a.m, coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] };
        }
        if let Some(q) = a.as_rational() {
            let coeffs = b.coeffs.iter().map(|c| c * q).collect();
            return Scalar { m: a.m, coeffs };
        }
        if let Some(q) = b.as_rational() {
            let coeffs = a.coeffs.iter().map(|c| c * q).collect();
            return Scalar { m: a.m, coeffs };
        }
        cyclo_reduce(&poly::mul(&a.coeffs, &b.coeffs), a.m)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &'a Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.m == rhs.m {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.m == rhs.m {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
