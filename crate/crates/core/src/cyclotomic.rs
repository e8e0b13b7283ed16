//! Exact arithmetic in cyclotomic fields `Q(ζ_L)`.
//!
//! An element is a polynomial in `ζ_L` of degree below `φ(L)` with rational
//! coefficients, reduced modulo the cyclotomic polynomial `Φ_L`. Operands of
//! different levels are embedded into the field of the least common level.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rational};

/// Integer coefficients of `Φ_n`, lowest degree first. Results are cached.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of level 0");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = divide_monic(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Exact quotient of integer polynomials by a monic divisor.
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(
        rem.iter().all(|c| c.is_zero()),
        "inexact cyclotomic division"
    );
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

fn reduce(mut p: Vec<Rational>, level: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(level);
    let deg = phi.len() - 1;
    while p.len() > deg {
        let top = p.len() - 1;
        let c = p.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if !pj.is_zero() {
                p[top - deg + j] -= &c * Rational::from_integer(pj.clone());
            }
        }
    }
    trim(&mut p);
    p
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// An element of `Q(ζ_L)`.
#[derive(Clone)]
pub struct CycScalar {
    level: u32,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    fn normalized(level: u32, coeffs: Vec<Rational>) -> Self {
        let coeffs = reduce(coeffs, level);
        let level = if coeffs.len() <= 1 { 1 } else { level };
        CycScalar { level, coeffs }
    }

    /// A rational scalar.
    pub fn from_rational(r: Rational) -> Self {
        CycScalar::normalized(1, vec![r])
    }

    /// `ζ_level^k`.
    pub fn root_of_unity(level: u32, k: i64) -> Self {
        assert!(level >= 1);
        let k = k.rem_euclid(level as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        CycScalar::normalized(level, coeffs)
    }

    /// Smallest level at which the element was last represented.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Coefficients of `1, ζ, ζ^2, …` at the stored level.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients after embedding into `Q(ζ_m)`; `m` must be a multiple of the level.
    pub fn embed(&self, m: u32) -> Vec<Rational> {
        assert!(
            m % self.level == 0,
            "level {} does not divide {}",
            self.level,
            m
        );
        let step = (m / self.level) as usize;
        if step == 1 {
            return self.coeffs.clone();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j * step] = c.clone();
        }
        reduce(out, m)
    }

    /// The rational value, if the element is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// The `k` with `self == ζ_level^k`, if any.
    pub fn root_exponent(&self, level: u32) -> Option<u32> {
        (0..level).find(|&k| *self == CycScalar::root_of_unity(level, k as i64))
    }

    fn binary(&self, other: &Self, op: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>) -> Self {
        let level = self.level.lcm(&other.level);
        let a = self.embed(level);
        let b = other.embed(level);
        CycScalar::normalized(level, op(&a, &b))
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        let level = self.level.lcm(&other.level);
        self.embed(level) == other.embed(level)
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let power = match j {
                0 => String::new(),
                1 => format!("ζ{}", self.level),
                _ => format!("ζ{}^{}", self.level, j),
            };
            if power.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "({mag})·{power}")?;
            }
        }
        Ok(())
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.binary(rhs, |a, b| {
            let mut out = vec![Rational::zero(); a.len().max(b.len())];
            for (i, x) in a.iter().enumerate() {
                out[i] += x;
            }
            for (i, x) in b.iter().enumerate() {
                out[i] += x;
            }
            out
        })
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.binary(rhs, poly_sub)
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.binary(rhs, poly_mul)
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            level: self.level,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Zero for CycScalar {
    fn zero() -> Self {
        CycScalar {
            level: 1,
            coeffs: Vec::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for CycScalar {
    fn one() -> Self {
        CycScalar {
            level: 1,
            coeffs: vec![Rational::one()],
        }
    }
}

impl Field for CycScalar {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let level = self.level;
        let modulus: Vec<Rational> = cyclotomic_polynomial(level)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Extended Euclid tracking the cofactor of `self`.
        let (mut r0, mut r1) = (modulus, self.coeffs.clone());
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].clone();
        let inv: Vec<Rational> = s1.into_iter().map(|x| x / &c).collect();
        Some(CycScalar::normalized(level, inv))
    }

    fn from_i64(n: i64) -> Self {
        CycScalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl From<Rational> for CycScalar {
    fn from(r: Rational) -> Self {
        CycScalar::from_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use proptest::prelude::*;

    fn poly(n: u32) -> Vec<i64> {
        cyclotomic_polynomial(n)
            .iter()
            .map(|c| i64::try_from(c.clone()).unwrap())
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials_match_tables() {
        assert_eq!(poly(1), vec![-1, 1]);
        assert_eq!(poly(2), vec![1, 1]);
        assert_eq!(poly(3), vec![1, 1, 1]);
        assert_eq!(poly(4), vec![1, 0, 1]);
        assert_eq!(poly(6), vec![1, -1, 1]);
        assert_eq!(poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        for n in 1..40 {
            assert_eq!(poly(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots_of_unity() {
        let z6 = CycScalar::root_of_unity(6, 1);
        assert_eq!(CycScalar::root_of_unity(6, 3), CycScalar::from_i64(-1));
        assert_eq!(
            CycScalar::root_of_unity(6, 2),
            CycScalar::root_of_unity(3, 1)
        );
        // ζ6 = 1 + ζ3 since ζ3 = ζ6 - 1 with ζ6^2 = ζ6 - 1.
        assert_eq!(
            z6.clone(),
            CycScalar::one() + CycScalar::root_of_unity(3, 1)
        );
        let mut p = CycScalar::one();
        for _ in 0..6 {
            p = &p * &z6;
        }
        assert!(p.is_one());
        // 1 + ζ3 + ζ3^2 = 0.
        let s = CycScalar::one() + CycScalar::root_of_unity(3, 1) + CycScalar::root_of_unity(3, 2);
        assert!(s.is_zero());
        assert_eq!(s.level(), 1);
        assert_eq!(CycScalar::root_of_unity(4, 1).root_exponent(12), Some(3));
        assert_eq!(CycScalar::from_rational(rat(1, 2)).root_exponent(12), None);
    }

    #[test]
    fn inverse_of_gaussian_integer() {
        // (1 + i)^{-1} = (1 - i)/2.
        let i = CycScalar::root_of_unity(4, 1);
        let x = CycScalar::one() + i.clone();
        let expected = &(CycScalar::one() - i) * &CycScalar::from_rational(rat(1, 2));
        assert_eq!(x.inverse().unwrap(), expected);
        assert_eq!(
            CycScalar::from_i64(4).inverse().unwrap().to_rational(),
            Some(rat(1, 4))
        );
        assert_eq!(CycScalar::zero().inverse(), None);
        assert_eq!(rat_int(3), CycScalar::from_i64(3).to_rational().unwrap());
    }

    fn arb_scalar() -> impl Strategy<Value = CycScalar> {
        (
            prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]),
            prop::collection::vec(-4i64..5, 0..5),
        )
            .prop_map(|(level, cs)| {
                cs.iter()
                    .enumerate()
                    .fold(CycScalar::zero(), |acc, (k, &c)| {
                        acc + &CycScalar::from_i64(c) * &CycScalar::root_of_unity(level, k as i64)
                    })
            })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn inverse_is_inverse(a in arb_scalar()) {
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }
    }
}
