//! Exact arithmetic in the cyclotomic field Q(zeta_M).
//!
//! Elements are stored in the power basis of a primitive M-th root of
//! unity, reduced modulo the M-th cyclotomic polynomial, so equality is
//! coefficient-wise and every eigenvalue of a finite-order automorphism
//! is represented without rounding.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Mutex;

use crate::error::AlgebraError;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Euler's totient, by trial-division factorization.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        phi = phi / n * (n - 1);
    }
    phi
}

/// Monic integer coefficients of the M-th cyclotomic polynomial,
/// low degree first, computed by exact division of x^M - 1 by the
/// cyclotomic polynomials of the proper divisors of M.
fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    // x^m - 1
    let mut num = vec![BigInt::from(-1)];
    num.extend(std::iter::repeat(BigInt::zero()).take(m as usize - 1));
    num.push(BigInt::one());
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_cached(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic; the division is exact by construction.
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let idx = i - dn + j;
            let sub = &c * dc;
            rem[idx] -= sub;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn cyclotomic_cached(m: u64) -> Vec<BigInt> {
    static CACHE: Mutex<Option<HashMap<u64, Vec<BigInt>>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    if let Some(p) = map.get(&m) {
        return p.clone();
    }
    let p = cyclotomic_poly(m);
    map.insert(m, p.clone());
    p
}

/// An exact element of Q(zeta_M) in the power basis of zeta_M.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloScalar {
    modulus: u64,
    /// exactly phi(M) coefficients, low power first
    coeffs: Vec<Rat>,
}

impl CycloScalar {
    pub fn zero(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        CycloScalar {
            modulus,
            coeffs: vec![Rat::zero(); euler_phi(modulus) as usize],
        }
    }

    pub fn one(modulus: u64) -> Self {
        Self::from_rational(modulus, Rat::one())
    }

    pub fn from_rational(modulus: u64, r: Rat) -> Self {
        let mut s = Self::zero(modulus);
        s.coeffs[0] = r;
        s
    }

    pub fn from_int(modulus: u64, n: i64) -> Self {
        Self::from_rational(modulus, rat_int(n))
    }

    /// zeta_M^e, canonical form. `e` may be any integer.
    pub fn root_of_unity(modulus: u64, e: i64) -> Result<Self, AlgebraError> {
        if modulus == 0 {
            return Err(AlgebraError::InvalidModulus);
        }
        let m = modulus as i64;
        let e = e.rem_euclid(m) as usize;
        let phi = euler_phi(modulus) as usize;
        let mut raw = vec![Rat::zero(); e + 1];
        raw[e] = Rat::one();
        let coeffs = reduce_mod_cyclotomic(raw, modulus, phi);
        Ok(CycloScalar { modulus, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_modulus(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.modulus != other.modulus {
            Err(AlgebraError::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloScalar {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_modulus(other)?;
        let phi = self.coeffs.len();
        let mut raw = vec![Rat::zero(); 2 * phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        let coeffs = reduce_mod_cyclotomic(raw, self.modulus, phi);
        Ok(CycloScalar {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the (irreducible) cyclotomic modulus.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let phi = self.coeffs.len();
        if phi == 1 {
            let mut out = self.clone();
            out.coeffs[0] = Rat::one() / &self.coeffs[0];
            return Ok(out);
        }
        let modulus_poly: Vec<Rat> = cyclotomic_cached(self.modulus)
            .into_iter()
            .map(BigRational::from)
            .collect();
        // extended gcd: r0 = modulus, r1 = self; track s only against self.
        let mut r0 = modulus_poly;
        let mut r1 = trim(self.coeffs.clone());
        let mut t0: Vec<Rat> = vec![];
        let mut t1: Vec<Rat> = vec![Rat::one()];
        while poly_deg(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r1 is a nonzero constant: gcd up to scale
        let c = r1[0].clone();
        debug_assert!(!c.is_zero());
        let mut inv_coeffs: Vec<Rat> = t1.iter().map(|t| t / &c).collect();
        inv_coeffs.resize(phi, Rat::zero());
        let coeffs = reduce_mod_cyclotomic(inv_coeffs, self.modulus, phi);
        Ok(CycloScalar {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Multiplicative order, or None when the element is not a root of unity
    /// found within `limit` steps.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.checked_mul(self).expect("same modulus");
        }
        None
    }

    /// Embed into Q(zeta_N) for M | N via zeta_M = zeta_N^{N/M}.
    pub fn promote(&self, new_modulus: u64) -> Result<Self, AlgebraError> {
        if new_modulus % self.modulus != 0 {
            return Err(AlgebraError::ModulusMismatch {
                left: self.modulus,
                right: new_modulus,
            });
        }
        if new_modulus == self.modulus {
            return Ok(self.clone());
        }
        let step = (new_modulus / self.modulus) as i64;
        let mut out = CycloScalar::zero(new_modulus);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = CycloScalar::root_of_unity(new_modulus, i as i64 * step)?;
            term.scale(c);
            out += term;
        }
        Ok(out)
    }

    fn scale(&mut self, by: &Rat) {
        for c in &mut self.coeffs {
            *c *= by;
        }
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_deg(p: &[Rat]) -> usize {
    let mut d = 0;
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            d = i;
        }
    }
    d
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let nd = poly_deg(&rem);
    if nd < dd {
        return (vec![Rat::zero()], trim(rem));
    }
    let mut quot = vec![Rat::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        if rem.len() <= i || rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        quot[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate().take(dd + 1) {
            let sub = &c * dc;
            rem[i - dd + j] -= sub;
        }
    }
    (trim(quot), trim(rem))
}

/// Reduce a raw power-basis polynomial in zeta_M to degree < phi(M) by the
/// cyclotomic relation, using x^M = 1 first to keep intermediate degrees low.
fn reduce_mod_cyclotomic(mut raw: Vec<Rat>, modulus: u64, phi: usize) -> Vec<Rat> {
    let m = modulus as usize;
    if raw.len() > m {
        for i in (m..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[i], Rat::zero());
            raw[i - m] += c;
        }
        raw.truncate(m);
    }
    let cyc = cyclotomic_cached(modulus);
    for i in (phi..raw.len()).rev() {
        if raw[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut raw[i], Rat::zero());
        // x^i = -c * (lower terms of cyclotomic) * x^{i-phi}
        for (j, cc) in cyc.iter().enumerate().take(phi) {
            raw[i - phi + j] -= &c * &BigRational::from(cc.clone());
        }
    }
    raw.truncate(phi.max(1));
    raw.resize(phi, Rat::zero());
    raw
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "z{}^{}", self.modulus, i)?;
            } else {
                write!(f, "{}*z{}^{}", a, self.modulus, i)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self + &(-rhs)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
}

impl AddAssign<CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: CycloScalar) {
        *self = (&*self) + &rhs;
    }
}

impl SubAssign<CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: CycloScalar) {
        *self = (&*self) - &rhs;
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = (&*self) * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_trivial_cases() {
        let one = CycloScalar::root_of_unity(1, 0).unwrap();
        assert!(one.is_one());
        let minus_one = CycloScalar::root_of_unity(2, 1).unwrap();
        assert_eq!(minus_one, CycloScalar::from_int(2, -1));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        // oracle: multiply zeta_4 * zeta_4 through cyclotomic reduction
        let i = CycloScalar::root_of_unity(4, 1).unwrap();
        let sq = &i * &i;
        assert_eq!(sq, CycloScalar::from_int(4, -1));
        assert_eq!(sq, CycloScalar::root_of_unity(4, 2).unwrap());
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(CycloScalar::root_of_unity(0, 1).is_err());
    }

    #[test]
    fn cyclotomic_sum_relation() {
        // 1 + x + x^2 = 0 at x = zeta_3, so zeta_3 + zeta_3^2 = -1
        let a = CycloScalar::root_of_unity(3, 1).unwrap();
        let b = CycloScalar::root_of_unity(3, 2).unwrap();
        assert_eq!(&a + &b, CycloScalar::from_int(3, -1));
    }

    #[test]
    fn neg_zero_is_zero() {
        let z = CycloScalar::zero(6);
        assert_eq!(-&z, z);
    }

    #[test]
    fn inversion_of_zero_rejected() {
        assert!(CycloScalar::zero(5).inv().is_err());
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let a = CycloScalar::one(2);
        let b = CycloScalar::one(3);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn mul_inverse_for_sampled_nonzero_elements() {
        for m in [1u64, 2, 3, 4, 5, 6, 8, 12] {
            let phi = euler_phi(m) as usize;
            for seed in 0..8i64 {
                let mut a = CycloScalar::zero(m);
                for i in 0..phi {
                    a.coeffs[i] = rat((seed * 7 + i as i64 * 3) % 5 - 2, 1 + (i as i64 % 3));
                }
                if a.is_zero() {
                    continue;
                }
                let prod = &a * &a.inv().unwrap();
                assert!(prod.is_one(), "a * a^-1 != 1 for m={m} seed={seed}");
            }
        }
    }

    #[test]
    fn order_of_root_of_unity() {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for m in 1..=12u64 {
            for e in 0..m {
                let z = CycloScalar::root_of_unity(m, e as i64).unwrap();
                let expected = m / gcd(m, e);
                assert_eq!(
                    z.multiplicative_order(2 * m),
                    Some(expected),
                    "order of zeta_{m}^{e}"
                );
            }
        }
    }

    #[test]
    fn field_axioms_on_samples() {
        let m = 12;
        let phi = euler_phi(m) as usize;
        let sample = |s: i64| {
            let mut a = CycloScalar::zero(m);
            for i in 0..phi {
                a.coeffs[i] = rat((s * 31 + i as i64 * 17) % 7 - 3, 1 + ((s + i as i64) % 4).abs());
            }
            a
        };
        for s in 0..6 {
            let (a, b, c) = (sample(s), sample(s + 11), sample(s + 23));
            // associativity
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            // distributivity
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // commutativity
            assert_eq!(&a * &b, &b * &a);
        }
    }

    #[test]
    fn promote_embeds_compatibly() {
        let z3 = CycloScalar::root_of_unity(3, 1).unwrap();
        let z6 = z3.promote(6).unwrap();
        assert_eq!(z6, CycloScalar::root_of_unity(6, 2).unwrap());
        let r = CycloScalar::from_rational(1, rat(7, 3)).promote(12).unwrap();
        assert_eq!(r, CycloScalar::from_rational(12, rat(7, 3)));
    }
}
