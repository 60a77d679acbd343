use std::fmt;
use std::sync::Arc;

use super::arith::{self, Arith, PrimeArith};
use crate::error::GfError;

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// The finite field GF(p^e) with element codes `0..q`.
///
/// Code `c` denotes the polynomial whose base-`p` digits (constant term least
/// significant) are its coefficients, reduced modulo `modulus`. Multiplication
/// goes through discrete log tables built once at construction.
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}
impl Eq for FieldSpec {}

/// Builds GF(p^e) with the lexicographically least monic irreducible modulus.
pub fn make_field(p: u64, e: u32) -> Result<Arc<FieldSpec>, GfError> {
    if !arith::is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if e == 0 {
        return Err(GfError::ZeroDegree);
    }
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(GfError::FieldTooLarge { p, e })?;
    Ok(Arc::new(FieldSpec::build(p as u32, e, q as u32)))
}

/// Builds GF(q) for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<Arc<FieldSpec>, GfError> {
    let (p, e) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
    make_field(p, e)
}

/// Splits `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl FieldSpec {
    fn build(p: u32, e: u32, q: u32) -> FieldSpec {
        let prime = PrimeArith { p };
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            arith::smallest_monic_irreducible(&prime, e as usize)
        };
        let slow_mul = |a: u32, b: u32| -> u32 {
            if e == 1 {
                return prime.mul(a, b);
            }
            let pa = digits(a, p, e);
            let pb = digits(b, p, e);
            let prod = arith::poly_rem(&prime, &arith::poly_mul(&prime, &pa, &pb), &modulus);
            undigits(&prod, p)
        };

        let order = q - 1;
        let factors = prime_factors(order);
        let pow = |mut base: u32, mut k: u32| {
            let mut acc = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                k >>= 1;
            }
            acc
        };
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| order == 1 || pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(x, generator);
        }

        let mut field = FieldSpec {
            p,
            e,
            q,
            modulus,
            exp,
            log,
            neg: Vec::new(),
            add_table: None,
        };
        field.neg = (0..q).map(|a| field.digit_neg(a)).collect();
        if p != 2 && q <= 256 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.digit_add(a, b);
                }
            }
            field.add_table = Some(t);
        }
        field
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn digit_neg(&self, mut a: u32) -> u32 {
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Monic modulus, constant term first. `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Every element is a code in `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

impl Arith for FieldSpec {
    fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.digit_add(a, b)
        }
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= order { s - order } else { s }) as usize]
    }

    #[inline]
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let order = self.q - 1;
        let l = self.log[a as usize];
        self.exp[(if l == 0 { 0 } else { order - l }) as usize]
    }
}

fn digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(a % p);
        a /= p;
    }
    arith::trim(d)
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_is_trivial_modulus() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_modulus() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        // x^2+1 has no root in GF(3) and c0 = 0 candidates are reducible
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), GfError::ZeroDegree);
        assert!(matches!(make_field(2, 21), Err(GfError::FieldTooLarge { .. })));
        assert!(make_field(2, 20).is_ok());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(64), Some((2, 6)));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1), (2, 4), (2, 6)] {
            let f = make_field(p, e).unwrap();
            let q = f.q();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
