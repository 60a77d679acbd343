//! Coefficient arithmetic shared by the prime field, GF(p^e) and its
//! extensions, plus dense univariate polynomials over any of them.
//!
//! Polynomials are coefficient vectors, constant term first, with no
//! trailing zeros. The zero polynomial is the empty vector.

/// Minimal field interface over element codes `0..order()`.
pub trait Arith {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

/// Integers modulo a prime.
#[derive(Debug, Clone, Copy)]
pub struct PrimeArith {
    pub p: u32,
}

impl Arith for PrimeArith {
    fn order(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        // a^(p-2) by square and multiply
        let (mut base, mut exp, mut acc) = (a as u64, self.p as u64 - 2, 1u64);
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn poly_mul<A: Arith + ?Sized>(f: &A, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub(crate) fn poly_rem<A: Arith + ?Sized>(f: &A, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = f.inv(m[dm]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &mc) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
        }
        r = trim(r);
    }
    r
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-`q` digits of `code`, constant term least significant.
pub(crate) fn monic_from_code(q: u32, degree: usize, mut code: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        c.push((code % q as u64) as u32);
        code /= q as u64;
    }
    c.push(1);
    c
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible<A: Arith + ?Sized>(f: &A, poly: &[u32]) -> bool {
    let Some(deg) = degree(poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    let q = f.order();
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for code in 0..count {
            let g = monic_from_code(q, d, code);
            if poly_rem(f, poly, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of the given degree that is smallest
/// when coefficients are compared from the constant term upward.
pub(crate) fn smallest_monic_irreducible<A: Arith + ?Sized>(f: &A, deg: usize) -> Vec<u32> {
    let q = f.order() as u64;
    let count = q.pow(deg as u32);
    for idx in 0..count {
        // constant term is the most significant digit of the ordering key
        let mut c = vec![0u32; deg + 1];
        let mut rest = idx;
        for i in (0..deg).rev() {
            c[i] = (rest % q) as u32;
            rest /= q;
        }
        c[deg] = 1;
        if is_irreducible(f, &c) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_inverse() {
        let f = PrimeArith { p: 7 };
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rem_by_linear() {
        let f = PrimeArith { p: 3 };
        // x^2 + 1 mod (x - 1) = 2
        assert_eq!(poly_rem(&f, &[1, 0, 1], &[2, 1]), vec![2]);
    }

    #[test]
    fn smallest_irreducibles_match_root_oracle() {
        for p in [2u32, 3, 5] {
            let f = PrimeArith { p };
            let got = smallest_monic_irreducible(&f, 2);
            // root-free monic quadratics, scanned with the constant term most significant
            let mut want = None;
            'outer: for c0 in 0..p {
                for c1 in 0..p {
                    let roots = (0..p).any(|x| (x * x + c1 * x + c0) % p == 0);
                    if !roots {
                        want = Some(vec![c0, c1, 1]);
                        break 'outer;
                    }
                }
            }
            assert_eq!(Some(got), want, "p = {p}");
        }
    }
}
