use std::sync::Arc;

use super::arith::{self, Arith};
use super::field::FieldSpec;

/// GF(q^m) as GF(q)[x]/(f), elements stored as length-`m` coefficient
/// vectors over the base field in the power basis `1, x, ..., x^(m-1)`.
///
/// This is the identification of an `m`-dimensional GF(q)-space with a
/// larger field used by the spread and lift constructions.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: Arc<FieldSpec>,
    degree: usize,
    modulus: Vec<u32>,
}

impl ExtField {
    pub fn new(base: Arc<FieldSpec>, degree: usize) -> ExtField {
        assert!(degree >= 1, "extension degree must be positive");
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            arith::smallest_monic_irreducible(base.as_ref(), degree)
        };
        ExtField {
            base,
            degree,
            modulus,
        }
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements, `q^m`.
    pub fn order(&self) -> u64 {
        (self.base.q() as u64).pow(self.degree as u32)
    }

    /// Element with base-`q` digits of `code` as coordinates.
    pub fn from_code(&self, mut code: u64) -> Vec<u32> {
        let q = self.base.q() as u64;
        (0..self.degree)
            .map(|_| {
                let c = (code % q) as u32;
                code /= q;
                c
            })
            .collect()
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.degree];
        v[0] = 1;
        v
    }

    /// The power-basis element `x^j`, `j < m`.
    pub fn basis(&self, j: usize) -> Vec<u32> {
        let mut v = vec![0; self.degree];
        v[j] = 1;
        v
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.base.as_ref();
        let prod = arith::poly_mul(f, &arith::trim(a.to_vec()), &arith::trim(b.to_vec()));
        let mut r = arith::poly_rem(f, &prod, &self.modulus);
        r.resize(self.degree, 0);
        r
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn multiplicative_group_has_full_order() {
        for (q, m) in [(2u64, 2usize), (2, 3), (3, 2), (4, 2), (2, 4)] {
            let base = crate::gf::field_of_order(q).unwrap();
            let ext = ExtField::new(base, m);
            let order = ext.order();
            // every nonzero element has an inverse: x -> a*x is injective
            for a in 1..order {
                let a = ext.from_code(a);
                let mut seen = std::collections::HashSet::new();
                for b in 1..order {
                    let prod = ext.mul(&a, &ext.from_code(b));
                    assert!(!ext.is_zero(&prod));
                    assert!(seen.insert(prod));
                }
            }
        }
    }

    #[test]
    fn gf4_over_gf2_uses_x2_x_1() {
        let ext = ExtField::new(make_field(2, 1).unwrap(), 2);
        assert_eq!(ext.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(ext.mul(&ext.basis(1), &ext.basis(1)), vec![1, 1]);
    }
}
