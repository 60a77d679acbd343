use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::arith::Arith;
use super::field::FieldSpec;
use crate::error::GfError;

/// A coordinate vector of field-element codes.
///
/// Ordering is lexicographic on coordinates, which coincides with the order
/// of [`Ambient::encode`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vector(pub Vec<u32>);

impl Vector {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<Vec<u32>> for Vector {
    fn from(v: Vec<u32>) -> Self {
        Vector(v)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The space V_n(q): a field together with a dimension.
#[derive(Clone)]
pub struct Ambient {
    field: Arc<FieldSpec>,
    n: usize,
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V_{}({})", self.n, self.field.q())
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}
impl Eq for Ambient {}

impl Ambient {
    pub fn new(field: Arc<FieldSpec>, n: usize) -> Ambient {
        Ambient { field, n }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Same field, different dimension.
    pub fn with_dim(&self, n: usize) -> Ambient {
        Ambient::new(self.field.clone(), n)
    }

    /// `q^n`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.n as u32)
    }

    pub fn check(&self, v: &[u32]) -> Result<(), GfError> {
        if v.len() != self.n {
            return Err(GfError::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let q = self.q();
        if let Some(&bad) = v.iter().find(|&&c| c >= q) {
            return Err(GfError::BadCoordinate { value: bad, q });
        }
        Ok(())
    }

    /// Integer code of a vector, first coordinate most significant.
    #[inline]
    pub fn encode(&self, v: &[u32]) -> u64 {
        let q = self.q() as u64;
        v.iter().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn decode(&self, mut code: u64) -> Vector {
        let q = self.q() as u64;
        let mut v = vec![0u32; self.n];
        for slot in v.iter_mut().rev() {
            *slot = (code % q) as u32;
            code /= q;
        }
        Vector(v)
    }

    pub fn zero(&self) -> Vector {
        Vector(vec![0; self.n])
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![0; self.n];
        v[i] = 1;
        Vector(v)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    /// `a += c * b`
    pub fn axpy(&self, a: &mut [u32], c: u32, b: &[u32]) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = f.add(*x, f.mul(c, y));
        }
    }
}
