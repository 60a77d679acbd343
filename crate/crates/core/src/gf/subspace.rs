use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

use super::arith::Arith;
use super::space::{Ambient, Vector};
use crate::error::GfError;

/// Element enumeration limit for a single subspace.
pub const MAX_ENUMERATION: u64 = 1 << 24;

/// A subspace of V_n(q) stored by its reduced row-echelon basis.
///
/// The basis is canonical: equal subspaces have identical rows. Ordering is
/// lexicographic on the flattened basis, which is the canonical component
/// order used throughout the crate.
#[derive(Clone)]
pub struct Subspace {
    ambient: Ambient,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.rows)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}
impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.n().hash(state);
        self.rows.hash(state);
    }
}

/// Serializes as the list of canonical basis rows.
impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows
            .iter()
            .flatten()
            .cmp(other.rows.iter().flatten())
    }
}

/// Row-reduces in place, returning the pivot columns. Zero rows are dropped.
fn rref(ambient: &Ambient, mut rows: Vec<Vec<u32>>) -> (Vec<Vec<u32>>, Vec<usize>) {
    let f = ambient.field();
    let n = ambient.n();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = f.inv(rows[r][col]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = f.neg(row[col]);
                ambient.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

impl Subspace {
    /// Span of the given vectors, in canonical form.
    pub fn span<I, V>(ambient: &Ambient, vectors: I) -> Result<Subspace, GfError>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut rows = Vec::new();
        for v in vectors {
            let v = v.as_ref();
            ambient.check(v)?;
            rows.push(v.to_vec());
        }
        let (rows, pivots) = rref(ambient, rows);
        Ok(Subspace {
            ambient: ambient.clone(),
            rows,
            pivots,
        })
    }

    pub fn zero(ambient: &Ambient) -> Subspace {
        Subspace {
            ambient: ambient.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: &Ambient) -> Subspace {
        Subspace::coordinate(ambient, 0..ambient.n())
    }

    /// Span of the unit vectors with the given (increasing) indices.
    pub fn coordinate(ambient: &Ambient, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let mut pivots: Vec<usize> = indices.into_iter().collect();
        pivots.sort_unstable();
        pivots.dedup();
        let rows = pivots.iter().map(|&i| ambient.unit(i).0).collect();
        Subspace {
            ambient: ambient.clone(),
            rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn same_ambient(&self, other: &Subspace) -> Result<(), GfError> {
        if self.ambient.n() != other.ambient.n() {
            return Err(GfError::DimensionMismatch {
                expected: self.ambient.n(),
                found: other.ambient.n(),
            });
        }
        if self.ambient != other.ambient {
            return Err(GfError::AmbientMismatch);
        }
        Ok(())
    }

    /// Canonical representative of the coset `v + self`: zero at every pivot.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        let f = self.ambient.field();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p] != 0 {
                let c = f.neg(out[p]);
                self.ambient.axpy(&mut out, c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool, GfError> {
        self.ambient.check(v)?;
        Ok(self.reduce(v).iter().all(|&c| c == 0))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords_of(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.reduce(v).iter().any(|&c| c != 0) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// The vector `sum_j coords[j] * basis[j]`.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        debug_assert_eq!(coords.len(), self.dim());
        let mut out = vec![0u32; self.ambient.n()];
        for (row, &c) in self.rows.iter().zip(coords) {
            self.ambient.axpy(&mut out, c, row);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.reduce(r).iter().all(|&c| c == 0))
    }

    /// Orthogonal space under the standard dot product.
    pub fn perp(&self) -> Subspace {
        let n = self.ambient.n();
        let f = self.ambient.field();
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let basis: Vec<Vec<u32>> = free
            .iter()
            .map(|&col| {
                let mut x = vec![0u32; n];
                x[col] = 1;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = f.neg(row[col]);
                }
                x
            })
            .collect();
        let (rows, pivots) = rref(&self.ambient, basis);
        Subspace {
            ambient: self.ambient.clone(),
            rows,
            pivots,
        }
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace, GfError> {
        self.same_ambient(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        let (rows, pivots) = rref(&self.ambient, rows);
        Ok(Subspace {
            ambient: self.ambient.clone(),
            rows,
            pivots,
        })
    }

    /// Intersection, computed as `(a^perp + b^perp)^perp`.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, GfError> {
        self.same_ambient(other)?;
        Ok(self.perp().join(&other.perp())?.perp())
    }

    /// True when the two subspaces intersect only in zero.
    pub fn meets_trivially(&self, other: &Subspace) -> Result<bool, GfError> {
        Ok(self.join(other)?.dim() == self.dim() + other.dim())
    }

    /// A complement: the orthogonal space when it meets `self` trivially,
    /// otherwise the span of the unit vectors at the non-pivot columns.
    pub fn complement(&self) -> Subspace {
        let perp = self.perp();
        if self.meets_trivially(&perp).unwrap_or(false) {
            return perp;
        }
        let free = (0..self.ambient.n()).filter(|c| !self.pivots.contains(c));
        Subspace::coordinate(&self.ambient, free)
    }

    /// `q^dim`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        (self.ambient.q() as u64).checked_pow(self.dim() as u32)
    }

    fn check_enumerable(&self) -> Result<u64, GfError> {
        match self.size() {
            Some(s) if s <= MAX_ENUMERATION => Ok(s),
            other => Err(GfError::TooLarge {
                count: other.map_or(u128::MAX, u128::from),
                limit: MAX_ENUMERATION as u128,
            }),
        }
    }

    /// Integer codes of the nonzero elements, ascending.
    pub fn nonzero_codes(&self) -> Result<Vec<u64>, GfError> {
        let size = self.check_enumerable()?;
        let amb = &self.ambient;
        let mut codes = Vec::with_capacity(size as usize - 1);
        if amb.q() == 2 {
            // binary: vector addition is XOR of codes, walk a Gray code
            let row_codes: Vec<u64> = self.rows.iter().map(|r| amb.encode(r)).collect();
            let mut acc = 0u64;
            for i in 1..size {
                acc ^= row_codes[i.trailing_zeros() as usize];
                codes.push(acc);
            }
        } else {
            let q = amb.q() as u64;
            let d = self.dim();
            let mut coords = vec![0u32; d];
            for mut idx in 1..size {
                for c in coords.iter_mut() {
                    *c = (idx % q) as u32;
                    idx /= q;
                }
                codes.push(amb.encode(&self.combine(&coords)));
            }
        }
        codes.sort_unstable();
        Ok(codes)
    }

    /// The `q^d - 1` nonzero vectors, ordered by integer encoding.
    pub fn enumerate_nonzero(&self) -> Result<Vec<Vector>, GfError> {
        Ok(self
            .nonzero_codes()?
            .into_iter()
            .map(|c| self.ambient.decode(c))
            .collect())
    }

    /// Copy into a larger ambient space, shifting coordinates by `offset`.
    pub fn embed(&self, target: &Ambient, offset: usize) -> Subspace {
        assert!(offset + self.ambient.n() <= target.n());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![0u32; target.n()];
                v[offset..offset + r.len()].copy_from_slice(r);
                v
            })
            .collect();
        let pivots = self.pivots.iter().map(|p| p + offset).collect();
        Subspace {
            ambient: target.clone(),
            rows,
            pivots,
        }
    }

    /// Re-expresses a subspace of `self` in the coordinates of this
    /// subspace's canonical basis. Returns `None` unless `inner ⊆ self`.
    pub fn relative(&self, inner: &Subspace) -> Option<Subspace> {
        let local = self.ambient.with_dim(self.dim());
        let rows: Option<Vec<Vec<u32>>> = inner.rows.iter().map(|r| self.coords_of(r)).collect();
        let (rows, pivots) = rref(&local, rows?);
        Some(Subspace {
            ambient: local,
            rows,
            pivots,
        })
    }

    /// Inverse of [`relative`](Self::relative): maps a subspace given in this
    /// subspace's coordinates back into the ambient space.
    pub fn absolute(&self, local: &Subspace) -> Subspace {
        assert_eq!(local.ambient.n(), self.dim());
        let rows = local.rows.iter().map(|c| self.combine(c)).collect();
        let (rows, pivots) = rref(&self.ambient, rows);
        Subspace {
            ambient: self.ambient.clone(),
            rows,
            pivots,
        }
    }
}
