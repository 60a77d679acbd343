use serde::Serialize;

use crate::error::ArtifactError;
use crate::gf::{Ambient, Subspace};
use crate::partition::Partition;

/// Codewords are listed only when `prod q^{n_i}` is at most this.
pub const MATERIALIZE_LIMIT: u128 = 1 << 24;
/// Codes up to this size have their minimum distance found by comparing
/// every pair of codewords.
pub const PAIRWISE_LIMIT: u128 = 1 << 12;

/// The code `{(y_1, ..., y_r) : y_i ∈ V_i, sum y_i = 0}` of a partition.
///
/// Each `y_i` is stored as the integer code of its coordinate vector in the
/// canonical basis of `V_i` (first coordinate most significant).
#[derive(Clone, Debug, Serialize)]
pub struct MixedCode {
    pub q: u32,
    pub n: usize,
    /// Component dimensions, in partition order.
    pub dims: Vec<usize>,
    /// Dimension of the code over GF(q): `sum n_i - rank`.
    pub dimension: usize,
    /// `q^dimension`, if it fits.
    pub size: Option<u128>,
    /// Every codeword, when the ambient product is small enough.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codewords: Option<Vec<Vec<u64>>>,
    #[serde(skip)]
    components: Vec<Subspace>,
}

impl MixedCode {
    pub fn length(&self) -> usize {
        self.dims.len()
    }

    /// `q^{n_i}` per coordinate, if they fit.
    pub fn alphabet_sizes(&self) -> Vec<Option<u128>> {
        self.dims.iter().map(|&d| (self.q as u128).checked_pow(d as u32)).collect()
    }

    /// `prod q^{n_i}`, if it fits.
    pub fn space_size(&self) -> Option<u128> {
        let total: usize = self.dims.iter().sum();
        (self.q as u128).checked_pow(total as u32)
    }
}

/// Builds the code of `p`. Codewords are enumerated from a basis of the
/// solution space of `sum y_i = 0` when `prod q^{n_i} <= 2^24`.
pub fn code_from_partition(p: &Partition) -> Result<MixedCode, ArtifactError> {
    let q = p.q();
    let n = p.n();
    let comps = p.components();
    let dims: Vec<usize> = comps.iter().map(Subspace::dim).collect();
    let total: usize = dims.iter().sum();
    // the columns of the stacked basis matrix; the code is their orthogonal space
    let big = p.ambient().with_dim(total);
    let rows: Vec<&Vec<u32>> = comps.iter().flat_map(|c| c.rows()).collect();
    let columns: Vec<Vec<u32>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let kernel = Subspace::span(&big, &columns)?.perp();
    let dimension = kernel.dim();
    let size = (q as u128).checked_pow(dimension as u32);
    let space = (q as u128).checked_pow(total as u32);
    let codewords = match space {
        Some(s) if s <= MATERIALIZE_LIMIT => Some(enumerate_words(&kernel, &dims)?),
        _ => None,
    };
    Ok(MixedCode {
        q,
        n,
        dims,
        dimension,
        size,
        codewords,
        components: comps.to_vec(),
    })
}

fn enumerate_words(kernel: &Subspace, dims: &[usize]) -> Result<Vec<Vec<u64>>, ArtifactError> {
    let big: &Ambient = kernel.ambient();
    let q = big.q() as u64;
    let mut vectors = vec![vec![0u32; big.n()]];
    vectors.extend(kernel.enumerate_nonzero()?.into_iter().map(|v| v.0));
    Ok(vectors
        .iter()
        .map(|v| {
            let mut word = Vec::with_capacity(dims.len());
            let mut at = 0;
            for &d in dims {
                word.push(v[at..at + d].iter().fold(0u64, |acc, &c| acc * q + c as u64));
                at += d;
            }
            word
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    /// Every pair of codewords compared.
    Pairwise,
    /// Least weight of a nonzero codeword (the code is linear).
    MinWeight,
    /// No codeword of weight 1 or 2: components are nonzero and pairwise
    /// disjoint. Gives only the bound, not the exact distance.
    Structural,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectReport {
    /// `|W| * (1 + sum (q^{n_i} - 1))`
    pub sphere_volume_total: Option<u128>,
    /// `prod q^{n_i}`
    pub space_size: Option<u128>,
    pub sphere_packing: bool,
    pub distance_method: DistanceMethod,
    /// Exact minimum distance, when computed and the code has two words.
    pub min_distance: Option<usize>,
    pub min_distance_at_least_3: bool,
    pub perfect: bool,
}

fn hamming(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Checks that radius-1 spheres tile the space and that distinct codewords
/// differ in at least three coordinates.
pub fn verify_perfect(c: &MixedCode) -> PerfectReport {
    let q = c.q as u128;
    let sphere = c
        .dims
        .iter()
        .try_fold(1u128, |acc, &d| q.checked_pow(d as u32).and_then(|x| acc.checked_add(x - 1)));
    let sphere_volume_total = c.size.zip(sphere).and_then(|(s, v)| s.checked_mul(v));
    let space_size = c.space_size();
    let sphere_packing = match (sphere_volume_total, space_size) {
        (Some(a), Some(b)) => a == b,
        // 1 + sum(q^{n_i} - 1) = q^{sum n_i - dimension} in exact arithmetic
        _ => false,
    };

    let (distance_method, min_distance, min_distance_at_least_3) = match &c.codewords {
        Some(words) if (words.len() as u128) <= PAIRWISE_LIMIT => {
            let mut best: Option<usize> = None;
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    let d = hamming(&words[i], &words[j]);
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
            }
            (DistanceMethod::Pairwise, best, best.is_none_or(|d| d >= 3))
        }
        Some(words) => {
            let best = words.iter().map(|w| w.iter().filter(|&&y| y != 0).count()).filter(|&w| w > 0).min();
            (DistanceMethod::MinWeight, best, best.is_none_or(|d| d >= 3))
        }
        None => {
            let ok = c.components.iter().all(|s| !s.is_zero())
                && (0..c.components.len()).all(|j| {
                    (0..j).all(|i| c.components[i].meets_trivially(&c.components[j]).unwrap_or(false))
                });
            (DistanceMethod::Structural, None, ok)
        }
    };
    PerfectReport {
        sphere_volume_total,
        space_size,
        sphere_packing,
        distance_method,
        min_distance,
        min_distance_at_least_3,
        perfect: sphere_packing && min_distance_at_least_3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::spread;

    #[test]
    fn spread_v4_code() {
        let c = code_from_partition(&spread(2, 4, 2).unwrap()).unwrap();
        assert_eq!(c.size, Some(64));
        assert_eq!(c.codewords.as_ref().unwrap().len(), 64);
        let rep = verify_perfect(&c);
        assert_eq!(rep.sphere_volume_total, Some(1024));
        assert_eq!(rep.min_distance, Some(3));
        assert!(rep.perfect);
    }

    #[test]
    fn line_spread_code() {
        let c = code_from_partition(&spread(2, 2, 1).unwrap()).unwrap();
        let words = c.codewords.clone().unwrap();
        assert_eq!(words.len(), 2);
        assert!(words.contains(&vec![0, 0, 0]));
        assert!(words.contains(&vec![1, 1, 1]));
        let rep = verify_perfect(&c);
        assert_eq!(rep.sphere_volume_total, Some(8));
        assert!(rep.perfect);
    }

    #[test]
    fn trivial_code_is_zero_word() {
        let c = code_from_partition(&spread(3, 2, 2).unwrap()).unwrap();
        assert_eq!(c.codewords.as_ref().unwrap(), &vec![vec![0]]);
        assert!(verify_perfect(&c).perfect);
    }

    #[test]
    fn codewords_sum_to_zero_and_are_closed() {
        let p = spread(3, 4, 2).unwrap();
        let c = code_from_partition(&p).unwrap();
        assert_eq!(c.size, Some(3u128.pow(20) / 81));
        assert!(c.codewords.is_none());
        let rep = verify_perfect(&c);
        assert_eq!(rep.distance_method, DistanceMethod::Structural);
        assert!(rep.perfect);
    }

    #[test]
    fn overlapping_cover_fails() {
        let p = spread(2, 4, 2).unwrap();
        let a = p.ambient().clone();
        let mut comps = p.components().to_vec();
        comps.push(Subspace::span(&a, [comps[0].rows()[0].clone()]).unwrap());
        let c = code_from_partition(&Partition::new(a, comps).unwrap()).unwrap();
        let rep = verify_perfect(&c);
        assert!(!rep.sphere_packing);
        assert!(!rep.min_distance_at_least_3);
    }
}
