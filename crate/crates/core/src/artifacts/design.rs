use std::collections::HashMap;

use serde::Serialize;

use crate::error::ArtifactError;
use crate::partition::Partition;

/// Largest point set a design may have.
pub const DESIGN_LIMIT: u64 = 1 << 16;
/// Up to this many points every pair is checked explicitly.
pub const EXPLICIT_PAIRS_LIMIT: u64 = 1 << 10;

/// Points are the vectors of V_n(q); each component `V_i` contributes the
/// class of its cosets `v + V_i`.
#[derive(Clone, Debug)]
pub struct CosetDesign {
    partition: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub dim: usize,
    pub blocks: u64,
    pub block_size: u64,
}

impl CosetDesign {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn points(&self) -> u64 {
        self.partition.ambient().size().expect("checked on construction")
    }

    /// Expected shape of each class: `q^{n - n_i}` blocks of size `q^{n_i}`.
    pub fn classes(&self) -> Vec<ClassSummary> {
        let q = self.partition.q() as u64;
        let n = self.partition.n();
        self.partition
            .components()
            .iter()
            .map(|c| ClassSummary {
                dim: c.dim(),
                blocks: q.pow((n - c.dim()) as u32),
                block_size: q.pow(c.dim() as u32),
            })
            .collect()
    }

    /// Block of `point` in class `i`, named by the code of its coset
    /// representative.
    pub fn block_of(&self, class: usize, point: u64) -> u64 {
        let a = self.partition.ambient();
        let v = a.decode(point);
        a.encode(&self.partition.components()[class].reduce(&v.0))
    }
}

pub fn design_from_partition(p: &Partition) -> Result<CosetDesign, ArtifactError> {
    match p.ambient().size() {
        Some(s) if s <= DESIGN_LIMIT => Ok(CosetDesign { partition: p.clone() }),
        s => Err(ArtifactError::TooLarge {
            what: "point set",
            size: s.map_or(u128::MAX, u128::from),
            limit: DESIGN_LIMIT as u128,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMethod {
    /// Every unordered pair counted against every class.
    Explicit,
    /// Two points share a block of class `i` exactly when their difference
    /// lies in `V_i`, so each nonzero vector is counted once instead.
    Difference,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesignReport {
    pub points: u64,
    pub classes: usize,
    /// Each class splits the points into blocks of the expected number and
    /// size.
    pub classes_resolve: bool,
    pub pair_method: PairMethod,
    pub pairs_checked: u128,
    /// Every pair of distinct points lies in exactly one block.
    pub lambda_one: bool,
    /// Translating by the sample vectors permutes blocks within each class.
    pub translation_invariant: bool,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
}

pub fn verify_design(d: &CosetDesign) -> DesignReport {
    let points = d.points();
    let p = d.partition();
    let a = p.ambient();
    let expected = d.classes();
    let mut problem = None;

    // block label of every point, per class
    let labels: Vec<Vec<u64>> = (0..p.r()).map(|i| (0..points).map(|x| d.block_of(i, x)).collect()).collect();

    let mut classes_resolve = true;
    for (i, (lab, want)) in labels.iter().zip(&expected).enumerate() {
        let mut sizes: HashMap<u64, u64> = HashMap::new();
        for &l in lab {
            *sizes.entry(l).or_default() += 1;
        }
        let ok = sizes.len() as u64 == want.blocks && sizes.values().all(|&s| s == want.block_size);
        if !ok && classes_resolve {
            classes_resolve = false;
            problem.get_or_insert_with(|| format!("class {i} does not split the points evenly"));
        }
    }

    let (pair_method, pairs_checked, lambda_one) = if points <= EXPLICIT_PAIRS_LIMIT {
        let mut ok = true;
        let mut checked = 0u128;
        'pairs: for x in 0..points {
            for y in x + 1..points {
                checked += 1;
                let shared = labels.iter().filter(|lab| lab[x as usize] == lab[y as usize]).count();
                if shared != 1 {
                    ok = false;
                    problem.get_or_insert_with(|| {
                        format!("points {} and {} share {shared} blocks", a.decode(x), a.decode(y))
                    });
                    break 'pairs;
                }
            }
        }
        (PairMethod::Explicit, checked, ok)
    } else {
        let mut hits = vec![0u32; points as usize];
        for c in p.components() {
            for code in c.nonzero_codes().expect("within the design limit") {
                hits[code as usize] += 1;
            }
        }
        let bad = hits.iter().skip(1).position(|&h| h != 1);
        if let Some(pos) = bad {
            problem.get_or_insert_with(|| {
                format!("difference {} lies in {} components", a.decode(pos as u64 + 1), hits[pos + 1])
            });
        }
        (PairMethod::Difference, points as u128 * (points as u128 - 1) / 2, bad.is_none())
    };

    // translations by the first unit vector and the all-ones vector
    let shifts: Vec<u64> = [a.unit(0).0, vec![1; a.n()]].iter().map(|v| a.encode(v)).collect();
    let mut translation_invariant = true;
    for &s in &shifts {
        let sv = a.decode(s);
        for (i, lab) in labels.iter().enumerate() {
            let mut image: HashMap<u64, u64> = HashMap::new();
            let consistent = (0..points).all(|x| {
                let y = a.encode(&a.add(&a.decode(x).0, &sv.0));
                *image.entry(lab[x as usize]).or_insert(lab[y as usize]) == lab[y as usize]
            });
            let mut targets: Vec<u64> = image.values().copied().collect();
            targets.sort_unstable();
            targets.dedup();
            if !consistent || targets.len() != image.len() {
                translation_invariant = false;
                problem.get_or_insert_with(|| format!("translation by {sv} does not permute class {i}"));
            }
        }
    }

    DesignReport {
        points,
        classes: p.r(),
        classes_resolve,
        pair_method,
        pairs_checked,
        lambda_one,
        translation_invariant,
        valid: classes_resolve && lambda_one && translation_invariant,
        problem,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{near_spread, spread};
    use crate::gf::Subspace;

    #[test]
    fn spread_v4_design() {
        let d = design_from_partition(&spread(2, 4, 2).unwrap()).unwrap();
        assert_eq!(d.classes().len(), 5);
        assert!(d.classes().iter().all(|c| c.blocks == 4 && c.block_size == 4));
        let rep = verify_design(&d);
        assert_eq!(rep.pairs_checked, 120);
        assert_eq!(rep.pair_method, PairMethod::Explicit);
        assert!(rep.valid, "{rep:?}");
    }

    #[test]
    fn line_spread_design() {
        let d = design_from_partition(&spread(2, 2, 1).unwrap()).unwrap();
        let rep = verify_design(&d);
        assert_eq!((rep.points, rep.classes, rep.pairs_checked), (4, 3, 6));
        assert!(rep.valid);
    }

    #[test]
    fn trivial_design() {
        let rep = verify_design(&design_from_partition(&spread(2, 3, 3).unwrap()).unwrap());
        assert!(rep.valid);
        assert_eq!(rep.classes, 1);
    }

    #[test]
    fn difference_route() {
        let rep = verify_design(&design_from_partition(&near_spread(2, 11, 5).unwrap()).unwrap());
        assert_eq!(rep.pair_method, PairMethod::Difference);
        assert!(rep.valid);
    }

    #[test]
    fn corrupted_partition_fails() {
        let p = spread(2, 4, 2).unwrap();
        let a = p.ambient().clone();
        let mut comps = p.components().to_vec();
        comps.pop();
        comps.push(Subspace::span(&a, [comps[0].rows()[0].clone()]).unwrap());
        let rep = verify_design(&design_from_partition(&Partition::new(a, comps).unwrap()).unwrap());
        assert!(!rep.lambda_one);
        assert!(!rep.valid);
        assert!(rep.problem.is_some());
    }

    #[test]
    fn too_large() {
        assert!(design_from_partition(&spread(2, 18, 9).unwrap()).is_err());
    }
}
