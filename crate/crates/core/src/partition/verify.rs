use serde::Serialize;

use super::Partition;
use crate::gf::Vector;

/// Spaces up to this many vectors are verified by a full cover scan.
pub const FULL_SCAN_LIMIT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMethod {
    /// Every nonzero vector is assigned its owning component.
    FullScan,
    /// Pairwise trivial intersections plus the point-count identity.
    PairwiseMeet,
}

/// The canonically first reason a partition is invalid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Failure {
    ZeroComponent { index: usize },
    Overlap { first: usize, second: usize, witness: Vector },
    Uncovered { vector: Vector },
    CountMismatch { point_sum: u128, expected: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub method: VerifyMethod,
    pub r: usize,
    /// `sum_i (q^{n_i} - 1)`
    pub point_sum: u128,
    /// `q^n - 1`
    pub expected: u128,
    pub counting_identity: bool,
    pub failure: Option<Failure>,
}

fn points(q: u32, d: usize) -> u128 {
    (q as u128).saturating_pow(d as u32) - 1
}

impl Partition {
    /// Checks pairwise trivial intersection and full cover.
    pub fn verify(&self) -> VerificationReport {
        let q = self.q();
        let point_sum: u128 = self.components().iter().map(|c| points(q, c.dim())).sum();
        let expected = points(q, self.n());
        let size = self.ambient().size();
        let method = match size {
            Some(s) if s <= FULL_SCAN_LIMIT => VerifyMethod::FullScan,
            _ => VerifyMethod::PairwiseMeet,
        };
        let failure = self
            .components()
            .iter()
            .position(|c| c.is_zero())
            .map(|index| Failure::ZeroComponent { index })
            .or_else(|| match method {
                VerifyMethod::FullScan => self.scan_failure(size.unwrap()),
                VerifyMethod::PairwiseMeet => self.pairwise_failure(point_sum, expected),
            });
        VerificationReport {
            valid: failure.is_none(),
            method,
            r: self.r(),
            point_sum,
            expected,
            counting_identity: point_sum == expected,
            failure,
        }
    }

    fn scan_failure(&self, size: u64) -> Option<Failure> {
        const FREE: u32 = u32::MAX;
        let mut owner = vec![FREE; size as usize];
        for (i, c) in self.components().iter().enumerate() {
            let codes = c.nonzero_codes().expect("component fits the scan limit");
            for code in codes {
                let slot = &mut owner[code as usize];
                if *slot != FREE {
                    return Some(Failure::Overlap {
                        first: *slot as usize,
                        second: i,
                        witness: self.ambient().decode(code),
                    });
                }
                *slot = i as u32;
            }
        }
        owner
            .iter()
            .skip(1)
            .position(|&o| o == FREE)
            .map(|pos| Failure::Uncovered {
                vector: self.ambient().decode(pos as u64 + 1),
            })
    }

    fn pairwise_failure(&self, point_sum: u128, expected: u128) -> Option<Failure> {
        let comps = self.components();
        for j in 1..comps.len() {
            for i in 0..j {
                let m = comps[i].meet(&comps[j]).expect("same ambient");
                if !m.is_zero() {
                    return Some(Failure::Overlap {
                        first: i,
                        second: j,
                        witness: Vector(m.rows()[0].clone()),
                    });
                }
            }
        }
        (point_sum != expected).then_some(Failure::CountMismatch { point_sum, expected })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_field, Ambient, Subspace};

    fn spread_v4() -> Partition {
        let a = Ambient::new(make_field(2, 1).unwrap(), 4);
        // lines of GF(4)^2 flattened; x*(a,b) uses x^2 = x + 1
        let comps = [
            vec![[1, 0, 0, 0], [0, 1, 0, 0]],
            vec![[0, 0, 1, 0], [0, 0, 0, 1]],
            vec![[1, 0, 1, 0], [0, 1, 0, 1]],
            vec![[1, 0, 0, 1], [0, 1, 1, 1]],
            vec![[1, 0, 1, 1], [0, 1, 1, 0]],
        ];
        let comps = comps.iter().map(|rows| Subspace::span(&a, rows).unwrap()).collect();
        Partition::new(a, comps).unwrap()
    }

    #[test]
    fn trivial_is_valid() {
        let a = Ambient::new(make_field(3, 1).unwrap(), 3);
        let rep = Partition::trivial(&a).verify();
        assert!(rep.valid);
        assert_eq!(rep.r, 1);
        assert!(rep.counting_identity);
    }

    #[test]
    fn hand_built_spread_is_valid() {
        let rep = spread_v4().verify();
        assert!(rep.valid, "{rep:?}");
        assert_eq!(rep.point_sum, 15);
    }

    #[test]
    fn overlap_is_pinpointed() {
        let p = spread_v4();
        let a = p.ambient().clone();
        let mut comps = p.components().to_vec();
        // replace the last component with a line inside the first one
        let victim = comps.pop().unwrap();
        let line = Subspace::span(&a, [comps[0].rows()[0].clone()]).unwrap();
        comps.push(line.clone());
        let bad = Partition::new(a, comps).unwrap();
        let rep = bad.verify();
        assert!(!rep.valid);
        let Some(Failure::Overlap { first, second, witness }) = rep.failure else {
            panic!("expected overlap, got {:?}", rep.failure);
        };
        let comps = bad.components();
        assert!(comps[first].contains(&witness.0).unwrap());
        assert!(comps[second].contains(&witness.0).unwrap());
        assert!(comps[first] == line || comps[second] == line);
        assert_ne!(victim, line);
    }

    #[test]
    fn uncovered_vector_reported() {
        let p = spread_v4();
        let a = p.ambient().clone();
        let comps = p.components()[1..].to_vec();
        let rep = Partition::new(a, comps).unwrap().verify();
        assert!(!rep.valid);
        assert!(matches!(rep.failure, Some(Failure::Uncovered { .. })));
        assert!(!rep.counting_identity);
    }

    #[test]
    fn zero_component_rejected() {
        let a = Ambient::new(make_field(2, 1).unwrap(), 2);
        let p = Partition::new(a.clone(), vec![Subspace::full(&a), Subspace::zero(&a)]).unwrap();
        assert!(matches!(p.verify().failure, Some(Failure::ZeroComponent { .. })));
    }

    #[test]
    fn pairwise_method_agrees_with_scan() {
        let p = spread_v4();
        let count = p.components().iter().map(|c| points(2, c.dim())).sum();
        assert_eq!(p.pairwise_failure(count, 15), None);
        let a = p.ambient().clone();
        let mut comps = p.components().to_vec();
        comps.push(Subspace::span(&a, [[1, 0, 0, 0]]).unwrap());
        let bad = Partition::new(a, comps).unwrap();
        assert!(matches!(
            bad.pairwise_failure(18, 15),
            Some(Failure::Overlap { .. })
        ));
    }
}
