use std::collections::BTreeSet;

use proptest::prelude::*;

use vspart_core::construct::{hyperplane_section, lift, near_spread, spread, typed_construct};
use vspart_core::dioph::{annotate, solve_type_equation, TypeSolution, DEFAULT_SOLUTION_BUDGET};
use vspart_core::gf::field_of_order;
use vspart_core::partition::write_partition;
use vspart_core::search::enumerate_all;
use vspart_core::{Ambient, Partition, PartitionType};

fn weights(q: u64, dims: &[usize]) -> Vec<u64> {
    dims.iter().map(|&d| q.pow(d as u32) - 1).collect()
}

fn brute_force(q: u64, n: usize, dims: &[usize]) -> BTreeSet<Vec<u64>> {
    let target = q.pow(n as u32) - 1;
    let w = weights(q, dims);
    let mut out = BTreeSet::new();
    let mut x = vec![0u64; dims.len()];
    fn rec(i: usize, left: u64, w: &[u64], x: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if i == w.len() {
            if left == 0 {
                out.insert(x.clone());
            }
            return;
        }
        for k in 0..=left / w[i] {
            x[i] = k;
            rec(i + 1, left - k * w[i], w, x, out);
        }
        x[i] = 0;
    }
    rec(0, target, &w, &mut x, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_is_complete(q in prop::sample::select(vec![2u64, 3, 4]), n in 1usize..8, mask in 1u32..128) {
        let dims: Vec<usize> = (1..=n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
        prop_assume!(!dims.is_empty() && q.pow(n as u32) <= 729);
        let sols = solve_type_equation(q, n, &dims, DEFAULT_SOLUTION_BUDGET).unwrap();
        let got: Vec<Vec<u64>> = sols.iter().map(|s| s.x.clone()).collect();
        let mut sorted = got.clone();
        sorted.sort();
        prop_assert_eq!(&got, &sorted);
        prop_assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), brute_force(q, n, &dims));
    }

    #[test]
    fn lift_count_law(q in prop::sample::select(vec![2u64, 3]), n in 1usize..4, extra in 0usize..2, d_pick in 0usize..4) {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        let p = spread(q, n, divisors[d_pick % divisors.len()]).unwrap();
        let max_dim = p.components().iter().map(|c| c.dim()).max().unwrap();
        let m_prime = max_dim + extra;
        prop_assume!(q.pow((n + m_prime) as u32) <= 1 << 12);
        let l = lift(&p, m_prime).unwrap();
        prop_assert_eq!(l.bar.len() as u64, (q.pow(m_prime as u32) - 1) * p.r() as u64);
        prop_assert!(l.partition.verify().valid);
        prop_assert_eq!(l.partition.r(), l.bar.len() + 2);
    }
}

#[test]
fn lift_rejects_small_target() {
    let p = spread(2, 4, 2).unwrap();
    assert!(lift(&p, 1).is_err());
}

#[test]
fn hyperplane_section_types() {
    for q in [2u64, 3] {
        for d in [2usize, 3] {
            for k in 2..=6 {
                if q.pow((k * d) as u32) > 1 << 16 {
                    continue;
                }
                let p = hyperplane_section(q, k, d).unwrap();
                let big = q.pow(((k - 1) * d) as u32);
                let want = PartitionType::new(vec![(big, d - 1), ((big - 1) / (q.pow(d as u32) - 1), d)]).unwrap();
                assert_eq!(p.type_of(), want.normalized(), "q={q} k={k} d={d}");
                assert!(p.verify().valid);
            }
        }
    }
}

#[test]
fn near_spread_equals_lift_of_trivial() {
    for (q, n, d) in [(2u64, 5usize, 2usize), (2, 7, 3), (3, 5, 2)] {
        let amb = Ambient::new(field_of_order(q).unwrap(), d);
        let lifted = lift(&Partition::trivial(&amb), n - d).unwrap().partition;
        let direct = near_spread(q, n, d).unwrap();
        assert_eq!(write_partition(&direct, None), write_partition(&lifted, None));
    }
    assert_eq!(hyperplane_section(2, 2, 3).unwrap().type_of(), near_spread(2, 5, 2).unwrap().type_of());
}

#[test]
fn typed_construct_rejects_excluded_type() {
    assert!(typed_construct(2, 5, &"1x2,4x3".parse().unwrap()).is_err());
    let p = typed_construct(2, 5, &"8x2,1x3".parse().unwrap()).unwrap();
    assert!(p.verify().valid);
}

#[test]
fn filters_never_reject_an_existing_type() {
    for (q, n) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let amb = Ambient::new(field_of_order(q).unwrap(), n);
        let types: BTreeSet<PartitionType> = enumerate_all(&amb).unwrap().iter().map(|p| p.type_of()).collect();
        for t in &types {
            let sol = annotate(&TypeSolution::from_type(t), q, n).unwrap();
            assert!(sol.feasible(), "existing type {t} of V_{n}({q}) rejected");
        }
    }
}
