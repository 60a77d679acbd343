use proptest::prelude::*;

use vspart_core::construct::{hyperplane_section, near_spread, spread};
use vspart_core::gf::field_of_order;
use vspart_core::partition::{read_partition, write_partition};
use vspart_core::{Ambient, Partition, PartitionType, Subspace};

fn corpus() -> Vec<Partition> {
    vec![
        spread(2, 4, 2).unwrap(),
        spread(3, 4, 2).unwrap(),
        spread(2, 6, 3).unwrap(),
        near_spread(2, 5, 2).unwrap(),
        near_spread(3, 5, 2).unwrap(),
        hyperplane_section(2, 3, 2).unwrap(),
        spread(4, 2, 1).unwrap(),
    ]
}

fn point_sum(t: &PartitionType, q: u64) -> u64 {
    t.pairs().iter().map(|&(x, d)| x * (q.pow(d as u32) - 1)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_partitions_on_hyperplanes_are_valid(which in 0usize..7, seed in any::<u64>()) {
        let p = &corpus()[which];
        let amb = p.ambient().clone();
        let size = amb.size().unwrap();
        let normal = amb.decode(seed % (size - 1) + 1);
        let h = Subspace::span(&amb, [normal.0]).unwrap().perp();
        let induced = p.induce(&h).unwrap();
        prop_assert!(induced.verify().valid);
        prop_assert_eq!(induced.n(), amb.n() - 1);
        let q = p.q() as u64;
        prop_assert_eq!(point_sum(&induced.type_of(), q), q.pow(induced.n() as u32) - 1);
    }

    #[test]
    fn refining_a_component_adjusts_the_type(which in 0usize..7, idx in any::<prop::sample::Index>()) {
        let p = &corpus()[which];
        let victim = p.components()[idx.index(p.r())].clone();
        let q = p.q() as u64;
        let lines = spread(q, victim.dim(), 1).unwrap();
        let refined = p.refine(&victim, &lines).unwrap();
        prop_assert!(refined.verify().valid);
        prop_assert_eq!(refined.r(), p.r() - 1 + lines.r());
        let before = p.type_of();
        let after = refined.type_of();
        let count = |t: &PartitionType, d: usize| t.pairs().iter().find(|&&(_, e)| e == d).map_or(0, |&(x, _)| x);
        prop_assert_eq!(count(&after, 1), count(&before, 1) + lines.r() as u64 - u64::from(victim.dim() == 1));
    }

    #[test]
    fn file_round_trip(which in 0usize..7) {
        let p = &corpus()[which];
        let text = write_partition(p, None);
        let back = read_partition(&text, false).unwrap();
        prop_assert_eq!(&back.partition, p);
        prop_assert!(back.warnings.is_empty());
    }
}

#[test]
fn non_partition_is_rejected_by_verify() {
    let amb = Ambient::new(field_of_order(2).unwrap(), 3);
    let a = Subspace::coordinate(&amb, [0, 1]);
    let b = Subspace::coordinate(&amb, [1, 2]);
    if let Ok(p) = Partition::new(amb, vec![a, b]) {
        assert!(!p.verify().valid);
    }
}
