//! Acceptance suite: one pass/fail line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vspart_core::artifacts::{code_from_partition, design_from_partition, verify_design, verify_perfect};
use vspart_core::construct::{build_t_partition, hyperplane_section, lift, near_spread, spread, typed_construct};
use vspart_core::dioph::{annotate, classify_binary_2_3, solve_type_equation, TypeSolution, DEFAULT_SOLUTION_BUDGET};
use vspart_core::gf::field_of_order;
use vspart_core::search::{conjecture_scan, enumerate_all, find_partition, Goal, SearchOptions, SearchOutcome};
use vspart_core::{Ambient, ConstructError, Partition, PartitionType, TSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ambient(q: u64, n: usize) -> Ambient {
    Ambient::new(field_of_order(q).expect("prime power"), n)
}

fn ty(s: &str) -> PartitionType {
    s.parse().expect("type literal")
}

fn tspec(d: &[usize]) -> TSpec {
    TSpec::new(d.to_vec()).expect("dimension set")
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    Ok(out)
}

fn spread_counts() -> Outcome {
    for (q, n, d) in [(2, 4, 2), (2, 6, 2), (2, 6, 3), (3, 4, 2)] {
        let p = timed(Duration::from_secs(1), "spread", || spread(q, n, d))?.map_err(|e| e.to_string())?;
        let want = (q.pow(n as u32) - 1) / (q.pow(d as u32) - 1);
        ensure!(p.r() as u64 == want, "spread({q},{n},{d}) has {} components, want {want}", p.r());
        ensure!(p.components().iter().all(|c| c.dim() == d), "spread({q},{n},{d}) has a wrong dimension");
        ensure!(p.verify().valid, "spread({q},{n},{d}) fails verification");
    }
    Ok("4 spreads with exact component counts".into())
}

fn near_spread_types() -> Outcome {
    for (q, n, d) in [(2u64, 5, 2), (2, 7, 3), (3, 5, 2)] {
        let p = timed(Duration::from_secs(1), "near_spread", || near_spread(q, n, d))?.map_err(|e| e.to_string())?;
        let want = PartitionType::new(vec![(q.pow((n - d) as u32), d), (1, n - d)]).unwrap();
        ensure!(p.type_of() == want, "near_spread({q},{n},{d}) has type {}, want {want}", p.type_of());
        ensure!(p.verify().valid, "near_spread({q},{n},{d}) fails verification");
    }
    Ok("3 near-spreads with exact types".into())
}

fn check_lift(p: &Partition, m_prime: usize) -> Result<(), String> {
    let l = lift(p, m_prime).map_err(|e| e.to_string())?;
    let q = p.q() as usize;
    let want = (q.pow(m_prime as u32) - 1) * p.r();
    ensure!(l.bar.len() == want, "lift of {} across {m_prime}: {} components, want {want}", p.type_of(), l.bar.len());
    ensure!(l.partition.verify().valid, "lift of {} across {m_prime} fails verification", p.type_of());
    let dims: BTreeSet<usize> = l.bar.iter().map(|c| c.dim()).collect();
    let inner: BTreeSet<usize> = p.components().iter().map(|c| c.dim()).collect();
    ensure!(dims == inner, "lifted dimensions {dims:?} differ from {inner:?}");
    Ok(())
}

fn random_partition(rng: &mut ChaCha8Rng, q: u64, n: usize) -> Partition {
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    match rng.gen_range(0..3) {
        0 => spread(q, n, divisors[rng.gen_range(0..divisors.len())]).unwrap(),
        1 if n >= 2 => near_spread(q, n, rng.gen_range(1..=n / 2)).unwrap(),
        _ => Partition::trivial(&ambient(q, n)),
    }
}

fn lift_count_law() -> Outcome {
    let f = field_of_order(2).unwrap();
    check_lift(&Partition::trivial(&Ambient::new(f, 2)), 3)?;
    check_lift(&spread(2, 4, 2).unwrap(), 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 12 {
        let q = [2u64, 3][rng.gen_range(0..2)];
        let n = rng.gen_range(1..=4);
        let p = random_partition(&mut rng, q, n);
        let max_dim = p.components().iter().map(|c| c.dim()).max().unwrap();
        let m_prime = rng.gen_range(max_dim..=max_dim + 1);
        if (q as f64).powi((n + m_prime) as i32) > 4096.0 {
            continue;
        }
        check_lift(&p, m_prime)?;
        done += 1;
    }
    Ok(format!("2 worked examples and {done} random instances"))
}

fn hyperplane_sections() -> Outcome {
    for (q, k, d, want) in [(2, 2, 2, "4x1,1x2"), (3, 2, 2, "9x1,1x2"), (2, 2, 3, "8x2,1x3")] {
        let p = hyperplane_section(q, k, d).map_err(|e| e.to_string())?;
        ensure!(p.type_of() == ty(want), "hyperplane_section({q},{k},{d}) has type {}", p.type_of());
        ensure!(p.verify().valid, "hyperplane_section({q},{k},{d}) fails verification");
    }
    Ok("3 sections with exact types".into())
}

fn binary_2_3() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=5 {
        let classified = classify_binary_2_3(n).map_err(|e| e.to_string())?;
        for c in &classified {
            let expect = c.solution.x[0] != 1;
            ensure!(c.exists == expect, "classifier disagrees with x_1 != 1 at n={n}, x={:?}", c.solution.x);
            // Without pruning, so that a negative verdict is a completed search.
            let opts = SearchOptions { prune: false, ..SearchOptions::default() };
            let rep = find_partition(&ambient(2, n), &Goal::Type(c.solution.to_type()), &opts).map_err(|e| e.to_string())?;
            let found = match rep.outcome {
                SearchOutcome::Found(_) => true,
                SearchOutcome::Exhausted => false,
                SearchOutcome::BudgetExceeded => return Err(format!("budget exceeded at n={n}, x={:?}", c.solution.x)),
            };
            ensure!(found == expect, "search says {found} at n={n}, x={:?}", c.solution.x);
            checked += 1;
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("{checked} types at n = 3..5 agree, (1,4) at n=5 exhausted, {took:.2?}"))
}

fn check_corpus_member(p: &Partition) -> Result<(), String> {
    let q = p.q() as u64;
    let sol = TypeSolution::from_type(&p.type_of());
    let flags = annotate(&sol, q, p.n()).map_err(|e| e.to_string())?.flags.expect("annotated");
    ensure!(flags.all_pass(), "type {} of V_{}({q}) fails {:?}", p.type_of(), p.n(), flags.failures());
    if !p.is_trivial() {
        let rep = p.bound_report().map_err(|e| e.to_string())?;
        ensure!(rep.all_hold(), "bounds fail for type {} of V_{}({q}): {rep:?}", p.type_of(), p.n());
    }
    Ok(())
}

fn condition_soundness() -> Outcome {
    let mut corpus: Vec<Partition> = Vec::new();
    for (q, n, d) in [(2, 4, 2), (2, 6, 2), (2, 6, 3), (3, 4, 2), (2, 8, 4), (4, 4, 2)] {
        corpus.push(spread(q, n, d).unwrap());
    }
    for (q, n, d) in [(2, 5, 2), (2, 7, 3), (3, 5, 2), (2, 7, 2), (2, 9, 4)] {
        corpus.push(near_spread(q, n, d).unwrap());
    }
    for (q, k, d) in [(2, 2, 2), (3, 2, 2), (2, 2, 3), (2, 3, 2), (2, 3, 3)] {
        corpus.push(hyperplane_section(q, k, d).unwrap());
    }
    corpus.push(lift(&spread(2, 4, 2).unwrap(), 4).unwrap().partition);
    corpus.push(typed_construct(2, 6, &ty("16x2,1x4")).unwrap());
    for (q, t, n) in [(2, &[1, 2][..], 4), (2, &[2, 3], 6), (2, &[2, 3], 8), (2, &[1, 2, 3], 5), (2, &[1, 3], 5)] {
        corpus.push(build_t_partition(q, &tspec(t), n).map_err(|e| e.to_string())?.partition);
    }
    let constructed = corpus.len();
    for (q, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
        corpus.extend(enumerate_all(&ambient(q, n)).map_err(|e| e.to_string())?);
    }
    for p in &corpus {
        check_corpus_member(p)?;
    }
    Ok(format!("{constructed} constructions and {} enumerated partitions, zero violations", corpus.len() - constructed))
}

fn conjecture() -> Outcome {
    let mut witnesses = Vec::new();
    for (q, n) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        let rep = conjecture_scan(&ambient(q, n)).map_err(|e| e.to_string())?;
        ensure!(rep.counterexample_count == 0, "{} counterexamples at ({q},{n})", rep.counterexample_count);
        for row in &rep.rows {
            ensure!(row.min_s as u64 >= row.bound, "least s below bound at ({q},{n},t={})", row.t);
            if row.at_bound > 0 {
                witnesses.push((q, n, row.t, row.bound));
            }
        }
    }
    for want in [(2, 2, 1, 3), (2, 4, 2, 5), (3, 2, 1, 4)] {
        ensure!(witnesses.contains(&want), "no equality witness for (q,n,t,s) = {want:?}");
    }
    Ok(format!("no counterexamples; equality witnesses (q,n,t,s) = {witnesses:?}"))
}

fn t_builders() -> Outcome {
    let mut rules = Vec::new();
    for (t, n) in [(&[1, 2][..], 4), (&[2, 3], 6), (&[2, 3], 8), (&[1, 2, 3], 5)] {
        let t = tspec(t);
        let built = timed(Duration::from_secs(120), "build_t_partition", || build_t_partition(2, &t, n))?
            .map_err(|e| format!("T={t}, n={n}: {e}"))?;
        ensure!(built.partition.verify().valid, "T={t}, n={n} fails verification");
        ensure!(built.partition.is_t_partition(&t), "T={t}, n={n} has dimensions {}", built.partition.dim_image());
        rules.push(built.provenance.rule);
    }
    match build_t_partition(2, &tspec(&[3]), 7) {
        Err(ConstructError::UncoveredCase(_)) => {}
        other => return Err(format!("T={{3}}, n=7 gave {other:?}")),
    }
    let sols = solve_type_equation(2, 7, &[3], DEFAULT_SOLUTION_BUDGET).map_err(|e| e.to_string())?;
    ensure!(sols.is_empty(), "T={{3}}, n=7 has type-equation solutions");
    Ok(format!("rules {rules:?}; T={{3}}, n=7 uncovered"))
}

fn code_and_design() -> Outcome {
    let start = Instant::now();
    let p = spread(2, 4, 2).unwrap();
    let code = code_from_partition(&p).map_err(|e| e.to_string())?;
    ensure!(code.size == Some(64), "|W| = {:?}", code.size);
    let perfect = verify_perfect(&code);
    ensure!(perfect.sphere_volume_total == Some(1024) && perfect.space_size == Some(1024), "sphere packing {perfect:?}");
    ensure!(perfect.min_distance == Some(3), "minimum distance {:?}", perfect.min_distance);
    ensure!(perfect.perfect, "code not perfect");
    let design = design_from_partition(&p).map_err(|e| e.to_string())?;
    ensure!(design.classes().len() == 5, "{} classes", design.classes().len());
    let rep = verify_design(&design);
    ensure!(rep.valid && rep.lambda_one && rep.pairs_checked == 120, "design report {rep:?}");
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(5), "took {took:?}");
    Ok("|W| = 64, 64·16 = 1024, d = 3, 5 classes, 120 pairs".into())
}

fn oracle_equivalence() -> Outcome {
    let mut goals = 0;
    for (q, n) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let amb = ambient(q, n);
        let all = enumerate_all(&amb).map_err(|e| e.to_string())?;
        let types: BTreeSet<PartitionType> = all.iter().map(|p| p.type_of()).collect();
        let images: BTreeSet<TSpec> = all.iter().map(|p| p.dim_image()).collect();
        for mask in 1u32..(1 << n) {
            let dims: Vec<usize> = (1..=n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
            let t = tspec(&dims);
            let sols = solve_type_equation(q, n, &dims, DEFAULT_SOLUTION_BUDGET).map_err(|e| e.to_string())?;
            let mut queries: Vec<(Goal, bool)> = sols
                .iter()
                .map(|s| {
                    let goal_type = s.to_type().normalized();
                    let exists = types.contains(&goal_type);
                    (Goal::Type(goal_type), exists)
                })
                .collect();
            queries.push((Goal::Dims(t.clone()), images.contains(&t)));
            for (goal, exists) in queries {
                for prune in [true, false] {
                    let opts = SearchOptions { prune, ..SearchOptions::default() };
                    let rep = find_partition(&amb, &goal, &opts).map_err(|e| e.to_string())?;
                    let found = match rep.outcome {
                        SearchOutcome::Found(p) => {
                            ensure!(p.verify().valid, "invalid witness for {goal:?}");
                            true
                        }
                        SearchOutcome::Exhausted => false,
                        SearchOutcome::BudgetExceeded => return Err(format!("budget exceeded for {goal:?}")),
                    };
                    ensure!(found == exists, "({q},{n}) {goal:?} prune={prune}: search {found}, oracle {exists}");
                    goals += 1;
                }
            }
        }
    }
    Ok(format!("{goals} search verdicts match enumeration"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("spread counts", spread_counts),
        ("near-spread types", near_spread_types),
        ("lift count law", lift_count_law),
        ("hyperplane sections", hyperplane_sections),
        ("binary {2,3} types", binary_2_3),
        ("necessary-condition soundness", condition_soundness),
        ("minimum-dimension count scan", conjecture),
        ("T-partition builders", t_builders),
        ("code and design", code_and_design),
        ("search vs enumeration", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
