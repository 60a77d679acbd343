use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use vspart_core::artifacts::{code_from_partition, design_from_partition, verify_design, verify_perfect};
use vspart_core::construct::{
    build_t_partition_with_budget, hyperplane_section, near_spread, spread, typed_construct,
};
use vspart_core::dioph::{annotate_with_depth, classify_binary_2_3, solve_type_equation};
use vspart_core::gf::field_of_order;
use vspart_core::partition::{read_partition, write_partition};
use vspart_core::search::{conjecture_scan, enumerate_all, find_partition, Goal, SearchOptions, SearchOutcome};
use vspart_core::{Ambient, ConstructError, Partition, Subspace};

use crate::{
    ArtifactArgs, Cli, Command, ConstructCmd, FileArgs, Filters, InduceArgs, OutArgs, SearchArgs, SolveArgs,
    SpaceArgs, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE,
};

pub fn run(cli: &Cli) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Solve(a) => solve(a, json),
        Command::Construct(c) => construct(c, json),
        Command::Verify(a) => verify(a, json),
        Command::Bounds(a) => bounds(a, json),
        Command::Induce(a) => induce(a, json),
        Command::Search(a) => search(a, json),
        Command::Enumerate(a) => enumerate(a, json),
        Command::Classify23 { n } => classify(*n, json),
        Command::ConjectureScan(a) => scan(a, json),
        Command::Code(a) => code(a, json),
        Command::Design(a) => design(a, json),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn ambient(q: u64, n: usize) -> Result<Ambient> {
    Ok(Ambient::new(field_of_order(q)?, n))
}

fn load(a: &FileArgs) -> Result<Partition> {
    let text = fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let got = read_partition(&text, a.force).with_context(|| format!("parsing {}", a.file.display()))?;
    for w in &got.warnings {
        eprintln!("warning: {w}");
    }
    Ok(got.partition)
}

/// Writes the partition to `--out`, or to standard output when no file is
/// given.
fn emit_partition(p: &Partition, header: &Value, out: &OutArgs, json: bool) -> Result<()> {
    let text = write_partition(p, Some(header));
    match &out.out {
        Some(path) => {
            write_file(path, &text)?;
            if json {
                print_json(&json!({
                    "out": path.display().to_string(),
                    "type": p.type_of().to_string(),
                    "r": p.r(),
                    "header": header,
                }));
            } else {
                println!("wrote {}: type {}, {} components", path.display(), p.type_of(), p.r());
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn solve(a: &SolveArgs, json: bool) -> Result<u8> {
    let mut sols = solve_type_equation(a.q, a.n, &a.dims, a.max_solutions)?;
    if a.filters == Filters::All {
        sols = sols
            .iter()
            .map(|s| annotate_with_depth(s, a.q, a.n, a.depth))
            .collect::<Result<_, _>>()?;
    }
    if json {
        print_json(&json!({ "q": a.q, "n": a.n, "dims": a.dims, "solutions": sols }));
        return Ok(EXIT_OK);
    }
    println!("{} solution(s) of sum (q^n_i - 1) x_i = {}^{} - 1", sols.len(), a.q, a.n);
    for s in &sols {
        let verdict = match &s.flags {
            None => String::new(),
            Some(f) if f.all_pass() => "  feasible".into(),
            Some(f) => format!("  infeasible: {}", f.failures().join(", ")),
        };
        println!("  x = {:?}  type {}{verdict}", s.x, s.to_type());
    }
    Ok(EXIT_OK)
}

fn construct(c: &ConstructCmd, json: bool) -> Result<u8> {
    let (built, header, out) = match c {
        ConstructCmd::Spread { q, n, d, out } => (
            spread(*q, *n, *d),
            json!({"construction": "spread", "q": q, "n": n, "d": d}),
            out,
        ),
        ConstructCmd::NearSpread { q, n, d, out } => (
            near_spread(*q, *n, *d),
            json!({"construction": "near-spread", "q": q, "n": n, "d": d}),
            out,
        ),
        ConstructCmd::Hsection { q, k, d, out } => (
            hyperplane_section(*q, *k, *d),
            json!({"construction": "hyperplane-section", "q": q, "k": k, "d": d}),
            out,
        ),
        ConstructCmd::Typed { q, n, ty, out } => (
            typed_construct(*q, *n, ty),
            json!({"construction": "typed", "q": q, "n": n, "type": ty.to_string()}),
            out,
        ),
        ConstructCmd::Tpartition { q, n, t, budget, out } => {
            let res = build_t_partition_with_budget(*q, t, *n, *budget);
            let header = match &res {
                Ok(b) => json!({"construction": "t-partition", "q": q, "n": n, "T": t.to_string(), "provenance": b.provenance}),
                Err(_) => Value::Null,
            };
            (res.map(|b| b.partition), header, out)
        }
    };
    match built {
        Ok(p) => {
            emit_partition(&p, &header, out, json)?;
            Ok(EXIT_OK)
        }
        Err(e @ (ConstructError::UncoveredCase(_) | ConstructError::UnsupportedType(_))) => {
            eprintln!("{e}");
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(a: &FileArgs, json: bool) -> Result<u8> {
    let p = load(a)?;
    let rep = p.verify();
    if json {
        print_json(&json!({ "type": p.type_of().to_string(), "report": rep }));
    } else if rep.valid {
        println!("valid partition of V_{}({}): type {}, {} components", p.n(), p.q(), p.type_of(), rep.r);
    } else {
        println!("not a partition: {:?}", rep.failure.as_ref().expect("invalid reports carry a failure"));
    }
    Ok(if rep.valid { EXIT_OK } else { EXIT_NEGATIVE })
}

fn bounds(a: &FileArgs, json: bool) -> Result<u8> {
    let p = load(a)?;
    let rep = match p.bound_report() {
        Ok(rep) => rep,
        Err(vspart_core::PartitionError::TrivialPartition) => {
            if json {
                print_json(&json!({ "trivial": true }));
            } else {
                println!("trivial partition: the bounds concern non-trivial partitions only");
            }
            return Ok(EXIT_OK);
        }
        Err(e) => return Err(e.into()),
    };
    if json {
        print_json(&json!({ "report": rep, "all_hold": rep.all_hold() }));
    } else {
        let mark = |ok: bool| if ok { "ok" } else { "FAILS" };
        println!("t = {}, s = {}, r = {}", rep.t, rep.s, rep.r);
        println!("  s >= q + t = {}: {}", rep.min_count_bound, mark(rep.min_count_ok));
        println!("  {} <= r <= {}: {}", rep.r_lower, rep.r_upper, mark(rep.r_bounds_ok));
        println!("  r mod q^t = {}: {}", rep.r_residue, mark(rep.r_residue_ok));
        println!(
            "  complement witness: s' = {} (divisible by q: {}), induced count {} of {}",
            rep.witness.s_prime,
            mark(rep.witness.s_prime_divisible),
            rep.witness.induced_point_sum,
            rep.witness.induced_expected
        );
        println!("  s >= q^t + 1: {}", rep.s_at_least_qt_plus_1);
    }
    Ok(if rep.all_hold() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn parse_rows(s: &str) -> Result<Vec<Vec<u32>>> {
    s.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split(',')
                .map(|c| c.trim().parse::<u32>().with_context(|| format!("bad coordinate {c:?} in --w")))
                .collect()
        })
        .collect()
}

fn induce(a: &InduceArgs, json: bool) -> Result<u8> {
    let p = load(&a.input)?;
    let amb = p.ambient().clone();
    let w = match &a.w {
        Some(rows) => Subspace::span(&amb, parse_rows(rows)?)?,
        None => Subspace::coordinate(&amb, 0..amb.n() - 1),
    };
    let induced = p.induce(&w)?;
    let header = json!({"induced-on": w.rows()});
    emit_partition(&induced, &header, &a.out, json)?;
    Ok(EXIT_OK)
}

fn search(a: &SearchArgs, json: bool) -> Result<u8> {
    let amb = ambient(a.q, a.n)?;
    let goal = match (&a.ty, &a.t) {
        (Some(ty), _) => Goal::Type(ty.clone()),
        (None, Some(t)) => Goal::Dims(t.clone()),
        (None, None) => bail!("give --type or --T"),
    };
    let opts = SearchOptions {
        budget: a.budget,
        prune: !a.no_prune,
        shuffle_seed: a.seed,
        threads: a.threads.max(1),
    };
    let rep = find_partition(&amb, &goal, &opts)?;
    let (label, code) = match &rep.outcome {
        SearchOutcome::Found(_) => ("found", EXIT_OK),
        SearchOutcome::Exhausted => ("exhausted", EXIT_NEGATIVE),
        SearchOutcome::BudgetExceeded => ("budget-exceeded", EXIT_USAGE),
    };
    match &rep.outcome {
        SearchOutcome::Found(p) if a.out.out.is_some() || !json => {
            let header = json!({"search": label, "nodes": rep.nodes});
            if a.out.out.is_none() {
                eprintln!("found after {} nodes", rep.nodes);
            }
            emit_partition(p, &header, &a.out, json)?;
        }
        outcome => {
            if json {
                let mut v = json!({"outcome": label, "nodes": rep.nodes});
                if let SearchOutcome::Found(p) = outcome {
                    v["type"] = json!(p.type_of().to_string());
                    v["partition"] = serde_json::from_str(&write_partition(p, None))?;
                }
                print_json(&v);
            } else {
                println!("{label} after {} nodes", rep.nodes);
            }
        }
    }
    Ok(code)
}

fn type_counts(all: &[Partition]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for p in all {
        *counts.entry(p.type_of().to_string()).or_insert(0) += 1;
    }
    counts
}

fn enumerate(a: &SpaceArgs, json: bool) -> Result<u8> {
    let all = enumerate_all(&ambient(a.q, a.n)?)?;
    let counts = type_counts(&all);
    if json {
        print_json(&json!({ "q": a.q, "n": a.n, "count": all.len(), "types": counts }));
    } else {
        println!("{} partitions of V_{}({})", all.len(), a.n, a.q);
        for (ty, c) in &counts {
            println!("  {c:>8}  {ty}");
        }
    }
    Ok(EXIT_OK)
}

fn classify(n: usize, json: bool) -> Result<u8> {
    let rows = classify_binary_2_3(n)?;
    if json {
        print_json(&json!({ "n": n, "solutions": rows }));
    } else {
        println!("3 x_1 + 7 x_2 = 2^{n} - 1");
        for c in &rows {
            let verdict = if c.exists { "exists" } else { "does not exist" };
            println!("  (x_1, x_2) = ({}, {}): {verdict}", c.solution.x[0], c.solution.x[1]);
        }
    }
    Ok(EXIT_OK)
}

fn scan(a: &SpaceArgs, json: bool) -> Result<u8> {
    let rep = conjecture_scan(&ambient(a.q, a.n)?)?;
    if json {
        print_json(&serde_json::to_value(&rep)?);
    } else {
        println!("{} partitions of V_{}({})", rep.partitions, a.n, a.q);
        for r in &rep.rows {
            println!(
                "  t = {}: {} partitions, least s = {}, q^t + 1 = {}, {} at the bound",
                r.t, r.partitions, r.min_s, r.bound, r.at_bound
            );
        }
        println!("  counterexamples: {}", rep.counterexample_count);
    }
    Ok(if rep.counterexample_count == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}

fn code(a: &ArtifactArgs, json: bool) -> Result<u8> {
    let p = load(&a.input)?;
    let c = code_from_partition(&p)?;
    let report = a.check.then(|| verify_perfect(&c));
    if json {
        let mut v = json!({
            "length": c.length(),
            "dims": c.dims,
            "dimension": c.dimension,
            "size": c.size.map(|s| s.to_string()),
            "codewords_listed": c.codewords.is_some(),
        });
        if let Some(r) = &report {
            v["check"] = serde_json::to_value(r)?;
        }
        print_json(&v);
    } else {
        let size = c.size.map_or_else(|| format!("{}^{}", c.q, c.dimension), |s| s.to_string());
        println!("length {}, dimension {} over GF({}), {} codewords", c.length(), c.dimension, c.q, size);
        if let Some(r) = &report {
            println!("  sphere packing: {}", if r.sphere_packing { "tight" } else { "FAILS" });
            match r.min_distance {
                Some(d) => println!("  minimum distance: {d}"),
                None => println!("  minimum distance >= 3: {}", r.min_distance_at_least_3),
            }
            println!("  perfect: {}", r.perfect);
        }
    }
    Ok(match report {
        Some(r) if !r.perfect => EXIT_NEGATIVE,
        _ => EXIT_OK,
    })
}

fn design(a: &ArtifactArgs, json: bool) -> Result<u8> {
    let p = load(&a.input)?;
    let d = design_from_partition(&p)?;
    let report = a.check.then(|| verify_design(&d));
    if json {
        let mut v = json!({ "points": d.points(), "classes": d.classes() });
        if let Some(r) = &report {
            v["check"] = serde_json::to_value(r)?;
        }
        print_json(&v);
    } else {
        println!("{} points, {} classes", d.points(), d.classes().len());
        for (i, c) in d.classes().iter().enumerate() {
            println!("  class {i}: {} blocks of size {}", c.blocks, c.block_size);
        }
        if let Some(r) = &report {
            println!("  classes resolve the points: {}", r.classes_resolve);
            println!("  every pair in exactly one block ({} pairs): {}", r.pairs_checked, r.lambda_one);
            println!("  translation invariant: {}", r.translation_invariant);
            if let Some(problem) = &r.problem {
                println!("  problem: {problem}");
            }
        }
    }
    Ok(match report {
        Some(r) if !r.valid => EXIT_NEGATIVE,
        _ => EXIT_OK,
    })
}
