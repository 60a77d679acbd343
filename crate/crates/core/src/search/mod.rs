//! Backtracking search for partitions with a prescribed type or dimension
//! set, exhaustive enumeration of tiny spaces, and the minimum-count scan.

mod engine;

use std::sync::atomic::AtomicU64;

use serde::Serialize;

use crate::dioph::{annotate, TypeSolution};
use crate::error::SearchError;
use crate::gf::Ambient;
use crate::partition::{Partition, PartitionType, TSpec};
use engine::{Flow, Mode, Problem};

/// Largest space (number of vectors) the search accepts.
pub const SEARCH_LIMIT: u64 = 1 << 20;
/// Largest space `enumerate_all` accepts.
pub const ENUMERATION_LIMIT: u64 = 1 << 12;
/// Default node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
/// `enumerate_all` gives up after this many partitions.
pub const MAX_ENUMERATED: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Goal {
    Type(PartitionType),
    Dims(TSpec),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum number of components placed over the whole search.
    pub budget: u64,
    /// Reject types failing the necessary conditions up front, and never
    /// combine two dimensions summing past `n`.
    pub prune: bool,
    /// Shuffles candidate order; verdicts do not depend on it.
    pub shuffle_seed: Option<u64>,
    /// Worker threads for the root branches; 1 runs sequentially.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_NODE_BUDGET,
            prune: true,
            shuffle_seed: None,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Partition),
    /// The complete search found nothing.
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// Components placed.
    pub nodes: u64,
}

fn check_size(ambient: &Ambient, limit: u64) -> Result<(), SearchError> {
    match ambient.size() {
        Some(s) if s <= limit => Ok(()),
        s => Err(SearchError::TooLarge {
            size: s.unwrap_or(u64::MAX),
            limit,
        }),
    }
}

/// Searches for a partition of `ambient` meeting `goal`.
///
/// Branching always covers the least uncovered vector, trying the subspaces
/// through it in canonical order, so a sequential `Found` is the first
/// solution in that order.
pub fn find_partition(ambient: &Ambient, goal: &Goal, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    check_size(ambient, SEARCH_LIMIT)?;
    let n = ambient.n();
    let q = ambient.q() as u64;
    let exhausted = Ok(SearchReport {
        outcome: SearchOutcome::Exhausted,
        nodes: 0,
    });
    let (dims, mode) = match goal {
        Goal::Type(t) => {
            let t = t.normalized();
            if t.pairs().is_empty() || t.dims().iter().any(|&d| d > n) {
                return exhausted;
            }
            let Ok(sol) = annotate(&TypeSolution::from_type(&t), q, n) else {
                return exhausted;
            };
            if opts.prune && !sol.feasible() {
                return exhausted;
            }
            (t.dims(), Mode::Exact(t.counts()))
        }
        Goal::Dims(t) => {
            if t.is_empty() || t.largest() > n || (t.largest() == n && t.len() > 1) {
                return exhausted;
            }
            (t.dims().to_vec(), Mode::EachAtLeastOnce)
        }
    };
    let pb = Problem::new(ambient, dims, mode, opts.prune, opts.shuffle_seed)?;
    let (flow, solution, nodes) = if opts.threads > 1 {
        engine::run_parallel(&pb, opts.budget, opts.threads)
    } else {
        let counter = AtomicU64::new(0);
        let mut w = pb.walker(&counter, opts.budget);
        let flow = w.dfs(0);
        let sol = w.solutions.pop();
        (flow, sol, counter.load(std::sync::atomic::Ordering::Relaxed))
    };
    let outcome = match (flow, solution) {
        (Flow::Found, Some(chosen)) => {
            let p = pb.partition_of(&chosen);
            assert!(p.verify().valid, "search produced an invalid partition");
            SearchOutcome::Found(p)
        }
        (Flow::Budget, _) => SearchOutcome::BudgetExceeded,
        _ => SearchOutcome::Exhausted,
    };
    Ok(SearchReport {
        outcome,
        nodes: nodes.min(opts.budget),
    })
}

/// Every partition of `ambient`, sorted canonically.
pub fn enumerate_all(ambient: &Ambient) -> Result<Vec<Partition>, SearchError> {
    check_size(ambient, ENUMERATION_LIMIT)?;
    let dims: Vec<usize> = (1..=ambient.n()).collect();
    let pb = Problem::new(ambient, dims, Mode::All, false, None)?;
    let counter = AtomicU64::new(0);
    let mut w = pb.walker(&counter, u64::MAX);
    w.solution_limit = MAX_ENUMERATED;
    if let Flow::Stop = w.dfs(0) {
        return Err(SearchError::TooManyPartitions { limit: MAX_ENUMERATED });
    }
    let mut out: Vec<Partition> = w.solutions.iter().map(|c| pb.partition_of(c)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimum-dimension statistics for one value of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub t: usize,
    /// Non-trivial partitions with minimum dimension `t`.
    pub partitions: usize,
    pub min_s: usize,
    /// `q^t + 1`
    pub bound: u64,
    /// Partitions with `s = q^t + 1`.
    pub at_bound: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub q: u32,
    pub n: usize,
    pub partitions: usize,
    pub rows: Vec<ScanRow>,
    /// Non-trivial partitions with fewer than `q^t + 1` components of the
    /// minimum dimension `t`.
    #[serde(skip)]
    pub counterexamples: Vec<Partition>,
    pub counterexample_count: usize,
}

/// Enumerates every partition of `ambient` and tallies the number `s` of
/// minimum-dimension components against `q^t + 1`.
pub fn conjecture_scan(ambient: &Ambient) -> Result<ScanReport, SearchError> {
    let all = enumerate_all(ambient)?;
    let q = ambient.q() as u64;
    let mut rows: Vec<ScanRow> = Vec::new();
    let mut counterexamples = Vec::new();
    for p in all.iter().filter(|p| !p.is_trivial()) {
        let t = p.min_dim().expect("nonempty");
        let s = p.components().iter().filter(|c| c.dim() == t).count();
        let bound = q.pow(t as u32) + 1;
        if (s as u64) < bound {
            counterexamples.push(p.clone());
        }
        let row = match rows.iter_mut().find(|r| r.t == t) {
            Some(r) => r,
            None => {
                rows.push(ScanRow {
                    t,
                    partitions: 0,
                    min_s: usize::MAX,
                    bound,
                    at_bound: 0,
                });
                rows.last_mut().unwrap()
            }
        };
        row.partitions += 1;
        row.min_s = row.min_s.min(s);
        if s as u64 == bound {
            row.at_bound += 1;
        }
    }
    rows.sort_by_key(|r| r.t);
    Ok(ScanReport {
        q: ambient.q(),
        n: ambient.n(),
        partitions: all.len(),
        rows,
        counterexample_count: counterexamples.len(),
        counterexamples,
    })
}
