//! Exact cover of the projective points of V_n(q) by subspaces.
//!
//! Points are the 1-dimensional subspaces, indexed in increasing order of
//! their least nonzero vector, so covering the least uncovered point is the
//! same as covering the least uncovered nonzero vector. Each candidate holds
//! its point set as a sparse list of `(word, bits)` masks over that index.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::SearchError;
use crate::gf::{enumerate_subspaces, Ambient, Subspace, DEFAULT_SUBSPACE_BUDGET};
use crate::partition::Partition;

/// What a cover must look like.
#[derive(Clone, Debug)]
pub(crate) enum Mode {
    /// Exactly `counts[i]` components of dimension `dims[i]`.
    Exact(Vec<u64>),
    /// Every dimension used at least once.
    EachAtLeastOnce,
    /// Any partition; every solution is collected.
    All,
}

struct Candidate {
    subspace: Subspace,
    dim_idx: usize,
    mask: Vec<(u32, u64)>,
}

pub(crate) struct Problem {
    ambient: Ambient,
    n: usize,
    points: usize,
    words: usize,
    dims: Vec<usize>,
    weights: Vec<u64>,
    mode: Mode,
    prune: bool,
    candidates: Vec<Candidate>,
    by_point: Vec<Vec<u32>>,
    /// `reach[k][s]`: `s` is a non-negative combination of `weights[..k]`.
    reach: Vec<Vec<u64>>,
}

pub(crate) enum Flow {
    Continue,
    Found,
    Budget,
    Stop,
}

fn normalized_codes(s: &Subspace) -> Vec<u64> {
    // leading coefficient 1 on some row, 0 on earlier rows, free on later rows
    let a = s.ambient();
    let q = a.q() as u64;
    let d = s.dim();
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut coeffs = vec![0u32; d];
            coeffs[lead] = 1;
            let mut c = code;
            for x in coeffs.iter_mut().skip(lead + 1) {
                *x = (c % q) as u32;
                c /= q;
            }
            out.push(a.encode(&s.combine(&coeffs)));
        }
    }
    out
}

impl Problem {
    pub(crate) fn new(
        ambient: &Ambient,
        dims: Vec<usize>,
        mode: Mode,
        prune: bool,
        shuffle_seed: Option<u64>,
    ) -> Result<Problem, SearchError> {
        let n = ambient.n();
        let q = ambient.q() as u64;
        let size = ambient.size().ok_or(SearchError::TooLarge {
            size: u64::MAX,
            limit: super::SEARCH_LIMIT,
        })?;
        // point index of every normalized vector code
        let mut index = vec![u32::MAX; size as usize];
        let full = Subspace::full(ambient);
        let mut codes = normalized_codes(&full);
        codes.sort_unstable();
        for (i, &c) in codes.iter().enumerate() {
            index[c as usize] = i as u32;
        }
        let points = codes.len();
        let words = points.div_ceil(64);

        let mut candidates = Vec::new();
        for (dim_idx, &d) in dims.iter().enumerate() {
            for s in enumerate_subspaces(ambient, d, DEFAULT_SUBSPACE_BUDGET)? {
                let mut pts: Vec<u32> = normalized_codes(&s).into_iter().map(|c| index[c as usize]).collect();
                pts.sort_unstable();
                let mut mask: Vec<(u32, u64)> = Vec::new();
                for p in pts {
                    let (w, b) = (p / 64, 1u64 << (p % 64));
                    match mask.last_mut() {
                        Some(last) if last.0 == w => last.1 |= b,
                        _ => mask.push((w, b)),
                    }
                }
                candidates.push(Candidate { subspace: s, dim_idx, mask });
            }
        }
        // branching order: larger components first, then canonical order
        candidates.sort_by(|a, b| b.dim_idx.cmp(&a.dim_idx).then_with(|| a.subspace.cmp(&b.subspace)));
        let mut by_point: Vec<Vec<u32>> = vec![Vec::new(); points];
        for (ci, c) in candidates.iter().enumerate() {
            for &(w, bits) in &c.mask {
                let mut b = bits;
                while b != 0 {
                    let p = w as usize * 64 + b.trailing_zeros() as usize;
                    by_point[p].push(ci as u32);
                    b &= b - 1;
                }
            }
        }
        if let Some(seed) = shuffle_seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for list in &mut by_point {
                list.shuffle(&mut rng);
            }
        }
        let weights: Vec<u64> = dims.iter().map(|&d| (q.pow(d as u32) - 1) / (q - 1)).collect();
        let reach = if matches!(mode, Mode::EachAtLeastOnce) {
            (0..=dims.len()).map(|k| reachable(&weights[..k], points)).collect()
        } else {
            Vec::new()
        };
        Ok(Problem {
            ambient: ambient.clone(),
            n,
            points,
            words,
            dims,
            weights,
            mode,
            prune,
            candidates,
            by_point,
            reach,
        })
    }

    pub(crate) fn partition_of(&self, chosen: &[u32]) -> Partition {
        let comps = chosen.iter().map(|&c| self.candidates[c as usize].subspace.clone()).collect();
        Partition::new(self.ambient.clone(), comps).expect("candidates share the ambient")
    }

    /// Candidates covering point 0, in branching order.
    pub(crate) fn root_branches(&self) -> &[u32] {
        self.by_point.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn walker<'a>(&'a self, nodes: &'a AtomicU64, budget: u64) -> Walker<'a> {
        Walker {
            pb: self,
            covered: vec![0; self.words],
            chosen: Vec::new(),
            used: vec![0; self.dims.len()],
            max_dims: vec![0],
            remaining: self.points as u64,
            nodes,
            budget,
            solutions: Vec::new(),
            solution_limit: usize::MAX,
            abandon: None,
        }
    }
}

fn reachable(weights: &[u64], max: usize) -> Vec<u64> {
    let mut bits = vec![0u64; max / 64 + 1];
    bits[0] = 1;
    for s in 0..=max {
        if bits[s / 64] >> (s % 64) & 1 == 0 {
            continue;
        }
        for &w in weights {
            let t = s + w as usize;
            if t <= max {
                bits[t / 64] |= 1 << (t % 64);
            }
        }
    }
    bits
}

pub(crate) struct Walker<'a> {
    pb: &'a Problem,
    covered: Vec<u64>,
    chosen: Vec<u32>,
    used: Vec<u64>,
    max_dims: Vec<usize>,
    remaining: u64,
    nodes: &'a AtomicU64,
    budget: u64,
    pub(crate) solutions: Vec<Vec<u32>>,
    pub(crate) solution_limit: usize,
    /// `(branch, best)`: give up once a branch before ours has succeeded.
    pub(crate) abandon: Option<(usize, &'a AtomicUsize)>,
}

impl Walker<'_> {
    fn first_uncovered(&self, from: usize) -> usize {
        let mut w = from / 64;
        let mut word = !self.covered[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                return w * 64 + word.trailing_zeros() as usize;
            }
            w += 1;
            word = !self.covered[w];
        }
    }

    fn max_dim(&self) -> usize {
        *self.max_dims.last().unwrap()
    }

    fn allowed(&self, di: usize) -> bool {
        let pb = self.pb;
        let fits = pb.dims[di] + self.max_dim() <= pb.n || self.chosen.is_empty();
        match &pb.mode {
            Mode::Exact(counts) => self.used[di] < counts[di] && (!pb.prune || fits),
            Mode::EachAtLeastOnce | Mode::All => fits,
        }
    }

    fn feasible(&self) -> bool {
        let pb = self.pb;
        let m = self.max_dim();
        match &pb.mode {
            Mode::Exact(counts) => {
                !pb.prune
                    || (0..pb.dims.len()).all(|i| self.used[i] == counts[i] || pb.dims[i] + m <= pb.n)
            }
            Mode::All => true,
            Mode::EachAtLeastOnce => {
                let allowed = pb.dims.iter().take_while(|&&d| d + m <= pb.n).count();
                let mut rest = self.remaining;
                for i in 0..pb.dims.len() {
                    if self.used[i] == 0 {
                        if i >= allowed || rest < pb.weights[i] {
                            return false;
                        }
                        rest -= pb.weights[i];
                    }
                }
                let r = rest as usize;
                pb.reach[allowed][r / 64] >> (r % 64) & 1 == 1
            }
        }
    }

    fn complete(&self) -> bool {
        match &self.pb.mode {
            Mode::Exact(counts) => self.used == *counts,
            Mode::EachAtLeastOnce => self.used.iter().all(|&u| u > 0),
            Mode::All => true,
        }
    }

    fn conflicts(&self, ci: u32) -> bool {
        self.pb.candidates[ci as usize]
            .mask
            .iter()
            .any(|&(w, b)| self.covered[w as usize] & b != 0)
    }

    fn toggle(&mut self, ci: u32) {
        for &(w, b) in &self.pb.candidates[ci as usize].mask {
            self.covered[w as usize] ^= b;
        }
    }

    /// Places `ci`, returning `None` when the node budget is spent.
    fn push(&mut self, ci: u32) -> Option<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return None;
        }
        let c = &self.pb.candidates[ci as usize];
        let di = c.dim_idx;
        self.toggle(ci);
        self.chosen.push(ci);
        self.used[di] += 1;
        self.max_dims.push(self.max_dim().max(self.pb.dims[di]));
        self.remaining -= self.pb.weights[di];
        Some(())
    }

    fn pop(&mut self) {
        let ci = self.chosen.pop().unwrap();
        let di = self.pb.candidates[ci as usize].dim_idx;
        self.toggle(ci);
        self.used[di] -= 1;
        self.max_dims.pop();
        self.remaining += self.pb.weights[di];
    }

    /// Explores everything below the current state, starting the scan for
    /// uncovered points at `from`.
    pub(crate) fn dfs(&mut self, from: usize) -> Flow {
        if self.remaining == 0 {
            if !self.complete() {
                return Flow::Continue;
            }
            self.solutions.push(self.chosen.clone());
            return match self.pb.mode {
                Mode::All if self.solutions.len() < self.solution_limit => Flow::Continue,
                Mode::All => Flow::Stop,
                _ => Flow::Found,
            };
        }
        if let Some((branch, best)) = self.abandon {
            if best.load(Ordering::Relaxed) < branch {
                return Flow::Stop;
            }
        }
        let pt = self.first_uncovered(from);
        let pb = self.pb;
        for &ci in &pb.by_point[pt] {
            if !self.allowed(pb.candidates[ci as usize].dim_idx) || self.conflicts(ci) {
                continue;
            }
            if self.push(ci).is_none() {
                return Flow::Budget;
            }
            let flow = if self.feasible() { self.dfs(pt + 1) } else { Flow::Continue };
            self.pop();
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Explores only the subtree under root branch `ci`.
    pub(crate) fn branch(&mut self, ci: u32) -> Flow {
        if !self.allowed(self.pb.candidates[ci as usize].dim_idx) {
            return Flow::Continue;
        }
        if self.push(ci).is_none() {
            return Flow::Budget;
        }
        let flow = if self.feasible() { self.dfs(1) } else { Flow::Continue };
        self.pop();
        flow
    }
}

/// Runs the root branches in parallel and keeps the first success in
/// branching order.
pub(crate) fn run_parallel(pb: &Problem, budget: u64, threads: usize) -> (Flow, Option<Vec<u32>>, u64) {
    let nodes = AtomicU64::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let roots = pb.root_branches().to_vec();
    let work = || {
        roots
            .par_iter()
            .enumerate()
            .map(|(i, &ci)| {
                let mut w = pb.walker(&nodes, budget);
                w.abandon = Some((i, &best));
                let flow = w.branch(ci);
                if matches!(flow, Flow::Found) {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                (flow, w.solutions.pop())
            })
            .collect::<Vec<_>>()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let mut budget_hit = false;
    for (flow, sol) in results {
        match flow {
            Flow::Found => return (Flow::Found, sol, nodes.load(Ordering::Relaxed)),
            Flow::Budget => budget_hit = true,
            Flow::Continue | Flow::Stop => {}
        }
    }
    let flow = if budget_hit { Flow::Budget } else { Flow::Continue };
    (flow, None, nodes.load(Ordering::Relaxed))
}
