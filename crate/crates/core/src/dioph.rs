//! Non-negative solutions of the type equation
//! `sum_i (q^{n_i} - 1) x_i = q^n - 1` and the necessary conditions a
//! solution must meet to be the type of an actual partition.
//!
//! Passing every condition never proves existence; failing any one proves
//! that no partition of that type exists.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::DiophError;
use crate::partition::PartitionType;

/// Default cap on the number of solutions returned.
pub const DEFAULT_SOLUTION_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Pass,
    Fail,
    /// The condition only constrains non-trivial partitions, or its premise
    /// does not hold.
    NotApplicable,
}

impl Flag {
    fn from_bool(ok: bool) -> Flag {
        if ok {
            Flag::Pass
        } else {
            Flag::Fail
        }
    }
    fn guarded(applies: bool, ok: impl FnOnce() -> bool) -> Flag {
        if applies {
            Flag::from_bool(ok())
        } else {
            Flag::NotApplicable
        }
    }
    pub fn failed(self) -> bool {
        self == Flag::Fail
    }
}

/// One entry per necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    /// Two present dimensions sum to at most `n`; a dimension above `n/2`
    /// occurs at most once.
    pub pairwise_dims: Flag,
    /// The induced type on a hyperplane solves the type equation of `V_{n-1}`
    /// (applied recursively `depth` times).
    pub hyperplane_section: Flag,
    /// If the least listed dimension occurs, it occurs at least twice.
    pub least_dim_not_single: Flag,
    /// Over GF(2), if lines occur there are at least three.
    pub binary_lines_at_least_three: Flag,
    /// The least occurring dimension occurs at least `q + 1` times.
    pub min_count_q_plus_1: Flag,
    /// The least occurring dimension `t` occurs at least `q + t` times.
    pub min_count_q_plus_t: Flag,
    /// `q^t + 1 <= r <= floor((q^n - 1)/(q^t - 1))`.
    pub component_count_range: Flag,
    /// `r ≡ 1 (mod q^t)`.
    pub component_count_residue: Flag,
}

impl ConditionFlags {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, Flag)> {
        [
            ("pairwise-dims", self.pairwise_dims),
            ("hyperplane-section", self.hyperplane_section),
            ("least-dim-not-single", self.least_dim_not_single),
            ("binary-lines-at-least-three", self.binary_lines_at_least_three),
            ("min-count-q-plus-1", self.min_count_q_plus_1),
            ("min-count-q-plus-t", self.min_count_q_plus_t),
            ("component-count-range", self.component_count_range),
            ("component-count-residue", self.component_count_residue),
        ]
        .into_iter()
    }

    /// No condition is violated.
    pub fn all_pass(&self) -> bool {
        self.iter().all(|(_, f)| !f.failed())
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.iter().filter(|(_, f)| f.failed()).map(|(name, _)| name).collect()
    }
}

/// A non-negative solution `x` for dimensions `dims`, optionally annotated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeSolution {
    pub dims: Vec<usize>,
    pub x: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<ConditionFlags>,
}

impl TypeSolution {
    pub fn new(dims: Vec<usize>, x: Vec<u64>) -> TypeSolution {
        TypeSolution { dims, x, flags: None }
    }

    pub fn from_type(t: &PartitionType) -> TypeSolution {
        TypeSolution::new(t.dims(), t.counts())
    }

    pub fn to_type(&self) -> PartitionType {
        PartitionType::new(self.x.iter().copied().zip(self.dims.iter().copied()).collect())
            .expect("dims validated on construction")
    }

    /// Number of components, `r`.
    pub fn r(&self) -> u64 {
        self.x.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.r() == 1
    }

    /// Passes every condition (or is unannotated).
    pub fn feasible(&self) -> bool {
        self.flags.as_ref().is_none_or(ConditionFlags::all_pass)
    }
}

fn pow(q: u64, k: usize) -> Result<u128, DiophError> {
    (q as u128).checked_pow(k as u32).ok_or(DiophError::Overflow)
}

fn check_dims(n: usize, dims: &[usize]) -> Result<(), DiophError> {
    if dims.is_empty() || dims[0] == 0 || dims.windows(2).any(|w| w[0] >= w[1]) || *dims.last().unwrap() > n {
        return Err(DiophError::BadDims);
    }
    Ok(())
}

/// All non-negative solutions, in ascending lexicographic order of `x`.
pub fn solve_type_equation(q: u64, n: usize, dims: &[usize], budget: usize) -> Result<Vec<TypeSolution>, DiophError> {
    check_dims(n, dims)?;
    let target = pow(q, n)? - 1;
    let weights: Vec<u128> = dims.iter().map(|&d| pow(q, d).map(|p| p - 1)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut x = vec![0u64; dims.len()];
    solve_rec(&weights, 0, target, &mut x, &mut out, budget)?;
    Ok(out
        .into_iter()
        .map(|x| TypeSolution::new(dims.to_vec(), x))
        .collect())
}

fn solve_rec(
    weights: &[u128],
    i: usize,
    rest: u128,
    x: &mut [u64],
    out: &mut Vec<Vec<u64>>,
    budget: usize,
) -> Result<(), DiophError> {
    let w = weights[i];
    if i + 1 == weights.len() {
        if rest.is_multiple_of(w) {
            x[i] = (rest / w) as u64;
            if out.len() == budget {
                return Err(DiophError::BudgetExceeded(budget));
            }
            out.push(x.to_vec());
        }
        return Ok(());
    }
    for xi in 0..=(rest / w) {
        x[i] = xi as u64;
        solve_rec(weights, i + 1, rest - xi * w, x, out, budget)?;
    }
    Ok(())
}

/// Evaluates every necessary condition on `sol` with a single hyperplane
/// level.
pub fn annotate(sol: &TypeSolution, q: u64, n: usize) -> Result<TypeSolution, DiophError> {
    annotate_with_depth(sol, q, n, 1)
}

/// As [`annotate`], applying the hyperplane condition `depth` levels deep.
pub fn annotate_with_depth(sol: &TypeSolution, q: u64, n: usize, depth: usize) -> Result<TypeSolution, DiophError> {
    check_dims(n, &sol.dims)?;
    if sol.x.len() != sol.dims.len() {
        return Err(DiophError::NotASolution);
    }
    let target = pow(q, n)? - 1;
    let mut total = 0u128;
    for (&d, &x) in sol.dims.iter().zip(&sol.x) {
        total = (pow(q, d)? - 1)
            .checked_mul(x as u128)
            .and_then(|v| v.checked_add(total))
            .ok_or(DiophError::Overflow)?;
    }
    if total != target {
        return Err(DiophError::NotASolution);
    }

    let present: Vec<(usize, u64)> = sol
        .dims
        .iter()
        .copied()
        .zip(sol.x.iter().copied())
        .filter(|&(_, x)| x > 0)
        .collect();
    let nontrivial = sol.r() >= 2;

    let pairwise_dims = {
        let pairs_ok = present
            .iter()
            .enumerate()
            .all(|(i, &(a, _))| present[i + 1..].iter().all(|&(b, _)| a + b <= n));
        let big_ok = present.iter().all(|&(d, x)| 2 * d <= n || x <= 1);
        Flag::from_bool(pairs_ok && big_ok)
    };

    let hyperplane_section = if n >= 2 {
        Flag::from_bool(hyperplane_condition(q, n, &present, depth)?)
    } else {
        Flag::NotApplicable
    };

    let x1 = sol.x[0];
    let least_dim_not_single = Flag::guarded(nontrivial && x1 != 0, || x1 >= 2);
    let binary_lines_at_least_three = Flag::guarded(nontrivial && x1 != 0 && sol.dims[0] == 1 && q == 2, || x1 >= 3);

    let (t, s) = present[0];
    let min_count_q_plus_1 = Flag::guarded(nontrivial, || s > q);
    let min_count_q_plus_t = Flag::guarded(nontrivial, || s >= q + t as u64);
    let qt = pow(q, t)?;
    let r = sol.r() as u128;
    let component_count_range = Flag::guarded(nontrivial, || qt < r && r <= target / (qt - 1));
    let component_count_residue = Flag::guarded(nontrivial, || r % qt == 1);

    Ok(TypeSolution {
        dims: sol.dims.clone(),
        x: sol.x.clone(),
        flags: Some(ConditionFlags {
            pairwise_dims,
            hyperplane_section,
            least_dim_not_single,
            binary_lines_at_least_three,
            min_count_q_plus_1,
            min_count_q_plus_t,
            component_count_range,
            component_count_residue,
        }),
    })
}

/// Can the components be split into `a_i` meeting a hyperplane in dimension
/// `n_i` and `b_i = x_i - a_i` meeting it in `n_i - 1`, such that the pieces
/// solve the type equation of `V_{n-1}`?
fn hyperplane_condition(q: u64, n: usize, present: &[(usize, u64)], depth: usize) -> Result<bool, DiophError> {
    if depth == 0 || n < 2 {
        return Ok(true);
    }
    let target = pow(q, n - 1)? - 1;
    // every component contributes at least q^{n_i - 1} - 1 points
    let mut base = 0u128;
    for &(d, x) in present {
        base += (pow(q, d - 1)? - 1) * x as u128;
    }
    if base > target {
        return Ok(false);
    }
    let extra = target - base;
    let qm1 = q as u128 - 1;
    if !extra.is_multiple_of(qm1) {
        return Ok(false);
    }
    // choosing a_i > 0 adds a_i * q^{n_i-1} * (q-1); only components with
    // n_i < n can lie inside a hyperplane
    let mut items: Vec<(u128, u64)> = Vec::new();
    for &(d, x) in present {
        if d < n {
            items.push((pow(q, d - 1)?, x));
        }
    }
    let need = extra / qm1;
    if depth == 1 {
        let mut memo = HashMap::new();
        return Ok(split_exists(&items, 0, need, &mut memo));
    }
    let mut found = false;
    let mut a = vec![0u64; items.len()];
    enumerate_splits(&items, 0, need, &mut a, &mut |a| {
        let mut induced: Vec<(usize, u64)> = Vec::new();
        let mut k = 0;
        for &(d, x) in present {
            let inside = if d < n {
                k += 1;
                a[k - 1]
            } else {
                0
            };
            induced.push((d, inside));
            induced.push((d - 1, x - inside));
        }
        let mut merged: Vec<(usize, u64)> = Vec::new();
        induced.sort_unstable();
        for (d, x) in induced {
            if d == 0 || x == 0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.0 == d => last.1 += x,
                _ => merged.push((d, x)),
            }
        }
        if hyperplane_condition(q, n - 1, &merged, depth - 1).unwrap_or(false) {
            found = true;
        }
        found
    });
    Ok(found)
}

/// `need = sum a_i * w_i` with `0 <= a_i <= max_i`, where each weight divides
/// the next.
fn split_exists(items: &[(u128, u64)], i: usize, need: u128, memo: &mut HashMap<(usize, u128), bool>) -> bool {
    if i == items.len() {
        return need == 0;
    }
    if let Some(&hit) = memo.get(&(i, need)) {
        return hit;
    }
    let (w, max) = items[i];
    let result = if !need.is_multiple_of(w) {
        false
    } else {
        let units = need / w;
        let top = units.min(max as u128);
        if i + 1 == items.len() {
            units <= max as u128
        } else {
            let step = items[i + 1].0 / w;
            let mut a = units % step;
            let mut ok = false;
            while a <= top {
                if split_exists(items, i + 1, (units - a) * w, memo) {
                    ok = true;
                    break;
                }
                a += step;
            }
            ok
        }
    };
    memo.insert((i, need), result);
    result
}

/// Calls `visit` for every split; stops when it returns true.
fn enumerate_splits(items: &[(u128, u64)], i: usize, need: u128, a: &mut [u64], visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    if i == items.len() {
        return need == 0 && visit(a);
    }
    let (w, max) = items[i];
    let top = (need / w).min(max as u128);
    for ai in 0..=top {
        a[i] = ai as u64;
        if enumerate_splits(items, i + 1, need - ai * w, a, visit) {
            return true;
        }
    }
    a[i] = 0;
    false
}

/// A solution of `3 x_1 + 7 x_2 = 2^n - 1` with its known existence verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub solution: TypeSolution,
    pub exists: bool,
}

/// Over GF(2) with dimensions `{2, 3}`, a partition of every solution type
/// exists except when exactly one plane is used.
pub fn classify_binary_2_3(n: usize) -> Result<Vec<Classified>, DiophError> {
    if n < 3 {
        return Err(DiophError::BadDims);
    }
    Ok(solve_type_equation(2, n, &[2, 3], DEFAULT_SOLUTION_BUDGET)?
        .into_iter()
        .map(|s| {
            let exists = s.x[0] != 1;
            Classified {
                solution: annotate(&s, 2, n).expect("solver output solves the equation"),
                exists,
            }
        })
        .collect())
}
