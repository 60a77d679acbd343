use super::space::Ambient;
use super::subspace::Subspace;
use crate::error::GfError;

/// Default cap on the number of subspaces materialized at once.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 5_000_000;

/// The Gaussian binomial `[n choose d]_q`, or `None` on overflow.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> Option<u128> {
    if d > n {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num = num.checked_mul(q.checked_pow((n - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Every `d`-dimensional subspace of the ambient space, each exactly once,
/// sorted by canonical basis.
pub fn enumerate_subspaces(ambient: &Ambient, d: usize, budget: u128) -> Result<Vec<Subspace>, GfError> {
    let n = ambient.n();
    let q = ambient.q();
    let count = gaussian_binomial(n, d, q as u64).unwrap_or(u128::MAX);
    if count > budget {
        return Err(GfError::BudgetExceeded { count, budget });
    }
    let mut out = Vec::with_capacity(count as usize);
    if d > n {
        return Ok(out);
    }
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        // free cells: (row, col) right of the row's pivot, not in a pivot column
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                (p + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut rows: Vec<Vec<u32>> = pivots
            .iter()
            .map(|&p| {
                let mut r = vec![0u32; n];
                r[p] = 1;
                r
            })
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            for (&(i, c), &v) in free.iter().zip(&digits) {
                rows[i][c] = v;
            }
            out.push(Subspace::span(ambient, &rows)?);
            // odometer increment
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < q {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let d = c.len();
    if d == 0 {
        return false;
    }
    let mut i = d;
    while i > 0 {
        i -= 1;
        if c[i] < n - d + i {
            c[i] += 1;
            for j in i + 1..d {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{field_of_order, make_field};
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1, 2), Some(3));
        assert_eq!(gaussian_binomial(4, 2, 2), Some(35));
        assert_eq!(gaussian_binomial(3, 1, 3), Some(13));
        assert_eq!(gaussian_binomial(5, 0, 7), Some(1));
        assert_eq!(gaussian_binomial(3, 4, 2), Some(0));
    }

    #[test]
    fn enumeration_examples() {
        let a = Ambient::new(make_field(2, 1).unwrap(), 2);
        assert_eq!(enumerate_subspaces(&a, 1, 100).unwrap().len(), 3);
        let a = Ambient::new(make_field(2, 1).unwrap(), 4);
        assert_eq!(enumerate_subspaces(&a, 2, 100).unwrap().len(), 35);
        let a = Ambient::new(make_field(3, 1).unwrap(), 3);
        assert_eq!(enumerate_subspaces(&a, 1, 100).unwrap().len(), 13);
    }

    #[test]
    fn budget_is_enforced() {
        let a = Ambient::new(make_field(2, 1).unwrap(), 4);
        assert_eq!(
            enumerate_subspaces(&a, 2, 34).unwrap_err(),
            GfError::BudgetExceeded { count: 35, budget: 34 }
        );
    }

    #[test]
    fn counts_match_gaussian_binomial_and_are_distinct() {
        for q in [2u64, 3, 4] {
            let f = field_of_order(q).unwrap();
            for n in 0..=5 {
                let a = Ambient::new(f.clone(), n);
                for d in 0..=n {
                    let subs = enumerate_subspaces(&a, d, 1 << 20).unwrap();
                    assert_eq!(subs.len() as u128, gaussian_binomial(n, d, q).unwrap());
                    assert!(subs.windows(2).all(|w| w[0] < w[1]));
                    let sets: HashSet<Vec<u64>> =
                        subs.iter().map(|s| s.nonzero_codes().unwrap()).collect();
                    assert_eq!(sets.len(), subs.len());
                }
            }
        }
    }
}
