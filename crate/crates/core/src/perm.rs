//! Lexicographic permutation helpers shared by the separator-guessing solvers.

pub(crate) fn factorial(k: usize) -> u128 {
    (1..=k as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// The `index`-th permutation of `items` in lexicographic order of positions
/// (index 0 is `items` itself).
pub(crate) fn nth_permutation(items: &[usize], mut index: u128) -> Vec<usize> {
    let mut pool = items.to_vec();
    let mut out = Vec::with_capacity(items.len());
    for remaining in (1..=items.len()).rev() {
        let block = factorial(remaining - 1);
        let pick = (index / block) as usize;
        index %= block;
        out.push(pool.remove(pick));
    }
    out
}
