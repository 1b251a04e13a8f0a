//! Permutations in one-line notation with values `1..=n`.

use crate::error::{Error, Result};

/// `sigma[i - 1] = sigma(i)`.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (1..=n).collect()
}

pub fn check(sigma: &[usize]) -> Result<()> {
    let n = sigma.len();
    let mut seen = vec![false; n + 1];
    for &v in sigma {
        if v == 0 || v > n || seen[v] {
            return Err(Error::NotPermutation(sigma.to_vec()));
        }
        seen[v] = true;
    }
    Ok(())
}

pub fn inverse(sigma: &[usize]) -> Perm {
    let mut inv = vec![0; sigma.len()];
    for (i, &v) in sigma.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

/// `(sigma tau)(i) = sigma(tau(i))`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Perm {
    tau.iter().map(|&t| sigma[t - 1]).collect()
}

/// Number of inversions of a sequence of distinct comparable items.
pub fn inversions<T: Ord>(items: &[T]) -> usize {
    let mut n = 0;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                n += 1;
            }
        }
    }
    n
}

/// The cycle `i -> i + 1 (mod n)` raised to the power `j`.
pub fn cyclic_power(n: usize, j: usize) -> Perm {
    (0..n).map(|i| (i + j) % n + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_compose() {
        let s = vec![2, 3, 1];
        assert_eq!(compose(&s, &inverse(&s)), identity(3));
        assert_eq!(cyclic_power(3, 1), s);
        assert_eq!(compose(&s, &s), cyclic_power(3, 2));
        assert!(check(&[1, 1]).is_err());
        assert_eq!(inversions(&[3, 1, 2]), 2);
    }
}
