//! Finite formal linear combinations.

use std::collections::btree_map::{self, BTreeMap};

use crate::ring::Coeff;

/// A formal sum `c_1 b_1 + ... + c_n b_n` with distinct basis keys and
/// nonzero coefficients, kept in the key order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord, R> {
    terms: BTreeMap<K, R>,
}

impl<K: Ord, R> Default for LinComb<K, R> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, R: Coeff> LinComb<K, R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K, c: R) -> Self {
        let mut out = Self::zero();
        out.add_term(key, c);
        out
    }

    pub fn basis(key: K) -> Self {
        Self::single(key, R::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: K, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: R) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), *v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, R::one());
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_scaled(other, -R::one());
    }

    pub fn scaled(&self, c: R) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coefficient(&self, key: &K) -> R {
        self.terms.get(key).copied().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &R)> + '_ {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> + '_ {
        self.terms.keys()
    }

    /// Linear extension of `f` from basis keys.
    pub fn flat_map<K2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> LinComb<K2, R>,
    ) -> LinComb<K2, R> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), *c);
        }
        out
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(R) -> S) -> LinComb<K, S> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(*c));
        }
        out
    }
}

impl<K: Ord + Clone, R: Coeff> FromIterator<(K, R)> for LinComb<K, R> {
    fn from_iter<I: IntoIterator<Item = (K, R)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord, R> IntoIterator for LinComb<K, R> {
    type Item = (K, R);
    type IntoIter = btree_map::IntoIter<K, R>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

/// Writes `c*b` terms joined by `+`/`-`, dropping unit coefficients.
pub fn format_sum<'a, K: 'a, R: Coeff>(
    terms: impl Iterator<Item = (&'a K, &'a R)>,
    mut show: impl FnMut(&K) -> String,
) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        let v = c.to_signed();
        let body = show(k);
        if v < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if v.abs() != 1 {
            out.push_str(&format!("{}*", v.abs()));
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_keys() {
        let mut a: LinComb<u8, i64> = LinComb::single(1, 2);
        a.add_term(1, -2);
        assert!(a.is_zero());
        a.add_term(3, 0);
        assert!(a.is_zero());
    }

    #[test]
    fn formatting() {
        let a: LinComb<u8, i64> = [(1, -1), (2, 3)].into_iter().collect();
        assert_eq!(format_sum(a.iter(), |k| format!("b{k}")), "-b1+3*b2");
    }
}
