//! Non-degenerate surjective sequences, the basis of the sequence operad.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A non-degenerate surjection `f: {1..m} -> {1..k}` stored as its sequence
/// of values.
///
/// The empty sequence is allowed and is the arity-0 element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surjection {
    entries: Vec<u8>,
    arity: usize,
}

impl Surjection {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let arity = entries.iter().copied().max().unwrap_or(0) as usize;
        let mut hit = vec![false; arity + 1];
        for &v in &entries {
            if v == 0 {
                return Err(Error::NotSurjective(format!("{entries:?}")));
            }
            hit[v as usize] = true;
        }
        if hit[1..].iter().any(|h| !h) {
            return Err(Error::NotSurjective(format!("{entries:?}")));
        }
        if entries.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate(format!("{entries:?}")));
        }
        Ok(Surjection { entries, arity })
    }

    /// `None` when the sequence is degenerate or misses a value of
    /// `1..=max`; such sequences are the zero element.
    pub fn nondegenerate(entries: Vec<u8>) -> Option<Self> {
        Self::new(entries).ok()
    }

    /// Like [`Surjection::nondegenerate`] but with a prescribed arity.
    pub fn with_arity(entries: Vec<u8>, arity: usize) -> Option<Self> {
        let s = Self::new(entries).ok()?;
        (s.arity == arity).then_some(s)
    }

    pub fn empty() -> Self {
        Surjection {
            entries: Vec::new(),
            arity: 0,
        }
    }

    /// The identity permutation `(1 2 ... k)`.
    pub fn identity(k: usize) -> Self {
        Surjection {
            entries: (1..=k as u8).collect(),
            arity: k,
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Homological degree `m - k`.
    pub fn degree(&self) -> usize {
        self.entries.len() - self.arity
    }

    pub fn is_permutation(&self) -> bool {
        self.degree() == 0
    }

    pub fn fiber_size(&self, i: usize) -> usize {
        self.entries.iter().filter(|&&v| v as usize == i).count()
    }

    /// `|f^{-1}(i)| - 1`, and 0 for an empty fiber.
    pub fn fiber_norm(&self, i: usize) -> usize {
        self.fiber_size(i).saturating_sub(1)
    }

    /// 0-based positions of the value `i`.
    pub fn fiber(&self, i: usize) -> Vec<usize> {
        self.positions_of(i).collect()
    }

    fn positions_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(move |&(_, &v)| v as usize == i)
            .map(|(q, _)| q)
    }

    /// Sign exponent of deleting the (0-based) position `q`.
    pub fn tau_prime(&self, q: usize) -> usize {
        let v = self.entries[q] as usize;
        let before: usize = (1..v).map(|i| self.fiber_norm(i)).sum();
        before
            + self.entries[..q]
                .iter()
                .filter(|&&w| w as usize == v)
                .count()
    }

    /// 0-based positions which are not the last occurrence of their value,
    /// ordered by value and then by position.
    pub fn caesuras(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for v in 1..=self.arity {
            let fib: Vec<usize> = self.positions_of(v).collect();
            out.extend_from_slice(&fib[..fib.len().saturating_sub(1)]);
        }
        out
    }

    /// Restriction to a set of 0-based positions, relabelled order-preservingly
    /// onto `1..=r`. Returns the relabelled sequence and the sorted original
    /// values it hits.
    pub fn restrict_raw(&self, positions: &[usize]) -> (Vec<u8>, Vec<u8>) {
        let mut values: Vec<u8> = positions.iter().map(|&q| self.entries[q]).collect();
        values.sort_unstable();
        values.dedup();
        let seq = positions
            .iter()
            .map(|&q| {
                let v = self.entries[q];
                values.iter().position(|&w| w == v).unwrap() as u8 + 1
            })
            .collect();
        (seq, values)
    }

    /// `f_S`: zero (`None`) when the relabelled sequence is degenerate.
    pub fn restrict(&self, positions: &[usize]) -> Option<Surjection> {
        Surjection::nondegenerate(self.restrict_raw(positions).0)
    }

    /// Largest number of value changes of `f` restricted to a pair of values.
    pub fn complexity(&self) -> usize {
        let mut best = 0;
        for i in 1..=self.arity {
            for j in i + 1..=self.arity {
                best = best.max(self.pair_complexity(i, j));
            }
        }
        best
    }

    /// Number of value changes of `f` restricted to `{i, j}`.
    pub fn pair_complexity(&self, i: usize, j: usize) -> usize {
        let mut changes = 0;
        let mut last = None;
        for &v in &self.entries {
            let v = v as usize;
            if v != i && v != j {
                continue;
            }
            if let Some(l) = last {
                if l != v {
                    changes += 1;
                }
            }
            last = Some(v);
        }
        changes
    }

    /// All non-degenerate surjections of arity `k` and length `m`, in order.
    pub fn all(k: usize, m: usize) -> Vec<Surjection> {
        let mut out = Vec::new();
        if k == 0 {
            if m == 0 {
                out.push(Surjection::empty());
            }
            return out;
        }
        let mut seq = vec![0u8; m];
        fn rec(seq: &mut Vec<u8>, pos: usize, k: usize, out: &mut Vec<Surjection>) {
            if pos == seq.len() {
                if let Some(s) = Surjection::with_arity(seq.clone(), k) {
                    out.push(s);
                }
                return;
            }
            for v in 1..=k as u8 {
                if pos > 0 && seq[pos - 1] == v {
                    continue;
                }
                seq[pos] = v;
                rec(seq, pos + 1, k, out);
            }
        }
        rec(&mut seq, 0, k, &mut out);
        out
    }
}

impl PartialOrd for Surjection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surjection {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.entries.len(), &self.entries).cmp(&(other.entries.len(), &other.entries))
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.arity <= 9 { "" } else { " " };
        let body: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", body.join(sep))
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Surjection {
    type Err = Error;

    /// Accepts `(1 2 1)`, `(121)` and the same without parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|u| u.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        let entries: Vec<u8> = if t.contains(|c: char| c.is_whitespace() || c == ',') {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .map(|w| w.parse::<u8>().map_err(|_| Error::Parse(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(s.to_string()))
                })
                .collect::<Result<_>>()?
        };
        Surjection::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Surjection {
        x.parse().unwrap()
    }

    #[test]
    fn parsing_and_printing() {
        assert_eq!(s("(1 2 1 3 1)"), s("(12131)"));
        assert_eq!(s("(12131)").to_string(), "(12131)");
        assert!("(112)".parse::<Surjection>().is_err());
        assert!("(13)".parse::<Surjection>().is_err());
        assert_eq!(s("(1 2 1)").degree(), 1);
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(s("(12)").complexity(), 1);
        assert_eq!(s("(121)").complexity(), 2);
        assert_eq!(s("(1212)").complexity(), 3);
        assert_eq!(s("(1)").complexity(), 0);
    }

    #[test]
    fn restriction() {
        let f = s("(1212)");
        assert_eq!(f.restrict(&[0, 1, 2]), Some(s("(121)")));
        assert_eq!(f.restrict(&[1, 2]), Some(s("(21)")));
        assert_eq!(f.restrict(&[1, 3]), None);
    }

    #[test]
    fn caesura_order() {
        assert_eq!(s("(12131)").caesuras(), vec![0, 2]);
        assert_eq!(s("(2121)").caesuras(), vec![1, 0]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Surjection::all(2, 3).len(), 2);
        assert_eq!(Surjection::all(3, 3).len(), 6);
        assert_eq!(Surjection::all(0, 0).len(), 1);
        let mut v = Surjection::all(2, 4);
        let sorted = {
            let mut w = v.clone();
            w.sort();
            w
        };
        assert_eq!(v, sorted);
        v.dedup();
        assert_eq!(v.len(), 2);
    }
}
