//! Elementary decompositions, valuewise overlapping partitions and the
//! `l`-indices built from them.

use std::fmt;

use itertools::Itertools;

use crate::perm::Perm;
use crate::surjection::Surjection;

/// An element `x^i_t` of the tagged union `p^1 ⊔ ... ⊔ p^k`, as `(i, t)`
/// with both entries 1-based. The derived order is the tag-major one.
pub type Tagged = (usize, usize);

/// Ordered blocks `E_1, ..., E_l`; each block lists its elements in the
/// tag-major order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementaryDecomposition {
    pub blocks: Vec<Vec<Tagged>>,
}

impl ElementaryDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Tags present in block `j` (0-based), ascending.
    pub fn tags(&self, j: usize) -> Vec<usize> {
        let mut t: Vec<usize> = self.blocks[j].iter().map(|&(i, _)| i).collect();
        t.dedup();
        t
    }
}

/// `e^i(E)`: number of elements of the block carrying tag `i`.
pub fn ecount(block: &[Tagged], i: usize) -> usize {
    block.iter().filter(|&&(t, _)| t == i).count()
}

/// Pieces `S_1, ..., S_l` of the positions of a surjection, each stored as
/// sorted 0-based positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ValuewisePartition {
    pub pieces: Vec<Vec<usize>>,
}

impl ValuewisePartition {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// An `l`-index `α = (E_1..E_l; S_1..S_l)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LIndex {
    pub e: ElementaryDecomposition,
    pub s: ValuewisePartition,
}

impl LIndex {
    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }
}

impl fmt::Display for LIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self
            .e
            .blocks
            .iter()
            .map(|b| {
                let xs: Vec<String> = b.iter().map(|(i, t)| format!("x{i}_{t}")).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        let ss: Vec<String> = self
            .s
            .pieces
            .iter()
            .map(|p| {
                let xs: Vec<String> = p.iter().map(|q| (q + 1).to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "({}; {})", es.join(" "), ss.join(" "))
    }
}

/// All elementary decompositions of `p^1 ⊔ ... ⊔ p^k` into `l` blocks.
pub fn elementary_decompositions(ps: &[usize], l: usize) -> Vec<ElementaryDecomposition> {
    let per_tag: Vec<Vec<Vec<usize>>> = ps
        .iter()
        .map(|&p| (0..l).combinations_with_replacement(p).collect())
        .collect();
    let mut out = Vec::new();
    let sizes: Vec<usize> = per_tag.iter().map(Vec::len).collect();
    for choice in product_indices(&sizes) {
        let mut blocks = vec![Vec::new(); l];
        for (i, &c) in choice.iter().enumerate() {
            let seq = &per_tag[i][c];
            for (t, &b) in seq.iter().enumerate() {
                blocks[b].push((i + 1, t + 1));
            }
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(ElementaryDecomposition { blocks });
        }
    }
    out
}

/// Ways to cover `items` (in order) by `s` overlapping pieces.
fn overlapping_partitions(items: &[usize], s: usize) -> Vec<Vec<Vec<usize>>> {
    let n = items.len();
    (0..n)
        .combinations_with_replacement(s - 1)
        .map(|inner| {
            let mut cuts = vec![0];
            cuts.extend(inner);
            cuts.push(n - 1);
            (0..s)
                .map(|r| items[cuts[r]..=cuts[r + 1]].to_vec())
                .collect()
        })
        .collect()
}

/// True when consecutive pieces share exactly their boundary element and
/// the pieces cover `items`.
pub fn is_overlapping_partition(items: &[usize], pieces: &[Vec<usize>]) -> bool {
    if pieces.is_empty() || pieces.iter().any(|p| p.is_empty()) {
        return false;
    }
    let mut pos = 0;
    for (r, p) in pieces.iter().enumerate() {
        if r > 0 {
            pos -= 1;
        }
        if pos + p.len() > items.len() || items[pos..pos + p.len()] != p[..] {
            return false;
        }
        pos += p.len();
    }
    pos == items.len()
}

/// All valuewise overlapping partitions of `f` with `l` nonempty pieces.
pub fn valuewise_partitions(f: &Surjection, l: usize) -> Vec<ValuewisePartition> {
    let per_value: Vec<Vec<Vec<(usize, Vec<usize>)>>> = (1..=f.arity())
        .map(|i| {
            let fib = f.fiber(i);
            let mut opts = Vec::new();
            for s in 1..=l {
                for js in (0..l).combinations(s) {
                    for parts in overlapping_partitions(&fib, s) {
                        opts.push(js.iter().copied().zip(parts).collect());
                    }
                }
            }
            opts
        })
        .collect();
    let mut out = Vec::new();
    let sizes: Vec<usize> = per_value.iter().map(Vec::len).collect();
    for choice in product_indices(&sizes) {
        let opts = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| per_value[i][c].as_slice());
        if let Some(v) = assemble(l, opts) {
            out.push(v);
        }
    }
    out
}

fn assemble<'a>(
    l: usize,
    choice: impl Iterator<Item = &'a [(usize, Vec<usize>)]>,
) -> Option<ValuewisePartition> {
    let mut pieces = vec![Vec::new(); l];
    for opt in choice {
        for (j, part) in opt {
            pieces[*j].extend_from_slice(part);
        }
    }
    if pieces.iter().any(|p| p.is_empty()) {
        return None;
    }
    for p in &mut pieces {
        p.sort_unstable();
    }
    Some(ValuewisePartition { pieces })
}

/// `A_l(f; p^1, ..., p^k)`.
///
/// For a fixed decomposition the blocks that may meet each fiber are forced
/// by compatibility, so only the overlapping cuts of each fiber are free.
pub fn enumerate_indices(f: &Surjection, ps: &[usize], l: usize) -> Vec<LIndex> {
    assert_eq!(ps.len(), f.arity(), "one length per input");
    let mut out = Vec::new();
    let fibers: Vec<Vec<usize>> = (1..=f.arity()).map(|i| f.fiber(i)).collect();
    for e in elementary_decompositions(ps, l) {
        let per_value: Vec<Vec<Vec<(usize, Vec<usize>)>>> = (1..=f.arity())
            .map(|i| {
                let js: Vec<usize> = (0..l).filter(|&j| ecount(&e.blocks[j], i) > 0).collect();
                overlapping_partitions(&fibers[i - 1], js.len())
                    .into_iter()
                    .map(|parts| js.iter().copied().zip(parts).collect())
                    .collect()
            })
            .collect();
        let sizes: Vec<usize> = per_value.iter().map(Vec::len).collect();
        for choice in product_indices(&sizes) {
            let opts = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| per_value[i][c].as_slice());
            if let Some(s) = assemble(l, opts) {
                out.push(LIndex { e: e.clone(), s });
            }
        }
    }
    out
}

/// Checks every defining condition of an `l`-index; returns the first
/// violated one.
pub fn validate(f: &Surjection, ps: &[usize], alpha: &LIndex) -> Result<(), String> {
    let l = alpha.e.len();
    if alpha.s.len() != l {
        return Err("E and S have different lengths".into());
    }
    let mut seen: Vec<Tagged> = alpha.e.blocks.iter().flatten().copied().collect();
    seen.sort_unstable();
    let all: Vec<Tagged> = ps
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (1..=p).map(move |t| (i + 1, t)))
        .collect();
    if seen != all {
        return Err("blocks do not partition the tagged union".into());
    }
    for b in &alpha.e.blocks {
        if b.is_empty() {
            return Err("empty block".into());
        }
    }
    for (i, &p) in ps.iter().enumerate() {
        let mut last_block = 0;
        for t in 1..=p {
            let j = alpha
                .e
                .blocks
                .iter()
                .position(|b| b.contains(&(i + 1, t)))
                .unwrap();
            if j < last_block {
                return Err(format!("tag {} is not order-compatible", i + 1));
            }
            last_block = j;
        }
    }
    for i in 1..=f.arity() {
        let fib = f.fiber(i);
        let parts: Vec<Vec<usize>> = alpha
            .s
            .pieces
            .iter()
            .map(|p| {
                p.iter()
                    .copied()
                    .filter(|q| f.entries()[*q] as usize == i)
                    .collect::<Vec<_>>()
            })
            .filter(|p| !p.is_empty())
            .collect();
        if !is_overlapping_partition(&fib, &parts) {
            return Err(format!("fiber of {i} is not overlapped"));
        }
    }
    for j in 0..l {
        if alpha.s.pieces[j].is_empty() {
            return Err("empty piece".into());
        }
        let mut img: Vec<usize> = alpha.s.pieces[j]
            .iter()
            .map(|&q| f.entries()[q] as usize)
            .collect();
        img.sort_unstable();
        img.dedup();
        if img != alpha.e.tags(j) {
            return Err(format!("piece {} is incompatible with its block", j + 1));
        }
    }
    Ok(())
}

/// `σ_α = μ ∘ φ^{-1}` in one-line form: entry number `φ(x)` is the position
/// of `x` in the concatenation `E_1 E_2 ... E_l`.
pub fn shuffle_sigma(e: &ElementaryDecomposition, ps: &[usize]) -> Perm {
    let mut offsets = vec![0];
    for &p in ps {
        offsets.push(offsets.last().unwrap() + p);
    }
    let mut sig = vec![0; *offsets.last().unwrap()];
    let mut pos = 1;
    for b in &e.blocks {
        for &(i, t) in b {
            sig[offsets[i - 1] + t - 1] = pos;
            pos += 1;
        }
    }
    sig
}

/// Index tuples of the cartesian product of lists with the given sizes;
/// the empty product has one (empty) tuple.
pub(crate) fn product_indices(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut next = if sizes.contains(&0) {
        None
    } else {
        Some(vec![0; sizes.len()])
    };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        for pos in (0..sizes.len()).rev() {
            succ[pos] += 1;
            if succ[pos] < sizes[pos] {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Surjection {
        x.parse().unwrap()
    }

    #[test]
    fn one_index_of_length_one() {
        let a = enumerate_indices(&s("(12)"), &[1, 1], 1);
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].e.blocks, vec![vec![(1, 1), (2, 1)]]);
        assert_eq!(a[0].s.pieces, vec![vec![0, 1]]);
    }

    #[test]
    fn two_indices_of_length_two() {
        let a = enumerate_indices(&s("(12)"), &[1, 1], 2);
        assert_eq!(a.len(), 2);
        let orders: Vec<_> = a.iter().map(|x| x.e.blocks.clone()).collect();
        assert!(orders.contains(&vec![vec![(1, 1)], vec![(2, 1)]]));
        assert!(orders.contains(&vec![vec![(2, 1)], vec![(1, 1)]]));
    }

    #[test]
    fn listed_valuewise_partition() {
        let f = s("(1212)");
        let v = valuewise_partitions(&f, 2);
        assert!(v.contains(&ValuewisePartition {
            pieces: vec![vec![0, 1, 2], vec![1, 2, 3]]
        }));
    }

    #[test]
    fn no_indices_beyond_total_length() {
        assert!(enumerate_indices(&s("(121)"), &[1, 2], 4).is_empty());
    }

    #[test]
    fn shuffles() {
        let e = ElementaryDecomposition {
            blocks: vec![vec![(1, 1), (2, 1)]],
        };
        assert_eq!(shuffle_sigma(&e, &[1, 1]), vec![1, 2]);
        let e = ElementaryDecomposition {
            blocks: vec![vec![(2, 1)], vec![(1, 1)]],
        };
        assert_eq!(shuffle_sigma(&e, &[1, 1]), vec![2, 1]);
    }

    #[test]
    fn validator_rejects_bad_indices() {
        let f = s("(12)");
        let good = enumerate_indices(&f, &[1, 1], 2).remove(0);
        assert!(validate(&f, &[1, 1], &good).is_ok());
        let mut bad = good.clone();
        bad.s.pieces.swap(0, 1);
        assert!(validate(&f, &[1, 1], &bad).is_err());
        let wrong_order = LIndex {
            e: ElementaryDecomposition {
                blocks: vec![vec![(1, 2)], vec![(1, 1)]],
            },
            s: ValuewisePartition {
                pieces: vec![vec![0], vec![0]],
            },
        };
        assert!(validate(&s("(1)"), &[2], &wrong_order).is_err());
    }

    #[test]
    fn overlapping_partition_predicate() {
        assert!(is_overlapping_partition(
            &[1, 3, 5],
            &[vec![1, 3], vec![3, 5]]
        ));
        assert!(is_overlapping_partition(&[1], &[vec![1], vec![1]]));
        assert!(!is_overlapping_partition(
            &[1, 3, 5],
            &[vec![1], vec![3, 5]]
        ));
    }

    #[test]
    fn product_of_nothing_is_one_tuple() {
        assert_eq!(product_indices(&[]).count(), 1);
        assert_eq!(product_indices(&[2, 3]).count(), 6);
        assert_eq!(product_indices(&[2, 0]).count(), 0);
    }
}
