//! The coefficient elements `C(f; e^1, ..., e^k)` and the pieces `X_1`,
//! `X_2`, `X_3` of their boundary.
//!
//! All coefficients have integer entries, so one shared table over `Z` is
//! kept and reduced into other rings on demand.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::indexing::{ecount, enumerate_indices, shuffle_sigma, LIndex, Tagged};
use crate::operad::OperadElement;
use crate::perm;
use crate::ring::Coeff;
use crate::surjection::Surjection;

type Key = (Surjection, Vec<usize>);

/// Memo table for `C(f; e)` over one ring. Readers share the lock; a key may
/// be computed twice by racing threads, which is harmless.
pub struct CoefficientTable<R: Coeff> {
    memo: RwLock<HashMap<Key, Arc<OperadElement<R>>>>,
}

impl<R: Coeff> Default for CoefficientTable<R> {
    fn default() -> Self {
        CoefficientTable {
            memo: RwLock::new(HashMap::new()),
        }
    }
}

/// The recursion order: `(k, m, e^1, ..., e^k)` lexicographically.
fn order_key(f: &Surjection, e: &[usize]) -> Vec<usize> {
    let mut v = vec![f.arity(), f.len()];
    v.extend_from_slice(e);
    v
}

/// `f_S`, together with the `e`-vector `E` induces on the values of `f_S`.
fn restricted_key(
    f: &Surjection,
    piece: &[usize],
    block: &[Tagged],
) -> Option<(Surjection, Vec<usize>)> {
    let (seq, values) = f.restrict_raw(piece);
    let g = Surjection::nondegenerate(seq)?;
    let es = values.iter().map(|&v| ecount(block, v as usize)).collect();
    Some((g, es))
}

/// `||f_S^{-1}(i)||` for an original value `i` of `f`.
pub(crate) fn piece_fiber_norm(f: &Surjection, piece: &[usize], i: usize) -> usize {
    piece
        .iter()
        .filter(|&&q| f.entries()[q] as usize == i)
        .count()
        .saturating_sub(1)
}

impl<R: Coeff> CoefficientTable<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of every memoized `((f, e), C(f; e))`.
    pub fn entries(&self) -> Vec<(Surjection, Vec<usize>, Arc<OperadElement<R>>)> {
        let mut v: Vec<_> = self
            .memo
            .read()
            .unwrap()
            .iter()
            .map(|((f, e), c)| (f.clone(), e.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        v
    }

    /// `C(f; e)`, an element of arity `Σ e^i` and homological degree
    /// `Σ e^i + m - k - 1`.
    pub fn get(&self, f: &Surjection, e: &[usize]) -> Arc<OperadElement<R>> {
        assert_eq!(e.len(), f.arity(), "one multiplicity per value");
        assert!(e.iter().all(|&x| x >= 1), "multiplicities are positive");
        let key = (f.clone(), e.to_vec());
        if let Some(c) = self.memo.read().unwrap().get(&key) {
            return c.clone();
        }
        let c = Arc::new(self.compute(f, e));
        self.memo.write().unwrap().entry(key).or_insert(c).clone()
    }

    /// Same as [`get`](Self::get) but asserting that `(f, e)` precedes
    /// `parent` in the recursion order.
    fn get_below(&self, f: &Surjection, e: &[usize], parent: &[usize]) -> Arc<OperadElement<R>> {
        let k = order_key(f, e);
        assert!(
            k < parent.to_vec(),
            "recursion must descend: {k:?} !< {parent:?}"
        );
        self.get(f, e)
    }

    fn compute(&self, f: &Surjection, e: &[usize]) -> OperadElement<R> {
        let n: usize = e.iter().sum();
        if f.arity() == 1 && f.len() == 1 && e == [1] {
            return OperadElement::unit();
        }
        let mut tot = self.x1(f, e);
        tot.add_assign(&self.x2(f, e));
        let a: usize = e[..f.entries()[0] as usize - 1].iter().sum::<usize>() + 1;
        let out = tot.s(a).expect("a is within the arity");
        debug_assert!(out.is_zero() || out.arity() == n);
        out
    }

    /// `X_1 = C(df; e)`, extended linearly in `f`.
    pub fn x1(&self, f: &Surjection, e: &[usize]) -> OperadElement<R> {
        let n = e.iter().sum();
        let parent = order_key(f, e);
        let df = OperadElement::<R>::basis(f.clone()).boundary();
        let mut out = OperadElement::zero(n);
        for (g, c) in df.iter() {
            out.add_scaled(&self.get_below(g, e, &parent), *c);
        }
        out
    }

    /// `C(f_S; E)` for a piece and a block of an index, or `None` when it
    /// vanishes.
    pub fn restricted(
        &self,
        f: &Surjection,
        piece: &[usize],
        block: &[Tagged],
    ) -> Option<(Arc<OperadElement<R>>, Surjection)> {
        let (g, es) = restricted_key(f, piece, block)?;
        let c = self.get(&g, &es);
        (!c.is_zero()).then_some((c, g))
    }

    /// `X_2 = Σ_{α ∈ A_2(f; e)} (-1)^θ (C(f_{S_1}; E_1) · C(f_{S_2}; E_2)) ⋄ σ_α`.
    pub fn x2(&self, f: &Surjection, e: &[usize]) -> OperadElement<R> {
        let n = e.iter().sum();
        let k = f.arity();
        let parent = order_key(f, e);
        let mut out = OperadElement::zero(n);
        for alpha in enumerate_indices(f, e, 2) {
            let (b1, b2) = (&alpha.e.blocks[0], &alpha.e.blocks[1]);
            let (s1, s2) = (&alpha.s.pieces[0], &alpha.s.pieces[1]);
            let Some((g1, e1)) = restricted_key(f, s1, b1) else {
                continue;
            };
            let Some((g2, e2)) = restricted_key(f, s2, b2) else {
                continue;
            };
            let c1 = self.get_below(&g1, &e1, &parent);
            let c2 = self.get_below(&g2, &e2, &parent);
            if c1.is_zero() || c2.is_zero() {
                continue;
            }
            let (n1, n2) = (b1.len() as i64, b2.len() as i64);
            let mut theta = 1 + g1.degree() as i64 + n1 * (g2.degree() as i64 + n2 - 1);
            for i in 1..=k {
                for i2 in 1..i {
                    theta += (ecount(b1, i) * ecount(b2, i2)) as i64;
                    theta += (piece_fiber_norm(f, s1, i) * piece_fiber_norm(f, s2, i2)) as i64;
                }
            }
            let sigma = shuffle_sigma(&alpha.e, e);
            let term = c1
                .product(&c2)
                .act(&sigma)
                .expect("shuffle of the right size");
            out.add_scaled(&term, R::sign(theta.rem_euclid(2) as usize));
        }
        out
    }

    /// `X_3 = Σ_i Σ_{t=1}^{e^i-1} (-1)^λ C(f; .., e^i - 1, ..)(1, .., (12), .., 1)`
    /// with `(12)` in slot `Σ_{i'<i} e^{i'} + t`.
    pub fn x3(&self, f: &Surjection, e: &[usize]) -> OperadElement<R> {
        let n: usize = e.iter().sum();
        let mut out = OperadElement::zero(n);
        for i in 1..=f.arity() {
            for t in 1..e[i - 1] {
                let mut e2 = e.to_vec();
                e2[i - 1] -= 1;
                let c = self.get(f, &e2);
                if c.is_zero() {
                    continue;
                }
                let slot = e[..i - 1].iter().sum::<usize>() + t;
                let mut ys = vec![OperadElement::unit(); n - 1];
                ys[slot - 1] = OperadElement::identity(2);
                let lambda = 1 + t + f.degree() + e[i - 1..].iter().sum::<usize>();
                let term = c.full_compose(&ys).expect("arity of C(f; e)");
                out.add_scaled(&term, R::sign(lambda));
            }
        }
        out
    }

    /// Whether `dC(f; e) = X_1 + X_2 + X_3`.
    pub fn boundary_identity_holds(&self, f: &Surjection, e: &[usize]) -> bool {
        let lhs = self.get(f, e).boundary();
        let mut rhs = self.x1(f, e);
        rhs.add_assign(&self.x2(f, e));
        rhs.add_assign(&self.x3(f, e));
        lhs == rhs
    }

    /// `(-1)^ξ C(f; e') ⋄ B`, where `e'` lists the multiplicities in the order
    /// `σ` moves them to and `B` is the block permutation of `σ`. Equal to
    /// `C(f ⋄ σ; e)`.
    pub fn transport(&self, f: &Surjection, sigma: &[usize], e: &[usize]) -> OperadElement<R> {
        let k = sigma.len();
        let inv = perm::inverse(sigma);
        let src: Vec<usize> = (0..k).map(|u| e[inv[u] - 1]).collect();
        let block = block_permutation(sigma, e);
        let mut xi = 0;
        for i in 0..k {
            for j in i + 1..k {
                if sigma[i] > sigma[j] {
                    xi += e[i] * e[j];
                }
            }
        }
        self.get(f, &src)
            .act(&block)
            .expect("block permutation")
            .scaled(R::sign(xi))
    }

    /// `C(-; e)` extended linearly over an operad element.
    pub fn of_element(&self, x: &OperadElement<R>, e: &[usize]) -> OperadElement<R> {
        let mut out = OperadElement::zero(e.iter().sum());
        for (f, c) in x.iter() {
            out.add_scaled(&self.get(f, e), *c);
        }
        out
    }
}

/// The permutation of `Σ e^i` letters moving whole blocks as `σ` moves
/// letters: block `v` of the result is source block `σ(v)`, where source
/// blocks have sizes `e^{σ^{-1}(1)}, e^{σ^{-1}(2)}, ...`.
pub fn block_permutation(sigma: &[usize], e: &[usize]) -> perm::Perm {
    let k = sigma.len();
    let inv = perm::inverse(sigma);
    let mut starts = vec![1];
    for u in 0..k {
        let s = *starts.last().unwrap() + e[inv[u] - 1];
        starts.push(s);
    }
    let mut out = Vec::with_capacity(e.iter().sum());
    for v in 0..k {
        let u = sigma[v];
        out.extend((0..e[v]).map(|r| starts[u - 1] + r));
    }
    out
}

/// The process-wide table over the integers.
pub fn integral() -> &'static CoefficientTable<i64> {
    static TABLE: OnceLock<CoefficientTable<i64>> = OnceLock::new();
    TABLE.get_or_init(CoefficientTable::new)
}

type Reduced = HashMap<(TypeId, Key), Arc<dyn Any + Send + Sync>>;

/// `C(f; e)` over any ring, reduced from the integral table and cached per
/// ring.
pub fn coefficient_arc<R: Coeff>(f: &Surjection, e: &[usize]) -> Arc<OperadElement<R>> {
    static REDUCED: OnceLock<RwLock<Reduced>> = OnceLock::new();
    let cache = REDUCED.get_or_init(Default::default);
    let key = (TypeId::of::<R>(), (f.clone(), e.to_vec()));
    if let Some(c) = cache.read().unwrap().get(&key) {
        return c.clone().downcast().expect("keyed by type");
    }
    let c: Arc<OperadElement<R>> = Arc::new(integral().get(f, e).map_coeffs(R::from_i64));
    let stored = cache.write().unwrap().entry(key).or_insert(c).clone();
    stored.downcast().expect("keyed by type")
}

pub fn coefficient<R: Coeff>(f: &Surjection, e: &[usize]) -> OperadElement<R> {
    (*coefficient_arc(f, e)).clone()
}

/// `C(f_S; E)` for a piece and a block of an index, with `f_S`; `None` when
/// the restriction is degenerate or the coefficient vanishes.
pub fn restricted_coefficient<R: Coeff>(
    f: &Surjection,
    piece: &[usize],
    block: &[Tagged],
) -> Option<(Arc<OperadElement<R>>, Surjection)> {
    let (g, es) = restricted_key(f, piece, block)?;
    let c = coefficient_arc::<R>(&g, &es);
    (!c.is_zero()).then_some((c, g))
}

/// Outcome of the support conditions on one term `g` of `C(f; e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    /// The first and last values of `g` occur at least twice.
    pub endpoints_repeat: bool,
    /// Every value occurring once is flanked by equal values.
    pub singletons_flanked: bool,
    /// `g` restricted to each block of values is non-decreasing.
    pub blocks_ordered: bool,
    /// Pairwise complexity grows by at most one.
    pub complexity_bounded: bool,
}

impl StructuralReport {
    pub fn passes(&self) -> bool {
        self.endpoints_repeat
            && self.singletons_flanked
            && self.blocks_ordered
            && self.complexity_bounded
    }
}

/// Checks the support conditions on a sequence `g` appearing in `C(f; e)`.
/// The first two conditions are only claimed for arity at least 2 and are
/// reported as satisfied otherwise.
pub fn structural_check(f: &Surjection, e: &[usize], g: &Surjection) -> StructuralReport {
    let entries = g.entries();
    let count = |v: u8| entries.iter().filter(|&&w| w == v).count();
    let several_values = f.arity() >= 2;
    let endpoints_repeat = !several_values
        || (!entries.is_empty() && count(entries[0]) >= 2 && count(*entries.last().unwrap()) >= 2);
    let singletons_flanked = !several_values
        || (0..entries.len()).all(|q| {
            count(entries[q]) != 1
                || (q > 0 && q + 1 < entries.len() && entries[q - 1] == entries[q + 1])
        });
    let mut offsets = vec![0];
    for &x in e {
        offsets.push(offsets.last().unwrap() + x);
    }
    let block_of = |v: u8| {
        (0..e.len())
            .find(|&i| (v as usize) > offsets[i] && (v as usize) <= offsets[i + 1])
            .unwrap()
    };
    let blocks_ordered = (0..e.len()).all(|i| {
        let sub: Vec<u8> = entries
            .iter()
            .copied()
            .filter(|&v| block_of(v) == i)
            .collect();
        sub.windows(2).all(|w| w[0] <= w[1])
    });
    let complexity_bounded = (0..e.len()).all(|i1| {
        (i1 + 1..e.len()).all(|i2| {
            let positions: Vec<usize> = (0..entries.len())
                .filter(|&q| {
                    let b = block_of(entries[q]);
                    b == i1 || b == i2
                })
                .collect();
            let (seq, _) = g.restrict_raw(&positions);
            let sub = Surjection::new(dedup_adjacent(seq)).expect("restriction is surjective");
            sub.complexity() <= f.pair_complexity(i1 + 1, i2 + 1) + 1
        })
    });
    StructuralReport {
        endpoints_repeat,
        singletons_flanked,
        blocks_ordered,
        complexity_bounded,
    }
}

fn dedup_adjacent(mut v: Vec<u8>) -> Vec<u8> {
    v.dedup();
    v
}

/// Checks [`structural_check`] on every support term of `C(f; e)`.
pub fn support_is_structural<R: Coeff>(
    f: &Surjection,
    e: &[usize],
    c: &OperadElement<R>,
) -> Result<(), Surjection> {
    for (g, _) in c.iter() {
        if !structural_check(f, e, g).passes() {
            return Err(g.clone());
        }
    }
    Ok(())
}

/// The indices of `A_l(f; p)` whose pieces all have nonzero coefficients,
/// together with those coefficients.
pub fn live_indices<R: Coeff>(
    table: &CoefficientTable<R>,
    f: &Surjection,
    ps: &[usize],
    l: usize,
) -> Vec<(LIndex, Vec<(Arc<OperadElement<R>>, Surjection)>)> {
    let mut out = Vec::new();
    'alpha: for alpha in enumerate_indices(f, ps, l) {
        let mut parts = Vec::with_capacity(l);
        for j in 0..l {
            match table.restricted(f, &alpha.s.pieces[j], &alpha.e.blocks[j]) {
                Some(p) => parts.push(p),
                None => continue 'alpha,
            }
        }
        out.push((alpha, parts));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Surjection {
        x.parse().unwrap()
    }

    fn c(f: &str, e: &[usize]) -> String {
        integral().get(&s(f), e).to_string()
    }

    #[test]
    fn base_cases() {
        assert_eq!(c("(1)", &[1]), "(1)");
        assert_eq!(c("(1)", &[2]), "0");
        assert_eq!(c("(12)", &[1, 1]), "(121)");
        assert_eq!(c("(12)", &[1, 2]), "-(12131)");
        assert_eq!(c("(12)", &[2, 1]), "0");
    }

    #[test]
    fn pieces_for_the_first_nontrivial_case() {
        let t = integral();
        let f = s("(12)");
        assert!(t.x1(&f, &[1, 1]).is_zero());
        let x2 = t.x2(&f, &[1, 1]);
        assert_eq!(x2.len(), 2);
        assert_eq!(x2.s(1).unwrap().to_string(), "(121)");
        assert!(t.x3(&f, &[1, 1]).is_zero());
        assert!(!t.x3(&f, &[1, 2]).is_zero());
    }

    #[test]
    fn structural_examples() {
        let f = s("(12)");
        assert!(structural_check(&f, &[1, 1], &s("(121)")).passes());
        assert!(structural_check(&f, &[1, 2], &s("(12131)")).passes());
        let r = structural_check(&s("(123)"), &[1, 1, 2], &s("(12134)"));
        assert!(!r.endpoints_repeat);
    }

    #[test]
    fn transport_identity() {
        let t = integral();
        let f = s("(12)");
        assert_eq!(t.transport(&f, &[1, 2], &[1, 2]), *t.get(&f, &[1, 2]));
        let direct = t.get(&s("(21)"), &[2, 1]);
        assert_eq!(t.transport(&f, &[2, 1], &[2, 1]), *direct);
    }

    #[test]
    fn block_permutations() {
        assert_eq!(block_permutation(&[2, 1], &[1, 2]), vec![3, 1, 2]);
        assert_eq!(block_permutation(&[1, 2], &[2, 1]), vec![1, 2, 3]);
    }
}
