//! Normalized cochains of a finite simplicial set with the interval-cut
//! action of the sequence operad.

use std::collections::HashMap;

use itertools::Itertools;

use crate::algebra::EAlgebra;
use crate::linear::LinComb;
use crate::ring::Coeff;
use crate::simplicial::SimplicialSet;
use crate::surjection::Surjection;

/// `N^*(X)`, or `N̄^*(X)` when `reduced`, on the basis dual to the
/// nondegenerate simplices.
///
/// `(δz)(σ) = (-1)^{|z|+1} Σ_t (-1)^t z(d_t σ)`, and `f(z_1, ..., z_k)` is
/// evaluated on `σ` by summing over cuts of `σ` into `m` overlapping
/// intervals, feeding `z_i` the union of the intervals at positions with
/// value `i`.
pub struct CochainAlgebra<'a> {
    space: &'a SimplicialSet,
    reduced: bool,
    /// For each simplex, its nondegenerate faces keyed by vertex bitmask.
    faces: Vec<HashMap<u64, usize>>,
}

impl<'a> CochainAlgebra<'a> {
    pub fn new(space: &'a SimplicialSet) -> Self {
        let faces = (0..space.len())
            .map(|id| {
                let n = space.dim_of(id);
                assert!(n < 63, "simplices of dimension below 63");
                let mut table = HashMap::new();
                for mask in 1u64..(1 << (n + 1)) {
                    let u: Vec<usize> = (0..=n).filter(|v| mask >> v & 1 == 1).collect();
                    if let Some(f) = space.nondegenerate_face(id, &u) {
                        table.insert(mask, f);
                    }
                }
                table
            })
            .collect();
        CochainAlgebra {
            space,
            reduced: false,
            faces,
        }
    }

    /// Cochains vanishing on the basepoint.
    pub fn reduced(space: &'a SimplicialSet) -> Self {
        CochainAlgebra {
            reduced: space.basepoint().is_some(),
            ..Self::new(space)
        }
    }

    pub fn space(&self) -> &SimplicialSet {
        self.space
    }

    fn in_basis(&self, id: usize) -> bool {
        !(self.reduced && Some(id) == self.space.basepoint())
    }

    fn basis(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.space
            .simplices(d)
            .iter()
            .copied()
            .filter(|&id| self.in_basis(id))
    }

    /// The sign of one cut `0 = j_0 ≤ .. ≤ j_m = n`: the parity of the
    /// permutation taking the caesuras of `f` (in their standard order)
    /// followed by the vertices `0, .., n-1` to the order in which the faces
    /// use them, plus `Σ_{i<j} |z_i||z_j| + |f| Σ |z_i|`.
    fn cut_sign(f: &Surjection, cuts: &[usize], degs: &[usize]) -> usize {
        let caes = f.caesuras();
        let ncaes = caes.len();
        let mut last = vec![usize::MAX; f.arity() + 1];
        for (q, &v) in f.entries().iter().enumerate() {
            last[v as usize] = q;
        }
        let mut word = Vec::with_capacity(ncaes + cuts[cuts.len() - 1]);
        for i in 1..=f.arity() {
            let mut copies = Vec::new();
            for q in f.fiber(i) {
                for v in cuts[q]..=cuts[q + 1] {
                    copies.push((q, v));
                }
            }
            copies.pop();
            for (q, v) in copies {
                if v == cuts[q + 1] && q != last[i] {
                    word.push(caes.iter().position(|&c| c == q).unwrap());
                } else {
                    word.push(ncaes + v);
                }
            }
        }
        debug_assert_eq!(
            word.iter().copied().sorted().collect::<Vec<_>>(),
            (0..word.len()).collect::<Vec<_>>()
        );
        let mut s = 0;
        for a in 0..word.len() {
            for b in a + 1..word.len() {
                if word[a] > word[b] {
                    s += 1;
                }
            }
        }
        for i in 0..degs.len() {
            for j in i + 1..degs.len() {
                s += degs[i] * degs[j];
            }
        }
        s + f.degree() * degs.iter().sum::<usize>()
    }

    /// `f(z_1, .., z_k)(σ)` for dual basis cochains `z_i = x_i^*`.
    fn evaluate<R: Coeff>(&self, f: &Surjection, args: &[usize], sigma: usize) -> R {
        let degs: Vec<usize> = args.iter().map(|&a| self.space.dim_of(a)).collect();
        let n = self.space.dim_of(sigma);
        let m = f.len();
        let fibers: Vec<Vec<usize>> = (1..=f.arity()).map(|i| f.fiber(i)).collect();
        let mut total = R::zero();
        for inner in (0..=n).combinations_with_replacement(m - 1) {
            let mut cuts = Vec::with_capacity(m + 1);
            cuts.push(0);
            cuts.extend(inner);
            cuts.push(n);
            let mut ok = true;
            for (i, fib) in fibers.iter().enumerate() {
                let mut mask = 0u64;
                let mut count = 0;
                for &q in fib {
                    for v in cuts[q]..=cuts[q + 1] {
                        mask |= 1 << v;
                        count += 1;
                    }
                }
                if count != degs[i] + 1 || mask.count_ones() as usize != count {
                    ok = false;
                    break;
                }
                if self.faces[sigma].get(&mask) != Some(&args[i]) {
                    ok = false;
                    break;
                }
            }
            if ok {
                total += R::sign(Self::cut_sign(f, &cuts, &degs));
            }
        }
        total
    }
}

impl<'a, R: Coeff> EAlgebra<R> for CochainAlgebra<'a> {
    type Basis = usize;

    fn degree(&self, b: &usize) -> i32 {
        self.space.dim_of(*b) as i32
    }

    fn differential(&self, b: &usize) -> LinComb<usize, R> {
        let n = self.space.dim_of(*b);
        let mut out = LinComb::zero();
        for tau in self.basis(n + 1) {
            let x = self.space.nondegenerate(tau);
            let mut c = R::zero();
            for t in 0..=n + 1 {
                let face = self.space.face(&x, t);
                if face.id == *b && !face.is_degenerate() {
                    c += R::sign(t);
                }
            }
            out.add_term(tau, c * R::sign(n + 1));
        }
        out
    }

    fn act(&self, f: &Surjection, args: &[usize]) -> LinComb<usize, R> {
        let total: usize = args.iter().map(|&a| self.space.dim_of(a)).sum();
        let mut out = LinComb::zero();
        if total < f.degree() || args.iter().any(|&a| !self.in_basis(a)) {
            return out;
        }
        let n = total - f.degree();
        for sigma in self.basis(n) {
            out.add_term(sigma, self.evaluate(f, args, sigma));
        }
        out
    }

    fn format_basis(&self, b: &usize) -> String {
        self.space.name(*b).to_string()
    }

    fn basis_in_degree(&self, d: i32) -> Option<Vec<usize>> {
        Some(if d < 0 {
            Vec::new()
        } else {
            self.basis(d as usize).collect()
        })
    }
}
