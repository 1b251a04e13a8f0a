//! The diagonal `Δ : E → E ⊗ E` and the structure it induces on tensor
//! products of algebras.

use std::fmt;

use crate::algebra::EAlgebra;
use crate::error::Result;
use crate::indexing::{product_indices, valuewise_partitions};
use crate::linear::{format_sum, LinComb};
use crate::operad::OperadElement;
use crate::ring::Coeff;
use crate::surjection::Surjection;

/// An element of `(E ⊗ E)(k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorOperadElement<R: Coeff> {
    arity: usize,
    terms: LinComb<(Surjection, Surjection), R>,
}

impl<R: Coeff> TensorOperadElement<R> {
    pub fn zero(arity: usize) -> Self {
        TensorOperadElement {
            arity,
            terms: LinComb::zero(),
        }
    }

    pub fn single(a: Surjection, b: Surjection, c: R) -> Self {
        assert_eq!(a.arity(), b.arity(), "tensor factors share the arity");
        TensorOperadElement {
            arity: a.arity(),
            terms: LinComb::single((a, b), c),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Surjection, Surjection), &R)> + '_ {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: Surjection, b: Surjection, c: R) {
        self.terms.add_term((a, b), c);
    }

    pub fn add_scaled(&mut self, other: &Self, c: R) {
        self.terms.add_scaled(&other.terms, c);
    }

    /// `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`.
    pub fn boundary(&self) -> Self {
        let mut out = Self::zero(self.arity);
        for ((a, b), c) in self.iter() {
            for (a2, c2) in OperadElement::<R>::basis(a.clone()).boundary().iter() {
                out.add_term(a2.clone(), b.clone(), *c * *c2);
            }
            let s = R::sign(a.degree());
            for (b2, c2) in OperadElement::<R>::basis(b.clone()).boundary().iter() {
                out.add_term(a.clone(), b2.clone(), *c * *c2 * s);
            }
        }
        out
    }

    /// `(a ⊗ b) ⋄ σ = (a ⋄ σ) ⊗ (b ⋄ σ)`.
    pub fn act(&self, sigma: &[usize]) -> Result<Self> {
        let mut out = Self::zero(self.arity);
        for ((a, b), c) in self.iter() {
            let a2 = OperadElement::<R>::basis(a.clone()).act(sigma)?;
            let b2 = OperadElement::<R>::basis(b.clone()).act(sigma)?;
            for ((x, cx), (y, cy)) in a2.iter().zip(b2.iter()) {
                out.add_term(x.clone(), y.clone(), *c * *cx * *cy);
            }
        }
        Ok(out)
    }

    /// `γ(a ⊗ b; p_1 ⊗ q_1, ..., p_k ⊗ q_k) = ± γ(a; p) ⊗ γ(b; q)` with the
    /// Koszul sign of moving the `p_j` past `b` and the `q_j` before them.
    pub fn full_compose(&self, ys: &[Self]) -> Result<Self> {
        let arity = ys.iter().map(|y| y.arity).sum();
        let lists: Vec<Vec<(&(Surjection, Surjection), &R)>> =
            ys.iter().map(|y| y.iter().collect()).collect();
        let sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
        let mut out = Self::zero(arity);
        for ((a, b), c) in self.iter() {
            for choice in product_indices(&sizes) {
                let picked: Vec<(&(Surjection, Surjection), &R)> = choice
                    .iter()
                    .enumerate()
                    .map(|(j, &n)| lists[j][n])
                    .collect();
                let mut cc = *c;
                let mut s = 0;
                for (j, ((p, _), cj)) in picked.iter().enumerate() {
                    cc = cc * **cj;
                    s += b.degree() * p.degree();
                    for ((_, q2), _) in &picked[..j] {
                        s += q2.degree() * p.degree();
                    }
                }
                let ps: Vec<OperadElement<R>> = picked
                    .iter()
                    .map(|((p, _), _)| OperadElement::basis(p.clone()))
                    .collect();
                let qs: Vec<OperadElement<R>> = picked
                    .iter()
                    .map(|((_, q), _)| OperadElement::basis(q.clone()))
                    .collect();
                let left = OperadElement::basis(a.clone()).full_compose(&ps)?;
                let right = OperadElement::basis(b.clone()).full_compose(&qs)?;
                let sign = R::sign(s);
                for (h1, c1) in left.iter() {
                    for (h2, c2) in right.iter() {
                        out.add_term(h1.clone(), h2.clone(), cc * *c1 * *c2 * sign);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl<R: Coeff> fmt::Display for TensorOperadElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(self.iter(), |(a, b)| format!("{a}⊗{b}")))
    }
}

/// `Δ(f) = Σ (-1)^δ f_{S_1} ⊗ f_{S_2}` over valuewise overlapping partitions
/// with both pieces hitting every value.
pub fn diagonal_basis<R: Coeff>(f: &Surjection) -> TensorOperadElement<R> {
    let k = f.arity();
    let mut out = TensorOperadElement::zero(k);
    for part in valuewise_partitions(f, 2) {
        let (s1, s2) = (&part.pieces[0], &part.pieces[1]);
        let (Some(a), Some(b)) = (f.restrict(s1), f.restrict(s2)) else {
            continue;
        };
        if a.arity() != k || b.arity() != k {
            continue;
        }
        let norm = |s: &[usize], i: usize| {
            s.iter()
                .filter(|&&q| f.entries()[q] as usize == i)
                .count()
                .saturating_sub(1)
        };
        let mut delta = 0;
        for i in 1..=k {
            for i2 in 1..i {
                delta += norm(s1, i) * norm(s2, i2);
            }
        }
        out.add_term(a, b, R::sign(delta));
    }
    out
}

pub fn diagonal<R: Coeff>(x: &OperadElement<R>) -> TensorOperadElement<R> {
    let mut out = TensorOperadElement::zero(x.arity());
    for (f, c) in x.iter() {
        out.add_scaled(&diagonal_basis(f), *c);
    }
    out
}

/// `(Δ ⊗ 1)Δ(x)` and `(1 ⊗ Δ)Δ(x)` as sums of triples.
#[allow(clippy::type_complexity)]
pub fn iterated_diagonals<R: Coeff>(
    x: &OperadElement<R>,
) -> (
    LinComb<(Surjection, Surjection, Surjection), R>,
    LinComb<(Surjection, Surjection, Surjection), R>,
) {
    let mut left = LinComb::zero();
    let mut right = LinComb::zero();
    for ((a, b), c) in diagonal(x).iter() {
        for ((a1, a2), c2) in diagonal_basis::<R>(a).iter() {
            left.add_term((a1.clone(), a2.clone(), b.clone()), *c * *c2);
        }
        for ((b1, b2), c2) in diagonal_basis::<R>(b).iter() {
            right.add_term((a.clone(), b1.clone(), b2.clone()), *c * *c2);
        }
    }
    (left, right)
}

/// The tensor product of two algebras, acted on through `Δ`:
/// `(p ⊗ q)(a_1 ⊗ b_1, ..) = (-1)^{|q| Σ|a_i| + Σ_{i<j} |b_i||a_j|} p(a) ⊗ q(b)`.
pub struct TensorAlgebra<'a, A, B> {
    pub left: &'a A,
    pub right: &'a B,
}

impl<'a, R: Coeff, A: EAlgebra<R>, B: EAlgebra<R>> EAlgebra<R> for TensorAlgebra<'a, A, B> {
    type Basis = (A::Basis, B::Basis);

    fn degree(&self, b: &Self::Basis) -> i32 {
        self.left.degree(&b.0) + self.right.degree(&b.1)
    }

    fn differential(&self, b: &Self::Basis) -> LinComb<Self::Basis, R> {
        let mut out = LinComb::zero();
        for (x, c) in self.left.differential(&b.0).iter() {
            out.add_term((x.clone(), b.1.clone()), *c);
        }
        let s = R::sign(self.left.degree(&b.0).rem_euclid(2) as usize);
        for (y, c) in self.right.differential(&b.1).iter() {
            out.add_term((b.0.clone(), y.clone()), *c * s);
        }
        out
    }

    fn act(&self, f: &Surjection, args: &[Self::Basis]) -> LinComb<Self::Basis, R> {
        let xs: Vec<A::Basis> = args.iter().map(|a| a.0.clone()).collect();
        let ys: Vec<B::Basis> = args.iter().map(|a| a.1.clone()).collect();
        let da: Vec<i64> = xs.iter().map(|x| self.left.degree(x) as i64).collect();
        let db: Vec<i64> = ys.iter().map(|y| self.right.degree(y) as i64).collect();
        let mut shuffle = 0i64;
        for j in 0..args.len() {
            for i in 0..j {
                shuffle += db[i] * da[j];
            }
        }
        let total_a: i64 = da.iter().sum();
        let mut out = LinComb::zero();
        for ((p, q), c) in diagonal_basis::<R>(f).iter() {
            let pa = self.left.act(p, &xs);
            if pa.is_zero() {
                continue;
            }
            let qb = self.right.act(q, &ys);
            let s = R::sign((q.degree() as i64 * total_a + shuffle).rem_euclid(2) as usize);
            for (u, cu) in pa.iter() {
                for (v, cv) in qb.iter() {
                    out.add_term((u.clone(), v.clone()), *c * *cu * *cv * s);
                }
            }
        }
        out
    }

    fn format_basis(&self, b: &Self::Basis) -> String {
        format!(
            "{}⊗{}",
            self.left.format_basis(&b.0),
            self.right.format_basis(&b.1)
        )
    }
}

/// The ground ring as an algebra concentrated in degree 0: permutations act
/// as the product, everything of positive degree acts as zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroundAlgebra;

impl<R: Coeff> EAlgebra<R> for GroundAlgebra {
    type Basis = ();

    fn degree(&self, _: &()) -> i32 {
        0
    }

    fn differential(&self, _: &()) -> LinComb<(), R> {
        LinComb::zero()
    }

    fn act(&self, f: &Surjection, _: &[()]) -> LinComb<(), R> {
        if f.is_permutation() {
            LinComb::basis(())
        } else {
            LinComb::zero()
        }
    }

    fn format_basis(&self, _: &()) -> String {
        "1".into()
    }

    fn basis_in_degree(&self, d: i32) -> Option<Vec<()>> {
        Some(if d == 0 { vec![()] } else { vec![] })
    }
}
