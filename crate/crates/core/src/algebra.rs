//! Algebras over the sequence operad, described on a basis.

use std::fmt::Debug;
use std::hash::Hash;

use crate::indexing::product_indices;
use crate::linear::{format_sum, LinComb};
use crate::operad::OperadElement;
use crate::ring::Coeff;
use crate::surjection::Surjection;

/// A cochain complex with an action of the sequence operad, given on basis
/// elements. Degrees are cohomological; a surjection of homological degree
/// `d` lowers degree by `d`.
pub trait EAlgebra<R: Coeff>: Sync {
    type Basis: Clone + Ord + Hash + Debug + Send + Sync;

    fn degree(&self, b: &Self::Basis) -> i32;

    fn differential(&self, b: &Self::Basis) -> LinComb<Self::Basis, R>;

    /// `f(b_1, ..., b_k)`.
    fn act(&self, f: &Surjection, args: &[Self::Basis]) -> LinComb<Self::Basis, R>;

    fn format_basis(&self, b: &Self::Basis) -> String;

    /// The basis in degree `d`, when it is finite and known.
    fn basis_in_degree(&self, _d: i32) -> Option<Vec<Self::Basis>> {
        None
    }
}

/// Multilinear extension of the action to operad elements and sums.
pub fn act_element<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    g: &OperadElement<R>,
    args: &[LinComb<A::Basis, R>],
) -> LinComb<A::Basis, R> {
    let lists: Vec<Vec<(&A::Basis, &R)>> = args.iter().map(|a| a.iter().collect()).collect();
    let sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut out = LinComb::zero();
    for choice in product_indices(&sizes) {
        let mut c = R::one();
        let mut bs = Vec::with_capacity(args.len());
        for (i, &k) in choice.iter().enumerate() {
            let (b, cb) = lists[i][k];
            c = c * *cb;
            bs.push(b.clone());
        }
        for (f, cf) in g.iter() {
            out.add_scaled(&alg.act(f, &bs), c * *cf);
        }
    }
    out
}

pub fn differential<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    x: &LinComb<A::Basis, R>,
) -> LinComb<A::Basis, R> {
    x.flat_map(|b| alg.differential(b))
}

/// The associative product `a · b = (12)(a, b)`.
pub fn product<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    a: &LinComb<A::Basis, R>,
    b: &LinComb<A::Basis, R>,
) -> LinComb<A::Basis, R> {
    act_element(alg, &OperadElement::identity(2), &[a.clone(), b.clone()])
}

pub fn format_element<R: Coeff, A: EAlgebra<R>>(alg: &A, x: &LinComb<A::Basis, R>) -> String {
    format_sum(x.iter(), |b| alg.format_basis(b))
}
