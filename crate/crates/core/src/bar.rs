//! The bar complex `BA = ⊕_{l ≥ 1} A^{⊗l}` with `|[a_1|...|a_l]| = Σ (|a_j| - 1)`.

use crate::algebra::{differential, product, EAlgebra};
use crate::error::{Error, Result};
use crate::indexing::product_indices;
use crate::linear::{format_sum, LinComb};
use crate::parse::{split_sum, split_top};
use crate::ring::Coeff;

/// A sum of tensors `[a_1|...|a_l]` of basis elements.
pub type BarElement<B, R> = LinComb<Vec<B>, R>;

/// `||a|| = |a| - 1`.
pub fn shifted_degree<R: Coeff, A: EAlgebra<R>>(alg: &A, b: &A::Basis) -> i32 {
    alg.degree(b) - 1
}

pub fn bar_degree<R: Coeff, A: EAlgebra<R>>(alg: &A, t: &[A::Basis]) -> i32 {
    t.iter().map(|b| shifted_degree(alg, b)).sum()
}

/// `[x_1|...|x_l]` for algebra elements, expanded multilinearly.
pub fn tensor<R: Coeff, B: Clone + Ord>(entries: &[LinComb<B, R>]) -> BarElement<B, R> {
    let lists: Vec<Vec<(&B, &R)>> = entries.iter().map(|a| a.iter().collect()).collect();
    let sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut out = LinComb::zero();
    for choice in product_indices(&sizes) {
        let mut c = R::one();
        let mut t = Vec::with_capacity(entries.len());
        for (i, &k) in choice.iter().enumerate() {
            let (b, cb) = lists[i][k];
            c = c * *cb;
            t.push(b.clone());
        }
        out.add_term(t, c);
    }
    out
}

/// `d = d_0 + d_1`: internal differentials with sign
/// `(-1)^{Σ_{k<j} ||a_k||}`, and merges `a_j a_{j+1}` with sign
/// `(-1)^{Σ_{k≤j} ||a_k||}`.
pub fn bar_differential<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    x: &BarElement<A::Basis, R>,
) -> BarElement<A::Basis, R> {
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        let basis: Vec<LinComb<A::Basis, R>> =
            t.iter().map(|b| LinComb::basis(b.clone())).collect();
        let mut pre = 0;
        for j in 0..t.len() {
            let da = differential(alg, &basis[j]);
            if !da.is_zero() {
                let mut ents = basis.clone();
                ents[j] = da;
                out.add_scaled(&tensor(&ents), *c * R::sign(pre as usize));
            }
            pre = (pre + shifted_degree(alg, &t[j])).rem_euclid(2);
        }
        let mut pre = 0;
        for j in 0..t.len().saturating_sub(1) {
            pre = (pre + shifted_degree(alg, &t[j])).rem_euclid(2);
            let prod = product(alg, &basis[j], &basis[j + 1]);
            if prod.is_zero() {
                continue;
            }
            let mut ents: Vec<LinComb<A::Basis, R>> = basis[..j].to_vec();
            ents.push(prod);
            ents.extend_from_slice(&basis[j + 2..]);
            out.add_scaled(&tensor(&ents), *c * R::sign(pre as usize));
        }
    }
    out
}

pub fn format_bar<R: Coeff, A: EAlgebra<R>>(alg: &A, x: &BarElement<A::Basis, R>) -> String {
    format_sum(x.iter(), |t| {
        let parts: Vec<String> = t.iter().map(|b| alg.format_basis(b)).collect();
        format!("[{}]", parts.join("|"))
    })
}

/// Parses `[x|y] - 2*[(12)(x,y)]` given a parser for algebra entries.
pub fn parse_bar<R: Coeff, B: Clone + Ord>(
    s: &str,
    mut entry: impl FnMut(&str) -> Result<LinComb<B, R>>,
) -> Result<BarElement<B, R>> {
    let mut out = LinComb::zero();
    for (c, body) in split_sum(s)? {
        let inner = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(body.clone()))?;
        if inner.trim().is_empty() {
            return Err(Error::EmptyBarTensor);
        }
        let ents: Vec<LinComb<B, R>> = split_top(inner, '|')
            .iter()
            .map(|e| entry(e))
            .collect::<Result<_>>()?;
        out.add_scaled(&tensor(&ents), R::from_i64(c));
    }
    Ok(out)
}

/// The basis of `B^n A`: tensors of basis elements with `Σ (|a_j| - 1) = n`.
/// Needs every basis element to have degree at least 2, which makes the
/// enumeration finite.
pub fn bar_basis<R: Coeff, A: EAlgebra<R>>(alg: &A, n: i32) -> Result<Vec<Vec<A::Basis>>> {
    let mut out = Vec::new();
    fn rec<R: Coeff, A: EAlgebra<R>>(
        alg: &A,
        left: i32,
        cur: &mut Vec<A::Basis>,
        out: &mut Vec<Vec<A::Basis>>,
    ) -> Result<()> {
        if left == 0 && !cur.is_empty() {
            out.push(cur.clone());
        }
        for d in 2..=left + 1 {
            let basis = alg.basis_in_degree(d).ok_or(Error::BeyondTruncation {
                degree: d,
                cutoff: d - 1,
            })?;
            for b in basis {
                cur.push(b);
                rec(alg, left - (d - 1), cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    for d in [0, 1] {
        if let Some(b) = alg.basis_in_degree(d) {
            if !b.is_empty() {
                return Err(Error::UnsupportedSpace(format!(
                    "the algebra has basis elements in degree {d}, so bar degrees are infinite"
                )));
            }
        }
    }
    if n >= 1 {
        rec(alg, n, &mut Vec::new(), &mut out)?;
    }
    out.sort();
    Ok(out)
}
