//! The chain map `Φ_k : E(k) ⊗ BA^{⊗k} → BA` and the identities it satisfies.

use crate::algebra::{act_element, EAlgebra};
use crate::bar::{bar_degree, bar_differential, shifted_degree, tensor, BarElement};
use crate::coefficients::{coefficient, piece_fiber_norm, restricted_coefficient};
use crate::error::{Error, Result};
use crate::indexing::{ecount, enumerate_indices, shuffle_sigma, LIndex, Tagged};
use crate::linear::LinComb;
use crate::operad::OperadElement;
use crate::ring::Coeff;
use crate::surjection::Surjection;

/// `E_j x`: the entries `x^i_t` for `(i, t)` in the block, in block order.
pub fn substitution<B: Clone>(block: &[Tagged], xs: &[Vec<B>]) -> Vec<B> {
    block
        .iter()
        .map(|&(i, t)| xs[i - 1][t - 1].clone())
        .collect()
}

/// `||E_j x^i||`.
fn block_norm<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    block: &[Tagged],
    i: usize,
    xs: &[Vec<A::Basis>],
) -> i64 {
    block
        .iter()
        .filter(|&&(tag, _)| tag == i)
        .map(|&(_, t)| shifted_degree(alg, &xs[i - 1][t - 1]) as i64)
        .sum()
}

/// The sign exponent `κ(f, α, x)` of the term of `Φ` indexed by `α`.
pub fn kappa<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    f: &Surjection,
    alpha: &LIndex,
    xs: &[Vec<A::Basis>],
) -> i64 {
    let k = f.arity();
    let l = alpha.len();
    let blocks = &alpha.e.blocks;
    let pieces = &alpha.s.pieces;
    let nx: Vec<Vec<i64>> = (0..l)
        .map(|j| {
            (0..=k)
                .map(|i| {
                    if i == 0 {
                        0
                    } else {
                        block_norm(alg, &blocks[j], i, xs)
                    }
                })
                .collect()
        })
        .collect();
    let mut s = 0i64;
    for j in 0..l {
        for j2 in j + 1..l {
            for i in 1..=k {
                for i2 in 1..i {
                    s += (piece_fiber_norm(f, &pieces[j], i) * piece_fiber_norm(f, &pieces[j2], i2))
                        as i64;
                    s += nx[j][i] * nx[j2][i2];
                }
            }
        }
    }
    for j in 0..l {
        let (seq, _) = f.restrict_raw(&pieces[j]);
        let deg = seq.len() as i64 - distinct_values(&seq) as i64;
        for row in nx.iter().take(j) {
            s += deg * row.iter().sum::<i64>();
        }
    }
    for j in 0..l {
        for i in 1..=k {
            let later: usize = (i..=k).map(|i2| ecount(&blocks[j], i2)).sum();
            s += later as i64 * nx[j][i];
            let mut t = 0i64;
            for &(tag, r) in &blocks[j] {
                if tag == i {
                    t += 1;
                    s += t * shifted_degree(alg, &xs[i - 1][r - 1]) as i64;
                }
            }
        }
    }
    s
}

fn distinct_values(seq: &[u8]) -> usize {
    let mut v = seq.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// `Φ(f; x^1, ..., x^k)` for a surjection and bar basis tensors.
pub fn phi_basis<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    f: &Surjection,
    xs: &[Vec<A::Basis>],
) -> BarElement<A::Basis, R> {
    let ps: Vec<usize> = xs.iter().map(Vec::len).collect();
    let total: usize = ps.iter().sum();
    let mut out = LinComb::zero();
    for l in 1..=total {
        for alpha in enumerate_indices(f, &ps, l) {
            if let Some(t) = phi_term(alg, f, &alpha, xs) {
                out.add_assign(&t);
            }
        }
    }
    out
}

/// The summand of `Φ` indexed by one `l`-index, or `None` if it vanishes.
pub fn phi_term<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    f: &Surjection,
    alpha: &LIndex,
    xs: &[Vec<A::Basis>],
) -> Option<BarElement<A::Basis, R>> {
    let mut slots = Vec::with_capacity(alpha.len());
    for (block, piece) in alpha.e.blocks.iter().zip(&alpha.s.pieces) {
        let (c, _) = restricted_coefficient::<R>(f, piece, block)?;
        let args: Vec<LinComb<A::Basis, R>> = substitution(block, xs)
            .into_iter()
            .map(LinComb::basis)
            .collect();
        let slot = act_element(alg, &c, &args);
        if slot.is_zero() {
            return None;
        }
        slots.push(slot);
    }
    let sign = R::sign(kappa(alg, f, alpha, xs).rem_euclid(2) as usize);
    Some(tensor(&slots).scaled(sign))
}

/// `Φ(g; x^1, ..., x^k)`, multilinear in every argument.
pub fn phi<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    g: &OperadElement<R>,
    xs: &[BarElement<A::Basis, R>],
) -> Result<BarElement<A::Basis, R>> {
    if xs.len() != g.arity() {
        return Err(Error::ArityMismatch {
            expected: g.arity(),
            got: xs.len(),
        });
    }
    if xs.iter().any(|x| x.keys().any(Vec::is_empty)) {
        return Err(Error::EmptyBarTensor);
    }
    let lists: Vec<Vec<(&Vec<A::Basis>, &R)>> = xs.iter().map(|x| x.iter().collect()).collect();
    let sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut out = LinComb::zero();
    for choice in crate::indexing::product_indices(&sizes) {
        let mut c = R::one();
        let mut args = Vec::with_capacity(xs.len());
        for (i, &n) in choice.iter().enumerate() {
            let (t, ct) = lists[i][n];
            c = c * *ct;
            args.push(t.clone());
        }
        for (f, cf) in g.iter() {
            out.add_scaled(&phi_basis(alg, f, &args), c * *cf);
        }
    }
    Ok(out)
}

/// `dΦ(g; x) - Φ(dg; x) - Σ_i (-1)^{|g| + Σ_{i'<i} |x^{i'}|} Φ(g; .., dx^i, ..)`,
/// which vanishes because `Φ` is a chain map.
pub fn chain_map_defect<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    g: &OperadElement<R>,
    xs: &[Vec<A::Basis>],
) -> Result<BarElement<A::Basis, R>> {
    let bars: Vec<BarElement<A::Basis, R>> = xs.iter().map(|t| LinComb::basis(t.clone())).collect();
    let mut out = bar_differential(alg, &phi(alg, g, &bars)?);
    out.sub_assign(&phi(alg, &g.boundary(), &bars)?);
    let deg = g.degree().unwrap_or(0) as i32;
    let mut pre = deg;
    for i in 0..xs.len() {
        let dx = bar_differential(alg, &bars[i]);
        if !dx.is_zero() {
            let mut args = bars.clone();
            args[i] = dx;
            out.add_scaled(&phi(alg, g, &args)?, -R::sign(pre.rem_euclid(2) as usize));
        }
        pre += bar_degree(alg, &xs[i]);
    }
    Ok(out)
}

/// `Φ(g; x) - ε Φ(g ⋄ σ; x ∘ σ)` with `x ∘ σ = (x^{σ(1)}, ..., x^{σ(k)})` and
/// `ε` the Koszul sign of that reordering in bar degrees. Vanishes because
/// `Φ` factors through the coinvariants.
pub fn coinvariance_defect<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    g: &OperadElement<R>,
    sigma: &[usize],
    xs: &[Vec<A::Basis>],
) -> Result<BarElement<A::Basis, R>> {
    let bars: Vec<BarElement<A::Basis, R>> = xs.iter().map(|t| LinComb::basis(t.clone())).collect();
    let moved: Vec<BarElement<A::Basis, R>> = sigma.iter().map(|&s| bars[s - 1].clone()).collect();
    let mut eps = 0i64;
    for a in 0..sigma.len() {
        for b in a + 1..sigma.len() {
            if sigma[a] > sigma[b] {
                eps += bar_degree(alg, &xs[sigma[a] - 1]) as i64
                    * bar_degree(alg, &xs[sigma[b] - 1]) as i64;
            }
        }
    }
    let mut out = phi(alg, g, &bars)?;
    let rhs = phi(alg, &g.act(sigma)?, &moved)?;
    out.add_scaled(&rhs, -R::sign(eps.rem_euclid(2) as usize));
    Ok(out)
}

/// Both sides of the composition formula
/// `C(f·g; p, q) = Σ_{l, α} (-1)^ϖ (C((12); 1, l) ∘ (C(f; p), C(g_{S_1}; E_1), ..)) ⋄ σ̂_α`,
/// the sum running over `l`-indices `α` of `g` for `q`.
pub fn composition_formula_sides<R: Coeff>(
    f: &Surjection,
    g: &Surjection,
    ps: &[usize],
    qs: &[usize],
) -> (OperadElement<R>, OperadElement<R>) {
    let p: usize = ps.iter().sum();
    let q: usize = qs.iter().sum();
    let r = g.arity();
    let fg = OperadElement::<R>::basis(f.clone()).product(&OperadElement::basis(g.clone()));
    let e: Vec<usize> = ps.iter().chain(qs).copied().collect();
    let mut lhs = OperadElement::zero(p + q);
    for (h, c) in fg.iter() {
        lhs.add_scaled(&coefficient(h, &e), *c);
    }
    let cf = coefficient::<R>(f, ps);
    let deg_g = g.degree() as i64;
    let mut rhs = OperadElement::zero(p + q);
    for l in 1..=q {
        let cl = coefficient::<R>(&Surjection::identity(2), &[1, l]);
        for alpha in enumerate_indices(g, qs, l) {
            let mut parts = Vec::with_capacity(l);
            for (block, piece) in alpha.e.blocks.iter().zip(&alpha.s.pieces) {
                match restricted_coefficient::<R>(g, piece, block) {
                    Some(part) => parts.push(part),
                    None => break,
                }
            }
            if parts.len() < l {
                continue;
            }
            let blocks = &alpha.e.blocks;
            let pieces = &alpha.s.pieces;
            let mut w = 0i64;
            for j in 0..l {
                for j2 in j + 1..l {
                    for i in 1..=r {
                        for i2 in 1..i {
                            w += (piece_fiber_norm(g, &pieces[j], i)
                                * piece_fiber_norm(g, &pieces[j2], i2))
                                as i64;
                        }
                    }
                }
            }
            for j in 0..l {
                for j2 in 0..j {
                    for i in 1..=r {
                        for i2 in 1..=i {
                            w += (ecount(&blocks[j], i) * ecount(&blocks[j2], i2)) as i64;
                        }
                    }
                }
            }
            let mut before = 0;
            for j in 1..=l {
                let ej = blocks[j - 1].len();
                w += ((l - j) * ej) as i64 + parts[j - 1].1.degree() as i64 * (j + before) as i64;
                before += ej;
            }
            w += (l + p) as i64 * deg_g + (p * (q - l)) as i64;
            let mut ys = vec![cf.clone()];
            ys.extend(parts.iter().map(|(c, _)| (**c).clone()));
            let comp = cl.full_compose(&ys).expect("arities match");
            let sig = shuffle_sigma(&alpha.e, qs);
            let shat: Vec<usize> = (1..=p).chain(sig.iter().map(|s| p + s)).collect();
            rhs.add_scaled(
                &comp.act(&shat).expect("permutation"),
                R::sign(w.rem_euclid(2) as usize),
            );
        }
    }
    (lhs, rhs)
}

/// Both sides of the product-splitting rule for a permutation `f` of arity
/// `k`: `Φ(f·g; x) = (-1)^{|g| Σ_{i≤k} |x^i|} Φ((12); Φ(f; x^1..x^k), Φ(g; x^{k+1}..))`.
pub fn product_splitting_sides<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    f: &Surjection,
    g: &Surjection,
    xs: &[Vec<A::Basis>],
) -> Result<(BarElement<A::Basis, R>, BarElement<A::Basis, R>)> {
    let k = f.arity();
    let bars: Vec<BarElement<A::Basis, R>> = xs.iter().map(|t| LinComb::basis(t.clone())).collect();
    let fg = OperadElement::<R>::basis(f.clone()).product(&OperadElement::basis(g.clone()));
    let lhs = phi(alg, &fg, &bars)?;
    let left = phi(alg, &OperadElement::basis(f.clone()), &bars[..k])?;
    let right = phi(alg, &OperadElement::basis(g.clone()), &bars[k..])?;
    let first: i64 = xs[..k].iter().map(|t| bar_degree(alg, t) as i64).sum();
    let sign = R::sign((g.degree() as i64 * first).rem_euclid(2) as usize);
    let rhs = phi(alg, &OperadElement::identity(2), &[left, right])?.scaled(sign);
    Ok((lhs, rhs))
}

/// `Φ((12); Φ((12); x, y), z)`, `Φ((123); x, y, z)` and
/// `Φ((12); x, Φ((12); y, z))`, which coincide.
pub fn associative_triple<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    x: &BarElement<A::Basis, R>,
    y: &BarElement<A::Basis, R>,
    z: &BarElement<A::Basis, R>,
) -> Result<[BarElement<A::Basis, R>; 3]> {
    let mu = OperadElement::identity(2);
    let left = phi(
        alg,
        &mu,
        &[phi(alg, &mu, &[x.clone(), y.clone()])?, z.clone()],
    )?;
    let middle = phi(
        alg,
        &OperadElement::identity(3),
        &[x.clone(), y.clone(), z.clone()],
    )?;
    let right = phi(
        alg,
        &mu,
        &[x.clone(), phi(alg, &mu, &[y.clone(), z.clone()])?],
    )?;
    Ok([left, middle, right])
}

/// `Φ(a; Φ(b; x, y), z)` and `Φ(a ∘_1 b; x, y, z)` for `a` of arity 2 and
/// `b` of arity 2. They differ in general: `Φ` is not an operad action.
pub fn iterated_versus_composed<R: Coeff, A: EAlgebra<R>>(
    alg: &A,
    a: &OperadElement<R>,
    b: &OperadElement<R>,
    xs: [&BarElement<A::Basis, R>; 3],
) -> Result<(BarElement<A::Basis, R>, BarElement<A::Basis, R>)> {
    let inner = phi(alg, b, &[xs[0].clone(), xs[1].clone()])?;
    let iterated = phi(alg, a, &[inner, xs[2].clone()])?;
    let composed = phi(
        alg,
        &a.compose(1, b)?,
        &[xs[0].clone(), xs[1].clone(), xs[2].clone()],
    )?;
    Ok((iterated, composed))
}
