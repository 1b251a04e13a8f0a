//! Elements of the sequence operad: differential, symmetric action,
//! composition, and the maps `r_a`, `iota_a`, `s_a` with the contracting
//! homotopy built from them.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linear::{format_sum, LinComb};
use crate::parse::split_sum;
use crate::perm;
use crate::ring::Coeff;
use crate::surjection::Surjection;

/// A linear combination of surjections of a single arity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OperadElement<R: Coeff> {
    arity: usize,
    terms: LinComb<Surjection, R>,
}

impl<R: Coeff> OperadElement<R> {
    pub fn zero(arity: usize) -> Self {
        OperadElement {
            arity,
            terms: LinComb::zero(),
        }
    }

    pub fn basis(f: Surjection) -> Self {
        OperadElement {
            arity: f.arity(),
            terms: LinComb::basis(f),
        }
    }

    pub fn single(f: Surjection, c: R) -> Self {
        OperadElement {
            arity: f.arity(),
            terms: LinComb::single(f, c),
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::basis(Surjection::identity(k))
    }

    pub fn unit() -> Self {
        Self::identity(1)
    }

    /// Builds an element from terms, checking that the arities agree.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Surjection, R)>,
    ) -> Result<Self> {
        let mut out = Self::zero(arity);
        for (f, c) in terms {
            if f.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: f.arity(),
                });
            }
            out.terms.add_term(f, c);
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &LinComb<Surjection, R> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Surjection, &R)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, f: &Surjection) -> R {
        self.terms.coefficient(f)
    }

    /// The common homological degree, or `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Surjection::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, f: Surjection, c: R) {
        debug_assert_eq!(f.arity(), self.arity);
        self.terms.add_term(f, c);
    }

    pub fn add_scaled(&mut self, other: &Self, c: R) {
        debug_assert!(other.is_zero() || other.arity == self.arity);
        self.terms.add_scaled(&other.terms, c);
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, R::one());
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_scaled(other, -R::one());
    }

    pub fn scaled(&self, c: R) -> Self {
        OperadElement {
            arity: self.arity,
            terms: self.terms.scaled(c),
        }
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(R) -> S) -> OperadElement<S> {
        OperadElement {
            arity: self.arity,
            terms: self.terms.map_coeffs(f),
        }
    }

    /// Linear extension of a map on basis surjections.
    pub fn flat_map(&self, arity: usize, mut f: impl FnMut(&Surjection) -> Self) -> Self {
        let mut out = Self::zero(arity);
        for (g, c) in self.terms.iter() {
            out.add_scaled(&f(g), *c);
        }
        out
    }

    pub fn boundary(&self) -> Self {
        self.flat_map(self.arity, boundary_basis)
    }

    /// The right action `x ⋄ sigma`.
    pub fn act(&self, sigma: &[usize]) -> Result<Self> {
        perm::check(sigma)?;
        if sigma.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: sigma.len(),
            });
        }
        Ok(self.flat_map(self.arity, |f| act_basis(f, sigma)))
    }

    /// Partial composition `x ∘_i y`.
    pub fn compose(&self, i: usize, y: &Self) -> Result<Self> {
        if i == 0 || i > self.arity {
            return Err(Error::PositionOutOfRange {
                position: i,
                arity: self.arity,
            });
        }
        let arity = self.arity + y.arity - 1;
        let mut out = Self::zero(arity);
        for (f, c) in self.terms.iter() {
            for (g, d) in y.terms.iter() {
                out.add_scaled(&compose_basis(f, i, g), *c * *d);
            }
        }
        Ok(out)
    }

    /// Full composition `gamma(x; y_1, ..., y_k)`, performed as successive
    /// partial compositions from the left.
    pub fn full_compose(&self, ys: &[Self]) -> Result<Self> {
        if ys.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: ys.len(),
            });
        }
        let mut res = self.clone();
        let mut pos = 1;
        for y in ys {
            res = res.compose(pos, y)?;
            pos += y.arity;
        }
        Ok(res)
    }

    /// `(12)(u, v)`: concatenation with the values of `v` shifted.
    pub fn product(&self, other: &Self) -> Self {
        OperadElement::<R>::identity(2)
            .full_compose(&[self.clone(), other.clone()])
            .expect("binary product")
    }

    fn check_index(&self, a: usize, arity: usize) -> Result<()> {
        if a == 0 || a > arity {
            Err(Error::PositionOutOfRange { position: a, arity })
        } else {
            Ok(())
        }
    }

    pub fn s(&self, a: usize) -> Result<Self> {
        self.check_index(a, self.arity)?;
        Ok(self.flat_map(self.arity, |f| s_basis(f, a)))
    }

    pub fn r(&self, a: usize) -> Result<Self> {
        self.check_index(a, self.arity)?;
        Ok(self.flat_map(self.arity - 1, |f| r_basis(f, a)))
    }

    pub fn iota(&self, a: usize) -> Result<Self> {
        self.check_index(a, self.arity + 1)?;
        Ok(self.flat_map(self.arity + 1, |f| iota_basis(f, a)))
    }

    /// `H = Σ_{k=0}^{n-2} (-1)^k ι_1^k s_1 r_1^k` on arity `n`.
    pub fn contracting_h(&self) -> Self {
        let n = self.arity;
        let mut out = Self::zero(n);
        if n == 0 {
            return out;
        }
        let mut cur = self.clone();
        for k in 0..n.saturating_sub(1) {
            let mut t = cur.s(1).expect("s_1");
            for _ in 0..k {
                t = t.iota(1).expect("iota_1");
            }
            out.add_scaled(&t, R::sign(k));
            if cur.arity > 1 {
                cur = cur.r(1).expect("r_1");
            }
        }
        out
    }

    /// `ι_1^{n-1} r_1^{n-1}`, the complement of `dH + Hd` in the identity.
    pub fn augmentation_projection(&self) -> Self {
        let n = self.arity;
        let mut cur = self.clone();
        for _ in 0..n.saturating_sub(1) {
            cur = cur.r(1).expect("r_1");
        }
        for _ in 0..n.saturating_sub(1) {
            cur = cur.iota(1).expect("iota_1");
        }
        cur
    }
}

fn boundary_basis<R: Coeff>(f: &Surjection) -> OperadElement<R> {
    let k = f.arity();
    let mut out = OperadElement::zero(k);
    for q in 0..f.len() {
        let mut e = f.entries().to_vec();
        e.remove(q);
        if let Some(g) = Surjection::with_arity(e, k) {
            out.add_term(g, R::sign(f.tau_prime(q)));
        }
    }
    out
}

fn act_basis<R: Coeff>(f: &Surjection, sigma: &[usize]) -> OperadElement<R> {
    let k = sigma.len();
    let inv = perm::inverse(sigma);
    let g: Vec<u8> = f
        .entries()
        .iter()
        .map(|&v| inv[v as usize - 1] as u8)
        .collect();
    let mut s = 0;
    for j in 0..k {
        for j2 in j + 1..k {
            if sigma[j] > sigma[j2] {
                s += f.fiber_norm(sigma[j]) * f.fiber_norm(sigma[j2]);
            }
        }
    }
    OperadElement::single(Surjection::new(g).expect("relabelling"), R::sign(s))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Sym {
    F(usize),
    G(usize),
}

fn compose_basis<R: Coeff>(f: &Surjection, i: usize, g: &Surjection) -> OperadElement<R> {
    let a = g.arity();
    let arity = f.arity() + a - 1;
    let mut out = OperadElement::zero(arity);
    let occ = f.fiber(i);
    let n = occ.len();
    let mg = g.len();
    let input: Vec<Sym> = f
        .caesuras()
        .into_iter()
        .map(Sym::F)
        .chain(g.caesuras().into_iter().map(Sym::G))
        .collect();
    for inner in (0..mg).combinations_with_replacement(n - 1) {
        let mut cuts = Vec::with_capacity(n + 1);
        cuts.push(0);
        cuts.extend(inner);
        cuts.push(mg - 1);
        let mut h: Vec<u8> = Vec::with_capacity(f.len() + mg + n);
        let mut sym_of: Vec<Sym> = Vec::with_capacity(h.capacity());
        let mut r = 0;
        for (q, &v) in f.entries().iter().enumerate() {
            if v as usize == i {
                r += 1;
                for p in cuts[r - 1]..=cuts[r] {
                    h.push(g.entries()[p] + i as u8 - 1);
                    let sym = if p == cuts[r] && r < n {
                        Sym::F(occ[r - 1])
                    } else {
                        Sym::G(p)
                    };
                    sym_of.push(sym);
                }
            } else {
                h.push(if (v as usize) < i { v } else { v + a as u8 - 1 });
                sym_of.push(Sym::F(q));
            }
        }
        let Some(hs) = Surjection::with_arity(h, arity) else {
            continue;
        };
        let idx: Vec<usize> = hs
            .caesuras()
            .into_iter()
            .map(|pos| {
                input
                    .iter()
                    .position(|s| *s == sym_of[pos])
                    .expect("caesura symbol")
            })
            .collect();
        out.add_term(hs, R::sign(perm::inversions(&idx)));
    }
    out
}

fn s_basis<R: Coeff>(f: &Surjection, a: usize) -> OperadElement<R> {
    let mut e = Vec::with_capacity(f.len() + 1);
    e.push(a as u8);
    e.extend_from_slice(f.entries());
    match Surjection::with_arity(e, f.arity()) {
        Some(g) => {
            let s: usize = (1..a).map(|i| f.fiber_norm(i)).sum();
            OperadElement::single(g, R::sign(s))
        }
        None => OperadElement::zero(f.arity()),
    }
}

/// Deletes the only occurrence of `a` and shifts larger values down, with an
/// overall minus sign; zero when `a` occurs more than once.
fn r_basis<R: Coeff>(f: &Surjection, a: usize) -> OperadElement<R> {
    let k = f.arity() - 1;
    if f.fiber_size(a) != 1 {
        return OperadElement::zero(k);
    }
    let e: Vec<u8> = f
        .entries()
        .iter()
        .filter(|&&v| v as usize != a)
        .map(|&v| if v as usize > a { v - 1 } else { v })
        .collect();
    match Surjection::with_arity(e, k) {
        Some(g) => OperadElement::single(g, -R::one()),
        None => OperadElement::zero(k),
    }
}

fn iota_basis<R: Coeff>(f: &Surjection, a: usize) -> OperadElement<R> {
    let mut e = Vec::with_capacity(f.len() + 1);
    e.push(a as u8);
    e.extend(
        f.entries()
            .iter()
            .map(|&v| if v as usize >= a { v + 1 } else { v }),
    );
    OperadElement::basis(Surjection::new(e).expect("iota is non-degenerate"))
}

impl<R: Coeff> fmt::Display for OperadElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(self.terms.iter(), |s| s.to_string()))
    }
}

impl<R: Coeff> FromStr for OperadElement<R> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pieces = split_sum(s)?;
        let mut terms = Vec::new();
        for (c, body) in pieces {
            terms.push((body.parse::<Surjection>()?, R::from_i64(c)));
        }
        let arity = terms.first().map(|(f, _)| f.arity()).unwrap_or(1);
        Self::from_terms(arity, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = OperadElement<i64>;

    fn e(s: &str) -> E {
        s.parse().unwrap()
    }

    #[test]
    fn boundary_examples() {
        assert!(e("(12)").boundary().is_zero());
        assert_eq!(e("(121)").boundary(), e("(21) - (12)"));
        let over_f2 = e("(1212)")
            .boundary()
            .map_coeffs(crate::ring::Fp::<2>::from_i64);
        assert_eq!(over_f2.to_string(), "(121)+(212)");
    }

    #[test]
    fn degree_zero_composition_is_substitution() {
        assert_eq!(e("(12)").compose(1, &e("(12)")).unwrap(), e("(123)"));
        assert_eq!(
            e("(12)").full_compose(&[e("(1)"), e("(12)")]).unwrap(),
            e("(123)")
        );
        assert_eq!(
            e("(12)").full_compose(&[e("(1)"), e("(1)")]).unwrap(),
            e("(12)")
        );
        assert_eq!(e("(21)").compose(2, &e("(21)")).unwrap(), e("(321)"));
    }

    #[test]
    fn action_examples() {
        assert_eq!(e("(12)").act(&[2, 1]).unwrap(), e("(21)"));
        assert_eq!(e("(121)").act(&[1, 2]).unwrap(), e("(121)"));
        assert_eq!(e("(121)").act(&[2, 1]).unwrap(), e("(212)"));
        assert_eq!(e("(1212)").act(&[2, 1]).unwrap(), e("-(2121)"));
        assert!(e("(12)").act(&[1, 2, 3]).is_err());
    }

    #[test]
    fn auxiliary_maps() {
        assert!(e("(121)").r(1).unwrap().is_zero());
        assert_eq!(e("(1)").iota(1).unwrap(), e("(12)"));
        assert!(e("(12)").s(1).unwrap().is_zero());
        assert_eq!(e("(12)").s(2).unwrap(), e("(212)"));
        assert!(e("(12)").s(3).is_err());
    }

    #[test]
    fn contracting_homotopy_on_degree_zero() {
        let x = e("(21) - (12)");
        let h = x.contracting_h();
        let mut lhs = h.boundary();
        lhs.add_assign(&x.boundary().contracting_h());
        assert_eq!(lhs, x);
    }
}
