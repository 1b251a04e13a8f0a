//! Dense linear algebra over prime fields: ranks, kernels and cohomology of
//! finite slices of cochain complexes.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::ring::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![F::zero(); cols]; rows],
        }
    }

    /// The matrix of a linear map `src → dst` given on basis elements.
    /// Fails if an image leaves the span of `dst`.
    pub fn of_map<K: Ord + Clone + Hash + std::fmt::Debug>(
        src: &[K],
        dst: &[K],
        mut d: impl FnMut(&K) -> LinComb<K, F>,
    ) -> Result<Self> {
        let pos: HashMap<&K, usize> = dst.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = Self::zero(dst.len(), src.len());
        for (c, k) in src.iter().enumerate() {
            for (t, x) in d(k).iter() {
                let r = *pos.get(t).ok_or_else(|| {
                    Error::NotAComplex(format!("image term {t:?} lies outside the target basis"))
                })?;
                m.data[r][c] = *x;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r][c]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        self.data.iter().map(|row| row[c]).collect()
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r][k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r][c] += a * other.data[k][c];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = m.data[r][c].inv();
            for x in m.data[r].iter_mut() {
                *x = *x * inv;
            }
            let pivot_row = m.data[r].clone();
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let f = m.data[i][c];
                    for (x, y) in m.data[i].iter_mut().zip(&pivot_row) {
                        *x = *x - f * *y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.data[r][free];
            }
            out.push(v);
        }
        out
    }
}

/// An incrementally built echelon basis; every row remembers its
/// coordinates in terms of the tagged generators that were added.
#[derive(Clone, Debug)]
struct Echelon<F> {
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
    tags: usize,
}

impl<F: Field> Echelon<F> {
    /// Reduces `v`, returning the remainder and the tag combination removed.
    fn reduce(&self, v: &[F]) -> (Vec<F>, Vec<F>) {
        let mut v = v.to_vec();
        let mut tag = vec![F::zero(); self.tags];
        for (p, row, t) in &self.rows {
            let c = v[*p];
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = *x - c * *y;
            }
            for (x, y) in tag.iter_mut().zip(t) {
                *x += c * *y;
            }
        }
        (v, tag)
    }

    /// Adds `v` with the given tag; returns false if it was dependent.
    fn insert(&mut self, v: &[F], tag: Vec<F>) -> bool {
        let (mut rem, used) = self.reduce(v);
        let Some(p) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let mut tag: Vec<F> = tag.iter().zip(&used).map(|(a, b)| *a - *b).collect();
        let inv = rem[p].inv();
        for x in rem.iter_mut() {
            *x = *x * inv;
        }
        for x in tag.iter_mut() {
            *x = *x * inv;
        }
        for (_, row, t) in self.rows.iter_mut() {
            let c = row[p];
            if c.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&rem) {
                *x = *x - c * *y;
            }
            for (x, y) in t.iter_mut().zip(&tag) {
                *x = *x - c * *y;
            }
        }
        self.rows.push((p, rem, tag));
        true
    }
}

/// `H^n` of a slice `C^{n-1} → C^n → C^{n+1}`, with chosen representative
/// cocycles.
#[derive(Clone, Debug)]
pub struct Homology<F> {
    representatives: Vec<Vec<F>>,
    incoming: Matrix<F>,
    outgoing: Matrix<F>,
    echelon: Echelon<F>,
}

impl<F: Field> Homology<F> {
    /// `incoming : C^{n-1} → C^n` and `outgoing : C^n → C^{n+1}`; their
    /// composite must vanish.
    pub fn new(incoming: Matrix<F>, outgoing: Matrix<F>) -> Result<Self> {
        if incoming.rows != outgoing.cols {
            return Err(Error::NotAComplex("the slices do not compose".into()));
        }
        if !outgoing.mul(&incoming).is_zero() {
            return Err(Error::NotAComplex("d∘d ≠ 0".into()));
        }
        let kernel = outgoing.kernel();
        let mut echelon = Echelon {
            rows: Vec::new(),
            tags: kernel.len(),
        };
        for c in 0..incoming.cols {
            echelon.insert(&incoming.column(c), vec![F::zero(); kernel.len()]);
        }
        let mut representatives = Vec::new();
        for k in &kernel {
            let mut tag = vec![F::zero(); kernel.len()];
            tag[representatives.len()] = F::one();
            if echelon.insert(k, tag) {
                representatives.push(k.clone());
            }
        }
        echelon.tags = representatives.len();
        for (_, _, t) in echelon.rows.iter_mut() {
            t.truncate(representatives.len());
        }
        Ok(Homology {
            representatives,
            incoming,
            outgoing,
            echelon,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<F>] {
        &self.representatives
    }

    pub fn is_cocycle(&self, z: &[F]) -> bool {
        self.outgoing.apply(z).iter().all(|x| x.is_zero())
    }

    /// `δy` for a cochain `y` of the degree below.
    pub fn coboundary_of(&self, y: &[F]) -> Vec<F> {
        self.incoming.apply(y)
    }

    /// Coordinates of the class of `z` in the chosen basis.
    pub fn coordinates(&self, z: &[F]) -> Result<Vec<F>> {
        if !self.is_cocycle(z) {
            return Err(Error::NotACocycle);
        }
        let (rem, tag) = self.echelon.reduce(z);
        debug_assert!(rem.iter().all(|x| x.is_zero()));
        Ok(tag)
    }

    pub fn is_boundary(&self, z: &[F]) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(|x| x.is_zero()))
    }
}

/// `H^n` of a complex given by finite bases and a differential on them,
/// together with the basis of `C^n` the vectors refer to.
pub fn cohomology_at<F: Field, K: Ord + Clone + Hash + std::fmt::Debug>(
    mut basis: impl FnMut(i32) -> Result<Vec<K>>,
    mut d: impl FnMut(&K) -> LinComb<K, F>,
    n: i32,
) -> Result<(Vec<K>, Homology<F>)> {
    let below = basis(n - 1)?;
    let here = basis(n)?;
    let above = basis(n + 1)?;
    let incoming = Matrix::of_map(&below, &here, &mut d)?;
    let outgoing = Matrix::of_map(&here, &above, &mut d)?;
    Ok((here, Homology::new(incoming, outgoing)?))
}

/// Coordinates of a linear combination in a basis list.
pub fn to_vector<F: Field, K: Ord + Clone + Hash>(
    basis: &[K],
    x: &LinComb<K, F>,
) -> Result<Vec<F>> {
    let pos: HashMap<&K, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut v = vec![F::zero(); basis.len()];
    for (k, c) in x.iter() {
        let i = *pos
            .get(k)
            .ok_or_else(|| Error::NotAComplex("element lies outside the basis".into()))?;
        v[i] = *c;
    }
    Ok(v)
}

pub fn from_vector<F: Field, K: Ord + Clone>(basis: &[K], v: &[F]) -> LinComb<K, F> {
    basis.iter().cloned().zip(v.iter().copied()).collect()
}

#[cfg(test)]
mod tests {
    use num_traits::{One, Zero};

    use super::*;
    use crate::ring::{Coeff, Fp};

    type F3 = Fp<3>;

    fn m(rows: &[&[i64]]) -> Matrix<F3> {
        let mut out = Matrix::zero(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                out.data[i][j] = F3::from_i64(*x);
            }
        }
        out
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 0], &[2, 1, 0]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn zero_differential_keeps_everything() {
        let h = Homology::new(Matrix::<F3>::zero(2, 0), Matrix::zero(0, 2)).unwrap();
        assert_eq!(h.dim(), 2);
    }

    #[test]
    fn classes_modulo_boundaries() {
        // C^0 = <a>, C^1 = <b, c>, C^2 = <e>; da = b, db = 0, dc = e.
        let d0 = m(&[&[1], &[0]]);
        let d1 = m(&[&[0, 1]]);
        let h = Homology::new(d0, d1).unwrap();
        assert_eq!(h.dim(), 0);
        let z = vec![F3::from_i64(2), F3::zero()];
        assert!(h.is_boundary(&z).unwrap());
        assert!(h.coordinates(&[F3::zero(), F3::one()]).is_err());
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = m(&[&[1]]);
        let d1 = m(&[&[1]]);
        assert!(matches!(Homology::new(d0, d1), Err(Error::NotAComplex(_))));
    }
}
