//! Steenrod operations on the cohomology of complexes with an action of the
//! sequence operad, through an equivariant chain map `W → E(p)` from the
//! standard resolution of the cyclic group of order `p`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::{self, act_element, EAlgebra};
use crate::bar::{bar_basis, bar_differential, format_bar, BarElement};
use crate::cochains::CochainAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{cohomology_at, from_vector, to_vector, Homology};
use crate::linear::LinComb;
use crate::operad::OperadElement;
use crate::perm;
use crate::phi::phi;
use crate::ring::{Coeff, Field};
use crate::simplicial::SimplicialSet;

pub const SUPPORTED_PRIMES: [u64; 4] = [2, 3, 5, 7];

pub fn check_prime(p: u64) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::UnsupportedPrime(p))
    }
}

/// A chain of `W`, as coefficients of `t^j e_i` keyed by `(i, j)`.
pub type WChain<R> = LinComb<(usize, usize), R>;

/// `d e_{2i+1} = (t - 1) e_{2i}` and `d e_{2i+2} = N e_{2i+1}`.
pub fn w_boundary<R: Coeff>(p: usize, i: usize) -> WChain<R> {
    let mut out = LinComb::zero();
    if i == 0 {
        return out;
    }
    if i % 2 == 1 {
        out.add_term((i - 1, 1 % p), R::one());
        out.add_term((i - 1, 0), -R::one());
    } else {
        for j in 0..p {
            out.add_term((i - 1, j), R::one());
        }
    }
    out
}

/// `t^j · g = g ⋄ t^{-j}`, with `t` the cycle `i ↦ i + 1`.
pub fn cyclic_act<R: Coeff>(g: &OperadElement<R>, j: usize) -> OperadElement<R> {
    let p = g.arity();
    g.act(&perm::cyclic_power(p, (p - j % p) % p))
        .expect("cyclic permutations have the right arity")
}

/// The images `φ(e_i)` of the equivariant chain map `W → E(p)` defined by
/// `φ(e_0) = id` and `φ(e_{i+1}) = H(φ(d e_{i+1}))`.
#[derive(Clone, Debug)]
pub struct PhiTable<R: Coeff> {
    prime: usize,
    cells: Vec<OperadElement<R>>,
}

impl<R: Coeff> PhiTable<R> {
    pub fn new(prime: usize) -> Self {
        PhiTable {
            prime,
            cells: vec![OperadElement::identity(prime)],
        }
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    pub fn extend_to(&mut self, i: usize) {
        while self.cells.len() <= i {
            let next = self.cells.len();
            let y = self.image(&w_boundary(self.prime, next));
            self.cells.push(y.contracting_h());
        }
    }

    pub fn computed(&self) -> usize {
        self.cells.len() - 1
    }

    /// `φ(e_i)`; panics unless `i ≤ computed()`.
    pub fn cell(&self, i: usize) -> &OperadElement<R> {
        &self.cells[i]
    }

    pub fn image(&self, x: &WChain<R>) -> OperadElement<R> {
        let mut out = OperadElement::zero(self.prime);
        for (&(i, j), c) in x.iter() {
            out.add_scaled(&cyclic_act(&self.cells[i], j), *c);
        }
        out
    }

    /// `dφ(t^j e_i) - φ(d t^j e_i)` for every `j`; all zero when `φ` is an
    /// equivariant chain map in degree `i`.
    pub fn chain_map_defects(&self, i: usize) -> Vec<OperadElement<R>> {
        (0..self.prime)
            .map(|j| {
                let mut lhs = cyclic_act(&self.cells[i], j).boundary();
                let mut shifted = LinComb::zero();
                for (&(a, b), c) in w_boundary::<R>(self.prime, i).iter() {
                    shifted.add_term((a, (b + j) % self.prime), *c);
                }
                lhs.sub_assign(&self.image(&shifted));
                lhs
            })
            .collect()
    }

    /// Whether `t^p` acts trivially and `t^j t^k = t^{j+k}` on `φ(e_i)`.
    pub fn is_equivariant(&self, i: usize) -> bool {
        let g = &self.cells[i];
        if cyclic_act(g, self.prime) != *g {
            return false;
        }
        (0..self.prime).all(|j| {
            (0..self.prime)
                .all(|k| cyclic_act(&cyclic_act(g, k), j) == cyclic_act(g, (j + k) % self.prime))
        })
    }
}

/// A cochain complex with a structure map `E(p) ⊗ C^{⊗p} → C`.
pub trait StructuredComplex<F: Field>: Sync {
    type Basis: Ord + Clone + Hash + Debug + Send + Sync;

    fn basis(&self, n: i32) -> Result<Vec<Self::Basis>>;

    fn differential(&self, b: &Self::Basis) -> LinComb<Self::Basis, F>;

    fn structure(
        &self,
        g: &OperadElement<F>,
        xs: &[LinComb<Self::Basis, F>],
    ) -> Result<LinComb<Self::Basis, F>>;

    fn format(&self, x: &LinComb<Self::Basis, F>) -> String;
}

/// An algebra over the operad, as a structured complex.
pub struct AlgebraComplex<'a, A>(pub &'a A);

impl<'a, F: Field, A: EAlgebra<F>> StructuredComplex<F> for AlgebraComplex<'a, A> {
    type Basis = A::Basis;

    fn basis(&self, n: i32) -> Result<Vec<A::Basis>> {
        self.0.basis_in_degree(n).ok_or(Error::BeyondTruncation {
            degree: n,
            cutoff: n - 1,
        })
    }

    fn differential(&self, b: &A::Basis) -> LinComb<A::Basis, F> {
        self.0.differential(b)
    }

    fn structure(
        &self,
        g: &OperadElement<F>,
        xs: &[LinComb<A::Basis, F>],
    ) -> Result<LinComb<A::Basis, F>> {
        if xs.len() != g.arity() {
            return Err(Error::ArityMismatch {
                expected: g.arity(),
                got: xs.len(),
            });
        }
        Ok(act_element(self.0, g, xs))
    }

    fn format(&self, x: &LinComb<A::Basis, F>) -> String {
        algebra::format_element(self.0, x)
    }
}

/// The bar complex of an algebra, acted on through `Φ`.
pub struct BarConstruction<'a, A>(pub &'a A);

impl<'a, F: Field, A: EAlgebra<F>> StructuredComplex<F> for BarConstruction<'a, A> {
    type Basis = Vec<A::Basis>;

    fn basis(&self, n: i32) -> Result<Vec<Vec<A::Basis>>> {
        bar_basis(self.0, n)
    }

    fn differential(&self, b: &Vec<A::Basis>) -> BarElement<A::Basis, F> {
        bar_differential(self.0, &LinComb::basis(b.clone()))
    }

    fn structure(
        &self,
        g: &OperadElement<F>,
        xs: &[BarElement<A::Basis, F>],
    ) -> Result<BarElement<A::Basis, F>> {
        phi(self.0, g, xs)
    }

    fn format(&self, x: &BarElement<A::Basis, F>) -> String {
        format_bar(self.0, x)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Operation {
    /// `Sq^s` at `p = 2`.
    Sq(i64),
    /// `P^s` at odd `p`.
    P(i64),
    /// `βP^s` at odd `p`.
    BetaP(i64),
}

impl std::fmt::Display for Operation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operation::Sq(s) => write!(f, "Sq^{s}"),
            Operation::P(s) => write!(f, "P^{s}"),
            Operation::BetaP(s) => write!(f, "βP^{s}"),
        }
    }
}

/// `H^n` together with the basis of `C^n` its vectors refer to.
#[derive(Clone, Debug)]
pub struct CohomologyGroup<K, F> {
    pub degree: i32,
    pub basis: Vec<K>,
    pub homology: Homology<F>,
}

impl<K: Ord + Clone + Hash, F: Field> CohomologyGroup<K, F> {
    pub fn dim(&self) -> usize {
        self.homology.dim()
    }

    pub fn representative(&self, coords: &[F]) -> LinComb<K, F> {
        let mut v = vec![F::zero(); self.basis.len()];
        for (c, r) in coords.iter().zip(self.homology.representatives()) {
            for (x, y) in v.iter_mut().zip(r) {
                *x += *c * *y;
            }
        }
        from_vector(&self.basis, &v)
    }

    pub fn coordinates(&self, z: &LinComb<K, F>) -> Result<Vec<F>> {
        self.homology.coordinates(&to_vector(&self.basis, z)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub operation: String,
    pub source_degree: i32,
    pub class: usize,
    pub target_degree: i32,
    /// Coordinates of the result in the chosen basis of the target group.
    pub result: Vec<i64>,
}

/// Steenrod operations at the prime `p = char F` on a structured complex,
/// using bases of degree at most `cutoff`.
pub struct Steenrod<'c, F: Field, C: StructuredComplex<F>> {
    complex: &'c C,
    prime: usize,
    cutoff: i32,
    phi: Mutex<PhiTable<F>>,
    groups: Mutex<BTreeMap<i32, Arc<CohomologyGroup<C::Basis, F>>>>,
}

impl<'c, F: Field, C: StructuredComplex<F>> Steenrod<'c, F, C> {
    pub fn new(complex: &'c C, cutoff: i32) -> Result<Self> {
        check_prime(F::CHARACTERISTIC)?;
        let prime = F::CHARACTERISTIC as usize;
        Ok(Steenrod {
            complex,
            prime,
            cutoff,
            phi: Mutex::new(PhiTable::new(prime)),
            groups: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    pub fn cutoff(&self) -> i32 {
        self.cutoff
    }

    pub fn complex(&self) -> &C {
        self.complex
    }

    /// `H^n`, which needs bases up to degree `n + 1 ≤ cutoff`.
    pub fn cohomology(&self, n: i32) -> Result<Arc<CohomologyGroup<C::Basis, F>>> {
        if n + 1 > self.cutoff {
            return Err(Error::BeyondTruncation {
                degree: n + 1,
                cutoff: self.cutoff,
            });
        }
        if let Some(g) = self.groups.lock().unwrap().get(&n) {
            return Ok(g.clone());
        }
        let (basis, homology) = cohomology_at(
            |d| {
                if d < 0 {
                    Ok(Vec::new())
                } else {
                    self.complex.basis(d)
                }
            },
            |b| self.complex.differential(b),
            n,
        )?;
        let g = Arc::new(CohomologyGroup {
            degree: n,
            basis,
            homology,
        });
        self.groups.lock().unwrap().insert(n, g.clone());
        Ok(g)
    }

    pub fn phi_cell(&self, i: usize) -> OperadElement<F> {
        let mut t = self.phi.lock().unwrap();
        t.extend_to(i);
        t.cell(i).clone()
    }

    /// `D_i(x) = φ(e_i)(x, ..., x)`, of degree `p|x| - i`.
    pub fn d_operation(&self, i: usize, x: &LinComb<C::Basis, F>) -> Result<LinComb<C::Basis, F>> {
        let g = self.phi_cell(i);
        self.complex.structure(&g, &vec![x.clone(); self.prime])
    }

    /// The `D_i` index and scalar of an operation on a class of degree `q`,
    /// or `None` when the operation vanishes for degree reasons.
    fn plan(&self, op: Operation, q: i32) -> Result<Option<(usize, F)>> {
        let p = self.prime as i64;
        let q64 = q as i64;
        let (index, odd) = match op {
            Operation::Sq(s) => {
                if p != 2 {
                    return Err(Error::UnsupportedPrime(self.prime as u64));
                }
                return Ok(usize::try_from(q64 - s).ok().map(|i| (i, F::one())));
            }
            Operation::P(s) => ((q64 - 2 * s) * (p - 1), s),
            Operation::BetaP(s) => ((q64 - 2 * s) * (p - 1) - 1, s),
        };
        if p == 2 {
            return Err(Error::UnsupportedPrime(2));
        }
        let Ok(index) = usize::try_from(index) else {
            return Ok(None);
        };
        let m = (p - 1) / 2;
        let fact: i64 = (1..=m).product();
        let mut nu = F::one();
        for _ in 0..q {
            nu = nu * F::from_i64(fact);
        }
        let parity = (q64 * (q64 - 1) / 2 * m).rem_euclid(2) as usize + odd.rem_euclid(2) as usize;
        Ok(Some((index, nu * F::sign(parity))))
    }

    /// Degree of `op` applied to a class of degree `q`.
    pub fn target_degree(&self, op: Operation, q: i32) -> i32 {
        let p = self.prime as i32;
        match op {
            Operation::Sq(s) => q + s as i32,
            Operation::P(s) => q + 2 * s as i32 * (p - 1),
            Operation::BetaP(s) => q + 2 * s as i32 * (p - 1) + 1,
        }
    }

    /// `op` on a cocycle of degree `q`, at the cochain level.
    pub fn apply_cochain(
        &self,
        op: Operation,
        q: i32,
        x: &LinComb<C::Basis, F>,
    ) -> Result<LinComb<C::Basis, F>> {
        let needed = self.prime as i32 * q + 1;
        if needed > self.cutoff {
            return Err(Error::BeyondTruncation {
                degree: needed,
                cutoff: self.cutoff,
            });
        }
        match self.plan(op, q)? {
            None => Ok(LinComb::zero()),
            Some((i, c)) => Ok(self.d_operation(i, x)?.scaled(c)),
        }
    }

    /// `op` on the class with the given coordinates in `H^q`, as coordinates
    /// in the target group.
    pub fn apply(&self, op: Operation, q: i32, coords: &[F]) -> Result<Vec<F>> {
        let source = self.cohomology(q)?;
        let rep = source.representative(coords);
        let image = self.apply_cochain(op, q, &rep)?;
        let target = self.cohomology(self.target_degree(op, q))?;
        target.coordinates(&image)
    }

    /// The operations with a possibly nonzero value, for a class of degree `q`.
    pub fn operations(&self, q: i32) -> Vec<Operation> {
        let p = self.prime as i64;
        let q = q as i64;
        if p == 2 {
            (0..=q).map(Operation::Sq).collect()
        } else {
            let mut out = Vec::new();
            for s in 0..=q / 2 {
                out.push(Operation::P(s));
                if (q - 2 * s) * (p - 1) >= 1 {
                    out.push(Operation::BetaP(s));
                }
            }
            out
        }
    }

    /// Every operation on every basis class of degree `q ≥ 1` with
    /// `p q + 1 ≤ cutoff`.
    pub fn table(&self) -> Result<Vec<TableEntry>> {
        let mut out = Vec::new();
        let mut q = 1;
        while self.prime as i32 * q < self.cutoff {
            let group = self.cohomology(q)?;
            for class in 0..group.dim() {
                let mut coords = vec![F::zero(); group.dim()];
                coords[class] = F::one();
                for op in self.operations(q) {
                    let result = self.apply(op, q, &coords)?;
                    out.push(TableEntry {
                        operation: op.to_string(),
                        source_degree: q,
                        class,
                        target_degree: self.target_degree(op, q),
                        result: result.iter().map(|c| c.to_signed()).collect(),
                    });
                }
            }
            q += 1;
        }
        Ok(out)
    }
}

/// Checks that `X` has a single vertex and no nondegenerate edges, so that
/// `N̄^*(X)` vanishes below degree 2.
pub fn check_simply_connected_model(x: &SimplicialSet) -> Result<()> {
    if x.basepoint().is_none() {
        return Err(Error::UnsupportedSpace("no basepoint".into()));
    }
    let vertices = x.simplices(0).len();
    if vertices != 1 {
        return Err(Error::UnsupportedSpace(format!(
            "{vertices} vertices, expected exactly one"
        )));
    }
    let edges = x.simplices(1).len();
    if edges != 0 {
        return Err(Error::UnsupportedSpace(format!(
            "{edges} nondegenerate 1-simplices"
        )));
    }
    Ok(())
}

/// Dimensions of `H^n(B N̄^*(X); F)` for `0 ≤ n ≤ max_degree`.
pub fn loop_cohomology<F: Field>(x: &SimplicialSet, max_degree: i32) -> Result<Vec<usize>> {
    check_simply_connected_model(x)?;
    let cochains = CochainAlgebra::reduced(x);
    let bar = BarConstruction(&cochains);
    (0..=max_degree)
        .map(|n| {
            let (_, h) = cohomology_at(
                |d| StructuredComplex::<F>::basis(&bar, d),
                |b| StructuredComplex::<F>::differential(&bar, b),
                n,
            )?;
            Ok(h.dim())
        })
        .collect()
}
