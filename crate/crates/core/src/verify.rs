//! Exhaustive and sampled checks of the identities the library relies on,
//! grouped into suites that produce serializable reports.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::act_element;
use crate::bar::{bar_differential, BarElement};
use crate::cochains::CochainAlgebra;
use crate::coefficients::{integral, support_is_structural};
use crate::diagonal::{diagonal, iterated_diagonals, TensorOperadElement};
use crate::free_algebra::{FreeAlgebra, FreeBasis};
use crate::linear::LinComb;
use crate::operad::OperadElement;
use crate::phi::{
    associative_triple, chain_map_defect, coinvariance_defect, composition_formula_sides,
    iterated_versus_composed, product_splitting_sides,
};
use crate::ring::Coeff;
use crate::simplicial::SimplicialSet;
use crate::steenrod::{
    loop_cohomology, AlgebraComplex, BarConstruction, Operation, PhiTable, Steenrod,
    StructuredComplex,
};
use crate::surjection::Surjection;
use crate::{F2, Z};

/// At most this many failures are kept per check; the first is the smallest.
pub const MAX_FAILURES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub range: String,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Recorded observations that are not pass/fail conditions.
    pub observations: BTreeMap<String, String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    /// Longest surjection enumerated.
    pub max_entries: usize,
    /// Largest arity for coefficient and `Φ` checks.
    pub max_arity: usize,
    /// Bound on the total bar length of the inputs.
    pub max_bar_length: usize,
    /// Number of random cases in sampled checks.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            max_entries: 7,
            max_arity: 3,
            max_bar_length: 4,
            samples: 200,
            seed: 0,
        }
    }
}

impl VerifyParams {
    fn as_map(&self) -> BTreeMap<String, String> {
        [
            ("max_entries", self.max_entries.to_string()),
            ("max_arity", self.max_arity.to_string()),
            ("max_bar_length", self.max_bar_length.to_string()),
            ("samples", self.samples.to_string()),
            ("seed", self.seed.to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Runs `test` on every case in parallel; `None` means the case passed.
pub fn run_check<C: Sync>(
    name: &str,
    range: String,
    cases: &[C],
    describe: impl Fn(&C) -> String + Sync,
    test: impl Fn(&C) -> Option<String> + Sync,
) -> Check {
    let outcomes: Vec<Option<String>> = cases.par_iter().map(&test).collect();
    let mut failures = Vec::new();
    let mut failed = 0;
    for (c, o) in cases.iter().zip(outcomes) {
        if let Some(detail) = o {
            failed += 1;
            if failures.len() < MAX_FAILURES {
                failures.push(Failure {
                    case: describe(c),
                    detail,
                });
            }
        }
    }
    Check {
        name: name.to_string(),
        range,
        cases: cases.len(),
        failed,
        failures,
    }
}

fn expect_zero<T: std::fmt::Display>(x: &T, zero: bool) -> Option<String> {
    (!zero).then(|| format!("defect {x}"))
}

/// Every surjection with at most `max_m` entries and arity at most `max_k`,
/// ordered by length, then arity.
pub fn surjections(max_m: usize, max_k: usize) -> Vec<Surjection> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for k in 1..=m.min(max_k) {
            out.extend(Surjection::all(k, m));
        }
    }
    out
}

/// All `e ∈ ℕ_{>0}^k` with `Σ e ≤ total`.
pub fn multiplicities(k: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let rest = k - cur.len() - 1;
        for x in 1..=left.saturating_sub(rest) {
            cur.push(x);
            rec(k, left - x, cur, out);
            cur.pop();
        }
    }
    if total >= k {
        rec(k, total, &mut Vec::new(), &mut out);
    }
    out.sort_by_key(|e| (e.iter().sum::<usize>(), e.clone()));
    out
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=k).permutations(k).collect()
}

fn el(s: &str) -> OperadElement<Z> {
    s.parse().expect("literal operad element")
}

fn random_surjection(rng: &mut impl Rng, k: usize, max_m: usize) -> Surjection {
    if k == 1 {
        return Surjection::identity(1);
    }
    loop {
        let m = rng.random_range(k..=max_m.max(k));
        let mut e: Vec<u8> = Vec::with_capacity(m);
        while e.len() < m {
            let v = rng.random_range(1..=k as u8);
            if e.last() != Some(&v) {
                e.push(v);
            }
        }
        if let Some(s) = Surjection::with_arity(e, k) {
            return s;
        }
    }
}

// ---------------------------------------------------------------- operad

pub fn check_boundary_squared(max_m: usize) -> Check {
    let cases = surjections(max_m, max_m);
    run_check(
        "d∘d = 0 on E(k)",
        format!("m ≤ {max_m}"),
        &cases,
        |f| f.to_string(),
        |f| {
            let dd = OperadElement::<Z>::basis(f.clone()).boundary().boundary();
            expect_zero(&dd, dd.is_zero())
        },
    )
}

pub fn check_homotopy_identity(max_m: usize) -> Check {
    let cases: Vec<(Surjection, usize)> = surjections(max_m, max_m)
        .into_iter()
        .flat_map(|f| (1..=f.arity()).map(move |a| (f.clone(), a)))
        .collect();
    run_check(
        "d s_a + s_a d = id + ι_a r_a",
        format!("m ≤ {max_m}, all a"),
        &cases,
        |(f, a)| format!("{f}, a = {a}"),
        |(f, a)| {
            let x = OperadElement::<Z>::basis(f.clone());
            let mut lhs = x.s(*a).unwrap().boundary();
            lhs.add_assign(&x.boundary().s(*a).unwrap());
            let mut rhs = x.clone();
            rhs.add_assign(&x.r(*a).unwrap().iota(*a).unwrap());
            lhs.sub_assign(&rhs);
            expect_zero(&lhs, lhs.is_zero())
        },
    )
}

fn sampled_pairs(params: &VerifyParams, salt: u64) -> Vec<(Surjection, usize, Surjection)> {
    let mut rng = params.rng(salt);
    (0..params.samples)
        .map(|_| {
            let k = rng.random_range(1..=3);
            let x = random_surjection(&mut rng, k, 5);
            let i = rng.random_range(1..=k);
            let l = rng.random_range(1..=3);
            (x, i, random_surjection(&mut rng, l, 5))
        })
        .collect()
}

pub fn check_composition_leibniz(params: &VerifyParams) -> Check {
    let cases = sampled_pairs(params, 1);
    run_check(
        "d(x ∘_i y) = dx ∘_i y + (-1)^|x| x ∘_i dy",
        format!("{} sampled pairs, m ≤ 5", params.samples),
        &cases,
        |(x, i, y)| format!("{x} ∘_{i} {y}"),
        |(x, i, y)| {
            let (x, y) = (
                OperadElement::<Z>::basis(x.clone()),
                OperadElement::<Z>::basis(y.clone()),
            );
            let mut lhs = x.compose(*i, &y).unwrap().boundary();
            lhs.sub_assign(&x.boundary().compose(*i, &y).unwrap());
            let sign = Z::sign(x.degree().unwrap());
            lhs.add_scaled(&x.compose(*i, &y.boundary()).unwrap(), -sign);
            expect_zero(&lhs, lhs.is_zero())
        },
    )
}

pub fn check_composition_associative(params: &VerifyParams) -> Check {
    let mut rng = params.rng(2);
    let cases: Vec<(Surjection, usize, Surjection, usize, Surjection)> = (0..params.samples)
        .map(|_| {
            let k = rng.random_range(1..=3);
            let x = random_surjection(&mut rng, k, 4);
            let i = rng.random_range(1..=k);
            let l = rng.random_range(1..=2);
            let y = random_surjection(&mut rng, l, 4);
            let j = rng.random_range(1..=l);
            let kz = rng.random_range(1..=2);
            let z = random_surjection(&mut rng, kz, 4);
            (x, i, y, j, z)
        })
        .collect();
    run_check(
        "(x ∘_i y) ∘_{i+j-1} z = x ∘_i (y ∘_j z)",
        format!("{} sampled triples, m ≤ 4", params.samples),
        &cases,
        |(x, i, y, j, z)| format!("x = {x}, i = {i}, y = {y}, j = {j}, z = {z}"),
        |(x, i, y, j, z)| {
            let b = |s: &Surjection| OperadElement::<Z>::basis(s.clone());
            let lhs = b(x)
                .compose(*i, &b(y))
                .unwrap()
                .compose(i + j - 1, &b(z))
                .unwrap();
            let rhs = b(x).compose(*i, &b(y).compose(*j, &b(z)).unwrap()).unwrap();
            (lhs != rhs).then(|| format!("{lhs} ≠ {rhs}"))
        },
    )
}

pub fn check_boundary_equivariant(max_m: usize) -> Check {
    let cases: Vec<(Surjection, Vec<usize>)> = surjections(max_m, 3)
        .into_iter()
        .flat_map(|f| {
            all_permutations(f.arity())
                .into_iter()
                .map(move |s| (f.clone(), s))
        })
        .collect();
    run_check(
        "d(x ⋄ σ) = (dx) ⋄ σ",
        format!("m ≤ {max_m}, k ≤ 3, all σ"),
        &cases,
        |(f, s)| format!("{f} ⋄ {s:?}"),
        |(f, s)| {
            let x = OperadElement::<Z>::basis(f.clone());
            let mut lhs = x.act(s).unwrap().boundary();
            lhs.sub_assign(&x.boundary().act(s).unwrap());
            expect_zero(&lhs, lhs.is_zero())
        },
    )
}

/// The free algebra on `x` (2), `y` (3) and `u` (2) with `du = y`.
pub fn test_algebra() -> FreeAlgebra<Z> {
    let mut a = FreeAlgebra::new();
    a.add_generator_str("x", 2, "").expect("generator");
    a.add_generator_str("y", 3, "").expect("generator");
    a.add_generator_str("u", 2, "y").expect("generator");
    a
}

/// Generators of [`test_algebra`] and its words of length two under
/// surjections with at most three entries.
fn test_entries(a: &FreeAlgebra<Z>, with_products: bool) -> Vec<FreeBasis> {
    let mut out: Vec<FreeBasis> = ["x", "y", "u"]
        .iter()
        .map(|n| a.generator(n).unwrap().keys().next().unwrap().clone())
        .collect();
    if with_products {
        for f in ["(12)", "(121)"] {
            for (i, j) in [(0, 0), (0, 2), (2, 1)] {
                let v = act_element(
                    a,
                    &el(f),
                    &[
                        LinComb::basis(out[i].clone()),
                        LinComb::basis(out[j].clone()),
                    ],
                );
                let k = v.keys().next().cloned();
                if let Some(k) = k {
                    if !out.contains(&k) {
                        out.push(k);
                    }
                }
            }
        }
    }
    out
}

/// Bar tensors of length `1..=max_len` over the given entries.
fn tensors<B: Clone>(entries: &[B], max_len: usize) -> Vec<Vec<B>> {
    let mut out: Vec<Vec<B>> = Vec::new();
    let mut layer: Vec<Vec<B>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|t| {
                entries.iter().map(move |e| {
                    let mut t = t.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn check_bar_boundary_squared(max_len: usize) -> Check {
    let a = test_algebra();
    let cases = tensors(&test_entries(&a, true), max_len);
    run_check(
        "d∘d = 0 on B(free algebra)",
        format!("bar length ≤ {max_len}, entries from generators and binary words"),
        &cases,
        |t| crate::bar::format_bar(&a, &LinComb::<_, Z>::basis(t.clone())),
        |t| {
            let x: BarElement<FreeBasis, Z> = LinComb::basis(t.clone());
            let dd = bar_differential(&a, &bar_differential(&a, &x));
            (!dd.is_zero()).then(|| format!("defect {}", crate::bar::format_bar(&a, &dd)))
        },
    )
}

pub fn operad_suite(params: &VerifyParams) -> VerificationReport {
    let start = Instant::now();
    let checks = vec![
        check_boundary_squared(params.max_entries),
        check_homotopy_identity(params.max_entries),
        check_boundary_equivariant(params.max_entries.min(6)),
        check_composition_leibniz(params),
        check_composition_associative(params),
        check_bar_boundary_squared(params.max_bar_length),
    ];
    report("operad", params, checks, BTreeMap::new(), start)
}

fn report(
    suite: &str,
    params: &VerifyParams,
    checks: Vec<Check>,
    observations: BTreeMap<String, String>,
    start: Instant,
) -> VerificationReport {
    VerificationReport {
        suite: suite.to_string(),
        params: params.as_map(),
        checks,
        observations,
        wall_time: start.elapsed(),
    }
}

// ---------------------------------------------------------- coefficients

/// `(f, e, expected)` fixtures for `C(f; e)` over the integers.
pub fn coefficient_fixtures() -> Vec<(&'static str, Vec<usize>, String)> {
    let mut out = vec![
        ("(1)", vec![1], "(1)".to_string()),
        ("(12)", vec![1, 1], "(121)".to_string()),
        ("(12)", vec![1, 2], "-(12131)".to_string()),
    ];
    for q in 1..=4usize {
        let mut seq = String::from("(1");
        for v in 2..=q + 1 {
            seq.push_str(&format!("{v}1"));
        }
        seq.push(')');
        let sign = if (q * (q + 3) / 2) % 2 == 0 { "" } else { "-" };
        out.push(("(12)", vec![1, q], format!("{sign}{seq}")));
    }
    for p in 2..=3 {
        for q in 1..=3 {
            out.push(("(12)", vec![p, q], "0".to_string()));
        }
    }
    out.push((
        "(123)",
        vec![1, 1, 1],
        "-(12131)-(13121)+(12321)".to_string(),
    ));
    out.push((
        "(123)",
        vec![1, 2, 1],
        "-(1232141)-(1213141)-(1214131)+(1213431)-(1412131)".to_string(),
    ));
    out
}

pub fn check_coefficient_fixtures() -> Check {
    let cases = coefficient_fixtures();
    run_check(
        "fixtures",
        "closed forms and worked examples".into(),
        &cases,
        |(f, e, _)| format!("C({f}; {e:?})"),
        |(f, e, want)| {
            let got = integral().get(&f.parse().unwrap(), e);
            let want: OperadElement<Z> = if want == "0" {
                OperadElement::zero(e.iter().sum())
            } else {
                want.parse().unwrap()
            };
            (*got != want).then(|| format!("computed {got}, expected {want}"))
        },
    )
}

fn coefficient_cases(
    max_k: usize,
    max_m: usize,
    max_total: usize,
) -> Vec<(Surjection, Vec<usize>)> {
    let mut out = Vec::new();
    for f in surjections(max_m, max_k) {
        for e in multiplicities(f.arity(), max_total) {
            out.push((f.clone(), e));
        }
    }
    out
}

pub fn check_coefficient_boundary(max_k: usize, max_m: usize, max_total: usize) -> Check {
    let cases = coefficient_cases(max_k, max_m, max_total);
    let t = integral();
    run_check(
        "dC = X_1 + X_2 + X_3",
        format!("k ≤ {max_k}, m ≤ {max_m}, Σe ≤ {max_total}"),
        &cases,
        |(f, e)| format!("C({f}; {e:?})"),
        |(f, e)| {
            (!t.boundary_identity_holds(f, e)).then(|| {
                let mut rhs = t.x1(f, e);
                rhs.add_assign(&t.x2(f, e));
                rhs.add_assign(&t.x3(f, e));
                format!("dC = {}, X_1 + X_2 + X_3 = {}", t.get(f, e).boundary(), rhs)
            })
        },
    )
}

pub fn check_coefficient_transport(max_k: usize, max_m: usize, max_total: usize) -> Check {
    let cases: Vec<(Surjection, Vec<usize>, Vec<usize>)> =
        coefficient_cases(max_k, max_m, max_total)
            .into_iter()
            .flat_map(|(f, e)| {
                all_permutations(f.arity())
                    .into_iter()
                    .map(move |s| (f.clone(), e.clone(), s))
            })
            .collect();
    let t = integral();
    run_check(
        "C(f ⋄ σ; e) = (-1)^ξ C(f; e') ⋄ B",
        format!("k ≤ {max_k}, m ≤ {max_m}, Σe ≤ {max_total}, all σ"),
        &cases,
        |(f, e, s)| format!("f = {f}, e = {e:?}, σ = {s:?}"),
        |(f, e, s)| {
            let direct = t.of_element(&OperadElement::basis(f.clone()).act(s).unwrap(), e);
            let moved = t.transport(f, s, e);
            (direct != moved).then(|| format!("direct {direct}, transported {moved}"))
        },
    )
}

/// The support conditions on every coefficient memoized so far.
pub fn check_structural_all() -> Check {
    let mut cases = integral().entries();
    cases.sort_by(|a, b| (a.0.len(), &a.0, &a.1).cmp(&(b.0.len(), &b.0, &b.1)));
    run_check(
        "support conditions on every computed C",
        "all memoized entries".into(),
        &cases,
        |(f, e, _)| format!("C({f}; {e:?})"),
        |(f, e, c)| {
            support_is_structural(f, e, c)
                .err()
                .map(|g| format!("term {g}"))
        },
    )
}

pub fn coefficients_suite(params: &VerifyParams) -> VerificationReport {
    let start = Instant::now();
    let (k, m, total) = (
        params.max_arity,
        params.max_entries.min(5),
        params.max_bar_length + 1,
    );
    let mut checks = vec![
        check_coefficient_fixtures(),
        check_coefficient_boundary(k, m, total),
        check_coefficient_transport(k, m, total),
    ];
    checks.push(check_structural_all());
    report("coefficients", params, checks, BTreeMap::new(), start)
}

// ------------------------------------------------------------------- phi

/// Tuples of `k` basis tensors of the given letters with total length in
/// `k..=max_len`.
fn bar_inputs(letters: &[FreeBasis], k: usize, max_len: usize) -> Vec<Vec<Vec<FreeBasis>>> {
    let singles = tensors(letters, max_len.saturating_sub(k - 1).max(1));
    let mut out: Vec<Vec<Vec<FreeBasis>>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                let used: usize = t.iter().map(Vec::len).sum();
                singles
                    .iter()
                    .filter(move |s| used + s.len() <= max_len)
                    .map(move |s| {
                        let mut t = t.clone();
                        t.push(s.clone());
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out.retain(|t| t.iter().map(Vec::len).sum::<usize>() <= max_len);
    out
}

fn format_inputs(a: &FreeAlgebra<Z>, xs: &[Vec<FreeBasis>]) -> String {
    xs.iter()
        .map(|t| crate::bar::format_bar(a, &LinComb::<_, Z>::basis(t.clone())))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `(g, inputs)` pairs for the `Φ` checks; the inputs are sampled when the
/// full product exceeds `budget`.
fn phi_cases(
    a: &FreeAlgebra<Z>,
    params: &VerifyParams,
    budget: usize,
    salt: u64,
) -> (Vec<(Surjection, Vec<Vec<FreeBasis>>)>, usize) {
    let letters = test_entries(a, false);
    let mut out = Vec::new();
    for f in surjections(params.max_entries.min(5), params.max_arity) {
        for xs in bar_inputs(&letters, f.arity(), params.max_bar_length) {
            out.push((f.clone(), xs));
        }
    }
    let total = out.len();
    if total > budget {
        let mut rng = params.rng(salt);
        let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, total, budget).into_vec();
        picked.sort_unstable();
        out = picked.into_iter().map(|i| out[i].clone()).collect();
    }
    (out, total)
}

fn coverage(run: usize, total: usize) -> String {
    if run == total {
        "exhaustive".into()
    } else {
        format!("{run} sampled of {total}")
    }
}

pub fn check_phi_chain_map(params: &VerifyParams, budget: usize) -> Check {
    let a = test_algebra();
    let (cases, total) = phi_cases(&a, params, budget, 3);
    run_check(
        "Φ is a chain map",
        format!(
            "k ≤ {}, m ≤ {}, Σ bar length ≤ {}, letters x, y, u with du = y, {}",
            params.max_arity,
            params.max_entries.min(5),
            params.max_bar_length,
            coverage(cases.len(), total)
        ),
        &cases,
        |(g, xs)| format!("{g}({})", format_inputs(&a, xs)),
        |(g, xs)| {
            let d = chain_map_defect(&a, &OperadElement::basis(g.clone()), xs).unwrap();
            (!d.is_zero()).then(|| format!("defect {}", crate::bar::format_bar(&a, &d)))
        },
    )
}

pub fn check_phi_coinvariance(params: &VerifyParams, budget: usize) -> Check {
    let a = test_algebra();
    let (inputs, total) = phi_cases(&a, params, budget, 4);
    let covered = coverage(inputs.len(), total);
    let cases: Vec<(Surjection, Vec<Vec<FreeBasis>>, Vec<usize>)> = inputs
        .into_iter()
        .flat_map(|(g, xs)| {
            all_permutations(g.arity())
                .into_iter()
                .skip(1)
                .map(move |s| (g.clone(), xs.clone(), s))
        })
        .collect();
    run_check(
        "Φ(g; x) = ±Φ(g ⋄ σ; x ∘ σ)",
        format!(
            "k ≤ {}, m ≤ {}, Σ bar length ≤ {}, all σ, {covered}",
            params.max_arity,
            params.max_entries.min(5),
            params.max_bar_length
        ),
        &cases,
        |(g, xs, s)| format!("{g}({}), σ = {s:?}", format_inputs(&a, xs)),
        |(g, xs, s)| {
            let d = coinvariance_defect(&a, &OperadElement::basis(g.clone()), s, xs).unwrap();
            (!d.is_zero()).then(|| format!("defect {}", crate::bar::format_bar(&a, &d)))
        },
    )
}

pub fn check_composition_formula(max_total_entries: usize, max_q: usize) -> Check {
    let mut cases = Vec::new();
    for f in surjections(3, 3)
        .into_iter()
        .filter(Surjection::is_permutation)
    {
        for g in surjections(max_total_entries - f.len(), 2) {
            for ps in multiplicities(f.arity(), 3) {
                for qs in multiplicities(g.arity(), max_q) {
                    cases.push((f.clone(), g.clone(), ps.clone(), qs));
                }
            }
        }
    }
    run_check(
        "C(f·g; p, q) by the composition formula",
        format!("permutations f, |f| + |g| entries ≤ {max_total_entries}, Σp ≤ 3, Σq ≤ {max_q}"),
        &cases,
        |(f, g, ps, qs)| format!("f = {f}, g = {g}, p = {ps:?}, q = {qs:?}"),
        |(f, g, ps, qs)| {
            let (l, r) = composition_formula_sides::<Z>(f, g, ps, qs);
            (l != r).then(|| format!("{l} ≠ {r}"))
        },
    )
}

pub fn check_product_splitting(params: &VerifyParams) -> Check {
    let a = test_algebra();
    let letters = test_entries(&a, false);
    let mut cases = Vec::new();
    for f in surjections(2, 2)
        .into_iter()
        .filter(Surjection::is_permutation)
    {
        for g in surjections(4, 2) {
            for xs in bar_inputs(
                &letters,
                f.arity() + g.arity(),
                params.max_bar_length.min(4),
            ) {
                cases.push((f.clone(), g.clone(), xs));
            }
        }
    }
    let budget = params.samples.max(1) * 2;
    if cases.len() > budget {
        let mut rng = params.rng(5);
        let mut picked: Vec<usize> =
            rand::seq::index::sample(&mut rng, cases.len(), budget).into_vec();
        picked.sort_unstable();
        cases = picked.into_iter().map(|i| cases[i].clone()).collect();
    }
    run_check(
        "Φ(f·g; x) = ±Φ((12); Φ(f; ..), Φ(g; ..)) for permutations f",
        format!(
            "|f| = 0, g with m ≤ 4, Σ bar length ≤ {}",
            params.max_bar_length.min(4)
        ),
        &cases,
        |(f, g, xs)| format!("f = {f}, g = {g}, x = {}", format_inputs(&a, xs)),
        |(f, g, xs)| {
            let (l, r) = product_splitting_sides(&a, f, g, xs).unwrap();
            (l != r).then(|| {
                format!(
                    "{} ≠ {}",
                    crate::bar::format_bar(&a, &l),
                    crate::bar::format_bar(&a, &r)
                )
            })
        },
    )
}

pub fn check_associative_restriction(params: &VerifyParams) -> Check {
    let a = test_algebra();
    let letters = test_entries(&a, false);
    let cases = bar_inputs(&letters, 3, params.max_bar_length.min(4));
    run_check(
        "Φ((12); Φ((12); x, y), z) = Φ((123); x, y, z) = Φ((12); x, Φ((12); y, z))",
        format!("Σ bar length ≤ {}", params.max_bar_length.min(4)),
        &cases,
        |xs| format_inputs(&a, xs),
        |xs| {
            let b: Vec<BarElement<FreeBasis, Z>> =
                xs.iter().map(|t| LinComb::basis(t.clone())).collect();
            let [l, m, r] = associative_triple(&a, &b[0], &b[1], &b[2]).unwrap();
            (l != m || m != r).then(|| "the three sides differ".to_string())
        },
    )
}

/// `Φ((121); Φ((12); x, y), z)` against `Φ((121) ∘_1 (12); x, y, z)`;
/// passes when they differ.
pub fn check_not_an_action() -> Check {
    let a = test_algebra();
    let x = a.generator("x").unwrap().keys().next().unwrap().clone();
    let cases = vec![vec![vec![x.clone()], vec![x.clone()], vec![x]]];
    run_check(
        "Φ is not an operad action",
        "Φ((121); Φ((12); [x], [x]), [x]) vs Φ((121) ∘_1 (12); [x], [x], [x])".into(),
        &cases,
        |xs| format_inputs(&a, xs),
        |xs| {
            let b: Vec<BarElement<FreeBasis, Z>> =
                xs.iter().map(|t| LinComb::basis(t.clone())).collect();
            let (it, comp) =
                iterated_versus_composed(&a, &el("(121)"), &el("(12)"), [&b[0], &b[1], &b[2]])
                    .unwrap();
            (it == comp).then(|| "the two sides agree".to_string())
        },
    )
}

pub fn phi_suite(params: &VerifyParams) -> VerificationReport {
    let start = Instant::now();
    let budget = params.samples * 10;
    let checks = vec![
        check_phi_chain_map(params, budget),
        check_phi_coinvariance(params, budget),
        check_composition_formula(6, params.max_bar_length.min(4)),
        check_product_splitting(params),
        check_associative_restriction(params),
        check_not_an_action(),
    ];
    report("phi", params, checks, BTreeMap::new(), start)
}

// -------------------------------------------------------------- diagonal

pub fn check_diagonal_fixtures() -> Check {
    let cases = vec![
        ("(1)", "(1)⊗(1)"),
        ("(12)", "(12)⊗(12)"),
        ("(121)", "(12)⊗(121)+(121)⊗(21)"),
    ];
    run_check(
        "fixtures",
        "Δ on (1), (12), (121)".into(),
        &cases,
        |(f, _)| format!("Δ{f}"),
        |(f, want)| {
            let got = diagonal(&el(f)).to_string();
            (got != *want).then(|| format!("computed {got}, expected {want}"))
        },
    )
}

pub fn check_diagonal_boundary(max_m: usize) -> Check {
    let cases = surjections(max_m, max_m);
    run_check(
        "dΔ = Δd",
        format!("m ≤ {max_m}"),
        &cases,
        |f| f.to_string(),
        |f| {
            let x = OperadElement::<Z>::basis(f.clone());
            let (l, r) = (diagonal(&x).boundary(), diagonal(&x.boundary()));
            (l != r).then(|| format!("dΔ = {l}, Δd = {r}"))
        },
    )
}

pub fn check_diagonal_equivariant(max_m: usize) -> Check {
    let cases: Vec<(Surjection, Vec<usize>)> = surjections(max_m, 3)
        .into_iter()
        .flat_map(|f| {
            all_permutations(f.arity())
                .into_iter()
                .map(move |s| (f.clone(), s))
        })
        .collect();
    run_check(
        "Δ(x ⋄ σ) = Δ(x) ⋄ σ",
        format!("m ≤ {max_m}, k ≤ 3"),
        &cases,
        |(f, s)| format!("{f} ⋄ {s:?}"),
        |(f, s)| {
            let x = OperadElement::<Z>::basis(f.clone());
            let (l, r) = (diagonal(&x.act(s).unwrap()), diagonal(&x).act(s).unwrap());
            (l != r).then(|| format!("{l} ≠ {r}"))
        },
    )
}

/// `Δγ(x; y) = γ(Δx; Δy)` on sampled `x` of arity 2 or 3 and inner elements.
pub fn check_diagonal_composition(params: &VerifyParams) -> Check {
    let mut rng = params.rng(6);
    let mut cases: Vec<(Surjection, Vec<Surjection>)> = Vec::new();
    for x in surjections(3, 2) {
        let ys = (0..x.arity())
            .map(|_| {
                let a = rng.random_range(1..=2);
                random_surjection(&mut rng, a, 3)
            })
            .collect();
        cases.push((x, ys));
    }
    for _ in 0..params.samples {
        let k = rng.random_range(2..=3);
        let x = random_surjection(&mut rng, k, 4);
        let ys = (0..k)
            .map(|_| {
                let a = rng.random_range(1..=2);
                random_surjection(&mut rng, a, 3)
            })
            .collect();
        cases.push((x, ys));
    }
    run_check(
        "Δγ(x; y) = γ(Δx; Δy)",
        format!("{} cases, outer m ≤ 4, inner m ≤ 3", cases.len()),
        &cases,
        |(x, ys)| {
            format!(
                "x = {x}, y = ({})",
                ys.iter()
                    .map(|y| y.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        },
        |(x, ys)| {
            let x = OperadElement::<Z>::basis(x.clone());
            let ys: Vec<OperadElement<Z>> =
                ys.iter().map(|y| OperadElement::basis(y.clone())).collect();
            let lhs = diagonal(&x.full_compose(&ys).unwrap());
            let dys: Vec<TensorOperadElement<Z>> = ys.iter().map(diagonal).collect();
            let rhs = diagonal(&x).full_compose(&dys).unwrap();
            (lhs != rhs).then(|| format!("Δγ = {lhs}, γΔ = {rhs}"))
        },
    )
}

/// Surjections of length at most `max_m` on which `Δ` is coassociative.
fn coassociativity_record(max_m: usize) -> String {
    let all = surjections(max_m, 3);
    let holds = all
        .par_iter()
        .filter(|f| {
            let (l, r) = iterated_diagonals(&OperadElement::<Z>::basis((*f).clone()));
            l == r
        })
        .count();
    format!(
        "(Δ⊗1)Δ = (1⊗Δ)Δ on {holds} of {} surjections with m ≤ {max_m}, k ≤ 3",
        all.len()
    )
}

pub fn diagonal_suite(params: &VerifyParams) -> VerificationReport {
    let start = Instant::now();
    let checks = vec![
        check_diagonal_fixtures(),
        check_diagonal_boundary(params.max_entries),
        check_diagonal_equivariant(params.max_entries.min(6)),
        check_diagonal_composition(params),
    ];
    let mut obs = BTreeMap::new();
    obs.insert(
        "coassociativity".to_string(),
        coassociativity_record(params.max_entries.min(5)),
    );
    report("diagonal", params, checks, obs, start)
}

// -------------------------------------------------------------- steenrod

pub fn check_phi_resolution(primes: &[usize], max_degree: usize) -> Check {
    let cases: Vec<(usize, usize)> = primes
        .iter()
        .flat_map(|&p| (0..=max_degree).map(move |i| (p, i)))
        .collect();
    let tables: Vec<(usize, PhiTable<Z>)> = primes
        .iter()
        .map(|&p| {
            let mut t = PhiTable::new(p);
            t.extend_to(max_degree);
            (p, t)
        })
        .collect();
    run_check(
        "φ : W → E(p) is an equivariant chain map",
        format!("p ∈ {primes:?}, degrees ≤ {max_degree}"),
        &cases,
        |(p, i)| format!("p = {p}, e_{i}"),
        |(p, i)| {
            let t = &tables.iter().find(|(q, _)| q == p).unwrap().1;
            if *i == 0 && *t.cell(0) != OperadElement::identity(*p) {
                return Some(format!("φ(e_0) = {}", t.cell(0)));
            }
            if !t.is_equivariant(*i) {
                return Some("not equivariant".into());
            }
            t.chain_map_defects(*i)
                .iter()
                .enumerate()
                .find(|(_, d)| !d.is_zero())
                .map(|(j, d)| format!("dφ(t^{j} e_{i}) - φ(d t^{j} e_{i}) = {d}"))
        },
    )
}

/// Dimensions, vanishing, top squares and representative independence on
/// `H^*(B N̄^*(S^2); F_2)` at the given cutoff.
pub fn check_sphere_squares(cutoff: i32, max_degree: i32) -> Vec<Check> {
    let s2 = SimplicialSet::sphere(2);
    let dims = loop_cohomology::<F2>(&s2, max_degree).map_err(|e| e.to_string());
    let degrees: Vec<i32> = (1..=max_degree).collect();
    let dim_check = run_check(
        "dim H^n(B N̄^*(S^2); F_2) = 1",
        format!("1 ≤ n ≤ {max_degree}"),
        &degrees,
        |n| format!("n = {n}"),
        |n| match &dims {
            Err(e) => Some(e.clone()),
            Ok(d) => (d[*n as usize] != 1).then(|| format!("dimension {}", d[*n as usize])),
        },
    );
    let cochains = CochainAlgebra::reduced(&s2);
    let bar = BarConstruction(&cochains);
    let st = Steenrod::<F2, _>::new(&bar, cutoff).expect("p = 2");
    let mut q = 1;
    let mut classes = Vec::new();
    while 2 * q < cutoff {
        if let Ok(h) = st.cohomology(q) {
            for c in 0..h.dim() {
                classes.push((q, c));
            }
        }
        q += 1;
    }
    let rep = |q: i32, c: usize| {
        let h = st.cohomology(q).unwrap();
        let mut coords = vec![F2::new(0); h.dim()];
        coords[c] = F2::new(1);
        h.representative(&coords)
    };
    let vanish = run_check(
        "Sq^s c = 0 for s > |c|",
        format!("basis classes with 2|c| + 1 ≤ {cutoff}, |c| < s ≤ 2|c|"),
        &classes,
        |(q, c)| format!("class {c} in degree {q}"),
        |(q, c)| {
            let x = rep(*q, *c);
            (*q as i64 + 1..=2 * *q as i64).find_map(|s| {
                let y = st.apply_cochain(Operation::Sq(s), *q, &x).unwrap();
                (!y.is_zero()).then(|| format!("Sq^{s} = {}", bar.format(&y)))
            })
        },
    );
    let top = run_check(
        "Sq^|c| c = c ∪ c",
        format!("basis classes with 2|c| + 1 ≤ {cutoff}"),
        &classes,
        |(q, c)| format!("class {c} in degree {q}"),
        |(q, c)| {
            let x = rep(*q, *c);
            let sq = st.apply_cochain(Operation::Sq(*q as i64), *q, &x).unwrap();
            let cup = bar
                .structure(&OperadElement::identity(2), &[x.clone(), x.clone()])
                .unwrap();
            (sq != cup).then(|| format!("Sq = {}, cup = {}", bar.format(&sq), bar.format(&cup)))
        },
    );
    let ops: Vec<(i32, usize, Operation)> = classes
        .iter()
        .flat_map(|&(q, c)| st.operations(q).into_iter().map(move |o| (q, c, o)))
        .collect();
    let independence = run_check(
        "operations do not depend on the representative",
        "every basis class, representative moved by every basis coboundary".into(),
        &ops,
        |(q, c, o)| format!("{o} on class {c} in degree {q}"),
        |(q, c, o)| {
            let x = rep(*q, *c);
            let want = st.apply(*o, *q, &{
                let mut v = vec![F2::new(0); st.cohomology(*q).unwrap().dim()];
                v[*c] = F2::new(1);
                v
            });
            let below = if *q >= 1 {
                StructuredComplex::<F2>::basis(&bar, q - 1).unwrap()
            } else {
                Vec::new()
            };
            let target = st.cohomology(st.target_degree(*o, *q)).unwrap();
            for b in below {
                let mut moved = x.clone();
                moved.add_assign(&bar.differential(&b));
                let got = target.coordinates(&st.apply_cochain(*o, *q, &moved).unwrap());
                if got != want {
                    return Some(format!("{got:?} ≠ {want:?} after adding d{b:?}"));
                }
            }
            None
        },
    );
    vec![dim_check, vanish, top, independence]
}

/// `Sq^1` on the generator of `H^1(RP^2; F_2)` through the cochain action.
pub fn check_projective_plane() -> Check {
    let rp2 = SimplicialSet::projective_plane();
    let cochains = CochainAlgebra::new(&rp2);
    let complex = AlgebraComplex(&cochains);
    let st = Steenrod::<F2, _>::new(&complex, 3).expect("p = 2");
    run_check(
        "Sq^1 ≠ 0 on H^1(RP^2; F_2)",
        "the generator".into(),
        &[()],
        |_| "x".into(),
        |_| match st.apply(Operation::Sq(1), 1, &[F2::new(1)]) {
            Ok(v) if v.iter().any(|c| c.value() != 0) => None,
            Ok(_) => Some("Sq^1 x = 0".into()),
            Err(e) => Some(e.to_string()),
        },
    )
}

/// `d((121)(z, z)) = (12)(z, z) + (21)(z, z)` mod 2 on sampled cocycles of a
/// product of spheres and of `RP^2`.
pub fn check_cup_one(params: &VerifyParams) -> Check {
    let spaces = [
        SimplicialSet::projective_plane(),
        SimplicialSet::product(&SimplicialSet::sphere(1), &SimplicialSet::sphere(1)),
        SimplicialSet::standard_simplex(3),
    ];
    let mut rng = params.rng(7);
    let mut cases = Vec::new();
    for (i, x) in spaces.iter().enumerate() {
        let alg = CochainAlgebra::new(x);
        for n in 0..=2usize {
            let basis: Vec<usize> = x.simplices(n).to_vec();
            // Cocycles with F_2 coefficients, by brute force over subsets.
            let mut found = Vec::new();
            if basis.len() <= 12 {
                for mask in 1u32..(1 << basis.len()) {
                    let z: LinComb<usize, F2> = basis
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .map(|(_, &b)| (b, F2::new(1)))
                        .collect();
                    if crate::algebra::differential(&alg, &z).is_zero() {
                        found.push(z);
                    }
                }
            }
            for z in found.choose_multiple(&mut rng, 4) {
                cases.push((i, n, z.clone()));
            }
        }
    }
    run_check(
        "d((121)(z, z)) = (12)(z, z) + (21)(z, z) mod 2",
        "cocycles of degree ≤ 2 on RP^2, S^1 × S^1 and Δ^3".into(),
        &cases,
        |(i, n, z)| format!("space {i}, degree {n}, z = {z:?}"),
        |(i, _, z)| {
            let alg = CochainAlgebra::new(&spaces[*i]);
            let act = |f: &str| {
                act_element(
                    &alg,
                    &el(f).map_coeffs(F2::from_i64),
                    &[z.clone(), z.clone()],
                )
            };
            let lhs = crate::algebra::differential(&alg, &act("(121)"));
            let mut rhs = act("(12)");
            rhs.add_assign(&act("(21)"));
            (lhs != rhs).then(|| format!("{lhs:?} ≠ {rhs:?}"))
        },
    )
}

pub fn steenrod_suite(params: &VerifyParams) -> VerificationReport {
    let start = Instant::now();
    let mut checks = vec![check_phi_resolution(&[2, 3], 6)];
    checks.extend(check_sphere_squares(5, 4));
    checks.push(check_projective_plane());
    checks.push(check_cup_one(params));
    let mut obs = BTreeMap::new();
    let s2 = SimplicialSet::sphere(2);
    let cochains = CochainAlgebra::reduced(&s2);
    let bar = BarConstruction(&cochains);
    if let Ok(st) = Steenrod::<F2, _>::new(&bar, 5) {
        for q in 1..=2 {
            if let Ok(v) = st.apply(Operation::Sq(0), q, &[F2::new(1)]) {
                obs.insert(format!("Sq^0 on H^{q}(ΩS^2)"), format!("{v:?}"));
            }
        }
    }
    obs.insert(
        "H^0(B N̄^*(S^2))".into(),
        "0: the bar complex starts in length 1".into(),
    );
    report("steenrod", params, checks, obs, start)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Operad,
    Coefficients,
    Phi,
    Diagonal,
    Steenrod,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Operad,
        Suite::Coefficients,
        Suite::Phi,
        Suite::Diagonal,
        Suite::Steenrod,
    ];

    pub fn run(self, params: &VerifyParams) -> VerificationReport {
        match self {
            Suite::Operad => operad_suite(params),
            Suite::Coefficients => coefficients_suite(params),
            Suite::Phi => phi_suite(params),
            Suite::Diagonal => diagonal_suite(params),
            Suite::Steenrod => steenrod_suite(params),
        }
    }
}
