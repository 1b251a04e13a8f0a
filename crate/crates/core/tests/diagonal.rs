use seqop::algebra::{act_element, differential, EAlgebra};
use seqop::diagonal::{
    diagonal, iterated_diagonals, GroundAlgebra, TensorAlgebra, TensorOperadElement,
};
use seqop::free_algebra::{FreeAlgebra, FreeBasis};
use seqop::{LinComb, OperadElement, Surjection, Z};

fn el(s: &str) -> OperadElement<Z> {
    s.parse().unwrap()
}

#[test]
fn small_diagonals() {
    assert_eq!(diagonal(&el("(1)")).to_string(), "(1)⊗(1)");
    assert_eq!(diagonal(&el("(12)")).to_string(), "(12)⊗(12)");
    assert_eq!(diagonal(&el("(121)")).to_string(), "(12)⊗(121)+(121)⊗(21)");
}

#[test]
fn commutes_with_boundary() {
    for m in 1..=6 {
        for k in 1..=m.min(4) {
            for f in Surjection::all(k, m) {
                let x = OperadElement::<Z>::basis(f.clone());
                assert_eq!(diagonal(&x).boundary(), diagonal(&x.boundary()), "{f}");
            }
        }
    }
}

#[test]
fn equivariant() {
    for f in Surjection::all(3, 5) {
        for sigma in [[2, 1, 3], [3, 1, 2], [2, 3, 1]] {
            let x = OperadElement::<Z>::basis(f.clone());
            assert_eq!(
                diagonal(&x.act(&sigma).unwrap()),
                diagonal(&x).act(&sigma).unwrap()
            );
        }
    }
}

#[test]
fn composition_with_degree_zero_outer() {
    let outer = ["(12)", "(21)", "(123)", "(132)"];
    let inner = ["(1)", "(12)", "(121)", "(1212)", "(212)"];
    for o in outer {
        let x = el(o);
        let k = x.arity();
        for ys in itertools_product(&inner, k) {
            let ys: Vec<OperadElement<Z>> = ys.iter().map(|s| el(s)).collect();
            let lhs = diagonal(&x.full_compose(&ys).unwrap());
            let dys: Vec<TensorOperadElement<Z>> = ys.iter().map(diagonal).collect();
            let rhs = diagonal(&x).full_compose(&dys).unwrap();
            assert_eq!(lhs, rhs, "{o} {ys:?}");
        }
    }
}

fn itertools_product<'a>(items: &[&'a str], k: usize) -> Vec<Vec<&'a str>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| items.iter().map(move |s| [v.clone(), vec![*s]].concat()))
            .collect();
    }
    out
}

#[test]
fn composition_fails_for_cup_one_outer() {
    let x = el("(121)");
    let ys = [el("(12)"), el("(1)")];
    let lhs = diagonal(&x.full_compose(&ys).unwrap());
    let rhs = diagonal(&x)
        .full_compose(&ys.iter().map(diagonal).collect::<Vec<_>>())
        .unwrap();
    assert_ne!(lhs, rhs);
}

#[test]
fn coassociativity_is_only_recorded() {
    let (l, r) = iterated_diagonals(&el("(12)"));
    assert_eq!(l, r);
    let _ = iterated_diagonals(&el("(1213)"));
}

fn algebra() -> FreeAlgebra<Z> {
    let mut a = FreeAlgebra::new();
    a.add_generator_str("x", 2, "").unwrap();
    a.add_generator_str("y", 3, "").unwrap();
    a.add_generator_str("u", 2, "y").unwrap();
    a
}

fn basis(a: &FreeAlgebra<Z>, n: &str) -> FreeBasis {
    a.generator(n).unwrap().keys().next().unwrap().clone()
}

#[test]
fn tensor_product_is_an_algebra() {
    let a = algebra();
    let t = TensorAlgebra {
        left: &a,
        right: &a,
    };
    let gens = [
        (basis(&a, "u"), basis(&a, "x")),
        (basis(&a, "x"), basis(&a, "u")),
        (basis(&a, "y"), basis(&a, "u")),
    ];
    for f in ["(12)", "(121)", "(1212)", "(212)"] {
        let g = el(f);
        for p in &gens {
            for q in &gens {
                let args = [LinComb::basis(p.clone()), LinComb::basis(q.clone())];
                let lhs = differential(&t, &act_element(&t, &g, &args));
                let mut rhs = act_element(&t, &g.boundary(), &args);
                let mut pre = g.degree().unwrap() as i32;
                for i in 0..2 {
                    let mut a2 = args.clone();
                    a2[i] = differential(&t, &args[i]);
                    rhs.add_scaled(
                        &act_element(&t, &g, &a2),
                        Z::from(if pre % 2 == 0 { 1 } else { -1 }),
                    );
                    pre += t.degree(if i == 0 { p } else { q });
                }
                assert_eq!(lhs, rhs, "{f}");
            }
        }
    }
}

#[test]
fn ground_ring_is_a_unit() {
    let a = algebra();
    let t = TensorAlgebra {
        left: &a,
        right: &GroundAlgebra,
    };
    let args = [(basis(&a, "x"), ()), (basis(&a, "y"), ())];
    for f in ["(12)", "(121)", "(21)", "(12121)"] {
        let f: Surjection = f.parse().unwrap();
        let got: LinComb<FreeBasis, Z> = t
            .act(&f, &args)
            .iter()
            .map(|((b, ()), c)| (b.clone(), *c))
            .collect();
        assert_eq!(got, a.act(&f, &[basis(&a, "x"), basis(&a, "y")]), "{f}");
    }
}
