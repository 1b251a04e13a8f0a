use seqop::bar::{format_bar, parse_bar, BarElement};
use seqop::free_algebra::{FreeAlgebra, FreeBasis};
use seqop::phi::{
    associative_triple, chain_map_defect, coinvariance_defect, composition_formula_sides,
    iterated_versus_composed, phi, product_splitting_sides,
};
use seqop::{Coeff, OperadElement, Surjection, F2, Z};

fn algebra<R: Coeff>() -> FreeAlgebra<R> {
    let mut a = FreeAlgebra::new();
    for n in ["x", "y", "y1", "y2", "z"] {
        a.add_generator_str(n, 2, "").unwrap();
    }
    a
}

fn bar<R: Coeff>(a: &FreeAlgebra<R>, s: &str) -> BarElement<FreeBasis, R> {
    parse_bar(s, |e| a.parse_element(e)).unwrap()
}

fn eval<R: Coeff>(a: &FreeAlgebra<R>, g: &str, xs: &[&str]) -> String {
    let g: OperadElement<R> = g.parse().unwrap();
    let xs: Vec<_> = xs.iter().map(|s| bar(a, s)).collect();
    format_bar(a, &phi(a, &g, &xs).unwrap())
}

#[test]
fn product_of_two_letters() {
    let a = algebra::<F2>();
    assert_eq!(
        eval(&a, "(12)", &["[x]", "[y]"]),
        "[x|y]+[y|x]+[(121)(x,y)]"
    );
}

#[test]
fn letter_times_word() {
    let a = algebra::<F2>();
    let got = phi(
        &a,
        &"(12)".parse().unwrap(),
        &[bar(&a, "[x]"), bar(&a, "[y1|y2]")],
    )
    .unwrap();
    let want = bar(
        &a,
        "[x|y1|y2]+[y1|x|y2]+[y1|y2|x]+[(121)(x,y1)|y2]+[y1|(121)(x,y2)]+[(12131)(x,y1,y2)]",
    );
    assert_eq!(got, want);
}

#[test]
fn unit_is_identity() {
    let a = algebra::<Z>();
    let x = bar(&a, "[x|y|z]");
    assert_eq!(
        phi(&a, &OperadElement::unit(), std::slice::from_ref(&x)).unwrap(),
        x
    );
}

#[test]
fn rejects_bad_arguments() {
    let a = algebra::<Z>();
    let g: OperadElement<Z> = "(12)".parse().unwrap();
    assert!(phi(&a, &g, &[bar(&a, "[x]")]).is_err());
    assert!(parse_bar::<Z, FreeBasis>("[]", |e| a.parse_element(e)).is_err());
}

fn differential_algebra() -> FreeAlgebra<Z> {
    let mut a = FreeAlgebra::new();
    a.add_generator_str("x", 2, "").unwrap();
    a.add_generator_str("y", 3, "").unwrap();
    a.add_generator_str("u", 2, "y").unwrap();
    a
}

#[test]
fn chain_map_on_small_cases() {
    let a = differential_algebra();
    let x = a.generator("x").unwrap().keys().next().unwrap().clone();
    let u = a.generator("u").unwrap().keys().next().unwrap().clone();
    let y = a.generator("y").unwrap().keys().next().unwrap().clone();
    for g in ["(12)", "(121)", "(1212)", "(21)"] {
        let g: OperadElement<Z> = g.parse().unwrap();
        for xs in [
            vec![vec![u.clone()], vec![x.clone()]],
            vec![vec![x.clone(), u.clone()], vec![y.clone()]],
            vec![vec![u.clone()], vec![u.clone(), x.clone()]],
        ] {
            assert!(
                chain_map_defect(&a, &g, &xs).unwrap().is_zero(),
                "{g} {xs:?}"
            );
        }
    }
    let g: OperadElement<Z> = "(1213)".parse().unwrap();
    let xs = vec![vec![u.clone()], vec![x.clone()], vec![y.clone()]];
    assert!(chain_map_defect(&a, &g, &xs).unwrap().is_zero());
}

#[test]
fn coinvariance_on_small_cases() {
    let a = differential_algebra();
    let x = a.generator("x").unwrap().keys().next().unwrap().clone();
    let y = a.generator("y").unwrap().keys().next().unwrap().clone();
    let g: OperadElement<Z> = "(1213)".parse().unwrap();
    let xs = vec![vec![y.clone()], vec![x.clone(), y.clone()], vec![y.clone()]];
    for sigma in [[2, 1, 3], [3, 1, 2], [1, 3, 2]] {
        assert!(coinvariance_defect(&a, &g, &sigma, &xs).unwrap().is_zero());
    }
}

#[test]
fn composition_formula_small() {
    for (f, g, ps, qs) in [
        ("(12)", "(121)", vec![1, 1], vec![1, 2]),
        ("(1)", "(12)", vec![2], vec![1, 2]),
    ] {
        let f: Surjection = f.parse().unwrap();
        let g: Surjection = g.parse().unwrap();
        let (l, r) = composition_formula_sides::<Z>(&f, &g, &ps, &qs);
        assert_eq!(l, r, "{f} {g} {ps:?} {qs:?}");
    }
}

#[test]
fn product_splitting_and_associativity() {
    let a = differential_algebra();
    let x = a.generator("x").unwrap().keys().next().unwrap().clone();
    let y = a.generator("y").unwrap().keys().next().unwrap().clone();
    let f: Surjection = "(21)".parse().unwrap();
    let g: Surjection = "(121)".parse().unwrap();
    let (l, r) = product_splitting_sides(
        &a,
        &f,
        &g,
        &[
            vec![y.clone()],
            vec![x.clone()],
            vec![x.clone(), y.clone()],
            vec![y.clone()],
        ],
    )
    .unwrap();
    assert_eq!(l, r);
    let b = |s: &str| bar(&a, s);
    let [p, q, s] = associative_triple(&a, &b("[x]"), &b("[y|x]"), &b("[y]")).unwrap();
    assert_eq!(p, q);
    assert_eq!(q, s);
}

#[test]
fn not_an_operad_action() {
    let a = algebra::<Z>();
    let b = |s: &str| bar(&a, s);
    let (x, y, z) = (b("[x]"), b("[y]"), b("[z]"));
    let (it, comp) = iterated_versus_composed(
        &a,
        &"(121)".parse().unwrap(),
        &"(12)".parse().unwrap(),
        [&x, &y, &z],
    )
    .unwrap();
    assert_ne!(it, comp);
}
