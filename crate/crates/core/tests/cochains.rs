use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use seqop::algebra::{act_element, differential, format_element, EAlgebra};
use seqop::cochains::CochainAlgebra;
use seqop::linalg::{cohomology_at, to_vector};
use seqop::simplicial::SimplicialSet;
use seqop::{Coeff, LinComb, OperadElement, Surjection, F2, Z};

fn dual<R: Coeff>(x: &SimplicialSet, name: &str) -> LinComb<usize, R> {
    LinComb::basis(x.find(name).unwrap())
}

/// `(12)(x, y) = (-1)^{|x||y|} x ⌣ y` with the Alexander-Whitney cup.
#[test]
fn cup_product_is_alexander_whitney() {
    let x = SimplicialSet::standard_simplex(2);
    let a = CochainAlgebra::new(&x);
    let cup = |p: &str, q: &str| {
        let r = act_element::<Z, _>(&a, &OperadElement::identity(2), &[dual(&x, p), dual(&x, q)]);
        format_element(&a, &r)
    };
    assert_eq!(cup("01", "12"), "-012");
    assert_eq!(cup("12", "01"), "0");
    assert_eq!(cup("0", "01"), "01");
    assert_eq!(cup("01", "1"), "01");
    assert_eq!(cup("1", "01"), "0");
    assert_eq!(cup("0", "012"), "012");
}

#[test]
fn coboundary_squares_to_zero() {
    let spaces = [
        SimplicialSet::standard_simplex(3),
        SimplicialSet::projective_plane(),
        SimplicialSet::sphere(2),
        SimplicialSet::product(
            &SimplicialSet::sphere(2),
            &SimplicialSet::standard_simplex(1),
        ),
    ];
    for x in &spaces {
        let a = CochainAlgebra::new(x);
        for id in 0..x.len() {
            let d = <CochainAlgebra as EAlgebra<Z>>::differential(&a, &id);
            assert!(differential(&a, &d).is_zero());
        }
    }
}

fn random_cochain(rng: &mut StdRng, a: &CochainAlgebra, deg: usize) -> LinComb<usize, Z> {
    <CochainAlgebra as EAlgebra<Z>>::basis_in_degree(a, deg as i32)
        .unwrap()
        .into_iter()
        .map(|s| (s, rng.random_range(-2..=2)))
        .collect()
}

fn surjections(max_m: usize, max_k: usize) -> Vec<Surjection> {
    (1..=max_m)
        .flat_map(|m| (1..=max_k.min(m)).flat_map(move |k| Surjection::all(k, m)))
        .collect()
}

#[test]
fn action_is_a_chain_map() {
    let x = SimplicialSet::standard_simplex(4);
    let a = CochainAlgebra::new(&x);
    let mut rng = StdRng::seed_from_u64(7);
    for f in surjections(5, 3) {
        for _ in 0..3 {
            let degs: Vec<usize> = (0..f.arity()).map(|_| rng.random_range(0..=2)).collect();
            let total: usize = degs.iter().sum();
            if total < f.degree() || total - f.degree() > 3 {
                continue;
            }
            let zs: Vec<_> = degs
                .iter()
                .map(|&d| random_cochain(&mut rng, &a, d))
                .collect();
            let g = OperadElement::<Z>::basis(f.clone());
            let lhs = differential(&a, &act_element(&a, &g, &zs));
            let mut rhs = act_element(&a, &g.boundary(), &zs);
            let mut pre = f.degree();
            for i in 0..zs.len() {
                let mut args = zs.clone();
                args[i] = differential(&a, &zs[i]);
                rhs.add_scaled(&act_element(&a, &g, &args), Z::sign(pre));
                pre += degs[i];
            }
            assert_eq!(lhs, rhs, "{f} {degs:?}");
        }
    }
}

#[test]
fn action_respects_composition() {
    let x = SimplicialSet::standard_simplex(4);
    let a = CochainAlgebra::new(&x);
    let mut rng = StdRng::seed_from_u64(11);
    let small = surjections(4, 2);
    for f in &small {
        for g in &small {
            for i in 1..=f.arity() {
                let k = f.arity() + g.arity() - 1;
                let degs: Vec<usize> = (0..k).map(|_| rng.random_range(0..=2)).collect();
                let inner_deg =
                    degs[i - 1..i - 1 + g.arity()].iter().sum::<usize>() as i64 - g.degree() as i64;
                let total =
                    degs.iter().sum::<usize>() as i64 - f.degree() as i64 - g.degree() as i64;
                if inner_deg < 0 || !(0..=4).contains(&total) {
                    continue;
                }
                let zs: Vec<_> = degs
                    .iter()
                    .map(|&d| random_cochain(&mut rng, &a, d))
                    .collect();
                let fe = OperadElement::<Z>::basis(f.clone());
                let ge = OperadElement::<Z>::basis(g.clone());
                let lhs = act_element(&a, &fe.compose(i, &ge).unwrap(), &zs);
                let inner = act_element(&a, &ge, &zs[i - 1..i - 1 + g.arity()]);
                let mut args = zs[..i - 1].to_vec();
                args.push(inner);
                args.extend_from_slice(&zs[i - 1 + g.arity()..]);
                let sign = Z::sign(g.degree() * degs[..i - 1].iter().sum::<usize>());
                let rhs = act_element(&a, &fe, &args).scaled(sign);
                assert_eq!(lhs, rhs, "{f} o_{i} {g} {degs:?}");
            }
        }
    }
}

#[test]
fn action_is_equivariant() {
    let x = SimplicialSet::standard_simplex(4);
    let a = CochainAlgebra::new(&x);
    let mut rng = StdRng::seed_from_u64(3);
    for f in surjections(5, 3).into_iter().filter(|f| f.arity() == 3) {
        for sigma in [[2, 1, 3], [3, 1, 2], [1, 3, 2]] {
            let degs: Vec<usize> = (0..3).map(|_| rng.random_range(0..=2)).collect();
            let total: usize = degs.iter().sum();
            if total < f.degree() || total - f.degree() > 4 {
                continue;
            }
            let zs: Vec<_> = degs
                .iter()
                .map(|&d| random_cochain(&mut rng, &a, d))
                .collect();
            let g = OperadElement::<Z>::basis(f.clone());
            let lhs = act_element(&a, &g.act(&sigma).unwrap(), &zs);
            let mut inv = [0; 3];
            for (v, &s) in sigma.iter().enumerate() {
                inv[s - 1] = v;
            }
            let mut eps = 0;
            for p in 0..3 {
                for q in p + 1..3 {
                    if inv[p] > inv[q] {
                        eps += degs[inv[p]] * degs[inv[q]];
                    }
                }
            }
            let moved: Vec<_> = inv.iter().map(|&o| zs[o].clone()).collect();
            let rhs = act_element(&a, &g, &moved).scaled(Z::sign(eps));
            assert_eq!(lhs, rhs, "{f} {sigma:?}");
        }
    }
}

#[test]
fn cup_one_bounds_the_commutator() {
    let x = SimplicialSet::standard_simplex(4);
    let a = CochainAlgebra::new(&x);
    let mut rng = StdRng::seed_from_u64(5);
    for deg in 0..=2 {
        let (basis, h) = cohomology_at::<F2, usize>(
            |d| Ok(<CochainAlgebra as EAlgebra<F2>>::basis_in_degree(&a, d).unwrap()),
            |b| a.differential(b),
            deg,
        )
        .unwrap();
        let _ = h;
        for _ in 0..4 {
            let y: LinComb<usize, F2> =
                <CochainAlgebra as EAlgebra<F2>>::basis_in_degree(&a, deg - 1)
                    .unwrap()
                    .into_iter()
                    .map(|s| (s, F2::new(rng.random_range(0..2))))
                    .collect();
            let z = differential(&a, &y);
            assert!(to_vector(&basis, &z).is_ok());
            let e = |s: &str| {
                act_element(
                    &a,
                    &s.parse::<OperadElement<F2>>().unwrap(),
                    &[z.clone(), z.clone()],
                )
            };
            let mut rhs = e("(12)");
            rhs.add_assign(&e("(21)"));
            assert_eq!(differential(&a, &e("(121)")), rhs);
        }
    }
}

#[test]
fn square_on_projective_plane() {
    let x = SimplicialSet::projective_plane();
    let a = CochainAlgebra::reduced(&x);
    let basis = |d: i32| Ok(<CochainAlgebra as EAlgebra<F2>>::basis_in_degree(&a, d).unwrap());
    let (b1, h1) = cohomology_at::<F2, usize>(basis, |b| a.differential(b), 1).unwrap();
    assert_eq!(h1.dim(), 1);
    let (b2, h2) = cohomology_at::<F2, usize>(basis, |b| a.differential(b), 2).unwrap();
    assert_eq!(h2.dim(), 1);
    let z: LinComb<usize, F2> = b1
        .iter()
        .copied()
        .zip(h1.representatives()[0].iter().copied())
        .collect();
    let sq1 = act_element(&a, &OperadElement::identity(2), &[z.clone(), z.clone()]);
    let v = to_vector(&b2, &sq1).unwrap();
    assert!(!h2.is_boundary(&v).unwrap());
}

#[test]
fn text_format_round_trips() {
    let x = SimplicialSet::projective_plane();
    let text = serde_json::to_string(&x.to_file()).unwrap();
    let y = SimplicialSet::from_json(&text).unwrap();
    assert_eq!(serde_json::to_string(&y.to_file()).unwrap(), text);
    let bad = r#"{"dimensions":[["a","b"],["e"],["t"]],"faces":{"e":["b","a"],"t":["e","e","e"]}}"#;
    assert!(SimplicialSet::from_json(bad).is_err());
    let short = r#"{"dimensions":[["v"],["e"]],"faces":{"e":["v"]}}"#;
    assert!(SimplicialSet::from_json(short).is_err());
}
