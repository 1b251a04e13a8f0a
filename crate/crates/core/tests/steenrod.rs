use seqop::cochains::CochainAlgebra;
use seqop::simplicial::SimplicialSet;
use seqop::steenrod::{
    loop_cohomology, AlgebraComplex, BarConstruction, Operation, PhiTable, Steenrod,
    StructuredComplex,
};
use seqop::{Error, OperadElement, Surjection, F2, F3, Z};

#[test]
fn phi_table_is_an_equivariant_chain_map() {
    for p in [2, 3] {
        let mut t = PhiTable::<Z>::new(p);
        t.extend_to(6);
        for i in 0..=6 {
            assert!(
                t.chain_map_defects(i).iter().all(OperadElement::is_zero),
                "p = {p}, i = {i}"
            );
            assert!(t.is_equivariant(i));
            assert_eq!(
                t.cell(i).degree(),
                if t.cell(i).is_zero() { None } else { Some(i) }
            );
            assert!(!t.cell(i).is_zero());
        }
    }
}

#[test]
fn first_cell_at_two() {
    let mut t = PhiTable::<Z>::new(2);
    t.extend_to(1);
    let e = t.cell(1);
    assert_eq!(e.len(), 1);
    let f: Surjection = "(121)".parse().unwrap();
    assert_eq!(e.coefficient(&f).abs(), 1);
}

#[test]
fn loop_space_of_the_two_sphere() {
    let s2 = SimplicialSet::sphere(2);
    let dims = loop_cohomology::<F2>(&s2, 4).unwrap();
    assert_eq!(dims, vec![0, 1, 1, 1, 1]);
    let dims = loop_cohomology::<F3>(&s2, 3).unwrap();
    assert_eq!(dims, vec![0, 1, 1, 1]);
}

#[test]
fn loop_space_needs_a_simply_connected_model() {
    let rp2 = SimplicialSet::projective_plane();
    assert!(matches!(
        loop_cohomology::<F2>(&rp2, 2),
        Err(Error::UnsupportedSpace(_))
    ));
    let d2 = SimplicialSet::standard_simplex(2);
    assert!(matches!(
        loop_cohomology::<F2>(&d2, 2),
        Err(Error::UnsupportedSpace(_))
    ));
}

#[test]
fn squares_on_the_loop_space_of_the_two_sphere() {
    let s2 = SimplicialSet::sphere(2);
    let cochains = CochainAlgebra::reduced(&s2);
    let bar = BarConstruction(&cochains);
    let st = Steenrod::<F2, _>::new(&bar, 5).unwrap();
    for q in 1..=2 {
        let h = st.cohomology(q).unwrap();
        assert_eq!(h.dim(), 1);
        let c = h.representative(&[F2::new(1)]);
        for s in q as i64 + 1..=q as i64 + 2 {
            assert!(st.apply_cochain(Operation::Sq(s), q, &c).unwrap().is_zero());
        }
        let top = st.apply_cochain(Operation::Sq(q as i64), q, &c).unwrap();
        let cup = bar
            .structure(&OperadElement::identity(2), &[c.clone(), c.clone()])
            .unwrap();
        assert_eq!(top, cup);
        for op in st.operations(q) {
            let out = st.apply(op, q, &[F2::new(1)]).unwrap();
            let again = {
                // a cohomologous representative gives the same class
                let below = st
                    .cohomology(q - 1)
                    .map(|g| g.basis.clone())
                    .unwrap_or_default();
                let mut shifted = c.clone();
                for b in &below {
                    shifted.add_assign(&bar.differential(b));
                }
                let image = st.apply_cochain(op, q, &shifted).unwrap();
                st.cohomology(st.target_degree(op, q))
                    .unwrap()
                    .coordinates(&image)
                    .unwrap()
            };
            assert_eq!(out, again, "{op} on degree {q}");
        }
    }
    assert!(matches!(
        st.apply(Operation::Sq(0), 3, &[F2::new(1)]),
        Err(Error::BeyondTruncation { .. })
    ));
    assert!(!st.table().unwrap().is_empty());
}

#[test]
fn square_one_on_the_projective_plane() {
    let rp2 = SimplicialSet::projective_plane();
    let cochains = CochainAlgebra::new(&rp2);
    let complex = AlgebraComplex(&cochains);
    let st = Steenrod::<F2, _>::new(&complex, 3).unwrap();
    assert_eq!(st.cohomology(1).unwrap().dim(), 1);
    assert_eq!(
        st.apply(Operation::Sq(1), 1, &[F2::new(1)]).unwrap(),
        vec![F2::new(1)]
    );
    assert_eq!(
        st.apply(Operation::Sq(0), 1, &[F2::new(1)]).unwrap(),
        vec![F2::new(1)]
    );
}

#[test]
fn odd_primes_on_the_loop_space_of_the_two_sphere() {
    let s2 = SimplicialSet::sphere(2);
    let cochains = CochainAlgebra::reduced(&s2);
    let bar = BarConstruction(&cochains);
    let st = Steenrod::<F3, _>::new(&bar, 4).unwrap();
    let table = st.table().unwrap();
    assert_eq!(table.len(), 2);
    assert!(matches!(
        st.apply(Operation::Sq(1), 1, &[F3::new(1)]),
        Err(Error::UnsupportedPrime(3))
    ));
}
