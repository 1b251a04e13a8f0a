use seqop::verify::*;
use seqop::{OperadElement, Surjection, F2};

fn elem(s: &str) -> OperadElement<i64> {
    s.parse().unwrap()
}

#[test]
fn boundary_of_small_surjections() {
    let d = elem("(121)").boundary();
    assert_eq!(d.len(), 2);
    assert_eq!(
        d.coefficient(&Surjection::new(vec![1, 2]).unwrap()).abs(),
        1
    );
    assert_eq!(
        d.coefficient(&Surjection::new(vec![2, 1]).unwrap()).abs(),
        1
    );
    let d = elem("(1212)").boundary();
    assert_eq!(d.arity(), 2);
    assert!(d.boundary().is_zero());
    let d2: OperadElement<F2> = "(121)".parse::<OperadElement<F2>>().unwrap().boundary();
    assert_eq!(d2, "(12)+(21)".parse().unwrap());
}

#[test]
fn degenerate_sequences_are_rejected() {
    assert!(Surjection::new(vec![1, 1]).is_err());
    assert!(Surjection::new(vec![1, 3]).is_err());
    assert!("(11)".parse::<OperadElement<i64>>().is_err());
}

#[test]
fn operad_identities_for_small_arities() {
    let params = VerifyParams {
        max_entries: 5,
        max_arity: 3,
        max_bar_length: 3,
        samples: 40,
        seed: 3,
    };
    for check in [
        check_boundary_squared(5),
        check_homotopy_identity(5),
        check_composition_leibniz(&params),
        check_composition_associative(&params),
        check_boundary_equivariant(4),
        check_bar_boundary_squared(3),
    ] {
        assert!(
            check.passed(),
            "{}: {:?}",
            check.name,
            check.failures.first()
        );
        assert!(check.cases > 0, "{}", check.name);
    }
}

#[test]
fn reports_are_reproducible() {
    let params = VerifyParams {
        max_entries: 4,
        max_arity: 3,
        max_bar_length: 2,
        samples: 15,
        seed: 11,
    };
    let a = serde_json::to_string(&operad_suite(&params)).unwrap();
    let b = serde_json::to_string(&operad_suite(&params)).unwrap();
    assert_eq!(a, b);
}
