use seqop::coefficients::{coefficient, integral, support_is_structural};
use seqop::verify::*;
use seqop::{Coeff, OperadElement, Surjection, F2};

fn surj(s: &str) -> Surjection {
    s.parse::<OperadElement<i64>>()
        .unwrap()
        .iter()
        .next()
        .unwrap()
        .0
        .clone()
}

#[test]
fn closed_forms_in_arity_two() {
    for (f, e, want) in coefficient_fixtures() {
        if f != "(12)" && f != "(1)" {
            continue;
        }
        let got = integral().get(&surj(f), &e);
        let want: OperadElement<i64> = if want == "0" {
            OperadElement::zero(e.iter().sum())
        } else {
            want.parse().unwrap()
        };
        assert_eq!(*got, want, "C({f}; {e:?})");
    }
}

#[test]
fn reduction_mod_two_matches_direct_computation() {
    for f in surjections(3, 2) {
        for e in multiplicities(f.arity(), 4) {
            let z = coefficient::<i64>(&f, &e).map_coeffs(F2::from_i64);
            assert_eq!(z, coefficient::<F2>(&f, &e), "C({f}; {e:?})");
        }
    }
}

#[test]
fn boundary_identity_and_equivariance() {
    for check in [
        check_coefficient_boundary(3, 4, 4),
        check_coefficient_transport(2, 4, 4),
    ] {
        assert!(
            check.passed(),
            "{}: {:?}",
            check.name,
            check.failures.first()
        );
    }
}

#[test]
fn computed_coefficients_are_structural() {
    for f in surjections(4, 3) {
        for e in multiplicities(f.arity(), 4) {
            let c = coefficient::<i64>(&f, &e);
            assert!(support_is_structural(&f, &e, &c).is_ok(), "C({f}; {e:?})");
        }
    }
}

// Regression values for the cup-i generators τ_i = (1212...).
#[test]
fn cup_i_generators() {
    let table = [
        ("(121)", [1, 1], "-(1212)"),
        ("(121)", [1, 2], "-(121313)"),
        ("(121)", [2, 1], "-(131323)"),
        ("(121)", [2, 2], "-(13141424)"),
        ("(1212)", [1, 1], "-(12121)"),
        ("(1212)", [1, 2], "-(1212131)+(1213131)"),
        ("(1212)", [2, 1], "-(1313232)"),
        ("(1212)", [2, 2], "-(131323242)+(131414242)"),
    ];
    for (f, e, want) in table {
        let got = integral().get(&surj(f), &e);
        assert_eq!(got.to_string(), want, "C({f}; {e:?})");
    }
}
