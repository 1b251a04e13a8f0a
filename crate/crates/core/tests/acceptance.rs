//! One PASS/FAIL line per acceptance criterion. Exits with status 1 if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use seqop::bar::{format_bar, parse_bar};
use seqop::free_algebra::FreeAlgebra;
use seqop::phi::phi;
use seqop::verify::*;
use seqop::{OperadElement, F2};

struct Outcome {
    checks: Vec<Check>,
    seconds: f64,
}

fn timed(f: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = f();
    Outcome {
        checks,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn phi_examples() -> Check {
    let mut a = FreeAlgebra::<F2>::new();
    for n in ["x", "y", "y1", "y2"] {
        a.add_generator_str(n, 2, "").unwrap();
    }
    let cases = vec![
        ("(12)", vec!["[x]", "[y]"], "[x|y]+[y|x]+[(121)(x,y)]"),
        (
            "(12)",
            vec!["[x]", "[y1|y2]"],
            "[x|y1|y2]+[y1|x|y2]+[y1|y2|x]+[(121)(x,y1)|y2]+[y1|(121)(x,y2)]+[(12131)(x,y1,y2)]",
        ),
    ];
    run_check(
        "Φ fixtures over F_2",
        "both worked examples".into(),
        &cases,
        |(g, xs, _)| format!("{g}({})", xs.join(", ")),
        |(g, xs, want)| {
            let g: OperadElement<F2> = g.parse().unwrap();
            let xs: Vec<_> = xs
                .iter()
                .map(|s| parse_bar(s, |e| a.parse_element(e)).unwrap())
                .collect();
            let got = phi(&a, &g, &xs).unwrap();
            let want = parse_bar(want, |e| a.parse_element(e)).unwrap();
            (got != want).then(|| format!("computed {}", format_bar(&a, &got)))
        },
    )
}

fn main() -> ExitCode {
    let exhaustive = VerifyParams {
        max_entries: 5,
        max_arity: 3,
        max_bar_length: 4,
        samples: usize::MAX / 16,
        seed: 0,
    };
    let sampled = VerifyParams {
        samples: 200,
        ..exhaustive.clone()
    };
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut run = |n: usize, title: &'static str, f: &dyn Fn() -> Vec<Check>| {
        eprintln!("criterion {n}: running");
        results.push((n, title, timed(f)));
    };
    run(1, "coefficient fixtures over Z", &|| {
        vec![check_coefficient_fixtures()]
    });
    run(2, "Φ fixtures over F_2", &|| vec![phi_examples()]);
    run(3, "homotopy identity for s_a, m ≤ 7", &|| {
        vec![check_homotopy_identity(7)]
    });
    run(4, "d² = 0 and Leibniz", &|| {
        vec![
            check_boundary_squared(8),
            check_bar_boundary_squared(4),
            check_composition_leibniz(&sampled),
        ]
    });
    run(6, "equivariance of C and coinvariance of Φ", &|| {
        vec![
            check_coefficient_transport(3, 5, 5),
            check_phi_coinvariance(&exhaustive, usize::MAX),
        ]
    });
    run(7, "Φ is a chain map", &|| {
        vec![check_phi_chain_map(&exhaustive, usize::MAX)]
    });
    run(
        8,
        "composition formula, product splitting, associativity",
        &|| {
            vec![
                check_composition_formula(6, 4),
                check_product_splitting(&VerifyParams {
                    samples: usize::MAX / 16,
                    ..exhaustive.clone()
                }),
                check_associative_restriction(&exhaustive),
                check_not_an_action(),
            ]
        },
    );
    run(9, "diagonal", &|| {
        vec![
            check_diagonal_fixtures(),
            check_diagonal_boundary(7),
            check_diagonal_equivariant(6),
            check_diagonal_composition(&sampled),
        ]
    });
    run(10, "Steenrod operations", &|| {
        let mut v = vec![check_phi_resolution(&[2, 3], 6)];
        v.extend(check_sphere_squares(5, 4));
        v
    });
    run(11, "cochain action", &|| {
        vec![check_projective_plane(), check_cup_one(&sampled)]
    });
    // Last, so that the support conditions cover every coefficient computed
    // by the criteria above.
    run(5, "dC = X_1 + X_2 + X_3 and support conditions", &|| {
        vec![check_coefficient_boundary(3, 5, 5), check_structural_all()]
    });
    results.sort_by_key(|r| r.0);

    let mut all = true;
    for (n, title, out) in &results {
        let ok = out.checks.iter().all(Check::passed);
        all &= ok;
        let cases: usize = out.checks.iter().map(|c| c.cases).sum();
        println!(
            "{} criterion {n:>2}: {title} ({cases} cases, {:.1} s)",
            if ok { "PASS" } else { "FAIL" },
            out.seconds
        );
        for c in &out.checks {
            println!(
                "     {} {} [{}]: {} cases, {} failed",
                if c.passed() { "ok  " } else { "FAIL" },
                c.name,
                c.range,
                c.cases,
                c.failed
            );
            if let Some(f) = c.failures.first() {
                let mut detail = f.detail.clone();
                if detail.chars().count() > 400 {
                    detail = detail.chars().take(400).collect::<String>() + " ...";
                }
                println!("          first counterexample {}: {detail}", f.case);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
