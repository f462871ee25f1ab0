use proptest::prelude::*;

use qworkbench::harness::registry::{registry, run_all, Status};
use qworkbench::harness::{eval_expr, find_relation, parse_expr};
use qworkbench::harness::relation::combine;
use qworkbench::par::{sequential, Exec};

#[test]
fn theorems_pass_at_300() {
    for r in run_all(300, Exec::Parallel) {
        assert!(r.pass, "{} {:?}", r.id, r.first_mismatch);
    }
}

#[test]
fn sequential_reports_match_parallel() {
    let key = |v: Vec<qworkbench::harness::CheckReport>| -> Vec<_> {
        v.into_iter().map(|r| (r.id, r.status, r.pass, r.first_mismatch)).collect()
    };
    let par = key(run_all(100, Exec::Parallel));
    let seq = key(sequential(|| run_all(100, Exec::Parallel)));
    assert_eq!(par, seq);
    assert_eq!(par.iter().filter(|r| r.1 == Status::Conjecture).count(), 11);
}

const ATOMS: &[&str] = &["G", "H(-q^2)", "K4", "A(q^3)", "poch(q;q^2)", "ETA(3)", "q", "K1_sum"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relations_annihilate(coefs in prop::collection::vec(-3i64..=3, 4), picks in prop::collection::vec(0..ATOMS.len(), 3)) {
        let n = 40;
        let mut series: Vec<_> = picks.iter().map(|&i| eval_expr(&parse_expr(ATOMS[i]).unwrap(), n).unwrap()).collect();
        let lin: Vec<String> = coefs.iter().zip(&picks).map(|(c, &i)| format!("({c})*{}", ATOMS[i])).collect();
        series.push(eval_expr(&parse_expr(&lin.join("+")).unwrap(), n).unwrap());
        let basis = find_relation(&series, n).unwrap();
        prop_assert!(!basis.is_empty());
        for v in &basis {
            prop_assert!(combine(&series, v, n).unwrap().is_zero_upto(n));
        }
    }

    #[test]
    fn printed_registry_trees_reparse(i in 0..42usize) {
        let c = &registry()[i];
        let e = c.rhs_expr();
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }
}
