//! The identity registry and its runner.

use std::time::Instant;

use serde::Serialize;

use crate::par::{self, Exec};
use crate::qseries::{Comparison, Ring};

use super::eval::{eval_expr, EvalError};
use super::expr::{parse_expr, Expr};

pub const DEFAULT_ORDER: usize = 150;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Theorem,
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    SumProduct,
    ModularEquation,
    ProductIdentity,
}

/// A registered identity `lhs = rhs`, both given in the expression language.
#[derive(Clone, Copy, Debug)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub status: Status,
    pub kind: Kind,
    pub ring: Ring,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub default_order: usize,
}

impl IdentityCheck {
    pub fn lhs_expr(&self) -> Expr {
        parse_expr(self.lhs).expect("registry expressions parse")
    }

    pub fn rhs_expr(&self) -> Expr {
        parse_expr(self.rhs).expect("registry expressions parse")
    }
}

use Kind::*;
use Status::*;

const fn entry(id: &'static str, status: Status, kind: Kind, ring: Ring, lhs: &'static str, rhs: &'static str) -> IdentityCheck {
    IdentityCheck { id, status, kind, ring, lhs, rhs, default_order: DEFAULT_ORDER }
}

const INT: Ring = Ring::Integer;
const EIS: Ring = Ring::Eisenstein;

const REGISTRY: &[IdentityCheck] = &[
    entry("rr_sum_product_G", Theorem, SumProduct, INT, "G_sum", "G"),
    entry("rr_sum_product_H", Theorem, SumProduct, INT, "H_sum", "H"),
    entry("rr_modeq_G", Theorem, ModularEquation, INT, "G", "poch(q^8;q^8)/poch(q^2;q^2)*(q*H(-q^4)+G(q^16))"),
    entry("rr_modeq_H", Theorem, ModularEquation, INT, "H", "poch(q^8;q^8)/poch(q^2;q^2)*(G(-q^4)+q^3*H(q^16))"),
    entry(
        "rr_companion_G",
        Theorem,
        ModularEquation,
        INT,
        "G",
        "(-q*H(-q^4)+G(q^16))/(poch(q^4;q^8)*poch(q,q^9;q^10)^2*poch(q^6,q^10,q^14;q^20))",
    ),
    entry(
        "rr_companion_H",
        Theorem,
        ModularEquation,
        INT,
        "H",
        "(G(-q^4)-q^3*H(q^16))/(poch(q^4;q^8)*poch(q^3,q^7;q^10)^2*poch(q^2,q^10,q^18;q^20))",
    ),
    entry("rs_sum_product_A", Theorem, SumProduct, INT, "A_sum", "A"),
    entry("rs_sum_product_B", Theorem, SumProduct, INT, "B_sum", "B"),
    entry("rs_sum_product_C", Theorem, SumProduct, INT, "C_sum", "C"),
    entry("septic_modeq_A", Theorem, ModularEquation, INT, "A", "(q*C(-q^2)+A(q^8))/poch(q^2;q^4)^2"),
    entry("septic_modeq_B", Theorem, ModularEquation, INT, "B", "(A(-q^2)+q*B(q^8))/poch(q^2;q^4)^2"),
    entry("septic_modeq_C", Theorem, ModularEquation, INT, "C", "(B(-q^2)+q^3*C(q^8))/poch(q^2;q^4)^2"),
    entry(
        "septic_companion_A",
        Theorem,
        ModularEquation,
        INT,
        "A",
        "poch(-q,-q^5,-q^9,-q^13;q^14)*(-q*C(-q^2)+A(q^8))/(poch(q^2;q^4)^2*poch(q,q^5,q^9,q^13;q^14))",
    ),
    entry(
        "septic_companion_B",
        Theorem,
        ModularEquation,
        INT,
        "B",
        "poch(-q,-q^3,-q^11,-q^13;q^14)*(A(-q^2)-q*B(q^8))/(poch(q^2;q^4)^2*poch(q,q^3,q^11,q^13;q^14))",
    ),
    entry(
        "septic_companion_C",
        Theorem,
        ModularEquation,
        INT,
        "C",
        "poch(-q^3,-q^5,-q^9,-q^11;q^14)*(B(-q^2)-q^3*C(q^8))/(poch(q^2;q^4)^2*poch(q^3,q^5,q^9,q^11;q^14))",
    ),
    entry("kr_sum_product_K1", Conjecture, SumProduct, INT, "K1_sum", "K1"),
    entry("kr_sum_product_K2", Conjecture, SumProduct, INT, "K2_sum", "K2"),
    entry("kr_sum_product_K3", Conjecture, SumProduct, INT, "K3_sum", "K3"),
    entry(
        "kr_modeq_K1",
        Theorem,
        ModularEquation,
        INT,
        "K1",
        "(q*K2(-q^2)+K1(q^8))/(poch(q^2;q^4)*poch(q^6;q^12)*poch(q^3,q^15;q^18)*poch(-q^5,-q^13;q^18))",
    ),
    entry(
        "kr_modeq_K2",
        Theorem,
        ModularEquation,
        INT,
        "K2",
        "(K3(-q^2)+q*K2(q^8))/(poch(q^2;q^4)*poch(q^6;q^12)*poch(q^3,q^15;q^18)*poch(-q,-q^17;q^18))",
    ),
    entry(
        "kr_modeq_K3",
        Theorem,
        ModularEquation,
        INT,
        "K3",
        "(K1(-q^2)+q^5*K3(q^8))/(poch(q^2;q^4)*poch(q^6;q^12)*poch(q^3,q^15;q^18)*poch(-q^7,-q^11;q^18))",
    ),
    entry(
        "kr_companion_K1",
        Theorem,
        ModularEquation,
        INT,
        "K1",
        "poch(-q,-q^17;q^18)*(-q*K2(-q^2)+K1(q^8))/(poch(q^2;q^4)*poch(q^6;q^12)*poch(q^3,q^15;q^18)*poch(q,q^5,q^13,q^17;q^18))",
    ),
    entry(
        "kr_companion_K2",
        Theorem,
        ModularEquation,
        INT,
        "K2",
        "poch(-q^7,-q^11;q^18)*(K3(-q^2)-q*K2(q^8))/(poch(q^2;q^4)*poch(q^6;q^12)*poch(q^3,q^15;q^18)*poch(q,q^7,q^11,q^17;q^18))",
    ),
    entry(
        "kr_companion_K3",
        Theorem,
        ModularEquation,
        INT,
        "K3",
        "poch(-q^5,-q^13;q^18)*(K1(-q^2)-q^5*K3(q^8))/(poch(q^2;q^4)*poch(q^6;q^12)*poch(q^3,q^15;q^18)*poch(q^5,q^7,q^11,q^13;q^18))",
    ),
    entry("kr_sum_product_K4", Conjecture, SumProduct, INT, "K4_sum", "K4"),
    entry("kr_sum_product_K5", Conjecture, SumProduct, INT, "K5_sum", "K5"),
    entry("kr_sum_product_K6", Conjecture, SumProduct, EIS, "K6_sum", "K6"),
    entry("kr_sum_product_K7", Conjecture, SumProduct, EIS, "K7_sum", "K7"),
    entry("kr_sum_product_K4c", Conjecture, SumProduct, INT, "K4c_sum", "K4c"),
    entry("kr_sum_product_K5c", Conjecture, SumProduct, INT, "K5c_sum", "K5c"),
    entry("kr_sum_product_K6c", Conjecture, SumProduct, EIS, "K6c_sum", "K6c"),
    entry("kr_sum_product_K7c", Conjecture, SumProduct, EIS, "K7c_sum", "K7c"),
    entry("k6k6bar", Theorem, ProductIdentity, INT, "K6*K6c", "poch(q^6;q^9)/(poch(q;q^3)*poch(q^2;q^3)^2)"),
    entry("k7k7bar", Theorem, ProductIdentity, INT, "K7*K7c", "poch(q^3;q^9)/(poch(q;q^3)^2*poch(q^2;q^3))"),
    entry("k6k7bar", Theorem, ProductIdentity, EIS, "K6*K7c", "poch(wq;wq)/poch(q;q)"),
    entry(
        "mod11_surrogate_P1",
        Theorem,
        ModularEquation,
        INT,
        "AG(11,1)(q^2)",
        "(AG(11,5)(-q^2)-q^2*AG(11,3)(q^8))/(poch(q^2;q^4)^2*poch(q^18,q^26;q^44))",
    ),
    entry(
        "mod11_surrogate_P2",
        Theorem,
        ModularEquation,
        INT,
        "AG(11,2)(q^2)",
        "(-q^2*AG(11,1)(-q^2)+AG(11,5)(q^8))/(poch(q^2;q^4)^2*poch(q^14,q^30;q^44))",
    ),
    entry(
        "mod11_surrogate_P3",
        Theorem,
        ModularEquation,
        INT,
        "AG(11,3)(q^2)",
        "(AG(11,4)(-q^2)-q^4*AG(11,2)(q^8))/(poch(q^2;q^4)^2*poch(q^10,q^34;q^44))",
    ),
    entry(
        "mod11_surrogate_P4",
        Theorem,
        ModularEquation,
        INT,
        "AG(11,4)(q^2)",
        "(AG(11,2)(-q^2)-q^6*AG(11,1)(q^8))/(poch(q^2;q^4)^2*poch(q^6,q^38;q^44))",
    ),
    entry(
        "mod11_surrogate_P5",
        Theorem,
        ModularEquation,
        INT,
        "q^2*AG(11,5)(q^2)",
        "(-AG(11,3)(-q^2)+AG(11,4)(q^8))/(poch(q^2;q^4)^2*poch(q^2,q^42;q^44))",
    ),
    entry(
        "kq_modeq_plus",
        Theorem,
        ModularEquation,
        INT,
        "K",
        "ETA(6)*ETA(8)^2/(ETA(2)^2*ETA(24))*(K(-q^4)+q*K(q^16))",
    ),
    entry(
        "kq_modeq_minus",
        Theorem,
        ModularEquation,
        INT,
        "K",
        "ETA(2)*ETA(3)^2*ETA(8)^2*ETA(12)/(ETA(1)^2*ETA(4)*ETA(6)^2*ETA(24))*(K(-q^4)-q*K(q^16))",
    ),
];

pub fn registry() -> &'static [IdentityCheck] {
    REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static IdentityCheck> {
    REGISTRY.iter().find(|c| c.id == id)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    pub order: usize,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub conjectures_checked: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
            conjectures_checked: reports.iter().filter(|r| r.status == Status::Conjecture).count(),
        }
    }
}

/// Theorem failures only; conjectures never fail a run.
pub fn theorem_failures(reports: &[CheckReport]) -> usize {
    reports.iter().filter(|r| !r.pass && r.status == Status::Theorem).count()
}

/// Compares the expansions of `lhs` and `rhs` through `q^order`.
pub fn check_exprs(id: &str, status: Status, lhs: &Expr, rhs: &Expr, order: usize) -> Result<CheckReport, EvalError> {
    let start = Instant::now();
    let l = eval_expr(lhs, order)?;
    let r = eval_expr(rhs, order)?;
    let first_mismatch = match l.compare(&r, order)? {
        Comparison::Equal => None,
        Comparison::Mismatch { degree, lhs, rhs } => {
            Some(Mismatch { degree, lhs: lhs.to_string(), rhs: rhs.to_string() })
        }
    };
    Ok(CheckReport {
        id: id.to_string(),
        status,
        order,
        pass: first_mismatch.is_none(),
        first_mismatch,
        ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_identity(c: &IdentityCheck, order: usize) -> Result<CheckReport, EvalError> {
    check_exprs(c.id, c.status, &c.lhs_expr(), &c.rhs_expr(), order)
}

/// Runs one registered identity; `None` for an unknown id.
pub fn run_check(id: &str, order: Option<usize>) -> Option<Result<CheckReport, EvalError>> {
    let c = lookup(id)?;
    Some(run_identity(c, order.unwrap_or(c.default_order)))
}

/// Runs the whole registry; reports come back in registry order.
pub fn run_all(order: usize, exec: Exec) -> Vec<CheckReport> {
    run_selected(REGISTRY, order, exec)
}

pub fn run_selected(checks: &[IdentityCheck], order: usize, exec: Exec) -> Vec<CheckReport> {
    exec.run(|| {
        par::map_slice(checks, |c| {
            run_identity(c, order).expect("registry expressions evaluate")
        })
    })
}

/// A single-factor perturbation of a modular equation's right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub site: usize,
    pub delta: i64,
    /// Lowest degree the perturbation touches.
    pub degree: usize,
    pub rhs: Expr,
}

fn sites(e: &Expr, out: &mut Vec<(Expr, usize)>) {
    match e {
        Expr::Poch { tops, base, count } => {
            for t in tops {
                if t.k > 0 {
                    let single = Expr::Poch { tops: vec![*t], base: *base, count: *count };
                    out.push((single, t.k));
                }
            }
        }
        Expr::Name { id: crate::catalog::FunctionId::Eta(b), arg: None, .. } => out.push((e.clone(), *b)),
        Expr::Neg(a) | Expr::Pow(a, _) => sites(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            sites(a, out);
            sites(b, out);
        }
        _ => {}
    }
}

/// Number of perturbable factor sites on the right-hand side.
pub fn mutation_sites(c: &IdentityCheck) -> usize {
    let mut v = Vec::new();
    sites(&c.rhs_expr(), &mut v);
    v.len()
}

/// Raises the exponent of one Pochhammer or eta factor on the right by `delta`.
pub fn mutate(c: &IdentityCheck, site: usize, delta: i64) -> Option<Mutation> {
    let rhs = c.rhs_expr();
    let mut v = Vec::new();
    sites(&rhs, &mut v);
    let (factor, degree) = v.get(site)?.clone();
    if delta == 0 {
        return None;
    }
    let rhs = Expr::mul(rhs, Expr::pow(factor, delta));
    Some(Mutation { site, delta, degree, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        assert_eq!(registry().len(), 42);
        let mut ids: Vec<_> = registry().iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 42);
        assert_eq!(registry().iter().filter(|c| c.kind == ModularEquation).count(), 23);
        assert_eq!(registry().iter().filter(|c| c.status == Conjecture).count(), 11);
        assert!(registry().iter().all(|c| c.default_order >= 50));
    }

    #[test]
    fn expressions_roundtrip() {
        for c in registry() {
            for e in [c.lhs_expr(), c.rhs_expr()] {
                assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{}", c.id);
            }
        }
    }

    #[test]
    fn rings_match() {
        for c in registry() {
            let l = eval_expr(&c.lhs_expr(), 20).unwrap().simplify();
            let r = eval_expr(&c.rhs_expr(), 20).unwrap().simplify();
            assert_eq!(l.ring(), c.ring, "{}", c.id);
            assert_eq!(r.ring(), c.ring, "{}", c.id);
        }
    }

    #[test]
    fn low_order_all_pass() {
        for r in run_all(10, Exec::Sequential) {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn named_checks() {
        for id in ["rr_modeq_G", "septic_modeq_A"] {
            assert!(run_check(id, Some(200)).unwrap().unwrap().pass, "{id}");
        }
        assert!(run_check("nosuch", None).is_none());
    }

    #[test]
    fn swapped_name_fails_early() {
        let c = lookup("rr_modeq_G").unwrap();
        let bad = parse_expr(&c.rhs.replace("H(", "G(")).unwrap();
        let r = check_exprs("bad", Theorem, &c.lhs_expr(), &bad, 150).unwrap();
        assert!(!r.pass);
        assert!(r.first_mismatch.unwrap().degree <= 10);
    }

    #[test]
    fn parallel_matches_sequential() {
        let strip = |v: Vec<CheckReport>| -> Vec<_> { v.into_iter().map(|r| (r.id, r.pass, r.first_mismatch)).collect() };
        assert_eq!(strip(run_all(30, Exec::Parallel)), strip(run_all(30, Exec::Sequential)));
    }

    #[test]
    fn mutations_fail() {
        let c = lookup("kq_modeq_plus").unwrap();
        assert_eq!(mutation_sites(c), 4);
        for site in 0..4 {
            for delta in [-1, 1] {
                let m = mutate(c, site, delta).unwrap();
                let r = check_exprs(c.id, c.status, &c.lhs_expr(), &m.rhs, 150).unwrap();
                let mm = r.first_mismatch.expect("mutation detected");
                assert!(mm.degree <= 2 * m.degree, "{site} {delta}: {}", mm.degree);
            }
        }
    }
}
