//! Monad maps into the double contravariant powerset monad: `κ: exp → exp_Q`,
//! `j: exp_Q → exp_Q^{-2}` (a submonad when Q is commutative), and the
//! filter monad.

mod filters;

pub use filters::{
    enumerate_qfilters, filter_image, kowalsky_sum, kowalsky_via_mu, qfilter_axioms, Axiom, FilterPredicate,
    FilterSpace, FilterViolation, QFilter,
};
pub(crate) use filters::{filter_lifting, filter_monad_laws};

use crate::fuzzy::{image, labels, PointMap};
use crate::monads::base::{self, Powers};
use crate::monads::{double, lift, Lift};
use crate::quantale::{builtin_quantale, Elem, Quantale};
use crate::report::{Check, Params, Status, Tally, VerificationReport};
use crate::towers::{encode, enumerate_maps, enumerate_tables, Sparse, Tower};
use serde_json::json;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubmonadError {
    #[error("quantale {0} is not commutative")]
    NotCommutative(String),
}

/// `j(λ)(γ) = γ ↙ λ`, tabulated over `powers`.
pub fn j_embed(q: &Quantale, powers: &Powers, lambda: &[Elem]) -> Vec<Elem> {
    powers.tables.iter().map(|g| q.swarrow(g, lambda)).collect()
}

/// `κ(λ)(γ) = λ ↘ γ`; agrees with `j` when Q is commutative.
pub fn kappa_embed(q: &Quantale, powers: &Powers, lambda: &[Elem]) -> Result<Vec<Elem>, SubmonadError> {
    if !q.is_commutative() {
        return Err(SubmonadError::NotCommutative(q.name().to_string()));
    }
    Ok(powers.tables.iter().map(|g| q.searrow(lambda, g)).collect())
}

fn step1_tally(q: &Quantale, params: &Params, name: &str) -> Tally {
    let mut t = Tally::new(name);
    for n in 0..=params.max_size {
        let Ok(p) = Powers::new(q, n, params.cap) else { continue };
        let js: Vec<Vec<Elem>> = p.tables.iter().map(|l| j_embed(q, &p, l)).collect();
        for alpha in &p.tables {
            let dag = lift(q, &p, alpha, Lift::Dag);
            for (lambda, j) in p.tables.iter().zip(&js) {
                let lhs = q.swarrow(alpha, lambda);
                let rhs = q.swarrow(j, &dag);
                t.case(lhs == rhs, || {
                    json!({"size": n, "alpha": labels(q, alpha), "lambda": labels(q, lambda),
                           "alpha-down": q.label(lhs), "p2-membership-of-j": q.label(rhs)})
                });
            }
        }
    }
    t
}

fn unmet(name: &str, q: &Quantale) -> Check {
    Check::with_status(name, Status::HypothesisUnmet, 0, format!("{} is not commutative", q.name()))
}

/// `α↓(λ) = (α†↑)↑(j(λ))` for every `α, λ`, on commutative quantales. On a
/// noncommutative one the equality is searched for a counterexample and the
/// outcome is reported as an observation.
pub fn step1_check(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("step1", q.name(), params.clone());
    if q.is_commutative() {
        report.push(step1_tally(q, params, "step1-equality").finish());
    } else {
        report.push(unmet("step1-equality", q));
        report.push(crate::monads::observation(step1_tally(q, params, "step1-noncommutative-search")));
    }
    report
}

/// `μ((j*j)(Λ))(λ) = j(m(Λ))(λ)` for every `Λ` and `λ` at size `n`. The
/// inner image of `Λ` along `j` is sparse, and bottom entries contribute the
/// top element to the meet.
fn step2(q: &Quantale, p: &Powers, params: &Params, t: &mut Tally) {
    let n = p.n;
    let js: Vec<Vec<Elem>> = p.tables.iter().map(|l| j_embed(q, p, l)).collect();
    let j_idx: Vec<u64> = js.iter().map(|j| encode(q.size(), j)).collect();
    let Ok(bigs) = enumerate_tables(q.size(), p.len(), params.cap) else { return };
    for big in bigs {
        let mut joined: BTreeMap<u64, Elem> = BTreeMap::new();
        for (&idx, &w) in j_idx.iter().zip(&big) {
            let e = joined.entry(idx).or_insert(q.bottom());
            *e = q.join(*e, w);
        }
        let phi = Sparse::new(joined.into_iter().collect(), q.bottom());
        let m = base::mult_m(q, p, &big);
        for lambda in &p.tables {
            let li = p.index(lambda);
            let lhs = q.meet_all(phi.support().iter().map(|&(xi, w)| {
                let xi_table = crate::towers::decode(q.size(), p.len(), xi);
                q.ldd(xi_table[li], w)
            }));
            let rhs = q.swarrow(lambda, &m);
            t.case(lhs == rhs, || {
                json!({"size": n, "Lambda": labels(q, &big), "lambda": labels(q, lambda),
                       "mu.(j*j)": q.label(lhs), "j.m": q.label(rhs)})
            });
        }
    }
}

/// `j: exp_Q → exp_Q^{-2}` (equivalently `U → 𝔓`) is an injective monad map
/// whose components are Goguen maps, on commutative quantales.
pub fn verify_u_in_p2(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("submonad:U-in-P2", q.name(), params.clone());
    let names = [
        "j-injective",
        "kappa-equals-j",
        "unit-compatibility",
        "naturality",
        "multiplication-square",
        "step1-equality",
    ];
    if !q.is_commutative() {
        report.extend(names.iter().map(|n| unmet(n, q)));
        return report;
    }
    let mut inj = Tally::new(names[0]);
    let mut kap = Tally::new(names[1]);
    let mut unit = Tally::new(names[2]);
    let mut nat = Tally::new(names[3]);
    let mut mult = Tally::new(names[4]);
    let towers: Vec<Arc<Tower>> =
        (0..=params.max_size).map(|n| Tower::new(q.size(), n, params.cap, params.seed)).collect();
    for (n, t) in towers.iter().enumerate() {
        let Ok(p) = Powers::new(q, n, params.cap) else { continue };
        let js: Vec<Vec<Elem>> = p.tables.iter().map(|l| j_embed(q, &p, l)).collect();
        let distinct: HashSet<&Vec<Elem>> = js.iter().collect();
        inj.case(distinct.len() == js.len(), || json!({"size": n}));
        for (lambda, j) in p.tables.iter().zip(&js) {
            let k = kappa_embed(q, &p, lambda).expect("commutative");
            kap.case(k == *j, || json!({"size": n, "lambda": labels(q, lambda)}));
        }
        for x in 0..n {
            let eta = t.materialize(2, &double::unit_eta(t, x)).unwrap();
            let je = j_embed(q, &p, &base::unit_e(q, n, x));
            unit.case(eta[..] == je[..], || json!({"size": n, "x": x, "j(e(x))": labels(q, &je)}));
        }
        for (m, ty) in towers.iter().enumerate() {
            let (Ok(py), Ok(maps)) = (Powers::new(q, m, params.cap), enumerate_maps(n, m, params.cap)) else {
                continue;
            };
            for images in maps {
                let f = PointMap { images, codomain: m };
                for (lambda, j) in p.tables.iter().zip(&js) {
                    let lhs =
                        ty.materialize(2, &double::p2_map(t, ty, &f, &crate::towers::Value::table(j.clone()))).unwrap();
                    let rhs = j_embed(q, &py, &image(q, &f, lambda));
                    nat.case(lhs[..] == rhs[..], || json!({"f": f.images, "lambda": labels(q, lambda)}));
                }
            }
        }
        step2(q, &p, params, &mut mult);
    }
    report.extend([inj.finish(), kap.finish(), unit.finish(), nat.finish(), mult.finish()]);
    report.push(step1_tally(q, params, names[5]).finish());
    report
}

/// `κ: exp → exp_Q`, crisp subsets as Q-valued ones, is an injective monad map.
pub fn verify_exp_in_expq(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("submonad:exp-in-expQ", q.name(), params.clone());
    let b = builtin_quantale("bool").expect("builtin");
    let mut inj = Tally::new("kappa-injective");
    let mut unit = Tally::new("unit-compatibility");
    let mut nat = Tally::new("naturality");
    let mut mult = Tally::new("multiplication-square");
    for n in 0..=params.max_size {
        let (Ok(subsets), Ok(pq)) = (Powers::new(&b, n, params.cap), Powers::new(q, n, params.cap)) else { continue };
        let crisp: Vec<Vec<Elem>> = subsets.tables.iter().map(|s| base::crisp(q, s)).collect();
        let distinct: HashSet<&Vec<Elem>> = crisp.iter().collect();
        inj.case(distinct.len() == crisp.len(), || json!({"size": n}));
        for x in 0..n {
            let lhs = base::crisp(q, &base::unit_e(&b, n, x));
            unit.case(lhs == base::unit_e(q, n, x), || json!({"size": n, "x": x}));
        }
        for m in 0..=params.max_size {
            let Ok(maps) = enumerate_maps(n, m, params.cap) else { continue };
            for images in maps {
                let f = PointMap { images, codomain: m };
                for (s, c) in subsets.tables.iter().zip(&crisp) {
                    let lhs = base::crisp(q, &image(&b, &f, s));
                    let rhs = image(q, &f, c);
                    nat.case(lhs == rhs, || json!({"f": f.images, "subset": s}));
                }
            }
        }
        // 𝒜 ⊆ 2^X: κ(⋃𝒜) against m_Q of the crisp image of 𝒜 in Q^X
        let Ok(families) = enumerate_tables(2, subsets.len(), params.cap) else { continue };
        for fam in families {
            let union = base::mult_m(&b, &subsets, &fam);
            let mut lifted = vec![q.bottom(); pq.len()];
            for (c, &inside) in crisp.iter().zip(&fam) {
                if inside != 0 {
                    lifted[pq.index(c)] = q.unit();
                }
            }
            let lhs = base::crisp(q, &union);
            let rhs = base::mult_m(q, &pq, &lifted);
            mult.case(lhs == rhs, || json!({"size": n, "family": fam, "kappa(union)": labels(q, &lhs), "m(kappa*kappa)": labels(q, &rhs)}));
        }
    }
    report.extend([inj.finish(), unit.finish(), nat.finish(), mult.finish()]);
    report
}

pub fn verify_qfilter_axioms(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("qfilter-axioms", q.name(), params.clone());
    report.extend(filters::qfilter_checks(q, params));
    report
}

pub fn verify_kowalsky(q: &Quantale, params: &Params, pred: FilterPredicate) -> VerificationReport {
    let mut report = VerificationReport::new("kowalsky", q.name(), params.clone());
    report.extend(filters::or_vacuous(filters::kowalsky_checks(q, params, pred), "kowalsky-closure"));
    report
}

pub fn verify_f_in_p2(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("submonad:F-in-P2", q.name(), params.clone());
    report.extend(filters::filter_submonad_checks(q, params));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::towers::DEFAULT_CAP;

    #[test]
    fn j_examples() {
        let b = builtin_quantale("bool").unwrap();
        let p = Powers::new(&b, 1, DEFAULT_CAP).unwrap();
        assert_eq!(j_embed(&b, &p, &[1]), vec![0, 1]);
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let p = Powers::new(&q, 1, DEFAULT_CAP).unwrap();
        // codec order γ = 0, ½, 1; ½ → γ gives ½, 1, 1
        assert_eq!(kappa_embed(&q, &p, &[1]).unwrap(), vec![1, 2, 2]);
        assert_eq!(kappa_embed(&q, &p, &[1]).unwrap(), j_embed(&q, &p, &[1]));
        let e = builtin_quantale("endo:3").unwrap();
        let pe = Powers::new(&e, 1, DEFAULT_CAP).unwrap();
        assert!(matches!(kappa_embed(&e, &pe, &[0]), Err(SubmonadError::NotCommutative(_))));
    }

    #[test]
    fn step1_worked_example() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let p = Powers::new(&q, 1, DEFAULT_CAP).unwrap();
        let dag = lift(&q, &p, &[1], Lift::Dag);
        let rhs = q.swarrow(&j_embed(&q, &p, &[2]), &dag);
        assert_eq!(rhs, 1);
        assert_eq!(q.swarrow(&[1], &[2]), 1);
    }

    #[test]
    fn suites_small() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let params = Params { max_size: 1, ..Params::default() };
        for r in [step1_check(&q, &params), verify_u_in_p2(&q, &params), verify_exp_in_expq(&q, &params)] {
            assert!(r.passed(), "{}", r.summary());
        }
        let e = builtin_quantale("endo:3").unwrap();
        let r = verify_u_in_p2(&e, &params);
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.status == Status::HypothesisUnmet));
        let r = step1_check(&e, &params);
        assert_eq!(r.checks[1].status, Status::Observation);
    }
}
