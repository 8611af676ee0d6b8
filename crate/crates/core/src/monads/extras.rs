use super::base::Powers;
use super::laws::{lifted_table_checks, table_monad, MultMutation};
use super::{lift, Lift};
use crate::fuzzy::{image, labels, preimage, PointMap};
use crate::quantale::{builtin_quantale, Elem, Quantale};
use crate::report::{Check, Params, Status, Tally, VerificationReport};
use crate::towers::{enumerate_maps, enumerate_tables};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PullbackError {
    #[error("square does not type-check: {0}")]
    IllTyped(String),
    #[error("square does not commute at {0}")]
    NotCommutative(usize),
    #[error("not a pullback: {0}")]
    NotAPullback(String),
}

/// A commutative square `g ∘ h = j ∘ f` with `f: A → C`, `h: A → B`,
/// `j: C → D`, `g: B → D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub f: PointMap,
    pub h: PointMap,
    pub j: PointMap,
    pub g: PointMap,
}

impl Square {
    /// The canonical pullback `A = {(b, c) : g(b) = j(c)}` with its projections.
    pub fn canonical(g: PointMap, j: PointMap) -> Square {
        let mut pairs = Vec::new();
        for b in 0..g.domain() {
            for c in 0..j.domain() {
                if g.apply(b) == j.apply(c) {
                    pairs.push((b, c));
                }
            }
        }
        Square {
            f: PointMap { images: pairs.iter().map(|p| p.1).collect(), codomain: j.domain() },
            h: PointMap { images: pairs.iter().map(|p| p.0).collect(), codomain: g.domain() },
            j,
            g,
        }
    }
}

/// Checks that `(h, f)` maps `A` bijectively onto `B ×_D C`.
pub fn verify_pullback(sq: &Square) -> Result<(), PullbackError> {
    let Square { f, h, j, g } = sq;
    if f.domain() != h.domain() || f.codomain != j.domain() || h.codomain != g.domain() || j.codomain != g.codomain {
        return Err(PullbackError::IllTyped(format!(
            "A={}/{}, C={}/{}, B={}/{}, D={}/{}",
            f.domain(),
            h.domain(),
            f.codomain,
            j.domain(),
            h.codomain,
            g.domain(),
            j.codomain,
            g.codomain
        )));
    }
    if let Some(a) = (0..f.domain()).find(|&a| g.apply(h.apply(a)) != j.apply(f.apply(a))) {
        return Err(PullbackError::NotCommutative(a));
    }
    let mut seen = vec![vec![false; j.domain()]; g.domain()];
    for a in 0..f.domain() {
        let (b, c) = (h.apply(a), f.apply(a));
        if std::mem::replace(&mut seen[b][c], true) {
            return Err(PullbackError::NotAPullback(format!("pair ({b}, {c}) is hit twice")));
        }
    }
    for (b, row) in seen.iter().enumerate() {
        for (c, &hit) in row.iter().enumerate() {
            if g.apply(b) == j.apply(c) && !hit {
                return Err(PullbackError::NotAPullback(format!("pair ({b}, {c}) has no preimage")));
            }
        }
    }
    Ok(())
}

/// `h(γ ∘ f) = j(γ) ∘ g` for every `γ ∈ Q^C`, after validating the square.
pub fn beck_chevalley_check(q: &Quantale, sq: &Square, params: &Params) -> Result<VerificationReport, PullbackError> {
    verify_pullback(sq)?;
    let mut report = VerificationReport::new("beck-chevalley", q.name(), params.clone());
    let mut t = Tally::new("beck-chevalley-square");
    square_cases(q, sq, params, &mut t);
    report.push(t.finish());
    Ok(report)
}

fn square_cases(q: &Quantale, sq: &Square, params: &Params, t: &mut Tally) {
    let Ok(gammas) = enumerate_tables(q.size(), sq.f.codomain, params.cap) else { return };
    for gamma in gammas {
        let lhs = image(q, &sq.h, &preimage(&sq.f, &gamma));
        let rhs = preimage(&sq.g, &image(q, &sq.j, &gamma));
        t.case(lhs == rhs, || {
            json!({"g": sq.g.images, "j": sq.j.images, "gamma": labels(q, &gamma),
                   "h(gamma.f)": labels(q, &lhs), "j(gamma).g": labels(q, &rhs)})
        });
    }
}

/// Beck–Chevalley over every canonical pullback with `|B|, |C|, |D| ≤ max_size`.
pub fn verify_beck_chevalley(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("beck-chevalley", q.name(), params.clone());
    let mut guard = Tally::new("canonical-square-is-pullback");
    let mut t = Tally::new("beck-chevalley-square");
    let mut squares = 0u64;
    for d in 0..=params.max_size {
        for b in 0..=params.max_size {
            for c in 0..=params.max_size {
                let (Ok(gs), Ok(js)) = (enumerate_maps(b, d, params.cap), enumerate_maps(c, d, params.cap)) else {
                    continue;
                };
                let js: Vec<_> = js.collect();
                for gi in gs {
                    for ji in &js {
                        let sq = Square::canonical(
                            PointMap { images: gi.clone(), codomain: d },
                            PointMap { images: ji.clone(), codomain: d },
                        );
                        let ok = verify_pullback(&sq);
                        guard.case(
                            ok.is_ok(),
                            || json!({"g": sq.g.images, "j": sq.j.images, "error": format!("{ok:?}")}),
                        );
                        squares += 1;
                        square_cases(q, &sq, params, &mut t);
                    }
                }
            }
        }
    }
    report.push(guard.finish());
    report.push(t.finish().note(format!("{squares} pullback squares")));
    report
}

/// `α_P(A) = ⋀_{a ∈ A} α(a)` tabulated over the subsets of `powers`.
fn alpha_p(q: &Quantale, powers: &Powers, alpha: &[Elem]) -> Vec<Elem> {
    powers.tables.iter().map(|s| q.meet_all(s.iter().zip(alpha).filter(|(&m, _)| m != 0).map(|(_, &a)| a))).collect()
}

/// The classical powerset monad, lifted to fuzzy sets by `α_P`: monad laws
/// on the base and Goguen conditions of unit, union and images.
pub fn powerset_lift_check(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("monad:powerset-lift", q.name(), params.clone());
    let b = builtin_quantale("bool").expect("builtin");
    report.extend(table_monad(&b, params, MultMutation::None));
    report.extend(lifted_table_checks(&b, q, params, "alphaP-", &|p: &Powers, a: &[Elem]| alpha_p(q, p, a)));
    report
}

/// Searches for `(X, α, γ)` with `α↑(γ) ≠ α†↑(γ)`. The outcome is reported,
/// never asserted.
pub fn noncommutative_witness(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("noncomm-witness", q.name(), params.clone());
    if q.is_commutative() {
        report.push(Check::with_status(
            "up-differs-from-dag",
            Status::HypothesisUnmet,
            0,
            "quantale is commutative, so the two memberships coincide",
        ));
        return report;
    }
    let mut cases = 0u64;
    let mut found = None;
    'search: for n in 1..=params.max_size {
        let Ok(p) = Powers::new(q, n, params.cap) else { break };
        for alpha in &p.tables {
            let up = lift(q, &p, alpha, Lift::Up);
            let dag = lift(q, &p, alpha, Lift::Dag);
            for (i, gamma) in p.tables.iter().enumerate() {
                cases += 1;
                if up[i] != dag[i] {
                    found = Some(json!({"size": n, "alpha": labels(q, alpha), "gamma": labels(q, gamma),
                                        "up": q.label(up[i]), "dag": q.label(dag[i])}));
                    break 'search;
                }
            }
        }
    }
    let note = match found {
        Some(w) => format!("found: {w}"),
        None => format!("not found up to size {}", params.max_size),
    };
    report.push(Check::with_status("up-differs-from-dag", Status::Observation, cases, note));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(images: &[usize], codomain: usize) -> PointMap {
        PointMap::new(images.to_vec(), codomain).unwrap()
    }

    #[test]
    fn product_pullback_commutes_for_all_gamma() {
        let q = builtin_quantale("bool").unwrap();
        let sq = Square::canonical(pm(&[0, 0], 1), pm(&[0, 0], 1));
        assert_eq!(sq.f.domain(), 4);
        let r = beck_chevalley_check(&q, &sq, &Params::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks[0].cases, 4);
    }

    #[test]
    fn identity_square_commutes() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let id = PointMap::identity(2);
        let sq = Square { f: id.clone(), h: id.clone(), j: id.clone(), g: id };
        assert!(beck_chevalley_check(&q, &sq, &Params::default()).unwrap().passed());
    }

    #[test]
    fn non_pullbacks_are_rejected() {
        let q = builtin_quantale("bool").unwrap();
        // A = 1 over the product of two 2-element sets: misses three pairs
        let sq = Square { f: pm(&[0], 2), h: pm(&[0], 2), j: pm(&[0, 0], 1), g: pm(&[0, 0], 1) };
        assert!(matches!(beck_chevalley_check(&q, &sq, &Params::default()), Err(PullbackError::NotAPullback(_))));
        let sq = Square { f: pm(&[0, 0], 1), h: pm(&[0, 0], 1), j: pm(&[0], 1), g: pm(&[0], 1) };
        assert!(matches!(verify_pullback(&sq), Err(PullbackError::NotAPullback(_))));
        let sq = Square { f: pm(&[0], 1), h: pm(&[0], 1), j: pm(&[0], 2), g: pm(&[1], 2) };
        assert_eq!(verify_pullback(&sq), Err(PullbackError::NotCommutative(0)));
    }

    #[test]
    fn all_small_pullbacks() {
        for name in ["bool", "lukasiewicz:3", "endo:3"] {
            let q = builtin_quantale(name).unwrap();
            let r = verify_beck_chevalley(&q, &Params::default());
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn alpha_p_on_empty_and_singletons() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let b = builtin_quantale("bool").unwrap();
        let p = Powers::new(&b, 2, 100).unwrap();
        let ap = alpha_p(&q, &p, &[1, 0]);
        assert_eq!(ap, vec![2, 1, 0, 0]);
    }

    #[test]
    fn powerset_lift_passes() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let r = powerset_lift_check(&q, &Params { max_size: 2, samples: 32, ..Params::default() });
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn endo3_has_a_witness() {
        let q = builtin_quantale("endo:3").unwrap();
        let r = noncommutative_witness(&q, &Params { max_size: 1, ..Params::default() });
        assert!(r.checks[0].note.as_deref().unwrap().starts_with("found"));
        let b = builtin_quantale("bool").unwrap();
        assert_eq!(noncommutative_witness(&b, &Params::default()).checks[0].status, Status::HypothesisUnmet);
    }
}
