//! Powerset structures on the Goguen category and the monads they form.
//!
//! Each lifted functor sends `(X, α)` to a function space paired with a
//! membership function derived from `α`:
//!
//! | functor | carrier     | membership of `γ` (or `Λ`)      |
//! |---------|-------------|---------------------------------|
//! | U       | `Q^X`       | `α ↙ γ`                         |
//! | W       | `Q^X`       | `⋁ γ(x) ⊗ α(x)`                 |
//! | P       | `Q^X`       | `γ ↙ α`                         |
//! | P†      | `Q^X`       | `α ↘ γ`                         |
//! | 𝔓 = PP† | `Q^{Q^X}`   | `⋀_γ Λ(γ) ⧸ (α ↘ γ)`            |

pub mod base;
pub mod double;
mod extras;
mod laws;

pub(crate) use laws::observation;

pub use extras::{
    beck_chevalley_check, noncommutative_witness, powerset_lift_check, verify_beck_chevalley, verify_pullback,
    PullbackError, Square,
};
pub use laws::{
    verify_adjunction, verify_goguen_structure_maps, verify_lifting, verify_monad_laws, verify_monad_laws_with,
    MultMutation,
};

use crate::fuzzy::FuzzyError;
use crate::quantale::{Elem, Quantale};
use base::Powers;
use std::fmt;
use std::str::FromStr;

/// The monads the verifiers know about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonadTag {
    U,
    W,
    P2,
    ExpQ,
    ExpQ2,
    F,
    PowersetLift,
}

impl MonadTag {
    pub const ALL: [MonadTag; 7] =
        [MonadTag::U, MonadTag::W, MonadTag::P2, MonadTag::ExpQ, MonadTag::ExpQ2, MonadTag::F, MonadTag::PowersetLift];

    pub fn name(self) -> &'static str {
        match self {
            MonadTag::U => "U",
            MonadTag::W => "W",
            MonadTag::P2 => "P2",
            MonadTag::ExpQ => "expQ",
            MonadTag::ExpQ2 => "expQ2",
            MonadTag::F => "F",
            MonadTag::PowersetLift => "powerset-lift",
        }
    }

    /// The monad on sets that this one lifts, if it is a Goguen-category monad.
    pub fn base(self) -> Option<MonadTag> {
        match self {
            MonadTag::U | MonadTag::W => Some(MonadTag::ExpQ),
            MonadTag::P2 => Some(MonadTag::ExpQ2),
            MonadTag::F | MonadTag::PowersetLift => None,
            MonadTag::ExpQ | MonadTag::ExpQ2 => None,
        }
    }
}

impl fmt::Display for MonadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonadTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MonadTag::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown monad `{s}`"))
    }
}

fn same_len(a: &[Elem], b: &[Elem]) -> Result<(), FuzzyError> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(FuzzyError::CarrierMismatch { expected: a.len(), got: b.len() })
    }
}

/// `α↓(γ) = α ↙ γ`.
pub fn membership_down(q: &Quantale, alpha: &[Elem], gamma: &[Elem]) -> Result<Elem, FuzzyError> {
    same_len(alpha, gamma)?;
    Ok(q.swarrow(alpha, gamma))
}

/// `α∘(γ) = ⋁ γ(x) ⊗ α(x)`.
pub fn membership_circ(q: &Quantale, alpha: &[Elem], gamma: &[Elem]) -> Result<Elem, FuzzyError> {
    same_len(alpha, gamma)?;
    Ok(circ(q, alpha, gamma))
}

fn circ(q: &Quantale, alpha: &[Elem], gamma: &[Elem]) -> Elem {
    q.join_all(gamma.iter().zip(alpha).map(|(&g, &a)| q.tensor(g, a)))
}

/// `α↑(γ) = γ ↙ α`.
pub fn membership_up(q: &Quantale, alpha: &[Elem], gamma: &[Elem]) -> Result<Elem, FuzzyError> {
    same_len(alpha, gamma)?;
    Ok(q.swarrow(gamma, alpha))
}

/// `α†↑(γ) = α ↘ γ`.
pub fn membership_dag(q: &Quantale, alpha: &[Elem], gamma: &[Elem]) -> Result<Elem, FuzzyError> {
    same_len(alpha, gamma)?;
    Ok(q.searrow(alpha, gamma))
}

/// `(α†↑)↑(Λ) = ⋀_γ Λ(γ) ⧸ (α ↘ γ)`, with `Λ` tabulated over `Q^X`.
pub fn membership_p2(q: &Quantale, powers: &Powers, alpha: &[Elem], lam: &[Elem]) -> Result<Elem, FuzzyError> {
    if alpha.len() != powers.n {
        return Err(FuzzyError::CarrierMismatch { expected: powers.n, got: alpha.len() });
    }
    if lam.len() != powers.len() {
        return Err(FuzzyError::CarrierMismatch { expected: powers.len(), got: lam.len() });
    }
    Ok(q.swarrow(lam, &lift(q, powers, alpha, Lift::Dag)))
}

/// Which membership a lifted functor puts on `Q^X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lift {
    Down,
    Circ,
    Up,
    Dag,
}

/// The lifted membership tabulated over every table of `powers`.
pub fn lift(q: &Quantale, powers: &Powers, alpha: &[Elem], kind: Lift) -> Vec<Elem> {
    powers
        .tables
        .iter()
        .map(|g| match kind {
            Lift::Down => q.swarrow(alpha, g),
            Lift::Circ => circ(q, alpha, g),
            Lift::Up => q.swarrow(g, alpha),
            Lift::Dag => q.searrow(alpha, g),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::delta;
    use crate::quantale::builtin_quantale;
    use crate::towers::DEFAULT_CAP;

    #[test]
    fn membership_examples() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        assert_eq!(membership_down(&q, &[1], &[2]).unwrap(), 1);
        assert_eq!(membership_circ(&q, &[1], &[1]).unwrap(), 0);
        assert_eq!(membership_up(&q, &[2], &[1]).unwrap(), 1);
        assert_eq!(membership_down(&q, &[], &[]).unwrap(), 2);
        assert_eq!(membership_circ(&q, &[], &[]).unwrap(), 0);
        assert_eq!(membership_up(&q, &[], &[]).unwrap(), 2);
        assert!(membership_dag(&q, &[1], &[1, 1]).is_err());
        let b = builtin_quantale("bool").unwrap();
        assert_eq!(membership_circ(&b, &[1], &[1]).unwrap(), 1);
        for a in q.elements() {
            for x in 0..2 {
                let alpha = [a, 2 - a];
                let k = delta(&q, q.unit(), x, 2).unwrap();
                assert_eq!(membership_down(&q, &alpha, &k).unwrap(), alpha[x]);
                assert!(q.leq(q.unit(), membership_up(&q, &alpha, &alpha).unwrap()));
                assert!(q.leq(q.unit(), membership_dag(&q, &alpha, &alpha).unwrap()));
            }
        }
    }

    #[test]
    fn dag_differs_from_up_in_endo3() {
        let q = builtin_quantale("endo:3").unwrap();
        let found =
            q.elements().any(|a| q.elements().any(|g| membership_up(&q, &[a], &[g]) != membership_dag(&q, &[a], &[g])));
        assert!(found);
    }

    #[test]
    fn p2_membership_examples() {
        let b = builtin_quantale("bool").unwrap();
        let p0 = Powers::new(&b, 0, DEFAULT_CAP).unwrap();
        assert_eq!(membership_p2(&b, &p0, &[], &[0]).unwrap(), 0);
        assert_eq!(membership_p2(&b, &p0, &[], &[1]).unwrap(), 1);
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let p = Powers::new(&q, 1, DEFAULT_CAP).unwrap();
        // j(λ) for λ = (1): γ ↦ γ ↙ λ
        let j: Vec<Elem> = p.tables.iter().map(|g| q.swarrow(g, &[2])).collect();
        assert_eq!(membership_p2(&q, &p, &[1], &j).unwrap(), 1);
    }

    #[test]
    fn tags_roundtrip() {
        for t in MonadTag::ALL {
            assert_eq!(t.name().parse::<MonadTag>().unwrap(), t);
        }
        assert!("V".parse::<MonadTag>().is_err());
    }
}
