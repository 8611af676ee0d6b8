//! The double contravariant monad `exp_Q^{-2}` on towers.
//!
//! Values above level 2 are usually procedural, so every structure map here
//! returns a closure over the tower rather than a table.

use crate::fuzzy::{preimage, PointMap};
use crate::towers::{Tower, Value};
use std::sync::Arc;

/// `η_X(x)(γ) = γ(x)`, tabulated over `Q^X`.
pub fn unit_eta(t: &Arc<Tower>, x: usize) -> Value {
    let v = t.hat(0, Value::Point(x));
    Value::Table(t.materialize(2, &v).expect("Q^X is enumerable"))
}

/// `μ_X(ℍ)(γ) = ℍ(γ̂)`, tabulated over `Q^X`.
pub fn mult_mu(t: &Arc<Tower>, h: &Value) -> Value {
    let n = t.enumerable(1).expect("Q^X is enumerable");
    Value::table((0..n).map(|i| t.apply(4, h, &t.hat(1, t.decode(1, i)))).collect())
}

/// `μ_X` without tabulating, for arguments that are themselves procedural.
pub fn mult_mu_lazy(t: &Arc<Tower>, h: Value) -> Value {
    let t = Arc::clone(t);
    Value::procedural(move |gamma| t.apply(4, &h, &t.hat(1, gamma.clone())))
}

/// `exp_Q^{-2} f(Λ)(γ) = Λ(γ ∘ f)` for a point map `f: X → Y`.
pub fn p2_map(tx: &Arc<Tower>, ty: &Arc<Tower>, f: &PointMap, lam: &Value) -> Value {
    let n = ty.enumerable(1).expect("Q^Y is enumerable");
    Value::table(
        (0..n)
            .map(|i| {
                let gamma = ty.decode(1, i);
                let Value::Table(g) = gamma else { unreachable!() };
                tx.apply(2, lam, &Value::table(preimage(f, &g)))
            })
            .collect(),
    )
}

/// `exp_Q^{-4} f = exp_Q^{-2}(exp_Q^{-2} f)`: `ℍ ↦ (Ξ ↦ ℍ(Ξ ∘ exp_Q^{-2} f))`.
pub fn p4_map(tx: &Arc<Tower>, ty: &Arc<Tower>, f: &PointMap, h: Value) -> Value {
    let (tx, ty, f) = (Arc::clone(tx), Arc::clone(ty), f.clone());
    Value::procedural(move |xi_y| {
        let (tx2, ty2, f2, xi) = (Arc::clone(&tx), Arc::clone(&ty), f.clone(), xi_y.clone());
        let pulled = Value::procedural(move |lam_x| ty2.apply(3, &xi, &p2_map(&tx2, &ty2, &f2, lam_x)));
        tx.apply(4, &h, &pulled)
    })
}

/// `η_{TX}(Λ) = Λ̂`: level 4.
pub fn eta_t(t: &Arc<Tower>, lam: Value) -> Value {
    t.hat(2, lam)
}

/// `exp_Q^{-2}(η_X)(Λ)`: `Ξ ↦ Λ(Ξ ∘ η_X)`.
pub fn t_eta(t: &Arc<Tower>, lam: Value) -> Value {
    let t = Arc::clone(t);
    Value::procedural(move |xi| {
        let pulled: Vec<_> = (0..t.base()).map(|x| t.apply(3, xi, &unit_eta(&t, x))).collect();
        t.apply(2, &lam, &Value::table(pulled))
    })
}

/// `μ_{TX}(𝕂)`: `Ξ ↦ 𝕂(Ξ̂)`, level 6 to level 4.
pub fn mu_t(t: &Arc<Tower>, k: Value) -> Value {
    let t = Arc::clone(t);
    Value::procedural(move |xi| t.apply(6, &k, &t.hat(3, xi.clone())))
}

/// `exp_Q^{-2}(μ_X)(𝕂)`: `Ξ ↦ 𝕂(Ξ ∘ μ_X)`, level 6 to level 4.
pub fn t_mu(t: &Arc<Tower>, k: Value) -> Value {
    let t = Arc::clone(t);
    Value::procedural(move |xi| {
        let (t2, xi) = (Arc::clone(&t), xi.clone());
        let pulled = Value::procedural(move |h| t2.apply(3, &xi, &mult_mu_lazy(&t2, h.clone())));
        t.apply(6, &k, &pulled)
    })
}

/// `f̄(y)(x) = f(x)(y)` for `f: X → Q^Y` given row by row.
pub fn transpose<T: Copy>(f: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|y| f.iter().map(|row| row[y]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::towers::{decode, DEFAULT_CAP};

    #[test]
    fn eta_tabulates_evaluation() {
        let t = Tower::new(2, 2, DEFAULT_CAP, 0);
        let Value::Table(e) = unit_eta(&t, 0) else { panic!() };
        assert_eq!(&*e, &[0, 1, 0, 1]);
    }

    #[test]
    fn mu_of_constant_is_constant() {
        let t = Tower::new(3, 1, DEFAULT_CAP, 0);
        let Value::Table(m) = mult_mu(&t, &Tower::constant(1)) else { panic!() };
        assert!(m.iter().all(|&v| v == 1));
    }

    #[test]
    fn mu_matches_brute_force_on_every_tabulated_h() {
        // bool, |X| = 1: ℍ ranges over all 2^16 tables on level 3.
        let t = Tower::new(2, 1, DEFAULT_CAP, 0);
        let hats: Vec<u64> = (0..2).map(|i| t.index(3, &t.hat(1, t.decode(1, i)))).collect();
        for idx in 0..65536u64 {
            let h = Value::table(decode(2, 16, idx));
            let Value::Table(m) = mult_mu(&t, &h) else { panic!() };
            for (i, &v) in m.iter().enumerate() {
                assert_eq!(v, ((idx >> hats[i]) & 1) as u8);
            }
        }
    }

    #[test]
    fn transpose_is_involutive() {
        let f = vec![vec![0u8, 1, 2], vec![2, 2, 0]];
        let g = transpose(&f, 3);
        assert_eq!(g, vec![vec![0, 2], vec![1, 2], vec![2, 0]]);
        assert_eq!(transpose(&g, 2), f);
        assert_eq!(transpose(&[vec![1u8]], 1), vec![vec![1]]);
    }

    #[test]
    fn p2_map_identity_and_constant() {
        let t = Tower::new(3, 2, DEFAULT_CAP, 0);
        let lam = t.random_value(2, 9);
        let id = PointMap::identity(2);
        let Value::Table(a) = p2_map(&t, &t, &id, &lam) else { panic!() };
        assert_eq!(a, t.materialize(2, &lam).unwrap());
        let Value::Table(c) = p2_map(&t, &t, &id, &Tower::constant(2)) else { panic!() };
        assert!(c.iter().all(|&v| v == 2));
    }
}
