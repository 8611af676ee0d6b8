//! The covariant powerset monad `exp_Q` on finite sets, table by table.
//!
//! A finite set is just a size `n`; `exp_Q` sends it to `Q^n`, whose points
//! are the codec indices of its tables. Iterating gives the whole tower
//! without any special casing: the tables of `Q^{Q^n}` are tables over the
//! codec indices of `Q^n`.

use crate::fuzzy::{delta, image, PointMap};
use crate::quantale::{Elem, Quantale};
use crate::towers::{encode, enumerate_tables, TowerError};

/// Every table of `Q^n`, in codec order.
#[derive(Debug, Clone)]
pub struct Powers {
    pub q: usize,
    pub n: usize,
    pub tables: Vec<Vec<Elem>>,
}

impl Powers {
    pub fn new(q: &Quantale, n: usize, cap: u64) -> Result<Self, TowerError> {
        Ok(Powers { q: q.size(), n, tables: enumerate_tables(q.size(), n, cap)?.collect() })
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn index(&self, t: &[Elem]) -> usize {
        debug_assert_eq!(t.len(), self.n);
        encode(self.q, t) as usize
    }
}

/// `e(x) = k_x`.
pub fn unit_e(q: &Quantale, n: usize, x: usize) -> Vec<Elem> {
    delta(q, q.unit(), x, n).expect("point in range")
}

/// `m(Λ)(x) = ⋁_γ Λ(γ) ⊗ γ(x)`, with `Λ` a table over `powers`.
pub fn mult_m(q: &Quantale, powers: &Powers, big: &[Elem]) -> Vec<Elem> {
    debug_assert_eq!(big.len(), powers.len());
    let mut out = vec![q.bottom(); powers.n];
    for (gamma, &w) in powers.tables.iter().zip(big) {
        if w == q.bottom() {
            continue;
        }
        for (o, &g) in out.iter_mut().zip(gamma) {
            *o = q.join(*o, q.tensor(w, g));
        }
    }
    out
}

/// `exp_Q f` as a map between codec indices.
pub fn t_map(q: &Quantale, powers: &Powers, f: &PointMap) -> PointMap {
    let codomain = crate::towers::pow_checked(q.size(), f.codomain).expect("codomain fits") as usize;
    PointMap { images: powers.tables.iter().map(|g| encode(q.size(), &image(q, f, g)) as usize).collect(), codomain }
}

/// `e_X` as a map from points to codec indices of `Q^X`.
pub fn unit_map(q: &Quantale, n: usize) -> PointMap {
    PointMap {
        images: (0..n).map(|x| encode(q.size(), &unit_e(q, n, x)) as usize).collect(),
        codomain: crate::towers::pow_checked(q.size(), n).expect("fits") as usize,
    }
}

/// `m_X` as a map from codec indices of `Q^{Q^X}` to those of `Q^X`.
pub fn mult_map(q: &Quantale, inner: &Powers, outer: &Powers) -> PointMap {
    debug_assert_eq!(outer.n, inner.len());
    PointMap { images: outer.tables.iter().map(|l| inner.index(&mult_m(q, inner, l))).collect(), codomain: inner.len() }
}

/// `κ_X(A)`: `k` on `A`, bottom elsewhere. Subsets are boolean tables.
pub fn crisp(q: &Quantale, subset: &[Elem]) -> Vec<Elem> {
    subset.iter().map(|&b| if b != 0 { q.unit() } else { q.bottom() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin_quantale;
    use crate::towers::DEFAULT_CAP;

    #[test]
    fn mult_examples() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let p = Powers::new(&q, 1, DEFAULT_CAP).unwrap();
        // Λ(γ) = γ(a)
        let big: Vec<Elem> = p.tables.iter().map(|g| g[0]).collect();
        assert_eq!(mult_m(&q, &p, &big), vec![2]);
        assert_eq!(mult_m(&q, &p, &[0, 0, 0]), vec![0]);
        let gamma = vec![1];
        let e = delta(&q, q.unit(), p.index(&gamma), p.len()).unwrap();
        assert_eq!(mult_m(&q, &p, &e), gamma);
    }

    #[test]
    fn unit_map_points_at_deltas() {
        let q = builtin_quantale("bool").unwrap();
        assert_eq!(unit_map(&q, 2).images, vec![1, 2]);
        assert_eq!(unit_e(&q, 1, 0), vec![1]);
    }
}
