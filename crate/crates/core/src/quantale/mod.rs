//! Finite unital quantales.
//!
//! Elements are dense indices `0..n` in definition order. Every table is
//! addressed as `table[a * n + b]`. Residuals are precomputed by sup-scan so
//! the inner loops elsewhere in the crate are plain lookups.

mod builtin;
mod laws;

pub use builtin::{builtin_quantale, parse_quantale_ref, Family};
pub use laws::verify_quantale_laws;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// A quantale element, as an index into the carrier.
pub type Elem = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("malformed quantale definition: {0}")]
    Malformed(String),
    #[error("a quantale needs at least two elements, got {0}")]
    TooSmall(usize),
    #[error("at most 256 elements are supported, got {0}")]
    TooLarge(usize),
    #[error("order is not antisymmetric: {a} <= {b} and {b} <= {a}")]
    NotAntisymmetric { a: String, b: String },
    #[error("not a lattice: {a} and {b} have no {bound}")]
    NotALattice { a: String, b: String, bound: &'static str },
    #[error("tensor is not associative: ({p}*{q})*{r} = {lhs} but {p}*({q}*{r}) = {rhs}")]
    NotAssociative { p: String, q: String, r: String, lhs: String, rhs: String },
    #[error("unit law fails at {x}: unit*{x} = {left}, {x}*unit = {right}")]
    UnitLawFails { x: String, left: String, right: String },
    #[error("tensor does not distribute over joins on the {side}: p={p}, a={a}, b={b}")]
    NotDistributive { side: &'static str, p: String, a: String, b: String },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// JSON quantale definition document.
///
/// `leq` lists generating pairs `[a, b]` meaning `a <= b`; the
/// reflexive-transitive closure is taken. `tensor[p][q]` is `p * q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantaleDef {
    pub name: String,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Quantale {
    name: String,
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    tensor: Vec<Elem>,
    ldd: Vec<Elem>,
    rdd: Vec<Elem>,
    unit: Elem,
    bottom: Elem,
    top: Elem,
    commutative: bool,
}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantale")
            .field("name", &self.name)
            .field("elements", &self.labels)
            .field("unit", &self.label(self.unit))
            .finish_non_exhaustive()
    }
}

impl Quantale {
    /// Builds and fully validates a quantale from a definition document.
    pub fn build(def: &QuantaleDef) -> Result<Self, QuantaleError> {
        let q = Self::build_unchecked(def)?;
        q.validate()?;
        Ok(q)
    }

    /// Builds the lattice and derived tables without checking the tensor
    /// laws. The result is only meaningful as input to
    /// [`verify_quantale_laws`]; structural problems (labels, table shape,
    /// lattice order) are still rejected.
    pub fn build_unchecked(def: &QuantaleDef) -> Result<Self, QuantaleError> {
        let n = def.elements.len();
        let lookup = |label: &str| -> Result<usize, QuantaleError> {
            def.elements.iter().position(|e| e == label).ok_or_else(|| QuantaleError::UnknownLabel(label.to_string()))
        };
        for (i, e) in def.elements.iter().enumerate() {
            if def.elements[..i].contains(e) {
                return Err(QuantaleError::Malformed(format!("duplicate element `{e}`")));
            }
        }
        let mut leq = vec![false; n * n];
        for (a, b) in &def.leq {
            leq[lookup(a)? * n + lookup(b)?] = true;
        }
        if def.tensor.len() != n || def.tensor.iter().any(|row| row.len() != n) {
            return Err(QuantaleError::Malformed(format!("tensor table must be {n}x{n}")));
        }
        let mut tensor = vec![0; n * n];
        for (p, row) in def.tensor.iter().enumerate() {
            for (q, e) in row.iter().enumerate() {
                tensor[p * n + q] = lookup(e)?;
            }
        }
        let unit = lookup(&def.unit)?;
        Self::from_tables(def.name.clone(), def.elements.clone(), leq, &tensor, unit)
    }

    /// Builds from a generating order relation and a tensor table given as
    /// element indices. The order is closed reflexively and transitively.
    pub(crate) fn from_tables(
        name: String,
        labels: Vec<String>,
        mut leq: Vec<bool>,
        tensor: &[usize],
        unit: usize,
    ) -> Result<Self, QuantaleError> {
        let n = labels.len();
        if n < 2 {
            return Err(QuantaleError::TooSmall(n));
        }
        if n > 256 {
            return Err(QuantaleError::TooLarge(n));
        }
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(QuantaleError::NotAntisymmetric { a: labels[a].clone(), b: labels[b].clone() });
                }
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        let mut join = vec![0 as Elem; n * n];
        let mut meet = vec![0 as Elem; n * n];
        for a in 0..n {
            for b in 0..n {
                let ub = (0..n).find(|&c| le(a, c) && le(b, c) && (0..n).all(|d| !(le(a, d) && le(b, d)) || le(c, d)));
                let lb = (0..n).find(|&c| le(c, a) && le(c, b) && (0..n).all(|d| !(le(d, a) && le(d, b)) || le(d, c)));
                match (ub, lb) {
                    (Some(u), Some(l)) => {
                        join[a * n + b] = u as Elem;
                        meet[a * n + b] = l as Elem;
                    }
                    (None, _) => {
                        return Err(QuantaleError::NotALattice {
                            a: labels[a].clone(),
                            b: labels[b].clone(),
                            bound: "least upper bound",
                        })
                    }
                    (_, None) => {
                        return Err(QuantaleError::NotALattice {
                            a: labels[a].clone(),
                            b: labels[b].clone(),
                            bound: "greatest lower bound",
                        })
                    }
                }
            }
        }
        let bottom = (0..n).find(|&c| (0..n).all(|d| le(c, d))).expect("finite lattice has a bottom");
        let top = (0..n).find(|&c| (0..n).all(|d| le(d, c))).expect("finite lattice has a top");
        let tensor: Vec<Elem> = tensor.iter().map(|&t| t as Elem).collect();
        let mut q = Quantale {
            name,
            labels,
            n,
            leq,
            join,
            meet,
            tensor,
            ldd: vec![0; n * n],
            rdd: vec![0; n * n],
            unit: unit as Elem,
            bottom: bottom as Elem,
            top: top as Elem,
            commutative: false,
        };
        q.derive_residuals();
        Ok(q)
    }

    fn derive_residuals(&mut self) {
        let n = self.n;
        for r in self.elements() {
            for x in self.elements() {
                // ldd(r, x) = sup{p : p*x <= r}; rdd(x, r) = sup{q : x*q <= r}
                let l = self.join_all(self.elements().filter(|&p| self.leq(self.tensor(p, x), r)));
                let rr = self.join_all(self.elements().filter(|&q| self.leq(self.tensor(x, q), r)));
                self.ldd[r as usize * n + x as usize] = l;
                self.rdd[x as usize * n + r as usize] = rr;
            }
        }
        self.commutative = self.elements().all(|p| self.elements().all(|q| self.tensor(p, q) == self.tensor(q, p)));
    }

    /// Checks associativity, the unit laws and distributivity, returning the
    /// first violation found.
    pub fn validate(&self) -> Result<(), QuantaleError> {
        let l = |e: Elem| self.label(e).to_string();
        for p in self.elements() {
            for q in self.elements() {
                for r in self.elements() {
                    let lhs = self.tensor(self.tensor(p, q), r);
                    let rhs = self.tensor(p, self.tensor(q, r));
                    if lhs != rhs {
                        return Err(QuantaleError::NotAssociative {
                            p: l(p),
                            q: l(q),
                            r: l(r),
                            lhs: l(lhs),
                            rhs: l(rhs),
                        });
                    }
                }
            }
        }
        for x in self.elements() {
            let (left, right) = (self.tensor(self.unit, x), self.tensor(x, self.unit));
            if left != x || right != x {
                return Err(QuantaleError::UnitLawFails { x: l(x), left: l(left), right: l(right) });
            }
        }
        for p in self.elements() {
            if self.tensor(p, self.bottom) != self.bottom {
                return Err(QuantaleError::NotDistributive {
                    side: "left (empty join)",
                    p: l(p),
                    a: "{}".into(),
                    b: "{}".into(),
                });
            }
            if self.tensor(self.bottom, p) != self.bottom {
                return Err(QuantaleError::NotDistributive {
                    side: "right (empty join)",
                    p: l(p),
                    a: "{}".into(),
                    b: "{}".into(),
                });
            }
            for a in self.elements() {
                for b in self.elements() {
                    let ab = self.join(a, b);
                    if self.tensor(p, ab) != self.join(self.tensor(p, a), self.tensor(p, b)) {
                        return Err(QuantaleError::NotDistributive { side: "left", p: l(p), a: l(a), b: l(b) });
                    }
                    if self.tensor(ab, p) != self.join(self.tensor(a, p), self.tensor(b, p)) {
                        return Err(QuantaleError::NotDistributive { side: "right", p: l(p), a: l(a), b: l(b) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + 'static {
        (0..self.n).map(|i| i as Elem)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e as usize]
    }

    pub fn element(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(|i| i as Elem)
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn tensor(&self, p: Elem, q: Elem) -> Elem {
        self.tensor[p as usize * self.n + q as usize]
    }

    /// Left implication `r ⧸ q`, the largest `p` with `p * q <= r`.
    #[inline]
    pub fn ldd(&self, r: Elem, q: Elem) -> Elem {
        self.ldd[r as usize * self.n + q as usize]
    }

    /// Right implication `p ↘ r`, the largest `q` with `p * q <= r`.
    #[inline]
    pub fn rdd(&self, p: Elem, r: Elem) -> Elem {
        self.rdd[p as usize * self.n + r as usize]
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// `λ ↙ γ`: meet over points of `λ(x) ⧸ γ(x)`.
    pub fn swarrow(&self, lambda: &[Elem], gamma: &[Elem]) -> Elem {
        debug_assert_eq!(lambda.len(), gamma.len());
        lambda.iter().zip(gamma).fold(self.top, |acc, (&l, &g)| self.meet(acc, self.ldd(l, g)))
    }

    /// `γ ↘ λ`: meet over points of `γ(x) ↘ λ(x)`.
    pub fn searrow(&self, gamma: &[Elem], lambda: &[Elem]) -> Elem {
        debug_assert_eq!(lambda.len(), gamma.len());
        gamma.iter().zip(lambda).fold(self.top, |acc, (&g, &l)| self.meet(acc, self.rdd(g, l)))
    }

    pub fn leq_tables(&self, a: &[Elem], b: &[Elem]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| self.leq(x, y))
    }

    pub fn to_def(&self) -> QuantaleDef {
        let n = self.n;
        let mut leq = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a * n + b] {
                    leq.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        QuantaleDef {
            name: self.name.clone(),
            elements: self.labels.clone(),
            leq,
            tensor: (0..n)
                .map(|p| (0..n).map(|q| self.labels[self.tensor[p * n + q] as usize].clone()).collect())
                .collect(),
            unit: self.labels[self.unit as usize].clone(),
        }
    }

    /// Replaces one tensor entry and rederives the residual tables. Used to
    /// build corrupted instances for mutation testing.
    pub fn with_tensor_entry(&self, p: Elem, q: Elem, value: Elem) -> Quantale {
        let mut out = self.clone();
        out.tensor[p as usize * self.n + q as usize] = value;
        out.name = format!("{}[mutated {}*{}={}]", self.name, self.label(p), self.label(q), self.label(value));
        out.derive_residuals();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn def(elements: &[&str], leq: &[(&str, &str)], tensor: &[&[&str]], unit: &str) -> QuantaleDef {
        QuantaleDef {
            name: "t".into(),
            elements: elements.iter().map(|s| s.to_string()).collect(),
            leq: leq.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            tensor: tensor.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
            unit: unit.into(),
        }
    }

    #[test]
    fn boolean_quantale_builds() {
        let q = Quantale::build(&def(&["0", "1"], &[("0", "1")], &[&["0", "0"], &["0", "1"]], "1")).unwrap();
        assert_eq!(q.bottom(), 0);
        assert_eq!(q.top(), 1);
        assert!(q.is_commutative());
        assert_eq!(q.ldd(0, 1), 0);
        assert_eq!(q.ldd(0, 0), 1);
    }

    #[test]
    fn godel_three_chain_builds() {
        let q = Quantale::build(&def(
            &["0", "h", "1"],
            &[("0", "h"), ("h", "1")],
            &[&["0", "0", "0"], &["0", "h", "h"], &["0", "h", "1"]],
            "1",
        ))
        .unwrap();
        assert!(q.leq(0, 2));
        assert_eq!(q.rdd(1, 0), 0);
        assert_eq!(q.rdd(1, 1), 2);
    }

    #[test]
    fn unit_zero_is_rejected() {
        let err = Quantale::build(&def(&["0", "1"], &[("0", "1")], &[&["0", "0"], &["0", "1"]], "0")).unwrap_err();
        assert!(matches!(err, QuantaleError::UnitLawFails { ref x, .. } if x == "1"), "{err}");
    }

    #[test]
    fn structural_errors() {
        let e = Quantale::build(&def(&["0", "1"], &[("0", "2")], &[&["0", "0"], &["0", "1"]], "1")).unwrap_err();
        assert_eq!(e, QuantaleError::UnknownLabel("2".into()));
        let e = Quantale::build(&def(&["0"], &[], &[&["0"]], "0")).unwrap_err();
        assert_eq!(e, QuantaleError::TooSmall(1));
        // two incomparable atoms without a top
        let e = Quantale::build(&def(
            &["0", "a", "b"],
            &[("0", "a"), ("0", "b")],
            &[&["0", "0", "0"], &["0", "a", "0"], &["0", "0", "b"]],
            "a",
        ))
        .unwrap_err();
        assert!(matches!(e, QuantaleError::NotALattice { .. }), "{e}");
        let e = Quantale::build(&def(&["0", "1"], &[("0", "1"), ("1", "0")], &[&["0", "0"], &["0", "1"]], "1"))
            .unwrap_err();
        assert!(matches!(e, QuantaleError::NotAntisymmetric { .. }));
    }

    #[test]
    fn non_distributive_tensor_is_rejected() {
        // 0*0 = 1 breaks bottom absorption
        let e = Quantale::build(&def(&["0", "1"], &[("0", "1")], &[&["1", "0"], &["0", "1"]], "1")).unwrap_err();
        assert!(matches!(e, QuantaleError::NotDistributive { .. } | QuantaleError::NotAssociative { .. }), "{e}");
    }

    #[test]
    fn def_roundtrip() {
        let q = builtin_quantale("endo:3").unwrap();
        let back = Quantale::build(&q.to_def()).unwrap();
        assert_eq!(back, q);
    }
}
