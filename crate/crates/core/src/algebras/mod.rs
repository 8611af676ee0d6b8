//! Q-modules, Q-orders, Eilenberg–Moore algebras of `exp_Q` and `U`, and the
//! finite ingredients of dual monadicity.

mod em;
mod monadicity;

pub use em::{em_check_base, em_check_goguen, enumerate_em_algebras, verify_em_base, verify_em_goguen, EmAlgebra};
pub use monadicity::{
    coequalizer_verify, reflects_iso_check, reflexive_pair_equalizer, verify_coequalizer, Equalizer, ReflexivePair,
};

use crate::quantale::{Elem, Quantale};
use crate::report::{Check, Params, Tally, VerificationReport};
use crate::towers::{decode, pow_checked, TowerError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("Q-order is not separated: points {0} and {1} are equivalent")]
    NotSeparated(usize, usize),
    #[error("Q-order is not cocomplete: weight {0:?} has no supremum")]
    NotCocomplete(Vec<Elem>),
    #[error("not a reflexive pair: {0}")]
    NotReflexivePair(String),
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error(transparent)]
    Cap(#[from] TowerError),
}

/// A complete lattice on `0..size`, given by its join table and bottom,
/// with a Q-action `action[r * size + x] = r ⊗ x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QModule {
    pub size: usize,
    pub join: Vec<usize>,
    pub bottom: usize,
    pub action: Vec<usize>,
}

impl QModule {
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn act(&self, r: Elem, x: usize) -> usize {
        self.action[r as usize * self.size + x]
    }

    /// `sup γ = ⋁ γ(x) ⊗ x`.
    pub fn sup(&self, gamma: &[Elem]) -> usize {
        self.join_all(gamma.iter().enumerate().map(|(x, &r)| self.act(r, x)))
    }

    /// `(Q^X, ⊗)` with the pointwise action, carried by codec indices.
    pub fn free(q: &Quantale, n: usize, cap: u64) -> Result<QModule, TowerError> {
        let p = crate::monads::base::Powers::new(q, n, cap)?;
        let size = p.len();
        let mut join = Vec::with_capacity(size * size);
        for a in &p.tables {
            for b in &p.tables {
                join.push(p.index(&crate::fuzzy::join_tables(q, a, b)));
            }
        }
        let mut action = Vec::with_capacity(q.size() * size);
        for r in q.elements() {
            for g in &p.tables {
                action.push(p.index(&g.iter().map(|&v| q.tensor(r, v)).collect::<Vec<_>>()));
            }
        }
        Ok(QModule { size, join, bottom: p.index(&vec![q.bottom(); n]), action })
    }

    fn well_formed(&self, q: &Quantale) -> Result<(), AlgebraError> {
        let n = self.size;
        let ok = self.join.len() == n * n
            && self.action.len() == q.size() * n
            && (n == 0 || self.bottom < n)
            && self.join.iter().chain(&self.action).all(|&v| v < n);
        if ok && n > 0 {
            Ok(())
        } else {
            Err(AlgebraError::Malformed(format!("module tables do not fit a carrier of size {n}")))
        }
    }
}

/// A Q-valued relation `o[x * size + y] = o(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QOrder {
    pub size: usize,
    pub o: Vec<Elem>,
}

impl QOrder {
    pub fn get(&self, x: usize, y: usize) -> Elem {
        self.o[x * self.size + y]
    }
}

/// Lattice axioms of the join table and the four action axioms.
pub fn qmodule_checks(q: &Quantale, m: &QModule) -> Vec<Check> {
    if let Err(e) = m.well_formed(q) {
        return vec![Check::fail("well-formed", 1, json!(e.to_string()))];
    }
    let n = m.size;
    let mut lattice = Tally::new("join-semilattice-with-bottom");
    let mut unit = Tally::new("action-unit");
    let mut assoc = Tally::new("action-associativity");
    let mut right = Tally::new("action-preserves-joins-in-module");
    let mut left = Tally::new("action-preserves-joins-in-quantale");
    for x in 0..n {
        lattice.case(m.join(x, x) == x && m.join(m.bottom, x) == x, || json!({"x": x}));
        for y in 0..n {
            lattice.case(m.join(x, y) == m.join(y, x), || json!({"x": x, "y": y}));
            for z in 0..n {
                let ok = m.join(m.join(x, y), z) == m.join(x, m.join(y, z));
                lattice.case(ok, || json!({"x": x, "y": y, "z": z}));
            }
        }
    }
    for x in 0..n {
        unit.case(m.act(q.unit(), x) == x, || json!({"x": x, "k*x": m.act(q.unit(), x)}));
        left.case(m.act(q.bottom(), x) == m.bottom, || json!({"r": q.label(q.bottom()), "x": x}));
        for r in q.elements() {
            right.case(m.act(r, m.bottom) == m.bottom, || json!({"r": q.label(r), "x": "bottom"}));
            for s in q.elements() {
                let ok = m.act(s, m.act(r, x)) == m.act(q.tensor(s, r), x);
                assoc.case(ok, || json!({"s": q.label(s), "r": q.label(r), "x": x}));
                let ok = m.act(q.join(r, s), x) == m.join(m.act(r, x), m.act(s, x));
                left.case(ok, || json!({"r": q.label(r), "s": q.label(s), "x": x}));
            }
            for y in 0..n {
                let ok = m.act(r, m.join(x, y)) == m.join(m.act(r, x), m.act(r, y));
                right.case(ok, || json!({"r": q.label(r), "x": x, "y": y}));
            }
        }
    }
    vec![lattice.finish(), unit.finish(), assoc.finish(), right.finish(), left.finish()]
}

pub fn qmodule_check(q: &Quantale, m: &QModule) -> VerificationReport {
    let mut report = VerificationReport::new("qmodule", q.name(), Params::default());
    report.extend(qmodule_checks(q, m));
    report
}

pub fn is_qmodule(q: &Quantale, m: &QModule) -> bool {
    qmodule_checks(q, m).iter().all(|c| !c.is_fail())
}

/// `o(x, y) = ⋁{r : r ⊗ x ≤ y}`.
pub fn order_from_module(q: &Quantale, m: &QModule) -> QOrder {
    let n = m.size;
    let o = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            q.join_all(q.elements().filter(|&r| m.leq(m.act(r, x), y)))
        })
        .collect();
    QOrder { size: n, o }
}

/// Every `a` with `o(a, y) = ⋀_x o(x, y) ⧸ γ(x)` for all `y`.
pub fn qorder_sups(q: &Quantale, o: &QOrder, gamma: &[Elem]) -> Vec<usize> {
    let n = o.size;
    let target: Vec<Elem> = (0..n).map(|y| q.meet_all((0..n).map(|x| q.ldd(o.get(x, y), gamma[x])))).collect();
    (0..n).filter(|&a| (0..n).all(|y| o.get(a, y) == target[y])).collect()
}

/// The supremum of `γ`; `None` when it does not exist. Separatedness makes
/// it unique.
pub fn qorder_sup(q: &Quantale, o: &QOrder, gamma: &[Elem]) -> Result<Option<usize>, AlgebraError> {
    match qorder_sups(q, o, gamma)[..] {
        [] => Ok(None),
        [a] => Ok(Some(a)),
        [a, b, ..] => Err(AlgebraError::NotSeparated(a, b)),
    }
}

pub fn is_separated(q: &Quantale, o: &QOrder) -> Result<(), AlgebraError> {
    for x in 0..o.size {
        for y in x + 1..o.size {
            if q.leq(q.unit(), q.meet(o.get(x, y), o.get(y, x))) {
                return Err(AlgebraError::NotSeparated(x, y));
            }
        }
    }
    Ok(())
}

/// Joins from `x ≤ y ⟺ k ≤ o(x, y)` and action `r ⊗ x = sup r_x`.
pub fn module_from_order(q: &Quantale, o: &QOrder, cap: u64) -> Result<QModule, AlgebraError> {
    let n = o.size;
    if o.o.len() != n * n || n == 0 {
        return Err(AlgebraError::Malformed(format!("order table does not fit a carrier of size {n}")));
    }
    is_separated(q, o)?;
    let sup = |g: &[Elem]| qorder_sup(q, o, g)?.ok_or_else(|| AlgebraError::NotCocomplete(g.to_vec()));
    for g in crate::towers::enumerate_tables(q.size(), n, cap)? {
        sup(&g)?;
    }
    let point = |r: Elem, xs: &[usize]| {
        let mut t = vec![q.bottom(); n];
        for &x in xs {
            t[x] = r;
        }
        t
    };
    let mut join = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            join.push(sup(&point(q.unit(), &[x, y]))?);
        }
    }
    let mut action = Vec::with_capacity(q.size() * n);
    for r in q.elements() {
        for x in 0..n {
            action.push(sup(&point(r, &[x]))?);
        }
    }
    Ok(QModule { size: n, join, bottom: sup(&point(q.bottom(), &[]))?, action })
}

/// Join tables of all lattice orders on `0..n`, labelled.
pub fn enumerate_lattices(n: usize, cap: u64) -> Result<Vec<(Vec<usize>, usize)>, TowerError> {
    let count = pow_checked(2, n * n).filter(|&c| c <= cap).ok_or_else(|| TowerError::CapExceeded {
        level: 1,
        cardinality: format!("2^{}", n * n),
        cap,
    })?;
    Ok((0..count)
        .into_par_iter()
        .filter_map(|bits| {
            let le = |x: usize, y: usize| bits >> (x * n + y) & 1 == 1;
            let reflexive = (0..n).all(|x| le(x, x));
            let antisym = (0..n).all(|x| (0..n).all(|y| x == y || !(le(x, y) && le(y, x))));
            let trans = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(le(x, y) && le(y, z)) || le(x, z))));
            if !(reflexive && antisym && trans) {
                return None;
            }
            let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x)))?;
            let mut join = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let ubs: Vec<usize> = (0..n).filter(|&u| le(x, u) && le(y, u)).collect();
                    join.push(*ubs.iter().find(|&&u| ubs.iter().all(|&v| le(u, v)))?);
                }
            }
            Some((join, bottom))
        })
        .collect())
}

/// Every Q-module on `0..n`: lattice orders times action tables.
pub fn enumerate_qmodules(q: &Quantale, n: usize, cap: u64) -> Result<Vec<QModule>, TowerError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let lattices = enumerate_lattices(n, cap)?;
    let len = q.size() * n;
    let count = pow_checked(n, len).filter(|&c| c <= cap).ok_or_else(|| TowerError::CapExceeded {
        level: 1,
        cardinality: format!("{n}^{len}"),
        cap,
    })?;
    Ok(lattices
        .iter()
        .flat_map(|(join, bottom)| {
            (0..count)
                .into_par_iter()
                .filter_map(|i| {
                    let action = decode(n, len, i).into_iter().map(usize::from).collect();
                    let m = QModule { size: n, join: join.clone(), bottom: *bottom, action };
                    is_qmodule(q, &m).then_some(m)
                })
                .collect::<Vec<_>>()
        })
        .collect())
}

/// Module ⟷ order roundtrips, Q-order axioms, and `sup` against
/// `⋁ γ(x) ⊗ x`, over every module at sizes up to `max_size`.
pub fn verify_module_order(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("module-order-roundtrip", q.name(), params.clone());
    let mut axioms = Tally::new("qorder-axioms");
    let mut sep = Tally::new("induced-order-separated");
    let mut there = Tally::new("module-order-module");
    let mut back = Tally::new("order-module-order");
    let mut sups = Tally::new("sup-matches-action-formula");
    let mut counts = Vec::new();
    for n in 1..=params.max_size {
        let Ok(mods) = enumerate_qmodules(q, n, params.cap) else { continue };
        counts.push(format!("|X|={n}: {}", mods.len()));
        let Ok(gammas) = crate::towers::enumerate_tables(q.size(), n, params.cap) else { continue };
        let gammas: Vec<Vec<Elem>> = gammas.collect();
        for m in &mods {
            let o = order_from_module(q, m);
            for x in 0..n {
                axioms.case(q.leq(q.unit(), o.get(x, x)), || json!({"module": m, "x": x}));
                for y in 0..n {
                    for z in 0..n {
                        let ok = q.leq(q.tensor(o.get(y, z), o.get(x, y)), o.get(x, z));
                        axioms.case(ok, || json!({"module": m, "x": x, "y": y, "z": z}));
                    }
                }
            }
            let s = is_separated(q, &o);
            sep.case(s.is_ok(), || json!({"module": m, "error": s.as_ref().unwrap_err().to_string()}));
            let rt = module_from_order(q, &o, params.cap);
            there.case(rt.as_ref() == Ok(m), || json!({"module": m, "roundtrip": format!("{rt:?}")}));
            if let Ok(m2) = &rt {
                let o2 = order_from_module(q, m2);
                back.case(o2 == o, || json!({"order": o, "roundtrip": o2}));
            }
            for g in &gammas {
                let s = qorder_sup(q, &o, g);
                sups.case(s == Ok(Some(m.sup(g))), || json!({"module": m, "gamma": g, "qorder-sup": format!("{s:?}")}));
            }
        }
    }
    let sep = sep.finish().note(format!("module counts {}", counts.join(", ")));
    report.extend([axioms.finish(), sep, there.finish(), back.finish(), sups.finish()]);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin_quantale;
    use crate::towers::DEFAULT_CAP;

    fn chain2(q: &Quantale) -> QModule {
        // 0 < 1, r ⊗ x = x when k ≤ r in bool
        let action = q.elements().flat_map(|r| (0..2).map(move |x| if r == 0 { 0 } else { x })).collect();
        QModule { size: 2, join: vec![0, 1, 1, 1], bottom: 0, action }
    }

    #[test]
    fn free_module_is_a_module() {
        for name in ["bool", "lukasiewicz:3", "endo:3"] {
            let q = builtin_quantale(name).unwrap();
            for n in 0..=if name == "bool" { 2 } else { 1 } {
                let m = QModule::free(&q, n, DEFAULT_CAP).unwrap();
                assert!(qmodule_check(&q, &m).passed(), "{name} {n}");
            }
        }
    }

    #[test]
    fn one_point_and_chain() {
        let q = builtin_quantale("bool").unwrap();
        let one = QModule { size: 1, join: vec![0], bottom: 0, action: vec![0, 0] };
        assert!(is_qmodule(&q, &one));
        assert_eq!(order_from_module(&q, &one).o, vec![1]);
        let m = chain2(&q);
        assert!(is_qmodule(&q, &m));
        let o = order_from_module(&q, &m);
        assert_eq!((o.get(0, 1), o.get(1, 0)), (1, 0));
        assert_eq!(module_from_order(&q, &o, DEFAULT_CAP).unwrap(), m);
        let mut bad = m.clone();
        bad.action[3] = 0;
        let r = qmodule_check(&q, &bad);
        assert!(r.check("action-unit").unwrap().is_fail());
    }

    #[test]
    fn free_order_is_pointwise_implication() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        let m = QModule::free(&q, 1, DEFAULT_CAP).unwrap();
        let o = order_from_module(&q, &m);
        for g in 0..3u8 {
            for d in 0..3u8 {
                assert_eq!(o.get(g as usize, d as usize), q.ldd(d, g));
            }
        }
    }

    #[test]
    fn sup_examples() {
        let q = builtin_quantale("bool").unwrap();
        let o = order_from_module(&q, &chain2(&q));
        assert_eq!(qorder_sup(&q, &o, &[1, 0]).unwrap(), Some(0));
        assert_eq!(qorder_sup(&q, &o, &[0, 0]).unwrap(), Some(0));
        assert_eq!(qorder_sup(&q, &o, &[1, 1]).unwrap(), Some(1));
        let flat = QOrder { size: 2, o: vec![1, 1, 1, 1] };
        assert_eq!(module_from_order(&q, &flat, DEFAULT_CAP), Err(AlgebraError::NotSeparated(0, 1)));
        let one = QOrder { size: 1, o: vec![1] };
        let m = module_from_order(&q, &one, DEFAULT_CAP).unwrap();
        assert_eq!(m, QModule { size: 1, join: vec![0], bottom: 0, action: vec![0, 0] });
    }

    #[test]
    fn module_counts_and_roundtrip() {
        let q = builtin_quantale("bool").unwrap();
        assert_eq!(enumerate_lattices(3, DEFAULT_CAP).unwrap().len(), 6);
        assert_eq!(enumerate_qmodules(&q, 2, DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(enumerate_qmodules(&q, 3, DEFAULT_CAP).unwrap().len(), 6);
        let r = verify_module_order(&q, &Params::default());
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn json_roundtrip() {
        let q = builtin_quantale("bool").unwrap();
        let m = chain2(&q);
        let back: QModule = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
