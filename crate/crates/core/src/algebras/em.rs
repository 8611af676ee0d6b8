use super::{enumerate_qmodules, is_qmodule, QModule};
use crate::fuzzy::{image, labels, PointMap};
use crate::monads::base::{self, Powers};
use crate::quantale::{Elem, Quantale};
use crate::report::{Check, Params, Tally, VerificationReport};
use crate::towers::{decode, derive_seed, pow_checked, Tower, TowerError, Value};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

/// An `exp_Q`-algebra on `0..size`: `h[i]` is the image of the table of
/// `Q^size` with codec index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmAlgebra {
    pub size: usize,
    pub h: Vec<usize>,
}

impl EmAlgebra {
    pub fn apply(&self, q: &Quantale, gamma: &[Elem]) -> usize {
        self.h[crate::towers::encode(q.size(), gamma) as usize]
    }

    /// `r ⊗ x = h(r_x)` and `x ∨ y = h({x, y})`.
    pub fn derived_module(&self, q: &Quantale) -> QModule {
        let n = self.size;
        let pt = |pairs: &[(usize, Elem)]| {
            let mut t = vec![q.bottom(); n];
            for &(x, r) in pairs {
                t[x] = q.join(t[x], r);
            }
            self.apply(q, &t)
        };
        let k = q.unit();
        QModule {
            size: n,
            join: (0..n * n).map(|i| pt(&[(i / n, k), (i % n, k)])).collect(),
            bottom: pt(&[]),
            action: q.elements().flat_map(|r| (0..n).map(move |x| (r, x))).map(|(r, x)| pt(&[(x, r)])).collect(),
        }
    }

    /// The algebra `γ ↦ ⋁ γ(x) ⊗ x` of a module.
    pub fn from_module(q: &Quantale, m: &QModule, cap: u64) -> Result<EmAlgebra, TowerError> {
        let p = Powers::new(q, m.size, cap)?;
        Ok(EmAlgebra { size: m.size, h: p.tables.iter().map(|g| m.sup(g)).collect() })
    }
}

/// The arguments of the associativity square: every `Λ ∈ Q^{Q^X}` when
/// enumerable, otherwise seeded samples.
struct Inputs {
    p1: Powers,
    bigs: Vec<Vec<Elem>>,
    exhaustive: bool,
}

impl Inputs {
    fn new(q: &Quantale, n: usize, params: &Params) -> Result<Inputs, TowerError> {
        let p1 = Powers::new(q, n, params.cap)?;
        let t = Tower::new(q.size(), n, params.cap, params.seed);
        let (bigs, exhaustive) = match t.enumerate(2) {
            Ok(it) => (it.map(|v| table(&t, v)).collect(), true),
            Err(_) => {
                let s = t.sample(2, params.samples, derive_seed(params.seed, 900 + n as u64));
                (s.into_iter().map(|v| table(&t, v)).collect(), false)
            }
        };
        Ok(Inputs { p1, bigs, exhaustive })
    }
}

fn table(t: &Tower, v: Value) -> Vec<Elem> {
    t.materialize(2, &v).expect("Q^X is enumerable").to_vec()
}

/// First violated diagram: `h ∘ e = id`, then `h ∘ T h = h ∘ m`.
fn em_violation(q: &Quantale, inp: &Inputs, h: &[usize]) -> Option<Json> {
    let n = inp.p1.n;
    for x in 0..n {
        let got = h[inp.p1.index(&base::unit_e(q, n, x))];
        if got != x {
            return Some(json!({"diagram": "unit", "x": x, "h(e(x))": got}));
        }
    }
    let hm = PointMap { images: h.to_vec(), codomain: n };
    for (i, big) in inp.bigs.iter().enumerate() {
        let lhs = h[inp.p1.index(&image(q, &hm, big))];
        let rhs = h[inp.p1.index(&base::mult_m(q, &inp.p1, big))];
        if lhs != rhs {
            return Some(
                json!({"diagram": "associativity", "Lambda": i, "Lambda-table": labels(q, big), "h.Th": lhs, "h.m": rhs}),
            );
        }
    }
    None
}

/// The two algebra diagrams, the derived module and `h(γ) = ⋁ γ(x) ⊗ x`.
pub fn em_check_base(q: &Quantale, a: &EmAlgebra, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("em-algebra", q.name(), params.clone());
    let inp = match Inputs::new(q, a.size, params) {
        Ok(i) => i,
        Err(e) => {
            report.push(Check::with_status("algebra-diagrams", crate::report::Status::Vacuous, 0, e.to_string()));
            return report;
        }
    };
    let mut unit = Tally::new("unit-diagram");
    let mut assoc = Tally::new("associativity-diagram");
    let n = a.size;
    for x in 0..n {
        let got = a.h[inp.p1.index(&base::unit_e(q, n, x))];
        unit.case(got == x, || json!({"x": x, "h(e(x))": got}));
    }
    let hm = PointMap { images: a.h.clone(), codomain: n };
    for (i, big) in inp.bigs.iter().enumerate() {
        let lhs = a.h[inp.p1.index(&image(q, &hm, big))];
        let rhs = a.h[inp.p1.index(&base::mult_m(q, &inp.p1, big))];
        assoc.case(lhs == rhs, || json!({"Lambda": i, "h.Th": lhs, "h.m": rhs}));
    }
    let mut assoc = assoc.finish();
    if !inp.exhaustive {
        assoc = assoc.note(format!("{} seeded samples", inp.bigs.len()));
    }
    report.extend([unit.finish(), assoc]);
    let m = a.derived_module(q);
    report.extend(super::qmodule_checks(q, &m).into_iter().map(|mut c| {
        c.name = format!("derived-{}", c.name);
        c
    }));
    let mut sup = Tally::new("h-is-sup");
    for g in &inp.p1.tables {
        let (lhs, rhs) = (a.apply(q, g), m.sup(g));
        sup.case(lhs == rhs, || json!({"gamma": labels(q, g), "h": lhs, "sup": rhs}));
    }
    report.push(sup.finish());
    report
}

/// Every `h: Q^n → n` satisfying both algebra diagrams, in codec order.
pub fn enumerate_em_algebras(q: &Quantale, n: usize, params: &Params) -> Result<Vec<EmAlgebra>, TowerError> {
    let inp = Inputs::new(q, n, params)?;
    let len = inp.p1.len();
    let count = candidates(n, len, params.cap)?;
    Ok((0..count)
        .into_par_iter()
        .filter_map(|i| {
            let h: Vec<usize> = decode(n, len, i).into_iter().map(usize::from).collect();
            em_violation(q, &inp, &h).is_none().then_some(EmAlgebra { size: n, h })
        })
        .collect())
}

fn candidates(n: usize, len: usize, cap: u64) -> Result<u64, TowerError> {
    pow_checked(n, len).filter(|&c| c <= cap).ok_or_else(|| TowerError::CapExceeded {
        level: 1,
        cardinality: format!("{n}^{len}"),
        cap,
    })
}

/// Counts, and over every candidate `h`: `h` is an algebra iff its derived
/// structure is a module with `h = sup`. Modules enumerated independently
/// must give exactly the algebras found.
pub fn verify_em_base(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("em-base", q.name(), params.clone());
    let mut iff = Tally::new("algebra-iff-module");
    let mut bij = Tally::new("algebras-match-modules");
    let mut free = Tally::new("free-algebra");
    let mut counts = Vec::new();
    for n in 0..=params.max_size {
        let Ok(inp) = Inputs::new(q, n, params) else { continue };
        let len = inp.p1.len();
        let Ok(count) = candidates(n, len, params.cap) else { continue };
        let verdicts: Vec<(u64, bool, bool)> = (0..count)
            .into_par_iter()
            .map(|i| {
                let h: Vec<usize> = decode(n, len, i).into_iter().map(usize::from).collect();
                let a = EmAlgebra { size: n, h };
                let is_em = em_violation(q, &inp, &a.h).is_none();
                let m = a.derived_module(q);
                let as_module = is_qmodule(q, &m) && inp.p1.tables.iter().all(|g| a.apply(q, g) == m.sup(g));
                (i, is_em, as_module)
            })
            .collect();
        for &(i, e, m) in &verdicts {
            iff.case(e == m, || json!({"size": n, "h": decode(n, len, i), "algebra": e, "module": m}));
        }
        let algebras: Vec<Vec<usize>> = verdicts
            .iter()
            .filter(|v| v.1)
            .map(|v| decode(n, len, v.0).into_iter().map(usize::from).collect())
            .collect();
        counts.push(format!("|X|={n}: {}", algebras.len()));
        if let Ok(mods) = enumerate_qmodules(q, n, params.cap) {
            let mut from_mods: Vec<Vec<usize>> =
                mods.iter().filter_map(|m| EmAlgebra::from_module(q, m, params.cap).ok()).map(|a| a.h).collect();
            from_mods.sort();
            let mut sorted = algebras.clone();
            sorted.sort();
            bij.case(from_mods == sorted, || json!({"size": n, "algebras": sorted.len(), "modules": from_mods.len()}));
        }
    }
    // (Q^Z, m_Z) for small Z
    for z in 0..=params.max_size.min(1) {
        let Ok(pz) = Powers::new(q, z, params.cap) else { continue };
        let Ok(inp) = Inputs::new(q, pz.len(), params) else { continue };
        let h: Vec<usize> = inp.p1.tables.iter().map(|big| pz.index(&base::mult_m(q, &pz, big))).collect();
        let v = em_violation(q, &inp, &h);
        free.case(v.is_none(), || json!({"Z": z, "violation": v}));
    }
    let iff = iff.finish().note(format!("algebra counts {}", counts.join(", ")));
    report.extend([iff, bij.finish(), free.finish()]);
    report
}

/// Algebras of `U`: `α ↙ γ ≤ α(sup γ)` for every `γ`.
pub fn is_u_algebra_sup(q: &Quantale, m: &QModule, alpha: &[Elem], p: &Powers) -> bool {
    p.tables.iter().all(|g| q.leq(q.swarrow(alpha, g), alpha[m.sup(g)]))
}

/// Algebras of `U`: (i) `⋀_{x ∈ A} α(x) ≤ α(⋁A)`, (ii) `α(x) ⧸ r ≤ α(r ⊗ x)`.
pub fn is_u_algebra_conditions(q: &Quantale, m: &QModule, alpha: &[Elem]) -> bool {
    let n = m.size;
    let subsets_ok = (0u64..1 << n).all(|bits| {
        let a: Vec<usize> = (0..n).filter(|&x| bits >> x & 1 == 1).collect();
        q.leq(q.meet_all(a.iter().map(|&x| alpha[x])), alpha[m.join_all(a.iter().copied())])
    });
    subsets_ok && (0..n).all(|x| q.elements().all(|r| q.leq(q.ldd(alpha[x], r), alpha[m.act(r, x)])))
}

/// Both characterizations of `U`-algebras on one module and fuzzy set.
pub fn em_check_goguen(q: &Quantale, m: &QModule, alpha: &[Elem], cap: u64) -> Result<(bool, bool), TowerError> {
    let p = Powers::new(q, m.size, cap)?;
    Ok((is_u_algebra_sup(q, m, alpha, &p), is_u_algebra_conditions(q, m, alpha)))
}

/// The two characterizations agree on every module and every `α`.
pub fn verify_em_goguen(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("em-goguen", q.name(), params.clone());
    let mut agree = Tally::new("characterizations-agree");
    let mut top = Tally::new("constant-top-is-algebra");
    let mut found = 0u64;
    for n in 1..=params.max_size {
        let (Ok(mods), Ok(p)) = (enumerate_qmodules(q, n, params.cap), Powers::new(q, n, params.cap)) else { continue };
        for m in &mods {
            for alpha in &p.tables {
                let a = is_u_algebra_sup(q, m, alpha, &p);
                let b = is_u_algebra_conditions(q, m, alpha);
                found += a as u64;
                agree
                    .case(a == b, || json!({"module": m, "alpha": labels(q, alpha), "sup-closed": a, "conditions": b}));
            }
            let t = vec![q.top(); n];
            top.case(is_u_algebra_sup(q, m, &t, &p), || json!({"module": m}));
        }
    }
    report.push(agree.finish().note(format!("{found} U-algebras")));
    report.push(top.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin_quantale;

    fn p() -> Params {
        Params::default()
    }

    #[test]
    fn counts() {
        let b = builtin_quantale("bool").unwrap();
        assert_eq!(enumerate_em_algebras(&b, 0, &p()).unwrap().len(), 0);
        assert_eq!(enumerate_em_algebras(&b, 1, &p()).unwrap().len(), 1);
        assert_eq!(enumerate_em_algebras(&b, 2, &p()).unwrap().len(), 2);
        assert_eq!(enumerate_em_algebras(&b, 3, &p()).unwrap().len(), 6);
        for name in ["lukasiewicz:3", "godel:4", "endo:3"] {
            let q = builtin_quantale(name).unwrap();
            assert_eq!(enumerate_em_algebras(&q, 1, &p()).unwrap().len(), 1, "{name}");
        }
    }

    #[test]
    fn join_of_true_coordinates() {
        let b = builtin_quantale("bool").unwrap();
        // x < y: h(∅)=x, h({x})=x, h({y})=y, h({x,y})=y; codec order 00, 10, 01, 11
        let a = EmAlgebra { size: 2, h: vec![0, 0, 1, 1] };
        let r = em_check_base(&b, &a, &p());
        assert!(r.passed(), "{}", r.summary());
        let m = a.derived_module(&b);
        assert_eq!((m.join, m.bottom), (vec![0, 1, 1, 1], 0));
        let bad = EmAlgebra { size: 2, h: vec![0, 1, 0, 1] };
        let r = em_check_base(&b, &bad, &p());
        assert!(r.check("unit-diagram").unwrap().is_fail());
    }

    #[test]
    fn suites() {
        for name in ["bool", "lukasiewicz:3", "endo:3"] {
            let q = builtin_quantale(name).unwrap();
            let params = Params { max_size: if name == "bool" { 3 } else { 2 }, ..p() };
            let r = verify_em_base(&q, &params);
            assert!(r.passed(), "{}", r.summary());
            let r = verify_em_goguen(&q, &params);
            assert!(r.passed(), "{}", r.summary());
        }
    }
}
