//! Q-filters, their images, Kowalsky sums and the filter monad.

use crate::fuzzy::{labels, preimage, PointMap};
use crate::monads::base::Powers;
use crate::monads::{double, lift, Lift};
use crate::quantale::{Elem, Quantale};
use crate::report::{Check, Params, Status, Tally};
use crate::towers::{decode, derive_seed, encode, enumerate_maps, SplitMix64, Tower, TowerError, Value};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value as Json};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

/// Which axioms define a filter. Dropping F3 is a mutation control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FilterPredicate {
    #[default]
    Full,
    WithoutF3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    F1,
    F2,
    F3,
    F4,
}

/// A violated axiom, with the codec indices of the offending arguments
/// (for F4, the element `r`).
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("axiom {axiom:?} fails at {args:?}")]
pub struct FilterViolation {
    pub axiom: Axiom,
    pub args: Vec<u64>,
}

/// A functional on `Q^X` that has passed the axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QFilter {
    n: usize,
    table: Vec<Elem>,
}

impl QFilter {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// `{argument-index: element}` with carrier size and quantale name.
    pub fn to_json(&self, q: &Quantale) -> Json {
        let table: serde_json::Map<String, Json> =
            self.table.iter().enumerate().map(|(i, &e)| (i.to_string(), json!(q.label(e)))).collect();
        json!({"quantale": q.name(), "carrier_size": self.n, "table": table})
    }
}

/// Precomputed argument structure of `Q^X` for axiom checks.
#[derive(Debug, Clone)]
pub struct FilterSpace {
    pub powers: Powers,
    /// `γ_a ↙ γ_b` at `a * m + b`.
    sw: Vec<Elem>,
    meet: Vec<usize>,
    k_const: usize,
    consts: Vec<usize>,
}

impl FilterSpace {
    pub fn new(q: &Quantale, n: usize, cap: u64) -> Result<Self, TowerError> {
        let powers = Powers::new(q, n, cap)?;
        let m = powers.len();
        let mut sw = Vec::with_capacity(m * m);
        let mut meet = Vec::with_capacity(m * m);
        for a in &powers.tables {
            for b in &powers.tables {
                sw.push(q.swarrow(a, b));
                meet.push(powers.index(&crate::fuzzy::meet_tables(q, a, b)));
            }
        }
        let consts = q.elements().map(|r| powers.index(&vec![r; n])).collect();
        Ok(FilterSpace { k_const: powers.index(&vec![q.unit(); n]), powers, sw, meet, consts })
    }

    pub fn n(&self) -> usize {
        self.powers.n
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn check(&self, q: &Quantale, f: &[Elem], pred: FilterPredicate) -> Result<(), FilterViolation> {
        let m = self.len();
        let bad = |axiom, args: Vec<usize>| {
            Err(FilterViolation { axiom, args: args.into_iter().map(|a| a as u64).collect() })
        };
        if !q.leq(q.unit(), f[self.k_const]) {
            return bad(Axiom::F1, vec![self.k_const]);
        }
        for a in 0..m {
            for b in 0..m {
                if !q.leq(q.meet(f[a], f[b]), f[self.meet[a * m + b]]) {
                    return bad(Axiom::F2, vec![a, b]);
                }
            }
        }
        if pred == FilterPredicate::Full {
            for a in 0..m {
                for b in 0..m {
                    if !q.leq(self.sw[a * m + b], q.ldd(f[a], f[b])) {
                        return bad(Axiom::F3, vec![a, b]);
                    }
                }
            }
        }
        for (r, &c) in q.elements().zip(&self.consts) {
            if !q.leq(f[c], r) {
                return Err(FilterViolation { axiom: Axiom::F4, args: vec![r as u64] });
            }
        }
        Ok(())
    }

    /// F2 and F4 as equalities; `None` when both hold.
    pub fn sharpening(&self, q: &Quantale, f: &[Elem]) -> Option<FilterViolation> {
        let m = self.len();
        for a in 0..m {
            for b in 0..m {
                if q.meet(f[a], f[b]) != f[self.meet[a * m + b]] {
                    return Some(FilterViolation { axiom: Axiom::F2, args: vec![a as u64, b as u64] });
                }
            }
        }
        q.elements()
            .zip(&self.consts)
            .find(|&(r, &c)| f[c] != r)
            .map(|(r, _)| FilterViolation { axiom: Axiom::F4, args: vec![r as u64] })
    }

    pub fn certify(&self, q: &Quantale, table: Vec<Elem>, pred: FilterPredicate) -> Result<QFilter, FilterViolation> {
        assert_eq!(table.len(), self.len(), "functional has the wrong arity");
        self.check(q, &table, pred)?;
        Ok(QFilter { n: self.n(), table })
    }

    /// `η_X(x)`: `γ ↦ γ(x)`.
    pub fn evaluation(&self, x: usize) -> Vec<Elem> {
        self.powers.tables.iter().map(|g| g[x]).collect()
    }

    /// `γ ↦ ⋀_{s ∈ S} γ(s)`.
    pub fn meet_of_evaluations(&self, q: &Quantale, subset: &[usize]) -> Vec<Elem> {
        self.powers.tables.iter().map(|g| q.meet_all(subset.iter().map(|&s| g[s]))).collect()
    }
}

/// Checks F1–F4 for a functional on `Q^n` given as a table.
pub fn qfilter_axioms(
    q: &Quantale,
    n: usize,
    table: &[Elem],
    cap: u64,
) -> Result<Result<QFilter, FilterViolation>, TowerError> {
    let space = FilterSpace::new(q, n, cap)?;
    Ok(space.certify(q, table.to_vec(), FilterPredicate::Full))
}

/// Every functional on `Q^n` satisfying the predicate, in codec order.
pub fn enumerate_qfilters(q: &Quantale, n: usize, cap: u64, pred: FilterPredicate) -> Result<Vec<QFilter>, TowerError> {
    let space = FilterSpace::new(q, n, cap)?;
    enumerate_in(q, &space, cap, pred)
}

fn enumerate_in(
    q: &Quantale,
    space: &FilterSpace,
    cap: u64,
    pred: FilterPredicate,
) -> Result<Vec<QFilter>, TowerError> {
    let t = Tower::new(q.size(), space.n(), cap, 0);
    let count = t.enumerable(2).ok_or_else(|| TowerError::CapExceeded {
        level: 2,
        cardinality: t.space(2).cardinality().to_string(),
        cap,
    })?;
    let m = space.len();
    Ok((0..count).into_par_iter().filter_map(|i| space.certify(q, decode(q.size(), m, i), pred).ok()).collect())
}

/// `f(F)(γ) = F(γ ∘ f)`, re-certified on the codomain.
pub fn filter_image(
    q: &Quantale,
    target: &FilterSpace,
    f: &PointMap,
    filter: &QFilter,
    pred: FilterPredicate,
) -> Result<QFilter, FilterViolation> {
    target.certify(q, image_table(q, target, f, filter.table()), pred)
}

fn image_table(q: &Quantale, target: &FilterSpace, f: &PointMap, table: &[Elem]) -> Vec<Elem> {
    target.powers.tables.iter().map(|g| table[encode(q.size(), &preimage(f, g)) as usize]).collect()
}

/// `σ(𝔽)(λ) = 𝔽(λ̂)` with `λ̂(F) = F(λ)`, before certification.
fn kowalsky_table(q: &Quantale, space: &FilterSpace, filters: &[QFilter], big: &[Elem]) -> Vec<Elem> {
    (0..space.len())
        .map(|l| {
            let hat: Vec<Elem> = filters.iter().map(|f| f.table[l]).collect();
            big[encode(q.size(), &hat) as usize]
        })
        .collect()
}

/// The Kowalsky sum of a filter on `filters`, certified on `space`.
pub fn kowalsky_sum(
    q: &Quantale,
    space: &FilterSpace,
    filters: &[QFilter],
    big: &QFilter,
    pred: FilterPredicate,
) -> Result<QFilter, FilterViolation> {
    assert_eq!(big.n, filters.len(), "outer filter lives on the filter set");
    space.certify(q, kowalsky_table(q, space, filters, &big.table), pred)
}

/// `μ_X((i*i)_X(𝔽))` computed on the tower: `ℍ(Ξ) = 𝔽(Ξ ∘ i_X)`, then `μ`.
pub fn kowalsky_via_mu(q: &Quantale, t: &Arc<Tower>, filters: &[QFilter], big: &QFilter) -> Vec<Elem> {
    let tabs: Vec<Value> = filters.iter().map(|f| Value::table(f.table.clone())).collect();
    let outer: Arc<[Elem]> = big.table.clone().into();
    let (tower, qs) = (Arc::clone(t), q.size());
    let h = Value::procedural(move |xi| {
        let pulled: Vec<Elem> = tabs.iter().map(|f| tower.apply(3, xi, f)).collect();
        outer[encode(qs, &pulled) as usize]
    });
    t.materialize(2, &double::mult_mu(t, &h)).expect("Q^X is enumerable").to_vec()
}

fn filter_json(q: &Quantale, space: &FilterSpace, table: &[Elem]) -> Json {
    // nonbottom entries only, keyed by the argument table
    let entries: Vec<Json> = space
        .powers
        .tables
        .iter()
        .zip(table)
        .filter(|(_, &v)| v != q.bottom())
        .map(|(g, &v)| json!([labels(q, g), q.label(v)]))
        .collect();
    json!(entries)
}

fn violation_json(q: &Quantale, space: &FilterSpace, v: &FilterViolation) -> Json {
    let args: Vec<Json> = match v.axiom {
        Axiom::F4 => v.args.iter().map(|&r| json!(q.label(r as Elem))).collect(),
        _ => v.args.iter().map(|&a| json!(labels(q, &space.powers.tables[a as usize]))).collect(),
    };
    json!({"axiom": v.axiom, "args": args})
}

/// Outer filters on `space`: all of them when enumerable, otherwise meets of
/// evaluation filters over nonempty subsets (every filter, for `bool`).
fn outer_filters(
    q: &Quantale,
    space: &FilterSpace,
    params: &Params,
    pred: FilterPredicate,
) -> (Vec<QFilter>, Option<String>) {
    if let Ok(all) = enumerate_in(q, space, params.cap, pred) {
        return (all, None);
    }
    let n = space.n();
    let subsets: Vec<Vec<usize>> = if n < 12 && (1usize << n) <= params.samples.max(1) * 4 {
        (1..1usize << n).map(|bits| (0..n).filter(|&i| bits >> i & 1 == 1).collect()).collect()
    } else {
        let mut rng = SplitMix64::new(derive_seed(params.seed, 700 + n as u64));
        (0..params.samples)
            .map(|_| {
                let s: Vec<usize> = (0..n).filter(|_| rng.below(2) == 1).collect();
                if s.is_empty() {
                    vec![rng.below(n as u64) as usize]
                } else {
                    s
                }
            })
            .collect()
    };
    let count = subsets.len();
    let filters = subsets.iter().filter_map(|s| space.certify(q, space.meet_of_evaluations(q, s), pred).ok()).collect();
    (filters, Some(format!("{count} meets of evaluation filters on {n} points")))
}

struct Level {
    space: FilterSpace,
    filters: Vec<QFilter>,
    index: HashMap<Vec<Elem>, usize>,
}

impl Level {
    fn new(q: &Quantale, n: usize, params: &Params, pred: FilterPredicate) -> Option<Level> {
        let space = FilterSpace::new(q, n, params.cap).ok()?;
        let filters = enumerate_in(q, &space, params.cap, pred).ok()?;
        let index = filters.iter().enumerate().map(|(i, f)| (f.table.clone(), i)).collect();
        Some(Level { space, filters, index })
    }

    fn find(&self, t: &[Elem]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Counts, unit filterhood, F2/F4 equalities and closure under images.
pub fn qfilter_checks(q: &Quantale, params: &Params) -> Vec<Check> {
    let mut eta = Tally::new("eta-is-filter");
    let mut sharp = Tally::new("f2-f4-equalities");
    let mut image = Tally::new("filter-image-closed");
    let mut image_eta = Tally::new("filter-image-of-eta");
    let mut counts = Vec::new();
    let levels: Vec<Option<Level>> =
        (0..=params.max_size).map(|n| Level::new(q, n, params, FilterPredicate::Full)).collect();
    for (n, level) in levels.iter().enumerate() {
        let Some(lx) = level else { continue };
        counts.push(format!("|X|={n}: {}", lx.filters.len()));
        for x in 0..n {
            let r = lx.space.check(q, &lx.space.evaluation(x), FilterPredicate::Full);
            eta.case(r.is_ok(), || json!({"size": n, "x": x, "violation": r.clone().err()}));
        }
        for f in &lx.filters {
            let s = lx.space.sharpening(q, &f.table);
            sharp.case(s.is_none(), || {
                json!({"size": n, "filter": filter_json(q, &lx.space, &f.table), "violation": violation_json(q, &lx.space, s.as_ref().unwrap())})
            });
        }
        for (m, level_y) in levels.iter().enumerate() {
            let (Some(ly), Ok(maps)) = (level_y, enumerate_maps(n, m, params.cap)) else { continue };
            for images in maps {
                let f = PointMap { images, codomain: m };
                for filter in &lx.filters {
                    let r = filter_image(q, &ly.space, &f, filter, FilterPredicate::Full);
                    image.case(r.is_ok(), || {
                        json!({"f": f.images, "filter": filter_json(q, &lx.space, &filter.table),
                               "violation": violation_json(q, &ly.space, r.as_ref().unwrap_err())})
                    });
                }
                for x in 0..n {
                    let got = image_table(q, &ly.space, &f, &lx.space.evaluation(x));
                    image_eta.case(got == ly.space.evaluation(f.apply(x)), || json!({"f": f.images, "x": x}));
                }
            }
        }
    }
    let sharp = sharp.finish().note(format!("filter counts {}", counts.join(", ")));
    vec![eta.finish(), sharp, image.finish(), image_eta.finish()]
}

/// Closure of filters under Kowalsky sums, `σ = μ ∘ (i*i)`, and the two unit
/// laws of `σ`.
pub fn kowalsky_checks(q: &Quantale, params: &Params, pred: FilterPredicate) -> Vec<Check> {
    let mut closure = Tally::new("kowalsky-closure");
    let mut via_mu = Tally::new("kowalsky-equals-mu-ii");
    let mut unit_a = Tally::new("kowalsky-unit-eta-F");
    let mut unit_b = Tally::new("kowalsky-unit-F-eta");
    let mut notes = Vec::new();
    for n in 0..=params.max_size {
        let Some(lx) = Level::new(q, n, params, pred) else { continue };
        let Ok(outer_space) = FilterSpace::new(q, lx.filters.len(), params.cap) else {
            notes.push(format!("|X|={n}: Q^F(X) exceeds the cap"));
            continue;
        };
        let t = Tower::new(q.size(), n, params.cap, params.seed);
        let (outer, note) = outer_filters(q, &outer_space, params, pred);
        if let Some(note) = note {
            notes.push(format!("|X|={n}: {note}"));
        }
        for big in &outer {
            let sigma = kowalsky_table(q, &lx.space, &lx.filters, &big.table);
            let r = lx.space.check(q, &sigma, pred);
            closure.case(r.is_ok(), || {
                json!({"size": n, "outer": filter_json(q, &outer_space, &big.table),
                       "sigma": filter_json(q, &lx.space, &sigma), "violation": violation_json(q, &lx.space, r.as_ref().unwrap_err())})
            });
            let mu = kowalsky_via_mu(q, &t, &lx.filters, big);
            via_mu.case(mu == sigma, || json!({"size": n, "sigma": labels(q, &sigma), "mu-ii": labels(q, &mu)}));
        }
        // η_X as a point map into the filter set
        let eta_idx: Vec<Option<usize>> = (0..n).map(|x| lx.find(&lx.space.evaluation(x))).collect();
        for (i, f) in lx.filters.iter().enumerate() {
            let e = outer_space.evaluation(i);
            let got = kowalsky_table(q, &lx.space, &lx.filters, &e);
            unit_a.case(got == f.table, || json!({"size": n, "filter": i, "got": labels(q, &got)}));
            if let Some(images) = eta_idx.iter().copied().collect::<Option<Vec<usize>>>() {
                let eta = PointMap { images, codomain: lx.filters.len() };
                let pushed = image_table(q, &outer_space, &eta, &f.table);
                let got = kowalsky_table(q, &lx.space, &lx.filters, &pushed);
                unit_b.case(got == f.table, || json!({"size": n, "filter": i, "got": labels(q, &got)}));
            }
        }
    }
    let mut closure = closure.finish();
    if !notes.is_empty() {
        closure = closure.note(notes.join("; "));
    }
    vec![closure, via_mu.finish(), unit_a.finish(), unit_b.finish()]
}

/// Associativity and naturality of `(F_Q, σ, η)`.
fn filter_laws(q: &Quantale, params: &Params) -> Vec<Check> {
    let mut assoc = Tally::new("associativity");
    let mut nat_eta = Tally::new("naturality-eta");
    let mut nat_sigma = Tally::new("naturality-sigma");
    let mut notes = Vec::new();
    let pred = FilterPredicate::Full;
    let levels: Vec<Option<Level>> = (0..=params.max_size).map(|n| Level::new(q, n, params, pred)).collect();
    let seconds: Vec<Option<Level>> =
        levels.iter().map(|l| l.as_ref().and_then(|l| Level::new(q, l.filters.len(), params, pred))).collect();

    for (n, (l1, l2)) in levels.iter().zip(&seconds).enumerate() {
        let (Some(l1), Some(l2)) = (l1, l2) else {
            notes.push(format!("|X|={n}: second filter level exceeds the cap"));
            continue;
        };
        let sig = |big: &[Elem]| kowalsky_table(q, &l1.space, &l1.filters, big);
        // σ_X as a point map F_Q(F_Q X) → F_Q X
        let Some(sigma_map) = l2.filters.iter().map(|f| l1.find(&sig(&f.table))).collect::<Option<Vec<usize>>>() else {
            notes.push(format!("|X|={n}: sigma leaves the filter set"));
            continue;
        };
        let sigma_map = PointMap { images: sigma_map, codomain: l1.filters.len() };
        let Ok(third) = FilterSpace::new(q, l2.filters.len(), params.cap) else {
            notes.push(format!("|X|={n}: third filter level exceeds the cap"));
            continue;
        };
        let (ks, note) = outer_filters(q, &third, params, pred);
        if let Some(note) = note {
            notes.push(format!("|X|={n}: {note}"));
        }
        for (i, k) in ks.iter().enumerate() {
            let lhs = sig(&kowalsky_table(q, &l2.space, &l2.filters, &k.table));
            let rhs = sig(&image_table(q, &l2.space, &sigma_map, &k.table));
            assoc.case(
                lhs == rhs,
                || json!({"size": n, "K": i, "sigma.sigma_F": labels(q, &lhs), "sigma.Fsigma": labels(q, &rhs)}),
            );
        }
    }

    for (n, lx) in levels.iter().enumerate() {
        let Some(lx) = lx else { continue };
        let Ok(outer_x) = FilterSpace::new(q, lx.filters.len(), params.cap) else { continue };
        let (outer, _) = outer_filters(q, &outer_x, params, pred);
        for (m, ly) in levels.iter().enumerate() {
            let (Some(ly), Ok(maps)) = (ly, enumerate_maps(n, m, params.cap)) else { continue };
            let Ok(outer_y) = FilterSpace::new(q, ly.filters.len(), params.cap) else { continue };
            for images in maps {
                let f = PointMap { images, codomain: m };
                for x in 0..n {
                    let got = image_table(q, &ly.space, &f, &lx.space.evaluation(x));
                    nat_eta.case(got == ly.space.evaluation(f.apply(x)), || json!({"f": f.images, "x": x}));
                }
                let Some(ff) = lx
                    .filters
                    .iter()
                    .map(|g| ly.find(&image_table(q, &ly.space, &f, &g.table)))
                    .collect::<Option<Vec<usize>>>()
                else {
                    continue;
                };
                let ff = PointMap { images: ff, codomain: ly.filters.len() };
                for (i, big) in outer.iter().enumerate() {
                    let lhs = image_table(q, &ly.space, &f, &kowalsky_table(q, &lx.space, &lx.filters, &big.table));
                    let pushed = image_table(q, &outer_y, &ff, &big.table);
                    let rhs = kowalsky_table(q, &ly.space, &ly.filters, &pushed);
                    nat_sigma.case(lhs == rhs, || {
                        json!({"f": f.images, "outer": i, "Ff.sigma": labels(q, &lhs), "sigma.FFf": labels(q, &rhs)})
                    });
                }
            }
        }
    }
    let mut assoc = assoc.finish();
    if !notes.is_empty() {
        assoc = assoc.note(notes.join("; "));
    }
    vec![assoc, nat_eta.finish(), nat_sigma.finish()]
}

/// Goguen conditions of the filter monad with membership `(α†↑)↑`
/// restricted to filters.
pub fn filter_lifting(q: &Quantale, params: &Params) -> Vec<Check> {
    let mut unit_g = Tally::new("unit-goguen");
    let mut mult_g = Tally::new("mult-goguen");
    let mut functor = Tally::new("functor-goguen");
    let pred = FilterPredicate::Full;
    let levels: Vec<Option<Level>> = (0..=params.max_size).map(|n| Level::new(q, n, params, pred)).collect();
    for (n, lx) in levels.iter().enumerate() {
        let Some(lx) = lx else { continue };
        let p = &lx.space.powers;
        let outer = FilterSpace::new(q, lx.filters.len(), params.cap).ok();
        let outer_filters = outer.as_ref().map(|o| outer_filters(q, o, params, pred).0).unwrap_or_default();
        for alpha in &p.tables {
            let dag = lift(q, p, alpha, Lift::Dag);
            let memb: Vec<Elem> = lx.filters.iter().map(|f| q.swarrow(&f.table, &dag)).collect();
            for x in 0..n {
                let v = q.swarrow(&lx.space.evaluation(x), &dag);
                unit_g.case(q.leq(alpha[x], v), || json!({"size": n, "alpha": labels(q, alpha), "x": x}));
            }
            if let Some(o) = &outer {
                let dag2 = lift(q, &o.powers, &memb, Lift::Dag);
                for (i, big) in outer_filters.iter().enumerate() {
                    let lhs = q.swarrow(&big.table, &dag2);
                    let rhs = q.swarrow(&kowalsky_table(q, &lx.space, &lx.filters, &big.table), &dag);
                    mult_g.case(q.leq(lhs, rhs), || {
                        json!({"size": n, "alpha": labels(q, alpha), "outer": i, "lhs": q.label(lhs), "rhs": q.label(rhs)})
                    });
                }
            }
        }
        for (m, ly) in levels.iter().enumerate() {
            let (Some(ly), Ok(maps)) = (ly, enumerate_maps(n, m, params.cap)) else { continue };
            let py = &ly.space.powers;
            let dags_y: Vec<Vec<Elem>> = py.tables.iter().map(|b| lift(q, py, b, Lift::Dag)).collect();
            for images in maps {
                let f = PointMap { images, codomain: m };
                let pushed: Vec<Vec<Elem>> =
                    lx.filters.iter().map(|g| image_table(q, &ly.space, &f, &g.table)).collect();
                for alpha in &p.tables {
                    let dag = lift(q, p, alpha, Lift::Dag);
                    for (beta, dag_y) in py.tables.iter().zip(&dags_y) {
                        if !crate::fuzzy::goguen_unchecked(q, &f, alpha, beta) {
                            continue;
                        }
                        for (g, img) in lx.filters.iter().zip(&pushed) {
                            let ok = q.leq(q.swarrow(&g.table, &dag), q.swarrow(img, dag_y));
                            functor.case(
                                ok,
                                || json!({"f": f.images, "alpha": labels(q, alpha), "beta": labels(q, beta)}),
                            );
                        }
                    }
                }
            }
        }
    }
    vec![unit_g.finish(), mult_g.finish(), functor.finish()]
}

pub fn filter_monad_laws(q: &Quantale, params: &Params) -> Vec<Check> {
    let mut checks = kowalsky_checks(q, params, FilterPredicate::Full);
    checks.extend(filter_laws(q, params));
    checks.extend(filter_lifting(q, params));
    checks
}

/// The inclusion of filters into `exp_Q^{-2}` is an injective monad map.
pub fn filter_submonad_checks(q: &Quantale, params: &Params) -> Vec<Check> {
    let mut inj = Tally::new("inclusion-injective");
    let mut unit = Tally::new("unit-factors-through-filters");
    let mut nat = Tally::new("inclusion-naturality");
    let pred = FilterPredicate::Full;
    let levels: Vec<Option<Level>> = (0..=params.max_size).map(|n| Level::new(q, n, params, pred)).collect();
    let towers: Vec<Arc<Tower>> =
        (0..=params.max_size).map(|n| Tower::new(q.size(), n, params.cap, params.seed)).collect();
    for (n, lx) in levels.iter().enumerate() {
        let Some(lx) = lx else { continue };
        inj.case(lx.index.len() == lx.filters.len(), || json!({"size": n}));
        let t = &towers[n];
        for x in 0..n {
            let eta = t.materialize(2, &double::unit_eta(t, x)).unwrap();
            let found = lx.find(&eta);
            unit.case(found.is_some(), || json!({"size": n, "x": x}));
        }
        for (m, ly) in levels.iter().enumerate() {
            let (Some(ly), Ok(maps)) = (ly, enumerate_maps(n, m, params.cap)) else { continue };
            for images in maps {
                let f = PointMap { images, codomain: m };
                for g in &lx.filters {
                    let img = filter_image(q, &ly.space, &f, g, pred);
                    let via =
                        t.materialize(2, &double::p2_map(t, &towers[m], &f, &Value::table(g.table.clone()))).unwrap();
                    nat.case(
                        img.as_ref().is_ok_and(|i| i.table[..] == via[..]),
                        || json!({"f": f.images, "filter": labels(q, &g.table)}),
                    );
                }
            }
        }
    }
    let mut checks = vec![inj.finish(), unit.finish(), nat.finish()];
    checks.extend(
        kowalsky_checks(q, params, pred)
            .into_iter()
            .filter(|c| c.name == "kowalsky-equals-mu-ii" || c.name == "kowalsky-closure"),
    );
    checks
}

/// Marks every check as skipped when filters cannot be enumerated at all.
pub(crate) fn or_vacuous(checks: Vec<Check>, name: &str) -> Vec<Check> {
    if checks.is_empty() {
        vec![Check::with_status(name, Status::Vacuous, 0, "no enumerable filter space")]
    } else {
        checks
    }
}
