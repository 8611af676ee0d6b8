//! Fuzzy sets, Goguen maps, images and preimages, and the graded inclusions
//! `λ ↙ γ` and `γ ↘ λ`.
//!
//! Membership functions and the tables fed to functors share one
//! representation: a slice of quantale elements indexed by point.

use crate::quantale::{Elem, Quantale};
use crate::report::{Params, Tally, VerificationReport};
use crate::towers::{enumerate_maps, enumerate_tables};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzyError {
    #[error("carrier mismatch: expected {expected} points, got {got}")]
    CarrierMismatch { expected: usize, got: usize },
    #[error("point {point} is outside a carrier of size {size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("`{0}` is not an element of the quantale")]
    UnknownElement(String),
    #[error("`{0}` is not a point of the carrier")]
    UnknownPoint(String),
    #[error("map is not a Goguen map: point {point} has membership {source_degree} above {target_degree}")]
    NotGoguen { point: usize, source_degree: String, target_degree: String },
    #[error("malformed fuzzy set document: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Carrier {
    pub name: String,
    pub labels: Vec<String>,
}

impl Carrier {
    pub fn anonymous(size: usize) -> Self {
        Carrier { name: format!("X{size}"), labels: (0..size).map(|i| format!("x{i}")).collect() }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzySet {
    pub carrier: Carrier,
    pub membership: Vec<Elem>,
}

impl FuzzySet {
    pub fn new(q: &Quantale, carrier: Carrier, membership: Vec<Elem>) -> Result<Self, FuzzyError> {
        same_len(carrier.size(), membership.len())?;
        if let Some(&e) = membership.iter().find(|&&e| e as usize >= q.size()) {
            return Err(FuzzyError::UnknownElement(e.to_string()));
        }
        Ok(FuzzySet { carrier, membership })
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// Parses a fuzzy-set document. Points missing from `membership` get the
    /// bottom element.
    pub fn from_json(q: &Quantale, text: &str) -> Result<Self, FuzzyError> {
        let doc: FuzzySetDoc = serde_json::from_str(text).map_err(|e| FuzzyError::Malformed(e.to_string()))?;
        let mut membership = vec![q.bottom(); doc.carrier.len()];
        for (point, elem) in &doc.membership {
            let i =
                doc.carrier.iter().position(|p| p == point).ok_or_else(|| FuzzyError::UnknownPoint(point.clone()))?;
            membership[i] = q.element(elem).ok_or_else(|| FuzzyError::UnknownElement(elem.clone()))?;
        }
        let carrier = Carrier { name: doc.name.unwrap_or_else(|| "X".into()), labels: doc.carrier };
        Ok(FuzzySet { carrier, membership })
    }

    pub fn to_doc(&self, q: &Quantale) -> FuzzySetDoc {
        FuzzySetDoc {
            name: Some(self.carrier.name.clone()),
            carrier: self.carrier.labels.clone(),
            membership: self
                .carrier
                .labels
                .iter()
                .zip(&self.membership)
                .map(|(p, &e)| (p.clone(), q.label(e).to_string()))
                .collect(),
            quantale: q.name().to_string(),
        }
    }
}

/// JSON form of a fuzzy set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzySetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub carrier: Vec<String>,
    #[serde(default)]
    pub membership: BTreeMap<String, String>,
    pub quantale: String,
}

/// A function between finite sets, `images[x]` in `0..codomain`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointMap {
    pub images: Vec<usize>,
    pub codomain: usize,
}

impl PointMap {
    pub fn new(images: Vec<usize>, codomain: usize) -> Result<Self, FuzzyError> {
        if let Some(&p) = images.iter().find(|&&p| p >= codomain) {
            return Err(FuzzyError::PointOutOfRange { point: p, size: codomain });
        }
        Ok(PointMap { images, codomain })
    }

    pub fn identity(size: usize) -> Self {
        PointMap { images: (0..size).collect(), codomain: size }
    }

    pub fn domain(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PointMap) -> PointMap {
        PointMap { images: self.images.iter().map(|&y| other.images[y]).collect(), codomain: other.codomain }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        for &y in &self.images {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// A validated morphism of the Goguen category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoguenMap {
    source: FuzzySet,
    target: FuzzySet,
    map: PointMap,
}

impl GoguenMap {
    pub fn new(q: &Quantale, map: PointMap, source: FuzzySet, target: FuzzySet) -> Result<Self, FuzzyError> {
        same_len(source.size(), map.domain())?;
        same_len(target.size(), map.codomain)?;
        if let Some(x) = (0..map.domain()).find(|&x| !q.leq(source.membership[x], target.membership[map.apply(x)])) {
            return Err(FuzzyError::NotGoguen {
                point: x,
                source_degree: q.label(source.membership[x]).into(),
                target_degree: q.label(target.membership[map.apply(x)]).into(),
            });
        }
        Ok(GoguenMap { source, target, map })
    }

    pub fn source(&self) -> &FuzzySet {
        &self.source
    }

    pub fn target(&self) -> &FuzzySet {
        &self.target
    }

    pub fn map(&self) -> &PointMap {
        &self.map
    }

    pub fn compose(&self, q: &Quantale, next: &GoguenMap) -> Result<GoguenMap, FuzzyError> {
        same_len(self.target.size(), next.source.size())?;
        GoguenMap::new(q, self.map.then(&next.map), self.source.clone(), next.target.clone())
    }
}

fn same_len(expected: usize, got: usize) -> Result<(), FuzzyError> {
    if expected == got {
        Ok(())
    } else {
        Err(FuzzyError::CarrierMismatch { expected, got })
    }
}

/// `α ≤ β ∘ f`.
pub fn is_goguen(q: &Quantale, f: &PointMap, alpha: &[Elem], beta: &[Elem]) -> Result<bool, FuzzyError> {
    same_len(alpha.len(), f.domain())?;
    same_len(beta.len(), f.codomain)?;
    Ok(goguen_unchecked(q, f, alpha, beta))
}

pub(crate) fn goguen_unchecked(q: &Quantale, f: &PointMap, alpha: &[Elem], beta: &[Elem]) -> bool {
    f.images.iter().zip(alpha).all(|(&y, &a)| q.leq(a, beta[y]))
}

/// `f(γ)(y) = ⋁{γ(x) : f(x) = y}`.
pub fn image(q: &Quantale, f: &PointMap, gamma: &[Elem]) -> Vec<Elem> {
    debug_assert_eq!(gamma.len(), f.domain());
    let mut out = vec![q.bottom(); f.codomain];
    for (&y, &g) in f.images.iter().zip(gamma) {
        out[y] = q.join(out[y], g);
    }
    out
}

/// `f⁻¹(λ) = λ ∘ f`.
pub fn preimage(f: &PointMap, lambda: &[Elem]) -> Vec<Elem> {
    debug_assert_eq!(lambda.len(), f.codomain);
    f.images.iter().map(|&y| lambda[y]).collect()
}

pub fn swarrow(q: &Quantale, lambda: &[Elem], gamma: &[Elem]) -> Result<Elem, FuzzyError> {
    same_len(lambda.len(), gamma.len())?;
    Ok(q.swarrow(lambda, gamma))
}

pub fn searrow(q: &Quantale, gamma: &[Elem], lambda: &[Elem]) -> Result<Elem, FuzzyError> {
    same_len(gamma.len(), lambda.len())?;
    Ok(q.searrow(gamma, lambda))
}

/// `r_x`: `r` at `x`, bottom elsewhere.
pub fn delta(q: &Quantale, r: Elem, x: usize, size: usize) -> Result<Vec<Elem>, FuzzyError> {
    if x >= size {
        return Err(FuzzyError::PointOutOfRange { point: x, size });
    }
    let mut t = vec![q.bottom(); size];
    t[x] = r;
    Ok(t)
}

/// `r_X`.
pub fn constant(r: Elem, size: usize) -> Vec<Elem> {
    vec![r; size]
}

pub fn meet_tables(q: &Quantale, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| q.meet(x, y)).collect()
}

pub fn join_tables(q: &Quantale, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| q.join(x, y)).collect()
}

pub(crate) fn labels(q: &Quantale, t: &[Elem]) -> Vec<String> {
    t.iter().map(|&e| q.label(e).to_string()).collect()
}

/// Image and preimage laws, exhaustively over every map `X → Y` and every
/// triple of tables with `|X|, |Y| ≤ max_size`.
pub fn verify_image_preimage(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("image-preimage", q.name(), params.clone());
    let mut mono = Tally::new("image-monotone-inclusion");
    let mut adj = Tally::new("image-preimage-inclusion-equality");
    let mut gal = Tally::new("image-preimage-galois");
    let n = q.size();
    for xs in 0..=params.max_size {
        for ys in 0..=params.max_size {
            let Ok(maps) = enumerate_maps(xs, ys, params.cap) else { continue };
            let Ok(xt) = enumerate_tables(n, xs, params.cap) else { continue };
            let xtables: Vec<_> = xt.collect();
            let ytables: Vec<_> = enumerate_tables(n, ys, params.cap).map(|t| t.collect()).unwrap_or_default();
            for images in maps {
                let f = PointMap { images, codomain: ys };
                for alpha in &xtables {
                    let fa = image(q, &f, alpha);
                    for gamma in &xtables {
                        let fg = image(q, &f, gamma);
                        let ok = q.leq(q.searrow(alpha, gamma), q.searrow(&fa, &fg))
                            && q.leq(q.swarrow(gamma, alpha), q.swarrow(&fg, &fa));
                        mono.case(ok, || json!({"f": f.images, "alpha": labels(q, alpha), "gamma": labels(q, gamma)}));
                    }
                    for beta in &ytables {
                        let pb = preimage(&f, beta);
                        let ok = q.searrow(&fa, beta) == q.searrow(alpha, &pb)
                            && q.swarrow(beta, &fa) == q.swarrow(&pb, alpha);
                        adj.case(ok, || json!({"f": f.images, "alpha": labels(q, alpha), "beta": labels(q, beta)}));
                        let ok = q.leq_tables(&fa, beta) == q.leq_tables(alpha, &pb);
                        gal.case(ok, || json!({"f": f.images, "alpha": labels(q, alpha), "beta": labels(q, beta)}));
                    }
                }
            }
        }
    }
    report.extend([mono.finish(), adj.finish(), gal.finish()]);
    report
}

/// The meet/join laws of `↙` and `↘` over all pairs of tables, plus the
/// Goguen category axioms (identities and composition).
pub fn verify_inclusion_laws(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("residuation", q.name(), params.clone());
    report.extend(
        crate::quantale::verify_quantale_laws(q)
            .checks
            .into_iter()
            .filter(|c| c.name == "residuation-adjunction" || c.name.starts_with("implication")),
    );
    let mut sw_meet = Tally::new("swarrow-meet-left");
    let mut sw_join = Tally::new("swarrow-join-right");
    let mut se_meet = Tally::new("searrow-meet-right");
    let mut se_join = Tally::new("searrow-join-left");
    let mut goguen = Tally::new("goguen-identity-and-composition");
    let n = q.size();
    for s in 0..=params.max_size {
        let Ok(t) = enumerate_tables(n, s, params.cap) else { continue };
        let tables: Vec<_> = t.collect();
        if (tables.len() as u64).pow(3) > params.cap * 16 {
            continue;
        }
        for a in &tables {
            for b in &tables {
                let (m, j) = (meet_tables(q, a, b), join_tables(q, a, b));
                for g in &tables {
                    let w = || json!({"a": labels(q, a), "b": labels(q, b), "c": labels(q, g)});
                    sw_meet.case(q.swarrow(&m, g) == q.meet(q.swarrow(a, g), q.swarrow(b, g)), w);
                    sw_join.case(q.swarrow(g, &j) == q.meet(q.swarrow(g, a), q.swarrow(g, b)), w);
                    se_meet.case(q.searrow(g, &m) == q.meet(q.searrow(g, a), q.searrow(g, b)), w);
                    se_join.case(q.searrow(&j, g) == q.meet(q.searrow(a, g), q.searrow(b, g)), w);
                }
            }
            // empty families
            let w = || json!({"a": labels(q, a), "family": "empty"});
            let top = constant(q.top(), s);
            let bot = constant(q.bottom(), s);
            sw_meet.case(q.swarrow(&top, a) == q.top(), w);
            sw_join.case(q.swarrow(a, &bot) == q.top(), w);
            se_meet.case(q.searrow(a, &top) == q.top(), w);
            se_join.case(q.searrow(&bot, a) == q.top(), w);
        }
    }
    for xs in 0..=params.max_size.min(2) {
        for ys in 0..=params.max_size.min(2) {
            for zs in 0..=params.max_size.min(2) {
                let (Ok(fm), Ok(xt)) = (enumerate_maps(xs, ys, params.cap), enumerate_tables(n, xs, params.cap)) else {
                    continue;
                };
                let fmaps: Vec<_> = fm.map(|i| PointMap { images: i, codomain: ys }).collect();
                let gmaps: Vec<_> = enumerate_maps(ys, zs, params.cap)
                    .map(|m| m.map(|i| PointMap { images: i, codomain: zs }).collect())
                    .unwrap_or_default();
                let xtables: Vec<_> = xt.collect();
                let ytables: Vec<_> = enumerate_tables(n, ys, params.cap).map(|t| t.collect()).unwrap_or_default();
                let ztables: Vec<_> = enumerate_tables(n, zs, params.cap).map(|t| t.collect()).unwrap_or_default();
                for a in &xtables {
                    goguen.case(goguen_unchecked(q, &PointMap::identity(xs), a, a), || json!({"alpha": labels(q, a)}));
                    for f in &fmaps {
                        for b in &ytables {
                            if !goguen_unchecked(q, f, a, b) {
                                continue;
                            }
                            for g in &gmaps {
                                for c in &ztables {
                                    if goguen_unchecked(q, g, b, c) {
                                        goguen.case(goguen_unchecked(q, &f.then(g), a, c), || {
                                            json!({"f": f.images, "g": g.images, "alpha": labels(q, a), "beta": labels(q, b), "gamma": labels(q, c)})
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.extend([sw_meet.finish(), sw_join.finish(), se_meet.finish(), se_join.finish(), goguen.finish()]);
    report
}
