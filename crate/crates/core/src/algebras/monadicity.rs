use super::AlgebraError;
use crate::fuzzy::{goguen_unchecked, labels, preimage, PointMap};
use crate::monads::base::Powers;
use crate::quantale::{Elem, Quantale};
use crate::report::{Params, Tally, VerificationReport};
use crate::towers::{decode, enumerate_maps, enumerate_tables, pow_checked};
use serde_json::json;

/// Goguen maps `f, g: (X, α) → (Y, β)` with a common left inverse `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexivePair {
    pub f: PointMap,
    pub g: PointMap,
    pub h: PointMap,
    pub alpha: Vec<Elem>,
    pub beta: Vec<Elem>,
}

/// `Z = {x : f(x) = g(x)}` with `γ = α|Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equalizer {
    pub z: Vec<usize>,
    pub gamma: Vec<Elem>,
}

pub fn reflexive_pair_equalizer(q: &Quantale, p: &ReflexivePair) -> Result<Equalizer, AlgebraError> {
    let (nx, ny) = (p.alpha.len(), p.beta.len());
    let typed = p.f.domain() == nx
        && p.g.domain() == nx
        && p.f.codomain == ny
        && p.g.codomain == ny
        && p.h.domain() == ny
        && p.h.codomain == nx;
    if !typed {
        return Err(AlgebraError::Malformed("maps do not match the fuzzy sets".into()));
    }
    for (name, m, a, b) in
        [("f", &p.f, &p.alpha, &p.beta), ("g", &p.g, &p.alpha, &p.beta), ("h", &p.h, &p.beta, &p.alpha)]
    {
        if !goguen_unchecked(q, m, a, b) {
            return Err(AlgebraError::Malformed(format!("{name} is not a Goguen map")));
        }
    }
    if let Some(x) = (0..nx).find(|&x| p.h.apply(p.f.apply(x)) != x || p.h.apply(p.g.apply(x)) != x) {
        return Err(AlgebraError::NotReflexivePair(format!("h is not a left inverse of f and g at {x}")));
    }
    let z: Vec<usize> = (0..nx).filter(|&x| p.f.apply(x) == p.g.apply(x)).collect();
    let gamma = z.iter().map(|&x| p.alpha[x]).collect();
    Ok(Equalizer { z, gamma })
}

struct CoeqTallies {
    facts: Tally,
    e_goguen: Tally,
    epi: Tally,
    xi: Tally,
    xi_coeq: Tally,
    factor: Tally,
    dbar_goguen: Tally,
}

impl CoeqTallies {
    fn new() -> Self {
        CoeqTallies {
            facts: Tally::new("reflexive-pair-facts"),
            e_goguen: Tally::new("extension-goguen"),
            epi: Tally::new("restriction-surjective"),
            xi: Tally::new("xi-well-defined"),
            xi_coeq: Tally::new("xi-identifies-restrictions"),
            factor: Tally::new("factorization"),
            dbar_goguen: Tally::new("factor-goguen"),
        }
    }

    fn finish(self) -> Vec<crate::report::Check> {
        [self.facts, self.e_goguen, self.epi, self.xi, self.xi_coeq, self.factor, self.dbar_goguen]
            .into_iter()
            .map(Tally::finish)
            .collect()
    }
}

/// `E(ζ)`: `ζ` on `Z`, top elsewhere.
fn extend(q: &Quantale, nx: usize, eq: &Equalizer, zeta: &[Elem]) -> Vec<Elem> {
    let mut t = vec![q.top(); nx];
    for (&x, &v) in eq.z.iter().zip(zeta) {
        t[x] = v;
    }
    t
}

fn restrict(eq: &Equalizer, xi: &[Elem]) -> Vec<Elem> {
    eq.z.iter().map(|&x| xi[x]).collect()
}

/// The gluing `ξ ∈ Q^Y` of two tables agreeing on `Z`, or the first `y`
/// where the two prescriptions clash.
fn glue(q: &Quantale, p: &ReflexivePair, xi1: &[Elem], xi2: &[Elem]) -> Result<Vec<Elem>, usize> {
    let mut t: Vec<Option<Elem>> = vec![None; p.beta.len()];
    for (m, xi) in [(&p.f, xi1), (&p.g, xi2)] {
        for (x, &v) in xi.iter().enumerate() {
            let y = m.apply(x);
            match t[y] {
                Some(w) if w != v => return Err(y),
                _ => t[y] = Some(v),
            }
        }
    }
    Ok(t.into_iter().map(|v| v.unwrap_or(q.top())).collect())
}

fn coequalizer_into(
    q: &Quantale,
    p: &ReflexivePair,
    targets: &[Vec<Elem>],
    cap: u64,
    t: &mut CoeqTallies,
) -> Result<u64, AlgebraError> {
    let eq = reflexive_pair_equalizer(q, p)?;
    let (nx, ny) = (p.alpha.len(), p.beta.len());
    let w = || json!({"f": p.f.images, "g": p.g.images, "h": p.h.images, "alpha": labels(q, &p.alpha), "beta": labels(q, &p.beta)});

    let injective = p.f.is_injective() && p.g.is_injective();
    let memb = (0..nx).all(|x| p.beta[p.f.apply(x)] == p.alpha[x] && p.beta[p.g.apply(x)] == p.alpha[x]);
    let disjoint = (0..nx).all(|a| (0..nx).all(|b| p.f.apply(a) != p.g.apply(b) || a == b));
    t.facts.case(
        injective && memb && disjoint,
        || json!({"pair": w(), "injective": injective, "membership": memb, "cross": disjoint}),
    );

    let px = Powers::new(q, nx, cap)?;
    let py = Powers::new(q, ny, cap)?;
    let pz = Powers::new(q, eq.z.len(), cap)?;
    for zeta in &pz.tables {
        let lhs = q.swarrow(zeta, &eq.gamma);
        let rhs = q.swarrow(&extend(q, nx, &eq, zeta), &p.alpha);
        t.e_goguen.case(lhs == rhs, || json!({"pair": w(), "zeta": labels(q, zeta)}));
    }
    let hit: std::collections::HashSet<Vec<Elem>> = px.tables.iter().map(|xi| restrict(&eq, xi)).collect();
    t.epi.case(hit.len() == pz.len(), || json!({"pair": w()}));

    // pairs agreeing on Z, grouped by restriction
    let mut glued = Vec::new();
    for xi1 in &px.tables {
        for xi2 in &px.tables {
            if restrict(&eq, xi1) != restrict(&eq, xi2) {
                continue;
            }
            let g = glue(q, p, xi1, xi2);
            let ok = g.as_ref().is_ok_and(|xi| preimage(&p.f, xi) == *xi1 && preimage(&p.g, xi) == *xi2);
            t.xi.case(
                ok,
                || json!({"pair": w(), "xi1": labels(q, xi1), "xi2": labels(q, xi2), "glue": format!("{g:?}")}),
            );
            glued.push((px.index(xi1), px.index(xi2)));
        }
    }

    let pf: Vec<usize> = py.tables.iter().map(|l| px.index(&preimage(&p.f, l))).collect();
    let pg: Vec<usize> = py.tables.iter().map(|l| px.index(&preimage(&p.g, l))).collect();
    let up_x: Vec<Elem> = px.tables.iter().map(|xi| q.swarrow(xi, &p.alpha)).collect();
    let up_z: Vec<Elem> = pz.tables.iter().map(|z| q.swarrow(z, &eq.gamma)).collect();
    let mut eligible = 0u64;
    for lambda in targets {
        let nw = lambda.len();
        let Some(count) = pow_checked(nw, px.len()).filter(|&c| c <= cap) else { continue };
        for i in 0..count {
            let d: Vec<usize> = decode(nw, px.len(), i).into_iter().map(usize::from).collect();
            let goguen = (0..px.len()).all(|j| q.leq(up_x[j], lambda[d[j]]));
            let coeq = pf.iter().zip(&pg).all(|(&a, &b)| d[a] == d[b]);
            if !(goguen && coeq) {
                continue;
            }
            eligible += 1;
            let dw = || json!({"pair": w(), "lambda": labels(q, lambda), "d": d});
            for &(a, b) in &glued {
                t.xi_coeq.case(d[a] == d[b], || json!({"case": dw(), "xi1": a, "xi2": b}));
            }
            let dbar: Vec<usize> = pz.tables.iter().map(|z| d[px.index(&extend(q, nx, &eq, z))]).collect();
            for (j, xi) in px.tables.iter().enumerate() {
                let via = dbar[pz.index(&restrict(&eq, xi))];
                t.factor.case(d[j] == via, || json!({"case": dw(), "xi": labels(q, xi), "d": d[j], "dbar.Pe": via}));
            }
            for (k, &v) in dbar.iter().enumerate() {
                t.dbar_goguen
                    .case(q.leq(up_z[k], lambda[v]), || json!({"case": dw(), "zeta": labels(q, &pz.tables[k])}));
            }
        }
    }
    Ok(eligible)
}

/// Preservation of the coequalizer of one reflexive pair, tested against
/// every eligible `d` into each target fuzzy set.
pub fn coequalizer_verify(
    q: &Quantale,
    pair: &ReflexivePair,
    targets: &[Vec<Elem>],
    params: &Params,
) -> Result<VerificationReport, AlgebraError> {
    let mut t = CoeqTallies::new();
    let eligible = coequalizer_into(q, pair, targets, params.cap, &mut t)?;
    let mut report = VerificationReport::new("coequalizer", q.name(), params.clone());
    let mut checks = t.finish();
    checks[5] = checks[5].clone().note(format!("{eligible} eligible maps"));
    report.extend(checks);
    Ok(report)
}

/// Every reflexive pair with `|X| ≤ max_size`, `|Y| ≤ max_size + 1`, all
/// fuzzy structures making `f, g, h` Goguen, and every target with `|W| ≤ 2`.
pub fn verify_coequalizer(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("coequalizer", q.name(), params.clone());
    let mut t = CoeqTallies::new();
    let mut pairs = 0u64;
    let mut eligible = 0u64;
    let targets: Vec<Vec<Elem>> =
        (1..=2).flat_map(|w| enumerate_tables(q.size(), w, params.cap).into_iter().flatten()).collect();
    for nx in 0..=params.max_size {
        for ny in 0..=params.max_size + 1 {
            let (Ok(fs), Ok(hs)) = (enumerate_maps(nx, ny, params.cap), enumerate_maps(ny, nx, params.cap)) else {
                continue;
            };
            let (Ok(alphas), Ok(betas)) =
                (enumerate_tables(q.size(), nx, params.cap), enumerate_tables(q.size(), ny, params.cap))
            else {
                continue;
            };
            let fs: Vec<PointMap> = fs.map(|images| PointMap { images, codomain: ny }).collect();
            let hs: Vec<PointMap> = hs.map(|images| PointMap { images, codomain: nx }).collect();
            let alphas: Vec<Vec<Elem>> = alphas.collect();
            let betas: Vec<Vec<Elem>> = betas.collect();
            for f in &fs {
                for g in &fs {
                    for h in &hs {
                        let left_inverse = (0..nx).all(|x| h.apply(f.apply(x)) == x && h.apply(g.apply(x)) == x);
                        if !left_inverse {
                            continue;
                        }
                        for alpha in &alphas {
                            for beta in &betas {
                                let p = ReflexivePair {
                                    f: f.clone(),
                                    g: g.clone(),
                                    h: h.clone(),
                                    alpha: alpha.clone(),
                                    beta: beta.clone(),
                                };
                                if reflexive_pair_equalizer(q, &p).is_err() {
                                    continue;
                                }
                                pairs += 1;
                                eligible += coequalizer_into(q, &p, &targets, params.cap, &mut t).unwrap_or(0);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut checks = t.finish();
    checks[5] = checks[5].clone().note(format!("{pairs} reflexive pairs, {eligible} eligible maps"));
    report.extend(checks);
    report
}

/// Whenever `𝒫f` is an isomorphism of fuzzy sets, so is `f`.
pub fn reflects_iso_check(q: &Quantale, params: &Params) -> VerificationReport {
    let mut report = VerificationReport::new("reflects-iso", q.name(), params.clone());
    let mut reflects = Tally::new("reflects-isomorphisms");
    let mut classify = Tally::new("non-surjective-gives-non-injective");
    let mut vacuous = 0u64;
    for nx in 0..=params.max_size {
        for ny in 0..=params.max_size {
            let (Ok(px), Ok(py), Ok(maps)) =
                (Powers::new(q, nx, params.cap), Powers::new(q, ny, params.cap), enumerate_maps(nx, ny, params.cap))
            else {
                continue;
            };
            for images in maps {
                let f = PointMap { images, codomain: ny };
                let pf: Vec<usize> = py.tables.iter().map(|l| px.index(&preimage(&f, l))).collect();
                let mut seen = vec![false; px.len()];
                let bijective_pf = pf.len() == px.len() && pf.iter().all(|&i| !std::mem::replace(&mut seen[i], true));
                if !f.is_surjective() && q.size() > 1 {
                    classify.case(!bijective_pf, || json!({"f": f.images}));
                }
                for alpha in &px.tables {
                    for beta in &py.tables {
                        if !goguen_unchecked(q, &f, alpha, beta) {
                            continue;
                        }
                        let iso = bijective_pf
                            && py
                                .tables
                                .iter()
                                .zip(&pf)
                                .all(|(l, &i)| q.swarrow(l, beta) == q.swarrow(&px.tables[i], alpha));
                        if !iso {
                            vacuous += 1;
                            continue;
                        }
                        let f_iso =
                            f.is_injective() && f.is_surjective() && (0..nx).all(|x| beta[f.apply(x)] == alpha[x]);
                        reflects
                            .case(f_iso, || json!({"f": f.images, "alpha": labels(q, alpha), "beta": labels(q, beta)}));
                    }
                }
            }
        }
    }
    report.push(reflects.finish().note(format!("{vacuous} Goguen maps with non-iso image skipped")));
    report.push(classify.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin_quantale;
    use crate::towers::DEFAULT_CAP;

    fn pm(images: &[usize], codomain: usize) -> PointMap {
        PointMap::new(images.to_vec(), codomain).unwrap()
    }

    #[test]
    fn equalizer_examples() {
        let q = builtin_quantale("bool").unwrap();
        let p = ReflexivePair { f: pm(&[0], 2), g: pm(&[1], 2), h: pm(&[0, 0], 1), alpha: vec![1], beta: vec![1, 1] };
        assert_eq!(reflexive_pair_equalizer(&q, &p).unwrap().z, Vec::<usize>::new());
        let same =
            ReflexivePair { f: pm(&[0], 2), g: pm(&[0], 2), h: pm(&[0, 0], 1), alpha: vec![1], beta: vec![1, 0] };
        assert_eq!(reflexive_pair_equalizer(&q, &same).unwrap().z, vec![0]);
        let bad = ReflexivePair {
            f: pm(&[0, 1], 2),
            g: pm(&[0, 1], 2),
            h: pm(&[1, 0], 2),
            alpha: vec![0, 0],
            beta: vec![0, 0],
        };
        assert!(matches!(reflexive_pair_equalizer(&q, &bad), Err(AlgebraError::NotReflexivePair(_))));
    }

    #[test]
    fn single_pair_factorizes() {
        let q = builtin_quantale("bool").unwrap();
        let p = ReflexivePair { f: pm(&[0], 2), g: pm(&[1], 2), h: pm(&[0, 0], 1), alpha: vec![1], beta: vec![1, 1] };
        let targets: Vec<Vec<Elem>> = enumerate_tables(2, 2, DEFAULT_CAP).unwrap().collect();
        let r = coequalizer_verify(&q, &p, &targets, &Params::default()).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert!(r.check("factorization").unwrap().cases > 0);
    }

    #[test]
    fn suites_pass() {
        for name in ["bool", "lukasiewicz:3"] {
            let q = builtin_quantale(name).unwrap();
            let params = Params { max_size: if name == "bool" { 2 } else { 1 }, ..Params::default() };
            let r = reflects_iso_check(&q, &params);
            assert!(r.passed(), "{}", r.summary());
            let r = verify_coequalizer(&q, &params);
            assert!(r.passed(), "{}", r.summary());
        }
    }
}
