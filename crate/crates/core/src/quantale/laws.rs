use super::{Elem, Quantale};
use crate::report::{Check, Params, Status, Tally, VerificationReport};
use serde_json::json;

/// Exhaustive scan of the quantale axioms, the residuation adjunction and the
/// standard implication identities over every element tuple.
pub fn verify_quantale_laws(q: &Quantale) -> VerificationReport {
    let mut report = VerificationReport::new("quantale-laws", q.name(), Params { max_size: 0, ..Params::default() });
    report.extend(law_checks(q));
    report
}

pub(crate) fn law_checks(q: &Quantale) -> Vec<Check> {
    let l = |e: Elem| q.label(e).to_string();
    let els: Vec<Elem> = q.elements().collect();
    let k = q.unit();
    let mut checks = Vec::new();

    let mut lattice = Tally::new("lattice-order");
    for &a in &els {
        for &b in &els {
            let (j, m) = (q.join(a, b), q.meet(a, b));
            let ok = q.leq(a, j)
                && q.leq(b, j)
                && q.leq(m, a)
                && q.leq(m, b)
                && els.iter().all(|&c| !(q.leq(a, c) && q.leq(b, c)) || q.leq(j, c))
                && els.iter().all(|&c| !(q.leq(c, a) && q.leq(c, b)) || q.leq(c, m))
                && q.leq(q.bottom(), a)
                && q.leq(a, q.top());
            lattice.case(ok, || json!({"a": l(a), "b": l(b), "join": l(j), "meet": l(m)}));
        }
    }
    checks.push(lattice.finish());

    let mut assoc = Tally::new("associativity");
    for &p in &els {
        for &r in &els {
            for &s in &els {
                let lhs = q.tensor(q.tensor(p, r), s);
                let rhs = q.tensor(p, q.tensor(r, s));
                assoc.case(
                    lhs == rhs,
                    || json!({"p": l(p), "q": l(r), "r": l(s), "(p*q)*r": l(lhs), "p*(q*r)": l(rhs)}),
                );
            }
        }
    }
    checks.push(assoc.finish());

    let mut unit = Tally::new("unit");
    for &x in &els {
        let (a, b) = (q.tensor(k, x), q.tensor(x, k));
        unit.case(a == x && b == x, || json!({"x": l(x), "k*x": l(a), "x*k": l(b)}));
    }
    checks.push(unit.finish());

    let mut left = Tally::new("left-distributivity");
    let mut right = Tally::new("right-distributivity");
    for &p in &els {
        for &a in &els {
            for &b in &els {
                let ab = q.join(a, b);
                let (lhs, rhs) = (q.tensor(p, ab), q.join(q.tensor(p, a), q.tensor(p, b)));
                left.case(
                    lhs == rhs,
                    || json!({"p": l(p), "a": l(a), "b": l(b), "p*(a|b)": l(lhs), "p*a|p*b": l(rhs)}),
                );
                let (lhs, rhs) = (q.tensor(ab, p), q.join(q.tensor(a, p), q.tensor(b, p)));
                right.case(
                    lhs == rhs,
                    || json!({"p": l(p), "a": l(a), "b": l(b), "(a|b)*p": l(lhs), "a*p|b*p": l(rhs)}),
                );
            }
        }
    }
    checks.push(left.finish());
    checks.push(right.finish());

    let mut absorb = Tally::new("bottom-absorption");
    for &p in &els {
        let (a, b) = (q.tensor(p, q.bottom()), q.tensor(q.bottom(), p));
        absorb.case(a == q.bottom() && b == q.bottom(), || json!({"p": l(p), "p*0": l(a), "0*p": l(b)}));
    }
    checks.push(absorb.finish());

    let mut adj = Tally::new("residuation-adjunction");
    for &p in &els {
        for &r in &els {
            for &s in &els {
                // p*q <= r  <=>  p <= r⧸q  <=>  q <= p↘r
                let a = q.leq(q.tensor(p, r), s);
                let b = q.leq(p, q.ldd(s, r));
                let c = q.leq(r, q.rdd(p, s));
                adj.case(a == b && b == c, || json!({"p": l(p), "q": l(r), "r": l(s)}));
            }
        }
    }
    checks.push(adj.finish());

    let mut i = Tally::new("implication-order");
    for &x in &els {
        for &y in &els {
            let a = q.leq(k, q.ldd(y, x));
            let b = q.leq(x, y);
            let c = q.leq(k, q.rdd(x, y));
            i.case(a == b && b == c, || json!({"x": l(x), "y": l(y)}));
        }
    }
    checks.push(i.finish());

    let mut ii = Tally::new("implication-unit");
    for &x in &els {
        let (a, b) = (q.ldd(x, k), q.rdd(k, x));
        ii.case(a == x && b == x, || json!({"x": l(x), "x⧸k": l(a), "k↘x": l(b)}));
    }
    checks.push(ii.finish());

    let mut iii = Tally::new("implication-interchange");
    let mut iv = Tally::new("implication-modus-ponens");
    let mut v = Tally::new("implication-currying");
    let mut vi = Tally::new("implication-composition");
    for &x in &els {
        for &y in &els {
            let (a, b) = (q.tensor(q.ldd(y, x), x), q.tensor(x, q.rdd(x, y)));
            iv.case(q.leq(a, y) && q.leq(b, y), || json!({"x": l(x), "y": l(y)}));
            for &z in &els {
                let lhs = q.ldd(q.rdd(y, z), x);
                let rhs = q.rdd(y, q.ldd(z, x));
                iii.case(lhs == rhs, || json!({"x": l(x), "y": l(y), "z": l(z), "(y↘z)⧸x": l(lhs), "y↘(z⧸x)": l(rhs)}));

                let (l1, r1) = (q.ldd(q.ldd(z, y), x), q.ldd(z, q.tensor(x, y)));
                let (l2, r2) = (q.rdd(x, q.rdd(y, z)), q.rdd(q.tensor(y, x), z));
                v.case(l1 == r1 && l2 == r2, || json!({"x": l(x), "y": l(y), "z": l(z)}));

                let c1 = q.leq(q.tensor(q.ldd(z, y), q.ldd(y, x)), q.ldd(z, x));
                let c2 = q.leq(q.tensor(q.rdd(x, y), q.rdd(y, z)), q.rdd(x, z));
                vi.case(c1 && c2, || json!({"x": l(x), "y": l(y), "z": l(z)}));
            }
        }
    }
    checks.extend([iii.finish(), iv.finish(), v.finish(), vi.finish()]);

    if q.is_commutative() {
        let mut sw = Tally::new("commutative-residual-swap");
        for &a in &els {
            for &b in &els {
                sw.case(q.ldd(a, b) == q.rdd(b, a), || json!({"r": l(a), "q": l(b)}));
            }
        }
        checks.push(sw.finish());
    } else {
        checks.push(Check::with_status(
            "commutative-residual-swap",
            Status::HypothesisUnmet,
            0,
            "tensor is not commutative",
        ));
    }
    checks
}
