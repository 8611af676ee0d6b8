use super::{Quantale, QuantaleDef, QuantaleError};
use num_integer::Integer;
use std::path::Path;

/// Built-in quantale families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bool,
    /// n-chain with `min` as tensor.
    Godel(usize),
    /// n-chain `{0, 1/(n-1), ..., 1}` with `max(0, a + b - 1)`.
    Lukasiewicz(usize),
    /// Bottom-preserving monotone self-maps of the n-chain under composition,
    /// ordered pointwise. `f * g = f ∘ g`.
    Endo(usize),
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, QuantaleError> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let n = match arg {
            None => None,
            Some(a) => {
                Some(a.parse::<usize>().map_err(|_| QuantaleError::BadParameter(format!("`{a}` is not a size")))?)
            }
        };
        let need = |n: Option<usize>| n.ok_or_else(|| QuantaleError::BadParameter(format!("`{s}` needs a size")));
        match head {
            "bool" if n.is_none() => Ok(Family::Bool),
            "godel" => Ok(Family::Godel(need(n)?)),
            "lukasiewicz" => Ok(Family::Lukasiewicz(need(n)?)),
            "endo" => Ok(Family::Endo(need(n)?)),
            _ => Err(QuantaleError::BadParameter(format!("unknown builtin family `{s}`"))),
        }
    }

    pub fn build(self) -> Result<Quantale, QuantaleError> {
        match self {
            Family::Bool => chain("bool".into(), 2, |a, b| a.min(b)),
            Family::Godel(n) => {
                check_size(n)?;
                chain(format!("godel:{n}"), n, |a, b| a.min(b))
            }
            Family::Lukasiewicz(n) => {
                check_size(n)?;
                chain(format!("lukasiewicz:{n}"), n, move |a, b| (a + b).saturating_sub(n - 1))
            }
            Family::Endo(n) => {
                check_size(n)?;
                endo(n)
            }
        }
    }
}

fn check_size(n: usize) -> Result<(), QuantaleError> {
    if n < 2 {
        Err(QuantaleError::BadParameter(format!("family size must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

/// `builtin:` names without the prefix, e.g. `lukasiewicz:3`.
pub fn builtin_quantale(family: &str) -> Result<Quantale, QuantaleError> {
    Family::parse(family)?.build()
}

/// Resolves `builtin:<family>` or a path to a JSON definition document.
///
/// Structural problems come back as errors; the tensor laws are *not*
/// validated here so that corrupted files can still be inspected by the law
/// checker.
pub fn parse_quantale_ref(r: &str) -> Result<Quantale, QuantaleError> {
    if let Some(family) = r.strip_prefix("builtin:") {
        return builtin_quantale(family);
    }
    let text = std::fs::read_to_string(Path::new(r))
        .map_err(|e| QuantaleError::Malformed(format!("cannot read `{r}`: {e}")))?;
    let def: QuantaleDef = serde_json::from_str(&text).map_err(|e| QuantaleError::Malformed(format!("`{r}`: {e}")))?;
    Quantale::build_unchecked(&def)
}

fn chain_label(i: usize, n: usize) -> String {
    let d = n - 1;
    if i == 0 {
        "0".into()
    } else if i == d {
        "1".into()
    } else {
        let g = i.gcd(&d);
        format!("{}/{}", i / g, d / g)
    }
}

fn chain(name: String, n: usize, tensor: impl Fn(usize, usize) -> usize) -> Result<Quantale, QuantaleError> {
    let labels = (0..n).map(|i| chain_label(i, n)).collect();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in a..n {
            leq[a * n + b] = true;
        }
    }
    let table: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| tensor(a, b)).collect();
    Quantale::from_tables(name, labels, leq, &table, n - 1)
}

fn endo(n: usize) -> Result<Quantale, QuantaleError> {
    // Maps are stored as their values on 1..n; f(0) = 0 is implicit.
    let mut maps: Vec<Vec<usize>> = vec![vec![]];
    for _ in 1..n {
        maps = maps
            .into_iter()
            .flat_map(|m| {
                let lo = m.last().copied().unwrap_or(0);
                (lo..n).map(move |v| {
                    let mut m = m.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    let at = |m: &[usize], x: usize| if x == 0 { 0 } else { m[x - 1] };
    let size = maps.len();
    let labels = maps
        .iter()
        .map(|m| format!("({})", m.iter().map(|&v| chain_label(v, n)).collect::<Vec<_>>().join(",")))
        .collect();
    let index = |m: &[usize]| maps.iter().position(|x| x == m).expect("composition stays in the carrier");
    let mut leq = vec![false; size * size];
    let mut table = vec![0; size * size];
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            leq[i * size + j] = f.iter().zip(g).all(|(a, b)| a <= b);
            let fg: Vec<usize> = (1..n).map(|x| at(f, at(g, x))).collect();
            table[i * size + j] = index(&fg);
        }
    }
    let identity: Vec<usize> = (1..n).collect();
    Quantale::from_tables(format!("endo:{n}"), labels, leq, &table, index(&identity))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(q: &Quantale, l: &str) -> u8 {
        q.element(l).unwrap_or_else(|| panic!("no element {l} in {:?}", q.labels()))
    }

    #[test]
    fn builtins_validate() {
        for name in
            ["bool", "godel:3", "godel:4", "lukasiewicz:3", "lukasiewicz:4", "lukasiewicz:5", "endo:3", "endo:4"]
        {
            builtin_quantale(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn lukasiewicz_half_squared_is_zero() {
        let q = builtin_quantale("lukasiewicz:3").unwrap();
        assert_eq!(q.labels(), ["0", "1/2", "1"]);
        assert_eq!(q.tensor(1, 1), 0);
        assert_eq!(q.ldd(0, 1), 1);
        assert_eq!(q.rdd(1, 0), 1);
    }

    #[test]
    fn endo3_is_noncommutative() {
        let q = builtin_quantale("endo:3").unwrap();
        assert_eq!(q.size(), 6);
        assert!(!q.is_commutative());
        let f = e(&q, "(0,1)");
        let g = e(&q, "(1/2,1/2)");
        assert_eq!(q.tensor(f, g), e(&q, "(0,0)"));
        assert_eq!(q.tensor(g, f), e(&q, "(0,1/2)"));
        assert_eq!(q.unit(), e(&q, "(1/2,1)"));
        assert_eq!(q.join(f, g), e(&q, "(1/2,1)"));
    }

    #[test]
    fn residuals_differ_in_endo3() {
        let q = builtin_quantale("endo:3").unwrap();
        let differ = q.elements().any(|a| q.elements().any(|b| q.rdd(a, b) != q.ldd(b, a)));
        assert!(differ);
    }

    #[test]
    fn two_chains_coincide() {
        let b = builtin_quantale("bool").unwrap();
        for other in ["godel:2", "lukasiewicz:2"] {
            let o = builtin_quantale(other).unwrap();
            assert_eq!(o.labels(), b.labels());
            for p in b.elements() {
                for q in b.elements() {
                    assert_eq!(o.tensor(p, q), b.tensor(p, q));
                    assert_eq!(o.ldd(p, q), b.ldd(p, q));
                }
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(builtin_quantale("godel:1"), Err(QuantaleError::BadParameter(_))));
        assert!(matches!(builtin_quantale("endo"), Err(QuantaleError::BadParameter(_))));
        assert!(matches!(builtin_quantale("frobnitz:3"), Err(QuantaleError::BadParameter(_))));
        assert!(matches!(parse_quantale_ref("/nonexistent/q.json"), Err(QuantaleError::Malformed(_))));
    }

    #[test]
    fn lattice_operations_on_sets() {
        let b = builtin_quantale("bool").unwrap();
        assert_eq!(b.join_all([]), 0);
        assert_eq!(b.meet_all([]), 1);
        let l = builtin_quantale("lukasiewicz:3").unwrap();
        assert_eq!(l.meet_all([1, 2]), 1);
        let q = builtin_quantale("endo:3").unwrap();
        assert_eq!(q.join_all([e(&q, "(0,1)"), e(&q, "(1/2,1/2)")]), e(&q, "(1/2,1)"));
    }
}
