//! Library results against independently computed oracles.

use goguen_core::algebras::{enumerate_em_algebras, enumerate_lattices, enumerate_qmodules};
use goguen_core::submonads::{enumerate_qfilters, FilterPredicate};
use goguen_core::towers::{Tower, DEFAULT_CAP};
use goguen_core::{builtin_quantale, parse_quantale_ref, Params, Quantale};

fn q(name: &str) -> Quantale {
    builtin_quantale(name).unwrap()
}

/// Proper filters of the powerset of `0..n`, by scanning all families of subsets.
fn set_filter_count(n: usize) -> usize {
    let subsets = 1usize << n;
    (0u64..1 << subsets)
        .filter(|&fam| {
            let has = |s: usize| fam >> s & 1 == 1;
            let full = subsets - 1;
            has(full)
                && !has(0)
                && (0..subsets).all(|a| !has(a) || (0..subsets).all(|b| (a & !b) != 0 || has(b)))
                && (0..subsets).all(|a| (0..subsets).all(|b| !(has(a) && has(b)) || has(a & b)))
        })
        .count()
}

/// Labelled partial orders on `0..n` that are lattices.
fn labelled_lattice_count(n: usize) -> usize {
    let pairs = n * n;
    (0u64..1 << pairs)
        .filter(|&bits| {
            let le = |a: usize, b: usize| bits >> (a * n + b) & 1 == 1;
            let order = (0..n).all(|a| le(a, a))
                && (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))))
                && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c))));
            let has_join = |a: usize, b: usize| {
                (0..n).any(|j| le(a, j) && le(b, j) && (0..n).all(|u| !(le(a, u) && le(b, u)) || le(j, u)))
            };
            let has_bottom = (0..n).any(|z| (0..n).all(|x| le(z, x)));
            order && has_bottom && (0..n).all(|a| (0..n).all(|b| has_join(a, b)))
        })
        .count()
}

#[test]
fn bool_filters_are_set_filters() {
    for n in 0..=2 {
        let got = enumerate_qfilters(&q("bool"), n, DEFAULT_CAP, FilterPredicate::Full).unwrap().len();
        assert_eq!(got, set_filter_count(n), "|X| = {n}");
    }
}

#[test]
fn bool_algebras_are_labelled_lattices() {
    for n in 1..=3 {
        let oracle = labelled_lattice_count(n);
        let params = Params { max_size: n, ..Params::default() };
        assert_eq!(enumerate_em_algebras(&q("bool"), n, &params).unwrap().len(), oracle, "|X| = {n}");
        assert_eq!(enumerate_lattices(n, DEFAULT_CAP).unwrap().len(), oracle, "|X| = {n}");
        assert_eq!(enumerate_qmodules(&q("bool"), n, DEFAULT_CAP).unwrap().len(), oracle, "|X| = {n}");
    }
}

#[test]
fn lukasiewicz_residuals_match_closed_form() {
    for n in [3usize, 4, 5] {
        let quant = q(&format!("lukasiewicz:{n}"));
        let d = (n - 1) as i64;
        for a in 0..n {
            for b in 0..n {
                let (a8, b8) = (a as u8, b as u8);
                let tensor = (a as i64 + b as i64 - d).max(0);
                assert_eq!(quant.tensor(a8, b8) as i64, tensor);
                let imp = (d - b as i64 + a as i64).min(d);
                assert_eq!(quant.ldd(a8, b8) as i64, imp, "ldd({a},{b}) on {n}");
                assert_eq!(quant.rdd(b8, a8) as i64, imp, "rdd({b},{a}) on {n}");
            }
        }
    }
}

#[test]
fn godel_residual_is_relative_pseudocomplement() {
    let quant = q("godel:4");
    for a in 0..4u8 {
        for b in 0..4u8 {
            assert_eq!(quant.tensor(a, b), a.min(b));
            assert_eq!(quant.ldd(a, b), if b <= a { 3 } else { a });
        }
    }
}

#[test]
fn definition_roundtrip_through_json() {
    let dir = std::env::temp_dir().join(format!("goguen-core-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["bool", "lukasiewicz:4", "endo:3"] {
        let original = q(name);
        let path = dir.join(format!("{}.json", name.replace(':', "-")));
        std::fs::write(&path, serde_json::to_string(&original.to_def()).unwrap()).unwrap();
        let back = parse_quantale_ref(path.to_str().unwrap()).unwrap();
        back.validate().unwrap();
        assert_eq!(back, original);
    }
}

#[test]
fn endo3_is_noncommutative() {
    let quant = q("endo:3");
    assert!(!quant.is_commutative());
    let witness = quant
        .elements()
        .flat_map(|a| quant.elements().map(move |b| (a, b)))
        .find(|&(a, b)| quant.tensor(a, b) != quant.tensor(b, a));
    assert!(witness.is_some());
}

#[test]
fn tower_cardinalities() {
    // |Q^X| = 2^2, |Q^{Q^X}| = 2^4, |Q^{Q^{Q^X}}| = 2^16
    let t = Tower::new(2, 2, u64::MAX, 0);
    assert_eq!(t.card(0), Some(2));
    assert_eq!(t.card(1), Some(4));
    assert_eq!(t.card(2), Some(16));
    assert_eq!(t.card(3), Some(65536));
    assert_eq!(t.card(4), None);
    let t = Tower::new(3, 1, DEFAULT_CAP, 0);
    assert_eq!(t.card(2), Some(27));
    assert_eq!(t.card(3), Some(3u64.pow(27)));
    assert_eq!(t.enumerable(3), None);
}
