//! Acceptance suite: one line per criterion, all tolerances exact.

use goguen_core::algebras::enumerate_em_algebras;
use goguen_core::builtin_quantale;
use goguen_core::monads::{verify_monad_laws_with, MonadTag, MultMutation};
use goguen_core::quantale::verify_quantale_laws;
use goguen_core::submonads::{enumerate_qfilters, verify_kowalsky, FilterPredicate};
use goguen_core::suites::run_suite;
use goguen_core::towers::DEFAULT_CAP;
use goguen_core::{Params, Quantale, Status, VerificationReport};
use std::io::Write;
use std::process::Command;

const BUILTINS: [&str; 6] = ["bool", "godel:3", "godel:4", "lukasiewicz:3", "lukasiewicz:4", "endo:3"];
const SAMPLES: usize = 256;
const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(name: &str) -> Quantale {
    builtin_quantale(name).expect("builtin quantale")
}

fn params(max_size: usize) -> Params {
    Params { max_size, cap: DEFAULT_CAP, samples: SAMPLES, seed: SEED }
}

fn suite(name: &str, quantale: &str, max_size: usize) -> Result<VerificationReport, String> {
    let r = run_suite(name, &q(quantale), &params(max_size)).map_err(|e| e.to_string())?;
    if r.passed() {
        Ok(r)
    } else {
        Err(format!("{name} on {quantale}:\n{}", r.summary()))
    }
}

/// The named check passed (not vacuous, not an observation) on at least `min` cases.
fn passed(r: &VerificationReport, check: &str, min: u64) -> Result<u64, String> {
    let c = r.check(check).ok_or_else(|| format!("{}: missing check {check}", r.suite))?;
    if c.status != Status::Pass {
        return Err(format!("{} on {}: {check} has status {:?}", r.suite, r.quantale, c.status));
    }
    if c.cases < min {
        return Err(format!("{} on {}: {check} ran {} cases, need {min}", r.suite, r.quantale, c.cases));
    }
    Ok(c.cases)
}

/// Every check passed on at least one case; checks gated on commutativity are
/// allowed to report an unmet hypothesis.
fn all_nonvacuous(r: &VerificationReport) -> Result<u64, String> {
    r.checks.iter().filter(|c| c.status != Status::HypothesisUnmet).map(|c| passed(r, &c.name, 1)).sum()
}

fn c1() -> Outcome {
    let mut cases = 0;
    for name in BUILTINS {
        let quant = q(name);
        quant.validate().map_err(|e| format!("{name}: {e}"))?;
        let r = verify_quantale_laws(&quant);
        if !r.passed() {
            return Err(r.summary());
        }
        cases += all_nonvacuous(&r)?;
        cases += all_nonvacuous(&suite("residuation", name, 1)?)?;
    }
    Ok(format!("{} quantales, {cases} cases", BUILTINS.len()))
}

fn c2() -> Outcome {
    let mut cases = 0;
    for name in ["bool", "lukasiewicz:3"] {
        cases += all_nonvacuous(&suite("image-preimage", name, 2)?)?;
    }
    Ok(format!("{cases} cases"))
}

fn c3() -> Outcome {
    let mut cases = 0;
    for (name, size) in [("bool", 2), ("lukasiewicz:3", 1)] {
        for tag in ["expQ", "U", "W"] {
            let r = suite(&format!("monad:{tag}"), name, size)?;
            cases += passed(&r, "unit-law-m-after-Te", 1)? + passed(&r, "unit-law-m-after-eT", 1)?;
            cases += passed(&r, "associativity", SAMPLES as u64)?;
            if tag != "expQ" {
                for c in ["unit-goguen", "unit-equality", "mult-goguen", "mult-equality"] {
                    cases += passed(&r, c, 1)?;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn c4() -> Outcome {
    let mut cases = 0;
    for (name, size) in [("bool", 2usize), ("lukasiewicz:3", 1), ("endo:3", 1)] {
        let r = suite("adjunction", name, size)?;
        let k = q(name).size() as u64;
        let expected: u64 =
            (0..=size as u32).flat_map(|nx| (0..=size as u32).map(move |ny| k.pow(nx * ny + nx + ny))).sum();
        let got = passed(&r, "transpose-goguen-equivalence", expected)?;
        if got != expected {
            return Err(format!("{name}: {got} transpose cases, expected {expected}"));
        }
        cases += all_nonvacuous(&r)?;
    }
    Ok(format!("{cases} cases"))
}

fn c5() -> Outcome {
    let r = suite("monad:P2", "lukasiewicz:3", 1)?;
    let units = passed(&r, "unit-law-mu-after-eta-T", 27)? + passed(&r, "unit-law-mu-after-T-eta", 27)?;
    let assoc = passed(&r, "associativity", SAMPLES as u64)?;
    Ok(format!("{units} unit cases, {assoc} associativity cases"))
}

fn c6() -> Outcome {
    let step1 = passed(&suite("step1", "lukasiewicz:3", 2)?, "step1-equality", 81)?;
    let r = suite("submonad:U-in-P2", "lukasiewicz:3", 2)?;
    let square = passed(&r, "multiplication-square", 3u64.pow(9) * 9)?;
    passed(&r, "j-injective", 1)?;
    passed(&r, "kappa-equals-j", 1)?;
    let r = suite("submonad:exp-in-expQ", "lukasiewicz:3", 2)?;
    passed(&r, "kappa-injective", 1)?;
    passed(&r, "unit-compatibility", 1)?;
    Ok(format!("{step1} step-1 pairs, {square} square cases"))
}

fn c7() -> Outcome {
    for (name, n, expected) in [("bool", 1, 1), ("bool", 2, 3), ("lukasiewicz:3", 1, 1)] {
        let got = enumerate_qfilters(&q(name), n, DEFAULT_CAP, FilterPredicate::Full).map_err(|e| e.to_string())?.len();
        if got != expected {
            return Err(format!("{name} |X|={n}: {got} filters, expected {expected}"));
        }
    }
    let mut cases = 0;
    for name in ["bool", "lukasiewicz:3"] {
        let r = suite("kowalsky", name, 2)?;
        cases += passed(&r, "kowalsky-closure", 1)? + passed(&r, "kowalsky-equals-mu-ii", 1)?;
        all_nonvacuous(&suite("qfilter-axioms", name, 2)?)?;
    }
    Ok(format!("counts 1, 3, 1; {cases} Kowalsky cases"))
}

fn c8() -> Outcome {
    let mut expected = vec![("bool", 2, 2), ("bool", 3, 6)];
    expected.extend(BUILTINS.iter().map(|&name| (name, 1, 1)));
    for (name, n, count) in expected {
        let got = enumerate_em_algebras(&q(name), n, &params(n)).map_err(|e| e.to_string())?.len();
        if got != count {
            return Err(format!("{name} |X|={n}: {got} algebras, expected {count}"));
        }
    }
    let r = suite("module-order-roundtrip", "bool", 2)?;
    let round = passed(&r, "module-order-module", 1)? + passed(&r, "order-module-order", 1)?;
    all_nonvacuous(&suite("em-base", "bool", 2)?)?;
    let mut agree = 0;
    for (name, size) in [("bool", 2), ("lukasiewicz:3", 1)] {
        agree += passed(&suite("em-goguen", name, size)?, "characterizations-agree", 1)?;
    }
    Ok(format!("counts 2, 6, 1; {round} roundtrips; {agree} characterization cases"))
}

fn c9() -> Outcome {
    let iso = passed(&suite("reflects-iso", "bool", 2)?, "reflects-isomorphisms", 1)?;
    let r = suite("coequalizer", "bool", 2)?;
    let xi = passed(&r, "xi-well-defined", 1)?;
    let factor = passed(&r, "factorization", 1)?;
    all_nonvacuous(&r)?;
    Ok(format!("{iso} isomorphisms, {xi} gluings, {factor} factorization cases"))
}

fn c10() -> Outcome {
    let mut cases = 0;
    for name in ["bool", "lukasiewicz:3"] {
        cases += all_nonvacuous(&suite("beck-chevalley", name, 2)?)?;
    }
    Ok(format!("{cases} cases"))
}

fn caught(label: &str, r: &VerificationReport) -> Result<String, String> {
    r.failures()
        .find(|c| c.counterexample.is_some())
        .map(|c| format!("{label}: {}", c.name))
        .ok_or_else(|| format!("mutation {label} went undetected:\n{}", r.summary()))
}

fn c11() -> Outcome {
    let luk4 = q("lukasiewicz:4");
    let corrupt = luk4.with_tensor_entry(1, 2, 1);
    let a = caught("tensor", &verify_quantale_laws(&corrupt))?;
    let b = caught(
        "unit-swap",
        &verify_monad_laws_with(MonadTag::ExpQ, &q("lukasiewicz:3"), &params(1), MultMutation::UnitSwapped),
    )?;
    let c = caught("no-F3", &verify_kowalsky(&q("lukasiewicz:3"), &params(1), FilterPredicate::WithoutF3))?;
    Ok(format!("{a}; {b}; {c}"))
}

fn c12() -> Outcome {
    let dir = std::env::temp_dir().join(format!("goguen-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let path = dir.join(format!("p2-{run}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_goguen"))
            .args(["verify", "monad:P2", "--quantale", "builtin:bool", "--max-size", "1", "--samples", "256"])
            .args(["--seed", "42", "--json"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("run {run} exited with {:?}", out.status.code()));
        }
        outputs.push((std::fs::read(&path).map_err(|e| e.to_string())?, out.stdout));
    }
    if outputs[0] != outputs[1] {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} identical JSON bytes", outputs[0].0.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("quantale laws and implication identities", c1),
        ("image and preimage laws", c2),
        ("monad laws of expQ, U, W", c3),
        ("adjunction by transposition", c4),
        ("double powerset monad laws", c5),
        ("U is a submonad of the double powerset monad", c6),
        ("Q-filter counts and Kowalsky sum", c7),
        ("algebra counts and module characterizations", c8),
        ("monadicity ingredients", c9),
        ("Beck-Chevalley squares", c10),
        ("mutation controls", c11),
        ("deterministic reports", c12),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        match run() {
            Ok(detail) => writeln!(out, "criterion {n:>2} PASS {title} ({detail})").unwrap(),
            Err(why) => {
                writeln!(out, "criterion {n:>2} FAIL {title}\n{why}").unwrap();
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
