//! Named verification suites.

use crate::algebras::{reflects_iso_check, verify_coequalizer, verify_em_base, verify_em_goguen, verify_module_order};
use crate::fuzzy::{verify_image_preimage, verify_inclusion_laws};
use crate::monads::{
    noncommutative_witness, verify_adjunction, verify_beck_chevalley, verify_goguen_structure_maps, verify_lifting,
    verify_monad_laws, MonadTag,
};
use crate::quantale::{verify_quantale_laws, Quantale};
use crate::report::{Params, VerificationReport};
use crate::submonads::{
    step1_check, verify_exp_in_expq, verify_f_in_p2, verify_kowalsky, verify_qfilter_axioms, verify_u_in_p2,
    FilterPredicate,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    Unknown(String),
}

const PLAIN: [&str; 15] = [
    "quantale-laws",
    "residuation",
    "image-preimage",
    "goguen-structure-maps",
    "adjunction",
    "step1",
    "qfilter-axioms",
    "kowalsky",
    "em-base",
    "em-goguen",
    "module-order-roundtrip",
    "reflects-iso",
    "coequalizer",
    "beck-chevalley",
    "noncomm-witness",
];

const LIFTINGS: [MonadTag; 4] = [MonadTag::U, MonadTag::W, MonadTag::P2, MonadTag::F];
const SUBMONADS: [&str; 3] = ["exp-in-expQ", "U-in-P2", "F-in-P2"];

/// Every registered suite name.
pub fn suite_names() -> Vec<String> {
    let mut names: Vec<String> = PLAIN.iter().map(|s| s.to_string()).collect();
    names.extend(MonadTag::ALL.iter().map(|t| format!("monad:{t}")));
    names.extend(LIFTINGS.iter().map(|t| format!("lifting:{t}")));
    names.extend(SUBMONADS.iter().map(|s| format!("submonad:{s}")));
    names
}

pub fn run_suite(name: &str, q: &Quantale, params: &Params) -> Result<VerificationReport, SuiteError> {
    let unknown = || SuiteError::Unknown(name.to_string());
    let mut report = if let Some(tag) = name.strip_prefix("monad:") {
        verify_monad_laws(tag.parse().map_err(|_| unknown())?, q, params)
    } else if let Some(tag) = name.strip_prefix("lifting:") {
        let tag: MonadTag = tag.parse().map_err(|_| unknown())?;
        if !LIFTINGS.contains(&tag) {
            return Err(unknown());
        }
        verify_lifting(tag, q, params)
    } else {
        match name {
            "quantale-laws" => verify_quantale_laws(q),
            "residuation" => verify_inclusion_laws(q, params),
            "image-preimage" => verify_image_preimage(q, params),
            "goguen-structure-maps" => verify_goguen_structure_maps(q, params),
            "adjunction" => verify_adjunction(q, params),
            "submonad:exp-in-expQ" => verify_exp_in_expq(q, params),
            "submonad:U-in-P2" => verify_u_in_p2(q, params),
            "submonad:F-in-P2" => verify_f_in_p2(q, params),
            "step1" => step1_check(q, params),
            "qfilter-axioms" => verify_qfilter_axioms(q, params),
            "kowalsky" => verify_kowalsky(q, params, FilterPredicate::Full),
            "em-base" => verify_em_base(q, params),
            "em-goguen" => verify_em_goguen(q, params),
            "module-order-roundtrip" => verify_module_order(q, params),
            "reflects-iso" => reflects_iso_check(q, params),
            "coequalizer" => verify_coequalizer(q, params),
            "beck-chevalley" => verify_beck_chevalley(q, params),
            "noncomm-witness" => noncommutative_witness(q, params),
            _ => return Err(unknown()),
        }
    };
    report.suite = name.to_string();
    report.params = params.clone();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin_quantale;

    #[test]
    fn registry_resolves_every_name() {
        let names = suite_names();
        assert_eq!(names.len(), 29);
        let q = builtin_quantale("bool").unwrap();
        let params = Params { max_size: 1, cap: 10_000, samples: 8, ..Params::default() };
        for name in names {
            let r = run_suite(&name, &q, &params).unwrap();
            assert_eq!(r.suite, name);
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        let q = builtin_quantale("bool").unwrap();
        for name in ["monad:V", "lifting:expQ", "submonad:x", "nope"] {
            assert!(run_suite(name, &q, &Params::default()).is_err());
        }
    }
}
