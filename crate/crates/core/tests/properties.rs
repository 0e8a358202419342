//! Randomized structural properties over the corpus.

mod support;

use proptest::prelude::*;
use support::Draw;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() }
}

fn check(outcome: support::Outcome) -> Result<(), TestCaseError> {
    match outcome {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err(TestCaseError::reject("hypothesis or budget")),
        Err(msg) => Err(TestCaseError::fail(msg)),
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn coboundaries_square_to_zero(seed: u64) {
        check(support::coboundaries_square_to_zero(&mut Draw::new(seed)))?;
    }

    #[test]
    fn degree_zero_is_fixed_points(seed: u64) {
        check(support::degree_zero_is_fixed_points(&mut Draw::new(seed)))?;
    }

    #[test]
    fn kappa_does_not_depend_on_the_lift(seed: u64) {
        check(support::kappa_does_not_depend_on_the_lift(&mut Draw::new(seed)))?;
    }

    #[test]
    fn kappa_is_functorial(seed: u64) {
        check(support::kappa_is_functorial(&mut Draw::new(seed)))?;
    }

    #[test]
    fn delta_image_is_stable(seed: u64) {
        check(support::delta_image_is_stable(&mut Draw::new(seed)))?;
    }

    #[test]
    fn larger_families_have_fewer_stable_elements(seed: u64) {
        check(support::larger_families_have_fewer_stable_elements(&mut Draw::new(seed)))?;
    }

    #[test]
    fn transporter_and_linking_nerves_agree(seed: u64) {
        check(support::transporter_and_linking_nerves_agree(&mut Draw::new(seed)))?;
    }

    #[test]
    fn nerve_does_not_depend_on_the_collection(seed: u64) {
        check(support::nerve_does_not_depend_on_the_collection(&mut Draw::new(seed)))?;
    }
}
