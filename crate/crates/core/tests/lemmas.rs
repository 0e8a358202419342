//! Seeded spot checks of the subgroup and essential-subgroup lemmas.

mod support;

fn run(name: &str, base: u64) {
    let s = support::SUITES.iter().find(|s| s.name == name).unwrap();
    let r = support::run_suite(s, base, s.instances);
    assert_eq!(r.failure, None);
    assert_eq!(r.admitted, s.instances, "only {} admissible draws out of {}", r.admitted, r.draws);
    assert!(r.weight >= s.min_weight, "only {} nontrivial subchecks", r.weight);
}

#[test]
fn strong_p_embedding_passes_to_subgroups_of_p_power_index() {
    run("strongly p-embedded subgroups", 0x5eed_1000);
}

#[test]
fn essentials_below_an_index_p_normal_subgroup_stay_essential() {
    run("essentials below index p", 0x5eed_2000);
}

#[test]
fn essentials_of_a_product_come_from_one_factor() {
    run("product essentials", 0x5eed_3000);
}
