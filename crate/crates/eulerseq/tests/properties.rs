//! One test per shared property suite; the bodies live in
//! `common/mod.rs` so the acceptance target can time the same sweep.

mod common;

#[test]
fn quotient_lift_adjustment_law() {
    common::quotient_lift_adjustment();
}

#[test]
fn generation_routes_agree() {
    common::generation_routes();
}

#[test]
fn class_projection_between_levels() {
    common::class_projection();
}

#[test]
fn lifts_spread_across_distinct_classes() {
    common::lift_spread();
}

#[test]
fn one_bits_split_under_lifting() {
    common::one_bit_split();
}

#[test]
fn folding_reaches_the_lower_level() {
    common::folding();
}

#[test]
fn base_divisibility_pattern() {
    common::base_divisibility();
}

#[test]
fn synthesis_matches_gcd_on_random_sequences() {
    common::bm_vs_gcd_random();
}

#[test]
fn structured_route_matches_exhaustive_search() {
    common::structured_vs_brute_small();
}

#[test]
fn structured_route_matches_exhaustive_search_heavier() {
    common::structured_vs_brute_heavy();
}

#[test]
fn formulas_match_exhaustive_search() {
    common::formula_vs_brute();
}

#[test]
fn formulas_match_structured_route_at_period_125() {
    common::formula_vs_structured_heavy();
}

#[test]
fn complement_formulas_match_structured_route() {
    common::complement_formula_vs_structured();
}
