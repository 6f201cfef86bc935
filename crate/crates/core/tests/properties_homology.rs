mod common;

use common::laws;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn homology_vanishes_below_the_lowest_degree(seed in any::<u64>()) {
        laws::vanishing(seed)?;
    }

    #[test]
    fn shifting_moves_the_internal_degree(seed in any::<u64>()) {
        laws::shift_law(seed)?;
    }

    #[test]
    fn kunneth_dimensions(seed in any::<u64>()) {
        laws::kunneth(seed)?;
    }

    #[test]
    fn bar_differential_squares_to_zero(seed in any::<u64>()) {
        laws::square_zero(seed)?;
    }

    #[test]
    fn koszul_complex_matches_bar_complex(seed in any::<u64>()) {
        laws::koszul_vs_bar(seed)?;
    }

    #[test]
    fn bar_complex_matches_minimal_resolution(seed in any::<u64>()) {
        laws::bar_vs_resolution(seed)?;
    }

    #[test]
    fn ideal_and_quotient_dims_are_complementary(seed in any::<u64>()) {
        laws::ideal_complement(seed)?;
    }
}
