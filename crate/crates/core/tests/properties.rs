use perfectlike::bounds::{covering_lower_bound, packing_upper_bound};
use perfectlike::catalog::{format_code, format_partition, load_embedded_partition, parse_code, parse_partition};
use perfectlike::construct::{hamming_code, shortened_hamming};
use perfectlike::space::{shorten, Code, Space};
use perfectlike::spectra::{distance_distribution, dual_distribution};
use perfectlike::verify::{is_multifold_packing, is_multiple_covering, is_one_perfect};
use proptest::prelude::*;

fn set_code(q: u32, n: u32, mask: u64) -> Code {
    let space = Space::new(q, n).unwrap();
    let words: Vec<u64> = space
        .iter()
        .enumerate()
        .filter(|(i, _)| *i < 64 && (mask >> i) & 1 == 1)
        .map(|(_, w)| w.packed())
        .collect();
    Code::from_packed(space, words)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_law_on_random_codes(mask in 1u64..(1 << 27) - 1) {
        let code = set_code(3, 3, mask);
        let lambda = is_multifold_packing(&code, 0).unwrap().max_count;
        let mu = is_multiple_covering(&code.complement().unwrap(), 0).unwrap().min_count;
        prop_assert_eq!(mu, 3 * 2 + 1 - lambda);
    }

    #[test]
    fn dual_total_is_index(mask in 1u64..(1 << 16)) {
        let code = set_code(4, 2, mask);
        let dual = dual_distribution(&distance_distribution(&code).unwrap(), code.len()).unwrap();
        let expected = num_rational::BigRational::new(16.into(), (code.len() as i64).into());
        prop_assert_eq!(dual.total(), expected);
        prop_assert!(dual.is_nonnegative());
    }

    #[test]
    fn code_file_round_trip(mask in 1u64..(1 << 27)) {
        let code = set_code(3, 3, mask);
        prop_assert_eq!(parse_code(&format_code(&code)).unwrap(), code);
    }
}

#[test]
fn shortening_a_perfect_code_meets_the_bound() {
    for (q, m) in [(3u32, 2u32), (4, 2), (3, 3)] {
        let hamming = hamming_code(q, m).unwrap().materialize().unwrap();
        assert!(is_one_perfect(&hamming).unwrap().holds);
        for alpha in 0..q as u8 {
            let short = shorten(&hamming, 1, alpha).unwrap();
            let bound = packing_upper_bound(q as u64, short.n() as u64, 1).integer_bound().unwrap();
            assert_eq!(bound, short.len().into());
            assert_eq!(short.min_distance().unwrap(), 3);
        }
    }
}

#[test]
fn shortened_codes_are_tight_packings_and_coverings() {
    for (q, m) in [(3u32, 2u32), (4, 2)] {
        let code = shortened_hamming(q, m).unwrap().materialize().unwrap();
        let n = code.n() as u64;
        let comp = code.complement().unwrap();
        let mu = n * (q as u64 - 1);
        assert!(is_multiple_covering(&comp, mu).unwrap().holds);
        let lower = covering_lower_bound(q as u64, n, mu).integer_bound().unwrap();
        assert!(lower <= comp.len().into());
    }
}

#[test]
fn embedded_partition_round_trips_through_text() {
    let p = load_embedded_partition();
    let again = parse_partition(&format_partition(&p)).unwrap();
    assert_eq!(again.classes(), p.classes());
    assert_eq!(again.labels(), p.labels());
}
