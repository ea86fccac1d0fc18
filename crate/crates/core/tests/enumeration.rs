use cyclestar::polya_enum::{
    brute_force_census, census_polynomial, feynman_series, shape_count, type_gf,
    DEFAULT_STEP_BUDGET,
};
use cyclestar::symfunc::{Partition, YPolynomial};
use cyclestar::{BigRational, FeynmanTable};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn series_is_symmetric_in_rows_and_columns() {
    for n in 1..=4 {
        for m in 1..=4 {
            assert_eq!(
                feynman_series(n, m, 2),
                feynman_series(m, n, 2),
                "F({n},{m})"
            );
        }
    }
}

#[test]
fn nonzero_weights_are_interchangeable_but_zero_is_not() {
    let f = feynman_series(2, 2, 2);
    assert_eq!(f.permute_variables(&[0, 2, 1]), f);
    assert_ne!(f.permute_variables(&[1, 0, 2]), f);
    let f = feynman_series(3, 2, 3);
    assert_eq!(f.permute_variables(&[0, 3, 1, 2]), f);
}

#[test]
fn rectangle_recursion_reassembles_g() {
    let (n, m, p) = (3u32, 3u32, 2usize);
    let mut table = FeynmanTable::new(p);
    let mut sum = YPolynomial::variable_power(0, n * m, p + 1);
    for k in 1..=n {
        for l in 1..=m {
            sum = &sum + &table.series(k, l).mul_variable_power(0, n * m - k * l);
        }
    }
    assert_eq!(sum, type_gf(n, m, p));
}

#[test]
fn f22_has_the_printed_twelve_terms_and_census_agrees() {
    let f = feynman_series(2, 2, 2);
    assert_eq!(f.num_terms(), 12);
    assert_eq!(f.coefficient(&[2, 1, 1]), q(1));
    assert_eq!(f.coefficient(&[1, 2, 1]), q(3));
    let census = brute_force_census(2, 2, 2, true, DEFAULT_STEP_BUDGET).unwrap();
    assert_eq!(census_polynomial(&census, 2), f);
}

#[test]
fn all_orbit_total_for_2x2() {
    let census = brute_force_census(2, 2, 2, false, DEFAULT_STEP_BUDGET).unwrap();
    assert_eq!(census.values().sum::<u64>(), 27);
    assert_eq!(type_gf(2, 2, 2).coefficient(&[2, 1, 1]), q(3));
}

#[test]
fn shape_counts_match_census() {
    // A shape λ with ℓ parts is realised by the type (λ_1, ..., λ_ℓ) over weights 0..ℓ.
    for lambda in Partition::all(6).into_iter().filter(|l| l.len() <= 4) {
        let p = lambda.len() as u32 - 1;
        let census = brute_force_census(2, 3, p, false, DEFAULT_STEP_BUDGET).unwrap();
        let ty = cyclestar::EdgeType::new(lambda.parts().to_vec());
        let expect = census.get(&ty).copied().unwrap_or(0);
        assert_eq!(
            shape_count(2, 3, &lambda).unwrap(),
            expect.into(),
            "shape {lambda}"
        );
    }
}

#[test]
fn census_partition_independence() {
    // Different worker counts must give the same tallies.
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let single = pool.install(|| brute_force_census(3, 3, 1, false, DEFAULT_STEP_BUDGET).unwrap());
    let many = brute_force_census(3, 3, 1, false, DEFAULT_STEP_BUDGET).unwrap();
    assert_eq!(single, many);
}
