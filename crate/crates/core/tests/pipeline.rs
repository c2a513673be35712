use std::io::Write;

use degprobe::boolfun::{AffineMap, Anf, BooleanFunction, ComposedOracle, TruthTable};
use degprobe::catalog::{builtin_reps, load_reps, sweep};
use degprobe::degtest::{
    bounds, dt_from_add, estimate_dt, exact_add, exact_dt, homogeneous_add, Sampling,
};
use degprobe::gf2::{lin_indep_probability, random_invertible, random_point};
use degprobe::ExactProb;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn table_file_to_sweep_row() {
    let f = Anf::parse("x1x2x3 + x2x4x5 + x3x4x6", 8).unwrap();
    let file = f.to_truth_table().to_file_string(true);
    let back = TruthTable::parse_file(&file, true).unwrap();
    let anf = Anf::from_truth_table(&back);
    assert_eq!(anf, f);

    let mut list = tempfile::NamedTempFile::new().unwrap();
    writeln!(list, "# one class\nf_5: {anf}").unwrap();
    let reps = load_reps(list.path(), 8, 3).unwrap();
    let rows = sweep(&reps, 3, 1).unwrap();
    assert_eq!(rows[0].dt_k.to_decimal(6), "0.451172");
}

#[test]
fn table_rows_respect_bounds_and_identity() {
    let rows = sweep(&builtin_reps(3), 3, 0).unwrap();
    let b = bounds(8, 3).unwrap();
    let lin = lin_indep_probability(8, 3);
    for r in &rows {
        assert!(b.contains(&r.dt_k), "{}", r.id);
        assert_eq!(r.dt_k, &r.add_k * &lin);
    }
    assert_eq!(rows[0].dt_k, b.lower);
    assert!(rows.windows(2).all(|w| w[0].dt_k <= w[1].dt_k));
}

#[test]
fn sweep_does_not_depend_on_worker_count() {
    let reps = builtin_reps(2);
    let strip = |rows: Vec<degprobe::catalog::SweepRow>| {
        rows.into_iter()
            .map(|r| (r.id, r.add_k, r.dt_k))
            .collect::<Vec<_>>()
    };
    let one = strip(sweep(&reps, 2, 1).unwrap());
    let four = strip(sweep(&reps, 2, 4).unwrap());
    assert_eq!(one, four);
}

#[test]
fn oracle_and_table_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 3..=6 {
        let f = Anf::random_of_degree(n, 3, &mut rng);
        let tt = f.to_truth_table();
        let map =
            AffineMap::new(random_invertible(n, &mut rng), random_point(n, &mut rng)).unwrap();
        let composed = ComposedOracle::new(&tt, &map).unwrap();
        let direct = exact_add(&tt, 3).unwrap();
        assert_eq!(exact_add(&composed, 3).unwrap(), direct);
        assert_eq!(exact_add(&f, 3).unwrap(), direct);
        assert_eq!(homogeneous_add(&composed, 3).unwrap(), direct);
        assert_eq!(composed.num_vars(), n);
    }
}

#[test]
fn independent_sampling_targets_add() {
    let tt = Anf::parse("x1x2x3 + x4x5x6", 8).unwrap().to_truth_table();
    let add = exact_add(&tt, 3).unwrap();
    let e = estimate_dt(&tt, 3, 200_000, 9, Sampling::IndependentOnly).unwrap();
    assert!(
        (e.p_hat - add.to_f64()).abs() < 4.0 * e.stderr,
        "{e:?} vs {add}"
    );
    let dt = dt_from_add(&add, 8, 3);
    let e = estimate_dt(&tt, 3, 200_000, 9, Sampling::AllTuples).unwrap();
    assert!(
        (e.p_hat - dt.to_f64()).abs() < 4.0 * e.stderr,
        "{e:?} vs {dt}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dt_is_affine_invariant(seed in any::<u64>(), n in 2usize..=6, k in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tt = TruthTable::random(n, &mut rng);
        let map = AffineMap::new(random_invertible(n, &mut rng), random_point(n, &mut rng)).unwrap();
        let moved = tt.compose_affine(&map).unwrap();
        prop_assert_eq!(exact_dt(&tt, k).unwrap(), exact_dt(&moved, k).unwrap());
    }

    #[test]
    fn dt_is_a_probability(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dt = exact_dt(&TruthTable::random(n, &mut rng), k).unwrap();
        prop_assert!(dt >= ExactProb::zero() && dt <= ExactProb::one());
        prop_assert!(dt.denom_divides_pow2(((k + 1) * n) as u32));
    }
}
