use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::rng::{Role, SplitMix64};
use crate::scalar::{inner, norm2};
use crate::transforms::TransformKind;

fn wht(n: usize) -> FastTransformSpec {
    FastTransformSpec::new(TransformKind::WalshHadamard, n).unwrap()
}

/// Sylvester Hadamard matrix, normalized, as nested rows.
fn hadamard_rows(n: usize) -> Vec<Vec<f64>> {
    let s = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if (i & j).count_ones() % 2 == 0 { s } else { -s })
                .collect()
        })
        .collect()
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

fn diag(signs: &[i8]) -> Vec<Vec<f64>> {
    let n = signs.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { signs[i] as f64 } else { 0.0 }).collect())
        .collect()
}

fn random_unit(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| f64::sample_gaussian(rng)).collect();
    let nrm = norm2(&v);
    v.into_iter().map(|x| x / nrm).collect()
}

fn random_sparse_unit(rng: &mut SplitMix64, n: usize, s: usize) -> Vec<f64> {
    let support = rand::seq::index::sample(rng, n, s).into_vec();
    let coeffs = random_unit(rng, s);
    let mut x = vec![0.0; n];
    for (&i, c) in support.iter().zip(coeffs) {
        x[i] = c;
    }
    x
}

#[test]
fn sign_vectors_are_deterministic_and_involutive() {
    let a = draw_sign_vector(7, 8);
    let b = draw_sign_vector(7, 8);
    assert_eq!(a, b);
    assert_eq!(a.seed(), Some(7));

    let mut rng = SplitMix64::new(1);
    let x: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut y = x.clone();
    a.apply(&mut y);
    a.apply(&mut y);
    assert_eq!(x, y);
}

#[test]
fn sign_vector_is_unbiased() {
    let v = draw_sign_vector(2024, 1 << 20);
    let mean = v.signs().iter().map(|&s| s as f64).sum::<f64>() / v.len() as f64;
    assert!(mean.abs() < 0.005, "mean {mean}");
    assert!(v.signs().iter().all(|&s| s == 1 || s == -1));
}

#[test]
fn support_set_validation() {
    assert_eq!(SupportSet::new(vec![3, 1, 2], 4).unwrap().indices(), &[1, 2, 3]);
    assert!(matches!(SupportSet::new(vec![1, 1], 4), Err(Error::BadSupport(_))));
    assert!(matches!(SupportSet::new(vec![4], 4), Err(Error::BadSupport(_))));
    let r = SupportSet::random(5, 20, 3).unwrap();
    assert_eq!(r.len(), 5);
    assert_eq!(r, SupportSet::random(5, 20, 3).unwrap());
}

#[test]
fn theorem1_with_unit_signs_reduces_to_subsampled_hadamard() {
    let (n, k) = (16, 4);
    let omega = SupportSet::new(vec![1, 5, 6, 12], n).unwrap();
    let chain =
        build_theorem1_with_signs(&omega, SignVector::ones(n), SignVector::ones(n), wht(n))
            .unwrap();
    let m = chain.materialize::<f64>().unwrap();
    let h = hadamard_rows(n);
    let scale = (n as f64 / k as f64).sqrt();
    for (r, &i) in omega.indices().iter().enumerate() {
        for j in 0..n {
            assert!((m[(r, j)] - scale * h[i][j]).abs() < 1e-10);
        }
    }
}

#[test]
fn theorem1_matches_dense_product() {
    let (n, k) = (16, 8);
    let omega = SupportSet::random(k, n, 4).unwrap();
    let chain = build_theorem1(n, k, &omega, 10, 11, wht(n)).unwrap();
    let h = hadamard_rows(n);
    let eps = draw_sign_vector(10, n);
    let eps_prime = draw_sign_vector(11, n);
    let full = matmul(
        &matmul(&matmul(&matmul(&h, &diag(eps.signs())), &h), &diag(eps_prime.signs())),
        &h,
    );
    let m = chain.materialize::<f64>().unwrap();
    let scale = (n as f64 / k as f64).sqrt();
    for (r, &i) in omega.indices().iter().enumerate() {
        for j in 0..n {
            assert!((m[(r, j)] - scale * full[i][j]).abs() < 1e-10);
        }
    }
}

#[test]
fn theorem1_is_an_isometry_on_average() {
    let (n, k) = (16, 4);
    let omega = SupportSet::first_k(k, n).unwrap();
    let mut rng = SplitMix64::new(77);
    let trials = 10_000;
    let mut total = 0.0;
    for t in 0..trials {
        let chain = build_theorem1(
            n,
            k,
            &omega,
            crate::rng::derive_seed(5, t, Role::Eps),
            crate::rng::derive_seed(5, t, Role::EpsPrime),
            wht(n),
        )
        .unwrap();
        let x = random_unit(&mut rng, n);
        total += norm2(&chain.forward(&x).unwrap()).powi(2);
    }
    let mean = total / trials as f64;
    assert!((mean - 1.0).abs() < 0.03, "mean {mean}");
}

#[test]
fn full_sampling_is_unitary() {
    let n = 8;
    let omega = SupportSet::first_k(n, n).unwrap();
    let chain = build_theorem1(n, n, &omega, 1, 2, wht(n)).unwrap();
    let mut rng = SplitMix64::new(3);
    for _ in 0..100 {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y = chain.forward(&x).unwrap();
        assert!((norm2(&x) - norm2(&y)).abs() < 1e-12);
    }
    let m = chain.materialize::<f64>().unwrap();
    assert!(m.row_gram().max_deviation_from_scaled_identity(1.0) < 1e-10);
}

#[test]
fn theorem1_rejects_bad_support() {
    let omega = SupportSet::first_k(3, 16).unwrap();
    assert!(matches!(
        build_theorem1(16, 4, &omega, 1, 2, wht(16)),
        Err(Error::BadSupport(_))
    ));
}

#[test]
fn plan_round_count_examples() {
    let opts = PlanOptions {
        kappa_override: Some(0.25),
        regime: RegimePolicy::Advisory,
        ..PlanOptions::default()
    };
    let plan = plan_theorem2(4096, 64, 1, 1.0, wht(4096), 0, &opts).unwrap();
    assert_eq!(plan.r, 2);
    assert_eq!(plan.seeds.len(), 3);

    let opts = PlanOptions {
        kappa_override: Some(0.499),
        regime: RegimePolicy::Advisory,
        ..PlanOptions::default()
    };
    let plan = plan_theorem2(64, 64, 1, 1.0, wht(64), 0, &opts).unwrap();
    assert_eq!(plan.r, 1);
}

#[test]
fn plan_rejects_large_kappa() {
    let err = plan_theorem2(1024, 40, 8, 1.0, wht(1024), 0, &PlanOptions::default()).unwrap_err();
    assert!(err.to_string().contains("1.47"), "{err}");
    match err {
        Error::KappaTooLarge { kappa } => {
            let expected = (8.0 * 40.0 * 1024f64.ln() / 1024.0).sqrt();
            assert!((kappa - expected).abs() < 1e-12);
            assert!(kappa > 1.47 && kappa < 1.48);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn plan_regime_policy() {
    // n = 1024: √n = 32, s ln n ≈ 6.93.
    let strict = PlanOptions {
        kappa_override: Some(0.3),
        ..PlanOptions::default()
    };
    assert!(plan_theorem2(1024, 16, 1, 1.0, wht(1024), 0, &strict).is_ok());
    assert!(matches!(
        plan_theorem2(1024, 64, 1, 1.0, wht(1024), 0, &strict),
        Err(Error::RegimeViolation(_))
    ));
    assert!(matches!(
        plan_theorem2(1024, 16, 3, 1.0, wht(1024), 0, &strict),
        Err(Error::RegimeViolation(_))
    ));
    let advisory = PlanOptions {
        regime: RegimePolicy::Advisory,
        ..strict
    };
    let plan = plan_theorem2(1024, 64, 1, 1.0, wht(1024), 0, &advisory).unwrap();
    assert_eq!(plan.warnings.len(), 1);
}

fn theorem2_chain(n: usize, k: usize, seed: u64) -> (TheoremTwoPlan, OperatorChain) {
    let opts = PlanOptions {
        kappa_override: Some(0.3),
        regime: RegimePolicy::Advisory,
        ..PlanOptions::default()
    };
    let plan = plan_theorem2(n, k, 2, 1.0, wht(n), seed, &opts).unwrap();
    let base = TheoremTwoBase::Subsample(SupportSet::first_k(k, n).unwrap());
    let chain = build_theorem2(&plan, &base, wht(n)).unwrap();
    (plan, chain)
}

#[test]
fn theorem2_rows_stay_scaled_orthonormal() {
    let (plan, chain) = theorem2_chain(32, 8, 3);
    let m = chain.materialize::<f64>().unwrap();
    assert!(m.row_gram().max_deviation_from_scaled_identity(4.0) < 1e-8);
    assert_eq!(chain.block_count(), Some(plan.r + 1));
    assert_eq!(chain.transform_count(), 2 * (plan.r + 1) + 1);
    for i in 0..m.rows() {
        assert!((norm2(m.row(i)) - 2.0).abs() < 1e-8);
    }
}

#[test]
fn theorem2_is_an_isometry_on_average_for_sparse_vectors() {
    let (n, k, s) = (32, 8, 2);
    let mut rng = SplitMix64::new(8);
    let trials = 10_000u64;
    let mut total = 0.0;
    for t in 0..trials {
        let (_, chain) = theorem2_chain(n, k, t);
        let x = random_sparse_unit(&mut rng, n, s);
        total += norm2(&chain.forward(&x).unwrap()).powi(2);
    }
    let mean = total / trials as f64;
    assert!((mean - 1.0).abs() < 0.05, "mean {mean}");
}

#[test]
fn theorem2_accepts_dense_base_and_rejects_bad_one() {
    let (n, k) = (32, 8);
    let opts = PlanOptions {
        kappa_override: Some(0.3),
        regime: RegimePolicy::Advisory,
        ..PlanOptions::default()
    };
    let plan = plan_theorem2(n, k, 2, 1.0, wht(n), 1, &opts).unwrap();
    // √(n/k) R_Ω H materialized as a dense base.
    let sub = build_theorem1_with_signs(
        &SupportSet::random(k, n, 2).unwrap(),
        SignVector::ones(n),
        SignVector::ones(n),
        wht(n),
    )
    .unwrap()
    .materialize::<f64>()
    .unwrap();
    let chain = build_theorem2(&plan, &TheoremTwoBase::Dense(Projector::Real(sub.clone())), wht(n))
        .unwrap();
    let m = chain.materialize::<f64>().unwrap();
    assert!(m.row_gram().max_deviation_from_scaled_identity(4.0) < 1e-8);

    let mut bad = sub;
    bad.scale(1.1);
    match build_theorem2(&plan, &TheoremTwoBase::Dense(Projector::Real(bad)), wht(n)) {
        Err(Error::BaseNotScaledOrthonormal { deviation }) => {
            assert!((deviation - (1.21 * 4.0 - 4.0)).abs() < 1e-8)
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn adjoint_identity_on_random_pairs() {
    let n = 64;
    let mut rng = SplitMix64::new(21);
    let chains = [
        build_theorem1(n, 16, &SupportSet::random(16, n, 1).unwrap(), 2, 3, wht(n)).unwrap(),
        theorem2_chain(n, 8, 4).1,
        build_gaussian_baseline(n, 16, 5).unwrap(),
    ];
    for chain in &chains {
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (0..chain.k()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let lhs = inner(&chain.forward(&x).unwrap(), &y);
            let rhs = inner(&x, &chain.adjoint(&y).unwrap());
            assert!((lhs - rhs).abs() <= 1e-10 * norm2(&x) * norm2(&y));
        }
    }
}

#[test]
fn complex_dft_chain_adjoint_identity() {
    let n = 32;
    let spec = FastTransformSpec::new(TransformKind::Dft, n).unwrap();
    let chain = build_theorem1(n, 8, &SupportSet::first_k(8, n).unwrap(), 1, 2, spec).unwrap();
    assert_eq!(chain.field(), Field::Complex);
    let mut rng = SplitMix64::new(2);
    for _ in 0..100 {
        let x: Vec<Complex64> = (0..n).map(|_| Complex64::sample_gaussian(&mut rng)).collect();
        let y: Vec<Complex64> = (0..8).map(|_| Complex64::sample_gaussian(&mut rng)).collect();
        let lhs = inner(&y, &chain.forward(&x).unwrap());
        let rhs = inner(&chain.adjoint(&y).unwrap(), &x);
        assert!((lhs - rhs).norm() <= 1e-10 * norm2(&x) * norm2(&y));
    }
    assert!(matches!(chain.forward(&vec![0.0; n]), Err(Error::FieldMismatch(_))));
}

#[test]
fn real_chain_rejects_complex_input() {
    let chain = build_theorem1(8, 4, &SupportSet::first_k(4, 8).unwrap(), 1, 2, wht(8)).unwrap();
    let x = DenseVector::Complex(vec![Complex64::new(1.0, 0.0); 8]);
    assert!(matches!(
        chain.apply(&x, Direction::Forward),
        Err(Error::FieldMismatch(_))
    ));
    assert!(matches!(
        chain.apply(&DenseVector::Real(vec![0.0; 7]), Direction::Forward),
        Err(Error::LengthMismatch { expected: 8, got: 7 })
    ));
    assert!(matches!(
        chain.apply(&DenseVector::Real(vec![0.0; 8]), Direction::Adjoint),
        Err(Error::LengthMismatch { expected: 4, got: 8 })
    ));
}

#[test]
fn zero_maps_to_zero() {
    let chain = theorem2_chain(32, 8, 1).1;
    let out = chain.apply(&DenseVector::Real(vec![0.0; 32]), Direction::Forward).unwrap();
    assert!(out.as_real().unwrap().iter().all(|&v| v == 0.0));
}

#[test]
fn fast_path_matches_materialized_matvec() {
    let n = 32;
    let mut rng = SplitMix64::new(12);
    for seed in 0..5 {
        for chain in [
            build_theorem1(n, 8, &SupportSet::first_k(8, n).unwrap(), seed, seed + 1, wht(n))
                .unwrap(),
            theorem2_chain(n, 8, seed).1,
        ] {
            let m = chain.materialize::<f64>().unwrap();
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let fast = chain.forward(&x).unwrap();
            let dense = m.matvec(&x).unwrap();
            let err: f64 = fast
                .iter()
                .zip(&dense)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(err <= 1e-8 * norm2(&dense));
        }
    }
}

#[test]
fn materialized_column_is_bitwise_forward_of_basis_vector() {
    let n = 16;
    let chain = build_theorem1(n, 4, &SupportSet::first_k(4, n).unwrap(), 42, 43, wht(n)).unwrap();
    let m = chain.materialize::<f64>().unwrap();
    let e3 = chain.apply(&DenseVector::basis(n, 3), Direction::Forward).unwrap();
    assert_eq!(m.column(3), e3.as_real().unwrap());
}

#[test]
fn materialize_guard() {
    let n = 8192;
    let chain = build_theorem1(n, 4, &SupportSet::first_k(4, n).unwrap(), 1, 2, wht(n)).unwrap();
    assert!(matches!(
        chain.materialize::<f64>(),
        Err(Error::SizeGuard { size: 8192, cap: 4096 })
    ));
}

#[test]
fn identical_specs_materialize_identically() {
    let spec = ChainSpec {
        construction: Construction::Theorem2,
        n: 64,
        k: 8,
        kappa_override: Some(0.2),
        seed: 1234,
        ..ChainSpec::default()
    };
    let a = spec.build().unwrap().materialize::<f64>().unwrap();
    let b = spec.build().unwrap().materialize::<f64>().unwrap();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn adjoint_identity_holds_for_any_theorem1_draw(
        seed in any::<u64>(),
        log_n in 1usize..8,
        frac in 0.05f64..1.0,
    ) {
        let n = 1usize << log_n;
        let k = ((n as f64 * frac).ceil() as usize).clamp(1, n);
        let omega = SupportSet::random(k, n, seed).unwrap();
        let chain = build_theorem1(n, k, &omega, seed ^ 1, seed ^ 2, wht(n)).unwrap();
        let mut rng = SplitMix64::new(seed);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
        let lhs = inner(&chain.forward(&x).unwrap(), &y);
        let rhs = inner(&x, &chain.adjoint(&y).unwrap());
        prop_assert!((lhs - rhs).abs() <= 1e-10 * norm2(&x) * norm2(&y));
    }
}
