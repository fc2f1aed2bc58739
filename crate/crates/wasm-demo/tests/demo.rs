use fastrip_wasm_demo::{chain_response_impl, chaos_histogram_impl, rip_curve_impl};

#[test]
fn full_sampling_preserves_norm() {
    let r = chain_response_impl("theorem1", "wht", 64, 64, 3, &[1, 5, 9]).unwrap();
    assert!((r.norm - 1.0).abs() < 1e-12);
    assert_eq!(r.magnitudes.len(), 64);
    assert_eq!(r.transforms, 3);
    assert_eq!(r.ops, (3 * 64 * 6 + 2 * 64 + 64) as f64);
}

#[test]
fn complex_transform_works() {
    let r = chain_response_impl("theorem1", "dft", 32, 8, 1, &[0]).unwrap();
    assert_eq!(r.magnitudes.len(), 8);
    let sq: f64 = r.magnitudes.iter().map(|m| m * m).sum();
    assert!((sq.sqrt() - r.norm).abs() < 1e-12);
}

#[test]
fn bad_inputs_are_reported() {
    assert!(chain_response_impl("theorem1", "wht", 16, 4, 0, &[16]).is_err());
    assert!(chain_response_impl("theorem1", "wht", 16, 4, 0, &[]).is_err());
    assert!(chain_response_impl("nope", "wht", 16, 4, 0, &[0]).is_err());
    assert!(chain_response_impl("theorem1", "wht", 12, 4, 0, &[0]).is_err());
}

#[test]
fn rip_curve_decreases_with_k() {
    let d = rip_curve_impl(256, 2, &[8, 128], 2000, 5).unwrap();
    assert_eq!(d.len(), 2);
    assert!(d[1] < d[0], "{d:?}");
}

#[test]
fn histogram_accounts_for_every_trial() {
    let h = chaos_histogram_impl(64, 16, 500, 20, 2).unwrap();
    assert_eq!(h.counts.iter().sum::<u32>(), 500);
    assert!(h.lo <= h.median && h.median <= h.hi);
}
