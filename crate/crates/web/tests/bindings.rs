use pointscatter_web::{configure, preset_names, run_scan, run_spectrum, Settings};

fn coarse(delta: f64, pinv: bool, policy: u8, param: f64) -> Settings {
    Settings::new(delta, 1, pinv, policy, param, 0.25)
}

#[test]
fn preset_list_matches_the_runner() {
    let names = preset_names();
    assert_eq!(names.len(), 19);
    assert_eq!(names[0], "fig1a");
}

#[test]
fn clean_scan_finds_the_preset_scatterers() {
    let scan = run_scan("fig1a", &coarse(0.0, false, 1, 1e-8), &[]).unwrap();
    assert_eq!((scan.nx(), scan.ny()), (81, 81));
    assert_eq!(scan.gray().len(), 81 * 81);
    assert_eq!(scan.rank_used(), 3);
    assert_eq!(scan.peaks().len(), 6);
    assert!(scan.max_error() < 1e-9);
    assert_eq!(scan.truth(), vec![5.0, 0.0, -5.0, 0.0, 3.0, 9.0]);
}

#[test]
fn custom_sources_replace_the_preset() {
    let sources = [2.0, 2.0, 1.0, 1.0, -4.0, 6.0, 0.0, 2.0];
    let scan = run_scan("fig1c", &coarse(0.0, true, 0, 0.0), &sources).unwrap();
    assert_eq!(scan.rank_used(), 2);
    assert_eq!(scan.peaks().len(), 4);
    assert!(scan.max_error() < 1e-9);
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(run_scan("fig1a", &coarse(0.0, true, 0, 0.0), &[1.0, 2.0, 3.0]).is_err());
    assert!(run_scan("nope", &coarse(0.0, true, 0, 0.0), &[]).is_err());
    assert!(configure("fig1a", &coarse(0.0, true, 7, 0.0), &[]).is_err());
    assert!(configure("fig1a", &coarse(0.0, true, 2, 25.0), &[]).is_err());
    assert!(configure("fig1a", &coarse(-1.0, true, 0, 0.0), &[]).is_err());
}

#[test]
fn spectrum_lists_noisy_then_clean() {
    let sv = run_spectrum("fig1b", &coarse(0.001, false, 1, 1e-8), &[]).unwrap();
    assert_eq!(sv.len(), 40);
    let (noisy, clean) = sv.split_at(20);
    assert!(clean[2] / clean[3] > 1e6);
    // Noise lifts the tail to roughly δ·max|F|.
    assert!(noisy[19] > 1e-5);

    let sv = run_spectrum("fig1a", &coarse(0.0, false, 1, 1e-8), &[]).unwrap();
    assert_eq!(sv[..20], sv[20..]);
}
