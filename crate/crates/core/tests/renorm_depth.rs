use truchet::cocycle::nu_on_sequence;
use truchet::mc::renorm_depth;
use truchet::renorm::RenormConfig;

#[test]
fn renormalizable_fraction_tracks_nu_on() {
    let config = RenormConfig {
        depth: 5,
        budget: 2000,
        ..RenormConfig::default()
    };
    let report = renorm_depth(0.5, 0.5, &config, 1000, 2024).unwrap();
    let nu = nu_on_sequence(&1.0f64, &1.0, 5);
    for (k, &target) in nu.iter().enumerate().skip(1) {
        let est = report.estimate(&format!("depth>={k}")).unwrap();
        assert!(
            est.z(target).abs() <= 4.0,
            "k={k}: {} vs {target} ({})",
            est.value,
            est.stderr
        );
    }
}
