use dvr_core::datasets::Dataset;
use dvr_core::density::KernelFamily;
use dvr_core::filtration::FiltrationFamily;
use dvr_core::io::{read_cloud_file, read_diagram_file, write_cloud_file, write_diagram_file};
use dvr_core::pipeline::{compute_diagram, KChoice, RunConfig};
use dvr_core::plot::diagram_svg;

fn small_circles() -> dvr_core::PointCloud {
    Dataset::TwoCircles.generate(4, Some(200)).unwrap()
}

#[test]
fn runs_are_deterministic() {
    assert_eq!(small_circles(), small_circles());
    let cfg = RunConfig::default();
    let a = compute_diagram(&small_circles(), &cfg).unwrap();
    let b = compute_diagram(&small_circles(), &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn two_circles_have_two_components() {
    let cloud = Dataset::TwoCircles.generate(4, None).unwrap();
    for kernel in [KernelFamily::Biweight, KernelFamily::Triweight] {
        let cfg = RunConfig {
            k: KChoice::Fixed(10),
            kernel,
            ..RunConfig::default()
        };
        let d = compute_diagram(&cloud, &cfg).unwrap();
        assert_eq!(d.infinite_count(0), 2);
        assert!(d.finite_lifetimes(1).len() >= 2);
    }
    let vr = RunConfig {
        family: FiltrationFamily::Vr,
        ..RunConfig::default()
    };
    assert_eq!(compute_diagram(&cloud, &vr).unwrap().infinite_count(0), 1);
}

#[test]
fn metadata_records_the_run() {
    let d = compute_diagram(&small_circles(), &RunConfig::default()).unwrap();
    assert_eq!(d.metadata["filtration"], "dvr");
    assert_eq!(d.metadata["kernel"], "biweight");
    assert_eq!(d.metadata["oracle_density"], true);
    assert!(d.metadata["k"].as_u64().unwrap() >= 6);
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cloud = small_circles();
    let csv = dir.path().join("cloud.csv");
    write_cloud_file(&cloud, &csv).unwrap();
    assert_eq!(read_cloud_file(&csv).unwrap(), cloud);

    let d = compute_diagram(&cloud, &RunConfig::default()).unwrap();
    let json = dir.path().join("dgm.json");
    write_diagram_file(&d, &json).unwrap();
    assert_eq!(read_diagram_file(&json).unwrap(), d);

    let svg = diagram_svg(&d);
    assert_eq!(svg.matches("class=\"point\"").count(), {
        let mut seen: Vec<(usize, u64, u64)> =
            d.points().iter().map(|p| (p.dim, p.birth.to_bits(), p.death.to_bits())).collect();
        seen.dedup();
        seen.len()
    });
}

#[test]
fn every_family_runs_on_a_sample() {
    let cloud = Dataset::NoisyCircle.generate(2, Some(40)).unwrap();
    for family in FiltrationFamily::ALL {
        let cfg = RunConfig {
            family,
            k: KChoice::Fixed(6),
            ..RunConfig::default()
        };
        let d = compute_diagram(&cloud, &cfg).unwrap();
        assert_eq!(d.infinite_count(0), 1, "{family}");
        assert_eq!(d.metadata["filtration"], family.name());
    }
}
