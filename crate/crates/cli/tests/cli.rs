use std::process::{Command, Output};

use casimir::curve::CurveData;
use casimir::lifshitz::{casimir_force, LayeredStack, QuadratureSpec, StackDefaults};
use casimir::materials::{self, lookup_film};
use casimir::scenarios::{self, ForceScenario};
use casimir::units::{self, Length};

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn value(out: &Output, key: &str) -> f64 {
    let text = stdout(out);
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no `{key}=` in {text}"));
    line.parse().unwrap()
}

#[test]
fn table1_prints_stored_rows() {
    let out = casimir(&["table1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "20,13.19,18,0,1",
            "15,10.05,19,0,1",
            "10,6.28,19,0,1",
            "6.4,1.25,80,-0.7,0.3",
            "4,1.88,20,-1,0"
        ]
    );
}

#[test]
fn epsilon_is_a_pass_through() {
    let out = casimir(&["epsilon", "--film-nm", "20", "--xi", "1e16"]);
    assert!(out.status.success());
    let direct = lookup_film(20.0)
        .unwrap()
        .model()
        .epsilon_iw(units::from_per_second(1e16))
        .unwrap();
    assert_eq!(value(&out, "epsilon").to_bits(), direct.to_bits());

    let out = casimir(&["epsilon", "--material", "si", "--xi-w0", "0.5"]);
    let direct = materials::silicon().epsilon_iw(0.5).unwrap();
    assert_eq!(value(&out, "epsilon").to_bits(), direct.to_bits());
}

#[test]
fn eta_matches_thickness_sweep() {
    let out = casimir(&["eta", "--L-nm", "400", "--film-nm", "6.4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 1);
    let eta = value(&out, "eta");
    let fig4 = ForceScenario::default()
        .fig4_eta_vs_thickness(400.0, &scenarios::table1_thicknesses())
        .unwrap();
    let i = fig4.x.iter().position(|&d| d == 6.4).unwrap();
    assert_eq!(eta.to_bits(), fig4.y[i].to_bits());
    assert!((eta - 0.429_561_039_894).abs() < 1e-6);
    assert!(stderr(&out).contains("evaluations"));
}

#[test]
fn inline_parameters_reproduce_the_tabulated_film() {
    let tabulated = casimir(&["force", "--L-nm", "250", "--film-nm", "6.4"]);
    let inline = casimir(&[
        "force",
        "--L-nm",
        "250",
        "--film-nm",
        "6.4",
        "--wp",
        "1.25",
        "--tau-fs",
        "80",
        "--c1",
        "-0.7",
    ]);
    assert_eq!(stdout(&tabulated), stdout(&inline));

    let stack = LayeredStack::tabulated_film(
        &lookup_film(6.4).unwrap(),
        Length::nanometers(250.0),
        &StackDefaults::default(),
    )
    .unwrap();
    let lib = casimir_force(&stack, &QuadratureSpec::default()).unwrap();
    assert_eq!(
        value(&inline, "pressure_pa").to_bits(),
        lib.pressure.to_bits()
    );
    assert_eq!(
        value(&inline, "eta_error").to_bits(),
        lib.eta_error.to_bits()
    );
}

#[test]
fn materials_file_overrides_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(
        &path,
        r#"{"mirror": {"model": "plasma", "omega_p": 1000.0}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = casimir(&[
        "eta",
        "--materials",
        p,
        "--half-space",
        "mirror",
        "--substrate",
        "mirror",
        "--film-material",
        "mirror",
        "--film-nm",
        "0",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let eta = value(&out, "eta");
    assert!(eta > 0.99 && eta < 1.0, "{eta}");
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    for (args, flag) in [
        (
            vec!["eta", "--film-nm", "6.4", "--half-space", "unobtainium"],
            "--half-space",
        ),
        (vec!["eta", "--film-nm", "7"], "--film-nm"),
        (vec!["eta", "--L-nm", "x", "--film-nm", "4"], "--L-nm"),
        (vec!["eta", "--L-nm", "-3", "--film-nm", "4"], "--L-nm"),
        (vec!["eta", "--film-nm", "4", "--rel-tol", "0"], "--rel-tol"),
        (vec!["epsilon", "--film-nm", "4", "--xi", "-1"], "--xi"),
        (
            vec![
                "force",
                "--film-nm",
                "6.4",
                "--wp",
                "1.0",
                "--tau-fs",
                "10",
                "--c1",
                "0.5",
            ],
            "--c1",
        ),
        (
            vec![
                "eta",
                "--film-nm",
                "4",
                "--materials",
                "/nonexistent/m.json",
            ],
            "--materials",
        ),
        (vec!["delta", "--points", "1"], "--points"),
        (vec!["eta", "--film-nm", "4", "--threads", "0"], "--threads"),
    ] {
        let out = casimir(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn unwritable_output_is_rejected_before_computing() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out = casimir(&["sweep-thickness", "--out", blocker.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--out"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn convergence_failure_exits_3_with_best_estimate() {
    let out = casimir(&[
        "eta",
        "--film-nm",
        "6.4",
        "--rel-tol",
        "1e-14",
        "--max-refinements",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let estimate = value(&out, "best_estimate");
    let error = value(&out, "achieved_error");
    assert!((estimate - 0.4296).abs() < 1e-3 && error > 0.0);
}

#[test]
fn sweeps_write_regenerable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = casimir(&[
        "sweep-separation",
        "--film-nm",
        "6.4,4",
        "--L-min-nm",
        "300",
        "--L-max-nm",
        "500",
        "--L-step-nm",
        "100",
        "--rel-tol",
        "1e-5",
        "--out",
        d,
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let listing = stdout(&out);
    let files: Vec<&str> = listing.lines().collect();
    assert_eq!(files.len(), 2);
    assert!(files[0].ends_with("fig3_d6.4nm.csv"));
    for file in files {
        let curve = CurveData::read(file.as_ref()).unwrap();
        assert_eq!(curve.x, [300.0, 400.0, 500.0]);
        assert_eq!(scenarios::regenerate(&curve).unwrap(), curve);
    }
}

#[test]
fn stdout_csv_matches_library() {
    let out = casimir(&["delta", "--points", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let split = text.find("# label=plasma").unwrap();
    let drude = CurveData::from_csv(&text[..split]).unwrap();
    let plasma = CurveData::from_csv(&text[split..]).unwrap();
    let grid = scenarios::LogGrid::new(1e-4, 1e3, 7).values();
    let [lib_drude, lib_plasma] = scenarios::fig5_delta_percent(6.4, &grid, 1.0).unwrap();
    assert_eq!(drude, lib_drude);
    assert_eq!(plasma, lib_plasma);
}

#[test]
fn thread_count_does_not_change_results() {
    let one = casimir(&["--threads", "1", "eta", "--film-nm", "10", "--L-nm", "600"]);
    let three = casimir(&["eta", "--film-nm", "10", "--L-nm", "600", "--threads", "3"]);
    assert!(one.status.success() && three.status.success());
    assert_eq!(stdout(&one), stdout(&three));
}

#[test]
fn help_documents_units() {
    for sub in [
        "epsilon",
        "force",
        "eta",
        "sweep-separation",
        "sweep-thickness",
        "delta",
    ] {
        let out = casimir(&[sub, "--help"]);
        assert!(out.status.success());
        let help = stdout(&out);
        assert!(help.contains("nm") || help.contains("ω₀"), "{sub}: {help}");
    }
    let help = stdout(&casimir(&["--help"]));
    for unit in ["nm", "s⁻¹", "ω₀", "fs", "Pa"] {
        assert!(help.contains(unit), "top-level help lacks {unit}");
    }
}
