mod common;

#[test]
fn golden_outputs() {
    let failures: Vec<String> = common::CASES
        .iter()
        .filter_map(|c| common::check_case(c).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn usage_errors_exit_with_two() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_rotconj"))
        .arg("frobnicate")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_rotconj"))
        .args(["classify", "/nonexistent/problem.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_output_is_stable() {
    let input = common::golden_dir().join("classify_su2.toml");
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_rotconj"))
            .arg("classify")
            .arg(&input)
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("conjugate: true"));
}
