use std::path::PathBuf;
use std::process::Command;

use rotconj_cli::Report;

pub struct Case {
    pub name: &'static str,
    pub command: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// Semantic expectation on the parsed report.
    pub check: fn(&Report) -> bool,
}

pub const CASES: &[Case] = &[
    Case {
        name: "classify_su2",
        command: "classify",
        args: &[],
        exit: 0,
        check: |r| {
            let c = r.certificate.as_ref().unwrap();
            r.conjugate == Some(true)
                && c.sign == Some(-1)
                && c.ell == Some(vec![0])
                && c.matrix == vec![vec![1]]
                && r.numeric_check.as_ref().unwrap().max_error <= 1e-9
        },
    },
    Case {
        name: "classify_su2_irrational",
        command: "classify",
        args: &["--seed", "7"],
        exit: 0,
        check: |r| r.conjugate == Some(true) && r.numeric_check.as_ref().unwrap().passed,
    },
    Case {
        name: "classify_torus_positive",
        command: "classify",
        args: &[],
        exit: 0,
        check: |r| r.conjugate == Some(true) && r.certificate.is_some(),
    },
    Case {
        name: "classify_torus_negative",
        command: "classify",
        args: &[],
        exit: 1,
        check: |r| r.conjugate == Some(false) && r.certificate.is_none(),
    },
    Case {
        name: "classify_malformed",
        command: "classify",
        args: &[],
        exit: 2,
        check: |r| !r.errors.is_empty(),
    },
    Case {
        name: "classify_missing_right",
        command: "classify",
        args: &[],
        exit: 2,
        check: |r| r.errors.iter().any(|e| e.contains("right")),
    },
    Case {
        name: "invariants_su2",
        command: "invariants",
        args: &[],
        exit: 0,
        check: |r| {
            let i = r.invariants.as_ref().unwrap();
            (i.tail_reductive_rank, i.tail_components, i.reductive_rank, i.components)
                == (Some(1), Some(1), 1, 2)
                && i.case.as_deref() == Some("Case1")
        },
    },
    Case {
        name: "invariants_torus",
        command: "invariants",
        args: &[],
        exit: 0,
        check: |r| {
            let i = r.invariants.as_ref().unwrap();
            (i.rank, i.reductive_rank, i.components) == (3, 2, 2)
        },
    },
    Case {
        name: "normal_form",
        command: "normal-form",
        args: &[],
        exit: 0,
        check: |r| {
            let n = r.normal_form.as_ref().unwrap();
            (n.m, n.k, n.d, n.zeros) == (1, 1, 2, 1) && n.image == ["a", "1/2", "0"]
        },
    },
    Case {
        name: "orbit_rational",
        command: "orbit",
        args: &["--steps", "100"],
        exit: 0,
        check: |r| {
            let o = r.orbit.as_ref().unwrap();
            o.distinct_points == Some(3) && o.components == 3 && o.dimension == 0
        },
    },
    Case {
        name: "orbit_irrational",
        command: "orbit",
        args: &[],
        exit: 0,
        check: |r| {
            let o = r.orbit.as_ref().unwrap();
            o.distinct_points.is_none() && (o.dimension, o.components) == (1, 2)
        },
    },
    Case {
        name: "oracle_su2",
        command: "oracle",
        args: &[],
        exit: 0,
        check: |r| r.conjugate == Some(true),
    },
    Case {
        name: "oracle_negative",
        command: "oracle",
        args: &[],
        exit: 1,
        check: |r| r.conjugate == Some(false),
    },
    Case {
        name: "oracle_irrational",
        command: "oracle",
        args: &[],
        exit: 2,
        check: |r| r.conjugate.is_none() && !r.errors.is_empty(),
    },
    Case {
        name: "verify_valid",
        command: "verify",
        args: &[],
        exit: 0,
        check: |r| r.certificate_valid == Some(true) && r.conjugate == Some(true),
    },
    Case {
        name: "verify_invalid",
        command: "verify",
        args: &[],
        exit: 1,
        check: |r| r.certificate_valid == Some(false) && r.certificate.is_none(),
    },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// `(stdout, exit code)` of `rotconj <command> <case>.toml --json <args>`.
pub fn run_binary(case: &Case) -> (String, i32) {
    let input = golden_dir().join(format!("{}.toml", case.name));
    let out = Command::new(env!("CARGO_BIN_EXE_rotconj"))
        .arg(case.command)
        .arg(&input)
        .arg("--json")
        .args(case.args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1),
    )
}

/// Compares one case against its golden file. With `ROTCONJ_BLESS` set the golden
/// file is rewritten instead.
pub fn check_case(case: &Case) -> Result<(), String> {
    let (first, code) = run_binary(case);
    let (second, _) = run_binary(case);
    if first != second {
        return Err(format!("{}: output differs between runs", case.name));
    }
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}", case.name, case.exit));
    }
    let report = Report::from_json(&first).map_err(|e| format!("{}: {e}", case.name))?;
    if Report::from_json(&report.to_json()).ok().as_ref() != Some(&report) {
        return Err(format!("{}: report does not round-trip", case.name));
    }
    if !(case.check)(&report) {
        return Err(format!("{}: unexpected report contents", case.name));
    }
    let golden = golden_dir().join(format!("{}.json", case.name));
    if std::env::var_os("ROTCONJ_BLESS").is_some() {
        std::fs::write(&golden, &first).map_err(|e| e.to_string())?;
    }
    let expected = std::fs::read_to_string(&golden)
        .map_err(|e| format!("{}: missing golden file ({e})", case.name))?;
    if expected != first {
        return Err(format!("{}: output differs from golden file", case.name));
    }
    Ok(())
}
