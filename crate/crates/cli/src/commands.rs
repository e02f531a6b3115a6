use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rotconj_core::conjugacy::brute_force_oracle;
use rotconj_core::{
    build_conjugacy_map, estimate_rotation_vector, su2_conjugate, torus_conjugate, torus_embed,
    verify_certificate, verify_conjugacy_numeric, Certificate, IntMatrix, OracleMode,
    RotationVector,
};

use crate::problem::{Group, Problem};
use crate::report::{
    CertificateReport, InvariantsReport, NormalFormReport, NumericCheck, OrbitReport, Report,
};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Invariants,
    NormalForm,
    Orbit,
    Oracle,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Invariants => "invariants",
            Command::NormalForm => "normal-form",
            Command::Orbit => "orbit",
            Command::Oracle => "oracle",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub steps: usize,
    pub samples: usize,
    pub tolerance: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            steps: 1000,
            samples: 1000,
            tolerance: 1e-9,
        }
    }
}

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive = 0,
    Negative = 1,
    Error = 2,
}

fn small(x: &BigInt) -> Result<i64, CliError> {
    x.to_i64()
        .ok_or_else(|| CliError::Overflow(format!("integer {x} does not fit in 64 bits")))
}

fn matrix_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>, CliError> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(small).collect())
        .collect()
}

fn certificate_report(cert: &Certificate) -> Result<CertificateReport, CliError> {
    Ok(match cert {
        Certificate::Torus(c) => CertificateReport {
            sign: None,
            ell: None,
            matrix: matrix_rows(&c.a)?,
        },
        Certificate::Su2(c) => CertificateReport {
            sign: Some(c.sign),
            ell: Some(c.ell.iter().map(small).collect::<Result<_, _>>()?),
            matrix: matrix_rows(&c.a)?,
        },
    })
}

fn numeric_check(
    cert: &Certificate,
    left: &RotationVector,
    right: &RotationVector,
    opts: &Options,
) -> Result<Option<NumericCheck>, CliError> {
    let Certificate::Su2(c) = cert else {
        return Ok(None);
    };
    let map = build_conjugacy_map(c.sign, &c.ell, &c.a)?;
    let g = torus_embed(&left.approx())?;
    let g2 = torus_embed(&right.approx())?;
    let max_error = verify_conjugacy_numeric(&map, &g, &g2, opts.samples, opts.seed)?;
    Ok(Some(NumericCheck {
        max_error,
        samples: opts.samples,
        seed: opts.seed,
        tolerance: opts.tolerance,
        passed: max_error <= opts.tolerance,
    }))
}

fn classify(p: &Problem, opts: &Options, report: &mut Report) -> Result<Outcome, CliError> {
    let right = p.right()?;
    let cert = match p.group {
        Group::Torus => torus_conjugate(&p.left, right)?.map(Certificate::Torus),
        Group::Su2xtn => su2_conjugate(&p.left, right)?.map(Certificate::Su2),
    };
    let Some(cert) = cert else {
        report.conjugate = Some(false);
        return Ok(Outcome::Negative);
    };
    if !verify_certificate(&cert, &p.left, right) {
        return Err(CliError::Internal(
            "produced certificate failed exact verification".into(),
        ));
    }
    report.conjugate = Some(true);
    report.certificate = Some(certificate_report(&cert)?);
    report.numeric_check = numeric_check(&cert, &p.left, right, opts)?;
    if report.numeric_check.as_ref().is_some_and(|n| !n.passed) {
        return Err(CliError::Internal(
            "numeric check of the conjugacy map exceeded tolerance".into(),
        ));
    }
    Ok(Outcome::Positive)
}

fn verify(p: &Problem, opts: &Options, report: &mut Report) -> Result<Outcome, CliError> {
    let right = p.right()?;
    let cert = p
        .certificate
        .as_ref()
        .ok_or_else(|| CliError::Input("verify needs a [certificate] table".into()))?;
    let valid = verify_certificate(cert, &p.left, right);
    report.certificate_valid = Some(valid);
    if !valid {
        return Ok(Outcome::Negative);
    }
    report.conjugate = Some(true);
    report.certificate = Some(certificate_report(cert)?);
    report.numeric_check = numeric_check(cert, &p.left, right, opts)?;
    Ok(if report.numeric_check.as_ref().is_none_or(|n| n.passed) {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn invariants(p: &Problem, report: &mut Report) -> Result<Outcome, CliError> {
    let inv = match p.group {
        Group::Torus => {
            let (_, d) = p.left.orbit_invariants();
            InvariantsReport {
                rank: p.left.rank(),
                reductive_rank: p.left.reductive_rank(),
                components: small(&d)?,
                ..InvariantsReport::default()
            }
        }
        Group::Su2xtn => {
            let prof = p.left.su2_profile()?;
            InvariantsReport {
                rank: prof.rank,
                reductive_rank: prof.reductive_rank,
                components: small(&prof.components)?,
                tail_reductive_rank: Some(prof.tail_reductive_rank),
                tail_components: Some(small(&prof.tail_components)?),
                case: Some(prof.case.to_string()),
            }
        }
    };
    report.invariants = Some(inv);
    Ok(Outcome::Positive)
}

fn normal_form(p: &Problem, report: &mut Report) -> Result<Outcome, CliError> {
    let nf = p.left.normal_form();
    report.normal_form = Some(NormalFormReport {
        m: nf.m,
        betas: nf.betas.iter().map(ToString::to_string).collect(),
        k: small(&nf.k)?,
        d: small(&nf.d)?,
        zeros: nf.zeros,
        transform: matrix_rows(&nf.transform)?,
        image: nf
            .vector(&p.table)
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect(),
    });
    Ok(Outcome::Positive)
}

fn distinct_points(rho: &RotationVector, steps: usize) -> Option<usize> {
    if !rho.is_rational() {
        return None;
    }
    let step: Vec<BigRational> = rho.entries().iter().map(|x| x.rational_part().clone()).collect();
    let mut x = vec![BigRational::zero(); step.len()];
    let mut seen = HashSet::new();
    for _ in 0..steps {
        seen.insert(x.clone());
        for (xi, s) in x.iter_mut().zip(&step) {
            let sum = &*xi + s;
            *xi = &sum - sum.floor();
        }
    }
    Some(seen.len())
}

fn orbit(p: &Problem, opts: &Options, report: &mut Report) -> Result<Outcome, CliError> {
    let theta = p.left.approx();
    let estimate = estimate_rotation_vector(&theta, &vec![0.0; theta.len()], opts.steps)?;
    let (dimension, d) = p.left.orbit_invariants();
    report.orbit = Some(OrbitReport {
        steps: opts.steps,
        estimate,
        distinct_points: distinct_points(&p.left, opts.steps),
        dimension,
        components: small(&d)?,
    });
    Ok(Outcome::Positive)
}

fn oracle(p: &Problem, report: &mut Report) -> Result<Outcome, CliError> {
    let right = p.right()?;
    let mode = match p.group {
        Group::Torus => OracleMode::Torus,
        Group::Su2xtn => OracleMode::Su2,
    };
    let same = brute_force_oracle(&p.left, right, mode)?;
    report.conjugate = Some(same);
    Ok(if same {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

/// Runs `command` on a problem file's text. Never panics on bad input; errors are
/// recorded in the report with [`Outcome::Error`].
pub fn run(command: Command, text: &str, opts: &Options) -> (Report, Outcome) {
    let mut report = Report::new(command.name());
    let result = crate::problem::parse_problem(text).and_then(|p| {
        report.group = Some(p.group.to_string());
        match command {
            Command::Classify => classify(&p, opts, &mut report),
            Command::Invariants => invariants(&p, &mut report),
            Command::NormalForm => normal_form(&p, &mut report),
            Command::Orbit => orbit(&p, opts, &mut report),
            Command::Oracle => oracle(&p, &mut report),
            Command::Verify => verify(&p, opts, &mut report),
        }
    });
    match result {
        Ok(outcome) => (report, outcome),
        Err(e) => {
            report.errors.push(e.to_string());
            (report, Outcome::Error)
        }
    }
}
