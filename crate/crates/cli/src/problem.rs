//! Problem files.
//!
//! ```toml
//! group = "su2xtn"
//! left = ["1/5", "1/3"]
//! right = ["4/5", "1/3"]
//!
//! [symbols]
//! a = 1.4142135623730951
//!
//! [certificate]
//! sign = -1
//! ell = [0]
//! matrix = [[1]]
//! ```

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use num_bigint::BigInt;
use rotconj_core::{Certificate, IntMatrix, RotationVector, Su2Certificate, SymbolTable, TorusCertificate};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Torus,
    Su2xtn,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Torus => "torus",
            Group::Su2xtn => "su2xtn",
        })
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Float(f64),
}

impl Number {
    fn value(self) -> f64 {
        match self {
            Number::Int(i) => i as f64,
            Number::Float(x) => x,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateSpec {
    sign: Option<i32>,
    ell: Option<Vec<i64>>,
    matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    symbols: IndexMap<String, Number>,
    group: Group,
    left: Vec<String>,
    right: Option<Vec<String>>,
    certificate: Option<CertificateSpec>,
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub group: Group,
    pub table: Arc<SymbolTable>,
    pub left: RotationVector,
    pub right: Option<RotationVector>,
    pub certificate: Option<Certificate>,
}

impl Problem {
    pub fn right(&self) -> Result<&RotationVector, CliError> {
        self.right
            .as_ref()
            .ok_or_else(|| CliError::Input("this command needs a `right` vector".into()))
    }
}

fn parse_vector(
    texts: &[String],
    table: &Arc<SymbolTable>,
    side: &str,
) -> Result<RotationVector, CliError> {
    RotationVector::parse(texts, table).map_err(|e| CliError::Input(format!("{side}: {e}")))
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let file: ProblemFile =
        toml::from_str(text).map_err(|e| CliError::Input(e.message().to_string()))?;
    let table = SymbolTable::from_entries(
        file.symbols.iter().map(|(name, v)| (name.as_str(), v.value())),
    )
    .map_err(|e| CliError::Input(e.to_string()))?;
    let left = parse_vector(&file.left, &table, "left")?;
    let right = file
        .right
        .as_ref()
        .map(|r| parse_vector(r, &table, "right"))
        .transpose()?;
    if let Some(r) = &right {
        if r.len() != left.len() {
            return Err(CliError::Input(format!(
                "left has {} entries but right has {}",
                left.len(),
                r.len()
            )));
        }
    }
    if file.group == Group::Su2xtn && left.len() < 2 {
        return Err(CliError::Input(
            "su2xtn vectors need θ_0 and at least one torus angle".into(),
        ));
    }
    let certificate = file
        .certificate
        .map(|c| build_certificate(file.group, c))
        .transpose()?;
    Ok(Problem {
        group: file.group,
        table,
        left,
        right,
        certificate,
    })
}

fn build_certificate(group: Group, spec: CertificateSpec) -> Result<Certificate, CliError> {
    let a = IntMatrix::from_rows(&spec.matrix).map_err(|e| CliError::Input(e.to_string()))?;
    match group {
        Group::Torus => {
            if spec.sign.is_some() || spec.ell.is_some() {
                return Err(CliError::Input(
                    "torus certificates take only `matrix`".into(),
                ));
            }
            Ok(Certificate::Torus(TorusCertificate { a }))
        }
        Group::Su2xtn => {
            let (Some(sign), Some(ell)) = (spec.sign, spec.ell) else {
                return Err(CliError::Input(
                    "su2xtn certificates need `sign`, `ell` and `matrix`".into(),
                ));
            };
            Ok(Certificate::Su2(Su2Certificate {
                sign,
                ell: ell.into_iter().map(BigInt::from).collect(),
                a,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let p = parse_problem(
            r#"
group = "su2xtn"
left = ["a", "1/3"]
right = ["-a", "2/3"]
[symbols]
a = 1.4142135623730951
[certificate]
sign = -1
ell = [0]
matrix = [[-1]]
"#,
        )
        .unwrap();
        assert_eq!(p.group, Group::Su2xtn);
        assert_eq!(p.left.len(), 2);
        assert!(matches!(p.certificate, Some(Certificate::Su2(_))));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_problem("group = \"torus\"\nleft = [\"1/0\"]").is_err());
        assert!(parse_problem("group = \"torus\"\nleft = [\"1/2\"]\nright = [\"0\", \"0\"]").is_err());
        assert!(parse_problem("group = \"su2xtn\"\nleft = [\"1/2\"]").is_err());
        assert!(parse_problem("group = \"klein\"\nleft = [\"1/2\"]").is_err());
        assert!(parse_problem("group = \"torus\"\nleft = [\"c\"]").is_err());
        assert!(parse_problem("group = \"torus\"\nleft = [\"1/2\"]\n[symbols]\na = 0").is_err());
    }

    #[test]
    fn integer_symbol_values_are_accepted() {
        let p = parse_problem("group = \"torus\"\nleft = [\"a\"]\n[symbols]\na = 2").unwrap();
        assert_eq!(p.table.approx(0), 2.0);
    }
}
