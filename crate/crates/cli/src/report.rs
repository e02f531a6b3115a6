//! Machine-readable command reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_check: Option<NumericCheck>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CertificateReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<Vec<i64>>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InvariantsReport {
    pub rank: usize,
    pub reductive_rank: usize,
    pub components: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_reductive_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_components: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormalFormReport {
    pub m: usize,
    pub betas: Vec<String>,
    pub k: i64,
    pub d: i64,
    pub zeros: usize,
    pub transform: Vec<Vec<i64>>,
    pub image: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrbitReport {
    pub steps: usize,
    pub estimate: Vec<f64>,
    /// Exact count of distinct orbit points among the first `steps`; rational input only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_points: Option<usize>,
    pub dimension: usize,
    pub components: i64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericCheck {
    pub max_error: f64,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Report::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Short human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        if let Some(c) = self.conjugate {
            out.push(format!("conjugate: {c}"));
        }
        if let Some(v) = self.certificate_valid {
            out.push(format!("certificate valid: {v}"));
        }
        if let Some(c) = &self.certificate {
            let mut line = String::from("certificate:");
            if let Some(s) = c.sign {
                line.push_str(&format!(" sign {s},"));
            }
            if let Some(l) = &c.ell {
                line.push_str(&format!(" ell {l:?},"));
            }
            line.push_str(&format!(" A {:?}", c.matrix));
            out.push(line);
        }
        if let Some(i) = &self.invariants {
            out.push(format!(
                "rank {}, reductive rank {}, components {}",
                i.rank, i.reductive_rank, i.components
            ));
            if let (Some(r), Some(n), Some(case)) =
                (i.tail_reductive_rank, i.tail_components, &i.case)
            {
                out.push(format!("tail reductive rank {r}, tail components {n}, {case}"));
            }
        }
        if let Some(nf) = &self.normal_form {
            out.push(format!("normal form: ({})", nf.image.join(", ")));
            out.push(format!(
                "m {}, k/d {}/{}, zeros {}, transform {:?}",
                nf.m, nf.k, nf.d, nf.zeros, nf.transform
            ));
        }
        if let Some(o) = &self.orbit {
            out.push(format!("estimate after {} steps: {:?}", o.steps, o.estimate));
            if let Some(p) = o.distinct_points {
                out.push(format!("distinct points: {p}"));
            }
            out.push(format!(
                "orbit closure: {} copies of T^{}",
                o.components, o.dimension
            ));
        }
        if let Some(n) = &self.numeric_check {
            out.push(format!(
                "numeric check: max error {:e} over {} samples ({})",
                n.max_error,
                n.samples,
                if n.passed { "ok" } else { "FAILED" }
            ));
        }
        for e in &self.errors {
            out.push(format!("error: {e}"));
        }
        let mut s = out.join("\n");
        s.push('\n');
        s
    }
}
