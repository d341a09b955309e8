//! Choice-independent summaries of strata, shared by both pipelines.

use serde::Serialize;

use crate::oracle::AbstractFiniteGroup;
use crate::rootdata::SimpleType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Spectral,
    Stratified,
}

impl Pipeline {
    pub fn label(self) -> &'static str {
        match self {
            Pipeline::Spectral => "spectral",
            Pipeline::Stratified => "stratified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PacketSummary {
    /// `class size:centralizer order` of the Frobenius twisted class.
    pub x_class_label: String,
    pub packet_size: usize,
}

/// Only data that does not depend on choices of representatives appears
/// here, so reports are reproducible under any `ChoicePolicy`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StratumSummary {
    pub pipeline: Pipeline,
    pub ss_label: String,
    pub unipotent_label: String,
    pub beta_label: String,
    pub abar_description: String,
    pub count: usize,
    pub packets: Vec<PacketSummary>,
}

/// `type:class` per component, sorted and joined by `+`; `1` for a torus.
pub fn unipotent_label(parts: &[(SimpleType, &str)]) -> String {
    if parts.is_empty() {
        return "1".to_string();
    }
    let mut labels: Vec<String> = parts.iter().map(|(t, c)| format!("{t}:{c}")).collect();
    labels.sort();
    labels.join("+")
}

/// Short isomorphism-invariant name for the small groups that occur.
pub fn describe_group(g: &AbstractFiniteGroup) -> String {
    let n = g.order();
    if n == 1 {
        "1".to_string()
    } else if (0..n).any(|a| g.element_order(a) == n) {
        format!("Z/{n}")
    } else if n == 6 && !g.is_abelian() {
        "S3".to_string()
    } else if n == 4 {
        "Z/2xZ/2".to_string()
    } else {
        format!("order {n}")
    }
}

pub fn describe_product(names: &[String]) -> String {
    let mut v: Vec<&String> = names.iter().filter(|s| s.as_str() != "1").collect();
    v.sort();
    if v.is_empty() {
        "1".to_string()
    } else {
        v.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("x")
    }
}
