//! The JSON count report. Field order is the declaration order, so output
//! is stable across runs.

use serde::Serialize;

use finlang_core::report::StratumSummary;
use finlang_core::rootdata::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecEcho {
    #[serde(rename = "type")]
    pub type_label: String,
    pub isogeny: String,
    pub twist: Vec<usize>,
    pub component_group: Vec<Vec<Vec<i64>>>,
    pub connected: bool,
}

impl SpecEcho {
    pub fn of(g: &GroupSpec) -> SpecEcho {
        let s = g.source();
        SpecEcho {
            type_label: s.type_label.clone(),
            isogeny: s.isogeny.clone(),
            twist: s.twist.clone(),
            component_group: s.component_group.clone(),
            connected: g.is_connected(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub q_sqrt_convention: String,
    pub whittaker_note: String,
    pub table_version: String,
    pub whittaker_torsor_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub spec_echo: SpecEcho,
    pub q: u64,
    pub pipeline: String,
    pub strata: Vec<StratumSummary>,
    pub total: usize,
    pub spectral_total: Option<usize>,
    pub stratified_total: Option<usize>,
    pub pipelines_agree: Option<bool>,
    pub oracle_total: Option<usize>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub conventions: Conventions,
}

impl CountReport {
    /// Pretty JSON terminated by a newline.
    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
