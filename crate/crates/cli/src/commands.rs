use std::collections::BTreeMap;

use serde::Serialize;

use finlang_core::coxeter::{cells, kl_table, standard};
use finlang_core::oracle::{build_group, GroupName, DEFAULT_GROUP_BOUND};
use finlang_core::report::StratumSummary;
use finlang_core::rootdata::{
    config::{group_spec_from_config, parse_group_config},
    named_group, whittaker_torsor_size, GroupSpec, SimpleType,
};
use finlang_core::springer::tables;
use finlang_core::{spectral, strata, ChoicePolicy, Error};

use crate::report::{to_json, Conventions, CountReport, SpecEcho};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PipelineChoice {
    Spectral,
    Stratified,
    Both,
}

impl PipelineChoice {
    pub fn label(self) -> &'static str {
        match self {
            PipelineChoice::Spectral => "spectral",
            PipelineChoice::Stratified => "stratified",
            PipelineChoice::Both => "both",
        }
    }
}

/// Where the group comes from.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Named { name: String, q: u64 },
    Config { path: String, q: Option<u64> },
}

pub fn load_group(src: &GroupSource) -> Result<GroupSpec, CliError> {
    match src {
        GroupSource::Named { name, q } => {
            let cfg = named_group(name, *q).ok_or_else(|| Error::Config {
                field: "group".into(),
                message: format!("unknown group shortcut `{name}`"),
            })?;
            Ok(group_spec_from_config(&cfg)?)
        }
        GroupSource::Config { path, q } => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Read { path: path.clone(), source: e })?;
            let mut cfg = parse_group_config(&text)?;
            if let Some(q) = q {
                cfg.q = *q;
            }
            Ok(group_spec_from_config(&cfg)?)
        }
    }
}

fn conventions(g: &GroupSpec) -> Result<Conventions, CliError> {
    Ok(Conventions {
        q_sqrt_convention: "fixed positive square root of q; only the WD/SL2 normal-form tag depends on it".to_string(),
        whittaker_note: "counts do not depend on the choice of Whittaker datum".to_string(),
        table_version: tables().version.clone(),
        whittaker_torsor_size: whittaker_torsor_size(g)?,
    })
}

fn total(s: &[StratumSummary]) -> usize {
    s.iter().map(|x| x.count).sum()
}

/// Sums of counts per `(ss_label, unipotent_label)`.
pub fn breakdown(s: &[StratumSummary]) -> BTreeMap<(String, String), usize> {
    let mut m = BTreeMap::new();
    for x in s {
        *m.entry((x.ss_label.clone(), x.unipotent_label.clone())).or_insert(0) += x.count;
    }
    m
}

/// Runs the requested pipelines. Disconnected groups fall back to the
/// stratified pipeline unless the spectral one was asked for explicitly.
pub fn count(g: &GroupSpec, pipeline: Option<PipelineChoice>, policy: ChoicePolicy) -> Result<CountReport, CliError> {
    let pipeline = match pipeline {
        Some(p) => p,
        None if g.is_connected() => PipelineChoice::Spectral,
        None => PipelineChoice::Stratified,
    };
    let spectral = match pipeline {
        PipelineChoice::Spectral | PipelineChoice::Both => Some(spectral::summaries(g, policy)?),
        PipelineChoice::Stratified => None,
    };
    let stratified = match pipeline {
        PipelineChoice::Stratified | PipelineChoice::Both => Some(strata::summaries(g, policy)?),
        PipelineChoice::Spectral => None,
    };
    let spectral_total = spectral.as_deref().map(total);
    let stratified_total = stratified.as_deref().map(total);
    let pipelines_agree = match (&spectral, &stratified) {
        (Some(a), Some(b)) => Some(breakdown(a) == breakdown(b)),
        _ => None,
    };
    let mut all: Vec<StratumSummary> = spectral.into_iter().chain(stratified).flatten().collect();
    all.sort();
    Ok(CountReport {
        spec_echo: SpecEcho::of(g),
        q: g.q(),
        pipeline: pipeline.label().to_string(),
        strata: all,
        total: spectral_total.or(stratified_total).unwrap_or(0),
        spectral_total,
        stratified_total,
        pipelines_agree,
        oracle_total: None,
        matches: None,
        conventions: conventions(g)?,
    })
}

/// The oracle group matching a group, when it is one of the built-in
/// shortcuts in split form.
pub fn oracle_name(g: &GroupSpec) -> Result<GroupName, CliError> {
    let s = g.source();
    let split = s.twist.iter().enumerate().all(|(i, &j)| i == j);
    let gamma = s.component_group.as_slice();
    let name = match (s.type_label.as_str(), s.isogeny.as_str(), gamma) {
        ("A1", "sc", []) => Some(GroupName::Sl(2)),
        ("A1", "GL", []) => Some(GroupName::Gl(2)),
        ("A1", "ad", []) => Some(GroupName::Pgl(2)),
        ("A2", "sc", []) => Some(GroupName::Sl(3)),
        ("A2", "GL", []) => Some(GroupName::Gl(3)),
        ("A2", "ad", []) => Some(GroupName::Pgl(3)),
        ("C2", "sc", []) => Some(GroupName::Sp4),
        ("B2", "ad", []) => Some(GroupName::So5),
        ("T1", _, []) => Some(GroupName::Torus),
        ("T1", _, [m]) if m == &vec![vec![-1]] => Some(GroupName::O2),
        _ => None,
    };
    match name {
        Some(n) if split => Ok(n),
        _ => Err(Error::NotInOracleMenu(format!("{} ({})", s.type_label, s.isogeny)).into()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub group: String,
    pub q: u64,
    pub order: usize,
    pub class_count: usize,
}

pub fn oracle(name: GroupName, q: u64) -> Result<OracleReport, CliError> {
    let g = build_group(name, q, DEFAULT_GROUP_BOUND)?;
    Ok(OracleReport { group: name.to_string(), q, order: g.order(), class_count: g.class_count() })
}

/// Count with both pipelines (stratified only for disconnected groups) and
/// fill in the oracle fields. `matches` is false if the pipelines disagree.
pub fn compare(g: &GroupSpec, policy: ChoicePolicy) -> Result<CountReport, CliError> {
    let name = oracle_name(g)?;
    let pipeline = if g.is_connected() { PipelineChoice::Both } else { PipelineChoice::Stratified };
    let mut report = count(g, Some(pipeline), policy)?;
    let truth = oracle(name, g.q())?.class_count;
    report.oracle_total = Some(truth);
    report.matches = Some(report.total == truth && report.pipelines_agree != Some(false));
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellEntry {
    pub id: usize,
    pub size: usize,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellsReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub order: usize,
    pub left_cells: usize,
    pub right_cells: usize,
    pub two_sided: Vec<CellEntry>,
}

fn parse_type(label: &str) -> Result<SimpleType, CliError> {
    SimpleType::parse(label).ok_or_else(|| Error::UnsupportedType(label.to_string()).into())
}

fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|s| format!("s{}", s + 1)).collect()
}

pub fn cells_report(label: &str) -> Result<CellsReport, CliError> {
    let t = parse_type(label)?;
    let w = standard(t);
    let p = cells(&w, &kl_table(&w)?);
    let two_sided = (0..p.num_two_sided())
        .map(|c| {
            let members = p.members(c);
            CellEntry { id: c, size: members.len(), elements: members.iter().map(|&x| word_label(w.word(x))).collect() }
        })
        .collect();
    Ok(CellsReport {
        type_label: t.label().to_string(),
        order: w.order(),
        left_cells: p.num_left(),
        right_cells: p.num_right(),
        two_sided,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub label: String,
    pub dim: u32,
    pub a_of_u: String,
    pub abar: String,
    pub dual: String,
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyEntry {
    pub cell: usize,
    pub group: String,
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TablesReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub version: String,
    pub special_classes: Vec<ClassEntry>,
    pub family_groups: Vec<FamilyEntry>,
}

pub fn tables_report(label: &str) -> Result<TablesReport, CliError> {
    use finlang_core::report::describe_group;
    let t = parse_type(label)?;
    let table = tables().type_table(t)?;
    Ok(TablesReport {
        type_label: t.label().to_string(),
        version: tables().version.clone(),
        special_classes: table
            .classes
            .iter()
            .map(|c| ClassEntry {
                label: c.class_label.clone(),
                dim: c.dim,
                a_of_u: describe_group(&c.a_of_u),
                abar: describe_group(&c.abar_of_u),
                dual: c.dual_class.clone(),
                cell: c.cell_id,
            })
            .collect(),
        family_groups: table
            .families
            .iter()
            .map(|f| FamilyEntry { cell: f.cell_id, group: f.group_name.clone(), exceptional: f.is_exceptional })
            .collect(),
    })
}

/// Writes the report to `path` when given; always returns the JSON text.
pub fn emit<T: Serialize>(value: &T, path: Option<&str>) -> Result<String, CliError> {
    let text = to_json(value);
    if let Some(p) = path {
        std::fs::write(p, &text).map_err(|e| CliError::Write { path: p.to_string(), source: e })?;
    }
    Ok(text)
}
