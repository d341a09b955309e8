//! TOML group configurations.
//!
//! ```toml
//! type = "A1xT1"        # factors joined by `x`: A1 A2 B2 C2 G2 Tn
//! isogeny = "sc"        # "sc" | "ad" | "GL" | [[row], ...] (custom X)
//! q = 3
//! twist = [0]           # permutation of simple-root indices
//! component_group = [[[1, 0], [0, -1]]]   # extra lattice automorphisms of X
//! ```
//!
//! A custom isogeny lists a basis of `X` for the semisimple part in
//! fundamental-weight coordinates; torus factors are appended as extra
//! coordinates.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

use super::build::{build_datum, twist_matrix, Isogeny};
use super::cartan::CartanType;
use super::{FrobeniusTwist, GroupSpec, SpecSource};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum IsogenyField {
    Name(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    #[serde(rename = "type")]
    pub type_label: String,
    #[serde(default)]
    pub isogeny: Option<IsogenyField>,
    pub q: u64,
    #[serde(default)]
    pub twist: Option<Vec<usize>>,
    #[serde(default)]
    pub component_group: Vec<Vec<Vec<i64>>>,
}

/// Shortcut names accepted wherever a configuration is expected.
pub const NAMED_GROUPS: [&str; 11] = ["sl2", "gl2", "pgl2", "sl3", "gl3", "pgl3", "sp4", "so5", "g2", "torus1", "o2"];

/// Expands a shortcut name into a configuration over `F_q`.
pub fn named_group(name: &str, q: u64) -> Option<GroupConfig> {
    let (t, iso, comp): (&str, &str, Vec<Vec<Vec<i64>>>) = match name {
        "sl2" => ("A1", "sc", vec![]),
        "gl2" => ("A1", "GL", vec![]),
        "pgl2" => ("A1", "ad", vec![]),
        "sl3" => ("A2", "sc", vec![]),
        "gl3" => ("A2", "GL", vec![]),
        "pgl3" => ("A2", "ad", vec![]),
        "sp4" => ("C2", "sc", vec![]),
        "so5" => ("B2", "ad", vec![]),
        "g2" => ("G2", "sc", vec![]),
        "torus1" => ("T1", "sc", vec![]),
        "o2" => ("T1", "sc", vec![vec![vec![-1]]]),
        _ => return None,
    };
    Some(GroupConfig {
        type_label: t.to_string(),
        isogeny: Some(IsogenyField::Name(iso.to_string())),
        q,
        twist: None,
        component_group: comp,
    })
}

/// Parses and validates a TOML configuration.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    group_spec_from_config(&parse_group_config(text)?)
}

/// Parses a configuration without building the group.
pub fn parse_group_config(text: &str) -> Result<GroupConfig> {
    toml::from_str(text).map_err(|e| {
        let msg = e.message().to_string();
        let field = msg.split('`').nth(1).unwrap_or("<document>").to_string();
        Error::Config { field, message: msg }
    })
}

pub fn group_spec_from_config(cfg: &GroupConfig) -> Result<GroupSpec> {
    let ct = CartanType::parse(&cfg.type_label)?;
    let iso = match &cfg.isogeny {
        None => Isogeny::SimplyConnected,
        Some(IsogenyField::Name(n)) => match n.as_str() {
            "sc" => Isogeny::SimplyConnected,
            "ad" => Isogeny::Adjoint,
            "GL" | "gl" => Isogeny::Gl,
            other => {
                return Err(Error::config("isogeny", format!("unknown isogeny `{other}` (sc, ad, GL or a matrix)")))
            }
        },
        Some(IsogenyField::Matrix(rows)) => Isogeny::Custom(rows.clone()),
    };
    if super::prime_of_prime_power(cfg.q).is_none() {
        return Err(Error::config("q", format!("{} is not a prime power", cfg.q)));
    }
    let datum = build_datum(&ct, &iso)?;
    let perm: Vec<usize> = cfg.twist.clone().unwrap_or_else(|| (0..ct.semisimple_rank()).collect());
    let sigma = twist_matrix(&ct, &iso, &datum, &perm)?;
    let twist = FrobeniusTwist::new(&datum, sigma, cfg.q)?;
    let mut comps = Vec::new();
    for (k, m) in cfg.component_group.iter().enumerate() {
        if m.len() != datum.rank() || m.iter().any(|r| r.len() != datum.rank()) {
            return Err(Error::config(
                &format!("component_group[{k}]"),
                format!("expected a {0}x{0} matrix", datum.rank()),
            ));
        }
        comps.push(IntMatrix::from_rows(m));
    }
    let source = SpecSource {
        type_label: ct.label(),
        isogeny: iso.label(),
        twist: perm,
        component_group: cfg.component_group.clone(),
    };
    GroupSpec::new(datum, twist, comps, ct, source)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_key_names_the_field() {
        let err = parse_group_spec("type = \"A1\"\nq = 3\ncolour = 1\n").unwrap_err();
        match err {
            Error::Config { field, .. } => assert_eq!(field, "colour"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn bad_prime_rejected() {
        let err = parse_group_spec("type = \"G2\"\nq = 9\n").unwrap_err();
        assert!(matches!(err, Error::BadPrime { p: 3, .. }));
        let err = parse_group_spec("type = \"B2\"\nq = 4\n").unwrap_err();
        assert!(matches!(err, Error::BadPrime { p: 2, .. }));
        assert!(parse_group_spec("type = \"A1\"\nq = 4\n").is_ok());
    }

    #[test]
    fn twist_must_be_diagram_automorphism() {
        let err = parse_group_spec("type = \"B2\"\nq = 3\ntwist = [1, 0]\n").unwrap_err();
        assert!(matches!(err, Error::Config { ref field, .. } if field == "twist"));
        assert!(parse_group_spec("type = \"A2\"\nq = 3\ntwist = [1, 0]\n").is_ok());
        assert!(parse_group_spec("type = \"A2\"\nisogeny = \"GL\"\nq = 3\ntwist = [1, 0]\n").is_ok());
    }

    #[test]
    fn custom_isogeny() {
        // the root lattice of A1 written in weight coordinates is PGL2
        let g = parse_group_spec("type = \"A1\"\nisogeny = [[2]]\nq = 3\n").unwrap();
        assert_eq!(g.datum().roots()[0], vec![1]);
        assert_eq!(g.datum().coroots()[0], vec![2]);
        let err = parse_group_spec("type = \"A1\"\nisogeny = [[4]]\nq = 3\n").unwrap_err();
        assert!(matches!(err, Error::Config { ref field, .. } if field == "isogeny"));
    }

    #[test]
    fn unsupported_type() {
        assert!(matches!(parse_group_spec("type = \"E8\"\nq = 3\n"), Err(Error::UnsupportedType(_))));
    }
}
