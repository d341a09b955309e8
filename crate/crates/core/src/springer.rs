//! Special unipotent classes, canonical quotients and family groups.
//!
//! The data ships in `data/springer.toml` and is validated on first use.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::coxeter::{cells, kl_table, standard};
use crate::error::{Error, Result};
use crate::oracle::AbstractFiniteGroup;
use crate::rootdata::SimpleType;

const TABLE_SOURCE: &str = include_str!("../data/springer.toml");

#[derive(Clone, Debug)]
pub struct SpecialClassRecord {
    pub type_label: SimpleType,
    pub class_label: String,
    pub dim: u32,
    /// `π₀(Z(u)/Z)`
    pub a_of_u: AbstractFiniteGroup,
    pub abar_of_u: AbstractFiniteGroup,
    /// Image in `abar_of_u` of each element of `a_of_u`.
    pub abar_map: Vec<usize>,
    pub dual_class: String,
    pub cell_id: usize,
}

#[derive(Clone, Debug)]
pub struct FamilyGroupRecord {
    pub cell_id: usize,
    pub group: AbstractFiniteGroup,
    pub group_name: String,
    pub is_exceptional: bool,
}

#[derive(Clone, Debug)]
pub struct TypeTable {
    pub classes: Vec<SpecialClassRecord>,
    pub families: Vec<FamilyGroupRecord>,
}

#[derive(Clone, Debug)]
pub struct SpringerTables {
    pub version: String,
    types: BTreeMap<SimpleType, TypeTable>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTables {
    version: String,
    types: Vec<RawType>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawType {
    label: String,
    classes: Vec<RawClass>,
    families: Vec<RawFamily>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    label: String,
    dim: u32,
    a_of_u: String,
    abar: String,
    abar_map: Vec<usize>,
    dual: String,
    cell: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    cell: usize,
    group: String,
    exceptional: bool,
}

fn group(name: &str) -> Result<AbstractFiniteGroup> {
    AbstractFiniteGroup::by_name(name).ok_or_else(|| Error::invariant(format!("unknown group `{name}` in tables")))
}

impl SpringerTables {
    /// Parses and validates a table document.
    pub fn parse(text: &str) -> Result<SpringerTables> {
        let raw: RawTables = toml::from_str(text)
            .map_err(|e| Error::invariant(format!("malformed Springer tables: {}", e.message())))?;
        let mut types = BTreeMap::new();
        for t in raw.types {
            let kind = SimpleType::parse(&t.label)
                .ok_or_else(|| Error::invariant(format!("unknown type `{}` in tables", t.label)))?;
            let classes = t
                .classes
                .into_iter()
                .map(|c| {
                    Ok(SpecialClassRecord {
                        type_label: kind,
                        class_label: c.label,
                        dim: c.dim,
                        a_of_u: group(&c.a_of_u)?,
                        abar_of_u: group(&c.abar)?,
                        abar_map: c.abar_map,
                        dual_class: c.dual,
                        cell_id: c.cell,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let families = t
                .families
                .into_iter()
                .map(|f| {
                    Ok(FamilyGroupRecord {
                        cell_id: f.cell,
                        group: group(&f.group)?,
                        group_name: f.group,
                        is_exceptional: f.exceptional,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            types.insert(kind, TypeTable { classes, families });
        }
        let tables = SpringerTables { version: raw.version, types };
        tables.validate()?;
        Ok(tables)
    }

    pub fn type_table(&self, t: SimpleType) -> Result<&TypeTable> {
        self.types.get(&t).ok_or_else(|| Error::UnsupportedType(format!("no tables for {t}")))
    }

    pub fn types(&self) -> impl Iterator<Item = (&SimpleType, &TypeTable)> {
        self.types.iter()
    }

    fn validate(&self) -> Result<()> {
        for t in SimpleType::ALL {
            let table = self.type_table(t)?;
            let bad = |msg: String| Error::invariant(format!("{t}: {msg}"));
            let by_label = |l: &str| table.classes.iter().find(|c| c.class_label == l);
            for c in &table.classes {
                let d = by_label(&c.dual_class).ok_or_else(|| bad(format!("dual of {} missing", c.class_label)))?;
                if d.dual_class != c.class_label {
                    return Err(bad(format!("duality is not an involution at {}", c.class_label)));
                }
                check_quotient(c).map_err(|m| bad(format!("{}: {m}", c.class_label)))?;
            }
            let one = by_label("1").ok_or_else(|| bad("class 1 missing".into()))?;
            if one.a_of_u.order() != 1 {
                return Err(bad("A(1) must be trivial".into()));
            }
            by_label("reg").ok_or_else(|| bad("regular class missing".into()))?;
            let w = standard(t);
            let partition = cells(&w, &kl_table(&w)?);
            let n = partition.num_two_sided();
            if table.classes.len() != n || table.families.len() != n {
                return Err(bad(format!("{n} two-sided cells but {} special classes", table.classes.len())));
            }
            for cell in 0..n {
                let fam = table
                    .families
                    .iter()
                    .find(|f| f.cell_id == cell)
                    .ok_or_else(|| bad(format!("no family group for cell {cell}")))?;
                if fam.is_exceptional && fam.group.order() != 2 {
                    return Err(bad(format!("exceptional cell {cell} must have group Z/2")));
                }
                // the family group matches the canonical quotient of the
                // special class attached to the cell in the dual type
                let dual_table = self.type_table(t.dual())?;
                let partner = dual_table
                    .classes
                    .iter()
                    .find(|c| c.cell_id == cell)
                    .ok_or_else(|| bad(format!("no dual class for cell {cell}")))?;
                if !fam.group.is_isomorphic(&partner.abar_of_u) {
                    return Err(bad(format!("family group of cell {cell} differs from its canonical quotient")));
                }
                if !outer_automorphisms_trivial(&fam.group) {
                    return Err(bad(format!("family group of cell {cell} has outer automorphisms")));
                }
            }
        }
        Ok(())
    }
}

fn check_quotient(c: &SpecialClassRecord) -> std::result::Result<(), String> {
    let (a, q, m) = (&c.a_of_u, &c.abar_of_u, &c.abar_map);
    if m.len() != a.order() || m.iter().any(|&x| x >= q.order()) {
        return Err("quotient map has the wrong shape".into());
    }
    for x in 0..a.order() {
        for y in 0..a.order() {
            if m[a.mul(x, y)] != q.mul(m[x], m[y]) {
                return Err("quotient map is not a homomorphism".into());
            }
        }
    }
    if (0..q.order()).any(|z| !m.contains(&z)) {
        return Err("quotient map is not surjective".into());
    }
    Ok(())
}

/// Whether every automorphism is inner, by enumerating all bijections that
/// fix the identity. Only used for the tiny stored groups.
pub fn outer_automorphisms_trivial(g: &AbstractFiniteGroup) -> bool {
    let n = g.order();
    let inner: Vec<Vec<usize>> = (0..n).map(|h| g.inner(h)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut all_inner = true;
    permute(&mut perm, 1, &mut |p| {
        if g.is_automorphism(p) && !inner.iter().any(|i| i == p) {
            all_inner = false;
        }
    });
    all_inner
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k >= p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// The validated built-in tables.
pub fn tables() -> &'static SpringerTables {
    static TABLES: OnceLock<SpringerTables> = OnceLock::new();
    TABLES.get_or_init(|| SpringerTables::parse(TABLE_SOURCE).expect("built-in Springer tables are valid"))
}

pub fn special_classes(t: SimpleType) -> Result<&'static [SpecialClassRecord]> {
    Ok(&tables().type_table(t)?.classes)
}

pub fn special_class_by_cell(t: SimpleType, cell: usize) -> Result<&'static SpecialClassRecord> {
    special_classes(t)?
        .iter()
        .find(|c| c.cell_id == cell)
        .ok_or_else(|| Error::UnknownCell { type_label: t.label().to_string(), cell })
}

pub fn family_group(t: SimpleType, cell: usize) -> Result<&'static FamilyGroupRecord> {
    tables()
        .type_table(t)?
        .families
        .iter()
        .find(|f| f.cell_id == cell)
        .ok_or_else(|| Error::UnknownCell { type_label: t.label().to_string(), cell })
}

/// Automorphism of the family group induced by an automorphism of the Weyl
/// group that permutes the cells by `cell_perm`. Every stored group has only
/// inner automorphisms, so the outer class is trivial and the identity is
/// returned as its representative.
pub fn induced_automorphism(record: &FamilyGroupRecord, cell_perm: &[usize]) -> Result<Vec<usize>> {
    match cell_perm.get(record.cell_id) {
        Some(&c) if c == record.cell_id => Ok(record.group.identity_map()),
        Some(_) => Err(Error::CellMoved(record.cell_id)),
        None => Err(Error::UnknownCell { type_label: String::new(), cell: record.cell_id }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_validate() {
        let t = tables();
        assert_eq!(t.version, "1");
        assert_eq!(special_classes(SimpleType::A1).unwrap().len(), 2);
        let b2 = special_classes(SimpleType::B2).unwrap();
        let subreg = b2.iter().find(|c| c.class_label == "subreg").unwrap();
        assert_eq!(subreg.a_of_u.order(), 2);
        assert_eq!(family_group(SimpleType::G2, 1).unwrap().group.order(), 6);
        assert!(matches!(family_group(SimpleType::A2, 7), Err(Error::UnknownCell { cell: 7, .. })));
    }

    #[test]
    fn broken_tables_rejected() {
        let broken = TABLE_SOURCE.replacen("dual = \"reg\", cell = 0", "dual = \"1\", cell = 0", 1);
        assert!(SpringerTables::parse(&broken).is_err());
        let wrong_family = TABLE_SOURCE.replacen("{ cell = 1, group = \"Z/2\"", "{ cell = 1, group = \"Z/3\"", 1);
        assert!(SpringerTables::parse(&wrong_family).is_err());
    }

    #[test]
    fn induced_automorphisms() {
        let fam = family_group(SimpleType::B2, 1).unwrap();
        assert_eq!(induced_automorphism(fam, &[0, 1, 2]).unwrap(), vec![0, 1]);
        assert!(matches!(induced_automorphism(fam, &[1, 0, 2]), Err(Error::CellMoved(1))));
    }
}
