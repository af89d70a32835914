use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::table::{Row, Table};
use crate::error::{Error, Result};
use crate::model::{Project, ProjectKind};

pub const TRAP_COLUMNS: [&str; 9] = ["region", "id", "pre_or", "pre_gr", "cost", "npv", "gpos", "well_count", "mandatory"];
pub const APPRAISAL_COLUMNS: [&str; 11] = [
    "region", "id", "cor", "cgr", "pro_or", "pro_gr", "cost", "npv", "epos", "well_count", "mandatory",
];

/// A row that parsed but failed validation, kept out of the model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowRejection {
    pub path: PathBuf,
    pub line: usize,
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct ProspectList {
    pub projects: Vec<Project>,
    pub rejected: Vec<RowRejection>,
}

impl ProspectList {
    fn extend(&mut self, other: ProspectList) {
        self.projects.extend(other.projects);
        self.rejected.extend(other.rejected);
    }
}

fn common(row: &Row<'_>) -> Result<(String, String, f64, f64, u32, bool)> {
    let id = row.str("id")?.to_string();
    if id.is_empty() {
        return Err(row.error("id", "empty project id"));
    }
    let region = row.str("region")?.to_string();
    let wells = row.count("well_count")?;
    let wells = u32::try_from(wells).map_err(|_| row.error("well_count", "too large"))?;
    let mandatory = row.f64("mandatory")?;
    if mandatory < 0.0 {
        return Err(row.error("mandatory", "must be >= 0"));
    }
    Ok((id, region, row.f64("cost")?, row.f64("npv")?, wells, mandatory >= 1.0))
}

fn collect(table: &Table, kind: ProjectKind) -> Result<ProspectList> {
    let mut out = ProspectList::default();
    for row in table.rows() {
        let (id, region, cost, npv, wells, mandatory) = common(&row)?;
        let project = match kind {
            ProjectKind::Trap => {
                Project::trap(&id, &region, row.f64("pre_or")?, row.f64("pre_gr")?, cost, npv, row.f64("gpos")?)
                    .with_wells(wells)
            }
            ProjectKind::Appraisal => Project::appraisal(
                &id,
                &region,
                (row.f64("cor")?, row.f64("cgr")?),
                (row.f64("pro_or")?, row.f64("pro_gr")?),
                cost,
                npv,
                row.f64("epos")?,
                wells,
            ),
        }
        .with_mandatory(mandatory);
        match project.validate() {
            Ok(()) => out.projects.push(project),
            Err(e) => out.rejected.push(RowRejection {
                path: table.path().to_path_buf(),
                line: row.line,
                id,
                reason: e.to_string(),
            }),
        }
    }
    Ok(out)
}

pub fn load_traps(path: &Path) -> Result<ProspectList> {
    let table = Table::read(path)?;
    table.require(&TRAP_COLUMNS)?;
    collect(&table, ProjectKind::Trap)
}

pub fn load_appraisals(path: &Path) -> Result<ProspectList> {
    let table = Table::read(path)?;
    table.require(&APPRAISAL_COLUMNS)?;
    collect(&table, ProjectKind::Appraisal)
}

/// Trap and appraisal lists together. Out-of-range rows are returned as
/// rejections; malformed rows and repeated ids are errors.
pub fn load_prospects(trap_path: &Path, appraisal_path: &Path) -> Result<ProspectList> {
    let mut list = load_traps(trap_path)?;
    list.extend(load_appraisals(appraisal_path)?);
    let mut seen = HashSet::new();
    for p in &list.projects {
        if !seen.insert(p.id.as_str()) {
            return Err(Error::Project {
                project: p.id.clone(),
                message: "listed more than once".into(),
            });
        }
    }
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    const TRAP_HEAD: &str = "region,id,pre_or,pre_gr,cost,npv,gpos,well_count,mandatory\n";
    const APP_HEAD: &str = "region,id,cor,cgr,pro_or,pro_gr,cost,npv,epos,well_count,mandatory\n";

    #[test]
    fn trap_row_parses() {
        let f = file(&format!("{TRAP_HEAD}E,QL3,38.80,3.70,3087.00,13515.00,0.53,1.00,0.00\n"));
        let list = load_traps(f.path()).unwrap();
        assert_eq!(list.projects.len(), 1);
        let p = &list.projects[0];
        assert_eq!((p.id.as_str(), p.kind, p.pos, p.well_count, p.mandatory), ("QL3", ProjectKind::Trap, 0.53, 1, false));
    }

    #[test]
    fn out_of_range_gpos_is_rejected_with_line() {
        let f = file(&format!(
            "{TRAP_HEAD}E,QL3,38.80,3.70,3087.00,13515.00,0.53,1.00,0.00\nC,KL3,772.00,143.60,14168.00,60539.00,12461.00,1.00,0.00\n"
        ));
        let list = load_traps(f.path()).unwrap();
        assert_eq!(list.projects.len(), 1);
        assert_eq!(list.rejected.len(), 1);
        assert_eq!(list.rejected[0].id, "KL3");
        assert_eq!(list.rejected[0].line, 3);
        assert!(list.rejected[0].reason.contains("12461"), "{}", list.rejected[0].reason);
    }

    #[test]
    fn mandatory_two_means_mandatory() {
        let f = file(&format!("{APP_HEAD}A,S9,108.46,0,0,0,0,65,0.95,0,2\n"));
        let list = load_appraisals(f.path()).unwrap();
        assert!(list.projects[0].mandatory);
        assert_eq!(list.projects[0].kind, ProjectKind::Appraisal);
    }

    #[test]
    fn malformed_field_names_row_and_column() {
        let f = file(&format!("{TRAP_HEAD}E,QL3,38.80,abc,3087.00,13515.00,0.53,1.00,0.00\n"));
        match load_traps(f.path()).unwrap_err() {
            Error::Row { row, column, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, "pre_gr");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn fractional_wells_and_empty_files_fail() {
        let f = file(&format!("{TRAP_HEAD}E,QL3,38.80,3.7,3087.00,13515.00,0.53,1.5,0.00\n"));
        assert!(matches!(load_traps(f.path()), Err(Error::Row { .. })));
        let f = file(TRAP_HEAD);
        assert!(matches!(load_traps(f.path()), Err(Error::File { .. })));
        let f = file("region,id\nA,B\n");
        assert!(matches!(load_traps(f.path()), Err(Error::File { .. })));
    }
}
