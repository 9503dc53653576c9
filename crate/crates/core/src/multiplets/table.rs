use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::BettiTable;
use crate::susy::{AutomorphismAlgebra, SupertranslationAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub dimension: u64,
}

/// Component fields laid out by (row, column) = (j - i, 2i - j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipletTable {
    pub cells: BTreeMap<(i64, i64), FieldRecord>,
    pub source: BettiTable,
}

impl MultipletTable {
    pub fn dim(&self, row: i64, col: i64) -> u64 {
        self.cells.get(&(row, col)).map_or(0, |f| f.dimension)
    }

    /// Dimensions of one row, from its first to its last occupied column.
    pub fn row(&self, row: i64) -> Vec<u64> {
        let cols: Vec<i64> = self.cells.keys().filter(|k| k.0 == row).map(|k| k.1).collect();
        match (cols.first(), cols.last()) {
            (Some(&a), Some(&b)) => (a..=b).map(|c| self.dim(row, c)).collect(),
            _ => Vec::new(),
        }
    }

    pub fn rows(&self) -> Vec<i64> {
        let mut r: Vec<i64> = self.cells.keys().map(|k| k.0).collect();
        r.dedup();
        r
    }

    pub fn total(&self) -> u64 {
        self.cells.values().map(|f| f.dimension).sum()
    }

    /// Plain-text grid, one line per row.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let (Some(cmin), Some(cmax)) = (self.cells.keys().map(|k| k.1).min(), self.cells.keys().map(|k| k.1).max()) else {
            return "(empty)\n".into();
        };
        let width = self.cells.values().map(|f| f.dimension.to_string().len()).max().unwrap_or(1).max(2);
        out.push_str(&format!("{:>5} |", "row"));
        for c in cmin..=cmax {
            out.push_str(&format!(" {:>width$}", c));
        }
        out.push('\n');
        for r in self.rows() {
            out.push_str(&format!("{:>5} |", r));
            for c in cmin..=cmax {
                match self.cells.get(&(r, c)) {
                    Some(f) => out.push_str(&format!(" {:>width$}", f.dimension)),
                    None => out.push_str(&format!(" {:>width$}", ".")),
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn component_fields(betti: &BettiTable) -> Result<MultipletTable> {
    if !betti.complete {
        return Err(Error::Incomplete("the resolution was truncated; component fields need a complete Betti table".into()));
    }
    let mut cells = BTreeMap::new();
    for (i, j, b) in betti.triples() {
        let i = i as i64;
        cells.insert((j - i, 2 * i - j), FieldRecord { dimension: b });
    }
    Ok(MultipletTable { cells, source: betti.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub cell: (i64, i64),
    pub table: u64,
    pub expected: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    pub checks: Vec<CheckLine>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Compares the low cells of the conf table with d, k, ker ρ₂ and d² - dim ρ₂(𝔤₀).
pub fn universal_checks(alg: &SupertranslationAlgebra, conf: &MultipletTable, g0: &AutomorphismAlgebra) -> UniversalReport {
    let d = alg.d as u64;
    let image = g0.rho2_image_dim() as u64;
    let line = |name: &str, cell: (i64, i64), expected: u64| {
        let table = conf.dim(cell.0, cell.1);
        CheckLine { name: name.into(), cell, table, expected, ok: table == expected }
    };
    UniversalReport {
        checks: vec![
            line("translations", (0, 0), d),
            line("supersymmetries", (0, 1), alg.k as u64),
            line("R-symmetry", (0, 2), g0.ker_rho2_dim() as u64),
            line("metric deformations", (1, 0), d * d - image),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplets::{canonical_module, conf_module};
    use crate::susy::{build_standard, derivations_deg0, SusyKey};

    #[test]
    fn free_module_is_one_cell() {
        let t = component_fields(&BettiTable::from_entries(&[(0, 0, 1)], true)).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.dim(0, 0), 1);
    }

    #[test]
    fn truncated_betti_is_rejected() {
        assert!(component_fields(&BettiTable::from_entries(&[(0, 0, 1)], false)).is_err());
    }

    #[test]
    fn three_dimensional_tables() {
        let a = build_standard(3, SusyKey::N(1)).unwrap();
        let conf = component_fields(&conf_module(&a).unwrap().betti(None).unwrap()).unwrap();
        assert_eq!(conf.row(0), vec![3, 2]);
        assert_eq!(conf.row(1), vec![5, 4]);
        let can = component_fields(&canonical_module(&a).unwrap().betti(None).unwrap()).unwrap();
        assert_eq!(can.row(0), vec![1]);
        assert_eq!(can.row(1), vec![3, 2]);
        let g0 = derivations_deg0(&a).unwrap();
        assert!(universal_checks(&a, &conf, &g0).passed());
    }

    #[test]
    fn four_dimensional_universal_checks() {
        let a = build_standard(4, SusyKey::N(1)).unwrap();
        let conf = component_fields(&conf_module(&a).unwrap().betti(None).unwrap()).unwrap();
        assert_eq!(conf.row(0), vec![4, 4, 1]);
        assert_eq!(conf.row(1), vec![9, 12, 4]);
        let rep = universal_checks(&a, &conf, &derivations_deg0(&a).unwrap());
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.checks[3].table, 9);
    }
}
