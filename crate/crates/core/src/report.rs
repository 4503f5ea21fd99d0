//! Census reports for the trigonal moduli spaces.

use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::branch::MultiplicityVector;
use crate::error::Result;
use crate::exact::Prime;
use crate::symplectic::sp_group_order;
use crate::trigonal::{census_rows, component_count_formula, CensusRow};
use crate::BigCount;

pub const MAX_CENSUS_GENUS: u32 = 40;

mod exact_number {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&n.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigCount, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigCount::from_str(&n.to_string()).map_err(|_| de::Error::custom(format!("{n} is not a non-negative integer")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub m: Vec<u64>,
    #[serde(with = "exact_number")]
    pub aut_order: BigCount,
    #[serde(with = "exact_number")]
    pub components: BigCount,
}

/// One genus of the census. Serializes as
/// `{"g", "m", "sp_order", "rows": [{"m": [a, b], "aut_order", "components"}], "total", "formula_total", "agreement"}`
/// with every count an exact JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub g: u32,
    /// Number of branch points, `g + 2`.
    pub m: u64,
    #[serde(with = "exact_number")]
    pub sp_order: BigCount,
    pub rows: Vec<RowJson>,
    #[serde(with = "exact_number")]
    pub total: BigCount,
    #[serde(with = "exact_number")]
    pub formula_total: BigCount,
    pub agreement: bool,
}

impl From<&CensusRow> for RowJson {
    fn from(r: &CensusRow) -> Self {
        RowJson {
            m: r.m_vector.counts().to_vec(),
            aut_order: r.aut_order.clone(),
            components: r.components.clone(),
        }
    }
}

impl CensusReport {
    pub fn compute(g: u32) -> Result<Self> {
        let rows = census_rows(g)?;
        let total: BigCount = rows.iter().map(|r| &r.components).sum();
        let formula_total = component_count_formula(g)?;
        Ok(CensusReport {
            g,
            m: g as u64 + 2,
            sp_order: sp_group_order(g, Prime::THREE),
            rows: rows.iter().map(RowJson::from).collect(),
            agreement: total == formula_total,
            total,
            formula_total,
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }

    pub fn multiplicity_vectors(&self) -> Result<Vec<MultiplicityVector>> {
        self.rows
            .iter()
            .map(|r| MultiplicityVector::new(r.m.clone(), Prime::THREE))
            .collect()
    }
}

/// `1.2345e67` style rendering of a big integer, from its decimal digits.
pub fn scientific(n: &BigCount) -> String {
    let digits = n.to_string();
    if digits.len() <= 6 {
        return digits;
    }
    let exp = digits.len() - 1;
    format!("{}.{}e{}", &digits[..1], &digits[1..5], exp)
}

/// Text rendering of one census block.
pub fn render_census_text(report: &CensusReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "g = {}  m = {}  |Sp(2g,F_3)| = {} (~{})\n",
        report.g,
        report.m,
        report.sp_order,
        scientific(&report.sp_order)
    ));
    let entries: Vec<String> = report.rows.iter().map(|r| format!("({},{})", r.m[0], r.m[1])).collect();
    let width = entries.iter().map(String::len).max().unwrap_or(0).max(5);
    let auts: Vec<String> = report.rows.iter().map(|r| r.aut_order.to_string()).collect();
    let aut_width = auts.iter().map(String::len).max().unwrap_or(0).max(5);
    out.push_str(&format!("  {:<width$}  {:>aut_width$}  components\n", "m", "|A_m|"));
    for ((entry, aut), row) in entries.iter().zip(&auts).zip(&report.rows) {
        out.push_str(&format!("  {entry:<width$}  {aut:>aut_width$}  {}\n", row.components));
    }
    out.push_str(&format!(
        "  total {} (~{})  formula {}  {}\n",
        report.total,
        scientific(&report.total),
        report.formula_total,
        if report.agreement { "agree" } else { "DISAGREE" }
    ));
    out
}

/// Table of the index sets for `g = 1..=12`, entries with a nontrivial
/// stabilizer marked `*`.
pub fn render_table1() -> String {
    let mut out = String::from("g   index set\n");
    for g in 1..=12 {
        let set = crate::trigonal::trigonal_indexing_set(g).expect("g >= 1");
        let entries: Vec<String> = set
            .vectors
            .iter()
            .map(|v| {
                let star = if v.stabilizer().len() > 1 { "*" } else { "" };
                format!("{v}{star}")
            })
            .collect();
        out.push_str(&format!("{g:<3} {{{}}}\n", entries.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_round_trip() {
        let r = CensusReport::compute(4).unwrap();
        let line = r.to_json_line();
        assert!(
            line.starts_with(r#"{"g":4,"m":6,"sp_order":131569513308979200,"rows":[{"m":[6,0],"#),
            "{line}"
        );
        assert!(line.contains(r#""total":2010089786664960"#));
        assert!(line.ends_with(r#""agreement":true}"#));
        assert_eq!(CensusReport::from_json_line(&line).unwrap(), r);
    }

    #[test]
    fn large_counts_stay_exact() {
        let r = CensusReport::compute(40).unwrap();
        let back = CensusReport::from_json_line(&r.to_json_line()).unwrap();
        assert_eq!(back.total, r.total);
        assert!(r.total.to_string().len() > 300);
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(scientific(&BigCount::from(6480u32)), "6480");
        assert_eq!(scientific(&BigCount::from(9170703360u64)), "9.1707e9");
    }

    #[test]
    fn table_rows() {
        let t = render_table1();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[1], "1   {(3,0)}");
        assert_eq!(lines[8], "8   {(8,2), (5,5)*}");
        assert_eq!(lines[12], "12  {(13,1), (10,4), (7,7)*}");
    }
}
