//! The basis file and the CSV table writer.
//!
//! Every subcommand reads and writes one TOML grammar: top-level `h`, `n` and
//! an ascending `elements` array, followed by optional tables
//! (`[provenance]`, `[verification]`, `[ledger]`, …) and a `[manifest]` echoing
//! how the document was produced. Nothing time-dependent is written into a
//! document, so identical inputs give byte-identical files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sumset::BasisSet;

/// Significant digits used for every real number written out.
pub const REAL_DIGITS: i32 = 12;

/// Formats `x` with 12 significant digits, trailing zeros removed.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&mag) {
        return format!("{:.*e}", (REAL_DIGITS - 1) as usize, x);
    }
    let decimals = (REAL_DIGITS - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `x` rounded to 12 significant digits, for storing in documents.
pub fn round_real(x: f64) -> f64 {
    fmt_real(x).parse().unwrap_or(x)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Parameter echo, `name = value` as text.
    pub parameters: toml::Table,
    pub outcome: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    pub checked_from: u64,
    pub checked_to: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_gap: Option<u64>,
}

/// A basis file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDocument {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    pub elements: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<toml::Table>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ledger: Option<toml::Table>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub manifest: Option<Manifest>,
}

impl BasisDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: BasisDocument = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("elements must be strictly ascending".into()));
        }
        Ok(doc)
    }

    pub fn to_text(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn basis(&self) -> Result<BasisSet> {
        BasisSet::from_sorted(&self.elements)
    }

    pub fn require_h(&self) -> Result<u32> {
        self.h
            .ok_or_else(|| Error::Parse("basis file is missing `h`".into()))
    }

    pub fn require_n(&self) -> Result<u64> {
        self.n
            .ok_or_else(|| Error::Parse("basis file is missing `n`".into()))
    }
}

/// One row of a [`emit_table`] CSV.
#[derive(Clone, Debug, PartialEq)]
pub enum TableRow {
    Search {
        h: u32,
        k: u64,
        value: u64,
        rohrbach_lower: String,
        rohrbach_upper: String,
        hofmeister_lower: String,
        proof_of_optimality: bool,
        nodes_explored: u64,
        witness: Vec<u64>,
    },
    Bound {
        h: u32,
        input: &'static str,
        input_value: u64,
        name: &'static str,
        direction: &'static str,
        value: String,
        exact: String,
        dropped: String,
        precondition_met: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Search,
    Bound,
}

impl TableRow {
    pub fn kind(&self) -> TableKind {
        match self {
            TableRow::Search { .. } => TableKind::Search,
            TableRow::Bound { .. } => TableKind::Bound,
        }
    }

    fn record(&self) -> Vec<String> {
        match self {
            TableRow::Search {
                h,
                k,
                value,
                rohrbach_lower,
                rohrbach_upper,
                hofmeister_lower,
                proof_of_optimality,
                nodes_explored,
                witness,
            } => vec![
                h.to_string(),
                k.to_string(),
                value.to_string(),
                rohrbach_lower.clone(),
                rohrbach_upper.clone(),
                hofmeister_lower.clone(),
                proof_of_optimality.to_string(),
                nodes_explored.to_string(),
                join(witness),
            ],
            TableRow::Bound {
                h,
                input,
                input_value,
                name,
                direction,
                value,
                exact,
                dropped,
                precondition_met,
            } => vec![
                h.to_string(),
                input.to_string(),
                input_value.to_string(),
                name.to_string(),
                direction.to_string(),
                value.clone(),
                exact.clone(),
                dropped.clone(),
                precondition_met.clone(),
            ],
        }
    }
}

impl TableKind {
    pub fn header(self) -> &'static [&'static str] {
        match self {
            TableKind::Search => &[
                "h",
                "k",
                "value",
                "rohrbach_lower",
                "rohrbach_upper",
                "hofmeister_lower",
                "proof_of_optimality",
                "nodes_explored",
                "witness",
            ],
            TableKind::Bound => &[
                "h",
                "input",
                "input_value",
                "bound",
                "direction",
                "value",
                "exact",
                "asymptotic_terms_dropped",
                "precondition_met",
            ],
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Header plus one line per row. All rows must be of `kind`.
pub fn emit_table(kind: TableKind, rows: &[TableRow]) -> Result<String> {
    if let Some(bad) = rows.iter().find(|r| r.kind() != kind) {
        return Err(Error::InvalidParameter(format!(
            "table of {kind:?} rows cannot hold a {:?} row",
            bad.kind()
        )));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(kind.header()).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.record()).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_have_twelve_significant_digits() {
        assert_eq!(fmt_real(27.256808892482095), "27.2568088925");
        assert_eq!(fmt_real(2.0f64.sqrt() * 2.0), "2.82842712475");
        assert_eq!(fmt_real(4.0), "4");
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(-0.125), "-0.125");
        assert_eq!(fmt_real(1.5e20), "1.50000000000e20");
        assert_eq!(round_real(0.84140566043696), 0.841405660437);
    }

    #[test]
    fn basis_file_round_trip() {
        let text = "h = 2\nn = 8\nelements = [0, 1, 3, 4]\n";
        let doc = BasisDocument::parse(text).unwrap();
        assert_eq!(doc.h, Some(2));
        assert_eq!(doc.basis().unwrap().elements(), &[0, 1, 3, 4]);
        assert_eq!(doc.to_text().unwrap(), text);
    }

    #[test]
    fn basis_file_rejects_bad_input() {
        assert!(BasisDocument::parse("h = 2\nn = 3\nelements = [1, 0]\n").is_err());
        assert!(BasisDocument::parse("h = 2\nn = 3\n").is_err());
        assert!(BasisDocument::parse("h = 2\nn = 3\nelements = [0]\nbogus = 1\n").is_err());
        let doc = BasisDocument::parse("elements = []\n").unwrap();
        assert!(doc.basis().is_err());
        assert!(doc.require_h().is_err());
    }

    fn search_row() -> TableRow {
        TableRow::Search {
            h: 2,
            k: 4,
            value: 8,
            rohrbach_lower: "4".into(),
            rohrbach_upper: "15".into(),
            hofmeister_lower: "4".into(),
            proof_of_optimality: true,
            nodes_explored: 11,
            witness: vec![0, 1, 3, 4],
        }
    }

    #[test]
    fn tables() {
        let one = emit_table(TableKind::Search, &[search_row()]).unwrap();
        assert_eq!(
            one,
            "h,k,value,rohrbach_lower,rohrbach_upper,hofmeister_lower,proof_of_optimality,nodes_explored,witness\n\
             2,4,8,4,15,4,true,11,0 1 3 4\n"
        );
        let empty = emit_table(TableKind::Bound, &[]).unwrap();
        assert_eq!(empty.lines().count(), 1);
        assert!(empty.starts_with("h,input,input_value,bound"));
        let bound = TableRow::Bound {
            h: 2,
            input: "k",
            input_value: 4,
            name: "rohrbach_lower",
            direction: "lower",
            value: "4".into(),
            exact: "4".into(),
            dropped: String::new(),
            precondition_met: String::new(),
        };
        assert!(emit_table(TableKind::Search, &[search_row(), bound]).is_err());
    }
}
