use super::AnalysisRow;
use crate::error::{Error, Result};
use crate::geometry::{TransitivityClass, TransitivityKind};

/// CSV projection of an [`AnalysisRow`] (fingerprints live in the JSON
/// output only). Round-trips losslessly through [`CsvRecord::to_line`] and
/// [`CsvRecord::parse_line`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvRecord {
    pub graph_id: String,
    pub h_order: u128,
    pub h0_order: u128,
    pub h1_order: u128,
    pub h01_order: u128,
    pub max: String,
    pub norm: String,
    pub dual: Option<u64>,
    pub maxord: u64,
    pub core_free: bool,
    pub connected: bool,
    pub transitivity: String,
    pub k: String,
}

pub fn csv_header() -> &'static str {
    "graph_id,h_order,h0_order,h1_order,h01_order,max,norm,dual,maxord,core_free,connected,transitivity,k"
}

fn kind_str(kind: TransitivityKind) -> &'static str {
    match kind {
        TransitivityKind::ArcTransitive => "arc_transitive",
        TransitivityKind::HalfArcTransitive => "half_arc_transitive",
        TransitivityKind::SemiSymmetric => "semi_symmetric",
    }
}

fn k_str(t: &TransitivityClass) -> String {
    match t.k {
        None => String::new(),
        Some(k) if t.k_is_lower_bound => format!(">={k}"),
        Some(k) => k.to_string(),
    }
}

impl CsvRecord {
    pub fn from_row(row: &AnalysisRow) -> CsvRecord {
        CsvRecord {
            graph_id: row.graph_id.clone(),
            h_order: row.h_order,
            h0_order: row.h0_order,
            h1_order: row.h1_order,
            h01_order: row.h01_order,
            max: row.max_string.clone(),
            norm: row.norm_string.clone(),
            dual: row.dual,
            maxord: row.maxord,
            core_free: row.core_free,
            connected: row.connected,
            transitivity: kind_str(row.transitivity.kind).to_string(),
            k: k_str(&row.transitivity),
        }
    }

    pub fn to_line(&self) -> String {
        let id = if self.graph_id.contains([',', '"', '\n', '\r']) {
            format!("\"{}\"", self.graph_id.replace('"', "\"\""))
        } else {
            self.graph_id.clone()
        };
        format!(
            "{id},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.h_order,
            self.h0_order,
            self.h1_order,
            self.h01_order,
            self.max,
            self.norm,
            self.dual.map(|d| d.to_string()).unwrap_or_default(),
            self.maxord,
            self.core_free,
            self.connected,
            self.transitivity,
            self.k,
        )
    }

    pub fn parse_line(line: &str) -> Result<CsvRecord> {
        let bad = |msg: &str| Error::Parse(format!("csv row: {msg}: `{line}`"));
        let (graph_id, rest) = if let Some(stripped) = line.strip_prefix('"') {
            let mut id = String::new();
            let mut chars = stripped.chars().peekable();
            loop {
                match chars.next() {
                    Some('"') => {
                        if chars.peek() == Some(&'"') {
                            chars.next();
                            id.push('"');
                        } else {
                            break;
                        }
                    }
                    Some(c) => id.push(c),
                    None => return Err(bad("unterminated quoted field")),
                }
            }
            let rest: String = chars.collect();
            let rest = rest
                .strip_prefix(',')
                .ok_or_else(|| bad("expected comma after quoted id"))?
                .to_string();
            (id, rest)
        } else {
            let (id, rest) = line.split_once(',').ok_or_else(|| bad("too few fields"))?;
            (id.to_string(), rest.to_string())
        };
        let fields: Vec<&str> = rest.split(',').collect();
        if fields.len() != 12 {
            return Err(bad("expected 13 fields"));
        }
        let parse_u128 = |s: &str| s.parse::<u128>().map_err(|_| bad("bad count"));
        Ok(CsvRecord {
            graph_id,
            h_order: parse_u128(fields[0])?,
            h0_order: parse_u128(fields[1])?,
            h1_order: parse_u128(fields[2])?,
            h01_order: parse_u128(fields[3])?,
            max: fields[4].to_string(),
            norm: fields[5].to_string(),
            dual: if fields[6].is_empty() {
                None
            } else {
                Some(fields[6].parse().map_err(|_| bad("bad dual order"))?)
            },
            maxord: fields[7].parse().map_err(|_| bad("bad maxord"))?,
            core_free: fields[8].parse().map_err(|_| bad("bad bool"))?,
            connected: fields[9].parse().map_err(|_| bad("bad bool"))?,
            transitivity: fields[10].to_string(),
            k: fields[11].to_string(),
        })
    }
}

pub fn markdown_header() -> &'static str {
    "| Graph | H | H0 | H1 | H01 | Max | Norm | Dual | MaxOrd |\n|---|---|---|---|---|---|---|---|---|"
}

pub fn markdown_row(row: &AnalysisRow) -> String {
    format!(
        "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
        row.graph_id,
        row.h_order,
        row.h0_order,
        row.h1_order,
        row.h01_order,
        row.max_string,
        row.norm_string,
        row.dual.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
        row.maxord,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let rec = CsvRecord {
            graph_id: "k33".into(),
            h_order: 18,
            h0_order: 6,
            h1_order: 6,
            h01_order: 2,
            max: "2TMM2T".into(),
            norm: "YYNN".into(),
            dual: None,
            maxord: 6,
            core_free: true,
            connected: true,
            transitivity: "semi_symmetric".into(),
            k: String::new(),
        };
        let line = rec.to_line();
        assert_eq!(CsvRecord::parse_line(&line).unwrap(), rec);
        assert_eq!(CsvRecord::parse_line(&line).unwrap().to_line(), line);
    }

    #[test]
    fn csv_round_trip_quoted_id_and_dual() {
        let rec = CsvRecord {
            graph_id: "weird,\"name\"".into(),
            h_order: 16,
            h0_order: 4,
            h1_order: 4,
            h01_order: 1,
            max: "XXXX".into(),
            norm: "YYYY".into(),
            dual: Some(2),
            maxord: 2,
            core_free: true,
            connected: true,
            transitivity: "semi_symmetric".into(),
            k: ">=8".into(),
        };
        let line = rec.to_line();
        assert_eq!(CsvRecord::parse_line(&line).unwrap(), rec);
    }

    #[test]
    fn header_matches_field_count() {
        assert_eq!(csv_header().split(',').count(), 13);
    }
}
