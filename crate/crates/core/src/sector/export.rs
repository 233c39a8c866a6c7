use std::fmt::Write as _;
use std::str::FromStr;

use super::{Node, SectorLattice};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

fn label(n: &Node) -> (String, String) {
    match &n.key {
        Some(k) => (k.energy.to_string(), k.charge.to_string()),
        None => ("?".into(), "?".into()),
    }
}

/// Renders the lattice. Output depends only on the lattice, so repeated
/// exports are byte-identical; an empty lattice yields only the header.
pub fn lattice_export(sector: &SectorLattice, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Dot => Ok(to_dot(sector)),
        ExportFormat::Json => serde_json::to_string_pretty(sector).map(|s| s + "\n").map_err(|e| Error::Parse(e.to_string())),
        ExportFormat::Csv => to_csv(sector),
    }
}

fn to_dot(sector: &SectorLattice) -> String {
    let mut out = String::from("digraph sector {\n");
    for n in &sector.nodes {
        let (e, q) = label(n);
        let _ = writeln!(out, "  n{} [label=\"({e}, {q})\"];", n.id);
    }
    for e in &sector.edges {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{} : {}\"];", e.from, e.to, e.generator, e.coeff);
    }
    out.push_str("}\n");
    out
}

fn to_csv(sector: &SectorLattice) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(["record", "id", "level", "energy", "charge", "from", "generator", "to", "coeff"]).map_err(io)?;
    for n in &sector.nodes {
        let (e, q) = label(n);
        w.write_record(["node", &n.id.to_string(), &n.level.to_string(), &e, &q, "", "", "", ""]).map_err(io)?;
    }
    for e in &sector.edges {
        w.write_record(["edge", "", "", "", "", &e.from.to_string(), e.generator.symbol(), &e.to.to_string(), &e.coeff.to_string()])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector::{fig1_sector, generate_sector, ALL_GENERATORS};
    use crate::twod::State2D;

    #[test]
    fn dot_for_fig1() {
        let dot = lattice_export(&fig1_sector(2).unwrap(), ExportFormat::Dot).unwrap();
        assert_eq!(dot.lines().filter(|l| l.contains("[label=\"(")).count(), 6);
        assert!(dot.contains("n0 [label=\"(1, 0)\"];"));
        assert!(dot.contains("n0 -> n1 [label=\"b++ : 1\"];"), "{dot}");
    }

    #[test]
    fn empty_sector_is_header_only() {
        let s = generate_sector(&State2D::zero(), &ALL_GENERATORS, 2).unwrap();
        assert_eq!(lattice_export(&s, ExportFormat::Dot).unwrap(), "digraph sector {\n}\n");
        assert_eq!(lattice_export(&s, ExportFormat::Csv).unwrap(), "record,id,level,energy,charge,from,generator,to,coeff\n");
        let json = lattice_export(&s, ExportFormat::Json).unwrap();
        assert_eq!(SectorLattice::from_json(&json).unwrap(), s);
    }

    #[test]
    fn json_round_trip_and_bad_format() {
        let s = fig1_sector(2).unwrap();
        let json = lattice_export(&s, ExportFormat::Json).unwrap();
        assert_eq!(SectorLattice::from_json(&json).unwrap(), s);
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::UnsupportedFormat(_))));
    }
}
