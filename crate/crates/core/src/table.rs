//! The bundled prime-knot table and its reference data.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pd::{parse_table, LinkDiagram, TableEntry};

const KNOTS: &str = include_str!("../data/knots.txt");
const KHOVANOV_RANKS: &str = include_str!("../data/khovanov_ranks.txt");
const SYMMETRY: &str = include_str!("../data/symmetry.txt");

/// Raw text of the bundled knot table.
pub fn bundled_table_text() -> &'static str {
    KNOTS
}

/// Entries of the bundled table, in table order.
pub fn bundled_table() -> Vec<TableEntry> {
    parse_table(KNOTS).expect("bundled knot table is well formed")
}

/// Diagram of a bundled knot such as `"8_12"`.
pub fn bundled_knot(name: &str) -> Option<LinkDiagram> {
    bundled_table()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.diagram().expect("bundled diagrams are valid"))
}

/// Bundled knots with at most `max_crossings` crossings.
pub fn bundled_knots_up_to(max_crossings: usize) -> Vec<(String, LinkDiagram)> {
    bundled_table()
        .into_iter()
        .map(|e| (e.name.clone(), e.diagram().expect("bundled diagrams are valid")))
        .filter(|(_, d)| d.crossing_count() <= max_crossings)
        .collect()
}

fn name_value_lines(text: &'static str) -> impl Iterator<Item = (usize, &'static str, &'static str)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let (name, value) = line.split_once(':')?;
        Some((n + 1, name.trim(), value.trim()))
    })
}

/// Published rational Khovanov ranks keyed by `(r, q)`, for cross-checking.
pub fn reference_khovanov_ranks(name: &str) -> Option<BTreeMap<(i32, i32), usize>> {
    let (line, _, value) = name_value_lines(KHOVANOV_RANKS).find(|(_, n, _)| *n == name)?;
    Some(parse_ranks(value).unwrap_or_else(|e| panic!("bad reference ranks on line {line}: {e}")))
}

fn parse_ranks(value: &str) -> Result<BTreeMap<(i32, i32), usize>> {
    let bad = |message: String| Error::Table { line: 0, message };
    let mut out = BTreeMap::new();
    for triple in value.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = triple.split(',').map(str::trim).collect();
        let [r, q, rank] = parts[..] else {
            return Err(bad(format!("expected r,q,rank, got `{triple}`")));
        };
        let parse_i = |s: &str| s.parse::<i32>().map_err(|e| bad(format!("`{s}`: {e}")));
        let rank = rank.parse::<usize>().map_err(|e| bad(format!("`{rank}`: {e}")))?;
        out.insert((parse_i(r)?, parse_i(q)?), rank);
    }
    Ok(out)
}

/// Symmetry type of a bundled knot, e.g. `"reversible"` or `"fully amphicheiral"`.
pub fn symmetry_type(name: &str) -> Option<&'static str> {
    name_value_lines(SYMMETRY)
        .find(|(_, n, _)| *n == name)
        .map(|(_, _, v)| v)
}

/// Names of the amphicheiral knots in the bundled table.
pub fn achiral_knots() -> Vec<&'static str> {
    name_value_lines(SYMMETRY)
        .filter(|(_, _, v)| v.contains("amphicheiral"))
        .map(|(_, n, _)| n)
        .collect()
}

/// Orders knot names like `3_1 < 8_2 < 8_12 < 10_1`: numeric runs compare
/// as numbers, everything else bytewise.
pub fn knot_name_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, x), (true, y)) => {
                let (x, y) = (x.trim_start_matches('0'), y.trim_start_matches('0'));
                x.len().cmp(&y.len()).then_with(|| x.cmp(y))
            }
            ((_, x), (_, y)) => x.cmp(y),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}
