//! Mirror and chirality reports built from Laplacian spectra, and heatmap
//! data of least nonzero eigenvalues.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::pd::{mirror_diagram, LinkDiagram};
use crate::spectral::{spectra_match, SpectralTable};

/// Comparison tolerance for spectra computed by this crate.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Tolerance against spectra printed to six significant figures.
pub const PRINTED_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Symmetric,
    Asymmetric,
    /// One of the two cells is empty; counted as asymmetric.
    OneSideEmpty,
}

/// `S^{r,q}` against `S^{-r,-q}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellComparison {
    pub r: i32,
    pub q: i32,
    pub verdict: Verdict,
    pub spectrum: Vec<f64>,
    pub mirror_spectrum: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub knot: String,
    pub all_symmetric: bool,
    /// Whether `beta^{r,q} = beta^{-r,-q}` everywhere.
    pub homology_symmetric: bool,
    pub cells: Vec<CellComparison>,
}

impl SymmetryReport {
    pub fn from_table(knot: &str, table: &SpectralTable, tol: f64) -> Self {
        let mut keys = BTreeSet::new();
        for c in table.cells() {
            keys.insert((c.r, c.q));
            keys.insert((-c.r, -c.q));
        }
        let cells: Vec<CellComparison> = keys
            .into_iter()
            .map(|(r, q)| {
                let a = table.spectrum(r, q);
                let b = table.spectrum(-r, -q);
                let verdict = if a.is_empty() || b.is_empty() {
                    Verdict::OneSideEmpty
                } else if spectra_match(a, b, tol) {
                    Verdict::Symmetric
                } else {
                    Verdict::Asymmetric
                };
                CellComparison {
                    r,
                    q,
                    verdict,
                    spectrum: a.to_vec(),
                    mirror_spectrum: b.to_vec(),
                }
            })
            .collect();
        let betti = table.betti_table();
        SymmetryReport {
            knot: knot.to_string(),
            all_symmetric: cells.iter().all(|c| c.verdict == Verdict::Symmetric),
            homology_symmetric: betti
                .iter()
                .all(|(&(r, q), &b)| table.betti(-r, -q) == b),
            cells,
        }
    }

    pub fn verdict(&self, r: i32, q: i32) -> Option<Verdict> {
        self.cells.iter().find(|c| (c.r, c.q) == (r, q)).map(|c| c.verdict)
    }

    /// Cells with a `Symmetric` verdict.
    pub fn symmetric_cells(&self) -> Vec<(i32, i32)> {
        self.cells
            .iter()
            .filter(|c| c.verdict == Verdict::Symmetric)
            .map(|c| (c.r, c.q))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn symmetry_report(knot: &str, d: &LinkDiagram, tol: f64) -> Result<SymmetryReport> {
    Ok(SymmetryReport::from_table(knot, &SpectralTable::of(d)?, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorVerdict {
    /// Betti tables of the knot and its mirror differ.
    DistinguishedByHomology,
    /// Betti tables agree but some spectrum differs.
    DistinguishedBySpectra,
    Indistinguishable,
}

/// The same cell of a diagram and of its mirror.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirrorCell {
    pub r: i32,
    pub q: i32,
    pub betti: usize,
    pub mirror_betti: usize,
    pub spectrum: Vec<f64>,
    pub mirror_spectrum: Vec<f64>,
    pub same_spectrum: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirrorReport {
    pub knot: String,
    pub verdict: MirrorVerdict,
    pub homology_identical: bool,
    pub spectra_identical: bool,
    pub cells: Vec<MirrorCell>,
}

impl MirrorReport {
    pub fn from_tables(knot: &str, table: &SpectralTable, mirror: &SpectralTable, tol: f64) -> Self {
        let keys: BTreeSet<(i32, i32)> = table
            .cells()
            .chain(mirror.cells())
            .map(|c| (c.r, c.q))
            .collect();
        let cells: Vec<MirrorCell> = keys
            .into_iter()
            .map(|(r, q)| {
                let a = table.spectrum(r, q);
                let b = mirror.spectrum(r, q);
                MirrorCell {
                    r,
                    q,
                    betti: table.betti(r, q),
                    mirror_betti: mirror.betti(r, q),
                    spectrum: a.to_vec(),
                    mirror_spectrum: b.to_vec(),
                    same_spectrum: spectra_match(a, b, tol),
                }
            })
            .collect();
        let homology_identical = cells.iter().all(|c| c.betti == c.mirror_betti);
        let spectra_identical = cells.iter().all(|c| c.same_spectrum);
        let verdict = match (homology_identical, spectra_identical) {
            (false, _) => MirrorVerdict::DistinguishedByHomology,
            (true, false) => MirrorVerdict::DistinguishedBySpectra,
            (true, true) => MirrorVerdict::Indistinguishable,
        };
        MirrorReport {
            knot: knot.to_string(),
            verdict,
            homology_identical,
            spectra_identical,
            cells,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Compares `d` with its mirror diagram.
pub fn mirror_report(knot: &str, d: &LinkDiagram, tol: f64) -> Result<MirrorReport> {
    let a = SpectralTable::of(d)?;
    let b = SpectralTable::of(&mirror_diagram(d))?;
    Ok(MirrorReport::from_tables(knot, &a, &b, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatmapRow {
    pub r: i32,
    pub q: i32,
    pub lambda: Option<f64>,
    pub betti: usize,
}

/// Least nonzero eigenvalue and Betti number per nonempty cell.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HeatmapTable {
    pub lambda: BTreeMap<(i32, i32), f64>,
    pub betti: BTreeMap<(i32, i32), usize>,
}

impl HeatmapTable {
    pub fn from_table(table: &SpectralTable) -> Self {
        let mut out = HeatmapTable::default();
        for c in table.cells() {
            if let Some(l) = c.lambda() {
                out.lambda.insert((c.r, c.q), l);
            }
            out.betti.insert((c.r, c.q), c.betti);
        }
        out
    }

    pub fn rows(&self) -> Vec<HeatmapRow> {
        self.betti
            .iter()
            .map(|(&(r, q), &betti)| HeatmapRow {
                r,
                q,
                lambda: self.lambda.get(&(r, q)).copied(),
                betti,
            })
            .collect()
    }

    /// `r,q,lambda,betti` with a header line; absent λ is an empty field.
    pub fn to_csv(&self, format_value: impl Fn(f64) -> String) -> String {
        let mut s = String::from("r,q,lambda,betti\n");
        for row in self.rows() {
            let lambda = row.lambda.map(&format_value).unwrap_or_default();
            let _ = writeln!(s, "{},{},{},{}", row.r, row.q, lambda, row.betti);
        }
        s
    }

    /// A bare SVG grid: one square per cell shaded by λ, labelled with the
    /// Betti number where it is nonzero. Quantum degree increases upward.
    pub fn to_svg(&self) -> String {
        const CELL: i32 = 28;
        let rows = self.rows();
        let Some(r_min) = rows.iter().map(|c| c.r).min() else {
            return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\"/>\n".into();
        };
        let r_max = rows.iter().map(|c| c.r).max().unwrap();
        let q_min = rows.iter().map(|c| c.q).min().unwrap();
        let q_max = rows.iter().map(|c| c.q).max().unwrap();
        let lam_max = self.lambda.values().fold(0.0f64, |m, &v| m.max(v));
        // q steps by 2 within a knot's support
        let width = (r_max - r_min + 1) * CELL;
        let height = ((q_max - q_min) / 2 + 1) * CELL;
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\">\n"
        );
        for row in rows {
            let x = (row.r - r_min) * CELL;
            let y = (q_max - row.q) / 2 * CELL;
            let shade = match row.lambda {
                Some(l) if lam_max > 0.0 => 255 - (200.0 * l / lam_max).round() as i32,
                _ => 255,
            };
            let _ = writeln!(
                s,
                "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"rgb({shade},{shade},255)\" stroke=\"black\"><title>r={} q={} lambda={}</title></rect>",
                row.r,
                row.q,
                row.lambda.map_or("none".to_string(), |l| l.to_string()),
            );
            if row.betti > 0 {
                let _ = writeln!(
                    s,
                    "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
                    x + CELL / 2,
                    y + CELL / 2 + 4,
                    row.betti
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

pub fn heatmap_table(d: &LinkDiagram) -> Result<HeatmapTable> {
    Ok(HeatmapTable::from_table(&SpectralTable::of(d)?))
}

/// Achiral knots whose table diagrams are expected to give asymmetric spectra.
pub const EXPECTED_ASYMMETRIC: [&str; 3] = ["8_12", "10_37", "10_43"];

/// Symmetric/asymmetric split of spectra over a set of achiral knots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiralitySurvey {
    pub symmetric: Vec<String>,
    pub asymmetric: Vec<String>,
    /// Asymmetric knots not in [`EXPECTED_ASYMMETRIC`].
    pub unexpected_asymmetric: Vec<String>,
    /// Members of [`EXPECTED_ASYMMETRIC`] found symmetric.
    pub unexpected_symmetric: Vec<String>,
}

impl ChiralitySurvey {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a SymmetryReport>) -> Self {
        let mut survey = ChiralitySurvey {
            symmetric: Vec::new(),
            asymmetric: Vec::new(),
            unexpected_asymmetric: Vec::new(),
            unexpected_symmetric: Vec::new(),
        };
        for r in reports {
            let expected = EXPECTED_ASYMMETRIC.contains(&r.knot.as_str());
            if r.all_symmetric {
                survey.symmetric.push(r.knot.clone());
                if expected {
                    survey.unexpected_symmetric.push(r.knot.clone());
                }
            } else {
                survey.asymmetric.push(r.knot.clone());
                if !expected {
                    survey.unexpected_asymmetric.push(r.knot.clone());
                }
            }
        }
        survey
    }

    pub fn matches_expectation(&self) -> bool {
        self.unexpected_asymmetric.is_empty() && self.unexpected_symmetric.is_empty()
    }
}
