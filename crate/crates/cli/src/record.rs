//! Persisted per-diagram results.

use khlap::spectral::{CellSpectrum, SpectralTable, Spectrum};
use khlap::{verify_complex, KhovanovComplex, LinkDiagram};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Content hash of a diagram: covers the software version and the canonical
/// PD code, so results from other versions are never reused.
pub fn diagram_hash(d: &LinkDiagram) -> String {
    let mut h = Sha256::new();
    h.update(format!("khlap {VERSION}\n{d}\n").as_bytes());
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub r: i32,
    pub q: i32,
    pub dim: usize,
    pub betti: usize,
    pub lambda: Option<f64>,
    pub spectrum: Vec<f64>,
}

/// Everything computed for one diagram. Timing is deliberately left out so
/// a cached record is indistinguishable from a fresh one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub version: String,
    pub hash: String,
    pub pd: String,
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub poincare: String,
    pub jones: String,
    pub cells: Vec<CellRecord>,
}

impl ResultRecord {
    /// Builds the complex, checks it, and computes every cell's spectrum.
    pub fn compute(d: &LinkDiagram) -> khlap::Result<Self> {
        let cx = KhovanovComplex::new(d)?;
        verify_complex(&cx)?;
        let table = SpectralTable::compute(&cx)?;
        let jones = table.jones_polynomial()?;
        Ok(ResultRecord {
            version: VERSION.to_string(),
            hash: diagram_hash(d),
            pd: d.to_string(),
            crossings: d.crossing_count(),
            n_plus: d.n_plus(),
            n_minus: d.n_minus(),
            poincare: table.poincare_polynomial().to_string(),
            jones: jones.to_string(),
            cells: table
                .cells()
                .map(|c| CellRecord {
                    r: c.r,
                    q: c.q,
                    dim: c.dim(),
                    betti: c.betti,
                    lambda: c.lambda(),
                    spectrum: c.spectrum.values().to_vec(),
                })
                .collect(),
        })
    }

    pub fn table(&self) -> SpectralTable {
        SpectralTable::from_cells(self.cells.iter().map(|c| CellSpectrum {
            r: c.r,
            q: c.q,
            spectrum: Spectrum::new(c.spectrum.clone()),
            betti: c.betti,
        }))
    }

    pub fn cell(&self, r: i32, q: i32) -> Option<&CellRecord> {
        self.cells.iter().find(|c| (c.r, c.q) == (r, q))
    }
}
