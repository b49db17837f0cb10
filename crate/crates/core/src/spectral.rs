//! Khovanov Laplacians and Diracs, their spectra, and what the harmonic part
//! recovers: Betti numbers, Poincaré and Jones polynomials.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::KhovanovComplex;
use crate::cube::UnionFind;
use crate::error::{Error, Result};
use crate::linalg::{self, EigenMethod, SymmetricMatrix, JACOBI_TOLERANCE};
use crate::oracle;
use crate::pd::LinkDiagram;
use crate::poly::{BiPoly, LaurentPoly};
use crate::sparse::SparseIntMatrix;

/// Relative size below which an eigenvalue counts as zero.
pub const ZERO_THRESHOLD: f64 = 1e-8;

/// Sorted eigenvalues with the zero count under the threshold policy.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    zero_multiplicity: usize,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        let cutoff = Self::cutoff_for(&values);
        let zero_multiplicity = values.iter().filter(|v| v.abs() < cutoff).count();
        Spectrum {
            values,
            zero_multiplicity,
        }
    }

    fn cutoff_for(values: &[f64]) -> f64 {
        let largest = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        ZERO_THRESHOLD * largest.max(1.0)
    }

    /// Below this magnitude a value is treated as zero.
    pub fn cutoff(&self) -> f64 {
        Self::cutoff_for(&self.values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.zero_multiplicity
    }

    /// Smallest value above the zero cutoff.
    pub fn least_nonzero(&self) -> Option<f64> {
        let cutoff = self.cutoff();
        self.values.iter().copied().find(|&v| v >= cutoff)
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Multiset equality: same size and sorted values pairwise within `tol`.
    pub fn approx_eq(&self, other: &[f64], tol: f64) -> bool {
        spectra_match(&self.values, other, tol)
    }
}

/// Sorts both sides and compares them pairwise within `tol`.
pub fn spectra_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Spectrum of a symmetric matrix.
pub fn sym_eigenvalues(m: &SymmetricMatrix, tol: f64) -> Result<Spectrum> {
    Ok(Spectrum::new(linalg::eigenvalues(m, EigenMethod::Auto, tol)?))
}

/// Spectrum of a sparse symmetric integer matrix. The matrix is first split
/// into the blocks of its connectivity graph, which is an exact similarity,
/// and each block is solved densely.
pub fn sparse_spectrum(m: &SparseIntMatrix, method: EigenMethod, tol: f64) -> Result<Spectrum> {
    assert!(m.is_symmetric(), "matrix is not symmetric");
    let n = m.rows();
    let mut uf = UnionFind::new(n);
    for &(r, c, _) in m.entries() {
        if r < c {
            uf.union(r, c);
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        blocks.entry(uf.find(v)).or_default().push(v);
    }
    let mut local = vec![0usize; n];
    for members in blocks.values() {
        for (x, &v) in members.iter().enumerate() {
            local[v] = x;
        }
    }
    let mut by_block: BTreeMap<usize, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for &(r, c, v) in m.entries() {
        by_block.entry(uf.find(r)).or_default().push((local[r], local[c], v));
    }

    let parts: Vec<Result<Vec<f64>>> = blocks
        .par_iter()
        .map(|(root, members)| {
            let k = members.len();
            let entries = by_block.get(root).map_or(&[][..], Vec::as_slice);
            if k == 1 {
                return Ok(vec![entries.first().map_or(0.0, |e| e.2 as f64)]);
            }
            let block = SparseIntMatrix::from_triplets(k, k, entries.to_vec());
            linalg::eigenvalues(&SymmetricMatrix::from_sparse(&block), method, tol)
        })
        .collect();
    let mut values = Vec::with_capacity(n);
    for p in parts {
        values.extend(p?);
    }
    Ok(Spectrum::new(values))
}

/// `Delta^{r,q} = up + down` with `up = (d^{r,q})^T d^{r,q}` and
/// `down = d^{r-1,q} (d^{r-1,q})^T`, all in exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laplacian {
    pub r: i32,
    pub q: i32,
    pub up: SparseIntMatrix,
    pub down: SparseIntMatrix,
}

impl Laplacian {
    pub fn dim(&self) -> usize {
        self.up.rows()
    }

    pub fn total(&self) -> SparseIntMatrix {
        self.up.add(&self.down)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.total().to_dense()
    }

    pub fn to_symmetric(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_sparse(&self.total())
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        sparse_spectrum(&self.total(), EigenMethod::Auto, JACOBI_TOLERANCE)
    }
}

pub fn laplacian(cx: &KhovanovComplex, r: i32, q: i32) -> Laplacian {
    let d = cx.differential(r, q);
    let prev = cx.differential(r - 1, q);
    Laplacian {
        r,
        q,
        up: d.transpose().mul(&d),
        down: prev.mul(&prev.transpose()),
    }
}

/// The symmetric block-tridiagonal matrix on `C^{-n_-,q} + ... + C^{r+1,q}`
/// with `d^{h,q}` below the diagonal and its transpose above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracMatrix {
    pub r: i32,
    pub q: i32,
    heights: Vec<i32>,
    offsets: Vec<usize>,
    matrix: SparseIntMatrix,
}

impl DiracMatrix {
    /// Homological degree of each diagonal block.
    pub fn heights(&self) -> &[i32] {
        &self.heights
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Start of each block; the last entry is the total dimension.
    pub fn block_offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &SparseIntMatrix {
        &self.matrix
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.matrix.to_dense()
    }

    pub fn square(&self) -> SparseIntMatrix {
        self.matrix.mul(&self.matrix)
    }

    /// Diagonal block `t` (counting from the lowest height) of any matrix
    /// shaped like this one.
    pub fn diagonal_block(&self, m: &SparseIntMatrix, t: usize) -> SparseIntMatrix {
        let o = self.offsets[t];
        let k = self.offsets[t + 1] - o;
        m.block(o, o, k, k)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        sparse_spectrum(&self.matrix, EigenMethod::Auto, JACOBI_TOLERANCE)
    }
}

pub fn dirac(cx: &KhovanovComplex, r: i32, q: i32) -> DiracMatrix {
    let low = -cx.n_minus();
    let heights: Vec<i32> = (low..=r + 1).collect();
    let mut offsets = vec![0];
    for &h in &heights {
        offsets.push(offsets.last().unwrap() + cx.dim(h, q));
    }
    let n = *offsets.last().unwrap();
    let mut triplets = Vec::new();
    for (t, &h) in heights.iter().enumerate().take(heights.len() - 1) {
        let d = cx.differential(h, q);
        let (row0, col0) = (offsets[t + 1], offsets[t]);
        for &(i, j, v) in d.entries() {
            triplets.push((row0 + i, col0 + j, v));
            triplets.push((col0 + j, row0 + i, v));
        }
    }
    DiracMatrix {
        r,
        q,
        heights,
        offsets,
        matrix: SparseIntMatrix::from_triplets(n, n, triplets),
    }
}

/// Laplacian spectrum of one cell together with its harmonic count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSpectrum {
    pub r: i32,
    pub q: i32,
    pub spectrum: Spectrum,
    pub betti: usize,
}

impl CellSpectrum {
    pub fn dim(&self) -> usize {
        self.spectrum.len()
    }

    pub fn lambda(&self) -> Option<f64> {
        self.spectrum.least_nonzero()
    }
}

/// Spectra of every nonempty `Delta^{r,q}` of a diagram, each harmonic count
/// confirmed against exact ranks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralTable {
    cells: BTreeMap<(i32, i32), CellSpectrum>,
}

impl SpectralTable {
    pub fn of(d: &LinkDiagram) -> Result<Self> {
        Self::compute(&KhovanovComplex::new(d)?)
    }

    pub fn compute(cx: &KhovanovComplex) -> Result<Self> {
        let exact = oracle::homology_ranks(cx);
        let keys: Vec<(i32, i32)> = cx.basis().cells().map(|(k, _)| k).collect();
        let cells: Vec<Result<CellSpectrum>> = keys
            .par_iter()
            .map(|&(r, q)| {
                let spectrum = laplacian(cx, r, q).spectrum()?;
                let spectral = spectrum.zero_multiplicity();
                let exact = exact[&(r, q)];
                if spectral != exact {
                    return Err(Error::OracleMismatch {
                        r,
                        q,
                        spectral,
                        exact,
                    });
                }
                Ok(CellSpectrum {
                    r,
                    q,
                    spectrum,
                    betti: exact,
                })
            })
            .collect();
        let mut out = BTreeMap::new();
        for c in cells {
            let c = c?;
            out.insert((c.r, c.q), c);
        }
        Ok(SpectralTable { cells: out })
    }

    /// Reassembles a table from previously computed cells.
    pub fn from_cells(cells: impl IntoIterator<Item = CellSpectrum>) -> Self {
        SpectralTable {
            cells: cells.into_iter().map(|c| ((c.r, c.q), c)).collect(),
        }
    }

    pub fn cell(&self, r: i32, q: i32) -> Option<&CellSpectrum> {
        self.cells.get(&(r, q))
    }

    /// Eigenvalues at `(r, q)`; empty outside the support of the complex.
    pub fn spectrum(&self, r: i32, q: i32) -> &[f64] {
        self.cell(r, q).map_or(&[], |c| c.spectrum.values())
    }

    pub fn cells(&self) -> impl Iterator<Item = &CellSpectrum> {
        self.cells.values()
    }

    pub fn betti(&self, r: i32, q: i32) -> usize {
        self.cell(r, q).map_or(0, |c| c.betti)
    }

    /// Nonzero Betti numbers.
    pub fn betti_table(&self) -> BTreeMap<(i32, i32), usize> {
        self.cells
            .iter()
            .filter(|(_, c)| c.betti > 0)
            .map(|(&k, c)| (k, c.betti))
            .collect()
    }

    /// `sum t^r q^j dim ker Delta^{r,j}`.
    pub fn poincare_polynomial(&self) -> BiPoly {
        BiPoly::from_terms(self.betti_table().into_iter().map(|(k, b)| (k, b as i64)))
    }

    /// The Poincaré polynomial at `t = -1` divided by `q + q^-1`.
    pub fn jones_polynomial(&self) -> Result<LaurentPoly> {
        let unnormalized = self.poincare_polynomial().at_t_minus_one();
        unnormalized.div_exact(&LaurentPoly::from_terms([(-1, 1), (1, 1)]))
    }
}

pub fn betti(d: &LinkDiagram, r: i32, q: i32) -> Result<usize> {
    let cx = KhovanovComplex::new(d)?;
    let spectrum = laplacian(&cx, r, q).spectrum()?;
    let exact = oracle::homology_rank(&cx, r, q);
    if spectrum.zero_multiplicity() != exact {
        return Err(Error::OracleMismatch {
            r,
            q,
            spectral: spectrum.zero_multiplicity(),
            exact,
        });
    }
    Ok(exact)
}

pub fn poincare_polynomial(d: &LinkDiagram) -> Result<BiPoly> {
    Ok(SpectralTable::of(d)?.poincare_polynomial())
}

pub fn jones_polynomial(d: &LinkDiagram) -> Result<LaurentPoly> {
    SpectralTable::of(d)?.jones_polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_policy() {
        let s = Spectrum::new(vec![6.0, 1e-12, -1e-11]);
        assert_eq!(s.values()[2], 6.0);
        assert_eq!(s.zero_multiplicity(), 2);
        assert_eq!(s.least_nonzero(), Some(6.0));
        assert_eq!(Spectrum::new(vec![]).least_nonzero(), None);
        assert_eq!(Spectrum::new(vec![0.0, 0.0]).least_nonzero(), None);
    }

    #[test]
    fn block_decomposition_keeps_isolated_diagonals() {
        let m = SparseIntMatrix::from_dense(&[
            vec![3, 0, 3, 0],
            vec![0, 7, 0, 0],
            vec![3, 0, 3, 0],
            vec![0, 0, 0, 0],
        ]);
        let s = sparse_spectrum(&m, EigenMethod::Auto, JACOBI_TOLERANCE).unwrap();
        assert!(s.approx_eq(&[0.0, 0.0, 6.0, 7.0], 1e-12));
        assert_eq!(s.zero_multiplicity(), 2);
    }

    #[test]
    fn ordering_insensitive_comparison() {
        assert!(spectra_match(&[2.0, 1.0], &[1.0, 2.0 + 1e-9], 1e-8));
        assert!(!spectra_match(&[1.0], &[1.0, 1.0], 1.0));
    }
}
