//! Khovanov Laplacians and Diracs of link diagrams given as planar diagram
//! codes.
//!
//! A [`LinkDiagram`] is parsed from PD notation, expanded into its cube of
//! smoothings and normalised Khovanov complex ([`KhovanovComplex`]), and the
//! graded Laplacians `Delta^{r,q}` are diagonalised. Zero eigenvalues give
//! Khovanov homology (each count is checked against exact rational ranks);
//! the nonzero part is compared across mirror images in [`analysis`].

pub mod analysis;
pub mod complex;
pub mod cube;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod pd;
pub mod poly;
pub mod sparse;
pub mod spectral;
pub mod table;

pub use analysis::{
    heatmap_table, mirror_report, symmetry_report, HeatmapTable, MirrorReport, MirrorVerdict,
    SymmetryReport, Verdict,
};
pub use complex::{differential_matrix, grade_basis, BasisElement, GradedBasis, KhovanovComplex};
pub use cube::{cube_edges_from, smoothing_cycles, CubeEdge, SmoothingState, Vertex};
pub use error::{Error, Result};
pub use linalg::SymmetricMatrix;
pub use oracle::{exact_rank, homology_rank, verify_complex};
pub use pd::{crossing_sign, mirror_diagram, parse_pd, r1_twist, validate_diagram, Crossing, LinkDiagram, Sign};
pub use poly::{BiPoly, LaurentPoly};
pub use sparse::SparseIntMatrix;
pub use spectral::{
    betti, dirac, jones_polynomial, laplacian, poincare_polynomial, sym_eigenvalues, CellSpectrum,
    DiracMatrix, Laplacian, SpectralTable, Spectrum,
};
