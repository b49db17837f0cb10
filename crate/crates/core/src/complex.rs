//! Bigraded chain groups `C^{r,q}` with deterministic bases, and the graded
//! differentials `d^{r,q}: C^{r,q} -> C^{r+1,q}`.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cube::{all_smoothings, cube_edges_from, transition, CubeEdge, SmoothingState, Surgery, Vertex};
use crate::error::Result;
use crate::pd::LinkDiagram;
use crate::sparse::SparseIntMatrix;

/// Choice of `v+` or `v-` for every cycle of a smoothing. Factor `t` (cycles
/// in ascending label order) is bit `len - 1 - t`, set for `v+`, so integer
/// order puts `v-` before `v+` with the first factor most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    bits: u32,
    len: u8,
}

impl SignVector {
    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len < 32 && bits >> len == 0);
        SignVector {
            bits,
            len: len as u8,
        }
    }

    pub fn from_factors(plus: &[bool]) -> Self {
        let bits = plus.iter().fold(0, |acc, &p| (acc << 1) | p as u32);
        SignVector::new(bits, plus.len())
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_plus(&self, factor: usize) -> bool {
        self.bits & (1 << (self.len() - 1 - factor)) != 0
    }

    pub fn plus_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn factors(&self) -> Vec<bool> {
        (0..self.len()).map(|t| self.is_plus(t)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub alpha: Vertex,
    pub signs: SignVector,
    /// Homological degree `l(alpha) - n_-`.
    pub r: i32,
    /// Quantum degree `(#v+ - #v-) + l(alpha) + n_+ - 2 n_-`.
    pub q: i32,
}

impl BasisElement {
    fn key(&self) -> (u32, u32) {
        (self.alpha.bits(), self.signs.bits())
    }
}

impl PartialOrd for BasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Degree shifts of the normalised complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shifts {
    pub n_plus: i32,
    pub n_minus: i32,
}

impl Shifts {
    pub fn of(d: &LinkDiagram) -> Self {
        Shifts {
            n_plus: d.n_plus() as i32,
            n_minus: d.n_minus() as i32,
        }
    }

    pub fn element(&self, alpha: Vertex, signs: SignVector) -> BasisElement {
        let height = alpha.height() as i32;
        let plus = signs.plus_count() as i32;
        let minus = signs.len() as i32 - plus;
        BasisElement {
            alpha,
            signs,
            r: height - self.n_minus,
            q: (plus - minus) + height + self.n_plus - 2 * self.n_minus,
        }
    }
}

/// Basis of every nonempty `C^{r,q}`, each sorted by vertex then sign vector.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedBasis {
    cells: BTreeMap<(i32, i32), Vec<BasisElement>>,
}

impl GradedBasis {
    fn build(states: &[SmoothingState], shifts: Shifts) -> Self {
        let mut cells: BTreeMap<(i32, i32), Vec<BasisElement>> = BTreeMap::new();
        // states are indexed by vertex bits and sign vectors enumerate in
        // order, so every cell fills already sorted
        for state in states {
            let c = state.cycle_count();
            for bits in 0..1u32 << c {
                let x = shifts.element(state.alpha, SignVector::new(bits, c));
                cells.entry((x.r, x.q)).or_default().push(x);
            }
        }
        GradedBasis { cells }
    }

    pub fn cell(&self, r: i32, q: i32) -> &[BasisElement] {
        self.cells.get(&(r, q)).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, r: i32, q: i32) -> usize {
        self.cell(r, q).len()
    }

    pub fn index_of(&self, x: &BasisElement) -> Option<usize> {
        self.cell(x.r, x.q).binary_search(x).ok()
    }

    /// Nonempty cells in `(r, q)` order.
    pub fn cells(&self) -> impl Iterator<Item = ((i32, i32), &[BasisElement])> {
        self.cells.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn total_dim(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }

    pub fn quantum_degrees(&self) -> Vec<i32> {
        let mut qs: Vec<i32> = self.cells.keys().map(|k| k.1).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }
}

/// Basis of every chain group of `d`.
pub fn grade_basis(d: &LinkDiagram) -> Result<GradedBasis> {
    let states = all_smoothings(d)?;
    Ok(GradedBasis::build(&states, Shifts::of(d)))
}

/// The normalised Khovanov complex of a diagram with all graded differentials.
#[derive(Debug, Clone)]
pub struct KhovanovComplex {
    diagram: LinkDiagram,
    shifts: Shifts,
    states: Vec<SmoothingState>,
    basis: GradedBasis,
    differentials: BTreeMap<(i32, i32), SparseIntMatrix>,
}

impl KhovanovComplex {
    pub fn new(diagram: &LinkDiagram) -> Result<Self> {
        let states = all_smoothings(diagram)?;
        let shifts = Shifts::of(diagram);
        let basis = GradedBasis::build(&states, shifts);
        let mut cx = KhovanovComplex {
            diagram: diagram.clone(),
            shifts,
            states,
            basis,
            differentials: BTreeMap::new(),
        };
        let keys: Vec<(i32, i32)> = cx
            .basis
            .cells()
            .map(|(k, _)| k)
            .filter(|&(r, q)| cx.basis.dim(r + 1, q) > 0)
            .collect();
        let built: Vec<_> = keys
            .par_iter()
            .map(|&(r, q)| ((r, q), cx.compute_differential(r, q)))
            .collect();
        cx.differentials = built.into_iter().collect();
        Ok(cx)
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn shifts(&self) -> Shifts {
        self.shifts
    }

    pub fn n_minus(&self) -> i32 {
        self.shifts.n_minus
    }

    pub fn n_plus(&self) -> i32 {
        self.shifts.n_plus
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn state(&self, alpha: Vertex) -> &SmoothingState {
        &self.states[alpha.bits() as usize]
    }

    pub fn states(&self) -> &[SmoothingState] {
        &self.states
    }

    pub fn dim(&self, r: i32, q: i32) -> usize {
        self.basis.dim(r, q)
    }

    /// Lowest and highest homological degree: `-n_-` and `n - n_-`.
    pub fn height_range(&self) -> (i32, i32) {
        let n = self.diagram.crossing_count() as i32;
        (-self.shifts.n_minus, n - self.shifts.n_minus)
    }

    /// `d_xi(x)` without the edge sign: multiplication on merging factors,
    /// comultiplication on a splitting factor, identity elsewhere.
    pub fn edge_differential(&self, edge: &CubeEdge, x: &BasisElement) -> Vec<(BasisElement, i64)> {
        assert_eq!(edge.source, x.alpha, "element does not live at the edge source");
        let source = self.state(edge.source);
        let target = self.state(edge.target);
        let tr = transition(&self.diagram, edge, source, target);
        let mut base = vec![false; target.cycle_count()];
        for (from, &to) in tr.carried.iter().enumerate() {
            if to != usize::MAX {
                base[to] = x.signs.is_plus(from);
            }
        }
        let mut images: Vec<Vec<bool>> = Vec::with_capacity(2);
        match tr.surgery {
            Surgery::Merge { a, b, into } => match (x.signs.is_plus(a), x.signs.is_plus(b)) {
                (false, false) => {}
                (pa, pb) => {
                    base[into] = pa && pb;
                    images.push(base);
                }
            },
            Surgery::Split { from, a, b } => {
                if x.signs.is_plus(from) {
                    let mut first = base.clone();
                    first[a] = true;
                    first[b] = false;
                    base[a] = false;
                    base[b] = true;
                    images.push(first);
                    images.push(base);
                } else {
                    base[a] = false;
                    base[b] = false;
                    images.push(base);
                }
            }
        }
        images
            .into_iter()
            .map(|f| (self.shifts.element(edge.target, SignVector::from_factors(&f)), 1))
            .collect()
    }

    fn compute_differential(&self, r: i32, q: i32) -> SparseIntMatrix {
        let cols = self.basis.cell(r, q);
        let rows = self.basis.cell(r + 1, q);
        let mut triplets = Vec::new();
        for (col, x) in cols.iter().enumerate() {
            for edge in cube_edges_from(&x.alpha) {
                for (y, coeff) in self.edge_differential(&edge, x) {
                    debug_assert_eq!((y.r, y.q), (r + 1, q));
                    let row = rows.binary_search(&y).expect("image lies in the next chain group");
                    triplets.push((row, col, edge.sign as i64 * coeff));
                }
            }
        }
        SparseIntMatrix::from_triplets(rows.len(), cols.len(), triplets)
    }

    /// Every differential with a nonempty target, keyed by source cell.
    pub fn differentials(&self) -> &BTreeMap<(i32, i32), SparseIntMatrix> {
        &self.differentials
    }

    /// `d^{r,q}` as a `dim C^{r+1,q} x dim C^{r,q}` matrix. Cells outside the
    /// complex give correctly shaped zero matrices.
    pub fn differential(&self, r: i32, q: i32) -> Cow<'_, SparseIntMatrix> {
        match self.differentials.get(&(r, q)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(SparseIntMatrix::zeros(self.dim(r + 1, q), self.dim(r, q))),
        }
    }

    /// Human-readable name of a basis element, e.g. `V101 v+1 v-3`.
    pub fn describe(&self, x: &BasisElement) -> String {
        let state = self.state(x.alpha);
        let mut s = format!("V{}", x.alpha);
        for (t, label) in state.cycle_labels().into_iter().enumerate() {
            let sign = if x.signs.is_plus(t) { '+' } else { '-' };
            let _ = write!(s, " v{sign}{label}");
        }
        s
    }
}

/// `d^{r,q}` of `d` in the deterministic bases.
pub fn differential_matrix(d: &LinkDiagram, r: i32, q: i32) -> Result<SparseIntMatrix> {
    let states = all_smoothings(d)?;
    let shifts = Shifts::of(d);
    let basis = GradedBasis::build(&states, shifts);
    let cx = KhovanovComplex {
        diagram: d.clone(),
        shifts,
        states,
        basis,
        differentials: BTreeMap::new(),
    };
    Ok(cx.compute_differential(r, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;

    fn trefoil() -> KhovanovComplex {
        KhovanovComplex::new(&parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()).unwrap()
    }

    fn element(cx: &KhovanovComplex, alpha: &str, plus: &[bool]) -> BasisElement {
        cx.shifts()
            .element(Vertex::parse(alpha).unwrap(), SignVector::from_factors(plus))
    }

    #[test]
    fn trefoil_cell_dimensions() {
        let cx = trefoil();
        let b = cx.basis();
        assert_eq!(b.dim(0, 3), 2);
        assert_eq!(b.dim(0, 1), 1);
        assert_eq!(b.dim(0, 5), 1);
        assert_eq!(b.dim(1, 3), 3);
        assert_eq!(b.dim(2, 3), 3);
        let height = |r: i32| b.cells().filter(|(k, _)| k.0 == r).map(|(_, v)| v.len()).sum::<usize>();
        assert_eq!(height(0), 4);
        assert_eq!(height(1), 6);
        assert_eq!(b.total_dim(), 4 + 6 + 12 + 8);
    }

    #[test]
    fn basis_order_puts_minus_first() {
        let cx = trefoil();
        let names: Vec<String> = cx.basis().cell(0, 3).iter().map(|x| cx.describe(x)).collect();
        assert_eq!(names, ["V000 v-1 v+2", "V000 v+1 v-2"]);
        let names: Vec<String> = cx.basis().cell(1, 3).iter().map(|x| cx.describe(x)).collect();
        assert_eq!(names, ["V001 v-1", "V010 v-1", "V100 v-1"]);
    }

    #[test]
    fn split_on_plus_factor() {
        let cx = trefoil();
        let edge = CubeEdge::new(Vertex::parse("101").unwrap(), 1);
        let x = element(&cx, "101", &[true, false]);
        let out = cx.edge_differential(&edge, &x);
        let names: Vec<String> = out.iter().map(|(y, c)| format!("{c} {}", cx.describe(y))).collect();
        assert_eq!(names.len(), 2);
        // cycle 1 splits; the untouched cycle keeps its minus
        let s101 = cx.state(Vertex::parse("101").unwrap());
        let s111 = cx.state(Vertex::parse("111").unwrap());
        assert_eq!(s101.cycle_count(), 2);
        assert_eq!(s111.cycle_count(), 3);
        for (y, c) in &out {
            assert_eq!(*c, 1);
            assert_eq!(y.q, x.q);
            assert_eq!(y.signs.plus_count(), 1);
        }
    }

    #[test]
    fn merge_of_two_minus_is_zero() {
        let cx = trefoil();
        let edge = CubeEdge::new(Vertex::zero(3), 0);
        assert!(cx.edge_differential(&edge, &element(&cx, "000", &[false, false])).is_empty());
        let out = cx.edge_differential(&edge, &element(&cx, "000", &[true, false]));
        assert_eq!(out.len(), 1);
        assert!(!out[0].0.signs.is_plus(0));
        let out = cx.edge_differential(&edge, &element(&cx, "000", &[true, true]));
        assert!(out[0].0.signs.is_plus(0));
    }

    #[test]
    fn split_of_minus_is_minus_minus() {
        let cx = trefoil();
        let edge = CubeEdge::new(Vertex::parse("001").unwrap(), 1);
        let out = cx.edge_differential(&edge, &element(&cx, "001", &[false]));
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0.signs.plus_count(), 0);
        assert_eq!(out[0].0.signs.len(), 2);
    }

    #[test]
    fn standalone_differential_matches_complex() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let cx = KhovanovComplex::new(&d).unwrap();
        for (r, q) in [(0, 3), (1, 5), (1, 3), (2, 7), (5, 5), (-1, 3)] {
            assert_eq!(differential_matrix(&d, r, q).unwrap(), *cx.differential(r, q));
        }
        assert_eq!(cx.differential(-1, 3).shape(), (2, 0));
    }
}
