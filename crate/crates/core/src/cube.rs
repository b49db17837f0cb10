//! The cube of smoothings: vertices `alpha in {0,1}^n`, the cycles of each
//! smoothing, and the signed cube edges between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::pd::LinkDiagram;

/// Hard limit on the number of crossings. Bit vectors are stored in a `u32`;
/// beyond about 16 crossings the complex no longer fits in memory anyway.
pub const MAX_CROSSINGS: usize = 24;

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// A cube vertex. Coordinate 0 (the first crossing) is the most significant
/// bit, so comparing `bits` orders vertices as binary strings `a1 a2 ... an`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u32,
    len: u8,
}

impl Vertex {
    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len <= MAX_CROSSINGS);
        assert!(len == 32 || bits >> len == 0, "bits outside the cube");
        Vertex {
            bits,
            len: len as u8,
        }
    }

    pub fn zero(len: usize) -> Self {
        Vertex::new(0, len)
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s.len() > MAX_CROSSINGS {
            return None;
        }
        let mut bits = 0;
        for ch in s.chars() {
            bits = (bits << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return None,
                };
        }
        Some(Vertex::new(bits, s.len()))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn mask(&self, coordinate: usize) -> u32 {
        1 << (self.len() - 1 - coordinate)
    }

    pub fn get(&self, coordinate: usize) -> bool {
        self.bits & self.mask(coordinate) != 0
    }

    pub fn with(&self, coordinate: usize, value: bool) -> Vertex {
        let m = self.mask(coordinate);
        let bits = if value { self.bits | m } else { self.bits & !m };
        Vertex { bits, len: self.len }
    }

    /// `l(alpha)`: the number of 1-smoothings.
    pub fn height(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.len() {
            f.write_str(if self.get(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The smoothing `S_alpha`: its cycles as sets of edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingState {
    pub alpha: Vertex,
    /// Cycles ordered by their minimum label; labels within a cycle ascend.
    pub cycles: Vec<Vec<u32>>,
    /// Cycle index for each entry of `LinkDiagram::labels()`.
    cycle_of: Vec<usize>,
}

impl SmoothingState {
    pub fn height(&self) -> usize {
        self.alpha.height()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Each cycle is named by its smallest edge label.
    pub fn cycle_labels(&self) -> Vec<u32> {
        self.cycles.iter().map(|c| c[0]).collect()
    }

    /// Cycle containing the edge with the given dense label index.
    pub fn cycle_at(&self, label_index: usize) -> usize {
        self.cycle_of[label_index]
    }
}

/// Resolves every crossing of `d` according to `alpha`. The 0-smoothing of
/// `X[i,j,k,l]` joins `{i,l}` and `{j,k}`; the 1-smoothing joins `{i,j}` and
/// `{k,l}`.
pub fn smoothing_cycles(d: &LinkDiagram, alpha: &Vertex) -> Result<SmoothingState> {
    if alpha.len() != d.crossing_count() {
        return Err(Error::LengthMismatch {
            expected: d.crossing_count(),
            got: alpha.len(),
        });
    }
    let idx = |label: u32| d.label_index(label).unwrap();
    let mut uf = UnionFind::new(d.edge_count());
    for (n, c) in d.crossings().iter().enumerate() {
        if alpha.get(n) {
            uf.union(idx(c.i), idx(c.j));
            uf.union(idx(c.k), idx(c.l));
        } else {
            uf.union(idx(c.i), idx(c.l));
            uf.union(idx(c.j), idx(c.k));
        }
    }
    // Labels are sorted, so the first label seen for a root is its minimum
    // and roots are discovered in order of their cycle labels.
    let mut root_to_cycle = vec![usize::MAX; d.edge_count()];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut cycle_of = vec![0; d.edge_count()];
    for (n, &label) in d.labels().iter().enumerate() {
        let root = uf.find(n);
        if root_to_cycle[root] == usize::MAX {
            root_to_cycle[root] = cycles.len();
            cycles.push(Vec::new());
        }
        let c = root_to_cycle[root];
        cycles[c].push(label);
        cycle_of[n] = c;
    }
    Ok(SmoothingState {
        alpha: *alpha,
        cycles,
        cycle_of,
    })
}

/// A directed cube edge `xi`: coordinate `coordinate` changes from 0 to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeEdge {
    pub coordinate: usize,
    pub source: Vertex,
    pub target: Vertex,
    /// `(-1)^(number of 1s before the star)`.
    pub sign: i32,
}

impl CubeEdge {
    pub fn new(source: Vertex, coordinate: usize) -> Self {
        assert!(!source.get(coordinate), "edge must start at a 0 coordinate");
        let ones_before = (0..coordinate).filter(|&c| source.get(c)).count();
        CubeEdge {
            coordinate,
            source,
            target: source.with(coordinate, true),
            sign: if ones_before % 2 == 0 { 1 } else { -1 },
        }
    }

    /// `|xi| = l(source)`.
    pub fn weight(&self) -> usize {
        self.source.height()
    }
}

impl fmt::Display for CubeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.source.len() {
            if c == self.coordinate {
                f.write_str("*")?;
            } else {
                f.write_str(if self.source.get(c) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// All edges leaving `alpha`, one per 0-coordinate, in coordinate order.
pub fn cube_edges_from(alpha: &Vertex) -> Vec<CubeEdge> {
    (0..alpha.len())
        .filter(|&c| !alpha.get(c))
        .map(|c| CubeEdge::new(*alpha, c))
        .collect()
}

/// What a cube edge does to the cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surgery {
    /// Source cycles `a < b` merge into target cycle `into`.
    Merge { a: usize, b: usize, into: usize },
    /// Source cycle `from` splits into target cycles `a < b`.
    Split { from: usize, a: usize, b: usize },
}

/// Correspondence between the cycles of the two ends of a cube edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub surgery: Surgery,
    /// For every source cycle untouched by the edge, its target cycle index.
    /// Entries for merging or splitting cycles are `usize::MAX`.
    pub carried: Vec<usize>,
}

/// Cycles are identified by edge sets, so an untouched cycle keeps its minimum
/// label and is found in the target by that label.
pub fn transition(
    d: &LinkDiagram,
    edge: &CubeEdge,
    source: &SmoothingState,
    target: &SmoothingState,
) -> Transition {
    let c = d.crossings()[edge.coordinate];
    let idx = |label: u32| d.label_index(label).unwrap();
    // 0-smoothing arcs {i,l}, {j,k}; 1-smoothing arcs {i,j}, {k,l}.
    let s1 = source.cycle_at(idx(c.i));
    let s2 = source.cycle_at(idx(c.j));
    let t1 = target.cycle_at(idx(c.i));
    let t2 = target.cycle_at(idx(c.k));

    let surgery = if s1 != s2 {
        debug_assert_eq!(t1, t2);
        Surgery::Merge {
            a: s1.min(s2),
            b: s1.max(s2),
            into: t1,
        }
    } else {
        debug_assert_ne!(t1, t2);
        Surgery::Split {
            from: s1,
            a: t1.min(t2),
            b: t1.max(t2),
        }
    };
    let carried = source
        .cycles
        .iter()
        .enumerate()
        .map(|(n, cycle)| {
            if n == s1 || n == s2 {
                usize::MAX
            } else {
                target.cycle_at(idx(cycle[0]))
            }
        })
        .collect();
    Transition { surgery, carried }
}

/// All `2^n` smoothings, indexed by `Vertex::bits`.
pub fn all_smoothings(d: &LinkDiagram) -> Result<Vec<SmoothingState>> {
    let n = d.crossing_count();
    if n > MAX_CROSSINGS {
        return Err(Error::TooManyCrossings(n));
    }
    (0..1u32 << n)
        .map(|bits| smoothing_cycles(d, &Vertex::new(bits, n)))
        .collect()
}
