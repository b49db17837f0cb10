//! Exact ranks and homology, independent of floating point.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::complex::KhovanovComplex;
use crate::cube::cube_edges_from;
use crate::error::{Error, Result};
use crate::sparse::SparseIntMatrix;

/// Integer arithmetic used by the sparse eliminator. Operations return
/// `None` on overflow so the caller can restart with a wider type.
trait ExactInt: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn abs(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

type SparseRow<T> = Vec<(usize, T)>;

/// `b*v - a*p` for sparse rows sorted by column.
fn combine<T: ExactInt>(b: &T, v: &SparseRow<T>, a: &T, p: &SparseRow<T>) -> Option<SparseRow<T>> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut x, mut y) = (0, 0);
    while x < v.len() || y < p.len() {
        let cx = v.get(x).map_or(usize::MAX, |e| e.0);
        let cy = p.get(y).map_or(usize::MAX, |e| e.0);
        let (col, val) = if cx < cy {
            x += 1;
            (cx, b.mul(&v[x - 1].1)?)
        } else if cy < cx {
            y += 1;
            (cy, T::from_i64(0).sub(&a.mul(&p[y - 1].1)?)?)
        } else {
            x += 1;
            y += 1;
            (cx, b.mul(&v[x - 1].1)?.sub(&a.mul(&p[y - 1].1)?)?)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    Some(out)
}

fn remove_content<T: ExactInt>(row: &mut SparseRow<T>) {
    let mut g = match row.first() {
        Some(e) => e.1.abs(),
        None => return,
    };
    for e in row.iter().skip(1) {
        if g.is_one() {
            return;
        }
        g = g.gcd(&e.1);
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            e.1 = e.1.div_exact(&g);
        }
    }
}

/// Fraction-free sparse row echelon; `None` if `T` overflowed.
fn sparse_rank_with<T: ExactInt>(m: &SparseIntMatrix) -> Option<usize> {
    let mut pivots: HashMap<usize, SparseRow<T>> = HashMap::new();
    for row in m.row_lists() {
        let mut v: SparseRow<T> = row.into_iter().map(|(c, x)| (c, T::from_i64(x))).collect();
        while let Some((lead, a)) = v.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, v);
                break;
            };
            let b = p[0].1.clone();
            let g = a.gcd(&b);
            v = combine(&b.div_exact(&g), &v, &a.div_exact(&g), p)?;
            remove_content(&mut v);
        }
    }
    Some(pivots.len())
}

/// Rank over the rationals of an integer matrix.
pub fn exact_rank(m: &SparseIntMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    // eliminate along the shorter side
    let work;
    let m = if m.rows() > m.cols() {
        work = m.transpose();
        &work
    } else {
        m
    };
    sparse_rank_with::<i128>(m).unwrap_or_else(|| {
        sparse_rank_with::<BigInt>(m).expect("arbitrary precision cannot overflow")
    })
}

/// Rank by dense Bareiss elimination over arbitrary-precision integers.
/// Slower than [`exact_rank`]; kept as an independent second route.
pub fn bareiss_rank(dense: &[Vec<i64>]) -> usize {
    let rows = dense.len();
    let cols = dense.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = dense
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !Zero::is_zero(&a[r][col])) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// `dim C^{r,q} - rank d^{r,q} - rank d^{r-1,q}`.
pub fn homology_rank(cx: &KhovanovComplex, r: i32, q: i32) -> usize {
    let dim = cx.dim(r, q);
    if dim == 0 {
        return 0;
    }
    dim - exact_rank(&cx.differential(r, q)) - exact_rank(&cx.differential(r - 1, q))
}

/// Homology ranks of every nonempty cell, each differential ranked once.
pub fn homology_ranks(cx: &KhovanovComplex) -> BTreeMap<(i32, i32), usize> {
    let ranks: BTreeMap<(i32, i32), usize> = cx
        .differentials()
        .par_iter()
        .map(|(&k, m)| (k, exact_rank(m)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let rank = |k: (i32, i32)| ranks.get(&k).copied().unwrap_or(0);
    cx.basis()
        .cells()
        .map(|((r, q), cell)| ((r, q), cell.len() - rank((r, q)) - rank((r - 1, q))))
        .collect()
}

/// Checks `d^{r+1,q} d^{r,q} = 0` for a family of graded differentials.
pub fn verify_square_zero(differentials: &BTreeMap<(i32, i32), SparseIntMatrix>) -> Result<()> {
    let bad = differentials.par_iter().find_map_first(|(&(r, q), d)| {
        let next = differentials.get(&(r + 1, q))?;
        if next.cols() != d.rows() {
            return Some(Error::ComplexViolation {
                r,
                q,
                reason: format!("d^{{{},{q}}} does not compose with d^{{{r},{q}}}", r + 1),
            });
        }
        let dd = next.mul(d);
        (!dd.is_zero()).then(|| Error::ComplexViolation {
            r,
            q,
            reason: format!("d^{{{},{q}}} d^{{{r},{q}}} has {} nonzero entries", r + 1, dd.nnz()),
        })
    });
    bad.map_or(Ok(()), Err)
}

/// Checks the complex is a graded cochain complex: `d o d = 0`, every entry
/// in {-1, 0, 1}, every edge map preserves `q`, and chain dimensions and
/// homology ranks have the same graded Euler characteristic.
pub fn verify_complex(cx: &KhovanovComplex) -> Result<()> {
    verify_square_zero(cx.differentials())?;

    for (&(r, q), d) in cx.differentials() {
        if let Some(&(_, _, v)) = d.entries().iter().find(|e| e.2.abs() > 1) {
            return Err(Error::ComplexViolation {
                r,
                q,
                reason: format!("differential entry {v} outside {{-1, 0, 1}}"),
            });
        }
    }

    let degree_error = cx.basis().cells().par_bridge().find_map_any(|((r, q), cell)| {
        for x in cell {
            for edge in cube_edges_from(&x.alpha) {
                for (y, _) in cx.edge_differential(&edge, x) {
                    if y.q != q || y.r != r + 1 {
                        return Some(Error::ComplexViolation {
                            r,
                            q,
                            reason: format!(
                                "edge {edge} sends {} to bidegree ({}, {})",
                                cx.describe(x),
                                y.r,
                                y.q
                            ),
                        });
                    }
                }
            }
        }
        None
    });
    if let Some(e) = degree_error {
        return Err(e);
    }

    let homology = homology_ranks(cx);
    let mut chi: BTreeMap<i32, (i64, i64)> = BTreeMap::new();
    for ((r, q), cell) in cx.basis().cells() {
        let s = if r.rem_euclid(2) == 0 { 1 } else { -1 };
        let e = chi.entry(q).or_default();
        e.0 += s * cell.len() as i64;
        e.1 += s * homology[&(r, q)] as i64;
    }
    if let Some((&q, &(c, h))) = chi.iter().find(|(_, (c, h))| c != h) {
        return Err(Error::ComplexViolation {
            r: 0,
            q,
            reason: format!("Euler characteristic {c} of chains differs from {h} of homology"),
        });
    }
    Ok(())
}
