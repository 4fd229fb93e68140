//! Exact sparse integer linear algebra: Hermite and Smith normal forms,
//! lattice membership, sums, saturation and quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse integer vector stored as `(column, value)` pairs sorted by column,
/// with no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Unit vector at `col`.
    pub fn unit(col: usize) -> Self {
        SparseVec { entries: vec![(col, BigInt::one())] }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, BigInt)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, v) in pairs {
            *acc.entry(c).or_insert_with(BigInt::zero) += v;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(dense: &[T]) -> Self {
        SparseVec {
            entries: dense
                .iter()
                .enumerate()
                .map(|(c, v)| (c, v.clone().into()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); dim];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.entries.iter().map(|(c, v)| (*c, v))
    }

    pub fn get(&self, col: usize) -> BigInt {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// First nonzero column and its value.
    pub fn leading(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    /// Largest column index present, if any.
    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn scale(&self, k: &BigInt) -> SparseVec {
        if k.is_zero() {
            return SparseVec::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(c, v)| (*c, v * k)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(c, v)| (*c, -v)).collect() }
    }

    /// Returns `a*self + b*other`.
    pub fn combine(&self, a: &BigInt, other: &SparseVec, b: &BigInt) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while i < x.len() || j < y.len() {
            let take = match (x.get(i), y.get(j)) {
                (Some((cx, _)), Some((cy, _))) => cx.cmp(cy),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            let (c, v) = match take {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (x[i - 1].0, a * &x[i - 1].1)
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (y[j - 1].0, b * &y[j - 1].1)
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (x[i - 1].0, a * &x[i - 1].1 + b * &y[j - 1].1)
                }
            };
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.combine(&BigInt::one(), other, &BigInt::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.combine(&BigInt::one(), other, &-BigInt::one())
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, k: &BigInt, other: &SparseVec) {
        if k.is_zero() || other.is_zero() {
            return;
        }
        *self = self.combine(&BigInt::one(), other, k);
    }

    pub fn dot(&self, other: &SparseVec) -> BigInt {
        let mut acc = BigInt::zero();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ci, cj) = (self.entries[i].0, other.entries[j].0);
            if ci == cj {
                acc += &self.entries[i].1 * &other.entries[j].1;
                i += 1;
                j += 1;
            } else if ci < cj {
                i += 1;
            } else {
                j += 1;
            }
        }
        acc
    }

    /// Gcd of all entries (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.entries.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v))
    }

    /// Divides every entry exactly by `k`; errors if some entry is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Result<SparseVec> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (c, v) in &self.entries {
            let (q, r) = v.div_rem(k);
            if !r.is_zero() {
                return Err(Error::Integrality(format!("entry {v} at column {c} not divisible by {k}")));
            }
            out.push((*c, q));
        }
        Ok(SparseVec { entries: out })
    }

    /// Keeps the entries whose column satisfies `keep`, relabelled by `map`.
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, map: F) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(c, v)| map(*c).map(|d| (d, v.clone()))))
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (c, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}:{v}")?;
        }
        write!(f, "}}")
    }
}

/// Sparse matrix over the integers, stored by rows. Acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![SparseVec::zero(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Result<Self> {
        if data.iter().any(|r| r.max_col().is_some_and(|c| c >= cols)) {
            return Err(Error::Domain("row entry outside column range".into()));
        }
        Ok(ExactMatrix { rows: data.len(), cols, data })
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(dense: &[Vec<T>]) -> Result<Self> {
        let cols = dense.first().map_or(0, |r| r.len());
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged dense matrix".into()));
        }
        Ok(ExactMatrix { rows: dense.len(), cols, data: dense.iter().map(|r| SparseVec::from_dense(r)).collect() })
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triples<I: IntoIterator<Item = (usize, usize, BigInt)>>(rows: usize, cols: usize, triples: I) -> Result<Self> {
        let mut per_row: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); rows];
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::Domain(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            per_row[r].push((c, v));
        }
        Ok(ExactMatrix { rows, cols, data: per_row.into_iter().map(SparseVec::from_pairs).collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut per_row: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                per_row[c].push((r, v.clone()));
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data: per_row.into_iter().map(|p| SparseVec { entries: p }).collect() }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Domain(format!(
                "dimension mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::zero();
                for (k, v) in row.iter() {
                    acc.add_scaled(v, &other.data[k]);
                }
                acc
            })
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.combine(&BigInt::one(), other, &BigInt::one())
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.combine(&BigInt::one(), other, &-BigInt::one())
    }

    fn combine(&self, a: &BigInt, other: &ExactMatrix, b: &BigInt) -> Result<ExactMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Domain("dimension mismatch in matrix sum".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x.combine(a, y, b)).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: &BigInt) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(k)).collect() }
    }

    /// Commutator `self*other - other*self`.
    pub fn bracket(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Kronecker product; row/column index of `(i, j)` is `i * other.dim + j`.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for a in &self.data {
            for b in &other.data {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (ca, va) in a.iter() {
                    for (cb, vb) in b.iter() {
                        entries.push((ca * other.cols + cb, va * vb));
                    }
                }
                data.push(SparseVec { entries });
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(self.data.iter().enumerate().filter_map(|(r, row)| {
            let x = row.dot(v);
            (!x.is_zero()).then_some((r, x))
        }))
    }

    pub fn pow(&self, m: u32) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::Domain("power of a non-square matrix".into()));
        }
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..m {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Divided power `X^m / m!`. Every entry must divide exactly.
    pub fn divided_power(&self, m: u32) -> Result<ExactMatrix> {
        let p = self.pow(m)?;
        let fact = factorial(m);
        let data = p
            .data
            .iter()
            .map(|r| r.div_exact(&fact))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Integrality(format!("divided power of order {m}: {e}")))?;
        Ok(ExactMatrix { rows: p.rows, cols: p.cols, data })
    }
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Incremental row-echelon basis used to build Hermite normal forms.
///
/// Rows are kept keyed by pivot column with positive pivots. Entries above
/// pivots are only reduced when the basis is frozen into a [`Lattice`].
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: BTreeMap::new() }
    }

    pub fn from_lattice(l: &Lattice) -> Self {
        let mut b = EchelonBasis::new(l.ambient_dim);
        for r in &l.basis {
            let (p, _) = r.leading().expect("lattice rows are nonzero");
            b.rows.insert(p, r.clone());
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is a member.
    /// Stops at the first column where exact reduction is impossible.
    fn remainder(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        loop {
            let (p, val) = match r.leading() {
                Some((p, val)) => (p, val.clone()),
                None => return r,
            };
            let row = match self.rows.get(&p) {
                Some(row) => row,
                None => return r,
            };
            let piv = row.leading().unwrap().1;
            let (q, rem) = val.div_rem(piv);
            if !rem.is_zero() {
                return r;
            }
            r.add_scaled(&-q, row);
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.remainder(v).is_zero()
    }

    /// Adds `v` to the generating set. Returns `true` if the lattice grew.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        if v.max_col().is_some_and(|c| c >= self.dim) {
            return Err(Error::Domain(format!("vector exceeds ambient dimension {}", self.dim)));
        }
        let mut r = self.remainder(v);
        if r.is_zero() {
            return Ok(false);
        }
        loop {
            let (p, rp) = match r.leading() {
                Some((p, x)) => (p, x.clone()),
                None => return Ok(true),
            };
            let Some(row) = self.rows.get(&p) else {
                let r = if rp.is_negative() { r.neg() } else { r };
                self.rows.insert(p, r);
                return Ok(true);
            };
            let bp = row.leading().unwrap().1.clone();
            let (q, rem) = rp.div_rem(&bp);
            if rem.is_zero() {
                r.add_scaled(&-q, row);
                continue;
            }
            let eg = rp.extended_gcd(&bp);
            let g = eg.gcd;
            let mut new_row = r.combine(&eg.x, row, &eg.y);
            if new_row.leading().unwrap().1.is_negative() {
                new_row = new_row.neg();
            }
            let next = r.combine(&(&bp / &g), row, &-(&rp / &g));
            self.rows.insert(p, new_row);
            r = next;
        }
    }

    /// Freezes into the canonical Hermite normal form.
    pub fn to_lattice(&self) -> Lattice {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows: BTreeMap<usize, SparseVec> = self.rows.clone();
        // Reduce from the bottom row upwards so that each row used as a
        // reducer is already in final form.
        for (idx, &p) in pivots.iter().enumerate().rev() {
            let mut row = rows.remove(&p).unwrap();
            for &q in &pivots[idx + 1..] {
                let x = row.get(q);
                if x.is_zero() {
                    continue;
                }
                let reducer = &rows[&q];
                let piv = reducer.leading().unwrap().1;
                let k = x.div_floor(piv);
                if !k.is_zero() {
                    row.add_scaled(&-k, reducer);
                }
            }
            rows.insert(p, row);
        }
        Lattice { ambient_dim: self.dim, basis: rows.into_values().collect() }
    }
}

/// Sublattice of `Z^N` with its row-style Hermite normal form basis:
/// positive pivots, strictly increasing pivot columns, and entries above each
/// pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: (0..ambient_dim).map(SparseVec::unit).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.leading().unwrap().0).collect()
    }

    /// Basis rows as dense integer arrays.
    pub fn basis_dense(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|r| r.to_dense(self.ambient_dim)).collect()
    }

    pub fn member(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<BigInt>> {
        let mut r = v.clone();
        let mut coords = vec![BigInt::zero(); self.basis.len()];
        for (i, row) in self.basis.iter().enumerate() {
            let (p, piv) = row.leading().unwrap();
            if let Some((lead, _)) = r.leading() {
                if lead < p {
                    return None;
                }
            } else {
                break;
            }
            let x = r.get(p);
            if x.is_zero() {
                continue;
            }
            let (q, rem) = x.div_rem(piv);
            if !rem.is_zero() {
                return None;
            }
            r.add_scaled(&-&q, row);
            coords[i] = q;
        }
        r.is_zero().then_some(coords)
    }

    /// Vector with the given coordinates in the basis.
    pub fn combination(&self, coords: &[BigInt]) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (c, row) in coords.iter().zip(&self.basis) {
            acc.add_scaled(c, row);
        }
        acc
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Domain("lattices live in different ambients".into()));
        }
        let mut b = EchelonBasis::from_lattice(self);
        for v in &other.basis {
            b.insert(v)?;
        }
        Ok(b.to_lattice())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        self.ambient_dim == other.ambient_dim && other.basis.iter().all(|v| self.member(v))
    }

    /// `{v in Q-span(L)} ∩ Z^N`.
    pub fn saturate(&self) -> Lattice {
        // The rational span is the kernel of the orthogonal complement.
        let perp = kernel_of_rows(self.ambient_dim, &self.basis);
        let perp_rows: Vec<SparseVec> = perp.basis.clone();
        let sat = kernel_of_rows(self.ambient_dim, &perp_rows);
        sat
    }

    /// Elementary divisors of `self` inside `sup` (nonzero ones, ascending),
    /// followed by nothing for the free part. `self ⊆ sup` is required.
    pub fn quotient_divisors(&self, sup: &Lattice) -> Result<Vec<BigInt>> {
        let coords = self.coordinates_in(sup)?;
        Ok(snf_divisors_dense(&coords, sup.rank()))
    }

    /// Rows of `self`'s basis written in `sup`'s basis coordinates.
    pub fn coordinates_in(&self, sup: &Lattice) -> Result<Vec<Vec<BigInt>>> {
        if self.ambient_dim != sup.ambient_dim {
            return Err(Error::Domain("lattices live in different ambients".into()));
        }
        self.basis
            .iter()
            .map(|v| sup.coordinates(v).ok_or_else(|| Error::Domain("sublattice not contained in superlattice".into())))
            .collect()
    }

    /// Restriction to the given columns, which must contain the support of every
    /// basis row. Columns are renumbered in the given order.
    pub fn project_columns(&self, cols: &[usize]) -> Result<Lattice> {
        let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let rows: Vec<SparseVec> = self.basis.iter().map(|r| r.remap(|c| index.get(&c).copied())).collect();
        hnf(cols.len(), &rows)
    }
}

/// Hermite normal form of the lattice generated by `gens` inside `Z^dim`.
pub fn hnf(dim: usize, gens: &[SparseVec]) -> Result<Lattice> {
    let mut b = EchelonBasis::new(dim);
    for g in gens {
        b.insert(g)?;
    }
    Ok(b.to_lattice())
}

/// Hermite normal form of dense generators, checking that lengths agree.
pub fn hnf_dense<T: Into<BigInt> + Clone>(dim: usize, gens: &[Vec<T>]) -> Result<Lattice> {
    if let Some(g) = gens.iter().find(|g| g.len() != dim) {
        return Err(Error::Domain(format!("generator of length {} in ambient of dimension {dim}", g.len())));
    }
    let rows: Vec<SparseVec> = gens.iter().map(|g| SparseVec::from_dense(g)).collect();
    hnf(dim, &rows)
}

/// Lattice of integer row vectors `c` with `sum_i c_i rows[i] = 0`, returned
/// inside `Z^{rows.len()}`.
pub fn left_kernel(rows: &[SparseVec], cols: usize) -> Lattice {
    let k = rows.len();
    let mut b = EchelonBasis::new(cols + k);
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.add_scaled(&BigInt::one(), &SparseVec::unit(cols + i));
        b.insert(&aug).expect("augmented row fits ambient");
    }
    let full = b.to_lattice();
    let kernel_rows: Vec<SparseVec> = full
        .basis
        .iter()
        .filter(|r| r.leading().unwrap().0 >= cols)
        .map(|r| r.remap(|c| c.checked_sub(cols)))
        .collect();
    hnf(k, &kernel_rows).expect("kernel rows fit")
}

/// Integer vectors orthogonal to every row: `{x : rows·x = 0}`.
fn kernel_of_rows(dim: usize, rows: &[SparseVec]) -> Lattice {
    // Transpose: columns of the row matrix become generator rows.
    let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); dim];
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r.iter() {
            cols[c].push((i, v.clone()));
        }
    }
    let t: Vec<SparseVec> = cols.into_iter().map(SparseVec::from_pairs).collect();
    left_kernel(&t, rows.len())
}

/// Nonzero elementary divisors of an integer matrix, ascending with
/// `d_1 | d_2 | ...`. Their count is the rank.
pub fn snf_divisors(m: &ExactMatrix) -> Vec<BigInt> {
    snf_divisors_dense(&m.to_dense(), m.cols())
}

fn snf_divisors_dense(rows: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < nrows && t < cols {
        // Pick the smallest nonzero entry in the remaining block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    done = false;
                    if a[i][t].abs() < a[t][t].abs() {
                        a.swap(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                if !a[t][j].is_zero() {
                    done = false;
                    if a[t][j].abs() < a[t][t].abs() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
            }
            if !done {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let mut fix = None;
            'scan: for i in t + 1..nrows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

/// Rank over `F_p` (`p = 0` meaning `Q`) of a matrix with the given nonzero
/// elementary divisors.
pub fn rank_mod_p(divisors: &[BigInt], p: u64) -> usize {
    if p == 0 {
        return divisors.len();
    }
    let p = BigInt::from(p);
    divisors.iter().filter(|d| !(*d % &p).is_zero()).count()
}

/// Dimension over `F_p` (or `Q` for `p = 0`) of `Z^n / L` where `L` has the
/// given nonzero elementary divisors.
pub fn quotient_dim_mod_p(n: usize, divisors: &[BigInt], p: u64) -> usize {
    n - rank_mod_p(divisors, p)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a base-change characteristic: zero (rationals) or a prime.
pub fn check_characteristic(p: u64) -> Result<()> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is neither 0 nor prime")))
    }
}

/// Unimodular data for the quotient `sup / sub` with `sub ⊆ sup`.
///
/// `projection` has one row per quotient coordinate: the quotient coordinate
/// of a vector with `sup`-coordinates `x` is `projection · x`. When the
/// quotient is free the kernel of this map is exactly `sub`; `lifts[k]` (in
/// `sup`-coordinates) maps to the `k`-th unit vector.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub projection: Vec<SparseVec>,
    pub lifts: Vec<SparseVec>,
    pub divisors: Vec<BigInt>,
}

pub fn quotient_map(sub: &Lattice, sup: &Lattice) -> Result<QuotientMap> {
    let coords = sub.coordinates_in(sup)?;
    let r = sup.rank();
    let s = sub.rank();
    let divisors = snf_divisors_dense(&coords, r);
    // Rows of [K^T | I]: their echelon form exposes a unimodular U with U K^T
    // in echelon shape; the trailing rows of U span the orthogonal complement.
    let mut b = EchelonBasis::new(s + r);
    for i in 0..r {
        let mut row: Vec<(usize, BigInt)> = coords.iter().enumerate().map(|(k, c)| (k, c[i].clone())).collect();
        row.push((s + i, BigInt::one()));
        b.insert(&SparseVec::from_pairs(row))?;
    }
    let full = b.to_lattice();
    let projection: Vec<SparseVec> = full
        .basis
        .iter()
        .filter(|row| row.leading().unwrap().0 >= s)
        .map(|row| row.remap(|c| c.checked_sub(s)))
        .collect();
    // Lifts: solve projection · x = e_k using the unimodular completion.
    let head: Vec<SparseVec> = full
        .basis
        .iter()
        .filter(|row| row.leading().unwrap().0 < s)
        .map(|row| row.remap(|c| c.checked_sub(s)))
        .collect();
    let mut u_rows = head.clone();
    u_rows.extend(projection.iter().cloned());
    let inv = invert_unimodular(&u_rows, r)?;
    // Columns of U^{-1} belonging to the projection rows are the lifts.
    let lifts = (0..projection.len())
        .map(|k| {
            let col = head.len() + k;
            SparseVec::from_pairs(inv.iter().enumerate().map(|(i, row)| (i, row.get(col))))
        })
        .collect();
    Ok(QuotientMap { projection, lifts, divisors })
}

fn invert_unimodular(rows: &[SparseVec], n: usize) -> Result<Vec<SparseVec>> {
    let mut b = EchelonBasis::new(2 * n);
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.add_scaled(&BigInt::one(), &SparseVec::unit(n + i));
        b.insert(&aug)?;
    }
    let l = b.to_lattice();
    if l.rank() != n || l.basis.iter().enumerate().any(|(i, r)| r.leading() != Some((i, &BigInt::one()))) {
        return Err(Error::Internal("transform matrix is not unimodular".into()));
    }
    // [U | I] reduces to [I | U^{-1}].
    Ok(l.basis.iter().map(|r| r.remap(|c| c.checked_sub(n))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_of_coprime_generators_is_identity() {
        let l = hnf(2, &[v(&[2, 0]), v(&[0, 3]), v(&[1, 1])]).unwrap();
        assert_eq!(l, Lattice::full(2));
    }

    #[test]
    fn hnf_keeps_diagonal_basis() {
        let l = hnf(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(l.basis(), &[v(&[2, 0]), v(&[0, 2])]);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let l = hnf(2, &[v(&[2, 5]), v(&[0, 3])]).unwrap();
        assert_eq!(l.basis(), &[v(&[2, 2]), v(&[0, 3])]);
    }

    #[test]
    fn empty_generators_give_zero_lattice() {
        let l = hnf(3, &[]).unwrap();
        assert_eq!(l.rank(), 0);
        assert_eq!(l.ambient_dim(), 3);
    }

    #[test]
    fn ragged_generators_are_rejected() {
        assert!(hnf_dense(2, &[vec![1, 2], vec![1]]).is_err());
    }

    #[test]
    fn smith_divisors_small_cases() {
        let d = |m: Vec<Vec<i64>>| snf_divisors(&ExactMatrix::from_dense(&m).unwrap());
        assert_eq!(d(vec![vec![2, 0], vec![0, 4]]), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(d(vec![vec![1, 1], vec![1, 1]]), vec![BigInt::from(1)]);
        assert_eq!(d(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![BigInt::from(1); 3]);
        assert_eq!(d(vec![vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn lattice_operations() {
        let l = hnf(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert!(!l.member(&v(&[1, 1])));
        assert!(l.member(&v(&[4, -2])));
        let s = hnf(2, &[v(&[2, 0])]).unwrap().saturate();
        assert_eq!(s.basis(), &[v(&[1, 0])]);
        let sub = hnf(2, &[v(&[2, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(sub.quotient_divisors(&Lattice::full(2)).unwrap(), vec![BigInt::from(1), BigInt::from(2)]);
        assert!(Lattice::full(2).quotient_divisors(&sub).is_err());
    }

    #[test]
    fn divided_power_checks_integrality() {
        let e = ExactMatrix::from_dense(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(e.divided_power(2).unwrap().is_zero());
        assert_eq!(e.divided_power(1).unwrap(), e);
        let j = ExactMatrix::from_dense(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        assert!(matches!(j.divided_power(2), Err(Error::Integrality(_))));
    }

    #[test]
    fn quotient_map_projects_out_the_sublattice() {
        let sup = Lattice::full(3);
        let sub = hnf(3, &[v(&[1, 1, 0])]).unwrap();
        let q = quotient_map(&sub, &sup).unwrap();
        assert_eq!(q.projection.len(), 2);
        let k = v(&[1, 1, 0]);
        assert!(q.projection.iter().all(|p| p.dot(&k).is_zero()));
        for (i, lift) in q.lifts.iter().enumerate() {
            for (j, p) in q.projection.iter().enumerate() {
                assert_eq!(p.dot(lift), BigInt::from((i == j) as i64));
            }
        }
    }

    #[test]
    fn left_kernel_of_dependent_rows() {
        let k = left_kernel(&[v(&[1, 2]), v(&[2, 4]), v(&[0, 1])], 2);
        assert_eq!(k.basis(), &[v(&[2, -1, 0])]);
    }
}
