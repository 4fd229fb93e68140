//! Chevalley bases in the defining representation and their actions on
//! tensor products of exterior powers, including divided powers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlat::{ExactMatrix, SparseVec};
use crate::rootdata::{Family, Root, RootDatum, Weight};

/// Generator of the Lie algebra: raising or lowering root vector (index into
/// the datum's positive roots) or simple coroot (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    E(usize),
    F(usize),
    H(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
            Generator::H(i) => write!(f, "h{i}"),
        }
    }
}

/// Chevalley involution on generators: `e ↦ −f`, `f ↦ −e`, `h ↦ −h`.
pub fn chevalley_involution_relabel(g: Generator) -> (Generator, i64) {
    match g {
        Generator::E(i) => (Generator::F(i), -1),
        Generator::F(i) => (Generator::E(i), -1),
        Generator::H(i) => (Generator::H(i), -1),
    }
}

/// Nonzero entries `(row, col, value)` (0-based) of the raising root vector.
///
/// Type A uses the matrix unit `E_{i,j}`. Type C adds the partner unit at
/// `(2m+1−j, 2m+1−i)` with the sign that keeps the skew form
/// `⟨e_a, e_{2m+1−a}⟩ = 1` (`a ≤ m`) infinitesimally invariant.
pub fn root_vector_entries(datum: &RootDatum, r: &Root) -> Vec<(usize, usize, i64)> {
    let (i, j) = (r.i, r.j);
    match datum.family() {
        Family::A => vec![(i - 1, j - 1, 1)],
        Family::C => {
            let n = datum.defining_dim();
            let m = datum.small_rank();
            let (pi, pj) = (n + 1 - j, n + 1 - i);
            if (pi, pj) == (i, j) {
                vec![(i - 1, j - 1, 1)]
            } else {
                let c = if j <= m { -1 } else { 1 };
                vec![(i - 1, j - 1, 1), (pi - 1, pj - 1, c)]
            }
        }
    }
}

/// Matrices of a Chevalley basis in the defining representation.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    datum: RootDatum,
    pub e: Vec<ExactMatrix>,
    pub f: Vec<ExactMatrix>,
    /// Simple coroots `h_k = [e_{α_k}, f_{α_k}]`.
    pub h: Vec<ExactMatrix>,
    /// `[e_α, e_β] = c e_{α+β}` keyed by positive-root indices.
    pub structure_sign_table: BTreeMap<(usize, usize), (usize, i64)>,
}

fn matrix_coefficient(target: &ExactMatrix, basis_elem: &ExactMatrix) -> Option<BigInt> {
    // Returns c with target = c * basis_elem, if such c exists.
    let (r, row) = basis_elem.row_vecs().iter().enumerate().find(|(_, row)| !row.is_zero())?;
    let (col, val) = row.leading().unwrap();
    let t = target.get(r, col);
    if (&t % val) != BigInt::zero() {
        return None;
    }
    let c = &t / val;
    (basis_elem.scale(&c) == *target).then_some(c)
}

impl ChevalleyBasis {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        let n = datum.defining_dim();
        let mk = |r: &Root| {
            ExactMatrix::from_triples(
                n,
                n,
                root_vector_entries(datum, r).into_iter().map(|(a, b, v)| (a, b, BigInt::from(v))),
            )
        };
        let e: Vec<ExactMatrix> = datum.positive_roots().iter().map(mk).collect::<Result<_>>()?;
        let f: Vec<ExactMatrix> = e.iter().map(ExactMatrix::transpose).collect();
        let mut h = Vec::new();
        for k in 1..=datum.lie_rank() {
            let idx = datum.root_index(&datum.simple_root(k)).unwrap();
            h.push(e[idx].bracket(&f[idx])?);
        }
        let mut structure_sign_table = BTreeMap::new();
        let roots = datum.positive_roots();
        for a in 0..roots.len() {
            for b in 0..roots.len() {
                let br = e[a].bracket(&e[b])?;
                if br.is_zero() {
                    continue;
                }
                let sum = datum.root_weight(&roots[a]).add(&datum.root_weight(&roots[b]));
                let c = roots
                    .iter()
                    .position(|r| datum.root_weight(r) == sum)
                    .and_then(|g| matrix_coefficient(&br, &e[g]).map(|c| (g, c)))
                    .ok_or_else(|| Error::Internal(format!("bracket of roots {a},{b} is not a root vector")))?;
                let cv = i64::try_from(&c.1).map_err(|_| Error::Internal("structure constant overflow".into()))?;
                structure_sign_table.insert((a, b), (c.0, cv));
            }
        }
        Ok(ChevalleyBasis { datum: datum.clone(), e, f, h, structure_sign_table })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn matrix(&self, g: Generator) -> &ExactMatrix {
        match g {
            Generator::E(i) => &self.e[i],
            Generator::F(i) => &self.f[i],
            Generator::H(k) => &self.h[k - 1],
        }
    }

    /// Component of `[e_β, f_α]` in `n⁻`: `Some((γ, c))` with
    /// `[e_β, f_α] = c f_γ` when `α − β` is a positive root `γ`, else `None`.
    pub fn lower_bracket(&self, beta: usize, alpha: usize) -> Result<Option<(usize, BigInt)>> {
        let roots = self.datum.positive_roots();
        let diff = self.datum.root_weight(&roots[alpha]).sub(&self.datum.root_weight(&roots[beta]));
        let Some(g) = roots.iter().position(|r| self.datum.root_weight(r) == diff) else {
            return Ok(None);
        };
        let br = self.e[beta].bracket(&self.f[alpha])?;
        let c = matrix_coefficient(&br, &self.f[g])
            .ok_or_else(|| Error::Internal(format!("[e_{beta}, f_{alpha}] is not a multiple of f_{g}")))?;
        Ok(Some((g, c)))
    }
}

type FactorTable = Vec<Vec<(usize, i64)>>;

/// Exterior power `Λ^k` of the defining representation with precomputed
/// divided-power actions of every root vector.
#[derive(Debug)]
struct WedgeFactor {
    k: usize,
    labels: Vec<Vec<usize>>,
    weights: Vec<Vec<i64>>,
    /// `tables[g][m-1][label]`: image of `X_g^{(m)}` on a label, where `g`
    /// runs over E-generators then F-generators.
    tables: Vec<Vec<FactorTable>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            if n - s < k - cur.len() {
                break;
            }
            cur.push(s);
            extend(n, k, s + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sorts `v` in place and returns the sign of the sorting permutation, or 0
/// if two entries coincide.
fn sort_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return 0;
        }
    }
    sign
}

impl WedgeFactor {
    fn new(basis: &ChevalleyBasis, k: usize) -> Result<Self> {
        let datum = basis.datum();
        let n = datum.defining_dim();
        if k == 0 || k > n {
            return Err(Error::Domain(format!("wedge degree {k} outside 1..={n}")));
        }
        let labels = combinations(n, k);
        let index: HashMap<Vec<usize>, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let weights = labels
            .iter()
            .map(|l| {
                l.iter().fold(Weight::zero(datum.eps_len()), |acc, &s| acc.add(&datum.basis_weight(s + 1))).eps
            })
            .collect();
        let mut tables = Vec::new();
        for x in basis.e.iter().chain(basis.f.iter()) {
            if !x.mul(x)?.is_zero() {
                return Err(Error::Internal("root vector does not square to zero".into()));
            }
            // Column images: X e_s = Σ value e_row.
            let xt = x.transpose();
            let mut per_m = Vec::new();
            for m in 1..=k {
                let mut table = Vec::with_capacity(labels.len());
                for l in &labels {
                    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                    for pos in combinations(k, m) {
                        expand_positions(l, &pos, 0, &xt, &mut l.clone(), 1, &index, &mut acc);
                    }
                    table.push(acc.into_iter().filter(|(_, v)| *v != 0).collect());
                }
                per_m.push(table);
            }
            tables.push(per_m);
        }
        Ok(WedgeFactor { k, labels, weights, tables })
    }
}

#[allow(clippy::too_many_arguments)]
fn expand_positions(
    label: &[usize],
    positions: &[usize],
    at: usize,
    xt: &ExactMatrix,
    cur: &mut Vec<usize>,
    coeff: i64,
    index: &HashMap<Vec<usize>, usize>,
    acc: &mut BTreeMap<usize, i64>,
) {
    if at == positions.len() {
        let mut sorted = cur.clone();
        let sign = sort_sign(&mut sorted);
        if sign != 0 {
            *acc.entry(index[&sorted]).or_insert(0) += sign * coeff;
        }
        return;
    }
    let p = positions[at];
    let s = label[p];
    for (row, v) in xt.row(s).iter() {
        let v = i64::try_from(v).expect("defining-rep entries are small");
        cur[p] = row;
        expand_positions(label, positions, at + 1, xt, cur, coeff * v, index, acc);
    }
    cur[p] = s;
}

/// Tensor product of exterior powers of the defining representation, with
/// the action of every Chevalley generator and its divided powers.
///
/// Labels are tuples of sorted index sets, one per tensor factor, and are
/// numbered in mixed radix with the first factor most significant.
#[derive(Clone, Debug)]
pub struct Realization {
    basis: Arc<ChevalleyBasis>,
    factors: Vec<Arc<WedgeFactor>>,
    strides: Vec<usize>,
    dim: usize,
}

/// `Λ^k` of the defining representation.
pub fn wedge_realization(datum: &RootDatum, k: usize) -> Result<Realization> {
    let basis = Arc::new(ChevalleyBasis::new(datum)?);
    Realization::from_factors(basis, &[k])
}

/// Tensor product `R1 ⊗ R2`.
pub fn tensor_realization(r1: &Realization, r2: &Realization) -> Result<Realization> {
    if r1.basis.datum() != r2.basis.datum() {
        return Err(Error::Domain("tensor factors belong to different root data".into()));
    }
    let factors: Vec<Arc<WedgeFactor>> = r1.factors.iter().chain(&r2.factors).cloned().collect();
    Ok(Realization::assemble(r1.basis.clone(), factors))
}

impl Realization {
    /// Tensor product of `Λ^{k}` for each `k` in `degrees` (empty means the
    /// trivial one-dimensional module).
    pub fn from_factors(basis: Arc<ChevalleyBasis>, degrees: &[usize]) -> Result<Self> {
        let mut cache: BTreeMap<usize, Arc<WedgeFactor>> = BTreeMap::new();
        let mut factors = Vec::new();
        for &k in degrees {
            let f = match cache.get(&k) {
                Some(f) => f.clone(),
                None => {
                    let f = Arc::new(WedgeFactor::new(&basis, k)?);
                    cache.insert(k, f.clone());
                    f
                }
            };
            factors.push(f);
        }
        Ok(Realization::assemble(basis, factors))
    }

    fn assemble(basis: Arc<ChevalleyBasis>, factors: Vec<Arc<WedgeFactor>>) -> Self {
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].labels.len();
        }
        let dim = factors.iter().map(|f| f.labels.len()).product();
        Realization { basis, factors, strides, dim }
    }

    pub fn datum(&self) -> &RootDatum {
        self.basis.datum()
    }

    pub fn chevalley_basis(&self) -> &ChevalleyBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.k).collect()
    }

    fn decode(&self, idx: usize) -> Vec<usize> {
        self.strides.iter().zip(&self.factors).map(|(s, f)| (idx / s) % f.labels.len()).collect()
    }

    /// Label of a basis vector: 1-based index sets per factor.
    pub fn label(&self, idx: usize) -> Vec<Vec<usize>> {
        self.decode(idx)
            .iter()
            .zip(&self.factors)
            .map(|(&l, f)| f.labels[l].iter().map(|s| s + 1).collect())
            .collect()
    }

    pub fn label_string(&self, idx: usize) -> String {
        self.label(idx)
            .iter()
            .map(|set| set.iter().map(|s| format!("e{s}")).collect::<Vec<_>>().join("^"))
            .collect::<Vec<_>>()
            .join(" (x) ")
    }

    /// Index of a label given as 1-based index sets per factor.
    pub fn index_of(&self, label: &[Vec<usize>]) -> Option<usize> {
        if label.len() != self.factors.len() {
            return None;
        }
        let mut idx = 0;
        for ((set, f), s) in label.iter().zip(&self.factors).zip(&self.strides) {
            let mut zero: Vec<usize> = set.iter().map(|x| x.wrapping_sub(1)).collect();
            zero.sort_unstable();
            idx += f.labels.iter().position(|l| *l == zero)? * s;
        }
        Some(idx)
    }

    pub fn weight_of(&self, idx: usize) -> Weight {
        let mut w = vec![0; self.datum().eps_len()];
        for (l, f) in self.decode(idx).iter().zip(&self.factors) {
            for (a, b) in w.iter_mut().zip(&f.weights[*l]) {
                *a += b;
            }
        }
        Weight::new(w)
    }

    /// Weight of a vector supported on a single weight space.
    pub fn weight_of_vector(&self, v: &SparseVec) -> Option<Weight> {
        let mut it = v.iter().map(|(c, _)| self.weight_of(c));
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Tensor product of the highest vectors `e_1∧…∧e_k` of each factor.
    pub fn highest_vector(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    /// Divided power `X^{(m)}` of a generator applied to `v`.
    pub fn apply(&self, g: Generator, m: u32, v: &SparseVec) -> Result<SparseVec> {
        if m == 0 {
            return Ok(v.clone());
        }
        let slot = match g {
            Generator::E(i) => i,
            Generator::F(i) => self.basis.e.len() + i,
            Generator::H(k) => {
                if m != 1 {
                    return Err(Error::Domain("divided powers of coroots are not supported".into()));
                }
                let r = self.datum().simple_root(k);
                let mut pairs = Vec::with_capacity(v.nnz());
                for (c, x) in v.iter() {
                    let p = self.datum().pairing(&r, &self.weight_of(c))?;
                    pairs.push((c, x * BigInt::from(p)));
                }
                return Ok(SparseVec::from_pairs(pairs));
            }
        };
        if slot >= 2 * self.basis.e.len() {
            return Err(Error::Domain(format!("generator {g} out of range")));
        }
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, x) in v.iter() {
            let labels = self.decode(c);
            self.distribute(slot, m as usize, 0, &labels, 0, &BigInt::one(), x, &mut acc);
        }
        Ok(SparseVec::from_pairs(acc))
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &self,
        slot: usize,
        remaining: usize,
        factor: usize,
        labels: &[usize],
        col: usize,
        coeff: &BigInt,
        x: &BigInt,
        acc: &mut BTreeMap<usize, BigInt>,
    ) {
        if factor == self.factors.len() {
            if remaining == 0 {
                *acc.entry(col).or_insert_with(BigInt::zero) += coeff * x;
            }
            return;
        }
        let f = &self.factors[factor];
        let stride = self.strides[factor];
        let l = labels[factor];
        // Leave enough capacity for later factors to absorb the rest.
        let later: usize = self.factors[factor + 1..].iter().map(|g| g.k).sum();
        let lo = remaining.saturating_sub(later);
        for here in lo..=remaining.min(f.k) {
            if here == 0 {
                self.distribute(slot, remaining, factor + 1, labels, col + l * stride, coeff, x, acc);
                continue;
            }
            for &(target, v) in &f.tables[slot][here - 1][l] {
                let c = coeff * BigInt::from(v);
                self.distribute(slot, remaining - here, factor + 1, labels, col + target * stride, &c, x, acc);
            }
        }
    }

    /// Explicit matrix of `X^{(m)}` on the whole ambient.
    pub fn matrix(&self, g: Generator, m: u32) -> Result<ExactMatrix> {
        let mut triples = Vec::new();
        for col in 0..self.dim {
            for (row, v) in self.apply(g, m, &SparseVec::unit(col))?.iter() {
                triples.push((row, col, v.clone()));
            }
        }
        ExactMatrix::from_triples(self.dim, self.dim, triples)
    }

    /// Partition of the basis labels by weight.
    pub fn weight_decompose(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for idx in 0..self.dim {
            out.entry(self.weight_of(idx)).or_default().push(idx);
        }
        out
    }

    /// All E and F generators of the datum.
    pub fn root_generators(&self) -> Vec<Generator> {
        let n = self.basis.e.len();
        (0..n).map(Generator::E).chain((0..n).map(Generator::F)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_datum;

    #[test]
    fn combinations_in_lex_order() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn wedge_action_example() {
        let d = RootDatum::single(Family::A, 4).unwrap();
        let r = wedge_realization(&d, 2).unwrap();
        assert_eq!(r.dim(), 6);
        let alpha = d.root_index(&Root::new(2, 3)).unwrap();
        let v = SparseVec::unit(r.index_of(&[vec![1, 3]]).unwrap());
        let w = r.apply(Generator::E(alpha), 1, &v).unwrap();
        assert_eq!(w, SparseVec::unit(r.index_of(&[vec![1, 2]]).unwrap()));
    }

    #[test]
    fn symplectic_defining_weights() {
        let d = RootDatum::single(Family::C, 2).unwrap();
        let r = wedge_realization(&d, 1).unwrap();
        let ws: Vec<Vec<i64>> = r.weight_decompose().keys().map(|w| w.eps.clone()).collect();
        assert_eq!(ws.len(), 4);
        for w in [vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]] {
            assert!(ws.contains(&w));
        }
    }

    #[test]
    fn tensor_divided_power_on_sl2() {
        let d = build_root_datum(Family::A, 2).unwrap();
        let v1 = wedge_realization(&d, 1).unwrap();
        let t = tensor_realization(&v1, &v1).unwrap();
        assert_eq!(t.dim(), 4);
        let hv = t.highest_vector();
        let f2 = t.apply(Generator::F(0), 2, &hv).unwrap();
        let fv = t.index_of(&[vec![2], vec![2]]).unwrap();
        assert_eq!(f2, SparseVec::unit(fv));
        assert_eq!(t.weight_decompose()[&Weight::new(vec![1, 1])].len(), 2);
    }

    #[test]
    fn involution_is_an_involution() {
        for g in [Generator::E(2), Generator::F(0), Generator::H(1)] {
            let (h, s) = chevalley_involution_relabel(g);
            let (back, t) = chevalley_involution_relabel(h);
            assert_eq!((back, s * t), (g, 1));
        }
        assert_eq!(chevalley_involution_relabel(Generator::E(1)), (Generator::F(1), -1));
    }

    #[test]
    fn sl3_lower_brackets() {
        let d = RootDatum::single(Family::A, 3).unwrap();
        let b = ChevalleyBasis::new(&d).unwrap();
        let a1 = d.root_index(&Root::new(1, 2)).unwrap();
        let a2 = d.root_index(&Root::new(2, 3)).unwrap();
        let th = d.root_index(&Root::new(1, 3)).unwrap();
        let (g, c) = b.lower_bracket(a1, th).unwrap().unwrap();
        assert_eq!(g, a2);
        assert_eq!(c.magnitude(), &num_bigint::BigUint::from(1u32));
        assert_eq!(b.lower_bracket(a1, a2).unwrap(), None);
    }
}
