//! Root systems of types A and C, weights, Weyl-group words, and the
//! combinatorial maps between a root system and its doubled-rank partner.
//!
//! Roots are indexed by matrix positions. For `sl_n` the positive root
//! `α_{i,j}` (`i < j`) is `ε_i − ε_j`. For `sp_{2m}` the defining basis
//! vector `e_s` has weight `ε_s` for `s ≤ m` and `−ε_{2m+1−s}` otherwise, and
//! `α_{i,j}` (`i ≤ m`, `i < j`, `i + j ≤ 2m + 1`) is the weight of the matrix
//! unit at `(i, j)`: `ε_i − ε_j` for `j ≤ m`, `ε_i + ε_{2m+1−j}` for `j > m`,
//! so `2ε_i = α_{i,2m+1−i}`. In both families the height of `α_{i,j}` is
//! `j − i`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::C => "C",
        })
    }
}

/// A root `±α_{i,j}` with 1-based matrix indices `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub negative: bool,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        Root { i, j, negative: false }
    }

    pub fn negated(self) -> Self {
        Root { negative: !self.negative, ..self }
    }

    pub fn height(&self) -> usize {
        self.j - self.i
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}a({},{})", if self.negative { "-" } else { "" }, self.i, self.j)
    }
}

/// Weight in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub eps: Vec<i64>,
}

impl Weight {
    pub fn new(eps: Vec<i64>) -> Self {
        Weight { eps }
    }

    pub fn zero(len: usize) -> Self {
        Weight { eps: vec![0; len] }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight { eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight { eps: self.eps.iter().map(|a| a * k).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.eps)
    }
}

/// Trichotomy of the doubled positive roots relative to the image of `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    First,
    Second,
    Third,
}

/// Root system of `sl_n` (type A, `small_rank = n`) or `sp_{2m}` (type C,
/// `small_rank = m`), optionally carrying its doubled-rank partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    family: Family,
    small_rank: usize,
    positive_roots: Vec<Root>,
    doubled: Option<Box<RootDatum>>,
}

/// Builds the datum together with its doubled partner.
pub fn build_root_datum(family: Family, small_rank: usize) -> Result<RootDatum> {
    let mut d = RootDatum::single(family, small_rank)?;
    d.doubled = Some(Box::new(RootDatum::single(family, 2 * small_rank)?));
    Ok(d)
}

impl RootDatum {
    /// Datum without a doubled partner.
    pub fn single(family: Family, small_rank: usize) -> Result<RootDatum> {
        match family {
            Family::A if small_rank < 2 => {
                return Err(Error::InvalidRank(format!("type A needs n >= 2, got {small_rank}")))
            }
            Family::C if small_rank < 1 => return Err(Error::InvalidRank("type C needs m >= 1".into())),
            _ => {}
        }
        let size = match family {
            Family::A => small_rank,
            Family::C => 2 * small_rank,
        };
        let mut roots = Vec::new();
        for i in 1..=size {
            for j in i + 1..=size {
                let ok = match family {
                    Family::A => true,
                    Family::C => i <= small_rank && i + j <= size + 1,
                };
                if ok {
                    roots.push(Root::new(i, j));
                }
            }
        }
        roots.sort_by_key(|r| (r.height(), r.i, r.j));
        Ok(RootDatum { family, small_rank, positive_roots: roots, doubled: None })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn small_rank(&self) -> usize {
        self.small_rank
    }

    /// Dimension of the defining representation (`n` or `2m`).
    pub fn defining_dim(&self) -> usize {
        match self.family {
            Family::A => self.small_rank,
            Family::C => 2 * self.small_rank,
        }
    }

    /// Number of ε-coordinates of a weight.
    pub fn eps_len(&self) -> usize {
        self.small_rank
    }

    /// Number of simple roots (the Lie rank).
    pub fn lie_rank(&self) -> usize {
        match self.family {
            Family::A => self.small_rank - 1,
            Family::C => self.small_rank,
        }
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (1..=self.lie_rank()).map(|k| self.simple_root(k)).collect()
    }

    /// Simple root `α_k`, 1-based.
    pub fn simple_root(&self, k: usize) -> Root {
        Root::new(k, k + 1)
    }

    pub fn doubled(&self) -> Result<&RootDatum> {
        self.doubled.as_deref().ok_or_else(|| Error::Domain("datum has no doubled partner".into()))
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        if r.negative {
            return None;
        }
        self.positive_roots.iter().position(|x| x.i == r.i && x.j == r.j)
    }

    fn check_root(&self, r: &Root) -> Result<()> {
        let ok = r.i >= 1
            && r.i < r.j
            && r.j <= self.defining_dim()
            && (self.family == Family::A || (r.i <= self.small_rank && r.i + r.j <= self.defining_dim() + 1));
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("{r} is not a root of {}{}", self.family, self.small_rank)))
        }
    }

    /// Weight of the defining basis vector `e_s` (1-based).
    pub fn basis_weight(&self, s: usize) -> Weight {
        let mut eps = vec![0; self.eps_len()];
        match self.family {
            Family::A => eps[s - 1] = 1,
            Family::C => {
                let m = self.small_rank;
                if s <= m {
                    eps[s - 1] = 1;
                } else {
                    eps[2 * m - s] = -1;
                }
            }
        }
        Weight { eps }
    }

    pub fn root_weight(&self, r: &Root) -> Weight {
        let w = self.basis_weight(r.i).sub(&self.basis_weight(r.j));
        if r.negative {
            w.scale(-1)
        } else {
            w
        }
    }

    /// `⟨α∨, μ⟩ = 2(α, μ)/(α, α)` with the standard form on ε-coordinates.
    pub fn pairing(&self, r: &Root, mu: &Weight) -> Result<i64> {
        self.check_root(r)?;
        if mu.eps.len() != self.eps_len() {
            return Err(Error::Domain(format!(
                "weight of length {} for a datum with {} coordinates",
                mu.eps.len(),
                self.eps_len()
            )));
        }
        let a = self.root_weight(r);
        let dot: i64 = a.eps.iter().zip(&mu.eps).map(|(x, y)| x * y).sum();
        let norm: i64 = a.eps.iter().map(|x| x * x).sum();
        Ok(2 * dot / norm)
    }

    pub fn fundamental_weight(&self, k: usize) -> Weight {
        let mut eps = vec![0; self.eps_len()];
        for e in eps.iter_mut().take(k) {
            *e = 1;
        }
        Weight { eps }
    }

    /// `Σ a_k ω_k`.
    pub fn from_fundamental(&self, coeffs: &[i64]) -> Result<Weight> {
        if coeffs.len() != self.lie_rank() {
            return Err(Error::Domain(format!(
                "expected {} fundamental coefficients, got {}",
                self.lie_rank(),
                coeffs.len()
            )));
        }
        let mut w = Weight::zero(self.eps_len());
        for (k, &a) in coeffs.iter().enumerate() {
            w = w.add(&self.fundamental_weight(k + 1).scale(a));
        }
        Ok(w)
    }

    /// Fundamental coordinates `⟨α_k∨, μ⟩`.
    pub fn to_fundamental(&self, mu: &Weight) -> Result<Vec<i64>> {
        (1..=self.lie_rank()).map(|k| self.pairing(&self.simple_root(k), mu)).collect()
    }

    pub fn is_dominant(&self, mu: &Weight) -> Result<bool> {
        Ok(self.to_fundamental(mu)?.iter().all(|&a| a >= 0))
    }

    pub fn rho(&self) -> Weight {
        self.from_fundamental(&vec![1; self.lie_rank()]).expect("length matches")
    }

    /// Equality of weights; in type A modulo the all-ones vector.
    pub fn weights_equal(&self, a: &Weight, b: &Weight) -> bool {
        if a.eps.len() != b.eps.len() {
            return false;
        }
        match self.family {
            Family::C => a == b,
            Family::A => {
                let shift = a.eps[0] - b.eps[0];
                a.eps.iter().zip(&b.eps).all(|(x, y)| x - y == shift)
            }
        }
    }

    /// Simple reflection indices of a reduced word for the longest element.
    pub fn longest_word(&self) -> WeylWord {
        let n = self.defining_dim();
        let perm: Vec<usize> = (1..=n).rev().collect();
        WeylWord::from_permutation(self, perm).expect("longest element lies in the Weyl group")
    }
}

fn check_fundamental(datum: &RootDatum, coeffs: &[i64]) -> Result<()> {
    if coeffs.len() != datum.lie_rank() {
        return Err(Error::Domain(format!(
            "expected {} fundamental coefficients, got {}",
            datum.lie_rank(),
            coeffs.len()
        )));
    }
    if coeffs.iter().any(|&a| a < 0) {
        return Err(Error::Domain(format!("weight {coeffs:?} is not dominant")));
    }
    Ok(())
}

/// `Σ a_i ω_i ↦ Σ a_i ω̃_{2i}` on the doubled datum.
pub fn psi(datum: &RootDatum, coeffs: &[i64]) -> Result<Weight> {
    datum.doubled()?.from_fundamental(&psi_coeffs(datum, coeffs)?)
}

/// Fundamental coefficients of `Ψ(λ)` on the doubled datum.
pub fn psi_coeffs(datum: &RootDatum, coeffs: &[i64]) -> Result<Vec<i64>> {
    check_fundamental(datum, coeffs)?;
    let doubled = datum.doubled()?;
    let mut big = vec![0; doubled.lie_rank()];
    for (k, &a) in coeffs.iter().enumerate() {
        big[2 * (k + 1) - 1] = a;
    }
    Ok(big)
}

/// `λ*`: reversed coefficients in type A, `λ` itself in type C.
pub fn dual_weight(datum: &RootDatum, coeffs: &[i64]) -> Result<Vec<i64>> {
    check_fundamental(datum, coeffs)?;
    Ok(match datum.family {
        Family::A => coeffs.iter().rev().copied().collect(),
        Family::C => coeffs.to_vec(),
    })
}

/// `α*` = `−w_0(α)`: in type A `α_{i,j} ↦ α_{n+1−j,n+1−i}`, in type C the identity.
pub fn dual_root(datum: &RootDatum, r: &Root) -> Root {
    match datum.family {
        Family::A => {
            let n = datum.defining_dim();
            Root { i: n + 1 - r.j, j: n + 1 - r.i, negative: r.negative }
        }
        Family::C => *r,
    }
}

/// Word in the simple reflections of a datum together with the permutation of
/// the defining basis indices it realizes. In type C the reflection `r_k`
/// acts on `2M` indices as `s_k s_{2M−k}` for `k < M` and as `s_M` for `k = M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord {
    pub family: Family,
    /// Rank parameter of the datum the word lives in.
    pub rank: usize,
    pub letters: Vec<usize>,
    /// One-line notation on `1..=defining_dim`.
    pub realized_permutation: Vec<usize>,
}

fn right_multiply(family: Family, perm: &mut [usize], k: usize) {
    let n = perm.len();
    match family {
        Family::A => perm.swap(k - 1, k),
        Family::C => {
            let m = n / 2;
            if k < m {
                perm.swap(k - 1, k);
                perm.swap(n - k - 1, n - k);
            } else {
                perm.swap(m - 1, m);
            }
        }
    }
}

impl WeylWord {
    pub fn new(datum: &RootDatum, letters: Vec<usize>) -> Result<Self> {
        if let Some(&k) = letters.iter().find(|&&k| k == 0 || k > datum.lie_rank()) {
            return Err(Error::Domain(format!("letter {k} out of range 1..={}", datum.lie_rank())));
        }
        let mut perm: Vec<usize> = (1..=datum.defining_dim()).collect();
        for &k in &letters {
            right_multiply(datum.family, &mut perm, k);
        }
        Ok(WeylWord { family: datum.family, rank: datum.small_rank, letters, realized_permutation: perm })
    }

    pub fn identity(datum: &RootDatum) -> Self {
        WeylWord::new(datum, Vec::new()).expect("empty word is valid")
    }

    /// Deterministic reduced word: repeatedly strip the smallest right descent.
    pub fn from_permutation(datum: &RootDatum, perm: Vec<usize>) -> Result<Self> {
        let n = datum.defining_dim();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Domain(format!("{perm:?} is not a permutation of 1..={n}")));
        }
        if datum.family == Family::C && (0..n).any(|k| perm[n - 1 - k] != n + 1 - perm[k]) {
            return Err(Error::Domain(format!("{perm:?} does not commute with the form involution")));
        }
        let mut w = perm.clone();
        let mut rev = Vec::new();
        while let Some(k) = (1..=datum.lie_rank()).find(|&k| w[k - 1] > w[k]) {
            right_multiply(datum.family, &mut w, k);
            rev.push(k);
        }
        rev.reverse();
        let word = WeylWord::new(datum, rev)?;
        debug_assert_eq!(word.realized_permutation, perm);
        Ok(word)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// The special element on the doubled datum. Type A uses the explicit word
/// `(s_n … s_{2n−2})(s_{n−1} … s_{2n−4}) … (s_3 s_4) s_2`; type C uses the
/// reduced word of the signed permutation `τ` on `4m` letters.
pub fn tau_word(datum: &RootDatum) -> Result<WeylWord> {
    let doubled = datum.doubled()?;
    match datum.family {
        Family::A => {
            let n = datum.small_rank;
            let mut letters = Vec::new();
            for t in (2..=n).rev() {
                letters.extend(t..=2 * t - 2);
            }
            WeylWord::new(doubled, letters)
        }
        Family::C => WeylWord::from_permutation(doubled, tau_permutation(2 * datum.small_rank)),
    }
}

/// Shortened type-A word acting on `ω̃_{2i}` like the special element:
/// `(s_n … s_{n+i−1}) … (s_{i+2} … s_{2i+1})(s_{i+1} … s_{2i})`.
pub fn tau_subword(datum: &RootDatum, i: usize) -> Result<WeylWord> {
    if datum.family != Family::A || i == 0 || i >= datum.small_rank {
        return Err(Error::Domain(format!("no shortened word for index {i} in type {}", datum.family)));
    }
    let n = datum.small_rank;
    let letters = (i + 1..=n).rev().flat_map(|k| k..=k + i - 1).collect();
    WeylWord::new(datum.doubled()?, letters)
}

/// Closed form of `τ` on `2n` letters: `τ(2k) = n + k`, `τ(2k − 1) = k`.
pub fn tau_permutation(n: usize) -> Vec<usize> {
    (1..=2 * n).map(|x| if x % 2 == 0 { n + x / 2 } else { x.div_ceil(2) }).collect()
}

/// Applies the word to a weight of the datum it lives in.
pub fn apply_weyl_word(datum: &RootDatum, word: &WeylWord, mu: &Weight) -> Result<Weight> {
    if mu.eps.len() != datum.eps_len() || word.family != datum.family || word.rank != datum.small_rank {
        return Err(Error::Domain("word, weight and datum do not match".into()));
    }
    let n = datum.defining_dim();
    let ext: Vec<i64> = match datum.family {
        Family::A => mu.eps.clone(),
        Family::C => (1..=n).map(|s| if s <= n / 2 { mu.eps[s - 1] } else { -mu.eps[n - s] }).collect(),
    };
    let mut out = vec![0; n];
    for (k, &x) in ext.iter().enumerate() {
        out[word.realized_permutation[k] - 1] = x;
    }
    out.truncate(datum.eps_len());
    Ok(Weight { eps: out })
}

/// Root map to the doubled datum: `α_{i,j} ↦ α̃_{j,n+i}` (type A) and
/// `α_{i,j} ↦ α̃_{j,i+2m}` (type C).
pub fn phi(datum: &RootDatum, r: &Root) -> Result<Root> {
    if r.negative {
        return Err(Error::Domain(format!("phi is defined on positive roots, got {r}")));
    }
    datum.check_root(r)?;
    Ok(Root::new(r.j, r.i + datum.defining_dim()))
}

/// `τΨ(λ)` from the closed formulas.
pub fn tau_psi_weight(datum: &RootDatum, coeffs: &[i64]) -> Result<Weight> {
    check_fundamental(datum, coeffs)?;
    let lambda = datum.from_fundamental(coeffs)?;
    let b = &lambda.eps;
    Ok(match datum.family {
        Family::A => {
            let n = datum.small_rank;
            let mut eps = vec![0; 2 * n];
            for k in 0..n - 1 {
                eps[k] = b[k];
                eps[n + k] = b[k];
            }
            Weight { eps }
        }
        Family::C => {
            let m = datum.small_rank;
            let mut eps = vec![0; 2 * m];
            for k in 0..m {
                eps[k] = b[k];
                eps[2 * m - 1 - k] = -b[k];
            }
            Weight { eps }
        }
    })
}

/// Classifies a doubled positive root: first type iff in the image of `phi`,
/// second type iff both indices lie in the same half, third type otherwise
/// (diagonal roots included).
pub fn classify_root(datum: &RootDatum, r: &Root) -> Result<RootType> {
    let doubled = datum.doubled()?;
    if r.negative {
        return Err(Error::Domain(format!("{r} is not positive")));
    }
    doubled.check_root(r)?;
    let half = datum.defining_dim();
    if phi_image(datum).contains(r) {
        Ok(RootType::First)
    } else if (r.i <= half) == (r.j <= half) {
        Ok(RootType::Second)
    } else {
        Ok(RootType::Third)
    }
}

pub fn phi_image(datum: &RootDatum) -> BTreeSet<Root> {
    datum.positive_roots.iter().map(|r| phi(datum, r).expect("positive roots map")).collect()
}

/// Roots whose divided powers generate the defining ideal: all positive roots
/// in type A, `{ε_i − ε_j} ∪ {2ε_i}` in type C.
pub fn rpp(datum: &RootDatum) -> Vec<Root> {
    match datum.family {
        Family::A => datum.positive_roots.clone(),
        Family::C => {
            let m = datum.small_rank;
            datum.positive_roots.iter().copied().filter(|r| r.j <= m || r.i + r.j == 2 * m + 1).collect()
        }
    }
}

/// `{α̃ > 0 : ⟨α̃∨, τΨ(λ)⟩ < 0}` in the positive-root order of the doubled datum.
pub fn gamma_roots(datum: &RootDatum, coeffs: &[i64]) -> Result<Vec<Root>> {
    let mu = tau_psi_weight(datum, coeffs)?;
    let doubled = datum.doubled()?;
    let mut out = Vec::new();
    for r in doubled.positive_roots() {
        if doubled.pairing(r, &mu)? < 0 {
            out.push(*r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let a3 = build_root_datum(Family::A, 3).unwrap();
        assert_eq!(a3.positive_roots(), &[Root::new(1, 2), Root::new(2, 3), Root::new(1, 3)]);
        assert_eq!(build_root_datum(Family::C, 2).unwrap().positive_roots().len(), 4);
        assert_eq!(build_root_datum(Family::A, 4).unwrap().doubled().unwrap().positive_roots().len(), 28);
        assert!(matches!(build_root_datum(Family::A, 1), Err(Error::InvalidRank(_))));
        assert!(matches!(build_root_datum(Family::C, 0), Err(Error::InvalidRank(_))));
    }

    #[test]
    fn type_c_root_weights() {
        let c2 = build_root_datum(Family::C, 2).unwrap();
        let ws: Vec<Vec<i64>> = c2.positive_roots().iter().map(|r| c2.root_weight(r).eps).collect();
        assert_eq!(ws, vec![vec![1, -1], vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn psi_and_dual() {
        let a3 = build_root_datum(Family::A, 3).unwrap();
        let big = a3.doubled().unwrap();
        assert_eq!(psi(&a3, &[1, 0]).unwrap(), big.fundamental_weight(2));
        assert_eq!(psi(&a3, &[1, 1]).unwrap(), big.from_fundamental(&[0, 1, 0, 1, 0]).unwrap());
        assert!(psi(&a3, &[-1, 0]).is_err());
        let c2 = build_root_datum(Family::C, 2).unwrap();
        assert_eq!(psi(&c2, &[0, 1]).unwrap(), c2.doubled().unwrap().fundamental_weight(4));
        let a4 = build_root_datum(Family::A, 4).unwrap();
        assert_eq!(dual_weight(&a4, &[2, 0, 1]).unwrap(), vec![1, 0, 2]);
        assert_eq!(dual_weight(&c2, &[1, 0]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn tau_examples() {
        let a2 = build_root_datum(Family::A, 2).unwrap();
        let t = tau_word(&a2).unwrap();
        assert_eq!(t.letters, vec![2]);
        assert_eq!(t.realized_permutation, vec![1, 3, 2, 4]);
        let a3 = build_root_datum(Family::A, 3).unwrap();
        assert_eq!(tau_word(&a3).unwrap().realized_permutation, vec![1, 4, 2, 5, 3, 6]);
        let c2 = build_root_datum(Family::C, 2).unwrap();
        let tc = tau_word(&c2).unwrap();
        assert_eq!(tc.realized_permutation, tau_permutation(4));
        assert_eq!(tc.len(), 4);
    }

    #[test]
    fn phi_examples() {
        let a3 = build_root_datum(Family::A, 3).unwrap();
        assert_eq!(phi(&a3, &Root::new(1, 2)).unwrap(), Root::new(2, 4));
        assert_eq!(phi(&a3, &Root::new(1, 3)).unwrap(), Root::new(3, 4));
        assert!(phi(&a3, &Root::new(1, 2).negated()).is_err());
        let c2 = build_root_datum(Family::C, 2).unwrap();
        let big = c2.doubled().unwrap();
        // ε1 + ε2 = α_{1,3} ↦ α̃_{3,5} = ε̃3 + ε̃4.
        let r = phi(&c2, &Root::new(1, 3)).unwrap();
        assert_eq!(big.root_weight(&r).eps, vec![0, 0, 1, 1]);
        // 2ε1 = α_{1,4} ↦ α̃_{4,5} = 2ε̃4.
        let r = phi(&c2, &Root::new(1, 4)).unwrap();
        assert_eq!(big.root_weight(&r).eps, vec![0, 0, 0, 2]);
    }

    #[test]
    fn pairing_examples() {
        let a3 = build_root_datum(Family::A, 3).unwrap();
        let l = a3.from_fundamental(&[1, 1]).unwrap();
        assert_eq!(a3.pairing(&Root::new(1, 3), &l).unwrap(), 2);
        let c2 = build_root_datum(Family::C, 2).unwrap();
        assert_eq!(c2.pairing(&Root::new(1, 4), &c2.fundamental_weight(1)).unwrap(), 1);
        assert!(c2.pairing(&Root::new(1, 2), &Weight::zero(3)).is_err());
    }

    #[test]
    fn tau_psi_examples() {
        let a3 = build_root_datum(Family::A, 3).unwrap();
        assert_eq!(tau_psi_weight(&a3, &[1, 0]).unwrap().eps, vec![1, 0, 0, 1, 0, 0]);
        assert_eq!(tau_psi_weight(&a3, &[0, 0]).unwrap().eps, vec![0; 6]);
        let c2 = build_root_datum(Family::C, 2).unwrap();
        assert_eq!(tau_psi_weight(&c2, &[1, 0]).unwrap().eps, vec![1, 0, 0, -1]);
    }

    #[test]
    fn classification_examples() {
        let a2 = build_root_datum(Family::A, 2).unwrap();
        assert_eq!(classify_root(&a2, &Root::new(1, 2)).unwrap(), RootType::Second);
        assert_eq!(classify_root(&a2, &Root::new(2, 3)).unwrap(), RootType::First);
        assert_eq!(classify_root(&a2, &Root::new(1, 3)).unwrap(), RootType::Third);
    }

    #[test]
    fn rpp_examples() {
        assert_eq!(rpp(&build_root_datum(Family::A, 3).unwrap()).len(), 3);
        let c2 = build_root_datum(Family::C, 2).unwrap();
        let ws: Vec<Vec<i64>> = rpp(&c2).iter().map(|r| c2.root_weight(r).eps).collect();
        assert_eq!(ws, vec![vec![1, -1], vec![0, 2], vec![2, 0]]);
        let c1 = build_root_datum(Family::C, 1).unwrap();
        assert_eq!(rpp(&c1), vec![Root::new(1, 2)]);
    }

    #[test]
    fn gamma_examples() {
        let a2 = build_root_datum(Family::A, 2).unwrap();
        assert_eq!(gamma_roots(&a2, &[1]).unwrap(), vec![Root::new(2, 3)]);
        assert!(gamma_roots(&a2, &[0]).unwrap().is_empty());
        let a3 = build_root_datum(Family::A, 3).unwrap();
        assert_eq!(gamma_roots(&a3, &[1, 1]).unwrap().len(), 3);
    }

    #[test]
    fn weyl_word_action() {
        let a2 = build_root_datum(Family::A, 2).unwrap();
        let big = a2.doubled().unwrap();
        let s2 = WeylWord::new(big, vec![2]).unwrap();
        let w = apply_weyl_word(big, &s2, &big.fundamental_weight(2)).unwrap();
        assert_eq!(w.eps, vec![1, 0, 1, 0]);
        let id = WeylWord::identity(big);
        assert_eq!(apply_weyl_word(big, &id, &big.fundamental_weight(2)).unwrap(), big.fundamental_weight(2));
    }

    #[test]
    fn longest_words_have_full_length() {
        for (f, r) in [(Family::A, 4), (Family::C, 3)] {
            let d = RootDatum::single(f, r).unwrap();
            assert_eq!(d.longest_word().len(), d.positive_roots().len());
        }
    }
}
