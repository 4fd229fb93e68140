//! Weyl-module lattices over the integers, PBW filtrations and their
//! associated graded modules, Demazure lattices, and base change.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::chevrep::{ChevalleyBasis, Generator, Realization};
use crate::error::{Error, Result};
use crate::exactlat::{check_characteristic, quotient_map, EchelonBasis, ExactMatrix, Lattice, SparseVec};
use crate::isocheck::weyl_dim_oracle;
use crate::rootdata::{apply_weyl_word, Family, Root, RootDatum, Weight, WeylWord};

/// Which nilpotent subalgebra drives a PBW filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Lowering operators from the highest weight vector.
    Lower,
    /// Raising operators from the lowest weight vector.
    Upper,
}

/// Cyclic lattice `U_Z(g)·v_λ` inside a tensor product of exterior powers.
#[derive(Clone, Debug)]
pub struct WeylModule {
    pub realization: Realization,
    /// `None` when only the ambient is needed (large doubled-rank modules).
    pub lattice: Option<Lattice>,
    pub highest_vector: SparseVec,
    pub lambda: Weight,
    /// Coefficients of `λ` in the fundamental weights.
    pub coeffs: Vec<i64>,
}

impl WeylModule {
    pub fn datum(&self) -> &RootDatum {
        self.realization.datum()
    }

    pub fn lattice(&self) -> Result<&Lattice> {
        self.lattice.as_ref().ok_or_else(|| Error::Domain("Weyl lattice was not computed".into()))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.lattice()?.rank())
    }
}

fn check_dominant(datum: &RootDatum, coeffs: &[i64]) -> Result<()> {
    if coeffs.len() != datum.lie_rank() {
        return Err(Error::Domain(format!("expected {} fundamental coefficients, got {}", datum.lie_rank(), coeffs.len())));
    }
    if coeffs.iter().any(|&a| a < 0) {
        return Err(Error::Domain(format!("weight {coeffs:?} is not dominant")));
    }
    Ok(())
}

/// Ambient tensor product `⊗_k (Λ^k)^{⊗a_k}` with its highest vector, without
/// computing the cyclic lattice.
pub fn weyl_ambient(datum: &RootDatum, coeffs: &[i64]) -> Result<WeylModule> {
    weyl_ambient_with(Arc::new(ChevalleyBasis::new(datum)?), coeffs)
}

fn weyl_ambient_with(basis: Arc<ChevalleyBasis>, coeffs: &[i64]) -> Result<WeylModule> {
    let datum = basis.datum().clone();
    check_dominant(&datum, coeffs)?;
    let degrees: Vec<usize> =
        coeffs.iter().enumerate().flat_map(|(k, &a)| std::iter::repeat(k + 1).take(a as usize)).collect();
    let realization = Realization::from_factors(basis, &degrees)?;
    let lambda = datum.from_fundamental(coeffs)?;
    Ok(WeylModule { realization, lattice: None, highest_vector: SparseVec::unit(0), lambda, coeffs: coeffs.to_vec() })
}

/// Smallest lattice containing `seeds` and stable under every divided power
/// of every generator in `gens`.
pub fn closure(
    realization: &Realization,
    seeds: &[SparseVec],
    gens: &[Generator],
    budget: &Budget,
    stage: &str,
) -> Result<Lattice> {
    let mut basis = EchelonBasis::new(realization.dim());
    let mut queue = VecDeque::new();
    for s in seeds {
        if basis.insert(s)? {
            queue.push_back(s.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        budget.check(stage)?;
        for &g in gens {
            for m in 1.. {
                let w = realization.apply(g, m, &v)?;
                if w.is_zero() {
                    break;
                }
                if basis.insert(&w)? {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(basis.to_lattice())
}

/// Weyl module `V_Z(λ)`, checked against the dimension oracle.
pub fn weyl_module(datum: &RootDatum, coeffs: &[i64], budget: &Budget) -> Result<WeylModule> {
    let mut v = weyl_ambient(datum, coeffs)?;
    let gens: Vec<Generator> = (0..datum.positive_roots().len()).map(Generator::F).collect();
    let lattice = closure(&v.realization, &[v.highest_vector.clone()], &gens, budget, "weyl_module")?;
    let expected = weyl_dim_oracle(datum, coeffs)?;
    if BigInt::from(lattice.rank()) != expected {
        return Err(Error::Construction(format!(
            "Weyl module {coeffs:?} has rank {} but the dimension formula gives {expected}",
            lattice.rank()
        )));
    }
    v.lattice = Some(lattice);
    Ok(v)
}

/// Increasing chain `F_0 ⊆ F_1 ⊆ …` of PBW-degree lattices.
#[derive(Clone, Debug)]
pub struct FilteredModule {
    pub module: WeylModule,
    pub steps: Vec<Lattice>,
    pub generator: SparseVec,
    pub side: Side,
}

impl FilteredModule {
    pub fn top_degree(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn piece_ranks(&self) -> Vec<usize> {
        let mut prev = 0;
        self.steps
            .iter()
            .map(|l| {
                let r = l.rank() - prev;
                prev = l.rank();
                r
            })
            .collect()
    }

    /// Elementary divisors of `F_{ℓ−1}` inside `F_ℓ` for each `ℓ ≥ 1`.
    pub fn quotient_divisors(&self) -> Result<Vec<Vec<BigInt>>> {
        self.steps.windows(2).map(|w| w[0].quotient_divisors(&w[1])).collect()
    }

    fn operators(&self) -> Vec<Generator> {
        let n = self.module.datum().positive_roots().len();
        match self.side {
            Side::Lower => (0..n).map(Generator::F).collect(),
            Side::Upper => (0..n).map(Generator::E).collect(),
        }
    }
}

/// The HNF row of the Weyl lattice spanning the lowest weight space.
pub fn lowest_weight_vector(v: &WeylModule) -> Result<SparseVec> {
    let datum = v.datum();
    let target = apply_weyl_word(datum, &datum.longest_word(), &v.lambda)?;
    let rows: Vec<&SparseVec> = v
        .lattice()?
        .basis()
        .iter()
        .filter(|r| v.realization.weight_of_vector(r).is_some_and(|w| datum.weights_equal(&w, &target)))
        .collect();
    match rows.as_slice() {
        [r] => Ok((*r).clone()),
        _ => Err(Error::Internal(format!("lowest weight space has rank {}", rows.len()))),
    }
}

/// PBW filtration by the total divided-power degree of monomials applied to
/// the cyclic vector.
pub fn pbw_filtration(v: &WeylModule, side: Side, budget: &Budget) -> Result<FilteredModule> {
    let full = v.lattice()?.clone();
    let generator = match side {
        Side::Lower => v.highest_vector.clone(),
        Side::Upper => lowest_weight_vector(v)?,
    };
    if !full.member(&generator) {
        return Err(Error::Domain("cyclic vector is not in the lattice".into()));
    }
    let mut f = FilteredModule { module: v.clone(), steps: Vec::new(), generator: generator.clone(), side };
    let ops = f.operators();
    let dim = v.realization.dim();
    f.steps.push(crate::exactlat::hnf(dim, &[generator])?);
    while f.steps.last().unwrap() != &full {
        budget.check("pbw_filtration")?;
        let l = f.steps.len();
        if l > full.rank() {
            return Err(Error::Internal("PBW filtration does not exhaust the module".into()));
        }
        let mut basis = EchelonBasis::from_lattice(&f.steps[l - 1]);
        for m in 1..=l {
            for row in f.steps[l - m].basis() {
                for &g in &ops {
                    let w = v.realization.apply(g, m as u32, row)?;
                    if !w.is_zero() {
                        basis.insert(&w)?;
                    }
                }
            }
        }
        f.steps.push(basis.to_lattice());
    }
    Ok(f)
}

/// One graded piece of a cyclic graded module, in integer coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedPiece {
    pub rank: usize,
    /// Torsion divisors of the piece (empty when free).
    pub torsion: Vec<BigInt>,
}

/// Graded module over the divided-power algebra on the variables
/// `variables`, cyclic on the class of degree 0.
#[derive(Clone, Debug)]
pub struct GradedCyclicModule {
    /// Positive roots of the small datum indexing the variables.
    pub variables: Vec<Root>,
    pub pieces: Vec<GradedPiece>,
    /// `(variable, m, source degree)` ↦ matrix from piece `d` to piece `d+m`.
    pub abelian_action: BTreeMap<(usize, u32, usize), ExactMatrix>,
    /// Rank per (weight, degree), weights on the small side.
    pub character: BTreeMap<(Weight, usize), usize>,
}

impl GradedCyclicModule {
    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.rank).collect()
    }

    pub fn rank(&self) -> usize {
        self.pieces.iter().map(|p| p.rank).sum()
    }

    /// Coordinates of the cyclic generator in piece 0.
    pub fn generator(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    /// Image of `x` (coordinates in piece `d`) under the `m`-th divided power
    /// of a variable; zero beyond the top degree.
    pub fn act(&self, var: usize, m: u32, d: usize, x: &SparseVec) -> SparseVec {
        if m == 0 {
            return x.clone();
        }
        match self.abelian_action.get(&(var, m, d)) {
            Some(a) => a.apply(x),
            None => SparseVec::zero(),
        }
    }

    fn check_commuting(&self) -> Result<()> {
        let top = self.top_degree();
        for (&(a, m, d), x) in &self.abelian_action {
            for (&(b, k, e), y) in self.abelian_action.range((a + 1, 0, 0)..) {
                if e != d || d + m as usize + k as usize > top {
                    continue;
                }
                let xy = self.abelian_action[&(a, m, d + k as usize)].mul(y)?;
                let yx = self.abelian_action[&(b, k, d + m as usize)].mul(x)?;
                if xy != yx {
                    return Err(Error::Internal(format!("actions of variables {a} and {b} do not commute")));
                }
            }
        }
        Ok(())
    }
}

/// Associated graded module of a PBW filtration, with the induced actions of
/// the divided powers of each root vector.
pub fn associated_graded(f: &FilteredModule) -> Result<GradedCyclicModule> {
    let datum = f.module.datum();
    let real = &f.module.realization;
    let top = f.top_degree();
    let mut maps = Vec::new();
    let mut pieces = Vec::new();
    let mut character: BTreeMap<(Weight, usize), usize> = BTreeMap::new();
    for d in 0..=top {
        let sub = if d == 0 { Lattice::zero(real.dim()) } else { f.steps[d - 1].clone() };
        let q = quotient_map(&sub, &f.steps[d])?;
        let torsion = q.divisors.iter().filter(|x| !x.is_one()).cloned().collect();
        pieces.push(GradedPiece { rank: q.projection.len(), torsion });
        let count = |l: &Lattice, w: &mut BTreeMap<Weight, i64>, sign: i64| -> Result<()> {
            for row in l.basis() {
                let wt = real
                    .weight_of_vector(row)
                    .ok_or_else(|| Error::Internal("lattice basis row is not a weight vector".into()))?;
                *w.entry(wt).or_insert(0) += sign;
            }
            Ok(())
        };
        let mut diff = BTreeMap::new();
        count(&f.steps[d], &mut diff, 1)?;
        count(&sub, &mut diff, -1)?;
        for (w, c) in diff {
            if c < 0 {
                return Err(Error::Internal("filtration weight multiplicities decrease".into()));
            }
            if c > 0 {
                character.insert((w, d), c as usize);
            }
        }
        maps.push(q);
    }
    let ops = f.operators();
    let mut abelian_action = BTreeMap::new();
    for (var, &g) in ops.iter().enumerate() {
        for d in 0..=top {
            let lifts: Vec<SparseVec> = maps[d].lifts.iter().map(|c| f.steps[d].combination(&c.to_dense(f.steps[d].rank()))).collect();
            for m in 1..=(top - d) as u32 {
                let target = d + m as usize;
                let mut triples = Vec::new();
                for (col, x) in lifts.iter().enumerate() {
                    let y = real.apply(g, m, x)?;
                    let c = f.steps[target]
                        .coordinates(&y)
                        .ok_or_else(|| Error::Internal("divided power leaves the filtration step".into()))?;
                    let c = SparseVec::from_dense(&c);
                    for (row, p) in maps[target].projection.iter().enumerate() {
                        let v = p.dot(&c);
                        if !v.is_zero() {
                            triples.push((row, col, v));
                        }
                    }
                }
                let a = ExactMatrix::from_triples(pieces[target].rank, pieces[d].rank, triples)?;
                if !a.is_zero() {
                    abelian_action.insert((var, m, d), a);
                }
            }
        }
    }
    let module = GradedCyclicModule {
        variables: datum.positive_roots().to_vec(),
        pieces,
        abelian_action,
        character,
    };
    module.check_commuting()?;
    Ok(module)
}

/// Divided-power cascade along `word` starting from the highest vector.
pub fn extremal_vector(v: &WeylModule, word: &WeylWord) -> Result<SparseVec> {
    let datum = v.datum();
    let real = &v.realization;
    let mut vec = v.highest_vector.clone();
    let mut weight = v.lambda.clone();
    for &k in word.letters.iter().rev() {
        let simple = datum.simple_root(k);
        let idx = datum.root_index(&simple).unwrap();
        let c = datum.pairing(&simple, &weight)?;
        vec = if c >= 0 {
            real.apply(Generator::F(idx), c as u32, &vec)?
        } else {
            real.apply(Generator::E(idx), (-c) as u32, &vec)?
        };
        if vec.is_zero() {
            return Err(Error::Internal(format!("extremal cascade vanished at letter s{k}")));
        }
        weight = weight.sub(&datum.root_weight(&simple).scale(c));
    }
    Ok(vec)
}

/// Demazure lattice `U_Z(b̃)·v_w` inside a doubled-rank module.
#[derive(Clone, Debug)]
pub struct DemazureModule {
    pub parent: WeylModule,
    pub extremal_vector: SparseVec,
    pub lattice: Lattice,
    pub word: WeylWord,
}

impl DemazureModule {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn extremal_weight(&self) -> Weight {
        self.parent.realization.weight_of_vector(&self.extremal_vector).expect("extremal vector is a weight vector")
    }

    /// Whether every `E^{(m)}` and every coroot maps the lattice into itself.
    pub fn is_borel_stable(&self) -> Result<bool> {
        let real = &self.parent.realization;
        let n = self.parent.datum().positive_roots().len();
        let mut gens: Vec<Generator> = (0..n).map(Generator::E).collect();
        gens.extend((1..=self.parent.datum().lie_rank()).map(Generator::H));
        for row in self.lattice.basis() {
            for &g in &gens {
                let max_m = if matches!(g, Generator::H(_)) { 1 } else { u32::MAX };
                for m in 1..=max_m {
                    let w = real.apply(g, m, row)?;
                    if w.is_zero() {
                        break;
                    }
                    if !self.lattice.member(&w) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Whether the lattice is stable under all divided powers of the root
    /// vectors for roots supported on the given simple roots.
    pub fn is_levi_stable(&self, simple: &[usize]) -> Result<bool> {
        let datum = self.parent.datum();
        let real = &self.parent.realization;
        let set: BTreeSet<usize> = simple.iter().copied().collect();
        for (idx, r) in datum.positive_roots().iter().enumerate() {
            if !simple_support(datum, r).all(|k| set.contains(&k)) {
                continue;
            }
            for row in self.lattice.basis() {
                for g in [Generator::E(idx), Generator::F(idx)] {
                    for m in 1.. {
                        let w = real.apply(g, m, row)?;
                        if w.is_zero() {
                            break;
                        }
                        if !self.lattice.member(&w) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Simple roots with nonzero coefficient in a positive root.
fn simple_support(datum: &RootDatum, r: &Root) -> std::ops::RangeInclusive<usize> {
    match datum.family() {
        Family::A => r.i..=r.j - 1,
        Family::C => r.i..=(r.j - 1).min(datum.small_rank()),
    }
}

/// Demazure module generated by the extremal vector of `word`.
pub fn demazure_module(v: &WeylModule, word: &WeylWord, budget: &Budget) -> Result<DemazureModule> {
    let ext = extremal_vector(v, word)?;
    let n = v.datum().positive_roots().len();
    let gens: Vec<Generator> = (0..n).map(Generator::E).collect();
    let lattice = closure(&v.realization, &[ext.clone()], &gens, budget, "demazure_module")?;
    Ok(DemazureModule { parent: v.clone(), extremal_vector: ext, lattice, word: word.clone() })
}

/// Ranks over `F_p` (`p = 0` for the rationals) of the graded pieces.
pub fn base_change_ranks(module: &GradedCyclicModule, p: u64) -> Result<Vec<usize>> {
    if p != 0 {
        check_characteristic(p)?;
    }
    Ok(module
        .pieces
        .iter()
        .map(|piece| {
            piece.rank
                + if p == 0 {
                    0
                } else {
                    piece.torsion.iter().filter(|d| (*d % BigInt::from(p)).is_zero()).count()
                }
        })
        .collect())
}

/// `F_p`-dimension of a quotient `sup/sub` from its elementary divisors.
pub fn quotient_rank_mod_p(sub: &Lattice, sup: &Lattice, p: u64) -> Result<usize> {
    if p != 0 {
        check_characteristic(p)?;
    }
    let divisors = sub.quotient_divisors(sup)?;
    let free = sup.rank() - divisors.len();
    let torsion = if p == 0 { 0 } else { divisors.iter().filter(|d| (*d % BigInt::from(p)).is_zero()).count() };
    Ok(free + torsion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, tau_word};

    #[test]
    fn sl2_symmetric_square() {
        let d = RootDatum::single(Family::A, 2).unwrap();
        let v = weyl_module(&d, &[2], &Budget::unlimited()).unwrap();
        assert_eq!(v.rank().unwrap(), 3);
        let f = pbw_filtration(&v, Side::Lower, &Budget::unlimited()).unwrap();
        assert_eq!(f.piece_ranks(), vec![1, 1, 1]);
        assert_eq!(f.top_degree(), 2);
    }

    #[test]
    fn adjoint_of_sl3() {
        let d = RootDatum::single(Family::A, 3).unwrap();
        let v = weyl_module(&d, &[1, 1], &Budget::unlimited()).unwrap();
        assert_eq!(v.rank().unwrap(), 8);
        let f = pbw_filtration(&v, Side::Lower, &Budget::unlimited()).unwrap();
        let g = associated_graded(&f).unwrap();
        assert_eq!(g.graded_dims(), vec![1, 3, 4]);
    }

    #[test]
    fn sp4_second_fundamental() {
        let d = RootDatum::single(Family::C, 2).unwrap();
        assert_eq!(weyl_module(&d, &[0, 1], &Budget::unlimited()).unwrap().rank().unwrap(), 5);
    }

    #[test]
    fn sl4_demazure_for_s2() {
        let d = RootDatum::single(Family::A, 4).unwrap();
        let v = weyl_ambient(&d, &[0, 1, 0]).unwrap();
        let w = WeylWord::new(&d, vec![2]).unwrap();
        let e = extremal_vector(&v, &w).unwrap();
        let target = v.realization.index_of(&[vec![1, 3]]).unwrap();
        assert_eq!(e.iter().map(|(c, _)| c).collect::<Vec<_>>(), vec![target]);
        let dm = demazure_module(&v, &w, &Budget::unlimited()).unwrap();
        assert_eq!(dm.rank(), 2);
        assert!(dm.is_borel_stable().unwrap());
    }

    #[test]
    fn doubled_demazure_ranks() {
        let small = build_root_datum(Family::A, 3).unwrap();
        let big = small.doubled().unwrap();
        let v = weyl_ambient(big, &[0, 1, 0, 0, 0]).unwrap();
        let dm = demazure_module(&v, &tau_word(&small).unwrap(), &Budget::unlimited()).unwrap();
        assert_eq!(dm.rank(), 3);
        let small = build_root_datum(Family::C, 2).unwrap();
        let big = small.doubled().unwrap();
        let v = weyl_ambient(big, &[0, 1, 0, 0]).unwrap();
        let dm = demazure_module(&v, &tau_word(&small).unwrap(), &Budget::unlimited()).unwrap();
        assert_eq!(dm.rank(), 4);
    }
}
