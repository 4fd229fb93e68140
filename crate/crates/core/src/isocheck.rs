//! Annihilator ideals in the divided-power algebra, the generator ideal with
//! its Borel action, graded characters, the Weyl dimension formula, and the
//! end-to-end comparison of graded modules with Demazure modules.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::chevrep::{ChevalleyBasis, Generator};
use crate::error::{Error, Result};
use crate::exactlat::{binomial, factorial, hnf, left_kernel, EchelonBasis, ExactMatrix, Lattice, SparseVec};
use crate::pbwdem::{
    associated_graded, demazure_module, pbw_filtration, weyl_ambient, weyl_module, DemazureModule,
    GradedCyclicModule, GradedPiece, Side,
};
use crate::rootdata::{
    dual_root, dual_weight, gamma_roots, phi, phi_image, psi_coeffs, rpp, tau_word, Root, RootDatum, Weight,
};

/// Weyl dimension formula `∏_{α>0} ⟨α∨, λ+ρ⟩ / ⟨α∨, ρ⟩`.
pub fn weyl_dim_oracle(datum: &RootDatum, coeffs: &[i64]) -> Result<BigInt> {
    let lambda = datum.from_fundamental(coeffs)?;
    if !datum.is_dominant(&lambda)? {
        return Err(Error::Domain(format!("weight {coeffs:?} is not dominant")));
    }
    let rho = datum.rho();
    let shifted = lambda.add(&rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for r in datum.positive_roots() {
        num *= BigInt::from(datum.pairing(r, &shifted)?);
        den *= BigInt::from(datum.pairing(r, &rho)?);
    }
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal("dimension formula is not integral".into()));
    }
    Ok(q)
}

/// Monomial `∏ f_α^{(a_α)}` in the divided-power algebra, exponents indexed by
/// the positive-root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DPMonomial {
    pub exponents: Vec<u32>,
}

impl DPMonomial {
    pub fn one(nvars: usize) -> Self {
        DPMonomial { exponents: vec![0; nvars] }
    }

    pub fn variable(nvars: usize, var: usize, power: u32) -> Self {
        let mut m = DPMonomial::one(nvars);
        m.exponents[var] = power;
        m
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `self · other = c · m` with `c = ∏ C(a+b, a)`.
    pub fn multiply(&self, other: &DPMonomial) -> (BigInt, DPMonomial) {
        let mut c = BigInt::one();
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| {
                c *= binomial(a + b, a);
                a + b
            })
            .collect();
        (c, DPMonomial { exponents })
    }

    /// `Σ a_α α` as a weight of the datum.
    pub fn weight(&self, datum: &RootDatum) -> Weight {
        let mut w = Weight::zero(datum.eps_len());
        for (r, &a) in datum.positive_roots().iter().zip(&self.exponents) {
            if a > 0 {
                w = w.add(&datum.root_weight(r).scale(a as i64));
            }
        }
        w
    }

    /// All monomials of the given degree in increasing order.
    pub fn enumerate(nvars: usize, degree: u32) -> Vec<DPMonomial> {
        fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DPMonomial>) {
            if cur.len() + 1 == nvars {
                cur.push(left);
                out.push(DPMonomial { exponents: cur.clone() });
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a);
                rec(nvars, left - a, cur, out);
                cur.pop();
            }
        }
        if nvars == 0 {
            return if degree == 0 { vec![DPMonomial::one(0)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
        out.sort();
        out
    }
}

impl Ord for DPMonomial {
    /// Degree first, then reverse lexicographic on exponents so that higher
    /// powers of earlier roots come first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for DPMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-`d` part of an ideal, as a lattice in the free module on the
/// degree-`d` monomials in their fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSlice {
    pub degree: u32,
    pub lattice: Lattice,
}

/// Rank per (weight, degree).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedCharacter {
    pub table: BTreeMap<(Weight, usize), usize>,
}

impl GradedCharacter {
    pub fn total(&self) -> usize {
        self.table.values().sum()
    }
}

pub fn graded_character(module: &GradedCyclicModule) -> GradedCharacter {
    GradedCharacter { table: module.character.clone() }
}

/// Applies the factors of a monomial in root order to the cyclic generator.
pub fn monomial_apply(module: &GradedCyclicModule, mono: &DPMonomial) -> SparseVec {
    monomial_apply_ordered(module, mono, &(0..mono.exponents.len()).collect::<Vec<_>>())
}

/// Same as [`monomial_apply`] with an explicit order of the variables.
pub fn monomial_apply_ordered(module: &GradedCyclicModule, mono: &DPMonomial, order: &[usize]) -> SparseVec {
    let mut x = module.generator();
    let mut d = 0;
    for &var in order {
        let a = mono.exponents[var];
        if a == 0 {
            continue;
        }
        x = module.act(var, a, d, &x);
        d += a as usize;
        if x.is_zero() {
            break;
        }
    }
    x
}

/// Monomials of one degree, grouped by weight.
struct MonomialSpace {
    monomials: Vec<DPMonomial>,
    index: HashMap<DPMonomial, usize>,
    blocks: BTreeMap<Weight, Vec<usize>>,
}

impl MonomialSpace {
    fn new(datum: &RootDatum, nvars: usize, degree: u32) -> Self {
        let monomials = DPMonomial::enumerate(nvars, degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, m) in monomials.iter().enumerate() {
            blocks.entry(m.weight(datum)).or_default().push(i);
        }
        MonomialSpace { monomials, index, blocks }
    }

    fn dim(&self) -> usize {
        self.monomials.len()
    }

    fn weight_of(&self, datum: &RootDatum, v: &SparseVec) -> Option<Weight> {
        v.leading().map(|(c, _)| self.monomials[c].weight(datum))
    }
}

/// Annihilator of the cyclic generator, degree by degree from 0 to
/// `max_degree`.
pub fn annihilator_ideal(
    datum: &RootDatum,
    module: &GradedCyclicModule,
    max_degree: u32,
    budget: &Budget,
) -> Result<Vec<IdealSlice>> {
    if let Some(p) = module.pieces.iter().position(|p| !p.torsion.is_empty()) {
        return Err(Error::Decomposition(format!("graded piece {p} has torsion")));
    }
    let nvars = module.variables.len();
    let mut out = Vec::new();
    for d in 0..=max_degree {
        budget.check("annihilator_ideal")?;
        let space = MonomialSpace::new(datum, nvars, d);
        let rank = module.pieces.get(d as usize).map_or(0, |p| p.rank);
        let mut rows = Vec::new();
        for block in space.blocks.values() {
            let images: Vec<SparseVec> =
                block.iter().map(|&i| monomial_apply(module, &space.monomials[i])).collect();
            let kernel = left_kernel(&images, rank);
            for k in kernel.basis() {
                rows.push(k.remap(|local| Some(block[local])));
            }
        }
        out.push(IdealSlice { degree: d, lattice: hnf(space.dim(), &rows)? });
    }
    Ok(out)
}

/// Table of `[e_β, f_α] = c f_γ` projected to the lower nilradical.
pub struct CircAction {
    nvars: usize,
    brackets: Vec<Vec<Option<(usize, BigInt)>>>,
}

impl CircAction {
    pub fn new(basis: &ChevalleyBasis) -> Result<Self> {
        let n = basis.datum().positive_roots().len();
        let mut brackets = Vec::with_capacity(n);
        for beta in 0..n {
            brackets.push((0..n).map(|alpha| basis.lower_bracket(beta, alpha)).collect::<Result<Vec<_>>>()?);
        }
        Ok(CircAction { nvars: n, brackets })
    }

    fn derive(&self, beta: usize, combo: &BTreeMap<DPMonomial, BigInt>) -> BTreeMap<DPMonomial, BigInt> {
        let mut out: BTreeMap<DPMonomial, BigInt> = BTreeMap::new();
        for (mono, c) in combo {
            for (alpha, &a) in mono.exponents.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if let Some((gamma, k)) = &self.brackets[beta][alpha] {
                    let mut m = mono.clone();
                    m.exponents[alpha] -= 1;
                    m.exponents[*gamma] += 1;
                    let coeff = c * k * BigInt::from(m.exponents[*gamma]);
                    *out.entry(m).or_insert_with(BigInt::zero) += coeff;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `e_β^{(k)} ∘ mono` as an integer combination of monomials.
    pub fn apply(&self, beta: usize, k: u32, mono: &DPMonomial) -> Result<BTreeMap<DPMonomial, BigInt>> {
        let mut combo = BTreeMap::from([(mono.clone(), BigInt::one())]);
        self.apply_combo(beta, k, &mut combo)?;
        Ok(combo)
    }

    fn apply_combo(&self, beta: usize, k: u32, combo: &mut BTreeMap<DPMonomial, BigInt>) -> Result<()> {
        if beta >= self.nvars {
            return Err(Error::Domain(format!("root index {beta} out of range")));
        }
        for _ in 0..k {
            *combo = self.derive(beta, combo);
        }
        let f = factorial(k);
        for v in combo.values_mut() {
            let (q, r) = v.div_rem(&f);
            if !r.is_zero() {
                return Err(Error::Integrality(format!("divided power e^({k}) of root {beta} is not integral")));
            }
            *v = q;
        }
        Ok(())
    }
}

/// `e_β^{(k)} ∘ mono` for the given datum.
pub fn circ_action(datum: &RootDatum, beta: usize, k: u32, mono: &DPMonomial) -> Result<BTreeMap<DPMonomial, BigInt>> {
    CircAction::new(&ChevalleyBasis::new(datum)?)?.apply(beta, k, mono)
}

fn to_sparse(space: &MonomialSpace, combo: &BTreeMap<DPMonomial, BigInt>) -> SparseVec {
    SparseVec::from_pairs(combo.iter().map(|(m, c)| (space.index[m], c.clone())))
}

fn from_sparse(space: &MonomialSpace, v: &SparseVec) -> BTreeMap<DPMonomial, BigInt> {
    v.iter().map(|(i, c)| (space.monomials[i].clone(), c.clone())).collect()
}

/// Weight-blocked echelon bases in one degree.
struct BlockedLattice {
    blocks: BTreeMap<Weight, EchelonBasis>,
    dim: usize,
}

impl BlockedLattice {
    fn new(dim: usize) -> Self {
        BlockedLattice { blocks: BTreeMap::new(), dim }
    }

    fn insert(&mut self, w: Weight, v: &SparseVec) -> Result<bool> {
        let dim = self.dim;
        self.blocks.entry(w).or_insert_with(|| EchelonBasis::new(dim)).insert(v)
    }

    fn rows(&self) -> Vec<SparseVec> {
        self.blocks.values().flat_map(|b| b.to_lattice().basis().to_vec()).collect()
    }

    fn to_lattice(&self) -> Result<Lattice> {
        hnf(self.dim, &self.rows())
    }
}

/// Ideal generated by `f_α^{(⟨α∨,λ⟩+m)}` (`α` in the generating root set,
/// `m ≥ 1`), closed under the Borel action, in degrees `0..=up_to_degree`.
pub fn ffl_ideal(datum: &RootDatum, coeffs: &[i64], up_to_degree: u32, budget: &Budget) -> Result<Vec<IdealSlice>> {
    let lambda = datum.from_fundamental(coeffs)?;
    if !datum.is_dominant(&lambda)? {
        return Err(Error::Domain(format!("weight {coeffs:?} is not dominant")));
    }
    let circ = CircAction::new(&ChevalleyBasis::new(datum)?)?;
    let roots = datum.positive_roots();
    let nvars = roots.len();
    let generating: Vec<(usize, i64)> = rpp(datum)
        .iter()
        .map(|r| Ok((datum.root_index(r).unwrap(), datum.pairing(r, &lambda)?)))
        .collect::<Result<_>>()?;
    let mut spaces: Vec<MonomialSpace> = Vec::new();
    let mut slices: Vec<BlockedLattice> = Vec::new();
    for d in 0..=up_to_degree {
        budget.check("ffl_ideal")?;
        let space = MonomialSpace::new(datum, nvars, d);
        let mut ideal = BlockedLattice::new(space.dim());
        // Generators in this degree, closed under the Borel action.
        let mut queue: Vec<SparseVec> = Vec::new();
        for &(alpha, p) in &generating {
            if d as i64 > p {
                let g = SparseVec::unit(space.index[&DPMonomial::variable(nvars, alpha, d)]);
                if ideal.insert(space.weight_of(datum, &g).unwrap(), &g)? {
                    queue.push(g);
                }
            }
        }
        while let Some(g) = queue.pop() {
            budget.check("ffl_ideal")?;
            let combo = from_sparse(&space, &g);
            for beta in 0..nvars {
                for k in 1.. {
                    let mut c = combo.clone();
                    circ.apply_combo(beta, k, &mut c)?;
                    if c.is_empty() {
                        break;
                    }
                    let v = to_sparse(&space, &c);
                    if ideal.insert(space.weight_of(datum, &v).unwrap(), &v)? {
                        queue.push(v);
                    }
                }
            }
        }
        // Products with divided powers of single variables.
        for alpha in 0..nvars {
            for a in 1..=d {
                let lower = &spaces[(d - a) as usize];
                let var = DPMonomial::variable(nvars, alpha, a);
                for row in slices[(d - a) as usize].rows() {
                    let mut prod: BTreeMap<DPMonomial, BigInt> = BTreeMap::new();
                    for (i, c) in row.iter() {
                        let (k, m) = var.multiply(&lower.monomials[i]);
                        *prod.entry(m).or_insert_with(BigInt::zero) += k * c;
                    }
                    let v = to_sparse(&space, &prod);
                    ideal.insert(space.weight_of(datum, &v).unwrap(), &v)?;
                }
            }
        }
        spaces.push(space);
        slices.push(ideal);
    }
    slices.iter().enumerate().map(|(d, s)| Ok(IdealSlice { degree: d as u32, lattice: s.to_lattice()? })).collect()
}

/// How small-rank root vectors are matched with root vectors of the doubled
/// algebra acting on the Demazure module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identification {
    /// `f_α ↦ E_{φ(α)}` on the Demazure module at `Ψ(λ)`.
    Direct,
    /// `f_α ↦ E_{φ(α*)}` on the Demazure module at `Ψ(λ*)`.
    Dual,
}

/// Demazure lattice at `Ψ(λ)` or `Ψ(λ*)` for the special word of the datum.
pub fn demazure_for(datum: &RootDatum, coeffs: &[i64], ident: Identification, budget: &Budget) -> Result<DemazureModule> {
    let source = match ident {
        Identification::Direct => coeffs.to_vec(),
        Identification::Dual => dual_weight(datum, coeffs)?,
    };
    let parent = weyl_ambient(datum.doubled()?, &psi_coeffs(datum, &source)?)?;
    demazure_module(&parent, &tau_word(datum)?, budget)
}

/// The Demazure lattice as a graded cyclic module over the divided-power
/// algebra on the small positive roots.
pub fn demazure_graded(
    datum: &RootDatum,
    coeffs: &[i64],
    dm: &DemazureModule,
    ident: Identification,
) -> Result<GradedCyclicModule> {
    let doubled = dm.parent.datum();
    let real = &dm.parent.realization;
    let roots = datum.positive_roots();
    let lambda = datum.from_fundamental(coeffs)?;
    let var_index: Vec<usize> = roots
        .iter()
        .map(|r| {
            let source = match ident {
                Identification::Direct => *r,
                Identification::Dual => dual_root(datum, r),
            };
            Ok(doubled.root_index(&phi(datum, &source)?).unwrap())
        })
        .collect::<Result<_>>()?;
    let var_weights: Vec<Weight> = var_index.iter().map(|&i| doubled.root_weight(&doubled.positive_roots()[i])).collect();

    let base = dm.extremal_weight();
    let row_weights: Vec<Weight> = dm
        .lattice
        .basis()
        .iter()
        .map(|r| real.weight_of_vector(r).ok_or_else(|| Error::Internal("Demazure row is not a weight vector".into())))
        .collect::<Result<_>>()?;
    let needed: BTreeSet<Weight> = row_weights.iter().map(|w| w.sub(&base)).collect();

    // Enumerate sums of variable weights level by level.
    let mut decoded: BTreeMap<Weight, (usize, Weight)> = BTreeMap::new();
    let mut level: BTreeMap<Weight, Weight> = BTreeMap::from([(Weight::zero(base.eps.len()), Weight::zero(lambda.eps.len()))]);
    let mut deg = 0;
    while !level.is_empty() {
        for (shift, small) in &level {
            if let Some((d0, s0)) = decoded.get(shift) {
                if (*d0, s0) != (deg, small) {
                    return Err(Error::Decomposition(format!("weight shift {shift} has two decompositions")));
                }
            }
            decoded.insert(shift.clone(), (deg, small.clone()));
        }
        if needed.iter().all(|w| decoded.contains_key(w)) || deg > dm.rank() {
            break;
        }
        let mut next = BTreeMap::new();
        for (shift, small) in &level {
            for (v, r) in var_weights.iter().zip(roots) {
                let s = shift.add(v);
                let t = small.add(&datum.root_weight(r));
                if let Some(prev) = next.insert(s.clone(), t.clone()) {
                    if prev != t {
                        return Err(Error::Decomposition(format!("weight shift {s} has two decompositions")));
                    }
                }
            }
        }
        level = next;
        deg += 1;
    }
    let mut degree_of_row = Vec::with_capacity(row_weights.len());
    for w in &row_weights {
        let shift = w.sub(&base);
        let (d, _) = decoded
            .get(&shift)
            .ok_or_else(|| Error::Decomposition(format!("weight {w} is outside the cone of the root map")))?;
        degree_of_row.push(*d);
    }
    let top = degree_of_row.iter().copied().max().unwrap_or(0);
    let mut local = vec![0; row_weights.len()];
    let mut ranks = vec![0usize; top + 1];
    let mut character: BTreeMap<(Weight, usize), usize> = BTreeMap::new();
    for (i, (&d, w)) in degree_of_row.iter().zip(&row_weights).enumerate() {
        local[i] = ranks[d];
        ranks[d] += 1;
        let small = lambda.sub(&decoded[&w.sub(&base)].1);
        *character.entry((small, d)).or_insert(0) += 1;
    }
    if ranks.iter().any(|&r| r == 0) {
        return Err(Error::Decomposition("Demazure grading has an empty degree".into()));
    }
    let mut abelian_action = BTreeMap::new();
    for (var, &idx) in var_index.iter().enumerate() {
        for d in 0..=top {
            for m in 1..=(top - d) as u32 {
                let mut triples = Vec::new();
                for (row_idx, row) in dm.lattice.basis().iter().enumerate() {
                    if degree_of_row[row_idx] != d {
                        continue;
                    }
                    let y = real.apply(Generator::E(idx), m, row)?;
                    if y.is_zero() {
                        continue;
                    }
                    let c = dm
                        .lattice
                        .coordinates(&y)
                        .ok_or_else(|| Error::Internal("Demazure lattice is not stable".into()))?;
                    for (k, v) in c.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        if degree_of_row[k] != d + m as usize {
                            return Err(Error::Internal("root vector does not shift the Demazure degree".into()));
                        }
                        triples.push((local[k], local[row_idx], v.clone()));
                    }
                }
                let a = ExactMatrix::from_triples(ranks[d + m as usize], ranks[d], triples)?;
                if !a.is_zero() {
                    abelian_action.insert((var, m, d), a);
                }
            }
        }
    }
    Ok(GradedCyclicModule {
        variables: roots.to_vec(),
        pieces: ranks.iter().map(|&rank| GradedPiece { rank, torsion: Vec::new() }).collect(),
        abelian_action,
        character,
    })
}

/// Whether `gamma_roots(ρ)` equals the image of the root map and the root
/// map is injective.
pub fn verify_orbit_lemma(datum: &RootDatum) -> Result<bool> {
    let rho = vec![1; datum.lie_rank()];
    let gamma: BTreeSet<Root> = gamma_roots(datum, &rho)?.into_iter().collect();
    let image = phi_image(datum);
    Ok(gamma == image && image.len() == datum.positive_roots().len())
}

mod exact_ints {
    use num_bigint::BigInt;
    use num_traits::{Signed, ToPrimitive};
    use serde::ser::{SerializeSeq, Serializer};
    use serde::{Deserialize, Deserializer};

    const LIMIT: u64 = 1 << 53;

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [BigInt]);
        impl serde::Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for x in self.0 {
                    match x.to_i64() {
                        Some(v) if x.abs() < BigInt::from(LIMIT) => seq.serialize_element(&v)?,
                        _ => seq.serialize_element(&x.to_string())?,
                    }
                }
                seq.end()
            }
        }
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in rows {
            seq.serialize_element(&Row(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Int {
            Num(i64),
            Text(String),
        }
        let raw: Vec<Vec<Int>> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| match x {
                        Int::Num(v) => Ok(BigInt::from(v)),
                        Int::Text(t) => t.parse().map_err(serde::de::Error::custom),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Outcome of comparing the graded module of `λ` with the Demazure module.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub rank: usize,
    pub lambda: Vec<i64>,
    pub identification: Option<Identification>,
    pub weyl_rank: Option<usize>,
    pub graded_rank: Option<usize>,
    pub demazure_rank: Option<usize>,
    pub graded_dims: Vec<usize>,
    pub demazure_graded_dims: Vec<usize>,
    pub top_degree: Option<usize>,
    pub rank_equal: bool,
    pub ideal_equal: bool,
    pub character_equal: bool,
    pub ffl_equal: bool,
    /// Elementary divisors of each filtration step inside the next.
    #[serde(with = "exact_ints")]
    pub freeness_divisors: Vec<Vec<BigInt>>,
    pub free: bool,
    /// Graded ranks over `F_p` for each requested characteristic.
    pub mod_p_ranks: BTreeMap<u64, Vec<usize>>,
    pub orbit_lemma: bool,
    pub pass: bool,
}

impl VerificationReport {
    fn finish(&mut self) {
        let base = self.graded_dims.clone();
        let mod_p_ok = self.mod_p_ranks.values().all(|r| *r == base);
        self.pass = self.rank_equal
            && self.ideal_equal
            && self.character_equal
            && self.ffl_equal
            && self.free
            && self.orbit_lemma
            && mod_p_ok;
    }
}

fn with_partial<T>(r: Result<T>, report: &VerificationReport) -> Result<T> {
    r.map_err(|e| match e {
        Error::Budget { stage, .. } => Error::Budget { stage, partial: Some(Box::new(report.clone())) },
        other => other,
    })
}

/// Everything computed while checking one weight.
pub struct Verification {
    pub report: VerificationReport,
    pub graded: GradedCyclicModule,
    pub demazure: GradedCyclicModule,
    pub graded_ideal: Vec<IdealSlice>,
    pub demazure_ideal: Vec<IdealSlice>,
    pub ffl: Vec<IdealSlice>,
}

/// Compares the associated graded module of `λ` with the Demazure module of
/// the doubled datum under the given identification.
pub fn verify_with(
    datum: &RootDatum,
    coeffs: &[i64],
    ident: Identification,
    primes: &[u64],
    budget: &Budget,
) -> Result<Verification> {
    let mut report = VerificationReport {
        family: datum.family().to_string(),
        rank: datum.small_rank(),
        lambda: coeffs.to_vec(),
        identification: Some(ident),
        ..Default::default()
    };
    let v = with_partial(weyl_module(datum, coeffs, budget), &report)?;
    report.weyl_rank = Some(v.rank()?);
    let f = with_partial(pbw_filtration(&v, Side::Lower, budget), &report)?;
    report.freeness_divisors = f.quotient_divisors()?;
    report.free = report.freeness_divisors.iter().flatten().all(|d| d.is_one());
    let graded = with_partial(associated_graded(&f), &report)?;
    report.graded_rank = Some(graded.rank());
    report.graded_dims = graded.graded_dims();
    report.top_degree = Some(graded.top_degree());
    for &p in primes {
        report.mod_p_ranks.insert(p, crate::pbwdem::base_change_ranks(&graded, p)?);
    }
    report.orbit_lemma = verify_orbit_lemma(datum)?;

    let dm = with_partial(demazure_for(datum, coeffs, ident, budget), &report)?;
    report.demazure_rank = Some(dm.rank());
    let demazure = with_partial(demazure_graded(datum, coeffs, &dm, ident), &report)?;
    report.demazure_graded_dims = demazure.graded_dims();
    report.rank_equal = report.weyl_rank == report.demazure_rank && report.weyl_rank == report.graded_rank;
    report.character_equal = graded.character == demazure.character;

    let top = graded.top_degree().max(demazure.top_degree()) as u32 + 1;
    let graded_ideal = with_partial(annihilator_ideal(datum, &graded, top, budget), &report)?;
    let demazure_ideal = with_partial(annihilator_ideal(datum, &demazure, top, budget), &report)?;
    report.ideal_equal = graded_ideal == demazure_ideal;
    let ffl = with_partial(ffl_ideal(datum, coeffs, top, budget), &report)?;
    report.ffl_equal = ffl == graded_ideal;
    report.finish();
    Ok(Verification { report, graded, demazure, graded_ideal, demazure_ideal, ffl })
}

/// Full comparison for `λ`: the Demazure module at `Ψ(λ*)` with the dual
/// identification.
pub fn verify_main_theorem(datum: &RootDatum, coeffs: &[i64], budget: &Budget) -> Result<VerificationReport> {
    Ok(verify_with(datum, coeffs, Identification::Dual, &[0, 2, 3], budget)?.report)
}

/// `⟨α∨, λ⟩ = −⟨φ(α)∨, τΨ(λ)⟩` for every positive root.
pub fn pairing_identity_holds(datum: &RootDatum, coeffs: &[i64]) -> Result<bool> {
    let lambda = datum.from_fundamental(coeffs)?;
    let mu = crate::rootdata::tau_psi_weight(datum, coeffs)?;
    let doubled = datum.doubled()?;
    for r in datum.positive_roots() {
        if datum.pairing(r, &lambda)? != -doubled.pairing(&phi(datum, r)?, &mu)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, Family};

    #[test]
    fn dimension_formula_examples() {
        let a2 = RootDatum::single(Family::A, 3).unwrap();
        assert_eq!(weyl_dim_oracle(&a2, &[1, 0]).unwrap(), BigInt::from(3));
        assert_eq!(weyl_dim_oracle(&a2, &[1, 1]).unwrap(), BigInt::from(8));
        let c2 = RootDatum::single(Family::C, 2).unwrap();
        assert_eq!(weyl_dim_oracle(&c2, &[1, 1]).unwrap(), BigInt::from(16));
        assert!(weyl_dim_oracle(&c2, &[-1, 1]).is_err());
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(DPMonomial::enumerate(3, 2).len(), 6);
        assert_eq!(DPMonomial::enumerate(1, 4), vec![DPMonomial { exponents: vec![4] }]);
        let ms = DPMonomial::enumerate(2, 2);
        assert_eq!(ms[0].exponents, vec![2, 0]);
    }

    #[test]
    fn small_main_theorem_cases() {
        for (family, rank, coeffs) in [(Family::A, 2, vec![1]), (Family::A, 3, vec![1, 1]), (Family::C, 1, vec![1])] {
            let d = build_root_datum(family, rank).unwrap();
            let r = verify_main_theorem(&d, &coeffs, &Budget::unlimited()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
