//! Per-weight computations and their JSON records.

use std::fmt::Display;
use std::time::Instant;

use pbwdem_core::isocheck::{
    annihilator_ideal, demazure_for, demazure_graded, ffl_ideal, verify_with, weyl_dim_oracle, Identification,
};
use pbwdem_core::pbwdem::{associated_graded, pbw_filtration, weyl_module};
use pbwdem_core::rootdata::{classify_root, phi, psi_coeffs, rpp, tau_permutation, tau_word};
use pbwdem_core::{Budget, Error, Family, GradedCyclicModule, IdealSlice, Lattice, RootDatum, Side};
use serde_json::{json, Map, Value};

/// Options shared by every case of one run.
#[derive(Clone, Debug)]
pub struct CaseOptions {
    pub primes: Vec<u64>,
    pub max_degree: Option<u32>,
    pub dump_basis: bool,
    pub canonical: bool,
    pub budget_ms: Option<u64>,
}

impl CaseOptions {
    fn budget(&self) -> Budget {
        self.budget_ms.map_or_else(Budget::unlimited, Budget::millis)
    }
}

/// Outcome of one case.
pub struct CaseRecord {
    pub lambda: Vec<i64>,
    pub value: Value,
    pub pass: bool,
    pub skipped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Module,
    Demazure,
    Ideal,
    Verify,
}

/// JSON number below 2^53, decimal string otherwise.
pub fn int_json<T>(x: &T) -> Value
where
    T: Display,
    for<'a> i64: TryFrom<&'a T>,
{
    match i64::try_from(x) {
        Ok(v) if v.unsigned_abs() < (1u64 << 53) => json!(v),
        _ => json!(x.to_string()),
    }
}

fn lattice_rows(l: &Lattice) -> Value {
    Value::Array(l.basis_dense().iter().map(|r| Value::Array(r.iter().map(int_json).collect())).collect())
}

fn character_json(module: &GradedCyclicModule) -> Value {
    Value::Array(
        module
            .character
            .iter()
            .map(|((w, d), r)| json!({"weight": w.eps, "degree": d, "rank": r}))
            .collect(),
    )
}

fn slices_json(slices: &[IdealSlice], dump: bool) -> Value {
    Value::Array(
        slices
            .iter()
            .map(|s| {
                let mut m = Map::new();
                m.insert("degree".into(), json!(s.degree));
                m.insert("rank".into(), json!(s.lattice.rank()));
                m.insert("ambient".into(), json!(s.lattice.ambient_dim()));
                if dump {
                    m.insert("basis".into(), lattice_rows(&s.lattice));
                }
                Value::Object(m)
            })
            .collect(),
    )
}

/// Root-system tables of a datum.
pub fn rootinfo(datum: &RootDatum) -> pbwdem_core::Result<Value> {
    let n = match datum.family() {
        Family::A => datum.small_rank(),
        Family::C => 2 * datum.small_rank(),
    };
    let psi: Vec<Value> = (0..datum.lie_rank())
        .map(|i| {
            let mut coeffs = vec![0; datum.lie_rank()];
            coeffs[i] = 1;
            Ok(json!({"fundamental": i + 1, "image": psi_coeffs(datum, &coeffs)?}))
        })
        .collect::<pbwdem_core::Result<_>>()?;
    let phi_table: Vec<Value> = datum
        .positive_roots()
        .iter()
        .map(|r| Ok(json!({"root": r.to_string(), "image": phi(datum, r)?.to_string()})))
        .collect::<pbwdem_core::Result<_>>()?;
    let types: Vec<Value> = datum
        .doubled()?
        .positive_roots()
        .iter()
        .map(|r| Ok(json!({"root": r.to_string(), "type": classify_root(datum, r)?})))
        .collect::<pbwdem_core::Result<_>>()?;
    Ok(json!({
        "family": datum.family().to_string(),
        "rank": datum.small_rank(),
        "tau_one_line": tau_permutation(n),
        "tau_word": tau_word(datum)?.letters,
        "psi": psi,
        "phi": phi_table,
        "rpp": rpp(datum).iter().map(ToString::to_string).collect::<Vec<_>>(),
        "root_types": types,
        "orbit_lemma": pbwdem_core::isocheck::verify_orbit_lemma(datum)?,
    }))
}

/// Runs one subcommand on one weight. Budget exhaustion becomes a skipped
/// record; other library errors become failed records.
pub fn run_case(command: Command, datum: &RootDatum, lambda: &[i64], opts: &CaseOptions) -> CaseRecord {
    let start = Instant::now();
    let result = match command {
        Command::Module => module_case(datum, lambda, opts),
        Command::Demazure => demazure_case(datum, lambda, opts),
        Command::Ideal => ideal_case(datum, lambda, opts),
        Command::Verify => verify_case(datum, lambda, opts),
    };
    let (mut value, pass, skipped) = match result {
        Ok((v, pass)) => (v, pass, false),
        Err(Error::Budget { stage, partial }) => {
            let mut m = Map::new();
            m.insert("status".into(), json!("skipped:budget"));
            m.insert("stage".into(), json!(stage));
            if let Some(p) = partial {
                m.insert("partial".into(), serde_json::to_value(&*p).unwrap_or(Value::Null));
            }
            (Value::Object(m), false, true)
        }
        Err(e) => (json!({"status": format!("error: {e}")}), false, false),
    };
    let obj = value.as_object_mut().expect("case records are objects");
    obj.insert("lambda".into(), json!(lambda));
    obj.insert("pass".into(), json!(pass));
    obj.entry("status").or_insert_with(|| json!(if pass { "pass" } else { "fail" }));
    if !opts.canonical {
        obj.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    CaseRecord { lambda: lambda.to_vec(), value, pass, skipped }
}

fn module_case(datum: &RootDatum, lambda: &[i64], opts: &CaseOptions) -> pbwdem_core::Result<(Value, bool)> {
    let budget = opts.budget();
    let v = weyl_module(datum, lambda, &budget)?;
    let f = pbw_filtration(&v, Side::Lower, &budget)?;
    let divisors = f.quotient_divisors()?;
    let free = divisors.iter().flatten().all(|d| *d == 1.into());
    let g = associated_graded(&f)?;
    let mut m = Map::new();
    m.insert("weyl_rank".into(), json!(v.rank()?));
    m.insert("ambient_dim".into(), json!(v.realization.dim()));
    m.insert("graded_dims".into(), json!(g.graded_dims()));
    m.insert("top_degree".into(), json!(g.top_degree()));
    m.insert("free".into(), json!(free));
    m.insert(
        "freeness_divisors".into(),
        Value::Array(divisors.iter().map(|r| Value::Array(r.iter().map(int_json).collect())).collect()),
    );
    m.insert("character".into(), character_json(&g));
    if opts.dump_basis {
        m.insert("basis".into(), lattice_rows(v.lattice()?));
    }
    Ok((Value::Object(m), free && g.rank() == v.rank()?))
}

fn demazure_case(datum: &RootDatum, lambda: &[i64], opts: &CaseOptions) -> pbwdem_core::Result<(Value, bool)> {
    let budget = opts.budget();
    let dm = demazure_for(datum, lambda, Identification::Dual, &budget)?;
    let graded = demazure_graded(datum, lambda, &dm, Identification::Dual)?;
    let oracle = weyl_dim_oracle(datum, lambda)?;
    let stable = dm.is_borel_stable()?;
    let mut m = Map::new();
    m.insert("rank".into(), json!(dm.rank()));
    m.insert("oracle_rank".into(), int_json(&oracle));
    m.insert("ambient_dim".into(), json!(dm.parent.realization.dim()));
    m.insert("parent_weight".into(), json!(dm.parent.coeffs));
    m.insert("word".into(), json!(dm.word.letters));
    m.insert("extremal_weight".into(), json!(dm.extremal_weight().eps));
    m.insert("borel_stable".into(), json!(stable));
    m.insert("graded_dims".into(), json!(graded.graded_dims()));
    m.insert("character".into(), character_json(&graded));
    if opts.dump_basis {
        m.insert("basis".into(), lattice_rows(&dm.lattice));
    }
    Ok((Value::Object(m), stable && oracle == dm.rank().into()))
}

fn ideal_case(datum: &RootDatum, lambda: &[i64], opts: &CaseOptions) -> pbwdem_core::Result<(Value, bool)> {
    let budget = opts.budget();
    let v = weyl_module(datum, lambda, &budget)?;
    let g = associated_graded(&pbw_filtration(&v, Side::Lower, &budget)?)?;
    let top = opts.max_degree.unwrap_or(g.top_degree() as u32 + 1);
    let ann = annihilator_ideal(datum, &g, top, &budget)?;
    let ffl = ffl_ideal(datum, lambda, top, &budget)?;
    let equal = ann == ffl;
    let mut m = Map::new();
    m.insert("max_degree".into(), json!(top));
    m.insert("annihilator".into(), slices_json(&ann, opts.dump_basis));
    m.insert("ffl".into(), slices_json(&ffl, opts.dump_basis));
    m.insert("ffl_equal".into(), json!(equal));
    Ok((Value::Object(m), equal))
}

fn verify_case(datum: &RootDatum, lambda: &[i64], opts: &CaseOptions) -> pbwdem_core::Result<(Value, bool)> {
    let budget = opts.budget();
    let ver = verify_with(datum, lambda, Identification::Dual, &opts.primes, &budget)?;
    let r = &ver.report;
    let full = serde_json::to_value(r).map_err(|e| Error::Internal(e.to_string()))?;
    let mut m = Map::new();
    m.insert("ranks".into(), json!({"weyl": r.weyl_rank, "graded": r.graded_rank, "demazure": r.demazure_rank}));
    for key in [
        "graded_dims",
        "demazure_graded_dims",
        "top_degree",
        "rank_equal",
        "ideal_equal",
        "character_equal",
        "ffl_equal",
        "free",
        "freeness_divisors",
        "mod_p_ranks",
        "orbit_lemma",
    ] {
        m.insert(key.into(), full[key].clone());
    }
    if opts.dump_basis {
        m.insert("annihilator".into(), slices_json(&ver.graded_ideal, true));
    }
    Ok((Value::Object(m), r.pass))
}
