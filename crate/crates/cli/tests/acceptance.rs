//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pbwdem_core::isocheck::{annihilator_ideal, verify_main_theorem, verify_orbit_lemma, weyl_dim_oracle};
use pbwdem_core::pbwdem::{associated_graded, demazure_module, extremal_vector, pbw_filtration, weyl_ambient, weyl_module};
use pbwdem_core::rootdata::{build_root_datum, gamma_roots, psi_coeffs, tau_permutation, tau_word};
use pbwdem_core::isocheck::pairing_identity_holds;
use pbwdem_core::{Budget, Family, RootDatum, Side, VerificationReport};

fn datum(family: Family, rank: usize) -> RootDatum {
    build_root_datum(family, rank).unwrap()
}

fn dominant_up_to(len: usize, max_sum: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                let used: i64 = p.iter().sum();
                (0..=max_sum - used).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

fn fundamental_multiple(len: usize, i: usize, ell: i64) -> Vec<i64> {
    let mut c = vec![0; len];
    c[i] = ell;
    c
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(start: Instant, limit: Duration, pass: bool, detail: String) -> Outcome {
    let elapsed = start.elapsed();
    let pass = pass && elapsed < limit;
    Outcome { pass, detail: format!("{detail}; {:.3}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()) }
}

fn special_permutation() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut pass = true;
    for n in 2..=6 {
        pass &= tau_word(&datum(Family::A, n)).unwrap().realized_permutation == tau_permutation(n);
        checked += 1;
    }
    for m in 1..=3 {
        pass &= tau_word(&datum(Family::C, m)).unwrap().realized_permutation == tau_permutation(2 * m);
        checked += 1;
    }
    within(start, Duration::from_secs(1), pass, format!("{checked} words"))
}

fn pairing_identity() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut pass = true;
    for d in [datum(Family::A, 2), datum(Family::A, 3), datum(Family::A, 4), datum(Family::C, 1), datum(Family::C, 2)] {
        for coeffs in dominant_up_to(d.lie_rank(), 3) {
            pass &= pairing_identity_holds(&d, &coeffs).unwrap();
            checked += 1;
        }
    }
    within(start, Duration::from_secs(1), pass, format!("{checked} weights"))
}

fn fundamental_cases() -> Vec<(RootDatum, Vec<i64>)> {
    let mut out = Vec::new();
    for d in [datum(Family::A, 2), datum(Family::A, 3), datum(Family::A, 4), datum(Family::C, 1), datum(Family::C, 2)] {
        for i in 0..d.lie_rank() {
            for ell in 1..=3 {
                out.push((d.clone(), fundamental_multiple(d.lie_rank(), i, ell)));
            }
        }
    }
    out
}

fn demazure_ranks() -> Outcome {
    let budget = Budget::unlimited();
    let mut pass = true;
    let mut largest = 0;
    let cases = fundamental_cases();
    for (d, coeffs) in &cases {
        let parent = weyl_ambient(d.doubled().unwrap(), &psi_coeffs(d, coeffs).unwrap()).unwrap();
        largest = largest.max(parent.realization.dim());
        let dm = demazure_module(&parent, &tau_word(d).unwrap(), &budget).unwrap();
        let weyl = weyl_module(d, coeffs, &budget).unwrap().rank().unwrap();
        pass &= dm.rank() == weyl && weyl_dim_oracle(d, coeffs).unwrap() == weyl.into();
    }
    Outcome { pass, detail: format!("{} fundamental multiples, largest ambient {largest}", cases.len()) }
}

fn theorem_cases() -> Vec<(RootDatum, Vec<i64>)> {
    let mut out = Vec::new();
    for (family, rank, max_sum) in
        [(Family::A, 2, 3), (Family::A, 3, 3), (Family::A, 4, 2), (Family::C, 1, 2), (Family::C, 2, 2)]
    {
        let d = datum(family, rank);
        for coeffs in dominant_up_to(d.lie_rank(), max_sum) {
            out.push((d.clone(), coeffs));
        }
    }
    out
}

fn extremal_vectors() -> Outcome {
    let mut pass = true;
    let cases = fundamental_cases();
    for (d, coeffs) in &cases {
        let n = match d.family() {
            Family::A => d.small_rank(),
            Family::C => 2 * d.small_rank(),
        };
        let (i, ell) = coeffs.iter().enumerate().find(|(_, &a)| a > 0).map(|(k, &a)| (k + 1, a as usize)).unwrap();
        let parent = weyl_ambient(d.doubled().unwrap(), &psi_coeffs(d, coeffs).unwrap()).unwrap();
        let v = extremal_vector(&parent, &tau_word(d).unwrap()).unwrap();
        let factor: Vec<usize> = (1..=i).chain(n + 1..=n + i).collect();
        let target = parent.realization.index_of(&vec![factor; ell]).unwrap();
        pass &= v.nnz() == 1 && i64::try_from(&v.get(target)).is_ok_and(|x| x.abs() == 1);
    }
    Outcome { pass, detail: format!("{} fundamental multiples", cases.len()) }
}

fn orbit_lemma() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    for n in 2..=6 {
        pass &= verify_orbit_lemma(&datum(Family::A, n)).unwrap();
    }
    for m in 1..=3 {
        pass &= verify_orbit_lemma(&datum(Family::C, m)).unwrap();
    }
    within(start, Duration::from_secs(1), pass, "A n=2..6, C m=1..3".into())
}

fn support_independence() -> Outcome {
    let d = datum(Family::A, 3);
    let budget = Budget::unlimited();
    let slice = |coeffs: &[i64]| {
        let v = weyl_module(&d, coeffs, &budget).unwrap();
        let g = associated_graded(&pbw_filtration(&v, Side::Lower, &budget).unwrap()).unwrap();
        annihilator_ideal(&d, &g, 1, &budget).unwrap().remove(1)
    };
    let (a, b) = (slice(&[1, 1]), slice(&[2, 1]));
    let gamma = |coeffs: &[i64]| gamma_roots(&d, coeffs).unwrap().into_iter().collect::<BTreeSet<_>>();
    let pass = a == b && a.lattice.rank() == 0 && gamma(&[1, 1]) == gamma(&[2, 1]);
    Outcome { pass, detail: "degree-1 slices zero and equal, orbit root sets equal".into() }
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_pbwdem"))
            .args(["--family", "A", "--rank", "3", "--weights", "grid:maxsum=3", "--canonical", "--jobs", jobs, "verify"])
            .env_remove("PBWDEM_BUDGET_MS")
            .output()
            .expect("run pbwdem")
    };
    let one = run("1");
    let eight = run("8");
    let pass = one.status.success() && eight.status.success() && one.stdout == eight.stdout && !one.stdout.is_empty();
    Outcome { pass, detail: format!("{} bytes, --jobs 1 vs --jobs 8", one.stdout.len()) }
}

fn report_line(criterion: usize, name: &str, outcome: &Outcome) -> bool {
    println!("criterion {criterion:>2} {:<4} {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.detail);
    outcome.pass
}

fn main() -> ExitCode {
    let theorem_start = Instant::now();
    let reports: Vec<(Vec<i64>, VerificationReport)> = theorem_cases()
        .into_iter()
        .map(|(d, coeffs)| {
            let r = verify_main_theorem(&d, &coeffs, &Budget::unlimited()).unwrap();
            (coeffs, r)
        })
        .collect();
    let theorem_secs = theorem_start.elapsed().as_secs_f64();
    let count = reports.len();
    let failing = |f: &dyn Fn(&VerificationReport) -> bool| -> Outcome {
        let bad: Vec<String> = reports
            .iter()
            .filter(|(_, r)| !f(r))
            .map(|(c, r)| format!("{}{}{c:?}", r.family, r.rank))
            .collect();
        Outcome { pass: bad.is_empty(), detail: format!("{count} cases, {} failing {bad:?}; {theorem_secs:.1}s total", bad.len()) }
    };

    let results = [
        report_line(1, "special permutation", &special_permutation()),
        report_line(2, "pairing identity", &pairing_identity()),
        report_line(3, "Demazure ranks", &demazure_ranks()),
        report_line(
            4,
            "graded module vs Demazure module",
            &failing(&|r| r.rank_equal && r.ideal_equal && r.character_equal),
        ),
        report_line(5, "ideal presentation", &failing(&|r| r.ffl_equal)),
        report_line(
            6,
            "freeness and base change",
            &failing(&|r| r.free && r.mod_p_ranks.values().all(|ranks| *ranks == r.graded_dims)),
        ),
        report_line(7, "orbit combinatorics", &orbit_lemma()),
        report_line(8, "extremal vectors", &extremal_vectors()),
        report_line(9, "support independence", &support_independence()),
        report_line(10, "determinism", &determinism()),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
