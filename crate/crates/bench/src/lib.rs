//! Benchmark fixtures.

use pbwdem_core::rootdata::build_root_datum;
use pbwdem_core::{Family, RootDatum};

/// A named datum with one dominant weight in fundamental coordinates.
pub struct Fixture {
    pub name: &'static str,
    pub datum: RootDatum,
    pub lambda: Vec<i64>,
}

fn fixture(name: &'static str, family: Family, rank: usize, lambda: &[i64]) -> Fixture {
    Fixture { name, datum: build_root_datum(family, rank).expect("valid rank"), lambda: lambda.to_vec() }
}

/// Small and medium cases shared by the benches.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        fixture("A3_adjoint", Family::A, 3, &[1, 1]),
        fixture("A3_3w1", Family::A, 3, &[3, 0]),
        fixture("A4_w1_w3", Family::A, 4, &[1, 0, 1]),
        fixture("A4_2w2", Family::A, 4, &[0, 2, 0]),
        fixture("C2_w1_w2", Family::C, 2, &[1, 1]),
    ]
}
