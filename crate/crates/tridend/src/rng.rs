//! Seeded randomness for the verification suite.
//!
//! The generator is PCG-XSH-RR with 64-bit state and 32-bit output
//! (`rand_pcg::Pcg32`), seeded through `SeedableRng::seed_from_u64`. The same
//! seed gives the same samples on every platform.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;
use tridend_core::linalg::Q;
use tridend_core::series::TriBasis;
use tridend_core::{MatSeq, Matrix, TriSeries};

pub type SuiteRng = Pcg32;

pub fn seeded(seed: u64) -> SuiteRng {
    Pcg32::seed_from_u64(seed)
}

/// `p/q` with `p ∈ [−5, 5]`, `q ∈ [1, 4]`.
pub fn rational(rng: &mut SuiteRng) -> Q {
    Q::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=4)))
}

pub fn matrix(rng: &mut SuiteRng, dim: usize) -> Matrix {
    let rows = (0..dim).map(|_| (0..dim).map(|_| rational(rng)).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

pub fn matseq(rng: &mut SuiteRng, dim: usize, horizon: usize) -> MatSeq {
    MatSeq::new(dim, (0..horizon).map(|_| matrix(rng, dim)).collect()).expect("uniform dimension")
}

/// One to three terms of degree at most `max_degree`, drawn from
/// `basis[n]` (the elements of degree `n`).
pub fn series<B: TriBasis>(rng: &mut SuiteRng, basis: &[Vec<B>], max_degree: usize, truncation: usize) -> TriSeries<B> {
    let terms = rng.gen_range(1..=3);
    let items: Vec<(B, Q)> = (0..terms)
        .map(|_| {
            let n = rng.gen_range(1..=max_degree);
            (basis[n].choose(rng).expect("non-empty degree").clone(), rational(rng))
        })
        .collect();
    TriSeries::from_terms(Q::from_integer(0.into()), items, truncation)
}

/// Three unit-free series, each of degree at most `cap`, whose degrees sum
/// to at most `total`.
pub fn triple<B: TriBasis>(rng: &mut SuiteRng, basis: &[Vec<B>], cap: usize, total: usize) -> [TriSeries<B>; 3] {
    loop {
        let d: [usize; 3] = [rng.gen_range(1..=cap), rng.gen_range(1..=cap), rng.gen_range(1..=cap)];
        if d.iter().sum::<usize>() <= total {
            return d.map(|k| series(rng, basis, k, total));
        }
    }
}
