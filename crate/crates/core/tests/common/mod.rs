#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;
use tridend_core::linalg::Q;
use tridend_core::{MatSeq, Matrix};

pub fn rng(seed: u64) -> Pcg32 {
    Pcg32::seed_from_u64(seed)
}

pub fn rational(rng: &mut Pcg32) -> Q {
    Q::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=4)))
}

pub fn matrix(rng: &mut Pcg32, dim: usize) -> Matrix {
    let rows = (0..dim).map(|_| (0..dim).map(|_| rational(rng)).collect()).collect();
    Matrix::from_rows(rows).unwrap()
}

pub fn matseq(rng: &mut Pcg32, dim: usize, horizon: usize) -> MatSeq {
    MatSeq::new(dim, (0..horizon).map(|_| matrix(rng, dim)).collect()).unwrap()
}

use rand::seq::SliceRandom;
use tridend_core::series::TriBasis;
use tridend_core::TriSeries;

/// Three unit-free series with maximal degrees summing to at most `total`,
/// each at most `cap`, drawn from `basis[n]` (basis elements of degree `n`).
pub fn triple<B: TriBasis>(rng: &mut Pcg32, basis: &[Vec<B>], cap: usize, total: usize) -> [TriSeries<B>; 3] {
    loop {
        let degs: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=cap)).collect();
        if degs.iter().sum::<usize>() <= total {
            let mut it = degs.into_iter().map(|d| series(rng, basis, d, total));
            return [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        }
    }
}

pub fn series<B: TriBasis>(rng: &mut Pcg32, basis: &[Vec<B>], max_degree: usize, truncation: usize) -> TriSeries<B> {
    let terms = rng.gen_range(1..=3);
    let items: Vec<(B, Q)> = (0..terms)
        .map(|_| {
            let n = rng.gen_range(1..=max_degree);
            (basis[n].choose(rng).unwrap().clone(), rational(rng))
        })
        .collect();
    TriSeries::from_terms(Q::from_integer(BigInt::from(0)), items, truncation)
}
