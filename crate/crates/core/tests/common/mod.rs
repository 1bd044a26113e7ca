#![allow(dead_code)]

use proptest::prelude::*;
use spectral_torsion::clifford::{Blade, Multivector};
use spectral_torsion::forms::{OneForm, ThreeForm};
use spectral_torsion::scalar::{rat, GaussianRational, Rational};

pub type Mv = Multivector<GaussianRational>;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

pub fn multivector(n: usize, max_terms: usize) -> impl Strategy<Value = Mv> {
    prop::collection::vec((0u32..(1u32 << n), gaussian()), 0..=max_terms).prop_map(move |terms| {
        let mut out = Mv::zero(n);
        for (mask, c) in terms {
            out.add_term(Blade(mask), c);
        }
        out
    })
}

pub fn one_form(n: usize) -> impl Strategy<Value = OneForm> {
    prop::collection::vec(rational(), n).prop_map(OneForm::new)
}

/// Sparse 3-form with up to `max_terms` nonzero components.
pub fn three_form(n: usize, max_terms: usize) -> impl Strategy<Value = ThreeForm> {
    prop::collection::vec((1..=n, 1..=n, 1..=n, rational()), 0..=max_terms).prop_map(move |entries| {
        let mut t = ThreeForm::zero(n);
        for (a, b, c, v) in entries {
            let mut idx = [a, b, c];
            idx.sort_unstable();
            if idx[0] < idx[1] && idx[1] < idx[2] {
                t.set(idx[0], idx[1], idx[2], v).unwrap();
            }
        }
        t
    })
}

/// Block-diagonal rotation built from Pythagorean triples; orthogonal with
/// determinant one and rational entries.
pub fn rotation(n: usize, triples: &[(i64, i64, i64)]) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![rat(0, 1); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = rat(1, 1);
    }
    for (block, &(a, b, c)) in triples.iter().enumerate().take(n / 2) {
        let (i, j) = (2 * block, 2 * block + 1);
        rows[i][i] = rat(a, c);
        rows[i][j] = rat(-b, c);
        rows[j][i] = rat(b, c);
        rows[j][j] = rat(a, c);
    }
    rows
}

/// Rotation mixing coordinates across blocks: a block rotation followed by a
/// shifted block rotation.
pub fn mixing_rotation(n: usize) -> Vec<Vec<Rational>> {
    let first = rotation(n, &[(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)]);
    let mut shifted = vec![vec![rat(0, 1); n]; n];
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] = rat(1, 1);
    }
    let (a, b, c) = (20, 21, 29);
    for block in 0..(n - 1) / 2 {
        let (i, j) = (2 * block + 1, 2 * block + 2);
        shifted[i][i] = rat(a, c);
        shifted[i][j] = rat(-b, c);
        shifted[j][i] = rat(b, c);
        shifted[j][j] = rat(a, c);
    }
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(rat(0, 1), |acc, k| acc + &shifted[i][k] * &first[k][j])).collect())
        .collect()
}

/// Deterministic runner for drawing samples outside a `proptest!` block.
pub fn runner(seed: u64, salt: u64) -> proptest::test_runner::TestRunner {
    use proptest::test_runner::{RngAlgorithm, TestRng, TestRunner};
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&salt.to_le_bytes());
    TestRunner::new_with_rng(ProptestConfig::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

pub fn sample<S: Strategy>(strategy: &S, runner: &mut proptest::test_runner::TestRunner) -> S::Value {
    use proptest::strategy::ValueTree;
    strategy.new_tree(runner).expect("strategy yields a value").current()
}
