mod common;

use common::Mv;
use num_traits::Zero;
use proptest::prelude::*;
use spectral_torsion::clifford::Multivector;
use spectral_torsion::scalar::{rat, rational_to_f64, GaussianRational, Monomial, SymScalar};
use spectral_torsion::sphere::{
    integrate_sphere, moment, moment_coefficient, vol_atom, vol_numeric, XiMonomial, XiPolynomialMV,
};
use statrs::distribution::{ContinuousCDF, Normal};

fn vol(n: usize, c: spectral_torsion::scalar::Rational) -> SymScalar {
    SymScalar::term(GaussianRational::real(c), Monomial::from_atoms([vol_atom(n)]))
}

#[test]
fn second_moments_are_kronecker_deltas() {
    for n in [2usize, 4, 6, 8] {
        for i in 1..=n {
            for j in 1..=n {
                let alpha = XiMonomial::coordinate(n, i).mul(&XiMonomial::coordinate(n, j)).unwrap();
                let expected = if i == j { vol(n, rat(1, n as i64)) } else { SymScalar::default() };
                assert_eq!(moment(n, &alpha).unwrap(), expected, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn quadratic_symbol_integrates_to_volume() {
    for n in [2usize, 4, 6, 8] {
        let mut p = XiPolynomialMV::<GaussianRational>::zero(n, n);
        for i in 1..=n {
            let alpha = XiMonomial::coordinate(n, i).mul(&XiMonomial::coordinate(n, i)).unwrap();
            p.add_term(alpha, Mv::one(n)).unwrap();
        }
        let expected = Multivector::<SymScalar>::scalar(n, vol(n, rat(1, 1)));
        assert_eq!(integrate_sphere(n, &p).unwrap(), expected);
    }
}

#[test]
fn clifford_symbol_squares_to_minus_norm() {
    for n in [2usize, 4, 6] {
        let c = XiPolynomialMV::<GaussianRational>::clifford_xi(n, n);
        let sq = c.try_mul(&c).unwrap();
        let integrated = integrate_sphere(n, &sq).unwrap();
        assert_eq!(integrated, Multivector::<SymScalar>::scalar(n, vol(n, rat(-1, 1))));
    }
}

fn exponents(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=4, n)
}

proptest! {
    #[test]
    fn odd_moments_vanish(mut alpha in exponents(6), k in 0usize..6) {
        if alpha[k] % 2 == 0 {
            alpha[k] += 1;
        }
        prop_assert!(moment(6, &XiMonomial::new(alpha)).unwrap().is_zero());
    }

    #[test]
    fn moments_respect_the_unit_norm(alpha in exponents(4)) {
        // Σ_i ∫ ξ^α ξ_i² = ∫ ξ^α on the unit sphere
        let base = XiMonomial::new(alpha);
        let total = (1..=4).fold(rat(0, 1), |acc, i| {
            let sq = XiMonomial::coordinate(4, i).mul(&XiMonomial::coordinate(4, i)).unwrap();
            acc + moment_coefficient(&base.mul(&sq).unwrap())
        });
        prop_assert_eq!(total, moment_coefficient(&base));
    }

    #[test]
    fn moments_are_symmetric_under_permutation(alpha in exponents(6), shift in 0usize..6) {
        let mut rotated = alpha.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(
            moment_coefficient(&XiMonomial::new(alpha)),
            moment_coefficient(&XiMonomial::new(rotated))
        );
    }
}

#[test]
fn sphere_volumes() {
    let pi = std::f64::consts::PI;
    assert!((vol_numeric(1) - 2.0 * pi).abs() < 1e-12);
    assert!((vol_numeric(2) - 4.0 * pi).abs() < 1e-12);
    assert!((vol_numeric(3) - 2.0 * pi * pi).abs() < 1e-12);
    assert!((vol_numeric(5) - pi.powi(3)).abs() < 1e-12);
}

/// Quasi-Monte-Carlo estimate of `∫_{S^3} ξ^α σ(ξ)`: Halton points mapped to
/// Gaussian vectors through the inverse normal CDF, then normalized.
fn halton_moment(alphas: &[[u32; 4]], points: usize) -> Vec<f64> {
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut streams: Vec<_> = [2u8, 3, 5, 7].iter().map(|&b| halton::Sequence::new(b).skip(1)).collect();
    let mut sums = vec![0.0; alphas.len()];
    for _ in 0..points {
        let g: Vec<f64> = streams.iter_mut().map(|s| normal.inverse_cdf(s.next().unwrap())).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let xi: Vec<f64> = g.iter().map(|x| x / norm).collect();
        for (sum, alpha) in sums.iter_mut().zip(alphas) {
            *sum += XiMonomial::new(alpha.to_vec()).eval(&xi);
        }
    }
    sums.iter().map(|s| s / points as f64 * vol_numeric(3)).collect()
}

#[test]
fn quasi_monte_carlo_agrees_with_closed_form() {
    let alphas = [[2, 0, 0, 0], [2, 2, 0, 0], [4, 0, 0, 0], [2, 2, 2, 0], [0, 4, 2, 0], [6, 0, 0, 0], [2, 0, 2, 2]];
    let estimates = halton_moment(&alphas, 1_000_000);
    for (alpha, estimate) in alphas.iter().zip(estimates) {
        let exact = rational_to_f64(&moment_coefficient(&XiMonomial::new(alpha.to_vec()))) * vol_numeric(3);
        let rel = (estimate - exact).abs() / exact;
        assert!(rel < 0.01, "alpha={alpha:?} exact={exact} estimate={estimate} rel={rel}");
    }
}
