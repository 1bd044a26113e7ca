//! Exact monomial integrals over the unit sphere `S^{n-1}` with the
//! unnormalized surface measure, applied coefficientwise to Clifford-valued
//! polynomials in `ξ`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Monomial, Rational, Scalar, SymAtom, SymScalar};

/// `ξ^α = ξ_1^{α_1}…ξ_n^{α_n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XiMonomial {
    exponents: Vec<u32>,
}

impl XiMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(dim: usize) -> Self {
        Self { exponents: vec![0; dim] }
    }

    /// `ξ_i`, 1-based.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut out = Self::one(dim);
        out.exponents[i - 1] = 1;
        out
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(Self { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() })
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        self.exponents.iter().zip(point).map(|(&a, &x)| x.powi(a as i32)).product()
    }
}

impl fmt::Debug for XiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("ξ{}", i + 1) } else { format!("ξ{}^{a}", i + 1) })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

fn double_factorial_odd(k: u32) -> Rational {
    // (2j-1)!! for k = 2j
    let mut acc = Rational::one();
    let mut f = k as i64 - 1;
    while f > 1 {
        acc *= Rational::from_integer(f.into());
        f -= 2;
    }
    acc
}

/// Rational factor `c` with `∫_{S^{n-1}} ξ^α = c · vol(S^{n-1})`.
pub fn moment_coefficient(alpha: &XiMonomial) -> Rational {
    if alpha.exponents.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let n = alpha.dim() as i64;
    let k = alpha.degree() as i64 / 2;
    let num = alpha.exponents.iter().fold(Rational::one(), |acc, &a| acc * double_factorial_odd(a));
    let den = (0..k).fold(Rational::one(), |acc, j| acc * Rational::from_integer((n + 2 * j).into()));
    num / den
}

/// `∫_{|ξ|=1} ξ^α σ(ξ)` as a multiple of `vol(S^{n-1})`.
pub fn moment(n: usize, alpha: &XiMonomial) -> Result<SymScalar> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("sphere moments need n >= 2, got {n}")));
    }
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: alpha.dim() });
    }
    let c = moment_coefficient(alpha);
    if c.is_zero() {
        return Ok(SymScalar::zero());
    }
    Ok(SymScalar::term(GaussianRational::real(c), Monomial::from_atoms([vol_atom(n)])))
}

/// `vol(S^{n-1})`, the atom for the sphere of a dimension-`n` fiber.
pub fn vol_atom(n: usize) -> SymAtom {
    SymAtom::VolSphere((n - 1) as u32)
}

/// `2π^{(k+1)/2} / Γ((k+1)/2)`.
pub fn vol_numeric(k: u32) -> f64 {
    let h = (k as f64 + 1.0) / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / statrs::function::gamma::gamma(h)
}

/// `Σ_α ξ^α · M_α` with Clifford coefficients.
#[derive(Clone, PartialEq)]
pub struct XiPolynomialMV<C = GaussianRational> {
    xi_dim: usize,
    cl_dim: usize,
    terms: BTreeMap<XiMonomial, Multivector<C>>,
}

impl<C: Scalar> XiPolynomialMV<C> {
    /// Polynomial in `xi_dim` variables with coefficients in `Cl(cl_dim)`.
    pub fn zero(xi_dim: usize, cl_dim: usize) -> Self {
        Self { xi_dim, cl_dim, terms: BTreeMap::new() }
    }

    pub fn constant(xi_dim: usize, m: Multivector<C>) -> Self {
        let mut out = Self::zero(xi_dim, m.dim());
        out.add_term(XiMonomial::one(xi_dim), m).expect("dims agree by construction");
        out
    }

    /// `c(ξ) = Σ_l ξ_l c(e_l)` over the first `xi_dim` generators.
    pub fn clifford_xi(xi_dim: usize, cl_dim: usize) -> Self {
        let mut out = Self::zero(xi_dim, cl_dim);
        for l in 1..=xi_dim {
            out.add_term(XiMonomial::coordinate(xi_dim, l), Multivector::generator(cl_dim, l))
                .expect("dims agree by construction");
        }
        out
    }

    pub fn xi_dim(&self) -> usize {
        self.xi_dim
    }

    pub fn cl_dim(&self) -> usize {
        self.cl_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XiMonomial, &Multivector<C>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &XiMonomial) -> Multivector<C> {
        self.terms.get(alpha).cloned().unwrap_or_else(|| Multivector::zero(self.cl_dim))
    }

    pub fn add_term(&mut self, alpha: XiMonomial, m: Multivector<C>) -> Result<()> {
        if alpha.dim() != self.xi_dim {
            return Err(Error::DimensionMismatch { expected: self.xi_dim, found: alpha.dim() });
        }
        if m.dim() != self.cl_dim {
            return Err(Error::DimensionMismatch { expected: self.cl_dim, found: m.dim() });
        }
        let sum = match self.terms.remove(&alpha) {
            Some(prev) => &prev + &m,
            None => m,
        };
        if !sum.is_zero() {
            self.terms.insert(alpha, sum);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (a, m) in &other.terms {
            out.add_term(a.clone(), m.clone())?;
        }
        Ok(out)
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.xi_dim, self.cl_dim);
        for (a, m) in &self.terms {
            out.add_term(a.clone(), m.scale_gaussian(c)).expect("same dims");
        }
        out
    }

    /// Product with noncommuting Clifford coefficients, `self · other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.xi_dim != other.xi_dim {
            return Err(Error::DimensionMismatch { expected: self.xi_dim, found: other.xi_dim });
        }
        if self.cl_dim != other.cl_dim {
            return Err(Error::DimensionMismatch { expected: self.cl_dim, found: other.cl_dim });
        }
        let mut out = Self::zero(self.xi_dim, self.cl_dim);
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                out.add_term(a.mul(b)?, ma * mb)?;
            }
        }
        Ok(out)
    }

    pub fn left_mul(&self, m: &Multivector<C>) -> Result<Self> {
        self.map_terms(|x| m.try_mul(x))
    }

    pub fn right_mul(&self, m: &Multivector<C>) -> Result<Self> {
        self.map_terms(|x| x.try_mul(m))
    }

    pub fn map_terms(&self, f: impl Fn(&Multivector<C>) -> Result<Multivector<C>>) -> Result<Self> {
        let mut out = Self::zero(self.xi_dim, self.cl_dim);
        for (a, m) in &self.terms {
            out.add_term(a.clone(), f(m)?)?;
        }
        Ok(out)
    }

    /// Apply a coefficient map such as a trace, keeping the ξ structure.
    pub fn map_scalar<D>(&self, f: impl Fn(&Multivector<C>) -> Result<D>) -> Result<BTreeMap<XiMonomial, D>> {
        self.terms.iter().map(|(a, m)| Ok((a.clone(), f(m)?))).collect()
    }
}

impl<C: Scalar + fmt::Debug> fmt::Debug for XiPolynomialMV<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `Σ_α c_α M_α` where `c_α` is the rational moment factor; the result is the
/// sphere integral divided by `vol(S^{n-1})`.
pub fn integrate_sphere_coefficient<C: Scalar>(p: &XiPolynomialMV<C>) -> Multivector<C> {
    let mut out = Multivector::zero(p.cl_dim);
    for (alpha, m) in &p.terms {
        let c = moment_coefficient(alpha);
        if !c.is_zero() {
            out = &out + &m.scale_gaussian(&GaussianRational::real(c));
        }
    }
    out
}

/// `∫_{S^{n-1}} P(ξ) σ(ξ)` termwise, carrying `vol(S^{n-1})`.
pub fn integrate_sphere<C: Scalar>(n: usize, p: &XiPolynomialMV<C>) -> Result<Multivector<SymScalar>> {
    if p.xi_dim != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.xi_dim });
    }
    let mut out: Multivector<SymScalar> = Multivector::zero(p.cl_dim);
    for (alpha, m) in &p.terms {
        let c = moment_coefficient(alpha);
        if c.is_zero() {
            continue;
        }
        let weight = SymScalar::term(GaussianRational::real(c), Monomial::from_atoms([vol_atom(n)]));
        for (blade, coeff) in m.terms() {
            out.add_term(*blade, coeff.to_sym() * &weight);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn vol(n: usize) -> SymScalar {
        SymScalar::atom(vol_atom(n))
    }

    #[test]
    fn moment_examples() {
        for n in [2, 4, 6, 8] {
            let mut a = vec![0; n];
            a[0] = 1;
            a[1] = 1;
            assert!(moment(n, &XiMonomial::new(a)).unwrap().is_zero());
            let mut a = vec![0; n];
            a[0] = 2;
            assert_eq!(
                moment(n, &XiMonomial::new(a)).unwrap(),
                vol(n).scale(&GaussianRational::real(rat(1, n as i64)))
            );
        }
        assert_eq!(
            moment(4, &XiMonomial::new(vec![4, 0, 0, 0])).unwrap(),
            vol(4).scale(&GaussianRational::real(rat(1, 8)))
        );
        assert!(moment(1, &XiMonomial::new(vec![2])).is_err());
    }

    #[test]
    fn moments_are_normalized() {
        for n in [2, 4, 6, 8] {
            let total = (0..n).fold(Rational::zero(), |acc, i| {
                let mut a = vec![0; n];
                a[i] = 2;
                acc + moment_coefficient(&XiMonomial::new(a))
            });
            assert_eq!(total, Rational::one());
        }
    }

    #[test]
    fn vol_numeric_examples() {
        assert!((vol_numeric(1) - std::f64::consts::TAU).abs() < 1e-12);
        assert!((vol_numeric(3) - 19.739_208_8).abs() < 1e-6);
        assert!((vol_numeric(5) - 31.006_276_7).abs() < 1e-6);
    }

    #[test]
    fn integrate_examples() {
        let n = 4;
        let odd: XiPolynomialMV<GaussianRational> = {
            let mut p = XiPolynomialMV::zero(n, n);
            p.add_term(XiMonomial::coordinate(n, 1), Multivector::generator(n, 1)).unwrap();
            p
        };
        assert!(integrate_sphere(n, &odd).unwrap().is_zero());

        let mut norm = XiPolynomialMV::<GaussianRational>::zero(n, n);
        for i in 0..n {
            let mut a = vec![0; n];
            a[i] = 2;
            norm.add_term(XiMonomial::new(a), Multivector::one(n)).unwrap();
        }
        assert_eq!(integrate_sphere(n, &norm).unwrap(), Multivector::scalar(n, vol(n)));

        let mut mixed = XiPolynomialMV::<GaussianRational>::zero(n, n);
        mixed.add_term(XiMonomial::new(vec![1, 1, 0, 0]), Multivector::blade(n, &[1, 2]).unwrap()).unwrap();
        mixed.add_term(XiMonomial::new(vec![2, 0, 0, 0]), Multivector::one(n)).unwrap();
        let expected = Multivector::scalar(n, vol(n).scale(&GaussianRational::real(rat(1, 4))));
        assert_eq!(integrate_sphere(n, &mixed).unwrap(), expected);

        assert!(matches!(integrate_sphere(6, &mixed), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn clifford_xi_squares_to_minus_norm() {
        let n = 4;
        let cxi = XiPolynomialMV::<GaussianRational>::clifford_xi(n, n);
        let sq = cxi.try_mul(&cxi).unwrap();
        let mut expected = XiPolynomialMV::zero(n, n);
        for i in 0..n {
            let mut a = vec![0; n];
            a[i] = 2;
            expected.add_term(XiMonomial::new(a), -Multivector::one(n)).unwrap();
        }
        assert_eq!(sq, expected);
    }
}
