//! Rational functions of the normal covariable `ξ_n`, the half-line
//! projection `π⁺`, exact real-line integrals by residues, and the boundary
//! term of the torsion functional.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::clifford::{spinor_rank, trace, Multivector};
use crate::error::{Error, Result};
use crate::forms::{metric_pair, OneForm, ToClifford};
use crate::scalar::{int, rational_to_f64, GaussianRational, Monomial, Rational, SymAtom, SymScalar};
use crate::sphere::{moment, XiMonomial};
use crate::symbol::trivector;

type G = GaussianRational;
type Mv = Multivector<GaussianRational>;

fn trim(mut p: Vec<G>) -> Vec<G> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_add(a: &[G], b: &[G]) -> Vec<G> {
    let len = a.len().max(b.len());
    let zero = G::zero();
    trim((0..len).map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero)).collect())
}

fn poly_mul(a: &[G], b: &[G]) -> Vec<G> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![G::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

fn poly_scale(a: &[G], c: &G) -> Vec<G> {
    trim(a.iter().map(|x| x * c).collect())
}

fn poly_eval(a: &[G], t: &G) -> G {
    a.iter().rev().fold(G::zero(), |acc, c| &(&acc * t) + c)
}

fn poly_derivative(a: &[G]) -> Vec<G> {
    trim(a.iter().enumerate().skip(1).map(|(k, c)| c.scale(&int(k as i64))).collect())
}

/// `(t - p)^k` expanded.
fn linear_power(p: &G, k: u32) -> Vec<G> {
    (0..k).fold(vec![G::one()], |acc, _| poly_mul(&acc, &[-p.clone(), G::one()]))
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn poly_divmod(a: &[G], b: &[G]) -> (Vec<G>, Vec<G>) {
    let b = trim(b.to_vec());
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("nonzero leading coefficient");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![G::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] = &rem[shift + k] - &(&c * bk);
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Taylor coefficients of `a(p + s)` in `s`.
fn poly_shift(a: &[G], p: &G) -> Vec<G> {
    let mut coeffs = a.to_vec();
    let n = coeffs.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let next = &coeffs[j + 1] * p;
            coeffs[j] += &next;
        }
    }
    coeffs
}

fn binomial(n: i64, k: i64) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * int(n - j) / int(j + 1))
}

/// First `len` Taylor coefficients of `(s + a)^{-m}` in `s`.
fn inverse_power_series(a: &G, m: u32, len: usize) -> Vec<G> {
    let a_inv = a.inv().expect("distinct poles");
    (0..len)
        .map(|j| {
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            let c = sign * binomial(m as i64 + j as i64 - 1, j as i64);
            a_inv.powi((m as usize + j) as i32).expect("nonzero").scale(&c)
        })
        .collect()
}

fn series_mul(a: &[G], b: &[G], len: usize) -> Vec<G> {
    let mut out = vec![G::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn cmp_gaussian(a: &G, b: &G) -> Ordering {
    (&a.re, &a.im).cmp(&(&b.re, &b.im))
}

/// `N(ξ_n) / ∏ (ξ_n - p)^k` with Gaussian-rational data.
#[derive(Clone)]
pub struct XiRational {
    numerator: Vec<G>,
    poles: Vec<(G, u32)>,
}

/// Canonical decomposition `polynomial + Σ_p Σ_j c_{p,j} (ξ_n - p)^{-j}`.
/// `parts[p][j-1] = c_{p,j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub polynomial: Vec<G>,
    pub parts: Vec<(G, Vec<G>)>,
}

impl PartialFractions {
    pub fn to_rational(&self) -> XiRational {
        let mut out = XiRational::polynomial(self.polynomial.clone());
        for (p, coeffs) in &self.parts {
            for (j, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&XiRational::new(vec![c.clone()], vec![(p.clone(), j as u32 + 1)]));
                }
            }
        }
        out
    }

    /// Coefficient of `(ξ_n - p)^{-1}`.
    pub fn residue(&self, pole: &G) -> G {
        self.parts.iter().find(|(p, _)| p == pole).and_then(|(_, c)| c.first().cloned()).unwrap_or_default()
    }
}

impl XiRational {
    pub fn new(numerator: Vec<G>, poles: Vec<(G, u32)>) -> Self {
        let mut merged: Vec<(G, u32)> = Vec::new();
        for (p, k) in poles {
            if k == 0 {
                continue;
            }
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, m)) => *m += k,
                None => merged.push((p, k)),
            }
        }
        merged.sort_by(|a, b| cmp_gaussian(&a.0, &b.0));
        Self { numerator: trim(numerator), poles: merged }
    }

    pub fn polynomial(coeffs: Vec<G>) -> Self {
        Self::new(coeffs, Vec::new())
    }

    pub fn constant(c: G) -> Self {
        Self::polynomial(vec![c])
    }

    /// `ξ_n`
    pub fn variable() -> Self {
        Self::polynomial(vec![G::zero(), G::one()])
    }

    /// `(1 + ξ_n²)^{-k} = (ξ_n - i)^{-k} (ξ_n + i)^{-k}`.
    pub fn inverse_norm_power(k: u32) -> Self {
        Self::new(vec![G::one()], vec![(G::i(), k), (-G::i(), k)])
    }

    pub fn numerator(&self) -> &[G] {
        &self.numerator
    }

    pub fn poles(&self) -> &[(G, u32)] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn denominator_degree(&self) -> usize {
        self.poles.iter().map(|(_, k)| *k as usize).sum()
    }

    /// Degree of the numerator; `None` for the zero function.
    pub fn numerator_degree(&self) -> Option<usize> {
        self.numerator.len().checked_sub(1)
    }

    pub fn denominator(&self) -> Vec<G> {
        self.poles.iter().fold(vec![G::one()], |acc, (p, k)| poly_mul(&acc, &linear_power(p, *k)))
    }

    pub fn scale(&self, c: &G) -> Self {
        Self::new(poly_scale(&self.numerator, c), self.poles.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut poles = self.poles.clone();
        poles.extend(other.poles.iter().cloned());
        Self::new(poly_mul(&self.numerator, &other.numerator), poles)
    }

    pub fn add(&self, other: &Self) -> Self {
        // Common denominator: the maximum multiplicity of each pole.
        let mut common: Vec<(G, u32)> = self.poles.clone();
        for (p, k) in &other.poles {
            match common.iter_mut().find(|(q, _)| q == p) {
                Some((_, m)) => *m = (*m).max(*k),
                None => common.push((p.clone(), *k)),
            }
        }
        let lift = |f: &Self| -> Vec<G> {
            let missing = common.iter().fold(vec![G::one()], |acc, (p, k)| {
                let have = f.poles.iter().find(|(q, _)| q == p).map_or(0, |(_, m)| *m);
                poly_mul(&acc, &linear_power(p, k - have))
            });
            poly_mul(&f.numerator, &missing)
        };
        Self::new(poly_add(&lift(self), &lift(other)), common)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-G::one())
    }

    pub fn partial_fractions(&self) -> PartialFractions {
        let (polynomial, remainder) = poly_divmod(&self.numerator, &self.denominator());
        let mut parts = Vec::new();
        for (idx, (p, k)) in self.poles.iter().enumerate() {
            let len = *k as usize;
            // remainder / (other factors), expanded around p.
            let mut series = poly_shift(&remainder, p);
            series.resize(len.max(series.len()), G::zero());
            series.truncate(len);
            for (jdx, (q, kq)) in self.poles.iter().enumerate() {
                if jdx != idx {
                    series = series_mul(&series, &inverse_power_series(&(p - q), *kq, len), len);
                }
            }
            // series[j] multiplies (ξ_n - p)^{j - k}
            let coeffs: Vec<G> = (1..=len).map(|order| series[len - order].clone()).collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                let mut coeffs = coeffs;
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                parts.push((p.clone(), coeffs));
            }
        }
        PartialFractions { polynomial, parts }
    }

    /// Exact value at a point that is not a pole.
    pub fn eval(&self, t: &G) -> Option<G> {
        let den = self.poles.iter().try_fold(G::one(), |acc, (p, k)| {
            let base = t - p;
            if base.is_zero() {
                None
            } else {
                Some(&acc * &base.powi(*k as i32).expect("nonzero"))
            }
        })?;
        Some(poly_eval(&self.numerator, t) / den)
    }

    pub fn eval_f64(&self, t: f64) -> Complex64 {
        let z = Complex64::new(t, 0.0);
        let num = self.numerator.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex());
        let den =
            self.poles.iter().fold(Complex64::new(1.0, 0.0), |acc, (p, k)| acc * (z - p.to_complex()).powi(*k as i32));
        num / den
    }

    /// Exact derivative in `ξ_n`.
    pub fn derivative(&self) -> Self {
        let pf = self.partial_fractions();
        let mut out = PartialFractions { polynomial: poly_derivative(&pf.polynomial), parts: Vec::new() };
        for (p, coeffs) in &pf.parts {
            let mut next = vec![G::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                // d/dt c (t-p)^{-(j+1)} = -(j+1) c (t-p)^{-(j+2)}
                next[j + 1] = c.scale(&int(-(j as i64 + 1)));
            }
            out.parts.push((p.clone(), next));
        }
        out.to_rational()
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |f, _| f.derivative())
    }

    fn check_no_real_pole(&self) -> Result<()> {
        if self.partial_fractions().parts.iter().any(|(p, _)| p.im.is_zero()) {
            return Err(Error::RealPole);
        }
        Ok(())
    }

    fn filter_poles(&self, keep: impl Fn(&G) -> bool) -> Result<Self> {
        let pf = self.partial_fractions();
        if !pf.polynomial.is_empty() {
            return Err(Error::NotDecaying);
        }
        self.check_no_real_pole()?;
        let parts = pf.parts.into_iter().filter(|(p, _)| keep(p)).collect();
        Ok(PartialFractions { polynomial: Vec::new(), parts }.to_rational())
    }
}

impl PartialEq for XiRational {
    fn eq(&self, other: &Self) -> bool {
        self.partial_fractions() == other.partial_fractions()
    }
}

impl fmt::Debug for XiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for XiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})·ξ"),
                _ => format!("({c})·ξ^{k}"),
            })
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.poles.is_empty() {
            return f.write_str(&num);
        }
        let den: Vec<String> = self.poles.iter().map(|(p, k)| format!("(ξ - ({p}))^{k}")).collect();
        write!(f, "[{num}] / [{}]", den.join("·"))
    }
}

/// Keeps the partial-fraction terms with poles in the upper half-plane.
pub fn pi_plus(f: &XiRational) -> Result<XiRational> {
    f.filter_poles(|p| p.im.is_positive())
}

/// Keeps the partial-fraction terms with poles in the lower half-plane.
pub fn pi_minus(f: &XiRational) -> Result<XiRational> {
    f.filter_poles(|p| p.im.is_negative())
}

/// `∂_{ξ_n} (1 + ξ_n²)^{1-m}`, obtained by differentiating the symbol.
pub fn dxn_symbol(m: usize) -> Result<XiRational> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("the boundary symbol needs m >= 2, got {m}")));
    }
    Ok(XiRational::inverse_norm_power(m as u32 - 1).derivative())
}

/// `2(1-m) ξ_n (1 + ξ_n²)^{-m}`.
pub fn dxn_symbol_closed_form(m: usize) -> XiRational {
    XiRational::variable().scale(&G::from_int(2 * (1 - m as i64))).mul(&XiRational::inverse_norm_power(m as u32))
}

/// `(d/dξ_n)^m [ξ_n / (ξ_n + i)^m]` at `ξ_n = i`, via exact differentiation.
pub fn residue_derivative(m: usize) -> Result<G> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("residue derivative needs m >= 2, got {m}")));
    }
    let f = XiRational::new(vec![G::zero(), G::one()], vec![(-G::i(), m as u32)]);
    Ok(f.nth_derivative(m).eval(&G::i()).expect("i is not a pole"))
}

/// `(2m-2)! (-i) 2^{-2m} / (m-1)!`.
pub fn residue_derivative_closed_form(m: usize) -> G {
    let value =
        factorial(2 * m - 2) / factorial(m - 1) / Rational::from_integer(num_bigint::BigInt::from(2).pow(2 * m as u32));
    G::new(Rational::zero(), -value)
}

pub fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, j| acc * int(j))
}

/// Independent oracle: repeated quotient rule on expanded polynomials,
/// `(N/D)' = (N'D - ND') / D²`, evaluated at `point`.
pub fn quotient_rule_derivative_at(numerator: &[G], denominator: &[G], order: usize, point: &G) -> Option<G> {
    let mut num = trim(numerator.to_vec());
    let mut den = trim(denominator.to_vec());
    for _ in 0..order {
        let next_num = poly_add(
            &poly_mul(&poly_derivative(&num), &den),
            &poly_scale(&poly_mul(&num, &poly_derivative(&den)), &-G::one()),
        );
        den = poly_mul(&den, &den);
        num = next_num;
    }
    let d = poly_eval(&den, point);
    if d.is_zero() {
        return None;
    }
    Some(poly_eval(&num, point) / d)
}

/// `∫_{-∞}^{∞} f dξ_n = 2πi Σ_{Im p > 0} Res_p f`, carrying the `π` atom.
pub fn line_integral(f: &XiRational) -> Result<SymScalar> {
    if f.is_zero() {
        return Ok(SymScalar::zero());
    }
    let deg = f.numerator_degree().expect("nonzero");
    if deg + 2 > f.denominator_degree() {
        return Err(Error::NonIntegrable);
    }
    f.check_no_real_pole()?;
    let pf = f.partial_fractions();
    let residues =
        pf.parts.iter().filter(|(p, _)| p.im.is_positive()).fold(G::zero(), |acc, (p, _)| &acc + &pf.residue(p));
    let two_pi_i = G::new(Rational::zero(), int(2));
    Ok(SymScalar::term(&two_pi_i * &residues, Monomial::from_atoms([SymAtom::Pi])))
}

/// Numerical cross-check of a line integral: double-exponential quadrature
/// of `f(tan θ) sec²θ` over `(-π/2, π/2)`, split around the real part of
/// every pole so that peaks near the axis sit on a breakpoint.
pub fn line_integral_numeric(f: &XiRational, tolerance: f64) -> Complex64 {
    let half = std::f64::consts::FRAC_PI_2;
    let mut breaks = vec![-half, half];
    for (p, _) in f.poles() {
        let (re, width) = (rational_to_f64(&p.re), rational_to_f64(&p.im).abs());
        breaks.extend([re - width, re, re + width].map(f64::atan));
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let integrand = |theta: f64| {
        let (t, c) = (theta.tan(), theta.cos());
        f.eval_f64(t) / (c * c)
    };
    let tol = tolerance / breaks.len() as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let re = quadrature::integrate(|t| integrand(t).re, a, b, tol).integral;
        let im = quadrature::integrate(|t| integrand(t).im, a, b, tol).integral;
        total += Complex64::new(re, im);
    }
    total
}

/// Terms `ξ'^α · r(ξ_n) · M` of a boundary integrand, `ξ' = (ξ_1, …, ξ_{n-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySymbol {
    dim: usize,
    terms: BTreeMap<XiMonomial, Vec<(XiRational, Mv)>>,
}

impl BoundarySymbol {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push(&mut self, alpha: XiMonomial, f: XiRational, m: Mv) -> Result<()> {
        if alpha.dim() + 1 != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim - 1, found: alpha.dim() });
        }
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.dim() });
        }
        self.terms.entry(alpha).or_default().push((f, m));
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XiMonomial, &XiRational, &Mv)> {
        self.terms.iter().flat_map(|(a, list)| list.iter().map(move |(f, m)| (a, f, m)))
    }

    /// Multiplies every `ξ_n` factor by `g`.
    pub fn mul_rational(&self, g: &XiRational) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, f, m) in self.terms() {
            out.terms.entry(a.clone()).or_default().push((f.mul(g), m.clone()));
        }
        out
    }
}

/// `σ_{-1}(D̃^{-1}) = √-1 c(ξ)/|ξ|²` at `|ξ'| = 1` with `c(e_n)` the normal
/// direction, as a boundary symbol.
pub fn sigma_minus1(n: usize) -> Result<BoundarySymbol> {
    let i = G::i();
    let mut out = BoundarySymbol::zero(n);
    let tangential = XiRational::inverse_norm_power(1).scale(&i);
    for l in 1..n {
        out.push(XiMonomial::coordinate(n - 1, l), tangential.clone(), Mv::generator(n, l))?;
    }
    out.push(XiMonomial::one(n - 1), XiRational::variable().mul(&tangential), Mv::generator(n, n))?;
    Ok(out)
}

/// `π⁺` applied termwise.
pub fn pi_plus_symbol(s: &BoundarySymbol) -> Result<BoundarySymbol> {
    let mut out = BoundarySymbol::zero(s.dim);
    for (a, f, m) in s.terms() {
        out.push(a.clone(), pi_plus(f)?, m.clone())?;
    }
    Ok(out)
}

/// Boundary term for the torsion functional with the pipeline value, the
/// stated closed form and every ξ_n integrand for numerical cross-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryDensity {
    pub pipeline: SymScalar,
    pub paper: SymScalar,
    /// Contribution of the `c(ξ')` terms; zero after the `S^{n-2}` integral.
    pub tangential: SymScalar,
    pub integrals: Vec<(XiRational, SymScalar)>,
}

/// `u_n g(v,w) - v_n g(u,w) + w_n g(u,v)`.
pub fn normal_combination(u: &OneForm, v: &OneForm, w: &OneForm) -> Result<Rational> {
    let n = u.dim();
    Ok(u.get(n) * metric_pair(v, w)? - v.get(n) * metric_pair(u, w)? + w.get(n) * metric_pair(u, v)?)
}

/// Coefficient of `π·(u_n g(v,w) - v_n g(u,w) + w_n g(u,v))·2^m·dim_F·vol(S^{n-2})`
/// in the stated closed form: `(2m-2)!(1-m) i 2^{-2m+1} / (m!(m-1)!)`.
pub fn paper_boundary_coefficient(m: usize) -> G {
    let value = factorial(2 * m - 2) * int(1 - m as i64)
        / (factorial(m) * factorial(m - 1))
        / Rational::from_integer(num_bigint::BigInt::from(2).pow(2 * m as u32 - 1));
    G::new(Rational::zero(), value)
}

fn boundary_atoms(n: usize) -> Monomial {
    Monomial::from_atoms([SymAtom::Pi, SymAtom::DimF, SymAtom::VolSphere(n as u32 - 2)])
}

/// `∫_{|ξ'|=1} ∫ Tr[π⁺σ_{-1}(c(u)c(v)c(w)D̃^{-1}) · ∂_{ξ_n}σ_{-2m+2}(D̃^{-2m+2})] dξ_n σ(ξ')`.
pub fn boundary_density(u: &OneForm, v: &OneForm, w: &OneForm, n: usize) -> Result<BoundaryDensity> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::UnsupportedDimension(n));
    }
    if u.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u.dim() });
    }
    let m = n / 2;
    let prefactor = trivector(u, v, w)?;
    let projected = pi_plus_symbol(&sigma_minus1(n)?)?;
    let integrand = projected.mul_rational(&dxn_symbol(m)?);

    let dim_f = SymScalar::atom(SymAtom::DimF);
    let mut pipeline = SymScalar::zero();
    let mut tangential = SymScalar::zero();
    let mut integrals = Vec::new();
    for (alpha, f, mv) in integrand.terms() {
        let tr = trace(&(&prefactor * mv));
        if tr.is_zero() {
            continue;
        }
        let line = line_integral(f)?;
        integrals.push((f.clone(), line.clone()));
        let sphere = moment(n - 1, alpha)?;
        let value = line.scale(&tr) * &sphere * &dim_f;
        if alpha.degree() % 2 == 1 {
            tangential = &tangential + &value;
        }
        pipeline = &pipeline + &value;
    }
    debug_assert!(tangential.is_zero(), "odd ξ' moments must integrate to zero");

    let combo = G::real(normal_combination(u, v, w)?);
    let paper_coeff = &(&paper_boundary_coefficient(m) * &combo) * &G::from_int(spinor_rank(n));
    let paper = SymScalar::term(paper_coeff, boundary_atoms(n));
    Ok(BoundaryDensity { pipeline, paper, tangential, integrals })
}

/// `Tr(c(u)c(v)c(w)c(e_n))`, the trace that survives in the boundary term.
pub fn normal_trace(u: &OneForm, v: &OneForm, w: &OneForm) -> Result<G> {
    let n = u.dim();
    let en: Mv = OneForm::basis(n, n).to_clifford();
    Ok(trace(&(&trivector(u, v, w)? * &en)))
}
