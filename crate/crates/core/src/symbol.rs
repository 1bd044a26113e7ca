//! Order `-2m` symbol of `c(u)c(v)c(w)·D̃^{1-2m}` at a normal-coordinate
//! point and its fiber integral over the unit cosphere.
//!
//! Everything is evaluated at `|ξ| = 1`, so radial powers only matter for
//! bookkeeping; [`RadialSymbol`] keeps them explicit where the composition
//! formula produces them.

use num_traits::Zero;

use crate::clifford::{grading, spinor_rank, trace_of_product, Multivector};
use crate::error::{Error, Result};
use crate::forms::{OneForm, ThreeForm, ToClifford};
use crate::scalar::{int, GaussianRational, Monomial, Rational, SymAtom, SymScalar};
use crate::sphere::{integrate_sphere_coefficient, vol_atom, XiMonomial, XiPolynomialMV};

type Mv = Multivector<GaussianRational>;
type Poly = XiPolynomialMV<GaussianRational>;

/// Zero-order perturbation `□` of the twisted Dirac operator `D_F + □⊗Φ`.
#[derive(Clone, Debug, PartialEq)]
pub enum PerturbationCase {
    /// `c(T) + √-1 c(Y)`
    TorsionVector { t: ThreeForm, y: OneForm },
    /// `γ`
    Grading,
    /// `c(X)γ`
    VectorGrading { x: OneForm },
    /// `√-1 c(T)γ`
    TorsionGrading { t: ThreeForm },
}

impl PerturbationCase {
    pub fn name(&self) -> &'static str {
        match self {
            PerturbationCase::TorsionVector { .. } => "torsion_vector",
            PerturbationCase::Grading => "grading",
            PerturbationCase::VectorGrading { .. } => "vector_grading",
            PerturbationCase::TorsionGrading { .. } => "torsion_grading",
        }
    }

    /// Checks every form against the ambient dimension.
    pub fn check_dim(&self, n: usize) -> Result<()> {
        let mismatch =
            |found: usize| if found == n { Ok(()) } else { Err(Error::DimensionMismatch { expected: n, found }) };
        match self {
            PerturbationCase::TorsionVector { t, y } => {
                mismatch(t.dim())?;
                mismatch(y.dim())
            }
            PerturbationCase::Grading => Ok(()),
            PerturbationCase::VectorGrading { x } => mismatch(x.dim()),
            PerturbationCase::TorsionGrading { t } => mismatch(t.dim()),
        }
    }
}

fn require_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        Err(Error::OddDimension(n))
    } else {
        Ok(())
    }
}

/// `□` as an element of `Cl(n)`.
pub fn perturbation_multivector(case: &PerturbationCase, n: usize) -> Result<Mv> {
    require_even(n)?;
    case.check_dim(n)?;
    let i = GaussianRational::i();
    Ok(match case {
        PerturbationCase::TorsionVector { t, y } => {
            let ct: Mv = t.to_clifford();
            let cy: Mv = y.to_clifford();
            &ct + &cy.scale_gaussian(&i)
        }
        PerturbationCase::Grading => grading(n)?,
        PerturbationCase::VectorGrading { x } => {
            let cx: Mv = x.to_clifford();
            &cx * &grading(n)?
        }
        PerturbationCase::TorsionGrading { t } => {
            let ct: Mv = t.to_clifford();
            (&ct * &grading(n)?).scale_gaussian(&i)
        }
    })
}

/// `|ξ|^{radial_power} · P(ξ)` with `P` polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialSymbol {
    pub radial_power: i32,
    pub poly: Poly,
}

impl RadialSymbol {
    /// Restriction to the unit cosphere.
    pub fn on_unit_sphere(&self) -> &Poly {
        &self.poly
    }
}

/// First derivatives of the geometry at the base point: `dg[j][a][b] =
/// ∂_j g^{ab}` and `dframe[j][l][a] = ∂_j (dx^l, e_a)`. Both vanish in normal
/// coordinates with a synchronous frame.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJet {
    pub dg: Vec<Vec<Vec<Rational>>>,
    pub dframe: Vec<Vec<Vec<Rational>>>,
}

impl MetricJet {
    pub fn normal(n: usize) -> Self {
        let zeros = vec![vec![vec![Rational::zero(); n]; n]; n];
        Self { dg: zeros.clone(), dframe: zeros }
    }

    fn dim(&self) -> usize {
        self.dg.len()
    }

    /// `∂_{x_j} σ_2^{-1} = -|ξ|^{-4} ∂_j g^{ab} ξ_a ξ_b` on `|ξ| = 1`.
    fn d_inverse_principal(&self, j: usize) -> Poly {
        let n = self.dim();
        let mut out = Poly::zero(n, n);
        for a in 0..n {
            for b in 0..n {
                let c = &self.dg[j][a][b];
                if c.is_zero() {
                    continue;
                }
                let mono = XiMonomial::coordinate(n, a + 1).mul(&XiMonomial::coordinate(n, b + 1)).expect("same dim");
                out.add_term(mono, Mv::scalar(n, GaussianRational::real(-c.clone()))).expect("same dim");
            }
        }
        out
    }

    /// `∂_{x_j} c(ξ) = Σ_{l,a} ξ_l ∂_j (dx^l, e_a) c(e_a)`.
    fn d_clifford_xi(&self, j: usize) -> Poly {
        let n = self.dim();
        let mut out = Poly::zero(n, n);
        for l in 0..n {
            for a in 0..n {
                let c = &self.dframe[j][l][a];
                if !c.is_zero() {
                    let m = Mv::generator(n, a + 1).scale_gaussian(&GaussianRational::real(c.clone()));
                    out.add_term(XiMonomial::coordinate(n, l + 1), m).expect("same dim");
                }
            }
        }
        out
    }
}

/// `σ_{-3}(D̃^{-2})` at the base point:
/// `-√-1 |ξ|^{-4} Σ_j ξ_j [c(e_j)B + B c(e_j)] - 2√-1 |ξ|^{-6} ξ^j ξ_a ξ_b ∂_j g^{ab}`.
pub fn q_minus3(b: &Mv, jet: &MetricJet) -> Result<RadialSymbol> {
    let n = b.dim();
    if jet.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: jet.dim() });
    }
    let minus_i = -GaussianRational::i();
    let mut poly = Poly::zero(n, n);
    for j in 1..=n {
        let e = Mv::generator(n, j);
        let anti = &(&e * b) + &(b * &e);
        poly.add_term(XiMonomial::coordinate(n, j), anti.scale_gaussian(&minus_i))?;
    }
    // The metric-derivative part carries |ξ|^{-6}; on the unit sphere it adds
    // to the same polynomial.
    for j in 0..n {
        let mut xi_j = Poly::zero(n, n);
        xi_j.add_term(XiMonomial::coordinate(n, j + 1), Mv::one(n))?;
        let term = xi_j.try_mul(&jet.d_inverse_principal(j))?.scale_gaussian(&GaussianRational::i().scale(&int(2)));
        poly = poly.try_add(&term)?;
    }
    Ok(RadialSymbol { radial_power: -4, poly })
}

/// `σ_{-3}` at a normal-coordinate point, where only the `B`-linear part
/// survives.
pub fn q_minus3_normal(b: &Mv, n: usize) -> Result<RadialSymbol> {
    if b.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
    }
    q_minus3(b, &MetricJet::normal(n))
}

/// The `x`-derivative terms of the order `-1-2m` symbol of `D̃^{-2m}`:
/// `-√-1 Σ_{k=0}^{m-2} Σ_μ ∂_{ξ_μ} σ_2^{-m+k+1} ∂_{x_μ} σ_2^{-1} σ_2^{-k}`,
/// restricted to `|ξ| = 1`.
pub fn recursion_term(jet: &MetricJet, m: usize) -> Result<Poly> {
    let n = jet.dim();
    let mut out = Poly::zero(n, n);
    for k in 0..m.saturating_sub(1) {
        // ∂_{ξ_μ} |ξ|^{2p} = 2p ξ_μ |ξ|^{2p-2}
        let p = -(m as i64) + k as i64 + 1;
        for mu in 0..n {
            let mut d_xi = Poly::zero(n, n);
            d_xi.add_term(XiMonomial::coordinate(n, mu + 1), Mv::scalar(n, GaussianRational::from_int(2 * p)))?;
            let term = d_xi.try_mul(&jet.d_inverse_principal(mu))?;
            out = out.try_add(&term.scale_gaussian(&-GaussianRational::i()))?;
        }
    }
    Ok(out)
}

/// `Σ_j ∂_{ξ_j}(|ξ|^{-2m}) ∂_{x_j} c(ξ)` on `|ξ| = 1`.
pub fn frame_derivative_term(jet: &MetricJet, m: usize) -> Result<Poly> {
    let n = jet.dim();
    let mut out = Poly::zero(n, n);
    for j in 0..n {
        let mut d_xi = Poly::zero(n, n);
        d_xi.add_term(XiMonomial::coordinate(n, j + 1), Mv::scalar(n, GaussianRational::from_int(-2 * m as i64)))?;
        out = out.try_add(&d_xi.try_mul(&jet.d_clifford_xi(j))?)?;
    }
    Ok(out)
}

/// `c(u)c(v)c(w)`.
pub fn trivector(u: &OneForm, v: &OneForm, w: &OneForm) -> Result<Mv> {
    let n = u.dim();
    for x in [v, w] {
        if x.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
        }
    }
    let (cu, cv, cw): (Mv, Mv, Mv) = (u.to_clifford(), v.to_clifford(), w.to_clifford());
    Ok(&(&cu * &cv) * &cw)
}

/// The bracket `σ_0(D̃) + ∂ξ·∂x c(ξ) + [m σ_2^{1-m} σ_{-3} + recursion]·√-1 c(ξ)`
/// on `|ξ| = 1`, i.e. the symbol with the `c(u)c(v)c(w)` prefactor removed.
pub fn symbol_bracket(b: &Mv, n: usize, jet: &MetricJet) -> Result<Poly> {
    require_even(n)?;
    let m = n / 2;
    let q3 = q_minus3(b, jet)?;
    let inner =
        q3.on_unit_sphere().scale_gaussian(&GaussianRational::from_int(m as i64)).try_add(&recursion_term(jet, m)?)?;
    let i_cxi = Poly::clifford_xi(n, n).scale_gaussian(&GaussianRational::i());
    Poly::constant(n, b.clone()).try_add(&frame_derivative_term(jet, m)?)?.try_add(&inner.try_mul(&i_cxi)?)
}

/// `σ_{-2m}(c(u)c(v)c(w) D̃^{1-2m})(x_0)` on `|ξ| = 1`.
pub fn sigma_minus2m(u: &OneForm, v: &OneForm, w: &OneForm, case: &PerturbationCase, n: usize) -> Result<Poly> {
    if n < 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    let b = perturbation_multivector(case, n)?;
    let prefactor = trivector(u, v, w)?;
    if prefactor.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: prefactor.dim() });
    }
    symbol_bracket(&b, n, &MetricJet::normal(n))?.left_mul(&prefactor)
}

/// `∫_{|ξ|=1} Tr[σ_{-2m}] σ(ξ)`, carrying `tr_F(Φ)` and `vol(S^{n-1})`.
pub fn interior_density(u: &OneForm, v: &OneForm, w: &OneForm, case: &PerturbationCase, n: usize) -> Result<SymScalar> {
    if !(4..=16).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    require_even(n)?;
    let b = perturbation_multivector(case, n)?;
    let prefactor = trivector(u, v, w)?;
    if prefactor.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: prefactor.dim() });
    }
    // Integrate the bracket first; the prefactor is ξ-independent.
    let bracket = symbol_bracket(&b, n, &MetricJet::normal(n))?;
    let integrated = integrate_sphere_coefficient(&bracket);
    let coeff = trace_of_product(&prefactor, &integrated)?;
    Ok(density_from_trace(coeff, n))
}

/// `c · tr_F(Φ) · vol(S^{n-1})`.
pub fn density_from_trace(coeff: GaussianRational, n: usize) -> SymScalar {
    SymScalar::term(coeff, Monomial::from_atoms([SymAtom::TrFPhi, vol_atom(n)]))
}

/// `Tr(Id)` on spinors.
pub fn spinor_trace_identity(n: usize) -> GaussianRational {
    GaussianRational::from_int(spinor_rank(n))
}

/// `Σ_i c(e_i) B c(e_i)`, used to express the anticommutator integral in
/// closed form.
pub fn sandwich_sum(b: &Mv) -> Mv {
    let n = b.dim();
    (1..=n).fold(Mv::zero(n), |acc, i| {
        let e = Mv::generator(n, i);
        &acc + &(&(&e * b) * &e)
    })
}

/// Closed form of the integrated bracket divided by `vol(S^{n-1})`:
/// `B + (1/2)(Σ_i e_i B e_i - n B)`.
pub fn integrated_bracket_closed_form(b: &Mv) -> Mv {
    let n = b.dim();
    let half = GaussianRational::real(Rational::new(1.into(), 2.into()));
    let shifted = &sandwich_sum(b) - &b.scale_gaussian(&GaussianRational::from_int(n as i64));
    b + &shifted.scale_gaussian(&half)
}
