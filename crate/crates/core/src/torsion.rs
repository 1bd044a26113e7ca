//! Spectral torsion for the four perturbation cases: closed-form theorem
//! values, the full interior plus boundary evaluation, and a suite that
//! recomputes every intermediate identity against its stated value.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{grading, spinor_rank, supertrace, trace, Blade, Multivector};
use crate::error::{Error, Result};
use crate::forms::{eval_threeform, metric_pair, top_pairing, wedge, AntisymTensor, OneForm, ThreeForm, ToClifford};
use crate::halfline::{
    boundary_density, dxn_symbol, dxn_symbol_closed_form, factorial, normal_combination, paper_boundary_coefficient,
    pi_plus_symbol, residue_derivative, residue_derivative_closed_form, sigma_minus1, XiRational,
};
use crate::scalar::{int, rat, GaussianRational, Monomial, Rational, SymAtom, SymScalar};
use crate::sphere::{integrate_sphere_coefficient, moment, vol_atom, XiMonomial, XiPolynomialMV};
use crate::symbol::{density_from_trace, interior_density, sigma_minus2m, trivector, PerturbationCase};

type G = GaussianRational;
type Mv = Multivector<GaussianRational>;

/// Even dimension `n = 2m` and whether the manifold has a boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldSpec {
    dim: usize,
    with_boundary: bool,
}

impl ManifoldSpec {
    pub const MIN_DIM: usize = 4;
    pub const MAX_DIM: usize = 16;

    pub fn new(dim: usize, with_boundary: bool) -> Result<Self> {
        if dim % 2 == 1 {
            return Err(Error::OddDimension(dim));
        }
        if !(Self::MIN_DIM..=Self::MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(Self { dim, with_boundary })
    }

    pub fn closed(dim: usize) -> Result<Self> {
        Self::new(dim, false)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn with_boundary(&self) -> bool {
        self.with_boundary
    }
}

macro_rules! identity_ids {
    ($($variant:ident => $label:literal, $final:literal;)*) => {
        /// Every trace, integral, residue and theorem statement checked by the
        /// suite.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum IdentityId {
            $($variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn label(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $label,)*
                }
            }

            /// Final theorem rows gate the verify exit code.
            pub fn is_final(self) -> bool {
                match self {
                    $(IdentityId::$variant => $final,)*
                }
            }
        }

        impl FromStr for IdentityId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($label => Ok(IdentityId::$variant),)*
                    "T4.8gamma" => Ok(IdentityId::T4_8Gamma),
                    _ => Err(Error::Parse(format!("unknown identity id {s:?}"))),
                }
            }
        }
    };
}

identity_ids! {
    L4_3a => "L4.3a", false;
    L4_3b => "L4.3b", false;
    E4_17 => "E4.17", false;
    E4_18 => "E4.18", false;
    E4_19 => "E4.19", false;
    E4_20 => "E4.20", false;
    L4_9 => "L4.9", false;
    E4_31 => "E4.31", false;
    E4_34 => "E4.34", false;
    E4_36 => "E4.36", false;
    E4_37 => "E4.37", false;
    E4_39 => "E4.39", false;
    E4_41 => "E4.41", false;
    E4_42 => "E4.42", false;
    E4_49 => "E4.49", false;
    E4_55 => "E4.55", false;
    E4_56 => "E4.56", false;
    E4_57 => "E4.57", false;
    E4_60 => "E4.60", false;
    E4_61 => "E4.61", false;
    E4_62 => "E4.62", false;
    E4_63 => "E4.63", false;
    T4_5 => "T4.5", true;
    R4_7 => "R4.7", true;
    T4_8Gamma => "T4.8γ", true;
    T4_10 => "T4.10", true;
    T4_11n4 => "T4.11n4", true;
    T4_11n6 => "T4.11n6", true;
    T4_13 => "T4.13", false;
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// One computed-versus-stated check. `computed` and `paper` are the values
/// from the first trial; `matches` holds only if every trial agreed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityComparison {
    pub id: IdentityId,
    pub dim: usize,
    pub computed: SymScalar,
    pub paper: SymScalar,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub interior_density: SymScalar,
    pub boundary_density: SymScalar,
    pub theorem_value: SymScalar,
    pub matches_theorem: bool,
    pub identity_comparisons: Vec<IdentityComparison>,
}

impl TorsionReport {
    pub fn total(&self) -> SymScalar {
        &self.interior_density + &self.boundary_density
    }
}

fn sym(c: G, atoms: impl IntoIterator<Item = SymAtom>) -> SymScalar {
    SymScalar::term(c, Monomial::from_atoms(atoms))
}

fn pow2(k: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(2).pow(k as u32))
}

fn top4(parts: &[AntisymTensor]) -> Result<G> {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = wedge(&acc, p)?;
    }
    top_pairing(&acc)
}

/// `⟨u*∧v*∧w*∧X*, e_1*∧…∧e_n*⟩`.
pub fn four_form_pairing(u: &OneForm, v: &OneForm, w: &OneForm, x: &OneForm) -> Result<G> {
    top4(&[u.into(), v.into(), w.into(), x.into()])
}

/// `⟨u*∧v*∧w*∧T, e_1*∧…∧e_n*⟩`.
pub fn six_form_pairing(u: &OneForm, v: &OneForm, w: &OneForm, t: &ThreeForm) -> Result<G> {
    top4(&[u.into(), v.into(), w.into(), t.into()])
}

/// `⟨-g(u,v) w*∧T + g(u,w) v*∧T - g(v,w) u*∧T, e_1*∧…∧e_4*⟩`.
pub fn contracted_pairing(u: &OneForm, v: &OneForm, w: &OneForm, t: &ThreeForm) -> Result<G> {
    let tt: AntisymTensor = t.into();
    let part = |x: &OneForm, c: Rational| -> Result<G> { Ok(top_pairing(&wedge(&x.into(), &tt)?)?.scale(&c)) };
    Ok(&(&part(w, -metric_pair(u, v)?)? + &part(v, metric_pair(u, w)?)?) + &part(u, -metric_pair(v, w)?)?)
}

/// Interior closed form of the theorem for `case` in dimension `n`.
pub fn interior_theorem_value(
    case: &PerturbationCase,
    u: &OneForm,
    v: &OneForm,
    w: &OneForm,
    n: usize,
) -> Result<SymScalar> {
    let m = n / 2;
    let density = |c: G| density_from_trace(c, n);
    Ok(match case {
        PerturbationCase::TorsionVector { t, .. } => {
            let c = eval_threeform(t, u, v, w)? * pow2(m + 1);
            density(G::real(-c))
        }
        PerturbationCase::Grading => SymScalar::zero(),
        PerturbationCase::VectorGrading { x } => {
            if n == 4 {
                density(four_form_pairing(u, v, w, x)?.scale(&int(8)))
            } else {
                SymScalar::zero()
            }
        }
        PerturbationCase::TorsionGrading { t } => match n {
            4 => density(&contracted_pairing(u, v, w, t)? * &G::new(int(0), int(16))),
            6 => density(six_form_pairing(u, v, w, t)?.scale(&int(16))),
            _ => SymScalar::zero(),
        },
    })
}

/// Boundary addend `(2m-2)!(1-m) i 2^{-2m+1} π / (m!(m-1)!) · (u_n g(v,w) -
/// v_n g(u,w) + w_n g(u,v)) · 2^m · dim_F · vol(S^{n-2})`.
pub fn boundary_theorem_value(u: &OneForm, v: &OneForm, w: &OneForm, n: usize) -> Result<SymScalar> {
    let m = n / 2;
    let combo = G::real(normal_combination(u, v, w)? * pow2(m));
    Ok(sym(&paper_boundary_coefficient(m) * &combo, [SymAtom::Pi, SymAtom::DimF, SymAtom::VolSphere(n as u32 - 2)]))
}

fn check_inputs(case: &PerturbationCase, u: &OneForm, v: &OneForm, w: &OneForm, n: usize) -> Result<()> {
    for x in [u, v, w] {
        if x.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
        }
    }
    case.check_dim(n)
}

/// The stated theorem value, including the boundary addend on manifolds
/// with boundary.
pub fn theorem_value(
    case: &PerturbationCase,
    u: &OneForm,
    v: &OneForm,
    w: &OneForm,
    spec: &ManifoldSpec,
) -> Result<SymScalar> {
    let n = spec.dim();
    check_inputs(case, u, v, w, n)?;
    let interior = interior_theorem_value(case, u, v, w, n)?;
    if spec.with_boundary() {
        Ok(&interior + &boundary_theorem_value(u, v, w, n)?)
    } else {
        Ok(interior)
    }
}

fn theorem_id(case: &PerturbationCase, n: usize) -> IdentityId {
    match case {
        PerturbationCase::TorsionVector { t, .. } if t.is_zero() => IdentityId::R4_7,
        PerturbationCase::TorsionVector { .. } => IdentityId::T4_5,
        PerturbationCase::Grading => IdentityId::T4_8Gamma,
        PerturbationCase::VectorGrading { .. } => IdentityId::T4_10,
        PerturbationCase::TorsionGrading { .. } if n == 4 => IdentityId::T4_11n4,
        PerturbationCase::TorsionGrading { .. } => IdentityId::T4_11n6,
    }
}

/// Full evaluation: interior density from the symbol pipeline, boundary
/// density from the half-line pipeline, compared with the theorem.
pub fn spectral_torsion(
    case: &PerturbationCase,
    u: &OneForm,
    v: &OneForm,
    w: &OneForm,
    spec: &ManifoldSpec,
) -> Result<TorsionReport> {
    let n = spec.dim();
    check_inputs(case, u, v, w, n)?;
    let interior = interior_density(u, v, w, case, n)?;
    let interior_paper = interior_theorem_value(case, u, v, w, n)?;
    let mut comparisons = vec![IdentityComparison {
        id: theorem_id(case, n),
        dim: n,
        matches: interior == interior_paper,
        computed: interior.clone(),
        paper: interior_paper,
        note: None,
    }];
    let boundary = if spec.with_boundary() {
        let b = boundary_density(u, v, w, n)?;
        comparisons.push(IdentityComparison {
            id: IdentityId::T4_13,
            dim: n,
            matches: b.pipeline == b.paper,
            computed: b.pipeline.clone(),
            paper: b.paper,
            note: Some("boundary addend only".into()),
        });
        b.pipeline
    } else {
        SymScalar::zero()
    };
    let theorem = theorem_value(case, u, v, w, spec)?;
    let matches_theorem = &interior + &boundary == theorem;
    Ok(TorsionReport {
        interior_density: interior,
        boundary_density: boundary,
        theorem_value: theorem,
        matches_theorem,
        identity_comparisons: comparisons,
    })
}

/// Source of small random rationals for randomized checks.
pub struct RandomInputs {
    rng: ChaCha8Rng,
}

impl RandomInputs {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Numerator in `-5..=5`, denominator in `1..=4`.
    pub fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=4))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(1..=n)
    }

    pub fn one_form(&mut self, n: usize) -> OneForm {
        OneForm::new((0..n).map(|_| self.rational()).collect())
    }

    pub fn three_form(&mut self, n: usize) -> ThreeForm {
        let mut t = ThreeForm::zero(n);
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    t.set(a, b, c, self.rational()).expect("valid key");
                }
            }
        }
        t
    }

    pub fn gaussian(&mut self) -> G {
        G::new(self.rational(), self.rational())
    }

    pub fn multivector(&mut self, n: usize, terms: usize) -> Mv {
        let mut out = Mv::zero(n);
        for _ in 0..terms {
            let blade = Blade(self.rng.gen_range(0..(1u32 << n)));
            out.add_term(blade, self.gaussian());
        }
        out
    }

    pub fn case(&mut self, kind: &str, n: usize) -> PerturbationCase {
        match kind {
            "torsion_vector" => PerturbationCase::TorsionVector { t: self.three_form(n), y: self.one_form(n) },
            "grading" => PerturbationCase::Grading,
            "vector_grading" => PerturbationCase::VectorGrading { x: self.one_form(n) },
            _ => PerturbationCase::TorsionGrading { t: self.three_form(n) },
        }
    }
}

/// Number of randomized trials per identity.
pub const TRIALS: usize = 5;

fn constant(c: G) -> SymScalar {
    SymScalar::constant(c)
}

/// `∫_{|ξ|=1} Tr(Σ_i ξ_i a c(e_i) b c(ξ)) σ(ξ)`.
pub fn inserted_generator_integral(a: &Mv, b: &Mv) -> Result<SymScalar> {
    let n = a.dim();
    let mut p = XiPolynomialMV::<G>::zero(n, n);
    for i in 1..=n {
        p.add_term(XiMonomial::coordinate(n, i), &(a * &Mv::generator(n, i)) * b)?;
    }
    let p = p.try_mul(&XiPolynomialMV::clifford_xi(n, n))?;
    Ok(sym(trace(&integrate_sphere_coefficient(&p)), [vol_atom(n)]))
}

/// Outcome of one trial: computed value, stated value, and an optional
/// normalizer used to display per-unit coefficients.
struct Trial {
    computed: SymScalar,
    paper: SymScalar,
    unit: Option<G>,
}

impl Trial {
    fn new(computed: SymScalar, paper: SymScalar) -> Self {
        Self { computed, paper, unit: None }
    }

    fn per_unit(computed: SymScalar, paper: SymScalar, unit: G) -> Self {
        Self { computed, paper, unit: Some(unit) }
    }
}

fn run_identity(id: IdentityId, spec: &ManifoldSpec, seed: u64) -> Result<IdentityComparison> {
    let n = spec.dim();
    let m = spec.half_dim();
    let mut rng = RandomInputs::new(seed ^ ((id as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    let tr_id = G::from_int(spinor_rank(n));
    let vol = |c: G| sym(c, [vol_atom(n)]);
    let mut note: Option<String> = None;
    let mut trials = Vec::with_capacity(TRIALS);
    for _ in 0..TRIALS {
        let (u, v, w) = (rng.one_form(n), rng.one_form(n), rng.one_form(n));
        let wv = trivector(&u, &v, &w)?;
        let gamma: Mv = grading(n)?;
        let trial = match id {
            IdentityId::L4_3a => {
                let y = rng.one_form(n);
                let computed = trace(&(&wv * &y.to_clifford()));
                let combo = metric_pair(&v, &w)? * metric_pair(&u, &y)? - metric_pair(&u, &w)? * metric_pair(&v, &y)?
                    + metric_pair(&u, &v)? * metric_pair(&w, &y)?;
                Trial::new(constant(computed), constant(tr_id.scale(&combo)))
            }
            IdentityId::L4_3b => {
                let t = rng.three_form(n);
                let computed = trace(&(&wv * &t.to_clifford()));
                Trial::new(constant(computed), constant(tr_id.scale(&eval_threeform(&t, &u, &v, &w)?)))
            }
            IdentityId::E4_17 => {
                let (mut computed, mut paper) = (SymScalar::zero(), SymScalar::zero());
                for i in 1..=n {
                    for j in 1..=n {
                        let r = G::real(rng.rational());
                        let alpha = XiMonomial::coordinate(n, i).mul(&XiMonomial::coordinate(n, j))?;
                        computed = &computed + &moment(n, &alpha)?.scale(&r);
                        if i == j {
                            paper = &paper + &vol(r.scale(&rat(1, n as i64)));
                        }
                    }
                }
                Trial::new(computed, paper)
            }
            IdentityId::E4_18 => {
                let y: Mv = rng.one_form(n).to_clifford();
                let computed =
                    &inserted_generator_integral(&(&wv * &y), &Mv::one(n))? + &inserted_generator_integral(&wv, &y)?;
                let unit = trace(&(&wv * &y));
                Trial::per_unit(computed, vol(unit.scale(&rat(-1, m as i64))), unit)
            }
            IdentityId::E4_19 | IdentityId::E4_20 => {
                let ct: Mv = rng.three_form(n).to_clifford();
                let (computed, stated) = if id == IdentityId::E4_19 {
                    (inserted_generator_integral(&(&wv * &ct), &Mv::one(n))?, int(-1))
                } else {
                    note = Some("per unit T(u,v,w)·Tr(Id); blade algebra gives (n-6)/n".into());
                    (inserted_generator_integral(&wv, &ct)?, int(-5))
                };
                let unit = trace(&(&wv * &ct));
                Trial::per_unit(computed, vol(unit.scale(&stated)), unit)
            }
            IdentityId::L4_9 => {
                let mut word = Mv::zero(n);
                for grade in 0..=n {
                    let mut idx: Vec<usize> = (1..=n).collect();
                    for k in (1..idx.len()).rev() {
                        idx.swap(k, rng.rng.gen_range(0..=k));
                    }
                    let mut chosen: Vec<usize> = idx[..grade].to_vec();
                    chosen.sort_unstable();
                    let blade = Blade::from_indices(&chosen)?;
                    word.add_term(blade, rng.gaussian());
                }
                let computed = supertrace(&word)?;
                // 2^m / i^m on the top blade, 0 below top grade.
                let top = word.coeff(Blade::top(n));
                let stated = &top * &(G::i_pow(-(m as i64)).scale(&pow2(m)));
                Trial::new(constant(computed), constant(stated))
            }
            IdentityId::E4_31 => {
                note = Some("coefficient of c(u)c(v)c(w)γ in the grading-case symbol".into());
                let sigma = sigma_minus2m(&u, &v, &w, &PerturbationCase::Grading, n)?;
                let target = &wv * &gamma;
                let only_xi_free = sigma.terms().all(|(a, _)| a.degree() == 0);
                let coeff = if only_xi_free && sigma.coeff(&XiMonomial::one(n)) == target {
                    G::one()
                } else if only_xi_free && sigma.coeff(&XiMonomial::one(n)) == -target.clone() {
                    -G::one()
                } else {
                    G::zero()
                };
                Trial::new(constant(coeff), constant(-G::one()))
            }
            IdentityId::E4_34 => {
                let x: Mv = rng.one_form(n).to_clifford();
                let computed = trace(&(&(&wv * &x) * &gamma));
                let xf = OneForm::new((1..=n).map(|i| x.coeff(Blade::generator(i)).re).collect());
                let stated = if n == 4 { four_form_pairing(&u, &v, &w, &xf)?.scale(&int(-4)) } else { G::zero() };
                Trial::new(constant(computed), constant(stated))
            }
            IdentityId::E4_36 | IdentityId::E4_37 => {
                let b = &rng.one_form(n).to_clifford() * &gamma;
                let unit = trace(&(&wv * &b));
                let (computed, stated) = if id == IdentityId::E4_36 {
                    (inserted_generator_integral(&(&wv * &b), &Mv::one(n))?, int(-1))
                } else {
                    (inserted_generator_integral(&wv, &b)?, rat(2 - n as i64, n as i64))
                };
                Trial::per_unit(computed, vol(unit.scale(&stated)), unit)
            }
            IdentityId::E4_39 | IdentityId::E4_49 => {
                let t = rng.three_form(n);
                let computed = trace(&(&(&wv * &t.to_clifford()) * &gamma));
                let stated = match n {
                    // 2^3 / i^3 = 8i
                    6 => &six_form_pairing(&u, &v, &w, &t)? * &G::new(int(0), int(8)),
                    // 2^2 / i^2 = -4
                    4 => contracted_pairing(&u, &v, &w, &t)?.scale(&int(-4)),
                    _ => G::zero(),
                };
                let native = if id == IdentityId::E4_39 { 6 } else { 4 };
                if n != native {
                    note = Some(format!("n={n}: compared with the stated value for this dimension"));
                }
                Trial::new(constant(computed), constant(stated))
            }
            IdentityId::E4_41 | IdentityId::E4_42 => {
                let b = &rng.three_form(n).to_clifford() * &gamma;
                let unit = trace(&(&wv * &b));
                let (computed, stated) = if id == IdentityId::E4_41 {
                    note = Some("per unit Tr(c(u)c(v)c(w)c(T)γ); blade algebra gives (6-n)/n".into());
                    (inserted_generator_integral(&wv, &b)?, rat(n as i64 - 6, n as i64))
                } else {
                    (inserted_generator_integral(&(&wv * &b), &Mv::one(n))?, int(-1))
                };
                Trial::per_unit(computed, vol(unit.scale(&stated)), unit)
            }
            IdentityId::E4_55 => {
                // Tr(c(u)c(v)c(w)·π⁺σ_{-1}) at a rational point (ξ', ξ_n).
                let xi_prime: Vec<Rational> = (1..n).map(|_| rng.rational()).collect();
                let t = G::real(rng.rational());
                let projected = pi_plus_symbol(&sigma_minus1(n)?)?;
                let mut computed = G::zero();
                for (alpha, f, mv) in projected.terms() {
                    let weight = alpha
                        .exponents()
                        .iter()
                        .zip(&xi_prime)
                        .fold(Rational::from_integer(1.into()), |acc, (&e, x)| if e == 1 { acc * x } else { acc });
                    let value = f.eval(&t).expect("real point");
                    computed = &computed + &(&value * &trace(&(&wv * mv))).scale(&weight);
                }
                let mut c_xi = Mv::zero(n);
                for (l, x) in xi_prime.iter().enumerate() {
                    c_xi.add_term(Blade::generator(l + 1), G::real(x.clone()));
                }
                let numer = &c_xi + &Mv::generator(n, n).scale_gaussian(&G::i());
                let denom = (&t - &G::i()).scale(&int(2));
                let stated = trace(&(&wv * &numer)) / denom;
                Trial::new(constant(computed), constant(stated))
            }
            IdentityId::E4_56 => {
                let t = G::real(rng.rational());
                let derived = dxn_symbol(m)?;
                let closed = dxn_symbol_closed_form(m);
                let mut computed = derived.eval(&t).expect("real point");
                if derived != closed {
                    // Structural disagreement is reported even if the sample
                    // point happens to agree.
                    computed = &computed + &G::from_int(1);
                }
                Trial::new(constant(computed), constant(closed.eval(&t).expect("real point")))
            }
            IdentityId::E4_57 => {
                let computed = trace(&(&wv * &Mv::generator(n, n)));
                Trial::new(constant(computed), constant(tr_id.scale(&normal_combination(&u, &v, &w)?)))
            }
            IdentityId::E4_60 => {
                note = Some("left side read as (ξ+i)^{-(m-1)}; the printed exponent 1-m gives a polynomial with vanishing m-th derivative".into());
                let f = XiRational::new(vec![G::one()], vec![(-G::i(), m as u32 - 1)]);
                let computed = f.nth_derivative(m).eval(&G::i()).expect("i is not a pole");
                let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
                let two_i = G::new(int(0), int(2));
                let stated = two_i
                    .powi(1 - 2 * m as i32)
                    .expect("nonzero")
                    .scale(&(sign * factorial(2 * m - 2) / factorial(m - 2)));
                Trial::new(constant(computed), constant(stated))
            }
            IdentityId::E4_61 => {
                note = Some("blade algebra carries an extra factor i; the stated E4.62 value is consistent with the computed one".into());
                let f = XiRational::new(vec![G::i()], vec![(-G::i(), m as u32)]);
                let computed = f.nth_derivative(m).eval(&G::i()).expect("i is not a pole");
                let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
                let two_i = G::new(int(0), int(2));
                let stated = two_i
                    .powi(-2 * m as i32)
                    .expect("nonzero")
                    .scale(&(sign * factorial(2 * m - 1) / factorial(m - 1)));
                Trial::new(constant(computed), constant(stated))
            }
            IdentityId::E4_62 => {
                Trial::new(constant(residue_derivative(m)?), constant(residue_derivative_closed_form(m)))
            }
            IdentityId::E4_63 => {
                note = Some(
                    "final closed form; the printed intermediate integrand ξ_n/(2(ξ_n-i)(1+ξ_n²)^m) is half the product of the two symbols and drops w_n g(u,v)"
                        .into(),
                );
                let b = boundary_density(&u, &v, &w, n)?;
                Trial::new(b.pipeline, b.paper)
            }
            IdentityId::T4_5 | IdentityId::R4_7 => {
                let t = if id == IdentityId::T4_5 { rng.three_form(n) } else { ThreeForm::zero(n) };
                let case = PerturbationCase::TorsionVector { t, y: rng.one_form(n) };
                let report = spectral_torsion(&case, &u, &v, &w, &ManifoldSpec::closed(n)?)?;
                Trial::new(report.interior_density, report.theorem_value)
            }
            IdentityId::T4_8Gamma => {
                let report = spectral_torsion(&PerturbationCase::Grading, &u, &v, &w, &ManifoldSpec::closed(n)?)?;
                Trial::new(report.interior_density, report.theorem_value)
            }
            IdentityId::T4_10 => {
                let case = PerturbationCase::VectorGrading { x: rng.one_form(n) };
                let report = spectral_torsion(&case, &u, &v, &w, &ManifoldSpec::closed(n)?)?;
                Trial::new(report.interior_density, report.theorem_value)
            }
            IdentityId::T4_11n4 | IdentityId::T4_11n6 => {
                let native = if id == IdentityId::T4_11n4 { 4 } else { 6 };
                if n != native {
                    note = Some(format!("n={n}: checks the theorem's branch for this dimension"));
                }
                let case = PerturbationCase::TorsionGrading { t: rng.three_form(n) };
                let report = spectral_torsion(&case, &u, &v, &w, &ManifoldSpec::closed(n)?)?;
                Trial::new(report.interior_density, report.theorem_value)
            }
            IdentityId::T4_13 => {
                let case = PerturbationCase::TorsionVector { t: rng.three_form(n), y: rng.one_form(n) };
                let report = spectral_torsion(&case, &u, &v, &w, &ManifoldSpec::new(n, true)?)?;
                Trial::new(report.total(), report.theorem_value)
            }
        };
        trials.push(trial);
    }

    let matches = trials.iter().all(|t| t.computed == t.paper);
    // Show per-unit coefficients when the first usable trial has a nonzero
    // normalizer; otherwise the raw values of the first trial.
    let shown = trials.iter().find(|t| t.unit.as_ref().is_some_and(|u| !u.is_zero())).unwrap_or(&trials[0]);
    let (computed, paper) = match &shown.unit {
        Some(unit) if !unit.is_zero() => {
            let inv = unit.inv().expect("nonzero");
            (shown.computed.scale(&inv), shown.paper.scale(&inv))
        }
        _ => (shown.computed.clone(), shown.paper.clone()),
    };
    Ok(IdentityComparison { id, dim: n, computed, paper, matches, note })
}

/// Runs every identity in `spec`'s dimension with seeded random inputs. A
/// failing evaluation is reported as a non-matching row, never an abort.
/// Rows are evaluated concurrently and returned in [`IdentityId::ALL`] order.
pub fn verify_suite(spec: &ManifoldSpec, seed: u64) -> Vec<IdentityComparison> {
    let row = |id: IdentityId| {
        run_identity(id, spec, seed).unwrap_or_else(|e| IdentityComparison {
            id,
            dim: spec.dim(),
            computed: SymScalar::zero(),
            paper: SymScalar::zero(),
            matches: false,
            note: Some(format!("evaluation failed: {e}")),
        })
    };
    std::thread::scope(|scope| {
        let handles: Vec<_> = IdentityId::ALL.iter().map(|&id| scope.spawn(move || row(id))).collect();
        handles.into_iter().map(|h| h.join().expect("identity evaluation panicked")).collect()
    })
}

/// True when every final theorem row matches.
pub fn finals_match(rows: &[IdentityComparison]) -> bool {
    rows.iter().filter(|r| r.id.is_final()).all(|r| r.matches)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> OneForm {
        OneForm::basis(n, i)
    }

    #[test]
    fn spec_validation() {
        assert_eq!(ManifoldSpec::closed(2), Err(Error::UnsupportedDimension(2)));
        assert_eq!(ManifoldSpec::closed(5), Err(Error::OddDimension(5)));
        assert_eq!(ManifoldSpec::closed(18), Err(Error::UnsupportedDimension(18)));
        assert!(ManifoldSpec::closed(16).is_ok());
    }

    #[test]
    fn identity_ids_round_trip() {
        assert_eq!(IdentityId::ALL.len(), 29);
        for &id in IdentityId::ALL {
            assert_eq!(id.label().parse::<IdentityId>().unwrap(), id);
        }
        let finals: Vec<_> = IdentityId::ALL.iter().filter(|i| i.is_final()).map(|i| i.label()).collect();
        assert_eq!(finals, ["T4.5", "R4.7", "T4.8γ", "T4.10", "T4.11n4", "T4.11n6"]);
    }

    #[test]
    fn theorem_value_examples() {
        let spec = ManifoldSpec::closed(6).unwrap();
        let t = ThreeForm::zero(6).with(1, 2, 3, int(1)).unwrap();
        let case = PerturbationCase::TorsionVector { t, y: OneForm::zero(6) };
        let value = theorem_value(&case, &e(6, 1), &e(6, 2), &e(6, 3), &spec).unwrap();
        assert_eq!(value, density_from_trace(G::from_int(-16), 6));

        let value = theorem_value(&PerturbationCase::Grading, &e(6, 1), &e(6, 2), &e(6, 3), &spec).unwrap();
        assert!(value.is_zero());

        let spec8 = ManifoldSpec::closed(8).unwrap();
        let tg = PerturbationCase::TorsionGrading { t: ThreeForm::zero(8).with(4, 5, 6, int(1)).unwrap() };
        assert!(theorem_value(&tg, &e(8, 1), &e(8, 2), &e(8, 3), &spec8).unwrap().is_zero());
    }

    #[test]
    fn spectral_torsion_examples() {
        let spec = ManifoldSpec::closed(4).unwrap();
        let vg = PerturbationCase::VectorGrading { x: e(4, 4) };
        let report = spectral_torsion(&vg, &e(4, 1), &e(4, 2), &e(4, 3), &spec).unwrap();
        assert_eq!(report.interior_density, density_from_trace(G::from_int(8), 4));
        assert!(report.matches_theorem);

        let bspec = ManifoldSpec::new(4, true).unwrap();
        let tv = PerturbationCase::TorsionVector { t: ThreeForm::zero(4).with(1, 2, 3, int(1)).unwrap(), y: e(4, 1) };
        let report = spectral_torsion(&tv, &e(4, 1), &e(4, 2), &e(4, 3), &bspec).unwrap();
        assert!(report.boundary_density.is_zero());
        assert_eq!(report.total(), report.interior_density);
        assert!(report.matches_theorem);
    }

    #[test]
    fn suite_examples() {
        let rows = verify_suite(&ManifoldSpec::closed(4).unwrap(), 7);
        let row = |id: IdentityId| rows.iter().find(|r| r.id == id).unwrap();
        assert!(row(IdentityId::L4_3b).matches);
        let e420 = row(IdentityId::E4_20);
        assert!(!e420.matches);
        let vol3 = |c: Rational| sym(G::real(c), [SymAtom::VolSphere(3)]);
        assert_eq!(e420.computed, vol3(rat(-1, 2)));
        assert_eq!(e420.paper, vol3(int(-5)));
        assert_eq!(row(IdentityId::E4_62).computed, constant(G::new(int(0), rat(-1, 8))));
        assert!(row(IdentityId::E4_62).matches);

        let rows6 = verify_suite(&ManifoldSpec::closed(6).unwrap(), 7);
        assert!(rows6.iter().find(|r| r.id == IdentityId::L4_3b).unwrap().matches);
    }
}
