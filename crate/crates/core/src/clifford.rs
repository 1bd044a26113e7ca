//! Exact Clifford algebra `Cl(n)` on an orthonormal frame with
//! `c(e_i)c(e_j) + c(e_j)c(e_i) = -2δ_ij`, plus the spinor trace, the
//! supertrace and a matrix-representation oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{split_sum, GaussianRational, Scalar, SymScalar};

/// Largest supported dimension; a blade mask fits in one `u32` word.
pub const MAX_DIM: usize = 16;
/// Largest dimension accepted by the matrix oracle.
pub const MAX_REP_DIM: usize = 12;

/// Ordered product `c(e_{i1})…c(e_{ik})` with `i1 < … < ik`, stored as a
/// bitmask (bit `i-1` for generator `e_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const IDENTITY: Blade = Blade(0);

    /// Blade from 1-based generator indices; repeated or out-of-order
    /// indices are rejected.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > MAX_DIM || i <= last {
                return Err(Error::InvalidInput(format!("bad blade indices {indices:?}")));
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Ok(Blade(mask))
    }

    pub fn generator(i: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&i));
        Blade(1 << (i - 1))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b as usize + 1).collect()
    }

    /// Top blade `c(e_1)…c(e_n)`.
    pub fn top(n: usize) -> Self {
        Blade(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    /// Product of two blades: the resulting blade and its sign. Reordering
    /// uses one sign flip per adjacent transposition; each repeated generator
    /// contracts to `-1`.
    pub fn product(self, other: Blade) -> (Blade, bool) {
        let mut swaps = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.0 >> (j + 1)).count_ones();
            b &= b - 1;
        }
        let contractions = (self.0 & other.0).count_ones();
        (Blade(self.0 ^ other.0), (swaps + contractions) % 2 == 1)
    }

    fn fits(self, dim: usize) -> bool {
        dim >= 32 || self.0 >> dim == 0
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "e{{{}}}", idx.join(" "))
    }
}

/// Element of `Cl(n)` with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct Multivector<C = SymScalar> {
    dim: usize,
    coeffs: BTreeMap<Blade, C>,
}

impl<C: Scalar> Multivector<C> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "Clifford dimension {dim} exceeds {MAX_DIM}");
        Self { dim, coeffs: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::from_blade(dim, Blade::IDENTITY, C::one())
    }

    pub fn scalar(dim: usize, c: C) -> Self {
        Self::from_blade(dim, Blade::IDENTITY, c)
    }

    /// The generator `c(e_i)`, 1-based.
    pub fn generator(dim: usize, i: usize) -> Self {
        assert!((1..=dim).contains(&i), "generator e{i} outside dimension {dim}");
        Self::from_blade(dim, Blade::generator(i), C::one())
    }

    pub fn from_blade(dim: usize, blade: Blade, c: C) -> Self {
        let mut out = Self::zero(dim);
        assert!(blade.fits(dim), "blade {blade} outside dimension {dim}");
        out.add_term(blade, c);
        out
    }

    /// Blade from 1-based ascending indices with unit coefficient.
    pub fn blade(dim: usize, indices: &[usize]) -> Result<Self> {
        let blade = Blade::from_indices(indices)?;
        if !blade.fits(dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: *indices.iter().max().unwrap_or(&0) });
        }
        Ok(Self::from_blade(dim, blade, C::one()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &C)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, blade: Blade) -> C {
        self.coeffs.get(&blade).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, blade: Blade, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert!(blade.fits(self.dim));
        match self.coeffs.get_mut(&blade) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.coeffs.remove(&blade);
                }
            }
            None => {
                self.coeffs.insert(blade, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, v) in &self.coeffs {
            out.add_term(*b, v.clone() * c);
        }
        out
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, v) in &self.coeffs {
            out.add_term(*b, v.scale_by(c));
        }
        out
    }

    /// Coefficient of the identity blade.
    pub fn scalar_part(&self) -> C {
        self.coeff(Blade::IDENTITY)
    }

    pub fn grade_part(&self, grade: usize) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().filter(|(b, _)| b.grade() == grade).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    /// Distinct grades carrying a nonzero coefficient.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.coeffs.keys().map(|b| b.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim);
        for (ba, ca) in &self.coeffs {
            for (bb, cb) in &other.coeffs {
                let (blade, negative) = ba.product(*bb);
                let v = ca.clone() * cb;
                out.add_term(blade, if negative { -v } else { v });
            }
        }
        Ok(out)
    }

    /// Lifts every coefficient into another scalar ring.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Multivector<D> {
        let mut out = Multivector::<D>::zero(self.dim);
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c));
        }
        out
    }
}

impl Multivector<GaussianRational> {
    pub fn to_sym(&self) -> Multivector<SymScalar> {
        self.map_coeffs(|c| SymScalar::from(c.clone()))
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a, found: b })
    }
}

/// Exact product; fails on dimension mismatch.
pub fn mv_mul<C: Scalar>(a: &Multivector<C>, b: &Multivector<C>) -> Result<Multivector<C>> {
    a.try_mul(b)
}

impl<'a, C: Scalar> Mul<&'a Multivector<C>> for &'a Multivector<C> {
    type Output = Multivector<C>;
    fn mul(self, rhs: &Multivector<C>) -> Multivector<C> {
        self.try_mul(rhs).expect("multivector dimensions must agree")
    }
}

impl<C: Scalar> Mul for Multivector<C> {
    type Output = Multivector<C>;
    fn mul(self, rhs: Multivector<C>) -> Multivector<C> {
        &self * &rhs
    }
}

impl<'a, C: Scalar> Add<&'a Multivector<C>> for &'a Multivector<C> {
    type Output = Multivector<C>;
    fn add(self, rhs: &Multivector<C>) -> Multivector<C> {
        self.try_add(rhs).expect("multivector dimensions must agree")
    }
}

impl<C: Scalar> Add for Multivector<C> {
    type Output = Multivector<C>;
    fn add(self, rhs: Multivector<C>) -> Multivector<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Neg for &Multivector<C> {
    type Output = Multivector<C>;
    fn neg(self) -> Multivector<C> {
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().map(|(b, c)| (*b, -c.clone())).collect() }
    }
}

impl<C: Scalar> Neg for Multivector<C> {
    type Output = Multivector<C>;
    fn neg(self) -> Multivector<C> {
        -&self
    }
}

impl<'a, C: Scalar> Sub<&'a Multivector<C>> for &'a Multivector<C> {
    type Output = Multivector<C>;
    fn sub(self, rhs: &Multivector<C>) -> Multivector<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Sub for Multivector<C> {
    type Output = Multivector<C>;
    fn sub(self, rhs: Multivector<C>) -> Multivector<C> {
        &self - &rhs
    }
}

/// Grading operator `γ = i^m c(e_1)…c(e_2m)`.
pub fn grading<C: Scalar>(n: usize) -> Result<Multivector<C>> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
    }
    let phase = GaussianRational::i_pow((n / 2) as i64);
    Ok(Multivector::from_blade(n, Blade::top(n), C::from(phase)))
}

/// `Tr(Id) = 2^m` for the irreducible spinor module, `m = ⌊n/2⌋`.
pub fn spinor_rank(n: usize) -> i64 {
    1i64 << (n / 2)
}

/// Spinor-representation trace: `2^m` times the identity coefficient.
pub fn trace<C: Scalar>(a: &Multivector<C>) -> C {
    a.scalar_part().scale_by(&GaussianRational::from_int(spinor_rank(a.dim())))
}

/// Trace of a product without forming it: only matching blades reach the
/// identity component.
pub fn trace_of_product<C: Scalar>(a: &Multivector<C>, b: &Multivector<C>) -> Result<C> {
    check_dims(a.dim, b.dim)?;
    let mut acc = C::zero();
    for (blade, ca) in &a.coeffs {
        if let Some(cb) = b.coeffs.get(blade) {
            let (_, negative) = blade.product(*blade);
            let v = ca.clone() * cb;
            acc += &(if negative { -v } else { v });
        }
    }
    Ok(acc.scale_by(&GaussianRational::from_int(spinor_rank(a.dim))))
}

/// `Str(a) = Tr(γ a)`.
pub fn supertrace<C: Scalar>(a: &Multivector<C>) -> Result<C> {
    let gamma = grading::<C>(a.dim())?;
    trace_of_product(&gamma, a)
}

/// `Σ_i c(e_i) B c(e_i)`.
pub fn conjugate_sum<C: Scalar>(b: &Multivector<C>) -> Multivector<C> {
    let n = b.dim();
    let mut out = Multivector::zero(n);
    for i in 1..=n {
        let e = Multivector::<C>::generator(n, i);
        out = &out + &(&(&e * b) * &e);
    }
    out
}

impl<C: Scalar> fmt::Display for Multivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (idx, (blade, c)) in self.coeffs.iter().enumerate() {
            let term = if c.is_one() {
                blade.to_string()
            } else if (-c.clone()).is_one() {
                format!("-{blade}")
            } else {
                format!("{}·{blade}", c.render_factor())
            };
            match (idx, term.strip_prefix('-')) {
                (0, _) => f.write_str(&term)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Multivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({})[{}]", self.dim, self)
    }
}

impl Multivector<SymScalar> {
    /// Parses the `Display` grammar: `coeff·e{i j …}` terms joined by
    /// `" + "` / `" - "`, with `e{}` for the identity.
    pub fn parse(dim: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut out = Self::zero(dim);
        if text == "0" {
            return Ok(out);
        }
        for (negative, piece) in split_sum(text) {
            let piece = piece.trim();
            let (blade_text, coeff_text) = match piece.rfind("e{") {
                Some(pos) => (&piece[pos..], piece[..pos].trim_end_matches('·')),
                None => return Err(Error::Parse(format!("missing blade in {piece:?}"))),
            };
            let inner = blade_text
                .strip_prefix("e{")
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("bad blade {blade_text:?}")))?;
            let indices = inner
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let blade = Blade::from_indices(&indices)?;
            if !blade.fits(dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: *indices.iter().max().unwrap() });
            }
            let mut coeff = match coeff_text {
                "" => SymScalar::one(),
                "-" => -SymScalar::one(),
                t => {
                    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
                    SymScalar::from_str(t)?
                }
            };
            if negative {
                coeff = -coeff;
            }
            out.add_term(blade, coeff);
        }
        Ok(out)
    }
}

/// Dense square matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Debug)]
pub struct CMatrix {
    size: usize,
    data: Vec<GaussianRational>,
}

impl CMatrix {
    pub fn zeros(size: usize) -> Self {
        Self { size, data: vec![GaussianRational::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.data[i * size + i] = GaussianRational::one();
        }
        m
    }

    fn from_rows(rows: [[GaussianRational; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = rows;
        Self { size: 2, data: vec![a, b, c, d] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &GaussianRational {
        &self.data[row * self.size + col]
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let size = self.size * other.size;
        let mut out = Self::zeros(size);
        for i in 0..self.size {
            for j in 0..self.size {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.size {
                    for l in 0..other.size {
                        out.data[(i * other.size + k) * size + j * other.size + l] = a * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> CMatrix {
        Self { size: self.size, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.size).fold(GaussianRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] = &out.data[i * n + j] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.size, rhs.size);
        CMatrix { size: self.size, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

/// Complex spinor representation of `Cl(2m)` on `C^(2^m)`.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    dim: usize,
    generators: Vec<CMatrix>,
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// Matrix of a blade: ascending product of generator matrices.
    pub fn blade_matrix(&self, blade: Blade) -> CMatrix {
        let size = 1usize << (self.dim / 2);
        blade.indices().iter().fold(CMatrix::identity(size), |acc, &i| &acc * &self.generators[i - 1])
    }
}

/// Builds `c(e_{2k+1}) = i·σz^{⊗k} ⊗ σx ⊗ I^{⊗(m-k-1)}` and
/// `c(e_{2k+2}) = i·σz^{⊗k} ⊗ σy ⊗ I^{⊗(m-k-1)}`.
pub fn rep_build(n: usize) -> Result<MatrixRep> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    if n > MAX_REP_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_REP_DIM });
    }
    let m = n / 2;
    let zero = GaussianRational::zero;
    let one = GaussianRational::one;
    let i = GaussianRational::i;
    let sigma_x = CMatrix::from_rows([[zero(), one()], [one(), zero()]]);
    let sigma_y = CMatrix::from_rows([[zero(), -i()], [i(), zero()]]);
    let sigma_z = CMatrix::from_rows([[one(), zero()], [zero(), -one()]]);
    let id2 = CMatrix::identity(2);
    let tensor = |slots: Vec<&CMatrix>| slots.into_iter().fold(CMatrix::identity(1), |acc, f| acc.kron(f));
    let mut generators = Vec::with_capacity(n);
    for k in 0..m {
        for pauli in [&sigma_x, &sigma_y] {
            let mut slots = Vec::with_capacity(m);
            slots.extend(std::iter::repeat_n(&sigma_z, k));
            slots.push(pauli);
            slots.extend(std::iter::repeat_n(&id2, m - k - 1));
            generators.push(tensor(slots).scale(&i()));
        }
    }
    Ok(MatrixRep { dim: n, generators })
}

/// Literal matrix trace of `a` in the representation.
pub fn rep_trace<C: Scalar>(rep: &MatrixRep, a: &Multivector<C>) -> Result<C> {
    check_dims(rep.dim, a.dim())?;
    let mut acc = C::zero();
    for (blade, c) in a.terms() {
        let tr = rep.blade_matrix(*blade).trace();
        if !tr.is_zero() {
            acc += &c.scale_by(&tr);
        }
    }
    Ok(acc)
}
