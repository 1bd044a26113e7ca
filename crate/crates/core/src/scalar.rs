//! Exact scalars: big rationals, Gaussian rationals, and symbolic scalars that
//! carry formal atoms such as `π` and `vol(S^k)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed { t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(bad());
    }
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) if valid_int(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(value: i64) -> Self {
        Self::real(int(value))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, exp: i32) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn needs_parens(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_by_value {
    ($ty:ty, $($tr:ident :: $method:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $tr::$method(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $tr::$method(&self, rhs)
            }
        }
    )*
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                *self = &*self + rhs;
            }
        }
        impl AddAssign for $ty {
            fn add_assign(&mut self, rhs: $ty) {
                *self = &*self + &rhs;
            }
        }
    };
}

forward_by_value!(GaussianRational, Add::add, Sub::sub, Mul::mul);

impl Div for GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_text = |im: &Rational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{} i", format_rational(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&format_rational(&self.re)),
            (true, false) => f.write_str(&im_text(&self.im)),
            (false, false) => {
                let im = im_text(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", format_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}", format_rational(&self.re), im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `"p/q"`, `"p/q i"`, `"i"`, `"-i"` and `"p/q+r/s i"`.
    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s).trim();
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(s).map(Self::real);
        };
        // A sign after the first character separates the real and imaginary parts.
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(idx, _)| idx).last();
        let (re_text, im_text) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im_text = im_text.trim();
        let im = match im_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t.trim_start_matches('+'))?,
        };
        Ok(Self { re: parse_rational(re_text)?, im })
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Formal symbols kept unevaluated so closed forms stay exact. Declaration
/// order is the print order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymAtom {
    Pi,
    /// `tr_F(Φ)`
    TrFPhi,
    /// `dim F`
    DimF,
    /// `vol(S^k)`, the unnormalized area of the unit k-sphere.
    VolSphere(u32),
}

impl fmt::Display for SymAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymAtom::Pi => f.write_str("π"),
            SymAtom::VolSphere(k) => write!(f, "vol(S^{k})"),
            SymAtom::TrFPhi => f.write_str("tr_F(Φ)"),
            SymAtom::DimF => f.write_str("dim_F"),
        }
    }
}

impl FromStr for SymAtom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "π" | "pi" => Ok(SymAtom::Pi),
            "tr_F(Φ)" | "tr_F(Phi)" => Ok(SymAtom::TrFPhi),
            "dim_F" => Ok(SymAtom::DimF),
            _ => {
                let k = s
                    .strip_prefix("vol(S^")
                    .and_then(|t| t.strip_suffix(')'))
                    .and_then(|t| t.parse::<u32>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown atom {s:?}")))?;
                Ok(SymAtom::VolSphere(k))
            }
        }
    }
}

/// Sorted multiset of atoms; the empty monomial is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<SymAtom>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = SymAtom>) -> Self {
        let mut v: Vec<_> = atoms.into_iter().collect();
        v.sort();
        Self(v)
    }

    pub fn atoms(&self) -> &[SymAtom] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn merge(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Self(out)
    }

    /// `(atom, power)` runs in print order.
    fn powers(&self) -> Vec<(SymAtom, usize)> {
        let mut runs: Vec<(SymAtom, usize)> = Vec::new();
        for &a in &self.0 {
            match runs.last_mut() {
                Some((last, count)) if *last == a => *count += 1,
                _ => runs.push((a, 1)),
            }
        }
        runs
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (idx, (atom, power)) in self.powers().into_iter().enumerate() {
            if idx > 0 {
                f.write_str("·")?;
            }
            if power == 1 {
                write!(f, "{atom}")?;
            } else {
                write!(f, "{atom}^{power}")?;
            }
        }
        Ok(())
    }
}

/// Exact Gaussian-rational combination of atom monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymScalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl SymScalar {
    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: GaussianRational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Self { terms }
    }

    pub fn atom(atom: SymAtom) -> Self {
        Self::term(GaussianRational::one(), Monomial::from_atoms([atom]))
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(GaussianRational::real(r))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of one monomial (zero when absent).
    pub fn coeff(&self, monomial: &Monomial) -> GaussianRational {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    /// The constant value, if no atom occurs.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// `(coefficient, monomial)` when exactly one term is present.
    pub fn as_single_term(&self) -> Option<(&GaussianRational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn add_term(&mut self, monomial: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes complex values for every atom.
    pub fn eval(&self, env: &HashMap<SymAtom, Complex64>) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (monomial, c) in &self.terms {
            let mut value = c.to_complex();
            for atom in monomial.atoms() {
                let v = env.get(atom).ok_or(Error::MissingAtom(*atom))?;
                value *= v;
            }
            total += value;
        }
        Ok(total)
    }

    /// Every atom occurring in some term.
    pub fn atoms(&self) -> Vec<SymAtom> {
        let mut atoms: Vec<_> = self.terms.keys().flat_map(|m| m.atoms().iter().copied()).collect();
        atoms.sort();
        atoms.dedup();
        atoms
    }
}

/// Evaluates `a` in double precision; thin alias kept for API symmetry.
pub fn sym_eval(a: &SymScalar, env: &HashMap<SymAtom, Complex64>) -> Result<Complex64> {
    a.eval(env)
}

pub fn sym_mul(a: &SymScalar, b: &SymScalar) -> SymScalar {
    a * b
}

impl Zero for SymScalar {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymScalar {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl From<GaussianRational> for SymScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<Rational> for SymScalar {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<SymAtom> for SymScalar {
    fn from(a: SymAtom) -> Self {
        Self::atom(a)
    }
}

impl<'a> Add<&'a SymScalar> for &'a SymScalar {
    type Output = SymScalar;
    fn add(self, rhs: &SymScalar) -> SymScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SymScalar> for &'a SymScalar {
    type Output = SymScalar;
    fn sub(self, rhs: &SymScalar) -> SymScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SymScalar> for &'a SymScalar {
    type Output = SymScalar;
    fn mul(self, rhs: &SymScalar) -> SymScalar {
        let mut out = SymScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.merge(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SymScalar {
    type Output = SymScalar;
    fn neg(self) -> SymScalar {
        SymScalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

forward_by_value!(SymScalar, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (monomial, c)) in self.terms.iter().enumerate() {
            let text = render_term(c, monomial);
            match (idx, text.strip_prefix('-')) {
                (0, _) => f.write_str(&text)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn render_coeff(c: &GaussianRational) -> String {
    if c.needs_parens() {
        format!("({c})")
    } else {
        c.to_string()
    }
}

fn render_term(c: &GaussianRational, monomial: &Monomial) -> String {
    if monomial.is_one() {
        return render_coeff(c);
    }
    if c.is_one() {
        monomial.to_string()
    } else if (-c).is_one() {
        format!("-{monomial}")
    } else {
        format!("{}·{monomial}", render_coeff(c))
    }
}

/// Splits `text` at top-level `" + "` / `" - "` separators, returning signed
/// pieces.
pub(crate) fn split_sum(text: &str) -> Vec<(bool, String)> {
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut negative = false;
    let mut current = String::new();
    let chars: Vec<char> = text.chars().collect();
    let mut idx = 0;
    while idx < chars.len() {
        let c = chars[idx];
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        if depth == 0
            && c == ' '
            && idx + 2 < chars.len()
            && (chars[idx + 1] == '+' || chars[idx + 1] == '-')
            && chars[idx + 2] == ' '
        {
            pieces.push((negative, std::mem::take(&mut current)));
            negative = chars[idx + 1] == '-';
            idx += 3;
            continue;
        }
        current.push(c);
        idx += 1;
    }
    pieces.push((negative, current));
    pieces
}

impl FromStr for SymScalar {
    type Err = Error;

    /// Parses the canonical rendering produced by `Display`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut out = SymScalar::zero();
        for (negative, piece) in split_sum(text) {
            let mut term = parse_product(piece.trim())?;
            if negative {
                term = -term;
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

fn parse_product(piece: &str) -> Result<SymScalar> {
    let (sign, body) = match piece.strip_prefix('-') {
        // "-i" and "-1/2 i" are coefficients in their own right.
        Some(rest) if !rest.is_empty() && !looks_like_coeff(piece) => (-1, rest),
        _ => (1, piece),
    };
    let mut coeff = GaussianRational::from_int(sign);
    let mut atoms = Vec::new();
    for factor in body.split('·') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {piece:?}")));
        }
        if let Some((atom, power)) = parse_atom_power(factor) {
            atoms.extend(std::iter::repeat_n(atom, power));
        } else {
            coeff = &coeff * &factor.parse::<GaussianRational>()?;
        }
    }
    Ok(SymScalar::term(coeff, Monomial::from_atoms(atoms)))
}

fn looks_like_coeff(piece: &str) -> bool {
    let head = piece.split('·').next().unwrap_or("");
    head.parse::<GaussianRational>().is_ok()
}

fn parse_atom_power(factor: &str) -> Option<(SymAtom, usize)> {
    if let Ok(atom) = factor.parse::<SymAtom>() {
        return Some((atom, 1));
    }
    let (base, power) = factor.rsplit_once('^')?;
    let power: usize = power.parse().ok()?;
    let atom = base.parse::<SymAtom>().ok()?;
    Some((atom, power))
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coeff: GaussianRational,
    atoms: Vec<String>,
}

impl SymScalar {
    /// Machine-readable term list: one record per monomial, canonical order.
    pub fn term_list(&self) -> Vec<(GaussianRational, Vec<String>)> {
        self.terms.iter().map(|(m, c)| (c.clone(), m.atoms().iter().map(|a| a.to_string()).collect())).collect()
    }
}

impl Serialize for SymScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> =
            self.term_list().into_iter().map(|(coeff, atoms)| TermRecord { coeff, atoms }).collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut out = SymScalar::zero();
        for record in records {
            let atoms = record
                .atoms
                .iter()
                .map(|a| a.parse::<SymAtom>())
                .collect::<Result<Vec<_>>>()
                .map_err(serde::de::Error::custom)?;
            out = &out + &SymScalar::term(record.coeff, Monomial::from_atoms(atoms));
        }
        Ok(out)
    }
}

/// Coefficient ring for Clifford multivectors.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + From<GaussianRational>
    + Send
    + Sync
    + 'static
{
    fn scale_by(&self, c: &GaussianRational) -> Self;

    /// Rendering safe to juxtapose with `·` in a product.
    fn render_factor(&self) -> String;

    fn to_sym(&self) -> SymScalar;
}

impl Scalar for GaussianRational {
    fn scale_by(&self, c: &GaussianRational) -> Self {
        self * c
    }

    fn render_factor(&self) -> String {
        render_coeff(self)
    }

    fn to_sym(&self) -> SymScalar {
        SymScalar::from(self.clone())
    }
}

impl Scalar for SymScalar {
    fn scale_by(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }

    fn render_factor(&self) -> String {
        if self.terms.len() > 1 {
            format!("({self})")
        } else {
            self.to_string()
        }
    }

    fn to_sym(&self) -> SymScalar {
        self.clone()
    }
}
