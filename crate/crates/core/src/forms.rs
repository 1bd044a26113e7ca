//! One-forms, antisymmetric 3-forms and general alternating tensors in an
//! orthonormal frame, where forms and vectors are identified by the metric.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, GaussianRational, Rational, Scalar};

/// `u = Σ u_i e_i*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    components: Vec<Rational>,
}

impl OneForm {
    pub fn new(components: Vec<Rational>) -> Self {
        Self { components }
    }

    pub fn zero(dim: usize) -> Self {
        Self { components: vec![Rational::zero(); dim] }
    }

    /// Dual basis element `e_i*`, 1-based.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut out = Self::zero(dim);
        out.components[i - 1] = Rational::one();
        out
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self { components: values.iter().map(|&v| Rational::from_integer(v.into())).collect() }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.components
    }

    /// Component along `e_i`, 1-based.
    pub fn get(&self, i: usize) -> &Rational {
        &self.components[i - 1]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { components: self.components.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check(self.dim(), other.dim())?;
        Ok(Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() })
    }

    /// `u ↦ R u` for a square matrix given by rows.
    pub fn rotated(&self, rows: &[Vec<Rational>]) -> Result<Self> {
        check(self.dim(), rows.len())?;
        let components = rows
            .iter()
            .map(|row| {
                check(self.dim(), row.len())?;
                Ok(row.iter().zip(&self.components).fold(Rational::zero(), |acc, (r, x)| acc + r * x))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { components })
    }
}

/// `T = Σ_{a<b<c} T_abc e_a*∧e_b*∧e_c*`, keys 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeForm {
    dim: usize,
    components: BTreeMap<(usize, usize, usize), Rational>,
}

impl ThreeForm {
    pub fn zero(dim: usize) -> Self {
        Self { dim, components: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `T_abc`; the triple must be strictly increasing within `1..=dim`.
    pub fn set(&mut self, a: usize, b: usize, c: usize, value: Rational) -> Result<()> {
        if !(1 <= a && a < b && b < c) {
            return Err(Error::InvalidInput(format!("3-form index ({a},{b},{c}) is not strictly increasing")));
        }
        if c > self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: c });
        }
        if value.is_zero() {
            self.components.remove(&(a, b, c));
        } else {
            self.components.insert((a, b, c), value);
        }
        Ok(())
    }

    pub fn with(mut self, a: usize, b: usize, c: usize, value: Rational) -> Result<Self> {
        self.set(a, b, c, value)?;
        Ok(self)
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Rational {
        self.components.get(&(a, b, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Pulls back along `R^T`, so that `T'(Ru, Rv, Rw) = T(u, v, w)` for
    /// orthogonal `R`.
    pub fn rotated(&self, rows: &[Vec<Rational>]) -> Result<Self> {
        check(self.dim, rows.len())?;
        let row = |i: usize| OneForm::new(rows[i - 1].clone());
        let mut out = Self::zero(self.dim);
        for a in 1..=self.dim {
            for b in a + 1..=self.dim {
                for c in b + 1..=self.dim {
                    out.set(a, b, c, eval_threeform(self, &row(a), &row(b), &row(c))?)?;
                }
            }
        }
        Ok(out)
    }
}

/// Alternating k-tensor with strictly increasing 1-based keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymTensor {
    dim: usize,
    grade: usize,
    components: BTreeMap<Vec<usize>, GaussianRational>,
}

impl AntisymTensor {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Self { dim, grade, components: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn get(&self, key: &[usize]) -> GaussianRational {
        self.components.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn insert(&mut self, key: Vec<usize>, value: GaussianRational) -> Result<()> {
        if key.len() != self.grade
            || key.windows(2).any(|w| w[0] >= w[1])
            || key.iter().any(|&k| k == 0 || k > self.dim)
        {
            return Err(Error::InvalidInput(format!(
                "bad tensor key {key:?} for grade {} in dimension {}",
                self.grade, self.dim
            )));
        }
        let sum = self.get(&key) + value;
        if sum.is_zero() {
            self.components.remove(&key);
        } else {
            self.components.insert(key, sum);
        }
        Ok(())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for (k, v) in &self.components {
            if !c.is_zero() {
                out.components.insert(k.clone(), v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check(self.dim, other.dim)?;
        if self.grade != other.grade {
            return Err(Error::InvalidInput(format!("cannot add grades {} and {}", self.grade, other.grade)));
        }
        let mut out = self.clone();
        for (k, v) in &other.components {
            out.insert(k.clone(), v.clone())?;
        }
        Ok(out)
    }
}

impl From<&OneForm> for AntisymTensor {
    fn from(u: &OneForm) -> Self {
        let mut out = Self::zero(u.dim(), 1);
        for (i, c) in u.components.iter().enumerate() {
            if !c.is_zero() {
                out.components.insert(vec![i + 1], GaussianRational::real(c.clone()));
            }
        }
        out
    }
}

impl From<&ThreeForm> for AntisymTensor {
    fn from(t: &ThreeForm) -> Self {
        let mut out = Self::zero(t.dim, 3);
        for (&(a, b, c), v) in &t.components {
            out.components.insert(vec![a, b, c], GaussianRational::real(v.clone()));
        }
        out
    }
}

fn check(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `g(u, v) = Σ u_i v_i`.
pub fn metric_pair(u: &OneForm, v: &OneForm) -> Result<Rational> {
    check(u.dim(), v.dim())?;
    Ok(u.components.iter().zip(&v.components).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

/// `T(u, v, w) = Σ_{a<b<c} T_abc det[[u_a,u_b,u_c],[v_a,v_b,v_c],[w_a,w_b,w_c]]`.
pub fn eval_threeform(t: &ThreeForm, u: &OneForm, v: &OneForm, w: &OneForm) -> Result<Rational> {
    for x in [u, v, w] {
        check(t.dim, x.dim())?;
    }
    let mut acc = Rational::zero();
    for (&(a, b, c), coeff) in &t.components {
        let (ua, ub, uc) = (u.get(a), u.get(b), u.get(c));
        let (va, vb, vc) = (v.get(a), v.get(b), v.get(c));
        let (wa, wb, wc) = (w.get(a), w.get(b), w.get(c));
        let det = ua * (vb * wc - vc * wb) - ub * (va * wc - vc * wa) + uc * (va * wb - vb * wa);
        acc += coeff * det;
    }
    Ok(acc)
}

/// Sign of the permutation sorting `seq` (all entries distinct).
fn sort_sign(seq: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Alternating wedge product with shuffle signs.
pub fn wedge(a: &AntisymTensor, b: &AntisymTensor) -> Result<AntisymTensor> {
    check(a.dim, b.dim)?;
    if a.grade + b.grade > a.dim {
        return Err(Error::GradeOverflow { left: a.grade, right: b.grade, dim: a.dim });
    }
    let mut out = AntisymTensor::zero(a.dim, a.grade + b.grade);
    for (ka, va) in &a.components {
        for (kb, vb) in &b.components {
            if ka.iter().any(|i| kb.contains(i)) {
                continue;
            }
            let mut seq = ka.clone();
            seq.extend_from_slice(kb);
            let negative = sort_sign(&seq);
            seq.sort_unstable();
            let v = va * vb;
            out.insert(seq, if negative { -v } else { v })?;
        }
    }
    Ok(out)
}

/// `⟨A, e_1*∧…∧e_n*⟩` for a top-grade tensor.
pub fn top_pairing(a: &AntisymTensor) -> Result<GaussianRational> {
    if a.grade != a.dim {
        return Err(Error::NotTopGrade { grade: a.grade, dim: a.dim });
    }
    let key: Vec<usize> = (1..=a.dim).collect();
    Ok(a.get(&key))
}

/// Clifford image of a form: `Σ x_i c(e_i)` or `Σ T_abc c(e_a)c(e_b)c(e_c)`.
pub trait ToClifford {
    fn to_clifford<C: Scalar>(&self) -> Multivector<C>;
}

impl ToClifford for OneForm {
    fn to_clifford<C: Scalar>(&self) -> Multivector<C> {
        let mut out = Multivector::zero(self.dim());
        for (i, c) in self.components.iter().enumerate() {
            out.add_term(Blade::generator(i + 1), C::from(GaussianRational::real(c.clone())));
        }
        out
    }
}

impl ToClifford for ThreeForm {
    fn to_clifford<C: Scalar>(&self) -> Multivector<C> {
        let mut out = Multivector::zero(self.dim);
        for (&(a, b, c), v) in &self.components {
            let blade = Blade::from_indices(&[a, b, c]).expect("3-form keys are increasing");
            out.add_term(blade, C::from(GaussianRational::real(v.clone())));
        }
        out
    }
}

impl Serialize for OneForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.components.len()))?;
        for c in &self.components {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for OneForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let texts = Vec::<String>::deserialize(deserializer)?;
        let components =
            texts.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>().map_err(de::Error::custom)?;
        Ok(OneForm { components })
    }
}

/// JSON records `[a, b, c, "p/q"]`. The dimension is not part of the wire
/// format; callers re-home the form with [`ThreeFormRecords::into_form`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThreeFormRecords(pub Vec<(usize, usize, usize, Rational)>);

impl ThreeFormRecords {
    pub fn into_form(self, dim: usize) -> Result<ThreeForm> {
        let mut out = ThreeForm::zero(dim);
        for (a, b, c, v) in self.0 {
            if out.components.contains_key(&(a, b, c)) {
                return Err(Error::InvalidInput(format!("duplicate 3-form entry ({a},{b},{c})")));
            }
            out.set(a, b, c, v)?;
        }
        Ok(out)
    }
}

impl From<&ThreeForm> for ThreeFormRecords {
    fn from(t: &ThreeForm) -> Self {
        Self(t.components.iter().map(|(&(a, b, c), v)| (a, b, c, v.clone())).collect())
    }
}

impl Serialize for ThreeFormRecords {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (a, b, c, v) in &self.0 {
            seq.serialize_element(&(a, b, c, format_rational(v)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ThreeFormRecords {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RecordsVisitor;

        impl<'de> Visitor<'de> for RecordsVisitor {
            type Value = ThreeFormRecords;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an array of [a, b, c, \"p/q\"] records")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((a, b, c, text)) = seq.next_element::<(usize, usize, usize, String)>()? {
                    let v = parse_rational(&text).map_err(de::Error::custom)?;
                    if !(1 <= a && a < b && b < c) {
                        return Err(de::Error::custom(format!(
                            "3-form index ({a},{b},{c}) is not strictly increasing"
                        )));
                    }
                    out.push((a, b, c, v));
                }
                Ok(ThreeFormRecords(out))
            }
        }

        deserializer.deserialize_seq(RecordsVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn metric_pair_examples() {
        assert_eq!(metric_pair(&OneForm::basis(4, 1), &OneForm::basis(4, 1)).unwrap(), int(1));
        assert_eq!(metric_pair(&OneForm::basis(4, 1), &OneForm::basis(4, 2)).unwrap(), int(0));
        let u = OneForm::from_ints(&[1, 2, 0, 0]);
        let v = OneForm::from_ints(&[3, 0, 0, 5]);
        assert_eq!(metric_pair(&u, &v).unwrap(), int(3));
        assert!(matches!(metric_pair(&u, &OneForm::zero(6)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn threeform_evaluation_is_alternating() {
        let t = ThreeForm::zero(4).with(1, 2, 3, int(1)).unwrap();
        let (e1, e2, e3) = (OneForm::basis(4, 1), OneForm::basis(4, 2), OneForm::basis(4, 3));
        assert_eq!(eval_threeform(&t, &e1, &e2, &e3).unwrap(), int(1));
        assert_eq!(eval_threeform(&t, &e2, &e1, &e3).unwrap(), int(-1));
        assert_eq!(eval_threeform(&t, &e1, &e1, &e3).unwrap(), int(0));
    }

    #[test]
    fn threeform_rejects_bad_keys() {
        let mut t = ThreeForm::zero(4);
        assert!(t.set(2, 1, 3, int(1)).is_err());
        assert!(matches!(t.set(1, 2, 5, int(1)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn wedge_examples() {
        let e1 = AntisymTensor::from(&OneForm::basis(4, 1));
        let e2 = AntisymTensor::from(&OneForm::basis(4, 2));
        assert_eq!(wedge(&e1, &e2).unwrap().get(&[1, 2]), GaussianRational::from_int(1));
        assert_eq!(wedge(&e2, &e1).unwrap().get(&[1, 2]), GaussianRational::from_int(-1));
        let s = e1.add(&e2).unwrap();
        assert!(wedge(&s, &s).unwrap().is_zero());
        let t = AntisymTensor::from(&ThreeForm::zero(4).with(1, 2, 3, int(1)).unwrap());
        assert!(matches!(wedge(&t, &wedge(&e1, &e2).unwrap()), Err(Error::GradeOverflow { .. })));
    }

    #[test]
    fn top_pairing_examples() {
        let basis: Vec<AntisymTensor> = (1..=4).map(|i| AntisymTensor::from(&OneForm::basis(4, i))).collect();
        let top = basis.iter().skip(1).try_fold(basis[0].clone(), |acc, b| wedge(&acc, b)).unwrap();
        assert_eq!(top_pairing(&top).unwrap(), GaussianRational::from_int(1));
        assert!(matches!(top_pairing(&basis[0]), Err(Error::NotTopGrade { grade: 1, dim: 4 })));

        let mut uvw = AntisymTensor::from(&OneForm::basis(6, 1));
        for i in [2, 3] {
            uvw = wedge(&uvw, &AntisymTensor::from(&OneForm::basis(6, i))).unwrap();
        }
        let t = ThreeForm::zero(6).with(4, 5, 6, int(1)).unwrap();
        let full = wedge(&uvw, &AntisymTensor::from(&t)).unwrap();
        assert_eq!(top_pairing(&full).unwrap(), GaussianRational::from_int(1));
    }

    #[test]
    fn clifford_embedding() {
        use crate::clifford::Multivector;
        let e1: Multivector<GaussianRational> = OneForm::basis(4, 1).to_clifford();
        assert_eq!(e1, Multivector::generator(4, 1));
        let t = ThreeForm::zero(4).with(1, 2, 3, rat(1, 2)).unwrap();
        let ct: Multivector<GaussianRational> = t.to_clifford();
        assert_eq!(ct, Multivector::blade(4, &[1, 2, 3]).unwrap().scale(&GaussianRational::real(rat(1, 2))));
    }

    #[test]
    fn json_shapes() {
        let u = OneForm::new(vec![rat(1, 2), int(0), int(-3), int(1)]);
        let text = serde_json_like(&u);
        assert_eq!(text, r#"["1/2","0","-3","1"]"#);
    }

    fn serde_json_like(u: &OneForm) -> String {
        // Avoids a serde_json dependency in the library: render the same
        // shape by hand from the Serialize impl's element strings.
        let parts: Vec<String> = u.components().iter().map(|c| format!("\"{}\"", format_rational(c))).collect();
        format!("[{}]", parts.join(","))
    }
}
