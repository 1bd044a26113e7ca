mod common;

use common::{mixing_rotation, one_form, rational, three_form};
use proptest::prelude::*;
use spectral_torsion::forms::{eval_threeform, metric_pair, top_pairing, wedge, AntisymTensor, OneForm};
use spectral_torsion::scalar::{GaussianRational, Rational};
use spectral_torsion::Error;

fn tensor(x: &OneForm) -> AntisymTensor {
    x.into()
}

/// Leibniz determinant of the matrix whose rows are the given forms.
fn determinant(rows: &[&OneForm]) -> Rational {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::from_integer(0.into());
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(Rational::from_integer(1.into()), |acc, i| acc * rows[i].get(p[i] + 1));
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn top_pairing_is_the_determinant(forms in prop::collection::vec(one_form(4), 4)) {
        let refs: Vec<&OneForm> = forms.iter().collect();
        let wedged = forms[1..].iter().try_fold(tensor(&forms[0]), |acc, x| wedge(&acc, &tensor(x))).unwrap();
        prop_assert_eq!(top_pairing(&wedged).unwrap(), GaussianRational::real(determinant(&refs)));
    }

    #[test]
    fn wedge_is_associative(a in one_form(6), b in one_form(6), t in three_form(6, 6)) {
        let (ta, tb, tt) = (tensor(&a), tensor(&b), AntisymTensor::from(&t));
        let left = wedge(&wedge(&ta, &tb).unwrap(), &tt).unwrap();
        let right = wedge(&ta, &wedge(&tb, &tt).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_graded_commutative(a in one_form(6), b in one_form(6), t in three_form(6, 6)) {
        let (ta, tb, tt) = (tensor(&a), tensor(&b), AntisymTensor::from(&t));
        let minus = GaussianRational::from_int(-1);
        prop_assert_eq!(wedge(&ta, &tb).unwrap(), wedge(&tb, &ta).unwrap().scale(&minus));
        // degrees 1 and 3 commute with sign (-1)^3
        prop_assert_eq!(wedge(&ta, &tt).unwrap(), wedge(&tt, &ta).unwrap().scale(&minus));
        prop_assert!(wedge(&ta, &ta).unwrap().is_zero());
    }

    #[test]
    fn three_form_is_trilinear(
        t in three_form(6, 10),
        u in one_form(6), u2 in one_form(6), v in one_form(6), w in one_form(6),
        a in rational(), b in rational(),
    ) {
        let mixed = u.scale(&a).add(&u2.scale(&b)).unwrap();
        let lhs = eval_threeform(&t, &mixed, &v, &w).unwrap();
        let rhs = a * eval_threeform(&t, &u, &v, &w).unwrap() + b * eval_threeform(&t, &u2, &v, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn three_form_is_alternating(t in three_form(6, 10), u in one_form(6), v in one_form(6), w in one_form(6)) {
        let base = eval_threeform(&t, &u, &v, &w).unwrap();
        prop_assert_eq!(eval_threeform(&t, &v, &u, &w).unwrap(), -base.clone());
        prop_assert_eq!(eval_threeform(&t, &u, &w, &v).unwrap(), -base.clone());
        prop_assert_eq!(eval_threeform(&t, &w, &v, &u).unwrap(), -base.clone());
        prop_assert_eq!(eval_threeform(&t, &v, &w, &u).unwrap(), base);
        prop_assert_eq!(eval_threeform(&t, &u, &u, &w).unwrap(), Rational::from_integer(0.into()));
    }

    #[test]
    fn rotation_preserves_metric_and_three_forms(t in three_form(6, 10), u in one_form(6), v in one_form(6), w in one_form(6)) {
        let r = mixing_rotation(6);
        let (ru, rv, rw) = (u.rotated(&r).unwrap(), v.rotated(&r).unwrap(), w.rotated(&r).unwrap());
        prop_assert_eq!(metric_pair(&ru, &rv).unwrap(), metric_pair(&u, &v).unwrap());
        let rt = t.rotated(&r).unwrap();
        prop_assert_eq!(eval_threeform(&rt, &ru, &rv, &rw).unwrap(), eval_threeform(&t, &u, &v, &w).unwrap());
    }
}

#[test]
fn wedge_and_pairing_errors() {
    let t = AntisymTensor::from(
        &spectral_torsion::forms::ThreeForm::zero(4).with(1, 2, 3, spectral_torsion::scalar::int(1)).unwrap(),
    );
    assert!(matches!(wedge(&t, &t), Err(Error::GradeOverflow { left: 3, right: 3, dim: 4 })));
    assert!(matches!(top_pairing(&t), Err(Error::NotTopGrade { grade: 3, dim: 4 })));
    let e4 = OneForm::basis(4, 4);
    assert_eq!(top_pairing(&wedge(&t, &tensor(&e4)).unwrap()).unwrap(), GaussianRational::from_int(1));
    assert!(matches!(metric_pair(&OneForm::zero(4), &OneForm::zero(6)), Err(Error::DimensionMismatch { .. })));
}
