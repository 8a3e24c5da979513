use proptest::prelude::*;
use sedgeo_core::cayley_dickson::{cd_multiply, CdElement};
use sedgeo_core::g2::G2Vector;
use sedgeo_core::homogeneous::{gr_metric, sectional_numerator, Engine, Frame};
use sedgeo_core::scalar::{int, rat, QuadScalar, Rational};
use sedgeo_core::sos::{golden_sectional_polynomial, RationalQuartic};

fn element(level: u32) -> impl Strategy<Value = CdElement> {
    proptest::collection::vec(-4i64..=4, 1 << level)
        .prop_map(move |c| CdElement::from_ints(level, &c).unwrap())
}

fn m_vector() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-2i64..=2, 11)
}

fn g2(v: &[i64]) -> G2Vector {
    let mut c = vec![int(0); 3];
    c.extend(v.iter().map(|&x| int(x)));
    G2Vector::from_rationals(&c)
}

fn eval(f: &RationalQuartic, x: &[Rational]) -> Rational {
    f.iter()
        .map(|(m, c)| m.iter().fold(c.clone(), |acc, &i| acc * &x[i as usize]))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_multiplicative_up_to_octonions(
        (x, y) in (0u32..=3).prop_flat_map(|l| (element(l), element(l)))
    ) {
        let xy = cd_multiply(&x, &y).unwrap();
        prop_assert_eq!(xy.norm_sq(), x.norm_sq() * y.norm_sq());
    }

    #[test]
    fn conjugation_reverses_products(x in element(4), y in element(4)) {
        let lhs = cd_multiply(&x, &y).unwrap().conjugate();
        let rhs = cd_multiply(&y.conjugate(), &x.conjugate()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn numerator_is_a_function_of_the_plane(a in m_vector(), b in m_vector(), t in -2i64..=2) {
        let g = gr_metric();
        let r = rat(4, 9);
        let (x, y) = (g2(&a), g2(&b));
        let n = sectional_numerator(&x, &y, &g, &r).unwrap();
        prop_assert_eq!(&sectional_numerator(&y, &x, &g, &r).unwrap(), &n);
        let shear: Vec<i64> = b.iter().zip(&a).map(|(p, q)| p + t * q).collect();
        prop_assert_eq!(&sectional_numerator(&x, &g2(&shear), &g, &r).unwrap(), &n);
        let twice: Vec<i64> = a.iter().map(|p| 2 * p).collect();
        prop_assert_eq!(
            sectional_numerator(&g2(&twice), &y, &g, &r).unwrap(),
            &n * &QuadScalar::from_rational(int(4))
        );
    }

    #[test]
    fn quartic_evaluates_to_frame_numerator(a in m_vector(), b in m_vector(), pick in 0usize..3) {
        let r = [rat(1, 4), rat(4, 9), int(1)][pick].clone();
        let f = golden_sectional_polynomial().unwrap().at(&r);
        let e = Engine::new(&gr_metric(), &r, Frame::Orthonormal).unwrap();
        let q = |v: &[i64]| v.iter().map(|&x| QuadScalar::from_rational(int(x))).collect::<Vec<_>>();
        let xs: Vec<Rational> = a.iter().chain(&b).map(|&v| int(v)).collect();
        prop_assert_eq!(
            QuadScalar::from_rational(eval(&f, &xs)),
            e.sectional_numerator(&q(&a), &q(&b))
        );
    }
}
