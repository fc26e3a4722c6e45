use carnot::{c_mul, heis_gauge_norm, random_small_point, CarnotPoint, CarnotSpec, Radical};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use siegel::*;
use zkernel::rng::keyed_rng;
use zkernel::GaussInt;

fn heis() -> CarnotSpec {
    CarnotSpec::heisenberg(1)
}

#[test]
fn isometry_roundtrip_and_gauge_on_random_pairs() {
    let spec = heis();
    let mut rng = keyed_rng(11, "siegel-it-iso", 0);
    for _ in 0..10_000 {
        let g = random_small_point(&spec, &mut rng);
        let h = random_small_point(&spec, &mut rng);
        let (sg, sh) = (to_siegel(&spec, &g).unwrap(), to_siegel(&spec, &h).unwrap());
        assert_eq!(to_carnot(&sg), g);
        // both gauges are exact radicals, so agreement is exact equality
        let dc = spec.dist_gauge(&g, &h).unwrap();
        assert_eq!(s_dist(&sg, &sh).unwrap(), dc);
    }
}

#[test]
fn product_commutes_with_the_isometry() {
    let spec = heis();
    let mut rng = keyed_rng(12, "siegel-it-mul", 0);
    for _ in 0..1000 {
        let g = random_small_point(&spec, &mut rng);
        let h = random_small_point(&spec, &mut rng);
        let lhs = to_siegel(&spec, &c_mul(&spec, &g, &h).unwrap()).unwrap();
        let rhs = s_mul(&to_siegel(&spec, &g).unwrap(), &to_siegel(&spec, &h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(s_norm(&rhs), heis_gauge_norm(&spec, &c_mul(&spec, &g, &h).unwrap()).unwrap());
    }
}

#[test]
fn heisenberg_two_isometry() {
    let spec = CarnotSpec::heisenberg(2);
    let mut rng = keyed_rng(13, "siegel-it-iso2", 0);
    for _ in 0..300 {
        let g = random_small_point(&spec, &mut rng);
        let h = random_small_point(&spec, &mut rng);
        let lhs = to_siegel(&spec, &c_mul(&spec, &g, &h).unwrap()).unwrap();
        let rhs = s_mul(&to_siegel(&spec, &g).unwrap(), &to_siegel(&spec, &h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(to_carnot(&lhs), c_mul(&spec, &g, &h).unwrap());
    }
}

#[test]
fn inversion_reciprocates_the_norm_and_is_an_involution() {
    let spec = heis();
    let mut rng = keyed_rng(14, "siegel-it-inv", 0);
    let one = Radical::from_rational(BigRational::from_integer(1.into()));
    let mut seen = 0;
    for _ in 0..2000 {
        let h = to_siegel(&spec, &random_small_point(&spec, &mut rng)).unwrap();
        if h.is_origin() {
            continue;
        }
        seen += 1;
        let ih = koranyi_invert(&h).unwrap();
        let prod = Radical::new(ih.norm().radicand * h.norm().radicand, 4);
        assert_eq!(prod, one);
        assert_eq!(koranyi_invert(&ih).unwrap(), h);
    }
    assert!(seen > 1900);
}

#[test]
fn distance_is_left_invariant_and_symmetric() {
    let spec = heis();
    let mut rng = keyed_rng(15, "siegel-it-dist", 0);
    for _ in 0..500 {
        let mut mk = || to_siegel(&spec, &random_small_point(&spec, &mut rng)).unwrap();
        let (g, h, k) = (mk(), mk(), mk());
        let d = s_dist(&g, &h).unwrap();
        assert_eq!(s_dist(&h, &g).unwrap(), d);
        assert_eq!(s_dist(&s_mul(&k, &g).unwrap(), &s_mul(&k, &h).unwrap()).unwrap(), d);
        let two = BigRational::from_integer(2.into());
        let dd = s_dist(&g.dilate(&two).unwrap(), &h.dilate(&two).unwrap()).unwrap();
        assert_eq!(dd, d.scale(&two));
    }
}

#[test]
fn height_ignores_unit_and_common_factor_rescaling() {
    let spec = heis();
    let mut rng = keyed_rng(16, "siegel-it-height", 0);
    for i in 0..500 {
        let h = to_siegel(&spec, &random_small_point(&spec, &mut rng)).unwrap();
        let w = siegel_height(&h);
        assert_eq!(w.point(), h);
        let k = GaussInt::unit(i % 4);
        let f = &k * &GaussInt::new(1 + i % 3, i % 2);
        let scaled: Vec<GaussInt> = w.p_vec().iter().map(|x| x * &f).collect();
        let again = RationalSiegelPoint::new(scaled, w.q() * &f).unwrap();
        assert_eq!(again, w);
        // the height is minimal: no smaller denominator clears every coordinate
        for c in h.u().iter().chain(std::iter::once(h.v())) {
            assert!(c.den().divides(w.q()));
        }
    }
}

#[test]
fn height_examples() {
    let h = |s: &str| siegel_height(&SiegelPoint::parse(s).unwrap());
    assert_eq!(h("1+i, 1").norm_q(), &BigInt::from(1));
    assert_eq!(h("0, 1/3 i").norm_q(), &BigInt::from(9));
    assert_eq!(h("1/3+1/3 i, 1/9").q(), &GaussInt::new(9, 0));
}

proptest! {
    #[test]
    fn dyadic_points_invert_back(x in -64i64..64, y in -64i64..64, t in -64i64..64, k in 0u32..6) {
        let spec = heis();
        let d = 1i64 << k;
        let g = CarnotPoint::new(&spec, vec![
            BigRational::new(x.into(), d.into()),
            BigRational::new(y.into(), d.into()),
            BigRational::new(t.into(), (d * d).into()),
        ]).unwrap();
        let h = to_siegel(&spec, &g).unwrap();
        prop_assume!(!h.is_origin());
        prop_assert_eq!(koranyi_invert(&koranyi_invert(&h).unwrap()).unwrap(), h.clone());
        prop_assert_eq!(to_carnot(&h), g);
    }
}
