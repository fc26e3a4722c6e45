use carnot::Radical;
use hyper::*;
use num_rational::BigRational;
use rand::Rng;
use siegel::*;
use zkernel::rng::keyed_rng;
use zkernel::GaussInt;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn inversion_is_an_involution_on_rational_bases() {
    let mut rng = keyed_rng(41, "hyper-it-inv", 0);
    for _ in 0..1000 {
        let base = random_rational_point(&mut rng, 10_000).point();
        if base.is_origin() {
            continue;
        }
        let b = Horoball::at(base, &rat(rng.gen_range(1..50), rng.gen_range(1..50))).unwrap();
        let once = invert_horoball(&b).unwrap();
        assert_eq!(invert_horoball(&once).unwrap(), b);
    }
    let inf = Horoball::at_infinity(&rat(3, 5)).unwrap();
    assert_eq!(invert_horoball(&invert_horoball(&inf).unwrap()).unwrap(), inf);
}

#[test]
fn chain_matches_closed_form_on_random_rationals() {
    let mut rng = keyed_rng(42, "hyper-it-chain", 0);
    for i in 0..1000 {
        // heights |q| ≤ 10⁴
        let w = random_rational_point(&mut rng, 100_000_000);
        let s0 = [rat(1, 1), rat(3, 2), rat(2, 7)][i % 3].clone();
        let r = rational_horoheight(&w, &s0).unwrap();
        let want = &s0 * &s0 / BigRational::from_integer(w.norm_q().clone());
        assert_eq!(r.height, Radical::new(want, 2));
        assert_eq!(r.chain_product_sq * BigRational::from_integer(w.norm_q().clone()), rat(1, 1));
    }
}

#[test]
fn depth_is_positive_exactly_inside_the_shadow() {
    let mut rng = keyed_rng(43, "hyper-it-shadow", 0);
    let s0 = rat(1, 1);
    for _ in 0..20 {
        let h = random_rational_point(&mut rng, 1_000_000_000_000).point();
        let profile = excursion_profile(&h, &s0, 40).unwrap();
        // oracle: every rational from a direct scan with d < 1/|q|
        let radius = Radius::power(rat(1, 1), rat(1, 1)).unwrap();
        let scan = near_scan(&h, &radius, 1, 1601).unwrap();
        let inside: Vec<_> = scan.iter().filter(|x| x.scaled_f64() < 1.0).map(|x| x.point.clone()).collect();
        let got: Vec<_> = profile.iter().map(|r| r.base.clone()).collect();
        assert_eq!(got, inside);
        for r in &profile {
            assert!(r.depth > 0.0);
            let d = r.base.dist_from(&h).unwrap().to_f64();
            let expect = 2.0 * (1.0 / (r.base.height_f64() * d)).ln();
            assert!((r.depth - expect).abs() < 1e-9);
        }
    }
}

#[test]
fn rational_target_has_an_infinite_excursion() {
    let w = RationalSiegelPoint::new(vec![GaussInt::new(1, 1), GaussInt::new(0, 1)], GaussInt::new(3, 1)).unwrap();
    let profile = excursion_profile(&w.point(), &rat(1, 1), 10).unwrap();
    let own = profile.iter().find(|r| r.base == w).unwrap();
    assert!(own.depth.is_infinite());
    assert_eq!(own.csv_row().last().unwrap(), "inf");
    assert!(max_depth(&profile).is_infinite());
}

fn bounded_digit_point(rng: &mut impl Rng) -> SiegelPoint {
    // lattice digits of gauge norm in [2, 3]
    let mut pool = Vec::new();
    for x in -4i64..=4 {
        for y in -4i64..=4 {
            if (x - y) % 2 != 0 {
                continue;
            }
            let re = (x * x + y * y) / 2;
            for ip in -9i64..=9 {
                if (16..=81).contains(&(re * re + ip * ip)) {
                    pool.push(SiegelPoint::from_ints(vec![GaussInt::new(x, y)], GaussInt::new(re, ip)).unwrap());
                }
            }
        }
    }
    let digits: Vec<SiegelPoint> = (0..16).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    heiscf::evaluate(&SiegelPoint::origin(1), &digits).unwrap()
}

#[test]
fn bounded_digits_give_bounded_excursions() {
    let mut rng = keyed_rng(44, "hyper-it-trichotomy", 0);
    let s0 = rat(1, 1);
    let mut bd_max = 0f64;
    let (mut rand_lo, mut rand_hi) = (0f64, 0f64);
    for _ in 0..8 {
        let h = bounded_digit_point(&mut rng);
        for n in [50, 100, 200] {
            bd_max = bd_max.max(max_depth(&excursion_profile(&h, &s0, n).unwrap()));
        }
        let g = random_rational_point(&mut rng, u64::MAX / 4).point();
        rand_lo += max_depth(&excursion_profile(&g, &s0, 50).unwrap());
        rand_hi += max_depth(&excursion_profile(&g, &s0, 200).unwrap());
    }
    // min |q|·d ≥ 0.2 for these digit strings, so depth ≤ 2·log 5
    assert!(bd_max <= 2.0 * 5f64.ln(), "bounded-digit depth {bd_max}");
    assert!(rand_hi > rand_lo, "random targets: {rand_lo} then {rand_hi}");
}
