use heiscf::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use siegel::*;
use zkernel::rng::keyed_rng;
use zkernel::{GaussInt, GaussRat};

fn pt(s: &str) -> SiegelPoint {
    SiegelPoint::parse(s).unwrap()
}

#[test]
fn rational_roundtrip_and_chain_identity() {
    let mut rng = keyed_rng(31, "heiscf-it-roundtrip", 0);
    for _ in 0..1000 {
        let w = random_rational_point(&mut rng, 10_000_000_000);
        let h = w.point();
        let e = expand(&h, 10_000).unwrap();
        assert!(e.terminated, "{h}");
        assert_eq!(e.status, CfStatus::Terminated);
        assert_eq!(evaluate(&e.gamma0, &e.digits).unwrap(), h);
        assert_eq!(e.convergents.last().unwrap(), &w);
        assert!(quality(&h, &e, e.digits.len()).unwrap().is_zero());
        // |v₀⋯v_{n−1}|·|q| = 1, squared to stay in ℚ
        let prod = e.remainders[..e.digits.len()]
            .iter()
            .fold(GaussRat::one(), |acc, r| &acc * r.v());
        assert_eq!(prod.norm() * BigRational::from_integer(w.norm_q().clone()), BigRational::from_integer(1.into()));
    }
}

#[test]
fn remainders_stay_in_the_fundamental_domain() {
    let mut rng = keyed_rng(32, "heiscf-it-domain", 0);
    let one = BigRational::from_integer(1.into());
    for _ in 0..100 {
        let h = random_rational_point(&mut rng, 1_000_000).point();
        let e = expand(&h, 1000).unwrap();
        for r in &e.remainders {
            assert!(r.norm().radicand <= one, "remainder {r} outside the unit sphere");
            let (g, _) = nearest_sieg_int(r).unwrap();
            assert!(g.is_origin(), "remainder {r} is nearer to {g}");
        }
    }
}

/// Independent nearest-point oracle: distances via the group law over a
/// radius-8 window in `r` and ±3 around the best `Im p` for each `r`.
fn brute_nearest(h: &SiegelPoint) -> (SiegelPoint, BigRational) {
    let (ur, ui) = h.u()[0].parts();
    let (x0, y0) = (ur.round().to_integer(), ui.round().to_integer());
    let mut best: Option<(BigRational, SiegelPoint)> = None;
    for dx in -8i64..=8 {
        for dy in -8i64..=8 {
            let (x, y) = (&x0 + dx, &y0 + dy);
            let m: BigInt = &x * &x + &y * &y;
            if &m % 2u32 != BigInt::from(0) {
                continue;
            }
            // centre the Im p window on the real optimum for this r
            let rx = BigRational::from_integer(x.clone());
            let ry = BigRational::from_integer(y.clone());
            let c = (h.v().im() - (&rx * &ui - &ry * &ur)).round().to_integer();
            for dp in -3i64..=3 {
                let g = SiegelPoint::from_ints(vec![GaussInt::new(x.clone(), y.clone())], GaussInt::new(&m / 2u32, &c + dp)).unwrap();
                let d4 = s_dist(&g, h).unwrap().radicand;
                let better = match &best {
                    None => true,
                    Some((bd, _)) => d4 < *bd,
                };
                if better {
                    best = Some((d4, g));
                }
            }
        }
    }
    let (d, g) = best.unwrap();
    (g, d)
}

#[test]
fn nearest_integer_window_is_exhaustive() {
    let mut rng = keyed_rng(33, "heiscf-it-window", 0);
    for i in 0..200 {
        let scale = [1i64, 5, 40][i % 3];
        let u = GaussRat::from_parts(
            &BigRational::new(rng.gen_range(-1000 * scale..1000 * scale).into(), 997.into()),
            &BigRational::new(rng.gen_range(-1000 * scale..1000 * scale).into(), 991.into()),
        );
        let re = u.norm() / BigRational::from_integer(2.into());
        let h = SiegelPoint::new(vec![u], GaussRat::from_parts(&re, &BigRational::new(rng.gen_range(-9000..9000).into(), 983.into()))).unwrap();
        let (g, d) = nearest_sieg_int(&h).unwrap();
        let (_, bd) = brute_nearest(&h);
        assert_eq!(d.radicand, bd, "target {h}");
        assert_eq!(s_dist(&g, &h).unwrap().radicand, bd);
    }
}

#[test]
fn dropping_the_first_digit_shifts_the_expansion() {
    let mut rng = keyed_rng(34, "heiscf-it-shift", 0);
    for _ in 0..200 {
        let h = random_rational_point(&mut rng, 100_000_000).point();
        let e = expand(&h, 1000).unwrap();
        if e.digits.is_empty() {
            continue;
        }
        let e1 = expand(&e.remainders[1], 1000).unwrap();
        assert!(e1.gamma0.is_origin());
        assert_eq!(e1.digits, e.digits[1..].to_vec());
    }
}

#[test]
fn quality_tracks_the_next_remainder() {
    // |q_n|·d(h, c_n) against |v_n|^(1/2), with h_n the remainder after γ_n
    let mut rng = keyed_rng(35, "heiscf-it-quality", 0);
    let (mut lo, mut hi) = (f64::INFINITY, 0f64);
    for _ in 0..300 {
        let h = random_rational_point(&mut rng, 100_000_000).point();
        let e = expand(&h, 1000).unwrap();
        for n in 0..e.digits.len() {
            let q = quality(&h, &e, n).unwrap().to_f64();
            let ratio = q / e.remainders[n].v().abs_f64().sqrt();
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    assert!(lo >= 0.5 && hi <= 2.0, "bracket [{lo}, {hi}]");
}

/// Lattice points with gauge norm in `[2, 3]`.
fn digit_pool() -> Vec<SiegelPoint> {
    let mut pool = Vec::new();
    for x in -4i64..=4 {
        for y in -4i64..=4 {
            if (x - y) % 2 != 0 {
                continue;
            }
            let re = (x * x + y * y) / 2;
            for ip in -9i64..=9 {
                let n4 = re * re + ip * ip;
                if (16..=81).contains(&n4) {
                    pool.push(SiegelPoint::from_ints(vec![GaussInt::new(x, y)], GaussInt::new(re, ip)).unwrap());
                }
            }
        }
    }
    pool
}

#[test]
fn bounded_digits_keep_rationals_away() {
    let pool = digit_pool();
    let mut rng = keyed_rng(36, "heiscf-it-bd", 0);
    for _ in 0..10 {
        let digits: Vec<SiegelPoint> = (0..14).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let h = evaluate(&SiegelPoint::origin(1), &digits).unwrap();
        assert_eq!(evaluate(&SiegelPoint::origin(1), &expand(&h, 100).unwrap().digits).unwrap(), h);
        let best = min_scaled_distance(&h, &BigInt::from(1000), 5.0).unwrap().unwrap();
        assert!(best.scaled_f64() > 0.2, "{}", best.scaled_f64());
    }
}

#[test]
fn surrogates_confirm_digits_of_an_irrational_point() {
    // u = (√2 − 1) + (√3 − 1)i, Im v = π/5, through dyadic surrogates
    let target = |bits: u32| -> Result<SiegelPoint, CfError> {
        let s = BigInt::from(1) << bits;
        let dy = |x: f64| BigRational::new(BigInt::from((x * 2f64.powi(50)).round() as i64) * &s >> 50, s.clone());
        let u = GaussRat::from_parts(&dy(2f64.sqrt() - 1.0), &dy(3f64.sqrt() - 1.0));
        let re = u.norm() / BigRational::from_integer(2.into());
        Ok(SiegelPoint::new(vec![u], GaussRat::from_parts(&re, &dy(std::f64::consts::PI / 5.0)))?)
    };
    let e = expand_surrogate(target, 6, 8, 40).unwrap();
    assert!(!e.digits.is_empty());
    assert_eq!(e.precision_log.len(), e.digits.len());
    let reference = expand(&target(40).unwrap(), 100).unwrap();
    assert_eq!(e.digits[..], reference.digits[..e.digits.len()]);
    assert!(!e.terminated);
}

#[test]
fn json_shape() {
    let e = expand(&pt("0, 1/3 i"), 10).unwrap();
    let v: serde_json::Value = serde_json::to_value(&e).unwrap();
    for key in ["gamma0", "digits", "remainders", "convergents", "terminated", "digit_bound"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["digits"][0], serde_json::to_value(pt("0, -3i")).unwrap());
    assert_eq!(v["terminated"], serde_json::json!(true));
}
