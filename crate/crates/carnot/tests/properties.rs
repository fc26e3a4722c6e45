use carnot::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use zkernel::rng::keyed_rng;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn builtins() -> Vec<CarnotSpec> {
    vec![CarnotSpec::heisenberg(1), CarnotSpec::heisenberg(2), CarnotSpec::engel()]
}

#[test]
fn group_axioms_on_random_triples() {
    for spec in builtins() {
        let mut rng = keyed_rng(1, "carnot-it-axioms", spec.dim() as u64);
        let e = CarnotPoint::identity(&spec);
        for _ in 0..1000 {
            let g = random_small_point(&spec, &mut rng);
            let h = random_small_point(&spec, &mut rng);
            let k = random_small_point(&spec, &mut rng);
            let gh_k = c_mul(&spec, &c_mul(&spec, &g, &h).unwrap(), &k).unwrap();
            let g_hk = c_mul(&spec, &g, &c_mul(&spec, &h, &k).unwrap()).unwrap();
            assert_eq!(gh_k, g_hk);
            assert_eq!(c_mul(&spec, &g, &e).unwrap(), g);
            let gi = c_inv(&spec, &g).unwrap();
            assert_eq!(c_mul(&spec, &g, &gi).unwrap(), e);
            assert_eq!(c_mul(&spec, &gi, &g).unwrap(), e);
        }
    }
}

#[test]
fn builtin_inverses_are_negation() {
    for spec in builtins() {
        let mut rng = keyed_rng(9, "carnot-it-neg", spec.dim() as u64);
        for _ in 0..200 {
            let g = random_small_point(&spec, &mut rng);
            let neg = CarnotPoint::new(&spec, g.coords.iter().map(|c| -c).collect()).unwrap();
            assert_eq!(c_inv(&spec, &g).unwrap(), neg);
        }
    }
}

#[test]
fn integer_points_form_a_subgroup() {
    for spec in builtins() {
        let mut rng = keyed_rng(2, "carnot-it-int", spec.dim() as u64);
        for _ in 0..200 {
            let mut mk = || {
                let c: Vec<i64> = (0..spec.dim()).map(|_| rng.gen_range(-50..=50)).collect();
                CarnotPoint::from_i64(&spec, &c).unwrap()
            };
            let g = mk();
            let h = mk();
            assert!(c_mul(&spec, &g, &h).unwrap().is_integral());
            assert!(c_inv(&spec, &g).unwrap().is_integral());
        }
    }
}

#[test]
fn dilation_is_an_automorphism_and_scales_the_norm() {
    for spec in builtins() {
        let mut rng = keyed_rng(3, "carnot-it-dil", spec.dim() as u64);
        for _ in 0..100 {
            let g = random_small_point(&spec, &mut rng);
            let h = random_small_point(&spec, &mut rng);
            let k = random_small_point(&spec, &mut rng);
            let s = r(rng.gen_range(1..=30), rng.gen_range(1..=30));
            let lhs = c_dilate(&spec, &s, &c_mul(&spec, &g, &h).unwrap()).unwrap();
            let rhs = c_mul(
                &spec,
                &c_dilate(&spec, &s, &g).unwrap(),
                &c_dilate(&spec, &s, &h).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs);

            let n = c_norm_inf(&spec, &c_dilate(&spec, &s, &g).unwrap()).unwrap();
            assert_eq!(n, c_norm_inf(&spec, &g).unwrap().scale(&s));

            let d1 = c_dist_inf(&spec, &c_dilate(&spec, &s, &g).unwrap(), &c_dilate(&spec, &s, &h).unwrap()).unwrap();
            assert_eq!(d1, c_dist_inf(&spec, &g, &h).unwrap().scale(&s));

            let kg = c_mul(&spec, &k, &g).unwrap();
            let kh = c_mul(&spec, &k, &h).unwrap();
            assert_eq!(c_dist_inf(&spec, &kg, &kh).unwrap(), c_dist_inf(&spec, &g, &h).unwrap());
            assert_eq!(c_dist_inf(&spec, &g, &h).unwrap(), c_dist_inf(&spec, &h, &g).unwrap());
        }
    }
}

#[test]
fn gauge_metric_is_left_invariant_and_homogeneous() {
    let spec = CarnotSpec::heisenberg(2);
    let mut rng = keyed_rng(4, "carnot-it-gauge", 0);
    for _ in 0..100 {
        let g = random_small_point(&spec, &mut rng);
        let h = random_small_point(&spec, &mut rng);
        let k = random_small_point(&spec, &mut rng);
        let kg = c_mul(&spec, &k, &g).unwrap();
        let kh = c_mul(&spec, &k, &h).unwrap();
        assert_eq!(spec.dist_gauge(&kg, &kh).unwrap(), spec.dist_gauge(&g, &h).unwrap());
        let s = r(rng.gen_range(1..=9), rng.gen_range(1..=9));
        let sg = c_dilate(&spec, &s, &g).unwrap();
        assert_eq!(heis_gauge_norm(&spec, &sg).unwrap(), heis_gauge_norm(&spec, &g).unwrap().scale(&s));
    }
}

// Heis¹ with λ₂ = 1/2 evaluated directly in floating point.
fn heis_dist_f64(a: [f64; 3], b: [f64; 3]) -> (f64, f64) {
    let (x, y) = (b[0] - a[0], b[1] - a[1]);
    // a⁻¹ * b, with a⁻¹ = −a
    let t = b[2] - a[2] + 2.0 * (-a[0] * b[1] + b[0] * a[1]);
    let inf = x.abs().max(y.abs()).max((0.5 * t.abs()).sqrt());
    let gauge = ((x * x + y * y).powi(2) + t * t).powf(0.25);
    (inf, gauge)
}

#[test]
fn triangle_inequality_and_gauge_bracket_on_heis1() {
    let mut rng = keyed_rng(5, "carnot-it-tri", 0);
    let mut pt = || [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-4.0..4.0)];
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..100_000 {
        let (a, b, c) = (pt(), pt(), pt());
        let (ab, gab) = heis_dist_f64(a, b);
        let (bc, _) = heis_dist_f64(b, c);
        let (ac, _) = heis_dist_f64(a, c);
        assert!(ac <= ab + bc + 1e-12, "triangle fails at {a:?} {b:?} {c:?}");
        lo = lo.min(gab / ab);
        hi = hi.max(gab / ab);
    }
    // the bracket is [1, 8^(1/4)], attained at horizontal points and at (s, s, 2s²)
    assert!(lo >= 1.0 - 1e-12 && hi <= 8f64.powf(0.25) + 1e-12, "bracket [{lo}, {hi}]");
    println!("gauge/infinity bracket on 1e5 pairs: [{lo:.6}, {hi:.6}]");
}

#[test]
fn float_oracle_agrees_with_exact_distance() {
    let spec = CarnotSpec::heisenberg(1);
    let mut rng = keyed_rng(6, "carnot-it-float", 0);
    for _ in 0..500 {
        let g = random_small_point(&spec, &mut rng);
        let h = random_small_point(&spec, &mut rng);
        let exact = c_dist_inf(&spec, &g, &h).unwrap().to_f64();
        let gf = g.to_f64();
        let hf = h.to_f64();
        let (f, _) = heis_dist_f64([gf[0], gf[1], gf[2]], [hf[0], hf[1], hf[2]]);
        assert!((exact - f).abs() <= 1e-12 * exact.max(1.0));
    }
}

#[test]
fn nearest_point_is_optimal_within_half_over_q() {
    let spec = CarnotSpec::heisenberg(1);
    let mut rng = keyed_rng(7, "carnot-it-nearest", 0);
    let mut below = 0;
    for _ in 0..1000 {
        // 20-bit dyadic coordinates keep the float oracle exact enough
        let g = HeisDyadic::new(
            rng.gen_range(0..1 << 20),
            rng.gen_range(0..1 << 20),
            rng.gen_range(0..1 << 20),
            20,
        )
        .unwrap();
        let q = rng.gen_range(1..=100u64);
        let gp = g.to_point();
        let hit = nearest_lattice_point(&spec, &gp, q).unwrap();
        let qf = q as f64;
        let gf = gp.to_f64();
        let gf = [gf[0], gf[1], gf[2]];
        let a0 = (qf * gf[0]).round() as i64;
        let b0 = (qf * gf[1]).round() as i64;
        let mut best = f64::INFINITY;
        for a in a0 - 2..=a0 + 2 {
            for b in b0 - 2..=b0 + 2 {
                let c0 = (qf * qf * gf[2] - 2.0 * qf * (a as f64 * gf[1] - b as f64 * gf[0])).round() as i64;
                for c in c0 - 4..=c0 + 4 {
                    let p = [a as f64 / qf, b as f64 / qf, c as f64 / (qf * qf)];
                    best = best.min(heis_dist_f64(gf, p).0);
                }
            }
        }
        let got = hit.dist.to_f64();
        if best < 0.5 / qf {
            below += 1;
            assert!(got <= best * (1.0 + 1e-9), "q={q} g={gp}: {got} vs {best}");
        }
        // the returned point is also never worse than the box optimum by more than the tie slack
        assert!(got <= 0.5 / qf + 1e-12 || best >= 0.5 / qf - 1e-12);
    }
    assert!(below > 100, "only {below} cases fell inside the optimality radius");
}

#[test]
fn dyadic_fast_path_agrees_with_generic_greedy() {
    let spec = CarnotSpec::heisenberg(1);
    let lambda = r(1, 2);
    let mut rng = keyed_rng(8, "carnot-it-dyadic", 0);
    for _ in 0..300 {
        let d = HeisDyadic::new(
            rng.gen_range(0..1i128 << 60),
            rng.gen_range(0..1i128 << 60),
            rng.gen_range(0..1i128 << 60),
            60,
        )
        .unwrap();
        let q = rng.gen_range(1..=d.max_q().min(1 << 20));
        assert_eq!(d.nearest(q).to_hit(&lambda), nearest_lattice_point(&spec, &d.to_point(), q).unwrap());
    }
}

#[test]
fn hits_stream_as_csv_rows() {
    let spec = CarnotSpec::heisenberg(1);
    let g = CarnotPoint::parse(&spec, "1/3, 0, 0").unwrap();
    let hit = nearest_lattice_point(&spec, &g, 3).unwrap();
    let row = hit.csv_row();
    assert_eq!(&row[..4], &["3", "1", "0", "0"]);
    assert_eq!(row[4].parse::<f64>().unwrap(), 0.0);
    assert_eq!(hit.p[0], BigInt::from(1));
}

#[test]
fn user_spec_roundtrips_through_json() {
    let engel = CarnotSpec::engel();
    let text = serde_json::to_string(&engel.to_config()).unwrap();
    let back = CarnotSpec::from_json(&text).unwrap();
    assert_eq!(back.to_config(), engel.to_config());
    // weights must be positive
    let bad = text.replace("\"1/3\"", "\"0\"");
    assert!(CarnotSpec::from_json(&bad).is_err());
}
