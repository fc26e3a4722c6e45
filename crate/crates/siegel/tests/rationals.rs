use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use siegel::*;
use zkernel::rng::keyed_rng;
use zkernel::{gi_gcd, GaussInt, GaussRat};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A rational Sieg¹ point with small dyadic horizontal part.
fn random_target(rng: &mut impl Rng) -> SiegelPoint {
    let u = GaussRat::from_parts(&rat(rng.gen_range(-32..32), 32), &rat(rng.gen_range(-32..32), 32));
    let t = rat(rng.gen_range(-256..256), 256);
    let re = u.norm() / BigRational::from_integer(2.into());
    SiegelPoint::new(vec![u], GaussRat::from_parts(&re, &t)).unwrap()
}

/// Every lowest-terms rational with canonical `q`, `N(q) < hi`, within
/// `radius`, by exhausting numerator boxes. Targets have `|u|, |v| ≤ 2`
/// and radii at most 1, so `|r| ≤ 5|q|` and `|p| ≤ 8|q|` suffice.
fn brute_near(h: &SiegelPoint, radius: &Radius, hi: i64) -> Vec<(GaussInt, GaussInt, GaussInt)> {
    let mut out = Vec::new();
    let uf = h.u()[0].to_f64();
    let qmax = (hi as f64).sqrt() as i64 + 1;
    for a in 1..=qmax {
        for b in 0..=qmax {
            let nq = a * a + b * b;
            if nq >= hi {
                continue;
            }
            let qa = (nq as f64).sqrt();
            let (rb, pb) = ((5.0 * qa).ceil() as i64, (8.0 * qa).ceil() as i64);
            // a point within d has |r/q − u| ≤ √2·d, since 2·Re(Δv) = |Δu|²
            let reach = 2f64.sqrt() * radius.at(qa) * qa + 1e-6;
            let (cx, cy) = (uf.0 * a as f64 - uf.1 * b as f64, uf.0 * b as f64 + uf.1 * a as f64);
            for x in -rb..=rb {
                for y in -rb..=rb {
                    let m = x * x + y * y;
                    if m % 2 != 0 || (x as f64 - cx).hypot(y as f64 - cy) > reach {
                        continue;
                    }
                    // p on the line c·a + d·b = m/2, solved for one coordinate
                    let mut line = Vec::new();
                    for c in -pb..=pb {
                        if b == 0 {
                            if c * a == m / 2 {
                                line.extend((-pb..=pb).map(|d| (c, d)));
                            }
                        } else if (m / 2 - c * a) % b == 0 {
                            line.push((c, (m / 2 - c * a) / b));
                        }
                    }
                    for (c, d) in line {
                        let (q, r, p) = (GaussInt::new(a, b), GaussInt::new(x, y), GaussInt::new(c, d));
                        let g = gi_gcd(&gi_gcd(&q, &r).unwrap(), &p).unwrap();
                        if !g.is_unit() {
                            continue;
                        }
                        let pt = RationalSiegelPoint::new(vec![r.clone(), p.clone()], q.clone()).unwrap();
                        // the oracle measures distance through the group law
                        let dist = s_dist(h, &pt.point()).unwrap();
                        if dist.to_f64() > 2.0 * radius.at(qa) {
                            continue;
                        }
                        assert_eq!(dist.radicand, pt.dist4_from(h).unwrap());
                        if radius.contains(pt.norm_q(), &dist.radicand) {
                            out.push((q, r, p));
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|(q, r, p)| (q.norm(), vec![q.re.clone(), q.im.clone(), r.re.clone(), r.im.clone(), p.re.clone(), p.im.clone()]));
    out
}

fn triples(hits: &[NearHit]) -> Vec<(GaussInt, GaussInt, GaussInt)> {
    hits.iter()
        .map(|h| (h.point.q().clone(), h.point.r()[0].clone(), h.point.p().clone()))
        .collect()
}

#[test]
fn both_near_engines_agree_with_exhaustion() {
    let mut rng = keyed_rng(21, "siegel-it-near", 0);
    let radii = [
        Radius::power(rat(1, 1), rat(1, 1)).unwrap(),
        Radius::power(rat(3, 2), rat(5, 4)).unwrap(),
        Radius::affine(rat(1, 2), rat(1, 10)).unwrap(),
    ];
    let mut total = 0;
    for trial in 0..6 {
        let h = random_target(&mut rng);
        let radius = &radii[trial % radii.len()];
        let want = brute_near(&h, radius, 26);
        let scan = near_scan(&h, radius, 1, 26).unwrap();
        let lat = near_lattice(&h, radius, &BigInt::from(1), &BigInt::from(26)).unwrap();
        let hybrid = near_rationals(&h, radius, &BigInt::from(1), &BigInt::from(26)).unwrap();
        assert_eq!(triples(&scan), want, "scan, target {h}");
        assert_eq!(triples(&lat), want, "lattice, target {h}");
        assert_eq!(triples(&hybrid), want, "hybrid, target {h}");
        total += want.len();
    }
    assert!(total > 10, "oracle found only {total} points");
}

#[test]
fn lattice_matches_scan_at_larger_heights() {
    let mut rng = keyed_rng(22, "siegel-it-deep", 0);
    let radius = Radius::power(rat(1, 1), rat(1, 1)).unwrap();
    for _ in 0..4 {
        let h = random_target(&mut rng);
        let scan = near_scan(&h, &radius, 2000, 40_000).unwrap();
        let lat = near_lattice(&h, &radius, &BigInt::from(2000), &BigInt::from(40_000)).unwrap();
        assert_eq!(triples(&scan), triples(&lat), "target {h}");
        for hit in &scan {
            assert!(hit.scaled_f64() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn lattice_reaches_huge_heights() {
    // a target with enormous denominators is still searched quickly
    let u = GaussRat::from_parts(&rat(123_456_789, 1 << 30), &rat(-987_654_321, 1 << 31));
    let re = u.norm() / BigRational::from_integer(2.into());
    let h = SiegelPoint::new(vec![u], GaussRat::from_parts(&re, &rat(1, 3))).unwrap();
    let radius = Radius::power(rat(2, 1), rat(1, 1)).unwrap();
    let lo = BigInt::from(10u64).pow(12);
    let hi = BigInt::from(10u64).pow(13);
    let hits = near_lattice(&h, &radius, &lo, &hi).unwrap();
    for hit in &hits {
        assert!(hit.point.norm_q() >= &lo && hit.point.norm_q() < &hi);
        assert!(radius.contains(hit.point.norm_q(), &hit.point.dist4_from(&h).unwrap()));
    }
}

#[test]
fn minimal_scaled_distance_matches_scan() {
    let mut rng = keyed_rng(23, "siegel-it-min", 0);
    for _ in 0..4 {
        let h = random_target(&mut rng);
        let best = min_scaled_distance(&h, &BigInt::from(60), 2.0).unwrap().unwrap();
        let radius = Radius::power(rat(2, 1), rat(1, 1)).unwrap();
        let scan = near_scan(&h, &radius, 1, 3601).unwrap();
        let oracle = scan.iter().map(NearHit::scaled_f64).fold(f64::INFINITY, f64::min);
        assert!((best.scaled_f64() - oracle).abs() < 1e-12, "{} vs {oracle}", best.scaled_f64());
    }
}

/// Exhaustive oracle for the enumeration: `r = (1+i)r̃` with `gcd(r̃, q) = 1`,
/// constraint, and `N(p) ≤ R⁴N(q)`.
fn brute_enumerate(a: i64, b: i64, radius: i64) -> Vec<(i64, i64, i64, i64)> {
    let nq = a * a + b * b;
    let pmax = radius.pow(4) * nq;
    let pb = (pmax as f64).sqrt() as i64 + 1;
    let rb = ((2 * pmax * nq) as f64).sqrt().sqrt() as i64 + 2;
    let q = GaussInt::new(a, b);
    let mut out = Vec::new();
    for x in -rb..=rb {
        for y in -rb..=rb {
            if (x - y).rem_euclid(2) != 0 {
                continue;
            }
            let rt = GaussInt::new((x + y) / 2, (y - x) / 2);
            let coprime = if rt == GaussInt::new(0, 0) { nq == 1 } else { gi_gcd(&rt, &q).unwrap().is_unit() };
            if !coprime {
                continue;
            }
            for c in -pb..=pb {
                for d in -pb..=pb {
                    if c * c + d * d <= pmax && 2 * (c * a + d * b) == x * x + y * y {
                        out.push((x, y, c, d));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_exhaustion() {
    for (a, b, rr) in [(1, 0, 1), (1, 0, 2), (2, 1, 2), (3, 2, 1), (1, 1, 2), (3, 0, 2), (4, 1, 1)] {
        let pts = enumerate_rationals(&GaussInt::new(a, b), &rat(rr, 1)).unwrap();
        let mut got: Vec<(i64, i64, i64, i64)> = pts
            .iter()
            .map(|p| {
                let (x, y) = p.r()[0].to_i64_pair().unwrap();
                let (c, d) = p.p().to_i64_pair().unwrap();
                (x, y, c, d)
            })
            .collect();
        got.sort();
        assert_eq!(got, brute_enumerate(a, b, rr), "q = {a}+{b}i, R = {rr}");
        for p in &pts {
            // every point is already in lowest terms and within R
            let again = RationalSiegelPoint::new(p.p_vec().to_vec(), p.q().clone()).unwrap();
            assert_eq!(&again, p);
            assert!(p.point().norm().to_f64() <= rr as f64 + 1e-12);
        }
    }
}

#[test]
fn unit_denominator_examples() {
    let pts = enumerate_rationals(&GaussInt::new(1, 0), &rat(1, 1)).unwrap();
    let mut got: Vec<String> = pts.iter().map(|p| p.point().to_string()).collect();
    got.sort();
    let mut want: Vec<String> = ["(0, 0)", "(0, i)", "(0, -i)", "(1+i, 1)", "(1-i, 1)", "(-1+i, 1)", "(-1-i, 1)"]
        .iter()
        .map(|s| SiegelPoint::parse(s).unwrap().to_string())
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn density_ratio_for_two_plus_i() {
    let q = GaussInt::new(2, 1);
    let pts = enumerate_rationals(&q, &rat(5, 1)).unwrap();
    let phi = zkernel::totient(&q).unwrap();
    assert_eq!(phi, BigInt::from(4));
    let ratio = pts.len() as f64 / (4.0 * 625.0);
    // f(q) ≍ φ(q)R⁴ with constants of order one
    assert!((0.1..10.0).contains(&ratio), "ratio {ratio}");
}
