use carnot::{CarnotSpec, HeisDyadic};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use siegel::{to_siegel, SiegelPoint};
use zkernel::rng::{keyed_rng, uniform_dyadic};

/// Binary digits of every sampled coordinate. A 53-bit dyadic stands in
/// for a Lebesgue-random real: no denominator below `2^53` can see it.
pub const SAMPLE_BITS: u32 = 53;

fn numerator(r: &BigRational) -> i128 {
    (r * BigRational::from_integer(BigInt::from(1u64 << SAMPLE_BITS)))
        .to_integer()
        .to_i128()
        .expect("unit-interval numerator fits i128")
}

fn draw(seed: u64, module: &str, index: u64) -> [i128; 3] {
    let mut rng = keyed_rng(seed, module, index);
    let mut c = [0i128; 3];
    for slot in &mut c {
        *slot = numerator(&uniform_dyadic(&mut rng, SAMPLE_BITS));
    }
    c
}

/// Sample `index` of the uniform measure on `[0, 1)³` for Heis¹.
pub fn uniform_heis_point(seed: u64, index: u64) -> HeisDyadic {
    let [x, y, t] = draw(seed, "dioph.uniform", index);
    HeisDyadic::new(x, y, t, SAMPLE_BITS).expect("unit-cube sample")
}

/// The same sample pushed forward to the Siegel model.
pub fn uniform_siegel_point(seed: u64, index: u64) -> SiegelPoint {
    let g = uniform_heis_point(seed, index).to_point();
    to_siegel(&CarnotSpec::heisenberg(1), &g).expect("Heis¹ point")
}

/// A coordinate axis of Heis¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// `{(x, 0, 0)}`.
    X,
    /// The center `{(0, 0, t)}`.
    T,
}

/// Sample `index` of the uniform measure on the unit segment of an axis.
/// The zero coordinate is excluded, it being an exact lattice point.
pub fn axis_point(axis: Axis, seed: u64, index: u64) -> HeisDyadic {
    let module = match axis {
        Axis::X => "dioph.axis.x",
        Axis::T => "dioph.axis.t",
    };
    let mut c = draw(seed, module, index)[0];
    if c == 0 {
        c = 1;
    }
    let p = match axis {
        Axis::X => HeisDyadic::new(c, 0, 0, SAMPLE_BITS),
        Axis::T => HeisDyadic::new(0, 0, c, SAMPLE_BITS),
    };
    p.expect("unit-segment sample")
}
