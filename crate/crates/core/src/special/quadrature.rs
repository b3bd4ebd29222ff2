//! Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

#![allow(clippy::excessive_precision)]

use crate::{Error, Result};
use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights belong to the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = h * XGK[k];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[k];
        if k % 2 == 1 {
            gauss += pair * WG[k / 2];
        }
    }
    let value = kronrod * h;
    let error = ((kronrod - gauss) * h).norm();
    Segment { a, b, value, error }
}

/// Integrate a complex-valued `f` over `[a, b]` until the estimated absolute
/// error is below `max(abs_tol, rel_tol * |I|)`.
///
/// `breakpoints` are interior points where the integrand is known to be
/// non-smooth; the interval is split there before refinement starts.
pub fn integrate<F>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature>
where
    F: Fn(f64) -> Complex64,
{
    const MAX_SEGMENTS: usize = 4000;
    let mut nodes = vec![a];
    nodes.extend(breakpoints.iter().copied().filter(|&p| p > a && p < b));
    nodes.push(b);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let mut segments: Vec<Segment> = nodes.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    loop {
        let value: Complex64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NoConvergence("non-finite quadrature value".into()));
        }
        if error <= abs_tol.max(rel_tol * value.norm()) {
            return Ok(Quadrature {
                value,
                error,
                evaluations: 15 * segments.len(),
            });
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::NoConvergence(format!(
                "quadrature error {error:e} after {MAX_SEGMENTS} segments"
            )));
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            return Err(Error::NoConvergence("quadrature segment underflow".into()));
        }
        segments.push(gk15(&f, s.a, mid));
        segments.push(gk15(&f, mid, s.b));
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate(|x| Complex64::new(f(x), 0.0), a, b, &[], abs_tol, rel_tol).map(|q| q.value.re)
}
