//! Minimal extended-precision real/complex arithmetic on top of `astro-float`.
//!
//! The hypergeometric series in this crate suffer catastrophic cancellation:
//! at argument `z` the individual terms peak near `exp(2*sqrt(|z|))` while the
//! sum stays of order one. All series accumulation therefore runs through
//! these helpers at a working precision chosen from `|z|`; only the final
//! value is rounded back to `f64`.

use astro_float::{BigFloat, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

/// Fixed-precision context for extended arithmetic.
#[derive(Debug, Clone)]
pub struct MpCtx {
    prec: usize,
}

impl MpCtx {
    /// Context with at least `decimal_digits` significant decimal digits.
    pub fn with_digits(decimal_digits: u32) -> Self {
        // 3.33 bits per decimal digit, plus guard bits, rounded up to a word.
        let bits = (decimal_digits as f64 * 3.322).ceil() as usize + 32;
        let prec = bits.div_ceil(64) * 64;
        MpCtx { prec: prec.max(128) }
    }

    pub fn prec_bits(&self) -> usize {
        self.prec
    }

    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.prec)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }
}

/// Round a `BigFloat` back to the nearest `f64`.
///
/// `astro-float` does not expose this conversion publicly, so it is
/// reassembled from the sign, exponent and the top two mantissa words.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let words = x.mantissa_digits().expect("finite BigFloat has a mantissa");
    let e = x.exponent().expect("finite BigFloat has an exponent");
    let n = words.len();
    let hi = words[n - 1] as f64;
    let lo = if n > 1 { words[n - 2] as f64 } else { 0.0 };
    // Mantissa is normalized as 0.m * 2^e with the MSB of `hi` set.
    let m = hi * 2f64.powi(-64) + lo * 2f64.powi(-128);
    let v = m * 2f64.powi(e);
    match x.sign() {
        Some(Sign::Neg) => -v,
        _ => v,
    }
}

/// Complex number with extended-precision components.
#[derive(Debug, Clone)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpCtx {
    pub fn c_from_f64(&self, re: f64, im: f64) -> MpComplex {
        MpComplex {
            re: self.from_f64(re),
            im: self.from_f64(im),
        }
    }

    pub fn c_add(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn c_mul(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    pub fn c_div(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let re = self.add(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.sub(&self.mul(&a.im, &b.re), &self.mul(&a.re, &b.im));
        MpComplex {
            re: self.div(&re, &den),
            im: self.div(&im, &den),
        }
    }

    /// Add the exact integer `k` to the real part.
    pub fn c_add_u64(&self, a: &MpComplex, k: u64) -> MpComplex {
        MpComplex {
            re: self.add(&a.re, &BigFloat::from_u64(k, self.prec)),
            im: a.im.clone(),
        }
    }
}

/// Cheap magnitude estimate `|re| + |im|` in `f64`, for convergence control.
pub fn c_mag(z: &MpComplex) -> f64 {
    to_f64(&z.re).abs() + to_f64(&z.im).abs()
}

pub fn c_to_f64(z: &MpComplex) -> (f64, f64) {
    (to_f64(&z.re), to_f64(&z.im))
}
