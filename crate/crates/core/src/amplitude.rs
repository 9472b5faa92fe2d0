//! Exact amplitudes of the form `k · (1/√2)^h`.
//!
//! Every amplitude reachable from a {CCX, H} circuit is an integer multiple of a
//! power of `1/√2`, so keeping the integer numerator and the half-exponent
//! separately gives bit-exact interference: two paths that cancel produce a
//! numerator of exactly zero. Floats are only produced for display.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

/// Exact probability, always a dyadic rational for amplitudes of this module.
pub type Probability = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AmplitudeError {
    /// The operands live on half-exponents of different parity, which never
    /// happens for leaves of a single circuit evaluation.
    #[error("cannot add amplitudes with half-exponents {left} and {right}: difference is odd")]
    IncompatibleHalfExp { left: u32, right: u32 },
    #[error("amplitude numerator overflowed while lifting to a common half-exponent")]
    Overflow,
}

/// A real amplitude `numerator · (1/√2)^half_exp`, kept in canonical form.
///
/// Canonical means: zero is `(0, 0)`, and otherwise the numerator is odd or
/// the half-exponent is below 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Amplitude {
    numerator: i64,
    half_exp: u32,
}

impl Amplitude {
    pub const ZERO: Amplitude = Amplitude {
        numerator: 0,
        half_exp: 0,
    };

    pub const ONE: Amplitude = Amplitude {
        numerator: 1,
        half_exp: 0,
    };

    /// Builds `numerator · (1/√2)^half_exp` and canonicalizes it.
    pub fn new(numerator: i64, half_exp: u32) -> Self {
        canonicalize(numerator, half_exp)
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn numerator(self) -> i64 {
        self.numerator
    }

    pub fn half_exp(self) -> u32 {
        self.half_exp
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    pub fn is_negative(self) -> bool {
        self.numerator < 0
    }

    /// Multiplies by the Hadamard scale factor `1/√2`.
    pub fn mul_hscale(self) -> Self {
        if self.is_zero() {
            return self;
        }
        canonicalize(self.numerator, self.half_exp + 1)
    }

    pub fn abs(self) -> Self {
        Amplitude {
            numerator: self.numerator.abs(),
            half_exp: self.half_exp,
        }
    }

    /// Exact sum. Zero is compatible with every half-exponent; otherwise the
    /// operand with the smaller half-exponent is lifted by an even amount.
    pub fn checked_add(self, other: Self) -> Result<Self, AmplitudeError> {
        if self.is_zero() {
            return Ok(other);
        }
        if other.is_zero() {
            return Ok(self);
        }
        let target = self.half_exp.max(other.half_exp);
        let lhs = self.numerator_at(target).ok_or(self.incompatible(other))?;
        let rhs = other.numerator_at(target).ok_or(self.incompatible(other))?;
        let sum = lhs.checked_add(rhs).ok_or(AmplitudeError::Overflow)?;
        Ok(canonicalize(sum, target))
    }

    fn incompatible(self, other: Self) -> AmplitudeError {
        if (self.half_exp + other.half_exp) % 2 == 1 {
            AmplitudeError::IncompatibleHalfExp {
                left: self.half_exp,
                right: other.half_exp,
            }
        } else {
            AmplitudeError::Overflow
        }
    }

    /// The numerator this amplitude has when written over `(1/√2)^half_exp`.
    ///
    /// `None` if that is not an integer (odd difference, or a target below the
    /// canonical half-exponent) or if it overflows.
    pub fn numerator_at(self, half_exp: u32) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if half_exp < self.half_exp || (half_exp - self.half_exp) % 2 == 1 {
            return None;
        }
        let shift = (half_exp - self.half_exp) / 2;
        if shift >= 63 {
            return None;
        }
        self.numerator.checked_mul(1i64 << shift)
    }

    pub fn to_f64(self) -> f64 {
        let mut value = self.numerator as f64 * 0.5f64.powi((self.half_exp / 2) as i32);
        if self.half_exp % 2 == 1 {
            value /= std::f64::consts::SQRT_2;
        }
        value
    }

    /// Exact squared magnitude `k² / 2^h`.
    pub fn probability(self) -> Probability {
        let k = i128::from(self.numerator);
        Ratio::new(k * k, 1i128 << self.half_exp)
    }
}

impl Default for Amplitude {
    fn default() -> Self {
        Self::ZERO
    }
}

impl std::ops::Neg for Amplitude {
    type Output = Amplitude;

    fn neg(self) -> Amplitude {
        Amplitude {
            numerator: -self.numerator,
            half_exp: self.half_exp,
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_amplitude(self.to_f64()))
    }
}

fn canonicalize(mut numerator: i64, mut half_exp: u32) -> Amplitude {
    if numerator == 0 {
        return Amplitude::ZERO;
    }
    while numerator % 2 == 0 && half_exp >= 2 {
        numerator /= 2;
        half_exp -= 2;
    }
    Amplitude {
        numerator,
        half_exp,
    }
}

/// Renders a signed amplitude: two decimals when that is exact, otherwise the
/// shortest round-tripping representation. The sign is always printed.
pub fn format_amplitude(value: f64) -> String {
    let two_places = format!("{value:+.2}");
    match two_places.parse::<f64>() {
        Ok(parsed) if parsed == value => two_places,
        _ => format!("{value:+}"),
    }
}
