//! Exact arithmetic: arbitrary-precision rationals, sparse multivariate
//! polynomials over ℚ and dense univariate polynomials.
//!
//! Every other module of the crate is built on these types. All values are
//! immutable after construction and every operation is a pure function.

mod gcd;
pub mod linalg;
mod monomial;
mod poly;
mod resultant;
mod roots;
mod unipoly;

pub use gcd::{gcd, gcd_many};
pub use monomial::Monomial;
pub(crate) use poly::default_names;
pub use poly::{ArithOp, Poly};
pub use resultant::resultant;
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number; always stored in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("variable-count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("substitution expects {expected} images, got {got}")]
    BadSubstitution { expected: usize, got: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// Integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optional leading `-`).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Least common multiple of the denominators and gcd of the numerators of a
/// collection of rationals; used to scale to primitive integer vectors.
pub(crate) fn rat_content<'a>(coeffs: impl IntoIterator<Item = &'a Rat>) -> Rat {
    use num_integer::Integer;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Rat::one();
    }
    Rat::new(num.abs(), den)
}
