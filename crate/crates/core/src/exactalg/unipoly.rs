use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{fmt_rat, rat_content, Rat};

/// Dense univariate polynomial over ℚ; `coeffs[i]` multiplies `t^i`.
/// The highest stored coefficient is nonzero unless the polynomial is zero
/// (empty coefficient list).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Rat::one()],
        }
    }

    /// `t - r`.
    pub fn linear_root(r: &Rat) -> Self {
        UniPoly {
            coeffs: vec![-r.clone(), Rat::one()],
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let Some(dr) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if dr < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); dr - dd + 1];
        for k in (0..=dr - dd).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = rat_content(&self.coeffs);
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// All rational roots with multiplicities, ascending, together with the
    /// monic cofactor that has no rational root.
    pub fn rational_roots(&self) -> (Vec<(Rat, u32)>, UniPoly) {
        assert!(!self.is_zero(), "rational roots of the zero polynomial");
        let g = self.gcd(&self.derivative());
        let squarefree = self.div_rem(&g).0;
        let mut roots = super::roots::squarefree_rational_roots(&squarefree);
        roots.sort();
        let mut rest = self.clone();
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            let lin = UniPoly::linear_root(&r);
            let mut k = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                k += 1;
            }
            debug_assert!(k > 0);
            out.push((r, k));
        }
        (out, rest.monic())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let coeff = fmt_rat(&a);
            match k {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if k == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    #[test]
    fn root_examples() {
        let (r, res) = UniPoly::from_ints(&[-1, 0, 1]).rational_roots();
        assert_eq!(r, vec![(rat(-1), 1), (rat(1), 1)]);
        assert_eq!(res, UniPoly::one());

        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let (r, res) = p.rational_roots();
        assert!(r.is_empty());
        assert_eq!(res, p);

        // 2t^3 - t^2 = t^2 (2t - 1)
        let (r, res) = UniPoly::from_ints(&[0, 0, -1, 2]).rational_roots();
        assert_eq!(r, vec![(rat(0), 2), (rat_frac(1, 2), 1)]);
        assert_eq!(res, UniPoly::one());
    }

    #[test]
    fn roots_with_large_coefficients() {
        // (7t - 1234567891)(3t + 5)^2 (t^2 + 1)
        let a = UniPoly::new(vec![rat(-1234567891), rat(7)]);
        let b = UniPoly::from_ints(&[5, 3]);
        let c = UniPoly::from_ints(&[1, 0, 1]);
        let p = a.mul(&b).mul(&b).mul(&c);
        let (r, res) = p.rational_roots();
        assert_eq!(r, vec![(rat_frac(-5, 3), 2), (rat_frac(1234567891, 7), 1)]);
        assert_eq!(res, c);
    }

    #[test]
    fn gcd_and_division() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let q = UniPoly::from_ints(&[1, 2, 1]);
        assert_eq!(p.gcd(&q), UniPoly::from_ints(&[1, 1]));
        let (quot, rem) = p.div_rem(&UniPoly::from_ints(&[1, 1]));
        assert_eq!(quot, UniPoly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[-2, 0, 1]).to_string(), "t^2 - 2");
        assert_eq!(UniPoly::from_ints(&[0, -1, 3]).to_string(), "3*t^2 - t");
    }
}
