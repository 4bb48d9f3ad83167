//! Multivariate gcd over ℚ by recursive content / primitive-part splitting.
//!
//! A polynomial is viewed as univariate in its highest active variable with
//! coefficients in the remaining active variables. The gcd of the contents is
//! computed recursively and the primitive parts are combined with a primitive
//! pseudo-remainder sequence. With no active variables left the arguments are
//! nonzero rationals, whose gcd is 1.

use num_traits::Zero;

use super::{Monomial, Poly, Rat};

/// Greatest common divisor, in canonical form (see [`Poly::normalized`]).
/// `gcd(0, q)` is `q` normalized; `gcd(0, 0)` is zero.
pub fn gcd(p: &Poly, q: &Poly) -> Poly {
    assert_eq!(
        p.nvars(),
        q.nvars(),
        "gcd of polynomials in different rings"
    );
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    let n = p.nvars();
    // variables are prime: split off the monomial content first
    let (mp, mq) = (monomial_content(p), monomial_content(q));
    let common = Monomial::new((0..n).map(|i| mp.exp(i).min(mq.exp(i))).collect());
    let strip = |f: &Poly, m: &Monomial| {
        f.map_monomials(n, |t| t.div(m).expect("monomial content divides"))
    };
    let (p, q) = (strip(p, &mp), strip(q, &mq));
    let rest = if p.is_constant() || q.is_constant() || coprime_by_specialization(&p, &q) {
        Poly::one(n)
    } else {
        let active: Vec<usize> = (0..n).collect();
        gcd_rec(&p, &q, &active)
    };
    rest.mul_monomial(&common).normalized()
}

fn monomial_content(p: &Poly) -> Monomial {
    let n = p.nvars();
    Monomial::new((0..n).map(|v| p.min_exp_in(v).unwrap_or(0)).collect())
}

/// A common factor `g` involving `v` has `deg_v g ≥ 1`, and at a point of
/// the other variables where the leading coefficient of `p` in `v` does not
/// vanish the image of `g` keeps that degree and divides both images. So
/// coprime images rule `v` out. Returns `false` when inconclusive.
const SAMPLE: [(i64, i64); 6] = [(3, 1), (-5, 2), (7, 3), (-11, 1), (13, 4), (-17, 5)];

fn coprime_by_specialization(p: &Poly, q: &Poly) -> bool {
    let n = p.nvars();
    'vars: for v in 0..n {
        if !p.involves(v) || !q.involves(v) {
            continue;
        }
        let lead = p.coeff_in(v, p.degree_in(v).unwrap());
        for attempt in 0..SAMPLE.len() {
            let point: Vec<Rat> = (0..n)
                .map(|j| {
                    let (a, b) = SAMPLE[(attempt + j) % SAMPLE.len()];
                    Rat::new(a.into(), b.into())
                })
                .collect();
            if lead.eval(&point).is_zero() {
                continue;
            }
            let image = |f: &Poly| {
                let mut g = f.clone();
                for (j, r) in point.iter().enumerate() {
                    if j != v {
                        g = g.partial_eval(j, r);
                    }
                }
                g.to_unipoly(v).expect("only v remains")
            };
            if image(p).gcd(&image(q)).degree() == Some(0) {
                continue 'vars;
            }
        }
        return false;
    }
    true
}

/// Gcd of a list; zero for an empty list.
pub fn gcd_many<'a>(ps: impl IntoIterator<Item = &'a Poly>, nvars: usize) -> Poly {
    let mut g = Poly::zero(nvars);
    for p in ps {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn gcd_rec(p: &Poly, q: &Poly, active: &[usize]) -> Poly {
    let n = p.nvars();
    let Some(&v) = active
        .iter()
        .rev()
        .find(|&&v| p.involves(v) || q.involves(v))
    else {
        return Poly::one(n);
    };
    let rest: Vec<usize> = active.iter().copied().filter(|&w| w != v).collect();
    let cp = content_in(p, v, &rest);
    let cq = content_in(q, v, &rest);
    let c = gcd_rec(&cp, &cq, &rest).normalized();
    let pp = p.divexact(&cp).expect("content divides");
    let qq = q.divexact(&cq).expect("content divides");
    let g = prs_gcd(pp, qq, v, &rest);
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: usize, rest: &[usize]) -> Poly {
    let mut coeffs = p.coeffs_in(v).into_iter();
    let mut g = coeffs.next().expect("nonzero polynomial").normalized();
    for c in coeffs {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, &c, rest).normalized();
    }
    if g.is_constant() {
        // over ℚ a constant content only rescales
        Poly::constant(p.nvars(), p.normalization_factor())
    } else {
        g
    }
}

fn primitive_part_in(p: &Poly, v: usize, rest: &[usize]) -> Poly {
    p.divexact(&content_in(p, v, rest))
        .expect("content divides")
        .normalized()
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
pub(crate) fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v).expect("nonzero divisor");
    let lb = b.coeff_in(v, db);
    let n = a.nvars();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if dr < db {
            break;
        }
        let lr = r.coeff_in(v, dr);
        let shift = Poly::var(n, v).pow(dr - db);
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

fn prs_gcd(a: Poly, b: Poly, v: usize, rest: &[usize]) -> Poly {
    let n = a.nvars();
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.degree_in(v) == Some(0) {
            // primitive and free of v: a unit
            return Poly::one(n);
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.normalized();
        }
        a = b;
        b = primitive_part_in(&r, v, rest);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(2, rat(n))
    }

    #[test]
    fn gcd_examples() {
        let p = x().pow(2) - y().pow(2);
        let q = x().pow(2) - c(2) * x() * y() + y().pow(2);
        let g = gcd(&p, &q);
        assert_eq!(g, x() - y());
        // oracle: exact division of both arguments
        assert!(g.divides(&p) && g.divides(&q));
        assert_eq!(gcd(&x(), &y()), c(1));
        assert_eq!(gcd(&(x().pow(2) * y()), &(x() * y().pow(2))), x() * y());
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let q = c(-3) * x() + c(6);
        assert_eq!(gcd(&Poly::zero(2), &q), x() - c(2));
        assert!(gcd(&Poly::zero(2), &Poly::zero(2)).is_zero());
    }

    #[test]
    fn trivariate_gcd() {
        let z = |i| Poly::var(3, i);
        let common = z(0) * z(1) + z(2).pow(2);
        let p = &common * &(z(0) - z(2));
        let q = &common * &(z(1) + z(2) + Poly::one(3));
        assert_eq!(gcd(&p, &q), common);
    }

    #[test]
    fn coprime_images_after_a_bad_sample() {
        // both images at x = 3 vanish at y = 0
        let p = y().pow(2) + x() - c(3);
        let q = y() + x() - c(3);
        assert!(!coprime_by_specialization(&(&p * &q), &q));
        assert!(coprime_by_specialization(&p, &q));
        assert_eq!(gcd(&p, &q), c(1));
        assert_eq!(gcd(&(&p * &x().pow(2)), &(&q * &x() * &y())), x());
    }

    #[test]
    fn prem_identity() {
        let a = x().pow(3) * y() + x() + c(1);
        let b = y() * x() + c(2);
        let r = prem(&a, &b, 0);
        assert!(r.degree_in(0).is_none_or(|d| d < 1));
    }
}
