use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rat, rat_content, AlgError, Monomial, Rat, UniPoly};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map ordered graded-lexicographically, so iteration and
/// rendering are deterministic. No stored coefficient is zero; the zero
/// polynomial has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        Self::term(Monomial::var(nvars, i), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.nvars)))
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self -= c * m * q` in place.
    fn sub_scaled_shifted(&mut self, q: &Poly, c: &Rat, m: &Monomial) {
        for (qm, qc) in &q.terms {
            self.add_term(qm.mul(m), -(qc * c));
        }
    }

    /// Exact `p op q`, failing on a variable-count mismatch.
    pub fn arith(&self, other: &Poly, op: ArithOp) -> Result<Poly, AlgError> {
        if self.nvars != other.nvars {
            return Err(AlgError::VarMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
        })
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Order (algebraic multiplicity at the origin): the minimal total degree
    /// of a term. `None` stands for ∞, the order of the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// All terms share one total degree. The zero polynomial is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.total_degree()
    }

    pub fn homogeneous_part(&self, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degree in variable `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Minimal exponent of `v` over all terms; `None` for zero.
    pub fn min_exp_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Coefficient of `v^k` when `self` is viewed as a polynomial in `v`.
    pub fn coeff_in(&self, v: usize, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Nonzero coefficients with respect to `v`, lowest power first.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut by_power: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_power
                .entry(m.exp(v))
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(m.with_exp(v, 0), c.clone());
        }
        by_power.into_values().collect()
    }

    /// Divides by `v^k`; every term must contain at least that power.
    pub fn div_var_power(&self, v: usize, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.exp(v);
                    assert!(e >= k, "variable power does not divide");
                    (m.with_exp(v, e - k), c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sets variable `v` to `value`, keeping the variable count.
    pub fn partial_eval(&self, v: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            out.add_term(
                m.with_exp(v, 0),
                c * num_traits::pow(value.clone(), e as usize),
            );
        }
        out
    }

    /// Composition `p(images[0], …, images[n-1])`. The images must share a
    /// common variable count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, AlgError> {
        if images.len() != self.nvars {
            return Err(AlgError::BadSubstitution {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            // polynomial in zero variables: a constant
            None => 0,
        };
        for p in images {
            if p.nvars != target {
                return Err(AlgError::VarMismatch {
                    left: target,
                    right: p.nvars,
                });
            }
        }
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; self.nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out = out + t;
        }
        Ok(out)
    }

    /// Re-embeds the polynomial in `nvars` variables, sending variable `i` to
    /// variable `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Poly {
        assert_eq!(positions.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &p) in positions.iter().enumerate() {
                e[p] += m.exp(i);
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Maps every monomial through `f` into a space of `nvars` variables.
    pub fn map_monomials(&self, nvars: usize, f: impl Fn(&Monomial) -> Monomial) -> Poly {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn rational_content(&self) -> Rat {
        rat_content(self.terms.values())
    }

    /// Canonical associate: integer coefficients with gcd 1 and a positive
    /// graded-lex leading coefficient. Zero stays zero.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Scalar `c` with `self == c * self.normalized()`.
    pub fn normalization_factor(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let c = self.rational_content();
        if self.leading_coeff().is_negative() {
            -c
        } else {
            c
        }
    }

    /// Equal up to a nonzero rational factor.
    pub fn associated(&self, other: &Poly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Exact quotient `self / q`.
    pub fn divexact(&self, q: &Poly) -> Result<Poly, AlgError> {
        if q.nvars != self.nvars {
            return Err(AlgError::VarMismatch {
                left: self.nvars,
                right: q.nvars,
            });
        }
        let (lm_q, lc_q) = q.leading_term().ok_or(AlgError::DivisionByZero)?;
        let lm_q = lm_q.clone();
        let inv_lc = lc_q.recip();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let m = lm_r.div(&lm_q).ok_or(AlgError::NotDivisible)?;
            let c = lc_r * &inv_lc;
            rem.sub_scaled_shifted(q, &c, &m);
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    /// Whether `self` divides `p`.
    pub fn divides(&self, p: &Poly) -> bool {
        !self.is_zero() && p.divexact(self).is_ok()
    }

    /// Largest `k` with `g^k | self`. `g` must be nonconstant and `self`
    /// nonzero.
    pub fn multiplicity_of(&self, g: &Poly) -> u32 {
        assert!(!g.is_constant(), "multiplicity of a constant");
        assert!(!self.is_zero(), "multiplicity in zero");
        let mut k = 0;
        let mut cur = self.clone();
        while let Ok(q) = cur.divexact(g) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Squarefree part `p / gcd(p, ∂p/∂z₀, …, ∂p/∂zₙ₋₁)`, normalized.
    pub fn squarefree_part(&self) -> Poly {
        assert!(!self.is_zero(), "squarefree part of zero");
        let mut g = self.clone();
        for v in 0..self.nvars {
            if g.is_constant() {
                break;
            }
            g = super::gcd(&g, &self.derivative(v));
        }
        self.divexact(&g)
            .expect("gcd divides its argument")
            .normalized()
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree_part().associated(self)
    }

    /// Dense univariate view when only variable `v` occurs.
    pub fn to_unipoly(&self, v: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rat::zero(); self.degree_in(v).map_or(0, |d| d as usize + 1)];
        for (m, c) in &self.terms {
            if m.exps().iter().enumerate().any(|(i, &e)| i != v && e > 0) {
                return None;
            }
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_unipoly(u: &UniPoly, nvars: usize, v: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            p.add_term(Monomial::var(nvars, v).with_exp(v, k as u32), c.clone());
        }
        p
    }

    /// Canonical text form with the given variable names: terms in descending
    /// graded-lex order, explicit `*` and `^`, rationals as `p/q`.
    pub fn render(&self, names: &[&str]) -> String {
        assert!(names.len() >= self.nvars, "not enough variable names");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(fmt_rat(&abs));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Default variable names used by `Display`: `x, y` for two variables,
/// `z0, z1, …` otherwise.
pub(crate) fn default_names(nvars: usize) -> Vec<String> {
    match nvars {
        2 => vec!["x".into(), "y".into()],
        _ => (0..nvars).map(|i| format!("z{i}")).collect(),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

fn check_same(a: &Poly, b: &Poly) {
    assert_eq!(
        a.nvars, b.nvars,
        "variable-count mismatch: {} vs {}",
        a.nvars, b.nvars
    );
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        check_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        check_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        check_same(self, rhs);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

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
    fn arithmetic_examples() {
        assert_eq!((x() + y()) + (x() - y()), c(2) * x());
        assert_eq!((x() - y()) * (x() + y()), x().pow(2) - y().pow(2));
        let cusp = y().pow(2) - x().pow(3);
        assert!((&cusp - &cusp).is_zero());
    }

    #[test]
    fn arith_reports_mismatch() {
        let p = Poly::var(3, 0);
        assert_eq!(
            x().arith(&p, ArithOp::Add),
            Err(AlgError::VarMismatch { left: 2, right: 3 })
        );
        assert_eq!(x().arith(&y(), ArithOp::Mul), Ok(x() * y()));
    }

    #[test]
    fn order_examples() {
        assert_eq!((x().pow(2) * y() + x().pow(5)).order(), Some(3));
        assert_eq!((x().pow(4) + y().pow(4)).order(), Some(4));
        assert_eq!(Poly::zero(2).order(), None);
    }

    #[test]
    fn degree_and_homogeneity() {
        let z = |i| Poly::var(3, i);
        let p = z(0) * z(1) + z(2).pow(2);
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.is_homogeneous());
        let q = x() + y().pow(2);
        assert_eq!(q.total_degree(), Some(2));
        assert!(!q.is_homogeneous());
        let r = z(0).pow(2) * z(1);
        assert_eq!(r.total_degree(), Some(3));
        assert!(r.is_homogeneous());
        assert!(Poly::zero(3).is_homogeneous());
    }

    #[test]
    fn divexact_examples() {
        let f = x().pow(4) + y().pow(4);
        assert_eq!((c(4) * &f).divexact(&f), Ok(c(4)));
        assert!(f.divides(&(c(4) * &f)));
        assert_eq!((x().pow(2) + x() * y()).divexact(&x()), Ok(x() + y()));
        assert!(!x().divides(&(x() + y())));
        assert_eq!((x() + y()).divexact(&x()), Err(AlgError::NotDivisible));
        assert_eq!(x().divexact(&Poly::zero(2)), Err(AlgError::DivisionByZero));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!((x().pow(2) * y()).squarefree_part(), x() * y());
        let f = x().pow(4) + y().pow(4);
        assert_eq!(f.squarefree_part(), f);
        assert!(f.is_squarefree());
        let p = (x() - y()).pow(2) * (x() + y());
        assert_eq!(p.squarefree_part(), (x() - y()) * (x() + y()));
        assert!(!p.is_squarefree());
    }

    #[test]
    fn substitution_examples() {
        let t = || Poly::var(2, 1);
        let chart = [x(), t() * x()];
        let f = x().pow(4) + y().pow(4);
        assert_eq!(
            f.substitute(&chart).unwrap(),
            x().pow(4) * (c(1) + t().pow(4))
        );
        let cusp = y().pow(2) - x().pow(3);
        assert_eq!(
            cusp.substitute(&chart).unwrap(),
            x().pow(2) * (t().pow(2) - x())
        );
        assert_eq!(f.substitute(&[x(), y()]).unwrap(), f);
        assert_eq!(
            f.substitute(&[x()]),
            Err(AlgError::BadSubstitution {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn render_is_canonical() {
        let p = x().pow(4) + y().pow(4);
        assert_eq!(p.render(&["x", "y"]), "x^4 + y^4");
        let q = c(2) * x() * y().pow(2) - c(3) + Poly::constant(2, rat_frac(-1, 2)) * x();
        assert_eq!(q.render(&["x", "y"]), "2*x*y^2 - 1/2*x - 3");
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!((-x()).to_string(), "-x");
    }

    #[test]
    fn normalization() {
        let p = Poly::constant(2, rat_frac(-2, 3)) * (x() + c(2) * y());
        assert_eq!(p.normalized(), x() + c(2) * y());
        assert_eq!(p.normalization_factor(), rat_frac(-2, 3));
        assert!(p.associated(&(x() + c(2) * y())));
    }

    #[test]
    fn multiplicity() {
        let p = x().pow(3) * (y() + c(1));
        assert_eq!(p.multiplicity_of(&x()), 3);
        assert_eq!(p.multiplicity_of(&y()), 0);
    }
}
