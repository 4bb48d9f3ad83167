//! Polynomial and meromorphic differential forms.
//!
//! A [`OneForm`] in `n` variables stores one coefficient per `dzᵢ`. A
//! [`TwoForm`] stores one coefficient per basis element `dzᵢ∧dzⱼ` with
//! `i < j`, pairs enumerated lexicographically: `(0,1)` for two variables,
//! `(0,1), (0,2), (1,2)` for three.

use std::fmt;

use thiserror::Error;

use crate::exactalg::{gcd, gcd_many, AlgError, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("variable-count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole factor must be squarefree and nonconstant")]
    BadFactor,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    coeffs: Vec<Poly>,
}

impl OneForm {
    /// `coeffs[i]` multiplies `dzᵢ`; every coefficient must live in
    /// `coeffs.len()` variables.
    pub fn new(coeffs: Vec<Poly>) -> Result<Self, FormError> {
        let n = coeffs.len();
        for c in &coeffs {
            if c.nvars() != n {
                return Err(FormError::VarMismatch {
                    left: n,
                    right: c.nvars(),
                });
            }
        }
        Ok(OneForm { coeffs })
    }

    pub fn zero(nvars: usize) -> Self {
        OneForm {
            coeffs: vec![Poly::zero(nvars); nvars],
        }
    }

    /// `dzᵢ`.
    pub fn basis(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Poly::zero(nvars); nvars];
        coeffs[i] = Poly::one(nvars);
        OneForm { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> OneForm {
        OneForm {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> OneForm {
        self.map(|c| c * p)
    }

    pub fn scale(&self, c: &Rat) -> OneForm {
        self.map(|a| a.scale(c))
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        assert_eq!(self.nvars(), other.nvars(), "form variable-count mismatch");
        OneForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        self.add(&other.scale(&Rat::from_integer((-1).into())))
    }

    /// Exact division of every coefficient.
    pub fn divexact(&self, p: &Poly) -> Result<OneForm, AlgError> {
        Ok(OneForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.divexact(p))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Gcd of the coefficients (zero for the zero form).
    pub fn content(&self) -> Poly {
        gcd_many(&self.coeffs, self.nvars())
    }

    /// Multiplicity: minimal order of the coefficients; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(Poly::order).min()
    }

    /// Every coefficient homogeneous of the same degree (zero coefficients
    /// allowed); returns that degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.total_degree();
            if deg.is_some() && deg != d {
                return None;
            }
            deg = d;
        }
        deg
    }

    /// Joint canonical scaling: the coefficient vector is made primitive over
    /// ℤ with a positive leading coefficient on the first nonzero entry.
    pub fn normalized(&self) -> OneForm {
        let Some(first) = self.coeffs.iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let mut c = crate::exactalg::rat_content(
            self.coeffs.iter().flat_map(|p| p.terms().map(|(_, c)| c)),
        );
        if first.leading_coeff() < Rat::from_integer(0.into()) {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn render(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})*d{}", c.render(names), names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::exactalg::default_names(self.nvars());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

/// Index pairs `(i, j)`, `i < j`, in basis order.
pub fn two_form_basis(nvars: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..nvars {
        for j in i + 1..nvars {
            out.push((i, j));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct TwoForm {
    nvars: usize,
    coeffs: Vec<Poly>,
}

impl TwoForm {
    pub fn new(nvars: usize, coeffs: Vec<Poly>) -> Result<Self, FormError> {
        if coeffs.len() != nvars * nvars.saturating_sub(1) / 2 {
            return Err(FormError::VarMismatch {
                left: nvars,
                right: coeffs.len(),
            });
        }
        for c in &coeffs {
            if c.nvars() != nvars {
                return Err(FormError::VarMismatch {
                    left: nvars,
                    right: c.nvars(),
                });
            }
        }
        Ok(TwoForm { nvars, coeffs })
    }

    pub fn zero(nvars: usize) -> Self {
        TwoForm {
            nvars,
            coeffs: vec![Poly::zero(nvars); nvars * nvars.saturating_sub(1) / 2],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `dzᵢ∧dzⱼ` for `i < j`.
    pub fn coeff(&self, i: usize, j: usize) -> &Poly {
        assert!(i < j && j < self.nvars);
        let idx = two_form_basis(self.nvars)
            .iter()
            .position(|&p| p == (i, j))
            .unwrap();
        &self.coeffs[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> TwoForm {
        TwoForm {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn sub(&self, other: &TwoForm) -> TwoForm {
        assert_eq!(self.nvars, other.nvars);
        TwoForm {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn content(&self) -> Poly {
        gcd_many(&self.coeffs, self.nvars)
    }

    /// Every coefficient divisible by `p`.
    pub fn divisible_by(&self, p: &Poly) -> bool {
        self.coeffs.iter().all(|c| p.divides(c))
    }

    pub fn divexact(&self, p: &Poly) -> Result<TwoForm, AlgError> {
        Ok(TwoForm {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.divexact(p))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn render(&self, names: &[&str]) -> String {
        let parts: Vec<String> = two_form_basis(self.nvars)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| format!("({})*d{}^d{}", c.render(names), names[i], names[j]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::exactalg::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

/// `dp = Σ ∂p/∂zᵢ dzᵢ`. The differential of a constant is the zero form.
pub fn d_poly(p: &Poly) -> OneForm {
    OneForm {
        coeffs: (0..p.nvars()).map(|i| p.derivative(i)).collect(),
    }
}

/// `dω`, with coefficient `∂ᵢωⱼ − ∂ⱼωᵢ` on `dzᵢ∧dzⱼ`.
pub fn d_one(w: &OneForm) -> TwoForm {
    let n = w.nvars();
    TwoForm {
        nvars: n,
        coeffs: two_form_basis(n)
            .into_iter()
            .map(|(i, j)| w.coeffs[j].derivative(i) - w.coeffs[i].derivative(j))
            .collect(),
    }
}

/// `α∧β`, with coefficient `αᵢβⱼ − αⱼβᵢ` on `dzᵢ∧dzⱼ`.
pub fn wedge(a: &OneForm, b: &OneForm) -> Result<TwoForm, FormError> {
    if a.nvars() != b.nvars() {
        return Err(FormError::VarMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    let n = a.nvars();
    Ok(TwoForm {
        nvars: n,
        coeffs: two_form_basis(n)
            .into_iter()
            .map(|(i, j)| &a.coeffs[i] * &b.coeffs[j] - &a.coeffs[j] * &b.coeffs[i])
            .collect(),
    })
}

/// Contraction with the radial field: `Σ zᵢ ωᵢ`.
pub fn contract_radial(w: &OneForm) -> Poly {
    let n = w.nvars();
    w.coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(n), |acc, (i, c)| acc + &Poly::var(n, i) * c)
}

/// Pullback of `ω` under `map`: `dzᵢ ↦ d(map[i])`. The map images all live in
/// a common target ring, whose variable count becomes that of the result.
pub fn pullback(map: &[Poly], w: &OneForm) -> Result<OneForm, FormError> {
    if map.len() != w.nvars() {
        return Err(FormError::VarMismatch {
            left: w.nvars(),
            right: map.len(),
        });
    }
    let target = map.first().map_or(0, Poly::nvars);
    let mut out = OneForm::zero(target);
    for (c, image) in w.coeffs.iter().zip(map) {
        let c = c.substitute(map)?;
        out = out.add(&d_poly(image).scale_poly(&c));
    }
    Ok(out)
}

/// Normalized meromorphic 1-form `num / den`: the denominator shares no
/// nonconstant factor with every numerator coefficient, and it is in
/// canonical form (see [`Poly::normalized`]).
#[derive(Clone, PartialEq, Eq)]
pub struct MeroOneForm {
    num: OneForm,
    den: Poly,
}

/// Multiplicities of a squarefree factor in the denominators of `Ω` and `dΩ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleReport {
    pub factor: Poly,
    pub order_form: u32,
    pub order_dform: u32,
}

impl MeroOneForm {
    pub fn new(num: OneForm, den: Poly) -> Result<Self, FormError> {
        if den.is_zero() {
            return Err(FormError::ZeroDenominator);
        }
        if den.nvars() != num.nvars() {
            return Err(FormError::VarMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        let g = gcd(&den, &num.content());
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.divexact(&g)?, den.divexact(&g)?)
        };
        let k = den.normalization_factor();
        Ok(MeroOneForm {
            num: num.scale(&k.recip()),
            den: den.normalized(),
        })
    }

    pub fn num(&self) -> &OneForm {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// `dΩ = (f dθ − df∧θ) / f²` as a normalized (numerator, denominator)
    /// pair.
    pub fn d(&self) -> (TwoForm, Poly) {
        let f = &self.den;
        let num = d_one(&self.num)
            .map(|c| c * f)
            .sub(&wedge(&d_poly(f), &self.num).expect("same ring"));
        let den = f * f;
        normalize_two(num, den)
    }

    /// Exact test of `f dθ − df∧θ = 0`.
    pub fn is_closed(&self) -> bool {
        self.d().0.is_zero()
    }

    /// Multiplicity of the squarefree nonconstant factor `g` in the
    /// denominators of `Ω` and of `dΩ`.
    pub fn pole_orders(&self, g: &Poly) -> Result<PoleReport, FormError> {
        if g.is_constant() || g.nvars() != self.nvars() || !g.is_squarefree() {
            return Err(FormError::BadFactor);
        }
        let (_, dden) = self.d();
        Ok(PoleReport {
            factor: g.normalized(),
            order_form: self.den.multiplicity_of(g),
            order_dform: dden.multiplicity_of(g),
        })
    }

    /// Simple poles for both `Ω` and `dΩ`: the denominator is squarefree and
    /// the normalized denominator of `dΩ` divides it.
    pub fn is_logarithmic(&self) -> bool {
        if !self.den.is_squarefree() {
            return false;
        }
        let (_, dden) = self.d();
        dden.divides(&self.den)
    }

    /// Pullback under a polynomial map, renormalized.
    pub fn pullback(&self, map: &[Poly]) -> Result<MeroOneForm, FormError> {
        let num = pullback(map, &self.num)?;
        let den = self.den.substitute(map)?;
        MeroOneForm::new(num, den)
    }

    pub fn render(&self, names: &[&str]) -> String {
        format!("({})/({})", self.num.render(names), self.den.render(names))
    }
}

impl fmt::Debug for MeroOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::exactalg::default_names(self.nvars());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

fn normalize_two(num: TwoForm, den: Poly) -> (TwoForm, Poly) {
    if num.is_zero() {
        return (num, Poly::one(den.nvars()));
    }
    let g = gcd(&den, &num.content());
    let (num, den) = if g.is_constant() {
        (num, den)
    } else {
        (
            num.divexact(&g).expect("gcd divides"),
            den.divexact(&g).expect("gcd divides"),
        )
    };
    let k = den.normalization_factor().recip();
    (num.map(|c| c.scale(&k)), den.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Rat};

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(2, rat(n))
    }
    fn form(a: Poly, b: Poly) -> OneForm {
        OneForm::new(vec![a, b]).unwrap()
    }
    fn two(p: Poly) -> TwoForm {
        TwoForm::new(2, vec![p]).unwrap()
    }
    fn radial() -> OneForm {
        form(-y(), x())
    }

    #[test]
    fn exterior_derivative_examples() {
        assert_eq!(d_poly(&(x() * y())), form(y(), x()));
        assert_eq!(d_one(&radial()), two(c(2)));
        let f = x().pow(3) * y() + y().pow(2);
        assert!(d_one(&d_poly(&f)).is_zero());
        assert!(d_poly(&c(7)).is_zero());
    }

    #[test]
    fn wedge_examples() {
        let f = x().pow(4) + y().pow(4);
        let w = wedge(&radial(), &d_poly(&f)).unwrap();
        assert_eq!(w, two(c(-4) * &f));
        assert!(wedge(&radial(), &radial()).unwrap().is_zero());
        assert_eq!(
            wedge(&OneForm::basis(2, 0), &OneForm::basis(2, 1)).unwrap(),
            two(c(1))
        );
    }

    #[test]
    fn radial_contraction_examples() {
        let z = |i| Poly::var(3, i);
        let pencil = OneForm::new(vec![z(1), -z(0), Poly::zero(3)]).unwrap();
        assert!(contract_radial(&pencil).is_zero());
        assert_eq!(contract_radial(&OneForm::basis(3, 0)), z(0));
        let two3 = Poly::constant(3, rat(2));
        let w = OneForm::new(vec![
            -(z(0) * z(1) + &two3 * &z(2).pow(2)),
            z(0).pow(2),
            &two3 * &(z(0) * z(2)),
        ])
        .unwrap();
        assert!(contract_radial(&w).is_zero());
    }

    #[test]
    fn pullback_examples() {
        let t = y;
        let chart = [x(), t() * x()];
        assert_eq!(
            pullback(&chart, &radial()).unwrap(),
            form(Poly::zero(2), x().pow(2))
        );
        assert_eq!(pullback(&[x(), y()], &radial()).unwrap(), radial());
        let cusp = form(c(-3) * x().pow(2), c(2) * y());
        assert_eq!(
            pullback(&chart, &cusp).unwrap(),
            form(
                c(2) * t().pow(2) * x() - c(3) * x().pow(2),
                c(2) * t() * x().pow(2)
            )
        );
    }

    #[test]
    fn mero_make_examples() {
        let t = y;
        let num = form(Poly::zero(2), x().pow(2));
        let den = x().pow(4) * (c(1) + t().pow(4));
        let m = MeroOneForm::new(num, den).unwrap();
        assert_eq!(m.num(), &form(Poly::zero(2), c(1)));
        assert_eq!(m.den(), &(x().pow(2) * (t().pow(4) + c(1))));

        let m = MeroOneForm::new(form(Poly::zero(2), x()), x()).unwrap();
        assert_eq!(m.num(), &OneForm::basis(2, 1));
        assert_eq!(m.den(), &c(1));

        let f = x().pow(4) + y().pow(4);
        let m = MeroOneForm::new(radial(), f.clone()).unwrap();
        assert_eq!(m.num(), &radial());
        assert_eq!(m.den(), &f);

        assert_eq!(
            MeroOneForm::new(radial(), Poly::zero(2)),
            Err(FormError::ZeroDenominator)
        );
    }

    #[test]
    fn mero_d_examples() {
        let xy = x() * y();
        let m = MeroOneForm::new(d_poly(&xy), xy).unwrap();
        assert!(m.d().0.is_zero());

        // θ = x dy − y dx, f = x⁴+y⁴: f·dθ − df∧θ = 2f − 4f = −2f
        let f = x().pow(4) + y().pow(4);
        let (num, den) = MeroOneForm::new(radial(), f.clone()).unwrap().d();
        assert_eq!(num, two(c(-2)));
        assert_eq!(den, f);

        // d(dy / x²) = −2 dx∧dy / x³
        let (num, den) = MeroOneForm::new(OneForm::basis(2, 1), x().pow(2))
            .unwrap()
            .d();
        assert_eq!(num, two(c(-2)));
        assert_eq!(den, x().pow(3));
    }

    #[test]
    fn closedness_examples() {
        // dx/x + dy/y = (y dx + x dy)/(xy)
        let m = MeroOneForm::new(form(y(), x()), x() * y()).unwrap();
        assert!(m.is_closed());
        let f = x() * y() * (y() - x());
        assert!(!MeroOneForm::new(radial(), f).unwrap().is_closed());
        let g = x().pow(3) + y().pow(2) - c(1);
        let lam = Rat::new(3.into(), 7.into());
        assert!(MeroOneForm::new(d_poly(&g).scale(&lam), g)
            .unwrap()
            .is_closed());
    }

    #[test]
    fn logarithmic_examples() {
        let f = x().pow(4) + y().pow(4);
        assert!(MeroOneForm::new(radial(), f).unwrap().is_logarithmic());

        let t = y;
        let pulled =
            MeroOneForm::new(OneForm::basis(2, 1), x().pow(2) * (c(1) + t().pow(4))).unwrap();
        let rep = pulled.pole_orders(&x()).unwrap();
        assert_eq!(rep.order_form, 2);
        assert!(!pulled.is_logarithmic());

        let g = x().pow(2) + y().pow(3) + x() * y();
        let m = MeroOneForm::new(d_poly(&g), g.clone()).unwrap();
        assert!(m.is_logarithmic());
        let rep = m.pole_orders(&g).unwrap();
        assert_eq!((rep.order_form, rep.order_dform), (1, 0));

        assert_eq!(m.pole_orders(&c(3)), Err(FormError::BadFactor));
        assert_eq!(m.pole_orders(&x().pow(2)), Err(FormError::BadFactor));
    }
}
