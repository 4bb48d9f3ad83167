//! Built-in examples and constructions of foliations with known invariant
//! curves.

use crate::exactalg::{Poly, Rat};
use crate::foliation::{FoliationError, GermFoliation, ProjFoliation};
use crate::forms::{d_poly, OneForm};

/// The affine form in `(z₁, z₂)`, its foliation of ℙ² and the four named
/// lines `z1`, `z2`, `z2-z1` and `z0`.
#[derive(Debug, Clone)]
pub struct CdfExample {
    pub affine: OneForm,
    pub foliation: ProjFoliation,
    pub curves: Vec<(String, Poly)>,
}

impl CdfExample {
    /// Product of the four lines.
    pub fn all_lines(&self) -> Poly {
        self.curves.iter().fold(Poly::one(3), |acc, (_, c)| acc * c)
    }
}

/// `z₁dz₂ − z₂dz₁ + z₁z₂(z₂−z₁)(α dz₁/z₁ + β dz₂/z₂ + γ d(z₂−z₁)/(z₂−z₁))`
/// expanded to polynomial coefficients.
pub fn builtin_example_cdf(alpha: &Rat, beta: &Rat, gamma: &Rat) -> CdfExample {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let a = Poly::constant(2, alpha.clone());
    let b = Poly::constant(2, beta.clone());
    let g = Poly::constant(2, gamma.clone());
    let dx = -&y + &a * &y * (&y - &x) - &g * &x * &y;
    let dy = &x + &b * &x * (&y - &x) + &g * &x * &y;
    let affine = OneForm::new(vec![dx, dy]).expect("two coefficients");
    let foliation = ProjFoliation::homogenize_affine(&affine).expect("nonzero form");
    let z = |i| Poly::var(3, i);
    let curves = vec![
        ("z1".to_string(), z(1)),
        ("z2".to_string(), z(2)),
        ("z2-z1".to_string(), z(2) - z(1)),
        ("z0".to_string(), z(0)),
    ];
    CdfExample {
        affine,
        foliation,
        curves,
    }
}

/// `x dy − y dx` at the origin with the four lines `x⁴ + y⁴ = 0`.
pub fn radial_example() -> (GermFoliation, Poly) {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let omega = OneForm::new(vec![-&y, x.clone()]).expect("two coefficients");
    let f = x.pow(4) + y.pow(4);
    (GermFoliation::at_origin(omega).expect("coprime"), f)
}

/// Degree-one foliation with the invariant conic `h = z₀z₁ + z₂²` and
/// first integral `h / z₀²`. Returns the defining form as written, the
/// validated foliation and `h`.
pub fn extremal_d1() -> (OneForm, ProjFoliation, Poly) {
    let z = |i| Poly::var(3, i);
    let two = Poly::constant(3, Rat::from_integer(2.into()));
    let omega = OneForm::new(vec![
        -(z(0) * z(1) + &two * z(2).pow(2)),
        z(0).pow(2),
        &two * z(0) * z(2),
    ])
    .expect("three coefficients");
    let fol = ProjFoliation::from_form(omega.clone()).expect("valid example");
    (omega, fol, z(0) * z(1) + z(2).pow(2))
}

/// `F · Σ λᵢ dfᵢ/fᵢ` with `F = Π fᵢ`, with the content removed. The curves
/// `fᵢ = 0` are invariant by construction.
pub fn log_combination_form(components: &[(Poly, Rat)]) -> OneForm {
    assert!(!components.is_empty(), "empty combination");
    let n = components[0].0.nvars();
    let mut out = OneForm::zero(n);
    for (i, (fi, li)) in components.iter().enumerate() {
        let others = components
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::one(n), |acc, (_, (fj, _))| acc * fj);
        out = out.add(&d_poly(fi).scale_poly(&others).scale(li));
    }
    if out.is_zero() {
        return out;
    }
    let g = out.content();
    out.divexact(&g).expect("content divides")
}

/// Foliation of ℙ² given by a logarithmic combination of homogeneous
/// curves; the residues must satisfy `Σ λᵢ deg fᵢ = 0`.
pub fn log_combination_foliation(
    components: &[(Poly, Rat)],
) -> Result<ProjFoliation, FoliationError> {
    ProjFoliation::from_form(log_combination_form(components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    #[test]
    fn cdf_one_two_three() {
        let ex = builtin_example_cdf(&rat(1), &rat(2), &rat(3));
        assert_eq!(ex.foliation.degree(), 2);
        for (name, c) in &ex.curves {
            assert!(ex.foliation.is_invariant(c).unwrap(), "{name}");
        }
        assert_eq!(ex.all_lines().total_degree(), Some(4));
    }

    #[test]
    fn cdf_zero_is_radial() {
        let ex = builtin_example_cdf(&rat(0), &rat(0), &rat(0));
        assert_eq!(ex.foliation.degree(), 0);
        let (g, _) = radial_example();
        assert_eq!(&ex.affine, g.omega());
    }

    #[test]
    fn cdf_zero_sum_moves_infinity() {
        let ex = builtin_example_cdf(&rat(1), &rat(1), &rat(-2));
        assert!(!ex.foliation.infinity_line_invariant());
    }

    #[test]
    fn log_combination_of_three_lines() {
        let z = |i| Poly::var(3, i);
        let comps = vec![
            (z(0), rat(1)),
            (z(1), rat_frac(-1, 2)),
            (z(2), rat_frac(-1, 2)),
        ];
        let fol = log_combination_foliation(&comps).unwrap();
        assert_eq!(fol.degree(), 1);
        for (c, _) in &comps {
            assert!(fol.is_invariant(c).unwrap());
        }
        let bad = vec![(z(0), rat(1)), (z(1), rat(1))];
        assert!(matches!(
            log_combination_foliation(&bad),
            Err(FoliationError::EulerViolated(_))
        ));
    }
}
