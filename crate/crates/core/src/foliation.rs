//! Foliations of ℙ² given by homogeneous 1-forms, and germs of foliations at
//! points of ℂ² given by affine 1-forms `A dx + B dy`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactalg::{resultant, AlgError, Monomial, Poly, Rat, UniPoly};
use crate::forms::{contract_radial, d_poly, wedge, FormError, OneForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliationError {
    #[error("expected a form in {expected} variables, got {got}")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("the form is identically zero")]
    ZeroForm,
    #[error("coefficient {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("coefficients have unequal degrees")]
    UnequalDegrees,
    #[error("Euler identity violated: sum z_i A_i = {0}")]
    EulerViolated(Poly),
    #[error("coefficients share the common factor {0}")]
    CommonFactor(Poly),
    #[error("the point is not a singular point of the foliation")]
    NonSingularPoint,
    #[error("the curve equation is constant")]
    ConstantCurve,
    #[error("the curve equation is not homogeneous")]
    CurveNotHomogeneous,
    #[error("invalid point")]
    InvalidPoint,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// `f` divides every coefficient of `ω∧df`.
pub fn curve_is_invariant(omega: &OneForm, f: &Poly) -> Result<bool, FoliationError> {
    if f.is_constant() {
        return Err(FoliationError::ConstantCurve);
    }
    if f.nvars() != omega.nvars() {
        return Err(FoliationError::WrongVariableCount {
            expected: omega.nvars(),
            got: f.nvars(),
        });
    }
    Ok(wedge(omega, &d_poly(f))?.divisible_by(f))
}

/// Foliation of ℙ² given in homogeneous coordinates by
/// `ω = A₀dz₀ + A₁dz₁ + A₂dz₂`.
///
/// Invariants: the `Aᵢ` are homogeneous of the common degree `d + 1`, have no
/// common factor, and satisfy `Σ zᵢAᵢ = 0`. The form is stored in canonical
/// scaling, so proportional inputs yield equal values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjFoliation {
    omega: OneForm,
    degree: u32,
}

impl ProjFoliation {
    pub fn new(a0: Poly, a1: Poly, a2: Poly) -> Result<Self, FoliationError> {
        Self::from_form(OneForm::new(vec![a0, a1, a2])?)
    }

    pub fn from_form(omega: OneForm) -> Result<Self, FoliationError> {
        if omega.nvars() != 3 {
            return Err(FoliationError::WrongVariableCount {
                expected: 3,
                got: omega.nvars(),
            });
        }
        if omega.is_zero() {
            return Err(FoliationError::ZeroForm);
        }
        let mut deg = None;
        for (i, c) in omega.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return Err(FoliationError::NotHomogeneous { index: i });
            }
            match deg {
                None => deg = c.total_degree(),
                Some(d) if Some(d) != c.total_degree() => {
                    return Err(FoliationError::UnequalDegrees)
                }
                _ => {}
            }
        }
        let euler = contract_radial(&omega);
        if !euler.is_zero() {
            return Err(FoliationError::EulerViolated(euler));
        }
        let g = omega.content();
        if !g.is_constant() {
            return Err(FoliationError::CommonFactor(g));
        }
        // Euler with a nonzero form forces degree ≥ 1
        let degree = deg.expect("nonzero form") - 1;
        Ok(ProjFoliation {
            omega: omega.normalized(),
            degree,
        })
    }

    /// Homogenizes an affine form `A dx + B dy` (chart `z₀ = 1`, `x = z₁/z₀`,
    /// `y = z₂/z₀`) and removes the common factor of the result.
    pub fn homogenize_affine(w: &OneForm) -> Result<Self, FoliationError> {
        if w.nvars() != 2 {
            return Err(FoliationError::WrongVariableCount {
                expected: 2,
                got: w.nvars(),
            });
        }
        if w.is_zero() {
            return Err(FoliationError::ZeroForm);
        }
        let k = w
            .coeffs()
            .iter()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap();
        let a = homogenize(w.coeff(0), k);
        let b = homogenize(w.coeff(1), k);
        let z = |i| Poly::var(3, i);
        let theta = OneForm::new(vec![-(&z(1) * &a + &z(2) * &b), &z(0) * &a, &z(0) * &b])?;
        let g = theta.content();
        let theta = theta.divexact(&g)?;
        Self::from_form(theta)
    }

    pub fn omega(&self) -> &OneForm {
        &self.omega
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Restriction to the affine chart `zᵢ = 1`, in the remaining coordinates
    /// in increasing index order, with content removed.
    pub fn affine_chart(&self, i: usize) -> OneForm {
        assert!(i < 3, "chart index");
        let keep: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        let coeffs: Vec<Poly> = keep
            .iter()
            .map(|&j| dehomogenize(self.omega.coeff(j), i))
            .collect();
        let w = OneForm::new(coeffs).expect("two coefficients in two variables");
        let g = w.content();
        w.divexact(&g).expect("content divides").normalized()
    }

    pub fn is_invariant(&self, f: &Poly) -> Result<bool, FoliationError> {
        if !f.is_homogeneous() {
            return Err(FoliationError::CurveNotHomogeneous);
        }
        curve_is_invariant(&self.omega, f)
    }

    /// Invariance of the line `z₀ = 0`.
    pub fn infinity_line_invariant(&self) -> bool {
        self.is_invariant(&Poly::var(3, 0))
            .expect("z0 is a homogeneous nonconstant curve")
    }

    pub fn is_singular_at(&self, p: &[Rat]) -> Result<bool, FoliationError> {
        if p.len() != 3 || p.iter().all(Zero::is_zero) {
            return Err(FoliationError::InvalidPoint);
        }
        Ok(self.omega.coeffs().iter().all(|c| c.eval(p).is_zero()))
    }
}

/// Homogenizes a polynomial in `(x, y)` to degree `k` in `(z₀, z₁, z₂)`.
pub fn homogenize(p: &Poly, k: u32) -> Poly {
    p.map_monomials(3, |m| {
        let (a, b) = (m.exp(0), m.exp(1));
        Monomial::new(vec![k - a - b, a, b])
    })
}

/// Sets `zᵢ = 1` in a polynomial in three variables and drops `zᵢ`.
pub fn dehomogenize(p: &Poly, i: usize) -> Poly {
    let keep: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    p.map_monomials(2, |m| {
        Monomial::new(keep.iter().map(|&j| m.exp(j)).collect())
    })
}

/// Germ of foliation at `basepoint` defined by an affine form `A dx + B dy`
/// with coprime coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermFoliation {
    omega: OneForm,
    basepoint: [Rat; 2],
}

impl GermFoliation {
    pub fn new(omega: OneForm, basepoint: [Rat; 2]) -> Result<Self, FoliationError> {
        if omega.nvars() != 2 {
            return Err(FoliationError::WrongVariableCount {
                expected: 2,
                got: omega.nvars(),
            });
        }
        if omega.is_zero() {
            return Err(FoliationError::ZeroForm);
        }
        let g = omega.content();
        if !g.is_constant() {
            return Err(FoliationError::CommonFactor(g));
        }
        Ok(GermFoliation { omega, basepoint })
    }

    pub fn at_origin(omega: OneForm) -> Result<Self, FoliationError> {
        Self::new(omega, [Rat::zero(), Rat::zero()])
    }

    pub fn omega(&self) -> &OneForm {
        &self.omega
    }

    pub fn basepoint(&self) -> &[Rat; 2] {
        &self.basepoint
    }

    pub fn at(&self, basepoint: [Rat; 2]) -> GermFoliation {
        GermFoliation {
            omega: self.omega.clone(),
            basepoint,
        }
    }

    /// The translation `(x, y) ↦ basepoint + (x, y)`.
    pub fn translation(&self) -> [Poly; 2] {
        [
            Poly::var(2, 0) + Poly::constant(2, self.basepoint[0].clone()),
            Poly::var(2, 1) + Poly::constant(2, self.basepoint[1].clone()),
        ]
    }

    /// The form in local coordinates centered at the basepoint.
    pub fn local_form(&self) -> OneForm {
        let t = self.translation();
        self.omega
            .map(|c| c.substitute(&t).expect("two images for two variables"))
    }

    /// A curve equation in local coordinates centered at the basepoint.
    pub fn local_curve(&self, f: &Poly) -> Poly {
        f.substitute(&self.translation())
            .expect("two images for two variables")
    }

    /// Multiplicity `ν(ω)` at the basepoint.
    pub fn order(&self) -> u32 {
        self.local_form().order().expect("nonzero form")
    }

    pub fn is_singular(&self) -> bool {
        self.omega
            .coeffs()
            .iter()
            .all(|c| c.eval(&self.basepoint).is_zero())
    }

    pub fn is_singular_at(&self, p: &[Rat]) -> Result<bool, FoliationError> {
        if p.len() != 2 {
            return Err(FoliationError::InvalidPoint);
        }
        Ok(self.omega.coeffs().iter().all(|c| c.eval(p).is_zero()))
    }

    pub fn is_invariant(&self, f: &Poly) -> Result<bool, FoliationError> {
        curve_is_invariant(&self.omega, f)
    }

    /// Jacobian at the basepoint of the dual vector field `(−B, A)`.
    pub fn linear_part(&self) -> Result<LinearPart, FoliationError> {
        if !self.is_singular() {
            return Err(FoliationError::NonSingularPoint);
        }
        let (a, b) = (self.omega.coeff(0), self.omega.coeff(1));
        let at = |p: Poly| p.eval(&self.basepoint);
        Ok(LinearPart {
            m00: -at(b.derivative(0)),
            m01: -at(b.derivative(1)),
            m10: at(a.derivative(0)),
            m11: at(a.derivative(1)),
        })
    }

    /// Seidenberg's criterion: the linear part is nonzero and its eigenvalue
    /// ratio is not a positive rational (saddle-nodes are reduced).
    pub fn is_reduced_singularity(&self) -> Result<bool, FoliationError> {
        Ok(self.linear_part()?.is_reduced())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPart {
    pub m00: Rat,
    pub m01: Rat,
    pub m10: Rat,
    pub m11: Rat,
}

impl LinearPart {
    pub fn trace(&self) -> Rat {
        &self.m00 + &self.m11
    }

    pub fn det(&self) -> Rat {
        &self.m00 * &self.m11 - &self.m01 * &self.m10
    }

    pub fn is_zero(&self) -> bool {
        [&self.m00, &self.m01, &self.m10, &self.m11]
            .iter()
            .all(|c| c.is_zero())
    }

    /// With eigenvalues `λ₁ = r·λ₂`, the ratio `r` solves
    /// `D r² + (2D − T²) r + D = 0`; the point is not reduced exactly when
    /// this has a positive rational root (or when `T = D = 0`).
    pub fn is_reduced(&self) -> bool {
        let t = self.trace();
        let d = self.det();
        if d.is_zero() {
            return !t.is_zero();
        }
        let two = Rat::from_integer(2.into());
        let q = UniPoly::new(vec![d.clone(), &two * &d - &t * &t, d]);
        let (roots, _) = q.rational_roots();
        !roots.iter().any(|(r, _)| r.is_positive())
    }
}

/// Where to look for singular points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Window {
    /// The whole affine plane.
    Plane,
    /// The coordinate line `{z_var = 0}` only.
    Divisor { var: usize },
    /// The curve `{f = 0}` only.
    OnCurve(Poly),
}

/// Rational singular points found, plus the eliminant residues that carry
/// the non-rational candidates. `complete` holds iff both residues are
/// constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPointReport {
    pub rational_points: Vec<[Rat; 2]>,
    pub eliminants: (UniPoly, UniPoly),
    pub complete: bool,
}

impl SingularPointReport {
    fn new(points: Vec<[Rat; 2]>, ex: UniPoly, ey: UniPoly) -> Self {
        let complete = ex.is_constant() && ey.is_constant();
        let mut points = points;
        points.sort();
        points.dedup();
        SingularPointReport {
            rational_points: points,
            eliminants: (ex, ey),
            complete,
        }
    }
}

/// Exact rational common zeros of the coefficients of an affine form.
pub fn singular_points(
    w: &OneForm,
    window: &Window,
) -> Result<SingularPointReport, FoliationError> {
    if w.nvars() != 2 {
        return Err(FoliationError::WrongVariableCount {
            expected: 2,
            got: w.nvars(),
        });
    }
    if w.is_zero() {
        return Err(FoliationError::ZeroForm);
    }
    let g = w.content();
    if !g.is_constant() {
        return Err(FoliationError::CommonFactor(g));
    }
    let (a, b) = (w.coeff(0), w.coeff(1));
    match window {
        Window::Divisor { var } => {
            let var = *var;
            if var > 1 {
                return Err(FoliationError::InvalidPoint);
            }
            let other = 1 - var;
            let zero = Rat::zero();
            let ua = a.partial_eval(var, &zero).to_unipoly(other).unwrap();
            let ub = b.partial_eval(var, &zero).to_unipoly(other).unwrap();
            let gu = ua.gcd(&ub);
            if gu.is_zero() {
                return Err(FoliationError::CommonFactor(Poly::var(2, var)));
            }
            let (roots, residual) = gu.rational_roots();
            let points = roots
                .into_iter()
                .map(|(r, _)| {
                    let mut p = [Rat::zero(), Rat::zero()];
                    p[other] = r;
                    p
                })
                .collect();
            Ok(SingularPointReport::new(points, residual, UniPoly::one()))
        }
        Window::Plane | Window::OnCurve(_) => {
            // a nonzero constant coefficient never vanishes
            if a.constant_value().is_some_and(|c| !c.is_zero())
                || b.constant_value().is_some_and(|c| !c.is_zero())
            {
                return Ok(SingularPointReport::new(
                    Vec::new(),
                    UniPoly::one(),
                    UniPoly::one(),
                ));
            }
            let curve = match window {
                Window::OnCurve(f) => Some(f),
                _ => None,
            };
            let mut polys = vec![a.clone(), b.clone()];
            if let Some(f) = curve {
                polys.push(f.clone());
            }
            let eliminant = |elim_var: usize| -> UniPoly {
                let keep = 1 - elim_var;
                let mut g = resultant(a, b, elim_var).to_unipoly(keep).unwrap();
                if let Some(f) = curve {
                    for p in [a, b] {
                        let r = resultant(p, f, elim_var).to_unipoly(keep).unwrap();
                        g = g.gcd(&r);
                    }
                }
                g
            };
            let ex = eliminant(1);
            let ey = eliminant(0);
            let (xs, rx) = ex.rational_roots();
            let (_, ry) = ey.rational_roots();
            let mut points = Vec::new();
            for (x0, _) in xs {
                let mut gy = UniPoly::zero();
                for p in &polys {
                    gy = gy.gcd(&p.partial_eval(0, &x0).to_unipoly(1).unwrap());
                }
                if gy.is_zero() {
                    // excluded by coprimality of A and B
                    unreachable!("coefficients vanish on a whole line");
                }
                let (ys, _) = gy.rational_roots();
                points.extend(ys.into_iter().map(|(y0, _)| [x0.clone(), y0]));
            }
            Ok(SingularPointReport::new(points, rx, ry))
        }
    }
}

/// Whether two forms differ by a nonzero constant factor.
pub fn forms_proportional(a: &OneForm, b: &OneForm) -> bool {
    a.normalized() == b.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    fn z(i: usize) -> Poly {
        Poly::var(3, i)
    }
    fn c3(n: i64) -> Poly {
        Poly::constant(3, rat(n))
    }
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
    fn germ(a: Poly, b: Poly) -> GermFoliation {
        GermFoliation::at_origin(form(a, b)).unwrap()
    }
    fn radial() -> OneForm {
        form(-y(), x())
    }
    fn extremal_d1() -> ProjFoliation {
        ProjFoliation::new(
            -(z(0) * z(1) + c3(2) * z(2).pow(2)),
            z(0).pow(2),
            c3(2) * z(0) * z(2),
        )
        .unwrap()
    }
    fn pencil() -> ProjFoliation {
        ProjFoliation::new(z(1), -z(0), Poly::zero(3)).unwrap()
    }

    #[test]
    fn proj_new_examples() {
        assert_eq!(extremal_d1().degree(), 1);
        assert_eq!(pencil().degree(), 0);
        let err = ProjFoliation::new(z(0), z(1), z(2)).unwrap_err();
        assert_eq!(
            err,
            FoliationError::EulerViolated(z(0).pow(2) + z(1).pow(2) + z(2).pow(2))
        );
    }

    #[test]
    fn proj_new_names_each_violation() {
        assert_eq!(
            ProjFoliation::new(z(1) + c3(1), -z(0), Poly::zero(3)),
            Err(FoliationError::NotHomogeneous { index: 0 })
        );
        assert_eq!(
            ProjFoliation::new(z(1).pow(2), -z(0), Poly::zero(3)),
            Err(FoliationError::UnequalDegrees)
        );
        let common = ProjFoliation::new(z(2) * z(1), -z(2) * z(0), Poly::zero(3));
        assert_eq!(common, Err(FoliationError::CommonFactor(z(2))));
        assert_eq!(
            ProjFoliation::new(Poly::zero(3), Poly::zero(3), Poly::zero(3)),
            Err(FoliationError::ZeroForm)
        );
    }

    #[test]
    fn proj_new_is_scale_invariant() {
        let f = extremal_d1();
        let k = rat_frac(-5, 3);
        let g = ProjFoliation::from_form(f.omega().scale(&k)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn homogenize_examples() {
        let p = ProjFoliation::homogenize_affine(&radial()).unwrap();
        assert_eq!(p.degree(), 0);
        assert!(forms_proportional(
            p.omega(),
            &OneForm::new(vec![Poly::zero(3), -z(2), z(1)]).unwrap()
        ));
        let dy = ProjFoliation::homogenize_affine(&OneForm::basis(2, 1)).unwrap();
        assert_eq!(dy.degree(), 0);
    }

    #[test]
    fn affine_chart_examples() {
        let w = form(c(3) * x() * y() - c(1), x().pow(2) + y());
        let back = ProjFoliation::homogenize_affine(&w)
            .unwrap()
            .affine_chart(0);
        assert!(forms_proportional(&back, &w));

        // chart 0 of the degree-1 example: A₁(1,x,y) dx + A₂(1,x,y) dy
        let w = extremal_d1().affine_chart(0);
        assert_eq!(w, form(c(1), c(2) * y()));

        // pencil in chart z2 = 1, coordinates (z0, z1)
        let w = pencil().affine_chart(2);
        assert!(forms_proportional(&w, &form(y(), -x())));
    }

    #[test]
    fn invariance_examples() {
        let g = germ(-y(), x());
        assert!(g.is_invariant(&(x().pow(4) + y().pow(4))).unwrap());
        let saddle = germ(y(), x());
        assert!(!saddle.is_invariant(&(x() - y())).unwrap());
        assert_eq!(
            saddle.is_invariant(&c(2)),
            Err(FoliationError::ConstantCurve)
        );
        assert!(pencil().is_invariant(&(z(0) * z(1))).unwrap());
        assert_eq!(
            pencil().is_invariant(&(z(0) + c3(1))),
            Err(FoliationError::CurveNotHomogeneous)
        );
        assert!(extremal_d1().infinity_line_invariant());
    }

    #[test]
    fn singular_at_examples() {
        assert!(!germ(-y(), x()).is_singular_at(&[rat(1), rat(1)]).unwrap());
        assert!(pencil().is_singular_at(&[rat(0), rat(0), rat(1)]).unwrap());
        assert_eq!(
            pencil().is_singular_at(&[rat(0), rat(0), rat(0)]),
            Err(FoliationError::InvalidPoint)
        );
    }

    #[test]
    fn singular_point_examples() {
        let rep = singular_points(&radial(), &Window::Plane).unwrap();
        assert_eq!(rep.rational_points, vec![[rat(0), rat(0)]]);
        assert!(rep.complete);

        let dt = OneForm::basis(2, 1);
        let rep = singular_points(&dt, &Window::Divisor { var: 0 }).unwrap();
        assert!(rep.rational_points.is_empty());
        assert!(rep.complete);

        let w = form(y().pow(2) - c(2), x());
        let rep = singular_points(&w, &Window::Divisor { var: 0 }).unwrap();
        assert!(rep.rational_points.is_empty());
        assert!(!rep.complete);
        assert_eq!(rep.eliminants.0, UniPoly::from_ints(&[-2, 0, 1]));

        assert_eq!(
            singular_points(&OneForm::zero(2), &Window::Plane),
            Err(FoliationError::ZeroForm)
        );
    }

    #[test]
    fn singular_points_of_a_cubic_form() {
        // A = x(x-1), B = y(2y+3): four rational points
        let w = form(x() * (x() - c(1)), y() * (c(2) * y() + c(3)));
        let rep = singular_points(&w, &Window::Plane).unwrap();
        assert_eq!(rep.rational_points.len(), 4);
        assert!(rep.complete);
        for p in &rep.rational_points {
            assert!(w.coeffs().iter().all(|c| c.eval(p).is_zero()));
        }
        let on_curve = singular_points(&w, &Window::OnCurve(x() - y())).unwrap();
        assert_eq!(on_curve.rational_points, vec![[rat(0), rat(0)]]);
    }

    #[test]
    fn reduced_criterion_examples() {
        let ratio2 = germ(c(-2) * y(), x());
        let lp = ratio2.linear_part().unwrap();
        assert_eq!((lp.trace(), lp.det()), (rat(-3), rat(2)));
        assert!(!ratio2.is_reduced_singularity().unwrap());

        let saddle = germ(y(), x());
        let lp = saddle.linear_part().unwrap();
        assert_eq!((lp.trace(), lp.det()), (rat(0), rat(-1)));
        assert!(saddle.is_reduced_singularity().unwrap());

        let saddle_node = germ(y(), -x().pow(2));
        assert!(saddle_node.is_reduced_singularity().unwrap());

        assert!(!germ(-y(), x()).is_reduced_singularity().unwrap());

        let regular = GermFoliation::new(radial(), [rat(1), rat(0)]).unwrap();
        assert_eq!(regular.linear_part(), Err(FoliationError::NonSingularPoint));
    }

    #[test]
    fn translated_basepoint() {
        // saddle moved to (1, 2)
        let w = form(y() - c(2), x() - c(1));
        let g = GermFoliation::new(w, [rat(1), rat(2)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_reduced_singularity().unwrap());
        assert_eq!(g.local_form(), form(y(), x()));
    }
}
