//! Strategies, property checks and seeded corpora shared by the test suites.
//! Enabled by the `testkit` feature.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blowup::{blowup_once, is_first_level_dicritical, ChartId};
use crate::exactalg::{gcd, rat, rat_frac, Poly, Rat};
use crate::foliation::{GermFoliation, LinearPart, ProjFoliation};
use crate::forms::{d_one, d_poly, pullback, OneForm};
use crate::logcalc::examples::{log_combination_foliation, log_combination_form};

// ---------------------------------------------------------------- strategies

pub fn arb_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat_frac(n, d))
}

pub fn arb_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), arb_rat()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            nvars,
            terms
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg),
        )
    })
}

pub fn arb_nonzero_poly(
    nvars: usize,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = Poly> {
    arb_poly(nvars, max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn arb_one_form(
    nvars: usize,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = OneForm> {
    prop::collection::vec(arb_poly(nvars, max_deg, max_terms), nvars)
        .prop_map(|c| OneForm::new(c).expect("right length"))
}

/// Polynomial map from `from` variables into `to` variables.
pub fn arb_map(from: usize, to: usize, max_deg: u32) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(arb_poly(to, max_deg, 3), from)
}

// ------------------------------------------------------------ property checks

#[allow(clippy::eq_op)]
pub fn check_ring_axioms(a: &Poly, b: &Poly, c: &Poly) -> Result<(), TestCaseError> {
    let n = a.nvars();
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!((a + b) + c, a + (b + c));
    prop_assert_eq!((a * b) * c, a * (b * c));
    prop_assert_eq!(a * (b + c), a * b + a * c);
    prop_assert_eq!(a + Poly::zero(n), a.clone());
    prop_assert_eq!(a * Poly::one(n), a.clone());
    prop_assert!((a - a).is_zero());
    prop_assert_eq!(a - b, a + (-b));
    Ok(())
}

/// `g = gcd(ac, bc)` divides both arguments and is divisible by `c`.
pub fn check_gcd_divisibility(a: &Poly, b: &Poly, c: &Poly) -> Result<(), TestCaseError> {
    let ac = a * c;
    let bc = b * c;
    let g = gcd(&ac, &bc);
    if ac.is_zero() && bc.is_zero() {
        prop_assert!(g.is_zero());
        return Ok(());
    }
    prop_assert!(g.divides(&ac), "gcd {} does not divide {}", g, ac);
    prop_assert!(g.divides(&bc), "gcd {} does not divide {}", g, bc);
    if !c.is_zero() {
        prop_assert!(c.divides(&g), "{} does not divide gcd {}", c, g);
    }
    prop_assert_eq!(g.clone(), gcd(&bc, &ac));
    Ok(())
}

/// `ν(ab) = ν(a) + ν(b)` and `deg(ab) = deg a + deg b`.
pub fn check_order_additivity(a: &Poly, b: &Poly) -> Result<(), TestCaseError> {
    let ab = a * b;
    prop_assert_eq!(ab.order(), Some(a.order().unwrap() + b.order().unwrap()));
    prop_assert_eq!(
        ab.total_degree(),
        Some(a.total_degree().unwrap() + b.total_degree().unwrap())
    );
    Ok(())
}

/// `d(dp) = 0`, and `d` of an exact form is zero through [`d_one`].
pub fn check_d_squared(p: &Poly) -> Result<(), TestCaseError> {
    prop_assert!(d_one(&d_poly(p)).is_zero());
    Ok(())
}

/// `(φ∘ψ)* = ψ*φ*` on 1-forms and `φ*dp = d(φ*p)`.
pub fn check_pullback_functorial(
    phi: &[Poly],
    psi: &[Poly],
    w: &OneForm,
    p: &Poly,
) -> Result<(), TestCaseError> {
    let composed: Vec<Poly> = phi.iter().map(|f| f.substitute(psi).unwrap()).collect();
    let lhs = pullback(&composed, w).unwrap();
    let rhs = pullback(psi, &pullback(phi, w).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    prop_assert_eq!(
        pullback(phi, &d_poly(p)).unwrap(),
        d_poly(&p.substitute(phi).unwrap())
    );
    Ok(())
}

/// Runs `check` on `cases` values drawn deterministically from `strategy`.
/// Returns the number of cases run.
pub fn run_property<S>(
    cases: u32,
    seed: u64,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: cases * 64,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes));
    runner
        .run(&strategy, check)
        .map(|()| cases)
        .map_err(|e| e.to_string())
}

// ------------------------------------------------------------- random corpora

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    rat(rng.gen_range(lo..=hi))
}

fn nonzero_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Random polynomial in two variables of total degree between 1 and `max_deg`.
pub fn random_poly2(rng: &mut ChaCha8Rng, max_deg: u32, nterms: usize) -> Poly {
    loop {
        let mut p = Poly::zero(2);
        for _ in 0..nterms {
            let d = rng.gen_range(0..=max_deg);
            let i = rng.gen_range(0..=d);
            let c = nonzero_int(rng, 5);
            p = p + Poly::from_terms(2, [(vec![i, d - i], rat(c))]);
        }
        if !p.is_constant() {
            return p;
        }
    }
}

/// A germ at the origin, a reduced invariant curve and a label.
#[derive(Debug, Clone)]
pub struct CurveCase {
    pub label: String,
    pub germ: GermFoliation,
    pub curve: Poly,
}

fn x() -> Poly {
    Poly::var(2, 0)
}
fn y() -> Poly {
    Poly::var(2, 1)
}
fn c2(n: i64) -> Poly {
    Poly::constant(2, rat(n))
}

fn case(label: &str, a: Poly, b: Poly, f: Poly) -> CurveCase {
    CurveCase {
        label: label.to_string(),
        germ: GermFoliation::at_origin(OneForm::new(vec![a, b]).unwrap()).unwrap(),
        curve: f,
    }
}

/// Named fixtures: cusp, saddle, a non-resonant saddle and the resonant
/// Poincaré–Dulac node with its unique separatrix.
pub fn named_nondicritical() -> Vec<CurveCase> {
    vec![
        case(
            "cusp",
            c2(-3) * x().pow(2),
            c2(2) * y(),
            y().pow(2) - x().pow(3),
        ),
        case("saddle", y(), x(), x() * y()),
        case("saddle-ratio-2", c2(2) * y(), x(), x() * y()),
        case("dulac-node", -(c2(2) * y() + x().pow(2)), x(), x()),
    ]
}

/// `Σ λᵢ dfᵢ/fᵢ` cleared of denominators for random curves and residues;
/// cases whose product is not reduced or whose form degenerates are
/// skipped. The named fixtures are appended.
pub fn prop1_corpus(seed: u64, n: usize) -> Vec<CurveCase> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n {
        attempts += 1;
        assert!(attempts < 50 * n, "corpus generation stalled");
        let k = rng.gen_range(1..=3);
        let comps: Vec<(Poly, Rat)> = (0..k)
            .map(|_| {
                let nt = rng.gen_range(1..=3);
                (
                    random_poly2(&mut rng, 2, nt),
                    rat_frac(nonzero_int(&mut rng, 4), rng.gen_range(1..=3)),
                )
            })
            .collect();
        let f = comps.iter().fold(Poly::one(2), |acc, (p, _)| acc * p);
        if !f.is_squarefree() {
            continue;
        }
        let w = log_combination_form(&comps);
        if w.is_zero() {
            continue;
        }
        let Ok(germ) = GermFoliation::at_origin(w) else {
            continue;
        };
        if !germ.is_invariant(&f).unwrap_or(false) {
            continue;
        }
        out.push(CurveCase {
            label: format!("log-combination-{}", out.len()),
            germ,
            curve: f,
        });
    }
    out.extend(named_nondicritical());
    out
}

/// Germs `Σ λᵢ dfᵢ/fᵢ` with positive residues along `k ≥ 2` smooth curves
/// through the origin with distinct rational tangents.
pub fn random_nondicritical(seed: u64, n: usize) -> Vec<CurveCase> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let k = rng.gen_range(2..=3);
        let mut slopes: Vec<(i64, i64)> = Vec::new();
        while slopes.len() < k {
            let s = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            if s == (0, 0) {
                continue;
            }
            // distinct tangent directions
            if slopes.iter().any(|&(a, b)| a * s.1 - b * s.0 == 0) {
                continue;
            }
            slopes.push(s);
        }
        let comps: Vec<(Poly, Rat)> = slopes
            .iter()
            .map(|&(a, b)| {
                let lin = c2(a) * x() + c2(b) * y();
                let quad = Poly::from_terms(
                    2,
                    [
                        (vec![2, 0], small_rat(&mut rng, -2, 2)),
                        (vec![1, 1], small_rat(&mut rng, -2, 2)),
                        (vec![0, 2], small_rat(&mut rng, -2, 2)),
                    ],
                );
                (
                    lin + quad,
                    rat_frac(rng.gen_range(1..=5), rng.gen_range(1..=3)),
                )
            })
            .collect();
        let f = comps.iter().fold(Poly::one(2), |acc, (p, _)| acc * p);
        if !f.is_squarefree() {
            continue;
        }
        let Ok(germ) = GermFoliation::at_origin(log_combination_form(&comps)) else {
            continue;
        };
        out.push(CurveCase {
            label: format!("positive-residues-{}", out.len()),
            germ,
            curve: f,
        });
    }
    out
}

/// Foliations of ℙ² with the closed logarithmic form
/// `Σ λᵢ dLᵢ/Lᵢ + λ_C dC/C` where the `Lᵢ` are rational lines in general
/// position with positive residues and `C = z₀² + z₁² + z₂²` carries
/// `λ_C = −Σ λᵢ / 2`. Returns the foliation and the product curve.
pub fn lines_and_conic_corpus(seed: u64, n: usize) -> Vec<(ProjFoliation, Poly)> {
    let mut rng = rng(seed);
    let z = |i| Poly::var(3, i);
    let conic = z(0).pow(2) + z(1).pow(2) + z(2).pow(2);
    let mut out = Vec::new();
    while out.len() < n {
        let k = rng.gen_range(1..=3);
        let lines: Vec<[i64; 3]> = (0..k)
            .map(|_| {
                [
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                ]
            })
            .collect();
        if lines.contains(&[0, 0, 0]) || !general_position(&lines) {
            continue;
        }
        let mut comps: Vec<(Poly, Rat)> = lines
            .iter()
            .map(|l| {
                let p = (0..3).fold(Poly::zero(3), |acc, i| acc + z(i).scale(&rat(l[i])));
                (p, rat_frac(rng.gen_range(1..=4), rng.gen_range(1..=2)))
            })
            .collect();
        let total: Rat = comps.iter().map(|(_, l)| l.clone()).sum();
        comps.push((conic.clone(), -total / rat(2)));
        let Ok(fol) = log_combination_foliation(&comps) else {
            continue;
        };
        let f = comps.iter().fold(Poly::one(3), |acc, (p, _)| acc * p);
        if f.total_degree() != Some(fol.degree() + 2) {
            continue;
        }
        out.push((fol, f));
    }
    out
}

fn det3(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn general_position(lines: &[[i64; 3]]) -> bool {
    let n = lines.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (lines[i], lines[j]);
            let cross = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            if cross == [0, 0, 0] {
                return false;
            }
            for c in &lines[j + 1..] {
                if det3(&a, &b, c) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// `ω = a·dh − δ·h·da` for a random linear `a` and a random reduced
/// homogeneous `h` of degree `deg_h`, kept when the result is a foliation
/// of degree `deg_h − 1`.
pub fn first_integral_corpus(seed: u64, n: usize) -> Vec<(ProjFoliation, Poly, Poly)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let deg_h = rng.gen_range(2..=3u32);
        let a = (0..3).fold(Poly::zero(3), |acc, i| {
            acc + Poly::var(3, i).scale(&small_rat(&mut rng, -3, 3))
        });
        if a.is_zero() {
            continue;
        }
        let mut h = Poly::zero(3);
        for _ in 0..rng.gen_range(2..=4) {
            let e0 = rng.gen_range(0..=deg_h);
            let e1 = rng.gen_range(0..=deg_h - e0);
            let c = nonzero_int(&mut rng, 4);
            h = h + Poly::from_terms(3, [(vec![e0, e1, deg_h - e0 - e1], rat(c))]);
        }
        if h.is_zero() || !h.is_squarefree() {
            continue;
        }
        let delta = rat(deg_h as i64);
        let w = d_poly(&h)
            .scale_poly(&a)
            .sub(&d_poly(&a).scale_poly(&h).scale(&delta));
        let Ok(fol) = ProjFoliation::from_form(w) else {
            continue;
        };
        if fol.degree() + 1 != deg_h {
            continue;
        }
        out.push((fol, h, a));
    }
    out
}

/// Expected verdict of the reduced-singularity test from the eigenstructure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Eigen {
    /// Diagonalizable with eigenvalues `l1`, `l2`.
    Diagonal(Rat, Rat),
    /// A single Jordan block with eigenvalue `l`.
    Jordan(Rat),
}

impl Eigen {
    /// Independent oracle: reduced iff the linear part is nonzero and no
    /// eigenvalue ratio is a positive rational.
    pub fn reduced(&self) -> bool {
        match self {
            Eigen::Diagonal(a, b) => {
                if a.is_zero() && b.is_zero() {
                    return false;
                }
                if a.is_zero() || b.is_zero() {
                    return true;
                }
                !(a / b).is_positive()
            }
            Eigen::Jordan(_) => false,
        }
    }
}

/// `P · J · P⁻¹` for a random invertible integer `P` and a Jordan form `J`.
pub fn eigen_corpus(seed: u64, n: usize) -> Vec<(LinearPart, Eigen)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let kind = rng.gen_range(0..4);
        let l1 = small_rat(&mut rng, -6, 6);
        let l2 = small_rat(&mut rng, -6, 6);
        let (j, eig) = match kind {
            0 => (
                [l1.clone(), Rat::zero(), Rat::zero(), l2.clone()],
                Eigen::Diagonal(l1, l2),
            ),
            // saddle-node
            1 => {
                let mu = rat(nonzero_int(&mut rng, 6));
                (
                    [Rat::zero(), Rat::zero(), Rat::zero(), mu.clone()],
                    Eigen::Diagonal(Rat::zero(), mu),
                )
            }
            // resonant: l2 = (p/q) l1 with small p, q > 0
            2 => {
                let l = rat(nonzero_int(&mut rng, 4));
                let r = rat_frac(rng.gen_range(1..=4), rng.gen_range(1..=4));
                let sign = if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
                let l2 = &l * &r * &sign;
                (
                    [l.clone(), Rat::zero(), Rat::zero(), l2.clone()],
                    Eigen::Diagonal(l, l2),
                )
            }
            _ => (
                [l1.clone(), Rat::one(), Rat::zero(), l1.clone()],
                Eigen::Jordan(l1),
            ),
        };
        let p = [
            rat(rng.gen_range(-4..=4)),
            rat(rng.gen_range(-4..=4)),
            rat(rng.gen_range(-4..=4)),
            rat(rng.gen_range(-4..=4)),
        ];
        let det = &p[0] * &p[3] - &p[1] * &p[2];
        if det.is_zero() {
            continue;
        }
        let inv = [&p[3] / &det, -&p[1] / &det, -&p[2] / &det, &p[0] / &det];
        let m = mat_mul(&mat_mul(&p, &j), &inv);
        out.push((
            LinearPart {
                m00: m[0].clone(),
                m01: m[1].clone(),
                m10: m[2].clone(),
                m11: m[3].clone(),
            },
            eig,
        ));
    }
    out
}

fn mat_mul(a: &[Rat; 4], b: &[Rat; 4]) -> [Rat; 4] {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

/// A germ at the origin whose dual field `(−B, A)` has the given linear
/// part, perturbed by random quadratic terms. `None` if the coefficients
/// share a factor.
pub fn germ_with_linear_part(lp: &LinearPart, rng: &mut ChaCha8Rng) -> Option<GermFoliation> {
    let lin = |a: &Rat, b: &Rat| x().scale(a) + y().scale(b);
    let qa = random_quadratic(rng);
    let qb = random_quadratic(rng);
    let a = lin(&lp.m10, &lp.m11) + qa;
    let b = -lin(&lp.m00, &lp.m01) + qb;
    GermFoliation::at_origin(OneForm::new(vec![a, b]).ok()?).ok()
}

fn random_quadratic(rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_terms(
        2,
        [
            (vec![2, 0], small_rat(rng, -2, 2)),
            (vec![1, 1], small_rat(rng, -2, 2)),
            (vec![0, 2], small_rat(rng, -2, 2)),
        ],
    )
}

/// Random germ at the origin of order between 1 and `max_order`.
pub fn random_germ(rng: &mut ChaCha8Rng, max_order: u32) -> Option<GermFoliation> {
    let nu = rng.gen_range(1..=max_order);
    let mut coeffs = Vec::new();
    for _ in 0..2 {
        let mut p = Poly::zero(2);
        for d in nu..=nu + 1 {
            for i in 0..=d {
                if rng.gen_bool(0.6) {
                    p = p + Poly::from_terms(2, [(vec![i, d - i], small_rat(rng, -3, 3))]);
                }
            }
        }
        coeffs.push(p);
    }
    let w = OneForm::new(coeffs).ok()?;
    if w.is_zero() {
        return None;
    }
    GermFoliation::at_origin(w).ok()
}

/// Tangent-cone test: `x·A_ν + y·B_ν ≡ 0` for the lowest-order parts.
pub fn tangent_cone_dicritical(g: &GermFoliation) -> bool {
    let w = g.local_form();
    let nu = w.order().expect("nonzero");
    let a = w.coeff(0).homogeneous_part(nu);
    let b = w.coeff(1).homogeneous_part(nu);
    (x() * a + y() * b).is_zero()
}

/// The divided power and both first-level characterizations of a germ.
pub fn first_level_data(g: &GermFoliation) -> (u32, u32, bool, bool) {
    let st = blowup_once(g, ChartId::One);
    (
        g.order(),
        st.divided_power,
        is_first_level_dicritical(g).expect("singular"),
        tangent_cone_dicritical(g),
    )
}
