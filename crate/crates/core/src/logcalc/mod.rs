//! Logarithmic forms along invariant curves: the local statements for germs
//! and their blow-ups, the extremal-degree pipeline on ℙ², division by an
//! invariant hypersurface and rational first integrals.

pub mod examples;

use num_traits::Zero;
use thiserror::Error;

use crate::blowup::{
    dicriticity, reduce_singularities, BlowupChart, ChartId, DicriticityVerdict, ReductionStatus,
    ReductionTree, UnknownReason,
};
use crate::exactalg::{fmt_rat, linalg, Monomial, Poly, Rat};
use crate::foliation::{
    dehomogenize, singular_points, FoliationError, GermFoliation, ProjFoliation, Window,
};
use crate::forms::{contract_radial, d_poly, wedge, FormError, MeroOneForm, OneForm, PoleReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogError {
    #[error("curve degree {} differs from the extremal degree {expected}", fmt_degree(.got))]
    DegreeMismatch { expected: u32, got: Option<u32> },
    #[error("the curve is not invariant")]
    NotInvariant,
    #[error("the curve equation is not reduced")]
    NotReduced,
    #[error("the curve equation is constant")]
    ConstantCurve,
    #[error("the polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the germ is dicritical (node {node}); nu(f) = {nu_f}, nu(omega) = {nu_omega}")]
    DicriticalInput {
        node: usize,
        nu_f: u32,
        nu_omega: u32,
    },
    #[error("dicriticity could not be decided: {0}")]
    UnknownDicriticity(UnknownReason),
    #[error("target degrees are negative")]
    DegreeInfeasible,
    #[error("degree of h is {}, expected {expected}", fmt_degree(.got))]
    NotExtremalDegree { expected: u32, got: Option<u32> },
    #[error("the division is not certified")]
    DivisionFailed,
    #[error("Euler consequence violated: {0}")]
    EulerConsequenceViolated(String),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    Form(#[from] FormError),
}

fn fmt_degree(d: &Option<u32>) -> String {
    d.map_or_else(|| "undefined".to_string(), |d| d.to_string())
}

fn check_curve(f: &Poly) -> Result<(), LogError> {
    if f.is_constant() {
        return Err(LogError::ConstantCurve);
    }
    if !f.is_squarefree() {
        return Err(LogError::NotReduced);
    }
    Ok(())
}

/// `Ω = ω/f` for a foliation of ℙ² and a reduced invariant curve of
/// degree `d + 2`.
pub fn log_form_projective(fol: &ProjFoliation, f: &Poly) -> Result<MeroOneForm, LogError> {
    if f.nvars() != 3 || !f.is_homogeneous() {
        return Err(LogError::NotHomogeneous);
    }
    check_curve(f)?;
    let expected = fol.degree() + 2;
    if f.total_degree() != Some(expected) {
        return Err(LogError::DegreeMismatch {
            expected,
            got: f.total_degree(),
        });
    }
    if !fol.is_invariant(f)? {
        return Err(LogError::NotInvariant);
    }
    Ok(MeroOneForm::new(fol.omega().clone(), f.clone())?)
}

/// Restriction of a homogeneous meromorphic form to the affine chart
/// `zᵢ = 1` (no content removal).
pub fn affine_restriction(omega: &MeroOneForm, i: usize) -> Result<MeroOneForm, LogError> {
    let num: Vec<Poly> = (0..3)
        .filter(|&j| j != i)
        .map(|j| dehomogenize(omega.num().coeff(j), i))
        .collect();
    Ok(MeroOneForm::new(
        OneForm::new(num)?,
        dehomogenize(omega.den(), i),
    )?)
}

/// Whether `ω/f` is logarithmic for a reduced invariant curve `f`.
pub fn verify_prop1(g: &GermFoliation, f: &Poly) -> Result<bool, LogError> {
    check_curve(f)?;
    if !g.is_invariant(f)? {
        return Err(LogError::NotInvariant);
    }
    Ok(MeroOneForm::new(g.omega().clone(), f.clone())?.is_logarithmic())
}

/// Multiplicities at the basepoint and logarithmicity of `σ*(ω/f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop2Report {
    pub nu_f: u32,
    pub nu_omega: u32,
    pub inequality_ok: bool,
    pub chart1_logarithmic: bool,
    pub chart2_logarithmic: bool,
}

fn nondicritical_precheck(
    g: &GermFoliation,
    f: &Poly,
    max_depth: u32,
) -> Result<(u32, u32), LogError> {
    check_curve(f)?;
    if !g.is_invariant(f)? {
        return Err(LogError::NotInvariant);
    }
    let nu_f = g.local_curve(f).order().expect("nonzero curve");
    let nu_omega = g.order();
    match dicriticity(g, max_depth)? {
        DicriticityVerdict::NonDicritical => Ok((nu_f, nu_omega)),
        DicriticityVerdict::Dicritical { node, .. } => Err(LogError::DicriticalInput {
            node,
            nu_f,
            nu_omega,
        }),
        DicriticityVerdict::Unknown(r) => Err(LogError::UnknownDicriticity(r)),
    }
}

pub fn verify_prop2(g: &GermFoliation, f: &Poly, max_depth: u32) -> Result<Prop2Report, LogError> {
    let (nu_f, nu_omega) = nondicritical_precheck(g, f, max_depth)?;
    let omega = MeroOneForm::new(g.omega().clone(), f.clone())?;
    let chart_log = |id| -> Result<bool, LogError> {
        let chart = BlowupChart::new(id, g.basepoint().clone());
        Ok(omega.pullback(&chart.map())?.is_logarithmic())
    };
    Ok(Prop2Report {
        nu_f,
        nu_omega,
        inequality_ok: nu_f <= nu_omega + 1,
        chart1_logarithmic: chart_log(ChartId::One)?,
        chart2_logarithmic: chart_log(ChartId::Two)?,
    })
}

/// `σ*(ω/f)` in one chart of the blow-up at the basepoint, with the pole
/// orders along the exceptional divisor.
pub fn blowup_pole_report(
    g: &GermFoliation,
    f: &Poly,
    chart: ChartId,
) -> Result<(MeroOneForm, PoleReport), LogError> {
    let map = BlowupChart::new(chart, g.basepoint().clone());
    let pulled = MeroOneForm::new(g.omega().clone(), f.clone())?.pullback(&map.map())?;
    let report = pulled.pole_orders(&map.divisor())?;
    Ok((pulled, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogStage {
    pub label: String,
    pub logarithmic: bool,
}

/// Logarithmicity of `Ω` pulled back to both charts of every blow-up in the
/// tree. The first entry is `Ω` itself, labelled `log:chart0:node0`.
pub fn tree_log_stages(
    omega: &MeroOneForm,
    tree: &ReductionTree,
) -> Result<Vec<LogStage>, LogError> {
    let mut out = vec![LogStage {
        label: "log:chart0:node0".to_string(),
        logarithmic: omega.is_logarithmic(),
    }];
    for node in tree.blown_up() {
        for (id, map) in node.chart_maps() {
            out.push(LogStage {
                label: format!("log:chart{}:node{}", id.index(), node.id),
                logarithmic: omega.pullback(&map)?.is_logarithmic(),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop3Report {
    pub tree: ReductionTree,
    pub stages: Vec<LogStage>,
    pub all_logarithmic: bool,
}

pub fn verify_prop3(g: &GermFoliation, f: &Poly, max_depth: u32) -> Result<Prop3Report, LogError> {
    nondicritical_precheck(g, f, max_depth)?;
    let tree = reduce_singularities(g, max_depth);
    match &tree.status {
        ReductionStatus::Complete => {}
        ReductionStatus::DepthExceeded => {
            return Err(LogError::UnknownDicriticity(UnknownReason::DepthExceeded))
        }
        ReductionStatus::NonRationalCenter(e) => {
            return Err(LogError::UnknownDicriticity(
                UnknownReason::NonRationalCenter(e.clone()),
            ))
        }
    }
    let omega = MeroOneForm::new(g.omega().clone(), f.clone())?;
    let stages = tree_log_stages(&omega, &tree)?;
    let all_logarithmic = stages.iter().all(|s| s.logarithmic);
    Ok(Prop3Report {
        tree,
        stages,
        all_logarithmic,
    })
}

/// Homogeneous coordinates of a point of ℙ².
pub type ProjPoint = [Rat; 3];

/// Scales so that the first nonzero coordinate is 1.
pub fn normalize_point(p: &ProjPoint) -> ProjPoint {
    let lead = p
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero point")
        .clone();
    [&p[0] / &lead, &p[1] / &lead, &p[2] / &lead]
}

pub fn fmt_point(p: &ProjPoint) -> String {
    format!("({}:{}:{})", fmt_rat(&p[0]), fmt_rat(&p[1]), fmt_rat(&p[2]))
}

/// Affine coordinates of a projective point in its canonical chart (the
/// first index with a nonzero coordinate).
fn canonical_chart(p: &ProjPoint) -> (usize, [Rat; 2]) {
    let p = normalize_point(p);
    let i = p.iter().position(|c| !c.is_zero()).unwrap();
    let rest: Vec<Rat> = (0..3).filter(|&j| j != i).map(|j| p[j].clone()).collect();
    (i, [rest[0].clone(), rest[1].clone()])
}

fn lift_point(chart: usize, a: &[Rat; 2]) -> ProjPoint {
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
    out[chart] = Rat::from_integer(1.into());
    let others: Vec<usize> = (0..3).filter(|&j| j != chart).collect();
    out[others[0]] = a[0].clone();
    out[others[1]] = a[1].clone();
    out
}

/// Rational singular points of a foliation of ℙ² on `{f = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSingularities {
    pub points: Vec<ProjPoint>,
    /// Eliminant residues per affine chart, rendered.
    pub residues: Vec<String>,
    pub complete: bool,
}

pub fn singular_points_on_curve(
    fol: &ProjFoliation,
    f: &Poly,
) -> Result<CurveSingularities, LogError> {
    let mut points = Vec::new();
    let mut residues = Vec::new();
    let mut complete = true;
    for chart in 0..3 {
        let w = fol.affine_chart(chart);
        let fa = dehomogenize(f, chart);
        if fa.is_constant() {
            continue;
        }
        let rep = singular_points(&w, &Window::OnCurve(fa))?;
        complete &= rep.complete;
        for e in [&rep.eliminants.0, &rep.eliminants.1] {
            if !e.is_constant() {
                residues.push(format!("chart{chart}: {e}"));
            }
        }
        for p in rep.rational_points {
            let q = lift_point(chart, &p);
            // keep only points whose canonical chart is this one
            if canonical_chart(&q).0 == chart {
                points.push(normalize_point(&q));
            }
        }
    }
    points.sort();
    points.dedup();
    Ok(CurveSingularities {
        points,
        residues,
        complete,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// Every singular point on the curve is non-dicritical.
    Satisfied,
    /// Some singular point on the curve is dicritical.
    Failed,
    /// Some point could not be decided, or the search was incomplete.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineStage {
    pub label: String,
    pub passed: bool,
    pub point: Option<String>,
    pub detail: Option<String>,
}

impl PipelineStage {
    fn new(label: impl Into<String>, passed: bool) -> Self {
        PipelineStage {
            label: label.into(),
            passed,
            point: None,
            detail: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointVerdict {
    pub point: ProjPoint,
    pub verdict: DicriticityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogPipelineReport {
    pub foliation_degree: u32,
    pub curve_degree: Option<u32>,
    pub degree_extremal: bool,
    pub invariance_ok: bool,
    pub singular_points: Option<CurveSingularities>,
    pub dicritical_flags: Vec<PointVerdict>,
    pub stages: Vec<PipelineStage>,
    pub log_form: Option<MeroOneForm>,
    pub closed: Option<bool>,
    pub hypothesis: Hypothesis,
}

/// The extremal pipeline: degree, invariance, singular points on the curve
/// with their dicriticity, `Ω = ω/f`, logarithmicity along every reduction
/// and closedness in the three affine charts.
pub fn analyze_extremal(fol: &ProjFoliation, f: &Poly, max_depth: u32) -> LogPipelineReport {
    let mut report = LogPipelineReport {
        foliation_degree: fol.degree(),
        curve_degree: f.total_degree(),
        degree_extremal: false,
        invariance_ok: false,
        singular_points: None,
        dicritical_flags: Vec::new(),
        stages: Vec::new(),
        log_form: None,
        closed: None,
        hypothesis: Hypothesis::Unknown,
    };
    let homogeneous = f.nvars() == 3 && f.is_homogeneous() && !f.is_constant();
    report.degree_extremal = homogeneous && f.total_degree() == Some(fol.degree() + 2);
    report
        .stages
        .push(PipelineStage::new("degree", report.degree_extremal));
    report.invariance_ok = homogeneous && fol.is_invariant(f).unwrap_or(false);
    report
        .stages
        .push(PipelineStage::new("invariance", report.invariance_ok));
    if !homogeneous || !report.invariance_ok {
        return report;
    }

    let sings = match singular_points_on_curve(fol, f) {
        Ok(s) => s,
        Err(e) => {
            let mut st = PipelineStage::new("singular-points", false);
            st.detail = Some(e.to_string());
            report.stages.push(st);
            return report;
        }
    };
    let mut any_dicritical = false;
    let mut any_unknown = !sings.complete;
    let mut nondicritical_points = Vec::new();
    for p in &sings.points {
        let (chart, a) = canonical_chart(p);
        let germ = GermFoliation::new(fol.affine_chart(chart), a)
            .expect("chart form has coprime coefficients");
        let verdict = dicriticity(&germ, max_depth).expect("singular point");
        let mut st = PipelineStage::new(
            format!("dicriticity:{}", fmt_point(p)),
            verdict == DicriticityVerdict::NonDicritical,
        );
        st.point = Some(fmt_point(p));
        st.detail = Some(verdict.to_string());
        report.stages.push(st);
        match verdict {
            DicriticityVerdict::NonDicritical => {
                nondicritical_points.push((p.clone(), chart, germ))
            }
            DicriticityVerdict::Dicritical { .. } => any_dicritical = true,
            DicriticityVerdict::Unknown(_) => any_unknown = true,
        }
        report.dicritical_flags.push(PointVerdict {
            point: p.clone(),
            verdict,
        });
    }
    report.hypothesis = if any_dicritical {
        Hypothesis::Failed
    } else if any_unknown {
        Hypothesis::Unknown
    } else {
        Hypothesis::Satisfied
    };
    report.singular_points = Some(sings);

    let omega = match log_form_projective(fol, f) {
        Ok(o) => o,
        Err(e) => {
            let mut st = PipelineStage::new("logform", false);
            st.detail = Some(e.to_string());
            report.stages.push(st);
            return report;
        }
    };
    report.stages.push(PipelineStage::new("logform", true));

    let mut restrictions = Vec::new();
    for i in 0..3 {
        let r = affine_restriction(&omega, i).expect("restriction of a valid form");
        report.stages.push(PipelineStage::new(
            format!("log:affine{i}"),
            r.is_logarithmic(),
        ));
        restrictions.push(r);
    }

    for (p, chart, germ) in &nondicritical_points {
        let tree = reduce_singularities(germ, max_depth);
        if tree.status != ReductionStatus::Complete {
            continue;
        }
        let local = &restrictions[*chart];
        for s in tree_log_stages(local, &tree).expect("pullbacks in two variables") {
            let mut st = PipelineStage::new(s.label, s.logarithmic);
            st.point = Some(fmt_point(p));
            report.stages.push(st);
        }
    }

    let closed = restrictions.iter().all(MeroOneForm::is_closed);
    report.stages.push(PipelineStage::new("closed", closed));
    report.closed = Some(closed);
    report.log_form = Some(omega);
    report
}

/// `ω = a·dh + h·η` with homogeneous `a` and `η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    pub a: Option<Poly>,
    pub eta: Option<OneForm>,
    pub certified: bool,
}

/// Solves `ω = a·dh + h·η` by coefficient matching, with
/// `deg a = deg ω + 1 − deg h` and `deg η = deg ω − deg h`.
pub fn rham_saito_divide(omega: &OneForm, h: &Poly) -> Result<DivisionResult, LogError> {
    let n = omega.nvars();
    if h.nvars() != n || h.is_constant() || !h.is_homogeneous() {
        return Err(LogError::NotHomogeneous);
    }
    let e = h.total_degree().unwrap();
    if omega.is_zero() {
        return Ok(DivisionResult {
            a: Some(Poly::zero(n)),
            eta: Some(OneForm::zero(n)),
            certified: true,
        });
    }
    let k = omega.homogeneous_degree().ok_or(LogError::NotHomogeneous)?;
    if k + 1 < e {
        return Err(LogError::DegreeInfeasible);
    }
    let da = k + 1 - e;
    let a_monos = Monomial::all_of_degree(n, da);
    let eta_monos = if k >= e {
        Monomial::all_of_degree(n, k - e)
    } else {
        Vec::new()
    };
    let rows = Monomial::all_of_degree(n, k);
    let row_index = |m: &Monomial| rows.binary_search(m).expect("degree-k monomial");
    let ncols = a_monos.len() + n * eta_monos.len();
    let dh = d_poly(h);

    // equations are indexed by (component i, monomial of degree k)
    let mut matrix = vec![vec![Rat::zero(); ncols]; n * rows.len()];
    let mut rhs = vec![Rat::zero(); n * rows.len()];
    for i in 0..n {
        let base = i * rows.len();
        for (m, c) in omega.coeff(i).terms() {
            rhs[base + row_index(m)] = c.clone();
        }
        for (col, am) in a_monos.iter().enumerate() {
            for (m, c) in dh.coeff(i).terms() {
                matrix[base + row_index(&m.mul(am))][col] += c;
            }
        }
        for (j, em) in eta_monos.iter().enumerate() {
            let col = a_monos.len() + i * eta_monos.len() + j;
            for (m, c) in h.terms() {
                matrix[base + row_index(&m.mul(em))][col] += c;
            }
        }
    }
    let Some(x) = linalg::solve(&matrix, &rhs, ncols) else {
        return Ok(DivisionResult {
            a: None,
            eta: None,
            certified: false,
        });
    };
    let a = Poly::from_terms(
        n,
        a_monos
            .iter()
            .zip(&x)
            .map(|(m, c)| (m.exps().to_vec(), c.clone())),
    );
    let eta = OneForm::new(
        (0..n)
            .map(|i| {
                let off = a_monos.len() + i * eta_monos.len();
                Poly::from_terms(
                    n,
                    eta_monos
                        .iter()
                        .zip(&x[off..off + eta_monos.len()])
                        .map(|(m, c)| (m.exps().to_vec(), c.clone())),
                )
            })
            .collect(),
    )?;
    let back = dh.scale_poly(&a).add(&eta.scale_poly(h));
    assert_eq!(&back, omega, "division does not re-expand");
    Ok(DivisionResult {
        a: Some(a),
        eta: Some(eta),
        certified: true,
    })
}

/// `h / a^δ` is constant along the leaves: `ω ∧ (a·dh − δ·h·da) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstIntegral {
    pub h: Poly,
    pub a: Poly,
    pub delta: u32,
}

impl FirstIntegral {
    /// The 1-form `a·dh − δ·h·da`.
    pub fn numerator_form(&self) -> OneForm {
        let delta = Rat::from_integer(self.delta.into());
        d_poly(&self.h)
            .scale_poly(&self.a)
            .sub(&d_poly(&self.a).scale_poly(&self.h).scale(&delta))
    }
}

pub fn first_integral_extremal(fol: &ProjFoliation, h: &Poly) -> Result<FirstIntegral, LogError> {
    if h.nvars() != 3 || !h.is_homogeneous() || h.is_constant() {
        return Err(LogError::NotHomogeneous);
    }
    let expected = fol.degree() + 1;
    if h.total_degree() != Some(expected) {
        return Err(LogError::NotExtremalDegree {
            expected,
            got: h.total_degree(),
        });
    }
    if !fol.is_invariant(h)? {
        return Err(LogError::NotInvariant);
    }
    let div = rham_saito_divide(fol.omega(), h)?;
    let (Some(a), Some(eta)) = (div.a, div.eta) else {
        return Err(LogError::DivisionFailed);
    };
    let delta = h.total_degree().unwrap();
    let dr = Rat::from_integer(delta.into());
    let euler = a.scale(&dr) + contract_radial(&eta);
    if !euler.is_zero() {
        return Err(LogError::EulerConsequenceViolated(format!(
            "deg(h) a + i_R eta = {euler}"
        )));
    }
    if eta != d_poly(&a).scale(&-dr.clone()) {
        return Err(LogError::EulerConsequenceViolated(
            "eta differs from -deg(h) da".to_string(),
        ));
    }
    let fi = FirstIntegral {
        h: h.clone(),
        a,
        delta,
    };
    if !wedge(fol.omega(), &fi.numerator_form())?.is_zero() {
        return Err(LogError::EulerConsequenceViolated(
            "omega does not annihilate a dh - deg(h) h da".to_string(),
        ));
    }
    Ok(fi)
}
