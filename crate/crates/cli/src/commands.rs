use foliation_lab::blowup::{
    blowup_once, dicriticity, is_first_level_dicritical, reduce_singularities, reduce_with,
    verdict_of, ChartId, DicriticityVerdict, ReductionStatus,
};
use foliation_lab::exactalg::{parse_rat, Poly, Rat};
use foliation_lab::foliation::{curve_is_invariant, GermFoliation, ProjFoliation};
use foliation_lab::forms::MeroOneForm;
use foliation_lab::logcalc::examples::{builtin_example_cdf, extremal_d1, radial_example};
use foliation_lab::logcalc::{
    affine_restriction, analyze_extremal, blowup_pole_report, first_integral_extremal, fmt_point,
    log_form_projective, rham_saito_divide, Hypothesis, LogError,
};
use serde_json::{json, Value};

use crate::input::{GermContext, InputDoc, Kind, Loaded};
use crate::report::{rat_value, status_name, tree_value, Report, Stage};
use crate::{Cli, CliError, Command, Computed, Demo, DEFAULT_MAX_DEPTH};

const PROJ_NAMES: [&str; 3] = ["z0", "z1", "z2"];

fn math(e: impl ToString) -> CliError {
    CliError::Math(e.to_string())
}

/// Flag, then `params.max_depth`, then the environment, then the default.
pub fn resolve_depth(
    flag: Option<u32>,
    params: Option<u32>,
    env: Option<&str>,
) -> Result<u32, CliError> {
    if let Some(d) = flag.or(params) {
        return Ok(d);
    }
    match env {
        None => Ok(DEFAULT_MAX_DEPTH),
        Some(s) => s.trim().parse().map_err(|_| {
            CliError::Input(format!(
                "{} must be a nonnegative integer, got `{s}`",
                crate::MAX_DEPTH_ENV
            ))
        }),
    }
}

fn load(cli: &Cli) -> Result<Loaded, CliError> {
    let Some(path) = &cli.input else {
        return Err(CliError::Usage("this command needs --input <file>".into()));
    };
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    InputDoc::from_json(&text)?.load()
}

pub fn execute(cli: &Cli, env_depth: Option<String>) -> Result<Computed, CliError> {
    if let Command::Demo { which } = &cli.command {
        let depth = resolve_depth(cli.max_depth, None, env_depth.as_deref())?;
        return match which {
            Demo::Radial => demo_radial(depth),
            Demo::Cdf { alpha, beta, gamma } => demo_cdf(alpha, beta, gamma, depth),
            Demo::ExtremalD1 => demo_extremal_d1(),
        };
    }
    let l = load(cli)?;
    let depth = resolve_depth(cli.max_depth, l.params.max_depth, env_depth.as_deref())?;
    let curve = cli.curve.as_deref();
    match &cli.command {
        Command::Check => check(&l),
        Command::Invariant => invariant(&l, curve),
        Command::Blowup { chart } => blowup(&l, chart.or(l.params.chart), curve),
        Command::Dicritical { full_tree } => dicritical(&l, depth, *full_tree),
        Command::Reduce => reduce(&l, depth),
        Command::Logform => logform(&l, curve),
        Command::Closed => closed(&l, curve),
        Command::Extremal => extremal(&l, curve, depth),
        Command::Divide => divide(&l, curve),
        Command::FirstIntegral => first_integral(&l, curve),
        Command::Demo { .. } => unreachable!(),
    }
}

fn done(report: Report) -> Result<Computed, CliError> {
    Ok(Computed {
        report,
        unknown: false,
    })
}

fn verdict_value(v: &DicriticityVerdict) -> Value {
    json!(v.to_string())
}

fn describe_verdict(r: &mut Report, v: &DicriticityVerdict) {
    r.verdict("dicriticity", verdict_value(v));
    match v {
        DicriticityVerdict::Dicritical { node, depth } => {
            r.datum("witness", json!({"node": node, "depth": depth}));
        }
        DicriticityVerdict::Unknown(reason) => {
            r.datum("reason", reason.to_string());
        }
        DicriticityVerdict::NonDicritical => {}
    }
}

fn chart_names(names: &[String; 2], id: ChartId) -> [String; 2] {
    let fresh = |pref: &str| {
        let mut s = pref.to_string();
        while names.contains(&s) {
            s.push('\'');
        }
        s
    };
    match id {
        ChartId::One => [names[0].clone(), fresh("t")],
        ChartId::Two => [fresh("s"), names[1].clone()],
    }
}

fn refs(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

fn parse_chart(c: Option<u8>) -> Result<ChartId, CliError> {
    match c.unwrap_or(1) {
        1 => Ok(ChartId::One),
        2 => Ok(ChartId::Two),
        other => Err(CliError::Input(format!(
            "chart must be 1 or 2, got {other}"
        ))),
    }
}

fn check(l: &Loaded) -> Result<Computed, CliError> {
    let mut r = Report::new("check");
    let names = l.names();
    let fol = l.projective()?;
    r.verdict("valid", true);
    r.verdict("degree", fol.degree());
    r.verdict("infinity_line_invariant", fol.infinity_line_invariant());
    match l.kind {
        Kind::Homogeneous => {
            r.datum("omega", fol.omega().render(&names));
        }
        Kind::Affine => {
            r.datum("omega", l.form.render(&names));
            r.datum("homogenized", fol.omega().render(&PROJ_NAMES));
        }
    }
    if l.basepoint.is_some() || l.kind == Kind::Affine {
        let g = l.germ()?;
        r.verdict("singular", g.germ.is_singular());
        r.datum("basepoint_vars", json!(g.names));
        r.datum(
            "basepoint",
            Value::Array(g.germ.basepoint().iter().map(rat_value).collect()),
        );
        if g.germ.is_singular() {
            r.verdict("order", g.germ.order());
            let lp = g.germ.linear_part().map_err(math)?;
            r.verdict("reduced", lp.is_reduced() && !lp.is_zero());
            r.datum("trace", rat_value(&lp.trace()));
            r.datum("det", rat_value(&lp.det()));
        }
    }
    done(r)
}

fn invariant(l: &Loaded, curve: Option<&str>) -> Result<Computed, CliError> {
    let (name, f) = l.curve(curve)?;
    let mut r = Report::new("invariant");
    let inv = match l.kind {
        Kind::Homogeneous => l.projective()?.is_invariant(&f).map_err(math)?,
        Kind::Affine => curve_is_invariant(&l.form, &f).map_err(math)?,
    };
    r.verdict("invariant", inv);
    r.datum("curve", name);
    r.datum("f", f.render(&l.names()));
    done(r)
}

fn blowup_report(
    g: &GermContext,
    id: ChartId,
    curve: Option<&(String, Poly)>,
    r: &mut Report,
) -> Result<(), CliError> {
    let st = blowup_once(&g.germ, id);
    let cn = chart_names(&g.names, id);
    let cref = refs(&cn);
    r.verdict("chart", id.index());
    r.verdict("m", st.divided_power);
    r.verdict("exceptional_invariant", st.exceptional_invariant);
    r.datum("chart_vars", json!(cn));
    r.datum(
        "chart_map",
        json!(st
            .chart
            .map()
            .iter()
            .map(|p| p.render(&cref))
            .collect::<Vec<_>>()),
    );
    r.datum("omega_tilde", st.omega_tilde.render(&cref));
    if let Some((name, f)) = curve {
        let (pulled, pole) = blowup_pole_report(&g.germ, f, id).map_err(math)?;
        r.datum("curve", name.clone());
        r.datum("pullback", pulled.render(&cref));
        r.datum("divisor", pole.factor.render(&cref));
        r.verdict("pole_order", pole.order_form);
        r.verdict("pullback_logarithmic", pulled.is_logarithmic());
    }
    Ok(())
}

fn blowup(l: &Loaded, chart: Option<u8>, curve: Option<&str>) -> Result<Computed, CliError> {
    let id = parse_chart(chart)?;
    let g = l.germ()?;
    let mut r = Report::new("blowup");
    let c = if l.curves.is_empty() && curve.is_none() {
        None
    } else {
        let (name, _) = l.curve(curve)?;
        g.curves.iter().find(|(k, _)| *k == name).cloned()
    };
    blowup_report(&g, id, c.as_ref(), &mut r)?;
    done(r)
}

fn singular_germ(l: &Loaded) -> Result<GermContext, CliError> {
    let g = l.germ()?;
    if !g.germ.is_singular() {
        return Err(CliError::Math(
            "the basepoint is not a singular point".into(),
        ));
    }
    Ok(g)
}

fn dicritical(l: &Loaded, depth: u32, full_tree: bool) -> Result<Computed, CliError> {
    let g = singular_germ(l)?;
    let mut r = Report::new("dicritical");
    let tree = reduce_with(&g.germ, depth, !full_tree);
    let v = verdict_of(&tree);
    describe_verdict(&mut r, &v);
    r.verdict(
        "first_level_dicritical",
        is_first_level_dicritical(&g.germ).map_err(math)?,
    );
    if full_tree {
        r.datum("tree", tree_value(&tree));
    }
    Ok(Computed {
        report: r,
        unknown: matches!(v, DicriticityVerdict::Unknown(_)),
    })
}

fn reduce(l: &Loaded, depth: u32) -> Result<Computed, CliError> {
    let g = singular_germ(l)?;
    let tree = reduce_singularities(&g.germ, depth);
    let mut r = Report::new("reduce");
    r.verdict("status", status_name(&tree.status));
    r.verdict("blowups", tree.blown_up().count());
    r.verdict("depth", tree.max_depth());
    describe_verdict(&mut r, &verdict_of(&tree));
    r.datum("tree", tree_value(&tree));
    Ok(Computed {
        report: r,
        unknown: tree.status != ReductionStatus::Complete,
    })
}

/// `ω/f` in the input's own coordinates.
fn input_log_form(l: &Loaded, f: &Poly) -> Result<MeroOneForm, CliError> {
    match l.kind {
        Kind::Homogeneous => log_form_projective(&l.projective()?, f).map_err(math),
        Kind::Affine => MeroOneForm::new(l.form.clone(), f.clone()).map_err(math),
    }
}

fn logform(l: &Loaded, curve: Option<&str>) -> Result<Computed, CliError> {
    let (name, f) = l.curve(curve)?;
    let names = l.names();
    let omega = input_log_form(l, &f)?;
    let mut r = Report::new("logform");
    r.datum("curve", name);
    r.datum("omega", omega.render(&names));
    match l.kind {
        Kind::Homogeneous => {
            let mut all = true;
            for i in 0..3 {
                let a = affine_restriction(&omega, i).map_err(math)?;
                all &= a.is_logarithmic();
                r.stage(Stage::new(format!("log:affine{i}"), a.is_logarithmic()));
            }
            r.verdict("logarithmic", all);
        }
        Kind::Affine => {
            r.verdict("invariant", curve_is_invariant(&l.form, &f).map_err(math)?);
            r.verdict("logarithmic", omega.is_logarithmic());
        }
    }
    done(r)
}

fn closed(l: &Loaded, curve: Option<&str>) -> Result<Computed, CliError> {
    let (name, f) = l.curve(curve)?;
    let omega = input_log_form(l, &f)?;
    let mut r = Report::new("closed");
    r.datum("curve", name);
    let c = match l.kind {
        Kind::Homogeneous => {
            let mut all = true;
            for i in 0..3 {
                let a = affine_restriction(&omega, i).map_err(math)?;
                all &= a.is_closed();
                r.stage(Stage::new(format!("closed:affine{i}"), a.is_closed()));
            }
            all
        }
        Kind::Affine => omega.is_closed(),
    };
    r.verdict("closed", c);
    done(r)
}

fn extremal_report(fol: &ProjFoliation, f: &Poly, depth: u32, r: &mut Report) -> bool {
    let rep = analyze_extremal(fol, f, depth);
    r.verdict("degree", rep.foliation_degree);
    r.verdict("curve_degree", json!(rep.curve_degree));
    r.verdict("degree_extremal", rep.degree_extremal);
    r.verdict("invariant", rep.invariance_ok);
    r.verdict("closed", json!(rep.closed));
    let hyp = match rep.hypothesis {
        Hypothesis::Satisfied => "Satisfied",
        Hypothesis::Failed => "Failed",
        Hypothesis::Unknown => "Unknown",
    };
    r.verdict("hypothesis", hyp);
    for s in &rep.stages {
        r.stage(s.into());
    }
    if let Some(s) = &rep.singular_points {
        r.datum(
            "singular_points",
            json!(s.points.iter().map(fmt_point).collect::<Vec<_>>()),
        );
        r.datum("singular_points_complete", s.complete);
        if !s.residues.is_empty() {
            r.datum("unresolved", json!(s.residues));
        }
    }
    let flags: serde_json::Map<String, Value> = rep
        .dicritical_flags
        .iter()
        .map(|p| (fmt_point(&p.point), verdict_value(&p.verdict)))
        .collect();
    r.datum("dicriticity", Value::Object(flags));
    if let Some(w) = &rep.log_form {
        r.datum("log_form", w.render(&PROJ_NAMES));
    }
    rep.hypothesis == Hypothesis::Unknown
}

fn extremal(l: &Loaded, curve: Option<&str>, depth: u32) -> Result<Computed, CliError> {
    let fol = l.projective()?;
    let name = l.curve(curve)?.0;
    let (_, f) = l
        .projective_curves()
        .into_iter()
        .find(|(k, _)| *k == name)
        .expect("curve exists");
    let mut r = Report::new("extremal");
    r.datum("curve", name);
    let unknown = extremal_report(&fol, &f, depth, &mut r);
    Ok(Computed { report: r, unknown })
}

fn h_curve(l: &Loaded, curve: Option<&str>) -> Result<(String, Poly), CliError> {
    if curve.is_none() {
        if let Some(src) = &l.params.h {
            let p =
                foliation_lab::parse::parse_poly(src, &l.names()).map_err(|e| CliError::Parse {
                    what: "params.h".into(),
                    line: e.pos().line,
                    column: e.pos().column,
                    message: e.to_string(),
                })?;
            return Ok(("h".into(), p));
        }
    }
    l.curve(curve)
}

fn homogeneous_input(l: &Loaded, what: &str) -> Result<ProjFoliation, CliError> {
    if l.kind != Kind::Homogeneous {
        return Err(CliError::Input(format!(
            "{what} needs a homogeneous foliation"
        )));
    }
    l.projective()
}

fn divide(l: &Loaded, curve: Option<&str>) -> Result<Computed, CliError> {
    let fol = homogeneous_input(l, "divide")?;
    let (name, h) = h_curve(l, curve)?;
    let names = l.names();
    let res = rham_saito_divide(fol.omega(), &h).map_err(math)?;
    let mut r = Report::new("divide");
    r.datum("curve", name);
    r.verdict("certified", res.certified);
    if let Some(a) = &res.a {
        r.datum("a", a.render(&names));
    }
    if let Some(eta) = &res.eta {
        r.datum("eta", eta.render(&names));
    }
    done(r)
}

fn first_integral_report(
    fol: &ProjFoliation,
    h: &Poly,
    names: &[&str],
    r: &mut Report,
) -> Result<(), CliError> {
    match first_integral_extremal(fol, h) {
        Ok(fi) => {
            r.verdict("first_integral", true);
            r.verdict("delta", fi.delta);
            r.datum("h", fi.h.render(names));
            let a = fi.a.normalized();
            r.datum("a", a.render(names));
            r.datum(
                "integral",
                format!(
                    "({})/({})^{}",
                    fi.h.render(names),
                    a.render(names),
                    fi.delta
                ),
            );
            Ok(())
        }
        Err(e @ (LogError::DivisionFailed | LogError::EulerConsequenceViolated(_))) => {
            r.verdict("first_integral", false);
            r.datum("reason", e.to_string());
            Ok(())
        }
        Err(e) => Err(math(e)),
    }
}

fn first_integral(l: &Loaded, curve: Option<&str>) -> Result<Computed, CliError> {
    let fol = homogeneous_input(l, "first-integral")?;
    let (name, h) = h_curve(l, curve)?;
    let mut r = Report::new("first-integral");
    r.datum("curve", name);
    first_integral_report(&fol, &h, &l.names(), &mut r)?;
    done(r)
}

fn demo_radial(depth: u32) -> Result<Computed, CliError> {
    let (g, f) = radial_example();
    let names = ["x".to_string(), "y".to_string()];
    let mut r = Report::new("demo radial");
    r.datum("omega", g.omega().render(&refs(&names)));
    r.datum("f", f.render(&refs(&names)));
    r.verdict("invariant", g.is_invariant(&f).map_err(math)?);
    let omega = MeroOneForm::new(g.omega().clone(), f.clone()).map_err(math)?;
    r.verdict("logarithmic", omega.is_logarithmic());
    r.datum("log_form", omega.render(&refs(&names)));
    let ctx = GermContext {
        germ: g.clone(),
        curves: vec![("f".into(), f.clone())],
        names,
    };
    blowup_report(&ctx, ChartId::One, Some(&ctx.curves[0]), &mut r)?;
    let v = dicriticity(&g, depth).map_err(math)?;
    describe_verdict(&mut r, &v);
    Ok(Computed {
        report: r,
        unknown: matches!(v, DicriticityVerdict::Unknown(_)),
    })
}

fn demo_rat(name: &str, s: &str) -> Result<Rat, CliError> {
    parse_rat(s).ok_or_else(|| CliError::Input(format!("--{name} must be p or p/q, got `{s}`")))
}

fn demo_cdf(alpha: &str, beta: &str, gamma: &str, depth: u32) -> Result<Computed, CliError> {
    let (a, b, c) = (
        demo_rat("alpha", alpha)?,
        demo_rat("beta", beta)?,
        demo_rat("gamma", gamma)?,
    );
    let ex = builtin_example_cdf(&a, &b, &c);
    let fol = &ex.foliation;
    let mut r = Report::new("demo cdf");
    r.datum(
        "parameters",
        json!([rat_value(&a), rat_value(&b), rat_value(&c)]),
    );
    r.datum("affine_form", ex.affine.render(&["z1", "z2"]));
    r.datum("omega", fol.omega().render(&PROJ_NAMES));
    let mut invariant = serde_json::Map::new();
    let mut count = 0;
    for (name, line) in &ex.curves {
        let inv = fol.is_invariant(line).map_err(math)?;
        count += inv as usize;
        invariant.insert(name.clone(), json!(inv));
    }
    r.verdict("invariant_lines", Value::Object(invariant));
    r.verdict("invariant_count", count);
    r.verdict("infinity_line_invariant", fol.infinity_line_invariant());
    // the affine form is not saturated when the residues sum to zero
    let origin = GermFoliation::at_origin(fol.affine_chart(0)).map_err(math)?;
    r.verdict(
        "origin_first_level_dicritical",
        is_first_level_dicritical(&origin).map_err(math)?,
    );
    let ov = dicriticity(&origin, depth).map_err(math)?;
    r.verdict("origin_dicriticity", verdict_value(&ov));
    let f = ex.all_lines();
    r.datum("f", f.render(&PROJ_NAMES));
    r.verdict("product_degree", json!(f.total_degree()));
    let unknown = if count == ex.curves.len() {
        extremal_report(fol, &f, depth, &mut r)
    } else {
        r.verdict("degree", fol.degree());
        r.verdict("closed", Value::Null);
        false
    };
    Ok(Computed { report: r, unknown })
}

fn demo_extremal_d1() -> Result<Computed, CliError> {
    let (raw, fol, h) = extremal_d1();
    let mut r = Report::new("demo extremal-d1");
    r.datum("omega", raw.render(&PROJ_NAMES));
    r.verdict("degree", fol.degree());
    r.verdict("invariant", fol.is_invariant(&h).map_err(math)?);
    let div = rham_saito_divide(&raw, &h).map_err(math)?;
    r.verdict("certified", div.certified);
    if let Some(a) = &div.a {
        r.datum("division_a", a.render(&PROJ_NAMES));
    }
    if let Some(eta) = &div.eta {
        r.datum("division_eta", eta.render(&PROJ_NAMES));
    }
    first_integral_report(&fol, &h, &PROJ_NAMES, &mut r)?;
    done(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_precedence() {
        assert_eq!(resolve_depth(Some(3), Some(4), Some("5")).unwrap(), 3);
        assert_eq!(resolve_depth(None, Some(4), Some("5")).unwrap(), 4);
        assert_eq!(resolve_depth(None, None, Some("5")).unwrap(), 5);
        assert_eq!(resolve_depth(None, None, None).unwrap(), 12);
        assert!(resolve_depth(None, None, Some("deep")).is_err());
    }

    #[test]
    fn fresh_chart_names_avoid_clashes() {
        let n = ["t".to_string(), "y".to_string()];
        assert_eq!(
            chart_names(&n, ChartId::One),
            ["t".to_string(), "t'".to_string()]
        );
        assert_eq!(
            chart_names(&n, ChartId::Two),
            ["s".to_string(), "y".to_string()]
        );
    }
}
