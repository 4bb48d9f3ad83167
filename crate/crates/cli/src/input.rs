//! JSON input documents.
//!
//! ```json
//! {
//!   "vars": ["x", "y"],
//!   "foliation": {"kind": "affine", "form": {"dx": "-y", "dy": "x"}, "basepoint": ["0", "0"]},
//!   "curves": {"f": "x^4 + y^4"},
//!   "params": {"max_depth": 12, "chart": 1}
//! }
//! ```

use std::collections::BTreeMap;

use foliation_lab::exactalg::{parse_rat, Poly, Rat};
use foliation_lab::foliation::{dehomogenize, GermFoliation, ProjFoliation};
use foliation_lab::forms::OneForm;
use foliation_lab::logcalc::{normalize_point, ProjPoint};
use foliation_lab::parse::parse_poly;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub vars: Vec<String>,
    pub foliation: FoliationSpec,
    #[serde(default)]
    pub curves: BTreeMap<String, String>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Affine,
    Homogeneous,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationSpec {
    pub kind: Kind,
    pub form: BTreeMap<String, String>,
    #[serde(default)]
    pub basepoint: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub max_depth: Option<u32>,
    pub chart: Option<u8>,
    pub curve: Option<String>,
    pub h: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub gamma: Option<String>,
}

/// A parsed and validated input document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub kind: Kind,
    pub vars: Vec<String>,
    pub form: OneForm,
    pub basepoint: Option<Vec<Rat>>,
    pub curves: Vec<(String, Poly)>,
    pub params: Params,
}

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl InputDoc {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            CliError::Parse {
                what: "input document".into(),
                line: e.line(),
                column: e.column(),
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
            }
        })
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let n = match self.foliation.kind {
            Kind::Affine => 2,
            Kind::Homogeneous => 3,
        };
        if self.vars.len() != n {
            return Err(input_err(format!(
                "a {} foliation needs {n} variables, got {}",
                match self.foliation.kind {
                    Kind::Affine => "affine",
                    Kind::Homogeneous => "homogeneous",
                },
                self.vars.len()
            )));
        }
        let mut seen = self.vars.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != n {
            return Err(input_err("variable names must be distinct"));
        }
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        for key in self.foliation.form.keys() {
            let known = key.strip_prefix('d').is_some_and(|v| names.contains(&v));
            if !known {
                return Err(input_err(format!("unknown differential `{key}`")));
            }
        }
        let mut coeffs = Vec::with_capacity(n);
        for v in &names {
            let key = format!("d{v}");
            coeffs.push(match self.foliation.form.get(&key) {
                Some(src) => parse_in(src, &names, &key)?,
                None => Poly::zero(n),
            });
        }
        let form = OneForm::new(coeffs).expect("one coefficient per variable");
        let basepoint = match &self.foliation.basepoint {
            None => None,
            Some(p) => {
                let pts: Option<Vec<Rat>> = p.iter().map(|s| parse_rat(s)).collect();
                let pts = pts.ok_or_else(|| input_err("basepoint coordinates must be p or p/q"))?;
                if pts.len() != n {
                    return Err(input_err(format!("basepoint needs {n} coordinates")));
                }
                Some(pts)
            }
        };
        let curves = self
            .curves
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_in(v, &names, &format!("curve `{k}`"))?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Loaded {
            kind: self.foliation.kind,
            vars: self.vars.clone(),
            form,
            basepoint,
            curves,
            params: self.params.clone(),
        })
    }
}

fn parse_in(src: &str, names: &[&str], what: &str) -> Result<Poly, CliError> {
    parse_poly(src, names).map_err(|e| CliError::Parse {
        what: what.to_string(),
        line: e.pos().line,
        column: e.pos().column,
        message: e.to_string(),
    })
}

/// A germ with curves in the same affine coordinates.
pub struct GermContext {
    pub germ: GermFoliation,
    pub curves: Vec<(String, Poly)>,
    pub names: [String; 2],
}

impl Loaded {
    pub fn names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn curve(&self, name: Option<&str>) -> Result<(String, Poly), CliError> {
        let wanted = name.or(self.params.curve.as_deref());
        match wanted {
            Some(w) => self
                .curves
                .iter()
                .find(|(k, _)| k == w)
                .cloned()
                .ok_or_else(|| input_err(format!("no curve named `{w}`"))),
            None => match self.curves.as_slice() {
                [one] => Ok(one.clone()),
                [] => Err(input_err("this command needs a curve")),
                _ => Err(input_err("several curves given; select one with --curve")),
            },
        }
    }

    pub fn projective(&self) -> Result<ProjFoliation, CliError> {
        match self.kind {
            Kind::Homogeneous => ProjFoliation::from_form(self.form.clone())
                .map_err(|e| CliError::Math(e.to_string())),
            Kind::Affine => ProjFoliation::homogenize_affine(&self.form)
                .map_err(|e| CliError::Math(e.to_string())),
        }
    }

    /// Homogeneous curves: as given, or homogenized from affine ones.
    pub fn projective_curves(&self) -> Vec<(String, Poly)> {
        match self.kind {
            Kind::Homogeneous => self.curves.clone(),
            Kind::Affine => self
                .curves
                .iter()
                .map(|(k, p)| {
                    let d = p.total_degree().unwrap_or(0);
                    (k.clone(), foliation_lab::foliation::homogenize(p, d))
                })
                .collect(),
        }
    }

    /// The germ at the basepoint (origin by default). A homogeneous input
    /// uses the affine chart of the first nonzero coordinate.
    pub fn germ(&self) -> Result<GermContext, CliError> {
        match self.kind {
            Kind::Affine => {
                let bp = self
                    .basepoint
                    .clone()
                    .unwrap_or_else(|| vec![Rat::from_integer(0.into()); 2]);
                let germ = GermFoliation::new(self.form.clone(), [bp[0].clone(), bp[1].clone()])
                    .map_err(|e| CliError::Math(e.to_string()))?;
                Ok(GermContext {
                    germ,
                    curves: self.curves.clone(),
                    names: [self.vars[0].clone(), self.vars[1].clone()],
                })
            }
            Kind::Homogeneous => {
                let bp = self.basepoint.clone().ok_or_else(|| {
                    input_err("a homogeneous input needs a basepoint for this command")
                })?;
                let p: ProjPoint = [bp[0].clone(), bp[1].clone(), bp[2].clone()];
                if p.iter().all(|c| *c == Rat::from_integer(0.into())) {
                    return Err(input_err("the basepoint must not be (0:0:0)"));
                }
                let p = normalize_point(&p);
                let chart = p
                    .iter()
                    .position(|c| *c != Rat::from_integer(0.into()))
                    .unwrap();
                let keep: Vec<usize> = (0..3).filter(|&j| j != chart).collect();
                let fol = self.projective()?;
                let germ = GermFoliation::new(
                    fol.affine_chart(chart),
                    [p[keep[0]].clone(), p[keep[1]].clone()],
                )
                .map_err(|e| CliError::Math(e.to_string()))?;
                let curves = self
                    .curves
                    .iter()
                    .map(|(k, c)| (k.clone(), dehomogenize(c, chart)))
                    .collect();
                Ok(GermContext {
                    germ,
                    curves,
                    names: [self.vars[keep[0]].clone(), self.vars[keep[1]].clone()],
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_an_affine_document() {
        let doc = InputDoc::from_json(
            r#"{"vars": ["x", "y"], "foliation": {"kind": "affine", "form": {"dx": "-y", "dy": "x"}},
                "curves": {"f": "x^4 + y^4"}}"#,
        )
        .unwrap();
        let l = doc.load().unwrap();
        assert_eq!(l.curves.len(), 1);
        assert!(l.germ().unwrap().germ.is_singular());
    }

    #[test]
    fn rejects_unknown_differentials() {
        let doc = InputDoc::from_json(
            r#"{"vars": ["x", "y"], "foliation": {"kind": "affine", "form": {"dz": "1"}}}"#,
        )
        .unwrap();
        assert!(matches!(doc.load(), Err(CliError::Input(_))));
    }

    #[test]
    fn reports_parse_positions() {
        let doc = InputDoc::from_json(
            r#"{"vars": ["x", "y"], "foliation": {"kind": "affine", "form": {"dx": "x + "}}}"#,
        )
        .unwrap();
        match doc.load() {
            Err(CliError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
    }
}
