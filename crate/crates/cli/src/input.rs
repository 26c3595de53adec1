//! Parsing of command-line values into library types.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use hessloci::{parse_poly, DForm, Field, LinearSpace, MultiPoly, ProjPoint, Scalar};

use crate::args::{Global, SpaceArg};

pub fn field(text: &str) -> Result<Field> {
    let t = text.trim().to_ascii_lowercase();
    if t == "q" {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("fp:")
        .ok_or_else(|| anyhow!("field must be `q` or `fp:<prime>`, got `{text}`"))?;
    let p: u64 = p.parse().with_context(|| format!("bad prime `{p}`"))?;
    Ok(Field::prime(p)?)
}

/// One more than the largest `x<i>` index in the text.
pub fn infer_nvars(text: &str) -> usize {
    let b = text.as_bytes();
    let mut max = None;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if j > start {
                if let Ok(v) = text[start..j].parse::<usize>() {
                    max = Some(max.map_or(v, |m: usize| m.max(v)));
                }
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    max.map_or(1, |m| m + 1)
}

pub fn form_text(g: &Global) -> Result<String> {
    match (&g.f, &g.f_file) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(path)) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display())),
        (None, None) => bail!("this command needs a form: pass --f or --f-file"),
    }
}

pub fn poly(text: &str, nvars: Option<usize>, field: Field) -> Result<MultiPoly> {
    let nvars = nvars.unwrap_or_else(|| infer_nvars(text));
    Ok(parse_poly(text, nvars, field)?)
}

pub fn form(g: &Global) -> Result<DForm> {
    let text = form_text(g)?;
    let f = DForm::new(poly(&text, g.nvars, field(&g.field)?)?)?;
    if let Some(d) = g.degree {
        if f.degree() != d {
            bail!("--d {d} given but the form has degree {}", f.degree());
        }
    }
    Ok(f)
}

pub fn point(text: &str, field: Field, nvars: usize) -> Result<ProjPoint> {
    let p = ProjPoint::parse(text, field)?;
    if p.len() != nvars {
        bail!("point {text} has {} coordinates, expected {nvars}", p.len());
    }
    Ok(p)
}

fn space_from(span: Option<&str>, cut: Option<&str>, field: Field, nvars: usize, what: &str) -> Result<LinearSpace> {
    match (span, cut) {
        (Some(s), _) => {
            let pts = s
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|t| point(t, field, nvars))
                .collect::<Result<Vec<_>>>()?;
            Ok(LinearSpace::from_points(pts)?)
        }
        (None, Some(c)) => {
            let forms = c
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| Ok(parse_poly(t, nvars, field)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(LinearSpace::from_forms(field, nvars, forms)?)
        }
        (None, None) => bail!("{what}: pass spanning points or cutting forms"),
    }
}

pub fn space(arg: &SpaceArg, field: Field, nvars: usize) -> Result<LinearSpace> {
    space_from(arg.span.as_deref(), arg.cut.as_deref(), field, nvars, "space")
}

pub fn target_space(span: Option<&str>, cut: Option<&str>, field: Field, nvars: usize) -> Result<LinearSpace> {
    space_from(span, cut, field, nvars, "target space")
}

pub fn scalars(text: &str, field: Field) -> Result<Vec<Scalar>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| Ok(field.parse_scalar(t.trim())?))
        .collect()
}

pub fn scalar(text: &str, field: Field) -> Result<Scalar> {
    Ok(field.parse_scalar(text.trim())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nvars_from_text() {
        assert_eq!(infer_nvars("x0^3 + x1^3 + x2^3"), 3);
        assert_eq!(infer_nvars("x10*x0^2"), 11);
        assert_eq!(infer_nvars("7"), 1);
    }

    #[test]
    fn fields() {
        assert_eq!(field("q").unwrap(), Field::Rational);
        assert_eq!(field("fp:7").unwrap(), Field::prime(7).unwrap());
        assert!(field("fp:8").is_err());
        assert!(field("r").is_err());
    }
}
