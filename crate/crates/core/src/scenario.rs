//! Scenario files: a curve germ, optional basis representatives and named forms.
//!
//! ```text
//! family = T7
//! [curve]
//! vars = x1, x2, x3
//! weights = 3, 2, 2
//! ideal = x1^2 + x2^3 + x3^3; x2*x3
//! branch B1 = (t^3, 0, -t^2)
//! component B1 = B1 : x2; x1^2 + x3^3
//! [basis]
//! theta1 = dx2^dx3
//! [forms]
//! w0 = symplectic: x1, x3 | x2, x1
//! w1 = coords: 1, 0, 0
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{exterior_derivative, wedge, DiffForm};
use crate::germ::{reduce_ambient, validate, Branch, Component, MultiGerm};
use crate::linalg::Scalar;
use crate::parse::{parse_form_with, parse_polynomial_with, parse_scalar, parse_unipoly_at, Params};
use crate::poly::{Polynomial, VarSet};
use crate::restriction::{restriction_basis_with, BasisOverride, Flavor, GradedBasis, RestrictionClass};

/// How a named form was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    Expr(DiffForm),
    /// `Σ dP_i ∧ dQ_i`.
    Symplectic(Vec<(Polynomial, Polynomial)>),
    /// Coordinates over the closed basis.
    Coords(Vec<Scalar>),
}

impl FormSpec {
    /// The form itself, when not given by coordinates.
    pub fn form(&self, vars: &Arc<VarSet>) -> Option<DiffForm> {
        match self {
            FormSpec::Expr(f) => Some(f.clone()),
            FormSpec::Symplectic(pairs) => Some(symplectic_form(vars, pairs)),
            FormSpec::Coords(_) => None,
        }
    }
}

/// `Σ dP_i ∧ dQ_i` for polynomial pairs.
pub fn symplectic_form(vars: &Arc<VarSet>, pairs: &[(Polynomial, Polynomial)]) -> DiffForm {
    let mut out = DiffForm::zero(vars, 2);
    for (p, q) in pairs {
        let dp = exterior_derivative(&DiffForm::function(p.clone()));
        let dq = exterior_derivative(&DiffForm::function(q.clone()));
        out = &out + &wedge(&dp, &dq).expect("2-form");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub family: Option<String>,
    pub ambient: Option<usize>,
    /// The germ as declared, before dropping coordinates.
    pub declared: MultiGerm,
    pub drop: Vec<String>,
    /// The germ in essential variables.
    pub germ: MultiGerm,
    pub basis: Option<BasisOverride>,
    pub basis_all: Option<BasisOverride>,
    pub params: Vec<(String, Scalar)>,
    pub forms: Vec<(String, FormSpec)>,
}

impl Scenario {
    pub fn form(&self, name: &str) -> Result<&FormSpec> {
        self.forms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::Other(format!("no form named `{name}`")))
    }

    pub fn basis_override(&self, flavor: Flavor) -> Option<&BasisOverride> {
        match flavor {
            Flavor::All => self.basis_all.as_ref(),
            Flavor::Closed => self.basis.as_ref(),
        }
    }

    /// The graded basis of the essential germ, honoring any override in the file.
    pub fn basis(&self, flavor: Flavor, degree_cap: Option<i64>) -> Result<GradedBasis> {
        restriction_basis_with(&self.germ, flavor, degree_cap, self.basis_override(flavor))
    }

    /// A named form over the essential variables; `None` when it is given by coordinates.
    pub fn named_form(&self, name: &str) -> Result<Option<DiffForm>> {
        match self.form(name)?.form(&self.declared.vars) {
            Some(f) => self.essential(&f).map(Some),
            None => Ok(None),
        }
    }

    /// The restriction class of a named form in `basis`.
    pub fn class_of(&self, basis: &GradedBasis, name: &str) -> Result<RestrictionClass> {
        match self.form(name)? {
            FormSpec::Coords(c) => basis.class_from_coords(c.clone()),
            spec => {
                let f = spec.form(&self.declared.vars).expect("not coordinates");
                basis.restrict(&self.essential(&f)?)
            }
        }
    }

    /// Re-expresses a form over the essential variables.
    pub fn essential(&self, f: &DiffForm) -> Result<DiffForm> {
        if Arc::ptr_eq(f.vars(), &self.germ.vars) || f.vars() == &self.germ.vars {
            return Ok(f.clone());
        }
        project_form(f, &self.germ.vars)
    }
}

/// Drops every term mentioning a variable or differential absent from `target`.
fn project_form(f: &DiffForm, target: &Arc<VarSet>) -> Result<DiffForm> {
    let src = f.vars();
    let map: Vec<Option<usize>> = src.names().iter().map(|n| target.index_of(n)).collect();
    let mut out = DiffForm::zero(target, f.degree());
    for (idx, p) in f.terms() {
        let Some(new_idx): Option<Vec<usize>> = idx.iter().map(|&i| map[i]).collect() else {
            continue;
        };
        let mut q = Polynomial::zero(target);
        for (m, c) in p.terms() {
            let mut e = vec![0; target.len()];
            let mut keep = true;
            for (i, &x) in m.exponents().iter().enumerate() {
                match map[i] {
                    Some(j) => e[j] = x,
                    None if x > 0 => keep = false,
                    None => {}
                }
            }
            if keep {
                q.add_term(crate::poly::Monomial(e), c.clone());
            }
        }
        out = &out + &DiffForm::term(q, &new_idx)?;
    }
    Ok(out)
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits `key = value`, returning the value's column offset.
fn split_kv(line: &str) -> Option<(&str, &str, usize)> {
    let eq = line.find('=')?;
    let value = &line[eq + 1..];
    let lead = value.len() - value.trim_start().len();
    Some((line[..eq].trim(), value.trim(), eq + 1 + lead))
}

fn split_list(s: &str, sep: char) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in s.split(sep) {
        let lead = part.len() - part.trim_start().len();
        out.push((part.trim(), start + lead));
        start += part.len() + 1;
    }
    out
}

#[derive(Default)]
struct Raw {
    family: Option<String>,
    ambient: Option<usize>,
    vars: Option<Vec<String>>,
    weights: Option<Vec<u32>>,
    ideal: Vec<(String, usize, usize)>,
    branches: Vec<(String, String, usize, usize)>,
    components: Vec<(String, String, usize, usize)>,
    drop: Vec<String>,
    params: Vec<(String, Scalar)>,
    basis: Vec<(String, String, usize, usize)>,
    basis_all: Vec<(String, String, usize, usize)>,
    forms: Vec<(String, String, usize, usize)>,
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut raw = Raw::default();
    let mut section = String::new();
    let mut any = false;
    for (ln, full) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = full.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        any = true;
        let t = line.trim();
        if t.starts_with('[') {
            if !t.ends_with(']') {
                return Err(perr(ln, 1, "unterminated section header"));
            }
            section = t[1..t.len() - 1].trim().to_string();
            if !["curve", "forms", "basis", "basis.all", "params"].contains(&section.as_str()) {
                return Err(perr(ln, 2, format!("unknown section `{section}`")));
            }
            continue;
        }
        let Some((key, value, vcol)) = split_kv(line) else {
            return Err(perr(ln, 1, "expected `key = value`"));
        };
        let vcol = vcol + 1;
        let entry = (key.to_string(), value.to_string(), ln, vcol);
        match (section.as_str(), key) {
            ("" | "curve", "family") => raw.family = Some(value.to_string()),
            ("" | "curve", "ambient") => {
                raw.ambient = Some(value.parse().map_err(|_| perr(ln, vcol, "expected an integer"))?)
            }
            ("curve", "vars") => {
                raw.vars = Some(split_list(value, ',').into_iter().map(|(s, _)| s.to_string()).collect())
            }
            ("curve", "weights") => {
                let mut ws = Vec::new();
                for (w, off) in split_list(value, ',') {
                    ws.push(w.parse().map_err(|_| perr(ln, vcol + off, "expected a positive integer"))?);
                }
                raw.weights = Some(ws);
            }
            ("curve", "ideal") => {
                for (g, off) in split_list(value, ';') {
                    if !g.is_empty() {
                        raw.ideal.push((g.to_string(), ln, vcol + off - 1));
                    }
                }
            }
            ("curve", "drop") => {
                raw.drop = split_list(value, ',').into_iter().map(|(s, _)| s.to_string()).collect()
            }
            ("curve", k) if k.starts_with("branch ") => {
                raw.branches.push((k[7..].trim().to_string(), value.to_string(), ln, vcol))
            }
            ("curve", k) if k.starts_with("component ") => {
                raw.components.push((k[10..].trim().to_string(), value.to_string(), ln, vcol))
            }
            ("params", k) => {
                let v = parse_scalar(value).map_err(|_| perr(ln, vcol, "expected a rational"))?;
                raw.params.push((k.to_string(), v));
            }
            ("basis", _) => raw.basis.push(entry),
            ("basis.all", _) => raw.basis_all.push(entry),
            ("forms", _) => raw.forms.push(entry),
            _ => return Err(perr(ln, 1, format!("unexpected key `{key}`"))),
        }
    }
    if !any {
        return Err(perr(1, 1, "empty scenario"));
    }
    build(raw)
}

fn build(raw: Raw) -> Result<Scenario> {
    let names = raw.vars.ok_or_else(|| perr(1, 1, "missing `vars`"))?;
    let weights = raw.weights.unwrap_or_else(|| vec![1; names.len()]);
    let vars = VarSet::new(names, weights)?;
    let params: Params = raw.params.iter().cloned().collect();
    let p = Some(&params);
    let mut gens = Vec::new();
    for (g, ln, col) in &raw.ideal {
        gens.push(parse_polynomial_with(&vars, g, p, *ln, *col)?);
    }
    let mut branches = Vec::new();
    for (name, v, ln, col) in &raw.branches {
        let inner = v
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| perr(*ln, *col, "branch must be `(c1, ..., cn)`"))?;
        let mut coords = Vec::new();
        for (c, off) in split_list(inner, ',') {
            coords.push(parse_unipoly_at(c, *ln, col + off)?);
        }
        branches.push(Branch::new(name.clone(), coords)?);
    }
    let mut components = Vec::new();
    for (name, v, ln, col) in &raw.components {
        let (members, ideal) = match v.split_once(':') {
            Some((m, i)) => (m, Some((i, m.len() + 1))),
            None => (v.as_str(), None),
        };
        let mut idx = Vec::new();
        for (b, _) in split_list(members, ',') {
            let i = branches
                .iter()
                .position(|x: &Branch| x.name == b)
                .ok_or_else(|| perr(*ln, *col, format!("unknown branch `{b}`")))?;
            idx.push(i);
        }
        let ideal = match ideal {
            Some((src, off)) => {
                let mut gs = Vec::new();
                for (g, o) in split_list(src, ';') {
                    if !g.is_empty() {
                        gs.push(parse_polynomial_with(&vars, g, p, *ln, col + off + o - 1)?);
                    }
                }
                Some(gs)
            }
            None => None,
        };
        components.push(Component {
            name: name.clone(),
            branches: idx,
            ideal,
        });
    }
    let declared = MultiGerm::new(vars.clone(), branches, gens, components);
    let drop_idx: Vec<usize> = raw
        .drop
        .iter()
        .map(|n| {
            vars.index_of(n)
                .ok_or_else(|| Error::InvalidGerm(format!("cannot drop unknown variable `{n}`")))
        })
        .collect::<Result<_>>()?;
    let (germ, _) = reduce_ambient(&declared, &drop_idx)?;
    validate(&germ)?;
    let ev = germ.vars.clone();
    let parse_basis = |entries: &[(String, String, usize, usize)]| -> Result<Option<BasisOverride>> {
        if entries.is_empty() {
            return Ok(None);
        }
        let mut out = Vec::new();
        for (n, v, ln, col) in entries {
            out.push((n.clone(), parse_form_with(&ev, v, p, *ln, col - 1)?));
        }
        Ok(Some(out))
    };
    let basis = parse_basis(&raw.basis)?;
    let basis_all = parse_basis(&raw.basis_all)?;
    let mut forms = Vec::new();
    for (n, v, ln, col) in &raw.forms {
        forms.push((n.clone(), parse_form_spec(&vars, v, p, *ln, *col)?));
    }
    Ok(Scenario {
        family: raw.family,
        ambient: raw.ambient,
        declared,
        drop: raw.drop,
        germ,
        basis,
        basis_all,
        params: raw.params,
        forms,
    })
}

/// Parses the right-hand side of a form line.
pub fn parse_form_spec(
    vars: &Arc<VarSet>,
    v: &str,
    params: Option<&Params>,
    ln: usize,
    col: usize,
) -> Result<FormSpec> {
    if let Some(rest) = v.strip_prefix("coords:") {
        let mut cs = Vec::new();
        for (c, off) in split_list(rest, ',') {
            let at = col + 7 + off;
            let p = parse_polynomial_with(vars, c, params, ln, at - 1)?;
            if p.num_terms() > 1 || (!p.is_zero() && p.constant_term().is_zero()) {
                return Err(perr(ln, at, "expected a constant"));
            }
            cs.push(p.constant_term());
        }
        Ok(FormSpec::Coords(cs))
    } else if let Some(rest) = v.strip_prefix("symplectic:") {
        let base = col + 11;
        let mut pairs = Vec::new();
        for (pair, off) in split_list(rest, '|') {
            let parts = split_list(pair, ',');
            if parts.len() != 2 {
                return Err(perr(ln, base + off, "expected `P, Q`"));
            }
            let pp = parse_polynomial_with(vars, parts[0].0, params, ln, base + off + parts[0].1 - 1)?;
            let qq = parse_polynomial_with(vars, parts[1].0, params, ln, base + off + parts[1].1 - 1)?;
            pairs.push((pp, qq));
        }
        Ok(FormSpec::Symplectic(pairs))
    } else {
        let f = parse_form_with(vars, v, params, ln, col - 1)?;
        if f.degree() != 2 && !f.is_zero() {
            return Err(perr(ln, col, "expected a 2-form"));
        }
        if f.is_zero() {
            return Ok(FormSpec::Expr(DiffForm::zero(vars, 2)));
        }
        Ok(FormSpec::Expr(f))
    }
}

/// Parses a form given on the command line: `coords: ...`, `symplectic: ...` or an expression.
pub fn parse_form_arg(vars: &Arc<VarSet>, s: &str) -> Result<FormSpec> {
    parse_form_spec(vars, s.trim(), None, 1, 1)
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSpec::Expr(e) => write!(f, "{e}"),
            FormSpec::Coords(cs) => write!(f, "coords: {}", join(cs, ", ")),
            FormSpec::Symplectic(pairs) => {
                let ps: Vec<String> = pairs.iter().map(|(p, q)| format!("{p}, {q}")).collect();
                write!(f, "symplectic: {}", ps.join(" | "))
            }
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.declared;
        if let Some(fam) = &self.family {
            writeln!(f, "family = {fam}")?;
        }
        if let Some(a) = self.ambient {
            writeln!(f, "ambient = {a}")?;
        }
        if !self.params.is_empty() {
            writeln!(f, "[params]")?;
            for (n, v) in &self.params {
                writeln!(f, "{n} = {v}")?;
            }
        }
        writeln!(f, "[curve]")?;
        writeln!(f, "vars = {}", g.vars.names().join(", "))?;
        writeln!(f, "weights = {}", join(g.vars.weights(), ", "))?;
        writeln!(f, "ideal = {}", join(g.generators(), "; "))?;
        for b in &g.branches {
            writeln!(f, "branch {} = ({})", b.name, join(&b.coords, ", "))?;
        }
        for c in &g.components {
            let members: Vec<&str> = c.branches.iter().map(|&i| g.branches[i].name.as_str()).collect();
            write!(f, "component {} = {}", c.name, members.join(", "))?;
            match &c.ideal {
                Some(gs) => writeln!(f, " : {}", join(gs, "; "))?,
                None => writeln!(f)?,
            }
        }
        if !self.drop.is_empty() {
            writeln!(f, "drop = {}", self.drop.join(", "))?;
        }
        for (header, b) in [("basis", &self.basis), ("basis.all", &self.basis_all)] {
            if let Some(b) = b {
                writeln!(f, "[{header}]")?;
                for (n, form) in b {
                    writeln!(f, "{n} = {form}")?;
                }
            }
        }
        if !self.forms.is_empty() {
            writeln!(f, "[forms]")?;
            for (n, spec) in &self.forms {
                writeln!(f, "{n} = {spec}")?;
            }
        }
        Ok(())
    }
}

/// Scenario files shipped with the library, by name.
pub const SHIPPED: &[(&str, &str)] = &[
    ("t7", include_str!("../scenarios/t7.scn")),
    ("t7-ambient", include_str!("../scenarios/t7-ambient.scn")),
    ("t8", include_str!("../scenarios/t8.scn")),
    ("a2", include_str!("../scenarios/a2.scn")),
    ("a3", include_str!("../scenarios/a3.scn")),
    ("a4", include_str!("../scenarios/a4.scn")),
    ("a5", include_str!("../scenarios/a5.scn")),
    ("d4", include_str!("../scenarios/d4.scn")),
    ("d5", include_str!("../scenarios/d5.scn")),
    ("d6", include_str!("../scenarios/d6.scn")),
    ("e6", include_str!("../scenarios/e6.scn")),
    ("semigroup-3-7-11", include_str!("../scenarios/semigroup-3-7-11.scn")),
];

pub fn shipped_text(name: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Loads a shipped scenario by name.
pub fn shipped(name: &str) -> Result<Scenario> {
    let text = shipped_text(name).ok_or_else(|| Error::Other(format!("no shipped scenario `{name}`")))?;
    parse_scenario(text)
}

/// Loads a shipped scenario by name, or else reads a file from disk.
pub fn load(name_or_path: &str) -> Result<Scenario> {
    if let Some(t) = shipped_text(name_or_path) {
        return parse_scenario(t);
    }
    let text = std::fs::read_to_string(name_or_path)
        .map_err(|e| Error::Other(format!("cannot read {name_or_path}: {e}")))?;
    parse_scenario(&text)
}

/// Collects `name = value` parameter overrides into a map.
pub fn params_map(entries: &[(String, Scalar)]) -> HashMap<String, Scalar> {
    entries.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::restriction_basis_with;

    #[test]
    fn shipped_scenarios_load_and_round_trip() {
        for (name, _) in SHIPPED {
            let sc = shipped(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            let again = parse_scenario(&sc.to_string()).unwrap_or_else(|e| panic!("{name}: {e}\n{sc}"));
            assert_eq!(sc, again, "{name}");
        }
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(matches!(parse_scenario(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_scenario("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_scenario("[curve]\nvars = x1, x2\nweights = 1, q\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn basis_dimensions() {
        let expected = [
            ("t7", 7, 8),
            ("t7-ambient", 7, 8),
            ("t8", 8, 9),
            ("a2", 2, 2),
            ("a3", 3, 3),
            ("a4", 4, 4),
            ("a5", 5, 5),
            ("d4", 4, 4),
            ("d5", 5, 5),
            ("d6", 6, 6),
            ("e6", 6, 6),
            ("semigroup-3-7-11", 11, 12),
        ];
        for (name, c, a) in expected {
            let sc = shipped(name).unwrap();
            let closed = restriction_basis_with(&sc.germ, Flavor::Closed, None, sc.basis.as_ref()).unwrap();
            let all = restriction_basis_with(&sc.germ, Flavor::All, None, sc.basis_all.as_ref()).unwrap();
            assert_eq!((closed.dim(), all.dim()), (c, a), "{name}");
        }
    }
}
