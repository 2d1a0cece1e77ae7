use std::process::ExitCode;

use algrest_core::classifier::{classify, Family};
use algrest_core::forms::DiffForm;
use algrest_core::invariants::{default_cap, invariant_report, RelativeSpec, ReportOptions};
use algrest_core::linalg::Scalar;
use algrest_core::output::{diff_report, table_records, Format, Records};
use algrest_core::parse::parse_scalar;
use algrest_core::restriction::{restriction_basis, Flavor, GradedBasis, RestrictionClass};
use algrest_core::scenario::{load, parse_form_arg, FormSpec, Scenario};
use algrest_core::tables::{reproduce_many, TABLE_IDS};
use algrest_core::tangent::{action_table, tangent_generators};
use algrest_core::Polynomial;

use crate::{Command, Common, FlavorArg, FormArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] algrest_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `ALGREST_CAP_MULT`, a positive integer scaling every cap.
fn cap_mult() -> Result<i64> {
    match std::env::var("ALGREST_CAP_MULT") {
        Ok(s) => match s.trim().parse::<i64>() {
            Ok(m) if m >= 1 => Ok(m),
            _ => Err(usage(format!("ALGREST_CAP_MULT must be a positive integer, got `{s}`"))),
        },
        Err(_) => Ok(1),
    }
}

struct Context {
    scenario: Scenario,
    format: Format,
    degree_cap: Option<i64>,
    lt_cap: Option<i64>,
    component: Option<String>,
}

impl Context {
    fn new(c: &Common) -> Result<Context> {
        let mult = cap_mult()?;
        let scenario = load(&c.scenario)?;
        if let Some(name) = &c.component {
            if scenario.germ.component(name).is_err() {
                return Err(usage(format!("unknown component `{name}`")));
            }
        }
        Ok(Context {
            scenario,
            format: c.format.into(),
            degree_cap: c.degree_cap.map(|d| d * mult),
            lt_cap: match (c.lt_cap, mult) {
                (Some(l), m) => Some(l * m),
                (None, 1) => None,
                (None, m) => Some(-m),
            },
            component: c.component.clone(),
        })
    }

    /// The basis of the germ or of the selected component.
    fn basis(&self, flavor: Flavor) -> Result<GradedBasis> {
        Ok(match &self.component {
            Some(name) => restriction_basis(&self.scenario.germ.sub_germ(name)?, flavor, self.degree_cap)?,
            None => self.scenario.basis(flavor, self.degree_cap)?,
        })
    }

    /// The tangency cap; a negative stored value is a multiplier of the default.
    fn lt_cap(&self, basis: &GradedBasis) -> Option<i64> {
        match self.lt_cap {
            Some(m) if m < 0 => Some(-m * default_cap(basis)),
            other => other,
        }
    }

    /// The form selected by `--omega` or `--coords`, over the essential variables.
    fn form(&self, args: &FormArgs) -> Result<DiffForm> {
        let sc = &self.scenario;
        let coords_form = |c: Vec<Scalar>| -> Result<DiffForm> {
            let whole = sc.basis(Flavor::Closed, self.degree_cap)?;
            Ok(whole.form_of(&whole.class_from_coords(c)?))
        };
        if let Some(s) = &args.coords {
            let mut c = Vec::new();
            for part in s.split(',') {
                c.push(parse_scalar(part.trim()).map_err(|e| usage(format!("bad --coords: {e}")))?);
            }
            return coords_form(c);
        }
        let Some(src) = &args.omega else {
            return Err(usage("one of --omega or --coords is required"));
        };
        let spec = if sc.forms.iter().any(|(n, _)| n == src) {
            sc.form(src)?.clone()
        } else {
            parse_form_arg(&sc.declared.vars, src).map_err(|e| usage(format!("bad --omega: {e}")))?
        };
        match spec {
            FormSpec::Coords(c) => coords_form(c),
            other => Ok(sc.essential(&other.form(&sc.declared.vars).expect("not coordinates"))?),
        }
    }
}

fn flavor(f: FlavorArg) -> Flavor {
    match f {
        FlavorArg::Closed => Flavor::Closed,
        FlavorArg::All => Flavor::All,
    }
}

fn emit(rec: &Records, format: Format) {
    print!("{}", rec.render(format));
}

pub fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Basis { common, flavor: fl } => {
            let ctx = Context::new(&common)?;
            let b = ctx.basis(flavor(fl))?;
            if ctx.format == Format::Text {
                println!(
                    "dim = {} ({}, stabilized at quasi-degree {}{})",
                    b.dim(),
                    b.flavor,
                    b.stabilization_degree(),
                    if b.is_capped() { ", capped" } else { "" }
                );
            }
            let mut rec = Records::new(&["index", "name", "degree", "representative"]);
            for (i, name) in b.names().iter().enumerate() {
                rec.push(&[(i + 1).to_string(), name.clone(), b.rep_degree(i).to_string(), b.rep(i).to_string()]);
            }
            emit(&rec, ctx.format);
        }
        Command::Restrict { common, form, flavor: fl } => {
            let ctx = Context::new(&common)?;
            let b = ctx.basis(flavor(fl))?;
            let a = b.restrict(&ctx.form(&form)?)?;
            if ctx.format == Format::Text {
                println!("class = {}", b.format_class(&a));
            }
            let mut rec = Records::new(&["name", "coefficient"]);
            for (name, c) in b.names().iter().zip(&a.coords) {
                rec.push(&[name.clone(), c.to_string()]);
            }
            emit(&rec, ctx.format);
        }
        Command::Classify { common, form, family } => {
            let ctx = Context::new(&common)?;
            let fam = family
                .or_else(|| ctx.scenario.family.clone())
                .ok_or_else(|| usage("no family: pass --family or set `family` in the scenario"))?;
            let fam = Family::parse(&fam).ok_or_else(|| usage(format!("unknown family `{fam}`")))?;
            let b = ctx.basis(Flavor::Closed)?;
            let a: RestrictionClass = b.restrict(&ctx.form(&form)?)?;
            let label = classify(fam, &b, &a)?;
            let moduli: Vec<String> = label.moduli.iter().map(|m| m.to_string()).collect();
            let mut rec = Records::new(&["field", "value"]);
            rec.push(&["family", &fam.to_string()]);
            rec.push(&["class", &label.class]);
            rec.push(&["subcase", label.subcase.as_deref().unwrap_or("")]);
            rec.push(&["moduli", &moduli.join(";")]);
            let amb = label.min_ambient.map(|n| n.to_string()).unwrap_or_default();
            rec.push(&["min_ambient", &amb]);
            emit(&rec, ctx.format);
        }
        Command::Invariants {
            common,
            form,
            relative,
            mu,
            geometric,
        } => {
            let ctx = Context::new(&common)?;
            let b = ctx.basis(Flavor::Closed)?;
            let omega = ctx.form(&form)?;
            let mut rel = Vec::new();
            for r in &relative {
                rel.push(RelativeSpec::parse(r).map_err(|e| usage(e.to_string()))?);
            }
            let opts = ReportOptions {
                cap: ctx.lt_cap(&b),
                relative: rel,
                multiplicity: mu,
                geometric,
            };
            let r = invariant_report(&b, &omega, &opts)?;
            let mut rec = Records::new(&["invariant", "value"]);
            rec.push(&["Lt".to_string(), r.lt.to_string()]);
            rec.push(&["ind".to_string(), r.ind.to_string()]);
            for c in &r.components {
                rec.push(&[format!("Lt({})", c.name), c.lt.to_string()]);
                rec.push(&[format!("ind({})", c.name), c.ind.to_string()]);
            }
            if let (Some((n, f)), Some((ni, fi))) = (r.lt_near_far(), r.ind_near_far()) {
                if r.components.len() == 2 {
                    rec.push(&["L_n".to_string(), n.to_string()]);
                    rec.push(&["L_f".to_string(), f.to_string()]);
                    rec.push(&["ind_n".to_string(), ni.to_string()]);
                    rec.push(&["ind_f".to_string(), fi.to_string()]);
                }
            }
            for (label, v) in &r.relative {
                rec.push(&[format!("Lt[{label}]"), v.to_string()]);
            }
            if let Some(m) = r.mu {
                rec.push(&["mu".to_string(), m.to_string()]);
            }
            if let Some(g) = &r.geometric {
                for ((i, j), v) in [(1, 2), (1, 3), (2, 3)].iter().zip(&g.pairs) {
                    rec.push(&[format!("omega(v{i},v{j})"), v.to_string()]);
                }
                for (name, v) in [("I", g.cond_i), ("II", g.cond_ii), ("III", g.cond_iii), ("IV", g.cond_iv)] {
                    rec.push(&[format!("condition_{name}"), v.to_string()]);
                }
                for (name, z) in &g.lagrangian_components {
                    rec.push(&[format!("lagrangian({name})"), z.to_string()]);
                }
                rec.push(&["lagrangian".to_string(), g.lagrangian_whole.to_string()]);
            }
            emit(&rec, ctx.format);
        }
        Command::ActionTable { common, degree_bound } => {
            let ctx = Context::new(&common)?;
            let b = ctx.basis(Flavor::Closed)?;
            let bound = degree_bound.unwrap_or_else(|| b.stabilization_degree().min(4));
            let gens = tangent_generators(&b.germ, bound)?;
            let v = &b.germ.vars;
            let mut labels = vec!["E".to_string()];
            for (m, _) in &gens.monomial_multiples {
                let p = Polynomial::term(v, m.clone(), Scalar::from_integer(1.into()));
                labels.push(format!("{p}*E"));
            }
            for (idx, _) in &gens.hamiltonian {
                let parts: Vec<String> = idx.iter().map(|i| format!("f{}", i + 1)).collect();
                labels.push(format!("X[{}]", parts.join(" ")));
            }
            let table = action_table(&b, &gens.all())?;
            let mut cols = vec!["field".to_string()];
            cols.extend(b.names());
            let mut rec = Records::new(&cols);
            for (label, row) in labels.iter().zip(&table) {
                let mut cells = vec![label.clone()];
                cells.extend(row.iter().map(|a| b.format_class(a)));
                rec.push(&cells);
            }
            emit(&rec, ctx.format);
        }
        Command::Reproduce { table, format } => {
            let ids: Vec<&str> = match table.as_str() {
                "*" | "all" => TABLE_IDS.to_vec(),
                id if TABLE_IDS.contains(&id) => vec![id],
                id => {
                    return Err(usage(format!(
                        "unknown table `{id}`, expected one of {}",
                        TABLE_IDS.join(", ")
                    )))
                }
            };
            let format: Format = format.into();
            let mut ok = true;
            for res in reproduce_many(&ids) {
                let t = res?;
                ok &= t.passed();
                if format == Format::Text {
                    println!("# {}", t.id);
                    emit(&table_records(&t), format);
                    print!("{}", diff_report(&t));
                    println!();
                } else {
                    emit(&table_records(&t), format);
                    eprint!("{}", diff_report(&t));
                }
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
