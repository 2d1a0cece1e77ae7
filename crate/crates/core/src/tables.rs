//! Recomputes the published tables and diffs every cell against embedded goldens.

use std::sync::Arc;

use crate::classifier::{classify_t7, invariant_table, moduli_report, t7_moduli_directions, Family, InvariantRow};
use crate::error::{Error, Result};
use crate::forms::DiffForm;
use crate::invariants::{
    component_invariants, geometric_report, index_of_isotropy_form, lagrangian_tangency_form, relative_lt_form,
    symplectic_multiplicity,
};
use crate::linalg::{int, Scalar};
use crate::parse::parse_polynomial;
use crate::poly::{Order, VarSet};
use crate::restriction::{Flavor, GradedBasis, RestrictionClass};
use crate::scenario::{parse_form_arg, shipped, Scenario};
use crate::tangent::{action_table, euler_field};

pub const TABLE_IDS: &[&str] = &[
    "A_k",
    "D_k",
    "E6",
    "t8-invariants-1",
    "t8-invariants-2",
    "t7-relations",
    "t7-actions",
    "t7-classification",
    "t7-invariants",
    "t7-geometry",
    "semigroup-3-7-11",
];

/// A computed value and, when the source states one, the expected value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub actual: String,
    pub expected: Option<String>,
}

impl Cell {
    fn checked(actual: impl ToString, expected: impl ToString) -> Cell {
        Cell {
            actual: actual.to_string(),
            expected: Some(expected.to_string()),
        }
    }

    fn info(actual: impl ToString) -> Cell {
        Cell {
            actual: actual.to_string(),
            expected: None,
        }
    }

    fn maybe(actual: impl ToString, expected: Option<String>) -> Cell {
        Cell {
            actual: actual.to_string(),
            expected,
        }
    }

    pub fn matches(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| *e == self.actual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub key: Vec<String>,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub id: String,
    pub key_columns: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDiff {
    pub row: String,
    pub column: String,
    pub expected: String,
    pub actual: String,
}

impl Table {
    fn new(id: &str, keys: &[&str], columns: &[&str]) -> Table {
        Table {
            id: id.to_string(),
            key_columns: keys.iter().map(|s| s.to_string()).collect(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, key: &[&str], cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(Row {
            key: key.iter().map(|s| s.to_string()).collect(),
            cells,
        });
    }

    pub fn diffs(&self) -> Vec<CellDiff> {
        let mut out = Vec::new();
        for r in &self.rows {
            for (c, cell) in self.columns.iter().zip(&r.cells) {
                if !cell.matches() {
                    out.push(CellDiff {
                        row: r.key.join(" "),
                        column: c.clone(),
                        expected: cell.expected.clone().unwrap_or_default(),
                        actual: cell.actual.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.cells.iter().all(Cell::matches))
    }

    pub fn checked_cells(&self) -> usize {
        self.rows.iter().flat_map(|r| &r.cells).filter(|c| c.expected.is_some()).count()
    }
}

/// Recomputes one table from scratch.
pub fn reproduce(id: &str) -> Result<Table> {
    match id {
        "A_k" => a_k(),
        "D_k" => d_k(),
        "E6" => e6(),
        "t8-invariants-1" => t8_table(id, T8_ROWS_1),
        "t8-invariants-2" => t8_table(id, T8_ROWS_2),
        "t7-relations" => t7_relations(),
        "t7-actions" => t7_actions(),
        "t7-classification" => t7_classification(),
        "t7-invariants" => t7_invariants(),
        "t7-geometry" => t7_geometry(),
        "semigroup-3-7-11" => semigroup(),
        _ => Err(Error::Other(format!(
            "unknown table `{id}`, expected one of {}",
            TABLE_IDS.join(", ")
        ))),
    }
}

/// Recomputes the given tables, one thread per table, in the order given.
pub fn reproduce_many(ids: &[&str]) -> Vec<Result<Table>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|id| s.spawn(move || reproduce(id))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Other("table computation panicked".into()))))
            .collect()
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A form of a scenario, by name or as an inline expression over the declared variables.
fn resolve(sc: &Scenario, basis: &GradedBasis, src: &str) -> Result<(DiffForm, RestrictionClass)> {
    if sc.forms.iter().any(|(n, _)| n == src) {
        let a = sc.class_of(basis, src)?;
        let f = match sc.named_form(src)? {
            Some(f) => f,
            None => basis.form_of(&a),
        };
        return Ok((f, a));
    }
    let vars: &Arc<VarSet> = &sc.declared.vars;
    let spec = parse_form_arg(vars, src)?;
    let f = match spec.form(vars) {
        Some(f) => sc.essential(&f)?,
        None => {
            let crate::scenario::FormSpec::Coords(c) = spec else { unreachable!() };
            basis.form_of(&basis.class_from_coords(c)?)
        }
    };
    let a = basis.restrict(&f)?;
    Ok((f, a))
}

fn golden_row<'a>(table: &'a [InvariantRow], class: &str, subcase: Option<&str>) -> Result<&'a InvariantRow> {
    table
        .iter()
        .find(|r| r.class == class && (subcase.is_none() || r.subcase.as_deref() == subcase))
        .ok_or_else(|| Error::Other(format!("no golden row {class}")))
}

/// Row key for a form named `<letter><i>[p|m]`.
fn simple_key(prefix: &str, name: &str) -> (String, String) {
    let body = &name[1..];
    let (digits, sign) = match body.strip_suffix('p') {
        Some(d) => (d, "+"),
        None => match body.strip_suffix('m') {
            Some(d) => (d, "-"),
            None => (body, ""),
        },
    };
    (format!("{prefix}^{digits}"), sign.to_string())
}

fn a_k() -> Result<Table> {
    let mut t = Table::new("A_k", &["class"], &["Lt", "ind"]);
    for k in 2..=5u32 {
        let sc = shipped(&format!("a{k}"))?;
        let b = sc.basis(Flavor::Closed, None)?;
        let table = invariant_table(Family::A(k));
        for (name, _) in &sc.forms {
            let (class, _) = simple_key(&format!("A{k}"), name);
            let g = golden_row(&table, &class, None)?;
            let (f, _) = resolve(&sc, &b, name)?;
            let lt = lagrangian_tangency_form(&b, &f, None)?;
            let ind = index_of_isotropy_form(&b, &f, None)?;
            t.push(&[&class], vec![Cell::checked(lt, g.lt), Cell::checked(ind, g.ind)]);
        }
    }
    Ok(t)
}

fn d_k() -> Result<Table> {
    let mut t = Table::new("D_k", &["class", "subcase"], &["Lt", "Lt(C2)", "ind", "ind2"]);
    for k in 4..=6u32 {
        let sc = shipped(&format!("d{k}"))?;
        let b = sc.basis(Flavor::Closed, None)?;
        let table = invariant_table(Family::D(k));
        let mut sources: Vec<(String, String)> = sc.forms.iter().map(|(n, _)| (n.clone(), n.clone())).collect();
        if k == 6 {
            // The b = 0 row of D6^2.
            sources.insert(3, ("d2".into(), "symplectic: x1, 1/3*x2^3".into()));
        }
        for (name, src) in &sources {
            let (class, sign) = simple_key(&format!("D{k}"), name);
            let idx: i64 = class.rsplit('^').next().and_then(|s| s.parse().ok()).unwrap_or(0);
            let subcase = if !sign.is_empty() {
                Some("+/-")
            } else if idx >= 2 && idx < k as i64 - 3 {
                Some(if name == src { "b!=0" } else { "b=0" })
            } else {
                None
            };
            let g = golden_row(&table, &class, subcase)?;
            let (f, _) = resolve(&sc, &b, src)?;
            let lt = lagrangian_tangency_form(&b, &f, None)?;
            let ind = index_of_isotropy_form(&b, &f, None)?;
            let c2 = component_invariants(&b.germ, "C2", &f, None)?;
            let key_sub = match (subcase, sign.as_str()) {
                (_, "+") | (_, "-") => sign.clone(),
                (Some(s), _) => s.to_string(),
                (None, _) => String::new(),
            };
            t.push(
                &[&class, &key_sub],
                vec![
                    Cell::checked(lt, g.lt),
                    Cell::checked(c2.lt, g.lt2.expect("D row")),
                    Cell::checked(ind, g.ind),
                    Cell::checked(c2.ind, g.ind2.expect("D row")),
                ],
            );
        }
    }
    Ok(t)
}

/// `μ` column of the E6 table.
const E6_MU: [usize; 7] = [0, 2, 3, 4, 4, 5, 6];

fn e6() -> Result<Table> {
    let mut t = Table::new("E6", &["class", "subcase"], &["Lt", "ind", "mu"]);
    let sc = shipped("e6")?;
    let b = sc.basis(Flavor::Closed, None)?;
    let table = invariant_table(Family::E6);
    for (name, _) in &sc.forms {
        let (class, sign) = simple_key("E6", name);
        let g = golden_row(&table, &class, None)?;
        let i: usize = class[3..].parse().unwrap_or(0);
        let (f, a) = resolve(&sc, &b, name)?;
        let lt = lagrangian_tangency_form(&b, &f, None)?;
        let ind = index_of_isotropy_form(&b, &f, None)?;
        let mu = symplectic_multiplicity(&b, &a)?;
        t.push(
            &[&class, &sign],
            vec![Cell::checked(lt, g.lt), Cell::checked(ind, g.ind), Cell::checked(mu, E6_MU[i])],
        );
    }
    Ok(t)
}

fn semigroup() -> Result<Table> {
    let mut t = Table::new("semigroup-3-7-11", &["form"], &["Lt", "ind"]);
    let sc = shipped("semigroup-3-7-11")?;
    let b = sc.basis(Flavor::Closed, None)?;
    for (name, lt0, ind0) in [("s1", 10, 1), ("s2", 11, 0), ("s3", 10, 0)] {
        let (f, _) = resolve(&sc, &b, name)?;
        let lt = lagrangian_tangency_form(&b, &f, None)?;
        let ind = index_of_isotropy_form(&b, &f, None)?;
        t.push(&[name], vec![Cell::checked(lt, lt0), Cell::checked(ind, ind0)]);
    }
    Ok(t)
}

struct T8Source {
    class: &'static str,
    subcase: &'static str,
    form: &'static str,
    /// `(Lt, L1, L2, ind, ind1, ind2)`; `-1` stands for ∞.
    expected: [i64; 6],
    /// `Lt[C2:C1]`, where stated.
    relative: Option<i64>,
}

const fn t8(
    class: &'static str,
    subcase: &'static str,
    form: &'static str,
    expected: [i64; 6],
    relative: Option<i64>,
) -> T8Source {
    T8Source {
        class,
        subcase,
        form,
        expected,
        relative,
    }
}

// Representatives use c1 = 2, c2 = 3, c3 = 5, c = 1 unless the subcase sets them to 0.
const T8_ROWS_1: &[T8Source] = &[
    t8("T8^0", "c1*c2!=0", "symplectic: x1, x3 | x2, 2*x3 - 3*x1", [2, 3, 2, 0, 0, 0], Some(1)),
    t8("T8^1_2", "c1=0;c2!=0", "symplectic: x1, x3 | x2, -3*x1 - 5*x1*x2", [2, 3, 2, 0, 0, 0], Some(2)),
    t8("T8^1_2", "c2=0;c3!=0", "symplectic: x1, x3 | x2, 2*x3 - 5*x1*x2", [2, 5, 2, 0, 1, 0], None),
    t8("T8^1_2", "c2=c3=0", "symplectic: x1, x3 | x2, 2*x3", [2, -1, 2, 0, -1, 0], None),
    t8("T8^1_3", "c1*c2!=0", "symplectic: x1, x2 | 2*x2 + 3*x1*x3, x3", [2, 3, 3, 0, 0, 1], Some(1)),
    // Derived: the tie-breaker value for T8^2_3 is computed, the source only says it separates.
    t8("T8^2_3", "c1=0;c2!=0", "symplectic: x1, x2 | 3*x1*x3 + 5*x1*x3^2, x3", [2, 3, 3, 0, 0, 1], Some(2)),
    t8("T8^2_3", "c2=0;c3!=0", "symplectic: x1, x2 | 2*x2 + 5*x1*x3^2, x3", [2, 3, 4, 0, 0, 2], None),
    t8("T8^2_3", "c2=c3=0", "symplectic: x1, x2 | 2*x2, x3", [2, 3, -1, 0, 0, -1], None),
    t8("T8^2_>3", "c1*c2!=0", "symplectic: x2, x3 | x1, x3^2 + 3/2*x2^2", [2, 5, 3, 0, 1, 1], None),
    t8("T8^2_>3", "c1!=0;c2=0", "symplectic: x2, x3 | x1, x3^2", [2, -1, 3, 0, -1, 1], None),
    t8("T8^3.0", "c1*c2!=0", "symplectic: x2, x3 | x1, x2^2 + x3^3", [2, 5, 4, 0, 1, 2], None),
    t8("T8^3.0", "c1!=0;c2=0", "symplectic: x2, x3 | x1, x2^2", [2, 5, -1, 0, 1, -1], None),
    t8("T8^3.0", "c1=0;c2!=0", "symplectic: x2, x3 | x1, x3^3", [2, -1, 4, 0, -1, 2], None),
    t8("T8^5.0", "", "symplectic: x2, x3 | x1, 1/4*x3^4", [2, -1, -1, 0, -1, -1], None),
];

const T8_ROWS_2: &[T8Source] = &[
    t8("T8^3.1", "c2!=0", "symplectic: x1, 1/2*x3^2 + 3/2*x2^2 | x2, -2*x1*x3", [3, 5, 3, 1, 1, 1], None),
    t8("T8^3.1", "c2=0", "symplectic: x1, 1/2*x3^2 | x2, -2*x1*x3", [3, -1, 3, 1, -1, 1], None),
    t8("T8^4", "c1*c2!=0", "symplectic: x1, x2^2 + x3^3 | x2, -x1*x3", [4, 5, 4, 1, 1, 2], None),
    t8("T8^4", "c1=0;c2!=0", "symplectic: x1, x3^3 | x2, -x1*x3", [4, -1, 4, 1, -1, 2], Some(3)),
    t8("T8^4", "c1!=0;c2=0", "symplectic: x1, x2^2 | x2, -x1*x3", [5, 5, -1, 1, 1, -1], None),
    t8("T8^6.1", "", "symplectic: x1, 1/4*x3^4 | x2, -x1*x3", [5, -1, -1, 1, -1, -1], None),
    t8("T8^5.1", "c!=0", "symplectic: x1, 1/2*x2^2 + 1/3*x3^3", [4, 5, 4, 1, 1, 2], None),
    t8("T8^5.1", "c=0", "symplectic: x1, 1/2*x2^2", [5, 5, -1, 1, 1, -1], None),
    t8("T8^6.2", "", "symplectic: x1, 1/3*x3^3", [4, -1, 4, 2, -1, 2], Some(4)),
    t8("T8^7", "", "symplectic: x1, 1/4*x3^4", [7, -1, -1, 3, -1, -1], None),
    t8("T8^8", "", "0", [-1, -1, -1, -1, -1, -1], None),
];

fn order_of(v: i64) -> Order {
    if v < 0 {
        Order::Infinity
    } else {
        Order::Finite(v)
    }
}

fn t8_table(id: &str, rows: &[T8Source]) -> Result<Table> {
    let mut t = Table::new(id, &["class", "subcase"], &["Lt", "L1", "L2", "ind", "ind1", "ind2", "Lt[C2:C1]"]);
    let sc = shipped("t8")?;
    let b = sc.basis(Flavor::Closed, None)?;
    let g = &b.germ;
    let all: Vec<usize> = (0..g.branches.len()).collect();
    for r in rows {
        let (f, _) = resolve(&sc, &b, r.form)?;
        let lt = lagrangian_tangency_form(&b, &f, None)?;
        let ind = index_of_isotropy_form(&b, &f, None)?;
        let c1 = component_invariants(g, "C1", &f, None)?;
        let c2 = component_invariants(g, "C2", &f, None)?;
        let fixed: Vec<(usize, Order)> = g.component("C1")?.branches.iter().map(|&i| (i, c1.lt)).collect();
        let rel = relative_lt_form(&b, &f, &all, &fixed, None)?;
        let got = [lt, c1.lt, c2.lt, ind, c1.ind, c2.ind];
        let mut cells: Vec<Cell> = got.iter().zip(r.expected).map(|(a, e)| Cell::checked(a, order_of(e))).collect();
        cells.push(Cell::maybe(rel, r.relative.map(|v| v.to_string())));
        t.push(&[r.class, r.subcase], cells);
    }
    Ok(t)
}

fn t7_relations() -> Result<Table> {
    let mut t = Table::new("t7-relations", &["relation"], &["lhs", "rhs", "equal"]);
    let sc = shipped("t7")?;
    let b = sc.basis(Flavor::All, None)?;
    let rows = [
        ("x2*dx2^dx3", "0"),
        ("x3*dx2^dx3", "0"),
        ("x3*dx1^dx2", "x2*dx3^dx1"),
        ("x1*dx1^dx2", "0"),
        ("x1*dx1^dx3", "0"),
        ("x2^2*dx1^dx2", "x3^2*dx3^dx1"),
        ("x1^2*dx2^dx3", "0"),
        ("x3^2*dx1^dx2", "0"),
    ];
    for (i, (lhs, rhs)) in rows.iter().enumerate() {
        let (_, a) = resolve(&sc, &b, lhs)?;
        let (_, c) = resolve(&sc, &b, rhs)?;
        t.push(
            &[&(i + 1).to_string()],
            vec![Cell::info(lhs), Cell::info(rhs), Cell::checked(yes_no(a == c), "yes")],
        );
    }
    Ok(t)
}

/// Lie derivatives of θ1…θ7 along `E, x3E, x2E, x1E, x2²E, x3²E`: `(row, col, coefficient, θ-index)`.
const T7_ACTIONS: &[(usize, usize, i64, usize)] = &[
    (0, 0, 4, 0),
    (0, 1, 5, 1),
    (0, 2, 5, 2),
    (0, 3, 7, 3),
    (0, 4, 7, 4),
    (0, 5, 7, 5),
    (0, 6, 9, 6),
    (1, 1, 7, 3),
    (1, 2, 3, 5),
    (1, 3, 9, 6),
    (2, 1, -3, 5),
    (2, 2, 7, 4),
    (2, 4, -9, 6),
    (3, 0, -4, 5),
    (4, 2, -9, 6),
    (5, 1, 9, 6),
];

fn t7_actions() -> Result<Table> {
    let sc = shipped("t7")?;
    let b = sc.basis(Flavor::Closed, None)?;
    let names = b.names();
    let cols: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut t = Table::new("t7-actions", &["field"], &cols);
    let v = &b.germ.vars;
    let e = euler_field(v);
    let multipliers = ["1", "x3", "x2", "x1", "x2^2", "x3^2"];
    let mut gens = Vec::new();
    for m in multipliers {
        gens.push(e.mul_poly(&parse_polynomial(v, m)?));
    }
    let got = action_table(&b, &gens)?;
    let mut expected = vec![vec![RestrictionClass::zero(b.dim()); b.dim()]; gens.len()];
    for &(r, c, k, i) in T7_ACTIONS {
        expected[r][c] = RestrictionClass::basis_vector(b.dim(), i).scale(&int(k));
    }
    for (r, m) in multipliers.iter().enumerate() {
        let label = if *m == "1" { "E".to_string() } else { format!("{m}*E") };
        let cells = (0..b.dim())
            .map(|c| Cell::checked(b.format_class(&got[r][c]), b.format_class(&expected[r][c])))
            .collect();
        t.push(&[&label], cells);
    }
    Ok(t)
}

/// Symplectic multiplicity of `T7^0` … `T7^7`.
pub const T7_MU: [usize; 8] = [2, 3, 4, 5, 5, 6, 6, 7];
/// Index of isotropy of `T7^0` … `T7^7`; `-1` stands for ∞.
pub const T7_IND: [i64; 8] = [0, 0, 0, 1, 0, 1, 2, -1];

fn t7_classification() -> Result<Table> {
    let mut t = Table::new("t7-classification", &["class"], &["cod", "mu", "ind"]);
    let sc = shipped("t7")?;
    let b = sc.basis(Flavor::Closed, None)?;
    for i in 0..8 {
        let class = format!("T7^{i}");
        let (f, a) = resolve(&sc, &b, &format!("nf{i}"))?;
        let mu = symplectic_multiplicity(&b, &a)?;
        let label = classify_t7(&a.coords)?;
        let moduli = moduli_report(&b, &a, t7_moduli_directions(&label.class))?.len();
        let ind = index_of_isotropy_form(&b, &f, None)?;
        t.push(
            &[&class],
            vec![
                Cell::checked(mu as i64 - moduli as i64, i),
                Cell::checked(mu, T7_MU[i]),
                Cell::checked(ind, order_of(T7_IND[i])),
            ],
        );
    }
    Ok(t)
}

struct T7Source {
    class: &'static str,
    subcase: &'static str,
    coords: [i64; 7],
    /// The subcase reported by the classifier.
    label_subcase: &'static str,
    /// `(ind, ind_n, ind_f, Lt, L_n, L_f)`; `-1` stands for ∞.
    expected: [i64; 6],
}

const fn t7(class: &'static str, subcase: &'static str, coords: [i64; 7], label_subcase: &'static str, expected: [i64; 6]) -> T7Source {
    T7Source {
        class,
        subcase,
        coords,
        label_subcase,
        expected,
    }
}

// Normal forms with c1 = 2, c2 = 3, c = 1 unless the subcase sets them to 0.
const T7_ROWS: &[T7Source] = &[
    t7("T7^0", "c1*c2!=0", [1, 2, 3, 0, 0, 0, 0], "", [0, 0, 0, 2, 3, 3]),
    t7("T7^1", "c1*c2!=0", [2, 1, 0, 0, 3, 0, 0], "c1*c2!=0", [0, 1, 0, 2, 5, 3]),
    t7("T7^1", "c1=0;c2!=0", [0, 1, 0, 0, 3, 0, 0], "c1=0;c2!=0", [0, 1, 0, 3, 5, 3]),
    t7("T7^1", "c1!=0;c2=0", [2, 1, 0, 0, 0, 0, 0], "c1!=0;c2=0", [0, -1, 0, 2, -1, 3]),
    t7("T7^1", "c1=0;c2=0", [0, 1, 0, 0, 0, 0, 0], "c1=0;c2=0", [0, -1, 0, 3, -1, 3]),
    t7("T7^2", "c1*c2!=0", [1, 0, 0, 2, 3, 0, 0], "c1*c2!=0", [0, 1, 1, 2, 5, 5]),
    t7("T7^2", "c1!=0;c2=0", [1, 0, 0, 2, 0, 0, 0], "c1*c2=0", [0, -1, 1, 2, -1, 5]),
    t7("T7^2", "c1=0;c2!=0", [1, 0, 0, 0, 3, 0, 0], "c1*c2=0", [0, -1, 1, 2, -1, 5]),
    t7("T7^3", "c1!=0", [0, 0, 0, 1, 2, 3, 0], "c1!=0", [1, 1, 1, 5, 5, 5]),
    t7("T7^3", "c1=0", [0, 0, 0, 1, 0, 3, 0], "c1=0", [1, -1, 1, 5, -1, 5]),
    t7("T7^4", "", [1, 0, 0, 0, 0, 0, 1], "", [0, -1, -1, 2, -1, -1]),
    t7("T7^5", "", [0, 0, 0, 0, 0, 1, 1], "", [1, -1, -1, 5, -1, -1]),
    t7("T7^6", "", [0, 0, 0, 0, 0, 0, 1], "", [2, -1, -1, 7, -1, -1]),
    t7("T7^7", "", [0; 7], "", [-1; 6]),
];

/// Expected `(ind, ind_n, ind_f, Lt, L_n, L_f)` for a T7 label, keyed by the classifier's subcase.
pub fn t7_expected_invariants(class: &str, subcase: Option<&str>) -> Option<[Order; 6]> {
    let sub = subcase.unwrap_or("");
    T7_ROWS
        .iter()
        .find(|r| r.class == class && r.label_subcase == sub)
        .map(|r| r.expected.map(order_of))
}

fn coords_key(c: &[i64]) -> String {
    c.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn t7_invariants() -> Result<Table> {
    let mut t = Table::new(
        "t7-invariants",
        &["class", "subcase", "coords"],
        &["label", "label_subcase", "ind", "ind_n", "ind_f", "Lt", "L_n", "L_f"],
    );
    let sc = shipped("t7")?;
    let b = sc.basis(Flavor::Closed, None)?;
    let g = &b.germ;
    for r in T7_ROWS {
        let c: Vec<Scalar> = r.coords.iter().map(|&x| int(x)).collect();
        let a = b.class_from_coords(c)?;
        let f = b.form_of(&a);
        let label = classify_t7(&a.coords)?;
        let comps: Vec<_> = g
            .components
            .iter()
            .map(|c| component_invariants(g, &c.name, &f, None))
            .collect::<Result<_>>()?;
        let lts = comps.iter().map(|c| c.lt);
        let inds = comps.iter().map(|c| c.ind);
        let got = [
            index_of_isotropy_form(&b, &f, None)?,
            inds.clone().max().unwrap_or(Order::Infinity),
            inds.min().unwrap_or(Order::Infinity),
            lagrangian_tangency_form(&b, &f, None)?,
            lts.clone().max().unwrap_or(Order::Infinity),
            lts.min().unwrap_or(Order::Infinity),
        ];
        let mut cells = vec![
            Cell::checked(&label.class, r.class),
            Cell::checked(label.subcase.unwrap_or_default(), r.label_subcase),
        ];
        cells.extend(got.iter().zip(r.expected).map(|(a, e)| Cell::checked(a, order_of(e))));
        t.push(&[r.class, r.subcase, &coords_key(&r.coords)], cells);
    }
    Ok(t)
}

struct GeometrySource {
    class: &'static str,
    subcase: &'static str,
    form: String,
    /// `ℓ1+ℓ2` isotropic, number of isotropic `ℓi+ℓ3`, conditions I–IV,
    /// branches in a Lagrangian submanifold, `N` in a Lagrangian submanifold.
    expected: [Option<&'static str>; 8],
}

fn geometry_rows() -> Vec<GeometrySource> {
    const W4: &str = "dx1^dx4 + dx5^dx6";
    const W6: &str = "dx1^dx4 + dx2^dx5 + dx3^dx6";
    let y = Some("yes");
    let n = Some("no");
    let k = |v: &'static str| Some(v);
    let row = |class, subcase, form: String, expected| GeometrySource {
        class,
        subcase,
        form,
        expected,
    };
    let w1 = |c1: i64, c2: i64| format!("{c1}*dx2^dx3 + dx1^dx3 + {c2}*x2*dx1^dx2 + dx2^dx4 + dx5^dx6");
    let w2 = |c1: i64, c2: i64| format!("dx2^dx3 + {c1}*x3*dx1^dx3 + {c2}*x2*dx1^dx2 + {W4}");
    let w3 = |c1: i64, c2: i64| format!("x3*dx1^dx3 + {c1}*x2*dx1^dx2 + {c2}*(x3*dx1^dx2 - x1*dx2^dx3) + {W6}");
    vec![
        row("T7^0", "c1*c2!=0", format!("dx2^dx3 + 2*dx1^dx3 + 3*dx1^dx2 + {W4}"), [n, k("0"), n, None, None, None, None, None]),
        row("T7^1", "c1*c2!=0", w1(2, 3), [n, k("1"), n, None, None, None, k("0"), n]),
        row("T7^1", "c1=0;c2!=0", w1(0, 3), [y, k("1"), n, None, None, None, k("0"), n]),
        row("T7^1", "c1!=0;c2=0", w1(2, 0), [n, k("1"), n, None, None, None, k("1"), n]),
        row("T7^1", "c1=0;c2=0", w1(0, 0), [y, k("1"), n, None, None, None, k("1"), n]),
        row("T7^2", "c1*c2!=0", w2(2, 3), [n, k("2"), n, None, None, None, k("0"), n]),
        row("T7^2", "c1!=0;c2=0", w2(2, 0), [n, k("2"), n, None, None, None, k("1"), n]),
        row("T7^2", "c1=0;c2!=0", w2(0, 3), [n, k("2"), n, None, None, None, k("1"), n]),
        row("T7^4", "", format!("dx2^dx3 + x3^2*dx1^dx3 + {W4}"), [n, k("2"), n, None, None, None, k("2"), n]),
        row("T7^3", "c1!=0", w3(2, 3), [y, k("2"), y, None, n, None, k("0"), n]),
        row("T7^3", "c1=0", w3(0, 3), [y, k("2"), y, None, n, None, k("1"), n]),
        row("T7^5", "", format!("x3*dx1^dx2 - x1*dx2^dx3 + x3^2*dx1^dx3 + {W6}"), [y, k("2"), y, n, y, None, k("2"), n]),
        row("T7^6", "", format!("x3^2*dx1^dx3 + {W6}"), [y, k("2"), y, y, y, y, k("2"), n]),
        row("T7^7", "", W6.to_string(), [y, k("2"), y, y, y, y, k("2"), y]),
    ]
}

fn t7_geometry() -> Result<Table> {
    let mut t = Table::new(
        "t7-geometry",
        &["class", "subcase"],
        &["l1+l2", "li+l3", "I", "II", "III", "IV", "lagrangian_branches", "lagrangian_N"],
    );
    let sc = shipped("t7-ambient")?;
    let b = sc.basis(Flavor::Closed, None)?;
    for r in geometry_rows() {
        let (f, _) = resolve(&sc, &b, &r.form)?;
        let rep = geometric_report(&b.germ, &f)?;
        let li3 = [rep.isotropic(1, 3), rep.isotropic(2, 3)].iter().filter(|&&x| x).count();
        let branches = rep.lagrangian_components.iter().filter(|(_, z)| *z).count();
        let got = [
            yes_no(rep.isotropic(1, 2)).to_string(),
            li3.to_string(),
            yes_no(rep.cond_i).to_string(),
            yes_no(rep.cond_ii).to_string(),
            yes_no(rep.cond_iii).to_string(),
            yes_no(rep.cond_iv).to_string(),
            branches.to_string(),
            yes_no(rep.lagrangian_whole).to_string(),
        ];
        let cells = got
            .into_iter()
            .zip(r.expected)
            .map(|(a, e)| Cell::maybe(a, e.map(str::to_string)))
            .collect();
        t.push(&[r.class, r.subcase], cells);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_table_is_an_error() {
        assert!(reproduce("T9").is_err());
    }

    #[test]
    fn every_table_reproduces() {
        for (id, t) in TABLE_IDS.iter().zip(reproduce_many(TABLE_IDS)) {
            let t = t.unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(t.passed(), "{id}: {:?}", t.diffs());
            assert!(t.checked_cells() > 0, "{id}");
        }
    }
}
