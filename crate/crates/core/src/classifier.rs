//! Normal-form classification of restriction classes.
//!
//! T7 uses the reduction-lemma decision tree over the θ-basis. T8, A_k, D_k and
//! E6 are classified by matching computed invariants against the tables.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariants::{
    component_invariants, index_of_isotropy_form, lagrangian_tangency_form, relative_lt_form,
};
use crate::linalg::{powi, rational_root, Scalar};
use crate::poly::Order;
use crate::restriction::{GradedBasis, RestrictionClass};
use crate::tangent::orbit_tangent_space;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A(u32),
    D(u32),
    E6,
    T7,
    T8,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        let s = s.trim();
        match s {
            "T7" => return Some(Family::T7),
            "T8" => return Some(Family::T8),
            "E6" => return Some(Family::E6),
            _ => {}
        }
        let k: u32 = s.get(1..)?.parse().ok()?;
        match &s[..1] {
            "A" if k >= 1 => Some(Family::A(k)),
            "D" if k >= 4 => Some(Family::D(k)),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(k) => write!(f, "A{k}"),
            Family::D(k) => write!(f, "D{k}"),
            Family::E6 => write!(f, "E6"),
            Family::T7 => write!(f, "T7"),
            Family::T8 => write!(f, "T8"),
        }
    }
}

/// `coeff · base^exp`, with the real root taken for odd denominators.
/// Kept symbolic when the root is irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub name: String,
    pub coeff: Scalar,
    pub base: Scalar,
    pub exp: Scalar,
}

impl Modulus {
    fn new(name: &str, coeff: Scalar, base: Scalar, exp: Scalar) -> Modulus {
        let mut m = Modulus {
            name: name.to_string(),
            coeff,
            base,
            exp,
        };
        if m.coeff.is_zero() || m.exp.is_zero() || m.base.is_one() {
            m.base = Scalar::one();
            m.exp = Scalar::zero();
        } else if let Some(v) = m.exact_power() {
            m.coeff = &m.coeff * &v;
            m.base = Scalar::one();
            m.exp = Scalar::zero();
        }
        m
    }

    fn exact_power(&self) -> Option<Scalar> {
        let q: u32 = self.exp.denom().try_into().ok()?;
        let p: i64 = self.exp.numer().try_into().ok()?;
        rational_root(&self.base, q).map(|r| powi(&r, p))
    }

    /// The exact value when it is rational.
    pub fn value(&self) -> Option<Scalar> {
        self.exp.is_zero().then(|| self.coeff.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{}={}", self.name, v),
            None => write!(f, "{}={}*({})^({})", self.name, self.coeff, self.base, self.exp),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLabel {
    pub family: Family,
    /// e.g. `T7^3`.
    pub class: String,
    pub subcase: Option<String>,
    pub moduli: Vec<Modulus>,
    /// Smallest ambient dimension `2n` in which the class is realized by a symplectic form.
    pub min_ambient: Option<usize>,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)?;
        if let Some(s) = &self.subcase {
            write!(f, " ({s})")?;
        }
        Ok(())
    }
}

/// Quasi-degrees of θ1…θ7 on T7.
pub const T7_DEGREES: [i64; 7] = [4, 5, 5, 7, 7, 7, 9];

/// Action of the branch swap `x2 ↔ x3` on θ-coordinates.
pub fn t7_swap(c: &[Scalar]) -> Vec<Scalar> {
    vec![
        -c[0].clone(),
        c[2].clone(),
        c[1].clone(),
        c[4].clone(),
        c[3].clone(),
        -c[5].clone(),
        -c[6].clone(),
    ]
}

/// Coefficients after the weighted scaling that turns the θ-coefficient `lead` into ±1.
fn t7_scaled(c: &[Scalar], lead: usize, names: &[(usize, &str)]) -> Vec<Modulus> {
    let l = &c[lead];
    let dl = T7_DEGREES[lead];
    let base = if dl % 2 == 0 { l.abs() } else { l.clone() };
    names
        .iter()
        .map(|&(j, name)| Modulus::new(name, c[j].clone(), base.clone(), Scalar::new((-T7_DEGREES[j]).into(), dl.into())))
        .collect()
}

fn nz(x: &Scalar) -> bool {
    !x.is_zero()
}

/// Classifies θ-coordinates `c1…c7` by the reduction lemmas and returns normalized moduli.
pub fn classify_t7(c: &[Scalar]) -> Result<ClassLabel> {
    if c.len() != 7 {
        return Err(Error::DimensionMismatch(format!("T7 needs 7 coordinates, got {}", c.len())));
    }
    let label = |class: &str, subcase: Option<String>, moduli: Vec<Modulus>| ClassLabel {
        family: Family::T7,
        class: class.to_string(),
        subcase,
        min_ambient: Some(realizable_dimensions_t7(class)),
        moduli,
    };
    let both = |a: &Modulus, b: &Modulus| -> String {
        match (a.is_zero(), b.is_zero()) {
            (false, false) => format!("{}*{}!=0", a.name, b.name),
            (true, false) => format!("{}=0;{}!=0", a.name, b.name),
            (false, true) => format!("{}!=0;{}=0", a.name, b.name),
            (true, true) => format!("{}=0;{}=0", a.name, b.name),
        }
    };
    let (c1, c2, c3, c4, c5, c6, c7) = (&c[0], &c[1], &c[2], &c[3], &c[4], &c[5], &c[6]);
    if nz(c1) && nz(c2) && nz(c3) {
        let c = if c1.is_negative() { t7_swap(c) } else { c.to_vec() };
        return Ok(label("T7^0", None, t7_scaled(&c, 0, &[(1, "c1"), (2, "c2")])));
    }
    if c1.is_zero() && nz(c2) && nz(c3) {
        // Not covered by the reduction lemmas.
        let m = t7_scaled(c, 1, &[(2, "c")]);
        return Ok(label("T7^*", Some("c1=0;c2*c3!=0".into()), m));
    }
    if (c2.is_zero()) != (c3.is_zero()) {
        let c = if c2.is_zero() { t7_swap(c) } else { c.to_vec() };
        let m = t7_scaled(&c, 1, &[(0, "c1"), (4, "c2")]);
        let sub = both(&m[0], &m[1]);
        return Ok(label("T7^1", Some(sub), m));
    }
    // c2 = c3 = 0 from here on.
    if nz(c1) && (nz(c4) || nz(c5)) {
        let c = if c1.is_negative() { t7_swap(c) } else { c.to_vec() };
        let m = t7_scaled(&c, 0, &[(3, "c1"), (4, "c2")]);
        let sub = if nz(c4) && nz(c5) { "c1*c2!=0" } else { "c1*c2=0" };
        return Ok(label("T7^2", Some(sub.into()), m));
    }
    if nz(c1) {
        let c = if c1.is_negative() { t7_swap(c) } else { c.to_vec() };
        return Ok(label("T7^4", None, t7_scaled(&c, 0, &[(6, "c")])));
    }
    if nz(c4) || nz(c5) {
        let c = if c4.is_zero() { t7_swap(c) } else { c.to_vec() };
        let m = t7_scaled(&c, 3, &[(4, "c1"), (5, "c2")]);
        let sub = if m[0].is_zero() { "c1=0" } else { "c1!=0" };
        return Ok(label("T7^3", Some(sub.into()), m));
    }
    if nz(c6) {
        return Ok(label("T7^5", None, t7_scaled(c, 5, &[(6, "c")])));
    }
    if nz(c7) {
        return Ok(label("T7^6", None, Vec::new()));
    }
    Ok(label("T7^7", None, Vec::new()))
}

/// Smallest symplectic ambient dimension realizing the class: classes with
/// `ω|_W ≠ 0` live in dimension 4, the others need a 3-dimensional isotropic `W`.
pub fn realizable_dimensions_t7(class: &str) -> usize {
    match class {
        "T7^0" | "T7^1" | "T7^2" | "T7^4" | "T7^*" => 4,
        _ => 6,
    }
}

/// Basis directions among `directions` not in the tangent space to the orbit of `a`.
pub fn moduli_report(basis: &GradedBasis, a: &RestrictionClass, directions: &[usize]) -> Result<Vec<usize>> {
    let span = orbit_tangent_space(basis, a, basis.stabilization_degree())?;
    let rank = span.len();
    let mut out = Vec::new();
    for &d in directions {
        let mut rows = span.clone();
        let mut e = vec![Scalar::zero(); basis.dim()];
        e[d] = Scalar::one();
        rows.push(e);
        let m = crate::linalg::Matrix::from_rows_with_cols(rows, basis.dim())?;
        if crate::linalg::rank(&m) > rank {
            out.push(d);
        }
    }
    Ok(out)
}

/// θ-directions of the parameters of each T7 normal form.
pub fn t7_moduli_directions(class: &str) -> &'static [usize] {
    match class {
        "T7^0" => &[1, 2],
        "T7^1" => &[0, 4],
        "T7^2" => &[3, 4],
        "T7^3" => &[4, 5],
        "T7^4" | "T7^5" => &[6],
        "T7^*" => &[2],
        _ => &[],
    }
}

/// `(Lt, L1, L2, ind, ind1, ind2)` for T8.
pub type T8Signature = [Order; 6];

pub struct T8Row {
    pub class: &'static str,
    pub subcase: Option<&'static str>,
    pub signature: T8Signature,
    /// `Lt[C2:C1]` where it separates otherwise equal signatures.
    pub relative: Option<i64>,
}

const INF: Order = Order::Infinity;
const fn f(n: i64) -> Order {
    Order::Finite(n)
}

/// Invariants of the T8 normal forms.
pub const T8_TABLE: &[T8Row] = &[
    T8Row { class: "T8^0", subcase: Some("c1*c2!=0"), signature: [f(2), f(3), f(2), f(0), f(0), f(0)], relative: Some(1) },
    T8Row { class: "T8^1_2", subcase: Some("c1=0;c2!=0"), signature: [f(2), f(3), f(2), f(0), f(0), f(0)], relative: Some(2) },
    T8Row { class: "T8^1_2", subcase: Some("c2=0;c3!=0"), signature: [f(2), f(5), f(2), f(0), f(1), f(0)], relative: None },
    T8Row { class: "T8^1_2", subcase: Some("c2=c3=0"), signature: [f(2), INF, f(2), f(0), INF, f(0)], relative: None },
    T8Row { class: "T8^1_3", subcase: Some("c1*c2!=0"), signature: [f(2), f(3), f(3), f(0), f(0), f(1)], relative: Some(1) },
    T8Row { class: "T8^2_3", subcase: Some("c1=0;c2!=0"), signature: [f(2), f(3), f(3), f(0), f(0), f(1)], relative: Some(2) },
    T8Row { class: "T8^2_3", subcase: Some("c2=0;c3!=0"), signature: [f(2), f(3), f(4), f(0), f(0), f(2)], relative: None },
    T8Row { class: "T8^2_3", subcase: Some("c2=c3=0"), signature: [f(2), f(3), INF, f(0), f(0), INF], relative: None },
    T8Row { class: "T8^2_>3", subcase: Some("c1*c2!=0"), signature: [f(2), f(5), f(3), f(0), f(1), f(1)], relative: None },
    T8Row { class: "T8^2_>3", subcase: Some("c1!=0;c2=0"), signature: [f(2), INF, f(3), f(0), INF, f(1)], relative: None },
    T8Row { class: "T8^3.0", subcase: Some("c1*c2!=0"), signature: [f(2), f(5), f(4), f(0), f(1), f(2)], relative: None },
    T8Row { class: "T8^3.0", subcase: Some("c1!=0;c2=0"), signature: [f(2), f(5), INF, f(0), f(1), INF], relative: None },
    T8Row { class: "T8^3.0", subcase: Some("c1=0;c2!=0"), signature: [f(2), INF, f(4), f(0), INF, f(2)], relative: None },
    T8Row { class: "T8^5.0", subcase: None, signature: [f(2), INF, INF, f(0), INF, INF], relative: None },
    T8Row { class: "T8^3.1", subcase: Some("c2!=0"), signature: [f(3), f(5), f(3), f(1), f(1), f(1)], relative: None },
    T8Row { class: "T8^3.1", subcase: Some("c2=0"), signature: [f(3), INF, f(3), f(1), INF, f(1)], relative: None },
    T8Row { class: "T8^4", subcase: Some("c1*c2!=0"), signature: [f(4), f(5), f(4), f(1), f(1), f(2)], relative: None },
    T8Row { class: "T8^4", subcase: Some("c1=0;c2!=0"), signature: [f(4), INF, f(4), f(1), INF, f(2)], relative: Some(3) },
    T8Row { class: "T8^4", subcase: Some("c1!=0;c2=0"), signature: [f(5), f(5), INF, f(1), f(1), INF], relative: None },
    T8Row { class: "T8^6.1", subcase: None, signature: [f(5), INF, INF, f(1), INF, INF], relative: None },
    T8Row { class: "T8^5.1", subcase: Some("c!=0"), signature: [f(4), f(5), f(4), f(1), f(1), f(2)], relative: None },
    T8Row { class: "T8^5.1", subcase: Some("c=0"), signature: [f(5), f(5), INF, f(1), f(1), INF], relative: None },
    T8Row { class: "T8^6.2", subcase: None, signature: [f(4), INF, f(4), f(2), INF, f(2)], relative: Some(4) },
    T8Row { class: "T8^7", subcase: None, signature: [f(7), INF, INF, f(3), INF, INF], relative: None },
    T8Row { class: "T8^8", subcase: None, signature: [INF, INF, INF, INF, INF, INF], relative: None },
];

/// Smallest ambient dimension of a T8 class: `ω|_W ≠ 0` classes need 4.
fn t8_min_ambient(class: &str) -> usize {
    match class {
        "T8^0" | "T8^1_2" | "T8^1_3" | "T8^2_3" | "T8^2_>3" | "T8^3.0" | "T8^5.0" => 4,
        _ => 6,
    }
}

/// `(signature, Lt[C2:C1])` of a form on the T8 germ.
pub fn t8_signature(basis: &GradedBasis, a: &RestrictionClass) -> Result<(T8Signature, Order)> {
    let g = &basis.germ;
    let omega = basis.form_of(a);
    let lt = lagrangian_tangency_form(basis, &omega, None)?;
    let ind = index_of_isotropy_form(basis, &omega, None)?;
    let c1 = component_invariants(g, "C1", &omega, None)?;
    let c2 = component_invariants(g, "C2", &omega, None)?;
    let fixed: Vec<(usize, Order)> = g.component("C1")?.branches.iter().map(|&b| (b, c1.lt)).collect();
    let all: Vec<usize> = (0..g.branches.len()).collect();
    let rel = relative_lt_form(basis, &omega, &all, &fixed, None)?;
    Ok(([lt, c1.lt, c2.lt, ind, c1.ind, c2.ind], rel))
}

fn fmt_signature(s: &[Order]) -> String {
    let parts: Vec<String> = s.iter().map(Order::to_string).collect();
    format!("({})", parts.join(","))
}

/// Matches the invariant signature of `a` against [`T8_TABLE`].
pub fn classify_t8(basis: &GradedBasis, a: &RestrictionClass) -> Result<ClassLabel> {
    let (sig, rel) = t8_signature(basis, a)?;
    let mut rows: Vec<&T8Row> = T8_TABLE.iter().filter(|r| r.signature == sig).collect();
    if rows.len() > 1 {
        let narrowed: Vec<&T8Row> = rows
            .iter()
            .copied()
            .filter(|r| r.relative.is_none_or(|v| Order::Finite(v) == rel))
            .collect();
        if !narrowed.is_empty() {
            rows = narrowed;
        }
    }
    match rows.as_slice() {
        [] => Err(Error::NoMatch(format!("T8 signature {} with Lt[C2:C1]={rel}", fmt_signature(&sig)))),
        [r] => Ok(ClassLabel {
            family: Family::T8,
            class: r.class.to_string(),
            subcase: r.subcase.map(str::to_string),
            moduli: Vec::new(),
            min_ambient: Some(t8_min_ambient(r.class)),
        }),
        many => {
            let names: Vec<String> = many
                .iter()
                .map(|r| match r.subcase {
                    Some(s) => format!("{} ({s})", r.class),
                    None => r.class.to_string(),
                })
                .collect();
            Err(Error::Ambiguous(format!(
                "T8 signature {} fits {}",
                fmt_signature(&sig),
                names.join(" | ")
            )))
        }
    }
}

/// A row of the A_k, D_k or E6 invariant tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRow {
    pub class: String,
    pub subcase: Option<String>,
    pub lt: Order,
    /// `Lt(C2)` for D_k.
    pub lt2: Option<Order>,
    pub ind: Order,
    pub ind2: Option<Order>,
}

fn row(class: String, subcase: Option<&str>, lt: Order, lt2: Option<Order>, ind: Order, ind2: Option<Order>) -> InvariantRow {
    InvariantRow {
        class,
        subcase: subcase.map(str::to_string),
        lt,
        lt2,
        ind,
        ind2,
    }
}

/// The invariant table of a simple curve family.
pub fn invariant_table(family: Family) -> Vec<InvariantRow> {
    match family {
        Family::A(k) => {
            let k = k as i64;
            let mut out: Vec<InvariantRow> = (0..k)
                .map(|i| {
                    let lt = if k % 2 == 0 { k + 1 + 2 * i } else { (k + 1) / 2 + i };
                    row(format!("A{k}^{i}"), None, f(lt), None, f(i), None)
                })
                .collect();
            out.push(row(format!("A{k}^{k}"), None, INF, None, INF, None));
            out
        }
        Family::D(k) => {
            let k = k as i64;
            // Values are multiples of λ = 1 (k odd) or 1/2 (k even); store 2λ·v/2.
            let two_lambda = if k % 2 == 1 { 2 } else { 1 };
            let l = |v: i64| f(v * two_lambda / 2);
            let name = |s: &str| format!("D{k}^{s}");
            let mut out = vec![row(name("0"), None, l(2), Some(l(k - 2)), f(0), Some(f(0)))];
            if k - 3 > 1 {
                out.push(row(name("1"), None, l(k), Some(l(k)), f(1), Some(f(1))));
            }
            for i in 2..k - 3 {
                out.push(row(name(&i.to_string()), Some("b!=0"), l(k), Some(l(k - 2 + 2 * i)), f(1), Some(f(i))));
                out.push(row(name(&i.to_string()), Some("b=0"), l(k - 2 + 2 * i), Some(l(k - 2 + 2 * i)), f(i), Some(f(i))));
            }
            out.push(row(name(&(k - 3).to_string()), Some("+/-"), l(k), Some(INF), f(1), Some(INF)));
            out.push(row(name(&(k - 2).to_string()), None, l(3 * k - 8), Some(INF), f(k - 3), Some(INF)));
            out.push(row(name(&(k - 1).to_string()), None, l(3 * k - 6), Some(INF), f(k - 2), Some(INF)));
            out.push(row(name(&k.to_string()), None, INF, Some(INF), INF, Some(INF)));
            out
        }
        Family::E6 => {
            let lts = [4, 7, 8, 10, 11, 14];
            let inds = [0, 1, 1, 2, 2, 3];
            let mut out: Vec<InvariantRow> = (0..6)
                .map(|i| row(format!("E6^{i}"), None, f(lts[i]), None, f(inds[i]), None))
                .collect();
            out.push(row("E6^6".into(), None, INF, None, INF, None));
            out
        }
        Family::T7 | Family::T8 => Vec::new(),
    }
}

/// Classifies an A_k, D_k or E6 class by its invariants: `Lt` (and `Lt(C2)` for D_k),
/// with the index of isotropy separating rows that agree on those.
pub fn classify_by_invariants(family: Family, basis: &GradedBasis, a: &RestrictionClass) -> Result<ClassLabel> {
    let table = invariant_table(family);
    if table.is_empty() {
        return Err(Error::Other(format!("{family} is not classified by invariants")));
    }
    let g = &basis.germ;
    let omega = basis.form_of(a);
    let lt = lagrangian_tangency_form(basis, &omega, None)?;
    let ind = index_of_isotropy_form(basis, &omega, None)?;
    let lt2 = match family {
        Family::D(_) => Some(component_invariants(g, "C2", &omega, None)?.lt),
        _ => None,
    };
    let mut rows: Vec<&InvariantRow> = table.iter().filter(|r| r.lt == lt && r.lt2 == lt2).collect();
    if rows.len() > 1 {
        rows.retain(|r| r.ind == ind);
    }
    let computed = match lt2 {
        Some(l2) => format!("Lt={lt}, Lt(C2)={l2}, ind={ind}"),
        None => format!("Lt={lt}, ind={ind}"),
    };
    match rows.as_slice() {
        [] => Err(Error::NoMatch(format!("{family}: {computed}"))),
        [r] => Ok(ClassLabel {
            family,
            class: r.class.clone(),
            subcase: r.subcase.clone(),
            moduli: Vec::new(),
            min_ambient: None,
        }),
        many => {
            let names: Vec<String> = many.iter().map(|r| r.class.clone()).collect();
            Err(Error::Ambiguous(format!("{family}: {computed} fits {}", names.join(" | "))))
        }
    }
}

/// Dispatches on the family.
pub fn classify(family: Family, basis: &GradedBasis, a: &RestrictionClass) -> Result<ClassLabel> {
    match family {
        Family::T7 => classify_t7(&a.coords),
        Family::T8 => classify_t8(basis, a),
        _ => classify_by_invariants(family, basis, a),
    }
}

/// Rescales θ-coordinates by `x ↦ s^w x`.
pub fn t7_rescale(c: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    c.iter().zip(T7_DEGREES).map(|(x, d)| x * &powi(s, d)).collect()
}
